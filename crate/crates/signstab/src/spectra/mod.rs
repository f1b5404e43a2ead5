//! Dense real-matrix numerics: eigenvalues, determinants, characteristic
//! polynomials and their roots, and the Hurwitz classification.
//!
//! Eigenvalues come from balancing, Householder reduction to Hessenberg
//! form, and Francis double-shift QR; polynomial roots come from the
//! companion matrix of the monic polynomial, refined by a guarded Newton
//! step. Neither route relies on an external numerics library. Every
//! returned eigenvalue carries an inverse-iteration residual check and
//! every returned root a scaled `|p(r)|` check; the largest observed value
//! is reported so callers can verify the
//! [`EIGEN_RESIDUAL_BOUND`](crate::defaults::EIGEN_RESIDUAL_BOUND) /
//! [`POLY_RESIDUAL_BOUND`](crate::defaults::POLY_RESIDUAL_BOUND) contracts.

mod eig;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::defaults::{EIGEN_SWEEPS_PER_DIM, MAX_DIM};
use crate::sign::RealMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectraError {
    /// The QR iteration exhausted its sweep budget.
    #[error("eigenvalue iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("polynomial degree {degree} out of supported range 1..={max}")]
    BadDegree { degree: usize, max: usize },
    #[error("polynomial coefficients must be finite")]
    NotFinite,
}

/// Eigenvalues of a real matrix plus the diagnostics the contract demands.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<Complex64>,
    max_real: f64,
    residual: f64,
}

impl Spectrum {
    /// Eigenvalues sorted by real part, then imaginary part. Complex values
    /// occur in exactly conjugate pairs.
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Largest real part over all eigenvalues.
    pub fn max_real(&self) -> f64 {
        self.max_real
    }

    /// Largest relative eigenpair residual `‖Mv − λv‖₂ / ‖M‖_F` observed
    /// during internal verification.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Worst conjugate-pairing defect: how far the eigenvalue multiset is
    /// from being closed under conjugation.
    pub fn conjugate_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for e in &self.eigenvalues {
            let target = e.conj();
            let best = self
                .eigenvalues
                .iter()
                .map(|f| (f - target).norm())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
        worst
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct C {
            re: f64,
            im: f64,
        }
        let mut st = s.serialize_struct("Spectrum", 3)?;
        let eigs: Vec<C> = self.eigenvalues.iter().map(|e| C { re: e.re, im: e.im }).collect();
        st.serialize_field("eigenvalues", &eigs)?;
        st.serialize_field("max_real", &self.max_real)?;
        st.serialize_field("residual", &self.residual)?;
        st.end()
    }
}

/// Three-way spectral verdict relative to a tolerance band around the
/// imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityClass {
    Stable,
    Marginal,
    Unstable,
}

/// Classify a spectrum: `Stable` iff `max_real < -tol`, `Unstable` iff
/// `max_real > tol`, `Marginal` otherwise.
pub fn is_hurwitz(s: &Spectrum, tol: f64) -> StabilityClass {
    if s.max_real < -tol {
        StabilityClass::Stable
    } else if s.max_real > tol {
        StabilityClass::Unstable
    } else {
        StabilityClass::Marginal
    }
}

/// All eigenvalues of `m`, sorted by (re, im), with residual verification.
pub fn eigenvalues(m: &RealMatrix) -> Result<Spectrum, SpectraError> {
    let n = m.n();
    let mut w = eig::Work::from_rows(n, m.as_slice().to_vec());
    eig::balance(&mut w);
    eig::hessenberg(&mut w);
    let mut eigs = hqr_checked(&mut w, n)?;
    sort_complex(&mut eigs);
    let fro = m.frobenius_norm();
    let residual = eigs
        .iter()
        .map(|&l| eig::eigen_residual(n, m.as_slice(), fro, l))
        .fold(0.0, f64::max);
    let max_real = eigs.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    Ok(Spectrum { eigenvalues: eigs, max_real, residual })
}

fn hqr_checked(w: &mut eig::Work, n: usize) -> Result<Vec<Complex64>, SpectraError> {
    eig::hqr(w, EIGEN_SWEEPS_PER_DIM * n.max(1))
        .map_err(|sweeps| SpectraError::NoConvergence { sweeps })
}

fn sort_complex(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Determinant via pivoted elimination. Exact 0 for structurally singular
/// inputs; sign is reliable for well-conditioned matrices.
pub fn determinant(m: &RealMatrix) -> f64 {
    eig::determinant_lu(m.n(), m.as_slice())
}

/// Monic real polynomial `s^k + c_{k-1} s^{k-1} + … + c_0`, stored as the
/// trailing coefficients `c_0 … c_{k-1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonicPolynomial {
    coeffs: Vec<f64>,
}

impl MonicPolynomial {
    /// Build from trailing coefficients, lowest order first. The degree is
    /// `coeffs.len()` and must lie in `1..=64`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self, SpectraError> {
        let degree = coeffs.len();
        if degree == 0 || degree > MAX_DIM {
            return Err(SpectraError::BadDegree { degree, max: MAX_DIM });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(SpectraError::NotFinite);
        }
        Ok(MonicPolynomial { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Trailing coefficients `c_0 … c_{k-1}`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    /// Derivative, evaluated by Horner on `k s^{k-1} + … + c_1`.
    pub fn eval_derivative(&self, s: Complex64) -> Complex64 {
        let k = self.degree();
        let mut acc = Complex64::new(k as f64, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * s + c * i as f64;
        }
        acc
    }

    /// Magnitude scale of the evaluation at `s`: `Σ|c_i||s|^i + |s|^k`.
    /// `|p(s)|` below roughly `eps` times this is as small as evaluation
    /// noise allows.
    pub fn eval_scale(&self, s: Complex64) -> f64 {
        let r = s.norm();
        let mut pow = 1.0;
        let mut acc = 0.0;
        for &c in &self.coeffs {
            acc += c.abs() * pow;
            pow *= r;
        }
        acc + pow
    }

    /// The polynomial `p(s) - ell`.
    pub fn minus_constant(&self, ell: f64) -> MonicPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] -= ell;
        MonicPolynomial { coeffs }
    }
}

/// Expand `∏ (s − r_i)` into monic coefficients.
pub fn char_poly_from_roots(roots: &[f64]) -> Result<MonicPolynomial, SpectraError> {
    let k = roots.len();
    if k == 0 || k > MAX_DIM {
        return Err(SpectraError::BadDegree { degree: k, max: MAX_DIM });
    }
    if roots.iter().any(|r| !r.is_finite()) {
        return Err(SpectraError::NotFinite);
    }
    // full[i] is the coefficient of s^i; leading entry stays 1
    let mut full = vec![0.0; k + 1];
    full[0] = 1.0;
    let mut len = 1;
    for &r in roots {
        full[len] = full[len - 1];
        for i in (1..len).rev() {
            full[i] = full[i - 1] - r * full[i];
        }
        full[0] *= -r;
        len += 1;
    }
    // full now holds c_0..c_{k-1}, 1 — reversed build keeps it in place
    full.truncate(k);
    Ok(MonicPolynomial { coeffs: full })
}

/// All complex roots of a monic polynomial, via its companion matrix and a
/// guarded Newton refinement. Sorted by (re, im); conjugate-paired for the
/// real coefficients we accept.
pub fn poly_roots(p: &MonicPolynomial) -> Result<Vec<Complex64>, SpectraError> {
    let k = p.degree();
    let mut w = eig::Work::from_rows(k, vec![0.0; k * k]);
    for i in 1..k {
        w.a[i * k + (i - 1)] = 1.0;
    }
    for (i, &c) in p.coeffs().iter().enumerate() {
        w.a[i * k + (k - 1)] = -c;
    }
    eig::balance(&mut w);
    let mut roots = hqr_checked(&mut w, k)?;
    for r in roots.iter_mut() {
        *r = polish_root(p, *r);
    }
    sort_complex(&mut roots);
    Ok(roots)
}

/// A few Newton steps, kept only while they shrink `|p(r)|`. Real
/// coefficients make the refinement exactly symmetric under conjugation,
/// so conjugate pairs stay paired.
fn polish_root(p: &MonicPolynomial, start: Complex64) -> Complex64 {
    let mut best = start;
    let mut best_mag = p.eval(start).norm();
    let mut r = start;
    for _ in 0..6 {
        let f = p.eval(r);
        if f == Complex64::new(0.0, 0.0) {
            return r;
        }
        let d = p.eval_derivative(r);
        if d == Complex64::new(0.0, 0.0) {
            break;
        }
        r -= f / d;
        let mag = p.eval(r).norm();
        if mag < best_mag {
            best = r;
            best_mag = mag;
        } else {
            break;
        }
    }
    best
}

/// Largest scaled root residual `|p(r)| / max(1, scale near r)` over the
/// given roots.
pub fn max_root_residual(p: &MonicPolynomial, roots: &[Complex64]) -> f64 {
    roots
        .iter()
        .map(|&r| p.eval(r).norm() / p.eval_scale(r).max(1.0))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assign::min_cost_assignment;
    use crate::defaults::{CONJUGATE_TOL, EIGEN_RESIDUAL_BOUND, POLY_RESIDUAL_BOUND};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn mat(rows: Vec<Vec<f64>>) -> RealMatrix {
        RealMatrix::from_rows(rows).unwrap()
    }

    fn random_matrix(n: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> RealMatrix {
        let rows = (0..n).map(|_| (0..n).map(|_| rng.gen_range(lo..hi)).collect()).collect();
        mat(rows)
    }

    /// max over the matched pairs of |a_i − b_{σ(i)}| under the best matching
    fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
        assert_eq!(a.len(), b.len());
        let cost: Vec<Vec<f64>> =
            a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
        let assignment = min_cost_assignment(&cost);
        assignment
            .row_to_col
            .iter()
            .enumerate()
            .map(|(i, &j)| cost[i][j])
            .fold(0.0, f64::max)
    }

    #[test]
    fn rotation_matrix_has_unit_imaginary_pair() {
        let s = eigenvalues(&mat(vec![vec![0.0, 1.0], vec![-1.0, 0.0]])).unwrap();
        assert_eq!(s.max_real(), 0.0);
        let eigs = s.eigenvalues();
        assert_eq!(eigs[0], Complex64::new(0.0, -1.0));
        assert_eq!(eigs[1], Complex64::new(0.0, 1.0));
        assert!(s.residual() <= EIGEN_RESIDUAL_BOUND);
    }

    #[test]
    fn diagonal_matrix_is_exact() {
        let s = eigenvalues(&RealMatrix::diagonal(&[-1.0, -2.0, -3.0]).unwrap()).unwrap();
        let re: Vec<f64> = s.eigenvalues().iter().map(|e| e.re).collect();
        assert_eq!(re, vec![-3.0, -2.0, -1.0]);
        assert!(s.eigenvalues().iter().all(|e| e.im == 0.0));
        assert_eq!(s.max_real(), -1.0);
    }

    #[test]
    fn zero_matrix_spectrum_is_zero() {
        let s = eigenvalues(&RealMatrix::zeros(4).unwrap()).unwrap();
        assert!(s.eigenvalues().iter().all(|e| *e == Complex64::new(0.0, 0.0)));
        assert_eq!(s.residual(), 0.0);
    }

    #[test]
    fn jordan_block_eigenvalues_are_exact_zero() {
        let s = eigenvalues(&mat(vec![vec![0.0, 1.0], vec![0.0, 0.0]])).unwrap();
        assert!(s.eigenvalues().iter().all(|e| *e == Complex64::new(0.0, 0.0)));
        assert!(s.residual() <= EIGEN_RESIDUAL_BOUND);
    }

    #[test]
    fn residuals_hold_on_random_6x6() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_matrix(6, -1.0, 1.0, &mut rng);
            let s = eigenvalues(&m).unwrap();
            assert!(
                s.residual() <= EIGEN_RESIDUAL_BOUND,
                "residual {} too large for {m}",
                s.residual()
            );
            assert!(s.conjugate_defect() <= CONJUGATE_TOL);
        }
    }

    #[test]
    fn trace_and_determinant_consistency() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 1..=8 {
            for _ in 0..10 {
                let m = random_matrix(n, -2.0, 2.0, &mut rng);
                let s = eigenvalues(&m).unwrap();
                let sum: Complex64 = s.eigenvalues().iter().sum();
                let tr = m.trace();
                assert!(
                    (sum.re - tr).abs() <= 1e-8 * (1.0 + tr.abs()),
                    "trace mismatch: {} vs {}",
                    sum.re,
                    tr
                );
                assert!(sum.im.abs() <= 1e-8);
                let prod: Complex64 = s.eigenvalues().iter().product();
                let det = determinant(&m);
                assert!(
                    (prod.re - det).abs() <= 1e-6 * (1.0 + det.abs()),
                    "det mismatch: {} vs {}",
                    prod.re,
                    det
                );
            }
        }
    }

    #[test]
    fn spectrum_invariant_under_permutation_similarity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let n = 6;
        let m = random_matrix(n, -3.0, 3.0, &mut rng);
        let perm = [3, 0, 5, 1, 4, 2];
        let mut pm = RealMatrix::zeros(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                pm.set(i, j, m.get(perm[i], perm[j]));
            }
        }
        let a = eigenvalues(&m).unwrap();
        let b = eigenvalues(&pm).unwrap();
        assert!(multiset_distance(a.eigenvalues(), b.eigenvalues()) <= 1e-8);
    }

    #[test]
    fn large_dimension_converges() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let m = random_matrix(64, -1.0, 1.0, &mut rng);
        let s = eigenvalues(&m).unwrap();
        assert_eq!(s.eigenvalues().len(), 64);
        assert!(s.residual() <= EIGEN_RESIDUAL_BOUND);
    }

    #[test]
    fn determinant_basics() {
        assert_eq!(determinant(&mat(vec![vec![0.0, 2.0], vec![-2.0, 0.0]])), 4.0);
        let dup = mat(vec![
            vec![1.0, 2.0, 3.0],
            vec![1.0, 2.0, 3.0],
            vec![0.5, -1.0, 0.25],
        ]);
        assert_eq!(determinant(&dup), 0.0);
    }

    /// Cofactor-expansion oracle for n ≤ 4.
    fn det_cofactor(m: &RealMatrix) -> f64 {
        fn go(a: &[Vec<f64>]) -> f64 {
            let n = a.len();
            if n == 1 {
                return a[0][0];
            }
            let mut acc = 0.0;
            for j in 0..n {
                let minor: Vec<Vec<f64>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(jj, _)| *jj != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc += s * a[0][j] * go(&minor);
            }
            acc
        }
        let rows: Vec<Vec<f64>> =
            (0..m.n()).map(|i| (0..m.n()).map(|j| m.get(i, j)).collect()).collect();
        go(&rows)
    }

    #[test]
    fn determinant_agrees_with_cofactor_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..50 {
            let m = random_matrix(4, -5.0, 5.0, &mut rng);
            let lu = determinant(&m);
            let co = det_cofactor(&m);
            assert!(
                (lu - co).abs() <= 1e-9 * (1.0 + co.abs()),
                "LU {lu} vs cofactor {co}"
            );
            assert_eq!(lu.signum(), co.signum());
        }
    }

    #[test]
    fn char_poly_from_known_roots() {
        let p = char_poly_from_roots(&[-1.0, -2.0]).unwrap();
        assert_eq!(p.coeffs(), &[2.0, 3.0]); // s² + 3s + 2
        let p = char_poly_from_roots(&[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.coeffs(), &[0.0, 0.0, 0.0]); // s³
    }

    #[test]
    fn char_poly_eval_vanishes_at_roots() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let roots: Vec<f64> = (0..5).map(|_| rng.gen_range(-4.0..4.0)).collect();
            let p = char_poly_from_roots(&roots).unwrap();
            for &r in &roots {
                let v = p.eval(Complex64::new(r, 0.0)).norm();
                let scale = p.eval_scale(Complex64::new(r, 0.0));
                assert!(v <= 1e-10 * scale, "|p(root)| = {v}, scale {scale}");
            }
        }
    }

    #[test]
    fn roots_of_s_squared_plus_one() {
        let p = MonicPolynomial::new(vec![1.0, 0.0]).unwrap();
        let roots = poly_roots(&p).unwrap();
        assert!((roots[0] - Complex64::new(0.0, -1.0)).norm() <= 1e-12);
        assert!((roots[1] - Complex64::new(0.0, 1.0)).norm() <= 1e-12);
    }

    #[test]
    fn cube_roots_of_unity() {
        // s³ − 1
        let p = MonicPolynomial::new(vec![-1.0, 0.0, 0.0]).unwrap();
        let roots = poly_roots(&p).unwrap();
        let expected = [
            Complex64::new(-0.5, -(3.0f64.sqrt()) / 2.0),
            Complex64::new(-0.5, 3.0f64.sqrt() / 2.0),
            Complex64::new(1.0, 0.0),
        ];
        for (r, e) in roots.iter().zip(expected) {
            assert!((r - e).norm() <= 1e-9, "{r} vs {e}");
        }
    }

    #[test]
    fn triple_zero_root() {
        let p = MonicPolynomial::new(vec![0.0, 0.0, 0.0]).unwrap();
        let roots = poly_roots(&p).unwrap();
        for r in roots {
            assert!(r.norm() <= 1e-9);
        }
    }

    #[test]
    fn degree_seven_random_residuals() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..25 {
            let coeffs: Vec<f64> = (0..7).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let p = MonicPolynomial::new(coeffs).unwrap();
            let roots = poly_roots(&p).unwrap();
            assert_eq!(roots.len(), 7);
            assert!(max_root_residual(&p, &roots) <= POLY_RESIDUAL_BOUND);
        }
    }

    #[test]
    fn roots_recover_separated_inputs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            // draw until separated by at least 0.1
            let mut roots: Vec<f64> = (0..6).map(|_| rng.gen_range(-5.0..5.0)).collect();
            roots.sort_by(f64::total_cmp);
            if roots.windows(2).any(|w| w[1] - w[0] < 0.1) {
                continue;
            }
            let p = char_poly_from_roots(&roots).unwrap();
            let got = poly_roots(&p).unwrap();
            let want: Vec<Complex64> = roots.iter().map(|&r| Complex64::new(r, 0.0)).collect();
            assert!(multiset_distance(&got, &want) <= 1e-7);
        }
    }

    #[test]
    fn degree_one_and_bad_degrees() {
        let p = MonicPolynomial::new(vec![3.0]).unwrap();
        let roots = poly_roots(&p).unwrap();
        assert_eq!(roots, vec![Complex64::new(-3.0, 0.0)]);
        assert!(MonicPolynomial::new(vec![]).is_err());
        assert!(char_poly_from_roots(&[]).is_err());
        assert!(MonicPolynomial::new(vec![0.0; 65]).is_err());
    }

    #[test]
    fn hurwitz_classification() {
        let stable = eigenvalues(&RealMatrix::diagonal(&[-1.0, -2.0]).unwrap()).unwrap();
        assert_eq!(is_hurwitz(&stable, 1e-9), StabilityClass::Stable);
        let marginal = eigenvalues(&mat(vec![vec![0.0, 1.0], vec![-1.0, 0.0]])).unwrap();
        assert_eq!(is_hurwitz(&marginal, 1e-9), StabilityClass::Marginal);
        let unstable = eigenvalues(&mat(vec![vec![1.0]])).unwrap();
        assert_eq!(is_hurwitz(&unstable, 1e-9), StabilityClass::Unstable);
    }

    #[test]
    fn spectrum_serializes_with_documented_fields() {
        let s = eigenvalues(&mat(vec![vec![0.0, 1.0], vec![-1.0, 0.0]])).unwrap();
        let json = serde_json::to_value(&s).unwrap();
        assert_eq!(json["max_real"], 0.0);
        assert_eq!(json["eigenvalues"][0]["im"], -1.0);
        assert_eq!(json["eigenvalues"][1]["im"], 1.0);
        assert!(json["residual"].is_number());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn eigen_residuals_hold_generically(
            n in 1usize..=6,
            seed in proptest::num::u64::ANY,
        ) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(n, -1.0, 1.0, &mut rng);
            let s = eigenvalues(&m).unwrap();
            prop_assert!(s.residual() <= EIGEN_RESIDUAL_BOUND);
            prop_assert!(s.conjugate_defect() <= CONJUGATE_TOL);
            prop_assert_eq!(s.eigenvalues().len(), n);
        }
    }
}
