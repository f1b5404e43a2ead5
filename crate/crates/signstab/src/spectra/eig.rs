//! Dense nonsymmetric eigenvalue machinery: balancing, Householder
//! reduction to upper Hessenberg form, and a Francis double-shift QR
//! iteration that deflates eigenvalues off the bottom of the active block.
//! Eigenvalues only; no eigenvector accumulation.
//!
//! The QR iteration follows the classic EISPACK `hqr` scheme: scan for a
//! negligible subdiagonal entry, deflate 1×1 and 2×2 trailing blocks
//! directly, otherwise chase a double-shift bulge through the active
//! window. Exceptional ad-hoc shifts break rare cycling; a global sweep
//! budget turns non-convergence into an error instead of a hang.

use num_complex::Complex64;

/// Row-major square working matrix.
pub(crate) struct Work {
    pub n: usize,
    pub a: Vec<f64>,
}

impl Work {
    pub fn from_rows(n: usize, a: Vec<f64>) -> Self {
        debug_assert_eq!(a.len(), n * n);
        Work { n, a }
    }

    #[inline]
    fn g(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    fn s(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }
}

/// Fortran-style transfer of sign: |a| with the sign of b (b == 0 counts
/// as positive).
#[inline]
fn sign_of(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Diagonal similarity scaling (Parlett–Reinsch, radix 2) so row and
/// column norms balance. Leaves eigenvalues untouched and scales by exact
/// powers of two, so it costs no accuracy.
pub(crate) fn balance(h: &mut Work) {
    const RADIX: f64 = 2.0;
    let n = h.n;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += h.g(j, i).abs();
                    r += h.g(i, j).abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                let mut c_scaled = c;
                while c_scaled < g {
                    f *= RADIX;
                    c_scaled *= sqrdx;
                }
                g = r * RADIX;
                while c_scaled > g {
                    f /= RADIX;
                    c_scaled /= sqrdx;
                }
                if (c_scaled + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        let v = h.g(i, j) * g;
                        h.s(i, j, v);
                    }
                    for j in 0..n {
                        let v = h.g(j, i) * f;
                        h.s(j, i, v);
                    }
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form. Entries below the first
/// subdiagonal are zeroed exactly.
pub(crate) fn hessenberg(h: &mut Work) {
    let n = h.n;
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let m = n - k - 1; // length of the column piece below the diagonal
        let x0 = h.g(k + 1, k);
        let mut sigma = 0.0;
        for i in 1..m {
            let t = h.g(k + 1 + i, k);
            v[i] = t;
            sigma += t * t;
        }
        if sigma == 0.0 {
            continue; // column already in Hessenberg shape
        }
        let mu = (x0 * x0 + sigma).sqrt();
        let v0 = if x0 <= 0.0 { x0 - mu } else { -sigma / (x0 + mu) };
        let beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
        v[0] = 1.0;
        for t in v[1..m].iter_mut() {
            *t /= v0;
        }
        // left: rows k+1.., cols k..
        for j in k..n {
            let mut s = 0.0;
            for i in 0..m {
                s += v[i] * h.g(k + 1 + i, j);
            }
            s *= beta;
            for i in 0..m {
                let t = h.g(k + 1 + i, j) - s * v[i];
                h.s(k + 1 + i, j, t);
            }
        }
        // right: all rows, cols k+1..
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..m {
                s += v[j] * h.g(i, k + 1 + j);
            }
            s *= beta;
            for j in 0..m {
                let t = h.g(i, k + 1 + j) - s * v[j];
                h.s(i, k + 1 + j, t);
            }
        }
        for i in k + 2..n {
            h.s(i, k, 0.0);
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix. Returns the
/// eigenvalues (unordered, complex pairs exactly conjugate) or the number
/// of sweeps spent if the budget runs out.
pub(crate) fn hqr(h: &mut Work, max_sweeps: usize) -> Result<Vec<Complex64>, usize> {
    let n = h.n;
    let mut wr = vec![0.0; n];
    let mut wi = vec![0.0; n];

    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += h.g(i, j).abs();
        }
    }

    let mut nn: isize = n as isize - 1;
    let mut t = 0.0;
    let mut sweeps = 0usize;

    while nn >= 0 {
        let mut its = 0usize;
        loop {
            // look for a single negligible subdiagonal element
            let mut l = nn;
            while l >= 1 {
                let (lu, l1) = (l as usize, (l - 1) as usize);
                let mut s = h.g(l1, l1).abs() + h.g(lu, lu).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if h.g(lu, l1).abs() <= f64::EPSILON * s {
                    h.s(lu, l1, 0.0);
                    break;
                }
                l -= 1;
            }
            let nnu = nn as usize;
            let mut x = h.g(nnu, nnu);
            if l == nn {
                // one real eigenvalue deflates
                wr[nnu] = x + t;
                wi[nnu] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = h.g(nnu - 1, nnu - 1);
            let mut w = h.g(nnu, nnu - 1) * h.g(nnu - 1, nnu);
            if l == nn - 1 {
                // a 2x2 block deflates: real pair or conjugate pair
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + sign_of(z, p);
                    wr[nnu - 1] = x + z;
                    wr[nnu] = wr[nnu - 1];
                    if z != 0.0 {
                        wr[nnu] = x - w / z;
                    }
                    wi[nnu - 1] = 0.0;
                    wi[nnu] = 0.0;
                } else {
                    wr[nnu - 1] = x + p;
                    wr[nnu] = x + p;
                    wi[nnu] = z;
                    wi[nnu - 1] = -z;
                }
                nn -= 2;
                break;
            }
            // no deflation: one double-shift sweep
            if sweeps >= max_sweeps {
                return Err(sweeps);
            }
            if its > 0 && its % 10 == 0 {
                // exceptional shift against cycling
                t += x;
                for i in 0..=nnu {
                    let v = h.g(i, i) - x;
                    h.s(i, i, v);
                }
                let s = h.g(nnu, nnu - 1).abs() + h.g(nnu - 1, nnu - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            sweeps += 1;

            // look for two consecutive small subdiagonals, bottom-up
            let mut m = nn - 2;
            let (mut p, mut q, mut r) = (0.0, 0.0, 0.0);
            while m >= l {
                let mu = m as usize;
                let z = h.g(mu, mu);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / h.g(mu + 1, mu) + h.g(mu, mu + 1);
                q = h.g(mu + 1, mu + 1) - z - rr - ss;
                r = h.g(mu + 2, mu + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = h.g(mu, mu - 1).abs() * (q.abs() + r.abs());
                let v =
                    p.abs() * (h.g(mu - 1, mu - 1).abs() + z.abs() + h.g(mu + 1, mu + 1).abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            let mu = m as usize;
            for i in mu + 2..=nnu {
                h.s(i, i - 2, 0.0);
                if i != mu + 2 {
                    h.s(i, i - 3, 0.0);
                }
            }
            // chase the bulge from m to the bottom of the window
            let lu = l as usize;
            for k in mu..nnu {
                if k != mu {
                    p = h.g(k, k - 1);
                    q = h.g(k + 1, k - 1);
                    r = if k != nnu - 1 { h.g(k + 2, k - 1) } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign_of((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == mu {
                    if l != m {
                        let v = -h.g(k, k - 1);
                        h.s(k, k - 1, v);
                    }
                } else {
                    h.s(k, k - 1, -s * x);
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nnu {
                    let mut pp = h.g(k, j) + q * h.g(k + 1, j);
                    if k != nnu - 1 {
                        pp += r * h.g(k + 2, j);
                        let v = h.g(k + 2, j) - pp * z;
                        h.s(k + 2, j, v);
                    }
                    let v1 = h.g(k + 1, j) - pp * y;
                    h.s(k + 1, j, v1);
                    let v0 = h.g(k, j) - pp * x;
                    h.s(k, j, v0);
                }
                let mmin = if nnu < k + 3 { nnu } else { k + 3 };
                for i in lu..=mmin {
                    let mut pp = x * h.g(i, k) + y * h.g(i, k + 1);
                    if k != nnu - 1 {
                        pp += z * h.g(i, k + 2);
                        let v = h.g(i, k + 2) - pp * r;
                        h.s(i, k + 2, v);
                    }
                    let v1 = h.g(i, k + 1) - pp * q;
                    h.s(i, k + 1, v1);
                    let v0 = h.g(i, k) - pp;
                    h.s(i, k, v0);
                }
            }
        }
    }
    Ok(wr.into_iter().zip(wi).map(|(re, im)| Complex64::new(re, im)).collect())
}

/// LU factorization with partial pivoting over the complex field, in place.
/// Exactly singular pivots are nudged by `eps * pivot_scale` so the factors
/// stay usable for inverse iteration on a (near-)singular shift.
fn complex_lu(a: &mut [Complex64], n: usize, pivot_scale: f64) -> Vec<usize> {
    let mut piv: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let mut best = k;
        let mut best_mag = a[k * n + k].norm_sqr();
        for i in k + 1..n {
            let mag = a[i * n + k].norm_sqr();
            if mag > best_mag {
                best = i;
                best_mag = mag;
            }
        }
        if best != k {
            for j in 0..n {
                a.swap(k * n + j, best * n + j);
            }
            piv.swap(k, best);
        }
        if a[k * n + k] == Complex64::new(0.0, 0.0) {
            a[k * n + k] = Complex64::new(f64::EPSILON * pivot_scale.max(1.0), 0.0);
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let factor = a[i * n + k] / pivot;
            a[i * n + k] = factor;
            for j in k + 1..n {
                let sub = factor * a[k * n + j];
                a[i * n + j] -= sub;
            }
        }
    }
    piv
}

fn complex_solve(lu: &[Complex64], piv: &[usize], n: usize, b: &[Complex64]) -> Vec<Complex64> {
    let mut x: Vec<Complex64> = piv.iter().map(|&p| b[p]).collect();
    // forward: L y = P b (unit lower triangle)
    for i in 0..n {
        for j in 0..i {
            let s = lu[i * n + j] * x[j];
            x[i] -= s;
        }
    }
    // backward: U x = y
    for i in (0..n).rev() {
        for j in i + 1..n {
            let s = lu[i * n + j] * x[j];
            x[i] -= s;
        }
        x[i] /= lu[i * n + i];
    }
    x
}

/// Relative residual `‖Mv − λv‖₂ / ‖M‖_F` for the best eigenvector
/// candidate found by two steps of inverse iteration at `lambda`.
pub(crate) fn eigen_residual(n: usize, m: &[f64], fro: f64, lambda: Complex64) -> f64 {
    if fro == 0.0 {
        // zero matrix: eigenvalues are exactly zero
        return lambda.norm();
    }
    let mut shifted: Vec<Complex64> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut v = Complex64::new(m[i * n + j], 0.0);
            if i == j {
                v -= lambda;
            }
            shifted.push(v);
        }
    }
    let piv = complex_lu(&mut shifted, n, fro);
    let mut v = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    for _ in 0..2 {
        let w = complex_solve(&shifted, &piv, n, &v);
        let norm = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            break;
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
    }
    // r = Mv − λv
    let mut rss = 0.0;
    for i in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            acc += m[i * n + j] * v[j];
        }
        acc -= lambda * v[i];
        rss += acc.norm_sqr();
    }
    rss.sqrt() / fro
}

/// Determinant via real LU with partial pivoting. Exactly-zero pivots mean
/// a singular matrix; the determinant is reported as 0.
pub(crate) fn determinant_lu(n: usize, m: &[f64]) -> f64 {
    let mut a = m.to_vec();
    let mut sign = 1.0;
    let mut det = 1.0;
    for k in 0..n {
        let mut best = k;
        let mut best_mag = a[k * n + k].abs();
        for i in k + 1..n {
            let mag = a[i * n + k].abs();
            if mag > best_mag {
                best = i;
                best_mag = mag;
            }
        }
        if best_mag == 0.0 {
            return 0.0;
        }
        if best != k {
            for j in 0..n {
                a.swap(k * n + j, best * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let factor = a[i * n + k] / pivot;
            for j in k + 1..n {
                a[i * n + j] -= factor * a[k * n + j];
            }
        }
    }
    sign * det
}
