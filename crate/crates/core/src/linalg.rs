//! Small dense and banded kernels used by the finite-element oracle.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// LDLᵀ factorization of a symmetric positive definite tridiagonal matrix.
#[derive(Debug, Clone)]
pub(crate) struct TridiagonalLdl {
    d: Vec<f64>,
    l: Vec<f64>,
}

impl TridiagonalLdl {
    /// `diag` has length n, `off` has length n - 1.
    pub(crate) fn factor(diag: &[f64], off: &[f64]) -> Option<Self> {
        let n = diag.len();
        let mut d = vec![0.0; n];
        let mut l = vec![0.0; n];
        for i in 0..n {
            let mut di = diag[i];
            if i > 0 {
                l[i] = off[i - 1] / d[i - 1];
                di -= l[i] * off[i - 1];
            }
            if !(di > 0.0) {
                return None;
            }
            d[i] = di;
        }
        Some(TridiagonalLdl { d, l })
    }

    pub(crate) fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 1..n {
            b[i] -= self.l[i] * b[i - 1];
        }
        for i in 0..n {
            b[i] /= self.d[i];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            b[i] -= self.l[i + 1] * b[i + 1];
        }
    }
}

/// In-place Cholesky factorization of a dense row-major SPD matrix; the
/// lower triangle receives the factor.
pub(crate) fn cholesky(a: &mut [f64], n: usize) -> Option<()> {
    for j in 0..n {
        let mut s = a[j * n + j];
        for k in 0..j {
            s -= a[j * n + k] * a[j * n + k];
        }
        if !(s > 0.0) {
            return None;
        }
        let djj = s.sqrt();
        a[j * n + j] = djj;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / djj;
        }
    }
    Some(())
}

pub(crate) fn cholesky_solve(l: &[f64], n: usize, b: &mut [f64]) {
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * n + k] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[k * n + i] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
}

/// Eigen-decomposition of a symmetric tridiagonal matrix by implicit QL
/// with Wilkinson shifts.
///
/// `d` holds the diagonal and is overwritten with the eigenvalues; `e[i]`
/// couples rows `i` and `i + 1` and is destroyed. Returns the eigenvectors
/// as columns of a row-major `n × n` matrix, or `None` if an eigenvalue
/// needs more than 60 sweeps.
pub(crate) fn tridiagonal_eigen(d: &mut [f64], e: &mut [f64]) -> Option<Vec<f64>> {
    let n = d.len();
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    if n == 0 {
        return Some(z);
    }
    let mut e_ext = vec![0.0; n];
    e_ext[..n - 1].copy_from_slice(&e[..n - 1]);
    let e = &mut e_ext;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return None;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let zf = z[k * n + i + 1];
                    z[k * n + i + 1] = s * z[k * n + i] + c * zf;
                    z[k * n + i] = c * z[k * n + i] - s * zf;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Some(z)
}

/// Deterministic pseudo-random numbers in [-1, 1) (splitmix64).
pub(crate) fn splitmix_unit(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 52) as f64 - 1.0
}
