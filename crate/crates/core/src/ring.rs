//! The minimal commutative-ring interface shared by scalars, auxiliary
//! polynomials and truncated series, plus the square-matrix routines that only
//! need that interface (Laplace determinant, adjugate, product).

use std::fmt;

/// Commutative ring element that knows how to build its own zero and one.
///
/// Arithmetic between elements of different rings (different prime moduli,
/// say) is a programming error and panics; the checked `try_*` entry points on
/// the concrete types report it as [`crate::Error::DescriptorMismatch`].
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact zero. For truncated series this means "zero with no error term".
    fn is_zero(&self) -> bool;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Determinant by cofactor expansion along the first row.
///
/// Desk-scale only (N ≤ 5); zero entries are skipped.
pub fn det<T: Ring>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(n > 0, "determinant of an empty matrix");
    match n {
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut acc = m[0][0].zero_like();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor = minor(m, 0, j);
                let term = m[0][j].mul(&det(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// The matrix with row `row` and column `col` deleted.
pub fn minor<T: Clone>(m: &[Vec<T>], row: usize, col: usize) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Classical adjugate: `adj[i][j] = (-1)^(i+j) · det(minor(m, j, i))`, so that
/// `m · adj(m) = det(m) · I`.
pub fn adjugate<T: Ring>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![m[0][0].one_like()]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = det(&minor(m, j, i));
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        c.neg()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul<T: Ring>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = a[i][0].zero_like();
                    for l in 0..k {
                        if a[i][l].is_zero() || b[l][j].is_zero() {
                            continue;
                        }
                        acc = acc.add(&a[i][l].mul(&b[l][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn identity_like<T: Ring>(proto: &T, n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { proto.one_like() } else { proto.zero_like() })
                .collect()
        })
        .collect()
}
