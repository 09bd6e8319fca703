//! Smith normal form.
//!
//! Pivoting rule: the smallest nonzero absolute value in the active
//! submatrix, ties broken by lowest (row, column) in row-major order. The
//! search stops early at a unit, since nothing smaller exists.

use serde::{Deserialize, Serialize};

use super::int::Int;
use super::matrix::IntMatrix;

/// `A = U · S · V` with `U`, `V` unimodular and `S` diagonal with
/// `d₁ | d₂ | … | d_r`, `dᵢ > 0`, followed by zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }

    /// The nonzero diagonal entries.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

/// Full decomposition `P · A · Q = S`, keeping whichever transforms were asked for.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub diagonal: Vec<Int>,
    pub s: IntMatrix,
    /// Left transform `P` (row operations).
    pub p: Option<IntMatrix>,
    /// `P⁻¹`.
    pub p_inv: Option<IntMatrix>,
    /// Right transform `Q` (column operations).
    pub q: Option<IntMatrix>,
    /// `Q⁻¹`.
    pub q_inv: Option<IntMatrix>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub p: bool,
    pub p_inv: bool,
    pub q: bool,
    pub q_inv: bool,
}

impl Track {
    pub const NONE: Track = Track {
        p: false,
        p_inv: false,
        q: false,
        q_inv: false,
    };
    pub const ALL: Track = Track {
        p: true,
        p_inv: true,
        q: true,
        q_inv: true,
    };
}

struct Work {
    a: IntMatrix,
    p: Option<IntMatrix>,
    p_inv: Option<IntMatrix>,
    q: Option<IntMatrix>,
    q_inv: Option<IntMatrix>,
}

impl Work {
    fn row_sub_mul(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        self.a.row_sub_mul(dst, src, k);
        if let Some(p) = self.p.as_mut() {
            p.row_sub_mul(dst, src, k);
        }
        if let Some(pi) = self.p_inv.as_mut() {
            pi.col_sub_mul(src, dst, &-k);
        }
    }

    fn col_sub_mul(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        self.a.col_sub_mul(dst, src, k);
        if let Some(q) = self.q.as_mut() {
            q.col_sub_mul(dst, src, k);
        }
        if let Some(qi) = self.q_inv.as_mut() {
            qi.row_sub_mul(src, dst, &-k);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(p) = self.p.as_mut() {
            p.swap_rows(i, j);
        }
        if let Some(pi) = self.p_inv.as_mut() {
            pi.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(q) = self.q.as_mut() {
            q.swap_cols(i, j);
        }
        if let Some(qi) = self.q_inv.as_mut() {
            qi.swap_rows(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(p) = self.p.as_mut() {
            p.negate_row(i);
        }
        if let Some(pi) = self.p_inv.as_mut() {
            pi.negate_col(i);
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                if v.is_unit() {
                    return Some((i, j));
                }
                match best {
                    None => best = Some((i, j)),
                    Some(b) if v.cmp_abs(&self.a[b]).is_lt() => best = Some((i, j)),
                    _ => {}
                }
            }
        }
        best
    }
}

pub fn smith_decompose(a: &IntMatrix, track: Track) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        p: track.p.then(|| IntMatrix::identity(m)),
        p_inv: track.p_inv.then(|| IntMatrix::identity(m)),
        q: track.q.then(|| IntMatrix::identity(n)),
        q_inv: track.q_inv.then(|| IntMatrix::identity(n)),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = w.min_pivot(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            // clear column t below the pivot, then row t right of it
            let mut dirty = false;
            for i in t + 1..m {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let k = w.a[(i, t)].div_trunc(&w.a[(t, t)]);
                w.row_sub_mul(i, t, &k);
                if !w.a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let k = w.a[(t, j)].div_trunc(&w.a[(t, t)]);
                w.col_sub_mul(j, t, &k);
                if !w.a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder is now smaller than the pivot: move it in
                let mut best = (t, t);
                for i in t..m {
                    let v = &w.a[(i, t)];
                    if !v.is_zero() && v.cmp_abs(&w.a[best]).is_lt() {
                        best = (i, t);
                    }
                }
                for j in t..n {
                    let v = &w.a[(t, j)];
                    if !v.is_zero() && v.cmp_abs(&w.a[best]).is_lt() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // divisibility of the remaining block by the pivot
            if !w.a[(t, t)].is_unit() {
                let p = w.a[(t, t)].clone();
                let bad =
                    (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[(i, j)].is_divisible_by(&p)));
                if let Some(i) = bad {
                    w.row_sub_mul(t, i, &Int::from(-1));
                    continue;
                }
            }
            break;
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let diagonal: Vec<Int> = (0..t).map(|i| w.a[(i, i)].clone()).collect();
    SmithDecomposition {
        diagonal,
        s: w.a,
        p: w.p,
        p_inv: w.p_inv,
        q: w.q,
        q_inv: w.q_inv,
    }
}

pub fn smith_form(a: &IntMatrix) -> SmithForm {
    let d = smith_decompose(
        a,
        Track {
            p: false,
            p_inv: true,
            q: false,
            q_inv: true,
        },
    );
    SmithForm {
        u: d.p_inv.unwrap(),
        s: d.s,
        v: d.q_inv.unwrap(),
    }
}

/// Nonzero invariant factors of a dense matrix, no transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<Int> {
    smith_decompose(a, Track::NONE).diagonal
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn determinant(a: &IntMatrix) -> Int {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return Int::one();
    }
    let mut m = a.clone();
    let mut sign = 1i64;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[(r, k)].is_zero()) else {
                return Int::zero();
            };
            m.swap_rows(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[(i, j)] * &m[(k, k)]) - &(&m[(i, k)] * &m[(k, j)]);
                m[(i, j)] = v.div_trunc(&prev);
            }
        }
        prev = m[(k, k)].clone();
    }
    &m[(n - 1, n - 1)] * &Int::from(sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn small_examples() {
        let z = IntMatrix::zeros(2, 3);
        let f = smith_form(&z);
        assert!(f.s.is_zero());
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(3));

        let a = m(&[vec![2, 4], vec![6, 8]]);
        let f = smith_form(&a);
        assert_eq!(f.diagonal(), vec![Int::from(2), Int::from(4)]);
        assert_eq!(f.u.mul(&f.s).mul(&f.v), a);

        let f = smith_form(&IntMatrix::identity(4));
        assert_eq!(f.diagonal(), vec![Int::one(); 4]);
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2,3) is not in normal form: expect diag(1,6)
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let f = smith_form(&a);
        assert_eq!(f.diagonal(), vec![Int::from(1), Int::from(6)]);
        assert_eq!(f.u.mul(&f.s).mul(&f.v), a);
    }

    #[test]
    fn tracked_transforms_are_inverse_pairs() {
        let a = m(&[vec![3, 5, 7], vec![2, 9, 4], vec![6, 10, 14]]);
        let d = smith_decompose(&a, Track::ALL);
        let (p, pi, q, qi) = (
            d.p.unwrap(),
            d.p_inv.unwrap(),
            d.q.unwrap(),
            d.q_inv.unwrap(),
        );
        assert_eq!(p.mul(&pi), IntMatrix::identity(3));
        assert_eq!(q.mul(&qi), IntMatrix::identity(3));
        assert_eq!(p.mul(&a).mul(&q), d.s);
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(determinant(&m(&[vec![2, 4], vec![6, 8]])), Int::from(-8));
        assert_eq!(determinant(&m(&[vec![0, 1], vec![1, 0]])), Int::from(-1));
        assert_eq!(determinant(&m(&[vec![1, 2], vec![2, 4]])), Int::zero());
    }
}
