//! Row echelon forms, integer kernels, integer solving and lattices.

use super::int::Int;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `transform · input = form`, with `form` in row echelon shape.
///
/// When reduced, entries above each pivot lie in `[0, pivot)`, which makes
/// the form the (unique) row Hermite normal form of the row lattice.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub form: IntMatrix,
    pub transform: Option<IntMatrix>,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn row_echelon(input: &IntMatrix, track: bool, reduce: bool) -> RowEchelon {
    let mut m = input.clone();
    let nr = m.rows();
    let nc = m.cols();
    let mut u = if track {
        Some(IntMatrix::identity(nr))
    } else {
        None
    };
    let mut pivots = Vec::new();
    let mut t = 0;
    for c in 0..nc {
        if t == nr {
            break;
        }
        loop {
            // smallest nonzero entry in column c at or below row t
            let mut best: Option<usize> = None;
            let mut others = 0usize;
            for i in t..nr {
                if m[(i, c)].is_zero() {
                    continue;
                }
                others += 1;
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if m[(i, c)].cmp_abs(&m[(b, c)]).is_lt() {
                            best = Some(i)
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            if b != t {
                m.swap_rows(b, t);
                if let Some(u) = u.as_mut() {
                    u.swap_rows(b, t);
                }
            }
            if others == 1 {
                break;
            }
            let p = m[(t, c)].clone();
            for i in t + 1..nr {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let q = m[(i, c)].div_trunc(&p);
                m.row_sub_mul(i, t, &q);
                if let Some(u) = u.as_mut() {
                    u.row_sub_mul(i, t, &q);
                }
            }
        }
        if m[(t, c)].is_zero() {
            continue;
        }
        if m[(t, c)].is_negative() {
            m.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        if reduce {
            let p = m[(t, c)].clone();
            for i in 0..t {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let (q, _) = m[(i, c)].div_mod_floor(&p);
                m.row_sub_mul(i, t, &q);
                if let Some(u) = u.as_mut() {
                    u.row_sub_mul(i, t, &q);
                }
            }
        }
        pivots.push(c);
        t += 1;
    }
    RowEchelon {
        form: m,
        transform: u,
        pivots,
    }
}

/// Columns form a Z-basis of the integer kernel `{x : A·x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let ech = row_echelon(&a.transpose(), true, false);
    let rank = ech.rank();
    let u = ech.transform.expect("tracked");
    let rows: Vec<usize> = (rank..a.cols()).collect();
    let k = u.select_rows(&rows).transpose();
    // HNF of the kernel lattice keeps entries small and the output canonical
    let lat = Lattice::from_rows(&k.transpose());
    lat.basis().transpose()
}

/// Rank over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    if a.rows() <= a.cols() {
        row_echelon(a, false, false).rank()
    } else {
        row_echelon(&a.transpose(), false, false).rank()
    }
}

/// Some integer solution of `A·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Result<Option<Vec<Int>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {} but matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    Ok(Solver::new(a).solve(b))
}

/// Reusable solver for many right-hand sides against the same matrix.
#[derive(Clone, Debug)]
pub struct Solver {
    cols: usize,
    /// Column lattice of A with coordinates.
    lattice: Lattice,
    /// Row t is a preimage (in the domain of A) of lattice basis row t.
    preimages: IntMatrix,
}

impl Solver {
    pub fn new(a: &IntMatrix) -> Self {
        let ech = row_echelon(&a.transpose(), true, true);
        let rank = ech.rank();
        let u = ech.transform.expect("tracked");
        let rows: Vec<usize> = (0..rank).collect();
        let preimages = u.select_rows(&rows);
        let basis = ech.form.select_rows(&rows);
        Solver {
            cols: a.cols(),
            lattice: Lattice {
                dim: a.rows(),
                basis,
                pivots: ech.pivots,
            },
            preimages,
        }
    }

    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        let y = self.lattice.coordinates(b)?;
        let mut x = vec![Int::zero(); self.cols];
        for (t, yt) in y.iter().enumerate() {
            if yt.is_zero() {
                continue;
            }
            for (xj, pj) in x.iter_mut().zip(self.preimages.row(t)) {
                if !pj.is_zero() {
                    xj.add_mul_assign(yt, pj);
                }
            }
        }
        Some(x)
    }

    pub fn image(&self) -> &Lattice {
        &self.lattice
    }
}

/// A sublattice of `Z^dim`, stored by its row Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            basis: IntMatrix::zeros(0, dim),
            pivots: vec![],
        }
    }

    pub fn full(dim: usize) -> Self {
        Lattice {
            dim,
            basis: IntMatrix::identity(dim),
            pivots: (0..dim).collect(),
        }
    }

    /// Lattice spanned by the rows of `gens`.
    pub fn from_rows(gens: &IntMatrix) -> Self {
        let ech = row_echelon(gens, false, true);
        let rows: Vec<usize> = (0..ech.rank()).collect();
        Lattice {
            dim: gens.cols(),
            basis: ech.form.select_rows(&rows),
            pivots: ech.pivots,
        }
    }

    /// Lattice spanned by the columns of `gens`.
    pub fn from_columns(gens: &IntMatrix) -> Self {
        Self::from_rows(&gens.transpose())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis vectors as rows, in Hermite normal form.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` with respect to the basis rows, or `None` if `v` is
    /// not in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(
            v.len(),
            self.dim,
            "vector length does not match lattice dimension"
        );
        let mut r = v.to_vec();
        let mut out = Vec::with_capacity(self.rank());
        for (t, &p) in self.pivots.iter().enumerate() {
            if r[p].is_zero() {
                out.push(Int::zero());
                continue;
            }
            let piv = &self.basis[(t, p)];
            if !r[p].is_divisible_by(piv) {
                return None;
            }
            let q = r[p].div_trunc(piv);
            for (rj, bj) in r.iter_mut().zip(self.basis.row(t)).skip(p) {
                if !bj.is_zero() {
                    rj.sub_mul_assign(&q, bj);
                }
            }
            out.push(q);
        }
        if r.iter().all(Int::is_zero) {
            Some(out)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        (0..other.rank()).all(|t| self.contains(other.basis.row(t)))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        Lattice::from_rows(&self.basis.vconcat(&other.basis))
    }

    /// Index of the lattice inside its saturation is 1.
    pub fn is_saturated(&self) -> bool {
        let s = super::smith::invariant_factors(&self.basis);
        s.iter().all(Int::is_one)
    }
}


/// A lattice grown one vector at a time, kept in (unreduced) row echelon
/// form indexed by pivot column.
#[derive(Clone, Debug)]
pub struct IncrementalLattice {
    dim: usize,
    rows: Vec<Option<Vec<Int>>>,
    rank: usize,
}

impl IncrementalLattice {
    pub fn new(dim: usize) -> Self {
        IncrementalLattice {
            dim,
            rows: vec![None; dim],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for c in 0..self.dim {
            if v[c].is_zero() {
                continue;
            }
            let Some(r) = &self.rows[c] else { return false };
            if !v[c].is_divisible_by(&r[c]) {
                return false;
            }
            let q = v[c].div_trunc(&r[c]);
            for k in c..self.dim {
                if !r[k].is_zero() {
                    v[k].sub_mul_assign(&q, &r[k]);
                }
            }
        }
        true
    }

    /// Adds `v`; returns whether the lattice grew.
    pub fn insert(&mut self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        let mut grew = false;
        for c in 0..self.dim {
            if v[c].is_zero() {
                continue;
            }
            match self.rows[c].as_mut() {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows[c] = Some(v);
                    self.rank += 1;
                    return true;
                }
                Some(r) => {
                    if v[c].is_divisible_by(&r[c]) {
                        let q = v[c].div_trunc(&r[c]);
                        for k in c..self.dim {
                            if !r[k].is_zero() {
                                v[k].sub_mul_assign(&q, &r[k]);
                            }
                        }
                    } else {
                        let (g, s, t) = r[c].ext_gcd(&v[c]);
                        let a = r[c].div_trunc(&g);
                        let b = v[c].div_trunc(&g);
                        let mut nr = vec![Int::zero(); self.dim];
                        let mut nv = vec![Int::zero(); self.dim];
                        for k in c..self.dim {
                            let mut x = &s * &r[k];
                            x.add_mul_assign(&t, &v[k]);
                            nr[k] = x;
                            let mut y = &a * &v[k];
                            y.sub_mul_assign(&b, &r[k]);
                            nv[k] = y;
                        }
                        *r = nr;
                        v = nv;
                        grew = true;
                    }
                }
            }
        }
        grew
    }
}
