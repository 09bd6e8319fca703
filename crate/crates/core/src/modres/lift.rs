//! Equivariant chain maps out of free resolutions, built generator by
//! generator by solving against the target boundary.

use super::module::GModule;
use super::perm::PermComplex;
use super::resolution::FreeResolution;
use super::tensor::TensorComplex;
use crate::error::{Error, Result};
use crate::exactla::{Int, IntMatrix, Solver, SparseMatrix};

/// `λ_n : P_n → D_{n+shift}`, stored on generators.
#[derive(Clone, Debug)]
pub struct Lift {
    pub shift: usize,
    /// `columns[n][j] = λ_n(e_j)` in the underlying basis of `D_{n+shift}`.
    pub columns: Vec<Vec<Vec<Int>>>,
}

/// `g · x` in the underlying basis of dimension `d`.
fn act_on(target: &PermComplex, d: usize, g: usize, x: &[Int]) -> Vec<Int> {
    let p = target.expanded_action(d, g);
    let mut out = vec![Int::zero(); x.len()];
    for (k, v) in x.iter().enumerate() {
        if !v.is_zero() {
            out[p[k]] = v.clone();
        }
    }
    out
}

/// Image of `d_n(e_j)` under the already built `λ_{n-1}`.
fn pushed_boundary(
    src: &FreeResolution,
    target: &PermComplex,
    lift: &Lift,
    n: usize,
    j: usize,
) -> Vec<Int> {
    let d = n - 1 + lift.shift;
    let mut acc = vec![Int::zero(); target.expanded_dim(d)];
    for (i, g, c) in &src.boundary(n)[j] {
        let v = act_on(target, d, *g, &lift.columns[n - 1][*i]);
        for (a, b) in acc.iter_mut().zip(&v) {
            a.add_mul_assign(c, b);
        }
    }
    acc
}

/// Builds `λ` with `bottom · λ_0(e_j) = rhs0[j]` and
/// `∂ λ_n = λ_{n-1} d_n` for `n < len`. `bottom` is a map out of the
/// underlying group of `D_shift`.
pub fn lift_resolution(
    src: &FreeResolution,
    target: &PermComplex,
    shift: usize,
    bottom: &SparseMatrix,
    rhs0: &[Vec<Int>],
    len: usize,
) -> Result<Lift> {
    if src.group() != target.group() {
        return Err(Error::GroupMismatch(
            "lift between complexes over different groups".into(),
        ));
    }
    if rhs0.len() != src.rank(0) || bottom.cols() != target.expanded_dim(shift) {
        return Err(Error::Dimension(
            "bottom condition has the wrong shape".into(),
        ));
    }
    let len = len.min(src.len());
    if shift + len > target.len() {
        return Err(Error::Truncation {
            requested: len,
            needed: shift + len,
            available: target.len(),
        });
    }
    let mut lift = Lift {
        shift,
        columns: Vec::with_capacity(len),
    };
    let solver = Solver::new(&bottom.to_dense());
    let mut first = Vec::with_capacity(rhs0.len());
    for (j, b) in rhs0.iter().enumerate() {
        let x = solver
            .solve(b)
            .ok_or_else(|| Error::Verification(format!("no lift of generator {j} in degree 0")))?;
        first.push(x);
    }
    lift.columns.push(first);
    for n in 1..len {
        let d = n + shift;
        let solver = Solver::new(&target.expanded_boundary(d).to_dense());
        let mut layer = Vec::with_capacity(src.rank(n));
        for j in 0..src.rank(n) {
            let rhs = pushed_boundary(src, target, &lift, n, j);
            let x = solver.solve(&rhs).ok_or_else(|| {
                Error::Verification(format!("no lift of generator {j} in degree {n}"))
            })?;
            layer.push(x);
        }
        lift.columns.push(layer);
    }
    Ok(lift)
}

impl Lift {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Re-checks the defining equations on every generator.
    pub fn verify(
        &self,
        src: &FreeResolution,
        target: &PermComplex,
        bottom: &SparseMatrix,
        rhs0: &[Vec<Int>],
    ) -> Result<()> {
        for (j, x) in self.columns[0].iter().enumerate() {
            if bottom.mul_vec(x) != rhs0[j] {
                return Err(Error::Verification(format!(
                    "λ_0 fails the bottom condition on generator {j}"
                )));
            }
        }
        for n in 1..self.len() {
            let dmat = target.expanded_boundary(n + self.shift);
            for j in 0..src.rank(n) {
                if dmat.mul_vec(&self.columns[n][j]) != pushed_boundary(src, target, self, n, j) {
                    return Err(Error::Verification(format!(
                        "λ is not a chain map at generator {j} of degree {n}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Components of `λ ⊗ M : P ⊗ M → D ⊗ M`; component `n` goes from degree
/// `n` of `src_t` to degree `n + shift` of `tgt_t`.
pub fn tensor_lift(
    lift: &Lift,
    target: &PermComplex,
    m: &GModule,
    src_t: &TensorComplex,
    tgt_t: &TensorComplex,
) -> Vec<SparseMatrix> {
    let g = target.group();
    let mut out = Vec::with_capacity(lift.len());
    for (n, layer) in lift.columns.iter().enumerate() {
        let d = n + lift.shift;
        let exp_off = target.expanded_offsets(d);
        let rows = tgt_t.complex.dim(d);
        let mut cols: Vec<Vec<(usize, Int)>> = Vec::new();
        for (j, x) in layer.iter().enumerate() {
            let ps = &src_t.presentations[n][j];
            let mut acc = IntMatrix::zeros(rows, ps.ngens());
            for (k, v) in x.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let sigma = exp_off.partition_point(|&o| o <= k) - 1;
                let coset = k - exp_off[sigma];
                let rep = target.coset_space(d, sigma).representative(coset);
                let pt = &tgt_t.presentations[d][sigma];
                let b = pt.to_normal.mul(m.action(g.inv(rep))).mul(&ps.from_normal);
                acc.add_block(tgt_t.offsets[d][sigma], 0, &b, v);
            }
            for q in 0..acc.cols() {
                cols.push(
                    (0..rows)
                        .filter(|&r| !acc[(r, q)].is_zero())
                        .map(|r| (r, acc[(r, q)].clone()))
                        .collect(),
                );
            }
        }
        out.push(SparseMatrix::from_column_entries(rows, cols));
    }
    out
}
