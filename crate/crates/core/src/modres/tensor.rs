//! `C ⊗_G M` for permutation complexes `C`.
//!
//! The orbit of a cell `σ` contributes `Z[G/K_σ] ⊗_G M ≅ M_{K_σ}`, stored in
//! the normalized coordinates of its presentation.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::module::{GModule, Presentation};
use super::perm::PermComplex;
use super::resolution::{cyclic_resolution, resolve};
use super::Budget;
use crate::error::{Error, Result};
use crate::exactla::{ChainComplex, FgAbGroup, Int, IntMatrix, SparseMatrix};

#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: ChainComplex,
    /// `offsets[d][i]` is where cell `i` of dimension `d` starts.
    pub offsets: Vec<Vec<usize>>,
    pub presentations: Vec<Vec<Arc<Presentation>>>,
}

impl TensorComplex {
    /// Cell owning coordinate `k` in dimension `d`.
    pub fn cell_of(&self, d: usize, k: usize) -> usize {
        self.offsets[d].partition_point(|&o| o <= k) - 1
    }
}

pub fn tensor(c: &PermComplex, m: &GModule) -> Result<TensorComplex> {
    if c.group() != m.group() {
        return Err(Error::GroupMismatch(
            "complex and module over different groups".into(),
        ));
    }
    let mut cache: BTreeMap<Vec<usize>, Arc<Presentation>> = BTreeMap::new();
    let mut presentations = Vec::with_capacity(c.len());
    let mut offsets = Vec::with_capacity(c.len());
    for d in 0..c.len() {
        let mut ps = Vec::new();
        let mut off = vec![0];
        for cell in c.cells(d) {
            let p = cache
                .entry(cell.stabilizer.elements().to_vec())
                .or_insert_with(|| Arc::new(m.coinvariant_presentation(&cell.stabilizer)))
                .clone();
            off.push(off.last().unwrap() + p.ngens());
            ps.push(p);
        }
        presentations.push(ps);
        offsets.push(off);
    }
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let mut bs = Vec::new();
    for d in 1..c.len() {
        let mut cols: Vec<Vec<(usize, Int)>> = Vec::with_capacity(dims[d]);
        for (i, cell) in c.cells(d).iter().enumerate() {
            let ps = &presentations[d][i];
            let mut block: Vec<Vec<(usize, Int)>> = vec![Vec::new(); ps.ngens()];
            for f in &cell.boundary {
                let pt = &presentations[d - 1][f.cell];
                let b = pt.to_normal.mul(m.action(f.a)).mul(&ps.from_normal);
                for q in 0..b.cols() {
                    for r in 0..b.rows() {
                        let x = &b[(r, q)];
                        if !x.is_zero() {
                            block[q].push((offsets[d - 1][f.cell] + r, x * &f.coeff));
                        }
                    }
                }
            }
            cols.extend(block);
        }
        bs.push(SparseMatrix::from_column_entries(dims[d - 1], cols));
    }
    let relations = (0..c.len())
        .map(|d| {
            let tors: Vec<(usize, Int)> = presentations[d]
                .iter()
                .zip(&offsets[d])
                .flat_map(|(p, &o)| {
                    p.group
                        .torsion
                        .iter()
                        .enumerate()
                        .map(move |(k, t)| (o + k, t.clone()))
                })
                .collect();
            (!tors.is_empty()).then(|| {
                let mut w = IntMatrix::zeros(dims[d], tors.len());
                for (j, (r, t)) in tors.into_iter().enumerate() {
                    w[(r, j)] = t;
                }
                w
            })
        })
        .collect();
    let complex = ChainComplex::with_relations(dims, bs, relations)?;
    Ok(TensorComplex {
        complex,
        offsets,
        presentations,
    })
}

/// `H_n(G; M)` for `n < len`, through a resolution of `Z` tensored with `M`.
pub fn group_homology(m: &GModule, len: usize, budget: &Budget) -> Result<Vec<FgAbGroup>> {
    let g = m.group();
    let p = if g.is_standard_cyclic() {
        cyclic_resolution(g, len + 1)?
    } else {
        resolve(&GModule::trivial(g), len + 1, true, budget)?
    };
    let t = tensor(&p.to_perm_complex(), m)?;
    let mut h = t.complex.homology_groups()?;
    h.truncate(len);
    Ok(h)
}
