//! Complexes of permutation modules given by orbit cells.
//!
//! A cell `σ` with stabilizer `K_σ` spans the orbit `G·σ ≅ G/K_σ`. A face
//! entry `(τ, a, c)` of `σ` contributes `c · a⁻¹τ` to `∂σ`; it requires
//! `a K_σ a⁻¹ ⊆ K_τ`, i.e. the morphism `G/K_σ → G/K_τ, gK_σ ↦ g a⁻¹ K_τ`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{ChainComplex, Int, SparseMatrix};
use crate::groups::{CosetSpace, FiniteGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub cell: usize,
    pub a: usize,
    pub coeff: Int,
}

#[derive(Clone, Debug)]
pub struct OrbitCell {
    pub stabilizer: Subgroup,
    pub boundary: Vec<Face>,
}

#[derive(Clone, Debug)]
pub struct PermComplex {
    group: FiniteGroup,
    cells: Vec<Vec<OrbitCell>>,
    /// Coset spaces shared between cells with equal stabilizers.
    spaces: Vec<Vec<Arc<CosetSpace>>>,
}

impl PermComplex {
    /// Validates face morphisms and the formal vanishing of `∂²`.
    pub fn new(group: &FiniteGroup, cells: Vec<Vec<OrbitCell>>) -> Result<Self> {
        let c = Self::new_unchecked(group, cells);
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(group: &FiniteGroup, cells: Vec<Vec<OrbitCell>>) -> Self {
        let mut cache: BTreeMap<Vec<usize>, Arc<CosetSpace>> = BTreeMap::new();
        let spaces = cells
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|c| {
                        cache
                            .entry(c.stabilizer.elements().to_vec())
                            .or_insert_with(|| Arc::new(CosetSpace::new(&c.stabilizer)))
                            .clone()
                    })
                    .collect()
            })
            .collect();
        PermComplex {
            group: group.clone(),
            cells,
            spaces,
        }
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        for (d, layer) in self.cells.iter().enumerate() {
            for (i, cell) in layer.iter().enumerate() {
                if cell.stabilizer.group() != g {
                    return Err(Error::GroupMismatch(format!(
                        "cell {i} in dimension {d} has a foreign stabilizer"
                    )));
                }
                if d == 0 && !cell.boundary.is_empty() {
                    return Err(Error::Invalid(format!("0-cell {i} has a boundary")));
                }
                for f in &cell.boundary {
                    let Some(t) = (d > 0).then(|| self.cells[d - 1].get(f.cell)).flatten() else {
                        return Err(Error::Invalid(format!(
                            "cell {i} in dimension {d} has a face on missing cell {}",
                            f.cell
                        )));
                    };
                    if f.a >= g.order() {
                        return Err(Error::Invalid(format!(
                            "cell {i} in dimension {d}: element {} out of range",
                            f.a
                        )));
                    }
                    // a K a⁻¹ ⊆ K_τ
                    let ok = cell
                        .stabilizer
                        .elements()
                        .iter()
                        .all(|&k| t.stabilizer.contains(g.conjugate(k, g.inv(f.a))));
                    if !ok {
                        return Err(Error::Invalid(format!(
                            "cell {i} in dimension {d}: no morphism G/K_σ → G/K_τ for a = {}",
                            f.a
                        )));
                    }
                }
            }
        }
        for d in 2..self.cells.len() {
            for (i, cell) in self.cells[d].iter().enumerate() {
                let mut acc: BTreeMap<(usize, usize), Int> = BTreeMap::new();
                for f in &cell.boundary {
                    for f2 in &self.cells[d - 1][f.cell].boundary {
                        let ba = g.mul(f2.a, f.a);
                        let key = (f2.cell, self.canonical_morphism(d - 2, f2.cell, ba));
                        *acc.entry(key).or_default() += &(&f.coeff * &f2.coeff);
                    }
                }
                if acc.values().any(|v| !v.is_zero()) {
                    return Err(Error::Verification(format!(
                        "boundary of boundary of cell {i} in dimension {d} is not zero"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Least element of the right coset `K_τ a`, which names the morphism `R_a`.
    pub fn canonical_morphism(&self, dim: usize, cell: usize, a: usize) -> usize {
        let k = &self.cells[dim][cell].stabilizer;
        k.elements()
            .iter()
            .map(|&x| self.group.mul(x, a))
            .min()
            .expect("nonempty")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Number of dimensions stored.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(Vec::is_empty)
    }

    pub fn cells(&self, d: usize) -> &[OrbitCell] {
        self.cells.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn all_cells(&self) -> &[Vec<OrbitCell>] {
        &self.cells
    }

    pub fn coset_space(&self, d: usize, i: usize) -> &CosetSpace {
        &self.spaces[d][i]
    }

    /// Keeps dimensions `0..len`.
    pub fn truncate(&self, len: usize) -> PermComplex {
        let mut c = self.clone();
        c.cells.truncate(len);
        c.spaces.truncate(len);
        c
    }

    /// Offsets of each cell's block in the underlying free abelian group.
    pub fn expanded_offsets(&self, d: usize) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.cells(d).len() + 1);
        let mut acc = 0;
        off.push(0);
        for i in 0..self.cells(d).len() {
            acc += self.spaces[d][i].len();
            off.push(acc);
        }
        off
    }

    pub fn expanded_dim(&self, d: usize) -> usize {
        *self.expanded_offsets(d).last().unwrap()
    }

    /// Boundary `∂_d` on the underlying free abelian groups, whose basis in
    /// dimension `d` is the translates `g·σ`, ordered by cell then coset.
    pub fn expanded_boundary(&self, d: usize) -> SparseMatrix {
        let rows = if d == 0 { 0 } else { self.expanded_dim(d - 1) };
        if d == 0 || d >= self.cells.len() {
            return SparseMatrix::zeros(rows, self.expanded_dim(d));
        }
        let off_t = self.expanded_offsets(d - 1);
        let mut cols = Vec::with_capacity(self.expanded_dim(d));
        for (i, cell) in self.cells[d].iter().enumerate() {
            let cs = &self.spaces[d][i];
            for c in 0..cs.len() {
                let g = cs.representative(c);
                let mut col = Vec::with_capacity(cell.boundary.len());
                for f in &cell.boundary {
                    let x = self.group.mul(g, self.group.inv(f.a));
                    let ct = self.spaces[d - 1][f.cell].coset_of(x);
                    col.push((off_t[f.cell] + ct, f.coeff.clone()));
                }
                cols.push(col);
            }
        }
        SparseMatrix::from_column_entries(rows, cols)
    }

    /// The underlying complex of free abelian groups.
    pub fn expanded_complex(&self) -> Result<ChainComplex> {
        let dims = (0..self.cells.len())
            .map(|d| self.expanded_dim(d))
            .collect();
        let bs = (1..self.cells.len())
            .map(|d| self.expanded_boundary(d))
            .collect();
        ChainComplex::new(dims, bs)
    }

    /// Index permutation of the underlying basis in dimension `d` under `g`.
    pub fn expanded_action(&self, d: usize, g: usize) -> Vec<usize> {
        let off = self.expanded_offsets(d);
        let mut p = Vec::with_capacity(*off.last().unwrap());
        for i in 0..self.cells(d).len() {
            let cs = &self.spaces[d][i];
            for c in 0..cs.len() {
                p.push(off[i] + cs.act(g, c));
            }
        }
        p
    }

    /// Cellular complex of the orbit space: one generator per orbit cell,
    /// coefficients summed over faces.
    pub fn quotient_complex(&self) -> Result<ChainComplex> {
        let dims: Vec<usize> = self.cells.iter().map(Vec::len).collect();
        let bs = (1..self.cells.len())
            .map(|d| {
                let cols = self.cells[d]
                    .iter()
                    .map(|c| {
                        c.boundary
                            .iter()
                            .map(|f| (f.cell, f.coeff.clone()))
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_column_entries(dims[d - 1], cols)
            })
            .collect();
        ChainComplex::new(dims, bs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The circle with C2 acting by reflection.
    fn reflection_circle() -> PermComplex {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let whole = c2.whole();
        let cells = vec![
            vec![
                OrbitCell {
                    stabilizer: whole.clone(),
                    boundary: vec![],
                },
                OrbitCell {
                    stabilizer: whole,
                    boundary: vec![],
                },
            ],
            vec![OrbitCell {
                stabilizer: c2.trivial_subgroup(),
                boundary: vec![
                    Face {
                        cell: 1,
                        a: 0,
                        coeff: Int::one(),
                    },
                    Face {
                        cell: 0,
                        a: 0,
                        coeff: Int::from(-1),
                    },
                ],
            }],
        ];
        PermComplex::new(&c2, cells).unwrap()
    }

    #[test]
    fn reflection_circle_expands_to_a_circle() {
        let x = reflection_circle();
        let c = x.expanded_complex().unwrap();
        assert_eq!(c.dims(), &[2, 2]);
        let h = c.homology_groups().unwrap();
        assert_eq!(h[0].to_string(), "Z");
        assert_eq!(h[1].to_string(), "Z");
        let q = x.quotient_complex().unwrap().homology_groups().unwrap();
        assert_eq!(q[1].to_string(), "0");
    }

    #[test]
    fn rejects_invalid_morphism() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let cells = vec![
            vec![OrbitCell {
                stabilizer: c2.trivial_subgroup(),
                boundary: vec![],
            }],
            vec![OrbitCell {
                stabilizer: c2.whole(),
                boundary: vec![Face {
                    cell: 0,
                    a: 0,
                    coeff: Int::one(),
                }],
            }],
        ];
        assert!(PermComplex::new(&c2, cells).is_err());
    }
}
