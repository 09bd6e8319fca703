//! Chain complexes of finitely generated abelian groups, their homology in
//! canonical coordinates, and induced maps.
//!
//! Each chain group is `Z^aₙ / Wₙ`, where the optional relation lattice `Wₙ`
//! is given by generating columns. Complexes arising from free resolutions
//! have no relations; torsion coefficients introduce them.

use serde::{Deserialize, Serialize};

use super::abelian::{AbelianMap, FgAbGroup};
use super::hermite::{kernel_basis, Lattice};
use super::int::Int;
use super::matrix::IntMatrix;
use super::smith::{self, Track};
use super::sparse::{eliminate, SparseMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ChainComplex {
    dims: Vec<usize>,
    /// `boundaries[n]` is `d_n : C_n → C_{n-1}`; `boundaries[0]` has no rows.
    boundaries: Vec<SparseMatrix>,
    relations: Vec<Option<IntMatrix>>,
}

impl ChainComplex {
    /// `boundaries[k]` is `d_{k+1}`, so `boundaries.len() + 1 == dims.len()`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        Self::with_relations(dims, boundaries, vec![])
    }

    /// Presented complex; `relations[n]`, when present, has `dims[n]` rows.
    pub fn with_relations(
        dims: Vec<usize>,
        boundaries: Vec<SparseMatrix>,
        relations: Vec<Option<IntMatrix>>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Invalid(
                "chain complex needs at least one degree".into(),
            ));
        }
        if boundaries.len() + 1 != dims.len() {
            return Err(Error::Dimension(format!(
                "{} chain groups need {} boundaries, got {}",
                dims.len(),
                dims.len() - 1,
                boundaries.len()
            )));
        }
        let mut all = vec![SparseMatrix::zeros(0, dims[0])];
        for (k, d) in boundaries.into_iter().enumerate() {
            if d.rows() != dims[k] || d.cols() != dims[k + 1] {
                return Err(Error::Dimension(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    k + 1,
                    d.rows(),
                    d.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
            all.push(d);
        }
        let mut rel = relations;
        if rel.len() > dims.len() {
            return Err(Error::Dimension("more relation blocks than degrees".into()));
        }
        rel.resize(dims.len(), None);
        for (n, w) in rel.iter_mut().enumerate() {
            if let Some(m) = w {
                if m.rows() != dims[n] {
                    return Err(Error::Dimension(format!(
                        "relations in degree {n} have wrong length"
                    )));
                }
                if m.cols() == 0 {
                    *w = None;
                }
            }
        }
        let c = ChainComplex {
            dims,
            boundaries: all,
            relations: rel,
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        for n in 2..self.dims.len() {
            let dd = self.boundaries[n - 1].mul(&self.boundaries[n]);
            if dd.is_zero() {
                continue;
            }
            let ok = match self.relation_lattice(n - 2) {
                Some(w) => (0..dd.cols()).all(|j| w.contains(&column_vec(&dd, j))),
                None => false,
            };
            if !ok {
                return Err(Error::Verification(format!(
                    "d_{} ∘ d_{} is not zero",
                    n - 1,
                    n
                )));
            }
        }
        for n in 1..self.dims.len() {
            let Some(w) = &self.relations[n] else {
                continue;
            };
            let image = self.boundaries[n].mul_dense(w);
            for j in 0..image.cols() {
                let v = image.column(j);
                if v.iter().all(Int::is_zero) {
                    continue;
                }
                let inside = self.relation_lattice(n - 1).is_some_and(|l| l.contains(&v));
                if !inside {
                    return Err(Error::Verification(format!(
                        "d_{n} does not map relations into relations"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of degrees stored (`0..len`).
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_n`; zero outside the stored range.
    pub fn boundary(&self, n: usize) -> SparseMatrix {
        if n == 0 || n >= self.dims.len() {
            SparseMatrix::zeros(if n == 0 { 0 } else { self.dim(n - 1) }, self.dim(n))
        } else {
            self.boundaries[n].clone()
        }
    }

    pub fn relations(&self, n: usize) -> Option<&IntMatrix> {
        self.relations.get(n).and_then(Option::as_ref)
    }

    pub fn has_relations(&self) -> bool {
        self.relations.iter().any(Option::is_some)
    }

    fn relation_lattice(&self, n: usize) -> Option<Lattice> {
        self.relations(n).map(Lattice::from_columns)
    }

    fn relation_cols(&self, n: usize) -> IntMatrix {
        self.relations(n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.dim(n), 0))
    }

    /// The complex `U_{n-1} d_n U_n⁻¹` for unimodular `U_n` given with inverses.
    pub fn change_basis(&self, us: &[(IntMatrix, IntMatrix)]) -> Result<Self> {
        assert_eq!(us.len(), self.dims.len());
        let mut bs = Vec::new();
        for n in 1..self.dims.len() {
            let d = self.boundaries[n].to_dense();
            bs.push(SparseMatrix::from_dense(&us[n - 1].0.mul(&d).mul(&us[n].1)));
        }
        let rel = (0..self.dims.len())
            .map(|n| self.relations(n).map(|w| us[n].0.mul(w)))
            .collect();
        ChainComplex::with_relations(self.dims.clone(), bs, rel)
    }

    /// `C[1]`: a zero group in degree 0, then `C_{n-1}` in degree `n`.
    pub fn shift_up(&self) -> ChainComplex {
        let mut dims = vec![0];
        dims.extend_from_slice(&self.dims);
        let mut bs = vec![
            SparseMatrix::zeros(0, 0),
            SparseMatrix::zeros(0, self.dims[0]),
        ];
        bs.extend(self.boundaries[1..].iter().cloned());
        let mut rel = vec![None];
        rel.extend(self.relations.iter().cloned());
        ChainComplex {
            dims,
            boundaries: bs,
            relations: rel,
        }
    }

    /// Replaces `C_0` by zero.
    pub fn without_bottom(&self) -> ChainComplex {
        let mut c = self.clone();
        c.dims[0] = 0;
        c.boundaries[0] = SparseMatrix::zeros(0, 0);
        if c.dims.len() > 1 {
            c.boundaries[1] = SparseMatrix::zeros(0, c.dims[1]);
        }
        c.relations[0] = None;
        c
    }

    /// Keeps degrees `0..len`.
    pub fn truncate(&self, len: usize) -> ChainComplex {
        let mut c = self.clone();
        let len = len.max(1);
        c.dims.truncate(len);
        c.boundaries.truncate(len);
        c.relations.truncate(len);
        c
    }

    /// `H_n` as an abstract group. Relation-free complexes go through sparse
    /// elimination; presented ones through [`ChainComplex::homology`].
    pub fn homology_group(&self, n: usize) -> Result<FgAbGroup> {
        let presented = (n.saturating_sub(1)..=n + 1).any(|k| self.relations(k).is_some());
        if presented {
            return Ok(self.homology(n)?.group);
        }
        let rank_in = eliminate(&self.boundary(n)).rank;
        let out = eliminate(&self.boundary(n + 1));
        Ok(FgAbGroup {
            free_rank: self.dim(n) - rank_in - out.rank,
            torsion: out.torsion,
        })
    }

    /// All homology groups in the stored range, sharing eliminations.
    pub fn homology_groups(&self) -> Result<Vec<FgAbGroup>> {
        if self.has_relations() {
            return (0..self.len()).map(|n| self.homology_group(n)).collect();
        }
        let elim: Vec<_> = (0..=self.len())
            .map(|n| eliminate(&self.boundary(n)))
            .collect();
        Ok((0..self.len())
            .map(|n| FgAbGroup {
                free_rank: self.dim(n) - elim[n].rank - elim[n + 1].rank,
                torsion: elim[n + 1].torsion.clone(),
            })
            .collect())
    }

    /// `H_n` with coordinate data.
    pub fn homology(&self, n: usize) -> Result<Homology> {
        let a = self.dim(n);
        let d = self.boundary(n).to_dense();
        // cycles: {x : d x ∈ W_{n-1}}
        let cycles = match self.relations(n.wrapping_sub(1)).filter(|_| n > 0) {
            None => Lattice::from_columns(&kernel_basis(&d)),
            Some(w) => {
                let k = kernel_basis(&d.hconcat(w));
                Lattice::from_columns(&k.select_rows(&(0..a).collect::<Vec<_>>()))
            }
        };
        let z = cycles.rank();
        let bgens = self
            .relation_cols(n)
            .hconcat(&self.boundary(n + 1).to_dense());
        let mut ycols = Vec::with_capacity(bgens.cols());
        for j in 0..bgens.cols() {
            let v = bgens.column(j);
            if v.iter().all(Int::is_zero) {
                continue;
            }
            let y = cycles.coordinates(&v).ok_or_else(|| {
                Error::Verification(format!("boundaries in degree {n} are not cycles"))
            })?;
            ycols.push(y);
        }
        let y = IntMatrix::from_columns(z, &ycols);
        let sd = smith::smith_decompose(
            &y,
            Track {
                p: true,
                p_inv: true,
                q: false,
                q_inv: false,
            },
        );
        let (p, p_inv) = (sd.p.unwrap(), sd.p_inv.unwrap());
        let r = sd.diagonal.len();
        let keep: Vec<usize> = (0..z)
            .filter(|&i| i >= r || !sd.diagonal[i].is_one())
            .collect();
        let group = FgAbGroup {
            free_rank: z - r,
            torsion: sd
                .diagonal
                .iter()
                .filter(|x| !x.is_one())
                .cloned()
                .collect(),
        };
        let basis_cols = cycles.basis().transpose();
        let generators = basis_cols.mul(&p_inv.select_columns(&keep));
        Ok(Homology {
            degree: n,
            group,
            cycles,
            to_gens: p.select_rows(&keep),
            generators,
        })
    }
}

fn column_vec(m: &SparseMatrix, j: usize) -> Vec<Int> {
    let mut v = vec![Int::zero(); m.rows()];
    for (r, x) in m.column(j) {
        v[*r] = x.clone();
    }
    v
}

/// `H_n` of a complex, with generators ordered torsion-first by increasing
/// order, then free.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: usize,
    pub group: FgAbGroup,
    cycles: Lattice,
    to_gens: IntMatrix,
    generators: IntMatrix,
}

impl Homology {
    /// Cycle representatives of the normalized generators, as columns.
    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    /// Normalized coordinates of the class of a cycle.
    pub fn coordinates(&self, cycle: &[Int]) -> Result<Vec<Int>> {
        let y = self.cycles.coordinates(cycle).ok_or_else(|| {
            Error::Invalid(format!("vector is not a cycle in degree {}", self.degree))
        })?;
        let mut h = self.to_gens.mul_vec(&y);
        self.group.normalize(&mut h);
        Ok(h)
    }
}

/// `f_n : C_n → D_{n+shift}` for every stored source degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub shift: isize,
    pub components: Vec<SparseMatrix>,
}

impl ChainMap {
    /// Validates shapes and commutation `d f_n = f_{n-1} d` modulo relations of
    /// the target, plus preservation of relations.
    pub fn new(
        source: &ChainComplex,
        target: &ChainComplex,
        shift: isize,
        components: Vec<SparseMatrix>,
    ) -> Result<Self> {
        if components.len() != source.len() {
            return Err(Error::Dimension(format!(
                "chain map has {} components for {} degrees",
                components.len(),
                source.len()
            )));
        }
        let tdeg = |n: usize| -> Option<usize> { usize::try_from(n as isize + shift).ok() };
        for (n, f) in components.iter().enumerate() {
            let rows = tdeg(n).map_or(0, |m| target.dim(m));
            if f.rows() != rows || f.cols() != source.dim(n) {
                return Err(Error::Dimension(format!(
                    "component {n} is {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    rows,
                    source.dim(n)
                )));
            }
        }
        let in_target = |m: Option<usize>, v: &[Int]| -> bool {
            if v.iter().all(Int::is_zero) {
                return true;
            }
            m.and_then(|m| target.relation_lattice(m))
                .is_some_and(|l| l.contains(v))
        };
        for n in 1..source.len() {
            let Some(m) = tdeg(n) else { continue };
            if m == 0 {
                continue;
            }
            let lhs = target.boundary(m).mul(&components[n]);
            let rhs = components[n - 1].mul(&source.boundary(n));
            let diff = lhs.sub(&rhs);
            for j in 0..diff.cols() {
                if !in_target(Some(m - 1), &column_vec(&diff, j)) {
                    return Err(Error::Verification(format!(
                        "chain map does not commute with boundaries in degree {n}"
                    )));
                }
            }
        }
        for n in 0..source.len() {
            if let Some(w) = source.relations(n) {
                let img = components[n].mul_dense(w);
                for j in 0..img.cols() {
                    if !in_target(tdeg(n), &img.column(j)) {
                        return Err(Error::Verification(format!(
                            "chain map does not preserve relations in degree {n}"
                        )));
                    }
                }
            }
        }
        Ok(ChainMap { shift, components })
    }

    pub fn component(&self, n: usize) -> &SparseMatrix {
        &self.components[n]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> ChainMap {
        let comps = self
            .components
            .iter()
            .enumerate()
            .map(|(n, f)| {
                let m = (n as isize + self.shift) as usize;
                other.components[m].mul(f)
            })
            .collect();
        ChainMap {
            shift: self.shift + other.shift,
            components: comps,
        }
    }
}

/// Induced map `H_n(C) → H_{n+shift}(D)` in normalized coordinates.
pub fn induced_map(f: &ChainMap, source: &Homology, target: &Homology) -> Result<AbelianMap> {
    let n = source.degree;
    if (n as isize + f.shift) as usize != target.degree {
        return Err(Error::Dimension(
            "homology degrees do not match the chain map shift".into(),
        ));
    }
    induced_by_matrix(f.component(n), source, target)
}

/// Map on homology induced by a matrix that sends cycles of `source` to
/// cycles of `target`, e.g. a connecting homomorphism read off a chain-level
/// lift. Errors if some generator does not land on a cycle.
pub fn induced_by_matrix(
    comp: &SparseMatrix,
    source: &Homology,
    target: &Homology,
) -> Result<AbelianMap> {
    let gens = source.generators();
    let cols = (0..gens.cols())
        .map(|j| target.coordinates(&comp.mul_vec(&gens.column(j))))
        .collect::<Result<Vec<_>>>()?;
    let m = IntMatrix::from_columns(target.group.ngens(), &cols);
    AbelianMap::new(source.group.clone(), target.group.clone(), m)
}

/// Summary of a map on homology suitable for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyMap {
    pub degree: usize,
    pub map: AbelianMap,
    pub kernel: FgAbGroup,
    pub cokernel: FgAbGroup,
    pub is_iso: bool,
    pub is_zero: bool,
}

impl HomologyMap {
    pub fn from_map(degree: usize, map: AbelianMap) -> Self {
        let kernel = map.kernel();
        let cokernel = map.cokernel();
        HomologyMap {
            degree,
            is_iso: kernel.is_trivial() && cokernel.is_trivial(),
            is_zero: map.is_zero(),
            kernel,
            cokernel,
            map,
        }
    }
}
