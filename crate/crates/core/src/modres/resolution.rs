//! Free resolutions in group-ring form.
//!
//! `P_n` is free on `ranks[n]` generators. A boundary column lists terms
//! `(i, g, c)` meaning `c · g · e_i`. Expanded over `Z`, the basis of `P_n`
//! is `g · e_j` at index `j·|G| + g`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::module::{standard_modules, GModule};
use super::perm::{Face, OrbitCell, PermComplex};
use super::Budget;
use crate::error::{Error, Result};
use crate::exactla::{
    kernel_basis, ChainComplex, IncrementalLattice, Int, IntMatrix, SparseMatrix,
};
use crate::groups::{FiniteGroup, Subgroup};

pub type RingColumn = Vec<(usize, usize, Int)>;

/// Whether degenerate simplices are kept.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    Full,
    #[default]
    Normalized,
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    module: GModule,
    ranks: Vec<usize>,
    /// `boundaries[n][j] = d_n(e_j)`; `boundaries[0]` is empty.
    boundaries: Vec<Vec<RingColumn>>,
    /// Column `j` is `ε(e_j)` in the coordinates of the module.
    augmentation: IntMatrix,
    name: String,
}

impl FreeResolution {
    /// Checks shapes, `ε ∘ d_1 = 0` and `d ∘ d = 0`. Exactness is checked
    /// separately by [`FreeResolution::verify_exact`].
    pub fn new(
        module: &GModule,
        boundaries: Vec<Vec<RingColumn>>,
        augmentation: IntMatrix,
        name: &str,
    ) -> Result<Self> {
        let r = Self::new_unchecked(module, boundaries, augmentation, name)?;
        r.augmented_complex()?;
        Ok(r)
    }

    fn new_unchecked(
        module: &GModule,
        mut boundaries: Vec<Vec<RingColumn>>,
        augmentation: IntMatrix,
        name: &str,
    ) -> Result<Self> {
        if boundaries.is_empty() {
            boundaries.push(vec![]);
        }
        if !boundaries[0].is_empty() {
            return Err(Error::Invalid(
                "degree 0 of a resolution has no boundary".into(),
            ));
        }
        if augmentation.rows() != module.rank() {
            return Err(Error::Dimension(format!(
                "augmentation has {} rows for a module of rank {}",
                augmentation.rows(),
                module.rank()
            )));
        }
        let mut ranks = vec![augmentation.cols()];
        for n in 1..boundaries.len() {
            ranks.push(boundaries[n].len());
        }
        let order = module.group().order();
        for n in 1..boundaries.len() {
            for (j, col) in boundaries[n].iter().enumerate() {
                if let Some(t) = col.iter().find(|t| t.0 >= ranks[n - 1] || t.1 >= order) {
                    return Err(Error::Invalid(format!(
                        "d_{n}(e_{j}) has term on generator {} with element {} out of range",
                        t.0, t.1
                    )));
                }
            }
        }
        Ok(FreeResolution {
            module: module.clone(),
            ranks,
            boundaries,
            augmentation,
            name: name.to_string(),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.module.group()
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of degrees stored (`0..len`).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, n: usize) -> &[RingColumn] {
        self.boundaries.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn augmentation(&self) -> &IntMatrix {
        &self.augmentation
    }

    /// Keeps degrees `0..len`.
    pub fn truncate(&self, len: usize) -> FreeResolution {
        let mut r = self.clone();
        let len = len.max(1);
        r.ranks.truncate(len);
        r.boundaries.truncate(len);
        r
    }

    pub fn expanded_rank(&self, n: usize) -> usize {
        self.rank(n) * self.group().order()
    }

    /// `d_n` over `Z`.
    pub fn expanded_boundary(&self, n: usize) -> SparseMatrix {
        let g = self.group();
        let o = g.order();
        let rows = if n == 0 { 0 } else { self.expanded_rank(n - 1) };
        if n == 0 || n >= self.len() {
            return SparseMatrix::zeros(rows, self.expanded_rank(n));
        }
        let mut cols = Vec::with_capacity(self.expanded_rank(n));
        for col in &self.boundaries[n] {
            for h in 0..o {
                cols.push(
                    col.iter()
                        .map(|(i, x, c)| (i * o + g.mul(h, *x), c.clone()))
                        .collect(),
                );
            }
        }
        SparseMatrix::from_column_entries(rows, cols)
    }

    /// `ε` over `Z`: column `(j, h)` is `h · ε(e_j)`.
    pub fn expanded_augmentation(&self) -> SparseMatrix {
        let m = &self.module;
        let mut cols = Vec::with_capacity(self.expanded_rank(0));
        for j in 0..self.rank(0) {
            let e = self.augmentation.column(j);
            for h in self.group().elements() {
                let v = m.action(h).mul_vec(&e);
                cols.push(
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .collect(),
                );
            }
        }
        SparseMatrix::from_column_entries(m.rank(), cols)
    }

    /// `g · v` for `v` in the expanded coordinates of `P_n`.
    pub fn act(&self, g: usize, v: &[Int]) -> Vec<Int> {
        let o = self.group().order();
        let mut out = vec![Int::zero(); v.len()];
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out[(k / o) * o + self.group().mul(g, k % o)] = x.clone();
            }
        }
        out
    }

    /// `M ← P_0 ← P_1 ← …` with `M` in degree 0 and `P_n` in degree `n+1`.
    pub fn augmented_complex(&self) -> Result<ChainComplex> {
        let mut dims = vec![self.module.rank()];
        dims.extend((0..self.len()).map(|n| self.expanded_rank(n)));
        let mut bs = vec![self.expanded_augmentation()];
        bs.extend((1..self.len()).map(|n| self.expanded_boundary(n)));
        let rel = vec![self.module.relations().cloned()];
        ChainComplex::with_relations(dims, bs, rel)
    }

    /// Exactness of the augmented complex through `P_{len-2}`.
    pub fn verify_exact(&self) -> Result<()> {
        let c = self.augmented_complex()?;
        for k in 0..self.len() {
            let h = c.homology_group(k)?;
            if !h.is_trivial() {
                let place = if k == 0 {
                    "at the module".to_string()
                } else {
                    format!("at P_{}", k - 1)
                };
                return Err(Error::Verification(format!(
                    "resolution {} is not exact {place}: {h}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// The same complex as free orbit cells; `d(e_j) ∋ c·g·e_i` becomes the
    /// face `(i, g⁻¹, c)`.
    pub fn to_perm_complex(&self) -> PermComplex {
        let g = self.group();
        let triv = g.trivial_subgroup();
        let cells = (0..self.len())
            .map(|n| {
                (0..self.rank(n))
                    .map(|j| OrbitCell {
                        stabilizer: triv.clone(),
                        boundary: if n == 0 {
                            vec![]
                        } else {
                            self.boundaries[n][j]
                                .iter()
                                .map(|(i, x, c)| Face {
                                    cell: *i,
                                    a: g.inv(*x),
                                    coeff: c.clone(),
                                })
                                .collect()
                        },
                    })
                    .collect()
            })
            .collect();
        PermComplex::new_unchecked(g, cells)
    }
}

/// The periodic resolution of `Z` over the standard cyclic group
/// `⟨t⟩`: `d_odd = t − 1`, `d_even = 1 + t + … + t^{n-1}`.
pub fn cyclic_resolution(group: &FiniteGroup, len: usize) -> Result<FreeResolution> {
    if !group.is_standard_cyclic() {
        return Err(Error::Unsupported(format!(
            "{} is not presented as a standard cyclic group",
            group.name()
        )));
    }
    let z = GModule::trivial(group);
    let len = len.max(1);
    let mut bs: Vec<Vec<RingColumn>> = vec![vec![]];
    if group.order() == 1 {
        bs.extend((1..len).map(|_| vec![]));
        return FreeResolution::new_unchecked(
            &z,
            bs,
            IntMatrix::from_rows(&[vec![1i64]]),
            "cyclic",
        );
    }
    for n in 1..len {
        let col = if n % 2 == 1 {
            vec![(0, 1, Int::one()), (0, 0, Int::from(-1))]
        } else {
            group.elements().map(|g| (0, g, Int::one())).collect()
        };
        bs.push(vec![col]);
    }
    FreeResolution::new_unchecked(&z, bs, IntMatrix::from_rows(&[vec![1i64]]), "cyclic")
}

/// Enumerates tuples `(g_1, …, g_k)` with `(1, g_1, …, g_k)` not killed by `is_zero`,
/// in lexicographic order.
fn tuples(
    group: &FiniteGroup,
    k: usize,
    normalized: bool,
    is_zero: &dyn Fn(&[usize]) -> bool,
    budget: &Budget,
    what: &str,
) -> Result<Vec<Vec<usize>>> {
    let o = group.order();
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(
        pos: usize,
        prev: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        o: usize,
        normalized: bool,
        is_zero: &dyn Fn(&[usize]) -> bool,
        budget: &Budget,
        what: &str,
    ) -> Result<()> {
        if pos == cur.len() {
            if !is_zero(cur) {
                out.push(cur.clone());
                budget.check_rank(what, out.len() * o)?;
            }
            return Ok(());
        }
        for g in 0..o {
            if normalized && g == prev {
                continue;
            }
            cur[pos] = g;
            rec(pos + 1, g, cur, out, o, normalized, is_zero, budget, what)?;
        }
        Ok(())
    }
    rec(
        0, 0, &mut cur, &mut out, o, normalized, is_zero, budget, what,
    )?;
    Ok(out)
}

/// Boundaries of a homogeneous simplicial resolution whose degree-`n`
/// generators are tuples of length `n + extra`.
fn simplicial_boundaries(
    group: &FiniteGroup,
    len: usize,
    extra: usize,
    normalized: bool,
    is_zero: &dyn Fn(&[usize]) -> bool,
    budget: &Budget,
    what: &str,
) -> Result<(Vec<Vec<usize>>, Vec<Vec<RingColumn>>)> {
    let mut layers: Vec<Vec<Vec<usize>>> = Vec::with_capacity(len);
    for n in 0..len {
        layers.push(tuples(
            group,
            n + extra,
            normalized,
            is_zero,
            budget,
            &format!("{what} P_{n}"),
        )?);
    }
    let mut bs: Vec<Vec<RingColumn>> = vec![vec![]];
    for n in 1..len {
        let index: HashMap<&[usize], usize> = layers[n - 1]
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_slice(), i))
            .collect();
        let mut cols = Vec::with_capacity(layers[n].len());
        for t in &layers[n] {
            let mut full = Vec::with_capacity(t.len() + 1);
            full.push(0);
            full.extend_from_slice(t);
            let mut col = Vec::with_capacity(full.len());
            for i in 0..full.len() {
                let w: Vec<usize> = full
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, &x)| x)
                    .collect();
                let x = w[0];
                let xi = group.inv(x);
                let rep: Vec<usize> = w[1..].iter().map(|&y| group.mul(xi, y)).collect();
                if is_zero(&rep) {
                    continue;
                }
                if normalized && (rep.first() == Some(&0) || rep.windows(2).any(|p| p[0] == p[1])) {
                    continue;
                }
                let idx = *index.get(rep.as_slice()).ok_or_else(|| {
                    Error::Verification(format!(
                        "{what}: face {rep:?} missing from degree {}",
                        n - 1
                    ))
                })?;
                let sign = if i % 2 == 0 {
                    Int::one()
                } else {
                    Int::from(-1)
                };
                col.push((idx, x, sign));
            }
            cols.push(col);
        }
        bs.push(cols);
    }
    Ok((layers.swap_remove(0), bs))
}

/// The homogeneous bar resolution of `Z`, degrees `0..len`.
pub fn bar_resolution(
    group: &FiniteGroup,
    len: usize,
    normalization: Normalization,
    budget: &Budget,
) -> Result<FreeResolution> {
    let len = len.max(1);
    budget.check_degree("bar resolution", len - 1)?;
    let normalized = normalization == Normalization::Normalized;
    let (_, bs) = simplicial_boundaries(
        group,
        len,
        0,
        normalized,
        &|_| false,
        budget,
        "bar resolution",
    )?;
    FreeResolution::new_unchecked(
        &GModule::trivial(group),
        bs,
        IntMatrix::from_rows(&[vec![1i64]]),
        "bar",
    )
}

/// The resolution of `I = ker(Z[G/H] → Z)` by tuples `(1, g_1, …, g_{n+1})`
/// not all in `H`, with `(1, g) ↦ gH − H`.
pub fn takasu_resolution(
    h: &Subgroup,
    len: usize,
    normalization: Normalization,
    budget: &Budget,
) -> Result<FreeResolution> {
    let len = len.max(1);
    budget.check_degree("relative resolution", len - 1)?;
    let g = h.group();
    let sm = standard_modules(h);
    let normalized = normalization == Normalization::Normalized;
    let in_h = |t: &[usize]| t.iter().all(|&x| h.contains(x));
    let (zero_tuples, bs) =
        simplicial_boundaries(g, len, 1, normalized, &in_h, budget, "relative resolution")?;
    let k = sm.i_module.rank();
    let mut aug = IntMatrix::zeros(k, zero_tuples.len());
    for (j, t) in zero_tuples.iter().enumerate() {
        let c = sm.cosets.coset_of(t[0]);
        aug[(c - 1, j)] = Int::one();
    }
    FreeResolution::new_unchecked(&sm.i_module, bs, aug, "relative")
}

/// A resolution by successive kernels. With `minimize`, generators are
/// chosen greedily so that each one leaves the span of the orbits of the
/// earlier ones; otherwise every kernel basis vector is a generator.
pub fn resolve(
    module: &GModule,
    len: usize,
    minimize: bool,
    budget: &Budget,
) -> Result<FreeResolution> {
    let len = len.max(1);
    budget.check_degree("resolution", len - 1)?;
    let g = module.group();
    let o = g.order();
    let m = module.rank();
    let rel = module
        .relations()
        .cloned()
        .unwrap_or_else(|| IntMatrix::zeros(m, 0));

    // P_0: module generators, as few as possible
    let mut gens0: Vec<usize> = Vec::new();
    {
        let mut lat = IncrementalLattice::new(m);
        for j in 0..rel.cols() {
            lat.insert(&rel.column(j));
        }
        for j in 0..m {
            let mut e = vec![Int::zero(); m];
            e[j] = Int::one();
            if minimize && lat.contains(&e) {
                continue;
            }
            gens0.push(j);
            if minimize {
                for x in g.elements() {
                    lat.insert(&module.action(x).mul_vec(&e));
                }
            }
        }
    }
    let mut aug = IntMatrix::zeros(m, gens0.len());
    for (c, &j) in gens0.iter().enumerate() {
        aug[(j, c)] = Int::one();
    }
    let mut res = FreeResolution::new_unchecked(
        module,
        vec![vec![]],
        aug,
        &format!("res({})", module.name()),
    )?;
    budget.check_rank("resolution P_0", res.expanded_rank(0))?;

    for n in 0..len - 1 {
        // kernel of P_n → P_{n-1} (or → M modulo relations)
        let dim = res.expanded_rank(n);
        let kernel = if n == 0 {
            let a = res.expanded_augmentation().to_dense().hconcat(&rel);
            let k = kernel_basis(&a);
            k.select_rows(&(0..dim).collect::<Vec<_>>())
        } else {
            kernel_basis(&res.expanded_boundary(n).to_dense())
        };
        let mut cands: Vec<Vec<Int>> = kernel
            .columns()
            .into_iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        cands.sort_by_key(|v| {
            (
                v.iter().filter(|x| !x.is_zero()).count(),
                v.iter().map(Int::abs).max(),
            )
        });
        let mut chosen: Vec<Vec<Int>> = Vec::new();
        if minimize {
            let mut lat = IncrementalLattice::new(dim);
            for v in cands {
                if lat.contains(&v) {
                    continue;
                }
                for x in g.elements() {
                    lat.insert(&res.act(x, &v));
                }
                chosen.push(v);
            }
        } else {
            chosen = cands;
        }
        budget.check_rank(&format!("resolution P_{}", n + 1), chosen.len() * o)?;
        let cols: Vec<RingColumn> = chosen
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k / o, k % o, x.clone()))
                    .collect()
            })
            .collect();
        res.ranks.push(cols.len());
        res.boundaries.push(cols);
    }
    res.verify_exact()?;
    Ok(res)
}

/// `Z[G] ⊗_{Z[H]} P` for a resolution `P` over `H` (as returned by
/// [`Subgroup::as_group`]), resolving `module` via `ε(e_j) = base · ε_P(e_j)`.
pub fn induce_resolution(
    res: &FreeResolution,
    h: &Subgroup,
    module: &GModule,
    base: &IntMatrix,
) -> Result<FreeResolution> {
    let (hg, embed) = h.as_group();
    if res.group() != &hg {
        return Err(Error::GroupMismatch(
            "resolution is not over the given subgroup".into(),
        ));
    }
    if module.group() != h.group() {
        return Err(Error::GroupMismatch(
            "module is not over the ambient group".into(),
        ));
    }
    if base.rows() != module.rank() || base.cols() != res.module().rank() {
        return Err(Error::Dimension("base map has the wrong shape".into()));
    }
    let bs = res
        .boundaries
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|(i, x, c)| (*i, embed[*x], c.clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let aug = base.mul(&res.augmentation);
    FreeResolution::new_unchecked(module, bs, aug, &format!("ind {}", res.name))
}
