use serde::{Deserialize, Serialize};

use super::category::{CoefficientSystem, OrbitCategory, Variance};
use crate::error::{Error, Result};
use crate::exactla::{ChainComplex, FgAbGroup, Int, IntMatrix, SparseMatrix};
use crate::groups::{CosetSpace, FiniteGroup, Subgroup};
use crate::modres::{
    takasu_resolution, Budget, Face, GModule, Normalization, OrbitCell, PermComplex,
};

pub const GCW_FORMAT_VERSION: u32 = 1;

/// A finite G-CW complex given by orbit representatives of cells.
#[derive(Clone, Debug)]
pub struct GCWData {
    complex: PermComplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    /// Generators of the stabilizer.
    pub stabilizer: Vec<usize>,
    pub boundary: Vec<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcwJson {
    pub version: u32,
    pub dimensions: Vec<Vec<CellJson>>,
}

impl GCWData {
    /// Validates morphisms and the formal vanishing of `∂²`.
    pub fn new(group: &FiniteGroup, cells: Vec<Vec<OrbitCell>>) -> Result<Self> {
        Ok(GCWData {
            complex: PermComplex::new(group, cells)?,
        })
    }

    pub fn from_complex(complex: PermComplex) -> Self {
        GCWData { complex }
    }

    pub fn complex(&self) -> &PermComplex {
        &self.complex
    }

    pub fn group(&self) -> &FiniteGroup {
        self.complex.group()
    }

    pub fn to_json(&self) -> GcwJson {
        GcwJson {
            version: GCW_FORMAT_VERSION,
            dimensions: self
                .complex
                .all_cells()
                .iter()
                .map(|layer| {
                    layer
                        .iter()
                        .map(|c| CellJson {
                            stabilizer: c.stabilizer.generators(),
                            boundary: c.boundary.clone(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(group: &FiniteGroup, doc: &GcwJson) -> Result<Self> {
        if doc.version != GCW_FORMAT_VERSION {
            return Err(Error::Invalid(format!(
                "unsupported G-CW format version {}",
                doc.version
            )));
        }
        let cells = doc
            .dimensions
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|c| {
                        Ok(OrbitCell {
                            stabilizer: Subgroup::generated(group, &c.stabilizer)?,
                            boundary: c.boundary.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GCWData::new(group, cells)
    }
}

/// `⊕_σ M(G/K_σ)` with boundaries given by applying `M` to each face morphism.
pub fn bredon_complex(x: &GCWData, m: &CoefficientSystem) -> Result<ChainComplex> {
    if m.variance() != Variance::Covariant {
        return Err(Error::Unsupported(
            "Bredon homology needs a covariant coefficient system".into(),
        ));
    }
    let cat = m.category();
    if cat.group() != x.group() {
        return Err(Error::GroupMismatch(
            "complex and coefficients over different groups".into(),
        ));
    }
    let c = x.complex();
    let mut objs: Vec<Vec<usize>> = Vec::with_capacity(c.len());
    for d in 0..c.len() {
        let layer = c
            .cells(d)
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                cat.object_index(&cell.stabilizer).ok_or_else(|| {
                    Error::Invalid(format!(
                        "cell {i} in dimension {d} has stabilizer {:?} outside the family",
                        cell.stabilizer
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        objs.push(layer);
    }
    let offsets: Vec<Vec<usize>> = objs
        .iter()
        .map(|layer| {
            let mut off = vec![0];
            for &o in layer {
                off.push(off.last().unwrap() + m.value(o).ngens());
            }
            off
        })
        .collect();
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let mut bs = Vec::new();
    for d in 1..c.len() {
        let mut cols = Vec::with_capacity(dims[d]);
        for (i, cell) in c.cells(d).iter().enumerate() {
            let s = objs[d][i];
            let mut block = vec![Vec::new(); m.value(s).ngens()];
            for f in &cell.boundary {
                let t = objs[d - 1][f.cell];
                let mo = cat.morphism(s, t, f.a).ok_or_else(|| {
                    Error::Invalid(format!(
                        "face of cell {i} in dimension {d} is not a morphism of the category"
                    ))
                })?;
                let mat = m.map(mo);
                for q in 0..mat.cols() {
                    for r in 0..mat.rows() {
                        if !mat[(r, q)].is_zero() {
                            block[q].push((offsets[d - 1][f.cell] + r, &mat[(r, q)] * &f.coeff));
                        }
                    }
                }
            }
            cols.extend(block);
        }
        bs.push(SparseMatrix::from_column_entries(dims[d - 1], cols));
    }
    let rels = (0..c.len())
        .map(|d| {
            let mut cols = Vec::new();
            for (i, &o) in objs[d].iter().enumerate() {
                for (k, t) in m.value(o).torsion.iter().enumerate() {
                    let mut v = vec![Int::zero(); dims[d]];
                    v[offsets[d][i] + k] = t.clone();
                    cols.push(v);
                }
            }
            (!cols.is_empty()).then(|| IntMatrix::from_columns(dims[d], &cols))
        })
        .collect();
    ChainComplex::with_relations(dims, bs, rels)
}

/// Bredon homology in all stored degrees but the top one.
pub fn bredon_homology(x: &GCWData, m: &CoefficientSystem) -> Result<Vec<FgAbGroup>> {
    let c = bredon_complex(x, m)?;
    let mut h = c.homology_groups()?;
    h.pop();
    Ok(h)
}

/// Cellular homology of the orbit space, all stored degrees but the top one.
pub fn quotient_homology(x: &GCWData) -> Result<Vec<FgAbGroup>> {
    let mut h = x.complex().quotient_complex()?.homology_groups()?;
    h.pop();
    Ok(h)
}

/// `(row, ±1)` per column when `a` is a signed permutation matrix.
fn signed_permutation(a: &IntMatrix) -> Option<Vec<(usize, bool)>> {
    (0..a.cols())
        .map(|j| {
            let nz: Vec<usize> = (0..a.rows()).filter(|&i| !a[(i, j)].is_zero()).collect();
            match nz.as_slice() {
                [i] if a[(*i, j)].is_unit() => Some((*i, a[(*i, j)].is_negative())),
                _ => None,
            }
        })
        .collect()
}

/// Union-find with a sign on each edge: `value(a) = ±value(parent(a))`.
struct SignedClasses {
    parent: Vec<usize>,
    flip: Vec<bool>,
}

impl SignedClasses {
    fn new(n: usize) -> Self {
        SignedClasses {
            parent: (0..n).collect(),
            flip: vec![false; n],
        }
    }

    fn find(&mut self, a: usize) -> (usize, bool) {
        let p = self.parent[a];
        if p == a {
            return (a, false);
        }
        let (root, f) = self.find(p);
        self.parent[a] = root;
        self.flip[a] ^= f;
        (root, self.flip[a])
    }

    /// Imposes `value(a) = ±value(b)`; false when this forces `2·value = 0`.
    fn union(&mut self, a: usize, b: usize, negative: bool) -> bool {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            return fa ^ fb == negative;
        }
        self.parent[ra] = rb;
        self.flip[ra] = fa ^ fb ^ negative;
        true
    }
}

/// Orbit quotient of `S_*(X) ⊗ M` when every generator acts by a signed
/// permutation without sign clashes; the quotient is then free on orbits.
fn orbit_quotient(x: &GCWData, m: &GModule, gens: &[usize]) -> Option<ChainComplex> {
    let c = x.complex();
    let r = m.rank();
    let perms: Vec<Vec<(usize, bool)>> = gens
        .iter()
        .map(|&s| signed_permutation(m.action(s)))
        .collect::<Option<_>>()?;
    let mrel = m.relation_cols();
    // q[d][a] = (orbit, negative)
    let mut q: Vec<Vec<(usize, bool)>> = Vec::with_capacity(c.len());
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(c.len());
    for d in 0..c.len() {
        let n = c.expanded_dim(d) * r;
        let mut uf = SignedClasses::new(n);
        for (si, &s) in gens.iter().enumerate() {
            let p = c.expanded_action(d, s);
            for k in 0..c.expanded_dim(d) {
                for (i, &(row, neg)) in perms[si].iter().enumerate() {
                    if !uf.union(k * r + i, p[k] * r + row, neg) {
                        return None;
                    }
                }
            }
        }
        let mut index = vec![usize::MAX; n];
        let mut rep = Vec::new();
        let mut qd = Vec::with_capacity(n);
        for a in 0..n {
            let (root, f) = uf.find(a);
            if index[root] == usize::MAX {
                index[root] = rep.len();
                rep.push(root);
            }
            qd.push((index[root], f));
        }
        q.push(qd);
        reps.push(rep);
    }
    let project =
        |d: usize, entries: &mut dyn Iterator<Item = (usize, Int)>| -> Vec<(usize, Int)> {
            let mut acc: std::collections::BTreeMap<usize, Int> = std::collections::BTreeMap::new();
            for (a, v) in entries {
                let (o, neg) = q[d][a];
                let e = acc.entry(o).or_insert_with(Int::zero);
                if neg {
                    *e -= &v;
                } else {
                    *e += &v;
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        };
    let dims: Vec<usize> = reps.iter().map(Vec::len).collect();
    let mut bs = Vec::new();
    for d in 1..c.len() {
        let b = c.expanded_boundary(d);
        let cols = reps[d]
            .iter()
            .map(|&a| {
                let (k, i) = (a / r, a % r);
                project(
                    d - 1,
                    &mut b.column(k).iter().map(|(row, v)| (row * r + i, v.clone())),
                )
            })
            .collect();
        bs.push(SparseMatrix::from_column_entries(dims[d - 1], cols));
    }
    let mut rels = Vec::with_capacity(c.len());
    for d in 0..c.len() {
        let mut cols: Vec<Vec<Int>> = Vec::new();
        for k in 0..c.expanded_dim(d) {
            for j in 0..mrel.cols() {
                let sparse = project(
                    d,
                    &mut (0..r).map(|row| (k * r + row, mrel[(row, j)].clone())),
                );
                let mut v = vec![Int::zero(); dims[d]];
                for (o, x) in sparse {
                    v[o] = x;
                }
                cols.push(v);
            }
        }
        rels.push((!cols.is_empty()).then(|| IntMatrix::from_columns(dims[d], &cols)));
    }
    ChainComplex::with_relations(dims, bs, rels).ok()
}

/// Homology of `S_*(X) ⊗_G M`, computed as the coinvariants of `S_*(X) ⊗ M`
/// under the diagonal action.
pub fn diagonal_coinvariant_homology(x: &GCWData, m: &GModule) -> Result<Vec<FgAbGroup>> {
    let g = x.group();
    if m.group() != g {
        return Err(Error::GroupMismatch(
            "complex and module over different groups".into(),
        ));
    }
    let gens = g.whole().generators();
    let q = match orbit_quotient(x, m, &gens) {
        Some(q) => q,
        None => presented_coinvariants(x, m, &gens)?,
    };
    let mut h = q.homology_groups()?;
    h.pop();
    Ok(h)
}

/// `S_*(X) ⊗ M` presented with the relations `g·v − v` for generators `g`.
fn presented_coinvariants(x: &GCWData, m: &GModule, gens: &[usize]) -> Result<ChainComplex> {
    let c = x.complex();
    let r = m.rank();
    let mrel = m.relation_cols();
    let dims: Vec<usize> = (0..c.len()).map(|d| c.expanded_dim(d) * r).collect();
    let mut bs = Vec::new();
    for d in 1..c.len() {
        let b = c.expanded_boundary(d);
        let mut cols = Vec::with_capacity(dims[d]);
        for k in 0..b.cols() {
            for i in 0..r {
                cols.push(
                    b.column(k)
                        .iter()
                        .map(|(row, v)| (row * r + i, v.clone()))
                        .collect(),
                );
            }
        }
        bs.push(SparseMatrix::from_column_entries(dims[d - 1], cols));
    }
    let mut rels = Vec::with_capacity(c.len());
    for d in 0..c.len() {
        let n = c.expanded_dim(d);
        let mut cols: Vec<Vec<Int>> = Vec::new();
        for &s in gens {
            let p = c.expanded_action(d, s);
            let a = m.action(s);
            for k in 0..n {
                for i in 0..r {
                    let mut v = vec![Int::zero(); dims[d]];
                    for row in 0..r {
                        v[p[k] * r + row] += &a[(row, i)];
                    }
                    v[k * r + i] -= &Int::one();
                    cols.push(v);
                }
            }
        }
        for k in 0..n {
            for j in 0..mrel.cols() {
                let mut v = vec![Int::zero(); dims[d]];
                for row in 0..r {
                    v[k * r + row] = mrel[(row, j)].clone();
                }
                cols.push(v);
            }
        }
        rels.push((!cols.is_empty()).then(|| IntMatrix::from_columns(dims[d], &cols)));
    }
    ChainComplex::with_relations(dims, bs, rels)
}

/// The cofiber of `ind_H^G E(H) → E(G)` at chain level: one `G/H` orbit of
/// 0-cells, and in dimension `m ≥ 1` the free cells of the relative
/// resolution in degree `m − 1`. Dimensions `0..len`.
pub fn takasu_pair_complex(
    h: &Subgroup,
    len: usize,
    normalization: Normalization,
    budget: &Budget,
) -> Result<GCWData> {
    let g = h.group();
    let len = len.max(1);
    let mut cells = vec![vec![OrbitCell {
        stabilizer: h.clone(),
        boundary: vec![],
    }]];
    if len > 1 {
        let p = takasu_resolution(h, len - 1, normalization, budget)?;
        let cs = CosetSpace::new(h);
        let triv = g.trivial_subgroup();
        let aug = p.augmentation();
        let layer1 = (0..p.rank(0))
            .map(|j| {
                let c = (0..aug.rows())
                    .find(|&r| !aug[(r, j)].is_zero())
                    .expect("generator maps to a basis vector")
                    + 1;
                OrbitCell {
                    stabilizer: triv.clone(),
                    boundary: vec![
                        Face {
                            cell: 0,
                            a: g.inv(cs.representative(c)),
                            coeff: Int::one(),
                        },
                        Face {
                            cell: 0,
                            a: 0,
                            coeff: Int::from(-1),
                        },
                    ],
                }
            })
            .collect();
        cells.push(layer1);
        let pc = p.to_perm_complex();
        for n in 1..p.len() {
            cells.push(pc.cells(n).to_vec());
        }
    }
    GCWData::new(g, cells)
}

/// The circle with `C_2` acting by reflection: two fixed 0-cells joined by
/// a free orbit of 1-cells.
pub fn reflection_circle() -> GCWData {
    let c2 = FiniteGroup::cyclic(2).expect("C2");
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
        vec![],
    ];
    GCWData::new(&c2, cells).expect("reflection circle")
}

impl OrbitCategory {
    /// The category generated by the stabilizers of a complex.
    pub fn for_complex(x: &GCWData) -> Result<Self> {
        let stabs: Vec<Subgroup> = x
            .complex()
            .all_cells()
            .iter()
            .flatten()
            .map(|c| c.stabilizer.clone())
            .collect();
        Ok(OrbitCategory::new(
            &crate::groups::SubgroupFamily::generated_by(x.group(), &stabs)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::SubgroupFamily;

    fn strs(h: &[FgAbGroup]) -> Vec<String> {
        h.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn orbit_quotient_matches_presented_coinvariants() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let h = Subgroup::generated(&c4, &[2]).unwrap();
        let x = takasu_pair_complex(&h, 5, Normalization::Normalized, &Budget::default()).unwrap();
        let gens = c4.whole().generators();
        let sign = GModule::from_generators(
            &c4,
            &[1],
            &[IntMatrix::from_rows(&[vec![-1i64]])],
            None,
            "sign",
        )
        .unwrap();
        for m in [
            GModule::trivial(&c4),
            GModule::regular(&c4),
            GModule::permutation(&h),
            sign,
        ] {
            let fast = orbit_quotient(&x, &m, &gens)
                .expect("signed permutation action")
                .homology_groups()
                .unwrap();
            let slow = presented_coinvariants(&x, &m, &gens)
                .unwrap()
                .homology_groups()
                .unwrap();
            assert_eq!(fast, slow, "{}", m.name());
        }
        let m = GModule::trivial_mod(&c4, 4).unwrap();
        let fast = orbit_quotient(&x, &m, &gens)
            .unwrap()
            .homology_groups()
            .unwrap();
        let slow = presented_coinvariants(&x, &m, &gens)
            .unwrap()
            .homology_groups()
            .unwrap();
        assert_eq!(fast, slow);
        // t² = −1 clashes on cells fixed by t², forcing the presented route
        let rot = GModule::from_generators(
            &c4,
            &[1],
            &[IntMatrix::from_rows(&[vec![0i64, -1], vec![1, 0]])],
            None,
            "rot",
        )
        .unwrap();
        assert!(orbit_quotient(&x, &rot, &gens).is_none());
        let mut slow = presented_coinvariants(&x, &rot, &gens)
            .unwrap()
            .homology_groups()
            .unwrap();
        slow.pop();
        assert_eq!(diagonal_coinvariant_homology(&x, &rot).unwrap(), slow);
    }

    #[test]
    fn single_free_point() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let x = GCWData::new(
            &c2,
            vec![
                vec![OrbitCell {
                    stabilizer: c2.trivial_subgroup(),
                    boundary: vec![],
                }],
                vec![],
            ],
        )
        .unwrap();
        let cat = OrbitCategory::new(&SubgroupFamily::all(&c2));
        assert_eq!(
            strs(&bredon_homology(&x, &CoefficientSystem::constant(&cat)).unwrap()),
            ["Z"]
        );
    }

    #[test]
    fn reflection_circle_examples() {
        let x = reflection_circle();
        let c2 = x.group().clone();
        let cat = OrbitCategory::new(&SubgroupFamily::all(&c2));
        let h = bredon_homology(&x, &CoefficientSystem::constant(&cat)).unwrap();
        assert_eq!(strs(&h), ["Z", "0"]);
        assert_eq!(h, quotient_homology(&x).unwrap());
        let m = GModule::regular(&c2);
        let sys = CoefficientSystem::coinvariants(&m, &cat).unwrap();
        assert_eq!(
            bredon_homology(&x, &sys).unwrap(),
            diagonal_coinvariant_homology(&x, &m).unwrap()
        );
    }

    #[test]
    fn json_round_trip() {
        let x = reflection_circle();
        let j = x.to_json();
        let y = GCWData::from_json(x.group(), &j).unwrap();
        assert_eq!(y.to_json(), j);
    }

    #[test]
    fn stabilizer_outside_family_is_rejected() {
        let x = reflection_circle();
        let cat = OrbitCategory::new(&SubgroupFamily::trivial(x.group()));
        let e = bredon_complex(&x, &CoefficientSystem::constant(&cat)).unwrap_err();
        assert!(e.to_string().contains("outside the family"), "{e}");
    }

    #[test]
    fn pair_complex_c4_c2() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let h = Subgroup::generated(&c4, &[2]).unwrap();
        let x = takasu_pair_complex(&h, 5, Normalization::Normalized, &Budget::default()).unwrap();
        let cat = OrbitCategory::for_complex(&x).unwrap();
        let hb = bredon_homology(&x, &CoefficientSystem::constant(&cat)).unwrap();
        assert_eq!(strs(&hb)[2..], ["0", "Z/2"]);
    }
}
