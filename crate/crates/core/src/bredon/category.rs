use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{FgAbGroup, IntMatrix, Lattice};
use crate::groups::{FiniteGroup, Subgroup, SubgroupFamily};
use crate::modres::GModule;

/// `R_a : G/K_src → G/K_tgt, gK_src ↦ g a⁻¹ K_tgt`, with `a` the least
/// element of `K_tgt a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub a: usize,
}

/// `Or(G, F)` with one object per subgroup in the family.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    family: SubgroupFamily,
    /// `homs[s][t]`: sorted canonical elements `a` of morphisms `s → t`.
    homs: Vec<Vec<Vec<usize>>>,
}

impl OrbitCategory {
    pub fn new(family: &SubgroupFamily) -> Self {
        let g = family.group();
        let objs = family.members();
        let homs = objs
            .iter()
            .map(|s| {
                objs.iter()
                    .map(|t| {
                        let mut v: Vec<usize> = g
                            .elements()
                            .filter(|&a| {
                                s.elements()
                                    .iter()
                                    .all(|&k| t.contains(g.conjugate(k, g.inv(a))))
                            })
                            .map(|a| canonical(t, a))
                            .collect();
                        v.sort_unstable();
                        v.dedup();
                        v
                    })
                    .collect()
            })
            .collect();
        OrbitCategory {
            family: family.clone(),
            homs,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.family.group()
    }

    pub fn family(&self) -> &SubgroupFamily {
        &self.family
    }

    pub fn objects(&self) -> &[Subgroup] {
        self.family.members()
    }

    pub fn object_index(&self, k: &Subgroup) -> Option<usize> {
        self.objects().binary_search(k).ok()
    }

    pub fn hom(&self, s: usize, t: usize) -> &[usize] {
        &self.homs[s][t]
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Morphism> + '_ {
        (0..self.homs.len()).flat_map(move |s| {
            (0..self.homs.len()).flat_map(move |t| {
                self.homs[s][t].iter().map(move |&a| Morphism {
                    source: s,
                    target: t,
                    a,
                })
            })
        })
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.iter().flatten().map(Vec::len).sum()
    }

    /// The morphism `R_a` from `s` to `t`, if it exists.
    pub fn morphism(&self, s: usize, t: usize, a: usize) -> Option<Morphism> {
        let a = canonical(&self.objects()[t], a);
        self.homs[s][t].binary_search(&a).ok().map(|_| Morphism {
            source: s,
            target: t,
            a,
        })
    }

    pub fn identity(&self, s: usize) -> Morphism {
        Morphism {
            source: s,
            target: s,
            a: canonical(&self.objects()[s], 0),
        }
    }

    /// `second ∘ first`, i.e. `R_b ∘ R_a = R_{ba}`.
    pub fn compose(&self, first: Morphism, second: Morphism) -> Result<Morphism> {
        if first.target != second.source {
            return Err(Error::Invalid("morphisms are not composable".into()));
        }
        let ba = self.group().mul(second.a, first.a);
        self.morphism(first.source, second.target, ba)
            .ok_or_else(|| Error::Verification("composite is not a morphism".into()))
    }
}

fn canonical(t: &Subgroup, a: usize) -> usize {
    let g = t.group();
    t.elements()
        .iter()
        .map(|&k| g.mul(k, a))
        .min()
        .expect("nonempty")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// A functor from the orbit category to abelian groups. Values are given in
/// normalized coordinates (torsion generators first); maps are integer
/// matrices in those coordinates.
#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    category: OrbitCategory,
    variance: Variance,
    values: Vec<FgAbGroup>,
    maps: BTreeMap<Morphism, IntMatrix>,
}

impl CoefficientSystem {
    /// Validates shapes, well-definedness, identities and functoriality.
    pub fn new(
        category: &OrbitCategory,
        variance: Variance,
        values: Vec<FgAbGroup>,
        maps: BTreeMap<Morphism, IntMatrix>,
    ) -> Result<Self> {
        let c = CoefficientSystem {
            category: category.clone(),
            variance,
            values,
            maps,
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let n = self.category.objects().len();
        if self.values.len() != n {
            return Err(Error::Dimension(format!(
                "{} values for {n} objects",
                self.values.len()
            )));
        }
        let lats: Vec<Option<Lattice>> = self
            .values
            .iter()
            .map(|v| (!v.torsion.is_empty()).then(|| Lattice::from_columns(&v.relation_matrix())))
            .collect();
        let congruent = |a: &IntMatrix, b: &IntMatrix, t: usize| -> bool {
            let d = a.sub(b);
            (0..d.cols()).all(|j| {
                let v = d.column(j);
                v.iter().all(|x| x.is_zero()) || lats[t].as_ref().is_some_and(|l| l.contains(&v))
            })
        };
        for m in self.category.morphisms() {
            let (s, t) = self.ends(m);
            let f = self
                .maps
                .get(&m)
                .ok_or_else(|| Error::Invalid(format!("no matrix for morphism {m:?}")))?;
            if f.rows() != self.values[t].ngens() || f.cols() != self.values[s].ngens() {
                return Err(Error::Dimension(format!(
                    "matrix for {m:?} has the wrong shape"
                )));
            }
            let rel = self.values[s].relation_matrix();
            if !congruent(&f.mul(&rel), &IntMatrix::zeros(f.rows(), rel.cols()), t) {
                return Err(Error::Invalid(format!(
                    "matrix for {m:?} does not respect relations"
                )));
            }
        }
        for s in 0..n {
            let id = self.category.identity(s);
            let k = self.values[s].ngens();
            if !congruent(&self.maps[&id], &IntMatrix::identity(k), s) {
                return Err(Error::Verification(format!(
                    "identity of object {s} does not act as the identity"
                )));
            }
        }
        for f in self.category.morphisms() {
            for t in 0..n {
                for &b in self.category.hom(f.target, t) {
                    let g = Morphism {
                        source: f.target,
                        target: t,
                        a: b,
                    };
                    let gf = self.category.compose(f, g)?;
                    let (lhs, tt) = match self.variance {
                        Variance::Covariant => (self.maps[&g].mul(&self.maps[&f]), t),
                        Variance::Contravariant => (self.maps[&f].mul(&self.maps[&g]), f.source),
                    };
                    if !congruent(&lhs, &self.maps[&gf], tt) {
                        return Err(Error::Verification(format!(
                            "functoriality fails for {g:?} after {f:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Source and target objects of the value map for `m`.
    fn ends(&self, m: Morphism) -> (usize, usize) {
        match self.variance {
            Variance::Covariant => (m.source, m.target),
            Variance::Contravariant => (m.target, m.source),
        }
    }

    /// The constant covariant system `Z` with identity maps.
    pub fn constant(category: &OrbitCategory) -> Self {
        let n = category.objects().len();
        let maps = category
            .morphisms()
            .map(|m| (m, IntMatrix::identity(1)))
            .collect();
        CoefficientSystem {
            category: category.clone(),
            variance: Variance::Covariant,
            values: vec![FgAbGroup::free(1); n],
            maps,
        }
    }

    /// `G/K ↦ M_K`, with `R_a` acting by `[m] ↦ [a·m]`.
    pub fn coinvariants(m: &GModule, category: &OrbitCategory) -> Result<Self> {
        if m.group() != category.group() {
            return Err(Error::GroupMismatch(
                "module and orbit category over different groups".into(),
            ));
        }
        let pres: Vec<_> = category
            .objects()
            .iter()
            .map(|k| m.coinvariant_presentation(k))
            .collect();
        let values = pres.iter().map(|p| p.group.clone()).collect();
        let maps = category
            .morphisms()
            .map(|mo| {
                let f = pres[mo.target]
                    .to_normal
                    .mul(m.action(mo.a))
                    .mul(&pres[mo.source].from_normal);
                (mo, reduce(&f, &pres[mo.target].group))
            })
            .collect();
        CoefficientSystem::new(category, Variance::Covariant, values, maps)
    }

    pub fn category(&self) -> &OrbitCategory {
        &self.category
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn value(&self, obj: usize) -> &FgAbGroup {
        &self.values[obj]
    }

    pub fn map(&self, m: Morphism) -> &IntMatrix {
        &self.maps[&m]
    }
}

fn reduce(f: &IntMatrix, target: &FgAbGroup) -> IntMatrix {
    let mut out = f.clone();
    for j in 0..out.cols() {
        let mut col = out.column(j);
        target.normalize(&mut col);
        for (i, x) in col.into_iter().enumerate() {
            out[(i, j)] = x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::family_generated;

    #[test]
    fn c2_all_hom_counts() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let cat = OrbitCategory::new(&SubgroupFamily::all(&c2));
        assert_eq!(cat.objects().len(), 2);
        assert_eq!(cat.hom(0, 0).len(), 2);
        assert_eq!(cat.hom(0, 1).len(), 1);
        assert_eq!(cat.hom(1, 0).len(), 0);
        assert_eq!(cat.hom(1, 1).len(), 1);
    }

    #[test]
    fn trivial_family_is_the_group() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let cat = OrbitCategory::new(&SubgroupFamily::trivial(&s3));
        assert_eq!(cat.morphism_count(), 6);
    }

    #[test]
    fn composition_closes_in_s3() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let h = Subgroup::generated(&s3, &[2]).unwrap();
        let cat = OrbitCategory::new(&family_generated(&h));
        let ms: Vec<Morphism> = cat.morphisms().collect();
        for &f in &ms {
            for &g in ms.iter().filter(|g| g.source == f.target) {
                let gf = cat.compose(f, g).unwrap();
                for &k in ms.iter().filter(|k| k.source == g.target) {
                    assert_eq!(
                        cat.compose(gf, k).unwrap(),
                        cat.compose(f, cat.compose(g, k).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn coinvariant_systems_validate() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let h = Subgroup::generated(&c4, &[2]).unwrap();
        let cat = OrbitCategory::new(&SubgroupFamily::all(&c4));
        CoefficientSystem::coinvariants(&GModule::permutation(&h), &cat).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let cat = OrbitCategory::new(&SubgroupFamily::all(&c2));
        let sys = CoefficientSystem::coinvariants(&GModule::regular(&c2), &cat).unwrap();
        assert_eq!(sys.value(1).to_string(), "Z");
        let z = CoefficientSystem::coinvariants(&GModule::trivial(&c2), &cat).unwrap();
        for m in cat.morphisms() {
            assert_eq!(z.map(m), CoefficientSystem::constant(&cat).map(m));
        }
    }
}
