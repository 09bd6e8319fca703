use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{CosetSpace, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A nonempty set of subgroups closed under conjugation and under taking
/// subgroups. Members are sorted by order, then element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupFamily {
    group: FiniteGroup,
    members: Vec<Subgroup>,
}

impl SubgroupFamily {
    /// Validates the closure properties.
    pub fn new(group: &FiniteGroup, members: Vec<Subgroup>) -> Result<Self> {
        let set: BTreeSet<Subgroup> = members.into_iter().collect();
        for m in &set {
            m.check_group(group)?;
        }
        if !set.iter().any(Subgroup::is_trivial) {
            return Err(Error::Invalid(
                "family does not contain the trivial subgroup".into(),
            ));
        }
        let fam = SubgroupFamily {
            group: group.clone(),
            members: set.into_iter().collect(),
        };
        fam.validate()?;
        Ok(fam)
    }

    fn validate(&self) -> Result<()> {
        for m in &self.members {
            for g in self.group.elements() {
                if !self.contains(&m.conjugate(g)) {
                    return Err(Error::Invalid(format!(
                        "family is not closed under conjugation at {m:?}"
                    )));
                }
            }
        }
        let all = self.group.all_subgroups();
        for m in &self.members {
            for s in all.iter().filter(|s| s.is_subset_of(m)) {
                if !self.contains(s) {
                    return Err(Error::Invalid(format!(
                        "family is not closed under subgroups at {m:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Smallest family containing the given subgroups.
    pub fn generated_by(group: &FiniteGroup, gens: &[Subgroup]) -> Result<Self> {
        for g in gens {
            g.check_group(group)?;
        }
        let members = group
            .all_subgroups()
            .into_iter()
            .filter(|k| k.is_trivial() || gens.iter().any(|h| k.is_subconjugate_to(h)))
            .collect();
        Ok(SubgroupFamily {
            group: group.clone(),
            members,
        })
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        SubgroupFamily {
            group: group.clone(),
            members: vec![group.trivial_subgroup()],
        }
    }

    pub fn all(group: &FiniteGroup) -> Self {
        SubgroupFamily {
            group: group.clone(),
            members: group.all_subgroups(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: &Subgroup) -> bool {
        self.members.binary_search(k).is_ok()
    }

    /// Only the trivial subgroup.
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// One representative (the least) per conjugacy class.
    pub fn conjugacy_representatives(&self) -> Vec<Subgroup> {
        let mut reps: Vec<Subgroup> = Vec::new();
        for m in &self.members {
            if !reps.iter().any(|r| r.is_conjugate_to(m)) {
                reps.push(m.clone());
            }
        }
        reps
    }
}

/// Subgroups subconjugate to `H`.
pub fn family_generated(h: &Subgroup) -> SubgroupFamily {
    SubgroupFamily::generated_by(h.group(), std::slice::from_ref(h)).expect("same group")
}

/// Subgroups fixing two distinct cosets of `H`, i.e. contained in some
/// `gHg⁻¹ ∩ g'Hg'⁻¹` with `gH ≠ g'H`; the trivial subgroup is always a member.
pub fn family_gh(h: &Subgroup) -> SubgroupFamily {
    let cs = CosetSpace::new(h);
    let stabs: Vec<Subgroup> = (0..cs.len()).map(|c| cs.stabilizer(c)).collect();
    let mut inters: BTreeSet<Subgroup> = BTreeSet::new();
    for i in 0..stabs.len() {
        for j in i + 1..stabs.len() {
            inters.insert(stabs[i].intersect(&stabs[j]).expect("same group"));
        }
    }
    let inters: Vec<Subgroup> = inters.into_iter().collect();
    let members = h
        .group()
        .all_subgroups()
        .into_iter()
        .filter(|k| k.is_trivial() || inters.iter().any(|s| k.is_subset_of(s)))
        .collect();
    SubgroupFamily {
        group: h.group().clone(),
        members,
    }
}

/// Cosets `gH` fixed by left translation by `K`, i.e. with `g⁻¹Kg ⊆ H`.
pub fn fixed_cosets(h: &Subgroup, k: &Subgroup) -> Result<Vec<usize>> {
    h.check_same(k)?;
    let cs = CosetSpace::new(h);
    Ok((0..cs.len())
        .filter(|&c| k.elements().iter().all(|&x| cs.act(x, c) == c))
        .collect())
}

/// `g⁻¹Hg ∩ H` trivial for every `g ∉ H`.
pub fn is_malnormal(h: &Subgroup) -> bool {
    h.group().elements().filter(|&g| !h.contains(g)).all(|g| {
        h.elements()
            .iter()
            .all(|&x| x == 0 || !h.contains(h.group().conjugate(x, g)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodTriple {
    pub good: bool,
    /// Some `g ∉ H` with `H ∩ gHg⁻¹` not subconjugate to `K`.
    pub witness: Option<usize>,
}

/// `K ≤ H ≤ G` is good when `H ∩ gHg⁻¹` is subconjugate to `K` for every `g ∉ H`.
pub fn is_good_triple(h: &Subgroup, k: &Subgroup) -> Result<GoodTriple> {
    h.check_same(k)?;
    if !k.is_subset_of(h) {
        return Err(Error::Invalid(format!("{k:?} is not contained in {h:?}")));
    }
    let g = h.group();
    for x in g.elements().filter(|&x| !h.contains(x)) {
        let s = h.intersect(&h.conjugate(g.inv(x)))?;
        if !s.is_subconjugate_to(k) {
            return Ok(GoodTriple {
                good: false,
                witness: Some(x),
            });
        }
    }
    Ok(GoodTriple {
        good: true,
        witness: None,
    })
}

/// `{g : H ∩ gHg⁻¹ not subconjugate to K}`, the normalizer-like set whose
/// equality with `H` (for `K < H`) characterizes good triples.
pub fn bracket_normalizer(h: &Subgroup, k: &Subgroup) -> Result<Vec<usize>> {
    h.check_same(k)?;
    let g = h.group();
    let mut out = Vec::new();
    for x in g.elements() {
        let s = h.intersect(&h.conjugate(g.inv(x)))?;
        if !s.is_subconjugate_to(k) {
            out.push(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_t12() -> Subgroup {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        Subgroup::generated(&s3, &[2]).unwrap()
    }

    fn c4_c2() -> Subgroup {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        Subgroup::generated(&c4, &[2]).unwrap()
    }

    #[test]
    fn malnormality_examples() {
        assert!(is_malnormal(&s3_t12()));
        assert!(!is_malnormal(&c4_c2()));
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert!(is_malnormal(&c4.whole()));
    }

    #[test]
    fn families() {
        let h = c4_c2();
        let f = family_generated(&h);
        assert_eq!(f.len(), 2);
        assert_eq!(family_generated(&h.group().trivial_subgroup()).len(), 1);
        let f = family_generated(&s3_t12());
        assert_eq!(f.len(), 4);
        assert!(SubgroupFamily::new(f.group(), f.members().to_vec()).is_ok());
        assert!(family_gh(&s3_t12()).is_trivial());
        assert_eq!(family_gh(&h).len(), 2);
    }

    #[test]
    fn fixed_coset_examples() {
        let h = c4_c2();
        assert_eq!(fixed_cosets(&h, &h).unwrap(), vec![0, 1]);
        let t = s3_t12();
        let g = t.group().clone();
        assert_eq!(fixed_cosets(&t, &g.trivial_subgroup()).unwrap().len(), 3);
        assert_eq!(fixed_cosets(&t, &t).unwrap(), vec![0]);
    }

    #[test]
    fn good_triples() {
        let t = s3_t12();
        assert!(
            is_good_triple(&t, &t.group().trivial_subgroup())
                .unwrap()
                .good
        );
        let h = c4_c2();
        assert!(is_good_triple(&h, &h).unwrap().good);
        let r = is_good_triple(&h, &h.group().trivial_subgroup()).unwrap();
        assert!(!r.good);
        assert!(r.witness.is_some());
        let c4 = h.group().clone();
        assert!(is_good_triple(&h, &c4.whole()).is_err());
    }
}
