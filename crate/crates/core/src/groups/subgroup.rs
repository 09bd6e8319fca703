use std::fmt;

use super::FiniteGroup;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    group: FiniteGroup,
    elements: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elements
            .len()
            .cmp(&other.elements.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl Subgroup {
    pub(crate) fn from_sorted(group: FiniteGroup, elements: Vec<usize>) -> Self {
        Subgroup { group, elements }
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Result<Self> {
        if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
            return Err(Error::Invalid(format!(
                "generator {bad} is not an element of {}",
                g.name()
            )));
        }
        Ok(Subgroup {
            group: g.clone(),
            elements: g.closure(gens),
        })
    }

    /// Validates that the given set is a subgroup.
    pub fn from_elements(g: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut e = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        let s = Subgroup::generated(g, &e)?;
        if s.elements != e {
            return Err(Error::Invalid(format!(
                "{elements:?} is not closed under multiplication"
            )));
        }
        Ok(s)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.group.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub(crate) fn check_group(&self, g: &FiniteGroup) -> Result<()> {
        if &self.group != g {
            return Err(Error::GroupMismatch(format!(
                "subgroup of {} used with {}",
                self.group.name(),
                g.name()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_same(&self, other: &Subgroup) -> Result<()> {
        other.check_group(&self.group)
    }

    /// `g⁻¹ H g`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut e: Vec<usize> = self
            .elements
            .iter()
            .map(|&x| self.group.conjugate(x, g))
            .collect();
        e.sort_unstable();
        Subgroup {
            group: self.group.clone(),
            elements: e,
        }
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same(other)?;
        let e = self
            .elements
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Ok(Subgroup {
            group: self.group.clone(),
            elements: e,
        })
    }

    pub fn is_normal(&self) -> bool {
        self.group.elements().all(|g| self.conjugate(g) == *self)
    }

    /// Some `g` with `g⁻¹ self g ⊆ other`.
    pub fn subconjugate_witness(&self, other: &Subgroup) -> Option<usize> {
        if self.order() > other.order() || !other.order().is_multiple_of(self.order()) {
            return None;
        }
        self.group.elements().find(|&g| {
            self.elements
                .iter()
                .all(|&x| other.contains(self.group.conjugate(x, g)))
        })
    }

    pub fn is_subconjugate_to(&self, other: &Subgroup) -> bool {
        self.subconjugate_witness(other).is_some()
    }

    pub fn is_conjugate_to(&self, other: &Subgroup) -> bool {
        self.order() == other.order() && self.is_subconjugate_to(other)
    }

    /// A small generating set, greedily chosen.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &x in self.elements.iter().rev() {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.group.closure(&gens);
            }
        }
        gens.sort_unstable();
        gens
    }

    /// The same subgroup viewed as a group in its own right, with the
    /// embedding (new index ↦ element of the parent). Element order follows
    /// the sorted element list, so the identity stays first.
    pub fn as_group(&self) -> (FiniteGroup, Vec<usize>) {
        let pos = |x: usize| self.elements.binary_search(&x).expect("closed");
        let n = self.order();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| pos(self.group.mul(self.elements[i], self.elements[j])))
                    .collect()
            })
            .collect();
        let g = FiniteGroup::from_flat(
            table.into_iter().flatten().collect(),
            format!("sub({})", self.group.name()),
            Some(
                self.elements
                    .iter()
                    .map(|&x| self.group.label(x).to_string())
                    .collect(),
            ),
        )
        .expect("subgroup table is a group");
        (g, self.elements.clone())
    }
}

/// Left cosets `gH`; coset 0 is `H` and the others are ordered by their
/// least element, which is also the chosen representative.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    subgroup: Subgroup,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
    /// `action[g * len + c]` is the coset `g · c`.
    action: Vec<usize>,
}

impl CosetSpace {
    pub fn new(h: &Subgroup) -> Self {
        let g = h.group();
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut cosets = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = h.elements().iter().map(|&y| g.mul(x, y)).collect();
            c.sort_unstable();
            for &y in &c {
                coset_of[y] = cosets.len();
            }
            cosets.push(c);
        }
        let k = cosets.len();
        let mut action = vec![0; n * k];
        for x in 0..n {
            for (c, coset) in cosets.iter().enumerate() {
                action[x * k + c] = coset_of[g.mul(x, coset[0])];
            }
        }
        CosetSpace {
            subgroup: h.clone(),
            cosets,
            coset_of,
            action,
        }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn group(&self) -> &FiniteGroup {
        self.subgroup.group()
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn representative(&self, c: usize) -> usize {
        self.cosets[c][0]
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// Left translation `g · c`.
    #[inline]
    pub fn act(&self, g: usize, c: usize) -> usize {
        self.action[g * self.cosets.len() + c]
    }

    /// Stabilizer `g H g⁻¹` of coset `gH`.
    pub fn stabilizer(&self, c: usize) -> Subgroup {
        self.subgroup
            .conjugate(self.group().inv(self.representative(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_examples() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(Subgroup::generated(&c4, &[2]).unwrap().elements(), &[0, 2]);
        assert!(Subgroup::generated(&c4, &[]).unwrap().is_trivial());
        assert!(Subgroup::generated(&c4, &[7]).is_err());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(Subgroup::generated(&s3, &[2]).unwrap().order(), 2);
    }

    #[test]
    fn conjugation_in_s3() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let idx = |p: &str| (0..6).find(|&i| s3.label(i) == p).unwrap();
        // (12) fixes the third point; (123) sends 1→2→3→1
        let t12 = idx("[1, 0, 2]");
        let c123 = idx("[1, 2, 0]");
        let t23 = idx("[0, 2, 1]");
        let t13 = idx("[2, 1, 0]");
        let h = Subgroup::generated(&s3, &[t12]).unwrap();
        assert_eq!(h.conjugate(c123), Subgroup::generated(&s3, &[t23]).unwrap());
        let k = Subgroup::generated(&s3, &[t13]).unwrap();
        assert!(h.intersect(&k).unwrap().is_trivial());
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let other = Subgroup::generated(&c4, &[2]).unwrap();
        assert!(h.intersect(&other).is_err());
    }

    #[test]
    fn cosets_partition() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let h = Subgroup::generated(&s3, &[2]).unwrap();
        let cs = CosetSpace::new(&h);
        assert_eq!(cs.len() * h.order(), 6);
        assert_eq!(cs.cosets()[0], h.elements());
        for g in 0..6 {
            for c in 0..3 {
                for k in 0..6 {
                    assert_eq!(cs.act(s3.mul(g, k), c), cs.act(g, cs.act(k, c)));
                }
            }
        }
        for c in 0..3 {
            let st = cs.stabilizer(c);
            assert!(st.elements().iter().all(|&x| cs.act(x, c) == c));
        }
    }
}
