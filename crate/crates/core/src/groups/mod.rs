//! Finite groups as multiplication tables, subgroups, cosets and families.

mod family;
mod subgroup;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use family::{
    bracket_normalizer, family_generated, family_gh, fixed_cosets, is_good_triple, is_malnormal,
    GoodTriple, SubgroupFamily,
};
pub use subgroup::{CosetSpace, Subgroup};

/// Largest group the permutation closure will build.
pub const MAX_ORDER: usize = 5040;

#[derive(Debug, PartialEq, Eq)]
struct GroupData {
    order: usize,
    mult: Vec<usize>,
    inverse: Vec<usize>,
    name: String,
    labels: Vec<String>,
}

/// A finite group given by its multiplication table. Element 0 is the
/// identity. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.order == other.0.order && self.0.mult == other.0.mult)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.0.name, self.0.order)
    }
}

/// Serializable constructor description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic { n: usize },
    Dihedral { n: usize },
    Symmetric { n: usize },
    DirectProduct { factors: Vec<GroupSpec> },
    Permutations { generators: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic { n } => FiniteGroup::cyclic(*n),
            GroupSpec::Dihedral { n } => FiniteGroup::dihedral(*n),
            GroupSpec::Symmetric { n } => FiniteGroup::symmetric(*n),
            GroupSpec::DirectProduct { factors } => {
                let mut it = factors.iter();
                let first = it.next().ok_or_else(|| {
                    Error::Invalid("direct_product needs at least one factor".into())
                })?;
                let mut g = first.build()?;
                for f in it {
                    g = FiniteGroup::direct_product(&g, &f.build()?)?;
                }
                Ok(g)
            }
            GroupSpec::Permutations { generators } => FiniteGroup::from_permutations(generators),
        }
    }
}

impl FiniteGroup {
    /// Validates group axioms on the table: identity at 0, Latin square rows
    /// and columns, and associativity on every triple.
    pub fn from_table(table: Vec<Vec<usize>>, name: &str) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Invalid("group table is empty".into()));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!(
                    "table row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            mult.extend_from_slice(row);
        }
        let g = Self::from_flat(mult, name.to_string(), None)?;
        g.verify_axioms()?;
        Ok(g)
    }

    fn from_flat(mult: Vec<usize>, name: String, labels: Option<Vec<String>>) -> Result<Self> {
        let n = (mult.len() as f64).sqrt() as usize;
        if n * n != mult.len() || n == 0 {
            return Err(Error::Invalid("table is not square".into()));
        }
        if let Some(&bad) = mult.iter().find(|&&x| x >= n) {
            return Err(Error::Invalid(format!(
                "table entry {bad} out of range for order {n}"
            )));
        }
        for g in 0..n {
            if mult[g] != g || mult[g * n] != g {
                return Err(Error::Invalid(format!(
                    "element 0 is not a two-sided identity for {g}"
                )));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            let row = &mult[g * n..(g + 1) * n];
            let Some(h) = row.iter().position(|&x| x == 0) else {
                return Err(Error::Invalid(format!("element {g} has no inverse")));
            };
            if mult[h * n + g] != 0 {
                return Err(Error::Invalid(format!(
                    "element {g} has no two-sided inverse"
                )));
            }
            inverse[g] = h;
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        Ok(FiniteGroup(Arc::new(GroupData {
            order: n,
            mult,
            inverse,
            name,
            labels,
        })))
    }

    /// Exhaustive check of the Latin-square property and associativity.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                seen_row[self.mul(a, b)] = true;
                seen_col[self.mul(b, a)] = true;
            }
            if seen_row.iter().chain(&seen_col).any(|s| !s) {
                return Err(Error::Invalid(format!(
                    "row or column {a} is not a permutation"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Invalid(format!(
                            "associativity fails on ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `C_n` with `t` = element 1 and `tⁱ` = element `i`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid(
                "cyclic group order must be at least 1".into(),
            ));
        }
        let mult = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let labels = (0..n)
            .map(|i| {
                if i == 0 {
                    "e".to_string()
                } else {
                    format!("t^{i}")
                }
            })
            .collect();
        Self::from_flat(mult, format!("C{n}"), Some(labels))
    }

    /// Dihedral group of order `2n`; `rⁱsʲ` has index `j·n + i`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid(
                "dihedral parameter must be at least 1".into(),
            ));
        }
        let m = 2 * n;
        let mut mult = vec![0; m * m];
        for x in 0..m {
            let (a, b) = (x % n, x / n);
            for y in 0..m {
                let (c, d) = (y % n, y / n);
                // r^a s^b r^c s^d = r^(a ± c) s^(b+d)
                let e = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                mult[x * m + y] = ((b + d) % 2) * n + e;
            }
        }
        let labels = (0..m)
            .map(|x| {
                let (i, j) = (x % n, x / n);
                match (i, j) {
                    (0, 0) => "e".to_string(),
                    (i, 0) => format!("r^{i}"),
                    (0, _) => "s".to_string(),
                    (i, _) => format!("r^{i}s"),
                }
            })
            .collect();
        Self::from_flat(mult, format!("D{m}"), Some(labels))
    }

    /// Symmetric group on `n` points, elements in lexicographic order of
    /// their image arrays.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid(
                "symmetric group degree must be at least 1".into(),
            ));
        }
        let mut gens = vec![];
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        } else {
            gens.push(vec![0]);
        }
        let g = Self::from_permutations(&gens)?;
        let mut d = Arc::try_unwrap(g.0).expect("fresh group");
        d.name = format!("S{n}");
        Ok(FiniteGroup(Arc::new(d)))
    }

    /// Closure of permutation generators. Products are composed left to
    /// right: `(στ)(x) = τ(σ(x))`. Elements are sorted lexicographically by
    /// image array, so the identity comes first.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let degree = gens.iter().map(Vec::len).max().unwrap_or(1).max(1);
        let mut perms: Vec<Vec<usize>> = Vec::new();
        for (k, p) in gens.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::Invalid(format!(
                    "generator {k} acts on {} points, others on {degree}",
                    p.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(Error::Invalid(format!(
                        "generator {k} is not a permutation of 0..{degree}"
                    )));
                }
                seen[x] = true;
            }
            perms.push(p.clone());
        }
        let id: Vec<usize> = (0..degree).collect();
        let compose =
            |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().map(|&x| b[x]).collect() };
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
        elems.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &perms {
                let y = compose(&x, g);
                if elems.insert(y.clone()) {
                    if elems.len() > MAX_ORDER {
                        return Err(Error::Budget {
                            what: "permutation group closure".into(),
                            requested: elems.len(),
                            cap: MAX_ORDER,
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
        let elems: Vec<Vec<usize>> = elems.into_iter().collect();
        let index: BTreeMap<&Vec<usize>, usize> =
            elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elems.len();
        let mut mult = vec![0; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mult[i * n + j] = index[&compose(a, b)];
            }
        }
        let labels = elems.iter().map(|p| format!("{p:?}")).collect();
        Self::from_flat(mult, format!("Perm{degree}"), Some(labels))
    }

    /// `(a, b)` has index `a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        if n > MAX_ORDER {
            return Err(Error::Budget {
                what: "direct product".into(),
                requested: n,
                cap: MAX_ORDER,
            });
        }
        let mut mult = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                mult[x * n + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
            }
        }
        let labels = (0..n)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        Self::from_flat(mult, format!("{}x{}", a.name(), b.name()), Some(labels))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn label(&self, g: usize) -> &str {
        &self.0.labels[g]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mult[a * self.0.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a]
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.inv(g), self.mul(x, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether element 1 generates the group with `tⁱ` = element `i`.
    pub fn is_standard_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.mul(i, j) == (i + j) % n))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.clone(), self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.clone(), vec![0])
    }

    /// All subgroups, sorted by order and then by element list.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        found.insert(vec![0]);
        queue.push_back(vec![0usize]);
        while let Some(x) = queue.pop_front() {
            let set: BTreeSet<usize> = x.iter().copied().collect();
            for g in self.elements() {
                if set.contains(&g) {
                    continue;
                }
                let mut gens = x.clone();
                gens.push(g);
                let y = self.closure(&gens);
                if found.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut subs: Vec<Vec<usize>> = found.into_iter().collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subs.into_iter()
            .map(|e| Subgroup::from_sorted(self.clone(), e))
            .collect()
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub(crate) fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `G/N` for normal `N`, with the projection `G → G/N`. Coset 0 is `N`;
    /// other cosets are ordered by their least element.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        n.check_group(self)?;
        if !n.is_normal() {
            return Err(Error::NotNormal(format!(
                "{:?} in {}",
                n.elements(),
                self.name()
            )));
        }
        let cs = CosetSpace::new(n);
        let k = cs.len();
        let mut mult = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                mult[a * k + b] = cs.coset_of(self.mul(cs.representative(a), cs.representative(b)));
            }
        }
        let proj = self.elements().map(|g| cs.coset_of(g)).collect();
        let q = Self::from_flat(mult, format!("{}/N", self.name()), None)?;
        Ok((q, proj))
    }
}
