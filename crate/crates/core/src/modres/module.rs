//! Z[G]-modules as lattices with a left action, possibly modulo a G-stable
//! relation sublattice.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exactla::{normalize_quotient, FgAbGroup, Int, IntMatrix, Lattice};
use crate::groups::{CosetSpace, FiniteGroup, Subgroup};

/// `L / R` with `L = Z^rank`, a left action on `L` preserving `R`, and the
/// group law holding modulo `R`. Right modules are never stored: where a
/// right structure is needed, `x·g` means `g⁻¹·x`.
#[derive(Clone, Debug)]
pub struct GModule {
    group: FiniteGroup,
    rank: usize,
    action: Vec<IntMatrix>,
    relations: Option<IntMatrix>,
    name: String,
}

/// A quotient `Z^n / relations` in normalized coordinates: `to_normal` maps
/// lattice vectors to coordinates, `from_normal` picks lattice preimages.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FgAbGroup,
    pub to_normal: IntMatrix,
    pub from_normal: IntMatrix,
}

impl Presentation {
    pub fn ngens(&self) -> usize {
        self.group.ngens()
    }

    pub fn is_identity(&self) -> bool {
        self.group.torsion.is_empty()
            && self.to_normal.rows() == self.to_normal.cols()
            && self.to_normal == IntMatrix::identity(self.to_normal.rows())
    }
}

impl GModule {
    pub fn new(
        group: &FiniteGroup,
        action: Vec<IntMatrix>,
        relations: Option<IntMatrix>,
        name: &str,
    ) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::Invalid(format!(
                "module {name}: {} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let rank = action[0].rows();
        let m = GModule {
            group: group.clone(),
            rank,
            action,
            relations: relations.filter(|r| r.cols() > 0),
            name: name.to_string(),
        };
        m.validate()?;
        Ok(m)
    }

    /// Extends matrices for generators to the whole group and validates.
    pub fn from_generators(
        group: &FiniteGroup,
        gens: &[usize],
        mats: &[IntMatrix],
        relations: Option<IntMatrix>,
        name: &str,
    ) -> Result<Self> {
        if gens.len() != mats.len() {
            return Err(Error::Invalid(format!(
                "module {name}: {} generators but {} matrices",
                gens.len(),
                mats.len()
            )));
        }
        let rank = mats.first().map_or_else(
            || relations.as_ref().map_or(1, IntMatrix::rows),
            IntMatrix::rows,
        );
        for (k, m) in mats.iter().enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::Dimension(format!(
                    "module {name}: matrix {k} is not {rank}x{rank}"
                )));
            }
        }
        if let Some(&g) = gens.iter().find(|&&g| g >= group.order()) {
            return Err(Error::Invalid(format!(
                "module {name}: generator {g} out of range"
            )));
        }
        let rel_lat = relations.as_ref().map(Lattice::from_columns);
        let mut action: Vec<Option<IntMatrix>> = vec![None; group.order()];
        action[0] = Some(IntMatrix::identity(rank));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, ms) in gens.iter().zip(mats) {
                let y = group.mul(x, *s);
                let cand = action[x].as_ref().unwrap().mul(ms);
                match &action[y] {
                    None => {
                        action[y] = Some(cand);
                        queue.push_back(y);
                    }
                    Some(existing) => {
                        if !congruent(existing, &cand, rel_lat.as_ref()) {
                            return Err(Error::Invalid(format!(
                                "module {name}: generator matrices violate a group relation at element {y}"
                            )));
                        }
                    }
                }
            }
        }
        if action.iter().any(Option::is_none) {
            return Err(Error::Invalid(format!(
                "module {name}: generators do not generate the group"
            )));
        }
        Self::new(
            group,
            action.into_iter().map(Option::unwrap).collect(),
            relations,
            name,
        )
    }

    fn validate(&self) -> Result<()> {
        let name = &self.name;
        for (g, a) in self.action.iter().enumerate() {
            if a.rows() != self.rank || a.cols() != self.rank {
                return Err(Error::Dimension(format!(
                    "module {name}: action of {g} is not square of size {}",
                    self.rank
                )));
            }
        }
        if let Some(r) = &self.relations {
            if r.rows() != self.rank {
                return Err(Error::Dimension(format!(
                    "module {name}: relations have wrong length"
                )));
            }
        }
        let lat = self.relation_lattice();
        if !congruent(
            &self.action[0],
            &IntMatrix::identity(self.rank),
            lat.as_ref(),
        ) {
            return Err(Error::Invalid(format!(
                "module {name}: identity does not act trivially"
            )));
        }
        let gens = self.group.whole().generators();
        for g in self.group.elements() {
            for &s in &gens {
                let lhs = &self.action[self.group.mul(g, s)];
                let rhs = self.action[g].mul(&self.action[s]);
                if !congruent(lhs, &rhs, lat.as_ref()) {
                    return Err(Error::Invalid(format!(
                        "module {name}: action is not multiplicative at ({g},{s})"
                    )));
                }
            }
        }
        if let (Some(r), Some(l)) = (&self.relations, &lat) {
            for &s in &gens {
                let img = self.action[s].mul(r);
                if !(0..img.cols()).all(|j| l.contains(&img.column(j))) {
                    return Err(Error::Invalid(format!(
                        "module {name}: relations are not G-stable"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        GModule {
            group: group.clone(),
            rank: 1,
            action: vec![IntMatrix::identity(1); group.order()],
            relations: None,
            name: "Z".into(),
        }
    }

    /// Trivial `Z/k`, realized as `Z` modulo `k`.
    pub fn trivial_mod(group: &FiniteGroup, k: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::Invalid(format!("Z/{k} coefficients need k >= 2")));
        }
        let mut m = Self::trivial(group);
        m.relations = Some(IntMatrix::from_rows(&[vec![Int::from(k as i64)]]));
        m.name = format!("Z/{k}");
        Ok(m)
    }

    /// `Z[G/K]` on left cosets, basis ordered as in [`CosetSpace`].
    pub fn permutation(k: &Subgroup) -> Self {
        let cs = CosetSpace::new(k);
        let n = cs.len();
        let g = k.group();
        let action = g
            .elements()
            .map(|x| {
                let mut m = IntMatrix::zeros(n, n);
                for c in 0..n {
                    m[(cs.act(x, c), c)] = Int::one();
                }
                m
            })
            .collect();
        GModule {
            group: g.clone(),
            rank: n,
            action,
            relations: None,
            name: format!("Z[G/K{:?}]", k.elements()),
        }
    }

    pub fn regular(group: &FiniteGroup) -> Self {
        let mut m = Self::permutation(&group.trivial_subgroup());
        m.name = "Z[G]".into();
        m
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn relations(&self) -> Option<&IntMatrix> {
        self.relations.as_ref()
    }

    pub fn has_relations(&self) -> bool {
        self.relations.is_some()
    }

    pub(crate) fn relation_lattice(&self) -> Option<Lattice> {
        self.relations.as_ref().map(Lattice::from_columns)
    }

    pub(crate) fn relation_cols(&self) -> IntMatrix {
        self.relations
            .clone()
            .unwrap_or_else(|| IntMatrix::zeros(self.rank, 0))
    }

    /// Every element acts as the identity modulo relations.
    pub fn is_trivial_action(&self) -> bool {
        let lat = self.relation_lattice();
        let id = IntMatrix::identity(self.rank);
        self.action.iter().all(|a| congruent(a, &id, lat.as_ref()))
    }

    /// The underlying abelian group.
    pub fn underlying_group(&self) -> FgAbGroup {
        FgAbGroup::presented(self.rank, &self.relation_cols())
    }

    /// `M_K = M / ⟨k·m − m⟩` in normalized coordinates.
    pub fn coinvariant_presentation(&self, k: &Subgroup) -> Presentation {
        let mut rel = self.relation_cols();
        let id = IntMatrix::identity(self.rank);
        for s in k.generators() {
            rel = rel.hconcat(&self.action[s].sub(&id));
        }
        let q = normalize_quotient(self.rank, &rel);
        Presentation {
            group: q.group,
            to_normal: q.to_normal,
            from_normal: q.from_normal,
        }
    }

    /// `M` itself in normalized coordinates.
    pub fn presentation(&self) -> Presentation {
        if self.relations.is_none() {
            return Presentation {
                group: FgAbGroup::free(self.rank),
                to_normal: IntMatrix::identity(self.rank),
                from_normal: IntMatrix::identity(self.rank),
            };
        }
        self.coinvariant_presentation(&self.group.trivial_subgroup())
    }

    /// Restriction to a subgroup, as a module over the subgroup viewed as a
    /// group (see [`Subgroup::as_group`]).
    pub fn restrict(&self, h: &Subgroup) -> Result<GModule> {
        h.group().eq(&self.group).then_some(()).ok_or_else(|| {
            Error::GroupMismatch(format!(
                "restricting module {} to a subgroup of another group",
                self.name
            ))
        })?;
        let (hg, embed) = h.as_group();
        let action = embed.iter().map(|&x| self.action[x].clone()).collect();
        GModule::new(
            &hg,
            action,
            self.relations.clone(),
            &format!("res {}", self.name),
        )
    }

    /// Coinvariants under a normal subgroup, as a module over `G/N`.
    pub fn coinvariants(&self, n: &Subgroup) -> Result<Coinvariants> {
        let (q, proj) = self.group.quotient(n)?;
        let p = self.coinvariant_presentation(n);
        let k = p.ngens();
        // representative of each coset
        let mut reps = vec![usize::MAX; q.order()];
        for g in self.group.elements() {
            if reps[proj[g]] == usize::MAX {
                reps[proj[g]] = g;
            }
        }
        let action: Vec<IntMatrix> = reps
            .iter()
            .map(|&g| p.to_normal.mul(&self.action[g]).mul(&p.from_normal))
            .collect();
        let rel = p.group.relation_matrix();
        let module = GModule::new(&q, action.clone(), Some(rel), &format!("({})_N", self.name))?;
        let t = p.group.torsion.len();
        let free: Vec<usize> = (t..k).collect();
        let free_part = GModule::new(
            &q,
            action.iter().map(|a| a.select(&free, &free)).collect(),
            None,
            &format!("({})_N/torsion", self.name),
        )?;
        Ok(Coinvariants {
            quotient: q,
            projection: proj,
            group: p.group,
            module,
            free_part,
        })
    }
}

/// Result of taking coinvariants under a normal subgroup `N`.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub quotient: FiniteGroup,
    pub projection: Vec<usize>,
    /// The full abelian group `M_N`, torsion included.
    pub group: FgAbGroup,
    /// `M_N` as a presented `G/N`-module in normalized coordinates.
    pub module: GModule,
    /// `M_N` modulo torsion.
    pub free_part: GModule,
}

pub(crate) fn congruent(a: &IntMatrix, b: &IntMatrix, rel: Option<&Lattice>) -> bool {
    if a == b {
        return true;
    }
    let Some(l) = rel else { return false };
    let d = a.sub(b);
    (0..d.cols()).all(|j| l.contains(&d.column(j)))
}

/// `source → target`, equivariant modulo the target relations.
#[derive(Clone, Debug)]
pub struct GModuleHom {
    pub source: GModule,
    pub target: GModule,
    pub matrix: IntMatrix,
}

impl GModuleHom {
    pub fn new(source: &GModule, target: &GModule, matrix: IntMatrix) -> Result<Self> {
        if source.group != target.group {
            return Err(Error::GroupMismatch(
                "module homomorphism between different groups".into(),
            ));
        }
        if matrix.rows() != target.rank || matrix.cols() != source.rank {
            return Err(Error::Dimension(
                "module homomorphism matrix has wrong shape".into(),
            ));
        }
        let lat = target.relation_lattice();
        for g in source.group.elements() {
            let lhs = matrix.mul(&source.action[g]);
            let rhs = target.action[g].mul(&matrix);
            if !congruent(&lhs, &rhs, lat.as_ref()) {
                return Err(Error::Invalid(format!(
                    "homomorphism is not equivariant at element {g}"
                )));
            }
        }
        if let Some(r) = &source.relations {
            let img = matrix.mul(r);
            let ok = (0..img.cols()).all(|j| {
                let v = img.column(j);
                v.iter().all(Int::is_zero) || lat.as_ref().is_some_and(|l| l.contains(&v))
            });
            if !ok {
                return Err(Error::Invalid(
                    "homomorphism does not respect relations".into(),
                ));
            }
        }
        Ok(GModuleHom {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }
}

/// `Z[G/H]`, its augmentation, the kernel `I` with basis `gᵢH − H`, and the
/// embedding of `I` into `Z[G/H]`.
#[derive(Clone, Debug)]
pub struct StandardModules {
    pub cosets: CosetSpace,
    pub perm: GModule,
    pub augmentation: GModuleHom,
    pub i_module: GModule,
    pub ker_eps_embedding: GModuleHom,
}

pub fn standard_modules(h: &Subgroup) -> StandardModules {
    let g = h.group();
    let cs = CosetSpace::new(h);
    let k = cs.len();
    let perm = GModule::permutation(h);
    let z = GModule::trivial(g);
    let aug = GModuleHom::new(&perm, &z, IntMatrix::from_rows(&[vec![Int::one(); k]]))
        .expect("augmentation");
    // basis b_c = c − H for c = 1..k
    let action = g
        .elements()
        .map(|x| {
            let mut m = IntMatrix::zeros(k - 1, k - 1);
            let base = cs.act(x, 0);
            for c in 1..k {
                let img = cs.act(x, c);
                if img != 0 {
                    m[(img - 1, c - 1)] += &Int::one();
                }
                if base != 0 {
                    m[(base - 1, c - 1)] -= &Int::one();
                }
            }
            m
        })
        .collect();
    let i_module = GModule::new(g, action, None, "I").expect("augmentation ideal is a module");
    let mut emb = IntMatrix::zeros(k, k - 1);
    for c in 1..k {
        emb[(c, c - 1)] = Int::one();
        emb[(0, c - 1)] = Int::from(-1);
    }
    let ker_eps_embedding = GModuleHom::new(&i_module, &perm, emb).expect("embedding");
    StandardModules {
        cosets: cs,
        perm,
        augmentation: aug,
        i_module,
        ker_eps_embedding,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4_c2() -> Subgroup {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        Subgroup::generated(&c4, &[2]).unwrap()
    }

    #[test]
    fn standard_module_examples() {
        let s = standard_modules(&c4_c2());
        assert_eq!(s.perm.rank(), 2);
        assert_eq!(s.i_module.rank(), 1);
        assert_eq!(s.i_module.action(1), &IntMatrix::from_rows(&[vec![-1i64]]));
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(standard_modules(&c4.whole()).i_module.rank(), 0);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let s = standard_modules(&c2.trivial_subgroup());
        assert_eq!(s.perm.rank(), 2);
        assert_eq!(s.i_module.action(1), &IntMatrix::from_rows(&[vec![-1i64]]));
    }

    #[test]
    fn generators_extend_to_the_group() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let m = GModule::from_generators(
            &c4,
            &[1],
            &[IntMatrix::from_rows(&[vec![-1i64]])],
            None,
            "sign",
        )
        .unwrap();
        assert_eq!(m.action(2), &IntMatrix::identity(1));
        // t ↦ 2 is not invertible, and t ↦ diag(i) of order 3 breaks t⁴ = 1
        let bad = IntMatrix::from_rows(&[vec![0i64, -1, 0], vec![0, 0, -1], vec![1, 0, 0]]);
        assert!(GModule::from_generators(&c4, &[1], &[bad], None, "bad").is_err());
    }

    #[test]
    fn coinvariants_of_regular_and_trivial() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let reg = GModule::regular(&c2);
        let p = reg.coinvariant_presentation(&c2.whole());
        assert_eq!(p.group, FgAbGroup::free(1));
        let z = GModule::trivial(&c2);
        let co = z.coinvariants(&c2.whole()).unwrap();
        assert_eq!(co.group, FgAbGroup::free(1));
        assert!(co.module.is_trivial_action());
        // sign representation of C2 has coinvariants Z/2
        let sign = GModule::from_generators(
            &c2,
            &[1],
            &[IntMatrix::from_rows(&[vec![-1i64]])],
            None,
            "sign",
        )
        .unwrap();
        let co = sign.coinvariants(&c2.whole()).unwrap();
        assert_eq!(co.group, FgAbGroup::cyclic(2));
        assert_eq!(co.free_part.rank(), 0);
    }

    #[test]
    fn torsion_coefficients() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let m = GModule::trivial_mod(&c4, 3).unwrap();
        assert_eq!(m.underlying_group(), FgAbGroup::cyclic(3));
        assert!(m.is_trivial_action());
        assert!(!GModule::permutation(&c4_c2()).is_trivial_action());
    }

    #[test]
    fn restriction_reindexes() {
        let h = c4_c2();
        let m = GModule::regular(h.group());
        let r = m.restrict(&h).unwrap();
        assert_eq!(r.group().order(), 2);
        assert_eq!(r.action(1), m.action(2));
    }
}
