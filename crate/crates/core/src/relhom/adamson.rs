//! The standard complex on tuples of cosets and Takasu homology engines.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bredon::{bredon_homology, takasu_pair_complex, CoefficientSystem, OrbitCategory};
use crate::error::{Error, Result};
use crate::exactla::{ChainComplex, FgAbGroup, Int, SparseMatrix};
use crate::groups::{CosetSpace, Subgroup};
use crate::modres::{
    resolve, standard_modules, takasu_resolution, tensor, Budget, Face, GModule, Normalization,
    OrbitCell, PermComplex,
};

/// `C_n(G/H)` = free abelian group on `(n+1)`-tuples of cosets, one orbit
/// cell per `G`-orbit; the representative tuple starts with `H` and is the
/// least in its `H`-orbit.
#[derive(Clone, Debug)]
pub struct AdamsonComplex {
    subgroup: Subgroup,
    normalization: Normalization,
    complex: PermComplex,
    tuples: Vec<Vec<Vec<usize>>>,
}

impl AdamsonComplex {
    /// Dimensions `0..len`.
    pub fn new(
        h: &Subgroup,
        len: usize,
        normalization: Normalization,
        budget: &Budget,
    ) -> Result<Self> {
        let len = len.max(1);
        let g = h.group();
        let cs = CosetSpace::new(h);
        let k = cs.len();
        let normalized = normalization == Normalization::Normalized;
        let act =
            |x: usize, t: &[usize]| -> Vec<usize> { t.iter().map(|&c| cs.act(x, c)).collect() };
        // least H-translate of a tuple starting with H, and the element achieving it
        let canon = |t: &[usize]| -> (Vec<usize>, usize) {
            h.elements()
                .iter()
                .map(|&x| (act(x, t), x))
                .min()
                .expect("nonempty")
        };
        let mut tuples: Vec<Vec<Vec<usize>>> = Vec::with_capacity(len);
        for n in 0..len {
            let expanded = if normalized {
                k * (k.saturating_sub(1)).pow(n as u32)
            } else {
                k.pow(n as u32 + 1)
            };
            budget.check_rank(&format!("standard complex C_{n}"), expanded)?;
            let mut layer = Vec::new();
            let mut cur = vec![0usize; n + 1];
            loop {
                let ok = !normalized || cur.windows(2).all(|w| w[0] != w[1]);
                if ok && canon(&cur).0 == cur {
                    layer.push(cur.clone());
                }
                // odometer over positions 1..=n
                let mut p = n;
                loop {
                    if p == 0 {
                        break;
                    }
                    cur[p] += 1;
                    if cur[p] < k {
                        break;
                    }
                    cur[p] = 0;
                    p -= 1;
                }
                if p == 0 {
                    break;
                }
            }
            tuples.push(layer);
        }
        let mut cells: Vec<Vec<OrbitCell>> = Vec::with_capacity(len);
        for n in 0..len {
            let index: HashMap<&[usize], usize> = if n > 0 {
                tuples[n - 1]
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (t.as_slice(), i))
                    .collect()
            } else {
                HashMap::new()
            };
            let mut layer = Vec::with_capacity(tuples[n].len());
            for t in &tuples[n] {
                let stab: Vec<usize> = h
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&x| t.iter().all(|&c| cs.act(x, c) == c))
                    .collect();
                let stabilizer = Subgroup::from_elements(g, &stab)?;
                let mut boundary = Vec::new();
                if n > 0 {
                    for i in 0..=n {
                        let w: Vec<usize> = t
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != i)
                            .map(|(_, &c)| c)
                            .collect();
                        if normalized && w.windows(2).any(|p| p[0] == p[1]) {
                            continue;
                        }
                        let x = cs.representative(w[0]);
                        let u = act(g.inv(x), &w);
                        let (tau, hh) = canon(&u);
                        let a = g.mul(hh, g.inv(x));
                        let sign = if i % 2 == 0 {
                            Int::one()
                        } else {
                            Int::from(-1)
                        };
                        boundary.push(Face {
                            cell: index[tau.as_slice()],
                            a,
                            coeff: sign,
                        });
                    }
                }
                layer.push(OrbitCell {
                    stabilizer,
                    boundary,
                });
            }
            cells.push(layer);
        }
        let complex = PermComplex::new(g, cells)?;
        Ok(AdamsonComplex {
            subgroup: h.clone(),
            normalization,
            complex,
            tuples,
        })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn complex(&self) -> &PermComplex {
        &self.complex
    }

    /// Representative coset tuple of cell `i` in dimension `d`.
    pub fn tuple(&self, d: usize, i: usize) -> &[usize] {
        &self.tuples[d][i]
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    /// `Z ← C_0 ← C_1 ← …` over `Z`.
    pub fn augmented_expanded(&self) -> Result<ChainComplex> {
        let c = &self.complex;
        let mut dims = vec![1];
        dims.extend((0..c.len()).map(|d| c.expanded_dim(d)));
        let ones = SparseMatrix::from_column_entries(
            1,
            (0..c.expanded_dim(0))
                .map(|_| vec![(0, Int::one())])
                .collect(),
        );
        let mut bs = vec![ones];
        bs.extend((1..c.len()).map(|d| c.expanded_boundary(d)));
        ChainComplex::new(dims, bs)
    }

    /// Acyclicity of the augmented complex below the top dimension.
    pub fn verify_acyclic(&self) -> Result<()> {
        let c = self.augmented_expanded()?;
        let h = c.homology_groups()?;
        for (k, x) in h.iter().enumerate().take(c.len() - 1) {
            if !x.is_trivial() {
                return Err(Error::Verification(format!(
                    "standard complex has homology {x} in augmented degree {k}"
                )));
            }
        }
        Ok(())
    }

    /// `C_*(G/H) ⊗_G M`.
    pub fn tensor(&self, m: &GModule) -> Result<ChainComplex> {
        Ok(tensor(&self.complex, m)?.complex)
    }

    /// `H_n([G:H]; M)`; needs dimension `n + 1`.
    pub fn homology(&self, m: &GModule, n: usize) -> Result<FgAbGroup> {
        if n + 2 > self.len() {
            return Err(Error::Truncation {
                requested: n,
                needed: n + 2,
                available: self.len(),
            });
        }
        self.tensor(m)?.homology_group(n)
    }

    /// `H_n` for every `n` the truncation supports.
    pub fn homology_groups(&self, m: &GModule) -> Result<Vec<FgAbGroup>> {
        let mut h = self.tensor(m)?.homology_groups()?;
        h.pop();
        Ok(h)
    }
}

/// `H_n([G:H]; M)` for `n = 0..=top`.
pub fn adamson_homology(
    h: &Subgroup,
    m: &GModule,
    top: usize,
    budget: &Budget,
) -> Result<Vec<FgAbGroup>> {
    check_module(h, m)?;
    AdamsonComplex::new(h, top + 2, Normalization::Normalized, budget)?.homology_groups(m)
}

/// How Takasu homology is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TakasuEngine {
    /// Generic resolution of `I`, greedily minimized.
    #[default]
    Resolve,
    /// Resolution of `I` by tuples not all in `H`.
    Relative,
    /// Bredon homology of the pair complex with coinvariant coefficients.
    Bredon,
}

/// `H_n(G, H; M) = Tor_{n-1}(I, M)` for `n = 0..=top`, with degree 0 set to 0.
pub fn takasu_homology(
    h: &Subgroup,
    m: &GModule,
    top: usize,
    engine: TakasuEngine,
    budget: &Budget,
) -> Result<Vec<FgAbGroup>> {
    check_module(h, m)?;
    let mut out = vec![FgAbGroup::trivial()];
    if top == 0 {
        return Ok(out);
    }
    match engine {
        TakasuEngine::Resolve | TakasuEngine::Relative => {
            let p = if engine == TakasuEngine::Resolve {
                resolve(&standard_modules(h).i_module, top + 1, true, budget)?
            } else {
                takasu_resolution(h, top + 1, Normalization::Normalized, budget)?
            };
            let groups = tensor(&p.to_perm_complex(), m)?.complex.homology_groups()?;
            out.extend(groups.into_iter().take(top));
        }
        TakasuEngine::Bredon => {
            if !m.is_trivial_action() {
                return Err(Error::Unsupported(
                    "the pair complex computes degree 1 only for constant coefficients; use another engine".into(),
                ));
            }
            let x = takasu_pair_complex(h, top + 2, Normalization::Normalized, budget)?;
            let cat = OrbitCategory::for_complex(&x)?;
            let sys = CoefficientSystem::coinvariants(m, &cat)?;
            let groups = bredon_homology(&x, &sys)?;
            out.extend(groups.into_iter().skip(1).take(top));
        }
    }
    Ok(out)
}

/// Takasu homology in degrees `2..=top` through the pair complex, valid for
/// any coefficients.
pub fn takasu_homology_bredon_from2(
    h: &Subgroup,
    m: &GModule,
    top: usize,
    budget: &Budget,
) -> Result<Vec<FgAbGroup>> {
    check_module(h, m)?;
    let x = takasu_pair_complex(h, top + 2, Normalization::Normalized, budget)?;
    let cat = OrbitCategory::for_complex(&x)?;
    let sys = CoefficientSystem::coinvariants(m, &cat)?;
    Ok(bredon_homology(&x, &sys)?
        .into_iter()
        .skip(2)
        .take(top.saturating_sub(1))
        .collect())
}

fn check_module(h: &Subgroup, m: &GModule) -> Result<()> {
    if h.group() != m.group() {
        return Err(Error::GroupMismatch(format!(
            "module {} is not over the ambient group",
            m.name()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    fn strs(h: &[FgAbGroup]) -> Vec<String> {
        h.iter().map(ToString::to_string).collect()
    }

    fn c4_c2() -> Subgroup {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        Subgroup::generated(&c4, &[2]).unwrap()
    }

    #[test]
    fn standard_complex_is_acyclic() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let h = Subgroup::generated(&s3, &[2]).unwrap();
        for norm in [Normalization::Full, Normalization::Normalized] {
            AdamsonComplex::new(&h, 5, norm, &Budget::default())
                .unwrap()
                .verify_acyclic()
                .unwrap();
        }
        AdamsonComplex::new(&c4_c2(), 6, Normalization::Normalized, &Budget::default())
            .unwrap()
            .verify_acyclic()
            .unwrap();
    }

    #[test]
    fn c4_c2_values() {
        let h = c4_c2();
        let z = GModule::trivial(h.group());
        let a = adamson_homology(&h, &z, 4, &Budget::default()).unwrap();
        assert_eq!(strs(&a), ["Z", "Z/2", "0", "Z/2", "0"]);
        for e in [
            TakasuEngine::Resolve,
            TakasuEngine::Relative,
            TakasuEngine::Bredon,
        ] {
            let t = takasu_homology(&h, &z, 4, e, &Budget::default()).unwrap();
            assert_eq!(strs(&t), ["0", "Z/2", "0", "Z/2", "0"], "{e:?}");
        }
    }

    #[test]
    fn full_and_normalized_agree() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let h = Subgroup::generated(&s3, &[2]).unwrap();
        let m = GModule::permutation(&h);
        let a = AdamsonComplex::new(&h, 5, Normalization::Full, &Budget::default())
            .unwrap()
            .homology_groups(&m)
            .unwrap();
        let b = AdamsonComplex::new(&h, 5, Normalization::Normalized, &Budget::default())
            .unwrap()
            .homology_groups(&m)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn truncation_error_names_the_fix() {
        let h = c4_c2();
        let ac = AdamsonComplex::new(&h, 3, Normalization::Normalized, &Budget::default()).unwrap();
        let e = ac.homology(&GModule::trivial(h.group()), 2).unwrap_err();
        assert!(e.to_string().contains("increase N"));
    }

    #[test]
    fn whole_group_pair() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let z = GModule::trivial(&c4);
        let a = adamson_homology(&c4.whole(), &z, 3, &Budget::default()).unwrap();
        assert_eq!(strs(&a), ["Z", "0", "0", "0"]);
        let t = takasu_homology(
            &c4.whole(),
            &z,
            3,
            TakasuEngine::Resolve,
            &Budget::default(),
        )
        .unwrap();
        assert!(t.iter().all(FgAbGroup::is_trivial));
    }
}
