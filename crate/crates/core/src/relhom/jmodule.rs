use serde::{Deserialize, Serialize};

use crate::exactla::FgAbGroup;
use crate::groups::{family_generated, family_gh, fixed_cosets, is_malnormal, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JEntry {
    /// Elements of the class representative `K`.
    pub subgroup: Vec<usize>,
    pub fixed_cosets: usize,
    /// `ker(Z[(G/H)^K] → Z)`.
    pub value: FgAbGroup,
    pub in_family_gh: bool,
    /// The value predicted from membership: zero off `G(H)`.
    pub predicted: FgAbGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JModuleReport {
    pub entries: Vec<JEntry>,
    pub malnormal: bool,
    pub family_gh_trivial: bool,
    pub all_zero: bool,
    /// Every value matches its prediction and the three global conditions agree.
    pub consistent: bool,
}

/// `J(G/K)` for one `K` per conjugacy class of nontrivial subgroups
/// subconjugate to `H`.
pub fn j_module(h: &Subgroup) -> JModuleReport {
    let fh = family_generated(h);
    let gh = family_gh(h);
    let mut entries = Vec::new();
    for k in fh
        .conjugacy_representatives()
        .into_iter()
        .filter(|k| !k.is_trivial())
    {
        let fixed = fixed_cosets(h, &k).expect("same group").len();
        let value = FgAbGroup::free(fixed.saturating_sub(1));
        let in_family_gh = gh.contains(&k);
        let predicted = if in_family_gh {
            FgAbGroup::free(fixed - 1)
        } else {
            FgAbGroup::trivial()
        };
        entries.push(JEntry {
            subgroup: k.elements().to_vec(),
            fixed_cosets: fixed,
            value,
            in_family_gh,
            predicted,
        });
    }
    let malnormal = is_malnormal(h);
    let family_gh_trivial = gh.is_trivial();
    let all_zero = entries.iter().all(|e| e.value.is_trivial());
    let consistent = entries.iter().all(|e| e.value == e.predicted)
        && malnormal == family_gh_trivial
        && family_gh_trivial == all_zero;
    JModuleReport {
        entries,
        malnormal,
        family_gh_trivial,
        all_zero,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    #[test]
    fn examples() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let r = j_module(&Subgroup::generated(&s3, &[2]).unwrap());
        assert!(r.all_zero && r.consistent && r.malnormal);
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let r = j_module(&Subgroup::generated(&c4, &[2]).unwrap());
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].value.to_string(), "Z");
        assert!(r.consistent && !r.malnormal);
        let r = j_module(&c4.whole());
        assert!(r.all_zero && r.consistent);
    }
}
