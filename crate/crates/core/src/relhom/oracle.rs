use serde::{Deserialize, Serialize};

use super::adamson::adamson_homology;
use crate::error::{Error, Result};
use crate::exactla::FgAbGroup;
use crate::groups::Subgroup;
use crate::modres::{group_homology, Budget, GModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientCheck {
    pub degree: usize,
    pub adamson: FgAbGroup,
    /// `H_n(G/H; M_H)`.
    pub oracle: FgAbGroup,
    pub matches: bool,
}

/// Compares `H_n([G:H]; M)` with `H_n(G/H; M_H)` for `n = 0..=top`.
pub fn normal_quotient_oracle(
    h: &Subgroup,
    m: &GModule,
    top: usize,
    budget: &Budget,
) -> Result<Vec<QuotientCheck>> {
    if !h.is_normal() {
        return Err(Error::NotNormal(format!("{h:?} in {}", h.group().name())));
    }
    let a = adamson_homology(h, m, top, budget)?;
    let co = m.coinvariants(h)?;
    let q = group_homology(&co.module, top + 1, budget)?;
    Ok(a.into_iter()
        .zip(q)
        .enumerate()
        .map(|(degree, (adamson, oracle))| QuotientCheck {
            degree,
            matches: adamson == oracle,
            adamson,
            oracle,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    #[test]
    fn examples() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let h = Subgroup::generated(&c4, &[2]).unwrap();
        let r = normal_quotient_oracle(&h, &GModule::trivial(&c4), 3, &Budget::default()).unwrap();
        assert!(r.iter().all(|c| c.matches));
        assert_eq!(r[3].oracle.to_string(), "Z/2");
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let a3 = Subgroup::generated(&s3, &[3]).unwrap();
        assert_eq!(a3.order(), 3);
        let r = normal_quotient_oracle(&a3, &GModule::trivial(&s3), 2, &Budget::default()).unwrap();
        assert!(r.iter().all(|c| c.matches));
        assert_eq!(r[1].adamson.to_string(), "Z/2");
        let t = Subgroup::generated(&s3, &[2]).unwrap();
        assert!(matches!(
            normal_quotient_oracle(&t, &GModule::trivial(&s3), 2, &Budget::default()),
            Err(Error::NotNormal(_))
        ));
    }
}
