//! The comparison homomorphism from Takasu to Adamson homology.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::exactla::{
    induced_map, ChainComplex, ChainMap, HomologyMap, Int, IntMatrix, SparseMatrix,
};
use crate::groups::{FiniteGroup, Subgroup};
use crate::modres::{
    lift_resolution, resolve, standard_modules, tensor, tensor_lift, Budget, Face, FreeResolution,
    GModule, Lift, Normalization, OrbitCell, PermComplex,
};

use super::adamson::AdamsonComplex;

/// A resolution `P` of `I`, a target `D` resolving `Z[G/H]`-side data with
/// `D_0 = Z[G/H]`, and a lift `λ_n : P_n → D_{n+1}` of the inclusion
/// `I ↪ ker ε`.
#[derive(Clone, Debug)]
pub struct ComparisonData {
    pub subgroup: Subgroup,
    pub module: GModule,
    pub resolution: FreeResolution,
    pub target: PermComplex,
    pub lift: Lift,
    /// `φ_i` for each requested degree.
    pub maps: Vec<HomologyMap>,
}

/// Right-hand sides `incl ∘ ε_P(e_j)` in coset coordinates.
fn inclusion_rhs(p: &FreeResolution, h: &Subgroup) -> Vec<Vec<Int>> {
    let emb = standard_modules(h).ker_eps_embedding.matrix;
    (0..p.rank(0))
        .map(|j| emb.mul_vec(&p.augmentation().column(j)))
        .collect()
}

/// Builds the lift of `incl` into `target` (dimension 1 over dimension 0).
pub fn lift_inclusion(
    p: &FreeResolution,
    h: &Subgroup,
    target: &PermComplex,
    len: usize,
) -> Result<Lift> {
    lift_resolution(
        p,
        target,
        1,
        &target.expanded_boundary(1),
        &inclusion_rhs(p, h),
        len,
    )
}

/// Checks the defining equations of a lift of the inclusion.
pub fn lift_is_chain_map(
    p: &FreeResolution,
    h: &Subgroup,
    target: &PermComplex,
    lift: &Lift,
) -> bool {
    lift.verify(
        p,
        target,
        &target.expanded_boundary(1),
        &inclusion_rhs(p, h),
    )
    .is_ok()
}

/// Maps `H_i(P ⊗ M[1]) → H_i(D ⊗ M)` induced by `λ ⊗ M` for `i` in
/// `degrees`. For coefficients with non-trivial action the target loses
/// its degree 0 part, so degree 1 is refused.
pub fn comparison_maps(
    p: &FreeResolution,
    target: &PermComplex,
    lift: &Lift,
    m: &GModule,
    degrees: RangeInclusive<usize>,
) -> Result<Vec<HomologyMap>> {
    let (lo, hi) = (*degrees.start(), *degrees.end());
    if lo == 0 {
        return Err(Error::Invalid("comparison degrees start at 1".into()));
    }
    let constant = m.is_trivial_action();
    if lo == 1 && !constant {
        return Err(Error::Unsupported(
            "degree 1 comparison is only defined for constant coefficients (split-injectivity proviso)".into(),
        ));
    }
    if lift.len() < hi + 1 || p.len() < hi + 1 || target.len() < hi + 2 {
        return Err(Error::Truncation {
            requested: hi,
            needed: hi + 2,
            available: target.len().min(p.len() + 1),
        });
    }
    let p = p.truncate(hi + 1);
    let target = target.truncate(hi + 2);
    let src_t = tensor(&p.to_perm_complex(), m)?;
    let tgt_t = tensor(&target, m)?;
    let lift = Lift {
        shift: lift.shift,
        columns: lift.columns[..hi + 1].to_vec(),
    };
    let mut comps = vec![SparseMatrix::zeros(tgt_t.complex.dim(0), 0)];
    comps.extend(tensor_lift(&lift, &target, m, &src_t, &tgt_t));
    let source: ChainComplex = src_t.complex.shift_up();
    let tc = if constant {
        tgt_t.complex.clone()
    } else {
        tgt_t.complex.without_bottom()
    };
    if !constant {
        comps[0] = SparseMatrix::zeros(0, 0);
    }
    let f = ChainMap::new(&source, &tc, 0, comps)?;
    degrees
        .map(|i| {
            let hs = source.homology(i)?;
            let ht = tc.homology(i)?;
            Ok(HomologyMap::from_map(i, induced_map(&f, &hs, &ht)?))
        })
        .collect()
}

/// `φ_i : H_i(G,H;M) → H_i([G:H];M)` through a minimized resolution of `I`
/// and the normalized standard complex.
pub fn comparison(
    h: &Subgroup,
    m: &GModule,
    degrees: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<ComparisonData> {
    let hi = *degrees.end();
    if *degrees.start() == 0 {
        return Err(Error::Invalid("comparison degrees start at 1".into()));
    }
    if *degrees.start() == 1 && !m.is_trivial_action() {
        return Err(Error::Unsupported(
            "degree 1 comparison is only defined for constant coefficients (split-injectivity proviso)".into(),
        ));
    }
    let p = resolve(&standard_modules(h).i_module, hi + 1, true, budget)?;
    let ac = AdamsonComplex::new(h, hi + 2, Normalization::Normalized, budget)?;
    let target = ac.complex().clone();
    let lift = lift_inclusion(&p, h, &target, hi + 1)?;
    let maps = comparison_maps(&p, &target, &lift, m, degrees)?;
    Ok(ComparisonData {
        subgroup: h.clone(),
        module: m.clone(),
        resolution: p,
        target,
        lift,
        maps,
    })
}

impl ComparisonData {
    pub fn lift_is_chain_map(&self) -> bool {
        lift_is_chain_map(&self.resolution, &self.subgroup, &self.target, &self.lift)
    }
}

/// The worked example for `(C_4, C_2)`: the periodic resolution of `I` with
/// `d_odd = −(1+t)`, `d_even = 1 − t + t² − t³`, `ε(e) = tH − H`; the
/// periodic complex over `Z[G/H]` with alternating `(t+1)H`, `(t−1)H` (and
/// `(t−1)H` into dimension 0); and the lift `λ_{2i} = 2^i H`,
/// `λ_{2i+1} = −2^i H`.
#[derive(Clone, Debug)]
pub struct ReferenceLift {
    pub subgroup: Subgroup,
    pub resolution: FreeResolution,
    pub target: PermComplex,
    pub lift: Lift,
}

pub fn reference_lift_c4c2(len: usize) -> Result<ReferenceLift> {
    let g = FiniteGroup::cyclic(4)?;
    let h = Subgroup::generated(&g, &[2])?;
    let sm = standard_modules(&h);
    let len = len.max(1);
    let (t, t2, t3) = (1usize, 2usize, 3usize);
    let mut bs: Vec<Vec<crate::modres::RingColumn>> = vec![vec![]];
    for n in 1..len {
        let col = if n % 2 == 1 {
            vec![(0, 0, Int::from(-1)), (0, t, Int::from(-1))]
        } else {
            vec![
                (0, 0, Int::one()),
                (0, t, Int::from(-1)),
                (0, t2, Int::one()),
                (0, t3, Int::from(-1)),
            ]
        };
        bs.push(vec![col]);
    }
    let resolution = FreeResolution::new(
        &sm.i_module,
        bs,
        IntMatrix::from_rows(&[vec![1i64]]),
        "I(nu)",
    )?;
    // faces c·a⁻¹τ: t·H has a = t⁻¹
    let t_inv = g.inv(t);
    let plus = |c: i64| {
        vec![
            Face {
                cell: 0,
                a: t_inv,
                coeff: Int::one(),
            },
            Face {
                cell: 0,
                a: 0,
                coeff: Int::from(c),
            },
        ]
    };
    let mut cells = vec![vec![OrbitCell {
        stabilizer: h.clone(),
        boundary: vec![],
    }]];
    for d in 1..=len {
        // dimension d holds Q_{d-1}; Q_0 → D_0 and Q_even → Q_odd use t − 1
        let q = d - 1;
        let coeff = if q % 2 == 0 { -1 } else { 1 };
        cells.push(vec![OrbitCell {
            stabilizer: h.clone(),
            boundary: plus(coeff),
        }]);
    }
    let target = PermComplex::new(&g, cells)?;
    let columns = (0..len)
        .map(|n| {
            let mag = 1i64 << (n / 2);
            let v = if n % 2 == 0 { mag } else { -mag };
            vec![vec![Int::from(v), Int::zero()]]
        })
        .collect();
    Ok(ReferenceLift {
        subgroup: h,
        resolution,
        target,
        lift: Lift { shift: 1, columns },
    })
}

impl ReferenceLift {
    pub fn is_chain_map(&self) -> bool {
        lift_is_chain_map(&self.resolution, &self.subgroup, &self.target, &self.lift)
    }

    /// A lift of the same inclusion produced by the solver.
    pub fn solver_lift(&self) -> Result<Lift> {
        lift_inclusion(
            &self.resolution,
            &self.subgroup,
            &self.target,
            self.lift.len(),
        )
    }

    /// `λ_n ⊗ Z` as integers, degree by degree.
    pub fn tensored_with_z(&self) -> Result<Vec<Int>> {
        let z = GModule::trivial(self.subgroup.group());
        let src = tensor(&self.resolution.to_perm_complex(), &z)?;
        let tgt = tensor(&self.target, &z)?;
        Ok(tensor_lift(&self.lift, &self.target, &z, &src, &tgt)
            .into_iter()
            .map(|m| m.to_dense()[(0, 0)].clone())
            .collect())
    }
}
