//! The Tor long exact sequence of `0 → I → Z[G/H] → Z → 0`, checked on
//! explicit matrices through a horseshoe resolution.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{
    check_exact, induced_by_matrix, induced_map, AbelianMap, ChainMap, FgAbGroup, Homology, Int,
    IntMatrix, Solver, SparseMatrix,
};
use crate::groups::Subgroup;
use crate::modres::{
    group_homology, induce_resolution, lift_resolution, resolve, standard_modules, tensor,
    tensor_lift, Budget, FreeResolution, GModule, RingColumn, TensorComplex,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlotKind {
    /// `Tor_n(Z[G/H], M) ≅ H_n(H; M)`.
    Subgroup,
    /// `Tor_n(Z, M) = H_n(G; M)`.
    Group,
    /// `Tor_{n-1}(I, M) = H_n(G, H; M)`.
    Pair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesSlot {
    pub degree: usize,
    pub kind: SlotKind,
    pub group: FgAbGroup,
    /// The map leaving this slot.
    pub outgoing: AbelianMap,
    pub exact: bool,
    pub kernel: FgAbGroup,
    pub image: FgAbGroup,
}

/// The Shapiro comparison `H_n(H; res M) → Tor_n(Z[G/H], M)` in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapiroCheck {
    pub degree: usize,
    /// `H_n(H; res M)` from a resolution over `H` alone.
    pub subgroup_homology: FgAbGroup,
    pub map: AbelianMap,
    pub is_iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesCertificate {
    pub degrees: (usize, usize),
    /// Slots from the top degree down: `X_n, Y_n, Z_n, X_{n-1}, …`.
    pub slots: Vec<LesSlot>,
    pub shapiro: Vec<ShapiroCheck>,
    pub exact: bool,
    pub shapiro_ok: bool,
}

impl LesCertificate {
    pub fn slot(&self, kind: SlotKind, degree: usize) -> Option<&LesSlot> {
        self.slots
            .iter()
            .find(|s| s.kind == kind && s.degree == degree)
    }

    /// Connecting maps `H_n(G, H; M) → H_{n-1}(H; M)` in the range.
    pub fn connecting_maps(&self) -> impl Iterator<Item = &AbelianMap> {
        self.slots
            .iter()
            .filter(|s| s.kind == SlotKind::Pair)
            .map(|s| &s.outgoing)
    }
}

/// `P = P' ⊕ P''` resolving `Z[G/H]` from resolutions `P'` of `I` and `P''`
/// of `Z`.
pub(crate) fn horseshoe(
    h: &Subgroup,
    pi: &FreeResolution,
    pz: &FreeResolution,
) -> Result<FreeResolution> {
    let g = h.group();
    let o = g.order();
    let sm = standard_modules(h);
    let len = pi.len().min(pz.len());
    let emb = &sm.ker_eps_embedding.matrix;
    let k = sm.cosets.len();
    let mut aug_cols: Vec<Vec<Int>> = (0..pi.rank(0))
        .map(|j| emb.mul_vec(&pi.augmentation().column(j)))
        .collect();
    for i in 0..pz.rank(0) {
        let mut v = vec![Int::zero(); k];
        v[0] = pz.augmentation()[(0, i)].clone();
        aug_cols.push(v);
    }
    let augmentation = IntMatrix::from_columns(k, &aug_cols);
    let to_ring = |v: &[Int]| -> RingColumn {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(q, x)| (q / o, q % o, x.clone()))
            .collect()
    };
    let mut bs: Vec<Vec<RingColumn>> = vec![vec![]];
    // hs[n][i] = h_n(e_i) in expanded coordinates of P'_{n-1}
    let mut hs: Vec<Vec<Vec<Int>>> = vec![vec![]];
    for n in 1..len {
        let mut layer: Vec<RingColumn> = pi.boundary(n).to_vec();
        let solver = if n == 1 {
            Solver::new(&pi.expanded_augmentation().to_dense())
        } else {
            Solver::new(&pi.expanded_boundary(n - 1).to_dense())
        };
        let mut hn = Vec::with_capacity(pz.rank(n));
        for (i, col) in pz.boundary(n).iter().enumerate() {
            let rhs: Vec<Int> = if n == 1 {
                let mut v = vec![Int::zero(); k];
                for (l, x, c) in col {
                    v[sm.cosets.act(*x, 0)].add_mul_assign(c, &pz.augmentation()[(0, *l)]);
                }
                v[1..].iter().map(|x| -x).collect()
            } else {
                let mut acc = vec![Int::zero(); pi.expanded_rank(n - 2)];
                for (l, x, c) in col {
                    let y = pi.act(*x, &hs[n - 1][*l]);
                    for (a, b) in acc.iter_mut().zip(&y) {
                        a.sub_mul_assign(c, b);
                    }
                }
                acc
            };
            let x = solver.solve(&rhs).ok_or_else(|| {
                Error::Verification(format!(
                    "horseshoe correction fails on generator {i} of degree {n}"
                ))
            })?;
            let mut ring = to_ring(&x);
            ring.extend(
                col.iter()
                    .map(|(l, x, c)| (l + pi.rank(n - 1), *x, c.clone())),
            );
            layer.push(ring);
            hn.push(x);
        }
        hs.push(hn);
        bs.push(layer);
    }
    FreeResolution::new(&sm.perm, bs, augmentation, "horseshoe")
}

/// Selection of the coordinates of a run of cells of `from` into `to`.
fn block_map(
    from: &TensorComplex,
    to: &TensorComplex,
    d: usize,
    from_cell: usize,
    to_cell: usize,
    cells: usize,
) -> SparseMatrix {
    let rows = to.complex.dim(d);
    let cols = from.complex.dim(d);
    let start = from.offsets[d][from_cell];
    let target = to.offsets[d][to_cell];
    let width = from.offsets[d][from_cell + cells] - start;
    let mut entries = vec![Vec::new(); cols];
    for q in 0..width {
        entries[start + q] = vec![(target + q, Int::one())];
    }
    SparseMatrix::from_column_entries(rows, entries)
}

fn rows_cols(
    m: &SparseMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> SparseMatrix {
    let entries = cols
        .map(|c| {
            m.column(c)
                .iter()
                .filter(|(r, _)| rows.contains(r))
                .map(|(r, x)| (r - rows.start, x.clone()))
                .collect()
        })
        .collect();
    SparseMatrix::from_column_entries(rows.len(), entries)
}

/// Builds the sequence
/// `… → H_n(H;M) → H_n(G;M) → H_n(G,H;M) → H_{n-1}(H;M) → …`
/// for `n` in `degrees` (down to the `H_0` tail when the range starts at 0)
/// and checks exactness at every slot and the Shapiro identification.
pub fn verify_takasu_les(
    h: &Subgroup,
    m: &GModule,
    degrees: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<LesCertificate> {
    let g = h.group();
    if m.group() != g {
        return Err(Error::GroupMismatch(
            "module is not over the ambient group".into(),
        ));
    }
    let (lo, hi) = (*degrees.start(), *degrees.end());
    if lo > hi {
        return Err(Error::Invalid("empty degree range".into()));
    }
    budget.check_degree("long exact sequence", hi)?;
    let len = hi + 2;
    let sm = standard_modules(h);
    let pi = resolve(&sm.i_module, len, true, budget)?;
    let pz = resolve(&GModule::trivial(g), len, true, budget)?;
    let p = horseshoe(h, &pi, &pz)?;
    let ti = tensor(&pi.to_perm_complex(), m)?;
    let tz = tensor(&pz.to_perm_complex(), m)?;
    let tp = tensor(&p.to_perm_complex(), m)?;
    let hom = |t: &TensorComplex, n: usize| t.complex.homology(n);
    let hp: Vec<Homology> = (0..=hi).map(|n| hom(&tp, n)).collect::<Result<_>>()?;
    let hz: Vec<Homology> = (0..=hi).map(|n| hom(&tz, n)).collect::<Result<_>>()?;
    let hi_: Vec<Homology> = (0..=hi).map(|n| hom(&ti, n)).collect::<Result<_>>()?;
    // i_n : H_n(P'⊗M) → H_n(P⊗M)
    let inc =
        |n: usize| induced_by_matrix(&block_map(&ti, &tp, n, 0, 0, pi.rank(n)), &hi_[n], &hp[n]);
    // p_n : H_n(P⊗M) → H_n(P''⊗M)
    let proj = |n: usize| -> Result<AbelianMap> {
        let r = pi.rank(n);
        let start = tp.offsets[n][r];
        let entries = (0..tp.complex.dim(n))
            .map(|c| {
                if c >= start {
                    vec![(c - start, Int::one())]
                } else {
                    vec![]
                }
            })
            .collect();
        induced_by_matrix(
            &SparseMatrix::from_column_entries(tz.complex.dim(n), entries),
            &hp[n],
            &hz[n],
        )
    };
    // δ_n : H_n(P''⊗M) → H_{n-1}(P'⊗M), the P' rows of the P'' columns of ∂_n
    let conn = |n: usize| -> Result<AbelianMap> {
        let d = tp.complex.boundary(n);
        let rows = 0..tp.offsets[n - 1][pi.rank(n - 1)];
        let cols = tp.offsets[n][pi.rank(n)]..tp.complex.dim(n);
        induced_by_matrix(&rows_cols(&d, rows, cols), &hz[n], &hi_[n - 1])
    };
    let zero_group = FgAbGroup::trivial();
    let mut slots = Vec::new();
    for n in (lo..=hi).rev() {
        let pn = proj(n)?;
        let dn = if n == 0 {
            AbelianMap::zero(&hz[0].group, &zero_group)
        } else {
            conn(n)?
        };
        let in_from_above = inc(n)?;
        // exactness at X_n: Z_{n+1} → X_n → Y_n
        let c = check_exact(&in_from_above, &pn)?;
        slots.push(LesSlot {
            degree: n,
            kind: SlotKind::Subgroup,
            group: hp[n].group.clone(),
            outgoing: pn.clone(),
            exact: c.exact,
            kernel: c.kernel,
            image: c.image,
        });
        let c = check_exact(&pn, &dn)?;
        slots.push(LesSlot {
            degree: n,
            kind: SlotKind::Group,
            group: hz[n].group.clone(),
            outgoing: dn.clone(),
            exact: c.exact,
            kernel: c.kernel,
            image: c.image,
        });
        if n >= 1 {
            let next = inc(n - 1)?;
            let c = check_exact(&dn, &next)?;
            slots.push(LesSlot {
                degree: n,
                kind: SlotKind::Pair,
                group: hi_[n - 1].group.clone(),
                outgoing: next,
                exact: c.exact,
                kernel: c.kernel,
                image: c.image,
            });
        }
    }
    let shapiro = shapiro_checks(h, m, &p, &tp, &hp, lo..=hi, budget)?;
    let exact = slots.iter().all(|s| s.exact);
    let shapiro_ok = shapiro
        .iter()
        .all(|s| s.is_iso && s.subgroup_homology == s.map.source);
    Ok(LesCertificate {
        degrees: (lo, hi),
        slots,
        shapiro,
        exact,
        shapiro_ok,
    })
}

/// `Z[G] ⊗_{Z[H]} Q_H → P` lifting the identity of `Z[G/H]`, tensored with `M`.
fn shapiro_checks(
    h: &Subgroup,
    m: &GModule,
    p: &FreeResolution,
    tp: &TensorComplex,
    hp: &[Homology],
    degrees: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<Vec<ShapiroCheck>> {
    let hi = *degrees.end();
    let len = hi + 2;
    let (hg, _) = h.as_group();
    let qh = resolve(&GModule::trivial(&hg), len, true, budget)?;
    let sm = standard_modules(h);
    let mut base = IntMatrix::zeros(sm.cosets.len(), 1);
    base[(0, 0)] = Int::one();
    let q = induce_resolution(&qh, h, &sm.perm, &base)?;
    let target = p.to_perm_complex();
    let rhs0: Vec<Vec<Int>> = (0..q.rank(0)).map(|j| q.augmentation().column(j)).collect();
    let lift = lift_resolution(&q, &target, 0, &p.expanded_augmentation(), &rhs0, len)?;
    let tq = tensor(&q.to_perm_complex(), m)?;
    let comps = tensor_lift(&lift, &target, m, &tq, tp);
    let f = ChainMap::new(&tq.complex, &tp.complex, 0, comps)?;
    let direct = group_homology(&m.restrict(h)?, hi + 1, budget)?;
    degrees
        .map(|n| {
            let hs = tq.complex.homology(n)?;
            let map = induced_map(&f, &hs, &hp[n])?;
            Ok(ShapiroCheck {
                degree: n,
                subgroup_homology: direct[n].clone(),
                is_iso: map.is_iso(),
                map,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    #[test]
    fn horseshoe_is_exact() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let h = Subgroup::generated(&s3, &[2]).unwrap();
        let sm = standard_modules(&h);
        let b = Budget::default();
        let pi = resolve(&sm.i_module, 4, true, &b).unwrap();
        let pz = resolve(&GModule::trivial(&s3), 4, true, &b).unwrap();
        horseshoe(&h, &pi, &pz).unwrap().verify_exact().unwrap();
    }

    #[test]
    fn c4_c2_sequence() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let h = Subgroup::generated(&g, &[2]).unwrap();
        let c = verify_takasu_les(&h, &GModule::trivial(&g), 0..=3, &Budget::default()).unwrap();
        assert!(c.exact && c.shapiro_ok, "{c:?}");
        assert_eq!(
            c.slot(SlotKind::Subgroup, 1).unwrap().group.to_string(),
            "Z/2"
        );
        assert_eq!(c.slot(SlotKind::Group, 1).unwrap().group.to_string(), "Z/4");
        assert_eq!(c.slot(SlotKind::Pair, 1).unwrap().group.to_string(), "Z/2");
        assert!(c
            .slot(SlotKind::Subgroup, 1)
            .unwrap()
            .outgoing
            .is_injective());
    }

    #[test]
    fn klein_four_splits() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let g = FiniteGroup::direct_product(&c2, &c2).unwrap();
        let h = Subgroup::generated(&g, &[1]).unwrap();
        assert_eq!(h.order(), 2);
        let c = verify_takasu_les(&h, &GModule::trivial(&g), 0..=3, &Budget::default()).unwrap();
        assert!(c.exact && c.shapiro_ok);
        assert!(c.connecting_maps().all(|d| d.is_zero()));
    }

    #[test]
    fn non_constant_coefficients() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let h = Subgroup::generated(&s3, &[2]).unwrap();
        for m in [
            GModule::regular(&s3),
            GModule::permutation(&h),
            GModule::trivial_mod(&s3, 3).unwrap(),
        ] {
            let c = verify_takasu_les(&h, &m, 0..=3, &Budget::default()).unwrap();
            assert!(c.exact && c.shapiro_ok, "{}", m.name());
        }
    }
}
