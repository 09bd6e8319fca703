mod common;

use common::{random_complex, random_matrix, random_unimodular};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::rngs::StdRng;
use rand::SeedableRng;
use relhom::exactla::{
    determinant, induced_map, kernel_basis, rank, smith_decompose, ChainComplex, ChainMap,
    FgAbGroup, Int, IntMatrix, SparseMatrix, Track,
};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..10, 0usize..10, any::<u64>())
        .prop_map(|(r, c, seed)| random_matrix(&mut StdRng::seed_from_u64(seed), r, c, 50))
}

fn scalar_map(c: &ChainComplex, k: i64) -> ChainMap {
    let comps = c
        .dims()
        .iter()
        .map(|&d| SparseMatrix::from_dense(&IntMatrix::identity(d).scale(&Int::from(k))))
        .collect();
    ChainMap::new(c, c, 0, comps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, rng_seed: RngSeed::Fixed(0x5eed), ..ProptestConfig::default() })]

    #[test]
    fn smith_reconstructs(a in matrix()) {
        let d = smith_decompose(&a, Track::ALL);
        let (p, q) = (d.p.unwrap(), d.q.unwrap());
        prop_assert_eq!(p.mul(&a).mul(&q), d.s.clone());
        prop_assert!(determinant(&p).is_unit());
        prop_assert!(determinant(&q).is_unit());
        prop_assert_eq!(p.mul(&d.p_inv.unwrap()), IntMatrix::identity(a.rows()));
        prop_assert_eq!(q.mul(&d.q_inv.unwrap()), IntMatrix::identity(a.cols()));
        for w in d.diagonal.windows(2) {
            prop_assert!(w[1].is_divisible_by(&w[0]));
        }
    }

    #[test]
    fn rank_nullity(a in matrix()) {
        prop_assert_eq!(rank(&a) + kernel_basis(&a).cols(), a.cols());
    }

    #[test]
    fn homology_is_basis_invariant(seed in any::<u64>()) {
        let c = random_complex(seed);
        let mut rng = StdRng::seed_from_u64(seed ^ 1);
        let us: Vec<_> = c.dims().iter().map(|&n| random_unimodular(&mut rng, n)).collect();
        prop_assert_eq!(c.homology_groups().unwrap(), c.change_basis(&us).unwrap().homology_groups().unwrap());
    }

    #[test]
    fn induced_maps_compose(seed in any::<u64>(), k in -4i64..=4, l in -4i64..=4) {
        let c = random_complex(seed);
        let (f, g) = (scalar_map(&c, k), scalar_map(&c, l));
        let fg = f.then(&g);
        for n in 0..c.len() {
            let h = c.homology(n).unwrap();
            let a = induced_map(&f, &h, &h).unwrap();
            let b = induced_map(&g, &h, &h).unwrap();
            prop_assert_eq!(induced_map(&fg, &h, &h).unwrap(), a.then(&b).unwrap());
        }
    }

    #[test]
    fn homotopic_maps_agree(seed in any::<u64>(), k in -3i64..=3) {
        let c = random_complex(seed);
        let mut rng = StdRng::seed_from_u64(seed ^ 2);
        let dims = c.dims().to_vec();
        let top = dims.len() - 1;
        // s_n : C_n → C_{n+1}, zero at the top
        let s: Vec<IntMatrix> = (0..=top)
            .map(|n| if n < top { random_matrix(&mut rng, dims[n + 1], dims[n], 3) } else { IntMatrix::zeros(0, dims[n]) })
            .collect();
        let f = scalar_map(&c, k);
        let comps = (0..=top)
            .map(|n| {
                let mut m = f.component(n).to_dense();
                if n < top {
                    m = m.add(&c.boundary(n + 1).to_dense().mul(&s[n]));
                }
                if n > 0 {
                    m = m.add(&s[n - 1].mul(&c.boundary(n).to_dense()));
                }
                SparseMatrix::from_dense(&m)
            })
            .collect();
        let g = ChainMap::new(&c, &c, 0, comps).unwrap();
        for n in 0..c.len() {
            let h = c.homology(n).unwrap();
            prop_assert_eq!(induced_map(&f, &h, &h).unwrap(), induced_map(&g, &h, &h).unwrap());
        }
    }

    #[test]
    fn abelian_group_normal_form(orders in proptest::collection::vec(0i64..12, 0..5)) {
        let g = FgAbGroup::from_orders(&orders.iter().map(|&x| Int::from(x)).collect::<Vec<_>>());
        let rel = g.relation_matrix();
        prop_assert_eq!(FgAbGroup::presented(g.ngens(), &rel), g.clone());
        let t: Vec<Int> = g.torsion.clone();
        for w in t.windows(2) {
            prop_assert!(w[1].is_divisible_by(&w[0]));
        }
        prop_assert!(t.iter().all(|x| *x > Int::one()));
    }
}
