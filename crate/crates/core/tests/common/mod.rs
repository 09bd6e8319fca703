#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use relhom::exactla::{kernel_basis, ChainComplex, FgAbGroup, Int, IntMatrix, SparseMatrix};
use relhom::groups::FiniteGroup;
use relhom::modres::GModule;

/// Small groups used by the property suites.
pub fn small_groups() -> Vec<FiniteGroup> {
    let c = |n| FiniteGroup::cyclic(n).unwrap();
    let mut gs: Vec<FiniteGroup> = (1..=8).map(c).collect();
    gs.extend((2..=4).map(|n| FiniteGroup::dihedral(n).unwrap()));
    gs.push(FiniteGroup::symmetric(3).unwrap());
    gs.push(FiniteGroup::direct_product(&c(2), &c(2)).unwrap());
    gs.push(FiniteGroup::direct_product(&c(2), &c(3)).unwrap());
    gs.push(FiniteGroup::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap());
    gs
}

/// `H_i(C_m; Z)`.
pub fn cyclic_homology(m: i64, i: usize) -> FgAbGroup {
    match i {
        0 => FgAbGroup::free(1),
        _ if i % 2 == 1 => FgAbGroup::cyclic(m),
        _ => FgAbGroup::trivial(),
    }
}

/// Trivial, regular, or sign; sign falls back to regular where undefined.
pub fn module(g: &FiniteGroup, choice: usize) -> GModule {
    match choice % 3 {
        0 => GModule::trivial(g),
        1 => GModule::regular(g),
        _ => sign(g).unwrap_or_else(|| GModule::regular(g)),
    }
}

/// The sign module along a surjection onto `C_2`, if `g` is cyclic of even order.
pub fn sign(g: &FiniteGroup) -> Option<GModule> {
    if !g.is_standard_cyclic() || g.order() % 2 == 1 {
        return None;
    }
    GModule::from_generators(
        g,
        &[1],
        &[IntMatrix::from_rows(&[vec![-1i64]])],
        None,
        "sign",
    )
    .ok()
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    if rows == 0 {
        return IntMatrix::zeros(0, cols);
    }
    let v: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&v)
}

/// A random complex whose boundaries factor through kernel bases.
pub fn random_complex(seed: u64) -> ChainComplex {
    let mut rng = StdRng::seed_from_u64(seed);
    let len = rng.gen_range(2..=4);
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=5)).collect();
    let mut bs = vec![random_matrix(&mut rng, dims[0], dims[1], 4)];
    for n in 2..len {
        let k = kernel_basis(&bs[n - 2]);
        let r = random_matrix(&mut rng, k.cols(), dims[n], 3);
        bs.push(k.mul(&r));
    }
    ChainComplex::new(dims, bs.iter().map(SparseMatrix::from_dense).collect()).unwrap()
}

/// A unimodular matrix with its inverse, from elementary operations.
pub fn random_unimodular(rng: &mut StdRng, n: usize) -> (IntMatrix, IntMatrix) {
    let (mut u, mut ui) = (IntMatrix::identity(n), IntMatrix::identity(n));
    if n == 0 {
        return (u, ui);
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        if n == 1 || rng.gen_bool(0.2) {
            u.negate_row(i);
            ui.negate_col(i);
            continue;
        }
        let j = (i + rng.gen_range(1..n)) % n;
        let k = Int::from(rng.gen_range(-3i64..=3));
        u.row_sub_mul(i, j, &k);
        ui.col_sub_mul(j, i, &-&k);
    }
    (u, ui)
}
