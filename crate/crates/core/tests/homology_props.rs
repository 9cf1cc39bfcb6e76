use std::sync::Arc;

use eqob::complex::{join_cell_count, orbit_join, DEFAULT_CELL_BUDGET};
use eqob::group::{coset_gset, cyclic_group, dihedral_group, left_regular_gset, subgroups, FiniteGroup, GSet};
use eqob::homology::{
    bredon_cochains, bredon_cohomology, group_cohomology, join_trusted_max, trivial_module, AbGroupNF, Budgets,
    ConstantSystem, GroupCohomologyMethod, Presentation,
};
use eqob::numtheory::factorize;
use proptest::prelude::*;

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![(1usize..=5).prop_map(cyclic_group), prop::sample::select(vec![1usize, 3, 5]).prop_map(dihedral_group)]
}

fn some_gset(g: FiniteGroup, pick: prop::sample::Index) -> GSet {
    let g = Arc::new(g);
    let classes = subgroups(&g).unwrap();
    let all: Vec<_> = classes.all().collect();
    coset_gset(g.clone(), all[pick.index(all.len())]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bredon_differentials_square_to_zero(g in small_group(), pick in any::<prop::sample::Index>(), k in 1usize..=3) {
        let set = some_gset(g, pick);
        let x = orbit_join(&set, k, DEFAULT_CELL_BUDGET).unwrap();
        let m = ConstantSystem::new(set.group().clone(), Presentation::free(1));
        let cx = bredon_cochains(&x, &m, k).unwrap();
        let mut n = 0;
        while let (Some(d0), Some(d1)) = (cx.delta(n), cx.delta(n + 1)) {
            prop_assert!(d1.mul(d0).is_zero(), "degree {}", n);
            n += 1;
        }
    }

    #[test]
    fn joins_are_spheres_up_to_homotopy(n in 1usize..=5, k in 1usize..=3) {
        let x = orbit_join(&left_regular_gset(Arc::new(cyclic_group(n))), k, DEFAULT_CELL_BUDGET).unwrap();
        let cx = x.complex();
        prop_assert_eq!(cx.total() as u128, join_cell_count(n, k).unwrap());
        let chain = cx.chain_complex();
        chain.check().unwrap();
        let h = chain.homology(true);
        let top = (n - 1).pow(k as u32);
        for (d, group) in h.iter().enumerate() {
            let want = if d == k - 1 { AbGroupNF::free(top) } else { AbGroupNF::zero() };
            prop_assert_eq!(group, &want);
        }
        let reduced_chi: i64 = h.iter().enumerate().map(|(d, g)| if d % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum();
        prop_assert_eq!(cx.euler_characteristic() - 1, reduced_chi);
    }

    #[test]
    fn coprime_coefficients_vanish(
        n in prop::sample::select(vec![3usize, 5, 7]),
        m in prop::sample::select(vec![3u64, 5, 7, 11, 13]),
        k in 4usize..=5,
    ) {
        prop_assume!(factorize(2 * n as u64).iter().all(|(p, _)| *p != m));
        let g = Arc::new(dihedral_group(n));
        let y = g.generator("y").unwrap();
        let set = coset_gset(g.clone(), &eqob::group::Subgroup::generated(&g, &[y])).unwrap();
        let x = orbit_join(&set, k, DEFAULT_CELL_BUDGET).unwrap();
        let trusted = join_trusted_max(k).unwrap();
        let r = bredon_cohomology(&x, &ConstantSystem::new(g, Presentation::cyclic(m)), trusted, Some(trusted)).unwrap();
        prop_assert_eq!(r.get(0).unwrap(), &AbGroupNF::cyclic(m));
        for i in 1..=trusted {
            prop_assert!(r.get(i).unwrap().is_zero(), "D{} Z/{} degree {}: {}", n, m, i, r.get(i).unwrap());
        }
    }

    #[test]
    fn abgroup_normal_form_matches_snf(rank in 0usize..3, factors in prop::collection::vec(0u64..60, 0..12)) {
        let ints: Vec<eqob::Int> = factors.iter().map(|&f| eqob::Int::from(f)).collect();
        let a = AbGroupNF::from_factors(rank, ints.clone());
        let d = eqob::linalg::invariant_factors(&eqob::linalg::Matrix::diagonal(&ints));
        let zeros = ints.len() - d.len();
        let torsion: Vec<eqob::Int> = d.into_iter().filter(|f| *f != eqob::Int::from(1)).collect();
        prop_assert_eq!(a.rank, rank + zeros);
        prop_assert_eq!(a.torsion().to_vec(), torsion);
    }

    #[test]
    fn abgroup_json_round_trip(rank in 0usize..4, factors in prop::collection::vec(1u64..50, 0..5)) {
        let a = AbGroupNF::from_factors(rank, factors.into_iter().map(eqob::Int::from));
        let back: AbGroupNF = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}

fn methods_agree(g: FiniteGroup, modulus: u64, methods: &[GroupCohomologyMethod]) {
    let m = trivial_module(Arc::new(g), modulus);
    let results: Vec<Vec<AbGroupNF>> =
        methods.iter().map(|&meth| group_cohomology(&m, 4, meth, Budgets::default()).unwrap().groups()).collect();
    for (meth, r) in methods.iter().zip(&results) {
        assert_eq!(r, &results[0], "{} vs {} with Z/{modulus}", meth, methods[0]);
    }
}

#[test]
fn cyclic_methods_agree_through_degree_four() {
    use GroupCohomologyMethod::*;
    for n in 1..=6 {
        methods_agree(cyclic_group(n), 0, &[Periodic, Milnor, Resolution]);
    }
    for n in 1..=4 {
        for modulus in [2, 3, 4] {
            methods_agree(cyclic_group(n), modulus, &[Periodic, Milnor, Resolution]);
        }
    }
}

#[test]
fn dihedral_methods_agree_through_degree_four() {
    use GroupCohomologyMethod::*;
    methods_agree(dihedral_group(3), 0, &[Milnor, Resolution]);
    methods_agree(dihedral_group(3), 2, &[Milnor, Resolution]);
}
