//! Representation arithmetic against explicit real matrices.

use std::f64::consts::PI;

use eqob::group::{cyclic_group, dihedral_group, elem_ab_product, subgroups, FiniteGroup, Subgroup};
use eqob::rep::{
    euler_class, fixed_dim, irreducibles, reduced_regular, restrict_to_cyclic, EulerClassValue, IrredLabel, RealRep,
    RepFamily,
};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn rotation(theta: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()])
}

/// Exponent data of every element: `g^k` for `C_n`, `x^a y^b` for `D_n`,
/// digits for `L_n`.
fn coordinates(g: &FiniteGroup, family: RepFamily) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new(); g.order()];
    match family {
        RepFamily::Cyclic => {
            let gen = g.generator("g").unwrap_or(g.identity());
            for k in 0..g.order() {
                out[g.pow(gen, k)] = vec![k as u64];
            }
        }
        RepFamily::Dihedral => {
            let (x, y) = (g.generator("x").unwrap(), g.generator("y").unwrap());
            for a in 0..g.order() / 2 {
                for b in 0..2 {
                    out[g.mul(g.pow(x, a), g.pow(y, b))] = vec![a as u64, b as u64];
                }
            }
        }
        RepFamily::ElemAb => {
            for a in g.elements() {
                out[a] = g.elem_ab_digits(a).into_iter().map(|(_, d)| d as u64).collect();
            }
        }
    }
    out
}

fn radices(g: &FiniteGroup) -> Vec<u64> {
    g.elem_ab_digits(0).into_iter().map(|(p, _)| p).collect()
}

fn irred_matrix(label: &IrredLabel, family: RepFamily, n: u64, coord: &[u64], radices: &[u64]) -> DMatrix<f64> {
    let one = |v: f64| DMatrix::from_element(1, 1, v);
    match (label, family) {
        (IrredLabel::Triv, _) => one(1.0),
        (IrredLabel::Sign, RepFamily::Cyclic) => one(if coord[0] % 2 == 0 { 1.0 } else { -1.0 }),
        (IrredLabel::Sign, RepFamily::Dihedral) => one(if coord[1] == 0 { 1.0 } else { -1.0 }),
        (IrredLabel::Rot(r), _) => rotation(2.0 * PI * (*r * coord[0]) as f64 / n as f64),
        (IrredLabel::RotHat(r), _) => {
            let reflect = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
            let rot = rotation(2.0 * PI * (*r * coord[0]) as f64 / n as f64);
            if coord[1] == 1 {
                rot * reflect
            } else {
                rot
            }
        }
        (IrredLabel::ExtChar(c), _) => {
            let turns: f64 = c.iter().zip(coord).zip(radices).map(|((a, e), p)| (a * e) as f64 / *p as f64).sum();
            if label.dim(n) == 1 {
                one((2.0 * PI * turns).cos().round())
            } else {
                rotation(2.0 * PI * turns)
            }
        }
        _ => unreachable!(),
    }
}

/// `dim L^K` as the numerical rank of the averaging projector.
fn numeric_fixed_dim(label: &IrredLabel, family: RepFamily, n: u64, g: &FiniteGroup, k: &Subgroup) -> u64 {
    let coords = coordinates(g, family);
    let radices = radices(g);
    let d = label.dim(n) as usize;
    let mut p = DMatrix::<f64>::zeros(d, d);
    for &a in k.elements() {
        p += irred_matrix(label, family, n, &coords[a], &radices);
    }
    p /= k.order() as f64;
    p.singular_values().iter().filter(|s| **s > 1e-8).count() as u64
}

fn family_group(family: RepFamily, n: u64) -> FiniteGroup {
    match family {
        RepFamily::Cyclic => cyclic_group(n as usize),
        RepFamily::Dihedral => dihedral_group(n as usize),
        RepFamily::ElemAb => elem_ab_product(n as usize).unwrap(),
    }
}

fn check_against_matrices(family: RepFamily, n: u64) {
    let g = family_group(family, n);
    let subs = subgroups(&g).unwrap();
    for label in irreducibles(family, n).unwrap() {
        let v = RealRep::from_terms(family, n, [(label.clone(), 1)]).unwrap();
        for k in subs.all() {
            let exact = fixed_dim(&v, k).unwrap();
            let numeric = numeric_fixed_dim(&label, family, n, &g, k);
            assert_eq!(exact, numeric, "{}{n}, {label}, |K| = {}", family.letter(), k.order());
        }
    }
}

#[test]
fn representations_are_homomorphisms() {
    for (family, n) in [(RepFamily::Cyclic, 12), (RepFamily::Dihedral, 9), (RepFamily::ElemAb, 12)] {
        let g = family_group(family, n);
        let coords = coordinates(&g, family);
        let radices = radices(&g);
        for label in irreducibles(family, n).unwrap() {
            let rho = |a: usize| irred_matrix(&label, family, n, &coords[a], &radices);
            for a in g.elements() {
                for b in g.elements() {
                    let diff = rho(g.mul(a, b)) - rho(a) * rho(b);
                    assert!(diff.amax() < 1e-9, "{}{n} {label}", family.letter());
                }
            }
        }
    }
}

#[test]
fn fixed_dims_match_matrices_cyclic() {
    for n in 1..=30 {
        check_against_matrices(RepFamily::Cyclic, n);
    }
}

#[test]
fn fixed_dims_match_matrices_dihedral() {
    for n in (1..=29).step_by(2) {
        check_against_matrices(RepFamily::Dihedral, n);
    }
}

#[test]
fn fixed_dims_match_matrices_elem_ab() {
    for n in [2, 4, 6, 8, 12, 18, 30] {
        check_against_matrices(RepFamily::ElemAb, n);
    }
}

#[test]
fn reduced_regular_dimensions() {
    for n in 2..=30u64 {
        assert_eq!(reduced_regular(RepFamily::Cyclic, n).unwrap().dim(), n - 1);
    }
    for n in (3..=29u64).step_by(2) {
        assert_eq!(reduced_regular(RepFamily::Dihedral, n).unwrap().dim(), n - 1);
    }
}

fn rep_for(family: RepFamily, n: u64, mults: &[u64]) -> RealRep {
    let labels = irreducibles(family, n).unwrap();
    RealRep::from_terms(family, n, labels.into_iter().zip(mults.iter().copied())).unwrap()
}

fn mults() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..3, 16)
}

fn cyclic_case() -> impl Strategy<Value = (u64, Vec<u64>, Vec<u64>)> {
    (2u64..=30, mults(), mults())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fixed_dim_additive_and_antitone((n, a, b) in cyclic_case()) {
        let g = cyclic_group(n as usize);
        let v = rep_for(RepFamily::Cyclic, n, &a);
        let w = rep_for(RepFamily::Cyclic, n, &b);
        let vw = v.direct_sum(&w).unwrap();
        prop_assert_eq!(vw.dim(), v.dim() + w.dim());
        let subs = subgroups(&g).unwrap();
        for k in subs.all() {
            prop_assert_eq!(fixed_dim(&vw, k).unwrap(), fixed_dim(&v, k).unwrap() + fixed_dim(&w, k).unwrap());
            prop_assert!(fixed_dim(&v, k).unwrap() <= v.dim());
            for l in subs.all() {
                if k.is_subgroup_of(l) {
                    prop_assert!(fixed_dim(&v, l).unwrap() <= fixed_dim(&v, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn euler_class_multiplicative((n, mut a, mut b) in cyclic_case()) {
        // drop trivial summands, keep sign multiplicities even
        a[0] = 0;
        b[0] = 0;
        if n % 2 == 0 {
            a[1] -= a[1] % 2;
            b[1] -= b[1] % 2;
        }
        let v = rep_for(RepFamily::Cyclic, n, &a);
        let w = rep_for(RepFamily::Cyclic, n, &b);
        let ev = euler_class(&v).unwrap().value;
        let ew = euler_class(&w).unwrap().value;
        let evw = euler_class(&v.direct_sum(&w).unwrap()).unwrap().value;
        match (ev, ew, evw) {
            (EulerClassValue::ModN(x), EulerClassValue::ModN(y), EulerClassValue::ModN(z)) => {
                prop_assert_eq!((x * y) % n, z);
            }
            other => prop_assert!(false, "unexpected parity values {:?}", other),
        }
    }

    #[test]
    fn dihedral_restriction_preserves_fixed_dims(n in (1u64..=14).prop_map(|k| 2 * k + 1), a in mults()) {
        let v = rep_for(RepFamily::Dihedral, n, &a);
        let w = restrict_to_cyclic(&v).unwrap();
        prop_assert_eq!(w.dim(), v.dim());
        let gd = dihedral_group(n as usize);
        let gc = cyclic_group(n as usize);
        let x = gd.generator("x").unwrap();
        let gen = gc.generator("g").unwrap();
        for d in (1..=n).filter(|d| n % d == 0) {
            let kd = Subgroup::generated(&gd, &[gd.pow(x, (n / d) as usize)]);
            let kc = Subgroup::generated(&gc, &[gc.pow(gen, (n / d) as usize)]);
            prop_assert_eq!(fixed_dim(&v, &kd).unwrap(), fixed_dim(&w, &kc).unwrap());
        }
    }

    #[test]
    fn square_free_euler_zero_has_prime_fixed_points(
        n in (2u64..=30).prop_filter("square free", |n| eqob::numtheory::is_square_free(*n)),
        mut a in mults(),
    ) {
        a[0] = 0;
        let v = rep_for(RepFamily::Cyclic, n, &a);
        if !euler_class(&v).unwrap().is_nonzero() {
            for (p, _) in eqob::numtheory::factorize(n) {
                prop_assert!(eqob::rep::fixed_dim_cyclic(&v, p).unwrap() > 0, "C{} V = {} p = {}", n, v, p);
            }
        }
    }

    #[test]
    fn json_round_trip((n, a, _b) in cyclic_case()) {
        let v = rep_for(RepFamily::Cyclic, n, &a);
        let s = serde_json::to_string(&v).unwrap();
        let back: RealRep = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, v);
    }
}
