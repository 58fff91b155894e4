use proptest::prelude::*;
use sl4cube::correspond::{ddag_scaled, theta_scaled};
use sl4cube::cube::{distance, Hypercube, ModuleOp, QMatrix, TBasisKind};
use sl4cube::exact::{factorial, frac, int, pow2};
use sl4cube::polyspace::*;
use sl4cube::sl4core::GeneratorId;
use sl4cube::tensorspace::{act_abstract, act_concrete, fix_inner, profile_of, FixBasis, FixVec};
use sl4cube::Rational;

fn polyvec(max_n: u32) -> impl Strategy<Value = PolyVec> {
    (0..=max_n, any::<bool>()).prop_flat_map(|(n, starred)| {
        let tag = if starred {
            BasisTag::Starred
        } else {
            BasisTag::Monomial
        };
        let ps = enumerate_profiles(n);
        proptest::collection::vec(-5i64..=5, ps.len()).prop_map(move |cs| {
            PolyVec::from_terms(tag, ps.iter().zip(cs).map(|(p, c)| (*p, int(c))))
        })
    })
}

fn pair(max_n: u32) -> impl Strategy<Value = (u32, PolyVec, PolyVec)> {
    (0..=max_n).prop_flat_map(|n| (Just(n), polyvec_n(n), polyvec_n(n)))
}

fn polyvec_n(n: u32) -> impl Strategy<Value = PolyVec> {
    let ps = enumerate_profiles(n);
    (
        any::<bool>(),
        proptest::collection::vec(-5i64..=5, ps.len()),
    )
        .prop_map(move |(starred, cs)| {
            let tag = if starred {
                BasisTag::Starred
            } else {
                BasisTag::Monomial
            };
            PolyVec::from_terms(tag, ps.iter().zip(cs).map(|(p, c)| (*p, int(c))))
        })
}

fn gen_id() -> impl Strategy<Value = GeneratorId> {
    (0usize..6).prop_map(|k| GeneratorId::all()[k])
}

/// Evaluates at (x,y,z,w) directly, computing x* = (x+y+z+w)/2 etc. by hand.
fn eval(v: &PolyVec, pt: &[Rational; 4]) -> Rational {
    let [x, y, z, w] = pt.clone();
    let vars = match v.tag() {
        BasisTag::Monomial => [x, y, z, w],
        BasisTag::Starred => {
            let h = frac(1, 2);
            [
                &h * (&x + &y + &z + &w),
                &h * (&x + &y - &z - &w),
                &h * (&x - &y + &z - &w),
                &h * (&x - &y - &z + &w),
            ]
        }
    };
    v.terms()
        .map(|(p, c)| {
            let e = p.exps();
            (0..4).fold(c.clone(), |acc, a| {
                acc * num_traits::pow(vars[a].clone(), e[a] as usize)
            })
        })
        .sum()
}

fn point() -> impl Strategy<Value = [Rational; 4]> {
    proptest::array::uniform4((-7i64..=7, 1i64..=4)).prop_map(|a| a.map(|(n, d)| frac(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_change_preserves_values(v in polyvec(4), pt in point()) {
        let w = convert_basis(&v, v.tag().other());
        prop_assert_eq!(eval(&v, &pt), eval(&w, &pt));
    }

    #[test]
    fn generators_are_self_adjoint((_, f, g) in pair(4), id in gen_id()) {
        prop_assert_eq!(hermitian(&act_generator(id, &f), &g), hermitian(&f, &act_generator(id, &g)));
    }

    #[test]
    fn sigma_swaps_generators(v in polyvec(4), id in gen_id()) {
        let lhs = sigma(&act_generator(id, &sigma(&v)));
        let rhs = act_generator(id.dual(), &v);
        prop_assert_eq!(convert_basis(&lhs, BasisTag::Monomial), convert_basis(&rhs, BasisTag::Monomial));
    }

    #[test]
    fn lr_bracket(v in polyvec(4), i in 1u8..=3) {
        let lhs = &apply_l(i, &apply_r(i, &v)) - &apply_r(i, &apply_l(i, &v));
        let rhs = &apply_omega(&v) + &v.scale(&int(2));
        prop_assert_eq!(convert_basis(&lhs, BasisTag::Monomial), convert_basis(&rhs, BasisTag::Monomial));
    }

    #[test]
    fn casimir_forms_agree(v in polyvec(3), i in 1u8..=3) {
        let c = convert_basis(&apply_c(i, &v), BasisTag::Monomial);
        let [g1, g2] = apply_c_generators(i, &v);
        prop_assert_eq!(&c, &convert_basis(&apply_c_table(i, &v), BasisTag::Monomial));
        prop_assert_eq!(&c, &convert_basis(&g1, BasisTag::Monomial));
        prop_assert_eq!(&c, &convert_basis(&g2, BasisTag::Monomial));
    }

    #[test]
    fn ddag_scales_form((n, f, g) in pair(3)) {
        let df = ddag_scaled(n, &f).unwrap();
        let dg = ddag_scaled(n, &g).unwrap();
        let lhs = fix_inner(&df.to_basis(FixBasis::B), &dg.to_basis(FixBasis::BTilde));
        prop_assert_eq!(lhs, factorial(n) * pow2(n as i32) * hermitian(&f, &g));
    }

    #[test]
    fn profile_distances(n in 1u32..=8, seed in any::<u64>()) {
        let mask = (1u32 << n) - 1;
        let (x, y, z) = ((seed as u32) & mask, ((seed >> 20) as u32) & mask, ((seed >> 40) as u32) & mask);
        let p = profile_of(n, x, y, z);
        prop_assert_eq!(distance(x, y), p.s + p.t);
        prop_assert_eq!(distance(y, z), p.t + p.u);
        prop_assert_eq!(distance(z, x), p.u + p.s);
    }
}

fn t_element(t: &sl4cube::cube::TAlgebra, coeffs: &[i64]) -> QMatrix {
    let c: Vec<Rational> = coeffs
        .iter()
        .cycle()
        .take(t.dim())
        .map(|&c| int(c))
        .collect();
    t.from_coordinates(TBasisKind::EstarAEstar, &c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn s_is_an_antiautomorphism(n in 0u32..=3, a in proptest::collection::vec(-3i64..=3, 1..12), b in proptest::collection::vec(-3i64..=3, 1..12)) {
        let t = Hypercube::new(n).t_algebra(0);
        let (x, y) = (t_element(&t, &a), t_element(&t, &b));
        let sx = t.s_map(&x).unwrap();
        let sy = t.s_map(&y).unwrap();
        prop_assert_eq!(t.s_map(&x.mul(&y)).unwrap(), sy.mul(&sx));
        prop_assert_eq!(t.s_map(&sx).unwrap(), x.clone());
        prop_assert_eq!(t.dagger(&x.mul(&y)), t.dagger(&y).mul(&t.dagger(&x)));
    }

    #[test]
    fn module_ops_are_multiplications(n in 0u32..=3, a in proptest::collection::vec(-3i64..=3, 1..12)) {
        let t = Hypercube::new(n).t_algebra(0);
        let x = t_element(&t, &a);
        prop_assert_eq!(t.module_op(ModuleOp::A(2), &x).unwrap(), t.a.mul(&x));
        prop_assert_eq!(t.module_op(ModuleOp::A(3), &x).unwrap(), x.mul(&t.a));
        prop_assert_eq!(t.module_op(ModuleOp::AStar(2), &x).unwrap(), x.mul(&t.astar));
        prop_assert_eq!(t.module_op(ModuleOp::AStar(3), &x).unwrap(), t.astar.mul(&x));
    }

    #[test]
    fn theta_scales_form((n, f, g) in pair(3)) {
        let t = Hypercube::new(n).t_algebra(0);
        let tf = theta_scaled(&t, &f).unwrap();
        let tg = theta_scaled(&t, &g).unwrap();
        prop_assert_eq!(tf.inner(&tg), factorial(n) * hermitian(&f, &g));
    }

    #[test]
    fn fix_actions_match_tensor_actions(n in 0u32..=2, cs in proptest::collection::vec(-3i64..=3, 10), starred in any::<bool>(), id in gen_id()) {
        let cube = Hypercube::new(n);
        let basis = if starred { FixBasis::BStarTilde } else { FixBasis::BTilde };
        let mut v = FixVec::zero(n, basis);
        for (p, c) in enumerate_profiles(n).into_iter().zip(cs) {
            v.add_term(p, int(c));
        }
        let lhs = act_abstract(id, &v).lift(&cube);
        let rhs = act_concrete(id, &v.lift(&cube));
        prop_assert_eq!(lhs, rhs);
    }
}
