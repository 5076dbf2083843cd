use lindmap::families::MapFamily;
use lindmap::linalg::{self, ComplexMatrix};
use lindmap::superop::{dissipator, DissipatorTerm, SuperOp};
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn matrix(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), d * d).prop_map(|v| ComplexMatrix::from_row_major(v).unwrap())
}

fn hermitian(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(d).prop_map(|a| (&a + &a.adjoint()).scale_real(0.5))
}

fn family_member() -> impl Strategy<Value = SuperOp> {
    prop_oneof![
        (-0.5f64..0.5).prop_map(|g| MapFamily::LambdaGamma.build(g).unwrap()),
        (0.0f64..0.5).prop_map(|a| MapFamily::PhiAlpha.build(a).unwrap()),
        (0.0f64..0.25).prop_map(|a| MapFamily::Phi2Alpha.build(a).unwrap()),
        (0.0f64..1.0).prop_map(|b| MapFamily::ChoiMapF.build(b).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maps_are_linear(s in family_member(), a in complex(), b in complex(), seed in any::<u64>()) {
        let d = s.dim();
        let x = ComplexMatrix::from_fn(d, |i, j| C64::new(((seed >> (i + 3 * j)) & 7) as f64, i as f64 - j as f64));
        let y = ComplexMatrix::from_fn(d, |i, j| C64::new((i * j) as f64, ((seed >> (2 * i + j)) & 3) as f64));
        let lhs = s.apply(&(&x.scale(a) + &y.scale(b))).unwrap();
        let rhs = &s.apply(&x).unwrap().scale(a) + &s.apply(&y).unwrap().scale(b);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn families_preserve_hermiticity(s in family_member(), seed in 0u64..1000) {
        let h = lindmap::states::random_mixed(s.dim(), &mut lindmap::states::rng_from_seed(seed));
        prop_assert!(s.apply(h.matrix()).unwrap().hermiticity_deviation() < 1e-12);
    }

    // With the {JJ†, X} anticommutator the trace vanishes when JJ† and J†J
    // agree, i.e. for normal jumps, and for jump sets with ΣJJ† = ΣJ†J.
    #[test]
    fn dissipators_annihilate_trace(h in hermitian(3), x in matrix(3), g in -2.0f64..2.0) {
        let out = dissipator(&DissipatorTerm::new(g, h.clone())).apply(&x).unwrap();
        prop_assert!(out.trace().norm() < 1e-12);
        let u = linalg::eig_hermitian(&h).unwrap();
        let vecs = u.eigenvectors.unwrap();
        let unitary = ComplexMatrix::from_fn(3, |i, k| vecs[k][i]);
        let out = dissipator(&DissipatorTerm::new(g, unitary)).apply(&x).unwrap();
        prop_assert!(out.trace().norm() < 1e-12);
        let cycle = lindmap::families::choi_a_jumps()
            .into_iter()
            .map(|a| dissipator(&DissipatorTerm::new(g, a)))
            .fold(SuperOp::zero(3), |acc, d| acc.add(&d).unwrap());
        prop_assert!(cycle.apply(&x).unwrap().trace().norm() < 1e-12);
    }

    #[test]
    fn eigen_reconstruction(h in hermitian(6)) {
        let spec = linalg::eig_hermitian(&h).unwrap();
        let rebuilt = spec.reconstruct().unwrap();
        prop_assert!(rebuilt.max_abs_diff(&h) < 1e-10);
        prop_assert!(spec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn trace_norm_bounds_trace(h in hermitian(5)) {
        prop_assert!(linalg::trace_norm(&h).unwrap() + 1e-12 >= h.trace().re.abs());
    }

    #[test]
    fn partial_transpose_is_an_involution(m in matrix(8), party in 0usize..3) {
        let dims = [2, 2, 2];
        let twice = m.partial_transpose(&dims, party).unwrap().partial_transpose(&dims, party).unwrap();
        prop_assert_eq!(twice, m);
    }

    #[test]
    fn kron_is_associative(a in matrix(2), b in matrix(2), c in matrix(3)) {
        let l = a.kron(&b).kron(&c);
        let r = a.kron(&b.kron(&c));
        prop_assert!(l.max_abs_diff(&r) < 1e-14);
    }

    #[test]
    fn dissipator_and_explicit_routes_agree(g in -0.5f64..0.5, a in 0.0f64..0.5, b in 0.0f64..1.5) {
        for (f, p) in [(MapFamily::LambdaGamma, g), (MapFamily::PhiAlpha, a), (MapFamily::Phi2Alpha, a),
                       (MapFamily::PhiCBeta, b), (MapFamily::ChoiMapF, b)] {
            let diff = f.build(p).unwrap().max_abs_diff(&f.build_explicit(p).unwrap());
            prop_assert!(diff < 1e-12, "{} at {}: {}", f, p, diff);
        }
    }
}
