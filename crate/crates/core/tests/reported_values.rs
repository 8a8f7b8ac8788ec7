//! Dimensions stated in the literature for the fixture algebras.

use cocycles_core::algebra::{derivations, s4_span};
use cocycles_core::constructors::{
    chevalley_rank2, derivation_extension, reduced_polynomial, sl, zassenhaus_der, RootType,
};
use cocycles_core::forms::{cyclic_forms, invariant_forms, z2_comm};
use cocycles_core::verify::{check_char3_rank2, Verdict};
use cocycles_core::FieldSpec;

fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime_with_override(p, true).unwrap()
}

#[test]
fn sl2_has_five_commutative_cocycles() {
    assert_eq!(
        z2_comm(&sl(2, FieldSpec::rationals()).unwrap())
            .unwrap()
            .dim(),
        5
    );
}

#[test]
fn witt_zassenhaus_cocycles_have_dimension_p_to_the_n() {
    for (p, n) in [(5u64, 1u32), (7, 1), (5, 2)] {
        let w = zassenhaus_der(fp(p), n).unwrap().algebra;
        assert_eq!(z2_comm(&w).unwrap().dim(), p.pow(n) as usize, "p={p} n={n}");
    }
}

#[test]
fn simple_fixtures_have_no_cyclic_forms() {
    let q = FieldSpec::rationals();
    for l in [
        sl(2, q).unwrap(),
        sl(3, q).unwrap(),
        zassenhaus_der(fp(5), 1).unwrap().algebra,
    ] {
        assert_eq!(cyclic_forms(&l).unwrap().dim(), 0);
    }
}

#[test]
fn sl3_has_none_and_fails_the_degree_five_identity() {
    let l = sl(3, FieldSpec::rationals()).unwrap();
    assert_eq!(z2_comm(&l).unwrap().dim(), 0);
    assert!(s4_span(&l).unwrap().span.is_whole());
}

#[test]
fn sl2_and_w1_satisfy_the_degree_five_identity() {
    for l in [
        sl(2, FieldSpec::rationals()).unwrap(),
        zassenhaus_der(fp(5), 1).unwrap().algebra,
        zassenhaus_der(fp(7), 1).unwrap().algebra,
    ] {
        assert!(z2_comm(&l).unwrap().dim() > 0);
        assert_eq!(s4_span(&l).unwrap().span.dim(), 0);
    }
}

#[test]
fn w1_over_f3_has_one_invariant_form() {
    let w = zassenhaus_der(fp(3), 1).unwrap().algebra;
    assert_eq!(invariant_forms(&w).unwrap().dim(), 1);
}

#[test]
fn extension_by_derivations_inherits_cocycles_of_w1() {
    for (rank, p, want) in [(2usize, 5u64, 5usize), (2, 7, 7), (3, 5, 5)] {
        let f = fp(p);
        let a = reduced_polynomial(f, 1).unwrap();
        let der = derivations(&a).unwrap();
        let ext = derivation_extension(&sl(rank, f).unwrap(), &a, der.basis()).unwrap();
        assert_eq!(ext.dim(), (rank * rank - 1) * p as usize + p as usize);
        assert_eq!(z2_comm(&ext).unwrap().dim(), want, "sl{rank} p={p}");
    }
}

#[test]
fn rank_two_chevalley_algebras_in_characteristic_three() {
    for t in [RootType::A2, RootType::B2, RootType::G2] {
        let l = chevalley_rank2(t, fp(3)).unwrap();
        assert_eq!(z2_comm(&l).unwrap().dim(), 1, "{t}");
        assert_eq!(invariant_forms(&l).unwrap().dim(), 1, "{t}");
        assert_eq!(check_char3_rank2(t).unwrap().verdict, Verdict::Pass);
    }
}
