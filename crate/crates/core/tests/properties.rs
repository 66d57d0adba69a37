mod structural;

use nvcat_core::field::Field;
use proptest::prelude::*;
use structural::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn boundary_squares_to_zero(s in sample()) {
        twisted_boundary_squares_to_zero(&s)?;
    }

    #[test]
    fn coboundary_squares_to_zero(s in sample(), a in twist()) {
        twisted_coboundary_squares_to_zero(&s, &a)?;
    }

    #[test]
    fn leibniz(s in sample(), c in cochain_pair()) {
        leibniz_rule(&s, &c)?;
    }

    #[test]
    fn snf_over_rationals(a in matrix(Field::Rationals)) {
        snf_reconstructs(&a)?;
    }

    #[test]
    fn snf_over_prime_field(a in matrix(Field::prime(7).unwrap())) {
        snf_reconstructs(&a)?;
    }

    #[test]
    fn specialization_matches_betti_numbers(s in sample()) {
        specialization_at_one(&s)?;
    }
}
