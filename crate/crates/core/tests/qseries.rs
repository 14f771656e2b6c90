mod common;

use common::IntSeries;
use num_complex::Complex64;
use proptest::prelude::*;
use w3_core::qseries::{
    eta, generic_char_c65, module_character, module_descriptor, parse_complex, q_units, s_tau_char,
    virasoro_min_char, xi, EtaScale, QSeries, VirasoroLabel, DEN,
};
use w3_core::{Error, Rat};

fn coefficients(s: &QSeries, n: i64) -> Vec<i64> {
    (0..n).map(|k| s.coefficient(k * DEN).to_i64().unwrap()).collect()
}

#[test]
fn ising_vacuum() {
    let ch = virasoro_min_char(VirasoroLabel::new(1, 1, 1).unwrap(), q_units(12)).unwrap();
    assert_eq!(coefficients(&ch, 12), vec![1, 0, 1, 1, 2, 2, 3, 3, 5, 5, 7, 8]);
    let oracle = common::xi_oracle(1, 1, 1, q_units(12)).shift(DEN / 48);
    assert_eq!(IntSeries::from_qseries(&ch).truncate(q_units(12)), oracle.truncate(q_units(12)));
}

#[test]
fn conformal_weights_of_small_models() {
    let h = |m, r, s| {
        let ch = virasoro_min_char(VirasoroLabel::new(m, r, s).unwrap(), q_units(2)).unwrap();
        Rat::frac(ch.valuation(), DEN)
    };
    assert_eq!(h(1, 2, 1), Rat::frac(1, 2));
    assert_eq!(h(1, 2, 2), Rat::frac(1, 16));
    assert_eq!(h(2, 3, 1), Rat::frac(3, 2));
    assert_eq!(h(2, 2, 2), Rat::frac(3, 80));
    assert_eq!(h(3, 3, 3), Rat::frac(1, 15));
    assert_eq!(h(3, 4, 3), Rat::frac(2, 3));
    assert_eq!(h(3, 2, 1), Rat::frac(2, 5));
}

#[test]
fn every_minimal_model_character_matches_theta_form() {
    let t = q_units(15);
    for m in 1..=3 {
        for l in VirasoroLabel::all(m) {
            let lib = IntSeries::from_qseries(&xi(l, t).unwrap());
            assert_eq!(lib.truncate(t), common::xi_oracle(m, l.r, l.s, t), "m={m} r={} s={}", l.r, l.s);
        }
    }
}

#[test]
fn generic_vacuum_character() {
    let ch = generic_char_c65(&Rat::zero(), q_units(7)).unwrap();
    assert_eq!(coefficients(&ch, 7), vec![1, 0, 1, 1, 2, 2, 4]);
    let h3 = generic_char_c65(&Rat::int(3), q_units(7)).unwrap();
    assert_eq!(coefficients(&h3, 7), vec![0, 0, 0, 1, 1, 2, 3]);
}

#[test]
fn pentagonal_eta_matches_product() {
    let t = q_units(30);
    let lib = IntSeries::from_qseries(&eta(EtaScale::One, t));
    let oracle = common::euler_product_by_expansion(DEN, t - DEN / 24).shift(DEN / 24);
    assert_eq!(lib, oracle.truncate(t));
    let lib3 = IntSeries::from_qseries(&eta(EtaScale::Three, t));
    let oracle3 = common::euler_product_by_expansion(3 * DEN, t - DEN / 8).shift(DEN / 8);
    assert_eq!(lib3, oracle3.truncate(t));
}

#[test]
fn twisted_s_character_counts_colored_partitions() {
    let s = s_tau_char(q_units(4));
    // q^{1/9 + 2}: partitions of 6 into parts not divisible by three
    assert_eq!(s.coefficient(DEN / 9 + 2 * DEN), Rat::int(common::partitions_avoiding_three(6) as i64));
    assert_eq!(s.coefficient(DEN / 9 + 2 * DEN), Rat::int(7));
    let eq = common::eta_over_eta_third(q_units(4)).shift(DEN / 12);
    assert_eq!(IntSeries::from_qseries(&s), eq.truncate(q_units(4)));
}

#[test]
fn module_characters_have_expected_leading_terms() {
    let t = q_units(6);
    let m0 = module_character(&module_descriptor("M(0)").unwrap(), t);
    assert_eq!(coefficients(&m0, 6), vec![1, 0, 1, 2, 3, 4]);
    let w1 = module_character(&module_descriptor("W_T(tau)(1)").unwrap(), t);
    assert_eq!(w1.leading().map(|(k, c)| (Rat::frac(k, DEN), c.clone())), Some((Rat::frac(17, 45), Rat::one())));
    assert_eq!(module_descriptor("M(3)"), Err(Error::UnknownModule("M(3)".into())));
}

#[test]
fn invalid_labels_are_rejected() {
    assert!(VirasoroLabel::new(2, 1, 2).is_err());
    assert!(VirasoroLabel::new(0, 1, 1).is_err());
    assert!(VirasoroLabel::new(3, 5, 1).is_err());
    assert_eq!(VirasoroLabel::all(3).len(), 10);
}

#[test]
fn complex_parsing() {
    assert_eq!(parse_complex("0.5+2i").unwrap(), Complex64::new(0.5, 2.0));
    assert_eq!(parse_complex("-1-i").unwrap(), Complex64::new(-1.0, -1.0));
    assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
    assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
    for bad in ["", "+", "i2", "1+", "a+bi", "1+2j", "1++2i"] {
        assert!(parse_complex(bad).is_err(), "{bad:?}");
    }
}

#[test]
fn inverse_needs_a_nonzero_leading_term() {
    let s = QSeries::from_terms([(DEN, Rat::int(2))], q_units(3));
    assert!(s.inverse().is_ok());
    assert_eq!(QSeries::zero(q_units(3)).inverse(), Err(Error::ZeroLeadingCoefficient));
}

fn int_series() -> impl Strategy<Value = (QSeries, IntSeries)> {
    (prop::collection::vec((0i64..6 * DEN / 40, -6i64..7), 0..8), 2i64..6).prop_map(|(terms, t)| {
        let trunc = q_units(t);
        let terms: Vec<(i64, i64)> = terms.into_iter().map(|(k, c)| (k * 40, c)).collect();
        let q = QSeries::from_terms(terms.iter().map(|&(k, c)| (k, Rat::int(c))), trunc);
        let mut i = IntSeries::new(trunc);
        for (k, c) in terms {
            i.add_term(k, i128::from(c));
        }
        (q, i)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_naive_convolution((a, ia) in int_series(), (b, ib) in int_series()) {
        let p = a.mul(&b);
        let naive = ia.mul(&ib);
        prop_assert_eq!(p.truncation(), naive.trunc);
        prop_assert_eq!(IntSeries::from_qseries(&p), naive);
    }

    #[test]
    fn truncation_rules((a, _) in int_series(), (b, _) in int_series()) {
        prop_assert_eq!(a.add(&b).truncation(), a.truncation().min(b.truncation()));
        prop_assert!(a.terms().all(|(k, _)| k < a.truncation()));
    }

    #[test]
    fn unit_inverse_round_trip((a, _) in int_series(), shift in 0i64..4) {
        let unit = QSeries::one(a.truncation()).add(&a.shift(DEN / 9 + shift));
        let inv = unit.inverse().unwrap();
        let back = unit.mul(&inv);
        prop_assert_eq!(back.truncate(unit.truncation()), QSeries::one(back.truncation().min(unit.truncation())));
    }
}
