mod common;

use proptest::prelude::*;
use w3_core::engine::{enumerate_basis, Engine, Mode, NormalMonomial, StateVector};
use w3_core::singular::{find_singular, kernel, mode_matrix, ExactMatrix};
use w3_core::Rat;

#[test]
fn per_condition_kernels_at_weight_twelve() {
    let report = find_singular(12);
    let dims: Vec<(String, usize)> =
        report.conditions.iter().map(|c| (c.mode.clone(), c.kernel_dimension)).collect();
    assert_eq!(
        dims,
        vec![("L(1)".to_string(), 26), ("L(2)".to_string(), 40), ("J(1)".to_string(), 26)]
    );
    for c in &report.conditions {
        let op = match c.mode.as_str() {
            "L(1)" => Mode::l(1),
            "L(2)" => Mode::l(2),
            _ => Mode::j(1),
        };
        let m = mode_matrix(op, 12);
        assert_eq!(c.kernel_dimension, m.cols - common::rank(m.entries.clone()), "{}", c.mode);
    }
}

#[test]
fn mode_matrix_shapes() {
    let m = mode_matrix(Mode::l(1), 2);
    assert_eq!((m.rows, m.cols), (0, 1));
    let m = mode_matrix(Mode::l(2), 4);
    assert_eq!((m.rows, m.cols), (1, 3));
    let m = mode_matrix(Mode::l(2), 1);
    assert_eq!((m.rows, m.cols), (0, 0));
}

#[test]
fn mode_matrix_columns_are_mode_images() {
    let engine = Engine::new();
    let m = mode_matrix(Mode::j(1), 7);
    for (j, mono) in m.col_basis.iter().enumerate() {
        let image = engine.apply_mode(Mode::j(1), &StateVector::monomial(mono.clone()));
        let column: Vec<Rat> = (0..m.rows).map(|i| m.get(i, j).clone()).collect();
        assert_eq!(column, image.coordinates(&m.row_basis), "column {mono}");
    }
}

#[test]
fn weight_twelve_vector_is_normalized_and_highest_weight() {
    let report = find_singular(12);
    assert_eq!(report.basis_size, 76);
    let v = &report.vectors[0];
    let anchor = NormalMonomial::new(vec![], vec![3, 3, 3, 3]).unwrap();
    assert_eq!(v.coefficient(&anchor), Rat::one());
    let engine = Engine::global();
    assert_eq!(engine.apply_mode(Mode::l(0), v), v.scaled(&Rat::int(12)));
    for n in 1..=12 {
        assert!(engine.apply_mode(Mode::l(n), v).is_zero(), "L({n})");
        assert!(engine.apply_mode(Mode::j(n), v).is_zero(), "J({n})");
    }
    assert!(report.j0_action.as_ref().is_some_and(StateVector::is_zero));
}

#[test]
fn report_json_has_documented_fields() {
    let json = serde_json::to_value(find_singular(12)).unwrap();
    assert_eq!(json["kernel_dimension"], 1);
    assert_eq!(json["weight"], 12);
    assert_eq!(json["vectors"][0].as_array().unwrap().len(), 41);
}

fn small_matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-4i64..5, c), r).prop_map(move |rows| {
            let entries = rows.into_iter().map(|row| row.into_iter().map(Rat::int).collect()).collect();
            ExactMatrix::from_rows(entries, c)
        })
    })
}

proptest! {
    #[test]
    fn kernel_vectors_are_annihilated(m in small_matrix()) {
        let ker = kernel(&m);
        prop_assert_eq!(ker.len(), m.cols - common::rank(m.entries.clone()));
        for x in &ker {
            prop_assert!(m.mul_vec(x).iter().all(Rat::is_zero));
            prop_assert!(x.iter().any(|c| !c.is_zero()));
        }
        prop_assert_eq!(m.rank(), common::rank(m.entries.clone()));
    }
}

#[test]
fn no_singular_vectors_below_twelve() {
    for h in 1..12 {
        assert_eq!(find_singular(h).kernel_dimension, 0, "weight {h}");
        assert_eq!(find_singular(h).basis_size, enumerate_basis(h).len());
    }
}
