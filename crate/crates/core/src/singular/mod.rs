//! Singular vectors of the vacuum module.
//!
//! A homogeneous vector is singular when `L(1)v = L(2)v = J(1)v = 0`; the
//! remaining positive modes are generated from these three by commutators.

mod matrix;

use serde::Serialize;

pub use matrix::{kernel, mode_matrix, mode_matrix_with, ExactMatrix};

use crate::engine::{Engine, Mode, NormalMonomial, StateVector};
use crate::exactnum::Rat;

/// The three modes whose common kernel defines singular vectors.
pub const SINGULAR_CONDITIONS: [Mode; 3] = [
    Mode { generator: crate::engine::Generator::L, index: 1 },
    Mode { generator: crate::engine::Generator::L, index: 2 },
    Mode { generator: crate::engine::Generator::J, index: 1 },
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionKernel {
    pub mode: String,
    pub kernel_dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularReport {
    pub weight: u32,
    pub basis_size: usize,
    pub kernel_dimension: usize,
    pub vectors: Vec<StateVector>,
    /// `J(0)` applied to the first reported vector.
    pub j0_action: Option<StateVector>,
    /// Kernel dimension of each condition on its own.
    pub conditions: Vec<ConditionKernel>,
}

fn normalize(v: StateVector, weight: u32) -> StateVector {
    let anchor = weight.is_multiple_of(3)
        .then(|| NormalMonomial::new(Vec::new(), vec![3; (weight / 3) as usize]).expect("valid"));
    let pivot = anchor
        .map(|a| v.coefficient(&a))
        .filter(|c| !c.is_zero())
        .or_else(|| v.terms().next().map(|(_, c)| c.clone()));
    match pivot {
        Some(p) => v.scaled(&(Rat::one() / p)),
        None => v,
    }
}

/// Kernel of the stacked system `[L(1); L(2); J(1)]` at weight `h`.
pub fn find_singular(h: u32) -> SingularReport {
    find_singular_with(Engine::global(), h)
}

pub fn find_singular_with(engine: &Engine, h: u32) -> SingularReport {
    assert!(h >= 1, "weight must be positive");
    let blocks: Vec<ExactMatrix> = SINGULAR_CONDITIONS
        .iter()
        .map(|&op| mode_matrix_with(engine, op, h))
        .collect();
    let conditions = SINGULAR_CONDITIONS
        .iter()
        .zip(&blocks)
        .map(|(op, b)| ConditionKernel { mode: op.to_string(), kernel_dimension: kernel(b).len() })
        .collect();
    let stacked = ExactMatrix::stack(&blocks);
    let basis = stacked.col_basis.clone();
    let vectors: Vec<StateVector> = kernel(&stacked)
        .iter()
        .map(|x| normalize(StateVector::from_coordinates(&basis, x), h))
        .collect();
    let j0_action = vectors.first().map(|v| engine.apply_mode(Mode::j(0), v));
    SingularReport {
        weight: h,
        basis_size: basis.len(),
        kernel_dimension: vectors.len(),
        vectors,
        j0_action,
        conditions,
    }
}

/// `v¹²` together with `J(−1)v¹²`, `J(−2)v¹²` and `J(−1)²v¹²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descendants {
    pub v12: StateVector,
    pub j1: StateVector,
    pub j2: StateVector,
    pub j1j1: StateVector,
}

impl Descendants {
    pub fn named(&self) -> [(&'static str, &StateVector); 4] {
        [("v12", &self.v12), ("J1v12", &self.j1), ("J2v12", &self.j2), ("J1J1v12", &self.j1j1)]
    }
}

/// Computed once per process on the shared engine.
pub fn descendants_of_v12() -> &'static Descendants {
    static CACHE: std::sync::OnceLock<Descendants> = std::sync::OnceLock::new();
    CACHE.get_or_init(|| descendants_of_v12_with(Engine::global()))
}

pub fn descendants_of_v12_with(engine: &Engine) -> Descendants {
    let report = find_singular_with(engine, 12);
    assert_eq!(report.kernel_dimension, 1, "weight-12 singular space is not one-dimensional");
    let v12 = report.vectors.into_iter().next().expect("one vector");
    let j1 = engine.apply_mode(Mode::j(-1), &v12);
    let j2 = engine.apply_mode(Mode::j(-2), &v12);
    let j1j1 = engine.apply_mode(Mode::j(-1), &j1);
    Descendants { v12, j1, j2, j1j1 }
}
