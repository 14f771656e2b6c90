//! Published reference data shipped with the crate, used only for comparison.
//!
//! None of these tables feed the computations; each is checked against an
//! independent recomputation.

use serde::Deserialize;

use crate::engine::StateVector;
use crate::error::{Error, Result};
use crate::singular::descendants_of_v12;
use crate::zhu::BiPoly;

/// Names of the weight-12 singular vector and its descendants, in order.
pub const BUILTIN_NAMES: [&str; 4] = ["v12", "J1v12", "J2v12", "J1J1v12"];

const DESCENDANTS_JSON: &str = include_str!("../data/singular_descendants.json");
const ZHU_IMAGES_JSON: &str = include_str!("../data/zhu_images.json");

#[derive(Deserialize)]
struct Table<T> {
    #[allow(dead_code)]
    description: String,
    #[serde(alias = "vectors", alias = "polynomials")]
    entries: std::collections::BTreeMap<String, T>,
}

fn ordered<T>(json: &str) -> Vec<(&'static str, T)>
where
    T: for<'de> Deserialize<'de>,
{
    let mut table: Table<T> = serde_json::from_str(json).expect("bundled reference data is valid");
    BUILTIN_NAMES
        .iter()
        .map(|&n| (n, table.entries.remove(n).expect("bundled reference data is complete")))
        .collect()
}

/// Published coefficients of `v¹²`, `J(−1)v¹²`, `J(−2)v¹²`, `J(−1)²v¹²`.
pub fn published_descendants() -> Vec<(&'static str, StateVector)> {
    ordered(DESCENDANTS_JSON)
}

/// Published Zhu images of the same four vectors.
pub fn published_zhu_images() -> Vec<(&'static str, BiPoly)> {
    ordered(ZHU_IMAGES_JSON)
}

/// Freshly computed builtin vector by name.
pub fn builtin_vector(name: &str) -> Result<StateVector> {
    if !BUILTIN_NAMES.contains(&name) {
        return Err(Error::UnknownBuiltin(name.to_string()));
    }
    descendants_of_v12()
        .named()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, v)| v.clone())
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_load() {
        let counts: Vec<usize> = published_descendants().iter().map(|(_, v)| v.len()).collect();
        assert_eq!(counts, [41, 51, 70, 78]);
        let counts: Vec<usize> = published_zhu_images().iter().map(|(_, p)| p.len()).collect();
        assert_eq!(counts, [11, 9, 9, 14]);
    }

    #[test]
    fn unknown_builtin() {
        assert_eq!(builtin_vector("v13"), Err(Error::UnknownBuiltin("v13".into())));
    }
}
