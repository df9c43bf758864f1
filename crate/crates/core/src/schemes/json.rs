//! The JSON instance format shared by the CLI and test fixtures.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "prime": 101,            // or "rational": true
//!   "ambient_dim": 2,
//!   "forms": ["x0^2 + x1*x2"],
//!   "points": [[1, 0, 1], [0, 1, 1]],
//!   "tangents": [null, [1, 2, 3]],
//!   "seed": 7
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::FieldTag;
use crate::polyring::{parse_form, Form};
use crate::schemes::{FatPoint, FiniteSubscheme, ProjectivePoint};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawInstance {
    #[serde(default)]
    format_version: Option<u32>,
    #[serde(default)]
    prime: Option<u64>,
    #[serde(default)]
    rational: Option<bool>,
    ambient_dim: usize,
    #[serde(default)]
    forms: Option<Vec<String>>,
    #[serde(default)]
    points: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    tangents: Option<Vec<Option<Vec<i64>>>>,
    #[serde(default)]
    seed: Option<u64>,
}

/// A validated instance: a field, an ambient dimension, and optionally
/// forms and a finite subscheme.
#[derive(Debug, Clone)]
pub struct Instance {
    pub tag: FieldTag,
    pub ambient_dim: usize,
    pub forms: Vec<Form>,
    pub subscheme: Option<FiniteSubscheme>,
    pub seed: Option<u64>,
}

/// Parses and validates the instance format. When `field_override` is
/// given (from CLI flags) it must agree with any field named in the file.
pub fn parse_instance(text: &str, field_override: Option<FieldTag>) -> Result<Instance> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| Error::InstanceFormat(e.to_string()))?;
    if let Some(v) = raw.format_version {
        if v != FORMAT_VERSION {
            return Err(Error::InstanceFormat(format!("unsupported format_version {v}")));
        }
    }

    let file_tag = match (raw.prime, raw.rational) {
        (Some(_), Some(true)) => {
            return Err(Error::InstanceFormat("both prime and rational are set".into()))
        }
        (Some(p), _) => Some(FieldTag::prime(p)?),
        (None, Some(true)) => Some(FieldTag::rational()),
        (None, _) => None,
    };
    let tag = match (file_tag, field_override) {
        (Some(a), Some(b)) => {
            a.ensure_same(&b)?;
            a
        }
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => {
            return Err(Error::InstanceFormat("no field given (prime or rational)".into()))
        }
    };

    let n = raw.ambient_dim;
    if n == 0 {
        return Err(Error::InstanceFormat("ambient_dim must be at least 1".into()));
    }

    let mut forms = Vec::new();
    for text in raw.forms.unwrap_or_default() {
        forms.push(parse_form(&text, n, tag)?);
    }

    let subscheme = match raw.points {
        None => None,
        Some(point_rows) if point_rows.is_empty() => None,
        Some(point_rows) => {
            let tangents = raw.tangents.unwrap_or_else(|| vec![None; point_rows.len()]);
            if tangents.len() != point_rows.len() {
                return Err(Error::InstanceFormat(format!(
                    "{} tangents for {} points",
                    tangents.len(),
                    point_rows.len()
                )));
            }
            let mut fat_points = Vec::with_capacity(point_rows.len());
            for (coords, tangent) in point_rows.iter().zip(&tangents) {
                if coords.len() != n + 1 {
                    return Err(Error::InstanceFormat(format!(
                        "point {coords:?} has {} coordinates, expected {}",
                        coords.len(),
                        n + 1
                    )));
                }
                let base = ProjectivePoint::from_ints(coords, tag)?;
                let fp = match tangent {
                    None => FatPoint::reduced(base),
                    Some(t) => {
                        if t.len() != n + 1 {
                            return Err(Error::InstanceFormat(format!(
                                "tangent {t:?} has {} coordinates, expected {}",
                                t.len(),
                                n + 1
                            )));
                        }
                        let v = t
                            .iter()
                            .map(|&x| crate::exactalg::FieldScalar::from_i64(x, tag))
                            .collect();
                        FatPoint::with_tangent(base, v)?
                    }
                };
                fat_points.push(fp);
            }
            Some(FiniteSubscheme::new(fat_points)?)
        }
    };

    Ok(Instance { tag, ambient_dim: n, forms, subscheme, seed: raw.seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_instance() {
        let text = r#"{
            "format_version": 1,
            "prime": 101,
            "ambient_dim": 2,
            "forms": ["x0^2 + x1*x2"],
            "points": [[1, 0, 1], [0, 1, 1]],
            "tangents": [null, [1, 0, 0]],
            "seed": 7
        }"#;
        let inst = parse_instance(text, None).unwrap();
        assert_eq!(inst.ambient_dim, 2);
        assert_eq!(inst.forms.len(), 1);
        let z = inst.subscheme.unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.degree(), 3);
        assert_eq!(inst.seed, Some(7));
    }

    #[test]
    fn field_disagreement_is_rejected() {
        let text = r#"{ "prime": 7, "ambient_dim": 1 }"#;
        let over = FieldTag::prime(11).unwrap();
        assert!(parse_instance(text, Some(over)).is_err());
    }

    #[test]
    fn missing_field_is_rejected() {
        let text = r#"{ "ambient_dim": 1 }"#;
        assert!(parse_instance(text, None).is_err());
        assert!(parse_instance(text, Some(FieldTag::rational())).is_ok());
    }

    #[test]
    fn composite_modulus_is_rejected() {
        let text = r#"{ "prime": 15, "ambient_dim": 1 }"#;
        assert!(matches!(parse_instance(text, None), Err(Error::NotPrime(15))));
    }
}
