//! Geometry descriptors: the canonical JSON identity of a geometry, plus the
//! CLI shorthand expansion (`sp:6:2`, `o+:6:2`, `o-:6:2`, `u:4:4`, `thin:4`).

use serde::{Deserialize, Serialize};

use crate::algebra::{FormSpec, Mat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeometryDescriptor {
    Classical {
        field: u16,
        form: FormDescriptor,
    },
    Thin {
        rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDescriptor {
    #[serde(rename = "type")]
    pub form_type: FormType,
    pub dim: usize,
    /// Explicit matrix; a named standard form is generated when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<u8>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormType {
    #[serde(rename = "alternating")]
    Alternating,
    #[serde(rename = "symmetric")]
    Symmetric,
    #[serde(rename = "quadratic-plus")]
    QuadraticPlus,
    #[serde(rename = "quadratic-minus")]
    QuadraticMinus,
    #[serde(rename = "hermitian")]
    Hermitian,
}

impl GeometryDescriptor {
    /// Canonical serialization: sorted keys, no whitespace.  This string is
    /// the cache-key input for everything derived from the geometry.
    pub fn canonical_string(&self) -> String {
        // serde_json::Value maps are BTree-backed, so keys come out sorted.
        let v = serde_json::to_value(self).expect("descriptor serializes");
        v.to_string()
    }

    /// Parse either an inline shorthand (`sp:6:2`, `o+:6:2`, `o-:6:2`,
    /// `u:4:4`, `thin:4`) or a JSON descriptor string.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            return Ok(serde_json::from_str(t)?);
        }
        let parts: Vec<&str> = t.split(':').collect();
        let bad = || Error::BadDescriptor(format!("cannot parse geometry shorthand {t:?}"));
        match parts.as_slice() {
            ["thin", n] => {
                let rank: usize = n.parse().map_err(|_| bad())?;
                Ok(GeometryDescriptor::Thin { rank })
            }
            [name, dim, q] => {
                let dim: usize = dim.parse().map_err(|_| bad())?;
                let field: u16 = q.parse().map_err(|_| bad())?;
                let form_type = match *name {
                    "sp" => FormType::Alternating,
                    "o+" => FormType::QuadraticPlus,
                    "o-" => FormType::QuadraticMinus,
                    "u" | "herm" => FormType::Hermitian,
                    "sym" => FormType::Symmetric,
                    _ => return Err(bad()),
                };
                Ok(GeometryDescriptor::Classical {
                    field,
                    form: FormDescriptor {
                        form_type,
                        dim,
                        gram: None,
                    },
                })
            }
            _ => Err(bad()),
        }
    }

    /// Realize the form this descriptor names.
    pub fn build_form(&self) -> Result<FormSpec> {
        let GeometryDescriptor::Classical { field, form } = self else {
            return Err(Error::BadDescriptor("thin descriptor carries no form".into()));
        };
        let q = *field;
        match &form.gram {
            None => match form.form_type {
                FormType::Alternating => FormSpec::standard_alternating(q, form.dim),
                FormType::QuadraticPlus => FormSpec::standard_plus(q, form.dim),
                FormType::QuadraticMinus => FormSpec::standard_minus(q, form.dim),
                FormType::Hermitian => FormSpec::standard_hermitian(q, form.dim),
                FormType::Symmetric => Err(Error::BadDescriptor(
                    "symmetric descriptor needs an explicit gram".into(),
                )),
            },
            Some(gram) => {
                let rows: Vec<Vec<u8>> = gram.clone();
                if rows.len() != form.dim || rows.iter().any(|r| r.len() != form.dim) {
                    return Err(Error::BadDescriptor("gram shape does not match dim".into()));
                }
                let mat = Mat::from_rows(form.dim, &rows)?;
                let kind = match form.form_type {
                    FormType::Alternating => crate::algebra::FormKind::Alternating,
                    FormType::Symmetric => crate::algebra::FormKind::Symmetric,
                    FormType::Hermitian => crate::algebra::FormKind::Hermitian,
                    FormType::QuadraticPlus | FormType::QuadraticMinus => {
                        crate::algebra::FormKind::Quadratic
                    }
                };
                FormSpec::new(kind, q, form.dim, mat)
            }
        }
    }
}

impl std::fmt::Display for GeometryDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeometryDescriptor::Thin { rank } => write!(f, "thin:{rank}"),
            GeometryDescriptor::Classical { field, form } => {
                let name = match form.form_type {
                    FormType::Alternating => "sp",
                    FormType::Symmetric => "sym",
                    FormType::QuadraticPlus => "o+",
                    FormType::QuadraticMinus => "o-",
                    FormType::Hermitian => "u",
                };
                if form.gram.is_some() {
                    write!(f, "{name}:{}:{field}(custom)", form.dim)
                } else {
                    write!(f, "{name}:{}:{field}", form.dim)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_matches_long_form() {
        let short = GeometryDescriptor::parse("sp:6:2").unwrap();
        let long = GeometryDescriptor::parse(
            r#"{"kind":"classical","field":2,"form":{"type":"alternating","dim":6}}"#,
        )
        .unwrap();
        assert_eq!(short, long);
        assert_eq!(short.canonical_string(), long.canonical_string());

        let thin = GeometryDescriptor::parse("thin:4").unwrap();
        let thin2 = GeometryDescriptor::parse(r#"{"kind":"thin","rank":4}"#).unwrap();
        assert_eq!(thin, thin2);
    }

    #[test]
    fn canonical_string_has_sorted_keys_and_no_whitespace() {
        let d = GeometryDescriptor::parse("o+:6:2").unwrap();
        let s = d.canonical_string();
        assert!(!s.contains(' '));
        let field_pos = s.find("\"field\"").unwrap();
        let form_pos = s.find("\"form\"").unwrap();
        let kind_pos = s.find("\"kind\"").unwrap();
        assert!(field_pos < form_pos && form_pos < kind_pos);
    }

    #[test]
    fn bad_shorthands_are_rejected() {
        assert!(GeometryDescriptor::parse("nope:6:2").is_err());
        assert!(GeometryDescriptor::parse("sp:six:2").is_err());
        assert!(GeometryDescriptor::parse("thin").is_err());
    }

    #[test]
    fn roundtrip_json() {
        for s in ["sp:4:2", "o+:6:2", "o-:6:2", "u:4:4", "thin:5"] {
            let d = GeometryDescriptor::parse(s).unwrap();
            let j = d.canonical_string();
            let back = GeometryDescriptor::parse(&j).unwrap();
            assert_eq!(d, back);
        }
    }
}
