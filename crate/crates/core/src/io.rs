//! JSON documents read and written by the command line tool.
//!
//! Chain files come in two forms:
//!
//! ```json
//! {"genus": 4, "torsion": [3, 0, 5]}
//! {"cycles": [{"length": [1, 1], "arc": [1, 2]}, {"length": [2, 1], "arc": "irrational"}]}
//! ```
//!
//! Rationals are `[numerator, denominator]` pairs. Tableau files are
//! `{"genus": g, "rows": [[...], ...]}`.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::chain::{torsion_profile, ArcRatio, ChainOfCycles, TorsionProfile};
use crate::error::{Error, Result};
use crate::invariants::CliffordValue;
use crate::tableau::Tableau;

fn doc_error(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Document {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArcField {
    Rational([u64; 2]),
    Marker(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleDocument {
    pub length: [u64; 2],
    pub arc: ArcField,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycles: Option<Vec<CycleDocument>>,
}

impl ChainDocument {
    pub fn from_profile(p: &TorsionProfile) -> Self {
        ChainDocument {
            genus: Some(p.genus()),
            torsion: Some(p.entries().to_vec()),
            cycles: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| doc_error("chain", e.to_string()))
    }

    pub fn to_chain(&self) -> Result<Option<ChainOfCycles>> {
        let Some(cycles) = &self.cycles else {
            return Ok(None);
        };
        let arcs = cycles
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let field = |name: &str| format!("cycles[{i}].{name}");
                let [ln, ld] = c.length;
                if ln == 0 || ld == 0 {
                    return Err(doc_error(
                        field("length"),
                        format!("{ln}/{ld} is not a positive rational"),
                    ));
                }
                match &c.arc {
                    ArcField::Marker(m) if m == "irrational" => Ok(ArcRatio::Irrational),
                    ArcField::Marker(m) => Err(doc_error(field("arc"), format!("unknown marker {m:?}"))),
                    ArcField::Rational([an, ad]) => {
                        if *ad == 0 {
                            return Err(doc_error(field("arc"), "zero denominator"));
                        }
                        ArcRatio::from_lengths((*an, *ad), (ln, ld)).map_err(|_| {
                            doc_error(
                                field("arc"),
                                format!("{an}/{ad} must lie strictly between 0 and the cycle length"),
                            )
                        })
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        ChainOfCycles::new(arcs)
            .map(Some)
            .map_err(|_| doc_error("cycles", "at least one cycle is required"))
    }

    pub fn to_profile(&self) -> Result<TorsionProfile> {
        match (&self.genus, &self.torsion, &self.cycles) {
            (Some(g), Some(torsion), None) => TorsionProfile::new(*g, torsion.clone()).map_err(|e| match e {
                Error::GenusTooSmall { .. } => doc_error("genus", e.to_string()),
                other => doc_error("torsion", other.to_string()),
            }),
            (None, None, Some(_)) => Ok(torsion_profile(&self.to_chain()?.expect("cycles present"))),
            (Some(_), None, None) => Err(doc_error("torsion", "missing")),
            (None, Some(_), None) => Err(doc_error("genus", "missing")),
            (None, None, None) => Err(doc_error("chain", "expected either genus/torsion or cycles")),
            _ => Err(doc_error("cycles", "cannot be combined with genus/torsion")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableauDocument {
    pub genus: usize,
    pub rows: Vec<Vec<u32>>,
}

impl From<&Tableau> for TableauDocument {
    fn from(t: &Tableau) -> Self {
        TableauDocument {
            genus: t.genus(),
            rows: t.to_rows(),
        }
    }
}

impl TableauDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: TableauDocument = serde_json::from_str(text).map_err(|e| doc_error("tableau", e.to_string()))?;
        doc.check_shape()?;
        Ok(doc)
    }

    /// Non-empty and rectangular; says nothing about ordering or range.
    pub fn check_shape(&self) -> Result<()> {
        let cols = self.rows.first().map_or(0, Vec::len);
        if cols == 0 {
            return Err(doc_error("rows", "grid is empty"));
        }
        if let Some(i) = self.rows.iter().position(|r| r.len() != cols) {
            return Err(doc_error(
                format!("rows[{i}]"),
                format!("has {} entries, expected {cols}", self.rows[i].len()),
            ));
        }
        Ok(())
    }

    pub fn to_tableau(&self) -> Result<Tableau> {
        Tableau::new(self.genus, self.rows.clone())
    }
}

/// A Clifford index in output documents: a number, or `"empty"` when no
/// eligible class exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordField {
    Value(u32),
    Empty,
}

impl From<CliffordValue> for CliffordField {
    fn from(v: CliffordValue) -> Self {
        match v {
            CliffordValue::Value(c) => CliffordField::Value(c),
            CliffordValue::EmptySet { .. } => CliffordField::Empty,
        }
    }
}

impl Serialize for CliffordField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CliffordField::Value(v) => s.serialize_u32(*v),
            CliffordField::Empty => s.serialize_str("empty"),
        }
    }
}

impl<'de> Deserialize<'de> for CliffordField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Value(u32),
            Marker(String),
        }
        match Raw::deserialize(d)? {
            Raw::Value(v) => Ok(CliffordField::Value(v)),
            Raw::Marker(m) if m == "empty" => Ok(CliffordField::Empty),
            Raw::Marker(m) => Err(de::Error::custom(format!("unexpected clifford marker {m:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn direct_form() {
        let doc = ChainDocument::parse(r#"{"genus":4,"torsion":[3,0,5]}"#).unwrap();
        assert_eq!(doc.to_profile().unwrap().entries(), &[3, 0, 5]);
    }

    #[test]
    fn geometric_form() {
        let doc = ChainDocument::parse(
            r#"{"cycles":[{"length":[1,1],"arc":[1,2]},{"length":[3,1],"arc":[1,1]},
                {"length":[1,1],"arc":"irrational"},{"length":[5,2],"arc":[1,1]}]}"#,
        )
        .unwrap();
        let p = doc.to_profile().unwrap();
        assert_eq!((p.genus(), p.entries()), (4, &[3, 0, 5][..]));
    }

    #[test]
    fn errors_name_the_field() {
        let check = |text: &str, field: &str| match ChainDocument::parse(text).and_then(|d| d.to_profile()) {
            Err(Error::Document { field: f, .. }) => assert_eq!(f, field, "{text}"),
            other => panic!("{text}: {other:?}"),
        };
        check(r#"{"cycles":[{"length":[1,1],"arc":[0,1]}]}"#, "cycles[0].arc");
        check(
            r#"{"cycles":[{"length":[1,1],"arc":[1,2]},{"length":[0,1],"arc":[1,2]}]}"#,
            "cycles[1].length",
        );
        check(r#"{"cycles":[{"length":[1,1],"arc":"rational"}]}"#, "cycles[0].arc");
        check(r#"{"genus":3,"torsion":[1,0]}"#, "torsion");
        check(r#"{"genus":3,"torsion":[0]}"#, "torsion");
        check(r#"{"genus":3}"#, "torsion");
        check(r#"{"genus":1,"torsion":[],"cycles":[]}"#, "cycles");
        check(r#"{"cycles":[]}"#, "cycles");
        check(r#"{"genus":"x"}"#, "chain");
    }

    #[test]
    fn tableau_shape_errors() {
        assert!(TableauDocument::parse(r#"{"genus":3,"rows":[]}"#).is_err());
        assert!(TableauDocument::parse(r#"{"genus":3,"rows":[[1,2],[3]]}"#).is_err());
        assert!(TableauDocument::parse(r#"{"genus":3,"rows":[[1,2],[2,3]]}"#).is_ok());
    }

    #[test]
    fn clifford_field_serde() {
        assert_eq!(serde_json::to_string(&CliffordField::Value(4)).unwrap(), "4");
        assert_eq!(serde_json::to_string(&CliffordField::Empty).unwrap(), r#""empty""#);
        assert_eq!(
            serde_json::from_str::<CliffordField>(r#""empty""#).unwrap(),
            CliffordField::Empty
        );
        assert!(serde_json::from_str::<CliffordField>(r#""none""#).is_err());
    }

    fn arb_cycle() -> impl Strategy<Value = CycleDocument> {
        (1u64..50, 1u64..50, prop::option::of((1u64..50, 1u64..50))).prop_map(|(ln, ld, arc)| CycleDocument {
            length: [ln, ld],
            arc: match arc {
                Some((an, ad)) => ArcField::Rational([an, ad]),
                None => ArcField::Marker("irrational".into()),
            },
        })
    }

    proptest! {
        #[test]
        fn chain_documents_round_trip(cycles in prop::collection::vec(arb_cycle(), 1..6), torsion in prop::collection::vec(0u32..9, 0..6)) {
            let geometric = ChainDocument { cycles: Some(cycles), ..Default::default() };
            let text = serde_json::to_string(&geometric).unwrap();
            prop_assert_eq!(ChainDocument::parse(&text).unwrap(), geometric);

            let direct = ChainDocument { genus: Some(torsion.len() + 1), torsion: Some(torsion), cycles: None };
            let text = serde_json::to_string(&direct).unwrap();
            prop_assert_eq!(ChainDocument::parse(&text).unwrap(), direct);
        }

        #[test]
        fn tableau_documents_round_trip(genus in 1usize..20, rows in prop::collection::vec(prop::collection::vec(1u32..20, 3), 1..5)) {
            let doc = TableauDocument { genus, rows };
            let text = serde_json::to_string(&doc).unwrap();
            prop_assert_eq!(TableauDocument::parse(&text).unwrap(), doc);
        }
    }
}
