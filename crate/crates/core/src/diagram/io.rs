use serde::{Deserialize, Serialize};

use super::{Color, Diagram, DiagramPoint};
use crate::error::{GaleError, Result};
use crate::exactgeom::{Point2, Rational};

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PointDoc {
    label: String,
    color: Color,
    x: Rational,
    y: Rational,
}

/// JSON document form of a [`Diagram`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramDoc {
    d: usize,
    points: Vec<PointDoc>,
    #[serde(default)]
    black_cycle: Vec<String>,
}

impl From<&Diagram> for DiagramDoc {
    fn from(x: &Diagram) -> Self {
        DiagramDoc {
            d: x.d,
            points: x
                .points
                .iter()
                .map(|p| PointDoc {
                    label: p.label.clone(),
                    color: p.color,
                    x: p.position.x.clone(),
                    y: p.position.y.clone(),
                })
                .collect(),
            black_cycle: x.black_cycle_labels(),
        }
    }
}

impl TryFrom<DiagramDoc> for Diagram {
    type Error = GaleError;

    fn try_from(doc: DiagramDoc) -> Result<Self> {
        let points = doc
            .points
            .into_iter()
            .map(|p| DiagramPoint::new(p.label, p.color, Point2::new(p.x, p.y)))
            .collect();
        Diagram::with_black_cycle(doc.d, points, &doc.black_cycle)
    }
}

impl Diagram {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(DiagramDoc::from(self)).expect("diagram serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&DiagramDoc::from(self)).expect("diagram serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Diagram> {
        let doc: DiagramDoc = serde_json::from_str(s).map_err(|e| GaleError::Parse(e.to_string()))?;
        Diagram::try_from(doc)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Diagram> {
        let doc: DiagramDoc = serde_json::from_value(v).map_err(|e| GaleError::Parse(e.to_string()))?;
        Diagram::try_from(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{"d": 0, "points": [
        {"label": "A1", "color": "black", "x": "0/1", "y": "0/1"},
        {"label": "A2", "color": "black", "x": "0/1", "y": "4/1"},
        {"label": "A3", "color": "black", "x": "4/1", "y": "0/1"},
        {"label": "B1", "color": "white", "x": "1/1", "y": "1/1"}],
        "black_cycle": ["A1", "A2", "A3"]}"#;

    #[test]
    fn parses_and_round_trips() {
        let x = Diagram::from_json_str(BASE).unwrap();
        assert_eq!(x.d(), 0);
        assert_eq!(x.black_cycle_labels(), vec!["A1", "A2", "A3"]);
        let again = Diagram::from_json_str(&x.to_json_string()).unwrap();
        assert_eq!(again, x);
    }

    #[test]
    fn rejects_non_normalized_rationals() {
        let bad = BASE.replace(r#""y": "4/1""#, r#""y": "8/2""#);
        assert!(matches!(Diagram::from_json_str(&bad), Err(GaleError::Parse(_))));
    }

    #[test]
    fn rejects_duplicates_and_wrong_counts() {
        let dup = BASE.replace(r#""label": "A2""#, r#""label": "A1""#);
        assert!(Diagram::from_json_str(&dup).is_err());
        let wrong_d = BASE.replace(r#""d": 0"#, r#""d": 1"#);
        assert!(Diagram::from_json_str(&wrong_d).is_err());
    }

    #[test]
    fn rejects_non_spanning_input_distinctly() {
        let flat = BASE
            .replace(r#""x": "0/1", "y": "4/1""#, r#""x": "1/1", "y": "0/1""#)
            .replace(r#""x": "1/1", "y": "1/1""#, r#""x": "2/1", "y": "0/1""#);
        assert!(matches!(Diagram::from_json_str(&flat), Err(GaleError::NotSpanning)));
    }
}
