use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::charvar::Convention;
use crate::exact::{Polynomial, Rational};
use crate::riemann::{Curve, PointSpec};

use super::CliError;

/// The verification suites, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Jets,
    Lemma1,
    Residues,
    Theorem1,
    Sequence,
    Pairing,
    Goldman,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Jets,
        Suite::Lemma1,
        Suite::Residues,
        Suite::Theorem1,
        Suite::Sequence,
        Suite::Pairing,
        Suite::Goldman,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jets => "jets",
            Suite::Lemma1 => "lemma1",
            Suite::Residues => "residues",
            Suite::Theorem1 => "theorem1",
            Suite::Sequence => "sequence",
            Suite::Pairing => "pairing",
            Suite::Goldman => "goldman",
        }
    }

    /// Suites that need the curve connection and the Čech model.
    pub fn uses_model(self) -> bool {
        matches!(self, Suite::Theorem1 | Suite::Sequence | Suite::Pairing)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedPoints {
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Trials {
    pub mobius: usize,
    pub lemma1_flat: usize,
    pub lemma1_curve: usize,
    pub residue_forms: usize,
    pub theorem1: usize,
    pub proof_mechanics: usize,
    pub goldman_seeds: u64,
}

impl Default for Trials {
    fn default() -> Self {
        Trials {
            mobius: 100,
            lemma1_flat: 500,
            lemma1_curve: 100,
            residue_forms: 50,
            theorem1: 200,
            proof_mechanics: 20,
            goldman_seeds: 20,
        }
    }
}

/// Only the character-variety suite reads these.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub goldman: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { goldman: 1e-8 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Coefficients of `f`, constant term first, as rational strings.
    pub curve: Vec<String>,
    pub marked_points: MarkedPoints,
    pub truncation: i64,
    pub seed: u64,
    pub trials: Trials,
    pub tolerances: Tolerances,
    pub goldman_genera: Vec<usize>,
    /// Frozen chain-level convention; `None` runs the gate and takes the first passing one.
    pub goldman_convention: Option<Convention>,
    /// Suites run by `all`.
    pub suites: Vec<Suite>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        let f = Curve::default_curve();
        ScenarioConfig {
            curve: f.f().coeffs().iter().map(|c| c.to_string()).collect(),
            marked_points: MarkedPoints {
                a: "inf+".into(),
                b: "inf-".into(),
            },
            truncation: 10,
            seed: 7,
            trials: Trials::default(),
            tolerances: Tolerances::default(),
            goldman_genera: vec![2, 3],
            goldman_convention: Some(Convention::Fox),
            suites: Suite::ALL.to_vec(),
        }
    }
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub curve: Curve,
    pub a: PointSpec,
    pub b: PointSpec,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(self) -> Result<Scenario, CliError> {
        let coeffs = self
            .curve
            .iter()
            .map(|s| {
                s.parse::<Rational>()
                    .map_err(|e| CliError::Config(format!("curve coefficient {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let curve = Curve::new(Polynomial::new(coeffs))
            .map_err(|e| CliError::Config(format!("curve: {e}")))?;
        let point = |s: &str| {
            s.parse::<PointSpec>()
                .map_err(|e| CliError::Config(format!("marked point {s:?}: {e}")))
        };
        let a = point(&self.marked_points.a)?;
        let b = point(&self.marked_points.b)?;
        if self.truncation < 4 {
            return Err(CliError::Config(format!(
                "truncation N = {} is below 4",
                self.truncation
            )));
        }
        if self.goldman_genera.iter().any(|&g| g < 2) {
            return Err(CliError::Config(
                "goldman_genera entries must be at least 2".into(),
            ));
        }
        if !(self.tolerances.goldman > 0.0 && self.tolerances.goldman < 1.0) {
            return Err(CliError::Config(
                "tolerances.goldman must lie in (0, 1)".into(),
            ));
        }
        Ok(Scenario {
            config: self,
            curve,
            a,
            b,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_roundtrips_and_validates() {
        let c = ScenarioConfig::default();
        let text = serde_json::to_string_pretty(&c).unwrap();
        let back: ScenarioConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        let s = back.validate().unwrap();
        assert_eq!(s.curve, Curve::default_curve());
        assert_eq!(s.a, PointSpec::InfPlus);
    }

    #[test]
    fn rejects_bad_input() {
        let c = ScenarioConfig {
            truncation: 3,
            ..ScenarioConfig::default()
        };
        assert!(matches!(c.validate(), Err(CliError::Config(_))));
        let c = ScenarioConfig {
            curve: vec!["1".into(), "0".into(), "1".into()],
            ..ScenarioConfig::default()
        };
        assert!(matches!(c.validate(), Err(CliError::Config(_))));
        assert!(serde_json::from_str::<ScenarioConfig>(r#"{"bogus": 1}"#).is_err());
        let partial: ScenarioConfig = serde_json::from_str(r#"{"truncation": 12}"#).unwrap();
        assert_eq!(partial.truncation, 12);
        assert_eq!(partial.seed, 7);
    }
}
