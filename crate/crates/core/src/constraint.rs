//! Energy constraint selection: kind, bounds, violation measure, objective.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arena::Arena;
use crate::error::SolveError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// Strict lower bound.
    L,
    /// Strict lower and upper bounds.
    LU,
    /// Strict lower bound, weak (absorbing) upper bound.
    LW,
    /// Strict lower bound, soft upper bound with bounded violations.
    LV,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// Number of positions above the soft bound.
    Count,
    /// Longest block of consecutive positions above the soft bound.
    Consecutive,
    /// Total energy above the soft bound, summed over violating positions.
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    InfiniteRun,
    Reach,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::L => "L",
            Kind::LU => "LU",
            Kind::LW => "LW",
            Kind::LV => "LV",
        })
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "L" => Ok(Kind::L),
            "LU" => Ok(Kind::LU),
            "LW" => Ok(Kind::LW),
            "LV" => Ok(Kind::LV),
            _ => Err(format!("unknown constraint kind `{s}`")),
        }
    }
}

impl FromStr for Measure {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "count" => Ok(Measure::Count),
            "cons" | "consecutive" => Ok(Measure::Consecutive),
            "sum" => Ok(Measure::Sum),
            _ => Err(format!("unknown violation measure `{s}`")),
        }
    }
}

impl FromStr for Objective {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reach" => Ok(Objective::Reach),
            "inf" | "infinite" => Ok(Objective::InfiniteRun),
            _ => Err(format!("unknown objective `{s}`")),
        }
    }
}

/// A complete query: which semantics, which bounds, which objective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub kind: Kind,
    #[serde(rename = "L")]
    pub lower: i64,
    #[serde(rename = "U")]
    pub upper: Option<i64>,
    #[serde(rename = "W")]
    pub weak: Option<i64>,
    #[serde(rename = "S")]
    pub soft: Option<i64>,
    #[serde(rename = "V")]
    pub violations: Option<i64>,
    pub measure: Option<Measure>,
    pub objective: Objective,
}

impl ConstraintSpec {
    pub fn lower(lower: i64, objective: Objective) -> Self {
        ConstraintSpec {
            kind: Kind::L,
            lower,
            upper: None,
            weak: None,
            soft: None,
            violations: None,
            measure: None,
            objective,
        }
    }

    pub fn interval(lower: i64, upper: i64, objective: Objective) -> Self {
        ConstraintSpec {
            kind: Kind::LU,
            upper: Some(upper),
            ..Self::lower(lower, objective)
        }
    }

    pub fn weak(lower: i64, weak: i64, objective: Objective) -> Self {
        ConstraintSpec {
            kind: Kind::LW,
            weak: Some(weak),
            ..Self::lower(lower, objective)
        }
    }

    pub fn soft(
        lower: i64,
        soft: i64,
        upper: i64,
        violations: i64,
        measure: Measure,
        objective: Objective,
    ) -> Self {
        ConstraintSpec {
            kind: Kind::LV,
            upper: Some(upper),
            soft: Some(soft),
            violations: Some(violations),
            measure: Some(measure),
            ..Self::lower(lower, objective)
        }
    }

    /// Checks the parameter invariants for the chosen kind and objective.
    pub fn validate(&self, arena: &Arena) -> Result<(), SolveError> {
        let name = match self.kind {
            Kind::L => "L",
            Kind::LU => "LU",
            Kind::LW => "LW",
            Kind::LV => "LV",
        };
        let need = |v: Option<i64>, p: &'static str| v.ok_or(SolveError::MissingParameter(p, name));
        match self.kind {
            Kind::L => {}
            Kind::LU => check_order("L", self.lower, "U", need(self.upper, "U")?)?,
            Kind::LW => check_order("L", self.lower, "W", need(self.weak, "W")?)?,
            Kind::LV => {
                let s = need(self.soft, "S")?;
                let u = need(self.upper, "U")?;
                let v = need(self.violations, "V")?;
                self.measure.ok_or(SolveError::MissingParameter("measure", name))?;
                check_order("L", self.lower, "S", s)?;
                check_order("S", s, "U", u)?;
                if v < 0 {
                    return Err(SolveError::NegativeViolationBound(v));
                }
            }
        }
        if self.objective == Objective::Reach && arena.targets().is_empty() {
            return Err(SolveError::NoTargets);
        }
        Ok(())
    }
}

pub(crate) fn check_order(
    low_name: &'static str,
    low: i64,
    high_name: &'static str,
    high: i64,
) -> Result<(), SolveError> {
    if low > high {
        Err(SolveError::BoundInversion {
            low_name,
            low,
            high_name,
            high,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn validation_rules() {
        let a = samples::soft_bound();
        assert!(ConstraintSpec::interval(0, 3, Objective::Reach).validate(&a).is_ok());
        assert!(matches!(
            ConstraintSpec::interval(4, 3, Objective::Reach).validate(&a),
            Err(SolveError::BoundInversion { .. })
        ));
        assert!(matches!(
            ConstraintSpec::soft(0, 7, 6, 1, Measure::Count, Objective::Reach).validate(&a),
            Err(SolveError::BoundInversion { .. })
        ));
        assert_eq!(
            ConstraintSpec::soft(0, 3, 6, -1, Measure::Sum, Objective::Reach).validate(&a),
            Err(SolveError::NegativeViolationBound(-1))
        );
        let mut spec = ConstraintSpec::weak(0, 5, Objective::Reach);
        spec.weak = None;
        assert_eq!(spec.validate(&a), Err(SolveError::MissingParameter("W", "LW")));
        let no_targets = a.with_targets([]);
        assert_eq!(
            ConstraintSpec::lower(0, Objective::Reach).validate(&no_targets),
            Err(SolveError::NoTargets)
        );
        assert!(ConstraintSpec::lower(0, Objective::InfiniteRun)
            .validate(&no_targets)
            .is_ok());
    }
}
