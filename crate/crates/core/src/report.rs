//! Reports produced by the sampled law checkers.

use std::fmt;

use serde::Serialize;

/// Three-valued truth used when some verdicts may be unresolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn known(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Truth::True
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }
}

impl From<bool> for Truth {
    fn from(b: bool) -> Self {
        Truth::known(b)
    }
}

/// Result of instantiating a law once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// A premise was false, so the instance says nothing.
    Vacuous,
    /// Some verdict could not be resolved within budget.
    Unresolved,
    Violation(String),
}

/// `premises => conclusion`, with unresolved verdicts kept apart.
pub fn implication(
    premises: &[Truth],
    conclusion: Truth,
    describe: impl FnOnce() -> String,
) -> Outcome {
    if premises.contains(&Truth::False) {
        return Outcome::Vacuous;
    }
    if premises.contains(&Truth::Unknown) {
        return Outcome::Unresolved;
    }
    match conclusion {
        Truth::True => Outcome::Pass,
        Truth::False => Outcome::Violation(describe()),
        Truth::Unknown => Outcome::Unresolved,
    }
}

/// `left <=> right`.
pub fn equivalence(left: Truth, right: Truth, describe: impl FnOnce() -> String) -> Outcome {
    match (left, right) {
        (Truth::Unknown, _) | (_, Truth::Unknown) => Outcome::Unresolved,
        (l, r) if l == r => Outcome::Pass,
        _ => Outcome::Violation(describe()),
    }
}

/// Tallies for one law.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub checked: usize,
    pub vacuous: usize,
    pub unresolved: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl LawCheck {
    pub fn new(law: impl Into<String>) -> Self {
        LawCheck {
            law: law.into(),
            ..LawCheck::default()
        }
    }

    pub fn record(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.checked += 1,
            Outcome::Vacuous => self.vacuous += 1,
            Outcome::Unresolved => self.unresolved += 1,
            Outcome::Violation(cx) => {
                self.checked += 1;
                self.violations += 1;
                self.counterexample.get_or_insert(cx);
            }
        }
    }

    pub fn total(&self) -> usize {
        self.checked + self.vacuous + self.unresolved
    }
}

/// Tallies for a family of laws checked on one subject.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub subject: String,
    pub seed: u64,
    pub samples: usize,
    pub laws: Vec<LawCheck>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>, seed: u64, samples: usize) -> Self {
        AxiomReport {
            subject: subject.into(),
            seed,
            samples,
            laws: Vec::new(),
        }
    }

    /// The tally for `law`, created on first use.
    pub fn law_mut(&mut self, law: &str) -> &mut LawCheck {
        if let Some(i) = self.laws.iter().position(|l| l.law == law) {
            return &mut self.laws[i];
        }
        self.laws.push(LawCheck::new(law));
        self.laws.last_mut().expect("just pushed")
    }

    pub fn law(&self, law: &str) -> Option<&LawCheck> {
        self.laws.iter().find(|l| l.law == law)
    }

    pub fn violations(&self) -> usize {
        self.laws.iter().map(|l| l.violations).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }

    /// Fraction of non-vacuous instances whose verdicts all resolved.
    pub fn resolution_rate(&self) -> f64 {
        let checked: usize = self.laws.iter().map(|l| l.checked).sum();
        let unresolved: usize = self.laws.iter().map(|l| l.unresolved).sum();
        if checked + unresolved == 0 {
            1.0
        } else {
            checked as f64 / (checked + unresolved) as f64
        }
    }

    pub fn first_counterexample(&self) -> Option<(&str, &str)> {
        self.laws
            .iter()
            .find_map(|l| l.counterexample.as_deref().map(|c| (l.law.as_str(), c)))
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (seed {}, {} samples per law)",
            self.subject, self.seed, self.samples
        )?;
        for l in &self.laws {
            write!(
                f,
                "  {:<24} checked {:>5}  vacuous {:>5}  unresolved {:>4}  violations {}",
                l.law, l.checked, l.vacuous, l.unresolved, l.violations
            )?;
            if let Some(cx) = &l.counterexample {
                write!(f, "  e.g. {cx}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implication_outcomes() {
        let cx = || "cx".to_string();
        assert_eq!(
            implication(&[Truth::False, Truth::Unknown], Truth::False, cx),
            Outcome::Vacuous
        );
        assert_eq!(
            implication(&[Truth::Unknown], Truth::True, cx),
            Outcome::Unresolved
        );
        assert_eq!(
            implication(&[Truth::True], Truth::False, cx),
            Outcome::Violation("cx".into())
        );
        assert_eq!(equivalence(Truth::False, Truth::False, cx), Outcome::Pass);
    }

    #[test]
    fn report_tallies() {
        let mut r = AxiomReport::new("demo", 7, 3);
        r.law_mut("a").record(Outcome::Pass);
        r.law_mut("a").record(Outcome::Unresolved);
        r.law_mut("b").record(Outcome::Violation("x = 1".into()));
        assert_eq!(r.violations(), 1);
        assert_eq!(r.first_counterexample(), Some(("b", "x = 1")));
        assert!((r.resolution_rate() - 2.0 / 3.0).abs() < 1e-12);
    }
}
