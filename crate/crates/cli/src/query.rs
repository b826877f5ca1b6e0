//! Query files and their execution.

use serde::Deserialize;
use serde_json::{json, Value};

use regent_core::certificate::{certificate_file, Certificate};
use regent_core::entailment::{EntailmentBackend, IntervalBackend, RawBackend, RegularisedBackend};
use regent_core::forcing::{t_compose, u_force};
use regent_core::group::{Elem, FinSubset, GroupDescriptor, PreorderedGroup, ZdElement, ZdGroup};
use regent_core::regularisation::{
    cycle_extract, default_pool, l_holds, lcd_decide, prufer_check_targets, prufer_search,
    ConeDecision, Regulariser,
};
use regent_core::{Budget, DedekindSystem, MinimalSystem, SystemOfIdeals, Verdict};

use crate::error::{exit, usage, CliError, CliResult};
use crate::instance::{CliGroup, Instance};

/// `{group, system, query, budget, seed}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryFile {
    /// A group descriptor, or the name of a preset instance.
    pub group: Value,
    #[serde(default = "default_system")]
    pub system: String,
    pub query: QuerySpec,
    #[serde(default)]
    pub budget: BudgetSpec,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_system() -> String {
    "sm".into()
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct BudgetSpec {
    pub k_max: Option<usize>,
    pub n_max: Option<usize>,
    #[serde(default)]
    pub pool_extras: Option<Value>,
}

impl BudgetSpec {
    pub fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget::new(self.k_max.unwrap_or(d.k_max), self.n_max.unwrap_or(d.n_max))
    }
}

/// Element-valued fields stay as JSON until the group is known.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum QuerySpec {
    /// `A |- B`, decided as `A - B |> 0`.
    Entails {
        #[serde(rename = "A")]
        a: Value,
        #[serde(rename = "B")]
        b: Value,
        #[serde(default)]
        backend: Option<String>,
    },
    Force {
        op: ForceOp,
        x: Value,
        #[serde(rename = "A")]
        a: Value,
        b: Value,
    },
    Regularise {
        #[serde(rename = "A")]
        a: Value,
        b: Value,
        #[serde(default)]
        pool: Option<Value>,
    },
    #[serde(rename_all = "camelCase")]
    PruferCheck {
        #[serde(rename = "A")]
        a: Value,
        #[serde(default)]
        b: Option<Value>,
        /// A witness to check; without one a witness is searched for.
        #[serde(rename = "B", default)]
        witness: Option<Value>,
        #[serde(default)]
        range: Option<i64>,
        #[serde(default)]
        size_cap: Option<usize>,
    },
    Lcd {
        #[serde(rename = "C")]
        c: Value,
    },
}

impl QuerySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            QuerySpec::Entails { .. } => "entails",
            QuerySpec::Force { .. } => "force",
            QuerySpec::Regularise { .. } => "regularise",
            QuerySpec::PruferCheck { .. } => "prufer-check",
            QuerySpec::Lcd { .. } => "lcd",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub enum ForceOp {
    T,
    U,
}

/// Command-line settings that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub k_max: Option<usize>,
    pub n_max: Option<usize>,
    pub pool: Vec<String>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct QueryOutcome {
    pub exit: i32,
    pub report: Value,
    /// Certificate document for `--cert-out`.
    pub certificate: Option<Value>,
}

pub const DEFAULT_PRUFER_RANGE: i64 = 60;
pub const DEFAULT_PRUFER_CAP: usize = 128;

pub fn parse_query(text: &str) -> CliResult<QueryFile> {
    if text.trim().is_empty() {
        return Err(usage("empty query file"));
    }
    Ok(serde_json::from_str(text)?)
}

pub fn run_query(file: &QueryFile, over: &Overrides) -> CliResult<QueryOutcome> {
    let instance = match &file.group {
        Value::String(name) => Instance::parse(name)?,
        v => Instance::from_descriptor(&serde_json::from_value::<GroupDescriptor>(v.clone())?)?,
    };
    let mut budget = file.budget.budget();
    budget.k_max = over.k_max.unwrap_or(budget.k_max);
    budget.n_max = over.n_max.unwrap_or(budget.n_max);
    let mut outcome = match (instance, file.system.as_str()) {
        (Instance::Zd(g), "sm") => {
            Runner::new(MinimalSystem::new(g.clone()), file, over, budget)?.run(Some(&g))?
        }
        (Instance::Field(g), "sm") => {
            Runner::new(MinimalSystem::new(g), file, over, budget)?.run(None)?
        }
        (Instance::Field(g), "dedekind") => {
            Runner::new(DedekindSystem::new(g), file, over, budget)?.run(None)?
        }
        (Instance::Zd(_), "dedekind") => {
            return Err(usage("the dedekind system needs a divisibility group"))
        }
        (_, other) => {
            return Err(usage(format!(
                "unknown system `{other}` (expected sm or dedekind)"
            )))
        }
    };
    if let Some(obj) = outcome.report.as_object_mut() {
        obj.insert("seed".into(), json!(over.seed.or(file.seed)));
    }
    Ok(outcome)
}

fn verdict_exit<C>(v: &Verdict<C>) -> i32 {
    match v {
        Verdict::Holds(_) => exit::HOLDS,
        Verdict::Refuted => exit::REFUTED,
        Verdict::Unknown => exit::UNKNOWN,
    }
}

type ClaimRef<'a, E> = (&'a FinSubset<E>, &'a FinSubset<E>);

struct Runner<'a, S: SystemOfIdeals> {
    s: S,
    file: &'a QueryFile,
    budget: Budget,
    extras: Vec<Elem<S::Group>>,
}

impl<'a, S> Runner<'a, S>
where
    S: SystemOfIdeals,
    S::Group: CliGroup,
{
    fn new(s: S, file: &'a QueryFile, over: &Overrides, budget: Budget) -> CliResult<Self> {
        let g = s.group();
        let mut extras = match &file.budget.pool_extras {
            Some(Value::Array(a)) if a.is_empty() => vec![],
            Some(v) => g.subset_from_value(v)?.into_vec(),
            None => Vec::new(),
        };
        for p in &over.pool {
            extras.push(g.parse_element(p)?);
        }
        Ok(Runner {
            s,
            file,
            budget,
            extras,
        })
    }

    fn g(&self) -> &S::Group {
        self.s.group()
    }

    fn set(&self, v: &Value) -> CliResult<FinSubset<Elem<S::Group>>> {
        self.g().subset_from_value(v)
    }

    fn report(&self, verdict: &str, extra: Value) -> Value {
        let mut out = json!({
            "query": self.file.query.kind(),
            "group": self.g().descriptor(),
            "system": self.s.name(),
            "verdict": verdict,
        });
        if let (Some(obj), Value::Object(more)) = (out.as_object_mut(), extra) {
            obj.extend(more);
        }
        out
    }

    fn doc(
        &self,
        a: &FinSubset<Elem<S::Group>>,
        b: &FinSubset<Elem<S::Group>>,
        c: &Certificate<Elem<S::Group>>,
    ) -> Value {
        serde_json::to_value(certificate_file(
            self.g(),
            self.s.name(),
            a.clone(),
            b.clone(),
            c.clone(),
        ))
        .expect("certificates serialize")
    }

    fn finish(
        &self,
        verdict: &Verdict<Certificate<Elem<S::Group>>>,
        claim: ClaimRef<'_, Elem<S::Group>>,
        extra: Value,
    ) -> QueryOutcome {
        let certificate = verdict.certificate().map(|c| self.doc(claim.0, claim.1, c));
        let mut report = self.report(verdict.label(), extra);
        report["claim"] = json!({"A": claim.0, "b": claim.1});
        report["certificate"] = json!(verdict.certificate());
        QueryOutcome {
            exit: verdict_exit(verdict),
            report,
            certificate,
        }
    }

    /// `zd` is the group again when it is a `Z^d` instance, for the
    /// operations that only exist there.
    fn run(&self, zd: Option<&ZdGroup>) -> CliResult<QueryOutcome> {
        let zero = FinSubset::singleton(self.g().zero());
        match &self.file.query {
            QuerySpec::Entails { a, b, backend } => {
                let (a, b) = (self.set(a)?, self.set(b)?);
                let c = a.differences(self.g(), &b);
                let backend =
                    backend
                        .as_deref()
                        .unwrap_or(if zd.is_some() && self.s.name() == "sm" {
                            "lcd"
                        } else {
                            "lorenzen"
                        });
                match backend {
                    "lcd" => {
                        let g = self.require_zd(zd, "lcd")?;
                        self.lcd(g, &c).map(|mut o| {
                            o.report["backend"] = json!("lcd");
                            o.report["query"] = json!("entails");
                            o
                        })
                    }
                    "lorenzen" => {
                        let e = RegularisedBackend::new(Regulariser::new(
                            &self.s,
                            self.extras.clone(),
                            self.budget,
                        ));
                        let v = e.holds_at_zero(&c);
                        Ok(self.finish(
                            &v,
                            (&c, &zero),
                            json!({"backend": e.name(), "budget": self.budget}),
                        ))
                    }
                    "interval" => {
                        let g = self.require_zd(zd, "interval")?;
                        if !g.is_discrete() || g.rank() != 1 {
                            return Err(usage(
                                "the interval backend needs the discrete order on Z",
                            ));
                        }
                        let e = IntervalBackend::new();
                        let c = g.subset_from_value(&json!(c))?;
                        let v = e.holds_at_zero(&c);
                        let certificate = v.certificate().map(|cert| {
                            serde_json::to_value(certificate_file(
                                g,
                                "sm",
                                c.clone(),
                                FinSubset::singleton(g.zero()),
                                cert.clone(),
                            ))
                            .expect("certificates serialize")
                        });
                        let mut report = self.report(v.label(), json!({"backend": "interval"}));
                        report["claim"] = json!({"A": c, "b": [0]});
                        report["certificate"] = json!(v.certificate());
                        Ok(QueryOutcome {
                            exit: verdict_exit(&v),
                            report,
                            certificate,
                        })
                    }
                    "raw" => {
                        let e = RawBackend::new(&self.s);
                        let v = e.holds_at_zero(&c);
                        Ok(self.finish(&v, (&c, &zero), json!({"backend": e.name()})))
                    }
                    other => Err(usage(format!(
                        "unknown backend `{other}` (expected lcd, lorenzen, interval or raw)"
                    ))),
                }
            }
            QuerySpec::Force { op, x, a, b } => {
                let (a, b) = (self.set(a)?, self.set(b)?);
                let v = match op {
                    ForceOp::T => {
                        let xs = self.set_ordered(x)?;
                        t_compose(&self.s, &xs, &a, &b, &self.budget)
                    }
                    ForceOp::U => u_force(
                        &self.s,
                        &self.g().element_from_value(x)?,
                        &a,
                        &b,
                        &self.budget,
                    ),
                };
                let v = v.map(Certificate::Force);
                Ok(self.finish(&v, (&a, &b), json!({"budget": self.budget})))
            }
            QuerySpec::Regularise { a, b, pool } => {
                let (a, b) = (self.set(a)?, self.set(b)?);
                let pool = match pool {
                    Some(p) => {
                        let mut p = self.set_ordered(p)?;
                        p.extend(self.extras.iter().cloned());
                        p
                    }
                    None => default_pool(self.g(), &a, &b, &self.extras),
                };
                let v = l_holds(&self.s, &a, &b, &pool, &self.budget).map(Certificate::Lorenzen);
                Ok(self.finish(&v, (&a, &b), json!({"budget": self.budget, "pool": pool})))
            }
            QuerySpec::PruferCheck {
                a,
                b,
                witness,
                range,
                size_cap,
            } => {
                let a = self.set(a)?;
                let b = match b {
                    Some(b) => self.set(b)?,
                    None => zero.clone(),
                };
                if let Some(w) = witness {
                    let w = self.set(w)?;
                    let ok = prufer_check_targets(&self.s, &a, &b, &w);
                    let v = if ok {
                        Verdict::Holds(Certificate::Prufer { witness: w })
                    } else {
                        Verdict::Refuted
                    };
                    return Ok(self.finish(&v, (&a, &b), json!({})));
                }
                let g = self.require_zd(zd, "a Prüfer witness search")?;
                if b.len() != 1 {
                    return Err(usage("a witness search takes a single target"));
                }
                let range = range.unwrap_or(DEFAULT_PRUFER_RANGE);
                let cap = size_cap.unwrap_or(DEFAULT_PRUFER_CAP);
                let shifted = self.zd_set(g, &a.map(|x| self.g().sub(x, &b.elements()[0])))?;
                let minimal = MinimalSystem::new(g.clone());
                let found = prufer_search(&minimal, &shifted, &by_size(g.rank(), range), cap);
                let cycle = match (&found, shifted.len()) {
                    (Some(w), 1) => cycle_extract(g, &shifted.elements()[0], w).ok(),
                    _ => None,
                };
                let v = match found {
                    Some(w) => Verdict::Holds(Certificate::Prufer {
                        witness: self.g().subset_from_value(&json!(w))?,
                    }),
                    None => Verdict::Unknown,
                };
                Ok(self.finish(
                    &v,
                    (&a, &b),
                    json!({"range": range, "sizeCap": cap, "cycle": cycle}),
                ))
            }
            QuerySpec::Lcd { c } => {
                let g = self.require_zd(zd, "lcd")?;
                let c = g.subset_from_value(c)?;
                self.lcd(g, &c)
            }
        }
    }

    fn require_zd<'z>(&self, zd: Option<&'z ZdGroup>, what: &str) -> CliResult<&'z ZdGroup> {
        match zd {
            Some(g) if self.s.name() == "sm" => Ok(g),
            _ => Err(usage(format!(
                "{what} needs a Z^d group with the sm system"
            ))),
        }
    }

    /// Keeps the order given in the file, unlike a finite subset.
    fn set_ordered(&self, v: &Value) -> CliResult<Vec<Elem<S::Group>>> {
        if let Ok(e) = self.g().element_from_value(v) {
            return Ok(vec![e]);
        }
        match v {
            Value::Array(items) => items
                .iter()
                .map(|i| self.g().element_from_value(i))
                .collect(),
            _ => Err(usage(format!(
                "`{v}` is neither an element nor a list of elements"
            ))),
        }
    }

    fn zd_set(
        &self,
        g: &ZdGroup,
        s: &FinSubset<Elem<S::Group>>,
    ) -> CliResult<FinSubset<ZdElement>> {
        g.subset_from_value(&json!(s))
    }

    fn lcd<C>(&self, g: &ZdGroup, c: &FinSubset<C>) -> CliResult<QueryOutcome>
    where
        C: serde::Serialize + Ord + Clone,
    {
        let c = g.subset_from_value(&json!(c))?;
        let zero = FinSubset::singleton(g.zero());
        let (exit, cert) = match lcd_decide(g, &c) {
            ConeDecision::Positive { n, m } => (exit::HOLDS, Certificate::Cone { n, m }),
            ConeDecision::Negative { lambda } => (exit::REFUTED, Certificate::Separator { lambda }),
        };
        let doc = serde_json::to_value(certificate_file(g, "sm", c.clone(), zero, cert.clone()))
            .expect("certificates serialize");
        let mut report = self.report(
            if exit == exit::HOLDS {
                "holds"
            } else {
                "refuted"
            },
            json!({}),
        );
        report["query"] = json!("lcd");
        report["claim"] = json!({"A": c, "b": [g.zero()]});
        report["certificate"] = json!(cert);
        Ok(QueryOutcome {
            exit,
            report,
            certificate: Some(doc),
        })
    }
}

/// Every vector of `[-range, range]^d`, ordered by sup norm and then
/// lexicographically.
pub fn by_size(d: usize, range: i64) -> Vec<ZdElement> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| (-range..=range).map(move |c| [v.clone(), vec![c]].concat()))
            .collect();
    }
    out.sort_by_key(|v| {
        (
            v.iter().map(|c| c.abs()).max().unwrap_or(0),
            v.iter().map(|c| (c.abs(), *c < 0)).collect::<Vec<_>>(),
        )
    });
    out.iter().map(|v| ZdElement::from_i64s(v)).collect()
}

impl From<CliError> for QueryOutcome {
    fn from(e: CliError) -> Self {
        QueryOutcome {
            exit: exit::USAGE,
            report: json!({"error": e.to_string()}),
            certificate: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> QueryOutcome {
        run_query(&parse_query(text).unwrap(), &Overrides::default()).unwrap()
    }

    #[test]
    fn entails_on_exa1_gives_cone_certificate() {
        let o = run(r#"{"group":"exa1","query":{"kind":"entails","A":[0],"B":[1]}}"#);
        assert_eq!(o.exit, 0);
        assert_eq!(o.report["certificate"]["n"], json!([60]));
        let o = run(r#"{"group":"exa1","query":{"kind":"entails","A":[1],"B":[0]}}"#);
        assert_eq!(o.exit, 1);
        assert_eq!(o.report["certificate"]["type"], "separator");
    }

    #[test]
    fn force_and_budget() {
        let o = run(
            r#"{"group":{"kind":"cone-zd","d":1,"P":[60]},"query":{"kind":"force","op":"T","x":-7,"A":[3],"b":[130,84]}}"#,
        );
        assert_eq!(o.report["certificate"]["k"], json!([3]));
        let o = run(
            r#"{"group":"exa1","query":{"kind":"force","op":"U","x":1,"A":[-1],"b":0},"budget":{"kMax":58}}"#,
        );
        assert_eq!(o.exit, 3);
    }

    #[test]
    fn schema_is_strict() {
        assert!(
            parse_query(r#"{"group":"exa1","query":{"kind":"lcd","C":[1]},"extra":1}"#).is_err()
        );
        assert!(parse_query(r#"{"group":"exa1","query":{"kind":"lcd","C":[1],"D":2}}"#).is_err());
        assert!(parse_query(r#"{"group":"exa1","query":{"kind":"nope"}}"#).is_err());
        assert!(parse_query("").is_err());
    }

    #[test]
    fn prufer_search_and_check() {
        let o = run(r#"{"group":"exa1","query":{"kind":"prufer-check","A":[-1]}}"#);
        assert_eq!(o.exit, 0);
        assert_eq!(o.report["cycle"]["n"], json!(60));
        let o = run(r#"{"group":"exa1","query":{"kind":"prufer-check","A":[-1],"B":[0]}}"#);
        assert_eq!(o.exit, 1);
    }

    #[test]
    fn sizes_are_ordered() {
        let v = by_size(1, 2);
        assert_eq!(v, [0, 1, -1, 2, -2].map(|c| ZdElement::from_i64s(&[c])));
        assert_eq!(by_size(2, 1).len(), 9);
    }
}
