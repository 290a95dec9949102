//! Stanza files describing simulation scenarios.
//!
//! ```text
//! # comment
//! family = binomial
//! n = 20
//! m = 5
//! p = 6
//! p_star = 3
//! coef = 1
//! ```
//!
//! Stanzas are separated by blank lines. Recognised keys: `id`, `family`,
//! `n`, `m`, `p`, `p_star`, `coef`, `sigma2`, `intercept`, `correlation`,
//! `replications`, `seed`. Unset keys take the [`Scenario::new`] defaults.

use std::str::FromStr;

use cmcsel_core::{Family, Scenario};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct NamedScenario {
    pub id: String,
    pub scenario: Scenario,
}

#[derive(Debug, Error, PartialEq)]
pub enum ScenarioFileError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice in one stanza")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: bad value `{value}` for `{key}`")]
    BadValue {
        line: usize,
        key: String,
        value: String,
    },
    #[error("stanza starting at line {line}: missing required key `{key}`")]
    MissingKey { line: usize, key: &'static str },
    #[error("no bundled scenario set named `{0}` (expected table1, table1_p30, table2 or table3)")]
    UnknownBuiltin(String),
}

const KEYS: &[&str] = &[
    "id",
    "family",
    "n",
    "m",
    "p",
    "p_star",
    "coef",
    "sigma2",
    "intercept",
    "correlation",
    "replications",
    "seed",
];

const BUILTINS: &[(&str, &str)] = &[
    ("table1", include_str!("../scenarios/table1.scn")),
    ("table1_p30", include_str!("../scenarios/table1_p30.scn")),
    ("table2", include_str!("../scenarios/table2.scn")),
    ("table3", include_str!("../scenarios/table3.scn")),
];

pub fn builtin_scenarios(name: &str) -> Result<Vec<NamedScenario>, ScenarioFileError> {
    let (_, text) = BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| ScenarioFileError::UnknownBuiltin(name.to_string()))?;
    parse_scenarios(text)
}

pub fn parse_scenarios(text: &str) -> Result<Vec<NamedScenario>, ScenarioFileError> {
    let mut out = Vec::new();
    let mut stanza: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if raw.trim().is_empty() {
            if !stanza.is_empty() {
                out.push(build(&stanza)?);
                stanza.clear();
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or(ScenarioFileError::Syntax { line: line_no })?;
        let key = key.trim().to_ascii_lowercase();
        let value = value.trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(ScenarioFileError::UnknownKey { line: line_no, key });
        }
        if stanza.iter().any(|(_, k, _)| *k == key) {
            return Err(ScenarioFileError::DuplicateKey { line: line_no, key });
        }
        stanza.push((line_no, key, value));
    }
    if !stanza.is_empty() {
        out.push(build(&stanza)?);
    }
    Ok(out)
}

fn build(stanza: &[(usize, String, String)]) -> Result<NamedScenario, ScenarioFileError> {
    let first_line = stanza[0].0;
    let get = |key: &str| stanza.iter().find(|(_, k, _)| k == key);
    fn parse<T: FromStr>(entry: &(usize, String, String)) -> Result<T, ScenarioFileError> {
        entry.2.parse().map_err(|_| ScenarioFileError::BadValue {
            line: entry.0,
            key: entry.1.clone(),
            value: entry.2.clone(),
        })
    }
    let required = |key: &'static str| {
        get(key).ok_or(ScenarioFileError::MissingKey {
            line: first_line,
            key,
        })
    };

    let family_entry = required("family")?;
    let n: usize = parse(required("n")?)?;
    let p: usize = parse(required("p")?)?;
    let m: Option<u32> = get("m").map(parse).transpose()?;
    let family = match family_entry.2.to_ascii_lowercase().as_str() {
        "gaussian" => Family::Gaussian,
        "poisson" => Family::Poisson,
        "binomial" => {
            let trials = m.unwrap_or(1);
            Family::binomial(trials).map_err(|_| ScenarioFileError::BadValue {
                line: get("m").map_or(family_entry.0, |e| e.0),
                key: "m".into(),
                value: trials.to_string(),
            })?
        }
        _ => {
            return Err(ScenarioFileError::BadValue {
                line: family_entry.0,
                key: "family".into(),
                value: family_entry.2.clone(),
            })
        }
    };

    let coef: f64 = get("coef").map(parse).transpose()?.unwrap_or(1.0);
    let mut scn = Scenario::new(family, n, p, coef);
    if let Some(e) = get("p_star") {
        scn.p_star = parse(e)?;
    }
    if let Some(e) = get("sigma2") {
        scn.sigma2 = parse(e)?;
    }
    if let Some(e) = get("intercept") {
        scn.intercept = parse(e)?;
    }
    if let Some(e) = get("correlation") {
        scn.correlation = parse(e)?;
    }
    if let Some(e) = get("replications") {
        scn.replications = parse(e)?;
    }
    if let Some(e) = get("seed") {
        scn.seed = parse(e)?;
    }
    let id = match get("id") {
        Some(e) => e.2.clone(),
        None => default_id(&scn),
    };
    Ok(NamedScenario { id, scenario: scn })
}

/// `(n, p, p*)`, or `(n, m, p, p*)` for binomial scenarios.
pub fn default_id(scn: &Scenario) -> String {
    match scn.family.trials() {
        Some(m) => format!("({}, {}, {}, {})", scn.n, m, scn.p, scn.p_star),
        None => format!("({}, {}, {})", scn.n, scn.p, scn.p_star),
    }
}
