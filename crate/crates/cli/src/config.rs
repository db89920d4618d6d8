//! Run configuration: a flat `key = value` file with `#` comments.
//!
//! ```text
//! # Example 1, frequentist power
//! p0 = 0.1
//! p1 = 0.3
//! alpha = 0.05
//! beta = 0.2
//! k = 1/3
//! k_f = 3
//! n_min = 5
//! n_max = 40
//! ```
//!
//! Numbers may be written as fractions (`1/3`). The power prior is either a
//! point `p1` or a truncated `Beta(a_d, b_d)` on `[p0, 1]`, never both.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use bf_twostage::{
    AnalysisPrior, CalibrationConstraints, DesignPrior, DesignPriors, DesignProblem, Hypotheses,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("expected `table` or `csv`, got `{other}`")),
        }
    }
}

/// How power is computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerPrior {
    Point(f64),
    Beta { a: f64, b: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub p0: f64,
    pub alpha: f64,
    pub beta: f64,
    pub power_prior: PowerPrior,
    pub a0: f64,
    pub b0: f64,
    pub a1: f64,
    pub b1: f64,
    pub k: f64,
    pub k_f: f64,
    pub f: Option<f64>,
    pub n_min: usize,
    pub n_max: usize,
    pub window: usize,
    pub output_format: OutputFormat,
}

/// A problem with the configuration, located by line and field when known.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, field: &str, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            field: Some(field.to_owned()),
            message: message.into(),
        }
    }

    fn field(field: &str, message: impl Into<String>) -> Self {
        Self {
            line: None,
            field: Some(field.to_owned()),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(field) = &self.field {
            write!(f, "field `{field}`: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

const KEYS: &[&str] = &[
    "p0",
    "alpha",
    "beta",
    "p1",
    "a_d",
    "b_d",
    "a0",
    "b0",
    "a1",
    "b1",
    "k",
    "k_f",
    "f",
    "n_min",
    "n_max",
    "window",
    "output_format",
];

/// A real number or a fraction `num/den`.
fn parse_real(text: &str) -> Result<f64, String> {
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| format!("`{text}` is not a number"))?;
            let den: f64 = den.trim().parse().map_err(|_| format!("`{text}` is not a number"))?;
            if den == 0.0 {
                return Err(format!("`{text}` divides by zero"));
            }
            num / den
        }
        None => text.parse().map_err(|_| format!("`{text}` is not a number"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{text}` is not finite"))
    }
}

struct Entries {
    values: HashMap<String, (usize, String)>,
}

impl Entries {
    fn real(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        self.values
            .get(key)
            .map(|(line, text)| parse_real(text).map_err(|m| ConfigError::at(*line, key, m)))
            .transpose()
    }

    fn required_real(&self, key: &str) -> Result<f64, ConfigError> {
        self.real(key)?
            .ok_or_else(|| ConfigError::field(key, "missing required value"))
    }

    fn count(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        self.values
            .get(key)
            .map(|(line, text)| {
                text.parse()
                    .map_err(|_| ConfigError::at(*line, key, format!("`{text}` is not a count")))
            })
            .transpose()
    }

    fn check<T>(&self, key: &str, ok: bool, message: impl Into<String>, value: T) -> Result<T, ConfigError> {
        if ok {
            Ok(value)
        } else {
            let line = self.values.get(key).map(|(line, _)| *line);
            Err(ConfigError {
                line,
                field: Some(key.to_owned()),
                message: message.into(),
            })
        }
    }
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
            line: None,
            field: None,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        text.parse()
    }

    pub fn problem(&self) -> DesignProblem {
        self.try_problem().expect("validated at parse time")
    }

    fn try_problem(&self) -> bf_twostage::Result<DesignProblem> {
        let hyp = Hypotheses::new(self.p0)?;
        let ap = AnalysisPrior::new(hyp, self.a0, self.b0, self.a1, self.b1)?;
        let alt = match self.power_prior {
            PowerPrior::Point(p1) => DesignPrior::point(p1)?,
            PowerPrior::Beta { a, b } => DesignPrior::truncated(a, b, self.p0, 1.0)?,
        };
        DesignProblem::new(ap, DesignPriors::new(self.p0, alt)?, self.k, self.k_f)
    }

    pub fn constraints(&self) -> CalibrationConstraints {
        CalibrationConstraints::new(self.alpha, self.beta, self.f, self.n_min, self.n_max, self.window)
            .expect("validated at parse time")
    }
}

impl FromStr for RunConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        let mut values = HashMap::new();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError {
                    line: Some(line),
                    field: None,
                    message: format!("expected `key = value`, got `{content}`"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(ConfigError::at(line, key, "unknown key"));
            }
            if value.is_empty() {
                return Err(ConfigError::at(line, key, "empty value"));
            }
            if let Some((first, _)) = values.insert(key.to_owned(), (line, value.to_owned())) {
                return Err(ConfigError::at(line, key, format!("already set on line {first}")));
            }
        }
        let e = Entries { values };

        let p0 = e.required_real("p0")?;
        let p0 = e.check("p0", p0 > 0.0 && p0 < 1.0, "must lie in (0, 1)", p0)?;
        let alpha = e.required_real("alpha")?;
        let alpha = e.check("alpha", alpha > 0.0 && alpha < 1.0, "must lie in (0, 1)", alpha)?;
        let beta = e.required_real("beta")?;
        let beta = e.check("beta", beta > 0.0 && beta < 1.0, "must lie in (0, 1)", beta)?;

        let power_prior = match (e.real("p1")?, e.real("a_d")?, e.real("b_d")?) {
            (Some(p1), None, None) => {
                e.check("p1", p1 > p0 && p1 <= 1.0, format!("must lie in (p0, 1] = ({p0}, 1]"), ())?;
                PowerPrior::Point(p1)
            }
            (None, Some(a), Some(b)) => {
                e.check("a_d", a > 0.0, "must be positive", ())?;
                e.check("b_d", b > 0.0, "must be positive", ())?;
                PowerPrior::Beta { a, b }
            }
            (None, None, None) => {
                return Err(ConfigError::field(
                    "p1",
                    "set either `p1` or both `a_d` and `b_d` for the power prior",
                ))
            }
            (Some(_), _, _) => {
                return Err(ConfigError::field("p1", "`p1` cannot be combined with `a_d`/`b_d`"))
            }
            (None, Some(_), None) => return Err(ConfigError::field("b_d", "missing; `a_d` is set")),
            (None, None, Some(_)) => return Err(ConfigError::field("a_d", "missing; `b_d` is set")),
        };

        let shape = |key: &str| -> Result<f64, ConfigError> {
            let v = e.real(key)?.unwrap_or(1.0);
            e.check(key, v > 0.0, "must be positive", v)
        };
        let (a0, b0, a1, b1) = (shape("a0")?, shape("b0")?, shape("a1")?, shape("b1")?);

        let k = e.real("k")?.unwrap_or(1.0 / 3.0);
        let k = e.check("k", k > 0.0 && k < 1.0, "must lie in (0, 1)", k)?;
        let k_f = e.real("k_f")?.unwrap_or(3.0);
        let k_f = e.check("k_f", k_f > 1.0, "must exceed 1", k_f)?;
        let f = e.real("f")?;
        if let Some(f) = f {
            e.check("f", f > 0.0 && f < 1.0, "must lie in (0, 1)", ())?;
        }

        let n_min = e.count("n_min")?.unwrap_or(5);
        let n_min = e.check("n_min", n_min >= 1, "must be at least 1", n_min)?;
        let n_max = e.count("n_max")?.unwrap_or(60);
        let n_max = e.check("n_max", n_max > n_min, format!("must exceed n_min = {n_min}"), n_max)?;
        let window = e.count("window")?.unwrap_or(CalibrationConstraints::DEFAULT_WINDOW);
        let output_format = match e.values.get("output_format") {
            Some((line, text)) => text
                .parse()
                .map_err(|m: String| ConfigError::at(*line, "output_format", m))?,
            None => OutputFormat::Table,
        };

        let config = RunConfig {
            p0,
            alpha,
            beta,
            power_prior,
            a0,
            b0,
            a1,
            b1,
            k,
            k_f,
            f,
            n_min,
            n_max,
            window,
            output_format,
        };
        // Priors can still be rejected jointly, e.g. a Beta with no mass on [p0, 1].
        config.try_problem().map_err(|err| ConfigError {
            line: None,
            field: None,
            message: err.to_string(),
        })?;
        Ok(config)
    }
}
