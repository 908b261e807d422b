//! Job configuration: datum, labels, mode and numeric inputs.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use hecke_core::scalar::parse_rational;
use hecke_core::{AffineWeylGroup, HeckeAlgebra, LabelSet, Preset, RootDatum, TorusPoint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Usage or configuration problem; exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<hecke_core::HeckeError> for ConfigError {
    fn from(e: hecke_core::HeckeError) -> Self {
        ConfigError(e.to_string())
    }
}

pub type ConfigResult<T> = Result<T, ConfigError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Formal,
    Rational,
    Complex,
}

/// Everything a command needs after parsing.
pub struct JobConfig {
    pub datum_name: String,
    pub alg: HeckeAlgebra,
    pub mode: Mode,
    /// `q` per label variable, present in numeric modes.
    pub q_values: Option<Vec<BigRational>>,
}

impl JobConfig {
    pub fn load(datum: &str, labels: Option<&Path>, mode: Mode) -> ConfigResult<JobConfig> {
        let d = load_datum(datum)?;
        let name = d.name().to_string();
        let g = Arc::new(AffineWeylGroup::from_datum(d)?);
        let (set, q_values) = match labels {
            Some(path) => labels_from_file(&g, path, mode)?,
            None => {
                let set = LabelSet::for_group(&g)?;
                let q = (mode != Mode::Formal).then(|| vec![BigRational::from_integer(4.into()); set.nvars()]);
                (set, q)
            }
        };
        Ok(JobConfig { datum_name: name, alg: HeckeAlgebra::new(g, set), mode, q_values })
    }

    pub fn var_names(&self) -> Vec<String> {
        self.alg.var_names().to_vec()
    }

    pub fn require_numeric(&self, what: &str) -> ConfigResult<&[BigRational]> {
        match (&self.mode, &self.q_values) {
            (Mode::Formal, _) | (_, None) => {
                Err(ConfigError(format!("{what} needs numeric labels: pass --mode rational or --mode complex")))
            }
            (_, Some(q)) => Ok(q),
        }
    }

    pub fn rational_v(&self) -> ConfigResult<Vec<BigRational>> {
        let q = self.require_numeric("rational mode")?;
        Ok(self.alg.labels().rational_values(q)?)
    }

    pub fn complex_v(&self) -> ConfigResult<Vec<Complex64>> {
        let q = self.require_numeric("complex mode")?;
        let f: Vec<f64> = q.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        Ok(self.alg.labels().complex_values(&f)?)
    }
}

/// A preset name, or a path to a root-datum JSON file.
pub fn load_datum(datum: &str) -> ConfigResult<RootDatum> {
    let path = Path::new(datum);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{datum}: {e}")))?;
        let d = RootDatum::from_json(&text)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(datum).to_string();
        Ok(d.with_name(stem))
    } else {
        Ok(RootDatum::preset(Preset::parse(datum)?)?)
    }
}

/// Labels file: a JSON object from class index to a value. In formal mode
/// a value is `"formal"` (a fresh variable) or a variable name shared by
/// every class that uses it; in numeric modes it is `q` as `"n"` or
/// `"n/d"`. Every class must appear exactly once.
fn labels_from_file(
    g: &AffineWeylGroup,
    path: &Path,
    mode: Mode,
) -> ConfigResult<(LabelSet, Option<Vec<BigRational>>)> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    let raw: BTreeMap<String, serde_json::Value> = serde_json::from_str(&text)
        .map_err(|e| ConfigError(format!("{}: labels must be a JSON object: {e}", path.display())))?;
    let mut names = BTreeMap::new();
    let mut q_of_name: BTreeMap<String, BigRational> = BTreeMap::new();
    for (k, v) in &raw {
        let s = match v {
            serde_json::Value::String(s) => s.trim().to_string(),
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(ConfigError(format!("class {k}: unsupported value {other}"))),
        };
        let name = match mode {
            Mode::Formal => {
                if s == "formal" {
                    format!("v{k}")
                } else if s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    s
                } else {
                    return Err(ConfigError(format!("class {k}: `{s}` is not a variable name (formal mode)")));
                }
            }
            Mode::Rational | Mode::Complex => {
                let q = parse_rational(&s)
                    .ok_or_else(|| ConfigError(format!("class {k}: `{s}` is not a rational q (numeric mode)")))?;
                let name = format!("v{k}");
                q_of_name.insert(name.clone(), q);
                name
            }
        };
        names.insert(k.clone(), name);
    }
    let set = LabelSet::from_names(g, &names)?;
    let q = match mode {
        Mode::Formal => None,
        _ => Some(set.names().iter().map(|n| q_of_name[n].clone()).collect()),
    };
    Ok((set, q))
}

/// Parse `--t` values: `num/den` per coordinate, or `re,im` in complex mode.
pub fn parse_rational_point(vals: &[String], rank: usize) -> ConfigResult<TorusPoint<BigRational>> {
    check_len(vals, rank)?;
    let v = vals
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| ConfigError(format!("--t `{s}` is not a rational"))))
        .collect::<ConfigResult<Vec<_>>>()?;
    Ok(TorusPoint::new(v)?)
}

pub fn parse_complex_point(vals: &[String], rank: usize) -> ConfigResult<TorusPoint<Complex64>> {
    check_len(vals, rank)?;
    let v = vals
        .iter()
        .map(|s| {
            if let Some((re, im)) = s.split_once(',') {
                let re: f64 = re.trim().parse().map_err(|_| ConfigError(format!("--t `{s}`: bad real part")))?;
                let im: f64 = im.trim().parse().map_err(|_| ConfigError(format!("--t `{s}`: bad imaginary part")))?;
                Ok(Complex64::new(re, im))
            } else {
                let r = parse_rational(s).ok_or_else(|| ConfigError(format!("--t `{s}` is not a number")))?;
                Ok(Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0))
            }
        })
        .collect::<ConfigResult<Vec<_>>>()?;
    Ok(TorusPoint::new(v)?)
}

fn check_len(vals: &[String], rank: usize) -> ConfigResult<()> {
    if vals.len() != rank {
        return Err(ConfigError(format!("--t given {} times, datum has rank {rank}", vals.len())));
    }
    Ok(())
}

/// `"a,b,…"` as a lattice point.
pub fn parse_point(s: &str, rank: usize) -> ConfigResult<Vec<i64>> {
    let v = s
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| ConfigError(format!("--x `{s}`: bad coordinate"))))
        .collect::<ConfigResult<Vec<_>>>()?;
    if v.len() != rank {
        return Err(ConfigError(format!("--x `{s}` has {} coordinates, datum has rank {rank}", v.len())));
    }
    Ok(v)
}
