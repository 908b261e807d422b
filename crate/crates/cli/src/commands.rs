//! `presets`, `trace`, `series` and `spherical`.

use std::sync::Arc;

use hecke_core::lattice::Vector;
use hecke_core::tracegen::box_points;
use hecke_core::{
    AffineWeylGroup, HeckeAlgebra, HeckeError, LaurentPoly, Preset, Principal, RootDatum, Scalar, TorusPoint,
    TraceGen,
};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{parse_complex_point, parse_rational_point, ConfigError, ConfigResult, JobConfig, Mode};

/// Exit code plus the text to emit.
pub struct Report {
    pub code: u8,
    pub text: String,
}

impl Report {
    fn json(code: u8, v: &Value) -> Report {
        Report { code, text: serde_json::to_string_pretty(v).expect("serializable") + "\n" }
    }
}

pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
}

impl JsonScalar for BigRational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl JsonScalar for Complex64 {
    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }
}

fn poly_json(p: &LaurentPoly, vars: &[String]) -> Value {
    json!({ "text": p.display_with(vars), "terms": p.to_json(vars).terms })
}

fn numeric_value(cfg: &JobConfig, p: &LaurentPoly) -> ConfigResult<Option<Value>> {
    Ok(match cfg.mode {
        Mode::Formal => None,
        Mode::Rational => Some(p.evaluate(&cfg.rational_v()?)?.to_json()),
        Mode::Complex => Some(p.evaluate(&cfg.complex_v()?)?.to_json()),
    })
}

pub fn presets() -> ConfigResult<Report> {
    let mut out = Vec::new();
    for name in ["A1-weight", "A1-root", "A2", "B2", "C2", "G2", "BnCn(2)", "BnCn(3)", "GLn(2)", "GLn(3)"] {
        let d = RootDatum::preset(Preset::parse(name)?)?;
        let g = Arc::new(AffineWeylGroup::from_datum(d)?);
        let alg = HeckeAlgebra::generic(g.clone())?;
        let d = g.datum();
        out.push(json!({
            "name": name,
            "rank": d.rank(),
            "positive_roots": d.num_positive(),
            "weyl_order": g.finite().order(),
            "label_classes": alg.labels().describe(&g),
        }));
    }
    Ok(Report::json(0, &json!({ "catalog": Preset::CATALOG, "presets": out })))
}

pub fn trace(cfg: &JobConfig, radius: i64, explicit: &[Vec<i64>]) -> ConfigResult<Report> {
    let tg = TraceGen::new(&cfg.alg)?;
    let d = cfg.alg.group().datum();
    let pts: Vec<Vector> = if explicit.is_empty() {
        box_points(d.rank(), radius)
    } else {
        explicit.iter().map(|x| x.iter().copied().collect()).collect()
    };
    let vals: Vec<hecke_core::Result<(LaurentPoly, LaurentPoly)>> = pts
        .par_iter()
        .map(|x| Ok((tg.trace_theta_partition(x)?, tg.trace_theta_direct(x)?)))
        .collect();
    let vars = cfg.var_names();
    let mut records = Vec::new();
    let mut mismatches = 0;
    for (x, v) in pts.iter().zip(vals) {
        let (part, direct) = v?;
        let equal = part == direct;
        if !equal {
            mismatches += 1;
        }
        let mut rec = json!({
            "x": x.as_slice(),
            "in_negative_cone": d.in_negative_cone(x),
            "partition": poly_json(&part, &vars),
            "direct": poly_json(&direct, &vars),
            "equal": equal,
        });
        if let Some(val) = numeric_value(cfg, &direct)? {
            rec["value"] = val;
        }
        records.push(rec);
    }
    let report = json!({
        "command": "trace",
        "datum": cfg.datum_name,
        "vars": vars,
        "box": radius,
        "records": records,
        "mismatches": mismatches,
    });
    Ok(Report::json(u8::from(mismatches > 0), &report))
}

pub fn series(cfg: &JobConfig, radius: i64) -> ConfigResult<Report> {
    let tg = TraceGen::new(&cfg.alg)?;
    let d = cfg.alg.group().datum();
    let vars = cfg.var_names();
    let mut records = Vec::new();
    for (x, p) in tg.series(radius)? {
        let mut rec = json!({
            "x": x.as_slice(),
            "height": d.height(&hecke_core::lattice::neg(&x)),
            "trace": poly_json(&p, &vars),
        });
        if let Some(val) = numeric_value(cfg, &p)? {
            rec["value"] = val;
        }
        records.push(rec);
    }
    let report = json!({
        "command": "series",
        "datum": cfg.datum_name,
        "vars": vars,
        "box": radius,
        "records": records,
    });
    Ok(Report::json(0, &report))
}

/// A seeded regular point with small rational coordinates.
pub fn random_regular_point(alg: &HeckeAlgebra, seed: u64) -> TorusPoint<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = alg.group().rank();
    loop {
        let v: Vec<BigRational> = (0..rank)
            .map(|_| loop {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=9);
                if n != 0 && n.abs() != d {
                    break BigRational::new(n.into(), d.into());
                }
            })
            .collect();
        let t = TorusPoint::new(v).expect("nonzero coordinates");
        if t.is_regular(alg.group().finite()) {
            return t;
        }
    }
}

pub fn spherical(cfg: &JobConfig, radius: i64, t_args: &[String], seed: u64) -> ConfigResult<Report> {
    let rank = cfg.alg.group().rank();
    match cfg.mode {
        Mode::Formal => Err(ConfigError(
            "spherical evaluates at a torus point: pass --mode rational or --mode complex".into(),
        )),
        Mode::Rational => {
            let t = if t_args.is_empty() {
                random_regular_point(&cfg.alg, seed)
            } else {
                parse_rational_point(t_args, rank)?
            };
            spherical_at(cfg, radius, &t, cfg.rational_v()?, |a, b| (a.clone() - b.clone()).is_negligible())
        }
        Mode::Complex => {
            let t = if t_args.is_empty() {
                TorusPoint::from_rational(&random_regular_point(&cfg.alg, seed))
            } else {
                parse_complex_point(t_args, rank)?
            };
            spherical_at(cfg, radius, &t, cfg.complex_v()?, |a: &Complex64, b| (a - b).norm() <= 1e-8)
        }
    }
}

fn spherical_at<S: JsonScalar>(
    cfg: &JobConfig,
    radius: i64,
    t: &TorusPoint<S>,
    v: Vec<S>,
    agree: impl Fn(&S, &S) -> bool,
) -> ConfigResult<Report> {
    let pr = Principal::new(&cfg.alg)?;
    let p = pr.params(v)?;
    let d = cfg.alg.group().datum();
    let tj: Vec<Value> = t.images().iter().map(|c| c.to_json()).collect();
    let mut lines = String::new();
    let (mut computed, mut mismatches) = (0, 0);
    for x in box_points(d.rank(), radius).into_iter().filter(|x| d.is_dominant(x)) {
        let direct = pr.spherical_theta_plus(&x, t, &p)?;
        let rec = match pr.macdonald(&x, t, &p) {
            Ok(f) => {
                computed += 1;
                let ok = agree(&f, &direct);
                if !ok {
                    mismatches += 1;
                }
                json!({
                    "x": x.as_slice(),
                    "t": tj,
                    "macdonald": f.to_json(),
                    "direct": direct.to_json(),
                    "diff": (f - direct).modulus(),
                    "agree": ok,
                    "pole": false,
                })
            }
            Err(HeckeError::Pole(_)) | Err(HeckeError::DivisionByZero(_)) => json!({
                "x": x.as_slice(),
                "t": tj,
                "macdonald": null,
                "direct": direct.to_json(),
                "diff": null,
                "agree": null,
                "pole": true,
            }),
            Err(e) => return Err(e.into()),
        };
        lines.push_str(&serde_json::to_string(&rec).expect("serializable"));
        lines.push('\n');
    }
    let code = u8::from(computed == 0 || mismatches > 0);
    Ok(Report { code, text: lines })
}
