//! Named verification suites for `verify`.

use hecke_core::lattice::Vector;
use hecke_core::tracegen::{box_points, positive_at_sqrt2};
use hecke_core::{AffineWeylElem, Bernstein, HeckeAlgebra, HeckeElem, LaurentPoly, Principal, TraceGen};
use serde_json::{json, Value};

use crate::commands::random_regular_point;
use crate::config::{ConfigError, ConfigResult, JobConfig, Mode};

pub const SYMBOLIC: &[&str] = &[
    "quadratic",
    "braid",
    "orthogonality",
    "center",
    "lusztig",
    "oracle",
    "support",
    "positivity",
    "rank-one",
    "intertwiner-square",
    "braid-intertwiner",
    "theta-plus",
];

pub const NUMERIC: &[&str] = &["macdonald"];

/// Outcome of one suite; `Err` carries a counterexample.
type Check = Result<usize, String>;

fn fail(msg: String) -> Check {
    Err(msg)
}

pub fn run(cfg: &JobConfig, names: &[String], radius: i64, seed: u64) -> ConfigResult<(u8, Value)> {
    let selected: Vec<String> = if names.is_empty() {
        let mut v: Vec<String> = SYMBOLIC.iter().map(|s| s.to_string()).collect();
        if cfg.mode != Mode::Formal {
            v.extend(NUMERIC.iter().map(|s| s.to_string()));
        }
        v
    } else {
        names.to_vec()
    };
    let mut reports = Vec::new();
    let mut failed = 0;
    for name in &selected {
        let res = match name.as_str() {
            "quadratic" => quadratic(&cfg.alg),
            "braid" => braid(&cfg.alg),
            "orthogonality" => orthogonality(&cfg.alg, radius),
            "center" => center(&cfg.alg, radius)?,
            "lusztig" => lusztig(&cfg.alg, radius)?,
            "oracle" => oracle(&cfg.alg, radius)?,
            "support" => support(&cfg.alg, radius)?,
            "positivity" => positivity(&cfg.alg, radius)?,
            "rank-one" => rank_one(&cfg.alg)?,
            "intertwiner-square" => intertwiner_square(&cfg.alg)?,
            "braid-intertwiner" => braid_intertwiner(&cfg.alg)?,
            "theta-plus" => theta_plus(&cfg.alg, radius)?,
            "macdonald" => macdonald(cfg, radius, seed)?,
            other => {
                return Err(ConfigError(format!(
                    "unknown suite `{other}`; known: {}",
                    SYMBOLIC.iter().chain(NUMERIC).copied().collect::<Vec<_>>().join(", ")
                )))
            }
        };
        let rec = match res {
            Ok(n) => json!({ "suite": name, "pass": true, "checked": n }),
            Err(c) => {
                failed += 1;
                json!({ "suite": name, "pass": false, "counterexample": c })
            }
        };
        reports.push(rec);
    }
    let v = json!({
        "command": "verify",
        "datum": cfg.datum_name,
        "vars": cfg.var_names(),
        "box": radius,
        "suites": reports,
        "failed": failed,
    });
    Ok((u8::from(failed > 0), v))
}

fn quadratic(alg: &HeckeAlgebra) -> Check {
    let g = alg.group();
    for i in 0..g.fundamental().len() {
        let t = alg.t_simple(i);
        let q = LaurentPoly::mono(alg.q_s(i).clone());
        let lhs = alg.mul(&t, &t).map_err(|e| e.to_string())?;
        let rhs = t.scale(&(&q - &LaurentPoly::one())).add(&alg.one().scale(&q));
        if lhs != rhs {
            return fail(format!("T_s{i}^2 = {}", alg.display(&lhs)));
        }
    }
    Ok(g.fundamental().len())
}

fn alternating(i: usize, j: usize, m: usize) -> Vec<usize> {
    (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect()
}

fn chain(alg: &HeckeAlgebra, word: &[usize]) -> Result<HeckeElem, String> {
    let mut acc = alg.one();
    for &i in word {
        acc = alg.mul(&acc, &alg.t_simple(i)).map_err(|e| e.to_string())?;
    }
    Ok(acc)
}

/// Braid order of `s_i s_j` in `W0`.
fn braid_order(alg: &HeckeAlgebra, i: usize, j: usize) -> usize {
    let w0 = alg.group().finite();
    let st = w0.mul(w0.simple(i), w0.simple(j));
    let mut p = st;
    let mut m = 1;
    while p != w0.identity() {
        p = w0.mul(p, st);
        m += 1;
    }
    m
}

fn braid(alg: &HeckeAlgebra) -> Check {
    let n = alg.group().finite().num_simple();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            let m = braid_order(alg, i, j);
            let a = chain(alg, &alternating(i, j, m))?;
            let b = chain(alg, &alternating(j, i, m))?;
            if a != b {
                return fail(format!("braid s{i}, s{j} of length {m}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

fn short_elements(alg: &HeckeAlgebra, max_len: usize) -> Vec<AffineWeylElem> {
    let g = alg.group();
    let w0 = g.finite();
    let radius = (max_len + w0.length(w0.longest())) as i64;
    let mut out = Vec::new();
    for x in box_points(g.rank(), radius) {
        for w in 0..w0.order() {
            let el = g.mul(&g.from_finite(w), &g.translation(&x));
            if g.length(&el) <= max_len {
                out.push(el);
            }
        }
    }
    out
}

fn orthogonality(alg: &HeckeAlgebra, radius: i64) -> Check {
    let els = short_elements(alg, radius.max(0) as usize);
    let mut n = 0;
    for a in &els {
        let sa = alg.star(&alg.t(a));
        for b in &els {
            let v = alg.tau_product(&sa, &alg.t(b));
            let expect = if a == b { LaurentPoly::mono(alg.q(a)) } else { LaurentPoly::zero() };
            if v != expect {
                let g = alg.group();
                return fail(format!("tau(T_{}* T_{}) = {v}", g.display(a), g.display(b)));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn center(alg: &HeckeAlgebra, radius: i64) -> ConfigResult<Check> {
    let b = Bernstein::new(alg)?;
    let g = alg.group();
    let mut n = 0;
    for x in box_points(g.rank(), radius.min(2)) {
        let z = b.center_element(&x);
        for i in 0..g.fundamental().len() {
            if !b.commutator(&z, &alg.t_simple(i))?.is_zero() {
                return Ok(fail(format!("z_{x:?} does not commute with T_s{i}")));
            }
            n += 1;
        }
    }
    Ok(Ok(n))
}

fn lusztig(alg: &HeckeAlgebra, radius: i64) -> ConfigResult<Check> {
    let b = Bernstein::new(alg)?;
    let mut n = 0;
    for x in box_points(alg.group().rank(), radius) {
        for i in 0..alg.group().finite().num_simple() {
            let (lhs, rhs) = b.lusztig_commutation(&x, i)?;
            if lhs != rhs {
                return Ok(fail(format!("x = {x:?}, s{i}: {} vs {}", alg.display(&lhs), alg.display(&rhs))));
            }
            n += 1;
        }
    }
    Ok(Ok(n))
}

fn oracle(alg: &HeckeAlgebra, radius: i64) -> ConfigResult<Check> {
    let tg = TraceGen::new(alg)?;
    let mut n = 0;
    for x in tg.negative_cone(radius) {
        let (a, b) = (tg.trace_theta_partition(&x)?, tg.trace_theta_direct(&x)?);
        if a != b {
            return Ok(fail(format!("x = {x:?}: partition {a}, direct {b}")));
        }
        n += 1;
    }
    Ok(Ok(n))
}

fn support(alg: &HeckeAlgebra, radius: i64) -> ConfigResult<Check> {
    let tg = TraceGen::new(alg)?;
    let d = alg.group().datum();
    let mut n = 0;
    for x in box_points(d.rank(), radius) {
        if d.in_negative_cone(&x) {
            continue;
        }
        let v = tg.trace_theta_direct(&x)?;
        if !v.is_zero() {
            return Ok(fail(format!("x = {x:?}: {v}")));
        }
        n += 1;
    }
    Ok(Ok(n))
}

fn positivity(alg: &HeckeAlgebra, radius: i64) -> ConfigResult<Check> {
    let tg = TraceGen::new(alg)?;
    let mut n = 0;
    for x in tg.negative_cone(radius) {
        let v = tg.trace_theta_direct(&x)?;
        if !positive_at_sqrt2(&v) {
            return Ok(fail(format!("x = {x:?}: {v}")));
        }
        n += 1;
    }
    Ok(Ok(n))
}

fn rank_one(alg: &HeckeAlgebra) -> ConfigResult<Check> {
    let tg = TraceGen::new(alg)?;
    for i in 0..tg.positive_roots().len() {
        let (lhs, rhs) = tg.rank_one_series(i, 12)?;
        if lhs != rhs {
            return Ok(fail(format!("root {:?}", tg.positive_roots()[i].root.as_slice())));
        }
    }
    Ok(Ok(tg.positive_roots().len()))
}

fn intertwiner_square(alg: &HeckeAlgebra) -> ConfigResult<Check> {
    let pr = Principal::new(alg)?;
    let n = alg.group().finite().num_simple();
    for i in 0..n {
        let r = pr.intertwiner_element(i)?;
        if r != pr.intertwiner_right(i)? {
            return Ok(fail(format!("left and right forms of R_s{i} differ")));
        }
        if alg.mul(&r, &r)? != pr.bernstein().embed(&pr.d_simple(i)) {
            return Ok(fail(format!("R_s{i}^2 != D_s{i}")));
        }
    }
    Ok(Ok(n))
}

fn braid_intertwiner(alg: &HeckeAlgebra) -> ConfigResult<Check> {
    let pr = Principal::new(alg)?;
    let n = alg.group().finite().num_simple();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            let m = braid_order(alg, i, j);
            if pr.intertwiner_word(&alternating(i, j, m))? != pr.intertwiner_word(&alternating(j, i, m))? {
                return Ok(fail(format!("braid of R_s{i}, R_s{j} of length {m}")));
            }
            count += 1;
        }
    }
    Ok(Ok(count))
}

fn theta_plus(alg: &HeckeAlgebra, radius: i64) -> ConfigResult<Check> {
    let pr = Principal::new(alg)?;
    let d = alg.group().datum();
    let dominant: Vec<Vector> = box_points(d.rank(), radius).into_iter().filter(|x| d.is_dominant(x)).collect();
    let mut n = 0;
    for x in &dominant {
        let tp = pr.theta_plus(x)?;
        if tp.two_sided != tp.coset || tp.two_sided != tp.closed {
            return Ok(fail(format!("expansions of theta+_{:?} differ", x.as_slice())));
        }
        for y in &dominant {
            if !pr.inner_plus(x, y)?.same_as(&pr.inner_plus_expected(x, y)?) {
                return Ok(fail(format!("(theta+_{:?}, theta+_{:?})", x.as_slice(), y.as_slice())));
            }
            n += 1;
        }
    }
    Ok(Ok(n))
}

fn macdonald(cfg: &JobConfig, radius: i64, seed: u64) -> ConfigResult<Check> {
    let pr = Principal::new(&cfg.alg)?;
    let p = pr.params(cfg.rational_v()?)?;
    let d = cfg.alg.group().datum();
    let mut n = 0;
    for k in 0..20u64 {
        let t = random_regular_point(&cfg.alg, seed.wrapping_add(k));
        for x in box_points(d.rank(), radius.min(2)).into_iter().filter(|x| d.is_dominant(x)) {
            let f = match pr.macdonald(&x, &t, &p) {
                Ok(f) => f,
                Err(hecke_core::HeckeError::Pole(_)) => continue,
                Err(e) => return Err(e.into()),
            };
            let direct = pr.spherical_theta_plus(&x, &t, &p)?;
            if f != direct {
                return Ok(fail(format!("t = {:?}, x = {:?}: {f} vs {direct}", t.images(), x.as_slice())));
            }
            n += 1;
        }
    }
    Ok(Ok(n))
}
