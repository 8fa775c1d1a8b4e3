//! Command-line front end: compute, cross-check and serialize fan
//! statistics, Poincare polynomials, chain classifications and the
//! finite-field fiber oracle.

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::fan::{check_fiber_flatness, fan_census, weyl_chamber_fan, Cone};
use crate::homology::{
    poincare_from_descents, poincare_from_fan, poincare_series, IntPolynomial,
};
use crate::moduli::{
    classify_bn_data, classify_cn_data, enumerate_fiber_points, expected_chain_points,
    format_type, is_prime, orbit_type, predicted_chain_length, validate_data,
    CombinatorialType, ProjectivePair, RnData,
};
use crate::rootsys::{Family, LatticePoint, RootVector};

#[derive(Parser, Debug)]
#[command(name = "weyltoric", version, about = "Combinatorics of toric varieties of classical root systems", disable_help_subcommand = true)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Ray counts, f-vector, smoothness, completeness and flatness of the
    /// Weyl chamber fan
    FanStats { family: String, rank: usize },
    /// Poincare polynomial of X(R_n), optionally cross-checked over all
    /// computation routes
    Poincare {
        family: String,
        rank: usize,
        /// Verify that every available route yields the same polynomial
        #[arg(long)]
        check_all: bool,
    },
    /// Validate projective data and classify it (or a torus orbit) into a
    /// combinatorial chain type
    Classify {
        family: String,
        rank: usize,
        /// Data entries root=a:b (roots: u1, 2u1, b12, g12); unset pairs
        /// default to the generic (1:1)
        #[arg(long)]
        data: Vec<String>,
        /// Torus orbit, e.g. ray:v1 or ray:1/2(v1+v2) or cone:v1;v1+v2
        #[arg(long)]
        orbit: Option<String>,
    },
    /// Brute-force fiber point count over F_q, compared against the
    /// classifier prediction
    Oracle {
        family: String,
        rank: usize,
        q: i64,
        #[arg(long)]
        data: Vec<String>,
        #[arg(long)]
        orbit: Option<String>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

type CmdResult = Result<(Vec<String>, serde_json::Value, i32), Failure>;

pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders --help/--version as "errors" with exit code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = match &cli.cmd {
        Cmd::FanStats { family, rank } => cmd_fan_stats(family, *rank),
        Cmd::Poincare { family, rank, check_all } => cmd_poincare(family, *rank, *check_all),
        Cmd::Classify { family, rank, data, orbit } => {
            cmd_classify(family, *rank, data, orbit.as_deref())
        }
        Cmd::Oracle { family, rank, q, data, orbit } => {
            cmd_oracle(family, *rank, *q, data, orbit.as_deref())
        }
    };
    match out {
        Ok((lines, value, code)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                for l in lines {
                    println!("{l}");
                }
            }
            code
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Check(msg)) => {
            eprintln!("cross-check failed: {msg}");
            1
        }
    }
}

fn parse_family(s: &str) -> Result<Family, Failure> {
    s.to_uppercase().parse::<Family>().map_err(Failure::Usage)
}

fn parse_compact_family(s: &str, rank: usize) -> Result<Family, Failure> {
    let f = parse_family(s)?;
    if f == Family::A {
        return Err(Failure::Usage("family A has no chamber fan here".into()));
    }
    if rank == 0 || (f == Family::D && rank < 2) {
        return Err(Failure::Usage(format!("rank {rank} out of range for {f}")));
    }
    Ok(f)
}

/// Root name grammar: u1, 2u1, b12 (u1-u2), g12 (u1+u2); case-insensitive.
fn parse_root(s: &str, family: Family, n: usize) -> Result<RootVector, Failure> {
    let s = s.to_lowercase();
    let bad = || Failure::Usage(format!("cannot parse root name `{s}`"));
    let digit = |c: char| c.to_digit(10).map(|d| d as usize).filter(|&d| d >= 1 && d <= n);
    let chars: Vec<char> = s.chars().collect();
    let root = match chars.as_slice() {
        ['u', i] => RootVector::u(digit(*i).ok_or_else(bad)?, n),
        ['2', 'u', i] => {
            let i = digit(*i).ok_or_else(bad)?;
            RootVector::u(i, n).add(&RootVector::u(i, n))
        }
        ['b', i, j] => RootVector::beta(digit(*i).ok_or_else(bad)?, digit(*j).ok_or_else(bad)?, n),
        ['g', i, j] => RootVector::gamma(digit(*i).ok_or_else(bad)?, digit(*j).ok_or_else(bad)?, n),
        _ => return Err(bad()),
    };
    let rs = crate::rootsys::build_root_system(family, n).map_err(usage)?;
    if !rs.contains(&root) {
        return Err(Failure::Usage(format!("{root} is not a root of {family}{n}")));
    }
    Ok(root)
}

/// One ray expression: v1+v2, -v1, or 1/2(v1-v2).  Coordinates are stored in
/// half units, so an integer ray stores +-2 and a half-sum ray +-1.
fn parse_ray_expr(s: &str, n: usize) -> Result<LatticePoint, Failure> {
    let s = s.trim().to_lowercase();
    let bad = || Failure::Usage(format!("cannot parse ray `{s}`"));
    let (body, unit) = if let Some(rest) = s.strip_prefix("1/2(") {
        (rest.strip_suffix(')').ok_or_else(bad)?, 1i64)
    } else {
        (s.as_str(), 2i64)
    };
    let mut coords = vec![0i64; n];
    let mut sign = 1i64;
    let mut rest = body;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('+') {
            sign = 1;
            rest = r;
            continue;
        }
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
            continue;
        }
        let r = rest.strip_prefix('v').ok_or_else(bad)?;
        let end = r.find(['+', '-']).unwrap_or(r.len());
        let i: usize = r[..end].parse().map_err(|_| bad())?;
        if i < 1 || i > n || coords[i - 1] != 0 {
            return Err(bad());
        }
        coords[i - 1] = sign * unit;
        sign = 1;
        rest = &r[end..];
    }
    if coords.iter().all(|&c| c == 0) {
        return Err(bad());
    }
    Ok(LatticePoint::new(coords))
}

/// Orbit grammar: `ray:EXPR` or `cone:EXPR;EXPR;...` (a bare EXPR is a ray).
fn parse_orbit(s: &str, n: usize) -> Result<Vec<LatticePoint>, Failure> {
    let body = s
        .strip_prefix("ray:")
        .or_else(|| s.strip_prefix("cone:"))
        .unwrap_or(s);
    body.split(';').map(|e| parse_ray_expr(e, n)).collect()
}

fn parse_pair(v: &str) -> Result<ProjectivePair, Failure> {
    let (a, b) = v
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("data value `{v}` is not of the form a:b")))?;
    let a: i64 = a.trim().parse().map_err(usage)?;
    let b: i64 = b.trim().parse().map_err(usage)?;
    ProjectivePair::rational(a, b).map_err(usage)
}

fn build_data(
    family: Family,
    n: usize,
    entries: &[String],
    orbit: Option<&[LatticePoint]>,
) -> Result<RnData, Failure> {
    let mut d = match orbit {
        Some(rays) => {
            let p = rays.iter().fold(LatticePoint::zero(n), |a, b| a.add(b));
            RnData::from_orbit_point(family, n, &p).map_err(usage)?
        }
        None => RnData::generic(family, n).map_err(usage)?,
    };
    for entry in entries.iter().flat_map(|e| e.split(',')) {
        let (name, value) = entry
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("data entry `{entry}` is not root=a:b")))?;
        let root = parse_root(name.trim(), family, n)?;
        d.set(&root, parse_pair(value.trim())?);
    }
    Ok(d)
}

fn poly_json(p: &IntPolynomial) -> serde_json::Value {
    json!({ "coeffs": p.coeffs(), "display": p.to_string() })
}

fn type_json(t: &CombinatorialType) -> serde_json::Value {
    json!({
        "parts": t.parts(),
        "components": t.components(),
        "flags": t.flag_strings(),
        "display": format_type(t),
    })
}

fn cmd_fan_stats(family: &str, rank: usize) -> CmdResult {
    let family = parse_compact_family(family, rank)?;
    if rank > 7 {
        return Err(Failure::Usage(format!("rank {rank} exceeds the supported bound 7")));
    }
    let census = fan_census(family, rank).map_err(usage)?;
    let mut lines = vec![
        format!("fan: {family}{rank}"),
        format!("rays: {}", census.ray_count),
        format!("maximal cones: {}", census.maximal_cone_count),
    ];
    let mut value = json!({
        "command": "fan-stats",
        "family": family.to_string(),
        "rank": rank,
        "rays": census.ray_count,
        "maximal_cones": census.maximal_cone_count,
    });
    if rank <= 4 {
        let fan = weyl_chamber_fan(family, rank).map_err(usage)?;
        let f = fan.f_vector();
        let smooth = fan.is_smooth();
        let complete = fan.is_complete();
        let flatness = check_fiber_flatness(family, rank).map_err(usage)?;
        lines.push(format!(
            "f-vector: [{}]",
            f.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
        ));
        lines.push(format!("smooth: {smooth}"));
        lines.push(format!("complete: {complete}"));
        lines.push(format!(
            "fibration over {family}{rank} flat-compatible: {} ({} witness cones)",
            flatness.flat_compatible,
            flatness.witnesses.len()
        ));
        let obj = value.as_object_mut().unwrap();
        obj.insert("f_vector".into(), json!(f));
        obj.insert("smooth".into(), json!(smooth));
        obj.insert("complete".into(), json!(complete));
        obj.insert("lattice".into(), json!(fan.lattice.to_string()));
        obj.insert(
            "ray_coords".into(),
            json!(fan.rays.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>()),
        );
        obj.insert(
            "flatness".into(),
            json!({
                "flat_compatible": flatness.flat_compatible,
                "witnesses": flatness.witnesses.len(),
            }),
        );
    }
    Ok((lines, value, 0))
}

fn cmd_poincare(family: &str, rank: usize, check_all: bool) -> CmdResult {
    let family = parse_compact_family(family, rank)?;
    if rank > 7 {
        return Err(Failure::Usage(format!("rank {rank} exceeds the supported bound 7")));
    }
    // the B and C fans share their face counts; D needs its own fan and is
    // kept to ranks where that fan is comfortable to build
    let poly = match family {
        Family::B | Family::C => poincare_series(rank).pop().unwrap(),
        Family::D => {
            if rank > 5 {
                return Err(Failure::Usage(format!("rank {rank} exceeds the bound 5 for D")));
            }
            poincare_from_fan(&weyl_chamber_fan(family, rank).map_err(usage)?)
        }
        Family::A => unreachable!(),
    };
    let chi = poly.eval(1);
    let palindromic = poly.is_palindromic(rank);
    let mut lines = vec![
        format!("poincare({family}{rank}) = {poly}"),
        format!("chi: {chi}"),
        format!("palindromic: {palindromic}"),
    ];
    let mut routes_agree = None;
    if check_all {
        let mut routes: Vec<(&str, IntPolynomial)> = Vec::new();
        if family == Family::B || family == Family::C {
            routes.push(("generating function", poincare_series(rank).pop().unwrap()));
            if rank <= 7 {
                routes.push(("descent statistic", poincare_from_descents(rank).map_err(usage)?));
            }
        }
        if rank <= 5 {
            let fan = weyl_chamber_fan(family, rank).map_err(usage)?;
            routes.push(("fan face counts", poincare_from_fan(&fan)));
        }
        let agree = routes.iter().all(|(_, p)| *p == poly);
        routes_agree = Some(agree);
        lines.push(format!(
            "routes checked: {}",
            routes.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
        ));
        lines.push(format!("routes agree: {agree}"));
        if !agree {
            return Err(Failure::Check(format!(
                "computation routes disagree for {family}{rank}"
            )));
        }
    }
    let value = json!({
        "command": "poincare",
        "family": family.to_string(),
        "rank": rank,
        "polynomial": poly_json(&poly),
        "chi": chi,
        "palindromic": palindromic,
        "routes_agree": routes_agree,
    });
    Ok((lines, value, 0))
}

fn cmd_classify(family: &str, rank: usize, data: &[String], orbit: Option<&str>) -> CmdResult {
    let family = parse_compact_family(family, rank)?;
    if rank > 5 {
        return Err(Failure::Usage(format!("rank {rank} exceeds the supported bound 5")));
    }
    let orbit_rays = orbit.map(|s| parse_orbit(s, rank)).transpose()?;
    if family == Family::D && orbit_rays.is_none() {
        return Err(Failure::Usage(
            "family D is classified by torus orbit; pass --orbit".into(),
        ));
    }
    let mut lines = Vec::new();
    let mut value = json!({
        "command": "classify",
        "family": family.to_string(),
        "rank": rank,
    });
    let obj_fiber = if let Some(rays) = &orbit_rays {
        let cone = if rays.is_empty() {
            unreachable!()
        } else {
            Cone::new(rays.clone(), weyl_chamber_fan(family, rank).map_err(usage)?.lattice)
                .map_err(usage)?
        };
        let t = orbit_type(family, rank, &cone).map_err(usage)?;
        Some(t)
    } else {
        None
    };
    if family == Family::D {
        let t = obj_fiber.unwrap();
        lines.push(format!("fiber: {}", format_type(&t)));
        value
            .as_object_mut()
            .unwrap()
            .insert("fiber".into(), type_json(&t));
        return Ok((lines, value, 0));
    }
    let d = build_data(family, rank, data, orbit_rays.as_deref())?;
    let validity = validate_data(&d).map_err(usage)?;
    lines.push(format!("valid: {}", validity.valid));
    let violations: Vec<String> = validity
        .violations
        .iter()
        .map(|(b, g, s)| format!("({b}, {g}, {s})"))
        .collect();
    for v in &violations {
        lines.push(format!("violated triple: {v}"));
    }
    {
        let obj = value.as_object_mut().unwrap();
        obj.insert("valid".into(), json!(validity.valid));
        obj.insert("violations".into(), json!(violations));
    }
    if validity.valid {
        let t = match family {
            Family::B => classify_bn_data(&d).map_err(usage)?,
            Family::C => classify_cn_data(&d).map_err(usage)?,
            _ => unreachable!(),
        };
        lines.push(format!("type: {}", format_type(&t)));
        value
            .as_object_mut()
            .unwrap()
            .insert("type".into(), type_json(&t));
        if let Some(ft) = obj_fiber {
            lines.push(format!("fiber: {}", format_type(&ft)));
            value
                .as_object_mut()
                .unwrap()
                .insert("fiber".into(), type_json(&ft));
        }
    }
    // invalid data is reported in full but counts as a failed check
    Ok((lines, value, if validity.valid { 0 } else { 1 }))
}

fn cmd_oracle(family: &str, rank: usize, q: i64, data: &[String], orbit: Option<&str>) -> CmdResult {
    let family = parse_compact_family(family, rank)?;
    if rank > 2 {
        return Err(Failure::Usage(format!("oracle runs at ranks 1 and 2, not {rank}")));
    }
    if !is_prime(q) || q > 13 {
        return Err(Failure::Usage(format!("{q} is not a prime <= 13")));
    }
    let orbit_rays = orbit.map(|s| parse_orbit(s, rank)).transpose()?;
    let d = build_data(family, rank, data, orbit_rays.as_deref())?;
    let validity = validate_data(&d).map_err(usage)?;
    if !validity.valid {
        return Err(Failure::Usage("the supplied data violates an A2 triple".into()));
    }
    let e = enumerate_fiber_points(&d, q).map_err(usage)?;
    let mut lines = vec![format!("count over F_{q}: {}", e.count)];
    let mut value = json!({
        "command": "oracle",
        "family": family.to_string(),
        "rank": rank,
        "q": q,
        "count": e.count,
    });
    let obj = value.as_object_mut().unwrap();
    match family {
        Family::B | Family::C => {
            let l = predicted_chain_length(&d).map_err(usage)?;
            let expected = expected_chain_points(l, q);
            let pass = e.count == expected;
            lines.push(format!("predicted chain length: {l}"));
            lines.push(format!("expected count: {expected}"));
            lines.push(format!("{}", if pass { "PASS" } else { "FAIL" }));
            obj.insert("predicted_length".into(), json!(l));
            obj.insert("expected".into(), json!(expected));
            obj.insert("pass".into(), json!(pass));
            if !pass {
                return Err(Failure::Check(format!(
                    "count {} does not match the predicted chain of {l} lines",
                    e.count
                )));
            }
        }
        Family::D => {
            // no chain prediction; detect quadratic growth over q = 3, 5, 7
            let counts: Vec<i64> = [3i64, 5, 7]
                .iter()
                .map(|&p| enumerate_fiber_points(&d, p).map(|e| e.count as i64))
                .collect::<Result<_, _>>()
                .map_err(usage)?;
            let a = ((counts[2] - counts[1]) / 2 - (counts[1] - counts[0]) / 2) / 4;
            let quadratic = a >= 1;
            lines.push(format!("counts at q = 3, 5, 7: {counts:?}"));
            lines.push(format!("quadratic growth: {quadratic}"));
            obj.insert("counts_357".into(), json!(counts));
            obj.insert("quadratic_growth".into(), json!(quadratic));
            if let Some(rays) = &orbit_rays {
                let cone =
                    Cone::new(rays.clone(), weyl_chamber_fan(family, rank).map_err(usage)?.lattice)
                        .map_err(usage)?;
                let t = orbit_type(family, rank, &cone).map_err(usage)?;
                let pass = t.two_dimensional() == quadratic;
                lines.push(format!("fiber: {}", format_type(&t)));
                lines.push(format!("{}", if pass { "PASS" } else { "FAIL" }));
                obj.insert("fiber".into(), type_json(&t));
                obj.insert("pass".into(), json!(pass));
                if !pass {
                    return Err(Failure::Check(
                        "growth does not match the fiber dimension".into(),
                    ));
                }
            }
        }
        Family::A => unreachable!(),
    }
    Ok((lines, value, 0))
}
