//! JSON front end shared by the `schwarzkit` binary and its tests.
//!
//! Every command takes one JSON payload and returns one JSON value. Errors
//! carry the process exit code: 2 for unreadable input, 3 for degenerate
//! input, 4 for solver failure.

use std::fmt;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{C64, ComplexPolynomial, RationalMap, RiemannPoint, TruncatedSeries};
use crate::cubic::{
    criticality_discriminant, cross_ratio, cubic_fiber_explicit, is_regular_tetrahedron, quartic_coefficients,
    ratio_orbit, FourPointSet,
};
use crate::error::Error;
use crate::primitivity::{
    check_polynomial_criterion_with_tol, check_rational_criterion_with_tol, classify_holonomy, condition_determinant,
    extract_configuration, series_obstruction, CriterionVariant, DecisionRecord, EquationResidual,
};
use crate::reconstruction::{default_attempts, local_primitive, reconstruct_rational_with_report};
use crate::schwarzian::{infinity_type, laurent_at, schwarzian};

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Schwarzian,
    Check,
    Solve,
    Cubic,
    ReconstructLocal,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Options {
    pub tol: f64,
    pub seed: u64,
    pub attempts: Option<usize>,
    pub order: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self { tol: 1e-9, seed: 42, attempts: None, order: 32 }
    }
}

/// A failed command: exit code, message, and optionally a JSON body that is
/// still worth printing (a failed solver report).
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    pub body: Option<Value>,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self { code: EXIT_PARSE, message: message.into(), body: None }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::NoSolutionFound(report) => {
                Self { code: EXIT_SOLVER, message, body: serde_json::to_value(*report).ok() }
            }
            Error::NonConvergence(_) => Self { code: EXIT_SOLVER, message, body: None },
            _ => Self { code: EXIT_DEGENERATE, message, body: None },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn parse<T: for<'de> Deserialize<'de>>(payload: &str) -> CliResult<T> {
    serde_json::from_str(payload).map_err(|e| CliError::parse(format!("invalid payload: {e}")))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

pub fn run(command: Command, payload: &str, opts: &Options) -> CliResult<Value> {
    if !(opts.tol > 0.0 && opts.tol.is_finite()) || opts.order == 0 || opts.attempts == Some(0) {
        return Err(CliError::parse("numeric flags must be positive"));
    }
    match command {
        Command::Schwarzian => cmd_schwarzian(payload),
        Command::Check => cmd_check(payload, opts),
        Command::Solve => cmd_solve(payload, opts),
        Command::Cubic => cmd_cubic(payload, opts),
        Command::ReconstructLocal => cmd_reconstruct_local(payload, opts),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapPayload {
    num: ComplexPolynomial,
    den: ComplexPolynomial,
}

// Built by hand so a zero denominator is a degenerate input, not a parse error.
fn read_map(payload: &str) -> CliResult<RationalMap> {
    let MapPayload { num, den } = parse(payload)?;
    Ok(RationalMap::new(num, den)?)
}

fn cmd_schwarzian(payload: &str) -> CliResult<Value> {
    let f = read_map(payload)?;
    let s = schwarzian(&f)?;
    let poles: Vec<Value> = f
        .critical_points(1e-9)?
        .into_iter()
        .map(|(point, d)| json!({ "point": point, "local_degree": d }))
        .collect();
    let infinity = if s.is_zero() { None } else { Some(to_json(&infinity_type(&s)?)) };
    Ok(json!({ "schwarzian": s, "poles": poles, "infinity": infinity }))
}

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum CheckMode {
    Local,
    Rational,
    Polynomial,
    Merom,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckPayload {
    phi: MapPayload,
    mode: CheckMode,
    #[serde(default)]
    point: Option<C64>,
    #[serde(default)]
    d: Option<usize>,
    #[serde(default)]
    variant: Option<CriterionVariant>,
}

fn cmd_check(payload: &str, opts: &Options) -> CliResult<Value> {
    let p: CheckPayload = parse(payload)?;
    let phi = RationalMap::new(p.phi.num, p.phi.den)?;
    match p.mode {
        CheckMode::Local => {
            let point = p.point.ok_or_else(|| CliError::parse("mode local needs a point"))?;
            check_local(&phi, point, p.d, opts)
        }
        CheckMode::Rational => {
            let config = extract_configuration(&phi)?;
            let variant = p.variant.unwrap_or(CriterionVariant::AllLE123);
            let record = check_rational_criterion_with_tol(&config, variant, opts.tol)?;
            Ok(json!({ "mode": "rational", "configuration": config, "record": record }))
        }
        CheckMode::Polynomial => {
            let config = extract_configuration(&phi)?;
            let (expected, mut record) = check_polynomial_criterion_with_tol(&config.points, opts.tol)?;
            // phi must carry the parameters the polynomial formula predicts
            for (i, (a, b)) in config.params.iter().zip(&expected.params).enumerate() {
                let residual = (a - b).norm();
                record.equations.push(EquationResidual {
                    name: format!("A{}", i + 1),
                    residual,
                    pass: residual <= opts.tol * (1.0 + b.norm()),
                });
            }
            record.overall = record.equations.iter().all(|e| e.pass);
            Ok(json!({ "mode": "polynomial", "configuration": config, "record": record }))
        }
        CheckMode::Merom => check_merom(&phi, opts),
    }
}

fn check_local(phi: &RationalMap, point: C64, d: Option<usize>, opts: &Options) -> CliResult<Value> {
    let germ = laurent_at(phi, point, opts.order.max(8))?;
    let tail = TruncatedSeries::new(point, germ.residue_and_tail.clone())?;
    let holonomy = classify_holonomy(&germ, &tail);
    let delta = {
        let d = (C64::new(1.0, 0.0) - germ.leading * 2.0).sqrt();
        if d.re < 0.0 {
            -d
        } else {
            d
        }
    };
    let degree = d.or(germ.local_degree_hint.map(|d| d as usize));
    let mut notes = Vec::new();
    if !holonomy.is_unitary() {
        notes.push("non-unitary multiplier".to_string());
    }
    let (determinant, b_hat, primitive) = match degree {
        Some(d) if d >= 1 => {
            if d > germ.residue_and_tail.len() {
                return Err(Error::DegenerateInput(format!("series order too small for d = {d}")).into());
            }
            let det = condition_determinant(d, &germ.tail(d));
            let b = series_obstruction(d, &tail);
            let scale = germ.tail(d).iter().map(|a| a.norm()).fold(0.0, f64::max);
            let matches = germ.local_degree_hint == Some(d as u32);
            if !matches {
                notes.push(format!("leading coefficient does not match local degree {d}"));
            }
            (Some(det), Some(b), matches && det.norm() <= opts.tol * (1.0 + scale).powi(d as i32))
        }
        _ => {
            notes.push("non-integer delta: no local meromorphic primitive".to_string());
            (None, None, false)
        }
    };
    Ok(json!({
        "mode": "local",
        "point": point,
        "leading": germ.leading,
        "delta": delta,
        "local_degree": degree,
        "determinant": determinant,
        "b_hat": b_hat,
        "holonomy": holonomy,
        "primitive": primitive,
        "notes": notes,
    }))
}

fn check_merom(phi: &RationalMap, opts: &Options) -> CliResult<Value> {
    let mut equations = Vec::new();
    let mut poles = Vec::new();
    for (root, mult) in phi.den().distinct_roots(1e-7)? {
        if mult > 2 {
            return Err(Error::PoleTooHigh { order: mult }.into());
        }
        let germ = laurent_at(phi, root, 2)?;
        let leading = (germ.leading + 1.5).norm();
        let det = condition_determinant(2, &germ.tail(2));
        let scale = germ.tail(2).iter().map(|a| a.norm()).fold(0.0, f64::max);
        let k = poles.len() + 1;
        equations.push(EquationResidual { name: format!("leading{k}"), residual: leading, pass: leading <= opts.tol * 2.5 });
        equations.push(EquationResidual {
            name: format!("det{k}"),
            residual: det.norm(),
            pass: det.norm() <= opts.tol * (1.0 + scale).powi(2),
        });
        poles.push(root);
    }
    let overall = equations.iter().all(|e| e.pass);
    let record = DecisionRecord {
        variant: CriterionVariant::AllLE123,
        equations,
        overall,
        dropped: vec![],
        notes: vec!["double poles with leading -3/2 and vanishing d = 2 determinant".into()],
    };
    let mut record = to_json(&record);
    record["variant"] = json!("merom");
    Ok(json!({ "mode": "merom", "poles": poles, "record": record }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolvePayload {
    points: Vec<C64>,
}

fn cmd_solve(payload: &str, opts: &Options) -> CliResult<Value> {
    let p: SolvePayload = parse(payload)?;
    let mu = p.points.len() / 2;
    let attempts = opts.attempts.unwrap_or_else(|| default_attempts(mu.max(1)));
    let (report, maps) = reconstruct_rational_with_report(&p.points, attempts, opts.seed)?;
    let tetrahedron = if p.points.len() == 4 {
        let set = FourPointSet::finite([p.points[0], p.points[1], p.points[2], p.points[3]])?;
        Some(is_regular_tetrahedron(&set, opts.tol.max(1e-9)))
    } else {
        None
    };
    Ok(json!({ "report": report, "maps": maps, "tetrahedron": tetrahedron }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CubicPayload {
    #[serde(default)]
    points: Option<Vec<RiemannPoint>>,
    #[serde(default)]
    quartic: Option<ComplexPolynomial>,
}

fn cmd_cubic(payload: &str, opts: &Options) -> CliResult<Value> {
    let p: CubicPayload = parse(payload)?;
    let (points, quartic) = match (p.points, p.quartic) {
        (Some(points), None) => {
            let points: [RiemannPoint; 4] =
                points.try_into().map_err(|_| CliError::parse("points must hold exactly four entries"))?;
            let finite: Option<Vec<C64>> = points.iter().map(|p| p.as_finite()).collect();
            (points, finite.map(|f| ComplexPolynomial::from_roots(&f)))
        }
        (None, Some(quartic)) => {
            let w = quartic_coefficients(&quartic)?;
            let monic = ComplexPolynomial::new(vec![w[0], w[1], w[2], w[3], C64::new(1.0, 0.0)]);
            let roots = monic.roots(1e-9)?;
            let points = [roots[0], roots[1], roots[2], roots[3]].map(RiemannPoint::Finite);
            (points, Some(monic))
        }
        _ => return Err(CliError::parse("give exactly one of points or quartic")),
    };
    let set = FourPointSet::new(points)?;
    let [a, b, c, d] = set.points;
    let ratio = cross_ratio(a, b, c, d)?;
    let orbit = ratio_orbit(ratio)?.distinct(1e-12);
    let tetrahedron = is_regular_tetrahedron(&set, opts.tol.max(1e-9));
    let (discriminant, branches) = match &quartic {
        Some(q) => {
            let w = quartic_coefficients(q)?;
            (Some(criticality_discriminant(w)), Some(cubic_fiber_explicit(w)))
        }
        None => (None, None),
    };
    Ok(json!({
        "points": set.points,
        "cross_ratio": ratio,
        "orbit": orbit,
        "tetrahedron": tetrahedron,
        "quartic": quartic,
        "criticality_discriminant": discriminant,
        "branches": branches,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalPayload {
    phi: MapPayload,
    point: C64,
}

fn cmd_reconstruct_local(payload: &str, opts: &Options) -> CliResult<Value> {
    let p: LocalPayload = parse(payload)?;
    let phi = RationalMap::new(p.phi.num, p.phi.den)?;
    let series = local_primitive(&phi, p.point, opts.order)?;
    let d = series.coeffs.iter().position(|c| c.norm() > 0.0);
    Ok(json!({ "point": p.point, "local_degree": d, "series": series }))
}
