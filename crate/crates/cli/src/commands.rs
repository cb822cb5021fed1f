use serde_json::{json, Value};
use stairflow::chebpoly::{p_eval, p_poly, p_polys, s_lengths_in};
use stairflow::flow::{trace_numeric, Crossing, SurfacePoint, TraceResult, Tracer};
use stairflow::hyperdisk::{stereo_project, vertex_angle, DiskGeometry, Slope};
use stairflow::linear::DirectionVector;
use stairflow::numfield::{context, euler_phi, minimal_polynomial, validate_n};
use stairflow::report::{trig_identities, table1};
use stairflow::sectors::{
    enumerate_sigma_tree_with, equivalence_check_with, format_word, regenerate, renormalize_slope, sector_fan, CheckOutcome,
    Renormalized,
};
use stairflow::staircase::{build_staircase, staircase_svg, Direction, Rectangle};
use stairflow::{FieldElement, Scalar};

use crate::emit::{element, float, slope, texts, Report};
use crate::{CliError, Command, RunArgs};

/// Crossings shown for traces that did not close.
const SEQUENCE_PREVIEW: usize = 64;

/// Tolerance for comparing projected vertices with their field values.
const PROJECTION_TOL: f64 = 1e-12;

/// Tolerance for the tangent identity.
const IDENTITY_TOL: f64 = 1e-12;

const DEFAULT_START: &str = "1/10,0";

pub fn dispatch(cmd: &Command, run: &RunArgs) -> Result<Report, CliError> {
    let digits = run.precision;
    match cmd {
        Command::Slopes { n, depth } => slopes(*n, *depth, run.threads, digits),
        Command::Classify { n, slope, max_steps, numeric, tol } => classify(*n, slope, *max_steps, *numeric, *tol, digits),
        Command::Equiv { n, depth } => equiv(*n, *depth, run.threads),
        Command::Staircase { n, svg, diagonals } => {
            let surface = build_staircase(*n)?;
            if let Some(path) = svg {
                std::fs::write(path, staircase_svg(&surface, *diagonals))?;
            }
            staircase(&surface, digits)
        }
        Command::Trace { n, slope, start, max_crossings, numeric, tol, samples } => {
            trace(*n, slope, start.as_deref(), *max_crossings, *numeric, *tol, *samples, run.seed, digits)
        }
        Command::Minpoly { n, max_n } => minpoly(&range(*n, *max_n)?, digits),
        Command::Polys { n } => polys(*n),
        Command::Project { n } => project(*n, digits),
        Command::Identities { n, max_n } => identities(&range(*n, *max_n)?, digits),
        Command::Table1 { max_n, places } => table(*max_n, *places),
    }
}

fn range(n: u32, max_n: Option<u32>) -> Result<Vec<u32>, CliError> {
    match max_n {
        None => {
            validate_n(n)?;
            Ok(vec![n])
        }
        Some(m) => {
            validate_n(m)?;
            Ok((5..=m).step_by(2).collect())
        }
    }
}

fn slopes(n: u32, depth: u32, threads: usize, digits: u32) -> Result<Report, CliError> {
    let tree = enumerate_sigma_tree_with(n, depth, threads)?;
    let rows: Vec<Vec<String>> =
        tree.entries.iter().map(|e| vec![format_word(&e.word), e.slope.to_text(), e.slope.embed(digits)]).collect();
    let json = json!({
        "n": n,
        "depth": depth,
        "words": tree.entries.len(),
        "entries": tree.entries.iter().map(|e| json!({
            "word": format_word(&e.word),
            "slope_exact": e.slope.to_text(),
            "slope_decimal": e.slope.embed(digits),
        })).collect::<Vec<_>>(),
        "distinct_slopes": tree.slopes.iter().map(|s| slope(s, digits)).collect::<Vec<_>>(),
    });
    Ok(Report::new(json).with_table(vec!["word", "slope_exact", "slope_decimal"], rows))
}

fn classify(n: u32, text: &str, max_steps: usize, numeric: bool, tol: f64, digits: u32) -> Result<Report, CliError> {
    let ctx = context(n)?;
    let s = Slope::parse(&ctx, text)?;
    let fan = sector_fan(n)?;
    let one = FieldElement::one(&ctx);
    let dir = DirectionVector::from_slope(&s, &one);
    if !dir.in_first_quadrant() {
        return Err(stairflow::Error::InvalidArgument(format!("slope {s} is negative")).into());
    }
    let sector = fan.classify(&dir);
    let (periodic, word, terminal, regenerates) = if numeric {
        let f = fan.to_f64(tol);
        let v = DirectionVector::raw(dir.dx.to_f64(), dir.dy.to_f64());
        match f.renormalize(&v, max_steps) {
            Renormalized::Periodic { word, terminal, .. } => (true, word, Some(terminal), None),
            Renormalized::Undecided { word, .. } => (false, word, None, None),
        }
    } else {
        match renormalize_slope(&fan, &s, max_steps)? {
            Renormalized::Periodic { word, terminal, .. } => {
                let back = regenerate(&fan, &word, terminal).slope().eq_s(&s);
                (true, word, Some(terminal), Some(back))
            }
            Renormalized::Undecided { word, .. } => (false, word, None, None),
        }
    };
    let json = json!({
        "n": n,
        "mode": if numeric { "numeric" } else { "exact" },
        "slope": slope(&s, digits),
        "sector": sector,
        "periodic": periodic,
        "steps": word.len(),
        "word": format_word(&word),
        "terminal": terminal.map(|t| t.as_str()),
        "regenerates": regenerates,
    });
    Ok(Report::new(json).verdict(periodic && regenerates != Some(false)))
}

fn outcome(o: &CheckOutcome) -> Value {
    json!({
        "checked": o.checked,
        "mismatches": o.mismatches(),
        "by_length": o.by_length.iter().map(|(c, b)| json!({ "checked": c, "mismatches": b })).collect::<Vec<_>>(),
        "first_counterexample": o.first_counterexample.as_ref().map(|c| c.to_string()),
        "passed": o.passed(),
    })
}

fn equiv(n: u32, depth: u32, threads: usize) -> Result<Report, CliError> {
    let r = equivalence_check_with(n, depth, threads)?;
    let json = json!({
        "n": n,
        "depth": depth,
        "generators_match": r.generators_match,
        "calibration": r.calibration.map(|c| c.as_str()),
        "literal": outcome(&r.literal),
        "sets_by_length": outcome(&r.sets),
        "alternating": outcome(&r.alternating),
        "passed": r.passed(),
    });
    Ok(Report::new(json).verdict(r.passed()))
}

fn strip(r: &Rectangle<FieldElement>) -> Value {
    json!({ "w": r.width().to_text(), "h": r.height().to_text(), "x0": r.x0.to_text(), "y0": r.y0.to_text() })
}

fn staircase(s: &stairflow::staircase::ExactSurface, digits: u32) -> Result<Report, CliError> {
    let cones = s.cone_points()?;
    let json = json!({
        "n": s.n,
        "aspect": s.aspect.to_text(),
        "aspect_decimal": s.aspect.embed(digits),
        "side_lengths": texts(&s.s),
        "rows": s.rows.iter().map(strip).collect::<Vec<_>>(),
        "columns": s.columns.iter().map(strip).collect::<Vec<_>>(),
        "rectangles": s.rectangles.iter().map(|r| json!({
            "k": r.k,
            "twin": r.twin,
            "x0": r.x0.to_text(),
            "y0": r.y0.to_text(),
            "x1": r.x1.to_text(),
            "y1": r.y1.to_text(),
        })).collect::<Vec<_>>(),
        "diagonal_slopes": s.diagonal_slopes().iter().map(|d| element(d, digits)).collect::<Vec<_>>(),
        "cylinders": {
            "horizontal": s.cylinder_decomposition(Direction::Horizontal).len(),
            "vertical": s.cylinder_decomposition(Direction::Vertical).len(),
        },
        "area": s.area().to_text(),
        "cone_points": cones.iter().filter(|c| c.is_singular()).map(|c| json!({
            "angle_over_2pi": c.angle_over_2pi(),
            "points": c.points.len(),
        })).collect::<Vec<_>>(),
    });
    Ok(Report::new(json))
}

fn sequence_text(seq: &[Crossing], full: bool) -> (String, bool) {
    let shown = if full { seq.len() } else { seq.len().min(SEQUENCE_PREVIEW) };
    let text = seq[..shown].iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    (text, shown < seq.len())
}

fn trace_json<S: Scalar>(r: &TraceResult<S>, exact_text: impl Fn(&S) -> Option<String>) -> Value {
    let (seq, truncated) = sequence_text(r.sequence(), r.is_closed());
    let mut v = json!({ "result": r.tag(), "crossings": r.crossings() });
    let obj = v.as_object_mut().expect("object");
    match r {
        TraceResult::Closed { length_sq, .. } => {
            obj.insert("length_sq".into(), exact_text(length_sq).map(Value::String).unwrap_or(Value::Null));
            obj.insert("length".into(), float(length_sq.to_f64().sqrt()));
        }
        TraceResult::Singular { at, .. } => {
            let (x, y) = (&at.x, &at.y);
            let show = |s: &S| exact_text(s).map(Value::String).unwrap_or_else(|| float(s.to_f64()));
            obj.insert("at".into(), json!([show(x), show(y)]));
        }
        TraceResult::Exhausted { .. } => {}
    }
    obj.insert("sequence".into(), Value::String(seq));
    obj.insert("sequence_truncated".into(), Value::Bool(truncated));
    v
}

#[allow(clippy::too_many_arguments)]
fn trace(
    n: u32,
    slope_text: &str,
    start: Option<&str>,
    max_crossings: usize,
    numeric: bool,
    tol: f64,
    samples: Option<usize>,
    seed: u64,
    digits: u32,
) -> Result<Report, CliError> {
    let ctx = context(n)?;
    let s = Slope::parse(&ctx, slope_text)?;
    let surface = build_staircase(n)?;
    if let Some(k) = samples {
        if numeric || start.is_some() {
            return Err(CliError::Usage("--samples runs the exact tracer from seeded starts; drop --numeric and --start".into()));
        }
        let tracer = Tracer::new(surface)?;
        let r = stairflow::flow::verify_periodic_with(&tracer, &s, k, seed, max_crossings)?;
        let json = json!({
            "n": n,
            "slope": slope(&s, digits),
            "seed": seed,
            "samples": r.samples.iter().map(|x| {
                let mut v = trace_json(&x.result, |e: &FieldElement| Some(e.to_text()));
                v.as_object_mut().expect("object").insert("start".into(), json!([x.start.x.to_text(), x.start.y.to_text()]));
                v
            }).collect::<Vec<_>>(),
            "patterns": r.patterns.iter().map(|p| sequence_text(p, true).0).collect::<Vec<_>>(),
            "resampled": r.resampled,
            "all_closed": r.all_closed(),
        });
        return Ok(Report::new(json).verdict(r.all_closed()));
    }
    let p = SurfacePoint::parse(&ctx, start.unwrap_or(DEFAULT_START))?;
    let mut json = json!({
        "n": n,
        "mode": if numeric { "numeric" } else { "exact" },
        "slope": slope(&s, digits),
        "start": [p.x.to_text(), p.y.to_text()],
    });
    let body = if numeric {
        let d = match s.finite() {
            Some(f) => (1.0, f.to_f64()),
            None => (0.0, 1.0),
        };
        let r = trace_numeric(&surface, d, (p.x.to_f64(), p.y.to_f64()), max_crossings, tol)?;
        trace_json(&r, |_: &f64| None)
    } else {
        let tracer = Tracer::new(surface)?;
        let dir = DirectionVector::from_slope(&s, &FieldElement::one(&ctx));
        let r = tracer.trace(&dir, &p, max_crossings)?;
        let mut v = trace_json(&r, |e: &FieldElement| Some(e.to_text()));
        if let TraceResult::Closed { length_sq, .. } = &r {
            v.as_object_mut().expect("object").insert("length_sq_decimal".into(), Value::String(length_sq.embed(digits)));
        }
        v
    };
    json.as_object_mut().expect("object").extend(body.as_object().expect("object").clone());
    Ok(Report::new(json))
}

fn minpoly(ns: &[u32], digits: u32) -> Result<Report, CliError> {
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for &n in ns {
        let spec = minimal_polynomial(n)?;
        let poly = spec.polynomial();
        let (_, rem) = p_poly(((n - 1) / 2) as usize).div_rem_monic(&poly);
        let expected = euler_phi(2 * n as u64) / 2;
        let good = rem.is_zero() && spec.degree as u64 == expected;
        ok &= good;
        let root = FieldElement::generator(&context(n)?).embed(digits);
        rows.push(vec![n.to_string(), spec.degree.to_string(), poly.to_string()]);
        entries.push(json!({
            "n": n,
            "degree": spec.degree,
            "expected_degree": expected,
            "polynomial": poly.to_string(),
            "divides_p_m": rem.is_zero(),
            "root": root,
        }));
    }
    let json = if entries.len() == 1 { entries.remove(0) } else { json!({ "entries": entries }) };
    Ok(Report::new(json).with_table(vec!["n", "degree", "polynomial"], rows).verdict(ok))
}

fn polys(n: u32) -> Result<Report, CliError> {
    let ctx = context(n)?;
    let m = ctx.m() as usize;
    let x = FieldElement::generator(&ctx);
    let s = s_lengths_in(&ctx);
    let pm = p_eval(m, &x);
    let json = json!({
        "n": n,
        "m": m,
        "p": p_polys(m).iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "s": texts(&s),
        "p_m_at_x": pm.to_text(),
    });
    let ok = pm.is_zero() && s[m].is_zero();
    Ok(Report::new(json).verdict(ok))
}

fn project(n: u32, digits: u32) -> Result<Report, CliError> {
    let g = DiskGeometry::new(n, digits)?;
    let mut ok = true;
    let mut vertices = Vec::new();
    for i in 0..n {
        let angle = vertex_angle(n, i);
        let image = stereo_project(n, &angle, digits)?;
        let exact = &g.vertex_values[i as usize];
        let agrees = match (&image, exact) {
            (None, Slope::Infinity) => true,
            (Some(r), Slope::Finite(f)) => (r.to_f64() - f.approx_f64()).abs() < PROJECTION_TOL,
            _ => false,
        };
        ok &= agrees;
        vertices.push(json!({
            "i": i,
            "angle_over_pi": angle.to_string(),
            "image": image.map(|r| r.to_decimal(digits)).unwrap_or_else(|| "inf".into()),
            "exact": exact.to_text(),
            "agrees": agrees,
        }));
    }
    let json = json!({
        "n": n,
        "radius": g.r.to_decimal(digits),
        "offset": g.offset.to_decimal(digits),
        "vertices": vertices,
    });
    Ok(Report::new(json).verdict(ok))
}

fn identities(ns: &[u32], digits: u32) -> Result<Report, CliError> {
    let mut ok = true;
    let mut entries = Vec::new();
    for &n in ns {
        let r = trig_identities(n, digits)?;
        ok &= r.holds(IDENTITY_TOL);
        entries.push(json!({
            "n": n,
            "s_closes": r.s_closes,
            "p_m_vanishes": r.p_vanishes,
            "reciprocal_symmetry": r.reciprocal_symmetry,
            "tan_max_deviation": float(r.tan_deviation.to_f64()),
            "holds": r.holds(IDENTITY_TOL),
        }));
    }
    let json = if entries.len() == 1 { entries.remove(0) } else { json!({ "entries": entries }) };
    Ok(Report::new(json).verdict(ok))
}

fn table(max_n: u32, places: u32) -> Result<Report, CliError> {
    let rows = table1(max_n)?;
    let ok = rows.iter().all(|r| r.agrees());
    let mut csv = Vec::new();
    for r in &rows {
        for (d, s) in r.diagonals.iter().zip(r.decimals(places)) {
            csv.push(vec![r.n.to_string(), d.to_text(), s]);
        }
    }
    let json = json!({
        "max_n": max_n,
        "places": places,
        "rows": rows.iter().map(|r| json!({
            "n": r.n,
            "slopes": r.decimals(places),
            "exact": texts(&r.diagonals),
            "matches_vertex_values": r.agrees(),
        })).collect::<Vec<_>>(),
    });
    Ok(Report::new(json).with_table(vec!["n", "slope_exact", "slope_decimal"], csv).verdict(ok))
}
