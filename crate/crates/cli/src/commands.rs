use std::fs::File;
use std::io::{self, Write};
use std::time::Instant;

use kelvin_core::clenshaw_curtis::{cc_weights, integrate_I};
use kelvin_core::derivatives::{deriv_cc, deriv_levin_variant, Direction};
use kelvin_core::levin::{self, LevinVariant};
use kelvin_core::wavelike::{eval_I, eval_I_infinity, EvalConfig, EvalReport, Method};
use kelvin_core::{Error, FieldPoint};
use rayon::prelude::*;

use crate::args::{Command, Common, DerivArgs, EvalArgs, GridArgs, MethodArg, Table1Args, WeightsArgs};

/// Outcome classes mapped to exit codes in `main`.
#[derive(Debug)]
pub enum Failure {
    Domain(String),
    NotConverged(String),
    Io(String),
    Acceptance(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::TrackSingularity { .. }
            | Error::Degenerate
            | Error::NonFinite(_)
            | Error::InvalidArgument(_) => Failure::Domain(e.to_string()),
            Error::Overflow(_) | Error::SingularMatrix { .. } | Error::NonFiniteIntegrand { .. } => {
                Failure::NotConverged(e.to_string())
            }
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

pub const TABLE1: [(f64, f64, f64); 12] = [
    (-0.5, 0.5, -0.3132089735),
    (-0.1, 0.5, -0.4347821474),
    (-0.01, 0.5, -0.4093149760),
    (0.0, 0.5, -0.4039184710),
    (-0.5, 0.1, -0.4288349681),
    (-0.1, 0.1, -1.0716691716),
    (-0.01, 0.1, -2.1157417380),
    (0.0, 0.1, -2.5160949098),
    (-0.5, 0.01, -0.4349760923),
    (-0.1, 0.01, -0.9188289512),
    (-0.01, 0.01, -0.7896492217),
    (0.0, 0.01, 3.6856412628),
];

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Eval(a) => eval(a),
        Command::Grid(a) => grid(a),
        Command::Table1(a) => table1(a),
        Command::Compare(a) => compare(a),
        Command::Deriv(a) => deriv(a),
        Command::Weights(a) => weights(a),
    }
}

fn num(v: f64) -> String {
    format!("{v:.11e}")
}

fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn config(c: &Common) -> Result<EvalConfig, Failure> {
    if !(c.eps.is_finite() && c.eps > 0.0) {
        return Err(Failure::Domain(format!("--eps must be positive, got {}", c.eps)));
    }
    let method = match c.method {
        MethodArg::Auto => Method::Auto,
        MethodArg::Levin => Method::Levin(LevinVariant::Corrected),
        MethodArg::LevinPlain => Method::Levin(LevinVariant::Plain),
        MethodArg::Cc => Method::ClenshawCurtis,
    };
    Ok(EvalConfig {
        method,
        eps: c.eps,
        order: c.order,
        ..EvalConfig::default()
    })
}

fn sink(c: &Common) -> Result<Box<dyn Write>, Failure> {
    Ok(match &c.output {
        Some(path) => Box::new(File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn writer(c: &Common) -> Result<csv::Writer<Box<dyn Write>>, Failure> {
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink(c)?))
}

fn micros(c: &Common, start: Instant) -> String {
    if c.no_timing {
        "0".into()
    } else {
        start.elapsed().as_micros().to_string()
    }
}

fn pool(c: &Common) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = c.jobs {
        if j == 0 {
            return Err(Failure::Domain("--jobs must be at least 1".into()));
        }
        b = b.num_threads(j);
    }
    b.build().map_err(|e| Failure::Domain(e.to_string()))
}

fn not_converged(count: usize) -> Outcome {
    if count == 0 {
        Ok(())
    } else {
        Err(Failure::NotConverged(format!("{count} evaluation(s) did not reach the tolerance")))
    }
}

fn eval(a: EvalArgs) -> Outcome {
    let c = &a.common;
    let cfg = config(c)?;
    let y = a.point.y + c.y0;
    let mut out = writer(c)?;
    let start = Instant::now();
    let converged = if c.infty {
        let r = eval_I_infinity(a.point.x, y, a.point.z, &cfg)?;
        let (method, evals) = match &r.parts {
            Some([p, m]) => (p.method.to_string(), p.eval_count + m.eval_count),
            None => ("heaviside".to_string(), 0),
        };
        out.write_record(["x", "y", "z", "i_inf", "err_est", "method", "n_evals", "converged", "time_us"])?;
        out.write_record([
            num(a.point.x),
            num(y),
            num(a.point.z),
            num(r.value),
            num(r.error_estimate),
            method,
            evals.to_string(),
            r.converged.to_string(),
            micros(c, start),
        ])?;
        r.converged
    } else {
        let p = FieldPoint::new(a.point.x, y, a.point.z)?;
        let r = eval_I(&p, &cfg)?;
        out.write_record([
            "x", "y", "z", "re", "im", "err_est", "method", "n_evals", "converged", "d_param", "theta", "time_us",
        ])?;
        out.write_record([
            num(p.x),
            num(p.y),
            num(p.z),
            num(r.value.re),
            num(r.value.im),
            num(r.error_estimate),
            r.method.to_string(),
            r.eval_count.to_string(),
            r.converged.to_string(),
            opt_num(r.d_param),
            opt_num(r.theta),
            micros(c, start),
        ])?;
        r.converged
    };
    out.flush()?;
    not_converged(usize::from(!converged))
}

/// Linearly spaced values, endpoints included.
fn axis(lo: f64, hi: f64, n: usize, name: &str) -> Result<Vec<f64>, Failure> {
    if n < 2 {
        return Err(Failure::Domain(format!("{name} needs at least 2 points, got {n}")));
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Failure::Domain(format!("{name} range must be finite")));
    }
    Ok((0..n)
        .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect())
}

/// Points in x-major order: x outermost, then y, then z.
fn grid_points(a: &GridArgs) -> Result<Vec<(f64, f64, f64)>, Failure> {
    let xs = axis(a.x_min, a.x_max, a.nx, "x")?;
    let zs = axis(a.z_min, a.z_max, a.nz, "z")?;
    if a.ys.is_empty() || a.ys.iter().any(|y| !y.is_finite()) {
        return Err(Failure::Domain("--y needs finite values".into()));
    }
    let mut pts = Vec::with_capacity(xs.len() * a.ys.len() * zs.len());
    for &x in &xs {
        for &y in &a.ys {
            for &z in &zs {
                pts.push((x, y + a.common.y0, z));
            }
        }
    }
    Ok(pts)
}

struct Row {
    value: (f64, f64),
    err: f64,
    method: String,
    evals: usize,
    converged: bool,
    micros: String,
}

fn grid(a: GridArgs) -> Outcome {
    let c = &a.common;
    let cfg = config(c)?;
    let pts = grid_points(&a)?;
    let rows: Vec<Result<Row, Error>> = pool(c)?.install(|| {
        pts.par_iter()
            .map(|&(x, y, z)| {
                let start = Instant::now();
                if c.infty {
                    let r = eval_I_infinity(x, y, z, &cfg)?;
                    let (method, evals) = match &r.parts {
                        Some([p, m]) => (p.method.to_string(), p.eval_count + m.eval_count),
                        None => ("heaviside".to_string(), 0),
                    };
                    Ok(Row {
                        value: (r.value, 0.0),
                        err: r.error_estimate,
                        method,
                        evals,
                        converged: r.converged,
                        micros: micros(c, start),
                    })
                } else {
                    let r: EvalReport = eval_I(&FieldPoint::new(x, y, z)?, &cfg)?;
                    Ok(Row {
                        value: (r.value.re, r.value.im),
                        err: r.error_estimate,
                        method: r.method.to_string(),
                        evals: r.eval_count,
                        converged: r.converged,
                        micros: micros(c, start),
                    })
                }
            })
            .collect()
    });
    let rows: Vec<Row> = rows.into_iter().collect::<Result<_, _>>()?;
    let mut out = writer(c)?;
    out.write_record(["x", "y", "z", "re", "im", "err_est", "method", "n_evals", "converged", "time_us"])?;
    let mut missed = 0;
    for (&(x, y, z), r) in pts.iter().zip(&rows) {
        missed += usize::from(!r.converged);
        out.write_record([
            num(x),
            num(y),
            num(z),
            num(r.value.0),
            num(r.value.1),
            num(r.err),
            r.method.clone(),
            r.evals.to_string(),
            r.converged.to_string(),
            r.micros.clone(),
        ])?;
    }
    out.flush()?;
    not_converged(missed)
}

fn table1(a: Table1Args) -> Outcome {
    let c = &a.common;
    let cfg = config(c)?;
    let mut out = sink(c)?;
    writeln!(out, "{:>6} {:>6} {:>16} {:>14} {:>10}", "y", "z", "computed", "published", "|delta|")?;
    let mut misses = 0;
    for &(y, z, published) in &TABLE1 {
        let r = eval_I_infinity(-1.0, y + c.y0, z, &cfg)?;
        let delta = (r.value - published).abs();
        let ok = delta <= 1e-8;
        misses += usize::from(!ok);
        writeln!(
            out,
            "{y:>6} {z:>6} {:>16.10} {published:>14.10} {delta:>10.2e}{}",
            r.value,
            if ok { "" } else { "  MISS" }
        )?;
    }
    out.flush()?;
    if misses > 0 {
        return Err(Failure::Acceptance(format!("{misses} of 12 entries exceed 1e-8")));
    }
    Ok(())
}

fn compare(a: GridArgs) -> Outcome {
    let c = &a.common;
    config(c)?;
    let variant = match c.method {
        MethodArg::LevinPlain => LevinVariant::Plain,
        _ => LevinVariant::Corrected,
    };
    let m = c.order.unwrap_or(100);
    let pts = grid_points(&a)?;
    type Cmp = (kelvin_core::Complex64, f64, kelvin_core::Complex64);
    let rows: Vec<Result<Cmp, Error>> = pool(c)?.install(|| {
        pts.par_iter()
            .map(|&(x, y, z)| {
                let p = FieldPoint::new(x, y, z)?;
                p.check_domain()?;
                let l = levin::solve(&p, m, variant)?;
                let q = integrate_I(&p, c.eps)?;
                Ok((l.value, l.error_estimate, q.value))
            })
            .collect()
    });
    let rows: Vec<Cmp> = rows.into_iter().collect::<Result<_, _>>()?;
    let mut out = writer(c)?;
    out.write_record(["x", "y", "z", "levin_re", "levin_im", "levin_err", "cc_re", "cc_im", "abs_diff", "pass"])?;
    let mut fails = 0;
    for (&(x, y, z), (l, e, q)) in pts.iter().zip(&rows) {
        let diff = (l - q).norm();
        let pass = diff <= e.max(1e-12);
        fails += usize::from(!pass);
        out.write_record([
            num(x),
            num(y),
            num(z),
            num(l.re),
            num(l.im),
            num(*e),
            num(q.re),
            num(q.im),
            num(diff),
            pass.to_string(),
        ])?;
    }
    out.flush()?;
    if fails > 0 {
        return Err(Failure::Acceptance(format!("{fails} point(s) outside the error estimate")));
    }
    Ok(())
}

fn deriv(a: DerivArgs) -> Outcome {
    let c = &a.common;
    config(c)?;
    let [l1, l2, l3] = <[f64; 3]>::try_from(a.dir.as_slice())
        .map_err(|_| Failure::Domain(format!("--dir needs three components, got {}", a.dir.len())))?;
    let d = Direction::new(l1, l2, l3)?;
    let p = FieldPoint::new(a.point.x, a.point.y + c.y0, a.point.z)?;
    p.check_domain()?;
    let start = Instant::now();
    let (value, err, method, evals, converged) = match c.method {
        MethodArg::Levin | MethodArg::LevinPlain => {
            let variant = if c.method == MethodArg::Levin {
                LevinVariant::Corrected
            } else {
                LevinVariant::Plain
            };
            let m = c.order.unwrap_or(100);
            let r = deriv_levin_variant(&p, &d, m, variant)?;
            let name = if r.corrected { "levin_corrected" } else { "levin_plain" };
            (r.value, r.error_estimate, name, m + 1, r.error_estimate <= c.eps)
        }
        MethodArg::Auto | MethodArg::Cc => {
            let r = deriv_cc(&p, &d, c.eps)?;
            (r.value, c.eps, "cc", r.eval_count, r.converged)
        }
    };
    let mut out = writer(c)?;
    out.write_record([
        "x", "y", "z", "l1", "l2", "l3", "re", "im", "err_est", "method", "n_evals", "converged", "time_us",
    ])?;
    out.write_record([
        num(p.x),
        num(p.y),
        num(p.z),
        num(l1),
        num(l2),
        num(l3),
        num(value.re),
        num(value.im),
        num(err),
        method.to_string(),
        evals.to_string(),
        converged.to_string(),
        micros(c, start),
    ])?;
    out.flush()?;
    not_converged(usize::from(!converged))
}

fn weights(a: WeightsArgs) -> Outcome {
    let w = cc_weights(a.n)?;
    let mut out = writer(&a.common)?;
    out.write_record(["k", "node", "weight"])?;
    for (k, &wk) in w.weights.iter().enumerate() {
        out.write_record([k.to_string(), num(w.node(k)), num(wk)])?;
    }
    out.flush()?;
    Ok(())
}
