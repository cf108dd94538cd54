use std::path::PathBuf;

use serde::Deserialize;
use serde_json::{json, to_value, Value};
use sispace::convcalc::{delta_train_convolve, dual_pair, fgsi_convolve};
use sispace::ddesolver::{dde_solve, DelayDiffOperator};
use sispace::frames::{check_condition_a, frame_bounds, project};
use sispace::multproduct::{apply_multiplier, mikhlin_check, periodic_multiply_with, MikhlinPolicy, MultiplierSymbol, PeriodicMultiplier, ProductPath};
use sispace::spectral::{generator_fourier, sobolev_norm};
use sispace::wavefront::{wf_conv_bound, wf_fgsi_conv_bound, wf_prod_bound, wf_shift_bound, WFSet};
use sispace::{CoeffSeq, Error, Spectral, Tolerance, Warning};

use crate::{read_json, write_text, Cli, CliError, CliResult, Command, PathArg, Scene, WfOp};

fn val<T: serde::Serialize>(x: &T) -> Value {
    to_value(x).unwrap_or(Value::Null)
}

fn warnings(w: &[Warning]) -> Value {
    val(&w)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(WFSet),
    Many(Vec<WFSet>),
}

impl OneOrMany {
    fn into_vec(self) -> Vec<WFSet> {
        match self {
            OneOrMany::One(w) => vec![w],
            OneOrMany::Many(v) => v,
        }
    }
}

fn need_b(b: &Option<PathBuf>, op: &str) -> CliResult<PathBuf> {
    b.clone().ok_or_else(|| CliError::Usage(format!("wf-bound --op {op} needs --b")))
}

pub(crate) fn dispatch(cli: &Cli) -> CliResult<(Value, Option<&PathBuf>)> {
    let tol = Tolerance::new(cli.tol_abs, cli.tol_rel);
    match &cli.command {
        Command::FrameCheck { scene, s, condition_a, out } => {
            let sc: Scene = read_json(scene)?;
            let grid = sc.grid()?;
            let bank = sc.function()?.generators().to_vec();
            let s = s.unwrap_or(sc.order);
            let rep = frame_bounds(&bank, s, &grid, &tol)?;
            let mut v = json!({
                "command": "frame-check",
                "s": s,
                "report": val(&rep.value),
                "warnings": warnings(&rep.warnings),
            });
            if *condition_a {
                let ca = check_condition_a(&bank, s, &grid, &tol)?;
                v["condition_a"] = val(&ca.value);
                v["condition_a_warnings"] = warnings(&ca.warnings);
            }
            Ok((v, out.as_ref()))
        }
        Command::Project { bank, target, s, out } => {
            let b: Scene = read_json(bank)?;
            let t: Scene = read_json(target)?;
            let grid = b.grid()?;
            let gens = b.function()?.generators().to_vec();
            let h = t.function()?;
            let s = s.unwrap_or(b.order);
            let p = project(&h, &gens, s, &grid, &tol)?;
            let v = json!({
                "command": "project",
                "s": s,
                "residual": p.value.residual,
                "approx": val(&Scene::from_function(&p.value.approx, b.grid)),
                "warnings": warnings(&p.warnings),
            });
            Ok((v, out.as_ref()))
        }
        Command::Conv { f, g, eps, out } => {
            let fs: Scene = read_json(f)?;
            let gs: Scene = read_json(g)?;
            let grid = fs.grid()?;
            let ff = fs.function()?;
            let gf = gs.function()?;
            let half = ff.dim() as f64 / 2.0;
            let eps = eps.unwrap_or(if ff.order() > half { (ff.order() - half) / 2.0 } else { 0.25 });
            let r = fgsi_convolve(&ff, &gf, eps, &grid)?;
            let c = &r.value;
            let v = json!({
                "command": "conv",
                "target_order": c.target_order,
                "epsilon": c.epsilon,
                "young": val(&c.young),
                "young_holds": c.young.iter().all(|y| y.holds()),
                "result": val(&Scene::from_function(&c.result, fs.grid)),
                "warnings": warnings(&r.warnings),
            });
            Ok((v, out.as_ref()))
        }
        Command::DeltaConv { train, f, r, out } => {
            let a: CoeffSeq = read_json(train)?;
            let fs: Scene = read_json(f)?;
            let res = delta_train_convolve(&a, &fs.function()?, *r)?;
            let v = json!({
                "command": "delta-conv",
                "result": val(&Scene::from_function(&res, fs.grid)),
            });
            Ok((v, out.as_ref()))
        }
        Command::DdeSolve { op, rhs, n, out, csv } => {
            let op: DelayDiffOperator = read_json(op)?;
            let sc: Scene = read_json(rhs)?;
            let grid = sc.grid()?;
            let h = sc.function()?;
            if h.generators().len() != 1 {
                return Err(Error::InvalidInput("the right-hand side scene must have exactly one generator".into()).into());
            }
            let sol = dde_solve(&op, &h.generators()[0], &h.coeffs()[0], h.order(), &grid, &tol, *n)?;
            let d = &sol.value;
            if let Some(path) = csv {
                let mut text = String::from("x,re,im\n");
                for j in 0..grid.n() {
                    let x = grid.x(j);
                    let y = d.solution.eval(&[x]);
                    text.push_str(&format!("{:.12e},{:.12e},{:.12e}\n", x, y.re, y.im));
                }
                write_text(path, &text)?;
            }
            let v = json!({
                "command": "dde-solve",
                "estimate": val(&d.estimate),
                "residual": d.residual,
                "order": d.solution.order(),
                "solution": val(&Scene::from_function(&d.solution, sc.grid)),
                "warnings": warnings(&sol.warnings),
            });
            Ok((v, out.as_ref()))
        }
        Command::Multiplier { symbol, f, warn_only, out } => {
            let a: MultiplierSymbol = read_json(symbol)?;
            let fs: Scene = read_json(f)?;
            let grid = fs.grid()?;
            let policy = if *warn_only { MikhlinPolicy::WarnOnly } else { MikhlinPolicy::Enforce };
            let report = mikhlin_check(&a, &grid);
            let res = apply_multiplier(&a, &fs.function()?, &grid, policy)?;
            let v = json!({
                "command": "multiplier",
                "mikhlin": val(&report),
                "result": val(&Scene::from_function(&res.value, fs.grid)),
                "warnings": warnings(&res.warnings),
            });
            Ok((v, out.as_ref()))
        }
        Command::Product { g, f, path, out } => {
            let gm: PeriodicMultiplier = read_json(g)?;
            let fs: Scene = read_json(f)?;
            let grid = fs.grid()?;
            let path = match path {
                PathArg::Space => ProductPath::Space,
                PathArg::Frequency => ProductPath::Frequency,
            };
            let res = periodic_multiply_with(&gm, &fs.function()?, &grid, path)?;
            let v = json!({
                "command": "product",
                "order": res.value.order(),
                "result": val(&Scene::from_function(&res.value, fs.grid)),
                "warnings": warnings(&res.warnings),
            });
            Ok((v, out.as_ref()))
        }
        Command::WfBound { op, a, b, out } => {
            let (name, res) = match op {
                WfOp::Shift => ("shift", wf_shift_bound(&read_json::<WFSet>(a)?)),
                WfOp::Conv => ("conv", wf_conv_bound(&read_json(a)?, &read_json(&need_b(b, "conv")?)?)?),
                WfOp::Prod => ("prod", wf_prod_bound(&read_json(a)?, &read_json(&need_b(b, "prod")?)?)?),
                WfOp::Fgsi => {
                    let phis = read_json::<OneOrMany>(a)?.into_vec();
                    let psis = read_json::<OneOrMany>(&need_b(b, "fgsi")?)?.into_vec();
                    ("fgsi", wf_fgsi_conv_bound(&phis, &psis)?)
                }
            };
            let v = json!({ "command": "wf-bound", "op": name, "result": val(&res) });
            Ok((v, out.as_ref()))
        }
        Command::Pair { f, theta, out } => {
            let fs: Scene = read_json(f)?;
            let ts: Scene = read_json(theta)?;
            let grid = fs.grid()?;
            let ff = fs.function()?;
            let th = ts.function()?;
            let p = dual_pair(&ff, &th, &grid)?;
            let s = th.order();
            let nf = sobolev_norm(&ff, -s, &grid);
            let nt = sobolev_norm(&th, s, &grid);
            let mut w = p.warnings.clone();
            w.extend(nf.warnings.iter().cloned());
            w.extend(nt.warnings.iter().cloned());
            w.dedup();
            let v = json!({
                "command": "pair",
                "s": s,
                "re": p.value.re,
                "im": p.value.im,
                "norm_f_minus_s": nf.value,
                "norm_theta_s": nt.value,
                "warnings": warnings(&w),
            });
            Ok((v, out.as_ref()))
        }
        Command::Norms { scene, s, p, fourier_csv, out } => {
            let sc: Scene = read_json(scene)?;
            let grid = sc.grid()?;
            let f = sc.function()?;
            let s = s.unwrap_or(sc.order);
            let n = sobolev_norm(&f, s, &grid);
            if let Some(path) = fourier_csv {
                write_text(path, &generator_fourier(&f, &grid).value.to_csv())?;
            }
            let coeff: Vec<f64> = f.coeffs().iter().map(|c| c.norm(*p, s)).collect();
            let v = json!({
                "command": "norms",
                "s": s,
                "p": p,
                "sobolev": n.value,
                "coefficients": coeff,
                "warnings": warnings(&n.warnings),
            });
            Ok((v, out.as_ref()))
        }
    }
}
