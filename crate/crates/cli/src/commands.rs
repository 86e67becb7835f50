use std::path::Path;

use convsemi::convolution::{convolve, exp_conv, is_generating_functional, norm_continuity_bound, state_check};
use convsemi::groupfun::{self, GroupFunction, MINIMALITY_DELTA};
use convsemi::io::{functional_to_json, FunctionalFile, GroupFunctionFile, MeasureFile};
use convsemi::semigroup::{assoc_residuals, associated_semigroup, generator_pairing_check, is_completely_positive};
use convsemi::{function_bialgebra, sampling, Bialgebra, Functional};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{Check, Report};
use crate::sources::{load_bialgebra, load_bialgebras, load_group, parse_file, read_input};
use crate::{Cli, CliError, Command};

/// Random triples per bialgebra in the convolution spot check.
const CONVOLUTION_SAMPLES: usize = 3;

/// Exponentials are summed to machine precision; `--tol` only judges residuals.
const EXP_TOL: f64 = 0.0;

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Validate { specs } => validate(cli, specs),
        Command::Evolve {
            bialgebra,
            gamma,
            times,
            grid_max,
            samples,
        } => evolve(cli, bialgebra, gamma, times, *grid_max, *samples),
        Command::Guichardet { group, psi } => guichardet(cli, group, psi),
        Command::Measure {
            measure: path,
            rate,
            times,
        } => measure(cli, path, *rate, times),
    }
}

fn check_times(times: &[f64]) -> Result<(), CliError> {
    if times.is_empty() || times.iter().any(|&t| !(t >= 0.0 && t.is_finite())) {
        return Err(CliError::Input(
            "--times must be a non-empty list of finite non-negative numbers".into(),
        ));
    }
    Ok(())
}

fn validate(cli: &Cli, specs: &[String]) -> Result<Report, CliError> {
    let tol = cli.tol;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut inputs = Vec::new();
    let mut checks = Vec::new();
    let mut data = Vec::new();
    for spec in specs {
        let (list, input) = load_bialgebras(spec, tol)?;
        inputs.push(input);
        for (label, b) in list {
            let r = b.validate(tol);
            checks.push(Check::residual(
                format!("{label}/coassociativity"),
                r.coassoc_residual,
                tol,
            ));
            checks.push(Check::residual(format!("{label}/counit"), r.counit_residual, tol));
            if let Some(h) = r.hom_residual {
                checks.push(Check::residual(format!("{label}/homomorphism"), h, tol));
            }
            if let Some(m) = r.cp_min_eig {
                checks.push(Check::lower_bound(format!("{label}/complete_positivity"), m, tol));
            }
            checks.push(Check::residual(format!("{label}/unital"), r.unit_residual, tol));
            checks.push(Check::residual(
                format!("{label}/counit_character"),
                r.character_residual,
                tol,
            ));
            let assoc = convolution_spot_check(&b, &mut rng)?;
            checks.push(Check::residual(
                format!("{label}/convolution_associativity"),
                assoc,
                tol,
            ));
            data.push(json!({
                "bialgebra": label,
                "blocks": b.algebra().blocks(),
                "dim": b.algebra().dim(),
                "mode": b.mode(),
                "commutative": b.is_commutative(),
                "cocommutativity_residual": b.cocommutativity_residual(),
                "validation": r,
                "convolution_associativity": assoc,
            }));
        }
    }
    let command = json!({"name": "validate", "specs": specs, "tol": tol, "seed": cli.seed});
    Ok(Report::new(command, inputs, checks, Value::Array(data)))
}

/// `max ‖(λ⋆μ)⋆ν − λ⋆(μ⋆ν)‖` over a few seeded random triples.
fn convolution_spot_check(b: &Bialgebra, rng: &mut ChaCha8Rng) -> Result<f64, CliError> {
    let mut worst: f64 = 0.0;
    for _ in 0..CONVOLUTION_SAMPLES {
        let l = sampling::random_functional(b.algebra(), rng);
        let m = sampling::random_functional(b.algebra(), rng);
        let n = sampling::random_functional(b.algebra(), rng);
        let left = convolve(b, &convolve(b, &l, &m)?, &n)?;
        let right = convolve(b, &l, &convolve(b, &m, &n)?)?;
        worst = worst.max(left.max_abs_diff(&right));
    }
    Ok(worst)
}

fn evolve(
    cli: &Cli,
    spec: &str,
    gamma_path: &Path,
    times: &[f64],
    grid_max: f64,
    samples: usize,
) -> Result<Report, CliError> {
    let tol = cli.tol;
    check_times(times)?;
    if !(grid_max > 0.0 && grid_max.is_finite()) {
        return Err(CliError::Input("--grid-max must be positive".into()));
    }
    let (label, b, b_input) = load_bialgebra(spec, tol)?;
    let (text, g_input) = read_input("gamma", gamma_path)?;
    let gamma = parse_file::<FunctionalFile>(gamma_path, &text)?.functional(b.algebra())?;
    let mut checks = Vec::new();

    let diagnostics = match is_generating_functional(&b, &gamma, tol) {
        Ok(d) => {
            checks.push(Check::residual("gamma/hermitian", d.hermitian_residual, tol));
            checks.push(Check::lower_bound(
                "gamma/conditionally_positive",
                d.min_eig_off_counit,
                tol,
            ));
            checks.push(Check::residual("gamma/vanishes_at_unit", d.value_at_unit, tol));
            json!(d)
        }
        Err(e) => {
            checks.push(Check::flag("gamma/discrete_type", false));
            json!({"error": e.to_string()})
        }
    };
    let valid = checks.iter().all(|c| c.pass);

    let pairing = generator_pairing_check(&b, &gamma)?;
    checks.push(Check::residual("generator_pairing", pairing, tol));

    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let extra: Vec<Functional> = (0..samples)
        .map(|_| sampling::random_functional(b.algebra(), &mut rng))
        .collect();

    let sg = associated_semigroup(&b, &gamma)?;
    let mut per_time = Vec::new();
    for &t in times {
        let lambda = exp_conv(&b, &gamma, t, EXP_TOL)?;
        let state = state_check(&lambda, t, tol);
        let pt = sg.at(t, EXP_TOL)?;
        let cp = is_completely_positive(&pt, tol);
        let mut res = assoc_residuals(&sg, t, EXP_TOL)?;
        if !extra.is_empty() {
            let c = convsemi::semigroup::check_commutation(&b, &pt, &extra)?;
            res.commutation = res.commutation.max(c);
        }
        let tag = format!("t={}", crate::report::num(t));
        checks.push(Check::flag(format!("{tag}/state"), state.is_state));
        checks.push(Check::flag(
            format!("{tag}/cp_unital_iff_state"),
            cp.cp_and_unital(tol) == state.is_state,
        ));
        checks.push(Check::residual(format!("{tag}/commutation"), res.commutation, tol));
        checks.push(Check::residual(
            format!("{tag}/strong_invariance"),
            res.strong_invariance,
            tol,
        ));
        checks.push(Check::residual(
            format!("{tag}/weak_invariance"),
            res.weak_invariance,
            tol,
        ));
        checks.push(Check::residual(format!("{tag}/recovery"), res.recovery, tol));
        checks.push(Check::residual(format!("{tag}/exponential_route"), res.route, tol));
        per_time.push(json!({
            "t": t,
            "lambda_dual_blocks": functional_to_json(&lambda),
            "distance_to_counit": (&lambda - b.epsilon()).norm(),
            "state": state,
            "cp": cp,
            "residuals": res,
        }));
    }

    let continuity = if valid {
        let grid: Vec<f64> = (0..=10).map(|k| grid_max * 0.5f64.powi(k)).collect();
        let bound = norm_continuity_bound(&b, &gamma, &grid, tol)?;
        checks.push(Check::flag("norm_continuity_bound", bound.satisfied));
        json!(bound)
    } else {
        Value::Null
    };

    let command = json!({
        "name": "evolve",
        "bialgebra": spec,
        "gamma": gamma_path.display().to_string(),
        "times": times,
        "grid_max": grid_max,
        "samples": samples,
        "tol": tol,
        "seed": cli.seed,
    });
    let data = json!({
        "bialgebra": label,
        "gamma_norm": gamma.norm(),
        "generator": diagnostics,
        "times": per_time,
        "continuity_bound": continuity,
    });
    Ok(Report::new(command, vec![b_input, g_input], checks, data))
}

fn values_json(f: &GroupFunction) -> Value {
    json!(f.values().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

fn guichardet(cli: &Cli, group: &str, psi_path: &Path) -> Result<Report, CliError> {
    let tol = cli.tol;
    let g = load_group("group", group, tol)?;
    let (text, p_input) = read_input("psi", psi_path)?;
    let file: GroupFunctionFile = parse_file(psi_path, &text)?;
    let base = psi_path.parent().unwrap_or_else(|| Path::new("."));
    let (psi, _) = file.resolve(base, tol)?;
    if psi.group() != &g.table {
        return Err(CliError::Input(format!(
            "{}: ψ is defined on a different group than '{group}'",
            psi_path.display()
        )));
    }
    let command = json!({
        "name": "guichardet",
        "group": group,
        "psi": psi_path.display().to_string(),
        "tol": tol,
        "seed": cli.seed,
    });
    let inputs = vec![g.input.clone(), p_input];

    let diag = groupfun::psi_diagnostics(&psi, tol)?;
    let mut checks = vec![
        Check::residual("hermitian", diag.hermitian_residual, tol),
        Check::lower_bound("conditionally_positive", diag.projected_min_eig, tol),
        Check::residual("vanishing_at_identity", diag.value_at_identity, tol),
    ];
    if !diag.is_valid() {
        let data = json!({"diagnostics": diag, "violations": diag.violations()});
        return Ok(Report::new(command, inputs, checks, data));
    }

    let k = groupfun::guichardet_constant(&psi, tol)?;
    let order = g.table.order() as f64;
    checks.push(Check::lower_bound("kernel_psd", k.certificate.min_eigenvalue, tol));
    checks.push(Check::residual("ones_in_kernel", k.certificate.ones_residual, tol));
    checks.push(Check::residual(
        "minimality",
        k.certificate.shifted_min_eigenvalue + MINIMALITY_DELTA * order,
        tol,
    ));
    let gns = match &g.irreps {
        Some(irr) => {
            let v = groupfun::guichardet_via_gns(irr, &psi, tol)?;
            checks.push(Check::residual("gns_agreement", v.agreement, tol));
            checks.push(Check::residual("gns_reconstruction", v.reconstruction_residual, tol));
            json!({
                "c": v.c,
                "hilbert_dim": v.gns.dim(),
                "phi": values_json(&v.phi),
            })
        }
        None => Value::Null,
    };
    let data = json!({
        "diagnostics": diag,
        "c": k.c,
        "phi": values_json(&k.phi),
        "certificate": k.certificate,
        "gns": gns,
    });
    Ok(Report::new(command, inputs, checks, data))
}

fn measure(cli: &Cli, path: &Path, rate: f64, times: &[f64]) -> Result<Report, CliError> {
    let tol = cli.tol;
    check_times(times)?;
    if !(rate >= 0.0 && rate.is_finite()) {
        return Err(CliError::Input("--rate must be a finite non-negative number".into()));
    }
    let (text, input) = read_input("measure", path)?;
    let file: MeasureFile = parse_file(path, &text)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let nu = file.resolve(base, tol)?;
    let command = json!({
        "name": "measure",
        "measure": path.display().to_string(),
        "rate": rate,
        "times": times,
        "tol": tol,
        "seed": cli.seed,
    });
    let mut checks = vec![Check::flag("nu_is_probability", nu.is_probability(tol))];
    if !checks[0].pass {
        return Ok(Report::new(
            command,
            vec![input],
            checks,
            json!({"weights": nu.weights()}),
        ));
    }
    let monoid = nu.monoid().clone();
    let b = function_bialgebra(&monoid);
    let dirac = groupfun::Measure::dirac(monoid.clone(), monoid.identity())?;
    let gamma = &(&nu.to_functional() - &dirac.to_functional()) * rate;
    let mut per_time = Vec::new();
    for &t in times {
        let mu = groupfun::measure_semigroup(&nu, rate, t)?;
        let lambda = exp_conv(&b, &gamma, t, EXP_TOL)?;
        let agreement = mu.to_functional().max_abs_diff(&lambda);
        let min_weight = mu.weights().iter().copied().fold(f64::INFINITY, f64::min);
        let tag = format!("t={}", crate::report::num(t));
        checks.push(Check::residual(format!("{tag}/agrees_with_exp_conv"), agreement, tol));
        checks.push(Check::lower_bound(format!("{tag}/nonnegative"), min_weight, tol));
        checks.push(Check::residual(
            format!("{tag}/total_mass"),
            (mu.total_mass() - 1.0).abs(),
            tol,
        ));
        per_time.push(json!({"t": t, "weights": mu.weights(), "agreement": agreement}));
    }
    let data = json!({"order": monoid.order(), "rate": rate, "times": per_time});
    Ok(Report::new(command, vec![input], checks, data))
}
