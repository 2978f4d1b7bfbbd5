use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use log::{info, warn};
use qudiscord::discord::{discord, isotropic_closed_form, DiscordReport};
use qudiscord::linalg::{block_decompose, validate_density, BipartiteDensity, LogBase};
use qudiscord::measurements::MeasurementParams;
use qudiscord::states::{
    basis_ket, bell, is_x_structure, isotropic, maximally_mixed, off_x_magnitude, quantum_classical, random_density,
    random_x_state, x_state, XPattern,
};
use qudiscord::systematics::{
    table2_up_to, x_subalgebra_structure, BipartiteFamily, CountQuery, MultiFamily, SpecialKind,
};
use qudiscord::{ComplexMatrix, Error, Subsystem, C64};
use serde_json::{json, Value};

use crate::args::{
    BaseChoice, CountArgs, CountFamily, Format, GenArgs, GenState, SearchArgs, SweepArgs, SweepFamily, ValidateArgs,
};
use crate::density_file::DensityFile;
use crate::error::{CliError, CliResult};

/// Largest `d_A · d_B` the generators and sweeps will build.
pub const MAX_STATE_DIM: usize = 1024;

/// How a command that did not hit a hard error finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotConverged,
    /// Some sweep points failed and were reported in the status column.
    PointFailures,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::PointFailures => 2,
            Status::NotConverged => 3,
        }
    }
}

pub fn base_for(choice: BaseChoice, rho: &BipartiteDensity, side: Subsystem) -> CliResult<LogBase> {
    Ok(match choice {
        BaseChoice::Dimension => LogBase::dimension(rho.dim(side))?,
        BaseChoice::Fixed(b) => LogBase::new(b)?,
    })
}

/// Discord of a validated state under the search flags.
pub fn run_discord(rho: &BipartiteDensity, search: &SearchArgs) -> CliResult<DiscordReport> {
    let side = search.side.into();
    let base = base_for(search.base, rho, side)?;
    Ok(discord(rho, side, base, &search.optimizer())?)
}

fn params_fields(p: &MeasurementParams) -> Vec<(&'static str, f64)> {
    match p {
        MeasurementParams::Qubit(q) => vec![("theta", q.theta), ("phi", q.phi)],
        MeasurementParams::Qutrit(q) => vec![
            ("theta1", q.theta1),
            ("theta2", q.theta2),
            ("epsilon1", q.epsilon1),
            ("epsilon2", q.epsilon2),
            ("theta", q.theta),
            ("phi", q.phi),
        ],
        MeasurementParams::Explicit => Vec::new(),
    }
}

pub fn report_record(r: &DiscordReport) -> Value {
    let argmax: serde_json::Map<String, Value> =
        params_fields(&r.argmax_params).into_iter().map(|(k, v)| (k.to_string(), Value::from(v))).collect();
    json!({
        "S_A": r.s_a,
        "S_B": r.s_b,
        "S_AB": r.s_ab,
        "I": r.mutual_information,
        "C": r.classical_correlation,
        "Q": r.discord,
        "argmax": argmax,
        "side": r.measured_side.to_string(),
        "base": r.base.value(),
        "evaluations": r.optimizer_evals,
        "converged": r.converged,
    })
}

fn write_report(r: &DiscordReport, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let argmax = params_fields(&r.argmax_params)
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    match format {
        Format::Text => {
            for (name, v) in [
                ("S_A", r.s_a),
                ("S_B", r.s_b),
                ("S_AB", r.s_ab),
                ("I", r.mutual_information),
                ("C", r.classical_correlation),
                ("Q", r.discord),
            ] {
                writeln!(out, "{name:<12}{v:.10}")?;
            }
            writeln!(out, "{:<12}{argmax}", "argmax")?;
            writeln!(out, "{:<12}{}", "side", r.measured_side)?;
            writeln!(out, "{:<12}{}", "base", r.base.value())?;
            writeln!(out, "{:<12}{}", "evaluations", r.optimizer_evals)?;
            writeln!(out, "{:<12}{}", "converged", r.converged)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["S_A", "S_B", "S_AB", "I", "C", "Q", "argmax", "side", "base", "evaluations", "converged"])?;
            w.write_record([
                r.s_a.to_string(),
                r.s_b.to_string(),
                r.s_ab.to_string(),
                r.mutual_information.to_string(),
                r.classical_correlation.to_string(),
                r.discord.to_string(),
                argmax,
                r.measured_side.to_string(),
                r.base.value().to_string(),
                r.optimizer_evals.to_string(),
                r.converged.to_string(),
            ])?;
            w.flush()?;
        }
        Format::Record => writeln!(out, "{}", report_record(r))?,
    }
    Ok(())
}

pub fn compute(args: &crate::args::ComputeArgs, out: &mut dyn Write) -> CliResult<Status> {
    let file = DensityFile::read(&args.input)?;
    let rho = file.validate(args.search.psd_tol)?;
    info!("loaded {}x{} state from {}", rho.dim_a(), rho.dim_b(), args.input.display());
    let report = run_discord(&rho, &args.search)?;
    write_report(&report, args.format, out)?;
    if report.converged {
        Ok(Status::Ok)
    } else {
        warn!("optimizer did not converge; results are the best found");
        Ok(Status::NotConverged)
    }
}

fn check_size(dim_a: usize, dim_b: usize) -> CliResult<()> {
    match dim_a.checked_mul(dim_b) {
        Some(n) if n <= MAX_STATE_DIM => Ok(()),
        _ => Err(CliError::Usage(format!("state dimension {dim_a}x{dim_b} exceeds {MAX_STATE_DIM}"))),
    }
}

/// Evenly spaced points from `start` to `stop` inclusive.
pub fn sweep_points(start: f64, stop: f64, steps: usize) -> CliResult<Vec<f64>> {
    if steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    if !(start.is_finite() && stop.is_finite() && start <= stop) {
        return Err(CliError::Usage("need finite --start <= --stop".into()));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| if k + 1 == steps { stop } else { start + (stop - start) * k as f64 / last })
        .collect())
}

fn white_noise_mix(rho: &BipartiteDensity, p: f64) -> CliResult<BipartiteDensity> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::DomainError { what: "mixing parameter p", value: p }.into());
    }
    let n = rho.matrix().rows();
    let noise = ComplexMatrix::identity(n).scale_real((1.0 - p) / n as f64);
    let m = &rho.matrix().scale_real(p) + &noise;
    Ok(validate_density(m, rho.dim_a(), rho.dim_b(), rho.psd_tolerance())?)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn sweep(args: &SweepArgs, out: &mut dyn Write) -> CliResult<Status> {
    if args.param != "p" {
        return Err(CliError::Usage(format!("unknown sweep parameter `{}` (only `p`)", args.param)));
    }
    let points = sweep_points(args.start, args.stop, args.steps)?;
    args.search.optimizer().validate()?;
    let base_state = match args.family {
        SweepFamily::Isotropic => {
            check_size(args.d, args.d)?;
            if !matches!(args.d, 2 | 3) {
                return Err(Error::UnsupportedDimension { dim: args.d }.into());
            }
            None
        }
        SweepFamily::Noisy => {
            let path = args.input.as_deref().ok_or_else(|| CliError::Usage("noisy sweep needs --input".into()))?;
            Some(DensityFile::read(path)?.validate(args.search.psd_tol)?)
        }
    };
    let closed = args.family == SweepFamily::Isotropic;

    let sink: Box<dyn Write + '_> = match &args.out {
        Some(path) => Box::new(BufWriter::new(create(path)?)),
        None => Box::new(out),
    };
    let mut w = csv::Writer::from_writer(sink);
    let mut header = vec!["p", "S_AB", "C", "Q", "I"];
    if closed {
        header.extend(["S_AB_closed", "C_closed", "Q_closed", "I_closed"]);
    }
    header.push("status");
    w.write_record(&header)?;

    let mut status = Status::Ok;
    // Points are independent; they run in order so rows come out in order.
    for &p in &points {
        let state = match &base_state {
            None => isotropic(args.d, p).map_err(CliError::from),
            Some(rho) => white_noise_mix(rho, p),
        };
        let result = state.and_then(|rho| run_discord(&rho, &args.search).map(|r| (r, rho)));
        let mut row = vec![p.to_string()];
        let point_status = match &result {
            Ok((r, _)) => {
                info!("p = {p}: C = {}, Q = {}", r.classical_correlation, r.discord);
                row.extend([r.s_ab, r.classical_correlation, r.discord, r.mutual_information].map(|v| v.to_string()));
                if r.converged {
                    "ok".to_string()
                } else {
                    status = status_max(status, Status::NotConverged);
                    "not-converged".to_string()
                }
            }
            Err(e) => {
                warn!("p = {p}: {e}");
                row.extend(std::iter::repeat_n(String::new(), 4));
                status = Status::PointFailures;
                format!("error:{}", e.invariant().unwrap_or("InputError"))
            }
        };
        if closed {
            let base = match args.search.base {
                BaseChoice::Fixed(b) => LogBase::new(b).ok(),
                BaseChoice::Dimension => LogBase::dimension(args.d).ok(),
            };
            let cf = base.and_then(|b| isotropic_closed_form(args.d, p, b).ok());
            row.extend([
                fmt_opt(cf.as_ref().map(|c| c.s_ab)),
                fmt_opt(cf.as_ref().map(|c| c.classical)),
                fmt_opt(cf.as_ref().map(|c| c.discord)),
                fmt_opt(cf.as_ref().map(|c| c.mutual_information)),
            ]);
        }
        row.push(point_status);
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(status)
}

fn status_max(a: Status, b: Status) -> Status {
    if a == Status::PointFailures {
        a
    } else {
        b
    }
}

fn create(path: &Path) -> CliResult<File> {
    File::create(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn parse_complex(s: &str) -> CliResult<C64> {
    let bad = || CliError::Usage(format!("expected `re` or `re:im`, got `{s}`"));
    let (re, im) = match s.split_once(':') {
        Some((re, im)) => (re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 0.0),
    };
    Ok(C64::new(re, im))
}

/// Builds the requested state together with metadata describing it.
pub fn generate(state: &GenState) -> CliResult<(BipartiteDensity, BTreeMap<String, Value>)> {
    let mut meta = BTreeMap::new();
    let rho = match state {
        GenState::Bell { d } => {
            check_size(*d, *d)?;
            meta.insert("state".into(), json!("bell"));
            meta.insert("d".into(), json!(d));
            bell(*d)?
        }
        GenState::Isotropic { d, p } => {
            check_size(*d, *d)?;
            meta.insert("state".into(), json!("isotropic"));
            meta.insert("d".into(), json!(d));
            meta.insert("p".into(), json!(p));
            isotropic(*d, *p)?
        }
        GenState::X { d, dim_b, diagonal, antidiagonal } => {
            let db = dim_b.unwrap_or(*d);
            check_size(*d, db)?;
            let n = d * db;
            let diagonal = diagonal.clone().unwrap_or_else(|| vec![1.0 / n as f64; n]);
            let antidiagonal = match antidiagonal {
                Some(list) => list.iter().map(|s| parse_complex(s)).collect::<CliResult<Vec<_>>>()?,
                None => vec![C64::new(0.0, 0.0); n / 2],
            };
            if diagonal.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: diagonal.len() }.into());
            }
            meta.insert("state".into(), json!("x"));
            x_state(&XPattern::new(diagonal, antidiagonal)?, *d, db)?
        }
        GenState::Qc { probs, dim_b, seed } => {
            let da = probs.len();
            check_size(da, *dim_b)?;
            let kets: Vec<_> = (0..da).map(|i| basis_ket(da, i)).collect();
            let partners = (0..da as u64)
                .map(|i| Ok(random_density(*dim_b, 1, *dim_b, seed.wrapping_add(i))?.into_matrix()))
                .collect::<CliResult<Vec<_>>>()?;
            meta.insert("state".into(), json!("quantum-classical"));
            meta.insert("seed".into(), json!(seed));
            quantum_classical(probs, &kets, &partners)?
        }
        GenState::Random { d, dim_b, rank, seed } => {
            check_size(*d, *dim_b)?;
            let rank = rank.unwrap_or(d * dim_b);
            meta.insert("state".into(), json!("random"));
            meta.insert("rank".into(), json!(rank));
            meta.insert("seed".into(), json!(seed));
            random_density(*d, *dim_b, rank, *seed)?
        }
        GenState::RandomX { d, dim_b, seed } => {
            check_size(*d, *dim_b)?;
            meta.insert("state".into(), json!("random-x"));
            meta.insert("seed".into(), json!(seed));
            random_x_state(*d, *dim_b, *seed)?
        }
        GenState::MaximallyMixed { d, dim_b } => {
            check_size(*d, *dim_b)?;
            meta.insert("state".into(), json!("maximally-mixed"));
            maximally_mixed(*d, *dim_b)?
        }
    };
    Ok((rho, meta))
}

pub fn gen(args: &GenArgs, out: &mut dyn Write) -> CliResult<Status> {
    let (rho, meta) = generate(&args.state)?;
    let text = DensityFile::new(&rho, meta).to_json();
    match &args.out {
        Some(path) => {
            create(path)?.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: path.clone(), source })?;
            info!("wrote {}", path.display());
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(Status::Ok)
}

/// Turns command-line count arguments into a library query.
pub fn count_query(args: &CountArgs) -> CliResult<CountQuery> {
    let family = args.family.ok_or_else(|| CliError::Usage("no family given".into()))?;
    let d = args.local_dim().ok_or_else(|| CliError::Usage("give --qubits, --qutrits or -d".into()))?;
    let need_n = || args.n.ok_or_else(|| CliError::Usage(format!("{family:?} needs -n")));
    let multi_or_pair = |multi: MultiFamily, pair: BipartiteFamily| -> CliResult<CountQuery> {
        match (args.n, args.big_d) {
            (_, Some(big_d)) => Ok(CountQuery::Bipartite { family: pair, d, big_d }),
            (Some(n), None) => Ok(CountQuery::Multi { family: multi, d, n }),
            (None, None) => Err(CliError::Usage("give -n (copies) or -D (partner dimension)".into())),
        }
    };
    match family {
        CountFamily::General => multi_or_pair(MultiFamily::General, BipartiteFamily::General),
        CountFamily::X => multi_or_pair(MultiFamily::X, BipartiteFamily::X),
        CountFamily::ExtendedX => multi_or_pair(MultiFamily::ExtendedX, BipartiteFamily::ExtendedX),
        CountFamily::Su2 => Ok(CountQuery::Multi { family: MultiFamily::Su2Blocks, d, n: need_n()? }),
        CountFamily::U1 => Ok(CountQuery::Multi { family: MultiFamily::U1Blocks, d, n: need_n()? }),
        CountFamily::Pure => Ok(CountQuery::Special { kind: SpecialKind::Pure, d, second: need_n()? }),
        CountFamily::Qc => {
            let big_d = args.big_d.ok_or_else(|| CliError::Usage("qc needs -D".into()))?;
            Ok(CountQuery::Special { kind: SpecialKind::QuantumClassical, d, second: big_d })
        }
    }
}

pub fn count(args: &CountArgs, out: &mut dyn Write) -> CliResult<Status> {
    if args.table2 {
        write!(out, "{}", table2_up_to(args.max_n)?)?;
        if args.family.is_none() {
            return Ok(Status::Ok);
        }
    }
    let query = count_query(args)?;
    writeln!(out, "{}", query.evaluate()?)?;
    if args.structure {
        let n = args.n.ok_or_else(|| CliError::Usage("--structure needs -n".into()))?;
        let d = args.local_dim().unwrap_or(0);
        writeln!(out, "{}", x_subalgebra_structure(d, n)?)?;
    }
    Ok(Status::Ok)
}

pub fn validate(args: &ValidateArgs, out: &mut dyn Write) -> CliResult<Status> {
    let file = DensityFile::read(&args.input)?;
    let rho = match file.validate(args.psd_tol) {
        Ok(rho) => rho,
        Err(e) => {
            writeln!(out, "{:<22}false", "valid")?;
            if let Some(name) = e.invariant() {
                writeln!(out, "{:<22}{name}", "violated")?;
            }
            return Err(e);
        }
    };
    let report = rho.report();
    let m = rho.matrix();
    let blocks = block_decompose(m, args.zero_tol);
    let sizes: Vec<String> = blocks.iter().map(|b| b.len().to_string()).collect();
    let rank = rho.spectrum().iter().filter(|&&l| l > args.psd_tol).count();
    writeln!(out, "{:<22}true", "valid")?;
    writeln!(out, "{:<22}{}x{}", "dims", rho.dim_a(), rho.dim_b())?;
    writeln!(out, "{:<22}{:e}", "trace_error", report.trace_error)?;
    writeln!(out, "{:<22}{:e}", "hermiticity_residual", report.hermiticity_residual)?;
    writeln!(out, "{:<22}{:e}", "min_eigenvalue", report.min_eigenvalue)?;
    writeln!(out, "{:<22}{}", "clamped_eigenvalues", report.clamped_eigenvalues)?;
    writeln!(out, "{:<22}{rank}", "rank")?;
    writeln!(out, "{:<22}{}", "x_structure", is_x_structure(m, args.zero_tol))?;
    writeln!(out, "{:<22}{:e}", "off_x_magnitude", off_x_magnitude(m))?;
    writeln!(out, "{:<22}{} [{}]", "blocks", blocks.len(), sizes.join(", "))?;
    Ok(Status::Ok)
}
