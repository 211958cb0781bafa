use std::fs;
use std::path::Path;

use bifree_core::bnc::{enumerate_bnc, enumerate_nc, mobius_to_top, parse_sides, s_chi_of, SetPartition};
use bifree_core::cbp::{
    cbp_cumulants, cbp_moments, limit_theorem_moments, poisson_approximation, psd_check, CbpSpec, Distribution,
};
use bifree_core::cumulants::{kappa_from_moments, moments_from_kappa, Alphabet, MomentFunctional, TableJson};
use bifree_core::fock::verify_fock_cumulants;
use bifree_core::matrix::{estimate_empirical_cumulants, EnsembleSpec, JointAtoms};
use serde_json::{json, Value};

use crate::args::*;
use crate::atoms::{parse_atoms, AtomList};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Report, VERSION};
use crate::series::{emit_convergence_series, series_columns, SeriesPoint};

/// Everything a subcommand needs besides its own arguments.
struct Context {
    name: String,
    seed: u64,
    config: Value,
    format: Option<Format>,
    workers: usize,
}

impl Context {
    fn report(&self, columns: Vec<&'static str>) -> Report {
        Report::new(&self.name, self.seed, self.config.clone(), columns)
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

pub fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Nc(NcCommand::List(_)) => "nc list",
        Command::Nc(NcCommand::Mobius(_)) => "nc mobius",
        Command::Bnc(BncCommand::List(_)) => "bnc list",
        Command::Cumulants(CumulantsCommand::FromMoments(_)) => "cumulants from-moments",
        Command::Moments(MomentsCommand::FromCumulants(_)) => "moments from-cumulants",
        Command::Cbp(CbpCommand::Build(_)) => "cbp build",
        Command::Cbp(CbpCommand::Limit(_)) => "cbp limit",
        Command::Cbp(CbpCommand::Approx(_)) => "cbp approx",
        Command::Cbp(CbpCommand::Psd(_)) => "cbp psd",
        Command::Simulate(SimulateCommand::Wishart(_)) => "simulate wishart",
        Command::Simulate(SimulateCommand::Bimatrix(_)) => "simulate bimatrix",
        Command::Fock(FockCommand::Verify(_)) => "fock verify",
    }
}

fn input_paths(command: &Command) -> Vec<&Path> {
    match command {
        Command::Cumulants(CumulantsCommand::FromMoments(a)) | Command::Moments(MomentsCommand::FromCumulants(a)) => {
            vec![&a.input]
        }
        Command::Cbp(CbpCommand::Build(a)) => vec![&a.jump],
        Command::Cbp(CbpCommand::Limit(a)) => vec![&a.jump],
        Command::Cbp(CbpCommand::Approx(ApproxArgs { source, .. }) | CbpCommand::Psd(PsdArgs { source, .. })) => {
            source.input.iter().chain(source.jump.iter()).map(|p| p.as_path()).collect()
        }
        _ => Vec::new(),
    }
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (fs::canonicalize(a), fs::canonicalize(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

/// Runs the subcommand and returns the rendered report.
pub fn dispatch(cli: &Cli) -> CliResult<Vec<u8>> {
    if let Some(out) = &cli.out {
        if let Some(input) = input_paths(&cli.command).into_iter().find(|p| same_file(p, out)) {
            return Err(CliError::Usage(format!(
                "refusing to overwrite input file {}",
                input.display()
            )));
        }
    }
    let ctx = Context {
        name: command_name(&cli.command).to_string(),
        seed: cli.seed,
        config: serde_json::to_value(cli).expect("config serializes"),
        format: cli.format,
        workers: cli.workers,
    };
    match &cli.command {
        Command::Nc(NcCommand::List(a)) => nc_list(&ctx, a.n),
        Command::Nc(NcCommand::Mobius(a)) => nc_mobius(&ctx, a.n),
        Command::Bnc(BncCommand::List(a)) => bnc_list(&ctx, &a.chi),
        Command::Cumulants(CumulantsCommand::FromMoments(a)) => {
            let moments = read_table(&a.input)?.to_moments()?;
            let kappa = kappa_from_moments(&moments)?;
            table_output(&ctx, TableJson::from_cumulants(&kappa), kappa.alphabet(), kappa.entries())
        }
        Command::Moments(MomentsCommand::FromCumulants(a)) => {
            let kappa = read_table(&a.input)?.to_cumulants()?;
            let moments = moments_from_kappa(&kappa)?;
            table_output(&ctx, TableJson::from_moments(&moments), moments.alphabet(), moments.entries())
        }
        Command::Cbp(CbpCommand::Build(a)) => cbp_build(&ctx, a),
        Command::Cbp(CbpCommand::Limit(a)) => cbp_limit(&ctx, a),
        Command::Cbp(CbpCommand::Approx(a)) => cbp_approx(&ctx, a),
        Command::Cbp(CbpCommand::Psd(a)) => cbp_psd(&ctx, a),
        Command::Simulate(SimulateCommand::Wishart(a)) => {
            let atoms = parse_atoms(&a.ensemble.atoms)?;
            let alphabet = Alphabet::new(var_names("a", atoms.arity()), Vec::<String>::new())?;
            simulate(&ctx, &a.ensemble, alphabet, atoms)
        }
        Command::Simulate(SimulateCommand::Bimatrix(a)) => {
            let atoms = parse_atoms(&a.ensemble.atoms)?;
            if a.left > atoms.arity() {
                return Err(CliError::Usage(format!(
                    "--left {} exceeds the {} atom coordinates",
                    a.left,
                    atoms.arity()
                )));
            }
            let alphabet = Alphabet::new(var_names("a", a.left), var_names("b", atoms.arity() - a.left))?;
            simulate(&ctx, &a.ensemble, alphabet, atoms)
        }
        Command::Fock(FockCommand::Verify(a)) => fock_verify(&ctx, a),
    }
}

fn var_names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

fn read_table(path: &Path) -> CliResult<TableJson> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(TableJson::parse(&text)?)
}

fn with_cap(m: MomentFunctional, cap: usize) -> CliResult<MomentFunctional> {
    if m.degree_cap() > cap {
        Ok(m.truncated(cap)?)
    } else {
        Ok(m)
    }
}

fn blocks_cell(pi: &SetPartition) -> Cell {
    Cell::Json(json!(pi.blocks()))
}

fn nc_list(ctx: &Context, n: usize) -> CliResult<Vec<u8>> {
    let mut report = ctx.report(vec!["index", "blocks", "num_blocks"]);
    for (i, pi) in enumerate_nc(n)?.iter().enumerate() {
        report.push(vec![i.into(), blocks_cell(pi), pi.num_blocks().into()]);
    }
    report.note("count", report.rows.len());
    report.render(ctx.format_or(Format::Json))
}

fn nc_mobius(ctx: &Context, n: usize) -> CliResult<Vec<u8>> {
    let mut report = ctx.report(vec!["index", "blocks", "mobius_to_top"]);
    for (i, pi) in enumerate_nc(n)?.iter().enumerate() {
        report.push(vec![i.into(), blocks_cell(pi), mobius_to_top(pi).into()]);
    }
    report.render(ctx.format_or(Format::Json))
}

fn bnc_list(ctx: &Context, chi: &str) -> CliResult<Vec<u8>> {
    let shape = s_chi_of(&parse_sides(chi)?)?;
    let mut report = ctx.report(vec!["index", "blocks", "nc_preimage"]);
    for (i, sigma) in enumerate_bnc(&shape)?.iter().enumerate() {
        report.push(vec![i.into(), blocks_cell(sigma.partition()), blocks_cell(&sigma.preimage())]);
    }
    report.note("count", report.rows.len());
    report.render(ctx.format_or(Format::Json))
}

/// JSON output is a plain word table (readable back with `--in`); CSV lists
/// `word, value`.
fn table_output(
    ctx: &Context,
    mut table: TableJson,
    alphabet: &Alphabet,
    entries: impl Iterator<Item = (bifree_core::cumulants::Word, f64)>,
) -> CliResult<Vec<u8>> {
    match ctx.format_or(Format::Json) {
        Format::Json => {
            table.meta = Some(json!({
                "tool": "bifree",
                "version": VERSION,
                "command": ctx.name,
                "seed": ctx.seed,
                "config": ctx.config,
            }));
            let mut out = table.to_json_string().into_bytes();
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut report = ctx.report(vec!["word", "value"]);
            report.note("degree_cap", table.degree_cap);
            for (word, value) in entries {
                report.push(vec![alphabet.render(&word).into(), value.into()]);
            }
            report.render(Format::Csv)
        }
    }
}

fn cbp_build(ctx: &Context, a: &BuildArgs) -> CliResult<Vec<u8>> {
    let mut jump = read_table(&a.jump)?.to_moments()?;
    if let Some(deg) = a.deg {
        jump = jump.truncated(deg)?;
    }
    let spec = CbpSpec::new(a.lambda, jump)?;
    if a.cumulants {
        let kappa = cbp_cumulants(&spec);
        table_output(ctx, TableJson::from_cumulants(&kappa), kappa.alphabet(), kappa.entries())
    } else {
        let dist = cbp_moments(&spec)?;
        let m = dist.moments();
        table_output(ctx, TableJson::from_moments(m), m.alphabet(), m.entries())
    }
}

fn moment_points(x: usize, value: &MomentFunctional, reference: &MomentFunctional) -> Vec<SeriesPoint> {
    reference
        .entries()
        .map(|(word, r)| SeriesPoint {
            x,
            word: reference.alphabet().render(&word),
            value: value.get(&word).expect("same alphabet and cap"),
            reference: r,
        })
        .collect()
}

fn cbp_limit(ctx: &Context, a: &LimitArgs) -> CliResult<Vec<u8>> {
    let jump = with_cap(read_table(&a.jump)?.to_moments()?, a.deg)?;
    let spec = CbpSpec::new(a.lambda, jump)?;
    let target = cbp_moments(&spec)?;
    let mut points = Vec::new();
    for &n in &a.n {
        eprintln!("bifree: limit N = {n}");
        let s_n = limit_theorem_moments(&spec, n)?;
        points.extend(moment_points(n, s_n.moments(), target.moments()));
    }
    let mut report = ctx.report(series_columns("N"));
    emit_convergence_series(&mut report, &points);
    report.render(ctx.format_or(Format::Csv))
}

fn resolve_source(source: &SourceArgs, cap: usize) -> CliResult<Distribution> {
    match (&source.input, &source.jump) {
        (Some(path), None) => Ok(Distribution::from_moments(with_cap(
            read_table(path)?.to_moments()?,
            cap,
        )?)),
        (None, Some(path)) => {
            let jump = with_cap(read_table(path)?.to_moments()?, cap)?;
            Ok(cbp_moments(&CbpSpec::new(source.lambda, jump)?)?)
        }
        _ => Err(CliError::Usage("exactly one of --in or --jump is required".into())),
    }
}

fn cbp_approx(ctx: &Context, a: &ApproxArgs) -> CliResult<Vec<u8>> {
    let nu = resolve_source(&a.source, a.deg)?;
    let mut points = Vec::new();
    for &n in &a.n {
        eprintln!("bifree: approximation n = {n}");
        let approx = poisson_approximation(&nu, n)?;
        points.extend(moment_points(n, approx.moments(), nu.moments()));
    }
    let mut report = ctx.report(series_columns("n"));
    emit_convergence_series(&mut report, &points);
    report.render(ctx.format_or(Format::Csv))
}

fn cbp_psd(ctx: &Context, a: &PsdArgs) -> CliResult<Vec<u8>> {
    let nu = resolve_source(&a.source, 2 * a.deg)?;
    let psd = psd_check(&nu, a.deg)?;
    let mut report = ctx.report(vec!["deg", "psd", "min_eigenvalue", "dimension", "asymmetry"]);
    report.push(vec![
        a.deg.into(),
        psd.psd.into(),
        psd.min_eigenvalue.into(),
        psd.dimension.into(),
        psd.asymmetry.into(),
    ]);
    report.render(ctx.format_or(Format::Csv))
}

fn simulate(ctx: &Context, a: &EnsembleArgs, alphabet: Alphabet, atoms: AtomList) -> CliResult<Vec<u8>> {
    let spec = EnsembleSpec {
        lambda: a.lambda,
        law: JointAtoms::new(alphabet, atoms.values, atoms.weights)?,
        sizes: a.sizes.clone(),
        trials: a.trials,
        seed: ctx.seed,
        max_word_len: a.max_word,
    };
    spec.validate()?;
    eprintln!(
        "bifree: {} trials at sizes {:?}, words up to length {}",
        a.trials, a.sizes, a.max_word
    );
    let result = estimate_empirical_cumulants(&spec, ctx.workers)?;
    let mut report = ctx.report(vec!["n", "word", "empirical", "target", "abs_err", "std_err"]);
    let mut diagnostics = Vec::new();
    for size in &result.sizes {
        for row in &size.rows {
            report.push(vec![
                row.n.into(),
                row.word.clone().into(),
                row.empirical.into(),
                row.target.into(),
                row.abs_err.into(),
                row.std_err.into(),
            ]);
        }
        diagnostics.push(json!({
            "n": size.n,
            "max_sample_imag": size.max_sample_imag,
            "max_mean_imag": size.max_mean_imag,
            "commutation_deviation": size.commutation_deviation,
        }));
    }
    report.note("diagnostics", diagnostics);
    report.render(ctx.format_or(Format::Csv))
}

fn fock_verify(ctx: &Context, a: &FockArgs) -> CliResult<Vec<u8>> {
    let atoms = parse_atoms(&a.atoms)?;
    if atoms.arity() != 2 {
        return Err(CliError::Atoms(format!(
            "the Fock model takes atoms `x,y:weight` for one left and one right variable, got {} coordinates",
            atoms.arity()
        )));
    }
    let max_m = a.max_m.unwrap_or(a.n + 2);
    let alphabet = Alphabet::new(["a1"], ["b1"])?;
    let law = JointAtoms::new(alphabet, atoms.values, atoms.weights)?;
    let spec = CbpSpec::new(a.lambda, law.moments(max_m.max(a.n + 1))?)?;
    let result = verify_fock_cumulants(&spec, a.n, max_m, a.depth)?;
    let mut report = ctx.report(vec![
        "word",
        "chi",
        "omega_moment",
        "kappa_empirical",
        "kappa_target",
        "abs_err",
    ]);
    for row in &result.rows {
        report.push(vec![
            row.word.clone().into(),
            row.chi.clone().into(),
            row.omega_moment.into(),
            row.kappa_empirical.into(),
            row.kappa_target.into(),
            row.abs_err.into(),
        ]);
    }
    report.note("depth", result.depth);
    report.note("max_abs_err", result.max_abs_err());
    report.render(ctx.format_or(Format::Csv))
}
