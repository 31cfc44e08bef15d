use serde::Serialize;
use sympair_core::code::EvalPoint;
use sympair_core::spectrum::{
    check_closed_form, enumerate_code, family_census, witness_at, CensusTable, EnumConfig, Witness,
};
use sympair_core::{
    CodeSpec, CodeSpecJson, DistributionDiff, PointSet, WeightDistribution, DEFAULT_ENUMERATION_CEILING,
};

use crate::output::{opt, Output};
use crate::sweep;
use crate::{CensusArgs, Cli, CliError, CodeArgs, Command, Format, RunArgs};

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let jobs = match &cli.command {
        Command::Construct(a) | Command::Verify(a) | Command::Spectrum(a) => a.run.jobs,
        Command::Census(a) => a.run.jobs,
        Command::Sweep(_) => None,
    };
    let result = match jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        _ => with_pool(jobs, || dispatch(&cli)),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub(crate) fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    builder.build().expect("thread pool").install(f)
}

fn dispatch(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Census(a) => census(a),
        Command::Sweep(a) => sweep::cmd_sweep(a),
    }
}

fn build_spec(a: &CodeArgs) -> Result<CodeSpec, CliError> {
    let field = a.field.resolve()?;
    let p = a.points.resolve(&field)?;
    Ok(CodeSpec::build(&field, a.k, p.m, p.beta1, p.beta2, p.alphas)?)
}

fn enum_config(run: &RunArgs) -> EnumConfig {
    // the pool installed by `run` already has the requested size
    EnumConfig { ceiling: run.ceiling.unwrap_or(DEFAULT_ENUMERATION_CEILING), jobs: None }
}

fn output(run: &RunArgs, default: Format) -> Output {
    Output { format: run.format.unwrap_or(default), out: run.out.clone() }
}

fn layout_tags(spec: &CodeSpec) -> Vec<String> {
    spec.layout()
        .points
        .iter()
        .map(|&pt| match pt {
            EvalPoint::Alpha(_) => format!("alpha:{}", spec.resolve(pt).value()),
            EvalPoint::Beta1 => "beta1".into(),
            EvalPoint::Beta2 => "beta2".into(),
        })
        .collect()
}

#[derive(Serialize)]
struct ConstructReport {
    generator_matrix: Vec<Vec<u32>>,
    layout: Vec<String>,
    spec: CodeSpecJson,
}

fn construct(a: &CodeArgs) -> Result<bool, CliError> {
    let spec = build_spec(a)?;
    let out = output(&a.run, Format::Json);
    let generator_matrix: Vec<Vec<u32>> =
        spec.generator_matrix().iter().map(|row| row.iter().map(|x| x.value()).collect()).collect();
    match out.format {
        Format::Json => {
            out.json(&ConstructReport { generator_matrix, layout: layout_tags(&spec), spec: spec.to_json() })?
        }
        Format::Csv => {
            let pts = spec.layout().points;
            out.csv(
                &["position", "point", "value"],
                pts.iter()
                    .enumerate()
                    .map(|(i, &pt)| vec![(i + 1).to_string(), pt.to_string(), spec.resolve(pt).value().to_string()]),
            )?
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct VerifyReport {
    dp: usize,
    k: usize,
    m: usize,
    mds: bool,
    n: usize,
    q: u32,
    singleton_dp: usize,
    theoretical_dp: usize,
    witness: Witness,
}

fn verify(a: &CodeArgs) -> Result<bool, CliError> {
    let spec = build_spec(a)?;
    let e = enumerate_code(&spec, &enum_config(&a.run))?;
    let dp = e.distribution.min_positive_weight().expect("nonzero codewords");
    let theory = spec.theoretical_dp();
    let singleton = spec.n() - spec.k() + 2;
    let mds = dp == theory && theory == singleton;
    let witness = witness_at(&spec, e.first_index[&dp]);
    match a.run.format {
        None => {
            let mut text = if mds {
                format!("d_p={dp} = theory={theory} = n-k+2 ✓ MDS\n")
            } else {
                format!("d_p={dp}, theory={theory}, n-k+2={singleton}: MISMATCH\n")
            };
            if !mds {
                text += &format!(
                    "witness: message {} (index {}), codeword {:?}, pair weight {}\n",
                    witness.message, witness.message_index, witness.codeword, witness.weight
                );
            }
            output(&a.run, Format::Json).text(&text)?;
        }
        Some(Format::Json) => output(&a.run, Format::Json).json(&VerifyReport {
            dp,
            k: spec.k(),
            m: spec.m(),
            mds,
            n: spec.n(),
            q: spec.q(),
            singleton_dp: singleton,
            theoretical_dp: theory,
            witness,
        })?,
        Some(Format::Csv) => output(&a.run, Format::Json).csv(
            &["q", "k", "m", "n", "dp", "theoretical_dp", "singleton_dp", "mds"],
            [vec![
                spec.q().to_string(),
                spec.k().to_string(),
                spec.m().to_string(),
                spec.n().to_string(),
                dp.to_string(),
                theory.to_string(),
                singleton.to_string(),
                mds.to_string(),
            ]],
        )?,
    }
    Ok(mds)
}

#[derive(Serialize)]
pub(crate) struct SpectrumReport {
    pub closed_form: Option<WeightDistribution>,
    pub diff: Option<DistributionDiff>,
    pub enumerated: WeightDistribution,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub passes: bool,
    pub q: u32,
    /// `A(0) = 1`, total `q^k`, smallest positive weight equal to the designed distance.
    pub sanity: bool,
    pub theoretical_dp: usize,
    pub witness: Option<Witness>,
}

pub(crate) fn spectrum_report(spec: &CodeSpec, cfg: &EnumConfig) -> Result<SpectrumReport, CliError> {
    let (enumerated, closed_form, diff, witness) = match check_closed_form(spec, cfg)? {
        Some(c) => (c.enumerated, Some(c.closed_form), Some(c.diff), c.witness),
        None => (enumerate_code(spec, cfg)?.distribution, None, None, None),
    };
    let sanity = enumerated.get(0) == 1
        && enumerated.total() == (spec.q() as u64).pow(spec.k() as u32)
        && enumerated.min_positive_weight() == Some(spec.theoretical_dp());
    let passes = sanity && diff.as_ref().is_none_or(|d| d.is_empty());
    Ok(SpectrumReport {
        closed_form,
        diff,
        enumerated,
        k: spec.k(),
        m: spec.m(),
        n: spec.n(),
        passes,
        q: spec.q(),
        sanity,
        theoretical_dp: spec.theoretical_dp(),
        witness,
    })
}

fn spectrum(a: &CodeArgs) -> Result<bool, CliError> {
    let spec = build_spec(a)?;
    let report = spectrum_report(&spec, &enum_config(&a.run))?;
    let out = output(&a.run, Format::Json);
    match out.format {
        Format::Json => out.json(&report)?,
        Format::Csv => {
            let weights: std::collections::BTreeSet<usize> = report
                .enumerated
                .counts()
                .keys()
                .chain(report.closed_form.iter().flat_map(|c| c.counts().keys()))
                .copied()
                .filter(|&w| w > 0)
                .collect();
            out.csv(
                &["weight", "enumerated", "closed_form", "delta"],
                weights.into_iter().map(|w| {
                    let e = report.enumerated.get(w);
                    let c = report.closed_form.as_ref().map(|c| c.get(w));
                    vec![w.to_string(), e.to_string(), opt(c), opt(c.map(|c| e as i128 - c as i128))]
                }),
            )?
        }
    }
    if let Some(w) = &report.witness {
        eprintln!(
            "mismatch: message {} (index {}) has pair weight {} but its class {} is assigned {}",
            w.message,
            w.message_index,
            w.weight,
            w.class,
            opt(w.predicted_weight)
        );
    }
    Ok(report.passes)
}

pub(crate) fn census_csv(out: &Output, table: &CensusTable) -> Result<(), CliError> {
    out.csv(
        &["class", "enumerated", "formula", "delta"],
        table
            .rows
            .iter()
            .map(|r| vec![r.class.clone(), r.enumerated.to_string(), r.formula.to_string(), r.delta.to_string()]),
    )
}

fn census(a: &CensusArgs) -> Result<bool, CliError> {
    let field = a.field.resolve()?;
    let p = a.points.resolve(&field)?;
    let points = PointSet::with_defaults(&field, p.m, p.beta1, p.beta2, p.alphas)?;
    let table = family_census(&points, &enum_config(&a.run))?;
    let out = output(&a.run, Format::Json);
    match out.format {
        Format::Json => out.json(&table)?,
        Format::Csv => census_csv(&out, &table)?,
    }
    Ok(table.passes())
}
