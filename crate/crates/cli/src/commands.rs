use std::fs;

use conway_core::corpus;
use conway_core::finite_type::{colored_vanishing_probe, leibniz_check, Invariant, SingularSampler, Verdict};
use conway_core::poly::Coefficient;
use conway_core::reduced::{
    alpha1_jump_check, alphas, gamma3, gamma_jump_check, reduced_conway, sato_levine,
};
use conway_core::sampler::{BraidSampler, Ctype2Sampler, DoublePoints, FixedSampler, SingularBraidSampler};
use conway_core::skein::conway;
use conway_core::{parse_pd, CrossingKind, Error, Resolution, SingularLinkDiagram};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::{
    CheckCommand, Cli, Command, CorpusCommand, Family, LeibnizArgs, ProbeArgs, ProbeCommand, RunConfig,
};

/// A failure that maps to exit code 2, optionally with a report to print.
pub struct InputError {
    pub message: String,
    pub report: Option<Value>,
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        Self {
            message: e.to_string(),
            report: None,
        }
    }
}

fn usage(message: impl Into<String>) -> InputError {
    InputError {
        message: message.into(),
        report: None,
    }
}

type Outcome = Result<(Value, u8), InputError>;

pub fn run(cli: &Cli) -> Outcome {
    let cfg = &cli.config;
    match &cli.command {
        Command::Validate => validate(cfg),
        Command::Invariants => invariants(cfg),
        Command::Corpus(CorpusCommand::Emit) => emit(cfg),
        Command::Probe(ProbeCommand::ColoredType(args)) => probe(cfg, args),
        Command::Check(CheckCommand::Jumps) => jumps(cfg),
        Command::Check(CheckCommand::Skein) => skein(cfg),
        Command::Check(CheckCommand::Leibniz(args)) => leibniz(cfg, args),
    }
}

fn int(v: &BigInt) -> Value {
    serde_json::to_value(Coefficient::from(v)).expect("coefficients serialize")
}

/// Variant name of an error, e.g. `DuplicateArcUse`.
fn kind(e: &Error) -> String {
    format!("{e:?}")
        .chars()
        .take_while(|c| c.is_alphanumeric())
        .collect()
}

/// `name[:p1,p2,...]`, where a bare `+` or `-` stands for `1` or `-1`.
fn parse_corpus_spec(spec: &str) -> Result<(String, Vec<i64>), InputError> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params = rest
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|p| match p.trim() {
            "+" => Ok(1),
            "-" => Ok(-1),
            other => other
                .parse()
                .map_err(|_| usage(format!("bad corpus parameter `{other}`"))),
        })
        .collect::<Result<_, _>>()?;
    Ok((name.to_string(), params))
}

fn input_text(cfg: &RunConfig) -> Result<Option<String>, InputError> {
    let given = [cfg.input.is_some(), cfg.pd.is_some(), cfg.corpus.is_some()];
    if given.iter().filter(|&&g| g).count() > 1 {
        return Err(usage("give at most one of --input, --pd, --corpus"));
    }
    if let Some(path) = &cfg.input {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        return Ok(Some(text));
    }
    if let Some(pd) = &cfg.pd {
        return Ok(Some(pd.clone()));
    }
    if let Some(spec) = &cfg.corpus {
        let (name, params) = parse_corpus_spec(spec)?;
        return Ok(Some(corpus::build(&name, &params)?.to_pd()));
    }
    Ok(None)
}

fn diagram(cfg: &RunConfig) -> Result<Option<SingularLinkDiagram>, InputError> {
    input_text(cfg)?
        .map(|t| parse_pd(&t).map_err(InputError::from))
        .transpose()
}

fn required(cfg: &RunConfig) -> Result<SingularLinkDiagram, InputError> {
    diagram(cfg)?.ok_or_else(|| usage("no diagram given (use --input, --pd or --corpus)"))
}

fn validate(cfg: &RunConfig) -> Outcome {
    let text = input_text(cfg)?.ok_or_else(|| usage("no diagram given (use --input, --pd or --corpus)"))?;
    match parse_pd(&text) {
        Ok(d) => Ok((
            json!({
                "valid": true,
                "pd": d.to_pd(),
                "crossings": d.crossing_count(),
                "components": d.component_count(),
                "double_points": d.singular_crossings().len(),
                "planar": d.is_planar(),
                "split": d.is_diagrammatically_split(),
            }),
            0,
        )),
        Err(e) => Err(InputError {
            message: e.to_string(),
            report: Some(json!({ "valid": false, "error": kind(&e), "message": e.to_string() })),
        }),
    }
}

fn invariants(cfg: &RunConfig) -> Outcome {
    let d = required(cfg)?;
    let m = d.component_count();
    let p = conway(&d)?;
    let series = reduced_conway(&d, cfg.truncation)?;
    let a: Vec<Value> = alphas(&d, 4)?.iter().map(int).collect();
    let sl = if m == 2 {
        int(&sato_levine(&d)?)
    } else {
        Value::Null
    };
    let gamma = if m == 3 { int(&gamma3(&d)?) } else { Value::Null };
    Ok((
        json!({
            "pd": d.to_pd(),
            "components": m,
            "crossings": d.crossing_count(),
            "conway": p,
            "linking_matrix": d.linking_matrix()?.rows(),
            "truncation": cfg.truncation,
            "reduced": series.coeffs().iter().map(int).collect::<Vec<_>>(),
            "alphas": a,
            "sato_levine": sl,
            "gamma": gamma,
        }),
        0,
    ))
}

fn emit(cfg: &RunConfig) -> Outcome {
    let entry = |name: &str, params: &[i64]| -> Result<Value, InputError> {
        Ok(serde_json::to_value(corpus::entry(name, params)?).expect("entries serialize"))
    };
    match &cfg.corpus {
        Some(spec) => {
            let (name, params) = parse_corpus_spec(spec)?;
            Ok((entry(&name, &params)?, 0))
        }
        None => {
            let all = corpus::NAMES
                .iter()
                .map(|&n| entry(n, if n == "ctype2" { &[1, 2, -3, 0] } else { &[] }))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((Value::Array(all), 0))
        }
    }
}

fn probe(cfg: &RunConfig, args: &ProbeArgs) -> Outcome {
    let v = Invariant::by_name(&args.invariant)?;
    let k = args.n as usize + 1;
    let (mut sampler, trials): (Box<dyn SingularSampler>, usize) = match (args.family, &args.params) {
        (Family::Ctype2, Some(p)) => {
            let (_, params) = parse_corpus_spec(&format!("ctype2:{p}"))?;
            (
                Box::new(FixedSampler::new(vec![corpus::build("ctype2", &params)?])),
                1,
            )
        }
        (Family::Ctype2, None) => (Box::new(Ctype2Sampler::new(cfg.seed, 3)), cfg.trials),
        (Family::Random, Some(_)) => return Err(usage("--params applies to --family ctype2 only")),
        (Family::Random, None) => {
            let m = args.components;
            let braids = BraidSampler::new(cfg.seed)
                .strands(m.max(2)..=m + 2)
                .components(m..=m)
                .length(k..=k + 8);
            (
                Box::new(SingularBraidSampler::new(braids, k, DoublePoints::SelfOnly)),
                cfg.trials,
            )
        }
    };
    let report = colored_vanishing_probe(&v, args.n, sampler.as_mut(), trials)?;
    let refuted = report.verdict == Verdict::Refuted;
    Ok((
        json!({
            "invariant": v.name,
            "n": args.n,
            "trials": report.trials,
            "seed": cfg.seed,
            "verdict": report.verdict,
            "witnesses": report.failures.iter().map(|w| w.pd.clone()).collect::<Vec<_>>(),
            "values": report.failures.iter().map(|w| int(&w.value)).collect::<Vec<_>>(),
        }),
        u8::from(refuted),
    ))
}

fn jump_report(d: &SingularLinkDiagram) -> Result<Value, InputError> {
    let (law, r) = match d.component_count() {
        2 => ("alpha1", alpha1_jump_check(d)?),
        3 => ("gamma", gamma_jump_check(d)?),
        m => return Err(usage(format!("jump laws need 2 or 3 components, found {m}"))),
    };
    Ok(
        json!({ "law": law, "pd": d.to_pd(), "jump": int(&r.jump), "predicted": int(&r.predicted), "holds": r.holds }),
    )
}

fn jumps(cfg: &RunConfig) -> Outcome {
    if let Some(d) = diagram(cfg)? {
        let report = jump_report(&d)?;
        let code = u8::from(report["holds"] != Value::Bool(true));
        return Ok((report, code));
    }
    let mut laws = serde_json::Map::new();
    let mut all = true;
    for (m, law) in [(2usize, "alpha1"), (3, "gamma")] {
        let braids = BraidSampler::new(cfg.seed.wrapping_add(m as u64))
            .strands(m.max(3)..=4)
            .components(m..=m)
            .length(12..=24);
        let mut s = SingularBraidSampler::new(braids, 1, DoublePoints::OnComponent(0));
        let mut failures = Vec::new();
        for _ in 0..cfg.trials {
            let d = s.sample()?;
            let r = jump_report(&d)?;
            if r["holds"] != Value::Bool(true) {
                failures.push(r);
            }
        }
        all &= failures.is_empty();
        laws.insert(
            law.into(),
            json!({ "instances": cfg.trials, "failures": failures }),
        );
    }
    laws.insert("seed".into(), json!(cfg.seed));
    laws.insert("holds".into(), json!(all));
    Ok((Value::Object(laws), u8::from(!all)))
}

fn skein_failures(d: &SingularLinkDiagram) -> Result<Vec<usize>, InputError> {
    let here = conway(d)?;
    let mut failures = Vec::new();
    for x in 0..d.crossing_count() {
        let other = conway(&d.switch(x)?)?;
        let smooth = conway(&d.resolve(x, Resolution::Smooth)?)?.shift(1);
        let ok = match d.crossings()[x].kind {
            CrossingKind::Positive => here.clone() - other == smooth,
            _ => other - here.clone() == smooth,
        };
        if !ok {
            failures.push(x);
        }
    }
    Ok(failures)
}

fn skein(cfg: &RunConfig) -> Outcome {
    let diagrams = match diagram(cfg)? {
        Some(d) => vec![d],
        None => {
            let mut s = BraidSampler::new(cfg.seed);
            (0..cfg.trials).map(|_| s.diagram()).collect::<Result<_, _>>()?
        }
    };
    let mut crossings = 0;
    let mut failures = Vec::new();
    for d in &diagrams {
        crossings += d.crossing_count();
        for x in skein_failures(d)? {
            failures.push(json!({ "pd": d.to_pd(), "crossing": x }));
        }
    }
    let holds = failures.is_empty();
    Ok((
        json!({ "diagrams": diagrams.len(), "crossings": crossings, "failures": failures, "holds": holds }),
        u8::from(!holds),
    ))
}

fn leibniz(cfg: &RunConfig, args: &LeibnizArgs) -> Outcome {
    let u = Invariant::by_name(&args.u)?;
    let v = Invariant::by_name(&args.v)?;
    let diagrams = match diagram(cfg)? {
        Some(d) => vec![d],
        None => {
            let mut out = Vec::new();
            for k in 0..=3usize {
                let braids = BraidSampler::new(cfg.seed.wrapping_add(k as u64))
                    .components(2..=2)
                    .length(k.max(2)..=8);
                let mut s = SingularBraidSampler::new(braids, k, DoublePoints::Any);
                for _ in 0..cfg.trials.div_ceil(4) {
                    out.push(s.sample()?);
                }
            }
            out
        }
    };
    let mut failures = Vec::new();
    for d in &diagrams {
        if !leibniz_check(&u, &v, d)? {
            failures.push(d.to_pd());
        }
    }
    let holds = failures.is_empty();
    Ok((
        json!({ "u": u.name, "v": v.name, "diagrams": diagrams.len(), "failures": failures, "holds": holds }),
        u8::from(!holds),
    ))
}
