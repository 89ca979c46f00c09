use std::fmt::Write as _;
use std::fs;

use gmn_shuffle::algebra::{spectral_report, verify_identities};
use gmn_shuffle::group::{format_letters, schreier_graph, Group, GroupElement, GroupParams, NormalFormer};
use gmn_shuffle::hecke::{check_classical, check_conjecture, HeckeParams};
use gmn_shuffle::markov::{exact_distribution, simulate, tv_curve_for, TransitionMatrix, EXACT_LIMIT};
use gmn_shuffle::words::{GeneratorWord, Rewriter};
use gmn_shuffle::{Error, Result};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use crate::{Cli, Command, Format, GroupArgs, GroupCommand, HeckeArgs, MixingArgs, Outcome};

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Group(cmd) => group(cli, cmd),
        Command::Spectrum(args) => spectrum(cli, *args),
        Command::Identities(args) => identities(cli, *args),
        Command::Mixing(args) => mixing(cli, args),
        Command::Hecke(args) => hecke(cli, args),
    }
}

fn params(args: GroupArgs) -> Result<GroupParams> {
    GroupParams::new(args.m, args.n)
}

/// The requested format, or `default` when none was given; anything outside
/// `allowed` is a usage error.
fn format(cli: &Cli, default: Option<Format>, allowed: &[Format]) -> Result<Option<Format>> {
    match cli.format {
        None => Ok(default),
        Some(f) if allowed.contains(&f) => Ok(Some(f)),
        Some(f) => Err(Error::InvalidParams(format!(
            "format {f:?} is not available for this command"
        ))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, passed: true })
}

fn group(cli: &Cli, cmd: &GroupCommand) -> Result<Outcome> {
    match cmd {
        GroupCommand::Order(args) => {
            let p = params(*args)?;
            let order = p.order().map(|o| o.to_string()).unwrap_or_else(|| "overflow".into());
            match format(cli, None, &[Format::Json])? {
                Some(_) => ok(to_json(&json!({"m": p.m(), "n": p.n(), "order": order}))),
                None => ok(format!("{order}\n")),
            }
        }
        GroupCommand::Enumerate(args) => enumerate(cli, params(*args)?),
        GroupCommand::NormalForm { group, word } => normal_form_cmd(cli, params(*group)?, word),
        GroupCommand::Schreier(args) => schreier(cli, params(*args)?),
    }
}

fn enumerate(cli: &Cli, p: GroupParams) -> Result<Outcome> {
    let fmt = format(cli, Some(Format::Json), &[Format::Json, Format::Csv])?;
    let group = Group::new(p, cli.cap)?;
    let former = NormalFormer::new(p);
    let rows: Vec<_> = group
        .elements()
        .iter()
        .enumerate()
        .map(|(i, g)| (i, g.to_record(), former.normal_form(g).to_string()))
        .collect();
    if fmt == Some(Format::Csv) {
        let mut out = String::from("index,images,rotations,normal_form\n");
        for (i, rec, nf) in rows {
            let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let _ = writeln!(out, "{i},{},{},{nf}", join(&rec.images), join(&rec.rotations));
        }
        return ok(out);
    }
    let elements: Vec<_> = rows
        .into_iter()
        .map(|(i, rec, nf)| json!({"index": i, "images": rec.images, "rotations": rec.rotations, "normal_form": nf}))
        .collect();
    ok(to_json(&json!({"m": p.m(), "n": p.n(), "order": elements.len(), "elements": elements})))
}

fn normal_form_cmd(cli: &Cli, p: GroupParams, text: &str) -> Result<Outcome> {
    let fmt = format(cli, None, &[Format::Json])?;
    let word = GeneratorWord::parse(text, p)?;
    let element = word.evaluate();
    let structural = NormalFormer::new(p).normal_form(&element);
    let rewritten = Rewriter::new(p)?.rewrite_with(&word, gmn_shuffle::words::Strategy::Leftmost)?;
    let agree = rewritten.word.letters() == structural.to_letters().as_slice();
    if !agree {
        return Err(Error::RouteMismatch(format!(
            "rewriting gave `{}`, the structural normal form is `{structural}`",
            rewritten.word
        )));
    }
    match fmt {
        Some(_) => ok(to_json(&json!({
            "m": p.m(),
            "n": p.n(),
            "input": text,
            "normal_form": structural.to_string(),
            "letters": format_letters(&structural.to_letters()),
            "levels": structural.levels(),
            "rewrite_steps": rewritten.steps,
            "element": element.to_record(),
        }))),
        None => ok(format!("{structural}\n")),
    }
}

fn schreier(cli: &Cli, p: GroupParams) -> Result<Outcome> {
    let fmt = format(cli, Some(Format::Dot), &[Format::Dot, Format::Json])?;
    let graph = schreier_graph(p)?;
    if fmt == Some(Format::Dot) {
        return ok(graph.to_dot());
    }
    let shape = graph.shape();
    let vertices: Vec<_> = graph
        .vertices()
        .iter()
        .map(|c| json!({"position": c.position, "rotation": c.rotation}))
        .collect();
    let edges: Vec<_> = graph
        .edges()
        .iter()
        .map(|e| json!({"from": e.from, "label": e.label.to_string(), "to": e.to}))
        .collect();
    let tails: Vec<Vec<String>> = shape
        .tails
        .iter()
        .map(|t| t.iter().map(|g| g.to_string()).collect())
        .collect();
    ok(to_json(&json!({
        "m": p.m(),
        "n": p.n(),
        "vertices": vertices,
        "edges": edges,
        "shape": {"polygon": shape.polygon, "t_cycle": shape.t_cycle, "tails": tails, "ok": shape.ok},
    })))
}

fn spectrum(cli: &Cli, args: GroupArgs) -> Result<Outcome> {
    let fmt = format(cli, Some(Format::Json), &[Format::Json, Format::Csv])?;
    let report = spectral_report(params(args)?, cli.cap)?;
    let c = &report.checks;
    let passed = c.routes_agree && c.census_agrees && c.sum_is_order && c.trace_matches && c.minimal_polynomial;
    let text = if fmt == Some(Format::Csv) {
        let mut out = String::from("i,eigenvalue,multiplicity,derangements\n");
        for i in 0..report.eigenvalues.len() {
            let _ = writeln!(
                out,
                "{i},{},{},{}",
                report.eigenvalues[i], report.multiplicities[i], report.derangements[i]
            );
        }
        out
    } else {
        to_json(&report)
    };
    Ok(Outcome { text, passed })
}

fn identities(cli: &Cli, args: GroupArgs) -> Result<Outcome> {
    format(cli, Some(Format::Json), &[Format::Json])?;
    let report = verify_identities(params(args)?, cli.cap)?;
    let mut value = serde_json::to_value(&report).expect("serializable");
    value["all_pass"] = json!(report.all_pass());
    Ok(Outcome {
        text: to_json(&value),
        passed: report.all_pass(),
    })
}

fn mixing(cli: &Cli, args: &MixingArgs) -> Result<Outcome> {
    let fmt = format(cli, Some(Format::Csv), &[Format::Csv, Format::Json])?;
    let p = GroupParams::new(args.m, args.n)?;
    let chain = TransitionMatrix::new(p, cli.cap)?;
    let start = GroupElement::identity(p);
    let curve = tv_curve_for(&chain, args.steps, &start)?;

    let simulation = if args.simulate {
        let sim = simulate(&chain, args.steps, args.trials, args.seed, &start)?;
        let tv_to_exact = (chain.size() <= EXACT_LIMIT).then(|| {
            let law: Vec<f64> = exact_distribution(&chain, args.steps, &start)
                .iter()
                .map(|x| x.to_f64().unwrap_or(f64::NAN))
                .collect();
            sim.tv_to(&law)
        });
        Some(json!({
            "k": sim.k,
            "trials": sim.trials,
            "seed": sim.seed,
            "tv_to_exact": tv_to_exact,
            "tv_to_uniform": sim.tv_to_uniform(),
        }))
    } else {
        None
    };
    let summary = json!({
        "m": curve.m,
        "n": curve.n,
        "steps": args.steps,
        "exact": curve.exact,
        "lambda2": curve.lambda2.as_ref().map(|x| x.to_string()),
        "alpha_star": curve.alpha_star,
        "alpha_star_tv": curve.alpha_star_tv,
        "monotone": curve.is_monotone(),
        "deviation_bounded": curve.deviation_bounded(),
        "simulation": simulation,
    });

    if fmt == Some(Format::Json) {
        let mut value = serde_json::to_value(&curve).expect("serializable");
        value["summary"] = summary;
        return ok(to_json(&value));
    }
    let mut csv = String::from("k,tv,max_deviation,bound\n");
    for pt in &curve.points {
        let bound = pt.bound.as_ref().map(|b| b.to_string()).unwrap_or_default();
        let _ = writeln!(csv, "{},{},{},{bound}", pt.k, pt.tv, pt.max_deviation);
    }
    let summary_text = to_json(&summary);
    match &args.summary {
        Some(path) => fs::write(path, summary_text).map_err(|e| Error::InvalidParams(format!("cannot write summary: {e}")))?,
        None => eprint!("{summary_text}"),
    }
    ok(csv)
}

fn hecke(cli: &Cli, args: &HeckeArgs) -> Result<Outcome> {
    format(cli, Some(Format::Json), &[Format::Json])?;
    let max_n = max_hecke_n(args.max_n, cli.cap);
    match HeckeParams::new(args.n, args.q, args.p) {
        Ok(hp) => {
            let report = check_conjecture(hp, max_n)?;
            Ok(Outcome {
                passed: report.verdicts.annihilation && report.verdicts.attainment,
                text: to_json(&report),
            })
        }
        Err(Error::NonGeneric(_)) if args.allow_classical && args.q == 1.0 && args.p == 1.0 => {
            let report = check_classical(args.n, max_n)?;
            Ok(Outcome {
                passed: report.matches_group && report.multiplicities_match,
                text: to_json(&json!({"mode": "classical", "report": report})),
            })
        }
        Err(e) => Err(e),
    }
}

/// The smaller of `max_n` and the largest `n` with `2^n·n! ≤ cap`.
fn max_hecke_n(max_n: usize, cap: u128) -> usize {
    let mut n = 0;
    let mut dim: u128 = 1;
    while n < max_n {
        dim *= 2 * (n as u128 + 1);
        if dim > cap {
            break;
        }
        n += 1;
    }
    n
}
