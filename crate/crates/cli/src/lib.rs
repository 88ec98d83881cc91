//! The `legtangle` command line tool.

pub mod render;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use legtangle::boxdot::{flyped_diagram, BoxDotTemplate, DiagramRecord};
use legtangle::classifier::{classify_pair, elliptic_profile_of, sigma, sigma_inf, EllipticProfile, Verdict};
use legtangle::invariants::{strandwise_invariants, tb_r, ClassicalInvariants, WritheConvention};
use legtangle::rational::{enumerate_flype_vectors, expand, flyped_notation, parse_flyped, parse_fraction};
use legtangle::subdivision::subdivide;
use legtangle::tangle::{build_unknot, connectivity_type, tangle_front, ConnectivityType, FrontProjection};
use legtangle::unknot::verify_unknot;
use legtangle::{Error, FlypeVector, Fraction, Result, TwistVector};

use crate::render::{render_boxdot, render_foliation_schematic, render_front, Layer, RenderOptions};
use crate::report::{Input, Report};

#[derive(Debug, Parser)]
#[command(name = "legtangle", version, about = "Regular Legendrian rational tangles and their box-dot diagrams")]
pub struct Cli {
    /// How inter-strand crossings enter strandwise writhe.
    #[arg(long, global = true, default_value = "self", value_parser = parse_convention)]
    pub strand_writhe: WritheConvention,

    /// Write output here instead of stdout (a directory for `render`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

fn parse_convention(s: &str) -> std::result::Result<WritheConvention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the regular continued fraction of P/Q.
    Cf { q: String },
    /// Box-dot diagram as JSON.
    Diagram { q: String, vector: Option<String> },
    /// Traced front projection as JSON.
    Tangle { q: String, vector: Option<String> },
    /// Strandwise invariants, elliptic profile, and the unknot K_q.
    Invariants { q: String, vector: Option<String> },
    /// Decide whether two flypes of the same tangle are isotopic.
    Classify { q: String, f: String, g: String },
    /// Classify every ordered pair of flype vectors of q, one JSON per line.
    Enumerate {
        q: String,
        /// Leave the evidence table out of each record.
        #[arg(long)]
        brief: bool,
    },
    /// Write SVG renderings.
    Render {
        q: String,
        vector: Option<String>,
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        #[arg(long, default_value = "subdivision,marks,signs,classes,tangle,unknot,foliation")]
        layers: String,
    },
}

/// A fraction with a flype vector checked against its expansion.
pub struct Resolved {
    pub q: Fraction,
    pub v: TwistVector,
    pub f: FlypeVector,
    pub notes: Vec<String>,
}

impl Resolved {
    pub fn notation(&self) -> String {
        flyped_notation(&self.v, &self.f)
    }
}

pub fn resolve(q: &str, vector: Option<&str>) -> Result<Resolved> {
    let parsed = parse_fraction(q)?;
    let mut notes = Vec::new();
    if let Some((p, d)) = parsed.reduced_from {
        notes.push(format!("{p}/{d} reduced to {}", parsed.value));
    }
    let v = expand(parsed.value).twist;
    let f = match vector {
        None => FlypeVector::zeros(v.len()),
        Some(text) => {
            let (w, f) = parse_flyped(text)?;
            if w != v {
                return Err(Error::InvalidVector {
                    token: text.trim().to_string(),
                    reason: format!("{} expands to {v}, not {w}", parsed.value),
                });
            }
            f.check_against(&v)?;
            let (f, dropped) = f.normalized();
            if dropped {
                notes.push(format!("f_{} ignored: the innermost twist cannot be flyped", v.len()));
            }
            f
        }
    };
    Ok(Resolved { q: parsed.value, v, f, notes })
}

#[derive(Serialize)]
struct DiagramBody {
    diagram: DiagramRecord,
}

#[derive(Serialize)]
struct TangleBody {
    vector: String,
    connectivity: ConnectivityType,
    front: FrontProjection,
}

#[derive(Serialize)]
struct UnknotSummary {
    crossings: usize,
    invariants: ClassicalInvariants,
    certificate_squares: usize,
    certificate_loops: usize,
}

#[derive(Serialize)]
struct InvariantsBody {
    vector: String,
    connectivity: ConnectivityType,
    sigma: u32,
    sigma_inf: u32,
    strandwise: Vec<ClassicalInvariants>,
    profile: EllipticProfile,
    unknot: UnknotSummary,
}

#[derive(Serialize)]
struct EnumerateRecord<'a> {
    f: String,
    g: String,
    outcome: legtangle::classifier::Outcome,
    rule: &'static str,
    witness: &'a legtangle::classifier::Witness,
    #[serde(skip_serializing_if = "Option::is_none")]
    evidence: Option<&'a legtangle::classifier::Evidence>,
}

fn input(q: &str, f: Option<&str>, g: Option<&str>) -> Input {
    Input { q: q.to_string(), f: f.map(str::to_string), g: g.map(str::to_string) }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

/// Failure of a command: bad input or a broken invariant.
pub enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() { Failure::Internal(e.to_string()) } else { Failure::Input(e.to_string()) }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn file_stem(r: &Resolved) -> String {
    let exps: String = r.f.notation_order().iter().map(|e| e.to_string()).collect::<Vec<_>>().join("-");
    format!("{}_{}-f{}", r.q.numer(), r.q.denom(), exps)
}

fn write_file(dir: &Path, name: &str, text: &str) -> std::io::Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, text)?;
    Ok(path)
}

pub fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let conv = cli.strand_writhe;
    match &cli.command {
        Command::Cf { q } => {
            let r = resolve(q, None)?;
            for n in &r.notes {
                eprintln!("note: {n}");
            }
            emit(&cli.out, &format!("{}\n", r.v))?;
        }
        Command::Diagram { q, vector } => {
            let r = resolve(q, vector.as_deref())?;
            let d = flyped_diagram(r.q, &r.f)?;
            let body = DiagramBody { diagram: DiagramRecord::new(&d) };
            emit(&cli.out, &Report::new(conv, input(q, vector.as_deref(), None), r.notes, body).to_json())?;
        }
        Command::Tangle { q, vector } => {
            let r = resolve(q, vector.as_deref())?;
            let fp = tangle_front(&flyped_diagram(r.q, &r.f)?)?;
            let body = TangleBody { vector: r.notation(), connectivity: fp.traced_connectivity()?, front: fp };
            emit(&cli.out, &Report::new(conv, input(q, vector.as_deref(), None), r.notes, body).to_json())?;
        }
        Command::Invariants { q, vector } => {
            let r = resolve(q, vector.as_deref())?;
            let d = flyped_diagram(r.q, &r.f)?;
            let fp = tangle_front(&d)?;
            let k = build_unknot(&BoxDotTemplate::new(r.q));
            let cert = verify_unknot(&k, &subdivide(r.q, &FlypeVector::zeros(r.v.len()))?)?;
            let body = InvariantsBody {
                vector: r.notation(),
                connectivity: connectivity_type(r.q),
                sigma: sigma(&r.v, &r.f)?,
                sigma_inf: sigma_inf(&r.v, &r.f)?,
                strandwise: strandwise_invariants(&fp, conv)?,
                profile: elliptic_profile_of(&d, &fp)?,
                unknot: UnknotSummary {
                    crossings: k.crossings.len(),
                    invariants: tb_r(&k)?,
                    certificate_squares: cert.squares.len(),
                    certificate_loops: cert.steps().count(),
                },
            };
            emit(&cli.out, &Report::new(conv, input(q, vector.as_deref(), None), r.notes, body).to_json())?;
        }
        Command::Classify { q, f, g } => {
            let a = resolve(q, Some(f))?;
            let b = resolve(q, Some(g))?;
            let mut notes = a.notes.clone();
            notes.extend(b.notes.iter().filter(|n| !a.notes.contains(n)).cloned());
            let verdict: Verdict = classify_pair(a.q, &a.f, &b.f, conv)?;
            emit(&cli.out, &Report::new(conv, input(q, Some(f), Some(g)), notes, verdict).to_json())?;
        }
        Command::Enumerate { q, brief } => {
            let r = resolve(q, None)?;
            let all = enumerate_flype_vectors(&r.v)?;
            let pairs: Vec<(&FlypeVector, &FlypeVector)> = all.iter().flat_map(|f| all.iter().map(move |g| (f, g))).collect();
            let lines: Vec<Result<String>> = pairs
                .par_iter()
                .map(|(f, g)| {
                    let v = classify_pair(r.q, f, g, conv)?;
                    let rec = EnumerateRecord {
                        f: flyped_notation(&r.v, f),
                        g: flyped_notation(&r.v, g),
                        outcome: v.outcome,
                        rule: v.rule,
                        witness: &v.witness,
                        evidence: (!brief).then_some(&v.evidence),
                    };
                    Ok(serde_json::to_string(&rec).expect("records serialize"))
                })
                .collect();
            let mut text = String::new();
            for line in lines {
                text.push_str(&line?);
                text.push('\n');
            }
            emit(&cli.out, &text)?;
        }
        Command::Render { q, vector, scale, layers } => {
            let r = resolve(q, vector.as_deref())?;
            let o = RenderOptions::new(*scale, RenderOptions::parse_layers(layers)?)?;
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            fs::create_dir_all(&dir)?;
            let stem = file_stem(&r);
            let d = flyped_diagram(r.q, &r.f)?;
            let mut written = Vec::new();
            if o.layers().any(|l| l.is_boxdot()) {
                written.push(write_file(&dir, &format!("{stem}-boxdot.svg"), &render_boxdot(&d, &o))?);
            }
            if o.has(Layer::Tangle) {
                written.push(write_file(&dir, &format!("{stem}-tangle.svg"), &render_front(&tangle_front(&d)?, &o))?);
            }
            if o.has(Layer::Unknot) {
                let k = build_unknot(d.template());
                written.push(write_file(&dir, &format!("{}_{}-unknot.svg", r.q.numer(), r.q.denom()), &render_front(&k, &o))?);
            }
            if o.has(Layer::Foliation) {
                written.push(write_file(&dir, &format!("{stem}-foliation.svg"), &render_foliation_schematic(&d, &o))?);
            }
            for p in written {
                println!("{}", p.display());
            }
        }
    }
    Ok(())
}
