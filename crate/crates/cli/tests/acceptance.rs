//! Acceptance run: one PASS/FAIL line per criterion, with its runtime bound.
//! Everything here is exact integer arithmetic, so there are no tolerances.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use legtangle::boxdot::flyped_diagram;
use legtangle::classifier::{classify_pair, elliptic_profile_of, justifications, sigma, BijectionCheck, CardinalityCheck, Outcome, Rule};
use legtangle::invariants::{strandwise_invariants, ClassicalInvariants, WritheConvention};
use legtangle::rational::{cf_value, enumerate_flype_vectors, parse_flyped, regular_cf, regular_vectors};
use legtangle::subdivision::{subdivide, Square};
use legtangle::tangle::{build_unknot, connectivity_type, subtangle_connectivity, tangle_front, ConnectivityType, FrontProjection};
use legtangle::unknot::{check_unlink, square_unlink, unlink_pattern, verify_unknot};
use legtangle::{FlypeVector, Fraction, HalfPoint, TwistVector};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn reduced(limit: u64) -> Vec<Fraction> {
    let mut out = Vec::new();
    for p in 1..=limit {
        for q in (1..=limit).filter(|&q| gcd(p, q) == 1) {
            out.push(Fraction::new(p, q).unwrap());
        }
    }
    out
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Euclid by hand, notation order.
fn euclid(mut p: u64, mut q: u64) -> Vec<u32> {
    let mut stages = Vec::new();
    while q != 0 {
        stages.push((p / q) as u32);
        (p, q) = (q, p % q);
    }
    stages.reverse();
    stages
}

fn continued_fractions() -> Check {
    let all = reduced(200);
    for &q in &all {
        let v = regular_cf(q);
        ensure(v.is_regular(), || format!("{q} gives irregular {v}"))?;
        ensure(cf_value(&v).map_err(err)? == q, || format!("{q} does not round-trip"))?;
        let want = euclid(q.numer(), q.denom());
        ensure(v.notation_order() == want, || format!("{q}: {v} but Euclid gives {want:?}"))?;
    }
    for (q, want) in [((5, 3), "(2,1,1)"), ((37, 26), "(3,1,2,2,1)")] {
        let got = regular_cf(Fraction::new(q.0, q.1).unwrap()).to_string();
        ensure(got == want, || format!("{}/{} gave {got}", q.0, q.1))?;
    }
    Ok(format!("{} fractions", all.len()))
}

fn counts() -> Check {
    let all = reduced(50);
    let total: usize = all
        .par_iter()
        .map(|&q| {
            let v = regular_cf(q);
            let fs = enumerate_flype_vectors(&v).map_err(err)?;
            let product: usize = (1..v.len()).map(|j| v.q(j) as usize + 1).product();
            ensure(fs.len() == product, || format!("{q}: {} diagrams, expected {product}", fs.len()))?;
            for f in &fs {
                let d = flyped_diagram(q, f).map_err(err)?;
                let (dots, boxes) = (d.dots().count() as u64, d.boxes().count() as u64);
                ensure((dots, boxes) == (q.numer() - 1, q.denom() - 1), || format!("{q} f={f}: {dots} dots, {boxes} boxes"))?;
            }
            Ok(fs.len())
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!("{total} diagrams over {} fractions", all.len()))
}

/// Writhe and cusp directions read straight off arc geometry.
fn front_tb_r(fp: &FrontProjection) -> (i64, i64, i64, i64, i64) {
    let mut w = 0;
    for c in &fp.crossings {
        let (o, u) = (fp.arcs[c.over].direction(), fp.arcs[c.under].direction());
        w += (o.0 * u.1 - o.1 * u.0).signum();
    }
    let (mut down, mut up) = (0, 0);
    for j in fp.cusps() {
        let incoming = j.arcs.iter().map(|&a| &fp.arcs[a]).find(|a| a.to == j.point).unwrap();
        if incoming.direction().1 < 0 { down += 1 } else { up += 1 }
    }
    // doubled tb and r
    (2 * w - (down + up), down - up, w, down, up)
}

fn unknot_invariants() -> Check {
    let all = reduced(50);
    all.par_iter()
        .map(|&q| {
            let k = build_unknot(&legtangle::boxdot::BoxDotTemplate::new(q));
            let (p, qq) = (q.numer() as i64, q.denom() as i64);
            let (tb2, r2, w, down, up) = front_tb_r(&k);
            let want_r = if p % 2 == 0 { 1 } else { 0 };
            ensure(tb2 == -2 * p && r2.abs() == 2 * want_r, || format!("{q}: tb={} r={}", tb2 as f64 / 2.0, r2 as f64 / 2.0))?;
            let (dc, uc) = if p % 2 == 0 { (qq + 1, qq - 1) } else { (qq, qq) };
            ensure((down, up) == (dc, uc), || format!("{q}: D={down} U={up}"))?;
            let boxes = k.crossings.iter().filter(|c| c.point.x2 % 2 != 0).count() as i64;
            let dots = k.crossings.len() as i64 - boxes;
            ensure((boxes, dots) == (p * (qq - 1), qq * (p - 1)), || format!("{q}: crossing tallies {boxes},{dots}"))?;
            ensure(w == qq - p, || format!("{q}: writhe {w}"))?;
            let lib = legtangle::invariants::tb_r(&k).map_err(err)?;
            ensure(lib.tb.doubled() == tb2 && lib.r.doubled() == r2, || format!("{q}: library disagrees"))?;
            Ok(())
        })
        .collect::<Result<Vec<()>, String>>()?;
    Ok(format!("{} fractions", all.len()))
}

fn unknot_certificates() -> Check {
    let all = reduced(30);
    let loops: usize = all
        .par_iter()
        .map(|&q| {
            let n = regular_cf(q).len();
            let k = build_unknot(&legtangle::boxdot::BoxDotTemplate::new(q));
            let cert = verify_unknot(&k, &subdivide(q, &FlypeVector::zeros(n)).map_err(err)?).map_err(|e| format!("{q}: {e}"))?;
            Ok(cert.steps().count())
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    let origin = HalfPoint::doubled(0, 0);
    let u5 = square_unlink(5, origin);
    ensure(u5.len() == 5, || format!("U_5 has {} loops", u5.len()))?;
    let square = Square { x: 0, z: 0, size: 5, stage: 1 };
    check_unlink(&square, &u5, &unlink_pattern(5, origin)).map_err(err)?;
    Ok(format!("{} fractions, {loops} loops removed; U_5 splits into 5 loops", all.len()))
}

fn connectivity() -> Check {
    let all = reduced(50);
    let total: usize = all
        .par_iter()
        .map(|&q| {
            let want = match (q.numer() % 2, q.denom() % 2) {
                (0, _) => ConnectivityType::Zero,
                (_, 0) => ConnectivityType::Infinity,
                _ => ConnectivityType::One,
            };
            ensure(connectivity_type(q) == want, || format!("{q}: parity rule"))?;
            let fs = enumerate_flype_vectors(&regular_cf(q)).map_err(err)?;
            for f in &fs {
                let got = tangle_front(&flyped_diagram(q, f).map_err(err)?).map_err(err)?.traced_connectivity().map_err(err)?;
                ensure(got == want, || format!("{q} f={f}: traced {got:?}, parity says {want:?}"))?;
            }
            Ok(fs.len())
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!("{total} fronts, 0 exceptions"))
}

struct Data {
    sizes: (i64, i64),
    shared_pairs: Vec<(usize, usize)>,
    shared_start: Option<usize>,
    tb_r: Vec<(i64, i64)>,
}

fn data(q: Fraction, f: &FlypeVector) -> Result<Data, String> {
    let d = flyped_diagram(q, f).map_err(err)?;
    let fp = tangle_front(&d).map_err(err)?;
    let p = elliptic_profile_of(&d, &fp).map_err(err)?;
    let (a, b) = p.cardinalities();
    let strandwise = strandwise_invariants(&fp, WritheConvention::SelfOnly).map_err(err)?;
    let tb_r = strandwise.iter().map(|i| (i.tb.doubled(), i.r.doubled())).collect();
    Ok(Data { sizes: (a as i64, b as i64), shared_pairs: p.shared_index_pairs(), shared_start: p.shared_start(), tb_r })
}

fn flype_laws() -> Check {
    let vectors = regular_vectors(8);
    let counts = vectors
        .par_iter()
        .map(|v: &TwistVector| {
            let q = cf_value(v).map_err(err)?;
            let n = v.len();
            let (mut inf, mut shift, mut vertical) = (0usize, 0usize, 0usize);
            for f in enumerate_flype_vectors(v).map_err(err)? {
                let here = data(q, &f)?;
                for j in 1..n {
                    if f.f(j) == v.q(j) {
                        continue;
                    }
                    let mut g = f.clone();
                    g.set(j, f.f(j) + 1);
                    let there = data(q, &g)?;
                    let tag = || format!("{v} f={f} j={j}");
                    if j % 2 == 1 {
                        let delta = (there.sizes.0 - here.sizes.0, there.sizes.1 - here.sizes.1);
                        if subtangle_connectivity(v, j).map_err(err)? == ConnectivityType::Infinity {
                            ensure(delta == (2, -2), || format!("{}: cardinalities moved by {delta:?}", tag()))?;
                            inf += 1;
                        }
                        if n % 2 == 1 {
                            let (a, b) = (here.shared_start, there.shared_start);
                            ensure(a.zip(b).is_some_and(|(a, b)| b == a + 1), || format!("{}: shared block {a:?} -> {b:?}", tag()))?;
                            shift += 1;
                        }
                    } else {
                        ensure(here.sizes == there.sizes && here.shared_pairs == there.shared_pairs, || format!("{}: profile changed", tag()))?;
                        ensure(here.tb_r == there.tb_r, || format!("{}: strandwise invariants changed", tag()))?;
                        vertical += 1;
                    }
                }
                if n % 2 == 1 {
                    let s = sigma(v, &f).map_err(err)? as usize;
                    let want: Vec<usize> = (s..s + v.q(n) as usize - 1).collect();
                    let firsts: Vec<usize> = here.shared_pairs.iter().map(|p| p.0).collect();
                    ensure(firsts == want, || format!("{v} f={f}: shared E1 indices {firsts:?}, sigma {s}"))?;
                }
            }
            Ok((inf, shift, vertical))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let (inf, shift, vertical) = counts.iter().fold((0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    Ok(format!("{} vectors: {inf} infinity flypes, {shift} shared shifts, {vertical} vertical flypes", vectors.len()))
}

fn fixture_matrix() -> Check {
    let conv = WritheConvention::SelfOnly;
    let load = |a: &str, b: &str| -> Result<(Fraction, FlypeVector, FlypeVector), String> {
        let (v, f) = parse_flyped(a).map_err(err)?;
        let (w, g) = parse_flyped(b).map_err(err)?;
        ensure(v == w, || format!("{a} and {b} differ"))?;
        Ok((cf_value(&v).map_err(err)?, f, g))
    };

    let (q, f, g) = load("(2,1,1^1,2,1)", "(2,1,1,2,1^1)")?;
    let v = classify_pair(q, &f, &g, conv).map_err(err)?;
    ensure(v.outcome == Outcome::NotIsotopic && v.rule == "strandwise-invariants", || format!("first pair: {:?} {}", v.outcome, v.rule))?;
    ensure(v.evidence.cardinality == CardinalityCheck::Pass, || "first pair: cardinality fails".into())?;
    ensure(v.evidence.bijection == BijectionCheck::Consistent, || "first pair: bijection fails".into())?;

    let (q, f, g) = load("(3,1,1^1,2,1)", "(3,1,1,2,1^1)")?;
    let (fired, _) = justifications(q, &f, &g, conv).map_err(err)?;
    let rules: Vec<Rule> = fired.iter().map(|r| r.0).collect();
    ensure(rules == [Rule::StrandwiseInvariants], || format!("second pair fired {rules:?}"))?;

    let (q, f, g) = load("(2,1,2^1,1,1)", "(2,1,2,1,1^1)")?;
    let v = classify_pair(q, &f, &g, conv).map_err(err)?;
    ensure(v.outcome == Outcome::NotIsotopic && v.rule == "ordered-bijection", || format!("third pair: {:?} {}", v.outcome, v.rule))?;
    let zero = |s: &[ClassicalInvariants]| s.iter().all(|i| i.tb.doubled() == 0 && i.r.doubled() == 0);
    ensure(zero(&v.evidence.left.strandwise) && zero(&v.evidence.right.strandwise), || "third pair: strandwise not zero".into())?;

    let (q, f, g) = load("(2,1,2^2,2,2)", "(2,1,2,2,2^2)")?;
    let v = classify_pair(q, &f, &g, conv).map_err(err)?;
    ensure(v.outcome == Outcome::Unknown, || format!("fourth pair: {:?} {}", v.outcome, v.rule))?;
    Ok("4 pairs match".into())
}

fn soundness() -> Check {
    let vectors = regular_vectors(8);
    let pairs: usize = vectors
        .par_iter()
        .map(|v| {
            let q = cf_value(v).map_err(err)?;
            let fs = enumerate_flype_vectors(v).map_err(err)?;
            for f in &fs {
                for g in &fs {
                    let (fired, _) = justifications(q, f, g, WritheConvention::SelfOnly).map_err(err)?;
                    let iso = fired.iter().any(|r| r.0.outcome() == Outcome::Isotopic);
                    let not = fired.iter().any(|r| r.0.outcome() == Outcome::NotIsotopic);
                    ensure(!(iso && not), || format!("{v}: {f} vs {g} fired {:?}", fired.iter().map(|r| r.0).collect::<Vec<_>>()))?;
                    let a = &fired[0];
                    let (back, _) = justifications(q, g, f, WritheConvention::SelfOnly).map_err(err)?;
                    ensure(back[0].0 == a.0, || format!("{v}: {f} vs {g} is asymmetric"))?;
                }
            }
            Ok(fs.len() * fs.len())
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!("{pairs} ordered pairs over {} vectors", vectors.len()))
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_legtangle")).args(args).output().map_err(err)?;
    ensure(out.status.success(), || format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok(out.stdout)
}

fn determinism() -> Check {
    let runs: &[&[&str]] = &[
        &["cf", "37/26"],
        &["diagram", "5/3", "(2,1,1^1)"],
        &["tangle", "37/26", "(3,1,2^1,2,1^1)"],
        &["invariants", "37/26"],
        &["--strand-writhe", "half-mixed", "invariants", "12/7"],
        &["classify", "25/18", "(3,1,1^1,2,1)", "(3,1,1,2,1^1)"],
        &["enumerate", "37/26"],
    ];
    for args in runs {
        let (a, b) = (cli(args)?, cli(args)?);
        ensure(a == b, || format!("{args:?} differs between runs"))?;
    }
    let dirs = [tempfile::tempdir().map_err(err)?, tempfile::tempdir().map_err(err)?];
    let mut files = Vec::new();
    for d in &dirs {
        let path = d.path().to_str().unwrap();
        cli(&["--out", path, "render", "37/26", "(3,1,2^1,2,1^1)"])?;
        let mut names: Vec<_> = std::fs::read_dir(d.path()).map_err(err)?.map(|e| e.unwrap().path()).collect();
        names.sort();
        let contents: Vec<(String, Vec<u8>)> =
            names.iter().map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(p).unwrap())).collect();
        files.push(contents);
    }
    ensure(files[0].len() == 4, || format!("render wrote {} files", files[0].len()))?;
    ensure(files[0] == files[1], || "SVG output differs between runs".into())?;
    Ok(format!("{} commands and 4 SVGs byte-identical", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("continued fractions round-trip", Duration::from_secs(1), continued_fractions),
        ("mark and diagram counts", Duration::from_secs(30), counts),
        ("unknot tb and r", Duration::from_secs(30), unknot_invariants),
        ("unknot certificates", Duration::from_secs(60), unknot_certificates),
        ("traced connectivity", Duration::from_secs(60), connectivity),
        ("flype laws", Duration::from_secs(120), flype_laws),
        ("fixture matrix", Duration::from_secs(10), fixture_matrix),
        ("classifier soundness", Duration::from_secs(300), soundness),
        ("cli determinism", Duration::from_secs(60), determinism),
    ];
    let mut failed = 0;
    for (k, (name, bound, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if took <= *bound => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the time bound")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {} {name} [{:.2}s / {}s] {detail}", k + 1, took.as_secs_f64(), bound.as_secs());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
