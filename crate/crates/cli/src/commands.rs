//! The six subcommands. Each returns `Ok(())` or a [`Failure`] carrying
//! the process exit code:
//!
//! - 0: success
//! - 1: certificate verification failed
//! - 2: input has a directed cycle of length at most m
//! - 3: unreadable or malformed input / report
//! - 4: m below 4
//! - 5: graph too large for the exact solver
//! - 64: usage error (bad parameters, missing report fields)

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use mfas_core::digraph::Digraph;
use mfas_core::error::Error;
use mfas_core::exact;
use mfas_core::gen::{self, GenSpec};
use mfas_core::layers;
use mfas_core::path_stats;
use mfas_core::solver::{self, Candidate, Side};

use crate::io::{self, ParsedInput};
use crate::report::Report;

pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub type CmdResult = Result<(), Failure>;

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn load_input(path: &Path) -> Result<ParsedInput, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(3, format!("cannot read {}: {e}", path.display())))?;
    io::parse_edge_list(&text).map_err(|e| fail(3, e.to_string()))
}

fn solve_error(e: Error) -> Failure {
    match e {
        Error::NotMFree(w) => fail(
            2,
            format!("input has a short directed cycle (length {}): {w}", w.len()),
        ),
        Error::UnsupportedM(m) => fail(4, format!("m = {m} is unsupported; need m >= 4")),
        other => fail(1, other.to_string()),
    }
}

fn emit_report(report: &Report, output: Option<&Path>, summary: String) -> CmdResult {
    match output {
        Some(path) => {
            std::fs::write(path, report.to_json())
                .map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))?;
            println!("{summary} -> {}", path.display());
        }
        None => print!("{}", report.to_json()),
    }
    Ok(())
}

pub fn cmd_solve(input: &Path, m: usize, output: Option<&Path>, timings: bool) -> CmdResult {
    let parsed = load_input(input)?;
    let g = parsed.graph;
    let started = Instant::now();
    let result = solver::solve(&g, m).map_err(solve_error)?;
    let elapsed = started.elapsed();
    let violations = solver::verify_certificate(&g, m, &result);
    let certificate_ok = violations.is_empty();
    if !certificate_ok {
        for v in &violations {
            eprintln!("{v}");
        }
        return Err(fail(1, "solver output failed its own certificate check"));
    }
    let mut report = Report::skeleton(&g).with_solve(m, &result, certificate_ok);
    report.generator = parsed.genspec;
    if timings {
        report.wall_time_ms = Some(elapsed.as_millis() as u64);
    }
    let summary = format!(
        "solve: n={} m={} fas_size={} bound={} certificate_ok={}",
        report.n,
        m,
        result.fas_size(),
        report.bound_value.unwrap(),
        certificate_ok
    );
    emit_report(&report, output, summary)
}

pub fn cmd_verify(input: &Path, m: usize, report_path: &Path) -> CmdResult {
    let parsed = load_input(input)?;
    let text = std::fs::read_to_string(report_path)
        .map_err(|e| fail(3, format!("cannot read {}: {e}", report_path.display())))?;
    let raw: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| fail(3, format!("malformed report: {e}")))?;
    if raw.get("trace").is_none_or(|t| t.is_null()) {
        return Err(fail(64, "report has no trace; nothing to verify"));
    }
    let report: Report =
        serde_json::from_value(raw).map_err(|e| fail(3, format!("malformed report: {e}")))?;
    let Some(result) = report.to_fas_result() else {
        return Err(fail(64, "report is missing solve fields (fas_edges or m)"));
    };
    let violations = solver::verify_certificate(&parsed.graph, m, &result);
    if violations.is_empty() {
        println!("certificate ok: (m-2)*{} <= {}", result.fas_size(), report.gamma);
        Ok(())
    } else {
        for v in &violations {
            println!("{v}");
        }
        Err(fail(1, format!("{} violation(s)", violations.len())))
    }
}

pub fn cmd_exact(input: &Path, output: Option<&Path>, guard: usize) -> CmdResult {
    let parsed = load_input(input)?;
    let g = parsed.graph;
    let cap = guard.min(exact::MAX_EXACT_VERTICES);
    if g.vertex_count() > cap {
        return Err(fail(
            5,
            format!(
                "graph too large for exact solve: n = {} exceeds guard {cap}",
                g.vertex_count()
            ),
        ));
    }
    let beta = exact::exact_fas_size(&g).map_err(|e| fail(5, e.to_string()))?;
    let witness = exact::exact_fas_edges(&g).map_err(|e| fail(5, e.to_string()))?;
    let mut report = Report::skeleton(&g);
    report.exact_beta = Some(beta);
    report.exact_edges = Some(witness);
    report.generator = parsed.genspec;
    let summary = format!("exact: n={} exact_beta={beta}", report.n);
    emit_report(&report, output, summary)
}

/// Enumeration guard for the exact-ratio columns of `stats`.
const STATS_ENUM_GUARD: usize = 16;

fn ratio_or_dash(num: u64, den: u64) -> String {
    if den == 0 {
        "-".into()
    } else {
        format!("{num}/{den}")
    }
}

pub fn cmd_stats(input: &Path, m: usize, vertex: Option<u32>) -> CmdResult {
    let parsed = load_input(input)?;
    let g = parsed.graph;
    if m < 4 {
        return Err(fail(4, format!("m = {m} is unsupported; need m >= 4")));
    }
    if let Err(w) = g.check_m_free(m) {
        return Err(fail(
            2,
            format!("input has a short directed cycle (length {}): {w}", w.len()),
        ));
    }
    if let Some(v) = vertex {
        if v as usize >= g.vertex_count() {
            return Err(fail(
                64,
                format!("vertex {v} out of range (n = {})", g.vertex_count()),
            ));
        }
    }
    println!(
        "# n={} edges={} m={} gamma={}",
        g.vertex_count(),
        g.edge_count(),
        m,
        g.gamma()
    );
    let (t, removed) = g.trim();
    println!("# trim removed {} vertices", removed.len());
    if t.vertex_count() == 0 {
        println!("# nothing remains after trimming");
        return Ok(());
    }
    if let Some(v) = vertex {
        if !t.labels().contains(&v) {
            println!("# vertex {v} was trimmed away; no rows");
            return Ok(());
        }
    }
    let stats = if t.vertex_count() <= STATS_ENUM_GUARD {
        Some(path_stats::triple_stats(&t, m).map_err(solve_error)?)
    } else {
        println!(
            "# n > {STATS_ENUM_GUARD}: exact s/t columns skipped (enumeration guard)"
        );
        None
    };
    let fmt_sizes = |dec: &layers::LayerDecomposition| -> String {
        let sizes: Vec<String> = (1..=m - 1)
            .map(|i| dec.layer(i).len().to_string())
            .collect();
        format!("[{}]", sizes.join(","))
    };
    for v in 0..t.vertex_count() as u32 {
        let label = t.label(v);
        if vertex.is_some_and(|want| want != label) {
            continue;
        }
        let out = layers::out_layers(&t, v, m - 1).unwrap();
        let inn = layers::in_layers(&t, v, m - 1).unwrap();
        for k in 1..=m - 3 {
            let p = layers::p_layer(&t, v, k).unwrap();
            let rp = layers::rprime_layer(&t, v, k).unwrap();
            let s_sur = layers::s_surrogate(&t, v, k, m).map_err(solve_error)?;
            let t_sur = layers::t_surrogate(&t, v, k, m).map_err(solve_error)?;
            let mut row = format!(
                "v={label} k={k} out={} in={} p={p} r'={rp} s_sur={s_sur} t_sur={t_sur}",
                fmt_sizes(&out),
                fmt_sizes(&inn)
            );
            if let Some(stats) = &stats {
                let s = stats.s_exact(v, k).unwrap();
                let tk = stats.t_exact(v, k).unwrap();
                row.push_str(&format!(
                    " s={s} t={tk} out_ratio={} in_ratio={}",
                    ratio_or_dash(p, s),
                    ratio_or_dash(rp, tk)
                ));
            }
            println!("{row}");
        }
    }
    match &stats {
        Some(stats) => match path_stats::min_exact_ratio_of(stats) {
            Ok((ratio, arg)) => println!(
                "min exact ratio = {ratio} at v={} k={} side={}",
                t.label(arg.v),
                arg.k,
                side_name(arg.side)
            ),
            Err(_) => println!("no defined exact ratio (every denominator is zero)"),
        },
        None => {
            let c = surrogate_minimum(&t, m).map_err(solve_error)?;
            println!(
                "min surrogate ratio = {} at v={} k={} side={}",
                c.effective_ratio(),
                t.label(c.v),
                c.k,
                side_name(c.side)
            );
        }
    }
    Ok(())
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Out => "out",
        Side::In => "in",
    }
}

/// Minimum surrogate ratio over all (v, k, side) with a defined ratio,
/// same tie-break as candidate selection but without the admissibility
/// filter.
fn surrogate_minimum(g: &Digraph, m: usize) -> Result<Candidate, Error> {
    let mut best: Option<Candidate> = None;
    for v in 0..g.vertex_count() as u32 {
        for k in 1..=m - 3 {
            let cands = [
                Candidate::new(
                    v,
                    k,
                    Side::Out,
                    layers::p_layer(g, v, k)?,
                    layers::s_surrogate(g, v, k, m)?,
                ),
                Candidate::new(
                    v,
                    k,
                    Side::In,
                    layers::rprime_layer(g, v, k)?,
                    layers::t_surrogate(g, v, k, m)?,
                ),
            ];
            for c in cands {
                if c.numerator != 0 && c.denominator == 0 {
                    continue;
                }
                let key = |c: &Candidate| (c.effective_ratio(), c.side, c.v, c.k);
                if best.as_ref().is_none_or(|b| key(&c) < key(b)) {
                    best = Some(c);
                }
            }
        }
    }
    best.ok_or(Error::NoAdmissibleRatio)
}

fn parse_probability(text: &str) -> Result<(u64, u64), Failure> {
    let bad = || fail(64, format!("cannot parse probability `{text}`"));
    let (num, den) = if let Some((a, b)) = text.split_once('/') {
        (
            a.trim().parse::<u64>().map_err(|_| bad())?,
            b.trim().parse::<u64>().map_err(|_| bad())?,
        )
    } else if let Some((int, frac)) = text.split_once('.') {
        let digits = frac.len() as u32;
        if digits == 0 || digits > 18 {
            return Err(bad());
        }
        let whole: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac: u64 = frac.parse().map_err(|_| bad())?;
        let den = 10u64.pow(digits);
        (whole * den + frac, den)
    } else {
        (text.parse::<u64>().map_err(|_| bad())?, 1)
    };
    if den == 0 || num > den {
        return Err(fail(64, format!("probability `{text}` is not in [0, 1]")));
    }
    Ok((num, den))
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| fail(64, format!("cannot parse {what} `{t}`")))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_gen(
    model: &str,
    n: Option<usize>,
    m: usize,
    steps: Option<&String>,
    base_len: Option<usize>,
    sizes: Option<&String>,
    p: Option<&String>,
    seed: u64,
    output: Option<&Path>,
) -> CmdResult {
    let need_n = || n.ok_or_else(|| fail(64, format!("model `{model}` needs --n")));
    let spec = match model {
        "cycle" => GenSpec::cycle(need_n()?, m),
        "circulant" => {
            let steps = steps.ok_or_else(|| fail(64, "model `circulant` needs --steps"))?;
            GenSpec::circulant(need_n()?, parse_list(steps, "step")?, m)
        }
        "blowup" => {
            let base = base_len.ok_or_else(|| fail(64, "model `blowup` needs --base-len"))?;
            let sizes = sizes.ok_or_else(|| fail(64, "model `blowup` needs --sizes"))?;
            GenSpec::blowup(base, parse_list(sizes, "class size")?, m)
        }
        "er" => {
            let p = p.ok_or_else(|| fail(64, "model `er` needs --p"))?;
            let (num, den) = parse_probability(p)?;
            GenSpec::er(need_n()?, num, den, m, seed)
        }
        other => return Err(fail(64, format!("unknown model `{other}`"))),
    };
    let g = spec.generate().map_err(|e| fail(64, e.to_string()))?;
    if let Err(w) = g.check_m_free(m) {
        return Err(fail(
            64,
            format!(
                "generated graph has a directed cycle of length {} <= m = {m}; \
                 pick a larger instance or a smaller m",
                w.len()
            ),
        ));
    }
    let text = io::render_edge_list(&g, Some(&spec));
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))?;
            println!(
                "gen: model={} n={} edges={} m={} seed={} -> {}",
                spec.model.name(),
                g.vertex_count(),
                g.edge_count(),
                m,
                seed,
                path.display()
            );
        }
        None => print!("{text}"),
    }
    Ok(())
}

struct BenchRow {
    model: &'static str,
    n: usize,
    seed: u64,
    m: usize,
    fas: u64,
    bound: u64,
    gamma: u64,
    exact: Option<u64>,
    certificate_ok: bool,
}

pub fn cmd_bench(
    m_filter: Option<&String>,
    model_filter: Option<&String>,
    jobs: usize,
    guard: usize,
) -> CmdResult {
    let ms: Option<Vec<usize>> = match m_filter {
        Some(text) => Some(parse_list(text, "m")?),
        None => None,
    };
    let models: Option<Vec<String>> = match model_filter {
        Some(text) => Some(parse_list(text, "model")?),
        None => None,
    };
    let corpus: Vec<GenSpec> = gen::standard_corpus()
        .into_iter()
        .filter(|s| ms.as_ref().is_none_or(|ms| ms.contains(&s.m)))
        .filter(|s| {
            models
                .as_ref()
                .is_none_or(|ms| ms.iter().any(|m| m == s.model.name()))
        })
        .collect();
    if corpus.is_empty() {
        return Err(fail(64, "filters match no corpus instance"));
    }
    let started = Instant::now();
    let cap = guard.min(exact::MAX_EXACT_VERTICES);
    let cursor = AtomicUsize::new(0);
    let run_one = |spec: &GenSpec| -> Result<BenchRow, Failure> {
        let g = spec
            .generate()
            .map_err(|e| fail(1, format!("{spec:?}: {e}")))?;
        let r = solver::solve(&g, spec.m).map_err(solve_error)?;
        let violations = solver::verify_certificate(&g, spec.m, &r);
        let exact_beta = if g.vertex_count() <= cap {
            Some(
                exact::exact_fas_size(&g)
                    .map_err(|e| fail(5, format!("{spec:?}: {e}")))?,
            )
        } else {
            None
        };
        Ok(BenchRow {
            model: spec.model.name(),
            n: spec.n,
            seed: spec.seed,
            m: spec.m,
            fas: r.fas_size(),
            bound: g.gamma() / (spec.m as u64 - 2),
            gamma: g.gamma(),
            exact: exact_beta,
            certificate_ok: violations.is_empty(),
        })
    };
    let workers = jobs.max(1);
    let mut indexed: Vec<(usize, Result<BenchRow, Failure>)> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for _ in 0..workers {
            let cursor = &cursor;
            let corpus = &corpus;
            handles.push(scope.spawn(move || {
                let mut mine = Vec::new();
                loop {
                    let i = cursor.fetch_add(1, Ordering::Relaxed);
                    if i >= corpus.len() {
                        break;
                    }
                    mine.push((i, run_one(&corpus[i])));
                }
                mine
            }));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("bench worker panicked"))
            .collect()
    });
    indexed.sort_by_key(|(i, _)| *i);
    let mut rows = Vec::with_capacity(indexed.len());
    for (_, row) in indexed {
        rows.push(row?);
    }
    rows.sort_by_key(|r| (r.model, r.n, r.seed, r.m));
    println!("model      n   seed m fas bound ratio      exact cert");
    let mut all_ok = true;
    for r in &rows {
        let ratio = format!("{}/{}", (r.m as u64 - 2) * r.fas, r.gamma);
        let exact = r
            .exact
            .map(|b| b.to_string())
            .unwrap_or_else(|| "-".into());
        all_ok &= r.certificate_ok;
        println!(
            "{:<10} {:<3} {:<4} {} {:<3} {:<5} {:<10} {:<5} {}",
            r.model,
            r.n,
            r.seed,
            r.m,
            r.fas,
            r.bound,
            ratio,
            exact,
            if r.certificate_ok { "ok" } else { "FAIL" }
        );
    }
    println!(
        "instances: {}  certificates: {}",
        rows.len(),
        if all_ok { "all ok" } else { "FAILURES" }
    );
    eprintln!("elapsed: {} ms", started.elapsed().as_millis());
    if all_ok {
        Ok(())
    } else {
        Err(fail(1, "some certificates failed"))
    }
}
