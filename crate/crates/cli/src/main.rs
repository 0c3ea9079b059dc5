//! `corrterm`: batch front end for the correction-term library.
//!
//! Output goes to stdout only after a command has fully succeeded; errors and
//! scan progress go to stderr. Exit status is 0 on success, 2 for invalid
//! input and 3 when a scan or cross-check finds a counterexample.

mod render;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use corrterm::alexander::determinant;
use corrterm::lens::correction_values;
use corrterm::surgery::{moser_details, positive_integer_surgery_values};
use corrterm::{
    cable_alexander, d_one_over_n_surgery, delta_range, determinant_square_check,
    positive_cable_slice_check, range_bound_scan, torsion_coefficients, torus_alexander,
    torus_alexander_factors, two_summand_scan, CorrectionMultiset, ExactRational, Jobs,
    LaurentPolynomial, LensSpace, Progress, ScanOptions, VSequence,
};
use serde_json::json;

use render::{Output, Table};

/// Progress is reported every this many work items.
const PROGRESS_INTERVAL: usize = 5000;

#[derive(Parser, Debug)]
#[command(
    name = "corrterm",
    version,
    about = "Exact Heegaard Floer correction terms and slice obstructions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Worker threads for scans; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Emit `"duration_ms": null` so JSON output is byte-reproducible.
    #[arg(long, global = true)]
    no_timing: bool,

    /// Suppress progress lines on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Correction terms d(L(p,q), i) for every Spin^c index.
    Lens {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Range of the correction terms of L(p,q).
    Delta {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Checks Δ(p,q) <= p/4 for every coprime 0 < q < p <= N.
    VerifyRange {
        #[arg(long)]
        p_max: u64,
    },
    /// Looks for L(pq,1) matching L(p,a) # L(q,b) up to a shift.
    TwoSummand {
        #[arg(long)]
        pq_max: u64,
        /// Run the full multiset test on every tuple.
        #[arg(long)]
        no_prune: bool,
    },
    /// Alexander polynomial of the torus knot T(p,q).
    AlexanderTorus { p: u64, q: u64 },
    /// Alexander polynomial of the (p,q)-cable of a knot J.
    AlexanderCable {
        p: u64,
        q: u64,
        /// Δ_J as "exp:coeff,exp:coeff,...".
        #[arg(long, allow_hyphen_values = true)]
        delta_j: String,
    },
    /// Sliceness verdict for the positive (p,q)-cable of J.
    SliceCable {
        p: u64,
        q: u64,
        /// V₀ of the companion J, enabling the correction-term test.
        #[arg(long)]
        v0: Option<u64>,
    },
    /// Compares both sides of S³_{pq}(T(p,q)) = L(p,q) # L(q,p).
    Moser { p: u64, q: u64 },
    /// Correction terms of n-surgery on a knot with the given V-sequence.
    Surgery {
        n: u64,
        /// V₀,V₁,... (trailing zeros optional).
        #[arg(long = "v", value_delimiter = ',', default_value = "0")]
        v: Vec<u64>,
        /// Compute 1/n surgery instead.
        #[arg(long)]
        reciprocal: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Io(std::io::Error),
}

impl From<corrterm::Error> for Failure {
    fn from(e: corrterm::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn rationals(values: &[ExactRational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn multiset_json(m: &CorrectionMultiset) -> serde_json::Value {
    json!(rationals(m.values()))
}

fn progress_hook(quiet: bool, unit: &'static str) -> impl Fn(usize) + Sync {
    move |n| {
        if !quiet {
            eprintln!("progress: {n} {unit}");
        }
    }
}

fn lens(p: i64, q: i64) -> Result<Output, Failure> {
    let l = LensSpace::new(p, q)?;
    let values = correction_values(&l);
    let multiset = CorrectionMultiset::from_values(values.iter().cloned());
    let mut table = Table::new(["index", "d"]);
    let mut plain = format!("{l}\n");
    for (i, v) in values.iter().enumerate() {
        table.row([i.to_string(), v.to_string()]);
        plain.push_str(&format!("d({l}, {i}) = {v}\n"));
    }
    plain.push_str(&format!("multiset: {multiset:?}\n"));
    Ok(Output::new(
        "lens",
        json!({ "p": p, "q": q }),
        json!({
            "lens": l.to_string(),
            "values": rationals(&values),
            "multiset": multiset_json(&multiset),
        }),
        plain,
        table,
    ))
}

fn delta(p: i64, q: i64) -> Result<Output, Failure> {
    let l = LensSpace::new(p, q)?;
    let d = delta_range(&l);
    let bound = ExactRational::new(l.p(), 4);
    let within = d <= bound;
    let mut table = Table::new(["p", "q", "delta", "bound", "within_bound"]);
    table.row([
        l.p().to_string(),
        l.q().to_string(),
        d.to_string(),
        bound.to_string(),
        within.to_string(),
    ]);
    Ok(Output::new(
        "delta",
        json!({ "p": p, "q": q }),
        json!({
            "lens": l.to_string(),
            "delta": d,
            "bound": bound,
            "within_bound": within,
        }),
        format!("Δ({l}) = {d}\np/4 = {bound}\n"),
        table,
    ))
}

fn verify_range(p_max: u64, jobs: Jobs, quiet: bool) -> Result<Output, Failure> {
    let hook = progress_hook(quiet, "lens spaces");
    let report = range_bound_scan(p_max, jobs, &Progress::new(PROGRESS_INTERVAL, &hook))?;
    let mut table = Table::new(["p", "q", "delta", "ratio"]);
    for w in &report.violations {
        table.row([
            w.p.to_string(),
            w.q.to_string(),
            w.delta.to_string(),
            w.ratio.to_string(),
        ]);
    }
    let describe = |w: &Option<corrterm::cobordism::RangeWitness>| match w {
        Some(w) => format!("4Δ/p = {} at L({},{})", w.ratio, w.p, w.q),
        None => "none".into(),
    };
    let mut footer = vec![
        format!("p_max={}", report.p_max),
        format!("pairs_checked={}", report.pairs_checked),
        format!("violations={}", report.violations.len()),
    ];
    if let Some(w) = &report.tightest {
        footer.push(format!("tightest={},{},{}", w.p, w.q, w.ratio));
    }
    if let Some(w) = &report.tightest_nontrivial {
        footer.push(format!("tightest_nontrivial={},{},{}", w.p, w.q, w.ratio));
    }
    table.footer(footer);
    let mut plain = format!(
        "checked {} lens spaces with p <= {}\nviolations of Δ <= p/4: {}\n",
        report.pairs_checked,
        report.p_max,
        report.violations.len()
    );
    for w in &report.violations {
        plain.push_str(&format!("  L({},{}): Δ = {}\n", w.p, w.q, w.delta));
    }
    plain.push_str(&format!("tightest: {}\n", describe(&report.tightest)));
    plain.push_str(&format!(
        "tightest with 1 < q < p-1: {}\n",
        describe(&report.tightest_nontrivial)
    ));
    let failed = !report.violations.is_empty();
    Ok(Output::new(
        "verify-range",
        json!({ "p_max": p_max }),
        serde_json::to_value(&report).expect("serializable"),
        plain,
        table,
    )
    .failed_if(failed))
}

fn two_summand(pq_max: u64, no_prune: bool, jobs: Jobs, quiet: bool) -> Result<Output, Failure> {
    let hook = progress_hook(quiet, "tuples");
    let opts = ScanOptions {
        jobs,
        prune: !no_prune,
    };
    let report = two_summand_scan(pq_max, &opts, &Progress::new(PROGRESS_INTERVAL, &hook))?;
    let mut table = Table::new(["p", "q", "a", "b", "constant"]);
    for c in &report.counterexamples {
        table.row([
            c.p.to_string(),
            c.q.to_string(),
            c.a.to_string(),
            c.b.to_string(),
            c.constant.to_string(),
        ]);
    }
    table.footer(vec![
        format!("pq_max={}", report.pq_max),
        format!("pruned={}", report.pruned),
        format!("pairs_checked={}", report.pairs_checked),
        format!("tuples_checked={}", report.tuples_checked),
        format!("rejected_by_inequality={}", report.rejected_by_inequality),
        format!("rejected_by_range={}", report.rejected_by_range),
        format!("full_tests={}", report.full_tests),
        format!("filter_unsound={}", report.filter_unsound.len()),
        format!("counterexamples={}", report.counterexamples.len()),
    ]);
    // The plain form is the record stream itself, without a header.
    let plain = table.to_plain();
    let failed = !report.counterexamples.is_empty() || !report.filter_unsound.is_empty();
    Ok(Output::new(
        "two-summand",
        json!({ "pq_max": pq_max, "prune": !no_prune }),
        serde_json::to_value(&report).expect("serializable"),
        plain,
        table,
    )
    .failed_if(failed))
}

fn polynomial_table(poly: &LaurentPolynomial) -> Table {
    let mut table = Table::new(["exponent", "coefficient"]);
    for (e, c) in poly.terms() {
        table.row([e.to_string(), c.to_string()]);
    }
    table
}

fn alexander_torus(p: u64, q: u64) -> Result<Output, Failure> {
    let poly = torus_alexander(p, q)?;
    let factors = if q >= 2 {
        torus_alexander_factors(p, q)?
    } else {
        Vec::new()
    };
    let torsion: Vec<String> = torsion_coefficients(&poly)?
        .iter()
        .map(ToString::to_string)
        .collect();
    let det = determinant(&poly);
    let square = determinant_square_check(&poly);
    let factor_names: Vec<String> = factors.iter().map(|d| format!("Φ_{d}")).collect();
    let plain =
        format!(
        "Δ_T({p},{q}) = {poly}\nfactors: {}\ndeterminant: {det} (square: {square})\ntorsion: {}\n",
        if factor_names.is_empty() { "none".into() } else { factor_names.join(" ") },
        torsion.join(",")
    );
    Ok(Output::new(
        "alexander-torus",
        json!({ "p": p, "q": q }),
        json!({
            "polynomial": poly,
            "cyclotomic_factors": factors,
            "determinant": det.to_string(),
            "determinant_square": square,
            "torsion_coefficients": torsion,
        }),
        plain,
        polynomial_table(&poly),
    ))
}

fn alexander_cable(p: u64, q: u64, delta_j: &str) -> Result<Output, Failure> {
    let dj: LaurentPolynomial = delta_j.parse()?;
    let poly = cable_alexander(&dj, p, q)?;
    let det = determinant(&poly);
    let square = determinant_square_check(&poly);
    let plain =
        format!("Δ_J = {dj}\nΔ_J({p},{q}) = {poly}\ndeterminant: {det} (square: {square})\n");
    Ok(Output::new(
        "alexander-cable",
        json!({ "p": p, "q": q, "delta_j": delta_j }),
        json!({
            "delta_j": dj,
            "polynomial": poly,
            "determinant": det.to_string(),
            "determinant_square": square,
        }),
        plain,
        polynomial_table(&poly),
    ))
}

fn slice_cable(p: u64, q: u64, v0: Option<u64>) -> Result<Output, Failure> {
    let report = positive_cable_slice_check(p, q, v0)?;
    let value = serde_json::to_value(&report).expect("serializable");
    let verdict = value["verdict"].as_str().unwrap_or_default().to_string();
    let path = value["path"].as_str().unwrap_or_default().to_string();
    let mut plain = format!("({p},{q})-cable: {verdict} via {path}\n");
    for step in &report.narrative {
        plain.push_str(&format!("  {step}\n"));
    }
    let mut table = Table::new(["p", "q", "verdict", "path", "witness"]);
    let witness = value
        .get("witness")
        .map(|w| w.to_string())
        .unwrap_or_default();
    table.row([p.to_string(), q.to_string(), verdict, path, witness]);
    Ok(Output::new(
        "slice-cable",
        json!({ "p": p, "q": q, "v0": v0 }),
        value,
        plain,
        table,
    ))
}

fn moser(p: u64, q: u64) -> Result<Output, Failure> {
    let check = moser_details(p, q)?;
    let mut table = Table::new(["p", "q", "equal"]);
    table.row([p.to_string(), q.to_string(), check.equal.to_string()]);
    let plain = format!(
        "S³_{pq}(T({p},{q})): {:?}\nL({p},{q}) # L({q},{p}): {:?}\nequal: {}\n",
        check.surgery,
        check.connected_sum,
        check.equal,
        pq = p * q
    );
    let failed = !check.equal;
    Ok(Output::new(
        "moser",
        json!({ "p": p, "q": q }),
        serde_json::to_value(&check).expect("serializable"),
        plain,
        table,
    )
    .failed_if(failed))
}

fn surgery(n: u64, v: Vec<u64>, reciprocal: bool) -> Result<Output, Failure> {
    let seq = VSequence::new(v.clone())?;
    let params = json!({ "n": n, "v": v, "reciprocal": reciprocal });
    if reciprocal {
        let d = d_one_over_n_surgery(seq.v0(), n)?;
        let mut table = Table::new(["index", "d"]);
        table.row(["0".to_string(), d.to_string()]);
        return Ok(Output::new(
            "surgery",
            params,
            json!({ "v_sequence": seq, "values": [d.to_string()], "multiset": [d.to_string()] }),
            format!("d(S³_(1/{n})(K)) = {d}\n"),
            table,
        ));
    }
    let values = positive_integer_surgery_values(&seq, n)?;
    let multiset = CorrectionMultiset::from_values(values.iter().cloned());
    let mut table = Table::new(["index", "d"]);
    let mut plain = String::new();
    for (i, d) in values.iter().enumerate() {
        table.row([i.to_string(), d.to_string()]);
        plain.push_str(&format!("d(S³_{n}(K), {i}) = {d}\n"));
    }
    plain.push_str(&format!("multiset: {multiset:?}\n"));
    Ok(Output::new(
        "surgery",
        params,
        json!({
            "v_sequence": seq,
            "values": rationals(&values),
            "multiset": multiset_json(&multiset),
        }),
        plain,
        table,
    ))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let jobs = Jobs::new(cli.jobs);
    match cli.command {
        Command::Lens { p, q } => lens(p, q),
        Command::Delta { p, q } => delta(p, q),
        Command::VerifyRange { p_max } => verify_range(p_max, jobs, cli.quiet),
        Command::TwoSummand { pq_max, no_prune } => two_summand(pq_max, no_prune, jobs, cli.quiet),
        Command::AlexanderTorus { p, q } => alexander_torus(p, q),
        Command::AlexanderCable { p, q, delta_j } => alexander_cable(p, q, &delta_j),
        Command::SliceCable { p, q, v0 } => slice_cable(p, q, v0),
        Command::Moser { p, q } => moser(p, q),
        Command::Surgery { n, v, reciprocal } => surgery(n, v, reciprocal),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, timing) = (cli.format, !cli.no_timing);
    let start = Instant::now();
    let result = run(cli).and_then(|out| {
        let elapsed = timing.then(|| start.elapsed());
        let bytes = out.render(format, elapsed).map_err(Failure::Io)?;
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(&bytes)
            .and_then(|_| stdout.flush())
            .map_err(Failure::Io)?;
        Ok(out.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
