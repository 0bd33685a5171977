use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quadabund::abundancy::{delta_n, index_n};
use quadabund::factor::factor;
use quadabund::report::{
    certificate_record, coords_json, factorization_json, group_line, json_list, member_json,
    write_report, Record,
};
use quadabund::search::{conjecture_probe, default_workers, friend_search, WORKERS_ENV};
use quadabund::solitary::{certify_solitary, verify_lemma_3_5};
use quadabund::{BigInt, Element, Result, RingId};

#[derive(Parser)]
#[command(
    name = "quadabund",
    version,
    about = "Exact divisor sums and abundancy indices in imaginary quadratic UFDs"
)]
struct Cli {
    /// Human-readable output instead of JSON lines
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor z into a unit and canonical primes
    Factor {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        /// Integral-basis coordinates "a,b"
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Divisor sum of |x|^n over divisors x in the canonical sector
    Delta {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Abundancy index delta_n(z) / |z|^n
    Index {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Certify that z has no n-powerful friends, if a proven criterion applies
    Certify {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Group elements up to a norm bound by abundancy index
    Friends {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        bound: u64,
        /// Skip candidates ruled out by the conjugate-pair shape test (odd n)
        #[arg(long)]
        prune: bool,
        /// Write the report file here as well
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = WORKERS_ENV)]
        workers: Option<usize>,
    },
    /// Look for a friend of p^k up to a norm bound
    Probe {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        bound: u64,
    },
    /// Brute-force the exponent equation for prime powers of p
    #[command(name = "verify-lemma35")]
    VerifyLemma35 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max_exp: u32,
    },
}

fn element(d: i64, z: &str) -> Result<Element> {
    Element::parse(RingId::new(d)?, z)
}

fn quadruples(qs: &[[u32; 4]]) -> String {
    json_list(
        qs.iter()
            .map(|q| format!("[{},{},{},{}]", q[0], q[1], q[2], q[3])),
    )
}

fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Factor { d, z } => {
            let z = element(d, &z)?;
            let f = factor(&z)?;
            if pretty {
                writeln!(out, "{z} = ({})", f.unit().value())?;
                for (p, e) in f.factors() {
                    writeln!(out, "  ({p})^{e}    norm {}", p.norm())?;
                }
            } else {
                let line = Record::new("factor")
                    .int("d", d)
                    .raw("z", &coords_json(&z))
                    .raw("factorization", &factorization_json(&f))
                    .finish();
                writeln!(out, "{line}")?;
            }
        }
        Command::Delta { d, z, n } => {
            let z = element(d, &z)?;
            let v = delta_n(&z, n)?;
            if pretty {
                writeln!(out, "delta_{n}({z}) = {v}")?;
            } else {
                let line = Record::new("delta")
                    .int("d", d)
                    .raw("z", &coords_json(&z))
                    .int("n", n)
                    .str("value", &v.to_string())
                    .finish();
                writeln!(out, "{line}")?;
            }
        }
        Command::Index { d, z, n } => {
            let z = element(d, &z)?;
            let v = index_n(&z, n)?;
            if pretty {
                writeln!(out, "I_{n}({z}) = {v}  (~ {:.12})", v.value().to_f64())?;
            } else {
                let line = Record::new("index")
                    .int("d", d)
                    .raw("z", &coords_json(&z))
                    .int("n", n)
                    .str("value", &v.to_string())
                    .finish();
                writeln!(out, "{line}")?;
            }
        }
        Command::Certify { d, z, n } => {
            let z = element(d, &z)?;
            let c = certify_solitary(&z, n)?;
            if pretty {
                match c.reason() {
                    Some(r) => writeln!(out, "{z}: {n}-powerfully solitary ({r})")?,
                    None => writeln!(out, "{z}: no certificate applies for n = {n}")?,
                }
            } else {
                writeln!(out, "{}", certificate_record(&z, &c).finish())?;
            }
        }
        Command::Friends {
            d,
            n,
            bound,
            prune,
            out: path,
            workers,
        } => {
            let workers = workers.filter(|&w| w > 0).unwrap_or_else(default_workers);
            let report = friend_search::<BigInt>(RingId::new(d)?, n, bound, prune, workers)?;
            if let Some(path) = path {
                write_report(&report, path)?;
            }
            if pretty {
                writeln!(
                    out,
                    "d = {d}, n = {n}, norm <= {bound}: {} elements, {} certified solitary, {} friend sets",
                    report.scanned,
                    report.certified_count,
                    report.groups.len()
                )?;
                for g in &report.groups {
                    let members: Vec<String> = g
                        .members
                        .iter()
                        .map(|m| format!("{} (N={})", m.element, m.norm))
                        .collect();
                    writeln!(out, "  I = {}: {}", g.index_key, members.join(", "))?;
                }
            } else {
                let summary = Record::new("summary")
                    .str("version", &report.version)
                    .int("d", d)
                    .int("n", n)
                    .int("bound", bound)
                    .bool("prune", prune)
                    .int("workers", workers)
                    .int("scanned", report.scanned)
                    .int("certified_count", report.certified_count)
                    .int("pruned", report.pruned)
                    .int("groups", report.groups.len())
                    .int("elapsed_ms", report.elapsed.as_millis())
                    .finish();
                writeln!(out, "{summary}")?;
                for g in &report.groups {
                    writeln!(out, "{}", group_line(g, bound))?;
                }
            }
        }
        Command::Probe { d, p, k, n, bound } => {
            let probe =
                conjecture_probe::<BigInt>(RingId::new(d)?, n, p, k, bound, default_workers())?;
            if pretty {
                let cert = probe
                    .certificate
                    .map_or("none".to_string(), |r| r.to_string());
                writeln!(
                    out,
                    "I_{n}({p}^{k}) = {} in d = {d}, certificate: {cert}",
                    probe.index
                )?;
                if probe.found_friend() {
                    for m in &probe.hits {
                        writeln!(out, "  FRIEND: {} (N={})", m.element, m.norm)?;
                    }
                } else {
                    writeln!(
                        out,
                        "  no friend up to norm {bound} ({} elements)",
                        probe.scanned
                    )?;
                }
            } else {
                let reason = probe
                    .certificate
                    .map_or("null".to_string(), |r| format!("\"{}\"", r.code()));
                let line = Record::new("probe")
                    .int("d", d)
                    .int("p", p)
                    .int("k", k)
                    .int("n", n)
                    .int("bound", bound)
                    .str("index", &probe.index.to_string())
                    .raw("certificate", &reason)
                    .int("scanned", probe.scanned)
                    .bool("friend_found", probe.found_friend())
                    .raw("hits", &json_list(probe.hits.iter().map(member_json)))
                    .finish();
                writeln!(out, "{line}")?;
            }
        }
        Command::VerifyLemma35 { p, max_exp } => {
            let r = verify_lemma_3_5(p, max_exp)?;
            if pretty {
                let verdict = if r.holds() { "holds" } else { "FAILS" };
                writeln!(
                    out,
                    "p = {p}, exponents <= {max_exp}: {} quadruples, {} solutions, {verdict}",
                    r.checked,
                    r.solutions.len()
                )?;
            } else {
                let line = Record::new("lemma35")
                    .int("p", p)
                    .int("max_exp", max_exp)
                    .int("checked", r.checked)
                    .int("solutions", r.solutions.len())
                    .bool("holds", r.holds())
                    .raw("asymmetric_solutions", &quadruples(&r.asymmetric_solutions))
                    .raw("failing_symmetric", &quadruples(&r.failing_symmetric))
                    .finish();
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = Record::new("error").str("message", &e.to_string()).finish();
            eprintln!("{line}");
            ExitCode::FAILURE
        }
    }
}
