use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cobweb::cobweb::DEFAULT_ENUMERATION_BUDGET;
use cobweb::diagonal::{bell_sequence, whitney_triangle, DiagonalPoset};
use cobweb::dobinski::{bell_dobinski, bell_exact};
use cobweb::exact_cover::{CoverCount, SearchOptions};
use cobweb::layer_grid::{
    count_grid_max_chains, grid_size, whitney_first_row, whitney_second_row, LayerGridPoset,
};
use cobweb::sequence::{is_cobweb_admissible, is_gcd_morphic};
use cobweb::tiling::canonical_options;
use cobweb::{
    AdmissibleSequence, CobwebPoset, Error, FNomialTable, IncidenceMatrix, SigmaPolicy,
    TilingBudget, TilingInstance, TilingVerdict,
};
use serde_json::{json, Value};

const BUDGET_ENV: &str = "COBWEB_BUDGET";

#[derive(Parser)]
#[command(
    name = "cobweb",
    version,
    about = "Exact computations on cobweb posets"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// F-nomial coefficient (n k)_F.
    Fnomial {
        #[arg(value_parser = parse_sequence)]
        seq: AdmissibleSequence,
        n: usize,
        k: usize,
    },
    /// Checks that every F-nomial with n <= max is a positive integer.
    Admissible {
        #[arg(value_parser = parse_sequence)]
        seq: AdmissibleSequence,
        #[arg(long)]
        max: usize,
    },
    /// Checks gcd(F_n, F_m) = F_gcd(n,m) for 1 <= m <= n <= max.
    Gcdmorphic {
        #[arg(value_parser = parse_sequence)]
        seq: AdmissibleSequence,
        #[arg(long)]
        max: usize,
    },
    /// Zeta matrix of the poset truncated at a level.
    Zeta {
        #[arg(value_parser = parse_sequence)]
        seq: AdmissibleSequence,
        #[arg(long)]
        levels: usize,
        /// Print only the leading S x S block.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Mobius matrix of the poset truncated at a level.
    Mobius {
        #[arg(value_parser = parse_sequence)]
        seq: AdmissibleSequence,
        #[arg(long)]
        levels: usize,
    },
    /// Maximal chains through levels from..=to.
    Chains {
        #[arg(value_parser = parse_sequence)]
        seq: AdmissibleSequence,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// List the chains instead of only counting them.
        #[arg(long)]
        enumerate: bool,
        #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// The layer grid poset P_{k,n}.
    Grid {
        k: usize,
        n: usize,
        #[command(flatten)]
        what: GridQuery,
    },
    /// Diagonal poset: Bell-like number B_N, or the Whitney triangle.
    Diagonal {
        #[arg(value_parser = parse_sequence)]
        seq: AdmissibleSequence,
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        triangle: bool,
    },
    /// Partition of the chains of levels k..n into copies of P_{n-k}.
    Tile {
        #[arg(value_parser = parse_sequence)]
        seq: AdmissibleSequence,
        k: usize,
        n: usize,
        #[arg(long, conflicts_with = "witness")]
        count: bool,
        #[arg(long)]
        witness: bool,
        #[arg(long, value_parser = parse_sigma, default_value = "all")]
        sigma: SigmaPolicy,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// Search node budget.
        #[arg(long, env = BUDGET_ENV, default_value_t = 100_000_000)]
        budget: u64,
    },
    /// Classical Bell number, exactly or by the Dobinski series.
    BellClassic {
        n: usize,
        /// Relative tolerance for the series.
        #[arg(long, value_name = "TOL")]
        dobinski: Option<f64>,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct GridQuery {
    /// Whitney numbers of both kinds by rank.
    #[arg(long)]
    whitney: bool,
    /// Sum of the second-kind Whitney numbers.
    #[arg(long)]
    bell: bool,
    /// Number of maximal chains.
    #[arg(long)]
    maxchains: bool,
}

fn parse_sequence(s: &str) -> Result<AdmissibleSequence, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_sigma(s: &str) -> Result<SigmaPolicy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A finished command: what to print and whether the answer is conclusive.
struct Report {
    text: String,
    json: Value,
    inconclusive: bool,
}

impl Report {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Self {
            text: text.into(),
            json,
            inconclusive: false,
        }
    }
}

fn joined<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn decimals<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn matrix_json(m: &IncidenceMatrix) -> Value {
    json!({
        "order": m.labels(),
        "rows": m.rows().iter().map(|r| decimals(r)).collect::<Vec<_>>(),
    })
}

fn matrix_text(m: &IncidenceMatrix) -> String {
    m.to_string().trim_end().to_string()
}

fn run(command: Command) -> cobweb::Result<Report> {
    match command {
        Command::Fnomial { seq, n, k } => {
            let value = FNomialTable::new(seq.clone(), n)?.fnomial(n, k)?;
            Ok(Report::new(
                value.to_string(),
                json!({"sequence": seq.to_string(), "n": n, "k": k, "value": value.to_string()}),
            ))
        }
        Command::Admissible { seq, max } => {
            let v = is_cobweb_admissible(&seq, max)?;
            let failure = v.first_failure.as_ref().map(|f| {
                json!({"n": f.n, "k": f.k, "numer": f.numer.to_string(), "denom": f.denom.to_string()})
            });
            let text = match &v.first_failure {
                None => format!("admissible through {max}"),
                Some(f) => format!(
                    "not admissible: ({} {})_F = {}/{}\nadmissible through {}",
                    f.n, f.k, f.numer, f.denom, v.admissible_up_to
                ),
            };
            Ok(Report::new(
                text,
                json!({
                    "sequence": seq.to_string(),
                    "max": max,
                    "admissible": v.is_admissible(),
                    "admissible_up_to": v.admissible_up_to,
                    "first_failure": failure,
                }),
            ))
        }
        Command::Gcdmorphic { seq, max } => {
            let v = is_gcd_morphic(&seq, max)?;
            let mut text = if v.is_gcd_morphic() {
                format!("gcd-morphic through {max}")
            } else {
                format!("not gcd-morphic\ngcd-morphic through {}", v.morphic_up_to)
            };
            for f in &v.failures {
                text.push_str(&format!(
                    "\nfails at ({}, {}): gcd = {}, F_gcd = {}",
                    f.n, f.m, f.gcd, f.expected
                ));
            }
            let failures: Vec<Value> = v
                .failures
                .iter()
                .map(|f| json!({"n": f.n, "m": f.m, "gcd": f.gcd.to_string(), "expected": f.expected.to_string()}))
                .collect();
            Ok(Report::new(
                text,
                json!({
                    "sequence": seq.to_string(),
                    "max": max,
                    "gcd_morphic": v.is_gcd_morphic(),
                    "morphic_up_to": v.morphic_up_to,
                    "failures": failures,
                }),
            ))
        }
        Command::Zeta { seq, levels, size } => {
            let mut zeta = CobwebPoset::build(seq, levels)?.zeta_matrix()?;
            if let Some(s) = size {
                if s > zeta.len() {
                    return Err(Error::IndexOutOfRange {
                        index: s,
                        len: zeta.len(),
                    });
                }
                zeta = zeta.truncated(s);
            }
            Ok(Report::new(matrix_text(&zeta), matrix_json(&zeta)))
        }
        Command::Mobius { seq, levels } => {
            let mu = CobwebPoset::build(seq, levels)?.mobius_matrix()?;
            Ok(Report::new(matrix_text(&mu), matrix_json(&mu)))
        }
        Command::Chains {
            seq,
            from,
            to,
            enumerate,
            budget,
        } => {
            let poset = CobwebPoset::build(seq, to)?;
            let count = poset.count_max_chains(from, to)?;
            let mut doc = json!({"from": from, "to": to, "count": count.to_string()});
            if !enumerate {
                return Ok(Report::new(count.to_string(), doc));
            }
            let chains: Vec<Vec<String>> = poset
                .enumerate_max_chains(from, to, budget)?
                .map(|c| decimals(&c))
                .collect();
            let text = chains
                .iter()
                .map(|c| c.join(" "))
                .collect::<Vec<_>>()
                .join("\n");
            doc["chains"] = json!(chains);
            Ok(Report::new(text, doc))
        }
        Command::Grid { k, n, what } => {
            if what.whitney {
                let second = whitney_second_row(k, n)?;
                let first = whitney_first_row(k, n)?;
                Ok(Report::new(
                    format!("second: {}\nfirst: {}", joined(&second), joined(&first)),
                    json!({"k": k, "n": n, "second": decimals(&second), "first": decimals(&first)}),
                ))
            } else if what.bell {
                let b = grid_size(k, n)?;
                Ok(Report::new(
                    b.to_string(),
                    json!({"k": k, "n": n, "bell": b.to_string()}),
                ))
            } else if what.maxchains {
                let c = count_grid_max_chains(k, n)?;
                Ok(Report::new(
                    c.to_string(),
                    json!({"k": k, "n": n, "maxchains": c.to_string()}),
                ))
            } else {
                let grid = LayerGridPoset::new(k, n)?;
                let size = grid_size(k, n)?;
                let chains = count_grid_max_chains(k, n)?;
                let rank = grid.rank().expect("grids are nonempty");
                Ok(Report::new(
                    format!("size {size}\nrank {rank}\nmaxchains {chains}"),
                    json!({"k": k, "n": n, "size": size.to_string(), "rank": rank, "maxchains": chains.to_string()}),
                ))
            }
        }
        Command::Diagonal { seq, n, triangle } => {
            if triangle {
                let rows = whitney_triangle(&seq, n)?;
                let bells = bell_sequence(&seq, n)?;
                let text = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| format!("{i}: {}", joined(r)))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(Report::new(
                    text,
                    json!({
                        "sequence": seq.to_string(),
                        "n": n,
                        "rows": rows.iter().map(|r| decimals(r)).collect::<Vec<_>>(),
                        "bell": decimals(&bells),
                    }),
                ))
            } else {
                let b = DiagonalPoset::new(seq.clone(), n)?.bell()?;
                Ok(Report::new(
                    b.to_string(),
                    json!({"sequence": seq.to_string(), "n": n, "bell": b.to_string()}),
                ))
            }
        }
        Command::Tile {
            seq,
            k,
            n,
            count,
            witness,
            sigma,
            jobs,
            budget,
        } => {
            let inst = TilingInstance::build(seq.clone(), k, n, sigma, &TilingBudget::default())?;
            let jobs = jobs as usize;
            let mut doc = json!({
                "sequence": seq.to_string(),
                "k": k,
                "n": n,
                "sigma": sigma,
                "chains": inst.chains().len(),
                "blocks": inst.blocks().len(),
            });
            if count {
                let opts = SearchOptions {
                    jobs,
                    node_budget: Some(budget),
                    ..SearchOptions::default()
                };
                let (text, inconclusive) = match inst.count_partitions(u64::MAX, &opts) {
                    CoverCount::Exact(c) | CoverCount::AtLeast(c) => {
                        doc["count"] = json!(c.to_string());
                        (c.to_string(), false)
                    }
                    CoverCount::Inconclusive { partial, nodes } => {
                        doc["count"] = Value::Null;
                        doc["partial"] = json!(partial.to_string());
                        doc["nodes"] = json!(nodes);
                        (
                            format!("inconclusive: at least {partial} after {nodes} nodes"),
                            true,
                        )
                    }
                };
                return Ok(Report {
                    text,
                    json: doc,
                    inconclusive,
                });
            }
            let verdict = inst.exists_partition(&canonical_options(jobs, Some(budget)));
            let mut text = verdict.label().to_string();
            doc["verdict"] = json!(verdict.label());
            if let TilingVerdict::Inconclusive { nodes } = verdict {
                doc["nodes"] = json!(nodes);
            }
            if let (true, TilingVerdict::Yes(w)) = (witness, &verdict) {
                let blocks: Vec<Value> = w
                    .iter()
                    .map(|&b| {
                        let block = &inst.blocks()[b];
                        json!({"index": b, "root": block.root, "levels": block.level_subsets})
                    })
                    .collect();
                for &b in w {
                    let block = &inst.blocks()[b];
                    let levels: Vec<String> =
                        block.level_subsets.iter().map(|s| joined(s)).collect();
                    text.push_str(&format!(
                        "\n{b}: root {} | {}",
                        block.root,
                        levels.join(" | ")
                    ));
                }
                doc["witness"] = json!(blocks);
            }
            let inconclusive = matches!(verdict, TilingVerdict::Inconclusive { .. });
            Ok(Report {
                text,
                json: doc,
                inconclusive,
            })
        }
        Command::BellClassic { n, dobinski } => {
            let exact = bell_exact(n);
            let Some(tol) = dobinski else {
                return Ok(Report::new(
                    exact.to_string(),
                    json!({"n": n, "bell": exact.to_string()}),
                ));
            };
            let approx = bell_dobinski(n, tol)?;
            let exact_f: f64 = exact.to_string().parse().expect("decimal digits");
            let rel_error = (approx.value - exact_f).abs() / exact_f;
            Ok(Report::new(
                format!(
                    "approx {}\nexact {exact}\nrel_error {rel_error:e}\nterms {}",
                    approx.value, approx.terms
                ),
                json!({
                    "n": n,
                    "tolerance": tol,
                    "approx": approx.value,
                    "exact": exact.to_string(),
                    "rel_error": rel_error,
                    "terms": approx.terms,
                    "tail_bound": approx.tail_bound,
                }),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let body = match cli.format {
                Format::Text => report.text,
                Format::Json => report.json.to_string(),
            };
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(io::stdout().lock(), "{body}");
            ExitCode::from(if report.inconclusive { 3 } else { 0 })
        }
        Err(e @ Error::BudgetExceeded { .. }) => {
            eprintln!("inconclusive: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
