//! `kacq`: command-line front end for the Kac-polynomial engine, the
//! covering-identity verifier, tree-module counts, and the brute-force
//! oracles.

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quiver_kac::covering::{enumerate_compatible, verify_main_theorem};
use quiver_kac::kac::{cached_kac, KacCache};
use quiver_kac::oracle::{count_abs_indec, enumerate_cover_thin_trees, oracle_sweep};
use quiver_kac::quiver::{DimVector, Quiver};
use quiver_kac::trees::{
    cover_thin_count, growth_report, render_growth_table, spanning_tree_count,
    thin_kac_at_one_check, CoverThinParams, Ratio,
};
use quiver_kac::{Error, Result};

#[derive(Parser)]
#[command(name = "kacq", version, about = "Kac polynomials, covering classes, and tree counts")]
struct Cli {
    /// Append-only polynomial cache file.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Worker threads for per-class computations.
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    threads: usize,
    /// Node cap for the covering support search.
    #[arg(long, global = true, default_value_t = 5_000_000, value_name = "N")]
    node_cap: u64,
    /// Tab-separated machine output.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kac polynomial of (quiver, dim) and its value at 1.
    Kac {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        dim: String,
    },
    /// Root classification and Tits form value of (quiver, dim).
    Root {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        dim: String,
    },
    /// Dimension-vector classes on the universal abelian cover.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Spanning-tree and cover-thin counts.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Brute-force cross-checks.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand)]
enum CoverCmd {
    /// List the compatible classes up to translation.
    Enumerate {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        dim: String,
    },
    /// Check a(1) against the sum of per-class contributions.
    Verify {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        dim: String,
    },
}

#[derive(Subcommand)]
enum TreesCmd {
    /// Spanning trees of the underlying graph (loops dropped).
    Spanning {
        #[arg(long)]
        quiver: String,
    },
    /// Compare a(1) at the all-ones dimension with the spanning-tree count.
    ThinCheck {
        #[arg(long)]
        quiver: String,
    },
    /// Cover-thin class count of the m-Kronecker quiver at (d, e).
    Coverthin {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        e: u64,
    },
    /// Growth table of cover-thin counts along e = k*d.
    Growth {
        #[arg(long)]
        m: u64,
        /// Slope, an integer or a fraction like 3/2.
        #[arg(long)]
        k: String,
        #[arg(long)]
        dmax: u64,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Count absolutely indecomposable representations over F_p directly.
    Brute {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        dim: String,
        #[arg(long)]
        p: u64,
    },
    /// Enumerate cover-thin colored trees directly.
    Trees {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        e: u64,
    },
    /// Engine-vs-oracle comparison over all small connected quivers.
    Sweep {
        /// Largest total dimension to test.
        #[arg(long, default_value_t = 3)]
        max_total: i64,
        /// Primes to test, comma-separated.
        #[arg(long, default_value = "2,3", value_delimiter = ',')]
        primes: Vec<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Input(_) | Error::Parse { .. } => 2,
                Error::Resource(_) => 3,
                Error::Internal(_) => 4,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let cache = match &cli.cache {
        Some(path) => KacCache::with_file(path)?,
        None => KacCache::in_memory(),
    };
    match &cli.command {
        Command::Kac { quiver, dim } => {
            let quiver = load_quiver(quiver)?;
            let alpha = DimVector::parse_csv(dim)?;
            let result = cached_kac(&cache, &quiver, &alpha)?;
            if cli.machine {
                println!("{}\t{}", result.polynomial.render(), result.value_at_one);
            } else {
                println!("{}", result.polynomial.render());
                println!("a(1)={}", result.value_at_one);
            }
            Ok(0)
        }
        Command::Root { quiver, dim } => {
            let quiver = load_quiver(quiver)?;
            let alpha = DimVector::parse_csv(dim)?;
            let class = quiver.classify_root(&alpha)?;
            let tits = quiver.tits_form(&alpha)?;
            if cli.machine {
                println!("{class}\t{tits}");
            } else {
                println!("{class}");
                println!("tits={tits}");
            }
            Ok(0)
        }
        Command::Cover(CoverCmd::Enumerate { quiver, dim }) => {
            let quiver = load_quiver(quiver)?;
            let alpha = DimVector::parse_csv(dim)?;
            let classes = enumerate_compatible(&quiver, &alpha, cli.node_cap)?;
            for class in &classes {
                let (v, a) =
                    (class.support_quiver.num_vertices(), class.support_quiver.num_arrows());
                if cli.machine {
                    println!("{}\t{}\t{}", class.serialization, v, a);
                } else {
                    println!("β={} support={}v/{}a", class.serialization, v, a);
                }
            }
            if !cli.machine {
                println!("classes={}", classes.len());
            }
            Ok(0)
        }
        Command::Cover(CoverCmd::Verify { quiver, dim }) => {
            let quiver = load_quiver(quiver)?;
            let alpha = DimVector::parse_csv(dim)?;
            let report =
                verify_main_theorem(&quiver, &alpha, cli.node_cap, cli.threads, &cache)?;
            if cli.machine {
                for (class, value) in &report.contributions {
                    println!(
                        "{}\t{}\t{}\t{}",
                        class.serialization,
                        class.support_quiver.num_vertices(),
                        class.support_quiver.num_arrows(),
                        value
                    );
                }
                println!(
                    "{}\t{}\t{}",
                    report.lhs,
                    report.rhs,
                    if report.ok { "OK" } else { "FAIL" }
                );
            } else {
                print!("{}", report.render());
            }
            Ok(if report.ok { 0 } else { 1 })
        }
        Command::Trees(TreesCmd::Spanning { quiver }) => {
            let quiver = load_quiver(quiver)?;
            println!("{}", spanning_tree_count(&quiver));
            Ok(0)
        }
        Command::Trees(TreesCmd::ThinCheck { quiver }) => {
            let quiver = load_quiver(quiver)?;
            let check = thin_kac_at_one_check(&quiver)?;
            let status = if check.ok { "OK" } else { "FAIL" };
            if cli.machine {
                println!("{}\t{}\t{}", check.kac_one, check.spanning, status);
            } else {
                println!("a(1)={} spanning={} {}", check.kac_one, check.spanning, status);
            }
            Ok(if check.ok { 0 } else { 1 })
        }
        Command::Trees(TreesCmd::Coverthin { m, d, e }) => {
            let count = cover_thin_count(CoverThinParams::new(*m, *d, *e)?)?;
            println!("{count}");
            Ok(0)
        }
        Command::Trees(TreesCmd::Growth { m, k, dmax }) => {
            let k: Ratio<i64> = k
                .parse()
                .map_err(|e| Error::input(format!("invalid slope {k:?}: {e}")))?;
            let rows = growth_report(*m, k, *dmax)?;
            print!("{}", render_growth_table(&rows));
            Ok(0)
        }
        Command::Oracle(OracleCmd::Brute { quiver, dim, p }) => {
            let quiver = load_quiver(quiver)?;
            let alpha = DimVector::parse_csv(dim)?;
            println!("{}", count_abs_indec(&quiver, &alpha, *p)?);
            Ok(0)
        }
        Command::Oracle(OracleCmd::Trees { m, d, e }) => {
            println!("{}", enumerate_cover_thin_trees(*m, *d, *e)?);
            Ok(0)
        }
        Command::Oracle(OracleCmd::Sweep { max_total, primes }) => {
            let report = oracle_sweep(*max_total, primes, cli.threads)?;
            if cli.machine {
                for line in &report.lines {
                    let oracle = line
                        .oracle
                        .map_or_else(|| "-".to_string(), |v| v.to_string());
                    println!(
                        "{}\t{}\t{}\t{}\t{}\t{}",
                        line.quiver, line.alpha, line.p, line.engine, oracle, line.status
                    );
                }
            } else {
                print!("{}", report.render());
            }
            Ok(if report.ok() { 0 } else { 1 })
        }
    }
}

/// Resolves `--quiver`: one of the builtin families (`kronecker:m`,
/// `loops:g`, `cycle:n`, `path:n`, `star:k`) or a quiver file path.
fn load_quiver(spec: &str) -> Result<Quiver> {
    if let Some((family, param)) = spec.split_once(':') {
        if matches!(family, "kronecker" | "loops" | "cycle" | "path" | "star") {
            let n: usize = param
                .parse()
                .map_err(|_| Error::input(format!("invalid {family} parameter {param:?}")))?;
            return match family {
                "kronecker" => Ok(Quiver::kronecker(n)),
                "loops" => Ok(Quiver::loops(n)),
                "cycle" => Quiver::cycle(n),
                "path" => Quiver::path(n),
                _ => Quiver::star(n),
            };
        }
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::input(format!("cannot read quiver file {spec:?}: {e}")))?;
    parse_quiver(&text)
}

/// Parses the quiver file format: `vertex <id>` and `arrow <id> <src> <dst>`
/// lines, `#` comments, blank lines ignored; vertices must be declared
/// before arrows reference them.
fn parse_quiver(text: &str) -> Result<Quiver> {
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut vertex_ids: HashSet<&str> = HashSet::new();
    let mut arrow_ids: HashSet<&str> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "vertex" => {
                if tokens.len() != 2 {
                    return Err(Error::parse(line_no, "expected: vertex <id>"));
                }
                if !vertex_ids.insert(tokens[1]) {
                    return Err(Error::parse(
                        line_no,
                        format!("duplicate vertex id {:?}", tokens[1]),
                    ));
                }
                vertices.push(tokens[1].to_string());
            }
            "arrow" => {
                if tokens.len() != 4 {
                    return Err(Error::parse(line_no, "expected: arrow <id> <src> <dst>"));
                }
                let (id, src, dst) = (tokens[1], tokens[2], tokens[3]);
                if !arrow_ids.insert(id) {
                    return Err(Error::parse(line_no, format!("duplicate arrow id {id:?}")));
                }
                for v in [src, dst] {
                    if !vertex_ids.contains(v) {
                        return Err(Error::parse(
                            line_no,
                            format!("arrow references undeclared vertex {v:?}"),
                        ));
                    }
                }
                arrows.push((id.to_string(), src.to_string(), dst.to_string()));
            }
            other => {
                return Err(Error::parse(line_no, format!("unknown directive {other:?}")));
            }
        }
    }
    Quiver::new(vertices, arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_file_round_trip() {
        let q = parse_quiver("vertex i\nvertex j\narrow a i j\n").unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.num_arrows(), 1);
        assert_eq!(q.canonical_serialization(), "vertices=i,j;arrows=a:i>j");
        // Comments and blank lines are skipped, trailing comments too.
        let commented = "# a path\n\nvertex i\nvertex j # sink\narrow a i j\n";
        assert_eq!(parse_quiver(commented).unwrap(), q);
    }

    #[test]
    fn quiver_file_errors_carry_line_numbers() {
        let check = |text: &str, line: usize| match parse_quiver(text).unwrap_err() {
            Error::Parse { line: l, .. } => assert_eq!(l, line, "{text:?}"),
            other => panic!("expected parse error for {text:?}, got {other}"),
        };
        check("arrow a i j", 1);
        check("vertex i\nvertex i", 2);
        check("vertex i\nvertex j\narrow a i k", 3);
        check("vertex i\narrow a", 2);
        check("vertx i", 1);
        check("vertex i\narrow a i j\nvertex j", 2);
    }

    #[test]
    fn builtin_specs_resolve() {
        assert_eq!(load_quiver("kronecker:3").unwrap().num_arrows(), 3);
        assert_eq!(load_quiver("loops:2").unwrap().num_vertices(), 1);
        assert_eq!(load_quiver("cycle:4").unwrap().num_arrows(), 4);
        assert_eq!(load_quiver("path:3").unwrap().num_arrows(), 2);
        let star = load_quiver("star:4").unwrap();
        assert_eq!(star.num_vertices(), 5);
        assert!(star.arrows().iter().all(|a| star.vertex_id(a.dst) == "0"));
        assert!(load_quiver("kronecker:x").is_err());
        assert!(load_quiver("no-such-file").is_err());
    }
}
