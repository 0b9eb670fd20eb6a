use std::error::Error;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cambrian::io::{
    resolve_system, summary_json, write_reports, DiagramDocument, NodeNames, RunConfig,
};
use cambrian::shelling::{
    analyze, analyze_all, el_check, homotopy_type, invariance_check, maximal_chains, mobius_chains,
    mobius_hall, mobius_recursive, spanning_tree, Summary,
};
use cambrian::sortable::{
    congruence_fibers, is_sortable_blocks, is_sortable_closure, is_sortable_recursive, pi_down,
    sorting_word,
};
use cambrian::{CambrianPoset, CoxeterSystem, GroupElement};

#[derive(Parser)]
#[command(
    name = "cambrian",
    version,
    about = "Cambrian semilattices of Coxeter groups: sorting words, EL-labels, Möbius values"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// TOML system file with `generators` and `matrix`.
    #[arg(long, conflicts_with = "kind")]
    system: Option<PathBuf>,
    /// Built-in type instead of a file: A3, B3, D4, H3, F4, I2(5), A~2, ...
    #[arg(long = "type")]
    kind: Option<String>,
    /// Coxeter element as a comma-separated word; defaults to s1,...,sn.
    #[arg(long)]
    gamma: Option<String>,
    /// Length bound; defaults to the length of the longest element.
    #[arg(long)]
    cap: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Pair {
    /// Bottom of the interval (generator names; empty or `e` for the identity).
    #[arg(long, default_value = "")]
    lower: String,
    /// Top of the interval.
    #[arg(long)]
    upper: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Report,
    Diagram,
}

#[derive(Clone, Copy, ValueEnum)]
enum Names {
    Canonical,
    Sorting,
}

#[derive(Subcommand)]
enum Command {
    /// Sorting word and position set of an element.
    Sortword {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Sortability by all three characterizations.
    Sortable {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// The largest sortable element below a word.
    Project {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Build the truncated poset, analyse every interval, write the report stream.
    Build {
        #[command(flatten)]
        common: Common,
        /// Summary JSON file; printed to stderr when absent.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Full report of one interval.
    Interval {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: Pair,
    },
    /// EL verification of one interval, or of all intervals when no pair is given.
    Elcheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lower: Option<String>,
        #[arg(long)]
        upper: Option<String>,
    },
    /// Möbius value by recursion, chain count and falling chains.
    Mobius {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: Pair,
    },
    /// Homotopy type of the open interval.
    Homotopy {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: Pair,
    },
    /// Fibers of the projection over a finite group.
    Fibers {
        #[command(flatten)]
        common: Common,
    },
    /// Compare chain censuses across all reduced words of gamma.
    Invariance {
        #[command(flatten)]
        common: Common,
    },
    /// Export the poset as DOT or as the report stream.
    Export {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "diagram")]
        format: Format,
        #[arg(long, value_enum, default_value = "sorting")]
        names: Names,
        /// Whole-group weak order with projection fibers grouped.
        #[arg(long)]
        fibers: bool,
    },
}

type Outcome = Result<bool, Box<dyn Error>>;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn config(common: &Common) -> Result<RunConfig, Box<dyn Error>> {
    let sys = resolve_system(common.system.as_deref(), common.kind.as_deref())?;
    Ok(RunConfig::new(sys, common.gamma.as_deref(), common.cap)?)
}

fn output(common: &Common) -> Result<Box<dyn Write>, Box<dyn Error>> {
    Ok(match &common.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn element(sys: &CoxeterSystem, text: &str) -> Result<GroupElement, Box<dyn Error>> {
    let t = text.trim();
    if t == "e" || t == "ε" {
        return Ok(sys.identity());
    }
    Ok(sys.parse_element(t)?)
}

fn endpoints(
    poset: &CambrianPoset,
    lower: &str,
    upper: &str,
) -> Result<(usize, usize), Box<dyn Error>> {
    let sys = poset.system();
    let u = poset.locate(&element(sys, lower)?)?;
    let v = poset.locate(&element(sys, upper)?)?;
    poset.interval(u, v)?;
    Ok((u, v))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Sortword { common, word } => {
            let cfg = config(&common)?;
            let sys = &cfg.system;
            let w = element(sys, &word)?;
            let sw = sorting_word(sys, &w, &cfg.gamma)?;
            let alpha: Vec<String> = sw.alpha().iter().map(usize::to_string).collect();
            let mut out = output(&common)?;
            writeln!(out, "{}", sw.format(sys))?;
            writeln!(out, "alpha: {{{}}}", alpha.join(","))?;
            writeln!(out, "sortable: {}", sw.is_nested())?;
            Ok(true)
        }
        Command::Sortable { common, word } => {
            let cfg = config(&common)?;
            let sys = &cfg.system;
            let w = element(sys, &word)?;
            let verdicts = [
                ("blocks", is_sortable_blocks(sys, &w, &cfg.gamma)),
                ("recursion", is_sortable_recursive(sys, &w, &cfg.gamma)),
                ("closure", is_sortable_closure(sys, &w, &cfg.gamma)),
            ];
            let mut out = output(&common)?;
            writeln!(out, "sortable: {}", verdicts[0].1)?;
            for (name, v) in verdicts {
                writeln!(out, "  {name}: {v}")?;
            }
            Ok(verdicts.iter().all(|v| v.1 == verdicts[0].1))
        }
        Command::Project { common, word } => {
            let cfg = config(&common)?;
            let sys = &cfg.system;
            let w = element(sys, &word)?;
            let p = pi_down(sys, &w, &cfg.gamma);
            let mut out = output(&common)?;
            writeln!(out, "{}", sys.format_element(&p))?;
            writeln!(
                out,
                "sorting word: {}",
                sorting_word(sys, &p, &cfg.gamma)?.format(sys)
            )?;
            Ok(true)
        }
        Command::Build { common, summary } => {
            let cfg = config(&common)?;
            let poset = cfg.build();
            let reports = analyze_all(&poset);
            write_reports(output(&common)?, &reports)?;
            let s = Summary::of(&poset, &reports);
            let tree = spanning_tree(&poset);
            match summary {
                Some(path) => std::fs::write(path, summary_json(&s))?,
                None => eprintln!("{}", summary_json(&s)),
            }
            Ok(s.all_verified() && tree.verified())
        }
        Command::Interval { common, pair } => {
            let poset = config(&common)?.build();
            let (u, v) = endpoints(&poset, &pair.lower, &pair.upper)?;
            let r = analyze(&poset.interval(u, v)?);
            let mut out = output(&common)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?;
            Ok(r.el_pass && r.mobius_consistent() && r.nuclear_consistent())
        }
        Command::Elcheck {
            common,
            lower,
            upper,
        } => {
            let poset = config(&common)?.build();
            let pairs = match upper {
                Some(upper) => vec![endpoints(&poset, lower.as_deref().unwrap_or(""), &upper)?],
                None => poset.comparable_pairs(),
            };
            let mut out = output(&common)?;
            let mut failures = 0;
            for (u, v) in pairs.iter().copied() {
                let chains = maximal_chains(&poset.interval(u, v)?);
                let verdict = el_check(&chains);
                if let cambrian::shelling::ElVerdict::Fail(f) = &verdict {
                    failures += 1;
                    writeln!(out, "FAIL [{}, {}]: {f}", poset.label(u), poset.label(v))?;
                }
            }
            writeln!(out, "{} intervals, {} EL failures", pairs.len(), failures)?;
            Ok(failures == 0)
        }
        Command::Mobius { common, pair } => {
            let poset = config(&common)?.build();
            let (u, v) = endpoints(&poset, &pair.lower, &pair.upper)?;
            let interval = poset.interval(u, v)?;
            let chains = maximal_chains(&interval);
            let verdict = el_check(&chains);
            let rec = mobius_recursive(&interval);
            let hall = mobius_hall(&interval);
            let falling = mobius_chains(&chains, &verdict);
            let mut out = output(&common)?;
            writeln!(out, "recursion: {rec}")?;
            writeln!(out, "chain count: {hall}")?;
            match &falling {
                Ok(m) => writeln!(out, "falling chains: {m}")?,
                Err(e) => writeln!(out, "falling chains: {e}")?,
            }
            Ok(rec == hall && falling.as_ref().ok() == Some(&rec))
        }
        Command::Homotopy { common, pair } => {
            let poset = config(&common)?.build();
            let (u, v) = endpoints(&poset, &pair.lower, &pair.upper)?;
            let interval = poset.interval(u, v)?;
            let chains = maximal_chains(&interval);
            let h = homotopy_type(&chains, &el_check(&chains))?;
            let mut out = output(&common)?;
            writeln!(out, "{h}")?;
            writeln!(out, "nuclear: {}", interval.is_nuclear())?;
            let spherical = matches!(h, cambrian::shelling::HomotopyType::Sphere { .. });
            Ok(spherical == interval.is_nuclear())
        }
        Command::Fibers { common } => {
            let cfg = config(&common)?;
            let sys = &cfg.system;
            let fibers = congruence_fibers(sys, &cfg.gamma)?;
            let mut out = output(&common)?;
            for f in &fibers {
                let members: Vec<String> = f.members.iter().map(|w| word_or_e(sys, w)).collect();
                writeln!(out, "{}: {}", word_or_e(sys, &f.bottom), members.join(", "))?;
            }
            writeln!(out, "{} fibers", fibers.len())?;
            Ok(true)
        }
        Command::Invariance { common } => {
            let cfg = config(&common)?;
            let words = cfg.gamma.reduced_words(&cfg.system);
            let r = invariance_check(&cfg.system, &words, cfg.cap)?;
            let mut out = output(&common)?;
            writeln!(out, "reduced words: {}", r.words.join("  "))?;
            writeln!(out, "{} elements, {} intervals", r.elements, r.intervals)?;
            for (u, v, w) in &r.mismatches {
                writeln!(out, "MISMATCH [{u}, {v}] under {w}")?;
            }
            writeln!(out, "consistent: {}", r.consistent())?;
            Ok(r.consistent())
        }
        Command::Export {
            common,
            format,
            names,
            fibers,
        } => {
            let cfg = config(&common)?;
            let mut out = output(&common)?;
            match format {
                Format::Diagram => {
                    let doc = if fibers {
                        DiagramDocument::fibers(&cfg.system, &cfg.gamma)?
                    } else {
                        let names = match names {
                            Names::Canonical => NodeNames::Canonical,
                            Names::Sorting => NodeNames::Sorting,
                        };
                        DiagramDocument::cambrian(&cfg.build(), names)
                    };
                    out.write_all(doc.to_dot().as_bytes())?;
                }
                Format::Report => {
                    let poset = cfg.build();
                    write_reports(out, &analyze_all(&poset))?;
                }
            }
            Ok(true)
        }
    }
}

fn word_or_e(sys: &CoxeterSystem, w: &GroupElement) -> String {
    if w.is_identity() {
        "e".into()
    } else {
        sys.format_element(w)
    }
}
