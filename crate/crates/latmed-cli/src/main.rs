//! `latmed`: build lattice files, decide lattice properties, compute median
//! sets, and run verification campaigns.
//!
//! Exit codes: 0 when the property holds or no violation is found, 1 when it
//! fails or a violation is found, 2 on I/O, parse, or parameter errors.
//! Machine-readable results go to stdout and are byte-deterministic;
//! diagnostics go to stderr. `LATMED_THREADS` fixes the worker count.

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use latmed_cli::format::LatticeFile;
use latmed_core::{
    boolean, breadth, build_gk, build_lnk, chain, check_c1_property, counterexample_report,
    enumerate_lattices, figure1, glued_sum, median_set, product, remove_interval, verify_lemmas,
    verify_product_laws, verify_theorem_a, CampaignResult, IntervalRemovalSpec, Lattice, Lnk,
    ProductSampleSpec, Profile,
};
use std::path::{Path, PathBuf};

const PROFILE_CAP: usize = 24;

#[derive(Parser)]
#[command(
    name = "latmed",
    version,
    about = "Finite-lattice construction, median analysis, and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a lattice and write it as a lattice file
    Build {
        #[command(subcommand)]
        family: Family,
    },
    /// Decide a property of the lattice in a file
    Check { file: PathBuf, property: Property },
    /// Compute the median set and majority bounds of a profile
    Median {
        file: PathBuf,
        /// Comma-separated element indices, repetition allowed
        #[arg(long, value_delimiter = ',', required = true)]
        profile: Vec<usize>,
        /// Print the full analysis instead of the summary
        #[arg(long)]
        report: bool,
    },
    /// Scan all profiles up to a size bound for a median escaping the profile join
    C1check {
        file: PathBuf,
        #[arg(long = "max-k", default_value_t = 3)]
        max_k: usize,
    },
    /// Run a verification campaign over the enumerated small lattices
    Verify {
        #[arg(long = "max-size", default_value_t = 7)]
        max_size: usize,
        #[arg(long = "max-k", default_value_t = 3)]
        max_k: usize,
        #[arg(long)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Total order with n elements
    Chain {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        o: Option<PathBuf>,
    },
    /// Product of k two-element chains
    Boolean {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        o: Option<PathBuf>,
    },
    /// Direct product of the lattices in the given files
    Product {
        #[arg(num_args = 2.., required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        o: Option<PathBuf>,
    },
    /// Stack the second lattice atop the first, identifying top with bottom
    Gluedsum {
        lower: PathBuf,
        upper: PathBuf,
        #[arg(long)]
        o: Option<PathBuf>,
    },
    /// Remove the interval [e, f] from the lattice in a file
    RemoveInterval {
        file: PathBuf,
        e: usize,
        f: usize,
        #[arg(long)]
        o: Option<PathBuf>,
    },
    /// Semimodular breadth-k lattice whose designated profile has a median
    /// escaping the profile join
    Lnk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        o: Option<PathBuf>,
    },
    /// Glued sum of the breadth-3 counterexample and a boolean lattice
    Gk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        o: Option<PathBuf>,
    },
    /// Nine-element semimodular fixture of breadth 2
    Figure1 {
        #[arg(long)]
        o: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Lattice,
    Graded,
    Semimodular,
    LowerSemimodular,
    Modular,
    Distributive,
    Breadth,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    TheoremA,
    Lemmas,
    Products,
}

fn main() {
    if let Some(value) = std::env::var_os("LATMED_THREADS") {
        let threads = value
            .to_str()
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&t| t >= 1);
        let Some(threads) = threads else {
            eprintln!("error: LATMED_THREADS must be a positive worker count");
            std::process::exit(2);
        };
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("the global thread pool is configured once, before any use");
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Build { family } => cmd_build(family),
        Command::Check { file, property } => cmd_check(&file, property),
        Command::Median {
            file,
            profile,
            report,
        } => cmd_median(&file, &profile, report),
        Command::C1check { file, max_k } => cmd_c1check(&file, max_k),
        Command::Verify {
            max_size,
            max_k,
            suite,
        } => cmd_verify(max_size, max_k, suite),
    };
    std::process::exit(code);
}

fn fail(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn read_file(path: &Path) -> Result<LatticeFile, i32> {
    let text =
        std::fs::read_to_string(path).map_err(|e| fail(format_args!("{}: {e}", path.display())))?;
    LatticeFile::parse(&text).map_err(|e| fail(format_args!("{}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<Lattice, i32> {
    read_file(path)?
        .build()
        .map_err(|e| fail(format_args!("{}: {e}", path.display())))
}

fn coords(c: &[usize]) -> String {
    format!("({})", c.iter().join(", "))
}

fn cmd_build(family: Family) -> i32 {
    let built: Result<(Lattice, Vec<String>, Option<PathBuf>), i32> = match family {
        Family::Chain { n, o } => {
            if n == 0 {
                return fail("a chain needs at least one element");
            }
            Ok((chain(n), vec![], o))
        }
        Family::Boolean { k, o } => {
            if k > 12 {
                return fail("boolean lattices are supported up to k = 12");
            }
            Ok((boolean(k), vec![], o))
        }
        Family::Product { files, o } => {
            let factors: Result<Vec<Lattice>, i32> =
                files.iter().map(|p| load_lattice(p)).collect();
            match factors.and_then(|f| product(&f).map_err(fail)) {
                Ok(p) => Ok((p.into_lattice(), vec![], o)),
                Err(code) => Err(code),
            }
        }
        Family::Gluedsum { lower, upper, o } => {
            let lower = load_lattice(&lower);
            let upper = load_lattice(&upper);
            match (lower, upper) {
                (Ok(lower), Ok(upper)) => Ok((glued_sum(&lower, &upper), vec![], o)),
                (Err(code), _) | (_, Err(code)) => Err(code),
            }
        }
        Family::RemoveInterval { file, e, f, o } => match load_lattice(&file) {
            Ok(base) => {
                let spec = IntervalRemovalSpec { base, e, f };
                match remove_interval(&spec) {
                    Ok(l) => Ok((l, vec![], o)),
                    Err(e) => return fail(e),
                }
            }
            Err(code) => Err(code),
        },
        Family::Lnk { n, k, o } => match build_lnk(n, k) {
            Ok(lnk) => {
                let extras = vec![
                    format!(
                        "removed: e {} to f {} (ambient coordinates)",
                        coords(&lnk.e),
                        coords(&lnk.f)
                    ),
                    format!("z: {}", lnk.z),
                    format!("profile: {}", lnk.profile.iter().join(",")),
                ];
                Ok((lnk.into_lattice(), extras, o))
            }
            Err(e) => return fail(e),
        },
        Family::Gk { k, o } => match build_gk(k) {
            Ok(gk) => {
                let extras = vec![
                    format!("z: {}", gk.z),
                    format!("profile: {}", gk.profile.iter().join(",")),
                ];
                Ok((gk.lattice, extras, o))
            }
            Err(e) => return fail(e),
        },
        Family::Figure1 { o } => Ok((figure1(), vec![], o)),
    };
    let (lattice, extras, out) = match built {
        Ok(t) => t,
        Err(code) => return code,
    };

    let text = LatticeFile::from_lattice(&lattice).print();
    let mut summary = vec![
        format!("size: {}", lattice.n()),
        format!("length: {}", lattice.length()),
        format!("breadth: {}", breadth(&lattice)),
        format!("semimodular: {}", lattice.is_semimodular()),
    ];
    summary.extend(extras);

    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                return fail(format_args!("{}: {e}", path.display()));
            }
            for line in summary {
                println!("{line}");
            }
        }
        None => {
            print!("{text}");
            for line in summary {
                eprintln!("{line}");
            }
        }
    }
    0
}

fn cmd_check(path: &Path, property: Property) -> i32 {
    let file = match read_file(path) {
        Ok(f) => f,
        Err(code) => return code,
    };
    if let Property::Lattice = property {
        return match file.build() {
            Ok(_) => {
                println!("true");
                0
            }
            Err(e) => {
                eprintln!("{e}");
                println!("false");
                1
            }
        };
    }
    let l = match file.build() {
        Ok(l) => l,
        Err(e) => return fail(format_args!("{}: {e}", path.display())),
    };
    let holds = match property {
        Property::Lattice => unreachable!("handled above"),
        Property::Graded => l.is_graded(),
        Property::Semimodular => l.is_semimodular(),
        Property::LowerSemimodular => l.is_lower_semimodular(),
        Property::Modular => l.is_modular(),
        Property::Distributive => l.is_distributive(),
        Property::Breadth => {
            println!("{}", breadth(&l));
            return 0;
        }
    };
    println!("{holds}");
    if holds {
        0
    } else {
        1
    }
}

/// Rebuilds the removal context when the file carries an unmodified
/// `lnk-<n>-<k>` construction, so reports can cross-check the closed-form
/// remoteness and the designated element.
fn lnk_context(l: &Lattice) -> Option<Lnk> {
    let (n, k) = l.name()?.strip_prefix("lnk-")?.split_once('-')?;
    let lnk = build_lnk(n.parse().ok()?, k.parse().ok()?).ok()?;
    (lnk.lattice().n() == l.n() && lnk.lattice().covers() == l.covers()).then_some(lnk)
}

fn cmd_median(path: &Path, entries: &[usize], report: bool) -> i32 {
    let l = match load_lattice(path) {
        Ok(l) => l,
        Err(code) => return code,
    };
    if entries.len() > PROFILE_CAP {
        return fail(format_args!(
            "profile has {} entries, more than the supported {PROFILE_CAP}",
            entries.len()
        ));
    }
    let profile = match Profile::new(entries.to_vec(), &l) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let analysis = median_set(&l, &profile);
    if report {
        let context = lnk_context(&l);
        print!("{}", counterexample_report(&l, &profile, context.as_ref()));
    } else {
        println!("medians: ({})", analysis.medians.iter().join(", "));
        println!("c1: {}", analysis.c1);
        println!("m-lower: {}", analysis.m_lower);
        println!("m-upper: {}", analysis.m_upper);
        println!("min-remoteness: {}", analysis.min_remoteness);
        if let Some(m) = analysis.violation {
            println!("violation: median {m} is not below c1");
        }
    }
    if analysis.violation.is_some() {
        1
    } else {
        0
    }
}

fn cmd_c1check(path: &Path, max_k: usize) -> i32 {
    if max_k == 0 {
        return fail("max-k must be at least 1");
    }
    let l = match load_lattice(path) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let report = check_c1_property(&l, max_k);
    println!("{report}");
    if report.holds() {
        0
    } else {
        1
    }
}

/// Writes a violating lattice next to the working directory so the finding
/// can be rechecked without rerunning the campaign.
fn dump_reproductions(result: &CampaignResult) {
    for violation in &result.violations {
        let Some(rest) = violation.lattice.strip_prefix("enum") else {
            continue;
        };
        let Some((n, index)) = rest.split_once('-') else {
            continue;
        };
        let (Ok(n), Ok(index)) = (n.parse::<usize>(), index.parse::<usize>()) else {
            continue;
        };
        let Ok(all) = enumerate_lattices(n) else {
            continue;
        };
        let Some(l) = all.get(index) else { continue };
        let path = format!("repro-{}.lat", violation.lattice);
        match std::fs::write(&path, LatticeFile::from_lattice(l).print()) {
            Ok(()) => eprintln!(
                "reproduction written to {path} (profile {})",
                coords(&violation.profile)
            ),
            Err(e) => eprintln!("could not write {path}: {e}"),
        }
    }
}

fn cmd_verify(max_size: usize, max_k: usize, suite: Suite) -> i32 {
    if max_size == 0 || max_k == 0 {
        return fail("max-size and max-k must be at least 1");
    }
    let result = match suite {
        Suite::TheoremA => verify_theorem_a(max_size, max_k),
        Suite::Lemmas => verify_lemmas(max_size, max_k),
        Suite::Products => verify_product_laws(&ProductSampleSpec {
            max_factor_size: max_size,
            k_max: max_k,
            ..ProductSampleSpec::default()
        }),
    };
    let result = match result {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    println!("{result}");
    if result.fails == 0 {
        0
    } else {
        if let Suite::TheoremA = suite {
            dump_reproductions(&result);
        }
        1
    }
}
