use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ellgroup::spectra::Topology;
use ellgroup::Frame;
use ellgroup_cli::format::{self, FormatError, Instance};
use ellgroup_cli::frame_cap_from_env;
use ellgroup_cli::fuzz::{self, FuzzParams};
use ellgroup_cli::report::{self, AnalyzeOptions, ALL_TOPOLOGIES};

#[derive(Parser)]
#[command(name = "ellgroup", version, about = "Decide (M) and (Y) for finite-rank lattice-ordered groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyArg {
    Hk,
    Inv,
    Patch,
}

#[derive(Subcommand)]
enum Command {
    /// Decide every property and run the theorem checks on an instance file.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum)]
        topology: Option<TopologyArg>,
        #[arg(long)]
        json: bool,
    },
    /// Run the harness over a seeded random corpus.
    Fuzz {
        #[arg(long, default_value_t = 300)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_indices: usize,
        #[arg(long, default_value_t = 2)]
        max_depth: usize,
        #[arg(long, default_value_t = 3)]
        max_gens: usize,
        #[arg(long, default_value_t = 3)]
        coeff_bound: u64,
        #[arg(long)]
        json: bool,
    },
    /// Decide (M) and (Y) for G+B over a family of primes given by level vectors.
    Gb {
        file: PathBuf,
        #[arg(long)]
        primes: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print the frame of convex subgroups.
    Frame {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the prime spectrum and its basic opens.
    Spec {
        file: PathBuf,
        #[arg(long, value_enum)]
        topology: Option<TopologyArg>,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Guard(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Guard(g) => Failure::Guard(g.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn topologies(t: Option<TopologyArg>) -> &'static [Topology] {
    match t {
        None => ALL_TOPOLOGIES,
        Some(TopologyArg::Hk) => &[Topology::HullKernel],
        Some(TopologyArg::Inv) => &[Topology::Inverse],
        Some(TopologyArg::Patch) => &[Topology::Patch],
    }
}

fn load(path: &PathBuf, cap: usize) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(format::build(&format::parse(&text)?, cap)?)
}

fn emit<T: serde::Serialize>(value: &T, json: bool, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
    } else {
        print!("{}", text());
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let cap = frame_cap_from_env();
    match cli.command {
        Command::Analyze { file, topology, json } => {
            let inst = load(&file, cap)?;
            let opts = AnalyzeOptions { cap, topologies: topologies(topology), ..AnalyzeOptions::default() };
            let r = report::analyze(&inst, &opts)?;
            emit(&r, json, || report::render_text(&r));
            Ok(r.defects.is_empty())
        }
        Command::Fuzz { count, seed, max_indices, max_depth, max_gens, coeff_bound, json } => {
            if max_indices == 0 || max_depth == 0 || max_gens == 0 {
                return Err(Failure::Usage("size parameters must be positive".into()));
            }
            let p =
                FuzzParams { count, seed, max_indices, max_depth, max_gens, coeff_bound, cap, ..FuzzParams::default() };
            let r = fuzz::run(&p)?;
            emit(&r, json, || fuzz::render_text(&r));
            Ok(r.summary.defects == 0)
        }
        Command::Gb { file, primes, json } => {
            let mut inst = load(&file, cap)?;
            if let Some(p) = primes {
                inst.primes = Some(format::parse_level_list(&p)?.into_iter().map(ellgroup::LevelPattern).collect());
                for lp in inst.primes.iter().flatten() {
                    inst.group.ambient().check_pattern(lp).map_err(|e| Failure::Usage(e.to_string()))?;
                }
            }
            let Some(ps) = inst.primes.clone() else {
                return Err(Failure::Usage("no primes given: use --primes or a primes line".into()));
            };
            let frame = Frame::with_cap(inst.group.clone(), cap).map_err(|e| Failure::from(FormatError::from(e)))?;
            let fam = report::family_of(&frame, &ps)?;
            let mut defects = Vec::new();
            let opts = AnalyzeOptions { cap, ..AnalyzeOptions::default() };
            let g = report::gb_section(&fam, inst.unit.as_ref(), &opts, &mut defects);
            let out = serde_json::json!({ "gb": g, "defects": defects });
            emit(&out, json, || {
                let mut s = format!("G+B over {:?}: martinez {}  yosida {}\n", g.primes, g.martinez, g.yosida);
                if let Some(w) = &g.witness {
                    s += &format!("witness {}: f={} h={}\n", w.kind, w.f, w.h);
                }
                for p in &g.per_prime {
                    s += &format!(
                        "prime {:?}: p_element {} intersection {} patch {} plus_b_is_d {}\n",
                        p.levels, p.p_element, p.intersection_condition, p.patch_condition, p.prime_plus_b_is_d
                    );
                }
                for d in &defects {
                    s += &format!("defect: {d}\n");
                }
                s
            });
            Ok(defects.is_empty())
        }
        Command::Frame { file, json } => {
            let inst = load(&file, cap)?;
            let frame = Frame::with_cap(inst.group, cap).map_err(|e| Failure::from(FormatError::from(e)))?;
            let f = report::frame_summary(&frame);
            emit(&f, json, || {
                let mut s = format!("{} convex subgroups\n", f.elements);
                for g in &f.subgroups {
                    s += &format!(
                        "#{} levels {:?}{}{}{}{}\n",
                        g.id,
                        g.levels,
                        if g.prime { " prime" } else { "" },
                        if g.minimal_prime { " minimal" } else { "" },
                        if g.maximal { " maximal" } else { "" },
                        if g.d_subgroup { " d" } else { "" },
                    );
                }
                for [a, b] in &f.hasse_edges {
                    s += &format!("#{a} < #{b}\n");
                }
                s
            });
            Ok(true)
        }
        Command::Spec { file, topology, json } => {
            let inst = load(&file, cap)?;
            let frame = Frame::with_cap(inst.group, cap).map_err(|e| Failure::from(FormatError::from(e)))?;
            let sp = report::spectrum_summaries(&frame, topologies(topology));
            emit(&sp, json, || {
                let mut s = String::new();
                for t in &sp {
                    s += &format!("{}: points {:?}\n", t.topology, t.points);
                    for o in &t.opens {
                        s += &format!("  {} = {:?}\n", o.label, o.members);
                    }
                }
                s
            });
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
