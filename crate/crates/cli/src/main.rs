use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use grigorchuk_core::full_group::{
    reconstruct_from_stabilizer, schreier_graph, window_oracle, SchreierGraph,
};
use grigorchuk_core::jump::{
    circular_power, orbit_of_starrings, table1, RelationSet, RelationTable,
};
use grigorchuk_core::sft::{
    comb_sft, periodic_points, pseudo_orbit_demo, sft_approximations, union_sft, PeriodicReport,
    Tile, ZSft,
};
use grigorchuk_core::verify::{mutated_alpha_choice, run_all};
use grigorchuk_core::words::letters_to_string;
use grigorchuk_core::{alpha_choice, build_w, Error, Window};

#[derive(Parser)]
#[command(name = "grig", version)]
#[command(about = "Experiments with the Grigorchuk group and its substitutive subshift")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relator table over circular words (w_n α)^p, as CSV
    Table1 {
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        #[arg(long, default_value_t = 50)]
        p_max: usize,
        /// Relators κ^k((ad)^4), κ^k((adacac)^4) for k <= t
        #[arg(long, default_value_t = 6)]
        t: usize,
        /// Collapse the columns from 10 on into one
        #[arg(long)]
        paper_layout: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant checks and print a pass/fail table
    Verify {
        #[arg(long, default_value_t = 10)]
        max_n: u32,
        /// Build the words with a wrong separator rule
        #[arg(long, hide = true)]
        mutate_alpha: bool,
    },
    /// Schreier graph of the starrings of w_n or of (w_n α)^p
    Schreier {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long)]
        circular: bool,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Fail unless the relators of R_t fix every starring
        #[arg(long)]
        require_action: bool,
        #[arg(long, default_value_t = 6)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Three checks on the periodic point (w_n α_n)^Z
    PseudoOrbit {
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Skip relators longer than this
        #[arg(long, default_value_t = usize::MAX, hide_default_value = true)]
        max_relator_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover a hidden window from stabilizer queries
    Stabilizer {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        budget: usize,
        /// The hidden window is cut from w_level
        #[arg(long, default_value_t = 14)]
        level: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subshifts of finite type
    Sft {
        #[command(subcommand)]
        command: SftCommand,
    },
}

#[derive(Subcommand)]
enum SftCommand {
    /// Union of disjoint SFTs on the demo instances
    UnionDemo {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Comb SFT for kZ on demo tiles
    CombDemo {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order-L SFT approximation of the subshift, as JSON
    Approx {
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Periodic points as JSON lines, of approximations or of an SFT file
    Periodic {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
        /// SFT JSON file; replaces the approximations
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("I/O error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn emit(out: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn verdict(ok: bool, what: &str) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification(what.to_string()))
    }
}

fn table_csv(table: &RelationTable, paper_layout: bool) -> String {
    let bit = |b: bool| if b { "1" } else { "0" };
    let split = if paper_layout {
        table.p_max.min(9)
    } else {
        table.p_max
    };
    let mut s = String::from("n\\p");
    for p in 1..=split {
        write!(s, ",{p}").unwrap();
    }
    if split < table.p_max {
        write!(s, ",{}-{}", split + 1, table.p_max).unwrap();
    }
    s.push('\n');
    for n in 1..=table.n_max {
        write!(s, "{n}").unwrap();
        for p in 1..=split {
            write!(s, ",{}", bit(table.get(n, p))).unwrap();
        }
        if split < table.p_max {
            let rest: Vec<bool> = (split + 1..=table.p_max).map(|p| table.get(n, p)).collect();
            let cell = if rest.iter().all(|&b| b) {
                "1"
            } else if rest.iter().all(|&b| !b) {
                "0"
            } else {
                "*"
            };
            write!(s, ",{cell}").unwrap();
        }
        s.push('\n');
    }
    s
}

fn cmd_table1(
    n_max: u32,
    p_max: usize,
    t: usize,
    paper_layout: bool,
    out: &Option<PathBuf>,
) -> Outcome {
    let table = table1(n_max, p_max, t)?;
    emit(out, &table_csv(&table, paper_layout))?;
    verdict(
        table.matches_power_of_two_pattern(),
        "the table differs from the {1, 2, 4, 8} pattern",
    )
}

fn cmd_verify(max_n: u32, mutate: bool) -> Outcome {
    let rule = if mutate {
        mutated_alpha_choice
    } else {
        alpha_choice
    };
    let checks = run_all(max_n, rule)?;
    let mut s = String::new();
    for c in &checks {
        writeln!(s, "{c}").unwrap();
    }
    emit(&None, &s)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    verdict(failed == 0, &format!("{failed} checks failed"))
}

fn render(graph: &SchreierGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dot => graph.to_dot(),
        GraphFormat::Json => graph.to_json() + "\n",
    }
}

fn cmd_schreier(
    n: u32,
    circular: bool,
    p: usize,
    format: GraphFormat,
    require_action: bool,
    t: usize,
    out: &Option<PathBuf>,
) -> Outcome {
    let relations = RelationSet::new(t);
    let (graph, violation) = if circular {
        let c = circular_power(n, p)?;
        let vertices: Vec<_> = c.starrings().collect();
        (schreier_graph(&vertices)?, relations.first_violation(&c))
    } else {
        let w = build_w(n)?;
        let vertices = orbit_of_starrings(&w)?;
        (schreier_graph(&vertices)?, relations.first_violation(&w))
    };
    if require_action {
        if let Some((r, pos)) = violation {
            return Err(Failure::Verification(format!(
                "relator {r} moves starring {pos}; the action is not well defined"
            )));
        }
    }
    emit(out, &render(&graph, format))?;
    Ok(())
}

fn cmd_pseudo_orbit(n: u32, max_relator_len: usize, out: &Option<PathBuf>) -> Outcome {
    let report = pseudo_orbit_demo(n, max_relator_len)?;
    emit(out, &(report.to_json() + "\n"))?;
    verdict(report.passed(), "a pseudo-orbit check failed")
}

fn cmd_stabilizer(seed: u64, budget: usize, level: u32, out: &Option<PathBuf>) -> Outcome {
    let w = build_w(level)?;
    let len = w.len();
    if 2 * budget + 2 >= len {
        return Err(Failure::Usage(format!(
            "budget {budget} needs a level with |w_n| > {}",
            2 * budget + 2
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let origin = rng.gen_range(budget..=len - budget);
    let x = Window::new(w.letters().to_vec(), origin)?;
    let got = reconstruct_from_stabilizer(window_oracle(&x), budget)?;
    let lo = origin - budget / 2;
    let hidden = &w.letters()[lo..lo + budget];
    let mut reversed = hidden.to_vec();
    reversed.reverse();
    let exact = got == hidden;
    let report = json!({
        "seed": seed,
        "level": level,
        "origin": origin,
        "budget": budget,
        "hidden": letters_to_string(hidden),
        "reconstructed": letters_to_string(&got),
        "matches": exact || got == reversed,
        "reversed": !exact && got == reversed,
    });
    emit(
        out,
        &(serde_json::to_string_pretty(&report).unwrap() + "\n"),
    )?;
    verdict(
        exact || got == reversed,
        "the reconstruction does not match",
    )
}

fn union_demos() -> Vec<(ZSft, ZSft)> {
    let sft = |f: &[&str]| ZSft::new("01".chars(), f.iter().copied()).unwrap();
    vec![
        (sft(&["1"]), sft(&["0"])),
        (sft(&["00", "11"]), sft(&["0"])),
        (sft(&["1"]), sft(&["00", "010", "0110"])),
    ]
}

fn language_sets(x: &ZSft, len: usize) -> Result<std::collections::BTreeSet<String>, Error> {
    Ok(x.language_words(len)?.into_iter().collect())
}

fn cmd_union_demo(out: &Option<PathBuf>) -> Outcome {
    let mut reports = Vec::new();
    let mut all_ok = true;
    for (x1, x2) in union_demos() {
        let u = union_sft(&x1, &x2)?;
        let mut ok = true;
        for len in 1..=2 * u.order() {
            let mut expect = language_sets(&x1, len)?;
            expect.extend(language_sets(&x2, len)?);
            ok &= language_sets(&u, len)? == expect;
        }
        all_ok &= ok;
        reports.push(json!({
            "x1": x1.forbidden_words(),
            "x2": x2.forbidden_words(),
            "union": u.forbidden_words(),
            "order": u.order(),
            "languages_equal": ok,
        }));
    }
    emit(
        out,
        &(serde_json::to_string_pretty(&reports).unwrap() + "\n"),
    )?;
    verdict(
        all_ok,
        "a union language differs from the union of languages",
    )
}

fn demo_tiles() -> Vec<Tile> {
    vec![
        Tile {
            symbol: 'x',
            left: 0,
            right: 1,
        },
        Tile {
            symbol: 'y',
            left: 1,
            right: 0,
        },
        Tile {
            symbol: 'z',
            left: 0,
            right: 0,
        },
    ]
}

fn cmd_comb_demo(k: usize, out: &Option<PathBuf>) -> Outcome {
    let tiles = demo_tiles();
    let z = comb_sft(&tiles, k)?;
    let mut phase_ok = true;
    let mut points = 0usize;
    for p in 1..=(4 * k).min(grigorchuk_core::sft::MAX_PERIOD) {
        for c in periodic_points(&z, p)? {
            points += 1;
            let residues: std::collections::BTreeSet<usize> = c
                .chars()
                .enumerate()
                .filter(|&(_, s)| s != grigorchuk_core::sft::BOTTOM)
                .map(|(i, _)| i % k)
                .collect();
            phase_ok &= p % k == 0 && residues.len() == 1;
        }
    }
    let report = json!({
        "k": k,
        "tiles": tiles.iter().map(|t| json!({"symbol": t.symbol.to_string(), "left": t.left, "right": t.right})).collect::<Vec<_>>(),
        "sft": serde_json::from_str::<serde_json::Value>(&z.to_json()).unwrap(),
        "periodic_points_checked": points,
        "phase_unique": phase_ok,
    });
    emit(
        out,
        &(serde_json::to_string_pretty(&report).unwrap() + "\n"),
    )?;
    verdict(
        phase_ok && points > 0,
        "a periodic point has tiles on two residues",
    )
}

fn cmd_approx(order: usize, out: &Option<PathBuf>) -> Outcome {
    let x = sft_approximations(order)?.pop().expect("order >= 1");
    emit(out, &(x.to_json() + "\n"))?;
    Ok(())
}

fn cmd_periodic(
    max_order: usize,
    max_period: usize,
    input: &Option<PathBuf>,
    out: &Option<PathBuf>,
) -> Outcome {
    let sfts: Vec<(usize, ZSft)> = match input {
        Some(path) => {
            let x = ZSft::from_json(&fs::read_to_string(path)?)?;
            vec![(x.order(), x)]
        }
        None => sft_approximations(max_order)?
            .into_iter()
            .enumerate()
            .map(|(i, x)| (i + 1, x))
            .collect(),
    };
    let mut s = String::new();
    for (order, x) in &sfts {
        for period in 1..=max_period {
            let report = PeriodicReport {
                order: *order,
                period,
                points: periodic_points(x, period)?,
            };
            writeln!(s, "{}", report.to_json_line()).unwrap();
        }
    }
    emit(out, &s)?;
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Table1 {
            n_max,
            p_max,
            t,
            paper_layout,
            out,
        } => cmd_table1(n_max, p_max, t, paper_layout, &out),
        Command::Verify {
            max_n,
            mutate_alpha,
        } => cmd_verify(max_n, mutate_alpha),
        Command::Schreier {
            n,
            circular,
            p,
            format,
            require_action,
            t,
            out,
        } => cmd_schreier(n, circular, p, format, require_action, t, &out),
        Command::PseudoOrbit {
            n,
            max_relator_len,
            out,
        } => cmd_pseudo_orbit(n, max_relator_len, &out),
        Command::Stabilizer {
            seed,
            budget,
            level,
            out,
        } => cmd_stabilizer(seed, budget, level, &out),
        Command::Sft { command } => match command {
            SftCommand::UnionDemo { out } => cmd_union_demo(&out),
            SftCommand::CombDemo { k, out } => cmd_comb_demo(k, &out),
            SftCommand::Approx { order, out } => cmd_approx(order, &out),
            SftCommand::Periodic {
                max_order,
                max_period,
                input,
                out,
            } => cmd_periodic(max_order, max_period, &input, &out),
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("grig: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("grig: {msg}");
            ExitCode::from(2)
        }
    }
}
