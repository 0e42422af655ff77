use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pltl_core::automata::{
    build_gnba, complement_dpa, degeneralize, determinize_with_counters, remove_unproductive, trim_gnba,
    window_constraints, AutomatonDump,
};
use pltl_core::formula::{expand_valuation, negate_nnf, parse_formula, Formula, Valuation};
use pltl_core::game::{Arena, MealyStrategy, Player};
use pltl_core::parity::{solve_parity, ParityGame};
use pltl_core::solve::{
    emptiness, finiteness, membership, optimize_unipolar, synthesize_strategy, universality, verify_strategy,
    Objective, PltlGame, Report, SolveError, SolveOptions, Status,
};

/// Solver for two-player games with parametric LTL winning conditions.
#[derive(Parser)]
#[command(name = "pltl-arena", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format of the result report.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Record,
}

#[derive(Subcommand)]
enum Command {
    /// Does the player win with respect to the given valuation?
    Member {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        who: PlayerArgs,
        /// Parameter bindings, e.g. `x=3,y=0`.
        #[arg(long = "val", default_value = "")]
        valuation: String,
        /// Judge plays on their even positions only.
        #[arg(long)]
        blinking: bool,
        /// Write the automata of each pipeline stage into this directory.
        #[arg(long)]
        emit_automata: Option<PathBuf>,
    },
    /// Is the player's set of winning valuations empty?
    Empty {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        who: PlayerArgs,
    },
    /// Does the player win with respect to every valuation?
    Universal {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        who: PlayerArgs,
    },
    /// Is the player's set of winning valuations finite?
    Finite {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        who: PlayerArgs,
    },
    /// Optimal valuation for Player 0 in a unipolar game.
    Optimize {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        /// Upper limit on the searched values.
        #[arg(long, env = "PLTL_ARENA_MAX_BOUND")]
        max_bound: Option<usize>,
        /// Threads for independent per-variable sub-problems.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the witness strategy to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a finite-state winning strategy.
    Synthesize {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        who: PlayerArgs,
        #[arg(long = "val", default_value = "")]
        valuation: String,
        #[arg(long)]
        blinking: bool,
        /// Write the strategy to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a strategy against every consistent play.
    Verify {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        who: PlayerArgs,
        #[arg(long = "val", default_value = "")]
        valuation: String,
        #[arg(long)]
        blinking: bool,
        /// Strategy file as written by `synthesize`.
        #[arg(long)]
        strategy: PathBuf,
    },
    /// Solve a parity game file.
    SolveParity { file: PathBuf },
    /// Print the automata built for a formula.
    Translate {
        #[command(flatten)]
        formula: FormulaArgs,
        /// Bindings for the window constraints and the parity automaton.
        #[arg(long = "val")]
        valuation: Option<String>,
        #[arg(long)]
        emit_automata: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FormulaArgs {
    /// Winning condition for Player 0.
    #[arg(long, conflicts_with = "formula_file", required_unless_present = "formula_file")]
    formula: Option<String>,
    #[arg(long)]
    formula_file: Option<PathBuf>,
}

#[derive(Args)]
struct GameArgs {
    /// Arena file.
    #[arg(long)]
    arena: PathBuf,
    #[command(flatten)]
    formula: FormulaArgs,
}

#[derive(Args)]
struct PlayerArgs {
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    player: u8,
}

impl PlayerArgs {
    fn get(&self) -> Player {
        Player::from_index(self.player as usize).expect("range checked by clap")
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    MinMin,
    MinMax,
    MaxMax,
    MaxMin,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Objective {
        match o {
            ObjectiveArg::MinMin => Objective::MinMin,
            ObjectiveArg::MinMax => Objective::MinMax,
            ObjectiveArg::MaxMax => Objective::MaxMax,
            ObjectiveArg::MaxMin => Objective::MaxMin,
        }
    }
}

impl FormulaArgs {
    fn load(&self) -> Result<Formula> {
        let text = match (&self.formula, &self.formula_file) {
            (Some(f), _) => f.clone(),
            (None, Some(path)) => read(path)?,
            (None, None) => bail!("no formula given"),
        };
        parse_formula(text.trim()).with_context(|| format!("in formula `{}`", text.trim()))
    }
}

impl GameArgs {
    fn load(&self) -> Result<PltlGame> {
        let arena = Arena::parse(&read(&self.arena)?).with_context(|| format!("in {}", self.arena.display()))?;
        Ok(PltlGame::new(arena, self.formula.load()?)?)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse_valuation(s: &str) -> Result<Valuation> {
    Valuation::parse(s).map_err(|e| anyhow::anyhow!("invalid valuation `{s}`: {e}"))
}

struct Outcome {
    report: Report,
    /// Extra text printed after the report.
    trailer: Option<String>,
    positive: bool,
}

impl Outcome {
    fn new(report: Report, positive: bool) -> Self {
        Outcome {
            report,
            trailer: None,
            positive,
        }
    }
}

fn decision(query: &str, player: Player, answer: bool) -> Outcome {
    let mut r = Report::new();
    r.push("query", query).push("player", player).push("result", answer);
    Outcome::new(r, answer)
}

fn run(cmd: &Command) -> Result<Outcome> {
    Ok(match cmd {
        Command::Member {
            game,
            who,
            valuation,
            blinking,
            emit_automata,
        } => {
            let g = game.load()?;
            let alpha = parse_valuation(valuation)?;
            if let Some(dir) = emit_automata {
                emit_stages(&membership_formula(&g.formula, &alpha)?, &alpha, dir)?;
            }
            let m = membership(&g, who.get(), &alpha, *blinking)?;
            Outcome::new(Report::membership(&m, &alpha), m.wins)
        }
        Command::Empty { game, who } => {
            let answer = emptiness(&game.load()?, who.get())?;
            decision("emptiness", who.get(), answer)
        }
        Command::Universal { game, who } => {
            let answer = universality(&game.load()?, who.get())?;
            decision("universality", who.get(), answer)
        }
        Command::Finite { game, who } => {
            let answer = finiteness(&game.load()?, who.get())?;
            decision("finiteness", who.get(), answer)
        }
        Command::Optimize {
            game,
            objective,
            max_bound,
            jobs,
            out,
        } => {
            let g = game.load()?;
            let opts = SolveOptions {
                max_bound: *max_bound,
                jobs: (*jobs).max(1),
            };
            let r = optimize_unipolar(&g, (*objective).into(), &opts)?;
            if let (Some(path), Some(s)) = (out, &r.strategy) {
                write(path, &s.emit(&g.arena))?;
            }
            let positive = !matches!(r.status, Status::None | Status::NoneWithin(_));
            Outcome::new(Report::optimization(&r), positive)
        }
        Command::Synthesize {
            game,
            who,
            valuation,
            blinking,
            out,
        } => {
            let g = game.load()?;
            let alpha = parse_valuation(valuation)?;
            let mut report = Report::new();
            report.push("query", "synthesize").push("player", who.get());
            match synthesize_strategy(&g, who.get(), &alpha, *blinking) {
                Ok(s) => {
                    report.push("result", true).push("strategy_memory", s.memory.size);
                    let dump = s.emit(&g.arena);
                    let mut o = Outcome::new(report, true);
                    match out {
                        Some(path) => write(path, &dump)?,
                        None => o.trailer = Some(dump),
                    }
                    o
                }
                Err(SolveError::NotWinning { .. }) => {
                    report.push("result", false);
                    Outcome::new(report, false)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Verify {
            game,
            who,
            valuation,
            blinking,
            strategy,
        } => {
            let g = game.load()?;
            let alpha = parse_valuation(valuation)?;
            let s = MealyStrategy::parse(&read(strategy)?, &g.arena, who.get())
                .with_context(|| format!("in {}", strategy.display()))?;
            let v = verify_strategy(&g, who.get(), &alpha, &s, *blinking)?;
            Outcome::new(Report::verdict(&v, &g.arena), v.wins)
        }
        Command::SolveParity { file } => {
            let pg = ParityGame::parse(&read(file)?).with_context(|| format!("in {}", file.display()))?;
            let sol = solve_parity(&pg);
            let mut r = Report::new();
            r.push("query", "solve-parity").push("initial_winner", sol.winner[pg.arena.init]);
            let mut dump = String::new();
            for p in [Player::Zero, Player::One] {
                let region: Vec<&str> = (0..pg.num_vertices())
                    .filter(|&v| sol.winner[v] == p)
                    .map(|v| pg.arena.names[v].as_str())
                    .collect();
                dump += &format!("region {p} {}\n", region.join(" "));
            }
            for v in 0..pg.num_vertices() {
                if let Some(w) = sol.strategy[v] {
                    dump += &format!("move {} 0 -> {}\n", pg.arena.names[v], pg.arena.names[w]);
                }
            }
            let mut o = Outcome::new(r, true);
            o.trailer = Some(dump);
            o
        }
        Command::Translate {
            formula,
            valuation,
            emit_automata,
        } => {
            let phi = formula.load()?;
            let alpha = valuation.as_deref().map(parse_valuation).transpose()?;
            let stages = stage_dumps(&phi, alpha.as_ref())?;
            let mut r = Report::new();
            r.push("query", "translate").push("formula", &phi);
            for (name, dump) in &stages {
                r.push(&format!("{name}_states"), dump.states.len());
            }
            let mut o = Outcome::new(r, true);
            match emit_automata {
                Some(dir) => write_stages(&stages, dir)?,
                None => {
                    o.trailer = Some(
                        stages
                            .iter()
                            .map(|(name, d)| format!("# {name}\n{}", d.emit()))
                            .collect::<Vec<_>>()
                            .join("\n"),
                    )
                }
            }
            o
        }
    })
}

/// Mixed conditions are expanded before translation, as membership does.
fn membership_formula(phi: &Formula, alpha: &Valuation) -> Result<Formula> {
    Ok(if phi.is_pltl_f() || phi.is_pltl_g() {
        phi.clone()
    } else {
        expand_valuation(phi, alpha)?
    })
}

/// Dumps of the GNBA, the NBA and (with a valuation) the parity automaton.
fn stage_dumps(phi: &Formula, alpha: Option<&Valuation>) -> Result<Vec<(&'static str, AutomatonDump)>> {
    let (target, negated) = if phi.is_pltl_g() && !phi.is_pltl_f() {
        (negate_nnf(phi), true)
    } else {
        (phi.clone(), false)
    };
    let gnba = trim_gnba(&build_gnba(&target)?);
    let nba = remove_unproductive(&degeneralize(&gnba));
    let mut out = vec![("gnba", AutomatonDump::from_gnba(&gnba))];
    match alpha {
        Some(alpha) => {
            let constraints = window_constraints(&gnba, &nba, alpha)?;
            out.push(("nba", AutomatonDump::from_nba(&nba, &constraints)));
            let dpa = determinize_with_counters(&nba, &constraints)?;
            let dpa = if negated { complement_dpa(&dpa) } else { dpa };
            out.push(("dpa", AutomatonDump::from_dpa(&dpa)));
        }
        None => out.push(("nba", AutomatonDump::from_nba(&nba, &[]))),
    }
    Ok(out)
}

fn emit_stages(phi: &Formula, alpha: &Valuation, dir: &Path) -> Result<()> {
    write_stages(&stage_dumps(phi, Some(alpha))?, dir)
}

fn write_stages(stages: &[(&str, AutomatonDump)], dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    for (name, d) in stages {
        write(&dir.join(format!("{name}.aut")), &d.emit())?;
    }
    Ok(())
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(o) => {
            let text = match cli.format {
                Format::Text => o.report.emit_text(),
                Format::Record => o.report.emit_record(),
            };
            print!("{text}");
            if let Some(t) = o.trailer {
                println!();
                print!("{t}");
            }
            ExitCode::from(if o.positive { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
