use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tabrw_core::congruence::{Monoid, RelationSet};
use tabrw_core::corpus::{skew_tableaux, young_tableaux};
use tabrw_core::crystal::{self, component, crystal_commutes_with_sds, Family, Kind, Level, Vertex};
use tabrw_core::diagrams::{self, embed, is_skew, reading_sw, render_ascii, GluingMap};
use tabrw_core::jdt::{check_involution_law, fs_rules, rect_morphism_check};
use tabrw_core::rbt::{rba_accepts, rba_morphism_check, rbt_rules};
use tabrw_core::rewriting::{check_joinability, normal_form, trace_to_json, RewriteSystem, Strategy, Trace};
use tabrw_core::structures::{check_axioms, check_commutation, check_cross_section, Report};
use tabrw_core::words::weight;
use tabrw_core::{Alphabet, Diagram, Sds, Word};

#[derive(Parser)]
#[command(name = "tabrw", version, about = "Rewriting on strings of columns: jeu de taquin, right-bottom rectification, crystals")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Insert the letters of a word into a diagram (empty by default).
    Insert {
        #[arg(long)]
        sds: Sds,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Normal form under FS or RBT.
    #[command(alias = "nf")]
    Rectify {
        #[arg(long, value_enum)]
        system: System,
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "leftmost")]
        strategy: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Print every step, not only the normal form.
        #[arg(long)]
        trace: bool,
        #[arg(long, alias = "render", value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    #[command(subcommand)]
    Crystal(CrystalCmd),
    /// Print a diagram.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Decide a congruence by exhaustive search.
    Congruent {
        #[arg(long)]
        monoid: Monoid,
        #[arg(long)]
        u: Word,
        #[arg(long)]
        v: Word,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Run an exhaustive property suite.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
        #[arg(long)]
        monoid: Option<Monoid>,
        #[arg(long)]
        sds: Option<Sds>,
        #[arg(long, value_enum)]
        system: Option<System>,
        #[arg(long)]
        kind: Option<Kind>,
    },
}

#[derive(Subcommand)]
enum CrystalCmd {
    /// Apply one operator `e_i` or `f_i`.
    Op {
        #[arg(long)]
        kind: Kind,
        #[arg(long, default_value = "columns")]
        level: Level,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        i: u32,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Connected component of the input.
    Graph {
        #[arg(long)]
        kind: Kind,
        #[arg(long, default_value = "columns")]
        level: Level,
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = crystal::DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Args)]
struct Input {
    /// Word in digit form, or comma separated.
    #[arg(long)]
    word: Option<Word>,
    /// Diagram JSON, inline or a file path.
    #[arg(long)]
    json: Option<String>,
    /// How a bare word becomes a diagram.
    #[arg(long, value_enum)]
    embed: Option<Embed>,
    /// Alphabet rank; defaults to the JSON `n` or the largest letter.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum System {
    Fs,
    Rbt,
}

#[derive(Clone, Copy, ValueEnum)]
enum Embed {
    Skew,
    Young,
    QuasiRibbon,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    E,
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Axioms,
    Commutation,
    CrossSection,
    Convergence,
    Joinability,
    Morphism,
    Crystal,
    Involution,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Violation(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

type Run = Result<String, Failure>;

impl From<Embed> for GluingMap {
    fn from(e: Embed) -> Self {
        match e {
            Embed::Skew => GluingMap::Skew,
            Embed::Young => GluingMap::Young,
            Embed::QuasiRibbon => GluingMap::QuasiRibbon,
        }
    }
}

fn read_json(src: &str) -> anyhow::Result<String> {
    if src.trim_start().starts_with('{') {
        Ok(src.to_string())
    } else {
        fs::read_to_string(src).with_context(|| format!("reading {src}"))
    }
}

fn rank_for(w: &Word, n: Option<u32>) -> anyhow::Result<Alphabet> {
    let n = n.unwrap_or_else(|| w.letters().iter().copied().max().unwrap_or(1));
    let a = Alphabet::new(n)?;
    weight(w, a)?;
    Ok(a)
}

impl Input {
    /// The input diagram and its alphabet; a word is embedded with `default`.
    fn diagram(&self, default: GluingMap) -> anyhow::Result<(Diagram, Alphabet)> {
        match (&self.word, &self.json) {
            (Some(w), None) => {
                let a = rank_for(w, self.n)?;
                Ok((embed(w, self.embed.map_or(default, GluingMap::from)), a))
            }
            (None, Some(src)) => {
                let (d, a) = diagrams::from_json(&read_json(src)?)?;
                match self.n {
                    Some(n) => {
                        let a = Alphabet::new(n)?;
                        d.check_alphabet(a)?;
                        Ok((d, a))
                    }
                    None => Ok((d, a)),
                }
            }
            _ => bail!("give exactly one of --word and --json"),
        }
    }
}

fn show(d: &Diagram, n: u32, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Ascii => Ok(render_ascii(d)),
        Format::Json => Ok(diagrams::to_json(d, n)),
        Format::Dot => bail!("dot output is only available for crystal graphs"),
    }
}

fn show_trace(t: &Trace, n: u32, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => Ok(trace_to_json(t, n)),
        Format::Ascii => {
            let mut parts = vec![format!("{}\n{}", t.initial, render_ascii(&t.initial))];
            parts.extend(t.steps.iter().map(|s| format!("{} {}\n{}", s.redex, s.diagram, render_ascii(&s.diagram))));
            Ok(parts.join("\n\n"))
        }
        Format::Dot => bail!("dot output is only available for crystal graphs"),
    }
}

fn strategy(name: &str, seed: Option<u64>) -> anyhow::Result<Strategy> {
    match (name, seed) {
        ("random", Some(s)) => Ok(Strategy::Random(s)),
        ("random", None) => bail!("--strategy random needs --seed"),
        _ => Ok(name.parse()?),
    }
}

fn system(s: System) -> RewriteSystem {
    match s {
        System::Fs => fs_rules(),
        System::Rbt => rbt_rules(),
    }
}

fn rectify(sys: System, input: &Input, strat: Strategy, trace: bool, format: Format) -> Run {
    let default = match sys {
        System::Fs => GluingMap::Skew,
        System::Rbt => GluingMap::Young,
    };
    let (d, a) = input.diagram(default)?;
    match sys {
        System::Fs if !d.is_empty() && !is_skew(&d) => return Err(anyhow!("{d} is not a skew tableau").into()),
        System::Rbt if !d.is_empty() && !rba_accepts(&d) => return Err(anyhow!("{d} is neither Young nor a Young-glued word").into()),
        _ => {}
    }
    let (nf, t) = normal_form(&system(sys), &d, strat)?;
    if trace {
        Ok(show_trace(&t, a.rank(), format)?)
    } else {
        Ok(show(&nf, a.rank(), format)?)
    }
}

fn insert(s: Sds, input: &Input, format: Format) -> Run {
    let w = input.word.clone().unwrap_or_default();
    let (base, a) = match &input.json {
        Some(src) => {
            let (d, a) = diagrams::from_json(&read_json(src)?)?;
            let a = match input.n {
                Some(n) => Alphabet::new(n)?,
                None => a,
            };
            (d, a)
        }
        None => (Diagram::empty(), rank_for(&w, input.n)?),
    };
    weight(&w, a)?;
    let d = w.letters().iter().try_fold(base, |d, &x| s.insert(&d, x))?;
    Ok(show(&d, a.rank(), format)?)
}

fn vertex(level: Level, input: &Input) -> anyhow::Result<(Vertex, Alphabet)> {
    if level == Level::Word {
        let w = input.word.clone().ok_or_else(|| anyhow!("the word level needs --word"))?;
        let a = rank_for(&w, input.n)?;
        return Ok((Vertex::Word(w), a));
    }
    let (d, a) = input.diagram(GluingMap::Skew)?;
    Ok((Vertex::Diagram(d), a))
}

fn show_vertex(v: &Vertex, n: u32, format: Format) -> anyhow::Result<String> {
    match v {
        Vertex::Word(w) => Ok(match format {
            Format::Json => json!(w.letters()).to_string(),
            _ => w.to_string(),
        }),
        Vertex::Diagram(d) => show(d, n, format),
    }
}

fn crystal_cmd(c: &CrystalCmd) -> Run {
    match c {
        CrystalCmd::Op { kind, level, op, i, input, format } => {
            let (x, a) = vertex(*level, input)?;
            let fam = Family::new(*kind, *level);
            let y = match op {
                Op::E => crystal::e(fam, a.rank(), *i, &x)?,
                Op::F => crystal::f(fam, a.rank(), *i, &x)?,
            };
            Ok(match y {
                Some(y) => show_vertex(&y, a.rank(), *format)?,
                None => "none".to_string(),
            })
        }
        CrystalCmd::Graph { kind, level, input, max_vertices, format } => {
            let (x, a) = vertex(*level, input)?;
            let g = component(Family::new(*kind, *level), a.rank(), &x, *max_vertices)?;
            match format {
                Format::Dot => Ok(crystal::to_dot(&g)),
                Format::Json => Ok(crystal::to_json(&g, a.rank())),
                Format::Ascii => Err(anyhow!("crystal graphs are exported as dot or json").into()),
            }
        }
    }
}

fn congruent(monoid: Monoid, u: &Word, v: &Word, n: Option<u32>) -> Run {
    let m = u.letters().iter().chain(v.letters()).copied().max().unwrap_or(1);
    let n = n.unwrap_or(m.max(1));
    let rel = RelationSet::new(monoid, n)?;
    let a = rel.alphabet();
    weight(u, a)?;
    weight(v, a)?;
    Ok(rel.congruent(u, v)?.to_string())
}

/// Strategy independence and agreement with the structure's constructor.
fn convergence(sys: System, n: u32, maxlen: usize) -> anyhow::Result<Report> {
    let a = Alphabet::new(n)?;
    let rules = system(sys);
    let inputs: Vec<(Diagram, Diagram)> = match sys {
        System::Fs => a.words_up_to(maxlen).map(|u| (embed(&u, GluingMap::Skew), Sds::YRow.constructor(&u))).collect(),
        System::Rbt => young_tableaux(n, maxlen).into_iter().map(|t| {
            let q = Sds::QRow.constructor(&reading_sw(&t));
            (t, q)
        }).collect(),
    };
    let strategies = [Strategy::Leftmost, Strategy::Rightmost].into_iter().chain((0..20).map(Strategy::Random));
    let mut rep = Report::default();
    for s in strategies {
        for (d, expect) in &inputs {
            rep.checked += 1;
            match normal_form(&rules, d, s) {
                Ok((nf, _)) if &nf == expect => {}
                Ok((nf, _)) => rep.violations.push(format!("{d} under {s:?}: {nf} instead of {expect}")),
                Err(e) => rep.violations.push(format!("{d} under {s:?}: {e}")),
            }
        }
    }
    Ok(rep)
}

fn suite(args: &Cmd) -> anyhow::Result<Report> {
    let Cmd::Check { suite, n, maxlen, monoid, sds, system: sys, kind } = args else { unreachable!() };
    let (n, maxlen) = (*n, *maxlen);
    let corpus = || -> anyhow::Result<Vec<Word>> { Ok(Alphabet::new(n)?.words_up_to(maxlen).collect()) };
    Ok(match suite {
        Suite::Axioms => match sds {
            Some(s) => check_axioms(*s, n, maxlen)?,
            None => Sds::ALL.into_iter().try_fold(Report::default(), |r, s| Ok::<_, anyhow::Error>(r.merge(check_axioms(s, n, maxlen)?)))?,
        },
        Suite::Commutation => [(Sds::DskRow, Sds::DskCol), (Sds::YRow, Sds::YCol), (Sds::QRow, Sds::QLeft)]
            .into_iter()
            .try_fold(Report::default(), |r, (x, y)| Ok::<_, anyhow::Error>(r.merge(check_commutation(x, y, n, maxlen)?)))?,
        Suite::CrossSection => {
            let monoid = monoid.ok_or_else(|| anyhow!("--suite cross-section needs --monoid"))?;
            let s = match monoid {
                Monoid::Plactic => Sds::YRow,
                Monoid::Hypoplactic => Sds::QRow,
            };
            check_cross_section(s, &RelationSet::new(monoid, n)?, maxlen)?
        }
        Suite::Convergence => {
            let sys = sys.ok_or_else(|| anyhow!("--suite convergence needs --system"))?;
            convergence(sys, n, maxlen)?
        }
        Suite::Joinability => {
            let sys = sys.ok_or_else(|| anyhow!("--suite joinability needs --system"))?;
            let inputs = match sys {
                System::Fs => skew_tableaux(n, maxlen),
                System::Rbt => young_tableaux(n, maxlen),
            };
            let j = check_joinability(&system(sys), &inputs);
            let mut violations: Vec<String> = j
                .witnesses
                .iter()
                .map(|w| format!("{}: {} -> {} but {} -> {}", w.source, w.left.0, w.left.1, w.right.0, w.right.1))
                .collect();
            violations.extend(j.errors);
            Report { checked: j.branchings, violations }
        }
        Suite::Morphism => {
            let words = corpus()?;
            rect_morphism_check(&words, n).merge(rba_morphism_check(&words, n))
        }
        Suite::Crystal => {
            let pairs = match kind {
                Some(Kind::Kashiwara) => vec![(Kind::Kashiwara, Sds::YRow)],
                Some(Kind::Quasi) => vec![(Kind::Quasi, Sds::QRow)],
                None => vec![(Kind::Kashiwara, Sds::YRow), (Kind::Quasi, Sds::QRow)],
            };
            let pairs: Vec<(Kind, Sds)> = match sds {
                Some(s) => pairs.into_iter().map(|(k, _)| (k, *s)).collect(),
                None => pairs,
            };
            pairs
                .into_iter()
                .try_fold(Report::default(), |r, (k, s)| Ok::<_, anyhow::Error>(r.merge(crystal_commutes_with_sds(k, s, n, maxlen)?)))?
        }
        Suite::Involution => check_involution_law(n)?,
    })
}

fn check(args: &Cmd) -> Run {
    let Cmd::Check { suite: name, .. } = args else { unreachable!() };
    let rep = suite(args)?;
    let name = name.to_possible_value().expect("named suite").get_name().to_string();
    let line = json!({ "suite": name, "checked": rep.checked, "violations": rep.violations }).to_string();
    if rep.ok() {
        Ok(line)
    } else {
        Err(Failure::Violation(line))
    }
}

fn run(cli: &Cli) -> Run {
    match &cli.cmd {
        Cmd::Insert { sds, input, format } => insert(*sds, input, *format),
        Cmd::Rectify { system, input, strategy: s, seed, trace, format } => {
            rectify(*system, input, strategy(s, *seed)?, *trace, *format)
        }
        Cmd::Crystal(c) => crystal_cmd(c),
        Cmd::Render { input, format } => {
            let (d, a) = input.diagram(GluingMap::Skew)?;
            Ok(show(&d, a.rank(), *format)?)
        }
        Cmd::Congruent { monoid, u, v, n } => congruent(*monoid, u, v, *n),
        c @ Cmd::Check { .. } => check(c),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => match writeln!(io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (text, code) = match run(&cli) {
        Ok(t) => (t, 0),
        Err(Failure::Violation(t)) => (t, 1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match emit(&cli.out, &text) {
        Ok(()) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
