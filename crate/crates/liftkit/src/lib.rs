//! File formats and command-line front end for [`liftkit_core`].

pub mod formats;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use liftkit_core::autos::MarkedAutomorphism;
use liftkit_core::braids::{artin_equal, braid_equal_with_budget, BraidWord, DEFAULT_BUDGET};
use liftkit_core::census::census;
use liftkit_core::cover::CoverSpec;
use liftkit_core::homology::{lefschetz_fixed_points, SchreierBasis};
use liftkit_core::matrix::IntegerMatrix;
use liftkit_core::twists::{
    bracelet_relation_set, builtin_mesh_braid_derivation, chainbraid_relation_set, check_derivation,
    mesh_relation_set, verify_bracelet_relations_with_budget, RelationSet,
};
use liftkit_core::words::Word;

use formats::{format_derivation, parse_auto, parse_cover, parse_derivation, AutoFile, FormatError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

const GRAMMARS: &str = "\
GRAMMARS

  Free group word: tokens separated by whitespace; token = `g<decimal index>`
  optionally followed by `'` for the inverse; the empty string denotes the
  identity. Example: \"g1 g2' g1\".

  Braid word: tokens `s<index>` with optional `'` for inverse,
  whitespace-separated; the strand count is given by `--strands n`.
  Example: \"s1 s2 s1'\".

  Twist word: tokens `A<i>`, `B<i>`, `C<i>` with optional `'`; indices are
  taken mod k. Example: \"A3 B0' C2\".

  Automorphism file:
    rank <n>
    g<i> -> <word>          one line per generator
    star <j> -> <word>      optional, j = 1, 2, ... (marked star images)

  Cover spec file:
    rank <n>
    deck cyclic <k>         or: deck table <order>, then <order> rows of the
                            Cayley table (element 0 is the identity)
    label g<i> = <element>  one line per generator
    base-boundaries <m>     optional, default 1

  Derivation file:
    start: <twist word>
    commute @<pos> [letters|block-left|block-right]
    braid @<pos> <orientation 1..6>
    cancel @<pos>
    insert @<pos> <symbol>
    rotate @<pos> k=<k> [by=<s>]
    end: <twist word>

  Braid orientations (x is the symbol at <pos>, X its inverse):
    1: x y x -> y x y    2: x y X -> Y x y    3: x Y X -> Y X y
    4: X Y X -> Y X Y    5: X Y x -> y X Y    6: X y x -> y x Y

  Lifted generator factors: `g<i>@<d>` is the lift of g<i> starting on
  sheet d; a trailing `'` marks the inverse.

  Blank lines and lines starting with `#` are ignored in all files.

EXIT CODES
  0 success / true, 1 checked false, 2 usage or parse error, 3 resource limit";

#[derive(Parser, Debug)]
#[command(name = "liftkit", version, about = "Lifting mapping classes through regular covers of punctured disks")]
#[command(after_long_help = GRAMMARS, after_help = "Run with --help for file and word grammars.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Artin,
    Handle,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Genus and boundary count of a cover (the Burau cover by default).
    Signature {
        #[arg(long, required_unless_present = "cover", requires = "k")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        k: Option<usize>,
        #[arg(long, conflicts_with_all = ["n", "k"])]
        cover: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Exit 0 if the automorphism lifts to the cover, 1 if not.
    LiftCheck {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        auto: PathBuf,
    },
    /// Apply the lift of an automorphism to a path in the cover.
    LiftApply {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        auto: PathBuf,
        /// Sheet the path starts on.
        #[arg(long, default_value_t = 0)]
        start: usize,
        /// Base word of the path.
        word: String,
    },
    /// Handle-reduce a braid word.
    BraidReduce {
        #[arg(long)]
        strands: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        word: String,
    },
    /// Exit 0 if two braid words are equal, 1 if not.
    BraidEqual {
        #[arg(long)]
        strands: usize,
        #[arg(long, value_enum, default_value_t = Oracle::Handle)]
        oracle: Oracle,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        left: String,
        right: String,
    },
    /// Check the completed bracelet relations in B_k.
    BraceletVerify {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Generate and check the mesh braid derivation for bracelets of size k.
    MeshVerify {
        #[arg(long)]
        k: usize,
        /// Also write the derivation to this file.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Replay a derivation file against a relation set.
    DerivationCheck {
        file: PathBuf,
        /// `mesh:<k>`, `chainbraid:<k>` or `bracelet:<k>`.
        #[arg(long)]
        rels: String,
    },
    /// Induced action on first homology of the cover.
    Homology {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long, conflicts_with = "deck", required_unless_present = "deck")]
        auto: Option<PathBuf>,
        /// Deck element acting on the cover.
        #[arg(long)]
        deck: Option<usize>,
        /// Fill the punctures of the cover.
        #[arg(long)]
        branched: bool,
        #[arg(long)]
        json: bool,
    },
    /// Orbits of cyclic covers of the n-punctured disk under the braid group.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(thiserror::Error, Debug)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{}", .source)]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Core(#[from] liftkit_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(liftkit_core::Error::ResourceLimit { .. }) => EXIT_LIMIT,
            _ => EXIT_USAGE,
        }
    }
}

type CliResult = Result<i32, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> Result<T, FormatError>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|source| CliError::Format { path: path.display().to_string(), source })
}

fn load_cover(path: &Path) -> Result<CoverSpec, CliError> {
    load(path, parse_cover)
}

fn load_auto(path: &Path) -> Result<AutoFile, CliError> {
    load(path, parse_auto)
}

fn parse_rels(text: &str) -> Result<RelationSet, CliError> {
    let bad = || CliError::Usage(format!("--rels expects mesh:<k>, chainbraid:<k> or bracelet:<k>, got `{text}`"));
    let (kind, k) = text.split_once(':').ok_or_else(bad)?;
    let k: usize = k.parse().map_err(|_| bad())?;
    Ok(match kind {
        "mesh" => mesh_relation_set(k)?,
        "chainbraid" => chainbraid_relation_set(k)?,
        "bracelet" => bracelet_relation_set(k)?,
        _ => return Err(bad()),
    })
}

fn write_matrix(out: &mut dyn Write, m: &IntegerMatrix) -> std::io::Result<()> {
    write!(out, "{m}")
}

fn matrix_json(m: &IntegerMatrix) -> serde_json::Value {
    json!((0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>())
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io { path: "<output>".into(), source: e }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Signature { n, k, cover, json } => {
            let spec = match (cover, n, k) {
                (Some(path), _, _) => load_cover(&path)?,
                (None, Some(n), Some(k)) => CoverSpec::burau(n, k)?,
                _ => return Err(CliError::Usage("give --n and --k, or --cover".into())),
            };
            let s = spec.signature()?;
            if json {
                writeln!(out, "{}", json!({"g": s.g, "m": s.m, "n": s.n, "k": s.k})).map_err(io)?;
            } else {
                writeln!(out, "g={} m={}", s.g, s.m).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::LiftCheck { cover, auto } => {
            let spec = load_cover(&cover)?;
            let auto = load_auto(&auto)?;
            let liftable = if auto.stars.is_empty() && spec.base_boundaries() == 1 {
                match spec.first_unliftable(&auto.endo)? {
                    None => true,
                    Some(i) => {
                        writeln!(out, "not liftable: g{i} changes its deck label").map_err(io)?;
                        return Ok(EXIT_FALSE);
                    }
                }
            } else {
                spec.liftable_marked(&MarkedAutomorphism::new(auto.endo, auto.stars)?)?
            };
            writeln!(out, "{}", if liftable { "liftable" } else { "not liftable" }).map_err(io)?;
            Ok(if liftable { EXIT_OK } else { EXIT_FALSE })
        }
        Command::LiftApply { cover, auto, start, word } => {
            let spec = load_cover(&cover)?;
            let auto = load_auto(&auto)?;
            let lift = match spec.lift_automorphism(&auto.endo) {
                Ok(l) => l,
                Err(e @ liftkit_core::Error::NotLiftable { .. }) => {
                    writeln!(out, "{e}").map_err(io)?;
                    return Ok(EXIT_FALSE);
                }
                Err(e) => return Err(e.into()),
            };
            let path = spec.path(start, Word::parse(&word, spec.base_rank())?)?;
            let image = lift.apply(&path)?;
            writeln!(out, "start={} word={} target={}", image.start, image.word, spec.target(&image)).map_err(io)?;
            let factors: Vec<String> = spec
                .express_in_lifted_generators(&image)
                .iter()
                .map(|f| format!("g{}@{}{}", f.generator, f.deck, if f.inverse { "'" } else { "" }))
                .collect();
            writeln!(out, "factors: {}", factors.join(" ")).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::BraidReduce { strands, budget, word } => {
            let b = BraidWord::parse(&word, strands)?;
            let r = b.handle_reduce_with_budget(budget)?;
            writeln!(out, "{r}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::BraidEqual { strands, oracle, budget, left, right } => {
            let l = BraidWord::parse(&left, strands)?;
            let r = BraidWord::parse(&right, strands)?;
            let equal = match oracle {
                Oracle::Artin => artin_equal(&l, &r)?,
                Oracle::Handle => braid_equal_with_budget(&l, &r, budget)?,
                Oracle::Both => {
                    let a = artin_equal(&l, &r)?;
                    let h = braid_equal_with_budget(&l, &r, budget)?;
                    if a != h {
                        return Err(CliError::Usage(format!("oracles disagree: artin={a} handle={h}")));
                    }
                    a
                }
            };
            writeln!(out, "{}", if equal { "equal" } else { "not equal" }).map_err(io)?;
            Ok(if equal { EXIT_OK } else { EXIT_FALSE })
        }
        Command::BraceletVerify { k, budget } => {
            let checks = verify_bracelet_relations_with_budget(k, budget)?;
            for c in &checks {
                writeln!(out, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name).map_err(io)?;
            }
            let passed = checks.iter().filter(|c| c.passed).count();
            writeln!(out, "{passed}/{} checks passed", checks.len()).map_err(io)?;
            Ok(if passed == checks.len() { EXIT_OK } else { EXIT_FALSE })
        }
        Command::MeshVerify { k, write } => {
            let d = builtin_mesh_braid_derivation(k)?;
            if let Some(path) = write {
                std::fs::write(&path, format_derivation(&d))
                    .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            }
            match check_derivation(&d, &mesh_relation_set(k)?) {
                Ok(n) => {
                    writeln!(out, "derivation steps: {n}, verified").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    writeln!(out, "derivation rejected: {e}").map_err(io)?;
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::DerivationCheck { file, rels } => {
            let rels = parse_rels(&rels)?;
            let d = load(&file, |t| parse_derivation(t, rels.k()))?;
            match check_derivation(&d, &rels) {
                Ok(n) => {
                    writeln!(out, "derivation steps: {n}, verified").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    writeln!(out, "derivation rejected: {e}").map_err(io)?;
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Homology { cover, auto, deck, branched, json } => {
            let spec = load_cover(&cover)?;
            let basis = SchreierBasis::new(&spec)?;
            let (matrix, lefschetz) = match (auto, deck) {
                (Some(path), _) => {
                    let auto = load_auto(&path)?;
                    if let Some(i) = spec.first_unliftable(&auto.endo)? {
                        writeln!(out, "not liftable: g{i} changes its deck label").map_err(io)?;
                        return Ok(EXIT_FALSE);
                    }
                    let g = basis.restrict_to_kernel(&auto.endo)?;
                    let m = if branched { basis.h1_branched_matrix(&g)? } else { basis.h1_unbranched_matrix(&g)? };
                    (m, None)
                }
                (None, Some(e)) => {
                    if !spec.deck().contains(e) {
                        return Err(CliError::Usage(format!("{e} is not a deck element")));
                    }
                    let m = basis.deck_matrix(e, branched)?;
                    let l = lefschetz_fixed_points(&m)?;
                    (m, Some(l))
                }
                (None, None) => return Err(CliError::Usage("give --auto or --deck".into())),
            };
            let trace = matrix.trace()?;
            if json {
                let mut v = json!({"rows": matrix.rows(), "matrix": matrix_json(&matrix), "trace": trace});
                if let Some(l) = lefschetz {
                    v["lefschetz"] = json!(l);
                }
                writeln!(out, "{v}").map_err(io)?;
            } else {
                write_matrix(out, &matrix).map_err(io)?;
                writeln!(out, "trace={trace}").map_err(io)?;
                if let Some(l) = lefschetz {
                    writeln!(out, "lefschetz={l}").map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Census { n, k, json } => {
            let r = census(n, k)?;
            if json {
                let orbits: Vec<_> = r
                    .orbits
                    .iter()
                    .map(|o| {
                        let members: Vec<_> = o.members.iter().map(|c| c.labels.clone()).collect();
                        json!({"size": o.size(), "members": members, "burau": o.burau})
                    })
                    .collect();
                let indices: serde_json::Map<String, serde_json::Value> =
                    r.index_histogram.iter().map(|(i, c)| (i.to_string(), json!(c))).collect();
                let v = json!({"n": n, "k": k, "classes": r.class_count, "orbits": orbits, "indices": indices});
                writeln!(out, "{v}").map_err(io)?;
            } else {
                writeln!(out, "classes: {}", r.class_count).map_err(io)?;
                writeln!(out, "orbits: {}", r.orbits.len()).map_err(io)?;
                for o in &r.orbits {
                    let labels: Vec<String> = o.members[0].labels.iter().map(usize::to_string).collect();
                    writeln!(
                        out,
                        "orbit size={} rep=({}){}",
                        o.size(),
                        labels.join(","),
                        if o.burau { " burau" } else { "" }
                    )
                    .map_err(io)?;
                }
                for (i, c) in &r.index_histogram {
                    writeln!(out, "index {i}: {c} classes").map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line `argv` (including the program name), writing results
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
