//! Command-line driver. Output is one `key=value` datum per line; lines
//! starting with `# ` are human commentary.
//!
//! Exit codes: 0 success, 1 invalid parameters, 2 usage or parse error,
//! 3 search refused by a cost cap.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::abelian::abelian_invariants;
use crate::fibertype::{
    add_generic_fiber, oka_join_example, orbifold_group, parse_pencil_records, pi1_fiber_type,
    FiberError, GroupAnswer, OrbifoldSpec, PencilSpec, SpecialFiber,
};
use crate::finquot::{hom_spectrum_with, FinquotError, SearchLimits, TargetRegistry};
use crate::oka::{
    canonical_form, is_isomorphic, oka_presentation, simplified_presentation, structure,
    InvariantTriple, OkaError, OkaParams, SimplifiedParams,
};
use crate::words::{parse_presentation, Presentation, WordsError};

/// Largest `q` for which `present` and `abelianize` will build `G(p;q;r)`.
const MAX_PRESENTED_Q: u64 = 100_000;
/// Largest `p` for the same commands; the first relator has `p` letters.
const MAX_PRESENTED_P: u64 = 1_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Refused(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Refused(_) => EXIT_REFUSED,
        }
    }
}

impl From<OkaError> for CliError {
    fn from(e: OkaError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<FiberError> for CliError {
    fn from(e: FiberError) -> Self {
        match e {
            FiberError::Record { .. } => CliError::Usage(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<FinquotError> for CliError {
    fn from(e: FinquotError) -> Self {
        match e {
            e if e.is_cap_refusal() => CliError::Refused(e.to_string()),
            e @ (FinquotError::MalformedSpecifier(_) | FinquotError::UnknownFamily(_)) => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<WordsError> for CliError {
    fn from(e: WordsError) -> Self {
        match e {
            WordsError::InvalidCyclicOrder(_) => CliError::Domain(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "oka-groups",
    version,
    about = "Oka groups G(p;q;r) and fundamental groups of fiber-type curve complements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a finite presentation of G(p;q;r)
    Present {
        p: u64,
        q: u64,
        r: u64,
        /// Presentation form (oka or simplified)
        #[arg(long, default_value = "oka")]
        form: String,
    },
    /// Print the structural invariants of G(p;q;r)
    Structure { p: u64, q: u64, r: u64 },
    /// Canonical representative of the isomorphism class of G(p;q;r)
    Canon { p: u64, q: u64, r: u64 },
    /// Decide whether G(p1;q1;r1) and G(p2;q2;r2) are isomorphic
    Iso {
        p1: u64,
        q1: u64,
        r1: u64,
        p2: u64,
        q2: u64,
        r2: u64,
    },
    /// Abelian invariants of G(p;q;r) or of a presentation file
    Abelianize {
        #[arg(num_args = 3, value_names = ["P", "Q", "R"], conflicts_with = "file", required_unless_present = "file")]
        params: Vec<u64>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Count homomorphisms from a presented group into finite targets
    Homcount {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated targets such as sym:4,cyclic:6,dihedral:5
        #[arg(long)]
        target: String,
        /// Maximum number of generators searched
        #[arg(long, default_value_t = SearchLimits::default().max_generators)]
        cap: usize,
        /// Maximum target order searched
        #[arg(long, default_value_t = SearchLimits::default().max_target_order)]
        max_order: usize,
    },
    /// Fundamental group of a generic fiber-type curve complement
    Pencil {
        #[arg(long, required_unless_present = "file")]
        p: Option<u64>,
        #[arg(long, required_unless_present = "file")]
        q: Option<u64>,
        #[arg(long, required_unless_present = "file")]
        k: Option<u64>,
        #[arg(long, required_unless_present = "file")]
        fibers: Option<u64>,
        /// Add the special fiber V(f_kp) or V(f_kq)
        #[arg(long, value_parser = ["none", "fkp", "fkq"])]
        special: Option<String>,
        /// Pencil records, one per line
        #[arg(long, conflicts_with_all = ["p", "q", "k", "fibers", "special"])]
        file: Option<PathBuf>,
    },
    /// Add one generic fiber to a group in fiber form
    AddFiber { p: u64, q: u64, r: u64 },
    /// Orbifold fundamental group of a marked punctured surface
    Orbifold {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        punctures: u64,
        /// Comma-separated cone point orders
        #[arg(long, default_value = "")]
        marks: String,
    },
    /// Oka's join-type example G((r+1)m1; (r+1)m2; d/m1)
    OkaExample {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        m1: u64,
        #[arg(long)]
        m2: u64,
        #[arg(long)]
        d: u64,
    },
}

/// A way of writing `G(p;q;r)` as a finite presentation.
pub trait PresentationForm: Send + Sync {
    fn name(&self) -> &'static str;
    fn build(&self, g: OkaParams) -> Presentation;
}

struct OkaForm;
struct SimplifiedForm;

impl PresentationForm for OkaForm {
    fn name(&self) -> &'static str {
        "oka"
    }
    fn build(&self, g: OkaParams) -> Presentation {
        oka_presentation(g)
    }
}

impl PresentationForm for SimplifiedForm {
    fn name(&self) -> &'static str {
        "simplified"
    }
    fn build(&self, g: OkaParams) -> Presentation {
        simplified_presentation(SimplifiedParams::for_oka(g))
    }
}

/// Presentation forms selectable with `present --form`.
pub struct FormRegistry {
    forms: Vec<Box<dyn PresentationForm>>,
}

impl Default for FormRegistry {
    fn default() -> Self {
        FormRegistry {
            forms: vec![Box::new(OkaForm), Box::new(SimplifiedForm)],
        }
    }
}

impl FormRegistry {
    pub fn get(&self, name: &str) -> Option<&dyn PresentationForm> {
        self.forms.iter().find(|f| f.name() == name).map(|f| f.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.forms.iter().map(|f| f.name()).collect()
    }
}

/// Runs one command; `args` excludes the program name.
pub fn run<I, S>(args: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("oka-groups".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = String::new();
    match execute(cli.command, &mut out) {
        Ok(()) => CliOutput {
            code: EXIT_OK,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => CliOutput {
            code: e.exit_code(),
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

macro_rules! line {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a String")
    };
}

fn params(p: u64, q: u64, r: u64) -> Result<OkaParams, CliError> {
    Ok(OkaParams::new(p, q, r)?)
}

fn presentable(p: u64, q: u64, r: u64) -> Result<OkaParams, CliError> {
    let g = params(p, q, r)?;
    if q > MAX_PRESENTED_Q || p > MAX_PRESENTED_P {
        return Err(CliError::Domain(format!(
            "{g} is too large to present (p <= {MAX_PRESENTED_P}, q <= {MAX_PRESENTED_Q})"
        )));
    }
    Ok(g)
}

fn read_presentation(path: &PathBuf) -> Result<Presentation, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_presentation(&text)?)
}

fn describe_triple(g: OkaParams) -> String {
    match structure(g).finite_cyclic_order {
        Some(n) => format!("finite cyclic Z_{n}"),
        None => format!("invariants {}", InvariantTriple::of(g)),
    }
}

fn write_group_answer(out: &mut String, answer: &GroupAnswer) {
    if let Some(g) = answer.oka {
        line!(out, "group={g}");
    }
    line!(out, "presentation={}", answer.presentation);
    line!(out, "abelianization={}", abelian_invariants(&answer.presentation));
    line!(out, "# {}", answer.description);
    for a in &answer.assumptions {
        line!(out, "# {a}");
    }
}

fn execute(command: Command, out: &mut String) -> Result<(), CliError> {
    match command {
        Command::Present { p, q, r, form } => {
            let g = presentable(p, q, r)?;
            let registry = FormRegistry::default();
            let builder = registry.get(&form).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown form `{form}` (expected one of: {})",
                    registry.names().join(", ")
                ))
            })?;
            let pres = builder.build(g);
            line!(out, "# {g} {} presentation", builder.name());
            line!(out, "presentation={pres}");
            line!(out, "generators={}", pres.generator_count());
            line!(out, "relators={}", pres.relator_count());
        }
        Command::Structure { p, q, r } => {
            let g = params(p, q, r)?;
            let st = structure(g);
            line!(out, "# {g}: {}", st.describe());
            line!(out, "s={}", st.s);
            line!(out, "a={}", st.a);
            line!(out, "center_order={}", st.center_order);
            line!(out, "quotient={}", st.quotient_description());
            line!(out, "abelianization={}", st.abelianization);
            line!(out, "is_abelian={}", st.is_abelian);
            line!(out, "is_finite_cyclic={}", st.is_finite_cyclic);
            if let Some(n) = st.finite_cyclic_order {
                line!(out, "finite_cyclic_order={n}");
            }
            line!(out, "splits_as_direct_product={}", st.splits_as_direct_product);
        }
        Command::Canon { p, q, r } => {
            let g = params(p, q, r)?;
            let c = canonical_form(g);
            line!(out, "# canonical representative of {g}");
            line!(out, "canonical={}", c.params);
            line!(out, "invariants={}", c.invariant_triple);
            line!(out, "cyclic={}", c.cyclic);
        }
        Command::Iso {
            p1,
            q1,
            r1,
            p2,
            q2,
            r2,
        } => {
            let g1 = params(p1, q1, r1)?;
            let g2 = params(p2, q2, r2)?;
            line!(out, "# {g1}: {}", describe_triple(g1));
            line!(out, "# {g2}: {}", describe_triple(g2));
            line!(out, "isomorphic={}", is_isomorphic(g1, g2));
        }
        Command::Abelianize { params: ps, file } => {
            if let Some(path) = file {
                let pres = read_presentation(&path)?;
                write_invariants(out, &pres);
            } else {
                let g = presentable(ps[0], ps[1], ps[2])?;
                let pres = oka_presentation(g);
                line!(out, "# abelianization of {g} from its relation matrix");
                write_invariants(out, &pres);
                let closed = structure(g).abelianization;
                line!(out, "closed_form={closed}");
                line!(out, "agrees={}", closed == abelian_invariants(&pres));
            }
        }
        Command::Homcount {
            file,
            target,
            cap,
            max_order,
        } => {
            let pres = read_presentation(&file)?;
            let targets = TargetRegistry::default().build_list(&target)?;
            let limits = SearchLimits {
                max_generators: cap,
                max_target_order: max_order,
            };
            let spectrum = hom_spectrum_with(&pres, &targets, limits)?;
            line!(out, "# homomorphisms from {pres}");
            for (t, c) in spectrum.targets.iter().zip(&spectrum.counts) {
                line!(out, "hom[{t}]={c}");
            }
        }
        Command::Pencil {
            p,
            q,
            k,
            fibers,
            special,
            file,
        } => {
            let specs = match file {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                    parse_pencil_records(&text)?
                }
                None => {
                    let special: SpecialFiber = special
                        .as_deref()
                        .unwrap_or("none")
                        .parse()
                        .map_err(CliError::Usage)?;
                    let field = |v: Option<u64>| v.expect("required by clap");
                    vec![PencilSpec::new(field(p), field(q), field(k), field(fibers), special)]
                }
            };
            let many = specs.len() > 1;
            for (i, spec) in specs.into_iter().enumerate() {
                if many {
                    line!(out, "record={}", i + 1);
                }
                line!(out, "spec={spec}");
                let answer = pi1_fiber_type(spec)?;
                write_group_answer(out, &answer);
            }
        }
        Command::AddFiber { p, q, r } => {
            let g = params(p, q, r)?;
            let next = add_generic_fiber(g)?;
            line!(out, "# {g} plus one generic fiber");
            line!(out, "group={next}");
            line!(out, "# {next}: {}", structure(next).describe());
        }
        Command::Orbifold {
            genus,
            punctures,
            marks,
        } => {
            let marks = parse_marks(&marks)?;
            let spec = OrbifoldSpec {
                genus,
                punctures,
                marks,
            };
            if 2 * spec.genus + spec.marks.len() as u64 + spec.punctures > 10_000 {
                return Err(CliError::Domain("orbifold too large".into()));
            }
            let answer = orbifold_group(&spec)?;
            write_group_answer(out, &answer);
        }
        Command::OkaExample { r, m1, m2, d } => {
            let g = oka_join_example(r, m1, m2, d)?;
            line!(out, "group={g}");
            line!(out, "# {g}: {}", structure(g).describe());
            let c = canonical_form(g);
            line!(out, "canonical={}", c.params);
        }
    }
    Ok(())
}

fn write_invariants(out: &mut String, pres: &Presentation) {
    let inv = abelian_invariants(pres);
    line!(out, "free_rank={}", inv.free_rank);
    line!(out, "torsion={}", inv.torsion_list());
    line!(out, "abelianization={inv}");
}

fn parse_marks(text: &str) -> Result<Vec<u64>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|m| {
            m.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("invalid mark `{m}`")))
        })
        .collect()
}
