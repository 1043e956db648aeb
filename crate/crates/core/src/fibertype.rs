//! From pencil combinatorics to fundamental groups of generic fiber-type
//! curve complements.
//!
//! A pencil `[f_{kp}^q : f_{kq}^p]` with `p >= q`, `gcd(p, q) = 1` is described
//! only by the degrees `(p, q, k)`. The union `C_B` of `s` generic fibers has
//! complement group `G(sp; sq; kq)`; adding the special fiber `V(f_{kp})` or
//! `V(f_{kq})` gives `G((s+1)p; s+1; k)` or `G((s+1)q; s+1; k)` respectively,
//! provided that fiber is irreducible with abelian complement group. That
//! hypothesis is geometric and is carried as an assumption, never checked.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::oka::{oka_presentation, structure, OkaError, OkaParams};
use crate::words::{free_product_presentation, Presentation, Word, WordsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("invalid pencil: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidPencil(Vec<PencilViolation>),
    #[error("{0} is not in fiber form: {1}")]
    NotFiberForm(OkaParams, &'static str),
    #[error("{0}")]
    InvalidJoin(String),
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },
    #[error(transparent)]
    Oka(#[from] OkaError),
    #[error(transparent)]
    Words(#[from] WordsError),
}

/// A single broken pencil constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PencilViolation {
    ZeroParameter(&'static str),
    PLessThanQ,
    NotCoprime,
    BothSpecialFibers,
    TooLarge(&'static str),
}

impl fmt::Display for PencilViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PencilViolation::ZeroParameter(name) => write!(f, "{name}=0"),
            PencilViolation::PLessThanQ => write!(f, "p<q"),
            PencilViolation::NotCoprime => write!(f, "gcd(p,q)≠1"),
            PencilViolation::BothSpecialFibers => write!(f, "both fkp and fkq"),
            PencilViolation::TooLarge(name) => write!(f, "{name} too large"),
        }
    }
}

/// Which special fiber, if any, is added to the generic ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SpecialFiber {
    #[default]
    None,
    Fkp,
    Fkq,
}

impl SpecialFiber {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpecialFiber::None => "none",
            SpecialFiber::Fkp => "fkp",
            SpecialFiber::Fkq => "fkq",
        }
    }
}

impl FromStr for SpecialFiber {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(SpecialFiber::None),
            "fkp" => Ok(SpecialFiber::Fkp),
            "fkq" => Ok(SpecialFiber::Fkq),
            other => Err(format!("unknown special fiber `{other}` (expected none, fkp or fkq)")),
        }
    }
}

/// Degrees-only description of a pencil and a choice of fibers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PencilSpec {
    pub p: u64,
    pub q: u64,
    pub k: u64,
    pub fibers: u64,
    pub include_fkp: bool,
    pub include_fkq: bool,
}

impl PencilSpec {
    pub fn new(p: u64, q: u64, k: u64, fibers: u64, special: SpecialFiber) -> Self {
        PencilSpec {
            p,
            q,
            k,
            fibers,
            include_fkp: special == SpecialFiber::Fkp,
            include_fkq: special == SpecialFiber::Fkq,
        }
    }

    /// `None` when both flags are set.
    pub fn special(&self) -> Option<SpecialFiber> {
        match (self.include_fkp, self.include_fkq) {
            (false, false) => Some(SpecialFiber::None),
            (true, false) => Some(SpecialFiber::Fkp),
            (false, true) => Some(SpecialFiber::Fkq),
            (true, true) => None,
        }
    }

    pub fn with_fibers(&self, fibers: u64) -> Self {
        PencilSpec { fibers, ..*self }
    }
}

impl fmt::Display for PencilSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let special = match self.special() {
            Some(s) => s.as_str(),
            None => "fkp,fkq",
        };
        write!(
            f,
            "p={} q={} k={} fibers={} special={}",
            self.p, self.q, self.k, self.fibers, special
        )
    }
}

/// Keeps the resulting Oka parameters inside the supported range.
const MAX_PENCIL_PARAM: u64 = 1 << 15;

/// Checks the pencil constraints, reporting every violation.
pub fn validate_pencil(spec: PencilSpec) -> Result<PencilSpec, FiberError> {
    let mut violations = Vec::new();
    for (name, v) in [("p", spec.p), ("q", spec.q), ("k", spec.k), ("fibers", spec.fibers)] {
        if v == 0 {
            violations.push(PencilViolation::ZeroParameter(name));
        } else if v > MAX_PENCIL_PARAM {
            violations.push(PencilViolation::TooLarge(name));
        }
    }
    if spec.p < spec.q {
        violations.push(PencilViolation::PLessThanQ);
    }
    if spec.p.gcd(&spec.q) != 1 {
        violations.push(PencilViolation::NotCoprime);
    }
    if spec.include_fkp && spec.include_fkq {
        violations.push(PencilViolation::BothSpecialFibers);
    }
    if violations.is_empty() {
        Ok(spec)
    } else {
        Err(FiberError::InvalidPencil(violations))
    }
}

/// A computed group together with a printable description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAnswer {
    pub oka: Option<OkaParams>,
    pub presentation: Presentation,
    pub description: String,
    /// Hypotheses taken on trust rather than derived from the input.
    pub assumptions: Vec<String>,
}

impl GroupAnswer {
    fn from_oka(g: OkaParams) -> Self {
        GroupAnswer {
            oka: Some(g),
            presentation: oka_presentation(g),
            description: format!("{g}: {}", structure(g).describe()),
            assumptions: Vec::new(),
        }
    }
}

/// Group of the complement of `s` generic fibers: `G(sp; sq; kq)`.
pub fn pi1_generic_fibers(spec: PencilSpec) -> Result<GroupAnswer, FiberError> {
    let spec = validate_pencil(spec)?;
    if spec.special() != Some(SpecialFiber::None) {
        return Err(FiberError::InvalidJoin(
            "a special fiber is selected; use pi1_with_special_fiber".into(),
        ));
    }
    Ok(GroupAnswer::from_oka(generic_params(&spec)?))
}

fn generic_params(spec: &PencilSpec) -> Result<OkaParams, FiberError> {
    Ok(OkaParams::new(spec.fibers * spec.p, spec.fibers * spec.q, spec.k * spec.q)?)
}

/// Group of the complement after adding one special fiber:
/// `G((s+1)p; s+1; k)` for `fkp`, `G((s+1)q; s+1; k)` for `fkq`.
pub fn pi1_with_special_fiber(spec: PencilSpec) -> Result<GroupAnswer, FiberError> {
    let spec = validate_pencil(spec)?;
    let s1 = spec.fibers + 1;
    let (g, fiber, degree) = match spec.special() {
        Some(SpecialFiber::Fkp) => (OkaParams::new(s1 * spec.p, s1, spec.k)?, "V(f_kp)", spec.k * spec.p),
        Some(SpecialFiber::Fkq) => (OkaParams::new(s1 * spec.q, s1, spec.k)?, "V(f_kq)", spec.k * spec.q),
        _ => {
            return Err(FiberError::InvalidJoin(
                "exactly one special fiber must be selected".into(),
            ))
        }
    };
    let mut answer = GroupAnswer::from_oka(g);
    answer.assumptions.push(format!(
        "assumed: {fiber} is irreducible and its complement group is Z_{degree} (abelian)"
    ));
    Ok(answer)
}

/// Dispatches on the special-fiber flags.
pub fn pi1_fiber_type(spec: PencilSpec) -> Result<GroupAnswer, FiberError> {
    match spec.special() {
        Some(SpecialFiber::None) => pi1_generic_fibers(spec),
        _ => pi1_with_special_fiber(spec),
    }
}

/// `(s', p', q', k')` with `G(s'p'; s'q'; k'q')` equal to the input.
pub fn fiber_decomposition(g: OkaParams) -> Result<(u64, u64, u64, u64), FiberError> {
    let (p, q, r) = g.as_tuple();
    let s = p.gcd(&q);
    let (pp, qq) = (p / s, q / s);
    if pp < qq {
        return Err(FiberError::NotFiberForm(g, "p/s < q/s"));
    }
    if r % qq != 0 {
        return Err(FiberError::NotFiberForm(g, "q/s does not divide r"));
    }
    Ok((s, pp, qq, r / qq))
}

/// Adds one generic fiber: `G(s'p'; s'q'; k'q') -> G((s'+1)p'; (s'+1)q'; k'q')`.
pub fn add_generic_fiber(g: OkaParams) -> Result<OkaParams, FiberError> {
    let (s, pp, qq, _) = fiber_decomposition(g)?;
    let s1 = s + 1;
    let p = s1.checked_mul(pp).ok_or(OkaError::Overflow)?;
    let q = s1.checked_mul(qq).ok_or(OkaError::Overflow)?;
    Ok(OkaParams::new(p, q, g.r())?)
}

/// `G((r+1)m1; (r+1)m2; d/m1)` for coprime `m1, m2` dividing `d`.
pub fn oka_join_example(r: u64, m1: u64, m2: u64, d: u64) -> Result<OkaParams, FiberError> {
    if m1 == 0 || m2 == 0 || d == 0 {
        return Err(FiberError::InvalidJoin("m1, m2 and d must be positive".into()));
    }
    if m1.gcd(&m2) != 1 {
        return Err(FiberError::InvalidJoin(format!("gcd(m1, m2) = {} is not 1", m1.gcd(&m2))));
    }
    if !d.is_multiple_of(m1) || !d.is_multiple_of(m2) {
        return Err(FiberError::InvalidJoin(format!("m1={m1} and m2={m2} must both divide d={d}")));
    }
    let r1 = r.checked_add(1).ok_or(OkaError::Overflow)?;
    let p = r1.checked_mul(m1).ok_or(OkaError::Overflow)?;
    let q = r1.checked_mul(m2).ok_or(OkaError::Overflow)?;
    Ok(OkaParams::new(p, q, d / m1)?)
}

/// Orbifold structure on a genus `g` surface with `punctures` points removed
/// and cone points of the given orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbifoldSpec {
    pub genus: u64,
    pub punctures: u64,
    pub marks: Vec<u64>,
}

/// Orbifold fundamental group. With at least one puncture this is
/// `F_{2g+s-1} * Z_{m_1} * ... * Z_{m_n}`; a closed orbifold keeps the full
/// surface-group presentation.
pub fn orbifold_group(spec: &OrbifoldSpec) -> Result<GroupAnswer, FiberError> {
    if let Some(&m) = spec.marks.iter().find(|&&m| m < 2) {
        return Err(WordsError::InvalidCyclicOrder(m).into());
    }
    if spec.punctures >= 1 {
        let rank = 2 * spec.genus + spec.punctures - 1;
        let presentation = free_product_presentation(rank as usize, &spec.marks)?;
        let mut factors = Vec::new();
        if rank > 0 {
            factors.push(format!("F_{rank}"));
        }
        factors.extend(spec.marks.iter().map(|m| format!("Z_{m}")));
        let description = if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join(" * ")
        };
        return Ok(GroupAnswer {
            oka: None,
            presentation,
            description,
            assumptions: Vec::new(),
        });
    }
    let g = spec.genus as usize;
    let n = spec.marks.len();
    let mut generators = Vec::with_capacity(2 * g + n);
    for i in 1..=g {
        generators.push(format!("a{i}"));
        generators.push(format!("b{i}"));
    }
    generators.extend((1..=n).map(|i| format!("mu{i}")));
    let mut relators: Vec<Word> = spec
        .marks
        .iter()
        .enumerate()
        .map(|(i, &m)| Word::power(2 * g + i, m as i64))
        .collect();
    let mu_product = (0..n).fold(Word::empty(), |acc, i| acc.concat(&Word::generator(2 * g + i)));
    let commutators = (0..g).fold(Word::empty(), |acc, i| {
        acc.concat(&Word::generator(2 * i).commutator(&Word::generator(2 * i + 1)))
    });
    relators.push(mu_product.concat(&commutators.inverse()));
    Ok(GroupAnswer {
        oka: None,
        presentation: Presentation::new(generators, relators)?,
        description: format!("closed orbifold of genus {} with {} cone points", spec.genus, n),
        assumptions: Vec::new(),
    })
}

/// Parses pencil records, one per line: `p=3 q=2 k=1 fibers=1 special=none`.
/// Blank lines and `#` comments are skipped; `special` defaults to `none`.
pub fn parse_pencil_records(text: &str) -> Result<Vec<PencilSpec>, FiberError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        out.push(parse_pencil_record(content).map_err(|message| FiberError::Record { line, message })?);
    }
    Ok(out)
}

fn parse_pencil_record(content: &str) -> Result<PencilSpec, String> {
    let mut fields: [Option<u64>; 4] = [None; 4];
    let mut special: Option<SpecialFiber> = None;
    for item in content.split_whitespace() {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got `{item}`"))?;
        let slot = match key {
            "p" => 0,
            "q" => 1,
            "k" => 2,
            "fibers" => 3,
            "special" => {
                if special.replace(value.parse()?).is_some() {
                    return Err("duplicate key `special`".into());
                }
                continue;
            }
            other => return Err(format!("unknown key `{other}`")),
        };
        let v: u64 = value
            .parse()
            .map_err(|_| format!("`{key}` expects a non-negative integer, got `{value}`"))?;
        if fields[slot].replace(v).is_some() {
            return Err(format!("duplicate key `{key}`"));
        }
    }
    let names = ["p", "q", "k", "fibers"];
    let mut values = [0u64; 4];
    for (i, f) in fields.iter().enumerate() {
        values[i] = f.ok_or_else(|| format!("missing key `{}`", names[i]))?;
    }
    Ok(PencilSpec::new(
        values[0],
        values[1],
        values[2],
        values[3],
        special.unwrap_or_default(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{abelian_invariants, AbelianInvariants};
    use crate::oka::is_isomorphic;

    fn g(p: u64, q: u64, r: u64) -> OkaParams {
        OkaParams::new(p, q, r).unwrap()
    }

    fn spec(p: u64, q: u64, k: u64, s: u64) -> PencilSpec {
        PencilSpec::new(p, q, k, s, SpecialFiber::None)
    }

    #[test]
    fn validation() {
        assert!(validate_pencil(spec(3, 2, 1, 1)).is_ok());
        let err = validate_pencil(spec(2, 3, 1, 1)).unwrap_err();
        assert_eq!(err.to_string(), "invalid pencil: p<q");
        let err = validate_pencil(spec(4, 2, 1, 1)).unwrap_err();
        assert_eq!(err.to_string(), "invalid pencil: gcd(p,q)≠1");
        let mut both = spec(3, 2, 1, 1);
        both.include_fkp = true;
        both.include_fkq = true;
        assert!(matches!(
            validate_pencil(both),
            Err(FiberError::InvalidPencil(v)) if v == vec![PencilViolation::BothSpecialFibers]
        ));
        let err = validate_pencil(spec(2, 4, 0, 0)).unwrap_err();
        assert_eq!(err.to_string(), "invalid pencil: k=0; fibers=0; p<q; gcd(p,q)≠1");
    }

    #[test]
    fn generic_fiber_examples() {
        assert_eq!(pi1_generic_fibers(spec(3, 2, 1, 1)).unwrap().oka, Some(g(3, 2, 2)));
        let ans = pi1_generic_fibers(spec(5, 3, 1, 1)).unwrap();
        assert_eq!(ans.oka, Some(g(5, 3, 3)));
        assert_eq!(ans.description, "G(5;3;3): free product Z_3 * Z_5");
        let ans = pi1_generic_fibers(spec(1, 1, 7, 1)).unwrap();
        assert_eq!(ans.oka, Some(g(1, 1, 7)));
        assert_eq!(ans.description, "G(1;1;7): finite cyclic Z_7");
        assert!(pi1_generic_fibers(PencilSpec::new(3, 2, 1, 1, SpecialFiber::Fkp)).is_err());
    }

    #[test]
    fn special_fiber_examples() {
        let ans = pi1_with_special_fiber(PencilSpec::new(3, 2, 1, 1, SpecialFiber::Fkp)).unwrap();
        assert_eq!(ans.oka, Some(g(6, 2, 1)));
        assert_eq!(abelian_invariants(&ans.presentation).to_string(), "Z_3 x Z");
        assert_eq!(ans.assumptions.len(), 1);
        assert!(ans.assumptions[0].contains("irreducible"));

        let ans = pi1_with_special_fiber(PencilSpec::new(3, 2, 1, 1, SpecialFiber::Fkq)).unwrap();
        assert_eq!(ans.oka, Some(g(4, 2, 1)));
        assert_eq!(abelian_invariants(&ans.presentation).to_string(), "Z_2 x Z");

        let ans = pi1_with_special_fiber(PencilSpec::new(2, 1, 3, 2, SpecialFiber::Fkp)).unwrap();
        assert_eq!(ans.oka, Some(g(6, 3, 3)));
        assert_eq!(
            abelian_invariants(&ans.presentation),
            AbelianInvariants::from_cyclic_factors(2, &[6])
        );
        assert!(pi1_with_special_fiber(spec(3, 2, 1, 1)).is_err());
    }

    #[test]
    fn add_fiber_examples() {
        assert_eq!(add_generic_fiber(g(3, 2, 2)).unwrap(), g(6, 4, 2));
        assert_eq!(add_generic_fiber(g(6, 4, 2)).unwrap(), g(9, 6, 2));
        assert_eq!(
            Some(g(9, 6, 2)),
            pi1_generic_fibers(spec(3, 2, 1, 3)).unwrap().oka
        );
        assert_eq!(add_generic_fiber(g(1, 1, 5)).unwrap(), g(2, 2, 5));
        assert!(matches!(add_generic_fiber(g(3, 2, 3)), Err(FiberError::NotFiberForm(..))));
        assert!(matches!(add_generic_fiber(g(2, 3, 3)), Err(FiberError::NotFiberForm(..))));
    }

    #[test]
    fn join_examples() {
        assert_eq!(oka_join_example(1, 2, 3, 6).unwrap(), g(4, 6, 3));
        let via_pencil = pi1_generic_fibers(spec(3, 2, 1, 2)).unwrap().oka.unwrap();
        assert_eq!(via_pencil, g(6, 4, 2));
        assert!(is_isomorphic(g(4, 6, 3), via_pencil));
        assert_eq!(oka_join_example(0, 1, 1, 5).unwrap(), g(1, 1, 5));
        assert!(oka_join_example(0, 2, 4, 8).is_err());
        assert!(oka_join_example(0, 2, 3, 4).is_err());
    }

    #[test]
    fn orbifold_examples() {
        let ans = orbifold_group(&OrbifoldSpec { genus: 0, punctures: 1, marks: vec![2, 3] }).unwrap();
        assert_eq!(ans.presentation.to_string(), "< t1, t2 | t1^2, t2^3 >");
        assert_eq!(ans.description, "Z_2 * Z_3");
        let ans = orbifold_group(&OrbifoldSpec { genus: 0, punctures: 2, marks: vec![] }).unwrap();
        assert_eq!(ans.presentation.to_string(), "< x1 | >");
        assert_eq!(ans.description, "F_1");
        let ans = orbifold_group(&OrbifoldSpec { genus: 0, punctures: 0, marks: vec![4, 6] }).unwrap();
        assert_eq!(ans.presentation.generator_count(), 2);
        assert_eq!(ans.presentation.relator_count(), 3);
        assert_eq!(abelian_invariants(&ans.presentation).to_string(), "Z_2");
        let ans = orbifold_group(&OrbifoldSpec { genus: 1, punctures: 0, marks: vec![] }).unwrap();
        assert_eq!(abelian_invariants(&ans.presentation).to_string(), "Z^2");
        assert!(orbifold_group(&OrbifoldSpec { genus: 0, punctures: 1, marks: vec![1] }).is_err());
    }

    #[test]
    fn pencil_records_round_trip() {
        let text = "# pencils\np=3 q=2 k=1 fibers=1 special=none\n\n  p=5 q=3 k=2 fibers=4   # trailing\np=3 q=2 k=1 fibers=2 special=fkq\n";
        let specs = parse_pencil_records(text).unwrap();
        assert_eq!(specs.len(), 3);
        assert_eq!(specs[0].to_string(), "p=3 q=2 k=1 fibers=1 special=none");
        assert_eq!(specs[1].to_string(), "p=5 q=3 k=2 fibers=4 special=none");
        assert_eq!(specs[2].to_string(), "p=3 q=2 k=1 fibers=2 special=fkq");
        let err = parse_pencil_records("p=3 q=2 k=1\n").unwrap_err();
        assert_eq!(err.to_string(), "line 1: missing key `fibers`");
        assert!(parse_pencil_records("p=3 q=2 k=1 fibers=1 colour=red").is_err());
        assert!(parse_pencil_records("p=3 p=2 k=1 fibers=1").is_err());
        assert!(parse_pencil_records("p=3 q=2 k=1 fibers=1 special=both").is_err());
    }
}
