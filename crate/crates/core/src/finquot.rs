//! Finite groups given by Cayley tables and exact homomorphism counting.
//!
//! `count_homomorphisms` enumerates assignments of generators to group
//! elements depth-first. Relators are checked as soon as all of their
//! generators are assigned, and a generator that occurs exactly once (with
//! exponent ±1) in a relator whose other generators are known is solved for
//! instead of enumerated.

use std::fmt;

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::words::Presentation;

/// Groups of at most this order get a full associativity check.
const FULL_ASSOCIATIVITY_CHECK: usize = 64;
const SAMPLED_TRIPLES: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinquotError {
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("{family}:{n} is out of range ({reason})")]
    OutOfRange {
        family: String,
        n: usize,
        reason: String,
    },
    #[error("unknown target family `{0}`")]
    UnknownFamily(String),
    #[error("malformed target specifier `{0}` (expected family:n)")]
    MalformedSpecifier(String),
    #[error("presentation has {generators} generators, above the cap of {cap}")]
    GeneratorCap { generators: usize, cap: usize },
    #[error("target {label} has order {order}, above the cap of {cap}")]
    TargetOrderCap {
        label: String,
        order: usize,
        cap: usize,
    },
}

impl FinquotError {
    /// True when the search was refused for cost rather than invalid input.
    pub fn is_cap_refusal(&self) -> bool {
        matches!(
            self,
            FinquotError::GeneratorCap { .. } | FinquotError::TargetOrderCap { .. }
        )
    }
}

/// A finite group on elements `0..order` given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
    label: String,
}

impl FiniteGroup {
    /// Validates a row-major table (`table[a * order + b] = a·b`) and derives
    /// the identity and inverses.
    pub fn from_table(label: impl Into<String>, order: usize, table: Vec<u32>) -> Result<Self, FinquotError> {
        let bad = |m: String| Err(FinquotError::InvalidTable(m));
        if order == 0 {
            return bad("order must be positive".into());
        }
        if table.len() != order * order {
            return bad(format!("expected {} entries, got {}", order * order, table.len()));
        }
        if let Some(&x) = table.iter().find(|&&x| x as usize >= order) {
            return bad(format!("entry {x} out of range"));
        }
        let mul = |a: usize, b: usize| table[a * order + b] as usize;
        let Some(identity) = (0..order).find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x)) else {
            return bad("no identity element".into());
        };
        let mut inverse = Vec::with_capacity(order);
        for x in 0..order {
            match (0..order).find(|&y| mul(x, y) == identity && mul(y, x) == identity) {
                Some(y) => inverse.push(y as u32),
                None => return bad(format!("element {x} has no inverse")),
            }
        }
        let associative = |a: usize, b: usize, c: usize| mul(mul(a, b), c) == mul(a, mul(b, c));
        if order <= FULL_ASSOCIATIVITY_CHECK {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !associative(a, b, c) {
                            return bad(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = SmallRng::seed_from_u64(order as u64);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order));
                if !associative(a, b, c) {
                    return bad(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                }
            }
        }
        Ok(FiniteGroup {
            order,
            table,
            identity: identity as u32,
            inverse,
            label: label.into(),
        })
    }

    /// Builds the table from a multiplication closure.
    pub fn from_fn(
        label: impl Into<String>,
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, FinquotError> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b) as u32);
            }
        }
        Self::from_table(label, order, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `x^e` for any integer exponent.
    pub fn pow(&self, x: u32, e: i64) -> u32 {
        let base = if e < 0 { self.inv(x) } else { x };
        // x^|G| = 1
        let mut e = e.unsigned_abs() % self.order as u64;
        let (mut acc, mut sq) = (self.identity, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// Order of the element `x`.
    pub fn element_order(&self, x: u32) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order)
    }
}

/// `Z_n` under addition mod `n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup, FinquotError> {
    if n == 0 {
        return Err(FinquotError::OutOfRange {
            family: "cyclic".into(),
            n,
            reason: "n must be at least 1".into(),
        });
    }
    FiniteGroup::from_fn(format!("cyclic:{n}"), n, |a, b| (a + b) % n)
}

/// Permutations of `0..n` in lexicographic one-line order.
pub fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut all = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return all;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        all.push(current.clone());
    }
}

/// `S_n` for `1 <= n <= 5`; the product `σ·τ` is the composition `σ ∘ τ`.
pub fn make_symmetric(n: usize) -> Result<FiniteGroup, FinquotError> {
    if !(1..=5).contains(&n) {
        return Err(FinquotError::OutOfRange {
            family: "sym".into(),
            n,
            reason: "n must be between 1 and 5".into(),
        });
    }
    let perms = permutations_lex(n);
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation");
    FiniteGroup::from_fn(format!("sym:{n}"), perms.len(), |a, b| {
        let composed: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
        index(&composed)
    })
}

/// Dihedral group of order `2n`; element `2k + j` stands for `r^k s^j`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup, FinquotError> {
    if n == 0 {
        return Err(FinquotError::OutOfRange {
            family: "dihedral".into(),
            n,
            reason: "n must be at least 1".into(),
        });
    }
    // r^k1 s^j1 r^k2 s^j2 = r^(k1 + (-1)^j1 k2) s^(j1 + j2)
    FiniteGroup::from_fn(format!("dihedral:{n}"), 2 * n, |a, b| {
        let (k1, j1, k2, j2) = (a / 2, a % 2, b / 2, b % 2);
        let k = if j1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
        2 * k + (j1 ^ j2)
    })
}

/// A named family of finite groups indexed by one positive integer.
pub trait TargetFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn build(&self, n: usize) -> Result<FiniteGroup, FinquotError>;
}

struct CyclicFamily;
struct SymmetricFamily;
struct DihedralFamily;

impl TargetFamily for CyclicFamily {
    fn name(&self) -> &'static str {
        "cyclic"
    }
    fn summary(&self) -> &'static str {
        "cyclic group Z_n"
    }
    fn build(&self, n: usize) -> Result<FiniteGroup, FinquotError> {
        make_cyclic(n)
    }
}

impl TargetFamily for SymmetricFamily {
    fn name(&self) -> &'static str {
        "sym"
    }
    fn summary(&self) -> &'static str {
        "symmetric group S_n, 1 <= n <= 5"
    }
    fn build(&self, n: usize) -> Result<FiniteGroup, FinquotError> {
        make_symmetric(n)
    }
}

impl TargetFamily for DihedralFamily {
    fn name(&self) -> &'static str {
        "dihedral"
    }
    fn summary(&self) -> &'static str {
        "dihedral group of order 2n"
    }
    fn build(&self, n: usize) -> Result<FiniteGroup, FinquotError> {
        make_dihedral(n)
    }
}

/// Target families looked up by name from `family:n` specifiers.
pub struct TargetRegistry {
    families: Vec<Box<dyn TargetFamily>>,
}

impl Default for TargetRegistry {
    fn default() -> Self {
        let mut reg = TargetRegistry::empty();
        reg.register(Box::new(CyclicFamily));
        reg.register(Box::new(SymmetricFamily));
        reg.register(Box::new(DihedralFamily));
        reg
    }
}

impl TargetRegistry {
    pub fn empty() -> Self {
        TargetRegistry {
            families: Vec::new(),
        }
    }

    /// Adds a family, replacing any previous one with the same name.
    pub fn register(&mut self, family: Box<dyn TargetFamily>) {
        self.families.retain(|f| f.name() != family.name());
        self.families.push(family);
    }

    pub fn get(&self, name: &str) -> Option<&dyn TargetFamily> {
        self.families.iter().find(|f| f.name() == name).map(|f| f.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.iter().map(|f| f.name()).collect()
    }

    /// Builds the group named by `family:n`.
    pub fn build(&self, spec: &str) -> Result<FiniteGroup, FinquotError> {
        let malformed = || FinquotError::MalformedSpecifier(spec.to_string());
        let (name, n) = spec.trim().split_once(':').ok_or_else(malformed)?;
        let n: usize = n.trim().parse().map_err(|_| malformed())?;
        let family = self
            .get(name.trim())
            .ok_or_else(|| FinquotError::UnknownFamily(name.trim().to_string()))?;
        family.build(n)
    }

    /// Builds every group in a comma-separated list of specifiers.
    pub fn build_list(&self, specs: &str) -> Result<Vec<FiniteGroup>, FinquotError> {
        specs.split(',').map(|s| self.build(s)).collect()
    }
}

/// Refusal thresholds for the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_generators: usize,
    pub max_target_order: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_generators: 6,
            max_target_order: 120,
        }
    }
}

/// Homomorphism counts into a list of targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpectrum {
    pub targets: Vec<String>,
    pub counts: Vec<u64>,
}

impl fmt::Display for HomSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .targets
            .iter()
            .zip(&self.counts)
            .map(|(t, c)| format!("{t}={c}"))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Number of homomorphisms from the presented group to `target`, with the
/// default search limits.
pub fn count_homomorphisms(p: &Presentation, target: &FiniteGroup) -> Result<u64, FinquotError> {
    count_homomorphisms_with(p, target, SearchLimits::default())
}

pub fn count_homomorphisms_with(
    p: &Presentation,
    target: &FiniteGroup,
    limits: SearchLimits,
) -> Result<u64, FinquotError> {
    if p.generator_count() > limits.max_generators {
        return Err(FinquotError::GeneratorCap {
            generators: p.generator_count(),
            cap: limits.max_generators,
        });
    }
    if target.order() > limits.max_target_order {
        return Err(FinquotError::TargetOrderCap {
            label: target.label().to_string(),
            order: target.order(),
            cap: limits.max_target_order,
        });
    }
    Ok(Search::new(p, target).count())
}

pub fn hom_spectrum(p: &Presentation, targets: &[FiniteGroup]) -> Result<HomSpectrum, FinquotError> {
    hom_spectrum_with(p, targets, SearchLimits::default())
}

pub fn hom_spectrum_with(
    p: &Presentation,
    targets: &[FiniteGroup],
    limits: SearchLimits,
) -> Result<HomSpectrum, FinquotError> {
    let counts = targets
        .iter()
        .map(|t| count_homomorphisms_with(p, t, limits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HomSpectrum {
        targets: targets.iter().map(|t| t.label().to_string()).collect(),
        counts,
    })
}

// --- search ----------------------------------------------------------------

struct Relator {
    syllables: Vec<(usize, i64)>,
    /// Distinct generators occurring in the relator.
    generators: Vec<usize>,
}

struct Search<'a> {
    group: &'a FiniteGroup,
    relators: Vec<Relator>,
    /// Relator indices containing each generator.
    occurs_in: Vec<Vec<usize>>,
    generator_count: usize,
}

#[derive(Clone)]
struct State {
    assignment: Vec<Option<u32>>,
    /// Unassigned distinct generators per relator.
    pending: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(p: &Presentation, group: &'a FiniteGroup) -> Self {
        let generator_count = p.generator_count();
        let mut occurs_in = vec![Vec::new(); generator_count];
        let relators: Vec<Relator> = p
            .relators()
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let syllables: Vec<(usize, i64)> =
                    w.syllables().iter().map(|s| (s.generator, s.exponent)).collect();
                let mut generators: Vec<usize> = syllables.iter().map(|&(g, _)| g).collect();
                generators.sort_unstable();
                generators.dedup();
                for &g in &generators {
                    occurs_in[g].push(k);
                }
                Relator {
                    syllables,
                    generators,
                }
            })
            .collect();
        Search {
            group,
            relators,
            occurs_in,
            generator_count,
        }
    }

    fn count(&self) -> u64 {
        let mut state = State {
            assignment: vec![None; self.generator_count],
            pending: self.relators.iter().map(|r| r.generators.len()).collect(),
        };
        let mut trail = Vec::new();
        if !self.propagate(&mut state, &mut trail) {
            return 0;
        }
        let Some(branch) = self.choose_branch(&state) else {
            return 1;
        };
        // Top-level split; the sum is independent of scheduling.
        self.group
            .elements()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|x| {
                let mut st = state.clone();
                let mut trail = Vec::new();
                if self.assign(&mut st, branch, x, &mut trail) {
                    self.descend(&mut st)
                } else {
                    0
                }
            })
            .sum()
    }

    fn descend(&self, state: &mut State) -> u64 {
        let mut trail = Vec::new();
        let total = if self.propagate(state, &mut trail) {
            match self.choose_branch(state) {
                None => 1,
                Some(g) => {
                    let mut sum = 0;
                    for x in self.group.elements() {
                        let mut inner = Vec::new();
                        if self.assign(state, g, x, &mut inner) {
                            sum += self.descend(state);
                        }
                        self.undo(state, &mut inner);
                    }
                    sum
                }
            }
        } else {
            0
        };
        self.undo(state, &mut trail);
        total
    }

    /// Assigns `g := x` and checks every relator that became fully assigned.
    /// The assignment is recorded on `trail` even when the check fails.
    fn assign(&self, state: &mut State, g: usize, x: u32, trail: &mut Vec<usize>) -> bool {
        state.assignment[g] = Some(x);
        trail.push(g);
        let mut ok = true;
        for &k in &self.occurs_in[g] {
            state.pending[k] -= 1;
            if ok && state.pending[k] == 0 && self.evaluate(state, k) != self.group.identity() {
                ok = false;
            }
        }
        ok
    }

    fn undo(&self, state: &mut State, trail: &mut Vec<usize>) {
        while let Some(g) = trail.pop() {
            state.assignment[g] = None;
            for &k in &self.occurs_in[g] {
                state.pending[k] += 1;
            }
        }
    }

    /// Assigns every generator forced by a relator; false on contradiction.
    fn propagate(&self, state: &mut State, trail: &mut Vec<usize>) -> bool {
        loop {
            let forced = self
                .relators
                .iter()
                .enumerate()
                .filter(|&(k, _)| state.pending[k] == 1)
                .find_map(|(k, _)| self.solve(state, k));
            match forced {
                None => return true,
                Some((g, x)) => {
                    if !self.assign(state, g, x, trail) {
                        return false;
                    }
                }
            }
        }
    }

    /// If relator `k` has one unassigned generator occurring once with
    /// exponent ±1, returns its forced value.
    fn solve(&self, state: &State, k: usize) -> Option<(usize, u32)> {
        let rel = &self.relators[k];
        let &g = rel.generators.iter().find(|&&g| state.assignment[g].is_none())?;
        let mut positions = rel.syllables.iter().enumerate().filter(|(_, s)| s.0 == g);
        let (pos, &(_, e)) = positions.next()?;
        if positions.next().is_some() || e.abs() != 1 {
            return None;
        }
        // u * g^e * v = 1  =>  g^e = u^-1 * v^-1
        let u = self.evaluate_range(state, &rel.syllables[..pos]);
        let v = self.evaluate_range(state, &rel.syllables[pos + 1..]);
        let ge = self.group.mul(self.group.inv(u), self.group.inv(v));
        Some((g, if e == 1 { ge } else { self.group.inv(ge) }))
    }

    fn evaluate(&self, state: &State, k: usize) -> u32 {
        self.evaluate_range(state, &self.relators[k].syllables)
    }

    fn evaluate_range(&self, state: &State, syllables: &[(usize, i64)]) -> u32 {
        syllables.iter().fold(self.group.identity(), |acc, &(g, e)| {
            let x = state.assignment[g].expect("assigned");
            self.group.mul(acc, self.group.pow(x, e))
        })
    }

    /// Picks the unassigned generator that completes the most relators,
    /// then the one sharing most relators with assigned generators, then the
    /// most frequent, then the lowest index.
    fn choose_branch(&self, state: &State) -> Option<usize> {
        (0..self.generator_count)
            .filter(|&g| state.assignment[g].is_none())
            .max_by_key(|&g| {
                let rels = &self.occurs_in[g];
                let completes = rels.iter().filter(|&&k| state.pending[k] == 1).count();
                let touches = rels
                    .iter()
                    .filter(|&&k| state.pending[k] < self.relators[k].generators.len())
                    .count();
                (completes, touches, rels.len(), std::cmp::Reverse(g))
            })
    }
}
