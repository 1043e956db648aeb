//! Oka's groups `G(p;q;r)`: finite presentations, structural invariants,
//! canonical representatives and the isomorphism test.
//!
//! `G(p;q;r)` is generated by `ω` and `a_i` (`i ∈ Z`) subject to
//! `ω = a_{p-1} ... a_1 a_0`, `ω^r = 1`, `a_i = a_{i+q}` and
//! `a_{i+p} = ω a_i ω^-1`. With `s = gcd(p,q)` and `a = gcd(q/s, r)` it is a
//! central extension
//!
//! ```text
//! 1 -> Z_{r/a} -> G(p;q;r) -> F_{s-1} * Z_{p/s} * Z_a -> 1
//! ```
//!
//! with abelianization `Z_{r·p/s} x Z^{s-1}`, and these data determine the
//! isomorphism class.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::abelian::AbelianInvariants;
use crate::words::{free_product_presentation, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OkaError {
    #[error("parameters must be positive, got G({p};{q};{r})")]
    NonPositive { p: u64, q: u64, r: u64 },
    #[error("gcd({0}, {1}) = {2} is not 1")]
    NotCoprime(u64, u64, u64),
    #[error("{0} must be positive")]
    ZeroParameter(&'static str),
    #[error("parameter overflow")]
    Overflow,
    #[error("parameter {0} exceeds the supported maximum {max}", max = MAX_PARAM)]
    TooLarge(u64),
}

/// Upper bound on each of `p, q, r`; keeps every closed-form product in `u64`.
pub const MAX_PARAM: u64 = 1 << 31;

/// The triple `(p, q, r)` of `G(p;q;r)`, all positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OkaParams {
    p: u64,
    q: u64,
    r: u64,
}

impl OkaParams {
    pub fn new(p: u64, q: u64, r: u64) -> Result<Self, OkaError> {
        if p == 0 || q == 0 || r == 0 {
            return Err(OkaError::NonPositive { p, q, r });
        }
        if let Some(&big) = [p, q, r].iter().find(|&&v| v > MAX_PARAM) {
            return Err(OkaError::TooLarge(big));
        }
        Ok(OkaParams { p, q, r })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn as_tuple(&self) -> (u64, u64, u64) {
        (self.p, self.q, self.r)
    }
}

impl fmt::Display for OkaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({};{};{})", self.p, self.q, self.r)
    }
}

/// Parameters `(r, m1, m2, n)` of
/// `H = < x_1..x_r, a, b | a^m1 = b^m2, a^(m1·n), [a^m1, x_i] >`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimplifiedParams {
    pub free_rank: u64,
    pub m1: u64,
    pub m2: u64,
    pub n: u64,
}

impl SimplifiedParams {
    pub fn new(free_rank: u64, m1: u64, m2: u64, n: u64) -> Result<Self, OkaError> {
        for (name, v) in [("m1", m1), ("m2", m2), ("n", n)] {
            if v == 0 {
                return Err(OkaError::ZeroParameter(name));
            }
        }
        if let Some(&big) = [free_rank, m1, m2, n].iter().find(|&&v| v > MAX_PARAM) {
            return Err(OkaError::TooLarge(big));
        }
        let g = m1.gcd(&m2);
        if g != 1 {
            return Err(OkaError::NotCoprime(m1, m2, g));
        }
        Ok(SimplifiedParams {
            free_rank,
            m1,
            m2,
            n,
        })
    }

    /// The `H` matching `G(p;q;r)`: `(s-1, p/s, a, r/a)`.
    pub fn for_oka(g: OkaParams) -> Self {
        let st = structure(g);
        SimplifiedParams {
            free_rank: st.quotient_free_rank,
            m1: g.p / st.s,
            m2: st.a,
            n: st.center_order,
        }
    }
}

/// Finite presentation of `G(p;q;r)` on generators `a0, ..., a{q-1}, w`.
///
/// Indices are taken mod `q`, and the conjugation relators are instantiated
/// for `i = 0..q-1` only; the remaining instances follow from periodicity.
pub fn oka_presentation(g: OkaParams) -> Presentation {
    let q = g.q as usize;
    let w = q;
    let mut generators: Vec<String> = (0..q).map(|i| format!("a{i}")).collect();
    generators.push("w".to_string());

    let mut relators = Vec::with_capacity(q + 2);
    // w * (a_{p-1} ... a_0)^-1 = w * a_0^-1 * a_1^-1 * ... * a_{p-1}^-1
    if q == 1 {
        relators.push(Word::free_reduce([(w, 1), (0, -(g.p as i64))]));
    } else {
        let product_inverse = (0..g.p).map(|i| ((i % g.q) as usize, -1));
        relators.push(Word::free_reduce(std::iter::once((w, 1)).chain(product_inverse)));
    }
    relators.push(Word::power(w, g.r as i64));
    let shift = (g.p % g.q) as usize;
    for i in 0..q {
        let target = (i + shift) % q;
        relators.push(Word::free_reduce([(target, 1), (w, 1), (i, -1), (w, -1)]));
    }
    Presentation::new(generators, relators).expect("generated names are valid")
}

/// Presentation of `H(r, m1, m2, n)` on generators `x1..xr, a, b`.
pub fn simplified_presentation(h: SimplifiedParams) -> Presentation {
    let r = h.free_rank as usize;
    let (a, b) = (r, r + 1);
    let mut generators: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    generators.push("a".to_string());
    generators.push("b".to_string());

    let m1 = h.m1 as i64;
    let mut relators = vec![
        Word::free_reduce([(a, m1), (b, -(h.m2 as i64))]),
        Word::power(a, m1 * h.n as i64),
    ];
    let central = Word::power(a, m1);
    for x in 0..r {
        relators.push(central.commutator(&Word::generator(x)));
    }
    Presentation::new(generators, relators).expect("generated names are valid")
}

/// Closed-form invariants of `G(p;q;r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    /// `gcd(p, q)`
    pub s: u64,
    /// `gcd(q/s, r)`
    pub a: u64,
    /// Order `r/a` of the central cyclic kernel.
    pub center_order: u64,
    /// `s - 1`
    pub quotient_free_rank: u64,
    /// Nontrivial entries of `{p/s, a}`, ascending.
    pub quotient_cyclic_orders: Vec<u64>,
    pub abelianization: AbelianInvariants,
    pub is_abelian: bool,
    pub is_finite_cyclic: bool,
    /// `r·p` when finite cyclic.
    pub finite_cyclic_order: Option<u64>,
    pub splits_as_direct_product: bool,
}

impl StructureReport {
    /// `F_{s-1} * Z_{p/s} * Z_a`, trivial factors omitted.
    pub fn quotient_description(&self) -> String {
        let mut parts = Vec::new();
        if self.quotient_free_rank > 0 {
            parts.push(format!("F_{}", self.quotient_free_rank));
        }
        parts.extend(self.quotient_cyclic_orders.iter().map(|m| format!("Z_{m}")));
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" * ")
        }
    }

    /// One-line human summary.
    pub fn describe(&self) -> String {
        if let Some(n) = self.finite_cyclic_order {
            return format!("finite cyclic Z_{n}");
        }
        let mut text = format!(
            "central extension of {} by Z_{}",
            self.quotient_description(),
            self.center_order
        );
        if self.center_order == 1 {
            text = format!("free product {}", self.quotient_description());
        } else if self.splits_as_direct_product {
            text.push_str(&format!(
                " (splits as Z_{} x ({}))",
                self.center_order,
                self.quotient_description()
            ));
        }
        if self.is_abelian {
            text.push_str(", abelian");
        }
        text
    }
}

/// Computes the invariants of `G(p;q;r)` from the closed forms.
pub fn structure(g: OkaParams) -> StructureReport {
    let (p, q, r) = g.as_tuple();
    let s = p.gcd(&q);
    let a = (q / s).gcd(&r);
    let ps = p / s;
    let center_order = r / a;
    let mut quotient_cyclic_orders: Vec<u64> = [ps, a].into_iter().filter(|&m| m > 1).collect();
    quotient_cyclic_orders.sort_unstable();
    let abelianization = AbelianInvariants::from_cyclic_factors((s - 1) as usize, &[r * ps]);
    let is_finite_cyclic = s == 1 && p.min(a) == 1;
    let is_abelian = is_finite_cyclic || (s == 2 && ps == 1 && a == 1);
    StructureReport {
        s,
        a,
        center_order,
        quotient_free_rank: s - 1,
        quotient_cyclic_orders,
        abelianization,
        is_abelian,
        is_finite_cyclic,
        finite_cyclic_order: is_finite_cyclic.then_some(r * p),
        splits_as_direct_product: center_order.gcd(&(ps * a)) == 1,
    }
}

/// `(s, r/a, {a, p/s})` with the pair sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantTriple {
    pub s: u64,
    pub center_order: u64,
    pub factors: (u64, u64),
}

impl InvariantTriple {
    pub fn of(g: OkaParams) -> Self {
        let st = structure(g);
        let ps = g.p / st.s;
        InvariantTriple {
            s: st.s,
            center_order: st.center_order,
            factors: (ps.min(st.a), ps.max(st.a)),
        }
    }
}

impl fmt::Display for InvariantTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s:{},center:{},factors:{{{},{}}}",
            self.s, self.center_order, self.factors.0, self.factors.1
        )
    }
}

/// The distinguished representative of the isomorphism class of `G(p;q;r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonicalOkaForm {
    pub params: OkaParams,
    /// Invariants of `params`. Outside the finite cyclic case they agree
    /// with the invariants of every group in the class.
    pub invariant_triple: InvariantTriple,
    pub cyclic: bool,
}

/// Finite cyclic groups map to `(N;1;1)`. Otherwise the result is whichever
/// of `G(p; a·s; r)` and `G(a·s; p; (r/a)·(p/s))` has `p' >= q'`.
pub fn canonical_form(g: OkaParams) -> CanonicalOkaForm {
    let st = structure(g);
    let params = if let Some(n) = st.finite_cyclic_order {
        OkaParams::new(n, 1, 1).expect("positive")
    } else {
        let as_ = st.a * st.s;
        if g.p >= as_ {
            OkaParams::new(g.p, as_, g.r).expect("positive")
        } else {
            OkaParams::new(as_, g.p, st.center_order * (g.p / st.s)).expect("positive")
        }
    };
    CanonicalOkaForm {
        params,
        invariant_triple: InvariantTriple::of(params),
        cyclic: st.is_finite_cyclic,
    }
}

/// Decides `G(p1;q1;r1) ≅ G(p2;q2;r2)`.
pub fn is_isomorphic(g1: OkaParams, g2: OkaParams) -> bool {
    let (s1, s2) = (structure(g1), structure(g2));
    match (s1.finite_cyclic_order, s2.finite_cyclic_order) {
        (Some(n1), Some(n2)) => n1 == n2,
        (None, None) => InvariantTriple::of(g1) == InvariantTriple::of(g2),
        _ => false,
    }
}

/// `G(sp; sq; q) ≅ F_{s-1} * Z_p * Z_q` for coprime `p, q`.
pub fn free_product_to_oka(s: u64, p: u64, q: u64) -> Result<OkaParams, OkaError> {
    for (name, v) in [("s", s), ("p", p), ("q", q)] {
        if v == 0 {
            return Err(OkaError::ZeroParameter(name));
        }
    }
    let g = p.gcd(&q);
    if g != 1 {
        return Err(OkaError::NotCoprime(p, q, g));
    }
    let sp = s.checked_mul(p).ok_or(OkaError::Overflow)?;
    let sq = s.checked_mul(q).ok_or(OkaError::Overflow)?;
    OkaParams::new(sp, sq, q)
}

/// Presentation of `Z_{r/a} x (F_{s-1} * Z_{p/s} * Z_a)`: the free product
/// presentation plus a central generator `z`.
pub fn split_product_presentation(g: OkaParams) -> Presentation {
    let st = structure(g);
    let base = free_product_presentation(st.quotient_free_rank as usize, &st.quotient_cyclic_orders)
        .expect("orders are at least 2");
    let z = base.generator_count();
    let mut generators = base.generators().to_vec();
    generators.push("z".to_string());
    let mut relators = base.relators().to_vec();
    relators.push(Word::power(z, st.center_order as i64));
    for x in 0..z {
        relators.push(Word::generator(z).commutator(&Word::generator(x)));
    }
    Presentation::new(generators, relators).expect("generated names are valid")
}
