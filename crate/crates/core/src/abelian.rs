//! Relation matrices, Smith normal form and abelian invariants.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::words::Presentation;

/// A dense integer matrix with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            entries.extend(r.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= factor * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, factor: &BigInt, from_col: usize) {
        for j in from_col..self.cols {
            let delta = factor * self.get(src, j);
            self.entries[dst * self.cols + j] -= delta;
        }
    }

    /// col[dst] -= factor * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, factor: &BigInt, from_row: usize) {
        for i in from_row..self.rows {
            let delta = factor * self.get(i, src);
            self.entries[i * self.cols + dst] -= delta;
        }
    }
}

/// One row per relator, one column per generator; entries are exponent sums.
pub fn relation_matrix(p: &Presentation) -> IntegerMatrix {
    let cols = p.generator_count();
    let mut m = IntegerMatrix::zeros(p.relator_count(), cols);
    for (i, r) in p.relators().iter().enumerate() {
        for s in r.syllables() {
            let e = &m.entries[i * cols + s.generator] + s.exponent;
            m.set(i, s.generator, e);
        }
    }
    m
}

/// Diagonal `d_1 | d_2 | ... | d_k` (k = min(rows, cols)) of the Smith normal
/// form. Pivots are chosen as the smallest nonzero magnitude in the remaining
/// submatrix, first in row-major order.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let k = a.rows.min(a.cols);
    let mut diagonal = Vec::with_capacity(k);
    for t in 0..k {
        loop {
            let Some((pi, pj)) = find_pivot(&a, t) else {
                diagonal.resize(k, BigInt::zero());
                return diagonal;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let pivot = a.get(t, t).clone();

            let mut dirty = false;
            for i in t + 1..a.rows {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_floor(&pivot);
                    a.sub_row(i, t, &q, t);
                    dirty |= !a.get(i, t).is_zero();
                }
            }
            for j in t + 1..a.cols {
                if !a.get(t, j).is_zero() {
                    let q = a.get(t, j).div_floor(&pivot);
                    a.sub_col(j, t, &q, t);
                    dirty |= !a.get(t, j).is_zero();
                }
            }
            if dirty {
                continue;
            }
            // Row t and column t are clear; enforce divisibility of the rest.
            let offender = (t + 1..a.rows).find(|&i| {
                (t + 1..a.cols).any(|j| !a.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    for j in t..a.cols {
                        let v = a.get(t, j) + a.get(i, j);
                        a.set(t, j, v);
                    }
                }
                None => {
                    diagonal.push(pivot.abs());
                    break;
                }
            }
        }
    }
    diagonal
}

fn find_pivot(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                best = Some((i, j, mag));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// `Z^free_rank x Z_{d_1} x ... x Z_{d_k}` with `2 <= d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianInvariants {
    /// Invariant-factor form of `Z^free_rank x Z_{n_1} x ... x Z_{n_k}` for
    /// arbitrary positive cyclic orders. Orders equal to 1 are dropped and
    /// order 0 counts as an infinite cyclic factor.
    pub fn from_cyclic_factors(free_rank: usize, orders: &[u64]) -> Self {
        let k = orders.len();
        let mut m = IntegerMatrix::zeros(k, k);
        for (i, &n) in orders.iter().enumerate() {
            m.set(i, i, BigInt::from(n));
        }
        let diag = smith_normal_form(&m);
        let zeros = diag.iter().filter(|d| d.is_zero()).count();
        AbelianInvariants {
            free_rank: free_rank + zeros,
            torsion: diag
                .into_iter()
                .filter(|d| *d > BigInt::one())
                .map(|d| d.magnitude().clone())
                .collect(),
        }
    }

    pub fn trivial() -> Self {
        AbelianInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().product()
    }

    /// Comma-separated torsion coefficients, empty when torsion-free.
    pub fn torsion_list(&self) -> String {
        self.torsion
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z_{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Abelianization of the presented group.
pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let m = relation_matrix(p);
    let diag = smith_normal_form(&m);
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    AbelianInvariants {
        free_rank: p.generator_count() - nonzero,
        torsion: diag
            .into_iter()
            .filter(|d| *d > BigInt::one())
            .map(|d| d.magnitude().clone())
            .collect(),
    }
}
