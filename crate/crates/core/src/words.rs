//! Words over indexed generators and finite group presentations.
//!
//! A [`Word`] is kept freely reduced at all times. Relators inside a
//! [`Presentation`] are additionally cyclically reduced and rotated to their
//! least rotation, so two presentations with the same relators (up to
//! conjugation) compare equal structurally.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Maximum number of syllables a parsed word may expand to.
const MAX_PARSED_SYLLABLES: usize = 1 << 20;

/// Largest exponent magnitude accepted by the parser.
const MAX_PARSED_EXPONENT: i64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordsError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator `{name}` at line {line}, column {column}")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("relator uses generator index {index} but only {count} generators exist")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("cyclic order {0} is not at least 2")]
    InvalidCyclicOrder(u64),
}

/// A power `x_generator ^ exponent` of a single generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

impl Syllable {
    pub fn new(generator: usize, exponent: i64) -> Self {
        Syllable {
            generator,
            exponent,
        }
    }
}

/// A freely reduced word: adjacent syllables never share a generator and no
/// exponent is zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// The word consisting of a single syllable.
    pub fn power(generator: usize, exponent: i64) -> Self {
        Word::free_reduce([(generator, exponent)])
    }

    pub fn generator(generator: usize) -> Self {
        Word::power(generator, 1)
    }

    /// Freely reduces an arbitrary sequence of `(generator, exponent)` pairs.
    pub fn free_reduce<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut out: Vec<Syllable> = Vec::new();
        for (generator, exponent) in raw {
            push_syllable(&mut out, Syllable::new(generator, exponent));
        }
        Word { syllables: out }
    }

    /// Returns a cyclically reduced conjugate, rotated to the least rotation
    /// in syllable order (generator index first, then exponent).
    pub fn cyclic_reduce(&self) -> Word {
        let mut syl = self.syllables.clone();
        while syl.len() >= 2 && syl[0].generator == syl[syl.len() - 1].generator {
            let last = syl.pop().expect("len >= 2");
            let merged = syl[0].exponent + last.exponent;
            if merged == 0 {
                syl.remove(0);
            } else {
                syl[0].exponent = merged;
            }
        }
        if syl.len() <= 1 {
            return Word { syllables: syl };
        }
        let best = (0..syl.len())
            .min_by(|&i, &j| compare_rotations(&syl, i, j))
            .expect("non-empty");
        syl.rotate_left(best);
        Word { syllables: syl }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of syllables.
    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    /// Length as a word in the letters `x^{±1}`.
    pub fn letter_length(&self) -> u64 {
        self.syllables
            .iter()
            .map(|s| s.exponent.unsigned_abs())
            .sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
        }
    }

    /// Freely reduced product `self * other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.syllables.clone();
        for &s in &other.syllables {
            push_syllable(&mut out, s);
        }
        Word { syllables: out }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Commutator `self * other * self^-1 * other^-1`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.concat(other)
            .concat(&self.inverse())
            .concat(&other.inverse())
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.generator).max()
    }

    /// Total exponent of `generator` in the word.
    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| s.exponent)
            .sum()
    }

    /// Formats the word with the given generator names, `1` for the empty word.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

fn push_syllable(out: &mut Vec<Syllable>, s: Syllable) {
    if s.exponent == 0 {
        return;
    }
    match out.last_mut() {
        Some(top) if top.generator == s.generator => {
            top.exponent += s.exponent;
            if top.exponent == 0 {
                out.pop();
            }
        }
        _ => out.push(s),
    }
}

fn compare_rotations(syl: &[Syllable], i: usize, j: usize) -> Ordering {
    let n = syl.len();
    (0..n)
        .map(|k| syl[(i + k) % n].cmp(&syl[(j + k) % n]))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (k, s) in self.word.syllables.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            match self.names.get(s.generator) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "g{}", s.generator)?,
            }
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

/// Checks a generator name against `letter (letter | digit | '_')*`, ASCII only.
pub fn is_valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite presentation `< generators | relators >`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation, normalizing every relator and dropping the ones
    /// that reduce to the empty word.
    pub fn new<S, I>(generators: I, relators: Vec<Word>) -> Result<Self, WordsError>
    where
        S: Into<String>,
        I: IntoIterator<Item = S>,
    {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        for (i, name) in generators.iter().enumerate() {
            if !is_valid_identifier(name) {
                return Err(WordsError::InvalidGeneratorName(name.clone()));
            }
            if generators[..i].contains(name) {
                return Err(WordsError::DuplicateGenerator(name.clone()));
            }
        }
        let count = generators.len();
        let mut normalized = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(index) = r.max_generator().filter(|&m| m >= count) {
                return Err(WordsError::GeneratorOutOfRange { index, count });
            }
            let r = r.cyclic_reduce();
            if !r.is_empty() {
                normalized.push(r);
            }
        }
        Ok(Presentation {
            generators,
            relators: normalized,
        })
    }

    /// The presentation of the trivial group with no generators.
    pub fn trivial() -> Self {
        Presentation {
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Free product: the generators of `other` are appended (renamed with a
    /// numeric suffix on collision) and the relator lists are concatenated.
    pub fn free_product(&self, other: &Presentation) -> Presentation {
        let offset = self.generators.len();
        let mut generators = self.generators.clone();
        for name in &other.generators {
            let mut candidate = name.clone();
            let mut k = 2;
            while generators.contains(&candidate) || other_collides(other, name, &candidate) {
                candidate = format!("{name}_{k}");
                k += 1;
            }
            generators.push(candidate);
        }
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().map(|w| {
            Word::free_reduce(
                w.syllables()
                    .iter()
                    .map(|s| (s.generator + offset, s.exponent)),
            )
        }));
        Presentation::new(generators, relators).expect("free product of valid presentations")
    }
}

fn other_collides(other: &Presentation, original: &str, candidate: &str) -> bool {
    candidate != original && other.generators.iter().any(|g| g == candidate)
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        if !self.generators.is_empty() {
            write!(f, " {}", self.generators.join(", "))?;
        }
        write!(f, " |")?;
        for (k, r) in self.relators.iter().enumerate() {
            let sep = if k > 0 { ", " } else { " " };
            write!(f, "{sep}{}", r.display_with(&self.generators))?;
        }
        write!(f, " >")
    }
}

/// Canonical textual form; `parse_presentation(&print_presentation(p)) == p`.
pub fn print_presentation(p: &Presentation) -> String {
    p.to_string()
}

/// Presentation of `F_free_rank * Z_{m_1} * ... * Z_{m_n}` on generators
/// `x1.. , t1..`.
pub fn free_product_presentation(
    free_rank: usize,
    cyclic_orders: &[u64],
) -> Result<Presentation, WordsError> {
    if let Some(&bad) = cyclic_orders.iter().find(|&&m| m < 2) {
        return Err(WordsError::InvalidCyclicOrder(bad));
    }
    let mut generators: Vec<String> = (1..=free_rank).map(|i| format!("x{i}")).collect();
    generators.extend((1..=cyclic_orders.len()).map(|i| format!("t{i}")));
    let relators = cyclic_orders
        .iter()
        .enumerate()
        .map(|(i, &m)| Word::power(free_rank + i, m as i64))
        .collect();
    Presentation::new(generators, relators)
}

// --- parsing -------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Token {
    LAngle,
    RAngle,
    Bar,
    Comma,
    Star,
    Caret,
    Equals,
    LParen,
    RParen,
    Ident(String),
    Integer(i64),
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> WordsError {
    WordsError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<(Vec<Spanned>, (usize, usize)), WordsError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, column);
        let single = match c {
            '<' => Some(Token::LAngle),
            '>' => Some(Token::RAngle),
            '|' => Some(Token::Bar),
            ',' => Some(Token::Comma),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '=' => Some(Token::Equals),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(token) = single {
            chars.next();
            column += 1;
            tokens.push(Spanned {
                token,
                line: tl,
                column: tc,
            });
            continue;
        }
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            // comment to end of line
            while chars.peek().is_some_and(|&d| d != '\n') {
                chars.next();
            }
        } else if c.is_ascii_alphabetic() {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    name.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            tokens.push(Spanned {
                token: Token::Ident(name),
                line: tl,
                column: tc,
            });
        } else if c == '-' || c.is_ascii_digit() {
            let mut digits = String::new();
            if c == '-' {
                digits.push('-');
                chars.next();
                column += 1;
            }
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            if digits == "-" {
                return Err(syntax(tl, tc, "expected digits after '-'"));
            }
            let value: i64 = digits
                .parse()
                .ok()
                .filter(|v: &i64| v.abs() <= MAX_PARSED_EXPONENT)
                .ok_or_else(|| syntax(tl, tc, format!("integer `{digits}` out of range")))?;
            tokens.push(Spanned {
                token: Token::Integer(value),
                line: tl,
                column: tc,
            });
        } else {
            return Err(syntax(tl, tc, format!("unexpected character `{c}`")));
        }
    }
    Ok((tokens, (line, column)))
}

struct Parser<'a> {
    tokens: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    generators: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    fn location(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> WordsError {
        let (line, column) = self.location();
        syntax(line, column, message)
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), WordsError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Token::Ident(_)) | Some(Token::LParen))
    }

    fn word(&mut self) -> Result<Word, WordsError> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
                let f = self.factor()?;
                acc = self.checked_concat(acc, &f)?;
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = self.checked_concat(acc, &f)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn checked_concat(&self, a: Word, b: &Word) -> Result<Word, WordsError> {
        if a.syllable_count() + b.syllable_count() > MAX_PARSED_SYLLABLES {
            return Err(self.error("word too long"));
        }
        Ok(a.concat(b))
    }

    fn exponent(&mut self) -> Result<i64, WordsError> {
        if self.peek() != Some(&Token::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        match self.peek() {
            Some(&Token::Integer(0)) => Err(self.error("exponent must be nonzero")),
            Some(&Token::Integer(e)) => {
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error("expected integer exponent")),
        }
    }

    fn factor(&mut self) -> Result<Word, WordsError> {
        let (line, column) = self.location();
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let index = self
                    .generators
                    .iter()
                    .position(|g| *g == name)
                    .ok_or(WordsError::UnknownGenerator { name, line, column })?;
                let e = self.exponent()?;
                Ok(Word::power(index, e))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.word()?;
                self.expect(Token::RParen, "')'")?;
                let e = self.exponent()?;
                let size = inner.syllable_count() as u128 * e.unsigned_abs() as u128;
                if size > MAX_PARSED_SYLLABLES as u128 {
                    return Err(syntax(line, column, "word too long"));
                }
                Ok(inner.pow(e))
            }
            _ => Err(self.error("expected generator or '('")),
        }
    }

    fn relator(&mut self) -> Result<Word, WordsError> {
        let lhs = self.word()?;
        if self.peek() == Some(&Token::Equals) {
            self.pos += 1;
            let rhs = self.word()?;
            return Ok(lhs.concat(&rhs.inverse()));
        }
        Ok(lhs)
    }
}

/// Parses `< gens | relators >`. `x = y` becomes the relator `x * y^-1`; `#` starts a comment.
pub fn parse_presentation(text: &str) -> Result<Presentation, WordsError> {
    let (tokens, end) = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end,
        generators: &[],
    };
    p.expect(Token::LAngle, "'<'")?;
    let mut generators: Vec<String> = Vec::new();
    if let Some(Token::Ident(_)) = p.peek() {
        loop {
            match p.peek().cloned() {
                Some(Token::Ident(name)) => {
                    if generators.contains(&name) {
                        return Err(WordsError::DuplicateGenerator(name));
                    }
                    generators.push(name);
                    p.pos += 1;
                }
                _ => return Err(p.error("expected generator name")),
            }
            if p.peek() == Some(&Token::Comma) {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect(Token::Bar, "'|'")?;
    let mut relators = Vec::new();
    let mut parser = Parser {
        tokens: std::mem::take(&mut p.tokens),
        pos: p.pos,
        end,
        generators: &generators,
    };
    if parser.peek() != Some(&Token::RAngle) {
        loop {
            relators.push(parser.relator()?);
            if parser.peek() == Some(&Token::Comma) {
                parser.pos += 1;
            } else {
                break;
            }
        }
    }
    parser.expect(Token::RAngle, "'>' or ','")?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input after '>'"));
    }
    Presentation::new(generators, relators)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Evaluates a word in S3 with generator images given as one-line permutations.
    fn eval_s3(w: &Word, images: &[[usize; 3]]) -> [usize; 3] {
        let compose = |a: [usize; 3], b: [usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
        let invert = |a: [usize; 3]| {
            let mut inv = [0; 3];
            for i in 0..3 {
                inv[a[i]] = i;
            }
            inv
        };
        let mut acc = [0, 1, 2];
        for s in w.syllables() {
            let base = if s.exponent < 0 {
                invert(images[s.generator])
            } else {
                images[s.generator]
            };
            for _ in 0..s.exponent.unsigned_abs() {
                acc = compose(acc, base);
            }
        }
        acc
    }

    #[test]
    fn free_reduce_cancels_and_merges() {
        assert!(Word::free_reduce([(0, 1), (0, -1)]).is_empty());
        assert_eq!(
            Word::free_reduce([(0, 2), (0, 3)]).syllables(),
            &[Syllable::new(0, 5)]
        );
        let raw = [(0, 1), (1, 1), (1, -1), (0, 1)];
        let w = Word::free_reduce(raw);
        assert_eq!(w.syllables(), &[Syllable::new(0, 2)]);
        // a -> (0 1 2), b -> (0 1)
        let images = [[1, 2, 0], [1, 0, 2]];
        let raw_word = Word {
            syllables: raw.iter().map(|&(g, e)| Syllable::new(g, e)).collect(),
        };
        assert_eq!(eval_s3(&raw_word, &images), eval_s3(&w, &images));
    }

    #[test]
    fn zero_exponents_vanish() {
        assert!(Word::free_reduce([(3, 0)]).is_empty());
        assert_eq!(Word::free_reduce([(0, 2), (1, 0), (0, -1)]), Word::power(0, 1));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let aba = Word::free_reduce([(0, 1), (1, 1), (0, -1)]);
        assert_eq!(aba.cyclic_reduce(), Word::power(1, 1));
        assert_eq!(Word::power(1, 3).cyclic_reduce(), Word::power(1, 3));
        // a^-1 b^2 a^2 is conjugate to a b^2
        let w = Word::free_reduce([(0, -1), (1, 2), (0, 1), (0, 1)]);
        let c = w.cyclic_reduce();
        assert_eq!(c, Word::free_reduce([(0, 1), (1, 2)]));
        let conj = Word::power(0, 1);
        assert_eq!(conj.concat(&w).concat(&conj.inverse()), Word::free_reduce([(1, 2), (0, 1)]));
    }

    #[test]
    fn cyclic_reduce_picks_least_rotation() {
        let w = Word::free_reduce([(2, 1), (0, -1), (1, 3)]);
        assert_eq!(
            w.cyclic_reduce().syllables(),
            &[Syllable::new(0, -1), Syllable::new(1, 3), Syllable::new(2, 1)]
        );
        let comm = Word::generator(1).commutator(&Word::generator(0));
        assert_eq!(comm.cyclic_reduce().syllables()[0], Syllable::new(0, -1));
    }

    #[test]
    fn parse_examples() {
        let p = parse_presentation("< a, b | a^2 = b^3 >").unwrap();
        assert_eq!(p.generators(), &["a", "b"]);
        assert_eq!(p.relators(), &[Word::free_reduce([(0, 2), (1, -3)])]);

        let p = parse_presentation("< a | a^6 >").unwrap();
        assert_eq!(p.relators(), &[Word::power(0, 6)]);

        let p = parse_presentation("< a, b | a^2=b^3, a^2 >").unwrap();
        assert_eq!(
            p.relators(),
            &[Word::free_reduce([(0, 2), (1, -3)]), Word::power(0, 2)]
        );
    }

    #[test]
    fn parse_parentheses_and_juxtaposition() {
        let p = parse_presentation("<x,y|(x y)^-2, x(y)^3x^-1>").unwrap();
        assert_eq!(
            p.relators()[0],
            Word::free_reduce([(0, -1), (1, -1), (0, -1), (1, -1)])
        );
        assert_eq!(p.relators()[1], Word::power(1, 3));
    }

    #[test]
    fn parse_drops_trivial_relators() {
        let p = parse_presentation("< a, b | a*b*b^-1*a^-1, b >").unwrap();
        assert_eq!(p.relator_count(), 1);
    }

    #[test]
    fn parse_skips_comments() {
        let p = parse_presentation("# header\n< a, b | # gens done\n a^2, b^3 >").unwrap();
        assert_eq!(p.relator_count(), 2);
        match parse_presentation("# x\n< a | c >") {
            Err(WordsError::UnknownGenerator { line, column, .. }) => assert_eq!((line, column), (2, 7)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_presentation("< a, b | a^2 = c >"),
            Err(WordsError::UnknownGenerator { ref name, line: 1, column: 16 }) if name == "c"
        ));
        assert!(matches!(
            parse_presentation("< a, a | >"),
            Err(WordsError::DuplicateGenerator(_))
        ));
        assert!(matches!(
            parse_presentation("< a |\n a^0 >"),
            Err(WordsError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("< a | a^2"),
            Err(WordsError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("< a | a > x"),
            Err(WordsError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("< 1a | >"),
            Err(WordsError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("< a | (a)^2000000000 >"),
            Err(WordsError::Syntax { .. })
        ));
    }

    #[test]
    fn print_examples() {
        let p = Presentation::new(["a"], vec![Word::power(0, 6)]).unwrap();
        assert_eq!(print_presentation(&p), "< a | a^6 >");
        assert_eq!(print_presentation(&Presentation::trivial()), "< | >");
        let p = Presentation::new(["a", "b"], vec![Word::free_reduce([(0, 2), (1, -3)])]).unwrap();
        assert_eq!(print_presentation(&p), "< a, b | a^2*b^-3 >");
    }

    #[test]
    fn free_product_examples() {
        let p = free_product_presentation(0, &[2, 3]).unwrap();
        assert_eq!(print_presentation(&p), "< t1, t2 | t1^2, t2^3 >");
        let p = free_product_presentation(1, &[]).unwrap();
        assert_eq!(p, parse_presentation("< x1 | >").unwrap());
        let p = free_product_presentation(2, &[5]).unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relators(), &[Word::power(2, 5)]);
        assert_eq!(
            free_product_presentation(0, &[1]),
            Err(WordsError::InvalidCyclicOrder(1))
        );
    }

    #[test]
    fn presentation_rejects_bad_input() {
        assert!(Presentation::new(["a"], vec![Word::power(1, 1)]).is_err());
        assert!(Presentation::new(["a-b"], vec![]).is_err());
        assert!(Presentation::new(["", "b"], vec![]).is_err());
    }

    #[test]
    fn free_product_renames_collisions() {
        let p = parse_presentation("< a | a^2 >").unwrap();
        let q = p.free_product(&p);
        assert_eq!(print_presentation(&q), "< a, a_2 | a^2, a_2^2 >");
    }
}
