//! Finite words over `{a, b}` and the extended alphabet `{a, b, c, d}`.
//!
//! Words are immutable value types. Ordering is by length first, then
//! lexicographic with `a < b < c < d`; every enumeration in the crate is
//! emitted in that order so that output is reproducible.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
}

impl Letter {
    pub const BINARY: [Letter; 2] = [Letter::A, Letter::B];
    pub const EXTENDED: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'a' => Ok(Letter::A),
            'b' => Ok(Letter::B),
            'c' => Ok(Letter::C),
            'd' => Ok(Letter::D),
            other => Err(Error::InvalidLetter(other)),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
            Letter::D => 'd',
        }
    }

    /// `a <-> b`, `c <-> d`.
    pub fn swapped(self) -> Self {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
            Letter::C => Letter::D,
            Letter::D => Letter::C,
        }
    }

    pub fn is_binary(self) -> bool {
        matches!(self, Letter::A | Letter::B)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `{a, b}`
    Binary,
    /// `{a, b, c, d}`
    Extended,
}

impl Alphabet {
    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Binary => "{a,b}",
            Alphabet::Extended => "{a,b,c,d}",
        }
    }
}

/// A finite word. The alphabet is the smallest one containing its letters,
/// so a word over `{a, b}` has exactly one representation.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// `letter^n`
    pub fn power(letter: Letter, n: usize) -> Self {
        Word {
            letters: vec![letter; n],
        }
    }

    /// Parses a word and requires it to be over `{a, b}`.
    pub fn binary(s: &str) -> Result<Self> {
        let w: Word = s.parse()?;
        w.require_binary()?;
        Ok(w)
    }

    pub fn require_binary(&self) -> Result<()> {
        if self.alphabet() == Alphabet::Binary {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                word: self.to_string(),
                expected: Alphabet::Binary.name(),
            })
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet(&self) -> Alphabet {
        if self.letters.iter().all(|l| l.is_binary()) {
            Alphabet::Binary
        } else {
            Alphabet::Extended
        }
    }

    /// `|w|_x`, the number of occurrences of `letter`.
    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    pub fn count_a(&self) -> usize {
        self.count(Letter::A)
    }

    pub fn count_b(&self) -> usize {
        self.count(Letter::B)
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    /// The factor `w[start..end]`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::from_letters(self.letters[start..end].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.letters.starts_with(&prefix.letters)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.letters.ends_with(&suffix.letters)
    }

    /// Mirror image: letters in reverse order.
    pub fn mirror(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Mirror image followed by `a <-> b` and `c <-> d`.
    pub fn bar(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.swapped()).collect(),
        }
    }

    /// Mirror image followed by `a <-> b`, leaving `c` and `d` fixed.
    /// Agrees with [`Word::bar`] on binary words; this is the involution
    /// under which the `phi_w` / `psi_w` collision families are closed.
    pub fn bar_ab(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&l| if l.is_binary() { l.swapped() } else { l })
                .collect(),
        }
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.letters.len();
        (0..n / 2).all(|i| self.letters[i] == self.letters[n - 1 - i])
    }

    /// All binary words of length exactly `len`, in lexicographic order.
    pub fn all_binary(len: usize) -> impl Iterator<Item = Word> {
        assert!(len < 64, "binary word enumeration is limited to length < 64");
        (0u64..(1u64 << len)).map(move |bits| Word::from_bits(bits, len))
    }

    /// All binary words of length `0..=max_len`, in canonical order.
    pub fn all_binary_up_to(max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(Word::all_binary)
    }

    /// Word of length `len` whose `i`-th letter (from the left) is `b` iff
    /// bit `len - 1 - i` of `bits` is set.
    pub fn from_bits(bits: u64, len: usize) -> Word {
        Word {
            letters: (0..len)
                .map(|i| {
                    if (bits >> (len - 1 - i)) & 1 == 1 {
                        Letter::B
                    } else {
                        Letter::A
                    }
                })
                .collect(),
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(Letter::from_char)
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A node `(u, v)` of the Christoffel tree; the word at the node is `uv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChristoffelNode {
    pub left_factor: Word,
    pub right_factor: Word,
}

impl ChristoffelNode {
    /// `(a, b)`, carrying the word `ab`.
    pub fn root() -> Self {
        ChristoffelNode {
            left_factor: Word::power(Letter::A, 1),
            right_factor: Word::power(Letter::B, 1),
        }
    }

    pub fn word(&self) -> Word {
        self.left_factor.concat(&self.right_factor)
    }

    /// `(u, uv)` and `(uv, v)`.
    pub fn children(&self) -> (ChristoffelNode, ChristoffelNode) {
        let uv = self.word();
        (
            ChristoffelNode {
                left_factor: self.left_factor.clone(),
                right_factor: uv.clone(),
            },
            ChristoffelNode {
                left_factor: uv,
                right_factor: self.right_factor.clone(),
            },
        )
    }
}

/// All (lower) Christoffel words of length `1..=max_len`, including the
/// single letters, sorted by length then lexicographically.
pub fn christoffel_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if max_len >= 1 {
        out.push(Word::power(Letter::A, 1));
        out.push(Word::power(Letter::B, 1));
    }
    let mut queue = VecDeque::new();
    if max_len >= 2 {
        queue.push_back(ChristoffelNode::root());
    }
    while let Some(node) = queue.pop_front() {
        let (left, right) = node.children();
        out.push(node.word());
        // Children are strictly longer than their parent, so each branch
        // can be cut as soon as it overshoots.
        for child in [left, right] {
            if child.left_factor.len() + child.right_factor.len() <= max_len {
                queue.push_back(child);
            }
        }
    }
    out.sort();
    out
}

/// A fraction `numerator / denominator` in lowest terms. `1/0` is allowed
/// as the formal fraction attached to the word `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fraction {
    pub numerator: u64,
    pub denominator: u64,
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// The Stern-Brocot fraction `|w|_b / |w|_a`, reduced.
pub fn stern_brocot_fraction(w: &Word) -> Result<Fraction> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    w.require_binary()?;
    let (b, a) = (w.count_b() as u64, w.count_a() as u64);
    let g = b.gcd(&a);
    Ok(Fraction {
        numerator: b / g,
        denominator: a / g,
    })
}
