//! Exhaustive collision search for the 12-entry maps and classification of
//! colliding pairs against the identity families.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycInt, Order};
use crate::error::{Error, Result};
use crate::identities::Morphism;
use crate::laurent::LaurentPoly;
use crate::qmatrix::{m_q, mu_q, QMatrix};
use crate::words::{christoffel_words, Letter, Word};

pub const DEFAULT_SAFETY_BOUND: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapKind {
    #[serde(rename = "M")]
    M,
    #[serde(rename = "mu")]
    Mu,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::M => "M",
            MapKind::Mu => "mu",
        }
    }

    fn letter_matrices(self) -> [QMatrix; 2] {
        match self {
            MapKind::M => [QMatrix::l_q(), QMatrix::r_q()],
            MapKind::Mu => [QMatrix::mu_a(), QMatrix::mu_b()],
        }
    }

    pub fn matrix(self, w: &Word) -> Result<QMatrix> {
        match self {
            MapKind::M => m_q(w),
            MapKind::Mu => mu_q(w),
        }
    }

    pub fn entry12(self, w: &Word) -> Result<LaurentPoly> {
        Ok(self.matrix(w)?.m12)
    }
}

impl std::str::FromStr for MapKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "M" | "m" => Ok(MapKind::M),
            "mu" | "MU" => Ok(MapKind::Mu),
            _ => Err(format!("unknown map {s:?}: expected M or mu")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionGroup {
    pub entry: LaurentPoly,
    pub words: Vec<Word>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairClass {
    Identity1,
    Identity2,
    Both,
    /// Not an instance of either family, but linked to the other word by a
    /// chain of instances inside the same group.
    Transitive,
    Unexplained,
}

/// `x = a^k b X b a^m`, `y = a^k b Y b a^n`; for the `mu` map the
/// exponents are zero and the outer letters are a single `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity1Witness {
    pub w: Word,
    pub k: usize,
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity2Witness {
    pub w: Word,
    pub v: Word,
    pub k: usize,
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClassification {
    pub x: Word,
    pub y: Word,
    pub class: PairClass,
    pub identity1: Option<Identity1Witness>,
    pub identity2: Option<Identity2Witness>,
    /// For transitive pairs: the words from `x` to `y`, each step a direct instance.
    pub chain: Option<Vec<Word>>,
    /// Largest `|w|` tried when decomposing against the second family.
    pub max_w_tried: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionSummary {
    pub words_searched: u64,
    pub groups: usize,
    pub largest_group: usize,
    pub pairs: usize,
    pub identity1: usize,
    pub identity2: usize,
    pub both: usize,
    pub transitive: usize,
    pub unexplained: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionReport {
    pub map_kind: MapKind,
    pub max_len: usize,
    pub groups: Vec<CollisionGroup>,
    pub pairs: Vec<PairClassification>,
    pub summary: CollisionSummary,
}

impl CollisionReport {
    pub fn has_unexplained(&self) -> bool {
        self.summary.unexplained > 0
    }

    pub fn group_containing(&self, word: &Word) -> Option<&CollisionGroup> {
        self.groups.iter().find(|g| g.words.contains(word))
    }

    pub fn pair(&self, x: &Word, y: &Word) -> Option<&PairClassification> {
        let (x, y) = if x <= y { (x, y) } else { (y, x) };
        self.pairs.iter().find(|p| &p.x == x && &p.y == y)
    }
}

fn word_count(max_len: usize) -> u128 {
    (1u128 << (max_len + 1)) - 2
}

/// Rough footprint of holding one entry per word in memory.
fn estimate_mib(kind: MapKind, max_len: usize) -> u128 {
    let span = match kind {
        MapKind::M => max_len,
        MapKind::Mu => 3 * max_len,
    } as u128;
    word_count(max_len) * (160 + 40 * span) / (1 << 20)
}

type Buckets = HashMap<u64, Vec<(LaurentPoly, Vec<Word>)>>;

fn insert(buckets: &mut Buckets, entry: LaurentPoly, word: Word) {
    let chain = buckets.entry(entry.content_hash()).or_default();
    match chain.iter_mut().find(|(p, _)| *p == entry) {
        Some((_, words)) => words.push(word),
        None => chain.push((entry, vec![word])),
    }
}

/// Depth-first walk carrying the first row of the running product, so each
/// word costs one row-times-matrix step.
fn walk(
    letters: &[QMatrix; 2],
    word: &mut Vec<Letter>,
    row: (LaurentPoly, LaurentPoly),
    max_len: usize,
    out: &mut Buckets,
) {
    insert(out, row.1.clone(), Word::from_letters(word.clone()));
    if word.len() == max_len {
        return;
    }
    for (letter, m) in Letter::BINARY.into_iter().zip(letters) {
        let next = (&row.0 * &m.m11 + &row.1 * &m.m21, &row.0 * &m.m12 + &row.1 * &m.m22);
        word.push(letter);
        walk(letters, word, next, max_len, out);
        word.pop();
    }
}

/// All words of length `<= max_len`, grouped by their 12-entry.
/// `threads = None` uses the ambient rayon pool.
pub fn collide(kind: MapKind, max_len: usize, bound: usize, threads: Option<usize>) -> Result<CollisionReport> {
    if max_len > bound {
        return Err(Error::BoundExceeded {
            max_len,
            bound,
            words: word_count(max_len),
            est_mib: estimate_mib(kind, max_len),
        });
    }
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(|| collide_in_pool(kind, max_len)),
        None => collide_in_pool(kind, max_len),
    }
}

fn collide_in_pool(kind: MapKind, max_len: usize) -> Result<CollisionReport> {
    let letters = kind.letter_matrices();
    let threads = rayon::current_num_threads().max(1);
    let prefix_len = (usize::BITS - (threads - 1).leading_zeros()) as usize;
    let prefix_len = prefix_len.clamp(1, max_len.max(1));

    let mut short = Buckets::new();
    let mut classes = Vec::new();
    for len in 1..=prefix_len.min(max_len) {
        for prefix in Word::all_binary(len) {
            let entry = kind.entry12(&prefix)?;
            if len < prefix_len {
                insert(&mut short, entry, prefix);
            } else {
                classes.push(prefix);
            }
        }
    }
    let locals: Vec<Buckets> = classes
        .par_iter()
        .map(|prefix| {
            let m = kind.matrix(prefix).expect("binary prefix");
            let mut out = Buckets::new();
            let mut word = prefix.letters().to_vec();
            walk(&letters, &mut word, (m.m11, m.m12), max_len, &mut out);
            out
        })
        .collect();

    let mut merged: BTreeMap<u64, Vec<(LaurentPoly, Vec<Word>)>> = BTreeMap::new();
    for local in std::iter::once(short).chain(locals) {
        for (hash, chain) in local {
            let slot = merged.entry(hash).or_default();
            for (entry, words) in chain {
                match slot.iter_mut().find(|(p, _)| *p == entry) {
                    Some((_, ws)) => ws.extend(words),
                    None => slot.push((entry, words)),
                }
            }
        }
    }

    let mut groups: Vec<CollisionGroup> = merged
        .into_values()
        .flatten()
        .filter(|(_, words)| words.len() >= 2)
        .map(|(entry, mut words)| {
            words.sort();
            CollisionGroup { entry, words }
        })
        .collect();
    groups.sort_by(|a, b| a.words[0].cmp(&b.words[0]));

    if kind == MapKind::Mu {
        for g in &groups {
            let counts = (g.words[0].len(), g.words[0].count_b());
            assert!(
                g.words.iter().all(|w| (w.len(), w.count_b()) == counts),
                "mu group with differing letter counts: {:?}",
                g.words
            );
        }
    }

    let pairs: Vec<PairClassification> = groups
        .par_iter()
        .flat_map_iter(|g| classify_group(kind, &g.words))
        .collect();

    let mut summary = CollisionSummary {
        words_searched: word_count(max_len) as u64,
        groups: groups.len(),
        largest_group: groups.iter().map(|g| g.words.len()).max().unwrap_or(0),
        pairs: pairs.len(),
        ..Default::default()
    };
    for p in &pairs {
        *match p.class {
            PairClass::Identity1 => &mut summary.identity1,
            PairClass::Identity2 => &mut summary.identity2,
            PairClass::Both => &mut summary.both,
            PairClass::Transitive => &mut summary.transitive,
            PairClass::Unexplained => &mut summary.unexplained,
        } += 1;
    }
    Ok(CollisionReport {
        map_kind: kind,
        max_len,
        groups,
        pairs,
        summary,
    })
}

fn classify_group(kind: MapKind, words: &[Word]) -> Vec<PairClassification> {
    let n = words.len();
    let mut direct = Vec::new();
    let mut adjacent = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let c = classify_direct(kind, &words[i], &words[j]);
            if c.class != PairClass::Unexplained {
                adjacent[i].push(j);
                adjacent[j].push(i);
            }
            direct.push((i, j, c));
        }
    }
    direct
        .into_iter()
        .map(|(i, j, mut c)| {
            if c.class == PairClass::Unexplained {
                if let Some(path) = shortest_path(&adjacent, i, j) {
                    c.class = PairClass::Transitive;
                    c.chain = Some(path.into_iter().map(|k| words[k].clone()).collect());
                }
            }
            c
        })
        .collect()
}

fn shortest_path(adjacent: &[Vec<usize>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adjacent.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            while *path.last().unwrap() != from {
                path.push(parent[*path.last().unwrap()]);
            }
            path.reverse();
            return Some(path);
        }
        for &v in &adjacent[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

/// Classifies a colliding pair of distinct words. Only direct instances are
/// recognised here; chains need the whole group and come from [`collide`].
pub fn classify_pair(kind: MapKind, x: &Word, y: &Word) -> Result<PairClassification> {
    x.require_binary()?;
    y.require_binary()?;
    if x == y {
        return Err(Error::SameWord(x.to_string()));
    }
    if kind.entry12(x)? != kind.entry12(y)? {
        return Err(Error::NotColliding(x.to_string(), y.to_string()));
    }
    Ok(classify_direct(kind, x, y))
}

fn classify_direct(kind: MapKind, x: &Word, y: &Word) -> PairClassification {
    let (x, y) = if x <= y { (x, y) } else { (y, x) };
    let (identity1, identity2, max_w_tried) = match unwrap_pair(kind, x, y) {
        Some(frame) => {
            let one = (frame.inner_y == frame.first_family_image()).then(|| Identity1Witness {
                w: frame.inner_x.clone(),
                k: frame.k,
                m: frame.m,
                n: frame.n,
            });
            let (two, tried) = frame.second_family(kind);
            (one, two, tried)
        }
        None => (None, None, 0),
    };
    let class = match (&identity1, &identity2) {
        (Some(_), Some(_)) => PairClass::Both,
        (Some(_), None) => PairClass::Identity1,
        (None, Some(_)) => PairClass::Identity2,
        (None, None) => PairClass::Unexplained,
    };
    PairClassification {
        x: x.clone(),
        y: y.clone(),
        class,
        identity1,
        identity2,
        chain: None,
        max_w_tried,
    }
}

struct Frame {
    kind: MapKind,
    inner_x: Word,
    inner_y: Word,
    k: usize,
    m: usize,
    n: usize,
}

fn leading(w: &Word, l: Letter) -> usize {
    w.letters().iter().take_while(|&&x| x == l).count()
}

fn trailing(w: &Word, l: Letter) -> usize {
    w.letters().iter().rev().take_while(|&&x| x == l).count()
}

/// Splits the pair into the common outer shape of both families.
fn unwrap_pair(kind: MapKind, x: &Word, y: &Word) -> Option<Frame> {
    match kind {
        MapKind::Mu => {
            let strip = |w: &Word| {
                (w.len() >= 2 && w.first() == Some(Letter::A) && w.last() == Some(Letter::B))
                    .then(|| w.slice(1, w.len() - 1))
            };
            Some(Frame {
                kind,
                inner_x: strip(x)?,
                inner_y: strip(y)?,
                k: 0,
                m: 0,
                n: 0,
            })
        }
        MapKind::M => {
            let k = leading(x, Letter::A);
            if leading(y, Letter::A) != k {
                return None;
            }
            let (m, n) = (trailing(x, Letter::A), trailing(y, Letter::A));
            let strip = |w: &Word, tail: usize| {
                let core = w.slice(k, w.len() - tail);
                (core.len() >= 2 && core.first() == Some(Letter::B) && core.last() == Some(Letter::B))
                    .then(|| core.slice(1, core.len() - 1))
            };
            Some(Frame {
                kind,
                inner_x: strip(x, m)?,
                inner_y: strip(y, n)?,
                k,
                m,
                n,
            })
        }
    }
}

impl Frame {
    fn first_family_image(&self) -> Word {
        match self.kind {
            MapKind::M => self.inner_x.bar(),
            MapKind::Mu => self.inner_x.mirror(),
        }
    }

    /// Tries every suffix `w` of `X`. For a fixed `w` all letter images have
    /// the same length and distinct shapes, so `v` is read off block by block.
    /// Past `|X| / 2` only `v = ε` can fit.
    fn second_family(&self, kind: MapKind) -> (Option<Identity2Witness>, usize) {
        let x = &self.inner_x;
        let max_w = x.len();
        for wl in 0..=max_w {
            let w = x.slice(x.len() - wl, x.len());
            let Some(v) = decode(kind, &w, &x.slice(0, x.len() - wl)) else {
                continue;
            };
            let morphism = match kind {
                MapKind::M => Morphism::Phi(w.clone()),
                MapKind::Mu => Morphism::Psi(w.clone()),
            };
            let other = morphism.apply(&v.bar_ab()).expect("extended word").concat(&w);
            if other == self.inner_y {
                let witness = Identity2Witness {
                    w,
                    v,
                    k: self.k,
                    m: self.m,
                    n: self.n,
                };
                return (Some(witness), max_w);
            }
        }
        (None, max_w)
    }
}

fn decode(kind: MapKind, w: &Word, body: &Word) -> Option<Word> {
    let morphism = match kind {
        MapKind::M => Morphism::Phi(w.clone()),
        MapKind::Mu => Morphism::Psi(w.clone()),
    };
    let images: Vec<(Letter, Word)> = Letter::EXTENDED
        .into_iter()
        .map(|l| (l, morphism.image(l).expect("extended letter")))
        .collect();
    let block = images[0].1.len();
    if !body.len().is_multiple_of(block) {
        return None;
    }
    let mut v = Word::empty();
    for start in (0..body.len()).step_by(block) {
        let chunk = body.slice(start, start + block);
        let (letter, _) = images.iter().find(|(_, img)| *img == chunk)?;
        v.push(*letter);
    }
    Some(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChristoffelVerdict {
    pub max_len: usize,
    pub words: usize,
    pub injective: bool,
    pub counts_injective: bool,
    pub zeta6_injective: bool,
    pub duplicates: Vec<(Word, Word)>,
}

impl ChristoffelVerdict {
    pub fn holds(&self) -> bool {
        self.injective && self.counts_injective && self.zeta6_injective
    }
}

fn first_duplicates<K: Ord + Clone>(words: &[Word], keys: &[K]) -> Vec<(Word, Word)> {
    let mut seen: BTreeMap<K, &Word> = BTreeMap::new();
    let mut dups = Vec::new();
    for (w, k) in words.iter().zip(keys) {
        if let Some(prev) = seen.insert(k.clone(), w) {
            dups.push((prev.clone(), w.clone()));
        }
    }
    dups
}

/// Checks that `w -> mu_q(w)_12` separates all Christoffel words of length
/// `<= max_len`, along with its value at a primitive sixth root of unity and
/// the letter counts.
pub fn christoffel_injectivity(max_len: usize) -> ChristoffelVerdict {
    let words = christoffel_words(max_len);
    let entries: Vec<LaurentPoly> = words.par_iter().map(|w| mu_q(w).expect("binary word").m12).collect();
    let order = Order::new(6).expect("order 6");
    let at_zeta: Vec<CycInt> = entries.iter().map(|p| p.eval_cyclotomic(order)).collect();
    let counts: Vec<(usize, usize)> = words.iter().map(|w| (w.count_a(), w.count_b())).collect();
    let by_entry = {
        let mut sorted: Vec<(Vec<num_bigint::BigInt>, i64)> =
            entries.iter().map(|p| (p.coeffs().to_vec(), p.min_degree())).collect();
        sorted.sort();
        sorted.dedup();
        sorted.len() == entries.len()
    };
    let mut duplicates = Vec::new();
    if !by_entry {
        let keys: Vec<_> = entries.iter().map(|p| (p.min_degree(), p.coeffs().to_vec())).collect();
        duplicates = first_duplicates(&words, &keys);
    }
    let zeta_dups = first_duplicates(&words, &at_zeta);
    let count_dups = first_duplicates(&words, &counts);
    ChristoffelVerdict {
        max_len,
        words: words.len(),
        injective: by_entry,
        counts_injective: count_dups.is_empty(),
        zeta6_injective: zeta_dups.is_empty(),
        duplicates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn small_mu_census() {
        assert!(collide(MapKind::Mu, 2, DEFAULT_SAFETY_BOUND, None)
            .unwrap()
            .groups
            .is_empty());
        let r = collide(MapKind::Mu, 5, DEFAULT_SAFETY_BOUND, None).unwrap();
        let g = r.group_containing(&w("aaabb")).unwrap();
        assert!(g.words.contains(&w("abaab")));
        let p = r.pair(&w("abaab"), &w("aaabb")).unwrap();
        assert_eq!(p.class, PairClass::Identity1);
        assert_eq!(p.identity1.as_ref().unwrap().w, w("aab"));
        assert_eq!(r.summary.unexplained, 0);
    }

    #[test]
    fn census_is_independent_of_thread_count() {
        let a = collide(MapKind::Mu, 8, DEFAULT_SAFETY_BOUND, Some(1)).unwrap();
        let b = collide(MapKind::Mu, 8, DEFAULT_SAFETY_BOUND, Some(5)).unwrap();
        assert_eq!(a, b);
        let c = collide(MapKind::M, 7, DEFAULT_SAFETY_BOUND, Some(3)).unwrap();
        let d = collide(MapKind::M, 7, DEFAULT_SAFETY_BOUND, Some(8)).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn groups_agree_with_direct_products() {
        let r = collide(MapKind::M, 6, DEFAULT_SAFETY_BOUND, None).unwrap();
        for g in &r.groups {
            for x in &g.words {
                assert_eq!(m_q(x).unwrap().m12, g.entry);
            }
        }
        let total: usize = Word::all_binary_up_to(6)
            .filter(|x| !x.is_empty())
            .map(|x| m_q(&x).unwrap().m12)
            .collect::<std::collections::HashSet<_>>()
            .len();
        let grouped: usize = r.groups.iter().map(|g| g.words.len() - 1).sum();
        assert_eq!(total + grouped, 126);
    }

    #[test]
    fn bound_is_enforced() {
        match collide(MapKind::Mu, 17, 16, None) {
            Err(Error::BoundExceeded { words, .. }) => assert_eq!(words, (1 << 18) - 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify_pair(MapKind::Mu, &w("aabababbab"), &w("aabbababab")).unwrap();
        assert_eq!(c.class, PairClass::Both);
        let two = c.identity2.unwrap();
        assert_eq!((two.w, two.v), (Word::empty(), w("ac")));

        // A genuine M collision outside both families.
        let c = classify_pair(MapKind::M, &w("bbaaaaabb"), &w("baaabaaab")).unwrap();
        assert_eq!(c.class, PairClass::Unexplained);
        assert_eq!(c.max_w_tried, 7);

        let c = classify_pair(MapKind::M, &w("bab"), &w("bbb")).unwrap();
        assert_eq!(c.class, PairClass::Identity1);

        let c = classify_pair(MapKind::M, &w("bab"), &w("baba")).unwrap();
        assert_eq!(c.class, PairClass::Identity2);

        assert_eq!(
            classify_pair(MapKind::Mu, &w("ab"), &w("ab")),
            Err(Error::SameWord("ab".into()))
        );
        assert!(matches!(
            classify_pair(MapKind::Mu, &w("aabbab"), &w("abaabb")),
            Err(Error::NotColliding(..))
        ));
    }

    #[test]
    fn christoffel_small() {
        let v = christoffel_injectivity(12);
        assert!(v.holds());
        assert!(v.duplicates.is_empty());
    }
}
