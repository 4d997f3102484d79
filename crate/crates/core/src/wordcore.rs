//! Words over indexed alphabets, scattered subwords and Simon's congruence.
//!
//! A [`Word`] is a plain sequence of 0-based letter indices. The alphabet it
//! lives over is only consulted for validation and display, so generator
//! words and identity-variable words share the same machinery.
//!
//! Two words are Simon `k`-equivalent when they have the same scattered
//! subwords (subsequences) of length at most `k`. [`subwords_up_to`]
//! materializes that set; [`simon_equivalent`] decides equivalence without
//! building it, by walking the next-occurrence automata of both words in
//! lockstep.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Index of a letter in its alphabet.
pub type Letter = u8;

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = Letter::MAX as usize + 1;

/// Serialized form of the empty word.
pub const EMPTY_WORD: &str = "1";

/// A finite word. Ordered shortlex: by length first, then lexicographically
/// by letter index.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word from 1-based generator indices, e.g. `[2, 1]` is `a2 a1`.
    pub fn from_generators(indices: &[usize]) -> Result<Self> {
        indices
            .iter()
            .map(|&i| {
                if i == 0 || i > MAX_ALPHABET {
                    Err(Error::input(format!("generator index {i} out of range")))
                } else {
                    Ok((i - 1) as Letter)
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// 1-based generator indices, the inverse of [`Word::from_generators`].
    pub fn to_generators(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l as usize + 1).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// `self` repeated `times` times.
    pub fn pow(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// One past the largest letter used, or 0 for the empty word.
    pub fn letter_span(&self) -> usize {
        self.0.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// A finite alphabet with optional display names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    size: usize,
    names: Option<Vec<String>>,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_ALPHABET {
            return Err(Error::input(format!(
                "alphabet size must be in 1..={MAX_ALPHABET}, got {size}"
            )));
        }
        Ok(Alphabet { size, names: None })
    }

    pub fn with_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut alphabet = Alphabet::new(names.len())?;
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name == EMPTY_WORD || name.contains('.') {
                return Err(Error::input(format!("unusable letter name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::input(format!("duplicate letter name {name:?}")));
            }
        }
        alphabet.names = Some(names);
        Ok(alphabet)
    }

    /// Single-character alphabet in the given order, e.g. `"xyz"`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::with_names(chars.chars().map(String::from))
    }

    /// Generators `a1, …, an`.
    pub fn generators(n: usize) -> Result<Self> {
        Alphabet::with_names((1..=n).map(|i| format!("a{i}")))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, letter: Letter) -> String {
        match &self.names {
            Some(names) => names[letter as usize].clone(),
            None => format!("a{}", letter as usize + 1),
        }
    }

    fn single_char_names(&self) -> bool {
        self.names
            .as_ref()
            .is_some_and(|names| names.iter().all(|n| n.chars().count() == 1))
    }

    /// Checks that every letter of `word` belongs to this alphabet.
    pub fn validate(&self, word: &Word) -> Result<()> {
        match word.letters().iter().find(|&&l| l as usize >= self.size) {
            Some(&l) => Err(Error::input(format!(
                "letter index {l} not in an alphabet of size {}",
                self.size
            ))),
            None => Ok(()),
        }
    }

    pub fn format(&self, word: &Word) -> String {
        if word.is_empty() {
            return EMPTY_WORD.to_string();
        }
        let sep = if self.single_char_names() { "" } else { "." };
        word.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == EMPTY_WORD || text.is_empty() {
            return Ok(Word::empty());
        }
        let lookup = |name: &str| -> Result<Letter> {
            (0..self.size)
                .find(|&i| self.name(i as Letter) == name)
                .map(|i| i as Letter)
                .ok_or_else(|| Error::input(format!("unknown letter {name:?} in {text:?}")))
        };
        let letters = if self.single_char_names() {
            text.chars()
                .filter(|&c| c != '.')
                .map(|c| lookup(&c.to_string()))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split('.').map(lookup).collect::<Result<Vec<_>>>()?
        };
        Ok(Word(letters))
    }
}

/// Is `pattern` a scattered subword (subsequence) of `word`?
pub fn is_subword(pattern: &Word, word: &Word) -> bool {
    let mut rest = word.letters().iter();
    pattern
        .letters()
        .iter()
        .all(|&p| rest.by_ref().any(|&l| l == p))
}

/// The distinct scattered subwords of a word up to a length bound, stored in
/// shortlex order. Always contains the empty word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubwordSet {
    bound: usize,
    members: Vec<Word>,
}

impl SubwordSet {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.members.binary_search(word).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.members.iter()
    }

    /// Members of exactly one of the two sets, in shortlex order.
    pub fn symmetric_difference(&self, other: &SubwordSet) -> Vec<Word> {
        let (mut a, mut b) = (self.members.iter().peekable(), other.members.iter().peekable());
        let mut out = Vec::new();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap().clone()),
                    Ordering::Equal => {
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (None, None) => return out,
            }
        }
    }
}

/// `next[i][a]` is the first position `>= i` holding letter `a`.
struct NextOccurrence {
    letters: usize,
    table: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl NextOccurrence {
    fn new(word: &Word, letters: usize) -> Self {
        let len = word.len();
        let mut table = vec![NONE; (len + 1) * letters];
        for i in (0..len).rev() {
            let (head, tail) = table.split_at_mut((i + 1) * letters);
            head[i * letters..].copy_from_slice(&tail[..letters]);
            head[i * letters + word.letters()[i] as usize] = i as u32;
        }
        NextOccurrence { letters, table }
    }

    /// Position just after the first `letter` at or after `from`.
    fn step(&self, from: usize, letter: usize) -> Option<usize> {
        match self.table[from * self.letters + letter] {
            NONE => None,
            p => Some(p as usize + 1),
        }
    }
}

/// All distinct scattered subwords of `word` with length at most `k`.
pub fn subwords_up_to(word: &Word, k: usize) -> SubwordSet {
    let letters = word.letter_span();
    let next = NextOccurrence::new(word, letters);
    let mut members = vec![Word::empty()];
    // Each distinct subword has exactly one greedy embedding, so a DFS over
    // the next-occurrence automaton visits it once.
    let mut stack: Vec<(usize, Word)> = vec![(0, Word::empty())];
    while let Some((pos, prefix)) = stack.pop() {
        if prefix.len() == k {
            continue;
        }
        for a in 0..letters {
            if let Some(after) = next.step(pos, a) {
                let mut w = prefix.clone();
                w.push(a as Letter);
                members.push(w.clone());
                stack.push((after, w));
            }
        }
    }
    members.sort_unstable();
    SubwordSet { bound: k, members }
}

/// Simon's congruence: do `u` and `v` share all scattered subwords of length
/// at most `k`?
pub fn simon_equivalent(u: &Word, v: &Word, k: usize) -> bool {
    if u == v {
        return true;
    }
    let letters = u.letter_span().max(v.letter_span());
    let k = k.min(u.len().max(v.len()));
    let nu = NextOccurrence::new(u, letters);
    let nv = NextOccurrence::new(v, letters);
    let mut memo = HashMap::new();
    suffixes_equivalent(&nu, &nv, 0, 0, k, &mut memo)
}

/// The subwords of length `<= depth` of `u[i..]` and `v[j..]` coincide iff
/// every letter occurs in both suffixes or in neither, and the suffixes after
/// the first occurrences agree one level down.
fn suffixes_equivalent(
    nu: &NextOccurrence,
    nv: &NextOccurrence,
    i: usize,
    j: usize,
    depth: usize,
    memo: &mut HashMap<(usize, usize, usize), bool>,
) -> bool {
    if depth == 0 {
        return true;
    }
    if let Some(&known) = memo.get(&(i, j, depth)) {
        return known;
    }
    let mut equal = true;
    for a in 0..nu.letters {
        match (nu.step(i, a), nv.step(j, a)) {
            (None, None) => {}
            (Some(p), Some(q)) => {
                if !suffixes_equivalent(nu, nv, p, q, depth - 1, memo) {
                    equal = false;
                    break;
                }
            }
            _ => {
                equal = false;
                break;
            }
        }
    }
    memo.insert((i, j, depth), equal);
    equal
}

/// A shortest word of length `<= k` that is a subword of exactly one of `u`
/// and `v`, lexicographically least among the shortest; `None` when the two
/// are Simon `k`-equivalent.
pub fn distinguishing_subword(u: &Word, v: &Word, k: usize) -> Option<Word> {
    let letters = u.letter_span().max(v.letter_span());
    let nu = NextOccurrence::new(u, letters);
    let nv = NextOccurrence::new(v, letters);
    // Breadth-first over common subwords. Words in a level are generated in
    // lexicographic order, and a state reached twice keeps its first word.
    let mut level: Vec<(usize, usize, Word)> = vec![(0, 0, Word::empty())];
    let mut seen = HashSet::new();
    for _ in 0..k {
        let mut next_level = Vec::new();
        for (i, j, prefix) in &level {
            for a in 0..letters {
                let mut w = prefix.clone();
                w.push(a as Letter);
                match (nu.step(*i, a), nv.step(*j, a)) {
                    (None, None) => {}
                    (Some(p), Some(q)) => {
                        if seen.insert((p, q)) {
                            next_level.push((p, q, w));
                        }
                    }
                    _ => return Some(w),
                }
            }
        }
        if next_level.is_empty() {
            return None;
        }
        level = next_level;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn xyz() -> Alphabet {
        Alphabet::from_chars("xyzt").unwrap()
    }

    fn w(s: &str) -> Word {
        xyz().parse(s).unwrap()
    }

    /// Every subsequence by index-subset enumeration.
    fn brute_subwords(word: &Word, k: usize) -> BTreeSet<Word> {
        let n = word.len();
        (0u32..1 << n)
            .filter(|mask| mask.count_ones() as usize <= k)
            .map(|mask| {
                Word::new(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| word.letters()[i])
                        .collect(),
                )
            })
            .collect()
    }

    #[test]
    fn subword_examples() {
        let ab = Alphabet::from_chars("abx").unwrap();
        let p = |s| ab.parse(s).unwrap();
        assert!(is_subword(&p("ab"), &p("axb")));
        assert!(!is_subword(&p("ba"), &p("aab")));
        for s in ["1", "a", "abxba", "xxx"] {
            assert!(is_subword(&Word::empty(), &p(s)));
        }
    }

    #[test]
    fn subwords_of_aba() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let set = subwords_up_to(&ab.parse("aba").unwrap(), 2);
        let oracle = brute_subwords(&ab.parse("aba").unwrap(), 2);
        assert_eq!(set.members(), oracle.into_iter().collect::<Vec<_>>().as_slice());
        let shown: Vec<_> = set.iter().map(|m| ab.format(m)).collect();
        assert_eq!(shown, ["1", "a", "b", "aa", "ab", "ba"]);
    }

    #[test]
    fn subwords_small_cases() {
        assert_eq!(subwords_up_to(&Word::empty(), 3).members(), &[Word::empty()]);
        let abc = Alphabet::from_chars("abc").unwrap();
        let set = subwords_up_to(&abc.parse("abc").unwrap(), 1);
        let shown: Vec<_> = set.iter().map(|m| abc.format(m)).collect();
        assert_eq!(shown, ["1", "a", "b", "c"]);
        assert_eq!(subwords_up_to(&abc.parse("abc").unwrap(), 0).len(), 1);
    }

    #[test]
    fn simon_examples() {
        assert!(simon_equivalent(&w("xyxzx"), &w("xyzx"), 2));
        assert!(!simon_equivalent(&w("xyxzx"), &w("xyzx"), 3));
        assert!(!simon_equivalent(&w("xy"), &w("yx"), 2));
        assert!(simon_equivalent(&w("xy"), &w("yx"), 1));
        assert!(simon_equivalent(&w("xyz"), &w("xyz"), 7));
        assert!(simon_equivalent(&w("x"), &w("y"), 0));
    }

    #[test]
    fn witness_examples() {
        let oracle = |u: &Word, v: &Word, k| {
            subwords_up_to(u, k)
                .symmetric_difference(&subwords_up_to(v, k))
                .into_iter()
                .next()
        };
        let (u, v) = (w("xyxzx"), w("xyzx"));
        assert_eq!(oracle(&u, &v, 3), Some(w("xxx")));
        assert_eq!(distinguishing_subword(&u, &v, 3), Some(w("xxx")));
        // Four length-3 subwords separate the pair; xxx is the least.
        let diff = subwords_up_to(&u, 3).symmetric_difference(&subwords_up_to(&v, 3));
        assert_eq!(diff, vec![w("xxx"), w("xxz"), w("yxx"), w("yxz")]);
        assert_eq!(distinguishing_subword(&w("xy"), &w("yx"), 2), Some(w("xy")));
        assert_eq!(distinguishing_subword(&u, &u, 5), None);
        assert_eq!(distinguishing_subword(&u, &v, 2), None);
    }

    #[test]
    fn serialization() {
        let a = xyz();
        assert_eq!(a.format(&Word::empty()), "1");
        assert_eq!(a.format(&w("xyt")), "xyt");
        let g = Alphabet::generators(3).unwrap();
        let word = Word::from_generators(&[2, 1, 3]).unwrap();
        assert_eq!(g.format(&word), "a2.a1.a3");
        assert_eq!(g.parse("a2.a1.a3").unwrap(), word);
        assert_eq!(g.parse("1").unwrap(), Word::empty());
        assert!(g.parse("a4").is_err());
        assert!(a.parse("xq").is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(0).is_err());
        assert!(Alphabet::from_chars("xx").is_err());
        assert!(Alphabet::with_names(["a", "1"]).is_err());
        let a = Alphabet::new(2).unwrap();
        assert!(a.validate(&Word::new(vec![0, 1, 1])).is_ok());
        assert!(a.validate(&Word::new(vec![0, 2])).is_err());
    }

    #[test]
    fn shortlex_order() {
        assert!(w("y") < w("xx"));
        assert!(w("xy") < w("yx"));
        assert!(Word::empty() < w("x"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word(letters: u8, max_len: usize) -> impl Strategy<Value = Word> {
            prop::collection::vec(0..letters, 0..=max_len).prop_map(Word::new)
        }

        proptest! {
            #[test]
            fn subwords_match_brute_force(u in word(3, 10), k in 0usize..6) {
                let fast = subwords_up_to(&u, k);
                let slow: Vec<_> = brute_subwords(&u, k).into_iter().collect();
                prop_assert_eq!(fast.members(), slow.as_slice());
            }

            #[test]
            fn simon_matches_set_equality(u in word(3, 9), v in word(3, 9), k in 0usize..5) {
                let by_sets = subwords_up_to(&u, k) == subwords_up_to(&v, k);
                prop_assert_eq!(simon_equivalent(&u, &v, k), by_sets);
                let witness = distinguishing_subword(&u, &v, k);
                let expected = subwords_up_to(&u, k)
                    .symmetric_difference(&subwords_up_to(&v, k))
                    .into_iter()
                    .next();
                prop_assert_eq!(witness, expected);
            }

            #[test]
            fn monotone_in_k(u in word(2, 8), v in word(2, 8), k in 0usize..5) {
                if simon_equivalent(&u, &v, k) {
                    for smaller in 0..=k {
                        prop_assert!(simon_equivalent(&u, &v, smaller));
                    }
                }
            }

            #[test]
            fn congruence(u in word(2, 6), v in word(2, 6), x in word(2, 3), y in word(2, 3), k in 1usize..4) {
                if simon_equivalent(&u, &v, k) {
                    let xu = x.concat(&u).concat(&y);
                    let xv = x.concat(&v).concat(&y);
                    prop_assert!(simon_equivalent(&xu, &xv, k));
                }
            }

            #[test]
            fn symmetric_and_transitive(u in word(2, 5), v in word(2, 5), t in word(2, 5), k in 0usize..4) {
                prop_assert_eq!(simon_equivalent(&u, &v, k), simon_equivalent(&v, &u, k));
                if simon_equivalent(&u, &v, k) && simon_equivalent(&v, &t, k) {
                    prop_assert!(simon_equivalent(&u, &t, k));
                }
            }

            #[test]
            fn size_bounded_by_binomials(u in word(6, 8), k in 0usize..5) {
                let n = u.len() as u64;
                let binom = |n: u64, i: u64| (0..i).fold(1u64, |acc, j| acc * (n - j) / (j + 1));
                let bound: u64 = (0..=k.min(u.len()) as u64).map(|i| binom(n, i)).sum();
                let size = subwords_up_to(&u, k).len() as u64;
                prop_assert!(size <= bound);
                let distinct = u.letters().iter().collect::<HashSet<_>>().len() == u.len();
                if distinct {
                    prop_assert_eq!(size, bound);
                }
            }
        }
    }
}
