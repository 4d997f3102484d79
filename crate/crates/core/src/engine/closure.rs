//! Brute-force congruence closure on all words up to a length bound.
//!
//! Words of length `<= B` are numbered in shortlex order and merged in a
//! union–find structure by single applications of a defining relation whose
//! result stays within the bound. Writing `~` for this bounded equivalence,
//! a candidate monoid is read off by a breadth-first walk from the empty
//! word, where a class `[r]` times generator `a` is `[r a]`. The candidate is
//! accepted when
//!
//! - the walk never needs a word longer than `B`,
//! - the resulting table is associative, and
//! - every defining relation holds in it.
//!
//! The last two make the candidate a homomorphic image of the presented
//! monoid. Every word is congruent to its image's representative, because
//! `~` only merges congruent words, so the homomorphism is also injective.
//! The bound grows until a candidate is accepted or the limits run out.

use crate::engine::table::MonoidTable;
use crate::engine::Limits;
use crate::error::{Error, Result};
use crate::presentations::Presentation;
use crate::wordcore::Letter;

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Keeps the smaller index as root, i.e. the shortlex-least word.
    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
        }
    }
}

/// Shortlex numbering of all words of length `<= max_len` over `letters`.
struct WordIndex {
    letters: usize,
    offsets: Vec<usize>,
}

impl WordIndex {
    fn new(letters: usize, max_len: usize) -> Option<Self> {
        let mut offsets = vec![0usize];
        for len in 0..=max_len {
            let level = letters.checked_pow(len as u32)?;
            offsets.push(offsets[len].checked_add(level)?);
        }
        Some(WordIndex { letters, offsets })
    }

    fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn max_len(&self) -> usize {
        self.offsets.len() - 2
    }

    fn index(&self, word: &[Letter]) -> u32 {
        let value = word
            .iter()
            .fold(0usize, |acc, &l| acc * self.letters + l as usize);
        (self.offsets[word.len()] + value) as u32
    }

    fn word(&self, index: u32) -> Vec<Letter> {
        let index = index as usize;
        let len = self.offsets.partition_point(|&o| o <= index) - 1;
        let mut value = index - self.offsets[len];
        let mut letters = vec![0; len];
        for slot in letters.iter_mut().rev() {
            *slot = (value % self.letters) as Letter;
            value /= self.letters;
        }
        letters
    }
}

/// Enumerates the monoid presented by `presentation` without rewriting.
///
/// Tries length bounds from the longest relation up to
/// `limits.max_word_length`; gives up once the number of words at the
/// current bound exceeds `limits.max_steps`.
pub fn brute_force_closure(presentation: &Presentation, limits: &Limits) -> Result<MonoidTable> {
    let letters = presentation.generators();
    let longest = presentation
        .relations()
        .iter()
        .map(|(l, r)| l.len().max(r.len()))
        .max()
        .unwrap_or(0)
        .max(1);
    for bound in longest..=limits.max_word_length {
        let index = match WordIndex::new(letters, bound) {
            Some(index) if index.total() as u64 <= limits.max_steps => index,
            _ => {
                return Err(Error::resource(
                    "max_steps",
                    limits.max_steps,
                    format!("closure at length {bound} needs too many words; raise the bound or use completion"),
                ))
            }
        };
        if let Some(table) = close_at(presentation, &index, limits)? {
            return Ok(table);
        }
    }
    Err(Error::resource(
        "max_word_length",
        limits.max_word_length as u64,
        "bounded classes never closed; try a larger length bound",
    ))
}

fn close_at(presentation: &Presentation, index: &WordIndex, limits: &Limits) -> Result<Option<MonoidTable>> {
    let total = index.total();
    let bound = index.max_len();
    let letters = index.letters;
    let mut classes = UnionFind::new(total);
    for id in 0..total as u32 {
        let word = index.word(id);
        for (lhs, rhs) in presentation.relations() {
            let (lhs, rhs) = (lhs.letters(), rhs.letters());
            if lhs.len() > word.len() || word.len() - lhs.len() + rhs.len() > bound {
                continue;
            }
            for start in 0..=word.len() - lhs.len() {
                if word[start..start + lhs.len()] == *lhs {
                    let mut other = word[..start].to_vec();
                    other.extend_from_slice(rhs);
                    other.extend_from_slice(&word[start + lhs.len()..]);
                    classes.union(id, index.index(&other));
                }
            }
        }
    }
    let root: Vec<u32> = (0..total as u32).map(|i| classes.find(i)).collect();

    // Roots are least members, hence the representatives the walk finds.
    let closed = MonoidTable::close(
        0u32,
        letters,
        |&class, a| {
            let mut w = index.word(class);
            if w.len() == bound {
                return Err(Error::resource("max_word_length", bound as u64, "walk left the bound"));
            }
            w.push(a);
            Ok(root[index.index(&w) as usize])
        },
        limits.max_elements,
    );
    let table = match closed {
        Ok((table, _)) => table,
        Err(Error::Resource { limit: "max_word_length", .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if !right_action_associative(&table) || table.failing_relation(presentation.relations()).is_some() {
        return Ok(None);
    }
    Ok(Some(table))
}

/// The table multiplies by acting with the representative of the right
/// factor, so it is associative iff `x (y g) = (x y) g` for every generator.
fn right_action_associative(table: &MonoidTable) -> bool {
    let n = table.size() as u32;
    (0..n).all(|x| {
        (0..n).all(|y| {
            table
                .generators()
                .iter()
                .all(|&g| table.mul(x, table.mul(y, g)) == table.mul(table.mul(x, y), g))
        })
    })
}
