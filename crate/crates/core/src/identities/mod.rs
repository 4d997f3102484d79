//! Monoid identities: parsing, satisfaction in explicit tables, the scattered
//! subword criterion for stylic monoids, and bounded derivation.
//!
//! Identities are written over their own variable alphabet
//! `x, y, z, t, u, v`, kept apart from monoid generators.

pub mod derivation;

use std::fmt;

use crate::engine::{ElementId, MonoidTable};
use crate::error::{Error, Result};
use crate::wordcore::{simon_equivalent, Alphabet, Letter, Word};

pub use derivation::{
    bounded_derivation, AxiomSet, Derivation, DerivationBounds, Direction, Step, Trace, TraceRecord,
};

/// Variable names in letter order.
pub const VARIABLES: [char; 6] = ['x', 'y', 'z', 't', 'u', 'v'];

/// Alphabet of the first `count` variables.
pub fn variable_alphabet(count: usize) -> Result<Alphabet> {
    if count == 0 || count > VARIABLES.len() {
        return Err(Error::input(format!(
            "identities use 1..={} variables, got {count}",
            VARIABLES.len()
        )));
    }
    Alphabet::with_names(VARIABLES[..count].iter().map(|c| c.to_string()))
}

/// A formal equality `lhs = rhs` over `variables` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    variables: usize,
    lhs: Word,
    rhs: Word,
}

impl Identity {
    pub fn new(variables: usize, lhs: Word, rhs: Word) -> Result<Self> {
        let alphabet = variable_alphabet(variables)?;
        alphabet.validate(&lhs)?;
        alphabet.validate(&rhs)?;
        Ok(Identity { variables, lhs, rhs })
    }

    /// Parses `word=word`. Besides plain variables, sides may use `1` for
    /// the empty word, powers `x^2`, and groups `(xy)^3`.
    pub fn parse(text: &str) -> Result<Self> {
        let (l, r) = text
            .split_once('=')
            .ok_or_else(|| Error::input(format!("identity {text:?} has no '='")))?;
        if r.contains('=') {
            return Err(Error::input(format!("identity {text:?} has more than one '='")));
        }
        let lhs = parse_side(l)?;
        let rhs = parse_side(r)?;
        let variables = lhs.letter_span().max(rhs.letter_span()).max(1);
        Identity::new(variables, lhs, rhs)
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }

    pub fn alphabet(&self) -> Alphabet {
        variable_alphabet(self.variables).expect("validated variable count")
    }

    /// `rhs = lhs`.
    pub fn swapped(&self) -> Identity {
        Identity {
            variables: self.variables,
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        }
    }

    /// The same identity over a larger variable alphabet.
    pub fn widened(&self, variables: usize) -> Result<Identity> {
        Identity::new(variables.max(self.variables), self.lhs.clone(), self.rhs.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.alphabet();
        write!(f, "{}={}", alphabet.format(&self.lhs), alphabet.format(&self.rhs))
    }
}

fn parse_side(text: &str) -> Result<Word> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let word = parse_sequence(&chars, &mut pos)?;
    if pos != chars.len() {
        return Err(Error::input(format!("unexpected {:?} in {text:?}", chars[pos])));
    }
    Ok(word)
}

fn parse_sequence(chars: &[char], pos: &mut usize) -> Result<Word> {
    let mut word = Word::empty();
    while *pos < chars.len() && chars[*pos] != ')' {
        let atom = match chars[*pos] {
            '(' => {
                *pos += 1;
                let inner = parse_sequence(chars, pos)?;
                if chars.get(*pos) != Some(&')') {
                    return Err(Error::input("unbalanced parenthesis"));
                }
                *pos += 1;
                inner
            }
            '1' => {
                *pos += 1;
                Word::empty()
            }
            c => {
                let v = VARIABLES
                    .iter()
                    .position(|&name| name == c)
                    .ok_or_else(|| Error::input(format!("{c:?} is not a variable")))?;
                *pos += 1;
                Word::new(vec![v as Letter])
            }
        };
        let atom = if chars.get(*pos) == Some(&'^') {
            *pos += 1;
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let exponent: usize = chars[start..*pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::input("'^' must be followed by an exponent"))?;
            atom.pow(exponent)
        } else {
            atom
        };
        word = word.concat(&atom);
    }
    Ok(word)
}

/// Relabels variables: variable `i` becomes `permutation[i]`.
pub fn rename_variables(identity: &Identity, permutation: &[usize]) -> Result<Identity> {
    let n = identity.variables;
    let mut hit = vec![false; n];
    if permutation.len() != n || permutation.iter().any(|&p| p >= n || std::mem::replace(&mut hit[p], true)) {
        return Err(Error::input(format!(
            "{permutation:?} is not a permutation of {n} variables"
        )));
    }
    let map = |w: &Word| Word::new(w.letters().iter().map(|&l| permutation[l as usize] as Letter).collect());
    Identity::new(n, map(&identity.lhs), map(&identity.rhs))
}

/// Images of the variables, indexed by variable.
pub type Assignment = Vec<ElementId>;

/// Work needed to evaluate both sides under every assignment.
pub fn evaluation_cost(identity: &Identity, table: &MonoidTable) -> Option<u64> {
    (table.size() as u64)
        .checked_pow(identity.variables as u32)?
        .checked_mul((identity.lhs.len() + identity.rhs.len()).max(1) as u64)
}

/// First assignment, in mixed-radix order with variable `x` fastest, under
/// which the two sides differ.
pub fn counterexample(identity: &Identity, table: &MonoidTable, max_steps: u64) -> Result<Option<Assignment>> {
    match evaluation_cost(identity, table) {
        Some(cost) if cost <= max_steps => {}
        _ => {
            return Err(Error::resource(
                "max_steps",
                max_steps,
                format!(
                    "checking {identity} needs {}^{} assignments",
                    table.size(),
                    identity.variables
                ),
            ))
        }
    }
    let size = table.size() as ElementId;
    let mut images = vec![0; identity.variables];
    loop {
        if table.evaluate_with(&identity.lhs, &images) != table.evaluate_with(&identity.rhs, &images) {
            return Ok(Some(images));
        }
        let mut slot = 0;
        loop {
            if slot == images.len() {
                return Ok(None);
            }
            images[slot] += 1;
            if images[slot] < size {
                break;
            }
            images[slot] = 0;
            slot += 1;
        }
    }
}

/// Does `identity` hold under every assignment into `table`?
pub fn holds_in_table(identity: &Identity, table: &MonoidTable, max_steps: u64) -> Result<bool> {
    Ok(counterexample(identity, table, max_steps)?.is_none())
}

/// The stylic criterion: the identity holds in the `n`-generated stylic
/// monoid iff both sides have the same scattered subwords of length `<= n`.
pub fn holds_in_stylic(identity: &Identity, n: usize) -> bool {
    simon_equivalent(&identity.lhs, &identity.rhs, n)
}

/// Values of `word` under every assignment of `variables` variables, in the
/// mixed-radix order used by [`counterexample`]. Two words give an identity
/// of the table iff their signatures are equal.
pub fn value_signature(word: &Word, table: &MonoidTable, variables: usize) -> Vec<ElementId> {
    let size = table.size();
    let total = size.pow(variables as u32);
    let mut out = Vec::with_capacity(total);
    let mut images = vec![0 as ElementId; variables];
    for code in 0..total {
        let mut rest = code;
        for slot in images.iter_mut() {
            *slot = (rest % size) as ElementId;
            rest /= size;
        }
        out.push(table.evaluate_with(word, &images));
    }
    out
}

/// All words over `variables` letters of length `<= max_len`, shortlex.
pub fn words_up_to(variables: usize, max_len: usize) -> Vec<Word> {
    let mut words = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|w| {
                (0..variables as Letter).map(move |a| {
                    let mut next = w.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
        words.extend(level.iter().cloned());
    }
    words
}

/// Identities `u = v` with `u < v` in shortlex order, over the grid of words
/// with at most `variables` variables and length `<= max_len`.
pub fn identity_grid(variables: usize, max_len: usize) -> Result<Vec<Identity>> {
    variable_alphabet(variables)?;
    let words = words_up_to(variables, max_len);
    let mut out = Vec::with_capacity(words.len() * words.len().saturating_sub(1) / 2);
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            out.push(Identity {
                variables,
                lhs: u.clone(),
                rhs: v.clone(),
            });
        }
    }
    Ok(out)
}
