//! Bounded equational derivation.
//!
//! A goal `w = w'` is derived from an axiom set by breadth-first search from
//! `w`: a step picks an axiom `l = r`, a direction, a substitution of words
//! for the axiom's variables and a position, and replaces an occurrence of
//! the substituted `l` by the substituted `r` (or the reverse). Every derived
//! identity therefore follows from the axioms. The search is bounded, so
//! failure proves nothing.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::engine::Limits;
use crate::error::{Error, Result};
use crate::identities::Identity;
use crate::wordcore::{Letter, Word};

/// A non-empty list of identities used as axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSet {
    axioms: Vec<Identity>,
}

impl AxiomSet {
    pub fn new(axioms: Vec<Identity>) -> Result<Self> {
        if axioms.is_empty() {
            return Err(Error::input("an axiom set needs at least one identity"));
        }
        Ok(AxiomSet { axioms })
    }

    /// One identity per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let axioms = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|line| !line.is_empty())
            .map(Identity::parse)
            .collect::<Result<Vec<_>>>()?;
        AxiomSet::new(axioms)
    }

    pub fn axioms(&self) -> &[Identity] {
        &self.axioms
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Replace an instance of the axiom's left side by its right side.
    Forward,
    Backward,
}

/// Search bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivationBounds {
    /// Longest intermediate word.
    pub max_word_length: usize,
    /// Longest word substituted for a single axiom variable.
    pub max_image_length: usize,
    /// Number of distinct words the search may visit.
    pub max_states: usize,
}

impl Default for DerivationBounds {
    fn default() -> Self {
        DerivationBounds {
            max_word_length: 12,
            max_image_length: 3,
            max_states: 50_000,
        }
    }
}

impl From<&Limits> for DerivationBounds {
    fn from(limits: &Limits) -> Self {
        DerivationBounds {
            max_word_length: limits.max_word_length,
            max_states: limits.max_elements,
            ..DerivationBounds::default()
        }
    }
}

/// One rewriting step of a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub position: usize,
    pub axiom: usize,
    pub direction: Direction,
    /// Image of each axiom variable, indexed by variable.
    pub substitution: Vec<Word>,
    pub result: Word,
}

/// A derivation of `goal` as a chain of single replacements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub goal: Identity,
    pub steps: Vec<Step>,
}

/// Exported form of a [`Step`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    pub position: usize,
    pub axiom: usize,
    pub direction: Direction,
    pub substitution: Vec<String>,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Derived(Trace),
    /// The bounded search ran dry; `explored` words were visited.
    Unknown { explored: usize },
}

impl Derivation {
    pub fn is_derived(&self) -> bool {
        matches!(self, Derivation::Derived(_))
    }
}

fn substitute(word: &Word, substitution: &[Word]) -> Word {
    let mut out = Vec::new();
    for &v in word.letters() {
        out.extend_from_slice(substitution[v as usize].letters());
    }
    Word::new(out)
}

impl Trace {
    /// Re-checks every step: the substituted source side occurs at the stated
    /// position, replacing it yields the stated result, and the chain runs
    /// from the goal's left side to its right side.
    pub fn replay(&self, axioms: &AxiomSet) -> Result<()> {
        let mut current = self.goal.lhs().clone();
        for (i, step) in self.steps.iter().enumerate() {
            let axiom = axioms
                .axioms()
                .get(step.axiom)
                .ok_or_else(|| Error::input(format!("step {i}: no axiom {}", step.axiom)))?;
            if step.substitution.len() != axiom.variables() {
                return Err(Error::input(format!("step {i}: substitution has the wrong arity")));
            }
            let (from, to) = match step.direction {
                Direction::Forward => (axiom.lhs(), axiom.rhs()),
                Direction::Backward => (axiom.rhs(), axiom.lhs()),
            };
            let (from, to) = (substitute(from, &step.substitution), substitute(to, &step.substitution));
            let letters = current.letters();
            let end = step.position + from.len();
            if end > letters.len() || letters[step.position..end] != *from.letters() {
                return Err(Error::input(format!("step {i}: source side not found at {}", step.position)));
            }
            let mut next = letters[..step.position].to_vec();
            next.extend_from_slice(to.letters());
            next.extend_from_slice(&letters[end..]);
            let next = Word::new(next);
            if next != step.result {
                return Err(Error::input(format!("step {i}: result does not match")));
            }
            current = next;
        }
        if &current != self.goal.rhs() {
            return Err(Error::input("trace does not end at the goal's right side"));
        }
        Ok(())
    }

    pub fn records(&self) -> Vec<TraceRecord> {
        let alphabet = self.goal.alphabet();
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| TraceRecord {
                step: i + 1,
                position: s.position,
                axiom: s.axiom,
                direction: s.direction,
                substitution: s.substitution.iter().map(|w| alphabet.format(w)).collect(),
                result: alphabet.format(&s.result),
            })
            .collect()
    }
}

/// Bindings of pattern variables to factors of the subject word.
type Bindings = Vec<Option<Vec<Letter>>>;

/// All ways `pattern` matches `subject` starting at `pos`, as
/// `(end, bindings)`.
fn match_at(
    pattern: &[Letter],
    subject: &[Letter],
    pos: usize,
    bindings: &mut Bindings,
    max_image: usize,
    out: &mut Vec<(usize, Bindings)>,
) {
    let Some((&v, rest)) = pattern.split_first() else {
        out.push((pos, bindings.clone()));
        return;
    };
    if let Some(image) = &bindings[v as usize] {
        if subject[pos..].starts_with(image) {
            let next = pos + image.len();
            match_at(rest, subject, next, bindings, max_image, out);
        }
        return;
    }
    for len in 0..=max_image.min(subject.len() - pos) {
        bindings[v as usize] = Some(subject[pos..pos + len].to_vec());
        match_at(rest, subject, pos + len, bindings, max_image, out);
    }
    bindings[v as usize] = None;
}

/// All words over `letters` letters of length `<= max_len`.
fn short_words(letters: usize, max_len: usize) -> Vec<Vec<Letter>> {
    crate::identities::words_up_to(letters, max_len)
        .into_iter()
        .map(Word::into_letters)
        .collect()
}

/// Breadth-first search for a derivation of `goal` from `axioms`.
pub fn bounded_derivation(axioms: &AxiomSet, goal: &Identity, bounds: &DerivationBounds) -> Derivation {
    let start = goal.lhs().clone();
    let target = goal.rhs().clone();
    if start == target {
        return Derivation::Derived(Trace {
            goal: goal.clone(),
            steps: Vec::new(),
        });
    }
    let fillers = short_words(goal.variables(), bounds.max_image_length);
    let mut parent: HashMap<Word, Option<(Word, Step)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);

    while let Some(current) = queue.pop_front() {
        for (axiom_index, axiom) in axioms.axioms().iter().enumerate() {
            for direction in [Direction::Forward, Direction::Backward] {
                let (from, to) = match direction {
                    Direction::Forward => (axiom.lhs(), axiom.rhs()),
                    Direction::Backward => (axiom.rhs(), axiom.lhs()),
                };
                let subject = current.letters();
                for pos in 0..=subject.len() {
                    let mut matches = Vec::new();
                    let mut bindings: Bindings = vec![None; axiom.variables()];
                    match_at(from.letters(), subject, pos, &mut bindings, bounds.max_image_length, &mut matches);
                    for (end, bound) in matches {
                        for substitution in complete_substitution(&bound, to, &fillers) {
                            let image = substitute(to, &substitution);
                            let len = pos + image.len() + (subject.len() - end);
                            if len > bounds.max_word_length {
                                continue;
                            }
                            let mut next = subject[..pos].to_vec();
                            next.extend_from_slice(image.letters());
                            next.extend_from_slice(&subject[end..]);
                            let next = Word::new(next);
                            if next == current || parent.contains_key(&next) {
                                continue;
                            }
                            let step = Step {
                                position: pos,
                                axiom: axiom_index,
                                direction,
                                substitution,
                                result: next.clone(),
                            };
                            parent.insert(next.clone(), Some((current.clone(), step)));
                            if next == target {
                                return Derivation::Derived(Trace {
                                    goal: goal.clone(),
                                    steps: unwind(&parent, &target),
                                });
                            }
                            if parent.len() >= bounds.max_states {
                                return Derivation::Unknown { explored: parent.len() };
                            }
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
    }
    Derivation::Unknown { explored: parent.len() }
}

/// Fills variables the match left unbound: those occurring in `to` range
/// over every short word, the rest become empty.
fn complete_substitution(bound: &Bindings, to: &Word, fillers: &[Vec<Letter>]) -> Vec<Vec<Word>> {
    let mut choices: Vec<Vec<Word>> = vec![Vec::new()];
    for (v, image) in bound.iter().enumerate() {
        let options: Vec<Word> = match image {
            Some(img) => vec![Word::new(img.clone())],
            None if to.letters().contains(&(v as Letter)) => {
                fillers.iter().map(|f| Word::new(f.clone())).collect()
            }
            None => vec![Word::empty()],
        };
        choices = choices
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect();
    }
    choices
}

fn unwind(parent: &HashMap<Word, Option<(Word, Step)>>, target: &Word) -> Vec<Step> {
    let mut steps = Vec::new();
    let mut at = target.clone();
    while let Some(Some((prev, step))) = parent.get(&at) {
        steps.push(step.clone());
        at = prev.clone();
    }
    steps.reverse();
    steps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_a() -> AxiomSet {
        AxiomSet::parse("xyxzx=xyzx\n(xy)^2=(yx)^2\n").unwrap()
    }

    fn id(s: &str) -> Identity {
        Identity::parse(s).unwrap()
    }

    #[test]
    fn zero_step_proof() {
        let d = bounded_derivation(&basis_a(), &id("x=x"), &DerivationBounds::default());
        let Derivation::Derived(trace) = d else { panic!("x=x not derived") };
        assert!(trace.steps.is_empty());
        trace.replay(&basis_a()).unwrap();
    }

    #[test]
    fn one_step_instance() {
        let goal = id("xyxyx=xyyx");
        let Derivation::Derived(trace) = bounded_derivation(&basis_a(), &goal, &DerivationBounds::default()) else {
            panic!("not derived");
        };
        assert_eq!(trace.steps.len(), 1);
        trace.replay(&basis_a()).unwrap();
        let record = &trace.records()[0];
        assert_eq!(record.axiom, 0);
        assert_eq!(record.result, "xyyx");
    }

    #[test]
    fn commutativity_is_not_derived() {
        let d = bounded_derivation(&basis_a(), &id("xy=yx"), &DerivationBounds::default());
        assert!(matches!(d, Derivation::Unknown { .. }));
    }

    #[test]
    fn tampered_trace_fails_replay() {
        let goal = id("xyxyx=xyyx");
        let Derivation::Derived(mut trace) = bounded_derivation(&basis_a(), &goal, &DerivationBounds::default()) else {
            panic!("not derived");
        };
        trace.steps[0].position += 1;
        assert!(trace.replay(&basis_a()).is_err());
    }

    #[test]
    fn unbound_variables_are_enumerated() {
        // x = xy with y only on the right needs y's image from the fillers.
        let axioms = AxiomSet::parse("x=xy").unwrap();
        let Derivation::Derived(trace) = bounded_derivation(&axioms, &id("x=xyy"), &DerivationBounds::default()) else {
            panic!("not derived");
        };
        trace.replay(&axioms).unwrap();
    }

    #[test]
    fn axiom_file_parsing() {
        let set = AxiomSet::parse("# basis\nxyxzx=xyzx  # first\n\n(xy)^2=(yx)^2\n").unwrap();
        assert_eq!(set.axioms().len(), 2);
        assert!(AxiomSet::parse("# nothing\n").is_err());
    }
}
