//! Shortlex Knuth–Bendix completion for monoid presentations.

use std::collections::VecDeque;

use crate::engine::Limits;
use crate::presentations::Presentation;
use crate::wordcore::{Letter, Word};

/// An oriented rule `lhs -> rhs` with `rhs` shortlex-smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

/// A string rewriting system derived from a presentation.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
    source: Presentation,
    /// Rule indices bucketed by the last letter of their left-hand side.
    by_last: Vec<Vec<usize>>,
}

/// Why completion stopped early.
#[derive(Clone, Debug)]
pub struct Incomplete {
    pub partial: RewriteSystem,
    pub limit: &'static str,
    pub bound: u64,
}

impl RewriteSystem {
    fn new(source: Presentation, rules: Vec<Rule>) -> Self {
        let mut system = RewriteSystem {
            rules,
            source,
            by_last: Vec::new(),
        };
        system.reindex();
        system
    }

    fn reindex(&mut self) {
        let letters = self.source.generators();
        self.by_last = vec![Vec::new(); letters];
        for (i, rule) in self.rules.iter().enumerate() {
            let last = *rule.lhs.letters().last().expect("rules have non-empty lhs");
            self.by_last[last as usize].push(i);
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    /// Rewrites `word` to its irreducible form.
    ///
    /// Letters are shifted onto an output stack that is kept irreducible;
    /// when a left-hand side appears as a suffix it is replaced, and the
    /// right-hand side is pushed back onto the input.
    pub fn normal_form(&self, word: &Word) -> Word {
        self.normal_form_counted(word).0
    }

    /// Normal form plus the number of rule applications used.
    pub fn normal_form_counted(&self, word: &Word) -> (Word, u64) {
        let mut input: Vec<Letter> = word.letters().iter().rev().copied().collect();
        let mut out: Vec<Letter> = Vec::with_capacity(word.len());
        let mut steps = 0;
        while let Some(letter) = input.pop() {
            out.push(letter);
            let bucket = &self.by_last[letter as usize];
            if let Some(&i) = bucket.iter().find(|&&i| out.ends_with(self.rules[i].lhs.letters())) {
                let rule = &self.rules[i];
                out.truncate(out.len() - rule.lhs.len());
                input.extend(rule.rhs.letters().iter().rev());
                steps += 1;
            }
        }
        (Word::new(out), steps)
    }

    pub fn is_reducible(&self, word: &Word) -> bool {
        self.normal_form_counted(word).1 > 0
    }

    /// Every critical pair of the system, as the two one-step reducts of the
    /// overlap word.
    pub fn critical_pairs(&self) -> Vec<(Word, Word)> {
        let mut pairs = Vec::new();
        for a in &self.rules {
            for b in &self.rules {
                push_critical_pairs(a, b, &mut pairs);
            }
        }
        pairs
    }

    /// Do all critical pairs rewrite to a common normal form?
    pub fn is_locally_confluent(&self) -> bool {
        self.critical_pairs()
            .iter()
            .all(|(x, y)| self.normal_form(x) == self.normal_form(y))
    }

    /// Does every defining relation of the source collapse to one normal form?
    pub fn presents_source(&self) -> bool {
        self.source
            .relations()
            .iter()
            .all(|(l, r)| self.normal_form(l) == self.normal_form(r))
    }
}

/// Overlaps of `a`'s lhs suffix with `b`'s lhs prefix, and `b`'s lhs
/// occurring inside `a`'s lhs.
fn push_critical_pairs(a: &Rule, b: &Rule, out: &mut Vec<(Word, Word)>) {
    let (la, lb) = (a.lhs.letters(), b.lhs.letters());
    for overlap in 1..la.len().min(lb.len()) {
        if la[la.len() - overlap..] == lb[..overlap] {
            // la = p·s, lb = s·q; the word p·s·q reduces to ra·q and p·rb.
            let q = &lb[overlap..];
            let p = &la[..la.len() - overlap];
            let left = a.rhs.concat(&Word::from(q));
            let right = Word::from(p).concat(&b.rhs);
            out.push((left, right));
        }
    }
    if lb.len() < la.len() || (lb.len() == la.len() && !std::ptr::eq(a, b) && la == lb) {
        for start in 0..=la.len() - lb.len() {
            if la[start..start + lb.len()] == *lb {
                let mut other = la[..start].to_vec();
                other.extend_from_slice(b.rhs.letters());
                other.extend_from_slice(&la[start + lb.len()..]);
                out.push((a.rhs.clone(), Word::new(other)));
            }
        }
    }
}

/// Knuth–Bendix completion under shortlex with `a1 < a2 < …`.
///
/// Pending equations are processed first-in first-out; each new rule
/// interreduces the system (rules whose lhs it reduces go back to the
/// queue, right-hand sides are renormalized) and queues its critical pairs
/// with every surviving rule. When the queue drains, all critical pairs are
/// re-checked and any unresolved one restarts the loop.
pub fn knuth_bendix(presentation: &Presentation, limits: &Limits) -> Result<RewriteSystem, Box<Incomplete>> {
    let mut system = RewriteSystem::new(presentation.clone(), Vec::new());
    let mut pending: VecDeque<(Word, Word)> = presentation.relations().iter().cloned().collect();
    let mut steps: u64 = 0;
    let incomplete = |system: RewriteSystem, limit, bound| {
        Err(Box::new(Incomplete {
            partial: system,
            limit,
            bound,
        }))
    };

    loop {
        while let Some((x, y)) = pending.pop_front() {
            steps += 1;
            if steps > limits.max_steps {
                return incomplete(system, "max_steps", limits.max_steps);
            }
            let (x, y) = (system.normal_form(&x), system.normal_form(&y));
            if x == y {
                continue;
            }
            let (lhs, rhs) = if x > y { (x, y) } else { (y, x) };
            if lhs.len() > limits.max_word_length {
                return incomplete(system, "max_word_length", limits.max_word_length as u64);
            }
            let new_rule = Rule { lhs, rhs };

            let mut kept = Vec::with_capacity(system.rules.len() + 1);
            for rule in std::mem::take(&mut system.rules) {
                if contains_factor(rule.lhs.letters(), new_rule.lhs.letters()) {
                    pending.push_back((rule.lhs, rule.rhs));
                } else {
                    kept.push(rule);
                }
            }
            kept.push(new_rule);
            system.rules = kept;
            system.reindex();
            for i in 0..system.rules.len() {
                let rhs = system.normal_form(&system.rules[i].rhs);
                system.rules[i].rhs = rhs;
            }
            if system.rules.len() > limits.max_rules {
                return incomplete(system, "max_rules", limits.max_rules as u64);
            }

            let newest = system.rules.last().expect("just pushed");
            let mut pairs = Vec::new();
            for rule in &system.rules {
                push_critical_pairs(newest, rule, &mut pairs);
                if !std::ptr::eq(newest, rule) {
                    push_critical_pairs(rule, newest, &mut pairs);
                }
            }
            pending.extend(pairs);
        }

        let unresolved: Vec<_> = system
            .critical_pairs()
            .into_iter()
            .filter(|(x, y)| system.normal_form(x) != system.normal_form(y))
            .collect();
        if unresolved.is_empty() {
            return Ok(system);
        }
        pending.extend(unresolved);
    }
}

fn contains_factor(haystack: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= haystack.len() && haystack.windows(needle.len()).any(|w| w == needle)
}
