//! Explicit finite monoids.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wordcore::{Alphabet, Letter, Word};

/// Element id inside a [`MonoidTable`].
pub type ElementId = u32;

/// Tables up to this size get an exhaustive associativity check.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 200;

/// A finite monoid given by its full multiplication table.
///
/// Element 0 is the identity. Every element carries its shortlex-least
/// representative word over the generators, and ids follow the shortlex
/// order of those representatives, so two constructions of the same monoid
/// on the same generators yield identical tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidTable {
    size: usize,
    table: Vec<ElementId>,
    generators: Vec<ElementId>,
    representatives: Vec<Word>,
}

/// On-disk form of a [`MonoidTable`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFile {
    pub size: usize,
    pub generators: Vec<ElementId>,
    pub table: Vec<ElementId>,
    pub representatives: Vec<String>,
}

impl MonoidTable {
    /// Closes `identity` under right multiplication by `generator_count`
    /// generators, breadth-first with generators in index order.
    ///
    /// Discovery order is shortlex order of the path words, so each element's
    /// representative is its shortlex-least word. Returns the table together
    /// with the element values, indexed by id.
    pub fn close<E, F>(
        identity: E,
        generator_count: usize,
        mut right_multiply: F,
        max_elements: usize,
    ) -> Result<(MonoidTable, Vec<E>)>
    where
        E: Clone + Eq + Hash,
        F: FnMut(&E, Letter) -> Result<E>,
    {
        let mut ids: HashMap<E, ElementId> = HashMap::new();
        let mut elements = vec![identity.clone()];
        let mut representatives = vec![Word::empty()];
        let mut right: Vec<ElementId> = Vec::new();
        ids.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for a in 0..generator_count {
                let product = right_multiply(&elements[x], a as Letter)?;
                let id = match ids.get(&product) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= max_elements {
                            return Err(Error::resource(
                                "max_elements",
                                max_elements as u64,
                                "monoid enumeration did not close",
                            ));
                        }
                        let id = elements.len() as ElementId;
                        let mut rep = representatives[x].clone();
                        rep.push(a as Letter);
                        ids.insert(product.clone(), id);
                        elements.push(product);
                        representatives.push(rep);
                        queue.push_back(id as usize);
                        id
                    }
                };
                right.push(id);
            }
        }
        let table = MonoidTable::from_right_action(generator_count, representatives, &right);
        Ok((table, elements))
    }

    /// Builds the full table from the right Cayley graph
    /// (`right[x * gens + a]` = `x · a`) and representatives.
    fn from_right_action(generator_count: usize, representatives: Vec<Word>, right: &[ElementId]) -> Self {
        let size = representatives.len();
        let mut table = vec![0; size * size];
        for x in 0..size {
            for (y, rep) in representatives.iter().enumerate() {
                let product = rep.letters().iter().fold(x as ElementId, |acc, &a| {
                    right[acc as usize * generator_count + a as usize]
                });
                table[x * size + y] = product;
            }
        }
        let generators = (0..generator_count)
            .map(|a| right[a])
            .collect();
        MonoidTable {
            size,
            table,
            generators,
            representatives,
        }
    }

    /// Builds and validates a table from raw parts.
    pub fn from_parts(
        generators: Vec<ElementId>,
        table: Vec<ElementId>,
        representatives: Vec<Word>,
    ) -> Result<Self> {
        let size = representatives.len();
        if size == 0 {
            return Err(Error::input("a monoid table needs at least one element"));
        }
        if table.len() != size * size {
            return Err(Error::input(format!(
                "table has {} entries, expected {}",
                table.len(),
                size * size
            )));
        }
        let t = MonoidTable {
            size,
            table,
            generators,
            representatives,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, index: usize) -> ElementId {
        self.generators[index]
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn representative(&self, x: ElementId) -> &Word {
        &self.representatives[x as usize]
    }

    pub fn representatives(&self) -> &[Word] {
        &self.representatives
    }

    /// Row-major multiplication table.
    pub fn raw_table(&self) -> &[ElementId] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        self.table[x as usize * self.size + y as usize]
    }

    /// Value of a word whose letters are mapped through `images`.
    pub fn evaluate_with(&self, word: &Word, images: &[ElementId]) -> ElementId {
        word.letters()
            .iter()
            .fold(0, |acc, &l| self.mul(acc, images[l as usize]))
    }

    /// Value of a word over the generators.
    pub fn evaluate(&self, word: &Word) -> ElementId {
        self.evaluate_with(word, &self.generators)
    }

    /// First relation whose sides evaluate differently, if any.
    pub fn failing_relation<'a>(&self, relations: &'a [(Word, Word)]) -> Option<&'a (Word, Word)> {
        relations
            .iter()
            .find(|(l, r)| self.evaluate(l) != self.evaluate(r))
    }

    /// Checks identity laws, associativity (exhaustive up to 200 elements,
    /// sampled above), generator range and representatives.
    pub fn validate(&self) -> Result<()> {
        let n = self.size;
        if let Some(&bad) = self.table.iter().chain(&self.generators).find(|&&e| e as usize >= n) {
            return Err(Error::input(format!("element id {bad} out of range for size {n}")));
        }
        for x in 0..n as ElementId {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::input(format!("element 0 is not an identity (fails at {x})")));
            }
        }
        let assoc = |x, y, z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z));
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for x in 0..n as ElementId {
                for y in 0..n as ElementId {
                    for z in 0..n as ElementId {
                        if !assoc(x, y, z) {
                            return Err(Error::input(format!("not associative at ({x},{y},{z})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..1_000_000 {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                let (x, y, z) = (x as ElementId, y as ElementId, z as ElementId);
                if !assoc(x, y, z) {
                    return Err(Error::input(format!("not associative at ({x},{y},{z})")));
                }
            }
        }
        if !self.representatives[0].is_empty() {
            return Err(Error::input("representative of the identity must be the empty word"));
        }
        let mut seen = std::collections::HashSet::new();
        for (x, rep) in self.representatives.iter().enumerate() {
            if !seen.insert(rep) {
                return Err(Error::input(format!("duplicate representative at element {x}")));
            }
            if rep.letter_span() > self.generators.len() {
                return Err(Error::input(format!("representative of {x} uses an unknown generator")));
            }
            if self.evaluate(rep) as usize != x {
                return Err(Error::input(format!("representative of {x} evaluates elsewhere")));
            }
        }
        Ok(())
    }

    /// Is there an isomorphism onto `other` sending generator `i` to
    /// generator `i`?
    pub fn isomorphic_respecting_generators(&self, other: &MonoidTable) -> bool {
        if self.size != other.size || self.generator_count() != other.generator_count() {
            return false;
        }
        match self.homomorphism_to(other) {
            Some(map) => {
                let mut hit = vec![false; other.size];
                map.iter().for_each(|&y| hit[y as usize] = true);
                hit.into_iter().all(|h| h)
            }
            None => false,
        }
    }

    /// The generator-respecting homomorphism into `target`, if one exists.
    /// The map is forced on representatives; it is returned only when it is
    /// multiplicative.
    pub fn homomorphism_to(&self, target: &MonoidTable) -> Option<Vec<ElementId>> {
        if self.generator_count() != target.generator_count() {
            return None;
        }
        let map: Vec<ElementId> = self.representatives.iter().map(|r| target.evaluate(r)).collect();
        for x in 0..self.size as ElementId {
            for y in 0..self.size as ElementId {
                if map[self.mul(x, y) as usize] != target.mul(map[x as usize], map[y as usize]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Two-sided principal ideal `M x M` as a membership vector.
    pub fn principal_ideal(&self, x: ElementId) -> Vec<bool> {
        let mut ideal = vec![false; self.size];
        for l in 0..self.size as ElementId {
            let lx = self.mul(l, x);
            for r in 0..self.size as ElementId {
                ideal[self.mul(lx, r) as usize] = true;
            }
        }
        ideal
    }

    pub fn to_file(&self, alphabet: &Alphabet) -> TableFile {
        TableFile {
            size: self.size,
            generators: self.generators.clone(),
            table: self.table.clone(),
            representatives: self.representatives.iter().map(|r| alphabet.format(r)).collect(),
        }
    }

    pub fn from_file(file: &TableFile) -> Result<Self> {
        let alphabet = Alphabet::generators(file.generators.len().max(1))?;
        if file.representatives.len() != file.size {
            return Err(Error::input(format!(
                "size {} but {} representatives",
                file.size,
                file.representatives.len()
            )));
        }
        let reps = file
            .representatives
            .iter()
            .map(|s| alphabet.parse(s))
            .collect::<Result<Vec<_>>>()?;
        MonoidTable::from_parts(file.generators.clone(), file.table.clone(), reps)
    }

    pub fn to_json(&self) -> String {
        let alphabet = Alphabet::generators(self.generator_count().max(1)).expect("generator count");
        serde_json::to_string_pretty(&self.to_file(&alphabet)).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        MonoidTable::from_file(&serde_json::from_str(text)?)
    }
}

/// Is every two-sided principal ideal generated by a unique element?
pub fn is_j_trivial(table: &MonoidTable) -> bool {
    use rayon::prelude::*;
    let ideals: Vec<Vec<bool>> = (0..table.size() as ElementId)
        .into_par_iter()
        .map(|x| table.principal_ideal(x))
        .collect();
    // Equal ideals would be mutually contained, so a ≠ b with MaM = MbM
    // shows up as a ∈ MbM and b ∈ MaM.
    (0..table.size()).all(|a| {
        (a + 1..table.size()).all(|b| !(ideals[a][b] && ideals[b][a]))
    })
}
