//! The stylic, Kiselman and Catalan presentations, and the transformation
//! model of the Catalan monoid.
//!
//! Generator `a_i` is letter `i - 1`; the order `a_1 < a_2 < … < a_n` is the
//! letter order.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::MonoidTable;
use crate::error::{Error, Result};
use crate::wordcore::{Alphabet, Letter, Word};

/// Largest `n` for which the transformation model may be enumerated.
pub const MODEL_GUARD: usize = 8;

/// A finitely presented monoid: `generators` letters subject to `relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    relations: Vec<(Word, Word)>,
}

/// On-disk form: words are lists of 1-based generator indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: usize,
    pub relations: Vec<[Vec<usize>; 2]>,
}

impl Presentation {
    pub fn new(generators: usize, relations: Vec<(Word, Word)>) -> Result<Self> {
        let alphabet = Alphabet::new(generators)?;
        for (l, r) in &relations {
            alphabet.validate(l)?;
            alphabet.validate(r)?;
            if l == r {
                return Err(Error::input(format!(
                    "relation pairs {} with itself",
                    alphabet.format(l)
                )));
            }
        }
        Ok(Presentation { generators, relations })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::generators(self.generators).expect("validated generator count")
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            generators: self.generators,
            relations: self
                .relations
                .iter()
                .map(|(l, r)| [l.to_generators(), r.to_generators()])
                .collect(),
        }
    }

    pub fn from_file(file: &PresentationFile) -> Result<Self> {
        let relations = file
            .relations
            .iter()
            .map(|[l, r]| Ok((Word::from_generators(l)?, Word::from_generators(r)?)))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(file.generators, relations)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Presentation::from_file(&serde_json::from_str(text)?)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.alphabet();
        writeln!(f, "generators: {}", self.generators)?;
        for (l, r) in &self.relations {
            writeln!(f, "{} = {}", alphabet.format(l), alphabet.format(r))?;
        }
        Ok(())
    }
}

/// The three preset families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Stylic,
    Kiselman,
    Catalan,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Stylic, Family::Kiselman, Family::Catalan];

    pub fn presentation(self, n: usize) -> Result<Presentation> {
        match self {
            Family::Stylic => stylic_presentation(n),
            Family::Kiselman => kiselman_presentation(n),
            Family::Catalan => catalan_presentation(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Stylic => "stylic",
            Family::Kiselman => "kiselman",
            Family::Catalan => "catalan",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stylic" => Ok(Family::Stylic),
            "kiselman" => Ok(Family::Kiselman),
            "catalan" => Ok(Family::Catalan),
            other => Err(Error::input(format!("unknown family {other:?}"))),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::input("a presentation needs at least one generator"));
    }
    Ok(())
}

/// Word over 1-based generator indices.
fn a(indices: &[usize]) -> Word {
    Word::new(indices.iter().map(|&i| (i - 1) as Letter).collect())
}

fn idempotents(n: usize) -> impl Iterator<Item = (Word, Word)> {
    (1..=n).map(|i| (a(&[i, i]), a(&[i])))
}

/// `n` idempotent generators with the four plactic-style families:
/// `a_j a_i a_k = a_j a_k a_i` and `a_i a_k a_j = a_k a_i a_j` for
/// `i < j < k`; `a_j a_i a_i = a_i a_j a_i` and `a_j a_j a_i = a_j a_i a_j`
/// for `i < j`.
pub fn stylic_presentation(n: usize) -> Result<Presentation> {
    check_n(n)?;
    let mut relations: Vec<_> = idempotents(n).collect();
    let triples: Vec<_> = (1..=n)
        .flat_map(|i| (i + 1..=n).flat_map(move |j| (j + 1..=n).map(move |k| (i, j, k))))
        .collect();
    let pairs: Vec<_> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    relations.extend(triples.iter().map(|&(i, j, k)| (a(&[j, i, k]), a(&[j, k, i]))));
    relations.extend(triples.iter().map(|&(i, j, k)| (a(&[i, k, j]), a(&[k, i, j]))));
    relations.extend(pairs.iter().map(|&(i, j)| (a(&[j, i, i]), a(&[i, j, i]))));
    relations.extend(pairs.iter().map(|&(i, j)| (a(&[j, j, i]), a(&[j, i, j]))));
    Presentation::new(n, relations)
}

/// `n` idempotent generators with `a_i a_j a_i = a_j a_i a_j = a_j a_i` for
/// `i < j`.
pub fn kiselman_presentation(n: usize) -> Result<Presentation> {
    check_n(n)?;
    let mut relations: Vec<_> = idempotents(n).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            relations.push((a(&[i, j, i]), a(&[j, i])));
            relations.push((a(&[j, i, j]), a(&[j, i])));
        }
    }
    Presentation::new(n, relations)
}

/// `n` idempotent generators; distant generators commute and neighbours
/// satisfy `a_i a_{i+1} a_i = a_{i+1} a_i a_{i+1} = a_{i+1} a_i`.
pub fn catalan_presentation(n: usize) -> Result<Presentation> {
    check_n(n)?;
    let mut relations: Vec<_> = idempotents(n).collect();
    for i in 1..=n {
        for k in i + 2..=n {
            relations.push((a(&[i, k]), a(&[k, i])));
        }
    }
    for i in 1..n {
        relations.push((a(&[i, i + 1, i]), a(&[i + 1, i])));
        relations.push((a(&[i + 1, i, i + 1]), a(&[i + 1, i])));
    }
    Presentation::new(n, relations)
}

/// A self-map of the chain `0 < 1 < … < m-1`; `images[p]` is the image of `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Vec<u8>,
}

impl Transformation {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let t = Transformation { images };
        if t.images.iter().any(|&i| i as usize >= t.images.len()) {
            return Err(Error::input("transformation image out of range"));
        }
        if !t.is_order_decreasing() || !t.is_order_preserving() {
            return Err(Error::input(format!(
                "{:?} is not order-preserving and order-decreasing",
                t.images
            )));
        }
        Ok(t)
    }

    pub fn identity(points: usize) -> Self {
        Transformation {
            images: (0..points as u8).collect(),
        }
    }

    /// Generator `g_i` of the Catalan model: sends `i` to `i - 1`, fixes the
    /// rest.
    pub fn catalan_generator(points: usize, i: usize) -> Self {
        let mut t = Transformation::identity(points);
        t.images[i] = (i - 1) as u8;
        t
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_order_decreasing(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &i)| i as usize <= p)
    }

    pub fn is_order_preserving(&self) -> bool {
        self.images.windows(2).all(|w| w[0] <= w[1])
    }

    /// Left-to-right composition: apply `self`, then `then`.
    pub fn then(&self, then: &Transformation) -> Transformation {
        Transformation {
            images: self.images.iter().map(|&i| then.images[i as usize]).collect(),
        }
    }
}

fn model_guard(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::input("the Catalan model needs n >= 1"));
    }
    if n > MODEL_GUARD {
        return Err(Error::resource(
            "model_guard",
            MODEL_GUARD as u64,
            format!("Catalan model for n = {n} is beyond desk scale"),
        ));
    }
    Ok(())
}

/// Every order-preserving, order-decreasing map of the `(n+1)`-point chain,
/// listed directly rather than generated.
pub fn all_catalan_transformations(n: usize) -> Result<Vec<Transformation>> {
    model_guard(n)?;
    fn extend(images: &mut Vec<u8>, points: usize, out: &mut Vec<Transformation>) {
        let p = images.len();
        if p == points {
            out.push(Transformation { images: images.clone() });
            return;
        }
        let lowest = images.last().copied().unwrap_or(0);
        for image in lowest..=p as u8 {
            images.push(image);
            extend(images, points, out);
            images.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n + 1, &mut out);
    Ok(out)
}

/// The monoid generated by `g_1, …, g_n` acting on the chain `{0, …, n}`,
/// with the generator closure. Also returns the transformation of each
/// element, indexed by element id.
pub fn catalan_model(n: usize) -> Result<(MonoidTable, Vec<Transformation>)> {
    model_guard(n)?;
    let points = n + 1;
    let generators: Vec<_> = (1..=n)
        .map(|i| Transformation::catalan_generator(points, i))
        .collect();
    MonoidTable::close(
        Transformation::identity(points),
        n,
        |t, g| Ok(t.then(&generators[g as usize])),
        usize::MAX,
    )
}

/// The Catalan transformation monoid as an explicit table, checked to be
/// exactly the set of all order-preserving, order-decreasing maps.
pub fn catalan_transformation_monoid(n: usize) -> Result<MonoidTable> {
    let (table, elements) = catalan_model(n)?;
    let generated: HashSet<_> = elements.into_iter().collect();
    let all: HashSet<_> = all_catalan_transformations(n)?.into_iter().collect();
    if generated != all {
        return Err(Error::input(format!(
            "generators reach {} of the {} order-preserving decreasing maps",
            generated.len(),
            all.len()
        )));
    }
    Ok(table)
}
