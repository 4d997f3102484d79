//! One workflow per checkable claim about the three monoid families, each
//! returning a [`Report`].
//!
//! | workflow                    | claim                                                        |
//! |-----------------------------|--------------------------------------------------------------|
//! | [`verify_lemma1`]           | Kiselman relations hold in `Styl_n`                          |
//! | [`verify_lemma2`]           | stylic relations hold in `Cat_n`                             |
//! | [`verify_surjection_chain`] | `Kis_n ->> Styl_n ->> Cat_n` on generators                   |
//! | [`verify_theorem`]          | `Kis_n`, `Styl_n`, `Cat_n` satisfy the same identities       |
//! | [`verify_corollary2`]       | the listed bases hold in `Styl_2` / `Styl_3`                 |
//! | [`verify_corollary2c`]      | no finite basis for `n >= 4`: reported as not checkable      |

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::engine::{enumerate, Limits, MonoidTable};
use crate::error::{Error, Result};
use crate::identities::{
    bounded_derivation, holds_in_stylic, holds_in_table, value_signature, variable_alphabet, words_up_to, AxiomSet,
    Derivation, DerivationBounds, Identity,
};
use crate::presentations::{catalan_transformation_monoid, Family, Presentation};
use crate::wordcore::{distinguishing_subword, simon_equivalent, Alphabet, Word};

/// Largest `n` for the table-based workflows.
pub const TABLE_GUARD: usize = 4;

/// Default seed for the sampled derivation smoke set.
pub const DEFAULT_SEED: u64 = 2022;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotCheckable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotCheckable => "not-checkable",
        })
    }
}

/// A pair of words that should have been equal: an identity, a relation, or
/// two elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub left: String,
    pub right: String,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub items_checked: u64,
    pub elapsed_steps: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub stats: Stats,
    #[serde(default)]
    pub details: BTreeMap<String, Value>,
}

impl Report {
    fn new(claim: &str, params: Value) -> Self {
        let params = match params {
            Value::Object(map) => map.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        Report {
            claim: claim.to_string(),
            params,
            verdict: Verdict::Pass,
            counterexample: None,
            stats: Stats::default(),
            details: BTreeMap::new(),
        }
    }

    /// Records the first failure; later ones only count.
    fn fail(&mut self, counterexample: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
        self.verdict = Verdict::Fail;
    }

    fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<_> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(f, "{} [{}]: {}", self.claim, params.join(", "), self.verdict)?;
        if let Some(c) = &self.counterexample {
            writeln!(f, "  counterexample: {} = {} ({})", c.left, c.right, c.note)?;
        }
        writeln!(
            f,
            "  checked {} items in {} steps",
            self.stats.items_checked, self.stats.elapsed_steps
        )?;
        for (k, v) in &self.details {
            writeln!(f, "  {k}: {v}")?;
        }
        Ok(())
    }
}

fn guard(n: usize) -> Result<()> {
    if n == 0 || n > TABLE_GUARD {
        return Err(Error::resource(
            "table_guard",
            TABLE_GUARD as u64,
            format!("table workflows run for 1 <= n <= {TABLE_GUARD}, got {n}"),
        ));
    }
    Ok(())
}

/// The enumerated monoid of a preset family.
pub fn family_table(family: Family, n: usize, limits: &Limits) -> Result<MonoidTable> {
    Ok(enumerate(&family.presentation(n)?, limits)?.table)
}

/// Evaluates every relation of `relations` in `table`; failures go into the
/// report.
fn check_relations(report: &mut Report, relations: &Presentation, table: &MonoidTable, monoid: &str) {
    let alphabet = relations.alphabet();
    for (l, r) in relations.relations() {
        report.stats.items_checked += 1;
        report.stats.elapsed_steps += (l.len() + r.len()) as u64;
        if table.evaluate(l) != table.evaluate(r) {
            report.fail(Counterexample {
                left: alphabet.format(l),
                right: alphabet.format(r),
                note: format!("relation fails in {monoid}"),
            });
        }
    }
}

/// The Kiselman relations hold in the stylic monoid.
pub fn verify_lemma1(n: usize, limits: &Limits) -> Result<Report> {
    guard(n)?;
    let mut report = Report::new("lemma1", json!({ "n": n }));
    let stylic = family_table(Family::Stylic, n, limits)?;
    check_relations(&mut report, &Family::Kiselman.presentation(n)?, &stylic, &format!("Styl_{n}"));
    report.detail("size_stylic", stylic.size());
    Ok(report)
}

/// The stylic relations hold in the Catalan monoid, both as presented and as
/// transformations of a chain.
pub fn verify_lemma2(n: usize, limits: &Limits) -> Result<Report> {
    guard(n)?;
    let mut report = Report::new("lemma2", json!({ "n": n }));
    let stylic = Family::Stylic.presentation(n)?;
    let catalan = family_table(Family::Catalan, n, limits)?;
    let model = catalan_transformation_monoid(n)?;
    check_relations(&mut report, &stylic, &catalan, &format!("Cat_{n}"));
    check_relations(&mut report, &stylic, &model, &format!("the transformation model of Cat_{n}"));
    report.detail("size_catalan", catalan.size());
    report.detail("size_model", model.size());
    report.detail("presented_matches_model", catalan.isomorphic_respecting_generators(&model));
    Ok(report)
}

/// Records the generator-respecting epimorphism `source ->> target`, or a
/// failure.
fn check_epimorphism(report: &mut Report, source: &MonoidTable, target: &MonoidTable, link: &str) {
    let alphabet = Alphabet::generators(source.generator_count()).expect("generators");
    report.stats.items_checked += (source.size() * source.size()) as u64;
    match source.homomorphism_to(target) {
        Some(map) => {
            let mut hit = vec![false; target.size()];
            map.iter().for_each(|&y| hit[y as usize] = true);
            if let Some(missed) = hit.iter().position(|h| !h) {
                report.fail(Counterexample {
                    left: alphabet.format(target.representative(missed as u32)),
                    right: alphabet.format(target.representative(missed as u32)),
                    note: format!("{link}: target element has no preimage"),
                });
            }
        }
        None => {
            // Locate a pair of source elements whose product is not preserved.
            let image = |x: u32| target.evaluate(source.representative(x));
            let n = source.size() as u32;
            let bad = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .find(|&(x, y)| image(source.mul(x, y)) != target.mul(image(x), image(y)))
                .expect("no homomorphism means some product is not preserved");
            let product = source.representative(bad.0).concat(source.representative(bad.1));
            report.fail(Counterexample {
                left: alphabet.format(&product),
                right: alphabet.format(source.representative(source.mul(bad.0, bad.1))),
                note: format!("{link}: equal in the source, different in the target"),
            });
        }
    }
}

/// `Cat_n` is a homomorphic image of `Styl_n`, which is a homomorphic image
/// of `Kis_n`, with generators mapped to generators.
pub fn verify_surjection_chain(n: usize, limits: &Limits) -> Result<Report> {
    guard(n)?;
    let mut report = Report::new("chain", json!({ "n": n }));
    let kiselman = family_table(Family::Kiselman, n, limits)?;
    let stylic = family_table(Family::Stylic, n, limits)?;
    let catalan = family_table(Family::Catalan, n, limits)?;
    // Dyck: defining relations of the source hold in the target.
    check_relations(&mut report, &Family::Kiselman.presentation(n)?, &stylic, &format!("Styl_{n}"));
    check_relations(&mut report, &Family::Stylic.presentation(n)?, &catalan, &format!("Cat_{n}"));
    check_epimorphism(&mut report, &kiselman, &stylic, "Kis -> Styl");
    check_epimorphism(&mut report, &stylic, &catalan, "Styl -> Cat");
    let sizes = (kiselman.size(), stylic.size(), catalan.size());
    if !(sizes.0 >= sizes.1 && sizes.1 >= sizes.2) {
        report.fail(Counterexample {
            left: format!("|Kis|={} |Styl|={}", sizes.0, sizes.1),
            right: format!("|Cat|={}", sizes.2),
            note: "sizes are not monotone along the chain".into(),
        });
    }
    report.detail("size_kiselman", sizes.0);
    report.detail("size_stylic", sizes.1);
    report.detail("size_catalan", sizes.2);
    Ok(report)
}

/// Work estimate for [`verify_theorem`]: every grid word is evaluated under
/// every assignment in each of the three tables (`words * sum |M|^vars *
/// max_len`), then every pair of words is compared.
pub fn theorem_cost(words: u64, sizes: &[usize], vars: usize, max_len: usize) -> Option<u64> {
    let mut assignments: u64 = 0;
    for &s in sizes {
        assignments = assignments.checked_add((s as u64).checked_pow(vars as u32)?)?;
    }
    let pairs = words.checked_mul(words.saturating_sub(1))? / 2;
    words
        .checked_mul(assignments)?
        .checked_mul(max_len.max(1) as u64)?
        .checked_add(pairs)
}

/// The three monoids and the subword criterion agree on every identity of
/// the grid (words over `vars` variables, length `<= max_len`).
pub fn verify_theorem(n: usize, vars: usize, max_len: usize, limits: &Limits) -> Result<Report> {
    guard(n)?;
    variable_alphabet(vars)?;
    let mut report = Report::new("theorem", json!({ "n": n, "vars": vars, "len": max_len }));
    let tables = [
        family_table(Family::Kiselman, n, limits)?,
        family_table(Family::Stylic, n, limits)?,
        family_table(Family::Catalan, n, limits)?,
    ];
    let words = words_up_to(vars, max_len);
    let sizes: Vec<usize> = tables.iter().map(MonoidTable::size).collect();
    let cost = theorem_cost(words.len() as u64, &sizes, vars, max_len);
    match cost {
        Some(c) if c <= limits.max_steps => report.stats.elapsed_steps = c,
        _ => {
            return Err(Error::resource(
                "max_steps",
                limits.max_steps,
                format!("grid n={n} vars={vars} len={max_len} costs {cost:?} steps"),
            ))
        }
    }

    // Two words give an identity of a table iff their value signatures match.
    let signatures: Vec<Vec<Vec<u32>>> = tables
        .iter()
        .map(|t| words.par_iter().map(|w| value_signature(w, t, vars)).collect())
        .collect();
    let alphabet = variable_alphabet(vars)?;
    let names = ["Kis", "Styl", "Cat"];
    let mut disagreements = 0u64;
    let mut holding = 0u64;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            report.stats.items_checked += 1;
            let verdicts = [
                signatures[0][i] == signatures[0][j],
                signatures[1][i] == signatures[1][j],
                signatures[2][i] == signatures[2][j],
                simon_equivalent(&words[i], &words[j], n),
            ];
            if verdicts.iter().all(|&v| v == verdicts[0]) {
                holding += verdicts[0] as u64;
                continue;
            }
            disagreements += 1;
            let shown: Vec<_> = names
                .iter()
                .zip(&verdicts)
                .map(|(m, v)| format!("{m}_{n}:{v}"))
                .chain(std::iter::once(format!("subwords:{}", verdicts[3])))
                .collect();
            report.fail(Counterexample {
                left: alphabet.format(&words[i]),
                right: alphabet.format(&words[j]),
                note: shown.join(" "),
            });
        }
    }
    report.detail("disagreements", disagreements);
    report.detail("identities_holding", holding);
    report.detail("sizes", json!({ "kiselman": sizes[0], "stylic": sizes[1], "catalan": sizes[2] }));
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corollary2Part {
    A,
    B,
}

impl Corollary2Part {
    pub fn n(self) -> usize {
        match self {
            Corollary2Part::A => 2,
            Corollary2Part::B => 3,
        }
    }

    /// The listed basis.
    pub fn basis(self) -> AxiomSet {
        let text = match self {
            Corollary2Part::A => "xyxzx=xyzx\n(xy)^2=(yx)^2\n",
            Corollary2Part::B => "xyx^2zx=xyxzx\nxyzx^2tz=xyxzx^2tz\nzyx^2ztx=zyx^2zxtx\n(xy)^3=(yx)^3\n",
        };
        AxiomSet::parse(text).expect("basis text parses")
    }
}

/// Semantic checks of a derived identity plus trace replay. Returns a
/// counterexample when the derivation is unsound.
fn audit_derivation(axioms: &AxiomSet, goal: &Identity, derivation: &Derivation, n: usize) -> Option<Counterexample> {
    let Derivation::Derived(trace) = derivation else {
        return None;
    };
    let alphabet = goal.alphabet();
    let bad = |note: String| Counterexample {
        left: alphabet.format(goal.lhs()),
        right: alphabet.format(goal.rhs()),
        note,
    };
    if let Err(e) = trace.replay(axioms) {
        return Some(bad(format!("derivation trace does not replay: {e}")));
    }
    if !holds_in_stylic(goal, n) {
        return Some(bad(format!("derived but fails in Styl_{n}")));
    }
    None
}

/// Random one-step consequences `p σ(l) s = p σ(r) s` of basis axioms.
fn sampled_consequences(basis: &AxiomSet, count: usize, seed: u64) -> Vec<Identity> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 50 {
        attempts += 1;
        let axiom = &basis.axioms()[rng.gen_range(0..basis.axioms().len())];
        let vars = axiom.variables();
        let mut random_word = |max: usize| Word::new((0..rng.gen_range(0..=max)).map(|_| rng.gen_range(0..vars) as u8).collect());
        let substitution: Vec<Word> = (0..vars).map(|_| random_word(2)).collect();
        let (prefix, suffix) = (random_word(1), random_word(1));
        let instance = |side: &Word| {
            let mut w = prefix.clone();
            for &v in side.letters() {
                w = w.concat(&substitution[v as usize]);
            }
            w.concat(&suffix)
        };
        let (l, r) = (instance(axiom.lhs()), instance(axiom.rhs()));
        if l == r || l.len().max(r.len()) > DerivationBounds::default().max_word_length {
            continue;
        }
        out.push(Identity::new(vars, l, r).expect("instance stays in the axiom's variables"));
    }
    out
}

/// The listed basis identities hold in the stylic monoid by both checking
/// paths, and `xyxzx = xyzx` separates `n = 2` from `n = 3`. A derivation
/// smoke set is reported alongside; its counts are informational.
pub fn verify_corollary2(part: Corollary2Part, seed: u64, limits: &Limits) -> Result<Report> {
    let n = part.n();
    let label = match part {
        Corollary2Part::A => "corollary2a",
        Corollary2Part::B => "corollary2b",
    };
    let mut report = Report::new(label, json!({ "n": n, "seed": seed }));
    let stylic = family_table(Family::Stylic, n, limits)?;
    let basis = part.basis();
    for axiom in basis.axioms() {
        report.stats.items_checked += 1;
        let fast = holds_in_stylic(axiom, n);
        let table = holds_in_table(axiom, &stylic, limits.max_steps)?;
        if !(fast && table) {
            report.fail(Counterexample {
                left: axiom.alphabet().format(axiom.lhs()),
                right: axiom.alphabet().format(axiom.rhs()),
                note: format!("basis identity: subwords {fast}, table {table} in Styl_{n}"),
            });
        }
    }

    // Separation probe.
    let probe = Identity::parse("xyxzx=xyzx").expect("probe parses");
    let styl2 = family_table(Family::Stylic, 2, limits)?;
    let styl3 = family_table(Family::Stylic, 3, limits)?;
    let at2 = holds_in_stylic(&probe, 2) && holds_in_table(&probe, &styl2, limits.max_steps)?;
    let fails3 = !holds_in_stylic(&probe, 3) && !holds_in_table(&probe, &styl3, limits.max_steps)?;
    let witness = distinguishing_subword(probe.lhs(), probe.rhs(), 3);
    let witness_text = witness.as_ref().map(|w| probe.alphabet().format(w));
    report.stats.items_checked += 1;
    if !(at2 && fails3 && witness_text.as_deref() == Some("xxx")) {
        report.fail(Counterexample {
            left: "xyxzx".into(),
            right: "xyzx".into(),
            note: format!("separation probe: holds at 2 {at2}, fails at 3 {fails3}, witness {witness_text:?}"),
        });
    }
    report.detail("separation_witness", witness_text.unwrap_or_default());

    // Derivation smoke set.
    let bounds = DerivationBounds::default();
    let mut goals: Vec<Identity> = vec![Identity::parse("x=x").expect("parses")];
    goals.extend(basis.axioms().iter().cloned());
    if part == Corollary2Part::A {
        goals.push(Identity::parse("xyxyx=xyyx").expect("parses"));
    }
    goals.extend(sampled_consequences(&basis, 6, seed));
    let mut derived = 0u64;
    for goal in &goals {
        let d = bounded_derivation(&basis, goal, &bounds);
        derived += d.is_derived() as u64;
        if let Some(c) = audit_derivation(&basis, goal, &d, n) {
            report.fail(c);
        }
    }
    if part == Corollary2Part::A {
        let goal = Identity::parse("xy=yx").expect("parses");
        if bounded_derivation(&basis, &goal, &bounds).is_derived() {
            report.fail(Counterexample {
                left: "xy".into(),
                right: "yx".into(),
                note: "derived an identity that fails in Styl_2".into(),
            });
        }
    }
    report.detail("smoke_goals", goals.len());
    report.detail("smoke_derived", derived);
    report.stats.elapsed_steps = report.stats.items_checked + goals.len() as u64;
    Ok(report)
}

/// Non-finite-basability for `n >= 4` is not something a finite search can
/// establish; this report never passes.
pub fn verify_corollary2c() -> Report {
    let mut report = Report::new("corollary2c", json!({ "n": ">=4" }));
    report.verdict = Verdict::NotCheckable;
    report.detail(
        "reason",
        "absence of a finite basis is not mechanically checkable by bounded search",
    );
    report
}
