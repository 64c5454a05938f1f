//! Finite lasso semigroups, Wilke-algebra axiom checks, and extended
//! structures (a surjective quotient of the free lasso semigroup with a
//! recognizing set).
//!
//! A lasso semigroup is a two-sorted algebra `(W₊, W_ω, ·, ×, (-)^ω)` with
//! associative `·` and mixed associativity `s × (t × α) = (s·t) × α`. A Wilke
//! algebra additionally satisfies circularity `(sⁿ)^ω = s^ω` and coherence
//! `s × (t·s)^ω = (s·t)^ω`.

use std::collections::HashMap;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lasso::{Alphabet, LanguageSample, Lasso, Word};

/// Operation tables of a finite lasso semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoSemigroup {
    plus_names: Vec<String>,
    omega_names: Vec<String>,
    dot: Vec<Vec<usize>>,    // [plus][plus] -> plus
    times: Vec<Vec<usize>>,  // [plus][omega] -> omega
    omega_pow: Vec<usize>,   // [plus] -> omega
}

impl LassoSemigroup {
    /// Builds the structure and checks both associativity laws exhaustively
    /// (O(n³) for `·`, O(n²·m) for the mixed law), reporting the first
    /// failing triple by name.
    pub fn new(
        plus_names: Vec<String>,
        omega_names: Vec<String>,
        dot: Vec<Vec<usize>>,
        times: Vec<Vec<usize>>,
        omega_pow: Vec<usize>,
    ) -> Result<Self> {
        let s = LassoSemigroup {
            plus_names,
            omega_names,
            dot,
            times,
            omega_pow,
        };
        s.validate()?;
        Ok(s)
    }

    /// Skips the associativity scan; used by constructions whose output is
    /// associative by construction (function composition).
    pub(crate) fn new_unchecked(
        plus_names: Vec<String>,
        omega_names: Vec<String>,
        dot: Vec<Vec<usize>>,
        times: Vec<Vec<usize>>,
        omega_pow: Vec<usize>,
    ) -> Self {
        LassoSemigroup {
            plus_names,
            omega_names,
            dot,
            times,
            omega_pow,
        }
    }

    /// Exhaustive check of table shapes and both associativity laws.
    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.plus_names.len(), self.omega_names.len());
        if n == 0 || m == 0 {
            return Err(Error::invalid("both sorts must be nonempty"));
        }
        let mut seen = HashMap::new();
        for name in &self.plus_names {
            if name.is_empty() {
                return Err(Error::invalid("element names must be nonempty"));
            }
            if seen.insert(name, ()).is_some() {
                return Err(Error::invalid(format!("duplicate element name {name:?}")));
            }
        }
        let mut seen = HashMap::new();
        for name in &self.omega_names {
            if name.is_empty() {
                return Err(Error::invalid("element names must be nonempty"));
            }
            if seen.insert(name, ()).is_some() {
                return Err(Error::invalid(format!("duplicate element name {name:?}")));
            }
        }
        let table_ok = |t: &[Vec<usize>], rows, cols, range| {
            t.len() == rows && t.iter().all(|r| r.len() == cols && r.iter().all(|&v| v < range))
        };
        if !table_ok(&self.dot, n, n, n) {
            return Err(Error::invalid("dot table malformed"));
        }
        if !table_ok(&self.times, n, m, m) {
            return Err(Error::invalid("times table malformed"));
        }
        if self.omega_pow.len() != n || self.omega_pow.iter().any(|&v| v >= m) {
            return Err(Error::invalid("omega-power table malformed"));
        }
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    if self.dot[self.dot[s][t]][u] != self.dot[s][self.dot[t][u]] {
                        return Err(Error::invalid(format!(
                            "dot is not associative at ({}, {}, {})",
                            self.plus_names[s], self.plus_names[t], self.plus_names[u]
                        )));
                    }
                }
                for a in 0..m {
                    if self.times[s][self.times[t][a]] != self.times[self.dot[s][t]][a] {
                        return Err(Error::invalid(format!(
                            "mixed associativity fails at ({}, {}, {})",
                            self.plus_names[s], self.plus_names[t], self.omega_names[a]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn plus_count(&self) -> usize {
        self.plus_names.len()
    }

    pub fn omega_count(&self) -> usize {
        self.omega_names.len()
    }

    pub fn plus_name(&self, i: usize) -> &str {
        &self.plus_names[i]
    }

    pub fn omega_name(&self, i: usize) -> &str {
        &self.omega_names[i]
    }

    pub fn plus_names(&self) -> &[String] {
        &self.plus_names
    }

    pub fn omega_names(&self) -> &[String] {
        &self.omega_names
    }

    pub fn dot(&self, s: usize, t: usize) -> usize {
        self.dot[s][t]
    }

    pub fn times(&self, s: usize, alpha: usize) -> usize {
        self.times[s][alpha]
    }

    pub fn omega_pow(&self, s: usize) -> usize {
        self.omega_pow[s]
    }

    /// Checks the two Wilke axioms, with an operation counter.
    ///
    /// Coherence scans exactly n² pairs. Circularity enumerates, per element,
    /// the at most n distinct powers (stopping at the first repeat) and
    /// compares their ω-powers, which is at most 2n operations per element.
    /// When circularity fails, the reported exponent is minimal.
    pub fn wilke_axioms(&self) -> WilkeReport {
        let n = self.plus_count();
        let mut report = WilkeReport {
            circular: true,
            coherent: true,
            circularity_witness: None,
            coherence_witness: None,
            counts: WilkeCounts::default(),
        };
        for s in 0..n {
            let mut ops = 0u64;
            let target = self.omega_pow[s];
            let mut seen = vec![false; n];
            let mut power = s;
            let mut exponent = 1usize;
            seen[s] = true;
            loop {
                power = self.dot[power][s];
                exponent += 1;
                ops += 1; // one multiplication
                if seen[power] {
                    break;
                }
                seen[power] = true;
                ops += 1; // one omega-power comparison
                if self.omega_pow[power] != target && report.circular {
                    report.circular = false;
                    report.circularity_witness = Some(CircularityAxiomWitness {
                        element: self.plus_names[s].clone(),
                        exponent,
                    });
                }
            }
            report.counts.circularity_ops += ops;
            report.counts.circularity_ops_max_per_element =
                report.counts.circularity_ops_max_per_element.max(ops);
        }
        for s in 0..n {
            for t in 0..n {
                report.counts.coherence_checks += 1;
                let lhs = self.times[s][self.omega_pow[self.dot[t][s]]];
                let rhs = self.omega_pow[self.dot[s][t]];
                if lhs != rhs && report.coherent {
                    report.coherent = false;
                    report.coherence_witness = Some(CoherenceAxiomWitness {
                        left: self.plus_names[s].clone(),
                        right: self.plus_names[t].clone(),
                    });
                }
            }
        }
        report
    }
}

/// Wilke-axiom check result with its operation counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WilkeReport {
    pub circular: bool,
    pub coherent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circularity_witness: Option<CircularityAxiomWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coherence_witness: Option<CoherenceAxiomWitness>,
    pub counts: WilkeCounts,
}

impl WilkeReport {
    pub fn is_wilke(&self) -> bool {
        self.circular && self.coherent
    }
}

/// `(element^exponent)^ω != element^ω`, with the exponent minimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CircularityAxiomWitness {
    pub element: String,
    pub exponent: usize,
}

/// `left × (right·left)^ω != (left·right)^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoherenceAxiomWitness {
    pub left: String,
    pub right: String,
}

/// Operation counter backing the quadratic-complexity claim for the axiom
/// check: coherence is exactly n² pair checks, circularity at most 2n
/// operations per element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WilkeCounts {
    pub coherence_checks: u64,
    pub circularity_ops: u64,
    pub circularity_ops_max_per_element: u64,
}

impl WilkeCounts {
    pub fn total(&self) -> u64 {
        self.coherence_checks + self.circularity_ops
    }
}

// --- the free lasso semigroup (Σ⁺, Σ* × Σ⁺) ---

/// Free product: concatenation of nonempty words.
pub fn free_dot(u: &Word, v: &Word) -> Result<Word> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::invalid("free lasso semigroup elements are nonempty words"));
    }
    Ok(u.concat(v))
}

/// Free mixed product: prepends a nonempty word to the spoke.
pub fn free_times(u: &Word, l: &Lasso) -> Result<Lasso> {
    if u.is_empty() {
        return Err(Error::invalid("free lasso semigroup elements are nonempty words"));
    }
    Lasso::new(u.concat(l.spoke()), l.cycle().clone())
}

/// Free ω-power: `u ↦ (ε, u)`.
pub fn free_omega(u: &Word) -> Result<Lasso> {
    if u.is_empty() {
        return Err(Error::invalid("free lasso semigroup elements are nonempty words"));
    }
    Lasso::new(Word::empty(), u.clone())
}

/// A finite lasso semigroup together with the letter images of a surjective
/// homomorphism from the free lasso semigroup and a recognizing subset of the
/// ω-sort. Recognizes the lasso language of all lassos whose image lies in
/// the recognizing set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedLassoSemigroup {
    alphabet: Alphabet,
    base: LassoSemigroup,
    gen: Vec<usize>,         // [symbol] -> plus element
    recognizing: Vec<bool>,  // [omega]
}

impl ExtendedLassoSemigroup {
    /// Builds the structure and checks surjectivity: the letter images must
    /// generate the whole word sort under `·`, and the induced lasso images
    /// must cover the whole ω-sort.
    pub fn new(
        alphabet: Alphabet,
        base: LassoSemigroup,
        gen: Vec<usize>,
        recognizing: Vec<bool>,
    ) -> Result<Self> {
        let e = ExtendedLassoSemigroup {
            alphabet,
            base,
            gen,
            recognizing,
        };
        e.validate()?;
        Ok(e)
    }

    pub(crate) fn new_unchecked(
        alphabet: Alphabet,
        base: LassoSemigroup,
        gen: Vec<usize>,
        recognizing: Vec<bool>,
    ) -> Self {
        ExtendedLassoSemigroup {
            alphabet,
            base,
            gen,
            recognizing,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.gen.len() != self.alphabet.len() {
            return Err(Error::invalid("generator map must cover the whole alphabet"));
        }
        if self.gen.iter().any(|&g| g >= self.base.plus_count()) {
            return Err(Error::invalid("generator image out of range"));
        }
        if self.recognizing.len() != self.base.omega_count() {
            return Err(Error::invalid("recognizing set must be a subset of the omega sort"));
        }
        let (plus_hit, omega_hit) = self.generated_sorts();
        if let Some(i) = plus_hit.iter().position(|&b| !b) {
            return Err(Error::invalid(format!(
                "not surjective: word-sort element {:?} is not generated by the letter images",
                self.base.plus_name(i)
            )));
        }
        if let Some(i) = omega_hit.iter().position(|&b| !b) {
            return Err(Error::invalid(format!(
                "not surjective: omega-sort element {:?} is not the image of any lasso",
                self.base.omega_name(i)
            )));
        }
        Ok(())
    }

    /// Which elements of each sort are reachable from the letter images.
    fn generated_sorts(&self) -> (Vec<bool>, Vec<bool>) {
        let n = self.base.plus_count();
        let mut plus_hit = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        for &g in &self.gen {
            if !plus_hit[g] {
                plus_hit[g] = true;
                stack.push(g);
            }
        }
        while let Some(s) = stack.pop() {
            for &g in &self.gen {
                let t = self.base.dot(s, g);
                if !plus_hit[t] {
                    plus_hit[t] = true;
                    stack.push(t);
                }
                let t = self.base.dot(g, s);
                if !plus_hit[t] {
                    plus_hit[t] = true;
                    stack.push(t);
                }
            }
        }
        let mut omega_hit = vec![false; self.base.omega_count()];
        let mut stack: Vec<usize> = Vec::new();
        for s in 0..n {
            if plus_hit[s] {
                let o = self.base.omega_pow(s);
                if !omega_hit[o] {
                    omega_hit[o] = true;
                    stack.push(o);
                }
            }
        }
        while let Some(a) = stack.pop() {
            for s in 0..n {
                if plus_hit[s] {
                    let o = self.base.times(s, a);
                    if !omega_hit[o] {
                        omega_hit[o] = true;
                        stack.push(o);
                    }
                }
            }
        }
        (plus_hit, omega_hit)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn base(&self) -> &LassoSemigroup {
        &self.base
    }

    pub fn gen(&self, symbol: usize) -> usize {
        self.gen[symbol]
    }

    pub fn gens(&self) -> &[usize] {
        &self.gen
    }

    pub fn recognizing(&self) -> &[bool] {
        &self.recognizing
    }

    pub fn recognizes_element(&self, omega: usize) -> bool {
        self.recognizing[omega]
    }

    fn sym(&self, c: char) -> Result<usize> {
        self.alphabet
            .index_of(c)
            .ok_or_else(|| Error::invalid(format!("symbol '{c}' outside alphabet {}", self.alphabet)))
    }

    /// Image of a nonempty word: the `·`-product of its letter images.
    pub fn eval_plus(&self, w: &Word) -> Result<usize> {
        let mut it = w.symbols().iter();
        let first = it
            .next()
            .ok_or_else(|| Error::invalid("eval_plus needs a nonempty word"))?;
        let mut acc = self.gen[self.sym(*first)?];
        for &c in it {
            acc = self.base.dot(acc, self.gen[self.sym(c)?]);
        }
        Ok(acc)
    }

    /// Image of a lasso: `f⁺(u) × (f⁺(v))^ω`, and `(f⁺(v))^ω` when the spoke
    /// is empty.
    pub fn eval_omega(&self, l: &Lasso) -> Result<usize> {
        let pow = self.base.omega_pow(self.eval_plus(l.cycle())?);
        if l.spoke().is_empty() {
            Ok(pow)
        } else {
            Ok(self.base.times(self.eval_plus(l.spoke())?, pow))
        }
    }

    pub fn recognizes(&self, l: &Lasso) -> Result<bool> {
        Ok(self.recognizing[self.eval_omega(l)?])
    }

    /// Bounded image of the recognized language.
    pub fn recognition_sample(&self, max_spoke: usize, max_loop: usize) -> Result<LanguageSample> {
        LanguageSample::from_fn(&self.alphabet, max_spoke, max_loop, |l| {
            self.recognizes(l).expect("enumerated lassos use the structure's own alphabet")
        })
    }

    /// Same base and generators, complemented recognizing set.
    pub fn complement(&self) -> ExtendedLassoSemigroup {
        let mut out = self.clone();
        out.recognizing = self.recognizing.iter().map(|&b| !b).collect();
        out
    }
}

/// Restricts ambient tables to the substructure generated by the letter
/// images, renaming word-sort elements to their shortest witness words.
/// The ω-sort keeps the ambient names; the result is surjective by
/// construction.
pub fn closure_from_generators(
    alphabet: &Alphabet,
    ambient: &LassoSemigroup,
    letter_images: &[usize],
    recognizing: &[bool],
    caps: &Caps,
) -> Result<ExtendedLassoSemigroup> {
    if letter_images.len() != alphabet.len() {
        return Err(Error::invalid("need one generator image per alphabet symbol"));
    }
    if letter_images.iter().any(|&g| g >= ambient.plus_count()) {
        return Err(Error::invalid("generator image outside the ambient word sort"));
    }
    if recognizing.len() != ambient.omega_count() {
        return Err(Error::invalid("recognizing flags must cover the ambient omega sort"));
    }
    // BFS closure of the word sort, witnesses in free-word orientation
    let mut plus: Vec<usize> = Vec::new(); // ambient indices
    let mut witness: Vec<Word> = Vec::new();
    let mut plus_index: HashMap<usize, usize> = HashMap::new();
    for (s, &g) in letter_images.iter().enumerate() {
        if !plus_index.contains_key(&g) {
            plus_index.insert(g, plus.len());
            plus.push(g);
            witness.push(Word::from(vec![alphabet.symbol(s)]));
        }
    }
    let mut next = 0;
    while next < plus.len() {
        if plus.len() as u64 > caps.closure_elems {
            return Err(Error::CapExceeded {
                what: "generator closure (word sort)",
                needed: plus.len() as u64,
                cap: caps.closure_elems,
            });
        }
        let cur = plus[next];
        for (s, &g) in letter_images.iter().enumerate() {
            let prod = ambient.dot(cur, g);
            if !plus_index.contains_key(&prod) {
                plus_index.insert(prod, plus.len());
                plus.push(prod);
                witness.push(witness[next].appended(alphabet.symbol(s)));
            }
        }
        next += 1;
    }
    // omega sort: seeds are the ω-powers, closed under the × action
    let mut omega: Vec<usize> = Vec::new();
    let mut omega_index: HashMap<usize, usize> = HashMap::new();
    for &p in &plus {
        let o = ambient.omega_pow(p);
        if !omega_index.contains_key(&o) {
            omega_index.insert(o, omega.len());
            omega.push(o);
        }
    }
    let mut next = 0;
    while next < omega.len() {
        if omega.len() as u64 > caps.closure_elems {
            return Err(Error::CapExceeded {
                what: "generator closure (omega sort)",
                needed: omega.len() as u64,
                cap: caps.closure_elems,
            });
        }
        let cur = omega[next];
        for &p in &plus {
            let o = ambient.times(p, cur);
            if !omega_index.contains_key(&o) {
                omega_index.insert(o, omega.len());
                omega.push(o);
            }
        }
        next += 1;
    }
    let base = LassoSemigroup::new_unchecked(
        witness.iter().map(|w| w.to_string()).collect(),
        omega.iter().map(|&o| ambient.omega_name(o).to_string()).collect(),
        plus.iter()
            .map(|&p| plus.iter().map(|&q| plus_index[&ambient.dot(p, q)]).collect())
            .collect(),
        plus.iter()
            .map(|&p| omega.iter().map(|&a| omega_index[&ambient.times(p, a)]).collect())
            .collect(),
        plus.iter().map(|&p| omega_index[&ambient.omega_pow(p)]).collect(),
    );
    Ok(ExtendedLassoSemigroup::new_unchecked(
        alphabet.clone(),
        base,
        letter_images.iter().map(|g| plus_index[g]).collect(),
        omega.iter().map(|&o| recognizing[o]).collect(),
    ))
}

/// Homomorphism between extended lasso semigroups that commutes with the
/// quotient maps and preserves the recognizing set both ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtMorphism {
    pub plus_map: Vec<usize>,
    pub omega_map: Vec<usize>,
}

impl ExtMorphism {
    /// Validates all morphism equations on the full tables.
    pub fn check(&self, from: &ExtendedLassoSemigroup, to: &ExtendedLassoSemigroup) -> bool {
        let (b1, b2) = (from.base(), to.base());
        if self.plus_map.len() != b1.plus_count() || self.omega_map.len() != b1.omega_count() {
            return false;
        }
        if self.plus_map.iter().any(|&p| p >= b2.plus_count())
            || self.omega_map.iter().any(|&o| o >= b2.omega_count())
        {
            return false;
        }
        for (s, &g) in from.gens().iter().enumerate() {
            if self.plus_map[g] != to.gen(s) {
                return false;
            }
        }
        for s in 0..b1.plus_count() {
            for t in 0..b1.plus_count() {
                if self.plus_map[b1.dot(s, t)] != b2.dot(self.plus_map[s], self.plus_map[t]) {
                    return false;
                }
            }
            for a in 0..b1.omega_count() {
                if self.omega_map[b1.times(s, a)] != b2.times(self.plus_map[s], self.omega_map[a]) {
                    return false;
                }
            }
            if self.omega_map[b1.omega_pow(s)] != b2.omega_pow(self.plus_map[s]) {
                return false;
            }
        }
        (0..b1.omega_count())
            .all(|a| from.recognizes_element(a) == to.recognizes_element(self.omega_map[a]))
    }
}

/// Paired closure of `(f₁(w), f₂(w))` over all words and lassos: the word
/// sort under componentwise `·`, the ω-sort seeded by ω-powers and closed
/// under componentwise `×`.
fn paired_closure(
    e1: &ExtendedLassoSemigroup,
    e2: &ExtendedLassoSemigroup,
    caps: &Caps,
) -> Result<(Vec<(usize, usize)>, Vec<(usize, usize)>)> {
    let (b1, b2) = (e1.base(), e2.base());
    let mut plus_pairs: Vec<(usize, usize)> = Vec::new();
    let mut seen = vec![vec![false; b2.plus_count()]; b1.plus_count()];
    for s in 0..e1.alphabet().len() {
        let p = (e1.gen(s), e2.gen(s));
        if !seen[p.0][p.1] {
            seen[p.0][p.1] = true;
            plus_pairs.push(p);
        }
    }
    let mut next = 0;
    while next < plus_pairs.len() {
        if plus_pairs.len() as u64 > caps.closure_elems {
            return Err(Error::CapExceeded {
                what: "paired closure (word sort)",
                needed: plus_pairs.len() as u64,
                cap: caps.closure_elems,
            });
        }
        let (p1, p2) = plus_pairs[next];
        for s in 0..e1.alphabet().len() {
            let q = (b1.dot(p1, e1.gen(s)), b2.dot(p2, e2.gen(s)));
            if !seen[q.0][q.1] {
                seen[q.0][q.1] = true;
                plus_pairs.push(q);
            }
        }
        next += 1;
    }
    let mut omega_pairs: Vec<(usize, usize)> = Vec::new();
    let mut oseen = vec![vec![false; b2.omega_count()]; b1.omega_count()];
    for &(p1, p2) in &plus_pairs {
        let o = (b1.omega_pow(p1), b2.omega_pow(p2));
        if !oseen[o.0][o.1] {
            oseen[o.0][o.1] = true;
            omega_pairs.push(o);
        }
    }
    let mut next = 0;
    while next < omega_pairs.len() {
        if omega_pairs.len() as u64 > caps.closure_elems {
            return Err(Error::CapExceeded {
                what: "paired closure (omega sort)",
                needed: omega_pairs.len() as u64,
                cap: caps.closure_elems,
            });
        }
        let (a1, a2) = omega_pairs[next];
        for &(p1, p2) in &plus_pairs {
            let o = (b1.times(p1, a1), b2.times(p2, a2));
            if !oseen[o.0][o.1] {
                oseen[o.0][o.1] = true;
                omega_pairs.push(o);
            }
        }
        next += 1;
    }
    Ok((plus_pairs, omega_pairs))
}

/// Decides kernel refinement exactly: equal images under `f₁` must imply
/// equal images under `f₂`, on both sorts. This holds iff the paired closure
/// is functional in its first components.
pub fn check_refinement(
    e1: &ExtendedLassoSemigroup,
    e2: &ExtendedLassoSemigroup,
    caps: &Caps,
) -> Result<bool> {
    if e1.alphabet() != e2.alphabet() {
        return Err(Error::invalid("refinement check requires identical alphabets"));
    }
    let (plus_pairs, omega_pairs) = paired_closure(e1, e2, caps)?;
    Ok(functional(&plus_pairs) && functional(&omega_pairs))
}

fn functional(pairs: &[(usize, usize)]) -> bool {
    let mut map: HashMap<usize, usize> = HashMap::new();
    pairs.iter().all(|&(a, b)| match map.get(&a) {
        Some(&existing) => existing == b,
        None => {
            map.insert(a, b);
            true
        }
    })
}

/// Finds the unique morphism `e1 → e2` (the map `f₁(w) ↦ f₂(w)`), or `None`
/// when it is not well-defined or does not preserve the recognizing sets.
pub fn find_ext_morphism(
    e1: &ExtendedLassoSemigroup,
    e2: &ExtendedLassoSemigroup,
    caps: &Caps,
) -> Result<Option<ExtMorphism>> {
    if e1.alphabet() != e2.alphabet() {
        return Err(Error::invalid("morphism search requires identical alphabets"));
    }
    let (plus_pairs, omega_pairs) = paired_closure(e1, e2, caps)?;
    if !(functional(&plus_pairs) && functional(&omega_pairs)) {
        return Ok(None);
    }
    // recognizing biconditional over all lasso image pairs = language equality
    if omega_pairs
        .iter()
        .any(|&(a1, a2)| e1.recognizes_element(a1) != e2.recognizes_element(a2))
    {
        return Ok(None);
    }
    // surjectivity of f₁ makes the pair map total on e1's carriers
    let mut plus_map = vec![usize::MAX; e1.base().plus_count()];
    for &(p1, p2) in &plus_pairs {
        plus_map[p1] = p2;
    }
    let mut omega_map = vec![usize::MAX; e1.base().omega_count()];
    for &(a1, a2) in &omega_pairs {
        omega_map[a1] = a2;
    }
    debug_assert!(plus_map.iter().all(|&p| p != usize::MAX));
    debug_assert!(omega_map.iter().all(|&o| o != usize::MAX));
    let g = ExtMorphism { plus_map, omega_map };
    debug_assert!(g.check(e1, e2));
    Ok(Some(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial() -> LassoSemigroup {
        LassoSemigroup::new(
            vec!["s".into()],
            vec!["o".into()],
            vec![vec![0]],
            vec![vec![0]],
            vec![0],
        )
        .unwrap()
    }

    #[test]
    fn one_element_structure_is_valid_and_wilke() {
        let s = trivial();
        let report = s.wilke_axioms();
        assert!(report.circular && report.coherent);
    }

    #[test]
    fn planted_associativity_failure_is_reported() {
        // (q·p)·q = p·q = q but q·(p·q) = q·q = p
        let err = LassoSemigroup::new(
            vec!["p".into(), "q".into()],
            vec!["o".into()],
            vec![vec![0, 1], vec![0, 0]],
            vec![vec![0], vec![0]],
            vec![0, 0],
        )
        .unwrap_err();
        assert!(err.to_string().contains("not associative"), "{err}");
    }

    #[test]
    fn free_structure_operations() {
        let ab = Word::from("ab");
        assert_eq!(free_dot(&Word::from("a"), &Word::from("b")).unwrap(), ab);
        assert_eq!(
            free_times(&ab, &Lasso::new(Word::from("c"), Word::from("d")).unwrap()).unwrap(),
            Lasso::new(Word::from("abc"), Word::from("d")).unwrap()
        );
        assert_eq!(
            free_omega(&ab).unwrap(),
            Lasso::new(Word::empty(), ab.clone()).unwrap()
        );
        assert!(free_dot(&Word::empty(), &ab).is_err());
        assert!(free_omega(&Word::empty()).is_err());
    }

    #[test]
    fn wilke_counts_shape() {
        // cyclic word sort of size n acting on Z_2 (m divides n keeps the
        // mixed law valid): dot(i,j) = i+j+1 mod n, times(s,a) = a+s+1 mod 2
        let n = 8;
        let s = LassoSemigroup::new(
            (0..n).map(|i| format!("c{i}")).collect(),
            vec!["o0".into(), "o1".into()],
            (0..n).map(|i| (0..n).map(|j| (i + j + 1) % n).collect()).collect(),
            (0..n).map(|i| vec![(i + 1) % 2, (i + 2) % 2]).collect(),
            (0..n).map(|i| i % 2).collect(),
        )
        .unwrap();
        let report = s.wilke_axioms();
        assert_eq!(report.counts.coherence_checks, (n * n) as u64);
        assert!(report.counts.circularity_ops_max_per_element <= 2 * n as u64);
    }


    #[test]
    fn eval_is_the_homomorphic_extension() {
        let caps = Caps::default();
        let e = crate::functors::alg(&crate::corpus::a1(), &caps).unwrap();
        let a = Word::from("a");
        let b = Word::from("b");
        let ab = Word::from("ab");
        assert_eq!(
            e.eval_plus(&ab).unwrap(),
            e.base().dot(e.eval_plus(&a).unwrap(), e.eval_plus(&b).unwrap())
        );
        let omega_a = Lasso::new(Word::empty(), a.clone()).unwrap();
        assert_eq!(
            e.eval_omega(&omega_a).unwrap(),
            e.base().omega_pow(e.gen(0))
        );
        // homomorphism law: eval_omega(u × l) = eval_plus(u) × eval_omega(l)
        let alphabet = e.alphabet().clone();
        for u in alphabet.words_up_to(2) {
            if u.is_empty() {
                continue;
            }
            for l in crate::lasso::enumerate_lassos(&alphabet, 2, 2).unwrap() {
                let lhs = e.eval_omega(&free_times(&u, &l).unwrap()).unwrap();
                let rhs = e.base().times(e.eval_plus(&u).unwrap(), e.eval_omega(&l).unwrap());
                assert_eq!(lhs, rhs, "u={u} l={l}");
            }
        }
    }

    #[test]
    fn wilke_axioms_of_syntactic_images() {
        let caps = Caps::default();
        let of = |a: &crate::automaton::LassoAutomaton| {
            crate::functors::alg(&a.rev(&caps).unwrap().reach(), &caps)
                .unwrap()
                .base()
                .wilke_axioms()
        };
        let r2 = of(&crate::corpus::a2());
        assert!(r2.circular && r2.coherent);
        let r1 = of(&crate::corpus::a1());
        assert!(!r1.coherent);
    }

    /// Full ambient triple semigroup of an automaton, as explicit tables.
    fn ambient_triple_tables(a: &crate::automaton::LassoAutomaton) -> (LassoSemigroup, Vec<usize>) {
        let nx = a.x_count();
        let ny = a.y_count();
        let maps = |domain: usize, range: usize| -> Vec<Vec<usize>> {
            let mut out = vec![Vec::new()];
            for _ in 0..domain {
                let mut next = Vec::new();
                for m in &out {
                    for t in 0..range {
                        let mut m = m.clone();
                        m.push(t);
                        next.push(m);
                    }
                }
                out = next;
            }
            out
        };
        let mut elems: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = Vec::new();
        for alpha in maps(nx, nx) {
            for beta in maps(nx, ny) {
                for gamma in maps(ny, ny) {
                    elems.push((alpha.clone(), beta.clone(), gamma));
                }
            }
        }
        let index: std::collections::HashMap<_, usize> =
            elems.iter().cloned().zip(0..).collect();
        let dot = elems
            .iter()
            .map(|(a1, b1, g1)| {
                elems
                    .iter()
                    .map(|(a2, _, g2)| {
                        let alpha: Vec<usize> = a2.iter().map(|&x| a1[x]).collect();
                        let beta: Vec<usize> = a2.iter().map(|&x| b1[x]).collect();
                        let gamma: Vec<usize> = g2.iter().map(|&y| g1[y]).collect();
                        index[&(alpha, beta, gamma)]
                    })
                    .collect()
            })
            .collect();
        let times = elems
            .iter()
            .map(|(_, _, g)| (0..ny).map(|y| g[y]).collect())
            .collect();
        let omega_pow = elems.iter().map(|(_, b, _)| b[a.initial()]).collect();
        let base = LassoSemigroup::new(
            (0..elems.len()).map(|i| format!("t{i}")).collect(),
            (0..ny).map(|y| a.y_name(y).to_string()).collect(),
            dot,
            times,
            omega_pow,
        )
        .unwrap();
        let gens = (0..a.alphabet().len())
            .map(|s| {
                let t = a.letter_triple(s);
                index[&(t.alpha, t.beta, t.gamma)]
            })
            .collect();
        (base, gens)
    }

    #[test]
    fn closing_ambient_generators_reproduces_the_transition_algebra() {
        let caps = Caps::default();
        let a1 = crate::corpus::a1();
        let (ambient, gens) = ambient_triple_tables(&a1);
        assert_eq!(ambient.plus_count(), 8); // 1^1 * 2^1 * 2^2 triples
        let recognizing: Vec<bool> = (0..ambient.omega_count())
            .map(|y| a1.is_final(y))
            .collect();
        let closed =
            closure_from_generators(a1.alphabet(), &ambient, &gens, &recognizing, &caps).unwrap();
        let direct = crate::functors::alg(&a1, &caps).unwrap();
        assert_eq!(closed.base().plus_names(), direct.base().plus_names());
        assert_eq!(closed.base().omega_names(), direct.base().omega_names());
        assert_eq!(
            closed.recognition_sample(2, 2).unwrap(),
            direct.recognition_sample(2, 2).unwrap()
        );
        // witnesses are BFS-shortest
        for name in closed.base().plus_names() {
            assert!(name.chars().count() <= closed.base().plus_count());
        }
    }

    #[test]
    fn closure_of_a_single_idempotent_is_trivial() {
        let caps = Caps::default();
        let ambient = LassoSemigroup::new(
            vec!["e".into(), "junk".into()],
            vec!["o".into()],
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![0], vec![0]],
            vec![0, 0],
        )
        .unwrap();
        let closed = closure_from_generators(
            &Alphabet::parse("a").unwrap(),
            &ambient,
            &[0],
            &[true],
            &caps,
        )
        .unwrap();
        assert_eq!(closed.base().plus_count(), 1);
        assert_eq!(closed.base().plus_names(), &["a".to_string()]);
    }

    #[test]
    fn ext_morphism_finder_identity_and_mismatch() {
        let caps = Caps::default();
        let e1 = crate::functors::alg(&crate::corpus::a1(), &caps).unwrap();
        let id = find_ext_morphism(&e1, &e1, &caps).unwrap().unwrap();
        assert_eq!(id.plus_map, (0..e1.base().plus_count()).collect::<Vec<_>>());
        assert_eq!(id.omega_map, (0..e1.base().omega_count()).collect::<Vec<_>>());
        let e2 = crate::functors::alg(&crate::corpus::a2(), &caps).unwrap();
        assert!(find_ext_morphism(&e1, &e2, &caps).unwrap().is_none());
    }

    #[test]
    fn refinement_basics() {
        let caps = Caps::default();
        let e1 = crate::functors::alg(&crate::corpus::a1(), &caps).unwrap();
        assert!(check_refinement(&e1, &e1, &caps).unwrap());
        // a one-element recognizer refines only structures that also collapse
        // the letters
        let trivial_e = crate::functors::alg(&crate::corpus::collapsing_pair_source(), &caps).unwrap();
        assert!(!check_refinement(&trivial_e, &e1, &caps).unwrap());
        assert!(check_refinement(&e1, &trivial_e, &caps).unwrap());
    }
    #[test]
    fn complement_flips_recognition() {
        let e = ExtendedLassoSemigroup::new(
            Alphabet::parse("a").unwrap(),
            trivial(),
            vec![0],
            vec![false],
        )
        .unwrap();
        let l = Lasso::new(Word::empty(), Word::from("a")).unwrap();
        assert!(!e.recognizes(&l).unwrap());
        assert!(e.complement().recognizes(&l).unwrap());
        assert_eq!(e.complement().complement(), e);
    }

    #[test]
    fn surjectivity_is_checked() {
        // two-element word sort where only one element is generated
        let base = LassoSemigroup::new(
            vec!["p".into(), "junk".into()],
            vec!["o".into()],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![0], vec![0]],
            vec![0, 0],
        )
        .unwrap();
        let err = ExtendedLassoSemigroup::new(Alphabet::parse("a").unwrap(), base, vec![0], vec![true])
            .unwrap_err();
        assert!(err.to_string().contains("not surjective"), "{err}");
    }
}
