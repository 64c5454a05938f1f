//! Words, lassos and bounded lasso-language samples.
//!
//! A lasso `(u, v)` is the finite representation of the ultimately periodic
//! word `u·v·v·v·…`; the loop word `v` is always nonempty. Two lassos denote
//! the same infinite word exactly when their canonical forms coincide
//! (primitive loop, shortest spoke, normalized phase), which gives a decision
//! procedure for ultimately-periodic-word equality without unrolling.

use std::fmt;

use crate::error::{Error, Result};

/// An ordered finite set of single-scalar symbols.
///
/// The ordering is fixed at construction and drives every canonical
/// enumeration in the crate, so that witness reporting and serialized output
/// are byte-stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from distinct symbols. `@` is reserved for
    /// generated state names and rejected here.
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::invalid("alphabet must be nonempty"));
        }
        for (i, &c) in symbols.iter().enumerate() {
            if c == '@' {
                return Err(Error::invalid("'@' is reserved and cannot be an alphabet symbol"));
            }
            if symbols[..i].contains(&c) {
                return Err(Error::invalid(format!("duplicate alphabet symbol '{c}'")));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Alphabet::new(text.chars())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.symbols.iter().position(|&c| c == symbol)
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.index_of(symbol).is_some()
    }

    /// All words of exactly `len` symbols, in lexicographic (alphabet) order.
    pub fn words_of_len(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * self.len());
            for w in &out {
                for &c in &self.symbols {
                    next.push(w.appended(c));
                }
            }
            out = next;
        }
        out
    }

    /// All words of length at most `max_len`, shortest first, lexicographic within a length.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|n| self.words_of_len(n)).collect()
    }

    pub fn as_text(&self) -> String {
        self.symbols.iter().collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_text())
    }
}

/// A finite word, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<char>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn first(&self) -> Option<char> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<char> {
        self.0.last().copied()
    }

    /// The word written backwards.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn appended(&self, symbol: char) -> Word {
        let mut v = self.0.clone();
        v.push(symbol);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeated(&self, times: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * times);
        for _ in 0..times {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.chars().collect())
    }
}

impl From<Vec<char>> for Word {
    fn from(v: Vec<char>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A spoke word plus a nonempty loop word; denotes `spoke · loop^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    spoke: Word,
    cycle: Word,
}

impl Lasso {
    /// Fails when the loop word is empty.
    pub fn new(spoke: Word, cycle: Word) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::invalid("lasso loop word must be nonempty"));
        }
        Ok(Lasso { spoke, cycle })
    }

    pub fn spoke(&self) -> &Word {
        &self.spoke
    }

    /// The loop word (`"loop"` in the JSON schema).
    pub fn cycle(&self) -> &Word {
        &self.cycle
    }

    /// Reverse of the lasso: writing the loop as `a·v`, returns `(v^rev, a·spoke^rev)`.
    /// An involution.
    pub fn reversed(&self) -> Lasso {
        let head = self.cycle.symbols()[0];
        let rest = Word::from(self.cycle.symbols()[1..].to_vec());
        let mut new_cycle = vec![head];
        new_cycle.extend(self.spoke.symbols().iter().rev().copied());
        Lasso {
            spoke: rest.reversed(),
            cycle: Word::from(new_cycle),
        }
    }

    /// Symbol of the denoted infinite word at position `i`.
    pub fn symbol_at(&self, i: usize) -> char {
        if i < self.spoke.len() {
            self.spoke.symbols()[i]
        } else {
            let j = (i - self.spoke.len()) % self.cycle.len();
            self.cycle.symbols()[j]
        }
    }

    /// Canonical representative of the denoted infinite word: the loop is
    /// replaced by its primitive root, then trailing spoke symbols equal to
    /// the loop's last symbol are folded into the loop by rotating it right.
    /// Idempotent; two lassos denote the same word iff their canonical forms
    /// are equal.
    pub fn canonical(&self) -> Lasso {
        let mut cycle = primitive_root(&self.cycle);
        let mut spoke = self.spoke.symbols().to_vec();
        while let Some(&last) = spoke.last() {
            if last == cycle[cycle.len() - 1] {
                spoke.pop();
                cycle.rotate_right(1);
            } else {
                break;
            }
        }
        Lasso {
            spoke: Word::from(spoke),
            cycle: Word::from(cycle),
        }
    }

    /// True iff both lassos denote the same ultimately periodic word.
    pub fn up_equal(&self, other: &Lasso) -> bool {
        self.canonical() == other.canonical()
    }
}

fn primitive_root(cycle: &Word) -> Vec<char> {
    let v = cycle.symbols();
    let n = v.len();
    for d in 1..=n {
        if n % d == 0 && v.iter().enumerate().all(|(i, &c)| c == v[i % d]) {
            return v[..d].to_vec();
        }
    }
    unreachable!("d = n always divides")
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.spoke, self.cycle)
    }
}

/// Every lasso with `|spoke| <= max_spoke` and `1 <= |loop| <= max_loop`, in
/// the canonical order: spoke length, then loop length, then lexicographic.
pub fn enumerate_lassos(alphabet: &Alphabet, max_spoke: usize, max_loop: usize) -> Result<Vec<Lasso>> {
    if max_loop == 0 {
        return Err(Error::invalid("max loop length must be at least 1"));
    }
    let loops: Vec<Vec<Word>> = (1..=max_loop).map(|n| alphabet.words_of_len(n)).collect();
    let mut out = Vec::new();
    for slen in 0..=max_spoke {
        for spoke in alphabet.words_of_len(slen) {
            for loop_words in &loops {
                for lp in loop_words {
                    out.push(Lasso {
                        spoke: spoke.clone(),
                        cycle: lp.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Total membership map over the full lasso enumeration within bounds — the
/// finite stand-in for a lasso language used as ground truth everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSample {
    alphabet: Alphabet,
    max_spoke: usize,
    max_loop: usize,
    members: Vec<bool>,
}

impl LanguageSample {
    /// Evaluates `member` on every lasso within bounds. Runs data-parallel
    /// when the `parallel` feature is enabled.
    pub fn from_fn<F>(alphabet: &Alphabet, max_spoke: usize, max_loop: usize, member: F) -> Result<Self>
    where
        F: Fn(&Lasso) -> bool + Sync,
    {
        let lassos = enumerate_lassos(alphabet, max_spoke, max_loop)?;
        let members = crate::par::map_slice(&lassos, |l| member(l));
        Ok(LanguageSample {
            alphabet: alphabet.clone(),
            max_spoke,
            max_loop,
            members,
        })
    }

    /// Single-threaded variant of [`LanguageSample::from_fn`]; this is what
    /// the crate falls back to without the `parallel` feature.
    pub fn from_fn_sequential<F>(
        alphabet: &Alphabet,
        max_spoke: usize,
        max_loop: usize,
        member: F,
    ) -> Result<Self>
    where
        F: Fn(&Lasso) -> bool,
    {
        let lassos = enumerate_lassos(alphabet, max_spoke, max_loop)?;
        let members = lassos.iter().map(member).collect();
        Ok(LanguageSample {
            alphabet: alphabet.clone(),
            max_spoke,
            max_loop,
            members,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn bounds(&self) -> (usize, usize) {
        (self.max_spoke, self.max_loop)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Domain of the sample, in enumeration order.
    pub fn lassos(&self) -> Vec<Lasso> {
        enumerate_lassos(&self.alphabet, self.max_spoke, self.max_loop)
            .expect("bounds were validated at construction")
    }

    /// Membership lookup; `None` when the lasso is outside the bounds or uses
    /// foreign symbols.
    pub fn get(&self, lasso: &Lasso) -> Option<bool> {
        self.rank(lasso).map(|i| self.members[i])
    }

    fn word_rank(&self, w: &Word) -> Option<usize> {
        let k = self.alphabet.len();
        w.symbols()
            .iter()
            .try_fold(0usize, |acc, &c| Some(acc * k + self.alphabet.index_of(c)?))
    }

    /// Position of `lasso` in the enumeration order, computed arithmetically.
    fn rank(&self, lasso: &Lasso) -> Option<usize> {
        let (sl, ll) = (lasso.spoke().len(), lasso.cycle().len());
        if sl > self.max_spoke || ll > self.max_loop {
            return None;
        }
        let k = self.alphabet.len();
        let loops_per_spoke: usize = (1..=self.max_loop).map(|n| k.pow(n as u32)).sum();
        let mut offset = 0usize;
        for s in 0..sl {
            offset += k.pow(s as u32) * loops_per_spoke;
        }
        // inside the block of spokes of length sl: full spokes come first
        let spoke_rank = self.word_rank(lasso.spoke())?;
        offset += spoke_rank * loops_per_spoke;
        for l in 1..ll {
            offset += k.pow(l as u32);
        }
        Some(offset + self.word_rank(lasso.cycle())?)
    }

    /// Pointwise negation.
    pub fn complemented(&self) -> LanguageSample {
        LanguageSample {
            alphabet: self.alphabet.clone(),
            max_spoke: self.max_spoke,
            max_loop: self.max_loop,
            members: self.members.iter().map(|b| !b).collect(),
        }
    }

    /// The reverse-language sample. Its domain is exactly the set of lassos
    /// whose reverse lies within this sample's bounds, which is itself a full
    /// enumeration with bounds `(max_loop - 1, max_spoke + 1)`.
    pub fn reversed(&self) -> LanguageSample {
        let (ms, ml) = (self.max_loop - 1, self.max_spoke + 1);
        let lassos = enumerate_lassos(&self.alphabet, ms, ml).expect("max_loop >= 1");
        let members = lassos
            .iter()
            .map(|l| {
                self.get(&l.reversed())
                    .expect("reverse of a reverse-domain lasso lies within bounds")
            })
            .collect();
        LanguageSample {
            alphabet: self.alphabet.clone(),
            max_spoke: ms,
            max_loop: ml,
            members,
        }
    }

    /// First lasso (enumeration order) on which the two samples disagree.
    /// Requires identical alphabets and bounds.
    pub fn first_difference(&self, other: &LanguageSample) -> Result<Option<Lasso>> {
        if self.alphabet != other.alphabet || self.bounds() != other.bounds() {
            return Err(Error::invalid("samples have different alphabets or bounds"));
        }
        match self.members.iter().zip(&other.members).position(|(a, b)| a != b) {
            None => Ok(None),
            Some(i) => Ok(Some(self.lassos()[i].clone())),
        }
    }

    /// Checks membership agreement on the intersection of the two domains;
    /// returns the first disagreeing lasso otherwise.
    pub fn agrees_on_common_domain(&self, other: &LanguageSample) -> Result<Option<Lasso>> {
        if self.alphabet != other.alphabet {
            return Err(Error::invalid("samples have different alphabets"));
        }
        let ms = self.max_spoke.min(other.max_spoke);
        let ml = self.max_loop.min(other.max_loop);
        for l in enumerate_lassos(&self.alphabet, ms, ml)? {
            if self.get(&l) != other.get(&l) {
                return Ok(Some(l));
            }
        }
        Ok(None)
    }

    /// Saturation check: `None` when any two lassos denoting the same
    /// infinite word agree on membership. Otherwise the witness pair
    /// (accepted, rejected) minimizing (accepted index, rejected index)
    /// in enumeration order.
    pub fn saturation_witness(&self) -> Option<(Lasso, Lasso)> {
        use std::collections::HashMap;
        let lassos = self.lassos();
        // canonical form -> (first accepted index, first rejected index)
        let mut classes: HashMap<Lasso, (Option<usize>, Option<usize>)> = HashMap::new();
        for (i, l) in lassos.iter().enumerate() {
            let entry = classes.entry(l.canonical()).or_insert((None, None));
            let slot = if self.members[i] { &mut entry.0 } else { &mut entry.1 };
            if slot.is_none() {
                *slot = Some(i);
            }
        }
        classes
            .values()
            .filter_map(|&(acc, rej)| Some((acc?, rej?)))
            .min()
            .map(|(acc, rej)| (lassos[acc].clone(), lassos[rej].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lasso(spoke: &str, cycle: &str) -> Lasso {
        Lasso::new(Word::from(spoke), Word::from(cycle)).unwrap()
    }

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    #[test]
    fn reverse_word() {
        assert_eq!(Word::from("abc").reversed(), Word::from("cba"));
        assert_eq!(Word::empty().reversed(), Word::empty());
        assert_eq!(Word::from("aa").reversed(), Word::from("aa"));
    }

    #[test]
    fn reverse_lasso() {
        assert_eq!(lasso("ab", "cd").reversed(), lasso("d", "cba"));
        assert_eq!(lasso("", "a").reversed(), lasso("", "a"));
        let l = lasso("b", "ab");
        assert_eq!(l.reversed().reversed(), l);
    }

    #[test]
    fn up_equality() {
        assert!(lasso("", "ba").up_equal(&lasso("b", "ab")));
        assert!(lasso("", "a").up_equal(&lasso("", "aa")));
        assert!(!lasso("", "ab").up_equal(&lasso("", "ba")));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(lasso("b", "ab").canonical(), lasso("", "ba"));
        assert_eq!(lasso("", "abab").canonical(), lasso("", "ab"));
        assert_eq!(lasso("aaa", "a").canonical(), lasso("", "a"));
        // already canonical: spoke cannot shrink further
        assert_eq!(lasso("ab", "ba").canonical(), lasso("ab", "ba"));
        let c = lasso("abba", "bbab").canonical();
        assert_eq!(c.canonical(), c);
    }

    #[test]
    fn enumeration_order_and_count() {
        let one = Alphabet::parse("a").unwrap();
        assert_eq!(enumerate_lassos(&one, 0, 1).unwrap(), vec![lasso("", "a")]);
        assert_eq!(
            enumerate_lassos(&ab(), 0, 1).unwrap(),
            vec![lasso("", "a"), lasso("", "b")]
        );
        // closed form: (sum of 2^i for spoke lengths) * (sum of 2^j for loop lengths)
        assert_eq!(enumerate_lassos(&ab(), 2, 2).unwrap().len(), (1 + 2 + 4) * (2 + 4));
        assert!(enumerate_lassos(&ab(), 1, 0).is_err());
    }

    #[test]
    fn sample_rank_agrees_with_enumeration() {
        let sample = LanguageSample::from_fn(&ab(), 2, 3, |l| l.cycle().first() == Some('b')).unwrap();
        for (i, l) in sample.lassos().iter().enumerate() {
            assert_eq!(sample.rank(l), Some(i));
        }
        assert_eq!(sample.get(&lasso("aaa", "a")), None);
    }

    #[test]
    fn reversed_sample_matches_pointwise_reversal() {
        let sample = LanguageSample::from_fn(&ab(), 2, 2, |l| l.cycle().first() == Some('b')).unwrap();
        let rev = sample.reversed();
        assert_eq!(rev.bounds(), (1, 3));
        for l in rev.lassos() {
            assert_eq!(rev.get(&l), sample.get(&l.reversed()));
        }
        // double reversal restricted to the common domain equals the original
        let twice = rev.reversed();
        assert_eq!(sample.agrees_on_common_domain(&twice).unwrap(), None);
    }

    #[test]
    fn empty_language_reverses_to_empty() {
        let sample = LanguageSample::from_fn(&ab(), 2, 2, |_| false).unwrap();
        assert!(sample.reversed().members.iter().all(|&b| !b));
    }

    #[test]
    fn saturation_of_constant_language() {
        let sample = LanguageSample::from_fn(&ab(), 2, 2, |_| true).unwrap();
        assert_eq!(sample.saturation_witness(), None);
    }

    #[test]
    fn saturation_witness_loop_head_language() {
        // loop starts with 'b': not saturated
        let sample = LanguageSample::from_fn(&ab(), 2, 2, |l| l.cycle().first() == Some('b')).unwrap();
        assert_eq!(sample.saturation_witness(), Some((lasso("", "ba"), lasso("b", "ab"))));
    }

    #[test]
    fn alphabet_rejects_bad_symbols() {
        assert!(Alphabet::parse("").is_err());
        assert!(Alphabet::parse("aa").is_err());
        assert!(Alphabet::parse("a@").is_err());
    }
}
