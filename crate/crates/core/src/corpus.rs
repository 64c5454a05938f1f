//! The fixed verification corpus: two hand-built automata over `{a, b}`,
//! their reversal/reachability/minimization images, fifty seeded random
//! automata, and the transition algebras of all of them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::LassoAutomaton;
use crate::caps::Caps;
use crate::error::Result;
use crate::functors;
use crate::lasso::Alphabet;
use crate::semigroup::{ExtendedLassoSemigroup, LassoSemigroup};

/// Seed for the random part of the corpus; fixed so every run sees the same
/// fifty automata.
pub const CORPUS_SEED: u64 = 0x6c61_7373_6f6b_6974; // "lassokit"

fn ab() -> Alphabet {
    Alphabet::parse("ab").expect("static alphabet")
}

/// Accepts the lassos whose loop starts with `b`. Circular but not coherent;
/// its language is not saturated.
pub fn a1() -> LassoAutomaton {
    LassoAutomaton::new(
        ab(),
        vec!["x".into()],
        vec!["y1".into(), "y2".into()],
        0,
        vec![vec![0, 0]],
        vec![vec![0, 1]],
        vec![vec![0, 0], vec![1, 1]],
        vec![false, true],
    )
    .expect("static automaton")
}

/// Accepts the lassos with a `b` somewhere in the spoke and an all-`a` loop —
/// the saturated lasso language of the ω-regular language `(a+b)*ba^ω`.
/// Circular and coherent. The spoke states track whether a `b` has occurred.
pub fn a2() -> LassoAutomaton {
    LassoAutomaton::new(
        ab(),
        vec!["x1".into(), "x2".into()],
        vec!["y1".into(), "y2".into()],
        0,
        vec![vec![0, 1], vec![1, 1]],
        vec![vec![0, 0], vec![1, 0]],
        vec![vec![0, 0], vec![1, 0]],
        vec![false, true],
    )
    .expect("static automaton")
}

/// One-spoke-state, one-loop-state automaton with no final states; both
/// letters are indistinguishable.
pub fn collapsing_pair_source() -> LassoAutomaton {
    LassoAutomaton::new(
        ab(),
        vec!["x".into()],
        vec!["y".into()],
        0,
        vec![vec![0, 0]],
        vec![vec![0, 0]],
        vec![vec![0, 0]],
        vec![false],
    )
    .expect("static automaton")
}

/// Two spoke states with `ρ(x1,·) = ρ(x2,a) = x1`, `ρ(x2,b) = x2`, one
/// non-final loop state; the second spoke state is unreachable. Mapping the
/// one-state automaton into this one is a morphism, but their transition
/// algebras are not related: the letters collapse in the source and stay
/// distinct here.
pub fn collapsing_pair_target() -> LassoAutomaton {
    LassoAutomaton::new(
        ab(),
        vec!["x1'".into(), "x2'".into()],
        vec!["y'".into()],
        0,
        vec![vec![0, 0], vec![0, 1]],
        vec![vec![0, 0], vec![0, 0]],
        vec![vec![0, 0]],
        vec![false],
    )
    .expect("static automaton")
}

/// Uniformly random total automaton with up to four states per sort over
/// `{a, b}`.
pub fn random_automaton(rng: &mut impl Rng, index: usize) -> LassoAutomaton {
    let nx = rng.gen_range(1..=4);
    let ny = rng.gen_range(1..=4);
    let table = |rng: &mut dyn rand::RngCore, rows: usize, range: usize| -> Vec<Vec<usize>> {
        (0..rows)
            .map(|_| (0..2).map(|_| rng.gen_range(0..range)).collect())
            .collect()
    };
    LassoAutomaton::new(
        ab(),
        (0..nx).map(|i| format!("r{index}x{i}")).collect(),
        (0..ny).map(|i| format!("r{index}y{i}")).collect(),
        0,
        table(rng, nx, nx),
        table(rng, nx, ny),
        table(rng, ny, ny),
        (0..ny).map(|_| rng.gen_bool(0.5)).collect(),
    )
    .expect("random tables are total")
}

/// Random valid lasso semigroup of exactly `n` word-sort elements: a cyclic
/// word sort acting on `Z_m` (with `m | n`) plus an arbitrary ω-power table.
/// Valid by construction, and generically not a Wilke algebra.
pub fn random_lasso_semigroup(n: usize, rng: &mut impl Rng) -> LassoSemigroup {
    let divisors: Vec<usize> = (2..=n).filter(|d| n % d == 0).collect();
    let m = divisors[rng.gen_range(0..divisors.len())];
    let shift = rng.gen_range(0..m);
    let dot = (0..n)
        .map(|i| (0..n).map(|j| (i + j + 1) % n).collect())
        .collect();
    let times = (0..n)
        .map(|i| (0..m).map(|a| (a + (i + 1) * shift) % m).collect())
        .collect();
    let omega_pow = (0..n).map(|_| rng.gen_range(0..m)).collect();
    LassoSemigroup::new(
        (0..n).map(|i| format!("s{i}")).collect(),
        (0..m).map(|i| format!("w{i}")).collect(),
        dot,
        times,
        omega_pow,
    )
    .expect("construction satisfies both associativity laws")
}

/// The full corpus: named automata and the transition algebras of each.
pub struct Corpus {
    pub automata: Vec<(String, LassoAutomaton)>,
    pub semigroups: Vec<(String, ExtendedLassoSemigroup)>,
}

impl Corpus {
    pub fn build(caps: &Caps) -> Result<Corpus> {
        let mut automata: Vec<(String, LassoAutomaton)> = vec![
            ("A1".to_string(), a1()),
            ("A2".to_string(), a2()),
        ];
        for (name, a) in [("A1", a1()), ("A2", a2())] {
            automata.push((format!("rev({name})"), a.rev(caps)?));
            automata.push((format!("reach({name})"), a.reach()));
            automata.push((format!("minimize({name})"), functors::minimize(&a, caps)?));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
        for i in 0..50 {
            automata.push((format!("rand{i:02}"), random_automaton(&mut rng, i)));
        }
        let semigroups = crate::par::try_map_slice(&automata, |(name, a)| {
            Ok((format!("alg({name})"), functors::alg(a, caps)?))
        })?;
        Ok(Corpus {
            automata,
            semigroups,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lasso::{Lasso, Word};

    fn lasso(spoke: &str, cycle: &str) -> Lasso {
        Lasso::new(Word::from(spoke), Word::from(cycle)).unwrap()
    }

    #[test]
    fn fig_automata_basic_membership() {
        let a1 = a1();
        assert!(a1.accept(&lasso("", "ba")).unwrap());
        assert!(!a1.accept(&lasso("b", "ab")).unwrap());
        let a2 = a2();
        assert!(a2.accept(&lasso("b", "a")).unwrap());
        assert!(!a2.accept(&lasso("a", "b")).unwrap());
    }

    #[test]
    fn corpus_is_deterministic_and_sized() {
        let c1 = Corpus::build(&Caps::default()).unwrap();
        let c2 = Corpus::build(&Caps::default()).unwrap();
        assert_eq!(c1.automata.len(), 58);
        assert_eq!(c1.semigroups.len(), 58);
        for ((n1, a1), (n2, a2)) in c1.automata.iter().zip(&c2.automata) {
            assert_eq!(n1, n2);
            assert_eq!(a1, a2);
        }
    }

    #[test]
    fn random_semigroups_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [4, 9, 20] {
            let s = random_lasso_semigroup(n, &mut rng);
            assert_eq!(s.plus_count(), n);
            assert!(s.validate().is_ok());
        }
    }
}
