//! The runnable verification suite: one function per acceptance criterion,
//! shared by the `acceptance` integration tests and the `lassokit selftest`
//! subcommand. Each criterion checks exact (discrete) equalities over the
//! corpus and reports pass/fail with diagnostics.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::automaton::{find_morphism, LassoAutomaton};
use crate::caps::Caps;
use crate::corpus::{self, Corpus};
use crate::error::Result;
use crate::functors;
use crate::lasso::{enumerate_lassos, Lasso, Word};
use crate::oracle;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub elapsed: Duration,
}

impl CriterionOutcome {
    /// One TAP-style line: `ok 3 - theorem-1 shadow (12 ms)`.
    pub fn tap_line(&self) -> String {
        format!(
            "{} {} - {} ({} ms)",
            if self.passed { "ok" } else { "not ok" },
            self.index,
            self.name,
            self.elapsed.as_millis()
        )
    }
}

struct Check {
    failures: Vec<String>,
    infos: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            failures: Vec::new(),
            infos: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn info(&mut self, msg: impl Into<String>) {
        self.infos.push(msg.into());
    }

    fn merge(&mut self, mut others: Vec<Check>) {
        for c in &mut others {
            self.failures.append(&mut c.failures);
            self.infos.append(&mut c.infos);
        }
    }

    fn finish(
        self,
        index: usize,
        name: &'static str,
        started: Instant,
        budget: Option<Duration>,
    ) -> CriterionOutcome {
        let elapsed = started.elapsed();
        let mut failures = self.failures;
        if let Some(limit) = budget {
            if elapsed > limit {
                failures.push(format!("runtime {elapsed:?} exceeded budget {limit:?}"));
            }
        }
        let mut details = self.infos;
        details.extend(failures.iter().cloned());
        CriterionOutcome {
            index,
            name,
            passed: failures.is_empty(),
            details,
            elapsed,
        }
    }
}

fn lasso(spoke: &str, cycle: &str) -> Lasso {
    Lasso::new(Word::from(spoke), Word::from(cycle)).expect("static lasso")
}

/// Criterion 1: ground-truth behavior of the two hand-built automata.
pub fn criterion_1(caps: &Caps) -> Result<CriterionOutcome> {
    let started = Instant::now();
    let mut c = Check::new();
    let a1 = corpus::a1();
    let a2 = corpus::a2();
    for l in enumerate_lassos(a1.alphabet(), 3, 3)? {
        let expect1 = l.cycle().first() == Some('b');
        c.expect(a1.accept(&l)? == expect1, || {
            format!("A1 disagrees with loop-starts-with-b at {l}")
        });
        let expect2 = l.spoke().symbols().contains(&'b')
            && l.cycle().symbols().iter().all(|&s| s == 'a');
        c.expect(a2.accept(&l)? == expect2, || {
            format!("A2 disagrees with the saturated (u b, a^n) language at {l}")
        });
    }
    for bounds in [(2, 2), (3, 3)] {
        let witness = a1.language_sample(bounds.0, bounds.1)?.saturation_witness();
        c.expect(
            witness == Some((lasso("", "ba"), lasso("b", "ab"))),
            || format!("A1 saturation witness at {bounds:?} was {witness:?}"),
        );
    }
    c.expect(
        a2.language_sample(3, 3)?.saturation_witness().is_none(),
        || "A2 sample at (3,3) should be saturated".into(),
    );
    let oc1 = a1.omega_conditions(caps)?;
    c.expect(oc1.circular && !oc1.coherent, || {
        format!("omega_conditions(A1) = ({}, {})", oc1.circular, oc1.coherent)
    });
    let oc2 = a2.omega_conditions(caps)?;
    c.expect(oc2.circular && oc2.coherent, || {
        format!("omega_conditions(A2) = ({}, {})", oc2.circular, oc2.coherent)
    });
    Ok(c.finish(1, "Fig. 1 ground truth", started, Some(Duration::from_secs(1))))
}

/// Criterion 2: both transformations reverse the language, exactly, on the
/// whole corpus at bounds (2,2).
pub fn criterion_2(corpus: &Corpus, caps: &Caps) -> Result<CriterionOutcome> {
    let started = Instant::now();
    let mut c = Check::new();
    let automaton_checks = crate::par::try_map_slice(&corpus.automata, |(name, a)| {
        let mut c = Check::new();
        let reversed = a.language_sample(2, 2)?.reversed();
        let rev_sample = a.rev(caps)?.language_sample(1, 3)?;
        c.expect(rev_sample == reversed, || {
            format!("sample(rev({name})) != reverse(sample({name}))")
        });
        let alg_sample = functors::alg(a, caps)?.recognition_sample(1, 3)?;
        c.expect(alg_sample == reversed, || {
            format!("recognition-sample(alg({name})) != reverse(sample({name}))")
        });
        Ok::<Check, crate::Error>(c)
    })?;
    c.merge(automaton_checks);
    let semigroup_checks = crate::par::try_map_slice(&corpus.semigroups, |(name, e)| {
        let mut c = Check::new();
        let reversed = e.recognition_sample(2, 2)?.reversed();
        let aut_sample = functors::aut(e).language_sample(1, 3)?;
        c.expect(aut_sample == reversed, || {
            format!("sample(aut({name})) != reverse(recognition-sample({name}))")
        });
        Ok::<Check, crate::Error>(c)
    })?;
    c.merge(semigroup_checks);
    c.info(format!(
        "{} automata and {} semigroups checked",
        corpus.automata.len(),
        corpus.semigroups.len()
    ));
    Ok(c.finish(2, "reversal laws", started, Some(Duration::from_secs(30))))
}

/// Criterion 3: round trips through a reversal are language-preserving.
pub fn criterion_3(corpus: &Corpus, caps: &Caps) -> Result<CriterionOutcome> {
    let started = Instant::now();
    let mut c = Check::new();
    let automaton_checks = crate::par::try_map_slice(&corpus.automata, |(name, a)| {
        let mut c = Check::new();
        let direct = a.language_sample(2, 2)?;
        let via_algebra = functors::alg(&a.rev(caps)?, caps)?.recognition_sample(2, 2)?;
        c.expect(via_algebra == direct, || {
            format!("alg(rev({name})) does not recognize sample({name})")
        });
        Ok::<Check, crate::Error>(c)
    })?;
    c.merge(automaton_checks);
    let semigroup_checks = crate::par::try_map_slice(&corpus.semigroups, |(name, e)| {
        let mut c = Check::new();
        let direct = e.recognition_sample(2, 2)?;
        let via_automaton = functors::aut(e).rev(caps)?.reach().language_sample(2, 2)?;
        c.expect(via_automaton == direct, || {
            format!("reach(rev(aut({name}))) does not accept recognition-sample({name})")
        });
        Ok::<Check, crate::Error>(c)
    })?;
    c.merge(semigroup_checks);
    Ok(c.finish(3, "theorem-1 shadow", started, None))
}

/// Criterion 4: the direct and the algebraic circularity/coherence decisions
/// agree flag by flag.
pub fn criterion_4(corpus: &Corpus, caps: &Caps) -> Result<CriterionOutcome> {
    let started = Instant::now();
    let mut c = Check::new();
    let mut skipped = 0usize;
    let results = crate::par::try_map_slice(&corpus.automata, |(name, a)| {
        let direct = a.omega_conditions(caps)?;
        match functors::omega_check_algebraic(a, caps) {
            Ok(algebraic) => Ok::<_, crate::Error>((name.clone(), Some((direct, algebraic)))),
            Err(e) if e.is_cap_exceeded() => Ok((name.clone(), None)),
            Err(e) => Err(e),
        }
    })?;
    for (name, entry) in results {
        match entry {
            None => skipped += 1,
            Some((direct, algebraic)) => {
                c.expect(
                    direct.circular == algebraic.circular && direct.coherent == algebraic.coherent,
                    || {
                        format!(
                            "{name}: direct ({}, {}) vs algebraic ({}, {})",
                            direct.circular, direct.coherent, algebraic.circular, algebraic.coherent
                        )
                    },
                );
                if name == "A1" {
                    c.expect(!algebraic.is_omega, || "A1 must not be an Ω-automaton".into());
                }
                if name == "A2" {
                    c.expect(algebraic.is_omega, || "A2 must be an Ω-automaton".into());
                }
            }
        }
    }
    if skipped > 0 {
        c.info(format!("{skipped} automata skipped (size caps)"));
    }
    Ok(c.finish(4, "Ω-decision agreement", started, Some(Duration::from_secs(60))))
}

/// Criterion 5: the Wilke-axiom check runs in O(n²) by operation count.
pub fn criterion_5() -> Result<CriterionOutcome> {
    let started = Instant::now();
    let mut c = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(corpus::CORPUS_SEED ^ 0x5a5a);
    for n in [20usize, 40, 80] {
        for round in 0..5 {
            let s = corpus::random_lasso_semigroup(n, &mut rng);
            let report = s.wilke_axioms();
            let counts = &report.counts;
            c.expect(counts.coherence_checks == (n * n) as u64, || {
                format!(
                    "n={n} round={round}: coherence used {} checks, expected exactly {}",
                    counts.coherence_checks,
                    n * n
                )
            });
            c.expect(counts.circularity_ops_max_per_element <= 2 * n as u64, || {
                format!(
                    "n={n} round={round}: circularity used {} ops on one element (> 2n)",
                    counts.circularity_ops_max_per_element
                )
            });
            c.expect(counts.total() <= 3 * (n * n) as u64, || {
                format!("n={n} round={round}: total {} ops exceeds 3n²", counts.total())
            });
        }
    }
    Ok(c.finish(5, "Wilke-axiom complexity", started, None))
}

/// Criterion 6: the adjunction probe is consistent on 500 corpus pairs.
pub fn criterion_6(corpus: &Corpus, caps: &Caps) -> Result<CriterionOutcome> {
    let started = Instant::now();
    let mut c = Check::new();
    let total = corpus.semigroups.len() * corpus.automata.len();
    let count = 500.min(total);
    let pair_indices: Vec<(usize, usize)> = (0..count)
        .map(|t| {
            let flat = t * total / count;
            (flat / corpus.automata.len(), flat % corpus.automata.len())
        })
        .collect();
    let reached: Vec<(String, LassoAutomaton)> = corpus
        .automata
        .iter()
        .map(|(name, a)| (name.clone(), a.reach()))
        .collect();
    let probe_checks = crate::par::try_map_slice(&pair_indices, |&(ei, ai)| {
        let mut c = Check::new();
        let (ename, e) = &corpus.semigroups[ei];
        let (aname, a) = &reached[ai];
        let report = functors::adjunction_probe(e, a, caps)?;
        c.expect(report.consistent, || {
            format!(
                "probe({ename}, reach({aname})): hom_alg={} hom_aut={}",
                report.hom_alg_side.is_some(),
                report.hom_aut_side.is_some()
            )
        });
        Ok::<Check, crate::Error>(c)
    })?;
    c.merge(probe_checks);
    c.info(format!("{count} pairs probed"));
    Ok(c.finish(6, "adjunction shadow", started, None))
}

/// Criterion 7: minimization yields the final object among the reachable
/// acceptors of the same language.
pub fn criterion_7(corpus: &Corpus, caps: &Caps) -> Result<CriterionOutcome> {
    let started = Instant::now();
    let mut c = Check::new();
    let data = crate::par::try_map_slice(&corpus.automata, |(name, a)| {
        let minimized = functors::minimize(a, caps)?;
        let sample = a.language_sample(3, 3)?;
        Ok::<_, crate::Error>((name.clone(), a.clone(), minimized, sample))
    })?;
    for (name, a, minimized, sample) in &data {
        c.expect(minimized.is_reachable(), || format!("minimize({name}) not reachable"));
        c.expect(minimized.is_observable(), || format!("minimize({name}) not observable"));
        let min_sample = minimized.language_sample(3, 3)?;
        c.expect(&min_sample == sample, || {
            format!("minimize({name}) changed the (3,3) language")
        });
        let again = functors::minimize(minimized, caps)?;
        c.expect(functors::isomorphic(&again, minimized)?, || {
            format!("minimize(minimize({name})) not isomorphic to minimize({name})")
        });
        let _ = a;
    }
    // every reachable corpus automaton with the same bounded language maps
    // onto the minimized automaton; bounded equality must also agree with
    // exact equality (isomorphic minimal automata) on the corpus
    for (name_i, _, min_i, sample_i) in &data {
        for (name_j, a_j, min_j, sample_j) in &data {
            let bounded_equal = sample_i == sample_j;
            let exact_equal = functors::isomorphic(min_i, min_j)?;
            c.expect(bounded_equal == exact_equal, || {
                format!(
                    "bounds (3,3) fail to separate {name_i} and {name_j}: bounded {bounded_equal}, exact {exact_equal}"
                )
            });
            if bounded_equal {
                c.expect(find_morphism(&a_j.reach(), min_i)?.is_some(), || {
                    format!("no morphism reach({name_j}) -> minimize({name_i})")
                });
            }
        }
    }
    Ok(c.finish(7, "minimization", started, None))
}

/// Criterion 8: the eight preservation implications between circularity/
/// coherence, their reverse variants, and the Wilke axioms.
pub fn criterion_8(corpus: &Corpus, caps: &Caps) -> Result<CriterionOutcome> {
    let started = Instant::now();
    let mut c = Check::new();
    let automaton_checks = crate::par::try_map_slice(&corpus.automata, |(name, a)| {
        let mut c = Check::new();
        let direct = a.omega_conditions(caps)?;
        let direct_rev = a.omega_rev_conditions(caps)?;
        let reversed = a.rev(caps)?;
        let after_rev = reversed.omega_conditions(caps)?;
        let after_rev_rev = reversed.omega_rev_conditions(caps)?;
        let wilke = functors::alg(a, caps)?.base().wilke_axioms();
        let implications: [(&str, bool, bool); 6] = [
            ("circular ⇒ rev-circular(rev)", direct.circular, after_rev_rev.rev_circular),
            ("rev-circular ⇒ circular(rev)", direct_rev.rev_circular, after_rev.circular),
            ("coherent ⇒ rev-coherent(rev)", direct.coherent, after_rev_rev.rev_coherent),
            ("rev-coherent ⇒ coherent(rev)", direct_rev.rev_coherent, after_rev.coherent),
            ("rev-circular ⇒ Wilke circularity(alg)", direct_rev.rev_circular, wilke.circular),
            ("rev-coherent ⇒ Wilke coherence(alg)", direct_rev.rev_coherent, wilke.coherent),
        ];
        for (label, premise, conclusion) in implications {
            c.expect(!premise || conclusion, || format!("{name}: {label} violated"));
        }
        Ok::<Check, crate::Error>(c)
    })?;
    c.merge(automaton_checks);
    let semigroup_checks = crate::par::try_map_slice(&corpus.semigroups, |(name, e)| {
        let mut c = Check::new();
        let wilke = e.base().wilke_axioms();
        let conditions = functors::aut(e).omega_rev_conditions(caps)?;
        c.expect(!wilke.circular || conditions.rev_circular, || {
            format!("{name}: Wilke circularity ⇒ rev-circular(aut) violated")
        });
        c.expect(!wilke.coherent || conditions.rev_coherent, || {
            format!("{name}: Wilke coherence ⇒ rev-coherent(aut) violated")
        });
        Ok::<Check, crate::Error>(c)
    })?;
    c.merge(semigroup_checks);
    Ok(c.finish(8, "preservation quartet", started, None))
}

/// Criterion 9: the adjunction restricts: Wilke algebras map to automata with
/// the reverse conditions, and back.
pub fn criterion_9(corpus: &Corpus, caps: &Caps) -> Result<CriterionOutcome> {
    let started = Instant::now();
    let mut c = Check::new();
    for (name, e) in &corpus.semigroups {
        if e.base().wilke_axioms().is_wilke() {
            let conditions = functors::aut(e).omega_rev_conditions(caps)?;
            c.expect(conditions.is_omega_rev(), || {
                format!("{name} is a Wilke algebra but aut({name}) fails the reverse conditions")
            });
        }
    }
    for (name, a) in &corpus.automata {
        if !a.is_reachable() {
            continue;
        }
        if a.omega_rev_conditions(caps)?.is_omega_rev() {
            let wilke = functors::alg(a, caps)?.base().wilke_axioms();
            c.expect(wilke.is_wilke(), || {
                format!("{name} satisfies the reverse conditions but alg({name}) is not Wilke")
            });
        }
    }
    Ok(c.finish(9, "restricted adjunction shadow", started, None))
}

/// Criterion 10: canonicalization agrees with word unrolling on every lasso
/// pair at bounds (3,3).
pub fn criterion_10() -> Result<CriterionOutcome> {
    let started = Instant::now();
    let mut c = Check::new();
    let alphabet = corpus::a1().alphabet().clone();
    let lassos = enumerate_lassos(&alphabet, 3, 3)?;
    let disagreements = crate::par::map_slice(&lassos, |l1| {
        lassos
            .iter()
            .filter(|l2| l1.up_equal(l2) != oracle::unroll_equal(l1, l2))
            .cloned()
            .collect::<Vec<_>>()
    });
    for (l1, bad) in lassos.iter().zip(&disagreements) {
        for l2 in bad {
            c.expect(false, || {
                format!("canonical and unrolling oracles disagree on {l1} vs {l2}")
            });
        }
    }
    c.info(format!("{} lasso pairs compared", lassos.len() * lassos.len()));
    Ok(c.finish(10, "oracle self-consistency", started, None))
}

/// Runs all ten criteria in order.
pub fn run_all(caps: &Caps) -> Result<Vec<CriterionOutcome>> {
    let corpus = Corpus::build(caps)?;
    Ok(vec![
        criterion_1(caps)?,
        criterion_2(&corpus, caps)?,
        criterion_3(&corpus, caps)?,
        criterion_4(&corpus, caps)?,
        criterion_5()?,
        criterion_6(&corpus, caps)?,
        criterion_7(&corpus, caps)?,
        criterion_8(&corpus, caps)?,
        criterion_9(&corpus, caps)?,
        criterion_10()?,
    ])
}
