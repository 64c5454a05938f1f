//! The language-reversing transformations between extended lasso semigroups
//! and lasso automata, and the pipelines built from them: Brzozowski-style
//! minimization, the syntactic recognizer, the algebraic circularity/
//! coherence check, and the adjunction probe.
//!
//! Both directions reverse the accepted language: `aut(e)` accepts the
//! reverse of what `e` recognizes, and `alg(a)` recognizes the reverse of
//! what `a` accepts. Composing either with transition reversal yields
//! language-preserving round trips.

use std::collections::HashMap;

use serde::Serialize;

use crate::automaton::{find_morphism, AutomatonMorphism, LassoAutomaton};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::semigroup::{
    find_ext_morphism, ExtMorphism, ExtendedLassoSemigroup, LassoSemigroup, WilkeReport,
};

/// Reserved name of the token spoke state created by [`aut`].
pub const TOKEN_STATE: &str = "@init";

/// Builds a lasso automaton on the carrier of an extended lasso semigroup:
/// spoke states are the word sort plus a fresh token state, loop states the
/// ω-sort, and transitions multiply the letter image on the left:
///
/// - `ρ(✓, a) = f(a)` and `ρ(t, a) = f(a)·t`
/// - `σ(✓, a) = f(a)^ω` and `σ(t, a) = (f(a)·t)^ω`
/// - `ξ(α, a) = f(a) × α`
///
/// Final states are the recognizing set. The output is always reachable and
/// accepts the reverse of the recognized language.
pub fn aut(e: &ExtendedLassoSemigroup) -> LassoAutomaton {
    let base = e.base();
    let k = e.alphabet().len();
    let n = base.plus_count();
    let mut x_names = Vec::with_capacity(n + 1);
    x_names.push(TOKEN_STATE.to_string());
    x_names.extend(base.plus_names().iter().cloned());
    let mut rho = Vec::with_capacity(n + 1);
    let mut sigma = Vec::with_capacity(n + 1);
    rho.push((0..k).map(|s| 1 + e.gen(s)).collect::<Vec<_>>());
    sigma.push((0..k).map(|s| base.omega_pow(e.gen(s))).collect::<Vec<_>>());
    for t in 0..n {
        rho.push((0..k).map(|s| 1 + base.dot(e.gen(s), t)).collect());
        sigma.push((0..k).map(|s| base.omega_pow(base.dot(e.gen(s), t))).collect());
    }
    let xi = (0..base.omega_count())
        .map(|a| (0..k).map(|s| base.times(e.gen(s), a)).collect())
        .collect();
    LassoAutomaton::new(
        e.alphabet().clone(),
        x_names,
        base.omega_names().to_vec(),
        0,
        rho,
        sigma,
        xi,
        e.recognizing().to_vec(),
    )
    .expect("carrier automaton is total by construction")
}

/// The transition lasso semigroup of an automaton, extended with its letter
/// map and the final states as recognizing set.
///
/// The word sort is the closure of the per-letter action triples under the
/// triple product `(α₁α₂, β₁α₂, γ₁γ₂)`; elements are named by their shortest
/// witness word in free orientation (the product of elements named `w₁`, `w₂`
/// is the element named by a word equivalent to `w₁·w₂`). The ω-sort is the
/// set of loop states of the form `β(q)` closed under the γ actions, keeping
/// the automaton's state names. Recognizes the reverse of the accepted
/// language.
pub fn alg(a: &LassoAutomaton, caps: &Caps) -> Result<ExtendedLassoSemigroup> {
    let triples = a.triple_closure(caps, false)?;
    let mut index: HashMap<(Vec<usize>, Vec<usize>, Vec<usize>), usize> = HashMap::new();
    for (i, t) in triples.iter().enumerate() {
        index.insert(t.action_key(), i);
    }
    let q = a.initial();
    // omega sort: seeds β(q), closed under the γ maps
    let mut omega_states: Vec<usize> = Vec::new();
    let mut omega_index: HashMap<usize, usize> = HashMap::new();
    for t in &triples {
        let y = t.beta[q];
        if !omega_index.contains_key(&y) {
            omega_index.insert(y, omega_states.len());
            omega_states.push(y);
        }
    }
    let mut next = 0;
    while next < omega_states.len() {
        let y = omega_states[next];
        for t in &triples {
            let ny = t.gamma[y];
            if !omega_index.contains_key(&ny) {
                omega_index.insert(ny, omega_states.len());
                omega_states.push(ny);
            }
        }
        next += 1;
    }
    let dot: Vec<Vec<usize>> = triples
        .iter()
        .map(|t1| {
            triples
                .iter()
                .map(|t2| index[&t1.product(t2).action_key()])
                .collect()
        })
        .collect();
    let times: Vec<Vec<usize>> = triples
        .iter()
        .map(|t| omega_states.iter().map(|&y| omega_index[&t.gamma[y]]).collect())
        .collect();
    let omega_pow: Vec<usize> = triples.iter().map(|t| omega_index[&t.beta[q]]).collect();
    let base = LassoSemigroup::new_unchecked(
        triples.iter().map(|t| t.witness.to_string()).collect(),
        omega_states.iter().map(|&y| a.y_name(y).to_string()).collect(),
        dot,
        times,
        omega_pow,
    );
    let gen: Vec<usize> = (0..a.alphabet().len())
        .map(|s| index[&a.letter_triple(s).action_key()])
        .collect();
    let recognizing: Vec<bool> = omega_states.iter().map(|&y| a.is_final(y)).collect();
    Ok(ExtendedLassoSemigroup::new_unchecked(
        a.alphabet().clone(),
        base,
        gen,
        recognizing,
    ))
}

/// Brzozowski-style minimization: reverse, take the reachable part, reverse
/// again, take the reachable part. The result is reachable, observable, and
/// accepts the same language. Subset states are built on the fly, so the
/// size guard only bites when a reachable part is genuinely too large.
pub fn minimize(a: &LassoAutomaton, caps: &Caps) -> Result<LassoAutomaton> {
    a.reached_rev(caps)?.reached_rev(caps)
}

/// The syntactic recognizer of the accepted language: the transition algebra
/// of the reachable part of the reversed automaton. Recognizes exactly the
/// language of `a` (two reversals cancel), and is the maximal quotient of the
/// free lasso semigroup doing so.
pub fn syntactic(a: &LassoAutomaton, caps: &Caps) -> Result<ExtendedLassoSemigroup> {
    alg(&a.reached_rev(caps)?, caps)
}

/// Algebraic route to the circularity/coherence decision: builds the
/// syntactic recognizer and checks the Wilke axioms on its base. Agrees with
/// [`LassoAutomaton::omega_conditions`] flag by flag.
pub fn omega_check_algebraic(a: &LassoAutomaton, caps: &Caps) -> Result<AlgebraicOmegaReport> {
    let wilke = syntactic(a, caps)?.base().wilke_axioms();
    Ok(AlgebraicOmegaReport {
        is_omega: wilke.circular && wilke.coherent,
        circular: wilke.circular,
        coherent: wilke.coherent,
        wilke,
    })
}

/// Flags from [`omega_check_algebraic`], with the underlying axiom report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AlgebraicOmegaReport {
    pub is_omega: bool,
    pub circular: bool,
    pub coherent: bool,
    pub wilke: WilkeReport,
}

/// Hom-set existence on both sides of the dual adjunction for a concrete
/// pair: a morphism `e → alg(a)` must exist exactly when a morphism
/// `aut(e) → a` does.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjunctionReport {
    /// Morphism `e → alg(a)`, when one exists.
    pub hom_alg_side: Option<ExtMorphism>,
    /// Morphism `aut(e) → a`, when one exists.
    pub hom_aut_side: Option<AutomatonMorphism>,
    /// Both present or both absent; `false` would falsify the adjunction.
    pub consistent: bool,
}

/// Computes both hom-sets for `(e, a)`. Requires `a` reachable.
pub fn adjunction_probe(
    e: &ExtendedLassoSemigroup,
    a: &LassoAutomaton,
    caps: &Caps,
) -> Result<AdjunctionReport> {
    if !a.is_reachable() {
        return Err(Error::invalid("adjunction probe requires a reachable automaton"));
    }
    let hom_alg_side = find_ext_morphism(e, &alg(a, caps)?, caps)?;
    let hom_aut_side = find_morphism(&aut(e), a)?;
    let consistent = hom_alg_side.is_some() == hom_aut_side.is_some();
    Ok(AdjunctionReport {
        hom_alg_side,
        hom_aut_side,
        consistent,
    })
}

/// Hom-set shadow of the inclusion/reachability adjunction: for reachable
/// `a` and arbitrary `b`, a morphism `a → reach(b)` exists iff a morphism
/// `a → b` does.
pub fn incl_reach_consistent(a: &LassoAutomaton, b: &LassoAutomaton) -> Result<bool> {
    let into_reach = find_morphism(a, &b.reach())?.is_some();
    let into_full = find_morphism(a, b)?.is_some();
    Ok(into_reach == into_full)
}

/// Isomorphism of reachable automata: morphisms both ways whose maps are
/// bijections.
pub fn isomorphic(a1: &LassoAutomaton, a2: &LassoAutomaton) -> Result<bool> {
    let Some(h) = find_morphism(a1, a2)? else {
        return Ok(false);
    };
    let Some(g) = find_morphism(a2, a1)? else {
        return Ok(false);
    };
    Ok(h.is_bijective(a1, a2) && g.is_bijective(a2, a1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::lasso::{enumerate_lassos, Lasso, Word};

    fn caps() -> Caps {
        Caps::default()
    }

    fn lasso(spoke: &str, cycle: &str) -> Lasso {
        Lasso::new(Word::from(spoke), Word::from(cycle)).unwrap()
    }

    #[test]
    fn alg_of_a1_matches_hand_computation() {
        let e = alg(&corpus::a1(), &caps()).unwrap();
        assert_eq!(e.base().plus_count(), 2);
        assert_eq!(e.base().omega_names(), &["y1".to_string(), "y2".to_string()]);
        let recognized: Vec<&str> = (0..e.base().omega_count())
            .filter(|&o| e.recognizes_element(o))
            .map(|o| e.base().omega_name(o))
            .collect();
        assert_eq!(recognized, vec!["y2"]);
    }

    #[test]
    fn alg_recognizes_the_reverse_language() {
        let a1 = corpus::a1();
        let e = alg(&a1, &caps()).unwrap();
        for l in enumerate_lassos(a1.alphabet(), 2, 2).unwrap() {
            assert_eq!(
                e.recognizes(&l).unwrap(),
                a1.accept(&l.reversed()).unwrap(),
                "at {l}"
            );
        }
    }

    #[test]
    fn alg_of_trivial_automaton_is_one_by_one() {
        let e = alg(&corpus::collapsing_pair_source(), &caps()).unwrap();
        assert_eq!(e.base().plus_count(), 1);
        assert_eq!(e.base().omega_count(), 1);
    }

    #[test]
    fn aut_carrier_sizes() {
        for (_, e) in &corpus::Corpus::build(&caps()).unwrap().semigroups {
            let a = aut(e);
            assert_eq!(a.x_count(), e.base().plus_count() + 1);
            assert_eq!(a.y_count(), e.base().omega_count());
            assert!(a.is_reachable());
            assert_eq!(a.x_name(a.initial()), TOKEN_STATE);
        }
    }

    #[test]
    fn aut_of_empty_recognizer_accepts_nothing() {
        let e = alg(&corpus::collapsing_pair_source(), &caps()).unwrap();
        assert!(e.recognizing().iter().all(|&b| !b));
        let a = aut(&e);
        for l in enumerate_lassos(a.alphabet(), 2, 2).unwrap() {
            assert!(!a.accept(&l).unwrap());
        }
    }

    #[test]
    fn aut_runs_compute_reversed_images() {
        // the Y-state reached by aut(e) on (u, a·v) is the image of the
        // reversed lasso under e's evaluation map
        let e = alg(&corpus::a2(), &caps()).unwrap();
        let a = aut(&e);
        for l in enumerate_lassos(a.alphabet(), 2, 2).unwrap() {
            let reached = a.run(&l).unwrap();
            let expected = e.eval_omega(&l.reversed()).unwrap();
            assert_eq!(reached, expected, "at {l}");
        }
    }

    #[test]
    fn minimize_fig_1() {
        let a1 = corpus::a1();
        let m1 = minimize(&a1, &caps()).unwrap();
        assert!(isomorphic(&m1, &a1).unwrap());
        let m2 = minimize(&corpus::a2(), &caps()).unwrap();
        assert_eq!((m2.x_count(), m2.y_count()), (2, 2));
        assert_eq!(
            m2.language_sample(3, 3).unwrap(),
            corpus::a2().language_sample(3, 3).unwrap()
        );
        let again = minimize(&m2, &caps()).unwrap();
        assert!(isomorphic(&again, &m2).unwrap());
    }

    #[test]
    fn syntactic_recognizes_the_same_language() {
        let a1 = corpus::a1();
        let s = syntactic(&a1, &caps()).unwrap();
        assert_eq!(
            s.recognition_sample(2, 2).unwrap(),
            a1.language_sample(2, 2).unwrap()
        );
        assert!(syntactic(&corpus::a2(), &caps()).unwrap().base().wilke_axioms().is_wilke());
        let empty = syntactic(&corpus::collapsing_pair_source(), &caps()).unwrap();
        assert!(empty.recognition_sample(2, 2).unwrap().lassos().iter().all(|l| !empty.recognizes(l).unwrap()));
    }

    #[test]
    fn algebraic_omega_check_on_fig_automata() {
        let r1 = omega_check_algebraic(&corpus::a1(), &caps()).unwrap();
        assert!(!r1.is_omega);
        assert!(r1.circular);
        assert!(!r1.coherent);
        let r2 = omega_check_algebraic(&corpus::a2(), &caps()).unwrap();
        assert!(r2.is_omega);
        let empty = omega_check_algebraic(&corpus::collapsing_pair_source(), &caps()).unwrap();
        assert!(empty.is_omega);
    }

    #[test]
    fn adjunction_probe_counit_and_mismatch() {
        let a1 = corpus::a1().reach();
        let e = alg(&a1, &caps()).unwrap();
        let counit = adjunction_probe(&e, &a1, &caps()).unwrap();
        assert!(counit.consistent);
        assert!(counit.hom_alg_side.is_some());
        assert!(counit.hom_aut_side.is_some());
        // different languages: both hom-sets empty, still consistent
        let e2 = alg(&corpus::a2(), &caps()).unwrap();
        let mismatch = adjunction_probe(&e2, &a1, &caps()).unwrap();
        assert!(mismatch.consistent);
        assert!(mismatch.hom_alg_side.is_none());
        assert!(mismatch.hom_aut_side.is_none());
    }

    #[test]
    fn adjunction_probe_rejects_unreachable() {
        let padded = LassoAutomaton::new(
            corpus::a1().alphabet().clone(),
            vec!["x".into(), "dead".into()],
            vec!["y1".into(), "y2".into()],
            0,
            vec![vec![0, 0], vec![1, 1]],
            vec![vec![0, 1], vec![0, 0]],
            vec![vec![0, 0], vec![1, 1]],
            vec![false, true],
        )
        .unwrap();
        let e = alg(&corpus::a1(), &caps()).unwrap();
        assert!(adjunction_probe(&e, &padded, &caps()).is_err());
    }

    #[test]
    fn algebra_map_is_not_functorial_without_reachability() {
        // a morphism exists between the automata, but none between their
        // transition algebras: the letters collapse in the source only
        let src = corpus::collapsing_pair_source();
        let dst = corpus::collapsing_pair_target();
        assert!(find_morphism(&src, &dst).unwrap().is_some());
        let e_src = alg(&src, &caps()).unwrap();
        let e_dst = alg(&dst, &caps()).unwrap();
        assert!(find_ext_morphism(&e_src, &e_dst, &caps()).unwrap().is_none());
    }

    #[test]
    fn incl_reach_shadow_on_a_padded_target() {
        let a1 = corpus::a1();
        let padded = LassoAutomaton::new(
            a1.alphabet().clone(),
            vec!["x".into(), "dead".into()],
            vec!["y1".into(), "y2".into()],
            0,
            vec![vec![0, 0], vec![1, 1]],
            vec![vec![0, 1], vec![0, 0]],
            vec![vec![0, 0], vec![1, 1]],
            vec![false, true],
        )
        .unwrap();
        assert!(incl_reach_consistent(&a1, &padded).unwrap());
        assert!(incl_reach_consistent(&corpus::a2(), &padded).unwrap());
    }

    #[test]
    fn token_state_name_is_reserved() {
        let err = LassoAutomaton::new(
            corpus::a1().alphabet().clone(),
            vec!["@bad".into()],
            vec!["y".into()],
            0,
            vec![vec![0, 0]],
            vec![vec![0, 0]],
            vec![vec![0, 0]],
            vec![false],
        )
        .unwrap_err();
        assert!(err.to_string().contains("reserved"));
        // but the exact token name round-trips (aut output is a valid automaton)
        let e = alg(&corpus::a1(), &caps()).unwrap();
        assert!(aut(&e).validate().is_ok());
    }
}
