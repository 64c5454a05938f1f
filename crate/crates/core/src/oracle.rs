//! Independent reference implementations used by the test and verification
//! suites. Nothing here shares code with the decision procedures it checks:
//! equality of ultimately periodic words is decided by unrolling, the
//! circularity/coherence conditions by bounded brute force over words, and
//! morphism uniqueness by enumerating all state maps.

use crate::automaton::{AutomatonMorphism, LassoAutomaton};
use crate::error::Result;
use crate::lasso::{Lasso, Word};
use crate::semigroup::{ExtMorphism, ExtendedLassoSemigroup};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Decides `spoke₁·loop₁^ω = spoke₂·loop₂^ω` by comparing the first
/// `max(|spoke|) + 2·lcm(|loop|)` symbols: beyond the spokes both words are
/// periodic with the common period, so agreement on two full periods decides
/// equality.
pub fn unroll_equal(l1: &Lasso, l2: &Lasso) -> bool {
    let spoke = l1.spoke().len().max(l2.spoke().len());
    let p1 = l1.cycle().len();
    let p2 = l2.cycle().len();
    let lcm = p1 / gcd(p1, p2) * p2;
    (0..spoke + 2 * lcm).all(|i| l1.symbol_at(i) == l2.symbol_at(i))
}

/// Brute-force circularity and coherence over all words `v` up to `max_len`
/// and exponents up to `max_exp`. Sound but not complete; used to cross-check
/// the exact monoid-based decision.
pub fn omega_conditions_bounded(a: &LassoAutomaton, max_len: usize, max_exp: usize) -> Result<(bool, bool)> {
    let words = a.alphabet().words_up_to(max_len);
    let symbols = a.alphabet().symbols().to_vec();
    let mut circular = true;
    let mut coherent = true;
    for x in 0..a.x_count() {
        for (si, &s) in symbols.iter().enumerate() {
            let y0 = a.sigma_step(x, si);
            for v in &words {
                let lhs = a.is_final(a.xi_word(y0, v)?);
                for k in 1..=max_exp {
                    let av = Word::from(vec![s]).concat(v);
                    let pumped = v.concat(&av.repeated(k));
                    if a.is_final(a.xi_word(y0, &pumped)?) != lhs {
                        circular = false;
                    }
                }
                for (ti, &t) in symbols.iter().enumerate() {
                    let bv = Word::from(vec![t]).concat(v);
                    let va = v.appended(s);
                    let left = a.is_final(a.xi_word(y0, &bv)?);
                    let y1 = a.sigma_step(a.rho_step(x, si), ti);
                    let right = a.is_final(a.xi_word(y1, &va)?);
                    if left != right {
                        coherent = false;
                    }
                }
            }
        }
    }
    Ok((circular, coherent))
}

/// Brute-force reverse-circularity and reverse-coherence, bounded like
/// [`omega_conditions_bounded`].
pub fn omega_rev_conditions_bounded(
    a: &LassoAutomaton,
    max_len: usize,
    max_exp: usize,
) -> Result<(bool, bool)> {
    let words = a.alphabet().words_up_to(max_len);
    let symbols = a.alphabet().symbols().to_vec();
    let q = a.initial();
    let mut rev_circular = true;
    let mut rev_coherent = true;
    for v in &words {
        for (si, &s) in symbols.iter().enumerate() {
            let base = a.sigma_step(a.rho_word(q, v)?, si);
            for k in 1..=max_exp {
                let va = v.appended(s);
                let pumped = va.repeated(k).concat(v);
                if a.sigma_step(a.rho_word(q, &pumped)?, si) != base {
                    rev_circular = false;
                }
            }
            for (ti, &t) in symbols.iter().enumerate() {
                let vb = v.appended(t);
                let lhs = a.sigma_step(a.rho_word(q, &vb)?, si);
                let av = Word::from(vec![s]).concat(v);
                let rhs = a.xi_step(a.sigma_step(a.rho_word(q, &av)?, ti), si);
                if lhs != rhs {
                    rev_coherent = false;
                }
            }
        }
    }
    Ok((rev_circular, rev_coherent))
}

fn all_maps(domain: usize, range: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..domain {
        let mut next = Vec::with_capacity(out.len() * range);
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
}

/// Every pair of state maps satisfying the morphism equations, found by
/// exhaustive enumeration. Exponential; for tiny instances only.
pub fn all_morphisms_brute(from: &LassoAutomaton, to: &LassoAutomaton) -> Vec<AutomatonMorphism> {
    let mut out = Vec::new();
    for x_map in all_maps(from.x_count(), to.x_count()) {
        for y_map in all_maps(from.y_count(), to.y_count()) {
            let h = AutomatonMorphism {
                x_map: x_map.clone(),
                y_map,
            };
            if h.check(from, to) {
                out.push(h);
            }
        }
    }
    out
}

/// Every extended-lasso-semigroup morphism, by exhaustive enumeration.
pub fn all_ext_morphisms_brute(
    from: &ExtendedLassoSemigroup,
    to: &ExtendedLassoSemigroup,
) -> Vec<ExtMorphism> {
    let mut out = Vec::new();
    for plus_map in all_maps(from.base().plus_count(), to.base().plus_count()) {
        for omega_map in all_maps(from.base().omega_count(), to.base().omega_count()) {
            let g = ExtMorphism {
                plus_map: plus_map.clone(),
                omega_map,
            };
            if g.check(from, to) {
                out.push(g);
            }
        }
    }
    out
}
