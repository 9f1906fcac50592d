//! Word rewriting by the defining relations.
//!
//! Rules on adjacent letters:
//!
//! ```text
//! K K⁻¹ → 1        K⁻¹ K → 1
//! K a± → q^{±2} a± K     K⁻¹ a± → q^{∓2} a± K⁻¹
//! a⁻ a⁺ → −a⁺ a⁻ + (K − K⁻¹)/(q − q⁻¹)
//! ```
//!
//! Irreducible words are exactly `(a⁺)^i (a⁻)^j K^s`. Every rule either
//! shortens the word or strictly lowers the pair (number of `a⁻` before `a⁺`
//! inversions, sum of positions of `K^{±1}` letters counted from the right)
//! in lexicographic order, so rewriting terminates under any strategy.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AlgebraElement, Generator, QParam};
use crate::exactnum::Scalar;

/// Which redex to contract next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
    /// Pseudo-random choice of pending word and redex, reproducible from the seed.
    Random(u64),
}

fn is_redex(a: Generator, b: Generator) -> bool {
    use Generator::*;
    matches!(
        (a, b),
        (K, Kinv) | (Kinv, K) | (K, Aplus) | (K, Aminus) | (Kinv, Aplus) | (Kinv, Aminus) | (Aminus, Aplus)
    )
}

fn word_key(word: &[Generator]) -> (u32, u32, i64) {
    let mut key = (0u32, 0u32, 0i64);
    for g in word {
        match g {
            Generator::Aplus => key.0 += 1,
            Generator::Aminus => key.1 += 1,
            Generator::K => key.2 += 1,
            Generator::Kinv => key.2 -= 1,
        }
    }
    key
}

fn accumulate(map: &mut BTreeMap<Vec<Generator>, Scalar>, word: Vec<Generator>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.remove(&word) {
        Some(prev) => {
            let s = &prev + &c;
            if !s.is_zero() {
                map.insert(word, s);
            }
        }
        None => {
            map.insert(word, c);
        }
    }
}

/// Normal form of a word, computed by the generator left-action on normal
/// forms. Agrees with [`normal_order_with`] for every strategy.
pub fn normal_order(q: &Arc<QParam>, word: &[Generator]) -> AlgebraElement {
    AlgebraElement::from_word(q, word)
}

/// Normal form of a word by explicit rewriting with the chosen strategy.
pub fn normal_order_with(q: &Arc<QParam>, word: &[Generator], strategy: RewriteStrategy) -> AlgebraElement {
    use Generator::*;
    let mut rng = match strategy {
        RewriteStrategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut pending: BTreeMap<Vec<Generator>, Scalar> = BTreeMap::new();
    accumulate(&mut pending, word.to_vec(), q.one());
    let mut done = AlgebraElement::zero(q);
    while !pending.is_empty() {
        let pick = match rng.as_mut() {
            Some(r) => r.gen_range(0..pending.len()),
            None => 0,
        };
        let w = pending.keys().nth(pick).cloned().expect("index within pending");
        let c = pending.remove(&w).expect("picked key exists");
        let redexes: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| is_redex(w[i], w[i + 1]))
            .collect();
        if redexes.is_empty() {
            done.add_term(word_key(&w), c);
            continue;
        }
        let pos = match (strategy, rng.as_mut()) {
            (RewriteStrategy::Leftmost, _) => redexes[0],
            (RewriteStrategy::Rightmost, _) => *redexes.last().unwrap(),
            (RewriteStrategy::Random(_), Some(r)) => redexes[r.gen_range(0..redexes.len())],
            (RewriteStrategy::Random(_), None) => unreachable!(),
        };
        let (head, tail) = (&w[..pos], &w[pos + 2..]);
        let splice = |mid: &[Generator]| -> Vec<Generator> {
            let mut v = Vec::with_capacity(head.len() + mid.len() + tail.len());
            v.extend_from_slice(head);
            v.extend_from_slice(mid);
            v.extend_from_slice(tail);
            v
        };
        match (w[pos], w[pos + 1]) {
            (K, Kinv) | (Kinv, K) => accumulate(&mut pending, splice(&[]), c),
            (K, Aplus) => accumulate(&mut pending, splice(&[Aplus, K]), &c * &q.q_pow(2)),
            (K, Aminus) => accumulate(&mut pending, splice(&[Aminus, K]), &c * &q.q_pow(-2)),
            (Kinv, Aplus) => accumulate(&mut pending, splice(&[Aplus, Kinv]), &c * &q.q_pow(-2)),
            (Kinv, Aminus) => accumulate(&mut pending, splice(&[Aminus, Kinv]), &c * &q.q_pow(2)),
            (Aminus, Aplus) => {
                let h = &c * &q.inv_q_minus();
                accumulate(&mut pending, splice(&[Aplus, Aminus]), -&c);
                accumulate(&mut pending, splice(&[K]), h.clone());
                accumulate(&mut pending, splice(&[Kinv]), -h);
            }
            _ => unreachable!("not a redex"),
        }
    }
    done
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn strategies_agree_on_a_long_word() {
        let q = QParam::root_of_unity(3, 7).unwrap();
        let w = [Aminus, K, Aminus, Aplus, Kinv, Aplus, Aminus, Aplus];
        let reference = normal_order(&q, &w);
        for s in [
            RewriteStrategy::Leftmost,
            RewriteStrategy::Rightmost,
            RewriteStrategy::Random(1),
            RewriteStrategy::Random(99),
        ] {
            assert_eq!(normal_order_with(&q, &w, s), reference, "{s:?}");
        }
    }

    #[test]
    fn single_rewrite_of_aminus_aplus() {
        let q = QParam::root_of_unity(1, 2).unwrap();
        let e = normal_order_with(&q, &[Aminus, Aplus], RewriteStrategy::Leftmost);
        assert_eq!(e.len(), 3);
        assert_eq!(e.coefficient((1, 1, 0)), Some(&q.integer(-1)));
    }
}
