use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::funlang::{random_term, FunExpr, TermAlphabet};
use crate::rel::{approximant, cantor_pair, RelationSpec};

use super::{check_preserving, Morphism, Result, Scope, Verdict};

/// Seeded source of small relations, terms and morphisms.
///
/// Two samplers built from the same seed produce the same sequence.
#[derive(Debug, Clone)]
pub struct InstanceSampler {
    rng: ChaCha8Rng,
    alphabet: TermAlphabet,
    cap: usize,
}

const MAX_TRIES: usize = 200;

impl InstanceSampler {
    pub fn new(seed: u64, cap: usize) -> Self {
        InstanceSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            alphabet: TermAlphabet::default(),
            cap: cap.max(1),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// One of `Id`, `Id_2`, `Id_3` or a random small ceer.
    pub fn object(&mut self) -> RelationSpec {
        match self.rng.gen_range(0..4) {
            0 => RelationSpec::IdAll,
            1 => RelationSpec::IdN(2),
            2 => RelationSpec::IdN(3),
            _ => self.ceer(12, 6, 16),
        }
    }

    /// A ceer generated by up to `max_pairs` pairs inside `[0, universe)`,
    /// stamped at stages `<= max_stage`.
    pub fn ceer(&mut self, universe: u64, max_pairs: usize, max_stage: u64) -> RelationSpec {
        let count = self.rng.gen_range(1..=max_pairs.max(1));
        let mut pairs: Vec<(u64, u64, u64)> = (0..count)
            .map(|_| {
                (
                    self.rng.gen_range(0..universe),
                    self.rng.gen_range(0..universe),
                    self.rng.gen_range(0..=max_stage),
                )
            })
            .collect();
        pairs.sort_by_key(|p| p.2);
        RelationSpec::from_pairs(pairs).expect("stamps sorted")
    }

    pub fn term(&mut self) -> FunExpr {
        random_term(&mut self.rng, &self.alphabet, self.cap)
    }

    /// A term whose values stay below `bound`.
    pub fn bounded_term(&mut self, bound: u64) -> FunExpr {
        let inner = self.term();
        FunExpr::compose(FunExpr::Mod(bound.max(1)), inner)
    }

    /// A map sending each element of `source`'s window to the least member of its class.
    pub fn class_rep_fun(source: &RelationSpec, scope: Scope) -> Result<FunExpr> {
        Ok(match source {
            RelationSpec::IdAll => FunExpr::Id,
            RelationSpec::IdN(k) => FunExpr::Mod(*k),
            other => {
                let window = approximant(other, scope.stage, scope.domain)?;
                let overrides = (0..scope.domain as u64)
                    .map(|x| (x, window.rep_unchecked(x)))
                    .filter(|&(x, r)| x != r);
                FunExpr::table(overrides, FunExpr::Id)
            }
        })
    }

    /// A morphism `source -> target` preserving at `scope`, with images below `bound`.
    pub fn morphism(
        &mut self,
        source: &RelationSpec,
        target: &RelationSpec,
        bound: u64,
        scope: Scope,
    ) -> Result<Morphism> {
        let reps = Self::class_rep_fun(source, scope)?;
        for attempt in 0..MAX_TRIES {
            let body = self.bounded_term(bound);
            // mostly factor through class representatives; sometimes try the raw term
            let fun = if attempt % 4 == 3 {
                body
            } else {
                FunExpr::compose(body, reps.clone())
            };
            if fun.eval_range(scope.domain).is_err() {
                continue;
            }
            if let Verdict::Ok(_) = check_preserving(&fun, source, target, scope)? {
                return Morphism::new(source.clone(), target.clone(), fun).verified(scope);
            }
        }
        // constants always preserve
        let c = self.rng.gen_range(0..bound.max(1));
        Morphism::new(source.clone(), target.clone(), FunExpr::Const(c)).verified(scope)
    }

    /// A table enumerating `len` random pairs over `[0, n)`, repeating the first afterwards.
    pub fn pair_table(&mut self, n: u64, len: usize) -> FunExpr {
        let codes: Vec<u64> = (0..len.max(1))
            .map(|_| {
                let (a, b) = (self.rng.gen_range(0..n), self.rng.gen_range(0..n));
                cantor_pair(a, b).expect("small pair")
            })
            .collect();
        FunExpr::table(
            codes.iter().enumerate().map(|(i, &c)| (i as u64, c)),
            FunExpr::Const(codes[0]),
        )
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("non-empty choice")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let mut a = InstanceSampler::new(42, 7);
        let mut b = InstanceSampler::new(42, 7);
        for _ in 0..20 {
            assert_eq!(a.object(), b.object());
            assert_eq!(a.term(), b.term());
        }
    }

    #[test]
    fn sampled_morphisms_preserve() {
        let mut s = InstanceSampler::new(3, 7);
        let scope = Scope::new(32, 64);
        for _ in 0..20 {
            let (src, tgt) = (s.object(), s.object());
            let m = s.morphism(&src, &tgt, 11, scope).unwrap();
            assert_eq!(m.verified_scope(), Some(scope));
            assert!(m.fun.eval_range(64).unwrap().iter().all(|&v| v < 11));
        }
    }
}
