use rand::seq::SliceRandom;
use rand::Rng;

use super::FunExpr;

/// Leaves and constants drawn on when generating terms.
#[derive(Debug, Clone)]
pub struct TermAlphabet {
    pub consts: Vec<u64>,
    pub moduli: Vec<u64>,
}

impl Default for TermAlphabet {
    fn default() -> Self {
        TermAlphabet {
            consts: vec![0, 1, 2, 3],
            moduli: vec![2, 3, 4],
        }
    }
}

impl TermAlphabet {
    fn leaves(&self) -> Vec<FunExpr> {
        let mut out = vec![
            FunExpr::Id,
            FunExpr::Succ,
            FunExpr::Double,
            FunExpr::DoublePlus1,
            FunExpr::Half,
            FunExpr::Proj0,
            FunExpr::Proj1,
        ];
        out.extend(self.consts.iter().map(|&c| FunExpr::Const(c)));
        out.extend(
            self.moduli
                .iter()
                .filter(|&&k| k >= 1)
                .map(|&k| FunExpr::Mod(k)),
        );
        out
    }
}

const BINARY: [fn(FunExpr, FunExpr) -> FunExpr; 4] =
    [FunExpr::pair, FunExpr::compose, FunExpr::add, FunExpr::mul];

/// Every table-free term of size `<= max_size` over the alphabet, smallest first.
pub fn enumerate_terms(alphabet: &TermAlphabet, max_size: usize) -> Vec<FunExpr> {
    // by_size[k] holds the terms of size exactly k
    let mut by_size: Vec<Vec<FunExpr>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        by_size[1] = alphabet.leaves();
    }
    for size in 2..=max_size {
        let mut terms = Vec::new();
        for left in 1..size - 1 {
            let right = size - 1 - left;
            for build in BINARY {
                for a in &by_size[left] {
                    for b in &by_size[right] {
                        terms.push(build(a.clone(), b.clone()));
                    }
                }
            }
        }
        for (s1, s2, s3, s4) in four_way_splits(size - 1) {
            for a in &by_size[s1] {
                for b in &by_size[s2] {
                    for c in &by_size[s3] {
                        for d in &by_size[s4] {
                            terms.push(FunExpr::if_less(
                                a.clone(),
                                b.clone(),
                                c.clone(),
                                d.clone(),
                            ));
                        }
                    }
                }
            }
        }
        by_size[size] = terms;
    }
    by_size.into_iter().flatten().collect()
}

fn four_way_splits(total: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 1..total {
        for b in 1..total {
            for c in 1..total {
                if a + b + c < total {
                    out.push((a, b, c, total - a - b - c));
                }
            }
        }
    }
    out
}

/// A random table-free term of size `<= max_size`.
pub fn random_term<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &TermAlphabet,
    max_size: usize,
) -> FunExpr {
    let leaves = alphabet.leaves();
    let budget = rng.gen_range(1..=max_size.max(1));
    grow(rng, &leaves, budget)
}

fn grow<R: Rng + ?Sized>(rng: &mut R, leaves: &[FunExpr], budget: usize) -> FunExpr {
    if budget < 3 {
        return leaves.choose(rng).expect("alphabet has leaves").clone();
    }
    if budget >= 5 && rng.gen_bool(0.15) {
        let mut rest = budget - 1;
        let mut parts = [1usize; 4];
        rest -= 4;
        while rest > 0 {
            parts[rng.gen_range(0..4)] += 1;
            rest -= 1;
        }
        let [a, b, c, d] = parts.map(|p| grow(rng, leaves, p));
        return FunExpr::if_less(a, b, c, d);
    }
    let left = rng.gen_range(1..budget - 1);
    let build = BINARY[rng.gen_range(0..BINARY.len())];
    build(
        grow(rng, leaves, left),
        grow(rng, leaves, budget - 1 - left),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn enumeration_sizes() {
        let alpha = TermAlphabet {
            consts: vec![0],
            moduli: vec![2],
        };
        // 9 leaves; size 3 adds 4 * 9 * 9 binary terms
        let terms = enumerate_terms(&alpha, 3);
        assert_eq!(terms.len(), 9 + 4 * 81);
        assert!(terms.iter().all(|t| t.size() <= 3));
        let five = enumerate_terms(&alpha, 5);
        assert!(five.iter().any(|t| matches!(t, FunExpr::IfLess(..))));
    }

    #[test]
    fn random_terms_respect_cap_and_seed() {
        let alpha = TermAlphabet::default();
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let t = random_term(&mut a, &alpha, 7);
            assert!(t.size() <= 7, "{t} has size {}", t.size());
            assert_eq!(t, random_term(&mut b, &alpha, 7));
        }
    }
}
