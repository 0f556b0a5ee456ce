use std::collections::{BTreeMap, BTreeSet};

use super::pairing::cantor_proj;
use super::{CoceerSeed, PairSource, RelError, RelationSpec, UnionFind};

/// Immutable snapshot of a relation's partition of `[0, bound)` at one stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximant {
    stage: u64,
    bound: usize,
    forest: UnionFind,
    least: Vec<usize>,
    isolated: BTreeSet<u64>,
    deferred: usize,
}

impl Approximant {
    fn freeze(stage: u64, mut forest: UnionFind, isolated: BTreeSet<u64>, deferred: usize) -> Self {
        forest.compress_all();
        let least = forest.least_members();
        Approximant {
            stage,
            bound: forest.len(),
            forest,
            least,
            isolated,
            deferred,
        }
    }

    pub fn stage(&self) -> u64 {
        self.stage
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Generating pairs skipped because an endpoint fell outside the bound.
    pub fn deferred(&self) -> usize {
        self.deferred
    }

    /// Elements a coceer extraction has made singletons by this stage.
    pub fn isolated(&self) -> &BTreeSet<u64> {
        &self.isolated
    }

    pub fn forest(&self) -> &UnionFind {
        &self.forest
    }

    pub fn contains(&self, x: u64) -> bool {
        x < self.bound as u64
    }

    fn check(&self, x: u64) -> Result<usize, RelError> {
        if self.contains(x) {
            Ok(x as usize)
        } else {
            Err(RelError::OutOfBound {
                x,
                bound: self.bound,
            })
        }
    }

    /// Least element of the class of `x`.
    pub fn rep(&self, x: u64) -> Result<u64, RelError> {
        Ok(self.least[self.check(x)?] as u64)
    }

    /// `rep` for callers that have already bounds-checked `x`.
    pub fn rep_unchecked(&self, x: u64) -> u64 {
        self.least[x as usize] as u64
    }

    pub fn related(&self, x: u64, y: u64) -> Result<bool, RelError> {
        Ok(self.rep(x)? == self.rep(y)?)
    }

    pub fn classes_count(&self) -> usize {
        self.least
            .iter()
            .enumerate()
            .filter(|&(x, &r)| x == r)
            .count()
    }

    /// Least elements of all classes, ascending.
    pub fn canonical_reps(&self) -> Vec<u64> {
        self.least
            .iter()
            .enumerate()
            .filter(|&(x, &r)| x == r)
            .map(|(x, _)| x as u64)
            .collect()
    }

    /// Classes ordered by least element, members ascending.
    pub fn classes(&self) -> Vec<Vec<u64>> {
        let mut by_rep: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
        for (x, &r) in self.least.iter().enumerate() {
            by_rep.entry(r).or_default().push(x as u64);
        }
        by_rep.into_values().collect()
    }

    pub fn class_of(&self, x: u64) -> Result<Vec<u64>, RelError> {
        let r = self.rep(x)? as usize;
        Ok(self
            .least
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == r)
            .map(|(y, _)| y as u64)
            .collect())
    }

    /// Every class of `self` lies inside a class of `other` (same bound).
    pub fn refines(&self, other: &Approximant) -> bool {
        self.bound == other.bound
            && (0..self.bound).all(|x| other.least[x] == other.least[self.least[x]])
    }

    pub fn same_partition(&self, other: &Approximant) -> bool {
        self.least == other.least
    }
}

/// The partition of `[0, n)` by the stage-`s` approximation of `spec`.
pub fn approximant(spec: &RelationSpec, s: u64, n: usize) -> Result<Approximant, RelError> {
    if n == 0 {
        return Err(RelError::ZeroBound);
    }
    spec.validate()?;
    build(spec, s, n)
}

fn build(spec: &RelationSpec, s: u64, n: usize) -> Result<Approximant, RelError> {
    let mut forest = UnionFind::new(n);
    let mut isolated = BTreeSet::new();
    let mut deferred = 0;
    match spec {
        RelationSpec::IdAll => {}
        RelationSpec::IdN(m) => {
            for x in 0..n {
                forest.union(x, x % *m as usize);
            }
        }
        RelationSpec::Kernel(labels) => {
            let mut first = BTreeMap::new();
            for x in 0..n {
                let label = labels.eval(x as u64)?;
                let anchor = *first.entry(label).or_insert(x);
                forest.union(anchor, x);
            }
        }
        RelationSpec::FromPairs(source) => {
            let pairs = enumerated_pairs(source, s)?;
            deferred = union_in_range(&mut forest, pairs);
        }
        RelationSpec::Coceer { seed, trace } => {
            isolated = trace.isolated_up_to(s).filter(|&x| x < n as u64).collect();
            let labels = seed_labels(seed, n)?;
            let mut first = BTreeMap::new();
            for (x, &label) in labels.iter().enumerate().take(n) {
                if isolated.contains(&(x as u64)) {
                    continue;
                }
                let anchor = *first.entry(label).or_insert(x);
                forest.union(anchor, x);
            }
        }
        RelationSpec::Product(r, t) => {
            let (left, right) = (build(r, s, n)?, build(t, s, n)?);
            let mut first = BTreeMap::new();
            for z in 0..n {
                let (a, b) = cantor_proj(z as u64);
                // components of z are <= z < n
                let key = (left.rep_unchecked(a), right.rep_unchecked(b));
                let anchor = *first.entry(key).or_insert(z);
                forest.union(anchor, z);
            }
        }
        RelationSpec::Coproduct(r, t) => {
            let half = n.div_ceil(2);
            let (even, odd) = (build(r, s, half)?, build(t, s, half)?);
            for z in 0..n {
                let y = (z / 2) as u64;
                let rep = if z % 2 == 0 {
                    2 * even.rep_unchecked(y)
                } else {
                    2 * odd.rep_unchecked(y) + 1
                };
                forest.union(rep as usize, z);
            }
        }
        RelationSpec::Coequalizer { base, left, right } => {
            let inner = build(base, s, n)?;
            forest = inner.forest.clone();
            isolated = inner.isolated.clone();
            let generated = (0..s).map(|x| Ok((left.eval(x)?, right.eval(x)?)));
            let generated = generated.collect::<Result<Vec<_>, RelError>>()?;
            deferred = inner.deferred + union_in_range(&mut forest, generated);
        }
        RelationSpec::ClosureOf { base, pairs } => {
            let inner = build(base, s, n)?;
            forest = inner.forest.clone();
            isolated = inner.isolated.clone();
            deferred = inner.deferred + union_in_range(&mut forest, pairs.iter().copied());
        }
    }
    Ok(Approximant::freeze(s, forest, isolated, deferred))
}

fn enumerated_pairs(source: &PairSource, s: u64) -> Result<Vec<(u64, u64)>, RelError> {
    Ok(match source {
        PairSource::ExplicitList(list) => list
            .iter()
            .take_while(|p| p.stage <= s)
            .map(|p| (p.x, p.y))
            .collect(),
        PairSource::FunRange(h) => (0..s)
            .map(|x| h.eval(x).map(cantor_proj))
            .collect::<Result<_, _>>()?,
        PairSource::TraceBacked(trace) => trace.merges_up_to(s).collect(),
    })
}

fn seed_labels(seed: &CoceerSeed, n: usize) -> Result<Vec<u64>, RelError> {
    match seed {
        CoceerSeed::Blocks(blocks) => {
            let rest = blocks.len() as u64;
            let mut labels = vec![rest; n];
            for (i, block) in blocks.iter().enumerate() {
                for &x in block {
                    if x < n as u64 {
                        labels[x as usize] = i as u64;
                    }
                }
            }
            Ok(labels)
        }
        CoceerSeed::Labels(f) => Ok(f.eval_range(n)?),
    }
}

/// Unions the in-range pairs; returns how many were skipped.
fn union_in_range(forest: &mut UnionFind, pairs: impl IntoIterator<Item = (u64, u64)>) -> usize {
    let n = forest.len() as u64;
    let mut skipped = 0;
    for (x, y) in pairs {
        if x < n && y < n {
            forest.union(x as usize, y as usize);
        } else {
            skipped += 1;
        }
    }
    skipped
}

/// Least equivalence relation on `[0, n)` containing `pairs`.
pub fn equivalence_closure(pairs: &[(u64, u64)], n: usize) -> Result<Approximant, RelError> {
    if n == 0 {
        return Err(RelError::ZeroBound);
    }
    let mut forest = UnionFind::new(n);
    for &(x, y) in pairs {
        for v in [x, y] {
            if v >= n as u64 {
                return Err(RelError::OutOfBound { x: v, bound: n });
            }
        }
        forest.union(x as usize, y as usize);
    }
    Ok(Approximant::freeze(0, forest, BTreeSet::new(), 0))
}

pub fn related_at(spec: &RelationSpec, s: u64, n: usize, x: u64, y: u64) -> Result<bool, RelError> {
    approximant(spec, s, n)?.related(x, y)
}

pub fn classes_count(spec: &RelationSpec, s: u64, n: usize) -> Result<usize, RelError> {
    Ok(approximant(spec, s, n)?.classes_count())
}

pub fn canonical_reps(spec: &RelationSpec, s: u64, n: usize) -> Result<Vec<u64>, RelError> {
    Ok(approximant(spec, s, n)?.canonical_reps())
}

/// Whether the `[0, n)` partition is unchanged from stage `s` to `s + 1`.
///
/// This says nothing about later stages.
pub fn stabilized(spec: &RelationSpec, s: u64, n: usize) -> Result<bool, RelError> {
    let now = approximant(spec, s, n)?;
    let next = approximant(spec, s + 1, n)?;
    Ok(now.same_partition(&next))
}
