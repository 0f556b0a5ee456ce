//! Universal-property checks at scope.
//!
//! Uniqueness clauses cannot quantify over every morphism, so each suite
//! tests a seeded candidate family: targeted mutants of the canonical
//! mediator (which do commute) followed by random terms of bounded size
//! (which mostly do not). Every candidate that commutes must coincide with
//! the mediator.

use rand::Rng;

use crate::funlang::FunExpr;
use crate::rel::{
    approximant, cantor_pair, cantor_proj, equivalence_closure, Approximant, RelationSpec,
};

use super::{
    coequalizer, compose, copair_mediator, coproduct, initial_refutation, morphism_eq,
    pair_mediator, product, terminal_morphism, CategoryError, InstanceSampler, Morphism, Result,
    Scope,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateConfig {
    pub seed: u64,
    /// Largest random term size.
    pub cap: usize,
    /// Family size per instance.
    pub count: usize,
}

impl Default for CandidateConfig {
    fn default() -> Self {
        CandidateConfig {
            seed: 0,
            cap: 7,
            count: 50,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UniversalReport {
    /// The mediator commutes with the (co)projections.
    pub commutes: bool,
    pub candidates: usize,
    /// Candidates that preserve equivalence at scope.
    pub morphisms: usize,
    /// Candidates that also make the diagram commute.
    pub commuting: usize,
    /// Commuting candidates that differ from the mediator.
    pub violations: Vec<String>,
}

impl UniversalReport {
    pub fn holds(&self) -> bool {
        self.commutes && self.violations.is_empty()
    }
}

/// `f . g` agrees with `expected` at scope; errors inside the window count as disagreement.
fn commutes_with(
    outer: &Morphism,
    inner: &Morphism,
    expected: &Morphism,
    scope: Scope,
) -> Result<bool> {
    let composite = match compose(outer, inner, scope) {
        Ok(c) => c,
        Err(CategoryError::NotPreserving { .. } | CategoryError::ScopeFault { .. }) => {
            return Ok(false)
        }
        Err(e) => return Err(e),
    };
    match morphism_eq(&composite, expected, scope) {
        Ok(eq) => Ok(eq),
        Err(CategoryError::NotPreserving { .. } | CategoryError::ScopeFault { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Least class member of every point of `[0, bound)`.
fn class_reps(spec: &RelationSpec, stage: u64, bound: usize) -> Result<Vec<u64>> {
    let window = approximant(spec, stage, bound)?;
    Ok((0..bound as u64).map(|v| window.rep_unchecked(v)).collect())
}

/// Both points lie in the window and share a class.
fn same_class(reps: &[u64], a: u64, b: u64) -> bool {
    match (reps.get(a as usize), reps.get(b as usize)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// Another member of the class of `v` in `window`, if there is one.
fn class_mate(sampler: &mut InstanceSampler, window: &Approximant, v: u64) -> u64 {
    match window.class_of(v) {
        Ok(members) => *sampler.choose(&members),
        Err(_) => v,
    }
}

/// Product laws for `rho_r: T -> R`, `rho_s: T -> S` at `scope`.
pub fn product_laws(
    rho_r: &Morphism,
    rho_s: &Morphism,
    scope: Scope,
    config: CandidateConfig,
) -> Result<UniversalReport> {
    let cone = product(&rho_r.target, &rho_s.target);
    let mediator = pair_mediator(rho_r, rho_s)?.verified(scope)?;
    let mut report = UniversalReport {
        commutes: commutes_with(&cone.left, &mediator, rho_r, scope)?
            && commutes_with(&cone.right, &mediator, rho_s, scope)?,
        ..Default::default()
    };

    let mut sampler = InstanceSampler::new(config.seed, config.cap);
    let r_window = approximant(&rho_r.target, scope.stage, scope.codomain)?;
    let s_window = approximant(&rho_s.target, scope.stage, scope.codomain)?;
    let mut family = vec![
        mediator.fun.clone(),
        FunExpr::pair(
            FunExpr::compose(FunExpr::Proj0, mediator.fun.clone()),
            FunExpr::compose(FunExpr::Proj1, mediator.fun.clone()),
        ),
        FunExpr::compose(
            mediator.fun.clone(),
            InstanceSampler::class_rep_fun(&rho_r.source, scope)?,
        ),
    ];
    // patch the mediator with equivalent pairs at a few points
    while family.len() < config.count / 2 {
        let points = sampler.rng().gen_range(1..=3);
        let mut overrides = Vec::new();
        for _ in 0..points {
            let x = sampler.rng().gen_range(0..scope.domain as u64);
            let u = class_mate(&mut sampler, &r_window, rho_r.fun.eval(x)?);
            let v = class_mate(&mut sampler, &s_window, rho_s.fun.eval(x)?);
            if let Ok(code) = cantor_pair(u, v) {
                overrides.push((x, code));
            }
        }
        family.push(FunExpr::table(overrides, mediator.fun.clone()));
    }
    while family.len() < config.count {
        let k = sampler.rng().gen_range(2..12);
        family.push(if sampler.rng().gen_bool(0.5) {
            FunExpr::pair(sampler.bounded_term(k), sampler.bounded_term(k))
        } else {
            sampler.term()
        });
    }

    let t_reps = class_reps(&rho_r.source, scope.stage, scope.domain)?;
    let p_reps = class_reps(&mediator.target, scope.stage, scope.codomain)?;
    let r_reps = class_reps(&rho_r.target, scope.stage, scope.codomain)?;
    let s_reps = class_reps(&rho_s.target, scope.stage, scope.codomain)?;
    let (via_r, via_s, med) = (
        rho_r.fun.eval_range(scope.domain)?,
        rho_s.fun.eval_range(scope.domain)?,
        mediator.fun.eval_range(scope.domain)?,
    );
    for fun in family {
        report.candidates += 1;
        let Ok(img) = fun.eval_range(scope.domain) else {
            continue;
        };
        if img.iter().any(|&v| v as usize >= scope.codomain) {
            continue;
        }
        let p = |v: u64| p_reps[v as usize];
        if (0..scope.domain).any(|x| p(img[x]) != p(img[t_reps[x] as usize])) {
            continue;
        }
        report.morphisms += 1;
        let commutes = (0..scope.domain).all(|x| {
            let (a, b) = cantor_proj(img[x]);
            same_class(&r_reps, a, via_r[x]) && same_class(&s_reps, b, via_s[x])
        });
        if commutes {
            report.commuting += 1;
            if (0..scope.domain).any(|x| !same_class(&p_reps, img[x], med[x])) {
                report.violations.push(fun.to_string());
            }
        }
    }
    Ok(report)
}

/// Coproduct laws for `rho_r: R -> T`, `rho_s: S -> T`.
///
/// `R` and `S` are sampled on `[0, n)`; the join is therefore observed on
/// `[0, 2n)` and the codomain is widened to at least `2n`.
pub fn coproduct_laws(
    rho_r: &Morphism,
    rho_s: &Morphism,
    scope: Scope,
    config: CandidateConfig,
) -> Result<UniversalReport> {
    let joined = 2 * scope.domain;
    let inj_scope = scope.with_codomain(scope.codomain.max(joined));
    let out_scope = inj_scope.downstream();
    let cocone = coproduct(&rho_r.source, &rho_s.source);
    let copair = copair_mediator(rho_r, rho_s)?.verified(out_scope)?;
    let mut report = UniversalReport {
        commutes: commutes_with(&copair, &cocone.left, rho_r, inj_scope)?
            && commutes_with(&copair, &cocone.right, rho_s, inj_scope)?,
        ..Default::default()
    };

    let mut sampler = InstanceSampler::new(config.seed, config.cap);
    let t_window = approximant(&rho_r.target, scope.stage, out_scope.codomain)?;
    let mut family = vec![
        copair.fun.clone(),
        FunExpr::if_less(
            FunExpr::Mod(2),
            FunExpr::Const(1),
            FunExpr::compose(rho_r.fun.clone(), FunExpr::Half),
            FunExpr::compose(rho_s.fun.clone(), FunExpr::Half),
        ),
        FunExpr::compose(
            copair.fun.clone(),
            InstanceSampler::class_rep_fun(&copair.source, out_scope)?,
        ),
    ];
    while family.len() < config.count / 2 {
        let points = sampler.rng().gen_range(1..=3);
        let mut overrides = Vec::new();
        for _ in 0..points {
            let y = sampler.rng().gen_range(0..joined as u64);
            overrides.push((y, class_mate(&mut sampler, &t_window, copair.fun.eval(y)?)));
        }
        family.push(FunExpr::table(overrides, copair.fun.clone()));
    }
    while family.len() < config.count {
        let k = sampler.rng().gen_range(2..12);
        family.push(if sampler.rng().gen_bool(0.5) {
            FunExpr::parity_split(sampler.bounded_term(k), sampler.bounded_term(k))
        } else {
            sampler.term()
        });
    }

    let j_reps = class_reps(&copair.source, scope.stage, joined)?;
    let t_reps = class_reps(&copair.target, scope.stage, out_scope.codomain)?;
    let (via_r, via_s, copaired) = (
        rho_r.fun.eval_range(scope.domain)?,
        rho_s.fun.eval_range(scope.domain)?,
        copair.fun.eval_range(joined)?,
    );
    for fun in family {
        report.candidates += 1;
        let Ok(img) = fun.eval_range(joined) else {
            continue;
        };
        if img.iter().any(|&v| v as usize >= out_scope.codomain) {
            continue;
        }
        let t = |v: u64| t_reps[v as usize];
        if (0..joined).any(|y| t(img[y]) != t(img[j_reps[y] as usize])) {
            continue;
        }
        report.morphisms += 1;
        let commutes = (0..scope.domain).all(|x| {
            same_class(&t_reps, img[2 * x], via_r[x])
                && same_class(&t_reps, img[2 * x + 1], via_s[x])
        });
        if commutes {
            report.commuting += 1;
            if (0..joined).any(|y| !same_class(&t_reps, img[y], copaired[y])) {
                report.violations.push(fun.to_string());
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoequalizerReport {
    /// `gamma . alpha = gamma . beta` on the arguments enumerated by stage `s`.
    pub coequalizes: bool,
    /// Every stage-`s` pair of the target is a pair of the quotient.
    pub contains_target: bool,
    /// The quotient equals the closure of the target's pairs and the generated pairs.
    pub matches_closure: bool,
    pub deferred: usize,
    pub factor_candidates: usize,
    /// Candidates `g: Y -> U` that coequalize.
    pub factor_coequalizing: usize,
    pub violations: Vec<String>,
}

impl CoequalizerReport {
    pub fn holds(&self) -> bool {
        self.coequalizes
            && self.contains_target
            && self.matches_closure
            && self.violations.is_empty()
    }
}

/// Coequalizer laws for a parallel pair `alpha, beta: X -> Y` at `scope`.
///
/// Arguments are enumerated one per stage, so the coequalizing identity is
/// checked on `x < min(s, n)`. The quotient is observed on `[0, m)`.
pub fn coequalizer_laws(
    alpha: &Morphism,
    beta: &Morphism,
    scope: Scope,
    config: CandidateConfig,
) -> Result<CoequalizerReport> {
    alpha.require(scope)?;
    beta.require(scope)?;
    let coeq = coequalizer(alpha, beta)?;
    let window = scope.downstream();
    let gamma = coeq.gamma.clone().verified(window)?;
    let enumerated = (scope.stage.min(scope.domain as u64)) as usize;
    let law_scope = scope.with_domain(enumerated.max(1));

    let coequalizes = enumerated == 0 || {
        let left = compose(&gamma, alpha, law_scope)?;
        let right = compose(&gamma, beta, law_scope)?;
        morphism_eq(&left, &right, law_scope)?
    };
    let mut report = CoequalizerReport {
        coequalizes,
        ..CoequalizerReport::default()
    };

    let m = scope.codomain;
    let y = approximant(&alpha.target, scope.stage, m)?;
    let z = approximant(&coeq.spec, scope.stage, m)?;
    report.deferred = z.deferred();
    report.contains_target = y.refines(&z);
    let mut generators: Vec<(u64, u64)> = (0..m as u64).map(|v| (v, y.rep_unchecked(v))).collect();
    for x in 0..scope.stage {
        let (a, b) = (alpha.fun.eval(x)?, beta.fun.eval(x)?);
        if y.contains(a) && y.contains(b) {
            generators.push((a, b));
        }
    }
    report.matches_closure = equivalence_closure(&generators, m)?.same_partition(&z);

    // factorization through the quotient
    let mut sampler = InstanceSampler::new(config.seed, config.cap);
    let targets = [
        coeq.spec.clone(),
        RelationSpec::IdN(1),
        RelationSpec::IdN(2),
        RelationSpec::IdN(3),
    ];
    let mut family: Vec<(RelationSpec, FunExpr)> = vec![
        (coeq.spec.clone(), FunExpr::Id),
        (RelationSpec::IdN(1), FunExpr::Const(0)),
        (
            coeq.spec.clone(),
            InstanceSampler::class_rep_fun(&coeq.spec, window)?,
        ),
    ];
    while family.len() < config.count {
        let target = sampler.choose(&targets).clone();
        let bound = match &target {
            RelationSpec::IdN(k) => (*k).max(2),
            _ => m as u64,
        };
        family.push((target, sampler.bounded_term(bound)));
    }
    // windows are shared by every candidate
    let y_reps: Vec<u64> = (0..m as u64).map(|v| y.rep_unchecked(v)).collect();
    let z_reps: Vec<u64> = (0..m as u64).map(|v| z.rep_unchecked(v)).collect();
    let generated: Vec<(u64, u64)> = (0..enumerated as u64)
        .map(|x| Ok((alpha.fun.eval(x)?, beta.fun.eval(x)?)))
        .collect::<Result<_>>()?;
    let mut target_windows: Vec<(RelationSpec, Approximant)> = Vec::new();
    for (target, fun) in &family {
        report.factor_candidates += 1;
        let Ok(images) = fun.eval_range(m) else {
            continue;
        };
        let need = images.iter().max().map_or(1, |&v| v as usize + 1);
        let idx = match target_windows
            .iter()
            .position(|(t, w)| t == target && w.bound() >= need)
        {
            Some(i) => i,
            None => {
                target_windows.push((
                    target.clone(),
                    approximant(target, scope.stage, need.max(m))?,
                ));
                target_windows.len() - 1
            }
        };
        let u = &target_windows[idx].1;
        let cls = |v: u64| u.rep_unchecked(images[v as usize]);
        // g must preserve Y and identify every generated pair
        if (0..m as u64).any(|v| cls(v) != cls(y_reps[v as usize])) {
            continue;
        }
        if generated.iter().any(|&(a, b)| cls(a) != cls(b)) {
            continue;
        }
        report.factor_coequalizing += 1;
        // the induced map out of the quotient is then well defined, and unique since gamma is onto
        if let Some(v) = (0..m as u64).find(|&v| cls(v) != cls(z_reps[v as usize])) {
            report.violations.push(format!(
                "{fun} coequalizes but separates {v} from {} in the quotient",
                z_reps[v as usize]
            ));
        }
    }
    Ok(report)
}

/// Uniqueness of maps into `Id_1` and distinctness of the `Id_2` pair out of `x`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TerminalReport {
    pub candidates: usize,
    pub agreeing: usize,
    pub initial_pair_distinct: bool,
}

impl TerminalReport {
    pub fn holds(&self) -> bool {
        self.candidates == self.agreeing && self.initial_pair_distinct
    }
}

const TERMINAL_WINDOW: usize = 4096;

pub fn terminal_uniqueness(
    x: &RelationSpec,
    scope: Scope,
    config: CandidateConfig,
) -> Result<TerminalReport> {
    let terminal = terminal_morphism(x);
    let mut sampler = InstanceSampler::new(config.seed, config.cap);
    let mut report = TerminalReport::default();
    let mut tries = 0;
    while report.candidates < config.count && tries < config.count * 20 {
        tries += 1;
        let mut fun = sampler.term();
        let Ok(images) = fun.eval_range(scope.domain) else {
            continue;
        };
        // widen the codomain to cover this candidate's images, within reason
        let limit = scope.codomain.max(TERMINAL_WINDOW);
        let mut need = images.iter().max().map_or(1, |&v| v as usize + 1);
        if need > limit {
            fun = FunExpr::compose(FunExpr::Mod(limit as u64), fun);
            need = limit;
        }
        let local = scope.with_codomain(scope.codomain.max(need));
        let candidate = Morphism::new(x.clone(), RelationSpec::IdN(1), fun);
        report.candidates += 1;
        if morphism_eq(&terminal, &candidate, local)? {
            report.agreeing += 1;
        }
    }
    let (zero, one) = initial_refutation(x);
    report.initial_pair_distinct =
        !morphism_eq(&zero, &one, scope.with_codomain(scope.codomain.max(2)))?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_suite_small() {
        let scope = Scope::new(8, 64);
        let t = RelationSpec::IdN(3);
        let r = RelationSpec::IdN(2);
        let s = RelationSpec::IdAll;
        let rho_r = Morphism::new(
            t.clone(),
            r,
            FunExpr::compose(FunExpr::Mod(2), FunExpr::Mod(3)),
        );
        let rho_s = Morphism::new(t, s, FunExpr::Mod(3));
        let report = product_laws(&rho_r, &rho_s, scope, CandidateConfig::default()).unwrap();
        assert!(report.holds(), "{report:?}");
        assert_eq!(report.candidates, 50);
        assert!(report.commuting >= 3, "{report:?}");
    }

    #[test]
    fn coproduct_suite_small() {
        let scope = Scope::new(8, 32);
        let t = RelationSpec::IdN(3);
        let rho_r = Morphism::new(RelationSpec::IdN(3), t.clone(), FunExpr::Id);
        let rho_s = Morphism::new(RelationSpec::IdAll, t, FunExpr::Const(2));
        let report = coproduct_laws(&rho_r, &rho_s, scope, CandidateConfig::default()).unwrap();
        assert!(report.holds(), "{report:?}");
        assert!(report.commuting >= 3, "{report:?}");
    }

    #[test]
    fn coequalizer_suite_small() {
        let scope = Scope::new(16, 32);
        let y = RelationSpec::from_pairs([(3, 5, 0), (7, 9, 4)]).unwrap();
        let alpha = Morphism::new(RelationSpec::IdAll, y.clone(), FunExpr::Mod(8));
        let beta = Morphism::new(
            RelationSpec::IdAll,
            y,
            FunExpr::compose(FunExpr::Mod(8), FunExpr::Succ),
        );
        let report = coequalizer_laws(&alpha, &beta, scope, CandidateConfig::default()).unwrap();
        assert!(report.holds(), "{report:?}");
        assert!(report.factor_coequalizing >= 2);
    }

    #[test]
    fn terminal_suite() {
        let report = terminal_uniqueness(
            &RelationSpec::IdN(3),
            Scope::new(4, 32),
            CandidateConfig::default(),
        )
        .unwrap();
        assert_eq!(report.candidates, 50);
        assert!(report.holds(), "{report:?}");
    }
}
