use std::collections::BTreeMap;

use crate::funlang::FunExpr;
use crate::rel::{approximant, Approximant, RelationSpec};

use super::{CategoryError, Morphism, Result, Scope, Verdict, Witness};

/// Source and target approximants plus the images of `[0, n)`.
struct Frame {
    scope: Scope,
    source: Approximant,
    target: Approximant,
    images: Vec<u64>,
}

impl Frame {
    fn new(
        f: &FunExpr,
        source: &RelationSpec,
        target: &RelationSpec,
        scope: Scope,
    ) -> Result<Self> {
        let scope = scope.validate()?;
        Ok(Frame {
            scope,
            source: approximant(source, scope.stage, scope.domain)?,
            target: approximant(target, scope.stage, scope.codomain)?,
            images: f.eval_range(scope.domain)?,
        })
    }

    fn in_range(&self, x: usize) -> Option<u64> {
        let v = self.images[x];
        self.target
            .contains(v)
            .then(|| self.target.rep_unchecked(v))
    }

    /// Smallest codomain bound covering every image, if the current one does not.
    fn need(&self) -> Option<usize> {
        let max = *self.images.iter().max()?;
        (max >= self.target.bound() as u64).then(|| (max + 1) as usize)
    }

    fn unknown_or_ok(&self) -> Verdict {
        match self.need() {
            Some(need_n) => Verdict::Unknown { need_n },
            None => Verdict::Ok(self.scope),
        }
    }

    fn preserving(&self) -> Verdict {
        // first in-range point of each source class
        let mut anchor: BTreeMap<u64, usize> = BTreeMap::new();
        for x in 0..self.scope.domain {
            let Some(image_class) = self.in_range(x) else {
                continue;
            };
            let class = self.source.rep_unchecked(x as u64);
            match anchor.get(&class) {
                None => {
                    anchor.insert(class, x);
                }
                Some(&a) => {
                    if self.in_range(a) != Some(image_class) {
                        return Verdict::Counterexample(Witness::Pair {
                            x: a as u64,
                            y: x as u64,
                        });
                    }
                }
            }
        }
        self.unknown_or_ok()
    }

    fn injective(&self) -> Verdict {
        // least source class seen for each image class
        let mut first: BTreeMap<u64, u64> = BTreeMap::new();
        for x in 0..self.scope.domain {
            let Some(image_class) = self.in_range(x) else {
                continue;
            };
            let class = self.source.rep_unchecked(x as u64);
            match first.get(&image_class) {
                None => {
                    first.insert(image_class, class);
                }
                Some(&c) if c != class => {
                    return Verdict::Counterexample(Witness::Pair { x: c, y: class });
                }
                Some(_) => {}
            }
        }
        self.unknown_or_ok()
    }

    fn surjective(&self) -> Verdict {
        let hit: std::collections::BTreeSet<u64> = (0..self.scope.domain)
            .filter_map(|x| self.in_range(x))
            .collect();
        let missed: Vec<u64> = self
            .target
            .canonical_reps()
            .into_iter()
            .filter(|r| !hit.contains(r))
            .collect();
        if missed.is_empty() {
            Verdict::Ok(self.scope)
        } else if let Some(need_n) = self.need() {
            Verdict::Unknown { need_n }
        } else {
            Verdict::Counterexample(Witness::Missed(missed))
        }
    }
}

/// Whether `x R y => f(x) S f(y)` for all `x, y < n` at stage `s`.
pub fn check_preserving(
    f: &FunExpr,
    source: &RelationSpec,
    target: &RelationSpec,
    scope: Scope,
) -> Result<Verdict> {
    Ok(Frame::new(f, source, target, scope)?.preserving())
}

/// Whether `f(x) S g(x)` for every `x < n`: the two induced class maps agree.
pub fn morphism_eq(a: &Morphism, b: &Morphism, scope: Scope) -> Result<bool> {
    if a.source != b.source || a.target != b.target {
        return Err(CategoryError::Mismatch(
            "morphisms have different source or target".into(),
        ));
    }
    a.require(scope)?;
    b.require(scope)?;
    let target = approximant(&a.target, scope.stage, scope.codomain)?;
    for x in 0..scope.domain as u64 {
        let (u, v) = (a.fun.eval(x)?, b.fun.eval(x)?);
        let need = u.max(v);
        if !target.contains(need) {
            return Err(CategoryError::ScopeFault {
                need_n: need as usize + 1,
            });
        }
        if target.rep_unchecked(u) != target.rep_unchecked(v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `g . f`; `f` is checked at `scope` and `g` on `f`'s codomain window.
pub fn compose(g: &Morphism, f: &Morphism, scope: Scope) -> Result<Morphism> {
    if f.target != g.source {
        return Err(CategoryError::Mismatch(
            "target of the inner morphism differs from the source of the outer".into(),
        ));
    }
    f.require(scope)?;
    // g only needs to be defined where f lands; images of g past the window are not a fault here
    if let Verdict::Counterexample(witness) =
        check_preserving(&g.fun, &g.source, &g.target, scope.downstream())?
    {
        return Err(CategoryError::NotPreserving {
            fun: g.fun.to_string(),
            witness,
        });
    }
    Morphism::new(
        f.source.clone(),
        g.target.clone(),
        FunExpr::compose(g.fun.clone(), f.fun.clone()),
    )
    .verified(scope)
}

#[derive(Debug, Clone)]
pub struct ProductCone {
    pub spec: RelationSpec,
    pub left: Morphism,
    pub right: Morphism,
}

/// `R x S` with the projections induced by the Cantor projections.
pub fn product(r: &RelationSpec, s: &RelationSpec) -> ProductCone {
    let spec = RelationSpec::product(r.clone(), s.clone());
    ProductCone {
        left: Morphism::new(spec.clone(), r.clone(), FunExpr::Proj0),
        right: Morphism::new(spec.clone(), s.clone(), FunExpr::Proj1),
        spec,
    }
}

/// `x -> <f_R(x), f_S(x)>` into the product of the two targets.
pub fn pair_mediator(rho_r: &Morphism, rho_s: &Morphism) -> Result<Morphism> {
    if rho_r.source != rho_s.source {
        return Err(CategoryError::Mismatch(
            "legs have different sources".into(),
        ));
    }
    Ok(Morphism::new(
        rho_r.source.clone(),
        RelationSpec::product(rho_r.target.clone(), rho_s.target.clone()),
        FunExpr::pair(rho_r.fun.clone(), rho_s.fun.clone()),
    ))
}

#[derive(Debug, Clone)]
pub struct CoproductCocone {
    pub spec: RelationSpec,
    pub left: Morphism,
    pub right: Morphism,
}

/// The uniform join with injections `2x` and `2x + 1`.
pub fn coproduct(r: &RelationSpec, s: &RelationSpec) -> CoproductCocone {
    let spec = RelationSpec::coproduct(r.clone(), s.clone());
    CoproductCocone {
        left: Morphism::new(r.clone(), spec.clone(), FunExpr::Double),
        right: Morphism::new(s.clone(), spec.clone(), FunExpr::DoublePlus1),
        spec,
    }
}

/// `2y -> f_R(y)`, `2y + 1 -> f_S(y)` out of the join of the two sources.
pub fn copair_mediator(rho_r: &Morphism, rho_s: &Morphism) -> Result<Morphism> {
    if rho_r.target != rho_s.target {
        return Err(CategoryError::Mismatch(
            "legs have different targets".into(),
        ));
    }
    Ok(Morphism::new(
        RelationSpec::coproduct(rho_r.source.clone(), rho_s.source.clone()),
        rho_r.target.clone(),
        FunExpr::parity_split(rho_r.fun.clone(), rho_s.fun.clone()),
    ))
}

#[derive(Debug, Clone)]
pub struct Coequalizer {
    pub spec: RelationSpec,
    /// Induced by the identity from the common target onto `spec`.
    pub gamma: Morphism,
}

/// Quotient of the common target by the pairs `(f1(x), f2(x))`.
pub fn coequalizer(alpha: &Morphism, beta: &Morphism) -> Result<Coequalizer> {
    if alpha.source != beta.source || alpha.target != beta.target {
        return Err(CategoryError::Mismatch(
            "parallel morphisms must share source and target".into(),
        ));
    }
    let spec = RelationSpec::coequalizer(alpha.target.clone(), alpha.fun.clone(), beta.fun.clone());
    Ok(Coequalizer {
        gamma: Morphism::new(alpha.target.clone(), spec.clone(), FunExpr::Id),
        spec,
    })
}

/// The parallel pair `Id -> Id_2` induced by the constants 0 and 1.
#[derive(Debug, Clone)]
pub struct EqualizerWitness {
    pub left: Morphism,
    pub right: Morphism,
    pub checked: usize,
    /// No `x` below `checked` has `left(x)` related to `right(x)`.
    pub holds: bool,
}

pub fn equalizer_refutation(n: usize) -> Result<EqualizerWitness> {
    let target = RelationSpec::IdN(2);
    let left = Morphism::new(RelationSpec::IdAll, target.clone(), FunExpr::Const(0));
    let right = Morphism::new(RelationSpec::IdAll, target.clone(), FunExpr::Const(1));
    let classes = approximant(&target, 0, 2)?;
    let mut holds = true;
    for x in 0..n as u64 {
        let (u, v) = (left.fun.eval(x)?, right.fun.eval(x)?);
        if classes.related(u, v)? {
            holds = false;
            break;
        }
    }
    Ok(EqualizerWitness {
        left,
        right,
        checked: n,
        holds,
    })
}

/// The constant map into the one-class relation.
pub fn terminal_morphism(r: &RelationSpec) -> Morphism {
    Morphism::new(r.clone(), RelationSpec::IdN(1), FunExpr::Const(0))
}

/// Two morphisms `X -> Id_2` that never agree.
pub fn initial_refutation(x: &RelationSpec) -> (Morphism, Morphism) {
    (
        Morphism::new(x.clone(), RelationSpec::IdN(2), FunExpr::Const(0)),
        Morphism::new(x.clone(), RelationSpec::IdN(2), FunExpr::Const(1)),
    )
}

/// Whether `f(x) S f(y) => x R y` on the scope; witnesses are least class members.
pub fn injective_at(alpha: &Morphism, scope: Scope) -> Result<Verdict> {
    alpha.require(scope)?;
    Ok(Frame::new(&alpha.fun, &alpha.source, &alpha.target, scope)?.injective())
}

/// Whether every target class in `[0, m)` contains an image of some `x < n`.
pub fn surjective_at(alpha: &Morphism, scope: Scope) -> Result<Verdict> {
    alpha.require(scope)?;
    Ok(Frame::new(&alpha.fun, &alpha.source, &alpha.target, scope)?.surjective())
}

/// Constant maps from `source` (default `Id`) that `gamma` cannot tell apart.
pub fn mono_separation_pair(
    gamma: &Morphism,
    scope: Scope,
    source: Option<&RelationSpec>,
) -> Result<Option<(Morphism, Morphism)>> {
    let Verdict::Counterexample(Witness::Pair { x, y }) = injective_at(gamma, scope)? else {
        return Ok(None);
    };
    let source = source.cloned().unwrap_or(RelationSpec::IdAll);
    let first = Morphism::new(source.clone(), gamma.source.clone(), FunExpr::Const(x));
    let second = Morphism::new(source, gamma.source.clone(), FunExpr::Const(y));
    Ok(Some((first, second)))
}

/// `x R y <=> f(x) S f(y)` on the scope.
pub fn reduction_check(
    f: &FunExpr,
    source: &RelationSpec,
    target: &RelationSpec,
    scope: Scope,
) -> Result<Verdict> {
    let frame = Frame::new(f, source, target, scope)?;
    let forward = frame.preserving();
    if let Verdict::Counterexample(_) = forward {
        return Ok(forward);
    }
    let backward = frame.injective();
    Ok(match (forward, backward) {
        (_, cex @ Verdict::Counterexample(_)) => cex,
        (Verdict::Ok(_), Verdict::Ok(scope)) => Verdict::Ok(scope),
        (Verdict::Unknown { need_n }, _) | (_, Verdict::Unknown { need_n }) => {
            Verdict::Unknown { need_n }
        }
        (_, other) => other,
    })
}

/// `x ~ y` iff `labels(x) = labels(y)`.
pub fn kernel_of_numbering(labels: &FunExpr) -> RelationSpec {
    RelationSpec::Kernel(labels.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funlang::parse;
    use crate::rel::cantor_pair;

    fn m(source: RelationSpec, target: RelationSpec, f: FunExpr) -> Morphism {
        Morphism::new(source, target, f)
    }

    #[test]
    fn preserving_examples() {
        let sc = Scope::new(0, 16).with_codomain(32);
        assert!(check_preserving(
            &FunExpr::Double,
            &RelationSpec::IdAll,
            &RelationSpec::IdAll,
            sc
        )
        .unwrap()
        .is_ok());
        let sc = Scope::new(0, 16);
        assert_eq!(
            check_preserving(
                &FunExpr::Id,
                &RelationSpec::IdN(2),
                &RelationSpec::IdN(4),
                sc
            )
            .unwrap(),
            Verdict::Counterexample(Witness::Pair { x: 0, y: 2 })
        );
        assert!(check_preserving(
            &FunExpr::Id,
            &RelationSpec::IdN(4),
            &RelationSpec::IdN(2),
            sc
        )
        .unwrap()
        .is_ok());
    }

    #[test]
    fn out_of_range_images_are_unknown() {
        let sc = Scope::new(0, 16);
        assert_eq!(
            check_preserving(
                &FunExpr::Double,
                &RelationSpec::IdAll,
                &RelationSpec::IdAll,
                sc
            )
            .unwrap(),
            Verdict::Unknown { need_n: 31 }
        );
        // a counterexample among in-range points still wins
        assert!(matches!(
            check_preserving(
                &FunExpr::Double,
                &RelationSpec::IdN(3),
                &RelationSpec::IdAll,
                sc
            )
            .unwrap(),
            Verdict::Counterexample(_)
        ));
    }

    #[test]
    fn induced_map_equality() {
        let sc = Scope::new(0, 16);
        let one = RelationSpec::IdN(1);
        assert!(morphism_eq(
            &m(one.clone(), one.clone(), FunExpr::Id),
            &m(one.clone(), one.clone(), FunExpr::Succ),
            sc.with_codomain(17)
        )
        .unwrap());
        let two = RelationSpec::IdN(2);
        assert!(!morphism_eq(
            &m(RelationSpec::IdAll, two.clone(), FunExpr::Const(0)),
            &m(RelationSpec::IdAll, two.clone(), FunExpr::Const(1)),
            sc
        )
        .unwrap());
        let sc = Scope::new(0, 32).with_codomain(64);
        let patched = parse("compose(table{0->2} else double, id)").unwrap();
        assert!(morphism_eq(
            &m(RelationSpec::IdAll, two.clone(), FunExpr::Double),
            &m(RelationSpec::IdAll, two.clone(), patched),
            sc
        )
        .unwrap());
        let odd_patch = parse("table{0->3} else double").unwrap();
        assert!(!morphism_eq(
            &m(RelationSpec::IdAll, two.clone(), FunExpr::Double),
            &m(RelationSpec::IdAll, two.clone(), odd_patch),
            sc
        )
        .unwrap());
    }

    #[test]
    fn morphism_eq_errors() {
        let sc = Scope::new(0, 8);
        let a = m(RelationSpec::IdAll, RelationSpec::IdAll, FunExpr::Id);
        let b = m(RelationSpec::IdN(2), RelationSpec::IdAll, FunExpr::Id);
        assert!(matches!(
            morphism_eq(&a, &b, sc),
            Err(CategoryError::Mismatch(_))
        ));
        let c = m(RelationSpec::IdAll, RelationSpec::IdAll, FunExpr::Succ);
        assert_eq!(
            morphism_eq(&a, &c, sc),
            Err(CategoryError::ScopeFault { need_n: 9 })
        );
    }

    #[test]
    fn composition() {
        let sc = Scope::new(0, 8).with_codomain(32);
        let id = RelationSpec::IdAll;
        let succ = m(id.clone(), id.clone(), FunExpr::Succ);
        let double = m(id.clone(), id.clone(), FunExpr::Double);
        let c = compose(&double, &succ, sc).unwrap();
        assert_eq!(c.fun.eval(3), Ok(8));
        assert_eq!(c.verified_scope(), Some(sc));
        let ident = m(id.clone(), id.clone(), FunExpr::Id);
        assert!(morphism_eq(&compose(&ident, &succ, sc).unwrap(), &succ, sc).unwrap());
        let wrong = m(RelationSpec::IdN(2), id.clone(), FunExpr::Id);
        assert!(matches!(
            compose(&wrong, &succ, sc),
            Err(CategoryError::Mismatch(_))
        ));
    }

    #[test]
    fn product_construction() {
        let cone = product(&RelationSpec::IdN(2), &RelationSpec::IdN(3));
        assert_eq!(approximant(&cone.spec, 0, 1000).unwrap().classes_count(), 6);
        let id = RelationSpec::IdAll;
        let med = pair_mediator(
            &m(id.clone(), id.clone(), FunExpr::Id),
            &m(id.clone(), id.clone(), FunExpr::Id),
        )
        .unwrap();
        assert_eq!(med.fun.eval(3), Ok(cantor_pair(3, 3).unwrap()));
        let med = pair_mediator(
            &m(id.clone(), id.clone(), FunExpr::Const(0)),
            &m(id.clone(), id.clone(), FunExpr::Const(1)),
        )
        .unwrap();
        assert_eq!(med.fun.eval(17), Ok(cantor_pair(0, 1).unwrap()));
        assert!(pair_mediator(
            &m(id.clone(), id.clone(), FunExpr::Id),
            &m(RelationSpec::IdN(2), id.clone(), FunExpr::Id)
        )
        .is_err());
    }

    #[test]
    fn product_with_terminal_factor() {
        // S -> Id_1 x S via <0, x> is injective and onto at scope
        let s = RelationSpec::IdN(3);
        let target = RelationSpec::product(RelationSpec::IdN(1), s.clone());
        let mediator = m(
            s.clone(),
            target,
            FunExpr::pair(FunExpr::Const(0), FunExpr::Id),
        );
        let sc = Scope::new(0, 10).with_codomain(64);
        assert!(injective_at(&mediator, sc).unwrap().is_ok());
        assert!(surjective_at(&mediator, sc).unwrap().is_ok());
    }

    #[test]
    fn coproduct_construction() {
        let one = RelationSpec::IdN(1);
        let cocone = coproduct(&one, &one);
        assert_eq!(
            approximant(&cocone.spec, 0, 8).unwrap().classes(),
            vec![vec![0, 2, 4, 6], vec![1, 3, 5, 7]]
        );
        let three = coproduct(&RelationSpec::IdN(3), &RelationSpec::IdAll);
        let sc = Scope::new(0, 16).with_codomain(32);
        assert!(injective_at(&three.left, sc).unwrap().is_ok());
        let id = RelationSpec::IdAll;
        let copair = copair_mediator(
            &m(id.clone(), id.clone(), FunExpr::Id),
            &m(id.clone(), id.clone(), FunExpr::Id),
        )
        .unwrap();
        for x in 0..32 {
            assert_eq!(copair.fun.eval(2 * x), Ok(x));
            assert_eq!(copair.fun.eval(2 * x + 1), Ok(x));
        }
        let constant = copair_mediator(
            &m(id.clone(), id.clone(), FunExpr::Const(0)),
            &m(id.clone(), id.clone(), FunExpr::Const(0)),
        )
        .unwrap();
        assert!((0..64).all(|x| constant.fun.eval(x) == Ok(0)));
    }

    #[test]
    fn coequalizer_of_equal_pair_is_target() {
        let y = RelationSpec::from_pairs([(1, 4, 0), (4, 6, 2)]).unwrap();
        let a = m(RelationSpec::IdAll, y.clone(), FunExpr::Mod(5));
        let coeq = coequalizer(&a, &a).unwrap();
        for s in [0, 3, 9] {
            assert!(approximant(&coeq.spec, s, 12)
                .unwrap()
                .same_partition(&approximant(&y, s, 12).unwrap()));
        }
        let b = m(RelationSpec::IdAll, RelationSpec::IdAll, FunExpr::Const(0));
        let id = m(RelationSpec::IdAll, RelationSpec::IdAll, FunExpr::Id);
        let coeq = coequalizer(&b, &id).unwrap();
        assert_eq!(approximant(&coeq.spec, 16, 16).unwrap().classes_count(), 1);
        assert!(coequalizer(&a, &b).is_err());
    }

    #[test]
    fn equalizer_witness() {
        let w = equalizer_refutation(10_000).unwrap();
        assert!(w.holds);
        assert!((0..256).all(|x| w.left.fun.eval(x) == Ok(0) && w.right.fun.eval(x) == Ok(1)));
        for s in [0, 5] {
            assert!(!crate::rel::related_at(&RelationSpec::IdN(2), s, 256, 0, 1).unwrap());
        }
    }

    #[test]
    fn terminal_and_initial() {
        let sc = Scope::new(0, 16).with_codomain(64);
        let t = terminal_morphism(&RelationSpec::IdAll);
        for f in [FunExpr::Id, FunExpr::Succ, FunExpr::Double] {
            let other = m(RelationSpec::IdAll, RelationSpec::IdN(1), f);
            assert!(morphism_eq(&t, &other, sc).unwrap());
        }
        for x in [RelationSpec::IdAll, RelationSpec::IdN(1)] {
            let (a, b) = initial_refutation(&x);
            assert!(!morphism_eq(&a, &b, Scope::new(0, 4)).unwrap());
        }
    }

    #[test]
    fn injectivity_and_surjectivity() {
        let sc = Scope::new(0, 16).with_codomain(32);
        let double = m(RelationSpec::IdAll, RelationSpec::IdAll, FunExpr::Double);
        assert!(injective_at(&double, sc).unwrap().is_ok());
        assert_eq!(
            surjective_at(&double, Scope::new(0, 2).with_codomain(3)).unwrap(),
            Verdict::Counterexample(Witness::Missed(vec![1]))
        );
        let collapse = m(RelationSpec::IdN(4), RelationSpec::IdN(2), FunExpr::Id);
        assert_eq!(
            injective_at(&collapse, Scope::new(0, 16)).unwrap(),
            Verdict::Counterexample(Witness::Pair { x: 0, y: 2 })
        );
        // not preserving is an error, not a verdict
        let bad = m(RelationSpec::IdN(2), RelationSpec::IdN(4), FunExpr::Id);
        assert!(injective_at(&bad, Scope::new(0, 16)).is_err());
    }

    #[test]
    fn separation_pairs() {
        let sc = Scope::new(0, 16);
        let collapse = m(RelationSpec::IdN(4), RelationSpec::IdN(2), FunExpr::Id);
        let (a, b) = mono_separation_pair(&collapse, sc, None).unwrap().unwrap();
        assert_eq!(
            (a.fun.clone(), b.fun.clone()),
            (FunExpr::Const(0), FunExpr::Const(2))
        );
        let (ga, gb) = (
            compose(&collapse, &a, sc).unwrap(),
            compose(&collapse, &b, sc).unwrap(),
        );
        assert!(morphism_eq(&ga, &gb, sc).unwrap());
        assert!(!morphism_eq(&a, &b, sc).unwrap());

        let constant = m(RelationSpec::IdAll, RelationSpec::IdAll, FunExpr::Const(0));
        let (a, b) = mono_separation_pair(&constant, sc, None).unwrap().unwrap();
        assert_eq!((a.fun, b.fun), (FunExpr::Const(0), FunExpr::Const(1)));

        let double = m(RelationSpec::IdAll, RelationSpec::IdAll, FunExpr::Double);
        assert!(mono_separation_pair(&double, sc.with_codomain(32), None)
            .unwrap()
            .is_none());
    }

    #[test]
    fn reductions() {
        let sc = Scope::new(0, 16);
        assert_eq!(
            reduction_check(
                &FunExpr::Id,
                &RelationSpec::IdN(4),
                &RelationSpec::IdN(2),
                sc
            )
            .unwrap(),
            Verdict::Counterexample(Witness::Pair { x: 0, y: 2 })
        );
        assert!(reduction_check(
            &FunExpr::Double,
            &RelationSpec::IdAll,
            &RelationSpec::IdAll,
            sc.with_codomain(32)
        )
        .unwrap()
        .is_ok());
        let join = RelationSpec::coproduct(RelationSpec::IdAll, RelationSpec::IdN(1));
        let f = parse("mul(const 2, id)").unwrap();
        assert!(reduction_check(
            &f,
            &RelationSpec::IdAll,
            &join,
            Scope::new(0, 64).with_codomain(128)
        )
        .unwrap()
        .is_ok());
        // odd images all land in one class
        assert!(!reduction_check(
            &FunExpr::DoublePlus1,
            &RelationSpec::IdAll,
            &join,
            Scope::new(0, 64).with_codomain(128)
        )
        .unwrap()
        .is_ok());
    }

    #[test]
    fn kernels() {
        let n = 64;
        let same = |labels: FunExpr, other: RelationSpec| {
            approximant(&kernel_of_numbering(&labels), 0, n)
                .unwrap()
                .same_partition(&approximant(&other, 0, n).unwrap())
        };
        assert!(same(FunExpr::Mod(3), RelationSpec::IdN(3)));
        assert!(same(FunExpr::Const(0), RelationSpec::IdN(1)));
        assert!(same(FunExpr::Id, RelationSpec::IdAll));
    }
}
