//! Collages, coslices, sieves and pushouts along sieve inclusions.
//!
//! The collage of a module `m : B -> A` is the category on the tagged
//! disjoint union of objects ("A:" part first, then "B:"), with homs
//!
//! ```text
//! hom(x,y) = A(x,y)   both in the A part
//!          = B(x,y)   both in the B part
//!          = m(x,y)   x in A, y in B
//!          = bottom   otherwise
//! ```
//!
//! Its A part is a sieve and its B part an opsieve, the injections are fully
//! faithful as equalities, and `i^* . j_*` recovers `m`. Pushouts along a
//! sieve inclusion have a closed-form hom with one coend case, and satisfy
//! the Beck-Chevalley equality `f_* . i^* = k^* . h_*`.

use std::collections::HashSet;
use std::sync::Arc;
use thiserror::Error;

use crate::category::{CategoryError, QCategory, QFunctor};
use crate::module::{compose, lower_star, upper_star, ModuleError, QModule};
use crate::quantale::QMatrix;

#[derive(Debug, Error)]
pub enum CollageError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("sieve precondition fails: hom({x},{a}) is not bottom")]
    NotASieve { x: String, a: String },
    #[error("'{0}' is not a full subcategory of the ambient category")]
    NotFullSubcategory(String),
}

/// A collage with its two injections. `gamma_holds` records the defining
/// 2-cell: the inequality `i_* . m <= j_*` of modules into the total.
#[derive(Debug, Clone)]
pub struct Collage {
    pub total: Arc<QCategory>,
    /// Injection of the module's target (the "A:" part).
    pub i: QFunctor,
    /// Injection of the module's source (the "B:" part).
    pub j: QFunctor,
    pub gamma_holds: bool,
}

/// Build the collage of `m : B -> A` with the four-case hom formula.
pub fn collage(m: &QModule) -> Collage {
    let a = m.target();
    let b = m.source();
    let q = m.base().clone();
    let na = a.len();
    let n = na + b.len();
    let mut objects = Vec::with_capacity(n);
    objects.extend(a.objects().iter().map(|o| format!("A:{o}")));
    objects.extend(b.objects().iter().map(|o| format!("B:{o}")));
    let hom = QMatrix::from_fn(n, n, |r, c| match (r < na, c < na) {
        (true, true) => a.hom_at(r, c),
        (false, false) => b.hom_at(r - na, c - na),
        (true, false) => m.get(r, c - na),
        (false, true) => q.bottom(),
    });
    let total = QCategory::new(q, objects, hom).expect("collage satisfies the category laws");
    let i = QFunctor::new(a.clone(), total.clone(), (0..na).collect())
        .expect("collage injection is a functor");
    let j = QFunctor::new(b.clone(), total.clone(), (na..n).collect())
        .expect("collage injection is a functor");
    // gamma: compose(lower_star(i), m) <= lower_star(j), entrywise.
    let lhs = compose(&lower_star(&i), m).expect("boundaries match by construction");
    let gamma_holds = crate::module::leq_2cell(&lhs, &lower_star(&j)).expect("same boundaries");
    Collage { total, i, j, gamma_holds }
}

/// Coslice of a span `A <-u- C -v-> B`: the collage of `u_* . v^*`, with the
/// A part holding `u`'s target and the B part `v`'s target.
pub fn coslice(u: &QFunctor, v: &QFunctor) -> Result<Collage, CollageError> {
    if u.source() != v.source() {
        return Err(CollageError::Module(ModuleError::BoundaryMismatch {
            context: "coslice needs a span with a shared source".into(),
        }));
    }
    let defining = compose(&lower_star(u), &upper_star(v))?;
    Ok(collage(&defining))
}

/// Is the full subcategory on `objs` a sieve in `x`: does it receive only
/// bottom homs from the outside?
pub fn is_sieve(x: &QCategory, objs: &[String]) -> Result<bool, CategoryError> {
    let inside = obj_set(x, objs)?;
    let q = x.base();
    for o in 0..x.len() {
        if inside.contains(&o) {
            continue;
        }
        for &a in &inside {
            if x.hom_at(o, a) != q.bottom() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Dual: does the part emit only bottom homs to the outside?
pub fn is_opsieve(x: &QCategory, objs: &[String]) -> Result<bool, CategoryError> {
    let inside = obj_set(x, objs)?;
    let q = x.base();
    for &b in &inside {
        for o in 0..x.len() {
            if !inside.contains(&o) && x.hom_at(b, o) != q.bottom() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn obj_set(x: &QCategory, objs: &[String]) -> Result<HashSet<usize>, CategoryError> {
    objs.iter().map(|o| x.object_index(o)).collect()
}

/// A pushout along a sieve inclusion: the pushout category `q`, the sieve
/// inclusion `k` of the other leg's target, and the comparison `h` from the
/// ambient category.
#[derive(Debug, Clone)]
pub struct SievePushout {
    pub q: Arc<QCategory>,
    pub k: QFunctor,
    pub h: QFunctor,
}

/// Push out `f : A -> Y` along the inclusion of `A` as a sieve in `x`.
///
/// `f`'s source must literally be the full subcategory of `x` on its
/// objects. The result has objects `X:` (those of `x` outside the sieve,
/// listed first) and `Y:`; its only nontrivial hom case is the coend
/// `q(w,z) = v_a x(a,z) (x) y(w, f a)` for `w` in the Y part and `z` in the
/// X part. `k` embeds `y` as a sieve, and `h` maps `x` objects to
/// themselves off the sieve and through `f` on it.
pub fn sieve_pushout(f: &QFunctor, x: &Arc<QCategory>) -> Result<SievePushout, CollageError> {
    let a = f.source();
    let y = f.target();
    if x.base() != y.base() {
        return Err(CollageError::Category(CategoryError::BaseMismatch {
            context: "pushout legs live over different quantales".into(),
        }));
    }
    // The sieve subset is the source of f, which must be full in x.
    let mut a_idx = Vec::with_capacity(a.len());
    for o in a.objects() {
        a_idx.push(x.object_index(o)?);
    }
    for (r, &xr) in a_idx.iter().enumerate() {
        for (c, &xc) in a_idx.iter().enumerate() {
            if a.hom_at(r, c) != x.hom_at(xr, xc) {
                return Err(CollageError::NotFullSubcategory(a.object(r).to_string()));
            }
        }
    }
    let in_a: HashSet<usize> = a_idx.iter().copied().collect();
    let q = x.base().clone();
    for o in 0..x.len() {
        if in_a.contains(&o) {
            continue;
        }
        for &s in &in_a {
            if x.hom_at(o, s) != q.bottom() {
                return Err(CollageError::NotASieve {
                    x: x.object(o).to_string(),
                    a: x.object(s).to_string(),
                });
            }
        }
    }

    let rest: Vec<usize> = (0..x.len()).filter(|o| !in_a.contains(o)).collect();
    let nr = rest.len();
    let n = nr + y.len();
    let mut objects = Vec::with_capacity(n);
    objects.extend(rest.iter().map(|&o| format!("X:{}", x.object(o))));
    objects.extend(y.objects().iter().map(|o| format!("Y:{o}")));
    let hom = QMatrix::from_fn(n, n, |r, c| match (r < nr, c < nr) {
        (true, true) => x.hom_at(rest[r], rest[c]),
        (false, false) => y.hom_at(r - nr, c - nr),
        // Coend case: from the Y part into the X remainder.
        (false, true) => q.join_all(
            (0..a.len()).map(|ai| q.tensor(x.hom_at(a_idx[ai], rest[c]), y.hom_at(r - nr, f.apply(ai)))),
        ),
        (true, false) => q.bottom(),
    });
    let pushout = QCategory::new(q, objects, hom).expect("pushout satisfies the category laws");
    let k = QFunctor::new(y.clone(), pushout.clone(), (nr..n).collect())
        .expect("pushout injection is a functor");
    let mut h_map = vec![0usize; x.len()];
    for (p, &o) in rest.iter().enumerate() {
        h_map[o] = p;
    }
    for (ai, &o) in a_idx.iter().enumerate() {
        h_map[o] = nr + f.apply(ai);
    }
    let h = QFunctor::new(x.clone(), pushout, h_map).expect("pushout comparison is a functor");
    Ok(SievePushout { q: k.target().clone(), k, h })
}

/// Beck-Chevalley equality for a pushout square: `f_* . i^* = k^* . h_*` as
/// modules `X -> Y`. Returns the first differing entry on failure.
pub fn beck_chevalley(
    f: &QFunctor,
    i: &QFunctor,
    po: &SievePushout,
) -> Result<(bool, Option<(String, String)>), ModuleError> {
    let lhs = compose(&lower_star(f), &upper_star(i))?;
    let rhs = compose(&upper_star(&po.k), &lower_star(&po.h))?;
    match lhs.entries().first_diff(rhs.entries()) {
        None => Ok((true, None)),
        Some((r, c)) => Ok((
            false,
            Some((lhs.target().object(r).to_string(), lhs.source().object(c).to_string())),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::unit_category;
    use crate::module::{identity_module, leq_2cell, zero_module, QModule};
    use crate::quantale::bool_quantale;

    fn arrow_preorder() -> Arc<QCategory> {
        let q = bool_quantale();
        let hom = QMatrix::from_fn(2, 2, |r, c| if r <= c { q.unit() } else { q.bottom() });
        QCategory::new(q, vec!["a".into(), "b".into()], hom).unwrap()
    }

    #[test]
    fn collage_of_zero_is_the_coproduct() {
        let a = arrow_preorder();
        let u = unit_category(a.base().clone());
        let z = zero_module(u.clone(), a.clone()).unwrap();
        let col = collage(&z);
        let (cop, _, _) = crate::category::coproduct(&a, &u).unwrap();
        let retagged = cop
            .rename(|o| {
                o.strip_prefix("L:")
                    .map(|s| format!("A:{s}"))
                    .unwrap_or_else(|| format!("B:{}", o.strip_prefix("R:").unwrap()))
            })
            .unwrap();
        assert_eq!(*col.total, *retagged);
        assert!(col.gamma_holds);
    }

    #[test]
    fn collage_of_unit_module_is_the_arrow() {
        // A = B = unit over bool, m(*,*) = 1: two objects with A:* below B:*.
        let q = bool_quantale();
        let u = unit_category(q.clone());
        let m = QModule::new(u.clone(), u.clone(), QMatrix::filled(1, 1, q.unit())).unwrap();
        let col = collage(&m);
        assert_eq!(col.total.objects(), ["A:*", "B:*"]);
        assert_eq!(col.total.hom_at(0, 1), q.unit());
        assert_eq!(col.total.hom_at(1, 0), q.bottom());
    }

    #[test]
    fn injections_fully_faithful_and_module_recovered() {
        let a = arrow_preorder();
        let u = unit_category(a.base().clone());
        // m : u -> a with m(x,*) = hom(x, b).
        let f = QFunctor::from_names(u.clone(), a.clone(), [("*", "b")]).unwrap();
        let m = lower_star(&f);
        let col = collage(&m);
        for r in 0..a.len() {
            for c in 0..a.len() {
                assert_eq!(col.total.hom_at(col.i.apply(r), col.i.apply(c)), a.hom_at(r, c));
            }
        }
        let recovered = compose(&upper_star(&col.i), &lower_star(&col.j)).unwrap();
        assert_eq!(recovered.entries(), m.entries());
        // Parts: the A part is a sieve, the B part an opsieve.
        assert!(is_sieve(&col.total, &col.i.image()).unwrap());
        assert!(is_opsieve(&col.total, &col.j.image()).unwrap());
    }

    #[test]
    fn sieve_checks_on_the_arrow_preorder() {
        let a = arrow_preorder();
        assert!(is_sieve(&a, &["a".into()]).unwrap());
        assert!(!is_sieve(&a, &["b".into()]).unwrap());
        assert!(is_opsieve(&a, &["b".into()]).unwrap());
        assert!(!is_opsieve(&a, &["a".into()]).unwrap());
        assert!(is_sieve(&a, &["a".into(), "b".into()]).unwrap());
        assert!(is_opsieve(&a, &[]).unwrap());
        assert!(matches!(
            is_sieve(&a, &["zzz".into()]),
            Err(CategoryError::UnknownObject { .. })
        ));
    }

    #[test]
    fn coslice_recovers_defining_module() {
        let a = arrow_preorder();
        let u = unit_category(a.base().clone());
        let f = QFunctor::from_names(u.clone(), a.clone(), [("*", "a")]).unwrap();
        let id = QFunctor::identity(u.clone());
        let col = coslice(&f, &id).unwrap();
        let defining = compose(&lower_star(&f), &upper_star(&id)).unwrap();
        let recovered = compose(&upper_star(&col.i), &lower_star(&col.j)).unwrap();
        assert_eq!(recovered.entries(), defining.entries());
        // v = identity: the coslice is the collage of f_*.
        let plain = collage(&lower_star(&f));
        assert_eq!(*col.total, *plain.total);
    }

    #[test]
    fn coslice_of_identities_on_unit_is_the_arrow() {
        let u = unit_category(bool_quantale());
        let id = QFunctor::identity(u);
        let col = coslice(&id, &id).unwrap();
        assert_eq!(col.total.objects(), ["A:*", "B:*"]);
        assert_eq!(col.total.hom_at(0, 1), 1);
        assert_eq!(col.total.hom_at(1, 0), 0);
    }

    #[test]
    fn pushout_along_identity_sieve_gives_the_other_leg() {
        // A = X: the formula collapses to Y.
        let a = arrow_preorder();
        let u = unit_category(a.base().clone());
        let sub = crate::category::full_subcategory(&a, &["a".into(), "b".into()]).unwrap();
        let f = QFunctor::from_names(sub, u.clone(), [("a", "*"), ("b", "*")]).unwrap();
        let po = sieve_pushout(&f, &a).unwrap();
        let expect = u.rename(|o| format!("Y:{o}")).unwrap();
        assert_eq!(*po.q, *expect);
    }

    #[test]
    fn pushout_along_identity_functor_recovers_ambient() {
        // f = identity on the sieve part: q is x up to retagging.
        let a = arrow_preorder();
        let sieve = crate::category::full_subcategory(&a, &["a".into()]).unwrap();
        let f = QFunctor::identity(sieve);
        let po = sieve_pushout(&f, &a).unwrap();
        assert_eq!(po.q.objects(), ["X:b", "Y:a"]);
        // hom(Y:a, X:b) = v_a hom(a,b)(x)hom(a,a) = hom(a,b) = 1; none back.
        assert_eq!(po.q.hom_at(1, 0), 1);
        assert_eq!(po.q.hom_at(0, 1), 0);
        let (ok, _) = beck_chevalley(&f, &f_inclusion(&a, &["a"]), &po).unwrap();
        assert!(ok);
        assert!(is_sieve(&po.q, &po.k.image()).unwrap());
    }

    #[test]
    fn pushout_rejects_non_sieve() {
        let a = arrow_preorder();
        let sub = crate::category::full_subcategory(&a, &["b".into()]).unwrap();
        let u = unit_category(a.base().clone());
        let f = QFunctor::from_names(sub, u, [("b", "*")]).unwrap();
        assert!(matches!(sieve_pushout(&f, &a), Err(CollageError::NotASieve { .. })));
    }

    fn f_inclusion(x: &Arc<QCategory>, objs: &[&str]) -> QFunctor {
        let names: Vec<String> = objs.iter().map(|s| s.to_string()).collect();
        let sub = crate::category::full_subcategory(x, &names).unwrap();
        let pairs: Vec<(&str, &str)> = objs.iter().map(|&o| (o, o)).collect();
        QFunctor::from_names(sub, x.clone(), pairs).unwrap()
    }

    #[test]
    fn gamma_is_the_right_action_inequality() {
        let a = arrow_preorder();
        let u = unit_category(a.base().clone());
        let f = QFunctor::from_names(u.clone(), a.clone(), [("*", "b")]).unwrap();
        let col = collage(&lower_star(&f));
        let lhs = compose(&lower_star(&col.i), &lower_star(&f)).unwrap();
        assert!(leq_2cell(&lhs, &lower_star(&col.j)).unwrap());
        let _ = identity_module(&a);
    }
}
