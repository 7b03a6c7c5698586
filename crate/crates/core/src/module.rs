//! Modules (profunctors) between enriched categories and their calculus.
//!
//! A module `m : B -> A` is a matrix of hom values `m(a,b)`, contravariant
//! in `a` and covariant in `b`, compatible with both category actions.
//! Composition is the coend formula, which over a quantale is a join of
//! tensors:
//!
//! ```text
//! (m . n)(a,c) = v_b  n(b,c) (x) m(a,b)
//! ```
//!
//! Entry convention throughout: `entries(a, b)` has the *target* object `a`
//! as row and the *source* object `b` as column, so `m(a,b)` reads as a
//! generalised hom from `a` to `b`. All matrix products below are spelled
//! against this convention; the test suite keeps an orientation canary.
//! Two-cells are not reified: the entrywise order [`leq_2cell`] is the sole
//! 2-morphism interface.

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

use crate::category::{tensor_product, QCategory, QFunctor};
use crate::quantale::{QMatrix, Quantale};

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("malformed module: {msg}")]
    Malformed { msg: String },
    #[error("module violates action laws:\n{report}")]
    Laws { report: ModuleReport },
    #[error("boundary mismatch: {context}")]
    BoundaryMismatch { context: String },
    #[error("base quantale mismatch: {context}")]
    BaseMismatch { context: String },
}

/// A violated action law with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleLaw {
    /// `hom_A(a',a) (x) m(a,b) <= m(a',b)` fails.
    LeftAction { a2: String, a: String, b: String },
    /// `hom_B(b,b') (x) m(a,b) <= m(a,b')` fails.
    RightAction { a: String, b: String, b2: String },
}

impl fmt::Display for ModuleLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLaw::LeftAction { a2, a, b } => {
                write!(f, "left action fails at ({a2},{a};{b})")
            }
            ModuleLaw::RightAction { a, b, b2 } => {
                write!(f, "right action fails at ({a};{b},{b2})")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ModuleReport {
    pub violations: Vec<ModuleLaw>,
}

impl ModuleReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ModuleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// A module `source -> target` with entries indexed `(target obj, source obj)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QModule {
    source: Arc<QCategory>,
    target: Arc<QCategory>,
    entries: QMatrix,
}

/// Check both action inequalities, with witnesses by object names.
pub fn validate_module(
    source: &QCategory,
    target: &QCategory,
    entries: &QMatrix,
) -> Result<ModuleReport, ModuleError> {
    if entries.rows() != target.len() || entries.cols() != source.len() {
        return Err(ModuleError::Malformed {
            msg: format!(
                "entry matrix is {}x{}, expected {}x{} (target rows, source columns)",
                entries.rows(),
                entries.cols(),
                target.len(),
                source.len()
            ),
        });
    }
    let q = target.base();
    for a in 0..target.len() {
        for b in 0..source.len() {
            if entries.get(a, b) >= q.size() {
                return Err(ModuleError::Malformed {
                    msg: format!(
                        "entry ({},{}) is outside the carrier",
                        target.object(a),
                        source.object(b)
                    ),
                });
            }
        }
    }
    let mut violations = Vec::new();
    for a in 0..target.len() {
        for b in 0..source.len() {
            let m_ab = entries.get(a, b);
            for a2 in 0..target.len() {
                if !q.leq(q.tensor(target.hom_at(a2, a), m_ab), entries.get(a2, b)) {
                    violations.push(ModuleLaw::LeftAction {
                        a2: target.object(a2).to_string(),
                        a: target.object(a).to_string(),
                        b: source.object(b).to_string(),
                    });
                }
            }
            for b2 in 0..source.len() {
                if !q.leq(q.tensor(source.hom_at(b, b2), m_ab), entries.get(a, b2)) {
                    violations.push(ModuleLaw::RightAction {
                        a: target.object(a).to_string(),
                        b: source.object(b).to_string(),
                        b2: source.object(b2).to_string(),
                    });
                }
            }
        }
    }
    Ok(ModuleReport { violations })
}

impl QModule {
    pub fn new(
        source: Arc<QCategory>,
        target: Arc<QCategory>,
        entries: QMatrix,
    ) -> Result<Self, ModuleError> {
        if source.base() != target.base() {
            return Err(ModuleError::BaseMismatch {
                context: "module source and target bases differ".into(),
            });
        }
        let report = validate_module(&source, &target, &entries)?;
        if !report.ok() {
            return Err(ModuleError::Laws { report });
        }
        Ok(QModule { source, target, entries })
    }

    /// For constructions whose validity is forced; still checked, but a
    /// violation here is an internal bug rather than bad input.
    fn new_forced(source: Arc<QCategory>, target: Arc<QCategory>, entries: QMatrix) -> Self {
        QModule::new(source, target, entries).expect("construction guarantees the action laws")
    }

    pub fn source(&self) -> &Arc<QCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QCategory> {
        &self.target
    }

    pub fn entries(&self) -> &QMatrix {
        &self.entries
    }

    pub fn get(&self, a: usize, b: usize) -> crate::quantale::Elem {
        self.entries.get(a, b)
    }

    pub fn base(&self) -> &Arc<Quantale> {
        self.target.base()
    }

    pub fn validate(&self) -> ModuleReport {
        validate_module(&self.source, &self.target, &self.entries).expect("shape already checked")
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    /// Same entries over renamed boundary categories (canonical bijections
    /// only: the object order must be preserved).
    pub fn with_boundaries(
        &self,
        source: Arc<QCategory>,
        target: Arc<QCategory>,
    ) -> Result<QModule, ModuleError> {
        QModule::new(source, target, self.entries.clone())
    }

    pub fn render(&self) -> String {
        format!(
            "{:?} -> {:?}: {}",
            self.source.objects(),
            self.target.objects(),
            self.entries.render(self.base())
        )
    }
}

/// The all-bottom module; bottom is the initial hom object.
pub fn zero_module(source: Arc<QCategory>, target: Arc<QCategory>) -> Result<QModule, ModuleError> {
    if source.base() != target.base() {
        return Err(ModuleError::BaseMismatch { context: "zero module".into() });
    }
    let bot = source.base().bottom();
    let entries = QMatrix::filled(target.len(), source.len(), bot);
    Ok(QModule::new_forced(source, target, entries))
}

/// The hom matrix of `A` as a module `A -> A`; the unit of composition.
pub fn identity_module(a: &Arc<QCategory>) -> QModule {
    QModule::new_forced(a.clone(), a.clone(), a.hom().clone())
}

/// Composite `m . n` (apply `n` first): `(m.n)(a,c) = v_b n(b,c) (x) m(a,b)`.
pub fn compose(m: &QModule, n: &QModule) -> Result<QModule, ModuleError> {
    if n.target != m.source {
        return Err(ModuleError::BoundaryMismatch {
            context: "compose: target of the second factor differs from source of the first".into(),
        });
    }
    let q = m.base();
    let entries = m.entries.product(&n.entries, q);
    Ok(QModule::new_forced(n.source.clone(), m.target.clone(), entries))
}

/// `f_*(a,b) = hom_A(a, f b)`, the left-adjoint module of a functor `f : B -> A`.
pub fn lower_star(f: &QFunctor) -> QModule {
    let a = f.target().clone();
    let b = f.source().clone();
    let entries = QMatrix::from_fn(a.len(), b.len(), |r, c| a.hom_at(r, f.apply(c)));
    QModule::new_forced(b, a, entries)
}

/// `f^*(b,a) = hom_A(f b, a)`, the right-adjoint module of `f : B -> A`.
pub fn upper_star(f: &QFunctor) -> QModule {
    let a = f.target().clone();
    let b = f.source().clone();
    let entries = QMatrix::from_fn(b.len(), a.len(), |r, c| a.hom_at(f.apply(r), c));
    QModule::new_forced(a, b, entries)
}

/// Which adjunction inequality failed, and where.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjunctionWitness {
    /// "unit" or "counit".
    pub side: &'static str,
    pub row: String,
    pub col: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjunctionReport {
    pub holds: bool,
    pub witness: Option<AdjunctionWitness>,
}

/// Posetal adjunction check for `m -| r`: the unit `1_B <= r.m` and counit
/// `m.r <= 1_A`. Triangle identities are automatic with posetal homs.
pub fn check_adjunction(m: &QModule, r: &QModule) -> Result<AdjunctionReport, ModuleError> {
    if m.source != r.target || m.target != r.source {
        return Err(ModuleError::BoundaryMismatch {
            context: "adjunction check needs opposite boundaries".into(),
        });
    }
    let q = m.base().clone();
    let b = m.source.clone();
    let a = m.target.clone();
    let unit_side = compose(r, m)?;
    for x in 0..b.len() {
        for y in 0..b.len() {
            if !q.leq(b.hom_at(x, y), unit_side.get(x, y)) {
                return Ok(AdjunctionReport {
                    holds: false,
                    witness: Some(AdjunctionWitness {
                        side: "unit",
                        row: b.object(x).to_string(),
                        col: b.object(y).to_string(),
                        lhs: q.elem_name(b.hom_at(x, y)).to_string(),
                        rhs: q.elem_name(unit_side.get(x, y)).to_string(),
                    }),
                });
            }
        }
    }
    let counit_side = compose(m, r)?;
    for x in 0..a.len() {
        for y in 0..a.len() {
            if !q.leq(counit_side.get(x, y), a.hom_at(x, y)) {
                return Ok(AdjunctionReport {
                    holds: false,
                    witness: Some(AdjunctionWitness {
                        side: "counit",
                        row: a.object(x).to_string(),
                        col: a.object(y).to_string(),
                        lhs: q.elem_name(counit_side.get(x, y)).to_string(),
                        rhs: q.elem_name(a.hom_at(x, y)).to_string(),
                    }),
                });
            }
        }
    }
    Ok(AdjunctionReport { holds: true, witness: None })
}

/// The 2-morphisms of the module bicategory: entrywise order.
pub fn leq_2cell(m: &QModule, m2: &QModule) -> Result<bool, ModuleError> {
    if m.source != m2.source || m.target != m2.target {
        return Err(ModuleError::BoundaryMismatch {
            context: "2-cell comparison needs equal boundaries".into(),
        });
    }
    Ok(m.entries.leq(&m2.entries, m.base()))
}

/// Entrywise join of parallel modules; the hom-category coproduct.
pub fn module_join(m: &QModule, m2: &QModule) -> Result<QModule, ModuleError> {
    if m.source != m2.source || m.target != m2.target {
        return Err(ModuleError::BoundaryMismatch {
            context: "join needs equal boundaries".into(),
        });
    }
    let entries = m.entries.join(&m2.entries, m.base());
    Ok(QModule::new_forced(m.source.clone(), m.target.clone(), entries))
}

/// `(m (x) m')((a,a'),(b,b')) = m(a,b) (x) m'(a',b')` between tensor
/// product categories.
pub fn module_tensor(m: &QModule, m2: &QModule) -> Result<QModule, ModuleError> {
    if m.base() != m2.base() {
        return Err(ModuleError::BaseMismatch { context: "module tensor".into() });
    }
    let q = m.base().clone();
    let target = tensor_product(&m.target, &m2.target)
        .map_err(|e| ModuleError::Malformed { msg: e.to_string() })?;
    let source = tensor_product(&m.source, &m2.source)
        .map_err(|e| ModuleError::Malformed { msg: e.to_string() })?;
    let (ta2, sb2) = (m2.target.len(), m2.source.len());
    let entries = QMatrix::from_fn(target.len(), source.len(), |r, c| {
        let (a, a2) = (r / ta2, r % ta2);
        let (b, b2) = (c / sb2, c % sb2);
        q.tensor(m.get(a, b), m2.get(a2, b2))
    });
    Ok(QModule::new_forced(source, target, entries))
}

/// Block-diagonal direct sum `(B+B') -> (A+A')` with bottom cross entries.
pub fn module_oplus(m: &QModule, m2: &QModule) -> Result<QModule, ModuleError> {
    if m.base() != m2.base() {
        return Err(ModuleError::BaseMismatch { context: "module direct sum".into() });
    }
    let q = m.base().clone();
    let (target, _, _) = crate::category::coproduct(&m.target, &m2.target)
        .map_err(|e| ModuleError::Malformed { msg: e.to_string() })?;
    let (source, _, _) = crate::category::coproduct(&m.source, &m2.source)
        .map_err(|e| ModuleError::Malformed { msg: e.to_string() })?;
    let (ta, sb) = (m.target.len(), m.source.len());
    let entries = QMatrix::from_fn(target.len(), source.len(), |r, c| match (r < ta, c < sb) {
        (true, true) => m.get(r, c),
        (false, false) => m2.get(r - ta, c - sb),
        _ => q.bottom(),
    });
    Ok(QModule::new_forced(source, target, entries))
}

/// Outcome of the five direct-sum equalities for `A+B`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectSumReport {
    pub unit_a: bool,
    pub unit_b: bool,
    pub cover: bool,
    pub cross_ab: bool,
    pub cross_ba: bool,
}

impl DirectSumReport {
    pub fn ok(&self) -> bool {
        self.unit_a && self.unit_b && self.cover && self.cross_ab && self.cross_ba
    }
}

/// Verify that the coproduct `A+B` is a direct sum: the injection
/// adjunctions have invertible units (`i^*.i_* = 1` on each part, as
/// equalities), the counits jointly cover (`i_*.i^* v j_*.j^* = 1`), and
/// the mixed composites vanish.
pub fn direct_sum_check(
    a: &Arc<QCategory>,
    b: &Arc<QCategory>,
) -> Result<DirectSumReport, ModuleError> {
    let (total, in1, in2) = crate::category::coproduct(a, b)
        .map_err(|e| ModuleError::BaseMismatch { context: e.to_string() })?;
    let i_low = lower_star(&in1);
    let i_up = upper_star(&in1);
    let j_low = lower_star(&in2);
    let j_up = upper_star(&in2);

    let unit_a = compose(&i_up, &i_low)? == identity_module(a);
    let unit_b = compose(&j_up, &j_low)? == identity_module(b);
    let cover =
        module_join(&compose(&i_low, &i_up)?, &compose(&j_low, &j_up)?)? == identity_module(&total);
    let cross_ab = compose(&i_up, &j_low)? == zero_module(b.clone(), a.clone())?;
    let cross_ba = compose(&j_up, &i_low)? == zero_module(a.clone(), b.clone())?;
    Ok(DirectSumReport { unit_a, unit_b, cover, cross_ab, cross_ba })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{
        discrete_category, empty_category, unit_category, QFunctor,
    };
    use crate::quantale::{bool_quantale, QMatrix};

    fn arrow_preorder() -> Arc<QCategory> {
        let q = bool_quantale();
        let hom = QMatrix::from_fn(2, 2, |r, c| if r <= c { q.unit() } else { q.bottom() });
        QCategory::new(q, vec!["a".into(), "b".into()], hom).unwrap()
    }

    #[test]
    fn identity_module_is_unit_for_compose() {
        let a = arrow_preorder();
        let u = unit_category(a.base().clone());
        let f = QFunctor::from_names(u.clone(), a.clone(), [("*", "b")]).unwrap();
        let m = lower_star(&f);
        assert_eq!(compose(&identity_module(&a), &m).unwrap(), m);
        assert_eq!(compose(&m, &identity_module(&u)).unwrap(), m);
        let id = identity_module(&a);
        assert_eq!(compose(&id, &id).unwrap(), id);
    }

    #[test]
    fn compose_with_zero_is_zero() {
        let a = arrow_preorder();
        let u = unit_category(a.base().clone());
        let f = QFunctor::from_names(u.clone(), a.clone(), [("*", "a")]).unwrap();
        let m = lower_star(&f); // u -> a
        let z = zero_module(a.clone(), u.clone()).unwrap(); // a -> u
        let mz = compose(&m, &z).unwrap();
        assert_eq!(mz, zero_module(a.clone(), a).unwrap());
    }

    #[test]
    fn relations_compose_as_boolean_matrix_product() {
        let q = bool_quantale();
        let a = discrete_category(q.clone(), vec!["a0".into(), "a1".into()]);
        let b = discrete_category(q.clone(), vec!["b0".into(), "b1".into(), "b2".into()]);
        let c = discrete_category(q.clone(), vec!["c0".into(), "c1".into()]);
        let m_entries = QMatrix::from_fn(2, 3, |r, c| ((r + c) % 2 == 0) as usize);
        let n_entries = QMatrix::from_fn(3, 2, |r, c| ((r * c) % 2 == 0) as usize);
        let m = QModule::new(b.clone(), a.clone(), m_entries.clone()).unwrap();
        let n = QModule::new(c.clone(), b.clone(), n_entries.clone()).unwrap();
        let mn = compose(&m, &n).unwrap();
        // Triple-loop boolean matrix product oracle.
        for r in 0..2 {
            for s in 0..2 {
                let mut expect = false;
                for k in 0..3 {
                    expect |= m_entries.get(r, k) == 1 && n_entries.get(k, s) == 1;
                }
                assert_eq!(mn.get(r, s) == 1, expect);
            }
        }
    }

    #[test]
    fn orientation_canary_lower_star_on_arrow() {
        // f : unit -> arrow picking the top object, g picking the bottom one.
        let a = arrow_preorder();
        let u = unit_category(a.base().clone());
        let f = QFunctor::from_names(u.clone(), a.clone(), [("*", "b")]).unwrap();
        let g = QFunctor::from_names(u.clone(), a.clone(), [("*", "a")]).unwrap();
        let fs = lower_star(&f);
        let gs = lower_star(&g);
        // f_*(x, *) = hom(x, b): both objects sit below b.
        assert_eq!((fs.get(0, 0), fs.get(1, 0)), (1, 1));
        // g_*(x, *) = hom(x, a): only a itself.
        assert_eq!((gs.get(0, 0), gs.get(1, 0)), (1, 0));
        // f^*(*, x) = hom(b, x).
        let fu = upper_star(&f);
        assert_eq!((fu.get(0, 0), fu.get(0, 1)), (0, 1));
    }

    #[test]
    fn stars_of_identity_are_the_identity_module() {
        let a = arrow_preorder();
        let id = QFunctor::identity(a.clone());
        assert_eq!(lower_star(&id), identity_module(&a));
        assert_eq!(upper_star(&id), identity_module(&a));
    }

    #[test]
    fn lower_star_adjoint_to_upper_star() {
        let a = arrow_preorder();
        let u = unit_category(a.base().clone());
        for pick in ["a", "b"] {
            let f = QFunctor::from_names(u.clone(), a.clone(), [("*", pick)]).unwrap();
            let rep = check_adjunction(&lower_star(&f), &upper_star(&f)).unwrap();
            assert!(rep.holds);
        }
        let id = identity_module(&a);
        assert!(check_adjunction(&id, &id).unwrap().holds);
    }

    #[test]
    fn non_functional_relation_with_transpose_fails_unit() {
        let q = bool_quantale();
        let a = discrete_category(q.clone(), vec!["a0".into(), "a1".into()]);
        let b = discrete_category(q.clone(), vec!["b0".into(), "b1".into()]);
        // m relates b0 to both a's and b1 to nothing: not a function.
        let entries = QMatrix::from_fn(2, 2, |_, c| (c == 0) as usize);
        let m = QModule::new(b.clone(), a.clone(), entries.clone()).unwrap();
        let r = QModule::new(a, b, QMatrix::from_fn(2, 2, |r, _| (r == 0) as usize)).unwrap();
        let rep = check_adjunction(&m, &r).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.witness.unwrap().side, "unit");
    }

    #[test]
    fn two_cell_order_and_zero() {
        let a = arrow_preorder();
        let id = identity_module(&a);
        let z = zero_module(a.clone(), a.clone()).unwrap();
        assert!(leq_2cell(&id, &id).unwrap());
        assert!(leq_2cell(&z, &id).unwrap());
        assert!(!leq_2cell(&id, &z).unwrap());
    }

    #[test]
    fn tensor_with_unit_identity_module() {
        let a = arrow_preorder();
        let u = unit_category(a.base().clone());
        let m = identity_module(&a);
        let t = module_tensor(&m, &identity_module(&u)).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(t.get(r, c), m.get(r, c));
            }
        }
        // id (x) id = id of the tensor product.
        let t2 = module_tensor(&identity_module(&a), &identity_module(&a)).unwrap();
        let prod = tensor_product(&a, &a).unwrap();
        assert_eq!(t2, identity_module(&prod));
    }

    #[test]
    fn direct_sum_equalities_hold() {
        let q = bool_quantale();
        let u = unit_category(q.clone());
        let rep = direct_sum_check(&u, &u).unwrap();
        assert!(rep.ok(), "{rep:?}");
        let a = arrow_preorder();
        let e = empty_category(q);
        assert!(direct_sum_check(&a, &e).unwrap().ok());
    }
}
