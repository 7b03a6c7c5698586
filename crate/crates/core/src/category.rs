//! Categories enriched in a quantale, and the functors between them.
//!
//! A `QCategory` is a finite object set with a hom matrix over its base
//! quantale satisfying `unit <= hom(a,a)` and
//! `hom(b,c) (x) hom(a,b) <= hom(a,c)`; a generalised preorder or metric
//! space. A functor is an object map whose hom inequality replaces
//! action-on-morphism data: with posetal homs there is at most one 2-cell
//! between parallel pairs, so no further data exists.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

use crate::quantale::{QMatrix, Quantale};

/// A violated category or functor law with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryLaw {
    /// `unit <= hom(a,a)` fails.
    Identity { a: String },
    /// `hom(b,c) (x) hom(a,b) <= hom(a,c)` fails.
    Composition { a: String, b: String, c: String },
    /// `hom_src(a,a') <= hom_tgt(fa,fa')` fails.
    FunctorHom { a: String, a2: String },
}

impl fmt::Display for CategoryLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryLaw::Identity { a } => write!(f, "identity law fails at ({a})"),
            CategoryLaw::Composition { a, b, c } => {
                write!(f, "composition law fails at ({a},{b},{c})")
            }
            CategoryLaw::FunctorHom { a, a2 } => {
                write!(f, "functor hom inequality fails at ({a},{a2})")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CategoryReport {
    pub violations: Vec<CategoryLaw>,
}

impl CategoryReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CategoryReport {
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

#[derive(Debug, Error)]
pub enum CategoryError {
    #[error("malformed category: {msg}")]
    Malformed { msg: String },
    #[error("category violates laws:\n{report}")]
    Laws { report: CategoryReport },
    #[error("functor violates laws:\n{report}")]
    FunctorLaws { report: CategoryReport },
    #[error("unknown object id '{id}'")]
    UnknownObject { id: String },
    #[error("base quantale mismatch: {context}")]
    BaseMismatch { context: String },
    #[error("boundary mismatch: {context}")]
    BoundaryMismatch { context: String },
}

/// A finite category enriched in a quantale: objects plus a hom matrix,
/// `hom(a,b)` being the hom object from `a` to `b`. Empty categories are
/// permitted; they are the coproduct unit.
#[derive(Debug, Clone)]
pub struct QCategory {
    base: Arc<Quantale>,
    objects: Vec<String>,
    index: HashMap<String, usize>,
    hom: QMatrix,
}

impl PartialEq for QCategory {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.objects == other.objects && self.hom == other.hom
    }
}
impl Eq for QCategory {}

/// Check the identity and composition laws, with witnesses by object name.
pub fn validate_category(
    base: &Quantale,
    objects: &[String],
    hom: &QMatrix,
) -> Result<CategoryReport, CategoryError> {
    let n = objects.len();
    if hom.rows() != n || hom.cols() != n {
        return Err(CategoryError::Malformed {
            msg: format!("hom matrix is {}x{}, expected {n}x{n}", hom.rows(), hom.cols()),
        });
    }
    {
        let mut seen = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if seen.insert(o.clone(), i).is_some() {
                return Err(CategoryError::Malformed { msg: format!("duplicate object id '{o}'") });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if hom.get(a, b) >= base.size() {
                return Err(CategoryError::Malformed {
                    msg: format!("hom({},{}) is outside the carrier", objects[a], objects[b]),
                });
            }
        }
    }
    let mut violations = Vec::new();
    for a in 0..n {
        if !base.leq(base.unit(), hom.get(a, a)) {
            violations.push(CategoryLaw::Identity { a: objects[a].clone() });
        }
        for b in 0..n {
            for c in 0..n {
                let lhs = base.tensor(hom.get(b, c), hom.get(a, b));
                if !base.leq(lhs, hom.get(a, c)) {
                    violations.push(CategoryLaw::Composition {
                        a: objects[a].clone(),
                        b: objects[b].clone(),
                        c: objects[c].clone(),
                    });
                }
            }
        }
    }
    Ok(CategoryReport { violations })
}

impl QCategory {
    pub fn new(
        base: Arc<Quantale>,
        objects: Vec<String>,
        hom: QMatrix,
    ) -> Result<Arc<Self>, CategoryError> {
        let report = validate_category(&base, &objects, &hom)?;
        if !report.ok() {
            return Err(CategoryError::Laws { report });
        }
        let index = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        Ok(Arc::new(QCategory { base, objects, index, hom }))
    }

    pub fn base(&self) -> &Arc<Quantale> {
        &self.base
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, i: usize) -> &str {
        &self.objects[i]
    }

    pub fn object_index(&self, id: &str) -> Result<usize, CategoryError> {
        self.index.get(id).copied().ok_or_else(|| CategoryError::UnknownObject { id: id.into() })
    }

    pub fn hom(&self) -> &QMatrix {
        &self.hom
    }

    pub fn hom_at(&self, a: usize, b: usize) -> crate::quantale::Elem {
        self.hom.get(a, b)
    }

    pub fn validate(&self) -> CategoryReport {
        validate_category(&self.base, &self.objects, &self.hom).expect("shape already checked")
    }

    /// Same hom matrix under renamed objects; the map must stay injective.
    pub fn rename(
        self: &Arc<Self>,
        f: impl Fn(&str) -> String,
    ) -> Result<Arc<QCategory>, CategoryError> {
        let objects: Vec<String> = self.objects.iter().map(|o| f(o)).collect();
        QCategory::new(self.base.clone(), objects, self.hom.clone())
    }
}

impl fmt::Display for QCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "objects {:?} over {}, hom {}",
            self.objects,
            self.base.name(),
            self.hom.render(&self.base)
        )
    }
}

/// The empty category over a base.
pub fn empty_category(base: Arc<Quantale>) -> Arc<QCategory> {
    QCategory::new(base, Vec::new(), QMatrix::filled(0, 0, 0)).expect("empty category is valid")
}

/// The one-object category with `hom(*,*) = unit`.
pub fn unit_category(base: Arc<Quantale>) -> Arc<QCategory> {
    let hom = QMatrix::filled(1, 1, base.unit());
    QCategory::new(base, vec!["*".to_string()], hom).expect("unit category is valid")
}

/// A discrete category: unit on the diagonal, bottom elsewhere.
pub fn discrete_category(base: Arc<Quantale>, objects: Vec<String>) -> Arc<QCategory> {
    let n = objects.len();
    let hom = QMatrix::from_fn(n, n, |r, c| if r == c { base.unit() } else { base.bottom() });
    QCategory::new(base, objects, hom).expect("discrete category is valid")
}

/// The full subcategory on a subset of objects, in the ambient order.
pub fn full_subcategory(
    x: &Arc<QCategory>,
    objects: &[String],
) -> Result<Arc<QCategory>, CategoryError> {
    let idx: Vec<usize> =
        objects.iter().map(|o| x.object_index(o)).collect::<Result<_, _>>()?;
    let hom = QMatrix::from_fn(idx.len(), idx.len(), |r, c| x.hom_at(idx[r], idx[c]));
    QCategory::new(x.base.clone(), objects.to_vec(), hom)
}

/// A functor between categories over the same base, given by its object map.
#[derive(Debug, Clone, PartialEq)]
pub struct QFunctor {
    source: Arc<QCategory>,
    target: Arc<QCategory>,
    map: Vec<usize>,
}

/// Check the functor hom inequality, with witnesses by object pair.
pub fn validate_functor(f: &QFunctor) -> CategoryReport {
    let mut violations = Vec::new();
    let s = &f.source;
    let t = &f.target;
    for a in 0..s.len() {
        for a2 in 0..s.len() {
            let lhs = s.hom_at(a, a2);
            let rhs = t.hom_at(f.map[a], f.map[a2]);
            if !s.base().leq(lhs, rhs) {
                violations.push(CategoryLaw::FunctorHom {
                    a: s.object(a).to_string(),
                    a2: s.object(a2).to_string(),
                });
            }
        }
    }
    CategoryReport { violations }
}

impl QFunctor {
    pub fn new(
        source: Arc<QCategory>,
        target: Arc<QCategory>,
        map: Vec<usize>,
    ) -> Result<Self, CategoryError> {
        if source.base() != target.base() {
            return Err(CategoryError::BaseMismatch {
                context: "functor source and target bases differ".into(),
            });
        }
        if map.len() != source.len() {
            return Err(CategoryError::Malformed {
                msg: format!("object map has {} entries for {} objects", map.len(), source.len()),
            });
        }
        if let Some(&bad) = map.iter().find(|&&i| i >= target.len()) {
            return Err(CategoryError::Malformed {
                msg: format!("object map hits index {bad} outside the target"),
            });
        }
        let f = QFunctor { source, target, map };
        let report = validate_functor(&f);
        if !report.ok() {
            return Err(CategoryError::FunctorLaws { report });
        }
        Ok(f)
    }

    /// Build from object-name pairs.
    pub fn from_names<'a>(
        source: Arc<QCategory>,
        target: Arc<QCategory>,
        assignments: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, CategoryError> {
        let mut map = vec![usize::MAX; source.len()];
        for (from, to) in assignments {
            map[source.object_index(from)?] = target.object_index(to)?;
        }
        if let Some(i) = map.iter().position(|&m| m == usize::MAX) {
            return Err(CategoryError::Malformed {
                msg: format!("object '{}' has no image", source.object(i)),
            });
        }
        QFunctor::new(source, target, map)
    }

    pub fn identity(a: Arc<QCategory>) -> Self {
        let map = (0..a.len()).collect();
        QFunctor { source: a.clone(), target: a, map }
    }

    pub fn source(&self) -> &Arc<QCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QCategory> {
        &self.target
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Image object names, deduplicated, in target order.
    pub fn image(&self) -> Vec<String> {
        let mut seen = vec![false; self.target.len()];
        for &i in &self.map {
            seen[i] = true;
        }
        (0..self.target.len())
            .filter(|&i| seen[i])
            .map(|i| self.target.object(i).to_string())
            .collect()
    }

    pub fn validate(&self) -> CategoryReport {
        validate_functor(self)
    }
}

/// `g . f`, applying `f` first.
pub fn compose_functors(g: &QFunctor, f: &QFunctor) -> Result<QFunctor, CategoryError> {
    if f.target != g.source {
        return Err(CategoryError::BoundaryMismatch {
            context: "functor composition: target of the first differs from source of the second"
                .into(),
        });
    }
    let map = f.map.iter().map(|&i| g.map[i]).collect();
    Ok(QFunctor { source: f.source.clone(), target: g.target.clone(), map })
}

/// Coproduct of two categories over the same base: tagged disjoint union of
/// objects ("L:" part first), homs restricting to each part, bottom across.
/// Returns the category with its two injections.
pub fn coproduct(
    a: &Arc<QCategory>,
    b: &Arc<QCategory>,
) -> Result<(Arc<QCategory>, QFunctor, QFunctor), CategoryError> {
    if a.base() != b.base() {
        return Err(CategoryError::BaseMismatch { context: "coproduct of categories".into() });
    }
    let base = a.base().clone();
    let na = a.len();
    let n = na + b.len();
    let mut objects = Vec::with_capacity(n);
    objects.extend(a.objects().iter().map(|o| format!("L:{o}")));
    objects.extend(b.objects().iter().map(|o| format!("R:{o}")));
    let hom = QMatrix::from_fn(n, n, |r, c| match (r < na, c < na) {
        (true, true) => a.hom_at(r, c),
        (false, false) => b.hom_at(r - na, c - na),
        _ => base.bottom(),
    });
    let total = QCategory::new(base, objects, hom)?;
    let in1 = QFunctor { source: a.clone(), target: total.clone(), map: (0..na).collect() };
    let in2 = QFunctor { source: b.clone(), target: total.clone(), map: (na..n).collect() };
    Ok((total, in1, in2))
}

/// Tensor product of categories: pair objects, tensor the homs.
pub fn tensor_product(
    a: &Arc<QCategory>,
    b: &Arc<QCategory>,
) -> Result<Arc<QCategory>, CategoryError> {
    if a.base() != b.base() {
        return Err(CategoryError::BaseMismatch { context: "tensor product of categories".into() });
    }
    let base = a.base().clone();
    let (na, nb) = (a.len(), b.len());
    let mut objects = Vec::with_capacity(na * nb);
    for x in a.objects() {
        for y in b.objects() {
            objects.push(format!("({x},{y})"));
        }
    }
    let hom = QMatrix::from_fn(na * nb, na * nb, |r, c| {
        let (r1, r2) = (r / nb, r % nb);
        let (c1, c2) = (c / nb, c % nb);
        base.tensor(a.hom_at(r1, c1), b.hom_at(r2, c2))
    });
    QCategory::new(base, objects, hom)
}

/// The codiagonal `A+A -> A`: both tags map identically.
pub fn codiagonal(a: &Arc<QCategory>) -> Result<QFunctor, CategoryError> {
    let (total, _, _) = coproduct(a, a)?;
    let n = a.len();
    let map = (0..2 * n).map(|i| i % n).collect();
    QFunctor::new(total, a.clone(), map)
}
