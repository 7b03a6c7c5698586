//! Homodularity for base-change pseudofunctors, and the universal extension
//! of such a pseudofunctor from categories to modules.
//!
//! The pseudofunctors under test send a category over one quantale to the
//! category over another obtained by mapping every hom entry through a
//! quantale homomorphism, and a functor `f` to the module `(Tf)_*`. For such
//! a `T`:
//!
//! * H1 asks that the image of every sieve inclusion have a right adjoint;
//!   here that is the adjunction `(Ti)_* -| (Ti)^*`.
//! * H2 asks that the mate of a pushout square along a sieve (with an
//!   opsieve as the other leg) be invertible; with posetal homs a 2-cell is
//!   invertible exactly when its two boundaries are equal, so the check is
//!   the equality `(Tj)_* . (Ti)^* = (Tk)^* . (Th)_*`.
//!
//! [`extend`] sends a module `m : B -> A` to `(T i_m)^* . (T j_m)_*` built
//! through the collage of `m`; it also satisfies the entrywise closed form
//! `extend(h, m) = h o m`, which the suites use as an independent
//! cross-check of the collage route.

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

use crate::category::{coproduct, QCategory, QFunctor};
use crate::collage::{collage, is_opsieve, is_sieve, sieve_pushout, CollageError, SievePushout};
use crate::module::{
    compose, lower_star, module_join, module_tensor, upper_star, ModuleError, QModule,
};
use crate::quantale::{builtin_quantale, Elem, QMatrix, Quantale, QuantaleError};

#[derive(Debug, Error)]
pub enum HomError {
    #[error("malformed quantale homomorphism '{name}': {msg}")]
    Malformed { name: String, msg: String },
    #[error("'{name}' is not a quantale homomorphism:\n{report}")]
    Laws { name: String, report: HomReport },
    #[error("base mismatch: {context}")]
    BaseMismatch { context: String },
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
    #[error(transparent)]
    Collage(#[from] CollageError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Category(#[from] crate::category::CategoryError),
}

/// A violated homomorphism law with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomLaw {
    Join { x: String, y: String },
    Bottom,
    Tensor { x: String, y: String },
    Unit,
}

impl fmt::Display for HomLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomLaw::Join { x, y } => write!(f, "join preservation fails at ({x},{y})"),
            HomLaw::Bottom => write!(f, "bottom is not preserved"),
            HomLaw::Tensor { x, y } => write!(f, "tensor preservation fails at ({x},{y})"),
            HomLaw::Unit => write!(f, "unit is not preserved"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct HomReport {
    pub violations: Vec<HomLaw>,
}

impl HomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for HomReport {
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

/// A homomorphism of quantales: preserves all joins (hence bottom and the
/// order), the tensor, and the unit. Checked exhaustively on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantaleHom {
    name: String,
    source: Arc<Quantale>,
    target: Arc<Quantale>,
    map: Vec<Elem>,
}

impl QuantaleHom {
    pub fn new(
        name: impl Into<String>,
        source: Arc<Quantale>,
        target: Arc<Quantale>,
        map: Vec<Elem>,
    ) -> Result<Self, HomError> {
        let name = name.into();
        if map.len() != source.size() {
            return Err(HomError::Malformed {
                name,
                msg: format!("map has {} entries for {} elements", map.len(), source.size()),
            });
        }
        if let Some(&bad) = map.iter().find(|&&e| e >= target.size()) {
            return Err(HomError::Malformed {
                name,
                msg: format!("map hits index {bad} outside the target carrier"),
            });
        }
        let mut violations = Vec::new();
        for x in source.elements() {
            for y in source.elements() {
                if map[source.join(x, y)] != target.join(map[x], map[y]) {
                    violations.push(HomLaw::Join {
                        x: source.elem_name(x).to_string(),
                        y: source.elem_name(y).to_string(),
                    });
                }
                if map[source.tensor(x, y)] != target.tensor(map[x], map[y]) {
                    violations.push(HomLaw::Tensor {
                        x: source.elem_name(x).to_string(),
                        y: source.elem_name(y).to_string(),
                    });
                }
            }
        }
        if map[source.bottom()] != target.bottom() {
            violations.push(HomLaw::Bottom);
        }
        if map[source.unit()] != target.unit() {
            violations.push(HomLaw::Unit);
        }
        if !violations.is_empty() {
            return Err(HomError::Laws { name, report: HomReport { violations } });
        }
        Ok(QuantaleHom { name, source, target, map })
    }

    pub fn identity(q: Arc<Quantale>) -> Self {
        let map = q.elements().collect();
        QuantaleHom { name: format!("id:{}", q.name()), source: q.clone(), target: q, map }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<Quantale> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Quantale> {
        &self.target
    }

    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e]
    }
}

/// Resolve a named homomorphism: `id:<quantale>`, `bool-to-chain:<k>`,
/// `chain:<k>-to-bool`, `minplus:<n>-to-minplus:<m>` (clamp, m < n).
pub fn hom_by_name(name: &str) -> Result<QuantaleHom, HomError> {
    if let Some(q) = name.strip_prefix("id:") {
        return Ok(QuantaleHom::identity(builtin_quantale(q)?));
    }
    if let Some((src, tgt)) = name.split_once("-to-") {
        let source = builtin_quantale(src)?;
        let target = builtin_quantale(tgt)?;
        if src == "bool" && tgt.starts_with("chain:") {
            // bottom to bottom, top to top
            let map = vec![target.bottom(), target.unit()];
            return QuantaleHom::new(name, source, target, map);
        }
        if src.starts_with("chain:") && tgt == "bool" {
            // collapse: 0 to 0, everything else to 1
            let map = source
                .elements()
                .map(|e| if e == source.bottom() { target.bottom() } else { target.unit() })
                .collect();
            return QuantaleHom::new(name, source, target, map);
        }
        if let (Some(n), Some(m)) = (src.strip_prefix("minplus:"), tgt.strip_prefix("minplus:")) {
            let n: usize = n.parse().map_err(|_| HomError::Malformed {
                name: name.into(),
                msg: "bad minplus cap".into(),
            })?;
            let m: usize = m.parse().map_err(|_| HomError::Malformed {
                name: name.into(),
                msg: "bad minplus cap".into(),
            })?;
            if m >= n {
                return Err(HomError::Malformed {
                    name: name.into(),
                    msg: "coarsening needs a strictly smaller cap".into(),
                });
            }
            // elements are 0..=n then inf; clamp finite values at m
            let map = source
                .elements()
                .map(|e| if e == source.bottom() { target.bottom() } else { e.min(m) })
                .collect();
            return QuantaleHom::new(name, source, target, map);
        }
    }
    Err(HomError::Malformed { name: name.into(), msg: "unknown homomorphism name".into() })
}

/// The homomorphisms every homodularity suite runs over. Each is validated
/// on load.
pub fn builtin_homs() -> Vec<QuantaleHom> {
    [
        "id:bool",
        "bool-to-chain:3",
        "bool-to-chain:5",
        "chain:3-to-bool",
        "chain:5-to-bool",
        "minplus:6-to-minplus:3",
    ]
    .iter()
    .map(|n| hom_by_name(n).expect("built-in homomorphism is valid"))
    .collect()
}

fn check_source(h: &QuantaleHom, base: &Arc<Quantale>, context: &str) -> Result<(), HomError> {
    if base != h.source() {
        return Err(HomError::BaseMismatch {
            context: format!("{context} lives over {}, not {}", base.name(), h.source.name()),
        });
    }
    Ok(())
}

/// Map every hom entry of a category through the homomorphism.
pub fn base_change_category(
    h: &QuantaleHom,
    a: &Arc<QCategory>,
) -> Result<Arc<QCategory>, HomError> {
    check_source(h, a.base(), "category")?;
    let hom = QMatrix::from_fn(a.len(), a.len(), |r, c| h.apply(a.hom_at(r, c)));
    Ok(QCategory::new(h.target.clone(), a.objects().to_vec(), hom)?)
}

/// Same object map between the base-changed boundaries.
pub fn base_change_functor(h: &QuantaleHom, f: &QFunctor) -> Result<QFunctor, HomError> {
    let source = base_change_category(h, f.source())?;
    let target = base_change_category(h, f.target())?;
    Ok(QFunctor::new(source, target, f.map().to_vec())?)
}

/// Map every entry of a module through the homomorphism.
pub fn base_change_module(h: &QuantaleHom, m: &QModule) -> Result<QModule, HomError> {
    check_source(h, m.base(), "module")?;
    let source = base_change_category(h, m.source())?;
    let target = base_change_category(h, m.target())?;
    let entries = QMatrix::from_fn(target.len(), source.len(), |r, c| h.apply(m.get(r, c)));
    Ok(QModule::new(source, target, entries)?)
}

/// H1 for a sieve inclusion `i`: the base-changed `(Ti)_*` has right
/// adjoint `(Ti)^*`.
pub fn check_h1(h: &QuantaleHom, i: &QFunctor) -> Result<bool, HomError> {
    let image = i.image();
    if !is_sieve(i.target(), &image)? {
        return Err(HomError::Malformed {
            name: h.name.clone(),
            msg: "H1 expects the inclusion of a sieve".into(),
        });
    }
    let ti = base_change_functor(h, i)?;
    Ok(crate::module::check_adjunction(&lower_star(&ti), &upper_star(&ti))?.holds)
}

/// A pushout square along a sieve: the span legs plus the pushout data.
#[derive(Debug, Clone)]
pub struct PushoutSquare {
    /// Sieve inclusion `A -> X`.
    pub i: QFunctor,
    /// Opsieve inclusion `A -> Y` (the leg pushed out along the sieve).
    pub j: QFunctor,
    pub pushout: SievePushout,
}

impl PushoutSquare {
    /// Build the pushout of the span and package the square.
    pub fn build(i: QFunctor, j: QFunctor) -> Result<Self, CollageError> {
        let pushout = sieve_pushout(&j, i.target())?;
        Ok(PushoutSquare { i, j, pushout })
    }

    /// Shape sanity: shared span source, sieve/opsieve legs, commuting
    /// object square. Deliberately does not certify that `pushout` was
    /// produced by the pushout construction; H2 is exactly the check that
    /// it behaves as if it were.
    pub fn validate_shape(&self) -> Result<(), HomError> {
        if self.i.source() != self.j.source() {
            return Err(HomError::Malformed {
                name: "square".into(),
                msg: "span legs do not share their source".into(),
            });
        }
        if !is_sieve(self.i.target(), &self.i.image())? {
            return Err(HomError::Malformed {
                name: "square".into(),
                msg: "i is not a sieve inclusion".into(),
            });
        }
        if !is_opsieve(self.j.target(), &self.j.image())? {
            return Err(HomError::Malformed {
                name: "square".into(),
                msg: "j is not an opsieve inclusion".into(),
            });
        }
        let (k, h) = (&self.pushout.k, &self.pushout.h);
        if k.source() != self.j.target() || h.source() != self.i.target() || k.target() != h.target()
        {
            return Err(HomError::Malformed {
                name: "square".into(),
                msg: "pushout legs do not match the span".into(),
            });
        }
        for ai in 0..self.i.source().len() {
            let through_x = h.apply(self.i.apply(ai));
            let through_y = k.apply(self.j.apply(ai));
            if through_x != through_y {
                return Err(HomError::Malformed {
                    name: "square".into(),
                    msg: format!(
                        "square does not commute at object '{}'",
                        self.i.source().object(ai)
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Entry at which the two sides of a mate comparison differ.
#[derive(Debug, Clone, PartialEq)]
pub struct MateWitness {
    pub row: String,
    pub col: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MateReport {
    pub holds: bool,
    pub witness: Option<MateWitness>,
}

/// H2: the mate of the base-changed square is invertible, i.e.
/// `(Tj)_* . (Ti)^* = (Tk)^* . (Th)_*` as modules `TX -> TY`.
pub fn check_h2(h: &QuantaleHom, sq: &PushoutSquare) -> Result<MateReport, HomError> {
    sq.validate_shape()?;
    let ti = base_change_functor(h, &sq.i)?;
    let tj = base_change_functor(h, &sq.j)?;
    let tk = base_change_functor(h, &sq.pushout.k)?;
    let th = base_change_functor(h, &sq.pushout.h)?;
    let lhs = compose(&lower_star(&tj), &upper_star(&ti))?;
    let rhs = compose(&upper_star(&tk), &lower_star(&th))?;
    match lhs.entries().first_diff(rhs.entries()) {
        None => Ok(MateReport { holds: true, witness: None }),
        Some((r, c)) => {
            let q = lhs.base();
            Ok(MateReport {
                holds: false,
                witness: Some(MateWitness {
                    row: lhs.target().object(r).to_string(),
                    col: lhs.source().object(c).to_string(),
                    lhs: q.elem_name(lhs.get(r, c)).to_string(),
                    rhs: q.elem_name(rhs.get(r, c)).to_string(),
                }),
            })
        }
    }
}

/// Extend the base change from functors to modules through the collage:
/// `extend(h, m) = (T i_m)^* . (T j_m)_*`.
pub fn extend(h: &QuantaleHom, m: &QModule) -> Result<QModule, HomError> {
    let col = collage(m);
    let ti = base_change_functor(h, &col.i)?;
    let tj = base_change_functor(h, &col.j)?;
    Ok(compose(&upper_star(&ti), &lower_star(&tj))?)
}

/// The entrywise closed form `h o m`; the independent oracle for [`extend`].
pub fn extend_closed_form(h: &QuantaleHom, m: &QModule) -> Result<QModule, HomError> {
    base_change_module(h, m)
}

/// Does the collage route agree with the closed form on `m`?
pub fn extension_agrees(h: &QuantaleHom, m: &QModule) -> Result<bool, HomError> {
    Ok(extend(h, m)? == extend_closed_form(h, m)?)
}

/// Monoidality of the extension:
/// `extend(h, m (x) m') = extend(h, m) (x) extend(h, m')`.
pub fn check_extension_monoidal(
    h: &QuantaleHom,
    m: &QModule,
    m2: &QModule,
) -> Result<bool, HomError> {
    let lhs = extend(h, &module_tensor(m, m2)?)?;
    let rhs = module_tensor(&extend(h, m)?, &extend(h, m2)?)?;
    Ok(lhs == rhs)
}

/// Coproduct preservation: (a) base change commutes with `A+B` on the nose;
/// (b) for parallel modules, the extension preserves the entrywise join
/// (the hom-category coproduct).
#[derive(Debug, Clone, PartialEq)]
pub struct CoproductPreservation {
    pub objects: bool,
    pub hom_joins: bool,
}

impl CoproductPreservation {
    pub fn ok(&self) -> bool {
        self.objects && self.hom_joins
    }
}

pub fn check_extension_coproducts(
    h: &QuantaleHom,
    m: &QModule,
    m2: &QModule,
) -> Result<CoproductPreservation, HomError> {
    if m.source() != m2.source() || m.target() != m2.target() {
        return Err(HomError::Module(ModuleError::BoundaryMismatch {
            context: "coproduct preservation needs parallel modules".into(),
        }));
    }
    let (ab, _, _) = coproduct(m.target(), m.source())?;
    let changed_ab = base_change_category(h, &ab)?;
    let (changed_parts, _, _) = coproduct(
        &base_change_category(h, m.target())?,
        &base_change_category(h, m.source())?,
    )?;
    let objects = *changed_ab == *changed_parts;

    let lhs = extend(h, &module_join(m, m2)?)?;
    let rhs = module_join(&extend(h, m)?, &extend(h, m2)?)?;
    Ok(CoproductPreservation { objects, hom_joins: lhs == rhs })
}
