//! Finite commutative unital quantales as explicit tables.
//!
//! A quantale here is a finite join-semilattice with bottom carrying a
//! commutative monoid structure whose multiplication distributes over all
//! joins. Finiteness makes every countable join a finite one, so the
//! geometric series defining [`matrix_star`] stabilises after finitely many
//! steps. The order `x <= y  iff  x v y = y` is derived from the join table
//! rather than given, and is precomputed together with the lattice height
//! (which bounds fixpoint iteration counts).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Index of an element in its quantale's carrier.
pub type Elem = usize;

/// Quantale tables as read from input, prior to validation.
#[derive(Debug, Clone, PartialEq)]
pub struct RawQuantale {
    pub name: String,
    pub elements: Vec<String>,
    /// Binary join table, `join[i][j]` in carrier order.
    pub join: Vec<Vec<String>>,
    /// Binary tensor table, `tensor[i][j]` in carrier order.
    pub tensor: Vec<Vec<String>>,
    pub unit: String,
}

/// A violated quantale law together with a witness tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuantaleLaw {
    JoinIdempotent { x: String },
    JoinCommutative { x: String, y: String },
    JoinAssociative { x: String, y: String, z: String },
    /// No element is neutral for the join, i.e. the empty join is undefined.
    NoBottom,
    TensorCommutative { x: String, y: String },
    TensorAssociative { x: String, y: String, z: String },
    UnitLaw { x: String },
    /// `x (x) (y v z) != (x (x) y) v (x (x) z)`.
    Distributive { x: String, y: String, z: String },
    /// `x (x) bottom != bottom`.
    BottomAbsorb { x: String },
}

impl fmt::Display for QuantaleLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use QuantaleLaw::*;
        match self {
            JoinIdempotent { x } => write!(f, "join idempotence fails at ({x})"),
            JoinCommutative { x, y } => write!(f, "join commutativity fails at ({x},{y})"),
            JoinAssociative { x, y, z } => write!(f, "join associativity fails at ({x},{y},{z})"),
            NoBottom => write!(f, "no bottom: no element is neutral for join"),
            TensorCommutative { x, y } => write!(f, "tensor commutativity fails at ({x},{y})"),
            TensorAssociative { x, y, z } => {
                write!(f, "tensor associativity fails at ({x},{y},{z})")
            }
            UnitLaw { x } => write!(f, "unit law fails at ({x})"),
            Distributive { x, y, z } => {
                write!(f, "tensor-join distributivity fails at ({x},{y},{z})")
            }
            BottomAbsorb { x } => write!(f, "bottom absorption fails at ({x})"),
        }
    }
}

/// Validation outcome: empty means every law holds.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QuantaleReport {
    pub violations: Vec<QuantaleLaw>,
}

impl QuantaleReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for QuantaleReport {
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
pub enum QuantaleError {
    /// Missing entries, unknown names, wrong table shapes. Distinct from a
    /// law failure.
    #[error("malformed quantale '{name}': {msg}")]
    Malformed { name: String, msg: String },
    #[error("quantale '{name}' violates laws:\n{report}")]
    Laws { name: String, report: QuantaleReport },
    #[error("unknown element id '{id}' in quantale '{name}'")]
    UnknownElement { name: String, id: String },
}

/// A validated finite commutative unital quantale.
///
/// Elements are referred to by [`Elem`] indices into the carrier; the string
/// ids are kept for display and for the document format. Equality ignores
/// the name: two quantales are equal when their carriers and tables agree.
#[derive(Debug, Clone)]
pub struct Quantale {
    name: String,
    elements: Vec<String>,
    index: HashMap<String, Elem>,
    join: Vec<Elem>,
    tensor: Vec<Elem>,
    unit: Elem,
    bottom: Elem,
    leq: Vec<bool>,
    height: usize,
}

impl PartialEq for Quantale {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
            && self.join == other.join
            && self.tensor == other.tensor
            && self.unit == other.unit
    }
}
impl Eq for Quantale {}

/// Check every quantale law exhaustively over the carrier.
///
/// Shape problems (missing entries, unknown ids) are input errors; law
/// failures come back in the report with witnesses.
pub fn validate_quantale(raw: &RawQuantale) -> Result<QuantaleReport, QuantaleError> {
    let (elements, index) = check_shape(raw)?;
    let n = elements.len();
    let resolve_table = |table: &Vec<Vec<String>>, what: &str| -> Result<Vec<Elem>, QuantaleError> {
        let mut out = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                let e = *index.get(cell).ok_or_else(|| QuantaleError::Malformed {
                    name: raw.name.clone(),
                    msg: format!("{what}[{i}][{j}] refers to unknown element '{cell}'"),
                })?;
                out.push(e);
            }
        }
        Ok(out)
    };
    let join = resolve_table(&raw.join, "join")?;
    let tensor = resolve_table(&raw.tensor, "tensor")?;
    let unit = *index.get(&raw.unit).ok_or_else(|| QuantaleError::Malformed {
        name: raw.name.clone(),
        msg: format!("unit refers to unknown element '{}'", raw.unit),
    })?;

    let j = |x: Elem, y: Elem| join[x * n + y];
    let t = |x: Elem, y: Elem| tensor[x * n + y];
    let name = |x: Elem| elements[x].clone();
    let mut violations = Vec::new();

    for x in 0..n {
        if j(x, x) != x {
            violations.push(QuantaleLaw::JoinIdempotent { x: name(x) });
        }
        if t(unit, x) != x || t(x, unit) != x {
            violations.push(QuantaleLaw::UnitLaw { x: name(x) });
        }
        for y in 0..n {
            if j(x, y) != j(y, x) {
                violations.push(QuantaleLaw::JoinCommutative { x: name(x), y: name(y) });
            }
            if t(x, y) != t(y, x) {
                violations.push(QuantaleLaw::TensorCommutative { x: name(x), y: name(y) });
            }
            for z in 0..n {
                if j(j(x, y), z) != j(x, j(y, z)) {
                    violations.push(QuantaleLaw::JoinAssociative {
                        x: name(x),
                        y: name(y),
                        z: name(z),
                    });
                }
                if t(t(x, y), z) != t(x, t(y, z)) {
                    violations.push(QuantaleLaw::TensorAssociative {
                        x: name(x),
                        y: name(y),
                        z: name(z),
                    });
                }
                if t(x, j(y, z)) != j(t(x, y), t(x, z)) {
                    violations.push(QuantaleLaw::Distributive {
                        x: name(x),
                        y: name(y),
                        z: name(z),
                    });
                }
            }
        }
    }
    match (0..n).find(|&b| (0..n).all(|x| j(b, x) == x)) {
        Some(bottom) => {
            for x in 0..n {
                if t(x, bottom) != bottom {
                    violations.push(QuantaleLaw::BottomAbsorb { x: name(x) });
                }
            }
        }
        None => violations.push(QuantaleLaw::NoBottom),
    }
    Ok(QuantaleReport { violations })
}

fn check_shape(raw: &RawQuantale) -> Result<(Vec<String>, HashMap<String, Elem>), QuantaleError> {
    let n = raw.elements.len();
    if n == 0 {
        return Err(QuantaleError::Malformed {
            name: raw.name.clone(),
            msg: "empty carrier".into(),
        });
    }
    let mut index = HashMap::new();
    for (i, e) in raw.elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(QuantaleError::Malformed {
                name: raw.name.clone(),
                msg: format!("duplicate element id '{e}'"),
            });
        }
    }
    for (table, what) in [(&raw.join, "join"), (&raw.tensor, "tensor")] {
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(QuantaleError::Malformed {
                name: raw.name.clone(),
                msg: format!("{what} table is not {n}x{n}"),
            });
        }
    }
    Ok((raw.elements.clone(), index))
}

impl Quantale {
    /// Validate the raw tables and build the quantale, precomputing the
    /// derived order, bottom and height.
    pub fn new(raw: RawQuantale) -> Result<Arc<Self>, QuantaleError> {
        let report = validate_quantale(&raw)?;
        if !report.ok() {
            return Err(QuantaleError::Laws { name: raw.name, report });
        }
        let (elements, index) = check_shape(&raw)?;
        let n = elements.len();
        let mut join = Vec::with_capacity(n * n);
        let mut tensor = Vec::with_capacity(n * n);
        for (table, out) in [(&raw.join, &mut join), (&raw.tensor, &mut tensor)] {
            for row in table {
                for cell in row {
                    out.push(index[cell]);
                }
            }
        }
        let unit = index[&raw.unit];
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| join[b * n + x] == x))
            .expect("validated quantale has a bottom");
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = join[x * n + y] == y;
            }
        }
        // Longest chain (in elements) via DP over the strict order.
        let mut height_of = vec![1usize; n];
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                for y in 0..n {
                    if x != y && leq[x * n + y] && height_of[x] + 1 > height_of[y] {
                        height_of[y] = height_of[x] + 1;
                        changed = true;
                    }
                }
            }
        }
        let height = height_of.iter().copied().max().unwrap_or(1);
        Ok(Arc::new(Quantale {
            name: raw.name,
            elements,
            index,
            join,
            tensor,
            unit,
            bottom,
            leq,
            height,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elem_name(&self, e: Elem) -> &str {
        &self.elements[e]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        0..self.size()
    }

    /// Resolve an element id.
    pub fn elem(&self, id: &str) -> Result<Elem, QuantaleError> {
        self.index.get(id).copied().ok_or_else(|| QuantaleError::UnknownElement {
            name: self.name.clone(),
            id: id.to_string(),
        })
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    /// Length in elements of the longest chain in the derived order.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.size() + y]
    }

    pub fn tensor(&self, x: Elem, y: Elem) -> Elem {
        self.tensor[x * self.size() + y]
    }

    /// Derived order; `leq(x,y)` iff `x v y = y`. The empty join is bottom.
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.size() + y]
    }

    /// Join of a finite family, starting from bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Raw tables, e.g. for re-emission or re-validation.
    pub fn to_raw(&self) -> RawQuantale {
        let n = self.size();
        let table = |data: &Vec<Elem>| {
            (0..n)
                .map(|i| (0..n).map(|j| self.elements[data[i * n + j]].clone()).collect())
                .collect()
        };
        RawQuantale {
            name: self.name.clone(),
            elements: self.elements.clone(),
            join: table(&self.join),
            tensor: table(&self.tensor),
            unit: self.elements[self.unit].clone(),
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The two-element quantale: join = or, tensor = and, unit = 1.
pub fn bool_quantale() -> Arc<Quantale> {
    from_ops("bool", &["0", "1"], |x, y| x.max(y), |x, y| x.min(y), 1)
}

/// The `k`-element chain with tensor = min and unit = top. Elements are
/// named by the reduced fractions `i/(k-1)`, so the top is always "1".
pub fn chain_quantale(k: usize) -> Result<Arc<Quantale>, QuantaleError> {
    if k < 2 {
        return Err(QuantaleError::Malformed {
            name: format!("chain:{k}"),
            msg: "chain needs at least 2 elements".into(),
        });
    }
    let names: Vec<String> = (0..k)
        .map(|i| {
            if i == 0 {
                "0".to_string()
            } else if i == k - 1 {
                "1".to_string()
            } else {
                let d = gcd(i, k - 1);
                format!("{}/{}", i / d, (k - 1) / d)
            }
        })
        .collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    Ok(from_ops(&format!("chain:{k}"), &name_refs, |x, y| x.max(y), |x, y| x.min(y), k - 1))
}

/// Capped min-plus: carrier `{0..cap, inf}`, tensor = capped addition with
/// `inf` absorbing, join = numeric min, unit = 0. The derived order is the
/// reverse of the numeric one, so bottom is `inf`.
pub fn minplus_quantale(cap: usize) -> Result<Arc<Quantale>, QuantaleError> {
    if cap < 1 {
        return Err(QuantaleError::Malformed {
            name: format!("minplus:{cap}"),
            msg: "cap must be at least 1".into(),
        });
    }
    let inf = cap + 1;
    let mut names: Vec<String> = (0..=cap).map(|i| i.to_string()).collect();
    names.push("inf".to_string());
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let join = move |x: usize, y: usize| x.min(y);
    let tensor = move |x: usize, y: usize| if x == inf || y == inf { inf } else { (x + y).min(cap) };
    Ok(from_ops(&format!("minplus:{cap}"), &name_refs, join, tensor, 0))
}

/// The four-element diamond `0 < a,b < 1` (the 2x2 Boolean lattice), with
/// tensor = meet and unit = top.
pub fn diamond_quantale() -> Arc<Quantale> {
    // Encode elements as bit pairs: 0=00, a=01, b=10, 1=11.
    from_ops("diamond", &["0", "a", "b", "1"], |x, y| x | y, |x, y| x & y, 3)
}

fn from_ops(
    name: &str,
    elements: &[&str],
    join: impl Fn(usize, usize) -> usize,
    tensor: impl Fn(usize, usize) -> usize,
    unit: usize,
) -> Arc<Quantale> {
    let n = elements.len();
    let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<String>> {
        (0..n)
            .map(|i| (0..n).map(|j| elements[f(i, j)].to_string()).collect())
            .collect()
    };
    let raw = RawQuantale {
        name: name.to_string(),
        elements: elements.iter().map(|s| s.to_string()).collect(),
        join: table(&join),
        tensor: table(&tensor),
        unit: elements[unit].to_string(),
    };
    Quantale::new(raw).expect("built-in quantale satisfies the laws")
}

/// Resolve a built-in quantale name: `bool`, `diamond`, `chain:k`,
/// `minplus:cap`.
pub fn builtin_quantale(name: &str) -> Result<Arc<Quantale>, QuantaleError> {
    if name == "bool" {
        return Ok(bool_quantale());
    }
    if name == "diamond" {
        return Ok(diamond_quantale());
    }
    if let Some(k) = name.strip_prefix("chain:") {
        let k = k.parse::<usize>().map_err(|_| QuantaleError::Malformed {
            name: name.to_string(),
            msg: "chain size must be an integer".into(),
        })?;
        return chain_quantale(k);
    }
    if let Some(cap) = name.strip_prefix("minplus:") {
        let cap = cap.parse::<usize>().map_err(|_| QuantaleError::Malformed {
            name: name.to_string(),
            msg: "minplus cap must be an integer".into(),
        })?;
        return minplus_quantale(cap);
    }
    Err(QuantaleError::Malformed {
        name: name.to_string(),
        msg: "unknown built-in quantale".into(),
    })
}

/// The standard roster used by the seeded suites.
pub fn builtin_roster() -> Vec<Arc<Quantale>> {
    vec![
        bool_quantale(),
        chain_quantale(3).unwrap(),
        chain_quantale(5).unwrap(),
        minplus_quantale(6).unwrap(),
        diamond_quantale(),
    ]
}

/// A total matrix of quantale elements over anonymous index sets.
///
/// Carrier for hom matrices and module entries; row/column names live in the
/// owning category. Stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl QMatrix {
    pub fn filled(rows: usize, cols: usize, e: Elem) -> Self {
        QMatrix { rows, cols, data: vec![e; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, e: Elem) {
        self.data[r * self.cols + c] = e;
    }

    /// Entrywise join; panics on shape mismatch.
    pub fn join(&self, other: &QMatrix, q: &Quantale) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&x, &y)| q.join(x, y))
                .collect(),
        }
    }

    /// Entrywise order.
    pub fn leq(&self, other: &QMatrix, q: &Quantale) -> bool {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        self.data.iter().zip(&other.data).all(|(&x, &y)| q.leq(x, y))
    }

    /// First entry where the two matrices differ.
    pub fn first_diff(&self, other: &QMatrix) -> Option<(usize, usize)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) != other.get(r, c) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// Join-of-tensors matrix product: `(self.other)(r,c) = v_k self(r,k) (x) other(k,c)`.
    pub fn product(&self, other: &QMatrix, q: &Quantale) -> QMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        QMatrix::from_fn(self.rows, other.cols, |r, c| {
            q.join_all((0..self.cols).map(|k| q.tensor(self.get(r, k), other.get(k, c))))
        })
    }

    /// Render with element names, row per line.
    pub fn render(&self, q: &Quantale) -> String {
        let mut out = String::from("[");
        for r in 0..self.rows {
            if r > 0 {
                out.push_str("; ");
            }
            for c in 0..self.cols {
                if c > 0 {
                    out.push(' ');
                }
                out.push_str(q.elem_name(self.get(r, c)));
            }
        }
        out.push(']');
        out
    }
}

/// Least `S` with `S = base v (M . S)`, computed by Kleene ascent from
/// `base`. Equals the join of all powers `M^(.n)` with `M^(.0) = base`; the
/// finite entry lattice guarantees stabilisation. Both matrices must be
/// square on the same index set.
pub fn matrix_star(q: &Quantale, m: &QMatrix, base: &QMatrix) -> Result<QMatrix, QuantaleError> {
    Ok(matrix_star_counted(q, m, base)?.0)
}

/// As [`matrix_star`], also reporting how many iterations the ascent took.
pub fn matrix_star_counted(
    q: &Quantale,
    m: &QMatrix,
    base: &QMatrix,
) -> Result<(QMatrix, usize), QuantaleError> {
    if m.rows() != m.cols() {
        return Err(QuantaleError::Malformed {
            name: q.name().to_string(),
            msg: format!("star of a non-square {}x{} matrix", m.rows(), m.cols()),
        });
    }
    if base.rows() != m.rows() || base.cols() != m.cols() {
        return Err(QuantaleError::Malformed {
            name: q.name().to_string(),
            msg: format!(
                "star dimension mismatch: matrix is {}x{}, base is {}x{}",
                m.rows(),
                m.cols(),
                base.rows(),
                base.cols()
            ),
        });
    }
    let mut s = base.clone();
    let mut steps = 0;
    loop {
        let next = base.join(&m.product(&s, q), q);
        steps += 1;
        if next == s {
            return Ok((s, steps));
        }
        s = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for q in builtin_roster() {
            let report = validate_quantale(&q.to_raw()).unwrap();
            assert!(report.ok(), "{}: {report}", q.name());
        }
    }

    #[test]
    fn chain_element_names() {
        let q = chain_quantale(5).unwrap();
        let names: Vec<&str> = q.elements().map(|e| q.elem_name(e)).collect();
        assert_eq!(names, ["0", "1/4", "1/2", "3/4", "1"]);
        assert_eq!(q.elem_name(q.unit()), "1");
        assert_eq!(q.elem_name(q.bottom()), "0");
    }

    #[test]
    fn bool_order_and_empty_join() {
        let q = bool_quantale();
        let zero = q.elem("0").unwrap();
        let one = q.elem("1").unwrap();
        assert!(q.leq(zero, one));
        assert!(!q.leq(one, zero));
        assert_eq!(q.join_all([]), zero);
    }

    #[test]
    fn minplus_caps_and_absorbs() {
        let q = minplus_quantale(5).unwrap();
        let two = q.elem("2").unwrap();
        let four = q.elem("4").unwrap();
        let inf = q.elem("inf").unwrap();
        // Independent cap oracle: min(a+b, cap), with inf absorbing.
        assert_eq!(q.tensor(two, four), q.elem("5").unwrap());
        assert_eq!(q.tensor(two, inf), inf);
        assert_eq!(q.bottom(), inf);
        // Order is reversed: numerically smaller is higher.
        assert!(q.leq(four, two));
        let cap = 5;
        for x in 0..=cap {
            for y in 0..=cap {
                let got = q.tensor(q.elem(&x.to_string()).unwrap(), q.elem(&y.to_string()).unwrap());
                assert_eq!(q.elem_name(got), (x + y).min(cap).to_string());
            }
        }
    }

    #[test]
    fn mutated_chain_fails_distributivity() {
        // 3-chain with the tensor table altered so 1/2 (x) 1/2 = 1.
        let mut raw = chain_quantale(3).unwrap().to_raw();
        raw.tensor[1][1] = "1".into();
        let report = validate_quantale(&raw).unwrap();
        assert!(!report.ok());
        assert!(report.violations.iter().any(|v| matches!(
            v,
            QuantaleLaw::Distributive { x, y, .. } if x == "1/2" && y == "1/2"
        )));
    }

    #[test]
    fn malformed_table_is_input_error() {
        let mut raw = bool_quantale().to_raw();
        raw.join[0].pop();
        assert!(matches!(validate_quantale(&raw), Err(QuantaleError::Malformed { .. })));
        let mut raw2 = bool_quantale().to_raw();
        raw2.tensor[1][0] = "2".into();
        assert!(matches!(validate_quantale(&raw2), Err(QuantaleError::Malformed { .. })));
    }

    #[test]
    fn star_of_bottom_matrix_is_base() {
        let q = bool_quantale();
        let base = QMatrix::from_fn(3, 3, |r, c| if r == c { q.unit() } else { q.bottom() });
        let m = QMatrix::filled(3, 3, q.bottom());
        assert_eq!(matrix_star(&q, &m, &base).unwrap(), base);
    }

    #[test]
    fn star_is_path_closure_on_a_path_graph() {
        let q = bool_quantale();
        let one = q.unit();
        let bot = q.bottom();
        // 4-node path 0 -> 1 -> 2 -> 3.
        let mut m = QMatrix::filled(4, 4, bot);
        for i in 0..3 {
            m.set(i, i + 1, one);
        }
        let base = QMatrix::from_fn(4, 4, |r, c| if r == c { one } else { bot });
        let s = matrix_star(&q, &m, &base).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(s.get(r, c) == one, r <= c, "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn star_iteration_bound() {
        let q = minplus_quantale(6).unwrap();
        let n = 5;
        let base = QMatrix::from_fn(n, n, |r, c| if r == c { q.unit() } else { q.bottom() });
        let m = QMatrix::from_fn(n, n, |r, c| ((r * 3 + c * 5) % q.size()) as Elem);
        let (_, steps) = matrix_star_counted(&q, &m, &base).unwrap();
        assert!(steps <= q.height() * n * n + 1, "steps {steps}");
    }

    #[test]
    fn diamond_is_the_two_by_two_boolean_lattice() {
        let q = diamond_quantale();
        let a = q.elem("a").unwrap();
        let b = q.elem("b").unwrap();
        let top = q.elem("1").unwrap();
        let bot = q.elem("0").unwrap();
        assert_eq!(q.join(a, b), top);
        assert_eq!(q.tensor(a, b), bot);
        assert!(!q.leq(a, b) && !q.leq(b, a));
    }
}
