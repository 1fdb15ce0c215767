//! Finite-dimensional modules over a quantum heap's underlying algebra and
//! the ternary lozenge product on them.
//!
//! A module is a family of action matrices, one per algebra basis element.
//! `Side::Left` means the action family is multiplicative
//! (`rho(e_i e_j) = rho(e_i) rho(e_j)`), `Side::Right` means it is
//! anti-multiplicative; a right module over `A` is exactly a left module
//! over the opposite algebra, and [`Module::converted_to_opposite_base`]
//! realizes that dictionary.
//!
//! The ternary product contracts the cooperation's structure constants
//! against a `(left, right, left)` module triple:
//! `h . (a (x) b (x) c) = h^(1) a (x) h^(2) b (x) h^(3) c`. Everything lives
//! on flat tensor spaces under the global flattening convention, so nested
//! products compare entrywise with no coherence bookkeeping.

use crate::algcore::{opposite_algebra, Algebra, Character, HopfAlgebra, QuantumHeap};
use crate::exec;
use crate::field::Scalar;
use crate::matrix::{kron, kron_all, Matrix, MultiIndex};
use crate::report::VerificationReport;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A module presented by one action matrix per basis element of its base
/// algebra. Shapes are validated at construction; the module laws are
/// checked by [`verify_module`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub side: Side,
    pub base: Algebra,
    pub dim: usize,
    /// `actions[i]` is the `dim x dim` matrix by which `e_i` acts.
    pub actions: Vec<Matrix>,
}

impl Module {
    pub fn new(side: Side, base: Algebra, dim: usize, actions: Vec<Matrix>) -> Result<Module> {
        if actions.len() != base.dim() {
            return Err(Error::InvalidStructure(format!(
                "expected {} action matrices, got {}",
                base.dim(),
                actions.len()
            )));
        }
        for m in &actions {
            if m.field() != base.field() {
                return Err(Error::FieldMismatch(base.field(), m.field()));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::ShapeMismatch {
                    op: "module action shape",
                    lhs: (m.rows(), m.cols()),
                    rhs: (dim, dim),
                });
            }
        }
        Ok(Module {
            side,
            base,
            dim,
            actions,
        })
    }

    /// One-dimensional module where `e_i` acts by `chi(e_i)`.
    pub fn character_module(base: &Algebra, chi: &Character, side: Side) -> Module {
        let actions = (0..base.dim())
            .map(|i| {
                let mut m = Matrix::zero(base.field(), 1, 1);
                m.add_entry(0, 0, chi.eps.get(0, i)).expect("in range");
                m
            })
            .collect();
        Module {
            side,
            base: base.clone(),
            dim: 1,
            actions,
        }
    }

    /// The regular module: the algebra acting on itself by multiplication on
    /// the chosen side.
    pub fn regular(base: &Algebra, side: Side) -> Module {
        let actions = (0..base.dim())
            .map(|i| match side {
                Side::Left => base.left_multiplication_matrix(i),
                Side::Right => base.right_multiplication_matrix(i),
            })
            .collect();
        Module {
            side,
            base: base.clone(),
            dim: base.dim(),
            actions,
        }
    }

    /// The same action family read over the opposite algebra with the side
    /// swapped. Applying it twice returns the original module.
    pub fn converted_to_opposite_base(&self) -> Module {
        Module {
            side: match self.side {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            },
            base: opposite_algebra(&self.base),
            dim: self.dim,
            actions: self.actions.clone(),
        }
    }
}

/// Checks unitality and the side-appropriate multiplicativity of the action
/// family. Failure witnesses carry the offending basis pair `(i, j)`.
pub fn verify_module(m: &Module) -> Result<VerificationReport> {
    let d = m.base.dim();
    let field = m.base.field();
    let mut report = VerificationReport::new(format!(
        "{}-module(dim={})",
        match m.side {
            Side::Left => "left",
            Side::Right => "right",
        },
        m.dim
    ));

    let mut unit_action = Matrix::zero(field, m.dim, m.dim);
    for (i, _, s) in m.base.unit().iter() {
        unit_action = unit_action.add(&m.actions[i].scale(s)?)?;
    }
    report.record(
        "unitality",
        unit_action
            .first_difference(&Matrix::identity(field, m.dim))
            .map(|(r, c)| vec![r, c]),
    );

    let pairs = MultiIndex::new(&[d, d]);
    let mu_columns: Vec<Vec<(usize, Scalar)>> = {
        let mut cols = vec![Vec::new(); d * d];
        for (k, c, s) in m.base.mu().iter() {
            cols[c].push((k, s.clone()));
        }
        cols
    };
    let bad = exec::find_first(d * d, |f| {
        let ij = pairs.unflatten(f);
        let (i, j) = (ij[0], ij[1]);
        let mut lhs = Matrix::zero(field, m.dim, m.dim);
        for (k, s) in &mu_columns[f] {
            lhs = lhs
                .add(&m.actions[*k].scale(s).expect("same field"))
                .expect("same shape");
        }
        let rhs = match m.side {
            Side::Left => m.actions[i].compose(&m.actions[j]),
            Side::Right => m.actions[j].compose(&m.actions[i]),
        }
        .expect("same shape");
        lhs != rhs
    });
    report.record(
        match m.side {
            Side::Left => "multiplicativity rho(e_i e_j) = rho(e_i) rho(e_j)",
            Side::Right => "multiplicativity rho(e_i e_j) = rho(e_j) rho(e_i)",
        },
        bad.map(|f| pairs.unflatten(f)),
    );
    Ok(report)
}

fn check_base(m: &Module, base: &Algebra, expect: Side, what: &str) -> Result<()> {
    if m.base != *base {
        return Err(Error::InvalidStructure(format!(
            "{what} is not a module over the expected base algebra"
        )));
    }
    if m.side != expect {
        return Err(Error::InvalidStructure(format!(
            "{what} must be a {} module",
            match expect {
                Side::Left => "left",
                Side::Right => "right",
            }
        )));
    }
    Ok(())
}

/// Contracts a `d^3 x d` coefficient matrix against a module triple: the
/// action of `e_h` on the flat tensor space is
/// `sum coeffs[(r,s,t), h] . rho_a(e_r) (x) rho_b(e_s) (x) rho_c(e_t)`.
fn contract_triple(coeffs: &Matrix, a: &Module, b: &Module, c: &Module) -> Vec<Matrix> {
    let base = &a.base;
    let d = base.dim();
    let field = base.field();
    let triple = MultiIndex::new(&[d, d, d]);
    let m = a.dim * b.dim * c.dim;
    let mut columns: Vec<Vec<(Vec<usize>, Scalar)>> = vec![Vec::new(); d];
    for (flat, h, s) in coeffs.iter() {
        columns[h].push((triple.unflatten(flat), s.clone()));
    }
    exec::map_indices(d, |h| {
        let mut acc = Matrix::zero(field, m, m);
        for (rst, s) in &columns[h] {
            let term = kron_all(&[&a.actions[rst[0]], &b.actions[rst[1]], &c.actions[rst[2]]])
                .expect("same field")
                .scale(s)
                .expect("same field");
            acc = acc.add(&term).expect("same shape");
        }
        acc
    })
}

/// The ternary product of a `(left, right, left)` module triple along the
/// heap's cooperation: `h (a (x) b (x) c) = h^(1) a (x) h^(2) b (x) h^(3) c`.
/// The result is a left module because the cooperation is multiplicative
/// into the middle-opposite cube.
pub fn ternary_action_left(
    q: &QuantumHeap,
    a: &Module,
    b: &Module,
    c: &Module,
) -> Result<Module> {
    check_base(a, &q.alg, Side::Left, "first factor")?;
    check_base(b, &q.alg, Side::Right, "middle factor")?;
    check_base(c, &q.alg, Side::Left, "third factor")?;
    let actions = contract_triple(&q.tau, a, b, c);
    Module::new(Side::Left, q.alg.clone(), a.dim * b.dim * c.dim, actions)
}

/// The right-handed companion on a `(right, left, right)` triple:
/// `(b (x) c (x) d) . h = b . h^(1) (x) h^(2) c (x) d . h^(3)`.
pub fn ternary_action_right(
    q: &QuantumHeap,
    b: &Module,
    c: &Module,
    d: &Module,
) -> Result<Module> {
    check_base(b, &q.alg, Side::Right, "first factor")?;
    check_base(c, &q.alg, Side::Left, "middle factor")?;
    check_base(d, &q.alg, Side::Right, "third factor")?;
    let actions = contract_triple(&q.tau, b, c, d);
    Module::new(Side::Right, q.alg.clone(), b.dim * c.dim * d.dim, actions)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualVariant {
    /// `(h . f)(v) = f(S(h) v)`: a left module on the dual space.
    LeftViaS,
    /// `(f . h)(v) = f(h v)`: a right module on the dual space.
    RightPlain,
}

/// Dual of a left module on the dual space, in either of the two standard
/// variants.
pub fn dual_module(h: &HopfAlgebra, m: &Module, variant: DualVariant) -> Result<Module> {
    check_base(m, &h.alg, Side::Left, "module to dualize")?;
    let d = h.dim();
    let actions: Vec<Matrix> = match variant {
        DualVariant::RightPlain => m.actions.iter().map(|a| a.transpose()).collect(),
        DualVariant::LeftViaS => {
            let mut out = Vec::with_capacity(d);
            for i in 0..d {
                let mut acc = Matrix::zero(h.field(), m.dim, m.dim);
                for (j, c, s) in h.antipode.iter() {
                    if c == i {
                        acc = acc.add(&m.actions[j].scale(s)?)?;
                    }
                }
                out.push(acc.transpose());
            }
            out
        }
    };
    Module::new(
        match variant {
            DualVariant::LeftViaS => Side::Left,
            DualVariant::RightPlain => Side::Right,
        },
        h.alg.clone(),
        m.dim,
        actions,
    )
}

/// The rigid-monoidal ternary product `(Q1 (x) Q2*) (x) Q3` with the
/// `S`-twisted dual in the middle, as a single action family built from the
/// iterated comultiplication. Entrywise equal to routing
/// [`ternary_action_left`] through the derived heap with the plain dual in
/// the middle.
pub fn lozenge_rigid(h: &HopfAlgebra, q1: &Module, q2: &Module, q3: &Module) -> Result<Module> {
    check_base(q1, &h.alg, Side::Left, "first factor")?;
    check_base(q2, &h.alg, Side::Left, "second factor")?;
    check_base(q3, &h.alg, Side::Left, "third factor")?;
    let d = h.dim();
    let id = Matrix::identity(h.field(), d);
    let delta = h.coalg.delta();
    let delta2 = kron(delta, &id)?.compose(delta)?;
    let dual_mid = dual_module(h, q2, DualVariant::LeftViaS)?;
    let actions = contract_triple(&delta2, q1, &dual_mid, q3);
    Module::new(
        Side::Left,
        h.alg.clone(),
        q1.dim * q2.dim * q3.dim,
        actions,
    )
}

/// Outcome of the bounded intertwiner search.
#[derive(Clone, Debug)]
pub enum IsoResult {
    Yes(Matrix),
    No(String),
    Unknown,
}

impl IsoResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoResult::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoResult::No(_))
    }
}

/// Basis of the intertwiner space `{T : T rho1(e_i) = rho2(e_i) T}`, found
/// by exact Gaussian elimination; each solution is reshaped to `m2 x m1`.
fn hom_space(m1: &Module, m2: &Module) -> Result<Vec<Matrix>> {
    let d = m1.base.dim();
    let field = m1.base.field();
    let unknowns = m2.dim * m1.dim; // T[k][c] at flat k * m1.dim + c
    let mut system = Matrix::zero(field, d * unknowns, unknowns);
    let mut row = 0;
    for i in 0..d {
        let rho1 = &m1.actions[i];
        let rho2 = &m2.actions[i];
        for r in 0..m2.dim {
            for c in 0..m1.dim {
                // (rho2 T - T rho1)[r][c] = 0
                for k in 0..m2.dim {
                    let coeff = rho2.get(r, k);
                    if !coeff.is_zero() {
                        system.add_entry(row, k * m1.dim + c, coeff)?;
                    }
                }
                for k in 0..m1.dim {
                    let coeff = rho1.get(k, c);
                    if !coeff.is_zero() {
                        system.add_entry(row, r * m1.dim + k, -&coeff)?;
                    }
                }
                row += 1;
            }
        }
    }
    system
        .nullspace()
        .into_iter()
        .map(|v| {
            Matrix::from_triplets(
                field,
                m2.dim,
                m1.dim,
                v.into_iter()
                    .enumerate()
                    .map(|(f, s)| (f / m1.dim, f % m1.dim, s)),
            )
        })
        .collect()
}

/// Decides whether two modules of the same side over the same base algebra
/// are isomorphic: `No` when the dimensions differ or either Hom space is
/// zero, `Yes` with an invertible intertwiner found by searching small
/// integer combinations of a Hom-space basis (coefficients in `-2..=2`,
/// at most 4 basis vectors combined), `Unknown` when the bounded search is
/// exhausted.
pub fn modules_isomorphic(m1: &Module, m2: &Module) -> Result<IsoResult> {
    if m1.base != m2.base {
        return Err(Error::InvalidStructure(
            "modules over different base algebras".into(),
        ));
    }
    if m1.side != m2.side {
        return Err(Error::InvalidStructure("modules of different sides".into()));
    }
    if m1.dim != m2.dim {
        return Ok(IsoResult::No(format!(
            "dimensions differ: {} vs {}",
            m1.dim, m2.dim
        )));
    }
    let forward = hom_space(m1, m2)?;
    if forward.is_empty() {
        return Ok(IsoResult::No("Hom(m1, m2) is zero".into()));
    }
    if hom_space(m2, m1)?.is_empty() {
        return Ok(IsoResult::No("Hom(m2, m1) is zero".into()));
    }
    let field = m1.base.field();
    let k = forward.len().min(4);
    let mut coeffs = vec![0i64; k];
    loop {
        if coeffs.iter().any(|&c| c != 0) {
            let mut t = Matrix::zero(field, m2.dim, m1.dim);
            for (c, b) in coeffs.iter().zip(&forward) {
                if *c != 0 {
                    t = t.add(&b.scale(&Scalar::from_integer(field, *c))?)?;
                }
            }
            if !t.det()?.is_zero() {
                return Ok(IsoResult::Yes(t));
            }
        }
        // Advance the coefficient vector over {-2..2}^k.
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(IsoResult::Unknown);
            }
            if coeffs[pos] < 2 {
                coeffs[pos] += 1;
                break;
            }
            coeffs[pos] = -2;
            pos += 1;
        }
    }
}

/// Compares the three bracketings of a five-fold lozenge product on the
/// common flat tensor space. The pattern must alternate
/// `(left, right, left, right, left)` and the total dimension is capped
/// at 64. The middle bracketing takes the inner product with
/// [`ternary_action_right`].
pub fn check_para_associativity(
    q: &QuantumHeap,
    modules: &[&Module; 5],
) -> Result<VerificationReport> {
    let sides = [Side::Left, Side::Right, Side::Left, Side::Right, Side::Left];
    for (k, (m, side)) in modules.iter().zip(sides).enumerate() {
        check_base(m, &q.alg, side, &format!("factor {}", k + 1))?;
    }
    let total: usize = modules.iter().map(|m| m.dim).product();
    if total > 64 {
        return Err(Error::SizeLimit(format!(
            "total tensor dimension {total} exceeds 64"
        )));
    }
    let [m1, m2, m3, m4, m5] = *modules;
    let left = {
        let inner = ternary_action_left(q, m1, m2, m3)?;
        ternary_action_left(q, &inner, m4, m5)?
    };
    let middle = {
        let inner = ternary_action_right(q, m2, m3, m4)?;
        ternary_action_left(q, m1, &inner, m5)?
    };
    let right = {
        let inner = ternary_action_left(q, m3, m4, m5)?;
        ternary_action_left(q, m1, m2, &inner)?
    };
    let mut report = VerificationReport::new(format!("para-associativity(total dim {total})"));
    let mut compare = |axiom: &str, a: &Module, b: &Module| {
        let witness = a
            .actions
            .iter()
            .zip(&b.actions)
            .enumerate()
            .find_map(|(h, (x, y))| x.first_difference(y).map(|(r, c)| vec![h, r, c]));
        report.record(axiom, witness);
    };
    compare("outer-left bracketing = middle bracketing", &left, &middle);
    compare("middle bracketing = outer-right bracketing", &middle, &right);
    compare("outer-left bracketing = outer-right bracketing", &left, &right);
    Ok(report)
}

/// Checks that the lozenge with the trivial module in the middle recovers
/// the usual comultiplication tensor action on `Q1 (x) Q2` (the middle
/// 1-dimensional factor is dropped by the flat identification).
pub fn monoidal_from_heapy(
    h: &HopfAlgebra,
    q1: &Module,
    q2: &Module,
) -> Result<VerificationReport> {
    check_base(q1, &h.alg, Side::Left, "first factor")?;
    check_base(q2, &h.alg, Side::Left, "second factor")?;
    let heap = crate::functors::qheap_from_hopf(h)?;
    let unit = Module::character_module(&h.alg, &h.counit_character(), Side::Left);
    let unit_dual = dual_module(h, &unit, DualVariant::RightPlain)?;
    let via_heap = ternary_action_left(&heap, q1, &unit_dual, q2)?;

    let d = h.dim();
    let field = h.field();
    let pairs = MultiIndex::new(&[d, d]);
    let m = q1.dim * q2.dim;
    let mut columns: Vec<Vec<(Vec<usize>, Scalar)>> = vec![Vec::new(); d];
    for (flat, hcol, s) in h.coalg.delta().iter() {
        columns[hcol].push((pairs.unflatten(flat), s.clone()));
    }
    let delta_actions: Vec<Matrix> = exec::map_indices(d, |hb| {
        let mut acc = Matrix::zero(field, m, m);
        for (ij, s) in &columns[hb] {
            let term = kron(&q1.actions[ij[0]], &q2.actions[ij[1]])
                .expect("same field")
                .scale(s)
                .expect("same field");
            acc = acc.add(&term).expect("same shape");
        }
        acc
    });

    let mut report = VerificationReport::new(format!(
        "monoidal-from-ternary(dims {} x {})",
        q1.dim, q2.dim
    ));
    let witness = via_heap
        .actions
        .iter()
        .zip(&delta_actions)
        .enumerate()
        .find_map(|(hb, (a, b))| a.first_difference(b).map(|(r, c)| vec![hb, r, c]));
    report.record(
        "lozenge with unit middle = comultiplication tensor action",
        witness,
    );
    Ok(report)
}
