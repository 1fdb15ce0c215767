//! Structure-constant (co)algebraic structures over an exact field: unital
//! algebras, coalgebras, Hopf algebras, quantum heaps, and characters, with
//! verifiers that check every defining identity as an exact matrix equality.
//!
//! Conventions (shared with the file format): a linear map is a matrix acting
//! on column vectors, so multiplication is `mu: d x d^2`, comultiplication is
//! `delta: d^2 x d`, the ternary cooperation is `tau: d^3 x d`, and columns
//! index the source basis.

use crate::field::{FieldSpec, Scalar};
use crate::matrix::{kron, kron_all, tensor_permutation, Matrix};
use crate::report::VerificationReport;
use crate::{Error, Result};

/// A unital associative algebra presented by structure constants.
/// Shapes are validated at construction; the axioms are checked by
/// [`verify_algebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    /// `d x d^2`: column `flat(i, j)` is the product `e_i * e_j`.
    mu: Matrix,
    /// `d x 1`: the unit element.
    unit: Matrix,
}

impl Algebra {
    pub fn new(field: FieldSpec, dim: usize, mu: Matrix, unit: Matrix) -> Result<Algebra> {
        check_shape("mu", &mu, field, dim, dim * dim)?;
        check_shape("unit", &unit, field, dim, 1)?;
        Ok(Algebra {
            field,
            dim,
            mu,
            unit,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mu(&self) -> &Matrix {
        &self.mu
    }

    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    /// Basis vector `e_i` as a column.
    pub fn basis_column(&self, i: usize) -> Matrix {
        let mut m = Matrix::zero(self.field, self.dim, 1);
        m.add_entry(i, 0, Scalar::one(self.field)).expect("in range");
        m
    }

    /// Product of two column vectors.
    pub fn mul_vec(&self, v: &Matrix, w: &Matrix) -> Result<Matrix> {
        self.mu.compose(&kron(v, w)?)
    }

    /// `v^k` for a column vector `v` (empty product is the unit).
    pub fn pow_vec(&self, v: &Matrix, k: usize) -> Result<Matrix> {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul_vec(&acc, v)?;
        }
        Ok(acc)
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn left_multiplication_matrix(&self, i: usize) -> Matrix {
        let mut m = Matrix::zero(self.field, self.dim, self.dim);
        let cols = crate::MultiIndex::new(&[self.dim, self.dim]);
        for (r, c, s) in self.mu.iter() {
            let ij = cols.unflatten(c);
            if ij[0] == i {
                m.add_entry(r, ij[1], s.clone()).expect("in range");
            }
        }
        m
    }

    /// Matrix of right multiplication by `e_i`.
    pub fn right_multiplication_matrix(&self, i: usize) -> Matrix {
        let mut m = Matrix::zero(self.field, self.dim, self.dim);
        let cols = crate::MultiIndex::new(&[self.dim, self.dim]);
        for (r, c, s) in self.mu.iter() {
            let ij = cols.unflatten(c);
            if ij[1] == i {
                m.add_entry(r, ij[0], s.clone()).expect("in range");
            }
        }
        m
    }
}

/// Comultiplication and counit, shapes validated at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    dim: usize,
    /// `d^2 x d`: column `h` is `Delta(e_h)`.
    delta: Matrix,
    /// `1 x d`.
    epsilon: Matrix,
}

impl Coalgebra {
    pub fn new(field: FieldSpec, dim: usize, delta: Matrix, epsilon: Matrix) -> Result<Coalgebra> {
        check_shape("delta", &delta, field, dim * dim, dim)?;
        check_shape("epsilon", &epsilon, field, 1, dim)?;
        Ok(Coalgebra {
            dim,
            delta,
            epsilon,
        })
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn epsilon(&self) -> &Matrix {
        &self.epsilon
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    pub alg: Algebra,
    pub coalg: Coalgebra,
    /// `d x d`: column `j` is `S(e_j)`.
    pub antipode: Matrix,
}

impl HopfAlgebra {
    pub fn new(alg: Algebra, coalg: Coalgebra, antipode: Matrix) -> Result<HopfAlgebra> {
        check_shape("antipode", &antipode, alg.field(), alg.dim(), alg.dim())?;
        if coalg.dim != alg.dim() {
            return Err(Error::InvalidStructure(
                "coalgebra dimension differs from algebra dimension".into(),
            ));
        }
        Ok(HopfAlgebra {
            alg,
            coalg,
            antipode,
        })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.alg.field()
    }

    /// The counit as a standalone character value.
    pub fn counit_character(&self) -> Character {
        Character {
            eps: self.coalg.epsilon.clone(),
        }
    }
}

/// A unital algebra with a ternary cooperation `tau: H -> H (x) H_op (x) H`.
/// Shapes are validated at construction; the laws are checked by
/// [`verify_quantum_heap`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumHeap {
    pub alg: Algebra,
    /// `d^3 x d`: column `h` is `tau(e_h)` on the flattened triple basis.
    pub tau: Matrix,
}

impl QuantumHeap {
    pub fn new(alg: Algebra, tau: Matrix) -> Result<QuantumHeap> {
        let d = alg.dim();
        check_shape("tau", &tau, alg.field(), d * d * d, d)?;
        Ok(QuantumHeap { alg, tau })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.alg.field()
    }
}

/// A linear functional `1 x d` intended to be an algebra map to the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub eps: Matrix,
}

impl Character {
    pub fn new(field: FieldSpec, dim: usize, eps: Matrix) -> Result<Character> {
        check_shape("character", &eps, field, 1, dim)?;
        Ok(Character { eps })
    }

    /// The functional sending every basis vector of a group-like basis to 1.
    pub fn all_ones(field: FieldSpec, dim: usize) -> Character {
        let mut eps = Matrix::zero(field, 1, dim);
        for i in 0..dim {
            eps.add_entry(0, i, Scalar::one(field)).expect("in range");
        }
        Character { eps }
    }
}

fn check_shape(
    name: &str,
    m: &Matrix,
    field: FieldSpec,
    rows: usize,
    cols: usize,
) -> Result<()> {
    if m.field() != field {
        return Err(Error::FieldMismatch(field, m.field()));
    }
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::ShapeMismatch {
            op: match name {
                "mu" => "mu shape",
                "unit" => "unit shape",
                "delta" => "delta shape",
                "epsilon" => "epsilon shape",
                "antipode" => "antipode shape",
                "tau" => "tau shape",
                "character" => "character shape",
                _ => "shape",
            },
            lhs: (m.rows(), m.cols()),
            rhs: (rows, cols),
        });
    }
    Ok(())
}

/// The same space with the product `sigma . mu` (factors swapped).
pub fn opposite_algebra(a: &Algebra) -> Algebra {
    let d = a.dim;
    let swap = tensor_permutation(a.field, &[d, d], &[1, 0]).expect("valid permutation");
    let mu_op = a.mu.compose(&swap).expect("shapes agree");
    Algebra {
        field: a.field,
        dim: d,
        mu: mu_op,
        unit: a.unit.clone(),
    }
}

/// Tensor product of algebras, with each flagged factor replaced by its
/// opposite. The product on `A (x) B` is
/// `(mu_A (x) mu_B) . (id (x) sigma (x) id)` and the unit is `1_A (x) 1_B`;
/// factors fold left to right under the global flattening convention.
pub fn tensor_product_algebra(parts: &[&Algebra], opposite_flags: &[bool]) -> Result<Algebra> {
    if parts.len() != opposite_flags.len() || parts.len() < 2 {
        return Err(Error::InvalidStructure(
            "tensor product needs >= 2 factors with one flag each".into(),
        ));
    }
    let field = parts[0].field;
    for p in parts {
        if p.field != field {
            return Err(Error::FieldMismatch(field, p.field));
        }
    }
    let mut factors: Vec<Algebra> = Vec::with_capacity(parts.len());
    for (p, &op) in parts.iter().zip(opposite_flags) {
        factors.push(if op { opposite_algebra(p) } else { (*p).clone() });
    }
    let mut acc = factors[0].clone();
    for b in &factors[1..] {
        acc = tensor_square_step(&acc, b)?;
    }
    Ok(acc)
}

fn tensor_square_step(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let (da, db) = (a.dim, b.dim);
    // (a, b, a', b') -> (a, a', b, b'), then multiply factorwise.
    let shuffle = tensor_permutation(a.field, &[da, db, da, db], &[0, 2, 1, 3])?;
    let mu = kron(&a.mu, &b.mu)?.compose(&shuffle)?;
    let unit = kron(&a.unit, &b.unit)?;
    Algebra::new(a.field, da * db, mu, unit)
}

fn record_equality(
    report: &mut VerificationReport,
    axiom: &str,
    lhs: &Matrix,
    rhs: &Matrix,
) {
    report.record(
        axiom,
        lhs.first_difference(rhs).map(|(r, c)| vec![r, c]),
    );
}

/// Checks associativity and both unit laws.
pub fn verify_algebra(a: &Algebra) -> Result<VerificationReport> {
    let d = a.dim;
    let id = Matrix::identity(a.field, d);
    let mut report = VerificationReport::new(format!("algebra(dim={d})"));
    let left = a.mu.compose(&kron(&a.mu, &id)?)?;
    let right = a.mu.compose(&kron(&id, &a.mu)?)?;
    record_equality(&mut report, "associativity", &left, &right);
    let ul = a.mu.compose(&kron(&a.unit, &id)?)?;
    record_equality(&mut report, "left unit", &ul, &id);
    let ur = a.mu.compose(&kron(&id, &a.unit)?)?;
    record_equality(&mut report, "right unit", &ur, &id);
    Ok(report)
}

/// Checks the full Hopf-algebra axiom list: algebra laws, coalgebra laws,
/// that `delta` and `epsilon` are unital algebra maps, and both antipode
/// laws.
pub fn verify_hopf(h: &HopfAlgebra) -> Result<VerificationReport> {
    let d = h.dim();
    let field = h.field();
    let id = Matrix::identity(field, d);
    let delta = h.coalg.delta();
    let eps = h.coalg.epsilon();
    let mut report = verify_algebra(&h.alg)?;
    report.structure = format!("hopf(dim={d})");

    let co_l = kron(delta, &id)?.compose(delta)?;
    let co_r = kron(&id, delta)?.compose(delta)?;
    record_equality(&mut report, "coassociativity", &co_l, &co_r);
    let cu_l = kron(eps, &id)?.compose(delta)?;
    record_equality(&mut report, "left counit", &cu_l, &id);
    let cu_r = kron(&id, eps)?.compose(delta)?;
    record_equality(&mut report, "right counit", &cu_r, &id);

    let square = tensor_product_algebra(&[&h.alg, &h.alg], &[false, false])?;
    let dm_l = delta.compose(h.alg.mu())?;
    let dm_r = square.mu().compose(&kron(delta, delta)?)?;
    record_equality(&mut report, "delta multiplicative", &dm_l, &dm_r);
    let du = delta.compose(h.alg.unit())?;
    record_equality(&mut report, "delta unital", &du, square.unit());

    let em_l = eps.compose(h.alg.mu())?;
    let em_r = kron(eps, eps)?;
    record_equality(&mut report, "epsilon multiplicative", &em_l, &em_r);
    let eu = eps.compose(h.alg.unit())?;
    record_equality(&mut report, "epsilon unital", &eu, &Matrix::identity(field, 1));

    let unit_eps = h.alg.unit().compose(eps)?;
    let anti_l = h
        .alg
        .mu()
        .compose(&kron(&h.antipode, &id)?)?
        .compose(delta)?;
    record_equality(&mut report, "antipode law (S (x) id)", &anti_l, &unit_eps);
    let anti_r = h
        .alg
        .mu()
        .compose(&kron(&id, &h.antipode)?)?
        .compose(delta)?;
    record_equality(&mut report, "antipode law (id (x) S)", &anti_r, &unit_eps);
    Ok(report)
}

/// The tensor-cube algebra with opposite middle factor, the target of `tau`.
pub fn middle_opposite_cube(a: &Algebra) -> Result<Algebra> {
    tensor_product_algebra(&[a, a, a], &[false, true, false])
}

/// Checks the quantum-heap laws. With `check_algebra = false` only the
/// cooperation laws are checked, which accommodates bare ternary
/// cooperations carried by the same type.
pub fn verify_quantum_heap_opts(q: &QuantumHeap, check_algebra: bool) -> Result<VerificationReport> {
    let d = q.dim();
    let field = q.field();
    let id = Matrix::identity(field, d);
    let mut report = if check_algebra {
        let mut r = verify_algebra(&q.alg)?;
        r.structure = format!("qheap(dim={d})");
        r
    } else {
        VerificationReport::new(format!("cop(dim={d})"))
    };

    let id3 = Matrix::identity(field, d * d * d);
    let cop_l = kron(&Matrix::identity(field, d * d), &q.tau)?.compose(&q.tau)?;
    let cop_r = kron(&q.tau, &Matrix::identity(field, d * d))?.compose(&q.tau)?;
    record_equality(&mut report, "cop law", &cop_l, &cop_r);
    let _ = id3;

    let heap_l = kron(&id, q.alg.mu())?.compose(&q.tau)?;
    let expect_l = kron(&id, q.alg.unit())?;
    record_equality(&mut report, "heap law (id (x) mu) tau = id (x) 1", &heap_l, &expect_l);
    let heap_r = kron(q.alg.mu(), &id)?.compose(&q.tau)?;
    let expect_r = kron(q.alg.unit(), &id)?;
    record_equality(&mut report, "heap law (mu (x) id) tau = 1 (x) id", &heap_r, &expect_r);

    if check_algebra {
        let tau_unit = q.tau.compose(q.alg.unit())?;
        let cube_unit = kron_all(&[q.alg.unit(), q.alg.unit(), q.alg.unit()])?;
        record_equality(&mut report, "tau unital", &tau_unit, &cube_unit);

        let cube = middle_opposite_cube(&q.alg)?;
        let tm_l = q.tau.compose(q.alg.mu())?;
        let tm_r = cube.mu().compose(&kron(&q.tau, &q.tau)?)?;
        record_equality(
            &mut report,
            "tau multiplicative into H (x) H_op (x) H",
            &tm_l,
            &tm_r,
        );
    }
    Ok(report)
}

pub fn verify_quantum_heap(q: &QuantumHeap) -> Result<VerificationReport> {
    verify_quantum_heap_opts(q, true)
}

/// Checks the counit law for the cooperation:
/// `(id (x) eps (x) eps) tau = id = (eps (x) eps (x) id) tau`.
pub fn verify_cop_counit(q: &QuantumHeap, eps: &Character) -> Result<VerificationReport> {
    let d = q.dim();
    let field = q.field();
    check_shape("character", &eps.eps, field, 1, d)?;
    let id = Matrix::identity(field, d);
    let mut report = VerificationReport::new(format!("cop-counit(dim={d})"));
    let l = kron_all(&[&id, &eps.eps, &eps.eps])?.compose(&q.tau)?;
    record_equality(&mut report, "counit law (id (x) eps (x) eps) tau = id", &l, &id);
    let r = kron_all(&[&eps.eps, &eps.eps, &id])?.compose(&q.tau)?;
    record_equality(&mut report, "counit law (eps (x) eps (x) id) tau = id", &r, &id);
    Ok(report)
}

/// Checks that `eps` is a character of the algebra: unital and
/// multiplicative.
pub fn verify_character(a: &Algebra, eps: &Character) -> Result<VerificationReport> {
    check_shape("character", &eps.eps, a.field(), 1, a.dim())?;
    let mut report = VerificationReport::new(format!("character(dim={})", a.dim()));
    let unital = eps.eps.compose(a.unit())?;
    record_equality(
        &mut report,
        "eps . unit = 1",
        &unital,
        &Matrix::identity(a.field(), 1),
    );
    let mult_l = eps.eps.compose(a.mu())?;
    let mult_r = kron(&eps.eps, &eps.eps)?;
    record_equality(&mut report, "eps . mu = eps (x) eps", &mult_l, &mult_r);
    Ok(report)
}

/// Checks that `phi` is a morphism of quantum heaps: a unital algebra map
/// with `tau . phi = (phi (x) phi (x) phi) . tau`.
pub fn verify_qheap_morphism(
    src: &QuantumHeap,
    dst: &QuantumHeap,
    phi: &Matrix,
) -> Result<VerificationReport> {
    if src.field() != dst.field() || phi.field() != src.field() {
        return Err(Error::FieldMismatch(src.field(), dst.field()));
    }
    if phi.rows() != dst.dim() || phi.cols() != src.dim() {
        return Err(Error::ShapeMismatch {
            op: "morphism shape",
            lhs: (phi.rows(), phi.cols()),
            rhs: (dst.dim(), src.dim()),
        });
    }
    let mut report = VerificationReport::new(format!(
        "qheap-morphism({} -> {})",
        src.dim(),
        dst.dim()
    ));
    let unital = phi.compose(src.alg.unit())?;
    record_equality(&mut report, "phi unital", &unital, dst.alg.unit());
    let mult_l = phi.compose(src.alg.mu())?;
    let mult_r = dst.alg.mu().compose(&kron(phi, phi)?)?;
    record_equality(&mut report, "phi multiplicative", &mult_l, &mult_r);
    let tau_l = dst.tau.compose(phi)?;
    let tau_r = kron_all(&[phi, phi, phi])?.compose(&src.tau)?;
    record_equality(
        &mut report,
        "tau . phi = (phi (x) phi (x) phi) . tau",
        &tau_l,
        &tau_r,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    /// The 1-dimensional algebra: the field itself.
    fn unit_algebra() -> Algebra {
        let mu = Matrix::identity(q(), 1);
        let unit = Matrix::identity(q(), 1);
        Algebra::new(q(), 1, mu, unit).unwrap()
    }

    #[test]
    fn one_dimensional_algebra_verifies() {
        assert!(verify_algebra(&unit_algebra()).unwrap().pass());
    }

    #[test]
    fn opposite_of_commutative_is_identical() {
        let g = zoo::builtin_group("cyclic(3)").unwrap();
        let h = zoo::function_hopf(&g, q());
        let op = opposite_algebra(&h.alg);
        assert_eq!(op.mu(), h.alg.mu());
    }

    #[test]
    fn opposite_is_an_involution_and_reverses_products() {
        let g = zoo::builtin_group("sym(3)").unwrap();
        let h = zoo::group_algebra(&g, q());
        let op = opposite_algebra(&h.alg);
        assert_eq!(opposite_algebra(&op), h.alg);
        // mu_op(e_a, e_b) = e_b e_a = e_{ba}.
        for a in 0..6 {
            for b in 0..6 {
                let prod = op
                    .mul_vec(&op.basis_column(a), &op.basis_column(b))
                    .unwrap();
                assert_eq!(prod, op.basis_column(g.mul(b, a)));
            }
        }
    }

    #[test]
    fn sweedler_algebra_is_noncommutative() {
        let h = zoo::sweedler_hopf(q()).unwrap();
        let op = opposite_algebra(&h.alg);
        assert_ne!(op.mu(), h.alg.mu());
        // Witnessed at (g, x): gx != xg.
        let (g, x) = (zoo::sweedler::G, zoo::sweedler::X);
        let gx = h.alg.mul_vec(&h.alg.basis_column(g), &h.alg.basis_column(x)).unwrap();
        let xg = h.alg.mul_vec(&h.alg.basis_column(x), &h.alg.basis_column(g)).unwrap();
        assert_ne!(gx, xg);
    }

    #[test]
    fn tensor_with_unit_algebra_matches_original() {
        let g = zoo::builtin_group("cyclic(4)").unwrap();
        let a = zoo::group_algebra(&g, q()).alg;
        let prod = tensor_product_algebra(&[&a, &unit_algebra()], &[false, false]).unwrap();
        assert_eq!(prod.dim(), a.dim());
        // After the A (x) k = A identification the tables coincide.
        assert_eq!(prod.mu(), a.mu());
        assert_eq!(prod.unit(), a.unit());
    }

    #[test]
    fn tensor_product_unit_is_tensor_of_units() {
        let g = zoo::builtin_group("cyclic(2)").unwrap();
        let a = zoo::group_algebra(&g, q()).alg;
        let b = zoo::function_hopf(&g, q()).alg;
        let prod = tensor_product_algebra(&[&a, &b], &[false, false]).unwrap();
        assert_eq!(prod.unit(), &kron(a.unit(), b.unit()).unwrap());
        assert!(verify_algebra(&prod).unwrap().pass());
    }

    #[test]
    fn middle_opposite_product_against_double_loop() {
        // (e_i (x) e_j) (e_k (x) e_l) = (e_i e_k) (x) (e_l e_j) in H (x) H_op.
        let g = zoo::builtin_group("sym(3)").unwrap();
        let a = zoo::group_algebra(&g, q()).alg;
        let prod = tensor_product_algebra(&[&a, &a], &[false, true]).unwrap();
        let d = a.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let lhs = prod
                            .mul_vec(
                                &kron(&a.basis_column(i), &a.basis_column(j)).unwrap(),
                                &kron(&a.basis_column(k), &a.basis_column(l)).unwrap(),
                            )
                            .unwrap();
                        let rhs = kron(
                            &a.basis_column(g.mul(i, k)),
                            &a.basis_column(g.mul(l, j)),
                        )
                        .unwrap();
                        assert_eq!(lhs, rhs, "at ({i},{j},{k},{l})");
                    }
                }
            }
        }
    }

    #[test]
    fn zero_antipode_fails_the_antipode_law() {
        let g = zoo::builtin_group("cyclic(2)").unwrap();
        let mut h = zoo::group_algebra(&g, q());
        assert!(verify_hopf(&h).unwrap().pass());
        h.antipode = Matrix::zero(q(), 2, 2);
        let report = verify_hopf(&h).unwrap();
        assert!(!report.pass());
        assert!(report
            .failures()
            .iter()
            .all(|f| f.starts_with("antipode law")));
    }

    #[test]
    fn perturbed_tau_fails_a_heap_law_with_witness() {
        let g = zoo::builtin_group("cyclic(3)").unwrap();
        let hopf = zoo::group_algebra(&g, q());
        let mut qh = crate::functors::qheap_from_hopf(&hopf).unwrap();
        assert!(verify_quantum_heap(&qh).unwrap().pass());
        qh.tau
            .add_entry(0, 0, Scalar::from_integer(q(), 1))
            .unwrap();
        let report = verify_quantum_heap(&qh).unwrap();
        assert!(!report.pass());
        let fails = report.failures();
        assert!(fails.iter().any(|f| f.contains("heap law")));
        for c in &report.checks {
            if !c.pass {
                assert!(c.witness.is_some());
            }
        }
    }

    #[test]
    fn character_of_dimension_one_cop_counit() {
        // The trivial 1-dimensional quantum heap with eps = 1 passes; the
        // sign functional eps = -1 satisfies the counit law but is not a
        // character, separating the two notions.
        let a = unit_algebra();
        let tau = Matrix::identity(q(), 1);
        let heap = QuantumHeap::new(a.clone(), tau).unwrap();
        assert!(verify_quantum_heap(&heap).unwrap().pass());

        let one = Character::new(q(), 1, Matrix::identity(q(), 1)).unwrap();
        assert!(verify_cop_counit(&heap, &one).unwrap().pass());
        assert!(verify_character(&heap.alg, &one).unwrap().pass());

        let minus = Character::new(
            q(),
            1,
            Matrix::identity(q(), 1)
                .scale(&Scalar::from_integer(q(), -1))
                .unwrap(),
        )
        .unwrap();
        assert!(verify_cop_counit(&heap, &minus).unwrap().pass());
        let ch = verify_character(&heap.alg, &minus).unwrap();
        assert!(!ch.pass());
        assert!(ch.failures().contains(&"eps . unit = 1"));
    }

    #[test]
    fn zero_functional_fails_unitality() {
        let g = zoo::builtin_group("cyclic(2)").unwrap();
        let h = zoo::group_algebra(&g, q());
        let zero = Character::new(q(), 2, Matrix::zero(q(), 1, 2)).unwrap();
        let report = verify_character(&h.alg, &zero).unwrap();
        assert!(!report.pass());
        assert!(report.failures().contains(&"eps . unit = 1"));
    }

    #[test]
    fn identity_is_a_qheap_morphism() {
        let g = zoo::builtin_group("cyclic(3)").unwrap();
        let hopf = zoo::group_algebra(&g, q());
        let qh = crate::functors::qheap_from_hopf(&hopf).unwrap();
        let id = Matrix::identity(q(), 3);
        assert!(verify_qheap_morphism(&qh, &qh, &id).unwrap().pass());
    }

    #[test]
    fn non_multiplicative_map_fails_morphism_check() {
        let g = zoo::builtin_group("cyclic(2)").unwrap();
        let hopf = zoo::group_algebra(&g, q());
        let qh = crate::functors::qheap_from_hopf(&hopf).unwrap();
        // e_0 -> e_0 + e_1, e_1 -> 0 is unital only by accident and not
        // multiplicative.
        let phi = Matrix::from_triplets(
            q(),
            2,
            2,
            [
                (0, 0, Scalar::one(q())),
                (1, 0, Scalar::one(q())),
            ],
        )
        .unwrap();
        let report = verify_qheap_morphism(&qh, &qh, &phi).unwrap();
        assert!(!report.pass());
        assert!(report.failures().iter().any(|f| f.contains("multiplicative")));
    }
}
