//! Built-in exactly-constructed test structures: small groups, their group
//! algebras and function algebras, the 4-dimensional algebra generated by a
//! grouplike `g` and a skew-primitive `x` (`g^2 = 1`, `x^2 = 0`, `xg = -gx`),
//! its `n^2`-dimensional generalization over a prime field with a root of
//! unity `q`, and the left-translation morphism fixture.
//!
//! Construction is deterministic; every entry passes its verifier (asserted
//! across the test suites).

use crate::algcore::{
    tensor_product_algebra, Algebra, Coalgebra, HopfAlgebra, QuantumHeap,
};
use crate::field::{FieldSpec, Scalar};
use crate::functors::qheap_from_hopf;
use crate::heaps::FiniteGroup;
use crate::matrix::{kron, Matrix, MultiIndex};
use crate::{Error, Result};

/// Basis indices of the 4-dimensional fixture built by [`sweedler_hopf`]:
/// monomials `g^i x^j` in lexicographic `(i, j)` order.
pub mod sweedler {
    pub const ONE: usize = 0;
    pub const X: usize = 1;
    pub const G: usize = 2;
    pub const GX: usize = 3;
}

/// The permutation of `{0,1,2}` behind element `p` of `builtin_group("sym(3)")`,
/// in lexicographic order.
pub fn sym3_permutation(p: usize) -> [usize; 3] {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    PERMS[p]
}

/// Standard multiplication table for a named small group. Supported names:
/// `cyclic(n)` with `n <= 12`, `klein4`, `dihedral(n)` with `n <= 6`
/// (order `2n`), and `sym(3)`.
pub fn builtin_group(name: &str) -> Result<FiniteGroup> {
    if let Some(n) = parse_param(name, "cyclic") {
        return cyclic_group(n);
    }
    if let Some(n) = parse_param(name, "dihedral") {
        return dihedral_group(n);
    }
    match name {
        "klein4" => klein_four_group(),
        "sym(3)" => symmetric_group_3(),
        _ => Err(Error::UnsupportedParameter(format!(
            "unknown group {name:?}"
        ))),
    }
}

fn parse_param(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?
        .strip_prefix('(')?
        .strip_suffix(')')?
        .parse()
        .ok()
}

pub fn cyclic_group(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 12 {
        return Err(Error::UnsupportedParameter(format!(
            "cyclic(n) needs 1 <= n <= 12, got {n}"
        )));
    }
    let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::new(mul, 0)
}

pub fn klein_four_group() -> Result<FiniteGroup> {
    let mul = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    FiniteGroup::new(mul, 0)
}

/// Dihedral group of order `2n`: rotations `r^i` at indices `0..n`,
/// reflections `s r^i` at indices `n..2n`.
pub fn dihedral_group(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 6 {
        return Err(Error::UnsupportedParameter(format!(
            "dihedral(n) needs 1 <= n <= 6, got {n}"
        )));
    }
    let idx = |k: usize, i: usize| k * n + i;
    let mut mul = vec![vec![0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            mul[idx(0, i)][idx(0, j)] = idx(0, (i + j) % n);
            mul[idx(0, i)][idx(1, j)] = idx(1, (j + n - i) % n);
            mul[idx(1, i)][idx(0, j)] = idx(1, (i + j) % n);
            mul[idx(1, i)][idx(1, j)] = idx(0, (j + n - i) % n);
        }
    }
    FiniteGroup::new(mul, 0)
}

pub fn symmetric_group_3() -> Result<FiniteGroup> {
    let compose = |f: [usize; 3], g: [usize; 3]| [f[g[0]], f[g[1]], f[g[2]]];
    let index_of = |p: [usize; 3]| (0..6).find(|&i| sym3_permutation(i) == p).unwrap();
    let mul = (0..6)
        .map(|a| {
            (0..6)
                .map(|b| index_of(compose(sym3_permutation(a), sym3_permutation(b))))
                .collect()
        })
        .collect();
    FiniteGroup::new(mul, 0)
}

/// The group algebra `k[G]`: basis indexed by group elements, `Delta g = g (x) g`,
/// `eps(g) = 1`, `S g = g^{-1}`.
pub fn group_algebra(g: &FiniteGroup, field: FieldSpec) -> HopfAlgebra {
    let n = g.order();
    let one = Scalar::one(field);
    let pairs = MultiIndex::new(&[n, n]);
    let mut mu = Matrix::zero(field, n, n * n);
    let mut delta = Matrix::zero(field, n * n, n);
    let mut epsilon = Matrix::zero(field, 1, n);
    let mut antipode = Matrix::zero(field, n, n);
    for a in 0..n {
        for b in 0..n {
            mu.add_entry(g.mul(a, b), pairs.flatten(&[a, b]), one.clone())
                .expect("in range");
        }
        delta
            .add_entry(pairs.flatten(&[a, a]), a, one.clone())
            .expect("in range");
        epsilon.add_entry(0, a, one.clone()).expect("in range");
        antipode.add_entry(g.inv(a), a, one.clone()).expect("in range");
    }
    let mut unit = Matrix::zero(field, n, 1);
    unit.add_entry(g.identity(), 0, one).expect("in range");
    let alg = Algebra::new(field, n, mu, unit).expect("shapes agree");
    let coalg = Coalgebra::new(field, n, delta, epsilon).expect("shapes agree");
    HopfAlgebra::new(alg, coalg, antipode).expect("shapes agree")
}

/// The function algebra `k^G` on indicator functions: pointwise product,
/// `Delta d_g = sum_{hk=g} d_h (x) d_k`, `eps(d_g) = [g = e]`,
/// `S d_g = d_{g^{-1}}`.
pub fn function_hopf(g: &FiniteGroup, field: FieldSpec) -> HopfAlgebra {
    let n = g.order();
    let one = Scalar::one(field);
    let pairs = MultiIndex::new(&[n, n]);
    let mut mu = Matrix::zero(field, n, n * n);
    let mut unit = Matrix::zero(field, n, 1);
    let mut delta = Matrix::zero(field, n * n, n);
    let mut epsilon = Matrix::zero(field, 1, n);
    let mut antipode = Matrix::zero(field, n, n);
    for a in 0..n {
        mu.add_entry(a, pairs.flatten(&[a, a]), one.clone())
            .expect("in range");
        unit.add_entry(a, 0, one.clone()).expect("in range");
        for b in 0..n {
            delta
                .add_entry(pairs.flatten(&[a, b]), g.mul(a, b), one.clone())
                .expect("in range");
        }
        antipode.add_entry(g.inv(a), a, one.clone()).expect("in range");
    }
    epsilon
        .add_entry(0, g.identity(), one)
        .expect("in range");
    let alg = Algebra::new(field, n, mu, unit).expect("shapes agree");
    let coalg = Coalgebra::new(field, n, delta, epsilon).expect("shapes agree");
    HopfAlgebra::new(alg, coalg, antipode).expect("shapes agree")
}

/// Shared builder for the `g, x` family: dimension `n^2` with basis
/// `g^i x^j`, relations `g^n = 1`, `x^n = 0`, `xg = q gx`; `Delta g = g (x) g`,
/// `Delta x = x (x) 1 + g (x) x`; `S g = g^{-1}`, `S x = -g^{-1} x`.
/// Comultiplication and antipode columns are extended from the generators
/// (anti)multiplicatively, so no closed-form coefficients are hand-coded.
fn skew_primitive_hopf(n: usize, field: FieldSpec, q: &Scalar) -> Result<HopfAlgebra> {
    let d = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let pairs = MultiIndex::new(&[d, d]);

    let mut mu = Matrix::zero(field, d, d * d);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j + l >= n {
                        continue; // x^n = 0 truncates
                    }
                    let coeff = q.pow((j * k) as u64);
                    mu.add_entry(
                        idx((i + k) % n, j + l),
                        pairs.flatten(&[idx(i, j), idx(k, l)]),
                        coeff,
                    )?;
                }
            }
        }
    }
    let mut unit = Matrix::zero(field, d, 1);
    unit.add_entry(idx(0, 0), 0, Scalar::one(field))?;
    let alg = Algebra::new(field, d, mu, unit)?;

    let basis = |i: usize, j: usize| alg.basis_column(idx(i, j));
    let square = tensor_product_algebra(&[&alg, &alg], &[false, false])?;
    let delta_g = kron(&basis(1 % n, 0), &basis(1 % n, 0))?;
    let delta_x = kron(&basis(0, 1), &basis(0, 0))?.add(&kron(&basis(1 % n, 0), &basis(0, 1))?)?;
    let mut delta = Matrix::zero(field, d * d, d);
    let mut epsilon = Matrix::zero(field, 1, d);
    let mut antipode = Matrix::zero(field, d, d);
    // S(g) = g^{n-1}, S(x) = -g^{n-1} x.
    let s_g = basis(n - 1, 0);
    let s_x = basis(n - 1, 1).scale(&Scalar::from_integer(field, -1))?;
    for i in 0..n {
        for j in 0..n {
            let col = square.mul_vec(&square.pow_vec(&delta_g, i)?, &square.pow_vec(&delta_x, j)?)?;
            for (r, _, s) in col.iter() {
                delta.add_entry(r, idx(i, j), s.clone())?;
            }
            // Anti-multiplicative extension: S(g^i x^j) = S(x)^j S(g)^i.
            let s_col = alg.mul_vec(&alg.pow_vec(&s_x, j)?, &alg.pow_vec(&s_g, i)?)?;
            for (r, _, s) in s_col.iter() {
                antipode.add_entry(r, idx(i, j), s.clone())?;
            }
            if j == 0 {
                epsilon.add_entry(0, idx(i, 0), Scalar::one(field))?;
            }
        }
    }
    let coalg = Coalgebra::new(field, d, delta, epsilon)?;
    HopfAlgebra::new(alg, coalg, antipode)
}

/// The smallest noncommutative, noncocommutative fixture: dimension 4 over
/// any field of characteristic other than 2 (the `n = 2`, `q = -1` member of
/// the skew-primitive family).
pub fn sweedler_hopf(field: FieldSpec) -> Result<HopfAlgebra> {
    if field.characteristic() == 2 {
        return Err(Error::UnsupportedParameter(
            "the 4-dimensional g,x fixture needs characteristic != 2".into(),
        ));
    }
    skew_primitive_hopf(2, field, &Scalar::from_integer(field, -1))
}

/// The `n^2`-dimensional member over a prime field, parameterized by a root
/// of unity `q` of multiplicative order exactly `n`. Dimensions above 25 are
/// rejected as a cost bound.
pub fn taft_hopf(n: usize, field: FieldSpec, q: Scalar) -> Result<HopfAlgebra> {
    if n < 2 {
        return Err(Error::UnsupportedParameter("n must be at least 2".into()));
    }
    if n * n > 25 {
        return Err(Error::SizeLimit(format!(
            "dimension {} exceeds the 25 cost bound",
            n * n
        )));
    }
    let FieldSpec::PrimeField(_) = field else {
        return Err(Error::UnsupportedParameter(
            "this family is constructed over a prime field".into(),
        ));
    };
    if q.field() != field {
        return Err(Error::FieldMismatch(field, q.field()));
    }
    if q.multiplicative_order() != Some(n as u64) {
        return Err(Error::UnsupportedParameter(format!(
            "q = {q} does not have multiplicative order {n}"
        )));
    }
    skew_primitive_hopf(n, field, &q)
}

/// The left-translation fixture: the function-algebra heap of `g` taken
/// twice, plus the map `phi(d_h) = d_{a h}`. The map is a morphism of the
/// ternary structures but does not preserve the counit unless `a = e`.
pub fn left_translation_morphism(
    g: &FiniteGroup,
    a: usize,
    field: FieldSpec,
) -> Result<(QuantumHeap, QuantumHeap, Matrix)> {
    if a >= g.order() {
        return Err(Error::IndexOutOfRange {
            index: vec![a],
            bound: vec![g.order()],
        });
    }
    let hopf = function_hopf(g, field);
    let heap = qheap_from_hopf(&hopf)?;
    let mut phi = Matrix::zero(field, g.order(), g.order());
    for h in 0..g.order() {
        phi.add_entry(g.mul(a, h), h, Scalar::one(field))?;
    }
    Ok((heap.clone(), heap, phi))
}

/// All built-in groups of order at most `max_order`, with display names.
pub fn groups_up_to(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let mut out = Vec::new();
    for n in 1..=12.min(max_order) {
        out.push((format!("cyclic({n})"), cyclic_group(n).unwrap()));
    }
    if max_order >= 4 {
        out.push(("klein4".into(), klein_four_group().unwrap()));
    }
    for n in 1..=6 {
        if 2 * n <= max_order {
            out.push((format!("dihedral({n})"), dihedral_group(n).unwrap()));
        }
    }
    if max_order >= 6 {
        out.push(("sym(3)".into(), symmetric_group_3().unwrap()));
    }
    out
}

/// The Hopf-algebra test fleet: group algebras of the built-in groups of
/// order up to 6 and function algebras up to order 4, each over the
/// rationals and over F7, plus the 4-dimensional `g,x` fixture over both
/// fields and the 9-dimensional member over F7 with `q = 2`.
pub fn hopf_fleet() -> Vec<(String, HopfAlgebra)> {
    let f7 = FieldSpec::prime_field(7).unwrap();
    let mut out = Vec::new();
    for field in [FieldSpec::Rationals, f7] {
        for (name, g) in groups_up_to(6) {
            out.push((format!("group_algebra({name}, {field})"), group_algebra(&g, field)));
        }
        for (name, g) in groups_up_to(4) {
            out.push((format!("function_hopf({name}, {field})"), function_hopf(&g, field)));
        }
        out.push((format!("sweedler({field})"), sweedler_hopf(field).unwrap()));
    }
    out.push((
        "taft(3, F7, q=2)".into(),
        taft_hopf(3, f7, Scalar::from_integer(f7, 2)).unwrap(),
    ));
    out
}

/// The derived quantum-heap fleet, each with its algebra's counit character.
pub fn qheap_fleet() -> Vec<(String, QuantumHeap, crate::algcore::Character)> {
    hopf_fleet()
        .into_iter()
        .map(|(name, h)| {
            let eps = h.counit_character();
            let heap = qheap_from_hopf(&h).expect("fleet entries are Hopf algebras");
            (name, heap, eps)
        })
        .collect()
}
