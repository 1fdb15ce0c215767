//! Arity-typed terms over the generators `t: 1 -> 3`, `e: 0 -> 1`,
//! `d: 2 -> 1`, with tensor sum and sequential composition, and their
//! evaluation in two models: vector spaces (a quantum heap, where `t`, `e`,
//! `d` become `tau`, `unit`, `mu`) and finite sets (a heap, read through the
//! opposite arrows, where `t` becomes the ternary table, `d` the diagonal
//! and `e` the terminal map).
//!
//! Concrete syntax: `term := seq`, `seq := sum (";" sum)*` composing left to
//! right (apply the left factor first), `sum := atom ("+" atom)*` for the
//! tensor sum, `atom := "t" | "e" | "d" | "id" NAT | "(" term ")"`. The
//! numerals the defining relations abbreviate identities with are spelled
//! `id1`, `id2`, ... here.

use crate::algcore::QuantumHeap;
use crate::heaps::FiniteHeap;
use crate::matrix::{kron, Matrix, MultiIndex};
use crate::report::VerificationReport;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    /// Ternary cooperation, `1 -> 3`.
    T,
    /// Unit, `0 -> 1`.
    E,
    /// Multiplication, `2 -> 1`.
    D,
}

/// An arity-checked term. `Compose(f, g)` applies `f` first; building one
/// with `target(f) != source(g)` is rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProTerm {
    Gen(Gen),
    Id(usize),
    Tensor(Box<ProTerm>, Box<ProTerm>),
    Compose(Box<ProTerm>, Box<ProTerm>),
}

impl ProTerm {
    /// `(source, target)` arities.
    pub fn arity(&self) -> (usize, usize) {
        match self {
            ProTerm::Gen(Gen::T) => (1, 3),
            ProTerm::Gen(Gen::E) => (0, 1),
            ProTerm::Gen(Gen::D) => (2, 1),
            ProTerm::Id(n) => (*n, *n),
            ProTerm::Tensor(a, b) => {
                let (sa, ta) = a.arity();
                let (sb, tb) = b.arity();
                (sa + sb, ta + tb)
            }
            ProTerm::Compose(a, b) => (a.arity().0, b.arity().1),
        }
    }

    pub fn tensor(a: ProTerm, b: ProTerm) -> ProTerm {
        ProTerm::Tensor(Box::new(a), Box::new(b))
    }

    /// Sequential composition, `a` applied first.
    pub fn compose(a: ProTerm, b: ProTerm) -> Result<ProTerm> {
        if a.arity().1 != b.arity().0 {
            return Err(Error::ArityMismatch {
                lhs: a.arity(),
                rhs: b.arity(),
            });
        }
        Ok(ProTerm::Compose(Box::new(a), Box::new(b)))
    }

    /// Number of generator and identity leaves; a rough size measure.
    pub fn size(&self) -> usize {
        match self {
            ProTerm::Gen(_) | ProTerm::Id(_) => 1,
            ProTerm::Tensor(a, b) | ProTerm::Compose(a, b) => a.size() + b.size(),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::TermSyntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<ProTerm> {
        let mut acc = self.sum()?;
        while self.peek() == Some(b';') {
            self.pos += 1;
            let next = self.sum()?;
            let (la, lb) = (acc.arity(), next.arity());
            acc = ProTerm::compose(acc, next).map_err(|_| Error::TermSyntax {
                pos: self.pos,
                msg: format!("cannot compose {la:?} with {lb:?}"),
            })?;
        }
        Ok(acc)
    }

    fn sum(&mut self) -> Result<ProTerm> {
        let mut acc = self.atom()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = ProTerm::tensor(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<ProTerm> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.term()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(ProTerm::Gen(Gen::T))
            }
            Some(b'e') => {
                self.pos += 1;
                Ok(ProTerm::Gen(Gen::E))
            }
            Some(b'd') => {
                self.pos += 1;
                Ok(ProTerm::Gen(Gen::D))
            }
            Some(b'i') => {
                if self.src[self.pos..].starts_with(b"id") {
                    self.pos += 2;
                    self.skip_ws();
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if start == self.pos {
                        return self.err("expected an arity after 'id'");
                    }
                    let n: usize = std::str::from_utf8(&self.src[start..self.pos])
                        .expect("digits")
                        .parse()
                        .map_err(|_| Error::TermSyntax {
                            pos: start,
                            msg: "arity out of range".into(),
                        })?;
                    Ok(ProTerm::Id(n))
                } else {
                    self.err("unknown token")
                }
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses the concrete syntax into an arity-checked term.
pub fn parse_term(src: &str) -> Result<ProTerm> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let term = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::TermSyntax {
            pos: p.pos,
            msg: "trailing input".into(),
        });
    }
    Ok(term)
}

/// Evaluates a term of arity `m -> n` to a `d^n x d^m` matrix over the
/// heap's field: `t`, `e`, `d` become `tau`, the unit column, and `mu`;
/// tensor is the Kronecker product and composition is matrix composition.
pub fn eval_vect(term: &ProTerm, q: &QuantumHeap) -> Matrix {
    let d = q.dim();
    let field = q.field();
    match term {
        ProTerm::Gen(Gen::T) => q.tau.clone(),
        ProTerm::Gen(Gen::E) => q.alg.unit().clone(),
        ProTerm::Gen(Gen::D) => q.alg.mu().clone(),
        ProTerm::Id(n) => Matrix::identity(field, d.pow(*n as u32)),
        ProTerm::Tensor(a, b) => {
            kron(&eval_vect(a, q), &eval_vect(b, q)).expect("same field")
        }
        ProTerm::Compose(a, b) => eval_vect(b, q)
            .compose(&eval_vect(a, q))
            .expect("arity-checked"),
    }
}

/// A function between cartesian powers of a finite carrier, tabulated on
/// flat indices under the crate-wide flattening convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetMap {
    /// Carrier size.
    pub carrier: usize,
    /// Input power: the map goes from `carrier^src_pow` ...
    pub src_pow: usize,
    /// ... to `carrier^dst_pow`.
    pub dst_pow: usize,
    /// `table[flat input] = flat output`.
    pub table: Vec<usize>,
}

impl SetMap {
    fn identity(carrier: usize, pow: usize) -> SetMap {
        let total = carrier.pow(pow as u32);
        SetMap {
            carrier,
            src_pow: pow,
            dst_pow: pow,
            table: (0..total).collect(),
        }
    }

    /// `self` after `other`.
    fn compose_after(&self, other: &SetMap) -> SetMap {
        assert_eq!(self.src_pow, other.dst_pow);
        SetMap {
            carrier: self.carrier,
            src_pow: other.src_pow,
            dst_pow: self.dst_pow,
            table: other.table.iter().map(|&x| self.table[x]).collect(),
        }
    }

    /// Cartesian product of maps on adjacent blocks of factors.
    fn product(&self, other: &SetMap) -> SetMap {
        let carrier = self.carrier;
        let src = MultiIndex::new(&[
            carrier.pow(self.src_pow as u32),
            carrier.pow(other.src_pow as u32),
        ]);
        let dst = MultiIndex::new(&[
            carrier.pow(self.dst_pow as u32),
            carrier.pow(other.dst_pow as u32),
        ]);
        let table = (0..src.total())
            .map(|f| {
                let parts = src.unflatten(f);
                dst.flatten(&[self.table[parts[0]], other.table[parts[1]]])
            })
            .collect();
        SetMap {
            carrier,
            src_pow: self.src_pow + other.src_pow,
            dst_pow: self.dst_pow + other.dst_pow,
            table,
        }
    }
}

/// Evaluates a term of arity `m -> n` in the opposite direction, as a
/// function `H^n -> H^m` on a finite heap: `t` is the ternary table,
/// `d` the diagonal, `e` the map to the empty tuple, and composition reads
/// backwards. Tables larger than 10^6 entries are rejected.
pub fn eval_set(term: &ProTerm, h: &FiniteHeap) -> Result<SetMap> {
    let n = h.order();
    let (src, dst) = term.arity();
    let max_pow = src.max(dst) as u32;
    if n.checked_pow(max_pow).is_none_or(|total| total > 1_000_000) {
        return Err(Error::SizeLimit(format!(
            "set-model table of size {n}^{max_pow} exceeds 10^6"
        )));
    }
    Ok(eval_set_unchecked(term, h))
}

fn eval_set_unchecked(term: &ProTerm, h: &FiniteHeap) -> SetMap {
    let n = h.order();
    match term {
        ProTerm::Gen(Gen::T) => {
            let triple = MultiIndex::new(&[n, n, n]);
            let table = (0..triple.total())
                .map(|f| {
                    let abc = triple.unflatten(f);
                    h.t(abc[0], abc[1], abc[2])
                })
                .collect();
            SetMap {
                carrier: n,
                src_pow: 3,
                dst_pow: 1,
                table,
            }
        }
        ProTerm::Gen(Gen::E) => SetMap {
            carrier: n,
            src_pow: 1,
            dst_pow: 0,
            table: vec![0; n],
        },
        ProTerm::Gen(Gen::D) => {
            let pair = MultiIndex::new(&[n, n]);
            SetMap {
                carrier: n,
                src_pow: 1,
                dst_pow: 2,
                table: (0..n).map(|a| pair.flatten(&[a, a])).collect(),
            }
        }
        ProTerm::Id(k) => SetMap::identity(n, *k),
        ProTerm::Tensor(a, b) => {
            eval_set_unchecked(a, h).product(&eval_set_unchecked(b, h))
        }
        // Compose(a, b) applies a first in the forward reading, so in the
        // opposite reading the set map of a comes last.
        ProTerm::Compose(a, b) => {
            eval_set_unchecked(a, h).compose_after(&eval_set_unchecked(b, h))
        }
    }
}

/// The defining relation fixtures, as `(name, lhs, rhs)` source strings.
/// The chain `(1+t+1)t = (2+t)t = (t+2)t` contributes its two links, the
/// two unit-absorption laws contribute one each, and the associativity and
/// unit laws of the binary part contribute the rest: seven equalities.
pub fn pro_relations() -> &'static [(&'static str, &'static str, &'static str)] {
    &[
        (
            "cooperation middle iteration",
            "t ; (id1 + t + id1)",
            "t ; (id2 + t)",
        ),
        (
            "cooperation outer iteration",
            "t ; (id2 + t)",
            "t ; (t + id2)",
        ),
        ("left absorption", "t ; (d + id1)", "e + id1"),
        ("right absorption", "t ; (id1 + d)", "id1 + e"),
        ("associativity", "(d + id1) ; d", "(id1 + d) ; d"),
        ("right unit", "(id1 + e) ; d", "id1"),
        ("left unit", "(e + id1) ; d", "id1"),
    ]
}

/// Evaluates both sides of each defining relation in the vector-space model
/// and compares the matrices exactly.
pub fn check_pro_relations_vect(q: &QuantumHeap) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("relations-vect(dim={})", q.dim()));
    for (name, lhs, rhs) in pro_relations() {
        let l = eval_vect(&parse_term(lhs)?, q);
        let r = eval_vect(&parse_term(rhs)?, q);
        report.record(
            format!("{name}: {lhs} = {rhs}"),
            l.first_difference(&r).map(|(a, b)| vec![a, b]),
        );
    }
    Ok(report)
}

/// Evaluates both sides of each defining relation in the set model (tables
/// over the heap) and compares the tables exactly.
pub fn check_pro_relations_set(h: &FiniteHeap) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("relations-set(n={})", h.order()));
    for (name, lhs, rhs) in pro_relations() {
        let l = eval_set(&parse_term(lhs)?, h)?;
        let r = eval_set(&parse_term(rhs)?, h)?;
        let witness = (l.table != r.table)
            .then(|| {
                l.table
                    .iter()
                    .zip(&r.table)
                    .position(|(a, b)| a != b)
                    .map(|i| vec![i])
            })
            .flatten();
        report.record(format!("{name}: {lhs} = {rhs}"), witness);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::functors::qheap_from_hopf;
    use crate::heaps::{enumerate_heaps, heap_from_group};
    use crate::zoo;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn arity_of_generators_and_composites() {
        assert_eq!(parse_term("t").unwrap().arity(), (1, 3));
        assert_eq!(parse_term("e").unwrap().arity(), (0, 1));
        assert_eq!(parse_term("d").unwrap().arity(), (2, 1));
        assert_eq!(parse_term("t ; (d + id1)").unwrap().arity(), (1, 2));
        assert_eq!(parse_term("id3").unwrap().arity(), (3, 3));
        assert_eq!(parse_term("t + d").unwrap().arity(), (3, 4));
    }

    #[test]
    fn arity_mismatch_is_a_parse_error() {
        // t lands in 3 but d consumes 2.
        let err = parse_term("t ; d").unwrap_err();
        assert!(matches!(err, Error::TermSyntax { .. }));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        for bad in ["t ;", "(t", "id", "q", "t )"] {
            match parse_term(bad) {
                Err(Error::TermSyntax { .. }) => {}
                other => panic!("expected syntax error for {bad:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn eval_vect_identity_and_generators() {
        let hopf = zoo::sweedler_hopf(q()).unwrap();
        let heap = qheap_from_hopf(&hopf).unwrap();
        assert_eq!(
            eval_vect(&parse_term("id1").unwrap(), &heap),
            Matrix::identity(q(), 4)
        );
        assert_eq!(eval_vect(&parse_term("t").unwrap(), &heap), heap.tau);
        assert_eq!(
            eval_vect(&parse_term("d").unwrap(), &heap),
            *heap.alg.mu()
        );
    }

    #[test]
    fn left_absorption_matches_unit_insertion_on_sweedler() {
        let hopf = zoo::sweedler_hopf(q()).unwrap();
        let heap = qheap_from_hopf(&hopf).unwrap();
        let lhs = eval_vect(&parse_term("t ; (d + id1)").unwrap(), &heap);
        let rhs = eval_vect(&parse_term("e + id1").unwrap(), &heap);
        assert_eq!(lhs, rhs); // both are h -> 1 (x) h
    }

    #[test]
    fn associativity_relation_holds_on_the_fleet() {
        for (name, hopf) in zoo::hopf_fleet() {
            let heap = qheap_from_hopf(&hopf).unwrap();
            let lhs = eval_vect(&parse_term("(d + id1) ; d").unwrap(), &heap);
            let rhs = eval_vect(&parse_term("(id1 + d) ; d").unwrap(), &heap);
            assert_eq!(lhs, rhs, "associativity fails for {name}");
        }
    }

    #[test]
    fn eval_set_of_t_is_the_ternary_table() {
        let g = zoo::builtin_group("cyclic(2)").unwrap();
        let h = heap_from_group(&g);
        let m = eval_set(&parse_term("t").unwrap(), &h).unwrap();
        let triple = MultiIndex::new(&[2, 2, 2]);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    // t(a,b,c) = a + b + c mod 2.
                    assert_eq!(m.table[triple.flatten(&[a, b, c])], (a + b + c) % 2);
                }
            }
        }
    }

    #[test]
    fn eval_set_absorption_matches_unit_map() {
        let g = zoo::builtin_group("cyclic(3)").unwrap();
        let h = heap_from_group(&g);
        let lhs = eval_set(&parse_term("t ; (d + id1)").unwrap(), &h).unwrap();
        let rhs = eval_set(&parse_term("e + id1").unwrap(), &h).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_set_of_e_is_terminal() {
        let g = zoo::builtin_group("cyclic(4)").unwrap();
        let h = heap_from_group(&g);
        let m = eval_set(&parse_term("e").unwrap(), &h).unwrap();
        assert_eq!(m.src_pow, 1);
        assert_eq!(m.dst_pow, 0);
        assert!(m.table.iter().all(|&x| x == 0));
    }

    #[test]
    fn relations_hold_in_set_on_the_census() {
        for n in 1..=4 {
            for h in enumerate_heaps(n).unwrap() {
                let report = check_pro_relations_set(&h).unwrap();
                assert!(report.pass(), "{report}");
            }
        }
    }

    #[test]
    fn relations_hold_in_vect_on_cocommutative_fixtures() {
        for name in ["cyclic(4)", "klein4", "sym(3)"] {
            let g = zoo::builtin_group(name).unwrap();
            let heap = qheap_from_hopf(&zoo::group_algebra(&g, q())).unwrap();
            let report = check_pro_relations_vect(&heap).unwrap();
            assert!(report.pass(), "{report}");
        }
        let g = zoo::builtin_group("klein4").unwrap();
        let heap = qheap_from_hopf(&zoo::function_hopf(&g, q())).unwrap();
        assert!(check_pro_relations_vect(&heap).unwrap().pass());
    }

    #[test]
    fn middle_iteration_detects_noncocommutativity() {
        // The middle-iteration link of the relation chain encodes a
        // cocommutativity constraint: it holds for group algebras but fails
        // on the skew-primitive fixtures, while the other six relations
        // hold everywhere. Pinned so the boundary is explicit.
        let hopf = zoo::sweedler_hopf(q()).unwrap();
        let heap = qheap_from_hopf(&hopf).unwrap();
        let report = check_pro_relations_vect(&heap).unwrap();
        let fails = report.failures();
        assert_eq!(fails.len(), 1, "{report}");
        assert!(fails[0].contains("middle iteration"));
    }

    #[test]
    fn middle_iteration_detects_nonabelian_heaps() {
        let g = zoo::builtin_group("sym(3)").unwrap();
        let h = heap_from_group(&g);
        let report = check_pro_relations_set(&h).unwrap();
        let fails = report.failures();
        assert_eq!(fails.len(), 1, "{report}");
        assert!(fails[0].contains("middle iteration"));
    }

    #[test]
    fn corrupted_tau_fails_left_absorption_with_witness() {
        let g = zoo::builtin_group("cyclic(2)").unwrap();
        let mut heap = qheap_from_hopf(&zoo::group_algebra(&g, q())).unwrap();
        heap.tau
            .add_entry(1, 0, crate::Scalar::from_integer(q(), 1))
            .unwrap();
        let report = check_pro_relations_vect(&heap).unwrap();
        let bad: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
        assert!(bad.iter().any(|c| c.axiom.contains("absorption")));
        assert!(bad.iter().all(|c| c.witness.is_some()));
    }

    #[test]
    fn set_model_size_guard() {
        let g = zoo::builtin_group("cyclic(12)").unwrap();
        let h = heap_from_group(&g);
        // 12^6 > 10^6.
        let big = parse_term("t ; (t + id2) ; (id1 + t + id3)").unwrap();
        assert_eq!(big.arity(), (1, 7));
        assert!(matches!(eval_set(&big, &h), Err(Error::SizeLimit(_))));
    }
}
