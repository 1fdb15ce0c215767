//! The two structure-transport constructions and their round trips, computed
//! as exact matrix pipelines: a Hopf algebra yields a quantum heap via
//! `tau = (id (x) S (x) id) . Delta^2`, and a quantum heap with a character
//! yields a Hopf algebra via `Delta = (id (x) eps (x) id) . tau` and
//! `S = (eps (x) id (x) eps) . tau`. Both directions compose to the identity
//! on the nose, which [`roundtrip_check_hopf`] and [`roundtrip_check_qheap`]
//! assert entry for entry.

use crate::algcore::{
    verify_character, verify_hopf, verify_quantum_heap, Character, Coalgebra, HopfAlgebra,
    QuantumHeap,
};
use crate::matrix::{kron, kron_all, Matrix};
use crate::report::VerificationReport;
use crate::{Error, Result};

/// A quantum heap together with a chosen character of its algebra.
#[derive(Clone, Debug)]
pub struct CopointedQuantumHeap {
    pub heap: QuantumHeap,
    pub eps: Character,
}

impl CopointedQuantumHeap {
    /// Pairs a heap with a character, verifying the character laws.
    pub fn new(heap: QuantumHeap, eps: Character) -> Result<CopointedQuantumHeap> {
        let report = verify_character(&heap.alg, &eps)?;
        if !report.pass() {
            return Err(Error::InvalidStructure(format!(
                "not a character: {}",
                report.failures().join(", ")
            )));
        }
        Ok(CopointedQuantumHeap { heap, eps })
    }
}

/// `tau(h) = sum h_(1) (x) S h_(2) (x) h_(3)`, as the matrix pipeline
/// `(id (x) S (x) id) . (Delta (x) id) . Delta`. Both coassociative
/// bracketings of `Delta^2` are computed and must agree exactly.
pub fn qheap_from_hopf(h: &HopfAlgebra) -> Result<QuantumHeap> {
    let d = h.dim();
    let id = Matrix::identity(h.field(), d);
    let delta = h.coalg.delta();
    let d2_left = kron(delta, &id)?.compose(delta)?;
    let d2_right = kron(&id, delta)?.compose(delta)?;
    if d2_left != d2_right {
        return Err(Error::InvalidStructure(
            "comultiplication is not coassociative".into(),
        ));
    }
    let tau = kron_all(&[&id, &h.antipode, &id])?.compose(&d2_left)?;
    QuantumHeap::new(h.alg.clone(), tau)
}

/// Reconstructs the Hopf structure from a copointed quantum heap:
/// `Delta = (id (x) eps (x) id) tau`, counit `eps`, and
/// `S = (eps (x) id (x) eps) tau`.
pub fn hopf_from_copointed_qheap(c: &CopointedQuantumHeap) -> Result<HopfAlgebra> {
    let d = c.heap.dim();
    let field = c.heap.field();
    let id = Matrix::identity(field, d);
    let eps = &c.eps.eps;
    let delta = kron_all(&[&id, eps, &id])?.compose(&c.heap.tau)?;
    let antipode = kron_all(&[eps, &id, eps])?.compose(&c.heap.tau)?;
    let coalg = Coalgebra::new(field, d, delta, eps.clone())?;
    HopfAlgebra::new(c.heap.alg.clone(), coalg, antipode)
}

fn record_equality(report: &mut VerificationReport, axiom: &str, lhs: &Matrix, rhs: &Matrix) {
    report.record(axiom, lhs.first_difference(rhs).map(|(r, c)| vec![r, c]));
}

/// Round trip starting from a Hopf algebra: derive the quantum heap, repoint
/// it with the algebra's own counit, reconstruct, and require all five
/// structure matrices to be identical.
pub fn roundtrip_check_hopf(h: &HopfAlgebra) -> Result<VerificationReport> {
    let base = verify_hopf(h)?;
    if !base.pass() {
        return Err(Error::InvalidStructure(format!(
            "input is not a Hopf algebra: {}",
            base.failures().join(", ")
        )));
    }
    let heap = qheap_from_hopf(h)?;
    let copointed = CopointedQuantumHeap::new(heap, h.counit_character())?;
    let back = hopf_from_copointed_qheap(&copointed)?;
    let mut report = VerificationReport::new(format!("roundtrip-hopf(dim={})", h.dim()));
    record_equality(&mut report, "mu unchanged", back.alg.mu(), h.alg.mu());
    record_equality(&mut report, "unit unchanged", back.alg.unit(), h.alg.unit());
    record_equality(
        &mut report,
        "delta recovered",
        back.coalg.delta(),
        h.coalg.delta(),
    );
    record_equality(
        &mut report,
        "epsilon recovered",
        back.coalg.epsilon(),
        h.coalg.epsilon(),
    );
    record_equality(&mut report, "antipode recovered", &back.antipode, &h.antipode);
    Ok(report)
}

/// Round trip starting from a copointed quantum heap: reconstruct the Hopf
/// algebra, derive the heap again, and require the cooperation to be
/// identical.
pub fn roundtrip_check_qheap(c: &CopointedQuantumHeap) -> Result<VerificationReport> {
    let base = verify_quantum_heap(&c.heap)?;
    if !base.pass() {
        return Err(Error::InvalidStructure(format!(
            "input is not a quantum heap: {}",
            base.failures().join(", ")
        )));
    }
    let ch = verify_character(&c.heap.alg, &c.eps)?;
    if !ch.pass() {
        return Err(Error::InvalidStructure("not a character".into()));
    }
    let hopf = hopf_from_copointed_qheap(c)?;
    let back = qheap_from_hopf(&hopf)?;
    let mut report = VerificationReport::new(format!("roundtrip-qheap(dim={})", c.heap.dim()));
    record_equality(&mut report, "mu unchanged", back.alg.mu(), c.heap.alg.mu());
    record_equality(
        &mut report,
        "unit unchanged",
        back.alg.unit(),
        c.heap.alg.unit(),
    );
    record_equality(&mut report, "tau recovered", &back.tau, &c.heap.tau);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Scalar};
    use crate::matrix::MultiIndex;
    use crate::zoo;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn tau_of_group_algebra_is_g_ginv_g() {
        let g = zoo::builtin_group("cyclic(2)").unwrap();
        let hopf = zoo::group_algebra(&g, q());
        let heap = qheap_from_hopf(&hopf).unwrap();
        let triple = MultiIndex::new(&[2, 2, 2]);
        // tau(e_g) = e_g (x) e_{g^-1} (x) e_g; in Z/2 every element is its
        // own inverse.
        for x in 0..2 {
            let col: Vec<_> = heap.tau.iter().filter(|&(_, c, _)| c == x).collect();
            assert_eq!(col.len(), 1);
            assert_eq!(col[0].0, triple.flatten(&[x, x, x]));
        }
    }

    #[test]
    fn tau_of_unit_is_unit_cubed() {
        for (_, hopf) in zoo::hopf_fleet() {
            let heap = qheap_from_hopf(&hopf).unwrap();
            let tau_unit = heap.tau.compose(hopf.alg.unit()).unwrap();
            let cube = kron_all(&[hopf.alg.unit(), hopf.alg.unit(), hopf.alg.unit()]).unwrap();
            assert_eq!(tau_unit, cube);
        }
    }

    #[test]
    fn tau_of_sweedler_x_expands_as_expected() {
        let hopf = zoo::sweedler_hopf(q()).unwrap();
        let heap = qheap_from_hopf(&hopf).unwrap();
        use zoo::sweedler::{G, GX, ONE, X};
        let triple = MultiIndex::new(&[4, 4, 4]);
        // tau(x) = x (x) 1 (x) 1 - g (x) gx (x) 1 + g (x) g (x) x.
        let col: Vec<_> = heap.tau.iter().filter(|&(_, c, _)| c == X).collect();
        assert_eq!(col.len(), 3);
        assert_eq!(
            heap.tau.get(triple.flatten(&[X, ONE, ONE]), X),
            Scalar::from_integer(q(), 1)
        );
        assert_eq!(
            heap.tau.get(triple.flatten(&[G, GX, ONE]), X),
            Scalar::from_integer(q(), -1)
        );
        assert_eq!(
            heap.tau.get(triple.flatten(&[G, G, X]), X),
            Scalar::from_integer(q(), 1)
        );
    }

    #[test]
    fn reconstruction_recovers_z3_group_structure() {
        let g = zoo::builtin_group("cyclic(3)").unwrap();
        let hopf = zoo::group_algebra(&g, q());
        let heap = qheap_from_hopf(&hopf).unwrap();
        let copointed =
            CopointedQuantumHeap::new(heap, hopf.counit_character()).unwrap();
        let back = hopf_from_copointed_qheap(&copointed).unwrap();
        assert_eq!(back.coalg.delta(), hopf.coalg.delta());
        assert_eq!(back.antipode, hopf.antipode);
    }

    #[test]
    fn reconstruction_recovers_function_hopf_antipode() {
        let g = zoo::builtin_group("cyclic(2)").unwrap();
        let hopf = zoo::function_hopf(&g, q());
        let heap = qheap_from_hopf(&hopf).unwrap();
        let copointed =
            CopointedQuantumHeap::new(heap, hopf.counit_character()).unwrap();
        let back = hopf_from_copointed_qheap(&copointed).unwrap();
        // S delta_g = delta_{g^-1}; in Z/2 inversion is the identity map.
        assert_eq!(back.antipode, Matrix::identity(q(), 2));
        assert_eq!(back.antipode, hopf.antipode);
    }

    #[test]
    fn reconstruction_recovers_sweedler_antipode_of_x() {
        let hopf = zoo::sweedler_hopf(q()).unwrap();
        let heap = qheap_from_hopf(&hopf).unwrap();
        let copointed =
            CopointedQuantumHeap::new(heap, hopf.counit_character()).unwrap();
        let back = hopf_from_copointed_qheap(&copointed).unwrap();
        use zoo::sweedler::{GX, X};
        // S(x) = -gx.
        assert_eq!(
            back.antipode.get(GX, X),
            Scalar::from_integer(q(), -1)
        );
        assert_eq!(back.antipode, hopf.antipode);
    }

    #[test]
    fn roundtrip_is_exact_on_s3_group_algebra() {
        let g = zoo::builtin_group("sym(3)").unwrap();
        let hopf = zoo::group_algebra(&g, q());
        assert!(roundtrip_check_hopf(&hopf).unwrap().pass());
    }

    #[test]
    fn roundtrip_is_exact_on_taft() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let hopf = zoo::taft_hopf(3, f7, Scalar::from_integer(f7, 2)).unwrap();
        assert!(roundtrip_check_hopf(&hopf).unwrap().pass());
        let heap = qheap_from_hopf(&hopf).unwrap();
        let copointed =
            CopointedQuantumHeap::new(heap, hopf.counit_character()).unwrap();
        assert!(roundtrip_check_qheap(&copointed).unwrap().pass());
    }

    #[test]
    fn roundtrip_is_trivial_in_dimension_one() {
        let g = zoo::builtin_group("cyclic(1)").unwrap();
        let hopf = zoo::group_algebra(&g, q());
        assert!(roundtrip_check_hopf(&hopf).unwrap().pass());
    }

    #[test]
    fn both_delta_squared_pipelines_agree_on_the_fleet() {
        for (name, hopf) in zoo::hopf_fleet() {
            let d = hopf.dim();
            let id = Matrix::identity(hopf.field(), d);
            let delta = hopf.coalg.delta();
            let l = kron(delta, &id).unwrap().compose(delta).unwrap();
            let r = kron(&id, delta).unwrap().compose(delta).unwrap();
            assert_eq!(l, r, "pipelines differ for {name}");
        }
    }

    #[test]
    fn abelianization_is_a_qheap_morphism_with_the_same_matrix() {
        // k[S3] -> k[Z/2] induced by the sign of a permutation is a Hopf
        // map; the induced map of derived heaps is the same matrix.
        let s3 = zoo::builtin_group("sym(3)").unwrap();
        let z2 = zoo::builtin_group("cyclic(2)").unwrap();
        let src = zoo::group_algebra(&s3, q());
        let dst = zoo::group_algebra(&z2, q());
        let sign = |p: usize| -> usize {
            // Elements of sym(3) are permutations in lexicographic order;
            // compute the sign by counting inversions of the table row.
            let perm = zoo::sym3_permutation(p);
            let mut inv = 0;
            for i in 0..3 {
                for j in i + 1..3 {
                    if perm[i] > perm[j] {
                        inv += 1;
                    }
                }
            }
            inv % 2
        };
        let mut phi = Matrix::zero(q(), 2, 6);
        for g in 0..6 {
            phi.add_entry(sign(g), g, Scalar::one(q())).unwrap();
        }
        let qh_src = qheap_from_hopf(&src).unwrap();
        let qh_dst = qheap_from_hopf(&dst).unwrap();
        let report = crate::algcore::verify_qheap_morphism(&qh_src, &qh_dst, &phi).unwrap();
        assert!(report.pass(), "{report}");
    }
}
