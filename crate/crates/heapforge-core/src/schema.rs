//! The JSON structure-file format shared between the library and the CLI.
//!
//! One versioned carrier (`"schema": "heapforge/1"`) holds every structure
//! kind: groups and heaps as nested integer tables, algebras, Hopf algebras
//! and quantum heaps as sparse structure-constant entry lists, modules as a
//! base algebra plus action matrices. Scalars are strings in the canonical
//! encoding (`num/den` with the denominator omitted when 1 over the
//! rationals, a decimal residue over a prime field).
//!
//! Sparse entry semantics:
//!   `mu: [i, j, k, s]`       e_i e_j contains s . e_k
//!   `unit: [i, s]`           the unit contains s . e_i
//!   `delta: [i, j, h, s]`    Delta e_h contains s . e_i (x) e_j
//!   `epsilon: [i, s]`        eps(e_i) = s
//!   `antipode: [i, j, s]`    S(e_j) contains s . e_i
//!   `tau: [a, b, c, h, s]`   tau(e_h) contains s . e_a (x) e_b (x) e_c
//!
//! Saving is canonical: entries sorted ascending by index tuple, scalars in
//! lowest terms, two-space pretty JSON, newline-terminated, written via a
//! temp file and an atomic rename. Saving the same structure twice yields
//! byte-identical files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algcore::{Algebra, Character, Coalgebra, HopfAlgebra, QuantumHeap};
use crate::field::{FieldSpec, Scalar};
use crate::heaps::{FiniteGroup, FiniteHeap};
use crate::matrix::{Matrix, MultiIndex};
use crate::reps::{Module, Side};
use crate::{Error, Result};

pub const SCHEMA_VERSION: &str = "heapforge/1";

/// One sparse cooperation entry `[a, b, c, h, scalar]`.
pub type TauEntry = (usize, usize, usize, usize, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
}

impl FieldJson {
    pub fn from_spec(f: FieldSpec) -> FieldJson {
        match f {
            FieldSpec::Rationals => FieldJson {
                kind: "Q".into(),
                p: None,
            },
            FieldSpec::PrimeField(p) => FieldJson {
                kind: "Fp".into(),
                p: Some(p),
            },
        }
    }

    pub fn to_spec(&self) -> Result<FieldSpec> {
        match (self.kind.as_str(), self.p) {
            ("Q", None) => Ok(FieldSpec::Rationals),
            ("Fp", Some(p)) => FieldSpec::prime_field(p),
            _ => Err(Error::Schema(format!(
                "bad field {{type: {:?}, p: {:?}}}",
                self.kind, self.p
            ))),
        }
    }
}

/// The on-disk representation. Which sections must be present depends on
/// `kind`; [`StructureFile::validate`] enforces that.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub schema: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<(usize, usize, usize, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<(usize, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<(usize, usize, usize, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<(usize, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<(usize, usize, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<TauEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<StructureFile>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<Vec<(usize, usize, String)>>>,
}

impl StructureFile {
    fn empty(kind: &str) -> StructureFile {
        StructureFile {
            schema: SCHEMA_VERSION.into(),
            kind: kind.into(),
            field: None,
            n: None,
            dim: None,
            identity: None,
            mul: None,
            t: None,
            mu: None,
            unit: None,
            delta: None,
            epsilon: None,
            antipode: None,
            tau: None,
            side: None,
            base: None,
            actions: None,
        }
    }

    pub fn parse(text: &str) -> Result<StructureFile> {
        let file: StructureFile =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<StructureFile> {
        let text = std::fs::read_to_string(path)?;
        StructureFile::parse(&text)
    }

    /// Canonical rendering: pretty JSON plus a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    /// Atomic canonical write (temp file in the same directory, then rename).
    pub fn save(&self, path: &Path) -> Result<()> {
        let dir = path.parent().unwrap_or_else(|| Path::new("."));
        let mut tmp = path.file_name().map(|n| n.to_os_string()).ok_or_else(|| {
            Error::Schema(format!("not a file path: {}", path.display()))
        })?;
        tmp.push(".tmp");
        let tmp_path = dir.join(tmp);
        std::fs::write(&tmp_path, self.to_canonical_json())?;
        std::fs::rename(&tmp_path, path)?;
        Ok(())
    }

    fn require<T: Clone>(&self, section: Option<&T>, name: &str) -> Result<T> {
        section.cloned().ok_or_else(|| {
            Error::Schema(format!("kind {:?} requires section {name:?}", self.kind))
        })
    }

    fn field_spec(&self) -> Result<FieldSpec> {
        self.require(self.field.as_ref(), "field")?.to_spec()
    }

    /// Structural validation: schema version, known kind, required sections,
    /// index ranges, scalar syntax, and no duplicate index tuples. Axiom
    /// checking is a separate concern for the verifiers.
    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema {:?} (expected {SCHEMA_VERSION:?})",
                self.schema
            )));
        }
        match self.kind.as_str() {
            "group" => self.to_group_table().map(|_| ()),
            "heap" => self.to_heap().map(|_| ()),
            "algebra" => self.to_algebra().map(|_| ()),
            "hopf" => self.to_hopf().map(|_| ()),
            "qheap" => self.to_qheap().map(|_| ()),
            "module" => self.to_module().map(|_| ()),
            other => Err(Error::Schema(format!("unknown kind {other:?}"))),
        }
    }

    pub fn from_group(g: &FiniteGroup) -> StructureFile {
        let mut f = StructureFile::empty("group");
        f.n = Some(g.order());
        f.identity = Some(g.identity());
        f.mul = Some(g.table().clone());
        f
    }

    /// The raw table and identity, validated for shape and index range only
    /// (the group axioms are the verifier's concern).
    pub fn to_group_table(&self) -> Result<(Vec<Vec<usize>>, usize)> {
        let n = self.require(self.n.as_ref(), "n")?;
        let mul = self.require(self.mul.as_ref(), "mul")?;
        let identity = self.require(self.identity.as_ref(), "identity")?;
        if mul.len() != n || identity >= n {
            return Err(Error::Schema(format!(
                "mul table has {} rows with identity {identity}, expected n = {n}",
                mul.len()
            )));
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Schema(format!("mul row {i} has length {}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::Schema(format!(
                        "mul[{i}][{j}] = {v} out of range for n = {n}"
                    )));
                }
            }
        }
        Ok((mul, identity))
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        let (mul, identity) = self.to_group_table()?;
        FiniteGroup::new(mul, identity).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn from_heap(h: &FiniteHeap) -> StructureFile {
        let mut f = StructureFile::empty("heap");
        f.n = Some(h.order());
        f.t = Some(h.table().clone());
        f
    }

    pub fn to_heap(&self) -> Result<FiniteHeap> {
        let n = self.require(self.n.as_ref(), "n")?;
        let t = self.require(self.t.as_ref(), "t")?;
        if t.len() != n {
            return Err(Error::Schema(format!(
                "t table has {} layers, expected {n}",
                t.len()
            )));
        }
        for (a, layer) in t.iter().enumerate() {
            for (b, row) in layer.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    if v >= n {
                        return Err(Error::Schema(format!(
                            "t[{a}][{b}][{c}] = {v} out of range for n = {n}"
                        )));
                    }
                }
            }
        }
        FiniteHeap::new(t).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn from_algebra(a: &Algebra) -> StructureFile {
        let mut f = StructureFile::empty("algebra");
        f.field = Some(FieldJson::from_spec(a.field()));
        f.dim = Some(a.dim());
        f.mu = Some(mu_entries(a.mu(), a.dim()));
        f.unit = Some(column_entries(a.unit()));
        f
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        let field = self.field_spec()?;
        let dim = self.require(self.dim.as_ref(), "dim")?;
        let mu = self.require(self.mu.as_ref(), "mu")?;
        let unit = self.require(self.unit.as_ref(), "unit")?;
        build_algebra(field, dim, &mu, &unit)
    }

    pub fn from_hopf(h: &HopfAlgebra) -> StructureFile {
        let d = h.dim();
        let mut f = StructureFile::from_algebra(&h.alg);
        f.kind = "hopf".into();
        f.delta = Some(delta_entries(h.coalg.delta(), d));
        f.epsilon = Some(row_entries(h.coalg.epsilon()));
        f.antipode = Some(square_entries(&h.antipode));
        f
    }

    pub fn to_hopf(&self) -> Result<HopfAlgebra> {
        let field = self.field_spec()?;
        let dim = self.require(self.dim.as_ref(), "dim")?;
        let alg = build_algebra(
            field,
            dim,
            &self.require(self.mu.as_ref(), "mu")?,
            &self.require(self.unit.as_ref(), "unit")?,
        )?;
        let delta = build_delta(
            field,
            dim,
            &self.require(self.delta.as_ref(), "delta")?,
        )?;
        let epsilon = build_row(
            field,
            dim,
            &self.require(self.epsilon.as_ref(), "epsilon")?,
            "epsilon",
        )?;
        let antipode = build_square(
            field,
            dim,
            &self.require(self.antipode.as_ref(), "antipode")?,
        )?;
        let coalg =
            Coalgebra::new(field, dim, delta, epsilon).map_err(|e| Error::Schema(e.to_string()))?;
        HopfAlgebra::new(alg, coalg, antipode).map_err(|e| Error::Schema(e.to_string()))
    }

    /// Serializes a quantum heap, with the character as an optional sidecar
    /// `epsilon` section (characters are extra data, never inferred).
    pub fn from_qheap(q: &QuantumHeap, eps: Option<&Character>) -> StructureFile {
        let d = q.dim();
        let mut f = StructureFile::from_algebra(&q.alg);
        f.kind = "qheap".into();
        f.tau = Some(tau_entries(&q.tau, d));
        f.epsilon = eps.map(|e| row_entries(&e.eps));
        f
    }

    pub fn to_qheap(&self) -> Result<(QuantumHeap, Option<Character>)> {
        let field = self.field_spec()?;
        let dim = self.require(self.dim.as_ref(), "dim")?;
        let alg = build_algebra(
            field,
            dim,
            &self.require(self.mu.as_ref(), "mu")?,
            &self.require(self.unit.as_ref(), "unit")?,
        )?;
        let tau = build_tau(field, dim, &self.require(self.tau.as_ref(), "tau")?)?;
        let eps = match &self.epsilon {
            None => None,
            Some(entries) => Some(Character::new(
                field,
                dim,
                build_row(field, dim, entries, "epsilon")?,
            )?),
        };
        let heap = QuantumHeap::new(alg, tau).map_err(|e| Error::Schema(e.to_string()))?;
        Ok((heap, eps))
    }

    pub fn from_module(m: &Module) -> StructureFile {
        let mut f = StructureFile::empty("module");
        f.field = Some(FieldJson::from_spec(m.base.field()));
        f.dim = Some(m.dim);
        f.side = Some(
            match m.side {
                Side::Left => "left",
                Side::Right => "right",
            }
            .into(),
        );
        f.base = Some(Box::new(StructureFile::from_algebra(&m.base)));
        f.actions = Some(m.actions.iter().map(square_entries).collect());
        f
    }

    pub fn to_module(&self) -> Result<Module> {
        let field = self.field_spec()?;
        let dim = self.require(self.dim.as_ref(), "dim")?;
        let side = match self.require(self.side.as_ref(), "side")?.as_str() {
            "left" => Side::Left,
            "right" => Side::Right,
            other => {
                return Err(Error::Schema(format!(
                    "side must be \"left\" or \"right\", got {other:?}"
                )))
            }
        };
        let base_file = self.require(self.base.as_ref(), "base")?;
        if base_file.kind != "algebra" {
            return Err(Error::Schema("module base must have kind algebra".into()));
        }
        let base = base_file.to_algebra()?;
        if base.field() != field {
            return Err(Error::Schema(
                "module field differs from its base algebra's field".into(),
            ));
        }
        let actions_entries = self.require(self.actions.as_ref(), "actions")?;
        if actions_entries.len() != base.dim() {
            return Err(Error::Schema(format!(
                "expected {} action matrices, got {}",
                base.dim(),
                actions_entries.len()
            )));
        }
        let actions = actions_entries
            .iter()
            .map(|entries| build_square_sized(field, dim, entries))
            .collect::<Result<Vec<_>>>()?;
        Module::new(side, base, dim, actions).map_err(|e| Error::Schema(e.to_string()))
    }
}

fn mu_entries(mu: &Matrix, d: usize) -> Vec<(usize, usize, usize, String)> {
    let pairs = MultiIndex::new(&[d, d]);
    let mut out: Vec<_> = mu
        .iter()
        .map(|(k, c, s)| {
            let ij = pairs.unflatten(c);
            (ij[0], ij[1], k, s.to_string())
        })
        .collect();
    out.sort();
    out
}

fn delta_entries(delta: &Matrix, d: usize) -> Vec<(usize, usize, usize, String)> {
    let pairs = MultiIndex::new(&[d, d]);
    let mut out: Vec<_> = delta
        .iter()
        .map(|(r, h, s)| {
            let ij = pairs.unflatten(r);
            (ij[0], ij[1], h, s.to_string())
        })
        .collect();
    out.sort();
    out
}

fn tau_entries(tau: &Matrix, d: usize) -> Vec<TauEntry> {
    let triples = MultiIndex::new(&[d, d, d]);
    let mut out: Vec<_> = tau
        .iter()
        .map(|(r, h, s)| {
            let abc = triples.unflatten(r);
            (abc[0], abc[1], abc[2], h, s.to_string())
        })
        .collect();
    out.sort();
    out
}

fn column_entries(col: &Matrix) -> Vec<(usize, String)> {
    col.iter().map(|(r, _, s)| (r, s.to_string())).collect()
}

fn row_entries(row: &Matrix) -> Vec<(usize, String)> {
    row.iter().map(|(_, c, s)| (c, s.to_string())).collect()
}

fn square_entries(m: &Matrix) -> Vec<(usize, usize, String)> {
    m.iter().map(|(r, c, s)| (r, c, s.to_string())).collect()
}

struct EntryBuilder {
    matrix: Matrix,
    seen: std::collections::BTreeSet<(usize, usize)>,
    section: &'static str,
}

impl EntryBuilder {
    fn new(field: FieldSpec, rows: usize, cols: usize, section: &'static str) -> EntryBuilder {
        EntryBuilder {
            matrix: Matrix::zero(field, rows, cols),
            seen: Default::default(),
            section,
        }
    }

    fn put(&mut self, index: usize, r: usize, c: usize, scalar: &str) -> Result<()> {
        if !self.seen.insert((r, c)) {
            return Err(Error::Schema(format!(
                "{} entry {index}: duplicate index tuple",
                self.section
            )));
        }
        let s = Scalar::parse(self.matrix.field(), scalar).map_err(|e| {
            Error::Schema(format!("{} entry {index}: {e}", self.section))
        })?;
        self.matrix.add_entry(r, c, s).map_err(|e| {
            Error::Schema(format!("{} entry {index}: {e}", self.section))
        })
    }

    fn finish(self) -> Matrix {
        self.matrix
    }
}

fn build_algebra(
    field: FieldSpec,
    dim: usize,
    mu: &[(usize, usize, usize, String)],
    unit: &[(usize, String)],
) -> Result<Algebra> {
    let pairs = MultiIndex::new(&[dim.max(1), dim.max(1)]);
    let mut mb = EntryBuilder::new(field, dim, dim * dim, "mu");
    for (index, (i, j, k, s)) in mu.iter().enumerate() {
        if *i >= dim || *j >= dim {
            return Err(Error::Schema(format!("mu entry {index}: index out of range")));
        }
        mb.put(index, *k, pairs.flatten(&[*i, *j]), s)?;
    }
    let mut ub = EntryBuilder::new(field, dim, 1, "unit");
    for (index, (i, s)) in unit.iter().enumerate() {
        ub.put(index, *i, 0, s)?;
    }
    Algebra::new(field, dim, mb.finish(), ub.finish()).map_err(|e| Error::Schema(e.to_string()))
}

fn build_delta(
    field: FieldSpec,
    dim: usize,
    entries: &[(usize, usize, usize, String)],
) -> Result<Matrix> {
    let pairs = MultiIndex::new(&[dim.max(1), dim.max(1)]);
    let mut b = EntryBuilder::new(field, dim * dim, dim, "delta");
    for (index, (i, j, h, s)) in entries.iter().enumerate() {
        if *i >= dim || *j >= dim {
            return Err(Error::Schema(format!(
                "delta entry {index}: index out of range"
            )));
        }
        b.put(index, pairs.flatten(&[*i, *j]), *h, s)?;
    }
    Ok(b.finish())
}

fn build_tau(field: FieldSpec, dim: usize, entries: &[TauEntry]) -> Result<Matrix> {
    let triples = MultiIndex::new(&[dim.max(1), dim.max(1), dim.max(1)]);
    let mut b = EntryBuilder::new(field, dim * dim * dim, dim, "tau");
    for (index, (a, c1, c2, h, s)) in entries.iter().enumerate() {
        if *a >= dim || *c1 >= dim || *c2 >= dim {
            return Err(Error::Schema(format!(
                "tau entry {index}: index out of range"
            )));
        }
        b.put(index, triples.flatten(&[*a, *c1, *c2]), *h, s)?;
    }
    Ok(b.finish())
}

fn build_row(
    field: FieldSpec,
    dim: usize,
    entries: &[(usize, String)],
    section: &'static str,
) -> Result<Matrix> {
    let mut b = EntryBuilder::new(field, 1, dim, section);
    for (index, (i, s)) in entries.iter().enumerate() {
        b.put(index, 0, *i, s)?;
    }
    Ok(b.finish())
}

fn build_square(
    field: FieldSpec,
    dim: usize,
    entries: &[(usize, usize, String)],
) -> Result<Matrix> {
    let mut b = EntryBuilder::new(field, dim, dim, "antipode");
    for (index, (i, j, s)) in entries.iter().enumerate() {
        b.put(index, *i, *j, s)?;
    }
    Ok(b.finish())
}

fn build_square_sized(
    field: FieldSpec,
    dim: usize,
    entries: &[(usize, usize, String)],
) -> Result<Matrix> {
    let mut b = EntryBuilder::new(field, dim, dim, "actions");
    for (index, (i, j, s)) in entries.iter().enumerate() {
        b.put(index, *i, *j, s)?;
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::qheap_from_hopf;
    use crate::heaps::heap_from_group;
    use crate::zoo;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn group_round_trip() {
        let g = zoo::builtin_group("dihedral(3)").unwrap();
        let f = StructureFile::from_group(&g);
        let text = f.to_canonical_json();
        let back = StructureFile::parse(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_group().unwrap(), g);
    }

    #[test]
    fn heap_round_trip() {
        let h = heap_from_group(&zoo::builtin_group("cyclic(4)").unwrap());
        let f = StructureFile::from_heap(&h);
        let back = StructureFile::parse(&f.to_canonical_json()).unwrap();
        assert_eq!(back.to_heap().unwrap(), h);
    }

    #[test]
    fn hopf_round_trip_over_both_fields() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        for hopf in [
            zoo::sweedler_hopf(q()).unwrap(),
            zoo::taft_hopf(3, f7, Scalar::from_integer(f7, 2)).unwrap(),
        ] {
            let f = StructureFile::from_hopf(&hopf);
            let back = StructureFile::parse(&f.to_canonical_json()).unwrap();
            let h2 = back.to_hopf().unwrap();
            assert_eq!(h2.alg.mu(), hopf.alg.mu());
            assert_eq!(h2.coalg.delta(), hopf.coalg.delta());
            assert_eq!(h2.antipode, hopf.antipode);
        }
    }

    #[test]
    fn qheap_round_trip_with_character_sidecar() {
        let hopf = zoo::sweedler_hopf(q()).unwrap();
        let heap = qheap_from_hopf(&hopf).unwrap();
        let eps = hopf.counit_character();
        let f = StructureFile::from_qheap(&heap, Some(&eps));
        let back = StructureFile::parse(&f.to_canonical_json()).unwrap();
        let (h2, eps2) = back.to_qheap().unwrap();
        assert_eq!(h2.tau, heap.tau);
        assert_eq!(eps2.unwrap().eps, eps.eps);

        let bare = StructureFile::from_qheap(&heap, None);
        let (_, none) = StructureFile::parse(&bare.to_canonical_json())
            .unwrap()
            .to_qheap()
            .unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn module_round_trip() {
        let hopf = zoo::sweedler_hopf(q()).unwrap();
        let m = Module::regular(&hopf.alg, Side::Left);
        let f = StructureFile::from_module(&m);
        let back = StructureFile::parse(&f.to_canonical_json()).unwrap();
        assert_eq!(back.to_module().unwrap(), m);
    }

    #[test]
    fn canonical_output_is_byte_stable() {
        let hopf = zoo::sweedler_hopf(q()).unwrap();
        let a = StructureFile::from_hopf(&hopf).to_canonical_json();
        let b = StructureFile::from_hopf(&zoo::sweedler_hopf(q()).unwrap()).to_canonical_json();
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
        // Rereading and rewriting also reproduces the bytes.
        let c = StructureFile::parse(&a).unwrap().to_canonical_json();
        assert_eq!(a, c);
    }

    #[test]
    fn duplicate_entries_are_rejected_with_entry_index() {
        let g = zoo::builtin_group("cyclic(2)").unwrap();
        let mut f = StructureFile::from_hopf(&zoo::group_algebra(&g, q()));
        let mut mu = f.mu.take().unwrap();
        mu.push(mu[0].clone());
        f.mu = Some(mu);
        let err = StructureFile::parse(&f.to_canonical_json()).unwrap_err();
        match err {
            Error::Schema(msg) => {
                assert!(msg.contains("duplicate"), "{msg}");
                assert!(msg.contains("entry 4"), "{msg}");
            }
            other => panic!("expected schema error, got {other}"),
        }
    }

    #[test]
    fn out_of_range_index_is_a_schema_error() {
        let g = zoo::builtin_group("cyclic(2)").unwrap();
        let mut f = StructureFile::from_hopf(&zoo::group_algebra(&g, q()));
        f.mu.as_mut().unwrap().push((5, 0, 0, "1".into()));
        assert!(matches!(
            StructureFile::parse(&f.to_canonical_json()),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn bad_scalars_and_schema_version_are_rejected() {
        let g = zoo::builtin_group("cyclic(2)").unwrap();
        let mut f = StructureFile::from_hopf(&zoo::group_algebra(&g, q()));
        f.mu.as_mut().unwrap()[0].3 = "1/0".into();
        assert!(StructureFile::parse(&f.to_canonical_json()).is_err());

        let mut f = StructureFile::from_group(&g);
        f.schema = "heapforge/2".into();
        assert!(matches!(
            StructureFile::parse(&f.to_canonical_json()),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn atomic_save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("structure.json");
        let g = zoo::builtin_group("klein4").unwrap();
        let f = StructureFile::from_group(&g);
        f.save(&path).unwrap();
        let back = StructureFile::load(&path).unwrap();
        assert_eq!(back, f);
        // Saving again yields identical bytes.
        let first = std::fs::read(&path).unwrap();
        f.save(&path).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), first);
    }
}
