//! Batch front end over the structure-file format: verification, structure
//! derivation, round trips, built-in fixtures, heap commands, and evaluation
//! of arity-typed terms.
//!
//! Exit codes: 0 = all checks passed, 1 = an axiom or round-trip check
//! failed (a report says which), 2 = input, schema, or usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use heapforge_core::algcore::{
    verify_algebra, verify_character, verify_hopf, verify_quantum_heap, Character,
};
use heapforge_core::functors::{
    hopf_from_copointed_qheap, qheap_from_hopf, roundtrip_check_hopf, roundtrip_check_qheap,
    CopointedQuantumHeap,
};
use heapforge_core::heaps::{
    aut_group, enumerate_heaps, group_from_pointed_heap, heap_from_group, verify_group_table,
    verify_heap, FiniteGroup,
};
use heapforge_core::proterm::{
    check_pro_relations_set, check_pro_relations_vect, eval_set, eval_vect, parse_term,
};
use heapforge_core::reps::verify_module;
use heapforge_core::schema::StructureFile;
use heapforge_core::zoo;
use heapforge_core::{FieldSpec, Matrix, MultiIndex, Scalar, VerificationReport};

#[derive(Parser)]
#[command(
    name = "heapforge",
    version,
    about = "Exact verification and derivation of finite heaps, Hopf algebras, and quantum heaps stored as structure constants"
)]
struct Cli {
    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Vect,
    Set,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every defining identity of the structure in a file.
    Verify { path: PathBuf },
    /// Derive the quantum heap of a Hopf-algebra file (the counit rides
    /// along as an epsilon sidecar).
    ToQheap {
        path: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rebuild a Hopf algebra from a quantum-heap file and a character.
    ToHopf {
        path: PathBuf,
        /// Either `from-file` (use the epsilon sidecar) or a JSON entry
        /// list like `[[0, "1"], [1, "1"]]`.
        #[arg(long)]
        character: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Derive the other structure and back; exit 0 only if the canonical
    /// files are bit-identical.
    Roundtrip { path: PathBuf },
    /// Emit a built-in structure.
    Zoo {
        /// One of: cyclic, klein4, dihedral, sym3, group-algebra,
        /// function-hopf, sweedler, taft.
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<i64>,
        /// Base group for group-algebra / function-hopf, e.g. "cyclic(3)".
        #[arg(long)]
        group: Option<String>,
        /// Ground field: `Q` or `Fp:<prime>`.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Heap-side commands.
    Heap {
        #[command(subcommand)]
        sub: HeapCmd,
    },
    /// Evaluate a term over the structure in a file and print the matrix
    /// (vector-space model) or table (set model).
    ProEval {
        term: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        model: Option<Model>,
    },
    /// Check the seven defining relations of the term language against a
    /// quantum-heap or heap file.
    ProCheck { path: PathBuf },
}

#[derive(Subcommand)]
enum HeapCmd {
    /// The canonical heap t(a,b,c) = a b^{-1} c of a group file.
    FromGroup {
        path: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The automorphism group of a heap, from its translation maps.
    Aut {
        path: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The group of a pointed heap: a * b = t(a, base, b).
    Point {
        path: PathBuf,
        #[arg(long)]
        at: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Census of all heaps on n elements (n <= 4); writes one file per heap
    /// under the output prefix.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    AxiomFailure,
}

/// Writes to stdout, ignoring a closed pipe instead of panicking.
fn out(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn outln(text: &str) {
    out(text);
    out("\n");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd, cli.format) {
        Ok(Outcome::Pass) => ExitCode::from(0),
        Ok(Outcome::AxiomFailure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(report: &mut VerificationReport, label: &Path, format: Format) -> Outcome {
    report.structure = format!("{} [{}]", label.display(), report.structure);
    match format {
        Format::Text => out(&report.to_string()),
        Format::Json => outln(&serde_json::to_string_pretty(report).expect("serializable")),
    }
    if report.pass() {
        Outcome::Pass
    } else {
        Outcome::AxiomFailure
    }
}

fn run(cmd: Cmd, format: Format) -> heapforge_core::Result<Outcome> {
    match cmd {
        Cmd::Verify { path } => cmd_verify(&path, format),
        Cmd::ToQheap { path, output } => cmd_to_qheap(&path, &output, format),
        Cmd::ToHopf {
            path,
            character,
            output,
        } => cmd_to_hopf(&path, &character, &output, format),
        Cmd::Roundtrip { path } => cmd_roundtrip(&path, format),
        Cmd::Zoo {
            name,
            n,
            p,
            q,
            group,
            field,
            output,
        } => cmd_zoo(&name, n, p, q, group.as_deref(), &field, &output),
        Cmd::Heap { sub } => match sub {
            HeapCmd::FromGroup { path, output } => cmd_heap_from_group(&path, &output, format),
            HeapCmd::Aut { path, output } => cmd_heap_aut(&path, &output, format),
            HeapCmd::Point { path, at, output } => cmd_heap_point(&path, at, &output, format),
            HeapCmd::Enumerate { n, output } => cmd_heap_enumerate(n, &output),
        },
        Cmd::ProEval { term, input, model } => cmd_pro_eval(&term, &input, model, format),
        Cmd::ProCheck { path } => cmd_pro_check(&path, format),
    }
}

fn cmd_verify(path: &Path, format: Format) -> heapforge_core::Result<Outcome> {
    let file = StructureFile::load(path)?;
    let mut report = match file.kind.as_str() {
        "group" => {
            let (mul, identity) = file.to_group_table()?;
            verify_group_table(&mul, identity)?
        }
        "heap" => verify_heap(&file.to_heap()?)?,
        "algebra" => verify_algebra(&file.to_algebra()?)?,
        "hopf" => verify_hopf(&file.to_hopf()?)?,
        "qheap" => {
            let (heap, eps) = file.to_qheap()?;
            let mut r = verify_quantum_heap(&heap)?;
            if let Some(eps) = eps {
                r.merge(verify_character(&heap.alg, &eps)?);
                r.merge(heapforge_core::algcore::verify_cop_counit(&heap, &eps)?);
            }
            r
        }
        "module" => verify_module(&file.to_module()?)?,
        other => {
            return Err(heapforge_core::Error::Schema(format!(
                "unknown kind {other:?}"
            )))
        }
    };
    Ok(emit(&mut report, path, format))
}

fn cmd_to_qheap(path: &Path, output: &Path, format: Format) -> heapforge_core::Result<Outcome> {
    let hopf = StructureFile::load(path)?.to_hopf()?;
    let mut base = verify_hopf(&hopf)?;
    if !base.pass() {
        return Ok(emit(&mut base, path, format));
    }
    let heap = qheap_from_hopf(&hopf)?;
    StructureFile::from_qheap(&heap, Some(&hopf.counit_character())).save(output)?;
    outln(&format!("wrote {}", output.display()));
    Ok(Outcome::Pass)
}

fn parse_character_arg(
    spec: &str,
    file: &StructureFile,
    field: FieldSpec,
    dim: usize,
) -> heapforge_core::Result<Character> {
    let entries: Vec<(usize, String)> = if spec == "from-file" {
        file.epsilon.clone().ok_or_else(|| {
            heapforge_core::Error::Schema(
                "file carries no epsilon sidecar; pass --character with an entry list".into(),
            )
        })?
    } else {
        serde_json::from_str(spec).map_err(|e| {
            heapforge_core::Error::Schema(format!("cannot parse --character entry list: {e}"))
        })?
    };
    let mut eps = Matrix::zero(field, 1, dim);
    for (i, s) in entries {
        eps.add_entry(0, i, Scalar::parse(field, &s)?)?;
    }
    Character::new(field, dim, eps)
}

fn cmd_to_hopf(
    path: &Path,
    character: &str,
    output: &Path,
    format: Format,
) -> heapforge_core::Result<Outcome> {
    let file = StructureFile::load(path)?;
    if file.kind != "qheap" {
        return Err(heapforge_core::Error::Schema(format!(
            "to-hopf expects a qheap file, got kind {:?}",
            file.kind
        )));
    }
    let (heap, _) = file.to_qheap()?;
    let eps = parse_character_arg(character, &file, heap.field(), heap.dim())?;
    let mut base = verify_quantum_heap(&heap)?;
    if !base.pass() {
        return Ok(emit(&mut base, path, format));
    }
    let mut ch = verify_character(&heap.alg, &eps)?;
    if !ch.pass() {
        return Ok(emit(&mut ch, path, format));
    }
    let hopf = hopf_from_copointed_qheap(&CopointedQuantumHeap { heap, eps })?;
    StructureFile::from_hopf(&hopf).save(output)?;
    outln(&format!("wrote {}", output.display()));
    Ok(Outcome::Pass)
}

fn cmd_roundtrip(path: &Path, format: Format) -> heapforge_core::Result<Outcome> {
    let file = StructureFile::load(path)?;
    let mut report = match file.kind.as_str() {
        "hopf" => {
            let hopf = file.to_hopf()?;
            let mut report = roundtrip_check_hopf(&hopf)?;
            let heap = qheap_from_hopf(&hopf)?;
            let back = hopf_from_copointed_qheap(&CopointedQuantumHeap::new(
                heap,
                hopf.counit_character(),
            )?)?;
            let identical = StructureFile::from_hopf(&back).to_canonical_json()
                == StructureFile::from_hopf(&hopf).to_canonical_json();
            report.record(
                "canonical files bit-identical",
                if identical { None } else { Some(vec![]) },
            );
            report
        }
        "qheap" => {
            let (heap, eps) = file.to_qheap()?;
            let eps = eps.ok_or_else(|| {
                heapforge_core::Error::Schema(
                    "roundtrip on a qheap file needs an epsilon sidecar".into(),
                )
            })?;
            let copointed = CopointedQuantumHeap::new(heap, eps)?;
            let mut report = roundtrip_check_qheap(&copointed)?;
            let hopf = hopf_from_copointed_qheap(&copointed)?;
            let back = qheap_from_hopf(&hopf)?;
            let identical = StructureFile::from_qheap(&back, Some(&copointed.eps))
                .to_canonical_json()
                == StructureFile::from_qheap(&copointed.heap, Some(&copointed.eps))
                    .to_canonical_json();
            report.record(
                "canonical files bit-identical",
                if identical { None } else { Some(vec![]) },
            );
            report
        }
        other => {
            return Err(heapforge_core::Error::Schema(format!(
                "roundtrip expects a hopf or qheap file, got kind {other:?}"
            )))
        }
    };
    Ok(emit(&mut report, path, format))
}

fn parse_field(text: &str) -> heapforge_core::Result<FieldSpec> {
    if text == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = text.strip_prefix("Fp:") {
        let p: u32 = p.parse().map_err(|_| {
            heapforge_core::Error::Schema(format!("bad prime in field spec {text:?}"))
        })?;
        return FieldSpec::prime_field(p);
    }
    Err(heapforge_core::Error::Schema(format!(
        "field must be Q or Fp:<prime>, got {text:?}"
    )))
}

fn cmd_zoo(
    name: &str,
    n: Option<usize>,
    p: Option<u32>,
    q: Option<i64>,
    group: Option<&str>,
    field: &str,
    output: &Path,
) -> heapforge_core::Result<Outcome> {
    let need_n = || {
        n.ok_or_else(|| heapforge_core::Error::UnsupportedParameter(format!("{name} needs --n")))
    };
    let base_group = |spec: Option<&str>| -> heapforge_core::Result<FiniteGroup> {
        let spec = spec.ok_or_else(|| {
            heapforge_core::Error::UnsupportedParameter(format!("{name} needs --group"))
        })?;
        zoo::builtin_group(spec)
    };
    let file = match name {
        "cyclic" => StructureFile::from_group(&zoo::cyclic_group(need_n()?)?),
        "klein4" => StructureFile::from_group(&zoo::klein_four_group()?),
        "dihedral" => StructureFile::from_group(&zoo::dihedral_group(need_n()?)?),
        "sym3" => StructureFile::from_group(&zoo::symmetric_group_3()?),
        "group-algebra" => {
            let g = base_group(group)?;
            StructureFile::from_hopf(&zoo::group_algebra(&g, parse_field(field)?))
        }
        "function-hopf" => {
            let g = base_group(group)?;
            StructureFile::from_hopf(&zoo::function_hopf(&g, parse_field(field)?))
        }
        "sweedler" => StructureFile::from_hopf(&zoo::sweedler_hopf(parse_field(field)?)?),
        "taft" => {
            let n = need_n()?;
            let p = p.ok_or_else(|| {
                heapforge_core::Error::UnsupportedParameter("taft needs --p".into())
            })?;
            let q = q.ok_or_else(|| {
                heapforge_core::Error::UnsupportedParameter("taft needs --q".into())
            })?;
            let f = FieldSpec::prime_field(p)?;
            StructureFile::from_hopf(&zoo::taft_hopf(n, f, Scalar::from_integer(f, q))?)
        }
        other => {
            return Err(heapforge_core::Error::UnsupportedParameter(format!(
                "unknown zoo entry {other:?}"
            )))
        }
    };
    file.save(output)?;
    outln(&format!("wrote {}", output.display()));
    Ok(Outcome::Pass)
}

fn cmd_heap_from_group(
    path: &Path,
    output: &Path,
    format: Format,
) -> heapforge_core::Result<Outcome> {
    let (mul, identity) = StructureFile::load(path)?.to_group_table()?;
    let mut report = verify_group_table(&mul, identity)?;
    if !report.pass() {
        return Ok(emit(&mut report, path, format));
    }
    let g = FiniteGroup::new(mul, identity)?;
    StructureFile::from_heap(&heap_from_group(&g)).save(output)?;
    outln(&format!("wrote {}", output.display()));
    Ok(Outcome::Pass)
}

fn cmd_heap_aut(path: &Path, output: &Path, format: Format) -> heapforge_core::Result<Outcome> {
    let heap = StructureFile::load(path)?.to_heap()?;
    let mut report = verify_heap(&heap)?;
    if !report.pass() {
        return Ok(emit(&mut report, path, format));
    }
    let aut = aut_group(&heap)?;
    StructureFile::from_group(&aut.group).save(output)?;
    outln(&format!("wrote {}", output.display()));
    Ok(Outcome::Pass)
}

fn cmd_heap_point(
    path: &Path,
    at: usize,
    output: &Path,
    format: Format,
) -> heapforge_core::Result<Outcome> {
    let heap = StructureFile::load(path)?.to_heap()?;
    let mut report = verify_heap(&heap)?;
    if !report.pass() {
        return Ok(emit(&mut report, path, format));
    }
    let g = group_from_pointed_heap(&heap, at)?;
    StructureFile::from_group(&g).save(output)?;
    outln(&format!("wrote {}", output.display()));
    Ok(Outcome::Pass)
}

fn cmd_heap_enumerate(n: usize, output: &Path) -> heapforge_core::Result<Outcome> {
    let heaps = enumerate_heaps(n)?;
    let stem = output.to_string_lossy();
    for (i, h) in heaps.iter().enumerate() {
        let path = PathBuf::from(format!("{stem}-{i}.json"));
        StructureFile::from_heap(h).save(&path)?;
        outln(&format!("wrote {}", path.display()));
    }
    outln(&format!("{} heap(s) on {} element(s)", heaps.len(), n));
    Ok(Outcome::Pass)
}

fn cmd_pro_eval(
    term: &str,
    input: &Path,
    model: Option<Model>,
    format: Format,
) -> heapforge_core::Result<Outcome> {
    let file = StructureFile::load(input)?;
    let term = parse_term(term)?;
    let inferred = match file.kind.as_str() {
        "qheap" => Model::Vect,
        "heap" => Model::Set,
        other => {
            return Err(heapforge_core::Error::Schema(format!(
                "pro-eval expects a qheap or heap file, got kind {other:?}"
            )))
        }
    };
    if let Some(m) = model {
        if m != inferred {
            return Err(heapforge_core::Error::Schema(
                "requested model does not match the file kind".into(),
            ));
        }
    }
    match inferred {
        Model::Vect => {
            let (heap, _) = file.to_qheap()?;
            let matrix = eval_vect(&term, &heap);
            let (src, dst) = term.arity();
            match format {
                Format::Json => {
                    let entries: Vec<(usize, usize, String)> = matrix
                        .iter()
                        .map(|(r, c, s)| (r, c, s.to_string()))
                        .collect();
                    outln(
                        &serde_json::json!({
                            "arity": [src, dst],
                            "rows": matrix.rows(),
                            "cols": matrix.cols(),
                            "entries": entries,
                        })
                        .to_string(),
                    );
                }
                Format::Text => {
                    let mut text = format!(
                        "term {src} -> {dst}; matrix {} x {}\n",
                        matrix.rows(),
                        matrix.cols()
                    );
                    for (r, c, s) in matrix.iter() {
                        text.push_str(&format!("  [{r}, {c}] = {s}\n"));
                    }
                    out(&text);
                }
            }
        }
        Model::Set => {
            let heap = file.to_heap()?;
            let map = eval_set(&term, &heap)?;
            let src_index = MultiIndex::new(&vec![map.carrier; map.src_pow]);
            let dst_index = MultiIndex::new(&vec![map.carrier; map.dst_pow]);
            match format {
                Format::Json => {
                    outln(
                        &serde_json::json!({
                            "arity": [map.dst_pow, map.src_pow],
                            "carrier": map.carrier,
                            "table": map.table,
                        })
                        .to_string(),
                    );
                }
                Format::Text => {
                    let mut text = format!(
                        "map H^{} -> H^{} on carrier of size {}\n",
                        map.src_pow, map.dst_pow, map.carrier
                    );
                    for (f, &v) in map.table.iter().enumerate() {
                        text.push_str(&format!(
                            "  {:?} -> {:?}\n",
                            src_index.unflatten(f),
                            dst_index.unflatten(v)
                        ));
                    }
                    out(&text);
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_pro_check(path: &Path, format: Format) -> heapforge_core::Result<Outcome> {
    let file = StructureFile::load(path)?;
    let mut report = match file.kind.as_str() {
        "qheap" => check_pro_relations_vect(&file.to_qheap()?.0)?,
        "heap" => check_pro_relations_set(&file.to_heap()?)?,
        other => {
            return Err(heapforge_core::Error::Schema(format!(
                "pro-check expects a qheap or heap file, got kind {other:?}"
            )))
        }
    };
    Ok(emit(&mut report, path, format))
}
