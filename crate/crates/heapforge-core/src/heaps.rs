//! Finite heaps and finite groups as explicit tables, and the dictionary
//! between them: a group yields a heap via `t(a,b,c) = a b^{-1} c`, a pointed
//! heap yields a group via `a * b = t(a, base, b)`, and the translation maps
//! `t(., a, b)` recover the group up to isomorphism.

use std::collections::BTreeMap;

use crate::exec;
use crate::report::VerificationReport;
use crate::{Error, Result};

/// A finite group given by its multiplication table on indices `0..n`.
/// Construction validates associativity, the two-sided identity, and
/// two-sided inverses, so a value of this type is always a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(mul: Vec<Vec<usize>>, identity: usize) -> Result<FiniteGroup> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidStructure("empty group table".into()));
        }
        if identity >= n {
            return Err(Error::IndexOutOfRange {
                index: vec![identity],
                bound: vec![n],
            });
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidStructure(format!(
                    "group table row {i} has length {} (expected {n})",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::IndexOutOfRange {
                        index: vec![i, j, v],
                        bound: vec![n],
                    });
                }
            }
        }
        for a in 0..n {
            if mul[identity][a] != a || mul[a][identity] != a {
                return Err(Error::InvalidStructure(format!(
                    "{identity} is not a two-sided identity at {a}"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidStructure(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == identity && mul[b][a] == identity) {
                Some(b) => inv[a] = b,
                None => {
                    return Err(Error::InvalidStructure(format!("{a} has no inverse")));
                }
            }
        }
        Ok(FiniteGroup {
            n,
            mul,
            identity,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &Vec<Vec<usize>> {
        &self.mul
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul[x][a];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// Direct product with elements indexed by `a * other.n + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let n = self.n * other.n;
        let mut mul = vec![vec![0; n]; n];
        for a1 in 0..self.n {
            for b1 in 0..other.n {
                for a2 in 0..self.n {
                    for b2 in 0..other.n {
                        mul[a1 * other.n + b1][a2 * other.n + b2] =
                            self.mul[a1][a2] * other.n + other.mul[b1][b2];
                    }
                }
            }
        }
        FiniteGroup::new(mul, self.identity * other.n + other.identity)
            .expect("product of groups is a group")
    }
}

/// A finite heap candidate: a ternary table on indices `0..n`. The heap
/// axioms are checked by [`verify_heap`], not at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHeap {
    n: usize,
    t: Vec<Vec<Vec<usize>>>,
}

impl FiniteHeap {
    pub fn new(t: Vec<Vec<Vec<usize>>>) -> Result<FiniteHeap> {
        let n = t.len();
        if n == 0 {
            return Err(Error::InvalidStructure("empty heap table".into()));
        }
        if t.iter().any(|p| p.len() != n || p.iter().any(|r| r.len() != n)) {
            return Err(Error::InvalidStructure(
                "heap table is not n x n x n".into(),
            ));
        }
        Ok(FiniteHeap { n, t })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn t(&self, a: usize, b: usize, c: usize) -> usize {
        self.t[a][b][c]
    }

    pub fn table(&self) -> &Vec<Vec<Vec<usize>>> {
        &self.t
    }
}

/// Checks the group axioms on a raw table and reports them line by line,
/// for callers that want a report rather than a construction error.
/// Out-of-range entries are an input error.
pub fn verify_group_table(mul: &[Vec<usize>], identity: usize) -> Result<VerificationReport> {
    let n = mul.len();
    if n == 0 || identity >= n {
        return Err(Error::IndexOutOfRange {
            index: vec![identity],
            bound: vec![n],
        });
    }
    for (i, row) in mul.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidStructure(format!(
                "group table row {i} has length {} (expected {n})",
                row.len()
            )));
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::IndexOutOfRange {
                    index: vec![i, j, v],
                    bound: vec![n],
                });
            }
        }
    }
    let mut report = VerificationReport::new(format!("group(n={n})"));
    let unit = exec::find_first_chunked(n, |a| mul[identity][a] != a || mul[a][identity] != a);
    report.record("two-sided identity", unit.map(|a| vec![a]));
    let assoc = exec::find_first_chunked(n * n * n, |f| {
        let c = f % n;
        let b = f / n % n;
        let a = f / (n * n);
        mul[mul[a][b]][c] != mul[a][mul[b][c]]
    });
    report.record(
        "associativity",
        assoc.map(|f| vec![f / (n * n), f / n % n, f % n]),
    );
    let inv = exec::find_first_chunked(n, |a| {
        !(0..n).any(|b| mul[a][b] == identity && mul[b][a] == identity)
    });
    report.record("two-sided inverses", inv.map(|a| vec![a]));
    Ok(report)
}

/// The canonical heap of a group: `t(a,b,c) = a b^{-1} c`.
pub fn heap_from_group(g: &FiniteGroup) -> FiniteHeap {
    let n = g.order();
    let t = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..n).map(|c| g.mul(g.mul(a, g.inv(b)), c)).collect())
                .collect()
        })
        .collect();
    FiniteHeap { n, t }
}

fn range_check(h: &FiniteHeap) -> Result<()> {
    let n = h.n;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if h.t[a][b][c] >= n {
                    return Err(Error::IndexOutOfRange {
                        index: vec![a, b, c, h.t[a][b][c]],
                        bound: vec![n],
                    });
                }
            }
        }
    }
    Ok(())
}

/// Checks the heap axioms: both idempotence laws on every pair and
/// para-associativity on every quintuple. Out-of-range table entries are an
/// input error, never an axiom failure.
pub fn verify_heap(h: &FiniteHeap) -> Result<VerificationReport> {
    range_check(h)?;
    let n = h.n;
    let mut report = VerificationReport::new(format!("heap(n={n})"));

    let left = exec::find_first_chunked(n * n, |f| {
        let (b, c) = (f / n, f % n);
        h.t[b][b][c] != c
    });
    report.record(
        "idempotence t(b,b,c) = c",
        left.map(|f| vec![f / n, f / n, f % n]),
    );
    let right = exec::find_first_chunked(n * n, |f| {
        let (b, c) = (f / n, f % n);
        h.t[c][b][b] != c
    });
    report.record(
        "idempotence t(c,b,b) = c",
        right.map(|f| vec![f % n, f / n, f / n]),
    );

    let total = n * n * n * n * n;
    let para = exec::find_first_chunked(total, |f| {
        let e = f % n;
        let d = f / n % n;
        let c = f / (n * n) % n;
        let b = f / (n * n * n) % n;
        let a = f / (n * n * n * n);
        h.t[a][b][h.t[c][d][e]] != h.t[h.t[a][b][c]][d][e]
    });
    report.record(
        "para-associativity t(a,b,t(c,d,e)) = t(t(a,b,c),d,e)",
        para.map(|f| {
            vec![
                f / (n * n * n * n),
                f / (n * n * n) % n,
                f / (n * n) % n,
                f / n % n,
                f % n,
            ]
        }),
    );
    Ok(report)
}

/// The automorphism group of a heap: the translation maps `x -> t(x, a, b)`,
/// deduplicated, with the composition `f . g = "apply f, then g"` induced by
/// `t(t(x,c,d),a,b) = t(x, c, t(d,a,b))`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub group: FiniteGroup,
    /// One `(a, b)` witness pair per distinct translation map, aligned with
    /// `maps` and with the group's element indices.
    pub witnesses: Vec<(usize, usize)>,
    /// The distinct translation maps as permutation tables.
    pub maps: Vec<Vec<usize>>,
}

pub fn aut_group(h: &FiniteHeap) -> Result<AutGroup> {
    let report = verify_heap(h)?;
    if !report.pass() {
        return Err(Error::InvalidStructure(format!(
            "not a heap: {} fails",
            report.failures().join(", ")
        )));
    }
    let n = h.n;
    let mut index_of_map: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut maps = Vec::new();
    let mut witnesses = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let map: Vec<usize> = (0..n).map(|x| h.t[x][a][b]).collect();
            if !index_of_map.contains_key(&map) {
                index_of_map.insert(map.clone(), maps.len());
                maps.push(map);
                witnesses.push((a, b));
            }
        }
    }
    if maps.len() != n {
        return Err(Error::InvalidStructure(format!(
            "expected {n} translation maps, found {}",
            maps.len()
        )));
    }
    let mut mul = vec![vec![0; maps.len()]; maps.len()];
    for (i, f) in maps.iter().enumerate() {
        for (j, g) in maps.iter().enumerate() {
            // Apply f first, then g.
            let composite: Vec<usize> = (0..n).map(|x| g[f[x]]).collect();
            mul[i][j] = *index_of_map.get(&composite).ok_or_else(|| {
                Error::InvalidStructure("translation maps not closed under composition".into())
            })?;
        }
    }
    let id: Vec<usize> = (0..n).collect();
    let identity = *index_of_map
        .get(&id)
        .ok_or_else(|| Error::InvalidStructure("identity map is not a translation".into()))?;
    let group = FiniteGroup::new(mul, identity)?;
    Ok(AutGroup {
        group,
        witnesses,
        maps,
    })
}

/// Checks that for every quadruple `(a, b, a', b')` the three conditions
/// (i) `t(.,a,b) = t(.,a',b')` as maps, (ii) `t(a,a',b') = b`,
/// (iii) `t(b,b',a') = a` agree.
pub fn check_translation_equivalences(h: &FiniteHeap) -> Result<VerificationReport> {
    let base = verify_heap(h)?;
    if !base.pass() {
        return Err(Error::InvalidStructure("not a heap".into()));
    }
    let n = h.n;
    let maps: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..n).map(|x| h.t[x][a][b]).collect())
                .collect()
        })
        .collect();
    let mut report = VerificationReport::new(format!("translation-equivalences(n={n})"));
    let bad = exec::find_first_chunked(n * n * n * n, |f| {
        let b2 = f % n;
        let a2 = f / n % n;
        let b = f / (n * n) % n;
        let a = f / (n * n * n);
        let same_map = maps[a][b] == maps[a2][b2];
        let cond2 = h.t[a][a2][b2] == b;
        let cond3 = h.t[b][b2][a2] == a;
        !(same_map == cond2 && cond2 == cond3)
    });
    report.record(
        "equivalence of (i) map equality, (ii) t(a,a',b') = b, (iii) t(b,b',a') = a",
        bad.map(|f| vec![f / (n * n * n), f / (n * n) % n, f / n % n, f % n]),
    );
    Ok(report)
}

/// Checks that the translation action is free and transitive: for every
/// ordered pair `(a, b)` exactly one translation map sends `a` to `b`.
pub fn check_free_transitive(h: &FiniteHeap) -> Result<VerificationReport> {
    let aut = aut_group(h)?;
    let n = h.n;
    let mut report = VerificationReport::new(format!("free-transitive(n={n})"));
    let transitive = exec::find_first_chunked(n * n, |f| {
        let (a, b) = (f / n, f % n);
        !aut.maps.iter().any(|m| m[a] == b)
    });
    report.record(
        "transitivity: some map sends a to b",
        transitive.map(|f| vec![f / n, f % n]),
    );
    let free = exec::find_first_chunked(n * n, |f| {
        let (a, b) = (f / n, f % n);
        aut.maps.iter().filter(|m| m[a] == b).count() > 1
    });
    report.record(
        "freeness: at most one map sends a to b",
        free.map(|f| vec![f / n, f % n]),
    );
    Ok(report)
}

/// The group of a pointed heap: `a * b = t(a, base, b)`, identity `base`,
/// inverse `t(base, a, base)`.
pub fn group_from_pointed_heap(h: &FiniteHeap, basepoint: usize) -> Result<FiniteGroup> {
    if basepoint >= h.n {
        return Err(Error::IndexOutOfRange {
            index: vec![basepoint],
            bound: vec![h.n],
        });
    }
    let n = h.n;
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| h.t[a][basepoint][b]).collect())
        .collect();
    FiniteGroup::new(mul, basepoint)
}

/// All labeled group tables on `0..n` (every choice of identity), found by
/// Latin-square backtracking plus an associativity filter. Feasible for the
/// small `n` used by the heap census.
pub fn enumerate_group_tables(n: usize) -> Result<Vec<FiniteGroup>> {
    if n == 0 || n > 4 {
        return Err(Error::SizeLimit(format!(
            "group-table enumeration supports 1 <= n <= 4, got {n}"
        )));
    }
    let mut out = Vec::new();
    for identity in 0..n {
        let mut table = vec![vec![usize::MAX; n]; n];
        for x in 0..n {
            table[identity][x] = x;
            table[x][identity] = x;
        }
        fill_group_table(&mut table, n, identity, &mut out);
    }
    Ok(out)
}

fn fill_group_table(
    table: &mut Vec<Vec<usize>>,
    n: usize,
    identity: usize,
    out: &mut Vec<FiniteGroup>,
) {
    // Next unfilled cell in row-major order.
    let mut cell = None;
    'search: for r in 0..n {
        for c in 0..n {
            if table[r][c] == usize::MAX {
                cell = Some((r, c));
                break 'search;
            }
        }
    }
    let Some((r, c)) = cell else {
        if let Ok(g) = FiniteGroup::new(table.clone(), identity) {
            out.push(g);
        }
        return;
    };
    'candidates: for v in 0..n {
        for x in 0..n {
            if table[r][x] == v || table[x][c] == v {
                continue 'candidates;
            }
        }
        table[r][c] = v;
        fill_group_table(table, n, identity, out);
        table[r][c] = usize::MAX;
    }
}

/// Exhaustive scan of all `n^(n^3)` ternary tables, filtered by the heap
/// axioms. Only feasible for `n <= 2`; serves as the census oracle.
pub fn enumerate_heaps_exhaustive(n: usize) -> Result<Vec<FiniteHeap>> {
    if n == 0 || n > 2 {
        return Err(Error::SizeLimit(format!(
            "exhaustive heap scan supports 1 <= n <= 2, got {n}"
        )));
    }
    let cells = n * n * n;
    let total = n.pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut rem = code;
        let mut t = vec![vec![vec![0; n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    t[a][b][c] = rem % n;
                    rem /= n;
                }
            }
        }
        let heap = FiniteHeap { n, t };
        if verify_heap(&heap)?.pass() {
            out.push(heap);
        }
    }
    Ok(out)
}

/// Census of all heaps on `0..n`, `n <= 4`. For `n <= 2` the exhaustive scan
/// and the group-generated construction are both run and must agree; for
/// `n` in `{3, 4}` only the group-generated route is feasible.
pub fn enumerate_heaps(n: usize) -> Result<Vec<FiniteHeap>> {
    if n == 0 || n > 4 {
        return Err(Error::SizeLimit(format!(
            "heap enumeration supports 1 <= n <= 4, got {n}"
        )));
    }
    let mut generated: Vec<FiniteHeap> = Vec::new();
    for g in enumerate_group_tables(n)? {
        let h = heap_from_group(&g);
        if !generated.contains(&h) {
            generated.push(h);
        }
    }
    generated.sort_by(|a, b| a.t.cmp(&b.t));
    if n <= 2 {
        let scanned = enumerate_heaps_exhaustive(n)?;
        if scanned != generated {
            return Err(Error::InvalidStructure(
                "heap census strategies disagree".into(),
            ));
        }
    }
    Ok(generated)
}

/// Brute-force group isomorphism with order-profile pruning. Returns a
/// witness permutation `perm` with `perm[x]` the image of `x` when the groups
/// are isomorphic. Sound and complete for orders up to 8 (larger orders are
/// rejected as a cost bound).
pub fn groups_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Result<Option<Vec<usize>>> {
    if a.order() > 8 || b.order() > 8 {
        return Err(Error::SizeLimit(
            "isomorphism search supports order <= 8".into(),
        ));
    }
    if a.order() != b.order() {
        return Ok(None);
    }
    let n = a.order();
    let orders_a: Vec<usize> = (0..n).map(|x| a.element_order(x)).collect();
    let orders_b: Vec<usize> = (0..n).map(|x| b.element_order(x)).collect();
    let mut profile_a = orders_a.clone();
    let mut profile_b = orders_b.clone();
    profile_a.sort_unstable();
    profile_b.sort_unstable();
    if profile_a != profile_b {
        return Ok(None);
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    perm[a.identity()] = b.identity();
    used[b.identity()] = true;
    let order: Vec<usize> = (0..n).filter(|&x| x != a.identity()).collect();
    if assign(a, b, &orders_a, &orders_b, &order, 0, &mut perm, &mut used) {
        Ok(Some(perm))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    a: &FiniteGroup,
    b: &FiniteGroup,
    orders_a: &[usize],
    orders_b: &[usize],
    todo: &[usize],
    k: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if k == todo.len() {
        return is_homomorphism(a, b, perm);
    }
    let x = todo[k];
    for y in 0..b.order() {
        if used[y] || orders_a[x] != orders_b[y] {
            continue;
        }
        perm[x] = y;
        used[y] = true;
        if partial_consistent(a, b, perm) && assign(a, b, orders_a, orders_b, todo, k + 1, perm, used)
        {
            return true;
        }
        perm[x] = usize::MAX;
        used[y] = false;
    }
    false
}

fn partial_consistent(a: &FiniteGroup, b: &FiniteGroup, perm: &[usize]) -> bool {
    let n = a.order();
    for x in 0..n {
        if perm[x] == usize::MAX {
            continue;
        }
        for y in 0..n {
            if perm[y] == usize::MAX {
                continue;
            }
            let img = perm[a.mul(x, y)];
            if img != usize::MAX && img != b.mul(perm[x], perm[y]) {
                return false;
            }
        }
    }
    true
}

fn is_homomorphism(a: &FiniteGroup, b: &FiniteGroup, perm: &[usize]) -> bool {
    let n = a.order();
    (0..n).all(|x| (0..n).all(|y| perm[a.mul(x, y)] == b.mul(perm[x], perm[y])))
}
