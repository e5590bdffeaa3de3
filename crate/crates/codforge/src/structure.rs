//! Structural analysis: the equivalence group, scrambling, splitting a
//! design into atomic parts, classifying and canonicalizing atoms with
//! replayable transcripts, equivalence testing by signature, and
//! catenation of designs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cod::{CodMatrix, Entry};
use crate::generators::{gen_gw, gen_hm};
use crate::params::{binomial, AtomClass, ParamSolution};
use crate::uf::ParityUf;
use crate::{CodError, Result};

/// One generator of the equivalence group. Permutation contents are
/// 1-based: the result's row i is the input's row `perm[i-1]` (columns
/// analogously).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EquivOp {
    RowPerm(Vec<usize>),
    ColPerm(Vec<usize>),
    /// Toggle conjugation on every instance of one variable.
    ConjVar(u32),
    /// Negate every instance of one variable.
    NegVar(u32),
    NegRow(usize),
    NegCol(usize),
    /// Swap two variable ids (display names follow the ids).
    RenameVar(u32, u32),
}

impl fmt::Display for EquivOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        };
        match self {
            EquivOp::RowPerm(v) => write!(f, "RowPerm({})", join(v)),
            EquivOp::ColPerm(v) => write!(f, "ColPerm({})", join(v)),
            EquivOp::ConjVar(j) => write!(f, "ConjVar({j})"),
            EquivOp::NegVar(j) => write!(f, "NegVar({j})"),
            EquivOp::NegRow(r) => write!(f, "NegRow({r})"),
            EquivOp::NegCol(c) => write!(f, "NegCol({c})"),
            EquivOp::RenameVar(a, b) => write!(f, "RenameVar({a},{b})"),
        }
    }
}

fn validate_perm(perm: &[usize], len: usize, what: &str) -> Result<()> {
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=len).collect::<Vec<_>>() {
        return Err(CodError::InvalidArgument(format!(
            "{what} permutation {perm:?} is not a permutation of 1..={len}"
        )));
    }
    Ok(())
}

fn validate_var(j: u32, k: u32) -> Result<()> {
    if j < 1 || j > k {
        return Err(CodError::InvalidArgument(format!("variable {j} outside 1..={k}")));
    }
    Ok(())
}

/// Apply one equivalence operation, leaving the input untouched. Names
/// survive every operation; `RenameVar` swaps the two name entries.
pub fn apply_equiv(m: &CodMatrix, op: &EquivOp) -> Result<CodMatrix> {
    let (p, n, k) = (m.p(), m.n(), m.k());
    let mut out = m.clone();
    match op {
        EquivOp::RowPerm(perm) => {
            validate_perm(perm, p, "row")?;
            let cells = out.cells_mut();
            for (i, &src) in perm.iter().enumerate() {
                for c in 0..n {
                    cells[i * n + c] = m.cell(src, c + 1);
                }
            }
        }
        EquivOp::ColPerm(perm) => {
            validate_perm(perm, n, "column")?;
            let cells = out.cells_mut();
            for r in 0..p {
                for (j, &src) in perm.iter().enumerate() {
                    cells[r * n + j] = m.cell(r + 1, src);
                }
            }
        }
        EquivOp::ConjVar(j) => {
            validate_var(*j, k)?;
            for cell in out.cells_mut() {
                if let Entry::Var { id, conj, .. } = cell {
                    if id == j {
                        *conj = !*conj;
                    }
                }
            }
        }
        EquivOp::NegVar(j) => {
            validate_var(*j, k)?;
            for cell in out.cells_mut() {
                if let Entry::Var { id, sign, .. } = cell {
                    if id == j {
                        *sign = sign.negate();
                    }
                }
            }
        }
        EquivOp::NegRow(r) => {
            if *r < 1 || *r > p {
                return Err(CodError::InvalidArgument(format!("row {r} outside 1..={p}")));
            }
            let cells = out.cells_mut();
            for c in 0..n {
                if let Entry::Var { sign, .. } = &mut cells[(r - 1) * n + c] {
                    *sign = sign.negate();
                }
            }
        }
        EquivOp::NegCol(c) => {
            if *c < 1 || *c > n {
                return Err(CodError::InvalidArgument(format!("column {c} outside 1..={n}")));
            }
            let cells = out.cells_mut();
            for r in 0..p {
                if let Entry::Var { sign, .. } = &mut cells[r * n + (c - 1)] {
                    *sign = sign.negate();
                }
            }
        }
        EquivOp::RenameVar(a, b) => {
            validate_var(*a, k)?;
            validate_var(*b, k)?;
            if a != b {
                for cell in out.cells_mut() {
                    if let Entry::Var { id, .. } = cell {
                        if id == a {
                            *id = *b;
                        } else if id == b {
                            *id = *a;
                        }
                    }
                }
                if let Some(names) = out.names_mut().as_mut() {
                    let na = names.remove(a).expect("contiguous names");
                    let nb = names.remove(b).expect("contiguous names");
                    names.insert(*a, nb);
                    names.insert(*b, na);
                }
            }
        }
    }
    Ok(out)
}

/// Apply a sequence of operations left to right.
pub fn apply_all(m: &CodMatrix, ops: &[EquivOp]) -> Result<CodMatrix> {
    let mut cur = m.clone();
    for op in ops {
        cur = apply_equiv(&cur, op)?;
    }
    Ok(cur)
}

/// Apply `count` pseudorandom equivalence operations drawn from a
/// seeded generator. Returns the scrambled design together with the
/// exact operations applied (so the walk can be replayed or inverted).
pub fn scramble(m: &CodMatrix, seed: u64, count: usize) -> (CodMatrix, Vec<EquivOp>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = m.clone();
    let mut ops = Vec::with_capacity(count);
    for _ in 0..count {
        let op = random_op(&mut rng, m.p(), m.n(), m.k());
        cur = apply_equiv(&cur, &op).expect("sampled operations are valid");
        ops.push(op);
    }
    (cur, ops)
}

fn random_op(rng: &mut ChaCha8Rng, p: usize, n: usize, k: u32) -> EquivOp {
    loop {
        match rng.gen_range(0..7u8) {
            0 => {
                let mut v: Vec<usize> = (1..=p).collect();
                v.shuffle(rng);
                return EquivOp::RowPerm(v);
            }
            1 => {
                let mut v: Vec<usize> = (1..=n).collect();
                v.shuffle(rng);
                return EquivOp::ColPerm(v);
            }
            2 => return EquivOp::NegRow(rng.gen_range(1..=p)),
            3 => return EquivOp::NegCol(rng.gen_range(1..=n)),
            4 if k >= 1 => return EquivOp::NegVar(rng.gen_range(1..=k)),
            5 if k >= 1 => return EquivOp::ConjVar(rng.gen_range(1..=k)),
            6 if k >= 2 => {
                let a = rng.gen_range(1..=k);
                let mut b = rng.gen_range(1..=k);
                while b == a {
                    b = rng.gen_range(1..=k);
                }
                return EquivOp::RenameVar(a, b);
            }
            _ => {}
        }
    }
}

/// One row-connected component of a design, extracted as a standalone
/// design over the full column set.
#[derive(Clone, Debug)]
pub struct AtomicPart {
    /// Original 1-based row indices, ascending.
    pub rows: Vec<usize>,
    /// Original variable ids, ascending.
    pub vars: Vec<u32>,
    /// The part as its own design. Variables are renumbered 1..k by
    /// ascending name when the parent carries names, otherwise by first
    /// occurrence in row-major order.
    pub matrix: CodMatrix,
    /// Parameter classification of the part.
    pub class: AtomClass,
}

/// Split a design into its atomic parts: the row-connectivity
/// components under "shares a variable", ordered by smallest original
/// row index.
pub fn decompose_atomic(m: &CodMatrix) -> Result<Vec<AtomicPart>> {
    if !m.is_cod_fast() {
        return Err(CodError::NotACod("decomposition requires an orthogonal design".into()));
    }
    let (p, n) = (m.p(), m.n());
    let mut uf = ParityUf::new(p);
    for j in 1..=m.k() {
        let occ = m.occurrences(j);
        for pair in occ.windows(2) {
            uf.union(pair[0].0 - 1, pair[1].0 - 1, 0);
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in 0..p {
        let (root, _) = uf.find(r);
        comps.entry(root).or_default().push(r);
    }
    let mut groups: Vec<Vec<usize>> = comps.into_values().collect();
    groups.sort_by_key(|rows| rows[0]);

    let mut parts = Vec::with_capacity(groups.len());
    for group in groups {
        let mut vars: BTreeSet<u32> = BTreeSet::new();
        for &r in &group {
            for cell in m.row(r + 1) {
                if let Entry::Var { id, .. } = cell {
                    vars.insert(*id);
                }
            }
        }
        // Renumbering order for the standalone part.
        let order: Vec<u32> = if let Some(names) = m.names() {
            let mut by_name: Vec<u32> = vars.iter().copied().collect();
            by_name.sort_by_key(|id| names[id]);
            by_name
        } else {
            let mut seen = Vec::new();
            for &r in &group {
                for cell in m.row(r + 1) {
                    if let Entry::Var { id, .. } = cell {
                        if !seen.contains(id) {
                            seen.push(*id);
                        }
                    }
                }
            }
            seen
        };
        let new_id: BTreeMap<u32, u32> =
            order.iter().enumerate().map(|(i, &id)| (id, i as u32 + 1)).collect();
        let rows: Vec<Vec<Entry>> = group
            .iter()
            .map(|&r| {
                (0..n)
                    .map(|c| match m.cell(r + 1, c + 1) {
                        Entry::Zero => Entry::Zero,
                        Entry::Var { id, sign, conj } => {
                            Entry::Var { id: new_id[&id], sign, conj }
                        }
                    })
                    .collect()
            })
            .collect();
        let matrix = match m.names() {
            Some(names) => {
                let part_names: BTreeMap<u32, crate::f2vec::F2Vec> =
                    order.iter().enumerate().map(|(i, id)| (i as u32 + 1, names[id])).collect();
                CodMatrix::from_rows_with_names(rows, part_names)?
            }
            None => CodMatrix::from_rows(rows)?,
        };
        let class = classify_atomic(&matrix);
        parts.push(AtomicPart {
            rows: group.iter().map(|&r| r + 1).collect(),
            vars: vars.into_iter().collect(),
            matrix,
            class,
        });
    }
    Ok(parts)
}

/// Classify an atomic design by its parameters and row weights. The
/// weight index is normalized to w ≤ n/2 (mirror classes are
/// equivalent). Returns `Unknown` when no atomic class matches.
pub fn classify_atomic(m: &CodMatrix) -> AtomClass {
    let (p, n, k) = (m.p() as u128, m.n(), m.k() as u128);
    if k == 0 {
        return if p == 1 { AtomClass::Gw(-1) } else { AtomClass::Unknown };
    }
    let weights: Vec<usize> = (1..=m.p()).map(|r| m.zero_pattern(r).weight()).collect();
    if weights.contains(&0) {
        return AtomClass::Unknown; // zero rows are atoms of their own
    }
    let u = weights[0];
    let w = std::cmp::min(u as i64 - 1, n as i64 + 1 - u as i64);
    let wa = (w + 1) as usize;
    let wb = (n as i64 + 1 - w) as usize;
    if !weights.iter().all(|&x| x == wa || x == wb) {
        return AtomClass::Unknown;
    }
    let nb = n as u64;
    if n as i64 != 2 * w {
        if p == binomial(nb, w - 1) + binomial(nb, w + 1) && k == binomial(nb, w) {
            AtomClass::Gw(w)
        } else {
            AtomClass::Unknown
        }
    } else {
        let half_p = binomial(nb, w - 1);
        let half_k = binomial(nb - 1, w - 1);
        if n % 4 == 0 && p == half_p && k == half_k {
            AtomClass::Hm
        } else if p == 2 * half_p && k == 2 * half_k {
            AtomClass::Gw(w)
        } else {
            AtomClass::Unknown
        }
    }
}

/// Cell-for-cell equality of two matrices (dimensions, every entry's
/// id, sign, and conjugation flag), ignoring display names.
pub fn cells_equal(a: &CodMatrix, b: &CodMatrix) -> bool {
    a.p() == b.p()
        && a.n() == b.n()
        && a.k() == b.k()
        && (1..=a.p()).all(|r| a.row(r) == b.row(r))
}

/// Reduce an atomic design to its class generator, returning the
/// generator together with a transcript of operations that transforms
/// the input into it (replay-verified before returning). Transcripts
/// may open with a single `ColPerm` when the class sits at n = 2w —
/// column alignment is genuinely necessary there — and never contain
/// `NegCol`.
pub fn canonicalize_atomic(m: &CodMatrix) -> Result<(CodMatrix, Vec<EquivOp>)> {
    if !m.is_cod_fast() {
        return Err(CodError::NotACod("canonicalization requires an orthogonal design".into()));
    }
    let class = classify_atomic(m);
    let (target, needs_alignment) = match class {
        AtomClass::Gw(w) => (gen_gw(m.n(), w)?, m.n() as i64 == 2 * w),
        AtomClass::Hm => (gen_hm(m.n())?, true),
        AtomClass::Unknown => {
            return Err(CodError::Unclassifiable { p: m.p(), n: m.n(), k: m.k() as usize });
        }
    };
    let parts = decompose_atomic(m)?;
    if parts.len() != 1 {
        return Err(CodError::InvalidArgument(format!(
            "input is not atomic: it splits into {} independent parts",
            parts.len()
        )));
    }

    let n = m.n();
    let identity: Vec<usize> = (1..=n).collect();
    let mut tried: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut first_phase = vec![identity.clone()];
    if needs_alignment {
        // Moving one column to the end, preserving the others' order,
        // covers the structurally special final column landing anywhere.
        for c in 1..n {
            let mut v: Vec<usize> = (1..=n).filter(|&x| x != c).collect();
            v.push(c);
            first_phase.push(v);
        }
    }
    for sigma in first_phase {
        if tried.insert(sigma.clone()) {
            if let Some(found) = try_alignment(m, &target, &sigma, &identity)? {
                return Ok(found);
            }
        }
    }
    if needs_alignment {
        if n > 8 {
            return Err(CodError::ResourceLimit(format!(
                "column alignment search is supported only up to n = 8 (got n = {n})"
            )));
        }
        for sigma in all_perms(n) {
            if tried.insert(sigma.clone()) {
                if let Some(found) = try_alignment(m, &target, &sigma, &identity)? {
                    return Ok(found);
                }
            }
        }
    }
    Err(CodError::NotEquivalent(format!(
        "parameters match class {class} but no equivalence transform reaches its generator"
    )))
}

fn try_alignment(
    m: &CodMatrix,
    target: &CodMatrix,
    sigma: &[usize],
    identity: &[usize],
) -> Result<Option<(CodMatrix, Vec<EquivOp>)>> {
    let aligned = if sigma == identity {
        m.clone()
    } else {
        apply_equiv(m, &EquivOp::ColPerm(sigma.to_vec()))?
    };
    let Some(ops) = bind_to_target(&aligned, target) else {
        return Ok(None);
    };
    let mut transcript = Vec::with_capacity(ops.len() + 1);
    if sigma != identity {
        transcript.push(EquivOp::ColPerm(sigma.to_vec()));
    }
    transcript.extend(ops);
    let replay = apply_all(m, &transcript)?;
    assert!(cells_equal(&replay, target), "transcript replay must reproduce the generator");
    Ok(Some((target.clone(), transcript)))
}

/// All permutations of 1..=n in lexicographic order.
fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 1..=n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    out
}

#[derive(Clone)]
struct BindState {
    /// target row (0-based) -> input row (0-based)
    rho: Vec<usize>,
    used: Vec<bool>,
    /// input id -> target id (0 = unbound), and the inverse
    var_map: Vec<u32>,
    var_inv: Vec<u32>,
    /// input id -> 0/1 conjugation toggle, 2 = unset
    conj_flip: Vec<u8>,
    /// parity nodes: k variables then p input rows;
    /// negv(v) ⊕ negr(r) = (input sign differs from target sign)
    uf: ParityUf,
}

/// Search for row/variable/sign/conjugation operations carrying `input`
/// onto `target` cell for cell (no column moves). Returns the operation
/// sequence, or None when the designs are not reachable from each other
/// this way.
fn bind_to_target(input: &CodMatrix, target: &CodMatrix) -> Option<Vec<EquivOp>> {
    let (p, n, k) = (input.p(), input.n(), input.k() as usize);
    if target.p() != p || target.n() != n || target.k() as usize != k {
        return None;
    }
    // Column-exactness index: in which row does variable v sit in
    // column c of the input?
    let mut occ: Vec<BTreeMap<u32, usize>> = vec![BTreeMap::new(); n];
    for r in 0..p {
        for c in 0..n {
            if let Entry::Var { id, .. } = input.cell(r + 1, c + 1) {
                if occ[c].insert(id, r).is_some() {
                    return None;
                }
            }
        }
    }
    let init = BindState {
        rho: vec![usize::MAX; p],
        used: vec![false; p],
        var_map: vec![0; k],
        var_inv: vec![0; k],
        conj_flip: vec![2; k],
        uf: ParityUf::new(k + p),
    };
    let done = solve(input, target, &occ, 0, init)?;
    Some(emit_ops(&done, p, k))
}

fn solve(
    input: &CodMatrix,
    target: &CodMatrix,
    occ: &[BTreeMap<u32, usize>],
    t: usize,
    st: BindState,
) -> Option<BindState> {
    let (p, n) = (target.p(), target.n());
    if t == p {
        return Some(st);
    }
    // A target row containing an already-bound variable has a forced
    // source: that variable's unique occurrence in the same column.
    let mut anchor = None;
    for c in 0..n {
        if let Entry::Var { id: vt, .. } = target.cell(t + 1, c + 1) {
            let vi = st.var_inv[vt as usize - 1];
            if vi != 0 {
                anchor = Some(*occ[c].get(&vi)?);
                break;
            }
        }
    }
    let candidates: Vec<usize> = match anchor {
        Some(r) => vec![r],
        None => (0..p)
            .filter(|&r| !st.used[r] && input.zero_pattern(r + 1) == target.zero_pattern(t + 1))
            .collect(),
    };
    for r in candidates {
        if st.used[r] {
            continue;
        }
        let mut next = st.clone();
        if bind_row(input, target, t, r, &mut next) {
            next.used[r] = true;
            next.rho[t] = r;
            if let Some(done) = solve(input, target, occ, t + 1, next) {
                return Some(done);
            }
        }
    }
    None
}

fn bind_row(input: &CodMatrix, target: &CodMatrix, t: usize, r: usize, st: &mut BindState) -> bool {
    let n = target.n();
    let k = st.var_map.len();
    for c in 0..n {
        match (input.cell(r + 1, c + 1), target.cell(t + 1, c + 1)) {
            (Entry::Zero, Entry::Zero) => {}
            (
                Entry::Var { id: vi, sign: si, conj: ci },
                Entry::Var { id: vt, sign: stg, conj: ct },
            ) => {
                let (a, b) = (vi as usize - 1, vt as usize - 1);
                if st.var_map[a] == 0 && st.var_inv[b] == 0 {
                    st.var_map[a] = vt;
                    st.var_inv[b] = vi;
                } else if st.var_map[a] != vt || st.var_inv[b] != vi {
                    return false;
                }
                let flip = (ci != ct) as u8;
                if st.conj_flip[a] == 2 {
                    st.conj_flip[a] = flip;
                } else if st.conj_flip[a] != flip {
                    return false;
                }
                if !st.uf.union(a, k + r, (si != stg) as u8) {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// Emit the bound solution as operations: conjugation toggles, variable
/// negations, row negations (all on input labels), the row permutation,
/// then the id swaps realizing the variable bijection.
fn emit_ops(st: &BindState, p: usize, k: usize) -> Vec<EquivOp> {
    let mut ops = Vec::new();
    for v in 0..k {
        if st.conj_flip[v] == 1 {
            ops.push(EquivOp::ConjVar(v as u32 + 1));
        }
    }
    let mut uf = st.uf.clone();
    for v in 0..k {
        if uf.find(v).1 == 1 {
            ops.push(EquivOp::NegVar(v as u32 + 1));
        }
    }
    for r in 0..p {
        if uf.find(k + r).1 == 1 {
            ops.push(EquivOp::NegRow(r + 1));
        }
    }
    let perm: Vec<usize> = st.rho.iter().map(|&r| r + 1).collect();
    if perm.iter().enumerate().any(|(i, &x)| x != i + 1) {
        ops.push(EquivOp::RowPerm(perm));
    }
    ops.extend(rename_swaps(&st.var_map));
    ops
}

/// Realize the id bijection `var_map` (input id v+1 must end up labeled
/// var_map[v]) as a sequence of pairwise swaps, cycle by cycle.
fn rename_swaps(var_map: &[u32]) -> Vec<EquivOp> {
    let k = var_map.len();
    let mut seen = vec![false; k];
    let mut ops = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut cur = var_map[start] as usize - 1;
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            cur = var_map[cur] as usize - 1;
        }
        for &next in &cycle[1..] {
            ops.push(EquivOp::RenameVar(cycle[0] as u32 + 1, next as u32 + 1));
        }
    }
    ops
}

/// The complete equivalence invariant of a first-type design: how many
/// atoms of each class its decomposition contains. Two first-type
/// designs over the same n are equivalent iff their signatures match.
pub fn signature(m: &CodMatrix) -> Result<ParamSolution> {
    if !m.is_cod_fast() {
        return Err(CodError::NotACod("signatures require an orthogonal design".into()));
    }
    if !m.is_first_type()? {
        return Err(CodError::Unsupported(
            "signatures are defined only for first-type designs".into(),
        ));
    }
    let n = m.n();
    let mut sol = ParamSolution::empty(n)?;
    for part in decompose_atomic(m)? {
        match part.class {
            AtomClass::Gw(w) => {
                let step = if n % 4 == 0 && w == (n / 2) as i64 { 2 } else { 1 };
                sol.set_t(w, sol.t(w) + step);
            }
            AtomClass::Hm => sol.set_t_h(sol.t_h().expect("n ≡ 0 mod 4") + 1),
            AtomClass::Unknown => {
                return Err(CodError::Unclassifiable {
                    p: part.matrix.p(),
                    n,
                    k: part.matrix.k() as usize,
                });
            }
        }
    }
    Ok(sol)
}

/// Whether two first-type designs are equivalent (same column count and
/// equal signatures).
pub fn equivalent(a: &CodMatrix, b: &CodMatrix) -> Result<bool> {
    if a.n() != b.n() {
        return Err(CodError::InvalidArgument(format!(
            "designs with {} and {} columns are not comparable",
            a.n(),
            b.n()
        )));
    }
    Ok(signature(a)? == signature(b)?)
}

/// Stack designs with a uniform column count, renumbering variables by
/// part order. The result carries no names.
pub fn catenate(parts: &[CodMatrix]) -> Result<CodMatrix> {
    let Some(first) = parts.first() else {
        return Err(CodError::InvalidArgument("catenation of zero designs".into()));
    };
    let n = first.n();
    if parts.iter().any(|m| m.n() != n) {
        return Err(CodError::InvalidArgument(
            "catenation requires a uniform column count".into(),
        ));
    }
    let mut rows = Vec::new();
    let mut offset: u32 = 0;
    for part in parts {
        for r in 1..=part.p() {
            rows.push(
                part.row(r)
                    .iter()
                    .map(|&cell| match cell {
                        Entry::Zero => Entry::Zero,
                        Entry::Var { id, sign, conj } => {
                            Entry::Var { id: id + offset, sign, conj }
                        }
                    })
                    .collect(),
            );
        }
        offset += part.k();
    }
    CodMatrix::from_rows(rows)
}

/// Materialize a parameter solution as an actual catenation of
/// generator outputs (ascending weight index, H atoms last).
pub fn build_catenation(n: usize, sol: &ParamSolution) -> Result<CodMatrix> {
    if sol.n() != n {
        return Err(CodError::InvalidArgument(format!(
            "solution is for n = {}, not n = {n}",
            sol.n()
        )));
    }
    let mut parts = Vec::new();
    for i in -1..=(n / 2) as i64 {
        let mut count = sol.t(i) as usize;
        if n % 4 == 0 && i == (n / 2) as i64 {
            if count % 2 != 0 {
                return Err(CodError::InvalidArgument(
                    "an odd half-unit count at the top weight index is not realizable".into(),
                ));
            }
            count /= 2;
        }
        for _ in 0..count {
            parts.push(gen_gw(n, i)?);
        }
    }
    if let Some(th) = sol.t_h() {
        for _ in 0..th {
            parts.push(gen_hm(n)?);
        }
    }
    catenate(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_g;
    use crate::params::feasible;

    fn m(rows: &[&[&str]]) -> CodMatrix {
        CodMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|t| t.parse().unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn rate34() -> CodMatrix {
        m(&[
            &["z1", "z2", "z3"],
            &["-z2*", "z1*", "0"],
            &["-z3*", "0", "z1*"],
            &["0", "z3*", "-z2*"],
        ])
    }

    #[test]
    fn row_perm_places_source_rows() {
        let g = rate34();
        let out = apply_equiv(&g, &EquivOp::RowPerm(vec![3, 1, 2, 4])).unwrap();
        assert_eq!(out.row(1), g.row(3));
        assert_eq!(out.row(2), g.row(1));
        assert_eq!(out.row(3), g.row(2));
        assert_eq!(out.row(4), g.row(4));
    }

    #[test]
    fn col_perm_places_source_columns() {
        let g = rate34();
        let out = apply_equiv(&g, &EquivOp::ColPerm(vec![2, 3, 1])).unwrap();
        for r in 1..=4 {
            assert_eq!(out.cell(r, 1), g.cell(r, 2));
            assert_eq!(out.cell(r, 2), g.cell(r, 3));
            assert_eq!(out.cell(r, 3), g.cell(r, 1));
        }
    }

    #[test]
    fn instance_ops_touch_exactly_their_variable() {
        let g = rate34();
        let conj = apply_equiv(&g, &EquivOp::ConjVar(2)).unwrap();
        assert_eq!(conj.cell(1, 2), "z2*".parse().unwrap());
        assert_eq!(conj.cell(2, 1), "-z2".parse().unwrap());
        assert_eq!(conj.cell(1, 1), g.cell(1, 1));
        let neg = apply_equiv(&g, &EquivOp::NegVar(3)).unwrap();
        assert_eq!(neg.cell(1, 3), "-z3".parse().unwrap());
        assert_eq!(neg.cell(3, 1), "z3*".parse().unwrap());
        assert_eq!(neg.cell(4, 2), "-z3*".parse().unwrap());
    }

    #[test]
    fn row_and_col_negation() {
        let g = rate34();
        let nr = apply_equiv(&g, &EquivOp::NegRow(2)).unwrap();
        assert_eq!(nr.row(2), m(&[&["z2*", "-z1*", "0"]]).row(1));
        let nc = apply_equiv(&g, &EquivOp::NegCol(3)).unwrap();
        assert_eq!(nc.cell(1, 3), "-z3".parse().unwrap());
        assert_eq!(nc.cell(2, 3), "0".parse().unwrap());
        assert_eq!(nc.cell(3, 3), "-z1*".parse().unwrap());
        assert_eq!(nc.cell(4, 3), "z2*".parse().unwrap());
    }

    #[test]
    fn rename_swaps_ids_and_names() {
        let g = gen_gw(3, 1).unwrap();
        let out = apply_equiv(&g, &EquivOp::RenameVar(1, 3)).unwrap();
        let names = out.names().unwrap();
        let orig = g.names().unwrap();
        assert_eq!(names[&1], orig[&3]);
        assert_eq!(names[&3], orig[&1]);
        assert_eq!(names[&2], orig[&2]);
        let back = apply_equiv(&out, &EquivOp::RenameVar(1, 3)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn ops_validate_their_arguments() {
        let g = rate34();
        assert!(apply_equiv(&g, &EquivOp::RowPerm(vec![1, 2, 3])).is_err());
        assert!(apply_equiv(&g, &EquivOp::RowPerm(vec![1, 2, 3, 3])).is_err());
        assert!(apply_equiv(&g, &EquivOp::ColPerm(vec![1, 2])).is_err());
        assert!(apply_equiv(&g, &EquivOp::NegVar(4)).is_err());
        assert!(apply_equiv(&g, &EquivOp::ConjVar(0)).is_err());
        assert!(apply_equiv(&g, &EquivOp::NegRow(5)).is_err());
        assert!(apply_equiv(&g, &EquivOp::NegCol(0)).is_err());
        assert!(apply_equiv(&g, &EquivOp::RenameVar(1, 9)).is_err());
    }

    #[test]
    fn equivalence_ops_preserve_orthogonality() {
        let g = gen_gw(3, 1).unwrap();
        let (scrambled, ops) = scramble(&g, 7, 24);
        assert!(scrambled.is_cod());
        assert_eq!(ops.len(), 24);
        // The returned walk replays to the same matrix.
        assert_eq!(apply_all(&g, &ops).unwrap(), scrambled);
    }

    #[test]
    fn scramble_is_deterministic_per_seed() {
        let g = gen_hm(4).unwrap();
        let (a, ops_a) = scramble(&g, 42, 16);
        let (b, ops_b) = scramble(&g, 42, 16);
        assert_eq!(a, b);
        assert_eq!(ops_a, ops_b);
        let (c, _) = scramble(&g, 43, 16);
        assert_ne!(a, c); // astronomically unlikely to collide
    }

    #[test]
    fn rename_swap_sequences_realize_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for k in 1..=8usize {
            for _ in 0..20 {
                let mut perm: Vec<u32> = (1..=k as u32).collect();
                perm.shuffle(&mut rng);
                let ops = rename_swaps(&perm);
                // Apply the swaps to an explicit labeling.
                let mut label: Vec<u32> = (1..=k as u32).collect();
                for op in &ops {
                    let EquivOp::RenameVar(a, b) = op else { panic!() };
                    for l in label.iter_mut() {
                        if *l == *a {
                            *l = *b;
                        } else if *l == *b {
                            *l = *a;
                        }
                    }
                }
                assert_eq!(label, perm, "realized permutation mismatch");
            }
        }
    }

    #[test]
    fn two_column_slice_splits_into_two_parts() {
        let g = rate34();
        let slice = CodMatrix::from_rows(
            (1..=4).map(|r| vec![g.cell(r, 1), g.cell(r, 2)]).collect(),
        )
        .unwrap();
        assert!(slice.is_cod());
        let parts = decompose_atomic(&slice).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].rows, vec![1, 2]);
        assert_eq!(parts[0].vars, vec![1, 2]);
        assert_eq!(parts[1].rows, vec![3, 4]);
        assert_eq!(parts[1].vars, vec![3]);
        assert_eq!(parts[1].matrix, m(&[&["-z1*", "0"], &["0", "z1*"]]));
        assert_eq!(parts[0].class, AtomClass::Gw(1));
        assert_eq!(parts[1].class, AtomClass::Gw(0));
    }

    #[test]
    fn generator_outputs_are_single_parts_preserved_exactly() {
        for g in [gen_gw(3, 1).unwrap(), gen_gw(4, 2).unwrap(), gen_hm(4).unwrap()] {
            let parts = decompose_atomic(&g).unwrap();
            assert_eq!(parts.len(), 1);
            // Name-rank renumbering is the identity on generator output.
            assert_eq!(parts[0].matrix, g);
        }
    }

    #[test]
    fn catenation_decomposes_into_its_parts() {
        let a = gen_gw(3, 0).unwrap();
        let b = gen_gw(3, 1).unwrap();
        let cat = catenate(&[a.clone(), b.clone()]).unwrap();
        assert_eq!((cat.p(), cat.n(), cat.k()), (7, 3, 4));
        assert!(cat.is_cod());
        let parts = decompose_atomic(&cat).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].rows, vec![1, 2, 3]);
        assert_eq!(parts[1].rows, vec![4, 5, 6, 7]);
        assert_eq!(parts[0].class, AtomClass::Gw(0));
        assert_eq!(parts[1].class, AtomClass::Gw(1));
        // Parts renumber by first occurrence (the catenation is
        // nameless), which the canonicalizer reconciles.
        let (canon, _) = canonicalize_atomic(&parts[1].matrix).unwrap();
        assert!(cells_equal(&canon, &b));
    }

    #[test]
    fn classification_table() {
        assert_eq!(classify_atomic(&gen_gw(3, 1).unwrap()), AtomClass::Gw(1));
        // Mirror classes normalize to w ≤ n/2.
        assert_eq!(classify_atomic(&gen_gw(3, 2).unwrap()), AtomClass::Gw(1));
        assert_eq!(classify_atomic(&gen_gw(5, 4).unwrap()), AtomClass::Gw(1));
        assert_eq!(classify_atomic(&gen_gw(4, 2).unwrap()), AtomClass::Gw(2));
        assert_eq!(classify_atomic(&gen_hm(4).unwrap()), AtomClass::Hm);
        assert_eq!(classify_atomic(&gen_hm(8).unwrap()), AtomClass::Hm);
        assert_eq!(classify_atomic(&gen_gw(6, -1).unwrap()), AtomClass::Gw(-1));
        // A two-variable diagonal is a design but no atomic class.
        let diag = m(&[&["z1", "0"], &["0", "z1*"]]);
        assert_eq!(classify_atomic(&diag), AtomClass::Gw(0));
        let diag2 = m(&[&["z1", "0"], &["0", "z2"]]);
        assert_eq!(classify_atomic(&diag2), AtomClass::Unknown);
        let mixed = m(&[&["z1", "0"], &["0", "z1*"], &["z2", "z3"], &["-z3*", "z2*"]]);
        assert_eq!(classify_atomic(&mixed), AtomClass::Unknown);
    }

    #[test]
    fn canonicalize_normalizes_mirror_weights() {
        let (canon, ops) = canonicalize_atomic(&gen_gw(3, 2).unwrap()).unwrap();
        assert!(cells_equal(&canon, &gen_gw(3, 1).unwrap()));
        let replay = apply_all(&gen_gw(3, 2).unwrap(), &ops).unwrap();
        assert!(cells_equal(&replay, &canon));
    }

    #[test]
    fn canonicalize_restores_scrambled_slices() {
        for n in 1..=4usize {
            for w in -1..=(n as i64 + 1) {
                let g = gen_gw(n, w).unwrap();
                let w_norm = w.min(n as i64 - w);
                let want = gen_gw(n, w_norm).unwrap();
                for seed in [1u64, 2, 3] {
                    let (scrambled, _) = scramble(&g, seed, 16);
                    let (canon, ops) = canonicalize_atomic(&scrambled).unwrap();
                    assert!(cells_equal(&canon, &want), "n={n} w={w} seed={seed}");
                    assert!(
                        !ops.iter().any(|op| matches!(op, EquivOp::NegCol(_))),
                        "transcripts must not negate columns"
                    );
                    let replay = apply_all(&scrambled, &ops).unwrap();
                    assert!(cells_equal(&replay, &want));
                }
            }
        }
    }

    #[test]
    fn canonicalize_restores_scrambled_h_slices() {
        let g = gen_hm(4).unwrap();
        for seed in 0..6u64 {
            let (scrambled, _) = scramble(&g, seed, 16);
            let (canon, ops) = canonicalize_atomic(&scrambled).unwrap();
            assert!(cells_equal(&canon, &g), "seed {seed}");
            assert!(!ops.iter().any(|op| matches!(op, EquivOp::NegCol(_))));
        }
    }

    #[test]
    fn canonicalize_needs_a_column_move_for_swapped_h_slice() {
        // Swapping the last two columns of the n = 4 H slice cannot be
        // undone by row and instance operations alone: the forced sign
        // system is inconsistent. The transcript must open with a
        // column permutation.
        let g = gen_hm(4).unwrap();
        let swapped = apply_equiv(&g, &EquivOp::ColPerm(vec![1, 2, 4, 3])).unwrap();
        let (canon, ops) = canonicalize_atomic(&swapped).unwrap();
        assert!(cells_equal(&canon, &g));
        assert!(matches!(ops.first(), Some(EquivOp::ColPerm(_))));
    }

    #[test]
    fn canonicalize_absorbs_column_negation_via_alignment() {
        // Negating the appended column also defeats identity-alignment
        // binding, but a column move plus instance operations recovers
        // the generator without any NegCol in the transcript.
        let g = gen_hm(4).unwrap();
        let negated = apply_equiv(&g, &EquivOp::NegCol(4)).unwrap();
        let (canon, ops) = canonicalize_atomic(&negated).unwrap();
        assert!(cells_equal(&canon, &g));
        assert!(!ops.iter().any(|op| matches!(op, EquivOp::NegCol(_))));
        let replay = apply_all(&negated, &ops).unwrap();
        assert!(cells_equal(&replay, &g));
    }

    #[test]
    fn canonicalize_handles_the_doubled_class() {
        let g = gen_gw(4, 2).unwrap();
        for seed in [5u64, 6] {
            let (scrambled, _) = scramble(&g, seed, 12);
            let (canon, _) = canonicalize_atomic(&scrambled).unwrap();
            assert!(cells_equal(&canon, &g), "seed {seed}");
        }
        let g2 = gen_gw(2, 1).unwrap();
        let moved = apply_equiv(&g2, &EquivOp::ColPerm(vec![2, 1])).unwrap();
        let (canon2, _) = canonicalize_atomic(&moved).unwrap();
        assert!(cells_equal(&canon2, &g2));
    }

    #[test]
    fn canonicalize_rejects_unclassifiable_and_composite_inputs() {
        let not_first_type = m(&[&["z1", "0"], &["0", "z1*"]]);
        // Parameters alone classify this as Gw(0), but binding fails:
        // it is a design yet not equivalent to the one-variable column.
        assert!(matches!(
            canonicalize_atomic(&not_first_type),
            Err(CodError::NotEquivalent(_))
        ));
        // Alamouti plus an all-zero row: a genuine design, but the zero row
        // rules out every generator family's shape.
        let unknown = m(&[&["z1", "z2"], &["-z2*", "z1*"], &["0", "0"]]);
        assert!(matches!(
            canonicalize_atomic(&unknown),
            Err(CodError::Unclassifiable { p: 3, n: 2, k: 2 })
        ));
        let stacked = catenate(&[gen_hm(4).unwrap(), gen_hm(4).unwrap()]).unwrap();
        assert!(matches!(
            canonicalize_atomic(&stacked),
            Err(CodError::InvalidArgument(_))
        ));
        let not_cod = m(&[&["z1", "z1"]]);
        assert!(matches!(canonicalize_atomic(&not_cod), Err(CodError::NotACod(_))));
    }

    #[test]
    fn signatures_count_atoms() {
        let sig = signature(&gen_gw(3, 2).unwrap()).unwrap();
        assert_eq!(sig.t(1), 1);
        assert_eq!(sig.t(0), 0);
        let sig_h = signature(&gen_hm(4).unwrap()).unwrap();
        assert_eq!(sig_h.t_h(), Some(1));
        assert_eq!(sig_h.t(2), 0);
        let sig_d = signature(&gen_gw(4, 2).unwrap()).unwrap();
        assert_eq!(sig_d.t(2), 2);
        assert_eq!(sig_d.t_h(), Some(0));
        let cat = catenate(&[gen_gw(3, 0).unwrap(), gen_gw(3, 1).unwrap()]).unwrap();
        let sig_c = signature(&cat).unwrap();
        assert_eq!((sig_c.t(-1), sig_c.t(0), sig_c.t(1)), (0, 1, 1));
    }

    #[test]
    fn signature_rejects_unsupported_inputs() {
        let not_first_type = m(&[&["z1", "0"], &["0", "z1*"]]);
        assert!(matches!(signature(&not_first_type), Err(CodError::Unsupported(_))));
        let not_cod = m(&[&["z1", "z1"]]);
        assert!(matches!(signature(&not_cod), Err(CodError::NotACod(_))));
    }

    #[test]
    fn equivalence_is_signature_equality() {
        // Mirror-weight slices are equivalent...
        assert!(equivalent(&gen_gw(3, 2).unwrap(), &gen_gw(3, 1).unwrap()).unwrap());
        // ...scrambling preserves the class...
        let (scrambled, _) = scramble(&gen_gw(3, 1).unwrap(), 11, 20);
        assert!(equivalent(&scrambled, &gen_gw(3, 2).unwrap()).unwrap());
        // ...but the H slice is not the doubled slice, and two stacked
        // H atoms are not one doubled atom despite equal parameters.
        assert!(!equivalent(&gen_hm(4).unwrap(), &gen_gw(4, 2).unwrap()).unwrap());
        let stacked = catenate(&[gen_hm(4).unwrap(), gen_hm(4).unwrap()]).unwrap();
        assert!(!equivalent(&stacked, &gen_gw(4, 2).unwrap()).unwrap());
        assert!(matches!(
            equivalent(&gen_gw(3, 1).unwrap(), &gen_gw(4, 1).unwrap()),
            Err(CodError::InvalidArgument(_))
        ));
    }

    #[test]
    fn full_design_signature_matches_slice_sum() {
        // The full design catenates all its weight slices.
        let g = gen_g(3).unwrap();
        let sig = signature(&g).unwrap();
        assert_eq!((sig.t(-1), sig.t(0), sig.t(1)), (2, 2, 2));
        assert_eq!(sig.delay(), 16);
        assert_eq!(sig.vars(), 8);
    }

    #[test]
    fn build_catenation_round_trips_solutions() {
        for (p, n, k) in [(7u64, 3usize, 4u64), (4, 3, 3), (12, 3, 4), (4, 4, 3), (8, 4, 6)] {
            for sol in feasible(p, n, k).unwrap() {
                let built = build_catenation(n, &sol).unwrap();
                assert_eq!((built.p() as u128, built.k() as u128), (sol.delay(), sol.vars()));
                assert!(built.is_cod_fast());
                assert_eq!(signature(&built).unwrap(), sol, "p={p} n={n} k={k}");
            }
        }
    }

    #[test]
    fn scrambled_signature_is_invariant() {
        let cat = catenate(&[gen_gw(4, 1).unwrap(), gen_hm(4).unwrap()]).unwrap();
        let sig = signature(&cat).unwrap();
        for seed in [3u64, 9] {
            let (scrambled, _) = scramble(&cat, seed, 24);
            assert_eq!(signature(&scrambled).unwrap(), sig);
        }
    }

    #[test]
    fn op_display_forms() {
        assert_eq!(EquivOp::RowPerm(vec![2, 1]).to_string(), "RowPerm(2 1)");
        assert_eq!(EquivOp::ColPerm(vec![1, 3, 2]).to_string(), "ColPerm(1 3 2)");
        assert_eq!(EquivOp::ConjVar(2).to_string(), "ConjVar(2)");
        assert_eq!(EquivOp::NegVar(1).to_string(), "NegVar(1)");
        assert_eq!(EquivOp::NegRow(4).to_string(), "NegRow(4)");
        assert_eq!(EquivOp::NegCol(3).to_string(), "NegCol(3)");
        assert_eq!(EquivOp::RenameVar(1, 3).to_string(), "RenameVar(1,3)");
    }

    #[test]
    fn negating_and_conjugating_all_of_one_variable_stays_a_design() {
        let g = gen_hm(4).unwrap();
        let mut cur = g.clone();
        for op in [EquivOp::NegVar(1), EquivOp::ConjVar(2), EquivOp::NegRow(3), EquivOp::NegCol(1)]
        {
            cur = apply_equiv(&cur, &op).unwrap();
            assert!(cur.is_cod(), "after {op}");
        }
        assert!(equivalent(&cur, &g).unwrap());
    }

    #[test]
    fn variable_and_row_negation_commute() {
        let g = rate34();
        let a = apply_all(&g, &[EquivOp::NegVar(1), EquivOp::NegRow(2)]).unwrap();
        let b = apply_all(&g, &[EquivOp::NegRow(2), EquivOp::NegVar(1)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.cell(1, 1), "-z1".parse().unwrap());
        // NegVar(1) flips the cell, NegRow(2) flips it back.
        assert_eq!(a.cell(2, 2), "z1*".parse().unwrap());
        assert_eq!(a.cell(2, 1), "z2*".parse().unwrap());
    }
}
