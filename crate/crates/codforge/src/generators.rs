//! Closed-form design generators.
//!
//! Every design built here places variable instances by binary-vector
//! bookkeeping: a row is a vector α, the variable occupying column i of
//! that row has the vector name `phi(α, i)`, its sign is `(−1)^theta(α, i)`,
//! and it is conjugated exactly when the top bit of α is set. The
//! families differ only in which rows are kept and whether an extra
//! sign-solved column is appended.
//!
//! Variable names are stored with the structurally-zero top bit dropped,
//! and display ids are assigned by rank of the name's numeric value.

use std::collections::{BTreeMap, BTreeSet};

use crate::cod::{CodMatrix, Entry, Sign};
use crate::f2vec::F2Vec;
use crate::uf::ParityUf;
use crate::{CodError, Result};

/// Sign exponent of the column-i instance in row α of the full design of
/// size n: a window weight of α plus an offset depending on the parity
/// of i (and, for odd i, on the top bit of α), all mod 2.
///
/// # Panics
/// If `alpha.len() != n + 1` or `i` is outside `1..=n`.
pub fn theta(alpha: &F2Vec, i: usize, n: usize) -> u8 {
    assert_eq!(alpha.len(), n + 1, "theta: alpha must have n + 1 coordinates");
    assert!((1..=n).contains(&i), "theta: column {i} outside 1..={n}");
    let window = alpha.weight_range(i, n + 1);
    let offset = if i % 2 == 0 {
        i / 2
    } else {
        (i - 1) / 2 + alpha.get(n + 1) as usize
    };
    ((window + offset) % 2) as u8
}

/// Name of the variable whose instance occupies column i of row α:
/// α ⊕ α(n+1)·1 ⊕ e_i. The top bit of the result is always zero.
///
/// # Panics
/// If the dimensions disagree, `i` is outside `1..=n`, or `α(i) = 0`
/// (those cells hold no instance).
pub fn phi(alpha: &F2Vec, i: usize, n: usize) -> F2Vec {
    assert_eq!(alpha.len(), n + 1, "phi: alpha must have n + 1 coordinates");
    assert!((1..=n).contains(&i), "phi: column {i} outside 1..={n}");
    assert_eq!(alpha.get(i), 1, "phi: alpha({i}) must be 1");
    let mut out = *alpha;
    if alpha.get(n + 1) == 1 {
        out = out.xor(&F2Vec::ones(n + 1));
    }
    let out = out.xor(&F2Vec::unit(n + 1, i));
    debug_assert_eq!(out.get(n + 1), 0);
    out
}

/// Sign exponent of the appended-column instance in row α: the parity
/// of α over the even coordinate positions.
///
/// # Panics
/// If `alpha.len() != n` or `n` is odd.
pub fn psi(alpha: &F2Vec, n: usize) -> u8 {
    assert_eq!(alpha.len(), n, "psi: alpha must have n coordinates");
    assert!(n % 2 == 0, "psi requires even n");
    let sum: u32 = (1..=n / 2).map(|j| alpha.get(2 * j) as u32).sum();
    (sum % 2) as u8
}

/// Assemble the G-family design with the given (n+1)-bit row vectors.
/// Names are φ-values truncated to n bits; ids are value ranks.
fn g_build(rows: &[F2Vec], n: usize) -> Result<CodMatrix> {
    let mut names: BTreeSet<F2Vec> = BTreeSet::new();
    for alpha in rows {
        for i in 1..=n {
            if alpha.get(i) == 1 {
                names.insert(phi(alpha, i, n).truncated(n));
            }
        }
    }
    let id_of: BTreeMap<F2Vec, u32> = names
        .iter()
        .enumerate()
        .map(|(idx, name)| (*name, idx as u32 + 1))
        .collect();
    let grid: Vec<Vec<Entry>> = rows
        .iter()
        .map(|alpha| {
            let conj = alpha.get(n + 1) == 1;
            (1..=n)
                .map(|i| {
                    if alpha.get(i) == 0 {
                        Entry::Zero
                    } else {
                        let sign = if theta(alpha, i, n) == 0 { Sign::Plus } else { Sign::Minus };
                        Entry::Var { id: id_of[&phi(alpha, i, n).truncated(n)], sign, conj }
                    }
                })
                .collect()
        })
        .collect();
    let names_map: BTreeMap<u32, F2Vec> = id_of.iter().map(|(name, id)| (*id, *name)).collect();
    CodMatrix::from_rows_with_names(grid, names_map)
}

/// The full design of size n: one row per α ∈ F_2^{n+1} in ascending
/// value order, with parameters [2^{n+1}, n, 2^n]. Rows α = 0 and
/// α = e_{n+1} are identically zero.
///
/// Capped at n ≤ 16; see [`gen_g_uncapped`] for slightly larger n.
pub fn gen_g(n: usize) -> Result<CodMatrix> {
    if n > 16 {
        return Err(CodError::ResourceLimit(format!(
            "gen_g({n}) would allocate 2^{} rows; use gen_g_uncapped up to n = 18",
            n + 1
        )));
    }
    gen_g_uncapped(n)
}

/// [`gen_g`] without the soft cap. Still refuses n > 18, where the cell
/// grid alone would outgrow memory.
pub fn gen_g_uncapped(n: usize) -> Result<CodMatrix> {
    if n < 1 {
        return Err(CodError::InvalidArgument("gen_g requires n >= 1".into()));
    }
    if n > 18 {
        return Err(CodError::ResourceLimit(format!("gen_g({n}) exceeds the hard cap n = 18")));
    }
    g_build(&F2Vec::enumerate_all(n + 1), n)
}

/// Row vectors of the weight-w slice: weight w+1 with top bit clear
/// (class A), then weight n−w+2 with top bit set (class B), each class
/// in ascending value order.
fn gw_row_vectors(n: usize, w: i64) -> Vec<F2Vec> {
    let mut rows: Vec<F2Vec> = F2Vec::enumerate_weight(n, w + 1)
        .into_iter()
        .map(|v| v.extended(n + 1))
        .collect();
    rows.extend(
        F2Vec::enumerate_weight(n, n as i64 - w + 1)
            .into_iter()
            .map(|v| v.extended(n + 1).with_bit(n + 1, 1)),
    );
    rows
}

/// The weight-w slice of the full design: parameters
/// [C(n, w−1) + C(n, w+1), n, C(n, w)] for −1 ≤ w ≤ n+1. The plain
/// (class A) rows precede the conjugated (class B) rows.
pub fn gen_gw(n: usize, w: i64) -> Result<CodMatrix> {
    if !(1..=20).contains(&n) {
        return Err(CodError::InvalidArgument(format!("gen_gw: n = {n} outside 1..=20")));
    }
    if w < -1 || w > n as i64 + 1 {
        return Err(CodError::InvalidArgument(format!(
            "gen_gw: w = {w} outside -1..={}",
            n + 1
        )));
    }
    g_build(&gw_row_vectors(n, w), n)
}

fn check_h_n(name: &str, n: usize, cap: usize) -> Result<()> {
    if n % 4 != 0 || n == 0 {
        return Err(CodError::InvalidArgument(format!(
            "{name} requires n divisible by 4 (got {n}): the appended column's \
             sign constraints are only satisfiable when 4 divides n"
        )));
    }
    if n > cap {
        return Err(CodError::ResourceLimit(format!("{name}({n}) exceeds the cap n = {cap}")));
    }
    Ok(())
}

/// Assemble an H-family design from n-bit row vectors: columns 1..n−1
/// follow the size-(n−1) G rules (the top bit of α doubling as the
/// conjugation flag), and column n holds the appended instance
/// (−1)^ψ(α) · z_{α ⊕ e_n}, unconjugated, wherever α(n) = 1.
fn h_build(rows: &[F2Vec], n: usize) -> Result<CodMatrix> {
    let mut names: BTreeSet<F2Vec> = BTreeSet::new();
    for alpha in rows {
        for i in 1..n {
            if alpha.get(i) == 1 {
                names.insert(phi(alpha, i, n - 1).truncated(n - 1));
            }
        }
        if alpha.get(n) == 1 {
            names.insert(alpha.xor(&F2Vec::unit(n, n)).truncated(n - 1));
        }
    }
    let id_of: BTreeMap<F2Vec, u32> = names
        .iter()
        .enumerate()
        .map(|(idx, name)| (*name, idx as u32 + 1))
        .collect();
    let grid: Vec<Vec<Entry>> = rows
        .iter()
        .map(|alpha| {
            let conj = alpha.get(n) == 1;
            let mut row: Vec<Entry> = (1..n)
                .map(|i| {
                    if alpha.get(i) == 0 {
                        Entry::Zero
                    } else {
                        let sign =
                            if theta(alpha, i, n - 1) == 0 { Sign::Plus } else { Sign::Minus };
                        Entry::Var {
                            id: id_of[&phi(alpha, i, n - 1).truncated(n - 1)],
                            sign,
                            conj,
                        }
                    }
                })
                .collect();
            row.push(if alpha.get(n) == 0 {
                Entry::Zero
            } else {
                let sign = if psi(alpha, n) == 0 { Sign::Plus } else { Sign::Minus };
                Entry::Var {
                    id: id_of[&alpha.xor(&F2Vec::unit(n, n)).truncated(n - 1)],
                    sign,
                    conj: false,
                }
            });
            row
        })
        .collect();
    let names_map: BTreeMap<u32, F2Vec> = id_of.iter().map(|(name, id)| (*id, *name)).collect();
    CodMatrix::from_rows_with_names(grid, names_map)
}

/// The padded full design: one row per α ∈ F_2^n ascending, parameters
/// [2^n, n, 2^{n−1}]. Defined only when 4 divides n. Unlike the
/// G family, rows mix plain and conjugated instances (the appended
/// column is never conjugated).
pub fn gen_h(n: usize) -> Result<CodMatrix> {
    check_h_n("gen_h", n, 16)?;
    h_build(&F2Vec::enumerate_all(n), n)
}

/// The weight slice of [`gen_h`] on rows of weight m+1 (m = n/2),
/// ascending: parameters [C(n, m+1), n, C(n−1, m)]. The zero pattern of
/// row α is α itself.
pub fn gen_hm(n: usize) -> Result<CodMatrix> {
    check_h_n("gen_hm", n, 20)?;
    let m = (n / 2) as i64;
    h_build(&F2Vec::enumerate_weight(n, m + 1), n)
}

/// Outcome of attempting to append a sign-consistent extra column to
/// the maximal-rate slice of size n−1 (rows reordered class A then
/// class B, as [`gen_gw`] emits them).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PadOutcome {
    /// A consistent assignment exists (n ≡ 0 mod 4). `column` is ready
    /// for [`CodMatrix::with_appended_column`]; `assignment` maps each
    /// class-B row index (1-based) to its chosen sign, with union-find
    /// roots fixed to Plus.
    Success { column: Vec<Entry>, assignment: BTreeMap<usize, Sign> },
    /// The sign constraints contain an odd cycle (n ≡ 2 mod 4). Each
    /// cycle edge is (row a, row b, linking column i): the orthogonality
    /// of column i against the appended column forces the signs of rows
    /// a and b to agree iff i is even, and the constraint parities along
    /// the cycle sum to 1.
    Contradiction { cycle: Vec<(usize, usize, usize)> },
}

/// Try to extend gen_gw(n−1, n/2) by one column so the result is an
/// orthogonal design of size n, solving the pairwise sign constraints
/// between class-B rows. Requires even n with n/2 ≥ 2; succeeds exactly
/// when 4 divides n.
pub fn pad_column_attempt(n: usize) -> Result<PadOutcome> {
    if n % 2 != 0 || n < 4 {
        return Err(CodError::InvalidArgument(format!(
            "pad_column_attempt requires even n with n/2 >= 2, got {n}"
        )));
    }
    if n > 20 {
        return Err(CodError::ResourceLimit(format!(
            "pad_column_attempt({n}) exceeds the cap n = 20"
        )));
    }
    let m = (n / 2) as i64;
    let base = gen_gw(n - 1, m)?;
    let rows = gw_row_vectors(n - 1, m);
    debug_assert_eq!(rows.len(), base.p());

    // Class-B rows are exactly those with the top bit (position n) set.
    let class_b: Vec<usize> = (0..rows.len()).filter(|&r| rows[r].get(n) == 1).collect();
    let node_of: BTreeMap<F2Vec, usize> =
        class_b.iter().enumerate().map(|(node, &r)| (rows[r], node)).collect();

    // Edges: α and β = α ⊕ 1 ⊕ e_i ⊕ e_n (both class B, both with bit i
    // set) must take equal signs for even i, opposite for odd i.
    let all_ones = F2Vec::ones(n);
    let e_n = F2Vec::unit(n, n);
    let mut uf = ParityUf::new(class_b.len());
    let mut adj: Vec<Vec<(usize, usize, u8)>> = vec![Vec::new(); class_b.len()];
    for (node_a, &row_a) in class_b.iter().enumerate() {
        let alpha = rows[row_a];
        for i in 1..n {
            if alpha.get(i) == 0 {
                continue;
            }
            let beta = alpha.xor(&all_ones).xor(&F2Vec::unit(n, i)).xor(&e_n);
            if beta.value() <= alpha.value() {
                continue; // each unordered pair is processed once
            }
            let node_b = node_of[&beta];
            let parity = (i % 2) as u8;
            if uf.union(node_a, node_b, parity) {
                adj[node_a].push((node_b, i, parity));
                adj[node_b].push((node_a, i, parity));
            } else {
                let cycle = close_cycle(&adj, node_a, node_b, i, &class_b);
                return Ok(PadOutcome::Contradiction { cycle });
            }
        }
    }

    let mut column = vec![Entry::Zero; rows.len()];
    let mut assignment = BTreeMap::new();
    let name_of_id: &BTreeMap<u32, F2Vec> = base.names().expect("generated designs carry names");
    let id_of_name: BTreeMap<F2Vec, u32> =
        name_of_id.iter().map(|(id, name)| (*name, *id)).collect();
    for (node, &row) in class_b.iter().enumerate() {
        let (_, parity) = uf.find(node);
        let sign = if parity == 0 { Sign::Plus } else { Sign::Minus };
        let name = rows[row].xor(&e_n).truncated(n - 1);
        column[row] = Entry::Var { id: id_of_name[&name], sign, conj: false };
        assignment.insert(row + 1, sign);
    }
    Ok(PadOutcome::Success { column, assignment })
}

/// Shortest accepted-edge path from `from` to `to`, closed with the
/// contradicting edge, as global 1-based row triples.
fn close_cycle(
    adj: &[Vec<(usize, usize, u8)>],
    from: usize,
    to: usize,
    closing_col: usize,
    class_b: &[usize],
) -> Vec<(usize, usize, usize)> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &(v, col, _) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some((u, col));
                queue.push_back(v);
            }
        }
    }
    assert!(seen[to], "contradicting edge endpoints must already be connected");
    let mut path = Vec::new();
    let mut node = to;
    while let Some((prev, col)) = parent[node] {
        path.push((class_b[prev] + 1, class_b[node] + 1, col));
        node = prev;
    }
    path.reverse();
    path.push((class_b[to] + 1, class_b[from] + 1, closing_col));
    path
}
