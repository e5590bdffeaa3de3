//! The symbolic COD matrix model and its ground-truth verification.
//!
//! Entries are formal: `0` or `±z_j` / `±z_j^*`. Orthogonality is checked
//! by exact integer arithmetic on degree-2 monomials over the 2k symbols
//! {z_j, z_j^*} — there is no numeric evaluation anywhere, so a verdict
//! from [`CodMatrix::check_cod`] is a proof, not an approximation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::f2vec::F2Vec;
use crate::{CodError, Result};

/// Sign of a nonzero entry. No other scaling is representable: the model
/// is combinatorial, entries are never weighted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// One matrix cell: zero, or a signed, possibly conjugated variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    Var { id: u32, sign: Sign, conj: bool },
}

impl Entry {
    pub fn var(id: u32, sign: Sign, conj: bool) -> Entry {
        Entry::Var { id, sign, conj }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Entry::Zero)
    }

    pub fn id(&self) -> Option<u32> {
        match self {
            Entry::Zero => None,
            Entry::Var { id, .. } => Some(*id),
        }
    }

    /// Complex conjugate: flips the conj flag, keeps sign. Zero is fixed.
    pub fn conjugated(self) -> Entry {
        match self {
            Entry::Zero => Entry::Zero,
            Entry::Var { id, sign, conj } => Entry::Var { id, sign, conj: !conj },
        }
    }

    pub fn negated(self) -> Entry {
        match self {
            Entry::Zero => Entry::Zero,
            Entry::Var { id, sign, conj } => Entry::Var { id, sign: sign.negate(), conj },
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Zero => write!(f, "0"),
            Entry::Var { id, sign, conj } => {
                if *sign == Sign::Minus {
                    write!(f, "-")?;
                }
                write!(f, "z{id}")?;
                if *conj {
                    write!(f, "*")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Entry {
    type Err = String;

    /// Parses the token grammar `"0" | ["-"] "z" <id> ["*"]`.
    fn from_str(tok: &str) -> std::result::Result<Self, Self::Err> {
        if tok == "0" {
            return Ok(Entry::Zero);
        }
        let (sign, rest) = match tok.strip_prefix('-') {
            Some(r) => (Sign::Minus, r),
            None => (Sign::Plus, tok),
        };
        let rest = rest
            .strip_prefix('z')
            .ok_or_else(|| format!("expected '0' or '[-]z<id>[*]', got {tok:?}"))?;
        let (digits, conj) = match rest.strip_suffix('*') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad variable id in {tok:?}"));
        }
        let id: u32 = digits
            .parse()
            .map_err(|_| format!("variable id out of range in {tok:?}"))?;
        if id == 0 {
            return Err(format!("variable ids start at 1, got {tok:?}"));
        }
        Ok(Entry::Var { id, sign, conj })
    }
}

/// A formal symbol: z_j (plain) or z_j^* (conjugated).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub id: u32,
    pub conj: bool,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}{}", self.id, if self.conj { "*" } else { "" })
    }
}

/// A degree-2 commutative monomial over the symbols, stored in canonical
/// (sorted) order so equal products compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    lo: Symbol,
    hi: Symbol,
}

impl Monomial {
    pub fn new(a: Symbol, b: Symbol) -> Monomial {
        if a <= b {
            Monomial { lo: a, hi: b }
        } else {
            Monomial { lo: b, hi: a }
        }
    }

    /// The squared-modulus monomial z_j·z_j^*.
    pub fn modulus_squared(id: u32) -> Monomial {
        Monomial::new(Symbol { id, conj: false }, Symbol { id, conj: true })
    }

    pub fn factors(&self) -> (Symbol, Symbol) {
        (self.lo, self.hi)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.lo, self.hi)
    }
}

/// Integer-coefficient polynomial in degree-2 monomials; empty map = 0.
pub type GramPoly = BTreeMap<Monomial, i64>;

/// Outcome of the orthogonality check. On failure, carries the first
/// offending Gram cell in row-major order and its nonzero residual
/// (computed Gram cell minus the required value).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodVerdict {
    Cod,
    NotCod {
        col_a: usize,
        col_b: usize,
        residual: Vec<(Monomial, i64)>,
    },
}

impl CodVerdict {
    pub fn is_cod(&self) -> bool {
        matches!(self, CodVerdict::Cod)
    }
}

/// Outcome of the first-type check on a verified COD. A violation is a
/// 2×2 submatrix diag(±z_j^(*), ±z_j^(*)) with opposite conj flags and
/// zeros off the diagonal, reported with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FirstTypeCheck {
    FirstType,
    Violation {
        r1: usize,
        r2: usize,
        c1: usize,
        c2: usize,
        var: u32,
    },
}

impl FirstTypeCheck {
    pub fn is_first_type(&self) -> bool {
        matches!(self, FirstTypeCheck::FirstType)
    }
}

/// The block form collecting every occurrence of one variable z_j.
///
/// Reading the original matrix at `rows[i]` × `cols[i']` (after negating
/// the rows flagged in `row_negated`) yields an n×n block matrix whose
/// upper-left n1×n1 block is z_j·I, lower-right n2×n2 block is z_j^*·I,
/// upper-right block is `mj`, and lower-left block is −mj^H. `rows` and
/// `cols` are 1-based indices into the source matrix; the first n1 of
/// `cols` hold the plain occurrences, the rest the conjugated ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BjForm {
    pub j: u32,
    pub n1: usize,
    pub n2: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub row_negated: Vec<bool>,
    pub mj: Vec<Vec<Entry>>,
}

/// A p×n matrix over {0, ±z_j, ±z_j^*}. Ids are contiguous 1..=k. COD
/// validity is deliberately NOT a construction invariant — unverified
/// candidates are representable and [`CodMatrix::check_cod`] is the
/// oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodMatrix {
    p: usize,
    n: usize,
    k: u32,
    cells: Vec<Entry>,
    names: Option<BTreeMap<u32, F2Vec>>,
}

impl CodMatrix {
    /// Builds a matrix from rows, validating shape and id contiguity.
    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<CodMatrix> {
        Self::from_rows_impl(rows, None)
    }

    /// Like [`CodMatrix::from_rows`], attaching a name table that must
    /// cover exactly the ids 1..=k with distinct, same-length vectors.
    pub fn from_rows_with_names(
        rows: Vec<Vec<Entry>>,
        names: BTreeMap<u32, F2Vec>,
    ) -> Result<CodMatrix> {
        Self::from_rows_impl(rows, Some(names))
    }

    fn from_rows_impl(
        rows: Vec<Vec<Entry>>,
        names: Option<BTreeMap<u32, F2Vec>>,
    ) -> Result<CodMatrix> {
        let p = rows.len();
        if p == 0 {
            return Err(CodError::InvalidArgument("matrix needs at least one row".into()));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(CodError::InvalidArgument("matrix needs at least one column".into()));
        }
        let mut cells = Vec::with_capacity(p * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(CodError::InvalidArgument(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            cells.extend(row);
        }
        let mut seen = BTreeSet::new();
        let mut max_id = 0u32;
        for e in &cells {
            if let Entry::Var { id, .. } = e {
                seen.insert(*id);
                max_id = max_id.max(*id);
            }
        }
        if max_id as usize != seen.len() {
            return Err(CodError::InvalidArgument(format!(
                "variable ids must be contiguous 1..={max_id}, found {} distinct ids",
                seen.len()
            )));
        }
        let k = max_id;
        if let Some(ref names) = names {
            let keys: Vec<u32> = names.keys().copied().collect();
            if keys != (1..=k).collect::<Vec<u32>>() {
                return Err(CodError::InvalidArgument(
                    "name table must cover exactly the ids 1..=k".into(),
                ));
            }
            let mut values = BTreeSet::new();
            for v in names.values() {
                if v.len() != names.values().next().unwrap().len() {
                    return Err(CodError::InvalidArgument(
                        "name vectors must share one length".into(),
                    ));
                }
                if !values.insert(*v) {
                    return Err(CodError::InvalidArgument(format!(
                        "duplicate name vector {v}"
                    )));
                }
            }
        }
        Ok(CodMatrix { p, n, k, cells, names })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn names(&self) -> Option<&BTreeMap<u32, F2Vec>> {
        self.names.as_ref()
    }

    /// Cell at 1-based (row, column).
    ///
    /// # Panics
    /// If an index is out of range.
    pub fn cell(&self, r: usize, c: usize) -> Entry {
        assert!((1..=self.p).contains(&r), "row {r} outside 1..={}", self.p);
        assert!((1..=self.n).contains(&c), "column {c} outside 1..={}", self.n);
        self.cells[(r - 1) * self.n + c - 1]
    }

    pub fn row(&self, r: usize) -> &[Entry] {
        assert!((1..=self.p).contains(&r), "row {r} outside 1..={}", self.p);
        &self.cells[(r - 1) * self.n..r * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Entry]> {
        self.cells.chunks(self.n)
    }

    pub(crate) fn cells_mut(&mut self) -> &mut [Entry] {
        &mut self.cells
    }

    pub(crate) fn names_mut(&mut self) -> &mut Option<BTreeMap<u32, F2Vec>> {
        &mut self.names
    }

    /// Indicator vector of the nonzero columns of row `r`.
    pub fn zero_pattern(&self, r: usize) -> F2Vec {
        let mut v = F2Vec::zeros(self.n);
        for (c0, e) in self.row(r).iter().enumerate() {
            if !e.is_zero() {
                v = v.with_bit(c0 + 1, 1);
            }
        }
        v
    }

    /// All occurrences of variable `j` in row-major order, as 1-based
    /// (row, column) pairs.
    pub fn occurrences(&self, j: u32) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 1..=self.p {
            for (c0, e) in self.row(r).iter().enumerate() {
                if e.id() == Some(j) {
                    out.push((r, c0 + 1));
                }
            }
        }
        out
    }

    /// One Gram cell: Σ_r conj(m[r,a])·m[r,b], exact.
    pub fn gram_cell(&self, a: usize, b: usize) -> GramPoly {
        assert!((1..=self.n).contains(&a) && (1..=self.n).contains(&b));
        let mut poly = GramPoly::new();
        for r in 1..=self.p {
            let (ea, eb) = (self.cell(r, a), self.cell(r, b));
            if let (
                Entry::Var { id: ia, sign: sa, conj: ca },
                Entry::Var { id: ib, sign: sb, conj: cb },
            ) = (ea, eb)
            {
                let mono = Monomial::new(
                    Symbol { id: ia, conj: !ca },
                    Symbol { id: ib, conj: cb },
                );
                let coeff = (sa * sb).as_i64();
                let slot = poly.entry(mono).or_insert(0);
                *slot += coeff;
                if *slot == 0 {
                    poly.remove(&mono);
                }
            }
        }
        poly
    }

    /// The full n×n symbolic Gram matrix Oᴴ·O.
    pub fn symbolic_gram(&self) -> Vec<Vec<GramPoly>> {
        (1..=self.n)
            .map(|a| (1..=self.n).map(|b| self.gram_cell(a, b)).collect())
            .collect()
    }

    /// Exact orthogonality check: the Gram matrix must equal
    /// (Σ_j z_j z_j^*)·I_n. Stops at the first offending cell in
    /// row-major order.
    pub fn check_cod(&self) -> CodVerdict {
        let expected: GramPoly = (1..=self.k)
            .map(|id| (Monomial::modulus_squared(id), 1i64))
            .collect();
        for a in 1..=self.n {
            for b in 1..=self.n {
                let mut cell = self.gram_cell(a, b);
                if a == b {
                    for (mono, want) in &expected {
                        let slot = cell.entry(*mono).or_insert(0);
                        *slot -= want;
                        if *slot == 0 {
                            cell.remove(mono);
                        }
                    }
                }
                if !cell.is_empty() {
                    return CodVerdict::NotCod {
                        col_a: a,
                        col_b: b,
                        residual: cell.into_iter().collect(),
                    };
                }
            }
        }
        CodVerdict::Cod
    }

    pub fn is_cod(&self) -> bool {
        self.check_cod().is_cod()
    }

    /// Orthogonality via local structure instead of Gram expansion:
    /// every variable must occur exactly once in every column, and every
    /// same-row pair of nonzero entries must sit in a cancelling 2×2
    /// quad. Agrees with [`CodMatrix::is_cod`] on all inputs (the Gram
    /// off-diagonal terms cancel pairwise exactly through such quads, and
    /// column uniqueness is forced by the Gram diagonal) — the agreement
    /// is cross-validated in tests.
    pub fn is_cod_fast(&self) -> bool {
        if self.k == 0 {
            // Only zero entries: Gram is the zero matrix, which equals
            // the (empty-sum) target.
            return true;
        }
        // occ[id-1][col-1] = row holding variable id in that column.
        let mut occ = vec![vec![0usize; self.n]; self.k as usize];
        for r in 1..=self.p {
            for (c0, e) in self.row(r).iter().enumerate() {
                if let Entry::Var { id, .. } = e {
                    let slot = &mut occ[*id as usize - 1][c0];
                    if *slot != 0 {
                        return false; // repeated variable in one column
                    }
                    *slot = r;
                }
            }
        }
        if occ.iter().any(|cols| cols.contains(&0)) {
            return false; // some variable misses some column
        }
        for r in 1..=self.p {
            let row = self.row(r);
            for c1 in 1..=self.n {
                let Entry::Var { id: a, .. } = row[c1 - 1] else { continue };
                for c2 in c1 + 1..=self.n {
                    let Entry::Var { id: b, .. } = row[c2 - 1] else { continue };
                    if a == b {
                        return false;
                    }
                    // The only candidate partner row: where column c1
                    // holds b (it must also hold a at column c2).
                    let r2 = occ[b as usize - 1][c1 - 1];
                    if occ[a as usize - 1][c2 - 1] != r2 || r2 == r {
                        return false;
                    }
                    if !self.quad_cancels(r, r2, c1, c2) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True iff rows r1, r2 restricted to columns c1, c2 contribute
    /// cancelling terms to the Gram cell (c1, c2): crossed variables,
    /// conj flags (f1, f2) on row r1 and (¬f2, ¬f1) on row r2, and the
    /// four signs multiplying to −1.
    fn quad_cancels(&self, r1: usize, r2: usize, c1: usize, c2: usize) -> bool {
        let quad = [
            self.cell(r1, c1),
            self.cell(r1, c2),
            self.cell(r2, c1),
            self.cell(r2, c2),
        ];
        let [Entry::Var { id: a, sign: s1, conj: f1 },
             Entry::Var { id: b, sign: s2, conj: f2 },
             Entry::Var { id: b2, sign: s3, conj: g1 },
             Entry::Var { id: a2, sign: s4, conj: g2 }] = quad
        else {
            return false;
        };
        a == a2
            && b == b2
            && a != b
            && g1 == !f2
            && g2 == !f1
            && s1 * s2 * s3 * s4 == Sign::Minus
    }

    /// True iff the 2×2 submatrix at rows {r1, r2} × columns {c1, c2} is
    /// an Alamouti block: all four entries nonzero, one variable on the
    /// diagonal and a different one on the anti-diagonal, each row
    /// conj-homogeneous with the two rows opposite, and the four signs
    /// multiplying to −1 (which is exactly what makes the two columns'
    /// symbolic inner product cancel on these rows).
    pub fn is_alamouti(&self, r1: usize, r2: usize, c1: usize, c2: usize) -> Result<bool> {
        for (what, idx, max) in [
            ("row", r1, self.p),
            ("row", r2, self.p),
            ("column", c1, self.n),
            ("column", c2, self.n),
        ] {
            if !(1..=max).contains(&idx) {
                return Err(CodError::InvalidArgument(format!(
                    "{what} index {idx} outside 1..={max}"
                )));
            }
        }
        if r1 == r2 || c1 == c2 {
            return Err(CodError::InvalidArgument(
                "Alamouti check needs two distinct rows and two distinct columns".into(),
            ));
        }
        let homogeneous_opposite = match (self.cell(r1, c1), self.cell(r1, c2)) {
            (Entry::Var { conj: fa, .. }, Entry::Var { conj: fb, .. }) => fa == fb,
            _ => false,
        };
        Ok(homogeneous_opposite && self.quad_cancels(r1, r2, c1, c2))
    }

    /// True iff every row's nonzero entries share one conj flag.
    pub fn is_conjugation_separated(&self) -> bool {
        self.rows().all(|row| {
            let mut flags = row.iter().filter_map(|e| match e {
                Entry::Var { conj, .. } => Some(*conj),
                Entry::Zero => None,
            });
            match flags.next() {
                None => true,
                Some(first) => flags.all(|f| f == first),
            }
        })
    }

    /// First-type check. Defined only on CODs: the search relies on
    /// occurrence structure that orthogonality guarantees.
    pub fn check_first_type(&self) -> Result<FirstTypeCheck> {
        if let CodVerdict::NotCod { col_a, col_b, .. } = self.check_cod() {
            return Err(CodError::NotACod(format!(
                "Gram cell ({col_a}, {col_b}) has nonzero residual; first-type is only defined for verified designs"
            )));
        }
        let mut best: Option<(usize, usize, usize, usize, u32)> = None;
        for j in 1..=self.k {
            let occ = self.occurrences(j);
            for (i1, &(r1, c1)) in occ.iter().enumerate() {
                let Entry::Var { conj: f1, .. } = self.cell(r1, c1) else { unreachable!() };
                for &(r2, c2) in &occ[i1 + 1..] {
                    let Entry::Var { conj: f2, .. } = self.cell(r2, c2) else { unreachable!() };
                    if f1 == f2 || r1 == r2 || c1 == c2 {
                        continue;
                    }
                    if self.cell(r1, c2).is_zero() && self.cell(r2, c1).is_zero() {
                        let key = (r1, c1, r2, c2, j);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
            }
        }
        Ok(match best {
            None => FirstTypeCheck::FirstType,
            Some((r1, c1, r2, c2, var)) => FirstTypeCheck::Violation { r1, r2, c1, c2, var },
        })
    }

    pub fn is_first_type(&self) -> Result<bool> {
        Ok(self.check_first_type()?.is_first_type())
    }

    /// Collects every occurrence of variable `j` into the canonical block
    /// form (plain-occurrence columns first, then conjugated ones, both
    /// ascending; rows in the matching order; rows sign-normalized so the
    /// two identity blocks carry +z_j and +z_j^*). Verifies structurally
    /// that the lower-left block is −mj^H and the identity blocks are
    /// clean — failures mean the input is not a COD.
    pub fn extract_bj(&self, j: u32) -> Result<BjForm> {
        if j == 0 || j > self.k {
            return Err(CodError::InvalidArgument(format!(
                "variable z{j} does not occur (k = {})",
                self.k
            )));
        }
        let mut plain_cols = Vec::new();
        let mut conj_cols = Vec::new();
        let mut row_of_col = vec![0usize; self.n + 1];
        for c in 1..=self.n {
            let mut found: Option<(usize, bool)> = None;
            for r in 1..=self.p {
                if let Entry::Var { id, conj, .. } = self.cell(r, c) {
                    if id == j {
                        if found.is_some() {
                            return Err(CodError::NotACod(format!(
                                "variable z{j} occurs twice in column {c}"
                            )));
                        }
                        found = Some((r, conj));
                    }
                }
            }
            let Some((r, conj)) = found else {
                return Err(CodError::NotACod(format!(
                    "variable z{j} missing from column {c}"
                )));
            };
            row_of_col[c] = r;
            if conj {
                conj_cols.push(c);
            } else {
                plain_cols.push(c);
            }
        }
        let n1 = plain_cols.len();
        let n2 = conj_cols.len();
        let cols: Vec<usize> = plain_cols.into_iter().chain(conj_cols).collect();
        let rows: Vec<usize> = cols.iter().map(|&c| row_of_col[c]).collect();
        let distinct: BTreeSet<usize> = rows.iter().copied().collect();
        if distinct.len() != rows.len() {
            return Err(CodError::NotACod(format!(
                "two occurrences of variable z{j} share a row"
            )));
        }
        let mut row_negated = vec![false; self.n];
        for i in 0..self.n {
            match self.cell(rows[i], cols[i]) {
                Entry::Var { sign, .. } => row_negated[i] = sign == Sign::Minus,
                Entry::Zero => unreachable!(),
            }
        }
        let fetch = |bi: usize, bj: usize| -> Entry {
            let e = self.cell(rows[bi], cols[bj]);
            if row_negated[bi] {
                e.negated()
            } else {
                e
            }
        };
        // Identity blocks must be exactly z_j·I and z_j^*·I.
        for bi in 0..n1 {
            for bj in 0..n1 {
                if bi != bj && !fetch(bi, bj).is_zero() {
                    return Err(CodError::NotACod(format!(
                        "upper-left block of the z{j} form is not diagonal"
                    )));
                }
            }
        }
        for bi in n1..self.n {
            for bj in n1..self.n {
                if bi != bj && !fetch(bi, bj).is_zero() {
                    return Err(CodError::NotACod(format!(
                        "lower-right block of the z{j} form is not diagonal"
                    )));
                }
            }
        }
        let mj: Vec<Vec<Entry>> = (0..n1)
            .map(|bi| (n1..self.n).map(|bj| fetch(bi, bj)).collect())
            .collect();
        for bi in n1..self.n {
            for bj in 0..n1 {
                let expect = mj[bj][bi - n1].conjugated().negated();
                if fetch(bi, bj) != expect {
                    return Err(CodError::NotACod(format!(
                        "lower-left block of the z{j} form is not the negated conjugate transpose of the upper-right block"
                    )));
                }
            }
        }
        Ok(BjForm { j, n1, n2, rows, cols, row_negated, mj })
    }

    /// A copy with one more column appended. Names survive only if the
    /// column introduces no new variable ids.
    pub fn with_appended_column(&self, col: &[Entry]) -> Result<CodMatrix> {
        if col.len() != self.p {
            return Err(CodError::InvalidArgument(format!(
                "appended column has {} entries, expected {}",
                col.len(),
                self.p
            )));
        }
        let mut rows: Vec<Vec<Entry>> = self.rows().map(|r| r.to_vec()).collect();
        for (row, &e) in rows.iter_mut().zip(col) {
            row.push(e);
        }
        let new_ids = col.iter().filter_map(Entry::id).any(|id| id > self.k);
        match (&self.names, new_ids) {
            (Some(names), false) => Self::from_rows_with_names(rows, names.clone()),
            _ => Self::from_rows(rows),
        }
    }
}

impl fmt::Display for CodMatrix {
    /// The text serialization format: one row per line, entries
    /// whitespace-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            for (i, e) in row.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
