//! Parameter algebra: the atomic parameter table, feasibility of a
//! [p, n, k] triple by bounded enumeration, exact rate/delay formulas,
//! and the rate-delay trade-off table.
//!
//! Everything here is integer or rational arithmetic — decimal output
//! exists only at the presentation layer.

use std::collections::BTreeMap;
use std::fmt;

use crate::{CodError, Result};

/// C(n, r) with the convention C(n, r) = 0 for r < 0 or r > n.
///
/// # Panics
/// If `n` exceeds 100 (far past any use here; keeps u128 exact).
pub fn binomial(n: u64, r: i64) -> u128 {
    assert!(n <= 100, "binomial({n}, _) out of supported range");
    if r < 0 || r as u64 > n {
        return 0;
    }
    let r = (r as u64).min(n - r as u64);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// An exact nonnegative rational, kept reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    num: u128,
    den: u128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    /// # Panics
    /// If `den` is zero.
    pub fn new(num: u128, den: u128) -> Rational {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Rational { num: num / g, den: den / g }
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    pub fn den(&self) -> u128 {
        self.den
    }

    /// Decimal rendering with 4 significant digits.
    pub fn decimal4(&self) -> String {
        if self.num == 0 {
            return "0.000".to_string();
        }
        let v = self.num as f64 / self.den as f64;
        let decimals = (3 - v.log10().floor() as i32).max(0) as usize;
        format!("{v:.decimals$}")
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Values here stay far below the u128 cross-multiplication limit.
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Class tag of an atomic design: a G-family slice by weight parameter,
/// the padded H-family slice, or unclassifiable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomClass {
    Gw(i64),
    Hm,
    Unknown,
}

impl fmt::Display for AtomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomClass::Gw(w) => write!(f, "G{w}"),
            AtomClass::Hm => write!(f, "H"),
            AtomClass::Unknown => write!(f, "?"),
        }
    }
}

/// A [p, n, k] parameter triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamTriple {
    pub p: u128,
    pub n: usize,
    pub k: u128,
}

impl ParamTriple {
    pub fn rate(&self) -> Rational {
        Rational::new(self.k, self.p)
    }
}

impl fmt::Display for ParamTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.p, self.n, self.k)
    }
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min || n > 64 {
        return Err(CodError::InvalidArgument(format!(
            "n = {n} outside supported range {min}..=64"
        )));
    }
    Ok(())
}

/// The G-class atom triple for weight index `i` (valid for all i when n
/// is not divisible by 4; for i < n/2 otherwise).
fn g_triple(n: usize, i: i64) -> ParamTriple {
    ParamTriple {
        p: binomial(n as u64, i - 1) + binomial(n as u64, i + 1),
        n,
        k: binomial(n as u64, i),
    }
}

/// The half-unit triple shared by the H-class atom and (doubled) the
/// n = 2w G-class atom when n ≡ 0 (mod 4).
fn h_triple(n: usize) -> ParamTriple {
    let m = (n / 2) as u64;
    ParamTriple {
        p: binomial(n as u64, m as i64 - 1),
        n,
        k: binomial(n as u64 - 1, m as i64 - 1),
    }
}

/// Parameter triples of every atomic class at `n`, tagged: G-classes for
/// w = −1..⌊n/2⌋, plus the H class when n ≡ 0 (mod 4).
pub fn atomic_params(n: usize) -> Result<Vec<(AtomClass, ParamTriple)>> {
    check_n(n, 1)?;
    let mut out = Vec::new();
    for i in -1..=(n / 2) as i64 {
        out.push((AtomClass::Gw(i), g_triple(n, i)));
    }
    if n % 4 == 0 {
        out.push((AtomClass::Hm, h_triple(n)));
    }
    Ok(out)
}

/// A solution of the parameter feasibility system: how many atoms of
/// each class a design with the queried parameters must decompose into.
///
/// `t[i]` counts G-class units for weight index i−1 (so `t[0]` is the
/// count for w = −1). When n ≡ 0 (mod 4), the index n/2 is counted in
/// half-units — an n = 2w G-class atom contributes 2 there, keeping
/// `t[n/2 + 1]` even — and `t_h` separately counts H-class atoms, which
/// share the same half-unit triple. The same struct doubles as the
/// complete equivalence invariant of a first-type design ("signature"):
/// two first-type designs with equal n are equivalent iff their
/// signatures are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSolution {
    n: usize,
    t: Vec<u64>,
    t_h: Option<u64>,
}

impl ParamSolution {
    /// The all-zero solution skeleton for `n`.
    pub fn empty(n: usize) -> Result<ParamSolution> {
        check_n(n, 1)?;
        Ok(ParamSolution {
            n,
            t: vec![0; n / 2 + 2],
            t_h: if n % 4 == 0 { Some(0) } else { None },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Count at weight index `i` (−1 ≤ i ≤ ⌊n/2⌋).
    ///
    /// # Panics
    /// If `i` is out of range.
    pub fn t(&self, i: i64) -> u64 {
        assert!((-1..=(self.n / 2) as i64).contains(&i), "index {i} out of range");
        self.t[(i + 1) as usize]
    }

    pub fn set_t(&mut self, i: i64, count: u64) {
        assert!((-1..=(self.n / 2) as i64).contains(&i), "index {i} out of range");
        self.t[(i + 1) as usize] = count;
    }

    /// H-class count; None when n ≢ 0 (mod 4).
    pub fn t_h(&self) -> Option<u64> {
        self.t_h
    }

    pub fn set_t_h(&mut self, count: u64) {
        assert!(self.t_h.is_some(), "t_h undefined for n = {}", self.n);
        self.t_h = Some(count);
    }

    fn unit(&self, idx: usize) -> ParamTriple {
        let i = idx as i64 - 1;
        if self.n % 4 == 0 && i == (self.n / 2) as i64 {
            h_triple(self.n)
        } else {
            g_triple(self.n, i)
        }
    }

    /// Total row count of the catenation this solution describes.
    pub fn delay(&self) -> u128 {
        let mut p: u128 = 0;
        for (idx, &count) in self.t.iter().enumerate() {
            p += count as u128 * self.unit(idx).p;
        }
        if let Some(th) = self.t_h {
            p += th as u128 * h_triple(self.n).p;
        }
        p
    }

    /// Total variable count of the catenation this solution describes.
    pub fn vars(&self) -> u128 {
        let mut k: u128 = 0;
        for (idx, &count) in self.t.iter().enumerate() {
            k += count as u128 * self.unit(idx).k;
        }
        if let Some(th) = self.t_h {
            k += th as u128 * h_triple(self.n).k;
        }
        k
    }

    /// JSON rendering: all indices present, string keys.
    pub fn to_json(&self) -> String {
        let mut t = BTreeMap::new();
        for (idx, &count) in self.t.iter().enumerate() {
            t.insert(idx as i64 - 1, count);
        }
        let mut out = format!("{{\"n\":{},\"t\":{{", self.n);
        let mut first = true;
        for (i, count) in t {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!("\"{i}\":{count}"));
        }
        out.push('}');
        if let Some(th) = self.t_h {
            out.push_str(&format!(",\"t_h\":{th}"));
        }
        out.push('}');
        out
    }
}

impl fmt::Display for ParamSolution {
    /// Compact form listing only the nonzero counts, e.g. `t_0=1 t_1=1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (idx, &count) in self.t.iter().enumerate() {
            if count > 0 {
                if wrote {
                    write!(f, " ")?;
                }
                let i = idx as i64 - 1;
                if i < 0 {
                    write!(f, "t_{{{i}}}={count}")?;
                } else {
                    write!(f, "t_{i}={count}")?;
                }
                wrote = true;
            }
        }
        if let Some(th) = self.t_h {
            if th > 0 {
                if wrote {
                    write!(f, " ")?;
                }
                write!(f, "t_h={th}")?;
                wrote = true;
            }
        }
        if !wrote {
            write!(f, "(empty)")?;
        }
        Ok(())
    }
}

/// All solutions of the feasibility system for [p, n, k], in
/// lexicographic order of (t_{−1}, t_0, …, t_{⌊n/2⌋}, t_h). An empty
/// result means no first-type design with these parameters exists.
pub fn feasible(p: u64, n: usize, k: u64) -> Result<Vec<ParamSolution>> {
    check_n(n, 1)?;
    if p == 0 {
        return Err(CodError::InvalidArgument("p must be at least 1".into()));
    }
    let template = ParamSolution::empty(n)?;
    let units: Vec<ParamTriple> = (0..template.t.len()).map(|idx| template.unit(idx)).collect();
    let half_even = n % 4 == 0; // index n/2 counted in half-units, even only
    let mut out = Vec::new();
    let mut current = template.clone();

    fn dfs(
        idx: usize,
        rem_p: u128,
        rem_k: u128,
        units: &[ParamTriple],
        half_even: bool,
        current: &mut ParamSolution,
        out: &mut Vec<ParamSolution>,
    ) {
        if rem_k > rem_p {
            return; // every atom satisfies k ≤ p
        }
        if idx == units.len() {
            match current.t_h {
                None => {
                    if rem_p == 0 && rem_k == 0 {
                        out.push(current.clone());
                    }
                }
                Some(_) => {
                    let unit = units[units.len() - 1]; // H shares the half-unit
                    if rem_p % unit.p == 0 && rem_k == rem_p / unit.p * unit.k {
                        current.t_h = Some((rem_p / unit.p) as u64);
                        out.push(current.clone());
                        current.t_h = Some(0);
                    }
                }
            }
            return;
        }
        let unit = units[idx];
        let step: u128 = if half_even && idx == units.len() - 1 { 2 } else { 1 };
        let max_t = rem_p / unit.p;
        let mut t: u128 = 0;
        while t <= max_t {
            if unit.k * t > rem_k {
                break;
            }
            current.t[idx] = t as u64;
            dfs(
                idx + 1,
                rem_p - unit.p * t,
                rem_k - unit.k * t,
                units,
                half_even,
                current,
                out,
            );
            t += step;
        }
        current.t[idx] = 0;
    }

    dfs(0, p as u128, k as u128, &units, half_even, &mut current, &mut out);
    Ok(out)
}

/// The maximal achievable rate at `n`: (m+1)/(2m) with m = ⌈n/2⌉.
pub fn max_rate(n: usize) -> Result<Rational> {
    check_n(n, 2)?;
    let m = (n as u128).div_ceil(2);
    Ok(Rational::new(m + 1, 2 * m))
}

/// The minimal delay among maximal-rate designs at `n`: C(2m, m−1),
/// doubled when n ≡ 2 (mod 4).
pub fn min_delay(n: usize) -> Result<u128> {
    check_n(n, 2)?;
    let m = (n as u64).div_ceil(2);
    let base = binomial(2 * m, m as i64 - 1);
    Ok(if n % 4 == 2 { 2 * base } else { base })
}

/// One row of the rate-delay trade-off table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TradeoffRow {
    pub class: AtomClass,
    pub delay: u128,
    pub vars: u128,
    pub rate: Rational,
}

/// The trade-off table: one row per w ∈ 0..⌊n/2⌋ (rate strictly
/// increasing, delay nondecreasing), plus an H row when n ≡ 0 (mod 4).
pub fn tradeoff_table(n: usize) -> Result<Vec<TradeoffRow>> {
    check_n(n, 1)?;
    let mut rows = Vec::new();
    for w in 0..=(n / 2) as i64 {
        let t = g_triple(n, w);
        rows.push(TradeoffRow {
            class: AtomClass::Gw(w),
            delay: t.p,
            vars: t.k,
            rate: t.rate(),
        });
    }
    if n % 4 == 0 {
        let t = h_triple(n);
        rows.push(TradeoffRow {
            class: AtomClass::Hm,
            delay: t.p,
            vars: t.k,
            rate: t.rate(),
        });
    }
    Ok(rows)
}

fn w_label(class: AtomClass) -> String {
    match class {
        AtomClass::Gw(w) => w.to_string(),
        AtomClass::Hm => "H".to_string(),
        AtomClass::Unknown => "?".to_string(),
    }
}

/// CSV rendering of [`tradeoff_table`] with columns
/// `w,p,k,rate_num,rate_den,rate_decimal`; the padded-class row (when
/// present) carries `H` in the `w` column.
pub fn tradeoff_csv(n: usize) -> Result<String> {
    let mut out = String::from("w,p,k,rate_num,rate_den,rate_decimal\n");
    for row in tradeoff_table(n)? {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            w_label(row.class),
            row.delay,
            row.vars,
            row.rate.num(),
            row.rate.den(),
            row.rate.decimal4()
        ));
    }
    Ok(out)
}

/// JSON rendering of [`tradeoff_table`]: an array of row objects with
/// the same fields as the CSV columns. `w` is a number for the G-class
/// rows and the string `"H"` for the padded-class row.
pub fn tradeoff_json(n: usize) -> Result<String> {
    let rows: Vec<String> = tradeoff_table(n)?
        .into_iter()
        .map(|row| {
            let w = match row.class {
                AtomClass::Hm => "\"H\"".to_string(),
                class => w_label(class),
            };
            format!(
                "{{\"w\":{w},\"p\":{},\"k\":{},\"rate_num\":{},\"rate_den\":{},\"rate_decimal\":\"{}\"}}",
                row.delay,
                row.vars,
                row.rate.num(),
                row.rate.den(),
                row.rate.decimal4()
            )
        })
        .collect();
    Ok(format!("[{}]", rows.join(",")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_pascal_triangle() {
        let mut row = vec![1u128];
        for n in 0..=30u64 {
            for (r, &want) in row.iter().enumerate() {
                assert_eq!(binomial(n, r as i64), want, "C({n},{r})");
            }
            assert_eq!(binomial(n, -1), 0);
            assert_eq!(binomial(n, n as i64 + 1), 0);
            let mut next = vec![1u128];
            for w in row.windows(2) {
                next.push(w[0] + w[1]);
            }
            next.push(1);
            row = next;
        }
    }

    #[test]
    fn binomial_headline_values() {
        assert_eq!(binomial(14, 7), 3432);
        assert_eq!(binomial(14, 6), 3003);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(7, 4), 35);
    }

    #[test]
    fn rational_reduces_and_displays() {
        let r = Rational::new(8, 14);
        assert_eq!((r.num(), r.den()), (4, 7));
        assert_eq!(r.to_string(), "4/7");
        assert_eq!(Rational::new(0, 5), Rational::new(0, 9));
    }

    #[test]
    fn rational_decimal_presentation() {
        assert_eq!(Rational::new(4, 7).decimal4(), "0.5714");
        assert_eq!(Rational::new(14, 92).decimal4(), "0.1522");
        assert_eq!(Rational::new(1, 1).decimal4(), "1.000");
        assert_eq!(Rational::new(0, 3).decimal4(), "0.000");
        assert_eq!(Rational::new(3, 4).decimal4(), "0.7500");
    }

    #[test]
    fn atomic_params_n3_frozen() {
        let rows = atomic_params(3).unwrap();
        let triples: Vec<(AtomClass, u128, u128)> =
            rows.iter().map(|(c, t)| (*c, t.p, t.k)).collect();
        assert_eq!(
            triples,
            vec![
                (AtomClass::Gw(-1), 1, 0),
                (AtomClass::Gw(0), 3, 1),
                (AtomClass::Gw(1), 4, 3),
            ]
        );
    }

    #[test]
    fn atomic_params_n4_frozen() {
        let rows = atomic_params(4).unwrap();
        let triples: Vec<(AtomClass, u128, u128)> =
            rows.iter().map(|(c, t)| (*c, t.p, t.k)).collect();
        assert_eq!(
            triples,
            vec![
                (AtomClass::Gw(-1), 1, 0),
                (AtomClass::Gw(0), 4, 1),
                (AtomClass::Gw(1), 7, 4),
                (AtomClass::Gw(2), 8, 6),
                (AtomClass::Hm, 4, 3),
            ]
        );
    }

    #[test]
    fn feasible_433_unique_solution() {
        let sols = feasible(4, 3, 3).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].t(1), 1);
        assert_eq!(sols[0].t(0), 0);
        assert_eq!(sols[0].t(-1), 0);
        assert_eq!(sols[0].to_string(), "t_1=1");
    }

    #[test]
    fn feasible_232_is_empty() {
        assert!(feasible(2, 3, 2).unwrap().is_empty());
    }

    #[test]
    fn feasible_zero_k_single_zero_row() {
        for n in 1..=8 {
            let sols = feasible(1, n, 0).unwrap();
            assert_eq!(sols.len(), 1, "n = {n}");
            assert_eq!(sols[0].t(-1), 1);
            assert_eq!(sols[0].delay(), 1);
            assert_eq!(sols[0].vars(), 0);
        }
    }

    #[test]
    fn feasible_734_mixed_solution() {
        let sols = feasible(7, 3, 4).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!((sols[0].t(-1), sols[0].t(0), sols[0].t(1)), (0, 1, 1));
        assert_eq!(sols[0].to_string(), "t_0=1 t_1=1");
    }

    #[test]
    fn feasible_h_class_at_n4() {
        let sols = feasible(4, 4, 3).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].t_h(), Some(1));
        assert_eq!(sols[0].t(2), 0);
        assert_eq!(sols[0].to_json(), "{\"n\":4,\"t\":{\"-1\":0,\"0\":0,\"1\":0,\"2\":0},\"t_h\":1}");
    }

    #[test]
    fn feasible_double_atom_at_n4() {
        // [8, 4, 6] admits exactly two catenations: two H atoms, or one
        // n = 2w atom (which occupies two half-units, so t_2 stays even).
        let sols = feasible(8, 4, 6).unwrap();
        assert_eq!(sols.len(), 2);
        assert_eq!((sols[0].t(2), sols[0].t_h()), (0, Some(2)));
        assert_eq!((sols[1].t(2), sols[1].t_h()), (2, Some(0)));
        for s in &sols {
            assert_eq!(s.delay(), 8);
            assert_eq!(s.vars(), 6);
        }
    }

    #[test]
    fn feasible_solutions_reconstruct_parameters() {
        for n in 1..=6usize {
            for p in 1..=20u64 {
                for k in 0..=p {
                    for sol in feasible(p, n, k).unwrap() {
                        assert_eq!(sol.delay(), p as u128, "n={n} p={p} k={k}");
                        assert_eq!(sol.vars(), k as u128, "n={n} p={p} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn feasible_output_is_lexicographic() {
        let sols = feasible(12, 3, 4).unwrap();
        let keys: Vec<Vec<u64>> = sols
            .iter()
            .map(|s| (-1..=1).map(|i| s.t(i)).collect())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(!keys.is_empty());
    }

    #[test]
    fn max_rate_and_min_delay_headlines() {
        assert_eq!(max_rate(14).unwrap(), Rational::new(4, 7));
        assert_eq!(min_delay(14).unwrap(), 6006);
        assert_eq!(max_rate(5).unwrap(), Rational::new(2, 3));
        assert_eq!(min_delay(5).unwrap(), 15);
        assert_eq!(max_rate(4).unwrap(), Rational::new(3, 4));
        assert_eq!(min_delay(4).unwrap(), 4);
        assert_eq!(max_rate(2).unwrap(), Rational::new(1, 1));
        assert_eq!(min_delay(2).unwrap(), 2);
    }

    #[test]
    fn min_delay_doubles_exactly_when_n_is_2_mod_4() {
        for n in 2..=20usize {
            let m = (n as u64).div_ceil(2);
            let base = binomial(2 * m, m as i64 - 1);
            let want = if n % 4 == 2 { 2 * base } else { base };
            assert_eq!(min_delay(n).unwrap(), want, "n = {n}");
        }
    }

    #[test]
    fn tradeoff_n14_frozen_rows() {
        let rows = tradeoff_table(14).unwrap();
        assert_eq!(rows.len(), 8); // w = 0..=7, no H row
        let w1 = rows[1];
        assert_eq!((w1.delay, w1.vars), (92, 14));
        assert_eq!(w1.rate, Rational::new(7, 46));
        let w7 = rows[7];
        assert_eq!((w7.delay, w7.vars), (6006, 3432));
        assert_eq!(w7.rate, Rational::new(4, 7));
    }

    #[test]
    fn tradeoff_n2_alamouti_point() {
        let rows = tradeoff_table(2).unwrap();
        let last = rows.last().unwrap();
        assert_eq!((last.delay, last.vars), (2, 2));
        assert_eq!(last.rate, Rational::new(1, 1));
    }

    #[test]
    fn tradeoff_csv_and_json_column_shapes() {
        let csv = tradeoff_csv(14).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("w,p,k,rate_num,rate_den,rate_decimal"));
        assert_eq!(csv.lines().count(), 9);
        assert!(csv.contains("7,6006,3432,4,7,0.5714"));

        let csv4 = tradeoff_csv(4).unwrap();
        assert!(csv4.lines().last().unwrap().starts_with("H,4,3,"));

        let json = tradeoff_json(14).unwrap();
        assert!(json.starts_with('['));
        assert!(json.contains(
            "{\"w\":7,\"p\":6006,\"k\":3432,\"rate_num\":4,\"rate_den\":7,\"rate_decimal\":\"0.5714\"}"
        ));
        let json4 = tradeoff_json(4).unwrap();
        assert!(json4.contains("\"w\":\"H\""));
    }

    #[test]
    fn tradeoff_monotonicity_up_to_n20() {
        for n in 1..=20usize {
            let rows = tradeoff_table(n).unwrap();
            let g_rows: Vec<&TradeoffRow> = rows
                .iter()
                .filter(|r| matches!(r.class, AtomClass::Gw(_)))
                .collect();
            for pair in g_rows.windows(2) {
                assert!(pair[0].rate < pair[1].rate, "rate not increasing at n = {n}");
                assert!(pair[0].delay <= pair[1].delay, "delay decreasing at n = {n}");
            }
            // The H row, when present, attains the same maximal rate at
            // half the delay of the n = 2w G row.
            if n % 4 == 0 {
                let h = rows.last().unwrap();
                assert_eq!(h.rate, max_rate(n).unwrap());
                assert_eq!(h.delay * 2, g_rows.last().unwrap().delay);
            }
        }
    }

    #[test]
    fn generated_rates_stay_below_bound() {
        for n in 2..=20usize {
            let bound = max_rate(n).unwrap();
            for (_, triple) in atomic_params(n).unwrap() {
                if triple.k > 0 {
                    assert!(triple.rate() <= bound, "n = {n}, triple {triple}");
                }
            }
            // Attainment by the top G class (n ≢ 0 mod 4) or H class.
            let rows = tradeoff_table(n).unwrap();
            assert_eq!(rows.last().unwrap().rate, bound);
        }
    }

    #[test]
    fn param_solution_json_shape() {
        let sols = feasible(7, 3, 4).unwrap();
        assert_eq!(sols[0].to_json(), "{\"n\":3,\"t\":{\"-1\":0,\"0\":1,\"1\":1}}");
    }

    #[test]
    fn rejects_out_of_range_n() {
        assert!(max_rate(1).is_err());
        assert!(max_rate(65).is_err());
        assert!(feasible(1, 0, 0).is_err());
        assert!(tradeoff_table(0).is_err());
    }
}
