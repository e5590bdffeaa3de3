//! Fixed-length bit vectors over F₂.
//!
//! An [`F2Vec`] holds L bits (1 ≤ L ≤ 64) at positions 1..=L, packed into
//! one machine word. Position 1 is the least significant bit, so
//! [`F2Vec::value`] is Σ v(i)·2^(i−1) and comparing two same-length
//! vectors compares them by value. Row and variable orderings throughout
//! the crate are value orderings, which is what turns "smallest variable
//! on a row" arguments into plain integer comparisons.
//!
//! ```
//! use codforge::f2vec::F2Vec;
//!
//! let e1 = F2Vec::unit(4, 1);
//! let e2 = F2Vec::unit(4, 2);
//! assert_eq!(e1.xor(&e2).to_string(), "(1,1,0,0)");
//! assert_eq!(e1.xor(&e2).value(), 3);
//! ```

use std::fmt;
use std::str::FromStr;

/// Maximum supported vector length.
pub const MAX_LEN: usize = 64;

/// A length-L bit vector over F₂ with 1-based positions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2Vec {
    len: u8,
    bits: u64,
}

impl F2Vec {
    fn assert_len(len: usize) {
        assert!(
            (1..=MAX_LEN).contains(&len),
            "vector length {len} outside 1..={MAX_LEN}"
        );
    }

    fn mask(len: usize) -> u64 {
        if len == MAX_LEN {
            u64::MAX
        } else {
            (1u64 << len) - 1
        }
    }

    /// The all-zeros vector of length `len`.
    ///
    /// # Panics
    /// If `len` is 0 or exceeds [`MAX_LEN`].
    pub fn zeros(len: usize) -> Self {
        Self::assert_len(len);
        F2Vec { len: len as u8, bits: 0 }
    }

    /// The all-ones vector of length `len` (the vector e).
    pub fn ones(len: usize) -> Self {
        Self::assert_len(len);
        F2Vec { len: len as u8, bits: Self::mask(len) }
    }

    /// The standard basis vector e_i: bit `i` set, all others zero.
    ///
    /// # Panics
    /// If `i` is outside 1..=len.
    pub fn unit(len: usize, i: usize) -> Self {
        Self::assert_len(len);
        assert!((1..=len).contains(&i), "unit index {i} outside 1..={len}");
        F2Vec { len: len as u8, bits: 1u64 << (i - 1) }
    }

    /// Builds a vector from its integer value (bit 1 least significant).
    ///
    /// # Panics
    /// If `bits` has a set bit above position `len`.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        Self::assert_len(len);
        assert!(
            bits & !Self::mask(len) == 0,
            "value {bits} does not fit in {len} bits"
        );
        F2Vec { len: len as u8, bits }
    }

    /// Builds a vector from an explicit coordinate list `(v(1), …, v(L))`.
    ///
    /// # Panics
    /// If the slice is empty, longer than [`MAX_LEN`], or contains a value
    /// other than 0 or 1.
    pub fn from_coords(coords: &[u8]) -> Self {
        Self::assert_len(coords.len());
        let mut bits = 0u64;
        for (idx, &c) in coords.iter().enumerate() {
            assert!(c <= 1, "coordinate {c} is not a bit");
            bits |= (c as u64) << idx;
        }
        F2Vec { len: coords.len() as u8, bits }
    }

    /// Vector length L (always ≥ 1, so there is no `is_empty`).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// True only for the all-zeros vector.
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// The bit at 1-based position `i`, as 0 or 1.
    ///
    /// # Panics
    /// If `i` is outside 1..=len.
    pub fn get(&self, i: usize) -> u8 {
        assert!(
            (1..=self.len()).contains(&i),
            "position {i} outside 1..={}",
            self.len()
        );
        ((self.bits >> (i - 1)) & 1) as u8
    }

    /// A copy with bit `i` set to `bit`.
    ///
    /// # Panics
    /// If `i` is out of range or `bit` is not 0 or 1.
    pub fn with_bit(&self, i: usize, bit: u8) -> Self {
        assert!(bit <= 1, "bit value {bit} is not a bit");
        assert!(
            (1..=self.len()).contains(&i),
            "position {i} outside 1..={}",
            self.len()
        );
        let m = 1u64 << (i - 1);
        F2Vec {
            len: self.len,
            bits: (self.bits & !m) | ((bit as u64) << (i - 1)),
        }
    }

    /// Bitwise XOR.
    ///
    /// # Panics
    /// If the lengths differ.
    pub fn xor(&self, other: &F2Vec) -> Self {
        assert_eq!(self.len, other.len, "xor of different lengths");
        F2Vec { len: self.len, bits: self.bits ^ other.bits }
    }

    /// XOR with the all-ones vector.
    pub fn complement(&self) -> Self {
        self.xor(&Self::ones(self.len()))
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Number of ones at positions s..=t (the windowed weight wt_{s,t}).
    ///
    /// # Panics
    /// If not 1 ≤ s ≤ t ≤ len.
    pub fn weight_range(&self, s: usize, t: usize) -> usize {
        assert!(
            1 <= s && s <= t && t <= self.len(),
            "weight range [{s}, {t}] invalid for length {}",
            self.len()
        );
        let window = Self::mask(t) & !Self::mask(s - 1);
        (self.bits & window).count_ones() as usize
    }

    /// Integer value Σ v(i)·2^(i−1).
    pub fn value(&self) -> u64 {
        self.bits
    }

    /// A copy truncated to the low `new_len` positions.
    ///
    /// # Panics
    /// If `new_len` is invalid or a dropped position holds a 1 (truncation
    /// is only used where the dropped bits are structurally zero).
    pub fn truncated(&self, new_len: usize) -> Self {
        Self::assert_len(new_len);
        assert!(new_len <= self.len(), "truncation cannot grow the vector");
        assert!(
            self.bits & !Self::mask(new_len) == 0,
            "truncation would drop a set bit"
        );
        F2Vec { len: new_len as u8, bits: self.bits }
    }

    /// A copy zero-extended to `new_len` positions.
    ///
    /// # Panics
    /// If `new_len` is invalid or smaller than the current length.
    pub fn extended(&self, new_len: usize) -> Self {
        Self::assert_len(new_len);
        assert!(new_len >= self.len(), "extension cannot shrink the vector");
        F2Vec { len: new_len as u8, bits: self.bits }
    }

    /// All 2^L vectors of length `len` in increasing value order.
    ///
    /// # Panics
    /// If `len` exceeds 25 (2^25 vectors is past any use in this crate).
    pub fn enumerate_all(len: usize) -> Vec<F2Vec> {
        Self::assert_len(len);
        assert!(len <= 25, "enumerate_all({len}) would materialize 2^{len} vectors");
        (0..1u64 << len).map(|b| F2Vec { len: len as u8, bits: b }).collect()
    }

    /// All C(L,w) weight-`w` vectors of length `len` in increasing value
    /// order. Out-of-range `w` (negative or above L) yields an empty list,
    /// mirroring the binomial convention C(L,w) = 0.
    pub fn enumerate_weight(len: usize, w: i64) -> Vec<F2Vec> {
        Self::assert_len(len);
        if w < 0 || w as usize > len {
            return Vec::new();
        }
        let w = w as usize;
        if w == 0 {
            return vec![Self::zeros(len)];
        }
        // Gosper's hack: step to the next-larger word with the same
        // population count until the window is exhausted.
        let mask = Self::mask(len);
        let mut out = Vec::new();
        let mut v: u64 = (1u64 << w) - 1;
        while v <= mask {
            out.push(F2Vec { len: len as u8, bits: v });
            let c = v & v.wrapping_neg();
            let r = match v.checked_add(c) {
                Some(r) => r,
                None => break, // carried out of the 64-bit word
            };
            v = (((r ^ v) >> 2) / c) | r;
        }
        out
    }
}

impl fmt::Display for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 1..=self.len() {
            if i > 1 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for F2Vec {
    type Err = String;

    /// Parses the display form `(b1,b2,...,bL)`. Whitespace around tokens
    /// is tolerated.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("expected parenthesized vector, got {s:?}"))?;
        let mut coords = Vec::new();
        for part in inner.split(',') {
            match part.trim() {
                "0" => coords.push(0u8),
                "1" => coords.push(1u8),
                other => return Err(format!("bad coordinate {other:?} in {s:?}")),
            }
        }
        if coords.is_empty() || coords.len() > MAX_LEN {
            return Err(format!("vector length {} outside 1..={MAX_LEN}", coords.len()));
        }
        Ok(F2Vec::from_coords(&coords))
    }
}
