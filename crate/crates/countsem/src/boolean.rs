//! Classical semantics by boolean matrix algebra.
//!
//! A subset `S` of the arguments is encoded as a boolean column vector `g`
//! with bit `i` set iff `x_i` is in `S`. With the attack matrix read as a
//! boolean matrix, the OR-AND product `A (.) g` marks the arguments attacked
//! by `S`, the transposed product marks the attackers of `S`, and the
//! characteristic function becomes `not(A (.) not(A (.) g))`. Iterating it
//! from the empty set climbs to the grounded extension; conflict-free fixed
//! points of the complement operator `not(A (.) g)` are exactly the stable
//! extensions.
//!
//! Vectors and matrix rows are packed into 64-bit words, so one product row
//! is a word-wise AND plus a nonzero test.

use std::sync::OnceLock;

use crate::af::{ArgSet, ArgumentationFramework, SizeCapError};
use crate::matrix::AttackMatrix;

/// A subset of `n` arguments as a packed boolean vector.
///
/// Bits beyond `n` in the last word are kept zero, so equality and emptiness
/// are plain word comparisons.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoolSet {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl BoolSet {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn ones(n: usize) -> Self {
        let mut set = Self::zeros(n);
        for word in &mut set.words {
            *word = u64::MAX;
        }
        set.mask_tail();
        set
    }

    fn mask_tail(&mut self) {
        let tail = self.n % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        if self.n == 0 {
            self.words.clear();
        }
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::zeros(n);
        for i in indices {
            set.set(i, true);
        }
        set
    }

    pub fn from_argset(n: usize, set: &ArgSet) -> Self {
        Self::from_indices(n, set.iter())
    }

    /// Bits of `mask` as members; used by subset scans.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        let mut set = Self::zeros(n);
        if n > 0 {
            set.words[0] = mask;
            set.mask_tail();
        }
        set
    }

    pub fn to_argset(&self) -> ArgSet {
        self.iter_ones().collect()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.n, "bit {i} out of range 0..{}", self.n);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.n, "bit {i} out of range 0..{}", self.n);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let bit = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + bit)
            })
        })
    }

    pub fn intersects(&self, other: &BoolSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .any(|(a, b)| a & b != 0)
    }

    pub fn intersection(&self, other: &BoolSet) -> BoolSet {
        assert_eq!(self.n, other.n);
        BoolSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }
}

/// The attack matrix as packed boolean rows, with the transpose built lazily
/// for backward images.
#[derive(Debug)]
pub struct BoolMatrix {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
    transposed: OnceLock<Box<BoolMatrix>>,
}

impl BoolMatrix {
    pub fn from_framework(af: &ArgumentationFramework) -> Self {
        Self::from_matrix(af.attack_matrix())
    }

    pub fn from_matrix(a: &AttackMatrix) -> Self {
        let n = a.dim();
        let stride = word_count(n);
        let mut rows = vec![0u64; n * stride];
        for i in 0..n {
            for j in a.row(i) {
                rows[i * stride + j / 64] |= 1 << (j % 64);
            }
        }
        Self {
            n,
            stride,
            rows,
            transposed: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.rows[i * self.stride..(i + 1) * self.stride]
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n);
        self.row_words(i)[j / 64] >> (j % 64) & 1 == 1
    }

    /// The transpose, built once on first use.
    pub fn transpose(&self) -> &BoolMatrix {
        self.transposed.get_or_init(|| {
            let mut t = BoolMatrix {
                n: self.n,
                stride: self.stride,
                rows: vec![0u64; self.n * self.stride],
                transposed: OnceLock::new(),
            };
            for i in 0..self.n {
                for j in 0..self.n {
                    if self.entry(i, j) {
                        t.rows[j * self.stride + i / 64] |= 1 << (i % 64);
                    }
                }
            }
            Box::new(t)
        })
    }
}

/// OR-AND product: bit `i` of the result is set iff row `i` of `m` shares a
/// set bit with `g`.
pub fn bool_product(m: &BoolMatrix, g: &BoolSet) -> BoolSet {
    assert_eq!(m.dim(), g.len(), "dimension mismatch");
    let mut out = BoolSet::zeros(m.n);
    for i in 0..m.n {
        let hit = m
            .row_words(i)
            .iter()
            .zip(&g.words)
            .any(|(row, val)| row & val != 0);
        if hit {
            out.words[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

/// Bitwise complement `e - g`.
pub fn bool_negation(g: &BoolSet) -> BoolSet {
    let mut out = BoolSet {
        n: g.n,
        words: g.words.iter().map(|w| !w).collect(),
    };
    out.mask_tail();
    out
}

/// Arguments attacked by the encoded set: `A (.) g`.
pub fn forward_image(m: &BoolMatrix, g: &BoolSet) -> BoolSet {
    bool_product(m, g)
}

/// Arguments attacking the encoded set: `transpose(A) (.) g`.
pub fn backward_image(m: &BoolMatrix, g: &BoolSet) -> BoolSet {
    bool_product(m.transpose(), g)
}

/// Boolean characteristic function `not(A (.) not(A (.) g))`: the arguments
/// defended by the encoded set.
pub fn characteristic(m: &BoolMatrix, g: &BoolSet) -> BoolSet {
    bool_negation(&bool_product(m, &bool_negation(&bool_product(m, g))))
}

/// Least fixed point of the characteristic function, reached from the empty
/// set. The iteration is monotone on a finite lattice and stops within
/// `n + 1` rounds; the result is the grounded extension.
pub fn grounded_fixpoint(m: &BoolMatrix) -> BoolSet {
    let mut current = BoolSet::zeros(m.n);
    loop {
        let next = characteristic(m, &current);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Complement-of-attacked operator `not(A (.) g)`: arguments not attacked by
/// the encoded set.
pub fn stable_operator(m: &BoolMatrix, g: &BoolSet) -> BoolSet {
    bool_negation(&bool_product(m, g))
}

/// Scans all subsets in ascending encoding order and returns the
/// conflict-free fixed points of the complement operator; these are exactly
/// the stable extensions.
pub fn find_stable_by_operator(
    m: &BoolMatrix,
    cap: usize,
) -> Result<Vec<BoolSet>, SizeCapError> {
    let n = m.n;
    if n > cap || n > 63 {
        return Err(SizeCapError { n, cap: cap.min(63) });
    }
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let g = BoolSet::from_mask(n, mask);
        let attacked = bool_product(m, &g);
        if attacked.intersects(&g) {
            continue; // not conflict-free
        }
        if bool_negation(&attacked) == g {
            found.push(g);
        }
    }
    Ok(found)
}

/// Signum of a nonnegative integer vector as a boolean set. Attack matrices
/// and subset encodings are nonnegative, so negative entries indicate a
/// broken caller.
pub fn sgn_vec(values: &[i64]) -> BoolSet {
    let mut out = BoolSet::zeros(values.len());
    for (i, &v) in values.iter().enumerate() {
        assert!(v >= 0, "signum input must be nonnegative, got {v} at {i}");
        if v > 0 {
            out.set(i, true);
        }
    }
    out
}

/// The arithmetic route to the boolean product: `sgn(A g)` over integers.
pub fn sgn_product_int(a: &AttackMatrix, g: &BoolSet) -> BoolSet {
    assert_eq!(a.dim(), g.len());
    let counts: Vec<i64> = (0..a.dim())
        .map(|i| a.row(i).filter(|&j| g.get(j)).count() as i64)
        .collect();
    sgn_vec(&counts)
}

/// The arithmetic route through the damped normalized matrix: `sgn(alpha/N A
/// g)` over reals. Positive scaling cannot change signs, so this must agree
/// with [`sgn_product_int`].
pub fn sgn_product_scaled(a: &AttackMatrix, alpha: f64, g: &BoolSet) -> BoolSet {
    assert_eq!(a.dim(), g.len());
    let n = a.dim();
    let scale = if a.normalization() == 0 {
        0.0
    } else {
        alpha / a.normalization() as f64
    };
    let indicator: Vec<f64> = (0..n).map(|j| if g.get(j) { 1.0 } else { 0.0 }).collect();
    let mut product = vec![0.0; n];
    a.matvec_scaled(&indicator, scale, &mut product);
    let mut out = BoolSet::zeros(n);
    for (i, &v) in product.iter().enumerate() {
        assert!(v >= 0.0, "scaled product must stay nonnegative");
        if v > 0.0 {
            out.set(i, true);
        }
    }
    out
}
