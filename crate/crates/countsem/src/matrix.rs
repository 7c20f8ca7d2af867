//! Attack matrix construction and matrix-vector products.
//!
//! The attack matrix `A` has `a[i][j] = 1` iff argument `j` attacks argument
//! `i` (the transpose of the attack graph's adjacency matrix), so row `i`
//! lists the direct attackers of `x_i`. The normalization factor `N` is the
//! infinity norm of `A`: the largest number of direct attackers of any
//! argument. The normalized matrix `A~ = A/N` never materializes; products
//! with it apply the scaling on the fly.

use crate::af::ArgumentationFramework;

/// Attack graphs are usually sparse; small ones are cheaper dense.
const DENSE_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// Row-major 0/1 entries, used below [`DENSE_LIMIT`].
    Dense(Vec<u8>),
    /// Compressed sparse rows: column indices per row, ascending.
    Csr { row_ptr: Vec<usize>, cols: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackMatrix {
    n: usize,
    norm: usize,
    repr: Repr,
}

impl AttackMatrix {
    pub fn from_framework(af: &ArgumentationFramework) -> Self {
        let n = af.argument_count();
        let rows: Vec<&[usize]> = (0..n)
            .map(|i| af.direct_attackers(i).expect("index in range"))
            .collect();
        let norm = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let repr = if n < DENSE_LIMIT {
            let mut entries = vec![0u8; n * n];
            for (i, row) in rows.iter().enumerate() {
                for &j in *row {
                    entries[i * n + j] = 1;
                }
            }
            Repr::Dense(entries)
        } else {
            let mut row_ptr = Vec::with_capacity(n + 1);
            let mut cols = Vec::new();
            row_ptr.push(0);
            for row in &rows {
                cols.extend_from_slice(row);
                row_ptr.push(cols.len());
            }
            Repr::Csr { row_ptr, cols }
        };
        Self { n, norm, repr }
    }

    /// Matrix dimension (number of arguments).
    pub fn dim(&self) -> usize {
        self.n
    }

    /// The normalization factor `N = max_i sum_j a[i][j]`.
    pub fn normalization(&self) -> usize {
        self.norm
    }

    /// Entry `a[i][j]`, 1 iff `j` attacks `i`.
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        assert!(i < self.n && j < self.n, "entry ({i}, {j}) out of range");
        match &self.repr {
            Repr::Dense(entries) => entries[i * self.n + j],
            Repr::Csr { row_ptr, cols } => {
                u8::from(cols[row_ptr[i]..row_ptr[i + 1]].binary_search(&j).is_ok())
            }
        }
    }

    /// Ascending column indices of the 1-entries in row `i` (the direct
    /// attackers of `x_i`).
    pub fn row(&self, i: usize) -> RowIter<'_> {
        assert!(i < self.n, "row {i} out of range");
        match &self.repr {
            Repr::Dense(entries) => RowIter::Dense {
                row: &entries[i * self.n..(i + 1) * self.n],
                j: 0,
            },
            Repr::Csr { row_ptr, cols } => RowIter::Csr {
                cols: cols[row_ptr[i]..row_ptr[i + 1]].iter(),
            },
        }
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.row(i).count()
    }

    /// `out[i] = scale * sum over attackers j of v[j]`, summed in ascending
    /// column order so results are bit-identical across runs.
    pub fn matvec_scaled(&self, v: &[f64], scale: f64, out: &mut [f64]) {
        assert_eq!(v.len(), self.n);
        assert_eq!(out.len(), self.n);
        for i in 0..self.n {
            let mut acc = 0.0;
            for j in self.row(i) {
                acc += v[j];
            }
            out[i] = scale * acc;
        }
    }

    /// Product with the normalized matrix: `out = (A/N) v`, the zero vector
    /// when `N = 0`.
    pub fn matvec_normalized(&self, v: &[f64], out: &mut [f64]) {
        let scale = if self.norm == 0 {
            0.0
        } else {
            1.0 / self.norm as f64
        };
        self.matvec_scaled(v, scale, out);
    }

    /// Exact integer product `A v`, `None` on overflow.
    pub fn matvec_i128(&self, v: &[i128]) -> Option<Vec<i128>> {
        assert_eq!(v.len(), self.n);
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut acc: i128 = 0;
            for j in self.row(i) {
                acc = acc.checked_add(v[j])?;
            }
            out.push(acc);
        }
        Some(out)
    }
}

pub enum RowIter<'a> {
    Dense { row: &'a [u8], j: usize },
    Csr { cols: std::slice::Iter<'a, usize> },
}

impl Iterator for RowIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        match self {
            RowIter::Dense { row, j } => {
                while *j < row.len() {
                    let current = *j;
                    *j += 1;
                    if row[current] != 0 {
                        return Some(current);
                    }
                }
                None
            }
            RowIter::Csr { cols } => cols.next().copied(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::ArgumentationFramework;
    use crate::testutil::{example1, random_af, seeded};

    #[test]
    fn example1_matrix_and_normalization() {
        let af = example1();
        let a = af.attack_matrix();
        let expected = [
            [0, 1, 0, 0],
            [0, 0, 1, 1],
            [0, 1, 1, 0],
            [0, 0, 0, 0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a.entry(i, j), expected[i][j], "entry ({i}, {j})");
            }
        }
        assert_eq!(a.normalization(), 2);
    }

    #[test]
    fn attack_free_framework_has_zero_matrix() {
        let af = ArgumentationFramework::new(vec!["a", "b"], []).unwrap();
        let a = af.attack_matrix();
        assert_eq!(a.normalization(), 0);
        let mut out = vec![f64::NAN; 2];
        a.matvec_normalized(&[1.0, 1.0], &mut out);
        assert_eq!(out, vec![0.0, 0.0]);
    }

    #[test]
    fn two_cycle_has_unit_normalization() {
        let af = ArgumentationFramework::new(vec!["a", "b"], [(0, 1), (1, 0)]).unwrap();
        let a = af.attack_matrix();
        assert_eq!(a.normalization(), 1);
        assert_eq!(a.entry(0, 1), 1);
        assert_eq!(a.entry(1, 0), 1);
        assert_eq!(a.entry(0, 0), 0);
        for i in 0..2 {
            assert_eq!(a.row_sum(i), 1);
        }
    }

    #[test]
    fn entries_agree_with_attack_relation() {
        use rand::Rng;
        let mut rng = seeded(5);
        for _ in 0..40 {
            let n = rng.random_range(1..=8usize);
            let af = random_af(&mut rng, n, 0.35);
            let a = af.attack_matrix();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        a.entry(i, j) == 1,
                        af.has_attack(j, i),
                        "entry ({i}, {j}) must mirror attack ({j}, {i})"
                    );
                }
            }
            let norm = (0..n).map(|i| a.row_sum(i)).max().unwrap_or(0);
            assert_eq!(a.normalization(), norm);
        }
    }

    #[test]
    fn csr_and_dense_agree_on_products() {
        // A framework above the dense limit exercises the CSR path; compare
        // against a manually built dense product.
        use rand::Rng;
        let mut rng = seeded(9);
        let n = 70;
        let af = random_af(&mut rng, n, 0.05);
        let a = af.attack_matrix();
        let v: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let mut got = vec![0.0; n];
        a.matvec_scaled(&v, 1.0, &mut got);
        for i in 0..n {
            let want: f64 = af
                .direct_attackers(i)
                .unwrap()
                .iter()
                .map(|&j| v[j])
                .sum();
            assert!((got[i] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn normalized_row_sums_bounded_by_one() {
        use rand::Rng;
        let mut rng = seeded(13);
        for _ in 0..30 {
            let n = rng.random_range(1..=10usize);
            let af = random_af(&mut rng, n, 0.4);
            let a = af.attack_matrix();
            if a.normalization() == 0 {
                continue;
            }
            let ones = vec![1.0; n];
            let mut out = vec![0.0; n];
            a.matvec_normalized(&ones, &mut out);
            let max = out.iter().cloned().fold(0.0, f64::max);
            assert!(out.iter().all(|&s| s <= 1.0 + 1e-12));
            assert!((max - 1.0).abs() < 1e-12, "some row must sum to exactly N");
        }
    }

    #[test]
    fn integer_product_detects_overflow() {
        let af =
            ArgumentationFramework::new(vec!["a", "b"], [(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
        let a = af.attack_matrix();
        let big = i128::MAX / 2 + 1;
        assert!(a.matvec_i128(&[big, big]).is_none());
        assert_eq!(a.matvec_i128(&[1, 2]), Some(vec![3, 3]));
    }
}
