//! Bit-packed linear algebra over the two-element field.

use std::collections::BTreeMap;
use std::fmt;

const WORD: usize = 64;

/// A vector over F2 packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_ones<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// `self += other`.
    #[inline]
    pub fn add_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + b)
            })
        })
    }

    /// Dot product.
    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "[{s}]")
    }
}

/// A subspace of `F2^n` stored as an echelon basis keyed by pivot (first set bit).
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: BTreeMap<usize, BitVec>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` modulo the subspace; the result has no bits at pivot positions.
    pub fn reduce(&self, v: &mut BitVec) {
        for (&p, row) in &self.rows {
            if v.get(p) {
                v.add_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v`; returns the pivot if it was independent.
    pub fn insert(&mut self, mut v: BitVec) -> Option<usize> {
        self.reduce(&mut v);
        let p = v.first_one()?;
        self.rows.insert(p, v);
        Some(p)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn basis(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.values()
    }

    /// Fully reduced echelon basis, ordered by pivot.
    pub fn reduced_basis(&self) -> Vec<BitVec> {
        let mut rows: Vec<(usize, BitVec)> =
            self.rows.iter().map(|(&p, r)| (p, r.clone())).collect();
        for i in (0..rows.len()).rev() {
            let (p, row) = (rows[i].0, rows[i].1.clone());
            for (_, other) in rows.iter_mut().take(i) {
                if other.get(p) {
                    other.add_assign(&row);
                }
            }
        }
        rows.into_iter().map(|(_, r)| r).collect()
    }
}

/// Result of eliminating the images of a basis under a linear map.
#[derive(Clone, Debug)]
pub struct Elimination {
    /// Span of the images.
    pub image: Subspace,
    /// Kernel basis in the source, in echelon form ordered by pivot.
    pub kernel: Vec<BitVec>,
}

/// Eliminates `images[i]` (image of the i-th source basis vector, all of length `target`).
pub fn eliminate(images: &[BitVec], target: usize) -> Elimination {
    let source = images.len();
    let mut rows: BTreeMap<usize, (BitVec, BitVec)> = BTreeMap::new();
    let mut kernel = Subspace::new(source);
    for (i, img) in images.iter().enumerate() {
        debug_assert_eq!(img.len(), target);
        let mut v = img.clone();
        let mut combo = BitVec::unit(source, i);
        for (&p, (r, c)) in &rows {
            if v.get(p) {
                v.add_assign(r);
                combo.add_assign(c);
            }
        }
        match v.first_one() {
            Some(p) => {
                rows.insert(p, (v, combo));
            }
            None => {
                kernel.insert(combo);
            }
        }
    }
    let mut image = Subspace::new(target);
    for (_, (r, _)) in rows {
        image.insert(r);
    }
    Elimination {
        image,
        kernel: kernel.reduced_basis(),
    }
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[BitVec]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut s = Subspace::new(first.len());
    for v in vectors {
        s.insert(v.clone());
    }
    s.dim()
}

/// Solves `sum_i x_i * columns[i] = target`, returning one solution if any.
pub fn solve(columns: &[BitVec], target: &BitVec) -> Option<BitVec> {
    let n = columns.len();
    let mut rows: BTreeMap<usize, (BitVec, BitVec)> = BTreeMap::new();
    for (i, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = BitVec::unit(n, i);
        for (&p, (r, c)) in &rows {
            if v.get(p) {
                v.add_assign(r);
                combo.add_assign(c);
            }
        }
        if let Some(p) = v.first_one() {
            rows.insert(p, (v, combo));
        }
    }
    let mut v = target.clone();
    let mut x = BitVec::zeros(n);
    for (&p, (r, c)) in &rows {
        if v.get(p) {
            v.add_assign(r);
            x.add_assign(c);
        }
    }
    v.is_zero().then_some(x)
}

/// A dense matrix acting on column vectors: `rows` many rows of length `cols`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        debug_assert_eq!(self.cols, other.cols);
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.add_assign(b);
        }
    }

    /// `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.nrows());
        let mut out = Matrix::zeros(self.nrows(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.ones() {
                out.rows[r].add_assign(&other.rows[k]);
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &BitVec) -> BitVec {
        debug_assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// Column `c` as a vector.
    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_small_map() {
        // e0 -> 1, e1 -> 1, e2 -> 0 in F2^1
        let images = vec![
            BitVec::from_ones(1, [0]),
            BitVec::from_ones(1, [0]),
            BitVec::zeros(1),
        ];
        let e = eliminate(&images, 1);
        assert_eq!(e.image.dim(), 1);
        assert_eq!(e.kernel.len(), 2);
        for k in &e.kernel {
            let mut sum = BitVec::zeros(1);
            for i in k.ones() {
                sum.add_assign(&images[i]);
            }
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn solve_finds_combination() {
        let cols = vec![BitVec::from_ones(3, [0, 1]), BitVec::from_ones(3, [1, 2])];
        let x = solve(&cols, &BitVec::from_ones(3, [0, 2])).unwrap();
        assert!(x.get(0) && x.get(1));
        assert!(solve(&cols, &BitVec::from_ones(3, [0])).is_none());
    }

    #[test]
    fn ones_iterates_across_words() {
        let v = BitVec::from_ones(200, [3, 64, 130, 199]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 64, 130, 199]);
        assert_eq!(v.first_one(), Some(3));
        assert_eq!(v.count_ones(), 4);
    }

    #[test]
    fn matrix_product_and_transpose() {
        let mut a = Matrix::zeros(2, 3);
        a.set(0, 1, true);
        a.set(1, 2, true);
        let t = a.transpose();
        let p = a.mul(&t);
        assert_eq!(p, Matrix::identity(2));
        assert_eq!(a.rank(), 2);
    }
}
