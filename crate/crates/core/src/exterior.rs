//! Exterior algebra on `n` degree-one generators.
//!
//! The basis of `Λ^k` is the list of strictly increasing `k`-subsets of
//! `0..n` in lexicographic order; every matrix between exterior powers in
//! this crate uses that order. The product of two basis monomials carries
//! the sign of the shuffle that sorts the concatenated indices.

use std::fmt;

use num_traits::Zero;

use crate::linalg::Matrix;
use crate::rational::Rational;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}

/// Strictly increasing list of generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// `None` unless the indices are strictly increasing.
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        if indices.windows(2).all(|w| w[0] < w[1]) {
            Some(MultiIndex(indices))
        } else {
            None
        }
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All `C(n, k)` basis monomials of `Λ^k` in lexicographic order.
pub fn wedge_basis(n: usize, k: usize) -> Vec<MultiIndex> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(MultiIndex(cur.clone()));
        // advance to the next k-subset in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Position of `idx` inside `wedge_basis(n, idx.degree())`.
pub fn lex_rank(n: usize, idx: &MultiIndex) -> usize {
    let k = idx.degree();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, &c) in idx.0.iter().enumerate() {
        for v in prev..c {
            rank += binomial(n - 1 - v, k - 1 - pos);
        }
        prev = c + 1;
    }
    rank
}

/// Sorts a sequence of generator indices. Returns the permutation sign and
/// the sorted monomial, or `None` when an index repeats (the product
/// vanishes).
pub fn sort_with_sign(seq: &[usize]) -> Option<(i32, MultiIndex)> {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            match seq[i].cmp(&seq[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, MultiIndex(sorted)))
}

/// Product of two basis monomials.
pub fn wedge_monomials(a: &MultiIndex, b: &MultiIndex) -> Option<(i32, MultiIndex)> {
    let seq: Vec<usize> = a.0.iter().chain(&b.0).copied().collect();
    sort_with_sign(&seq)
}

fn signed(q: &Rational, sign: i32) -> Rational {
    if sign < 0 {
        -q.clone()
    } else {
        q.clone()
    }
}

/// Exterior algebra `Λ•(Q^n)` with coefficient vectors in lexicographic bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExteriorAlgebra {
    n: usize,
}

impl ExteriorAlgebra {
    pub fn new(n: usize) -> Self {
        ExteriorAlgebra { n }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn dim(&self, k: usize) -> usize {
        binomial(self.n, k)
    }

    pub fn basis(&self, k: usize) -> Vec<MultiIndex> {
        wedge_basis(self.n, k)
    }

    pub fn index_of(&self, idx: &MultiIndex) -> usize {
        lex_rank(self.n, idx)
    }

    /// Coefficient vector of a single basis monomial.
    pub fn monomial(&self, idx: &MultiIndex) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim(idx.degree())];
        v[self.index_of(idx)] = crate::rational::int(1);
        v
    }

    /// `a ∧ b` for `a ∈ Λ^p`, `b ∈ Λ^q`.
    pub fn wedge(&self, p: usize, a: &[Rational], q: usize, b: &[Rational]) -> Vec<Rational> {
        assert_eq!(a.len(), self.dim(p), "left factor is not in Λ^{p}");
        assert_eq!(b.len(), self.dim(q), "right factor is not in Λ^{q}");
        let mut out = vec![Rational::zero(); self.dim(p + q)];
        if p + q > self.n {
            return out;
        }
        let left = self.basis(p);
        let right = self.basis(q);
        for (ia, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (ib, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                if let Some((sign, m)) = wedge_monomials(&left[ia], &right[ib]) {
                    out[self.index_of(&m)] += signed(&(ca * cb), sign);
                }
            }
        }
        out
    }

    /// Matrix of `ω ↦ ω ∧ c` from `Λ^j` to `Λ^{j+q}` for a fixed `c ∈ Λ^q`.
    pub fn right_multiplication(&self, j: usize, q: usize, c: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.dim(j + q), self.dim(j));
        for (col, idx) in self.basis(j).iter().enumerate() {
            let w = self.wedge(j, &self.monomial(idx), q, c);
            for (row, val) in w.into_iter().enumerate() {
                m[(row, col)] = val;
            }
        }
        m
    }

    /// Extends a map on generators `Λ^1 -> Λ^2` (columns of `on_generators`,
    /// shape `C(n,2) x n`) to the degree +1 derivation `Λ^k -> Λ^{k+1}`:
    /// `d(α∧β) = dα∧β + (-1)^{|α|} α∧dβ`.
    pub fn derivation(&self, on_generators: &Matrix, k: usize) -> Matrix {
        assert_eq!(on_generators.rows(), self.dim(2));
        assert_eq!(on_generators.cols(), self.n);
        let pairs = self.basis(2);
        // sparse images of each generator
        let images: Vec<Vec<(usize, usize, Rational)>> = (0..self.n)
            .map(|g| {
                (0..pairs.len())
                    .filter(|&r| !on_generators[(r, g)].is_zero())
                    .map(|r| {
                        let ij = pairs[r].indices();
                        (ij[0], ij[1], on_generators[(r, g)].clone())
                    })
                    .collect()
            })
            .collect();
        let mut m = Matrix::zeros(self.dim(k + 1), self.dim(k));
        if k >= self.n {
            return m;
        }
        let mut seq = Vec::with_capacity(k + 1);
        for (col, idx) in self.basis(k).iter().enumerate() {
            let ids = idx.indices();
            for (pos, &g) in ids.iter().enumerate() {
                let pos_sign = if pos % 2 == 0 { 1 } else { -1 };
                for (a, b, coef) in &images[g] {
                    seq.clear();
                    seq.extend_from_slice(&ids[..pos]);
                    seq.push(*a);
                    seq.push(*b);
                    seq.extend_from_slice(&ids[pos + 1..]);
                    if let Some((sign, m_idx)) = sort_with_sign(&seq) {
                        m[(self.index_of(&m_idx), col)] += signed(coef, sign * pos_sign);
                    }
                }
            }
        }
        m
    }

    /// `Λ^k` of a linear map `Q^n -> Q^n` given on generators (columns of
    /// `a`): the image of `e_J` is the wedge of the images of its factors.
    pub fn induced_map(&self, a: &Matrix, k: usize) -> Matrix {
        assert_eq!((a.rows(), a.cols()), (self.n, self.n));
        let cols = a.columns();
        let mut m = Matrix::zeros(self.dim(k), self.dim(k));
        for (col, idx) in self.basis(k).iter().enumerate() {
            let mut acc = vec![crate::rational::int(1)];
            for (deg, &g) in idx.indices().iter().enumerate() {
                acc = self.wedge(deg, &acc, 1, &cols[g]);
            }
            for (row, val) in acc.into_iter().enumerate() {
                m[(row, col)] = val;
            }
        }
        m
    }
}
