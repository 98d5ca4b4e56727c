//! Exact ranks of sparse integer matrices by incremental row echelon form.

use std::collections::HashMap;

use rug::Integer;

/// Sorted (column, value) pairs with nonzero values.
pub type SparseRow = Vec<(usize, i64)>;

/// Rank over the two-element field.
pub fn rank_f2(rows: &[SparseRow]) -> usize {
    let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut rank = 0;
    for row in rows {
        let mut r: Vec<usize> = row.iter().filter(|(_, v)| v % 2 != 0).map(|&(c, _)| c).collect();
        while let Some(&lead) = r.first() {
            match pivots.get(&lead) {
                Some(p) => r = xor(&r, p),
                None => {
                    pivots.insert(lead, r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn xor(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Coefficient ring for fraction-free elimination; `None` signals overflow.
trait Exact: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// a·x − b·y
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Exact for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), other.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a as i128
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Exact for Integer {
    fn from_i64(v: i64) -> Self {
        Integer::from(v)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(Integer::from(a * x) - Integer::from(b * y))
    }
    fn gcd(&self, other: &Self) -> Self {
        self.clone().gcd(other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self.clone().div_exact(d)
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

fn combine<T: Exact>(row: &[(usize, T)], pivot: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let (col, v) = match (row.get(i), pivot.get(j)) {
            (Some(r), Some(p)) if r.0 == p.0 => {
                i += 1;
                j += 1;
                (r.0, T::cross(a, &r.1, b, &p.1)?)
            }
            (Some(r), p) if p.is_none_or(|p| r.0 < p.0) => {
                i += 1;
                (r.0, T::cross(a, &r.1, b, &zero)?)
            }
            (_, Some(p)) => {
                j += 1;
                (p.0, T::cross(a, &zero, b, &p.1)?)
            }
            _ => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    if let Some(first) = out.first() {
        let mut g = first.1.clone();
        for (_, v) in &out[1..] {
            if g.is_unit() {
                break;
            }
            g = g.gcd(v);
        }
        if !g.is_unit() {
            for e in &mut out {
                e.1 = e.1.div_exact(&g);
            }
        }
    }
    Some(out)
}

fn rank_exact<T: Exact>(rows: &[SparseRow]) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    let mut rank = 0;
    for row in rows {
        let mut r: Vec<(usize, T)> = row.iter().map(|&(c, v)| (c, T::from_i64(v))).collect();
        while let Some(lead) = r.first().map(|e| e.0) {
            match pivots.get(&lead) {
                Some(p) => r = combine(&r, p)?,
                None => {
                    pivots.insert(lead, r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// Rank over the rationals, by fraction-free elimination on integers.
pub fn rank_rational(rows: &[SparseRow]) -> usize {
    rank_exact::<i128>(rows).unwrap_or_else(|| rank_exact::<Integer>(rows).expect("bignum never overflows"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_rank_rational(m: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<rug::Rational>> =
            m.iter().map(|r| r.iter().map(|&v| rug::Rational::from(v)).collect()).collect();
        let cols = a.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && a[r][c] != 0 {
                    let f = rug::Rational::from(&a[r][c] / &a[rank][c]);
                    for k in 0..cols {
                        let sub = rug::Rational::from(&f * &a[rank][k]);
                        a[r][k] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn to_sparse(m: &[Vec<i64>]) -> Vec<SparseRow> {
        m.iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        let m = vec![vec![2, 0, 2], vec![0, 2, 2], vec![2, 2, 4]];
        assert_eq!(rank_rational(&to_sparse(&m)), 2);
        assert_eq!(rank_f2(&to_sparse(&m)), 0);
        let m = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank_rational(&to_sparse(&m)), 3);
        assert_eq!(rank_f2(&to_sparse(&m)), 2);
    }

    #[test]
    fn bignum_fallback() {
        let big = 1i64 << 62;
        let m = vec![vec![big, 1, 0], vec![1, big, 1], vec![0, 1, big], vec![big, big, big]];
        assert_eq!(rank_exact::<i128>(&to_sparse(&m)), None);
        assert_eq!(rank_rational(&to_sparse(&m)), 3);
    }

    proptest! {
        #[test]
        fn rational_rank_matches_dense(m in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..7)) {
            prop_assert_eq!(rank_rational(&to_sparse(&m)), dense_rank_rational(&m));
            prop_assert!(rank_f2(&to_sparse(&m)) <= rank_rational(&to_sparse(&m)));
        }
    }
}
