//! Exact integer linear algebra: echelon lattices and Smith normal form.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer combination of input rows.
pub type Witness = BTreeMap<usize, BigInt>;

fn axpy(dst: &mut [BigInt], k: &BigInt, src: &[BigInt]) {
    if k.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += k * s;
        }
    }
}

fn waxpy(dst: &mut Witness, k: &BigInt, src: &Witness) {
    if k.is_zero() {
        return;
    }
    for (&i, s) in src {
        let e = dst.entry(i).or_insert_with(BigInt::zero);
        *e += k * s;
        if e.is_zero() {
            dst.remove(&i);
        }
    }
}

fn combine_witness(a: &BigInt, wa: &Witness, b: &BigInt, wb: &Witness) -> Witness {
    let mut out = Witness::new();
    waxpy(&mut out, a, wa);
    waxpy(&mut out, b, wb);
    out
}

#[derive(Clone, Debug)]
struct Row {
    v: Vec<BigInt>,
    w: Witness,
}

/// A sublattice of `Z^n` kept in row echelon form with positive pivots.
/// Optionally tracks every basis row as a combination of inserted rows.
#[derive(Clone, Debug)]
pub struct Lattice {
    ncols: usize,
    track: bool,
    rows: BTreeMap<usize, Row>,
    inserted: usize,
}

impl Lattice {
    pub fn new(ncols: usize, track: bool) -> Lattice {
        Lattice { ncols, track, rows: BTreeMap::new(), inserted: 0 }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a generator; returns its index among inserted rows.
    pub fn insert(&mut self, v: Vec<BigInt>) -> usize {
        assert_eq!(v.len(), self.ncols);
        let idx = self.inserted;
        self.inserted += 1;
        let mut w = Witness::new();
        if self.track {
            w.insert(idx, BigInt::one());
        }
        let mut cur = Row { v, w };
        while let Some(p) = cur.v.iter().position(|x| !x.is_zero()) {
            let Some(row) = self.rows.get_mut(&p) else {
                if cur.v[p].is_negative() {
                    cur.v.iter_mut().for_each(|x| *x = -&*x);
                    cur.w.values_mut().for_each(|x| *x = -&*x);
                }
                self.rows.insert(p, cur);
                return idx;
            };
            let a = row.v[p].clone();
            let b = cur.v[p].clone();
            if b.is_multiple_of(&a) {
                let q = -(&b / &a);
                axpy(&mut cur.v, &q, &row.v);
                if self.track {
                    waxpy(&mut cur.w, &q, &row.w);
                }
            } else {
                let e = a.extended_gcd(&b);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let bg = &b / &g;
                let ag = -(&a / &g);
                let new_row: Vec<BigInt> = row.v.iter().zip(&cur.v).map(|(r, c)| &x * r + &y * c).collect();
                let new_cur: Vec<BigInt> = row.v.iter().zip(&cur.v).map(|(r, c)| &bg * r + &ag * c).collect();
                if self.track {
                    let nw = combine_witness(&x, &row.w, &y, &cur.w);
                    cur.w = combine_witness(&bg, &row.w, &ag, &cur.w);
                    row.w = nw;
                }
                row.v = new_row;
                cur.v = new_cur;
                if row.v[p].is_negative() {
                    row.v.iter_mut().for_each(|x| *x = -&*x);
                    row.w.values_mut().for_each(|x| *x = -&*x);
                }
            }
        }
        idx
    }

    /// Reduces `v` modulo the lattice. The remainder has every pivot entry
    /// in `[0, pivot)` and is a unique coset representative. Also returns
    /// the combination of inserted rows that was subtracted, when tracked.
    pub fn reduce(&self, v: &[BigInt]) -> (Vec<BigInt>, Witness) {
        let mut r = v.to_vec();
        let mut w = Witness::new();
        for (&p, row) in &self.rows {
            if r[p].is_zero() {
                continue;
            }
            let q = r[p].div_floor(&row.v[p]);
            axpy(&mut r, &-&q, &row.v);
            if self.track {
                waxpy(&mut w, &q, &row.w);
            }
        }
        (r, w)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).0.iter().all(Zero::is_zero)
    }

    /// Writes `v` as a combination of inserted rows, if it lies in the
    /// lattice. Requires tracking.
    pub fn decompose(&self, v: &[BigInt]) -> Option<Witness> {
        assert!(self.track, "decomposition needs a tracked lattice");
        let (r, w) = self.reduce(v);
        r.iter().all(Zero::is_zero).then_some(w)
    }

    /// Basis rows in echelon order.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.rows.values().map(|r| r.v.clone()).collect()
    }
}

/// Invariant factors and rank of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    /// Nonzero diagonal entries `d1 | d2 | ...`, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

/// Smith normal form of a matrix given by rows of equal length `ncols`.
pub fn smith_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> Smith {
    let mut lat = Lattice::new(ncols, false);
    for r in rows {
        lat.insert(r.clone());
    }
    smith_of_lattice(&lat)
}

/// Smith normal form of the basis matrix of a lattice.
pub fn smith_of_lattice(lat: &Lattice) -> Smith {
    let mut rows: Vec<(usize, Vec<BigInt>)> = lat.rows.iter().map(|(&p, r)| (p, r.v.clone())).collect();
    let rank = rows.len();
    let units: Vec<usize> = rows.iter().enumerate().filter(|(_, (p, v))| v[*p].is_one()).map(|(i, _)| i).collect();
    for &i in units.iter().rev() {
        let (p, unit) = rows[i].clone();
        for (k, (_, v)) in rows.iter_mut().enumerate() {
            if k != i && !v[p].is_zero() {
                let q = -v[p].clone();
                axpy(v, &q, &unit);
            }
        }
    }
    let unit_cols: Vec<usize> = units.iter().map(|&i| rows[i].0).collect();
    let keep_cols: Vec<usize> = (0..lat.ncols).filter(|c| !unit_cols.contains(c)).collect();
    let rest: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .filter(|(i, _)| !units.contains(i))
        .map(|(_, (_, v))| keep_cols.iter().map(|&c| v[c].clone()).collect())
        .collect();
    let mut factors = vec![BigInt::one(); units.len()];
    factors.extend(dense_smith(rest, keep_cols.len()));
    factors.sort();
    Smith { factors, rank }
}

/// Diagonal of the Smith form of a full-row-rank dense matrix.
fn dense_smith(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Vec<BigInt> {
    let nrows = a.len();
    let mut out = Vec::new();
    for t in 0..nrows.min(ncols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { return out };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let piv = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..nrows {
                if !a[i][t].is_zero() {
                    let q = -a[i][t].div_floor(&piv);
                    let src = a[t].clone();
                    axpy(&mut a[i], &q, &src);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..ncols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&piv);
                    for row in a.iter_mut() {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..nrows).find(|&i| a[i].iter().skip(t + 1).any(|x| !x.is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let src = a[i].clone();
                    axpy(&mut a[t], &BigInt::one(), &src);
                }
                None => {
                    out.push(piv.abs());
                    break;
                }
            }
        }
    }
    out
}

fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors of a direct sum of finite cyclic groups, in
/// increasing divisibility order.
pub fn merge_torsion(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &d in orders {
        for (p, e) in prime_powers(d) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (p, mut es) in by_prime {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in es.into_iter().enumerate() {
            out[len - 1 - k] *= p.pow(e);
        }
    }
    out
}
