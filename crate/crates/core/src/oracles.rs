//! Independent reference values: Gaussian binomials, Schubert calculus on
//! `G(2,4)`, and genus-zero Gromov–Witten invariants of `ℙʳ` from WDVV.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::polyring::Q;

/// Coefficients of the Gaussian binomial `[m choose k]_q`, lowest degree first.
pub fn gaussian_binomial_coeffs(m: u32, k: u32) -> Vec<BigInt> {
    if k > m {
        return vec![];
    }
    let mut num = vec![BigInt::one()];
    for i in 1..=k {
        // multiply by (1 − q^{m−k+i}), then divide by (1 − q^i)
        num = mul_one_minus(&num, (m - k + i) as usize);
        num = div_one_minus(&num, i as usize);
    }
    num
}

/// Poincaré polynomial of `G(2, n+1)`, the Hilbert function of the moduli of lines in `ℙⁿ`.
pub fn gaussian_binomial(n: u32) -> Vec<BigInt> {
    gaussian_binomial_coeffs(n + 1, 2)
}

fn mul_one_minus(p: &[BigInt], e: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + e];
    for (i, c) in p.iter().enumerate() {
        out[i] += c;
        out[i + e] -= c;
    }
    out
}

fn div_one_minus(p: &[BigInt], e: usize) -> Vec<BigInt> {
    // p = (1 − q^e)·r, solved from the low end.
    let mut r = vec![BigInt::zero(); p.len() - e];
    for i in 0..r.len() {
        r[i] = p[i].clone() + if i >= e { r[i - e].clone() } else { BigInt::zero() };
    }
    r
}

/// Schubert classes of `G(k, n)` as partitions in a `k × (n − k)` box.
type Partition = Vec<u32>;

fn pieri(lambda: &Partition, p: u32, k: usize, width: u32) -> Vec<Partition> {
    // μ/λ a horizontal strip of size p: λ_i ≤ μ_i ≤ λ_{i−1}.
    fn rec(i: usize, left: u32, lambda: &Partition, width: u32, cur: &mut Partition, out: &mut Vec<Partition>) {
        if i == lambda.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if i == 0 { width } else { lambda[i - 1] };
        for add in 0..=left.min(cap.saturating_sub(lambda[i])) {
            cur.push(lambda[i] + add);
            rec(i + 1, left - add, lambda, width, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut lam = lambda.clone();
    lam.resize(k, 0);
    rec(0, p, &lam, width, &mut Vec::new(), &mut out);
    out
}

/// `∫_{G(k,n)} Π σ_{p_i}` for special Schubert classes.
pub fn schubert_special_integral(k: usize, n: usize, classes: &[u32]) -> BigInt {
    let width = (n - k) as u32;
    let mut state: BTreeMap<Partition, BigInt> = BTreeMap::new();
    state.insert(vec![0; k], BigInt::one());
    for &p in classes {
        let mut next = BTreeMap::new();
        for (lam, c) in &state {
            for mu in pieri(lam, p, k, width) {
                *next.entry(mu).or_insert_with(BigInt::zero) += c;
            }
        }
        state = next;
    }
    state.get(&vec![width; k]).cloned().unwrap_or_else(BigInt::zero)
}

/// Lines in `ℙ³` meeting four lines, meeting two lines through a point, through two points:
/// `(σ₁⁴, σ₁²σ₂, σ₂²)` on `G(2,4)`.
pub fn schubert_g24_ratios() -> Vec<BigInt> {
    [vec![1, 1, 1, 1], vec![1, 1, 2], vec![2, 2]].iter().map(|c| schubert_special_integral(2, 4, c)).collect()
}

/// Number of rational plane curves of degree `d` through `3d − 1` points, for `d = 1..=max`.
pub fn kontsevich_plane_counts(max: u32) -> Vec<BigInt> {
    let mut n = vec![BigInt::zero(), BigInt::one()];
    for d in 2..=max as u64 {
        let mut acc = BigInt::zero();
        for a in 1..d {
            let b = d - a;
            let t1 = BigInt::from(b) * binomial(BigInt::from(3 * d - 4), BigInt::from(3 * a - 2));
            let t2 = BigInt::from(a) * binomial(BigInt::from(3 * d - 4), BigInt::from(3 * a - 1));
            acc += &n[a as usize] * &n[b as usize] * BigInt::from(a * a * b) * (t1 - t2);
        }
        n.push(acc);
    }
    n.split_off(1)
}

/// Genus-zero invariants of `ℙʳ` with insertions `H^e`, reconstructed from WDVV.
///
/// Keys are `(degree, exponents sorted ascending)` with every exponent `≥ 2`; the
/// fundamental-class, divisor and degree-zero rules handle the rest.
pub struct ProjectiveGw {
    r: u32,
    table: BTreeMap<(u32, Vec<u32>), Q>,
}

impl ProjectiveGw {
    /// Solves degrees `1..=max_degree`.
    pub fn new(r: u32, max_degree: u32) -> ProjectiveGw {
        let mut gw = ProjectiveGw { r, table: BTreeMap::new() };
        for d in 1..=max_degree {
            gw.solve_degree(d);
        }
        gw
    }

    fn target_codim(&self, d: u32, npts: usize) -> i64 {
        ((self.r + 1) * d + self.r) as i64 + npts as i64 - 3
    }

    /// Value of `⟨H^{e_1} … H^{e_n}⟩_d`, or `None` when it is an unsolved unknown.
    pub fn invariant(&self, d: u32, exps: &[u32]) -> Option<Q> {
        if exps.iter().any(|&e| e > self.r) {
            return Some(Q::zero());
        }
        let total: i64 = exps.iter().map(|&e| e as i64).sum();
        if total != self.target_codim(d, exps.len()) {
            return Some(Q::zero());
        }
        if d == 0 {
            return Some(if exps.len() == 3 { Q::one() } else { Q::zero() });
        }
        if exps.contains(&0) {
            return Some(Q::zero());
        }
        let divisors = exps.iter().filter(|&&e| e == 1).count() as u32;
        let mut rest: Vec<u32> = exps.iter().copied().filter(|&e| e >= 2).collect();
        rest.sort_unstable();
        let factor = Q::from_integer(BigInt::from(d).pow(divisors));
        self.table.get(&(d, rest)).map(|v| v * factor)
    }

    fn key(&self, d: u32, exps: &[u32]) -> Option<(u32, Vec<u32>)> {
        let total: i64 = exps.iter().map(|&e| e as i64).sum();
        if d == 0 || exps.contains(&0) || exps.iter().any(|&e| e > self.r) || total != self.target_codim(d, exps.len()) {
            return None;
        }
        let mut rest: Vec<u32> = exps.iter().copied().filter(|&e| e >= 2).collect();
        rest.sort_unstable();
        Some((d, rest))
    }

    fn solve_degree(&mut self, d: u32) {
        let r = self.r;
        // Unknowns: multisets of exponents in 2..=r with Σ(e − 1) = (r+1)d + r − 3.
        let budget = ((r + 1) * d + r) as i64 - 3;
        let mut unknowns: Vec<Vec<u32>> = Vec::new();
        multisets(2, r, budget, &mut Vec::new(), &mut unknowns);
        let col: BTreeMap<Vec<u32>, usize> = unknowns.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
        let nu = unknowns.len();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        if d == 1 {
            // a single line through two points
            let mut row = vec![Q::zero(); nu + 1];
            if let Some(&i) = col.get(&vec![r, r]) {
                row[i] = Q::one();
                row[nu] = Q::one();
                rows.push(row);
            }
        }
        for abce in four_classes(r) {
            // the equation pulls back a point of M̄₀,₄, so one codimension is spent
            let slack = budget - 1 - abce.iter().map(|&e| e as i64 - 1).sum::<i64>();
            if slack < 0 {
                continue;
            }
            let mut gammas = Vec::new();
            multisets(2, r, slack, &mut Vec::new(), &mut gammas);
            for gamma in gammas {
                if let Some(row) = self.wdvv_row(d, &abce, &gamma, &col) {
                    rows.push(row);
                }
            }
        }
        let solution = solve(rows, nu);
        for (u, v) in unknowns.into_iter().zip(solution) {
            if let Some(v) = v {
                self.table.insert((d, u), v);
            }
        }
    }

    /// One WDVV equation `(a,b | c,e) − (a,c | b,e)` as a row over the degree-`d` unknowns.
    fn wdvv_row(&self, d: u32, abce: &[u32; 4], gamma: &[u32], col: &BTreeMap<Vec<u32>, usize>) -> Option<Vec<Q>> {
        let nu = col.len();
        let mut row = vec![Q::zero(); nu + 1];
        let [a, b, c, e] = *abce;
        let add_side = |x: u32, y: u32, z: u32, w: u32, sign: &Q, row: &mut Vec<Q>| -> bool {
            for (g1, g2, mult) in splits(gamma) {
                for d1 in 0..=d {
                    let d2 = d - d1;
                    for f in 0..=self.r {
                        let mut left = vec![x, y, f];
                        left.extend(&g1);
                        let mut right = vec![self.r - f, z, w];
                        right.extend(&g2);
                        let coeff = sign * Q::from_integer(mult.clone());
                        match (d1 == d, d2 == d) {
                            (true, false) | (false, true) => {
                                let (big, small, ds) = if d1 == d { (&left, &right, d2) } else { (&right, &left, d1) };
                                let s = self.invariant(ds, small).expect("lower degree known");
                                if s.is_zero() {
                                    continue;
                                }
                                match self.key(d, big) {
                                    None => {}
                                    Some((_, k)) => match col.get(&k) {
                                        Some(&i) => {
                                            let div = big.iter().filter(|&&t| t == 1).count() as u32;
                                            row[i] += &coeff * &s * Q::from_integer(BigInt::from(d).pow(div));
                                        }
                                        None => return false,
                                    },
                                }
                            }
                            _ => {
                                let (Some(l), Some(rv)) = (self.invariant(d1, &left), self.invariant(d2, &right)) else {
                                    return false;
                                };
                                // constant terms move to the right-hand side
                                row[nu] -= &coeff * &l * &rv;
                            }
                        }
                    }
                }
            }
            true
        };
        let plus = Q::one();
        let minus = -Q::one();
        if !add_side(a, b, c, e, &plus, &mut row) || !add_side(a, c, b, e, &minus, &mut row) {
            return None;
        }
        Some(row)
    }
}

fn four_classes(r: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 1..=r {
        for b in 1..=r {
            for c in 1..=r {
                for e in 1..=r {
                    out.push([a, b, c, e]);
                }
            }
        }
    }
    out
}

/// Multisets (sorted) of integers in `lo..=hi` with `Σ(e − 1) = budget`.
fn multisets(lo: u32, hi: u32, budget: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if budget == 0 {
        out.push(cur.clone());
        return;
    }
    for e in lo..=hi {
        if (e as i64 - 1) > budget {
            break;
        }
        cur.push(e);
        multisets(e, hi, budget - (e as i64 - 1), cur, out);
        cur.pop();
    }
}

/// Ways to split labelled points carrying the classes in `gamma` into two groups,
/// grouped by the resulting class multisets.
fn splits(gamma: &[u32]) -> Vec<(Vec<u32>, Vec<u32>, BigInt)> {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &g in gamma {
        *counts.entry(g).or_default() += 1;
    }
    let groups: Vec<(u32, u32)> = counts.into_iter().collect();
    let mut out = Vec::new();
    fn rec(i: usize, groups: &[(u32, u32)], l: &mut Vec<u32>, r: &mut Vec<u32>, m: BigInt, out: &mut Vec<(Vec<u32>, Vec<u32>, BigInt)>) {
        if i == groups.len() {
            out.push((l.clone(), r.clone(), m));
            return;
        }
        let (g, n) = groups[i];
        for k in 0..=n {
            let (ll, rl) = (l.len(), r.len());
            l.extend(std::iter::repeat_n(g, k as usize));
            r.extend(std::iter::repeat_n(g, (n - k) as usize));
            rec(i + 1, groups, l, r, &m * binomial(BigInt::from(n), BigInt::from(k)), out);
            l.truncate(ll);
            r.truncate(rl);
        }
    }
    rec(0, &groups, &mut Vec::new(), &mut Vec::new(), BigInt::one(), &mut out);
    out
}

/// Solves `A x = b` (rows `[A | b]`); entries are `None` where the solution is not unique.
fn solve(mut rows: Vec<Vec<Q>>, n: usize) -> Vec<Option<Q>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let mut out = vec![None; n];
    for (i, c) in pivots {
        if rows[i][..n].iter().enumerate().all(|(j, x)| j == c || x.is_zero()) {
            out[c] = Some(rows[i][n].clone());
        }
    }
    out
}

/// Conics in `ℙ³` meeting `8 − 2b` lines and passing through `b` points, `b = 0..=4`.
pub fn p3_degree2_counts() -> Vec<BigInt> {
    let gw = ProjectiveGw::new(3, 2);
    (0..=4u32)
        .map(|b| {
            let mut exps = vec![2; (8 - 2 * b) as usize];
            exps.extend(std::iter::repeat_n(3, b as usize));
            gw.invariant(2, &exps).expect("solved").to_integer()
        })
        .collect()
}

/// Lines in `ℙ³` meeting `4 − 2b` lines through `b` points, from WDVV.
pub fn p3_degree1_counts() -> Vec<BigInt> {
    let gw = ProjectiveGw::new(3, 1);
    (0..=2u32)
        .map(|b| {
            let mut exps = vec![2; (4 - 2 * b) as usize];
            exps.extend(std::iter::repeat_n(3, b as usize));
            gw.invariant(1, &exps).expect("solved").to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gaussian_small() {
        assert_eq!(gaussian_binomial(2), ints(&[1, 1, 1]));
        assert_eq!(gaussian_binomial(3), ints(&[1, 1, 2, 1, 1]));
        assert_eq!(gaussian_binomial_coeffs(4, 2).iter().sum::<BigInt>(), BigInt::from(6));
        assert_eq!(gaussian_binomial(5).len(), 9);
    }

    #[test]
    fn plane_curve_counts() {
        assert_eq!(kontsevich_plane_counts(5), ints(&[1, 1, 12, 620, 87304]));
    }

    #[test]
    fn wdvv_reproduces_kontsevich() {
        let gw = ProjectiveGw::new(2, 4);
        for (d, want) in (1..=4u32).zip(kontsevich_plane_counts(4)) {
            let pts = vec![2; (3 * d - 1) as usize];
            assert_eq!(gw.invariant(d, &pts).unwrap().to_integer(), want, "d={d}");
        }
    }

    #[test]
    fn schubert_lines() {
        assert_eq!(schubert_g24_ratios(), ints(&[2, 1, 1]));
        assert_eq!(p3_degree1_counts(), schubert_g24_ratios());
        assert_eq!(schubert_special_integral(2, 5, &[1; 6]), BigInt::from(5));
    }

    #[test]
    fn conics_in_p3() {
        assert_eq!(p3_degree2_counts(), ints(&[92, 18, 4, 1, 0]));
    }
}
