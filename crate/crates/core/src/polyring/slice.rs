use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};


use num_traits::Zero;

use super::poly::{mono_mul, Homogeneity, Mono, Poly};
use super::ring::Ring;
use super::Q;
use crate::error::{Error, Result};

/// Sparse row: `(column, coefficient)` pairs sorted by column.
pub type Row = Vec<(u32, Q)>;

const NO_PIVOT: u32 = u32::MAX;

/// Incremental reduced row echelon form over ℚ with leftmost pivoting.
///
/// Stored rows never contain another row's pivot column, so reducing a vector
/// takes a single pass over its own entries.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Row>,
    pivot_row: Vec<u32>,
    /// Rows that may hold a nonzero entry in each column; entries can be stale.
    occ: Vec<Vec<u32>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon { ncols, rows: Vec::new(), pivot_row: vec![NO_PIVOT; ncols], occ: vec![Vec::new(); ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize] != NO_PIVOT
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, row: Row) -> Row {
        if row.iter().all(|(k, _)| !self.is_pivot(*k)) {
            return row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        let mut acc: HashMap<u32, Q> = HashMap::with_capacity(row.len() * 4);
        for (k, c) in row {
            let r = self.pivot_row[k as usize];
            if r == NO_PIVOT {
                *acc.entry(k).or_insert_with(Q::zero) += c;
                continue;
            }
            for (j, v) in self.rows[r as usize].iter().skip(1) {
                *acc.entry(*j).or_insert_with(Q::zero) -= &c * v;
            }
        }
        let mut out: Row = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_unstable_by_key(|x| x.0);
        out
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: Row) -> bool {
        let row = self.reduce(row);
        let Some((col, lead)) = row.first().cloned() else {
            return false;
        };
        let inv = lead.recip();
        let row: Row = row.into_iter().map(|(k, v)| (k, v * &inv)).collect();
        let me = self.rows.len() as u32;
        for j in std::mem::take(&mut self.occ[col as usize]) {
            let target = &self.rows[j as usize];
            let Ok(pos) = target.binary_search_by_key(&col, |x| x.0) else {
                continue;
            };
            let c = target[pos].1.clone();
            let updated = axpy(target, &c, &row);
            for (k, _) in &updated {
                if target.binary_search_by_key(k, |x| x.0).is_err() {
                    self.occ[*k as usize].push(j);
                }
            }
            self.rows[j as usize] = updated;
        }
        for (k, _) in row.iter().skip(1) {
            self.occ[*k as usize].push(me);
        }
        self.pivot_row[col as usize] = me;
        self.rows.push(row);
        true
    }

    /// Sorts the stored rows by pivot column.
    pub fn finalize(&mut self) {
        let mut rows = std::mem::take(&mut self.rows);
        rows.sort_by_key(|r| r[0].0);
        self.pivot_row = vec![NO_PIVOT; self.ncols];
        for (i, r) in rows.iter().enumerate() {
            self.pivot_row[r[0].0 as usize] = i as u32;
        }
        self.occ = vec![Vec::new(); self.ncols];
        for (i, r) in rows.iter().enumerate() {
            for (k, _) in r.iter().skip(1) {
                self.occ[*k as usize].push(i as u32);
            }
        }
        self.rows = rows;
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }
}

/// `a − c·b` for sorted sparse rows.
fn axpy(a: &Row, c: &Q, b: &Row) -> Row {
    let mut out = Row::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map_or(u32::MAX, |x| x.0);
        let kb = b.get(j).map_or(u32::MAX, |x| x.0);
        if ka < kb {
            out.push(a[i].clone());
            i += 1;
        } else if kb < ka {
            out.push((kb, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - c * &b[j].1;
            if !v.is_zero() {
                out.push((ka, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// The ideal's span in one degree, in reduced echelon form over the monomial basis.
#[derive(Clone, Debug)]
pub struct DegreeSlice {
    degree: u32,
    basis: Vec<Mono>,
    index: HashMap<Mono, u32>,
    ech: Echelon,
    standard: Vec<u32>,
}

impl DegreeSlice {
    /// Builds the degree-`k` slice of the ideal spanned by homogeneous `gens`
    /// (each given with its degree).
    pub fn build(ring: &Ring, gens: &[(Poly, u32)], k: u32) -> DegreeSlice {
        let basis = ring.monomials(k);
        let index: HashMap<Mono, u32> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let mut rows: Vec<Row> = Vec::new();
        let mut cofactors: HashMap<u32, Vec<Mono>> = HashMap::new();
        for (g, e) in gens {
            if *e > k || g.is_zero() {
                continue;
            }
            let ms = cofactors.entry(k - e).or_insert_with(|| ring.monomials(k - e));
            for m in ms.iter() {
                let mut row: Row = g.terms().map(|(t, c)| (index[&mono_mul(t, m)], c.clone())).collect();
                row.sort_by_key(|x| x.0);
                rows.push(row);
            }
        }
        DegreeSlice::from_rows(k, basis, index, rows)
    }

    /// Builds the degree-`k` slice from the slices below it: the ideal in degree `k`
    /// is spanned by `x_i` times its part in degree `k − w_i` together with the
    /// generators of degree exactly `k`. `lower` must hold every degree below `k`.
    pub fn build_incremental(
        ring: &Ring,
        gens: &[(Poly, u32)],
        lower: &BTreeMap<u32, DegreeSlice>,
        k: u32,
    ) -> DegreeSlice {
        let basis = ring.monomials(k);
        let index: HashMap<Mono, u32> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let mut seen: HashSet<Row> = HashSet::new();
        for (g, e) in gens {
            if *e == k && !g.is_zero() {
                let mut row: Row = g.terms().map(|(t, c)| (index[t], c.clone())).collect();
                row.sort_by_key(|x| x.0);
                seen.insert(row);
            }
        }
        for (i, &w) in ring.weights().iter().enumerate() {
            let Some(prev) = k.checked_sub(w).and_then(|j| lower.get(&j)) else {
                continue;
            };
            let mut x = vec![0u8; ring.nvars()];
            x[i] = 1;
            for r in prev.ech.rows() {
                let mut row: Row =
                    r.iter().map(|(c, v)| (index[&mono_mul(&prev.basis[*c as usize], &x)], v.clone())).collect();
                row.sort_by_key(|x| x.0);
                seen.insert(row);
            }
        }
        DegreeSlice::from_rows(k, basis, index, seen.into_iter().collect())
    }

    /// Rebuilds a slice from previously computed echelon rows, e.g. from a cache.
    pub fn from_echelon_rows(ring: &Ring, k: u32, rows: Vec<Row>) -> Result<DegreeSlice> {
        let basis = ring.monomials(k);
        if rows.iter().flatten().any(|(c, _)| *c as usize >= basis.len()) {
            return Err(Error::MissingSlice(k));
        }
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        Ok(DegreeSlice::from_rows(k, basis, index, rows.into_iter().filter(|r| !r.is_empty()).collect()))
    }

    fn from_rows(k: u32, basis: Vec<Mono>, index: HashMap<Mono, u32>, mut rows: Vec<Row>) -> DegreeSlice {
        rows.sort_by(|a, b| (a.len(), a[0].0).cmp(&(b.len(), b[0].0)));
        let mut ech = Echelon::new(basis.len());
        for row in rows {
            if ech.rank() == basis.len() {
                break;
            }
            ech.insert(row);
        }
        ech.finalize();
        let standard = (0..basis.len() as u32).filter(|&c| !ech.is_pivot(c)).collect();
        DegreeSlice { degree: k, basis, index, ech, standard }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ambient(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient() - self.rank()
    }

    pub fn basis(&self) -> &[Mono] {
        &self.basis
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    /// Monomials not led by any ideal row; they form a basis of the quotient slice.
    pub fn standard_monomials(&self) -> Vec<Mono> {
        self.standard.iter().map(|&c| self.basis[c as usize].clone()).collect()
    }

    fn to_row(&self, p: &Poly) -> Result<Row> {
        let mut row = Row::with_capacity(p.len());
        for (m, c) in p.terms() {
            let &col = self.index.get(m).ok_or(Error::MissingSlice(self.degree))?;
            row.push((col, c.clone()));
        }
        row.sort_by_key(|x| x.0);
        Ok(row)
    }

    /// Canonical representative modulo the ideal; `p` must be homogeneous of this degree.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        let row = self.ech.reduce(self.to_row(p)?);
        Ok(Poly::from_terms(p.nvars(), row.into_iter().map(|(c, v)| (self.basis[c as usize].clone(), v))))
    }

    /// Coordinates of the normal form on the standard monomials.
    pub fn coords(&self, p: &Poly) -> Result<Vec<Q>> {
        let row = self.ech.reduce(self.to_row(p)?);
        let pos: HashMap<u32, usize> = self.standard.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = vec![Q::zero(); self.standard.len()];
        for (c, v) in row {
            out[pos[&c]] = v;
        }
        Ok(out)
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.ech.reduce(self.to_row(p)?).is_empty())
    }
}

/// Rank of a list of dense vectors over ℚ.
pub fn dense_rank(vectors: impl IntoIterator<Item = Vec<Q>>) -> usize {
    let mut basis: Vec<(usize, Vec<Q>)> = Vec::new();
    for mut v in vectors {
        for (piv, b) in &basis {
            if !v[*piv].is_zero() {
                let c = v[*piv].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &c * y;
                }
            }
        }
        if let Some(piv) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[piv].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (_, b) in basis.iter_mut() {
                if !b[piv].is_zero() {
                    let c = b[piv].clone();
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x -= &c * y;
                    }
                }
            }
            basis.push((piv, v));
        }
    }
    basis.len()
}

/// `(ambient_dim, ideal_dim)` of the degree-`k` slice of the ideal generated by `gens`.
pub fn slice_dimension(ring: &Ring, gens: &[Poly], k: u32) -> Result<(usize, usize)> {
    let graded = homogeneous_gens(ring, gens.iter().map(|g| ("generator".to_string(), g)))?;
    let s = DegreeSlice::build(ring, &graded, k);
    Ok((s.ambient(), s.rank()))
}

/// Attaches degrees to generators, rejecting inhomogeneous ones and dropping zeros.
pub fn homogeneous_gens<'a>(
    ring: &Ring,
    gens: impl IntoIterator<Item = (String, &'a Poly)>,
) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    for (label, g) in gens {
        match g.homogeneity(ring.weights()) {
            Homogeneity::Zero => {}
            Homogeneity::Degree(k) => out.push((g.clone(), k)),
            Homogeneity::Mixed => return Err(Error::Inhomogeneous { label }),
        }
    }
    Ok(out)
}

/// Slices for a set of degrees, each built from the ones below it.
#[derive(Clone, Debug)]
pub struct SliceSet {
    slices: BTreeMap<u32, DegreeSlice>,
}

impl SliceSet {
    pub fn build(ring: &Ring, gens: &[(Poly, u32)], degrees: impl IntoIterator<Item = u32>) -> SliceSet {
        let wanted: BTreeSet<u32> = degrees.into_iter().collect();
        let mut slices = BTreeMap::new();
        if let Some(&max) = wanted.last() {
            for k in 0..=max {
                let s = DegreeSlice::build_incremental(ring, gens, &slices, k);
                slices.insert(k, s);
            }
        }
        slices.retain(|k, _| wanted.contains(k));
        SliceSet { slices }
    }

    pub fn from_slices(slices: impl IntoIterator<Item = DegreeSlice>) -> SliceSet {
        SliceSet { slices: slices.into_iter().map(|s| (s.degree, s)).collect() }
    }

    pub fn get(&self, k: u32) -> Result<&DegreeSlice> {
        self.slices.get(&k).ok_or(Error::MissingSlice(k))
    }

    pub fn iter(&self) -> impl Iterator<Item = &DegreeSlice> {
        self.slices.values()
    }

    /// Normal form of a homogeneous polynomial; zero maps to zero.
    pub fn normal_form(&self, ring: &Ring, p: &Poly) -> Result<Poly> {
        match p.homogeneity(ring.weights()) {
            Homogeneity::Zero => Ok(p.clone()),
            Homogeneity::Degree(k) => self.get(k)?.normal_form(p),
            Homogeneity::Mixed => Err(Error::Inhomogeneous { label: ring.fmt_poly(p) }),
        }
    }

    pub fn is_zero_mod(&self, ring: &Ring, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(ring, p)?.is_zero())
    }
}

/// A particular solution of `Σ x_j·columns[j] = target`, free unknowns set to zero.
pub fn solve_particular(columns: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let n = columns.len();
    let m = target.len();
    let mut rows: Vec<Vec<Q>> = (0..m)
        .map(|i| columns.iter().map(|c| c[i].clone()).chain(std::iter::once(target[i].clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Some(x)
}
