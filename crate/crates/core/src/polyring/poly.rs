use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Q;

/// Exponent vector; its length is the number of ring variables.
pub type Mono = Vec<u8>;

/// Weighted degree of a monomial.
pub fn mono_degree(m: &[u8], weights: &[u32]) -> u32 {
    m.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
}

pub fn mono_mul(a: &[u8], b: &[u8]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Homogeneity status of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Degree(u32),
    Mixed,
}

impl Homogeneity {
    pub fn degree(self) -> Option<u32> {
        match self {
            Homogeneity::Degree(k) => Some(k),
            _ => None,
        }
    }
}

/// Sparse polynomial with exact rational coefficients. No zero coefficient is stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::monomial(m, Q::one())
    }

    pub fn monomial(m: Mono, c: Q) -> Poly {
        let mut p = Poly::zero(m.len());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, Q)>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, Q)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &[u8]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        assert_eq!(m.len(), self.nvars, "monomial from a different ring");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_mono(&self, m: &[u8]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (mono_mul(k, m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn homogeneity(&self, weights: &[u32]) -> Homogeneity {
        let mut degs = self.terms.keys().map(|m| mono_degree(m, weights));
        match degs.next() {
            None => Homogeneity::Zero,
            Some(k) if degs.all(|j| j == k) => Homogeneity::Degree(k),
            Some(_) => Homogeneity::Mixed,
        }
    }

    /// Substitutes `images[i]` for variable `i`; the images may live in another ring.
    pub fn substitute(&self, images: &[Poly], target_nvars: usize) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target_nvars), p.clone()]).collect();
        let mut out = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_nvars, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = out + t;
        }
        out
    }

    /// Reorders variables: variable `i` of `self` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut k = vec![0; self.nvars];
            for (i, &e) in m.iter().enumerate() {
                k[perm[i]] = e;
            }
            out.add_term(k, c.clone());
        }
        out
    }

    /// Largest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u8 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    /// Coefficient of `x_i^e` as a polynomial in the remaining variables.
    pub fn coeff_of_var_power(&self, i: usize, e: u8) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == e {
                let mut k = m.clone();
                k[i] = 0;
                out.add_term(k, c.clone());
            }
        }
        out
    }

    /// Scales so that the first term (canonical order) has coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.terms.values().next() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    pub fn is_positive_leading(&self) -> bool {
        self.terms.values().next().is_some_and(|c| c.is_positive())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.clone() + rhs.clone()
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.clone() - rhs.clone()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "product across rings");
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(mono_mul(a, b), x * y);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul<&Q> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Q) -> Poly {
        self.scale(rhs)
    }
}

impl Mul<Q> for Poly {
    type Output = Poly;
    fn mul(self, rhs: Q) -> Poly {
        self.scale(&rhs)
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        &self * rhs
    }
}

impl Add<&Poly> for Poly {
    type Output = Poly;
    fn add(mut self, rhs: &Poly) -> Poly {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
        self
    }
}

impl Sub<&Poly> for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: &Poly) -> Poly {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
        self
    }
}
