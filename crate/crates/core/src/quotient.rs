//! Graded quotient `T = ℚ[vars]/I` slice by slice, with its Hilbert function,
//! invariant part and top-degree integration.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{Poly, Ring, SliceSet, Q};
use crate::presentation::Presentation;
use crate::symmetry::{invariant_dim, GroupAction};

pub struct GradedQuotient {
    ring: Ring,
    slices: SliceSet,
    max_degree: u32,
}

impl GradedQuotient {
    /// Slices `0..=max_degree` of the ideal of `pres`.
    pub fn new(pres: &Presentation, max_degree: u32) -> Result<GradedQuotient> {
        let gens = pres.generators()?;
        Ok(Self::from_gens(pres.ring().clone(), &gens, max_degree))
    }

    pub fn from_gens(ring: Ring, gens: &[(Poly, u32)], max_degree: u32) -> GradedQuotient {
        let slices = SliceSet::build(&ring, gens, 0..=max_degree);
        GradedQuotient { ring, slices, max_degree }
    }

    /// Wraps slices computed elsewhere; they must cover `0..=max_degree`.
    pub fn from_slices(ring: Ring, slices: SliceSet, max_degree: u32) -> Result<GradedQuotient> {
        for k in 0..=max_degree {
            slices.get(k)?;
        }
        Ok(GradedQuotient { ring, slices, max_degree })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn slices(&self) -> &SliceSet {
        &self.slices
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.slices.iter().map(|s| s.quotient_dim()).collect()
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.slices.normal_form(&self.ring, p)
    }

    pub fn is_zero(&self, p: &Poly) -> Result<bool> {
        self.slices.is_zero_mod(&self.ring, p)
    }
}

/// Hilbert function of `T` through `max_degree`.
pub fn hilbert(pres: &Presentation, max_degree: u32) -> Result<Vec<usize>> {
    Ok(GradedQuotient::new(pres, max_degree)?.hilbert())
}

/// Hilbert function of the `S_d`-invariant part.
pub fn invariant_hilbert(pres: &Presentation, quot: &GradedQuotient) -> Result<Vec<usize>> {
    let action = GroupAction::new(pres.context());
    (0..=quot.max_degree()).map(|k| invariant_dim(&action, quot, k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub dim: u32,
    pub invariant: Vec<usize>,
    pub unit: bool,
    pub top_one: bool,
    pub palindromic: bool,
    pub vanishes_above: bool,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.unit && self.top_one && self.palindromic && self.vanishes_above
    }
}

/// Poincaré-duality shape of an invariant Hilbert function computed through `dim + 2`.
pub fn duality_report(dim: u32, invariant: &[usize]) -> DualityReport {
    let d = dim as usize;
    let at = |k: usize| invariant.get(k).copied();
    let palindromic = invariant.len() > d && (0..=d).all(|k| invariant[k] == invariant[d - k]);
    DualityReport {
        dim,
        invariant: invariant.to_vec(),
        unit: at(0) == Some(1),
        top_one: at(d) == Some(1),
        palindromic,
        vanishes_above: at(d + 1) == Some(0) && at(d + 2) == Some(0),
    }
}

/// Ratios of top-degree classes, as coordinates on the invariant top slice.
///
/// The invariant top part must be one-dimensional; the classes are averaged
/// over the group and expressed as multiples of the first nonzero one.
pub fn integrate_ratio(pres: &Presentation, quot: &GradedQuotient, classes: &[Poly]) -> Result<Vec<Q>> {
    let action = GroupAction::new(pres.context());
    let k = pres.dim;
    let slice = quot.slices().get(k)?;
    let inv = invariant_dim(&action, quot, k)?;
    if inv != 1 {
        return Err(Error::TopNotOneDimensional(inv));
    }
    let mut coords = Vec::new();
    for c in classes {
        match c.homogeneity(quot.ring().weights()).degree() {
            Some(x) if x == k => {}
            None if c.is_zero() => {}
            found => {
                return Err(Error::DegreeMismatch {
                    mono: quot.ring().fmt_poly(c),
                    expected: k,
                    found: found.unwrap_or(0),
                })
            }
        }
        coords.push(slice.coords(&action.reynolds(c))?);
    }
    // On a one-dimensional space each vector is a multiple of a fixed one.
    let reference = coords.iter().find(|v| v.iter().any(|x| !x.is_zero())).cloned();
    let Some(reference) = reference else {
        return Ok(vec![Q::zero(); classes.len()]);
    };
    let pivot = reference.iter().position(|x| !x.is_zero()).expect("nonzero");
    Ok(coords.iter().map(|v| &v[pivot] / &reference[pivot]).collect())
}

/// Scales ratios to coprime integers when they are all rational multiples.
pub fn normalize_integers(ratios: &[Q]) -> Vec<Q> {
    use num_integer::Integer;
    let lcm = ratios.iter().fold(num_bigint::BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<num_bigint::BigInt> = ratios.iter().map(|r| (r * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ratios.to_vec();
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}
