//! The `S_d` action on `T` and the invariant part of the quotient.

use std::collections::BTreeSet;

use crate::coefficients::{k0_expansion, kh_h2_poly, CoeffContext};
use crate::error::{Error, Result};
use crate::kappa::{iterate, SignMode};
use crate::partition::{Permutation, Side};
use crate::polyring::{
    dense_rank, homogeneous_gens, q, qi, solve_particular, GradedVar, Mono, Poly, Ring, SliceSet, VarKind, Q,
};
use crate::presentation::Presentation;
use crate::quotient::GradedQuotient;

/// Images of the ring variables under `σ`; `F` of a non-canonical image side is
/// rewritten through `F_h̄ = −D² − F_h`.
pub fn var_images(ctx: &CoeffContext, sigma: &Permutation) -> Vec<Poly> {
    let ring = ctx.ring();
    let mut images: Vec<Poly> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
    for &p in ctx.partitions() {
        let s = sigma.act_side(p.canonical());
        images[ctx.d_index(p)] = ctx.d_var(s);
        images[ctx.f_index(p)] = ctx.f_var(s);
    }
    images
}

pub fn act_on_poly(ctx: &CoeffContext, sigma: &Permutation, p: &Poly) -> Poly {
    p.substitute(&var_images(ctx, sigma), ctx.ring().nvars())
}

/// Precomputed images for every element of `S_d`.
pub struct GroupAction {
    images: Vec<Vec<Poly>>,
    nvars: usize,
}

impl GroupAction {
    pub fn new(ctx: &CoeffContext) -> GroupAction {
        let images = Permutation::all(ctx.d()).iter().map(|s| var_images(ctx, s)).collect();
        GroupAction { images, nvars: ctx.ring().nvars() }
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn orbit_sum(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for im in &self.images {
            out = out + p.substitute(im, self.nvars);
        }
        out
    }

    /// Average over the group; a projection onto invariants.
    pub fn reynolds(&self, p: &Poly) -> Poly {
        self.orbit_sum(p) * Q::new(1.into(), (self.order() as i64).into())
    }

    /// Images of a monomial under every group element, as plain monomial orbits when
    /// no `F` is moved to a non-canonical side.
    fn mono_images(&self, m: &Mono) -> Vec<Poly> {
        let p = Poly::monomial(m.clone(), Q::from_integer(1.into()));
        self.images.iter().map(|im| p.substitute(im, self.nvars)).collect()
    }
}

/// Dimension of the invariant part of one quotient slice.
///
/// The Reynolds images of the monomials span the invariants; monomials whose
/// leading images coincide share an orbit and only one is kept.
pub fn invariant_dim(action: &GroupAction, quot: &GradedQuotient, k: u32) -> Result<usize> {
    let slice = quot.slices().get(k)?;
    if slice.quotient_dim() == 0 {
        return Ok(0);
    }
    let mut seen: BTreeSet<Mono> = BTreeSet::new();
    let mut vectors = Vec::new();
    for m in slice.basis() {
        if seen.contains(m) {
            continue;
        }
        let imgs = action.mono_images(m);
        let mut sum = Poly::zero(action.nvars);
        for im in imgs {
            if im.len() == 1 {
                seen.insert(im.terms().next().unwrap().0.clone());
            }
            sum = sum + im;
        }
        if sum.is_zero() {
            continue;
        }
        vectors.push(slice.coords(&sum)?);
    }
    Ok(dense_rank(vectors))
}

/// Generators of the `d = 3` invariant model, in ring order.
pub const MODEL_VARS: [(&str, u32); 6] = [("k2", 1), ("s1", 1), ("rho", 2), ("s2", 2), ("tau", 2), ("s3", 3)];

/// The `d = 3` invariant ring as an abstract presentation: six generators, the
/// three fixed relations, and the entries of `U_{n+1}` rewritten in the generators.
pub struct ModelPresentation {
    pub n: u32,
    pub ring: Ring,
    pub relations: Vec<(String, Poly)>,
    /// Images of the generators in `T`.
    pub images: Vec<Poly>,
}

impl ModelPresentation {
    pub fn to_t(&self, p: &Poly, t_nvars: usize) -> Poly {
        p.substitute(&self.images, t_nvars)
    }

    pub fn hilbert(&self, max_degree: u32) -> Result<Vec<usize>> {
        let gens = homogeneous_gens(&self.ring, self.relations.iter().map(|(l, p)| (l.clone(), p)))?;
        Ok(SliceSet::build(&self.ring, &gens, 0..=max_degree).iter().map(|s| s.quotient_dim()).collect())
    }
}

/// Images in `T` of `(κ₂, σ₁, ρ, σ₂, τ, σ₃)` at `d = 3`.
pub fn model_images(ctx: &CoeffContext) -> Result<Vec<Poly>> {
    if ctx.d() != 3 {
        return Err(Error::BadSide { side: "model".into(), d: ctx.d() });
    }
    let parts = ctx.partitions();
    let ds: Vec<Poly> = parts.iter().map(|p| ctx.d_var(p.canonical())).collect();
    let mut s1 = ctx.ring().zero();
    let mut s2 = ctx.ring().zero();
    let mut s3 = ctx.ring().one();
    for (i, a) in ds.iter().enumerate() {
        s1 = s1 + a;
        s3 = &s3 * a;
        for b in &ds[i + 1..] {
            s2 = s2 + a * b;
        }
    }
    let sigma2 = s1.pow(2) - s2 * qi(4);
    let mut tau = ctx.ring().zero();
    for p in parts {
        let pair = if p.canonical().len() == 2 { p.canonical() } else { p.other() };
        tau = tau + ctx.f_var(pair);
    }
    tau = tau * q(1, 2);
    let k2 = ctx.kappa2();
    let rho = (&tau * &qi(7) + s1.pow(2) * q(1, 4) + &sigma2 * &q(1, 2) + k2.pow(2) * q(1, 4) - ctx.kappa3()) * q(-1, 27);
    Ok(vec![k2, s1, rho, sigma2, tau, s3])
}

/// Entries of `U_l`: `Σ D·k_h(H^l)`, `Σ ψ_h k_h(H^l)`, `Σ k_h(H^l)`, `k₀(H^l)`, `k(H^l)`,
/// sums over the two-element sides.
pub fn u_entries(ctx: &CoeffContext, l: u32, sign: SignMode) -> Result<Vec<(String, Poly)>> {
    let v = iterate(ctx, l, sign)?.pop().expect("nonempty");
    let pairs: Vec<Side> = ctx.sides().into_iter().filter(|s| s.len() == 2).collect();
    let mut de = ctx.ring().zero();
    let mut pk = ctx.ring().zero();
    let mut k = ctx.ring().zero();
    for &h in &pairs {
        de = de + &ctx.d_var(h) * &v.k[&h];
        pk = pk + &v.psik[&h];
        k = k + &v.k[&h];
    }
    let e = k0_expansion(ctx, l)?;
    let mut k0 = &v.open_top * &e.top + &v.open * &ctx.kappa2() * e.open_kappa2.clone();
    for (s, c) in &e.boundary {
        k0 = k0 + &v.k[s] * c;
    }
    Ok(vec![
        (format!("U{l}.Dk"), de),
        (format!("U{l}.psik"), pk),
        (format!("U{l}.k"), k),
        (format!("U{l}.k0"), k0),
        (format!("U{l}.open"), v.open),
    ])
}

/// The three fixed relations `τσ₃`, `ρσ₃`, `τ² − ρσ₂` in the model ring.
pub fn fixed_model_relations(ring: &Ring) -> Vec<(String, Poly)> {
    let v = |i: usize| ring.var(i);
    let (rho, s2, tau, s3) = (v(2), v(3), v(4), v(5));
    vec![
        ("tau*s3".into(), &tau * &s3),
        ("rho*s3".into(), &rho * &s3),
        ("tau^2-rho*s2".into(), &tau * &tau - &rho * &s2),
    ]
}

pub fn model_ring() -> Ring {
    Ring::new(MODEL_VARS.iter().map(|(n, w)| GradedVar::new(*n, VarKind::Named, *w)).collect())
}

/// Builds the model for `M̄₀,₀(ℙⁿ, 3)`. Each `U_{n+1}` entry is written as a polynomial in
/// the generators modulo the boundary relations of `T`.
pub fn corollary35_presentation(pres: &Presentation) -> Result<ModelPresentation> {
    let ctx = pres.context();
    let images = model_images(ctx)?;
    let ring = model_ring();
    let bgens = pres.boundary_generators()?;
    let entries = u_entries(ctx, pres.n + 1, pres.flags.sign)?;
    let top = entries.iter().filter_map(|(_, p)| p.homogeneity(ctx.ring().weights()).degree()).max().unwrap_or(0);
    let lemma = SliceSet::build(ctx.ring(), &bgens, 0..=top);
    let mut relations = fixed_model_relations(&ring);
    for (label, u) in entries {
        let Some(k) = u.homogeneity(ctx.ring().weights()).degree() else {
            continue;
        };
        let slice = lemma.get(k)?;
        let monos = ring.monomials(k);
        let columns: Vec<Vec<Q>> = monos
            .iter()
            .map(|m| slice.coords(&Poly::monomial(m.clone(), qi(1)).substitute(&images, ctx.ring().nvars())))
            .collect::<Result<_>>()?;
        let target = slice.coords(&u)?;
        let x = solve_particular(&columns, &target)
            .ok_or_else(|| Error::Validation { label: label.clone(), reason: "not in the span of the generators".into() })?;
        let g = Poly::from_terms(ring.nvars(), monos.into_iter().zip(x));
        relations.push((label, g));
    }
    Ok(ModelPresentation { n: pres.n, ring, relations, images })
}

/// Which class `α_h` on the stratum of a two-element side the ideal check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratumClass {
    Unit,
    KappaH2,
}

/// Graded dimensions of both sides of the invariant-ideal identity at `d = 3`:
/// the invariant part of the ideal generated by the translates of `α_h`, and the
/// ideal of the invariant ring generated by `s(α)`, `s(ψα)`, `s(αD)`, `s(αD²)`.
pub fn lemma34_dims(pres: &Presentation, quot: &GradedQuotient, alpha: StratumClass, max_degree: u32) -> Result<Vec<(usize, usize)>> {
    let ctx = pres.context();
    let action = GroupAction::new(ctx);
    let ring = ctx.ring();
    let h = ctx.sides().into_iter().find(|s| s.len() == 2).ok_or(Error::ZeroDimension)?;
    let dp = ctx.d_var(h);
    let (a, pa) = match alpha {
        StratumClass::Unit => (dp.clone(), ctx.f_var(h)),
        StratumClass::KappaH2 => {
            let v = iterate(ctx, 2, pres.flags.sign)?.pop().expect("nonempty");
            (kh_h2_poly(ctx, h).reduce(ctx).pushforward(ctx)?, v.psik[&h].clone())
        }
    };
    let gens = [a.clone(), pa, &a * &dp, &(&a * &dp) * &dp];
    let w = ring.weights();
    let deg = |p: &Poly| p.homogeneity(w).degree().unwrap_or(0);
    let orbit: Vec<Poly> = gens.iter().map(|g| action.orbit_sum(g)).collect();
    let mut out = Vec::new();
    for k in 0..=max_degree {
        let slice = quot.slices().get(k)?;
        let mut v1 = Vec::new();
        for g in gens[..2].iter().filter(|g| !g.is_zero() && k >= deg(g)) {
            for m in ring.monomials(k - deg(g)) {
                let p = Poly::monomial(m, qi(1));
                v1.push(slice.coords(&action.orbit_sum(&(&p * g)))?);
            }
        }
        let mut v2 = Vec::new();
        for g in &orbit {
            if g.is_zero() || k < deg(g) {
                continue;
            }
            let mut seen = BTreeSet::new();
            for m in ring.monomials(k - deg(g)) {
                if seen.contains(&m) {
                    continue;
                }
                let r = action.orbit_sum(&Poly::monomial(m.clone(), qi(1)));
                for im in action.mono_images(&m) {
                    if im.len() == 1 {
                        seen.insert(im.terms().next().unwrap().0.clone());
                    }
                }
                v2.push(slice.coords(&(&r * g))?);
            }
        }
        out.push((dense_rank(v1), dense_rank(v2)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Flags;

    fn pres(n: u32, d: u8) -> Presentation {
        Presentation::build(n, d, Flags::default()).unwrap()
    }

    #[test]
    fn reynolds_is_idempotent_and_invariant() {
        let p = pres(1, 3);
        let ctx = p.context();
        let action = GroupAction::new(ctx);
        assert_eq!(action.order(), 6);
        let x = ctx.ring().parse_poly("D1*F12 + k2*D12^2 - 3*F1").unwrap();
        let r = action.reynolds(&x);
        assert_eq!(action.reynolds(&r), r);
        for s in Permutation::all(3) {
            assert_eq!(act_on_poly(ctx, &s, &r), r);
        }
    }

    #[test]
    fn transposition_is_an_involution_on_f() {
        let p = pres(1, 2);
        let ctx = p.context();
        let t = Permutation::transposition(2, 1, 2);
        let f = ctx.ring().parse_poly("F1").unwrap();
        assert_eq!(act_on_poly(ctx, &t, &act_on_poly(ctx, &t, &f)), f);
    }

    #[test]
    fn invariant_dims_at_p1_cubics() {
        let p = pres(1, 3);
        let q = GradedQuotient::new(&p, 6).unwrap();
        let action = GroupAction::new(p.context());
        let dims: Vec<usize> = (0..=6).map(|k| invariant_dim(&action, &q, k).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 2, 1, 1, 0, 0]);
    }

    #[test]
    fn model_images_are_invariant_with_expected_degrees() {
        let p = pres(1, 3);
        let ctx = p.context();
        let action = GroupAction::new(ctx);
        let images = model_images(ctx).unwrap();
        for (img, (name, w)) in images.iter().zip(MODEL_VARS) {
            assert_eq!(img.homogeneity(ctx.ring().weights()).degree(), Some(w), "{name}");
            assert_eq!(&action.reynolds(img), img, "{name}");
        }
        assert!(model_images(pres(1, 2).context()).is_err());
    }

    #[test]
    fn model_matches_engine_for_p1_cubics() {
        let p = pres(1, 3);
        let q = GradedQuotient::new(&p, p.dim + 2).unwrap();
        let model = corollary35_presentation(&p).unwrap();
        assert_eq!(model.hilbert(p.dim + 2).unwrap(), vec![1, 1, 2, 1, 1, 0, 0]);
        for (label, r) in fixed_model_relations(&model.ring) {
            assert!(q.is_zero(&model.to_t(&r, p.ring().nvars())).unwrap(), "{label}");
        }
    }

    #[test]
    fn tau_kills_the_deepest_stratum_mod_boundary() {
        let p = pres(2, 3);
        let ctx = p.context();
        let images = model_images(ctx).unwrap();
        let slices = SliceSet::build(ctx.ring(), &p.boundary_generators().unwrap(), 0..=5);
        assert!(slices.is_zero_mod(ctx.ring(), &(&images[4] * &images[5])).unwrap());
    }
}
