//! The vector `V_l` of kappa classes of `H^l` (open part and per-side boundary
//! part) and its transition `V_l ↦ V_{l+1}`. The entries of `V_{n+1}` vanish on
//! `M̄₀,₀(ℙⁿ, d)` and give the non-boundary relations.
//!
//! Boundary entries are stored already pushed into `T`: `k[s]` is the image of
//! `k_s(H^l)` from the stratum of `s`, `psik[s]` the image of `ψ_s·k_s(H^l)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coefficients::{k0_expansion, kh_h2_poly, CoeffContext, K0Expansion};
use crate::error::{Error, Result};
use crate::partition::{proper_subsets, Side};
use crate::polyring::{q, qi, Poly};

/// Reading of the two-term sum over `h′ ⊊ h` in the boundary transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignMode {
    /// Both terms enter with `+`.
    #[default]
    Symmetric,
    /// Difference of the two terms, which cancels over the full sum.
    Printed,
}

impl std::str::FromStr for SignMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<SignMode> {
        match s {
            "symmetric" => Ok(SignMode::Symmetric),
            "printed" => Ok(SignMode::Printed),
            _ => Err(Error::Parse(s.into())),
        }
    }
}

impl std::fmt::Display for SignMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SignMode::Symmetric => "symmetric",
            SignMode::Printed => "printed",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VVector {
    pub level: u32,
    /// `k(H^{l+1})`, degree `l`.
    pub open_top: Poly,
    /// `k(H^l)`, degree `l − 1`.
    pub open: Poly,
    /// Pushforward of `k_s(H^l)` for every side `s`, degree `l`.
    pub k: BTreeMap<Side, Poly>,
    /// Pushforward of `ψ_s·k_s(H^l)`, degree `l + 1`.
    pub psik: BTreeMap<Side, Poly>,
}

impl VVector {
    /// Checks the degree bookkeeping of every slot.
    pub fn check_degrees(&self, ctx: &CoeffContext) -> Result<()> {
        let w = ctx.ring().weights();
        let l = self.level;
        let want = |label: String, p: &Poly, k: u32| -> Result<()> {
            match p.homogeneity(w) {
                crate::polyring::Homogeneity::Zero => Ok(()),
                crate::polyring::Homogeneity::Degree(x) if x == k => Ok(()),
                _ => Err(Error::Validation { label, reason: format!("expected degree {k}") }),
            }
        };
        want("open_top".into(), &self.open_top, l)?;
        want("open".into(), &self.open, l - 1)?;
        for (s, p) in &self.k {
            want(format!("k{s}"), p, l)?;
        }
        for (s, p) in &self.psik {
            want(format!("psik{s}"), p, l + 1)?;
        }
        Ok(())
    }
}

/// `V₁`: `(κ₂, d)` and `k_s(H) = |s|` times the stratum class.
pub fn seed_v1(ctx: &CoeffContext) -> VVector {
    let mut k = BTreeMap::new();
    let mut psik = BTreeMap::new();
    for s in ctx.sides() {
        let a = qi(s.len() as i64);
        k.insert(s, ctx.d_var(s) * a.clone());
        psik.insert(s, ctx.f_var(s) * a);
    }
    VVector { level: 1, open_top: ctx.kappa2(), open: ctx.constant(qi(ctx.d() as i64)), k, psik }
}

/// Evaluates a `k₀` expansion given the slot values at level `l`.
fn eval_k0(ctx: &CoeffContext, e: &K0Expansion, top: &Poly, open: &Poly, k: &dyn Fn(Side) -> Poly) -> Poly {
    let mut out = top * &e.top + open * &ctx.kappa2() * e.open_kappa2.clone();
    for (s, c) in &e.boundary {
        out = out + k(*s) * c.clone();
    }
    out
}

/// Level-independent ingredients of the transition.
struct Fixed {
    k0h1: Poly,
    k0h2: Poly,
}

fn fixed_terms(ctx: &CoeffContext) -> Result<Fixed> {
    let d = ctx.d() as i64;
    let e1 = k0_expansion(ctx, 1)?;
    let k0h1 = eval_k0(ctx, &e1, &ctx.kappa2(), &ctx.constant(qi(d)), &|s| ctx.d_var(s) * qi(s.len() as i64));
    let e2 = k0_expansion(ctx, 2)?;
    let mut pushed = BTreeMap::new();
    for s in ctx.sides() {
        pushed.insert(s, kh_h2_poly(ctx, s).reduce(ctx).pushforward(ctx)?);
    }
    let k0h2 = eval_k0(ctx, &e2, &ctx.kappa3(), &ctx.kappa2(), &|s| pushed[&s].clone());
    Ok(Fixed { k0h1, k0h2 })
}

/// One transition `V_l ↦ V_{l+1}`.
pub fn step(ctx: &CoeffContext, v: &VVector, sign: SignMode) -> Result<VVector> {
    let fixed = fixed_terms(ctx)?;
    step_with(ctx, v, sign, &fixed)
}

fn step_with(ctx: &CoeffContext, v: &VVector, sign: SignMode, fixed: &Fixed) -> Result<VVector> {
    let d = ctx.d() as i64;
    let full = ctx.full();
    let k2 = ctx.kappa2();
    let e = &v.k;
    let f = &v.psik;
    let dv = |s: Side| ctx.d_var(s);
    let el = k0_expansion(ctx, v.level)?;
    let k0l = eval_k0(ctx, &el, &v.open_top, &v.open, &|s| e[&s].clone());

    // Σ_s push(k_s(H^l) · k_{s̄}(H²)|_stratum)
    let mut kd = ctx.ring().zero();
    for s in ctx.sides() {
        let a = s.len() as i64;
        let b = d - a;
        let sb = s.complement(ctx.d());
        let dp = dv(s);
        let es = &e[&s];
        kd = kd + &k2 * es * q(b, d) + (-(&dp * es) - f[&s].clone()) * qi(a * b) + &dp * es * q(a * a * b, d);
        for h in proper_subsets(sb) {
            let x = h.len() as i64;
            kd = kd - &dv(h) * es * q(a * x * x, d);
        }
        for h in proper_subsets(s) {
            let x = h.len() as i64;
            kd = kd + &dv(h) * es * q(b * x * x, d);
        }
    }
    let open_top = (&v.open * &fixed.k0h2 + &k0l * &k2 - kd) * q(-1, 2);

    let half = q(-1, 2);
    let mut k = BTreeMap::new();
    let mut psik = BTreeMap::new();
    for s in ctx.sides() {
        let a = s.len() as i64;
        let b = d - a;
        let sb = s.complement(full.len() as u8);
        let dp = dv(s);
        let fs = ctx.f_var(s);
        let bs = ctx.b_poly(s);
        let cs = ctx.c_poly(s);
        let bb = ctx.b_poly(sb);
        let cb = ctx.c_poly(sb);
        let qs = -(&bs * &f[&s]) - &cs * &e[&s];
        let qsb = -(&bb * &f[&sb]) - &cb * &e[&sb];
        let subs_s = proper_subsets(s);
        let subs_sb = proper_subsets(sb);
        let symmetric = sign == SignMode::Symmetric;

        // k_s(H^{l+1})
        let es = &e[&s];
        let mut inner = &fixed.k0h1 * es + f[&s].clone() * qi(a) + (-(&dp * es) - f[&s].clone()) * qi(b);
        for &h in subs_s.iter().chain(&subs_sb) {
            inner = inner - &dv(h) * es * qi(h.len() as i64);
        }
        let mut t = inner * half.clone() + f[&s].clone() * qi(a);
        let mut side_sum = &k0l * &dp + f[&s].clone() + f[&sb].clone();
        for &h in subs_s.iter().chain(&subs_sb) {
            side_sum = side_sum - &dp * &e[&h];
        }
        t = t + side_sum * q(-a, 2);
        if symmetric {
            for &h in &subs_s {
                t = t - &dp * &e[&h] * qi(h.len() as i64);
            }
        }
        k.insert(s, t);

        // ψ_s · k_s(H^{l+1})
        let fsv = &f[&s];
        let mut inner = &fixed.k0h1 * fsv + qs.clone() * qi(a) + (-(&dp * fsv) - qs.clone()) * qi(b);
        for &h in subs_s.iter().chain(&subs_sb) {
            inner = inner - &dv(h) * fsv * qi(h.len() as i64);
        }
        let mut u = inner * half.clone() + qs.clone() * qi(a);
        let mut side_sum = &k0l * &fs + qs.clone() + (-(&dp * &f[&sb]) - qsb);
        for &h in subs_s.iter().chain(&subs_sb) {
            side_sum = side_sum - &fs * &e[&h];
        }
        u = u + side_sum * q(-a, 2);
        if symmetric {
            for &h in &subs_s {
                u = u - &fs * &e[&h] * qi(h.len() as i64);
            }
        }
        psik.insert(s, u);
    }
    Ok(VVector { level: v.level + 1, open_top, open: v.open_top.clone(), k, psik })
}

/// `V_{l}` for `l = 1..=level`.
pub fn iterate(ctx: &CoeffContext, level: u32, sign: SignMode) -> Result<Vec<VVector>> {
    let fixed = fixed_terms(ctx)?;
    let mut out = vec![seed_v1(ctx)];
    while (out.len() as u32) < level {
        let next = step_with(ctx, out.last().unwrap(), sign, &fixed)?;
        out.push(next);
    }
    Ok(out)
}

/// Entries of `V_{n+1}` as labelled `T` polynomials: open entries first, then the
/// boundary entries of every side.
pub fn kappa_relations(ctx: &CoeffContext, n: u32, sign: SignMode) -> Result<Vec<(String, Poly)>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let v = iterate(ctx, n + 1, sign)?.pop().expect("nonempty");
    let l = v.level;
    let mut out = vec![(format!("V{l}.open_top"), v.open_top), (format!("V{l}.open"), v.open)];
    for s in ctx.sides() {
        out.push((format!("V{l}.k{}", s.label()), v.k[&s].clone()));
        out.push((format!("V{l}.psik{}", s.label()), v.psik[&s].clone()));
    }
    Ok(out)
}

/// Coefficients of the open block: `V_{l+1}` open entries as combinations of `V_l`'s.
/// Returns `(a, b)` with `open_top' = a·open_top + b·open` after setting boundary
/// slots to zero, for `d = 1`-style checks.
pub fn open_block(ctx: &CoeffContext) -> Result<(Poly, Poly)> {
    let zero_boundary = |v: &mut VVector| {
        for p in v.k.values_mut() {
            *p = ctx.ring().zero();
        }
        for p in v.psik.values_mut() {
            *p = ctx.ring().zero();
        }
    };
    let fixed = fixed_terms(ctx)?;
    let mut probe = seed_v1(ctx);
    zero_boundary(&mut probe);
    probe.open_top = ctx.ring().one();
    probe.open = ctx.ring().zero();
    let a = step_with(ctx, &probe, SignMode::Symmetric, &fixed)?.open_top;
    probe.open_top = ctx.ring().zero();
    probe.open = ctx.ring().one();
    let b = step_with(ctx, &probe, SignMode::Symmetric, &fixed)?.open_top;
    let strip = |p: Poly| -> Poly {
        // Keep only the κ-part; boundary terms belong to the boundary block.
        let nd = 2;
        Poly::from_terms(p.nvars(), p.into_terms().filter(|(m, _)| m[nd..].iter().all(|&x| x == 0)))
    };
    Ok((strip(a), strip(b)))
}

/// `κ₃ − open_top(V₂)`; zero in `T` modulo the boundary relations.
pub fn v2_open_defect(ctx: &CoeffContext, sign: SignMode) -> Result<Poly> {
    let v = iterate(ctx, 2, sign)?.pop().expect("nonempty");
    Ok(v.open_top - ctx.kappa3())
}

/// `k[s](V₂) − push(k_s(H²))` for every side.
pub fn v2_boundary_defects(ctx: &CoeffContext, sign: SignMode) -> Result<Vec<(Side, Poly)>> {
    let v = iterate(ctx, 2, sign)?.pop().expect("nonempty");
    let mut out = Vec::new();
    for s in ctx.sides() {
        let want = kh_h2_poly(ctx, s).reduce(ctx).pushforward(ctx)?;
        out.push((s, v.k[&s].clone() - want));
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_degrees() {
        for d in 1..=4u8 {
            let ctx = CoeffContext::new(d).unwrap();
            seed_v1(&ctx).check_degrees(&ctx).unwrap();
        }
        let ctx = CoeffContext::new(3).unwrap();
        let s = Side::from_elems(&[1, 2]);
        assert_eq!(seed_v1(&ctx).k[&s], ctx.d_var(s) * qi(2));
    }

    #[test]
    fn degrees_hold_through_level_four() {
        for d in 1..=3u8 {
            let ctx = CoeffContext::new(d).unwrap();
            for v in iterate(&ctx, 4, SignMode::Symmetric).unwrap() {
                v.check_degrees(&ctx).unwrap();
            }
        }
    }

    #[test]
    fn open_block_matches_closed_form() {
        // open_top' = (1/d)κ₂·open_top + ((1/d)κ₃ − (1/d²)κ₂²)·open
        for d in 1..=4u8 {
            let ctx = CoeffContext::new(d).unwrap();
            let (a, b) = open_block(&ctx).unwrap();
            let dd = d as i64;
            assert_eq!(a, ctx.kappa2() * q(1, dd), "d={d}");
            assert_eq!(b, ctx.kappa3() * q(1, dd) - ctx.kappa2().pow(2) * q(1, dd * dd), "d={d}");
        }
    }

    #[test]
    fn v2_open_is_kappa3_for_d1() {
        let ctx = CoeffContext::new(1).unwrap();
        assert!(v2_open_defect(&ctx, SignMode::Symmetric).unwrap().is_zero());
    }

    #[test]
    fn relation_degrees() {
        for (n, d) in [(1u32, 2u8), (2, 2), (2, 3)] {
            let ctx = CoeffContext::new(d).unwrap();
            let w = ctx.ring().weights();
            for (label, r) in kappa_relations(&ctx, n, SignMode::Symmetric).unwrap() {
                let deg = r.homogeneity(w).degree();
                let want = if label.ends_with("open_top") || label.contains(".k") {
                    n + 1
                } else if label.ends_with(".open") {
                    n
                } else {
                    n + 2
                };
                assert!(deg.is_none() && r.is_zero() || deg == Some(want), "{label}");
            }
        }
        let ctx = CoeffContext::new(1).unwrap();
        assert_eq!(kappa_relations(&ctx, 2, SignMode::Symmetric).unwrap().len(), 2);
    }

    #[test]
    fn p1_conics_kill_kappa2() {
        let ctx = CoeffContext::new(2).unwrap();
        let rels = kappa_relations(&ctx, 1, SignMode::Symmetric).unwrap();
        assert_eq!(rels[1].1, ctx.kappa2());
    }
}
