//! Closed-form coefficients: the `N` numbers of the ψ-relation on `M̄₀,₁`, the
//! quadratic data `b_h, c_h` of the node ψ-class on a boundary stratum, the
//! `k_h(H²)` divisor expansion and the `k₀(H^l)` expansion.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, is_crossing, proper_subsets, Partition, Side};
use crate::polyring::{q, qi, GradedVar, Poly, Ring, VarKind, Q};
use crate::stratum::{StratumExpr, StratumRing};

/// `N_ψh = (x²/e²)(6 − 4x/e)` with `x = |h|` and `e` the degree of the ambient factor.
pub fn n_psi(h_size: usize, d: u8) -> Result<Q> {
    if h_size == 0 || h_size >= d as usize {
        return Err(Error::OutOfRange { h: h_size, d });
    }
    Ok(n_psi_raw(h_size, d as usize))
}

fn n_psi_raw(x: usize, e: usize) -> Q {
    let x = qi(x as i64);
    let e = qi(e as i64);
    &x * &x / (&e * &e) * (qi(6) - qi(4) * &x / &e)
}

/// `N_hh′`: nested `(|h|²/e²)(6|h′|/e − 2|h|/e − 3|h′|²/e²)` for `h ⊆ h′`, disjoint
/// `−3|h|²|h′|²/e⁴`. Symmetric in its arguments.
pub fn n_pair(h: Side, hp: Side, d: u8) -> Result<Q> {
    pair_coefficient(h, hp, d as usize).ok_or_else(|| Error::NotNested(h.to_string(), hp.to_string()))
}

fn pair_coefficient(h: Side, hp: Side, e: usize) -> Option<Q> {
    let e = qi(e as i64);
    if h.is_subset(hp) || hp.is_subset(h) {
        let (small, big) = if h.is_subset(hp) { (h, hp) } else { (hp, h) };
        let a = qi(small.len() as i64);
        let b = qi(big.len() as i64);
        Some(&a * &a / (&e * &e) * (qi(6) * &b / &e - qi(2) * &a / &e - qi(3) * &b * &b / (&e * &e)))
    } else if !h.intersects(hp) {
        let a = qi(h.len() as i64);
        let b = qi(hp.len() as i64);
        Some(-qi(3) * &a * &a * &b * &b / (&e * &e * &e * &e))
    } else {
        None
    }
}

/// The ring `T` for a given `d`: `κ₂, κ₃`, then `D_P` for every partition, then `F_P`
/// for the canonical side of every partition. Owns the per-stratum algebras.
#[derive(Clone, Debug)]
pub struct CoeffContext {
    d: u8,
    parts: Vec<Partition>,
    ring: Ring,
    d_index: HashMap<Partition, usize>,
    f_index: HashMap<Partition, usize>,
    strata: HashMap<Partition, StratumRing>,
    mode: CoeffMode,
}

/// Which version of the stratum quadratic relation and of `k_h(H²)` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffMode {
    /// Obtained by eliminating `k_h(H³)` between the two node factors.
    #[default]
    Derived,
    /// The closed forms exactly as written in the source.
    Printed,
}

impl std::str::FromStr for CoeffMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<CoeffMode> {
        match s {
            "derived" => Ok(CoeffMode::Derived),
            "printed" => Ok(CoeffMode::Printed),
            _ => Err(Error::Parse(s.into())),
        }
    }
}

impl std::fmt::Display for CoeffMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CoeffMode::Derived => "derived",
            CoeffMode::Printed => "printed",
        })
    }
}

impl CoeffContext {
    pub fn new(d: u8) -> Result<CoeffContext> {
        CoeffContext::with_mode(d, CoeffMode::Derived)
    }

    pub fn with_mode(d: u8, mode: CoeffMode) -> Result<CoeffContext> {
        let parts = enumerate_partitions(d)?;
        let mut vars = vec![GradedVar::new("k2", VarKind::Kappa2, 1), GradedVar::new("k3", VarKind::Kappa3, 2)];
        let mut d_index = HashMap::new();
        let mut f_index = HashMap::new();
        for p in &parts {
            d_index.insert(*p, vars.len());
            vars.push(GradedVar::new(format!("D{}", p.canonical().label()), VarKind::D(*p), 1));
        }
        for p in &parts {
            f_index.insert(*p, vars.len());
            vars.push(GradedVar::new(format!("F{}", p.canonical().label()), VarKind::F(*p), 2));
        }
        let mut ctx = CoeffContext { d, parts, ring: Ring::new(vars), d_index, f_index, strata: HashMap::new(), mode };
        let mut strata = HashMap::new();
        for p in ctx.parts.clone() {
            let (b, c) = match mode {
                CoeffMode::Derived => derived_bc(&ctx, p.canonical())?,
                CoeffMode::Printed => (b_poly_printed(&ctx, p.canonical()), c_poly_printed(&ctx, p.canonical())),
            };
            strata.insert(p, StratumRing::new(&ctx, p, &b, &c)?);
        }
        ctx.strata = strata;
        Ok(ctx)
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn mode(&self) -> CoeffMode {
        self.mode
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    /// Both sides of every partition.
    pub fn sides(&self) -> Vec<Side> {
        self.parts.iter().flat_map(|p| p.sides()).collect()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn full(&self) -> Side {
        Side::full(self.d)
    }

    pub fn partition_of(&self, s: Side) -> Partition {
        Partition::new(self.d, s).expect("side of a boundary partition")
    }

    pub fn stratum(&self, p: Partition) -> &StratumRing {
        &self.strata[&p]
    }

    pub fn kappa2(&self) -> Poly {
        self.ring.var(0)
    }

    pub fn kappa3(&self) -> Poly {
        self.ring.var(1)
    }

    pub fn constant(&self, c: Q) -> Poly {
        self.ring.constant(c)
    }

    pub fn d_index(&self, p: Partition) -> usize {
        self.d_index[&p]
    }

    pub fn f_index(&self, p: Partition) -> usize {
        self.f_index[&p]
    }

    /// `D` of the partition having `s` as a side.
    pub fn d_var(&self, s: Side) -> Poly {
        self.ring.var(self.d_index[&self.partition_of(s)])
    }

    /// `F_s`, the pushforward of the node ψ-class on side `s`. Non-canonical sides use
    /// `F_h̄ = −D² − F_h`.
    pub fn f_var(&self, s: Side) -> Poly {
        let p = self.partition_of(s);
        let f = self.ring.var(self.f_index[&p]);
        if s == p.canonical() {
            f
        } else {
            let dv = self.ring.var(self.d_index[&p]);
            -(&dv * &dv) - f
        }
    }

    /// `b_h` for side `h`, in `T` variables, under this context's mode.
    pub fn b_poly(&self, s: Side) -> Poly {
        let p = self.partition_of(s);
        let st = self.stratum(p);
        let (b, _) = st.bc_for_side(s);
        st.lift(self, &b).expect("b has no ψ")
    }

    /// `c_h` for side `h`, in `T` variables, under this context's mode.
    pub fn c_poly(&self, s: Side) -> Poly {
        let p = self.partition_of(s);
        let st = self.stratum(p);
        let (_, c) = st.bc_for_side(s);
        st.lift(self, &c).expect("c has no ψ")
    }
}

/// `b_h` exactly as written: `−N_ψh̄·D + Σ_{h′⊊h} N_ψh′·D_h′ − Σ_{h′⊊h̄} N_ψh′·D_h′`.
pub fn b_poly_printed(ctx: &CoeffContext, h: Side) -> Poly {
    let d = ctx.d;
    let hb = h.complement(d);
    let np = |s: Side| n_psi_raw(s.len(), d as usize);
    let mut b = ctx.d_var(h) * -np(hb);
    for hp in proper_subsets(h) {
        b = b + ctx.d_var(hp) * np(hp);
    }
    for hp in proper_subsets(hb) {
        b = b - ctx.d_var(hp) * np(hp);
    }
    b
}

/// `c_h` exactly as written, crossing pairs contributing zero.
pub fn c_poly_printed(ctx: &CoeffContext, h: Side) -> Poly {
    let d = ctx.d;
    let e = d as usize;
    let hb = h.complement(d);
    let k2 = ctx.kappa2();
    let n = |a: Side, b: Side| pair_coefficient(a, b, e).unwrap_or_else(Q::zero);
    let dd = qi(d as i64);
    let mut c = &k2 * &k2 * (qi(3) / dd.pow(4)) - ctx.kappa3() * (qi(4) / dd.pow(3));
    for side in [h, hb] {
        let subs = proper_subsets(side);
        for &a in &subs {
            c = c + ctx.d_var(a).pow(2) * n(a, a);
        }
        for &a in &subs {
            for &b in &subs {
                if a != b {
                    c = c + &ctx.d_var(a) * &ctx.d_var(b) * n(b, a);
                }
            }
        }
    }
    let dp = ctx.d_var(h);
    c = c + dp.pow(2) * n(hb, hb);
    for a in proper_subsets(h) {
        c = c - &dp * &ctx.d_var(a) * (qi(2) * n(a, hb));
    }
    for a in proper_subsets(hb) {
        c = c + &dp * &ctx.d_var(a) * (qi(2) * n(a, hb));
    }
    c
}

/// `k_s(H²)` on the stratum of side `s`, written in `T` variables plus a ψ placeholder.
/// `psi` is the polynomial to use for `ψ_s`, `boundary` maps a side to its restricted
/// divisor class, `kappa2` is `κ₂` in the same ring.
fn kh_h2_generic(
    d: u8,
    s: Side,
    psi: &Poly,
    kappa2: &Poly,
    boundary: &dyn Fn(Side) -> Poly,
    mode: CoeffMode,
) -> Poly {
    let sb = s.complement(d);
    let a = s.len() as i64;
    let b = sb.len() as i64;
    let dd = d as i64;
    let sign = match mode {
        CoeffMode::Derived => qi(1),
        CoeffMode::Printed => qi(-1),
    };
    let mut k = kappa2 * &q(a, dd) + psi * &qi(a * b) + boundary(s) * (q(a * b * b, dd) * &sign);
    for h in proper_subsets(s) {
        let x = h.len() as i64;
        k = k - boundary(h) * (q(b * x * x, dd) * &sign);
    }
    for h in proper_subsets(sb) {
        let x = h.len() as i64;
        k = k + boundary(h) * (q(a * x * x, dd) * &sign);
    }
    k
}

/// `k_h(H²)` restricted to the stratum of the partition containing side `h`.
pub fn kh_h2_poly(ctx: &CoeffContext, h: Side) -> StratumExpr {
    kh_h2_with_mode(ctx, h, ctx.mode)
}

/// The source's closed form of `k_h(H²)`, kept for comparison.
pub fn kh_h2_printed(ctx: &CoeffContext, h: Side) -> StratumExpr {
    kh_h2_with_mode(ctx, h, CoeffMode::Printed)
}

fn kh_h2_with_mode(ctx: &CoeffContext, h: Side, mode: CoeffMode) -> StratumExpr {
    let p = ctx.partition_of(h);
    let st = ctx.stratum(p);
    let poly = kh_h2_generic(ctx.d, h, &st.psi(h), &st.kappa2(), &|s| st.delta(s), mode);
    StratumExpr::new(p, poly)
}

/// Eliminates `k_h(H³)` between the ψ-relations on the two node factors of the
/// stratum with sides `h`, `h̄`, leaving `ψ_h² + b ψ_h + c`. Returns `(b, c)` in `T`
/// variables, with `D` standing for the restricted divisors.
pub fn derived_bc(ctx: &CoeffContext, h: Side) -> Result<(Poly, Poly)> {
    let d = ctx.d;
    let base = ctx.ring.vars().to_vec();
    let nt = base.len();
    let mut vars = base;
    vars.push(GradedVar::new("psi", VarKind::Psi(h), 1));
    vars.push(GradedVar::new("K3", VarKind::Named, 2));
    let ring = Ring::new(vars);
    let n = ring.nvars();
    let embed = |p: &Poly| -> Poly {
        Poly::from_terms(
            n,
            p.terms().map(|(m, c)| {
                let mut k = m.clone();
                k.extend([0, 0]);
                (k, c.clone())
            }),
        )
    };
    let dv = |s: Side| embed(&ctx.d_var(s));
    let k2 = ring.var(0);
    let k3 = ring.var(1);
    let psi = ring.var(nt);
    let k3s = ring.var(nt + 1);
    let hb = h.complement(d);
    let dp = dv(h);

    let kh = kh_h2_generic(d, h, &psi, &k2, &dv, CoeffMode::Derived);
    let psib = -(&dp) - psi.clone();
    let khb = &k2 - &kh;
    let k3b = &k3 - &k3s;

    // ψ-relation on a factor of degree e = |s|, with boundary divisors indexed by
    // proper subsets of s.
    let factor = |s: Side, psi_s: &Poly, kk: &Poly, kk3: &Poly| -> Poly {
        let e = s.len();
        let subs = proper_subsets(s);
        let mut r = psi_s * psi_s;
        for &a in &subs {
            r = r - psi_s * &dv(a) * n_psi_raw(a.len(), e);
        }
        for &a in &subs {
            for &b in &subs {
                if let Some(c) = pair_coefficient(a, b, e) {
                    r = r + &dv(a) * &dv(b) * c;
                }
            }
        }
        let ee = qi(e as i64);
        r + kk * kk * (qi(3) / ee.pow(4)) - kk3 * &(qi(4) / ee.pow(3))
    };
    let a3 = qi(h.len() as i64).pow(3);
    let b3 = qi(hb.len() as i64).pow(3);
    let total = factor(h, &psi, &kh, &k3s) * (a3 / qi(4)) + factor(hb, &psib, &khb, &k3b) * (b3 / qi(4));
    let total = total * (qi(4) / qi(d as i64).pow(3));
    if total.degree_in(nt + 1) != 0 {
        return Err(Error::Validation { label: format!("b/c for {h}"), reason: "k(H³) did not cancel".into() });
    }
    let lead = total.coeff_of_var_power(nt, 2);
    if lead != ring.one() {
        return Err(Error::Validation { label: format!("b/c for {h}"), reason: "leading ψ² coefficient is not 1".into() });
    }
    let project = |p: Poly| -> Poly {
        Poly::from_terms(nt, p.into_terms().map(|(mut m, c)| {
            m.truncate(nt);
            (m, c)
        }))
    };
    Ok((project(total.coeff_of_var_power(nt, 1)), project(total.coeff_of_var_power(nt, 0))))
}

/// `k₀(H^l) = top·k(H^{l+1}) + open·κ₂·k(H^l) + Σ_h coeff·k_{h̄}(H^l)`, as slot coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct K0Expansion {
    pub l: u32,
    pub top: Q,
    pub open_kappa2: Q,
    /// `(side, coefficient)`: the coefficient multiplies the boundary slot of `side`.
    pub boundary: Vec<(Side, Q)>,
}

pub fn k0_expansion(ctx: &CoeffContext, l: u32) -> Result<K0Expansion> {
    if l == 0 {
        return Err(Error::OutOfRange { h: 0, d: ctx.d });
    }
    let dd = qi(ctx.d as i64);
    let boundary = ctx
        .sides()
        .into_iter()
        .map(|h| (h.complement(ctx.d), qi((h.len() * h.len()) as i64) / (&dd * &dd)))
        .collect();
    Ok(K0Expansion { l, top: -qi(2) / &dd, open_kappa2: Q::one() / (&dd * &dd), boundary })
}

/// Whether two partitions may appear together in a monomial.
pub fn compatible(p: Partition, q: Partition) -> bool {
    !is_crossing(p, q).unwrap_or(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn side(e: &[u8]) -> Side {
        Side::from_elems(e)
    }

    #[test]
    fn n_psi_values() {
        assert_eq!(n_psi(1, 2).unwrap(), qi(1));
        assert_eq!(n_psi(1, 3).unwrap(), q(14, 27));
        assert_eq!(n_psi(2, 3).unwrap(), q(40, 27));
        assert!(n_psi(3, 3).is_err());
    }

    #[test]
    fn n_pair_values() {
        assert_eq!(n_pair(side(&[1]), side(&[2]), 3).unwrap(), q(-1, 27));
        assert_eq!(n_pair(side(&[1]), side(&[1]), 2).unwrap(), q(5, 16));
        assert_eq!(n_pair(side(&[1]), side(&[1, 2]), 3).unwrap(), q(2, 9));
        assert!(n_pair(side(&[1, 2]), side(&[2, 3]), 4).is_err());
    }

    #[test]
    fn n_pair_disjoint_symmetry() {
        for d in 2..=4u8 {
            for p in enumerate_partitions(d).unwrap() {
                for q in enumerate_partitions(d).unwrap() {
                    for a in p.sides() {
                        for b in q.sides() {
                            if !a.intersects(b) {
                                assert_eq!(n_pair(a, b, d).unwrap(), n_pair(b, a, d).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn printed_bc_at_d2() {
        let ctx = CoeffContext::new(2).unwrap();
        let r = ctx.ring();
        let h = side(&[1]);
        assert_eq!(b_poly_printed(&ctx, h), r.parse_poly("-D1").unwrap());
        assert_eq!(c_poly_printed(&ctx, h), r.parse_poly("3/16*k2^2 - 1/2*k3 + 5/16*D1^2").unwrap());
    }

    #[test]
    fn derived_b_is_printed_b_with_flipped_divisors() {
        for d in 2..=4u8 {
            let ctx = CoeffContext::new(d).unwrap();
            for h in ctx.sides() {
                let (b, _) = derived_bc(&ctx, h).unwrap();
                assert_eq!(b, -b_poly_printed(&ctx, h), "d={d} h={h}");
            }
        }
    }

    #[test]
    fn derived_c_matches_printed_at_d2() {
        let ctx = CoeffContext::new(2).unwrap();
        let (_, c) = derived_bc(&ctx, side(&[1])).unwrap();
        assert_eq!(c, c_poly_printed(&ctx, side(&[1])));
    }

    #[test]
    fn derived_c_differs_from_printed_at_d3() {
        // Singletons agree; two-element sides differ in the D·D cross terms.
        let ctx = CoeffContext::new(3).unwrap();
        for h in ctx.sides() {
            let (_, c) = derived_bc(&ctx, h).unwrap();
            assert_eq!(c == c_poly_printed(&ctx, h), h.len() == 1, "{h}");
        }
    }

    #[test]
    fn bc_are_homogeneous() {
        for d in 2..=4u8 {
            for mode in [CoeffMode::Derived, CoeffMode::Printed] {
                let ctx = CoeffContext::with_mode(d, mode).unwrap();
                let w = ctx.ring().weights();
                for h in ctx.sides() {
                    assert_eq!(ctx.b_poly(h).homogeneity(w).degree(), Some(1));
                    assert_eq!(ctx.c_poly(h).homogeneity(w).degree(), Some(2));
                }
            }
        }
    }

    #[test]
    fn derived_relation_is_side_independent() {
        // ψ_h̄ = −D − ψ_h turns the h̄ relation into the h relation.
        for d in 2..=4u8 {
            let ctx = CoeffContext::new(d).unwrap();
            for p in ctx.partitions() {
                let h = p.canonical();
                let hb = p.other();
                let (b, c) = derived_bc(&ctx, h).unwrap();
                let (bb, cb) = derived_bc(&ctx, hb).unwrap();
                let dp = ctx.d_var(h);
                assert_eq!(b, &dp * &qi(2) - bb.clone());
                assert_eq!(c, &dp * &dp - &bb * &dp + cb);
            }
        }
    }

    #[test]
    fn kh_h2_examples_as_printed() {
        let ctx = CoeffContext::new(2).unwrap();
        let h = side(&[1]);
        let st = ctx.stratum(ctx.partition_of(h));
        let e = kh_h2_printed(&ctx, h);
        let want = st.psi(h) - st.delta(h) * q(1, 2) + st.kappa2() * q(1, 2);
        assert_eq!(e.poly, want);

        let ctx = CoeffContext::new(3).unwrap();
        let st = ctx.stratum(ctx.partition_of(h));
        let e = kh_h2_printed(&ctx, h);
        let want = st.psi(h) * qi(2) - st.delta(h) * q(4, 3) + st.kappa2() * q(1, 3)
            - (st.delta(side(&[2])) + st.delta(side(&[3]))) * q(1, 3);
        assert_eq!(e.poly, want);
    }

    #[test]
    fn kh_h2_sum_rule() {
        for d in 2..=4u8 {
            let ctx = CoeffContext::new(d).unwrap();
            for p in ctx.partitions() {
                let st = ctx.stratum(*p);
                let sum = kh_h2_poly(&ctx, p.canonical()).poly + kh_h2_poly(&ctx, p.other()).poly;
                assert_eq!(st.reduce(&sum), st.kappa2(), "d={d} {p}");
                let printed = kh_h2_printed(&ctx, p.canonical()).poly + kh_h2_printed(&ctx, p.other()).poly;
                assert_ne!(st.reduce(&printed), st.kappa2(), "printed form d={d} {p}");
            }
        }
    }

    #[test]
    fn k0_expansion_at_level_one() {
        // k₀(H) = −(2/d)κ₂ + (1/d²)·d·κ₂ + Σ (|h|²/d²)|h̄| D.
        let ctx = CoeffContext::new(3).unwrap();
        let e = k0_expansion(&ctx, 1).unwrap();
        assert_eq!(e.top, q(-2, 3));
        assert_eq!(e.open_kappa2, q(1, 9));
        assert_eq!(e.boundary.len(), 6);
        let mut total = ctx.kappa2() * (&e.top + &e.open_kappa2 * qi(3));
        for (s, c) in &e.boundary {
            total = total + ctx.d_var(*s) * (c * qi(s.len() as i64));
        }
        let mut want = ctx.kappa2() * q(-1, 3);
        for h in ctx.sides() {
            let a = h.len() as i64;
            want = want + ctx.d_var(h) * q(a * a * (3 - a), 9);
        }
        assert_eq!(total, want);
    }
}
