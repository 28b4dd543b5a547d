//! Classes on a single boundary stratum `M̄_{hh̄}`: node ψ-classes, restricted
//! divisors and kappas, reduction by the node quadratic relation, restriction of
//! ambient classes, and pushforward back into `T`.

use std::collections::HashMap;

use crate::coefficients::CoeffContext;
use crate::error::{Error, Result};
use crate::partition::{is_crossing, Partition, Side};
use crate::polyring::{GradedVar, Poly, Ring, VarKind};

/// A polynomial on the stratum of `partition`, in that stratum's ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumExpr {
    pub partition: Partition,
    pub poly: Poly,
}

impl StratumExpr {
    pub fn new(partition: Partition, poly: Poly) -> StratumExpr {
        StratumExpr { partition, poly }
    }

    pub fn reduce(&self, ctx: &CoeffContext) -> StratumExpr {
        StratumExpr::new(self.partition, ctx.stratum(self.partition).reduce(&self.poly))
    }

    pub fn pushforward(&self, ctx: &CoeffContext) -> Result<Poly> {
        ctx.stratum(self.partition).pushforward(ctx, &self.poly)
    }
}

/// Variable layout and relations of one stratum: `κ₂, κ₃, ψ_h, ψ_h̄`, then `δ_Q` for
/// every partition `Q` compatible with `P` (including `P` itself).
#[derive(Clone, Debug)]
pub struct StratumRing {
    p: Partition,
    ring: Ring,
    psi_h: usize,
    psi_hbar: usize,
    delta: HashMap<Partition, usize>,
    /// `(b, c)` for the canonical and the other side, in stratum variables.
    bc: [(Poly, Poly); 2],
    /// T-ring index of each stratum variable that lifts (κ's and δ's).
    lift_index: Vec<Option<usize>>,
}

impl StratumRing {
    /// `b`, `c` are given in `T` variables for the canonical side; the other side's
    /// pair follows from `ψ_h̄ = −δ_P − ψ_h`.
    pub fn new(ctx: &CoeffContext, p: Partition, b: &Poly, c: &Poly) -> Result<StratumRing> {
        let h = p.canonical();
        let hb = p.other();
        let mut vars = vec![
            GradedVar::new("k2", VarKind::Kappa2, 1),
            GradedVar::new("k3", VarKind::Kappa3, 2),
            GradedVar::new(format!("psi{}", h.label()), VarKind::Psi(h), 1),
            GradedVar::new(format!("psi{}", hb.label()), VarKind::Psi(hb), 1),
        ];
        let mut lift_index = vec![Some(0), Some(1), None, None];
        let mut delta = HashMap::new();
        for &q in ctx.partitions() {
            if !is_crossing(p, q)? {
                delta.insert(q, vars.len());
                lift_index.push(Some(ctx.d_index(q)));
                vars.push(GradedVar::new(format!("delta{}", q.canonical().label()), VarKind::Delta(q), 1));
            }
        }
        let mut st = StratumRing {
            p,
            ring: Ring::new(vars),
            psi_h: 2,
            psi_hbar: 3,
            delta,
            bc: [(Poly::zero(0), Poly::zero(0)), (Poly::zero(0), Poly::zero(0))],
            lift_index,
        };
        let b = st.restrict(ctx, b)?;
        let c = st.restrict(ctx, c)?;
        let dp = st.delta(h);
        let bb = &dp * &crate::polyring::qi(2) - b.clone();
        let cb = c.clone() - &dp * &dp + &bb * &dp;
        st.bc = [(b, c), (bb, cb)];
        Ok(st)
    }

    pub fn partition(&self) -> Partition {
        self.p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn kappa2(&self) -> Poly {
        self.ring.var(0)
    }

    pub fn kappa3(&self) -> Poly {
        self.ring.var(1)
    }

    /// `ψ` at the node on side `s` of this stratum.
    pub fn psi(&self, s: Side) -> Poly {
        if s == self.p.canonical() {
            self.ring.var(self.psi_h)
        } else {
            assert_eq!(s, self.p.other(), "{s} is not a side of {}", self.p);
            self.ring.var(self.psi_hbar)
        }
    }

    /// Restricted divisor of the partition having side `s`; zero if it crosses `P`.
    pub fn delta(&self, s: Side) -> Poly {
        let q = Partition::new(self.p.d(), s).expect("proper side");
        match self.delta.get(&q) {
            Some(&i) => self.ring.var(i),
            None => self.ring.zero(),
        }
    }

    /// `(b, c)` with `ψ_s² + b ψ_s + c = 0`.
    pub fn bc_for_side(&self, s: Side) -> (Poly, Poly) {
        if s == self.p.canonical() {
            self.bc[0].clone()
        } else {
            self.bc[1].clone()
        }
    }

    /// Eliminates `ψ_h̄` and lowers `ψ_h` to degree at most one.
    pub fn reduce(&self, e: &Poly) -> Poly {
        let mut images: Vec<Poly> = (0..self.ring.nvars()).map(|i| self.ring.var(i)).collect();
        images[self.psi_hbar] = -self.delta(self.p.canonical()) - self.ring.var(self.psi_h);
        let mut cur = e.substitute(&images, self.ring.nvars());
        let (b, c) = &self.bc[0];
        let psi = self.ring.var(self.psi_h);
        let rewrite = -(b * &psi) - c.clone();
        loop {
            let mut done = self.ring.zero();
            let mut todo = self.ring.zero();
            for (m, v) in cur.into_terms() {
                if m[self.psi_h] >= 2 {
                    let mut k = m;
                    k[self.psi_h] -= 2;
                    todo.add_term(k, v);
                } else {
                    done.add_term(m, v);
                }
            }
            if todo.is_zero() {
                return done;
            }
            cur = done + &todo * &rewrite;
        }
    }

    pub fn is_reduced(&self, e: &Poly) -> bool {
        e.terms().all(|(m, _)| m[self.psi_hbar] == 0 && m[self.psi_h] <= 1)
    }

    /// Restriction of a `T` polynomial: κ's are kept, `D_P ↦ δ_P = −ψ_h − ψ_h̄`,
    /// compatible `D_Q ↦ δ_Q`, crossing `D_Q ↦ 0`. `F` classes are rejected.
    pub fn restrict(&self, ctx: &CoeffContext, p: &Poly) -> Result<Poly> {
        let t = ctx.ring();
        let mut images = Vec::with_capacity(t.nvars());
        for v in t.vars() {
            images.push(match &v.kind {
                VarKind::Kappa2 => self.kappa2(),
                VarKind::Kappa3 => self.kappa3(),
                VarKind::D(q) => match self.delta.get(q) {
                    Some(&i) => self.ring.var(i),
                    None => self.ring.zero(),
                },
                _ => self.ring.zero(),
            });
        }
        for (m, _) in p.terms() {
            for (i, v) in t.vars().iter().enumerate() {
                if m[i] > 0 && matches!(v.kind, VarKind::F(_)) {
                    return Err(Error::FRestriction);
                }
            }
        }
        Ok(p.substitute(&images, self.ring.nvars()))
    }

    /// Maps a ψ-free stratum polynomial to `T` by `δ_Q ↦ D_Q`.
    pub fn lift(&self, ctx: &CoeffContext, e: &Poly) -> Result<Poly> {
        let n = ctx.ring().nvars();
        let mut out = Poly::zero(n);
        for (m, c) in e.terms() {
            if m[self.psi_h] > 0 || m[self.psi_hbar] > 0 {
                return Err(Error::Unreduced);
            }
            let mut k = vec![0u8; n];
            for (i, &x) in m.iter().enumerate() {
                if let Some(j) = self.lift_index[i] {
                    k[j] += x;
                }
            }
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    /// Pushforward to `T`: a ψ-free monomial `m` goes to `D_P·lift(m)`, `ψ_s·m` to
    /// `F_s·lift(m)`. Raises degree by one.
    pub fn pushforward(&self, ctx: &CoeffContext, e: &Poly) -> Result<Poly> {
        let h = self.p.canonical();
        let hb = self.p.other();
        let mut groups = [self.ring.zero(), self.ring.zero(), self.ring.zero()];
        for (m, c) in e.terms() {
            let slot = match (m[self.psi_h], m[self.psi_hbar]) {
                (0, 0) => 0,
                (1, 0) => 1,
                (0, 1) => 2,
                _ => return Err(Error::Unreduced),
            };
            let mut k = m.clone();
            k[self.psi_h] = 0;
            k[self.psi_hbar] = 0;
            groups[slot].add_term(k, c.clone());
        }
        let [plain, with_h, with_hb] = groups;
        Ok(ctx.d_var(h) * self.lift(ctx, &plain)?
            + ctx.f_var(h) * self.lift(ctx, &with_h)?
            + ctx.f_var(hb) * self.lift(ctx, &with_hb)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::q;

    fn setup(d: u8) -> CoeffContext {
        CoeffContext::new(d).unwrap()
    }

    #[test]
    fn reduce_psi_square_at_d2() {
        let ctx = setup(2);
        let p = ctx.partitions()[0];
        let st = ctx.stratum(p);
        let h = p.canonical();
        let psi = st.psi(h);
        let dl = st.delta(h);
        let got = st.reduce(&(&psi * &psi));
        let c = st.kappa2().pow(2) * q(3, 16) - st.kappa3() * q(1, 2) + dl.pow(2) * q(5, 16);
        assert_eq!(got, -(&dl * &psi) - c);
    }

    #[test]
    fn reduce_mixed_and_idempotent() {
        let ctx = setup(3);
        for p in ctx.partitions() {
            let st = ctx.stratum(*p);
            let (h, hb) = (p.canonical(), p.other());
            let mixed = st.reduce(&(st.psi(h) * st.psi(hb)));
            let two_step = st.reduce(&(-(st.delta(h) * st.psi(h)) - st.psi(h).pow(2)));
            assert_eq!(mixed, two_step);
            assert!(st.is_reduced(&mixed));
            assert_eq!(st.reduce(&mixed), mixed);
            let big = st.psi(hb).pow(3) * st.kappa2() + st.psi(h).pow(4);
            let r = st.reduce(&big);
            assert!(st.is_reduced(&r));
            assert_eq!(st.reduce(&r), r);
            let w = st.ring().weights();
            assert_eq!(r.homogeneity(w), big.homogeneity(w));
        }
    }

    #[test]
    fn restriction_rules() {
        let ctx = setup(4);
        let p = ctx.partition_of(Side::from_elems(&[1, 2]));
        let cross = ctx.partition_of(Side::from_elems(&[2, 3]));
        let st = ctx.stratum(p);
        let dp = ctx.d_var(p.canonical());
        let want = st.reduce(&(-st.psi(p.canonical()) - st.psi(p.other())));
        assert_eq!(st.restrict(&ctx, &dp).unwrap(), want);
        assert!(st.restrict(&ctx, &ctx.d_var(cross.canonical())).unwrap().is_zero());
        assert_eq!(st.restrict(&ctx, &ctx.kappa2()).unwrap(), st.kappa2());
        assert!(matches!(st.restrict(&ctx, &ctx.f_var(p.canonical())), Err(Error::FRestriction)));
    }

    #[test]
    fn pushforward_examples() {
        let ctx = setup(3);
        for p in ctx.partitions() {
            let st = ctx.stratum(*p);
            let (h, hb) = (p.canonical(), p.other());
            let dp = ctx.d_var(h);
            assert_eq!(st.pushforward(&ctx, &st.ring().one()).unwrap(), dp);
            assert_eq!(st.pushforward(&ctx, &st.psi(h)).unwrap(), ctx.f_var(h));
            let sum = st.pushforward(&ctx, &(st.psi(h) + st.psi(hb))).unwrap();
            assert_eq!(sum + &dp * &dp, ctx.ring().zero());
            assert!(matches!(st.pushforward(&ctx, &st.psi(h).pow(2)), Err(Error::Unreduced)));
        }
    }

    #[test]
    fn pushforward_raises_degree() {
        let ctx = setup(3);
        let p = ctx.partitions()[1];
        let st = ctx.stratum(p);
        let e = st.reduce(&(st.psi(p.canonical()).pow(3) + st.kappa3() * st.delta(p.canonical())));
        let pushed = st.pushforward(&ctx, &e).unwrap();
        assert_eq!(pushed.homogeneity(ctx.ring().weights()).degree(), Some(4));
        assert_eq!(e.homogeneity(st.ring().weights()).degree(), Some(3));
    }
}
