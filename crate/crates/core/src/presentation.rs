//! Generators and relations of the extended tautological ring `T`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coefficients::{CoeffContext, CoeffMode};
use crate::error::{Error, Result};
use crate::kappa::{kappa_relations, SignMode};
use crate::partition::{chain_range, is_crossing, orient, Permutation, SubsetMode};
use crate::polyring::{homogeneous_gens, Homogeneity, Poly, Ring, SliceSet, Q};
use crate::symmetry::act_on_poly;

/// How the fifth boundary relation enters the ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Rel5Mode {
    /// `F_h · (3)` with `F_h²` rewritten by (4); homogeneous of degree 5.
    #[default]
    #[serde(rename = "derived")]
    Derived,
    /// The literal form, rejected when inhomogeneous.
    #[serde(rename = "as-printed")]
    AsPrinted,
}

impl std::str::FromStr for Rel5Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rel5Mode> {
        match s {
            "derived" => Ok(Rel5Mode::Derived),
            "as-printed" => Ok(Rel5Mode::AsPrinted),
            _ => Err(Error::Parse(s.into())),
        }
    }
}

impl std::fmt::Display for Rel5Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Rel5Mode::Derived => "derived",
            Rel5Mode::AsPrinted => "as-printed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Flags {
    pub rel5: Rel5Mode,
    pub subsets: SubsetMode,
    pub coeffs: CoeffMode,
    pub sign: SignMode,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub n: u32,
    pub d: u8,
    pub dim: u32,
    pub relations: Vec<(String, Poly)>,
    pub flags: Flags,
    ctx: CoeffContext,
}

/// `nd + n + d − 3`.
pub fn expected_dim(n: u32, d: u8) -> u32 {
    n * d as u32 + n + d as u32 - 3
}

impl Presentation {
    pub fn build(n: u32, d: u8, flags: Flags) -> Result<Presentation> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let ctx = CoeffContext::with_mode(d, flags.coeffs)?;
        let mut relations = Vec::new();
        let parts = ctx.partitions().to_vec();
        for (i, &p) in parts.iter().enumerate() {
            for &q in &parts[i + 1..] {
                let (dp, dq) = (ctx.d_var(p.canonical()), ctx.d_var(q.canonical()));
                if is_crossing(p, q)? {
                    relations.push((format!("L3.1-1:{}|{}", p.canonical().label(), q.canonical().label()), &dp * &dq));
                    continue;
                }
                let (s, t) = orient(p, q)?;
                let mut chain = ctx.ring().zero();
                for (r, _) in chain_range(p, q, flags.subsets)? {
                    chain = chain + ctx.d_var(r.canonical());
                }
                let (fs, ft) = (ctx.f_var(s), ctx.f_var(t));
                let r3 = &fs * &dq + &ft * &dp - &(&dp * &dq) * &chain;
                let tag = format!("{}|{}", s.label(), t.label());
                match flags.rel5 {
                    Rel5Mode::Derived => {
                        let (b, c) = (ctx.b_poly(s), ctx.c_poly(s));
                        let fs2 = -(&b * &fs * &dp) - &c * &dp.pow(2);
                        let r5 = &fs2 * &dq + &(&ft * &fs) * &dp - &(&(&dp * &dq) * &chain) * &fs;
                        relations.push((format!("L3.1-3:{tag}"), r3));
                        relations.push((format!("L3.1-5:{tag}"), r5));
                    }
                    Rel5Mode::AsPrinted => {
                        let (b, c) = (ctx.b_poly(s), ctx.c_poly(s));
                        let r5 = &fs * &ft - &(&(&(&b * &dp) + &chain) * &dq) * &fs - &c * &dp.pow(2);
                        relations.push((format!("L3.1-3:{tag}"), r3));
                        let label = format!("L3.1-5:{tag}");
                        if r5.homogeneity(ctx.ring().weights()) == Homogeneity::Mixed {
                            return Err(Error::Inhomogeneous { label });
                        }
                        relations.push((label, r5));
                    }
                }
            }
        }
        for &p in &parts {
            for s in p.sides() {
                let (dp, fs) = (ctx.d_var(s), ctx.f_var(s));
                let r4 = &fs * &fs + &(&ctx.b_poly(s) * &fs) * &dp + &ctx.c_poly(s) * &dp.pow(2);
                relations.push((format!("L3.1-4:{}", s.label()), r4));
            }
        }
        relations.extend(kappa_relations(&ctx, n, flags.sign)?);
        Ok(Presentation { n, d, dim: expected_dim(n, d), relations, flags, ctx })
    }

    pub fn ring(&self) -> &Ring {
        self.ctx.ring()
    }

    pub fn context(&self) -> &CoeffContext {
        &self.ctx
    }

    /// Nonzero relations with their degrees.
    pub fn generators(&self) -> Result<Vec<(Poly, u32)>> {
        homogeneous_gens(self.ring(), self.relations.iter().map(|(l, p)| (l.clone(), p)))
    }

    /// The boundary relations alone, without the kappa relations.
    pub fn boundary_generators(&self) -> Result<Vec<(Poly, u32)>> {
        homogeneous_gens(
            self.ring(),
            self.relations.iter().filter(|(l, _)| l.starts_with("L3.1")).map(|(l, p)| (l.clone(), p)),
        )
    }

    /// Same ideal with relations reordered and variables relabelled; used for
    /// order-independence checks. `var_perm[i]` is the new position of variable `i`.
    pub fn permuted(&self, rel_order: &[usize], var_perm: &[usize]) -> (Ring, Vec<(Poly, u32)>) {
        let ring = self.ring().permuted(var_perm);
        let gens = rel_order
            .iter()
            .map(|&i| &self.relations[i].1)
            .filter(|p| !p.is_zero())
            .map(|p| {
                let q = p.permute_vars(var_perm);
                let k = q.homogeneity(ring.weights()).degree().unwrap_or(0);
                (q, k)
            })
            .collect();
        (ring, gens)
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        let gens = self.generators()?;
        let max = gens.iter().map(|g| g.1).max().unwrap_or(0);
        let slices = SliceSet::build(self.ring(), &gens, 0..=max);
        if slices.get(0)?.quotient_dim() != 1 {
            return Err(Error::Validation { label: "degree 0".into(), reason: "constant in ideal".into() });
        }
        let d = self.d;
        let transpositions: Vec<Permutation> = (1..d).map(|i| Permutation::transposition(d, i, i + 1)).collect();
        for (label, r) in &self.relations {
            for t in &transpositions {
                let image = act_on_poly(&self.ctx, t, r);
                if !slices.is_zero_mod(self.ring(), &image)? {
                    return Err(Error::Validation { label: label.clone(), reason: format!("not stable under {t:?}") });
                }
            }
        }
        Ok(ValidationReport {
            homogeneous: true,
            stable: true,
            no_constant: true,
            relations: self.relations.len(),
            rel5: self.flags.rel5,
        })
    }

    /// Canonical JSON form; identical inputs give identical bytes.
    pub fn to_json(&self) -> Value {
        let ring = self.ring();
        let vars: Vec<Value> =
            ring.vars().iter().map(|v| json!({"name": v.name, "kind": v.kind.tag(), "degree": v.degree})).collect();
        let relations: Vec<Value> =
            self.relations.iter().map(|(l, p)| json!({"label": l, "poly": poly_to_json(p)})).collect();
        json!({
            "n": self.n,
            "d": self.d,
            "dim": self.dim,
            "vars": vars,
            "relations": relations,
            "flags": {
                "rel5": self.flags.rel5.to_string(),
                "subsets": self.flags.subsets.to_string(),
                "coeffs": self.flags.coeffs.to_string(),
                "sign": self.flags.sign.to_string(),
            }
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("presentation serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub homogeneous: bool,
    pub stable: bool,
    pub no_constant: bool,
    pub relations: usize,
    pub rel5: Rel5Mode,
}

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!([int_json(c.numer()), int_json(c.denom()), m]))
            .collect(),
    )
}

pub fn poly_from_json(nvars: usize, v: &Value) -> Result<Poly> {
    let bad = || Error::Parse(v.to_string());
    let int = |x: &Value| -> Result<BigInt> {
        match x {
            Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
            Value::String(s) => s.parse().map_err(|_| bad()),
            _ => Err(bad()),
        }
    };
    let mut out = Poly::zero(nvars);
    for t in v.as_array().ok_or_else(bad)? {
        let t = t.as_array().ok_or_else(bad)?;
        if t.len() != 3 {
            return Err(bad());
        }
        let den = int(&t[1])?;
        if den.is_zero() {
            return Err(bad());
        }
        let m: Vec<u8> = serde_json::from_value(t[2].clone())?;
        if m.len() != nvars {
            return Err(bad());
        }
        out.add_term(m, Q::new(int(&t[0])?, den));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_conics_shape() {
        let p = Presentation::build(1, 2, Flags::default()).unwrap();
        let names: Vec<_> = p.ring().vars().iter().map(|v| v.name.clone()).collect();
        assert_eq!(names, ["k2", "k3", "D1", "F1"]);
        let r4 = &p.relations.iter().find(|(l, _)| l == "L3.1-4:1").unwrap().1;
        let want = p.ring().parse_poly("F1^2 + F1*D1^2 + 3/16*k2^2*D1^2 - 1/2*k3*D1^2 + 5/16*D1^4").unwrap();
        assert_eq!(r4, &want);
        assert!(p.relations.iter().any(|(_, r)| r == &p.context().kappa2()));
    }

    #[test]
    fn lines_in_p3() {
        let p = Presentation::build(3, 1, Flags::default()).unwrap();
        assert_eq!(p.ring().nvars(), 2);
        let degs: Vec<_> = p.generators().unwrap().iter().map(|g| g.1).collect();
        assert_eq!(degs, [4, 3]);
        p.validate().unwrap();
    }

    #[test]
    fn d3_has_no_crossing_relations() {
        let p = Presentation::build(2, 3, Flags::default()).unwrap();
        assert_eq!(p.ring().nvars(), 8);
        assert!(!p.relations.iter().any(|(l, _)| l.starts_with("L3.1-1")));
    }

    #[test]
    fn as_printed_rel5_is_inhomogeneous() {
        let flags = Flags { rel5: Rel5Mode::AsPrinted, ..Flags::default() };
        assert!(matches!(Presentation::build(1, 3, flags), Err(Error::Inhomogeneous { .. })));
    }

    #[test]
    fn validates_small_cases() {
        for (n, d) in [(1, 2), (2, 2), (1, 3)] {
            Presentation::build(n, d, Flags::default()).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn sign_flip_in_r4_is_caught() {
        let mut p = Presentation::build(2, 2, Flags::default()).unwrap();
        let ring = p.ring().clone();
        let i = p.relations.iter().position(|(l, _)| l == "L3.1-4:1").unwrap();
        let f = ring.var_named("F1").unwrap();
        let dv = ring.var_named("D1").unwrap();
        p.relations[i].1 = p.relations[i].1.clone() - &(&f * &dv) * &dv * Q::from_integer(2.into());
        assert!(p.validate().is_err());
    }

    #[test]
    fn json_is_deterministic_and_round_trips() {
        let a = Presentation::build(1, 3, Flags::default()).unwrap();
        let b = Presentation::build(1, 3, Flags::default()).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
        let v = a.to_json();
        let nv = a.ring().nvars();
        for (r, (_, p)) in v["relations"].as_array().unwrap().iter().zip(&a.relations) {
            assert_eq!(&poly_from_json(nv, &r["poly"]).unwrap(), p);
        }
    }
}
