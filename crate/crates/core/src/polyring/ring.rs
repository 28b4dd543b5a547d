use std::collections::HashMap;
use std::fmt::Write;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::poly::{mono_degree, Mono, Poly};
use super::Q;
use crate::error::{Error, Result};
use crate::partition::{Partition, Side};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    Kappa2,
    Kappa3,
    D(Partition),
    F(Partition),
    /// Node cotangent class on one side of a stratum.
    Psi(Side),
    /// A boundary divisor restricted to a stratum.
    Delta(Partition),
    /// Free-standing generator of an auxiliary ring.
    Named,
}

impl VarKind {
    pub fn tag(&self) -> &'static str {
        match self {
            VarKind::Kappa2 => "kappa2",
            VarKind::Kappa3 => "kappa3",
            VarKind::D(_) => "D",
            VarKind::F(_) => "F",
            VarKind::Psi(_) => "psi",
            VarKind::Delta(_) => "delta",
            VarKind::Named => "named",
        }
    }
}

impl Serialize for VarKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GradedVar {
    pub name: String,
    pub kind: VarKind,
    pub degree: u32,
}

impl GradedVar {
    pub fn new(name: impl Into<String>, kind: VarKind, degree: u32) -> GradedVar {
        GradedVar { name: name.into(), kind, degree }
    }
}

/// A graded polynomial ring: an ordered list of variables with positive degrees.
#[derive(Clone, Debug)]
pub struct Ring {
    vars: Vec<GradedVar>,
    weights: Vec<u32>,
    by_name: HashMap<String, usize>,
}

impl Ring {
    pub fn new(vars: Vec<GradedVar>) -> Ring {
        assert!(vars.iter().all(|v| v.degree > 0), "variables need positive degree");
        let weights = vars.iter().map(|v| v.degree).collect();
        let by_name = vars.iter().enumerate().map(|(i, v)| (v.name.clone(), i)).collect();
        Ring { vars, weights, by_name }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[GradedVar] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    pub fn var_named(&self, name: &str) -> Result<Poly> {
        self.index(name).map(|i| self.var(i)).ok_or_else(|| Error::UnknownVar(name.into()))
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars())
    }

    pub fn constant(&self, c: Q) -> Poly {
        Poly::constant(self.nvars(), c)
    }

    pub fn degree_of(&self, m: &[u8]) -> u32 {
        mono_degree(m, &self.weights)
    }

    /// All monomials of weighted degree `k`, in the ring's column order: higher powers
    /// of later variables come first.
    pub fn monomials(&self, k: u32) -> Vec<Mono> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut cur = vec![0u8; n];
        fn rec(i: usize, rem: u32, w: &[u32], cur: &mut Vec<u8>, out: &mut Vec<Mono>) {
            if i == 0 {
                if rem == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let v = i - 1;
            if v == 0 {
                if rem.is_multiple_of(w[0]) {
                    cur[0] = (rem / w[0]) as u8;
                    out.push(cur.clone());
                    cur[0] = 0;
                }
                return;
            }
            for e in (0..=rem / w[v]).rev() {
                cur[v] = e as u8;
                rec(v, rem - e * w[v], w, cur, out);
            }
            cur[v] = 0;
        }
        if n == 0 {
            if k == 0 {
                out.push(Vec::new());
            }
            return out;
        }
        rec(n, k, &self.weights, &mut cur, &mut out);
        out
    }

    /// Ring with the same variables listed in a new order: variable `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Ring {
        let mut vars = self.vars.clone();
        for (i, v) in self.vars.iter().enumerate() {
            vars[perm[i]] = v.clone();
        }
        Ring::new(vars)
    }

    pub fn fmt_mono(&self, m: &[u8]) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].name.clone()
                } else {
                    format!("{}^{}", self.vars[i].name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn fmt_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in p.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = m.iter().all(|&e| e == 0);
            if unit {
                write!(s, "{a}").unwrap();
            } else if a.is_one() {
                s.push_str(&self.fmt_mono(m));
            } else {
                write!(s, "{a}*{}", self.fmt_mono(m)).unwrap();
            }
        }
        s
    }

    /// Parses sums of products such as `3/2*k2^2*D1 - F12 + 1`.
    pub fn parse_poly(&self, text: &str) -> Result<Poly> {
        let bad = || Error::Parse(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = self.zero();
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'+' => (Q::one(), &piece[1..]),
                b'-' => (-Q::one(), &piece[1..]),
                _ => (Q::one(), piece),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let mut coeff = sign;
            let mut mono = vec![0u8; self.nvars()];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(bad());
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    coeff *= parse_rational(factor).ok_or_else(bad)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u8>().map_err(|_| bad())?),
                    None => (factor, 1),
                };
                let i = self.index(name).ok_or_else(|| Error::UnknownVar(name.into()))?;
                mono[i] = mono[i].checked_add(exp).ok_or_else(bad)?;
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

pub fn parse_rational(s: &str) -> Option<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}
