//! Exact rational scalars and small vector helpers.
//!
//! All geometry in this crate is done over `BigRational`; lattice data is kept
//! as `i64` vectors and promoted on demand.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type QVec = Vec<Q>;
pub type IVec = Vec<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Scales a rational vector by a positive factor to the primitive integer
/// vector on the same ray. The zero vector maps to zero.
pub fn primitive(v: &[Q]) -> Result<IVec> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Ok(vec![0; v.len()]);
    }
    ints.iter()
        .map(|x| {
            (x / &g)
                .to_i64()
                .ok_or_else(|| Error::Overflow(format!("{x}")))
        })
        .collect()
}

pub fn primitive_i(v: &[i64]) -> IVec {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// True iff `a` is a positive rational multiple of `b` (both nonzero).
pub fn same_ray(a: &[i64], b: &[i64]) -> bool {
    let (pa, pb) = (primitive_i(a), primitive_i(b));
    pa.iter().any(|&x| x != 0) && pa == pb
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("{s}: zero denominator")));
        }
        Ok(Q::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        Ok(Q::from_integer(n))
    }
}

/// `p/q` text form; integers print without a denominator.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Serde wrapper: rationals travel as `"p/q"` strings; plain JSON integers
/// are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub Q);

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(&self.0))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
                Ok(Rat(q(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
                Ok(Rat(Q::from_integer(BigInt::from(v))))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
                parse_q(v).map(Rat).map_err(E::custom)
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_scaling() {
        let v = vec![q_frac(2, 3), q_frac(-4, 9), q(0)];
        assert_eq!(primitive(&v).unwrap(), vec![3, -2, 0]);
        assert_eq!(primitive(&[q(0), q(0)]).unwrap(), vec![0, 0]);
        assert_eq!(primitive_i(&[4, -6]), vec![2, -3]);
    }

    #[test]
    fn text_round_trip() {
        for s in ["3/2", "-7", "0", "-1/3"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(fmt_q(&parse_q("6/4").unwrap()), "3/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn rat_serde() {
        let r: Vec<Rat> = serde_json::from_str(r#"[1, "3/2", "-4"]"#).unwrap();
        assert_eq!(r[1].0, q_frac(3, 2));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"["1","3/2","-4"]"#);
    }

    #[test]
    fn rays() {
        assert!(same_ray(&[2, 4], &[1, 2]));
        assert!(!same_ray(&[-1, -2], &[1, 2]));
        assert!(!same_ray(&[0, 0], &[0, 0]));
    }
}
