use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `Q[t]/(f)` for a monic irreducible cubic `f = t^3 + c2 t^2 + c1 t + c0`
/// with integer coefficients. The order `O = Z[t]/(f)` is the set of elements
/// with integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicField {
    /// `[c0, c1, c2]`.
    coeffs: [i64; 3],
}

impl CubicField {
    /// `coeffs` lists all four coefficients from the leading one down.
    pub fn new(coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() != 4 || coeffs[0] != 1 {
            return Err(Error::NotMonicCubic);
        }
        let field = CubicField {
            coeffs: [coeffs[3], coeffs[2], coeffs[1]],
        };
        // A reducible cubic has a linear factor; for a monic integer
        // polynomial that means an integer root dividing c0.
        if let Some(r) = field.integer_root() {
            return Err(Error::Reducible(format!(
                "{} has the root {r}",
                field.polynomial_string()
            )));
        }
        Ok(field)
    }

    /// `t^3 - t^2 + t + 7`.
    pub fn shipped() -> Self {
        CubicField { coeffs: [7, 1, -1] }
    }

    /// Coefficients from the leading one down: `[1, c2, c1, c0]`.
    pub fn polynomial(&self) -> [i64; 4] {
        [1, self.coeffs[2], self.coeffs[1], self.coeffs[0]]
    }

    pub fn polynomial_string(&self) -> String {
        let mut s = String::from("t^3");
        for (c, mono) in [
            (self.coeffs[2], "t^2"),
            (self.coeffs[1], "t"),
            (self.coeffs[0], ""),
        ] {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { " - " } else { " + " };
            let abs = c.unsigned_abs();
            if mono.is_empty() {
                s.push_str(&format!("{sign}{abs}"));
            } else if abs == 1 {
                s.push_str(&format!("{sign}{mono}"));
            } else {
                s.push_str(&format!("{sign}{abs}{mono}"));
            }
        }
        s
    }

    fn integer_root(&self) -> Option<i64> {
        let c0 = self.coeffs[0];
        let eval = |r: i128| {
            let [c0, c1, c2] = self.coeffs.map(i128::from);
            r * r * r + c2 * r * r + c1 * r + c0
        };
        if c0 == 0 {
            return Some(0);
        }
        let n = c0.unsigned_abs();
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                for cand in [d, n / d] {
                    for r in [cand as i128, -(cand as i128)] {
                        if eval(r) == 0 {
                            return Some(r as i64);
                        }
                    }
                }
            }
            d += 1;
        }
        None
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_integers(&[0, 0, 0])
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_integers(&[1, 0, 0])
    }

    pub fn t(&self) -> FieldElement {
        FieldElement::from_integers(&[0, 1, 0])
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(std::array::from_fn(|i| &a.0[i] + &b.0[i]))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(std::array::from_fn(|i| &a.0[i] - &b.0[i]))
    }

    pub fn scale(&self, a: &FieldElement, q: &BigRational) -> FieldElement {
        FieldElement(std::array::from_fn(|i| &a.0[i] * q))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut prod = vec![BigRational::zero(); 5];
        for i in 0..3 {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                prod[i + j] += &a.0[i] * &b.0[j];
            }
        }
        self.reduce(prod)
    }

    /// Reduces a polynomial of any degree modulo `f`.
    fn reduce(&self, mut p: Vec<BigRational>) -> FieldElement {
        while p.len() > 3 {
            let top = p.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let d = p.len() - 3;
            // t^(d+3) = t^d (-c2 t^2 - c1 t - c0)
            for k in 0..3 {
                p[d + k] -= &top * BigInt::from(self.coeffs[k]);
            }
        }
        p.resize(3, BigRational::zero());
        FieldElement([p[0].clone(), p[1].clone(), p[2].clone()])
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in `Q[t]`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Invariant: r_i = s_i * a (mod f).
        let f: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .chain(std::iter::once(BigRational::one()))
            .collect();
        let mut r0 = f;
        let mut s0: Vec<BigRational> = Vec::new();
        let mut r1 = trim(a.0.to_vec());
        let mut s1 = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // f is irreducible, so the last nonzero remainder is a constant.
        let c = r1.first().cloned().ok_or(Error::DivisionByZero)?;
        let inv = self.reduce(s1.into_iter().map(|x| x / &c).collect());
        debug_assert!(self.mul(a, &inv) == self.one());
        Ok(inv)
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^n` for any integer `n`; negative powers need `a != 0`.
    pub fn pow(&self, a: &FieldElement, n: i64) -> Result<FieldElement> {
        let base = if n < 0 { self.inv(a)? } else { a.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        Ok(acc)
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let out = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(out)
}

/// Division with remainder; `b` must be nonzero and trimmed.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// `c0 + c1 t + c2 t^2` with rational coordinates, always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement([BigRational; 3]);

impl FieldElement {
    pub fn new(coords: [BigRational; 3]) -> Self {
        FieldElement(coords)
    }

    pub fn from_integers(coords: &[i64; 3]) -> Self {
        FieldElement(coords.map(|c| BigRational::from_integer(c.into())))
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Membership in `O = Z[t]/(f)`: every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|q| q.is_integer())
    }

    /// Least positive `d` with `d * self` integral.
    pub fn denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let mono = ["", "t", "t^2"][i];
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

impl FromStr for FieldElement {
    type Err = Error;

    /// Parses three comma-separated rationals `c0,c1,c2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .trim()
            .trim_matches(['[', ']', '(', ')'])
            .split(',')
            .collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three coordinates in `{s}`")));
        }
        let mut out = Vec::with_capacity(3);
        for p in parts {
            let p = p.trim().trim_matches('"');
            out.push(
                parse_rational(p).ok_or_else(|| Error::Parse(format!("invalid rational `{p}`")))?,
            );
        }
        let [a, b, c]: [BigRational; 3] = out.try_into().expect("three parts");
        Ok(FieldElement([a, b, c]))
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        for q in &self.0 {
            seq.serialize_element(&format!("{}/{}", q.numer(), q.denom()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct Coord(BigRational);
        impl<'de> Deserialize<'de> for Coord {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                struct CoordVisitor;
                impl Visitor<'_> for CoordVisitor {
                    type Value = Coord;
                    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                        f.write_str("an integer or a rational string \"p/q\"")
                    }
                    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coord, E> {
                        Ok(Coord(BigRational::from_integer(v.into())))
                    }
                    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coord, E> {
                        Ok(Coord(BigRational::from_integer(v.into())))
                    }
                    fn visit_str<E: de::Error>(self, v: &str) -> Result<Coord, E> {
                        parse_rational(v)
                            .map(Coord)
                            .ok_or_else(|| E::custom(format!("invalid rational `{v}`")))
                    }
                }
                d.deserialize_any(CoordVisitor)
            }
        }
        struct ElementVisitor;
        impl<'de> Visitor<'de> for ElementVisitor {
            type Value = FieldElement;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("three rational coordinates")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<FieldElement, A::Error> {
                let mut out = Vec::new();
                while let Some(Coord(q)) = seq.next_element()? {
                    out.push(q);
                }
                let n = out.len();
                let arr: [BigRational; 3] = out
                    .try_into()
                    .map_err(|_| de::Error::custom(format!("expected 3 coordinates, found {n}")))?;
                Ok(FieldElement(arr))
            }
        }
        d.deserialize_seq(ElementVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reduction_of_t_cubed() {
        let k = CubicField::shipped();
        let t = k.t();
        let t2 = k.mul(&t, &t);
        assert_eq!(k.mul(&t, &t2), FieldElement::from_integers(&[-7, -1, 1]));
        assert_eq!(k.mul(&t2, &k.one()), t2);
    }

    #[test]
    fn inverses() {
        let k = CubicField::shipped();
        assert_eq!(k.inv(&k.one()).unwrap(), k.one());
        let t = k.t();
        assert_eq!(k.mul(&t, &k.inv(&t).unwrap()), k.one());
        let y = FieldElement::new([q(1, 2), q(0, 1), q(1, 2)]);
        let z = k.inv(&y).unwrap();
        assert_eq!(k.mul(&y, &z), k.one());
        assert_eq!(k.inv(&k.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn powers() {
        let k = CubicField::shipped();
        let t = k.t();
        assert_eq!(k.pow(&t, 0).unwrap(), k.one());
        assert_eq!(
            k.mul(&k.pow(&t, 5).unwrap(), &k.pow(&t, -5).unwrap()),
            k.one()
        );
    }

    #[test]
    fn rejects_bad_polynomials() {
        assert_eq!(CubicField::new(&[2, 0, 0, 1]), Err(Error::NotMonicCubic));
        assert_eq!(CubicField::new(&[1, 0, 1]), Err(Error::NotMonicCubic));
        // t^3 - 1 has the root 1.
        assert!(matches!(
            CubicField::new(&[1, 0, 0, -1]),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(
            CubicField::new(&[1, 2, 3, 0]),
            Err(Error::Reducible(_))
        ));
        assert_eq!(
            CubicField::new(&[1, -1, 1, 7]).unwrap(),
            CubicField::shipped()
        );
        assert_eq!(
            CubicField::shipped().polynomial_string(),
            "t^3 - t^2 + t + 7"
        );
    }

    #[test]
    fn text_forms() {
        let y = FieldElement::new([q(1, 2), q(0, 1), q(1, 2)]);
        assert_eq!(y.to_string(), "1/2 + 1/2*t^2");
        assert_eq!(
            FieldElement::from_integers(&[0, -1, 3]).to_string(),
            "-t + 3*t^2"
        );
        let json = serde_json::to_string(&y).unwrap();
        assert_eq!(json, r#"["1/2","0/1","1/2"]"#);
        assert_eq!(serde_json::from_str::<FieldElement>(&json).unwrap(), y);
        assert_eq!(
            serde_json::from_str::<FieldElement>(r#"[1, "2/4", 0]"#)
                .unwrap()
                .coords()[1],
            q(1, 2)
        );
        assert!(serde_json::from_str::<FieldElement>(r#"["1/0", 0, 0]"#).is_err());
        assert_eq!("1/2, 0, 1/2".parse::<FieldElement>().unwrap(), y);
    }
}
