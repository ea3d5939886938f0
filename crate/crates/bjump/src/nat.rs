//! Arbitrary-size naturals with a fast small-value path.
//!
//! Program indices produced by s-m-n, padding, and the construction
//! machinery routinely exceed `u64`, while interpreter registers and stage
//! counters almost never do. `Nat` keeps the common case unboxed and only
//! promotes to a heap `BigUint` past `u64::MAX`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A natural number, unboxed below `2^64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Nat {
    Small(u64),
    Big(Box<BigUint>),
}

impl Nat {
    pub const ZERO: Nat = Nat::Small(0);
    pub const ONE: Nat = Nat::Small(1);

    pub fn from_big(b: BigUint) -> Nat {
        match b.to_u64() {
            Some(v) => Nat::Small(v),
            None => Nat::Big(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigUint {
        match self {
            Nat::Small(v) => BigUint::from(*v),
            Nat::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Nat::Small(0))
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Nat::Small(v) => Some(*v),
            Nat::Big(_) => None,
        }
    }

    /// Saturating view for display-adjacent logic (sort keys, heuristics).
    pub fn to_u64_saturating(&self) -> u64 {
        self.to_u64().unwrap_or(u64::MAX)
    }

    pub fn bits(&self) -> u64 {
        match self {
            Nat::Small(0) => 0,
            Nat::Small(v) => 64 - v.leading_zeros() as u64,
            Nat::Big(b) => b.bits(),
        }
    }

    pub fn inc(&mut self) {
        match self {
            Nat::Small(v) => {
                if let Some(n) = v.checked_add(1) {
                    *v = n;
                } else {
                    *self = Nat::Big(Box::new(BigUint::from(u64::MAX) + 1u32));
                }
            }
            Nat::Big(b) => **b += 1u32,
        }
    }

    /// Decrement; caller checks `is_zero` first (the interpreter does).
    pub fn dec(&mut self) {
        match self {
            Nat::Small(v) => {
                debug_assert!(*v > 0, "dec on zero Nat");
                *v = v.saturating_sub(1);
            }
            Nat::Big(b) => {
                **b -= 1u32;
                if let Some(v) = b.to_u64() {
                    *self = Nat::Small(v);
                }
            }
        }
    }

    pub fn add(&self, other: &Nat) -> Nat {
        match (self, other) {
            (Nat::Small(a), Nat::Small(b)) => match a.checked_add(*b) {
                Some(v) => Nat::Small(v),
                None => Nat::from_big(BigUint::from(*a) + BigUint::from(*b)),
            },
            _ => Nat::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn add_u64(&self, other: u64) -> Nat {
        self.add(&Nat::Small(other))
    }

    /// `self - other`, saturating at zero.
    pub fn sub_sat(&self, other: &Nat) -> Nat {
        match (self, other) {
            (Nat::Small(a), Nat::Small(b)) => Nat::Small(a.saturating_sub(*b)),
            _ => {
                let a = self.to_big();
                let b = other.to_big();
                if a <= b {
                    Nat::ZERO
                } else {
                    Nat::from_big(a - b)
                }
            }
        }
    }

    pub fn mul(&self, other: &Nat) -> Nat {
        match (self, other) {
            (Nat::Small(a), Nat::Small(b)) => match a.checked_mul(*b) {
                Some(v) => Nat::Small(v),
                None => Nat::from_big(BigUint::from(*a) * BigUint::from(*b)),
            },
            _ => Nat::from_big(self.to_big() * other.to_big()),
        }
    }

    pub fn mul_u64(&self, other: u64) -> Nat {
        self.mul(&Nat::Small(other))
    }

    pub fn div_rem_u64(&self, d: u64) -> (Nat, u64) {
        assert!(d > 0);
        match self {
            Nat::Small(v) => (Nat::Small(v / d), v % d),
            Nat::Big(b) => {
                let q = (**b).clone() / d;
                let r = (**b).clone() % d;
                (Nat::from_big(q), r.to_u64().unwrap())
            }
        }
    }

    pub fn rem_u64(&self, d: u64) -> u64 {
        self.div_rem_u64(d).1
    }

    /// Cantor pairing: `pair(x, y) = (x+y)(x+y+1)/2 + y`, a bijection ω² → ω.
    pub fn pair(x: &Nat, y: &Nat) -> Nat {
        if let (Nat::Small(a), Nat::Small(b)) = (x, y) {
            if let Some(s) = a.checked_add(*b) {
                if s < (1u64 << 31) {
                    return Nat::Small(s * (s + 1) / 2 + b);
                }
            }
        }
        let s = x.to_big() + y.to_big();
        Nat::from_big(&s * (&s + 1u32) / 2u32 + y.to_big())
    }

    /// Inverse of [`Nat::pair`].
    pub fn unpair(z: &Nat) -> (Nat, Nat) {
        if let Nat::Small(z) = z {
            if *z < (1u64 << 62) {
                // t = floor((sqrt(8z+1) - 1) / 2)
                let mut t = ((((8 * *z + 1) as f64).sqrt() - 1.0) / 2.0) as u64;
                while t * (t + 1) / 2 > *z {
                    t -= 1;
                }
                while (t + 1) * (t + 2) / 2 <= *z {
                    t += 1;
                }
                let w = t * (t + 1) / 2;
                let y = z - w;
                let x = t - y;
                return (Nat::Small(x), Nat::Small(y));
            }
        }
        let z = z.to_big();
        let d = (&z * 8u32 + 1u32).sqrt();
        let mut t = (&d - 1u32) / 2u32;
        while &t * (&t + 1u32) / 2u32 > z {
            t -= 1u32;
        }
        while (&t + 1u32) * (&t + 2u32) / 2u32 <= z {
            t += 1u32;
        }
        let w = &t * (&t + 1u32) / 2u32;
        let y = &z - w;
        let x = t - &y;
        (Nat::from_big(x), Nat::from_big(y))
    }

    /// Right-nested triple: `⟨x, y, z⟩ = pair(x, pair(y, z))`.
    pub fn triple(x: &Nat, y: &Nat, z: &Nat) -> Nat {
        Nat::pair(x, &Nat::pair(y, z))
    }

    pub fn untriple(w: &Nat) -> (Nat, Nat, Nat) {
        let (x, yz) = Nat::unpair(w);
        let (y, z) = Nat::unpair(&yz);
        (x, y, z)
    }
}

impl Default for Nat {
    fn default() -> Self {
        Nat::ZERO
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat::Small(v)
    }
}

impl From<u32> for Nat {
    fn from(v: u32) -> Self {
        Nat::Small(v as u64)
    }
}

impl From<usize> for Nat {
    fn from(v: usize) -> Self {
        Nat::Small(v as u64)
    }
}

impl From<bool> for Nat {
    fn from(v: bool) -> Self {
        Nat::Small(v as u64)
    }
}

impl From<BigUint> for Nat {
    fn from(b: BigUint) -> Self {
        Nat::from_big(b)
    }
}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Nat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Nat::Small(a), Nat::Small(b)) => a.cmp(b),
            (Nat::Small(_), Nat::Big(_)) => Ordering::Less,
            (Nat::Big(_), Nat::Small(_)) => Ordering::Greater,
            (Nat::Big(a), Nat::Big(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nat::Small(v) => write!(f, "{v}"),
            Nat::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits() > 128 {
            write!(f, "Nat(~2^{})", self.bits())
        } else {
            write!(f, "Nat({self})")
        }
    }
}

impl FromStr for Nat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let b = BigUint::from_str(s).map_err(|e| format!("bad natural `{s}`: {e}"))?;
        Ok(Nat::from_big(b))
    }
}

impl serde::Serialize for Nat {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            // JSON numbers are only exact to 2^53.
            Nat::Small(v) if *v < (1u64 << 53) => ser.serialize_u64(*v),
            other => ser.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Nat {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Nat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a natural number or decimal string")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Nat, E> {
                Ok(Nat::Small(v))
            }
            fn visit_str<E: serde::de::Error>(self, s: &str) -> Result<Nat, E> {
                s.parse().map_err(serde::de::Error::custom)
            }
        }
        de.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_base_cases() {
        let p = |a: u64, b: u64| Nat::pair(&a.into(), &b.into()).to_u64().unwrap();
        assert_eq!(p(0, 0), 0);
        assert_eq!(p(1, 2), 8);
    }

    #[test]
    fn pair_unpair_bijection_grid() {
        for x in 0u64..100 {
            for y in 0u64..100 {
                let z = Nat::pair(&x.into(), &y.into());
                let (a, b) = Nat::unpair(&z);
                assert_eq!((a, b), (x.into(), y.into()), "x={x} y={y}");
            }
        }
        // Surjectivity on an initial segment.
        for z in 0u64..500 {
            let (x, y) = Nat::unpair(&z.into());
            assert_eq!(Nat::pair(&x, &y), z.into());
        }
    }

    #[test]
    fn unpair_big_values() {
        let x: Nat = "123456789012345678901234567890".parse().unwrap();
        let y: Nat = "98765432109876543210".parse().unwrap();
        let z = Nat::pair(&x, &y);
        assert_eq!(Nat::unpair(&z), (x, y));
    }

    #[test]
    fn promote_demote_at_u64_boundary() {
        let mut n = Nat::Small(u64::MAX);
        n.inc();
        assert!(matches!(n, Nat::Big(_)));
        n.dec();
        assert_eq!(n, Nat::Small(u64::MAX));
    }

    #[test]
    fn ordering_across_reprs() {
        let small = Nat::Small(5);
        let big: Nat = "123456789012345678901234567890".parse().unwrap();
        assert!(small < big);
        assert!(big > small);
    }
}
