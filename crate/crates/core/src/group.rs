use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Finite abelian group `Z/n1 + Z/n2 + ...` in invariant-factor form:
/// every factor is at least 2 and divides the next.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    invariant_factors: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Normalizes an arbitrary direct sum of finite cyclic groups.
    ///
    /// Panics on a zero order (an infinite cyclic summand).
    pub fn from_cyclic_orders<I, T>(orders: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let mut f: Vec<BigUint> = orders.into_iter().map(Into::into).collect();
        assert!(f.iter().all(|x| !x.is_zero()), "cyclic orders must be positive");
        // (a, b) -> (gcd, lcm) pushes the chain into divisibility order
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                let (a, b) = (&f[i], &f[j]);
                let (g, l) = (a.gcd(b), a.lcm(b));
                f[i] = g;
                f[j] = l;
            }
        }
        f.retain(|x| !x.is_one());
        AbelianGroup { invariant_factors: f }
    }

    /// `(Z/r)^k`.
    pub fn elementary(r: u64, k: usize) -> Self {
        Self::from_cyclic_orders(std::iter::repeat_n(BigUint::from(r), k))
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigUint {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// The `r`-torsion subgroup `Z/gcd(n1, r) + Z/gcd(n2, r) + ...`.
    pub fn torsion(&self, r: u64) -> Self {
        let r = BigUint::from(r);
        Self::from_cyclic_orders(self.invariant_factors.iter().map(|n| n.gcd(&r)))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|n| format!("Z/{n}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.invariant_factors.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let v: Vec<String> = Vec::deserialize(d)?;
        let factors = v
            .iter()
            .map(|s| s.parse::<BigUint>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        if factors.iter().any(|x| x < &BigUint::from(2u32)) {
            return Err(D::Error::custom("invariant factors must be at least 2"));
        }
        if factors.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(D::Error::custom("invariant factors must form a divisibility chain"));
        }
        Ok(AbelianGroup { invariant_factors: factors })
    }
}
