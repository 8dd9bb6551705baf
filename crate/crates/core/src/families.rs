//! Named moment generators, registered by name and chosen at runtime.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::moments::{Kind, MomentSequence};
use crate::scalar::Scalar;

pub trait MomentFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn kind(&self) -> Kind;
    fn description(&self) -> &'static str;
    /// Normalized moment `gamma_k`. Exact families ignore `prec`.
    fn moment(&self, k: usize, prec: u32) -> Scalar;
}

/// Standard normal: `gamma_{2n} = (2n-1)!!`, odd moments vanish.
pub struct Hermite;

impl MomentFamily for Hermite {
    fn name(&self) -> &'static str {
        "hermite"
    }
    fn kind(&self) -> Kind {
        Kind::Hamburger
    }
    fn description(&self) -> &'static str {
        "Gaussian weight exp(-x^2/2)/sqrt(2 pi); determinate"
    }
    fn moment(&self, k: usize, _prec: u32) -> Scalar {
        if k % 2 == 1 {
            return Scalar::zero();
        }
        let mut acc = Integer::from(1);
        let mut j = 1u32;
        while (j as usize) < k {
            acc *= j;
            j += 2;
        }
        Scalar::from_integer(acc)
    }
}

/// Exponential weight on `[0, inf)`: `gamma_n = n!`.
pub struct Laguerre;

impl MomentFamily for Laguerre {
    fn name(&self) -> &'static str {
        "laguerre"
    }
    fn kind(&self) -> Kind {
        Kind::Stieltjes
    }
    fn description(&self) -> &'static str {
        "weight exp(-x) on [0, inf); determinate"
    }
    fn moment(&self, k: usize, _prec: u32) -> Scalar {
        Scalar::from_integer(Integer::from(Integer::factorial(k as u32)))
    }
}

/// Log-normal moments `gamma_k = exp(((k+1)^2 - 1) / 4)`; indeterminate.
/// The exponent is kept exact and exponentiated at the requested precision.
pub struct Lognormal;

impl MomentFamily for Lognormal {
    fn name(&self) -> &'static str {
        "lognormal"
    }
    fn kind(&self) -> Kind {
        Kind::Stieltjes
    }
    fn description(&self) -> &'static str {
        "gamma_k = exp((k+1)^2/4) normalized; indeterminate Stieltjes"
    }
    fn moment(&self, k: usize, prec: u32) -> Scalar {
        let k = k as i64;
        let log = Scalar::from(Rational::from((k * k + 2 * k, 4)));
        log.exp(prec)
    }
}

pub struct FamilyRegistry {
    families: Vec<Box<dyn MomentFamily>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry {
            families: Vec::new(),
        }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Hermite));
        r.register(Box::new(Laguerre));
        r.register(Box::new(Lognormal));
        r
    }

    /// Adds a family; a later registration under the same name wins.
    pub fn register(&mut self, family: Box<dyn MomentFamily>) {
        self.families.retain(|f| f.name() != family.name());
        self.families.push(family);
    }

    pub fn get(&self, name: &str) -> Option<&dyn MomentFamily> {
        self.families
            .iter()
            .find(|f| f.name() == name)
            .map(|f| f.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.iter().map(|f| f.name()).collect()
    }

    /// `gamma_0 ..= gamma_k` from the named family.
    pub fn generate(&self, name: &str, k: usize, prec: u32) -> Result<MomentSequence> {
        let family = self
            .get(name)
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
        if k < 2 {
            return Err(Error::InvalidArgument("generators need K >= 2".into()));
        }
        let gamma = (0..=k).map(|j| family.moment(j, prec)).collect();
        Ok(MomentSequence::new(gamma, family.kind(), name))
    }
}

/// Generate from the standard registry.
pub fn generate(name: &str, k: usize, prec: u32) -> Result<MomentSequence> {
    FamilyRegistry::standard().generate(name, k, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Mode;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn exact_families() {
        assert_eq!(generate("hermite", 6, 64).unwrap().gamma, ints(&[1, 0, 1, 0, 3, 0, 15]));
        assert_eq!(generate("laguerre", 4, 64).unwrap().gamma, ints(&[1, 1, 2, 6, 24]));
    }

    #[test]
    fn lognormal_is_float() {
        let s = generate("lognormal", 2, 256).unwrap();
        assert_eq!(s.mode(), Mode::Float(256));
        assert_eq!(s.gamma[0], Scalar::one());
        assert!((s.gamma[1].to_f64() - 0.75f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn unknown_and_short() {
        assert_eq!(generate("cauchy", 4, 64), Err(Error::UnknownFamily("cauchy".into())));
        assert!(generate("hermite", 1, 64).is_err());
    }

    #[test]
    fn registration_replaces_by_name() {
        let mut r = FamilyRegistry::standard();
        r.register(Box::new(Hermite));
        assert_eq!(r.names(), vec!["laguerre", "lognormal", "hermite"]);
    }
}
