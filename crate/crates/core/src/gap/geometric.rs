//! `ρ` of `{1, x, …, xⁿ}` for rational `x` or `x` a root of an irreducible
//! monic quadratic, computed exactly in `ℚ(x)`.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::ToPrimitive;

use crate::dist::{concentration_of_scalars, planar_law, DEFAULT_ATOM_BUDGET};
use crate::error::{Error, Result};
use crate::multiset::Point2;
use crate::rational::{biguint_ratio, int, Rational};
use crate::sign::SignDistribution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometricBase {
    Rational(Rational),
    /// `x² = c1·x + c0`.
    Quadratic { c1: i64, c0: i64 },
}

impl GeometricBase {
    /// `p/q`, or `quad:c1,c0` for `x² = c1·x + c0`; `golden` is `quad:1,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "golden" {
            return Ok(GeometricBase::Quadratic { c1: 1, c0: 1 });
        }
        if let Some(rest) = t.strip_prefix("quad:") {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| Error::Parse("expected quad:c1,c0".into()))?;
            let c1 = a.trim().parse().map_err(|_| Error::Parse(format!("bad integer {a:?}")))?;
            let c0 = b.trim().parse().map_err(|_| Error::Parse(format!("bad integer {b:?}")))?;
            return Ok(GeometricBase::Quadratic { c1, c0 });
        }
        Ok(GeometricBase::Rational(crate::rational::parse_rational(t)?))
    }
}

/// `ρ` of `Σ_{j=0}^{n} ξⱼ xʲ` under `±1` signs.
pub fn geometric_progression_rho(x: &GeometricBase, n: usize) -> Result<Rational> {
    let ber = SignDistribution::bernoulli();
    match x {
        GeometricBase::Rational(x) => {
            let mut powers = Vec::with_capacity(n + 1);
            let mut p = int(1);
            for _ in 0..=n {
                powers.push(p.clone());
                p *= x;
            }
            powers.sort();
            Ok(concentration_of_scalars(&powers, &ber)?.0)
        }
        GeometricBase::Quadratic { c1, c0 } => {
            let disc = c1 * c1 + 4 * c0;
            if disc >= 0 && disc.sqrt() * disc.sqrt() == disc {
                return Err(Error::invalid(format!(
                    "x² − {c1}x − {c0} has rational roots; pass the rational root instead"
                )));
            }
            // xʲ = uⱼ + vⱼ x
            let (mut u, mut v) = (BigInt::from(1), BigInt::from(0));
            let mut powers = Vec::with_capacity(n + 1);
            for _ in 0..=n {
                powers.push(Point2::new(Rational::from_integer(u.clone()), Rational::from_integer(v.clone())));
                // (u + v x)·x = v c0 + (u + v c1) x
                let nu = &v * c0;
                let nv = &u + &v * c1;
                u = nu;
                v = nv;
            }
            if powers.iter().any(|p| p.x.to_integer().to_i64().is_none() || p.y.to_integer().to_i64().is_none()) {
                return Err(Error::invalid("powers overflow the lattice range"));
            }
            let (law, _) = planar_law(&powers, &ber, DEFAULT_ATOM_BUDGET)?;
            let (_, w) = law.max_atom().expect("non-empty law");
            Ok(biguint_ratio(w, &law.total))
        }
    }
}
