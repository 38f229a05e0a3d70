//! Genus of X_Delta(N) from the index, elliptic and cusp counts:
//!
//! ```text
//! g = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2
//! ```

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{divisors, gcd, prime_factors, projection_image_size, totient, DeltaSubgroup, Level};
use crate::error::{Error, Result};
use crate::exact;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusProfile {
    #[serde(rename = "N")]
    pub level: Level,
    #[serde(serialize_with = "serialize_delta")]
    pub delta: DeltaSubgroup,
    #[serde(serialize_with = "exact::serialize_ratio")]
    pub mu: Rational64,
    #[serde(serialize_with = "exact::serialize_ratio")]
    pub nu2: Rational64,
    #[serde(serialize_with = "exact::serialize_ratio")]
    pub nu3: Rational64,
    #[serde(serialize_with = "exact::serialize_ratio")]
    pub nu_inf: Rational64,
    pub g: u64,
}

fn serialize_delta<S: serde::Serializer>(d: &DeltaSubgroup, s: S) -> std::result::Result<S::Ok, S::Error> {
    d.elements().serialize(s)
}

fn same_level(level: Level, delta: &DeltaSubgroup) -> Result<()> {
    if delta.level() != level {
        return Err(Error::LevelMismatch {
            expected: level.get(),
            found: delta.level().get(),
        });
    }
    Ok(())
}

/// phi(N) / |Delta|, the index of Delta in the unit group.
fn unit_index(level: Level, delta: &DeltaSubgroup) -> Rational64 {
    Rational64::new(totient(level.get()) as i64, delta.order() as i64)
}

/// Index of +-Gamma_Delta(N) in SL_2(Z).
pub fn mu(level: Level, delta: &DeltaSubgroup) -> Result<Rational64> {
    same_level(level, delta)?;
    let n = level.get();
    let primes = prime_factors(n);
    let psi = primes.iter().fold(n, |acc, &p| acc / p * (p + 1));
    Ok(Rational64::from(psi as i64) * unit_index(level, delta))
}

fn count_roots(level: Level, delta: &DeltaSubgroup, poly: impl Fn(i128) -> i128) -> i64 {
    let n = level.get() as i128;
    delta
        .elements()
        .iter()
        .filter(|&&b| poly(b as i128).rem_euclid(n) == 0)
        .count() as i64
}

/// Elliptic points of order 2: roots of b^2 + 1 in Delta, scaled by the unit index.
pub fn nu2(level: Level, delta: &DeltaSubgroup) -> Result<Rational64> {
    same_level(level, delta)?;
    Ok(Rational64::from(count_roots(level, delta, |b| b * b + 1)) * unit_index(level, delta))
}

/// Elliptic points of order 3: roots of b^2 - b + 1 in Delta, scaled by the unit index.
pub fn nu3(level: Level, delta: &DeltaSubgroup) -> Result<Rational64> {
    same_level(level, delta)?;
    Ok(Rational64::from(count_roots(level, delta, |b| b * b - b + 1)) * unit_index(level, delta))
}

/// Number of cusps: sum over d | N of phi(d) phi(N/d) / |pi_d(Delta)|.
pub fn nu_inf(level: Level, delta: &DeltaSubgroup) -> Result<Rational64> {
    same_level(level, delta)?;
    let n = level.get();
    divisors(n).into_iter().try_fold(Rational64::zero(), |acc, d| {
        let image = projection_image_size(level, d, delta)?;
        Ok(acc + Rational64::new((totient(d) * totient(n / d)) as i64, image as i64))
    })
}

pub fn genus_delta(level: Level, delta: &DeltaSubgroup) -> Result<GenusProfile> {
    let mu = mu(level, delta)?;
    let nu2 = nu2(level, delta)?;
    let nu3 = nu3(level, delta)?;
    let nu_inf = nu_inf(level, delta)?;
    let g = Rational64::from(1) + mu / 12 - nu2 / 4 - nu3 / 3 - nu_inf / 2;
    if !g.is_integer() || g < Rational64::zero() {
        return Err(Error::NonIntegralGenus(g.to_string()));
    }
    Ok(GenusProfile {
        level,
        delta: delta.clone(),
        mu,
        nu2,
        nu3,
        nu_inf,
        g: g.to_integer().to_u64().expect("non-negative"),
    })
}

/// Genus of X_0(N).
pub fn g0(level: Level) -> u64 {
    genus_delta(level, &DeltaSubgroup::full(level))
        .expect("genus formula is integral for X_0(N)")
        .g
}

/// Genus of X_1(N).
pub fn g1(level: Level) -> u64 {
    genus_delta(level, &DeltaSubgroup::plus_minus_one(level))
        .expect("genus formula is integral for X_1(N)")
        .g
}

/// e = gcd(d, N/d), shared by several callers.
pub(crate) fn e_of(n: u64, d: u64) -> u64 {
    gcd(d, n / d)
}
