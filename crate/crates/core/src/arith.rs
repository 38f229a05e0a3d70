//! Integer utilities and subgroups of (Z/NZ)*.
//!
//! Residues are kept in the range `1..=N`, so that the class of zero is
//! written `N`. At levels 1 and 2 the unit group is trivial and `-1 = 1`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// A level N >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Level(u64);

impl Level {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLevel(n));
        }
        Ok(Level(n))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduce an integer into `1..=N`.
    #[inline]
    pub fn reduce(self, a: i64) -> u64 {
        reduce(a, self.0)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Reduce `a` modulo `n` into `1..=n`.
#[inline]
pub fn reduce(a: i64, n: u64) -> u64 {
    let r = (a as i128).rem_euclid(n as i128) as u64;
    if r == 0 {
        n
    } else {
        r
    }
}

#[inline]
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[inline]
pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn totient(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// All divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct prime factors of `n`, increasing.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

pub fn is_squarefree(n: u64) -> bool {
    prime_factors(n).into_iter().all(|p| !n.is_multiple_of(p * p))
}

/// Inverse of `a` modulo `m`, in `1..=m`, if it exists.
pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(reduce(g.x as i64, m))
}

/// The unit group (Z/NZ)* as residues in `1..=N`.
pub fn units(level: Level) -> Vec<u64> {
    let n = level.get();
    if n == 1 {
        return vec![1];
    }
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

fn require_divisor(level: Level, d: u64) -> Result<()> {
    if d == 0 || !level.get().is_multiple_of(d) {
        return Err(Error::NotADivisor { level: level.get(), d });
    }
    Ok(())
}

/// A subgroup of (Z/NZ)* containing -1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DeltaSubgroup {
    level: Level,
    elements: Vec<u64>,
}

impl DeltaSubgroup {
    /// {+1, -1}, the subgroup giving X_1(N).
    pub fn plus_minus_one(level: Level) -> Self {
        subgroup_generated(level, &[]).expect("no generators")
    }

    /// All units, the subgroup giving X_0(N).
    pub fn full(level: Level) -> Self {
        DeltaSubgroup {
            level,
            elements: units(level),
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, a: i64) -> bool {
        self.elements.binary_search(&self.level.reduce(a)).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &DeltaSubgroup) -> bool {
        self.level == other.level && self.elements.iter().all(|&a| other.contains(a as i64))
    }
}

/// Smallest subgroup containing `gens` and -1.
pub fn subgroup_generated(level: Level, gens: &[i64]) -> Result<DeltaSubgroup> {
    let n = level.get();
    let mut gens: Vec<u64> = gens
        .iter()
        .map(|&g| {
            let r = level.reduce(g);
            if gcd(r, n) == 1 {
                Ok(r)
            } else {
                Err(Error::NonUnitGenerator { level: n, gen: g })
            }
        })
        .collect::<Result<_>>()?;
    gens.push(level.reduce(-1));

    let mut set: BTreeSet<u64> = BTreeSet::from([level.reduce(1)]);
    let mut frontier: Vec<u64> = vec![level.reduce(1)];
    while let Some(a) = frontier.pop() {
        for &g in &gens {
            let b = reduce((a as i128 * g as i128 % n as i128) as i64, n);
            if set.insert(b) {
                frontier.push(b);
            }
        }
    }
    Ok(DeltaSubgroup {
        level,
        elements: set.into_iter().collect(),
    })
}

/// A small generating set of (Z/NZ)* modulo {+1, -1}, chosen greedily.
pub fn unit_generators(level: Level) -> Vec<u64> {
    let mut gens: Vec<i64> = Vec::new();
    let mut group = DeltaSubgroup::plus_minus_one(level);
    for u in units(level) {
        if !group.contains(u as i64) {
            gens.push(u as i64);
            group = subgroup_generated(level, &gens).expect("units");
        }
    }
    gens.into_iter().map(|g| g as u64).collect()
}

/// Delta_d: units congruent to +1 or -1 modulo N/e, e = gcd(d, N/d).
pub fn delta_d(level: Level, d: u64) -> Result<DeltaSubgroup> {
    require_divisor(level, d)?;
    let n = level.get();
    let e = gcd(d, n / d);
    let m = n / e;
    let elements = units(level)
        .into_iter()
        .filter(|&a| {
            let r = a % m;
            r == 1 % m || r == m - 1
        })
        .collect();
    Ok(DeltaSubgroup { level, elements })
}

/// |pi_d(Delta)|, the size of the image of Delta in (Z/lcm(d, N/d)Z)*.
pub fn projection_image_size(level: Level, d: u64, delta: &DeltaSubgroup) -> Result<u64> {
    require_divisor(level, d)?;
    if delta.level() != level {
        return Err(Error::LevelMismatch {
            expected: level.get(),
            found: delta.level().get(),
        });
    }
    let m = lcm(d, level.get() / d);
    let image: BTreeSet<u64> = delta.elements().iter().map(|&a| a % m).collect();
    Ok(image.len() as u64)
}
