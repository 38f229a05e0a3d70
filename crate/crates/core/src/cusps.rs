//! Cusps of X_0(N), X_1(N) and X_Delta(N).
//!
//! A cusp is written `(x : y)` for the point x/y of P^1(Q). Classes are
//! stored in a canonical form so that structural equality is equivalence:
//!
//! * X_1(N): `(x, y) ~ ±(x + j*y, y) mod N`. The canonical `y` is the smaller
//!   of `y` and `-y` in `1..=N`; `x` is then reduced into `1..=d`, where
//!   `d = gcd(y, N)`, and also up to sign when `2y = 0 mod N`.
//! * X_0(N): `y = d` is a divisor of N and `x` is determined modulo
//!   `e = gcd(d, N/d)`; the stored `x` is the least positive integer in its
//!   class that is coprime to `d`.
//! * X_Delta(N): an orbit of X_1(N) classes under the diamond operators
//!   `[a]`, `a` in Delta, represented by its least member.
//!
//! A cusp is *irregular* when `e > 1`. This is not the classical notion
//! (a cusp whose stabilizer generator is minus a parabolic), which is reported
//! separately as `plus_sign` by [`width_and_stabilizer_sign`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{self, delta_d, divisors, gcd, is_prime, DeltaSubgroup, Level};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupTag {
    Gamma0,
    Gamma1,
    GammaDelta(Arc<DeltaSubgroup>),
}

impl GroupTag {
    pub fn name(&self) -> &'static str {
        match self {
            GroupTag::Gamma0 => "Gamma0",
            GroupTag::Gamma1 => "Gamma1",
            GroupTag::GammaDelta(_) => "GammaDelta",
        }
    }

    pub fn delta(level: Level, delta: DeltaSubgroup) -> Result<Self> {
        if delta.level() != level {
            return Err(Error::LevelMismatch {
                expected: level.get(),
                found: delta.level().get(),
            });
        }
        Ok(GroupTag::GammaDelta(Arc::new(delta)))
    }
}

impl Serialize for GroupTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CuspClass {
    level: Level,
    x: u64,
    y: u64,
    group: GroupTag,
    d: u64,
    e: u64,
}

impl CuspClass {
    fn new(level: Level, x: u64, y: u64, group: GroupTag) -> Self {
        let n = level.get();
        let d = gcd(y, n);
        let e = gcd(d, n / d);
        CuspClass {
            level,
            x,
            y,
            group,
            d,
            e,
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }
    pub fn x(&self) -> u64 {
        self.x
    }
    pub fn y(&self) -> u64 {
        self.y
    }
    pub fn group(&self) -> &GroupTag {
        &self.group
    }
    /// gcd(y, N)
    pub fn d(&self) -> u64 {
        self.d
    }
    /// gcd(d, N/d)
    pub fn e(&self) -> u64 {
        self.e
    }
    pub fn irregular(&self) -> bool {
        self.e > 1
    }

    /// Display key, e.g. `(1:10)`.
    pub fn key(&self) -> String {
        self.to_string()
    }

    /// Coprime integers (a, c) with a/c in this class and c > 0.
    pub fn lift(&self) -> (i64, i64) {
        lift_primitive(self.level.get(), self.x, self.y)
    }

    fn sort_key(&self) -> (u64, u64, u64) {
        (self.d, self.y, self.x)
    }
}

impl fmt::Display for CuspClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.x, self.y)
    }
}

impl PartialOrd for CuspClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CuspClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.level.cmp(&other.level))
    }
}

/// Raise x by multiples of n until gcd(x, y) = 1. Needs gcd(x, y, n) = 1, y > 0.
fn lift_primitive(n: u64, x: u64, y: u64) -> (i64, i64) {
    let mut a = x;
    while gcd(a, y) != 1 {
        a += n;
    }
    (a as i64, y as i64)
}

fn gcd3(n: u64, x: i64, y: i64) -> u64 {
    gcd(gcd(x.unsigned_abs(), y.unsigned_abs()), n)
}

/// Canonical X_1(N) pair without validation. Requires gcd(x, y, N) = 1.
pub(crate) fn canonical_x1_pair(n: u64, x: i64, y: i64) -> (u64, u64) {
    let mut yb = arith::reduce(y, n);
    let mut x = x;
    let neg = if yb == n { n } else { n - yb };
    if neg < yb {
        yb = neg;
        x = -x;
    }
    let d = gcd(yb, n);
    let mut xr = arith::reduce(x, d);
    if (2 * yb).is_multiple_of(n) {
        xr = xr.min(arith::reduce(-x, d));
    }
    (xr, yb)
}

pub fn canonicalize_x1(level: Level, x: i64, y: i64) -> Result<CuspClass> {
    let n = level.get();
    if gcd3(n, x, y) != 1 {
        return Err(Error::NotPrimitive { level: n, x, y });
    }
    let (x, y) = canonical_x1_pair(n, x, y);
    Ok(CuspClass::new(level, x, y, GroupTag::Gamma1))
}

/// X_1(N) class of the point a/c of P^1(Q).
pub fn x1_class_of_point(level: Level, a: i64, c: i64) -> Result<CuspClass> {
    let g = gcd(a.unsigned_abs(), c.unsigned_abs()).max(1) as i64;
    canonicalize_x1(level, a / g, c / g)
}

/// Residue class (mod e) and d of the X_0(N) cusp of a pair primitive mod N.
fn x0_invariants(n: u64, a: i64, c: i64) -> (u64, u64) {
    let cb = arith::reduce(c, n);
    let d = gcd(cb, n);
    let e = gcd(d, n / d);
    let unit = (cb / d) as i128;
    let cls = arith::reduce(((a as i128 * unit) % e as i128) as i64, e);
    (d, cls)
}

fn x0_from_invariants(level: Level, d: u64, cls: u64) -> CuspClass {
    let n = level.get();
    let e = gcd(d, n / d);
    let mut x = cls;
    while gcd(x, d) != 1 {
        x += e;
    }
    CuspClass::new(level, x, d, GroupTag::Gamma0)
}

pub fn canonicalize_x0(level: Level, x: i64, d: u64) -> Result<CuspClass> {
    let n = level.get();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { level: n, d });
    }
    if gcd(x.unsigned_abs(), d) != 1 {
        return Err(Error::NotCoprime { x, d });
    }
    let (dd, cls) = x0_invariants(n, x, d as i64);
    debug_assert_eq!(dd, d);
    Ok(x0_from_invariants(level, d, cls))
}

/// X_0(N) class of the point a/c of P^1(Q).
pub fn x0_class_of_point(level: Level, a: i64, c: i64) -> Result<CuspClass> {
    let g = gcd(a.unsigned_abs(), c.unsigned_abs()).max(1) as i64;
    x0_class_of_pair(level, a / g, c / g)
}

/// X_0(N) class of a pair (a, c) that is primitive modulo N.
pub fn x0_class_of_pair(level: Level, a: i64, c: i64) -> Result<CuspClass> {
    let n = level.get();
    if gcd3(n, a, c) != 1 {
        return Err(Error::NotPrimitive { level: n, x: a, y: c });
    }
    let (d, cls) = x0_invariants(n, a, c);
    Ok(x0_from_invariants(level, d, cls))
}

/// Class of a primitive pair in the given group.
pub fn canonicalize(level: Level, group: &GroupTag, x: i64, y: i64) -> Result<CuspClass> {
    match group {
        GroupTag::Gamma1 => canonicalize_x1(level, x, y),
        GroupTag::Gamma0 => x0_class_of_pair(level, x, y),
        GroupTag::GammaDelta(delta) => {
            let c = canonicalize_x1(level, x, y)?;
            Ok(delta_class_of(delta, &c))
        }
    }
}

/// Map an X_1(N) class to its X_Delta(N) class (least member of its Delta-orbit).
pub(crate) fn delta_class_of(delta: &Arc<DeltaSubgroup>, c: &CuspClass) -> CuspClass {
    let level = c.level;
    let (x, y) = delta_orbit_pairs(level, delta, c.x, c.y)
        .into_iter()
        .min_by_key(|&(x, y)| (y, x))
        .expect("orbit contains the class itself");
    CuspClass::new(level, x, y, GroupTag::GammaDelta(Arc::clone(delta)))
}

/// Diamond image [a](x : y) = (a x : a^{-1} y) as a canonical X_1 pair.
pub(crate) fn diamond_pair(n: u64, a: u64, x: u64, y: u64) -> (u64, u64) {
    let inv = arith::mod_inverse(a as i64, n).expect("a is a unit");
    let ax = (a as i128 * x as i128 % n as i128) as i64;
    let iy = (inv as i128 * y as i128 % n as i128) as i64;
    canonical_x1_pair(n, ax, iy)
}

fn delta_orbit_pairs(level: Level, delta: &DeltaSubgroup, x: u64, y: u64) -> BTreeSet<(u64, u64)> {
    let n = level.get();
    delta
        .elements()
        .iter()
        .map(|&a| diamond_pair(n, a, x, y))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct AtlasRecord {
    pub x: u64,
    pub y: u64,
    pub d: u64,
    pub e: u64,
    pub irregular: bool,
    pub width: u64,
    pub plus_sign: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CuspAtlas {
    level: Level,
    group: GroupTag,
    cusps: Vec<CuspClass>,
    /// For X_Delta(N): number of X_1(N) classes over each entry.
    orbit_sizes: Option<Vec<usize>>,
}

impl CuspAtlas {
    pub fn level(&self) -> Level {
        self.level
    }
    pub fn group(&self) -> &GroupTag {
        &self.group
    }
    pub fn cusps(&self) -> &[CuspClass] {
        &self.cusps
    }
    pub fn len(&self) -> usize {
        self.cusps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cusps.is_empty()
    }
    pub fn orbit_sizes(&self) -> Option<&[usize]> {
        self.orbit_sizes.as_deref()
    }

    pub fn irregular(&self) -> impl Iterator<Item = &CuspClass> {
        self.cusps.iter().filter(|c| c.irregular())
    }

    pub fn with_d(&self, d: u64) -> impl Iterator<Item = &CuspClass> {
        self.cusps.iter().filter(move |c| c.d == d)
    }

    pub fn count_by_d(&self) -> BTreeMap<u64, usize> {
        let mut out: BTreeMap<u64, usize> = divisors(self.level.get()).into_iter().map(|d| (d, 0)).collect();
        for c in &self.cusps {
            *out.entry(c.d).or_default() += 1;
        }
        out
    }

    pub fn contains(&self, c: &CuspClass) -> bool {
        self.cusps.binary_search(c).is_ok()
    }

    pub fn records(&self) -> Vec<AtlasRecord> {
        self.cusps
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (width, plus_sign) = width_and_stabilizer_sign(self.level, &self.group, c)
                    .expect("atlas cusps share the atlas level");
                AtlasRecord {
                    x: c.x,
                    y: c.y,
                    d: c.d,
                    e: c.e,
                    irregular: c.irregular(),
                    width,
                    plus_sign,
                    orbit_size: self.orbit_sizes.as_ref().map(|s| s[i]),
                }
            })
            .collect()
    }
}

/// Every cusp class of the curve for `group` at `level`, sorted by (d, y, x).
pub fn atlas(level: Level, group: &GroupTag) -> CuspAtlas {
    let n = level.get();
    match group {
        GroupTag::Gamma1 => {
            let mut set = BTreeSet::new();
            for y in 1..=n {
                let d = gcd(y, n);
                for x in (1..=d).filter(|&x| gcd(x, d) == 1) {
                    let (cx, cy) = canonical_x1_pair(n, x as i64, y as i64);
                    set.insert((d, cy, cx));
                }
            }
            CuspAtlas {
                level,
                group: GroupTag::Gamma1,
                cusps: set
                    .into_iter()
                    .map(|(_, y, x)| CuspClass::new(level, x, y, GroupTag::Gamma1))
                    .collect(),
                orbit_sizes: None,
            }
        }
        GroupTag::Gamma0 => {
            let mut cusps = Vec::new();
            for d in divisors(n) {
                let e = gcd(d, n / d);
                for cls in (1..=e).filter(|&x| gcd(x, e) == 1) {
                    cusps.push(x0_from_invariants(level, d, cls));
                }
            }
            cusps.sort();
            CuspAtlas {
                level,
                group: GroupTag::Gamma0,
                cusps,
                orbit_sizes: None,
            }
        }
        GroupTag::GammaDelta(delta) => {
            let x1 = atlas(level, &GroupTag::Gamma1);
            let mut reps: BTreeMap<(u64, u64, u64), usize> = BTreeMap::new();
            let mut seen = BTreeSet::new();
            for c in x1.cusps() {
                if seen.contains(&(c.x, c.y)) {
                    continue;
                }
                let orbit = delta_orbit_pairs(level, delta, c.x, c.y);
                let &(x, y) = orbit.iter().min_by_key(|&&(x, y)| (y, x)).unwrap();
                reps.insert((gcd(y, n), y, x), orbit.len());
                seen.extend(orbit);
            }
            let (cusps, sizes) = reps
                .into_iter()
                .map(|((_, y, x), size)| (CuspClass::new(level, x, y, group.clone()), size))
                .unzip();
            CuspAtlas {
                level,
                group: group.clone(),
                cusps,
                orbit_sizes: Some(sizes),
            }
        }
    }
}

fn check_level(level: Level, c: &CuspClass) -> Result<()> {
    if c.level != level {
        return Err(Error::LevelMismatch {
            expected: level.get(),
            found: c.level.get(),
        });
    }
    Ok(())
}

/// Width of the cusp and whether the stabilizer generator lies in the group
/// itself rather than only in its image with -I adjoined.
///
/// With sigma = (a b; c d) sending infinity to a/c, the conjugate of T^h is
/// `(1 - hac, ha^2; -hc^2, 1 + hac)`; only its left column matters here.
pub fn width_and_stabilizer_sign(level: Level, group: &GroupTag, c: &CuspClass) -> Result<(u64, bool)> {
    check_level(level, c)?;
    let n = level.get() as i128;
    let (a, cc) = c.lift();
    let (a, cc) = (a as i128, cc as i128);
    for h in 1..=n {
        let top_left = (1 - h * a * cc).rem_euclid(n);
        let lower_left = (h * cc * cc).rem_euclid(n);
        if lower_left != 0 {
            continue;
        }
        match group {
            GroupTag::Gamma0 => return Ok((h as u64, true)),
            GroupTag::Gamma1 => {
                if top_left == 1 % n {
                    return Ok((h as u64, true));
                }
                if top_left == n - 1 {
                    return Ok((h as u64, false));
                }
            }
            GroupTag::GammaDelta(delta) => {
                if delta.contains(top_left as i64) {
                    return Ok((h as u64, true));
                }
            }
        }
    }
    unreachable!("T^N conjugates into Gamma(N)")
}

/// Size of the Delta_d-orbit of the X_1(N) cusps with invariant d.
///
/// The map X_1(N) -> X_{Delta_d}(N) has degree e and every such cusp is
/// totally ramified, so each orbit is a single point; the returned value is
/// the largest orbit observed.
pub fn ramification_x1_to_delta(level: Level, d: u64) -> Result<u64> {
    let n = level.get();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { level: n, d });
    }
    if gcd(d, n / d) == 1 {
        return Err(Error::NotIrregular { level: n, d });
    }
    let delta = delta_d(level, d)?;
    let x1 = atlas(level, &GroupTag::Gamma1);
    let largest = x1
        .with_d(d)
        .map(|c| delta_orbit_pairs(level, &delta, c.x, c.y).len() as u64)
        .max()
        .unwrap_or(1);
    Ok(largest)
}

/// Number of distinct X_0(p^2 M) classes among the images of x/p under the
/// coset representatives tau -> tau / (k p M tau + 1), k = 0..p-1, of
/// Gamma_0(p^2 M) in Gamma_0(p M).
pub fn ramification_x0_tower(p: u64, m: u64, x: i64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 || !m.is_multiple_of(p) {
        return Err(Error::PNotDividingM { p, m });
    }
    if gcd(x.unsigned_abs(), p) != 1 {
        return Err(Error::NotCoprime { x, d: p });
    }
    tower_image_count(p, m, x)
}

fn tower_image_count(p: u64, m: u64, x: i64) -> Result<u64> {
    let level = Level::new(p * p * m)?;
    let (p, m) = (p as i64, m as i64);
    let images: BTreeSet<CuspClass> = (0..p)
        .map(|k| x0_class_of_point(level, x, k * p * m * x + p))
        .collect::<Result<_>>()?;
    Ok(images.len() as u64)
}
