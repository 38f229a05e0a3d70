//! Automorphisms acting on cusps: diamond operators `[a]`, Atkin-Lehner
//! matrices `W_Q` and the translation `S_p = (1, 1/p; 0, 1)` for p = 2, 3.
//!
//! `W_Q` normalizes Gamma_1(N), but its action on X_1(N) classes depends on
//! the chosen matrix up to a diamond operator and need not be an involution.
//! On X_0(N) classes it is an involution independent of the matrix.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{self, divisors, gcd, unit_generators, Level};
use crate::cusps::{self, atlas, delta_class_of, diamond_pair, CuspClass, GroupTag};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiamondOp {
    level: Level,
    a: u64,
}

impl DiamondOp {
    pub fn new(level: Level, a: i64) -> Result<Self> {
        let r = level.reduce(a);
        if gcd(r, level.get()) != 1 {
            return Err(Error::NonUnitGenerator { level: level.get(), gen: a });
        }
        Ok(DiamondOp { level, a: r })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn a(&self) -> u64 {
        self.a
    }
}

/// A matrix `(Q x, y; N z, Q w)` of determinant Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AtkinLehnerOp {
    #[serde(rename = "N")]
    level: Level,
    #[serde(rename = "Q")]
    q: u64,
    matrix: [[i64; 2]; 2],
}

impl AtkinLehnerOp {
    pub fn level(&self) -> Level {
        self.level
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }
}

fn check_exact_divisor(level: Level, q: u64) -> Result<()> {
    let n = level.get();
    if q == 0 || !n.is_multiple_of(q) || gcd(q, n / q) != 1 {
        return Err(Error::NotExactDivisor { level: n, q });
    }
    Ok(())
}

/// W_Q with x = z = 1: `(Q, y; N, Q w)` where w is the least non-negative
/// inverse of Q modulo N/Q.
pub fn build_atkin_lehner(level: Level, q: u64) -> Result<AtkinLehnerOp> {
    check_exact_divisor(level, q)?;
    let m = level.get() / q;
    let w = if m == 1 { 0 } else { arith::mod_inverse(q as i64, m).expect("gcd(Q, N/Q) = 1") % m };
    let y = (q * w) as i64 - 1;
    let y = y / m as i64;
    atkin_lehner_from_entries(level, q, 1, y, 1, w as i64)
}

/// W_Q with prescribed x and z; y and w are solved for by extended gcd.
pub fn atkin_lehner_with(level: Level, q: u64, x: i64, z: i64) -> Result<AtkinLehnerOp> {
    check_exact_divisor(level, q)?;
    let m = (level.get() / q) as i64;
    // Q x w - (N/Q) z y = 1
    let a = q as i64 * x;
    let b = m * z;
    let g = a.extended_gcd(&b);
    if g.gcd.abs() != 1 {
        return Err(Error::NotCoprime { x: a, d: b.unsigned_abs() });
    }
    let s = g.gcd.signum();
    let (w, y) = (g.x * s, -g.y * s);
    atkin_lehner_from_entries(level, q, x, y, z, w)
}

/// Validates the shape `(Q x, y; N z, Q w)` with determinant Q.
pub fn atkin_lehner_from_entries(level: Level, q: u64, x: i64, y: i64, z: i64, w: i64) -> Result<AtkinLehnerOp> {
    check_exact_divisor(level, q)?;
    let (qi, ni) = (q as i64, level.get() as i64);
    let matrix = [[qi * x, y], [ni * z, qi * w]];
    let det = matrix[0][0] as i128 * matrix[1][1] as i128 - matrix[0][1] as i128 * matrix[1][0] as i128;
    if det != qi as i128 {
        return Err(Error::NotExactDivisor { level: level.get(), q });
    }
    Ok(AtkinLehnerOp { level, q, matrix })
}

fn check_level(level: Level, c: &CuspClass) -> Result<()> {
    if c.level() != level {
        return Err(Error::LevelMismatch {
            expected: level.get(),
            found: c.level().get(),
        });
    }
    Ok(())
}

pub fn act_diamond(op: &DiamondOp, c: &CuspClass) -> Result<CuspClass> {
    check_level(op.level, c)?;
    let n = op.level.get();
    match c.group() {
        GroupTag::Gamma0 => Ok(c.clone()),
        GroupTag::Gamma1 => {
            let (x, y) = diamond_pair(n, op.a, c.x(), c.y());
            cusps::canonicalize_x1(op.level, x as i64, y as i64)
        }
        GroupTag::GammaDelta(delta) => {
            let (x, y) = diamond_pair(n, op.a, c.x(), c.y());
            let img = cusps::canonicalize_x1(op.level, x as i64, y as i64)?;
            Ok(delta_class_of(delta, &img))
        }
    }
}

fn apply_matrix(m: [[i64; 2]; 2], (a, c): (i64, i64)) -> (i64, i64) {
    let a = a as i128;
    let c = c as i128;
    let top = m[0][0] as i128 * a + m[0][1] as i128 * c;
    let bottom = m[1][0] as i128 * a + m[1][1] as i128 * c;
    let g = top.gcd(&bottom).max(1);
    ((top / g) as i64, (bottom / g) as i64)
}

pub fn act_atkin_lehner(op: &AtkinLehnerOp, c: &CuspClass) -> Result<CuspClass> {
    check_level(op.level, c)?;
    let (a, cc) = apply_matrix(op.matrix, c.lift());
    match c.group() {
        GroupTag::Gamma1 => cusps::x1_class_of_point(op.level, a, cc),
        GroupTag::Gamma0 => cusps::x0_class_of_point(op.level, a, cc),
        GroupTag::GammaDelta(_) => Err(Error::UnsupportedGroup(
            "X_Delta(N): W_Q need not normalize Gamma_Delta(N)".into(),
        )),
    }
}

/// Image of an X_0(N) cusp under S_p; acts on a/c as (p a + c)/(p c).
pub fn act_sp(p: u64, level: Level, c: &CuspClass) -> Result<CuspClass> {
    if p != 2 && p != 3 {
        return Err(Error::BadP(p));
    }
    if !level.get().is_multiple_of(p * p) {
        return Err(Error::LevelNotDivisible { p, level: level.get() });
    }
    check_level(level, c)?;
    if *c.group() != GroupTag::Gamma0 {
        return Err(Error::UnsupportedGroup(format!("S_{p} is applied to X_0(N) cusps")));
    }
    let p = p as i64;
    let (a, cc) = apply_matrix([[p, 1], [0, p]], c.lift());
    cusps::x0_class_of_point(level, a, cc)
}

/// Cusps of the given curve fixed by `[a]`.
pub fn fixed_cusps(op: &DiamondOp, group: &GroupTag) -> Result<Vec<CuspClass>> {
    let all = atlas(op.level, group);
    let mut out = Vec::new();
    for c in all.cusps() {
        if act_diamond(op, c)? == *c {
            out.push(c.clone());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    #[serde(rename = "N")]
    pub level: Level,
    pub group: GroupTag,
    #[serde(serialize_with = "serialize_orbits")]
    pub orbits: Vec<Vec<CuspClass>>,
    pub generators: Vec<String>,
    /// False at N = 4, where diamonds and W_Q do not generate the normalizer.
    pub complete: bool,
}

fn serialize_orbits<S: serde::Serializer>(o: &[Vec<CuspClass>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let keys: Vec<Vec<String>> = o.iter().map(|orb| orb.iter().map(|c| c.key()).collect()).collect();
    keys.serialize(s)
}

impl OrbitReport {
    /// Index of the orbit containing `c`.
    pub fn orbit_of(&self, c: &CuspClass) -> Option<usize> {
        self.orbits.iter().position(|o| o.contains(c))
    }
}

enum Generator {
    Diamond(DiamondOp),
    AtkinLehner(AtkinLehnerOp),
}

impl Generator {
    fn name(&self) -> String {
        match self {
            Generator::Diamond(op) => format!("[{}]", op.a),
            Generator::AtkinLehner(op) => format!("W_{}", op.q),
        }
    }

    fn apply(&self, c: &CuspClass) -> Result<CuspClass> {
        match self {
            Generator::Diamond(op) => act_diamond(op, c),
            Generator::AtkinLehner(op) => act_atkin_lehner(op, c),
        }
    }
}

/// Orbits of the cusps of X_1(N) under all diamond operators and all W_Q.
pub fn cusp_orbits_x1(level: Level) -> OrbitReport {
    cusp_orbits(level, &GroupTag::Gamma1).expect("X_1(N) orbits are defined")
}

/// Orbits under diamonds and Atkin-Lehner operators, for X_1(N) or X_0(N).
pub fn cusp_orbits(level: Level, group: &GroupTag) -> Result<OrbitReport> {
    if let GroupTag::GammaDelta(_) = group {
        return Err(Error::UnsupportedGroup(
            "X_Delta(N): W_Q need not normalize Gamma_Delta(N)".into(),
        ));
    }
    let n = level.get();
    let mut gens: Vec<Generator> = Vec::new();
    if *group == GroupTag::Gamma1 {
        for a in unit_generators(level) {
            gens.push(Generator::Diamond(DiamondOp::new(level, a as i64)?));
        }
    }
    for q in divisors(n).into_iter().filter(|&q| q > 1 && gcd(q, n / q) == 1) {
        gens.push(Generator::AtkinLehner(build_atkin_lehner(level, q)?));
    }

    let all = atlas(level, group);
    let index: BTreeMap<CuspClass, usize> = all.cusps().iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut orbit_id = vec![usize::MAX; all.len()];
    let mut orbits = Vec::new();
    for start in 0..all.len() {
        if orbit_id[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_id[start] = id;
        let mut members = vec![start];
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for g in &gens {
                let img = g.apply(&all.cusps()[i])?;
                let j = index[&img];
                if orbit_id[j] == usize::MAX {
                    orbit_id[j] = id;
                    members.push(j);
                    queue.push(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members.into_iter().map(|i| all.cusps()[i].clone()).collect());
    }
    Ok(OrbitReport {
        level,
        group: group.clone(),
        orbits,
        generators: gens.iter().map(Generator::name).collect(),
        complete: n != 4,
    })
}
