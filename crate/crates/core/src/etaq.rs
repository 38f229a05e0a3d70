//! Generalized Dedekind eta functions
//!
//! ```text
//! E_r = q^{N B(r/N) / 2} prod_{m >= 1} (1 - q^{(m-1)N + r}) (1 - q^{mN - r}),   B(x) = x^2 - x + 1/6,
//! ```
//!
//! their quotients, and orders of vanishing at the cusps of X_1(N).
//!
//! Every series handled here is `q^(v / 12N)` times a power series in
//! integral powers of q, so a [`QSeries`] stores the leading exponent
//! numerator `v` and a dense coefficient vector.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, Level};
use crate::criteria::{gap_sequence_from_nongaps, CertStep, GapSequence, Status, Verdict};
use crate::cusps::{atlas, canonicalize_x1, width_and_stabilizer_sign, CuspClass, GroupTag};
use crate::error::{Error, Result};
use crate::exact;
use crate::genus::g1;
use crate::symmetry::{act_atkin_lehner, build_atkin_lehner};

/// `B(x) = x^2 - x + 1/6`.
pub fn bernoulli2(x: Rational64) -> Rational64 {
    x * x - x + Rational64::new(1, 6)
}

/// `B({x})`, the periodic extension.
fn periodic_bernoulli2(x: Rational64) -> Rational64 {
    bernoulli2(x - x.floor())
}

/// `q^(lead / denom) * sum_k coeffs[k] q^k`, known for the first `coeffs.len()` values of k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    level: Level,
    lead: i64,
    coeffs: Vec<BigRational>,
}

impl QSeries {
    /// The constant 1 with `terms` known coefficients.
    pub fn one(level: Level, terms: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); terms];
        if let Some(c) = coeffs.first_mut() {
            *c = BigRational::one();
        }
        QSeries { level, lead: 0, coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip > 0 && skip < self.coeffs.len() {
            self.coeffs.drain(..skip);
            self.lead += skip as i64 * self.denom();
        }
        self
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Exponents are integers over this denominator, 12N.
    pub fn denom(&self) -> i64 {
        12 * self.level.get() as i64
    }

    /// Number of known integral q-steps from the leading term.
    pub fn terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Exponent numerator below which every coefficient is known.
    pub fn truncation(&self) -> i64 {
        self.lead + self.coeffs.len() as i64 * self.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Leading exponent as an exact rational, None for the zero series.
    pub fn leading_exponent(&self) -> Option<Rational64> {
        (!self.is_zero()).then(|| Rational64::new(self.lead, self.denom()))
    }

    pub fn leading_numerator(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lead)
    }

    /// Nonzero coefficients keyed by exponent numerator.
    pub fn coefficients(&self) -> BTreeMap<i64, BigRational> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.lead + k as i64 * self.denom(), c.clone()))
            .collect()
    }

    pub fn coefficient(&self, numerator: i64) -> Option<BigRational> {
        if numerator >= self.truncation() {
            return None;
        }
        let offset = numerator - self.lead;
        if offset < 0 || offset % self.denom() != 0 {
            return Some(BigRational::zero());
        }
        self.coeffs.get((offset / self.denom()) as usize).cloned()
    }

    fn same_level(&self, other: &QSeries) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level.get(),
                found: other.level.get(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        self.same_level(other)?;
        let terms = self.terms().min(other.terms());
        let (a, da) = integral_parts(&self.coeffs[..terms]);
        let (b, db) = integral_parts(&other.coeffs[..terms]);
        let mut out = vec![BigInt::zero(); terms];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().take(terms - i).enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let denom = da * db;
        Ok(QSeries {
            level: self.level,
            lead: self.lead + other.lead,
            coeffs: out.into_iter().map(|c| BigRational::new(c, denom.clone())).collect(),
        }
        .normalized())
    }

    /// Multiplicative inverse; fails when no nonzero coefficient is known.
    pub fn inverse(&self) -> Result<QSeries> {
        let a0 = match self.coeffs.first() {
            Some(c) if !c.is_zero() => c.clone(),
            _ => return Err(Error::TruncationTooSmall(self.terms() as i64)),
        };
        // scale to a0 = 1 and clear denominators: A = a0 (1 + U / D)
        let scaled: Vec<BigRational> = self.coeffs.iter().map(|c| c / &a0).collect();
        let (u, d) = integral_parts(&scaled);
        let n = self.terms();
        // B = 1 / (1 + U/D) = sum_k b_k q^k with b_k = c_k / D^k, c_t = -sum_s u_s c_{t-s} D^{s-1}
        let mut dpow = vec![BigInt::one()];
        for k in 1..n {
            let next = &dpow[k - 1] * &d;
            dpow.push(next);
        }
        let mut c: Vec<BigInt> = Vec::with_capacity(n);
        c.push(BigInt::one());
        for t in 1..n {
            let mut acc = BigInt::zero();
            for s in 1..=t {
                if !u[s].is_zero() && !c[t - s].is_zero() {
                    acc += &u[s] * &c[t - s] * &dpow[s - 1];
                }
            }
            c.push(-acc);
        }
        let inv0 = a0.recip();
        Ok(QSeries {
            level: self.level,
            lead: -self.lead,
            coeffs: c
                .into_iter()
                .zip(dpow)
                .map(|(ct, dk)| BigRational::new(ct, dk) * &inv0)
                .collect(),
        })
    }

    pub fn pow(&self, n: i64) -> Result<QSeries> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = QSeries::one(self.level, self.terms());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }
}

/// Integer numerators over a common denominator.
fn integral_parts(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    use num_integer::Integer;
    let denom = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs.iter().map(|c| c.numer() * (&denom / c.denom())).collect();
    (nums, denom)
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coefficients() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})q^({})", Rational64::new(e, self.denom()))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^({}))", Rational64::new(self.truncation(), self.denom()))
    }
}

#[derive(Serialize)]
struct SeriesTerm {
    #[serde(serialize_with = "exact::serialize_ratio")]
    exponent: Rational64,
    #[serde(serialize_with = "exact::serialize_big_ratio")]
    coeff: BigRational,
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            #[serde(rename = "N")]
            level: Level,
            denom: i64,
            leading_exponent: Option<String>,
            truncation: String,
            terms: Vec<SeriesTerm>,
        }
        let denom = self.denom();
        View {
            level: self.level,
            denom,
            leading_exponent: self.leading_exponent().map(|r| r.to_string()),
            truncation: Rational64::new(self.truncation(), denom).to_string(),
            terms: self
                .coefficients()
                .into_iter()
                .map(|(e, coeff)| SeriesTerm {
                    exponent: Rational64::new(e, denom),
                    coeff,
                })
                .collect(),
        }
        .serialize(s)
    }
}

fn normalize_r(level: Level, r: i64) -> Result<u64> {
    let n = level.get();
    let r0 = r.rem_euclid(n as i64) as u64;
    if r0 == 0 {
        return Err(Error::RCongruentZero { level: n, r });
    }
    Ok(r0.min(n - r0))
}

/// Numerator over 12N of `N B(r/N) / 2`, for `0 < r < N`.
fn eta_lead(n: i64, r: i64) -> i64 {
    6 * r * r - 6 * r * n + n * n
}

/// `E_r` to `terms` integral q-steps past its leading term.
pub fn eta_series(level: Level, r: i64, terms: usize) -> Result<QSeries> {
    let r0 = normalize_r(level, r)? as usize;
    if terms == 0 {
        return Err(Error::TruncationTooSmall(0));
    }
    let n = level.get() as usize;
    let mut poly = vec![BigInt::zero(); terms];
    poly[0] = BigInt::one();
    let mut exps = Vec::new();
    let mut k = r0;
    while k < terms {
        exps.push(k);
        k += n;
    }
    let mut k = n - r0;
    while k < terms {
        exps.push(k);
        k += n;
    }
    for k in exps {
        for i in (k..terms).rev() {
            let sub = poly[i - k].clone();
            poly[i] -= sub;
        }
    }
    Ok(QSeries {
        level,
        lead: eta_lead(n as i64, r0 as i64),
        coeffs: poly.into_iter().map(BigRational::from_integer).collect(),
    })
}

/// `prod_r E_r^{n_r}` with `0 < r <= N/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaQuotient {
    #[serde(rename = "level")]
    level: Level,
    exponents: BTreeMap<u64, i64>,
}

/// The JSON shape `{"level": 20, "exponents": {"1": -2, "2": 1}}`.
#[derive(Debug, Clone, Deserialize)]
pub struct QuotientSpec {
    pub level: u64,
    pub exponents: BTreeMap<String, i64>,
}

impl EtaQuotient {
    /// Indices are reduced modulo N and `r > N/2` is replaced by `N - r`.
    pub fn new(level: Level, exponents: &[(i64, i64)]) -> Result<Self> {
        let mut map: BTreeMap<u64, i64> = BTreeMap::new();
        for &(r, n) in exponents {
            *map.entry(normalize_r(level, r)?).or_default() += n;
        }
        map.retain(|_, n| *n != 0);
        Ok(EtaQuotient { level, exponents: map })
    }

    pub fn from_spec(spec: &QuotientSpec) -> Result<Self> {
        let level = Level::new(spec.level)?;
        let pairs: Vec<(i64, i64)> = spec
            .exponents
            .iter()
            .map(|(k, &n)| {
                k.trim()
                    .parse::<i64>()
                    .map(|r| (r, n))
                    .map_err(|_| Error::NotModular(format!("eta index {k:?} is not an integer")))
            })
            .collect::<Result<_>>()?;
        EtaQuotient::new(level, &pairs)
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    /// The conditions `sum n_r = 0 mod 12`, `sum r n_r = 0 mod 2` and
    /// `sum r^2 n_r = 0 mod 2N` for a modular function on Gamma_1(N).
    pub fn modularity_screen(&self) -> Result<()> {
        let n = self.level.get() as i128;
        let (mut s0, mut s1, mut s2) = (0i128, 0i128, 0i128);
        for (&r, &e) in &self.exponents {
            let (r, e) = (r as i128, e as i128);
            s0 += e;
            s1 += r * e;
            s2 += r * r * e;
        }
        if s0 % 12 != 0 {
            return Err(Error::NotModular(format!("sum of exponents {s0} is not divisible by 12")));
        }
        if s1 % 2 != 0 {
            return Err(Error::NotModular(format!("sum of r n_r = {s1} is odd")));
        }
        if s2 % (2 * n) != 0 {
            return Err(Error::NotModular(format!("sum of r^2 n_r = {s2} is not divisible by {}", 2 * n)));
        }
        Ok(())
    }

    /// `sum_r n_r N B(r/N) / 2`, the leading exponent at infinity.
    pub fn leading_exponent(&self) -> Rational64 {
        let n = self.level.get() as i64;
        let num: i64 = self.exponents.iter().map(|(&r, &e)| e * eta_lead(n, r as i64)).sum();
        Rational64::new(num, 12 * n)
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.exponents.iter().map(|(r, e)| format!("E{r}^{e}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Series of the quotient to `terms` integral q-steps past the leading term.
pub fn quotient_series(q: &EtaQuotient, terms: usize) -> Result<QSeries> {
    if terms == 0 {
        return Err(Error::TruncationTooSmall(0));
    }
    let mut acc = QSeries::one(q.level, terms);
    for (&r, &e) in &q.exponents {
        let factor = eta_series(q.level, r as i64, terms)?.pow(e)?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Default number of integral q-steps kept past the leading term.
pub fn default_terms(level: Level) -> usize {
    10 * level.get() as usize
}

/// Order at the cusp `(x : N)`, gcd(x, N) = 1, read off the series of
/// `prod E_{xr}^{n_r}`: the diamond operator [x] carries infinity there and
/// permutes the E_r, and such cusps have width 1.
pub fn order_at_infinity_type_by_series(q: &EtaQuotient, x: i64, terms: usize) -> Result<Rational64> {
    let n = q.level.get();
    if gcd(x.unsigned_abs(), n) != 1 {
        return Err(Error::NotCoprime { x, d: n });
    }
    let pairs: Vec<(i64, i64)> = q.exponents.iter().map(|(&r, &e)| (x * r as i64, e)).collect();
    let permuted = EtaQuotient::new(q.level, &pairs)?;
    let series = quotient_series(&permuted, terms)?;
    series.leading_exponent().ok_or(Error::TruncationTooSmall(terms as i64))
}

/// Compare the closed form against the series at every cusp `(x : N)`.
pub fn cross_check_infinity_type(q: &EtaQuotient, terms: usize) -> Result<Vec<CuspClass>> {
    let level = q.level;
    let n = level.get();
    let mut checked = Vec::new();
    for c in atlas(level, &GroupTag::Gamma1).with_d(n) {
        let (x, _) = c.lift();
        let closed = order_at_cusp_exact(q, c)?;
        let series = order_at_infinity_type_by_series(q, x, terms)?;
        if closed != series {
            return Err(Error::OrderMismatch {
                cusp: c.key(),
                closed_form: closed.to_string(),
                series: series.to_string(),
            });
        }
        checked.push(c.clone());
    }
    Ok(checked)
}

/// Order of the quotient at a cusp of X_1(N), in the local parameter:
///
/// ```text
/// ord_{a/c} = h * sum_r n_r * (c1^2 / 2N) * B({r a / c1}),   c1 = gcd(c, N),
/// ```
///
/// where h is the width of the cusp.
pub fn order_at_cusp_exact(q: &EtaQuotient, c: &CuspClass) -> Result<Rational64> {
    if c.level() != q.level {
        return Err(Error::LevelMismatch {
            expected: q.level.get(),
            found: c.level().get(),
        });
    }
    if *c.group() != GroupTag::Gamma1 {
        return Err(Error::UnsupportedGroup(format!(
            "eta quotient orders are taken on X_1(N), got {}",
            c.group().name()
        )));
    }
    let n = q.level.get() as i64;
    let (width, _) = width_and_stabilizer_sign(q.level, &GroupTag::Gamma1, c)?;
    let (a, cc) = c.lift();
    let c1 = gcd(cc.unsigned_abs(), n as u64) as i64;
    let scale = Rational64::new(c1 * c1, 2 * n);
    let sum = q.exponents.iter().fold(Rational64::zero(), |acc, (&r, &e)| {
        let x = Rational64::new((r as i64 * a).rem_euclid(c1), c1);
        acc + Rational64::from(e) * scale * periodic_bernoulli2(x)
    });
    Ok(sum * width as i64)
}

pub fn ord_at_cusp(q: &EtaQuotient, c: &CuspClass) -> Result<i64> {
    let ord = order_at_cusp_exact(q, c)?;
    if !ord.is_integer() {
        return Err(Error::NonIntegralOrder {
            cusp: c.key(),
            order: ord.to_string(),
        });
    }
    Ok(ord.to_integer())
}

/// Orders of a modular function at every cusp of X_1(N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspDivisor {
    level: Level,
    entries: BTreeMap<CuspClass, i64>,
}

impl CuspDivisor {
    pub fn level(&self) -> Level {
        self.level
    }

    /// Nonzero orders, in cusp order.
    pub fn entries(&self) -> &BTreeMap<CuspClass, i64> {
        &self.entries
    }

    pub fn order_at(&self, c: &CuspClass) -> i64 {
        self.entries.get(c).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.entries.values().sum()
    }

    /// Poles with their (positive) orders.
    pub fn pole_part(&self) -> BTreeMap<CuspClass, i64> {
        self.entries
            .iter()
            .filter(|(_, &o)| o < 0)
            .map(|(c, &o)| (c.clone(), -o))
            .collect()
    }

    pub fn zero_part(&self) -> BTreeMap<CuspClass, i64> {
        self.entries
            .iter()
            .filter(|(_, &o)| o > 0)
            .map(|(c, &o)| (c.clone(), o))
            .collect()
    }
}

impl fmt::Display for CuspDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.entries.iter().map(|(c, o)| format!("{o}{c}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for CuspDivisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            cusp: String,
            order: i64,
        }
        #[derive(Serialize)]
        struct View {
            #[serde(rename = "N")]
            level: Level,
            degree: i64,
            entries: Vec<Entry>,
        }
        View {
            level: self.level,
            degree: self.degree(),
            entries: self
                .entries
                .iter()
                .map(|(c, &order)| Entry { cusp: c.key(), order })
                .collect(),
        }
        .serialize(s)
    }
}

/// Divisor of the quotient on X_1(N); checks the modularity screen first.
pub fn divisor(q: &EtaQuotient) -> Result<CuspDivisor> {
    q.modularity_screen()?;
    let mut entries = BTreeMap::new();
    for c in atlas(q.level, &GroupTag::Gamma1).cusps() {
        let o = ord_at_cusp(q, c)?;
        if o != 0 {
            entries.insert(c.clone(), o);
        }
    }
    let div = CuspDivisor { level: q.level, entries };
    if div.degree() != 0 {
        return Err(Error::NonzeroDegree(div.to_string()));
    }
    Ok(div)
}

/// `f = E2 E4^2 E6^2 / (E1^2 E8 E9^2)` on X_1(20).
pub fn x1_20_f() -> EtaQuotient {
    let level = Level::new(20).expect("positive");
    EtaQuotient::new(level, &[(2, 1), (4, 2), (6, 2), (1, -2), (8, -1), (9, -2)]).expect("indices are nonzero mod 20")
}

/// `g = E3 E4^2 E5 E6 E7 / (E1^2 E8^2 E9 E10)` on X_1(20).
pub fn x1_20_g() -> EtaQuotient {
    let level = Level::new(20).expect("positive");
    EtaQuotient::new(
        level,
        &[(3, 1), (4, 2), (5, 1), (6, 1), (7, 1), (1, -2), (8, -2), (9, -1), (10, -1)],
    )
    .expect("indices are nonzero mod 20")
}

/// Weierstrass certificate for the irregular cusps of X_1(20).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct X1Level20Certificate {
    pub cusp: String,
    pub f_divisor: CuspDivisor,
    pub g_divisor: CuspDivisor,
    pub gaps: GapSequence,
    pub verdict: Verdict,
    /// `(Q, W_Q s)` for Q = 4, 5, 20.
    pub images: Vec<(u64, String)>,
    pub irregular: Vec<String>,
    /// Cusps `(x : 20)` where the closed-form orders of f and g were
    /// confirmed against q-series at the default truncation.
    pub series_checked: Vec<String>,
}

/// Pole order at `s` if `s` is the only pole of the divisor.
fn sole_pole(div: &CuspDivisor, s: &CuspClass) -> Option<u64> {
    let poles = div.pole_part();
    match (poles.len(), poles.get(s)) {
        (1, Some(&k)) => Some(k as u64),
        _ => None,
    }
}

/// Recompute the divisors of f and g, read off the gap sequence at
/// s = (1 : 10) and carry the verdict to the other irregular cusps with W_Q.
pub fn certify_x1_20() -> Result<X1Level20Certificate> {
    let level = Level::new(20)?;
    let s = canonicalize_x1(level, 1, 10)?;
    let f_divisor = divisor(&x1_20_f())?;
    let g_divisor = divisor(&x1_20_g())?;
    let terms = default_terms(level);
    cross_check_infinity_type(&x1_20_f(), terms)?;
    let series_checked = cross_check_infinity_type(&x1_20_g(), terms)?
        .iter()
        .map(CuspClass::key)
        .collect();
    let pole_orders: Vec<u64> = [&f_divisor, &g_divisor]
        .into_iter()
        .filter_map(|d| sole_pole(d, &s))
        .collect();
    let genus = g1(level);
    let gaps = gap_sequence_from_nongaps(&pole_orders, genus)?;

    let mut images = Vec::new();
    for q in [4, 5, 20] {
        let img = act_atkin_lehner(&build_atkin_lehner(level, q)?, &s)?;
        images.push((q, img.key()));
    }
    let irregular: Vec<String> = atlas(level, &GroupTag::Gamma1).irregular().map(CuspClass::key).collect();
    let mut orbit: Vec<String> = std::iter::once(s.key()).chain(images.iter().map(|(_, k)| k.clone())).collect();
    orbit.sort();
    orbit.dedup();
    let mut expected = irregular.clone();
    expected.sort();
    let covered = orbit == expected;

    let weierstrass = covered && gaps.gaps.iter().any(|&a| a > genus);
    let verdict = Verdict {
        status: if weierstrass { Status::Weierstrass } else { Status::Unknown },
        weight: weierstrass.then_some(gaps.weight),
        reason: (!weierstrass).then(|| "certificate does not cover every irregular cusp".to_string()),
        certificate: vec![CertStep::EtaCertificate {
            level: 20,
            cusp: s.key(),
            pole_orders,
            genus,
            gaps: gaps.gaps.clone(),
            weight: gaps.weight,
            orbit,
        }],
    };
    Ok(X1Level20Certificate {
        cusp: s.key(),
        f_divisor,
        g_divisor,
        gaps,
        verdict,
        images,
        irregular,
        series_checked,
    })
}

/// [`certify_x1_20`], computed once per process.
pub fn x1_20_certificate() -> Result<&'static X1Level20Certificate> {
    static CERT: OnceLock<Result<X1Level20Certificate>> = OnceLock::new();
    CERT.get_or_init(certify_x1_20).as_ref().map_err(Clone::clone)
}
