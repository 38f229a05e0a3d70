//! Brute-force oracles that share no code with the library.
//!
//! Cosets of +-Gamma_Delta(N) in SL_2(Z) are bottom rows (c, d) mod N with
//! gcd(c, d, N) = 1, taken up to scalars in Delta. Right multiplication by
//! S, ST and T gives the elliptic points and the cusps.

#![allow(dead_code)]

use std::collections::BTreeMap;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn phi(n: u64) -> u64 {
    (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64
}

pub fn units(n: u64) -> Vec<u64> {
    (0..n).filter(|&a| gcd(a, n) == 1).collect()
}

pub fn plus_minus_one(n: u64) -> Vec<u64> {
    let mut v = vec![1 % n, (n - 1) % n];
    v.sort();
    v.dedup();
    v
}

/// Mod-N matrix entries `[[a, b], [c, d]]`.
type Mat = [[u64; 2]; 2];

struct Cosets {
    n: u64,
    /// canonical representative index for every pair index, or usize::MAX
    rep: Vec<usize>,
    reps: Vec<usize>,
}

impl Cosets {
    fn new(n: u64, delta: &[u64]) -> Self {
        let size = (n * n) as usize;
        let mut rep = vec![usize::MAX; size];
        let mut reps = Vec::new();
        for c in 0..n {
            for d in 0..n {
                if gcd(gcd(c, d), n) != 1 {
                    continue;
                }
                let i = (c * n + d) as usize;
                let best = delta
                    .iter()
                    .map(|&l| ((l * c % n) * n + l * d % n) as usize)
                    .min()
                    .unwrap();
                rep[i] = best;
                if best == i {
                    reps.push(i);
                }
            }
        }
        Cosets { n, rep, reps }
    }

    fn act(&self, i: usize, m: Mat) -> usize {
        let n = self.n;
        let (c, d) = (i as u64 / n, i as u64 % n);
        let c2 = (c * m[0][0] + d * m[1][0]) % n;
        let d2 = (c * m[0][1] + d * m[1][1]) % n;
        self.rep[(c2 * n + d2) as usize]
    }

    fn fixed(&self, m: Mat) -> usize {
        self.reps.iter().filter(|&&i| self.act(i, m) == i).count()
    }

    fn cycles(&self, m: Mat) -> usize {
        let mut seen = vec![false; self.rep.len()];
        let mut count = 0;
        for &i in &self.reps {
            if seen[i] {
                continue;
            }
            count += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.act(j, m);
            }
        }
        count
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleGenus {
    pub mu: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub nu_inf: u64,
    pub g: i64,
}

/// Genus of X_Delta(N) from an explicit coset enumeration; `delta` must contain +-1.
pub fn genus_by_cosets(n: u64, delta: &[u64]) -> OracleGenus {
    if n == 1 {
        return OracleGenus { mu: 1, nu2: 1, nu3: 1, nu_inf: 1, g: 0 };
    }
    let cos = Cosets::new(n, delta);
    let m1 = n - 1;
    let s: Mat = [[0, m1], [1, 0]];
    let st: Mat = [[0, m1], [1, 1]];
    let t: Mat = [[1, 1], [0, 1]];
    let mu = cos.reps.len() as u64;
    let nu2 = cos.fixed(s) as u64;
    let nu3 = cos.fixed(st) as u64;
    let nu_inf = cos.cycles(t) as u64;
    let twelve_g = 12 + mu as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * nu_inf as i64;
    assert_eq!(twelve_g % 12, 0, "non-integral genus at N={n}");
    OracleGenus { mu, nu2, nu3, nu_inf, g: twelve_g / 12 }
}

pub fn g1_oracle(n: u64) -> i64 {
    genus_by_cosets(n, &plus_minus_one(n)).g
}

pub fn g0_oracle(n: u64) -> i64 {
    genus_by_cosets(n, &units(n)).g
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

fn mod_inv(a: u64, n: u64) -> u64 {
    (1..=n).find(|&b| a * b % n == 1 % n).unwrap()
}

/// Units generating the whole unit group together with -1.
fn unit_gens(n: u64) -> Vec<u64> {
    let mut gens = Vec::new();
    let mut reached = vec![false; n as usize];
    let mark = |gens: &[u64], reached: &mut Vec<bool>| {
        let mut stack = vec![1 % n];
        reached.iter_mut().for_each(|r| *r = false);
        reached[(1 % n) as usize] = true;
        while let Some(a) = stack.pop() {
            for &g in gens.iter().chain([n - 1].iter()) {
                let b = a * g % n;
                if !reached[b as usize] {
                    reached[b as usize] = true;
                    stack.push(b);
                }
            }
        }
    };
    mark(&gens, &mut reached);
    for u in units(n) {
        if !reached[u as usize] {
            gens.push(u);
            mark(&gens, &mut reached);
        }
    }
    gens
}

/// Number of cusps with invariant d = gcd(y, N), counted by orbits of
/// primitive pairs (x, y) mod N under x -> x + y, (x, y) -> (-x, -y) and,
/// for X_0(N), (x, y) -> (u x, u^-1 y).
pub fn cusp_counts_by_orbits(n: u64, gamma0: bool) -> BTreeMap<u64, usize> {
    let idx = |x: u64, y: u64| (x * n + y) as usize;
    let mut uf = UnionFind((0..(n * n) as usize).collect());
    let gens = if gamma0 { unit_gens(n) } else { Vec::new() };
    let mut primitive = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if gcd(gcd(x, y), n) != 1 {
                continue;
            }
            primitive.push((x, y));
            let i = idx(x, y);
            uf.union(i, idx((x + y) % n, y));
            uf.union(i, idx((n - x) % n, (n - y) % n));
            for &u in &gens {
                uf.union(i, idx(u * x % n, mod_inv(u, n) * y % n));
            }
        }
    }
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    let mut roots = std::collections::BTreeSet::new();
    for (x, y) in primitive {
        let r = uf.find(idx(x, y));
        if roots.insert(r) {
            *counts.entry(gcd(y, n)).or_default() += 1;
        }
    }
    counts
}
