//! Groups of squarefree order `C_e ⋊ C_d` and their automorphism groups.
//!
//! Elements `σ^a τ^b` are indexed `a*d + b`, so the identity is 0.

use serde::Serialize;

use crate::arith::{
    divisors, euler_phi, gcd, is_prime, is_squarefree, mult_order, pow_mod, prime_factors, sigma0, smallest_primitive_root, units,
};
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

/// `<σ, τ | σ^e = τ^d = 1, τσ = σ^k τ>` of order `n = e*d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SquarefreeSpec {
    pub n: u64,
    pub e: u64,
    pub d: u64,
    pub k: u64,
}

impl SquarefreeSpec {
    pub fn new(e: u64, d: u64, k: u64) -> Result<Self> {
        let n = e * d;
        if !is_squarefree(n) {
            return Err(Error::NotSquarefree(n));
        }
        let k = if e == 1 { 0 } else { k % e };
        if mult_order(k, e) != Some(d) {
            return Err(Error::InvalidSpec(format!("{k} does not have order {d} mod {e}")));
        }
        Ok(SquarefreeSpec { n, e, d, k })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        SquarefreeSpec::new(n, 1, 1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.d == 1
    }

    /// `C_n` or `C_e ⋊_k C_d`.
    pub fn label(&self) -> String {
        if self.is_cyclic() {
            format!("C_{}", self.n)
        } else {
            format!("C_{} ⋊_{} C_{}", self.e, self.k, self.d)
        }
    }

    #[inline]
    pub fn index(&self, a: u64, b: u64) -> usize {
        ((a % self.e) * self.d + b % self.d) as usize
    }

    #[inline]
    pub fn coords(&self, x: usize) -> (u64, u64) {
        (x as u64 / self.d, x as u64 % self.d)
    }

    /// `k^b mod e`.
    fn kpow(&self, b: u64) -> u64 {
        pow_mod(self.k, b, self.e)
    }

    /// Product in `N`: `σ^a τ^b σ^c τ^f = σ^(a + k^b c) τ^(b+f)`.
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        let (a, b) = self.coords(x);
        let (c, f) = self.coords(y);
        self.index(a + self.kpow(b) * c, b + f)
    }

    pub fn inv(&self, x: usize) -> usize {
        (0..self.n as usize).find(|&y| self.mul(x, y) == 0).unwrap()
    }

    /// `1 + k + ... + k^(b-1) mod e`.
    fn geometric(&self, b: u64) -> u64 {
        (0..b).fold(0, |acc, i| (acc + self.kpow(i)) % self.e)
    }

    pub fn sigma(&self) -> usize {
        self.index(1, 0)
    }

    pub fn tau(&self) -> usize {
        self.index(0, 1)
    }

    /// Left translation `y ↦ xy` as a permutation of the element indices.
    pub fn left_translation(&self, x: usize) -> Perm {
        let images = (0..self.n as usize).map(|y| self.mul(x, y) as u32).collect();
        Perm::from_images(images).expect("translation is a bijection")
    }
}

/// One spec per isomorphism class of groups of order `n`: cyclic first, then
/// by increasing `e`, with `k` the smallest generator of `<k>`.
pub fn enumerate_specs(n: u64) -> Result<Vec<SquarefreeSpec>> {
    if n == 0 || !is_squarefree(n) {
        return Err(Error::NotSquarefree(n));
    }
    let mut out = vec![SquarefreeSpec::cyclic(n)?];
    for e in divisors(n) {
        let d = n / e;
        if d == 1 {
            continue;
        }
        let mut seen: Vec<Vec<u64>> = Vec::new();
        for k in units(e) {
            if mult_order(k, e) != Some(d) {
                continue;
            }
            let mut sub: Vec<u64> = (0..d).map(|i| pow_mod(k, i, e)).collect();
            sub.sort_unstable();
            if !seen.contains(&sub) {
                seen.push(sub);
                out.push(SquarefreeSpec::new(e, d, k)?);
            }
        }
    }
    Ok(out)
}

/// Left regular representation of `N` on its element indices.
pub fn build_group(spec: &SquarefreeSpec) -> Result<PermGroup> {
    let gens = vec![spec.left_translation(spec.sigma()), spec.left_translation(spec.tau())];
    let g = PermGroup::generate(spec.n as usize, gens, spec.n as usize)?;
    debug_assert_eq!(g.order() as u64, spec.n);
    Ok(g)
}

/// `Aut(N) = C_g ⋊ Z_e^×`, with `θ: σ ↦ σ, τ ↦ σ^z τ` and `φ_s: σ ↦ σ^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutStructure {
    pub spec: SquarefreeSpec,
    pub z: u64,
    pub g: u64,
    pub aut_order: u64,
    pub theta: Perm,
    /// `(s, φ_s)` for every unit `s` mod `e`.
    pub phi: Vec<(u64, Perm)>,
}

impl AutStructure {
    /// The automorphism `σ ↦ σ^s, τ ↦ σ^t τ` as a map on element indices.
    pub fn automorphism(&self, s: u64, t: u64) -> Perm {
        automorphism_map(&self.spec, s, t)
    }

    /// All `g·φ(e)` automorphisms, ordered by `(s, t)`.
    pub fn all(&self) -> Vec<Perm> {
        let e = self.spec.e;
        let mut out = Vec::with_capacity(self.aut_order as usize);
        for s in units(e) {
            for j in 0..self.g {
                out.push(self.automorphism(s, (j * self.z) % e.max(1)));
            }
        }
        out
    }

    pub fn group(&self) -> Result<PermGroup> {
        let mut gens = vec![self.theta.clone()];
        gens.extend(self.phi.iter().map(|(_, p)| p.clone()));
        PermGroup::generate(self.spec.n as usize, gens, self.aut_order as usize)
    }
}

pub(crate) fn automorphism_map(spec: &SquarefreeSpec, s: u64, t: u64) -> Perm {
    let images = (0..spec.n as usize)
        .map(|x| {
            let (a, b) = spec.coords(x);
            spec.index(s * a + t * spec.geometric(b), b) as u32
        })
        .collect();
    Perm::from_images(images).expect("automorphism is a bijection")
}

pub fn aut_structure(spec: &SquarefreeSpec) -> AutStructure {
    let e = spec.e;
    let z = if e == 1 { 1 } else { gcd(e, (spec.k + e - 1) % e) };
    let g = e / z;
    let phi = units(e).into_iter().map(|s| (s, automorphism_map(spec, s, 0))).collect();
    AutStructure {
        spec: *spec,
        z,
        g,
        aut_order: g * euler_phi(e),
        theta: automorphism_map(spec, 1, z % e.max(1)),
        phi,
    }
}

/// `|Hol(N)|` and whether the cube of the largest prime of `n` divides it.
pub fn hol_div_check(spec: &SquarefreeSpec) -> (u64, bool) {
    let hol = spec.n * aut_structure(spec).aut_order;
    let p = prime_factors(spec.n).into_iter().max().unwrap_or(1);
    (hol, p > 1 && hol.is_multiple_of(p * p * p))
}

/// Data attached to a Sophie Germain prime `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SophieGermain {
    pub q: u64,
    pub p: u64,
    pub r: u32,
    pub s: u64,
    pub sigma0_s: u64,
    /// Square of the smallest primitive root mod `p`; has order `q` mod `p`.
    pub g: u64,
}

impl SophieGermain {
    pub fn cyclic_spec(&self) -> SquarefreeSpec {
        SquarefreeSpec::cyclic(self.p * self.q).expect("pq is squarefree")
    }

    pub fn metacyclic_spec(&self) -> SquarefreeSpec {
        SquarefreeSpec::new(self.p, self.q, self.g).expect("g has order q mod p")
    }
}

pub fn sophie_germain_params(q: u64) -> Result<SophieGermain> {
    if q < 3 || !is_prime(q) || !is_prime(2 * q + 1) {
        return Err(Error::NotSophieGermain(q));
    }
    let p = 2 * q + 1;
    let r = (q - 1).trailing_zeros();
    let s = (q - 1) >> r;
    let root = smallest_primitive_root(p).expect("p is prime");
    Ok(SophieGermain {
        q,
        p,
        r,
        s,
        sigma0_s: sigma0(s),
        g: root * root % p,
    })
}
