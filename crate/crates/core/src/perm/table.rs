//! Multiplication table over the canonical element indexing of a [`PermGroup`].

use std::collections::HashMap;

use super::{Perm, PermGroup};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest order for which a table is built (entries are `u16`).
pub const MAX_TABLE_ORDER: usize = u16::MAX as usize;

/// Index lookup keyed by the images of a base (a point sequence whose
/// pointwise stabiliser is trivial).
#[derive(Debug, Clone)]
pub(crate) struct BaseIndex {
    base: Vec<u32>,
    bits: u32,
    degree: usize,
    dense: Option<Vec<u32>>,
    packed: Option<HashMap<u128, u32>>,
    wide: Option<HashMap<Vec<u32>, u32>>,
}

const DENSE_LIMIT: u128 = 1 << 22;
const ABSENT: u32 = u32::MAX;

impl BaseIndex {
    pub(crate) fn new(group: &PermGroup) -> Self {
        let base = find_base(group);
        let bits = (usize::BITS - group.degree().max(2).saturating_sub(1).leading_zeros()).max(1);
        let fits = base.len() as u32 * bits <= 128;
        let mut index = BaseIndex {
            base,
            bits,
            degree: group.degree(),
            dense: None,
            packed: None,
            wide: None,
        };
        let slots = (group.degree() as u128).checked_pow(index.base.len() as u32);
        if let Some(slots) = slots.filter(|&s| s <= DENSE_LIMIT) {
            let mut d = vec![ABSENT; slots as usize];
            for (i, e) in group.elements().iter().enumerate() {
                d[index.radix(|b| e.apply(b), group.degree())] = i as u32;
            }
            index.dense = Some(d);
        } else if fits {
            let mut m = HashMap::with_capacity(group.order());
            for (i, e) in group.elements().iter().enumerate() {
                m.insert(index.pack(|b| e.apply(b)), i as u32);
            }
            index.packed = Some(m);
        } else {
            let mut m = HashMap::with_capacity(group.order());
            for (i, e) in group.elements().iter().enumerate() {
                m.insert(index.base.iter().map(|&b| e.apply(b)).collect(), i as u32);
            }
            index.wide = Some(m);
        }
        index
    }

    #[inline]
    fn pack(&self, img: impl Fn(u32) -> u32) -> u128 {
        let mut key = 0u128;
        for &b in &self.base {
            key = (key << self.bits) | img(b) as u128;
        }
        key
    }

    #[inline]
    fn radix(&self, img: impl Fn(u32) -> u32, degree: usize) -> usize {
        self.base.iter().fold(0usize, |k, &b| k * degree + img(b) as usize)
    }

    /// Index of the element whose base images are given by `img`.
    #[inline]
    pub(crate) fn lookup(&self, img: impl Fn(u32) -> u32) -> Option<u32> {
        if let Some(d) = &self.dense {
            let i = d[self.radix(img, self.degree)];
            return (i != ABSENT).then_some(i);
        }
        match &self.packed {
            Some(m) => m.get(&self.pack(img)).copied(),
            None => {
                let key: Vec<u32> = self.base.iter().map(|&b| img(b)).collect();
                self.wide.as_ref().and_then(|m| m.get(&key).copied())
            }
        }
    }
}

fn find_base(group: &PermGroup) -> Vec<u32> {
    let mut base = Vec::new();
    let mut rest: Vec<&Perm> = group.elements().iter().filter(|e| !e.is_identity()).collect();
    while let Some(first) = rest.first() {
        let moved = (0..group.degree() as u32).find(|&x| !first.fixes(x)).unwrap();
        base.push(moved);
        rest.retain(|e| e.fixes(moved));
    }
    base
}

/// Dense Cayley table. Index 0 is the identity.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    orders: Vec<u32>,
}

impl CayleyTable {
    pub fn new(group: &PermGroup, exec: Exec) -> Result<Self> {
        let n = group.order();
        if n > MAX_TABLE_ORDER {
            return Err(Error::CapExceeded {
                what: "table order",
                cap: MAX_TABLE_ORDER,
            });
        }
        let index = BaseIndex::new(group);
        let elems = group.elements();
        let rows: Vec<Vec<u16>> = exec.map_range(n, |i| {
            let a = &elems[i];
            elems
                .iter()
                .map(|b| index.lookup(|x| a.apply(b.apply(x))).expect("closed group") as u16)
                .collect()
        });
        let mut mul = Vec::with_capacity(n * n);
        for r in rows {
            mul.extend_from_slice(&r);
        }
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row.iter().position(|&x| x == 0).expect("group has inverses") as u16;
        }
        let mut t = CayleyTable {
            n,
            mul,
            inv,
            orders: vec![0; n],
        };
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = t.mul(x, a);
                k += 1;
            }
            t.orders[a] = k;
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn elt_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    /// `x * h * x^-1`.
    #[inline]
    pub fn conj(&self, x: usize, h: usize) -> usize {
        self.mul(self.mul(x, h), self.inv(x))
    }

    /// `a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }
}
