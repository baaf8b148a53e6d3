//! Concrete groups for structure labels, used to check a label against an
//! enumerated group by abstract isomorphism.

use crate::arith::pow_mod;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::perm::{abstract_isomorphic, Perm, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StructureSpec {
    /// `C_n`.
    Cyclic(u64),
    /// `D_2m`, of order `2m`.
    Dihedral(u64),
    /// `C_e ⋊ C_d` with the generator of `C_d` acting as `x ↦ x^k`.
    Metacyclic {
        e: u64,
        d: u64,
        k: u64,
    },
    Product(Box<StructureSpec>, Box<StructureSpec>),
    /// `F_p² ⋊ <diagonal matrices>`.
    AffineDiag {
        p: u64,
        diags: Vec<[u64; 2]>,
    },
}

impl StructureSpec {
    pub fn product(a: StructureSpec, b: StructureSpec) -> Self {
        StructureSpec::Product(Box::new(a), Box::new(b))
    }

    /// `C_e ⋊ C_d` with a faithful action through a unit of order `d`.
    pub fn metacyclic(e: u64, d: u64, k: u64) -> Self {
        StructureSpec::Metacyclic { e, d, k: k % e }
    }

    pub fn order(&self) -> u64 {
        match self {
            StructureSpec::Cyclic(n) => *n,
            StructureSpec::Dihedral(m) => 2 * m,
            StructureSpec::Metacyclic { e, d, .. } => e * d,
            StructureSpec::Product(a, b) => a.order() * b.order(),
            StructureSpec::AffineDiag { p, diags } => p * p * diag_group_order(*p, diags),
        }
    }

    /// A faithful permutation representation.
    pub fn build(&self, cap: usize) -> Result<PermGroup> {
        let (degree, gens) = self.generators()?;
        let g = PermGroup::generate(degree, gens, cap)?;
        if g.order() as u64 != self.order() {
            return Err(Error::InvalidSpec(format!("{self:?} has order {}", g.order())));
        }
        Ok(g)
    }

    fn generators(&self) -> Result<(usize, Vec<Perm>)> {
        match self {
            StructureSpec::Cyclic(n) => StructureSpec::metacyclic(*n, 1, 1).generators(),
            StructureSpec::Dihedral(m) => StructureSpec::metacyclic(*m, 2, m - 1).generators(),
            StructureSpec::Metacyclic { e, d, k } => {
                // Affine action on Z_e, faithful when k has order d.
                if crate::arith::mult_order(*k, *e).unwrap_or(0) != *d && *e > 1 {
                    return Err(Error::InvalidSpec(format!("{k} does not have order {d} mod {e}")));
                }
                let n = *e as usize;
                let shift = Perm::from_images((0..*e).map(|x| ((x + 1) % e) as u32).collect())?;
                let scale = Perm::from_images((0..*e).map(|x| (x * k % e) as u32).collect())?;
                if *e == 1 && *d > 1 {
                    return StructureSpec::Cyclic(*d).generators();
                }
                Ok((n, vec![shift, scale]))
            }
            StructureSpec::Product(a, b) => {
                let (da, ga) = a.generators()?;
                let (db, gb) = b.generators()?;
                let deg = da + db;
                let lift = |g: &Perm, offset: usize, own: usize| {
                    let mut images: Vec<u32> = (0..deg as u32).collect();
                    for x in 0..own {
                        images[offset + x] = (offset as u32) + g.apply(x as u32);
                    }
                    Perm::from_images(images)
                };
                let mut gens = Vec::new();
                for g in &ga {
                    gens.push(lift(g, 0, da)?);
                }
                for g in &gb {
                    gens.push(lift(g, da, db)?);
                }
                Ok((deg, gens))
            }
            StructureSpec::AffineDiag { p, diags } => {
                let deg = (p * p) as usize;
                let pt = |x: u64, y: u64| ((x % p) * p + y % p) as u32;
                let map = |f: &dyn Fn(u64, u64) -> u32| -> Result<Perm> {
                    let mut images = vec![0u32; deg];
                    for x in 0..*p {
                        for y in 0..*p {
                            images[pt(x, y) as usize] = f(x, y);
                        }
                    }
                    Perm::from_images(images)
                };
                let mut gens = vec![map(&|x, y| pt(x + 1, y))?, map(&|x, y| pt(x, y + 1))?];
                for dg in diags {
                    gens.push(map(&|x, y| pt(x * dg[0], y * dg[1]))?);
                }
                Ok((deg, gens))
            }
        }
    }

    /// Is `group` abstractly isomorphic to this structure?
    pub fn matches(&self, group: &PermGroup, cap: usize, exec: Exec) -> Result<bool> {
        if group.order() as u64 != self.order() {
            return Ok(false);
        }
        abstract_isomorphic(&self.build(cap)?, group, exec)
    }
}

fn diag_group_order(p: u64, diags: &[[u64; 2]]) -> u64 {
    let mut seen = vec![[1u64, 1u64]];
    let mut i = 0;
    while i < seen.len() {
        for dg in diags {
            let x = [seen[i][0] * dg[0] % p, seen[i][1] * dg[1] % p];
            if !seen.contains(&x) {
                seen.push(x);
            }
        }
        i += 1;
    }
    seen.len() as u64
}

/// A unit of order exactly `m` mod the prime `q` (`m | q-1`), as a power of
/// the smallest primitive root.
pub fn unit_of_order(q: u64, m: u64) -> u64 {
    let h = crate::arith::smallest_primitive_root(q).expect("q prime");
    pow_mod(h, (q - 1) / m, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::DEFAULT_ELEMENT_CAP;

    #[test]
    fn orders() {
        let d10 = StructureSpec::Dihedral(5);
        assert_eq!(d10.build(100).unwrap().order(), 10);
        let f = StructureSpec::AffineDiag {
            p: 7,
            diags: vec![[2, 1], [2, 2]],
        };
        assert_eq!(f.order(), 441);
        assert_eq!(f.build(DEFAULT_ELEMENT_CAP).unwrap().order(), 441);
        let prod = StructureSpec::product(StructureSpec::Cyclic(3), StructureSpec::metacyclic(7, 3, 2));
        assert_eq!(prod.build(100).unwrap().order(), 63);
    }

    #[test]
    fn matching() {
        let s3 = PermGroup::symmetric(3);
        assert!(StructureSpec::Dihedral(3).matches(&s3, 100, Exec::Sequential).unwrap());
        assert!(!StructureSpec::Cyclic(6).matches(&s3, 100, Exec::Sequential).unwrap());
        let c6 = StructureSpec::product(StructureSpec::Cyclic(2), StructureSpec::Cyclic(3));
        assert!(c6
            .matches(&StructureSpec::Cyclic(6).build(10).unwrap(), 100, Exec::Sequential)
            .unwrap());
        assert_eq!(unit_of_order(7, 3), 2);
    }
}
