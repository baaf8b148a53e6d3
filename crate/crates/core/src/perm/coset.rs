//! Left-multiplication action on left cosets.

use std::collections::HashMap;

use super::{series::core, Perm, PermGroup};
use crate::error::{Error, Result};

/// Action of `group` on the left cosets of `sub`, coset `sub` being point 0.
/// Fails when the action is not faithful.
pub fn coset_action(group: &PermGroup, sub: &PermGroup) -> Result<PermGroup> {
    if core(group, sub)?.order() != 1 {
        return Err(Error::CoreNotTrivial);
    }
    let mut coset_of: HashMap<&Perm, u32> = HashMap::new();
    let mut reps: Vec<&Perm> = Vec::new();
    // Visit the identity first so that `sub` is coset 0.
    let order = std::iter::once(group.identity()).chain(group.elements().iter());
    for g in order {
        if coset_of.contains_key(g) {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(g);
        for h in sub.elements() {
            let gh = g * h;
            let key = group.elements().get(group.index_of(&gh).ok_or(Error::NotSubgroup)?).unwrap();
            coset_of.insert(key, id);
        }
    }
    let degree = reps.len();
    let gens: Vec<Perm> = group
        .generators()
        .iter()
        .map(|x| {
            let images: Vec<u32> = reps
                .iter()
                .map(|r| {
                    let xr = x * *r;
                    coset_of[group.elements().get(group.index_of(&xr).unwrap()).unwrap()]
                })
                .collect();
            Perm::from_images(images)
        })
        .collect::<Result<_>>()?;
    PermGroup::generate(degree, gens, group.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_and_natural() {
        let s3 = PermGroup::symmetric(3);
        let reg = coset_action(&s3, &PermGroup::trivial(3)).unwrap();
        assert_eq!(reg.degree(), 6);
        assert!(reg.is_regular());
        let h = PermGroup::generate(3, vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap()], 10).unwrap();
        let nat = coset_action(&s3, &h).unwrap();
        assert_eq!((nat.degree(), nat.order()), (3, 6));
        assert!(nat.is_transitive());
        assert_eq!(nat.point_stabilizer(0).order(), 2);
    }

    #[test]
    fn unfaithful_rejected() {
        let s3 = PermGroup::symmetric(3);
        let a3 = PermGroup::generate(3, vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()], 10).unwrap();
        assert_eq!(coset_action(&s3, &a3), Err(Error::CoreNotTrivial));
    }
}
