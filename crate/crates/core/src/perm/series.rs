//! Derived series and cores computed directly on permutations, for groups
//! too large to tabulate.

use std::collections::HashSet;

use super::{Perm, PermGroup};
use crate::error::{Error, Result};

/// Commutator subgroup `[G, G]`.
pub fn derived_subgroup(group: &PermGroup, cap: usize) -> Result<PermGroup> {
    let gens = group.generators();
    let mut comms: Vec<Perm> = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = &(&a.inverse() * &b.inverse()) * &(a * b);
            if !c.is_identity() && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    let mut d = PermGroup::generate(group.degree(), comms, cap)?;
    loop {
        let mut extra = None;
        'outer: for g in gens {
            for h in d.generators() {
                let c = g.conjugate(h);
                if !d.contains(&c) {
                    extra = Some(c);
                    break 'outer;
                }
            }
        }
        match extra {
            None => return Ok(d),
            Some(c) => {
                let mut gs = d.generators().to_vec();
                gs.push(c);
                d = PermGroup::generate(group.degree(), gs, cap)?;
            }
        }
    }
}

/// `G ⊇ G' ⊇ G'' ⊇ ...`, stopping at the trivial group or the first repeat.
pub fn derived_series(group: &PermGroup, cap: usize) -> Result<Vec<PermGroup>> {
    let mut series = vec![group.clone()];
    loop {
        let last = series.last().unwrap();
        if last.order() == 1 {
            return Ok(series);
        }
        let next = derived_subgroup(last, cap)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

/// Derived length, or `None` for a non-soluble group.
pub fn derived_length(group: &PermGroup, cap: usize) -> Result<Option<usize>> {
    let series = derived_series(group, cap)?;
    Ok((series.last().unwrap().order() == 1).then(|| series.len() - 1))
}

/// Largest normal subgroup of `group` contained in `sub`.
pub fn core(group: &PermGroup, sub: &PermGroup) -> Result<PermGroup> {
    if !sub.is_subgroup_of(group) {
        return Err(Error::NotSubgroup);
    }
    let mut current: HashSet<Perm> = sub.elements().iter().cloned().collect();
    loop {
        let next: HashSet<Perm> = current
            .iter()
            .filter(|h| group.generators().iter().all(|g| current.contains(&g.conjugate(h))))
            .cloned()
            .collect();
        if next.len() == current.len() {
            return Ok(PermGroup::from_elements(group.degree(), next.into_iter().collect()));
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[u32]) -> Perm {
        Perm::from_cycles(n, &[c]).unwrap()
    }

    #[test]
    fn sym_series() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(derived_length(&s3, 100).unwrap(), Some(2));
        let s4 = PermGroup::symmetric(4);
        let orders: Vec<usize> = derived_series(&s4, 100).unwrap().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        let s5 = PermGroup::symmetric(5);
        assert_eq!(derived_length(&s5, 200).unwrap(), None);
    }

    #[test]
    fn cores() {
        let s3 = PermGroup::symmetric(3);
        let h = PermGroup::generate(3, vec![cyc(3, &[0, 1])], 10).unwrap();
        assert_eq!(core(&s3, &h).unwrap().order(), 1);
        let a3 = PermGroup::generate(3, vec![cyc(3, &[0, 1, 2])], 10).unwrap();
        assert_eq!(core(&s3, &a3).unwrap(), a3);
        assert_eq!(core(&s3, &s3).unwrap().order(), 6);
        let other = PermGroup::generate(3, vec![cyc(3, &[0, 1])], 10).unwrap();
        assert_eq!(core(&a3, &other), Err(Error::NotSubgroup));
    }
}
