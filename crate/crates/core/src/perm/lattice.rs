//! Subgroups of a tabled group as element bitsets, and subgroup enumeration.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::CayleyTable;
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Non-soluble groups up to this order are enumerated by iterated joins.
pub const BRUTE_FORCE_LIMIT: usize = 1000;

/// A subgroup of a tabled group: its element set plus the generators it was
/// built from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub members: FixedBitSet,
    pub order: usize,
    pub gens: Vec<u32>,
}

impl Subgroup {
    pub fn trivial(table: &CayleyTable) -> Self {
        let mut members = FixedBitSet::with_capacity(table.order());
        members.insert(0);
        Subgroup {
            members,
            order: 1,
            gens: Vec::new(),
        }
    }

    pub fn whole(table: &CayleyTable) -> Self {
        let mut members = FixedBitSet::with_capacity(table.order());
        members.insert_range(..);
        // Generators are chosen by walking the elements greedily.
        let mut sub = Subgroup::trivial(table);
        for x in 0..table.order() {
            if !sub.members.contains(x) {
                let mut gens: Vec<usize> = sub.gens.iter().map(|&g| g as usize).collect();
                gens.push(x);
                sub = generate(table, &gens);
            }
        }
        debug_assert_eq!(sub.members, members);
        sub
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn gens_usize(&self) -> Vec<usize> {
        self.gens.iter().map(|&g| g as usize).collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// Subgroup generated by `gens`.
pub fn generate(table: &CayleyTable, gens: &[usize]) -> Subgroup {
    let mut members = FixedBitSet::with_capacity(table.order());
    members.insert(0);
    let mut list = vec![0usize];
    let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &g in &gens {
            let y = table.mul(g, x);
            if !members.put(y) {
                list.push(y);
            }
        }
        i += 1;
    }
    Subgroup {
        order: list.len(),
        members,
        gens: gens.iter().map(|&g| g as u32).collect(),
    }
}

/// Elements of `ambient` normalising `sub`.
pub fn normalizer(table: &CayleyTable, ambient: &Subgroup, sub: &Subgroup) -> Vec<usize> {
    let gens = sub.gens_usize();
    ambient
        .elements()
        .filter(|&x| gens.iter().all(|&h| sub.contains(table.conj(x, h))))
        .collect()
}

pub fn is_normal(table: &CayleyTable, ambient: &Subgroup, sub: &Subgroup) -> bool {
    let gens = sub.gens_usize();
    ambient
        .gens
        .iter()
        .all(|&x| gens.iter().all(|&h| sub.contains(table.conj(x as usize, h))))
}

pub fn center(table: &CayleyTable, group: &Subgroup) -> Subgroup {
    let gens = group.gens_usize();
    let elems: Vec<usize> = group
        .elements()
        .filter(|&z| gens.iter().all(|&g| table.mul(z, g) == table.mul(g, z)))
        .collect();
    subgroup_from_elements(table, &elems)
}

pub fn centralizer_order(table: &CayleyTable, group: &Subgroup, x: usize) -> usize {
    group.elements().filter(|&g| table.mul(x, g) == table.mul(g, x)).count()
}

/// Wrap a list of elements known to form a subgroup.
pub fn subgroup_from_elements(table: &CayleyTable, elems: &[usize]) -> Subgroup {
    let mut sub = Subgroup::trivial(table);
    for &x in elems {
        if !sub.contains(x) {
            let mut gens = sub.gens_usize();
            gens.push(x);
            sub = generate(table, &gens);
        }
    }
    sub
}

/// Commutator subgroup: normal closure of the commutators of generators.
pub fn derived_subgroup(table: &CayleyTable, group: &Subgroup) -> Subgroup {
    let gens = group.gens_usize();
    let mut comms = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = table.commutator(a, b);
            if c != 0 {
                comms.push(c);
            }
        }
    }
    let mut d = generate(table, &comms);
    loop {
        let mut added = None;
        'outer: for &g in &gens {
            for h in d.gens_usize() {
                let c = table.conj(g, h);
                if !d.contains(c) {
                    added = Some(c);
                    break 'outer;
                }
            }
        }
        match added {
            Some(c) => {
                let mut gs = d.gens_usize();
                gs.push(c);
                d = generate(table, &gs);
            }
            None => return d,
        }
    }
}

/// Terms `G = G(0) ⊇ G(1) ⊇ ...` down to the first repeated term.
pub fn derived_series(table: &CayleyTable, group: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![group.clone()];
    loop {
        let last = series.last().unwrap();
        if last.order == 1 {
            return series;
        }
        let next = derived_subgroup(table, last);
        if next.order == last.order {
            return series;
        }
        series.push(next);
    }
}

/// Derived length, or `None` if the group is not soluble.
pub fn derived_length(table: &CayleyTable, group: &Subgroup) -> Option<usize> {
    let series = derived_series(table, group);
    (series.last().unwrap().order == 1).then(|| series.len() - 1)
}

/// All subgroups of `ambient` (a soluble group), sorted by order and then by
/// element set.
pub fn all_subgroups(table: &CayleyTable, ambient: &Subgroup, cap: usize, exec: Exec) -> Result<Vec<Subgroup>> {
    if derived_length(table, ambient).is_some() {
        cyclic_extension(table, ambient, |_| true, cap, exec)
    } else if ambient.order <= BRUTE_FORCE_LIMIT {
        brute_force_subgroups(table, ambient, cap)
    } else {
        Err(Error::NotSoluble)
    }
}

/// Cyclic-extension enumeration: every subgroup `K` of a soluble group has a
/// normal subgroup `H` of prime index, so `K = <H, x>` with `x` normalising
/// `H` and `x^p ∈ H`. Orders rejected by `keep_order` are not explored, so
/// passing a divisibility test restricts the output to subgroups whose
/// orders pass it along a composition series.
pub fn cyclic_extension(
    table: &CayleyTable,
    ambient: &Subgroup,
    keep_order: impl Fn(usize) -> bool + Sync,
    cap: usize,
    exec: Exec,
) -> Result<Vec<Subgroup>> {
    let mut all: Vec<Subgroup> = vec![Subgroup::trivial(table)];
    let mut layer = all.clone();
    while !layer.is_empty() {
        let found: Vec<Vec<Subgroup>> = exec.map(&layer, |h| prime_extensions(table, ambient, h, &keep_order));
        let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
        let mut next = Vec::new();
        for k in found.into_iter().flatten() {
            if seen.insert(k.members.clone(), ()).is_none() {
                next.push(k);
            }
        }
        if all.len() + next.len() > cap {
            return Err(Error::CapExceeded { what: "subgroup", cap });
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.members.cmp(&b.members)));
    Ok(all)
}

fn prime_extensions(table: &CayleyTable, ambient: &Subgroup, h: &Subgroup, keep_order: &impl Fn(usize) -> bool) -> Vec<Subgroup> {
    let norm = normalizer(table, ambient, h);
    let mut covered = h.members.clone();
    let mut out = Vec::new();
    for x in norm {
        if covered.contains(x) {
            continue;
        }
        let mut j = 1;
        let mut y = x;
        while !h.contains(y) {
            y = table.mul(y, x);
            j += 1;
        }
        if !is_prime(j as u64) || !keep_order(h.order * j) {
            continue;
        }
        let mut members = h.members.clone();
        let mut coset_rep = x;
        for _ in 1..j {
            for e in h.elements() {
                members.insert(table.mul(e, coset_rep));
            }
            coset_rep = table.mul(coset_rep, x);
        }
        covered.union_with(&members);
        let mut gens = h.gens.clone();
        gens.push(x as u32);
        out.push(Subgroup {
            members,
            order: h.order * j,
            gens,
        });
    }
    out
}

/// Exhaustive enumeration by repeatedly joining known subgroups with cyclic
/// subgroups of prime-power order until no new subgroup appears. Independent
/// of solubility.
pub fn brute_force_subgroups(table: &CayleyTable, ambient: &Subgroup, cap: usize) -> Result<Vec<Subgroup>> {
    let mut cyclics: Vec<Subgroup> = Vec::new();
    let mut seen_cyclic = HashMap::new();
    for x in ambient.elements() {
        let o = table.elt_order(x) as u64;
        if x == 0 || crate::arith::factorize(o).len() != 1 {
            continue;
        }
        let c = generate(table, &[x]);
        if seen_cyclic.insert(c.members.clone(), ()).is_none() {
            cyclics.push(c);
        }
    }
    let mut index: HashMap<FixedBitSet, ()> = HashMap::new();
    let trivial = Subgroup::trivial(table);
    index.insert(trivial.members.clone(), ());
    let mut all = vec![trivial];
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for k in &frontier {
            for c in &cyclics {
                if c.is_subgroup_of(k) {
                    continue;
                }
                let mut gens = k.gens_usize();
                gens.push(c.gens[0] as usize);
                let j = generate(table, &gens);
                if index.insert(j.members.clone(), ()).is_none() {
                    if index.len() > cap {
                        return Err(Error::CapExceeded { what: "subgroup", cap });
                    }
                    next.push(j);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.members.cmp(&b.members)));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Perm, PermGroup};

    fn table_of(g: &PermGroup) -> CayleyTable {
        CayleyTable::new(g, Exec::Sequential).unwrap()
    }

    fn regular_cyclic(n: usize) -> PermGroup {
        let c: Vec<u32> = (0..n as u32).collect();
        PermGroup::generate(n, vec![Perm::from_cycles(n, &[&c]).unwrap()], 1000).unwrap()
    }

    #[test]
    fn cyclic_six_has_four_subgroups() {
        let g = regular_cyclic(6);
        let t = table_of(&g);
        let subs = all_subgroups(&t, &Subgroup::whole(&t), 100, Exec::Sequential).unwrap();
        let orders: Vec<usize> = subs.iter().map(|s| s.order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn sym3_has_six_subgroups() {
        let g = PermGroup::symmetric(3);
        let t = table_of(&g);
        let subs = all_subgroups(&t, &Subgroup::whole(&t), 100, Exec::Sequential).unwrap();
        assert_eq!(subs.len(), 6);
    }

    #[test]
    fn sym4_matches_brute_force() {
        let g = PermGroup::symmetric(4);
        let t = table_of(&g);
        let whole = Subgroup::whole(&t);
        let a = cyclic_extension(&t, &whole, |_| true, 1000, Exec::Sequential).unwrap();
        let b = brute_force_subgroups(&t, &whole, 1000).unwrap();
        assert_eq!(a.len(), 30);
        let ka: Vec<_> = a.iter().map(|s| &s.members).collect();
        let kb: Vec<_> = b.iter().map(|s| &s.members).collect();
        assert_eq!(ka, kb);
    }

    #[test]
    fn sym5_needs_brute_force() {
        let g = PermGroup::symmetric(5);
        let t = table_of(&g);
        let whole = Subgroup::whole(&t);
        assert_eq!(derived_length(&t, &whole), None);
        let subs = all_subgroups(&t, &whole, 1000, Exec::Sequential).unwrap();
        assert_eq!(subs.len(), 156);
    }

    #[test]
    fn derived_lengths() {
        let t = table_of(&regular_cyclic(21));
        assert_eq!(derived_length(&t, &Subgroup::whole(&t)), Some(1));
        let t = table_of(&PermGroup::symmetric(3));
        assert_eq!(derived_length(&t, &Subgroup::whole(&t)), Some(2));
        let t = table_of(&PermGroup::symmetric(4));
        assert_eq!(derived_length(&t, &Subgroup::whole(&t)), Some(3));
    }

    #[test]
    fn order_filtered_extension() {
        let g = PermGroup::symmetric(4);
        let t = table_of(&g);
        let whole = Subgroup::whole(&t);
        let subs = cyclic_extension(&t, &whole, |o| 4 % o == 0, 1000, Exec::Sequential).unwrap();
        // 1 trivial, 9 of order 2, 7 of order 4
        assert_eq!(subs.len(), 17);
    }
}
