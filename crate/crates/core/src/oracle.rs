//! Brute-force check of the Hopf-Galois counting formula in small degree:
//! regular subgroups of the full symmetric group normalized by a transitive
//! group, compared with transitive subgroups of holomorphs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{Caps, Exec};
use crate::perm::{aut_pair_order, lattice, pair_isomorphism, CayleyTable, Perm, PermGroup, SubgroupPair};

/// Largest degree accepted by the oracle.
pub const ORACLE_MAX_DEGREE: usize = 7;

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > ORACLE_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: ORACLE_MAX_DEGREE,
        });
    }
    Ok(())
}

/// Name of a small abstract group.
pub fn type_name(g: &PermGroup) -> String {
    let n = g.order();
    let orders: Vec<u64> = g.elements().iter().map(Perm::order).collect();
    if orders.iter().any(|&o| o as usize == n) {
        return format!("C_{n}");
    }
    if g.is_abelian() {
        return match n {
            4 => "C_2 × C_2".to_string(),
            _ => format!("abelian of order {n}"),
        };
    }
    let half = (n / 2) as u64;
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    if n.is_multiple_of(2) && orders.contains(&half) && involutions >= n / 2 {
        return if n == 6 { "S_3".to_string() } else { format!("D_{{{n}}}") };
    }
    format!("non-abelian of order {n}")
}

/// Every regular subgroup of `Sym(n)`, generated from pairs of elements whose
/// order divides `n`. Sorted by element list.
pub fn regular_subgroups(n: usize, exec: Exec) -> Result<Vec<PermGroup>> {
    check_degree(n)?;
    let sym = PermGroup::symmetric(n);
    let pool: Vec<Perm> = sym
        .elements()
        .iter()
        .filter(|e| (n as u64).is_multiple_of(e.order()))
        .cloned()
        .collect();
    let found: Vec<BTreeSet<Vec<Perm>>> = exec.map_range(pool.len(), |i| {
        let mut out = BTreeSet::new();
        for b in &pool[i..] {
            if let Ok(g) = PermGroup::generate(n, vec![pool[i].clone(), b.clone()], n) {
                if g.order() == n && g.is_regular() {
                    out.insert(g.elements().to_vec());
                }
            }
        }
        out
    });
    let all: BTreeSet<Vec<Perm>> = found.into_iter().flatten().collect();
    Ok(all.into_iter().map(|els| PermGroup::from_elements(n, els)).collect())
}

fn normalizes(g: &PermGroup, nsub: &PermGroup) -> bool {
    g.generators()
        .iter()
        .all(|x| nsub.generators().iter().all(|y| nsub.contains(&x.conjugate(y))))
}

/// Abstract types of the regular subgroups of `Sym(n)`, one representative
/// each, in order of first appearance.
fn types_of(regular: &[PermGroup], exec: Exec) -> Result<Vec<(String, PermGroup)>> {
    let mut reps: Vec<(String, PermGroup)> = Vec::new();
    for g in regular {
        let mut known = false;
        for (_, r) in &reps {
            if crate::perm::abstract_isomorphic(g, r, exec)? {
                known = true;
                break;
            }
        }
        if !known {
            reps.push((type_name(g), g.clone()));
        }
    }
    Ok(reps)
}

/// Regular subgroups of `Sym(n)` normalized by `g`, each with its type name.
pub fn regular_subgroups_normalized(g: &SubgroupPair, exec: Exec) -> Result<Vec<(String, PermGroup)>> {
    let n = g.degree();
    check_degree(n)?;
    let regular = regular_subgroups(n, exec)?;
    let types = types_of(&regular, exec)?;
    let mut out = Vec::new();
    for nsub in regular.into_iter().filter(|r| normalizes(&g.ambient, r)) {
        let mut name = None;
        for (t, r) in &types {
            if crate::perm::abstract_isomorphic(&nsub, r, exec)? {
                name = Some(t.clone());
                break;
            }
        }
        out.push((name.expect("type list covers every regular subgroup"), nsub));
    }
    Ok(out)
}

/// `Hol(N)` realised as the normalizer of the regular group `N` in `Sym(n)`.
pub fn holomorph_of_regular(nsub: &PermGroup) -> PermGroup {
    PermGroup::symmetric(nsub.degree()).subgroup_where(|x| nsub.generators().iter().all(|y| nsub.contains(&x.conjugate(y))))
}

/// Transitive subgroups of a permutation group, as groups.
pub fn transitive_subgroups_of(group: &PermGroup, caps: Caps, exec: Exec) -> Result<Vec<PermGroup>> {
    let table = CayleyTable::new(group, exec)?;
    let whole = lattice::Subgroup::whole(&table);
    let subs = lattice::all_subgroups(&table, &whole, caps.subgroups, exec)?;
    Ok(subs
        .iter()
        .filter(|s| s.order % group.degree() == 0)
        .map(|s| PermGroup::from_elements(group.degree(), s.elements().map(|i| group.elements()[i].clone()).collect()))
        .filter(PermGroup::is_transitive)
        .collect())
}

/// `e(G, N)` from the holomorph side:
/// `|Aut(G, G')| * e'(G, N) / |Aut(N)|`.
pub fn formula_count(g: &SubgroupPair, nsub: &PermGroup, caps: Caps, exec: Exec) -> Result<u64> {
    let n = nsub.degree();
    if g.degree() != n {
        return Ok(0);
    }
    let hol = holomorph_of_regular(nsub);
    let aut_n = (hol.order() / n) as u64;
    let e_prime = transitive_subgroups_of(&hol, caps, exec)?
        .into_iter()
        .filter(|m| pair_isomorphism(&SubgroupPair::new(m.clone()), g, exec).is_some())
        .count() as u64;
    let aut = aut_pair_order(g, exec)?;
    let num = aut * e_prime;
    if !num.is_multiple_of(aut_n) {
        return Err(Error::NonIntegerCount {
            numerator: num,
            denominator: aut_n,
        });
    }
    Ok(num / aut_n)
}

/// Both counts of Hopf-Galois structures on `g`, per type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub degree: usize,
    pub label: String,
    pub order: usize,
    pub oracle: BTreeMap<String, u64>,
    pub formula: BTreeMap<String, u64>,
}

impl OracleResult {
    pub fn agrees(&self) -> bool {
        self.oracle == self.formula
    }
}

/// Compare the brute-force count with the formula for every type of order
/// `deg(g)`.
pub fn verify(g: &SubgroupPair, label: &str, caps: Caps, exec: Exec) -> Result<OracleResult> {
    let n = g.degree();
    check_degree(n)?;
    let regular = regular_subgroups(n, exec)?;
    let types = types_of(&regular, exec)?;
    let mut oracle: BTreeMap<String, u64> = types.iter().map(|(t, _)| (t.clone(), 0)).collect();
    for (t, _) in regular_subgroups_normalized(g, exec)? {
        *oracle.get_mut(&t).expect("known type") += 1;
    }
    let mut formula = BTreeMap::new();
    for (t, r) in &types {
        formula.insert(t.clone(), formula_count(g, r, caps, exec)?);
    }
    Ok(OracleResult {
        degree: n,
        label: label.to_string(),
        order: g.order(),
        oracle,
        formula,
    })
}

/// Oracle and formula counts for one type `nsub`.
pub fn verify_count_formula(g: &SubgroupPair, nsub: &PermGroup, caps: Caps, exec: Exec) -> Result<(bool, u64, u64)> {
    check_degree(g.degree())?;
    let mut oracle = 0u64;
    for (_, r) in regular_subgroups_normalized(g, exec)? {
        if crate::perm::abstract_isomorphic(&r, nsub, exec)? {
            oracle += 1;
        }
    }
    let formula = formula_count(g, nsub, caps, exec)?;
    Ok((oracle == formula, oracle, formula))
}

/// Transitive groups of degree `n` up to conjugacy in `Sym(n)`, sorted by
/// order.
pub fn transitive_groups(n: usize, caps: Caps, exec: Exec) -> Result<Vec<PermGroup>> {
    check_degree(n)?;
    let all = transitive_subgroups_of(&PermGroup::symmetric(n), caps, exec)?;
    let mut reps: Vec<PermGroup> = Vec::new();
    for g in all {
        let pg = SubgroupPair::new(g.clone());
        let known = reps
            .iter()
            .any(|r| r.order() == g.order() && pair_isomorphism(&pg, &SubgroupPair::new(r.clone()), Exec::Sequential).is_some());
        if !known {
            reps.push(g);
        }
    }
    reps.sort_by_key(PermGroup::order);
    Ok(reps)
}

/// Oracle results for every transitive group of each degree up to `max`.
pub fn corpus(max: usize, caps: Caps, exec: Exec) -> Result<Vec<OracleResult>> {
    let mut out = Vec::new();
    for n in 1..=max {
        for (i, g) in transitive_groups(n, caps, exec)?.into_iter().enumerate() {
            out.push(verify(&SubgroupPair::new(g), &format!("T{n}.{}", i + 1), caps, exec)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sqfree::{build_group, SquarefreeSpec};

    fn regular(spec: &SquarefreeSpec) -> SubgroupPair {
        SubgroupPair::new(build_group(spec).unwrap())
    }

    #[test]
    fn degree_cap() {
        let g = SubgroupPair::new(PermGroup::symmetric(8));
        assert!(matches!(
            regular_subgroups_normalized(&g, Exec::Sequential),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn regular_counts_in_sym() {
        // n!/|Hol(N)| regular copies of each N.
        let r4 = regular_subgroups(4, Exec::Sequential).unwrap();
        assert_eq!(r4.len(), 24 / 8 + 24 / 24);
        let r6 = regular_subgroups(6, Exec::Sequential).unwrap();
        assert_eq!(r6.len(), 720 / 12 + 720 / 36);
    }

    #[test]
    fn cyclic_six() {
        let g = regular(&SquarefreeSpec::cyclic(6).unwrap());
        let hits = regular_subgroups_normalized(&g, Exec::Sequential).unwrap();
        assert!(hits.iter().any(|(_, h)| h.elements() == g.ambient.elements()));
        for (_, h) in &hits {
            assert!(h.is_regular());
            assert!(normalizes(&g.ambient, h));
        }
        let res = verify(&g, "C6", Caps::default(), Exec::Sequential).unwrap();
        assert!(res.agrees(), "{res:?}");
        assert_eq!(res.oracle["C_6"], 1);
        assert_eq!(res.oracle["S_3"], 2);
    }

    #[test]
    fn symmetric_three() {
        let s3 = SquarefreeSpec::new(3, 2, 2).unwrap();
        let res = verify(&regular(&s3), "S3", Caps::default(), Exec::Sequential).unwrap();
        assert!(res.agrees(), "{res:?}");
        assert_eq!(res.oracle["S_3"], 2);
        assert_eq!(res.oracle["C_6"], 3);
        let natural = SubgroupPair::new(PermGroup::symmetric(3));
        let c3 = build_group(&SquarefreeSpec::cyclic(3).unwrap()).unwrap();
        assert_eq!(
            verify_count_formula(&natural, &c3, Caps::default(), Exec::Sequential).unwrap(),
            (true, 1, 1)
        );
    }

    #[test]
    fn small_transitive_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| transitive_groups(n, Caps::default(), Exec::Sequential).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 5, 16]);
    }
}
