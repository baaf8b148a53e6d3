//! Transitive subgroups of a holomorph, their classification as permutation
//! groups, and Hopf-Galois structure counts.

use std::collections::BTreeMap;
use std::collections::HashMap;

use serde::Serialize;

use crate::arith::is_squarefree;
use crate::error::{Error, Result};
use crate::exec::{Caps, Exec};
use crate::holomorph::{build_holomorph, LabeledHolomorph};
use crate::perm::iso::{self, abstract_isomorphic_tabled, Goal, PermAction};
use crate::perm::lattice::{self, Subgroup};
use crate::perm::{derived_length, CayleyTable, Perm, PermGroup, SubgroupPair};
use crate::sqfree::{enumerate_specs, hol_div_check, SquarefreeSpec};

/// Invariants of a transitive group with its point stabiliser; equal keys
/// are necessary for pair-isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoClassKey {
    pub order: usize,
    pub order_histogram: Vec<(u32, u32)>,
    pub center_order: usize,
    pub derived_length: Option<usize>,
    pub stabilizer_order: usize,
    /// Sorted `(element order, class size in the group)` over the stabiliser.
    pub stabilizer_fingerprint: Vec<(u32, usize)>,
    /// Sorted `(cycle type, cycle length at 0)` counts, hashed.
    pub pointed_cycle_types: Vec<(u64, u32)>,
}

/// A transitive subgroup `M ≤ Hol(N)` with the stabiliser `M'` of `1_N`.
#[derive(Debug, Clone)]
pub struct TransitivePair {
    pub subgroup: PermGroup,
    pub stabilizer: PermGroup,
    pub order: usize,
    pub class_key: IsoClassKey,
    pub aut_pair_order: u64,
    pub acg: bool,
    /// Element set inside the holomorph table.
    pub members: Subgroup,
}

impl TransitivePair {
    pub fn pair(&self) -> SubgroupPair {
        SubgroupPair {
            ambient: self.subgroup.clone(),
            point_stabilizer: self.stabilizer.clone(),
        }
    }

    pub fn derived_length(&self) -> Option<usize> {
        self.class_key.derived_length
    }
}

/// Holomorph together with its multiplication table.
pub struct TabledHolomorph {
    pub hol: LabeledHolomorph,
    pub table: CayleyTable,
}

impl TabledHolomorph {
    pub fn new(hol: LabeledHolomorph, exec: Exec) -> Result<Self> {
        let table = CayleyTable::new(&hol.group, exec)?;
        Ok(TabledHolomorph { hol, table })
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.hol.group.index_of(p)
    }

    /// Subgroup generated by holomorph elements.
    pub fn generate(&self, gens: &[Perm]) -> Result<Subgroup> {
        let idx: Vec<usize> = gens
            .iter()
            .map(|g| self.index_of(g).ok_or(Error::NotInHolomorph))
            .collect::<Result<_>>()?;
        Ok(lattice::generate(&self.table, &idx))
    }

    pub fn is_transitive(&self, sub: &Subgroup) -> bool {
        let elems = self.hol.group.elements();
        let n = self.hol.degree();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut orbit = vec![0u32];
        let mut i = 0;
        while i < orbit.len() {
            for &g in &sub.gens {
                let y = elems[g as usize].apply(orbit[i]);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.len() == n
    }

    pub fn perm_group(&self, sub: &Subgroup) -> PermGroup {
        let elems = self.hol.group.elements();
        PermGroup::from_parts(
            self.hol.degree(),
            sub.gens.iter().map(|&g| elems[g as usize].clone()).collect(),
            sub.elements().map(|i| elems[i].clone()).collect(),
        )
    }

    /// Full record for a transitive subgroup.
    pub fn transitive_pair(&self, sub: &Subgroup, caps: Caps) -> Result<TransitivePair> {
        let elems = self.hol.group.elements();
        let n = self.hol.degree();
        let subgroup = self.perm_group(sub);
        let stab_idx: Vec<usize> = sub.elements().filter(|&i| elems[i].fixes(0)).collect();
        let stabilizer = lattice::subgroup_from_elements(&self.table, &stab_idx);
        let stabilizer = self.perm_group(&stabilizer);
        let inv = iso::invariants(&self.table, sub);
        let mut fingerprint: Vec<(u32, usize)> = stab_idx
            .iter()
            .map(|&x| (self.table.elt_order(x), sub.order / lattice::centralizer_order(&self.table, sub, x)))
            .collect();
        fingerprint.sort_unstable();
        let mut pct: HashMap<u64, u32> = HashMap::new();
        let action = PermAction::new(&subgroup);
        for e in 0..subgroup.order() {
            *pct.entry(iso::Action::colour(&action, e)).or_default() += 1;
        }
        let mut pointed_cycle_types: Vec<(u64, u32)> = pct.into_iter().collect();
        pointed_cycle_types.sort_unstable();
        let class_key = IsoClassKey {
            order: sub.order,
            order_histogram: inv.order_histogram,
            center_order: inv.center_order,
            derived_length: inv.derived_length,
            stabilizer_order: stabilizer.order(),
            stabilizer_fingerprint: fingerprint,
            pointed_cycle_types,
        };
        let aut_pair_order = iso::search(&action, &action, Goal::Count, &|_| true, Exec::Sequential).count;
        let fixes0: Vec<bool> = elems.iter().map(|e| e.fixes(0)).collect();
        let acg = has_normal_complement(&self.table, sub, n, &fixes0, caps.subgroups)?;
        Ok(TransitivePair {
            order: sub.order,
            subgroup,
            stabilizer,
            class_key,
            aut_pair_order,
            acg,
            members: sub.clone(),
        })
    }
}

/// Does the stabiliser have a normal complement, i.e. is there a normal
/// regular subgroup?
pub fn has_normal_complement(table: &CayleyTable, m: &Subgroup, degree: usize, fixes0: &[bool], cap: usize) -> Result<bool> {
    let subs = lattice::cyclic_extension(table, m, |o| degree.is_multiple_of(o), cap, Exec::Sequential)?;
    Ok(subs
        .iter()
        .any(|c| c.order == degree && c.elements().all(|x| x == 0 || !fixes0[x]) && lattice::is_normal(table, m, c)))
}

/// Every transitive subgroup of the holomorph, in canonical order (by order,
/// then element set).
pub fn transitive_subgroups(th: &TabledHolomorph, caps: Caps, exec: Exec) -> Result<Vec<TransitivePair>> {
    let whole = Subgroup::whole(&th.table);
    let all = lattice::all_subgroups(&th.table, &whole, caps.subgroups, exec)?;
    let n = th.hol.degree();
    let transitive: Vec<Subgroup> = all.into_iter().filter(|s| s.order % n == 0 && th.is_transitive(s)).collect();
    exec.map(&transitive, |s| th.transitive_pair(s, caps)).into_iter().collect()
}

/// One pair-isomorphism class: indices into the enumerated list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Partition by pair-isomorphism: bucket by key, then confirm inside each
/// bucket by explicit search. Classes are ordered by representative.
pub fn classify(pairs: &[TransitivePair], exec: Exec) -> Vec<IsoClass> {
    let mut buckets: BTreeMap<&IsoClassKey, Vec<usize>> = BTreeMap::new();
    for (i, p) in pairs.iter().enumerate() {
        buckets.entry(&p.class_key).or_default().push(i);
    }
    let buckets: Vec<Vec<usize>> = buckets.into_values().collect();
    let split: Vec<Vec<IsoClass>> = exec.map(&buckets, |bucket| {
        let mut classes: Vec<IsoClass> = Vec::new();
        for &i in bucket {
            let a = PermAction::new(&pairs[i].subgroup);
            let home = classes.iter_mut().find(|c| {
                let b = PermAction::new(&pairs[c.representative].subgroup);
                iso::search(&a, &b, Goal::First, &|_| true, Exec::Sequential).count > 0
            });
            match home {
                Some(c) => c.members.push(i),
                None => classes.push(IsoClass {
                    representative: i,
                    members: vec![i],
                }),
            }
        }
        classes
    });
    let mut out: Vec<IsoClass> = split.into_iter().flatten().collect();
    out.sort_by_key(|c| c.representative);
    out
}

/// Hopf-Galois count for one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HgsCount {
    pub representative: usize,
    pub type_spec: SquarefreeSpec,
    pub e_prime: u64,
    pub aut_pair_order: u64,
    pub e: u64,
}

/// `e = |Aut(M, M')| e' / |Aut(N)|`, which must be an integer.
pub fn count_hgs(class: &IsoClass, pairs: &[TransitivePair], spec: &SquarefreeSpec, aut_n: u64) -> Result<HgsCount> {
    let rep = &pairs[class.representative];
    let e_prime = class.members.len() as u64;
    let numerator = rep.aut_pair_order * e_prime;
    if !numerator.is_multiple_of(aut_n) {
        return Err(Error::NonIntegerCount {
            numerator,
            denominator: aut_n,
        });
    }
    Ok(HgsCount {
        representative: class.representative,
        type_spec: *spec,
        e_prime,
        aut_pair_order: rep.aut_pair_order,
        e: numerator / aut_n,
    })
}

/// Result of enumerating and classifying one holomorph.
pub struct Enumeration {
    pub tabled: TabledHolomorph,
    pub pairs: Vec<TransitivePair>,
    pub classes: Vec<IsoClass>,
    pub counts: Vec<HgsCount>,
}

impl Enumeration {
    pub fn run(hol: LabeledHolomorph, caps: Caps, exec: Exec) -> Result<Self> {
        let tabled = TabledHolomorph::new(hol, exec)?;
        let pairs = transitive_subgroups(&tabled, caps, exec)?;
        let classes = classify(&pairs, exec);
        let aut_n = tabled.hol.aut.aut_order;
        let counts = classes
            .iter()
            .map(|c| count_hgs(c, &pairs, &tabled.hol.spec, aut_n))
            .collect::<Result<_>>()?;
        Ok(Enumeration {
            tabled,
            pairs,
            classes,
            counts,
        })
    }

    /// Pairs of classes whose representatives are isomorphic as abstract
    /// groups although not as permutation groups.
    pub fn abstract_collisions(&self, exec: Exec) -> Vec<(usize, usize)> {
        let t = &self.tabled.table;
        let reps: Vec<&TransitivePair> = self.classes.iter().map(|c| &self.pairs[c.representative]).collect();
        let mut todo = Vec::new();
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                let (a, b) = (&reps[i].class_key, &reps[j].class_key);
                if (a.order, &a.order_histogram, a.center_order, a.derived_length)
                    == (b.order, &b.order_histogram, b.center_order, b.derived_length)
                {
                    todo.push((i, j));
                }
            }
        }
        exec.map(&todo, |&(i, j)| {
            abstract_isomorphic_tabled(t, &reps[i].members, t, &reps[j].members, Exec::Sequential).then_some((i, j))
        })
        .into_iter()
        .flatten()
        .collect()
    }
}

/// The witness group of derived length 2 that no Hopf-Galois structure of
/// degree `n` realises.
#[derive(Debug, Clone)]
pub struct WreathWitness {
    pub n: u64,
    /// Largest prime of `n`.
    pub p: u64,
    pub m: u64,
    pub group: PermGroup,
    pub derived_length: Option<usize>,
    pub transitive: bool,
    /// `|Hol(N)|` for every group `N` of order `n`.
    pub hol_orders: Vec<u64>,
    /// Does the cube of `p` divide `|G|`?
    pub p_cubed_divides: bool,
}

impl WreathWitness {
    /// `|G|` divides no holomorph order, so `G` embeds in no `Hol(N)`.
    pub fn certified(&self) -> bool {
        self.transitive && self.derived_length == Some(2) && self.hol_orders.iter().all(|h| h % self.group.order() as u64 != 0)
    }
}

/// `C_a ≀ C_b` acting on `C_a × C_b`, point `(x, y)` numbered `y*a + x`.
fn wreath(a: u64, b: u64, cap: usize) -> Result<PermGroup> {
    let deg = (a * b) as usize;
    let pt = |x: u64, y: u64| ((y % b) * a + x % a) as u32;
    let mut base = vec![0u32; deg];
    let mut shift = vec![0u32; deg];
    for y in 0..b {
        for x in 0..a {
            base[pt(x, y) as usize] = if y == 0 { pt(x + 1, y) } else { pt(x, y) };
            shift[pt(x, y) as usize] = pt(x, y + 1);
        }
    }
    PermGroup::generate(deg, vec![Perm::from_images(base)?, Perm::from_images(shift)?], cap)
}

pub fn wreath_counterexample(n: u64, cap: usize) -> Result<WreathWitness> {
    let primes = crate::arith::prime_factors(n);
    if n <= 6 || !is_squarefree(n) || primes.len() < 2 {
        return Err(Error::BadDegree(n));
    }
    let p = *primes.last().unwrap();
    let m = n / p;
    let group = if m >= 3 { wreath(p, m, cap)? } else { wreath(m, p, cap)? };
    let hol_orders = enumerate_specs(n)?.iter().map(|s| hol_div_check(s).0).collect();
    let order = group.order() as u64;
    Ok(WreathWitness {
        n,
        p,
        m,
        derived_length: derived_length(&group, cap)?,
        transitive: group.is_transitive(),
        p_cubed_divides: order.is_multiple_of(p * p * p),
        hol_orders,
        group,
    })
}

/// Can a transitive group of squarefree degree be realised by a
/// Hopf-Galois structure?
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Not excluded, but the exact test was beyond the caps.
    Maybe,
    /// Realised, by these types.
    Yes { types: Vec<SquarefreeSpec> },
    /// Derived length above 4 (`None`: not soluble).
    NoDerivedLength { derived_length: Option<usize> },
    /// `|G|` divides no holomorph order.
    NoOrder,
    /// Embeds as a transitive subgroup of no holomorph.
    NoEmbedding,
}

pub fn realizability_filter(g: &SubgroupPair, caps: Caps, exec: Exec) -> Result<Verdict> {
    let n = g.degree() as u64;
    if !is_squarefree(n) {
        return Err(Error::NotSquarefree(n));
    }
    let dl = derived_length(&g.ambient, caps.elements)?;
    if dl.is_none_or(|l| l > 4) {
        return Ok(Verdict::NoDerivedLength { derived_length: dl });
    }
    let order = g.order() as u64;
    let specs: Vec<SquarefreeSpec> = enumerate_specs(n)?
        .into_iter()
        .filter(|s| hol_div_check(s).0.is_multiple_of(order))
        .collect();
    if specs.is_empty() {
        return Ok(Verdict::NoOrder);
    }
    let mut types = Vec::new();
    for spec in specs {
        let hol = match build_holomorph(&spec, caps.elements) {
            Ok(h) if h.order() <= crate::perm::MAX_TABLE_ORDER => h,
            Ok(_) | Err(Error::CapExceeded { .. }) => return Ok(Verdict::Maybe),
            Err(e) => return Err(e),
        };
        let th = TabledHolomorph::new(hol, exec)?;
        let whole = Subgroup::whole(&th.table);
        let subs = match lattice::all_subgroups(&th.table, &whole, caps.subgroups, exec) {
            Ok(s) => s,
            Err(Error::CapExceeded { .. }) => return Ok(Verdict::Maybe),
            Err(e) => return Err(e),
        };
        let candidates: Vec<&Subgroup> = subs.iter().filter(|s| s.order == g.order() && th.is_transitive(s)).collect();
        let target = PermAction::new(&g.ambient);
        let found = exec
            .map(&candidates, |s| {
                let m = th.perm_group(s);
                let a = PermAction::new(&m);
                iso::search(&target, &a, Goal::First, &|_| true, Exec::Sequential).count > 0
            })
            .into_iter()
            .any(|b| b);
        if found {
            types.push(spec);
        }
    }
    Ok(if types.is_empty() {
        Verdict::NoEmbedding
    } else {
        Verdict::Yes { types }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holomorph::{pq_holomorph, PqType};
    use crate::sqfree::sophie_germain_params;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn cyclic_q3_counts() {
        let sg = sophie_germain_params(3).unwrap();
        let hol = pq_holomorph(&sg, PqType::Cyclic, caps().elements).unwrap();
        let en = Enumeration::run(hol, caps(), Exec::Parallel).unwrap();
        assert_eq!(en.pairs.len(), 14);
        assert_eq!(en.classes.len(), 12);
        let mut es: Vec<u64> = en.counts.iter().map(|c| c.e).collect();
        es.sort_unstable();
        assert_eq!(es, [vec![1; 11], vec![7]].concat());
        assert!(en.pairs.iter().all(|p| p.acg));
        assert!(en.abstract_collisions(Exec::Parallel).is_empty());
    }

    #[test]
    fn wreath_21() {
        let w = wreath_counterexample(21, caps().elements).unwrap();
        assert_eq!(w.group.order(), 1029);
        assert!(w.certified());
        assert!(w.p_cubed_divides);
        let w = wreath_counterexample(10, caps().elements).unwrap();
        assert_eq!(w.group.order(), 160);
        assert!(w.certified());
        assert_eq!(wreath_counterexample(6, 100).unwrap_err(), Error::BadDegree(6));
    }

    #[test]
    fn realizability() {
        let s5 = SubgroupPair::new(PermGroup::symmetric(5));
        assert_eq!(
            realizability_filter(&s5, caps(), Exec::Parallel).unwrap(),
            Verdict::NoDerivedLength { derived_length: None }
        );
        let w = wreath_counterexample(21, caps().elements).unwrap();
        assert_eq!(
            realizability_filter(&SubgroupPair::new(w.group), caps(), Exec::Parallel).unwrap(),
            Verdict::NoOrder
        );
        let c21 = crate::sqfree::build_group(&SquarefreeSpec::cyclic(21).unwrap()).unwrap();
        match realizability_filter(&SubgroupPair::new(c21), caps(), Exec::Parallel).unwrap() {
            Verdict::Yes { types } => assert!(types.contains(&SquarefreeSpec::cyclic(21).unwrap())),
            v => panic!("unexpected {v:?}"),
        }
    }
}
