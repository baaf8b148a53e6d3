use std::collections::{HashSet, VecDeque};

use super::Perm;
use crate::error::{Error, Result};

/// Smallest subset of `Sym(degree)` closed under composition that contains
/// `generators` and the identity, in canonical (lexicographic) order.
pub fn closure(degree: usize, generators: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    let gens: Vec<&Perm> = generators.iter().filter(|g| !g.is_identity()).collect();
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = g.compose(&x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded { what: "element", cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// A finite permutation group with all elements materialised.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        let elements = closure(degree, &generators, cap)?;
        Ok(PermGroup {
            degree,
            generators,
            elements,
        })
    }

    /// Wrap a set already known to be a group; a small generating set is
    /// computed greedily.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let generators = greedy_generators(degree, &elements);
        PermGroup {
            degree,
            generators,
            elements,
        }
    }

    pub(crate) fn from_parts(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> Self {
        elements.sort_unstable();
        PermGroup {
            degree,
            generators,
            elements,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: vec![Perm::identity(degree)],
        }
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Perm::from_cycles(degree, &[&[0, 1]]).unwrap());
        }
        if degree >= 3 {
            let cycle: Vec<u32> = (0..degree as u32).collect();
            gens.push(Perm::from_cycles(degree, &[&cycle]).unwrap());
        }
        PermGroup::generate(degree, gens, usize::MAX).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn identity(&self) -> &Perm {
        &self.elements[0]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index_of(p).is_some()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| self.generators.iter().all(|b| a * b == b * a))
    }

    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            let y = out[i];
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    out.push(z);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Transitive with trivial point stabilisers.
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree
    }

    pub fn point_stabilizer(&self, x: u32) -> PermGroup {
        let elements: Vec<Perm> = self.elements.iter().filter(|g| g.fixes(x)).cloned().collect();
        PermGroup::from_elements(self.degree, elements)
    }

    /// Orbit of `x` and its stabiliser; `|orbit| * |stab| = |G|`.
    pub fn orbit_stabilizer(&self, x: u32) -> (Vec<u32>, PermGroup) {
        (self.orbit(x), self.point_stabilizer(x))
    }

    /// Subgroup of elements satisfying `pred`, which must define a subgroup.
    pub fn subgroup_where(&self, pred: impl Fn(&Perm) -> bool) -> PermGroup {
        let elements: Vec<Perm> = self.elements.iter().filter(|g| pred(g)).cloned().collect();
        PermGroup::from_elements(self.degree, elements)
    }

    pub fn subgroup_generated(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        PermGroup::generate(self.degree, gens, self.order().max(1))
    }
}

/// Greedy generating set: walk the elements in order and keep any that is not
/// already in the span of those kept.
pub(crate) fn greedy_generators(degree: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut span: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
    let target = elements.len();
    // Prefer elements of large order: they shorten the list.
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(elements[i].order()));
    for i in order {
        if span.len() == target {
            break;
        }
        let e = &elements[i];
        if span.contains(e) {
            continue;
        }
        gens.push(e.clone());
        let all = closure(degree, &gens, usize::MAX).expect("uncapped closure");
        span = all.into_iter().collect();
    }
    gens
}
