//! Pointed isomorphism search.
//!
//! For transitive groups `M`, `K` on the same points, isomorphisms of pairs
//! `(M, M_0) -> (K, K_0)` are exactly the conjugations by bijections `f` of
//! the points with `f(0) = 0` and `f M f^-1 = K`. Abstract isomorphisms are
//! the same thing for regular representations. The search assigns images to
//! a few generators of `M`, propagating `f` from point 0 and backtracking on
//! any inconsistency.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicUsize, Ordering};

use super::lattice::{self, generate, Subgroup};
use super::{CayleyTable, Perm, PermGroup};
use crate::error::{Error, Result};
use crate::exec::Exec;

const NONE: u32 = u32::MAX;

/// A group acting on points `0..degree()`, elements addressed by index.
pub trait Action: Sync {
    fn degree(&self) -> usize;
    fn size(&self) -> usize;
    fn act(&self, elem: usize, point: u32) -> u32;
    /// Isomorphism-invariant colour of an element (fixing point 0).
    fn colour(&self, elem: usize) -> u64;
    fn generators(&self) -> &[usize];
    /// Is the point map `map` the action of some element?
    fn contains_map(&self, map: &[u32]) -> bool;
    /// Use [`Action::generators`] as the search generators.
    fn plan_with_generators(&self) -> bool {
        false
    }
}

fn hash_of(v: impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

/// A permutation group acting on its points. Colours are the cycle type plus
/// the length of the cycle through 0.
pub struct PermAction<'a> {
    group: &'a PermGroup,
    gens: Vec<usize>,
    colours: Vec<u64>,
}

impl<'a> PermAction<'a> {
    pub fn new(group: &'a PermGroup) -> Self {
        let gens = group.generators().iter().filter_map(|g| group.index_of(g)).collect();
        let colours = group
            .elements()
            .iter()
            .map(|e| hash_of((e.cycle_type(), e.cycle_len_at(0))))
            .collect();
        PermAction { group, gens, colours }
    }
}

impl Action for PermAction<'_> {
    fn degree(&self) -> usize {
        self.group.degree()
    }
    fn size(&self) -> usize {
        self.group.order()
    }
    #[inline]
    fn act(&self, elem: usize, point: u32) -> u32 {
        self.group.elements()[elem].apply(point)
    }
    fn colour(&self, elem: usize) -> u64 {
        self.colours[elem]
    }
    fn generators(&self) -> &[usize] {
        &self.gens
    }
    fn contains_map(&self, map: &[u32]) -> bool {
        self.group.contains(&Perm::from_images_unchecked(map.to_vec()))
    }
}

/// Left-regular action of a subgroup of a tabled group on itself. Colours
/// are element order and centraliser order.
pub struct TableAction<'a> {
    table: &'a CayleyTable,
    elems: Vec<usize>,
    pos: Vec<u32>,
    gens: Vec<usize>,
    colours: Vec<u64>,
}

impl<'a> TableAction<'a> {
    pub fn new(table: &'a CayleyTable, sub: &Subgroup) -> Self {
        let elems: Vec<usize> = sub.elements().collect();
        let mut pos = vec![NONE; table.order()];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i as u32;
        }
        let colours: Vec<u64> = elems
            .iter()
            .map(|&e| hash_of((table.elt_order(e), lattice::centralizer_order(table, sub, e))))
            .collect();
        let gens = small_generators(table, sub, &elems, &colours)
            .into_iter()
            .map(|g| pos[g] as usize)
            .collect();
        TableAction {
            table,
            elems,
            pos,
            gens,
            colours,
        }
    }

    /// Table index of the element at position `i`.
    pub fn element(&self, i: usize) -> usize {
        self.elems[i]
    }

    pub fn position(&self, elem: usize) -> Option<usize> {
        let p = self.pos[elem];
        (p != NONE).then_some(p as usize)
    }
}

/// Generators drawn from small colour classes, two if a pair is found
/// cheaply. Returned as table indices.
fn small_generators(table: &CayleyTable, sub: &Subgroup, elems: &[usize], colours: &[u64]) -> Vec<usize> {
    const TRIES: usize = 8;
    if sub.order <= 1 {
        return Vec::new();
    }
    let mut classes: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, &c) in colours.iter().enumerate() {
        if elems[i] != 0 {
            classes.entry(c).or_default().push(elems[i]);
        }
    }
    let mut classes: Vec<Vec<usize>> = classes.into_values().collect();
    classes.sort_by_key(|c| (c.len(), std::cmp::Reverse(table.elt_order(c[0])), c[0]));
    let spread = |c: &[usize]| -> Vec<usize> {
        let step = (c.len() / TRIES).max(1);
        c.iter().step_by(step).take(TRIES).copied().collect()
    };
    if let Some(c) = classes.iter().find(|c| table.elt_order(c[0]) as usize == sub.order) {
        return vec![c[0]];
    }
    let mut pairs: Vec<(usize, usize)> = (0..classes.len()).flat_map(|i| (i..classes.len()).map(move |j| (i, j))).collect();
    pairs.sort_by_key(|&(i, j)| (classes[i].len() * classes[j].len(), i, j));
    let mut budget = 4096usize;
    for (i, j) in pairs {
        for x in spread(&classes[i]) {
            for y in spread(&classes[j]) {
                if budget == 0 {
                    break;
                }
                budget -= 1;
                if generate(table, &[x, y]).order == sub.order {
                    return vec![x, y];
                }
            }
        }
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut h = Subgroup::trivial(table);
    while h.order < sub.order {
        let mut best: Option<(usize, Subgroup)> = None;
        for c in &classes {
            for x in spread(c).into_iter().filter(|&x| !h.contains(x)) {
                let mut g = gens.clone();
                g.push(x);
                let k = generate(table, &g);
                if best.as_ref().is_none_or(|(_, b)| k.order > b.order) {
                    best = Some((x, k));
                }
            }
            if best.is_some() {
                break;
            }
        }
        let (x, k) = best.expect("elements outside a proper subgroup");
        gens.push(x);
        h = k;
    }
    gens
}

impl Action for TableAction<'_> {
    fn degree(&self) -> usize {
        self.elems.len()
    }
    fn size(&self) -> usize {
        self.elems.len()
    }
    #[inline]
    fn act(&self, elem: usize, point: u32) -> u32 {
        self.pos[self.table.mul(self.elems[elem], self.elems[point as usize])]
    }
    fn colour(&self, elem: usize) -> u64 {
        self.colours[elem]
    }
    fn generators(&self) -> &[usize] {
        &self.gens
    }
    fn plan_with_generators(&self) -> bool {
        true
    }
    fn contains_map(&self, map: &[u32]) -> bool {
        let e = map[0] as usize;
        (0..map.len()).all(|x| self.act(e, x as u32) == map[x])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    First,
    Count,
    All,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsoSearch {
    pub count: u64,
    /// Point maps found: the first one for [`Goal::First`], every one for
    /// [`Goal::All`].
    pub maps: Vec<Vec<u32>>,
}

struct Plan {
    gens: Vec<usize>,
    cands: Vec<Vec<usize>>,
    /// Generators of `M` not among `gens`, checked at the leaves.
    extra: Vec<usize>,
}

fn cycle_len_at_zero<A: Action>(a: &A, e: usize) -> usize {
    let mut x = a.act(e, 0);
    let mut k = 1;
    while x != 0 {
        x = a.act(e, x);
        k += 1;
    }
    k
}

fn make_plan<A: Action, B: Action>(m: &A, k: &B) -> Option<Plan> {
    let n = m.degree();
    if n != k.degree() || m.size() != k.size() {
        return None;
    }
    let mut by_colour: HashMap<u64, Vec<usize>> = HashMap::new();
    for e in 0..k.size() {
        by_colour.entry(k.colour(e)).or_default().push(e);
    }
    let mut m_hist: HashMap<u64, usize> = HashMap::new();
    for e in 0..m.size() {
        *m_hist.entry(m.colour(e)).or_default() += 1;
    }
    if m_hist.len() != by_colour.len() || m_hist.iter().any(|(c, &cnt)| by_colour.get(c).map(Vec::len) != Some(cnt)) {
        return None;
    }
    let ncands = |e: usize| by_colour[&m.colour(e)].len();
    let cyc: Vec<usize> = (0..m.size()).map(|e| cycle_len_at_zero(m, e)).collect();

    let mut reached = vec![false; n];
    reached[0] = true;
    let mut orbit = vec![0u32];
    let mut gens: Vec<usize> = Vec::new();
    if m.plan_with_generators() {
        gens = m.generators().to_vec();
        gens.sort_by_key(|&e| (ncands(e), std::cmp::Reverse(cyc[e]), e));
        extend_orbit(m, &gens, &mut reached, &mut orbit);
        if orbit.len() < n {
            gens.clear();
            reached.iter_mut().for_each(|r| *r = false);
            reached[0] = true;
            orbit.truncate(1);
        }
    }
    if n > 1 && gens.is_empty() {
        let first = (0..m.size())
            .filter(|&e| cyc[e] > 1)
            .min_by_key(|&e| (std::cmp::Reverse(cyc[e]), ncands(e), e))?;
        gens.push(first);
        extend_orbit(m, &gens, &mut reached, &mut orbit);
    }
    while orbit.len() < n {
        let enlarges = |e: usize| orbit.iter().any(|&x| !reached[m.act(e, x) as usize]);
        let next = (0..m.size())
            .filter(|&e| enlarges(e))
            .min_by_key(|&e| (ncands(e), std::cmp::Reverse(cyc[e]), e))?;
        gens.push(next);
        extend_orbit(m, &gens, &mut reached, &mut orbit);
    }
    let cands = gens.iter().map(|&g| by_colour[&m.colour(g)].clone()).collect();
    let extra = m.generators().iter().copied().filter(|g| !gens.contains(g)).collect();
    Some(Plan { gens, cands, extra })
}

fn extend_orbit<A: Action>(m: &A, gens: &[usize], reached: &mut [bool], orbit: &mut Vec<u32>) {
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for &g in gens {
            let y = m.act(g, x);
            if !reached[y as usize] {
                reached[y as usize] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
}

struct State {
    f: Vec<u32>,
    finv: Vec<u32>,
    imgs: Vec<usize>,
    reached: Vec<u32>,
}

struct Searcher<'a, A: Action, B: Action> {
    m: &'a A,
    k: &'a B,
    plan: Plan,
    goal: Goal,
    leaf: &'a (dyn Fn(&[u32]) -> bool + Sync),
}

impl<A: Action, B: Action> Searcher<'_, A, B> {
    fn new_state(&self) -> State {
        let n = self.m.degree();
        let mut f = vec![NONE; n];
        let mut finv = vec![NONE; n];
        f[0] = 0;
        finv[0] = 0;
        State {
            f,
            finv,
            imgs: Vec::new(),
            reached: vec![0],
        }
    }

    fn propagate(&self, s: &mut State, j: usize, mark: usize) -> bool {
        let mut i = 0;
        while i < s.reached.len() {
            let x = s.reached[i];
            let fx = s.f[x as usize];
            let lo = if i < mark { j } else { 0 };
            for t in lo..=j {
                let y = self.m.act(self.plan.gens[t], x) as usize;
                let z = self.k.act(s.imgs[t], fx);
                if s.f[y] == NONE {
                    if s.finv[z as usize] != NONE {
                        return false;
                    }
                    s.f[y] = z;
                    s.finv[z as usize] = y as u32;
                    s.reached.push(y as u32);
                } else if s.f[y] != z {
                    return false;
                }
            }
            i += 1;
        }
        true
    }

    fn try_image(&self, s: &mut State, j: usize, h: usize, out: &mut IsoSearch, stop: &dyn Fn() -> bool) {
        let g = self.plan.gens[j];
        let want = s.f[self.m.act(g, 0) as usize];
        if want != NONE && self.k.act(h, 0) != want {
            return;
        }
        let mark = s.reached.len();
        s.imgs.push(h);
        if self.propagate(s, j, mark) {
            self.dfs(s, j + 1, out, stop);
        }
        for &x in &s.reached[mark..] {
            let fx = s.f[x as usize];
            s.finv[fx as usize] = NONE;
            s.f[x as usize] = NONE;
        }
        s.reached.truncate(mark);
        s.imgs.pop();
    }

    fn dfs(&self, s: &mut State, j: usize, out: &mut IsoSearch, stop: &dyn Fn() -> bool) {
        if stop() || (self.goal == Goal::First && out.count > 0) {
            return;
        }
        if j == self.plan.gens.len() {
            if self.leaf_ok(s) {
                out.count += 1;
                if self.goal != Goal::Count {
                    out.maps.push(s.f.clone());
                }
            }
            return;
        }
        for &h in &self.plan.cands[j] {
            self.try_image(s, j, h, out, stop);
        }
    }

    fn leaf_ok(&self, s: &State) -> bool {
        let n = s.f.len();
        let mut map = vec![0u32; n];
        for &g in &self.plan.extra {
            for (y, slot) in map.iter_mut().enumerate() {
                *slot = s.f[self.m.act(g, s.finv[y]) as usize];
            }
            if !self.k.contains_map(&map) {
                return false;
            }
        }
        (self.leaf)(&s.f)
    }
}

/// Backtracking search for pointed isomorphisms `m -> k`. Both actions must
/// be transitive. `leaf` filters complete point maps.
pub fn search<A: Action, B: Action>(m: &A, k: &B, goal: Goal, leaf: &(dyn Fn(&[u32]) -> bool + Sync), exec: Exec) -> IsoSearch {
    let Some(plan) = make_plan(m, k) else {
        return IsoSearch::default();
    };
    let searcher = Searcher { m, k, plan, goal, leaf };
    if searcher.plan.gens.is_empty() {
        let mut out = IsoSearch::default();
        let s = searcher.new_state();
        searcher.dfs(&mut { s }, 0, &mut out, &|| false);
        return out;
    }
    let top: Vec<usize> = searcher.plan.cands[0].clone();
    let found_at = AtomicUsize::new(usize::MAX);
    let idx: Vec<usize> = (0..top.len()).collect();
    let parts: Vec<IsoSearch> = exec.map(&idx, |&i| {
        let mut out = IsoSearch::default();
        let mut s = searcher.new_state();
        let stop = || goal == Goal::First && found_at.load(Ordering::Relaxed) < i;
        searcher.try_image(&mut s, 0, top[i], &mut out, &stop);
        if goal == Goal::First && out.count > 0 {
            found_at.fetch_min(i, Ordering::Relaxed);
        }
        out
    });
    let mut out = IsoSearch::default();
    for p in parts {
        if goal == Goal::First && out.count > 0 {
            break;
        }
        out.count += p.count;
        out.maps.extend(p.maps);
    }
    if goal == Goal::First {
        out.count = out.count.min(1);
        out.maps.truncate(1);
    }
    out
}

/// A group with the stabiliser of point 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupPair {
    pub ambient: PermGroup,
    pub point_stabilizer: PermGroup,
}

impl SubgroupPair {
    pub fn new(ambient: PermGroup) -> Self {
        let point_stabilizer = ambient.point_stabilizer(0);
        SubgroupPair { ambient, point_stabilizer }
    }

    pub fn degree(&self) -> usize {
        self.ambient.degree()
    }

    pub fn order(&self) -> usize {
        self.ambient.order()
    }

    pub fn is_transitive(&self) -> bool {
        self.ambient.is_transitive()
    }
}

fn conjugate_by_map(f: &[u32], g: &Perm) -> Perm {
    let mut images = vec![0u32; f.len()];
    for x in 0..f.len() {
        images[f[x] as usize] = f[g.apply(x as u32) as usize];
    }
    Perm::from_images_unchecked(images)
}

/// An isomorphism of pairs `a -> b`, given by the images of the generators of
/// `a.ambient`; `None` if there is none.
pub fn pair_isomorphism(a: &SubgroupPair, b: &SubgroupPair, exec: Exec) -> Option<Vec<Perm>> {
    if a.order() != b.order() || a.point_stabilizer.order() != b.point_stabilizer.order() {
        return None;
    }
    if a.is_transitive() && b.is_transitive() && a.degree() == b.degree() {
        let (ma, mb) = (PermAction::new(&a.ambient), PermAction::new(&b.ambient));
        let res = search(&ma, &mb, Goal::First, &|_| true, exec);
        let f = res.maps.into_iter().next()?;
        return Some(a.ambient.generators().iter().map(|g| conjugate_by_map(&f, g)).collect());
    }
    // Table indices coincide with element indices of the whole group.
    let res = regular_pair_search(a, b, Goal::First, exec).ok()?;
    let f = res.maps.into_iter().next()?;
    Some(
        a.ambient
            .generators()
            .iter()
            .map(|g| b.ambient.elements()[f[a.ambient.index_of(g).unwrap()] as usize].clone())
            .collect(),
    )
}

struct Tabled {
    table: CayleyTable,
    whole: Subgroup,
}

impl Tabled {
    fn new(group: &PermGroup, exec: Exec) -> Result<Self> {
        let table = CayleyTable::new(group, exec)?;
        let whole = Subgroup::whole(&table);
        Ok(Tabled { table, whole })
    }
}

fn regular_pair_search(a: &SubgroupPair, b: &SubgroupPair, goal: Goal, exec: Exec) -> Result<IsoSearch> {
    let ta = Tabled::new(&a.ambient, exec)?;
    let tb = Tabled::new(&b.ambient, exec)?;
    let aa = TableAction::new(&ta.table, &ta.whole);
    let ab = TableAction::new(&tb.table, &tb.whole);
    let stab_a: Vec<usize> = a
        .point_stabilizer
        .generators()
        .iter()
        .map(|g| a.ambient.index_of(g).unwrap())
        .collect();
    let in_b: Vec<bool> = b.ambient.elements().iter().map(|e| b.point_stabilizer.contains(e)).collect();
    let leaf = |f: &[u32]| stab_a.iter().all(|&h| in_b[f[h] as usize]);
    Ok(search(&aa, &ab, goal, &leaf, exec))
}

/// Automorphisms of `a.ambient` preserving `a.point_stabilizer`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutPair {
    pub order: u64,
    /// Each automorphism as a permutation of the element indices of the
    /// ambient group.
    pub automorphisms: Vec<Perm>,
}

/// Order of the automorphism group of the pair.
pub fn aut_pair_order(a: &SubgroupPair, exec: Exec) -> Result<u64> {
    if a.is_transitive() {
        let m = PermAction::new(&a.ambient);
        Ok(search(&m, &m, Goal::Count, &|_| true, exec).count)
    } else {
        Ok(regular_pair_search(a, a, Goal::Count, exec)?.count)
    }
}

/// Same count computed on the regular representation of the ambient group
/// (abstract automorphisms mapping the stabiliser onto itself), independent
/// of the point action.
pub fn aut_pair_order_regular(a: &SubgroupPair, exec: Exec) -> Result<u64> {
    Ok(regular_pair_search(a, a, Goal::Count, exec)?.count)
}

pub fn aut_pair(a: &SubgroupPair, exec: Exec) -> Result<AutPair> {
    let g = &a.ambient;
    let automorphisms: Vec<Perm> = if a.is_transitive() {
        let m = PermAction::new(g);
        search(&m, &m, Goal::All, &|_| true, exec)
            .maps
            .iter()
            .map(|f| {
                let images = g
                    .elements()
                    .iter()
                    .map(|e| g.index_of(&conjugate_by_map(f, e)).expect("closed") as u32)
                    .collect();
                Perm::from_images_unchecked(images)
            })
            .collect()
    } else {
        let res = regular_pair_search(a, a, Goal::All, exec)?;
        res.maps.into_iter().map(Perm::from_images_unchecked).collect()
    };
    Ok(AutPair {
        order: automorphisms.len() as u64,
        automorphisms,
    })
}

/// Cheap isomorphism invariants of an abstract group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Invariants {
    pub order: usize,
    /// Sorted `(element order, count)` pairs.
    pub order_histogram: Vec<(u32, u32)>,
    pub center_order: usize,
    /// `None` for non-soluble groups.
    pub derived_length: Option<usize>,
}

pub fn invariants(table: &CayleyTable, sub: &Subgroup) -> Invariants {
    let mut hist: HashMap<u32, u32> = HashMap::new();
    for e in sub.elements() {
        *hist.entry(table.elt_order(e)).or_default() += 1;
    }
    let mut order_histogram: Vec<(u32, u32)> = hist.into_iter().collect();
    order_histogram.sort_unstable();
    Invariants {
        order: sub.order,
        order_histogram,
        center_order: lattice::center(table, sub).order,
        derived_length: lattice::derived_length(table, sub),
    }
}

/// Are two subgroups of (possibly different) tabled groups isomorphic as
/// abstract groups?
pub fn abstract_isomorphic_tabled(ta: &CayleyTable, a: &Subgroup, tb: &CayleyTable, b: &Subgroup, exec: Exec) -> bool {
    if invariants(ta, a) != invariants(tb, b) {
        return false;
    }
    let (aa, ab) = (TableAction::new(ta, a), TableAction::new(tb, b));
    search(&aa, &ab, Goal::First, &|_| true, exec).count > 0
}

pub fn abstract_isomorphic(a: &PermGroup, b: &PermGroup, exec: Exec) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    let ta = Tabled::new(a, exec)?;
    let tb = Tabled::new(b, exec)?;
    Ok(abstract_isomorphic_tabled(&ta.table, &ta.whole, &tb.table, &tb.whole, exec))
}

/// Order of the automorphism group of an abstract group.
pub fn automorphism_count(group: &PermGroup, exec: Exec) -> Result<u64> {
    if group.order() > crate::perm::MAX_TABLE_ORDER {
        return Err(Error::CapExceeded {
            what: "table order",
            cap: crate::perm::MAX_TABLE_ORDER,
        });
    }
    let t = Tabled::new(group, exec)?;
    let a = TableAction::new(&t.table, &t.whole);
    Ok(search(&a, &a, Goal::Count, &|_| true, exec).count)
}
