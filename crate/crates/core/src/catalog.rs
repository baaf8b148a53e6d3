//! Closed-form tables of transitive subgroups and Hopf-Galois counts for
//! degree `pq` with `p = 2q + 1`, and their cross-check against enumeration.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::arith::{crt, sigma0};
use crate::error::Result;
use crate::exec::{Caps, Exec};
use crate::holomorph::{MatrixModel, PqType, RWord};
use crate::perm::iso::{self, Goal, PermAction};
use crate::perm::Perm;
use crate::sqfree::SophieGermain;
use crate::structure::{unit_of_order, StructureSpec};
use crate::transitive::{Enumeration, TabledHolomorph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Hgs {
    pub cyclic: u64,
    pub nonabelian: u64,
}

/// Which explicit family a row describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RowKind {
    #[default]
    Other,
    Cyclic(char),
    McP2Q2,
    McHol,
    McP2Q,
    McP2QB,
    McPQ2,
    Mc2PQ2,
    McPQNonabelian,
    McPQCyclic,
    Mc2PQSemidirect,
    Mc2PQDihedral,
    /// Table 6 row, matched against the cyclic row with this key and
    /// parameters.
    Both(char, u64, u64),
}

/// One isomorphism class of transitive subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogRow {
    pub table: TableId,
    pub key: String,
    pub params: BTreeMap<String, u64>,
    pub order_formula: String,
    pub order: u64,
    pub structure: String,
    pub num_groups: u64,
    pub aut_pair_order: u64,
    pub hgs: Hgs,
    pub acg: bool,
    pub kind: RowKind,
}

impl CatalogRow {
    /// Human-readable row identifier.
    pub fn id(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut id = format!("{:?} {} {}", self.table, self.key, self.structure);
        if !params.is_empty() {
            id.push_str(&format!(" [{}]", params.join(", ")));
        }
        id
    }
}

fn params(kv: &[(&str, u64)]) -> BTreeMap<String, u64> {
    kv.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn cq_part(m: u64) -> String {
    match m {
        1 => "C_q".into(),
        2 => "D_{2q}".into(),
        _ => "(C_q ⋊ C_{2^c d})".into(),
    }
}

/// Rows (A)-(H) of the cyclic case, one per isomorphism class.
pub fn cyclic_catalog(sg: &SophieGermain) -> Vec<CatalogRow> {
    let (p, q, r, s) = (sg.p, sg.q, sg.r as u64, sg.s);
    let aut_n = (p - 1) * (q - 1);
    let both = both_types(sg);
    let nonab = |kind: RowKind| both.iter().find(|b| b.kind == kind).map_or(0, |b| b.hgs.nonabelian);
    let mut rows = Vec::new();
    let divisors = crate::arith::divisors(s);
    let keys: [(char, u64, u64, &str); 6] = [
        ('A', 0, 1, "2^(c+1) d p q^2"),
        ('B', 0, 0, "2^c d p q^2"),
        ('C', 1, 0, "2^c d p q^2"),
        ('D', 0, 1, "2^(c+1) d p q"),
        ('E', 0, 0, "2^c d p q"),
        ('F', 1, 0, "2^c d p q"),
    ];
    for (key, c_min, extra_two, formula) in keys {
        for c in c_min..=r {
            for &d in &divisors {
                let m = (1u64 << c) * d;
                let big_q = if matches!(key, 'A' | 'B' | 'C') { q * q } else { q };
                let order = (1u64 << (c + extra_two)) * d * p * big_q;
                let special = match (c, d) {
                    (0, 1) => 1,
                    (1, 1) => 2,
                    _ => m,
                };
                let structure = match key {
                    'A' => format!("(C_p ⋊ C_{{2q}}) × {}", cq_part(special)),
                    'B' => format!("(C_p ⋊ C_q) × {}", cq_part(special)),
                    'C' => "C_{pq} ⋊ C_{2^c d q}".to_string(),
                    'D' => format!("D_{{2p}} × {}", cq_part(special)),
                    'E' if special == 1 => "C_{pq}".to_string(),
                    'E' => format!("C_p × {}", cq_part(special)),
                    _ if special == 2 => "D_{2pq}".to_string(),
                    _ => "C_{pq} ⋊ C_{2^c d}".to_string(),
                };
                let kind = RowKind::Cyclic(key);
                rows.push(CatalogRow {
                    table: TableId::T3,
                    key: format!("({key})"),
                    params: params(&[("c", c), ("d", d)]),
                    order_formula: formula.to_string(),
                    order,
                    structure,
                    num_groups: 1,
                    aut_pair_order: aut_n,
                    hgs: Hgs {
                        cyclic: 1,
                        nonabelian: nonab(RowKind::Both(key, c, d)),
                    },
                    acg: true,
                    kind,
                });
            }
        }
    }
    for (key, order, formula, structure, aut) in [
        ('G', 2 * p * q, "2pq", "C_p ⋊ C_{2q}", p - 1),
        ('H', p * q, "pq", "C_p ⋊ C_q", p * (p - 1)),
    ] {
        rows.push(CatalogRow {
            table: TableId::T3,
            key: format!("({key})"),
            params: BTreeMap::new(),
            order_formula: formula.to_string(),
            order,
            structure: structure.to_string(),
            num_groups: q - 1,
            aut_pair_order: aut,
            hgs: Hgs {
                cyclic: aut * (q - 1) / aut_n,
                nonabelian: nonab(RowKind::Both(key, 0, 0)),
            },
            acg: true,
            kind: RowKind::Cyclic(key),
        });
    }
    rows
}

/// Rows of the non-abelian case, one per isomorphism class, with the
/// `M_u` families split by `u`.
pub fn metacyclic_catalog(sg: &SophieGermain) -> Vec<CatalogRow> {
    let (p, q) = (sg.p, sg.q);
    let aut_n = p * (p - 1);
    let mut rows = Vec::new();
    let mut push =
        |key: &str, formula_order: u64, structure: String, pr: &[(&str, u64)], num: u64, aut: u64, cyc: u64, acg: bool, kind: RowKind| {
            rows.push(CatalogRow {
                table: TableId::T5,
                key: key.to_string(),
                params: params(pr),
                order_formula: key.to_string(),
                order: formula_order,
                structure,
                num_groups: num,
                aut_pair_order: aut,
                hgs: Hgs {
                    cyclic: cyc,
                    nonabelian: aut * num / aut_n,
                },
                acg,
                kind,
            });
        };
    let half = (q - 1) / 2;
    push(
        "p^2q^2",
        p * p * q * q,
        "F_p^2 ⋊ (C_q × C_q)".into(),
        &[],
        1,
        2 * p * (p - 1),
        0,
        true,
        RowKind::McP2Q2,
    );
    push(
        "2p^2q^2",
        2 * p * p * q * q,
        "Hol(N)".into(),
        &[],
        1,
        2 * p * (p - 1),
        0,
        true,
        RowKind::McHol,
    );
    push(
        "p^2q",
        p * p * q,
        "C_p × (C_p ⋊ C_q)".into(),
        &[("u", 0)],
        2,
        p * (p - 1),
        0,
        true,
        RowKind::McP2Q,
    );
    for u in 1..half {
        push(
            "p^2q",
            p * p * q,
            "F_p^2 ⋊_u C_q".into(),
            &[("u", u)],
            2,
            p * p * (p - 1),
            0,
            false,
            RowKind::McP2Q,
        );
    }
    push(
        "p^2q",
        p * p * q,
        "F_p^2 ⋊_u C_q".into(),
        &[("u", half)],
        1,
        2 * p * p * (p - 1),
        0,
        false,
        RowKind::McP2Q,
    );
    push(
        "2p^2q",
        2 * p * p * q,
        "(C_p × (C_p ⋊ C_q)) ⋊ C_2".into(),
        &[("u", 0)],
        2,
        p * (p - 1),
        0,
        true,
        RowKind::McP2QB,
    );
    for u in 1..half {
        push(
            "2p^2q",
            2 * p * p * q,
            "F_p^2 ⋊_u C_{2q}".into(),
            &[("u", u)],
            2,
            p * (p - 1),
            0,
            false,
            RowKind::McP2QB,
        );
    }
    push(
        "2p^2q",
        2 * p * p * q,
        "F_p^2 ⋊_u C_{2q}".into(),
        &[("u", half)],
        1,
        2 * p * (p - 1),
        0,
        false,
        RowKind::McP2QB,
    );
    let cq = (p - 1) * (q - 1);
    push(
        "pq^2",
        p * q * q,
        "C_q × (C_p ⋊ C_q)".into(),
        &[],
        2 * p,
        cq,
        1,
        true,
        RowKind::McPQ2,
    );
    push(
        "2pq^2",
        2 * p * q * q,
        "C_q × (C_p ⋊ C_{2q})".into(),
        &[],
        2 * p,
        cq,
        1,
        true,
        RowKind::Mc2PQ2,
    );
    push(
        "pq",
        p * q,
        "C_p ⋊ C_q".into(),
        &[],
        2 * p * (q - 2) + 2,
        p * (p - 1),
        p,
        true,
        RowKind::McPQNonabelian,
    );
    push("pq", p * q, "C_{pq}".into(), &[], 2 * p, cq, 1, true, RowKind::McPQCyclic);
    push(
        "2pq",
        2 * p * q,
        "C_p ⋊ C_{2q}".into(),
        &[],
        2 * p * (q - 1),
        p - 1,
        1,
        true,
        RowKind::Mc2PQSemidirect,
    );
    push(
        "2pq",
        2 * p * q,
        "D_{2p} × C_q".into(),
        &[],
        2 * p,
        cq,
        1,
        true,
        RowKind::Mc2PQDihedral,
    );
    rows
}

/// The six permutation groups realised by both types.
pub fn both_types(sg: &SophieGermain) -> Vec<CatalogRow> {
    let (p, q) = (sg.p, sg.q);
    let cq = (p - 1) * (q - 1);
    let two = 2 * (q - 1);
    let spec: [(&str, u64, &str, u64, u64, u64, RowKind); 6] = [
        (
            "2pq^2",
            2 * p * q * q,
            "C_q × (C_p ⋊ C_{2q})",
            1 + 2 * p,
            cq,
            two,
            RowKind::Both('A', 0, 1),
        ),
        ("pq^2", p * q * q, "C_q × (C_p ⋊ C_q)", 1 + 2 * p, cq, two, RowKind::Both('B', 0, 1)),
        (
            "2pq",
            2 * p * q,
            "C_p ⋊ C_{2q}",
            (q - 1) + 2 * p * (q - 1),
            p - 1,
            two,
            RowKind::Both('G', 0, 0),
        ),
        ("2pq", 2 * p * q, "D_{2p} × C_q", 1 + 2 * p, cq, two, RowKind::Both('D', 0, 1)),
        (
            "pq",
            p * q,
            "C_p ⋊ C_q",
            (q - 1) + 2 * p * (q - 2) + 2,
            p * (p - 1),
            2 * p * (q - 2) + 2,
            RowKind::Both('H', 0, 0),
        ),
        ("pq", p * q, "C_{pq}", 1 + 2 * p, cq, two, RowKind::Both('E', 0, 1)),
    ];
    spec.into_iter()
        .map(|(key, order, structure, num, aut, nonab, kind)| CatalogRow {
            table: TableId::T6,
            key: key.to_string(),
            params: BTreeMap::new(),
            order_formula: key.to_string(),
            order,
            structure: structure.to_string(),
            num_groups: num,
            aut_pair_order: aut,
            hgs: Hgs {
                cyclic: if matches!(kind, RowKind::Both('H', _, _)) { p } else { 1 },
                nonabelian: nonab,
            },
            acg: true,
            kind,
        })
        .collect()
}

pub fn catalog(sg: &SophieGermain, ty: PqType) -> Vec<CatalogRow> {
    match ty {
        PqType::Cyclic => cyclic_catalog(sg),
        PqType::Metacyclic => metacyclic_catalog(sg),
    }
}

/// A symbolic generator of a catalog subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gen {
    /// Product of powers of named holomorph elements.
    Word(Vec<(&'static str, i64)>),
    /// `[v, U]` in the matrix model.
    Affine([u64; 2], RWord),
}

impl Gen {
    pub fn to_perm(&self, th: &TabledHolomorph, mm: &MatrixModel) -> Perm {
        match self {
            Gen::Word(w) => w.iter().fold(Perm::identity(th.hol.degree()), |acc, (name, k)| {
                &acc * &th.hol.label(name).unwrap_or_else(|| panic!("unknown label {name}")).pow(*k)
            }),
            Gen::Affine(v, u) => mm.embed(&th.hol, *v, *u),
        }
    }
}

/// Alternative generator lists printed for the same family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reading {
    /// As stated in the propositions.
    Proposition,
    /// As listed in the summary table.
    Table,
    /// Consistent with the derivation (generator of order 2 paired with the
    /// basis vector not in the group).
    Derived,
}

/// Explicit member generator lists of a row.
pub fn members(row: &CatalogRow, sg: &SophieGermain) -> Vec<Vec<Gen>> {
    members_with(row, sg, Reading::Derived)
}

pub fn members_with(row: &CatalogRow, sg: &SophieGermain, reading: Reading) -> Vec<Vec<Gen>> {
    let (p, q, r, s) = (sg.p, sg.q, sg.r as u64, sg.s);
    let mm = MatrixModel::new(sg);
    let par = |k: &str| row.params.get(k).copied().unwrap_or(0);
    let w = |parts: &[(&'static str, i64)]| Gen::Word(parts.to_vec());
    let aff = |v1: u64, v2: u64, t: i64, a: i64, b: i64| Gen::Affine([v1 % p, v2 % p], mm.word(t, a, b));
    let e1 = aff(1, 0, 0, 0, 0);
    let e2 = aff(0, 1, 0, 0, 0);
    let qi = q as i64;
    match row.kind {
        RowKind::Cyclic(key) => {
            let (c, d) = (par("c"), par("d"));
            let gamma = 1i64 << (r - c.min(r));
            let delta = s.checked_div(d).unwrap_or(0) as i64;
            let base = vec![w(&[("sigma", 1)]), w(&[("tau", 1)])];
            let with = |extra: Vec<Gen>| vec![[base.clone(), extra].concat()];
            match key {
                'A' => with(vec![
                    w(&[("alpha", 1)]),
                    w(&[("beta", 1)]),
                    w(&[("gamma", gamma)]),
                    w(&[("delta", delta)]),
                ]),
                'B' => with(vec![w(&[("alpha", 1)]), w(&[("gamma", gamma)]), w(&[("delta", delta)])]),
                'C' => with(vec![
                    w(&[("alpha", 1)]),
                    w(&[("beta", 1), ("gamma", gamma)]),
                    w(&[("delta", delta)]),
                ]),
                'D' => with(vec![w(&[("beta", 1)]), w(&[("gamma", gamma)]), w(&[("delta", delta)])]),
                'E' => with(vec![w(&[("gamma", gamma)]), w(&[("delta", delta)])]),
                'F' => with(vec![w(&[("beta", 1), ("gamma", gamma)]), w(&[("delta", delta)])]),
                'G' => (1..qi)
                    .map(|t| vec![w(&[("sigma", 1)]), w(&[("tau", 1), ("alpha", t)]), w(&[("beta", 1)])])
                    .collect(),
                _ => (1..qi).map(|t| vec![w(&[("sigma", 1)]), w(&[("tau", 1), ("alpha", t)])]).collect(),
            }
        }
        RowKind::McP2Q2 => vec![vec![e1.clone(), e2.clone(), aff(0, 0, 1, 0, 0), aff(0, 0, 0, 1, 0)]],
        RowKind::McHol => vec![vec![
            e1.clone(),
            e2.clone(),
            aff(0, 0, 1, 0, 0),
            aff(0, 0, 0, 1, 0),
            aff(0, 0, 0, 0, 1),
        ]],
        RowKind::McP2Q | RowKind::McP2QB => {
            let u = par("u") as i64;
            let mut us = vec![u];
            if qi - 1 - u != u {
                us.push(qi - 1 - u);
            }
            us.iter()
                .map(|&u| {
                    let mut g = vec![e1.clone(), e2.clone(), aff(0, 0, 1, u, 0)];
                    if row.kind == RowKind::McP2QB {
                        g.push(aff(0, 0, 0, 0, 1));
                    }
                    g
                })
                .collect()
        }
        RowKind::McPQ2 | RowKind::Mc2PQ2 => {
            let even = row.kind == RowKind::Mc2PQ2;
            let mut out = Vec::new();
            for mu in 0..p {
                let nu = mm.two_over_one_minus_g_pow(1) * mu % p;
                let mut g = vec![e1.clone(), aff(0, 0, 1, 0, 0), aff(0, mu, 0, 1, 0)];
                if even {
                    g.push(aff(0, nu, 0, 0, 1));
                }
                out.push(g);
            }
            for mu in 0..p {
                let nu = mm.two_over_one_minus_g_pow(1) * mu % p;
                let mut g = vec![e2.clone(), aff(mu, 0, 1, 0, 0), aff(mu, 0, 0, 1, 0)];
                if even {
                    g.push(aff(nu, 0, 0, 0, 1));
                }
                out.push(g);
            }
            out
        }
        RowKind::McPQNonabelian => {
            let mut out = Vec::new();
            for u in 1..qi - 1 {
                for l in 0..p {
                    out.push(vec![e1.clone(), aff(0, l, 1, u, 0)]);
                }
            }
            out.push(vec![e1.clone(), aff(0, 0, 1, 0, 0)]);
            for u in 1..qi - 1 {
                for l in 0..p {
                    out.push(vec![e2.clone(), aff(l, 0, 1, u, 0)]);
                }
            }
            out.push(vec![e2.clone(), aff(0, 0, 1, -1, 0)]);
            out
        }
        RowKind::McPQCyclic => {
            let mut out: Vec<Vec<Gen>> = (0..p).map(|l| vec![e1.clone(), aff(0, l, 1, -1, 0)]).collect();
            out.extend((0..p).map(|l| vec![e2.clone(), aff(l, 0, 1, 0, 0)]));
            out
        }
        RowKind::Mc2PQSemidirect => {
            let mut out = Vec::new();
            // (i)
            for u in 1..qi - 1 {
                for l in 0..p {
                    let nu = mm.two_over_one_minus_g_pow(u) * l % p;
                    out.push(vec![e1.clone(), aff(0, l, 1, u, 0), aff(0, nu, 0, 0, 1)]);
                }
            }
            // (iii)
            for mu in 0..p {
                out.push(vec![e1.clone(), aff(0, 0, 1, 0, 0), aff(0, mu, 0, 0, 1)]);
            }
            // (iv)
            for u in 1..qi - 1 {
                for l in 0..p {
                    let nu = mm.two_over_one_minus_g_pow(u + 1) * l % p;
                    let b = match reading {
                        Reading::Proposition => aff(0, nu, 0, 0, 1),
                        _ => aff(nu, 0, 0, 0, 1),
                    };
                    out.push(vec![e2.clone(), aff(l, 0, 1, u, 0), b]);
                }
            }
            // (vi)
            for mu in 0..p {
                out.push(match reading {
                    Reading::Proposition => vec![e2.clone(), aff(0, 0, 1, -1, 0), aff(0, mu, 0, 0, 1)],
                    Reading::Table => vec![e1.clone(), aff(0, 0, 1, -1, 0), aff(0, mu, 0, 0, 1)],
                    Reading::Derived => vec![e2.clone(), aff(0, 0, 1, -1, 0), aff(mu, 0, 0, 0, 1)],
                });
            }
            out
        }
        RowKind::Mc2PQDihedral => {
            let mut out = Vec::new();
            // (ii)
            for l in 0..p {
                let nu = mm.two_over_one_minus_g_pow(-1) * l % p;
                out.push(vec![e1.clone(), aff(0, l, 1, -1, 0), aff(0, nu, 0, 0, 1)]);
            }
            // (v)
            for l in 0..p {
                let nu = mm.two_over_one_minus_g_pow(1) * l % p;
                let b = match reading {
                    Reading::Proposition => aff(0, nu, 0, 0, 1),
                    _ => aff(nu, 0, 0, 0, 1),
                };
                out.push(vec![e2.clone(), aff(l, 0, 1, 0, 0), b]);
            }
            out
        }
        RowKind::Both(..) | RowKind::Other => Vec::new(),
    }
}

/// Concrete group with the row's structure.
pub fn structure_spec(row: &CatalogRow, sg: &SophieGermain) -> Option<StructureSpec> {
    use StructureSpec as S;
    let (p, q, g) = (sg.p, sg.q, sg.g);
    let mm = MatrixModel::new(sg);
    let cp_cq = S::metacyclic(p, q, g);
    let cp_c2q = S::metacyclic(p, 2 * q, p - g);
    Some(match row.kind {
        RowKind::Cyclic(key) | RowKind::Both(key, _, _) => {
            let (c, d) = match row.kind {
                RowKind::Both(_, c, d) => (c, d),
                _ => (row.params.get("c").copied().unwrap_or(0), row.params.get("d").copied().unwrap_or(1)),
            };
            let m = (1u64 << c) * d;
            let kq = unit_of_order(q, m);
            let cq_part = S::metacyclic(q, m, kq);
            match key {
                'A' => S::product(cp_c2q, cq_part),
                'B' => S::product(cp_cq, cq_part),
                'C' => S::metacyclic(p * q, m * q, crt(p - g, p, kq, q)),
                'D' => S::product(S::Dihedral(p), cq_part),
                'E' => S::product(S::Cyclic(p), cq_part),
                'F' => S::metacyclic(p * q, m, crt(p - 1, p, kq, q)),
                'G' => cp_c2q,
                _ => cp_cq,
            }
        }
        RowKind::McP2Q2 => S::AffineDiag {
            p,
            diags: vec![mm.t(), mm.a()],
        },
        RowKind::McHol => S::AffineDiag {
            p,
            diags: vec![mm.t(), mm.a(), mm.b()],
        },
        RowKind::McP2Q | RowKind::McP2QB => {
            let u = row.params.get("u").copied().unwrap_or(0);
            let mut diags = vec![mm.matrix(mm.word(1, u as i64, 0))];
            if row.kind == RowKind::McP2QB {
                diags.push(mm.b());
            }
            S::AffineDiag { p, diags }
        }
        RowKind::McPQ2 => S::product(S::Cyclic(q), cp_cq),
        RowKind::Mc2PQ2 => S::product(S::Cyclic(q), cp_c2q),
        RowKind::McPQNonabelian => cp_cq,
        RowKind::McPQCyclic => S::Cyclic(p * q),
        RowKind::Mc2PQSemidirect => cp_c2q,
        RowKind::Mc2PQDihedral => S::product(S::Dihedral(p), S::Cyclic(q)),
        RowKind::Other => return None,
    })
}

/// A mismatch between a catalog row and the enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diff {
    pub row: String,
    pub field: String,
    pub expected: String,
    pub found: String,
}

fn diff(row: &str, field: &str, expected: impl ToString, found: impl ToString) -> Diff {
    Diff {
        row: row.to_string(),
        field: field.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Locate a row's members among the enumerated subgroups.
fn locate(
    row: &CatalogRow,
    sg: &SophieGermain,
    reading: Reading,
    en: &Enumeration,
    index: &HashMap<FixedBitSet, usize>,
) -> Vec<Option<usize>> {
    let mm = MatrixModel::new(sg);
    members_with(row, sg, reading)
        .iter()
        .map(|gens| {
            let perms: Vec<Perm> = gens.iter().map(|g| g.to_perm(&en.tabled, &mm)).collect();
            en.tabled
                .generate(&perms)
                .ok()
                .and_then(|s| index.get(&s.members).copied())
                .filter(|&i| en.pairs[i].order as u64 == row.order)
        })
        .collect()
}

fn member_index(en: &Enumeration) -> HashMap<FixedBitSet, usize> {
    en.pairs.iter().enumerate().map(|(i, p)| (p.members.members.clone(), i)).collect()
}

/// The enumerated class holding the first member of each row, if any.
pub fn match_rows(rows: &[CatalogRow], sg: &SophieGermain, en: &Enumeration) -> Vec<Option<usize>> {
    let index = member_index(en);
    rows.iter()
        .map(|row| {
            let first = locate(row, sg, Reading::Derived, en, &index).into_iter().next().flatten()?;
            en.classes.iter().position(|c| c.members.contains(&first))
        })
        .collect()
}

/// Compare a catalog (cyclic or non-abelian type) with an enumeration of the
/// matching holomorph. Empty result means full agreement.
pub fn cross_check(rows: &[CatalogRow], sg: &SophieGermain, ty: PqType, en: &Enumeration, caps: Caps, exec: Exec) -> Result<Vec<Diff>> {
    let index = member_index(en);
    let class_of: HashMap<usize, usize> = en
        .classes
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| c.members.iter().map(move |&m| (m, ci)))
        .collect();
    let mut diffs = Vec::new();
    let mut claimed = vec![false; en.classes.len()];
    let checks: Vec<(usize, Option<usize>, Vec<Diff>)> = exec.map(&rows.iter().enumerate().collect::<Vec<_>>(), |&(ri, row)| {
        let id = row.id();
        let mut d = Vec::new();
        let found = locate(row, sg, Reading::Derived, en, &index);
        let mut distinct: Vec<usize> = found.iter().flatten().copied().collect();
        distinct.sort_unstable();
        distinct.dedup();
        if found.iter().any(Option::is_none) {
            d.push(diff(
                &id,
                "members",
                "transitive subgroups",
                format!("{} not found", found.iter().filter(|f| f.is_none()).count()),
            ));
        }
        if distinct.len() as u64 != row.num_groups {
            d.push(diff(&id, "distinct members", row.num_groups, distinct.len()));
        }
        let mut classes: Vec<usize> = distinct.iter().map(|m| class_of[m]).collect();
        classes.dedup();
        classes.sort_unstable();
        classes.dedup();
        if classes.len() != 1 {
            d.push(diff(&id, "classes", 1, classes.len()));
            return (ri, None, d);
        }
        let ci = classes[0];
        let class = &en.classes[ci];
        let rep = &en.pairs[class.representative];
        let count = &en.counts[ci];
        if class.members.len() as u64 != row.num_groups {
            d.push(diff(&id, "num_groups", row.num_groups, class.members.len()));
        }
        if rep.order as u64 != row.order {
            d.push(diff(&id, "order", row.order, rep.order));
        }
        if rep.aut_pair_order != row.aut_pair_order {
            d.push(diff(&id, "aut_pair_order", row.aut_pair_order, rep.aut_pair_order));
        }
        let e = match ty {
            PqType::Cyclic => row.hgs.cyclic,
            PqType::Metacyclic => row.hgs.nonabelian,
        };
        if count.e != e {
            d.push(diff(&id, "hgs", e, count.e));
        }
        if rep.acg != row.acg {
            d.push(diff(&id, "acg", row.acg, rep.acg));
        }
        match structure_spec(row, sg).map(|s| s.matches(&rep.subgroup, caps.elements, Exec::Sequential)) {
            Some(Ok(true)) => {}
            Some(Ok(false)) => d.push(diff(&id, "structure", &row.structure, "not isomorphic")),
            Some(Err(e)) => d.push(diff(&id, "structure", &row.structure, e)),
            None => {}
        }
        (ri, Some(ci), d)
    });
    for (ri, ci, d) in checks {
        diffs.extend(d);
        if let Some(ci) = ci {
            if claimed[ci] {
                diffs.push(diff(&rows[ri].id(), "class", "unclaimed", "claimed by an earlier row"));
            }
            claimed[ci] = true;
        }
    }
    for (ci, c) in en.classes.iter().enumerate() {
        if !claimed[ci] {
            let rep = &en.pairs[c.representative];
            diffs.push(diff(
                "enumeration",
                "class",
                "a catalog row",
                format!("unmatched class of order {} with {} groups", rep.order, c.members.len()),
            ));
        }
    }
    Ok(diffs)
}

/// Match classes of the two enumerations by pair-isomorphism and compare
/// with the six rows of [`both_types`].
pub fn cross_check_both(sg: &SophieGermain, cyc: &Enumeration, met: &Enumeration, exec: Exec) -> Vec<Diff> {
    let mut todo = Vec::new();
    for (i, a) in cyc.classes.iter().enumerate() {
        for (j, b) in met.classes.iter().enumerate() {
            if cyc.pairs[a.representative].class_key == met.pairs[b.representative].class_key {
                todo.push((i, j));
            }
        }
    }
    let matched: Vec<(usize, usize)> = exec
        .map(&todo, |&(i, j)| {
            let a = PermAction::new(&cyc.pairs[cyc.classes[i].representative].subgroup);
            let b = PermAction::new(&met.pairs[met.classes[j].representative].subgroup);
            (iso::search(&a, &b, Goal::First, &|_| true, Exec::Sequential).count > 0).then_some((i, j))
        })
        .into_iter()
        .flatten()
        .collect();
    let rows = both_types(sg);
    let mut diffs = Vec::new();
    if matched.len() != rows.len() {
        diffs.push(diff("T6", "rows", rows.len(), matched.len()));
    }
    let cyc_rows = cyclic_catalog(sg);
    let cyc_index = member_index(cyc);
    for row in &rows {
        let id = row.id();
        let RowKind::Both(key, c, d) = row.kind else { continue };
        let source = cyc_rows
            .iter()
            .find(|r| r.kind == RowKind::Cyclic(key) && (r.params.is_empty() || (r.params["c"] == c && r.params["d"] == d)));
        let Some(source) = source else {
            diffs.push(diff(&id, "cyclic row", format!("({key})"), "missing"));
            continue;
        };
        let found = locate(source, sg, Reading::Derived, cyc, &cyc_index);
        let Some(Some(m)) = found.first() else {
            diffs.push(diff(&id, "cyclic member", "found", "missing"));
            continue;
        };
        let ci = cyc.classes.iter().position(|cl| cl.members.contains(m)).unwrap();
        let Some(&(_, mj)) = matched.iter().find(|(i, _)| *i == ci) else {
            diffs.push(diff(&id, "match", "a non-abelian type class", "none"));
            continue;
        };
        let (hc, hn) = (cyc.counts[ci].e, met.counts[mj].e);
        if (hc, hn) != (row.hgs.cyclic, row.hgs.nonabelian) {
            diffs.push(diff(
                &id,
                "hgs",
                format!("({}, {})", row.hgs.cyclic, row.hgs.nonabelian),
                format!("({hc}, {hn})"),
            ));
        }
        let groups = cyc.classes[ci].members.len() + met.classes[mj].members.len();
        if groups as u64 != row.num_groups {
            diffs.push(diff(&id, "num_groups", row.num_groups, groups));
        }
        let aut = cyc.pairs[cyc.classes[ci].representative].aut_pair_order;
        if aut != row.aut_pair_order {
            diffs.push(diff(&id, "aut_pair_order", row.aut_pair_order, aut));
        }
        let rep = &met.pairs[met.classes[mj].representative];
        if rep.order as u64 != row.order {
            diffs.push(diff(&id, "order", row.order, rep.order));
        }
    }
    diffs
}

/// Outcome of testing one printed variant of a family or label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingCheck {
    pub item: String,
    pub reading: String,
    pub supported: bool,
    pub detail: String,
}

/// Test the conflicting printed variants against the enumeration of the
/// non-abelian holomorph.
pub fn reading_checks(sg: &SophieGermain, en: &Enumeration, caps: Caps, exec: Exec) -> Vec<ReadingCheck> {
    let index = member_index(en);
    let rows = metacyclic_catalog(sg);
    let mut out = Vec::new();
    for kind in [RowKind::Mc2PQSemidirect, RowKind::Mc2PQDihedral] {
        let row = rows.iter().find(|r| r.kind == kind).unwrap();
        for (reading, name) in [
            (Reading::Proposition, "proposition"),
            (Reading::Table, "table"),
            (Reading::Derived, "derived"),
        ] {
            let found = locate(row, sg, reading, en, &index);
            let mut distinct: Vec<usize> = found.iter().flatten().copied().collect();
            distinct.sort_unstable();
            distinct.dedup();
            let missing = found.iter().filter(|f| f.is_none()).count();
            let supported = missing == 0 && distinct.len() as u64 == row.num_groups;
            out.push(ReadingCheck {
                item: format!("2pq {}", row.structure),
                reading: name.to_string(),
                supported,
                detail: format!(
                    "{} distinct members of {} expected; {} generator lists give no transitive subgroup of order {}",
                    distinct.len(),
                    row.num_groups,
                    missing,
                    row.order
                ),
            });
        }
    }
    // Order 2pq^2 structure label: semidirect or direct factor.
    let row = rows.iter().find(|r| r.kind == RowKind::Mc2PQ2).unwrap();
    let found = locate(row, sg, Reading::Derived, en, &index);
    if let Some(Some(m)) = found.get(sg.p as usize) {
        let group = &en.pairs[*m].subgroup;
        let (p, q, g) = (sg.p, sg.q, sg.g);
        for (name, spec) in [
            (
                "C_q × (C_p ⋊ C_{2q})",
                StructureSpec::product(StructureSpec::Cyclic(q), StructureSpec::metacyclic(p, 2 * q, p - g)),
            ),
            (
                "C_q × (C_p × C_{2q})",
                StructureSpec::product(StructureSpec::Cyclic(q), StructureSpec::Cyclic(2 * p * q)),
            ),
        ] {
            let ok = spec.matches(group, caps.elements, exec).unwrap_or(false);
            out.push(ReadingCheck {
                item: "2pq^2 second family structure".to_string(),
                reading: name.to_string(),
                supported: ok,
                detail: if ok { "isomorphic".into() } else { "not isomorphic".into() },
            });
        }
    }
    out
}

/// Class totals implied by the closed forms.
pub fn expected_class_counts(sg: &SophieGermain) -> (u64, u64) {
    ((6 * sg.r as u64 + 4) * sigma0(sg.s) + 2, sg.q + 9)
}
