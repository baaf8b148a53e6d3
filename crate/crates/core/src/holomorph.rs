//! `Hol(N) = N ⋊ Aut(N)` acting on `N`, with named generators for the two
//! groups of order `pq`.

use serde::Serialize;

use crate::arith::{crt, inv_mod, pow_mod, smallest_primitive_root, units};
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};
use crate::sqfree::{aut_structure, automorphism_map, AutStructure, SophieGermain, SquarefreeSpec};

/// Which group of order `pq` plays the role of `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PqType {
    Cyclic,
    Metacyclic,
}

impl PqType {
    pub fn name(self) -> &'static str {
        match self {
            PqType::Cyclic => "cyclic",
            PqType::Metacyclic => "metacyclic",
        }
    }

    pub fn spec(self, sg: &SophieGermain) -> SquarefreeSpec {
        match self {
            PqType::Cyclic => sg.cyclic_spec(),
            PqType::Metacyclic => sg.metacyclic_spec(),
        }
    }
}

/// `[η, α]`, acting by `μ ↦ η α(μ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HolElement {
    pub eta: usize,
    pub alpha: Perm,
}

/// Holomorph as a permutation group on the element indices of `N`, with
/// named elements. The base point is `1_N = 0`.
#[derive(Debug, Clone)]
pub struct LabeledHolomorph {
    pub spec: SquarefreeSpec,
    pub aut: AutStructure,
    pub group: PermGroup,
    labels: Vec<(String, Perm)>,
    auts: Vec<Perm>,
}

impl LabeledHolomorph {
    pub fn degree(&self) -> usize {
        self.spec.n as usize
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn base_point(&self) -> u32 {
        0
    }

    pub fn label(&self, name: &str) -> Option<&Perm> {
        self.labels.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn labels(&self) -> &[(String, Perm)] {
        &self.labels
    }

    fn set_label(&mut self, name: &str, p: Perm) {
        self.labels.retain(|(n, _)| n != name);
        self.labels.push((name.to_string(), p));
    }

    /// Product of named elements, left to right.
    pub fn word(&self, names: &[&str]) -> Perm {
        names.iter().fold(Perm::identity(self.degree()), |acc, n| {
            &acc * self.label(n).unwrap_or_else(|| panic!("unknown label {n}"))
        })
    }

    /// `λ(N)`, the left translations.
    pub fn lambda(&self) -> PermGroup {
        let gens = vec![
            self.spec.left_translation(self.spec.sigma()),
            self.spec.left_translation(self.spec.tau()),
        ];
        PermGroup::generate(self.degree(), gens, self.degree()).expect("N closes")
    }

    /// `Aut(N)` as the stabiliser of `1_N`.
    pub fn aut_group(&self) -> PermGroup {
        PermGroup::from_elements(self.degree(), self.auts.clone())
    }

    pub fn hol_to_perm(&self, h: &HolElement) -> Perm {
        &self.spec.left_translation(h.eta) * &h.alpha
    }

    pub fn perm_to_hol(&self, perm: &Perm) -> Result<HolElement> {
        if perm.degree() != self.degree() {
            return Err(Error::NotInHolomorph);
        }
        let eta = perm.apply(0) as usize;
        let alpha = &self.spec.left_translation(eta).inverse() * perm;
        if self.auts.binary_search(&alpha).is_err() {
            return Err(Error::NotInHolomorph);
        }
        Ok(HolElement { eta, alpha })
    }
}

/// Holomorph of the group given by `spec`, labelled `sigma`, `tau` (left
/// translations) and `theta`.
pub fn build_holomorph(spec: &SquarefreeSpec, cap: usize) -> Result<LabeledHolomorph> {
    let aut = aut_structure(spec);
    let hol_order = (spec.n * aut.aut_order) as usize;
    if hol_order > cap {
        return Err(Error::CapExceeded { what: "element", cap });
    }
    let mut auts = aut.all();
    auts.sort_unstable();
    let sigma = spec.left_translation(spec.sigma());
    let tau = spec.left_translation(spec.tau());
    let mut gens = vec![sigma.clone(), tau.clone(), aut.theta.clone()];
    let unit_gens = PermGroup::from_elements(spec.n as usize, aut.phi.iter().map(|(_, p)| p.clone()).collect());
    gens.extend(unit_gens.generators().iter().cloned());
    gens.retain(|g| !g.is_identity());
    let group = PermGroup::generate(spec.n as usize, gens, cap)?;
    if group.order() != hol_order {
        return Err(Error::InvalidSpec(format!(
            "holomorph closed at order {} instead of {hol_order}",
            group.order()
        )));
    }
    let labels = vec![
        ("sigma".to_string(), sigma),
        ("tau".to_string(), tau),
        ("theta".to_string(), aut.theta.clone()),
    ];
    Ok(LabeledHolomorph {
        spec: *spec,
        aut,
        group,
        labels,
        auts,
    })
}

/// Holomorph of the cyclic or non-abelian group of order `pq`.
///
/// Cyclic: `sigma`, `tau` of orders `p`, `q`; `alpha`, `beta` of orders
/// `q`, 2 fixing `tau`; `gamma`, `delta` of orders `2^r`, `s` fixing
/// `sigma`.
///
/// Metacyclic: `sigma`, `tau`, `alpha: σ ↦ σ^g`, `beta: σ ↦ σ^-1`,
/// `epsilon: τ ↦ στ`, and the matrix-model names `T`, `A`, `B`, `e1`,
/// `e2 = σ ε^(g-1)`, `f = ε^(1-g)`.
pub fn pq_holomorph(sg: &SophieGermain, ty: PqType, cap: usize) -> Result<LabeledHolomorph> {
    let spec = ty.spec(sg);
    let mut hol = build_holomorph(&spec, cap)?;
    let (p, q) = (sg.p, sg.q);
    let n = p * q;
    match ty {
        PqType::Cyclic => {
            let h = smallest_primitive_root(q).expect("q prime");
            let unit = |mod_p: u64, mod_q: u64| automorphism_map(&spec, crt(mod_p, p, mod_q, q), 0);
            hol.set_label("sigma", spec.left_translation(spec.index(q, 0)));
            hol.set_label("tau", spec.left_translation(spec.index(p, 0)));
            hol.set_label("alpha", unit(sg.g, 1));
            hol.set_label("beta", unit(p - 1, 1));
            hol.set_label("gamma", unit(1, pow_mod(h, sg.s, q)));
            hol.set_label("delta", unit(1, pow_mod(h, 1 << sg.r, q)));
            debug_assert_eq!(units(n).len() as u64, (p - 1) * (q - 1));
        }
        PqType::Metacyclic => {
            let alpha = automorphism_map(&spec, sg.g, 0);
            let beta = automorphism_map(&spec, p - 1, 0);
            let epsilon = automorphism_map(&spec, 1, 1);
            let sigma = hol.label("sigma").unwrap().clone();
            let tau = hol.label("tau").unwrap().clone();
            let e2 = &sigma * &epsilon.pow(sg.g as i64 - 1);
            let f = epsilon.pow(1 - sg.g as i64);
            hol.set_label("alpha", alpha.clone());
            hol.set_label("beta", beta.clone());
            hol.set_label("epsilon", epsilon);
            hol.set_label("T", tau);
            hol.set_label("A", alpha);
            hol.set_label("B", beta);
            hol.set_label("e1", sigma);
            hol.set_label("e2", e2);
            hol.set_label("f", f);
        }
    }
    Ok(hol)
}

/// 2×2 diagonal matrix over `F_p`.
pub type Diag = [u64; 2];

/// `Hol(C_p ⋊ C_q) = F_p² ⋊ <T, A, B>` with `T = diag(g,1)`, `A = diag(g,g)`,
/// `B = -I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixModel {
    pub p: u64,
    pub q: u64,
    pub g: u64,
}

/// `T^a A^b B^c`, exponents reduced mod `q`, `q`, 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RWord {
    pub t: u64,
    pub a: u64,
    pub b: u64,
}

impl MatrixModel {
    pub fn new(sg: &SophieGermain) -> Self {
        MatrixModel { p: sg.p, q: sg.q, g: sg.g }
    }

    pub fn t(&self) -> Diag {
        [self.g, 1]
    }

    pub fn a(&self) -> Diag {
        [self.g, self.g]
    }

    pub fn b(&self) -> Diag {
        [self.p - 1, self.p - 1]
    }

    pub fn f(&self) -> [u64; 2] {
        [1, self.p - 1]
    }

    pub fn word(&self, t: i64, a: i64, b: i64) -> RWord {
        RWord {
            t: t.rem_euclid(self.q as i64) as u64,
            a: a.rem_euclid(self.q as i64) as u64,
            b: b.rem_euclid(2) as u64,
        }
    }

    pub fn matrix(&self, w: RWord) -> Diag {
        let sign = if w.b == 1 { self.p - 1 } else { 1 };
        let ga = pow_mod(self.g, w.a, self.p);
        [pow_mod(self.g, w.t, self.p) * ga % self.p * sign % self.p, ga * sign % self.p]
    }

    pub fn apply(&self, m: Diag, v: [u64; 2]) -> [u64; 2] {
        [m[0] * v[0] % self.p, m[1] * v[1] % self.p]
    }

    /// `I + M + ... + M^(q-1)`.
    pub fn power_sum(&self, m: Diag) -> Diag {
        let mut acc = [0, 0];
        let mut pw = [1, 1];
        for _ in 0..self.q {
            acc = [(acc[0] + pw[0]) % self.p, (acc[1] + pw[1]) % self.p];
            pw = [pw[0] * m[0] % self.p, pw[1] * m[1] % self.p];
        }
        acc
    }

    /// `[v, U][w, V] = [v + Uw, UV]`.
    pub fn mul(&self, x: ([u64; 2], RWord), y: ([u64; 2], RWord)) -> ([u64; 2], RWord) {
        let uw = self.apply(self.matrix(x.1), y.0);
        (
            [(x.0[0] + uw[0]) % self.p, (x.0[1] + uw[1]) % self.p],
            self.word((x.1.t + y.1.t) as i64, (x.1.a + y.1.a) as i64, (x.1.b + y.1.b) as i64),
        )
    }

    /// `2 (1 - g^k)^-1 mod p`, the coefficient attached to `B` in the
    /// even-order families.
    pub fn two_over_one_minus_g_pow(&self, k: i64) -> u64 {
        let gk = pow_mod(self.g, k.rem_euclid(self.q as i64) as u64, self.p);
        let inv = inv_mod((1 + self.p - gk) as i64 % self.p as i64, self.p as i64).expect("g^k != 1");
        (2 * inv as u64) % self.p
    }

    /// Image of `[v, U]` in the labelled holomorph.
    pub fn embed(&self, hol: &LabeledHolomorph, v: [u64; 2], w: RWord) -> Perm {
        let e1 = hol.label("e1").expect("metacyclic labels");
        let e2 = hol.label("e2").expect("metacyclic labels");
        let vec = &e1.pow(v[0] as i64) * &e2.pow(v[1] as i64);
        let r = &(&hol.label("T").unwrap().pow(w.t as i64) * &hol.label("A").unwrap().pow(w.a as i64))
            * &hol.label("B").unwrap().pow(w.b as i64);
        &vec * &r
    }

    /// Every element `[v, U]` in the order `(v, U)`.
    pub fn all_elements(&self) -> Vec<([u64; 2], RWord)> {
        let mut out = Vec::new();
        for x in 0..self.p {
            for y in 0..self.p {
                for t in 0..self.q {
                    for a in 0..self.q {
                        for b in 0..2 {
                            out.push(([x, y], RWord { t, a, b }));
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::DEFAULT_ELEMENT_CAP;
    use crate::sqfree::sophie_germain_params;

    fn sg3() -> SophieGermain {
        sophie_germain_params(3).unwrap()
    }

    #[test]
    fn hol_c21() {
        let hol = pq_holomorph(&sg3(), PqType::Cyclic, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(hol.order(), 252);
        let (orbit, stab) = hol.group.orbit_stabilizer(0);
        assert_eq!((orbit.len(), stab.order()), (21, 12));
        assert_eq!(stab, hol.aut_group());
        let orders: Vec<u64> = ["sigma", "tau", "alpha", "beta", "gamma", "delta"]
            .iter()
            .map(|n| hol.label(n).unwrap().order())
            .collect();
        assert_eq!(orders, vec![7, 3, 3, 2, 2, 1]);
        let tau = hol.label("tau").unwrap();
        let sigma = hol.label("sigma").unwrap();
        for n in ["alpha", "beta"] {
            let a = hol.label(n).unwrap();
            assert_eq!(&(a * tau) * &a.inverse(), *tau);
        }
        for n in ["gamma", "delta"] {
            let a = hol.label(n).unwrap();
            assert_eq!(&(a * sigma) * &a.inverse(), *sigma);
        }
    }

    #[test]
    fn hol_metacyclic_21() {
        let hol = pq_holomorph(&sg3(), PqType::Metacyclic, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(hol.order(), 882);
        assert_eq!(hol.aut_group().order(), 42);
        let orders: Vec<u64> = ["alpha", "beta", "epsilon"].iter().map(|n| hol.label(n).unwrap().order()).collect();
        assert_eq!(orders, vec![3, 2, 7]);
        let (b, e) = (hol.label("beta").unwrap(), hol.label("epsilon").unwrap());
        assert_eq!(b * e, &e.inverse() * b);
        let (a, b) = (hol.label("alpha").unwrap(), hol.label("beta").unwrap());
        assert_eq!(a * b, b * a);
        let sylow = PermGroup::generate(21, vec![hol.word(&["sigma"]), hol.word(&["epsilon"])], 1000).unwrap();
        assert_eq!(sylow.order(), 49);
        let sigma_eps = hol.label("e2").unwrap();
        let tau = hol.label("tau").unwrap();
        assert_eq!(sigma_eps * tau, tau * sigma_eps);
    }

    #[test]
    fn hol_round_trip() {
        let hol = pq_holomorph(&sg3(), PqType::Metacyclic, DEFAULT_ELEMENT_CAP).unwrap();
        for g in hol.group.elements().iter().step_by(7) {
            let h = hol.perm_to_hol(g).unwrap();
            assert_eq!(&hol.hol_to_perm(&h), g);
        }
        let identity = HolElement {
            eta: 0,
            alpha: Perm::identity(21),
        };
        assert!(hol.hol_to_perm(&identity).is_identity());
        let odd = Perm::from_cycles(21, &[&[1, 2]]).unwrap();
        assert_eq!(hol.perm_to_hol(&odd), Err(Error::NotInHolomorph));
        // αη = α(η)α
        let alpha = hol.label("alpha").unwrap();
        for eta in 0..21 {
            let lhs = alpha * &hol.spec.left_translation(eta);
            let rhs = &hol.spec.left_translation(alpha.apply(eta as u32) as usize) * alpha;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn matrix_model_q3() {
        let sg = sg3();
        let mm = MatrixModel::new(&sg);
        assert_eq!(mm.power_sum(mm.t()), [0, 3]);
        assert_eq!(mm.power_sum(mm.a()), [0, 0]);
        assert_eq!(mm.apply(mm.t(), mm.f()), [2, 6]);
        let hol = pq_holomorph(&sg, PqType::Metacyclic, DEFAULT_ELEMENT_CAP).unwrap();
        let elems = mm.all_elements();
        let mut perms: Vec<Perm> = elems.iter().map(|&(v, w)| mm.embed(&hol, v, w)).collect();
        for i in (0..elems.len()).step_by(13) {
            for j in (0..elems.len()).step_by(17) {
                let (x, y) = (elems[i], elems[j]);
                let z = mm.mul(x, y);
                assert_eq!(&perms[i] * &perms[j], mm.embed(&hol, z.0, z.1));
            }
        }
        perms.sort_unstable();
        assert_eq!(perms, hol.group.elements());
        let f = mm.embed(&hol, mm.f(), mm.word(0, 0, 0));
        assert_eq!(&f, hol.label("f").unwrap());
        assert!(f.fixes(0));
    }
}
