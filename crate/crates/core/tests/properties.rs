use hgs_core::arith::{crt, gcd, is_squarefree, pow_mod};
use hgs_core::catalog::{both_types, cyclic_catalog, expected_class_counts, metacyclic_catalog, RowKind};
use hgs_core::perm::Perm;
use hgs_core::report::{emit, run, Command, Format, Report, RunConfig, TypeSel};
use hgs_core::sqfree::{aut_structure, enumerate_specs, sophie_germain_params, SquarefreeSpec};
use hgs_core::Caps;
use proptest::prelude::*;

const SOPHIE_GERMAIN: [u64; 14] = [3, 5, 11, 23, 29, 41, 53, 83, 89, 113, 131, 173, 179, 191];

fn arb_spec() -> impl Strategy<Value = SquarefreeSpec> {
    (2u64..=210).prop_filter("squarefree", |&n| is_squarefree(n)).prop_flat_map(|n| {
        let specs = enumerate_specs(n).unwrap();
        (0..specs.len()).prop_map(move |i| specs[i])
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn perm_group_laws(a in arb_perm(9), b in arb_perm(9), c in arb_perm(9)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a.inverse() * &a).is_identity());
        prop_assert_eq!((&a * &b).inverse(), &b.inverse() * &a.inverse());
        prop_assert_eq!(a.conjugate(&b).cycle_type(), b.cycle_type());
        prop_assert_eq!(a.conjugate(&b.inverse()), a.conjugate(&b).inverse());
    }

    #[test]
    fn squarefree_multiplication(spec in arb_spec(), xs in prop::array::uniform3(0usize..1000)) {
        let n = spec.n as usize;
        let [x, y, z] = xs.map(|v| v % n);
        prop_assert_eq!(spec.mul(spec.mul(x, y), z), spec.mul(x, spec.mul(y, z)));
        prop_assert_eq!(spec.mul(x, spec.inv(x)), 0);
        prop_assert_eq!(spec.mul(0, x), x);
    }

    #[test]
    fn automorphisms_are_homomorphisms(spec in arb_spec(), i in 0usize..10_000, x in 0usize..1000, y in 0usize..1000) {
        let aut = aut_structure(&spec);
        let all = aut.all();
        prop_assert_eq!(all.len() as u64, aut.aut_order);
        let f = &all[i % all.len()];
        let n = spec.n as usize;
        let (x, y) = (x % n, y % n);
        let image = |v: usize| f.apply(v as u32) as usize;
        prop_assert_eq!(image(spec.mul(x, y)), spec.mul(image(x), image(y)));
    }

    #[test]
    fn pow_mod_matches_repeated_multiplication(b in 0u64..10_000, e in 0u64..200, m in 1u64..10_000) {
        let naive = (0..e).fold(1 % m, |acc, _| acc * (b % m) % m);
        prop_assert_eq!(pow_mod(b, e, m), naive);
    }

    #[test]
    fn crt_solves_both_congruences(a in 0u64..1000, b in 0u64..1000, m in 1u64..500, n in 1u64..500) {
        prop_assume!(gcd(m, n) == 1);
        let x = crt(a, m, b, n);
        prop_assert!(x < m * n);
        prop_assert_eq!(x % m, a % m);
        prop_assert_eq!(x % n, b % n);
    }

    #[test]
    fn catalog_formulas(i in 0usize..SOPHIE_GERMAIN.len()) {
        let sg = sophie_germain_params(SOPHIE_GERMAIN[i]).unwrap();
        let (p, q) = (sg.p, sg.q);
        let cyc = cyclic_catalog(&sg);
        let met = metacyclic_catalog(&sg);
        prop_assert_eq!((cyc.len() as u64, met.len() as u64), expected_class_counts(&sg));
        let aut_cyc = (p - 1) * (q - 1);
        let aut_met = p * (p - 1);
        for row in &cyc {
            prop_assert_eq!(row.hgs.cyclic * aut_cyc, row.aut_pair_order * row.num_groups, "{}", row.id());
            prop_assert_eq!(row.order % (p * q), 0);
            prop_assert!(row.acg);
        }
        for row in &met {
            prop_assert_eq!(row.hgs.nonabelian * aut_met, row.aut_pair_order * row.num_groups, "{}", row.id());
            prop_assert_eq!(row.hgs.nonabelian % 2, 0, "{}", row.id());
            prop_assert_eq!(row.order % (p * q), 0);
        }
        prop_assert_eq!(met.iter().filter(|r| !r.acg).count() as u64, q - 1);
        for row in both_types(&sg) {
            let RowKind::Both(key, c, d) = row.kind else { panic!("{}", row.id()) };
            let c_row = cyc
                .iter()
                .find(|r| r.key == format!("({key})") && (r.params.is_empty() || (r.params["c"], r.params["d"]) == (c, d)))
                .unwrap();
            let m_row = met.iter().find(|r| r.key == row.key && r.structure == row.structure).unwrap();
            prop_assert_eq!(row.num_groups, c_row.num_groups + m_row.num_groups, "{}", row.id());
            prop_assert_eq!(row.hgs.cyclic, c_row.hgs.cyclic);
            prop_assert_eq!(row.hgs.nonabelian, m_row.hgs.nonabelian);
            prop_assert_eq!(row.order, c_row.order);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn json_round_trip(i in 0usize..4, ty in prop::sample::select(vec![TypeSel::Cyclic, TypeSel::Metacyclic, TypeSel::Both])) {
        let cfg = RunConfig {
            command: Command::Catalog,
            q: Some(SOPHIE_GERMAIN[i]),
            n: None,
            ty,
            caps: Caps::default(),
            workers: 1,
        };
        let report = run(&cfg).unwrap();
        let text = emit(&report, Format::Json);
        let back: Report = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &report);
        prop_assert_eq!(emit(&back, Format::Json), text);
    }
}
