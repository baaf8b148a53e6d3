//! Acceptance suite: one pass/fail line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hgs_core::arith::is_squarefree;
use hgs_core::catalog::{self, cross_check, cross_check_both, expected_class_counts};
use hgs_core::holomorph::{pq_holomorph, PqType};
use hgs_core::oracle;
use hgs_core::report::{emit, run, Command, Format, RunConfig, TypeSel};
use hgs_core::sqfree::{enumerate_specs, hol_div_check, sophie_germain_params, SophieGermain};
use hgs_core::transitive::{wreath_counterexample, Enumeration};
use hgs_core::{Caps, Exec};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn enumerate(sg: &SophieGermain, ty: PqType, exec: Exec) -> (Enumeration, Duration) {
    let start = Instant::now();
    let hol = pq_holomorph(sg, ty, Caps::default().elements).expect("holomorph");
    let en = Enumeration::run(hol, Caps::default(), exec).expect("enumeration");
    (en, start.elapsed())
}

fn class_of_structure(en: &Enumeration, sg: &SophieGermain, ty: PqType, structure: &str, key: &str) -> Option<(usize, u64)> {
    let rows = catalog::catalog(sg, ty);
    let ri = rows.iter().position(|r| r.structure == structure && r.key == key)?;
    let ci = catalog::match_rows(&rows, sg, en)[ri]?;
    Some((en.classes[ci].members.len(), en.counts[ci].e))
}

struct Runs {
    sg3: SophieGermain,
    sg5: SophieGermain,
    cyc3: (Enumeration, Duration),
    met3: (Enumeration, Duration),
    cyc5: Enumeration,
    met5: Enumeration,
    q5_time: Duration,
}

fn criterion_1(r: &Runs) -> Outcome {
    let (en, t) = &r.cyc3;
    let groups = en.pairs.len();
    let classes = en.classes.len();
    let mut counts: Vec<(usize, u64)> = en
        .classes
        .iter()
        .zip(&en.counts)
        .map(|(c, h)| (en.pairs[c.representative].order, h.e))
        .collect();
    counts.sort_unstable();
    let special: Vec<&(usize, u64)> = counts.iter().filter(|(_, e)| *e != 1).collect();
    let diffs = cross_check(
        &catalog::cyclic_catalog(&r.sg3),
        &r.sg3,
        PqType::Cyclic,
        en,
        Caps::default(),
        Exec::Sequential,
    )
    .unwrap();
    let regular_nonab = class_of_structure(en, &r.sg3, PqType::Cyclic, "C_p ⋊ C_q", "(H)");
    let pass = groups == 14
        && classes == 12
        && special.len() == 1
        && regular_nonab.map(|x| x.1) == Some(7)
        && diffs.is_empty()
        && *t < Duration::from_secs(10);
    outcome(
        pass,
        format!(
            "{groups} groups, {classes} classes, HGS != 1 only at {special:?}, {} diffs, {t:.2?} sequential",
            diffs.len()
        ),
    )
}

fn criterion_2(r: &Runs) -> Outcome {
    let (en, t) = &r.met3;
    let sg = &r.sg3;
    let diffs = cross_check(
        &catalog::metacyclic_catalog(sg),
        sg,
        PqType::Metacyclic,
        en,
        Caps::default(),
        Exec::Sequential,
    )
    .unwrap();
    let hol = class_of_structure(en, sg, PqType::Metacyclic, "Hol(N)", "2p^2q^2").map(|x| x.1);
    let cp = class_of_structure(en, sg, PqType::Metacyclic, "C_p × (C_p ⋊ C_q)", "p^2q").map(|x| x.1);
    let nonab = class_of_structure(en, sg, PqType::Metacyclic, "C_p ⋊ C_q", "pq").map(|x| x.1);
    let cyc = class_of_structure(en, sg, PqType::Metacyclic, "C_{pq}", "pq").map(|x| x.1);
    let pass = en.pairs.len() == 108
        && en.classes.len() == 12
        && hol == Some(2)
        && cp == Some(2)
        && nonab == Some(16)
        && cyc == Some(4)
        && diffs.is_empty()
        && *t < Duration::from_secs(120);
    outcome(
        pass,
        format!(
            "{} groups, {} classes, HGS Hol(N) {hol:?}, C_p x (C_p ⋊ C_q) {cp:?} (2 expected, not 14), regular non-abelian {nonab:?}, regular cyclic {cyc:?}, {} diffs, {t:.2?}",
            en.pairs.len(),
            en.classes.len(),
            diffs.len()
        ),
    )
}

fn criterion_3(r: &Runs) -> Outcome {
    let sg = &r.sg5;
    let dc = cross_check(
        &catalog::cyclic_catalog(sg),
        sg,
        PqType::Cyclic,
        &r.cyc5,
        Caps::default(),
        Exec::Parallel,
    )
    .unwrap();
    let dm = cross_check(
        &catalog::metacyclic_catalog(sg),
        sg,
        PqType::Metacyclic,
        &r.met5,
        Caps::default(),
        Exec::Parallel,
    )
    .unwrap();
    let (ec, em) = expected_class_counts(sg);
    let (nc, nm) = (r.cyc5.classes.len() as u64, r.met5.classes.len() as u64);
    let pass = dc.is_empty() && dm.is_empty() && nc == ec && nm == em && r.q5_time < Duration::from_secs(1800);
    outcome(
        pass,
        format!(
            "diffs {} cyclic / {} metacyclic, classes {nc} (formula {ec}, not 16) / {nm} (formula {em}), enumeration {:.2?}",
            dc.len(),
            dm.len(),
            r.q5_time
        ),
    )
}

fn criterion_4(r: &Runs) -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for (sg, cyc, met) in [(&r.sg3, &r.cyc3.0, &r.met3.0), (&r.sg5, &r.cyc5, &r.met5)] {
        let d = cross_check_both(sg, cyc, met, Exec::Parallel);
        let rows = catalog::both_types(sg);
        let (p, q) = (sg.p, sg.q);
        let shape = rows.iter().all(|row| {
            (row.hgs.cyclic, row.hgs.nonabelian) == (1, 2 * (q - 1)) || (row.hgs.cyclic, row.hgs.nonabelian) == (p, 2 * p * (q - 2) + 2)
        });
        pass &= d.is_empty() && rows.len() == 6 && shape;
        details.push(format!("q={q}: {} rows, {} diffs", rows.len(), d.len()));
    }
    outcome(pass, details.join("; "))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let res = oracle::corpus(6, Caps::default(), Exec::Parallel).unwrap();
    let bad: Vec<&str> = res.iter().filter(|r| !r.agrees()).map(|r| r.label.as_str()).collect();
    let per_degree: Vec<usize> = (1..=6).map(|n| res.iter().filter(|r| r.degree == n).count()).collect();
    let t = start.elapsed();
    outcome(
        bad.is_empty() && per_degree == [1, 1, 2, 5, 5, 16] && t < Duration::from_secs(300),
        format!("{} groups (per degree {per_degree:?}), disagreements {bad:?}, {t:.2?}", res.len()),
    )
}

fn criterion_6a() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in (1..=105u64).filter(|&n| is_squarefree(n)) {
        for spec in enumerate_specs(n).unwrap() {
            checked += 1;
            if hol_div_check(&spec).1 {
                bad.push(spec.label());
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} groups of squarefree order <= 105, p^3 | |Hol| for {bad:?}"),
    )
}

fn all_enumerations(r: &Runs) -> [(u64, PqType, &Enumeration); 4] {
    [
        (3, PqType::Cyclic, &r.cyc3.0),
        (3, PqType::Metacyclic, &r.met3.0),
        (5, PqType::Cyclic, &r.cyc5),
        (5, PqType::Metacyclic, &r.met5),
    ]
}

fn criterion_6b(r: &Runs) -> Outcome {
    let mut max = 0;
    let mut total = 0;
    let mut ok = true;
    for (_, _, en) in all_enumerations(r) {
        for p in &en.pairs {
            total += 1;
            match p.derived_length() {
                Some(l) => max = max.max(l),
                None => ok = false,
            }
        }
    }
    outcome(ok && max <= 4, format!("{total} subgroups, largest derived length {max}"))
}

fn criterion_6c() -> Outcome {
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for n in 7..=30u64 {
        if !is_squarefree(n) || hgs_core::arith::is_prime(n) {
            continue;
        }
        let w = wreath_counterexample(n, Caps::default().elements).unwrap();
        seen.push(n);
        if !(w.certified() && w.transitive && w.derived_length == Some(2)) {
            bad.push(n);
        }
    }
    outcome(bad.is_empty(), format!("degrees {seen:?}, failures {bad:?}"))
}

fn criterion_6d(r: &Runs) -> Outcome {
    let sg = &r.sg3;
    let en = &r.cyc3.0;
    let rows = catalog::cyclic_catalog(sg);
    let matched = catalog::match_rows(&rows, sg, en);
    let aut_n = (sg.p - 1) * (sg.q - 1);
    let mut ok = true;
    for (row, ci) in rows.iter().zip(&matched) {
        let Some(ci) = ci else {
            ok = false;
            continue;
        };
        if matches!(row.key.as_str(), "(A)" | "(B)" | "(C)" | "(D)" | "(E)" | "(F)") {
            ok &= en.classes[*ci].members.len() == 1 && en.pairs[en.classes[*ci].representative].aut_pair_order == aut_n;
        }
    }
    let mut distinct = matched.clone();
    distinct.sort_unstable();
    distinct.dedup();
    ok &= distinct.len() == rows.len();
    let collisions: usize = all_enumerations(r)
        .iter()
        .map(|(_, _, en)| en.abstract_collisions(Exec::Parallel).len())
        .sum();
    outcome(
        ok && collisions == 0,
        format!("rows (A)-(F) singletons with |Aut(G,G')| = {aut_n}: {ok}; abstract collisions between pair classes: {collisions}"),
    )
}

fn criterion_6e(r: &Runs) -> Outcome {
    let odd: Vec<(u64, u64)> = all_enumerations(r)
        .iter()
        .filter(|(_, t, _)| *t == PqType::Metacyclic)
        .flat_map(|(q, _, en)| en.counts.iter().filter(|c| c.e % 2 == 1).map(move |c| (*q, c.e)))
        .collect();
    outcome(odd.is_empty(), format!("odd non-abelian counts {odd:?}"))
}

fn criterion_6f(r: &Runs) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (q, t, en) in all_enumerations(r) {
        let non = en.classes.iter().filter(|c| !en.pairs[c.representative].acg).count() as u64;
        ok &= match t {
            PqType::Cyclic => non == 0,
            PqType::Metacyclic => non == q - 1,
        };
        details.push(format!("q={q} {}: {non} non-acG", t.name()));
    }
    outcome(ok, details.join(", "))
}

fn criterion_6g(r: &Runs) -> Outcome {
    let mut ok = true;
    let mut n = 0;
    for (_, _, en) in all_enumerations(r) {
        let aut_n = en.tabled.hol.aut.aut_order;
        for c in &en.counts {
            n += 1;
            ok &= (c.aut_pair_order * c.e_prime) % aut_n == 0 && c.aut_pair_order * c.e_prime / aut_n == c.e;
        }
    }
    outcome(ok, format!("{n} classes"))
}

fn criterion_7() -> Outcome {
    let configs = [
        (Command::Catalog, Some(5), None, TypeSel::Both),
        (Command::Catalog, Some(3), None, TypeSel::Metacyclic),
        (Command::Enumerate, Some(3), None, TypeSel::Both),
        (Command::Enumerate, None, Some(30), TypeSel::Both),
        (Command::Verify, Some(3), None, TypeSel::Both),
        (Command::Oracle, None, Some(4), TypeSel::Both),
        (Command::Realizable, None, Some(21), TypeSel::Both),
    ];
    let mut bad = Vec::new();
    for (command, q, n, ty) in configs {
        let cfg = RunConfig {
            command,
            q,
            n,
            ty,
            caps: Caps::default(),
            workers: 2,
        };
        let a = run(&cfg).unwrap();
        let b = run(&RunConfig { workers: 1, ..cfg.clone() }).unwrap();
        for f in [Format::Json, Format::Csv, Format::Md] {
            if emit(&a, f) != emit(&b, f) {
                bad.push(format!("{command:?} {f:?}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} commands x 3 formats, mismatches {bad:?}", configs.len()),
    )
}

fn main() -> ExitCode {
    let sg3 = sophie_germain_params(3).unwrap();
    let sg5 = sophie_germain_params(5).unwrap();
    let cyc3 = enumerate(&sg3, PqType::Cyclic, Exec::Sequential);
    let met3 = enumerate(&sg3, PqType::Metacyclic, Exec::Sequential);
    let start = Instant::now();
    let (cyc5, _) = enumerate(&sg5, PqType::Cyclic, Exec::Parallel);
    let (met5, _) = enumerate(&sg5, PqType::Metacyclic, Exec::Parallel);
    let mut runs = Runs {
        sg3,
        sg5,
        cyc3,
        met3,
        cyc5,
        met5,
        q5_time: Duration::ZERO,
    };
    runs.q5_time = start.elapsed();
    let c3 = criterion_3(&runs);

    let results: Vec<(&str, Outcome)> = vec![
        ("1 cyclic catalog q=3", criterion_1(&runs)),
        ("2 metacyclic catalog q=3", criterion_2(&runs)),
        ("3 cross-check q=5", c3),
        ("4 both-types table", criterion_4(&runs)),
        ("5 oracle equivalence", criterion_5()),
        ("6a holomorph order divisibility", criterion_6a()),
        ("6b derived length", criterion_6b(&runs)),
        ("6c wreath witnesses", criterion_6c()),
        ("6d automorphism restatements", criterion_6d(&runs)),
        ("6e parity", criterion_6e(&runs)),
        ("6f acG census", criterion_6f(&runs)),
        ("6g count integrality", criterion_6g(&runs)),
        ("7 determinism", criterion_7()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
