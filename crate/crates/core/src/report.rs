//! Run configuration, dispatch and deterministic report emission.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, CatalogRow, Diff, Hgs, ReadingCheck};
use crate::error::{Error, Result};
use crate::exec::{Caps, Exec};
use crate::holomorph::{build_holomorph, pq_holomorph, PqType};
use crate::oracle;
use crate::perm::{PermGroup, SubgroupPair};
use crate::sqfree::{build_group, enumerate_specs, sophie_germain_params, SophieGermain};
use crate::transitive::{realizability_filter, wreath_counterexample, Enumeration, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Catalog,
    Enumerate,
    Verify,
    Oracle,
    Realizable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeSel {
    Cyclic,
    Metacyclic,
    Both,
}

impl TypeSel {
    fn types(self) -> Vec<PqType> {
        match self {
            TypeSel::Cyclic => vec![PqType::Cyclic],
            TypeSel::Metacyclic => vec![PqType::Metacyclic],
            TypeSel::Both => vec![PqType::Cyclic, PqType::Metacyclic],
        }
    }

    fn name(self) -> &'static str {
        match self {
            TypeSel::Cyclic => "cyclic",
            TypeSel::Metacyclic => "metacyclic",
            TypeSel::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub q: Option<u64>,
    pub n: Option<u64>,
    pub ty: TypeSel,
    pub caps: Caps,
    pub workers: usize,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.caps.elements == 0 || self.caps.subgroups == 0 {
            return Err(Error::InvalidSpec("caps must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidSpec("worker count must be at least 1".into()));
        }
        if let Some(q) = self.q {
            sophie_germain_params(q)?;
        }
        let needs_q = matches!(self.command, Command::Catalog | Command::Verify);
        if needs_q && self.q.is_none() {
            return Err(Error::InvalidSpec("--q is required".into()));
        }
        if matches!(self.command, Command::Enumerate | Command::Realizable) && self.q.is_none() && self.n.is_none() {
            return Err(Error::InvalidSpec("--q or --n is required".into()));
        }
        Ok(())
    }

    fn exec(&self) -> Exec {
        Exec::from_workers(self.workers)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(rename = "type")]
    pub ty: TypeSel,
}

/// A catalog row or enumerated class in the stable schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassRow {
    pub table: String,
    pub key: String,
    pub params: BTreeMap<String, u64>,
    pub order: u64,
    pub structure: String,
    pub num_groups: u64,
    pub aut_pair_order: u64,
    pub hgs: Hgs,
    pub acg: bool,
}

impl From<&CatalogRow> for ClassRow {
    fn from(r: &CatalogRow) -> Self {
        ClassRow {
            table: format!("{:?}", r.table),
            key: r.key.clone(),
            params: r.params.clone(),
            order: r.order,
            structure: r.structure.clone(),
            num_groups: r.num_groups,
            aut_pair_order: r.aut_pair_order,
            hgs: r.hgs,
            acg: r.acg,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleRow {
    pub group: String,
    pub degree: u64,
    pub order: u64,
    pub n_type: String,
    pub oracle: u64,
    pub formula: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictRow {
    pub group: String,
    pub degree: u64,
    pub order: u64,
    pub verdict: String,
    pub types: Vec<String>,
}

impl VerdictRow {
    fn new(group: String, g: &PermGroup, v: &Verdict) -> Self {
        let (verdict, types) = match v {
            Verdict::Maybe => ("maybe".to_string(), Vec::new()),
            Verdict::Yes { types } => ("yes".to_string(), types.iter().map(|t| t.label()).collect()),
            Verdict::NoDerivedLength { derived_length } => (
                match derived_length {
                    Some(l) => format!("no: derived length {l}"),
                    None => "no: not soluble".to_string(),
                },
                Vec::new(),
            ),
            Verdict::NoOrder => ("no: order divides no holomorph".to_string(), Vec::new()),
            Verdict::NoEmbedding => ("no: not in any holomorph".to_string(), Vec::new()),
        };
        VerdictRow {
            group,
            degree: g.degree() as u64,
            order: g.order() as u64,
            verdict,
            types,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Row {
    Class(ClassRow),
    Diff(Diff),
    Reading(ReadingCheck),
    Oracle(OracleRow),
    Verdict(VerdictRow),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub groups: u64,
    pub classes: u64,
    pub diffs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl Report {
    fn new(config: &RunConfig, sg: Option<&SophieGermain>, rows: Vec<Row>) -> Self {
        let mut summary = Summary {
            groups: 0,
            classes: 0,
            diffs: 0,
        };
        for r in &rows {
            match r {
                Row::Class(c) => {
                    summary.groups += c.num_groups;
                    summary.classes += 1;
                }
                Row::Diff(_) => summary.diffs += 1,
                _ => {}
            }
        }
        Report {
            meta: Meta {
                tool: "hgs".to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                command: config.command,
                q: sg.map(|s| s.q),
                p: sg.map(|s| s.p),
                r: sg.map(|s| s.r),
                s: sg.map(|s| s.s),
                n: if sg.is_some() { None } else { config.n },
                ty: config.ty,
            },
            rows,
            summary,
        }
    }

    /// Zero discrepancies.
    pub fn is_clean(&self) -> bool {
        self.summary.diffs == 0
    }
}

/// Execute a validated configuration on a pool of `config.workers` threads.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    Exec::install(config.workers, || dispatch(config))
}

fn dispatch(config: &RunConfig) -> Result<Report> {
    let sg = config.q.map(sophie_germain_params).transpose()?;
    let exec = config.exec();
    let caps = config.caps;
    let rows = match config.command {
        Command::Catalog => catalog_rows(sg.as_ref().expect("validated"), config.ty),
        Command::Verify => verify_rows(sg.as_ref().expect("validated"), config.ty, caps, exec)?,
        Command::Enumerate => match &sg {
            Some(sg) => enumerate_pq(sg, config.ty, caps, exec)?,
            None => enumerate_n(config.n.expect("validated"), caps, exec)?,
        },
        Command::Oracle => oracle_rows(config.n, caps, exec)?,
        Command::Realizable => {
            let n = match (&sg, config.n) {
                (Some(sg), _) => sg.p * sg.q,
                (None, Some(n)) => n,
                _ => unreachable!("validated"),
            };
            realizable_rows(n, caps, exec)?
        }
    };
    Ok(Report::new(config, sg.as_ref(), rows))
}

fn catalog_rows(sg: &SophieGermain, ty: TypeSel) -> Vec<Row> {
    let rows = match ty {
        TypeSel::Cyclic => catalog::cyclic_catalog(sg),
        TypeSel::Metacyclic => catalog::metacyclic_catalog(sg),
        TypeSel::Both => catalog::both_types(sg),
    };
    rows.iter().map(|r| Row::Class(r.into())).collect()
}

fn verify_rows(sg: &SophieGermain, ty: TypeSel, caps: Caps, exec: Exec) -> Result<Vec<Row>> {
    let mut rows = catalog_rows(sg, ty);
    let mut diffs = Vec::new();
    let mut readings = Vec::new();
    let mut ens = Vec::new();
    for t in ty.types() {
        let en = Enumeration::run(pq_holomorph(sg, t, caps.elements)?, caps, exec)?;
        diffs.extend(catalog::cross_check(&catalog::catalog(sg, t), sg, t, &en, caps, exec)?);
        if t == PqType::Metacyclic {
            readings = catalog::reading_checks(sg, &en, caps, exec);
        }
        ens.push(en);
    }
    if ty == TypeSel::Both {
        diffs.extend(catalog::cross_check_both(sg, &ens[0], &ens[1], exec));
    }
    rows.extend(readings.into_iter().map(Row::Reading));
    rows.extend(diffs.into_iter().map(Row::Diff));
    Ok(rows)
}

fn class_rows(en: &Enumeration, table: &str, key: &str, ty: Option<PqType>, labels: &[Option<&CatalogRow>]) -> Vec<Row> {
    en.classes
        .iter()
        .enumerate()
        .map(|(ci, class)| {
            let rep = &en.pairs[class.representative];
            let e = en.counts[ci].e;
            let cyclic = ty.map_or(en.tabled.hol.spec.is_cyclic(), |t| t == PqType::Cyclic);
            let (key, structure) = match labels.get(ci).copied().flatten() {
                Some(row) => (row.key.clone(), row.structure.clone()),
                None => (
                    key.to_string(),
                    match rep.class_key.derived_length {
                        Some(l) => format!("derived length {l}, centre of order {}", rep.class_key.center_order),
                        None => "not soluble".to_string(),
                    },
                ),
            };
            let mut params = labels.get(ci).copied().flatten().map(|r| r.params.clone()).unwrap_or_default();
            params.insert("class".to_string(), ci as u64 + 1);
            Row::Class(ClassRow {
                table: table.to_string(),
                key,
                params,
                order: rep.order as u64,
                structure,
                num_groups: class.members.len() as u64,
                aut_pair_order: rep.aut_pair_order,
                hgs: if cyclic {
                    Hgs { cyclic: e, nonabelian: 0 }
                } else {
                    Hgs { cyclic: 0, nonabelian: e }
                },
                acg: rep.acg,
            })
        })
        .collect()
}

fn enumerate_pq(sg: &SophieGermain, ty: TypeSel, caps: Caps, exec: Exec) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for t in ty.types() {
        let en = Enumeration::run(pq_holomorph(sg, t, caps.elements)?, caps, exec)?;
        let cat = catalog::catalog(sg, t);
        let matched = catalog::match_rows(&cat, sg, &en);
        let mut labels: Vec<Option<&CatalogRow>> = vec![None; en.classes.len()];
        for (ri, ci) in matched.iter().enumerate() {
            if let Some(ci) = ci {
                labels[*ci] = Some(&cat[ri]);
            }
        }
        rows.extend(class_rows(&en, &format!("E-{}", t.name()), t.name(), Some(t), &labels));
    }
    Ok(rows)
}

fn enumerate_n(n: u64, caps: Caps, exec: Exec) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for spec in enumerate_specs(n)? {
        let en = Enumeration::run(build_holomorph(&spec, caps.elements)?, caps, exec)?;
        rows.extend(class_rows(&en, "E", &spec.label(), None, &[]));
    }
    Ok(rows)
}

fn oracle_rows(n: Option<u64>, caps: Caps, exec: Exec) -> Result<Vec<Row>> {
    let degrees: Vec<usize> = match n {
        Some(n) => vec![n as usize],
        None => (1..=6).collect(),
    };
    let mut rows = Vec::new();
    let mut diffs = Vec::new();
    for d in degrees {
        for (i, g) in oracle::transitive_groups(d, caps, exec)?.into_iter().enumerate() {
            let label = format!("T{d}.{}", i + 1);
            let res = oracle::verify(&SubgroupPair::new(g), &label, caps, exec)?;
            for (t, &count) in &res.oracle {
                let formula = res.formula.get(t).copied().unwrap_or(0);
                rows.push(Row::Oracle(OracleRow {
                    group: label.clone(),
                    degree: d as u64,
                    order: res.order as u64,
                    n_type: t.clone(),
                    oracle: count,
                    formula,
                }));
                if count != formula {
                    diffs.push(Row::Diff(Diff {
                        row: format!("{label} {t}"),
                        field: "hgs".to_string(),
                        expected: formula.to_string(),
                        found: count.to_string(),
                    }));
                }
            }
        }
    }
    rows.extend(diffs);
    Ok(rows)
}

fn realizable_rows(n: u64, caps: Caps, exec: Exec) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    if let Ok(w) = wreath_counterexample(n, caps.elements) {
        let pair = SubgroupPair::new(w.group.clone());
        let v = realizability_filter(&pair, caps, exec)?;
        rows.push(Row::Verdict(VerdictRow::new(format!("C_{} wr C_{}", w.p, w.m), &w.group, &v)));
    }
    for spec in enumerate_specs(n)? {
        let g = build_group(&spec)?;
        let v = realizability_filter(&SubgroupPair::new(g.clone()), caps, exec)?;
        rows.push(Row::Verdict(VerdictRow::new(format!("regular {}", spec.label()), &g, &v)));
    }
    if n as usize <= oracle::ORACLE_MAX_DEGREE {
        for (i, g) in oracle::transitive_groups(n as usize, caps, exec)?.into_iter().enumerate() {
            let v = realizability_filter(&SubgroupPair::new(g.clone()), caps, exec)?;
            rows.push(Row::Verdict(VerdictRow::new(format!("T{n}.{}", i + 1), &g, &v)));
        }
    }
    Ok(rows)
}

/// Render a report. Identical reports give identical bytes.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => emit_csv(report),
        Format::Md => emit_md(report),
    }
}

const CSV_HEADER: [&str; 16] = [
    "kind",
    "table",
    "key",
    "params",
    "order",
    "structure",
    "num_groups",
    "aut_pair_order",
    "hgs_cyclic",
    "hgs_nonabelian",
    "acg",
    "field",
    "expected",
    "found",
    "detail",
    "supported",
];

fn params_string(p: &BTreeMap<String, u64>) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

fn csv_record(row: &Row) -> [String; 16] {
    let mut r: [String; 16] = Default::default();
    match row {
        Row::Class(c) => {
            r[0] = "class".into();
            r[1] = c.table.clone();
            r[2] = c.key.clone();
            r[3] = params_string(&c.params);
            r[4] = c.order.to_string();
            r[5] = c.structure.clone();
            r[6] = c.num_groups.to_string();
            r[7] = c.aut_pair_order.to_string();
            r[8] = c.hgs.cyclic.to_string();
            r[9] = c.hgs.nonabelian.to_string();
            r[10] = c.acg.to_string();
        }
        Row::Diff(d) => {
            r[0] = "diff".into();
            r[2] = d.row.clone();
            r[11] = d.field.clone();
            r[12] = d.expected.clone();
            r[13] = d.found.clone();
        }
        Row::Reading(c) => {
            r[0] = "reading".into();
            r[2] = c.item.clone();
            r[5] = c.reading.clone();
            r[14] = c.detail.clone();
            r[15] = c.supported.to_string();
        }
        Row::Oracle(o) => {
            r[0] = "oracle".into();
            r[2] = o.group.clone();
            r[3] = format!("degree={}", o.degree);
            r[4] = o.order.to_string();
            r[5] = o.n_type.clone();
            r[12] = o.formula.to_string();
            r[13] = o.oracle.to_string();
        }
        Row::Verdict(v) => {
            r[0] = "verdict".into();
            r[2] = v.group.clone();
            r[3] = format!("degree={}", v.degree);
            r[4] = v.order.to_string();
            r[5] = v.types.join(";");
            r[14] = v.verdict.clone();
        }
    }
    r
}

fn emit_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in &report.rows {
        w.write_record(csv_record(row)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn md_table(out: &mut String, header: &[&str], lines: &[Vec<String>]) {
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}|", header.iter().map(|_| "---").collect::<Vec<_>>().join("|"));
    for l in lines {
        let _ = writeln!(out, "| {} |", l.join(" | "));
    }
    out.push('\n');
}

fn emit_md(report: &Report) -> String {
    let m = &report.meta;
    let mut out = String::new();
    let mut title = format!("# {} {:?}", m.tool, m.command).to_lowercase();
    if let (Some(q), Some(p)) = (m.q, m.p) {
        let _ = write!(title, " q={q} p={p} n={}", p * q);
    } else if let Some(n) = m.n {
        let _ = write!(title, " n={n}");
    }
    let _ = write!(title, " type={}", m.ty.name());
    let _ = writeln!(out, "{title}\n");

    let classes: Vec<&ClassRow> = report
        .rows
        .iter()
        .filter_map(|r| if let Row::Class(c) = r { Some(c) } else { None })
        .collect();
    let mut tables: Vec<&str> = classes.iter().map(|c| c.table.as_str()).collect();
    tables.dedup();
    for t in tables {
        let rows: Vec<&&ClassRow> = classes.iter().filter(|c| c.table == t).collect();
        let _ = writeln!(out, "## {t}\n");
        match t {
            "T3" => md_table(
                &mut out,
                &["Key", "(c, d)", "Order", "Structure", "Groups", "|Aut(G,G')|", "HGS"],
                &rows
                    .iter()
                    .map(|c| {
                        let cd = match (c.params.get("c"), c.params.get("d")) {
                            (Some(cc), Some(d)) => format!("({cc}, {d})"),
                            _ => "-".into(),
                        };
                        vec![
                            c.key.clone(),
                            cd,
                            c.order.to_string(),
                            c.structure.clone(),
                            c.num_groups.to_string(),
                            c.aut_pair_order.to_string(),
                            c.hgs.cyclic.to_string(),
                        ]
                    })
                    .collect::<Vec<_>>(),
            ),
            "T5" => md_table(
                &mut out,
                &["Order", "Structure", "u", "Groups", "|Aut(G,G')|", "HGS", "acG"],
                &rows
                    .iter()
                    .map(|c| {
                        vec![
                            c.key.clone(),
                            c.structure.clone(),
                            c.params.get("u").map_or("-".into(), u64::to_string),
                            c.num_groups.to_string(),
                            c.aut_pair_order.to_string(),
                            c.hgs.nonabelian.to_string(),
                            if c.acg { "yes" } else { "no" }.into(),
                        ]
                    })
                    .collect::<Vec<_>>(),
            ),
            "T6" => md_table(
                &mut out,
                &["Order", "Structure", "Cyclic", "Non-abelian"],
                &rows
                    .iter()
                    .map(|c| {
                        vec![
                            c.key.clone(),
                            c.structure.clone(),
                            c.hgs.cyclic.to_string(),
                            c.hgs.nonabelian.to_string(),
                        ]
                    })
                    .collect::<Vec<_>>(),
            ),
            _ => md_table(
                &mut out,
                &[
                    "Key",
                    "Params",
                    "Order",
                    "Structure",
                    "Groups",
                    "|Aut(G,G')|",
                    "HGS cyclic",
                    "HGS non-abelian",
                    "acG",
                ],
                &rows
                    .iter()
                    .map(|c| {
                        vec![
                            c.key.clone(),
                            params_string(&c.params),
                            c.order.to_string(),
                            c.structure.clone(),
                            c.num_groups.to_string(),
                            c.aut_pair_order.to_string(),
                            c.hgs.cyclic.to_string(),
                            c.hgs.nonabelian.to_string(),
                            if c.acg { "yes" } else { "no" }.into(),
                        ]
                    })
                    .collect::<Vec<_>>(),
            ),
        }
    }
    let oracle: Vec<Vec<String>> = report
        .rows
        .iter()
        .filter_map(|r| match r {
            Row::Oracle(o) => Some(vec![
                o.group.clone(),
                o.order.to_string(),
                o.n_type.clone(),
                o.oracle.to_string(),
                o.formula.to_string(),
            ]),
            _ => None,
        })
        .collect();
    if !oracle.is_empty() {
        let _ = writeln!(out, "## Oracle\n");
        md_table(&mut out, &["Group", "Order", "Type", "Sym(X) count", "Formula count"], &oracle);
    }
    let verdicts: Vec<Vec<String>> = report
        .rows
        .iter()
        .filter_map(|r| match r {
            Row::Verdict(v) => Some(vec![v.group.clone(), v.order.to_string(), v.verdict.clone(), v.types.join(", ")]),
            _ => None,
        })
        .collect();
    if !verdicts.is_empty() {
        let _ = writeln!(out, "## Realizability\n");
        md_table(&mut out, &["Group", "Order", "Verdict", "Types"], &verdicts);
    }
    let readings: Vec<Vec<String>> = report
        .rows
        .iter()
        .filter_map(|r| match r {
            Row::Reading(c) => Some(vec![
                c.item.clone(),
                c.reading.clone(),
                if c.supported { "yes" } else { "no" }.into(),
                c.detail.clone(),
            ]),
            _ => None,
        })
        .collect();
    if !readings.is_empty() {
        let _ = writeln!(out, "## Printed variants\n");
        md_table(&mut out, &["Item", "Reading", "Supported", "Detail"], &readings);
    }
    let diffs: Vec<Vec<String>> = report
        .rows
        .iter()
        .filter_map(|r| match r {
            Row::Diff(d) => Some(vec![d.row.clone(), d.field.clone(), d.expected.clone(), d.found.clone()]),
            _ => None,
        })
        .collect();
    if !diffs.is_empty() {
        let _ = writeln!(out, "## Discrepancies\n");
        md_table(&mut out, &["Row", "Field", "Expected", "Found"], &diffs);
    }
    let s = &report.summary;
    let _ = writeln!(out, "Groups: {}. Classes: {}. Discrepancies: {}.", s.groups, s.classes, s.diffs);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(command: Command, q: Option<u64>, ty: TypeSel) -> RunConfig {
        RunConfig {
            command,
            q,
            n: None,
            ty,
            caps: Caps::default(),
            workers: 1,
        }
    }

    #[test]
    fn cyclic_catalog_totals() {
        let r = run(&config(Command::Catalog, Some(3), TypeSel::Cyclic)).unwrap();
        assert_eq!((r.summary.groups, r.summary.classes, r.summary.diffs), (14, 12, 0));
    }

    #[test]
    fn validation() {
        assert_eq!(
            run(&config(Command::Catalog, Some(7), TypeSel::Cyclic)),
            Err(Error::NotSophieGermain(7))
        );
        let mut c = config(Command::Catalog, Some(3), TypeSel::Cyclic);
        c.workers = 0;
        assert!(run(&c).is_err());
        assert!(run(&config(Command::Verify, None, TypeSel::Cyclic)).is_err());
    }

    #[test]
    fn empty_report() {
        let r = Report::new(&config(Command::Catalog, None, TypeSel::Both), None, Vec::new());
        assert_eq!(r.summary.groups, 0);
        let back: Report = serde_json::from_str(&emit(&r, Format::Json)).unwrap();
        assert_eq!(back, r);
        assert!(emit(&r, Format::Csv).starts_with("kind,table,key"));
    }

    #[test]
    fn round_trip_and_determinism() {
        for ty in [TypeSel::Cyclic, TypeSel::Metacyclic, TypeSel::Both] {
            let c = config(Command::Catalog, Some(5), ty);
            let a = run(&c).unwrap();
            let b = run(&c).unwrap();
            for f in [Format::Json, Format::Csv, Format::Md] {
                assert_eq!(emit(&a, f), emit(&b, f));
            }
            let back: Report = serde_json::from_str(&emit(&a, Format::Json)).unwrap();
            assert_eq!(back, a);
        }
        let mixed = Report::new(
            &config(Command::Verify, Some(3), TypeSel::Cyclic),
            None,
            vec![
                Row::Diff(Diff {
                    row: "x".into(),
                    field: "hgs".into(),
                    expected: "1".into(),
                    found: "2".into(),
                }),
                Row::Reading(ReadingCheck {
                    item: "i".into(),
                    reading: "r".into(),
                    supported: true,
                    detail: "d".into(),
                }),
                Row::Oracle(OracleRow {
                    group: "T3.1".into(),
                    degree: 3,
                    order: 3,
                    n_type: "C_3".into(),
                    oracle: 1,
                    formula: 1,
                }),
                Row::Verdict(VerdictRow {
                    group: "g".into(),
                    degree: 6,
                    order: 6,
                    verdict: "yes".into(),
                    types: vec!["C_6".into()],
                }),
            ],
        );
        let back: Report = serde_json::from_str(&emit(&mixed, Format::Json)).unwrap();
        assert_eq!(back, mixed);
        assert_eq!(mixed.summary.diffs, 1);
    }

    #[test]
    fn table_six_markdown() {
        let r = run(&config(Command::Catalog, Some(3), TypeSel::Both)).unwrap();
        let md = emit(&r, Format::Md);
        let body: Vec<&str> = md.lines().filter(|l| l.starts_with("| ") && !l.starts_with("| Order")).collect();
        assert_eq!(body.len(), 6);
        assert!(md.contains("| pq | C_p ⋊ C_q | 7 | 16 |"));
    }
}
