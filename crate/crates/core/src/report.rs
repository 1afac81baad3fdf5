//! Tables and JSON documents for the command-line front end.
//!
//! Every document carries `"schema": 1`. Rows follow the record order of the
//! pipeline (ascending length, then coefficients), so that identical runs give
//! byte-identical output.

use serde_json::{json, Value};

use crate::algebra::Element;
use crate::assoc::AssocReport;
use crate::automorphism::{orbit_of, same_point};
use crate::catalog::{AxiomReport, CatalogEntry, NsType};
use crate::error::{Error, Result};
use crate::idempotent::family::on_family;
use crate::idempotent::known::{named_elements, parse_named};
use crate::idempotent::{Certification, IdempotentSet, FAMILY_TOL};
use crate::reference;
use crate::spectral::{spectrum, SpectrumReport};
use crate::verify::{tally, Check, Pipeline, Status};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Markdown,
    Csv,
    Json,
}

/// A titled grid of cells with trailing notes.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Table {
        Table { title: title.into(), headers: headers.iter().map(|h| h.to_string()).collect(), ..Table::default() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn widths(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (k, c) in r.iter().enumerate() {
                w[k] = w[k].max(c.chars().count());
            }
        }
        w
    }

    pub fn to_text(&self) -> String {
        let w = self.widths();
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> = cells.iter().zip(&w).map(|(c, &n)| format!("{c}{}", " ".repeat(n - c.chars().count()))).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut s = format!("{}\n", self.title);
        s += &line(&self.headers);
        s += &line(&w.iter().map(|&n| "-".repeat(n)).collect::<Vec<_>>());
        for r in &self.rows {
            s += &line(r);
        }
        for n in &self.notes {
            s += &format!("{n}\n");
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let esc = |c: &str| c.replace('|', "\\|");
        let mut s = format!("### {}\n\n", self.title);
        s += &format!("| {} |\n", self.headers.iter().map(|h| esc(h)).collect::<Vec<_>>().join(" | "));
        s += &format!("|{}\n", "---|".repeat(self.headers.len()));
        for r in &self.rows {
            s += &format!("| {} |\n", r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | "));
        }
        if !self.notes.is_empty() {
            s.push('\n');
            for n in &self.notes {
                s += &format!("{n}\n");
            }
        }
        s
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Output(e.to_string());
        w.write_record(&self.headers).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Output(e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.headers.iter().cloned().zip(r.iter().map(|c| Value::String(c.clone()))).collect()))
            .collect();
        json!({ "schema": SCHEMA, "title": self.title, "columns": self.headers, "rows": rows, "notes": self.notes })
    }

    pub fn render(&self, f: Format) -> Result<String> {
        Ok(match f {
            Format::Table => self.to_text(),
            Format::Markdown => self.to_markdown(),
            Format::Csv => self.to_csv()?,
            Format::Json => pretty(&self.to_json()),
        })
    }
}

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn certification_json(c: &Certification) -> Value {
    match c {
        Certification::Exact => json!({ "kind": "exact" }),
        Certification::Interval { radius } => json!({ "kind": "interval", "radius": radius }),
    }
}

fn certification_text(c: &Certification) -> String {
    match c {
        Certification::Exact => "exact".into(),
        Certification::Interval { radius } => format!("ball r = {radius:e}"),
    }
}

fn spectrum_json(s: &SpectrumReport) -> Value {
    json!({
        "multiset": s.multiset(),
        "semisimple": s.semisimple,
        "d": s.d,
        "mult1": s.mult1,
    })
}

/// `ns build`: the completed structure, the automorphism group order and the axiom checks.
pub fn build_document(entry: &CatalogEntry, axioms: &AxiomReport) -> Value {
    json!({
        "schema": SCHEMA,
        "type": entry.tag.as_str(),
        "dimension": entry.n(),
        "automorphism_group_order": entry.group.len(),
        "axioms": axioms,
        "axioms_pass": axioms.passed(),
        "spec": entry.spec().as_ref(),
    })
}

pub fn build_table(entry: &CatalogEntry, axioms: &AxiomReport) -> Table {
    let spec = entry.spec();
    let mut t = Table::new(format!("V_{} (dimension {}, |Aut| = {})", entry.tag, entry.n(), entry.group.len()), &["Product", "Value"]);
    for i in 0..spec.dim() {
        for j in i..spec.dim() {
            let v = spec.element(spec.basis_product(i, j).to_vec()).expect("table rows have the basis dimension");
            t.push(vec![format!("{}·{}", spec.label(i), spec.label(j)), v.to_string()]);
        }
    }
    for i in 0..spec.dim() {
        for j in i..spec.dim() {
            t.push(vec![format!("({}, {})", spec.label(i), spec.label(j)), spec.gram()[(i, j)].to_string()]);
        }
    }
    t.notes.push(format!(
        "M1 on {} basis triples: {}; form positive definite: {}; axes {}: {}",
        axioms.frobenius_triples,
        pass_word(axioms.frobenius),
        axioms.gram_positive_definite,
        axioms.axes.iter().map(|a| a.label.as_str()).collect::<Vec<_>>().join(", "),
        pass_word(axioms.axes.iter().all(|a| a.passed())),
    ));
    t
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// `ns idempotents`: every record with its certification.
pub fn idempotents_document(set: &IdempotentSet) -> Value {
    let records: Vec<Value> = set
        .records
        .iter()
        .map(|r| {
            json!({
                "name": r.label(),
                "orbit": r.orbit_id,
                "element": r.element.to_json(),
                "length": r.length,
                "spectrum": spectrum_json(&r.spectrum),
                "indecomposable": r.indecomposable,
                "certification": certification_json(&r.certification),
                "source": r.source,
            })
        })
        .collect();
    let family = set.family.as_ref().map(|f| {
        json!({
            "lambda_min": f.lambda_min,
            "lambda_max": f.lambda_max,
            "length": f.length,
            "exceptional": f.exceptional.iter().map(|(l, d, m)| json!({ "lambda": l, "d": d, "mult1": m })).collect::<Vec<_>>(),
            "traced_points": f.traced_points,
            "closed": f.closed,
        })
    });
    json!({
        "schema": SCHEMA,
        "type": set.type_tag.as_str(),
        "strategy": set.strategy,
        "count": set.len(),
        "orbits": set.orbits.classes.len(),
        "records": records,
        "family": family,
        "unresolved": set.unresolved.len(),
        "missed_known": set.missed_known.len(),
        "discrepancies": set.discrepancies.iter().map(|d| json!({ "name": d.name, "detail": d.detail })).collect::<Vec<_>>(),
    })
}

pub fn idempotents_table(set: &IdempotentSet) -> Table {
    let mut t = Table::new(
        format!("Idempotents of V_{} ({} isolated, strategy {})", set.type_tag, set.len(), set.strategy),
        &["#", "Name", "Orbit", "Length", "Spectrum", "Certification"],
    );
    for (i, r) in set.records.iter().enumerate() {
        t.push(vec![i.to_string(), r.label(), r.orbit_id.to_string(), r.length.to_string(), r.spectrum.display(), certification_text(&r.certification)]);
    }
    if let Some(f) = &set.family {
        t.notes.push(format!(
            "plus the family y(λ), λ ∈ [{}, {}], of length {}; 0 or 1 is repeated at λ ∈ {{{}}}",
            f.lambda_min,
            f.lambda_max,
            f.length,
            f.exceptional.iter().map(|(l, _, _)| l.to_string()).collect::<Vec<_>>().join(", ")
        ));
    }
    for d in &set.discrepancies {
        t.notes.push(format!("published {} is not an idempotent: {}", d.name, d.detail));
    }
    t
}

/// One row of the orbit-representative spectra table.
#[derive(Debug, Clone)]
pub struct OrbitRow {
    pub label: String,
    pub size: usize,
    pub spectrum: SpectrumReport,
    /// Orbit class of the records, `None` for a family member.
    pub class: Option<usize>,
    /// The row is printed in the published table.
    pub published: bool,
}

/// Rows in the order of the published table, then the unlisted orbits in
/// record order. `0` and `id` are omitted; for 6A, whose table lists only
/// one of `x` and `id − x`, complements of listed orbits are omitted too.
pub fn orbit_rows(p: &Pipeline) -> Result<Vec<OrbitRow>> {
    let (names, _) = named_elements(&p.entry)?;
    let id = p.entry.identity();
    let set = &p.set;
    let record_of = |x: &Element| set.records.iter().position(|r| same_point(&r.element, x));
    let fold_complements = p.entry.tag == NsType::A6;
    let mut covered = vec![false; set.orbits.classes.len()];
    for (i, r) in set.records.iter().enumerate() {
        if r.element.is_zero() || same_point(&r.element, &id) {
            covered[set.orbits.class_of[i]] = true;
        }
    }
    let mut rows = Vec::new();
    for row in reference::SPECTRA.iter().filter(|r| r.type_tag == p.entry.tag) {
        let x = parse_named(&p.entry, &names, row.expr)?;
        match record_of(&x) {
            Some(i) => {
                let class = set.orbits.class_of[i];
                if covered[class] {
                    continue;
                }
                covered[class] = true;
                if fold_complements {
                    if let Some(c) = record_of(&id.try_sub(&x)?) {
                        covered[set.orbits.class_of[c]] = true;
                    }
                }
                rows.push(OrbitRow { label: row.label.into(), size: set.orbits.classes[class].len(), spectrum: set.records[i].spectrum.clone(), class: Some(class), published: true });
            }
            None if on_family(&p.entry, &x.to_f64(), FAMILY_TOL) => {
                rows.push(OrbitRow { label: row.label.into(), size: orbit_of(&set.group, &x)?.len(), spectrum: spectrum(&x)?, class: None, published: true });
            }
            None => return Err(Error::Contradiction(format!("published row {} is not an idempotent", row.label))),
        }
    }
    for (class, members) in set.orbits.classes.iter().enumerate() {
        if covered[class] {
            continue;
        }
        covered[class] = true;
        let rep = &set.records[members[0]];
        if fold_complements {
            if let Some(c) = record_of(&id.try_sub(&rep.element)?) {
                covered[set.orbits.class_of[c]] = true;
            }
        }
        rows.push(OrbitRow { label: format!("[{}]", rep.label()), size: members.len(), spectrum: rep.spectrum.clone(), class: Some(class), published: false });
    }
    Ok(rows)
}

pub fn spectra_table(p: &Pipeline, representatives: bool) -> Result<Table> {
    let tag = p.entry.tag;
    if !representatives {
        let mut t = Table::new(format!("Spectra of the idempotents of V_{tag}"), &["Idempotent", "Orbit", "Spectrum", "Semisimple"]);
        for r in &p.set.records {
            t.push(vec![r.label(), r.orbit_id.to_string(), r.spectrum.display(), r.spectrum.semisimple.to_string()]);
        }
        return Ok(t);
    }
    let mut t = Table::new(format!("Spectra of the idempotents of V_{tag}"), &["Orbit", "Size", "Spectrum"]);
    for row in orbit_rows(p)? {
        t.push(vec![row.label, row.size.to_string(), row.spectrum.display()]);
    }
    if tag == NsType::A6 {
        t.notes.push(format!("The missing idempotents are id_{tag} − x, for x listed above."));
    }
    if let Some(f) = &p.set.family {
        t.notes.push(format!("Rows on the family y(λ), λ ∈ [{}, {}], are its members; the family itself is not listed.", f.lambda_min, f.lambda_max));
    }
    Ok(t)
}

pub fn spectra_document(p: &Pipeline, representatives: bool) -> Result<Value> {
    let rows: Vec<Value> = if representatives {
        orbit_rows(p)?
            .iter()
            .map(|r| json!({ "orbit": r.label, "size": r.size, "spectrum": spectrum_json(&r.spectrum), "published": r.published }))
            .collect()
    } else {
        p.set.records.iter().map(|r| json!({ "name": r.label(), "orbit": r.orbit_id, "spectrum": spectrum_json(&r.spectrum) })).collect()
    };
    Ok(json!({ "schema": SCHEMA, "type": p.entry.tag.as_str(), "orbit_representatives": representatives, "rows": rows }))
}

/// `ns orbits`: representative, size and spectrum per class, including 0 and id.
pub fn orbits_table(set: &IdempotentSet) -> Table {
    let mut t = Table::new(
        format!("Orbits of Aut(V_{}) (order {}) on {} idempotents", set.type_tag, set.group.len(), set.len()),
        &["Class", "Representative", "Size", "Spectrum"],
    );
    for (k, members) in set.orbits.classes.iter().enumerate() {
        let r = &set.records[members[0]];
        t.push(vec![k.to_string(), r.label(), members.len().to_string(), r.spectrum.display()]);
    }
    t
}

pub fn orbits_document(set: &IdempotentSet) -> Value {
    let classes: Vec<Value> = set
        .orbits
        .classes
        .iter()
        .map(|members| {
            let r = &set.records[members[0]];
            json!({
                "representative": r.label(),
                "size": members.len(),
                "members": members.iter().map(|&i| set.records[i].label()).collect::<Vec<_>>(),
                "spectrum": spectrum_json(&r.spectrum),
            })
        })
        .collect();
    json!({ "schema": SCHEMA, "type": set.type_tag.as_str(), "group_order": set.group.len(), "classes": classes })
}

/// `ns assoc`: the maximal associative subalgebras (or every listed one).
pub fn assoc_table(r: &AssocReport, maximal_only: bool) -> Table {
    let mut t = Table::new(
        format!(
            "Maximal associative subalgebras of V_{} ({} trivial, {} non-trivial; enumerator {})",
            r.type_tag,
            r.trivial_count(),
            r.nontrivial_count(),
            r.enumerator
        ),
        &["Basis", "Dimension", "Kind", "Orbit", "Orbit size"],
    );
    for s in r.maximal.iter().filter(|s| s.is_maximal || !maximal_only) {
        t.push(vec![
            format!("⟨⟨{}⟩⟩", r.basis_labels(s).join(", ")),
            s.dim.to_string(),
            if s.is_trivial { "trivial" } else { "non-trivial" }.into(),
            s.orbit_id.to_string(),
            r.orbit_sizes[s.orbit_id].to_string(),
        ]);
    }
    if let Some(f) = &r.family {
        t.notes.push(format!(
            "plus the trivial maximal subalgebras ⟨⟨y(λ), id − y(λ)⟩⟩ for λ ∈ [{}, {}] outside {{{}}}",
            f.lambda_min,
            f.lambda_max,
            f.excluded.iter().map(|(l, _, _)| l.to_string()).collect::<Vec<_>>().join(", ")
        ));
    }
    t.notes.push(format!("largest set of pairwise orthogonal nonzero idempotents: {}", r.max_clique));
    t
}

pub fn assoc_document(r: &AssocReport, maximal_only: bool) -> Value {
    let subalgebras: Vec<Value> = r
        .maximal
        .iter()
        .filter(|s| s.is_maximal || !maximal_only)
        .map(|s| {
            json!({
                "basis": r.basis_labels(s),
                "dimension": s.dim,
                "trivial": s.is_trivial,
                "orbit": s.orbit_id,
                "orbit_size": r.orbit_sizes[s.orbit_id],
            })
        })
        .collect();
    let family = r.family.as_ref().map(|f| {
        json!({
            "lambda_min": f.lambda_min,
            "lambda_max": f.lambda_max,
            "excluded": f.excluded.iter().map(|(l, _, _)| l).collect::<Vec<_>>(),
        })
    });
    json!({
        "schema": SCHEMA,
        "type": r.type_tag.as_str(),
        "enumerator": r.enumerator,
        "trivial": r.trivial_count(),
        "nontrivial": r.nontrivial_count(),
        "nontrivial_orbit_sizes": r.nontrivial_orbit_sizes(),
        "max_orthogonal_set": r.max_clique,
        "subalgebras": subalgebras,
        "family": family,
    })
}

/// Per-type outcome of `ns verify-paper`.
pub struct TypeSummary {
    pub type_tag: NsType,
    pub idempotents: usize,
    pub trivial: usize,
    pub nontrivial: usize,
    pub checks: Vec<Check>,
}

impl TypeSummary {
    pub fn new(p: &Pipeline, checks: Vec<Check>) -> TypeSummary {
        TypeSummary {
            type_tag: p.entry.tag,
            idempotents: p.set.len(),
            trivial: p.assoc.trivial_count(),
            nontrivial: p.assoc.nontrivial_count(),
            checks,
        }
    }
}

pub fn verify_table(summaries: &[TypeSummary], verbose: bool) -> Table {
    let mut t = Table::new("Reproduction of the published results", &["Type", "Status", "Claim", "Anchor", "Expected", "Observed"]);
    let mut notes = Vec::new();
    for s in summaries {
        for c in s.checks.iter().filter(|c| verbose || c.status != Status::Pass) {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Finding => "finding",
                Status::Fail => "FAIL",
            };
            t.push(vec![c.type_tag.clone(), status.into(), c.claim.clone(), c.anchor.clone(), c.expected.clone(), c.observed.clone()]);
            if let Some(n) = &c.note {
                notes.push(format!("{} {}: {n}", c.type_tag, c.claim));
            }
        }
    }
    for s in summaries {
        let (pass, finding, fail) = tally(&s.checks);
        let maximal = if s.type_tag == NsType::A4 {
            format!("{} non-trivial maximal associative (+ family of trivial ones)", s.nontrivial)
        } else {
            format!("{} maximal associative ({} trivial + {} non-trivial)", s.trivial + s.nontrivial, s.trivial, s.nontrivial)
        };
        t.notes.push(format!("{}: {} idempotents, {maximal}; {pass} pass, {finding} findings, {fail} fail", s.type_tag, s.idempotents));
    }
    let all: Vec<Check> = summaries.iter().flat_map(|s| s.checks.iter().cloned()).collect();
    let (pass, finding, fail) = tally(&all);
    t.notes.push(format!("total: {pass} pass, {finding} findings, {fail} fail"));
    t.notes.extend(notes);
    t
}

pub fn verify_document(summaries: &[TypeSummary]) -> Value {
    let types: Vec<Value> = summaries
        .iter()
        .map(|s| {
            let (pass, finding, fail) = tally(&s.checks);
            json!({
                "type": s.type_tag.as_str(),
                "idempotents": s.idempotents,
                "maximal_trivial": s.trivial,
                "maximal_nontrivial": s.nontrivial,
                "pass": pass,
                "findings": finding,
                "fail": fail,
                "checks": s.checks,
            })
        })
        .collect();
    let all: Vec<Check> = summaries.iter().flat_map(|s| s.checks.iter().cloned()).collect();
    let (pass, finding, fail) = tally(&all);
    json!({ "schema": SCHEMA, "types": types, "summary": { "pass": pass, "findings": finding, "fail": fail } })
}
