//! Serialization of atlas, verify and catalog results.
//!
//! JSON is the stable, versioned format. Markdown is for reading.

use std::fmt::Write as _;

use serde::Serialize;

use crate::atlas::{AtlasReport, OrbitClass, RestrictedRoot};
use crate::satake::{Dims, ValidationReport};
use crate::verify::{VerifyReport, SCHEMA_VERSION, TOOL_VERSION};

#[derive(Debug, Clone, Serialize)]
struct FormSection<'a> {
    label: &'a str,
    cartan_type: &'a str,
    diagram: &'a str,
    #[serde(flatten)]
    dims: &'a Dims,
    num_positive_roots: usize,
    w0_word: &'a [usize],
    wb_word: &'a [usize],
    sigma: &'a [usize],
    tau_star: &'a [Vec<i64>],
    restricted_roots: &'a [RestrictedRoot],
}

#[derive(Debug, Clone, Serialize)]
struct Flags {
    has_open_leaves: bool,
    inadmissible_classes: usize,
}

#[derive(Debug, Clone, Serialize)]
struct AtlasDocument<'a> {
    schema_version: u32,
    tool_version: &'a str,
    seed: u64,
    catalog_hash: &'a str,
    form: FormSection<'a>,
    classes: &'a [OrbitClass],
    largest_leaf_class: usize,
    flags: Flags,
    open_class_count_note: &'a str,
    notes: &'a [String],
}

/// Pretty JSON with a trailing newline. Byte-stable for equal inputs.
pub fn atlas_json(report: &AtlasReport, seed: u64, catalog_hash: &str) -> String {
    let doc = AtlasDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        seed,
        catalog_hash,
        form: FormSection {
            label: &report.label,
            cartan_type: &report.cartan_type,
            diagram: &report.diagram,
            dims: &report.dims,
            num_positive_roots: report.num_positive_roots,
            w0_word: &report.w0_word,
            wb_word: &report.wb_word,
            sigma: &report.sigma,
            tau_star: &report.tau_star,
            restricted_roots: &report.restricted_roots,
        },
        classes: &report.classes,
        largest_leaf_class: report.largest_leaf_class,
        flags: Flags {
            has_open_leaves: report.has_open_leaves,
            inadmissible_classes: report.classes.iter().filter(|c| !c.admissible()).count(),
        },
        open_class_count_note: &report.open_class_count_note,
        notes: &report.notes,
    };
    to_json(&doc)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn word(w: &[usize]) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
    }
}

pub fn atlas_markdown(report: &AtlasReport) -> String {
    let d = &report.dims;
    let mut s = String::new();
    let _ = writeln!(s, "# {}\n", report.label);
    let _ = writeln!(s, "type {}, {}\n", report.cartan_type, report.diagram);
    let _ = writeln!(
        s,
        "dim g = {}, dim k0 = {}, dim p0 = {}, real rank = {}, dim X = {}\n",
        d.dim_g, d.dim_k0, d.dim_p0, d.real_rank, d.dim_x
    );
    let _ = writeln!(s, "w0 = {}, w_b = {}\n", word(&report.w0_word), word(&report.wb_word));
    s.push_str("| psi | codim_Y | a | t | leaf_dim | leaf_codim | family_dim | open | closed | parity | bounds |\n");
    s.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
    for (k, c) in report.classes.iter().enumerate() {
        let mark = if k == report.largest_leaf_class { " *" } else { "" };
        let _ = writeln!(
            s,
            "| {}{} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            c.psi,
            mark,
            c.codim_y,
            c.a,
            c.t,
            c.leaf_dim,
            c.leaf_codim,
            c.family_dim,
            yes(c.is_open),
            yes(c.is_closed_class),
            yes(c.parity_ok),
            yes(c.bounds_ok)
        );
    }
    let _ = writeln!(s, "\n`*` marks the class of the largest leaves.\n");
    let _ = writeln!(s, "open leaves: {}. {}\n", yes(report.has_open_leaves), report.open_class_count_note);
    for n in &report.notes {
        let _ = writeln!(s, "- {n}");
    }
    s
}

pub fn verify_json(report: &VerifyReport) -> String {
    to_json(report)
}

pub fn verify_markdown(report: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# verify {} (seed {}, {} samples)\n",
        report.form, report.seed, report.samples
    );
    s.push_str("| check | value | tol | result | detail |\n|---|---|---|---|---|\n");
    for c in &report.checks {
        let _ = writeln!(
            s,
            "| {} | {:.3e} | {:.0e} | {} | {} |",
            c.name,
            c.value,
            c.tol,
            if c.passed { "pass" } else { "FAIL" },
            c.detail
        );
    }
    if !report.observations.is_empty() {
        s.push('\n');
        for (k, v) in &report.observations {
            let _ = writeln!(s, "- {k}: {v}");
        }
    }
    s
}

#[derive(Debug, Clone, Serialize)]
struct CatalogDocument<'a> {
    schema_version: u32,
    tool_version: &'a str,
    catalog_hash: &'a str,
    entries: &'a [ValidationReport],
}

pub fn catalog_json(reports: &[ValidationReport], catalog_hash: &str) -> String {
    to_json(&CatalogDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        catalog_hash,
        entries: reports,
    })
}

pub fn catalog_markdown(reports: &[ValidationReport]) -> String {
    let mut s = String::from("| form | result | failed checks |\n|---|---|---|\n");
    for r in reports {
        let failed: Vec<String> = r
            .failures()
            .map(|c| if c.detail.is_empty() { c.name.to_string() } else { format!("{} ({})", c.name, c.detail) })
            .collect();
        let _ = writeln!(
            s,
            "| {} | {} | {} |",
            r.label,
            if r.passed() { "pass" } else { "FAIL" },
            failed.join("; ")
        );
    }
    s
}
