//! JSON and CSV rendering. Key order inside objects is alphabetical (the
//! serde_json map is a BTreeMap), so all output is byte-deterministic.

use normform::classgrp::{ClassGroupData, GenusLabel};
use normform::cohom::CohomologyReport;
use normform::qform::Form;
use serde_json::{json, Value};

pub const SCHEMA: &str = "normform-h1/1";

pub fn form_json(f: &Form) -> Value {
    json!([f.a, f.b, f.c])
}

fn opt(v: Option<u64>) -> Value {
    match v {
        Some(x) => json!(x),
        None => Value::Null,
    }
}

pub fn report_json(r: &CohomologyReport) -> Value {
    json!({
        "schema": SCHEMA,
        "d": r.d,
        "fund_disc": r.fund_disc,
        "residue_case": r.residue_case.as_str(),
        "h": r.h,
        "h_plus": r.h_plus,
        "mu": r.mu,
        "epsilon": r.epsilon,
        "eta": opt(r.eta.map(u64::from)),
        "m_d": r.m_d,
        "l_d": r.l_d,
        "m_d_literal": r.m_d_literal,
        "l_d_literal": opt(r.l_d_literal),
        "card_N": r.card_n,
        "card_Nprime": opt(r.card_nprime),
        "card_O_formula": r.card_o_formula,
        "card_O_enumeration": r.card_o_enumeration,
        "genera_count": r.genera_count,
        "genera_count_signed": r.genera_count_signed,
        "sr_size": r.sr_size,
        "duplication_ok": r.duplication_ok,
    })
}

pub const CSV_HEADER: &str = "d,case,h,h_plus,mu,eta,m_d,l_d,cardN,cardNprime,cardO,genera,dup_ok";

pub fn report_csv_row(r: &CohomologyReport) -> String {
    let eta = r.eta.map(|e| e.to_string()).unwrap_or_default();
    let card_nprime = r.card_nprime.map(|c| c.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.d,
        r.residue_case.as_str(),
        r.h,
        r.h_plus,
        r.mu,
        eta,
        r.m_d,
        r.l_d,
        r.card_n,
        card_nprime,
        r.card_o_enumeration,
        r.genera_count,
        r.duplication_ok,
    )
}

pub fn unit_json(u: &normform::orders::UnitData) -> Value {
    // x and y may exceed what a JSON number can hold exactly; render digits.
    json!({
        "schema": SCHEMA,
        "d": u.d,
        "x": u.x.to_string(),
        "y": u.y.to_string(),
        "basis": if u.d.rem_euclid(4) == 1 { "1,(1+sqrt(d))/2" } else { "1,sqrt(d)" },
        "norm": u.norm,
        "unit_index_m": u.unit_index_m,
    })
}

pub fn classify_json(group: &ClassGroupData, labels: &[GenusLabel], genera: u64) -> Value {
    let classes: Vec<Value> = group
        .classes
        .iter()
        .map(|c| form_json(&c.canonical()))
        .collect();
    let characters: Vec<String> = labels
        .first()
        .map(|l| l.characters.iter().map(|c| c.name()).collect())
        .unwrap_or_default();
    let label_rows: Vec<Value> = labels.iter().map(|l| json!(l.values)).collect();
    json!({
        "schema": SCHEMA,
        "disc": group.disc,
        "narrow": group.narrow,
        "class_count": group.classes.len(),
        "classes": classes,
        "structure": group.structure,
        "principal": group.principal,
        "characters": characters,
        "genus_labels": label_rows,
        "genera_count": genera,
    })
}
