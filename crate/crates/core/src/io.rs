//! JSON file formats: posets, cochains, MC elements and the reports emitted by
//! the command-line tool.
//!
//! ```text
//! poset    {"name": "cr4", "elements": ["a", …], "relations": [["a", "c"], …]}
//! cochain  {"degree": 2, "entries": [{"chain": ["a", "a", "c"], "value": "1/2"}, …]}
//! mc       {"order": 2, "terms": {"1": cochain, "2": cochain}}
//! moduli   {"poset": "cr4", "order": 2, "dimension": 0, "basis": [mc, …]}
//! ```
//!
//! Chains missing from a cochain's entries are zero; values are strings
//! `"p/q"` or `"p"`, or JSON integers.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::deform::{MCElement, Moduli};
use crate::error::FormatError;
use crate::numkit::{parse_rat, rat_to_string, Rat};
use crate::opcore::GradedElem;
use crate::poset::{Nerve, Poset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub name: String,
    pub elements: Vec<String>,
    pub relations: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntry {
    pub chain: Vec<String>,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub degree: usize,
    pub entries: Vec<CochainEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MCFile {
    pub order: usize,
    pub terms: BTreeMap<String, CochainFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuliFile {
    pub poset: String,
    pub order: usize,
    pub dimension: usize,
    pub basis: Vec<MCFile>,
}

fn invalid(path: &str, msg: impl Into<String>) -> FormatError {
    FormatError::Invalid {
        path: path.to_string(),
        msg: msg.into(),
    }
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses JSON, keeping the parse position on failure.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

pub fn poset_from_file(file: &PosetFile, path: &str) -> Result<Poset, FormatError> {
    let poset = Poset::from_relations(&file.elements, &file.relations)
        .map_err(|e| invalid(path, e.to_string()))?;
    Ok(poset.with_name(file.name.clone()))
}

pub fn poset_to_file(p: &Poset) -> PosetFile {
    PosetFile {
        name: p.name().to_string(),
        elements: p.labels().to_vec(),
        relations: p
            .covers()
            .into_iter()
            .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
            .collect(),
    }
}

pub fn parse_poset(text: &str, path: &str) -> Result<Poset, FormatError> {
    poset_from_file(&parse_json(text, path)?, path)
}

pub fn read_poset(path: &Path) -> Result<Poset, FormatError> {
    parse_poset(&read_text(path)?, &path.display().to_string())
}

fn value_to_rat(v: &Value, path: &str) -> Result<Rat, FormatError> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|e| invalid(path, e.to_string())),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rat::from_integer(i.into())),
            None => Err(invalid(
                path,
                format!("value {n} is not an integer; write fractions as \"p/q\""),
            )),
        },
        other => Err(invalid(path, format!("value {other} is not a rational"))),
    }
}

/// Resolves a cochain file against a nerve's weak chains.
pub fn cochain_from_file(
    nerve: &Nerve,
    file: &CochainFile,
    path: &str,
) -> Result<GradedElem, FormatError> {
    let poset = nerve.poset();
    let basis = nerve.weak(file.degree);
    let mut f = GradedElem::zero(file.degree);
    for entry in &file.entries {
        if entry.chain.len() != file.degree + 1 {
            return Err(invalid(
                path,
                format!(
                    "chain {:?} has {} vertices, degree {} needs {}",
                    entry.chain,
                    entry.chain.len(),
                    file.degree,
                    file.degree + 1
                ),
            ));
        }
        let chain = entry
            .chain
            .iter()
            .map(|l| {
                poset
                    .index_of(l)
                    .ok_or_else(|| invalid(path, format!("unknown element {l:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let idx = basis
            .index_of(&chain)
            .ok_or_else(|| invalid(path, format!("{:?} is not a weak chain", entry.chain)))?;
        f.add_at(idx, &value_to_rat(&entry.value, path)?);
    }
    Ok(f)
}

pub fn cochain_to_file(nerve: &Nerve, f: &GradedElem) -> CochainFile {
    let basis = nerve.weak(f.arity());
    CochainFile {
        degree: f.arity(),
        entries: f
            .coords()
            .iter()
            .map(|(&i, c)| CochainEntry {
                chain: nerve.poset().chain_labels(basis.chain(i)),
                value: Value::String(rat_to_string(c)),
            })
            .collect(),
    }
}

pub fn mc_from_file(nerve: &Nerve, file: &MCFile, path: &str) -> Result<MCElement, FormatError> {
    if file.order == 0 {
        return Err(invalid(path, "order must be at least 1"));
    }
    let mut terms = vec![GradedElem::zero(2); file.order];
    for (key, c) in &file.terms {
        let n: usize = key
            .parse()
            .map_err(|_| invalid(path, format!("term key {key:?} is not a power of λ")))?;
        if n == 0 || n > file.order {
            return Err(invalid(
                path,
                format!("term {n} outside 1..={}", file.order),
            ));
        }
        if c.degree != 2 {
            return Err(invalid(
                path,
                format!("term {n} has degree {}, expected 2", c.degree),
            ));
        }
        terms[n - 1] = cochain_from_file(nerve, c, path)?;
    }
    MCElement::new(file.order, terms).map_err(|e| invalid(path, e.to_string()))
}

pub fn mc_to_file(nerve: &Nerve, e: &MCElement) -> MCFile {
    MCFile {
        order: e.order(),
        terms: e
            .terms()
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(i, t)| ((i + 1).to_string(), cochain_to_file(nerve, t)))
            .collect(),
    }
}

pub fn parse_mc(nerve: &Nerve, text: &str, path: &str) -> Result<MCElement, FormatError> {
    mc_from_file(nerve, &parse_json(text, path)?, path)
}

pub fn read_mc(nerve: &Nerve, path: &Path) -> Result<MCElement, FormatError> {
    parse_mc(nerve, &read_text(path)?, &path.display().to_string())
}

pub fn moduli_to_file(nerve: &Nerve, m: &Moduli) -> ModuliFile {
    ModuliFile {
        poset: nerve.poset().name().to_string(),
        order: m.order,
        dimension: m.dimension,
        basis: m.basis.iter().map(|e| mc_to_file(nerve, e)).collect(),
    }
}
