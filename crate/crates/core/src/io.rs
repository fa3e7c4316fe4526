//! JSON file formats. All emitters are canonical: parsing a file and
//! serializing it back yields a unique byte representation (sorted map
//! keys, carrier-order member lists, no empty combination entries).

use crate::convex::{ConvexTheory, Point};
use crate::error::{Error, Result};
use crate::monotone::{MonotoneFn, PartialValuation, Provenance};
use crate::rational::ExtRational;
use crate::set::ResourceSet;
use crate::theory::ResourceTheory;
use crate::translate::{MediatingMap, SubsetOrderKind};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn index_of(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown resource `{name}`")))
}

fn set_from_names(names: &[String], members: &[String]) -> Result<ResourceSet> {
    let mut set = ResourceSet::empty(names.len());
    for m in members {
        set.insert(index_of(names, m)?);
    }
    Ok(set)
}

fn set_to_names(names: &[String], set: &ResourceSet) -> Vec<String> {
    set.iter().map(|i| names[i].clone()).collect()
}

#[derive(Serialize, Deserialize)]
struct TheoryFile {
    resources: Vec<String>,
    free: Vec<String>,
    neutral: Vec<String>,
    #[serde(default)]
    combine: BTreeMap<String, Vec<String>>,
}

fn theory_to_file(t: &ResourceTheory) -> TheoryFile {
    let names = t.names();
    let mut combine = BTreeMap::new();
    for a in 0..t.len() {
        for b in a..t.len() {
            let prod = t.combine(a, b);
            if !prod.is_empty() {
                combine.insert(
                    format!("{},{}", names[a], names[b]),
                    set_to_names(names, prod),
                );
            }
        }
    }
    TheoryFile {
        resources: names.to_vec(),
        free: set_to_names(names, t.free()),
        neutral: set_to_names(names, t.neutral()),
        combine,
    }
}

fn theory_from_file(file: &TheoryFile) -> Result<ResourceTheory> {
    let names = &file.resources;
    // Keys are two resource names joined by a comma; names may themselves
    // contain commas (tuple resources), so try every split position.
    let split_key = |key: &str| -> Result<(usize, usize)> {
        key.match_indices(',')
            .find_map(|(pos, _)| {
                let a = index_of(names, key[..pos].trim()).ok()?;
                let b = index_of(names, key[pos + 1..].trim()).ok()?;
                Some((a, b))
            })
            .ok_or_else(|| Error::InvalidInput(format!("bad combine key `{key}`")))
    };
    let mut entries = Vec::new();
    for (key, members) in &file.combine {
        let (a, b) = split_key(key)?;
        entries.push((a, b, set_from_names(names, members)?));
    }
    ResourceTheory::new(
        names.clone(),
        entries,
        set_from_names(names, &file.free)?,
        set_from_names(names, &file.neutral)?,
    )
}

pub fn theory_to_json(t: &ResourceTheory) -> String {
    serde_json::to_string_pretty(&theory_to_file(t)).expect("theory serializes")
}

pub fn theory_from_json(json: &str) -> Result<ResourceTheory> {
    theory_from_file(&serde_json::from_str(json)?)
}

#[derive(Serialize, Deserialize)]
struct ValuationFile {
    domain: Vec<String>,
    values: BTreeMap<String, ExtRational>,
}

pub fn valuation_to_json(names: &[String], f: &PartialValuation) -> String {
    let file = ValuationFile {
        domain: set_to_names(names, f.domain()),
        values: f
            .domain()
            .iter()
            .map(|r| (names[r].clone(), f.value(r).expect("defined on domain").clone()))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("valuation serializes")
}

pub fn valuation_from_json(names: &[String], json: &str) -> Result<PartialValuation> {
    let file: ValuationFile = serde_json::from_str(json)?;
    let domain = set_from_names(names, &file.domain)?;
    let mut values = vec![None; names.len()];
    for (name, v) in &file.values {
        let i = index_of(names, name)?;
        if !domain.contains(i) {
            return Err(Error::InvalidInput(format!(
                "value for `{name}` outside the declared domain"
            )));
        }
        values[i] = Some(v.clone());
    }
    PartialValuation::new(domain, values)
}

#[derive(Serialize, Deserialize)]
struct MonotoneFile {
    domain: Vec<String>,
    values: BTreeMap<String, ExtRational>,
    provenance: Provenance,
    monotone_checked: bool,
}

pub fn monotone_to_json(names: &[String], m: &MonotoneFn) -> String {
    let file = MonotoneFile {
        domain: names.to_vec(),
        values: names
            .iter()
            .zip(&m.values)
            .map(|(n, v)| (n.clone(), v.clone()))
            .collect(),
        provenance: m.provenance.clone(),
        monotone_checked: m.monotone_checked,
    };
    serde_json::to_string_pretty(&file).expect("monotone serializes")
}

pub fn monotone_from_json(names: &[String], json: &str) -> Result<MonotoneFn> {
    let file: MonotoneFile = serde_json::from_str(json)?;
    let mut values = Vec::with_capacity(names.len());
    for n in names {
        values.push(
            file.values
                .get(n)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("missing value for `{n}`")))?,
        );
    }
    Ok(MonotoneFn {
        values,
        provenance: file.provenance,
        monotone_checked: file.monotone_checked,
    })
}

#[derive(Serialize, Deserialize)]
struct MediatingMapFile {
    source: TheoryFile,
    target: TheoryFile,
    kind: String,
    map: BTreeMap<String, Vec<String>>,
}

pub fn mediating_map_to_json(
    source: &ResourceTheory,
    target: &ResourceTheory,
    map: &MediatingMap,
) -> String {
    let file = MediatingMapFile {
        source: theory_to_file(source),
        target: theory_to_file(target),
        kind: match map.kind {
            SubsetOrderKind::Enhancement => "enh",
            SubsetOrderKind::Degradation => "deg",
            SubsetOrderKind::Inclusion => "incl",
            SubsetOrderKind::ReverseInclusion => "rev-incl",
        }
        .to_string(),
        map: (0..source.len())
            .map(|r| {
                (
                    source.name(r).to_string(),
                    set_to_names(target.names(), &map.map[r]),
                )
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("map serializes")
}

pub fn mediating_map_from_json(
    json: &str,
) -> Result<(ResourceTheory, ResourceTheory, MediatingMap)> {
    let file: MediatingMapFile = serde_json::from_str(json)?;
    let source = theory_from_file(&file.source)?;
    let target = theory_from_file(&file.target)?;
    let kind = match file.kind.as_str() {
        "enh" => SubsetOrderKind::Enhancement,
        "deg" => SubsetOrderKind::Degradation,
        "incl" => SubsetOrderKind::Inclusion,
        "rev-incl" => SubsetOrderKind::ReverseInclusion,
        other => return Err(Error::InvalidInput(format!("unknown map kind `{other}`"))),
    };
    let mut map = vec![ResourceSet::empty(target.len()); source.len()];
    for (name, images) in &file.map {
        map[index_of(source.names(), name)?] = set_from_names(target.names(), images)?;
    }
    Ok((source, target, MediatingMap::new(kind, map)))
}

#[derive(Serialize, Deserialize)]
struct ConvexTheoryFile {
    #[serde(flatten)]
    theory: TheoryFile,
    points: BTreeMap<String, Vec<String>>,
}

fn rational_to_string(q: &BigRational) -> String {
    ExtRational::Finite(q.clone()).to_string()
}

fn rational_from_string(s: &str) -> Result<BigRational> {
    match s
        .parse::<ExtRational>()
        .map_err(|e| Error::InvalidInput(e.to_string()))?
    {
        ExtRational::Finite(q) => Ok(q),
        _ => Err(Error::InvalidInput("coordinates must be finite".into())),
    }
}

pub fn convex_to_json(ct: &ConvexTheory) -> String {
    let file = ConvexTheoryFile {
        theory: theory_to_file(ct.theory()),
        points: (0..ct.len())
            .map(|r| {
                (
                    ct.theory().name(r).to_string(),
                    ct.point(r).iter().map(rational_to_string).collect(),
                )
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("convex theory serializes")
}

pub fn convex_from_json(json: &str) -> Result<ConvexTheory> {
    let file: ConvexTheoryFile = serde_json::from_str(json)?;
    let theory = theory_from_file(&file.theory)?;
    let mut points: Vec<Point> = Vec::with_capacity(theory.len());
    for name in theory.names() {
        let coords = file
            .points
            .get(name)
            .ok_or_else(|| Error::InvalidInput(format!("missing point for `{name}`")))?;
        points.push(coords.iter().map(|s| rational_from_string(s)).collect::<Result<_>>()?);
    }
    ConvexTheory::new(theory, points)
}
