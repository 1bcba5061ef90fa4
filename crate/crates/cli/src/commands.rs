use std::path::{Path, PathBuf};

use brauerkit::burnside::marks;
use brauerkit::catalog::default_catalog;
use brauerkit::gcd_matrix::{m_matrix, n_matrix, q_matrix, DivisorMatrix};
use brauerkit::num::{common_denominator, fmt_q, in_lattice, is_prime, prime_divisors, qf, vp};
use brauerkit::oracle::{
    builtin_dihedral_lattices, h1_cyclic, perm_lattice, regulator_oracle, IntegralLattice,
};
use brauerkit::regulator::{
    artin_valuation, char_pairing, has_cyclic_sylow, has_non_cyclic_hypo, p_divisible_closed_form,
    p_divisible_count, perm_pairing, reg_val_perm, reg_val_trivial, star_pairing, PairingMatrix,
};
use brauerkit::relations::{
    artin_coordinates, artin_induced, artin_relation, conlon_relation, is_relation, relation_space, theta_sigma,
};
use brauerkit::species::species_classes;
use brauerkit::{BurnsideElement, Group, SubgroupLattice, Q};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::output::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] brauerkit::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// A spec string, or a path to a Cayley-table file.
pub fn load_group(spec: &str) -> CliResult<Group> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(Group::from_cayley_text(&read(path)?)?);
    }
    Ok(Group::from_spec(spec)?)
}

pub fn load_lattice(spec: &str) -> CliResult<SubgroupLattice> {
    Ok(SubgroupLattice::new(load_group(spec)?)?)
}

pub fn require_prime(p: Option<u64>) -> CliResult<u64> {
    let p = p.ok_or_else(|| CliError::Usage("this command needs a prime: -p <prime>".into()))?;
    if !is_prime(p) {
        return Err(brauerkit::Error::NotPrime(p).into());
    }
    Ok(p)
}

fn coeff_rows(lat: &SubgroupLattice, theta: &BurnsideElement) -> Vec<Vec<String>> {
    theta.support().into_iter().map(|c| vec![lat.label(c).to_string(), fmt_q(theta.coeff(c))]).collect()
}

fn relation_report(lat: &SubgroupLattice, theta: &BurnsideElement, extra: Value) -> Report {
    let mut payload = json!({ "relation": theta.to_json(lat), "display": theta.display(lat) });
    if let (Value::Object(m), Value::Object(e)) = (&mut payload, extra) {
        m.extend(e);
    }
    Report::new(payload).with_table(vec!["class".into(), "coeff".into()], coeff_rows(lat, theta))
}

/// `artin`, `sigma`, `conlon` or `basis:<i>` (1-based index into the
/// characteristic-0 relation basis).
pub fn select_theta(lat: &SubgroupLattice, which: &str, p: Option<u64>) -> CliResult<BurnsideElement> {
    match which {
        "artin" => Ok(artin_relation(lat)),
        "sigma" => Ok(theta_sigma(lat)),
        "conlon" => Ok(conlon_relation(lat, require_prime(p)?)?),
        other => {
            let idx = other
                .strip_prefix("basis:")
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .ok_or_else(|| CliError::Usage(format!("unknown relation {other:?}; use artin, sigma, conlon or basis:<i>")))?;
            let basis = relation_space(lat, 0)?.basis;
            let n = basis.len();
            basis
                .into_iter()
                .nth(idx - 1)
                .ok_or_else(|| CliError::Usage(format!("relation basis has {n} elements")))
        }
    }
}

pub fn group(lat: &SubgroupLattice) -> Report {
    let g = lat.group();
    let classes: Vec<Value> = (0..lat.num_classes())
        .map(|c| {
            json!({
                "label": lat.label(c),
                "order": lat.class_order(c),
                "size": lat.class_size(c),
                "cyclic": lat.class_is_cyclic(c),
                "normal": lat.class_size(c) == 1,
                "mobius": lat.mobius_top(lat.class_rep(c)),
            })
        })
        .collect();
    let rows = (0..lat.num_classes())
        .map(|c| {
            vec![
                lat.label(c).to_string(),
                lat.class_order(c).to_string(),
                lat.class_size(c).to_string(),
                lat.class_is_cyclic(c).to_string(),
                (lat.class_size(c) == 1).to_string(),
                lat.mobius_top(lat.class_rep(c)).to_string(),
            ]
        })
        .collect();
    let payload = json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "subgroups": lat.subgroups().len(),
        "classes": classes,
    });
    let header = ["label", "order", "size", "cyclic", "normal", "mobius"].map(String::from).to_vec();
    Report::new(payload).with_table(header, rows)
}

pub fn relations(lat: &SubgroupLattice, characteristic: u64) -> CliResult<Report> {
    let space = relation_space(lat, characteristic)?;
    let rows = space
        .basis
        .iter()
        .enumerate()
        .flat_map(|(i, b)| coeff_rows(lat, b).into_iter().map(move |mut r| {
            r.insert(0, (i + 1).to_string());
            r
        }))
        .collect();
    Ok(Report::new(space.to_json(lat)).with_table(vec!["relation".into(), "class".into(), "coeff".into()], rows))
}

pub fn artin(lat: &SubgroupLattice, subgroup: Option<&str>) -> CliResult<Report> {
    match subgroup {
        Some(label) => {
            let c = lat.class_by_label(label)?;
            Ok(relation_report(lat, &artin_induced(lat, c), json!({ "induced_from": label })))
        }
        None => Ok(relation_report(lat, &artin_relation(lat), json!({}))),
    }
}

pub fn conlon(lat: &SubgroupLattice, p: u64) -> CliResult<Report> {
    Ok(relation_report(lat, &conlon_relation(lat, p)?, json!({})))
}

pub fn theta_sigma_cmd(lat: &SubgroupLattice, p: Option<u64>) -> CliResult<Report> {
    let ts = theta_sigma(lat);
    let mut extra = json!({ "char0_relation": is_relation(lat, &ts, 0)? });
    if let Some(p) = p {
        let p = require_prime(Some(p))?;
        extra["char_p_relation"] = json!(is_relation(lat, &ts, p)?);
        if extra["char0_relation"] == json!(true) {
            let coords = artin_coordinates(lat, &ts, p)?;
            let pairing = perm_pairing(lat, p)?;
            let in_kernel = pairing
                .entries
                .iter()
                .all(|row| row.iter().zip(&coords).map(|(a, b)| a * b).sum::<Q>().is_zero());
            extra["artin_coordinates"] = json!(pairing
                .labels
                .iter()
                .zip(&coords)
                .map(|(l, c)| json!({ "class": l, "coeff": fmt_q(c) }))
                .collect::<Vec<_>>());
            extra["in_perm_pairing_kernel"] = json!(in_kernel);
            extra["trivial_module_vp"] = json!(fmt_q(&reg_val_trivial(lat, &ts, p)?));
        }
    }
    Ok(relation_report(lat, &ts, extra))
}

pub fn regulator(lat: &SubgroupLattice, p: u64, theta: &str, subgroup: Option<&str>) -> CliResult<Report> {
    let th = select_theta(lat, theta, Some(p))?;
    let classes: Vec<usize> = match subgroup {
        Some(label) => vec![lat.class_by_label(label)?],
        None => (0..lat.num_classes()).collect(),
    };
    let mut values = Vec::new();
    let mut rows = Vec::new();
    for c in classes {
        let v = reg_val_perm(lat, &th, c, p)?;
        values.push(json!({ "class": lat.label(c), "vp": fmt_q(&v) }));
        rows.push(vec![lat.label(c).to_string(), fmt_q(&v)]);
    }
    let payload = json!({
        "theta": th.to_json(lat),
        "trivial_vp": fmt_q(&reg_val_trivial(lat, &th, p)?),
        "induced_vp": values,
    });
    Ok(Report::new(payload).with_table(vec!["induced_from".into(), "vp".into()], rows))
}

#[derive(Debug, Clone, Copy)]
pub enum PairingChoice {
    Perm,
    Char,
    Star,
}

pub fn pairing_report(m: &PairingMatrix) -> Report {
    let header = std::iter::once(String::new()).chain(m.labels.iter().cloned()).collect();
    let rows = m
        .labels
        .iter()
        .zip(&m.entries)
        .map(|(l, r)| std::iter::once(l.clone()).chain(r.iter().map(fmt_q)).collect())
        .collect();
    let mut payload = m.to_json();
    payload["nondegenerate"] = json!(m.is_nondegenerate());
    Report::new(payload).with_table(header, rows)
}

pub fn pairing(lat: &SubgroupLattice, p: u64, choice: PairingChoice) -> CliResult<Report> {
    let m = match choice {
        PairingChoice::Perm => perm_pairing(lat, p)?,
        PairingChoice::Char => char_pairing(lat, p)?,
        PairingChoice::Star => star_pairing(lat, p)?,
    };
    Ok(pairing_report(&m))
}

pub fn nonvanishing(lat: &SubgroupLattice, p: u64) -> CliResult<Report> {
    let a = artin_valuation(lat, p)?;
    let non_cyclic = has_non_cyclic_hypo(lat, p);
    let step = qf(p as i64, lat.group().order() as i64);
    let bound_ok = a.direct.is_zero() || (a.direct <= -step.clone() && in_lattice(&a.direct, &step));
    let consistent = a.direct.is_zero() != non_cyclic
        && a.explicit == a.direct
        && a.closed_form.as_ref().is_none_or(|c| *c == a.direct)
        && bound_ok;
    Ok(Report::new(json!({
        "direct": fmt_q(&a.direct),
        "explicit": fmt_q(&a.explicit),
        "closed_form": a.closed_form.as_ref().map(fmt_q),
        "non_cyclic_hypo_exists": non_cyclic,
        "bound_ok": bound_ok,
        "consistent": consistent,
    })))
}

pub fn gcd_matrix(kind: &str, n: u64, s: Option<u64>) -> CliResult<Report> {
    let m: DivisorMatrix = match (kind, s) {
        ("N", None) => n_matrix(n)?,
        ("M", Some(s)) => m_matrix(n, s)?,
        ("Q", None) => q_matrix(n),
        _ => return Err(CliError::Usage("use `gcd-matrix N <n>`, `gcd-matrix M <n> <s>` or `gcd-matrix Q <d>`".into())),
    };
    let header = std::iter::once(String::new()).chain(m.labels.iter().map(u64::to_string)).collect();
    let rows = m
        .labels
        .iter()
        .zip(&m.entries)
        .map(|(l, r)| std::iter::once(l.to_string()).chain(r.iter().map(i64::to_string)).collect())
        .collect();
    Ok(Report::new(m.to_json()).with_table(header, rows))
}

pub fn species(lat: &SubgroupLattice, p: u64) -> CliResult<Report> {
    let s = species_classes(lat, p)?;
    let g = lat.group();
    let rows = s
        .classes
        .iter()
        .map(|c| {
            vec![
                lat.subgroup(c.rep.p_subgroup).order().to_string(),
                c.rep.g.to_string(),
                g.elem_order(c.rep.g).to_string(),
                lat.label(c.generated_class).to_string(),
                c.cyclic.to_string(),
                c.size.to_string(),
            ]
        })
        .collect();
    let header = ["p_order", "g", "g_order", "generated", "cyclic", "size"].map(String::from).to_vec();
    Ok(Report::new(s.to_json(lat)).with_table(header, rows))
}

/// Where an explicit lattice comes from.
pub enum LatticeSource {
    Perm(Option<String>),
    File(PathBuf),
    Builtin(String),
}

/// Resolve a lattice together with the subgroup lattice of the group it lives on.
fn resolve_lattice(spec: &str, p: Option<u64>, source: &LatticeSource) -> CliResult<(SubgroupLattice, IntegralLattice, Option<usize>)> {
    match source {
        LatticeSource::Builtin(name) => {
            let p = require_prime(p)?;
            let order = load_group(spec)?.order();
            if order as u64 != 2 * p {
                return Err(CliError::Usage(format!("built-in lattices live on D{}; group has order {order}", 2 * p)));
            }
            let dl = builtin_dihedral_lattices(p)?;
            let m = match name.as_str() {
                "eps" | "epsilon" => dl.epsilon,
                "A" => dl.a,
                "A'" | "Aprime" => dl.a_prime,
                other => return Err(CliError::Usage(format!("unknown built-in lattice {other:?}; use eps, A or A'"))),
            };
            Ok((SubgroupLattice::new(dl.group)?, m, None))
        }
        LatticeSource::File(path) => {
            let lat = load_lattice(spec)?;
            let m = IntegralLattice::from_text(lat.group(), &read(path)?)?;
            Ok((lat, m, None))
        }
        LatticeSource::Perm(label) => {
            let lat = load_lattice(spec)?;
            let c = match label {
                Some(l) => lat.class_by_label(l)?,
                None => lat.whole_class(),
            };
            let m = perm_lattice(&lat, lat.class_rep_subgroup(c));
            Ok((lat, m, Some(c)))
        }
    }
}

pub fn oracle(spec: &str, p: u64, theta: &str, source: &LatticeSource) -> CliResult<Report> {
    let (lat, m, perm_class) = resolve_lattice(spec, Some(p), source)?;
    let th = select_theta(&lat, theta, Some(p))?;
    let d = common_denominator(th.coeffs());
    let scaled = th.scale(&Q::from_integer(d.clone()));
    let v = regulator_oracle(&lat, &m, &scaled, p)?;
    let vp_theta = Q::new(v.vp.into(), d.clone());
    let mut payload = json!({
        "theta": th.to_json(&lat),
        "scale": d.to_string(),
        "rank": m.rank(),
        "value_scaled": fmt_q(&v.value),
        "vp_scaled": v.vp,
        "vp": fmt_q(&vp_theta),
    });
    if let Some(c) = perm_class {
        let formula = reg_val_perm(&lat, &th, c, p)?;
        payload["induced_from"] = json!(lat.label(c));
        payload["formula_vp"] = json!(fmt_q(&formula));
        payload["agrees"] = json!(formula == vp_theta);
    }
    Ok(Report::new(payload))
}

pub fn h1(spec: &str, p: Option<u64>, element: usize, source: &LatticeSource) -> CliResult<Report> {
    let (lat, m, _) = resolve_lattice(spec, p, source)?;
    let g = lat.group();
    if element >= g.order() {
        return Err(CliError::Usage(format!("element {element} out of range for a group of order {}", g.order())));
    }
    let h = h1_cyclic(g, &m, element)?;
    let invariants: Vec<String> = h.invariants.iter().map(|x| x.to_string()).collect();
    let rows = invariants.iter().map(|x| vec![x.clone()]).collect();
    Ok(Report::new(json!({
        "element": element,
        "element_order": g.elem_order(element),
        "rank": m.rank(),
        "invariants": invariants,
        "trivial": h.is_trivial(),
    }))
    .with_table(vec!["invariant".into()], rows))
}

/// Parse a sweep config: one `spec prime` pair per line, `#` comments.
pub fn parse_config(text: &str) -> CliResult<Vec<(String, u64)>> {
    let mut jobs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(spec), Some(p), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(brauerkit::Error::Parse(format!("config line {}: expected `spec prime`", i + 1)).into());
        };
        let p = p
            .parse::<u64>()
            .map_err(|_| brauerkit::Error::Parse(format!("config line {}: bad prime {p:?}", i + 1)))?;
        jobs.push((spec.to_string(), p));
    }
    Ok(jobs)
}

fn sweep_job(spec: &str, p: u64) -> CliResult<(Value, Vec<String>)> {
    let lat = load_lattice(spec)?;
    let p = require_prime(Some(p))?;
    let order = lat.group().order() as u64;
    let mut failures = Vec::new();
    let a = artin_valuation(&lat, p)?;
    if order % p == 0 {
        let non_cyclic = has_non_cyclic_hypo(&lat, p);
        if a.direct.is_zero() == non_cyclic {
            failures.push("non-vanishing".to_string());
        }
        let step = qf(p as i64, order as i64);
        if !a.direct.is_zero() && (a.direct > -step.clone() || !in_lattice(&a.direct, &step)) {
            failures.push("valuation bound".to_string());
        }
    }
    if a.explicit != a.direct {
        failures.push("explicit formula".to_string());
    }
    if a.closed_form.as_ref().is_some_and(|c| *c != a.direct) {
        failures.push("closed form".to_string());
    }
    let pairing = perm_pairing(&lat, p)?;
    if !pairing.is_symmetric() {
        failures.push("symmetry".to_string());
    }
    let cyclic_sylow = has_cyclic_sylow(&lat, p);
    if cyclic_sylow {
        if !pairing.is_nondegenerate() {
            failures.push("non-degeneracy".to_string());
        }
        for k in 0..=vp(order, p) + 1 {
            if p_divisible_closed_form(&lat, p, k)? != Q::from_integer(p_divisible_count(&lat, p, k).into()) {
                failures.push(format!("P(G,{k})"));
            }
        }
    }
    let ts = theta_sigma(&lat);
    let fixed = marks(&lat, &ts)?;
    let whole = lat.whole_class();
    if fixed.iter().enumerate().any(|(c, m)| if c == whole { !m.is_one() } else { !m.is_zero() }) {
        failures.push("theta_Sigma fixed points".to_string());
    }
    let kernel: Vec<Vec<String>> =
        pairing.kernel.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
    let row = json!({
        "spec": spec,
        "p": p,
        "order": order,
        "classes": lat.num_classes(),
        "pairing_dim": pairing.dim(),
        "pairing_rank": pairing.rank,
        "pairing_basis": pairing.labels,
        "pairing_kernel": kernel,
        "artin_vp": fmt_q(&a.direct),
        "cyclic_sylow": cyclic_sylow,
        "pass": failures.is_empty(),
        "failures": failures.clone(),
    });
    Ok((row, failures))
}

pub fn sweep(config: Option<&Path>) -> CliResult<(Report, bool)> {
    let jobs: Vec<(String, u64)> = match config {
        Some(path) => parse_config(&read(path)?)?,
        None => {
            let mut jobs = Vec::new();
            for spec in default_catalog() {
                let order = Group::from_spec(&spec)?.order() as u64;
                jobs.extend(prime_divisors(order).into_iter().map(|p| (spec.clone(), p)));
            }
            jobs
        }
    };
    let results: Vec<CliResult<(Value, Vec<String>)>> = jobs.par_iter().map(|(s, p)| sweep_job(s, *p)).collect();
    let mut rows = Vec::new();
    let mut table = Vec::new();
    let mut all_pass = true;
    for ((spec, p), r) in jobs.iter().zip(results) {
        let (row, failures) = match r {
            Ok(x) => x,
            Err(e) => (json!({ "spec": spec, "p": p, "pass": false, "error": e.to_string() }), vec![e.to_string()]),
        };
        all_pass &= failures.is_empty();
        table.push(vec![
            spec.clone(),
            p.to_string(),
            scalar(&row["order"]),
            scalar(&row["pairing_dim"]),
            scalar(&row["pairing_rank"]),
            scalar(&row["artin_vp"]),
            if failures.is_empty() { "pass".into() } else { format!("fail: {}", failures.join("; ")) },
        ]);
        rows.push(row);
    }
    let header = ["spec", "p", "order", "pairing_dim", "pairing_rank", "artin_vp", "status"]
        .map(String::from)
        .to_vec();
    let payload = json!({ "jobs": rows.len(), "all_pass": all_pass, "results": rows });
    Ok((Report::new(payload).with_table(header, table), all_pass))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
