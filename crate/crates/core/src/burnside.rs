//! The rational Burnside ring `B(G) = b(G) ⊗ Q`: marks, products and the
//! functorial maps between groups.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{BitSet, GroupId, Quotient, Subgroup};
use crate::lattice::SubgroupLattice;
use crate::num::{q, Q};

/// An element `Σ a_H [H]` of `B(G)`, one coefficient per conjugacy class of
/// subgroups in the lattice's global order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideElement {
    group: GroupId,
    coeffs: Vec<Q>,
}

impl BurnsideElement {
    pub fn zero(lat: &SubgroupLattice) -> Self {
        BurnsideElement { group: lat.group().id(), coeffs: vec![Q::zero(); lat.num_classes()] }
    }

    /// The transitive G-set `[G/H]` for the class `c`.
    pub fn basis(lat: &SubgroupLattice, c: usize) -> Self {
        let mut e = Self::zero(lat);
        e.coeffs[c] = Q::one();
        e
    }

    pub fn from_coeffs(lat: &SubgroupLattice, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != lat.num_classes() {
            return Err(Error::GroupMismatch);
        }
        Ok(BurnsideElement { group: lat.group().id(), coeffs })
    }

    pub fn from_ints(lat: &SubgroupLattice, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(lat, coeffs.iter().map(|&x| q(x)).collect())
    }

    pub fn group_id(&self) -> GroupId {
        self.group
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, c: usize) -> &Q {
        &self.coeffs[c]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Q::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Q::is_integer)
    }

    /// Classes with a non-zero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&c| !self.coeffs[c].is_zero()).collect()
    }

    pub fn check(&self, lat: &SubgroupLattice) -> Result<()> {
        if self.group != lat.group().id() || self.coeffs.len() != lat.num_classes() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(BurnsideElement { group: self.group, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Self {
        BurnsideElement { group: self.group, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn add_to(&mut self, c: usize, k: &Q) {
        self.coeffs[c] += k;
    }

    pub fn to_json(&self, lat: &SubgroupLattice) -> Value {
        let coeffs: Vec<Value> = self
            .support()
            .into_iter()
            .map(|c| {
                let x = &self.coeffs[c];
                json!({ "class": lat.label(c), "num": big_to_json(x.numer()), "den": big_to_json(x.denom()) })
            })
            .collect();
        json!({ "group": lat.group().label(), "coeffs": coeffs })
    }

    /// Human-readable form such as `1/2[1:1] - [2:1] + [6:1]`.
    pub fn display(&self, lat: &SubgroupLattice) -> String {
        let mut out = String::new();
        for c in self.support() {
            let x = &self.coeffs[c];
            let sign = if x.is_negative() { "-" } else { "+" };
            let mag = x.abs();
            let mag = if mag.is_one() { String::new() } else { mag.to_string() };
            if out.is_empty() {
                out = format!("{}{mag}[{}]", if sign == "-" { "-" } else { "" }, lat.label(c));
            } else {
                out.push_str(&format!(" {sign} {mag}[{}]", lat.label(c)));
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}

fn big_to_json(x: &num_bigint::BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// `#(G/H)^K` for the class representatives `H = rep(h)`, `K = rep(k)`:
/// `|N_G(K)| · #{conjugates of K inside H} / |H|`.
pub fn mark(lat: &SubgroupLattice, h: usize, k: usize) -> u64 {
    let hs = lat.class_rep_subgroup(h);
    if lat.class_order(k) > hs.order() || hs.order() % lat.class_order(k) != 0 {
        return 0;
    }
    let inside = lat
        .class_members(k)
        .iter()
        .filter(|&&j| lat.subgroup(j).is_subgroup_of(hs))
        .count();
    let n = lat.subgroup(lat.normalizer(lat.class_rep(k))).order();
    (n * inside / hs.order()) as u64
}

/// Rows are indexed by `H`, columns by `K`; lower triangular in the global
/// class order with non-zero diagonal.
pub fn marks_table(lat: &SubgroupLattice) -> Vec<Vec<u64>> {
    let n = lat.num_classes();
    (0..n).map(|h| (0..n).map(|k| mark(lat, h, k)).collect()).collect()
}

/// The fixed-point vector `(θ^K)_K`.
pub fn marks(lat: &SubgroupLattice, theta: &BurnsideElement) -> Result<Vec<Q>> {
    theta.check(lat)?;
    let n = lat.num_classes();
    Ok((0..n)
        .map(|k| {
            theta
                .support()
                .into_iter()
                .filter(|&h| h >= k)
                .map(|h| &theta.coeffs[h] * q(mark(lat, h, k) as i64))
                .sum()
        })
        .collect())
}

/// Mark of `θ` at a single class.
pub fn mark_of(lat: &SubgroupLattice, theta: &BurnsideElement, k: usize) -> Q {
    theta
        .support()
        .into_iter()
        .filter(|&h| h >= k)
        .map(|h| &theta.coeffs[h] * q(mark(lat, h, k) as i64))
        .sum()
}

/// Solve for the element with the given marks (back substitution in the
/// triangular table of marks).
pub fn inverse_marks(lat: &SubgroupLattice, m: &[Q]) -> Result<BurnsideElement> {
    let n = lat.num_classes();
    if m.len() != n {
        return Err(Error::GroupMismatch);
    }
    let mut coeffs = vec![Q::zero(); n];
    for k in (0..n).rev() {
        let mut rest = m[k].clone();
        for h in k + 1..n {
            if !coeffs[h].is_zero() {
                rest -= &coeffs[h] * q(mark(lat, h, k) as i64);
            }
        }
        coeffs[k] = rest / q(mark(lat, k, k) as i64);
    }
    BurnsideElement::from_coeffs(lat, coeffs)
}

/// Element set of a subgroup of `K`'s own group, seen inside `G`.
fn lift(k: &Subgroup, inner: &Subgroup, g_order: usize) -> BitSet {
    let mut bits = BitSet::new(g_order);
    for &x in inner.elements() {
        bits.insert(k.elements()[x as usize] as usize);
    }
    bits
}

/// A subgroup of `G` contained in `k`, in `K`'s own indexing.
fn pull(k: &Subgroup, s: &Subgroup) -> BitSet {
    let mut bits = BitSet::new(k.order());
    for &x in s.elements() {
        let pos = k.elements().binary_search(&x).expect("subgroup of K");
        bits.insert(pos);
    }
    bits
}

fn check_sublattice(lat: &SubgroupLattice, k: usize, lat_k: &SubgroupLattice) -> Result<()> {
    let expected = lat.group().subgroup_as_group(lat.subgroup(k));
    if &expected != lat_k.group() {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

/// Mackey: `[H]↓_K = Σ_{x ∈ K\G/H} [K ∩ xHx⁻¹]`, collected by
/// `K`-conjugacy. `k` is a subgroup index of `lat`, `lat_k` the lattice of
/// `lat.sublattice(k)`.
pub fn restrict(
    lat: &SubgroupLattice,
    theta: &BurnsideElement,
    k: usize,
    lat_k: &SubgroupLattice,
) -> Result<BurnsideElement> {
    theta.check(lat)?;
    check_sublattice(lat, k, lat_k)?;
    let g = lat.group();
    let ks = lat.subgroup(k);
    let mut out = BurnsideElement::zero(lat_k);
    for c in theta.support() {
        let h = lat.class_rep_subgroup(c);
        for dc in g.double_cosets(h, ks) {
            let stab = g.coset_stabilizer(h, ks, dc.rep);
            out.add_to(lat_k.class_of_bits(&pull(ks, &stab)), &theta.coeffs[c]);
        }
    }
    Ok(out)
}

/// Restriction computed through marks: `(θ↓_K)^L = θ^L` for `L ≤ K`.
pub fn restrict_via_marks(
    lat: &SubgroupLattice,
    theta: &BurnsideElement,
    k: usize,
    lat_k: &SubgroupLattice,
) -> Result<BurnsideElement> {
    check_sublattice(lat, k, lat_k)?;
    let m = marks(lat, theta)?;
    let ks = lat.subgroup(k);
    let local: Vec<Q> = (0..lat_k.num_classes())
        .map(|c| {
            let bits = lift(ks, lat_k.class_rep_subgroup(c), lat.group().order());
            m[lat.class_of_bits(&bits)].clone()
        })
        .collect();
    inverse_marks(lat_k, &local)
}

/// `[L]_K ↦ [L]_G`.
pub fn induce(
    lat_k: &SubgroupLattice,
    theta: &BurnsideElement,
    lat: &SubgroupLattice,
    k: usize,
) -> Result<BurnsideElement> {
    theta.check(lat_k)?;
    check_sublattice(lat, k, lat_k)?;
    let ks = lat.subgroup(k);
    let mut out = BurnsideElement::zero(lat);
    for c in theta.support() {
        let bits = lift(ks, lat_k.class_rep_subgroup(c), lat.group().order());
        out.add_to(lat.class_of_bits(&bits), &theta.coeffs[c]);
    }
    Ok(out)
}

/// `[H]·[K] = Σ_{x ∈ K\G/H} [K ∩ xHx⁻¹]`.
pub fn multiply(
    lat: &SubgroupLattice,
    a: &BurnsideElement,
    b: &BurnsideElement,
) -> Result<BurnsideElement> {
    a.check(lat)?;
    b.check(lat)?;
    let g = lat.group();
    let mut out = BurnsideElement::zero(lat);
    for i in a.support() {
        let h = lat.class_rep_subgroup(i);
        for j in b.support() {
            let k = lat.class_rep_subgroup(j);
            let coeff = &a.coeffs[i] * &b.coeffs[j];
            for dc in g.double_cosets(h, k) {
                let stab = g.coset_stabilizer(h, k, dc.rep);
                out.add_to(lat.class_of_bits(stab.bits()), &coeff);
            }
        }
    }
    Ok(out)
}

/// `[H] ↦ [q⁻¹(H)]` from `B(G/N)` to `B(G)`.
pub fn inflate(
    lat_q: &SubgroupLattice,
    theta: &BurnsideElement,
    lat: &SubgroupLattice,
    quotient: &Quotient,
) -> Result<BurnsideElement> {
    theta.check(lat_q)?;
    if &quotient.group != lat_q.group() || quotient.proj.len() != lat.group().order() {
        return Err(Error::GroupMismatch);
    }
    let mut out = BurnsideElement::zero(lat);
    for c in theta.support() {
        let pre = quotient.preimage(lat.group(), lat_q.class_rep_subgroup(c));
        out.add_to(lat.class_of_bits(pre.bits()), &theta.coeffs[c]);
    }
    Ok(out)
}

/// `[H] ↦ [q(H)]` from `B(G)` to `B(G/N)`.
pub fn deflate(
    lat: &SubgroupLattice,
    theta: &BurnsideElement,
    lat_q: &SubgroupLattice,
    quotient: &Quotient,
) -> Result<BurnsideElement> {
    theta.check(lat)?;
    if &quotient.group != lat_q.group() || quotient.proj.len() != lat.group().order() {
        return Err(Error::GroupMismatch);
    }
    let mut out = BurnsideElement::zero(lat_q);
    for c in theta.support() {
        let img = quotient.image(lat.class_rep_subgroup(c));
        out.add_to(lat_q.class_of_bits(img.bits()), &theta.coeffs[c]);
    }
    Ok(out)
}
