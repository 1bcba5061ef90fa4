//! Brauer relations: the spaces `BR_0(G)`, `BR_p(G)` and the Artin, Conlon
//! and Möbius relations.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::burnside::{mark, mark_of, BurnsideElement};
use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::linalg::{kernel_q, solve_q};
use crate::num::{is_prime, mobius, q, qf, Q};

#[derive(Debug, Clone)]
pub struct RelationSpace {
    /// 0 or a prime.
    pub characteristic: u64,
    /// Primitive integral basis vectors.
    pub basis: Vec<BurnsideElement>,
}

impl RelationSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self, lat: &SubgroupLattice) -> Value {
        json!({
            "group": lat.group().label(),
            "characteristic": self.characteristic,
            "dimension": self.dimension(),
            "basis": self.basis.iter().map(|b| b.to_json(lat)).collect::<Vec<_>>(),
        })
    }
}

fn check_characteristic(characteristic: u64) -> Result<()> {
    if characteristic != 0 && !is_prime(characteristic) {
        return Err(Error::NotPrime(characteristic));
    }
    Ok(())
}

/// Classes at which the marks of a relation must vanish: cyclic classes in
/// characteristic 0, p-hypo-elementary classes in characteristic p.
pub fn detecting_classes(lat: &SubgroupLattice, characteristic: u64) -> Vec<usize> {
    (0..lat.num_classes())
        .filter(|&c| {
            if characteristic == 0 {
                lat.class_is_cyclic(c)
            } else {
                lat.class_is_p_hypo(c, characteristic)
            }
        })
        .collect()
}

pub fn is_relation(lat: &SubgroupLattice, theta: &BurnsideElement, characteristic: u64) -> Result<bool> {
    check_characteristic(characteristic)?;
    theta.check(lat)?;
    Ok(detecting_classes(lat, characteristic)
        .into_iter()
        .all(|k| mark_of(lat, theta, k).is_zero()))
}

pub(crate) fn require_relation(lat: &SubgroupLattice, theta: &BurnsideElement) -> Result<()> {
    if is_relation(lat, theta, 0)? {
        Ok(())
    } else {
        Err(Error::NotARelation(0))
    }
}

/// Kernel of the marks matrix restricted to the detecting classes.
pub fn relation_space(lat: &SubgroupLattice, characteristic: u64) -> Result<RelationSpace> {
    check_characteristic(characteristic)?;
    let n = lat.num_classes();
    let rows: Vec<Vec<Q>> = detecting_classes(lat, characteristic)
        .into_iter()
        .map(|k| (0..n).map(|h| q(mark(lat, h, k) as i64)).collect())
        .collect();
    let basis = if rows.is_empty() {
        (0..n).map(|c| BurnsideElement::basis(lat, c)).collect()
    } else {
        kernel_q(&rows, n)
            .into_iter()
            .map(|v| {
                BurnsideElement::from_coeffs(lat, v.into_iter().map(Q::from_integer).collect())
            })
            .collect::<Result<_>>()?
    };
    Ok(RelationSpace { characteristic, basis })
}

/// `θ_H↑^G` for `H = rep(c)` by Brauer's explicit induction formula:
/// `θ_H = [H] − Σ_{C ≤ H cyclic} α_C [C]` with
/// `α_C = |H:C|⁻¹ Σ_{C ≤ D ≤ H, D cyclic} μ(|D:C|)`.
pub fn artin_induced(lat: &SubgroupLattice, c: usize) -> BurnsideElement {
    let h = lat.class_rep(c);
    let mut theta = BurnsideElement::zero(lat);
    if lat.is_cyclic(h) {
        return theta;
    }
    theta.add_to(c, &Q::one());
    let order_h = lat.subgroup(h).order() as i64;
    let cyclic_in_h: Vec<usize> = (0..=h).filter(|&j| lat.is_cyclic(j) && lat.leq(j, h)).collect();
    for &cj in &cyclic_in_h {
        let oc = lat.subgroup(cj).order();
        let sum: i64 = cyclic_in_h
            .iter()
            .filter(|&&d| lat.leq(cj, d))
            .map(|&d| mobius((lat.subgroup(d).order() / oc) as u64))
            .sum();
        if sum != 0 {
            let alpha = qf(sum * oc as i64, order_h);
            theta.add_to(lat.class_of(cj), &-alpha);
        }
    }
    theta
}

/// The Artin relation `θ_G` of the lattice's own group.
pub fn artin_relation(lat: &SubgroupLattice) -> BurnsideElement {
    artin_induced(lat, lat.whole_class())
}

/// Cross-check for [`artin_induced`]: the unique relation supported at
/// `rep(c)` and cyclic classes with coefficient 1 at `rep(c)`.
pub fn artin_by_kernel(lat: &SubgroupLattice, c: usize) -> Result<BurnsideElement> {
    if lat.class_is_cyclic(c) {
        return Ok(BurnsideElement::zero(lat));
    }
    let cyc = detecting_classes(lat, 0);
    let a: Vec<Vec<Q>> = cyc
        .iter()
        .map(|&k| cyc.iter().map(|&h| q(mark(lat, h, k) as i64)).collect())
        .collect();
    let b: Vec<Q> = cyc.iter().map(|&k| q(mark(lat, c, k) as i64)).collect();
    let x = solve_q(&a, &b).ok_or_else(|| Error::Singular("cyclic marks minor".into()))?;
    let mut theta = BurnsideElement::basis(lat, c);
    for (&h, xh) in cyc.iter().zip(&x) {
        theta.add_to(h, &-xh);
    }
    Ok(theta)
}

/// The Artin relation of the subgroup `h` (a subgroup index), over its own
/// lattice.
pub fn artin_of_subgroup(lat: &SubgroupLattice, h: usize) -> Result<(SubgroupLattice, BurnsideElement)> {
    let sub = lat.sublattice(h)?;
    let theta = artin_relation(&sub);
    Ok((sub, theta))
}

/// `θ_Con = [G] − Σ_{H p-hypo} α_H [H]`, the unique characteristic-p relation
/// supported at `G` and p-hypo-elementary classes.
pub fn conlon_relation(lat: &SubgroupLattice, p: u64) -> Result<BurnsideElement> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let hypo = detecting_classes(lat, p);
    let top = lat.whole_class();
    let a: Vec<Vec<Q>> = hypo
        .iter()
        .map(|&k| hypo.iter().map(|&h| q(mark(lat, h, k) as i64)).collect())
        .collect();
    let b: Vec<Q> = hypo.iter().map(|&k| q(mark(lat, top, k) as i64)).collect();
    let x = solve_q(&a, &b).ok_or_else(|| Error::Singular("p-hypo-elementary marks minor".into()))?;
    let mut theta = BurnsideElement::basis(lat, top);
    for (&h, xh) in hypo.iter().zip(&x) {
        theta.add_to(h, &-xh);
    }
    Ok(theta)
}

/// `θ_Σ = Σ_H μ_Σ(H)/|G:H| [H]`, summed over all subgroups and collected by
/// class.
pub fn theta_sigma(lat: &SubgroupLattice) -> BurnsideElement {
    let order = lat.group().order() as i64;
    let mut theta = BurnsideElement::zero(lat);
    for c in 0..lat.num_classes() {
        let rep = lat.class_rep(c);
        let mu = lat.mobius_top(rep);
        if mu != 0 {
            let k = mu * lat.class_size(c) as i64 * lat.subgroup(rep).order() as i64;
            theta.add_to(c, &qf(k, order));
        }
    }
    theta
}

/// Non-cyclic p-hypo-elementary classes, the index set of the permutation
/// pairing.
pub fn non_cyclic_hypo_classes(lat: &SubgroupLattice, p: u64) -> Vec<usize> {
    (0..lat.num_classes())
        .filter(|&c| !lat.class_is_cyclic(c) && lat.class_is_p_hypo(c, p))
        .collect()
}

/// Coordinates of a characteristic-0 relation modulo `BR_p(G)` in the basis
/// `{θ_H↑ : H non-cyclic p-hypo-elementary}`.
pub fn artin_coordinates(lat: &SubgroupLattice, theta: &BurnsideElement, p: u64) -> Result<Vec<Q>> {
    require_relation(lat, theta)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let basis: Vec<BurnsideElement> =
        non_cyclic_hypo_classes(lat, p).into_iter().map(|c| artin_induced(lat, c)).collect();
    let hypo = detecting_classes(lat, p);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let a: Vec<Vec<Q>> = hypo
        .iter()
        .map(|&k| basis.iter().map(|b| mark_of(lat, b, k)).collect())
        .collect();
    let b: Vec<Q> = hypo.iter().map(|&k| mark_of(lat, theta, k)).collect();
    solve_q(&a, &b).ok_or_else(|| Error::Singular("Artin basis modulo BR_p".into()))
}
