//! p-adic valuations of regulator constants of permutation modules and the
//! pairings built from them.
//!
//! For a relation `θ = Σ a_X [X]` and a subgroup `K`, Mackey's formula gives
//! `v_p(C_θ(𝟙↑_K)) = −Σ_X a_X Σ_{x ∈ K\G/X} v_p(|K ∩ xXx⁻¹|)`, and the
//! stabiliser orders are `|K| / orbit length`, so every valuation here is a
//! sum over orbit lengths of `K` on `G/X`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::group::{BitSet, Subgroup};
use crate::lattice::{gcd3, order_p_normalizer_data, HypoStructure, SubgroupLattice};
use crate::linalg::echelon_q;
use crate::num::{fmt_q, gcd, is_prime, q, qf, vp, Q};
use crate::relations::{artin_induced, artin_relation, non_cyclic_hypo_classes, require_relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingKind {
    Perm,
    Char,
    Star,
}

impl PairingKind {
    pub fn name(self) -> &'static str {
        match self {
            PairingKind::Perm => "perm",
            PairingKind::Char => "char",
            PairingKind::Star => "star",
        }
    }
}

/// A square pairing matrix on subgroup classes with its rank and (right)
/// kernel.
#[derive(Debug, Clone)]
pub struct PairingMatrix {
    pub kind: PairingKind,
    pub p: u64,
    pub basis: Vec<usize>,
    pub labels: Vec<String>,
    pub entries: Vec<Vec<Q>>,
    pub rank: usize,
    pub kernel: Vec<Vec<BigInt>>,
}

impl PairingMatrix {
    fn new(lat: &SubgroupLattice, kind: PairingKind, p: u64, basis: Vec<usize>, entries: Vec<Vec<Q>>) -> Self {
        let n = basis.len();
        let (rank, kernel) = if n == 0 {
            (0, Vec::new())
        } else {
            let e = echelon_q(&entries, n);
            (e.rank(), e.kernel())
        };
        let labels = basis.iter().map(|&c| lat.label(c).to_string()).collect();
        PairingMatrix { kind, p, basis, labels, entries, rank, kernel }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Full rank; the empty matrix counts as non-degenerate.
    pub fn is_nondegenerate(&self) -> bool {
        self.rank == self.dim()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "p": self.p,
            "basis": self.labels,
            "entries": self.entries.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "rank": self.rank,
            "kernel": self.kernel.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Sum of `v_p(|K ∩ xXx⁻¹|)` over the double cosets `K x X`.
fn stabilizer_valuation_sum(lat: &SubgroupLattice, x: &Subgroup, k: &Subgroup, p: u64) -> u64 {
    lat.group()
        .double_cosets(x, k)
        .iter()
        .map(|d| vp((k.order() / d.orbit_len) as u64, p) as u64)
        .sum()
}

/// `v_p(C_θ(𝟙))` for a characteristic-0 relation: `−Σ_H a_H v_p(|H|)`.
pub fn reg_val_trivial(lat: &SubgroupLattice, theta: &BurnsideElement, p: u64) -> Result<Q> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    require_relation(lat, theta)?;
    Ok(-theta
        .support()
        .into_iter()
        .map(|c| theta.coeff(c) * q(vp(lat.class_order(c) as u64, p) as i64))
        .sum::<Q>())
}

/// `v_p(C_θ(𝟙↑_K^G)) = v_p(C_{θ↓K}(𝟙))` for the class `k`.
pub fn reg_val_perm(lat: &SubgroupLattice, theta: &BurnsideElement, k: usize, p: u64) -> Result<Q> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    require_relation(lat, theta)?;
    Ok(perm_value(lat, theta, lat.class_rep_subgroup(k), p))
}

fn perm_value(lat: &SubgroupLattice, theta: &BurnsideElement, k: &Subgroup, p: u64) -> Q {
    -theta
        .support()
        .into_iter()
        .map(|c| theta.coeff(c) * q(stabilizer_valuation_sum(lat, lat.class_rep_subgroup(c), k, p) as i64))
        .sum::<Q>()
}

/// `⟨𝟙↑_H, 𝟙↑_K⟩ = #(H\G/K)`.
pub fn char_pairing_entry(lat: &SubgroupLattice, h: usize, k: usize) -> u64 {
    lat.group()
        .double_cosets(lat.class_rep_subgroup(h), lat.class_rep_subgroup(k))
        .len() as u64
}

/// `⟨H, K⟩_perm = v_p(C_{θ_H↑}(𝟙↑_K))` on non-cyclic p-hypo-elementary
/// classes.
pub fn perm_pairing(lat: &SubgroupLattice, p: u64) -> Result<PairingMatrix> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let basis = non_cyclic_hypo_classes(lat, p);
    let entries = pairing_rows(lat, &basis, &basis, p);
    Ok(PairingMatrix::new(lat, PairingKind::Perm, p, basis, entries))
}

/// The character pairing `#(H\G/K)` on the p-hypo-elementary cyclic classes.
pub fn char_pairing(lat: &SubgroupLattice, p: u64) -> Result<PairingMatrix> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let basis: Vec<usize> = (0..lat.num_classes()).filter(|&c| lat.class_is_cyclic(c)).collect();
    let entries = basis
        .iter()
        .map(|&h| basis.iter().map(|&k| q(char_pairing_entry(lat, h, k) as i64)).collect())
        .collect();
    Ok(PairingMatrix::new(lat, PairingKind::Char, p, basis, entries))
}

/// `⟨,⟩_*` on all p-hypo-elementary classes, cyclic classes first: cyclic
/// rows carry the character pairing, non-cyclic rows the valuations.
pub fn star_pairing(lat: &SubgroupLattice, p: u64) -> Result<PairingMatrix> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let hypo: Vec<usize> = (0..lat.num_classes()).filter(|&c| lat.class_is_p_hypo(c, p)).collect();
    let mut basis: Vec<usize> = hypo.iter().copied().filter(|&c| lat.class_is_cyclic(c)).collect();
    let n_cyclic = basis.len();
    basis.extend(hypo.iter().copied().filter(|&c| !lat.class_is_cyclic(c)));
    let mut entries: Vec<Vec<Q>> = basis[..n_cyclic]
        .par_iter()
        .map(|&h| basis.iter().map(|&k| q(char_pairing_entry(lat, h, k) as i64)).collect())
        .collect();
    entries.extend(pairing_rows(lat, &basis[n_cyclic..], &basis, p));
    Ok(PairingMatrix::new(lat, PairingKind::Star, p, basis, entries))
}

fn pairing_rows(lat: &SubgroupLattice, rows: &[usize], cols: &[usize], p: u64) -> Vec<Vec<Q>> {
    rows.par_iter()
        .map(|&h| {
            let theta = artin_induced(lat, h);
            cols.iter()
                .map(|&k| perm_value(lat, &theta, lat.class_rep_subgroup(k), p))
                .collect()
        })
        .collect()
}

/// `(e, h)` with `|H'| = p^e h`, `p ∤ h`.
pub fn hypo_shape(order: u64, p: u64) -> (u32, u64) {
    let e = vp(order, p);
    (e, order / p.pow(e))
}

/// `⟨C_{p^e}⋊H, C_{p^f}⋊K⟩ = (n·min(e,f)/(|H||K|))·(gcd(|H|,|K|,s) − gcd(|H|,|K|))`.
pub fn hypo_pairing_closed_form(hs: &HypoStructure, e: u32, h: u64, f: u32, k: u64) -> Result<Q> {
    let bad = || Error::NotHypoShape(hs.p);
    if e == 0 || f == 0 || e > hs.r || f > hs.r || hs.n % h != 0 || hs.n % k != 0 {
        return Err(bad());
    }
    if hs.s % h == 0 || hs.s % k == 0 {
        // H' or K' would be cyclic
        return Err(bad());
    }
    let m = e.min(f) as i64;
    let diff = gcd3(h, k, hs.s) as i64 - gcd(h, k) as i64;
    Ok(qf(hs.n as i64 * m * diff, (h * k) as i64))
}

/// The subgroup `C_{p^e} ⋊ H` with `H` the subgroup of order `h` of the fixed
/// complement.
pub fn hypo_subgroup(lat: &SubgroupLattice, hs: &HypoStructure, e: u32, h: u64) -> Result<usize> {
    let g = lat.group();
    let pe = hs.p.pow(e) as usize;
    let pick = |within: usize, order: usize| -> Result<usize> {
        (0..lat.subgroups().len())
            .find(|&j| lat.subgroup(j).order() == order && lat.leq(j, within))
            .ok_or(Error::NotHypoShape(hs.p))
    };
    let pp = pick(hs.sylow, pe)?;
    let hh = pick(hs.complement, h as usize)?;
    let joined = g.generate_from(lat.subgroup(pp).bits().clone(), lat.generators(pp), lat.generators(hh));
    lat.index_of(&joined).ok_or(Error::NotHypoShape(hs.p))
}

/// Closed-form restriction `[H']↓_{K'}` for `H' = C_{p^e}⋊H`, `K' = C_{p^f}⋊K`:
/// `n|H∩K|/(|H||K|) [H'∩K'] + (p^{r−max(e,f)} − 1) n|H∩K∩S|/(|H||K|) [H'∩K'∩(C_{p^r}×S)]`.
/// Returns the subgroup index of `K'`, its lattice and the element.
pub fn restriction_closed_form(
    lat: &SubgroupLattice,
    hs: &HypoStructure,
    (e, h): (u32, u64),
    (f, k): (u32, u64),
) -> Result<(usize, SubgroupLattice, BurnsideElement)> {
    if e > hs.r || f > hs.r || hs.n % h != 0 || hs.n % k != 0 {
        return Err(Error::NotHypoShape(hs.p));
    }
    let g = lat.group();
    let hi = hypo_subgroup(lat, hs, e, h)?;
    let ki = hypo_subgroup(lat, hs, f, k)?;
    let (hp, kp) = (lat.subgroup(hi), lat.subgroup(ki));
    let lat_k = lat.sublattice(ki)?;

    let meet = hp.bits().intersection(kp.bits());
    let sylow_s = g.generate_from(
        lat.subgroup(hs.sylow).bits().clone(),
        lat.generators(hs.sylow),
        lat.generators(hs.kernel),
    );
    let meet_s = meet.intersection(sylow_s.bits());

    let to_k = |bits: &BitSet| -> usize {
        let mut local = BitSet::new(kp.order());
        for x in bits.iter() {
            local.insert(kp.elements().binary_search(&(x as u32)).unwrap());
        }
        lat_k.class_of_bits(&local)
    };
    let hk = (h * k) as i64;
    let n = hs.n as i64;
    let mut out = BurnsideElement::zero(&lat_k);
    out.add_to(to_k(&meet), &qf(n * gcd(h, k) as i64, hk));
    let extra = hs.p.pow(hs.r - e.max(f)) as i64 - 1;
    if extra != 0 {
        out.add_to(to_k(&meet_s), &qf(extra * n * gcd3(h, k, hs.s) as i64, hk));
    }
    Ok((ki, lat_k, out))
}

/// `𝒫(G, k) = #{g : p^k divides |g|}` by counting.
pub fn p_divisible_count(lat: &SubgroupLattice, p: u64, k: u32) -> u64 {
    let g = lat.group();
    let pk = p.pow(k);
    (0..g.order()).filter(|&x| g.elem_order(x) as u64 % pk == 0).count() as u64
}

pub fn has_cyclic_sylow(lat: &SubgroupLattice, p: u64) -> bool {
    let g = lat.group();
    let pr = p.pow(vp(g.order() as u64, p));
    (0..g.order()).any(|x| g.elem_order(x) as u64 == pr)
}

/// `𝒫(G,k) = ((p^{r−k+1} − 1)/p^{r−k+1}) |G| |Z_G(Q)| / |N_G(Q)|` for cyclic
/// Sylow `p`-subgroups, with `Q` of order `p`.
pub fn p_divisible_closed_form(lat: &SubgroupLattice, p: u64, k: u32) -> Result<Q> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !has_cyclic_sylow(lat, p) {
        return Err(Error::NonCyclicSylow(p));
    }
    let order = lat.group().order() as i64;
    let r = vp(order as u64, p);
    if k == 0 {
        return Ok(q(order));
    }
    if k > r {
        return Ok(Q::zero());
    }
    let (z, n) = order_p_normalizer_data(lat, p).expect("p divides |G|");
    let t = p.pow(r - k + 1) as i64;
    Ok(qf(t - 1, t) * q(order) * qf(z as i64, n as i64))
}

/// `v_p(C_{θ_G}(𝟙))` by three independent routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinValuation {
    /// From the Artin relation and the trivial-module formula.
    pub direct: Q,
    /// `−v_p|G| + (1/|G|) Σ_g v_p(|g|) + 𝒫(G,1)/(|G|(p−1))`.
    pub explicit: Q,
    /// `−r(1 − |Z_G(Q)|/|N_G(Q)|)`, only for cyclic Sylow `p`-subgroups.
    pub closed_form: Option<Q>,
}

pub fn artin_valuation(lat: &SubgroupLattice, p: u64) -> Result<ArtinValuation> {
    let direct = reg_val_trivial(lat, &artin_relation(lat), p)?;
    let g = lat.group();
    let order = g.order() as i64;
    let sum_v: i64 = (0..g.order()).map(|x| vp(g.elem_order(x) as u64, p) as i64).sum();
    let explicit = q(-(vp(order as u64, p) as i64))
        + qf(sum_v, order)
        + qf(p_divisible_count(lat, p, 1) as i64, order * (p as i64 - 1));
    let closed_form = has_cyclic_sylow(lat, p).then(|| {
        let r = vp(order as u64, p) as i64;
        match order_p_normalizer_data(lat, p) {
            Some((z, n)) => -q(r) * (Q::one() - qf(z as i64, n as i64)),
            None => Q::zero(),
        }
    });
    Ok(ArtinValuation { direct, explicit, closed_form })
}

/// Whether some p-hypo-elementary subgroup is non-cyclic.
pub fn has_non_cyclic_hypo(lat: &SubgroupLattice, p: u64) -> bool {
    !non_cyclic_hypo_classes(lat, p).is_empty()
}
