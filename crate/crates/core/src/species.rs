//! Species of trivial source modules: pairs `(P, g)` with `P` a p-subgroup and
//! `g ∈ N_G(P)` a p′-element, up to conjugacy and admissible powers.

use std::collections::{HashSet, VecDeque};

use serde_json::{json, Value};

use crate::burnside::mark;
use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::num::{gcd, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpeciesPair {
    /// Subgroup index of `P`.
    pub p_subgroup: usize,
    pub g: usize,
    /// Subgroup index of `⟨P, g⟩`.
    pub generated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeciesClass {
    pub rep: SpeciesPair,
    /// Conjugacy class of `⟨P, g⟩`.
    pub generated_class: usize,
    pub size: usize,
    pub cyclic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeciesClasses {
    pub p: u64,
    pub classes: Vec<SpeciesClass>,
}

/// The four counts behind the perm = triv criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermTrivCertificate {
    pub n_p_hypo: usize,
    pub dim_triv: usize,
    pub dim_cyclic_generated: usize,
    pub n_cyclic: usize,
}

impl PermTrivCertificate {
    pub fn holds(&self) -> bool {
        self.n_p_hypo + self.dim_cyclic_generated == self.dim_triv + self.n_cyclic
    }
}

fn is_p_power(mut n: usize, p: u64) -> bool {
    let p = p as usize;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Exponents `i` invertible mod `n` with `i ≡ 1 mod gcd(n, p−1)`.
fn admissible_powers(n: u64, p: u64) -> Vec<u64> {
    let m = gcd(n, p - 1);
    (1..=n.max(1)).filter(|&i| gcd(i, n) == 1 && (i - 1) % m == 0).collect()
}

fn make_pair(lat: &SubgroupLattice, p_subgroup: usize, g: usize) -> SpeciesPair {
    let group = lat.group();
    let gen = group.generate_from(lat.subgroup(p_subgroup).bits().clone(), lat.generators(p_subgroup), &[g]);
    let generated = lat.index_of(&gen).expect("lattice is closed");
    SpeciesPair { p_subgroup, g, generated }
}

pub fn species_classes(lat: &SubgroupLattice, p: u64) -> Result<SpeciesClasses> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let group = lat.group();
    let nsub = lat.subgroups().len();
    let whole = lat.class_rep(lat.whole_class());
    let gens = lat.generators(whole).to_vec();
    // conjugation action of each generator on subgroup indices
    let conj_sub: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            (0..nsub)
                .map(|i| lat.index_of(&group.conjugate_subgroup(lat.subgroup(i), x)).expect("closed"))
                .collect()
        })
        .collect();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut classes = Vec::new();
    for ps in (0..nsub).filter(|&i| is_p_power(lat.subgroup(i).order(), p)) {
        let norm = lat.subgroup(lat.normalizer(ps)).elements().to_vec();
        for g in norm.into_iter().map(|g| g as usize) {
            if gcd(group.elem_order(g) as u64, p) != 1 || seen.contains(&(ps, g)) {
                continue;
            }
            let mut orbit = vec![(ps, g)];
            seen.insert((ps, g));
            let mut queue = VecDeque::from([(ps, g)]);
            while let Some((q, h)) = queue.pop_front() {
                let powers = admissible_powers(group.elem_order(h) as u64, p);
                let moves = gens
                    .iter()
                    .enumerate()
                    .map(|(k, &x)| (conj_sub[k][q], group.conj(h, x)))
                    .chain(powers.into_iter().map(|i| (q, group.pow(h, i))));
                for next in moves {
                    if seen.insert(next) {
                        orbit.push(next);
                        queue.push_back(next);
                    }
                }
            }
            let first = make_pair(lat, ps, g);
            let generated_class = lat.class_of(first.generated);
            let target = lat.class_rep(generated_class);
            let rep = orbit
                .iter()
                .map(|&(q, h)| make_pair(lat, q, h))
                .filter(|pair| pair.generated == target)
                .min_by_key(|pair| (lat.subgroup(pair.p_subgroup).clone(), pair.g))
                .expect("orbit meets the class representative");
            classes.push(SpeciesClass {
                rep,
                generated_class,
                size: orbit.len(),
                cyclic: lat.class_is_cyclic(generated_class),
            });
        }
    }
    classes.sort_by(|a, b| {
        (a.generated_class, lat.subgroup(a.rep.p_subgroup), a.rep.g)
            .cmp(&(b.generated_class, lat.subgroup(b.rep.p_subgroup), b.rep.g))
    });
    Ok(SpeciesClasses { p, classes })
}

impl SpeciesClasses {
    pub fn dim_triv(&self) -> usize {
        self.classes.len()
    }

    /// Classes whose `⟨P, g⟩` is cyclic: the image in the rational
    /// representation ring.
    pub fn dim_cyclic_generated(&self) -> usize {
        self.classes.iter().filter(|c| c.cyclic).count()
    }

    pub fn certificate(&self, lat: &SubgroupLattice) -> PermTrivCertificate {
        let nc = lat.num_classes();
        PermTrivCertificate {
            n_p_hypo: (0..nc).filter(|&c| lat.class_is_p_hypo(c, self.p)).count(),
            dim_triv: self.dim_triv(),
            dim_cyclic_generated: self.dim_cyclic_generated(),
            n_cyclic: (0..nc).filter(|&c| lat.class_is_cyclic(c)).count(),
        }
    }

    pub fn to_json(&self, lat: &SubgroupLattice) -> Value {
        let cert = self.certificate(lat);
        let group = lat.group();
        let classes: Vec<Value> = self
            .classes
            .iter()
            .map(|c| {
                json!({
                    "p_subgroup": lat.subgroup(c.rep.p_subgroup).elements(),
                    "p_order": lat.subgroup(c.rep.p_subgroup).order(),
                    "g": c.rep.g,
                    "g_order": group.elem_order(c.rep.g),
                    "generated": lat.label(c.generated_class),
                    "cyclic": c.cyclic,
                    "size": c.size,
                })
            })
            .collect();
        json!({
            "classes": classes,
            "dim_triv": cert.dim_triv,
            "dim_cyclic_generated": cert.dim_cyclic_generated,
            "n_p_hypo": cert.n_p_hypo,
            "n_cyclic": cert.n_cyclic,
            "perm_eq_triv": cert.holds(),
        })
    }
}

/// Whether the permutation modules span the trivial source ring, with the
/// counts that decide it.
pub fn perm_eq_triv(lat: &SubgroupLattice, p: u64) -> Result<(bool, PermTrivCertificate)> {
    let cert = species_classes(lat, p)?.certificate(lat);
    Ok((cert.holds(), cert))
}

/// `t_{(P,g)}(𝟙↑_K) = #(G/K)^{⟨P,g⟩}` for a subgroup class `K`.
pub fn species_on_perm(lat: &SubgroupLattice, pair: &SpeciesPair, k: usize) -> u64 {
    mark(lat, k, lat.class_of(pair.generated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    fn lat(spec: &str) -> SubgroupLattice {
        SubgroupLattice::new(Group::from_spec(spec).unwrap()).unwrap()
    }

    #[test]
    fn dihedral_species() {
        for p in [3u64, 5, 7] {
            let l = lat(&format!("D{}", 2 * p));
            let s = species_classes(&l, p).unwrap();
            assert_eq!(s.dim_triv(), 4);
            assert!(perm_eq_triv(&l, p).unwrap().0);
            let refl_cp = s.classes.iter().find(|c| c.generated_class == l.whole_class()).unwrap();
            let c2 = (0..l.num_classes()).find(|&c| l.class_order(c) == 2).unwrap();
            assert_eq!(species_on_perm(&l, &refl_cp.rep, c2), 0);
        }
    }

    #[test]
    fn frobenius_twenty() {
        let l = lat("C5:2:C4");
        let s = species_classes(&l, 5).unwrap();
        assert_eq!(s.dim_triv(), 8);
        assert_eq!(s.dim_cyclic_generated(), 5);
        let (ok, cert) = perm_eq_triv(&l, 5).unwrap();
        assert!(!ok);
        assert_eq!((cert.n_p_hypo, cert.n_cyclic), (6, 4));
    }

    #[test]
    fn coprime_and_cyclic() {
        let l = lat("S3");
        let s = species_classes(&l, 5).unwrap();
        assert_eq!(s.dim_triv(), 3);
        assert!(s.classes.iter().all(|c| lat_trivial(&l, c.rep.p_subgroup)));
        let l = lat("C12");
        for p in [2, 3] {
            assert_eq!(species_classes(&l, p).unwrap().dim_triv(), 6);
        }
        let l = lat("S3");
        for c in 0..l.num_classes() {
            let pair = make_pair(&l, 0, 0);
            assert_eq!(species_on_perm(&l, &pair, c) as usize, 6 / l.class_order(c));
        }
        assert!(species_classes(&l, 4).is_err());
    }

    fn lat_trivial(l: &SubgroupLattice, i: usize) -> bool {
        l.subgroup(i).order() == 1
    }
}
