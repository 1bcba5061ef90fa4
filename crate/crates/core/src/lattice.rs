//! Subgroup lattices: exhaustive enumeration, conjugacy classes, normalisers,
//! centralisers, the top-down Möbius function and p-hypo-elementary tests.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::group::{BitSet, Group, Subgroup};
use crate::num::{gcd, is_prime, vp};

/// `G ≅ C_{p^r} ⋊ C_n` with `p ∤ n`, together with the subgroups realising
/// the decomposition (indices into the lattice).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypoStructure {
    pub p: u64,
    pub r: u32,
    pub n: u64,
    /// Order of the kernel `S ≤ C_n` of the action on `C_{p^r}`.
    pub s: u64,
    pub sylow: usize,
    pub complement: usize,
    pub kernel: usize,
}

#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: Group,
    subgroups: Vec<Subgroup>,
    gens: Vec<Vec<usize>>,
    lookup: HashMap<BitSet, usize>,
    cyclic: Vec<bool>,
    /// Members of each class, sorted; the first member is the representative.
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    labels: Vec<String>,
    normalizer: Vec<usize>,
    centralizer: Vec<usize>,
    mobius: Vec<i64>,
}

impl SubgroupLattice {
    pub fn new(group: Group) -> Result<Self> {
        let order = group.order();
        if order > crate::group::ORDER_BOUND {
            return Err(Error::OrderBound { order, bound: crate::group::ORDER_BOUND });
        }
        let (subs, gens) = enumerate(&group);

        let mut perm: Vec<usize> = (0..subs.len()).collect();
        perm.sort_by(|&a, &b| subs[a].cmp(&subs[b]));
        let subgroups: Vec<Subgroup> = perm.iter().map(|&i| subs[i].clone()).collect();
        let gens: Vec<Vec<usize>> = perm.iter().map(|&i| gens[i].clone()).collect();
        let lookup: HashMap<BitSet, usize> =
            subgroups.iter().enumerate().map(|(i, s)| (s.bits().clone(), i)).collect();

        let cyclic = subgroups
            .iter()
            .map(|s| s.elements().iter().any(|&x| group.elem_order(x as usize) == s.order()))
            .collect();

        let find = |s: &Subgroup| lookup[s.bits()];
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut normalizer = vec![0; subgroups.len()];
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = Vec::new();
            for g in 0..order {
                let j = find(&group.conjugate_subgroup(&subgroups[i], g));
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    members.push(j);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        for (i, s) in subgroups.iter().enumerate() {
            let mut bits = BitSet::new(order);
            for g in 0..order {
                if gens[i].iter().all(|&x| s.contains(group.conj(x, g))) {
                    bits.insert(g);
                }
            }
            normalizer[i] = lookup[&bits];
        }
        let centralizer = gens
            .iter()
            .map(|gs| {
                let mut bits = BitSet::new(order);
                for g in 0..order {
                    if gs.iter().all(|&x| group.mul(x, g) == group.mul(g, x)) {
                        bits.insert(g);
                    }
                }
                lookup[&bits]
            })
            .collect();

        let mut labels = Vec::with_capacity(classes.len());
        let mut last_order = 0;
        let mut idx = 0;
        for members in &classes {
            let o = subgroups[members[0]].order();
            if o != last_order {
                last_order = o;
                idx = 0;
            }
            idx += 1;
            labels.push(format!("{o}:{idx}"));
        }

        let mut mobius = vec![0i64; subgroups.len()];
        for i in (0..subgroups.len()).rev() {
            if i + 1 == subgroups.len() {
                mobius[i] = 1;
                continue;
            }
            let above: i64 = (i + 1..subgroups.len())
                .filter(|&j| subgroups[i].is_subgroup_of(&subgroups[j]))
                .map(|j| mobius[j])
                .sum();
            mobius[i] = -above;
        }

        Ok(SubgroupLattice {
            group,
            subgroups,
            gens,
            lookup,
            cyclic,
            classes,
            class_of,
            labels,
            normalizer,
            centralizer,
            mobius,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn generators(&self, i: usize) -> &[usize] {
        &self.gens[i]
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.lookup.get(s.bits()).copied()
    }

    /// Index of the subgroup with the given element set.
    pub fn index_of_bits(&self, bits: &BitSet) -> Option<usize> {
        self.lookup.get(bits).copied()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_members(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn class_rep_subgroup(&self, c: usize) -> &Subgroup {
        &self.subgroups[self.classes[c][0]]
    }

    pub fn class_order(&self, c: usize) -> usize {
        self.class_rep_subgroup(c).order()
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Conjugacy class of an arbitrary subgroup given by its element set.
    pub fn class_of_bits(&self, bits: &BitSet) -> usize {
        let i = self.lookup.get(bits).expect("subgroup missing from lattice");
        self.class_of[*i]
    }

    pub fn label(&self, c: usize) -> &str {
        &self.labels[c]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn class_by_label(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownClass(label.to_string()))
    }

    pub fn whole_class(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn normalizer(&self, i: usize) -> usize {
        self.normalizer[i]
    }

    pub fn centralizer(&self, i: usize) -> usize {
        self.centralizer[i]
    }

    pub fn mobius_top(&self, i: usize) -> i64 {
        self.mobius[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.subgroups[i].is_subgroup_of(&self.subgroups[j])
    }

    pub fn is_cyclic(&self, i: usize) -> bool {
        self.cyclic[i]
    }

    pub fn class_is_cyclic(&self, c: usize) -> bool {
        self.cyclic[self.class_rep(c)]
    }

    /// `H` has a normal Sylow `p`-subgroup with cyclic quotient.
    pub fn is_p_hypo(&self, i: usize, p: u64) -> bool {
        let h = &self.subgroups[i];
        let order = h.order() as u64;
        let p_part = p.pow(vp(order, p));
        let m = order / p_part;
        let p_elements = h
            .elements()
            .iter()
            .filter(|&&x| {
                let o = self.group.elem_order(x as usize) as u64;
                p.pow(vp(o, p)) == o
            })
            .count() as u64;
        if p_elements != p_part {
            return false;
        }
        h.elements().iter().any(|&x| {
            let o = self.group.elem_order(x as usize) as u64;
            o / p.pow(vp(o, p)) == m
        })
    }

    pub fn class_is_p_hypo(&self, c: usize, p: u64) -> bool {
        self.is_p_hypo(self.class_rep(c), p)
    }

    /// Decompose the whole group as `C_{p^r} ⋊ C_n`, if possible.
    pub fn hypo_structure(&self, p: u64) -> Option<HypoStructure> {
        if !is_prime(p) {
            return None;
        }
        let g = &self.group;
        let order = g.order() as u64;
        let r = vp(order, p);
        let pr = p.pow(r);
        let n = order / pr;
        let sylow_gen = (0..g.order()).find(|&x| g.elem_order(x) as u64 == pr)?;
        let sylow = self.index_of(&g.generate(&[sylow_gen]))?;
        if !g.is_normal(&self.subgroups[sylow]) {
            return None;
        }
        let comp_gen = (0..g.order()).find(|&x| g.elem_order(x) as u64 == n)?;
        let complement = self.index_of(&g.generate(&[comp_gen]))?;
        let mut bits = BitSet::new(g.order());
        for &c in self.subgroups[complement].elements() {
            let c = c as usize;
            if g.mul(c, sylow_gen) == g.mul(sylow_gen, c) {
                bits.insert(c);
            }
        }
        let kernel = self.lookup[&bits];
        Some(HypoStructure {
            p,
            r,
            n,
            s: self.subgroups[kernel].order() as u64,
            sylow,
            complement,
            kernel,
        })
    }

    /// Structural self-check: intersections and conjugates of subgroups are
    /// present, class sizes add up, normalisers and centralisers are
    /// consistent, every prime power dividing `|G|` occurs as a subgroup
    /// order, and the Möbius recursion holds.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Table(msg));
        let g = &self.group;
        let n = self.subgroups.len();
        if self.classes.iter().map(Vec::len).sum::<usize>() != n {
            return fail("class sizes do not sum to the subgroup count".into());
        }
        for (i, s) in self.subgroups.iter().enumerate() {
            if g.order() % s.order() != 0 {
                return fail(format!("subgroup {i} violates Lagrange"));
            }
            for x in 0..g.order() {
                if self.index_of(&g.conjugate_subgroup(s, x)).is_none() {
                    return fail(format!("conjugate of subgroup {i} missing"));
                }
            }
            for t in &self.subgroups[i + 1..] {
                if self.index_of_bits(&s.bits().intersection(t.bits())).is_none() {
                    return fail(format!("intersection with subgroup {i} missing"));
                }
            }
            let nz = &self.subgroups[self.normalizer[i]];
            let cz = &self.subgroups[self.centralizer[i]];
            if !s.is_subgroup_of(nz) || !cz.is_subgroup_of(nz) {
                return fail(format!("normaliser/centraliser of subgroup {i} inconsistent"));
            }
            let above: i64 = (0..n).filter(|&j| self.leq(i, j)).map(|j| self.mobius[j]).sum();
            if (i + 1 == n && self.mobius[i] != 1) || (i + 1 != n && above != 0) {
                return fail(format!("Möbius recursion fails at subgroup {i}"));
            }
        }
        for (p, e) in crate::num::factorize(g.order() as u64) {
            for k in 1..=e {
                let q = p.pow(k) as usize;
                if !self.subgroups.iter().any(|s| s.order() == q) {
                    return fail(format!("no subgroup of order {q}"));
                }
            }
        }
        Ok(())
    }

    /// The lattice of a subgroup, built on `subgroup_as_group`.
    pub fn sublattice(&self, i: usize) -> Result<SubgroupLattice> {
        SubgroupLattice::new(self.group.subgroup_as_group(&self.subgroups[i]))
    }
}

/// Seed with all cyclic subgroups, then close under joins with cyclic
/// subgroups of prime-power order. Every subgroup is generated by
/// prime-power-order elements, so the fixpoint is the whole lattice.
fn enumerate(g: &Group) -> (Vec<Subgroup>, Vec<Vec<usize>>) {
    let mut subs: Vec<Subgroup> = Vec::new();
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashMap<BitSet, usize> = HashMap::new();
    let mut pp_gens: Vec<usize> = Vec::new();

    let mut insert = |s: Subgroup, gs: Vec<usize>, subs: &mut Vec<Subgroup>, gens: &mut Vec<Vec<usize>>| {
        if seen.contains_key(s.bits()) {
            return None;
        }
        seen.insert(s.bits().clone(), subs.len());
        subs.push(s);
        gens.push(gs);
        Some(subs.len() - 1)
    };

    let mut queue = VecDeque::new();
    for x in 0..g.order() {
        let s = g.generate(&[x]);
        let o = g.elem_order(x) as u64;
        let is_pp = o > 1 && crate::num::factorize(o).len() == 1;
        let gs = if x == 0 { Vec::new() } else { vec![x] };
        if let Some(i) = insert(s, gs, &mut subs, &mut gens) {
            queue.push_back(i);
            if is_pp {
                pp_gens.push(x);
            }
        }
    }
    while let Some(i) = queue.pop_front() {
        for &c in &pp_gens {
            if subs[i].contains(c) {
                continue;
            }
            let joined = g.generate_from(subs[i].bits().clone(), &gens[i], &[c]);
            let mut gs = gens[i].clone();
            gs.push(c);
            if let Some(j) = insert(joined, gs, &mut subs, &mut gens) {
                queue.push_back(j);
            }
        }
    }
    (subs, gens)
}

/// Sizes used by several closed forms: `(|Z_G(Q)|, |N_G(Q)|)` for a subgroup
/// `Q` of order `p` (the first one in lattice order).
pub fn order_p_normalizer_data(lat: &SubgroupLattice, p: u64) -> Option<(usize, usize)> {
    let q = lat.subgroups().iter().position(|s| s.order() as u64 == p)?;
    Some((
        lat.subgroup(lat.centralizer(q)).order(),
        lat.subgroup(lat.normalizer(q)).order(),
    ))
}

pub(crate) fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    gcd(gcd(a, b), c)
}
