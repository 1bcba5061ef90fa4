//! Finite groups as validated Cayley tables, their constructors and quotients.

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::num::{gcd, pow_mod};

/// Hard limit for constructed groups; subgroup enumeration is exhaustive.
pub const ORDER_BOUND: usize = 400;

/// Fingerprint of a multiplication table, used to detect mixing of Burnside
/// elements over different groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId(pub u64);

/// Fixed-width bit set over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet(Vec<u64>);

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.0[w] & (1 << b) == 0;
        self.0[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

/// A subgroup stored canonically as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<u32>,
    bits: BitSet,
}

impl Subgroup {
    pub fn from_bits(bits: BitSet) -> Self {
        let elements = bits.iter().map(|i| i as u32).collect();
        Subgroup { elements, bits }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.bits.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Subgroups compare by order first, then lexicographically by element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

#[derive(Clone)]
pub struct Group {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    label: String,
    id: GroupId,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul
    }
}

impl Eq for Group {}

impl Group {
    /// Validate a Cayley table (`table[g][h] = g·h`, element 0 the identity).
    pub fn from_table(table: Vec<Vec<usize>>, label: impl Into<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Table("empty table".into()));
        }
        if n > ORDER_BOUND {
            return Err(Error::OrderBound { order: n, bound: ORDER_BOUND });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Table(format!("row {g} has {} entries, expected {n}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::Table(format!("entry {x} out of range in row {g}")));
                }
                mul.push(x as u32);
            }
        }
        for g in 0..n {
            if mul[g] as usize != g || mul[g * n] as usize != g {
                return Err(Error::Table("element 0 is not a two-sided identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b] as usize;
                for c in 0..n {
                    let bc = mul[b * n + c] as usize;
                    if mul[ab * n + c] != mul[a * n + bc] {
                        return Err(Error::Table(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inv = vec![u32::MAX; n];
        for g in 0..n {
            let Some(h) = (0..n).find(|&h| mul[g * n + h] == 0 && mul[h * n + g] == 0) else {
                return Err(Error::Table(format!("element {g} has no inverse")));
            };
            inv[g] = h as u32;
        }
        let mut elem_order = vec![0u32; n];
        for g in 0..n {
            let mut x = g;
            let mut k = 1;
            while x != 0 {
                x = mul[x * n + g] as usize;
                k += 1;
            }
            elem_order[g] = k;
        }
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        mul.hash(&mut hasher);
        let id = GroupId(hasher.finish());
        Ok(Group { order: n, mul, inv, elem_order, label: label.into(), id })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn elem_order(&self, g: usize) -> usize {
        self.elem_order[g] as usize
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let k = k % self.elem_order(g) as u64;
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    /// `g⁻¹ x g`
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|g| (0..self.order).map(|h| self.mul(g, h)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.elem_order
            .iter()
            .fold(1u64, |acc, &o| acc / gcd(acc, o as u64) * o as u64)
    }

    pub fn whole(&self) -> Subgroup {
        let mut bits = BitSet::new(self.order);
        for g in 0..self.order {
            bits.insert(g);
        }
        Subgroup::from_bits(bits)
    }

    pub fn trivial(&self) -> Subgroup {
        let mut bits = BitSet::new(self.order);
        bits.insert(0);
        Subgroup::from_bits(bits)
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        self.generate_from(self.trivial().bits().clone(), &[], gens)
    }

    /// Subgroup generated by an already closed set `base` (with generators
    /// `base_gens`) together with `extra`.
    pub fn generate_from(&self, base: BitSet, base_gens: &[usize], extra: &[usize]) -> Subgroup {
        let gens: Vec<usize> = base_gens.iter().chain(extra).copied().collect();
        let mut bits = base;
        let mut queue: VecDeque<usize> = bits.iter().collect();
        if queue.is_empty() {
            bits.insert(0);
            queue.push_back(0);
        }
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if bits.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_bits(bits)
    }

    /// Check that an arbitrary element set is a subgroup.
    pub fn subgroup_from_elements(&self, elems: &[usize]) -> Result<Subgroup> {
        let mut bits = BitSet::new(self.order);
        for &e in elems {
            if e >= self.order {
                return Err(Error::NotSubgroup(format!("element {e} out of range")));
            }
            bits.insert(e);
        }
        if !bits.contains(0) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        let list: Vec<usize> = bits.iter().collect();
        for &a in &list {
            if !bits.contains(self.inv(a)) {
                return Err(Error::NotSubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &list {
                if !bits.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("not closed at ({a}, {b})")));
                }
            }
        }
        if self.order % list.len() != 0 {
            return Err(Error::NotSubgroup("order does not divide the group order".into()));
        }
        Ok(Subgroup::from_bits(bits))
    }

    /// Left cosets `xH`: the coset index of every element and one
    /// representative per coset (the smallest element).
    pub fn left_cosets(&self, h: &Subgroup) -> (Vec<usize>, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::with_capacity(self.order / h.order());
        for x in 0..self.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &y in h.elements() {
                coset_of[self.mul(x, y as usize)] = reps.len();
            }
            reps.push(x);
        }
        (coset_of, reps)
    }

    /// Orbits of `k` acting by left multiplication on the cosets `G/h`,
    /// i.e. the double cosets `K x H`.
    pub fn double_cosets(&self, h: &Subgroup, k: &Subgroup) -> Vec<DoubleCoset> {
        let (coset_of, reps) = self.left_cosets(h);
        let mut seen = vec![false; reps.len()];
        let mut out = Vec::new();
        for c in 0..reps.len() {
            if seen[c] {
                continue;
            }
            let x = reps[c];
            let mut size = 0;
            for &y in k.elements() {
                let d = coset_of[self.mul(y as usize, x)];
                if !seen[d] {
                    seen[d] = true;
                    size += 1;
                }
            }
            out.push(DoubleCoset { rep: x, orbit_len: size });
        }
        out
    }

    /// `K ∩ xHx⁻¹`, the stabiliser in `k` of the coset `xH`.
    pub fn coset_stabilizer(&self, h: &Subgroup, k: &Subgroup, x: usize) -> Subgroup {
        let mut bits = BitSet::new(self.order);
        for &y in k.elements() {
            if h.contains(self.conj(y as usize, x)) {
                bits.insert(y as usize);
            }
        }
        Subgroup::from_bits(bits)
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut bits = BitSet::new(self.order);
        for &x in h.elements() {
            bits.insert(self.conj(x as usize, g));
        }
        Subgroup::from_bits(bits)
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        (0..self.order).all(|g| n.elements().iter().all(|&x| n.contains(self.conj(x as usize, g))))
    }

    /// The subgroup as a group in its own right. Element `i` of the result is
    /// `h.elements()[i]` of `self`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Group {
        let elems = h.elements();
        let pos = |x: usize| elems.binary_search(&(x as u32)).expect("closed subgroup");
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos(self.mul(a as usize, b as usize))).collect())
            .collect();
        Group::from_table(table, format!("{}<{}>", self.label, h.order()))
            .expect("subgroup of a valid group")
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if proj[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &x in n.elements() {
                proj[self.mul(g, x as usize)] = c;
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| proj[self.mul(a, b)]).collect())
            .collect();
        let group = Group::from_table(table, format!("{}/{}", self.label, n.order()))?;
        for a in 0..self.order {
            for b in 0..self.order {
                if proj[self.mul(a, b)] != group.mul(proj[a], proj[b]) {
                    return Err(Error::Table("projection is not a homomorphism".into()));
                }
            }
        }
        Ok(Quotient { group, proj })
    }

    /// Parse a Cayley-table file: first line `n`, then `n` rows of `n`
    /// whitespace-separated element indices.
    pub fn from_cayley_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Table("empty file".into()))?
            .parse()
            .map_err(|e| Error::Table(format!("bad order line: {e}")))?;
        let mut table = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Table(format!("missing row {i}")))?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|e| Error::Table(format!("row {i}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::Table("trailing rows".into()));
        }
        Group::from_table(table, "table")
    }

    pub fn to_cayley_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for g in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|h| self.mul(g, h).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        check_bound(n)?;
        if n == 0 {
            return Err(Error::Grammar { spec: "C0".into(), reason: "order must be positive".into() });
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Group::from_table(table, format!("C{n}"))
    }

    /// Dihedral group of order `n` (n even). Index `i < n/2` is the rotation
    /// `r^i`, index `n/2 + i` the reflection `s r^i`.
    pub fn dihedral(n: usize) -> Result<Self> {
        check_bound(n)?;
        if n == 0 || n % 2 != 0 {
            return Err(Error::Grammar {
                spec: format!("D{n}"),
                reason: "dihedral order must be even and positive".into(),
            });
        }
        let m = n / 2;
        let elem = |refl: bool, i: usize| if refl { m + i } else { i };
        let table = (0..n)
            .map(|x| {
                let (xs, xi) = (x >= m, x % m);
                (0..n)
                    .map(|y| {
                        let (ys, yi) = (y >= m, y % m);
                        // r^a s = s r^-a
                        let shifted = if ys { (yi + m - xi) % m } else { (xi + yi) % m };
                        elem(xs ^ ys, shifted)
                    })
                    .collect()
            })
            .collect();
        Group::from_table(table, format!("D{n}"))
    }

    /// Symmetric group on `n ≤ 5` points, permutations in lexicographic order.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::Grammar { spec: format!("S{n}"), reason: "supported for 1 ≤ n ≤ 5".into() });
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        Group::from_table(table, format!("S{n}"))
    }

    pub fn direct_product(a: &Group, b: &Group) -> Result<Self> {
        let (na, nb) = (a.order, b.order);
        check_bound(na * nb)?;
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        Group::from_table(table, format!("{}x{}", a.label, b.label))
    }

    /// `base ⋊ C_n` where the generator of `C_n` acts on the abelian group
    /// `base` by `x ↦ x^k`. Element `(a, b)` has index `b·|base| + a`.
    pub fn semidirect_power(base: &Group, k: u64, n: usize, spec: &str) -> Result<Self> {
        let m = base.order;
        check_bound(m * n)?;
        let bad = |reason: &str| Error::SemidirectExponent {
            spec: spec.to_string(),
            k,
            n: n as u64,
            reason: reason.to_string(),
        };
        if n == 0 {
            return Err(bad("complement order must be positive"));
        }
        if !base.is_abelian() {
            return Err(bad("base group must be abelian"));
        }
        let e = base.exponent();
        if gcd(k % e.max(1), e) != 1 && e > 1 {
            return Err(bad("k is not a unit modulo the exponent of the base"));
        }
        if pow_mod(k, n as u64, e) != 1 % e {
            return Err(bad("k^n is not 1 modulo the exponent of the base"));
        }
        // act[b][a] = a^(k^b)
        let mut act = vec![vec![0usize; m]; n];
        for a in 0..m {
            act[0][a] = a;
        }
        for b in 1..n {
            for a in 0..m {
                act[b][a] = base.pow(act[b - 1][a], k);
            }
        }
        let table = (0..m * n)
            .map(|x| {
                let (a1, b1) = (x % m, x / m);
                (0..m * n)
                    .map(|y| {
                        let (a2, b2) = (y % m, y / m);
                        let a = base.mul(a1, act[b1][a2]);
                        ((b1 + b2) % n) * m + a
                    })
                    .collect()
            })
            .collect();
        Group::from_table(table, spec.to_string())
    }

    /// Build a group from the ASCII spec grammar:
    /// `atom := C<n> | D<n> | S<n>`, `semi := C<m>:<k>:C<n> | (<expr>):<k>:C<n>`,
    /// `expr := (atom|semi) ("x" (atom|semi))*`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let mut p = SpecParser { src: spec.trim().as_bytes(), pos: 0, spec: spec.trim() };
        let g = p.expr()?;
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(g.relabel(spec.trim()))
    }

    fn relabel(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }
}

fn check_bound(n: usize) -> Result<()> {
    if n > ORDER_BOUND {
        Err(Error::OrderBound { order: n, bound: ORDER_BOUND })
    } else {
        Ok(())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// One double coset `K x H`, seen as a `K`-orbit of `orbit_len` cosets of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleCoset {
    pub rep: usize,
    pub orbit_len: usize,
}

/// A quotient group together with the element-wise projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Group,
    pub proj: Vec<usize>,
}

impl Quotient {
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let mut bits = BitSet::new(self.group.order());
        for &x in h.elements() {
            bits.insert(self.proj[x as usize]);
        }
        Subgroup::from_bits(bits)
    }

    pub fn preimage(&self, g: &Group, h: &Subgroup) -> Subgroup {
        let mut bits = BitSet::new(g.order());
        for x in 0..g.order() {
            if h.contains(self.proj[x]) {
                bits.insert(x);
            }
        }
        Subgroup::from_bits(bits)
    }
}

struct SpecParser<'a> {
    src: &'a [u8],
    pos: usize,
    spec: &'a str,
}

impl SpecParser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::Grammar { spec: self.spec.to_string(), reason: format!("{reason} at offset {}", self.pos) }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn expr(&mut self) -> Result<Group> {
        let mut g = self.term()?;
        while self.eat(b'x') {
            let h = self.term()?;
            g = Group::direct_product(&g, &h)?;
        }
        Ok(g)
    }

    fn bound(&self, n: u64) -> Result<usize> {
        if n as usize > ORDER_BOUND {
            Err(Error::OrderBound { order: n as usize, bound: ORDER_BOUND })
        } else {
            Ok(n as usize)
        }
    }

    fn term(&mut self) -> Result<Group> {
        let start = self.pos;
        let base = if self.eat(b'(') {
            let g = self.expr()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            if self.peek() != Some(b':') {
                return Err(self.err("parenthesised base must be followed by ':k:Cn'"));
            }
            g
        } else {
            let kind = self.peek().ok_or_else(|| self.err("unexpected end"))?;
            self.pos += 1;
            let n = self.int()?;
            let n = self.bound(n)?;
            match kind {
                b'C' => Group::cyclic(n)?,
                b'D' => Group::dihedral(n)?,
                b'S' => Group::symmetric(n)?,
                _ => {
                    self.pos -= 1;
                    return Err(self.err("expected C, D, S or '('"));
                }
            }
        };
        if !self.eat(b':') {
            return Ok(base);
        }
        let k = self.int()?;
        if !self.eat(b':') || !self.eat(b'C') {
            return Err(self.err("expected ':C<n>'"));
        }
        let n = self.int()?;
        let n = self.bound(n)?;
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Group::semidirect_power(&base, k, n, text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let c6 = Group::from_spec("C6").unwrap();
        assert_eq!(c6.order(), 6);
        assert!(c6.is_abelian());
        let d10 = Group::from_spec("D10").unwrap();
        assert_eq!(d10.order(), 10);
        assert!(!d10.is_abelian());
        assert_eq!(d10.elem_order(5), 2);
        assert_eq!(d10.elem_order(1), 5);
        let s4 = Group::from_spec("S4").unwrap();
        assert_eq!(s4.order(), 24);
        let g = Group::from_spec("C7:3:C12").unwrap();
        assert_eq!(g.order(), 84);
        assert!(!g.is_abelian());
        let p = Group::from_spec("C3xC3xS3").unwrap();
        assert_eq!(p.order(), 54);
        let h = Group::from_spec("(C7xC7):2:C3").unwrap();
        assert_eq!(h.order(), 147);
    }

    #[test]
    fn spec_errors() {
        assert!(matches!(Group::from_spec("X3"), Err(Error::Grammar { .. })));
        assert!(matches!(Group::from_spec("C"), Err(Error::Grammar { .. })));
        assert!(matches!(Group::from_spec("D7"), Err(Error::Grammar { .. })));
        assert!(matches!(Group::from_spec("C6x"), Err(Error::Grammar { .. })));
        assert!(matches!(Group::from_spec("C7:3:C4"), Err(Error::SemidirectExponent { .. })));
        assert!(matches!(Group::from_spec("C8:2:C2"), Err(Error::SemidirectExponent { .. })));
        assert!(matches!(Group::from_spec("(S3):1:C2"), Err(Error::SemidirectExponent { .. })));
        assert!(matches!(Group::from_spec("C500"), Err(Error::OrderBound { .. })));
    }

    #[test]
    fn table_validation() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(Group::from_table(bad, "bad").is_err());
        let not_assoc = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]];
        assert!(Group::from_table(not_assoc, "bad").is_err());
        let c3 = Group::cyclic(3).unwrap();
        let again = Group::from_cayley_text(&c3.to_cayley_text()).unwrap();
        assert_eq!(again, c3);
    }

    #[test]
    fn quotients() {
        let s3 = Group::from_spec("S3").unwrap();
        let a3 = s3.generate(&[(0..6).find(|&g| s3.elem_order(g) == 3).unwrap()]);
        assert_eq!(s3.quotient(&a3).unwrap().group.order(), 2);
        let c2 = s3.generate(&[(0..6).find(|&g| s3.elem_order(g) == 2).unwrap()]);
        assert_eq!(s3.quotient(&c2).unwrap_err(), Error::NotNormal);
        let c12 = Group::cyclic(12).unwrap();
        let c4 = c12.generate(&[3]);
        let q = c12.quotient(&c4).unwrap();
        assert_eq!(q.group.order(), 3);
        assert_eq!(q.group, Group::cyclic(3).unwrap());
    }

    #[test]
    fn subgroup_checks() {
        let s3 = Group::from_spec("S3").unwrap();
        assert!(s3.subgroup_from_elements(&[0, 1]).is_ok() || s3.elem_order(1) != 2);
        assert!(s3.subgroup_from_elements(&[1]).is_err());
        let sub = s3.subgroup_from_elements(&(0..6).collect::<Vec<_>>()).unwrap();
        assert_eq!(sub.order(), 6);
    }
}
