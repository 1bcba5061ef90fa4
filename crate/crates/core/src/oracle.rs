//! Regulator constants straight from the definition, on explicit integral
//! lattices: Gram determinants of an invariant form on fixed sublattices.
//! Independent of the combinatorial formulas in [`crate::regulator`].

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::group::{Group, GroupId, Subgroup};
use crate::lattice::SubgroupLattice;
use crate::linalg::{det_bareiss, integer_kernel, smith_invariants, solve_columns_integral};
use crate::num::{common_denominator, is_prime, vp_q, Q};
use crate::relations::require_relation;

pub type IMat = Vec<Vec<i64>>;

fn identity(d: usize) -> IMat {
    (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut c = vec![vec![0i64; m]; n];
    for i in 0..n {
        for (k, &aik) in a[i].iter().enumerate() {
            if aik != 0 {
                for j in 0..m {
                    c[i][j] += aik * b[k][j];
                }
            }
        }
    }
    c
}

fn big(m: &IMat) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// A `Z[G]`-lattice: one integer matrix per group element, acting on column
/// vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralLattice {
    group: GroupId,
    rank: usize,
    action: Vec<IMat>,
}

impl IntegralLattice {
    /// Validate a full action table: square matrices of the right size, the
    /// identity at element 0 and `ρ(g)ρ(h) = ρ(gh)`.
    pub fn from_action(group: &Group, rank: usize, action: Vec<IMat>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::Lattice(format!("expected {} matrices", group.order())));
        }
        for (g, m) in action.iter().enumerate() {
            if m.len() != rank || m.iter().any(|r| r.len() != rank) {
                return Err(Error::Lattice(format!("matrix for element {g} is not {rank}×{rank}")));
            }
        }
        if action[0] != identity(rank) {
            return Err(Error::Lattice("identity does not act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if mat_mul(&action[g], &action[h]) != action[group.mul(g, h)] {
                    return Err(Error::Lattice(format!("not a homomorphism at ({g}, {h})")));
                }
            }
        }
        Ok(IntegralLattice { group: group.id(), rank, action })
    }

    /// Extend matrices for generating elements to the whole group by
    /// multiplication, then validate.
    pub fn from_generators(group: &Group, rank: usize, gens: &[(usize, IMat)]) -> Result<Self> {
        let mut action: Vec<Option<IMat>> = vec![None; group.order()];
        action[0] = Some(identity(rank));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (g, m) in gens {
                if *g >= group.order() || m.len() != rank || m.iter().any(|r| r.len() != rank) {
                    return Err(Error::Lattice(format!("bad generator matrix for element {g}")));
                }
                let y = group.mul(x, *g);
                if action[y].is_none() {
                    action[y] = Some(mat_mul(action[x].as_ref().unwrap(), m));
                    queue.push_back(y);
                }
            }
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or_else(|| Error::Lattice(format!("element {g} not generated"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_action(group, rank, action)
    }

    /// Text format: a line `d m`, then `m` blocks of a line `g` followed by
    /// `d` rows of `d` integers.
    pub fn from_text(group: &Group, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let bad = |msg: &str| Error::Parse(format!("lattice file: {msg}"));
        let ints = |line: &str| -> Result<Vec<i64>> {
            line.split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|e| bad(&e.to_string())))
                .collect()
        };
        let head = ints(lines.next().ok_or_else(|| bad("empty"))?)?;
        let [d, m] = head[..] else { return Err(bad("first line must be `d m`")) };
        if d <= 0 || m < 0 {
            return Err(bad("rank must be positive"));
        }
        let (d, m) = (d as usize, m as usize);
        let mut gens = Vec::with_capacity(m);
        for _ in 0..m {
            let g = ints(lines.next().ok_or_else(|| bad("missing generator"))?)?;
            let [g] = g[..] else { return Err(bad("generator line must hold one index")) };
            if g < 0 {
                return Err(bad("negative element index"));
            }
            let mut mat = Vec::with_capacity(d);
            for _ in 0..d {
                let row = ints(lines.next().ok_or_else(|| bad("missing matrix row"))?)?;
                if row.len() != d {
                    return Err(bad("matrix row has the wrong length"));
                }
                mat.push(row);
            }
            gens.push((g as usize, mat));
        }
        if lines.next().is_some() {
            return Err(bad("trailing data"));
        }
        Self::from_generators(group, d, &gens)
    }

    pub fn to_json(&self) -> Value {
        json!({ "rank": self.rank, "action": self.action })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn group_id(&self) -> GroupId {
        self.group
    }

    pub fn action(&self, g: usize) -> &IMat {
        &self.action[g]
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let d = self.rank + other.rank;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = vec![vec![0; d]; d];
                for i in 0..self.rank {
                    m[i][..self.rank].copy_from_slice(&a[i]);
                }
                for i in 0..other.rank {
                    m[self.rank + i][self.rank..].copy_from_slice(&b[i]);
                }
                m
            })
            .collect();
        Ok(IntegralLattice { group: self.group, rank: d, action })
    }

    /// Kronecker product of the actions.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let (r, s) = (self.rank, other.rank);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                (0..r * s)
                    .map(|i| (0..r * s).map(|j| a[i / s][j / s] * b[i % s][j % s]).collect())
                    .collect()
            })
            .collect();
        Ok(IntegralLattice { group: self.group, rank: r * s, action })
    }
}

/// The permutation lattice `Z[G/H]` with basis the left cosets of `H`.
pub fn perm_lattice(lat: &SubgroupLattice, h: &Subgroup) -> IntegralLattice {
    let g = lat.group();
    let (coset_of, reps) = g.left_cosets(h);
    let d = reps.len();
    let action = (0..g.order())
        .map(|x| {
            let mut m = vec![vec![0i64; d]; d];
            for (j, &rep) in reps.iter().enumerate() {
                m[coset_of[g.mul(x, rep)]][j] = 1;
            }
            m
        })
        .collect();
    IntegralLattice { group: g.id(), rank: d, action }
}

/// A symmetric positive-definite `G`-invariant integer form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramForm(pub Vec<Vec<BigInt>>);

impl GramForm {
    /// Symmetric, positive definite (leading principal minors) and invariant.
    pub fn is_valid_for(&self, m: &IntegralLattice) -> bool {
        let b = &self.0;
        let d = m.rank;
        if b.len() != d || (0..d).any(|i| (0..i).any(|j| b[i][j] != b[j][i])) {
            return false;
        }
        let positive = (1..=d).all(|k| {
            let minor: Vec<Vec<BigInt>> = b[..k].iter().map(|r| r[..k].to_vec()).collect();
            det_bareiss(minor).is_positive()
        });
        positive
            && m.action.iter().all(|a| {
                let a = big(a);
                let at: Vec<Vec<BigInt>> = crate::linalg::transpose(&a);
                crate::linalg::mat_mul(&crate::linalg::mat_mul(&at, b), &a) == *b
            })
    }
}

/// `B = Σ_g ρ(g)ᵀ ρ(g)`.
pub fn invariant_form(m: &IntegralLattice) -> GramForm {
    invariant_form_from(m, &identity(m.rank))
}

/// `B = Σ_g ρ(g)ᵀ D ρ(g)` for a positive-definite starting form `D`.
pub fn invariant_form_from(m: &IntegralLattice, start: &IMat) -> GramForm {
    let d = m.rank;
    let mut acc = vec![vec![BigInt::zero(); d]; d];
    let start = big(start);
    for a in &m.action {
        let a = big(a);
        let at = crate::linalg::transpose(&a);
        let term = crate::linalg::mat_mul(&crate::linalg::mat_mul(&at, &start), &a);
        for i in 0..d {
            for j in 0..d {
                acc[i][j] += &term[i][j];
            }
        }
    }
    GramForm(acc)
}

/// Basis (as row vectors) of `M^H`, saturated in `M`.
pub fn fixed_sublattice(m: &IntegralLattice, h: &Subgroup) -> Vec<Vec<BigInt>> {
    let d = m.rank;
    let mut rows = Vec::new();
    for &x in h.elements() {
        let a = &m.action[x as usize];
        for i in 0..d {
            rows.push((0..d).map(|j| BigInt::from(a[i][j] - i64::from(i == j))).collect::<Vec<_>>());
        }
    }
    rows.retain(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()));
    integer_kernel(&rows, d)
}

/// An exact positive rational together with its p-adic valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleValue {
    pub value: Q,
    pub vp: i64,
}

/// `C_θ(M) = Π_H det(⟨,⟩|_{M^H} / |H|)^{a_H}` for an integral relation
/// `θ = Σ a_H [H]`, using the averaged form.
pub fn regulator_oracle(
    lat: &SubgroupLattice,
    m: &IntegralLattice,
    theta: &BurnsideElement,
    p: u64,
) -> Result<OracleValue> {
    regulator_oracle_with_form(lat, m, &invariant_form(m), theta, p)
}

pub fn regulator_oracle_with_form(
    lat: &SubgroupLattice,
    m: &IntegralLattice,
    form: &GramForm,
    theta: &BurnsideElement,
    p: u64,
) -> Result<OracleValue> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m.group != lat.group().id() {
        return Err(Error::GroupMismatch);
    }
    if !theta.is_integral() {
        return Err(Error::NonIntegral);
    }
    require_relation(lat, theta)?;
    let mut value = Q::one();
    for c in theta.support() {
        let h = lat.class_rep_subgroup(c);
        let x = fixed_sublattice(m, h);
        let k = x.len();
        let xt = crate::linalg::transpose(&x);
        let gram = crate::linalg::mat_mul(&crate::linalg::mat_mul(&x, &form.0), &xt);
        let det = if k == 0 { BigInt::one() } else { det_bareiss(gram) };
        let term = Q::new(det, BigInt::from(h.order()).pow(k as u32));
        let e = theta.coeff(c).to_integer();
        let e: i32 = i32::try_from(&e).map_err(|_| Error::Lattice("coefficient too large".into()))?;
        value *= num_traits::pow::Pow::pow(&term, e);
    }
    let vp = vp_q(&value, p);
    Ok(OracleValue { value, vp })
}

/// `v_p(C_θ(M))` for a rational relation: clear denominators and divide.
pub fn oracle_valuation(lat: &SubgroupLattice, m: &IntegralLattice, theta: &BurnsideElement, p: u64) -> Result<Q> {
    let d = common_denominator(theta.coeffs());
    let scaled = theta.scale(&Q::from_integer(d.clone()));
    let v = regulator_oracle(lat, m, &scaled, p)?;
    Ok(Q::new(BigInt::from(v.vp), d))
}

/// Invariant factors (> 1) of `H¹(⟨g⟩, M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Result {
    pub invariants: Vec<BigInt>,
}

impl H1Result {
    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.invariants.iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect()
    }
}

/// `H¹(⟨g⟩, M) = ker(N) / im(σ − 1)` with `N = Σ σ^i`: express `(σ−1)M` in
/// a saturated basis of `ker N` and read off the Smith invariants.
pub fn h1_cyclic(group: &Group, m: &IntegralLattice, g: usize) -> Result<H1Result> {
    if m.group != group.id() {
        return Err(Error::GroupMismatch);
    }
    let d = m.rank;
    let sigma = &m.action[g];
    let mut norm = vec![vec![0i64; d]; d];
    let mut power = identity(d);
    for _ in 0..group.elem_order(g) {
        for i in 0..d {
            for j in 0..d {
                norm[i][j] += power[i][j];
            }
        }
        power = mat_mul(&power, sigma);
    }
    let kernel = integer_kernel(&big(&norm), d);
    if kernel.is_empty() {
        return Ok(H1Result { invariants: Vec::new() });
    }
    let mut coords: Vec<Vec<BigInt>> = vec![Vec::with_capacity(d); kernel.len()];
    for j in 0..d {
        let col: Vec<BigInt> = (0..d).map(|i| BigInt::from(sigma[i][j] - i64::from(i == j))).collect();
        let x = solve_columns_integral(&kernel, &col)
            .ok_or_else(|| Error::Lattice("image of σ−1 outside the norm kernel".into()))?;
        for (row, xi) in coords.iter_mut().zip(x) {
            row.push(xi);
        }
    }
    let inv = smith_invariants(&coords);
    if inv.len() < kernel.len() {
        return Err(Error::Lattice("H¹ has a free part".into()));
    }
    Ok(H1Result { invariants: inv.into_iter().filter(|x| !x.is_one()).collect() })
}

/// The sign lattice and two rank-`(p−1)` cyclotomic lattices of `D_2p`.
#[derive(Debug, Clone)]
pub struct DihedralLattices {
    pub group: Group,
    pub rotation: usize,
    pub reflection: usize,
    pub epsilon: IntegralLattice,
    pub a: IntegralLattice,
    pub a_prime: IntegralLattice,
}

/// `ε`: rotations act trivially, reflections by −1. `A`: `Z[ζ_p]` with the
/// rotation multiplying by `ζ` and the reflection acting by `ζ ↦ ζ⁻¹`. `A′`:
/// as `A` with the reflection negated.
pub fn builtin_dihedral_lattices(p: u64) -> Result<DihedralLattices> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as usize;
    let group = Group::dihedral(2 * p)?;
    let (rotation, reflection) = (1, p);
    let d = p - 1;
    // columns are images of the basis 1, ζ, …, ζ^{p−2}; ζ^{p−1} = −Σ ζ^i
    let zeta_pow = |k: usize| -> Vec<i64> {
        let k = k % p;
        if k == p - 1 {
            vec![-1; d]
        } else {
            (0..d).map(|i| i64::from(i == k)).collect()
        }
    };
    let from_columns = |cols: Vec<Vec<i64>>| -> IMat { (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect() };
    let r = from_columns((0..d).map(|j| zeta_pow(j + 1)).collect());
    let s = from_columns((0..d).map(|j| zeta_pow(p - j)).collect());
    let s_neg: IMat = s.iter().map(|row| row.iter().map(|x| -x).collect()).collect();
    let epsilon = IntegralLattice::from_generators(&group, 1, &[(rotation, vec![vec![1]]), (reflection, vec![vec![-1]])])?;
    let a = IntegralLattice::from_generators(&group, d, &[(rotation, r.clone()), (reflection, s)])?;
    let a_prime = IntegralLattice::from_generators(&group, d, &[(rotation, r), (reflection, s_neg)])?;
    Ok(DihedralLattices { group, rotation, reflection, epsilon, a, a_prime })
}
