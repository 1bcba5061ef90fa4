//! The divisor matrices `N(n)`, `M(n,s)` and `Q(d)` with their totient
//! determinant formulas.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::linalg::det_bareiss;
use crate::num::{divisors, fmt_q, gcd, totient, Q};
use crate::regulator::{hypo_shape, perm_pairing};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorMatrixKind {
    N,
    M,
    Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorMatrix {
    pub kind: DivisorMatrixKind,
    pub params: Vec<u64>,
    pub labels: Vec<u64>,
    pub entries: Vec<Vec<i64>>,
}

impl DivisorMatrix {
    pub fn det(&self) -> BigInt {
        if self.labels.is_empty() {
            return BigInt::one();
        }
        det_bareiss(self.entries.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// `Π φ(d)` over the labels for `N` and `M`; `1` for `Q`.
    pub fn formula_det(&self) -> BigInt {
        match self.kind {
            DivisorMatrixKind::Q => BigInt::one(),
            _ => self.labels.iter().map(|&d| BigInt::from(totient(d))).product(),
        }
    }

    pub fn det_matches(&self) -> bool {
        self.det() == self.formula_det()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.labels.len();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": format!("{:?}", self.kind),
            "params": self.params,
            "labels": self.labels,
            "entries": self.entries,
            "det": self.det().to_string(),
            "formula_det": self.formula_det().to_string(),
            "match": self.det_matches(),
        })
    }
}

/// `N(n)`: rows and columns indexed by the divisors of `n`, entry `gcd(d₁,d₂)`.
pub fn n_matrix(n: u64) -> Result<DivisorMatrix> {
    if n == 0 {
        return Err(Error::Parse("n must be positive".into()));
    }
    let labels = divisors(n);
    let entries = labels.iter().map(|&a| labels.iter().map(|&b| gcd(a, b) as i64).collect()).collect();
    Ok(DivisorMatrix { kind: DivisorMatrixKind::N, params: vec![n], labels, entries })
}

/// `M(n,s)`: indexed by divisors of `n` not dividing `s`, entry
/// `gcd(d₁,d₂) − gcd(d₁,d₂,s)`.
pub fn m_matrix(n: u64, s: u64) -> Result<DivisorMatrix> {
    if n == 0 || s == 0 || n % s != 0 {
        return Err(Error::Parse(format!("s = {s} must divide n = {n}")));
    }
    let labels: Vec<u64> = divisors(n).into_iter().filter(|d| s % d != 0).collect();
    let entries = labels
        .iter()
        .map(|&a| labels.iter().map(|&b| (gcd(a, b) - gcd(gcd(a, b), s)) as i64).collect())
        .collect();
    Ok(DivisorMatrix { kind: DivisorMatrixKind::M, params: vec![n, s], labels, entries })
}

/// `Q(d)`: entry `(i,j) = min(i,j)` for `1 ≤ i,j ≤ d`.
pub fn q_matrix(d: u64) -> DivisorMatrix {
    let labels: Vec<u64> = (1..=d).collect();
    let entries = labels.iter().map(|&a| labels.iter().map(|&b| a.min(b) as i64).collect()).collect();
    DivisorMatrix { kind: DivisorMatrixKind::Q, params: vec![d], labels, entries }
}

/// For coprime `r, t`, `N(rt)` is `N(r) ⊗ N(t)` after relabelling `d ↦ (gcd(d,r), gcd(d,t))`.
pub fn n_matrix_tensor_check(r: u64, t: u64) -> Result<bool> {
    if gcd(r, t) != 1 {
        return Err(Error::Parse(format!("{r} and {t} are not coprime")));
    }
    let (nr, nt, nrt) = (n_matrix(r)?, n_matrix(t)?, n_matrix(r * t)?);
    let pos = |labels: &[u64], x: u64| labels.iter().position(|&d| d == x).unwrap();
    let split = |d: u64| (pos(&nr.labels, gcd(d, r)), pos(&nt.labels, gcd(d, t)));
    Ok(nrt.labels.iter().enumerate().all(|(i, &a)| {
        nrt.labels.iter().enumerate().all(|(j, &b)| {
            let ((ar, at), (br, bt)) = (split(a), split(b));
            nrt.entries[i][j] == nr.entries[ar][br] * nt.entries[at][bt]
        })
    }))
}

/// The perm pairing of `C_{p^r}⋊C_n` rescaled by `|H||K|/(n)` and reindexed by
/// `(e, h)` (e-major, `h ∈ D(n,s)` increasing), next to `−Q(r) ⊗ M(n,s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorCheck {
    pub labels: Vec<(u32, u64)>,
    pub rescaled: Vec<Vec<Q>>,
    pub expected: Vec<Vec<i64>>,
}

impl TensorCheck {
    pub fn matches(&self) -> bool {
        self.rescaled
            .iter()
            .zip(&self.expected)
            .all(|(a, b)| a.iter().zip(b).all(|(x, &y)| *x == Q::from_integer(y.into())))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "labels": self.labels.iter().map(|(e, h)| format!("{e},{h}")).collect::<Vec<_>>(),
            "rescaled": self.rescaled.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "expected": self.expected,
            "match": self.matches(),
        })
    }
}

pub fn hypo_pairing_tensor_check(lat: &SubgroupLattice, p: u64) -> Result<TensorCheck> {
    let hs = lat.hypo_structure(p).ok_or(Error::NotHypoShape(p))?;
    let pairing = perm_pairing(lat, p)?;
    let m = m_matrix(hs.n, hs.s)?;
    let qr = q_matrix(hs.r as u64);
    let labels: Vec<(u32, u64)> = (1..=hs.r).flat_map(|e| m.labels.iter().map(move |&h| (e, h))).collect();
    if pairing.dim() != labels.len() {
        return Err(Error::NotHypoShape(p));
    }
    // position in the pairing basis of each (e, h)
    let shapes: Vec<(u32, u64)> =
        pairing.basis.iter().map(|&c| hypo_shape(lat.class_order(c) as u64, p)).collect();
    let order: Vec<usize> = labels
        .iter()
        .map(|l| shapes.iter().position(|s| s == l).ok_or(Error::NotHypoShape(p)))
        .collect::<Result<_>>()?;
    let rescaled = labels
        .iter()
        .zip(&order)
        .map(|(&(_, h), &i)| {
            labels
                .iter()
                .zip(&order)
                .map(|(&(_, k), &j)| &pairing.entries[i][j] * Q::new((h * k).into(), hs.n.into()))
                .collect()
        })
        .collect();
    let dm = m.labels.len();
    let expected = (0..labels.len())
        .map(|i| {
            (0..labels.len())
                .map(|j| -qr.entries[i / dm][j / dm] * m.entries[i % dm][j % dm])
                .collect()
        })
        .collect();
    Ok(TensorCheck { labels, rescaled, expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    #[test]
    fn small_matrices() {
        let n1 = n_matrix(1).unwrap();
        assert_eq!(n1.entries, vec![vec![1]]);
        assert_eq!(n1.det(), BigInt::one());
        let n4 = n_matrix(4).unwrap();
        assert_eq!(n4.entries, vec![vec![1, 1, 1], vec![1, 2, 2], vec![1, 2, 4]]);
        assert_eq!(n4.det(), BigInt::from(2));
        let m = m_matrix(12, 2).unwrap();
        assert_eq!(m.labels, vec![3, 4, 6, 12]);
        assert_eq!(m.entries, vec![vec![2, 0, 2, 2], vec![0, 2, 0, 2], vec![2, 0, 4, 4], vec![2, 2, 4, 10]]);
        assert_eq!(m.det(), BigInt::from(32));
        assert!(m.det_matches());
        let mnn = m_matrix(12, 12).unwrap();
        assert!(mnn.labels.is_empty());
        assert_eq!(mnn.det(), BigInt::one());
        assert_eq!(q_matrix(3).det(), BigInt::one());
        assert!(m_matrix(12, 5).is_err());
        assert!(n_matrix(0).is_err());
    }

    #[test]
    fn determinant_formulas() {
        for n in 1..=60 {
            let nm = n_matrix(n).unwrap();
            assert!(nm.is_symmetric() && nm.det_matches(), "N({n})");
            for s in divisors(n) {
                let mm = m_matrix(n, s).unwrap();
                assert!(mm.is_symmetric() && mm.det_matches(), "M({n},{s})");
            }
        }
    }

    #[test]
    fn tensor_structure() {
        for (r, t) in [(4, 9), (3, 5), (8, 3), (1, 12)] {
            assert!(n_matrix_tensor_check(r, t).unwrap());
        }
        assert!(n_matrix_tensor_check(4, 6).is_err());
    }

    #[test]
    fn hypo_tensor() {
        for (spec, p, dim) in [("C7:3:C12", 7, 4), ("D14", 7, 1), ("C9:8:C2", 3, 2), ("C25:7:C4", 5, 4)] {
            let lat = SubgroupLattice::new(Group::from_spec(spec).unwrap()).unwrap();
            let t = hypo_pairing_tensor_check(&lat, p).unwrap();
            assert_eq!(t.labels.len(), dim, "{spec}");
            assert!(t.matches(), "{spec}");
        }
    }
}
