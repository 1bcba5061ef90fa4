//! Acceptance suite: one PASS/FAIL line per criterion. Run with
//! `cargo test -p brauerkit-core --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use brauerkit::burnside::{deflate, inflate, mark_of, marks, multiply, restrict};
use brauerkit::catalog::default_catalog;
use brauerkit::gcd_matrix::{hypo_pairing_tensor_check, m_matrix, n_matrix};
use brauerkit::num::{divisors, in_lattice, prime_divisors, q, qf, totient, vp};
use brauerkit::oracle::{builtin_dihedral_lattices, h1_cyclic, perm_lattice, regulator_oracle};
use brauerkit::regulator::{
    artin_valuation, has_cyclic_sylow, has_non_cyclic_hypo, p_divisible_closed_form, p_divisible_count,
    perm_pairing, reg_val_perm, reg_val_trivial, star_pairing,
};
use brauerkit::relations::{
    artin_coordinates, artin_of_subgroup, artin_relation, is_relation, relation_space, theta_sigma,
};
use brauerkit::species::perm_eq_triv;
use brauerkit::{BurnsideElement, SubgroupLattice, Q};
use common::{lattice, small_groups};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

struct Catalog {
    lattices: Vec<SubgroupLattice>,
}

impl Catalog {
    fn build() -> Self {
        let specs = default_catalog();
        let lattices = specs.par_iter().map(|s| lattice(s)).collect();
        Catalog { lattices }
    }

    fn upto(&self, order: usize) -> impl Iterator<Item = &SubgroupLattice> {
        self.lattices.iter().filter(move |l| l.group().order() <= order)
    }
}

fn qm(rows: &[&[(i64, i64)]]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&(a, b)| qf(a, b)).collect()).collect()
}

fn primes_of(lat: &SubgroupLattice) -> Vec<u64> {
    prime_divisors(lat.group().order() as u64)
}

fn s3_relations(_: &Catalog) -> Outcome {
    let l = lattice("S3");
    let br0 = relation_space(&l, 0).map_err(|e| e.to_string())?;
    ensure!(br0.dimension() == 1, "dimension {}", br0.dimension());
    let two_theta = BurnsideElement::from_ints(&l, &[1, -2, -1, 2]).unwrap();
    ensure!(br0.basis[0] == two_theta, "basis {}", br0.basis[0].display(&l));
    let theta = artin_relation(&l);
    let want = BurnsideElement::from_coeffs(&l, vec![qf(1, 2), q(-1), qf(-1, 2), q(1)]).unwrap();
    ensure!(theta == want, "theta_S3 = {}", theta.display(&l));
    let v = reg_val_trivial(&l, &theta, 3).map_err(|e| e.to_string())?;
    ensure!(v == qf(-1, 2), "v_3 = {v}");
    let oracle = regulator_oracle(&l, &perm_lattice(&l, &l.group().whole()), &two_theta, 3).unwrap();
    ensure!(oracle.vp == -1, "oracle v_3(C_2theta) = {}", oracle.vp);
    Ok("dim 1, theta_S3 = 1/2[1] - [C2] - 1/2[C3] + [S3], v_3 = -1/2".into())
}

fn dihedral_matrices(_: &Catalog) -> Outcome {
    for p in [3i64, 5, 7] {
        let l = lattice(&format!("D{}", 2 * p));
        let star = star_pairing(&l, p as u64).map_err(|e| e.to_string())?;
        let want = qm(&[
            &[(2 * p, 1), (p, 1), (2, 1), (1, 1)],
            &[(p, 1), (p + 1, 2), (1, 1), (1, 1)],
            &[(2, 1), (1, 1), (2, 1), (1, 1)],
            &[(0, 1), (0, 1), (0, 1), (-1, 2)],
        ]);
        ensure!(star.entries == want, "D{}: star matrix {:?}", 2 * p, star.entries);
        ensure!(star.is_nondegenerate(), "D{}: star pairing degenerate", 2 * p);
        let perm = perm_pairing(&l, p as u64).map_err(|e| e.to_string())?;
        ensure!(perm.entries == qm(&[&[(-1, 2)]]), "D{}: perm {:?}", 2 * p, perm.entries);
    }
    Ok("star and perm matrices exact for p = 3, 5, 7".into())
}

fn metacyclic_example(_: &Catalog) -> Outcome {
    let l = lattice("C7:3:C12");
    let perm = perm_pairing(&l, 7).map_err(|e| e.to_string())?;
    let want = qm(&[
        &[(-8, 3), (0, 1), (-4, 3), (-2, 3)],
        &[(0, 1), (-3, 2), (0, 1), (-1, 2)],
        &[(-4, 3), (0, 1), (-4, 3), (-2, 3)],
        &[(-2, 3), (-1, 2), (-2, 3), (-5, 6)],
    ]);
    ensure!(perm.entries == want, "perm matrix {:?}", perm.entries);
    let t = hypo_pairing_tensor_check(&l, 7).map_err(|e| e.to_string())?;
    let m = m_matrix(12, 2).unwrap();
    let neg_m: Vec<Vec<Q>> = m.entries.iter().map(|r| r.iter().map(|&x| q(-x)).collect()).collect();
    ensure!(t.rescaled == neg_m && t.matches(), "rescaled {:?}", t.rescaled);
    ensure!(
        m.entries == vec![vec![2, 0, 2, 2], vec![0, 2, 0, 2], vec![2, 0, 4, 4], vec![2, 2, 4, 10]],
        "M(12,2) = {:?}",
        m.entries
    );
    let phis: u64 = [3, 4, 6, 12].iter().map(|&d| totient(d)).product();
    ensure!(m.det() == BigInt::from(32) && phis == 32, "det {}", m.det());
    Ok("perm matrix exact, rescaled = -M(12,2), det M(12,2) = 32".into())
}

fn gcd_determinants(_: &Catalog) -> Outcome {
    let mut checked = 0;
    for n in 1..=60u64 {
        let nm = n_matrix(n).unwrap();
        let want: BigInt = divisors(n).iter().map(|&d| BigInt::from(totient(d))).product();
        ensure!(nm.det() == want, "det N({n}) = {} != {want}", nm.det());
        for s in divisors(n) {
            let mm = m_matrix(n, s).unwrap();
            let want: BigInt =
                divisors(n).iter().filter(|&&d| s % d != 0).map(|&d| BigInt::from(totient(d))).product();
            ensure!(mm.det() == want, "det M({n},{s}) = {} != {want}", mm.det());
            checked += 1;
        }
    }
    Ok(format!("60 N-matrices and {checked} M-matrices"))
}

fn non_degeneracy(cat: &Catalog) -> Outcome {
    let jobs: Vec<(&SubgroupLattice, u64)> = cat
        .lattices
        .iter()
        .flat_map(|l| primes_of(l).into_iter().filter(|&p| has_cyclic_sylow(l, p)).map(move |p| (l, p)))
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(l, p)| match perm_pairing(l, p) {
            Ok(m) if m.is_nondegenerate() => None,
            Ok(m) => Some(format!("{} p={p}: rank {} of {}", l.group().label(), m.rank, m.dim())),
            Err(e) => Some(format!("{} p={p}: {e}", l.group().label())),
        })
        .collect();
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(format!("{} (group, prime) pairs with cyclic Sylow, all full rank", jobs.len()))
}

fn c3c3s3(_: &Catalog) -> Outcome {
    let l = lattice("C3xC3xS3");
    let perm = perm_pairing(&l, 3).map_err(|e| e.to_string())?;
    ensure!(perm.dim() == 17, "pairing dimension {}", perm.dim());
    ensure!(perm.dim() - perm.rank == 1, "corank {}", perm.dim() - perm.rank);
    let ts = theta_sigma(&l);
    ensure!(is_relation(&l, &ts, 0).unwrap(), "theta_Sigma is not a char-0 relation");
    ensure!(!is_relation(&l, &ts, 3).unwrap(), "theta_Sigma is a char-3 relation");
    let coords = artin_coordinates(&l, &ts, 3).map_err(|e| e.to_string())?;
    ensure!(coords.iter().any(|c| !c.is_zero()), "theta_Sigma vanishes modulo BR_3");
    for row in &perm.entries {
        let dot: Q = row.iter().zip(&coords).map(|(a, b)| a * b).sum();
        ensure!(dot.is_zero(), "theta_Sigma not in the kernel");
    }
    let d = brauerkit::num::common_denominator(ts.coeffs());
    let scaled = ts.scale(&Q::from_integer(d.clone()));
    let value = regulator_oracle(&l, &perm_lattice(&l, &l.group().whole()), &scaled, 3).unwrap().value;
    ensure!(value.is_one(), "C_theta_Sigma(1) = {value}");
    for p in [2, 3] {
        let v = reg_val_trivial(&l, &ts, p).unwrap();
        ensure!(v.is_zero(), "v_{p} = {v}");
    }
    Ok(format!(
        "{} subgroup classes, {} non-cyclic 3-hypo-elementary; perm pairing rank 16 of 17; theta_Sigma in kernel; C(1) = 1",
        l.num_classes(),
        perm.dim()
    ))
}

fn non_vanishing(cat: &Catalog) -> Outcome {
    let jobs: Vec<(&SubgroupLattice, u64)> =
        cat.lattices.iter().flat_map(|l| primes_of(l).into_iter().map(move |p| (l, p))).collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(l, p)| {
            let name = l.group().label();
            let a = match artin_valuation(l, p) {
                Ok(a) => a,
                Err(e) => return Some(format!("{name} p={p}: {e}")),
            };
            let step = qf(p as i64, l.group().order() as i64);
            if a.direct.is_zero() == has_non_cyclic_hypo(l, p) {
                return Some(format!("{name} p={p}: v = {} but non-cyclic hypo = {}", a.direct, has_non_cyclic_hypo(l, p)));
            }
            if !a.direct.is_zero() && (a.direct > -step.clone() || !in_lattice(&a.direct, &step)) {
                return Some(format!("{name} p={p}: v = {} violates the bound", a.direct));
            }
            if a.explicit != a.direct {
                return Some(format!("{name} p={p}: explicit {} != direct {}", a.explicit, a.direct));
            }
            match &a.closed_form {
                Some(c) if *c != a.direct => Some(format!("{name} p={p}: closed form {c} != {}", a.direct)),
                None if has_cyclic_sylow(l, p) => Some(format!("{name} p={p}: closed form missing")),
                _ => None,
            }
        })
        .collect();
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(format!("{} (group, prime) pairs", jobs.len()))
}

fn p_divisible(cat: &Catalog) -> Outcome {
    let mut checked = 0;
    for l in &cat.lattices {
        for p in primes_of(l).into_iter().filter(|&p| has_cyclic_sylow(l, p)) {
            let r = vp(l.group().order() as u64, p);
            for k in 0..=r + 1 {
                let count = p_divisible_count(l, p, k);
                let closed = p_divisible_closed_form(l, p, k).map_err(|e| e.to_string())?;
                ensure!(
                    Q::from_integer(count.into()) == closed,
                    "{} p={p} k={k}: {count} != {closed}",
                    l.group().label()
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (group, prime, k) triples"))
}

fn oracle_equivalence(_: &Catalog) -> Outcome {
    let groups = small_groups();
    let results: Vec<Result<usize, String>> = groups
        .into_par_iter()
        .map(|g| {
            let name = g.label().to_string();
            let l = SubgroupLattice::new(g).map_err(|e| e.to_string())?;
            let perms: Vec<_> = (0..l.num_classes()).map(|k| perm_lattice(&l, l.class_rep_subgroup(k))).collect();
            let basis = relation_space(&l, 0).map_err(|e| e.to_string())?.basis;
            let mut n = 0;
            for p in primes_of(&l) {
                for theta in &basis {
                    for (k, m) in perms.iter().enumerate() {
                        let formula = reg_val_perm(&l, theta, k, p).map_err(|e| e.to_string())?;
                        let oracle = regulator_oracle(&l, m, theta, p).map_err(|e| e.to_string())?;
                        if formula != q(oracle.vp) {
                            return Err(format!("{name} p={p} K={}: {formula} != {}", l.label(k), oracle.vp));
                        }
                        n += 1;
                    }
                }
            }
            Ok(n)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("74 groups, {total} (prime, relation, lattice) triples"))
}

fn dihedral_lattices(_: &Catalog) -> Outcome {
    for p in [3u64, 5] {
        let dl = builtin_dihedral_lattices(p).map_err(|e| e.to_string())?;
        let l = SubgroupLattice::new(dl.group.clone()).unwrap();
        let two_theta = artin_relation(&l).scale(&q(2));
        let v = |m: &_| regulator_oracle(&l, m, &two_theta, p).unwrap().vp;
        for c in (0..l.num_classes()).filter(|&c| l.class_is_cyclic(c)) {
            let induced = perm_lattice(&l, l.class_rep_subgroup(c));
            let got = v(&induced);
            ensure!(got == 0, "p={p}: induced from {} gives {got}", l.label(c));
        }
        let trivial = perm_lattice(&l, &l.group().whole());
        let row = [v(&trivial), v(&dl.a), v(&dl.a_prime), v(&dl.epsilon)];
        ensure!(row == [-1, 1, -1, 1], "p={p}: (1, A, A', eps) gives {row:?}");
        let h_eps = h1_cyclic(&dl.group, &dl.epsilon, dl.reflection).unwrap().as_i64();
        let h_a = h1_cyclic(&dl.group, &dl.a, dl.rotation).unwrap().as_i64();
        ensure!(h_eps == vec![2] && h_a == vec![p as i64], "p={p}: H1 {h_eps:?} {h_a:?}");
    }
    Ok("(1, A, A', eps) -> (-1, 1, -1, 1), induced-from-cyclic -> 0, H1 = [2], [p]".into())
}

fn theta_sigma_laws(cat: &Catalog) -> Outcome {
    let lats: Vec<&SubgroupLattice> = cat.upto(100).collect();
    let failures: Vec<String> = lats
        .par_iter()
        .filter_map(|l| {
            let name = l.group().label();
            let ts = theta_sigma(l);
            let m = marks(l, &ts).ok()?;
            let subs = l.subgroups();
            for k in 0..subs.len() {
                let want: i64 = (0..subs.len()).filter(|&h| l.leq(k, h)).map(|h| l.mobius_top(h)).sum();
                if m[l.class_of(k)] != q(want) {
                    return Some(format!("{name}: fixed points at subgroup {k}"));
                }
            }
            for c in (0..l.num_classes()).filter(|&c| c != l.whole_class()) {
                let rep = l.class_rep(c);
                let sub = l.sublattice(rep).ok()?;
                match restrict(l, &ts, rep, &sub) {
                    Ok(r) if r.is_zero() => {}
                    _ => return Some(format!("{name}: restriction to {} is non-zero", l.label(c))),
                }
            }
            None
        })
        .collect();
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(format!("{} groups of order <= 100", lats.len()))
}

fn species_criterion(cat: &Catalog) -> Outcome {
    for n in 2..=15u64 {
        let l = lattice(&format!("D{}", 2 * n));
        for p in primes_of(&l) {
            let (ok, c) = perm_eq_triv(&l, p).unwrap();
            ensure!(ok, "D{} p={p}: {c:?}", 2 * n);
        }
    }
    let mut abelian = 0;
    for l in cat.lattices.iter().filter(|l| l.group().is_abelian()) {
        for p in primes_of(l).into_iter().filter(|&p| has_cyclic_sylow(l, p)) {
            let (ok, c) = perm_eq_triv(l, p).unwrap();
            ensure!(ok, "{} p={p}: {c:?}", l.group().label());
            abelian += 1;
        }
    }
    let mut certs = Vec::new();
    for (spec, p, want) in [("C5:2:C4", 5, (6, 8, 5, 4)), ("C7:3:C6", 7, (8, 12, 7, 5))] {
        let (ok, c) = perm_eq_triv(&lattice(spec), p).unwrap();
        let got = (c.n_p_hypo, c.dim_triv, c.dim_cyclic_generated, c.n_cyclic);
        ensure!(!ok && got == want, "{spec} p={p}: {got:?}");
        certs.push(format!(
            "{spec}: {} != {} - {} + {} = {}",
            got.0,
            got.1,
            got.2,
            got.3,
            got.1 + got.3 - got.2
        ));
    }
    Ok(format!("dihedral and {abelian} abelian cases true; {}", certs.join(", ")))
}

fn functorial_laws(cat: &Catalog) -> Outcome {
    let lats: Vec<&SubgroupLattice> = cat.lattices.iter().collect();
    let failures: Vec<String> = lats
        .par_iter()
        .filter_map(|l| {
            let name = l.group().label();
            let g = l.group();
            let theta = artin_relation(l);
            for c in 0..l.num_classes() {
                let rep = l.class_rep(c);
                let (sub, theta_h) = artin_of_subgroup(l, rep).ok()?;
                if restrict(l, &theta, rep, &sub).ok()? != theta_h {
                    return Some(format!("{name}: theta_G restricted to {} is not theta_H", l.label(c)));
                }
            }
            for c in (0..l.num_classes()).filter(|&c| l.class_size(c) == 1) {
                let quo = g.quotient(l.class_rep_subgroup(c)).ok()?;
                let lq = SubgroupLattice::new(quo.group.clone()).ok()?;
                for d in 0..lq.num_classes() {
                    let e = BurnsideElement::basis(&lq, d);
                    if deflate(l, &inflate(&lq, &e, l, &quo).ok()?, &lq, &quo).ok()? != e {
                        return Some(format!("{name}: deflate(inflate) != id modulo {}", l.label(c)));
                    }
                }
            }
            let nc = l.num_classes();
            let picks: Vec<usize> = (0..nc).step_by((nc / 6).max(1)).collect();
            for &a in &picks {
                for &b in &picks {
                    let (x, y) = (BurnsideElement::basis(l, a), BurnsideElement::basis(l, b));
                    let prod = multiply(l, &x, &y).ok()?;
                    for k in 0..nc {
                        if mark_of(l, &prod, k) != mark_of(l, &x, k) * mark_of(l, &y, k) {
                            return Some(format!("{name}: marks not multiplicative"));
                        }
                    }
                }
            }
            for p in primes_of(l) {
                if !perm_pairing(l, p).ok()?.is_symmetric() {
                    return Some(format!("{name} p={p}: perm pairing not symmetric"));
                }
            }
            None
        })
        .collect();
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(format!("{} catalog groups", lats.len()))
}

type Criterion = (&'static str, fn(&Catalog) -> Outcome, Duration);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 13] = [
        ("S3 relations and Artin relation", s3_relations, secs(1)),
        ("D_2p pairing matrices", dihedral_matrices, secs(3)),
        ("C7:C12 permutation pairing", metacyclic_example, secs(5)),
        ("GCD matrix determinants", gcd_determinants, secs(10)),
        ("non-degeneracy for cyclic Sylow", non_degeneracy, secs(120)),
        ("C3xC3xS3 degeneracy", c3c3s3, secs(30)),
        ("non-vanishing of the Artin relation", non_vanishing, secs(120)),
        ("P(G,k) closed form", p_divisible, secs(60)),
        ("oracle equivalence up to order 24", oracle_equivalence, secs(300)),
        ("dihedral lattices", dihedral_lattices, secs(30)),
        ("theta_Sigma laws", theta_sigma_laws, secs(120)),
        ("species criterion", species_criterion, secs(60)),
        ("functorial laws", functorial_laws, secs(120)),
    ];
    let start = Instant::now();
    let catalog = Catalog::build();
    println!("catalog: {} groups built in {:.2}s", catalog.lattices.len(), start.elapsed().as_secs_f64());
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&catalog)))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = t.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > *budget => Err(format!("took {:.2}s, budget {}s", elapsed.as_secs_f64(), budget.as_secs())),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name} ({:.2}s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of 13 criteria pass", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
