//! Shared helpers for integration tests: a list of every group of order at
//! most 24, built from spec strings where the grammar allows and from explicit
//! multiplication rules otherwise.
#![allow(dead_code)]

use std::collections::HashMap;
use std::hash::Hash;

use brauerkit::{Group, SubgroupLattice};

pub fn lattice(spec: &str) -> SubgroupLattice {
    SubgroupLattice::new(Group::from_spec(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))).unwrap()
}

/// Close `gens` under `mul`, listing the identity first.
pub fn closure<T: Clone + Eq + Hash>(id: T, gens: &[T], mul: impl Fn(&T, &T) -> T, label: &str) -> Group {
    let mut elems = vec![id.clone()];
    let mut index: HashMap<T, usize> = HashMap::from([(id, 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = mul(&elems[i], g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    let table = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&mul(a, b)]).collect())
        .collect();
    Group::from_table(table, label).unwrap()
}

/// `N ⋊ K` where `act(k, n)` is the image of `n` under the automorphism of `k`.
pub fn semidirect(n: &Group, k: &Group, act: impl Fn(usize, usize) -> usize, label: &str) -> Group {
    let (nn, nk) = (n.order(), k.order());
    let table = (0..nn * nk)
        .map(|x| {
            (0..nn * nk)
                .map(|y| {
                    let (n1, k1, n2, k2) = (x % nn, x / nn, y % nn, y / nn);
                    n.mul(n1, act(k1, n2)) + nn * k.mul(k1, k2)
                })
                .collect()
        })
        .collect();
    Group::from_table(table, label).unwrap()
}

/// `⟨a, x | a^{2m}, x² = a^m, x a x⁻¹ = a⁻¹⟩`, of order `4m`.
pub fn dicyclic(m: i64) -> Group {
    let n = 2 * m;
    let mul = |&(i1, j1): &(i64, i64), &(i2, j2): &(i64, i64)| -> (i64, i64) {
        match (j1, j2) {
            (0, _) => ((i1 + i2).rem_euclid(n), j2),
            (_, 0) => ((i1 - i2).rem_euclid(n), 1),
            _ => ((i1 - i2 + m).rem_euclid(n), 0),
        }
    };
    closure((0, 0), &[(1, 0), (0, 1)], mul, &format!("Dic{}", 4 * m))
}

pub fn alternating4() -> Group {
    let compose = |a: &Vec<u8>, b: &Vec<u8>| -> Vec<u8> { b.iter().map(|&i| a[i as usize]).collect() };
    closure(vec![0, 1, 2, 3], &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], compose, "A4")
}

pub fn sl2_3() -> Group {
    let mul = |a: &[i64; 4], b: &[i64; 4]| -> [i64; 4] {
        [
            (a[0] * b[0] + a[1] * b[2]) % 3,
            (a[0] * b[1] + a[1] * b[3]) % 3,
            (a[2] * b[0] + a[3] * b[2]) % 3,
            (a[2] * b[1] + a[3] * b[3]) % 3,
        ]
    };
    closure([1, 0, 0, 1], &[[1, 1, 0, 1], [1, 0, 1, 1]], mul, "SL(2,3)")
}

fn spec(s: &str) -> Group {
    Group::from_spec(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn product(a: &Group, b: &Group) -> Group {
    Group::direct_product(a, b).unwrap()
}

/// One representative of every isomorphism class of groups of order ≤ 24.
pub fn small_groups() -> Vec<Group> {
    let mut out: Vec<Group> = Vec::new();
    for s in [
        "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C4xC2", "C2xC2xC2", "D8", "C9", "C3xC3",
        "C10", "D10", "C11", "C12", "C6xC2", "D12", "C3:2:C4", "C13", "C14", "D14", "C15", "C16", "C4xC4",
        "C8xC2", "C4xC2xC2", "C2xC2xC2xC2", "D16", "C8:3:C2", "C8:5:C2", "C4:3:C4", "D8xC2", "C17", "C18",
        "C6xC3", "D18", "S3xC3", "(C3xC3):2:C2", "C19", "C20", "C10xC2", "D20", "C5:4:C4", "C5:2:C4", "C21",
        "C7:2:C3", "C22", "D22", "C23", "C24", "C12xC2", "C6xC2xC2", "S4", "C3:2:C8", "C4xS3", "D24", "C3xD8",
        "C2xC2xS3",
    ] {
        if s == "C1" {
            out.push(Group::cyclic(1).unwrap());
        } else {
            out.push(spec(s));
        }
    }
    let q8 = dicyclic(2);
    let c2 = spec("C2");
    let c3 = spec("C3");
    out.push(q8.clone());
    out.push(alternating4());
    out.push(dicyclic(4));
    out.push(product(&c2, &q8));
    // (C2×C2) ⋊ C4, the generator swapping the factors
    let klein = spec("C2xC2");
    out.push(semidirect(&klein, &spec("C4"), |k, x| if k % 2 == 1 { (x % 2) * 2 + x / 2 } else { x }, "C2^2:C4"));
    // (C4×C2) ⋊ C2 with b ↦ a²b: the central product C4∘D8
    out.push(semidirect(
        &spec("C4xC2"),
        &c2,
        |k, x| if k == 1 { ((x / 2 + 2 * (x % 2)) % 4) * 2 + x % 2 } else { x },
        "C4oD8",
    ));
    out.push(sl2_3());
    out.push(dicyclic(6));
    out.push(product(&c2, &spec("C3:2:C4")));
    // C3 ⋊ D8 with kernel the Klein group ⟨r², s⟩
    out.push(semidirect(&c3, &spec("D8"), |k, x| if (k % 4) % 2 == 1 { (3 - x) % 3 } else { x }, "C3:D8"));
    out.push(product(&c3, &q8));
    out.push(product(&c2, &alternating4()));
    out
}

/// Number of isomorphism classes of groups of order `n` for `1 ≤ n ≤ 24`.
pub const GROUP_COUNTS: [usize; 24] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];

/// Isomorphism invariants: element-order statistics, centre size, subgroup
/// and class counts, number of normal subgroups and orders of cyclic classes.
pub fn invariants(lat: &SubgroupLattice) -> (usize, Vec<usize>, usize, usize, usize, usize, Vec<usize>) {
    let g = lat.group();
    let mut orders: Vec<usize> = (0..g.order()).map(|x| g.elem_order(x)).collect();
    orders.sort_unstable();
    let centre = (0..g.order()).filter(|&z| (0..g.order()).all(|x| g.mul(x, z) == g.mul(z, x))).count();
    let normal = (0..lat.num_classes()).filter(|&c| lat.class_size(c) == 1).count();
    let mut class_orders: Vec<usize> = (0..lat.num_classes()).map(|c| lat.class_order(c)).collect();
    class_orders.sort_unstable();
    (g.order(), orders, centre, lat.subgroups().len(), lat.num_classes(), normal, class_orders)
}
