use std::collections::{HashMap, HashSet, VecDeque};
use std::path::Path;

use intergroup::catalog::{by_label, ingest_tables, standard_families};
use intergroup::group::are_isomorphic;
use intergroup::lattice::{center, is_normal};
use intergroup::{all_subgroups, FiniteGroup, Limits, Permutation};

fn lim() -> Limits {
    Limits::default()
}

fn small_catalog(max_order: usize) -> Vec<FiniteGroup> {
    standard_families()
        .into_iter()
        .filter(|e| !e.opt_in && e.expected.order <= max_order)
        .map(|e| e.build(&lim()).unwrap())
        .collect()
}

fn order_multiset(g: &FiniteGroup) -> Vec<usize> {
    let mut v = g.element_orders();
    v.sort_unstable();
    v
}

fn subgroup_order_multiset(g: &FiniteGroup) -> Vec<usize> {
    let l = all_subgroups(g, &lim()).unwrap();
    l.subgroups().iter().map(|s| s.order()).collect()
}

#[test]
fn ingest_fixture_of_order_eight() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/order8.json");
    let groups = ingest_tables(&path, &lim()).unwrap();
    assert_eq!(groups.len(), 5);
    assert!(groups.iter().all(|g| g.order() == 8));
    assert_eq!(groups.iter().filter(|g| g.is_abelian()).count(), 3);
    for i in 0..5 {
        for j in i + 1..5 {
            assert!(are_isomorphic(&groups[i], &groups[j]).unwrap().is_none());
        }
    }
}

#[test]
fn direct_products_commute_up_to_isomorphism() {
    let groups = small_catalog(16);
    let mut pairs = 0;
    for g in &groups {
        for h in &groups {
            if g.order() * h.order() > 128 || g.order() == 1 || h.order() == 1 {
                continue;
            }
            let gh = FiniteGroup::direct_product(g, h, &lim()).unwrap();
            let hg = FiniteGroup::direct_product(h, g, &lim()).unwrap();
            assert!(are_isomorphic(&gh, &hg).unwrap().is_some(), "{:?} x {:?}", g.label(), h.label());
            pairs += 1;
        }
    }
    assert!(pairs > 100);
}

#[test]
fn isomorphism_is_reflexive_and_symmetric_and_respects_invariants() {
    let groups = small_catalog(32);
    for g in &groups {
        assert!(are_isomorphic(g, g).unwrap().is_some());
    }
    let by_order: HashMap<usize, Vec<&FiniteGroup>> = groups.iter().fold(HashMap::new(), |mut m, g| {
        m.entry(g.order()).or_default().push(g);
        m
    });
    for same in by_order.values() {
        for a in same {
            for b in same {
                let ab = are_isomorphic(a, b).unwrap().is_some();
                let ba = are_isomorphic(b, a).unwrap().is_some();
                assert_eq!(ab, ba);
                if ab {
                    assert_eq!(order_multiset(a), order_multiset(b));
                    assert_eq!(subgroup_order_multiset(a), subgroup_order_multiset(b));
                }
            }
        }
    }
}

#[test]
fn quotients_satisfy_lagrange() {
    let mut checked = 0;
    for g in small_catalog(64) {
        let l = all_subgroups(&g, &lim()).unwrap();
        for i in l.normal_indices(&g) {
            let n = l.get(i);
            let (q, proj) = g.quotient_group(n, &lim()).unwrap();
            assert_eq!(g.order(), n.order() * q.order());
            for a in g.elements() {
                for b in g.elements().step_by(3) {
                    assert_eq!(proj[g.mul(a, b)], q.mul(proj[a], proj[b]));
                }
            }
            checked += 1;
        }
    }
    assert!(checked > 300);
}

#[test]
fn named_quotients() {
    let q8 = by_label("Q8", &lim()).unwrap();
    let (q, _) = q8.quotient_group(&center(&q8), &lim()).unwrap();
    assert!(are_isomorphic(&q, &by_label("Z2xZ2", &lim()).unwrap()).unwrap().is_some());

    let a4 = by_label("A4", &lim()).unwrap();
    let l = all_subgroups(&a4, &lim()).unwrap();
    let v4 = l.subgroups().iter().find(|s| s.order() == 4).unwrap();
    assert!(is_normal(&a4, v4).unwrap());
    assert_eq!(a4.quotient_group(v4, &lim()).unwrap().0.order(), 3);

    let s3 = by_label("S3", &lim()).unwrap();
    let l = all_subgroups(&s3, &lim()).unwrap();
    let two = l.subgroups().iter().find(|s| s.order() == 2).unwrap();
    assert!(s3.quotient_group(two, &lim()).is_err());
}

/// Breadth-first closure of permutations under composition.
fn closure_size(degree: usize, gens: &[Vec<usize>]) -> usize {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = (0..degree).map(|i| g[p[i]]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

#[test]
fn permutation_closure_matches_oracle() {
    let cases: [(usize, Vec<Vec<usize>>); 4] = [
        (5, vec![vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]]),
        (4, vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]]),
        (6, vec![vec![1, 2, 0, 4, 5, 3], vec![3, 4, 5, 0, 1, 2]]),
        (7, vec![vec![1, 2, 3, 4, 5, 6, 0], vec![0, 2, 4, 6, 1, 3, 5]]),
    ];
    for (degree, gens) in cases {
        let perms: Vec<Permutation> = gens.iter().cloned().map(Permutation).collect();
        let g = FiniteGroup::from_permutation_generators(degree, &perms, &lim()).unwrap();
        assert_eq!(g.order(), closure_size(degree, &gens));
    }
}
