use proptest::prelude::*;
use rspec_core::primes::{
    euclid_generate, first_primes, is_poset_related, is_prime, poset_ancestors, poset_predecessors, pratt_tree,
    primes_up_to,
};

#[test]
fn predecessors_are_pratt_root_children() {
    for p in primes_up_to(20_000) {
        let tree = pratt_tree(p).unwrap();
        assert_eq!(poset_predecessors(p).unwrap(), tree.child_primes());
        assert!(tree.is_valid(), "p = {p}");
    }
}

#[test]
fn relation_points_downward() {
    let ps = primes_up_to(2_000);
    for &q in &ps {
        for &p in &ps {
            if q != p && is_poset_related(q, p).unwrap() {
                assert!(q < p);
            }
        }
    }
}

#[test]
fn ancestors_are_transitively_closed() {
    for p in primes_up_to(3_000) {
        let anc = poset_ancestors(p).unwrap();
        for &q in &anc {
            assert!(poset_ancestors(q).unwrap().is_subset(&anc));
        }
        if p > 2 {
            assert!(anc.contains(&2));
        }
    }
}

#[test]
fn euclid_over_small_odd_primes() {
    let odd = &first_primes(12)[1..];
    // every subset of the first eleven odd primes
    for mask in 1u32..(1 << odd.len()) {
        let factors: Vec<u64> = (0..odd.len()).filter(|i| mask & (1 << i) != 0).map(|i| odd[i]).collect();
        let c = euclid_generate(&factors).unwrap();
        assert_eq!(c.candidate % 2, 1);
        assert_eq!(c.is_prime, is_prime(c.candidate));
        if c.is_prime {
            for &q in factors.iter().chain(&[2]) {
                assert!(is_poset_related(q, c.candidate).unwrap());
            }
        }
    }
}

proptest! {
    #[test]
    fn pratt_tree_of_large_primes(n in 1_000_000u64..u64::MAX / 2) {
        let p = (n..).find(|&m| is_prime(m)).unwrap();
        let tree = pratt_tree(p).unwrap();
        prop_assert!(tree.is_valid());
        prop_assert_eq!(tree.edge_product(), (p - 1) as u128);
    }
}
