#![allow(dead_code)]

use polyq_core::RibbonTree;
use proptest::prelude::*;

/// Arbitrary ribbon trees with internal valence 2..=4.
pub fn any_tree() -> impl Strategy<Value = RibbonTree> {
    Just(RibbonTree::leaf()).prop_recursive(4, 24, 4, |inner| {
        prop::collection::vec(inner, 2..=4)
            .prop_map(|children| RibbonTree::node(children).expect("at least two children"))
    })
}

/// Arbitrary trivalent trees.
pub fn any_trivalent() -> impl Strategy<Value = RibbonTree> {
    Just(RibbonTree::leaf()).prop_recursive(3, 8, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| RibbonTree::node(vec![a, b]).expect("two"))
    })
}

/// All ordered binary trees with `n` leaves, built without reference to the
/// library's enumerator: start from the leaf and repeatedly expand one leaf
/// into `(*,*)`, deduplicating the resulting strings.
pub fn naive_binary_strings(n: usize) -> std::collections::BTreeSet<String> {
    let mut level = std::collections::BTreeSet::from(["*".to_string()]);
    for _ in 1..n {
        let mut next = std::collections::BTreeSet::new();
        for s in &level {
            for (at, ch) in s.char_indices() {
                if ch == '*' {
                    next.insert(format!("{}(*,*){}", &s[..at], &s[at + 1..]));
                }
            }
        }
        level = next;
    }
    level
}
