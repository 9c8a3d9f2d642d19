//! Exhaustive checks of the counting identities at desk scale.
//!
//! Every check compares two independently computed integers. Reports contain
//! no timing unless asked for, so reruns with the same bounds are identical.

use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::bending::{beta_direct, beta_table, f_re};
use crate::kaehler::{cg_element, f_kaehler};
use crate::operad::{label_box, w_compose, w_unit, Count, WElement};
use crate::tree::{caterpillar, corolla, enumerate_trivalent, graft, RibbonTree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scope {
    /// Number of tree classes (or sample elements) covered.
    pub trees: usize,
    pub max_leaves: usize,
    pub max_label: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub check: String,
    pub tree: String,
    pub input: Vec<u64>,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub scope: Scope,
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl VerificationReport {
    fn finish(name: &str, scope: Scope, checks: u64, mut failures: Vec<Failure>) -> Self {
        failures.sort();
        VerificationReport {
            name: name.to_string(),
            scope,
            checks,
            pass: failures.is_empty(),
            failures,
            wall_time_ms: None,
        }
    }

    /// The lexicographically least failing input, if any.
    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    pub fn with_timing(mut self, start: Instant) -> Self {
        self.wall_time_ms = Some(start.elapsed().as_millis());
        self
    }
}

fn compare(
    check: &str,
    tree: &str,
    input: &[u64],
    expected: &Count,
    got: &Count,
) -> Option<Failure> {
    (expected != got).then(|| Failure {
        check: check.to_string(),
        tree: tree.to_string(),
        input: input.to_vec(),
        expected: expected.to_string(),
        got: got.to_string(),
    })
}

/// For every trivalent tree with at most `max_leaves` leaves and every
/// `(d; c) ∈ {0..=max_label}^{n+1}`, the labeling count of the tree equals the
/// tensor-product multiplicity for its leaf count.
pub fn verify_theorem(max_leaves: usize, max_label: u64) -> VerificationReport {
    let trees: Vec<RibbonTree> = (1..=max_leaves).flat_map(enumerate_trivalent).collect();
    let kaehler: Vec<WElement> = (1..=max_leaves)
        .map(|n| f_kaehler(n).expect("n >= 1"))
        .collect();
    let results: Vec<(u64, Vec<Failure>)> = trees
        .par_iter()
        .map(|tree| {
            let n = tree.leaf_count();
            let real = f_re(tree).expect("enumerated trees are trivalent");
            let name = tree.to_string();
            let mut checks = 0;
            let mut failures = Vec::new();
            for input in label_box(n + 1, max_label) {
                let (d, c) = (input[0], &input[1..]);
                checks += 1;
                let expected = kaehler[n - 1].eval(d, c);
                let got = real.eval(d, c);
                failures.extend(compare(
                    "p*f_kaehler = f_re",
                    &name,
                    &input,
                    &expected,
                    &got,
                ));
            }
            (checks, failures)
        })
        .collect();
    let checks = results.iter().map(|(c, _)| c).sum();
    let failures = results.into_iter().flat_map(|(_, f)| f).collect();
    VerificationReport::finish(
        "theorem",
        Scope {
            trees: trees.len(),
            max_leaves,
            max_label,
        },
        checks,
        failures,
    )
}

/// Named sample element for [`verify_operad_axioms`].
#[derive(Clone)]
pub struct Sample {
    pub name: String,
    pub element: WElement,
}

/// `cg`, both nestings of `cg` with itself, and the labeling count of the
/// 3-caterpillar.
pub fn default_samples() -> Vec<Sample> {
    let cg = cg_element();
    vec![
        Sample {
            name: "cg".into(),
            element: cg.clone(),
        },
        Sample {
            name: "cg∘1cg".into(),
            element: w_compose(&cg, 1, &cg).expect("slot 1"),
        },
        Sample {
            name: "cg∘2cg".into(),
            element: w_compose(&cg, 2, &cg).expect("slot 2"),
        },
        Sample {
            name: "f_re(*,(*,*))".into(),
            element: f_re(&caterpillar(3).expect("n = 3")).expect("trivalent"),
        },
    ]
}

fn compare_pointwise(
    check: &str,
    label: &str,
    lhs: &WElement,
    rhs: &WElement,
    max_label: u64,
    failures: &mut Vec<Failure>,
) -> u64 {
    let mut checks = 0;
    for input in label_box(lhs.arity() + 1, max_label) {
        checks += 1;
        let (d, c) = (input[0], &input[1..]);
        failures.extend(compare(
            check,
            label,
            &input,
            &rhs.eval(d, c),
            &lhs.eval(d, c),
        ));
    }
    checks
}

/// Largest arity of a triple composite checked for associativity; every
/// position case already occurs with three binary elements.
pub const MAX_COMPOSITE_ARITY: usize = 5;

/// Associativity in its three position cases and both unit laws, pointwise
/// over `{0..=max_label}`, plus the matching identities for grafting of trees.
pub fn verify_operad_axioms(samples: &[Sample], max_label: u64) -> VerificationReport {
    let mut checks = 0;
    let mut failures = Vec::new();
    let unit = w_unit();

    for s in samples {
        let f = &s.element;
        let lhs = w_compose(&unit, 1, f).expect("unit has slot 1");
        checks += compare_pointwise("unit ∘1 f = f", &s.name, &lhs, f, max_label, &mut failures);
        for i in 1..=f.arity() {
            let lhs = w_compose(f, i, &unit).expect("slot in range");
            checks += compare_pointwise(
                &format!("f ∘{i} unit = f"),
                &s.name,
                &lhs,
                f,
                max_label,
                &mut failures,
            );
        }
    }

    // (f ∘_j g) ∘_i h against the case-dependent right-hand side.
    let jobs: Vec<(&Sample, &Sample, &Sample, usize, usize)> = samples
        .iter()
        .flat_map(|f| samples.iter().map(move |g| (f, g)))
        .flat_map(|(f, g)| samples.iter().map(move |h| (f, g, h)))
        .filter(|(f, g, h)| {
            f.element.arity() + g.element.arity() + h.element.arity() - 2 <= MAX_COMPOSITE_ARITY
        })
        .flat_map(|(f, g, h)| {
            let (n, m) = (f.element.arity(), g.element.arity());
            (1..=n).flat_map(move |j| (1..=n + m - 1).map(move |i| (f, g, h, j, i)))
        })
        .collect();
    let results: Vec<(u64, Vec<Failure>)> = jobs
        .par_iter()
        .map(|&(f, g, h, j, i)| {
            let (fe, ge, he) = (&f.element, &g.element, &h.element);
            let (m, l) = (ge.arity(), he.arity());
            let lhs = w_compose(&w_compose(fe, j, ge).unwrap(), i, he).unwrap();
            let (case, rhs) = if i < j {
                (
                    "I",
                    w_compose(&w_compose(fe, i, he).unwrap(), j + l - 1, ge).unwrap(),
                )
            } else if i < m + j {
                (
                    "II",
                    w_compose(fe, j, &w_compose(ge, i - j + 1, he).unwrap()).unwrap(),
                )
            } else {
                (
                    "III",
                    w_compose(&w_compose(fe, i - m + 1, he).unwrap(), j, ge).unwrap(),
                )
            };
            let label = format!("({} ∘{j} {}) ∘{i} {}", f.name, g.name, h.name);
            let mut failures = Vec::new();
            let checks = compare_pointwise(
                &format!("associativity case {case}"),
                &label,
                &lhs,
                &rhs,
                max_label,
                &mut failures,
            );
            (checks, failures)
        })
        .collect();
    for (c, f) in results {
        checks += c;
        failures.extend(f);
    }

    // The same identities for grafting, compared by canonical form.
    let trees: Vec<RibbonTree> = (1..=3)
        .flat_map(enumerate_trivalent)
        .chain([corolla(3).unwrap()])
        .collect();
    for x in &trees {
        for i in 1..=x.leaf_count() {
            checks += 2;
            let leaf = RibbonTree::leaf();
            if graft(x, i, &leaf).unwrap() != *x {
                failures.push(tree_failure("graft unit (right)", x, i));
            }
        }
        if graft(&RibbonTree::leaf(), 1, x).unwrap() != *x {
            failures.push(tree_failure("graft unit (left)", x, 1));
        }
        for y in &trees {
            for z in &trees {
                let (n, m, l) = (x.leaf_count(), y.leaf_count(), z.leaf_count());
                for j in 1..=n {
                    let xy = graft(x, j, y).unwrap();
                    for i in 1..=n + m - 1 {
                        checks += 1;
                        let lhs = graft(&xy, i, z).unwrap();
                        let rhs = if i < j {
                            graft(&graft(x, i, z).unwrap(), j + l - 1, y).unwrap()
                        } else if i < m + j {
                            graft(x, j, &graft(y, i - j + 1, z).unwrap()).unwrap()
                        } else {
                            graft(&graft(x, i - m + 1, z).unwrap(), j, y).unwrap()
                        };
                        if lhs.canonical_form() != rhs.canonical_form() {
                            failures.push(Failure {
                                check: "graft associativity".into(),
                                tree: format!("({x} ∘{j} {y}) ∘{i} {z}"),
                                input: vec![],
                                expected: rhs.to_string(),
                                got: lhs.to_string(),
                            });
                        }
                    }
                }
            }
        }
    }

    VerificationReport::finish(
        "operad",
        Scope {
            trees: samples.len(),
            max_leaves: samples.iter().map(|s| s.element.arity()).max().unwrap_or(0),
            max_label,
        },
        checks,
        failures,
    )
}

fn tree_failure(check: &str, tree: &RibbonTree, position: usize) -> Failure {
    Failure {
        check: check.into(),
        tree: tree.to_string(),
        input: vec![position as u64],
        expected: tree.to_string(),
        got: String::new(),
    }
}

/// `β_{n,i}` by recurrence against direct caterpillar counts, and the
/// one-step expansion through the 2-corolla kernel.
pub fn verify_recurrence(max_n: usize) -> VerificationReport {
    let max_n = max_n.max(4);
    let width = max_n as u64 + 2;
    let table = beta_table(max_n, width).expect("max_n >= 4");
    let two = f_re(&corolla(2).expect("n = 2")).expect("trivalent");
    let mut checks = 0;
    let mut failures = Vec::new();
    for n in 4..=max_n {
        let row = &table[n - 3];
        let prev = &table[n - 4];
        for i in 0..=n as u64 + 2 {
            let label = format!("beta[{n}]");
            let direct = beta_direct(n, i).expect("n >= 3");
            checks += 1;
            failures.extend(compare(
                "recurrence = direct",
                &label,
                &[i],
                &direct,
                &row[i as usize],
            ));

            // Σ_k f_re(C₂)(i; 1, k) · β_{n−1,k}.
            let mut expanded = Count::zero();
            for k in 0..=i + 1 {
                let weight = two.eval(i, &[1, k]);
                let kernel = Count::from(u32::from(i.abs_diff(1) <= k && k <= i + 1));
                checks += 1;
                failures.extend(compare(
                    "kernel = 2-corolla count",
                    &label,
                    &[i, k],
                    &kernel,
                    &weight,
                ));
                if let Some(b) = prev.get(k as usize) {
                    expanded += weight * b;
                }
            }
            checks += 1;
            failures.extend(compare(
                "expansion = direct",
                &label,
                &[i],
                &direct,
                &expanded,
            ));
        }
    }
    VerificationReport::finish(
        "recurrence",
        Scope {
            trees: max_n - 3,
            max_leaves: max_n - 1,
            max_label: width,
        },
        checks,
        failures,
    )
}
