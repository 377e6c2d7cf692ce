//! Reference computations written independently of the engine internals.
#![allow(dead_code)]

use std::collections::BTreeSet;

use conway_core::diagram::Role;
use conway_core::{CrossingKind, IntPolynomial, Resolution, SingularLinkDiagram};
use num_bigint::BigInt;

/// Conway polynomial by a bare switch/smooth recursion. Components are
/// visited last to first, each from its largest arc; there is no memo and
/// no Reidemeister pruning, so it shares only the diagram surgeries with
/// the engine.
pub fn naive_conway(d: &SingularLinkDiagram) -> IntPolynomial {
    assert!(!d.is_singular());
    let Some(x) = last_first_ascending(d) else {
        return if d.component_count() == 1 {
            IntPolynomial::one()
        } else {
            IntPolynomial::zero()
        };
    };
    let switched = naive_conway(&d.switch(x).unwrap());
    let smoothed = naive_conway(&d.resolve(x, Resolution::Smooth).unwrap()).shift(1);
    match d.crossings()[x].kind {
        CrossingKind::Positive => switched + smoothed,
        CrossingKind::Negative => switched - smoothed,
        CrossingKind::Singular => unreachable!(),
    }
}

fn last_first_ascending(d: &SingularLinkDiagram) -> Option<usize> {
    let mut seen = vec![false; d.crossing_count()];
    for cycle in d.arc_components().iter().rev() {
        let Some(start) = cycle.iter().position(|a| a == cycle.iter().max().unwrap()) else {
            continue;
        };
        for k in 0..cycle.len() {
            let (x, role) = d.head(cycle[(start + k) % cycle.len()]);
            if !seen[x] {
                if role == Role::Under {
                    return Some(x);
                }
                seen[x] = true;
            }
        }
    }
    None
}

/// Half the signed count of crossings between components `i` and `j`.
pub fn naive_lk(d: &SingularLinkDiagram, i: usize, j: usize) -> i64 {
    let mut twice = 0;
    for (x, c) in d.crossings().iter().enumerate() {
        let (p, q) = (
            d.component_of_arc(c.under.incoming),
            d.component_of_arc(c.over.incoming),
        );
        if (p, q) == (i, j) || (p, q) == (j, i) {
            twice += c.sign().unwrap_or_else(|| panic!("crossing {x} is singular"));
        }
    }
    assert_eq!(twice % 2, 0);
    twice / 2
}

pub fn naive_linking_matrix(d: &SingularLinkDiagram) -> Vec<Vec<i64>> {
    let m = d.component_count();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { 0 } else { naive_lk(d, i, j) })
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(a: &[Vec<i64>]) -> i64 {
    match a.len() {
        0 => 1,
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] * cofactor_det(&minor)
            })
            .sum(),
    }
}

/// Laplacian of the linking graph with row and column `p` deleted.
pub fn reduced_laplacian(lk: &[Vec<i64>], p: usize) -> Vec<Vec<i64>> {
    let m = lk.len();
    (0..m)
        .filter(|&i| i != p)
        .map(|i| {
            (0..m)
                .filter(|&j| j != p)
                .map(|j| {
                    if i == j {
                        (0..m).filter(|&k| k != i).map(|k| lk[i][k]).sum()
                    } else {
                        -lk[i][j]
                    }
                })
                .collect()
        })
        .collect()
}

pub fn knot(d: &SingularLinkDiagram, i: usize) -> SingularLinkDiagram {
    d.delete_components(&BTreeSet::from([i])).unwrap()
}

/// `α_1 = c_1 − c_0 (c_1(K_1) + … + c_1(K_m))`, with polynomials supplied
/// by `conway`.
pub fn alpha1_formula(
    d: &SingularLinkDiagram,
    conway: impl Fn(&SingularLinkDiagram) -> IntPolynomial,
) -> BigInt {
    let m = d.component_count() as u32;
    let p = conway(d);
    let knots: BigInt = (0..d.component_count())
        .map(|i| conway(&knot(d, i)).coeff(2))
        .sum();
    p.coeff(m + 1) - p.coeff(m - 1) * knots
}
