//! Conway polynomial through the switch/smooth computation tree.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagram::{CrossingKind, Resolution, Role, SingularLinkDiagram};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

const DEFAULT_MEMO_CAPACITY: usize = 1 << 18;

/// Diagnostics of one computation tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SkeinTrace {
    pub switches: u64,
    pub smoothings: u64,
    pub kinks_removed: u64,
    pub bigons_removed: u64,
    pub memo_hits: u64,
    pub max_depth: usize,
}

/// Evaluator with a bounded memo table shared across calls.
///
/// Keys are serialized diagrams; since every surgery relabels arcs
/// canonically, equal subproblems reached along different branches
/// usually collide.
#[derive(Debug)]
pub struct SkeinEngine {
    memo: HashMap<String, IntPolynomial>,
    capacity: usize,
    trace: SkeinTrace,
    bigons: bool,
}

impl Default for SkeinEngine {
    fn default() -> Self {
        Self::with_capacity(DEFAULT_MEMO_CAPACITY)
    }
}

impl SkeinEngine {
    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            memo: HashMap::new(),
            capacity,
            trace: SkeinTrace::default(),
            bigons: true,
        }
    }

    pub fn trace(&self) -> SkeinTrace {
        self.trace
    }

    pub fn conway(&mut self, d: &SingularLinkDiagram) -> Result<IntPolynomial> {
        if d.is_singular() {
            return Err(Error::SingularInput);
        }
        // bigon removal reads faces, which need a planar slot structure;
        // surgeries preserve planarity, so checking the root suffices
        self.bigons = d.is_planar();
        Ok(self.eval(d, 0))
    }

    fn eval(&mut self, d: &SingularLinkDiagram, depth: usize) -> IntPolynomial {
        self.trace.max_depth = self.trace.max_depth.max(depth);
        let m = d.component_count();
        if d.crossing_count() == 0 || d.is_diagrammatically_split() {
            return trivial_value(m);
        }
        if let Some(x) = find_kink(d) {
            self.trace.kinks_removed += 1;
            let reduced = d.pass_through(&[x]).expect("kink crossing exists");
            return self.eval(&reduced, depth);
        }
        if let Some((x, y)) = self.bigons.then(|| find_removable_bigon(d)).flatten() {
            self.trace.bigons_removed += 1;
            let reduced = d.pass_through(&[x, y]).expect("bigon crossings exist");
            return self.eval(&reduced, depth);
        }
        let key = d.to_pd();
        if let Some(p) = self.memo.get(&key) {
            self.trace.memo_hits += 1;
            return p.clone();
        }
        let value = match first_ascending_crossing(d) {
            None => trivial_value(m),
            Some(x) => {
                self.trace.switches += 1;
                self.trace.smoothings += 1;
                let switched = d.switch(x).expect("crossing exists");
                let smoothed = d.resolve(x, Resolution::Smooth).expect("crossing exists");
                let a = self.eval(&switched, depth + 1);
                let b = self.eval(&smoothed, depth + 1).shift(1);
                match d.crossings()[x].kind {
                    CrossingKind::Positive => a + b,
                    _ => a - b,
                }
            }
        };
        if self.memo.len() >= self.capacity {
            self.memo.clear();
        }
        self.memo.insert(key, value.clone());
        value
    }
}

/// Value of a descending (or split) diagram.
fn trivial_value(m: usize) -> IntPolynomial {
    if m == 1 {
        IntPolynomial::one()
    } else {
        IntPolynomial::zero()
    }
}

/// A crossing with an arc leaving it and running straight back into it
/// bounds an empty monogon.
fn find_kink(d: &SingularLinkDiagram) -> Option<usize> {
    d.crossings().iter().position(|c| {
        c.kind != CrossingKind::Singular
            && (c.under.outgoing == c.over.incoming || c.over.outgoing == c.under.incoming)
    })
}

/// Two crossings joined by the two sides of a bigon face, one side passing
/// over at both ends and the other under at both.
fn find_removable_bigon(d: &SingularLinkDiagram) -> Option<(usize, usize)> {
    let ends = |a| {
        let (h, hr) = d.head(a);
        let (t, tr) = d.tail(a);
        (h, hr, t, tr)
    };
    d.faces().into_iter().find_map(|f| {
        let [(p, _), (q, _)] = f.boundary[..] else {
            return None;
        };
        let (ph, phr, pt, ptr) = ends(p);
        let (qh, qhr, qt, qtr) = ends(q);
        let classical = |x: usize| !d.crossings()[x].is_singular();
        let over_under = (phr == Role::Over && ptr == Role::Over && qhr == Role::Under && qtr == Role::Under)
            || (phr == Role::Under && ptr == Role::Under && qhr == Role::Over && qtr == Role::Over);
        (ph != pt
            && over_under
            && classical(ph)
            && classical(pt)
            && [qh, qt].contains(&ph)
            && [qh, qt].contains(&pt))
        .then_some((ph, pt))
    })
}

/// Walks the components in canonical order, each from its least arc, and
/// returns the first crossing first reached along its under strand.
fn first_ascending_crossing(d: &SingularLinkDiagram) -> Option<usize> {
    let mut visited = vec![false; d.crossing_count()];
    for cycle in d.arc_components() {
        for &a in cycle {
            let (x, role) = d.head(a);
            if !visited[x] {
                if role == Role::Under {
                    return Some(x);
                }
                visited[x] = true;
            }
        }
    }
    None
}

/// Conway polynomial of a non-singular diagram.
pub fn conway(d: &SingularLinkDiagram) -> Result<IntPolynomial> {
    SkeinEngine::default().conway(d)
}

pub fn conway_traced(d: &SingularLinkDiagram) -> Result<(IntPolynomial, SkeinTrace)> {
    let mut engine = SkeinEngine::default();
    let p = engine.conway(d)?;
    Ok((p, engine.trace()))
}

/// Extension of the Conway polynomial to singular diagrams, computed both
/// as the signed sum over resolutions and as `z^k` times the polynomial of
/// the diagram with all double points smoothed.
pub fn conway_singular(d: &SingularLinkDiagram) -> Result<IntPolynomial> {
    let nodes = d.singular_crossings();
    let mut engine = SkeinEngine::default();
    let mut sum = IntPolynomial::zero();
    d.for_each_resolution(&nodes, |sign, r| {
        let p = engine.conway(r)?;
        if sign > 0 {
            sum += &p;
        } else {
            sum -= &p;
        }
        Ok(())
    })?;
    let mut smoothed = d.clone();
    for &x in nodes.iter().rev() {
        smoothed = smoothed.resolve(x, Resolution::Smooth)?;
    }
    let via_smoothing = engine.conway(&smoothed)?.shift(nodes.len() as u32);
    if sum != via_smoothing {
        return Err(Error::InternalMismatch(format!(
            "resolution sum {sum} differs from smoothing value {via_smoothing}"
        )));
    }
    Ok(sum)
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Reduced Laplacian determinant: the minor of the linking Laplacian with
/// row and column `p` removed.
pub fn laplacian_minor_det(linking: &[Vec<i64>], p: usize) -> BigInt {
    let m = linking.len();
    let keep: Vec<usize> = (0..m).filter(|&i| i != p).collect();
    let entry = |i: usize, j: usize| -> BigInt {
        if i == j {
            (0..m)
                .filter(|&k| k != i)
                .map(|k| linking[i][k])
                .sum::<i64>()
                .into()
        } else {
            (-linking[i][j]).into()
        }
    };
    let minor: Vec<Vec<BigInt>> = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| entry(i, j)).collect())
        .collect();
    determinant(&minor)
}

/// Lowest Conway coefficient of a link with at least two components, read
/// off the linking numbers.
pub fn c0_closed_form(d: &SingularLinkDiagram) -> Result<BigInt> {
    if d.component_count() < 2 {
        return Err(Error::SingleComponent);
    }
    let lm = d.linking_matrix()?;
    Ok(laplacian_minor_det(lm.rows(), 0))
}
