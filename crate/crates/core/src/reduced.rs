//! Reduced Conway series, its coefficients and crossing-change laws.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::corpus::ctype2_family;
use crate::diagram::{Resolution, SingularLinkDiagram};
use crate::error::{Error, Result};
use crate::finite_type::{extend, Invariant};
use crate::poly::{IntPolynomial, TruncatedSeries};
use crate::skein::SkeinEngine;

pub const DEFAULT_TRUNCATION: usize = 8;

/// Knot diagrams of the individual components.
pub fn component_knots(d: &SingularLinkDiagram) -> Result<Vec<SingularLinkDiagram>> {
    (0..d.component_count())
        .map(|i| d.delete_components(&BTreeSet::from([i])))
        .collect()
}

/// Connected sum of all components, taken one after another.
pub fn componentwise_sum(d: &SingularLinkDiagram) -> Result<SingularLinkDiagram> {
    let knots = component_knots(d)?;
    let mut iter = knots.into_iter();
    let first = iter.next().expect("at least one component");
    iter.try_fold(first, |acc, k| acc.connected_sum(0, &k, 0))
}

fn non_singular(d: &SingularLinkDiagram) -> Result<()> {
    if d.is_singular() {
        Err(Error::SingularInput)
    } else {
        Ok(())
    }
}

/// `∇_L / (∇_{K_1} ⋯ ∇_{K_m})` modulo `z^{N+1}`.
pub fn reduced_conway(d: &SingularLinkDiagram, order: usize) -> Result<TruncatedSeries> {
    non_singular(d)?;
    let m = d.component_count();
    if order + 1 < m {
        return Err(Error::TruncationTooSmall { order, needed: m - 1 });
    }
    let mut engine = SkeinEngine::default();
    let num = TruncatedSeries::from_polynomial(&engine.conway(d)?, order);
    let mut den = TruncatedSeries::from_polynomial(&IntPolynomial::one(), order);
    for k in component_knots(d)? {
        den = den.mul(&TruncatedSeries::from_polynomial(&engine.conway(&k)?, order));
    }
    num.div(&den)
}

/// `α_0, …, α_{count-1}` by the recurrence
/// `α_i = c_i(L) − (α_{i−1} c_1(K) + … + α_0 c_i(K))` with `K` the
/// connected sum of the components.
pub fn alphas(d: &SingularLinkDiagram, count: usize) -> Result<Vec<BigInt>> {
    non_singular(d)?;
    let mut engine = SkeinEngine::default();
    alphas_with(&mut engine, d, count)
}

fn alphas_with(engine: &mut SkeinEngine, d: &SingularLinkDiagram, count: usize) -> Result<Vec<BigInt>> {
    let m = d.component_count() as u32;
    let link = engine.conway(d)?;
    let knot = engine.conway(&componentwise_sum(d)?)?;
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for i in 0..count {
        let mut a = link.coeff(m - 1 + 2 * i as u32);
        for (j, aj) in out.iter().enumerate() {
            a -= aj * knot.coeff(2 * (i - j) as u32);
        }
        out.push(a);
    }
    Ok(out)
}

/// Coefficient `α_k` of `z^{m−1+2k}` in the reduced series.
pub fn alpha(d: &SingularLinkDiagram, k: usize) -> Result<BigInt> {
    Ok(alphas(d, k + 1)?.pop().expect("k + 1 values"))
}

fn require_components(d: &SingularLinkDiagram, m: usize) -> Result<()> {
    let found = d.component_count();
    if found != m {
        return Err(Error::WrongComponentCount { expected: m, found });
    }
    Ok(())
}

/// Generalized Sato–Levine invariant `α_1` of a 2-component link, checked
/// against `c_1 − c_0 (c_1(K_1) + c_1(K_2))`.
pub fn sato_levine(d: &SingularLinkDiagram) -> Result<BigInt> {
    require_components(d, 2)?;
    non_singular(d)?;
    let mut engine = SkeinEngine::default();
    let a1 = alphas_with(&mut engine, d, 2)?.pop().expect("two values");
    let link = engine.conway(d)?;
    let mut knots = BigInt::zero();
    for k in component_knots(d)? {
        knots += engine.conway(&k)?.coeff(2);
    }
    let direct = link.coeff(3) - link.coeff(1) * knots;
    if direct != a1 {
        return Err(Error::InternalMismatch(format!(
            "Sato-Levine recurrence {a1} differs from explicit formula {direct}"
        )));
    }
    Ok(a1)
}

/// Pairs of component indices, as sorted 2-element sets.
fn pairs(m: usize) -> Vec<[usize; 2]> {
    (0..m).flat_map(|i| (i + 1..m).map(move |j| [i, j])).collect()
}

fn gamma_with(engine: &mut SkeinEngine, d: &SingularLinkDiagram) -> Result<BigInt> {
    let a1 = alphas_with(engine, d, 2)?.pop().expect("two values");
    let mut sub = Vec::new();
    for p in pairs(3) {
        let s = d.delete_components(&BTreeSet::from(p))?;
        sub.push(alphas_with(engine, &s, 2)?);
    }
    let mut correction = BigInt::zero();
    for (i, l) in sub.iter().enumerate() {
        for (j, l2) in sub.iter().enumerate() {
            if i != j {
                correction += &l[1] * &l2[0];
            }
        }
    }
    Ok(a1 - correction)
}

/// `γ(L) = α_1(L) − Σ α_1(Λ) α_0(Λ′)` over ordered pairs of distinct
/// 2-component sublinks.
pub fn gamma3(d: &SingularLinkDiagram) -> Result<BigInt> {
    require_components(d, 3)?;
    non_singular(d)?;
    gamma_with(&mut SkeinEngine::default(), d)
}

/// Outcome of a crossing-change law check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpReport {
    #[serde(serialize_with = "crate::poly::serialize_int")]
    pub jump: BigInt,
    #[serde(serialize_with = "crate::poly::serialize_int")]
    pub predicted: BigInt,
    pub holds: bool,
}

/// Linking numbers of the two lobes `η`, `ζ` obtained by smoothing the
/// single double point, which must be a self-intersection of the first
/// component, with the components `2..=m`. `η` is the lobe through the
/// arc leaving the double point along its first strand.
struct Lobes {
    x: usize,
    with_others: [Vec<i64>; 2],
}

fn lobes(ds: &SingularLinkDiagram, m: usize) -> Result<Lobes> {
    require_components(ds, m)?;
    let xs = ds.singular_crossings();
    let [x] = xs[..] else {
        return Err(Error::BadSingularity(format!(
            "expected one double point, found {}",
            xs.len()
        )));
    };
    if ds.crossing_components(x) != (0, 0) {
        return Err(Error::BadSingularity(format!(
            "double point {x} is not a self-intersection of the first component"
        )));
    }
    let c = ds.crossings()[x];
    let mut in_eta = vec![false; ds.arc_count() as usize + 1];
    let mut a = c.under.outgoing;
    loop {
        in_eta[a as usize] = true;
        if ds.head(a).0 == x {
            break;
        }
        a = ds.successor(a);
    }
    let mut twice = [vec![0i64; m - 1], vec![0i64; m - 1]];
    for cy in ds.crossings() {
        let Some(sign) = cy.sign() else { continue };
        let (p, q) = (cy.under.incoming, cy.over.incoming);
        for (s, t) in [(p, q), (q, p)] {
            let (cs, ct) = (ds.component_of_arc(s), ds.component_of_arc(t));
            if cs == 0 && ct != 0 {
                let lobe = usize::from(!in_eta[s as usize]);
                twice[lobe][ct - 1] += sign;
            }
        }
    }
    let [eta, zeta] = twice.map(|row| row.into_iter().map(|v| v / 2).collect());
    Ok(Lobes {
        x,
        with_others: [eta, zeta],
    })
}

fn report(jump: BigInt, predicted: BigInt) -> JumpReport {
    JumpReport {
        holds: jump == predicted,
        jump,
        predicted,
    }
}

/// `α_1(L_+) − α_1(L_−)` against `l_{η2} l_{ζ2}` for a 2-component link
/// with one double point on the first component.
pub fn alpha1_jump_check(ds: &SingularLinkDiagram) -> Result<JumpReport> {
    let lobes = lobes(ds, 2)?;
    let mut engine = SkeinEngine::default();
    let mut a1 = |r| -> Result<BigInt> {
        let d = ds.resolve(lobes.x, r)?;
        Ok(alphas_with(&mut engine, &d, 2)?.pop().expect("two values"))
    };
    let jump = a1(Resolution::Positive)? - a1(Resolution::Negative)?;
    let [eta, zeta] = &lobes.with_others;
    Ok(report(jump, BigInt::from(eta[0] * zeta[0])))
}

/// `γ(L_+) − γ(L_−)` against `l_{23}(l_{η2} l_{ζ3} + l_{ζ2} l_{η3})` for a
/// 3-component link with one double point on the first component.
pub fn gamma_jump_check(ds: &SingularLinkDiagram) -> Result<JumpReport> {
    let lobes = lobes(ds, 3)?;
    let plus = ds.resolve(lobes.x, Resolution::Positive)?;
    let minus = ds.resolve(lobes.x, Resolution::Negative)?;
    let mut engine = SkeinEngine::default();
    let jump = gamma_with(&mut engine, &plus)? - gamma_with(&mut engine, &minus)?;
    let l23 = plus.linking_matrix()?.get(1, 2);
    let [eta, zeta] = &lobes.with_others;
    Ok(report(
        jump,
        BigInt::from(l23 * (eta[0] * zeta[1] + zeta[0] * eta[1])),
    ))
}

/// Extension of `α_2` to the witness family member with parameters
/// `(a, b, c, d)`.
pub fn ctype2_witness(a: i64, b: i64, c: i64, d: i64) -> Result<BigInt> {
    extend(&Invariant::alpha(2), &ctype2_family(a, b, c, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn knots_reduce_to_one() {
        let s = reduced_conway(&corpus::trefoil(), 6).unwrap();
        assert_eq!(s.to_polynomial(), IntPolynomial::one());
    }

    #[test]
    fn truncation_must_reach_lowest_term() {
        let b = corpus::borromean();
        assert_eq!(
            reduced_conway(&b, 1),
            Err(Error::TruncationTooSmall { order: 1, needed: 2 })
        );
    }

    #[test]
    fn hopf_alphas() {
        let h = corpus::hopf(1).unwrap();
        assert_eq!(alphas(&h, 3).unwrap(), vec![1.into(), 0.into(), 0.into()]);
        assert_eq!(sato_levine(&h).unwrap(), BigInt::zero());
    }

    #[test]
    fn wrong_component_counts() {
        let t = corpus::trefoil();
        assert_eq!(
            sato_levine(&t),
            Err(Error::WrongComponentCount {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            gamma3(&t),
            Err(Error::WrongComponentCount {
                expected: 3,
                found: 1
            })
        );
    }

    #[test]
    fn jump_check_rejects_mixed_double_point() {
        let h = corpus::hopf(1).unwrap().make_singular(0).unwrap();
        assert!(matches!(alpha1_jump_check(&h), Err(Error::BadSingularity(_))));
    }
}
