//! Extension of invariants to singular links and finite type checks.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::cn_move::cn_move;
use crate::diagram::{ArcLabel, Resolution, SingularLinkDiagram};
use crate::error::{Error, Result};
use crate::reduced::{alphas, component_knots};
use crate::skein::conway;

pub type Evaluator = Arc<dyn Fn(&SingularLinkDiagram) -> Result<BigInt> + Send + Sync>;

/// Integer valued link invariant with the type bounds it is claimed to
/// satisfy. Claims are metadata for probes; nothing here proves them.
#[derive(Clone)]
pub struct Invariant {
    pub name: String,
    evaluator: Evaluator,
    pub claimed_type: Option<u32>,
    pub claimed_colored_type: Option<u32>,
    pub claimed_multitype: Option<Vec<u32>>,
}

impl fmt::Debug for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Invariant")
            .field("name", &self.name)
            .field("claimed_type", &self.claimed_type)
            .field("claimed_colored_type", &self.claimed_colored_type)
            .field("claimed_multitype", &self.claimed_multitype)
            .finish()
    }
}

impl Invariant {
    pub fn new(
        name: impl Into<String>,
        evaluator: impl Fn(&SingularLinkDiagram) -> Result<BigInt> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            evaluator: Arc::new(evaluator),
            claimed_type: None,
            claimed_colored_type: None,
            claimed_multitype: None,
        }
    }

    pub fn with_type(mut self, n: u32) -> Self {
        self.claimed_type = Some(n);
        self
    }

    pub fn with_colored_type(mut self, n: u32) -> Self {
        self.claimed_colored_type = Some(n);
        self
    }

    /// Value on a non-singular diagram.
    pub fn eval(&self, d: &SingularLinkDiagram) -> Result<BigInt> {
        if d.is_singular() {
            return Err(Error::SingularInput);
        }
        (self.evaluator)(d)
    }

    /// Linking number of components `i` and `j`.
    pub fn linking_number(i: usize, j: usize) -> Self {
        Self::new(format!("lk{}{}", i + 1, j + 1), move |d| {
            let lm = d.linking_matrix()?;
            for k in [i, j] {
                if k >= lm.size() {
                    return Err(Error::IndexOutOfRange {
                        index: k,
                        len: lm.size(),
                    });
                }
            }
            Ok(lm.get(i, j).into())
        })
        .with_type(1)
        .with_colored_type(0)
    }

    /// Coefficient of `z^k` in the Conway polynomial.
    pub fn conway_coefficient(k: u32) -> Self {
        Self::new(format!("z^{k}"), move |d| Ok(conway(d)?.coeff(k)))
            .with_type(k)
            .with_colored_type(k)
    }

    /// Coefficient of `z^{m-1+r}`, with `m` the number of components.
    pub fn conway_relative(r: u32) -> Self {
        Self::new(format!("z^(m-1+{r})"), move |d| {
            let m = d.component_count() as u32;
            Ok(conway(d)?.coeff(m - 1 + r))
        })
        .with_colored_type(r)
    }

    /// `c_n`, the coefficient of `z^{m-1+2n}`.
    pub fn c(n: u32) -> Self {
        let mut v = Self::conway_relative(2 * n);
        v.name = format!("c{n}");
        v
    }

    /// `c_n` on links with `m` components, where it is of type `m-1+2n`.
    pub fn c_for(n: u32, m: u32) -> Self {
        Self::c(n).with_type(m - 1 + 2 * n)
    }

    /// Coefficient `α_k` of the reduced series.
    pub fn alpha(k: usize) -> Self {
        let v = Self::new(format!("alpha{k}"), move |d| {
            Ok(alphas(d, k + 1)?.pop().expect("k + 1 values"))
        });
        match k {
            0 => v.with_colored_type(0),
            _ => v.with_colored_type(2 * k as u32 - 1),
        }
    }

    /// `α_k` on links with `m` components, where it is of type `m-1+2k`.
    pub fn alpha_for(k: usize, m: u32) -> Self {
        Self::alpha(k).with_type(m - 1 + 2 * k as u32)
    }

    /// `c_n` of the `i`-th component knot.
    pub fn component_c(i: usize, n: u32) -> Self {
        let v = Self::new(format!("c{n}(K{})", i + 1), move |d| {
            let knots = component_knots(d)?;
            let k = knots.get(i).ok_or(Error::IndexOutOfRange {
                index: i,
                len: knots.len(),
            })?;
            Ok(conway(k)?.coeff(2 * n))
        })
        .with_type(2 * n);
        let mut multitype = vec![0; i + 1];
        multitype[i] = 2 * n;
        Self {
            claimed_multitype: Some(multitype),
            ..v
        }
    }

    /// Pointwise product. Type claims add.
    pub fn product(u: &Invariant, v: &Invariant) -> Self {
        let (fu, fv) = (u.evaluator.clone(), v.evaluator.clone());
        Self {
            name: format!("{}*{}", u.name, v.name),
            evaluator: Arc::new(move |d| Ok(fu(d)? * fv(d)?)),
            claimed_type: u.claimed_type.zip(v.claimed_type).map(|(a, b)| a + b),
            claimed_colored_type: u
                .claimed_colored_type
                .zip(v.claimed_colored_type)
                .map(|(a, b)| a + b),
            claimed_multitype: None,
        }
    }

    /// Looks up an invariant by its command-line name: `lk`, `lkIJ`, `cN`,
    /// `alphaK`, `zK`.
    pub fn by_name(name: &str) -> Result<Self> {
        let num = |s: &str| s.parse::<u32>().map_err(|_| Error::UnknownName(name.to_string()));
        if name == "lk" {
            return Ok(Self::linking_number(0, 1));
        }
        if let Some(rest) = name.strip_prefix("lk") {
            let digits: Vec<u32> = rest.chars().filter_map(|c| c.to_digit(10)).collect();
            return match digits[..] {
                [i, j] if rest.len() == 2 && i >= 1 && j >= 1 => {
                    Ok(Self::linking_number(i as usize - 1, j as usize - 1))
                }
                _ => Err(Error::UnknownName(name.to_string())),
            };
        }
        if let Some(rest) = name.strip_prefix("alpha") {
            return Ok(Self::alpha(num(rest)? as usize));
        }
        if let Some(rest) = name.strip_prefix('c') {
            return Ok(Self::c(num(rest)?));
        }
        if let Some(rest) = name.strip_prefix('z') {
            return Ok(Self::conway_coefficient(num(rest)?));
        }
        Err(Error::UnknownName(name.to_string()))
    }
}

fn evaluator_failure(v: &Invariant, e: Error) -> Error {
    match e {
        Error::EvaluatorFailure(_) => e,
        other => Error::EvaluatorFailure(format!("{}: {other}", v.name)),
    }
}

/// `v^×(d)`: the signed sum of `v` over all resolutions of the double
/// points, each `-` resolution contributing a factor `-1`.
pub fn extend(v: &Invariant, d: &SingularLinkDiagram) -> Result<BigInt> {
    extend_at(v, d, &d.singular_crossings())
}

/// Extension at the given double points only; every other double point of
/// `d` must already be resolved.
fn extend_at(v: &Invariant, d: &SingularLinkDiagram, nodes: &[usize]) -> Result<BigInt> {
    let mut sum = BigInt::zero();
    d.for_each_resolution(nodes, |sign, r| {
        let value = v.eval(r).map_err(|e| evaluator_failure(v, e))?;
        if sign > 0 {
            sum += value;
        } else {
            sum -= value;
        }
        Ok(())
    })?;
    Ok(sum)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// No sample gave a nonzero extension. Evidence only.
    Consistent,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub pd: String,
    #[serde(serialize_with = "crate::poly::serialize_int")]
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub trials: usize,
    pub failures: Vec<Witness>,
    pub verdict: Verdict,
}

/// Source of singular diagrams for probes.
pub trait SingularSampler {
    fn sample(&mut self) -> Result<SingularLinkDiagram>;
}

/// Evaluates `v^×` on `trials` samples, each of which must have exactly
/// `n + 1` double points, all self-intersections. Any nonzero value refutes
/// colored type `n`.
pub fn colored_vanishing_probe(
    v: &Invariant,
    n: u32,
    sampler: &mut dyn SingularSampler,
    trials: usize,
) -> Result<ProbeReport> {
    let mut failures = Vec::new();
    for _ in 0..trials {
        let d = sampler.sample()?;
        let xs = d.singular_crossings();
        if xs.len() != n as usize + 1 || xs.iter().any(|&x| !d.is_self_crossing(x)) {
            return Err(Error::SamplerExhausted(format!(
                "sample has {} double points, expected {} self-intersections",
                xs.len(),
                n + 1
            )));
        }
        let value = extend(v, &d)?;
        if !value.is_zero() {
            failures.push(Witness { pd: d.to_pd(), value });
        }
    }
    Ok(ProbeReport {
        trials,
        verdict: if failures.is_empty() {
            Verdict::Consistent
        } else {
            Verdict::Refuted
        },
        failures,
    })
}

pub const DEFAULT_LEIBNIZ_BOUND: usize = 3;

/// Product rule for the extension: `(uv)^×(d)` against
/// `Σ u^×(d_{A+}) v^×(d_{B-})` over splittings of the double points into
/// `A ⊔ B`, where `d_{A+}` resolves `A` positively and keeps `B` singular.
pub fn leibniz_check(u: &Invariant, v: &Invariant, d: &SingularLinkDiagram) -> Result<bool> {
    leibniz_check_bounded(u, v, d, DEFAULT_LEIBNIZ_BOUND)
}

pub fn leibniz_check_bounded(
    u: &Invariant,
    v: &Invariant,
    d: &SingularLinkDiagram,
    bound: usize,
) -> Result<bool> {
    let xs = d.singular_crossings();
    if xs.len() > bound {
        return Err(Error::TooManyDoublePoints {
            found: xs.len(),
            bound,
        });
    }
    let lhs = extend(&Invariant::product(u, v), d)?;
    let mut rhs = BigInt::zero();
    for mask in 0u32..(1 << xs.len()) {
        let (mut du, mut dv) = (d.clone(), d.clone());
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, &x) in xs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                du = du.resolve(x, Resolution::Positive)?;
                a.push(x);
            } else {
                dv = dv.resolve(x, Resolution::Negative)?;
                b.push(x);
            }
        }
        rhs += extend_at(u, &du, &b)? * extend_at(v, &dv, &a)?;
    }
    Ok(lhs == rhs)
}

/// Whether `v` takes the same value on `d` and on the result of a
/// `C_{n+1}`-move at `site`. `v` must not claim a type above `n`.
pub fn cn_invariance_check(
    v: &Invariant,
    n: u32,
    d: &SingularLinkDiagram,
    site: &[ArcLabel],
) -> Result<bool> {
    if let Some(t) = v.claimed_type.filter(|&t| t > n) {
        return Err(Error::Invalid(format!(
            "{} is claimed of type {t}, above {n}",
            v.name
        )));
    }
    let moved = cn_move(d, n + 1, site)?;
    Ok(v.eval(d)? == v.eval(&moved)?)
}
