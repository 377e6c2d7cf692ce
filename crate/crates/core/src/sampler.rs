//! Seeded random sources of link diagrams.

use std::ops::RangeInclusive;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::ctype2_family;
use crate::diagram::SingularLinkDiagram;
use crate::error::{Error, Result};
use crate::finite_type::SingularSampler;
use crate::morse::MorseProgram;

const MAX_ATTEMPTS: usize = 10_000;

/// Closures of random braid words. Every diagram it produces is planar and
/// has as many crossings as its word has letters.
#[derive(Clone, Debug)]
pub struct BraidSampler {
    rng: ChaCha8Rng,
    pub strands: RangeInclusive<usize>,
    pub length: RangeInclusive<usize>,
    pub components: RangeInclusive<usize>,
}

impl BraidSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            strands: 2..=4,
            length: 1..=8,
            components: 1..=4,
        }
    }

    pub fn strands(mut self, r: RangeInclusive<usize>) -> Self {
        self.strands = r;
        self
    }

    pub fn length(mut self, r: RangeInclusive<usize>) -> Self {
        self.length = r;
        self
    }

    pub fn components(mut self, r: RangeInclusive<usize>) -> Self {
        self.components = r;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A random word: strand count and signed generators `±1..=±(s-1)`.
    pub fn word(&mut self) -> (usize, Vec<i32>) {
        let s = self.rng.gen_range(self.strands.clone());
        let len = self.rng.gen_range(self.length.clone());
        let word = (0..len)
            .map(|_| {
                let g = self.rng.gen_range(1..s as i32);
                if self.rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        (s, word)
    }

    /// A random closure whose component count lies in the configured range.
    pub fn diagram(&mut self) -> Result<SingularLinkDiagram> {
        for _ in 0..MAX_ATTEMPTS {
            let (s, word) = self.word();
            if components_of(s, &word) > *self.components.end()
                || components_of(s, &word) < *self.components.start()
            {
                continue;
            }
            return Ok(MorseProgram::braid_closure(s, &word)?.build(&[])?.diagram);
        }
        Err(Error::SamplerExhausted(format!(
            "no braid closure with {:?} components",
            self.components
        )))
    }
}

/// Number of cycles of the permutation of a braid word.
fn components_of(strands: usize, word: &[i32]) -> usize {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; strands];
    let mut cycles = 0;
    for start in 0..strands {
        if !seen[start] {
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
    }
    cycles
}

/// Which crossings may become double points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoublePoints {
    Any,
    SelfOnly,
    /// Self-intersections of the given component.
    OnComponent(usize),
}

/// Random braid closures with some crossings turned into double points.
#[derive(Clone, Debug)]
pub struct SingularBraidSampler {
    pub braids: BraidSampler,
    pub count: usize,
    pub kind: DoublePoints,
}

impl SingularBraidSampler {
    pub fn new(braids: BraidSampler, count: usize, kind: DoublePoints) -> Self {
        Self { braids, count, kind }
    }
}

impl SingularSampler for SingularBraidSampler {
    fn sample(&mut self) -> Result<SingularLinkDiagram> {
        for _ in 0..MAX_ATTEMPTS {
            let d = self.braids.diagram()?;
            let candidates: Vec<usize> = (0..d.crossing_count())
                .filter(|&x| match self.kind {
                    DoublePoints::Any => true,
                    DoublePoints::SelfOnly => d.is_self_crossing(x),
                    DoublePoints::OnComponent(c) => d.crossing_components(x) == (c, c),
                })
                .collect();
            if candidates.len() < self.count {
                continue;
            }
            let chosen = sample(self.braids.rng(), candidates.len(), self.count);
            return chosen
                .iter()
                .try_fold(d, |acc, i| acc.make_singular(candidates[i]));
        }
        Err(Error::SamplerExhausted(format!(
            "no diagram with {} double points of kind {:?}",
            self.count, self.kind
        )))
    }
}

/// Random members of the colored-type-2 witness family.
#[derive(Clone, Debug)]
pub struct Ctype2Sampler {
    rng: ChaCha8Rng,
    pub bound: i64,
}

impl Ctype2Sampler {
    pub fn new(seed: u64, bound: i64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound,
        }
    }

    /// A tuple with `a + b + c + 2d = 0` and all entries within the bound.
    pub fn params(&mut self) -> [i64; 4] {
        let r = -self.bound..=self.bound;
        loop {
            let a = self.rng.gen_range(r.clone());
            let b = self.rng.gen_range(r.clone());
            let d = self.rng.gen_range(r.clone());
            let c = -a - b - 2 * d;
            if r.contains(&c) {
                return [a, b, c, d];
            }
        }
    }
}

impl SingularSampler for Ctype2Sampler {
    fn sample(&mut self) -> Result<SingularLinkDiagram> {
        let [a, b, c, d] = self.params();
        ctype2_family(a, b, c, d)
    }
}

/// Cycles through a fixed list of diagrams.
#[derive(Clone, Debug)]
pub struct FixedSampler {
    diagrams: Vec<SingularLinkDiagram>,
    next: usize,
}

impl FixedSampler {
    pub fn new(diagrams: Vec<SingularLinkDiagram>) -> Self {
        Self { diagrams, next: 0 }
    }
}

impl SingularSampler for FixedSampler {
    fn sample(&mut self) -> Result<SingularLinkDiagram> {
        if self.diagrams.is_empty() {
            return Err(Error::SamplerExhausted("no diagrams given".into()));
        }
        let d = self.diagrams[self.next % self.diagrams.len()].clone();
        self.next += 1;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_diagrams() {
        let mut a = BraidSampler::new(7);
        let mut b = BraidSampler::new(7);
        for _ in 0..20 {
            assert_eq!(a.diagram().unwrap(), b.diagram().unwrap());
        }
    }

    #[test]
    fn component_filter() {
        let mut s = BraidSampler::new(1).components(2..=2);
        for _ in 0..20 {
            assert_eq!(s.diagram().unwrap().component_count(), 2);
        }
    }

    #[test]
    fn double_points_on_first_component() {
        let braids = BraidSampler::new(3).components(2..=2).length(4..=8);
        let mut s = SingularBraidSampler::new(braids, 1, DoublePoints::OnComponent(0));
        for _ in 0..10 {
            let d = s.sample().unwrap();
            let xs = d.singular_crossings();
            assert_eq!(xs.len(), 1);
            assert_eq!(d.crossing_components(xs[0]), (0, 0));
        }
    }

    #[test]
    fn impossible_request_is_reported() {
        let braids = BraidSampler::new(0).length(1..=2);
        let mut s = SingularBraidSampler::new(braids, 5, DoublePoints::Any);
        assert!(matches!(s.sample(), Err(Error::SamplerExhausted(_))));
    }

    #[test]
    fn ctype2_params_satisfy_constraint() {
        let mut s = Ctype2Sampler::new(5, 3);
        for _ in 0..50 {
            let [a, b, c, d] = s.params();
            assert_eq!(a + b + c + 2 * d, 0);
        }
    }
}
