//! Planar-diagram model of oriented singular link diagrams.
//!
//! Crossings are stored as oriented strand data (incoming and outgoing arc of
//! the under and over strand) plus a kind. The PD slot order is derived from
//! that data: a positive crossing is written `X+(u_in, o_out, u_out, o_in)`,
//! a negative one `X-(u_in, o_in, u_out, o_out)`, i.e. counterclockwise from
//! the incoming under-arc with the right-handed crossing positive. A singular
//! crossing stores its first strand in the `under` field and is laid out like
//! a positive crossing, so its positive resolution keeps the first strand
//! underneath.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arc label; labels of a validated diagram are exactly `1..=2c`.
pub type ArcLabel = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingKind {
    Positive,
    Negative,
    Singular,
}

impl CrossingKind {
    fn symbol(self) -> char {
        match self {
            CrossingKind::Positive => '+',
            CrossingKind::Negative => '-',
            CrossingKind::Singular => 's',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strand {
    pub incoming: ArcLabel,
    pub outgoing: ArcLabel,
}

impl Strand {
    pub fn new(incoming: ArcLabel, outgoing: ArcLabel) -> Self {
        Self { incoming, outgoing }
    }

    fn reversed(self) -> Self {
        Self::new(self.outgoing, self.incoming)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub kind: CrossingKind,
    /// Under strand; the first strand of a singular crossing.
    pub under: Strand,
    /// Over strand; the second strand of a singular crossing.
    pub over: Strand,
}

impl Crossing {
    pub fn new(kind: CrossingKind, under: Strand, over: Strand) -> Self {
        Self { kind, under, over }
    }

    /// PD slots, counterclockwise from the incoming under (first) arc.
    pub fn slots(&self) -> [ArcLabel; 4] {
        let (u, o) = (self.under, self.over);
        match self.kind {
            CrossingKind::Positive | CrossingKind::Singular => {
                [u.incoming, o.outgoing, u.outgoing, o.incoming]
            }
            CrossingKind::Negative => [u.incoming, o.incoming, u.outgoing, o.outgoing],
        }
    }

    /// Whether PD slot `k` holds an outgoing arc end.
    fn slot_is_outgoing(&self, k: usize) -> bool {
        match self.kind {
            CrossingKind::Positive | CrossingKind::Singular => k == 1 || k == 2,
            CrossingKind::Negative => k == 2 || k == 3,
        }
    }

    pub fn sign(&self) -> Option<i64> {
        match self.kind {
            CrossingKind::Positive => Some(1),
            CrossingKind::Negative => Some(-1),
            CrossingKind::Singular => None,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.kind == CrossingKind::Singular
    }

    pub fn strands(&self) -> [Strand; 2] {
        [self.under, self.over]
    }

    /// The same crossing with over and under exchanged; singular crossings
    /// are returned unchanged.
    pub fn switched(&self) -> Crossing {
        match self.kind {
            CrossingKind::Positive => Crossing::new(CrossingKind::Negative, self.over, self.under),
            CrossingKind::Negative => Crossing::new(CrossingKind::Positive, self.over, self.under),
            CrossingKind::Singular => *self,
        }
    }

    /// Crossing with the given sign (+1 or -1) at this double point.
    fn resolved(&self, positive: bool) -> Crossing {
        match (self.kind, positive) {
            (CrossingKind::Singular, true) => Crossing::new(CrossingKind::Positive, self.under, self.over),
            (CrossingKind::Singular, false) => Crossing::new(CrossingKind::Negative, self.over, self.under),
            (CrossingKind::Positive, false) | (CrossingKind::Negative, true) => self.switched(),
            _ => *self,
        }
    }

    /// Turns a classical crossing into a double point whose resolution of
    /// the original sign gives back this crossing.
    pub fn to_singular(&self) -> Crossing {
        match self.kind {
            CrossingKind::Positive => Crossing::new(CrossingKind::Singular, self.under, self.over),
            CrossingKind::Negative => Crossing::new(CrossingKind::Singular, self.over, self.under),
            CrossingKind::Singular => *self,
        }
    }

    fn relabeled(&self, f: impl Fn(ArcLabel) -> ArcLabel) -> Crossing {
        Crossing::new(
            self.kind,
            Strand::new(f(self.under.incoming), f(self.under.outgoing)),
            Strand::new(f(self.over.incoming), f(self.over.outgoing)),
        )
    }
}

/// Resolution requested at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    Positive,
    Negative,
    /// Oriented smoothing.
    Smooth,
}

/// Which strand of a crossing an arc end belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Under,
    Over,
}

/// Pairwise linking numbers of the components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix {
    entries: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&l| l == 0)
    }
}

/// One boundary walk of a face of the diagram: arcs with a flag telling
/// whether the arc's orientation agrees with the walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<(ArcLabel, bool)>,
}

impl Face {
    pub fn contains(&self, arc: ArcLabel) -> bool {
        self.boundary.iter().any(|(a, _)| *a == arc)
    }

    /// Distinct arcs in order of first appearance along the walk.
    pub fn distinct_arcs(&self) -> Vec<ArcLabel> {
        let mut seen = BTreeSet::new();
        self.boundary
            .iter()
            .filter(|(a, _)| seen.insert(*a))
            .map(|(a, _)| *a)
            .collect()
    }
}

/// Oriented link diagram with classical and singular crossings.
///
/// Immutable after construction; every operation returns a new diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLinkDiagram {
    crossings: Vec<Crossing>,
    unknots: usize,
    /// Indexed by arc label: crossing and role where the arc ends.
    head: Vec<(usize, Role)>,
    /// Indexed by arc label: crossing and role where the arc starts.
    tail: Vec<(usize, Role)>,
    successor: Vec<ArcLabel>,
    components: Vec<Vec<ArcLabel>>,
    arc_component: Vec<usize>,
}

impl SingularLinkDiagram {
    /// Validates oriented crossing data. Arc labels must be exactly
    /// `1..=2c`, each entering one crossing and leaving one crossing.
    pub fn from_crossings(crossings: Vec<Crossing>, unknots: usize) -> Result<Self> {
        if crossings.is_empty() && unknots == 0 {
            return Err(Error::EmptyInput);
        }
        let n = 2 * crossings.len();
        let mut head = vec![None; n + 1];
        let mut tail = vec![None; n + 1];
        let check = |a: ArcLabel| -> Result<usize> {
            if a == 0 || a as usize > n {
                return Err(Error::Invalid(format!("arc label {a} outside 1..={n}")));
            }
            Ok(a as usize)
        };
        for (x, c) in crossings.iter().enumerate() {
            for (s, role) in [(c.under, Role::Under), (c.over, Role::Over)] {
                let i = check(s.incoming)?;
                let o = check(s.outgoing)?;
                if head[i].replace((x, role)).is_some() {
                    return Err(Error::BrokenCycle(format!(
                        "arc {} enters two crossings",
                        s.incoming
                    )));
                }
                if tail[o].replace((x, role)).is_some() {
                    return Err(Error::BrokenCycle(format!(
                        "arc {} leaves two crossings",
                        s.outgoing
                    )));
                }
            }
        }
        let head: Vec<(usize, Role)> = head
            .into_iter()
            .map(|h| h.unwrap_or((usize::MAX, Role::Under)))
            .collect();
        let tail: Vec<(usize, Role)> = tail
            .into_iter()
            .map(|t| t.unwrap_or((usize::MAX, Role::Under)))
            .collect();
        let mut successor = vec![0; n + 1];
        for c in &crossings {
            for s in c.strands() {
                successor[s.incoming as usize] = s.outgoing;
            }
        }
        let mut arc_component = vec![usize::MAX; n + 1];
        let mut components = Vec::new();
        for start in 1..=n as ArcLabel {
            if arc_component[start as usize] != usize::MAX {
                continue;
            }
            let idx = components.len();
            let mut cycle = Vec::new();
            let mut a = start;
            loop {
                arc_component[a as usize] = idx;
                cycle.push(a);
                a = successor[a as usize];
                if a == start {
                    break;
                }
                if arc_component[a as usize] != usize::MAX {
                    return Err(Error::BrokenCycle(format!("arc {a} reached twice")));
                }
            }
            components.push(cycle);
        }
        Ok(Self {
            crossings,
            unknots,
            head,
            tail,
            successor,
            components,
            arc_component,
        })
    }

    /// Crossingless diagram of `m` unknotted, unlinked circles.
    pub fn unlink(m: usize) -> Result<Self> {
        Self::from_crossings(Vec::new(), m)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, x: usize) -> Result<&Crossing> {
        self.crossings.get(x).ok_or(Error::NoSuchCrossing(x))
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> u32 {
        2 * self.crossings.len() as u32
    }

    /// Number of crossingless components.
    pub fn unknots(&self) -> usize {
        self.unknots
    }

    /// Total number of components `m`.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.unknots
    }

    /// Arc cycles of the components that meet crossings, in canonical order
    /// (by least arc label); each cycle starts at its least arc. Crossingless
    /// components follow these in the component numbering.
    pub fn arc_components(&self) -> &[Vec<ArcLabel>] {
        &self.components
    }

    pub fn component_of_arc(&self, a: ArcLabel) -> usize {
        self.arc_component[a as usize]
    }

    pub fn successor(&self, a: ArcLabel) -> ArcLabel {
        self.successor[a as usize]
    }

    /// Crossing (and strand role) that arc `a` runs into.
    pub fn head(&self, a: ArcLabel) -> (usize, Role) {
        self.head[a as usize]
    }

    /// Crossing (and strand role) that arc `a` leaves.
    pub fn tail(&self, a: ArcLabel) -> (usize, Role) {
        self.tail[a as usize]
    }

    /// Components of the under and over strand at crossing `x`.
    pub fn crossing_components(&self, x: usize) -> (usize, usize) {
        let c = &self.crossings[x];
        (
            self.component_of_arc(c.under.incoming),
            self.component_of_arc(c.over.incoming),
        )
    }

    pub fn is_self_crossing(&self, x: usize) -> bool {
        let (a, b) = self.crossing_components(x);
        a == b
    }

    pub fn singular_crossings(&self) -> Vec<usize> {
        (0..self.crossings.len())
            .filter(|&x| self.crossings[x].is_singular())
            .collect()
    }

    pub fn is_singular(&self) -> bool {
        self.crossings.iter().any(Crossing::is_singular)
    }

    /// Signed self-crossing count of component `i`.
    pub fn writhe_of_component(&self, i: usize) -> i64 {
        (0..self.crossings.len())
            .filter(|&x| self.crossing_components(x) == (i, i))
            .filter_map(|x| self.crossings[x].sign())
            .sum()
    }

    /// Serializes to the PD text grammar accepted by [`parse_pd`].
    pub fn to_pd(&self) -> String {
        let mut terms: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.slots();
                format!("X{}({a},{b},{cc},{d})", c.kind.symbol())
            })
            .collect();
        if self.unknots > 0 {
            terms.push(format!("O({})", self.unknots));
        }
        terms.join(" ")
    }

    pub fn linking_matrix(&self) -> Result<LinkingMatrix> {
        let m = self.component_count();
        let mut twice = vec![vec![0i64; m]; m];
        for (x, c) in self.crossings.iter().enumerate() {
            let (i, j) = self.crossing_components(x);
            if i == j {
                continue;
            }
            let s = c.sign().ok_or(Error::SingularMixedCrossing(x))?;
            twice[i][j] += s;
            twice[j][i] += s;
        }
        let mut entries = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in 0..m {
                if twice[i][j] % 2 != 0 {
                    return Err(Error::Invalid(format!(
                        "odd signed crossing count between components {i} and {j}"
                    )));
                }
                entries[i][j] = twice[i][j] / 2;
            }
        }
        Ok(LinkingMatrix { entries })
    }

    /// Switches, resolves or smooths crossing `x`. Switching a classical
    /// crossing to the sign it already has is the identity.
    pub fn resolve(&self, x: usize, r: Resolution) -> Result<Self> {
        let c = *self.crossing(x)?;
        match r {
            Resolution::Smooth => Ok(self.smooth_with_map(x)?.0),
            Resolution::Positive | Resolution::Negative => {
                let mut crossings = self.crossings.clone();
                crossings[x] = c.resolved(r == Resolution::Positive);
                Ok(self.with_crossings(crossings))
            }
        }
    }

    /// Exchanges over and under at a classical crossing.
    pub fn switch(&self, x: usize) -> Result<Self> {
        let c = *self.crossing(x)?;
        let mut crossings = self.crossings.clone();
        crossings[x] = c.switched();
        Ok(self.with_crossings(crossings))
    }

    /// Replaces a classical crossing by a double point whose resolution of
    /// the original sign restores the crossing.
    pub fn make_singular(&self, x: usize) -> Result<Self> {
        let c = *self.crossing(x)?;
        let mut crossings = self.crossings.clone();
        crossings[x] = c.to_singular();
        Ok(self.with_crossings(crossings))
    }

    /// Adds a Reidemeister I curl of the given kind on arc `a`, just before
    /// the crossing the arc enters. The curl becomes the last crossing.
    pub fn insert_kink(&self, a: ArcLabel, kind: CrossingKind) -> Result<Self> {
        if a == 0 || a > self.arc_count() {
            return Err(Error::IndexOutOfRange {
                index: a as usize,
                len: self.arc_count() as usize,
            });
        }
        let (h, role) = self.head(a);
        let n1 = self.arc_count() + 1;
        let n2 = n1 + 1;
        let mut crossings = self.crossings.clone();
        match role {
            Role::Under => crossings[h].under.incoming = n2,
            Role::Over => crossings[h].over.incoming = n2,
        }
        crossings.push(Crossing::new(kind, Strand::new(a, n1), Strand::new(n1, n2)));
        Self::from_crossings(crossings, self.unknots)
    }

    /// Visits all `2^k` sign choices at the crossings `nodes` in Gray-code
    /// order, one resolve per step. The callback receives the product of the
    /// chosen signs and the resolved diagram.
    pub fn for_each_resolution(
        &self,
        nodes: &[usize],
        mut f: impl FnMut(i64, &Self) -> Result<()>,
    ) -> Result<()> {
        let mut crossings = self.crossings.clone();
        for &x in nodes {
            crossings[x] = self.crossing(x)?.resolved(true);
        }
        let mut current = self.with_crossings(crossings);
        let mut negative = vec![false; nodes.len()];
        let mut sign = 1i64;
        f(sign, &current)?;
        for step in 1u64..(1u64 << nodes.len()) {
            let bit = step.trailing_zeros() as usize;
            negative[bit] = !negative[bit];
            sign = -sign;
            let r = if negative[bit] {
                Resolution::Negative
            } else {
                Resolution::Positive
            };
            current = current.resolve(nodes[bit], r)?;
            f(sign, &current)?;
        }
        Ok(())
    }

    /// Same arcs, different crossing kinds or over/under choices.
    fn with_crossings(&self, crossings: Vec<Crossing>) -> Self {
        let mut d = self.clone();
        for (x, c) in crossings.iter().enumerate() {
            d.head[c.under.incoming as usize] = (x, Role::Under);
            d.head[c.over.incoming as usize] = (x, Role::Over);
            d.tail[c.under.outgoing as usize] = (x, Role::Under);
            d.tail[c.over.outgoing as usize] = (x, Role::Over);
        }
        d.crossings = crossings;
        d
    }

    /// Oriented smoothing at `x`; also returns where each old arc label went
    /// (`None` when the arc became part of a crossingless circle).
    pub fn smooth_with_map(&self, x: usize) -> Result<(Self, Vec<Option<ArcLabel>>)> {
        let c = *self.crossing(x)?;
        let mut removed = vec![false; self.crossings.len()];
        removed[x] = true;
        Surgery {
            d: self,
            removed,
            joins: vec![
                (c.under.incoming, c.over.outgoing),
                (c.over.incoming, c.under.outgoing),
            ],
            discarded: vec![false; self.arc_count() as usize + 1],
            unknots_removed: 0,
        }
        .apply()
    }

    /// Removes the given crossings as if both strands passed straight
    /// through, undoing an inserted tangle.
    pub fn pass_through(&self, xs: &[usize]) -> Result<Self> {
        let mut removed = vec![false; self.crossings.len()];
        let mut joins = Vec::new();
        for &x in xs {
            let c = self.crossing(x)?;
            removed[x] = true;
            joins.push((c.under.incoming, c.under.outgoing));
            joins.push((c.over.incoming, c.over.outgoing));
        }
        Ok(Surgery {
            d: self,
            removed,
            joins,
            discarded: vec![false; self.arc_count() as usize + 1],
            unknots_removed: 0,
        }
        .apply()?
        .0)
    }

    /// Keeps only the components in `keep` (0-based canonical indices).
    pub fn delete_components(&self, keep: &BTreeSet<usize>) -> Result<Self> {
        Ok(self.delete_components_with_map(keep)?.0)
    }

    pub fn delete_components_with_map(
        &self,
        keep: &BTreeSet<usize>,
    ) -> Result<(Self, Vec<Option<ArcLabel>>)> {
        if keep.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        let m = self.component_count();
        if let Some(&bad) = keep.iter().find(|&&i| i >= m) {
            return Err(Error::IndexOutOfRange { index: bad, len: m });
        }
        let kept = |comp: usize| keep.contains(&comp);
        let mut removed = vec![false; self.crossings.len()];
        let mut joins = Vec::new();
        let mut discarded = vec![false; self.arc_count() as usize + 1];
        for (a, d) in discarded.iter_mut().enumerate().skip(1) {
            *d = !kept(self.arc_component[a]);
        }
        for (x, c) in self.crossings.iter().enumerate() {
            let (cu, co) = self.crossing_components(x);
            match (kept(cu), kept(co)) {
                (true, true) => {}
                (false, false) => removed[x] = true,
                (ku, _) => {
                    if c.is_singular() {
                        return Err(Error::SingularBoundary(x));
                    }
                    removed[x] = true;
                    let s = if ku { c.under } else { c.over };
                    joins.push((s.incoming, s.outgoing));
                }
            }
        }
        let arc_comps = self.components.len();
        let unknots_removed = (arc_comps..m).filter(|i| !kept(*i)).count();
        Surgery {
            d: self,
            removed,
            joins,
            discarded,
            unknots_removed,
        }
        .apply()
    }

    /// Disjoint union, `other` placed far away; labels of `other` shifted.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.arc_count();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| c.relabeled(|a| a + off)));
        Self::from_crossings(crossings, self.unknots + other.unknots)
            .expect("disjoint union of valid diagrams is valid")
    }

    /// Connected sum of component `i` of `self` with component `j` of
    /// `other`, spliced at the least arc of each.
    pub fn connected_sum(&self, i: usize, other: &Self, j: usize) -> Result<Self> {
        let (m1, m2) = (self.component_count(), other.component_count());
        if i >= m1 {
            return Err(Error::IndexOutOfRange { index: i, len: m1 });
        }
        if j >= m2 {
            return Err(Error::IndexOutOfRange { index: j, len: m2 });
        }
        if i >= self.components.len() {
            let mut rest = self.clone();
            rest.unknots -= 1;
            return Ok(Self::from_crossings(rest.crossings, rest.unknots)
                .map(|r| r.disjoint_union(other))
                .unwrap_or_else(|_| other.clone()));
        }
        if j >= other.components.len() {
            let mut rest = other.clone();
            rest.unknots -= 1;
            return Ok(Self::from_crossings(rest.crossings, rest.unknots)
                .map(|r| self.disjoint_union(&r))
                .unwrap_or_else(|_| self.clone()));
        }
        let union = self.disjoint_union(other);
        let p = self.components[i][0];
        let q = other.components[j][0] + self.arc_count();
        union.splice_heads(p, q)
    }

    /// Exchanges the heads of arcs `a` and `b`: `a` now runs into the
    /// crossing `b` used to enter and vice versa. Across a region that both
    /// arcs bound with compatible orientations this is a band sum.
    pub fn splice_heads(&self, a: ArcLabel, b: ArcLabel) -> Result<Self> {
        let swap = |x: ArcLabel| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        };
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                Crossing::new(
                    c.kind,
                    Strand::new(swap(c.under.incoming), c.under.outgoing),
                    Strand::new(swap(c.over.incoming), c.over.outgoing),
                )
            })
            .collect();
        Self::from_crossings(crossings, self.unknots)
    }

    /// Reverses the orientation of component `i`. Mixed crossings with it
    /// change sign; over/under information is untouched.
    pub fn reverse_component(&self, i: usize) -> Result<Self> {
        let m = self.component_count();
        if i >= m {
            return Err(Error::IndexOutOfRange { index: i, len: m });
        }
        if i >= self.components.len() {
            return Ok(self.clone());
        }
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(x, c)| {
                let (cu, co) = self.crossing_components(x);
                let (ru, ro) = (cu == i, co == i);
                let u = if ru { c.under.reversed() } else { c.under };
                let o = if ro { c.over.reversed() } else { c.over };
                match (c.kind, ru != ro) {
                    (_, false) => Crossing::new(c.kind, u, o),
                    (CrossingKind::Positive, true) => Crossing::new(CrossingKind::Negative, u, o),
                    (CrossingKind::Negative, true) => Crossing::new(CrossingKind::Positive, u, o),
                    (CrossingKind::Singular, true) => Crossing::new(CrossingKind::Singular, o, u),
                }
            })
            .collect();
        Self::from_crossings(crossings, self.unknots)
    }

    /// Relabels arcs so that the crossing-bearing components appear in the
    /// given order (a permutation of their indices).
    pub fn reorder_components(&self, order: &[usize]) -> Result<Self> {
        let k = self.components.len();
        let mut seen = vec![false; k];
        for &i in order {
            if i >= k || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Invalid(format!(
                    "{order:?} is not a permutation of 0..{k}"
                )));
            }
        }
        if order.len() != k {
            return Err(Error::Invalid(format!(
                "{order:?} is not a permutation of 0..{k}"
            )));
        }
        let mut map = vec![0; self.arc_count() as usize + 1];
        let mut next = 1;
        for &i in order {
            for &a in &self.components[i] {
                map[a as usize] = next;
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| c.relabeled(|a| map[a as usize]))
            .collect();
        Self::from_crossings(crossings, self.unknots)
    }

    /// True iff the graph on components joined by crossings is disconnected.
    pub fn is_diagrammatically_split(&self) -> bool {
        let m = self.component_count();
        if m < 2 {
            return false;
        }
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for x in 0..self.crossings.len() {
            let (a, b) = self.crossing_components(x);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        (1..m).any(|i| find(&mut parent, i) != root)
    }

    /// Whether the counterclockwise slot orders describe a planar
    /// embedding: each connected piece of the projection with `c` crossings
    /// must have `c + 2` faces.
    pub fn is_planar(&self) -> bool {
        let c = self.crossings.len();
        let mut parent: Vec<usize> = (0..c).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in 1..=self.arc_count() as usize {
            let (h, t) = (
                find(&mut parent, self.head[a].0),
                find(&mut parent, self.tail[a].0),
            );
            parent[h] = t;
        }
        let pieces = (0..c).filter(|&x| find(&mut parent, x) == x).count();
        self.faces().len() == c + 2 * pieces
    }

    /// Faces of the planar structure given by the counterclockwise slot
    /// order. Crossingless components do not contribute.
    pub fn faces(&self) -> Vec<Face> {
        let slots: Vec<[ArcLabel; 4]> = self.crossings.iter().map(Crossing::slots).collect();
        let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.arc_count() as usize + 1];
        for (x, s) in slots.iter().enumerate() {
            for (k, a) in s.iter().enumerate() {
                ends[*a as usize].push((x, k));
            }
        }
        let mut seen = vec![[false; 4]; slots.len()];
        let mut faces = Vec::new();
        for x0 in 0..slots.len() {
            for k0 in 0..4 {
                if seen[x0][k0] {
                    continue;
                }
                let mut boundary = Vec::new();
                let (mut x, mut k) = (x0, k0);
                while !seen[x][k] {
                    seen[x][k] = true;
                    let a = slots[x][k];
                    let forward = self.crossings[x].slot_is_outgoing(k);
                    boundary.push((a, forward));
                    let e = &ends[a as usize];
                    let (y, j) = if e[0] == (x, k) { e[1] } else { e[0] };
                    x = y;
                    k = (j + 1) % 4;
                }
                faces.push(Face { boundary });
            }
        }
        faces
    }
}

impl fmt::Display for SingularLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

impl FromStr for SingularLinkDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

/// Removes crossings, joins arc ends and relabels gap-free in ascending
/// order of the surviving labels.
struct Surgery<'a> {
    d: &'a SingularLinkDiagram,
    removed: Vec<bool>,
    joins: Vec<(ArcLabel, ArcLabel)>,
    /// Arcs that disappear entirely (deleted components).
    discarded: Vec<bool>,
    unknots_removed: usize,
}

impl Surgery<'_> {
    fn apply(self) -> Result<(SingularLinkDiagram, Vec<Option<ArcLabel>>)> {
        let n = self.d.arc_count() as usize;
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.joins {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            // the smaller label represents the class
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
        let kept: Vec<Crossing> = self
            .d
            .crossings
            .iter()
            .zip(&self.removed)
            .filter(|(_, r)| !**r)
            .map(|(c, _)| *c)
            .collect();
        let mut used = BTreeSet::new();
        for c in &kept {
            for s in c.strands() {
                used.insert(find(&mut parent, s.incoming as usize));
                used.insert(find(&mut parent, s.outgoing as usize));
            }
        }
        let mut touched = BTreeSet::new();
        for (c, _) in self.d.crossings.iter().zip(&self.removed).filter(|(_, r)| **r) {
            for s in c.strands() {
                for a in [s.incoming, s.outgoing] {
                    if !self.discarded[a as usize] {
                        touched.insert(find(&mut parent, a as usize));
                    }
                }
            }
        }
        let free_loops = touched.difference(&used).count();
        let new_label: HashMap<usize, ArcLabel> = used
            .iter()
            .enumerate()
            .map(|(i, r)| (*r, i as ArcLabel + 1))
            .collect();
        let mut map = vec![None; n + 1];
        for (a, slot) in map.iter_mut().enumerate().skip(1) {
            if !self.discarded[a] {
                *slot = new_label.get(&find(&mut parent, a)).copied();
            }
        }
        let crossings = kept
            .iter()
            .map(|c| c.relabeled(|a| map[a as usize].expect("label of a kept crossing")))
            .collect();
        let unknots = self.d.unknots - self.unknots_removed + free_loops;
        Ok((SingularLinkDiagram::from_crossings(crossings, unknots)?, map))
    }
}

#[derive(Clone, Copy, Debug)]
struct RawTerm {
    kind: CrossingKind,
    slots: [u32; 4],
}

fn parse_terms(text: &str) -> Result<(Vec<RawTerm>, usize)> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut terms = Vec::new();
    let mut unknots = 0usize;
    let mut saw_any = false;
    let read_args = |i: &mut usize| -> Result<Vec<u32>> {
        if bytes.get(*i) != Some(&b'(') {
            return Err(Error::Parse(format!("expected `(` at byte {}", *i)));
        }
        let close = text[*i..]
            .find(')')
            .map(|p| p + *i)
            .ok_or_else(|| Error::Parse("unterminated term".into()))?;
        let args = text[*i + 1..close]
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad integer `{}`", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        *i = close + 1;
        Ok(args)
    };
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' | b',' => i += 1,
            b'X' => {
                let kind = match bytes.get(i + 1) {
                    Some(b'+') => CrossingKind::Positive,
                    Some(b'-') => CrossingKind::Negative,
                    Some(b's') => CrossingKind::Singular,
                    _ => return Err(Error::Parse(format!("bad crossing kind at byte {}", i + 1))),
                };
                i += 2;
                let args = read_args(&mut i)?;
                let slots: [u32; 4] = args
                    .try_into()
                    .map_err(|_| Error::Parse("a crossing takes exactly 4 arcs".into()))?;
                if slots.contains(&0) {
                    return Err(Error::Parse("arc labels must be positive".into()));
                }
                terms.push(RawTerm { kind, slots });
                saw_any = true;
            }
            b'O' => {
                i += 1;
                let args = read_args(&mut i)?;
                match args.as_slice() {
                    [k] => unknots += *k as usize,
                    _ => return Err(Error::Parse("O takes one count".into())),
                }
                saw_any = true;
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{}` at byte {i}",
                    other as char
                )))
            }
        }
    }
    if !saw_any {
        return Err(Error::EmptyInput);
    }
    Ok((terms, unknots))
}

/// Parses PD text: terms `X+(a,b,c,d)`, `X-(a,b,c,d)`, `Xs(a,b,c,d)` and
/// `O(k)`. Slot 0 is the incoming under (first) arc and slot 2 its
/// continuation; the direction of the other strand is read off the arc
/// cycles, falling back to the orientation implied by the crossing kind for
/// components that never pass under.
pub fn parse_pd(text: &str) -> Result<SingularLinkDiagram> {
    let (terms, unknots) = parse_terms(text)?;
    if terms.is_empty() && unknots == 0 {
        return Err(Error::EmptyInput);
    }
    let mut count: HashMap<u32, usize> = HashMap::new();
    for t in &terms {
        for a in t.slots {
            *count.entry(a).or_default() += 1;
        }
    }
    let mut labels: Vec<u32> = count.keys().copied().collect();
    labels.sort_unstable();
    if let Some(&arc) = labels.iter().find(|a| count[a] != 2) {
        return Err(Error::DuplicateArcUse {
            arc,
            count: count[&arc],
        });
    }
    let relabel: HashMap<u32, u32> = labels
        .iter()
        .enumerate()
        .map(|(i, a)| (*a, i as u32 + 1))
        .collect();
    let terms: Vec<RawTerm> = terms
        .iter()
        .map(|t| RawTerm {
            kind: t.kind,
            slots: t.slots.map(|a| relabel[&a]),
        })
        .collect();
    let n = labels.len();
    let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (x, t) in terms.iter().enumerate() {
        for (k, a) in t.slots.iter().enumerate() {
            ends[*a as usize].push((x, k));
        }
    }
    // in_at_3[x]: the second strand enters at slot 3 (and leaves at slot 1)
    let mut in_at_3: Vec<Option<bool>> = vec![None; terms.len()];
    let is_incoming = |in_at_3: &[Option<bool>], (y, j): (usize, usize)| -> Option<bool> {
        match j {
            0 => Some(true),
            2 => Some(false),
            1 => in_at_3[y].map(|d| !d),
            _ => in_at_3[y],
        }
    };
    loop {
        let mut progress = false;
        for x in 0..terms.len() {
            if in_at_3[x].is_some() {
                continue;
            }
            for k in [1usize, 3] {
                let a = terms[x].slots[k] as usize;
                let other = if ends[a][0] == (x, k) {
                    ends[a][1]
                } else {
                    ends[a][0]
                };
                if other.0 == x && (other.1 == 1 || other.1 == 3) {
                    continue;
                }
                if let Some(other_in) = is_incoming(&in_at_3, other) {
                    // this end is incoming iff the other one is outgoing
                    let this_in = !other_in;
                    in_at_3[x] = Some(if k == 3 { this_in } else { !this_in });
                    progress = true;
                    break;
                }
            }
        }
        if progress {
            continue;
        }
        match (0..terms.len()).find(|&x| in_at_3[x].is_none()) {
            Some(x) => in_at_3[x] = Some(terms[x].kind != CrossingKind::Negative),
            None => break,
        }
    }
    for a in 1..=n {
        let ins = ends[a]
            .iter()
            .filter(|e| is_incoming(&in_at_3, **e) == Some(true))
            .count();
        if ins != 1 {
            return Err(Error::BrokenCycle(format!(
                "arc {} has {ins} incoming ends",
                labels[a - 1]
            )));
        }
    }
    let crossings = terms
        .iter()
        .zip(&in_at_3)
        .map(|(t, d)| {
            let [s0, s1, s2, s3] = t.slots;
            let d = d.expect("all directions assigned");
            let second = if d {
                Strand::new(s3, s1)
            } else {
                Strand::new(s1, s3)
            };
            match (t.kind, d) {
                (CrossingKind::Singular, false) => {
                    Crossing::new(CrossingKind::Singular, Strand::new(s1, s3), Strand::new(s0, s2))
                }
                (kind, _) => Crossing::new(kind, Strand::new(s0, s2), second),
            }
        })
        .collect();
    SingularLinkDiagram::from_crossings(crossings, unknots)
}
