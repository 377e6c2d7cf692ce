//! Diagrams from Morse programs: a top-to-bottom sequence of births (cups),
//! deaths (caps) and crossings of adjacent strands. Every program with a
//! balanced row yields a planar diagram with geometrically correct slot
//! order and crossing signs.

use crate::diagram::{Crossing, CrossingKind, SingularLinkDiagram, Strand};
use crate::error::{Error, Result};

/// Which strand of a crossing passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Over {
    /// The strand entering at the top left.
    Left,
    /// The strand entering at the top right.
    Right,
    Singular,
}

impl Over {
    pub fn flipped(self) -> Over {
        match self {
            Over::Left => Over::Right,
            Over::Right => Over::Left,
            Over::Singular => Over::Singular,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    /// Two new strand ends at positions `i`, `i + 1`.
    Cup(usize),
    /// Joins the strands at positions `i`, `i + 1`.
    Cap(usize),
    /// Crosses the strands at positions `i`, `i + 1`.
    Cross(usize, Over),
}

/// How a component is replaced by a satellite of its untwisted 2-cable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// One clasp; the result is a single component.
    Whitehead(Over),
    /// Two opposite clasps; the result has two components.
    Bing,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorseProgram {
    ops: Vec<Op>,
}

/// A built diagram together with the correspondence to program ops.
#[derive(Clone, Debug)]
pub struct MorseBuild {
    pub diagram: SingularLinkDiagram,
    /// Diagram crossing index of each `Cross` op.
    pub crossing_of_op: Vec<Option<usize>>,
    /// Components met by each op: the new strand of a cup, the joined
    /// strand of a cap, the top-left and top-right strands of a crossing.
    pub op_components: Vec<Vec<usize>>,
}

const TL: usize = 0;
const TR: usize = 1;

#[derive(Clone, Copy)]
enum Node {
    Pass,
    Crossing(usize),
}

struct PortGraph {
    nodes: Vec<Node>,
    node_of_op: Vec<usize>,
    ext: Vec<usize>,
}

impl PortGraph {
    fn internal(&self, p: usize) -> usize {
        let (n, k) = (p / 4, p % 4);
        match self.nodes[n] {
            Node::Pass => 4 * n + (k ^ 1),
            Node::Crossing(_) => 4 * n + (3 - k),
        }
    }
}

#[derive(Clone, Copy, Default)]
struct StrandData {
    incoming: u32,
    outgoing: u32,
    down: bool,
}

impl MorseProgram {
    pub fn new(ops: Vec<Op>) -> Self {
        Self { ops }
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn push(&mut self, op: Op) {
        self.ops.push(op);
    }

    /// Closure of a braid on `strands` strands. Letter `i > 0` is the
    /// positive generator exchanging strands `i` and `i + 1`, `-i` its
    /// inverse.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Self> {
        let mut ops: Vec<Op> = (0..strands).map(Op::Cup).collect();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if i == 0 || i >= strands {
                return Err(Error::Invalid(format!("generator {g} on {strands} strands")));
            }
            // strands run downward on the braid side
            ops.push(Op::Cross(i - 1, if g > 0 { Over::Right } else { Over::Left }));
        }
        ops.extend((0..strands).rev().map(Op::Cap));
        Ok(Self { ops })
    }

    fn port_graph(&self) -> Result<PortGraph> {
        let mut nodes = Vec::new();
        let mut node_of_op = Vec::new();
        let mut ext = Vec::new();
        let mut row: Vec<usize> = Vec::new();
        let bad = |k: usize, op: &Op| Error::Invalid(format!("op {k} ({op:?}) out of range"));
        fn connect(ext: &mut [usize], a: usize, b: usize) {
            ext[a] = b;
            ext[b] = a;
        }
        for (k, op) in self.ops.iter().enumerate() {
            let n = nodes.len();
            node_of_op.push(n);
            ext.extend([usize::MAX; 4]);
            match *op {
                Op::Cup(i) => {
                    if i > row.len() {
                        return Err(bad(k, op));
                    }
                    nodes.push(Node::Pass);
                    row.insert(i, 4 * n);
                    row.insert(i + 1, 4 * n + 1);
                }
                Op::Cap(i) => {
                    if i + 1 >= row.len() {
                        return Err(bad(k, op));
                    }
                    nodes.push(Node::Pass);
                    connect(&mut ext, row[i], 4 * n);
                    connect(&mut ext, row[i + 1], 4 * n + 1);
                    row.drain(i..i + 2);
                }
                Op::Cross(i, _) => {
                    if i + 1 >= row.len() {
                        return Err(bad(k, op));
                    }
                    nodes.push(Node::Crossing(k));
                    connect(&mut ext, row[i], 4 * n + TL);
                    connect(&mut ext, row[i + 1], 4 * n + TR);
                    row[i] = 4 * n + 2;
                    row[i + 1] = 4 * n + 3;
                }
            }
        }
        if !row.is_empty() {
            return Err(Error::Invalid(format!("{} strands left open", row.len())));
        }
        Ok(PortGraph {
            nodes,
            node_of_op,
            ext,
        })
    }

    /// Builds the diagram. Components are numbered in order of discovery
    /// (crossing-bearing components first, each first entered downward at
    /// the top of its earliest crossing); components listed in `reversed`
    /// get the opposite orientation.
    pub fn build(&self, reversed: &[usize]) -> Result<MorseBuild> {
        let g = self.port_graph()?;
        let mut comp_of_port = vec![usize::MAX; g.ext.len()];
        let crossing_nodes: Vec<usize> = (0..g.nodes.len())
            .filter(|&n| matches!(g.nodes[n], Node::Crossing(_)))
            .collect();
        let crossing_index = |n: usize| crossing_nodes.binary_search(&n).ok();
        let mut strands = vec![[StrandData::default(); 2]; crossing_nodes.len()];
        let strand_of = |p: usize| if p.is_multiple_of(4) || p % 4 == 3 { 0 } else { 1 };
        let mut label = 0u32;
        let mut comps = 0usize;
        for &n in &crossing_nodes {
            for top in [4 * n + TL, 4 * n + TR] {
                if comp_of_port[top] != usize::MAX {
                    continue;
                }
                let c = comps;
                comps += 1;
                let start_in = if reversed.contains(&c) {
                    g.internal(top)
                } else {
                    top
                };
                let x0 = crossing_index(n).expect("crossing node");
                let s0 = strand_of(start_in);
                label += 1;
                strands[x0][s0].outgoing = label;
                strands[x0][s0].down = start_in % 4 < 2;
                comp_of_port[start_in] = c;
                let mut p = g.internal(start_in);
                comp_of_port[p] = c;
                loop {
                    let q = g.ext[p];
                    comp_of_port[q] = c;
                    let qn = q / 4;
                    match g.nodes[qn] {
                        Node::Pass => p = g.internal(q),
                        Node::Crossing(_) => {
                            let x = crossing_index(qn).expect("crossing node");
                            let s = strand_of(q);
                            strands[x][s].incoming = label;
                            if q == start_in {
                                break;
                            }
                            strands[x][s].down = q % 4 < 2;
                            label += 1;
                            strands[x][s].outgoing = label;
                            p = g.internal(q);
                        }
                    }
                    comp_of_port[p] = c;
                }
            }
        }
        let mut unknots = 0;
        for (k, op) in self.ops.iter().enumerate() {
            if let Op::Cup(_) = op {
                let start = 4 * g.node_of_op[k];
                if comp_of_port[start] != usize::MAX {
                    continue;
                }
                let c = comps;
                comps += 1;
                unknots += 1;
                let mut p = start;
                loop {
                    comp_of_port[p] = c;
                    let q = g.ext[p];
                    comp_of_port[q] = c;
                    p = g.internal(q);
                    if p == start {
                        break;
                    }
                }
            }
        }
        let mut crossings = Vec::with_capacity(crossing_nodes.len());
        let mut crossing_of_op = vec![None; self.ops.len()];
        for (x, &n) in crossing_nodes.iter().enumerate() {
            let Node::Crossing(k) = g.nodes[n] else {
                unreachable!()
            };
            crossing_of_op[k] = Some(x);
            let Op::Cross(_, over) = self.ops[k] else {
                unreachable!()
            };
            let [s0, s1] = strands[x];
            let dir = |s: usize, d: &StrandData| -> (i64, i64) {
                match (s, d.down) {
                    (0, true) => (1, -1),
                    (0, false) => (-1, 1),
                    (_, true) => (-1, -1),
                    (_, false) => (1, 1),
                }
            };
            let (d0, d1) = (dir(0, &s0), dir(1, &s1));
            let cross = |a: (i64, i64), b: (i64, i64)| a.0 * b.1 - a.1 * b.0;
            let st = |d: &StrandData| Strand::new(d.incoming, d.outgoing);
            let c = match over {
                Over::Left => {
                    let kind = if cross(d0, d1) > 0 {
                        CrossingKind::Positive
                    } else {
                        CrossingKind::Negative
                    };
                    Crossing::new(kind, st(&s1), st(&s0))
                }
                Over::Right => {
                    let kind = if cross(d1, d0) > 0 {
                        CrossingKind::Positive
                    } else {
                        CrossingKind::Negative
                    };
                    Crossing::new(kind, st(&s0), st(&s1))
                }
                Over::Singular => {
                    if cross(d1, d0) > 0 {
                        Crossing::new(CrossingKind::Singular, st(&s0), st(&s1))
                    } else {
                        Crossing::new(CrossingKind::Singular, st(&s1), st(&s0))
                    }
                }
            };
            crossings.push(c);
        }
        let op_components = self
            .ops
            .iter()
            .enumerate()
            .map(|(k, op)| {
                let n = g.node_of_op[k];
                match op {
                    Op::Cup(_) | Op::Cap(_) => vec![comp_of_port[4 * n]],
                    Op::Cross(..) => vec![comp_of_port[4 * n + TL], comp_of_port[4 * n + TR]],
                }
            })
            .collect();
        Ok(MorseBuild {
            diagram: SingularLinkDiagram::from_crossings(crossings, unknots)?,
            crossing_of_op,
            op_components,
        })
    }

    /// Replaces component `comp` by a satellite with the given pattern,
    /// inserted just after the component's first birth. Returns the new
    /// program and the op indices of the inserted clasp cups; the cup of
    /// the first clasp lies on the new (small) component of a Bing double.
    pub fn double(&self, comp: usize, pattern: Pattern) -> Result<(MorseProgram, Vec<usize>)> {
        let built = self.build(&[])?;
        let m = built.diagram.component_count();
        if comp >= m {
            return Err(Error::IndexOutOfRange { index: comp, len: m });
        }
        let writhe = built.diagram.writhe_of_component(comp);
        let mut out = Vec::with_capacity(4 * self.ops.len());
        let mut markers = Vec::new();
        let mut row: Vec<usize> = Vec::new();
        let mut inserted = false;
        for (k, op) in self.ops.iter().enumerate() {
            let shifted = |row: &[usize], i: usize| i + row[..i].iter().filter(|&&c| c == comp).count();
            match *op {
                Op::Cup(i) => {
                    let c = built.op_components[k][0];
                    let j = shifted(&row, i);
                    if c == comp {
                        out.push(Op::Cup(j));
                        out.push(Op::Cup(j + 1));
                        if !inserted {
                            inserted = true;
                            // blackboard framing of the cable is the writhe;
                            // a left-over full twist of parallel strands adds -1
                            let twist = if writhe > 0 { Over::Left } else { Over::Right };
                            for _ in 0..writhe.unsigned_abs() {
                                out.push(Op::Cross(j, twist));
                                out.push(Op::Cross(j, twist));
                            }
                            let clasps: &[Over] = match pattern {
                                Pattern::Whitehead(o) => &[o][..],
                                Pattern::Bing => &[Over::Left, Over::Right][..],
                            };
                            for &o in clasps {
                                markers.push(out.len());
                                out.extend([
                                    Op::Cup(j + 1),
                                    Op::Cross(j, o),
                                    Op::Cross(j + 2, o),
                                    Op::Cap(j + 1),
                                ]);
                            }
                        }
                    } else {
                        out.push(Op::Cup(j));
                    }
                    row.insert(i, c);
                    row.insert(i + 1, c);
                }
                Op::Cap(i) => {
                    let j = shifted(&row, i);
                    if row[i] == comp {
                        out.push(Op::Cap(j + 1));
                        out.push(Op::Cap(j));
                    } else {
                        out.push(Op::Cap(j));
                    }
                    row.drain(i..i + 2);
                }
                Op::Cross(i, o) => {
                    let j = shifted(&row, i);
                    match (row[i] == comp, row[i + 1] == comp) {
                        (false, false) => out.push(Op::Cross(j, o)),
                        (true, false) => out.extend([Op::Cross(j + 1, o), Op::Cross(j, o)]),
                        (false, true) => out.extend([Op::Cross(j, o), Op::Cross(j + 1, o)]),
                        (true, true) => out.extend([
                            Op::Cross(j + 1, o),
                            Op::Cross(j, o),
                            Op::Cross(j + 2, o),
                            Op::Cross(j + 1, o),
                        ]),
                    }
                    row.swap(i, i + 1);
                }
            }
        }
        Ok((MorseProgram::new(out), markers))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein::conway;
    use crate::IntPolynomial;

    fn unknot() -> MorseProgram {
        MorseProgram::new(vec![Op::Cup(0), Op::Cap(0)])
    }

    #[test]
    fn braid_closures() {
        let hopf = MorseProgram::braid_closure(2, &[1, 1])
            .unwrap()
            .build(&[])
            .unwrap();
        assert_eq!(hopf.diagram.linking_matrix().unwrap().get(0, 1), 1);
        assert_eq!(conway(&hopf.diagram).unwrap(), IntPolynomial::z());
        let t = MorseProgram::braid_closure(2, &[1, 1, 1])
            .unwrap()
            .build(&[])
            .unwrap();
        assert_eq!(
            conway(&t.diagram).unwrap(),
            IntPolynomial::from_terms([(0, 1), (2, 1)])
        );
        let f8 = MorseProgram::braid_closure(3, &[1, -2, 1, -2])
            .unwrap()
            .build(&[])
            .unwrap();
        assert_eq!(
            conway(&f8.diagram).unwrap(),
            IntPolynomial::from_terms([(0, 1), (2, -1)])
        );
    }

    #[test]
    fn planar_by_construction() {
        let b = MorseProgram::braid_closure(3, &[1, -2, 1, -2, 1, -2])
            .unwrap()
            .build(&[])
            .unwrap();
        assert_eq!(b.diagram.faces().len(), b.diagram.crossing_count() + 2);
    }

    #[test]
    fn reversal_flips_mixed_signs() {
        let p = MorseProgram::braid_closure(2, &[1, 1]).unwrap();
        let r = p.build(&[1]).unwrap();
        assert_eq!(r.diagram.linking_matrix().unwrap().get(0, 1), -1);
    }

    #[test]
    fn pure_loops_are_unknots() {
        let b = unknot().build(&[]).unwrap();
        assert_eq!(b.diagram.component_count(), 1);
        assert_eq!(b.diagram.crossing_count(), 0);
        assert!(MorseProgram::new(vec![Op::Cup(0)]).build(&[]).is_err());
        assert!(MorseProgram::new(vec![Op::Cap(0)]).build(&[]).is_err());
    }

    #[test]
    fn whitehead_double_of_unknot_is_trivial() {
        for o in [Over::Left, Over::Right] {
            let (p, markers) = unknot().double(0, Pattern::Whitehead(o)).unwrap();
            assert_eq!(markers.len(), 1);
            let d = p.build(&[]).unwrap().diagram;
            assert_eq!(d.component_count(), 1);
            assert_eq!(conway(&d).unwrap(), IntPolynomial::one());
        }
    }

    #[test]
    fn untwisted_doubles_of_trefoil() {
        let t = MorseProgram::braid_closure(2, &[1, 1, 1]).unwrap();
        let (p, _) = t.double(0, Pattern::Whitehead(Over::Left)).unwrap();
        let d = p.build(&[]).unwrap().diagram;
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.faces().len(), d.crossing_count() + 2);
        // untwisted Whitehead doubles have trivial Alexander polynomial
        assert_eq!(conway(&d).unwrap(), IntPolynomial::one());
        let (b, _) = t.double(0, Pattern::Bing).unwrap();
        let d = b.build(&[]).unwrap().diagram;
        assert_eq!(d.component_count(), 2);
        assert!(d.linking_matrix().unwrap().is_zero());
    }

    #[test]
    fn bing_double_of_unknot_is_split_like() {
        let (p, markers) = unknot().double(0, Pattern::Bing).unwrap();
        assert_eq!(markers.len(), 2);
        let d = p.build(&[]).unwrap().diagram;
        assert_eq!(d.component_count(), 2);
        assert!(conway(&d).unwrap().is_zero());
        assert!(d.linking_matrix().unwrap().is_zero());
    }

    #[test]
    fn bing_double_of_hopf_is_borromean() {
        let hopf = MorseProgram::braid_closure(2, &[1, 1]).unwrap();
        let (p, _) = hopf.double(1, Pattern::Bing).unwrap();
        let d = p.build(&[]).unwrap().diagram;
        assert_eq!(d.component_count(), 3);
        assert!(d.linking_matrix().unwrap().is_zero());
        let c = conway(&d).unwrap();
        assert_eq!(c.terms().count(), 1);
        assert_eq!(c.coeff(4).magnitude(), &num_bigint::BigUint::from(1u32));
    }
}
