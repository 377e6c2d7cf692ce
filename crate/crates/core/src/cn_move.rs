//! C_n-moves as band sums with an (n+1)-component Brunnian link.

use crate::corpus::brunnian;
use crate::diagram::{ArcLabel, Face, SingularLinkDiagram};
use crate::error::{Error, Result};

/// Result of a C_n-move: the new diagram and the indices of the crossings
/// of the inserted Brunnian link.
#[derive(Clone, Debug)]
pub struct CnMove {
    pub diagram: SingularLinkDiagram,
    pub patch: Vec<usize>,
}

/// Faces of `d` whose boundary contains every arc in `sites`.
pub fn common_faces(d: &SingularLinkDiagram, sites: &[ArcLabel]) -> Vec<Face> {
    d.faces()
        .into_iter()
        .filter(|f| sites.iter().all(|&s| f.contains(s)))
        .collect()
}

/// Applies a C_n-move at the `n + 1` arcs `sites`, which must be distinct
/// and lie on a common face. Each arc is banded, across that face, to one
/// component of the Brunnian link placed inside it.
pub fn cn_move(d: &SingularLinkDiagram, n: u32, sites: &[ArcLabel]) -> Result<SingularLinkDiagram> {
    Ok(cn_move_with_patch(d, n, sites)?.diagram)
}

pub fn cn_move_with_patch(d: &SingularLinkDiagram, n: u32, sites: &[ArcLabel]) -> Result<CnMove> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let k = n as usize + 1;
    if sites.len() != k {
        return Err(Error::BadSite(format!("expected {k} arcs, got {}", sites.len())));
    }
    for (i, &s) in sites.iter().enumerate() {
        if s == 0 || s > d.arc_count() {
            return Err(Error::BadSite(format!("arc {s} does not exist")));
        }
        if sites[..i].contains(&s) {
            return Err(Error::BadSite(format!("arc {s} given twice")));
        }
    }
    let face = common_faces(d, sites)
        .into_iter()
        .next()
        .ok_or_else(|| Error::BadSite(format!("arcs {sites:?} do not bound a common face")))?;
    let first_pos =
        |f: &Face, a: ArcLabel| f.boundary.iter().position(|(b, _)| *b == a).expect("arc on face");
    let mut ordered: Vec<(usize, ArcLabel, bool)> = sites
        .iter()
        .map(|&s| {
            let p = first_pos(&face, s);
            (p, s, face.boundary[p].1)
        })
        .collect();
    ordered.sort_unstable();

    let mut m = brunnian(k)?;
    let (g, picks) = m
        .faces()
        .into_iter()
        .find_map(|g| {
            let mut picks: Vec<Option<(ArcLabel, bool)>> = vec![None; k];
            for &(a, fwd) in &g.boundary {
                let c = m.component_of_arc(a);
                if picks[c].is_none() {
                    picks[c] = Some((a, fwd));
                }
            }
            let picks: Option<Vec<(ArcLabel, bool)>> = picks.into_iter().collect();
            picks.map(|p| (g, p))
        })
        .ok_or_else(|| {
            Error::InternalMismatch("Brunnian template has no face meeting all components".into())
        })?;
    // arcs of the template face in walk order, one per component
    let mut e: Vec<(usize, ArcLabel, bool)> =
        picks.iter().map(|&(a, fwd)| (first_pos(&g, a), a, fwd)).collect();
    e.sort_unstable();
    // the template face is seen from outside: cyclic order reverses
    let partner = |i: usize| e[(k - i) % k];
    for (i, &(_, _, site_fwd)) in ordered.iter().enumerate() {
        let (_, a, fwd) = partner(i);
        if site_fwd != fwd {
            m = m.reverse_component(m.component_of_arc(a))?;
        }
    }
    let offset = d.arc_count();
    let base = d.crossing_count();
    let mut out = d.disjoint_union(&m);
    for (i, &(_, s, _)) in ordered.iter().enumerate() {
        let (_, a, _) = partner(i);
        out = out.splice_heads(s, a + offset)?;
    }
    Ok(CnMove {
        patch: (base..out.crossing_count()).collect(),
        diagram: out,
    })
}

/// Undoes a move by letting all strands pass straight through the patch.
pub fn cn_move_inverse(moved: &CnMove) -> Result<SingularLinkDiagram> {
    moved.diagram.pass_through(&moved.patch)
}

/// Sets of `n + 1` arcs on a common face, in a deterministic order.
pub fn candidate_sites(d: &SingularLinkDiagram, n: u32) -> Vec<Vec<ArcLabel>> {
    let k = n as usize + 1;
    let mut out = Vec::new();
    for f in d.faces() {
        let arcs = f.distinct_arcs();
        if arcs.len() < k {
            continue;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.iter().map(|&i| arcs[i]).collect());
            // next k-subset in lexicographic order
            let Some(pos) = (0..k).rev().find(|&p| idx[p] < arcs.len() - k + p) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
