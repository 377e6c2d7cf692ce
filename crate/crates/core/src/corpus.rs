//! Deterministic builders for named links and the colored-type-2 witness
//! family.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{CrossingKind, Resolution, SingularLinkDiagram};
use crate::error::{Error, Result};
use crate::morse::{MorseProgram, Op, Over, Pattern};

/// Names accepted by [`build`].
pub const NAMES: &[&str] = &[
    "unknot",
    "unlink",
    "hopf",
    "trefoil",
    "figure8",
    "whitehead",
    "milnor",
    "borromean",
    "ctype2",
];

const MAX_ITERATION: i64 = 6;

/// How an expected value in a corpus entry is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Forced by the defining axioms or an elementary count.
    Axiom,
    /// Closed-form expression evaluated on the parameters.
    ClosedForm,
    /// Checked against an independent computation in the test suite.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub quantity: String,
    pub value: String,
    pub basis: Basis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub params: Vec<i64>,
    pub pd: String,
    pub expected: Vec<Expectation>,
}

fn expect(quantity: &str, value: impl ToString, basis: Basis) -> Expectation {
    Expectation {
        quantity: quantity.to_string(),
        value: value.to_string(),
        basis,
    }
}

fn closure(strands: usize, word: &[i32]) -> SingularLinkDiagram {
    MorseProgram::braid_closure(strands, word)
        .and_then(|p| p.build(&[]))
        .expect("braid closure of a valid word")
        .diagram
}

pub fn unknot() -> SingularLinkDiagram {
    SingularLinkDiagram::unlink(1).expect("one circle")
}

pub fn unlink(m: usize) -> Result<SingularLinkDiagram> {
    if !(1..=16).contains(&m) {
        return Err(Error::ParamOutOfRange(format!(
            "unlink needs 1..=16 components, got {m}"
        )));
    }
    SingularLinkDiagram::unlink(m)
}

/// Hopf link with linking number `sign`.
pub fn hopf(sign: i64) -> Result<SingularLinkDiagram> {
    match sign {
        1 => Ok(closure(2, &[1, 1])),
        -1 => Ok(closure(2, &[-1, -1])),
        _ => Err(Error::ParamOutOfRange(format!(
            "hopf sign must be +1 or -1, got {sign}"
        ))),
    }
}

pub fn trefoil() -> SingularLinkDiagram {
    closure(2, &[1, 1, 1])
}

pub fn figure8() -> SingularLinkDiagram {
    closure(3, &[1, -2, 1, -2])
}

pub fn borromean() -> SingularLinkDiagram {
    closure(3, &[1, -2, 1, -2, 1, -2])
}

fn hopf_program() -> MorseProgram {
    MorseProgram::braid_closure(2, &[1, 1]).expect("valid word")
}

fn check_iteration(what: &str, n: i64) -> Result<usize> {
    if (1..=MAX_ITERATION).contains(&n) {
        Ok(n as usize)
    } else {
        Err(Error::ParamOutOfRange(format!(
            "{what} needs 1..={MAX_ITERATION}, got {n}"
        )))
    }
}

/// `n`-fold iterated untwisted Whitehead double of the second component of
/// the positive Hopf link, with negative (left-handed) clasps.
pub fn whitehead(n: i64) -> Result<SingularLinkDiagram> {
    let n = check_iteration("whitehead", n)?;
    let mut program = hopf_program();
    let mut comp = 1;
    for _ in 0..n {
        let mut chosen = None;
        for o in [Over::Left, Over::Right] {
            let (p, markers) = program.double(comp, Pattern::Whitehead(o))?;
            let built = p.build(&[])?;
            let clasp = built.crossing_of_op[markers[0] + 1].expect("clasp crossing");
            if built.diagram.crossings()[clasp].kind == CrossingKind::Negative {
                comp = built.op_components[markers[0]][0];
                chosen = Some(p);
                break;
            }
        }
        program = chosen.ok_or_else(|| Error::InternalMismatch("no left-handed clasp".into()))?;
    }
    Ok(program.build(&[])?.diagram)
}

/// Morse program of a `k`-component Brunnian link: the Hopf link Bing
/// doubled `k - 2` times, component `j` at step `j`. Up to five components
/// this order leaves a face touching every component.
pub fn brunnian_program(k: usize) -> Result<MorseProgram> {
    if !(2..=8).contains(&k) {
        return Err(Error::ParamOutOfRange(format!(
            "brunnian link needs 2..=8 components, got {k}"
        )));
    }
    let mut program = hopf_program();
    for j in 0..k - 2 {
        program = program.double(j, Pattern::Bing)?.0;
    }
    Ok(program)
}

pub fn brunnian(k: usize) -> Result<SingularLinkDiagram> {
    Ok(brunnian_program(k)?.build(&[])?.diagram)
}

/// Two-component link `(K, Q)`: the `(n + 2)`-component Brunnian link with
/// every component except its first one `Q` fused into one by planar bands.
/// `K` comes first.
pub fn milnor(n: i64) -> Result<SingularLinkDiagram> {
    let n = check_iteration("milnor", n)?;
    let built = brunnian_program(n + 2)?.build(&[])?;
    let q_arc = built.diagram.arc_components()[0][0];
    let mut d = built.diagram;
    while d.component_count() > 2 {
        let q = d.component_of_arc(q_arc);
        let mut band = None;
        'faces: for face in d.faces() {
            for (i, &(a, fa)) in face.boundary.iter().enumerate() {
                let ca = d.component_of_arc(a);
                if ca == q {
                    continue;
                }
                for &(b, fb) in &face.boundary[i + 1..] {
                    let cb = d.component_of_arc(b);
                    if cb != q && cb != ca {
                        band = Some((a, b, cb, fa == fb));
                        break 'faces;
                    }
                }
            }
        }
        let (a, b, cb, compatible) =
            band.ok_or_else(|| Error::InternalMismatch("no face joins two chain components".into()))?;
        if !compatible {
            d = d.reverse_component(cb)?;
        }
        d = d.splice_heads(a, b)?;
    }
    let q = d.component_of_arc(q_arc);
    if q == 0 {
        d = d.reorder_components(&[1, 0])?;
    }
    Ok(d)
}

/// Two-component singular link: the first component is the closure of the
/// 2-strand braid with three double points (a doubled circle bounding
/// regions A, B, C between the double points and the central region D);
/// the second links the boundaries of A, B, C, D `a`, `b`, `c`, `d` times.
pub fn ctype2_family(a: i64, b: i64, c: i64, d: i64) -> Result<SingularLinkDiagram> {
    if a + b + c + 2 * d != 0 {
        return Err(Error::ConstraintViolated(format!(
            "a + b + c + 2d = {} (must be 0)",
            a + b + c + 2 * d
        )));
    }
    if [a, b, c, d].iter().any(|x| x.abs() > 32) {
        return Err(Error::ParamOutOfRange("parameters must lie in -32..=32".into()));
    }
    fn twists(ops: &mut Vec<Op>, i: usize, count: i64) {
        let o = if count > 0 { Over::Left } else { Over::Right };
        for _ in 0..count.unsigned_abs() {
            ops.push(Op::Cross(i, o));
            ops.push(Op::Cross(i, o));
        }
    }
    // row: second component at 0,1; braid strands at 2,3; closure at 4,5
    let mut ops = vec![Op::Cup(0), Op::Cup(2), Op::Cup(3)];
    twists(&mut ops, 1, c);
    ops.push(Op::Cross(2, Over::Singular));
    twists(&mut ops, 1, a + d);
    ops.push(Op::Cross(1, Over::Left));
    twists(&mut ops, 2, d);
    ops.push(Op::Cross(1, Over::Right));
    ops.push(Op::Cross(2, Over::Singular));
    twists(&mut ops, 1, b);
    ops.push(Op::Cross(2, Over::Singular));
    ops.extend([Op::Cap(3), Op::Cap(2), Op::Cap(0)]);
    let built = MorseProgram::new(ops).build(&[])?;
    let second = built.op_components[0][0];
    let diagram = if second == 0 {
        built.diagram.reorder_components(&[1, 0])?
    } else {
        built.diagram
    };
    verify_ctype2(&diagram, [a, b, c, d])?;
    Ok(diagram)
}

/// Smooths the given crossings (indices in `d`) and returns the result with
/// the new label of arc `track`.
fn smooth_tracking(d: &SingularLinkDiagram, xs: &[usize], track: u32) -> Result<(SingularLinkDiagram, u32)> {
    let mut xs = xs.to_vec();
    xs.sort_unstable();
    let mut cur = d.clone();
    let mut label = track;
    for &x in xs.iter().rev() {
        let (next, map) = cur.smooth_with_map(x)?;
        label = map[label as usize].ok_or_else(|| Error::InternalMismatch("tracked arc vanished".into()))?;
        cur = next;
    }
    Ok((cur, label))
}

/// Linking numbers of the second component with the pieces of the first
/// after smoothing `xs` and resolving the other double points positively.
fn lobe_linking(d: &SingularLinkDiagram, xs: &[usize]) -> Result<(Vec<i64>, Vec<i64>)> {
    let mut resolved = d.clone();
    for x in d.singular_crossings() {
        if !xs.contains(&x) {
            resolved = resolved.resolve(x, Resolution::Positive)?;
        }
    }
    let track = d.arc_components()[1][0];
    let (s, label) = smooth_tracking(&resolved, xs, track)?;
    let second = s.component_of_arc(label);
    let lm = s.linking_matrix()?;
    let others: Vec<usize> = (0..s.component_count()).filter(|&i| i != second).collect();
    let with_second = others.iter().map(|&i| lm.get(i, second)).collect();
    let among = others
        .iter()
        .enumerate()
        .flat_map(|(k, &i)| others[k + 1..].iter().map(move |&j| (i, j)))
        .map(|(i, j)| lm.get(i, j))
        .collect();
    Ok((with_second, among))
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v
}

fn verify_ctype2(diagram: &SingularLinkDiagram, [a, b, c, d]: [i64; 4]) -> Result<()> {
    let fail = |what: String| Err(Error::InternalMismatch(format!("ctype2 template: {what}")));
    let xs = diagram.singular_crossings();
    if diagram.component_count() != 2
        || xs.len() != 3
        || xs.iter().any(|&x| diagram.crossing_components(x) != (0, 0))
    {
        return fail("expected two components and three self double points on the first".into());
    }
    if diagram.linking_matrix()?.get(0, 1) != 0 {
        return fail("nonzero linking number".into());
    }
    let (all, among) = lobe_linking(diagram, &xs)?;
    let expected = [d, a + b + c + d];
    let sign = if sorted(all.clone()) == sorted(expected.to_vec()) {
        1
    } else if sorted(all.clone()) == sorted(expected.iter().map(|x| -x).collect()) {
        -1
    } else {
        return fail(format!(
            "all-smoothed linking numbers {all:?}, expected ±{expected:?}"
        ));
    };
    if among != [0] {
        return fail(format!("smoothed circles link each other: {among:?}"));
    }
    let mut singles: Vec<Vec<i64>> = Vec::new();
    for &x in &xs {
        let (with_second, among) = lobe_linking(diagram, &[x])?;
        if among.len() != 1 || among[0].abs() != 1 {
            return fail(format!("lobes at crossing {x} link {among:?}"));
        }
        singles.push(sorted(with_second.iter().map(|l| sign * l).collect()));
    }
    let s = a + b + c + d;
    let mut expected: Vec<Vec<i64>> = [a, b, c].iter().map(|&z| sorted(vec![s - z, z + d])).collect();
    expected.sort();
    singles.sort();
    if singles != expected {
        return fail(format!(
            "single smoothings give {singles:?}, expected {expected:?}"
        ));
    }
    Ok(())
}

/// `(a+b+c+d)d + (a+d)^2 + (b+d)^2 + (c+d)^2`.
pub fn ctype2_closed_form(a: i64, b: i64, c: i64, d: i64) -> i64 {
    (a + b + c + d) * d + (a + d).pow(2) + (b + d).pow(2) + (c + d).pow(2)
}

fn param(params: &[i64], i: usize, default: i64) -> i64 {
    params.get(i).copied().unwrap_or(default)
}

fn arity(name: &str, params: &[i64], max: usize) -> Result<()> {
    if params.len() > max {
        return Err(Error::ParamOutOfRange(format!(
            "{name} takes at most {max} parameters, got {}",
            params.len()
        )));
    }
    Ok(())
}

/// Builds a named corpus diagram. Parameters: `unlink(m)`, `hopf(sign)`,
/// `whitehead(n)`, `milnor(n)`, `ctype2(a, b, c, d)`; the others take none.
pub fn build(name: &str, params: &[i64]) -> Result<SingularLinkDiagram> {
    match name {
        "unknot" => arity(name, params, 0).map(|_| unknot()),
        "unlink" => {
            arity(name, params, 1)?;
            let m = param(params, 0, 2);
            unlink(usize::try_from(m).map_err(|_| Error::ParamOutOfRange(format!("unlink {m}")))?)
        }
        "hopf" => {
            arity(name, params, 1)?;
            hopf(param(params, 0, 1))
        }
        "trefoil" => arity(name, params, 0).map(|_| trefoil()),
        "figure8" => arity(name, params, 0).map(|_| figure8()),
        "borromean" => arity(name, params, 0).map(|_| borromean()),
        "whitehead" => {
            arity(name, params, 1)?;
            whitehead(param(params, 0, 1))
        }
        "milnor" => {
            arity(name, params, 1)?;
            milnor(param(params, 0, 1))
        }
        "ctype2" => match params {
            [a, b, c, d] => ctype2_family(*a, *b, *c, *d),
            _ => Err(Error::ParamOutOfRange("ctype2 takes exactly 4 parameters".into())),
        },
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Corpus entry with its PD string and the values it is known to have.
pub fn entry(name: &str, params: &[i64]) -> Result<CorpusEntry> {
    let d = build(name, params)?;
    let m = d.component_count();
    let mut expected = vec![expect("components", m, Basis::Axiom)];
    match name {
        "unknot" => expected.push(expect("conway", "1", Basis::Axiom)),
        "unlink" if m > 1 => expected.push(expect("conway", "0", Basis::Axiom)),
        "unlink" => expected.push(expect("conway", "1", Basis::Axiom)),
        "hopf" => {
            let s = param(params, 0, 1);
            expected.push(expect("lk", s, Basis::Oracle));
            expected.push(expect("conway", if s > 0 { "z" } else { "-z" }, Basis::Oracle));
        }
        "trefoil" => expected.push(expect("conway", "1 + z^2", Basis::Oracle)),
        "figure8" => expected.push(expect("conway", "1 - z^2", Basis::Oracle)),
        "borromean" => expected.push(expect("lk", 0, Basis::Oracle)),
        "whitehead" | "milnor" => expected.push(expect("lk", 0, Basis::Oracle)),
        "ctype2" => {
            let p: Vec<i64> = params.to_vec();
            expected.push(expect("lk", 0, Basis::Axiom));
            expected.push(expect(
                "alpha2_extension",
                ctype2_closed_form(p[0], p[1], p[2], p[3]),
                Basis::ClosedForm,
            ));
        }
        _ => {}
    }
    Ok(CorpusEntry {
        name: name.to_string(),
        params: params.to_vec(),
        pd: d.to_pd(),
        expected,
    })
}

/// Small named links used as a default test population.
pub fn standard_links() -> BTreeMap<&'static str, SingularLinkDiagram> {
    BTreeMap::from([
        ("unknot", unknot()),
        ("unlink2", SingularLinkDiagram::unlink(2).expect("two circles")),
        ("hopf+", hopf(1).expect("hopf")),
        ("hopf-", hopf(-1).expect("hopf")),
        ("trefoil", trefoil()),
        ("figure8", figure8()),
        ("borromean", borromean()),
        ("whitehead1", whitehead(1).expect("whitehead")),
    ])
}
