//! Exact verification of the Hopf, ribbon and integral identities on sampled labels.
//!
//! Each identity is evaluated on basis vectors, which suffices since both sides are
//! multilinear. Label tuples are enumerated when few enough, otherwise sampled with a
//! seeded generator after a fixed set of structured cases.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::{drinfeld_map, AlgElem, FactorizableHopfG, HopfGAlgebra, Tensor};
use crate::error::{Error, Result};
use crate::label::Label;
use crate::scalar::CycScalar;

/// A computed side of an identity.
#[derive(Clone, Debug)]
pub enum Val {
    Scalar(CycScalar),
    Elem(AlgElem),
    Tensor(Tensor),
    List(Vec<Val>),
}

pub fn scalar_json(c: &CycScalar) -> Value {
    let z = c.to_complex();
    let coeffs: Vec<String> = c.coefficients().iter().map(|q| q.to_string()).collect();
    json!({ "exact": c.to_exact_string(), "coeffs": coeffs, "re": z.0, "im": z.1 })
}

pub fn elem_json<H: HopfGAlgebra + ?Sized>(h: &H, x: &AlgElem) -> Value {
    let terms: serde_json::Map<String, Value> =
        x.coeffs.iter().map(|(i, c)| (h.basis_name(*i), scalar_json(c))).collect();
    json!({ "lower": x.lower, "upper": x.upper, "terms": terms })
}

pub fn tensor_json<H: HopfGAlgebra + ?Sized>(h: &H, t: &Tensor) -> Value {
    let terms: serde_json::Map<String, Value> = t
        .coeffs
        .iter()
        .map(|(i, c)| (i.iter().map(|k| h.basis_name(*k)).collect::<Vec<_>>().join(" (x) "), scalar_json(c)))
        .collect();
    let pieces: Vec<Value> = t.pieces.iter().map(|(l, u)| json!([l, u])).collect();
    json!({ "pieces": pieces, "terms": terms })
}

fn val_json<H: HopfGAlgebra + ?Sized>(h: &H, v: &Val) -> Value {
    match v {
        Val::Scalar(c) => scalar_json(c),
        Val::Elem(x) => elem_json(h, x),
        Val::Tensor(t) => tensor_json(h, t),
        Val::List(vs) => Value::Array(vs.iter().map(|v| val_json(h, v)).collect()),
    }
}

fn val_eq<H: HopfGAlgebra + ?Sized>(h: &H, a: &Val, b: &Val) -> Result<bool> {
    Ok(match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => x == y,
        (Val::Elem(x), Val::Elem(y)) => h.elem_eq(x, y)?,
        (Val::Tensor(x), Val::Tensor(y)) => h.tensor_eq(x, y)?,
        (Val::List(xs), Val::List(ys)) => {
            if xs.len() != ys.len() {
                return Ok(false);
            }
            for (x, y) in xs.iter().zip(ys) {
                if !val_eq(h, x, y)? {
                    return Ok(false);
                }
            }
            true
        }
        _ => false,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub axiom: String,
    pub labels: Vec<Label>,
    pub witness: Vec<String>,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub cases: usize,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub results: Vec<AxiomResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }

    pub fn extend(&mut self, other: Report) {
        self.results.extend(other.results);
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    /// Label pool; tuples are drawn from it.
    pub labels: Vec<Label>,
    /// Cap on label tuples per identity.
    pub max_label_tuples: usize,
    /// Cap on basis tuples per label tuple; below it the enumeration is exhaustive.
    pub max_basis_tuples: usize,
    pub seed: u64,
    /// Failures kept per identity.
    pub keep_failures: usize,
}

impl CheckConfig {
    pub fn new(labels: Vec<Label>) -> Self {
        CheckConfig { labels, max_label_tuples: 16, max_basis_tuples: usize::MAX, seed: 0, keep_failures: 3 }
    }
}

fn cartesian(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v| (0..n).map(move |i| [v.clone(), vec![i]].concat())).collect();
    }
    out
}

/// Label tuples of length `k`: all of them if at most `max`, else structured cases
/// followed by seeded random tuples.
pub fn label_tuples(pool: &[Label], k: usize, max: usize, seed: u64) -> Vec<Vec<Label>> {
    let total = pool.len().checked_pow(k as u32).unwrap_or(usize::MAX);
    if total <= max {
        return cartesian(pool.len(), k).into_iter().map(|ix| ix.iter().map(|i| pool[*i]).collect()).collect();
    }
    let mut out: Vec<Vec<Label>> = Vec::new();
    let push = |t: Vec<Label>, out: &mut Vec<Vec<Label>>| {
        if out.len() < max && !out.contains(&t) {
            out.push(t);
        }
    };
    push(vec![Label::ZERO; k], &mut out);
    for a in pool.iter().skip(1).take(2) {
        push(vec![*a; k], &mut out);
        let alt: Vec<Label> = (0..k).map(|i| if i % 2 == 0 { *a } else { -*a }).collect();
        push(alt, &mut out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9));
    let mut guard = 0;
    while out.len() < max && guard < 100 * max {
        let t: Vec<Label> = (0..k).map(|_| *pool.choose(&mut rng).expect("nonempty pool")).collect();
        push(t, &mut out);
        guard += 1;
    }
    out
}

fn basis_tuples(dim: usize, k: usize, max: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let total = dim.checked_pow(k as u32).unwrap_or(usize::MAX);
    if total <= max {
        return cartesian(dim, k);
    }
    use rand::Rng;
    (0..max).map(|_| (0..k).map(|_| rng.gen_range(0..dim)).collect()).collect()
}

type Case<'a, H> = Box<dyn Fn(&H, &[Label], &[usize]) -> Result<(Val, Val)> + 'a>;

/// One identity: `(name, label arity, basis arity, evaluator)`.
pub struct Identity<'a, H: ?Sized> {
    pub name: &'static str,
    pub labels: usize,
    pub basis: usize,
    pub eval: Case<'a, H>,
}

fn ident<'a, H: ?Sized, F>(name: &'static str, labels: usize, basis: usize, f: F) -> Identity<'a, H>
where
    F: Fn(&H, &[Label], &[usize]) -> Result<(Val, Val)> + 'a,
{
    Identity { name, labels, basis, eval: Box::new(f) }
}

pub fn run<H: HopfGAlgebra + ?Sized>(h: &H, ids: &[Identity<'_, H>], cfg: &CheckConfig) -> Report {
    let mut report = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for id in ids {
        let mut res = AxiomResult { axiom: id.name.to_string(), cases: 0, passed: true, failures: Vec::new() };
        for labels in label_tuples(&cfg.labels, id.labels, cfg.max_label_tuples, cfg.seed) {
            for b in basis_tuples(h.dim(), id.basis, cfg.max_basis_tuples, &mut rng) {
                res.cases += 1;
                let (ok, lhs, rhs) = match (id.eval)(h, &labels, &b) {
                    Ok((l, r)) => match val_eq(h, &l, &r) {
                        Ok(true) => (true, Value::Null, Value::Null),
                        Ok(false) => (false, val_json(h, &l), val_json(h, &r)),
                        Err(e) => (false, json!({ "error": e.to_string() }), Value::Null),
                    },
                    Err(e) => (false, json!({ "error": e.to_string() }), Value::Null),
                };
                if !ok {
                    res.passed = false;
                    if res.failures.len() < cfg.keep_failures {
                        res.failures.push(Failure {
                            axiom: id.name.to_string(),
                            labels: labels.clone(),
                            witness: b.iter().map(|i| h.basis_name(*i)).collect(),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        report.results.push(res);
    }
    report
}

/// Multiplies the two slots of a rank-2 tensor with equal lower labels.
pub fn mul_slots<H: HopfGAlgebra + ?Sized>(h: &H, t: &Tensor) -> Result<AlgElem> {
    let (p, q) = (t.pieces[0], t.pieces[1]);
    if p.0 != q.0 {
        return Err(Error::Grading(format!("multiplying slots of lower labels {} and {}", p.0, q.0)));
    }
    let mut out = AlgElem::zero(p.0, p.1 + q.1);
    for (i, c) in &t.coeffs {
        out.add_scaled(&h.mul_basis(p.0, p.1, i[0], q.1, i[1])?, c);
    }
    Ok(out)
}

fn pair(a: &AlgElem, b: &AlgElem) -> Tensor {
    Tensor::from_elem(a).otimes(&Tensor::from_elem(b))
}

/// Rank-3 tensor with `t` in slots `(i, j)` and units elsewhere.
fn embed3<H: HopfGAlgebra + ?Sized>(h: &H, t: &Tensor, slots: (usize, usize), lowers: [Label; 3]) -> Tensor {
    let k = 3 - slots.0 - slots.1;
    let full = t.otimes(&Tensor::from_elem(&h.unit(lowers[k])));
    let mut perm = [0usize; 3];
    perm[slots.0] = 0;
    perm[slots.1] = 1;
    perm[k] = 2;
    full.permute(&perm)
}

fn integral_slot<H: FactorizableHopfG + ?Sized>(h: &H, t: &Tensor, k: usize) -> Result<Tensor> {
    let l = t.pieces[k].0;
    t.map_slot(k, |i| Ok(Tensor::scalar(h.integral_basis(l, i)?)))
}

fn s2<H: HopfGAlgebra + ?Sized>(h: &H, x: &AlgElem) -> Result<AlgElem> {
    h.antipode(&h.antipode(x)?)
}

/// Identities of a Hopf G-bialgebra.
pub fn hopf_identities<'a, H: HopfGAlgebra + ?Sized>() -> Vec<Identity<'a, H>> {
    vec![
        ident("H1", 4, 3, |h: &H, l, b| {
            let (x, y, z) = (h.basis(l[0], l[1], b[0]), h.basis(l[0], l[2], b[1]), h.basis(l[0], l[3], b[2]));
            let lhs = h.product(&h.product(&x, &y)?, &z)?;
            let rhs = h.product(&x, &h.product(&y, &z)?)?;
            Ok((Val::Elem(lhs), Val::Elem(rhs)))
        }),
        ident("H2", 2, 1, |h: &H, l, b| {
            let x = h.basis(l[0], l[1], b[0]);
            let one = h.unit(l[0]);
            let lhs = vec![Val::Elem(h.product(&one, &x)?), Val::Elem(h.product(&x, &one)?)];
            Ok((Val::List(lhs), Val::List(vec![Val::Elem(x.clone()), Val::Elem(x)])))
        }),
        ident("H3", 4, 1, |h: &H, l, b| {
            let x = h.basis(l[0] + l[1] + l[2], l[3], b[0]);
            let lhs = h.coproduct_slot(&h.coproduct(&x, l[0] + l[1], l[2])?, 0, l[0], l[1])?;
            let rhs = h.coproduct_slot(&h.coproduct(&x, l[0], l[1] + l[2])?, 1, l[1], l[2])?;
            Ok((Val::Tensor(lhs), Val::Tensor(rhs)))
        }),
        ident("H4", 2, 1, |h: &H, l, b| {
            let x = h.basis(l[0], l[1], b[0]);
            let a = h.counit_slot(&h.coproduct(&x, Label::ZERO, l[0])?, 0)?.to_elem();
            let c = h.counit_slot(&h.coproduct(&x, l[0], Label::ZERO)?, 1)?.to_elem();
            Ok((Val::List(vec![Val::Elem(a), Val::Elem(c)]), Val::List(vec![Val::Elem(x.clone()), Val::Elem(x)])))
        }),
        ident("H5", 4, 2, |h: &H, l, b| {
            let x = h.basis(l[0] + l[1], l[2], b[0]);
            let y = h.basis(l[0] + l[1], l[3], b[1]);
            let lhs = h.coproduct(&h.product(&x, &y)?, l[0], l[1])?;
            let rhs = h.tensor_product(&h.coproduct(&x, l[0], l[1])?, &h.coproduct(&y, l[0], l[1])?)?;
            Ok((Val::Tensor(lhs), Val::Tensor(rhs)))
        }),
        ident("H6", 2, 2, |h: &H, l, b| {
            let x = h.basis(Label::ZERO, l[0], b[0]);
            let y = h.basis(Label::ZERO, l[1], b[1]);
            Ok((Val::Scalar(h.counit(&h.product(&x, &y)?)?), Val::Scalar(h.counit(&x)? * h.counit(&y)?)))
        }),
        ident("H7", 2, 0, |h: &H, l, _| {
            let lhs = h.coproduct(&h.unit(l[0] + l[1]), l[0], l[1])?;
            Ok((Val::Tensor(lhs), Val::Tensor(pair(&h.unit(l[0]), &h.unit(l[1])))))
        }),
        ident("H8", 0, 0, |h: &H, _, _| Ok((Val::Scalar(h.counit(&h.unit(Label::ZERO))?), Val::Scalar(h.one())))),
        ident("H9", 2, 1, |h: &H, l, b| {
            let (a, x) = (l[0], h.basis(Label::ZERO, l[1], b[0]));
            let left = mul_slots(h, &h.antipode_slot(&h.coproduct(&x, -a, a)?, 0)?)?;
            let right = mul_slots(h, &h.antipode_slot(&h.coproduct(&x, a, -a)?, 1)?)?;
            let e = h.unit(a).scale(&h.counit(&x)?);
            Ok((Val::List(vec![Val::Elem(left), Val::Elem(right)]), Val::List(vec![Val::Elem(e.clone()), Val::Elem(e)])))
        }),
    ]
}

/// Consequences of the antipode axioms.
pub fn derived_hopf_identities<'a, H: HopfGAlgebra + ?Sized>() -> Vec<Identity<'a, H>> {
    vec![
        ident("H10", 3, 2, |h: &H, l, b| {
            let (x, y) = (h.basis(l[0], l[1], b[0]), h.basis(l[0], l[2], b[1]));
            let lhs = h.antipode(&h.product(&x, &y)?)?;
            let rhs = h.product(&h.antipode(&y)?, &h.antipode(&x)?)?;
            Ok((Val::Elem(lhs), Val::Elem(rhs)))
        }),
        ident("H11", 1, 0, |h: &H, l, _| Ok((Val::Elem(h.antipode(&h.unit(l[0]))?), Val::Elem(h.unit(-l[0]))))),
        ident("H12", 3, 1, |h: &H, l, b| {
            let z = h.basis(l[0] + l[1], l[2], b[0]);
            let lhs = h.coproduct(&h.antipode(&z)?, -l[0], -l[1])?;
            let d = h.coproduct(&z, l[1], l[0])?;
            let rhs = h.antipode_slot(&h.antipode_slot(&d, 0)?, 1)?.permute(&[1, 0]);
            Ok((Val::Tensor(lhs), Val::Tensor(rhs)))
        }),
        ident("H13", 1, 1, |h: &H, l, b| {
            let w = h.basis(Label::ZERO, l[0], b[0]);
            Ok((Val::Scalar(h.counit(&h.antipode(&w)?)?), Val::Scalar(h.counit(&w)?)))
        }),
    ]
}

/// Axioms of the ribbon structure, with centrality and invertibility of `v`.
pub fn ribbon_identities<'a, H: FactorizableHopfG + ?Sized>() -> Vec<Identity<'a, H>> {
    vec![
        ident("R1", 3, 1, |h: &H, l, b| {
            let (a, c) = (l[0], l[1]);
            let x = h.basis(a + c, l[2], b[0]);
            let r = h.r_matrix(a, c)?;
            let lhs = h.tensor_product(&r, &h.coproduct(&x, a, c)?)?;
            let rhs = h.tensor_product(&h.coproduct(&x, c, a)?.permute(&[1, 0]), &r)?;
            Ok((Val::Tensor(lhs), Val::Tensor(rhs)))
        }),
        ident("R2", 3, 0, |h: &H, l, _| {
            let (a, b, c) = (l[0], l[1], l[2]);
            let lhs = h.coproduct_slot(&h.r_matrix(a, b + c)?, 1, b, c)?;
            let rj = embed3(h, &h.r_matrix(a, c)?, (0, 2), [a, b, c]);
            let rk = embed3(h, &h.r_matrix(a, b)?, (0, 1), [a, b, c]);
            Ok((Val::Tensor(lhs), Val::Tensor(h.tensor_product(&rj, &rk)?)))
        }),
        ident("R3", 3, 0, |h: &H, l, _| {
            let (a, b, c) = (l[0], l[1], l[2]);
            let lhs = h.coproduct_slot(&h.r_matrix(a + b, c)?, 0, a, b)?;
            let rj = embed3(h, &h.r_matrix(a, c)?, (0, 2), [a, b, c]);
            let rk = embed3(h, &h.r_matrix(b, c)?, (1, 2), [a, b, c]);
            Ok((Val::Tensor(lhs), Val::Tensor(h.tensor_product(&rj, &rk)?)))
        }),
        ident("R4", 1, 0, |h: &H, l, _| {
            let a = l[0];
            let v = h.ribbon(a)?;
            let rhs = h.product(&h.drinfeld_u(a)?, &h.antipode(&h.drinfeld_u(-a)?)?)?;
            Ok((Val::Elem(h.product(&v, &v)?), Val::Elem(rhs)))
        }),
        ident("R5", 2, 0, |h: &H, l, _| {
            let (a, b) = (l[0], l[1]);
            let lhs = h.coproduct(&h.ribbon(a + b)?, a, b)?;
            let x = h.antipode_slot(&h.r_matrix(-a, b)?, 0)?;
            let y = h.antipode_slot(&h.r_matrix(-b, a)?, 0)?.permute(&[1, 0]);
            let vv = pair(&h.ribbon(a)?, &h.ribbon(b)?);
            let rhs = h.tensor_product(&h.tensor_product(&vv, &x)?, &y)?;
            Ok((Val::Tensor(lhs), Val::Tensor(rhs)))
        }),
        ident("R6", 0, 0, |h: &H, _, _| Ok((Val::Scalar(h.counit(&h.ribbon(Label::ZERO)?)?), Val::Scalar(h.one())))),
        ident("R7", 1, 0, |h: &H, l, _| Ok((Val::Elem(h.antipode(&h.ribbon(l[0])?)?), Val::Elem(h.ribbon(-l[0])?)))),
        ident("ribbon-central", 2, 1, |h: &H, l, b| {
            let (v, x) = (h.ribbon(l[0])?, h.basis(l[0], l[1], b[0]));
            Ok((Val::Elem(h.product(&v, &x)?), Val::Elem(h.product(&x, &v)?)))
        }),
        ident("ribbon-invertible", 1, 0, |h: &H, l, _| {
            let (v, w) = (h.ribbon(l[0])?, h.ribbon_inv(l[0])?);
            let one = Val::Elem(h.unit(l[0]));
            Ok((Val::List(vec![Val::Elem(h.product(&v, &w)?), Val::Elem(h.product(&w, &v)?)]), Val::List(vec![one.clone(), one])))
        }),
    ]
}

/// Consequences of the ribbon axioms.
pub fn derived_ribbon_identities<'a, H: FactorizableHopfG + ?Sized>() -> Vec<Identity<'a, H>> {
    vec![
        ident("R8", 3, 0, |h: &H, l, _| {
            let (a, b, c) = (l[0], l[1], l[2]);
            let r12 = embed3(h, &h.r_matrix(a, b)?, (0, 1), [a, b, c]);
            let r13 = embed3(h, &h.r_matrix(a, c)?, (0, 2), [a, b, c]);
            let r23 = embed3(h, &h.r_matrix(b, c)?, (1, 2), [a, b, c]);
            let lhs = h.tensor_product(&h.tensor_product(&r12, &r13)?, &r23)?;
            let rhs = h.tensor_product(&h.tensor_product(&r23, &r13)?, &r12)?;
            Ok((Val::Tensor(lhs), Val::Tensor(rhs)))
        }),
        ident("R9", 1, 0, |h: &H, l, _| {
            let a = l[0];
            let x = h.counit_slot(&h.r_matrix(a, Label::ZERO)?, 1)?.to_elem();
            let y = h.counit_slot(&h.r_matrix(Label::ZERO, a)?, 0)?.to_elem();
            let one = Val::Elem(h.unit(a));
            Ok((Val::List(vec![Val::Elem(x), Val::Elem(y)]), Val::List(vec![one.clone(), one])))
        }),
        ident("R10", 2, 0, |h: &H, l, _| {
            let (a, b) = (l[0], l[1]);
            let r = h.r_matrix(a, b)?;
            let x = h.antipode_slot(&h.r_matrix(-a, b)?, 0)?;
            let y = h.antipode_inv_slot(&h.r_matrix(a, -b)?, 1)?;
            let one = Val::Tensor(pair(&h.unit(a), &h.unit(b)));
            let lhs = vec![
                Val::Tensor(h.tensor_product(&r, &x)?),
                Val::Tensor(h.tensor_product(&x, &r)?),
                Val::Tensor(y),
                Val::Tensor(h.r_matrix_inv(a, b)?),
            ];
            Ok((Val::List(lhs), Val::List(vec![one.clone(), one, Val::Tensor(x.clone()), Val::Tensor(x)])))
        }),
        ident("R11", 2, 0, |h: &H, l, _| {
            let r = h.r_matrix(l[0], l[1])?;
            let lhs = h.antipode_slot(&h.antipode_slot(&r, 0)?, 1)?;
            Ok((Val::Tensor(lhs), Val::Tensor(h.r_matrix(-l[0], -l[1])?)))
        }),
        ident("R12", 1, 0, |h: &H, l, _| {
            let a = l[0];
            let r = h.r_matrix(a, a)?;
            // u^-1 = R''_i S(S(R'_i)); the legs in the other order do not give u^-1
            let lhs = mul_slots(h, &h.antipode_slot(&h.antipode_slot(&r, 0)?, 0)?.permute(&[1, 0]))?;
            let ui = h.drinfeld_u_inv(a)?;
            let prod = h.product(&h.drinfeld_u(a)?, &ui)?;
            Ok((Val::List(vec![Val::Elem(lhs), Val::Elem(prod)]), Val::List(vec![Val::Elem(ui), Val::Elem(h.unit(a))])))
        }),
        ident("R13", 2, 1, |h: &H, l, b| {
            let x = h.basis(l[0], l[1], b[0]);
            let lhs = h.product_all(&[&h.drinfeld_u(l[0])?, &x, &h.drinfeld_u_inv(l[0])?])?;
            Ok((Val::Elem(lhs), Val::Elem(s2(h, &x)?)))
        }),
        ident("R14", 2, 0, |h: &H, l, _| {
            let lhs = h.coproduct(&h.pivotal(l[0] + l[1])?, l[0], l[1])?;
            Ok((Val::Tensor(lhs), Val::Tensor(pair(&h.pivotal(l[0])?, &h.pivotal(l[1])?))))
        }),
        ident("R15", 0, 0, |h: &H, _, _| Ok((Val::Scalar(h.counit(&h.pivotal(Label::ZERO)?)?), Val::Scalar(h.one())))),
        ident("R16", 2, 1, |h: &H, l, b| {
            let x = h.basis(l[0], l[1], b[0]);
            let lhs = h.product_all(&[&h.pivotal(l[0])?, &x, &h.pivotal_inv(l[0])?])?;
            Ok((Val::Elem(lhs), Val::Elem(s2(h, &x)?)))
        }),
    ]
}

/// Axioms of the integral and cointegral.
pub fn integral_identities<'a, H: FactorizableHopfG + ?Sized>() -> Vec<Identity<'a, H>> {
    vec![
        ident("I1", 2, 1, |h: &H, l, b| {
            let x = h.basis(l[0] + l[1], Label::ZERO, b[0]);
            let lhs = integral_slot(h, &h.coproduct(&x, l[0], l[1])?, 1)?.to_elem();
            Ok((Val::Elem(lhs), Val::Elem(h.unit(l[0]).scale(&h.integral(&x)?))))
        }),
        ident("I2", 2, 1, |h: &H, l, b| {
            let y = h.basis(Label::ZERO, l[0], b[0]);
            let lhs = h.product(&y, &h.cointegral(l[1])?)?;
            Ok((Val::Elem(lhs), Val::Elem(h.cointegral(l[0] + l[1])?.scale(&h.counit(&y)?))))
        }),
        ident("I3", 1, 0, |h: &H, l, _| Ok((Val::Elem(h.antipode(&h.cointegral(l[0])?)?), Val::Elem(h.cointegral(-l[0])?)))),
        ident("I4", 0, 0, |h: &H, _, _| Ok((Val::Scalar(h.integral(&h.cointegral(Label::ZERO)?)?), Val::Scalar(h.one())))),
        ident("I5", 1, 0, |h: &H, l, _| {
            let a = l[0];
            let d = drinfeld_map(h, a, Label::ZERO, |i| h.integral(&h.antipode_basis(a, Label::ZERO, i)?))?;
            Ok((Val::Elem(d), Val::Elem(h.cointegral(a)?)))
        }),
    ]
}

/// Consequences of the integral axioms.
pub fn derived_integral_identities<'a, H: FactorizableHopfG + ?Sized>() -> Vec<Identity<'a, H>> {
    vec![
        ident("I6", 2, 1, |h: &H, l, b| {
            let x = h.basis(l[0] + l[1], Label::ZERO, b[0]);
            let lhs = integral_slot(h, &h.coproduct(&x, l[0], l[1])?, 0)?.to_elem();
            // holds with g_b^-2 for this pivotal element
            let g = h.pivotal_inv(l[1])?;
            Ok((Val::Elem(lhs), Val::Elem(h.product(&g, &g)?.scale(&h.integral(&x)?))))
        }),
        ident("I7", 2, 2, |h: &H, l, b| {
            let (y, z) = (h.basis(l[0], l[1], b[0]), h.basis(l[0], -l[1], b[1]));
            let lhs = h.integral(&h.product(&y, &z)?)?;
            let rhs = h.integral(&h.product(&z, &s2(h, &y)?)?)?;
            Ok((Val::Scalar(lhs), Val::Scalar(rhs)))
        }),
        ident("I8", 1, 1, |h: &H, l, b| {
            let a = l[0];
            let w = h.basis(a, Label::ZERO, b[0]);
            let lhs = h.integral(&h.product(&w, &h.pivotal_inv(a)?)?)?;
            let rhs = h.integral(&h.product(&h.antipode(&w)?, &h.pivotal_inv(-a)?)?)?;
            Ok((Val::Scalar(lhs), Val::Scalar(rhs)))
        }),
    ]
}

pub fn check_hopf_axioms<H: HopfGAlgebra + ?Sized>(h: &H, cfg: &CheckConfig) -> Report {
    run(h, &hopf_identities(), cfg)
}

pub fn check_derived_hopf<H: HopfGAlgebra + ?Sized>(h: &H, cfg: &CheckConfig) -> Report {
    run(h, &derived_hopf_identities(), cfg)
}

pub fn check_ribbon<H: FactorizableHopfG + ?Sized>(h: &H, cfg: &CheckConfig) -> Report {
    let mut r = run(h, &ribbon_identities(), cfg);
    r.extend(run(h, &derived_ribbon_identities(), cfg));
    r
}

pub fn check_integrals<H: FactorizableHopfG + ?Sized>(h: &H, cfg: &CheckConfig) -> Report {
    let mut r = run(h, &integral_identities(), cfg);
    r.extend(run(h, &derived_integral_identities(), cfg));
    r
}

pub fn check_all<H: FactorizableHopfG + ?Sized>(h: &H, cfg: &CheckConfig) -> Report {
    let mut r = check_hopf_axioms(h, cfg);
    r.extend(check_derived_hopf(h, cfg));
    r.extend(check_ribbon(h, cfg));
    r.extend(check_integrals(h, cfg));
    r
}
