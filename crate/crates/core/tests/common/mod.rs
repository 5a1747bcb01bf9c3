#![allow(dead_code)]

use std::collections::HashMap;

use hopf_g_tqft::eval::link::evaluate_link;
use hopf_g_tqft::eval::{multi_index, GradedMap};
use hopf_g_tqft::hopf::{AlgElem, HopfGAlgebra, Piece, Tensor};
use hopf_g_tqft::label::Label;
use hopf_g_tqft::scalar::CycScalar;
use hopf_g_tqft::tangle::diagram::{random_admissible_labels, random_diagram, Component, Event, LinkDiagram, Over};
use hopf_g_tqft::tangle::{GenKind, MorphExpr, Object};
use hopf_g_tqft::uqsl2::kbasis::{KBasis, KElem};
use hopf_g_tqft::uqsl2::{Sl2, Sl2Params};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn sl2(r: u32, d: u32, shift: i64) -> Sl2 {
    Sl2::new(Sl2Params::new(r, d).unwrap().with_shift(shift)).unwrap()
}

/// The canonical identification between two instances that differ only in
/// their label representatives: basis vector `i` of `to` in a piece equals
/// `c * (basis vector j of from)`.
pub struct Identification<'a> {
    from: &'a Sl2,
    to: &'a Sl2,
    k: KBasis,
    cache: HashMap<Piece, Vec<(usize, CycScalar)>>,
}

fn ratio(k: &KBasis, x: &KElem, y: &KElem) -> Option<CycScalar> {
    let y = k.reupper(y, x.upper);
    if x.c.len() != y.c.len() || x.c.keys().ne(y.c.keys()) {
        return None;
    }
    let (key, a) = x.c.iter().next()?;
    let c = a.div(&y.c[key]).ok()?;
    k.eq(x, &k.scale(&y, &c)).then_some(c)
}

impl<'a> Identification<'a> {
    pub fn new(from: &'a Sl2, to: &'a Sl2, r: u32, d: u32) -> Self {
        Identification { from, to, k: KBasis::new(r, d).unwrap(), cache: HashMap::new() }
    }

    fn table(&mut self, p: Piece) -> &Vec<(usize, CycScalar)> {
        let (from, to, k) = (self.from, self.to, &self.k);
        self.cache.entry(p).or_insert_with(|| {
            let src: Vec<KElem> = (0..from.dim()).map(|j| k.from_t(from, &from.basis(p.0, p.1, j))).collect();
            (0..to.dim())
                .map(|i| {
                    let x = k.from_t(to, &to.basis(p.0, p.1, i));
                    src.iter().enumerate().find_map(|(j, y)| ratio(k, &x, y).map(|c| (j, c))).expect("basis vectors correspond")
                })
                .collect()
        })
    }

    /// Rewrites an element of `to` in the coordinates of `from`.
    pub fn elem(&mut self, x: &AlgElem) -> AlgElem {
        let t = self.table(x.piece()).clone();
        let mut out = AlgElem::zero(x.lower, x.upper);
        for (i, v) in &x.coeffs {
            out.add_term(t[*i].0, &(v * &t[*i].1));
        }
        out
    }

    pub fn tensor(&mut self, x: &Tensor) -> Tensor {
        let tables: Vec<_> = x.pieces.iter().map(|p| self.table(*p).clone()).collect();
        let mut out = Tensor::zero(x.pieces.clone());
        for (idx, v) in &x.coeffs {
            let mut c = v.clone();
            let mut j = Vec::with_capacity(idx.len());
            for (s, i) in idx.iter().enumerate() {
                j.push(tables[s][*i].0);
                c = c * &tables[s][*i].1;
            }
            out.add_term(j, &c);
        }
        out
    }

    /// True when `m_to` (over `to`) and `m_from` (over `from`) agree.
    pub fn same_map(&mut self, m_to: &GradedMap, m_from: &GradedMap) -> bool {
        if m_to.source != m_from.source || m_to.target != m_from.target {
            return false;
        }
        let from = self.from;
        for (k, col) in m_to.columns.iter().enumerate() {
            let mut w = Tensor::zero(m_to.source.clone());
            w.add_term(multi_index(k, m_to.source.len(), m_to.dim), &from.one());
            let lhs = self.tensor(col);
            let rhs = m_from.apply(from, &self.tensor(&w)).unwrap();
            if !from.tensor_eq(&lhs, &rhs).unwrap() {
                return false;
            }
        }
        true
    }
}

fn pick(rng: &mut impl Rng, pool: &[Label]) -> Label {
    *pool.choose(rng).unwrap()
}

fn gen(kind: GenKind, p: &[Label]) -> MorphExpr {
    MorphExpr::Gen(kind, p.to_vec())
}

fn target(e: &MorphExpr) -> Object {
    e.typecheck().unwrap().1
}

/// One random generator step out of `obj`, acting on its first handle or two.
fn step(rng: &mut impl Rng, obj: &Object, pool: &[Label]) -> MorphExpr {
    let z = Label::ZERO;
    let mut options: Vec<(MorphExpr, Object)> = Vec::new();
    let mut push = |head: MorphExpr, used: usize| {
        options.push((head, obj[used..].to_vec()));
    };
    let x = pick(rng, pool);
    push(gen(GenKind::Eta, &[x]), 0);
    push(gen(GenKind::Ribbon, &[x]), 0);
    push(gen(GenKind::RibbonInv, &[x]), 0);
    if let Some(&(a, b)) = obj.first() {
        push(gen(GenKind::Antipode, &[a, b]), 1);
        push(gen(GenKind::AntipodeInv, &[a, b]), 1);
        let a1 = pick(rng, pool);
        push(gen(GenKind::Delta, &[a1, a - a1, b]), 1);
        if a == z {
            push(gen(GenKind::Eps, &[b]), 1);
        }
        if b == z {
            push(gen(GenKind::Integral, &[a]), 1);
        }
    }
    if obj.len() >= 2 {
        let (p, q) = (obj[0], obj[1]);
        push(MorphExpr::Braid(vec![p], vec![q]), 2);
        if p.0 == q.0 {
            push(gen(GenKind::Mu, &[p.0, p.1, q.1]), 2);
        }
    }
    let (head, rest) = options.swap_remove(rng.gen_range(0..options.len()));
    if rest.is_empty() {
        head
    } else {
        MorphExpr::tensor(head, MorphExpr::Id(rest))
    }
}

/// A random well-typed word out of `obj` whose intermediate objects have at most `max_rank` handles.
pub fn random_word(rng: &mut impl Rng, obj: &Object, pool: &[Label], steps: usize, max_rank: usize) -> MorphExpr {
    let mut word = MorphExpr::Id(obj.clone());
    let mut cur = obj.clone();
    for _ in 0..steps {
        let s = loop {
            let s = step(rng, &cur, pool);
            if target(&s).len() <= max_rank {
                break s;
            }
        };
        cur = target(&s);
        word = MorphExpr::compose(s, word);
    }
    word
}

pub fn random_object(rng: &mut impl Rng, pool: &[Label], rank: usize) -> Object {
    (0..rank).map(|_| (pick(rng, pool), pick(rng, pool))).collect()
}

pub fn unknot(left_up: bool) -> LinkDiagram {
    LinkDiagram {
        components: vec![Component { label: Label::ZERO }],
        events: vec![Event::Cup { pos: 0, component: 0, left_up }, Event::Cap { pos: 0 }],
    }
}

/// Value of the unknot with framing `+-1`.
pub fn framed_unknot(h: &Sl2, f: i64) -> CycScalar {
    let over = if f > 0 { Over::Right } else { Over::Left };
    evaluate_link(h, &unknot(true).add_curl(1, 0, over).unwrap()).unwrap()
}

/// Applies K3, K2 and both forms of K1 to `count` random admissible diagrams
/// and returns the number of moves checked.
pub fn kirby_rounds(h: &Sl2, count: usize, seed: u64) -> Result<usize, String> {
    let pool = Label::all_with_denominator(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let value = |d: &LinkDiagram| evaluate_link(h, d).unwrap();
    let mut moves = 0;
    for it in 0..count {
        let n = rng.gen_range(2..=3);
        let c = rng.gen_range(0..6);
        let d = random_diagram(&mut rng, n, c);
        let d = random_admissible_labels(&mut rng, &d, &pool, it % 2 == 0).unwrap_or(d);
        let v = value(&d);
        let json = d.to_json();
        let fail = |m: &str| Err(format!("{m} {json}"));

        let k = rng.gen_range(0..n);
        if value(&d.reverse_component(k).unwrap()) != v {
            return fail("K3");
        }

        let hs = d.common_heights(0, 1).unwrap();
        let (at, p1, p2) = hs[rng.gen_range(0..hs.len())].clone();
        let (s, _) = d.handle_slide(0, 1, at, p1[rng.gen_range(0..p1.len())], p2[rng.gen_range(0..p2.len())]).unwrap();
        if value(&s) != v {
            return fail("K2");
        }
        moves += 2;

        // blow up a +-1 framed meridian around a strand of a 0-labeled component
        let at = rng.gen_range(0..d.events.len());
        let mut slice = Vec::new();
        d.walk(|e, _, sl| {
            if e == at {
                slice = sl.to_vec();
            }
            Ok(())
        })
        .unwrap();
        if let Some(pos) = (0..slice.len()).find(|&p| d.components[slice[p].component].label.is_zero()) {
            let comp = slice[pos].component;
            for f in [-1, 1] {
                let blown = value(&d.add_framed_meridian(comp, at, pos, f).unwrap());
                let twist = if f > 0 { Over::Left } else { Over::Right };
                if blown != framed_unknot(h, f) * &value(&d.add_curl(at, pos, twist).unwrap()) {
                    return fail("K1");
                }
            }
            // a 0-framed meridian cancels its component
            if value(&d.add_meridian(comp, at, pos).unwrap()) != value(&d.remove_component(comp).unwrap()) {
                return fail("K1 cancellation");
            }
            moves += 3;
        }
    }
    Ok(moves)
}
