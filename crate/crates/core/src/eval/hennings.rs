//! Reference evaluation of closed link diagrams by a plain state sum in the
//! `E^l F^m K^j` basis, independent of the integral-basis engine.
//!
//! Each component is cut into segments between extrema; the beads of every
//! segment are recorded, the component is traversed along its orientation,
//! and the sum runs over all choices of R-matrix terms at all crossings.

use crate::error::{Error, Result};
use crate::label::Label;
use crate::scalar::{CycScalar, Rat};
use crate::tangle::diagram::{Event, LinkDiagram, Over};
use crate::scalar::FieldParams;
use crate::uqsl2::kbasis::{KBasis, KElem, KTensor};

use super::link::{CAP_RIGHTWARD, CUP_RIGHTWARD};

#[derive(Clone, Copy, Debug)]
enum Bead {
    Leg { crossing: usize, leg: usize, down: bool },
    Pivot(i32),
}

#[derive(Default)]
struct Segment {
    up: bool,
    component: usize,
    beads: Vec<Bead>,
    /// bead at the far end (in traversal direction) and the next segment
    next: Option<(Bead, usize)>,
}

type Term = (KElem, KElem, CycScalar);

fn terms_of(kb: &KBasis, one: &CycScalar, t: &KTensor) -> Vec<Term> {
    let (p0, p1) = (t.pieces[0], t.pieces[1]);
    t.c.iter()
        .map(|(m, c)| {
            let x = kb.mono(p0.0, p0.1, m[0].0, m[0].1, Rat::from_integer(m[0].2 as i64) + p0.1.value(), one.clone());
            let y = kb.mono(p1.0, p1.1, m[1].0, m[1].1, Rat::from_integer(m[1].2 as i64) + p1.1.value(), one.clone());
            (x, y, c.clone())
        })
        .collect()
}

/// Evaluates a labeled diagram at `r`, with labels in `(1/denominator) Z / 2Z`.
pub fn hennings_oracle(r: u32, denominator: u32, d: &LinkDiagram) -> Result<CycScalar> {
    d.validate()?;
    d.check_admissible()?;
    let kb = KBasis::new(r, denominator)?;
    let field = FieldParams::new(r, denominator)?.field();
    let one = field.one();

    // segments and crossing data
    let mut segs: Vec<Segment> = Vec::new();
    let mut slice: Vec<usize> = Vec::new();
    let mut crossings: Vec<Vec<Term>> = Vec::new();
    for ev in &d.events {
        match *ev {
            Event::Cup { pos, component, left_up } => {
                let (a, b) = (segs.len(), segs.len() + 1);
                segs.push(Segment { up: left_up, component, ..Default::default() });
                segs.push(Segment { up: !left_up, component, ..Default::default() });
                // the downward segment flows into the upward one through the cup
                let (down, up) = if left_up { (b, a) } else { (a, b) };
                let e = if left_up { 0 } else { CUP_RIGHTWARD };
                segs[down].next = Some((Bead::Pivot(e), up));
                slice.insert(pos, b);
                slice.insert(pos, a);
            }
            Event::Cap { pos } => {
                let (a, b) = (slice[pos], slice[pos + 1]);
                let (up, down) = if segs[a].up { (a, b) } else { (b, a) };
                let e = if segs[a].up { CAP_RIGHTWARD } else { 0 };
                segs[up].next = Some((Bead::Pivot(e), down));
                slice.drain(pos..pos + 2);
            }
            Event::Cross { pos, over } => {
                let (l, rr) = (slice[pos], slice[pos + 1]);
                let (o, u) = if over == Over::Left { (l, rr) } else { (rr, l) };
                let lab = |s: usize| {
                    let g = d.components[segs[s].component].label;
                    if segs[s].up {
                        g
                    } else {
                        -g
                    }
                };
                let (a, b) = (lab(o), lab(u));
                let t = if over == Over::Left {
                    terms_of(&kb, &one, &kb.r_matrix(a, b))
                } else {
                    // (S (x) id) R_{-a,b}
                    terms_of(&kb, &one, &kb.r_matrix(-a, b)).into_iter().map(|(x, y, c)| (kb.antipode(&x), y, c)).collect()
                };
                let n = crossings.len();
                crossings.push(t);
                let down_o = !segs[o].up;
                let down_u = !segs[u].up;
                segs[o].beads.push(Bead::Leg { crossing: n, leg: 0, down: down_o });
                segs[u].beads.push(Bead::Leg { crossing: n, leg: 1, down: down_u });
                slice.swap(pos, pos + 1);
            }
        }
    }

    // bead words, in traversal order, one per component
    let mut words: Vec<(Label, Vec<Bead>)> = Vec::new();
    let mut seen = vec![false; segs.len()];
    for start in 0..segs.len() {
        if seen[start] || !segs[start].up {
            continue;
        }
        let mut word = Vec::new();
        let mut s = start;
        loop {
            seen[s] = true;
            if segs[s].up {
                word.extend(segs[s].beads.iter().copied());
            } else {
                word.extend(segs[s].beads.iter().rev().copied());
            }
            let (b, nx) = segs[s].next.ok_or_else(|| Error::Diagram("open segment".into()))?;
            word.push(b);
            s = nx;
            if s == start {
                break;
            }
        }
        words.push((d.components[segs[start].component].label, word));
    }

    // state sum
    let sizes: Vec<usize> = crossings.iter().map(|t| t.len()).collect();
    let mut choice = vec![0usize; crossings.len()];
    let mut total = field.zero();
    if sizes.contains(&0) {
        return Ok(total);
    }
    loop {
        let mut val = one.clone();
        for c in 0..crossings.len() {
            val = val * &crossings[c][choice[c]].2;
        }
        for (label, word) in &words {
            let mut y = kb.one(*label);
            for b in word {
                let x = match *b {
                    Bead::Pivot(e) => {
                        let k = Rat::from_integer((1 - r as i64) * e as i64);
                        kb.k_pow(*label, k)
                    }
                    Bead::Leg { crossing, leg, down } => {
                        let t = &crossings[crossing][choice[crossing]];
                        let x = if leg == 0 { &t.0 } else { &t.1 };
                        if down {
                            kb.antipode(x)
                        } else {
                            x.clone()
                        }
                    }
                };
                y = kb.mul(&x, &y);
            }
            let y = kb.mul(&y, &kb.k_pow(*label, Rat::from_integer(r as i64 - 1)));
            let y = kb.reupper(&y, Label::ZERO);
            val = val * &kb.integral(&y);
            if val.is_zero() {
                break;
            }
        }
        total = total + val;
        // next state
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(total);
            }
            choice[k] += 1;
            if choice[k] < sizes[k] {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
