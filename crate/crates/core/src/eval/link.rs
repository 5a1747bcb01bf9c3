//! Invariant of labeled closed link diagrams.
//!
//! The diagram is swept bottom to top. Every open arc of a component below the
//! current slice carries the product of the beads met along it so far, as one
//! tensor slot. A crossing puts `R` (over strand from the bottom left) or `R^{-1}`
//! (over strand from the bottom right) on its strands, first leg on the over strand,
//! with labels `+-label` according to the strand direction. Beads on downward
//! strands enter through the antipode. An extremum traversed left to right
//! carries a pivotal bead, `g^{-1}` on a cup and `g` on a cap; extrema traversed
//! right to left carry nothing. A closed component with bead product `y` contributes `lambda(y g^{-1})`.

use std::collections::HashMap;

use crate::error::Result;
use crate::hopf::{AlgElem, FactorizableHopfG, Piece, Tensor};
use crate::label::Label;
use crate::scalar::CycScalar;
use crate::tangle::diagram::{Event, LinkDiagram, Over};

/// Pivotal exponent on a cup traversed left to right.
pub const CUP_RIGHTWARD: i32 = -1;
/// Pivotal exponent on a cap traversed left to right.
pub const CAP_RIGHTWARD: i32 = 1;

#[derive(Clone, Copy, Debug)]
struct Str {
    arc: usize,
    up: bool,
}

struct Sweep<'h, H: FactorizableHopfG + ?Sized> {
    h: &'h H,
    state: Tensor,
    /// arc id of each tensor slot
    slots: Vec<usize>,
    /// label of each arc ever opened
    arcs: Vec<Label>,
    strands: Vec<Str>,
}

fn pivot_pow<H: FactorizableHopfG + ?Sized>(h: &H, a: Label, e: i32) -> Result<AlgElem> {
    let g = if e >= 0 { h.pivotal(a)? } else { h.pivotal_inv(a)? };
    let mut out = h.unit(a);
    for _ in 0..e.unsigned_abs() {
        out = h.product(&out, &g)?;
    }
    h.reinterpret(&out, Label::ZERO)
}

/// Bead `x` placed on a strand: multiplies on the left of an upward strand's
/// arc, and as `S(x)` on the right of a downward strand's arc.
fn place<H: FactorizableHopfG + ?Sized>(h: &H, up: bool, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
    if up {
        h.product(x, y)
    } else {
        h.product(y, &h.antipode(x)?)
    }
}

impl<'h, H: FactorizableHopfG + ?Sized> Sweep<'h, H> {
    fn slot_of(&self, arc: usize) -> usize {
        self.slots.iter().position(|a| *a == arc).expect("open arc has a slot")
    }

    fn new_arc(&mut self, label: Label) -> usize {
        self.arcs.push(label);
        self.arcs.len() - 1
    }

    fn cup(&mut self, pos: usize, label: Label, left_up: bool) -> Result<()> {
        let id = self.new_arc(label);
        let g = pivot_pow(self.h, label, if left_up { 0 } else { CUP_RIGHTWARD })?;
        self.state = self.state.otimes(&Tensor::from_elem(&g));
        self.slots.push(id);
        self.strands.insert(pos, Str { arc: id, up: !left_up });
        self.strands.insert(pos, Str { arc: id, up: left_up });
        Ok(())
    }

    /// Replaces slots `sa`, `sb` (in that order) by the image of `f`, appended at the end.
    fn map_pair<F>(&mut self, sa: usize, sb: usize, mut f: F) -> Result<Vec<Piece>>
    where
        F: FnMut(usize, usize) -> Result<Tensor>,
    {
        let n = self.state.rank();
        let mut cache: HashMap<(usize, usize), Tensor> = HashMap::new();
        let rest: Vec<usize> = (0..n).filter(|s| *s != sa && *s != sb).collect();
        let mut out: Option<Tensor> = None;
        let mut img_pieces = Vec::new();
        for (idx, c) in &self.state.coeffs {
            let key = (idx[sa], idx[sb]);
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
                e.insert(f(key.0, key.1)?);
            }
            let img = &cache[&key];
            let acc = out.get_or_insert_with(|| {
                let mut p: Vec<Piece> = rest.iter().map(|s| self.state.pieces[*s]).collect();
                p.extend(img.pieces.iter().copied());
                img_pieces = img.pieces.clone();
                Tensor::zero(p)
            });
            let base: Vec<usize> = rest.iter().map(|s| idx[*s]).collect();
            for (j, d) in &img.coeffs {
                let mut k = base.clone();
                k.extend(j.iter().copied());
                acc.add_term(k, &(c * d));
            }
        }
        let out = match out {
            Some(t) => t,
            None => {
                let img = f(0, 0)?;
                img_pieces = img.pieces.clone();
                let mut p: Vec<Piece> = rest.iter().map(|s| self.state.pieces[*s]).collect();
                p.extend(img.pieces.iter().copied());
                Tensor::zero(p)
            }
        };
        self.state = out;
        let arcs: Vec<usize> = rest.iter().map(|s| self.slots[*s]).collect();
        self.slots = arcs;
        Ok(img_pieces)
    }

    fn cross(&mut self, pos: usize, over: Over) -> Result<()> {
        let h = self.h;
        let (sl, sr) = (self.strands[pos], self.strands[pos + 1]);
        let (so, su) = match over {
            Over::Left => (sl, sr),
            Over::Right => (sr, sl),
        };
        let lab = |s: Str| {
            let l = self.arcs[s.arc];
            if s.up {
                l
            } else {
                -l
            }
        };
        let (a, b) = (lab(so), lab(su));
        let r = match over {
            Over::Left => h.r_matrix(a, b)?,
            Over::Right => h.r_matrix_inv(a, b)?,
        };
        let terms: Vec<(AlgElem, AlgElem, CycScalar)> = r
            .coeffs
            .iter()
            .map(|(i, c)| (h.basis(r.pieces[0].0, r.pieces[0].1, i[0]), h.basis(r.pieces[1].0, r.pieces[1].1, i[1]), c.clone()))
            .collect();
        if so.arc == su.arc {
            let slot = self.slot_of(so.arc);
            let p = self.state.pieces[slot];
            self.state = self.state.map_slot(slot, |i| {
                let y = h.basis(p.0, p.1, i);
                let mut acc: Option<AlgElem> = None;
                for (x1, x2, c) in &terms {
                    let z = place(h, su.up, x2, &place(h, so.up, x1, &y)?)?;
                    match acc.as_mut() {
                        Some(s) => s.add_scaled(&h.reinterpret(&z, s.upper)?, c),
                        None => acc = Some(z.scale(c)),
                    }
                }
                Ok(Tensor::from_elem(&acc.expect("R has terms")))
            })?;
        } else {
            let (ta, tb) = (self.slot_of(so.arc), self.slot_of(su.arc));
            let (pa, pb) = (self.state.pieces[ta], self.state.pieces[tb]);
            self.map_pair(ta, tb, |i, j| {
                let (ya, yb) = (h.basis(pa.0, pa.1, i), h.basis(pb.0, pb.1, j));
                let mut acc: Option<Tensor> = None;
                for (x1, x2, c) in &terms {
                    let t = Tensor::from_elem(&place(h, so.up, x1, &ya)?).otimes(&Tensor::from_elem(&place(h, su.up, x2, &yb)?));
                    match acc.as_mut() {
                        Some(s) => {
                            let pcs = s.pieces.clone();
                            s.add_scaled(&h.reinterpret_tensor(&t, &pcs)?, c)
                        }
                        None => {
                            let mut z = Tensor::zero(t.pieces.clone());
                            z.add_scaled(&t, c);
                            acc = Some(z);
                        }
                    }
                }
                Ok(acc.expect("R has terms"))
            })?;
            let (ida, idb) = (so.arc, su.arc);
            self.slots.push(ida);
            self.slots.push(idb);
        }
        self.strands.swap(pos, pos + 1);
        Ok(())
    }

    fn cap(&mut self, pos: usize) -> Result<()> {
        let h = self.h;
        let (s0, s1) = (self.strands[pos], self.strands[pos + 1]);
        let (exit, entry) = if s0.up { (s0, s1) } else { (s1, s0) };
        let label = self.arcs[exit.arc];
        let g = pivot_pow(h, label, if s0.up { CAP_RIGHTWARD } else { 0 })?;
        if exit.arc == entry.arc {
            let slot = self.slot_of(exit.arc);
            let p = self.state.pieces[slot];
            let ginv = h.pivotal_inv(label)?;
            self.state = self.state.map_slot(slot, |i| {
                // upper labels of a closed admissible component are integers
                let y = h.product(&h.product(&g, &h.basis(p.0, p.1, i))?, &ginv)?;
                Ok(Tensor::scalar(h.integral(&h.reinterpret(&y, Label::ZERO)?)?))
            })?;
            self.slots.remove(slot);
        } else {
            // merged arc: y_entry g y_exit
            let (tx, ty) = (self.slot_of(exit.arc), self.slot_of(entry.arc));
            let (px, py) = (self.state.pieces[tx], self.state.pieces[ty]);
            self.map_pair(ty, tx, |i, j| {
                let y = h.product(&h.product(&h.basis(py.0, py.1, i), &g)?, &h.basis(px.0, px.1, j))?;
                Ok(Tensor::from_elem(&y))
            })?;
            let id = self.new_arc(label);
            self.slots.push(id);
            for s in &mut self.strands {
                if s.arc == exit.arc || s.arc == entry.arc {
                    s.arc = id;
                }
            }
        }
        self.strands.drain(pos..pos + 2);
        Ok(())
    }
}

/// The invariant of an admissible labeled diagram.
pub fn evaluate_link<H: FactorizableHopfG + ?Sized>(h: &H, d: &LinkDiagram) -> Result<CycScalar> {
    d.validate()?;
    d.check_admissible()?;
    let mut sw = Sweep { h, state: Tensor::scalar(h.one()), slots: vec![], arcs: vec![], strands: vec![] };
    for ev in &d.events {
        match *ev {
            Event::Cup { pos, component, left_up } => sw.cup(pos, d.components[component].label, left_up)?,
            Event::Cross { pos, over } => sw.cross(pos, over)?,
            Event::Cap { pos } => sw.cap(pos)?,
        }
    }
    Ok(sw.state.to_scalar(h.field()))
}
