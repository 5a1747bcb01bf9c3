//! The functor on generator words: every word becomes a graded linear map between
//! tensor products of pieces `H_a^b`, carrying the adjoint action of `H_0`.

pub mod hennings;
pub mod link;

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hopf::{AlgElem, FactorizableHopfG, Piece, Tensor};
use crate::label::Label;
use crate::tangle::{GenKind, MorphExpr, Object};

/// A linear map between tensor products of pieces, stored column by column.
/// Column `k` is the image of the basis tensor whose multi-index is `k` written
/// in base `dim`, most significant slot first.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap {
    pub source: Object,
    pub target: Object,
    pub dim: usize,
    pub columns: Vec<Tensor>,
}

pub fn flat_index(idx: &[usize], dim: usize) -> usize {
    idx.iter().fold(0, |acc, i| acc * dim + i)
}

pub fn multi_index(mut k: usize, rank: usize, dim: usize) -> Vec<usize> {
    let mut out = vec![0; rank];
    for s in (0..rank).rev() {
        out[s] = k % dim;
        k /= dim;
    }
    out
}

fn basis_tensor<H: FactorizableHopfG + ?Sized>(h: &H, pieces: &[Piece], idx: Vec<usize>) -> Tensor {
    let mut t = Tensor::zero(pieces.to_vec());
    t.add_term(idx, &h.one());
    t
}

impl GradedMap {
    pub fn n_columns(&self) -> usize {
        self.dim.pow(self.source.len() as u32)
    }

    pub fn n_rows(&self) -> usize {
        self.dim.pow(self.target.len() as u32)
    }

    pub fn identity<H: FactorizableHopfG + ?Sized>(h: &H, obj: &Object) -> GradedMap {
        let dim = h.dim();
        let n = dim.pow(obj.len() as u32);
        let columns = (0..n).map(|k| basis_tensor(h, obj, multi_index(k, obj.len(), dim))).collect();
        GradedMap { source: obj.clone(), target: obj.clone(), dim, columns }
    }

    /// Applies the map to a tensor over (a relabeling of) its source.
    pub fn apply<H: FactorizableHopfG + ?Sized>(&self, h: &H, t: &Tensor) -> Result<Tensor> {
        let t = h.reinterpret_tensor(t, &self.source)?;
        let mut out = Tensor::zero(self.target.clone());
        for (idx, c) in &t.coeffs {
            out.add_scaled(&self.columns[flat_index(idx, self.dim)], c);
        }
        Ok(out)
    }

    /// `self` after `g`.
    pub fn compose<H: FactorizableHopfG + ?Sized>(&self, h: &H, g: &GradedMap) -> Result<GradedMap> {
        if g.target != self.source {
            return Err(Error::Grading("composition of maps with mismatched objects".into()));
        }
        let columns = g.columns.iter().map(|c| self.apply(h, c)).collect::<Result<_>>()?;
        Ok(GradedMap { source: g.source.clone(), target: self.target.clone(), dim: self.dim, columns })
    }

    pub fn tensor(&self, g: &GradedMap) -> GradedMap {
        let mut columns = Vec::with_capacity(self.columns.len() * g.columns.len());
        for a in &self.columns {
            for b in &g.columns {
                columns.push(a.otimes(b));
            }
        }
        GradedMap {
            source: [self.source.clone(), g.source.clone()].concat(),
            target: [self.target.clone(), g.target.clone()].concat(),
            dim: self.dim,
            columns,
        }
    }

    /// Exact equality, identifying pieces whose labels name the same space.
    pub fn equals<H: FactorizableHopfG + ?Sized>(&self, h: &H, other: &GradedMap) -> Result<bool> {
        if self.source != other.source || self.target != other.target {
            return Ok(false);
        }
        for (a, b) in self.columns.iter().zip(&other.columns) {
            if !h.tensor_eq(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dense rows of exact coefficients: `entries[row][col]`.
    pub fn dense<H: FactorizableHopfG + ?Sized>(&self, h: &H) -> Vec<Vec<crate::scalar::CycScalar>> {
        let mut rows = vec![vec![h.field().zero(); self.n_columns()]; self.n_rows()];
        for (j, col) in self.columns.iter().enumerate() {
            for (idx, c) in &col.coeffs {
                rows[flat_index(idx, self.dim)][j] = c.clone();
            }
        }
        rows
    }
}

type ActKey = (Label, usize, Piece, usize);

/// Evaluates generator words for one algebra instance, caching generator images.
pub struct Evaluator<'h, H: FactorizableHopfG + ?Sized> {
    pub h: &'h H,
    gens: RefCell<HashMap<(GenKind, Vec<Label>), GradedMap>>,
    acts: RefCell<HashMap<ActKey, AlgElem>>,
}

impl<'h, H: FactorizableHopfG + ?Sized> Evaluator<'h, H> {
    pub fn new(h: &'h H) -> Self {
        Evaluator { h, gens: RefCell::new(HashMap::new()), acts: RefCell::new(HashMap::new()) }
    }

    /// `x |> y` on basis vectors, cached.
    fn act_basis(&self, xu: Label, xi: usize, piece: Piece, yi: usize) -> Result<AlgElem> {
        let key = (xu, xi, piece, yi);
        if let Some(v) = self.acts.borrow().get(&key) {
            return Ok(v.clone());
        }
        let h = self.h;
        let v = crate::hopf::adjoint_act(h, &h.basis(Label::ZERO, xu, xi), &h.basis(piece.0, piece.1, yi))?;
        self.acts.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    /// `x |> y` for `x` in `H_0^c` and `y` in any piece.
    pub fn act(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
        let mut out = AlgElem::zero(y.lower, y.upper);
        for (i, a) in &x.coeffs {
            for (j, b) in &y.coeffs {
                out.add_scaled(&self.act_basis(x.upper, *i, y.piece(), *j)?, &(a * b));
            }
        }
        Ok(out)
    }

    /// Action of `x` in `H_0^c` on a tensor of adjoint modules.
    pub fn act_tensor(&self, x: &AlgElem, t: &Tensor) -> Result<Tensor> {
        let h = self.h;
        let k = t.rank();
        if k == 0 {
            let e = h.counit(x)?;
            let mut out = Tensor::zero(vec![]);
            out.add_scaled(t, &e);
            return Ok(out);
        }
        let xs = h.iterated_coproduct(x, &vec![Label::ZERO; k])?;
        let mut out = Tensor::zero(t.pieces.clone());
        for (xi, xc) in &xs.coeffs {
            for (ti, tc) in &t.coeffs {
                let mut term = Tensor::scalar(xc * tc);
                for s in 0..k {
                    let img = self.act_basis(xs.pieces[s].1, xi[s], t.pieces[s], ti[s])?;
                    term = term.otimes(&Tensor::from_elem(&img));
                }
                out.add_scaled(&term, &h.one());
            }
        }
        Ok(out)
    }

    fn build<F>(&self, source: Object, target: Object, mut f: F) -> Result<GradedMap>
    where
        F: FnMut(&[usize]) -> Result<Tensor>,
    {
        let h = self.h;
        let dim = h.dim();
        let n = dim.pow(source.len() as u32);
        let mut columns = Vec::with_capacity(n);
        for k in 0..n {
            let img = f(&multi_index(k, source.len(), dim))?;
            columns.push(h.reinterpret_tensor(&img, &target)?);
        }
        Ok(GradedMap { source, target, dim, columns })
    }

    /// Image of a generator.
    pub fn generator(&self, kind: GenKind, p: &[Label]) -> Result<GradedMap> {
        let key = (kind, p.to_vec());
        if let Some(m) = self.gens.borrow().get(&key) {
            return Ok(m.clone());
        }
        let m = self.generator_uncached(kind, p)?;
        self.gens.borrow_mut().insert(key, m.clone());
        Ok(m)
    }

    fn generator_uncached(&self, kind: GenKind, p: &[Label]) -> Result<GradedMap> {
        let h = self.h;
        if p.len() != kind.arity() {
            return Err(Error::Type { path: "root".into(), msg: format!("{} takes {} labels", kind.name(), kind.arity()) });
        }
        let (src, tgt) = kind.signature(p);
        let elem = |s: usize, i: usize| h.basis(src[s].0, src[s].1, i);
        match kind {
            GenKind::Mu => self.build(src.clone(), tgt, |i| Ok(Tensor::from_elem(&h.product(&elem(0, i[0]), &elem(1, i[1]))?))),
            GenKind::Eta => self.build(src, tgt, |_| Ok(Tensor::from_elem(&h.unit(p[0])))),
            GenKind::Delta => {
                // x_(1,a) S(R''_i) (x) R'_i |> x_(2,b), R = R_{0,-a}
                let r = h.r_matrix(Label::ZERO, -p[0])?;
                let legs: Vec<(AlgElem, AlgElem, _)> = r
                    .coeffs
                    .iter()
                    .map(|(ix, c)| {
                        let r1 = h.basis(r.pieces[0].0, r.pieces[0].1, ix[0]);
                        let r2 = h.antipode_basis(r.pieces[1].0, r.pieces[1].1, ix[1])?;
                        Ok((r1, r2, c.clone()))
                    })
                    .collect::<Result<_>>()?;
                self.build(src.clone(), tgt, |i| {
                    let d = h.coproduct(&elem(0, i[0]), p[0], p[1])?;
                    let mut out: Option<Tensor> = None;
                    for (di, dc) in &d.coeffs {
                        let x1 = h.basis(p[0], d.pieces[0].1, di[0]);
                        let x2 = h.basis(p[1], d.pieces[1].1, di[1]);
                        for (r1, s2, c) in &legs {
                            let left = h.product(&x1, s2)?;
                            let right = self.act(r1, &x2)?;
                            let term = Tensor::from_elem(&left).otimes(&Tensor::from_elem(&right));
                            let acc = out.get_or_insert_with(|| Tensor::zero(term.pieces.clone()));
                            acc.add_scaled(&h.reinterpret_tensor(&term, &acc.pieces.clone())?, &(dc * c));
                        }
                    }
                    Ok(out.unwrap_or_else(|| Tensor::zero(vec![(p[0], p[2]), (p[1], p[2])])))
                })
            }
            GenKind::Eps => self.build(src.clone(), tgt, |i| Ok(Tensor::scalar(h.counit(&elem(0, i[0]))?))),
            GenKind::Antipode | GenKind::AntipodeInv => {
                // S: R''_i S(R'_i |> x);  S^-1: S^-1(R'_i |> x) R''_i;  R = R_{0,-a}
                let r = h.r_matrix(Label::ZERO, -p[0])?;
                let inv = kind == GenKind::AntipodeInv;
                self.build(src.clone(), tgt.clone(), |i| {
                    let x = elem(0, i[0]);
                    let mut out = AlgElem::zero(tgt[0].0, tgt[0].1);
                    for (ix, c) in &r.coeffs {
                        let r1 = h.basis(r.pieces[0].0, r.pieces[0].1, ix[0]);
                        let r2 = h.basis(r.pieces[1].0, r.pieces[1].1, ix[1]);
                        let ax = self.act(&r1, &x)?;
                        let y = if inv { h.product(&h.antipode_inv(&ax)?, &r2)? } else { h.product(&r2, &h.antipode(&ax)?)? };
                        out.add_scaled(&h.reinterpret(&y, out.upper)?, c);
                    }
                    Ok(Tensor::from_elem(&out))
                })
            }
            GenKind::Ribbon => {
                let v = h.ribbon(p[0])?;
                self.build(src, tgt, |_| Ok(Tensor::from_elem(&v)))
            }
            GenKind::RibbonInv => {
                let v = h.ribbon_inv(p[0])?;
                self.build(src, tgt, |_| Ok(Tensor::from_elem(&v)))
            }
            GenKind::Integral => self.build(src.clone(), tgt, |i| Ok(Tensor::scalar(h.integral(&elem(0, i[0]))?))),
        }
    }

    /// The braiding `X (x) Y -> R''_i |> Y (x) R'_i |> X` with `R = R_{0,0}`.
    pub fn braid(&self, a: &Object, b: &Object) -> Result<GradedMap> {
        let h = self.h;
        let r = h.r_matrix(Label::ZERO, Label::ZERO)?;
        let src = [a.clone(), b.clone()].concat();
        let tgt = [b.clone(), a.clone()].concat();
        let (na, nb) = (a.len(), b.len());
        self.build(src, tgt.clone(), |i| {
            let x = basis_tensor(h, a, i[..na].to_vec());
            let y = basis_tensor(h, b, i[na..].to_vec());
            let mut out = Tensor::zero(tgt.clone());
            for (ix, c) in &r.coeffs {
                let r1 = h.basis(Label::ZERO, r.pieces[0].1, ix[0]);
                let r2 = h.basis(Label::ZERO, r.pieces[1].1, ix[1]);
                let t = self.act_tensor(&r2, &y)?.otimes(&self.act_tensor(&r1, &x)?);
                out.add_scaled(&h.reinterpret_tensor(&t, &tgt)?, c);
            }
            let _ = nb;
            Ok(out)
        })
    }

    /// Matrix of a word, by structural recursion on the word.
    pub fn evaluate(&self, e: &MorphExpr) -> Result<GradedMap> {
        e.typecheck()?;
        self.eval_checked(e)
    }

    fn eval_checked(&self, e: &MorphExpr) -> Result<GradedMap> {
        match e {
            MorphExpr::Id(o) => Ok(GradedMap::identity(self.h, o)),
            MorphExpr::Gen(k, p) => self.generator(*k, p),
            MorphExpr::Braid(a, b) => self.braid(a, b),
            MorphExpr::Compose(f, g) => self.eval_checked(f)?.compose(self.h, &self.eval_checked(g)?),
            MorphExpr::Tensor(f, g) => Ok(self.eval_checked(f)?.tensor(&self.eval_checked(g)?)),
        }
    }

    /// Pushes one tensor through the word without forming intermediate matrices
    /// for composites: generator images are applied slot block by slot block.
    pub fn apply(&self, e: &MorphExpr, t: &Tensor) -> Result<Tensor> {
        let (src, _) = e.typecheck()?;
        let t = self.h.reinterpret_tensor(t, &src)?;
        self.apply_checked(e, &t)
    }

    fn apply_checked(&self, e: &MorphExpr, t: &Tensor) -> Result<Tensor> {
        let h = self.h;
        match e {
            MorphExpr::Id(_) => Ok(t.clone()),
            MorphExpr::Gen(..) | MorphExpr::Braid(..) => self.eval_checked(e)?.apply(h, t),
            MorphExpr::Compose(f, g) => {
                let mid = self.apply_checked(g, t)?;
                let (fs, _) = f.typecheck()?;
                self.apply_checked(f, &h.reinterpret_tensor(&mid, &fs)?)
            }
            MorphExpr::Tensor(f, g) => {
                let (fs, ft) = f.typecheck()?;
                let (_, gt) = g.typecheck()?;
                let k = fs.len();
                let mut out = Tensor::zero([ft, gt].concat());
                for (idx, c) in &t.coeffs {
                    let left = basis_tensor(h, &t.pieces[..k], idx[..k].to_vec());
                    let right = basis_tensor(h, &t.pieces[k..], idx[k..].to_vec());
                    let img = self.apply_checked(f, &left)?.otimes(&self.apply_checked(g, &right)?);
                    out.add_scaled(&img, c);
                }
                Ok(out)
            }
        }
    }

    /// Checks `M(x |> w) = x |> M(w)` for the given elements `x` of `H_0` and the
    /// given source columns `w`. Returns the first failing `(x index, column)`.
    pub fn intertwiner_check(&self, m: &GradedMap, xs: &[AlgElem], columns: &[usize]) -> Result<Option<(usize, usize)>> {
        let h = self.h;
        for (xi, x) in xs.iter().enumerate() {
            for &k in columns {
                let w = basis_tensor(h, &m.source, multi_index(k, m.source.len(), m.dim));
                let lhs = m.apply(h, &self.act_tensor(x, &w)?)?;
                let rhs = self.act_tensor(x, &m.columns[k])?;
                if !h.tensor_eq(&lhs, &rhs)? {
                    return Ok(Some((xi, k)));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::HopfGAlgebra;
    use crate::tangle::parse_expr;
    use crate::uqsl2::{Sl2, Sl2Params};

    fn sl2() -> Sl2 {
        Sl2::new(Sl2Params::new(3, 2).unwrap()).unwrap()
    }

    fn eval(ev: &Evaluator<'_, Sl2>, s: &str) -> GradedMap {
        ev.evaluate(&parse_expr(s).unwrap()).unwrap()
    }

    #[test]
    fn identity_word_is_identity() {
        let h = sl2();
        let ev = Evaluator::new(&h);
        let m = eval(&ev, "(id ((0 0)))");
        assert_eq!(m.columns.len(), 27);
        assert!(m.equals(&h, &GradedMap::identity(&h, &m.source)).unwrap());
    }

    #[test]
    fn counit_of_unit() {
        let h = sl2();
        let ev = Evaluator::new(&h);
        let m = eval(&ev, "(compose (gen eps 0) (gen eta 0))");
        assert!(m.columns[0].to_scalar(h.field()).is_one());
    }

    #[test]
    fn braided_hopf_relations() {
        let h = sl2();
        let ev = Evaluator::new(&h);
        for (a, g) in [("0", "0"), ("1/2", "0"), ("1", "1/2"), ("3/2", "3/2")] {
            let id = eval(&ev, &format!("(id (({a} {g})))"));
            let left = eval(&ev, &format!("(compose (tensor (gen eps {g}) (id (({a} {g})))) (gen delta 0 {a} {g}))"));
            assert!(left.equals(&h, &id).unwrap(), "left counit {a} {g}");
            let right = eval(&ev, &format!("(compose (tensor (id (({a} {g}))) (gen eps {g})) (gen delta {a} 0 {g}))"));
            assert!(right.equals(&h, &id).unwrap(), "right counit {a} {g}");
            let ss = eval(&ev, &format!("(compose (gen S -{a} -{g}) (gen Sinv {a} {g}))"));
            assert!(ss.equals(&h, &id).unwrap(), "S Sinv {a} {g}");
            let ss = eval(&ev, &format!("(compose (gen Sinv -{a} -{g}) (gen S {a} {g}))"));
            assert!(ss.equals(&h, &id).unwrap(), "Sinv S {a} {g}");
        }
    }

    #[test]
    fn antipode_relation() {
        let h = sl2();
        let ev = Evaluator::new(&h);
        for (a, g) in [("0", "0"), ("1/2", "1"), ("1", "3/2")] {
            let lhs = eval(&ev, &format!("(compose (gen mu {a} -{g} {g}) (compose (tensor (gen S -{a} {g}) (id (({a} {g})))) (gen delta -{a} {a} {g})))"));
            let rhs = eval(&ev, &format!("(compose (gen eta {a}) (gen eps {g}))"));
            assert!(lhs.equals(&h, &rhs).unwrap(), "antipode {a} {g}");
        }
    }
}
