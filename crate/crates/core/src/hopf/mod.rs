//! Graded families `{H_a^b}` with Hopf G-bialgebra structure maps.
//!
//! An implementation supplies the structure maps on basis vectors; the linear
//! extensions, iterated coproducts, the Drinfeld map and the adjoint action are
//! derived here once for every instance.

pub mod checks;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::scalar::{CycScalar, CyclotomicField};

/// A graded piece `H_lower^upper`.
pub type Piece = (Label, Label);

/// An element of a single graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem {
    pub lower: Label,
    pub upper: Label,
    pub coeffs: BTreeMap<usize, CycScalar>,
}

impl AlgElem {
    pub fn zero(lower: Label, upper: Label) -> Self {
        AlgElem { lower, upper, coeffs: BTreeMap::new() }
    }

    pub fn basis(lower: Label, upper: Label, i: usize, one: CycScalar) -> Self {
        let mut e = AlgElem::zero(lower, upper);
        e.coeffs.insert(i, one);
        e
    }

    pub fn piece(&self) -> Piece {
        (self.lower, self.upper)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&i) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.coeffs.remove(&i);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(i, c.clone());
            }
        }
    }

    /// `self += c * other`; pieces must agree.
    pub fn add_scaled(&mut self, other: &AlgElem, c: &CycScalar) {
        debug_assert_eq!(self.piece(), other.piece());
        if c.is_zero() {
            return;
        }
        for (i, v) in &other.coeffs {
            self.add_term(*i, &(v * c));
        }
    }

    pub fn scale(&self, c: &CycScalar) -> AlgElem {
        let mut out = AlgElem::zero(self.lower, self.upper);
        out.add_scaled(self, c);
        out
    }

    pub fn plus(&self, other: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (i, v) in &other.coeffs {
            out.add_term(*i, v);
        }
        out
    }

    pub fn minus(&self, other: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (i, v) in &other.coeffs {
            out.add_term(*i, &-v);
        }
        out
    }

    pub fn coeff(&self, i: usize) -> Option<&CycScalar> {
        self.coeffs.get(&i)
    }
}

/// An element of `H_{a_1}^{b_1} (x) ... (x) H_{a_k}^{b_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub pieces: Vec<Piece>,
    pub coeffs: BTreeMap<Vec<usize>, CycScalar>,
}

impl Tensor {
    pub fn zero(pieces: Vec<Piece>) -> Self {
        Tensor { pieces, coeffs: BTreeMap::new() }
    }

    /// The rank-0 tensor with value `c`.
    pub fn scalar(c: CycScalar) -> Self {
        let mut t = Tensor::zero(Vec::new());
        t.add_term(Vec::new(), &c);
        t
    }

    pub fn from_elem(x: &AlgElem) -> Self {
        let mut t = Tensor::zero(vec![x.piece()]);
        for (i, c) in &x.coeffs {
            t.coeffs.insert(vec![*i], c.clone());
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&idx) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.coeffs.remove(&idx);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(idx, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &CycScalar) {
        debug_assert_eq!(self.pieces, other.pieces);
        if c.is_zero() {
            return;
        }
        for (i, v) in &other.coeffs {
            self.add_term(i.clone(), &(v * c));
        }
    }

    pub fn plus(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (i, v) in &other.coeffs {
            out.add_term(i.clone(), v);
        }
        out
    }

    pub fn minus(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (i, v) in &other.coeffs {
            out.add_term(i.clone(), &-v);
        }
        out
    }

    /// Outer product.
    pub fn otimes(&self, other: &Tensor) -> Tensor {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().copied());
        let mut out = Tensor::zero(pieces);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let mut k = i.clone();
                k.extend(j.iter().copied());
                out.add_term(k, &(a * b));
            }
        }
        out
    }

    /// Reorders the tensor factors: slot `k` of the result is slot `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.rank());
        let pieces = perm.iter().map(|p| self.pieces[*p]).collect();
        let mut out = Tensor::zero(pieces);
        for (i, c) in &self.coeffs {
            out.coeffs.insert(perm.iter().map(|p| i[*p]).collect(), c.clone());
        }
        out
    }

    /// Replaces slot `k` by the image of a linear map applied to each basis vector.
    /// `f` returns a tensor (possibly of a different rank) for every basis index.
    pub fn map_slot<F>(&self, k: usize, mut f: F) -> Result<Tensor>
    where
        F: FnMut(usize) -> Result<Tensor>,
    {
        let mut cache: BTreeMap<usize, Tensor> = BTreeMap::new();
        let mut out: Option<Tensor> = None;
        for (idx, c) in &self.coeffs {
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(idx[k]) {
                e.insert(f(idx[k])?);
            }
            let img = &cache[&idx[k]];
            let acc = out.get_or_insert_with(|| {
                let mut pieces = self.pieces[..k].to_vec();
                pieces.extend(img.pieces.iter().copied());
                pieces.extend(self.pieces[k + 1..].iter().copied());
                Tensor::zero(pieces)
            });
            for (j, d) in &img.coeffs {
                let mut nk = idx[..k].to_vec();
                nk.extend(j.iter().copied());
                nk.extend(idx[k + 1..].iter().copied());
                acc.add_term(nk, &(c * d));
            }
        }
        match out {
            Some(t) => Ok(t),
            None => {
                // zero tensor: pieces of the image are still needed
                let img = f(0)?;
                let mut pieces = self.pieces[..k].to_vec();
                pieces.extend(img.pieces.iter().copied());
                pieces.extend(self.pieces[k + 1..].iter().copied());
                Ok(Tensor::zero(pieces))
            }
        }
    }

    /// Interprets a rank-1 tensor as an element.
    pub fn to_elem(&self) -> AlgElem {
        assert_eq!(self.rank(), 1, "to_elem on a rank-{} tensor", self.rank());
        let (l, u) = self.pieces[0];
        let mut x = AlgElem::zero(l, u);
        for (i, c) in &self.coeffs {
            x.coeffs.insert(i[0], c.clone());
        }
        x
    }

    /// Value of a rank-0 tensor.
    pub fn to_scalar(&self, field: &'static CyclotomicField) -> CycScalar {
        assert_eq!(self.rank(), 0);
        self.coeffs.get(&Vec::new()).cloned().unwrap_or_else(|| field.zero())
    }
}

/// Structure maps of a Hopf G-bialgebra, given on basis vectors.
///
/// `reinterpret` identifies pieces whose upper labels name the same space
/// (for the small quantum group at odd `r`, upper labels that differ by an integer).
pub trait HopfGAlgebra {
    fn field(&self) -> &'static CyclotomicField;
    /// Uniform dimension of every piece.
    fn dim(&self) -> usize;
    fn basis_name(&self, i: usize) -> String;

    /// Product of basis vectors `i` of `H_a^b` and `j` of `H_a^c`, in `H_a^{b+c}`.
    fn mul_basis(&self, lower: Label, b: Label, i: usize, c: Label, j: usize) -> Result<AlgElem>;
    fn unit(&self, lower: Label) -> AlgElem;
    /// `Delta_{a1,a2}` of basis vector `i` of `H_{a1+a2}^upper`.
    fn coproduct_basis(&self, a1: Label, a2: Label, upper: Label, i: usize) -> Result<Tensor>;
    /// `epsilon^upper` of basis vector `i` of `H_0^upper`.
    fn counit_basis(&self, upper: Label, i: usize) -> Result<CycScalar>;
    fn antipode_basis(&self, lower: Label, upper: Label, i: usize) -> Result<AlgElem>;
    fn antipode_inv_basis(&self, lower: Label, upper: Label, i: usize) -> Result<AlgElem>;
    /// Basis vector `i` of `H_lower^from`, rewritten in `H_lower^to`.
    fn reinterpret_basis(&self, lower: Label, from: Label, to: Label, i: usize) -> Result<AlgElem>;

    fn one(&self) -> CycScalar {
        self.field().one()
    }

    fn basis(&self, lower: Label, upper: Label, i: usize) -> AlgElem {
        AlgElem::basis(lower, upper, i, self.one())
    }

    fn product(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
        if x.lower != y.lower {
            return Err(Error::Grading(format!(
                "product of elements with lower labels {} and {}",
                x.lower, y.lower
            )));
        }
        let mut out = AlgElem::zero(x.lower, x.upper + y.upper);
        for (i, a) in &x.coeffs {
            for (j, b) in &y.coeffs {
                let p = self.mul_basis(x.lower, x.upper, *i, y.upper, *j)?;
                out.add_scaled(&p, &(a * b));
            }
        }
        Ok(out)
    }

    /// Product of any number of factors (left to right).
    fn product_all(&self, xs: &[&AlgElem]) -> Result<AlgElem> {
        let mut acc = xs[0].clone();
        for x in &xs[1..] {
            acc = self.product(&acc, x)?;
        }
        Ok(acc)
    }

    fn coproduct(&self, x: &AlgElem, a1: Label, a2: Label) -> Result<Tensor> {
        if a1 + a2 != x.lower {
            return Err(Error::Grading(format!("coproduct ({a1},{a2}) of element of lower label {}", x.lower)));
        }
        Tensor::from_elem(x).map_slot(0, |i| self.coproduct_basis(a1, a2, x.upper, i))
    }

    fn counit(&self, x: &AlgElem) -> Result<CycScalar> {
        if !x.lower.is_zero() {
            return Err(Error::Grading(format!("counit of element of lower label {}", x.lower)));
        }
        let mut acc = self.field().zero();
        for (i, c) in &x.coeffs {
            acc = acc + c * &self.counit_basis(x.upper, *i)?;
        }
        Ok(acc)
    }

    fn antipode(&self, x: &AlgElem) -> Result<AlgElem> {
        let mut out = AlgElem::zero(-x.lower, -x.upper);
        for (i, c) in &x.coeffs {
            out.add_scaled(&self.antipode_basis(x.lower, x.upper, *i)?, c);
        }
        Ok(out)
    }

    fn antipode_inv(&self, x: &AlgElem) -> Result<AlgElem> {
        let mut out = AlgElem::zero(-x.lower, -x.upper);
        for (i, c) in &x.coeffs {
            out.add_scaled(&self.antipode_inv_basis(x.lower, x.upper, *i)?, c);
        }
        Ok(out)
    }

    fn reinterpret(&self, x: &AlgElem, to: Label) -> Result<AlgElem> {
        if x.upper == to {
            return Ok(x.clone());
        }
        let mut out = AlgElem::zero(x.lower, to);
        for (i, c) in &x.coeffs {
            out.add_scaled(&self.reinterpret_basis(x.lower, x.upper, to, *i)?, c);
        }
        Ok(out)
    }

    /// Rewrites every slot of a tensor into the given pieces.
    fn reinterpret_tensor(&self, t: &Tensor, pieces: &[Piece]) -> Result<Tensor> {
        if t.pieces == pieces {
            return Ok(t.clone());
        }
        if t.rank() != pieces.len() {
            return Err(Error::Grading("tensor rank mismatch".into()));
        }
        let mut cur = t.clone();
        for (k, p) in pieces.iter().enumerate() {
            let (l, u) = cur.pieces[k];
            if l != p.0 {
                return Err(Error::Grading(format!("slot {k}: lower label {l} vs {}", p.0)));
            }
            if u != p.1 {
                cur = cur.map_slot(k, |i| Ok(Tensor::from_elem(&self.reinterpret_basis(l, u, p.1, i)?)))?;
            }
        }
        Ok(cur)
    }

    /// Equality of elements up to identification of pieces.
    fn elem_eq(&self, x: &AlgElem, y: &AlgElem) -> Result<bool> {
        if x.lower != y.lower {
            return Ok(false);
        }
        Ok(*x == self.reinterpret(y, x.upper)?)
    }

    fn tensor_eq(&self, x: &Tensor, y: &Tensor) -> Result<bool> {
        if x.rank() != y.rank() {
            return Ok(false);
        }
        if x.pieces.iter().zip(&y.pieces).any(|(a, b)| a.0 != b.0) {
            return Ok(false);
        }
        Ok(*x == self.reinterpret_tensor(y, &x.pieces)?)
    }

    /// Slotwise product of two tensors of equal rank and matching lower labels.
    fn tensor_product(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        if x.rank() != y.rank() {
            return Err(Error::Grading("slotwise product of tensors of different rank".into()));
        }
        let pieces: Vec<Piece> = x
            .pieces
            .iter()
            .zip(&y.pieces)
            .map(|(a, b)| {
                if a.0 != b.0 {
                    Err(Error::Grading(format!("slotwise product with lower labels {} and {}", a.0, b.0)))
                } else {
                    Ok((a.0, a.1 + b.1))
                }
            })
            .collect::<Result<_>>()?;
        let mut out = Tensor::zero(pieces.clone());
        for (i, a) in &x.coeffs {
            for (j, b) in &y.coeffs {
                let mut term = Tensor::scalar(a * b);
                for k in 0..i.len() {
                    let p = self.mul_basis(x.pieces[k].0, x.pieces[k].1, i[k], y.pieces[k].1, j[k])?;
                    term = term.otimes(&Tensor::from_elem(&p));
                }
                out.add_scaled(&term, &self.one());
            }
        }
        Ok(out)
    }

    /// Applies the coproduct `Delta_{a1,a2}` to slot `k`.
    fn coproduct_slot(&self, t: &Tensor, k: usize, a1: Label, a2: Label) -> Result<Tensor> {
        let (l, u) = t.pieces[k];
        if a1 + a2 != l {
            return Err(Error::Grading(format!("coproduct ({a1},{a2}) on slot of lower label {l}")));
        }
        t.map_slot(k, |i| self.coproduct_basis(a1, a2, u, i))
    }

    /// Applies the antipode to slot `k`.
    fn antipode_slot(&self, t: &Tensor, k: usize) -> Result<Tensor> {
        let (l, u) = t.pieces[k];
        t.map_slot(k, |i| Ok(Tensor::from_elem(&self.antipode_basis(l, u, i)?)))
    }

    fn antipode_inv_slot(&self, t: &Tensor, k: usize) -> Result<Tensor> {
        let (l, u) = t.pieces[k];
        t.map_slot(k, |i| Ok(Tensor::from_elem(&self.antipode_inv_basis(l, u, i)?)))
    }

    /// Applies the counit to slot `k`, removing it.
    fn counit_slot(&self, t: &Tensor, k: usize) -> Result<Tensor> {
        let (l, u) = t.pieces[k];
        if !l.is_zero() {
            return Err(Error::Grading(format!("counit on slot of lower label {l}")));
        }
        t.map_slot(k, |i| Ok(Tensor::scalar(self.counit_basis(u, i)?)))
    }

    /// Right-nested iterated coproduct `x_(1,a_1) (x) ... (x) x_(n,a_n)`.
    fn iterated_coproduct(&self, x: &AlgElem, labels: &[Label]) -> Result<Tensor> {
        let total = labels.iter().fold(Label::ZERO, |a, b| a + *b);
        if total != x.lower {
            return Err(Error::Grading(format!("iterated coproduct to labels summing to {total}, element has {}", x.lower)));
        }
        match labels.len() {
            0 => Ok(Tensor::scalar(self.counit(x)?)),
            1 => Ok(Tensor::from_elem(x)),
            n => {
                let rest = labels[1..].iter().fold(Label::ZERO, |a, b| a + *b);
                let mut t = self.coproduct(x, labels[0], rest)?;
                let mut acc = rest;
                for k in 1..n - 1 {
                    acc = acc - labels[k];
                    t = self.coproduct_slot(&t, k, labels[k], acc)?;
                }
                Ok(t)
            }
        }
    }
}

/// Ribbon structure: R-matrix, ribbon and pivotal elements.
pub trait RibbonHopfG: HopfGAlgebra {
    /// The label written `a/2` for the chosen representative of `a`.
    fn half(&self, a: Label) -> Label;
    /// `R_{a,b}` in `H_a^{b/2} (x) H_b^{a/2}`.
    fn r_matrix(&self, a: Label, b: Label) -> Result<Tensor>;
    /// `R_{a,b}^{-1}` in `H_a^{-b/2} (x) H_b^{-a/2}`.
    fn r_matrix_inv(&self, a: Label, b: Label) -> Result<Tensor>;
    /// Drinfeld element `u_a` in `H_a^{-a}`.
    fn drinfeld_u(&self, a: Label) -> Result<AlgElem>;
    /// `u_a^{-1}` in `H_a^{a}`.
    fn drinfeld_u_inv(&self, a: Label) -> Result<AlgElem>;
    /// Ribbon element `v_a` in `H_a^{-a}`.
    fn ribbon(&self, a: Label) -> Result<AlgElem>;
    /// `v_a^{-1}` in `H_a^{a}`.
    fn ribbon_inv(&self, a: Label) -> Result<AlgElem>;
    /// Pivotal element `g_a` in `H_a^0`.
    fn pivotal(&self, a: Label) -> Result<AlgElem>;
    fn pivotal_inv(&self, a: Label) -> Result<AlgElem>;
}

/// Left integral and two-sided cointegral.
pub trait FactorizableHopfG: RibbonHopfG {
    /// `lambda_a` on basis vector `i` of `H_a^0`.
    fn integral_basis(&self, a: Label, i: usize) -> Result<CycScalar>;
    /// `Lambda^a` in `H_0^a`.
    fn cointegral(&self, a: Label) -> Result<AlgElem>;

    fn integral(&self, x: &AlgElem) -> Result<CycScalar> {
        if !x.upper.is_zero() {
            return Err(Error::Grading(format!("integral of element of upper label {}", x.upper)));
        }
        let mut acc = self.field().zero();
        for (i, c) in &x.coeffs {
            acc = acc + c * &self.integral_basis(x.lower, *i)?;
        }
        Ok(acc)
    }
}

/// The two legs of an R-matrix term, split out of a rank-2 tensor.
pub fn r_terms(h: &dyn HopfGAlgebra, r: &Tensor) -> Vec<(AlgElem, AlgElem, CycScalar)> {
    let (p1, p2) = (r.pieces[0], r.pieces[1]);
    r.coeffs
        .iter()
        .map(|(i, c)| (h.basis(p1.0, p1.1, i[0]), h.basis(p2.0, p2.1, i[1]), c.clone()))
        .collect()
}

/// Drinfeld map `D_{a,b}(f) = f(R''_i R'_j) R'_i R''_j`, with `R_i` from `R_{b,a}` and `R_j`
/// from `R_{a,b}`. The functional `f` on `H_a^b` is given by its values on basis vectors.
pub fn drinfeld_map<H, F>(h: &H, a: Label, b: Label, f: F) -> Result<AlgElem>
where
    H: RibbonHopfG + ?Sized,
    F: Fn(usize) -> Result<CycScalar>,
{
    let ri = h.r_matrix(b, a)?;
    let rj = h.r_matrix(a, b)?;
    let upper = h.half(a) + h.half(a);
    let mut out = AlgElem::zero(b, upper);
    let mut fvals: BTreeMap<usize, CycScalar> = BTreeMap::new();
    for (ii, ci) in &ri.coeffs {
        for (jj, cj) in &rj.coeffs {
            // f(R''_i R'_j)
            let left = h.mul_basis(a, ri.pieces[1].1, ii[1], rj.pieces[0].1, jj[0])?;
            let left = h.reinterpret(&left, b)?;
            let mut fv = h.field().zero();
            for (k, c) in &left.coeffs {
                if !fvals.contains_key(k) {
                    fvals.insert(*k, f(*k)?);
                }
                fv = fv + c * &fvals[k];
            }
            if fv.is_zero() {
                continue;
            }
            let right = h.mul_basis(b, ri.pieces[0].1, ii[0], rj.pieces[1].1, jj[1])?;
            let right = h.reinterpret(&right, upper)?;
            out.add_scaled(&right, &(&(ci * cj) * &fv));
        }
    }
    h.reinterpret(&out, a)
}

/// Adjoint action `x |> y = x_(1,a) y S(x_(2,-a))` of `x` in `H_0^c` on `y` in `H_a^b`;
/// the result lies in `H_a^b`.
pub fn adjoint_act<H: HopfGAlgebra + ?Sized>(h: &H, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
    if !x.lower.is_zero() {
        return Err(Error::Grading(format!("adjoint action by element of lower label {}", x.lower)));
    }
    let a = y.lower;
    let d = h.coproduct(x, a, -a)?;
    let mut out = AlgElem::zero(a, y.upper);
    for (idx, c) in &d.coeffs {
        let x1 = h.basis(a, d.pieces[0].1, idx[0]);
        let x2 = h.antipode_basis(-a, d.pieces[1].1, idx[1])?;
        let p = h.product(&h.product(&x1, y)?, &x2)?;
        out.add_scaled(&h.reinterpret(&p, y.upper)?, c);
    }
    Ok(out)
}

/// Adjoint action of `x` in `H_0^c` on a tensor of adjoint modules, through the
/// iterated coproduct `Delta_{0,...,0}`.
pub fn adjoint_act_tensor<H: HopfGAlgebra + ?Sized>(h: &H, x: &AlgElem, t: &Tensor) -> Result<Tensor> {
    let k = t.rank();
    if k == 0 {
        let e = h.counit(x)?;
        let mut out = t.clone();
        for v in out.coeffs.values_mut() {
            *v = &*v * &e;
        }
        return Ok(out);
    }
    let xs = h.iterated_coproduct(x, &vec![Label::ZERO; k])?;
    let mut out = Tensor::zero(t.pieces.clone());
    for (xi, xc) in &xs.coeffs {
        for (ti, tc) in &t.coeffs {
            let mut term = Tensor::scalar(xc * tc);
            for s in 0..k {
                let xe = h.basis(Label::ZERO, xs.pieces[s].1, xi[s]);
                let ye = h.basis(t.pieces[s].0, t.pieces[s].1, ti[s]);
                term = term.otimes(&Tensor::from_elem(&adjoint_act(h, &xe, &ye)?));
            }
            out.add_scaled(&term, &h.one());
        }
    }
    Ok(out)
}
