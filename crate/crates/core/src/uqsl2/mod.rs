//! The small quantum group of sl2 at an odd root of unity as a factorizable
//! ribbon Hopf G-bialgebra, `G = Q/2Z`, in the integral basis
//! `E^l F^(m) T^b_{2n+a}` of each piece `u_a^b`.
//!
//! Every formula works with the chosen representatives `rep(a) = a + 2*shift`.
//! Upper labels differing by an integer name the same space
//! (`T^{b+k}_x = q^{xk} T^b_x`), and `reinterpret_basis` applies that identification.

pub mod kbasis;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::hopf::{adjoint_act, AlgElem, FactorizableHopfG, HopfGAlgebra, Piece, RibbonHopfG, Tensor};
use crate::label::Label;
use crate::scalar::{CycScalar, CyclotomicField, FieldParams, Rat};

/// Parameters of the quantum group instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sl2Params {
    pub r: u32,
    pub denominator: u32,
    /// Representatives are `value + 2*shift`, `value` in `[0, 2)`.
    pub shift: i64,
}

impl Sl2Params {
    pub fn new(r: u32, denominator: u32) -> Result<Self> {
        FieldParams::new(r, denominator)?;
        Ok(Sl2Params { r, denominator, shift: 0 })
    }

    pub fn with_shift(mut self, shift: i64) -> Self {
        self.shift = shift;
        self
    }
}

type GenCache = HashMap<Label, Arc<(Vec<AlgElem>, Vec<AlgElem>)>>;

pub struct Sl2 {
    params: Sl2Params,
    fp: FieldParams,
    field: &'static CyclotomicField,
    r: i64,
    sqrt_r: CycScalar,
    qfact: Vec<CycScalar>,
    qbin: Vec<Vec<CycScalar>>,
    brace1: CycScalar,
    coproduct_cache: Mutex<HashMap<(Label, Label), Arc<Vec<Tensor>>>>,
    r_cache: Mutex<HashMap<(Label, Label), Arc<Tensor>>>,
    elem_cache: Mutex<HashMap<(u8, Label), Arc<AlgElem>>>,
    sinv_cache: Mutex<GenCache>,
}

/// Splits a basis index into `(l, m, n)`.
pub fn decode(r: usize, i: usize) -> (usize, usize, usize) {
    (i / (r * r), (i / r) % r, i % r)
}

pub fn encode(r: usize, l: usize, m: usize, n: usize) -> usize {
    (l * r + m) * r + n
}

fn ri(x: i64) -> Rat {
    Rat::from_integer(x)
}

impl Sl2 {
    pub fn new(params: Sl2Params) -> Result<Self> {
        let fp = FieldParams::new(params.r, params.denominator)?;
        let field = fp.field();
        let r = params.r as i64;
        let sqrt_r = fp.sqrt_rprime();
        let brace1 = fp.brace(ri(1))?;
        let mut qfact = vec![field.one()];
        for k in 1..r {
            let qk = fp.brace(ri(k))?.div(&brace1)?;
            let prev = qfact.last().unwrap().clone();
            qfact.push(prev * qk);
        }
        let mut qbin = Vec::new();
        for n in 0..r as usize {
            let row = (0..=n)
                .map(|k| qfact[n].div(&(&qfact[k] * &qfact[n - k])))
                .collect::<Result<Vec<_>>>()?;
            qbin.push(row);
        }
        Ok(Sl2 {
            params,
            fp,
            field,
            r,
            sqrt_r,
            qfact,
            qbin,
            brace1,
            coproduct_cache: Mutex::new(HashMap::new()),
            r_cache: Mutex::new(HashMap::new()),
            elem_cache: Mutex::new(HashMap::new()),
            sinv_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn params(&self) -> Sl2Params {
        self.params
    }

    pub fn field_params(&self) -> FieldParams {
        self.fp
    }

    pub fn r(&self) -> usize {
        self.r as usize
    }

    pub fn sqrt_r(&self) -> &CycScalar {
        &self.sqrt_r
    }

    /// Chosen representative of a label.
    pub fn rep(&self, a: Label) -> Rat {
        a.value() + ri(2 * self.params.shift)
    }

    /// Rejects labels outside the subgroup `(1/D)Z/2Z`.
    pub fn check_label(&self, a: Label) -> Result<()> {
        if a.fits_denominator(self.params.denominator) {
            Ok(())
        } else {
            Err(Error::Label(format!("{a} does not have denominator dividing {}", self.params.denominator)))
        }
    }

    /// `q^e`.
    pub fn q(&self, e: Rat) -> CycScalar {
        self.fp.q_power(e).expect("exponent outside the field; label denominator too large")
    }

    /// `{x} = q^x - q^-x`.
    pub fn brace(&self, x: Rat) -> CycScalar {
        &self.q(x) - &self.q(-x)
    }

    /// `{x;k} = prod_{j<k} {x-j}`.
    pub fn brace_seq(&self, x: Rat, k: usize) -> CycScalar {
        let mut acc = self.field.one();
        for j in 0..k {
            acc = acc * self.brace(x - ri(j as i64));
        }
        acc
    }

    /// `[k]!` for `0 <= k < r`.
    pub fn qfactorial(&self, k: usize) -> &CycScalar {
        &self.qfact[k]
    }

    /// Gaussian binomial `[n k]` for `0 <= k <= n < r`.
    pub fn qbinom(&self, n: usize, k: usize) -> CycScalar {
        self.qbin[n][k].clone()
    }

    fn sign(&self, k: usize) -> CycScalar {
        if k.is_multiple_of(2) {
            self.field.one()
        } else {
            -self.field.one()
        }
    }

    /// Writes `E^l F^(m) T^e_x` in the basis of `u_a^b`: returns the basis index and scalar,
    /// or `None` when the element vanishes (out-of-range exponents or `x` not in the
    /// class of `a`).
    pub fn term(&self, a: Label, b: Label, l: usize, m: usize, e: Rat, x: Rat) -> Result<Option<(usize, CycScalar)>> {
        if l >= self.r() || m >= self.r() {
            return Ok(None);
        }
        let k = e - self.rep(b);
        if !k.is_integer() {
            return Err(Error::Grading(format!("T^{e} does not lie in upper piece {b}")));
        }
        let d = x - self.rep(a);
        if !d.is_integer() {
            return Ok(None);
        }
        let n = (d.to_integer() * (self.r + 1) / 2).rem_euclid(self.r) as usize;
        Ok(Some((encode(self.r(), l, m, n), self.q(x * k))))
    }

    fn term_elem(&self, a: Label, b: Label, l: usize, m: usize, e: Rat, x: Rat) -> Result<AlgElem> {
        let mut out = AlgElem::zero(a, b);
        if let Some((i, c)) = self.term(a, b, l, m, e, x)? {
            out.add_term(i, &c);
        }
        Ok(out)
    }

    /// `T^e_x` as an element of `u_a^{Label(e)}`.
    pub fn t_elem(&self, a: Label, e: Rat, x: Rat) -> Result<AlgElem> {
        self.term_elem(a, Label::new(e), 0, 0, e, x)
    }

    /// Basis vector `E^l F^(m) T^{rep b}_{2n+rep a}`.
    pub fn basis_lmn(&self, a: Label, b: Label, l: usize, m: usize, n: usize) -> AlgElem {
        self.basis(a, b, encode(self.r(), l, m, n))
    }

    /// `K^x` in `u_a^{Label(x)}` for any rational `x`.
    pub fn k_pow(&self, a: Label, x: Rat) -> AlgElem {
        let b = Label::new(x);
        let shift = x - self.rep(b);
        let mut out = AlgElem::zero(a, b);
        for n in 0..self.r() {
            let lam = ri(2 * n as i64) + self.rep(a);
            out.add_term(encode(self.r(), 0, 0, n), &self.q(lam * shift));
        }
        out
    }

    fn cached_elem<F: FnOnce() -> Result<AlgElem>>(&self, tag: u8, a: Label, f: F) -> Result<AlgElem> {
        if let Some(x) = self.elem_cache.lock().unwrap().get(&(tag, a)) {
            return Ok((**x).clone());
        }
        let x = f()?;
        self.elem_cache.lock().unwrap().insert((tag, a), Arc::new(x.clone()));
        Ok(x)
    }

    /// `E^l F^(m)` (times `1_a`) in `u_a^0`.
    pub fn ef_elem(&self, a: Label, l: usize, m: usize) -> AlgElem {
        let mut out = AlgElem::zero(a, Label::ZERO);
        for n in 0..self.r() {
            let lam = ri(2 * n as i64) + self.rep(a);
            if let Some((i, c)) = self.term(a, Label::ZERO, l, m, ri(0), lam).expect("upper 0") {
                out.add_term(i, &c);
            }
        }
        out
    }

    /// `E` in `u_a^0`.
    pub fn e_elem(&self, a: Label) -> AlgElem {
        self.ef_elem(a, 1, 0)
    }

    /// `F` in `u_a^0`.
    pub fn f_elem(&self, a: Label) -> AlgElem {
        self.ef_elem(a, 0, 1).scale(&self.brace1.inv().expect("{1} != 0"))
    }

    fn power(&self, x: &AlgElem, k: usize) -> Result<AlgElem> {
        let mut acc = self.unit(x.lower);
        for _ in 0..k {
            acc = self.product(&acc, x)?;
        }
        Ok(acc)
    }

    /// `S^{-1}(F)^(m)` and `S^{-1}(E)^l` in `u_a^0`, `0 <= m,l < r`.
    fn sinv_generator_powers(&self, a: Label) -> Result<Arc<(Vec<AlgElem>, Vec<AlgElem>)>> {
        if let Some(x) = self.sinv_cache.lock().unwrap().get(&a) {
            return Ok(x.clone());
        }
        let minus_one = -self.field.one();
        let fk = self.product(&self.f_elem(a), &self.k_pow(a, ri(1)))?.scale(&minus_one);
        let ke = self.product(&self.k_pow(a, ri(-1)), &self.e_elem(a))?.scale(&minus_one);
        let mut fs = Vec::new();
        let mut es = Vec::new();
        let mut fpow = self.unit(a);
        let mut epow = self.unit(a);
        for m in 0..self.r() {
            let c = self.brace1.pow(m as u32).div(&self.qfact[m])?;
            fs.push(fpow.scale(&c));
            es.push(epow.clone());
            fpow = self.product(&fpow, &fk)?;
            epow = self.product(&epow, &ke)?;
        }
        let v = Arc::new((fs, es));
        self.sinv_cache.lock().unwrap().insert(a, v.clone());
        Ok(v)
    }

    fn coproduct_table(&self, a1: Label, a2: Label) -> Result<Arc<Vec<Tensor>>> {
        if let Some(t) = self.coproduct_cache.lock().unwrap().get(&(a1, a2)) {
            return Ok(t.clone());
        }
        let table = Arc::new(
            (0..self.dim())
                .map(|i| self.coproduct_basis_uncached(a1, a2, i))
                .collect::<Result<Vec<_>>>()?,
        );
        let mut cache = self.coproduct_cache.lock().unwrap();
        if cache.len() > 128 {
            cache.clear();
        }
        cache.insert((a1, a2), table.clone());
        Ok(table)
    }

    /// `Delta(F^(a) E^b T^e_x)` into pieces `(a1, Label(e)) (x) (a2, Label(e))`.
    fn coproduct_fe(&self, a1: Label, a2: Label, fa: usize, eb: usize, e: Rat, x: Rat) -> Result<Tensor> {
        let ue = Label::new(e);
        let pieces = vec![(a1, ue), (a2, ue)];
        let mut out = Tensor::zero(pieces);
        for c in 0..self.r() {
            let mu = self.rep(a2) - ri(2 * c as i64);
            for i in 0..=fa {
                for j in 0..=eb {
                    let ij = (i + j) as i64;
                    let ex = (ri(fa as i64) - x) * ri(i as i64)
                        + ri((eb * j) as i64)
                        + mu * ri(ij)
                        - ri(ij * ij);
                    let coef = self.qbinom(eb, j) * self.q(ex);
                    // F^(a-i) E^j T_{x-mu}: reorder into the E-F basis
                    let left = self.fe_to_basis(a1, ue, fa - i, j, e, x - mu)?;
                    let right = self.fe_to_basis(a2, ue, i, eb - j, e, mu)?;
                    let t = Tensor::from_elem(&left).otimes(&Tensor::from_elem(&right));
                    out.add_scaled(&t, &coef);
                }
            }
        }
        Ok(out)
    }

    /// `F^(a) E^b T^e_x` in the basis of `u_l^u`.
    pub fn fe_to_basis(&self, l: Label, u: Label, a: usize, b: usize, e: Rat, x: Rat) -> Result<AlgElem> {
        let mut out = AlgElem::zero(l, u);
        for k in 0..=a.min(b) {
            let c = self.qbinom(b, k) * self.brace_seq(ri(a as i64 - b as i64) - x, k);
            if c.is_zero() {
                continue;
            }
            if let Some((idx, s)) = self.term(l, u, b - k, a - k, e, x)? {
                out.add_term(idx, &(c * s));
            }
        }
        Ok(out)
    }

    fn coproduct_basis_uncached(&self, a1: Label, a2: Label, i: usize) -> Result<Tensor> {
        let a = a1 + a2;
        let (l, m, n) = decode(self.r(), i);
        let lam = ri(2 * n as i64) + self.rep(a);
        // E^l F^(m) T^e_lam = (E^l T^0_{lam-2m}) (F^(m) T^e_lam), e = rep(0)
        let de = self.coproduct_fe(a1, a2, 0, l, ri(0), lam - ri(2 * m as i64))?;
        let df = self.coproduct_fe(a1, a2, m, 0, self.rep(Label::ZERO), lam)?;
        self.tensor_product(&de, &df)
    }

    /// Maps an element to the coordinates of the instance with representative shift 0.
    pub fn to_canonical(&self, x: &AlgElem) -> AlgElem {
        let s = self.params.shift;
        let mut out = AlgElem::zero(x.lower, x.upper);
        for (i, c) in &x.coeffs {
            let (l, m, n) = decode(self.r(), *i);
            let lam = ri(2 * n as i64) + self.rep(x.lower);
            let n0 = (n as i64 + s).rem_euclid(self.r) as usize;
            out.add_term(encode(self.r(), l, m, n0), &(c * &self.q(lam * ri(2 * s))));
        }
        out
    }

    pub fn tensor_to_canonical(&self, t: &Tensor) -> Tensor {
        let mut cur = t.clone();
        for k in 0..t.rank() {
            let (l, u) = cur.pieces[k];
            cur = cur
                .map_slot(k, |i| Ok(Tensor::from_elem(&self.to_canonical(&self.basis(l, u, i)))))
                .expect("canonical map is total");
        }
        cur
    }

    /// R-matrix in the form with the projector on the right leg:
    /// `sum_{b,c} q^{c(c-1)/2 - (b+B/2)A} K^{b+B/2} E^c (x) T^{A/2}_{2b+B} F^(c)`.
    pub fn r_matrix_t_right(&self, a: Label, b: Label) -> Result<Tensor> {
        let (aa, bb) = (self.rep(a), self.rep(b));
        let two = ri(2);
        let mut out = Tensor::zero(vec![(a, self.half(b)), (b, self.half(a))]);
        for bi in 0..self.r() {
            let kb = self.reinterpret(&self.k_pow(a, ri(bi as i64) + bb / two), self.half(b))?;
            for c in 0..self.r() {
                let cc = ri(c as i64);
                let coef = self.q(cc * (cc - ri(1)) / two - (ri(bi as i64) + bb / two) * aa);
                let left = self.product(&kb, &self.power(&self.e_elem(a), c)?)?;
                let t = self.t_elem(b, aa / two, ri(2 * bi as i64) + bb)?;
                let fc = self.ef_elem(b, 0, c);
                let right = self.reinterpret(&self.product(&t, &fc)?, self.half(a))?;
                let left = self.reinterpret(&left, self.half(b))?;
                out.add_scaled(&Tensor::from_elem(&left).otimes(&Tensor::from_elem(&right)), &coef);
            }
        }
        Ok(out)
    }

    /// R-matrix from the triple sum over `K`-powers, including the normalization `1/r'`:
    /// `(1/r') sum_{a,b,c} q^{c(c-1)/2 - 2(b+B/2)(a+A/2)} K^{b+B/2} E^c (x) K^{a+A/2} F^(c)`.
    pub fn r_matrix_k_form(&self, a: Label, b: Label) -> Result<Tensor> {
        let (aa, bb) = (self.rep(a), self.rep(b));
        let two = ri(2);
        let mut out = Tensor::zero(vec![(a, self.half(b)), (b, self.half(a))]);
        let inv_r = self.field.from_rat(Rat::new(1, self.r));
        let fdiv: Vec<AlgElem> = (0..self.r()).map(|c| self.ef_elem(b, 0, c)).collect();
        for ai in 0..self.r() {
            let ka = self.reinterpret(&self.k_pow(b, ri(ai as i64) + aa / two), self.half(a))?;
            for bi in 0..self.r() {
                let kb = self.reinterpret(&self.k_pow(a, ri(bi as i64) + bb / two), self.half(b))?;
                for c in 0..self.r() {
                    let cc = ri(c as i64);
                    let ex = cc * (cc - ri(1)) / two - two * (ri(bi as i64) + bb / two) * (ri(ai as i64) + aa / two);
                    let left = self.product(&kb, &self.power(&self.e_elem(a), c)?)?;
                    let right = self.product(&ka, &fdiv[c])?;
                    let t = Tensor::from_elem(&left).otimes(&Tensor::from_elem(&right));
                    out.add_scaled(&t, &(self.q(ex) * &inv_r));
                }
            }
        }
        Ok(out)
    }

    /// Solves `x w = 1` for `w` in `u_a^{-b}`.
    pub fn inverse(&self, x: &AlgElem) -> Result<AlgElem> {
        let d = self.dim();
        let target = -x.upper;
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let p = self.product(x, &self.basis(x.lower, target, j))?;
            cols.push(self.reinterpret(&p, Label::ZERO)?);
        }
        let one = self.unit(x.lower);
        let mut rows: Vec<Vec<CycScalar>> = (0..d)
            .map(|i| {
                let mut row: Vec<CycScalar> =
                    cols.iter().map(|c| c.coeff(i).cloned().unwrap_or_else(|| self.field.zero())).collect();
                row.push(one.coeff(i).cloned().unwrap_or_else(|| self.field.zero()));
                row
            })
            .collect();
        for c in 0..d {
            let piv = (c..d)
                .find(|r| !rows[*r][c].is_zero())
                .ok_or_else(|| Error::NotInvertible(format!("element of piece ({}, {})", x.lower, x.upper)))?;
            rows.swap(c, piv);
            let p = rows[c][c].inv()?;
            for k in c..=d {
                rows[c][k] = &rows[c][k] * &p;
            }
            for r in 0..d {
                if r != c && !rows[r][c].is_zero() {
                    let f = rows[r][c].clone();
                    for k in c..=d {
                        let t = &f * &rows[c][k];
                        rows[r][k] = &rows[r][k] - &t;
                    }
                }
            }
        }
        let mut w = AlgElem::zero(x.lower, target);
        for (i, row) in rows.iter().enumerate() {
            w.add_term(i, &row[d]);
        }
        Ok(w)
    }
}

impl HopfGAlgebra for Sl2 {
    fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    fn dim(&self) -> usize {
        self.r().pow(3)
    }

    fn basis_name(&self, i: usize) -> String {
        let (l, m, n) = decode(self.r(), i);
        format!("E^{l} F^({m}) T_{{2*{n}+a}}")
    }

    fn mul_basis(&self, a: Label, b: Label, i: usize, c: Label, j: usize) -> Result<AlgElem> {
        let r = self.r();
        let (l, m, n) = decode(r, i);
        let (l2, m2, n2) = decode(r, j);
        let bc = b + c;
        let mut out = AlgElem::zero(a, bc);
        if (n as i64 - n2 as i64 - l2 as i64 + m2 as i64).rem_euclid(self.r) != 0 {
            return Ok(out);
        }
        let (aa, bb, cc) = (self.rep(a), self.rep(b), self.rep(c));
        let lam2 = ri(2 * n2 as i64) + aa;
        let pref = self.q(ri(2) * bb * ri(l2 as i64 - m2 as i64));
        let nu = lam2 - ri(2 * m2 as i64);
        for k in 0..=m.min(l2) {
            let nl = l + l2 - k;
            let nm = m - k + m2;
            if nl >= r || nm >= r {
                continue;
            }
            let coef = self.qbinom(l2, k) * self.brace_seq(ri(m as i64 - l2 as i64) - nu, k) * self.qbinom(nm, m2);
            if coef.is_zero() {
                continue;
            }
            if let Some((idx, s)) = self.term(a, bc, nl, nm, bb + cc, lam2)? {
                out.add_term(idx, &(&(&coef * &pref) * &s));
            }
        }
        Ok(out)
    }

    fn unit(&self, a: Label) -> AlgElem {
        let mut out = AlgElem::zero(a, Label::ZERO);
        for n in 0..self.r() {
            let lam = ri(2 * n as i64) + self.rep(a);
            out.add_term(encode(self.r(), 0, 0, n), &self.q(-lam * self.rep(Label::ZERO)));
        }
        out
    }

    fn coproduct_basis(&self, a1: Label, a2: Label, upper: Label, i: usize) -> Result<Tensor> {
        let t = self.coproduct_table(a1, a2)?;
        // the coefficients in the bases T^{rep b} do not depend on b
        let mut out = t[i].clone();
        out.pieces = vec![(a1, upper), (a2, upper)];
        Ok(out)
    }

    fn counit_basis(&self, _upper: Label, i: usize) -> Result<CycScalar> {
        let (l, m, n) = decode(self.r(), i);
        if l != 0 || m != 0 {
            return Ok(self.field.zero());
        }
        let lam = 2 * n as i64 + 2 * self.params.shift;
        Ok(if lam.rem_euclid(self.r) == 0 { self.field.one() } else { self.field.zero() })
    }

    fn antipode_basis(&self, a: Label, b: Label, i: usize) -> Result<AlgElem> {
        let (l, m, n) = decode(self.r(), i);
        let lam = ri(2 * n as i64) + self.rep(a);
        let bb = self.rep(b);
        let na = -a;
        let zero = Label::ZERO;
        let (mi, li) = (m as i64, l as i64);
        // S(T^B_lam) = T^{-B}_{-lam}
        let st = self.term_elem(na, -b, 0, 0, -bb, -lam)?;
        // S(F^(m) T^0_lam) = (-1)^m q^{(m-lam-1)m} F^(m) T^0_{-lam+2m}
        let sf = self
            .term_elem(na, zero, 0, m, ri(0), -lam + ri(2 * mi))?
            .scale(&(self.sign(m) * self.q((ri(mi) - lam - ri(1)) * ri(mi))));
        // S(E^l T^0_{lam'}) = (-1)^l q^{(l+lam'+1)l} E^l T^0_{-lam'-2l}, lam' = lam - 2m
        let lp = lam - ri(2 * mi);
        let se = self
            .term_elem(na, zero, l, 0, ri(0), -lp - ri(2 * li))?
            .scale(&(self.sign(l) * self.q((ri(li) + lp + ri(1)) * ri(li))));
        let p = self.product(&self.product(&st, &sf)?, &se)?;
        self.reinterpret(&p, -b)
    }

    fn antipode_inv_basis(&self, a: Label, b: Label, i: usize) -> Result<AlgElem> {
        let (l, m, n) = decode(self.r(), i);
        let lam = ri(2 * n as i64) + self.rep(a);
        let na = -a;
        let gens = self.sinv_generator_powers(na)?;
        let st = self.term_elem(na, -b, 0, 0, -self.rep(b), -lam)?;
        let p = self.product(&self.product(&st, &gens.0[m])?, &gens.1[l])?;
        self.reinterpret(&p, -b)
    }

    fn reinterpret_basis(&self, a: Label, from: Label, to: Label, i: usize) -> Result<AlgElem> {
        let (l, m, n) = decode(self.r(), i);
        let lam = ri(2 * n as i64) + self.rep(a);
        let k = self.rep(from) - self.rep(to);
        if !k.is_integer() {
            return Err(Error::Grading(format!("upper labels {from} and {to} name different spaces")));
        }
        let mut out = AlgElem::zero(a, to);
        out.add_term(encode(self.r(), l, m, n), &self.q(lam * k));
        Ok(out)
    }
}

impl RibbonHopfG for Sl2 {
    fn half(&self, a: Label) -> Label {
        Label::new(self.rep(a) / ri(2))
    }

    fn r_matrix(&self, a: Label, b: Label) -> Result<Tensor> {
        if let Some(t) = self.r_cache.lock().unwrap().get(&(a, b)) {
            return Ok((**t).clone());
        }
        let (aa, bb) = (self.rep(a), self.rep(b));
        let two = ri(2);
        let (hb, ha) = (self.half(b), self.half(a));
        let mut out = Tensor::zero(vec![(a, hb), (b, ha)]);
        for ai in 0..self.r() {
            for c in 0..self.r() {
                let cc = ri(c as i64);
                let an = ri(ai as i64);
                let left = self.term(a, hb, c, 0, bb / two, two * an + aa - two * cc)?;
                let Some((li, ls)) = left else { continue };
                for n in 0..self.r() {
                    let nn = ri(n as i64);
                    let right = self.term(b, ha, 0, c, aa / two, two * nn + bb)?;
                    let Some((rj, rs)) = right else { continue };
                    let ex = cc * (cc - ri(1)) / two - (an + aa / two) * bb + bb * cc - (two * an + aa) * cc
                        + (two * nn + bb) * an;
                    out.add_term(vec![li, rj], &(&(&self.q(ex) * &ls) * &rs));
                }
            }
        }
        self.r_cache.lock().unwrap().insert((a, b), Arc::new(out.clone()));
        Ok(out)
    }

    fn r_matrix_inv(&self, a: Label, b: Label) -> Result<Tensor> {
        // (R_{a,b})^{-1} = (S (x) id) R_{-a,b}
        let r = self.r_matrix(-a, b)?;
        let t = self.antipode_slot(&r, 0)?;
        let pieces: Vec<Piece> = vec![(a, -self.half(b)), (b, -self.half(a))];
        self.reinterpret_tensor(&t, &pieces)
    }

    fn drinfeld_u(&self, a: Label) -> Result<AlgElem> {
        self.cached_elem(0, a, || {
            let r = self.r_matrix(a, -a)?;
            let mut out = AlgElem::zero(a, -a);
            for (idx, c) in &r.coeffs {
                let s2 = self.antipode_basis(-a, r.pieces[1].1, idx[1])?;
                let p = self.product(&s2, &self.basis(a, r.pieces[0].1, idx[0]))?;
                out.add_scaled(&self.reinterpret(&p, -a)?, c);
            }
            Ok(out)
        })
    }

    fn drinfeld_u_inv(&self, a: Label) -> Result<AlgElem> {
        self.cached_elem(1, a, || self.inverse(&self.drinfeld_u(a)?))
    }

    fn ribbon(&self, a: Label) -> Result<AlgElem> {
        self.cached_elem(2, a, || {
            let p = self.product(&self.drinfeld_u(a)?, &self.pivotal_inv(a)?)?;
            self.reinterpret(&p, -a)
        })
    }

    fn ribbon_inv(&self, a: Label) -> Result<AlgElem> {
        self.cached_elem(3, a, || self.inverse(&self.ribbon(a)?))
    }

    fn pivotal(&self, a: Label) -> Result<AlgElem> {
        Ok(self.k_pow(a, ri(1 - self.r)))
    }

    fn pivotal_inv(&self, a: Label) -> Result<AlgElem> {
        Ok(self.k_pow(a, ri(self.r - 1)))
    }
}

impl FactorizableHopfG for Sl2 {
    fn integral_basis(&self, a: Label, i: usize) -> Result<CycScalar> {
        let (l, m, n) = decode(self.r(), i);
        let top = self.r() - 1;
        if l != top || m != top {
            return Ok(self.field.zero());
        }
        let nu = ri(2 * n as i64) + self.rep(a);
        let e = self.rep(Label::ZERO);
        self.q(e * nu + nu * ri(1 - self.r)).div(&self.sqrt_r)
    }

    fn cointegral(&self, a: Label) -> Result<AlgElem> {
        let top = self.r() - 1;
        let x = self.term_elem(Label::ZERO, a, top, top, self.rep(a), ri(0))?;
        Ok(x.scale(&self.sqrt_r))
    }
}

impl Sl2 {
    /// `x |> y` for this instance.
    pub fn act(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
        adjoint_act(self, x, y)
    }

    /// All labels `k/D`.
    pub fn all_labels(&self) -> Vec<Label> {
        Label::all_with_denominator(self.params.denominator)
    }

    /// Whether an element is central in `u_a^{(+)}`: commutes with `E`, `F`, `K`.
    pub fn is_central(&self, x: &AlgElem) -> Result<bool> {
        let a = x.lower;
        for g in [self.e_elem(a), self.f_elem(a), self.k_pow(a, ri(1))] {
            let l = self.product(&g, x)?;
            let r = self.product(x, &g)?;
            if !self.elem_eq(&l, &r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
