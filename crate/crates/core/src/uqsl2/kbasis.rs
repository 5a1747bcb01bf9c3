//! Reference arithmetic for `u_a^b` in the PBW basis `E^l F^m K^{j+b}`, `0 <= l,m,j < r`.
//!
//! Everything here is derived from the defining relations
//! `K E = q^2 E K`, `K F = q^-2 F K`, `[E,F] = (K - K^-1)/(q - q^-1)`, `E^r = F^r = 0`,
//! `K^r = e^{2 pi i a}` in `u_a`, and the Hopf structure on generators. It shares no
//! code path with the projector basis, so it serves as an independent check of it.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::hopf::{AlgElem, Tensor};
use crate::label::Label;
use crate::scalar::{CycScalar, CyclotomicField, FieldParams, Rat};
use crate::uqsl2::{decode, Sl2};

type Mono = (usize, usize, usize);

/// Element of `u_lower^upper`: coefficients of `E^l F^m K^{j + upper}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KElem {
    pub lower: Label,
    pub upper: Label,
    pub c: BTreeMap<Mono, CycScalar>,
}

/// Element of a tensor product of pieces in the PBW basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTensor {
    pub pieces: Vec<(Label, Label)>,
    pub c: BTreeMap<Vec<Mono>, CycScalar>,
}

fn add_into<K: Ord + Clone>(m: &mut BTreeMap<K, CycScalar>, k: K, v: CycScalar) {
    if v.is_zero() {
        return;
    }
    if let Some(x) = m.get_mut(&k) {
        let s = &*x + &v;
        if s.is_zero() {
            m.remove(&k);
        } else {
            *x = s;
        }
    } else {
        m.insert(k, v);
    }
}

pub struct KBasis {
    pub r: usize,
    fp: FieldParams,
    field: &'static CyclotomicField,
    brace1: CycScalar,
}

fn ri(x: i64) -> Rat {
    Rat::from_integer(x)
}

impl KBasis {
    pub fn new(r: u32, denominator: u32) -> Result<Self> {
        let fp = FieldParams::new(r, denominator)?;
        let brace1 = fp.brace(ri(1))?;
        Ok(KBasis { r: r as usize, fp, field: fp.field(), brace1 })
    }

    fn q(&self, e: Rat) -> CycScalar {
        self.fp.q_power(e).expect("exponent in field")
    }

    /// `K^r` in `u_a`.
    fn k_r(&self, a: Label) -> CycScalar {
        self.field.root_of_unity(a.value()).expect("label root of unity in field")
    }

    pub fn zero(&self, lower: Label, upper: Label) -> KElem {
        KElem { lower, upper, c: BTreeMap::new() }
    }

    /// `c * E^l F^m K^x` in `u_lower^upper`; `x - upper` must be an integer.
    pub fn mono(&self, lower: Label, upper: Label, l: usize, m: usize, x: Rat, c: CycScalar) -> KElem {
        let mut out = self.zero(lower, upper);
        self.add_mono(&mut out, l, m, x, c);
        out
    }

    fn add_mono(&self, out: &mut KElem, l: usize, m: usize, x: Rat, c: CycScalar) {
        if l >= self.r || m >= self.r {
            return;
        }
        let j = x - out.upper.value();
        assert!(j.is_integer(), "K exponent {x} outside upper piece {}", out.upper);
        let j = j.to_integer();
        let r = self.r as i64;
        let wraps = j.div_euclid(r);
        let j = j.rem_euclid(r) as usize;
        let f = if wraps >= 0 {
            self.k_r(out.lower).pow(wraps as u32)
        } else {
            self.k_r(out.lower).inv().expect("root of unity").pow((-wraps) as u32)
        };
        add_into(&mut out.c, (l, m, j), c * f);
    }

    pub fn plus(&self, x: &KElem, y: &KElem) -> KElem {
        let y = self.reupper(y, x.upper);
        let mut out = x.clone();
        for (k, v) in y.c {
            add_into(&mut out.c, k, v);
        }
        out
    }

    pub fn scale(&self, x: &KElem, s: &CycScalar) -> KElem {
        let mut out = self.zero(x.lower, x.upper);
        for (k, v) in &x.c {
            add_into(&mut out.c, *k, v * s);
        }
        out
    }

    /// Same element, written relative to another upper label in the same class mod 1.
    pub fn reupper(&self, x: &KElem, upper: Label) -> KElem {
        if x.upper == upper {
            return x.clone();
        }
        let mut out = self.zero(x.lower, upper);
        for ((l, m, j), v) in &x.c {
            self.add_mono(&mut out, *l, *m, ri(*j as i64) + x.upper.value(), v.clone());
        }
        out
    }

    /// `K^s x` with the result in `u^{upper + s}`.
    fn left_k(&self, s: Rat, x: &KElem) -> KElem {
        let mut out = self.zero(x.lower, x.upper + Label::new(s));
        for ((l, m, j), v) in &x.c {
            let c = v * &self.q(ri(2) * s * ri(*l as i64 - *m as i64));
            self.add_mono(&mut out, *l, *m, ri(*j as i64) + x.upper.value() + s, c);
        }
        out
    }

    fn left_e(&self, x: &KElem) -> KElem {
        let mut out = self.zero(x.lower, x.upper);
        for ((l, m, j), v) in &x.c {
            self.add_mono(&mut out, l + 1, *m, ri(*j as i64) + x.upper.value(), v.clone());
        }
        out
    }

    fn left_f(&self, x: &KElem) -> KElem {
        let mut out = self.zero(x.lower, x.upper);
        let inv1 = self.brace1.inv().expect("{1} != 0");
        for ((l, m, j), v) in &x.c {
            let xk = ri(*j as i64) + x.upper.value();
            self.add_mono(&mut out, *l, m + 1, xk, v.clone());
            // F E^l = E^l F - sum_p E^{l-1} (q^{2(l-1-p)} K - q^{-2(l-1-p)} K^-1) / {1}
            for p in 0..*l {
                let e = ri(2 * (*l as i64 - 1 - p as i64));
                let mm = ri(*m as i64);
                // K F^m = q^{-2m} F^m K
                let cp = -(v * &inv1) * self.q(e - ri(2) * mm);
                let cm = (v * &inv1) * self.q(-e + ri(2) * mm);
                self.add_mono(&mut out, l - 1, *m, xk + ri(1), cp);
                self.add_mono(&mut out, l - 1, *m, xk - ri(1), cm);
            }
        }
        out
    }

    pub fn mul(&self, x: &KElem, y: &KElem) -> KElem {
        assert_eq!(x.lower, y.lower);
        let mut out = self.zero(x.lower, x.upper + y.upper);
        for ((l, m, j), v) in &x.c {
            let mut t = self.left_k(ri(*j as i64) + x.upper.value(), y);
            for _ in 0..*m {
                t = self.left_f(&t);
            }
            for _ in 0..*l {
                t = self.left_e(&t);
            }
            let t = self.reupper(&t, out.upper);
            for (k, w) in t.c {
                add_into(&mut out.c, k, w * v);
            }
        }
        out
    }

    pub fn one(&self, lower: Label) -> KElem {
        self.mono(lower, Label::ZERO, 0, 0, ri(0), self.field.one())
    }

    pub fn k_pow(&self, lower: Label, x: Rat) -> KElem {
        self.mono(lower, Label::new(x), 0, 0, x, self.field.one())
    }

    pub fn e(&self, lower: Label) -> KElem {
        self.mono(lower, Label::ZERO, 1, 0, ri(0), self.field.one())
    }

    pub fn f(&self, lower: Label) -> KElem {
        self.mono(lower, Label::ZERO, 0, 1, ri(0), self.field.one())
    }

    /// Converts an element of the projector basis of `sl2` (with its representatives).
    pub fn from_t(&self, sl2: &Sl2, x: &AlgElem) -> KElem {
        let mut out = self.zero(x.lower, x.upper);
        let inv_r = self.field.from_rat(Rat::new(1, self.r as i64));
        for (i, v) in &x.coeffs {
            let (l, m, n) = decode(self.r, *i);
            let lam = ri(2 * n as i64) + sl2.rep(x.lower);
            let bb = sl2.rep(x.upper);
            let fdiv = self.brace1.pow(m as u32).div(sl2.qfactorial(m)).expect("[m]! != 0");
            for b in 0..self.r {
                let c = v * &fdiv * &inv_r * self.q(-lam * ri(b as i64));
                self.add_mono(&mut out, l, m, ri(b as i64) + bb, c);
            }
        }
        out
    }

    pub fn tensor_from_t(&self, sl2: &Sl2, t: &Tensor) -> KTensor {
        let mut out = KTensor { pieces: t.pieces.clone(), c: BTreeMap::new() };
        for (idx, v) in &t.coeffs {
            let mut acc: Vec<(Vec<Mono>, CycScalar)> = vec![(Vec::new(), v.clone())];
            for (s, i) in idx.iter().enumerate() {
                let e = self.from_t(sl2, &AlgElem::basis(t.pieces[s].0, t.pieces[s].1, *i, self.field.one()));
                let mut next = Vec::new();
                for (k, c) in &acc {
                    for (mono, w) in &e.c {
                        let mut k2 = k.clone();
                        k2.push(*mono);
                        next.push((k2, c * w));
                    }
                }
                acc = next;
            }
            for (k, c) in acc {
                add_into(&mut out.c, k, c);
            }
        }
        out
    }

    /// Rewrites every slot relative to the given upper labels.
    pub fn tensor_reupper(&self, t: &KTensor, pieces: &[(Label, Label)]) -> KTensor {
        let mut out = KTensor { pieces: pieces.to_vec(), c: BTreeMap::new() };
        for (idx, v) in &t.c {
            let mut c = v.clone();
            let mut k = Vec::new();
            for (s, (l, m, j)) in idx.iter().enumerate() {
                let one = self.mono(t.pieces[s].0, pieces[s].1, *l, *m, ri(*j as i64) + t.pieces[s].1.value(), self.field.one());
                let (mono, w) = one.c.into_iter().next().expect("nonzero monomial");
                c = c * w;
                k.push(mono);
            }
            add_into(&mut out.c, k, c);
        }
        out
    }

    fn tensor_left(&self, gens: &[KElem], t: &KTensor) -> KTensor {
        let mut out = KTensor { pieces: Vec::new(), c: BTreeMap::new() };
        let mut pieces_set = false;
        for (idx, v) in &t.c {
            let mut acc: Vec<(Vec<Mono>, CycScalar)> = vec![(Vec::new(), v.clone())];
            let mut pieces = Vec::new();
            for (s, mono) in idx.iter().enumerate() {
                let x = KElem { lower: t.pieces[s].0, upper: t.pieces[s].1, c: [(*mono, self.field.one())].into() };
                let p = self.mul(&gens[s], &x);
                pieces.push((p.lower, p.upper));
                let mut next = Vec::new();
                for (k, c) in &acc {
                    for (m2, w) in &p.c {
                        let mut k2 = k.clone();
                        k2.push(*m2);
                        next.push((k2, c * w));
                    }
                }
                acc = next;
            }
            if !pieces_set {
                out.pieces = pieces;
                pieces_set = true;
            }
            for (k, c) in acc {
                add_into(&mut out.c, k, c);
            }
        }
        if !pieces_set {
            out.pieces = t.pieces.iter().zip(gens).map(|(p, g)| (p.0, p.1 + g.upper)).collect();
        }
        out
    }

    fn tensor_add(&self, a: &mut KTensor, b: KTensor) {
        if a.c.is_empty() && a.pieces.is_empty() {
            a.pieces = b.pieces.clone();
        }
        let b = self.tensor_reupper(&b, &a.pieces.clone());
        for (k, v) in b.c {
            add_into(&mut a.c, k, v);
        }
    }

    /// `Delta_{a1,a2}` from `Delta(E) = E (x) K + 1 (x) E`, `Delta(F) = K^-1 (x) F + F (x) 1`,
    /// `Delta(K^x) = K^x (x) K^x`.
    pub fn coproduct(&self, x: &KElem, a1: Label, a2: Label) -> KTensor {
        assert_eq!(a1 + a2, x.lower);
        let one = self.field.one();
        let mut out = KTensor { pieces: vec![(a1, x.upper), (a2, x.upper)], c: BTreeMap::new() };
        for ((l, m, j), v) in &x.c {
            let kx = ri(*j as i64) + x.upper.value();
            let mut t = KTensor { pieces: vec![(a1, x.upper), (a2, x.upper)], c: BTreeMap::new() };
            t.c.insert(vec![(0, 0, *j), (0, 0, *j)], v.clone());
            let _ = kx;
            for _ in 0..*m {
                let mut s = self.tensor_left(&[self.k_pow(a1, ri(-1)), self.f(a2)], &t);
                self.tensor_add(&mut s, self.tensor_left(&[self.f(a1), self.one(a2)], &t));
                t = s;
            }
            for _ in 0..*l {
                let mut s = self.tensor_left(&[self.e(a1), self.k_pow(a2, ri(1))], &t);
                self.tensor_add(&mut s, self.tensor_left(&[self.one(a1), self.e(a2)], &t));
                t = s;
            }
            let t = self.tensor_reupper(&t, &out.pieces.clone());
            for (k, w) in t.c {
                add_into(&mut out.c, k, w * &one);
            }
        }
        out
    }

    /// Antipode from `S(E) = -E K^-1`, `S(F) = -K F`, `S(K^x) = K^-x`, as an anti-homomorphism.
    pub fn antipode(&self, x: &KElem) -> KElem {
        let a = -x.lower;
        let minus = -self.field.one();
        let se = self.scale(&self.mul(&self.e(a), &self.k_pow(a, ri(-1))), &minus);
        let sf = self.scale(&self.mul(&self.k_pow(a, ri(1)), &self.f(a)), &minus);
        let mut out = self.zero(a, -x.upper);
        for ((l, m, j), v) in &x.c {
            let mut t = self.k_pow(a, -(ri(*j as i64) + x.upper.value()));
            for _ in 0..*m {
                t = self.mul(&t, &sf);
            }
            for _ in 0..*l {
                t = self.mul(&t, &se);
            }
            out = self.plus(&out, &self.scale(&t, v));
        }
        out
    }

    pub fn counit(&self, x: &KElem) -> CycScalar {
        assert!(x.lower.is_zero());
        let mut acc = self.field.zero();
        for ((l, m, _), v) in &x.c {
            if *l == 0 && *m == 0 {
                acc = acc + v;
            }
        }
        acc
    }

    /// Left integral on `u_a^0`: nonzero only on `E^{r-1} F^{r-1} K^{r-1}`, with value
    /// `sqrt(r) [r-1]! / {1}^{r-1}`.
    pub fn integral(&self, x: &KElem) -> CycScalar {
        assert!(x.upper.is_zero());
        let top = self.r - 1;
        let mut fact = self.field.one();
        for k in 1..self.r {
            fact = fact * self.fp.brace(ri(k as i64)).unwrap().div(&self.brace1).unwrap();
        }
        let val = self.fp.sqrt_rprime() * fact.div(&self.brace1.pow(top as u32)).unwrap();
        x.c.get(&(top, top, top)).map(|v| v * &val).unwrap_or_else(|| self.field.zero())
    }

    /// `R_{a,b} = (1/r) sum q^{c(c-1)/2 - 2(b'+B/2)(a'+A/2)} {1}^c/[c]! K^{b'+B/2} E^c (x) K^{a'+A/2} F^c`.
    pub fn r_matrix(&self, a: Label, b: Label) -> KTensor {
        let (aa, bb) = (a.value(), b.value());
        let two = ri(2);
        let pieces = vec![(a, Label::new(bb / two)), (b, Label::new(aa / two))];
        let mut out = KTensor { pieces: pieces.clone(), c: BTreeMap::new() };
        let inv_r = self.field.from_rat(Rat::new(1, self.r as i64));
        let mut fact = self.field.one();
        for c in 0..self.r {
            if c > 0 {
                fact = fact * self.fp.brace(ri(c as i64)).unwrap().div(&self.brace1).unwrap();
            }
            let cc = ri(c as i64);
            let fc = self.brace1.pow(c as u32).div(&fact).unwrap();
            for ai in 0..self.r {
                for bi in 0..self.r {
                    let kb = ri(bi as i64) + bb / two;
                    let ka = ri(ai as i64) + aa / two;
                    let ex = cc * (cc - ri(1)) / two - two * kb * ka;
                    let coef = self.q(ex) * &fc * &inv_r;
                    // K^{kb} E^c = q^{2 kb c} E^c K^{kb};  K^{ka} F^c = q^{-2 ka c} F^c K^{ka}
                    let left = self.mono(a, pieces[0].1, c, 0, kb, self.q(two * kb * cc));
                    let right = self.mono(b, pieces[1].1, 0, c, ka, self.q(-two * ka * cc));
                    for (m1, w1) in &left.c {
                        for (m2, w2) in &right.c {
                            add_into(&mut out.c, vec![*m1, *m2], &(&coef * w1) * w2);
                        }
                    }
                }
            }
        }
        out
    }

    /// `g_a = K^{1-r}`.
    pub fn pivotal(&self, a: Label) -> KElem {
        self.k_pow(a, ri(1 - self.r as i64))
    }

    /// `Lambda^a = {1}^{r-1} / (sqrt(r) [r-1]!) sum_j E^{r-1} F^{r-1} K^{j+a}`.
    pub fn cointegral(&self, a: Label) -> KElem {
        let top = self.r - 1;
        let mut fact = self.field.one();
        for k in 1..self.r {
            fact = fact * self.fp.brace(ri(k as i64)).unwrap().div(&self.brace1).unwrap();
        }
        let c = self.brace1.pow(top as u32).div(&(self.fp.sqrt_rprime() * fact)).unwrap();
        let mut out = self.zero(Label::ZERO, a);
        for j in 0..self.r {
            self.add_mono(&mut out, top, top, ri(j as i64) + a.value(), c.clone());
        }
        out
    }

    pub fn eq(&self, x: &KElem, y: &KElem) -> bool {
        x.lower == y.lower && *x == self.reupper(y, x.upper)
    }

    pub fn tensor_eq(&self, x: &KTensor, y: &KTensor) -> bool {
        x.pieces.len() == y.pieces.len()
            && x.pieces.iter().zip(&y.pieces).all(|(p, q)| p.0 == q.0)
            && *x == self.tensor_reupper(y, &x.pieces)
    }
}
