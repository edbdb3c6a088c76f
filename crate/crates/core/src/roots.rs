//! Certified isolation of the complex roots of a squarefree integer polynomial.
//!
//! Approximations come from Aberth iteration, first in `f64` and then at
//! increasing dyadic precision. They are certified with the inclusion
//! disks `D(z_i, n |W_i|)`, where `W_i = p(z_i) / (a_n prod_{j != i} (z_i - z_j))`.
//! Once the enclosing squares are pairwise disjoint, each one contains
//! exactly one root.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::interval::{ComplexBox, Interval};
use crate::poly::IntPoly;

/// Starting precision of the dyadic stage.
pub const START_BITS: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cplx {
    re: Dyadic,
    im: Dyadic,
}

impl Cplx {
    fn zero() -> Cplx {
        Cplx { re: Dyadic::zero(), im: Dyadic::zero() }
    }

    fn from_f64(z: Complex64) -> Cplx {
        Cplx { re: Dyadic::from_f64(z.re), im: Dyadic::from_f64(z.im) }
    }

    fn round(self, prec: u64) -> Cplx {
        Cplx { re: self.re.round(prec, Round::Down), im: self.im.round(prec, Round::Down) }
    }

    fn add(&self, o: &Cplx, prec: u64) -> Cplx {
        Cplx { re: &self.re + &o.re, im: &self.im + &o.im }.round(prec)
    }

    fn sub(&self, o: &Cplx, prec: u64) -> Cplx {
        Cplx { re: &self.re - &o.re, im: &self.im - &o.im }.round(prec)
    }

    fn mul(&self, o: &Cplx, prec: u64) -> Cplx {
        Cplx {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
        .round(prec)
    }

    fn norm_sqr(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    fn div(&self, o: &Cplx, prec: u64) -> Option<Cplx> {
        let n = o.norm_sqr().round(prec + 8, Round::Down);
        if n.is_zero() {
            return None;
        }
        let re = &(&self.re * &o.re) + &(&self.im * &o.im);
        let im = &(&self.im * &o.re) - &(&self.re * &o.im);
        Some(Cplx { re: re.div(&n, prec, Round::Down), im: im.div(&n, prec, Round::Down) })
    }

    /// Cheap magnitude estimate: floor(log2 max(|re|, |im|)).
    fn mag(&self) -> Option<i64> {
        match (self.re.log2_floor(), self.im.log2_floor()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    fn to_box(&self) -> ComplexBox {
        ComplexBox::point(self.re.clone(), self.im.clone())
    }
}

/// Certified isolating boxes for all roots of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct RootSet {
    poly: IntPoly,
    approx: Vec<Cplx>,
    boxes: Vec<ComplexBox>,
    prec: u64,
}

impl RootSet {
    /// Isolate all roots of `f`, which must be squarefree of positive degree.
    pub fn isolate(f: &IntPoly, max_bits: u64) -> Result<RootSet> {
        assert!(f.degree() >= 1, "cannot isolate roots of a constant");
        let approx: Vec<Cplx> = aberth_f64(f).into_iter().map(Cplx::from_f64).collect();
        let mut rs = RootSet { poly: f.clone(), approx, boxes: Vec::new(), prec: START_BITS };
        rs.polish_and_certify(START_BITS, max_bits)?;
        Ok(rs)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn boxes(&self) -> &[ComplexBox] {
        &self.boxes
    }

    pub fn root_box(&self, i: usize) -> &ComplexBox {
        &self.boxes[i]
    }

    /// Working precision of the current certificate.
    pub fn prec(&self) -> u64 {
        self.prec
    }

    /// Double the working precision and recertify.
    pub fn refine(&mut self, max_bits: u64) -> Result<()> {
        let next = self.prec * 2;
        if next > max_bits {
            return Err(Error::PrecisionExhausted(max_bits));
        }
        self.polish_and_certify(next, max_bits)
    }

    /// Refine until every box has width at most `2^-bits` relative to
    /// `max(1, |root|)`.
    pub fn refine_to(&mut self, bits: u64, max_bits: u64) -> Result<()> {
        while !self.boxes.iter().all(|b| box_is_narrow(b, bits)) {
            self.refine(max_bits)?;
        }
        Ok(())
    }

    /// Indices of roots whose boxes meet `target`, refined until each box is
    /// much narrower than `target` (or precision runs out).
    pub fn candidates(&mut self, target: &ComplexBox, max_bits: u64) -> Result<Vec<usize>> {
        let tw = target.width();
        loop {
            let hits: Vec<usize> =
                (0..self.len()).filter(|&i| self.boxes[i].intersects(target)).collect();
            let fine = hits.iter().all(|&i| self.boxes[i].width().shl(3) <= tw);
            if hits.len() <= 1 && (fine || hits.is_empty() || tw.is_zero()) {
                return Ok(hits);
            }
            if fine || self.prec * 2 > max_bits {
                return Ok(hits);
            }
            self.refine(max_bits)?;
        }
    }

    /// The index of the unique root whose box meets `target`.
    pub fn locate(&mut self, target: &ComplexBox, max_bits: u64) -> Result<usize> {
        loop {
            let hits: Vec<usize> =
                (0..self.len()).filter(|&i| self.boxes[i].intersects(target)).collect();
            match hits.len() {
                0 => return Err(Error::NotIsolating("box contains no root".into())),
                1 => return Ok(hits[0]),
                _ => {
                    let inside = hits.iter().filter(|&&i| target.contains_box(&self.boxes[i])).count();
                    if inside >= 2 {
                        return Err(Error::NotIsolating("box contains several roots".into()));
                    }
                    if self.prec * 2 > max_bits {
                        return Err(Error::NotIsolating(
                            "cannot separate roots meeting the box".into(),
                        ));
                    }
                    self.refine(max_bits)?;
                }
            }
        }
    }

    fn polish_and_certify(&mut self, start: u64, max_bits: u64) -> Result<()> {
        let mut prec = start;
        loop {
            aberth_dyadic(&self.poly, &mut self.approx, prec);
            if let Some(boxes) = certify(&self.poly, &self.approx, prec) {
                self.boxes = boxes;
                self.prec = prec;
                return Ok(());
            }
            prec *= 2;
            if prec > max_bits {
                return Err(Error::PrecisionExhausted(max_bits));
            }
        }
    }
}

/// True if the box width is below `2^-bits` relative to `max(1, |z|)`.
pub fn box_is_narrow(b: &ComplexBox, bits: u64) -> bool {
    let w = b.width();
    if w.is_zero() {
        return true;
    }
    let scale = [&b.re.lo, &b.re.hi, &b.im.lo, &b.im.hi]
        .iter()
        .filter_map(|d| d.log2_floor())
        .max()
        .unwrap_or(0)
        .max(0);
    w.log2_floor().unwrap() < scale - bits as i64
}

/// Convert coefficients to `f64` after a common power-of-two scaling.
fn f64_coeffs(f: &IntPoly) -> Vec<f64> {
    let top = f.max_coeff_bits() as i64;
    let shift = (top - 900).max(0);
    f.coeffs()
        .iter()
        .map(|c| {
            if shift == 0 {
                c.to_f64().unwrap_or(0.0)
            } else {
                Dyadic::new(c.clone(), -shift).to_f64()
            }
        })
        .collect()
}

fn log2_abs(c: &BigInt) -> f64 {
    let b = c.bits();
    if b <= 1000 {
        c.abs().to_f64().unwrap().log2()
    } else {
        let top: BigInt = c.abs() >> (b - 60);
        top.to_f64().unwrap().log2() + (b - 60) as f64
    }
}

/// Initial guesses on circles whose radii come from the Newton polygon.
fn initial_guesses(f: &IntPoly) -> Vec<(f64, f64)> {
    let n = f.degree();
    let pts: Vec<(usize, f64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, log2_abs(c)))
        .collect();
    // Upper convex hull.
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    let low = pts[0].0; // multiplicity of the root zero
    for _ in 0..low {
        out.push((f64::NEG_INFINITY, 0.0));
    }
    let mut k = 0usize;
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let log_r = (li - lj) / (j - i) as f64;
        for t in 0..(j - i) {
            let angle = std::f64::consts::TAU * (t as f64) / ((j - i) as f64) + 0.4 + 0.7 * k as f64;
            out.push((log_r, angle));
        }
        k += 1;
    }
    out
}

fn horner_ratio(c: &[f64], z: Complex64) -> Complex64 {
    // Newton correction p/p', evaluated through the reversed polynomial when |z| > 1.
    let n = c.len() - 1;
    if z.norm() <= 1.0 {
        let mut p = Complex64::new(c[n], 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for k in (0..n).rev() {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        p / dp
    } else {
        let w = 1.0 / z;
        let mut q = Complex64::new(c[0], 0.0);
        let mut dq = Complex64::new(0.0, 0.0);
        for k in 1..=n {
            dq = dq * w + q;
            q = q * w + c[k];
        }
        z / (n as f64 - w * dq / q)
    }
}

/// Aberth iteration in double precision. Roots at zero are returned exactly.
fn aberth_f64(f: &IntPoly) -> Vec<Complex64> {
    let n = f.degree();
    let guesses = initial_guesses(f);
    let zeros = guesses.iter().filter(|g| g.0 == f64::NEG_INFINITY).count();
    let mut z: Vec<Complex64> = guesses
        .iter()
        .filter(|g| g.0 != f64::NEG_INFINITY)
        .map(|&(lr, a)| {
            let r = lr.clamp(-1000.0, 1000.0).exp2();
            Complex64::from_polar(r, a)
        })
        .collect();
    let mut coeffs = f64_coeffs(f);
    coeffs.drain(0..zeros);
    let m = n - zeros;
    if m > 0 && coeffs.iter().all(|c| c.is_finite()) {
        let mut done = vec![false; m];
        for _ in 0..500 {
            let mut all_done = true;
            for i in 0..m {
                if done[i] {
                    continue;
                }
                let ratio = horner_ratio(&coeffs, z[i]);
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..m {
                    if j != i {
                        s += 1.0 / (z[i] - z[j]);
                    }
                }
                let w = ratio / (1.0 - ratio * s);
                if w.is_finite() {
                    z[i] -= w;
                    if w.norm() <= 1e-15 * z[i].norm() {
                        done[i] = true;
                    } else {
                        all_done = false;
                    }
                } else {
                    all_done = false;
                }
            }
            if all_done {
                break;
            }
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    out.extend(z.into_iter().map(|c| if c.is_finite() { c } else { Complex64::new(1.0, 0.5) }));
    out
}

fn eval_with_derivative(f: &IntPoly, z: &Cplx, prec: u64) -> (Cplx, Cplx) {
    let c = f.coeffs();
    let n = c.len() - 1;
    let mut p = Cplx { re: Dyadic::from(c[n].clone()), im: Dyadic::zero() };
    let mut dp = Cplx::zero();
    for k in (0..n).rev() {
        dp = dp.mul(z, prec).add(&p, prec);
        p = p.mul(z, prec);
        p.re = (&p.re + &Dyadic::from(c[k].clone())).round(prec, Round::Down);
    }
    (p, dp)
}

/// Aberth iteration at `prec` bits until corrections fall below the working
/// precision. Exact zero roots are left fixed.
fn aberth_dyadic(f: &IntPoly, z: &mut [Cplx], prec: u64) {
    let n = z.len();
    let one = Cplx { re: Dyadic::one(), im: Dyadic::zero() };
    let mut done = vec![false; n];
    for i in 0..n {
        if z[i].re.is_zero() && z[i].im.is_zero() && f.coeff(0).is_zero() {
            done[i] = true;
        }
    }
    for _ in 0..200 {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(f, &z[i], prec);
            if p.re.is_zero() && p.im.is_zero() {
                done[i] = true;
                continue;
            }
            let Some(ratio) = p.div(&dp, prec) else {
                all_done = false;
                z[i].re = &z[i].re + &Dyadic::pow2(-(prec as i64) / 2);
                continue;
            };
            let mut s = Cplx::zero();
            let mut ok = true;
            for j in 0..n {
                if j != i {
                    match one.div(&z[i].sub(&z[j], prec), prec) {
                        Some(q) => s = s.add(&q, prec),
                        None => ok = false,
                    }
                }
            }
            if !ok {
                all_done = false;
                z[i].im = &z[i].im + &Dyadic::pow2(-(prec as i64) / 2);
                continue;
            }
            let den = one.sub(&ratio.mul(&s, prec), prec);
            let w = match ratio.div(&den, prec) {
                Some(w) => w,
                None => ratio,
            };
            z[i] = z[i].sub(&w, prec);
            let small = match (w.mag(), z[i].mag()) {
                (None, _) => true,
                (Some(a), Some(b)) => a < b - prec as i64 + 6,
                (Some(_), None) => false,
            };
            if small {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
}

/// Certified isolating squares, or None if they are not pairwise disjoint.
fn certify(f: &IntPoly, z: &[Cplx], prec: u64) -> Option<Vec<ComplexBox>> {
    let n = z.len();
    let lc = Interval::from_int(&f.lead());
    let lc2 = lc.sqr(prec);
    let n2 = Interval::from_i64((n * n) as i64);
    let mut boxes = Vec::with_capacity(n);
    for i in 0..n {
        let pz = f.eval_box(&z[i].to_box(), prec);
        let num = pz.norm_sqr(prec);
        let mut den = lc2.clone();
        for j in 0..n {
            if j != i {
                let d = Cplx { re: &z[i].re - &z[j].re, im: &z[i].im - &z[j].im };
                let nd = d.norm_sqr();
                if nd.is_zero() {
                    return None;
                }
                den = den.mul(&Interval::point(nd), prec);
            }
        }
        if !den.is_positive() {
            return None;
        }
        // r^2 <= n^2 |p(z)|^2 / (|a_n|^2 prod |z_i - z_j|^2)
        let r2 = Interval::point(num.hi.clone()).mul(&n2, prec);
        let r2 = r2.hi.div(&den.lo, prec, Round::Up);
        let r = r2.sqrt(prec, Round::Up);
        boxes.push(z[i].to_box().inflate(&r));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| boxes[a].re.lo.cmp(&boxes[b].re.lo));
    for (k, &a) in order.iter().enumerate() {
        for &b in &order[k + 1..] {
            if boxes[b].re.lo > boxes[a].re.hi {
                break;
            }
            if boxes[a].intersects(&boxes[b]) {
                return None;
            }
        }
    }
    // A box that meets its own mirror image and no other box holds a real root,
    // because the conjugate of that root must lie in some box.
    let mirrored: Vec<bool> = (0..n)
        .map(|i| {
            if !boxes[i].im.contains_zero() {
                return false;
            }
            let m = boxes[i].conj();
            (0..n).all(|j| j == i || !boxes[j].intersects(&m))
        })
        .collect();
    for (b, real) in boxes.iter_mut().zip(mirrored) {
        if real {
            b.im = Interval::zero();
        }
    }
    Some(boxes)
}
