//! Truncated power series in `z` with polynomial coefficients, J-fraction
//! expansion, and the named polynomial families built from them.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::poly::{Poly, VarId};

/// Default truncation order for continued-fraction expansions.
pub const DEFAULT_ORDER: usize = 10;
/// Largest order any expansion will accept.
pub const HARD_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("{op} needs constant term {needed}, got {got}")]
    BadConstantTerm { op: &'static str, needed: &'static str, got: Poly },
    #[error("n = {n} exceeds the limit {limit}")]
    NTooLarge { n: usize, limit: usize },
    #[error("not in the span of t^k(1+t)^(n-2k); residual {residual}")]
    NotGammaExpressible { residual: Poly },
}

/// `Σ_{k≤order} c_k z^k`; everything beyond `order` is unknown.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Series {
    coeffs: Vec<Poly>,
}

impl Series {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Poly::zero());
        }
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Poly) -> Self {
        Series { coeffs: (0..=order).map(f).collect() }
    }

    pub fn constant(c: Poly, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![Poly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Poly::one(), order)
    }

    /// `c·z^k` truncated at `order`.
    pub fn monomial(c: Poly, k: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series::from_fn(n, |k| &self.coeffs[k] + &other.coeffs[k])
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series::from_fn(n, |k| &self.coeffs[k] - &other.coeffs[k])
    }

    pub fn scale(&self, c: &Poly) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series::from_fn(n, |k| {
            (0..=k)
                .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[k - i].is_zero())
                .map(|i| &self.coeffs[i] * &other.coeffs[k - i])
                .sum()
        })
    }

    /// Multiplicative inverse; the constant term must be a nonzero number.
    pub fn inverse(&self) -> Result<Series, SeriesError> {
        let c0 = &self.coeffs[0];
        let inv0 = match c0.variables().is_empty() && !c0.is_zero() {
            true => BigRational::one() / c0.constant_term(),
            false => {
                return Err(SeriesError::BadConstantTerm { op: "inverse", needed: "a nonzero number", got: c0.clone() })
            }
        };
        let mut out: Vec<Poly> = vec![Poly::constant(inv0.clone())];
        for k in 1..=self.order() {
            let acc: Poly = (1..=k).map(|i| &self.coeffs[i] * &out[k - i]).sum();
            out.push(acc.scale(&-inv0.clone()));
        }
        Ok(Series { coeffs: out })
    }

    pub fn exp(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm { op: "exp", needed: "0", got: self.coeffs[0].clone() });
        }
        let mut e = vec![Poly::one()];
        for n in 1..=self.order() {
            let acc: Poly = (1..=n).map(|k| (&self.coeffs[k] * &e[n - k]).scale(&int(k as i64))).sum();
            e.push(acc.scale(&recip(n)));
        }
        Ok(Series { coeffs: e })
    }

    pub fn log(&self) -> Result<Series, SeriesError> {
        if self.coeffs[0] != Poly::one() {
            return Err(SeriesError::BadConstantTerm { op: "log", needed: "1", got: self.coeffs[0].clone() });
        }
        let mut l = vec![Poly::zero()];
        for n in 1..=self.order() {
            let mut acc = self.coeffs[n].scale(&int(n as i64));
            for k in 1..n {
                acc = acc - (&l[k] * &self.coeffs[n - k]).scale(&int(k as i64));
            }
            l.push(acc.scale(&recip(n)));
        }
        Ok(Series { coeffs: l })
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter().map(|c| c.to_string())).finish()
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn recip(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

type Weight = Arc<dyn Fn(usize) -> Poly + Send + Sync>;

/// The sequences `γ_n` (n ≥ 0) and `β_n` (n ≥ 1) of a J-type continued
/// fraction `1/(1 - γ_0 z - β_1 z²/(1 - γ_1 z - β_2 z²/(...)))`.
#[derive(Clone)]
pub struct JFraction {
    gamma: Weight,
    beta: Weight,
}

impl JFraction {
    pub fn new<G, B>(gamma: G, beta: B) -> Self
    where
        G: Fn(usize) -> Poly + Send + Sync + 'static,
        B: Fn(usize) -> Poly + Send + Sync + 'static,
    {
        JFraction { gamma: Arc::new(gamma), beta: Arc::new(beta) }
    }

    pub fn gamma(&self, n: usize) -> Poly {
        (self.gamma)(n)
    }

    pub fn beta(&self, n: usize) -> Poly {
        (self.beta)(n)
    }

    /// Weighted Motzkin paths of length `≤ order`: level steps at height h
    /// weigh γ_h, down steps from height h weigh β_h.
    pub fn expand_motzkin(&self, order: usize) -> Series {
        let top = order / 2 + 1;
        let gammas: Vec<Poly> = (0..=top).map(|h| self.gamma(h)).collect();
        let betas: Vec<Poly> = (0..=top).map(|h| if h == 0 { Poly::zero() } else { self.beta(h) }).collect();
        let mut layer = vec![Poly::zero(); top + 2];
        layer[0] = Poly::one();
        let mut out = vec![Poly::one()];
        for step in 1..=order {
            // Heights that can still return to 0 within the remaining steps.
            let reach = step.min(order - step);
            let mut next = vec![Poly::zero(); top + 2];
            for (h, slot) in next.iter_mut().enumerate().take(reach + 1) {
                let mut acc = Poly::zero();
                if !layer[h].is_zero() && !gammas[h].is_zero() {
                    acc = acc + &layer[h] * &gammas[h];
                }
                if h > 0 {
                    acc = acc + &layer[h - 1];
                }
                if h + 1 <= top && !layer[h + 1].is_zero() {
                    acc = acc + &layer[h + 1] * &betas[h + 1];
                }
                *slot = acc;
            }
            layer = next;
            out.push(layer[0].clone());
        }
        Series::new(out)
    }

    /// Bottom-up inversion of the truncated nested fraction.
    pub fn expand_nested(&self, order: usize) -> Series {
        let depth = order / 2 + 1;
        let mut tail = Series::one(order);
        for k in (0..depth).rev() {
            let mut denom = Series::one(order);
            denom = denom.sub(&Series::monomial(self.gamma(k), 1, order));
            let shifted = Series::monomial(self.beta(k + 1), 2, order).mul(&tail);
            denom = denom.sub(&shifted);
            tail = denom.inverse().expect("constant term is 1");
        }
        tail
    }
}

impl fmt::Debug for JFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JFraction")
            .field("gamma", &(0..3).map(|n| self.gamma(n).to_string()).collect::<Vec<_>>())
            .field("beta", &(1..4).map(|n| self.beta(n).to_string()).collect::<Vec<_>>())
            .finish()
    }
}

pub fn t() -> Poly {
    Poly::named("t")
}
pub fn lam() -> Poly {
    Poly::named("lam")
}
pub fn y() -> Poly {
    Poly::named("y")
}
pub fn w() -> Poly {
    Poly::named("w")
}
pub fn tvar() -> VarId {
    VarId::new("t").unwrap()
}

fn shifted(base: Poly, n: usize) -> Poly {
    base + Poly::int(n as i64)
}

/// The named continued-fraction families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `A_n(t,lam,y,w)`: γ_n = w+n(t+1), β_n = t(lam+n-1)(y+n-1).
    A,
    /// `B_n(t,lam,w)`: γ_n = w+n(t+1), β_n = n·t(lam+n-1).
    B,
    /// `C_n(y,lam) = A_n(1,lam,y,lam)`: γ_n = lam+2n, β_n = (lam+n-1)(y+n-1).
    C,
    /// `D_n(t,lam,y) = A_n(t,lam,y,0)`: γ_n = n(t+1), β_n = t(lam+n-1)(y+n-1).
    D,
    /// The fraction conjectured to enumerate `y^des2 lam^cyc`; same weights as `C`.
    Des2Cyc,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::A, Family::B, Family::C, Family::D, Family::Des2Cyc];

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::Des2Cyc => "des2-cyc",
        }
    }

    pub fn jfraction(self) -> JFraction {
        let tplus1 = t() + Poly::one();
        match self {
            Family::A => JFraction::new(
                move |n| w() + tplus1.scale(&int(n as i64)),
                |n| t() * shifted(lam(), n - 1) * shifted(y(), n - 1),
            ),
            Family::B => JFraction::new(
                move |n| w() + tplus1.scale(&int(n as i64)),
                |n| t().scale(&int(n as i64)) * shifted(lam(), n - 1),
            ),
            Family::C | Family::Des2Cyc => JFraction::new(
                |n| shifted(lam(), 2 * n),
                |n| shifted(lam(), n - 1) * shifted(y(), n - 1),
            ),
            Family::D => JFraction::new(
                move |n| tplus1.scale(&int(n as i64)),
                |n| t() * shifted(lam(), n - 1) * shifted(y(), n - 1),
            ),
        }
    }

    /// Coefficients `P_0, ..., P_order` of the family's generating function.
    pub fn polys(self, order: usize) -> Result<Vec<Poly>, SeriesError> {
        check_order(order, HARD_ORDER)?;
        Ok(self.jfraction().expand_motzkin(order).into_coeffs())
    }

    /// The single polynomial `P_n`, `n <= DEFAULT_ORDER`.
    pub fn poly(self, n: usize) -> Result<Poly, SeriesError> {
        self.poly_with_limit(n, DEFAULT_ORDER)
    }

    pub fn poly_with_limit(self, n: usize, limit: usize) -> Result<Poly, SeriesError> {
        check_order(n, limit.min(HARD_ORDER))?;
        Ok(self.polys(n)?.pop().unwrap())
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("conj52") {
            return Ok(Family::Des2Cyc);
        }
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s:?} (expected A, B, C, D or des2-cyc)"))
    }
}

fn check_order(n: usize, limit: usize) -> Result<(), SeriesError> {
    if n > limit {
        Err(SeriesError::NTooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// γ_n = n, β_n = t(lam+n-1)(y+n-1): the generating function of the gamma
/// coefficients of `D_n`, with `t` marking `k`.
pub fn gamma_jfraction() -> JFraction {
    JFraction::new(|n| Poly::int(n as i64), |n| t() * shifted(lam(), n - 1) * shifted(y(), n - 1))
}

/// `e^{wz}·((1-t)/(e^{tz} - t e^z))^lam` to order `order`; the coefficient of
/// `z^n` times `n!` is `B_n(t,lam,w)`.
pub fn egf_b(order: usize) -> Result<Series, SeriesError> {
    check_order(order, HARD_ORDER)?;
    let tv = tvar();
    // g = (e^{tz} - t e^z)/(1-t); [z^n] = (t^n - t)/((1-t) n!)
    let g = Series::from_fn(order, |n| {
        let num = Poly::var(tv).pow(n as u32) - t();
        let q = num.div_one_minus(tv).expect("t^n - t vanishes at t=1");
        q.scale(&BigRational::new(BigInt::one(), factorial(n)))
    });
    let log_g = g.log()?;
    let power = log_g.scale(&-lam()).exp()?;
    let ewz = Series::from_fn(order, |n| w().pow(n as u32).scale(&BigRational::new(BigInt::one(), factorial(n))));
    Ok(ewz.mul(&power))
}

/// Coefficients `γ_k`, `k = 0..=n/2`, with `p = Σ γ_k t^k (1+t)^(n-2k)`.
pub fn gamma_decompose(p: &Poly, n: usize, tv: VarId) -> Result<Vec<Poly>, SeriesError> {
    let tp = Poly::var(tv);
    let onep = Poly::one() + &tp;
    let mut residual = p.clone();
    let mut out = Vec::with_capacity(n / 2 + 1);
    for k in 0..=n / 2 {
        let g = residual.coefficient_of(tv, k as u32);
        if !g.is_zero() {
            let basis = tp.pow(k as u32) * onep.pow((n - 2 * k) as u32);
            residual = residual - &g * &basis;
        }
        out.push(g);
    }
    if residual.is_zero() {
        Ok(out)
    } else {
        Err(SeriesError::NotGammaExpressible { residual })
    }
}
