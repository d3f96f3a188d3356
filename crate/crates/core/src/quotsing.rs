//! Cyclic quotient singularities `1/r(1,a)` and their resolution data.
//!
//! Besides the minimal resolution chain this module carries the numbers that
//! track how `K^2` and the Picard number move when a singular point is
//! replaced by its minimal resolution: `zk_squared` is the self-intersection
//! of the relative canonical cycle `Z_K` (so `K~^2 = K^2 + Z_K^2`), and
//! `k2rho_change` adds the number of exceptional curves.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{gcd, hj_expand, mod_inverse, Rational};

/// The cyclic quotient singularity `1/r(1,a)`, stored in canonical form
/// `a <= a'` where `a'` is the inverse of `a` modulo `r`. `r = 1` is a smooth
/// point and is stored as `(1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CyclicQuotient {
    r: u64,
    a: u64,
}

impl CyclicQuotient {
    /// Builds `1/r(1,a)`; `a` is read modulo `r` so `1/5(1,-1)` is accepted.
    pub fn new(r: u64, a: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::domain("quotient order must be positive"));
        }
        if r == 1 {
            return Ok(Self::smooth());
        }
        let a = (a as i128).rem_euclid(r as i128) as u64;
        if a == 0 || gcd(a, r) != 1 {
            return Err(Error::domain(format!(
                "1/{r}(1,{a}): weight must be coprime to the order"
            )));
        }
        let inv = mod_inverse(a as i64, r)?;
        Ok(CyclicQuotient { r, a: a.min(inv) })
    }

    /// `1/r(w1, w2)` with `w1` a unit modulo `r`, normalized to `1/r(1, w2/w1)`.
    pub fn from_weights(r: u64, w1: u64, w2: u64) -> Result<Self> {
        if r == 1 {
            return Ok(Self::smooth());
        }
        let inv = mod_inverse(w1 as i64, r)?;
        let a = (inv as u128 * w2 as u128 % r as u128) as i64;
        Self::new(r, a)
    }

    pub const fn smooth() -> Self {
        CyclicQuotient { r: 1, a: 1 }
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// The other representative `a'` (equal to `a` when `a^2 = 1 mod r`).
    pub fn a_inverse(&self) -> u64 {
        if self.r == 1 {
            return 1;
        }
        mod_inverse(self.a as i64, self.r).expect("canonical weight is a unit")
    }

    /// Idempotent: values are canonical from construction.
    pub fn canonical(&self) -> Self {
        *self
    }

    pub fn is_smooth(&self) -> bool {
        self.r == 1
    }

    /// `1/r(1,-a)`, the partner across a normal crossing double curve.
    pub fn dual(&self) -> Self {
        if self.is_smooth() {
            return *self;
        }
        Self::new(self.r, -(self.a as i64)).expect("unit stays a unit")
    }

    /// Gorenstein index: the order of `K` in the local class group.
    pub fn index(&self) -> u64 {
        self.r / gcd(self.r, self.a + 1)
    }

    pub fn is_du_val(&self) -> bool {
        self.is_smooth() || (self.a + 1).is_multiple_of(self.r) || self.a_inverse() + 1 == self.r
    }
}

impl<'de> Deserialize<'de> for CyclicQuotient {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            r: u64,
            a: i64,
        }
        let raw = Raw::deserialize(d)?;
        CyclicQuotient::new(raw.r, raw.a).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_smooth() {
            write!(f, "smooth")
        } else {
            write!(f, "1/{}(1,{})", self.r, self.a)
        }
    }
}

/// Self-intersections `-b_1, ..., -b_k` of the minimal resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionChain {
    pub self_intersections: Vec<i64>,
}

impl ResolutionChain {
    pub fn len(&self) -> usize {
        self.self_intersections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.self_intersections.is_empty()
    }

    /// `E^2` for `E` the reduced exceptional divisor.
    pub fn reduced_square(&self) -> i64 {
        if self.is_empty() {
            return 0;
        }
        self.self_intersections.iter().sum::<i64>() + 2 * (self.len() as i64 - 1)
    }
}

/// A cycle of smooth rational curves, as in the resolution of a cusp.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ResolutionCycle {
    self_intersections: Vec<i64>,
}

impl ResolutionCycle {
    pub fn new(self_intersections: Vec<i64>) -> Result<Self> {
        if self_intersections.len() < 3 {
            return Err(Error::domain("a resolution cycle needs at least 3 curves"));
        }
        if let Some(e) = self_intersections.iter().find(|&&e| e > -2) {
            return Err(Error::domain(format!(
                "cycle self-intersection {e} is above -2"
            )));
        }
        Ok(ResolutionCycle { self_intersections })
    }

    pub fn self_intersections(&self) -> &[i64] {
        &self.self_intersections
    }

    pub fn len(&self) -> usize {
        self.self_intersections.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Intersection matrix: `e_i` on the diagonal, 1 between cyclic neighbours.
    #[allow(clippy::needless_range_loop)]
    pub fn intersection_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            m[i][i] = Rational::integer(self.self_intersections[i]);
            let j = (i + 1) % n;
            m[i][j] = m[i][j].clone() + 1;
            m[j][i] = m[j][i].clone() + 1;
        }
        m
    }
}

impl<'de> Deserialize<'de> for ResolutionCycle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        ResolutionCycle::new(v).map_err(serde::de::Error::custom)
    }
}

/// Local types of surface (or surface-with-boundary) germs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GermKind {
    Smooth,
    DuVal,
    /// `1/(d n^2)(1, d n a - 1)`.
    #[serde(rename = "t")]
    TSingularity { d: u64, n: u64, a: u64 },
    /// A log terminal cyclic quotient `1/r(1,a)`.
    #[serde(rename = "cyclic")]
    CyclicLT { r: u64, a: u64 },
    /// `(xy = 0) ⊂ 1/r(1,-1,a)`.
    #[serde(rename = "nc")]
    NCQuotient { r: u64, a: u64 },
    PinchPoint,
    /// `(1/r(1,a), Δ)`.
    #[serde(rename = "lc_delta")]
    LCPairDelta { r: u64, a: u64 },
    /// `(1/r(1,a), 2Δ)`.
    #[serde(rename = "lc_2delta")]
    LCPair2Delta { r: u64, a: u64 },
    #[serde(rename = "dihedral_delta")]
    DihedralDelta,
    Cusp,
    SimpleElliptic,
}

impl GermKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GermKind::TSingularity { d, n, a } => {
                if d == 0 || n == 0 || gcd(a, n) != 1 {
                    return Err(Error::domain(format!(
                        "T-singularity (d,n,a)=({d},{n},{a}) needs d,n >= 1 and gcd(a,n)=1"
                    )));
                }
            }
            GermKind::CyclicLT { r, a }
            | GermKind::NCQuotient { r, a }
            | GermKind::LCPairDelta { r, a }
            | GermKind::LCPair2Delta { r, a }
                if (r == 0 || (r > 1 && gcd(a % r, r) != 1)) => {
                    return Err(Error::domain(format!("({r},{a}) are not coprime")));
                }
            _ => {}
        }
        Ok(())
    }

    /// The cyclic quotient a normal germ is isomorphic to, when it is one.
    pub fn as_cyclic(&self) -> Option<CyclicQuotient> {
        match *self {
            GermKind::Smooth => Some(CyclicQuotient::smooth()),
            GermKind::CyclicLT { r, a } => CyclicQuotient::new(r, a as i64).ok(),
            GermKind::TSingularity { d, n, a } => {
                let r = d * n * n;
                CyclicQuotient::new(r, (d * n * a) as i64 - 1).ok()
            }
            _ => None,
        }
    }

    /// Local index of the surface at the point, when defined.
    pub fn index(&self) -> Option<u64> {
        match *self {
            GermKind::Smooth | GermKind::DuVal | GermKind::PinchPoint => Some(1),
            GermKind::Cusp | GermKind::SimpleElliptic => Some(1),
            GermKind::TSingularity { n, .. } => Some(n),
            GermKind::NCQuotient { r, .. } => Some(r),
            GermKind::CyclicLT { .. } => self.as_cyclic().map(|c| c.index()),
            GermKind::LCPairDelta { .. }
            | GermKind::LCPair2Delta { .. }
            | GermKind::DihedralDelta => None,
        }
    }

    /// Whether the surface germ is semi log terminal.
    pub fn is_slt(&self) -> bool {
        !matches!(
            self,
            GermKind::Cusp
                | GermKind::SimpleElliptic
                | GermKind::LCPair2Delta { .. }
                | GermKind::DihedralDelta
        )
    }

    pub fn is_normal(&self) -> bool {
        !matches!(self, GermKind::NCQuotient { .. } | GermKind::PinchPoint)
    }
}

impl From<CyclicQuotient> for GermKind {
    fn from(c: CyclicQuotient) -> Self {
        if c.is_smooth() {
            GermKind::Smooth
        } else {
            GermKind::CyclicLT { r: c.r(), a: c.a() }
        }
    }
}

impl fmt::Display for GermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GermKind::Smooth => write!(f, "smooth"),
            GermKind::DuVal => write!(f, "Du Val"),
            GermKind::TSingularity { d, n, a } => {
                write!(f, "1/{}(1,{})", d * n * n, d * n * a - 1)
            }
            GermKind::CyclicLT { r, a } => write!(f, "1/{r}(1,{a})"),
            GermKind::NCQuotient { r, a } => write!(f, "(xy=0) in 1/{r}(1,-1,{a})"),
            GermKind::PinchPoint => write!(f, "(x^2=zy^2)"),
            GermKind::LCPairDelta { r, a } => write!(f, "(1/{r}(1,{a}), Delta)"),
            GermKind::LCPair2Delta { r, a } => write!(f, "(1/{r}(1,{a}), 2Delta)"),
            GermKind::DihedralDelta => write!(f, "(D, Delta)"),
            GermKind::Cusp => write!(f, "cusp"),
            GermKind::SimpleElliptic => write!(f, "simple elliptic"),
        }
    }
}

pub fn resolve(s: &CyclicQuotient) -> ResolutionChain {
    let e = hj_expand(s.r(), if s.is_smooth() { 1 } else { s.a() })
        .expect("canonical quotient has a valid expansion");
    ResolutionChain {
        self_intersections: e.coefficients().iter().map(|&b| -(b as i64)).collect(),
    }
}

/// `Z_K^2 = E^2 + 4 - (a + a' + 2)/r`, zero for a smooth point.
pub fn zk_squared(s: &CyclicQuotient) -> Rational {
    if s.is_smooth() {
        return Rational::zero();
    }
    let chain = resolve(s);
    let r = s.r() as i64;
    let weights = (s.a() + s.a_inverse() + 2) as i64;
    Rational::integer(chain.reduced_square() + 4) - Rational::frac(weights, r)
}

/// Total change in `K^2 + rho` on passing to the minimal resolution.
pub fn k2rho_change(s: &CyclicQuotient) -> Rational {
    zk_squared(s) + resolve(s).len() as i64
}

/// All `(d, n, a)` with `r = d n^2` and `1/r(1,b) = 1/(d n^2)(1, d n a - 1)`
/// for one of the two representatives `b`.
pub fn class_t_decompositions(s: &CyclicQuotient) -> Vec<(u64, u64, u64)> {
    if s.is_smooth() {
        return vec![(1, 1, 1)];
    }
    let r = s.r();
    let mut out = Vec::new();
    for weight in [s.a_inverse(), s.a()] {
        let mut n = 1u64;
        while n * n <= r {
            if r.is_multiple_of(n * n) {
                let d = r / (n * n);
                // weight = d n a - 1 (mod r)  <=>  d n | weight + 1.
                if (weight + 1) % (d * n) == 0 {
                    let mut a = ((weight + 1) / (d * n)) % n;
                    if a == 0 {
                        a = n;
                    }
                    if gcd(a, n) == 1 && !out.contains(&(d, n, a)) {
                        out.push((d, n, a));
                    }
                }
            }
            n += 1;
        }
    }
    out
}

/// The class-T decomposition with the largest `n`, preferring the larger
/// weight representative. `None` when the singularity is not of class T.
#[allow(non_snake_case)]
pub fn is_class_T(s: &CyclicQuotient) -> Option<(u64, u64, u64)> {
    let all = class_t_decompositions(s);
    let best_n = all.iter().map(|t| t.1).max()?;
    all.into_iter().find(|t| t.1 == best_n)
}

/// Quotient singularities allowed on degenerations of the plane:
/// `1/n^2(1, na - 1)` with `3` not dividing `n`.
pub fn is_p2_admissible(s: &CyclicQuotient) -> bool {
    class_t_decompositions(s)
        .iter()
        .any(|&(d, n, _)| d == 1 && n % 3 != 0)
}

/// Gaussian elimination without pivoting; succeeds only when `-m` is
/// positive definite (all pivots of `m` negative), then solves `m x = rhs`.
#[allow(clippy::needless_range_loop)]
fn solve_negative_definite(m: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut b: Vec<Rational> = rhs.to_vec();
    for k in 0..n {
        if !a[k][k].is_negative() {
            return Err(Error::domain(format!(
                "intersection matrix is not negative definite (pivot {} at step {k})",
                a[k][k]
            )));
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] = &a[i][j] - &t;
            }
            let t = &f * &b[k];
            b[i] = &b[i] - &t;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i].clone();
        for j in i + 1..n {
            s = s - &a[i][j] * &x[j];
        }
        x[i] = s / a[i][i].clone();
    }
    Ok(x)
}

fn quadratic_form(m: &[Vec<Rational>], x: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, mij) in row.iter().enumerate() {
            if !mij.is_zero() {
                total = total + &(mij * &x[i]) * &x[j];
            }
        }
    }
    total
}

/// `(sum a_i E_i)^2` where `(sum a_i E_i) . E_j = -2 - e_j` for every curve of
/// the cycle, i.e. the square of the relative canonical class.
pub fn cycle_krel_squared(c: &ResolutionCycle) -> Result<Rational> {
    let m = c.intersection_matrix();
    let rhs: Vec<Rational> = c
        .self_intersections()
        .iter()
        .map(|&e| Rational::integer(-2 - e))
        .collect();
    let x = solve_negative_definite(&m, &rhs)?;
    Ok(quadratic_form(&m, &x))
}

/// `10 h^1 + K^2 + b_2 - b_1` for the resolution of a cycle singularity,
/// with `b_2` the number of curves and `b_1 = 1`.
pub fn mu_minus(c: &ResolutionCycle, h1: u64) -> Result<Rational> {
    let k2 = cycle_krel_squared(c)?;
    Ok(k2 + (10 * h1 as i64 + c.len() as i64 - 1))
}
