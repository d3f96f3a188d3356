//! Plane curve germs, Newton polygons and the weighted stability test.
//!
//! A germ `f(x, y) = sum a_ij x^i y^j` is tested against every positive
//! weight `(m, n)`: the pair `(A^2, (3/d + eps) D)` is log canonical at the
//! origin exactly when `wt_(m,n)(f) < d/3 (m + n)` for all of them. The
//! defect `3 wt(m,n) - d(m + n)` is a concave, piecewise linear and
//! positively homogeneous function of `(m, n)`, so its sign on the open
//! quadrant is decided by the edge normals of the Newton polygon together
//! with the two boundary rays.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{gcd, Rational};

/// A polynomial germ in `x, y` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CurveGerm {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl CurveGerm {
    /// The zero divisor (empty support).
    pub fn zero() -> Self {
        CurveGerm::default()
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Rational)>,
    {
        let mut g = CurveGerm::zero();
        for (exp, c) in terms {
            g.add_term(exp, c);
        }
        g
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        CurveGerm::from_terms([((i, j), c)])
    }

    /// Adds `c x^i y^j`, dropping the monomial if it cancels.
    pub fn add_term(&mut self, exp: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.support().map(|(i, j)| i + j).max()
    }

    /// Drops every monomial of total degree above `order`.
    pub fn truncate(&self, order: u32) -> Self {
        CurveGerm {
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i + j <= order)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// `f(lambda x, mu y)`.
    pub fn rescale(&self, lambda: &Rational, mu: &Rational) -> Self {
        CurveGerm::from_terms(self.terms.iter().map(|(&(i, j), c)| {
            ((i, j), c.clone() * lambda.pow(i) * mu.pow(j))
        }))
    }

    fn nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::domain("the zero germ has no weight"))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for CurveGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let mut parts = Vec::new();
                    match i {
                        0 => {}
                        1 => parts.push("x".to_string()),
                        _ => parts.push(format!("x^{i}")),
                    }
                    match j {
                        0 => {}
                        1 => parts.push("y".to_string()),
                        _ => parts.push(format!("y^{j}")),
                    }
                    parts.join("*")
                }
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == Rational::one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CurveGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses sums like `y^2 + x^13`, `y^2 - 1/4*x^12 + 2*x*y^3`.
impl FromStr for CurveGerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if compact == "0" {
            return Ok(CurveGerm::zero());
        }
        let mut g = CurveGerm::zero();
        let mut chunks = Vec::new();
        let mut current = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && !current.ends_with('^') {
                chunks.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        chunks.push(current);
        for chunk in chunks {
            let (neg, body) = match chunk.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            let mut coeff = Rational::one();
            let (mut i, mut j) = (0u32, 0u32);
            for factor in body.split('*') {
                let bad = || Error::Parse(format!("bad factor {factor:?} in {s:?}"));
                if factor.is_empty() {
                    return Err(bad());
                }
                let (var, exp) = match factor.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
                    None => (factor, 1),
                };
                match var {
                    "x" => i += exp,
                    "y" => j += exp,
                    _ if factor.contains('^') => return Err(bad()),
                    _ => coeff = coeff * factor.parse::<Rational>().map_err(|_| bad())?,
                }
            }
            if neg {
                coeff = -coeff;
            }
            g.add_term((i, j), coeff);
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: u32,
    j: u32,
    c: Rational,
}

#[derive(Serialize, Deserialize)]
struct GermJson {
    terms: Vec<TermJson>,
}

impl Serialize for CurveGerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GermJson {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| TermJson { i, j, c: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveGerm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GermJson::deserialize(d)?;
        Ok(CurveGerm::from_terms(raw.terms.into_iter().map(|t| ((t.i, t.j), t.c))))
    }
}

/// A positive primitive weight `(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVector {
    m: u64,
    n: u64,
}

impl WeightVector {
    /// Divides out `gcd(m, n)`; both entries must be positive.
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::domain(format!("weights ({m},{n}) must be positive")));
        }
        let g = gcd(m, n);
        Ok(WeightVector { m: m / g, n: n / g })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// `min(m i + n j)` over the support, for arbitrary (not necessarily
/// primitive) nonnegative weights.
pub fn raw_weight(g: &CurveGerm, m: u64, n: u64) -> Result<u64> {
    g.nonzero()?;
    Ok(g
        .support()
        .map(|(i, j)| m * i as u64 + n * j as u64)
        .min()
        .expect("nonempty support"))
}

pub fn weight(g: &CurveGerm, w: WeightVector) -> Result<u64> {
    raw_weight(g, w.m, w.n)
}

/// `3 wt(m,n) - d (m + n)`; the pair fails at `(m, n)` when this is `>= 0`.
fn defect(g: &CurveGerm, m: u64, n: u64, d: u64) -> i128 {
    let wt = raw_weight(g, m, n).expect("nonempty support") as i128;
    3 * wt - (d as i128) * (m + n) as i128
}

/// Lower-left boundary of the Newton polygon of a germ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// Vertices by increasing `i` (and decreasing `j`).
    pub vertices: Vec<(u32, u32)>,
    /// Primitive inner normals of the bounded edges, in vertex order.
    pub edge_normals: Vec<WeightVector>,
}

impl NewtonPolygon {
    pub fn of(g: &CurveGerm) -> Result<Self> {
        g.nonzero()?;
        // Staircase: for increasing i keep points strictly lower than all before.
        let mut min_j: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, j) in g.support() {
            min_j.entry(i).and_modify(|v| *v = (*v).min(j)).or_insert(j);
        }
        let mut stair: Vec<(i64, i64)> = Vec::new();
        for (&i, &j) in &min_j {
            if stair.last().is_none_or(|&(_, pj)| (j as i64) < pj) {
                stair.push((i as i64, j as i64));
            }
        }
        // Lower convex hull of the staircase (monotone chain).
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for p in stair {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        let edge_normals = hull
            .windows(2)
            .map(|e| {
                let (a, b) = (e[0], e[1]);
                WeightVector::new((a.1 - b.1) as u64, (b.0 - a.0) as u64)
                    .expect("edges go right and down")
            })
            .collect();
        Ok(NewtonPolygon {
            vertices: hull.into_iter().map(|(i, j)| (i as u32, j as u32)).collect(),
            edge_normals,
        })
    }
}

/// Outcome of a weighted stability check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail {
        witness: WeightVector,
        weight: u64,
        /// `d/3 (m + n)` at the witness.
        bound: Rational,
    },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<WeightVector> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail { witness, .. } => Some(*witness),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail { witness, weight, bound } => {
                write!(f, "FAIL at weights {witness}: wt = {weight} >= {bound}")
            }
        }
    }
}

fn fail_at(g: &CurveGerm, w: WeightVector, d: u64) -> Verdict {
    Verdict::Fail {
        witness: w,
        weight: weight(g, w).expect("nonempty"),
        bound: Rational::frac((d * (w.m + w.n)) as i64, 3),
    }
}

/// First primitive `(m, n)` in order of increasing `m + n` (then `m`) at
/// which the strict inequality breaks. Only called once failure is certain.
fn scan_witness(g: &CurveGerm, d: u64) -> WeightVector {
    let mut s = 2u64;
    loop {
        for m in 1..s {
            let n = s - m;
            if m.gcd(&n) == 1 && defect(g, m, n, d) >= 0 {
                return WeightVector { m, n };
            }
        }
        s += 1;
    }
}

fn weighted_check(g: &CurveGerm, d: u64) -> Result<Verdict> {
    let poly = NewtonPolygon::of(g)?;
    let first = poly.vertices[0];
    let last = *poly.vertices.last().expect("nonempty");
    // Limits along the boundary rays (1,0) and (0,1).
    let left = 3 * first.0 as i128 - d as i128;
    let right = 3 * last.1 as i128 - d as i128;

    // Interior breakpoints: pick the largest normalized defect.
    let mut best: Option<(WeightVector, i128)> = None;
    for &w in &poly.edge_normals {
        let dv = defect(g, w.m, w.n, d);
        let better = match best {
            None => true,
            Some((bw, bd)) => dv * (bw.m + bw.n) as i128 > bd * (w.m + w.n) as i128,
        };
        if better {
            best = Some((w, dv));
        }
    }
    if let Some((w, dv)) = best {
        if dv >= 0 {
            return Ok(fail_at(g, w, d));
        }
    }
    let flat = poly.edge_normals.is_empty() && left == 0 && right == 0;
    if left > 0 || right > 0 || flat {
        return Ok(fail_at(g, scan_witness(g, d), d));
    }
    Ok(Verdict::Pass)
}

fn check_degree(d: u64) -> Result<()> {
    if d < 4 {
        return Err(Error::domain(format!("degree {d} is below 4")));
    }
    Ok(())
}

/// Whether `(A^2, (3/d + eps) D)` is log canonical at the origin for the
/// germ in its given coordinates, i.e. `wt(D) < d/3 (m + n)` for all
/// positive `(m, n)`.
pub fn stable_pair_local_test(g: &CurveGerm, d: u64) -> Result<Verdict> {
    check_degree(d)?;
    g.nonzero()?;
    weighted_check(g, d)
}

/// The same inequality on the dehomogenization of a degree `d` form at a
/// point in linear coordinates: the numerical criterion for GIT stability
/// at this flag.
pub fn git_weight_test(g: &CurveGerm, d: u64) -> Result<Verdict> {
    check_degree(d)?;
    g.nonzero()?;
    if let Some(deg) = g.total_degree().filter(|&deg| deg as u64 > d) {
        return Err(Error::domain(format!(
            "germ has total degree {deg}, above the curve degree {d}"
        )));
    }
    weighted_check(g, d)
}

/// The coordinate change `x -> x, y -> y + p(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Substitution {
    /// Coefficients of `p`, keyed by the power of `x`.
    pub shift: BTreeMap<u32, Rational>,
}

impl Substitution {
    pub fn identity() -> Self {
        Substitution::default()
    }

    pub fn shift_by(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut s = Substitution::identity();
        for (k, c) in terms {
            s.add(k, c);
        }
        s
    }

    fn add(&mut self, k: u32, c: Rational) {
        let e = self.shift.entry(k).or_insert_with(Rational::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.shift.remove(&k);
        }
    }

    /// Applying `self` and then `other`.
    pub fn then(&self, other: &Substitution) -> Substitution {
        let mut out = self.clone();
        for (&k, c) in &other.shift {
            out.add(k, c.clone());
        }
        out
    }

    pub fn inverse(&self) -> Substitution {
        Substitution {
            shift: self.shift.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.shift.is_empty()
    }

    /// `p(x)` as a germ.
    pub fn shift_polynomial(&self) -> CurveGerm {
        CurveGerm::from_terms(self.shift.iter().map(|(&k, c)| ((k, 0), c.clone())))
    }
}

type XPoly = BTreeMap<u32, Rational>;

fn xpoly_mul(a: &XPoly, b: &XPoly, order: u32) -> XPoly {
    let mut out = XPoly::new();
    for (&i, ca) in a {
        for (&j, cb) in b {
            let Some(k) = i.checked_add(j).filter(|&k| k <= order) else {
                continue;
            };
            let e = out.entry(k).or_insert_with(Rational::zero);
            *e = &*e + &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = Rational::one();
    for t in 0..k {
        acc = acc * Rational::frac((n - t) as i64, (t + 1) as i64);
    }
    acc
}

/// Expands `g(x, y + p(x))`, keeping monomials of total degree `<= order`.
pub fn substitute(g: &CurveGerm, sub: &Substitution, order: u32) -> CurveGerm {
    if sub.is_identity() {
        return g.truncate(order);
    }
    let max_j = g.support().map(|(_, j)| j).max().unwrap_or(0);
    let mut powers: Vec<XPoly> = vec![XPoly::from([(0, Rational::one())])];
    for _ in 0..max_j {
        let next = xpoly_mul(powers.last().expect("nonempty"), &sub.shift, order);
        powers.push(next);
    }
    let mut out = CurveGerm::zero();
    for (&(i, j), c) in g.terms() {
        // y^j -> sum_l C(j,l) y^l p^(j-l)
        for l in 0..=j {
            let coeff = c * &binomial(j, l);
            for (&e, pc) in &powers[(j - l) as usize] {
                let xi = i as u64 + e as u64;
                if xi + l as u64 <= order as u64 {
                    out.add_term((xi as u32, l), &coeff * pc);
                }
            }
        }
    }
    out
}

/// Removes the monomials `x^k y` for `1 <= k <= max_order` by successive
/// substitutions `y -> y - (b_k / 2a) x^k`, where `a` is the coefficient of
/// `y^2`. The linear term `y` itself is left alone.
pub fn complete_square(g: &CurveGerm, max_order: u32) -> Result<(CurveGerm, Substitution)> {
    let alpha = g.coefficient(0, 2);
    if alpha.is_zero() {
        return Err(Error::domain("germ has no y^2 term to complete the square on"));
    }
    let two_alpha = alpha * 2;
    let mut current = g.clone();
    let mut total = Substitution::identity();
    for k in 1..=max_order {
        let beta = current.coefficient(k, 1);
        if beta.is_zero() {
            continue;
        }
        let step = Substitution::shift_by([(k, -(&beta / &two_alpha))]);
        current = substitute(&current, &step, u32::MAX);
        total = total.then(&step);
    }
    Ok((current, total))
}

fn check_unit(a: u64, n: u64) -> Result<()> {
    if n == 0 || (n > 1 && gcd(a % n, n) != 1) {
        return Err(Error::domain(format!("{a} is not a unit modulo {n}")));
    }
    Ok(())
}

/// On the smooth cover of `1/n^2(1, na - 1)`: every monomial of the local
/// equation must satisfy `3(i + (na - 1) j) = d n a (mod n^2)`.
pub fn index_congruence_a(n: u64, a: u64, d: u64, g: &CurveGerm) -> Result<bool> {
    check_unit(a, n)?;
    let modulus = (n * n) as i128;
    let target = (d as i128 * n as i128 * a as i128).rem_euclid(modulus);
    let step = n as i128 * a as i128 - 1;
    Ok(g.support().all(|(i, j)| {
        (3 * (i as i128 + step * j as i128)).rem_euclid(modulus) == target
    }))
}

/// At an `(xy = 0) ⊂ 1/r(1,-1,a)` point where the divisor meets the double
/// curve with multiplicity `k`: `k < d/3` and `3k = d (mod r)`.
pub fn index_congruence_b(r: u64, d: u64, k: u64) -> Result<bool> {
    if r == 0 {
        return Err(Error::domain("index must be positive"));
    }
    let below = 3 * k < d;
    let congruent = (3 * k as i128 - d as i128).rem_euclid(r as i128) == 0;
    Ok(below && congruent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(s: &str) -> CurveGerm {
        s.parse().unwrap()
    }

    fn w(m: u64, n: u64) -> WeightVector {
        WeightVector::new(m, n).unwrap()
    }

    // Oracle: every primitive weight up to `bound`.
    fn brute_force_passes(g: &CurveGerm, d: u64, bound: u64) -> bool {
        for m in 1..=bound {
            for n in 1..=bound {
                if gcd(m, n) == 1 && defect(g, m, n, d) >= 0 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn parse_and_display() {
        let g = germ("y^2 + x^13");
        assert_eq!(g.coefficient(0, 2), Rational::one());
        assert_eq!(g.coefficient(13, 0), Rational::one());
        assert_eq!(g.to_string(), "y^2 + x^13");
        let h = germ("y^2 - 1/4*x^12 + 2*x*y^3 - 3");
        assert_eq!(h.coefficient(12, 0), Rational::frac(-1, 4));
        assert_eq!(h.coefficient(1, 3), Rational::integer(2));
        assert_eq!(h.coefficient(0, 0), Rational::integer(-3));
        assert_eq!(germ("x*y - x*y"), CurveGerm::zero());
        assert!("y^".parse::<CurveGerm>().is_err());
        assert!("z^2".parse::<CurveGerm>().is_err());
    }

    #[test]
    fn json_shape() {
        let g = germ("y^2 + 1/2*x^13");
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"terms": [{"i": 0, "j": 2, "c": "1"}, {"i": 13, "j": 0, "c": "1/2"}]})
        );
        let back: CurveGerm = serde_json::from_value(v).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&germ("y^2 + x^13"), w(2, 13)).unwrap(), 26);
        assert_eq!(weight(&germ("1 + x^5*y + y^9"), w(3, 7)).unwrap(), 0);
        assert_eq!(weight(&germ("x^3 + y^3"), w(1, 1)).unwrap(), 3);
        assert!(weight(&CurveGerm::zero(), w(1, 1)).is_err());
        assert_eq!(w(4, 26), w(2, 13));
        assert!(WeightVector::new(0, 3).is_err());
    }

    #[test]
    fn newton_polygon_shape() {
        let p = NewtonPolygon::of(&germ("y^2 + x^13 + x^3*y + x^7*y^5")).unwrap();
        assert_eq!(p.vertices, vec![(0, 2), (3, 1), (13, 0)]);
        assert_eq!(p.edge_normals, vec![w(1, 3), w(1, 10)]);
        let p = NewtonPolygon::of(&germ("y^2 + x^13 + x^7*y")).unwrap();
        assert_eq!(p.vertices, vec![(0, 2), (13, 0)]);
        assert_eq!(p.edge_normals, vec![w(2, 13)]);
    }

    #[test]
    fn quintic_with_a12_point_fails() {
        let v = stable_pair_local_test(&germ("y^2 + x^13"), 5).unwrap();
        assert_eq!(
            v,
            Verdict::Fail { witness: w(2, 13), weight: 26, bound: Rational::integer(25) }
        );
    }

    #[test]
    fn cusp_passes_in_degree_four() {
        assert!(stable_pair_local_test(&germ("y^2 + x^3"), 4).unwrap().passed());
        assert!(!stable_pair_local_test(&germ("y^2 + x^4"), 4).unwrap().passed());
    }

    #[test]
    fn a9_boundary_in_degree_five() {
        let v = stable_pair_local_test(&germ("y^2 + x^10"), 5).unwrap();
        assert_eq!(v.witness(), Some(w(1, 5)));
        assert!(!brute_force_passes(&germ("y^2 + x^10"), 5, 20));
        for n in 3..=9 {
            assert!(stable_pair_local_test(&germ(&format!("y^2 + x^{n}")), 5).unwrap().passed());
        }
    }

    #[test]
    fn boundary_ray_failures() {
        // Support on one side only: failure is found along the tail.
        let v = stable_pair_local_test(&germ("y^2"), 5).unwrap();
        let wv = v.witness().unwrap();
        assert!(defect(&germ("y^2"), wv.m(), wv.n(), 5) >= 0);
        assert!(!brute_force_passes(&germ("y^2"), 5, 50));
        // x^2 y^2 in degree 4 fails at (1,1).
        let v = git_weight_test(&germ("x^2*y^2"), 4).unwrap();
        assert_eq!(v.witness(), Some(w(1, 1)));
        // A constant term passes everything.
        assert!(git_weight_test(&germ("1 + x + y^2"), 4).unwrap().passed());
    }

    #[test]
    fn git_rejects_high_degree() {
        assert!(git_weight_test(&germ("y^2 + x^13"), 5).is_err());
        assert!(stable_pair_local_test(&germ("y^2"), 3).is_err());
        assert!(stable_pair_local_test(&CurveGerm::zero(), 5).is_err());
    }

    #[test]
    fn substitution_examples() {
        let s = Substitution::shift_by([(1, Rational::integer(-1))]);
        assert_eq!(substitute(&germ("y^2 + 2*x*y + x^2"), &s, 10), germ("y^2"));
        assert_eq!(
            substitute(&germ("y^2 + x^3"), &Substitution::identity(), 10),
            germ("y^2 + x^3")
        );
        let s = Substitution::shift_by([(2, Rational::one())]);
        assert_eq!(substitute(&germ("y^2"), &s, 10), germ("y^2 + 2*x^2*y + x^4"));
        assert_eq!(substitute(&germ("y^2"), &s, 3), germ("y^2 + 2*x^2*y"));
    }

    #[test]
    fn complete_square_examples() {
        let (g, s) = complete_square(&germ("y^2 + 2*x*y"), 5).unwrap();
        assert_eq!(g, germ("y^2 - x^2"));
        assert_eq!(s, Substitution::shift_by([(1, Rational::integer(-1))]));
        let (g, s) = complete_square(&germ("y^2 + x^3"), 5).unwrap();
        assert_eq!(g, germ("y^2 + x^3"));
        assert!(s.is_identity());
        let (g, _) = complete_square(&germ("y^2 + x^6*y + x^13"), 10).unwrap();
        assert_eq!(g, germ("y^2 - 1/4*x^12 + x^13"));
        assert!(complete_square(&germ("x*y + x^3"), 5).is_err());
    }

    #[test]
    fn congruence_examples() {
        assert!(!index_congruence_a(2, 1, 4, &germ("y^2 + x^3")).unwrap());
        assert!(index_congruence_a(1, 1, 7, &germ("y^2 + x^3 + x*y")).unwrap());
        assert!(index_congruence_a(5, 1, 5, &CurveGerm::zero()).unwrap());
        // On 1/4(1,1) with d = 4: 3(i + j) = 8 = 0 (mod 4), so i + j = 0 mod 4.
        assert!(index_congruence_a(2, 1, 4, &germ("x^4 + y^4 + x^2*y^2")).unwrap());
        assert!(index_congruence_a(2, 2, 4, &CurveGerm::zero()).is_err());
        assert!(index_congruence_b(5, 5, 0).unwrap());
        assert!(index_congruence_b(2, 4, 0).unwrap());
        assert!(!index_congruence_b(2, 4, 1).unwrap());
        assert!(index_congruence_b(2, 5, 1).unwrap());
        assert!(!index_congruence_b(7, 5, 1).unwrap());
        assert!(!index_congruence_b(1, 5, 2).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_germ() -> impl Strategy<Value = CurveGerm> {
            proptest::collection::vec(((0u32..=30, 0u32..=30), 1i64..5), 1..6).prop_map(|ts| {
                CurveGerm::from_terms(ts.into_iter().map(|(e, c)| (e, Rational::integer(c))))
            })
        }

        proptest! {
            #[test]
            fn reduction_matches_brute_force(g in small_germ(), d in 4u64..12) {
                let v = stable_pair_local_test(&g, d).unwrap();
                prop_assert_eq!(v.passed(), brute_force_passes(&g, d, 60));
                if let Some(wv) = v.witness() {
                    prop_assert!(defect(&g, wv.m(), wv.n(), d) >= 0);
                }
            }

            #[test]
            fn weight_is_homogeneous(g in small_germ(), m in 1u64..20, n in 1u64..20, k in 1u64..6) {
                let prim = WeightVector::new(m, n).unwrap();
                let scale = gcd(m, n);
                prop_assert_eq!(raw_weight(&g, k * m, k * n).unwrap(), k * scale * weight(&g, prim).unwrap());
                let lhs = 3 * raw_weight(&g, k * m, k * n).unwrap() as i128 - 5 * (k * (m + n)) as i128;
                let rhs = 3 * weight(&g, prim).unwrap() as i128 - 5 * (prim.m() + prim.n()) as i128;
                prop_assert_eq!(lhs.signum(), rhs.signum());
            }

            #[test]
            fn unit_rescaling_keeps_verdict(g in small_germ(), l in 1i64..7, u in 1i64..7, d in 4u64..9) {
                let h = g.rescale(&Rational::frac(l, 3), &Rational::frac(-u, 2));
                prop_assert_eq!(
                    stable_pair_local_test(&g, d).unwrap(),
                    stable_pair_local_test(&h, d).unwrap()
                );
            }

            #[test]
            fn complete_square_is_invertible(g in small_germ(), b in 1i64..4) {
                let mut g = g;
                g.add_term((0, 2), Rational::integer(b));
                if g.coefficient(0, 2).is_zero() {
                    g.add_term((0, 2), Rational::one());
                }
                let (h, s) = complete_square(&g, 8).unwrap();
                for kk in 1..=8 {
                    prop_assert!(h.coefficient(kk, 1).is_zero());
                }
                prop_assert_eq!(substitute(&h, &s.inverse(), u32::MAX), g.clone());
            }

            #[test]
            fn no_admissible_monomial_above_the_index_bound(d in 4u64..12, extra in 1u64..30, a in 1u64..40) {
                let n = d + extra;
                prop_assume!(gcd(a, n) == 1);
                // With 3 | n the congruence only forces i = j mod n/3.
                prop_assume!(n % 3 != 0);
                // Monomials of total degree below 2d/3, constant term included.
                for i in 0..=(2 * d / 3) as u32 {
                    for j in 0..=(2 * d / 3) as u32 {
                        if 3 * (i + j) as u64 >= 2 * d {
                            continue;
                        }
                        let g = CurveGerm::monomial(i, j, Rational::one());
                        prop_assert!(!index_congruence_a(n, a, d, &g).unwrap());
                    }
                }
            }
        }
    }
}
