//! Surface descriptors and their intersection numbers.
//!
//! A component is a weighted projective plane, a hypersurface in a weighted
//! projective 3-space, or a surface described only by its numerical data.
//! Every component carries a hyperplane class `H`; the canonical class and
//! the double curve are rational multiples of it, which is all the class
//! arithmetic the checks below need.

mod catalog;
mod classify;
mod typeb;

pub use catalog::{
    builtin_catalog, check_surface, second_veronese, verify_catalog, verify_rows, CatalogRow,
    TableEntry, Veronese,
};
pub use classify::{
    coarse_type, pair_type, slt_constraint, BoundaryCurve, BoundaryGerm, CoarseType, CurveRef,
    GluedSurface, Gluing, NcPoint, PairType, PairTypeData,
};
pub use typeb::{
    adjunction_check, delta_squares, glued_k_squared, noether_bookkeeping, t1_degree,
    type_b_smoothable, ConditionResult, TypeBReport,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{gcd, Rational};
use crate::quotsing::{k2rho_change, CyclicQuotient, GermKind};

/// The weighted projective plane `P(w0, w1, w2)`, required well formed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Wps2Raw")]
pub struct Wps2 {
    weights: [u64; 3],
}

#[derive(Deserialize)]
struct Wps2Raw {
    weights: [u64; 3],
}

impl TryFrom<Wps2Raw> for Wps2 {
    type Error = Error;
    fn try_from(raw: Wps2Raw) -> Result<Self> {
        Wps2::new(raw.weights)
    }
}

fn pairwise_coprime(w: &[u64]) -> bool {
    (0..w.len()).all(|i| (i + 1..w.len()).all(|j| gcd(w[i], w[j]) == 1))
}

impl Wps2 {
    pub fn new(weights: [u64; 3]) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::domain("weights must be positive"));
        }
        if !pairwise_coprime(&weights) {
            return Err(Error::domain(format!(
                "P({},{},{}) is not well formed: weights must be pairwise coprime",
                weights[0], weights[1], weights[2]
            )));
        }
        Ok(Wps2 { weights })
    }

    pub fn weights(&self) -> [u64; 3] {
        self.weights
    }

    fn weight_product(&self) -> i64 {
        self.weights.iter().product::<u64>() as i64
    }

    /// `(w0 + w1 + w2)^2 / (w0 w1 w2)`.
    pub fn k_squared(&self) -> Rational {
        let s = self.weights.iter().sum::<u64>() as i64;
        Rational::frac(s * s, self.weight_product())
    }

    /// `H^2 = 1 / (w0 w1 w2)` for `H = O(1)`.
    pub fn h_squared(&self) -> Rational {
        Rational::frac(1, self.weight_product())
    }

    /// `K = -(w0 + w1 + w2) H`.
    pub fn canonical_multiple(&self) -> Rational {
        Rational::integer(-(self.weights.iter().sum::<u64>() as i64))
    }

    /// Vertex `i` with `w_i > 1` is `1/w_i(w_j, w_k)`.
    pub fn vertex_points(&self) -> Vec<(u64, CyclicQuotient)> {
        let w = self.weights;
        (0..3)
            .filter(|&i| w[i] > 1)
            .map(|i| {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                let q = CyclicQuotient::from_weights(w[i], w[j] % w[i], w[k] % w[i])
                    .expect("well formed weights are units");
                (w[i], q)
            })
            .collect()
    }

    /// Canonical singularities, sorted.
    pub fn singularities(&self) -> Vec<CyclicQuotient> {
        let mut v: Vec<_> = self.vertex_points().into_iter().map(|(_, q)| q).collect();
        v.sort();
        v
    }
}

impl std::fmt::Display for Wps2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = self.weights;
        if self.weights == [1, 1, 1] {
            write!(f, "P^2")
        } else {
            write!(f, "P({a},{b},{c})")
        }
    }
}

pub fn k_squared(s: &Wps2) -> Rational {
    s.k_squared()
}

pub fn wps_singularities(s: &Wps2) -> Vec<CyclicQuotient> {
    s.singularities()
}

/// A hypersurface `X_e ⊂ P(w0, w1, w2, w3)`. Singularities and Picard number
/// are declared; quasi-smoothness is not verified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpsHypersurface {
    pub weights: [u64; 4],
    pub degree: u64,
    #[serde(default)]
    pub singularities: Vec<GermKind>,
    #[serde(default = "one")]
    pub picard: u32,
}

fn one() -> u32 {
    1
}

impl WpsHypersurface {
    pub fn new(weights: [u64; 4], degree: u64, singularities: Vec<GermKind>, picard: u32) -> Result<Self> {
        let h = WpsHypersurface { weights, degree, singularities, picard };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 || self.weights.contains(&0) {
            return Err(Error::domain("hypersurface degree and weights must be positive"));
        }
        for s in &self.singularities {
            s.validate()?;
        }
        Ok(())
    }

    fn weight_product(&self) -> i64 {
        self.weights.iter().product::<u64>() as i64
    }

    /// `H^2 = e / (w0 w1 w2 w3)`.
    pub fn h_squared(&self) -> Rational {
        Rational::frac(self.degree as i64, self.weight_product())
    }

    /// `K = (e - sum w) H` by adjunction.
    pub fn canonical_multiple(&self) -> Rational {
        Rational::integer(self.degree as i64 - self.weights.iter().sum::<u64>() as i64)
    }

    /// `(e - sum w)^2 e / prod w`.
    pub fn k_squared(&self) -> Rational {
        self.canonical_multiple().pow(2) * self.h_squared()
    }

    /// Singular points at the coordinate vertices of a general member, for
    /// pairwise coprime ambient weights. `None` when the ambient weights are
    /// not pairwise coprime or the general member is not quasi-smooth at a
    /// vertex it passes through.
    pub fn vertex_points(&self) -> Option<Vec<(u64, CyclicQuotient)>> {
        let w = self.weights;
        let e = self.degree;
        if !pairwise_coprime(&w) {
            return None;
        }
        let mut out = Vec::new();
        for i in 0..4 {
            if w[i] == 1 || e.is_multiple_of(w[i]) {
                // Either no singular vertex, or x_i^k is a monomial of degree e.
                continue;
            }
            // Need x_i^k x_j of degree e for quasi-smoothness at the vertex.
            let j = (0..4).find(|&j| j != i && e > w[j] && (e - w[j]).is_multiple_of(w[i]))?;
            let rest: Vec<u64> = (0..4).filter(|&k| k != i && k != j).map(|k| w[k] % w[i]).collect();
            let q = CyclicQuotient::from_weights(w[i], rest[0], rest[1]).ok()?;
            out.push((w[i], q));
        }
        Some(out)
    }
}

impl std::fmt::Display for WpsHypersurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c, d] = self.weights;
        write!(f, "X_{} in P({a},{b},{c},{d})", self.degree)
    }
}

pub fn hyp_k_squared(h: &WpsHypersurface) -> Rational {
    h.k_squared()
}

/// A component known only through its numerical invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredSurface {
    #[serde(default)]
    pub label: Option<String>,
    pub k_squared: Rational,
    pub picard: u32,
    #[serde(default)]
    pub singularities: Vec<GermKind>,
    /// `K = c H`, needed only when the component meets a double curve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_multiple: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_squared: Option<Rational>,
}

impl DeclaredSurface {
    /// The cone over an elliptic curve of degree 9.
    pub fn elliptic_cone_degree_9() -> Self {
        DeclaredSurface {
            label: Some("elliptic cone of degree 9".into()),
            k_squared: Rational::integer(9),
            picard: 1,
            singularities: vec![GermKind::SimpleElliptic],
            canonical_multiple: None,
            h_squared: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    Wps(Wps2),
    Hypersurface(WpsHypersurface),
    Declared(DeclaredSurface),
}

impl Geometry {
    pub fn k_squared(&self) -> Rational {
        match self {
            Geometry::Wps(s) => s.k_squared(),
            Geometry::Hypersurface(h) => h.k_squared(),
            Geometry::Declared(d) => d.k_squared.clone(),
        }
    }

    pub fn picard(&self) -> u32 {
        match self {
            Geometry::Wps(_) => 1,
            Geometry::Hypersurface(h) => h.picard,
            Geometry::Declared(d) => d.picard,
        }
    }

    pub fn singularities(&self) -> Vec<GermKind> {
        match self {
            Geometry::Wps(s) => s.singularities().into_iter().map(GermKind::from).collect(),
            Geometry::Hypersurface(h) => h.singularities.clone(),
            Geometry::Declared(d) => d.singularities.clone(),
        }
    }

    /// `(c, H^2)` with `K = c H`.
    pub fn class_data(&self) -> Option<(Rational, Rational)> {
        match self {
            Geometry::Wps(s) => Some((s.canonical_multiple(), s.h_squared())),
            Geometry::Hypersurface(h) => Some((h.canonical_multiple(), h.h_squared())),
            Geometry::Declared(d) => Some((d.canonical_multiple.clone()?, d.h_squared.clone()?)),
        }
    }

    fn vertex_points(&self) -> Option<Vec<(u64, CyclicQuotient)>> {
        match self {
            Geometry::Wps(s) => Some(s.vertex_points()),
            Geometry::Hypersurface(h) => h.vertex_points(),
            Geometry::Declared(_) => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Geometry::Wps(_) => Ok(()),
            Geometry::Hypersurface(h) => h.validate(),
            Geometry::Declared(d) => {
                if d.picard == 0 {
                    return Err(Error::domain("Picard number must be positive"));
                }
                d.singularities.iter().try_for_each(GermKind::validate)
            }
        }
    }
}

impl std::fmt::Display for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Geometry::Wps(s) => write!(f, "{s}"),
            Geometry::Hypersurface(h) => write!(f, "{h}"),
            Geometry::Declared(d) => match &d.label {
                Some(l) => write!(f, "{l}"),
                None => write!(f, "declared surface (K^2 = {}, rho = {})", d.k_squared, d.picard),
            },
        }
    }
}

/// One irreducible component of a (possibly non-normal) surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub surface: Geometry,
    /// Restriction of the double curve, as the multiple `q` in `Δ = q H`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub double_curve: Option<Rational>,
    /// Overrides the Picard number of the geometry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub picard: Option<u32>,
    /// Singular points lying on the double curve. Derived for weighted
    /// projective geometry with an integral `q` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_points: Option<Vec<CyclicQuotient>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_type_data: Option<PairTypeData>,
}

impl Component {
    pub fn new(surface: Geometry) -> Self {
        Component {
            surface,
            double_curve: None,
            picard: None,
            boundary_points: None,
            pair_type_data: None,
        }
    }

    pub fn wps(weights: [u64; 3]) -> Result<Self> {
        Ok(Component::new(Geometry::Wps(Wps2::new(weights)?)))
    }

    pub fn with_double_curve(mut self, q: Rational) -> Self {
        self.double_curve = Some(q);
        self
    }

    pub fn with_picard(mut self, rho: u32) -> Self {
        self.picard = Some(rho);
        self
    }

    pub fn with_pair_type_data(mut self, data: PairTypeData) -> Self {
        self.pair_type_data = Some(data);
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.surface.validate()?;
        if let Some(q) = &self.double_curve {
            if !q.is_positive() {
                return Err(Error::domain(format!("double curve multiple {q} must be positive")));
            }
        }
        if self.picard == Some(0) {
            return Err(Error::domain("Picard number must be positive"));
        }
        Ok(())
    }

    pub fn k_squared(&self) -> Rational {
        self.surface.k_squared()
    }

    pub fn picard(&self) -> u32 {
        self.picard.unwrap_or_else(|| self.surface.picard())
    }

    pub fn singularities(&self) -> Vec<GermKind> {
        self.surface.singularities()
    }

    /// Singular points on the double curve: explicit, or the vertices a
    /// general member of `|O(q)|` passes through (`w_i` not dividing `q`).
    pub fn points_on_double_curve(&self) -> Vec<CyclicQuotient> {
        if let Some(pts) = &self.boundary_points {
            return pts.clone();
        }
        let Some(q) = self.double_curve.as_ref().and_then(Rational::to_i64) else {
            return Vec::new();
        };
        let mut pts: Vec<CyclicQuotient> = self
            .surface
            .vertex_points()
            .unwrap_or_default()
            .into_iter()
            .filter(|(w, _)| !(q as u64).is_multiple_of(*w))
            .map(|(_, p)| p)
            .collect();
        pts.sort();
        pts
    }

    /// Singular points off the double curve.
    pub fn interior_singularities(&self) -> Vec<GermKind> {
        let mut boundary: Vec<CyclicQuotient> = self.points_on_double_curve();
        let mut out = Vec::new();
        for s in self.singularities() {
            if let Some(c) = s.as_cyclic() {
                if let Some(pos) = boundary.iter().position(|b| *b == c) {
                    boundary.swap_remove(pos);
                    continue;
                }
            }
            out.push(s);
        }
        out
    }

    /// Number of boundary curves of the pair `(X_i^ν, Δ_i^ν)`.
    pub fn boundary_curve_count(&self) -> usize {
        match (&self.pair_type_data, &self.double_curve) {
            (Some(p), _) => p.curves.len(),
            (None, Some(_)) => 1,
            (None, None) => 0,
        }
    }

    /// Explicit pair data, or the data of a single smooth rational boundary
    /// curve through the points on the double curve.
    pub fn effective_pair_data(&self) -> PairTypeData {
        if let Some(p) = &self.pair_type_data {
            return p.clone();
        }
        if self.double_curve.is_none() {
            return PairTypeData { curves: Vec::new() };
        }
        let germs = self
            .points_on_double_curve()
            .into_iter()
            .filter(|p| !p.is_smooth())
            .map(|p| BoundaryGerm::Delta { r: p.r(), a: p.a() })
            .collect();
        PairTypeData {
            curves: vec![BoundaryCurve {
                arithmetic_genus: 0,
                germs,
                other_intersection: Rational::zero(),
            }],
        }
    }
}

/// `K^2 + sum Z_K^2 + rho + sum (chain length)` over the singular points,
/// i.e. `K^2 + rho` of the minimal resolution. Fails on germs that are not
/// cyclic quotients.
pub fn noether_total(c: &Component) -> Result<Rational> {
    let mut total = c.k_squared() + c.picard() as i64;
    for s in c.singularities() {
        let q = s.as_cyclic().ok_or_else(|| {
            Error::domain(format!("no resolution data for the singularity {s}"))
        })?;
        total = total + k2rho_change(&q);
    }
    Ok(total)
}

/// Noether's formula on the minimal resolution of a rational component:
/// `K~^2 + rho~ = 10`.
pub fn noether_check(c: &Component) -> Result<bool> {
    Ok(noether_total(c)? == Rational::integer(10))
}

/// A surface descriptor as read from JSON: a bare geometry is a normal
/// surface with one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceJson {
    Wps(Wps2),
    Hypersurface(WpsHypersurface),
    Declared(DeclaredSurface),
    Glued(GluedSurface),
}

impl SurfaceJson {
    pub fn into_glued(self) -> Result<GluedSurface> {
        let g = match self {
            SurfaceJson::Wps(s) => GluedSurface::single(Component::new(Geometry::Wps(s)))?,
            SurfaceJson::Hypersurface(h) => GluedSurface::single(Component::new(Geometry::Hypersurface(h)))?,
            SurfaceJson::Declared(d) => GluedSurface::single(Component::new(Geometry::Declared(d)))?,
            SurfaceJson::Glued(g) => g,
        };
        g.validate()?;
        Ok(g)
    }
}

pub fn parse_surface(json: &str) -> Result<GluedSurface> {
    serde_json::from_str::<SurfaceJson>(json)?.into_glued()
}

pub fn surface_to_json(g: &GluedSurface) -> String {
    serde_json::to_string_pretty(&SurfaceJson::Glued(g.clone())).expect("surface serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cq(r: u64, a: i64) -> CyclicQuotient {
        CyclicQuotient::new(r, a).unwrap()
    }

    fn x26() -> WpsHypersurface {
        WpsHypersurface::new(
            [1, 2, 13, 25],
            26,
            vec![GermKind::CyclicLT { r: 25, a: 4 }],
            1,
        )
        .unwrap()
    }

    fn x6() -> WpsHypersurface {
        WpsHypersurface::new([1, 2, 3, 5], 6, vec![GermKind::CyclicLT { r: 5, a: 4 }], 1).unwrap()
    }

    #[test]
    fn k_squared_examples() {
        assert_eq!(Wps2::new([1, 1, 1]).unwrap().k_squared(), Rational::integer(9));
        assert_eq!(Wps2::new([1, 1, 4]).unwrap().k_squared(), Rational::integer(9));
        assert_eq!(Wps2::new([1, 4, 25]).unwrap().k_squared(), Rational::integer(9));
        assert_eq!(Wps2::new([1, 1, 3]).unwrap().k_squared(), Rational::frac(25, 3));
        assert!(Wps2::new([2, 4, 1]).is_err());
        assert!(Wps2::new([0, 1, 1]).is_err());
    }

    #[test]
    fn hypersurface_k_squared_examples() {
        assert_eq!(x26().k_squared(), Rational::integer(9));
        assert_eq!(x6().k_squared(), Rational::integer(5));
        let cubic = WpsHypersurface::new([1, 1, 1, 1], 3, vec![], 7).unwrap();
        assert_eq!(cubic.k_squared(), Rational::integer(3));
    }

    #[test]
    fn singularity_examples() {
        assert_eq!(Wps2::new([1, 1, 4]).unwrap().singularities(), vec![cq(4, 1)]);
        assert_eq!(
            Wps2::new([1, 4, 25]).unwrap().singularities(),
            vec![cq(4, 1), cq(25, 4)]
        );
        assert!(Wps2::new([1, 1, 1]).unwrap().singularities().is_empty());
        assert_eq!(
            Wps2::new([1, 4, 5]).unwrap().singularities(),
            vec![cq(4, 1), cq(5, 4)]
        );
    }

    #[test]
    fn hypersurface_vertices_match_declared_data() {
        assert_eq!(x26().vertex_points().unwrap(), vec![(25, cq(25, 4))]);
        assert_eq!(x6().vertex_points().unwrap(), vec![(5, cq(5, 4))]);
        let not_coprime = WpsHypersurface::new([1, 2, 2, 3], 6, vec![], 1).unwrap();
        assert!(not_coprime.vertex_points().is_none());
    }

    #[test]
    fn noether_examples() {
        for (w, total) in [([1, 1, 4], 10), ([1, 1, 1], 10), ([1, 4, 25], 10), ([1, 1, 2], 10)] {
            let c = Component::wps(w).unwrap();
            assert_eq!(noether_total(&c).unwrap(), Rational::integer(total), "{w:?}");
            assert!(noether_check(&c).unwrap());
        }
        assert!(noether_check(&Component::new(Geometry::Hypersurface(x26()))).unwrap());
        assert!(noether_check(&Component::new(Geometry::Hypersurface(x6()))).unwrap());
        // Non-rational: the elliptic cone has no cyclic resolution data.
        let cone = Component::new(Geometry::Declared(DeclaredSurface::elliptic_cone_degree_9()));
        assert!(noether_check(&cone).is_err());
    }

    #[test]
    fn points_on_double_curve() {
        let c = Component::wps([1, 1, 5]).unwrap().with_double_curve(Rational::one());
        assert_eq!(c.points_on_double_curve(), vec![cq(5, 1)]);
        assert!(c.interior_singularities().is_empty());
        let c = Component::wps([1, 4, 5]).unwrap().with_double_curve(Rational::integer(4));
        assert_eq!(c.points_on_double_curve(), vec![cq(5, 4)]);
        assert_eq!(c.interior_singularities(), vec![GermKind::CyclicLT { r: 4, a: 1 }]);
        let c = Component::new(Geometry::Hypersurface(x6())).with_double_curve(Rational::integer(2));
        assert_eq!(c.points_on_double_curve(), vec![cq(5, 4)]);
    }

    #[test]
    fn geometry_json() {
        let g: Geometry = serde_json::from_str(r#"{"kind":"wps","weights":[1,4,25]}"#).unwrap();
        assert_eq!(g, Geometry::Wps(Wps2::new([1, 4, 25]).unwrap()));
        assert!(serde_json::from_str::<Geometry>(r#"{"kind":"wps","weights":[2,2,1]}"#).is_err());
        let h: Geometry = serde_json::from_str(
            r#"{"kind":"hypersurface","weights":[1,2,13,25],"degree":26,
                "singularities":[{"kind":"cyclic","r":25,"a":4}]}"#,
        )
        .unwrap();
        assert_eq!(h.k_squared(), Rational::integer(9));
        assert_eq!(h.picard(), 1);
        let back: Geometry = serde_json::from_value(serde_json::to_value(&h).unwrap()).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn surface_json_round_trip() {
        let single = parse_surface(r#"{"kind":"wps","weights":[1,1,4]}"#).unwrap();
        assert_eq!(single.components.len(), 1);
        for row in builtin_catalog(5).unwrap() {
            let text = surface_to_json(&row.surface);
            assert_eq!(parse_surface(&text).unwrap(), row.surface, "{text}");
        }
        let glued = r#"{"kind":"glued",
            "components":[
              {"surface":{"kind":"wps","weights":[1,1,2]},"double_curve":"1"},
              {"surface":{"kind":"wps","weights":[1,1,2]},"double_curve":"1"}],
            "gluing":[{"pair":[{"component":0},{"component":1}]}],
            "nc_quotient_indices":[{"r":2,"a":1}]}"#;
        let g = parse_surface(glued).unwrap();
        assert_eq!(coarse_type(&g), CoarseType::B);
        let bad = r#"{"kind":"glued","components":[{"surface":{"kind":"wps","weights":[1,1,2]}}],
            "gluing":[{"fold":{"component":0}}]}"#;
        assert!(parse_surface(bad).is_err());
    }
}
