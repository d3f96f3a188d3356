//! Pair types of components and coarse types of glued surfaces.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Component;
use crate::error::{Error, Result};
use crate::exactmath::{gcd, Rational};

/// A log canonical germ of `(Y, C)` at a point of a boundary curve `Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryGerm {
    /// `(1/r(1,a), Δ)`: contributes `1 - 1/r`.
    Delta { r: u64, a: u64 },
    /// `(1/r(1,a), 2Δ)`: a node of `C` on `Γ`; contributes 1.
    TwoDelta { r: u64, a: u64 },
    /// `(D, Δ)`: contributes 1.
    Dihedral,
}

impl BoundaryGerm {
    pub fn contribution(&self) -> Rational {
        match *self {
            BoundaryGerm::Delta { r, .. } => Rational::one() - Rational::frac(1, r as i64),
            BoundaryGerm::TwoDelta { .. } | BoundaryGerm::Dihedral => Rational::one(),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            BoundaryGerm::Delta { r, a } | BoundaryGerm::TwoDelta { r, a } => {
                if r == 0 || (r > 1 && gcd(a % r, r) != 1) {
                    return Err(Error::domain(format!("boundary germ 1/{r}(1,{a}) is not a cyclic quotient")));
                }
                Ok(())
            }
            BoundaryGerm::Dihedral => Ok(()),
        }
    }
}

/// A component `Γ` of the boundary `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    #[serde(default)]
    pub arithmetic_genus: u32,
    #[serde(default)]
    pub germs: Vec<BoundaryGerm>,
    /// `(C - Γ)·Γ`, counting smooth points where other boundary curves meet `Γ`.
    #[serde(default = "Rational::zero")]
    pub other_intersection: Rational,
}

impl BoundaryCurve {
    pub fn rational(germs: Vec<BoundaryGerm>) -> Self {
        BoundaryCurve { arithmetic_genus: 0, germs, other_intersection: Rational::zero() }
    }

    /// `Diff(Y, Γ) + (C - Γ)·Γ`.
    pub fn adjunction_excess(&self) -> Rational {
        let diff: Rational = self.germs.iter().map(BoundaryGerm::contribution).sum();
        diff + self.other_intersection.clone()
    }

    fn count(&self, pred: impl Fn(&BoundaryGerm) -> bool) -> usize {
        self.germs.iter().filter(|g| pred(g)).count()
    }

    fn dihedral(&self) -> usize {
        self.count(|g| matches!(g, BoundaryGerm::Dihedral))
    }

    fn two_delta(&self) -> usize {
        self.count(|g| matches!(g, BoundaryGerm::TwoDelta { .. }))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTypeData {
    pub curves: Vec<BoundaryCurve>,
}

impl PairTypeData {
    pub fn validate(&self) -> Result<()> {
        for c in &self.curves {
            if c.other_intersection.is_negative() {
                return Err(Error::domain("(C - Γ)·Γ must be nonnegative"));
            }
            c.germs.iter().try_for_each(BoundaryGerm::validate)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairType {
    I,
    II,
    III,
    IV,
    Invalid,
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PairType::I => "I",
            PairType::II => "II",
            PairType::III => "III",
            PairType::IV => "IV",
            PairType::Invalid => "invalid",
        };
        f.write_str(s)
    }
}

/// Type of a log canonical pair `(Y, C)` with `-(K_Y + C)` ample.
///
/// Each `Γ` must be smooth rational with `Diff(Y,Γ) + (C-Γ)Γ < 2`. A node
/// between the two curves of a type III boundary is recorded on each curve
/// either as a unit of `other_intersection` (a smooth point of `Y`) or as a
/// `TwoDelta` germ.
pub fn pair_type(p: &PairTypeData) -> PairType {
    if p.validate().is_err() {
        return PairType::Invalid;
    }
    let two = Rational::integer(2);
    if p.curves.iter().any(|c| c.arithmetic_genus > 0 || c.adjunction_excess() >= two) {
        return PairType::Invalid;
    }
    match p.curves.as_slice() {
        [] => PairType::I,
        [c] => {
            if c.two_delta() > 0 || !c.other_intersection.is_zero() {
                PairType::Invalid
            } else if c.dihedral() == 1 {
                PairType::IV
            } else {
                PairType::II
            }
        }
        [c1, c2] => {
            let node = |c: &BoundaryCurve| {
                c.dihedral() == 0
                    && c.other_intersection.is_integer()
                    && c.other_intersection.to_i64().map(|k| k as usize + c.two_delta()) == Some(1)
            };
            let same_node = c1.two_delta() == c2.two_delta()
                && c1.other_intersection == c2.other_intersection;
            if node(c1) && node(c2) && same_node {
                PairType::III
            } else {
                PairType::Invalid
            }
        }
        _ => PairType::Invalid,
    }
}

/// Boundary curve `curve` of component `component`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveRef {
    pub component: usize,
    #[serde(default)]
    pub curve: usize,
}

impl CurveRef {
    pub fn new(component: usize, curve: usize) -> Self {
        CurveRef { component, curve }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gluing {
    /// Two boundary curves identified with each other.
    Pair([CurveRef; 2]),
    /// A boundary curve folded onto itself by a double cover.
    Fold(CurveRef),
}

/// An `(xy = 0) ⊂ 1/r(1,-1,a)` point on the double curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NcPoint {
    pub r: u64,
    pub a: u64,
}

impl fmt::Display for NcPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(xy=0) in 1/{}(1,-1,{})", self.r, self.a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoarseType {
    A,
    B,
    BStar,
    C,
    D,
    Invalid,
}

impl fmt::Display for CoarseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoarseType::A => "A",
            CoarseType::B => "B",
            CoarseType::BStar => "B*",
            CoarseType::C => "C",
            CoarseType::D => "D",
            CoarseType::Invalid => "invalid",
        };
        f.write_str(s)
    }
}

/// A surface given by its normalized components and the gluing of their
/// boundary curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedSurface {
    pub components: Vec<Component>,
    #[serde(default)]
    pub gluing: Vec<Gluing>,
    #[serde(default, rename = "nc_quotient_indices")]
    pub nc_quotients: Vec<NcPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
}

impl GluedSurface {
    pub fn new(components: Vec<Component>, gluing: Vec<Gluing>, nc_quotients: Vec<NcPoint>) -> Result<Self> {
        let g = GluedSurface { components, gluing, nc_quotients, degree: None };
        g.validate()?;
        Ok(g)
    }

    pub fn single(c: Component) -> Result<Self> {
        GluedSurface::new(vec![c], Vec::new(), Vec::new())
    }

    /// Two components glued along their unique boundary curves.
    pub fn two_glued(c1: Component, c2: Component, nc: Vec<NcPoint>) -> Result<Self> {
        GluedSurface::new(
            vec![c1, c2],
            vec![Gluing::Pair([CurveRef::new(0, 0), CurveRef::new(1, 0)])],
            nc,
        )
    }

    pub fn with_degree(mut self, d: u64) -> Self {
        self.degree = Some(d);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::domain("a surface needs at least one component"));
        }
        for c in &self.components {
            c.validate()?;
            if let Some(p) = &c.pair_type_data {
                p.validate()?;
            }
        }
        for nc in &self.nc_quotients {
            if nc.r == 0 || (nc.r > 1 && gcd(nc.a % nc.r, nc.r) != 1) {
                return Err(Error::domain(format!("{nc}: a is not a unit modulo r")));
            }
        }
        let mut used = BTreeSet::new();
        for gl in &self.gluing {
            let refs: Vec<CurveRef> = match *gl {
                Gluing::Pair([a, b]) => {
                    if a == b {
                        return Err(Error::domain(format!(
                            "boundary curve {}:{} glued to itself; use a fold",
                            a.component, a.curve
                        )));
                    }
                    vec![a, b]
                }
                Gluing::Fold(a) => vec![a],
            };
            for r in refs {
                let comp = self.components.get(r.component).ok_or_else(|| {
                    Error::domain(format!("gluing refers to missing component {}", r.component))
                })?;
                if r.curve >= comp.boundary_curve_count() {
                    return Err(Error::domain(format!(
                        "component {} has no boundary curve {}",
                        r.component, r.curve
                    )));
                }
                if !used.insert(r) {
                    return Err(Error::domain(format!(
                        "boundary curve {}:{} is used by more than one gluing",
                        r.component, r.curve
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn pair_types(&self) -> Vec<PairType> {
        self.components.iter().map(|c| pair_type(&c.effective_pair_data())).collect()
    }

    fn all_curves_glued(&self) -> bool {
        let total: usize = self.components.iter().map(Component::boundary_curve_count).sum();
        let used: usize = self
            .gluing
            .iter()
            .map(|g| match g {
                Gluing::Pair(_) => 2,
                Gluing::Fold(_) => 1,
            })
            .sum();
        total == used
    }

    fn folds_on(&self, i: usize) -> usize {
        self.gluing
            .iter()
            .filter(|g| matches!(g, Gluing::Fold(r) if r.component == i))
            .count()
    }

    /// Component adjacency (with multiplicity) from paired curves.
    fn pair_edges(&self) -> Vec<(usize, usize)> {
        self.gluing
            .iter()
            .filter_map(|g| match g {
                Gluing::Pair([a, b]) => Some((a.component, b.component)),
                Gluing::Fold(_) => None,
            })
            .collect()
    }
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut deg = vec![0; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    deg
}

/// Matches the gluing pattern against the five coarse shapes.
pub fn coarse_type(g: &GluedSurface) -> CoarseType {
    if g.validate().is_err() || !g.all_curves_glued() {
        return CoarseType::Invalid;
    }
    let types = g.pair_types();
    if types.contains(&PairType::Invalid) {
        return CoarseType::Invalid;
    }
    let n = types.len();
    let edges = g.pair_edges();
    let folds: Vec<usize> = (0..n).map(|i| g.folds_on(i)).collect();

    match (n, types.as_slice()) {
        (1, [PairType::I]) => return CoarseType::A,
        (1, [PairType::II]) if folds[0] == 1 => return CoarseType::BStar,
        (2, [PairType::II, PairType::II]) if edges.len() == 1 && edges[0].0 != edges[0].1 => {
            return CoarseType::B
        }
        _ => {}
    }
    if !connected(n, &edges) {
        return CoarseType::Invalid;
    }
    let deg = degrees(n, &edges);

    // Umbrella: a cycle of type III components, every curve paired.
    if types.iter().all(|t| *t == PairType::III)
        && folds.iter().all(|&f| f == 0)
        && deg.iter().all(|&d| d == 2)
        && edges.len() == n
    {
        return CoarseType::C;
    }

    // Fan: a path whose two ends are closed off by a type IV component or a fold.
    if edges.len() + 1 == n && deg.iter().all(|&d| d <= 2) {
        let ends_ok = (0..n).all(|i| {
            let needed_ends = if n == 1 { 2 } else { 2 - deg[i] };
            let closing = folds[i] + usize::from(types[i] == PairType::IV);
            match types[i] {
                PairType::III => folds[i] == needed_ends,
                PairType::IV => needed_ends >= 1 && closing == needed_ends,
                _ => false,
            }
        });
        if ends_ok {
            return CoarseType::D;
        }
    }
    CoarseType::Invalid
}

/// Surfaces allowed in stable pairs of degree `d`: when `3 ∤ d` only log
/// terminal normal surfaces and type B surfaces occur.
pub fn slt_constraint(d: u64, g: &GluedSurface) -> Result<bool> {
    if d < 4 {
        return Err(Error::domain(format!("degree {d} is below 4")));
    }
    if d.is_multiple_of(3) {
        return Ok(true);
    }
    Ok(match coarse_type(g) {
        CoarseType::A => g.components[0]
            .singularities()
            .iter()
            .all(|s| s.is_slt() && s.is_normal()),
        CoarseType::B => true,
        _ => false,
    })
}
