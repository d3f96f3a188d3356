//! Numerical checks on surfaces of type B: two components glued along a
//! smooth rational curve.

use serde::{Deserialize, Serialize};

use super::classify::{coarse_type, CoarseType, GluedSurface, NcPoint};
use super::Component;
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::quotsing::{class_t_decompositions, CyclicQuotient, GermKind};

fn class_data(i: usize, c: &Component) -> Result<(Rational, Rational, Rational)> {
    let q = c
        .double_curve
        .clone()
        .ok_or_else(|| Error::domain(format!("component {i} has no double curve data")))?;
    let (k, h2) = c.surface.class_data().ok_or_else(|| {
        Error::domain(format!("component {i} does not declare K and H^2 as multiples of H"))
    })?;
    Ok((k, q, h2))
}

/// `sum_i (K_i + Δ_i)^2`, with `K_i = k H` and `Δ_i = q H`.
pub fn glued_k_squared(g: &GluedSurface) -> Result<Rational> {
    let mut total = Rational::zero();
    for (i, c) in g.components.iter().enumerate() {
        let (k, q, h2) = class_data(i, c)?;
        total = total + (k + q).pow(2) * h2;
    }
    Ok(total)
}

/// `Δ_1^2 + Δ_2^2`, the degree of `T^1_QG` along the double curve.
pub fn t1_degree(g: &GluedSurface) -> Result<Rational> {
    let t = coarse_type(g);
    if t != CoarseType::B {
        return Err(Error::domain(format!("surface is of type {t}, not B")));
    }
    let mut total = Rational::zero();
    for (i, c) in g.components.iter().enumerate() {
        let (_, q, h2) = class_data(i, c)?;
        total = total + q.pow(2) * h2;
    }
    Ok(total)
}

/// `3 - (ρ1 + ρ2)`.
pub fn delta_squares(rho1: u32, rho2: u32) -> Result<Rational> {
    if rho1 == 0 || rho2 == 0 {
        return Err(Error::domain("Picard numbers must be positive"));
    }
    Ok(Rational::integer(3 - (rho1 as i64 + rho2 as i64)))
}

fn nc_defect(nc: &[NcPoint]) -> Rational {
    nc.iter()
        .map(|p| Rational::one() - Rational::frac(1, p.r as i64))
        .sum()
}

/// `K_i Δ_i + Δ_i^2 = -2 + sum_j (1 - 1/r_j)` on each component. Returns
/// both sides per component.
pub fn adjunction_check(g: &GluedSurface) -> Result<Vec<(Rational, Rational)>> {
    let rhs = Rational::integer(-2) + nc_defect(&g.nc_quotients);
    g.components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (k, q, h2) = class_data(i, c)?;
            Ok(((k * &q + q.pow(2)) * h2, rhs.clone()))
        })
        .collect()
}

/// `K_1^2 + K_2^2` against `20 - (ρ1 + ρ2) - 4 sum_j (1 - 1/r_j)`, the
/// form Noether's formula takes on the two minimal resolutions.
pub fn noether_bookkeeping(g: &GluedSurface) -> Result<(Rational, Rational)> {
    let lhs: Rational = g.components.iter().map(Component::k_squared).sum();
    let rho: i64 = g.components.iter().map(|c| c.picard() as i64).sum();
    let rhs = Rational::integer(20 - rho) - nc_defect(&g.nc_quotients) * 4;
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl ConditionResult {
    fn new(name: &str, passed: bool, details: impl Into<String>) -> Self {
        ConditionResult { name: name.to_string(), passed, details: details.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeBReport {
    pub smoothable: bool,
    pub conditions: Vec<ConditionResult>,
}

fn is_wahl(s: &GermKind) -> bool {
    match *s {
        GermKind::Smooth => true,
        GermKind::TSingularity { d, .. } => d == 1,
        _ => s
            .as_cyclic()
            .is_some_and(|c| class_t_decompositions(&c).iter().any(|&(d, _, _)| d == 1)),
    }
}

/// Matches the singular points of the two sides of the double curve in dual
/// pairs `1/r(1,a)`, `1/r(1,-a)`, one per listed normal crossing quotient.
fn nc_pairing(g: &GluedSurface) -> std::result::Result<(), String> {
    let nontrivial = |c: &Component| -> Vec<CyclicQuotient> {
        c.points_on_double_curve().into_iter().filter(|p| !p.is_smooth()).collect()
    };
    let mut side0 = nontrivial(&g.components[0]);
    let mut side1 = nontrivial(&g.components[1]);
    for nc in g.nc_quotients.iter().filter(|p| p.r > 1) {
        let p = CyclicQuotient::new(nc.r, nc.a as i64).map_err(|e| e.to_string())?;
        let take = |side: &mut Vec<CyclicQuotient>, q: CyclicQuotient| {
            side.iter().position(|x| *x == q).map(|i| side.swap_remove(i)).is_some()
        };
        let matched = if take(&mut side0, p) {
            take(&mut side1, p.dual())
        } else if take(&mut side0, p.dual()) {
            take(&mut side1, p)
        } else {
            false
        };
        if !matched {
            return Err(format!("{nc} does not match a dual pair of points on the two sides"));
        }
    }
    if !side0.is_empty() || !side1.is_empty() {
        let left: Vec<String> = side0.iter().chain(&side1).map(|p| p.to_string()).collect();
        return Err(format!("points on the double curve not covered by the listed quotients: {}", left.join(", ")));
    }
    Ok(())
}

/// The three conditions for a type B surface to smooth to the plane:
/// singularities `1/n^2(1,na-1)` away from the double curve and at most two
/// non-Gorenstein normal crossing quotients on it; `K^2 = 9`; Picard numbers
/// `{1,1}` or `{1,2}`.
pub fn type_b_smoothable(g: &GluedSurface) -> TypeBReport {
    let mut conditions = Vec::new();
    let t = coarse_type(g);
    if t != CoarseType::B {
        conditions.push(ConditionResult::new("type B", false, format!("coarse type is {t}")));
        return TypeBReport { smoothable: false, conditions };
    }

    let bad: Vec<String> = g
        .components
        .iter()
        .flat_map(|c| c.interior_singularities())
        .filter(|s| !is_wahl(s))
        .map(|s| s.to_string())
        .collect();
    let non_gorenstein = g.nc_quotients.iter().filter(|p| p.r > 1).count();
    let pairing = nc_pairing(g);
    let (passed, details) = if !bad.is_empty() {
        (false, format!("not of the form 1/n^2(1,na-1): {}", bad.join(", ")))
    } else if non_gorenstein > 2 {
        (false, format!("{non_gorenstein} normal crossing quotients of index > 1"))
    } else if let Err(e) = pairing {
        (false, e)
    } else {
        (true, format!("{non_gorenstein} normal crossing quotient(s) of index > 1"))
    };
    conditions.push(ConditionResult::new("singularities", passed, details));

    let k2 = match glued_k_squared(g) {
        Ok(k2) => ConditionResult::new("K^2 = 9", k2 == Rational::integer(9), format!("K^2 = {k2}")),
        Err(e) => ConditionResult::new("K^2 = 9", false, e.to_string()),
    };
    conditions.push(k2);

    let (r1, r2) = (g.components[0].picard(), g.components[1].picard());
    let mut rho = [r1, r2];
    rho.sort_unstable();
    conditions.push(ConditionResult::new(
        "Picard numbers",
        rho == [1, 1] || rho == [1, 2],
        format!("rho = ({r1}, {r2})"),
    ));

    TypeBReport { smoothable: conditions.iter().all(|c| c.passed), conditions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfcat::{Geometry, WpsHypersurface};

    fn comp(w: [u64; 3], q: i64) -> Component {
        Component::wps(w).unwrap().with_double_curve(Rational::integer(q))
    }

    fn nc(r: u64, a: u64) -> Vec<NcPoint> {
        vec![NcPoint { r, a }]
    }

    fn x6(q: i64) -> Component {
        let h = WpsHypersurface::new([1, 2, 3, 5], 6, vec![GermKind::CyclicLT { r: 5, a: 4 }], 1).unwrap();
        Component::new(Geometry::Hypersurface(h)).with_double_curve(Rational::integer(q))
    }

    #[test]
    fn glued_k_squared_examples() {
        let g = GluedSurface::two_glued(comp([1, 1, 2], 1), comp([1, 1, 2], 1), nc(2, 1)).unwrap();
        assert_eq!(glued_k_squared(&g).unwrap(), Rational::integer(9));
        let g = GluedSurface::two_glued(comp([1, 1, 5], 1), comp([1, 4, 5], 4), nc(5, 1)).unwrap();
        assert_eq!(glued_k_squared(&g).unwrap(), Rational::integer(9));
        let g = GluedSurface::two_glued(comp([1, 1, 5], 1), x6(2), nc(5, 1)).unwrap();
        assert_eq!(glued_k_squared(&g).unwrap(), Rational::integer(9));
        let open = GluedSurface::single(Component::wps([1, 1, 1]).unwrap()).unwrap();
        assert!(glued_k_squared(&open).is_err());
    }

    #[test]
    fn t1_and_delta_squares() {
        assert_eq!(delta_squares(1, 1).unwrap(), Rational::one());
        assert_eq!(delta_squares(1, 2).unwrap(), Rational::zero());
        assert!(delta_squares(0, 1).is_err());
        for g in [
            GluedSurface::two_glued(comp([1, 1, 2], 1), comp([1, 1, 2], 1), nc(2, 1)).unwrap(),
            GluedSurface::two_glued(comp([1, 1, 5], 1), comp([1, 4, 5], 4), nc(5, 1)).unwrap(),
            GluedSurface::two_glued(comp([1, 1, 5], 1), x6(2), nc(5, 1)).unwrap(),
        ] {
            assert_eq!(t1_degree(&g).unwrap(), Rational::one());
        }
        let a = GluedSurface::single(Component::wps([1, 1, 4]).unwrap()).unwrap();
        assert!(t1_degree(&a).is_err());
    }

    #[test]
    fn smoothability_examples() {
        let g = GluedSurface::two_glued(comp([1, 1, 2], 1), comp([1, 1, 2], 1), nc(2, 1)).unwrap();
        assert!(type_b_smoothable(&g).smoothable);

        let g = GluedSurface::two_glued(comp([1, 1, 5], 1), comp([1, 4, 5], 4), nc(5, 1)).unwrap();
        let report = type_b_smoothable(&g);
        assert!(report.smoothable, "{report:?}");

        let g = GluedSurface::two_glued(
            comp([1, 1, 5], 1).with_picard(2),
            comp([1, 4, 5], 4).with_picard(2),
            nc(5, 1),
        )
        .unwrap();
        let report = type_b_smoothable(&g);
        assert!(!report.smoothable);
        let failed: Vec<_> = report.conditions.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["Picard numbers"]);
    }

    #[test]
    fn unmatched_boundary_points_fail() {
        // No quotient listed for the index 5 points on the double curve.
        let g = GluedSurface::two_glued(comp([1, 1, 5], 1), comp([1, 4, 5], 4), vec![]).unwrap();
        assert!(!type_b_smoothable(&g).conditions[0].passed);
        // Same index on both sides, but not dual.
        let g = GluedSurface::two_glued(comp([1, 1, 5], 1), comp([1, 1, 5], 1), nc(5, 1)).unwrap();
        assert!(!type_b_smoothable(&g).conditions[0].passed);
    }

    #[test]
    fn adjunction_and_noether_on_rows() {
        for g in [
            GluedSurface::two_glued(comp([1, 1, 2], 1), comp([1, 1, 2], 1), nc(2, 1)).unwrap(),
            GluedSurface::two_glued(comp([1, 1, 5], 1), comp([1, 4, 5], 4), nc(5, 1)).unwrap(),
            GluedSurface::two_glued(comp([1, 1, 5], 1), x6(2), nc(5, 1)).unwrap(),
        ] {
            for (lhs, rhs) in adjunction_check(&g).unwrap() {
                assert_eq!(lhs, rhs);
            }
            let (lhs, rhs) = noether_bookkeeping(&g).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
