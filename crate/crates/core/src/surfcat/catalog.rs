//! The surfaces and local germs of stable pairs of degree 4 and 5, and a
//! verifier that recomputes every numerical claim about them.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::classify::{coarse_type, slt_constraint, CoarseType, GluedSurface, NcPoint};
use super::typeb::{
    adjunction_check, delta_squares, glued_k_squared, noether_bookkeeping, t1_degree,
    type_b_smoothable,
};
use super::{noether_total, Component, Geometry, Wps2, WpsHypersurface};
use crate::curvewt::{index_congruence_a, index_congruence_b, stable_pair_local_test, CurveGerm};
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::quotsing::{class_t_decompositions, is_p2_admissible, CyclicQuotient, GermKind};
use crate::report::Report;

/// A singularity as listed in a table: ordinary normal crossings are omitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TableEntry {
    Quotient { r: u64, a: u64 },
    Nc { r: u64, a: u64 },
}

impl fmt::Display for TableEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TableEntry::Quotient { r, a } => write!(f, "1/{r}(1,{a})"),
            TableEntry::Nc { r, a } => write!(f, "{}", NcPoint { r, a }),
        }
    }
}

/// `P(1, b, c) ≅ (XT = Z^2) ⊂ P(1, b/2, (1+c)/2, c)` after smoothing the
/// `1/b(1,c)` point: the quadric cone over the second Veronese.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Veronese {
    pub source: Wps2,
    pub target_weights: [u64; 4],
    pub degree: u64,
}

pub fn second_veronese(source: &Wps2) -> Result<Veronese> {
    let [one, b, c] = source.weights();
    if one != 1 || b % 2 != 0 || c % 2 != 1 {
        return Err(Error::domain(format!(
            "{source} is not of the form P(1, b, c) with b even and c odd"
        )));
    }
    Ok(Veronese { source: source.clone(), target_weights: [1, b / 2, c.div_ceil(2), c], degree: 1 + c })
}

impl Veronese {
    /// The point `1/b(1,c)` that the smoothing removes.
    pub fn smoothed_point(&self) -> CyclicQuotient {
        let [_, b, c] = self.source.weights();
        CyclicQuotient::from_weights(b, 1, c % b).expect("coprime weights")
    }

    /// `deg(XT) = deg(Z^2) = e`.
    pub fn degrees_agree(&self) -> bool {
        let [x, _, z, t] = self.target_weights;
        x + t == self.degree && 2 * z == self.degree
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub label: String,
    pub surface: GluedSurface,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_singularities: Option<Vec<TableEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_type: Option<CoarseType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub veronese: Option<Veronese>,
}

fn wps(w: [u64; 3]) -> Component {
    Component::wps(w).expect("catalog weights are well formed")
}

fn hyp(weights: [u64; 4], e: u64, sing: (u64, u64)) -> Component {
    let s = GermKind::CyclicLT { r: sing.0, a: sing.1 };
    Component::new(Geometry::Hypersurface(
        WpsHypersurface::new(weights, e, vec![s], 1).expect("catalog hypersurface"),
    ))
}

fn normal(label: &str, c: Component, table: Vec<TableEntry>) -> CatalogRow {
    CatalogRow {
        label: label.into(),
        surface: GluedSurface::single(c).expect("single component"),
        table_singularities: Some(table),
        expected_type: Some(CoarseType::A),
        veronese: None,
    }
}

fn glued(label: &str, c1: Component, q1: i64, c2: Component, q2: i64, nc: (u64, u64), table: Vec<TableEntry>) -> CatalogRow {
    let surface = GluedSurface::two_glued(
        c1.with_double_curve(Rational::integer(q1)),
        c2.with_double_curve(Rational::integer(q2)),
        vec![NcPoint { r: nc.0, a: nc.1 }],
    )
    .expect("catalog gluing");
    CatalogRow {
        label: label.into(),
        surface,
        table_singularities: Some(table),
        expected_type: Some(CoarseType::B),
        veronese: None,
    }
}

fn q(r: u64, a: u64) -> TableEntry {
    TableEntry::Quotient { r, a }
}

fn nc(r: u64, a: u64) -> TableEntry {
    TableEntry::Nc { r, a }
}

/// The surfaces of the degree 4 and 5 tables.
pub fn builtin_catalog(d: u64) -> Result<Vec<CatalogRow>> {
    let mut rows = vec![
        normal("P^2", wps([1, 1, 1]), vec![]),
        normal("P(1,1,4)", wps([1, 1, 4]), vec![q(4, 1)]),
    ];
    let two_halves = || {
        glued("P(1,1,2) u P(1,1,2)", wps([1, 1, 2]), 1, wps([1, 1, 2]), 1, (2, 1), vec![nc(2, 1)])
    };
    match d {
        4 => rows.push(two_halves()),
        5 => {
            let mut x26 = normal("X_26 in P(1,2,13,25)", hyp([1, 2, 13, 25], 26, (25, 4)), vec![q(25, 4)]);
            x26.veronese = Some(second_veronese(&Wps2::new([1, 4, 25])?)?);
            rows.push(x26);
            rows.push(normal("P(1,4,25)", wps([1, 4, 25]), vec![q(4, 1), q(25, 4)]));
            rows.push(two_halves());
            let mut x6 = glued(
                "P(1,1,5) u X_6 in P(1,2,3,5)",
                wps([1, 1, 5]),
                1,
                hyp([1, 2, 3, 5], 6, (5, 4)),
                2,
                (5, 1),
                vec![nc(5, 1)],
            );
            x6.veronese = Some(second_veronese(&Wps2::new([1, 4, 5])?)?);
            rows.push(x6);
            rows.push(glued(
                "P(1,1,5) u P(1,4,5)",
                wps([1, 1, 5]),
                1,
                wps([1, 4, 5]),
                4,
                (5, 1),
                vec![q(4, 1), nc(5, 1)],
            ));
        }
        _ => return Err(Error::domain(format!("no built-in catalog for degree {d}; use 4 or 5"))),
    }
    Ok(rows)
}

fn computed_table(g: &GluedSurface) -> Vec<TableEntry> {
    let mut out: Vec<TableEntry> = g
        .components
        .iter()
        .flat_map(Component::interior_singularities)
        .filter_map(|s| match s {
            GermKind::NCQuotient { r, a } => Some(nc(r, a)),
            other => other.as_cyclic().filter(|c| !c.is_smooth()).map(|c| q(c.r(), c.a())),
        })
        .chain(g.nc_quotients.iter().filter(|p| p.r > 1).map(|p| nc(p.r, p.a)))
        .collect();
    out.sort();
    out
}

fn list(v: &[TableEntry]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    }
}

fn verify_row(row: &CatalogRow, d: u64, report: &mut Report) {
    let g = &row.surface;
    let name = |check: &str| format!("{}: {check}", row.label);
    let nine = Rational::integer(9);
    let ty = coarse_type(g);

    let type_ok = match row.expected_type {
        Some(t) => ty == t,
        None => ty != CoarseType::Invalid,
    };
    report.check(name("coarse type"), type_ok, format!("type {ty}"));

    let normal = g.components.len() == 1 && g.components[0].double_curve.is_none();
    let k2 = if normal { Ok(g.components[0].k_squared()) } else { glued_k_squared(g) };
    match k2 {
        Ok(k2) => report.check(name("K^2 = 9"), k2 == nine, format!("K^2 = {k2}")),
        Err(e) => report.check(name("K^2 = 9"), false, e.to_string()),
    };

    let found = computed_table(g);
    if let Some(table) = &row.table_singularities {
        let mut expected = table.clone();
        expected.sort();
        report.check(
            name("singularities match the table"),
            found == expected,
            format!("computed [{}], table [{}]", list(&found), list(&expected)),
        );
    }

    let indices: Vec<u64> = g
        .components
        .iter()
        .flat_map(Component::singularities)
        .filter_map(|s| s.index())
        .chain(g.nc_quotients.iter().map(|p| p.r))
        .collect();
    let max_index = indices.iter().copied().max().unwrap_or(1);
    report.check(name("index <= d"), max_index <= d, format!("max index {max_index}"));

    let interior: Vec<CyclicQuotient> = g
        .components
        .iter()
        .flat_map(Component::interior_singularities)
        .filter_map(|s| s.as_cyclic())
        .filter(|c| !c.is_smooth())
        .collect();
    let bad: Vec<String> = interior.iter().filter(|c| !is_p2_admissible(c)).map(ToString::to_string).collect();
    report.check(
        name("interior points are 1/n^2(1,na-1) with 3 not dividing n"),
        bad.is_empty(),
        if bad.is_empty() { format!("{} point(s)", interior.len()) } else { bad.join(", ") },
    );

    for (i, c) in g.components.iter().enumerate() {
        match noether_total(c) {
            Ok(t) => report.check(
                name(&format!("Noether on component {i} ({})", c.surface)),
                t == Rational::integer(10),
                format!("K^2 + rho of the resolution = {t}"),
            ),
            // Only catalog rows promise rational components with quotient points.
            Err(e) if row.table_singularities.is_some() => {
                report.check(name(&format!("Noether on component {i}")), false, e.to_string())
            }
            Err(_) => continue,
        };
    }

    match slt_constraint(d, g) {
        Ok(ok) => report.check(name("allowed for this degree"), ok, format!("type {ty}, d = {d}")),
        Err(e) => report.check(name("allowed for this degree"), false, e.to_string()),
    };

    if ty == CoarseType::B {
        let tb = type_b_smoothable(g);
        for c in &tb.conditions {
            report.check(name(&format!("type B: {}", c.name)), c.passed, c.details.clone());
        }
        let rho = (g.components[0].picard(), g.components[1].picard());
        match (t1_degree(g), delta_squares(rho.0, rho.1)) {
            (Ok(t1), Ok(ds)) => {
                report.check(
                    name("Delta_1^2 + Delta_2^2 = 3 - (rho_1 + rho_2)"),
                    t1 == ds && t1.is_integer(),
                    format!("class arithmetic {t1}, formula {ds}"),
                );
            }
            (Err(e), _) | (_, Err(e)) => {
                report.check(name("Delta_1^2 + Delta_2^2 = 3 - (rho_1 + rho_2)"), false, e.to_string());
            }
        }
        match adjunction_check(g) {
            Ok(sides) => {
                let ok = sides.iter().all(|(l, r)| l == r);
                let shown: Vec<String> = sides.iter().map(|(l, r)| format!("{l} vs {r}")).collect();
                report.check(name("adjunction along the double curve"), ok, shown.join("; "));
            }
            Err(e) => {
                report.check(name("adjunction along the double curve"), false, e.to_string());
            }
        }
        match noether_bookkeeping(g) {
            Ok((l, r)) => report.check(
                name("K_1^2 + K_2^2 = 20 - rho - 4 sum(1 - 1/r)"),
                l == r,
                format!("{l} vs {r}"),
            ),
            Err(e) => report.check(name("K_1^2 + K_2^2 = 20 - rho - 4 sum(1 - 1/r)"), false, e.to_string()),
        };
    }

    if let Some(v) = &row.veronese {
        verify_veronese(row, v, report);
    }
}

fn verify_veronese(row: &CatalogRow, v: &Veronese, report: &mut Report) {
    let name = format!("{}: Veronese model of {}", row.label, v.source);
    let target = row.surface.components.iter().find_map(|c| match &c.surface {
        Geometry::Hypersurface(h) if h.weights == v.target_weights && h.degree == v.degree => Some(h),
        _ => None,
    });
    let Some(h) = target else {
        report.check(name, false, "no component matches the Veronese target");
        return;
    };
    let [x, _, z, t] = v.target_weights;
    let removed = v.smoothed_point();
    let mut expected = v.source.singularities();
    let class_t = !class_t_decompositions(&removed).is_empty();
    if let Some(i) = expected.iter().position(|p| *p == removed) {
        expected.remove(i);
    }
    let mut declared: Vec<CyclicQuotient> = h.singularities.iter().filter_map(GermKind::as_cyclic).collect();
    declared.sort();
    let vertices: Option<Vec<CyclicQuotient>> =
        h.vertex_points().map(|v| v.into_iter().map(|(_, p)| p).collect());
    let ok = v.degrees_agree()
        && h.k_squared() == v.source.k_squared()
        && class_t
        && declared == expected
        && vertices.as_ref().is_none_or(|pts| *pts == declared);
    report.check(
        name,
        ok,
        format!(
            "{x}+{t} = {} = 2*{z}; K^2 {} = {}; smoothing {removed} leaves [{}]",
            v.degree,
            h.k_squared(),
            v.source.k_squared(),
            expected.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ),
    );
}

/// Checks an arbitrary surface against the constraints on stable pairs of
/// degree `d`.
pub fn check_surface(label: &str, g: &GluedSurface, d: u64) -> Report {
    let row = CatalogRow {
        label: label.into(),
        surface: g.clone(),
        table_singularities: None,
        expected_type: None,
        veronese: None,
    };
    let mut report = Report::new(format!("{label}, degree {d}"));
    verify_row(&row, d, &mut report);
    report
}

/// Runs every row check; the report names each failing condition.
pub fn verify_rows(rows: &[CatalogRow], d: u64) -> Report {
    let mut report = Report::new(format!("degree {d} catalog"));
    for row in rows {
        verify_row(row, d, &mut report);
    }
    report
}

fn allowed(range: std::ops::RangeInclusive<u32>, pred: impl Fn(u32) -> Result<bool>) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for n in range {
        if pred(n)? {
            out.push(n);
        }
    }
    Ok(out)
}

fn germ(s: String) -> CurveGerm {
    s.parse().expect("built-in germ")
}

/// Local germs of `(X, D)`: plane curve singularities, curves through a
/// `1/n^2(1,na-1)` point read on the smooth cover, and intersection
/// multiplicities with the double curve at normal crossing quotients.
fn verify_germ_table(d: u64, report: &mut Report) -> Result<()> {
    let label = |s: &str| format!("degree {d} germs: {s}");
    let shown = |v: &[u32]| format!("{v:?}");
    let check_set = |report: &mut Report, what: &str, got: Vec<u32>, want: &[u32]| {
        report.check(label(what), got == want, format!("allowed {} (table {})", shown(&got), shown(want)));
    };

    let cusps = allowed(3..=20, |n| Ok(stable_pair_local_test(&germ(format!("y^2 + x^{n}")), d)?.passed()))?;
    let with_line = allowed(2..=20, |n| {
        Ok(stable_pair_local_test(&germ(format!("x*y^2 + x^{}", n + 1)), d)?.passed())
    })?;
    let (want_cusps, want_line): (&[u32], &[u32]) = if d == 4 { (&[3], &[]) } else { (&[3, 4, 5, 6, 7, 8, 9], &[2, 3]) };
    check_set(report, "y^2 + x^n on A^2", cusps, want_cusps);
    check_set(report, "x(y^2 + x^n) on A^2", with_line, want_line);

    // 1/4(1,1) = 1/n^2(1,na-1) with n = 2, a = 1.
    let on_cover = allowed(1..=20, |n| {
        let g = germ(format!("y^2 + x^{n}"));
        Ok(index_congruence_a(2, 1, d, &g)? && stable_pair_local_test(&g, d)?.passed())
    })?;
    let want: &[u32] = if d == 4 { &[] } else { &[2, 6] };
    check_set(report, "y^2 + x^n at 1/4(1,1)", on_cover, want);

    // D misses the point when no monomial of degree below 2d/3 is invariant.
    let mut quotients = vec![(2u64, 1u64)];
    if d == 5 {
        quotients.push((5, 1));
    }
    for (n, a) in quotients {
        let through = (0..=2 * d as u32).flat_map(|i| (0..=2 * d as u32).map(move |j| (i, j))).find(|&(i, j)| {
            let deg = i + j;
            deg > 0
                && 3 * deg < 2 * d as u32
                && index_congruence_a(n, a, d, &CurveGerm::monomial(i, j, Rational::one())).unwrap_or(false)
        });
        let r = n * n;
        let expect_miss = !(n == 2 && d == 5);
        report.check(
            label(&format!("D through 1/{r}(1,{})", n * a - 1)),
            through.is_none() == expect_miss,
            match through {
                Some((i, j)) => format!("lowest admissible monomial x^{i} y^{j}"),
                None => "D = 0 only".into(),
            },
        );
    }

    let mut ncs = vec![2u64];
    if d == 5 {
        ncs.push(5);
    }
    for r in ncs {
        let ks = allowed(0..=d as u32, |k| index_congruence_b(r, d, k as u64))?;
        let want: &[u32] = match (d, r) {
            (5, 2) => &[1],
            _ => &[0],
        };
        check_set(report, &format!("multiplicity along the double curve at index {r}"), ks, want);
    }
    Ok(())
}

/// Verifies the built-in catalog of degree `d` (4 or 5).
pub fn verify_catalog(d: u64) -> Result<Report> {
    let rows = builtin_catalog(d)?;
    let mut report = verify_rows(&rows, d);
    report.title = format!("degree {d} catalog: {} surfaces", rows.len());
    verify_germ_table(d, &mut report)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogs_pass() {
        for (d, n) in [(4, 3), (5, 7)] {
            assert_eq!(builtin_catalog(d).unwrap().len(), n);
            let report = verify_catalog(d).unwrap();
            let failures: Vec<_> = report.failures().collect();
            assert!(failures.is_empty(), "{failures:#?}");
        }
        assert!(verify_catalog(6).is_err());
    }

    #[test]
    fn mutated_row_fails_k_squared() {
        let mut rows = builtin_catalog(4).unwrap();
        rows[1] = normal("P(1,1,3)", wps([1, 1, 3]), vec![q(3, 1)]);
        let report = verify_rows(&rows, 4);
        let k2 = report.find("P(1,1,3): K^2 = 9").unwrap();
        assert_eq!(k2.status, crate::report::Status::Fail);
        assert_eq!(k2.details, "K^2 = 25/3");
    }

    #[test]
    fn veronese_arithmetic() {
        let v = second_veronese(&Wps2::new([1, 4, 25]).unwrap()).unwrap();
        assert_eq!(v.target_weights, [1, 2, 13, 25]);
        assert_eq!(v.degree, 26);
        assert!(v.degrees_agree());
        assert_eq!(v.smoothed_point(), CyclicQuotient::new(4, 1).unwrap());
        let v = second_veronese(&Wps2::new([1, 4, 5]).unwrap()).unwrap();
        assert_eq!((v.target_weights, v.degree), ([1, 2, 3, 5], 6));
        assert!(second_veronese(&Wps2::new([1, 1, 4]).unwrap()).is_err());
    }
}
