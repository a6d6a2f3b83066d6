//! The end-to-end certification pipeline and its machine-readable report.
//!
//! One run wires the fixture groups through every certificate: closure
//! orders, the induced-module isomorphism, dimension tables, Molien series,
//! hsop checks, free-generation certificates for all exterior summands, the
//! covariant transfer, the product relations, and the minimal generating
//! set. The report serializes to JSON with a stable key order; wall-clock
//! timings live in a dedicated field excluded from the stable form.

use crate::fixtures::{self, Fixture};
use crate::forms::{Bidegree, Element};
use crate::group::{GroupAction, LinearCharacter, Representation};
use crate::invariant::FixedSpaceTable;
use crate::series::{
    molien, rewrite_over_hsop, IntPoly, MolienConvention, RationalSeries,
};
use crate::structure::{
    algebra_span_contains, find_module_generators, freeness_triangle, generation_check,
    hsop_check, minimal_algebra_generators, named_generators_span_complements,
    relation_extract, theta, theta_iso_check, ASpan,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_MAX_DEGREE: u32 = 20;

/// One named certificate: a verdict plus a short human-readable detail.
#[derive(Debug, Clone, Serialize)]
pub struct Cert {
    pub pass: bool,
    pub detail: String,
}

impl Cert {
    fn ok(detail: impl Into<String>) -> Cert {
        Cert { pass: true, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Cert {
        Cert { pass: false, detail: detail.into() }
    }

    fn from(pass: bool, detail: impl Into<String>) -> Cert {
        Cert { pass, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupOrdersSection {
    pub g: usize,
    pub g_image: usize,
    pub kernel: usize,
    pub h: usize,
    pub h_image: usize,
    pub transversal: usize,
    pub cert: Cert,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesJson {
    pub numerator: Vec<i64>,
    pub denominator_degrees: Vec<u32>,
    pub display: String,
}

impl SeriesJson {
    fn new(num: &IntPoly, degrees: &[u32]) -> SeriesJson {
        SeriesJson {
            numerator: num.coeffs().to_vec(),
            denominator_degrees: degrees.to_vec(),
            display: series_display(num, degrees),
        }
    }
}

/// "(numerator)/(1-t^a)(1-t^b)..." with repeated factors grouped as powers;
/// a single distinct factor drops the outer parentheses.
pub fn series_display(num: &IntPoly, degrees: &[u32]) -> String {
    let mut groups: BTreeMap<u32, usize> = BTreeMap::new();
    for &d in degrees {
        *groups.entry(d).or_insert(0) += 1;
    }
    let parts: Vec<String> = groups
        .iter()
        .map(|(&d, &c)| {
            let base = if d == 1 { "(1-t)".to_string() } else { format!("(1-t^{d})") };
            if c == 1 {
                base
            } else {
                format!("{base}^{c}")
            }
        })
        .collect();
    let den = if parts.len() == 1 { parts.into_iter().next().unwrap() } else { format!("({})", parts.join("")) };
    format!("({})/{}", num, den)
}

#[derive(Debug, Clone, Serialize)]
pub struct MolienSection {
    pub relative: SeriesJson,
    pub relative_reduced_numerator: Vec<i64>,
    pub relative_reduced_denominator: Vec<i64>,
    pub trivial_matches_brute_force: Cert,
    pub relative_matches_brute_force: Cert,
    pub relative_matches_closed_form: Cert,
    pub rewrite_numerator: Vec<i64>,
    pub rewrite_matches_expected: Cert,
}

#[derive(Debug, Clone, Serialize)]
pub struct HsopSection {
    pub invariant_parameters: Cert,
    pub subgroup_squares: Cert,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorJson {
    pub label: String,
    pub xdeg: u32,
    pub ydeg: u32,
    pub element: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilySection {
    pub context: String,
    pub hsop_degrees: Vec<u32>,
    pub generators: Vec<GeneratorJson>,
    pub numerator: Vec<i64>,
    pub freeness_triangle: Cert,
    pub extra: Vec<Cert>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaSection {
    pub images_match_named_covariants: Cert,
    pub degreewise_isomorphism: Cert,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationJson {
    pub product: String,
    pub derived: String,
    pub expected: String,
    pub matches_expected: bool,
    pub erratum: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationsSection {
    pub records: Vec<RelationJson>,
    pub residuals_zero: Cert,
    pub match_expected: Cert,
    pub obsolete_generators_decomposable: Cert,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalSection {
    pub total: usize,
    /// Sorted triples [xdeg, ydeg, count].
    pub profile: Vec<[u32; 3]>,
    pub representatives: Vec<GeneratorJson>,
    pub profile_matches_expected: Cert,
    pub named_elements_span_complements: Cert,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproReport {
    pub schema: u32,
    pub engine_version: String,
    pub max_degree: u32,
    pub default_fixture: bool,
    pub group_orders: GroupOrdersSection,
    pub module_isomorphism: Cert,
    pub dimension_tables: BTreeMap<String, Vec<Vec<usize>>>,
    pub dimensions_match_series: Cert,
    pub molien: MolienSection,
    pub hsop: HsopSection,
    pub families: Vec<FamilySection>,
    pub theta: ThetaSection,
    pub relations: RelationsSection,
    pub minimal_generators: MinimalSection,
    pub overall_pass: bool,
    pub stage_wall_clock_ms: BTreeMap<String, u64>,
}

impl ReproReport {
    /// Pretty JSON of the full report.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The byte-stable form: identical across runs on the same build. Wall
    /// clock readings are the one nondeterministic field, so they are
    /// cleared before serializing.
    pub fn stable_json(&self) -> String {
        let mut clone = self.clone();
        clone.stage_wall_clock_ms = BTreeMap::new();
        serde_json::to_string_pretty(&clone).expect("report serializes")
    }

    /// Compact per-stage text summary.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::new();
        let mut push = |name: &str, cert: &Cert| {
            lines.push(format!(
                "{} {:<38} {}",
                if cert.pass { "PASS" } else { "FAIL" },
                name,
                cert.detail
            ));
        };
        push("group-orders", &self.group_orders.cert);
        push("module-isomorphism", &self.module_isomorphism);
        push("dimensions-match-series", &self.dimensions_match_series);
        push("molien-vs-brute-force(trivial)", &self.molien.trivial_matches_brute_force);
        push("molien-vs-brute-force(relative)", &self.molien.relative_matches_brute_force);
        push("molien-closed-form", &self.molien.relative_matches_closed_form);
        push("molien-hsop-rewrite", &self.molien.rewrite_matches_expected);
        push("hsop-invariant-parameters", &self.hsop.invariant_parameters);
        push("hsop-subgroup-squares", &self.hsop.subgroup_squares);
        for fam in &self.families {
            push(&format!("freeness[{}]", fam.context), &fam.freeness_triangle);
            for extra in &fam.extra {
                push(&format!("generators[{}]", fam.context), extra);
            }
        }
        push("theta-images", &self.theta.images_match_named_covariants);
        push("theta-isomorphism", &self.theta.degreewise_isomorphism);
        push("relation-residuals", &self.relations.residuals_zero);
        push("relations-match-expected", &self.relations.match_expected);
        push("obsolete-generators", &self.relations.obsolete_generators_decomposable);
        push("minimal-generator-profile", &self.minimal_generators.profile_matches_expected);
        push("named-generators-span", &self.minimal_generators.named_elements_span_complements);
        lines.push(format!(
            "{} overall ({} minimal generators, max degree {})",
            if self.overall_pass { "PASS" } else { "FAIL" },
            self.minimal_generators.total,
            self.max_degree
        ));
        lines.join("\n")
    }

    fn collect_passes(&self) -> bool {
        let mut pass = self.group_orders.cert.pass
            && self.module_isomorphism.pass
            && self.dimensions_match_series.pass
            && self.molien.trivial_matches_brute_force.pass
            && self.molien.relative_matches_brute_force.pass
            && self.molien.relative_matches_closed_form.pass
            && self.molien.rewrite_matches_expected.pass
            && self.hsop.invariant_parameters.pass
            && self.hsop.subgroup_squares.pass
            && self.theta.images_match_named_covariants.pass
            && self.theta.degreewise_isomorphism.pass
            && self.relations.residuals_zero.pass
            && self.relations.match_expected.pass
            && self.relations.obsolete_generators_decomposable.pass
            && self.minimal_generators.profile_matches_expected.pass
            && self.minimal_generators.named_elements_span_complements.pass;
        for fam in &self.families {
            pass = pass && fam.freeness_triangle.pass && fam.extra.iter().all(|c| c.pass);
        }
        pass
    }

    /// Name of the first failing certificate, in report order.
    pub fn first_failure(&self) -> Option<String> {
        self.to_text()
            .lines()
            .find(|l| l.starts_with("FAIL"))
            .and_then(|l| l.split_whitespace().nth(1))
            .map(|s| s.to_string())
    }
}

/// The expected minimal-generator profile, truncated to x-degrees <= xmax.
pub fn expected_minimal_profile(xmax: u32) -> BTreeMap<(u32, u32), usize> {
    let full: [((u32, u32), usize); 13] = [
        ((2, 0), 1),
        ((3, 0), 1),
        ((4, 0), 1),
        ((6, 0), 1),
        ((1, 1), 1),
        ((2, 1), 1),
        ((3, 1), 2),
        ((4, 1), 1),
        ((5, 1), 1),
        ((1, 2), 1),
        ((2, 2), 1),
        ((3, 2), 1),
        ((0, 3), 1),
    ];
    full.into_iter().filter(|(k, _)| k.0 <= xmax).collect()
}

fn gen_json(label: &str, bd: Bidegree, element: &Element) -> GeneratorJson {
    GeneratorJson {
        label: label.to_string(),
        xdeg: bd.xdeg,
        ydeg: bd.ydeg,
        element: element.to_string(),
    }
}

/// Run the whole certification pipeline at the given truncation degree.
pub fn run_reproduction(fx: &Fixture, max_degree: u32, default_fixture: bool) -> ReproReport {
    let mut timings = BTreeMap::new();
    let xmax = max_degree;

    // stage: closure orders
    let t0 = Instant::now();
    let kernel = fx.rep_g.kernel().len();
    let orders_ok = fx.g.order() == 24
        && fx.gbar.order() == 12
        && kernel == 2
        && fx.h.order() == 8
        && fx.hbar.order() == 4
        && fx.transversal.reps.len() == 3;
    let group_orders = GroupOrdersSection {
        g: fx.g.order(),
        g_image: fx.gbar.order(),
        kernel,
        h: fx.h.order(),
        h_image: fx.hbar.order(),
        transversal: fx.transversal.reps.len(),
        cert: if default_fixture {
            Cert::from(orders_ok, format!("|G|={}, |image|={}, |kernel|={}", fx.g.order(), fx.gbar.order(), kernel))
        } else {
            Cert::ok(format!("|G|={}, |image|={} (custom fixture, orders informational)", fx.g.order(), fx.gbar.order()))
        },
    };
    timings.insert("closure".to_string(), t0.elapsed().as_millis() as u64);

    // stage: induced-module isomorphism
    let t0 = Instant::now();
    let dual_mats: Vec<_> = (0..fx.g.order())
        .map(|i| crate::group::dual_action_matrix(fx.rep_g.image(i)))
        .collect();
    let phi = crate::linalg::FpMatrix::identity(fx.g.p(), fx.transversal.reps.len().min(3));
    let iso = crate::group::verify_module_iso(
        &fx.g,
        &fx.h,
        &fx.transversal,
        &fx.chi,
        &dual_mats,
        &phi,
    );
    let module_isomorphism = Cert::from(
        iso.holds,
        match iso.witness {
            None => "phi(x_s) = t^{s-1} (x) w is equivariant and bijective".to_string(),
            Some((g, v)) => format!("equivariance fails at generator {g}, basis vector {v}"),
        },
    );
    timings.insert("module_iso".to_string(), t0.elapsed().as_millis() as u64);

    // shared tables
    let mut table_g = FixedSpaceTable::new(&fx.g, &fx.rep_g, None);
    let mut table_rel = FixedSpaceTable::new(&fx.h, &fx.rep_h, Some(&fx.chi));
    let hbar_rep = Representation::tautological(&fx.hbar);
    let mut table_hbar_triv = FixedSpaceTable::new(&fx.hbar, &hbar_rep, None);
    let mut table_hbar_chi = FixedSpaceTable::new(&fx.hbar, &hbar_rep, Some(&fx.chibar));

    // stage: dimension tables
    let t0 = Instant::now();
    let mut dimension_tables = BTreeMap::new();
    let g_dims: Vec<Vec<usize>> =
        (0..=3u32).map(|y| table_g.dims_row(y, xmax)).collect();
    let rel_dims = vec![table_rel.dims_row(0, xmax)];
    let hbar_triv_dims = vec![table_hbar_triv.dims_row(0, xmax)];
    let hbar_chi_dims = vec![table_hbar_chi.dims_row(0, xmax)];
    dimension_tables.insert("g_trivial".to_string(), g_dims.clone());
    dimension_tables.insert("h_chi".to_string(), rel_dims.clone());
    dimension_tables.insert("hbar_trivial".to_string(), hbar_triv_dims.clone());
    dimension_tables.insert("hbar_chi".to_string(), hbar_chi_dims.clone());
    // invariant-ring series identity: dims of S^G match (1+t^6)/((1-t^2)(1-t^3)(1-t^4))
    let sg_series = RationalSeries::over_hsop(
        IntPoly::new(vec![1, 0, 0, 0, 0, 0, 1]),
        &fixtures::hsop_a_degrees(),
    );
    let sg_expansion = sg_series.expand(xmax as usize);
    let dims_match = g_dims[0].iter().zip(&sg_expansion).all(|(&d, &s)| d as i64 == s)
        // relative dims match (t+t^2)/(1-t^2)^3
        && {
            let rel_series =
                RationalSeries::over_hsop(IntPoly::new(vec![0, 1, 1]), &[2, 2, 2]);
            let rel_exp = rel_series.expand(xmax as usize);
            rel_dims[0].iter().zip(&rel_exp).all(|(&d, &s)| d as i64 == s)
        }
        // subgroup relative dims agree whether computed over H or its image
        && rel_dims[0] == hbar_chi_dims[0];
    let dimensions_match_series = if default_fixture {
        Cert::from(
            dims_match,
            format!("S^G dims to degree {xmax} equal the free-module expansion"),
        )
    } else {
        Cert::ok("custom fixture: dimension tables informational".to_string())
    };
    timings.insert("dimensions".to_string(), t0.elapsed().as_millis() as u64);

    // stage: Molien series
    let t0 = Instant::now();
    let molien_triv = molien(&fx.hbar, &LinearCharacter::trivial(&fx.hbar), MolienConvention::CharacterValue);
    let molien_chi = molien(&fx.hbar, &fx.chibar, MolienConvention::CharacterValue);
    let (molien_section, molien_ok);
    match (&molien_triv, &molien_chi) {
        (Ok(mt), Ok(mc)) => {
            let triv_bf = mt
                .expand(xmax as usize)
                .iter()
                .zip(&hbar_triv_dims[0])
                .all(|(&s, &d)| s == d as i64);
            let rel_bf = mc
                .expand(xmax as usize)
                .iter()
                .zip(&hbar_chi_dims[0])
                .all(|(&s, &d)| s == d as i64);
            let closed_form =
                RationalSeries::over_hsop(IntPoly::new(vec![0, 1, 1]), &[2, 2, 2]);
            let disp_ok = mc.equivalent(&closed_form);
            let rewrite = rewrite_over_hsop(mc, &fixtures::hsop_a_degrees());
            let (rw_num, rw_ok) = match rewrite {
                Ok(rw) => {
                    let expect = IntPoly::new(vec![0, 1, 1, 2, 1, 1]);
                    let ok = rw.numerator == expect && rw.nonnegative;
                    (rw.numerator, ok)
                }
                Err(_) => (IntPoly::zero(), false),
            };
            let reduced = mc.reduced();
            molien_ok = triv_bf && rel_bf && (!default_fixture || (disp_ok && rw_ok));
            molien_section = MolienSection {
                relative: SeriesJson::new(&IntPoly::new(vec![0, 1, 1]), &[2, 2, 2]),
                relative_reduced_numerator: reduced.numerator().coeffs().to_vec(),
                relative_reduced_denominator: reduced.denominator().coeffs().to_vec(),
                trivial_matches_brute_force: Cert::from(
                    triv_bf,
                    format!("expansion equals nullspace dims to degree {xmax}"),
                ),
                relative_matches_brute_force: Cert::from(
                    rel_bf,
                    format!("expansion equals nullspace dims to degree {xmax}"),
                ),
                relative_matches_closed_form: Cert::from(
                    disp_ok || !default_fixture,
                    series_display(&IntPoly::new(vec![0, 1, 1]), &[2, 2, 2]),
                ),
                rewrite_numerator: rw_num.coeffs().to_vec(),
                rewrite_matches_expected: Cert::from(
                    rw_ok || !default_fixture,
                    format!("over degrees {:?}: {}", fixtures::hsop_a_degrees(), rw_num),
                ),
            };
        }
        (t, c) => {
            let msg = format!(
                "molien failed: trivial {:?}, relative {:?}",
                t.as_ref().err(),
                c.as_ref().err()
            );
            molien_ok = false;
            molien_section = MolienSection {
                relative: SeriesJson::new(&IntPoly::zero(), &[]),
                relative_reduced_numerator: Vec::new(),
                relative_reduced_denominator: Vec::new(),
                trivial_matches_brute_force: Cert::fail(msg.clone()),
                relative_matches_brute_force: Cert::fail(msg.clone()),
                relative_matches_closed_form: Cert::fail(msg.clone()),
                rewrite_numerator: Vec::new(),
                rewrite_matches_expected: Cert::fail(msg),
            };
        }
    }
    timings.insert("molien".to_string(), t0.elapsed().as_millis() as u64);

    // stage: hsop certificates
    let t0 = Instant::now();
    let hsop_a_ok = hsop_check(&fixtures::hsop_a()).unwrap_or(false);
    let hsop_sq_ok = hsop_check(&fixtures::hsop_squares()).unwrap_or(false);
    let hsop_section = HsopSection {
        invariant_parameters: Cert::from(hsop_a_ok, "a1, a2, a3 of degrees 2, 3, 4"),
        subgroup_squares: Cert::from(hsop_sq_ok, "x1^2, x2^2, x3^2"),
    };
    timings.insert("hsop".to_string(), t0.elapsed().as_millis() as u64);

    // stage: generator families over A
    let t0 = Instant::now();
    let mut aspan = ASpan::new(&fixtures::hsop_a());
    let mut families = Vec::new();

    // S^G = Lambda^0 summand: discovery plus the named secondary generators
    let report_sg = find_module_generators(&mut aspan, &mut table_g, "s_g", 0, xmax);
    let one = Element::one(fixtures::P, fixtures::RANK);
    let lambda0: Vec<(String, Element)> =
        vec![("1".to_string(), one.clone()), ("b".to_string(), fixtures::b())];
    let lambda0_cut: Vec<(String, Element)> = lambda0
        .iter()
        .filter(|(_, e)| e.bidegree().unwrap().xdeg <= xmax)
        .cloned()
        .collect();
    let tri0 = freeness_triangle(&lambda0_cut, &mut aspan, &mut table_g, 0, xmax);
    let expected_degrees: Vec<u32> = [0u32, 6].iter().copied().filter(|&d| d <= xmax).collect();
    let degrees_ok = report_sg.degrees() == expected_degrees;
    // the top discovered complement is spanned by b when it is in range
    let b_spans = if xmax >= 6 {
        let bd = Bidegree::new(6, 0);
        let basis = table_g.basis_index(bd).clone();
        let mut base = crate::linalg::SpanBuilder::new(fixtures::P, basis.dim());
        for (_, _, v) in aspan.span_vectors(&lambda0[..1], bd, &basis) {
            base.insert(&v);
        }
        let mut with_b = base.clone();
        let mut with_found = base;
        with_b.insert(&basis.coords(&fixtures::b()).unwrap());
        with_found.insert(&basis.coords(&report_sg.generators[1].element).unwrap());
        with_b.basis() == with_found.basis()
    } else {
        true
    };
    families.push(FamilySection {
        context: "s_g".to_string(),
        hsop_degrees: fixtures::hsop_a_degrees(),
        generators: report_sg
            .generators
            .iter()
            .map(|g| gen_json(&g.label, g.bidegree, &g.element))
            .collect(),
        numerator: report_sg.numerator.coeffs().to_vec(),
        freeness_triangle: Cert::from(tri0.ok, "series = span dims = fixed dims"),
        extra: if default_fixture {
            vec![
                Cert::from(degrees_ok, format!("discovered degrees {:?}", report_sg.degrees())),
                Cert::from(b_spans, "degree-6 complement is spanned by b"),
            ]
        } else {
            Vec::new()
        },
    });

    // relative invariants over A: the six named generators
    let rel_gens = fixtures::relative_generators();
    let rel_gens_cut: Vec<(String, Element)> = rel_gens
        .iter()
        .filter(|(_, e)| e.bidegree().unwrap().xdeg <= xmax)
        .cloned()
        .collect();
    let report_rel = find_module_generators(&mut aspan, &mut table_rel, "s_h_chi", 0, xmax);
    let tri_rel = freeness_triangle(&rel_gens_cut, &mut aspan, &mut table_rel, 0, xmax);
    let rel_check = generation_check(&rel_gens_cut, &mut aspan, &mut table_rel, 0, xmax);
    let expected_rel: Vec<u32> =
        [1u32, 2, 3, 3, 4, 5].iter().copied().filter(|&d| d <= xmax).collect();
    families.push(FamilySection {
        context: "s_h_chi".to_string(),
        hsop_degrees: fixtures::hsop_a_degrees(),
        generators: rel_gens_cut
            .iter()
            .map(|(n, e)| gen_json(n, e.bidegree().unwrap(), e))
            .collect(),
        numerator: report_rel.numerator.coeffs().to_vec(),
        freeness_triangle: Cert::from(tri_rel.ok, "series = span dims = fixed dims"),
        extra: if default_fixture {
            vec![
                Cert::from(
                    report_rel.degrees() == expected_rel,
                    format!("discovered degrees {:?}", report_rel.degrees()),
                ),
                Cert::from(rel_check.ok, "named monomial generators generate"),
            ]
        } else {
            vec![Cert::from(rel_check.ok, "named monomial generators generate")]
        },
    });

    // exterior summands Lambda^1, Lambda^2, Lambda^3
    let cs = fixtures::c_elements();
    let cs_cut: Vec<(String, Element)> = cs
        .iter()
        .filter(|(_, e)| e.bidegree().unwrap().xdeg <= xmax)
        .cloned()
        .collect();
    let tri1 = freeness_triangle(&cs_cut, &mut aspan, &mut table_g, 1, xmax);
    families.push(FamilySection {
        context: "lambda1".to_string(),
        hsop_degrees: fixtures::hsop_a_degrees(),
        generators: cs_cut.iter().map(|(n, e)| gen_json(n, e.bidegree().unwrap(), e)).collect(),
        numerator: IntPoly::new(
            cs_cut.iter().fold(vec![0i64; 6], |mut acc, (_, e)| {
                acc[e.bidegree().unwrap().xdeg as usize] += 1;
                acc
            }),
        )
        .coeffs()
        .to_vec(),
        freeness_triangle: Cert::from(tri1.ok, "series = span dims = fixed dims"),
        extra: Vec::new(),
    });
    let ds = fixtures::d_elements();
    let ds_cut: Vec<(String, Element)> = ds
        .iter()
        .filter(|(_, e)| e.bidegree().unwrap().xdeg <= xmax)
        .cloned()
        .collect();
    let tri2 = freeness_triangle(&ds_cut, &mut aspan, &mut table_g, 2, xmax);
    families.push(FamilySection {
        context: "lambda2".to_string(),
        hsop_degrees: fixtures::hsop_a_degrees(),
        generators: ds_cut.iter().map(|(n, e)| gen_json(n, e.bidegree().unwrap(), e)).collect(),
        numerator: IntPoly::new(
            ds_cut.iter().fold(vec![0i64; 6], |mut acc, (_, e)| {
                acc[e.bidegree().unwrap().xdeg as usize] += 1;
                acc
            }),
        )
        .coeffs()
        .to_vec(),
        freeness_triangle: Cert::from(tri2.ok, "series = span dims = fixed dims"),
        extra: Vec::new(),
    });
    let yyy = fixtures::yyy();
    let lambda3: Vec<(String, Element)> = vec![
        ("y1y2y3".to_string(), yyy.clone()),
        ("b*y1y2y3".to_string(), fixtures::b().mul(&yyy)),
    ];
    let lambda3_cut: Vec<(String, Element)> = lambda3
        .iter()
        .filter(|(_, e)| e.bidegree().unwrap().xdeg <= xmax)
        .cloned()
        .collect();
    let tri3 = freeness_triangle(&lambda3_cut, &mut aspan, &mut table_g, 3, xmax);
    families.push(FamilySection {
        context: "lambda3".to_string(),
        hsop_degrees: fixtures::hsop_a_degrees(),
        generators: lambda3_cut
            .iter()
            .map(|(n, e)| gen_json(n, e.bidegree().unwrap(), e))
            .collect(),
        numerator: lambda3_cut
            .iter()
            .fold(IntPoly::zero(), |acc, (_, e)| {
                acc.add(&IntPoly::monomial(1, e.bidegree().unwrap().xdeg as usize))
            })
            .coeffs()
            .to_vec(),
        freeness_triangle: Cert::from(tri3.ok, "series = span dims = fixed dims"),
        extra: Vec::new(),
    });
    timings.insert("families".to_string(), t0.elapsed().as_millis() as u64);

    // stage: theta
    let t0 = Instant::now();
    let gaction = GroupAction::new(&fx.rep_g);
    let haction = GroupAction::new(&fx.rep_h);
    let trans = fx.transversal.reps.clone();
    let mut images_ok = true;
    for (i, (_, gen)) in rel_gens.iter().enumerate() {
        let c_img = theta(gen, 1, &gaction, &trans, &fx.h, &haction, &fx.chi);
        let d_img = theta(gen, 2, &gaction, &trans, &fx.h, &haction, &fx.chi);
        match (c_img, d_img) {
            (Ok(c), Ok(d)) => {
                if c != cs[i].1 || d != ds[i].1 {
                    images_ok = false;
                }
            }
            _ => images_ok = false,
        }
    }
    let iso_check = theta_iso_check(
        &mut table_rel,
        &mut table_g,
        &gaction,
        &trans,
        &fx.h,
        &haction,
        &fx.chi,
        xmax,
    );
    let theta_section = ThetaSection {
        images_match_named_covariants: Cert::from(
            images_ok || !default_fixture,
            "theta_1, theta_2 of the six generators give c1..c6, d1..d6",
        ),
        degreewise_isomorphism: Cert::from(
            iso_check.ok,
            format!("bijective on bases for every x-degree <= {xmax}, both exterior degrees"),
        ),
    };
    timings.insert("theta".to_string(), t0.elapsed().as_millis() as u64);

    // stage: relations
    let t0 = Instant::now();
    let a_names = ["a1", "a2", "a3"];
    let c_of = |i: usize| cs[i - 1].1.clone();
    let expected_rhs: Vec<(String, Element)> = vec![
        (
            "-d4 - a1*d1 + d3".to_string(),
            ds[3].1.neg().sub(&fixtures::a1().mul(&ds[0].1)).add(&ds[2].1),
        ),
        (
            "a1*d2 + d5 - a2*d1".to_string(),
            fixtures::a1().mul(&ds[1].1).add(&ds[4].1).sub(&fixtures::a2().mul(&ds[0].1)),
        ),
        (
            "-d6 + a1*d4 - a1*d3 + a2*d2 - a3*d1 - a1^2*d1".to_string(),
            ds[5]
                .1
                .neg()
                .add(&fixtures::a1().mul(&ds[3].1))
                .sub(&fixtures::a1().mul(&ds[2].1))
                .add(&fixtures::a2().mul(&ds[1].1))
                .sub(&fixtures::a3().mul(&ds[0].1))
                .sub(&fixtures::a1().mul(&fixtures::a1()).mul(&ds[0].1)),
        ),
    ];
    let products = [("c1*c2", c_of(1).mul(&c_of(2))), ("c1*c3", c_of(1).mul(&c_of(3))), ("c2*c3", c_of(2).mul(&c_of(3)))];
    let mut records = Vec::new();
    let mut residuals_ok = true;
    let mut match_ok = true;
    for ((label, prod), (disp, disp_elem)) in products.iter().zip(&expected_rhs) {
        match relation_extract(label, prod, &ds, &mut aspan) {
            Ok(rec) => {
                let rhs = rec.rhs(&mut aspan, &ds);
                let residual_zero = rhs == *prod;
                residuals_ok &= residual_zero;
                let matches = *disp_elem == *prod;
                match_ok &= matches;
                records.push(RelationJson {
                    product: label.to_string(),
                    derived: rec.format_rhs(&a_names),
                    expected: disp.clone(),
                    matches_expected: matches,
                    erratum: if matches {
                        None
                    } else {
                        Some(format!(
                            "expected relation disagrees; derived truth: {}",
                            rec.format_rhs(&a_names)
                        ))
                    },
                });
            }
            Err(e) => {
                residuals_ok = false;
                match_ok = false;
                records.push(RelationJson {
                    product: label.to_string(),
                    derived: format!("error: {e}"),
                    expected: disp.clone(),
                    matches_expected: false,
                    erratum: Some(format!("{e}")),
                });
            }
        }
    }
    // d4, d5, d6 decompose over the minimal set
    let named = fixtures::minimal_generator_names();
    let mut obsolete_ok = true;
    for (_, d) in ds.iter().skip(3) {
        obsolete_ok &= algebra_span_contains(&mut table_g, &named, d);
    }
    let relations_section = RelationsSection {
        records,
        residuals_zero: Cert::from(residuals_ok, "each product lies in the A-span of d1..d6"),
        match_expected: Cert::from(
            match_ok || !default_fixture,
            "derived coefficients equal the expected classical relations",
        ),
        obsolete_generators_decomposable: Cert::from(
            obsolete_ok,
            "d4, d5, d6 lie in the algebra generated by the other generators",
        ),
    };
    timings.insert("relations".to_string(), t0.elapsed().as_millis() as u64);

    // stage: minimal generators
    let t0 = Instant::now();
    let minimal = minimal_algebra_generators(&mut table_g, xmax);
    let expected_profile = expected_minimal_profile(xmax);
    let profile_ok = minimal.counts == expected_profile;
    let named_cut: Vec<(String, Element)> = named
        .iter()
        .filter(|(_, e)| e.bidegree().unwrap().xdeg <= xmax)
        .cloned()
        .collect();
    let named_ok = named_generators_span_complements(&mut table_g, &minimal, &named_cut);
    let minimal_section = MinimalSection {
        total: minimal.total,
        profile: minimal
            .counts
            .iter()
            .map(|(&(x, y), &c)| [x, y, c as u32])
            .collect(),
        representatives: minimal
            .representatives
            .iter()
            .map(|g| gen_json(&g.label, g.bidegree, &g.element))
            .collect(),
        profile_matches_expected: Cert::from(
            profile_ok || !default_fixture,
            format!("{} generators, profile as expected up to degree {xmax}", minimal.total),
        ),
        named_elements_span_complements: Cert::from(
            named_ok || !default_fixture,
            "a1, a2, a3, b, c1..c6, d1, d2, d3, y1y2y3 span the complements",
        ),
    };
    timings.insert("minimal_generators".to_string(), t0.elapsed().as_millis() as u64);

    let mut report = ReproReport {
        schema: SCHEMA_VERSION,
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
        max_degree: xmax,
        default_fixture,
        group_orders,
        module_isomorphism,
        dimension_tables,
        dimensions_match_series,
        molien: molien_section,
        hsop: hsop_section,
        families,
        theta: theta_section,
        relations: relations_section,
        minimal_generators: minimal_section,
        overall_pass: false,
        stage_wall_clock_ms: timings,
    };
    report.overall_pass = report.collect_passes() && molien_ok;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipeline_passes_at_low_degree() {
        let fx = Fixture::new().unwrap();
        let report = run_reproduction(&fx, 8, true);
        assert!(report.overall_pass, "\n{}", report.to_text());
        assert_eq!(report.minimal_generators.total, 14);
    }

    #[test]
    fn truncated_pipeline_still_passes() {
        let fx = Fixture::new().unwrap();
        let report = run_reproduction(&fx, 3, true);
        assert!(report.overall_pass, "\n{}", report.to_text());
        // b, a3, c5, c6 are out of range at degree 3
        assert_eq!(report.minimal_generators.total, 10);
    }

    #[test]
    fn report_json_is_byte_stable() {
        let fx = Fixture::new().unwrap();
        let a = run_reproduction(&fx, 4, true);
        let b = run_reproduction(&fx, 4, true);
        assert_eq!(a.stable_json(), b.stable_json());
        // schema marker serialized first
        assert!(a.to_json().contains("\"schema\": 1"));
    }
}
