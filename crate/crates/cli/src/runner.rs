//! The three pipelines behind `verify`, `dualize` and `chain`.

use num_traits::Zero;
use sha2::{Digest, Sha256};
use thiserror::Error;

use fmanifold::algebroid::{
    check_f_algebroid, check_hertling_manin, default_test_functions, differential, koszul_bracket,
    lie_algebroid_reports, poisson_bracket_evaluator, tangent_f_algebroid, PoissonBivector, VectorField,
};
use fmanifold::duality::{
    build_cotangent_almost_frobenius, build_cotangent_frobenius, chain_products_at, chain_stage_reports,
    check_prop1_at, check_prop2_at, check_star_hertling_manin, check_theorem1_with, dual_product_from,
    pointwise_duality_reports, sample_off_discriminant, star_reports, DualStructure,
};
use fmanifold::fiber_algebra::algebra_at;
use fmanifold::frobenius::{
    check_c_symmetry, check_metric_normalization, check_nabla_c_symmetry, check_quasi_homogeneity, check_wdvv,
    euler_condition_reports, structure_constants, StructureTensor,
};
use fmanifold::poly::format_rational;
use fmanifold::sampling::{self, SamplingBounds, DEFAULT_SEED};
use fmanifold::{CheckReport, Error, MultiPoly, Rational, Witness};

use crate::report::{DualRecord, FractionRecord, RunReport};
use crate::spec_file::{raw_terms, SpecFile};

/// Degree bound of the random test fields and functions.
pub const FIELD_DEGREE: u32 = 2;
pub const DEFAULT_POINTS: usize = 100;
/// Random element pairs per point in the duality check.
pub const PAIRS_PER_POINT: usize = 10;
/// Random field 4-tuples for the Hertling-Manin identity of the dual product.
pub const STAR_TUPLES: usize = 20;
/// Random polynomial pairs for the Koszul bracket of exact forms.
pub const KOSZUL_PAIRS: usize = 20;
/// Points at which the pointwise intersection-form checks run.
pub const POINTWISE_POINTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("{0}")]
    Input(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Input(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub points: usize,
    pub seed: u64,
    pub depth: Option<usize>,
    pub emit_dual: bool,
    pub at: Vec<Vec<Rational>>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { points: DEFAULT_POINTS, seed: DEFAULT_SEED, depth: None, emit_dual: false, at: Vec::new() }
    }
}

/// SHA-256 of the canonical serialization.
pub fn input_digest(spec: &SpecFile) -> String {
    hex::encode(Sha256::digest(spec.to_json().as_bytes()))
}

fn renamed(r: CheckReport, name: impl Into<String>) -> CheckReport {
    CheckReport { name: name.into(), ..r }
}

fn point_string(p: &[Rational]) -> String {
    let s: Vec<String> = p.iter().map(format_rational).collect();
    format!("[{}]", s.join(", "))
}

fn check_points(spec: &SpecFile, opts: &RunOptions) -> Result<(), RunError> {
    match opts.at.iter().find(|p| p.len() != spec.n()) {
        Some(p) => Err(RunError::Input(format!("point {} has {} coordinates, expected {}", point_string(p), p.len(), spec.n()))),
        None => Ok(()),
    }
}

fn random_fields(n: usize, count: usize, seed: u64) -> Vec<VectorField> {
    let mut g = sampling::rng(seed);
    (0..count).map(|_| sampling::random_vector_field(&mut g, n, FIELD_DEGREE)).collect()
}

fn semisimplicity(tensor: &StructureTensor, n: usize, opts: &RunOptions) -> CheckReport {
    let mut g = sampling::rng(opts.seed);
    let mut hits = 0;
    for s in 0..opts.points {
        let pt = sampling::random_point(&mut g, n, SamplingBounds::default());
        let a = algebra_at(tensor, &pt).expect("dimension");
        if a.is_semisimple(4, opts.seed.wrapping_add(s as u64)) {
            hits += 1;
        }
    }
    let note = format!("semisimple at {hits} of {} sampled points", opts.points);
    if hits > 0 {
        CheckReport::passed("semisimplicity").with_note(note)
    } else if opts.points == 0 {
        CheckReport::skipped("semisimplicity", "no points sampled")
    } else {
        CheckReport::failed("semisimplicity", Witness::new("semisimple", vec![], "no semisimple sampled point")).with_note(note)
    }
}

fn poisson_reports(pi: &PoissonBivector, opts: &RunOptions) -> Result<Vec<CheckReport>, RunError> {
    let n = pi.dim();
    let mut g = sampling::rng(opts.seed);
    let sections: Vec<Vec<MultiPoly>> =
        (0..2).map(|_| sampling::random_one_form(&mut g, n, FIELD_DEGREE).into_components()).collect();
    let br = poisson_bracket_evaluator(pi);
    let mut out: Vec<CheckReport> = lie_algebroid_reports(n, &br, &pi.anchor(), &sections, &default_test_functions(n))?
        .into_iter()
        .map(|r| {
            let name = format!("poisson_{}", r.name);
            renamed(r, name)
        })
        .collect();
    let mut koszul = None;
    for s in 0..KOSZUL_PAIRS {
        let f = sampling::random_poly(&mut g, n, FIELD_DEGREE, 3);
        let h = sampling::random_poly(&mut g, n, FIELD_DEGREE, 3);
        let lhs = koszul_bracket(pi, &differential(&f), &differential(&h))?;
        let rhs = differential(&pi.poisson_bracket(&f, &h));
        if lhs != rhs {
            let d: Vec<String> = lhs.minus(&rhs).components().iter().map(ToString::to_string).collect();
            koszul = Some(Witness::new("[df, dg] = d{f, g}", vec![s + 1], format!("[{}]", d.join(", "))));
            break;
        }
    }
    out.push(CheckReport::from_witness("poisson_koszul_exact", koszul).with_note(format!("{KOSZUL_PAIRS} random pairs")));
    Ok(out)
}

/// Frobenius axioms, Euler conditions, the Hertling-Manin identity, the
/// tangent F-algebroid, semisimplicity and, when present, the bivector.
pub fn run_verify(spec: &SpecFile, opts: &RunOptions) -> Result<RunReport, RunError> {
    let f = &spec.frobenius;
    let n = f.n();
    let c = structure_constants(f)?;
    let mut checks = vec![check_metric_normalization(f), check_c_symmetry(&c), check_nabla_c_symmetry(&c), check_wdvv(f)];
    checks.push(check_quasi_homogeneity(f).to_check());
    checks.extend(euler_condition_reports(f, &c));
    let fields = random_fields(n, 2, opts.seed);
    checks.push(check_hertling_manin(&c.product(), &fields).with_note("basis and 2 random fields"));
    let sections: Vec<Vec<MultiPoly>> = fields.iter().map(|v| v.components().to_vec()).collect();
    let tangent = check_f_algebroid(&tangent_f_algebroid(f, &c), &c.product(), &sections, &default_test_functions(n))?;
    checks.push(renamed(tangent, "tangent_f_algebroid"));
    checks.push(semisimplicity(&c, n, opts));
    if let Some(pi) = &spec.poisson {
        checks.extend(poisson_reports(pi, opts)?);
    }
    Ok(RunReport::new("verify", input_digest(spec), opts.seed, opts.points, FIELD_DEGREE, &checks))
}

fn fraction(r: &fmanifold::RationalFunction) -> FractionRecord {
    FractionRecord { num: raw_terms(r.numerator()), den: raw_terms(&r.denominator()) }
}

fn dual_record(dual: &DualStructure) -> DualRecord {
    DualRecord {
        star: dual.star.raw().iter().map(|row| row.iter().map(|v| v.iter().map(fraction).collect()).collect()).collect(),
        intersection_form: dual.dual_metric_inv.iter().map(|row| row.iter().map(raw_terms).collect()).collect(),
    }
}

/// Both cotangent algebroids, the duality map at sampled points, and the
/// identities of the dual product.
pub fn run_dualize(spec: &SpecFile, opts: &RunOptions) -> Result<RunReport, RunError> {
    check_points(spec, opts)?;
    let f = &spec.frobenius;
    let n = f.n();
    let c = structure_constants(f)?;
    let almost = build_cotangent_almost_frobenius(f, &c)?;
    let cf = build_cotangent_frobenius(f, &c);
    let mut checks = cf.reports(&c);
    let cot = check_f_algebroid(&cf.f_algebroid(n), &c.product(), &[], &default_test_functions(n))?;
    checks.push(renamed(cot, "cotangent_f_algebroid"));

    let (pts, bad) = sample_off_discriminant(almost.discriminant(), opts.points, opts.seed);
    let mut t1 = check_theorem1_with(f, &c, &almost, &pts, PAIRS_PER_POINT, opts.seed);
    if !bad.is_empty() {
        t1 = t1.with_note(format!("{} sampled points on the discriminant discarded", bad.len()));
    }
    checks.push(t1);
    for p in &opts.at {
        let name = format!("theorem1 at {}", point_string(p));
        if almost.discriminant().evaluate(p)?.is_zero() {
            checks.push(CheckReport::skipped(name, "point on the discriminant: E not invertible"));
        } else {
            checks.push(renamed(check_theorem1_with(f, &c, &almost, std::slice::from_ref(p), PAIRS_PER_POINT, opts.seed), name));
        }
    }

    let dual = dual_product_from(f, &c, &almost);
    checks.extend(star_reports(f, &dual));
    let tuples: Vec<[VectorField; 4]> = random_fields(n, 4 * STAR_TUPLES, opts.seed)
        .chunks(4)
        .map(|q| [q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone()])
        .collect();
    checks.push(check_star_hertling_manin(&dual, &tuples));
    let head = &pts[..pts.len().min(POINTWISE_POINTS)];
    checks.extend(pointwise_duality_reports(f, &c, &almost, &dual, head));

    let mut report = RunReport::new("dualize", input_digest(spec), opts.seed, opts.points, FIELD_DEGREE, &checks);
    if opts.emit_dual {
        report.dual = Some(dual_record(&dual));
    }
    Ok(report)
}

/// First failure over all points, or a pass with the number of points used.
struct Tally {
    name: &'static str,
    failure: Option<CheckReport>,
    used: usize,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, failure: None, used: 0 }
    }

    fn add(&mut self, r: CheckReport) {
        self.used += 1;
        if self.failure.is_none() && !r.ok() {
            self.failure = Some(r);
        }
    }

    fn finish(self, skip_reason: Option<String>) -> CheckReport {
        if let Some(reason) = skip_reason {
            return CheckReport::skipped(self.name, reason);
        }
        match self.failure {
            Some(f) => renamed(f, self.name),
            None if self.used == 0 => CheckReport::skipped(self.name, "no usable point"),
            None => CheckReport::passed(self.name).with_note(format!("{} points", self.used)),
        }
    }
}

/// The chain of dual products `*_0, ..., *_depth` built from the spec's
/// chain identities, at sampled points and at every `--at` point.
pub fn run_chain(spec: &SpecFile, opts: &RunOptions) -> Result<RunReport, RunError> {
    check_points(spec, opts)?;
    let available = spec.chain.len();
    if available == 0 {
        return Err(RunError::Input("spec has no chain identities".into()));
    }
    let depth = opts.depth.unwrap_or(available);
    if depth > available {
        return Err(Error::ChainTooShort { depth, available }.into());
    }
    let f = &spec.frobenius;
    let n = f.n();
    let c = structure_constants(f)?;
    let mut g = sampling::rng(opts.seed);
    let mut stages = Tally::new("chain_stages");
    let mut prop1 = Tally::new("prop1");
    let mut prop2 = Tally::new("prop2");
    let mut not_invertible = vec![0usize; depth.max(1)];
    let mut identical = true;

    let sampled: Vec<Vec<Rational>> = (0..opts.points).map(|_| sampling::random_point(&mut g, n, SamplingBounds::default())).collect();
    let mut at_checks = Vec::new();
    for (k, p) in sampled.iter().chain(&opts.at).enumerate() {
        let explicit = k >= sampled.len();
        let ids: Vec<Vec<Rational>> = spec.chain.iter().map(|e| e.at(p)).collect();
        let chain = match chain_products_at(&c, p, &ids, depth) {
            Ok(ch) => ch,
            Err(Error::NotInvertible { stage }) => {
                let s = stage.unwrap_or(0);
                not_invertible[s] += 1;
                if explicit {
                    let reason = format!("not invertible at stage {s}");
                    at_checks.push(CheckReport::skipped(format!("chain at {}", point_string(p)), reason));
                }
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        identical &= chain.iter().all(|a| a.constants() == chain[0].constants());
        let st = chain_stage_reports(&chain, &ids, p);
        if explicit {
            at_checks.push(renamed(st.clone(), format!("chain at {}", point_string(p))));
        }
        stages.add(st);
        if depth >= 2 {
            prop1.add(check_prop1_at(&c, p, &ids[0], &ids[1])?);
        }
        if depth >= 3 {
            let pairs: Vec<_> = (0..5).map(|_| (sampling::random_element(&mut g, n), sampling::random_element(&mut g, n))).collect();
            prop2.add(check_prop2_at(&c, p, &ids, &pairs)?);
        }
    }

    let mut st = stages.finish(None);
    if st.pass {
        for s in 1..=depth {
            st = st.with_note(format!("unit of stage {s} equals E_{}", s - 1));
        }
        if identical {
            st = st.with_note("all stages identical");
        }
    }
    for (s, &k) in not_invertible.iter().enumerate() {
        if k > 0 {
            st = st.with_note(format!("{k} points not invertible at stage {s}"));
        }
    }
    let mut checks = vec![st];
    checks.push(prop1.finish((depth < 2).then(|| format!("needs depth 2, got {depth}"))));
    checks.push(prop2.finish((depth < 3).then(|| format!("needs depth 3, got {depth}"))));
    checks.extend(at_checks);
    Ok(RunReport::new("chain", input_digest(spec), opts.seed, opts.points, FIELD_DEGREE, &checks))
}
