//! The cotangent F-algebroids of a Frobenius structure, the duality map
//! between them, the dual product and metric, and chains of dual products.

use num_traits::Zero;

use crate::algebroid::{
    basis_section, check_hertling_manin, components_to_string, hm_identity_residual, lie_bracket, Anchor,
    FAlgebroidSpec, BracketRule, StructureConstants, VectorField,
};
use crate::check::{CheckReport, Witness};
use crate::error::{Error, Result};
use crate::fiber_algebra::{algebra_at, poly_mult_operator, rational_vec, FiberAlgebra};
use crate::frobenius::{affine_components, FrobeniusSpec, StructureTensor};
use crate::linalg::{self, Matrix};
use crate::poly::{int, DiffRing, MultiPoly, Rational, RationalFunction};
use crate::sampling::{self, SamplingBounds};

/// `(T*M, <>, U)` with anchor `rho1 = eta^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CotangentFrobenius {
    /// `dt^i <> dt^j = sum_k C^{ij}_k dt^k`.
    pub product: StructureConstants,
    /// `U_j = eta_{1j}`.
    pub unit: Vec<MultiPoly>,
    pub rho1: Anchor,
}

pub fn build_cotangent_frobenius(spec: &FrobeniusSpec, tensor: &StructureTensor) -> CotangentFrobenius {
    let n = spec.n();
    let c = |m: &Matrix| -> Vec<Vec<MultiPoly>> {
        m.iter().map(|row| row.iter().map(|v| MultiPoly::constant(n, v.clone())).collect()).collect()
    };
    CotangentFrobenius {
        product: tensor.cotangent_product(),
        unit: spec.metric()[0].iter().map(|v| MultiPoly::constant(n, v.clone())).collect(),
        rho1: Anchor::new(c(spec.metric_inv())).expect("square"),
    }
}

impl CotangentFrobenius {
    /// The cotangent F-algebroid with the anchor-pullback bracket.
    pub fn f_algebroid(&self, n: usize) -> FAlgebroidSpec {
        FAlgebroidSpec {
            n,
            r: n,
            product: self.product.clone(),
            unit: self.unit.clone(),
            anchor: self.rho1.clone(),
            bracket_rule: BracketRule::AnchorPullback,
        }
    }

    /// `rho1(U) = e`, `U <> dt^i = dt^i`, and `rho1(dt^i <> dt^j) =
    /// rho1(dt^i) * rho1(dt^j)` on the base product.
    pub fn reports(&self, tensor: &StructureTensor) -> Vec<CheckReport> {
        let n = tensor.n();
        let e = VectorField::new(basis_section(n, n, 0));
        let ru = self.rho1.apply(&self.unit);
        let unit_w = (!ru.minus(&e).is_zero()).then(|| Witness::new("rho1(U) = e", vec![], ru.minus(&e)));

        let cot_unit = (0..n).find_map(|i| {
            let b: Vec<MultiPoly> = basis_section(n, n, i);
            let d: Vec<MultiPoly> = self.product.multiply(&self.unit, &b).iter().zip(&b).map(|(x, y)| x - y).collect();
            d.iter().any(|p| !p.is_zero()).then(|| Witness::new("U <> dt^i = dt^i", vec![i + 1], components_to_string(&d)))
        });

        let base = tensor.product();
        let mut hom = None;
        'h: for i in 0..n {
            for j in i..n {
                let (a, b): (Vec<MultiPoly>, Vec<MultiPoly>) = (basis_section(n, n, i), basis_section(n, n, j));
                let lhs = self.rho1.apply(&self.product.multiply(&a, &b));
                let rhs = base.multiply_fields(&self.rho1.apply(&a), &self.rho1.apply(&b));
                let d = lhs.minus(&rhs);
                if !d.is_zero() {
                    hom = Some(Witness::new("rho1 homomorphism", vec![i + 1, j + 1], d));
                    break 'h;
                }
            }
        }
        vec![
            CheckReport::from_witness("rho1_unit", unit_w),
            CheckReport::from_witness("cotangent_unit", cot_unit),
            CheckReport::from_witness("rho1_homomorphism", hom),
        ]
    }
}

/// The anchor `rho2` of the almost-Frobenius cotangent F-algebroid, with
/// entries in the rational functions with denominators powers of `det M_E`.
#[derive(Clone, Debug, PartialEq)]
pub struct CotangentAlmostFrobenius {
    e_inv: Vec<RationalFunction>,
    rho2: Vec<Vec<RationalFunction>>,
    discriminant: MultiPoly,
}

impl CotangentAlmostFrobenius {
    /// Assembles the structure from its parts, e.g. a deliberately altered
    /// anchor.
    pub fn from_parts(e_inv: Vec<RationalFunction>, rho2: Vec<Vec<RationalFunction>>, discriminant: MultiPoly) -> Self {
        CotangentAlmostFrobenius { e_inv, rho2, discriminant }
    }

    /// `E^{-1}` as a rational vector field.
    pub fn e_inv(&self) -> &[RationalFunction] {
        &self.e_inv
    }

    /// `rho2[i][j] = sum_k (E^{-1})^k C^{ij}_k`.
    pub fn rho2(&self) -> &[Vec<RationalFunction>] {
        &self.rho2
    }

    /// `det M_{E(t)}`.
    pub fn discriminant(&self) -> &MultiPoly {
        &self.discriminant
    }

    pub fn rho2_at(&self, pt: &[Rational]) -> Result<Matrix> {
        if self.discriminant.evaluate(pt)?.is_zero() {
            return Err(Error::NotInvertible { stage: None });
        }
        self.rho2.iter().map(|row| row.iter().map(|f| f.evaluate(pt)).collect()).collect()
    }

    /// `rho2(alpha)^i = sum_j rho2[i][j] alpha_j`.
    pub fn apply(&self, alpha: &[RationalFunction]) -> Vec<RationalFunction> {
        let n = self.rho2.len();
        self.rho2
            .iter()
            .map(|row| row.iter().zip(alpha).fold(RationalFunction::zero(n), |acc, (m, a)| acc.plus(&m.times(a))))
            .collect()
    }
}

/// `E^{-1} = adj(M_E) e_1 / det M_E` and `rho2`.
pub fn build_cotangent_almost_frobenius(spec: &FrobeniusSpec, tensor: &StructureTensor) -> Result<CotangentAlmostFrobenius> {
    let n = spec.n();
    let m = poly_mult_operator(&tensor.product(), spec.euler_field().components());
    let det = linalg::ring_determinant(&m, n);
    if det.is_zero() {
        return Err(Error::DiscriminantVanishes);
    }
    let adj = linalg::ring_adjugate(&m, n);
    let e_inv: Vec<RationalFunction> =
        (0..n).map(|k| RationalFunction::new(adj[k][0].clone(), det.clone())).collect::<Result<_>>()?;
    let cu = tensor.c_upper();
    let rho2 = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(RationalFunction::zero(n), |acc, k| {
                        if cu[i][j][k].is_zero() {
                            acc
                        } else {
                            acc.plus(&e_inv[k].times(&RationalFunction::from_poly(cu[i][j][k].clone())))
                        }
                    })
                })
                .collect()
        })
        .collect();
    Ok(CotangentAlmostFrobenius { e_inv, rho2, discriminant: det })
}

/// `rho2(dt^i <> dt^j) = rho2(dt^i) * rho2(dt^j)` as rational-function
/// identities.
pub fn check_rho2_homomorphism(tensor: &StructureTensor, almost: &CotangentAlmostFrobenius, dual: &DualStructure) -> CheckReport {
    let n = tensor.n();
    let cot = lift(&tensor.cotangent_product());
    for i in 0..n {
        for j in i..n {
            let a: Vec<RationalFunction> = basis_section(n, n, i);
            let b: Vec<RationalFunction> = basis_section(n, n, j);
            let lhs = almost.apply(&cot.multiply(&a, &b));
            let rhs = dual.star.multiply(&almost.apply(&a), &almost.apply(&b));
            let d: Vec<RationalFunction> = lhs.iter().zip(&rhs).map(|(x, y)| x.minus(y)).collect();
            if d.iter().any(|f| !f.is_zero()) {
                return CheckReport::failed("rho2_homomorphism", Witness::new("rho2 homomorphism", vec![i + 1, j + 1], components_to_string(&d)));
            }
        }
    }
    CheckReport::passed("rho2_homomorphism")
}

fn lift(p: &StructureConstants) -> StructureConstants<RationalFunction> {
    StructureConstants::new(
        p.raw()
            .iter()
            .map(|plane| plane.iter().map(|row| row.iter().map(|q| RationalFunction::from_poly(q.clone())).collect()).collect())
            .collect(),
    )
    .expect("cubic")
}

/// `x * y = x . y . E^{-1}` as rational functions and the intersection form
/// `g^{ij} = sum_k E^k C^{ij}_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualStructure {
    pub star: StructureConstants<RationalFunction>,
    pub dual_metric_inv: Vec<Vec<MultiPoly>>,
}

pub fn dual_product(spec: &FrobeniusSpec, tensor: &StructureTensor) -> Result<DualStructure> {
    let almost = build_cotangent_almost_frobenius(spec, tensor)?;
    Ok(dual_product_from(spec, tensor, &almost))
}

pub fn dual_product_from(spec: &FrobeniusSpec, tensor: &StructureTensor, almost: &CotangentAlmostFrobenius) -> DualStructure {
    let n = spec.n();
    let prod = lift(&tensor.product());
    let star = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let ij = prod.multiply(&basis_section(n, n, i), &basis_section(n, n, j));
                    prod.multiply(&ij, almost.e_inv())
                })
                .collect()
        })
        .collect();
    let e = spec.euler_field();
    let cu = tensor.c_upper();
    let g = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    e.components().iter().enumerate().fold(MultiPoly::zero(n), |acc, (k, ek)| &acc + &(ek * &cu[i][j][k]))
                })
                .collect()
        })
        .collect();
    DualStructure { star: StructureConstants::new(star).expect("cubic"), dual_metric_inv: g }
}

/// Commutativity, associativity on basis triples and `E` as unit, all as
/// rational-function identities.
pub fn star_reports(spec: &FrobeniusSpec, dual: &DualStructure) -> Vec<CheckReport> {
    let n = spec.n();
    let star = &dual.star;
    let comm = star.asymmetry().map(|(i, j, k)| {
        Witness::new("commutativity", vec![i + 1, j + 1, k + 1], star.get(i, j, k).minus(star.get(j, i, k)))
    });
    let basis: Vec<Vec<RationalFunction>> = (0..n).map(|i| basis_section(n, n, i)).collect();
    let mut assoc = None;
    'a: for i in 0..n {
        for j in 0..n {
            let ij = star.multiply(&basis[i], &basis[j]);
            for k in j..n {
                let lhs = star.multiply(&ij, &basis[k]);
                let rhs = star.multiply(&basis[i], &star.multiply(&basis[j], &basis[k]));
                let d: Vec<RationalFunction> = lhs.iter().zip(&rhs).map(|(x, y)| x.minus(y)).collect();
                if d.iter().any(|f| !f.is_zero()) {
                    assoc = Some(Witness::new("associativity", vec![i + 1, j + 1, k + 1], components_to_string(&d)));
                    break 'a;
                }
            }
        }
    }
    let e: Vec<RationalFunction> = spec.euler_field().into_components().into_iter().map(RationalFunction::from_poly).collect();
    let unit = (0..n).find_map(|i| {
        let d: Vec<RationalFunction> = star.multiply(&basis[i], &e).iter().zip(&basis[i]).map(|(x, y)| x.minus(y)).collect();
        d.iter().any(|f| !f.is_zero()).then(|| Witness::new("E unit", vec![i + 1], components_to_string(&d)))
    });
    vec![
        CheckReport::from_witness("star_commutative", comm),
        CheckReport::from_witness("star_associative", assoc),
        CheckReport::from_witness("star_unit", unit),
    ]
}

/// Hertling–Manin identity for the dual product on all coordinate-basis
/// 4-tuples and on each supplied 4-tuple of polynomial fields.
pub fn check_star_hertling_manin(dual: &DualStructure, tuples: &[[VectorField; 4]]) -> CheckReport {
    let name = "star_hertling_manin";
    let basis = check_hertling_manin(&dual.star, &[]);
    if !basis.pass {
        return CheckReport { name: name.into(), ..basis };
    }
    let br = |a: &[RationalFunction], b: &[RationalFunction]| {
        lie_bracket(&VectorField::new(a.to_vec()), &VectorField::new(b.to_vec())).expect("dimension").into_components()
    };
    for (t, tuple) in tuples.iter().enumerate() {
        let s: Vec<Vec<RationalFunction>> = tuple
            .iter()
            .map(|f| f.components().iter().cloned().map(RationalFunction::from_poly).collect())
            .collect();
        let r = hm_identity_residual(&dual.star, &br, [&s[0], &s[1], &s[2], &s[3]]);
        if r.iter().any(|f| !f.is_zero()) {
            return CheckReport::failed(name, Witness::new("random tuple", vec![t + 1], components_to_string(&r)));
        }
    }
    CheckReport::passed(name).with_note(format!("coordinate basis and {} random 4-tuples", tuples.len()))
}

fn euler_at(spec: &FrobeniusSpec, pt: &[Rational]) -> Result<Vec<Rational>> {
    spec.euler_field().components().iter().map(|p| p.evaluate(pt)).collect()
}

fn eta_pair(eta: &Matrix, x: &[Rational], y: &[Rational]) -> Rational {
    let n = x.len();
    (0..n).fold(Rational::zero(), |acc, i| (0..n).fold(acc, |acc, j| acc + &x[i] * &eta[i][j] * &y[j]))
}

/// `g(x, y) = eta(E^{-1} . x, y)` at `pt`.
pub fn dual_metric_at(spec: &FrobeniusSpec, tensor: &StructureTensor, pt: &[Rational], x: &[Rational], y: &[Rational]) -> Result<Rational> {
    let a = algebra_at(tensor, pt)?;
    let einv = a.invert(&euler_at(spec, pt)?)?;
    Ok(eta_pair(spec.metric(), &a.multiply(&einv, x)?, y))
}

/// Matrix of `rho2 o rho1^{-1}` at `pt`: `D[k][i] = sum_j rho2[k][j](pt) eta_ji`.
pub fn duality_map_at(spec: &FrobeniusSpec, almost: &CotangentAlmostFrobenius, pt: &[Rational]) -> Result<Matrix> {
    Ok(linalg::mat_mul(&almost.rho2_at(pt)?, spec.metric()))
}

/// Samples `count` points off the zero set of `disc`; points that land on it
/// are returned separately.
pub fn sample_off_discriminant(disc: &MultiPoly, count: usize, seed: u64) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let n = disc.nvars();
    let mut rng = sampling::rng(seed);
    let (mut good, mut bad) = (Vec::new(), Vec::new());
    while good.len() < count && bad.len() < 100 * count.max(1) {
        let p = sampling::random_point(&mut rng, n, SamplingBounds::default());
        if disc.evaluate(&p).expect("dimension").is_zero() {
            bad.push(p);
        } else {
            good.push(p);
        }
    }
    (good, bad)
}

pub fn check_theorem1(spec: &FrobeniusSpec, tensor: &StructureTensor, points: &[Vec<Rational>], samples: usize, seed: u64) -> Result<CheckReport> {
    let almost = build_cotangent_almost_frobenius(spec, tensor)?;
    Ok(check_theorem1_with(spec, tensor, &almost, points, samples, seed))
}

/// At each point and for `samples` random pairs: `D(x . y) = x * y` with `D`
/// from `rho2` and `*` from inverting `E` in the fiber algebra, and
/// `g(x, y) = eta(D x, y)` against `eta(E^{-1} . x, y)`.
pub fn check_theorem1_with(
    spec: &FrobeniusSpec,
    tensor: &StructureTensor,
    almost: &CotangentAlmostFrobenius,
    points: &[Vec<Rational>],
    samples: usize,
    seed: u64,
) -> CheckReport {
    let name = "theorem1";
    let n = spec.n();
    let mut rng = sampling::rng(seed);
    let mut notes = Vec::new();
    let mut used = 0usize;
    let mut identity_everywhere = true;
    for pt in points {
        let d = match duality_map_at(spec, almost, pt) {
            Ok(d) => d,
            Err(_) => {
                notes.push(format!("skipped point {} on the discriminant", rational_vec(pt)));
                continue;
            }
        };
        let a = algebra_at(tensor, pt).expect("dimension");
        let einv = match euler_at(spec, pt).and_then(|e| a.invert(&e)) {
            Ok(v) => v,
            Err(_) => {
                notes.push(format!("skipped point {} on the discriminant", rational_vec(pt)));
                continue;
            }
        };
        used += 1;
        identity_everywhere &= d == linalg::identity(n);
        for s in 0..samples {
            let x = sampling::random_element(&mut rng, n);
            let y = sampling::random_element(&mut rng, n);
            let xy = a.mul(&x, &y);
            let lhs = linalg::mat_vec(&d, &xy);
            let rhs = a.mul(&xy, &einv);
            if lhs != rhs {
                let diff: Vec<Rational> = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
                return CheckReport::failed(name, Witness::new("D(x.y) = x*y", vec![s + 1], rational_vec(&diff)).at(pt));
            }
            let g_d = eta_pair(spec.metric(), &linalg::mat_vec(&d, &x), &y);
            let g_f = eta_pair(spec.metric(), &a.mul(&einv, &x), &y);
            if g_d != g_f {
                return CheckReport::failed(name, Witness::new("metric", vec![s + 1], crate::poly::format_rational(&(g_d - g_f))).at(pt));
            }
        }
    }
    let mut r = CheckReport::passed(name).with_note(format!("{used} points, {samples} pairs each"));
    if used > 0 && identity_everywhere {
        r = r.with_note("D = identity at every point");
    }
    r.notes.extend(notes);
    r
}

/// `[g(d_i, d_j)]` is the inverse of `[g^{ij}(pt)]`, and
/// `det D(pt) * det M_E(pt) = 1`, at each usable point.
pub fn pointwise_duality_reports(
    spec: &FrobeniusSpec,
    tensor: &StructureTensor,
    almost: &CotangentAlmostFrobenius,
    dual: &DualStructure,
    points: &[Vec<Rational>],
) -> Vec<CheckReport> {
    let n = spec.n();
    let mut form = None;
    let mut det = None;
    for pt in points {
        let Ok(d) = duality_map_at(spec, almost, pt) else { continue };
        let disc = almost.discriminant().evaluate(pt).expect("dimension");
        if det.is_none() && linalg::determinant(&d) * &disc != int(1) {
            det = Some(Witness::new("det D * det M_E", vec![], crate::poly::format_rational(&(linalg::determinant(&d) * disc))).at(pt));
        }
        if form.is_none() {
            let g: Matrix = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let a = algebra_at(tensor, pt).expect("dimension");
                            dual_metric_at(spec, tensor, pt, &a.basis(i), &a.basis(j)).expect("off discriminant")
                        })
                        .collect()
                })
                .collect();
            let ginv: Matrix = dual
                .dual_metric_inv
                .iter()
                .map(|row| row.iter().map(|p| p.evaluate(pt).expect("dimension")).collect())
                .collect();
            let prod = linalg::mat_mul(&g, &ginv);
            if prod != linalg::identity(n) {
                let s: Vec<String> = prod.iter().map(|r| rational_vec(r)).collect();
                form = Some(Witness::new("g g^-1 = 1", vec![], format!("[{}]", s.join(", "))).at(pt));
            }
        }
    }
    vec![CheckReport::from_witness("intersection_form", form), CheckReport::from_witness("duality_map_det", det)]
}

/// An affine field `sum_i (a^i_j t^j + b^i) d_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineField {
    pub a: Matrix,
    pub b: Vec<Rational>,
}

impl AffineField {
    pub fn components(&self) -> Vec<MultiPoly> {
        affine_components(&self.a, &self.b, self.b.len())
    }

    pub fn at(&self, pt: &[Rational]) -> Vec<Rational> {
        let n = self.b.len();
        (0..n).map(|i| (0..n).fold(self.b[i].clone(), |acc, j| acc + &self.a[i][j] * &pt[j])).collect()
    }

    /// The constant field `b`.
    pub fn constant(b: Vec<Rational>) -> Self {
        let n = b.len();
        AffineField { a: linalg::zeros(n, n), b }
    }
}

/// A Frobenius structure with the identities `E_0, E_1, ...` of a chain of
/// dual products.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec {
    pub spec: FrobeniusSpec,
    pub tensor: StructureTensor,
    pub identities: Vec<AffineField>,
}

fn at_stage(e: Error, stage: usize) -> Error {
    match e {
        Error::NotInvertible { .. } => Error::NotInvertible { stage: Some(stage) },
        other => other,
    }
}

/// Fiber algebras of `*_0, ..., *_depth` at `pt`, with
/// `x *_{i+1} y = x *_i y *_i E_i^{-1}` and the inverse taken in `*_i`.
pub fn chain_products_at(tensor: &StructureTensor, pt: &[Rational], identities: &[Vec<Rational>], depth: usize) -> Result<Vec<FiberAlgebra>> {
    if depth > identities.len() {
        return Err(Error::ChainTooShort { depth, available: identities.len() });
    }
    let mut out = vec![algebra_at(tensor, pt)?];
    for (i, e) in identities.iter().take(depth).enumerate() {
        let cur = out.last().expect("nonempty");
        let w = cur.invert(e).map_err(|err| at_stage(err, i))?;
        out.push(cur.twisted(&w).map_err(|err| at_stage(err, i))?);
    }
    Ok(out)
}

/// `I = (E_0^{-1})^2 *_0 E_1^{-1}`, with `E_0` inverted in `*_0` and `E_1` in
/// `*_1`, so that `x *_2 y = x *_0 y *_0 I`.
pub fn pseudo_eventual_identity_at(tensor: &StructureTensor, pt: &[Rational], e0: &[Rational], e1: &[Rational]) -> Result<Vec<Rational>> {
    let a0 = algebra_at(tensor, pt)?;
    let k = a0.invert(e0).map_err(|e| at_stage(e, 0))?;
    let a1 = a0.twisted(&k).map_err(|e| at_stage(e, 0))?;
    let w = a1.invert(e1).map_err(|e| at_stage(e, 1))?;
    Ok(a0.mul(&a0.mul(&k, &k), &w))
}

fn matrix_string(m: &Matrix) -> String {
    let rows: Vec<String> = m.iter().map(|r| rational_vec(r)).collect();
    format!("[{}]", rows.join(", "))
}

/// `D_1 o D_0 = P_01` at `pt`, where `D_0` is multiplication by `E_0^{-1}` in
/// `*_0`, `D_1` multiplication by `E_1^{-1}` in `*_1`, and `P_01` is
/// `x -> x *_0 I`.
pub fn check_prop1_at(tensor: &StructureTensor, pt: &[Rational], e0: &[Rational], e1: &[Rational]) -> Result<CheckReport> {
    let a0 = algebra_at(tensor, pt)?;
    let k = a0.invert(e0).map_err(|e| at_stage(e, 0))?;
    let d0 = a0.mult_operator(&k);
    let a1 = a0.twisted(&k).map_err(|e| at_stage(e, 0))?;
    let d1 = a1.mult_operator(&a1.invert(e1).map_err(|e| at_stage(e, 1))?);
    let p01 = a0.mult_operator(&pseudo_eventual_identity_at(tensor, pt, e0, e1)?);
    let lhs = linalg::mat_mul(&d1, &d0);
    if lhs != p01 {
        let diff: Matrix = lhs.iter().zip(&p01).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect();
        return Ok(CheckReport::failed("prop1", Witness::new("D1 D0 = P01", vec![], matrix_string(&diff)).at(pt)));
    }
    Ok(CheckReport::passed("prop1"))
}

/// Iterated `*_3` against the closed form `x *_0 y *_0 I^2 *_0 v`, where `v`
/// is the `*_2`-inverse of `E_2`, computed in `*_0` as
/// `(E_2 *_0 I^2)^{-1}`; also the algebra axioms of `*_3` and its unit `E_2`.
pub fn check_prop2_at(tensor: &StructureTensor, pt: &[Rational], identities: &[Vec<Rational>], pairs: &[(Vec<Rational>, Vec<Rational>)]) -> Result<CheckReport> {
    if identities.len() < 3 {
        return Err(Error::ChainTooShort { depth: 3, available: identities.len() });
    }
    let chain = chain_products_at(tensor, pt, identities, 3)?;
    let a0 = &chain[0];
    let a3 = &chain[3];
    let i = pseudo_eventual_identity_at(tensor, pt, &identities[0], &identities[1])?;
    let i2 = a0.mul(&i, &i);
    let v = a0.invert(&a0.mul(&identities[2], &i2)).map_err(|e| at_stage(e, 2))?;
    let twist = a0.mul(&i2, &v);
    let n = a0.n();
    let basis_pairs: Vec<(Vec<Rational>, Vec<Rational>)> =
        (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).map(|(p, q)| (a0.basis(p), a0.basis(q))).collect();
    for (s, (x, y)) in basis_pairs.iter().chain(pairs).enumerate() {
        let lhs = a3.mul(x, y);
        let rhs = a0.mul(&a0.mul(x, y), &twist);
        if lhs != rhs {
            let d: Vec<Rational> = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
            return Ok(CheckReport::failed("prop2", Witness::new("closed form", vec![s + 1], rational_vec(&d)).at(pt)));
        }
    }
    let mut parts = a3.algebra_reports();
    if a3.unit() != identities[2].as_slice() {
        let d: Vec<Rational> = a3.unit().iter().zip(&identities[2]).map(|(p, q)| p - q).collect();
        parts.push(CheckReport::failed("unit_is_e2", Witness::new("unit", vec![3], rational_vec(&d)).at(pt)));
    }
    let r = CheckReport::combine("prop2", &parts);
    Ok(match r.witness {
        Some(w) => CheckReport::failed("prop2", w.at(pt)),
        None => r,
    })
}

/// Algebra axioms of every stage and `unit(*_{i+1}) = E_i`.
pub fn chain_stage_reports(chain: &[FiberAlgebra], identities: &[Vec<Rational>], pt: &[Rational]) -> CheckReport {
    let mut parts = Vec::new();
    for (s, a) in chain.iter().enumerate() {
        for r in a.algebra_reports() {
            parts.push(CheckReport { name: format!("stage {s} {}", r.name), ..r });
        }
        if s > 0 && a.unit() != identities[s - 1].as_slice() {
            let d: Vec<Rational> = a.unit().iter().zip(&identities[s - 1]).map(|(p, q)| p - q).collect();
            parts.push(CheckReport::failed(format!("stage {s} unit"), Witness::new("unit", vec![s], rational_vec(&d))));
        }
    }
    let r = CheckReport::combine("chain_stages", &parts);
    match r.witness {
        Some(w) => CheckReport::failed("chain_stages", w.at(pt)),
        None => r,
    }
}
