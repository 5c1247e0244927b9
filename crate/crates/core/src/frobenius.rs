//! Frobenius structures in flat coordinates: the structure tensor of a
//! potential and the checks of the flat-coordinate axioms.

use num_traits::Zero;

use crate::algebroid::{basis_section, lie_bracket, PolyVectorField, StructureConstants, VectorField};
use crate::check::{CheckReport, Witness};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{int, DiffRing, MultiPoly, Rational};

/// Potential, flat metric, affine Euler field `E = sum_i (a^i_j t^j + b^i) d_i`
/// and charge `d`. The unit is `d/dt1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusSpec {
    potential: MultiPoly,
    metric: Matrix,
    metric_inv: Matrix,
    euler_a: Matrix,
    euler_b: Vec<Rational>,
    charge: Rational,
}

impl FrobeniusSpec {
    /// Validates dimensions, symmetry and invertibility of the metric.
    ///
    /// The Euler normalization (first column of `a` equal to `e_1`, `b^1 = 0`)
    /// is not enforced here: it is reported by [`check_euler_conditions`].
    pub fn new(
        potential: MultiPoly,
        metric: Matrix,
        euler_a: Matrix,
        euler_b: Vec<Rational>,
        charge: Rational,
    ) -> Result<Self> {
        let n = potential.nvars();
        let square = |m: &Matrix| -> Result<()> {
            if m.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.len() });
            }
            if let Some(row) = m.iter().find(|r| r.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            Ok(())
        };
        square(&metric)?;
        square(&euler_a)?;
        if euler_b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: euler_b.len() });
        }
        if let Some((row, col)) = linalg::asymmetry(&metric) {
            return Err(Error::MetricNotSymmetric { row, col });
        }
        let metric_inv = linalg::inverse(&metric).ok_or(Error::SingularMetric)?;
        Ok(FrobeniusSpec { potential, metric, metric_inv, euler_a, euler_b, charge })
    }

    pub fn n(&self) -> usize {
        self.potential.nvars()
    }

    pub fn potential(&self) -> &MultiPoly {
        &self.potential
    }

    /// `eta_ij`.
    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    /// `eta^ij`.
    pub fn metric_inv(&self) -> &Matrix {
        &self.metric_inv
    }

    pub fn euler_a(&self) -> &Matrix {
        &self.euler_a
    }

    pub fn euler_b(&self) -> &[Rational] {
        &self.euler_b
    }

    pub fn charge(&self) -> &Rational {
        &self.charge
    }

    /// Same metric and Euler data with another potential.
    pub fn with_potential(&self, potential: MultiPoly) -> Result<Self> {
        Self::new(potential, self.metric.clone(), self.euler_a.clone(), self.euler_b.clone(), self.charge.clone())
    }

    /// `E^i = sum_j a^i_j t^j + b^i`.
    pub fn euler_field(&self) -> PolyVectorField {
        let n = self.n();
        VectorField::new(affine_components(&self.euler_a, &self.euler_b, n))
    }
}

/// Components of the affine field `sum_i (a^i_j t^j + b^i) d_i`.
pub fn affine_components(a: &Matrix, b: &[Rational], n: usize) -> Vec<MultiPoly> {
    (0..n)
        .map(|i| {
            (0..n).fold(MultiPoly::constant(n, b[i].clone()), |acc, j| {
                &acc + &MultiPoly::var(n, j).scale(&a[i][j])
            })
        })
        .collect()
}

/// Third derivatives of the potential with each index variant.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTensor {
    n: usize,
    c_lower: Vec<Vec<Vec<MultiPoly>>>,
    c_mixed: Vec<Vec<Vec<MultiPoly>>>,
    c_upper: Vec<Vec<Vec<MultiPoly>>>,
}

impl StructureTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `C_ijk`.
    pub fn c_lower(&self) -> &Vec<Vec<Vec<MultiPoly>>> {
        &self.c_lower
    }

    /// `c_mixed[i][j][k] = C^k_ij`.
    pub fn c_mixed(&self) -> &Vec<Vec<Vec<MultiPoly>>> {
        &self.c_mixed
    }

    /// `c_upper[i][j][k] = C^{ij}_k`.
    pub fn c_upper(&self) -> &Vec<Vec<Vec<MultiPoly>>> {
        &self.c_upper
    }

    /// The product on vector fields, `d_i * d_j = sum_k C^k_ij d_k`.
    pub fn product(&self) -> StructureConstants {
        StructureConstants::new(self.c_mixed.clone()).expect("cubic tensor")
    }

    /// The product on one-forms, `dt^i <> dt^j = sum_k C^{ij}_k dt^k`.
    pub fn cotangent_product(&self) -> StructureConstants {
        StructureConstants::new(self.c_upper.clone()).expect("cubic tensor")
    }
}

fn third_partial(f: &MultiPoly, i: usize, j: usize, k: usize) -> MultiPoly {
    f.derivative(i).derivative(j).derivative(k)
}

fn contract(m: &Matrix, v: &[MultiPoly], n: usize) -> Vec<MultiPoly> {
    (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| !m[a][b].is_zero())
                .fold(MultiPoly::zero(n), |acc, b| &acc + &v[b].scale(&m[a][b]))
        })
        .collect()
}

/// `C_ijk = d^3 F / dt^i dt^j dt^k`, `C^k_ij = eta^{kl} C_lij`,
/// `C^{ij}_k = eta^{il} eta^{jm} C_lmk`.
///
/// Every lower entry is differentiated in its own index order, so the
/// symmetry check is not vacuous.
pub fn structure_constants(spec: &FrobeniusSpec) -> Result<StructureTensor> {
    let n = spec.n();
    let f = spec.potential();
    let inv = spec.metric_inv();
    let c_lower: Vec<Vec<Vec<MultiPoly>>> =
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| third_partial(f, i, j, k)).collect()).collect()).collect();
    // c_mixed[i][j][k] = sum_l inv[k][l] c_lower[l][i][j]
    let c_mixed = (0..n)
        .map(|i| (0..n).map(|j| contract(inv, &(0..n).map(|l| c_lower[l][i][j].clone()).collect::<Vec<_>>(), n)).collect())
        .collect();
    let c_upper = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| {
                            let mut acc = MultiPoly::zero(n);
                            for l in 0..n {
                                if inv[i][l].is_zero() {
                                    continue;
                                }
                                for m in 0..n {
                                    if inv[j][m].is_zero() {
                                        continue;
                                    }
                                    let w = &inv[i][l] * &inv[j][m];
                                    acc = &acc + &c_lower[l][m][k].scale(&w);
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(StructureTensor { n, c_lower, c_mixed, c_upper })
}

/// `d^3 F / dt1 dt^i dt^j = eta_ij` for all `i, j`.
pub fn check_metric_normalization(spec: &FrobeniusSpec) -> CheckReport {
    let n = spec.n();
    let f = spec.potential();
    for i in 0..n {
        for j in 0..n {
            let d = &third_partial(f, 0, i, j) - &MultiPoly::constant(n, spec.metric()[i][j].clone());
            if !d.is_zero() {
                return CheckReport::failed("metric_normalization", Witness::new("normalization", vec![i + 1, j + 1], d));
            }
        }
    }
    CheckReport::passed("metric_normalization")
}

/// `C_ijk` invariant under all permutations of its indices.
pub fn check_c_symmetry(tensor: &StructureTensor) -> CheckReport {
    let n = tensor.n;
    let c = &tensor.c_lower;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for (a, b, d) in [(j, i, k), (i, k, j), (k, j, i)] {
                    if c[i][j][k] != c[a][b][d] {
                        let w = Witness::new("symmetry", vec![i + 1, j + 1, k + 1], &c[i][j][k] - &c[a][b][d]);
                        return CheckReport::failed("c_symmetry", w);
                    }
                }
            }
        }
    }
    CheckReport::passed("c_symmetry")
}

/// `d_l C_ijk` symmetric in all four indices.
pub fn check_nabla_c_symmetry(tensor: &StructureTensor) -> CheckReport {
    let n = tensor.n;
    let c = &tensor.c_lower;
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = &c[i][j][k].derivative(l) - &c[l][j][k].derivative(i);
                    if !d.is_zero() {
                        let w = Witness::new("symmetry", vec![l + 1, i + 1, j + 1, k + 1], d);
                        return CheckReport::failed("nabla_c_symmetry", w);
                    }
                }
            }
        }
    }
    CheckReport::passed("nabla_c_symmetry")
}

/// Residual `sum F_ijm eta^mn F_nkl - sum F_ljm eta^mn F_nki` of the WDVV
/// equation for the index tuple `(i, j, k, l)`.
pub fn wdvv_residual(spec: &FrobeniusSpec, c_lower: &[Vec<Vec<MultiPoly>>], i: usize, j: usize, k: usize, l: usize) -> MultiPoly {
    let n = spec.n();
    let inv = spec.metric_inv();
    let mut acc = MultiPoly::zero(n);
    for m in 0..n {
        for p in 0..n {
            let e = &inv[m][p];
            if e.is_zero() {
                continue;
            }
            let lhs = &c_lower[i][j][m] * &c_lower[p][k][l];
            let rhs = &c_lower[l][j][m] * &c_lower[p][k][i];
            acc = &acc + &(&lhs - &rhs).scale(e);
        }
    }
    acc
}

/// WDVV over all index tuples; the witness is the first failing `(i, j, k, l)`
/// in lexicographic order.
pub fn check_wdvv(spec: &FrobeniusSpec) -> CheckReport {
    let n = spec.n();
    let f = spec.potential();
    let c: Vec<Vec<Vec<MultiPoly>>> =
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| third_partial(f, i, j, k)).collect()).collect()).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let r = wdvv_residual(spec, &c, i, j, k, l);
                    if !r.is_zero() {
                        return CheckReport::failed("wdvv", Witness::new("wdvv", vec![i + 1, j + 1, k + 1, l + 1], r));
                    }
                }
            }
        }
    }
    CheckReport::passed("wdvv")
}

/// `E F - (3 - d) F` and, when it is at most quadratic, its coefficients
/// written as `1/2 A_ij t^i t^j + B_i t^i + c0` with `A` symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiHomogeneityReport {
    pub residual: MultiPoly,
    pub a: Matrix,
    pub b: Vec<Rational>,
    pub c0: Rational,
    pub pass: bool,
}

impl QuasiHomogeneityReport {
    pub fn to_check(&self) -> CheckReport {
        if self.pass {
            CheckReport::passed("quasi_homogeneity")
        } else {
            let high = &self.residual - &self.residual.truncate_degree(2);
            CheckReport::failed("quasi_homogeneity", Witness::new("degree > 2 part", vec![], high))
        }
    }
}

pub fn check_quasi_homogeneity(spec: &FrobeniusSpec) -> QuasiHomogeneityReport {
    let n = spec.n();
    let f = spec.potential();
    let e = spec.euler_field();
    let ef = e
        .components()
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(n), |acc, (i, ei)| &acc + &(ei * &f.derivative(i)));
    let residual = &ef - &f.scale(&(int(3) - spec.charge()));
    let pass = residual.total_degree().map_or(true, |d| d <= 2);
    let mut a = linalg::zeros(n, n);
    let mut b = vec![Rational::zero(); n];
    let mut c0 = Rational::zero();
    if pass {
        for (exps, c) in residual.terms() {
            let nz: Vec<usize> = (0..n).filter(|&i| exps[i] > 0).collect();
            match (exps.iter().sum::<u32>(), nz.as_slice()) {
                (0, _) => c0 = c.clone(),
                (1, [i]) => b[*i] = c.clone(),
                (2, [i]) => a[*i][*i] = c * int(2),
                (2, [i, j]) => {
                    a[*i][*j] = c.clone();
                    a[*j][*i] = c.clone();
                }
                _ => unreachable!("degree at most two"),
            }
        }
    }
    QuasiHomogeneityReport { residual, a, b, c0, pass }
}

/// Reports for the Euler-field conditions: (i) normalization of `a` and `b`,
/// (ii) `L_E(d_i * d_j) - [E, d_i] * d_j - d_i * [E, d_j] = d_i * d_j`,
/// (iii) `a^k_i eta_kj + a^k_j eta_ik = (2 - d) eta_ij`, and linearity.
pub fn euler_condition_reports(spec: &FrobeniusSpec, tensor: &StructureTensor) -> Vec<CheckReport> {
    let n = spec.n();
    let a = spec.euler_a();
    let b = spec.euler_b();

    let mut norm = None;
    for i in 0..n {
        let want = if i == 0 { int(1) } else { int(0) };
        if a[i][0] != want {
            norm = Some(Witness::new("(i) a column 1", vec![i + 1, 1], &a[i][0] - &want));
            break;
        }
    }
    if norm.is_none() && !b[0].is_zero() {
        norm = Some(Witness::new("(i) b", vec![1], crate::poly::format_rational(&b[0])));
    }

    let prod = tensor.product();
    let e = spec.euler_field();
    let basis: Vec<PolyVectorField> = (0..n).map(|i| VectorField::new(basis_section(n, n, i))).collect();
    let le: Vec<PolyVectorField> = basis.iter().map(|x| lie_bracket(&e, x).expect("dimension")).collect();
    let mut product_w = None;
    'ii: for i in 0..n {
        for j in 0..n {
            let ij = prod.multiply_fields(&basis[i], &basis[j]);
            let lhs = lie_bracket(&e, &ij)
                .expect("dimension")
                .minus(&prod.multiply_fields(&le[i], &basis[j]))
                .minus(&prod.multiply_fields(&basis[i], &le[j]));
            let d = lhs.minus(&ij);
            if !d.is_zero() {
                product_w = Some(Witness::new("(ii)", vec![i + 1, j + 1], d));
                break 'ii;
            }
        }
    }

    let eta = spec.metric();
    let two_minus_d = int(2) - spec.charge();
    let mut metric_w = None;
    'iii: for i in 0..n {
        for j in 0..n {
            let lhs = (0..n).fold(Rational::zero(), |acc, k| acc + &a[k][i] * &eta[k][j] + &a[k][j] * &eta[i][k]);
            let d = lhs - &two_minus_d * &eta[i][j];
            if !d.is_zero() {
                metric_w = Some(Witness::new("(iii)", vec![i + 1, j + 1], crate::poly::format_rational(&d)));
                break 'iii;
            }
        }
    }

    vec![
        CheckReport::from_witness("euler_normalization", norm),
        CheckReport::from_witness("euler_product", product_w),
        CheckReport::from_witness("euler_metric", metric_w),
        CheckReport::passed("euler_linear").with_note("affine components in flat coordinates"),
    ]
}

/// Conditions (i)-(iii) on the Euler field combined.
pub fn check_euler_conditions(spec: &FrobeniusSpec, tensor: &StructureTensor) -> CheckReport {
    CheckReport::combine("euler_conditions", &euler_condition_reports(spec, tensor))
}

/// `C(X, Y, Z) = sum C_ijk X^i Y^j Z^k`.
pub fn c_cubic(
    tensor: &StructureTensor,
    x: &PolyVectorField,
    y: &PolyVectorField,
    z: &PolyVectorField,
) -> Result<MultiPoly> {
    let n = tensor.n;
    for f in [x, y, z] {
        if f.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: f.dim() });
        }
    }
    let mut acc = MultiPoly::zero(n);
    for (i, xi) in x.components().iter().enumerate().filter(|(_, p)| !p.is_zero()) {
        for (j, yj) in y.components().iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            let xy = xi * yj;
            for (k, zk) in z.components().iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                acc = &acc + &(&(&xy * zk) * &tensor.c_lower[i][j][k]);
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn t(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    fn half_t1sq_t2() -> MultiPoly {
        (&t(2, 0).pow(2) * &t(2, 1)).scale(&rat(1, 2))
    }

    fn spec2(f: MultiPoly, charge: Rational) -> FrobeniusSpec {
        let a = vec![vec![int(1), int(0)], vec![int(0), rat(2, 3)]];
        FrobeniusSpec::new(f, m(&[&[0, 1], &[1, 0]]), a, vec![int(0), int(0)], charge).unwrap()
    }

    fn n2_potential() -> MultiPoly {
        &half_t1sq_t2() + &t(2, 1).pow(4)
    }

    #[test]
    fn mixed_constants_of_simple_potential() {
        let s = spec2(half_t1sq_t2(), rat(1, 3));
        let c = structure_constants(&s).unwrap();
        let one = MultiPoly::one(2);
        let zero = MultiPoly::zero(2);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let want = match (i, j, k) {
                        (0, 0, 0) | (0, 1, 1) | (1, 0, 1) => &one,
                        _ => &zero,
                    };
                    assert_eq!(&c.c_mixed()[i][j][k], want, "C^{}_{}{}", k + 1, i + 1, j + 1);
                }
            }
        }
        assert!(check_c_symmetry(&c).pass);
    }

    #[test]
    fn normalization_examples() {
        assert!(check_metric_normalization(&spec2(half_t1sq_t2(), rat(1, 3))).pass);
        assert!(check_metric_normalization(&spec2(n2_potential(), rat(1, 3))).pass);
        let s = FrobeniusSpec::new(half_t1sq_t2(), m(&[&[1, 0], &[0, 1]]), m(&[&[1, 0], &[0, 0]]), vec![int(0); 2], int(0))
            .unwrap();
        let r = check_metric_normalization(&s);
        assert!(!r.pass);
        assert_eq!(r.witness.unwrap().indices, vec![1, 1]);
    }

    #[test]
    fn unit_column() {
        let s = spec2(n2_potential(), rat(1, 3));
        let c = structure_constants(&s).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                let want = if j == k { MultiPoly::one(2) } else { MultiPoly::zero(2) };
                assert_eq!(c.c_mixed()[0][j][k], want);
            }
        }
        // d2 * d2 = 24 t2 d1
        assert_eq!(c.c_mixed()[1][1][0], t(2, 1).scale(&int(24)));
    }

    #[test]
    fn quasi_homogeneity_examples() {
        let q = check_quasi_homogeneity(&spec2(n2_potential(), rat(1, 3)));
        assert!(q.pass && q.residual.is_zero());
        let q = check_quasi_homogeneity(&spec2(n2_potential(), int(0)));
        assert!(!q.pass);
        assert_eq!(q.residual.total_degree(), Some(4));
        let q = check_quasi_homogeneity(&spec2(MultiPoly::zero(2), int(3)));
        assert!(q.pass && q.residual.is_zero());
    }

    #[test]
    fn quadratic_residual_coefficients() {
        let f = &half_t1sq_t2() + &t(2, 1).pow(2);
        let s = spec2(f, rat(1, 3));
        let q = check_quasi_homogeneity(&s);
        // 2/3 t2 * 2 t2 - 8/3 t2^2 = -4/3 t2^2 -> A_22 = -8/3
        assert!(q.pass);
        assert_eq!(q.a[1][1], rat(-8, 3));
        assert_eq!(q.a[0][1], int(0));
    }

    #[test]
    fn euler_conditions_n2() {
        let s = spec2(n2_potential(), rat(1, 3));
        let c = structure_constants(&s).unwrap();
        let r = check_euler_conditions(&s, &c);
        assert!(r.pass, "{r}");
    }

    #[test]
    fn euler_equal_to_t1_d1_fails_product_condition() {
        let a = m(&[&[1, 0], &[0, 0]]);
        let s = FrobeniusSpec::new(n2_potential(), m(&[&[0, 1], &[1, 0]]), a, vec![int(0); 2], rat(1, 3)).unwrap();
        let c = structure_constants(&s).unwrap();
        let reports = euler_condition_reports(&s, &c);
        assert!(reports[0].pass);
        let w = reports[1].witness.clone().unwrap();
        assert_eq!(w.indices, vec![2, 2]);
        assert_eq!(w.residual, "[-48*t2, 0]");
    }

    #[test]
    fn metric_condition_antidiagonal() {
        // w_i + w_{n+1-i} = 2 - d
        let eta = m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        let f = MultiPoly::zero(3);
        let diag = |w: [Rational; 3]| (0..3).map(|i| (0..3).map(|j| if i == j { w[i].clone() } else { int(0) }).collect()).collect();
        let good = FrobeniusSpec::new(f.clone(), eta.clone(), diag([int(1), rat(3, 4), rat(1, 2)]), vec![int(0); 3], rat(1, 2)).unwrap();
        let c = structure_constants(&good).unwrap();
        assert!(euler_condition_reports(&good, &c)[2].pass);
        let bad = FrobeniusSpec::new(f, eta, diag([int(1), rat(1, 2), rat(1, 2)]), vec![int(0); 3], rat(1, 2)).unwrap();
        let c = structure_constants(&bad).unwrap();
        assert!(!euler_condition_reports(&bad, &c)[2].pass);
    }

    #[test]
    fn spec_validation() {
        let err = FrobeniusSpec::new(half_t1sq_t2(), m(&[&[0, 1], &[2, 0]]), m(&[&[1, 0], &[0, 1]]), vec![int(0); 2], int(0));
        assert_eq!(err.unwrap_err(), Error::MetricNotSymmetric { row: 0, col: 1 });
        let err = FrobeniusSpec::new(half_t1sq_t2(), m(&[&[1, 1], &[1, 1]]), m(&[&[1, 0], &[0, 1]]), vec![int(0); 2], int(0));
        assert_eq!(err.unwrap_err(), Error::SingularMetric);
    }

    #[test]
    fn cubic_form() {
        let s = spec2(n2_potential(), rat(1, 3));
        let c = structure_constants(&s).unwrap();
        let e = VectorField::basis(2, 0);
        for i in 0..2 {
            for j in 0..2 {
                let v = c_cubic(&c, &e, &VectorField::basis(2, i), &VectorField::basis(2, j)).unwrap();
                assert_eq!(v, MultiPoly::constant(2, s.metric()[i][j].clone()));
            }
        }
        let x = VectorField::new(vec![t(2, 1), t(2, 0)]);
        assert!(c_cubic(&c, &x, &VectorField::zero(2), &e).unwrap().is_zero());
    }
}
