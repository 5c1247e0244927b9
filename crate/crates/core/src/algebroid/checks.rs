use super::{
    apply_to_function, basis_section, components_to_string, defect_identity_witness, koszul_bracket, lie_bracket,
    Anchor, OneForm, PoissonBivector, StructureConstants, VectorField,
};
use crate::check::{CheckReport, Witness};
use crate::error::{Error, Result};
use crate::frobenius::{FrobeniusSpec, StructureTensor};
use crate::linalg::{ring_adjugate, ring_determinant};
use crate::poly::MultiPoly;

/// Bracket on sections of an algebroid.
pub type SectionBracket<'a> = Box<dyn Fn(&[MultiPoly], &[MultiPoly]) -> Vec<MultiPoly> + 'a>;

/// How the Lie bracket on sections is obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum BracketRule {
    /// Sections are vector fields (`r = n`), coordinate Lie bracket.
    CoordinateLie,
    /// `rho^{-1}([rho a, rho b])`; the anchor must have a nonzero constant
    /// determinant.
    AnchorPullback,
    /// Koszul bracket of one-forms.
    PoissonKoszul(PoissonBivector),
}

/// An F-algebroid given by polynomial data.
#[derive(Clone, Debug, PartialEq)]
pub struct FAlgebroidSpec {
    pub n: usize,
    pub r: usize,
    /// `e_i <> e_j = sum_k product[i][j][k] e_k`.
    pub product: StructureConstants,
    pub unit: Vec<MultiPoly>,
    pub anchor: Anchor,
    pub bracket_rule: BracketRule,
}

impl FAlgebroidSpec {
    /// The section bracket selected by `bracket_rule`.
    pub fn bracket(&self) -> Result<SectionBracket<'_>> {
        resolve_bracket(self.n, self.r, &self.anchor, &self.bracket_rule)
    }
}

fn resolve_bracket<'a>(n: usize, r: usize, anchor: &'a Anchor, rule: &'a BracketRule) -> Result<SectionBracket<'a>> {
    if anchor.base_dim() != n || anchor.rank() != r {
        return Err(Error::UnresolvableBracket(format!(
            "anchor is {}x{}, expected {n}x{r}",
            anchor.base_dim(),
            anchor.rank()
        )));
    }
    match rule {
        BracketRule::CoordinateLie => {
            if r != n {
                return Err(Error::UnresolvableBracket(format!("coordinate bracket needs rank {n}, found {r}")));
            }
            Ok(Box::new(|a, b| {
                lie_bracket(&VectorField::new(a.to_vec()), &VectorField::new(b.to_vec()))
                    .expect("equal dimensions")
                    .into_components()
            }))
        }
        BracketRule::AnchorPullback => {
            let inv = polynomial_inverse(anchor)?;
            Ok(Box::new(move |a, b| pullback_with(anchor, &inv, a, b)))
        }
        BracketRule::PoissonKoszul(pi) => {
            if pi.dim() != n || r != n {
                return Err(Error::UnresolvableBracket(format!("bivector of dimension {} on rank {r}", pi.dim())));
            }
            Ok(Box::new(move |a, b| {
                koszul_bracket(pi, &OneForm::new(a.to_vec()), &OneForm::new(b.to_vec()))
                    .expect("equal dimensions")
                    .into_components()
            }))
        }
    }
}

/// Inverse of a square polynomial matrix whose determinant is a nonzero
/// constant.
fn polynomial_inverse(anchor: &Anchor) -> Result<Vec<Vec<MultiPoly>>> {
    let n = anchor.base_dim();
    if anchor.rank() != n {
        return Err(Error::UnresolvableBracket(format!("anchor is {}x{} and not square", n, anchor.rank())));
    }
    let m = anchor.matrix();
    let det = ring_determinant(m, n);
    if det.is_zero() || !det.is_constant() {
        return Err(Error::UnresolvableBracket(format!("anchor determinant {det} is not a nonzero constant")));
    }
    let inv_det = det.constant_term().recip();
    Ok(ring_adjugate(m, n).into_iter().map(|row| row.into_iter().map(|p| p.scale(&inv_det)).collect()).collect())
}

fn pullback_with(anchor: &Anchor, inv: &[Vec<MultiPoly>], a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let br = lie_bracket(&anchor.apply(a), &anchor.apply(b)).expect("equal dimensions");
    Anchor::new(inv.to_vec()).expect("square").apply(br.components()).into_components()
}

/// `rho^{-1}([rho a, rho b])` with the coordinate Lie bracket.
pub fn pullback_bracket(anchor: &Anchor, a: &OneForm, b: &OneForm) -> Result<OneForm> {
    let inv = polynomial_inverse(anchor)?;
    if a.dim() != anchor.rank() || b.dim() != anchor.rank() {
        return Err(Error::DimensionMismatch { expected: anchor.rank(), found: a.dim().max(b.dim()) });
    }
    Ok(OneForm::new(pullback_with(anchor, &inv, a.components(), b.components())))
}

/// `{1, t^i, t^i t^j}`.
pub fn default_test_functions(n: usize) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::one(n)];
    out.extend((0..n).map(|i| MultiPoly::var(n, i)));
    for i in 0..n {
        for j in i..n {
            out.push(&MultiPoly::var(n, i) * &MultiPoly::var(n, j));
        }
    }
    out
}

/// Tangent F-algebroid of a Frobenius structure: the product on vector
/// fields, unit `d/dt1`, identity anchor, coordinate bracket.
pub fn tangent_f_algebroid(spec: &FrobeniusSpec, tensor: &StructureTensor) -> FAlgebroidSpec {
    let n = spec.n();
    FAlgebroidSpec {
        n,
        r: n,
        product: tensor.product(),
        unit: basis_section(n, n, 0),
        anchor: Anchor::identity(n),
        bracket_rule: BracketRule::CoordinateLie,
    }
}

fn diff(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn nonzero(v: &[MultiPoly]) -> bool {
    v.iter().any(|p| !p.is_zero())
}

fn sections_with_basis(r: usize, n: usize, extra: &[Vec<MultiPoly>]) -> Vec<Vec<MultiPoly>> {
    let mut s: Vec<Vec<MultiPoly>> = (0..r).map(|i| basis_section(r, n, i)).collect();
    s.extend(extra.iter().cloned());
    s
}

fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i + 1).collect()
}

fn antisymmetry_report(name: &str, bracket: &SectionBracket<'_>, sections: &[Vec<MultiPoly>]) -> CheckReport {
    for (i, a) in sections.iter().enumerate() {
        for (j, b) in sections.iter().enumerate().skip(i) {
            let s: Vec<MultiPoly> = bracket(a, b).iter().zip(bracket(b, a)).map(|(x, y)| x + &y).collect();
            if nonzero(&s) {
                return CheckReport::failed(name, Witness::new("antisymmetry", one_based(&[i, j]), components_to_string(&s)));
            }
        }
    }
    CheckReport::passed(name)
}

fn jacobi_report(name: &str, bracket: &SectionBracket<'_>, sections: &[Vec<MultiPoly>]) -> CheckReport {
    let m = sections.len();
    for i in 0..m {
        for j in i + 1..m {
            let bij = bracket(&sections[i], &sections[j]);
            for k in j + 1..m {
                let (a, b, c) = (&sections[i], &sections[j], &sections[k]);
                let t1 = bracket(a, &bracket(b, c));
                let t2 = bracket(b, &bracket(c, a));
                let t3 = bracket(c, &bij);
                let s: Vec<MultiPoly> = t1.iter().zip(&t2).zip(&t3).map(|((x, y), z)| &(x + y) + z).collect();
                if nonzero(&s) {
                    return CheckReport::failed(name, Witness::new("jacobi", one_based(&[i, j, k]), components_to_string(&s)));
                }
            }
        }
    }
    CheckReport::passed(name)
}

fn leibniz_report(
    name: &str,
    bracket: &SectionBracket<'_>,
    anchor: &Anchor,
    sections: &[Vec<MultiPoly>],
    functions: &[MultiPoly],
) -> CheckReport {
    for (i, a) in sections.iter().enumerate() {
        let ra = anchor.apply(a);
        for (j, b) in sections.iter().enumerate() {
            let ab = bracket(a, b);
            for (k, f) in functions.iter().enumerate() {
                let fb: Vec<MultiPoly> = b.iter().map(|x| x * f).collect();
                let lhs = bracket(a, &fb);
                let raf = apply_to_function(&ra, f);
                let rhs: Vec<MultiPoly> = b.iter().zip(&ab).map(|(bx, abx)| &(&raf * bx) + &(f * abx)).collect();
                let d = diff(&lhs, &rhs);
                if nonzero(&d) {
                    return CheckReport::failed(name, Witness::new("leibniz", one_based(&[i, j, k]), components_to_string(&d)));
                }
            }
        }
    }
    CheckReport::passed(name)
}

fn anchor_homomorphism_report(
    name: &str,
    bracket: &SectionBracket<'_>,
    anchor: &Anchor,
    sections: &[Vec<MultiPoly>],
) -> CheckReport {
    for (i, a) in sections.iter().enumerate() {
        for (j, b) in sections.iter().enumerate().skip(i + 1) {
            let lhs = anchor.apply(&bracket(a, b));
            let rhs = lie_bracket(&anchor.apply(a), &anchor.apply(b)).expect("equal dimensions");
            let d = lhs.minus(&rhs);
            if !d.is_zero() {
                return CheckReport::failed(name, Witness::new("anchor_homomorphism", one_based(&[i, j]), d));
            }
        }
    }
    CheckReport::passed(name)
}

/// Per-axiom reports for an F-algebroid, in the order: antisymmetry, jacobi,
/// commutativity, associativity, unit, (a) defect identity, (b) anchor
/// multiplicativity, (c) Leibniz, (d) anchor bracket homomorphism.
///
/// `base_product` is the product on vector fields of the base.
pub fn f_algebroid_reports(
    spec: &FAlgebroidSpec,
    base_product: &StructureConstants,
    test_sections: &[Vec<MultiPoly>],
    test_functions: &[MultiPoly],
) -> Result<Vec<CheckReport>> {
    let (n, r) = (spec.n, spec.r);
    if spec.product.rank() != r || spec.unit.len() != r {
        return Err(Error::DimensionMismatch { expected: r, found: spec.product.rank() });
    }
    if base_product.rank() != n {
        return Err(Error::DimensionMismatch { expected: n, found: base_product.rank() });
    }
    let bracket = spec.bracket()?;
    let sections = sections_with_basis(r, n, test_sections);
    let basis: Vec<Vec<MultiPoly>> = (0..r).map(|i| basis_section(r, n, i)).collect();
    let prod = &spec.product;
    let mut out = vec![
        antisymmetry_report("antisymmetry", &bracket, &sections),
        jacobi_report("jacobi", &bracket, &sections),
    ];

    out.push(CheckReport::from_witness(
        "commutativity",
        prod.asymmetry().map(|(i, j, k)| {
            Witness::new("commutativity", one_based(&[i, j, k]), prod.get(i, j, k) - prod.get(j, i, k))
        }),
    ));

    let mut assoc = None;
    'assoc: for i in 0..r {
        for j in 0..r {
            let ij = prod.multiply(&basis[i], &basis[j]);
            for k in 0..r {
                let lhs = prod.multiply(&ij, &basis[k]);
                let rhs = prod.multiply(&basis[i], &prod.multiply(&basis[j], &basis[k]));
                let d = diff(&lhs, &rhs);
                if nonzero(&d) {
                    assoc = Some(Witness::new("associativity", one_based(&[i, j, k]), components_to_string(&d)));
                    break 'assoc;
                }
            }
        }
    }
    out.push(CheckReport::from_witness("associativity", assoc));

    let unit = (0..r).find_map(|i| {
        let d = diff(&prod.multiply(&spec.unit, &basis[i]), &basis[i]);
        nonzero(&d).then(|| Witness::new("unit", vec![i + 1], components_to_string(&d)))
    });
    out.push(CheckReport::from_witness("unit", unit));

    out.push(CheckReport::from_witness(
        "(a) defect identity",
        defect_identity_witness(prod, &bracket, &sections, "(a)"),
    ));

    let mut mult = None;
    'mult: for i in 0..r {
        for j in i..r {
            let lhs = spec.anchor.apply(&prod.multiply(&basis[i], &basis[j]));
            let rhs = base_product.multiply_fields(&spec.anchor.apply(&basis[i]), &spec.anchor.apply(&basis[j]));
            let d = lhs.minus(&rhs);
            if !d.is_zero() {
                mult = Some(Witness::new("(b)", one_based(&[i, j]), d));
                break 'mult;
            }
        }
    }
    out.push(CheckReport::from_witness("(b) anchor multiplicative", mult));

    out.push(leibniz_report("(c) leibniz", &bracket, &spec.anchor, &sections, test_functions));
    out.push(anchor_homomorphism_report("(d) anchor homomorphism", &bracket, &spec.anchor, &sections));
    Ok(out)
}

/// All F-algebroid axioms; the witness is that of the first failing axiom.
pub fn check_f_algebroid(
    spec: &FAlgebroidSpec,
    base_product: &StructureConstants,
    test_sections: &[Vec<MultiPoly>],
    test_functions: &[MultiPoly],
) -> Result<CheckReport> {
    let parts = f_algebroid_reports(spec, base_product, test_sections, test_functions)?;
    Ok(CheckReport::combine("f_algebroid", &parts))
}

/// Per-axiom reports for a Lie algebroid: antisymmetry, jacobi, leibniz,
/// anchor homomorphism.
pub fn lie_algebroid_reports(
    r: usize,
    bracket: &SectionBracket<'_>,
    anchor: &Anchor,
    test_sections: &[Vec<MultiPoly>],
    test_functions: &[MultiPoly],
) -> Result<Vec<CheckReport>> {
    if anchor.rank() != r {
        return Err(Error::DimensionMismatch { expected: r, found: anchor.rank() });
    }
    let n = anchor.base_dim();
    let sections = sections_with_basis(r, n, test_sections);
    Ok(vec![
        antisymmetry_report("antisymmetry", bracket, &sections),
        jacobi_report("jacobi", bracket, &sections),
        leibniz_report("leibniz", bracket, anchor, &sections, test_functions),
        anchor_homomorphism_report("anchor_homomorphism", bracket, anchor, &sections),
    ])
}

pub fn check_lie_algebroid(
    r: usize,
    bracket: &SectionBracket<'_>,
    anchor: &Anchor,
    test_sections: &[Vec<MultiPoly>],
    test_functions: &[MultiPoly],
) -> Result<CheckReport> {
    let parts = lie_algebroid_reports(r, bracket, anchor, test_sections, test_functions)?;
    Ok(CheckReport::combine("lie_algebroid", &parts))
}

/// Cotangent Lie algebroid of a bivector: Koszul bracket with anchor `Pi#`.
pub fn poisson_bracket_evaluator(pi: &PoissonBivector) -> SectionBracket<'_> {
    Box::new(move |a, b| {
        koszul_bracket(pi, &OneForm::new(a.to_vec()), &OneForm::new(b.to_vec()))
            .expect("equal dimensions")
            .into_components()
    })
}

/// Tangent Lie algebroid bracket.
pub fn coordinate_bracket_evaluator<'a>() -> SectionBracket<'a> {
    Box::new(|a, b| {
        lie_bracket(&VectorField::new(a.to_vec()), &VectorField::new(b.to_vec()))
            .expect("equal dimensions")
            .into_components()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn t(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn rank_one_function_algebra() {
        let product = StructureConstants::new(vec![vec![vec![MultiPoly::one(1)]]]).unwrap();
        let spec = FAlgebroidSpec {
            n: 1,
            r: 1,
            product: product.clone(),
            unit: vec![MultiPoly::one(1)],
            anchor: Anchor::identity(1),
            bracket_rule: BracketRule::CoordinateLie,
        };
        let sec = vec![vec![&t(1, 0) * &t(1, 0)]];
        let r = check_f_algebroid(&spec, &product, &sec, &default_test_functions(1)).unwrap();
        assert!(r.pass, "{r}");
    }

    #[test]
    fn pullback_identity_is_lie_bracket() {
        let a = OneForm::new(vec![t(2, 1), MultiPoly::zero(2)]);
        let b = OneForm::new(vec![MultiPoly::zero(2), &t(2, 0) * &t(2, 0)]);
        let p = pullback_bracket(&Anchor::identity(2), &a, &b).unwrap();
        let l = lie_bracket(&VectorField::new(a.components().to_vec()), &VectorField::new(b.components().to_vec()))
            .unwrap();
        assert_eq!(p.components(), l.components());
    }

    #[test]
    fn pullback_rejects_singular_anchor() {
        let m = vec![vec![MultiPoly::one(2), MultiPoly::one(2)], vec![MultiPoly::one(2), MultiPoly::one(2)]];
        let a = OneForm::<MultiPoly>::basis(2, 0);
        assert!(pullback_bracket(&Anchor::new(m).unwrap(), &a, &a).is_err());
    }

    #[test]
    fn pullback_satisfies_anchor_homomorphism() {
        let m = vec![
            vec![MultiPoly::constant(2, int(2)), MultiPoly::one(2)],
            vec![MultiPoly::one(2), MultiPoly::one(2)],
        ];
        let anchor = Anchor::new(m).unwrap();
        let a = OneForm::new(vec![t(2, 1), &t(2, 0) * &t(2, 1)]);
        let b = OneForm::new(vec![t(2, 0).pow(2), MultiPoly::one(2)]);
        let br = pullback_bracket(&anchor, &a, &b).unwrap();
        let lhs = anchor.apply(br.components());
        let rhs = lie_bracket(&anchor.apply(a.components()), &anchor.apply(b.components())).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tangent_lie_algebroid_passes() {
        let br = coordinate_bracket_evaluator();
        let sec = vec![vec![&t(2, 0) * &t(2, 1), t(2, 1).pow(2)]];
        let r = check_lie_algebroid(2, &br, &Anchor::identity(2), &sec, &default_test_functions(2)).unwrap();
        assert!(r.pass, "{r}");
    }

    #[test]
    fn default_functions_count() {
        assert_eq!(default_test_functions(3).len(), 1 + 3 + 6);
    }
}
