use super::{basis_section, components_to_string, lie_bracket, StructureConstants, VectorField};
use crate::check::{CheckReport, Witness};
use crate::error::{Error, Result};
use crate::poly::DiffRing;

/// `P_a(b, c) = [a, b*c] - [a, b]*c - b*[a, c]` for an arbitrary bracket on
/// sections.
pub fn product_defect<T, B>(product: &StructureConstants<T>, bracket: &B, a: &[T], b: &[T], c: &[T]) -> Vec<T>
where
    T: DiffRing,
    B: Fn(&[T], &[T]) -> Vec<T>,
{
    let bc = product.multiply(b, c);
    let t1 = bracket(a, &bc);
    let t2 = product.multiply(&bracket(a, b), c);
    let t3 = product.multiply(b, &bracket(a, c));
    t1.iter().zip(&t2).zip(&t3).map(|((x, y), z)| x.minus(y).minus(z)).collect()
}

/// Hertling–Manin defect `P_X(Y, Z)` for the coordinate Lie bracket.
pub fn hm_defect<T: DiffRing>(
    product: &StructureConstants<T>,
    x: &VectorField<T>,
    y: &VectorField<T>,
    z: &VectorField<T>,
) -> Result<VectorField<T>> {
    let r = product.rank();
    for f in [x, y, z] {
        if f.dim() != r {
            return Err(Error::DimensionMismatch { expected: r, found: f.dim() });
        }
    }
    let br = |a: &[T], b: &[T]| {
        lie_bracket(&VectorField::new(a.to_vec()), &VectorField::new(b.to_vec()))
            .expect("equal dimensions")
            .into_components()
    };
    Ok(VectorField::new(product_defect(product, &br, x.components(), y.components(), z.components())))
}

/// `P_{a*b}(c, d) - a*P_b(c, d) - b*P_a(c, d)`.
pub fn hm_identity_residual<T, B>(product: &StructureConstants<T>, bracket: &B, s: [&[T]; 4]) -> Vec<T>
where
    T: DiffRing,
    B: Fn(&[T], &[T]) -> Vec<T>,
{
    let [a, b, c, d] = s;
    let lhs = product_defect(product, bracket, &product.multiply(a, b), c, d);
    let r1 = product.multiply(a, &product_defect(product, bracket, b, c, d));
    let r2 = product.multiply(b, &product_defect(product, bracket, a, c, d));
    lhs.iter().zip(&r1).zip(&r2).map(|((l, x), y)| l.minus(x).minus(y)).collect()
}

/// First 4-tuple of `sections` violating
/// `P_{a*b}(c, d) = a*P_b(c, d) + b*P_a(c, d)`, with one-based indices into
/// `sections`.
///
/// Tuples are visited in lexicographic order. When the product is commutative
/// the identity is symmetric in `(a, b)` and in `(c, d)`, so only ordered
/// pairs are visited; the first failure is the same.
pub fn defect_identity_witness<T, B>(
    product: &StructureConstants<T>,
    bracket: &B,
    sections: &[Vec<T>],
    condition: &str,
) -> Option<Witness>
where
    T: DiffRing,
    B: Fn(&[T], &[T]) -> Vec<T>,
{
    let m = sections.len();
    let commutative = product.asymmetry().is_none();
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|(i, j)| !commutative || i <= j)
        .collect();
    let products: Vec<Vec<Vec<T>>> = (0..m)
        .map(|i| (0..m).map(|j| product.multiply(&sections[i], &sections[j])).collect())
        .collect();
    let mut single: Vec<Option<Vec<Vec<T>>>> = vec![None; pairs.len()];
    for &(x, y) in &pairs {
        for (p, &(z, w)) in pairs.iter().enumerate() {
            let (sz, sw) = (&sections[z], &sections[w]);
            let cached = single[p]
                .get_or_insert_with(|| sections.iter().map(|a| product_defect(product, bracket, a, sz, sw)).collect());
            let lhs = product_defect(product, bracket, &products[x][y], sz, sw);
            let r1 = product.multiply(&sections[x], &cached[y]);
            let r2 = product.multiply(&sections[y], &cached[x]);
            let diff: Vec<T> = lhs.iter().zip(&r1).zip(&r2).map(|((l, a), b)| l.minus(a).minus(b)).collect();
            if diff.iter().any(|d| !d.is_zero()) {
                return Some(Witness::new(condition, vec![x + 1, y + 1, z + 1, w + 1], components_to_string(&diff)));
            }
        }
    }
    None
}

/// Checks the Hertling–Manin identity for a product on vector fields over the
/// coordinate basis followed by `test_fields`.
pub fn check_hertling_manin<T: DiffRing>(
    product: &StructureConstants<T>,
    test_fields: &[VectorField<T>],
) -> CheckReport {
    let name = "hertling_manin";
    let n = product.rank();
    let nvars = product.get(0, 0, 0).nvars();
    let mut sections: Vec<Vec<T>> = (0..n).map(|i| basis_section(n, nvars, i)).collect();
    sections.extend(test_fields.iter().map(|f| f.components().to_vec()));
    let br = |a: &[T], b: &[T]| {
        lie_bracket(&VectorField::new(a.to_vec()), &VectorField::new(b.to_vec()))
            .expect("equal dimensions")
            .into_components()
    };
    CheckReport::from_witness(name, defect_identity_witness(product, &br, &sections, name))
}
