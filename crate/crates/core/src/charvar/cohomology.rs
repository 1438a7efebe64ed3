//! `Z¹`, `B¹` and `H¹` of a surface group with coefficients in `sl₂` twisted by `Ad∘ρ`.

use nalgebra::{Complex, DMatrix, DVector, Matrix3, Vector3};
use serde::Serialize;

use super::rep::{inverse, M2};
use super::{CharVarError, Letter, Representation, C64};

/// Relative singular values below the lower end count as zero, above the
/// upper end as nonzero; anything in between is ambiguous.
pub const KERNEL_BAND: (f64, f64) = (1e-8, 1e-6);

/// Coordinates `(e, f, h)` of `[[h, e], [f, −h]]`.
pub fn sl2_coordinates(m: &M2) -> Vector3<C64> {
    Vector3::new(m[(0, 1)], m[(1, 0)], m[(0, 0)])
}

pub fn sl2_matrix(v: &Vector3<C64>) -> M2 {
    M2::new(v[2], v[0], v[1], -v[2])
}

/// `X ↦ gXg⁻¹` on `sl₂` in the coordinates of [`sl2_coordinates`].
pub fn ad(g: &M2) -> Matrix3<C64> {
    let gi = inverse(g);
    let mut out = Matrix3::zeros();
    for k in 0..3 {
        let mut e = Vector3::zeros();
        e[k] = Complex::new(1.0, 0.0);
        out.set_column(k, &sl2_coordinates(&(g * sl2_matrix(&e) * gi)));
    }
    out
}

/// `∂w/∂x` evaluated through `Ad∘ρ`.
pub fn fox_derivative(
    word: &[Letter],
    x: usize,
    rep: &Representation,
) -> Result<Matrix3<C64>, CharVarError> {
    let n = rep.generators().len();
    if x >= n {
        return Err(CharVarError::BadWord(x as i64 + 1));
    }
    let mut prefix = M2::identity();
    let mut out = Matrix3::zeros();
    for &l in word {
        if l.generator >= n {
            return Err(CharVarError::BadWord(l.signed()));
        }
        if l.generator == x {
            if l.inverse {
                out -= ad(&prefix) * ad(&inverse(&rep.generators()[x]));
            } else {
                out += ad(&prefix);
            }
        }
        prefix *= rep.letter(l);
    }
    Ok(out)
}

/// `(∂r/∂x₁ | … | ∂r/∂x_{2g})`, a `3 × 6g` matrix.
pub fn relator_derivative(rep: &Representation) -> DMatrix<C64> {
    let n = rep.generators().len();
    let r = rep.presentation().relator();
    let mut d = DMatrix::zeros(3, 3 * n);
    for x in 0..n {
        let block = fox_derivative(r, x, rep).expect("relator letters are generators");
        d.view_mut((0, 3 * x), (3, 3)).copy_from(&block);
    }
    d
}

/// A 1-cocycle given by its values on the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentCocycle {
    values: Vec<M2>,
}

impl TangentCocycle {
    pub fn new(values: Vec<M2>) -> Self {
        TangentCocycle { values }
    }

    pub fn from_vector(v: &DVector<C64>) -> Self {
        let values = (0..v.len() / 3)
            .map(|i| sl2_matrix(&Vector3::new(v[3 * i], v[3 * i + 1], v[3 * i + 2])))
            .collect();
        TangentCocycle { values }
    }

    pub fn to_vector(&self) -> DVector<C64> {
        DVector::from_iterator(
            3 * self.values.len(),
            self.values
                .iter()
                .flat_map(|m| sl2_coordinates(m).iter().copied().collect::<Vec<_>>()),
        )
    }

    pub fn values(&self) -> &[M2] {
        &self.values
    }

    /// `u(x)` for a letter, with `u(x⁻¹) = −Ad(ρ(x))⁻¹u(x)`.
    pub fn on_letter(&self, l: Letter, rep: &Representation) -> Vector3<C64> {
        let u = sl2_coordinates(&self.values[l.generator]);
        if l.inverse {
            -(ad(&inverse(&rep.generators()[l.generator])) * u)
        } else {
            u
        }
    }

    /// The coboundary `x ↦ Ad(ρ(x))X − X`.
    pub fn coboundary(x: &M2, rep: &Representation) -> Self {
        let values = rep
            .generators()
            .iter()
            .map(|g| g * x * inverse(g) - x)
            .collect();
        TangentCocycle { values }
    }

    /// Transport to `CρC⁻¹`.
    pub fn conjugate(&self, c: &M2) -> Self {
        let ci = inverse(c);
        TangentCocycle {
            values: self.values.iter().map(|u| c * u * ci).collect(),
        }
    }

    /// `‖Σ ∂r/∂xᵢ·u(xᵢ)‖` relative to `‖D‖·‖u‖`.
    pub fn relator_defect(&self, rep: &Representation) -> f64 {
        let d = relator_derivative(rep);
        let u = self.to_vector();
        let scale = d.norm() * u.norm();
        if scale == 0.0 {
            return 0.0;
        }
        (&d * &u).norm() / scale
    }

    pub fn check(&self, rep: &Representation, tol: f64) -> Result<(), CharVarError> {
        if self.values.len() != rep.generators().len() {
            return Err(CharVarError::Shape(format!(
                "{} values for {} generators",
                self.values.len(),
                rep.generators().len()
            )));
        }
        let defect = self.relator_defect(rep);
        if defect > tol {
            return Err(CharVarError::NotACocycle(defect));
        }
        Ok(())
    }
}

/// Orthonormal bases of the column space and of the kernel of `m`.
fn split(m: &DMatrix<C64>) -> Result<(DMatrix<C64>, DMatrix<C64>), CharVarError> {
    let (rows, cols) = m.shape();
    // A thin SVD of a wide matrix omits the kernel, so pad it with zero rows.
    let mut padded = DMatrix::zeros(rows.max(cols), cols);
    padded.view_mut((0, 0), (rows, cols)).copy_from(m);
    let svd = padded.svd(true, true);
    let u = svd.u.expect("requested");
    let v_t = svd.v_t.expect("requested");
    let smax = svd.singular_values.max();
    let mut image = Vec::new();
    let mut kernel = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        let rel = if smax == 0.0 { 0.0 } else { s / smax };
        if rel >= KERNEL_BAND.0 && rel <= KERNEL_BAND.1 {
            return Err(CharVarError::IllConditioned(rel));
        }
        if rel > KERNEL_BAND.1 {
            image.push(u.column(i).rows(0, rows).into_owned());
        } else {
            kernel.push(v_t.row(i).transpose().map(|z| z.conj()));
        }
    }
    let stack = |vs: Vec<DVector<C64>>, len: usize| {
        if vs.is_empty() {
            DMatrix::zeros(len, 0)
        } else {
            DMatrix::from_columns(&vs)
        }
    };
    Ok((stack(image, rows), stack(kernel, cols)))
}

/// Orthonormal basis of `Z¹` as columns of a `6g × dim` matrix.
pub fn cocycle_space(rep: &Representation) -> Result<DMatrix<C64>, CharVarError> {
    Ok(split(&relator_derivative(rep))?.1)
}

/// `X ↦ (Ad(ρ(xᵢ))X − X)ᵢ` as a `6g × 3` matrix.
fn coboundary_map(rep: &Representation) -> DMatrix<C64> {
    let n = rep.generators().len();
    let mut m = DMatrix::zeros(3 * n, 3);
    for (i, g) in rep.generators().iter().enumerate() {
        let block = ad(g) - Matrix3::identity();
        m.view_mut((3 * i, 0), (3, 3)).copy_from(&block);
    }
    m
}

/// Orthonormal basis of `B¹`.
pub fn coboundary_space(rep: &Representation) -> Result<DMatrix<C64>, CharVarError> {
    Ok(split(&coboundary_map(rep))?.0)
}

/// Orthonormal basis of the orthogonal complement of `B¹` in `Z¹`.
pub fn h1_complement(z: &DMatrix<C64>, b: &DMatrix<C64>) -> Result<DMatrix<C64>, CharVarError> {
    let projected = z - b * (b.adjoint() * z);
    Ok(split(&projected)?.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyDims {
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
}

impl CohomologyDims {
    pub fn of(rep: &Representation) -> Result<Self, CharVarError> {
        let z = cocycle_space(rep)?;
        let b = coboundary_space(rep)?;
        let h = h1_complement(&z, &b)?;
        Ok(CohomologyDims {
            z1: z.ncols(),
            b1: b.ncols(),
            h1: h.ncols(),
        })
    }
}
