//! `SL(2, ℂ)` representations of surface groups.

use nalgebra::{Complex, DMatrix, Matrix2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CharVarError, Letter, Presentation, C64};

pub type M2 = Matrix2<C64>;

/// Tolerance for the relator and for the irreducibility certificate.
pub const RELATOR_TOL: f64 = 1e-10;
pub const INVARIANT_LINE_TOL: f64 = 1e-6;
/// Samples whose solved generators exceed this Frobenius norm are redrawn.
pub const GENERATOR_NORM_BOUND: f64 = 8.0;

/// Images of the generators `a₁, b₁, …, a_g, b_g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    presentation: Presentation,
    generators: Vec<M2>,
}

pub fn inverse(m: &M2) -> M2 {
    let det = m.determinant();
    Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / det
}

fn normalize_det(m: &M2) -> Option<M2> {
    let det = m.determinant();
    if det.norm() < 1e-8 * m.norm_squared() {
        return None;
    }
    Some(m / det.sqrt())
}

impl Representation {
    pub fn new(presentation: Presentation, generators: Vec<M2>) -> Result<Self, CharVarError> {
        if generators.len() != presentation.generator_count() {
            return Err(CharVarError::Shape(format!(
                "{} generator matrices for genus {}",
                generators.len(),
                presentation.genus()
            )));
        }
        Ok(Representation {
            presentation,
            generators,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn genus(&self) -> usize {
        self.presentation.genus()
    }

    pub fn generators(&self) -> &[M2] {
        &self.generators
    }

    pub fn letter(&self, l: Letter) -> M2 {
        let m = self.generators[l.generator];
        if l.inverse {
            inverse(&m)
        } else {
            m
        }
    }

    /// Image of a word.
    pub fn eval(&self, word: &[Letter]) -> M2 {
        word.iter()
            .fold(M2::identity(), |acc, &l| acc * self.letter(l))
    }

    /// `‖ρ(r) − I‖` (Frobenius).
    pub fn relator_defect(&self) -> f64 {
        (self.eval(self.presentation.relator()) - M2::identity()).norm()
    }

    /// `CρC⁻¹`.
    pub fn conjugate(&self, c: &M2) -> Representation {
        let ci = inverse(c);
        Representation {
            presentation: self.presentation.clone(),
            generators: self.generators.iter().map(|g| c * g * ci).collect(),
        }
    }

    /// Certifies that the generators share no invariant line and that
    /// `[a₁, b₁]` is not parabolic. This is a numerical surrogate for Zariski
    /// density of the image.
    pub fn irreducibility_certificate(&self) -> Result<IrreducibilityCertificate, CharVarError> {
        let mut worst: f64 = f64::INFINITY;
        for line in eigenlines(&self.generators[0]) {
            let escape = self
                .generators
                .iter()
                .map(|g| {
                    let w = g * line;
                    (w[0] * line[1] - w[1] * line[0]).norm() / g.norm()
                })
                .fold(0.0, f64::max);
            worst = worst.min(escape);
        }
        let commutator = self.eval(&self.presentation.relator()[..4]);
        let trace_gap = (commutator.trace() - Complex::new(2.0, 0.0)).norm();
        let cert = IrreducibilityCertificate {
            min_line_escape: worst,
            commutator_trace_gap: trace_gap,
        };
        if worst < INVARIANT_LINE_TOL || trace_gap < INVARIANT_LINE_TOL {
            return Err(CharVarError::Reducible(
                cert.min_line_escape.min(cert.commutator_trace_gap),
            ));
        }
        Ok(cert)
    }
}

/// Margins of the irreducibility surrogate.
#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityCertificate {
    /// Over the eigenlines of `ρ(a₁)`, the smallest largest amount by which a
    /// generator moves the line off itself.
    pub min_line_escape: f64,
    /// `|tr ρ([a₁, b₁]) − 2|`.
    pub commutator_trace_gap: f64,
}

/// Unit eigenvectors of a 2×2 matrix (one if it is not diagonalizable).
fn eigenlines(m: &M2) -> Vec<nalgebra::Vector2<C64>> {
    let tr = m.trace();
    let det = m.determinant();
    let disc = (tr * tr - det * 4.0).sqrt();
    let mut out = Vec::new();
    for lambda in [(tr + disc) / 2.0, (tr - disc) / 2.0] {
        let a = m - M2::identity() * lambda;
        // kernel of a: (−a01, a00) or (a11, −a10), whichever is larger
        let v1 = nalgebra::Vector2::new(-a[(0, 1)], a[(0, 0)]);
        let v2 = nalgebra::Vector2::new(a[(1, 1)], -a[(1, 0)]);
        let v = if v1.norm() >= v2.norm() { v1 } else { v2 };
        let v = if v.norm() < 1e-14 {
            nalgebra::Vector2::new(Complex::new(1.0, 0.0), Complex::new(0.0, 0.0))
        } else {
            v / Complex::new(v.norm(), 0.0)
        };
        out.push(v);
    }
    out
}

fn random_matrix<R: Rng>(rng: &mut R) -> M2 {
    let mut c = || Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    Matrix2::new(c(), c(), c(), c())
}

fn random_sl2<R: Rng>(rng: &mut R) -> Option<M2> {
    normalize_det(&random_matrix(rng))
}

/// Draws generators at random with the last one solved for so that the relator holds.
///
/// With `T` the inverse of the product of the first `g − 1` commutators,
/// `[a_g, b_g] = T` means `(T⁻¹a_g)·B = B·a_g`, which forces
/// `tr(T⁻¹a_g) = tr(a_g)`. That condition is linear in `a_g`, so a random
/// `a_g` is first projected onto it; the solutions `B` then form a
/// two-dimensional space, from which a random element is rescaled to
/// determinant one. Draws whose solved generators are badly scaled are
/// rejected so that all entries stay of order one.
pub fn random_representation(genus: usize, seed: u64) -> Result<Representation, CharVarError> {
    let presentation = Presentation::surface(genus)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let resample = || CharVarError::ResampleNeeded(seed);
    let mut gens: Vec<M2> = Vec::with_capacity(2 * genus);
    for _ in 0..2 * (genus - 1) {
        gens.push(random_sl2(&mut rng).ok_or_else(resample)?);
    }
    let partial = Representation::new(Presentation::surface(genus)?, {
        let mut g = gens.clone();
        g.extend([M2::identity(), M2::identity()]);
        g
    })?;
    let t = inverse(&partial.eval(&presentation.relator()[..4 * (genus - 1)]));
    let t_inv = inverse(&t);

    // a ↦ tr(T⁻¹a) − tr(a) is the linear functional ⟨L, a⟩ with L = (T⁻¹)ᵀ − I.
    let l = t_inv.transpose() - M2::identity();
    let a = random_matrix(&mut rng);
    let ln = l.norm_squared();
    if ln < 1e-12 {
        return Err(resample());
    }
    let overlap: C64 = l.iter().zip(a.iter()).map(|(x, y)| x * y).sum();
    let conj_l = l.map(|z| z.conj());
    let a = a - conj_l * (overlap / Complex::new(ln, 0.0));
    let a = normalize_det(&a).ok_or_else(resample)?;

    // Solve (T⁻¹a)B − Ba = 0 for B.
    let p = t_inv * a;
    let mut system = DMatrix::<C64>::zeros(4, 4);
    for k in 0..4 {
        let mut e = M2::zeros();
        e[(k / 2, k % 2)] = Complex::new(1.0, 0.0);
        let image = p * e - e * a;
        for r in 0..4 {
            system[(r, k)] = image[(r / 2, r % 2)];
        }
    }
    let svd = system.svd(false, true);
    let v_t = svd.v_t.ok_or_else(resample)?;
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let smax = svd.singular_values.max();
    let kernel: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&i| svd.singular_values[i] < 1e-9 * smax)
        .collect();
    if kernel.is_empty() {
        return Err(resample());
    }
    let mut b = M2::zeros();
    for &i in &kernel {
        let c = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        for k in 0..4 {
            b[(k / 2, k % 2)] += c * v_t[(i, k)].conj();
        }
    }
    let b = normalize_det(&b).ok_or_else(resample)?;
    if a.norm() > GENERATOR_NORM_BOUND || b.norm() > GENERATOR_NORM_BOUND {
        return Err(resample());
    }
    gens.push(a);
    gens.push(b);
    let rep = Representation::new(presentation, gens)?;
    if rep.relator_defect() > RELATOR_TOL {
        return Err(resample());
    }
    rep.irreducibility_certificate().map_err(|_| resample())?;
    Ok(rep)
}

/// [`random_representation`], retrying with successive seed offsets.
pub fn sample_representation(genus: usize, seed: u64) -> Result<Representation, CharVarError> {
    let mut last = CharVarError::ResampleNeeded(seed);
    for offset in 0..64 {
        match random_representation(genus, seed.wrapping_add(offset << 32)) {
            Ok(r) => return Ok(r),
            Err(e @ CharVarError::ResampleNeeded(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

#[derive(Serialize, Deserialize)]
struct RepresentationRepr {
    genus: usize,
    generators: Vec<[[[f64; 2]; 2]; 2]>,
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let generators = self
            .generators
            .iter()
            .map(|m| {
                let e = |i: usize, j: usize| [m[(i, j)].re, m[(i, j)].im];
                [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
            })
            .collect();
        RepresentationRepr {
            genus: self.genus(),
            generators,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = RepresentationRepr::deserialize(deserializer)?;
        let p = Presentation::surface(r.genus).map_err(serde::de::Error::custom)?;
        let c = |z: [f64; 2]| Complex::new(z[0], z[1]);
        let gens = r
            .generators
            .into_iter()
            .map(|m| Matrix2::new(c(m[0][0]), c(m[0][1]), c(m[1][0]), c(m[1][1])))
            .collect();
        Representation::new(p, gens).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_seed_seven() {
        let rep = sample_representation(2, 7).unwrap();
        assert!(rep.relator_defect() < RELATOR_TOL);
        for g in rep.generators() {
            assert!((g.determinant() - Complex::new(1.0, 0.0)).norm() < 1e-12);
        }
        let c = Matrix2::new(
            Complex::new(1.0, 0.5),
            Complex::new(0.3, 0.0),
            Complex::new(-0.2, 0.1),
            Complex::new(0.9, -0.4),
        );
        assert!(rep.conjugate(&c).relator_defect() < RELATOR_TOL);
    }

    #[test]
    fn upper_triangular_is_reducible() {
        let p = Presentation::surface(2).unwrap();
        let up = |a: f64, b: f64| {
            Matrix2::new(
                Complex::new(a, 0.0),
                Complex::new(b, 0.0),
                Complex::new(0.0, 0.0),
                Complex::new(1.0 / a, 0.0),
            )
        };
        let rep = Representation::new(
            p,
            vec![up(2.0, 1.0), up(0.5, 3.0), up(1.5, -1.0), up(3.0, 0.2)],
        )
        .unwrap();
        assert!(matches!(
            rep.irreducibility_certificate(),
            Err(CharVarError::Reducible(_))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let rep = sample_representation(2, 3).unwrap();
        let s = serde_json::to_string(&rep).unwrap();
        let back: Representation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
    }
}
