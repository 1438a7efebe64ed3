//! The Goldman pairing evaluated on the relator 2-cell.

use nalgebra::{DMatrix, DVector, Matrix2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cohomology::{
    ad, coboundary_space, cocycle_space, h1_complement, sl2_matrix, TangentCocycle, KERNEL_BAND,
};
use super::rep::{inverse, M2};
use super::{sample_representation, CharVarError, Representation, C64};

/// Chain-level evaluation rule: how letters are transported to the base point
/// and which ordered pairs of relator letters contribute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `Ad(prefix)`, pairs `j < k`.
    PrefixLt,
    /// `Ad(prefix)`, pairs `j ≤ k`.
    PrefixLe,
    /// `Ad(suffix)⁻¹`, pairs `j < k`.
    SuffixLt,
    /// `Ad(suffix)⁻¹`, pairs `j ≤ k`.
    SuffixLe,
    /// `Ad(prefix)`, pairs `j < k` and the diagonal at inverse letters.
    Fox,
}

impl Convention {
    pub const ALL: [Convention; 5] = [
        Convention::PrefixLt,
        Convention::PrefixLe,
        Convention::SuffixLt,
        Convention::SuffixLe,
        Convention::Fox,
    ];

    fn includes(self, j: usize, k: usize, k_inverse: bool) -> bool {
        match self {
            Convention::PrefixLt | Convention::SuffixLt => j < k,
            Convention::PrefixLe | Convention::SuffixLe => j <= k,
            Convention::Fox => j < k || (j == k && k_inverse),
        }
    }
}

/// Transported letter values for every position of the relator.
fn transported(u: &TangentCocycle, rep: &Representation, conv: Convention) -> Vec<M2> {
    let r = rep.presentation().relator();
    let mut prefixes = Vec::with_capacity(r.len());
    let mut p = M2::identity();
    for &l in r {
        prefixes.push(p);
        p *= rep.letter(l);
    }
    let mut suffixes = vec![M2::identity(); r.len()];
    let mut s = M2::identity();
    for j in (0..r.len()).rev() {
        suffixes[j] = s;
        s = rep.letter(r[j]) * s;
    }
    r.iter()
        .enumerate()
        .map(|(j, &l)| {
            let value = u.on_letter(l, rep);
            let transport = match conv {
                Convention::SuffixLt | Convention::SuffixLe => ad(&inverse(&suffixes[j])),
                _ => ad(&prefixes[j]),
            };
            sl2_matrix(&(transport * value))
        })
        .collect()
}

/// The pairing together with `Σ|terms|`, the scale for relative tolerances.
fn pairing_with_scale(
    u: &TangentCocycle,
    v: &TangentCocycle,
    rep: &Representation,
    conv: Convention,
) -> (C64, f64) {
    let xs = transported(u, rep, conv);
    let ys = transported(v, rep, conv);
    let r = rep.presentation().relator();
    let mut total = C64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (j, x) in xs.iter().enumerate() {
        for (k, y) in ys.iter().enumerate() {
            if conv.includes(j, k, r[k].inverse) {
                let t = (x * y).trace();
                total += t;
                scale += t.norm();
            }
        }
    }
    (total, scale)
}

/// `Σ tr(X_j·Y_k)` over the pairs selected by `conv`. Both arguments must be cocycles.
pub fn goldman_pairing(
    u: &TangentCocycle,
    v: &TangentCocycle,
    rep: &Representation,
    conv: Convention,
) -> Result<C64, CharVarError> {
    u.check(rep, 1e-8)?;
    v.check(rep, 1e-8)?;
    Ok(pairing_with_scale(u, v, rep, conv).0)
}

fn columns(m: &DMatrix<C64>) -> Vec<TangentCocycle> {
    m.column_iter()
        .map(|c| TangentCocycle::from_vector(&c.into_owned()))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GateResult {
    pub convention: Convention,
    /// Largest `|pairing| / scale` with a coboundary in either slot.
    pub worst_relative: f64,
    pub passed: bool,
}

/// Worst relative coboundary pairing for every convention, and the first that passes.
pub fn convention_gate(
    rep: &Representation,
    tol: f64,
) -> Result<(Vec<GateResult>, Convention), CharVarError> {
    let z = columns(&cocycle_space(rep)?);
    let b = columns(&coboundary_space(rep)?);
    let mut results = Vec::new();
    let mut chosen = None;
    for conv in Convention::ALL {
        let mut worst: f64 = 0.0;
        for zi in &z {
            for bj in &b {
                for (p, s) in [
                    pairing_with_scale(zi, bj, rep, conv),
                    pairing_with_scale(bj, zi, rep, conv),
                ] {
                    if s > 0.0 {
                        worst = worst.max(p.norm() / s);
                    }
                }
            }
        }
        let passed = worst <= tol;
        if passed && chosen.is_none() {
            chosen = Some(conv);
        }
        results.push(GateResult {
            convention: conv,
            worst_relative: worst,
            passed,
        });
    }
    match chosen {
        Some(c) => Ok((results, c)),
        None => Err(CharVarError::NoConvention(
            results
                .iter()
                .map(|r| r.worst_relative)
                .fold(f64::INFINITY, f64::min),
        )),
    }
}

/// The pairing on an orthonormal basis of the complement of `B¹` in `Z¹`.
#[derive(Clone, Debug)]
pub struct GoldmanMatrix {
    pub basis: Vec<TangentCocycle>,
    pub matrix: DMatrix<C64>,
    /// `Σ|terms|` for every entry.
    pub scales: DMatrix<f64>,
}

impl GoldmanMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Largest `|M_ij + M_ji|` relative to the term scale of the two entries.
    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..=i {
                let scale = self.scales[(i, j)] + self.scales[(j, i)];
                if scale > 0.0 {
                    worst = worst.max((self.matrix[(i, j)] + self.matrix[(j, i)]).norm() / scale);
                }
            }
        }
        worst
    }

    pub fn antisymmetrized(&self) -> DMatrix<C64> {
        (&self.matrix - self.matrix.transpose()) * C64::new(0.5, 0.0)
    }

    pub fn determinant(&self) -> C64 {
        self.matrix.determinant()
    }

    /// `|det M| / ‖M‖ⁿ`.
    pub fn det_margin(&self) -> f64 {
        self.determinant().norm() / self.matrix.norm().powi(self.dim() as i32)
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.matrix.singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }
}

pub fn goldman_matrix(
    rep: &Representation,
    conv: Convention,
) -> Result<GoldmanMatrix, CharVarError> {
    let z = cocycle_space(rep)?;
    let b = coboundary_space(rep)?;
    let basis = columns(&h1_complement(&z, &b)?);
    let n = basis.len();
    let entries = DMatrix::from_fn(n, n, |i, j| {
        pairing_with_scale(&basis[i], &basis[j], rep, conv)
    });
    Ok(GoldmanMatrix {
        basis,
        matrix: entries.map(|e| e.0),
        scales: entries.map(|e| e.1),
    })
}

/// Everything checked for one seeded representation.
#[derive(Clone, Debug, Serialize)]
pub struct GoldmanSuite {
    pub genus: usize,
    pub seed: u64,
    pub relator_defect: f64,
    pub min_line_escape: f64,
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
    pub gate: Vec<GateResult>,
    pub convention: Convention,
    pub antisymmetry_defect: f64,
    /// `|det M| / ‖M‖ⁿ` with the Frobenius norm.
    pub det_margin: f64,
    /// Smallest over largest singular value of `M`.
    pub smallest_singular_value: f64,
    pub conjugation_defect: f64,
    pub bilinearity_defect: f64,
}

impl GoldmanSuite {
    /// The gate passes for the convention in use.
    pub fn gate_passed(&self) -> bool {
        self.gate
            .iter()
            .any(|g| g.convention == self.convention && g.passed)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.h1 == 6 * (self.genus - 1)
            && self.z1 == 6 * self.genus - 3
            && self.b1 == 3
            && self.gate_passed()
            && self.antisymmetry_defect <= tol
            && self.smallest_singular_value > KERNEL_BAND.1
            && self.conjugation_defect <= tol
            && self.bilinearity_defect <= 1e-12
    }
}

fn random_c64<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Samples a representation and runs the gate, dimension, antisymmetry,
/// nondegeneracy, conjugation and bilinearity checks. With `frozen` unset the
/// first convention passing the gate is used.
pub fn goldman_suite(
    genus: usize,
    seed: u64,
    tol: f64,
    frozen: Option<Convention>,
) -> Result<GoldmanSuite, CharVarError> {
    let rep = sample_representation(genus, seed)?;
    let cert = rep.irreducibility_certificate()?;
    let z = cocycle_space(&rep)?;
    let b = coboundary_space(&rep)?;
    let (gate, chosen) = convention_gate(&rep, tol)?;
    let convention = frozen.unwrap_or(chosen);
    let gm = goldman_matrix(&rep, convention)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let c = loop {
        let m = Matrix2::new(
            random_c64(&mut rng),
            random_c64(&mut rng),
            random_c64(&mut rng),
            random_c64(&mut rng),
        );
        if m.determinant().norm() > 0.1 {
            break m;
        }
    };
    let conj = rep.conjugate(&c);
    let mut conjugation_defect: f64 = 0.0;
    for (i, u) in gm.basis.iter().enumerate() {
        for (j, v) in gm.basis.iter().enumerate() {
            let (p, s) = pairing_with_scale(&u.conjugate(&c), &v.conjugate(&c), &conj, convention);
            conjugation_defect =
                conjugation_defect.max((p - gm.matrix[(i, j)]).norm() / s.max(f64::MIN_POSITIVE));
        }
    }

    let combo = |rng: &mut ChaCha8Rng| {
        let coeffs = DVector::from_fn(z.ncols(), |_, _| random_c64(rng));
        (TangentCocycle::from_vector(&(&z * &coeffs)), coeffs)
    };
    let mut bilinearity_defect: f64 = 0.0;
    for _ in 0..5 {
        let (u1, _) = combo(&mut rng);
        let (u2, _) = combo(&mut rng);
        let (v, _) = combo(&mut rng);
        let (s, t) = (random_c64(&mut rng), random_c64(&mut rng));
        let mixed = TangentCocycle::from_vector(&(u1.to_vector() * s + u2.to_vector() * t));
        let (lhs, ls) = pairing_with_scale(&mixed, &v, &rep, convention);
        let (p1, s1) = pairing_with_scale(&u1, &v, &rep, convention);
        let (p2, s2) = pairing_with_scale(&u2, &v, &rep, convention);
        let scale = ls + s.norm() * s1 + t.norm() * s2;
        bilinearity_defect =
            bilinearity_defect.max((lhs - p1 * s - p2 * t).norm() / scale.max(f64::MIN_POSITIVE));
    }

    let sv = gm.singular_values();
    Ok(GoldmanSuite {
        genus,
        seed,
        relator_defect: rep.relator_defect(),
        min_line_escape: cert.min_line_escape,
        z1: z.ncols(),
        b1: b.ncols(),
        h1: gm.dim(),
        gate,
        convention,
        antisymmetry_defect: gm.antisymmetry_defect(),
        det_margin: gm.det_margin(),
        smallest_singular_value: sv.last().copied().unwrap_or(0.0)
            / sv.first().copied().unwrap_or(1.0),
        conjugation_defect,
        bilinearity_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector3;

    fn unit(k: usize) -> Vector3<C64> {
        let mut e = Vector3::zeros();
        e[k] = C64::new(1.0, 0.0);
        e
    }

    #[test]
    fn fox_convention_passes_gate() {
        let rep = sample_representation(2, 7).unwrap();
        let (results, chosen) = convention_gate(&rep, 1e-8).unwrap();
        assert_eq!(chosen, Convention::Fox);
        assert!(results
            .iter()
            .filter(|r| r.convention != Convention::Fox)
            .all(|r| !r.passed));
    }

    #[test]
    fn genus_two_suite() {
        let s = goldman_suite(2, 7, 1e-8, None).unwrap();
        assert!(s.passed(1e-8), "{s:#?}");
    }

    #[test]
    fn rejects_non_cocycles() {
        let rep = sample_representation(2, 5).unwrap();
        let bad =
            TangentCocycle::from_vector(&DVector::from_fn(12, |i, _| C64::new(i as f64, 1.0)));
        let good = TangentCocycle::coboundary(&sl2_matrix(&unit(0)), &rep);
        assert!(matches!(
            goldman_pairing(&bad, &good, &rep, Convention::Fox),
            Err(CharVarError::NotACocycle(_))
        ));
    }
}
