//! One pass/fail line per acceptance criterion, each at its stated tolerance
//! and runtime budget.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use projsymp::cech::{compute_h1_basis, descended_form, theorem1_trials, CechModel, Geometry};
use projsymp::charvar::goldman_suite;
use projsymp::cli::{run_suites, ScenarioConfig, Suite};
use projsymp::exact::{LaurentSeries, Polynomial, Rational, RationalFunction, RationalMatrix};
use projsymp::projconn::{
    apply_delta, build_connection, calibrate_kappa, h1_pair, h2_pair, schwarzian,
    ProjectiveConnection, KAPPA,
};
use projsymp::riemann::{section_space, Curve, FunctionElement, LocalFrame, PointSpec, Section};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4))
}

fn poly<R: Rng>(rng: &mut R, max_degree: usize) -> Polynomial {
    let d = rng.gen_range(0..=max_degree);
    Polynomial::new((0..=d).map(|_| small(rng)).collect())
}

struct Line {
    id: u32,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

/// Written straight to stderr so the lines survive libtest output capture.
macro_rules! report {
    ($($arg:tt)*) => {
        drop(writeln!(std::io::stderr(), $($arg)*))
    };
}

fn run(id: u32, budget_s: u64, f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (passed, detail) = f();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_s);
    let line = Line {
        id,
        passed: passed && elapsed <= budget,
        detail,
        elapsed,
        budget,
    };
    report!(
        "criterion {}: {}  {} [{:.1} s of {} s]",
        line.id,
        if line.passed { "PASS" } else { "FAIL" },
        line.detail,
        line.elapsed.as_secs_f64(),
        line.budget.as_secs()
    );
    line
}

fn jet_suite() -> (bool, String) {
    let zero = RationalFunction::zero();
    let columns: Vec<Vec<Rational>> = (0..=12)
        .map(|i| {
            let image = apply_delta(&zero, &Polynomial::monomial(Rational::one(), i).into());
            let p = image.as_polynomial().cloned().unwrap_or_default();
            (0..=12).map(|j| p.coeff(j)).collect()
        })
        .collect();
    let kernel = RationalMatrix::from_columns(&columns, 13).kernel_basis();
    let spanned = kernel.iter().all(|v| v[3..].iter().all(|c| c.is_zero()));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut equivariant = 0;
    for _ in 0..100 {
        let phi = loop {
            let [a, b, c, d] = [0; 4].map(|_| small(&mut rng));
            if !(&(&a * &d) - &(&b * &c)).is_zero() {
                break RationalFunction::new(
                    Polynomial::new(vec![b, a]),
                    Polynomial::new(vec![d, c]),
                );
            }
        };
        let h: RationalFunction = poly(&mut rng, 6).into();
        let dphi = phi.derivative();
        let lhs = apply_delta(&zero, &(h.compose(&phi) / dphi.clone()));
        let rhs = apply_delta(&zero, &h).compose(&phi) * dphi.clone() * dphi;
        if schwarzian(&phi).unwrap().is_zero() && lhs == rhs {
            equivariant += 1;
        }
    }
    (
        kernel.len() == 3 && spanned && equivariant == 100,
        format!(
            "kernel dim {} within {{1, z, z^2}}: {spanned}; Möbius equivariant {equivariant}/100",
            kernel.len()
        ),
    )
}

fn lemma1() -> (bool, String) {
    let kappa = calibrate_kappa();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let flat = ProjectiveConnection::flat();
    let mut flat_ok = 0;
    for _ in 0..500 {
        let (f, g): (RationalFunction, RationalFunction) =
            (poly(&mut rng, 8).into(), poly(&mut rng, 8).into());
        if h1_pair(&flat, &f, &g) == h2_pair(&flat, &f, &g) {
            flat_ok += 1;
        }
    }
    let curve = Curve::default_curve();
    let conn = build_connection(&curve).unwrap();
    let mut curve_ok = 0;
    for _ in 0..100 {
        let f = FunctionElement::from_poly(&curve, poly(&mut rng, 4), poly(&mut rng, 2));
        let g = FunctionElement::from_poly(&curve, poly(&mut rng, 4), poly(&mut rng, 2));
        if h1_pair(&conn, &f, &g) == h2_pair(&conn, &f, &g) {
            curve_ok += 1;
        }
    }
    (
        kappa == Rational::from(KAPPA) && flat_ok == 500 && curve_ok == 100,
        format!(
            "kappa = {kappa}; exact on {flat_ok}/500 flat pairs and {curve_ok}/100 curve pairs"
        ),
    )
}

fn theorem1() -> (bool, String) {
    let geometry = Geometry::standard(build_connection(&Curve::default_curve()).unwrap()).unwrap();
    let model = CechModel::new(geometry, 10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let out = theorem1_trials(&model, 200, &mut rng).unwrap();
    (
        out.passed() && out.trials == 200,
        format!(
            "{} pairs; nonzero in first slot {}, second slot {}",
            out.trials, out.first_slot_nonzero, out.second_slot_nonzero
        ),
    )
}

fn hypercohomology() -> (bool, String, Option<projsymp::cech::H1Basis>) {
    let geometry = Geometry::standard(build_connection(&Curve::default_curve()).unwrap()).unwrap();
    let basis = compute_h1_basis(geometry, 10).unwrap();
    let m = &basis.model;
    let vertical: Vec<Vec<Rational>> = m
        .global_quadratic()
        .basis()
        .iter()
        .map(|w| m.class_of(&m.alpha1(w).unwrap()).unwrap())
        .collect();
    let rank1 = CechModel::rank(&vertical);
    let composite = m.global_quadratic().basis().iter().all(|w| {
        m.alpha2(&m.alpha1(w).unwrap())
            .unwrap()
            .iter()
            .all(|c| c.is_zero())
    });
    let projections: Vec<Vec<Rational>> = m
        .h1_representatives()
        .iter()
        .map(|c| m.alpha2(c).unwrap())
        .collect();
    let rank2 = CechModel::rank(&projections);
    let s = &basis.stabilization;
    let ok = m.global_quadratic().dim() == 3
        && m.tangent_h1_dim() == 3
        && m.h1_dim() == 6
        && rank1 == 3
        && rank2 == 3
        && composite
        && m.h1_dim() - rank2 == rank1
        && s.dim_n == s.dim_n_plus_2
        && s.congruent;
    let detail = format!(
        "H0(K^2) = {}, H1(TX) = {}, H1 = {}; ranks alpha1 {rank1}, alpha2 {rank2}, alpha2∘alpha1 = 0: {composite}; N = 10 vs 12: dims {} / {}, congruent {}",
        m.global_quadratic().dim(),
        m.tangent_h1_dim(),
        m.h1_dim(),
        s.dim_n,
        s.dim_n_plus_2,
        s.congruent
    );
    (ok, detail, Some(basis))
}

fn descended(basis: &projsymp::cech::H1Basis) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mat = match descended_form(basis, &mut rng) {
        Ok(m) => m,
        Err(e) => return (false, format!("coboundary-shift recheck failed: {e}")),
    };
    let m = &basis.model;
    let vertical: Vec<Vec<Rational>> = m
        .global_quadratic()
        .basis()
        .iter()
        .map(|w| m.class_of(&m.alpha1(w).unwrap()).unwrap())
        .collect();
    let isotropic = vertical.iter().all(|x| {
        let mx = mat.transpose().mul_vec(x);
        vertical.iter().all(|y| {
            mx.iter()
                .zip(y)
                .fold(Rational::zero(), |acc, (p, q)| &acc + &(p * q))
                .is_zero()
        })
    });
    let anti = mat.is_antisymmetric();
    let rank = mat.rank();
    (
        anti && rank == 6 && isotropic,
        format!("{}x{} antisymmetric {anti}, rank {rank}, vertical subspace isotropic {isotropic}, shift recheck exact", mat.rows(), mat.cols()),
    )
}

fn residues() -> (bool, String) {
    let curve = Curve::default_curve();
    let roots = curve.branch_points().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut sums_zero = 0;
    for _ in 0..50 {
        let mut den = Polynomial::one();
        let mut poles = vec![PointSpec::InfPlus, PointSpec::InfMinus];
        for e in &roots {
            let n = rng.gen_range(0..3u32);
            if n > 0 {
                den = &den * &Polynomial::linear_root(e).pow(n);
                poles.push(PointSpec::Branch(e.clone()));
            }
        }
        let form = Section::new(
            1,
            RationalFunction::new(poly(&mut rng, 9), den.clone()),
            RationalFunction::new(poly(&mut rng, 5), den),
        );
        let total = poles
            .iter()
            .map(|p| curve.residue_at(&form, p).unwrap())
            .fold(Rational::zero(), |acc, r| &acc + &r);
        if total.is_zero() {
            sums_zero += 1;
        }
    }
    let mut agree = 0;
    let mut compared = 0;
    for e in &roots {
        let fp = curve.f().derivative().eval(e);
        let t = LocalFrame::new(&curve, &PointSpec::Branch(e.clone())).unwrap();
        let two_t = LocalFrame::branch(&curve, e, &(&fp / &Rational::from(4))).unwrap();
        for _ in 0..3 {
            let den = Polynomial::linear_root(e).pow(rng.gen_range(1..4));
            let form = Section::new(
                1,
                RationalFunction::new(poly(&mut rng, 6), den.clone()),
                RationalFunction::new(poly(&mut rng, 3), den),
            );
            let r = t.residue(&form).unwrap();
            let sub = LaurentSeries::new(
                1,
                vec![Rational::one(), small(&mut rng), small(&mut rng)],
                12,
            );
            let pulled = t.expand(&form, 4).unwrap().compose(&sub).unwrap() * sub.derivative();
            compared += 1;
            if two_t.residue(&form).unwrap() == r && pulled.residue().unwrap() == r {
                agree += 1;
            }
        }
    }
    let holomorphic_dims =
        [1, 2].map(|k| section_space(&curve, k, &BTreeMap::new()).unwrap().dim());
    (
        sums_zero == 50 && agree == compared && holomorphic_dims == [2, 3],
        format!("residue sums zero on {sums_zero}/50 forms; branch residues parameter independent {agree}/{compared}"),
    )
}

fn character_variety() -> (bool, String) {
    let tol = 1e-8;
    let mut ok = 0;
    let mut worst_gate: f64 = 0.0;
    let mut worst_anti: f64 = 0.0;
    let mut least_margin = f64::INFINITY;
    let mut least_sv = f64::INFINITY;
    for seed in 0..20 {
        match goldman_suite(2, seed, tol, None) {
            Ok(s) => {
                let gate = s
                    .gate
                    .iter()
                    .find(|g| g.convention == s.convention)
                    .unwrap()
                    .worst_relative;
                worst_gate = worst_gate.max(gate);
                worst_anti = worst_anti.max(s.antisymmetry_defect);
                least_margin = least_margin.min(s.det_margin);
                least_sv = least_sv.min(s.smallest_singular_value);
                if (s.z1, s.b1, s.h1) == (9, 3, 6) && s.passed(tol) {
                    ok += 1;
                }
            }
            Err(e) => report!("  seed {seed}: {e}"),
        }
    }
    (
        ok == 20,
        format!(
            "{ok}/20 seeds with Z1 = 9, B1 = 3, H1 = 6; coboundary pairing <= {worst_gate:.1e}, antisymmetry <= {worst_anti:.1e} (relative); |det M|/|M|^6 >= {least_margin:.2e}, sigma_min/sigma_max >= {least_sv:.2e}"
        ),
    )
}

fn determinism() -> (bool, String) {
    let scenario = ScenarioConfig::default().validate().unwrap();
    let first = run_suites(&scenario, "all", &Suite::ALL, None);
    let second = run_suites(&scenario, "all", &Suite::ALL, None);
    let same = first.report.canonical_json() == second.report.canonical_json();
    (
        same && first.report.passed,
        format!(
            "two runs of all with seed {}: identical {same}, all checks pass {}; {} checks",
            scenario.config.seed,
            first.report.passed,
            first.report.checks.len()
        ),
    )
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let mut lines = vec![
        run(1, 10, jet_suite),
        run(2, 60, lemma1),
        run(3, 120, theorem1),
    ];
    let mut basis = None;
    lines.push(run(4, 120, || {
        let (ok, detail, b) = hypercohomology();
        basis = b;
        (ok, detail)
    }));
    lines.push(run(5, 120, || match &basis {
        Some(b) => descended(b),
        None => (false, "no basis".into()),
    }));
    lines.push(run(6, 30, residues));
    lines.push(run(7, 60, character_variety));
    lines.push(run(8, 600, determinism));
    report!("total {:.1} s", start.elapsed().as_secs_f64());
    let failed: Vec<u32> = lines.iter().filter(|l| !l.passed).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
