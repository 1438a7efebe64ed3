use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cech::{
    compute_h1_basis, descended_form, pairing, pairing_swapped, proof_mechanics, theorem1_trials,
    CechError, CechModel, Geometry, H1Basis,
};
use crate::charvar::{goldman_suite, GoldmanSuite};
use crate::exact::{LaurentSeries, Polynomial, Rational, RationalFunction, RationalMatrix};
use crate::projconn::{
    apply_delta, build_connection, calibrate_kappa, eta2_inverse, h1_pair, h2_pair, schwarzian,
    Jet2, ProjConnError, ProjectiveConnection, Sl2Element, KAPPA,
};
use crate::riemann::{section_space, FunctionElement, LocalFrame, PointSpec, Section};

use super::config::{Scenario, Suite};
use super::report::Check;

/// Shared state of one run. The curve connection and the `ℍ¹` basis are
/// computed once and reused by every suite that needs them.
pub struct Context<'a> {
    pub scenario: &'a Scenario,
    connection: OnceLock<Result<ProjectiveConnection, ProjConnError>>,
    basis: OnceLock<Result<H1Basis, CechError>>,
}

impl<'a> Context<'a> {
    pub fn new(scenario: &'a Scenario) -> Self {
        Context {
            scenario,
            connection: OnceLock::new(),
            basis: OnceLock::new(),
        }
    }

    fn rng(&self, suite: Suite) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.scenario.config.seed);
        rng.set_stream(suite as u64);
        rng
    }

    pub fn connection(&self) -> Result<&ProjectiveConnection, ProjConnError> {
        self.connection
            .get_or_init(|| build_connection(&self.scenario.curve))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn basis(&self) -> Result<&H1Basis, CechError> {
        self.basis
            .get_or_init(|| {
                let conn = self.connection()?.clone();
                let geometry =
                    Geometry::new(conn, self.scenario.a.clone(), self.scenario.b.clone())?;
                compute_h1_basis(geometry, self.scenario.config.truncation)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The basis error, if the truncation did not stabilize.
    pub fn unstable(&self) -> Option<&CechError> {
        match self.basis.get() {
            Some(Err(e @ CechError::UnstableTruncation { .. })) => Some(e),
            _ => None,
        }
    }
}

pub fn run_suite(ctx: &Context, suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Jets => jets(ctx),
        Suite::Lemma1 => lemma1(ctx),
        Suite::Residues => residues(ctx),
        Suite::Theorem1 => theorem1(ctx),
        Suite::Sequence => sequence(ctx),
        Suite::Pairing => pairing_suite(ctx),
        Suite::Goldman => goldman(ctx),
    }
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4))
}

fn random_polynomial<R: Rng>(rng: &mut R, max_degree: usize) -> Polynomial {
    let d = rng.gen_range(0..=max_degree);
    Polynomial::new((0..=d).map(|_| small_rational(rng)).collect())
}

fn random_mobius<R: Rng>(rng: &mut R) -> RationalFunction {
    loop {
        let [a, b, c, d] = [0; 4].map(|_| small_rational(rng));
        if !(&(&a * &d) - &(&b * &c)).is_zero() {
            return RationalFunction::new(Polynomial::new(vec![b, a]), Polynomial::new(vec![d, c]));
        }
    }
}

fn strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect()
}

fn jets(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(Suite::Jets);
    let zero = RationalFunction::zero();

    let bound = 12;
    let columns: Vec<Vec<Rational>> = (0..=bound)
        .map(|i| {
            let image = apply_delta(&zero, &Polynomial::monomial(Rational::one(), i).into());
            let p = image.as_polynomial().cloned().unwrap_or_default();
            (0..=bound).map(|j| p.coeff(j)).collect()
        })
        .collect();
    let kernel = RationalMatrix::from_columns(&columns, bound + 1).kernel_basis();
    let in_span = kernel.iter().all(|v| v[3..].iter().all(|c| c.is_zero()));
    let kernel_check = Check::new(
        "jets.flat_kernel",
        kernel.len() == 3 && in_span,
        json!({ "degree_bound": bound, "kernel_dim": kernel.len(), "spanned_by_1_z_z2": in_span }),
    );

    let maps = ctx.scenario.config.trials.mobius;
    let mut failures = Vec::new();
    for _ in 0..maps {
        let phi = random_mobius(&mut rng);
        let h: RationalFunction = random_polynomial(&mut rng, 6).into();
        let dphi = phi.derivative();
        let flat = schwarzian(&phi).map(|s| s.is_zero()).unwrap_or(false);
        let lhs = apply_delta(&zero, &(h.compose(&phi) / dphi.clone()));
        let rhs = apply_delta(&zero, &h).compose(&phi) * dphi.clone() * dphi;
        if !flat || lhs != rhs {
            failures.push(json!({ "phi": phi.to_string(), "h": h.to_string() }));
        }
    }
    let mobius = Check::new(
        "jets.mobius_equivariance",
        failures.is_empty(),
        json!({ "maps": maps, "failures": failures.len(), "first_failures": &failures[..failures.len().min(3)] }),
    );

    // Δ − d³ has order ≤ 2, so three commutators with z kill it; for Δ they give 6.
    let comm = |op: &dyn Fn(&RationalFunction) -> RationalFunction, h: &RationalFunction| {
        let z = RationalFunction::x();
        op(&(z.clone() * h.clone())) - z * op(h)
    };
    let mut symbol_ok = true;
    for _ in 0..10 {
        let den = random_polynomial(&mut rng, 2);
        let q = if den.is_zero() {
            RationalFunction::zero()
        } else {
            RationalFunction::new(random_polynomial(&mut rng, 3), den)
        };
        let h: RationalFunction = random_polynomial(&mut rng, 7).into();
        let delta = |g: &RationalFunction| apply_delta(&q, g);
        let c1 = |g: &RationalFunction| comm(&delta, g);
        let c2 = |g: &RationalFunction| comm(&c1, g);
        symbol_ok &= comm(&c2, &h) == h.scale(&Rational::from(6));
    }
    let symbol = Check::new(
        "jets.symbol",
        symbol_ok,
        json!({ "trials": 10, "third_commutator": "6" }),
    );

    let mut split_ok = true;
    for _ in 0..100 {
        let z = small_rational(&mut rng);
        let j = Jet2 {
            z: z.clone(),
            h: [0; 3].map(|_| small_rational(&mut rng)),
        };
        split_ok &= eta2_inverse(&j).jet2_at(&z) == j;
    }
    let splitting = Check::new("jets.splitting", split_ok, json!({ "trials": 100 }));

    let basis = [
        Sl2Element::new(Rational::new(1, 2), Rational::zero(), Rational::zero()),
        Sl2Element::new(Rational::zero(), Rational::one(), Rational::zero()),
        Sl2Element::new(Rational::zero(), Rational::zero(), Rational::one()),
    ];
    let mut lie_ok = true;
    for x in &basis {
        for y in &basis {
            let (u, v) = (x.vector_field(), y.vector_field());
            let bracket = &(&u * &v.derivative()) - &(&v * &u.derivative());
            lie_ok &= x.commutator(y).vector_field() == -&bracket;
        }
    }
    let lie = Check::new(
        "jets.lie_bracket",
        lie_ok,
        json!({ "relation": "field([X, Y]) = -[field(X), field(Y)]" }),
    );

    vec![kernel_check, mobius, symbol, splitting, lie]
}

fn lemma1(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(Suite::Lemma1);
    let trials = &ctx.scenario.config.trials;
    let kappa = calibrate_kappa();
    let kappa_check = Check::new(
        "lemma1.kappa",
        kappa == Rational::from(KAPPA),
        json!({ "kappa": kappa.to_string(), "calibration": "f = g = z^3, q = 0" }),
    );

    let flat = ProjectiveConnection::flat();
    let mut failures = Vec::new();
    for _ in 0..trials.lemma1_flat {
        let f: RationalFunction = random_polynomial(&mut rng, 8).into();
        let g: RationalFunction = random_polynomial(&mut rng, 8).into();
        if h1_pair(&flat, &f, &g) != h2_pair(&flat, &f, &g) {
            failures.push(json!({ "f": f.to_string(), "g": g.to_string() }));
        }
    }
    let flat_check = Check::new(
        "lemma1.flat_pairs",
        failures.is_empty(),
        json!({ "pairs": trials.lemma1_flat, "failures": failures.len(), "first_failures": &failures[..failures.len().min(3)] }),
    );

    let curve_check = match ctx.connection() {
        Err(e) => Check::failed("lemma1.curve_pairs", e),
        Ok(conn) => {
            let curve = &ctx.scenario.curve;
            let mut failures = Vec::new();
            for _ in 0..trials.lemma1_curve {
                let (a, b) = (
                    random_polynomial(&mut rng, 4),
                    random_polynomial(&mut rng, 2),
                );
                let (c, d) = (
                    random_polynomial(&mut rng, 4),
                    random_polynomial(&mut rng, 2),
                );
                let f = FunctionElement::from_poly(curve, a.clone(), b.clone());
                let g = FunctionElement::from_poly(curve, c.clone(), d.clone());
                if h1_pair(conn, &f, &g) != h2_pair(conn, &f, &g) {
                    failures.push(json!({ "f": [a.to_string(), b.to_string()], "g": [c.to_string(), d.to_string()] }));
                }
            }
            Check::new(
                "lemma1.curve_pairs",
                failures.is_empty(),
                json!({
                    "pairs": trials.lemma1_curve,
                    "connection_q": conn.q().to_string(),
                    "failures": failures.len(),
                    "first_failures": &failures[..failures.len().min(3)],
                }),
            )
        }
    };
    vec![kappa_check, flat_check, curve_check]
}

fn residues(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(Suite::Residues);
    let curve = &ctx.scenario.curve;
    let roots = curve.branch_points().unwrap_or_default();
    let forms = ctx.scenario.config.trials.residue_forms;

    let mut failures = Vec::new();
    let mut nonzero = 0usize;
    let mut error = None;
    for _ in 0..forms {
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
            RationalFunction::new(random_polynomial(&mut rng, 9), den.clone()),
            RationalFunction::new(random_polynomial(&mut rng, 5), den),
        );
        let res: Result<Vec<Rational>, _> =
            poles.iter().map(|p| curve.residue_at(&form, p)).collect();
        match res {
            Err(e) => {
                error = Some(e.to_string());
                break;
            }
            Ok(res) => {
                nonzero += res.iter().filter(|r| !r.is_zero()).count();
                let total = res.iter().fold(Rational::zero(), |acc, r| &acc + r);
                if !total.is_zero() {
                    failures.push(json!({ "form": form.to_string(), "sum": total.to_string() }));
                }
            }
        }
    }
    let theorem = Check::new(
        "residues.sum_zero",
        error.is_none() && failures.is_empty(),
        json!({
            "forms": forms,
            "nonzero_residues": nonzero,
            "error": error,
            "failures": failures.len(),
            "first_failures": &failures[..failures.len().min(3)],
        }),
    );

    let mut compared = 0usize;
    let mut failures = Vec::new();
    let mut error = None;
    'outer: for e in &roots {
        let fp = curve.f().derivative().eval(e);
        let frames = LocalFrame::new(curve, &PointSpec::Branch(e.clone())).and_then(|a| {
            Ok((
                a,
                LocalFrame::branch(curve, e, &(&fp / &Rational::from(4)))?,
            ))
        });
        let (standard, rescaled) = match frames {
            Ok(f) => f,
            Err(err) => {
                error = Some(err.to_string());
                break;
            }
        };
        for _ in 0..4 {
            let den = Polynomial::linear_root(e).pow(rng.gen_range(1..4));
            let form = Section::new(
                1,
                RationalFunction::new(random_polynomial(&mut rng, 6), den.clone()),
                RationalFunction::new(random_polynomial(&mut rng, 3), den),
            );
            let (a, b) = (small_rational(&mut rng), small_rational(&mut rng));
            let outcome = (|| -> Result<(Rational, Rational, Rational), String> {
                let r = standard.residue(&form).map_err(|e| e.to_string())?;
                let r2 = rescaled.residue(&form).map_err(|e| e.to_string())?;
                let series = standard.expand(&form, 4).map_err(|e| e.to_string())?;
                let sub = LaurentSeries::new(1, vec![Rational::one(), a.clone(), b.clone()], 12);
                let pulled = series.compose(&sub).map_err(|e| e.to_string())? * sub.derivative();
                Ok((r, r2, pulled.residue().map_err(|e| e.to_string())?))
            })();
            match outcome {
                Err(err) => {
                    error = Some(err);
                    break 'outer;
                }
                Ok((r, r2, r3)) => {
                    compared += 1;
                    if r != r2 || r != r3 {
                        failures.push(json!({
                            "point": format!("branch:{e}"),
                            "form": form.to_string(),
                            "residues": [r.to_string(), r2.to_string(), r3.to_string()],
                        }));
                    }
                }
            }
        }
    }
    let independence = Check::new(
        "residues.parameter_independence",
        error.is_none() && compared > 0 && failures.is_empty(),
        json!({
            "comparisons": compared,
            "parameters": ["t", "2t", "t + a t^2 + b t^3"],
            "error": error,
            "failures": failures,
        }),
    );
    vec![theorem, independence]
}

fn theorem1(ctx: &Context) -> Vec<Check> {
    let basis = match ctx.basis() {
        Ok(b) => b,
        Err(e) => {
            return vec![
                Check::failed("theorem1.coboundaries_pair_to_zero", &e),
                Check::failed("theorem1.proof_mechanics", e),
            ]
        }
    };
    let mut rng = ctx.rng(Suite::Theorem1);
    let trials = &ctx.scenario.config.trials;
    let n = basis.truncation();
    let vanishing = match theorem1_trials(&basis.model, trials.theorem1, &mut rng) {
        Ok(out) => Check::new(
            "theorem1.coboundaries_pair_to_zero",
            out.passed(),
            json!({ "truncation": n, "outcome": out }),
        ),
        Err(e) => Check::failed("theorem1.coboundaries_pair_to_zero", &e),
    };
    let mechanics = match proof_mechanics(&basis.model, trials.proof_mechanics, &mut rng) {
        Ok(out) => Check::new(
            "theorem1.proof_mechanics",
            out.passed(),
            json!({ "truncation": n, "outcome": out }),
        ),
        Err(e) => Check::failed("theorem1.proof_mechanics", e),
    };
    vec![vanishing, mechanics]
}

fn vertical_classes(m: &CechModel) -> Result<Vec<Vec<Rational>>, CechError> {
    m.global_quadratic()
        .basis()
        .iter()
        .map(|w| m.class_of(&m.alpha1(w)?))
        .collect()
}

fn sequence(ctx: &Context) -> Vec<Check> {
    let names = [
        "sequence.dimensions",
        "sequence.exactness",
        "sequence.stabilization",
    ];
    let basis = match ctx.basis() {
        Ok(b) => b,
        Err(e) => return names.iter().map(|n| Check::failed(*n, &e)).collect(),
    };
    let m = &basis.model;
    let g = ctx.scenario.curve.genus();
    let h0_t = section_space(&ctx.scenario.curve, -1, &BTreeMap::new()).map(|s| s.dim());
    let dims = json!({
        "h0_tangent": h0_t.as_ref().ok(),
        "h0_quadratic": m.global_quadratic().dim(),
        "hypercohomology": m.h1_dim(),
        "h1_tangent": m.tangent_h1_dim(),
        "expected_hypercohomology": 6 * g - 6,
        "cocycles": m.cocycle_dim(),
        "coboundary_rank": m.coboundary_rank(),
    });
    let dims_ok = h0_t == Ok(0)
        && m.global_quadratic().dim() == 3 * g - 3
        && m.h1_dim() == 6 * g - 6
        && m.tangent_h1_dim() == 3 * g - 3;
    let dimensions = Check::new(names[0], dims_ok, dims);

    let exactness = (|| -> Result<Check, CechError> {
        let images = vertical_classes(m)?;
        let alpha1_rank = CechModel::rank(&images);
        let mut composite_zero = true;
        for w in m.global_quadratic().basis() {
            composite_zero &= m.alpha2(&m.alpha1(w)?)?.iter().all(|c| c.is_zero());
        }
        let projections: Vec<Vec<Rational>> = m
            .h1_representatives()
            .iter()
            .map(|c| m.alpha2(c))
            .collect::<Result<_, _>>()?;
        let alpha2_rank = CechModel::rank(&projections);
        let ker_alpha2 = m.h1_dim() - alpha2_rank;
        let ok = alpha1_rank == m.global_quadratic().dim()
            && alpha2_rank == m.tangent_h1_dim()
            && composite_zero
            && ker_alpha2 == alpha1_rank;
        Ok(Check::new(
            names[1],
            ok,
            json!({
                "rank_alpha1": alpha1_rank,
                "rank_alpha2": alpha2_rank,
                "dim_ker_alpha2": ker_alpha2,
                "alpha2_after_alpha1_zero": composite_zero,
            }),
        ))
    })()
    .unwrap_or_else(|e| Check::failed(names[1], e));

    let s = &basis.stabilization;
    let stabilization = Check::new(
        names[2],
        s.dim_n == s.dim_n_plus_2 && s.congruent,
        json!({
            "N": s.n,
            "N+2": s.n_plus_2,
            "dim_N": s.dim_n,
            "dim_N+2": s.dim_n_plus_2,
            "equal": s.equal,
            "change_of_basis": strings(&s.change_of_basis),
        }),
    );
    vec![dimensions, exactness, stabilization]
}

fn pairing_suite(ctx: &Context) -> Vec<Check> {
    let names = [
        "pairing.descended_form",
        "pairing.lagrangian",
        "pairing.role_swap",
    ];
    let basis = match ctx.basis() {
        Ok(b) => b,
        Err(e) => return names.iter().map(|n| Check::failed(*n, &e)).collect(),
    };
    let mut rng = ctx.rng(Suite::Pairing);
    let form = match descended_form(basis, &mut rng) {
        Ok(m) => {
            let rank = m.rank();
            let anti = m.is_antisymmetric();
            Check::new(
                names[0],
                anti && rank == basis.dim() && rank == 6 * ctx.scenario.curve.genus() - 6,
                json!({
                    "dim_h1": basis.dim(),
                    "truncation": basis.truncation(),
                    "antisymmetric": anti,
                    "rank": rank,
                    "well_defined_under_coboundary_shifts": true,
                    "matrix": strings(&m),
                }),
            )
        }
        Err(e) => Check::failed(names[0], e),
    };

    let lagrangian = match vertical_classes(&basis.model) {
        Ok(vertical) => {
            let mt = basis.matrix.transpose();
            let mut values = Vec::new();
            for x in &vertical {
                let mx = mt.mul_vec(x);
                for y in &vertical {
                    values.push(
                        mx.iter()
                            .zip(y)
                            .fold(Rational::zero(), |acc, (p, q)| &acc + &(p * q)),
                    );
                }
            }
            let isotropic = values.iter().all(|v| v.is_zero());
            Check::new(
                names[1],
                isotropic && CechModel::rank(&vertical) * 2 == basis.dim(),
                json!({
                    "vertical_dim": CechModel::rank(&vertical),
                    "isotropic": isotropic,
                    "restricted_values": values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                }),
            )
        }
        Err(e) => Check::failed(names[1], e),
    };

    let swap = (|| -> Result<Check, CechError> {
        let reps = &basis.representatives;
        let mut mismatches = Vec::new();
        for (i, u) in reps.iter().enumerate() {
            for (j, v) in reps.iter().enumerate() {
                let (p, s) = (pairing(u, v)?, pairing_swapped(u, v)?);
                if p != s {
                    mismatches.push(json!({ "i": i, "j": j, "direct": p.to_string(), "swapped": s.to_string() }));
                }
            }
        }
        Ok(Check::new(
            names[2],
            mismatches.is_empty(),
            json!({ "entries": reps.len() * reps.len(), "mismatches": mismatches }),
        ))
    })()
    .unwrap_or_else(|e| Check::failed(names[2], e));
    vec![form, lagrangian, swap]
}

struct GenusRun {
    genus: usize,
    suites: Vec<GoldmanSuite>,
    errors: Vec<Value>,
}

fn goldman(ctx: &Context) -> Vec<Check> {
    let config = &ctx.scenario.config;
    let tol = config.tolerances.goldman;
    let runs: Vec<GenusRun> = config
        .goldman_genera
        .iter()
        .map(|&genus| {
            let mut suites = Vec::new();
            let mut errors = Vec::new();
            for s in 0..config.trials.goldman_seeds {
                let seed = config.seed.wrapping_mul(1000).wrapping_add(s);
                match goldman_suite(genus, seed, tol, config.goldman_convention) {
                    Ok(r) => suites.push(r),
                    Err(e) => errors.push(json!({ "seed": seed, "error": e.to_string() })),
                }
            }
            GenusRun {
                genus,
                suites,
                errors,
            }
        })
        .collect();

    let mut checks = Vec::new();
    for run in &runs {
        let g = run.genus;
        let clean = run.errors.is_empty() && !run.suites.is_empty();
        let name = |n: &str| format!("goldman.g{g}.{n}");
        let worst = |f: &dyn Fn(&GoldmanSuite) -> f64| run.suites.iter().map(f).fold(0.0, f64::max);
        let least = |f: &dyn Fn(&GoldmanSuite) -> f64| {
            run.suites.iter().map(f).fold(f64::INFINITY, f64::min)
        };
        let seeds: Vec<u64> = run.suites.iter().map(|s| s.seed).collect();

        let dims_ok = run
            .suites
            .iter()
            .all(|s| (s.z1, s.b1, s.h1) == (6 * g - 3, 3, 6 * g - 6));
        checks.push(Check::new(
            name("dimensions"),
            clean && dims_ok,
            json!({
                "seeds": seeds,
                "expected": { "z1": 6 * g - 3, "b1": 3, "h1": 6 * g - 6 },
                "observed": run.suites.iter().map(|s| [s.z1, s.b1, s.h1]).collect::<Vec<_>>(),
                "errors": run.errors,
                "worst_relator_defect": worst(&|s| s.relator_defect),
                "least_line_escape": least(&|s| s.min_line_escape),
            }),
        ));

        let gate_ok = run.suites.iter().all(|s| s.gate_passed());
        let gate_table: BTreeMap<String, f64> = run
            .suites
            .first()
            .map(|s| {
                s.gate
                    .iter()
                    .map(|r| {
                        (
                            serde_json::to_value(r.convention)
                                .unwrap()
                                .as_str()
                                .unwrap_or("")
                                .to_string(),
                            r.worst_relative,
                        )
                    })
                    .collect()
            })
            .unwrap_or_default();
        checks.push(Check::new(
            name("coboundary_vanishing"),
            clean && gate_ok,
            json!({
                "tolerance": tol,
                "convention": run.suites.first().map(|s| s.convention),
                "first_seed_gate": gate_table,
            }),
        ));

        let anti = worst(&|s| s.antisymmetry_defect);
        checks.push(Check::new(
            name("antisymmetry"),
            clean && anti <= tol,
            json!({ "tolerance": tol, "worst_relative_defect": anti }),
        ));

        let nondeg = run
            .suites
            .iter()
            .all(|s| s.smallest_singular_value > crate::charvar::KERNEL_BAND.1);
        checks.push(Check::new(
            name("nondegeneracy"),
            clean && nondeg,
            json!({
                "least_det_margin": least(&|s| s.det_margin),
                "least_singular_value_ratio": least(&|s| s.smallest_singular_value),
                "det_margins": run.suites.iter().map(|s| s.det_margin).collect::<Vec<_>>(),
            }),
        ));

        let conj = worst(&|s| s.conjugation_defect);
        checks.push(Check::new(
            name("conjugation_invariance"),
            clean && conj <= tol,
            json!({ "tolerance": tol, "worst_relative_defect": conj }),
        ));

        let bil = worst(&|s| s.bilinearity_defect);
        checks.push(Check::new(
            name("bilinearity"),
            clean && bil <= 1e-12,
            json!({ "tolerance": 1e-12, "worst_relative_defect": bil }),
        ));
    }
    checks
}
