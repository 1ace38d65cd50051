//! Acceptance battery: one line per criterion, non-zero exit if any fails.
//!
//! Runs as a plain binary (`harness = false`) so the lines always print.

use std::time::{Duration, Instant};

use num_complex::Complex64;

use leafatlas::atlas::{atlas, open_leaf_test, orbit_class, twisted_involutions, AtlasReport};
use leafatlas::matrixlie::checks::{
    an_stabilizer_dim, annihilator_check, cartan_ranks, hermitian_fit, representative_for,
    sample_ranks, tan_stabilizer_dim,
};
use leafatlas::matrixlie::linalg::{haar_su, numerical_rank, random_sl, sample_rng};
use leafatlas::matrixlie::{
    compare_su2, g_act, iwasawa, jacobiator, su2_point, ExpChart, MatrixRealForm, PoissonStructure,
};
use leafatlas::rootsys::DEFAULT_WEYL_CAP;
use leafatlas::satake::{builtin_catalog, validate, RealForm};

const SEED: u64 = 20240917;

const RANK_TOL: f64 = 1e-8;
const NULLSPACE_TOL: f64 = 1e-8;
const SU2_REL_TOL: f64 = 1e-8;
const IWASAWA_TOL: f64 = 1e-12;
const ACTION_TOL: f64 = 1e-10;
const JACOBI_SU2_TOL: f64 = 1e-6;
const JACOBI_SU3_TOL: f64 = 1e-5;
const JACOBI_STEP: f64 = 1e-4;
const MULTIPLICATIVITY_TOL: f64 = 1e-8;
const ANNIHILATOR_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-8;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn catalog_atlas(label: &str) -> AtlasReport {
    atlas(builtin_catalog().get(label).expect("shipped form")).expect("atlas")
}

fn ps(label: &str) -> PoissonStructure {
    PoissonStructure::new(MatrixRealForm::from_label(label).expect("realization"))
}

fn c1_sl2_atlas() -> Outcome {
    let r = catalog_atlas("sl(2,R)");
    let open = r.class_by_word(&[1]);
    let closed = r.class_by_word(&[]);
    let ok = r.classes.len() == 2
        && open.is_some_and(|c| {
            (c.codim_y, c.a, c.t, c.leaf_dim) == (0, 0, 1, 2) && c.is_open
        })
        && closed.is_some_and(|c| {
            (c.codim_y, c.a, c.t, c.leaf_dim, c.family_dim) == (1, 1, 0, 0, 1)
        });
    outcome(ok, format!("{} classes, has_open_leaves {}", r.classes.len(), r.has_open_leaves))
}

fn c2_su2_example() -> Outcome {
    let ps = ps("sl(2,R)");
    let mut worst_rel: f64 = 0.0;
    let mut off_ok = true;
    for k in 0..100 {
        let u = haar_su(2, &mut sample_rng(SEED, k));
        let cmp = compare_su2(&ps, &u).expect("chart");
        worst_rel = worst_rel.max(cmp.relative_error());
        let rank = numerical_rank(&ps.pi_0(&u).unwrap(), RANK_TOL).rank;
        off_ok &= (cmp.w.norm() - 1.0).abs() > 1e-6 && rank == 2;
    }
    let mut eq_ok = true;
    for k in 0..100 {
        let u = su2_point(Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 100.0));
        eq_ok &= numerical_rank(&ps.pi_0(&u).unwrap(), RANK_TOL).rank == 0;
    }
    outcome(
        worst_rel <= SU2_REL_TOL && off_ok && eq_ok,
        format!("max rel err {worst_rel:.2e}, rank 2 off equator {off_ok}, rank 0 on equator {eq_ok}"),
    )
}

fn c3_open_leaf() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, expect) in [("sl(2,R)", true), ("su(2,1)", true), ("su(1,1)", true), ("sl(3,R)", false)] {
        let rf = RealForm::new(builtin_catalog().get(label).unwrap().clone()).unwrap();
        let test = open_leaf_test(&rf);
        let (rk, rg) = cartan_ranks(&MatrixRealForm::from_label(label).unwrap(), SEED, NULLSPACE_TOL);
        ok &= test == expect && (rk == rg) == expect;
        parts.push(format!("{label}: {test} (rank k0 {rk}, rank g0 {rg})"));
    }
    outcome(ok, parts.join("; "))
}

fn c4_sl3_ceiling() -> Outcome {
    let r = catalog_atlas("sl(3,R)");
    let s = sample_ranks(&ps("sl(3,R)"), SEED, 200, RANK_TOL).unwrap();
    let min_codim = r.min_admissible_leaf_codim();
    let ok = min_codim == Some(1) && s.max_rank == 4 && s.max_rank as i64 == r.dims.dim_x as i64 - 1;
    outcome(ok, format!("max rank {} over 200 points, min leaf_codim {:?}", s.max_rank, min_codim))
}

fn c5_su21() -> Outcome {
    let r = catalog_atlas("su(2,1)");
    let s = sample_ranks(&ps("su(2,1)"), SEED, 200, RANK_TOL).unwrap();
    let open: Vec<_> = r.open_classes().collect();
    let ok = s.max_rank == r.dims.dim_x
        && s.max_rank == 4
        && open.len() == 1
        && open[0].leaf_dim == 4
        && open[0].family_dim == 0;
    outcome(ok, format!("max rank {} = dim_X {}, open classes {}", s.max_rank, r.dims.dim_x, open.len()))
}

fn c6_catalog_invariants() -> Outcome {
    let cat = builtin_catalog();
    let mut failures = Vec::new();
    let mut count = 0;
    let mut classes = 0;
    for sd in cat.entries.iter().filter(|d| d.cartan_type.rank <= 4) {
        count += 1;
        let v = validate(sd);
        for name in ["w0_wb_commute", "tau_w0_commute", "tau_wb_commute", "length_identity"] {
            if !v.get(name).is_some_and(|c| c.passed) {
                failures.push(format!("{} {name}", sd.label));
            }
        }
        let rf = RealForm::new(sd.clone()).unwrap();
        let rank = sd.cartan_type.rank;
        for psi in twisted_involutions(&rf, DEFAULT_WEYL_CAP).unwrap() {
            let c = orbit_class(&rf, &psi).unwrap();
            classes += 1;
            if c.t + c.a != rank || c.leaf_codim != (c.a + c.codim_y) as i64 {
                failures.push(format!("{} [{}]", sd.label, psi));
            }
        }
    }
    outcome(
        failures.is_empty() && count > 0,
        format!("{count} entries, {classes} twisted involutions, failures: {failures:?}"),
    )
}

fn c7_iwasawa() -> Outcome {
    let mut recon: f64 = 0.0;
    for k in 0..1000u64 {
        let n = 2 + (k % 3) as usize;
        let m = random_sl(n, &mut sample_rng(SEED, 10_000 + k));
        let (b, u1) = iwasawa(&m).unwrap();
        recon = recon.max((b * u1 - &m).camax());
    }
    let mut action: f64 = 0.0;
    for k in 0..200u64 {
        let n = 2 + (k % 3) as usize;
        let mut rng = sample_rng(SEED, 20_000 + k);
        let u = haar_su(n, &mut rng);
        let g = random_sl(n, &mut rng);
        let h = random_sl(n, &mut rng);
        let lhs = g_act(&g_act(&u, &g).unwrap(), &h).unwrap();
        let rhs = g_act(&u, &(&g * &h)).unwrap();
        action = action.max((lhs - rhs).camax());
    }
    outcome(
        recon <= IWASAWA_TOL && action <= ACTION_TOL,
        format!("reconstruction {recon:.2e} (1000 matrices), action axiom {action:.2e} (200 triples)"),
    )
}

fn jacobi_max(label: &str, points: u64) -> f64 {
    let ps = ps(label);
    let n = ps.rf.n;
    let mut worst: f64 = 0.0;
    for k in 0..points {
        let chart = ExpChart::new(&ps, haar_su(n, &mut sample_rng(SEED, 30_000 + k)));
        let origin = vec![0.0; chart.dim()];
        worst = worst.max(jacobiator(|y| chart.bivector(y), &origin, JACOBI_STEP).unwrap());
    }
    worst
}

fn c8_poisson() -> Outcome {
    let j2 = jacobi_max("sl(2,R)", 20);
    let j3 = jacobi_max("sl(3,R)", 10);
    let mut mult: f64 = 0.0;
    for (label, n) in [("sl(2,R)", 2), ("sl(3,R)", 3)] {
        let ps = ps(label);
        for k in 0..100u64 {
            let mut rng = sample_rng(SEED, 40_000 + k);
            let u = haar_su(n, &mut rng);
            let v = haar_su(n, &mut rng);
            mult = mult.max(ps.multiplicativity_residual(&u, &v).unwrap());
        }
    }
    let mut ann: f64 = 0.0;
    for label in ["sl(2,R)", "sl(3,R)", "su(2,1)", "su(1,1)"] {
        let a = annihilator_check(&MatrixRealForm::from_label(label).unwrap(), NULLSPACE_TOL);
        ann = ann.max(if a.dim_annihilator == a.dim_an0 { a.distance } else { f64::INFINITY });
    }
    outcome(
        j2 <= JACOBI_SU2_TOL && j3 <= JACOBI_SU3_TOL && mult <= MULTIPLICATIVITY_TOL && ann <= ANNIHILATOR_TOL,
        format!("jacobi SU(2) {j2:.2e}, SU(3) {j3:.2e}; multiplicativity {mult:.2e}; annihilator {ann:.2e}"),
    )
}

fn c9_stabilizers() -> Outcome {
    let mut ok = true;
    let mut checked = 0;
    let mut inconclusive = 0;
    for label in ["sl(2,R)", "sl(3,R)"] {
        let mrf = MatrixRealForm::from_label(label).unwrap();
        let rf = RealForm::new(mrf.satake_diagram()).unwrap();
        for psi in twisted_involutions(&rf, DEFAULT_WEYL_CAP).unwrap() {
            let c = orbit_class(&rf, &psi).unwrap();
            match representative_for(&mrf, &psi) {
                Ok(u) => {
                    checked += 1;
                    ok &= an_stabilizer_dim(&mrf, &u, NULLSPACE_TOL) == c.a + c.codim_y;
                    ok &= tan_stabilizer_dim(&mrf, &u, NULLSPACE_TOL) == c.t + c.a + c.codim_y;
                }
                Err(_) => inconclusive += 1,
            }
        }
    }
    outcome(ok && checked > 0, format!("{checked} representatives checked, {inconclusive} inconclusive"))
}

fn c10_hermitian() -> Outcome {
    let ps = ps("su(1,1)");
    let a = hermitian_fit(&ps, SEED, 50_000, 100).unwrap();
    let b = hermitian_fit(&ps, SEED, 60_000, 100).unwrap();
    let diff = (a.b - b.b).abs();
    outcome(
        a.residual <= HERMITIAN_TOL && b.residual <= HERMITIAN_TOL && diff <= HERMITIAN_TOL && a.min_inv_rank == 2,
        format!("residual {:.2e}, refit difference {diff:.2e}, b = {:.10} (recorded)", a.residual.max(b.residual), a.b),
    )
}

fn main() {
    type Criterion = (u32, &'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (1, "sl(2,R) atlas", Duration::from_secs(1), c1_sl2_atlas),
        (2, "SU(2)/SO(2) closed form and ranks", Duration::from_secs(5), c2_su2_example),
        (3, "open leaves vs compact Cartan oracle", Duration::from_secs(5), c3_open_leaf),
        (4, "sl(3,R) rank ceiling", Duration::from_secs(30), c4_sl3_ceiling),
        (5, "su(2,1) open leaves", Duration::from_secs(30), c5_su21),
        (6, "catalog structural invariants", Duration::from_secs(10), c6_catalog_invariants),
        (7, "Iwasawa factorization and action", Duration::from_secs(5), c7_iwasawa),
        (8, "Jacobi, multiplicativity, annihilator", Duration::from_secs(60), c8_poisson),
        (9, "stabilizer dimensions", Duration::from_secs(10), c9_stabilizers),
        (10, "Hermitian decomposition", Duration::from_secs(10), c10_hermitian),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let passed = out.passed && elapsed <= budget;
        if !passed {
            failed += 1;
        }
        println!(
            "[{}] criterion {id:>2} {name}: {} ({:.2}s of {}s)",
            if passed { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
