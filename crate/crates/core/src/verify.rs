//! The numerical check battery behind `leafatlas verify`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::atlas::{atlas_for, open_leaf_test, orbit_class, twisted_involutions, AtlasError};
use crate::matrixlie::checks::{
    annihilator_check, an_stabilizer_dim, cartan_ranks, hermitian_fit, leaf_tangency,
    realized_tau_star, representative_for, sample_ranks, tan_stabilizer_dim,
};
use crate::matrixlie::linalg::{haar_su, numerical_rank, random_sl, sample_rng};
use crate::matrixlie::{
    compare_su2, g_act, iwasawa, jacobiator, su2_point, ExpChart, Kind, MatrixLieError,
    MatrixRealForm, PoissonStructure,
};
use crate::rootsys::DEFAULT_WEYL_CAP;
use crate::satake::{RealForm, SatakeError};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Matrix(#[from] MatrixLieError),
    #[error(transparent)]
    Satake(#[from] SatakeError),
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error("unknown tolerance `{0}`")]
    UnknownTolerance(String),
    #[error("bad tolerance override `{0}`, expected name=value")]
    BadOverride(String),
}

/// Named numerical tolerances. Keys are listed by [`Tolerances::names`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        let pairs = [
            ("structure", 1e-12),
            ("rank", 1e-8),
            ("nullspace", 1e-8),
            ("chart_rel", 1e-8),
            ("jacobi_su2", 1e-6),
            ("jacobi", 1e-5),
            ("jacobi_step", 1e-4),
            ("multiplicativity", 1e-8),
            ("torus", 1e-10),
            ("annihilator", 1e-12),
            ("iwasawa", 1e-12),
            ("action", 1e-10),
            ("tangency", 1e-8),
            ("hermitian", 1e-8),
        ];
        Tolerances(pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }
}

impl Tolerances {
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<(), VerifyError> {
        match self.0.get_mut(name) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(VerifyError::UnknownTolerance(name.to_string())),
        }
    }

    /// Applies an override of the form `name=value`.
    pub fn apply(&mut self, spec: &str) -> Result<(), VerifyError> {
        let (k, v) = spec
            .split_once('=')
            .ok_or_else(|| VerifyError::BadOverride(spec.to_string()))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| VerifyError::BadOverride(spec.to_string()))?;
        self.set(k.trim(), v)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub form: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl VerifyConfig {
    pub fn new(form: impl Into<String>) -> Self {
        VerifyConfig {
            form: form.into(),
            samples: 100,
            seed: 42,
            tolerances: Tolerances::default(),
        }
    }
}

/// One line of the battery: `value <= tol` passes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub value: f64,
    pub tol: f64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub seed: u64,
    pub form: String,
    pub samples: usize,
    pub dim_x: usize,
    pub checks: Vec<CheckLine>,
    /// Recorded quantities that are not pass/fail.
    pub observations: BTreeMap<String, String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckLine> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Battery {
    checks: Vec<CheckLine>,
    observations: BTreeMap<String, String>,
}

impl Battery {
    fn check(&mut self, name: &str, value: f64, tol: f64, detail: String) {
        self.checks.push(CheckLine {
            name: name.to_string(),
            value,
            tol,
            passed: value <= tol,
            detail,
        });
    }

    /// Exact agreement, encoded as value 0 (agree) or 1 (disagree) with tol 0.
    fn agree(&mut self, name: &str, ok: bool, detail: String) {
        self.check(name, if ok { 0.0 } else { 1.0 }, 0.0, detail);
    }

    fn observe(&mut self, name: &str, value: impl ToString) {
        self.observations.insert(name.to_string(), value.to_string());
    }
}

/// Runs the full battery for a form with a shipped realization.
pub fn verify(cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    let mrf = MatrixRealForm::from_label(&cfg.form)?;
    let rf = RealForm::new(mrf.satake_diagram())?;
    let report = atlas_for(&rf, DEFAULT_WEYL_CAP)?;
    let tol = &cfg.tolerances;
    let seed = cfg.seed;
    let n = mrf.n;
    let samples = cfg.samples.max(1);
    let ps = PoissonStructure::new(mrf.clone());
    let mut b = Battery { checks: Vec::new(), observations: BTreeMap::new() };

    b.check(
        "realization_structure",
        mrf.structure_residual(),
        tol.get("structure"),
        "tau^2, theta^2, [tau, theta], tau preserves the diagonal".into(),
    );
    b.agree(
        "realized_tau_star",
        &realized_tau_star(&mrf) == rf.tau_star(),
        "tau* from the matrices equals the Satake tau*".into(),
    );
    b.agree(
        "realization_dims",
        mrf.dim_k0() == rf.dims().dim_k0 && mrf.dim_x() == rf.dims().dim_x,
        format!("dim k0 = {}, dim X = {}", mrf.dim_k0(), mrf.dim_x()),
    );

    let ann = annihilator_check(&mrf, tol.get("nullspace"));
    b.check(
        "annihilator",
        ann.distance,
        tol.get("annihilator"),
        format!("dim annihilator {} vs dim a0+n0 {}", ann.dim_annihilator, ann.dim_an0),
    );

    let mut mult: f64 = 0.0;
    let mut torus: f64 = 0.0;
    let mut iw: f64 = 0.0;
    let mut action: f64 = 0.0;
    for k in 0..samples {
        let mut rng = sample_rng(seed, (1 << 32) + k as u64);
        let u = haar_su(n, &mut rng);
        let v = haar_su(n, &mut rng);
        mult = mult.max(ps.multiplicativity_residual(&u, &v)?);
        let phases: Vec<f64> = (0..n).map(|i| 0.37 * (i as f64 + 1.0) + 0.11 * k as f64).collect();
        let shift = phases.iter().sum::<f64>() / n as f64;
        let t = crate::matrixlie::linalg::CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            phases.iter().map(|p| Complex64::from_polar(1.0, p - shift)),
        ));
        torus = torus.max(ps.torus_invariance_residual(&u, &t)?);
        let m = random_sl(n, &mut rng);
        let (bb, u1) = iwasawa(&m)?;
        iw = iw.max((bb * u1 - &m).camax());
        let g = random_sl(n, &mut rng);
        let h = random_sl(n, &mut rng);
        let lhs = g_act(&g_act(&u, &g)?, &h)?;
        let rhs = g_act(&u, &(&g * &h))?;
        action = action.max((lhs - rhs).camax());
    }
    b.check("multiplicativity", mult, tol.get("multiplicativity"), format!("{samples} pairs"));
    b.check("torus_invariance", torus, tol.get("torus"), format!("{samples} points"));
    b.check("iwasawa_roundtrip", iw, tol.get("iwasawa"), format!("{samples} matrices"));
    b.check("action_axiom", action, tol.get("action"), format!("{samples} triples"));

    // Rank ceiling against the atlas.
    let ranks = sample_ranks(&ps, seed, samples, tol.get("rank"))?;
    let expected = report
        .min_admissible_leaf_codim()
        .map(|c| mrf.dim_x() as i64 - c)
        .unwrap_or(0);
    b.check(
        "rank_vs_atlas",
        (ranks.max_rank as i64 - expected).unsigned_abs() as f64,
        0.0,
        format!("max sampled rank {} vs dim_X - min leaf_codim = {expected}", ranks.max_rank),
    );
    b.agree("rank_parity", ranks.all_even, format!("rank counts {:?}", ranks.counts));
    b.observe("rank_near_threshold", ranks.near_threshold);

    // Open leaves against the compact-Cartan oracle.
    let (rk, rg) = cartan_ranks(&mrf, seed, tol.get("nullspace"));
    b.agree(
        "open_leaf_oracle",
        open_leaf_test(&rf) == (rk == rg),
        format!("open_leaf_test {} vs rank k0 {rk}, rank g0 {rg}", open_leaf_test(&rf)),
    );

    // Stabilizers at representatives.
    let mut mismatches = 0;
    let mut found = 0;
    let mut inconclusive = Vec::new();
    for psi in twisted_involutions(&rf, DEFAULT_WEYL_CAP).map_err(AtlasError::from)? {
        let class = orbit_class(&rf, &psi)?;
        match representative_for(&mrf, &psi) {
            Ok(u) => {
                found += 1;
                let an = an_stabilizer_dim(&mrf, &u, tol.get("nullspace"));
                let tan = tan_stabilizer_dim(&mrf, &u, tol.get("nullspace"));
                if an != class.a + class.codim_y || tan != class.t + class.a + class.codim_y {
                    mismatches += 1;
                }
            }
            Err(MatrixLieError::NoRepresentative(_)) => inconclusive.push(psi.to_string()),
            Err(e) => return Err(e.into()),
        }
    }
    b.check(
        "stabilizer_dims",
        mismatches as f64,
        0.0,
        format!("{found} representatives, {} inconclusive", inconclusive.len()),
    );
    if !inconclusive.is_empty() {
        b.observe("inconclusive_representatives", inconclusive.join(", "));
    }

    // Leaf tangency at sampled points.
    let mut tang: f64 = 0.0;
    for k in 0..samples.min(20) {
        let u = haar_su(n, &mut sample_rng(seed, (2 << 32) + k as u64));
        tang = tang.max(leaf_tangency(&ps, &u, tol.get("rank"))?.residual);
    }
    b.check("leaf_tangency", tang, tol.get("tangency"), "image of pi_0 vs projected orbit".into());

    // Jacobi in exponential charts.
    let jac_tol = if n == 2 { tol.get("jacobi_su2") } else { tol.get("jacobi") };
    let points = if n == 2 { samples.min(20) } else { samples.min(10) };
    let mut jac: f64 = 0.0;
    for k in 0..points {
        let u0 = haar_su(n, &mut sample_rng(seed, (3 << 32) + k as u64));
        let chart = ExpChart::new(&ps, u0);
        let origin = vec![0.0; chart.dim()];
        jac = jac.max(jacobiator(|y| chart.bivector(y), &origin, tol.get("jacobi_step"))?);
    }
    b.check("jacobi", jac, jac_tol, format!("{points} chart points"));

    if mrf.kind == Kind::Split && n == 2 {
        su2_checks(&mut b, &ps, seed, samples, tol)?;
    }
    if mrf.kind == (Kind::Unitary { p: 1, q: 1 }) {
        let first = hermitian_fit(&ps, seed, 4 << 32, samples)?;
        let second = hermitian_fit(&ps, seed, 5 << 32, samples)?;
        b.check("hermitian_fit", first.residual, tol.get("hermitian"), format!("{samples} points"));
        b.check(
            "hermitian_refit",
            (first.b - second.b).abs(),
            tol.get("hermitian"),
            "disjoint sample".into(),
        );
        b.observe("hermitian_b", format!("{:.12}", first.b));
    }

    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        seed,
        form: cfg.form.clone(),
        samples,
        dim_x: mrf.dim_x(),
        checks: b.checks,
        observations: b.observations,
    })
}

fn su2_checks(b: &mut Battery, ps: &PoissonStructure, seed: u64, samples: usize, tol: &Tolerances) -> Result<(), VerifyError> {
    let mut rel: f64 = 0.0;
    let mut abs: f64 = 0.0;
    let mut off_rank_ok = true;
    for k in 0..samples {
        let u = haar_su(2, &mut sample_rng(seed, (6 << 32) + k as u64));
        let cmp = compare_su2(ps, &u)?;
        rel = rel.max(cmp.relative_error());
        abs = abs.max(cmp.absolute_error());
        let r = numerical_rank(&ps.pi_0(&u)?, tol.get("rank")).rank;
        if r != 2 {
            off_rank_ok = false;
        }
    }
    b.check("su2_closed_form", rel, tol.get("chart_rel"), format!("max absolute error {abs:e}"));
    b.agree("su2_rank_off_equator", off_rank_ok, "rank 2 at every sampled point".into());
    let mut eq_ok = true;
    for k in 0..samples {
        let theta = std::f64::consts::TAU * k as f64 / samples as f64;
        let u = su2_point(Complex64::from_polar(1.0, theta));
        if numerical_rank(&ps.pi_0(&u)?, tol.get("rank")).rank != 0 {
            eq_ok = false;
        }
    }
    b.agree("su2_rank_equator", eq_ok, format!("{samples} points with |w| = 1"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let mut t = Tolerances::default();
        t.apply("rank=1e-6").unwrap();
        assert_eq!(t.get("rank"), 1e-6);
        assert!(matches!(t.apply("nope=1"), Err(VerifyError::UnknownTolerance(_))));
        assert!(matches!(t.apply("rank"), Err(VerifyError::BadOverride(_))));
    }

    #[test]
    fn sl2_battery_passes() {
        let mut cfg = VerifyConfig::new("sl(2,R)");
        cfg.samples = 20;
        let r = verify(&cfg).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn unknown_form() {
        assert!(matches!(
            verify(&VerifyConfig::new("so(3,2)")),
            Err(VerifyError::Matrix(MatrixLieError::NoRealization(_)))
        ));
    }
}
