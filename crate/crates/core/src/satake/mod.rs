//! Satake diagrams and the data they induce on the root space.
//!
//! A diagram is a Dynkin diagram with some nodes painted black and an
//! involutive pairing (arrows) on the white nodes. From it we build the
//! automorphism `sigma` (arrows on white nodes, opposition involution on the
//! black subdiagram), the longest black element `w_b`, and the involution
//! `tau_star = w_b * sigma` on simple-root coordinates. Everything here is
//! exact.

mod catalog;
mod classical;

pub use catalog::{
    builtin_catalog, builtin_catalog_text, catalog_hash, format_arrows, format_index_set,
    load_catalog, parse_arrows, parse_index_set, Catalog,
};
pub use classical::classical_stanzas;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::intmat::IntMatrix;
use crate::rootsys::{CartanType, RootSysError, RootSystem, WeylElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SatakeError {
    #[error(transparent)]
    RootSys(#[from] RootSysError),
    #[error("invalid diagram {label}: {reason}")]
    Structure { label: String, reason: String },
    #[error("inconsistent Satake data for {label}: {reason}")]
    Inconsistent { label: String, reason: String },
    #[error("{label} is the compact real form; U/K0 degenerates to a point")]
    Compact { label: String },
    #[error("catalog line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("catalog line {line}: duplicate label {label:?}")]
    Duplicate { line: usize, label: String },
}

/// Decorated Dynkin diagram. Node indices are 0-based here and 1-based in
/// text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatakeDiagram {
    pub label: String,
    pub cartan_type: CartanType,
    pub black: BTreeSet<usize>,
    /// Unordered pairs of white nodes, stored with `i < j`.
    pub arrows: BTreeSet<(usize, usize)>,
}

impl SatakeDiagram {
    pub fn new(
        label: impl Into<String>,
        cartan_type: CartanType,
        black: impl IntoIterator<Item = usize>,
        arrows: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        SatakeDiagram {
            label: label.into(),
            cartan_type,
            black: black.into_iter().collect(),
            arrows: arrows
                .into_iter()
                .map(|(i, j)| (i.min(j), i.max(j)))
                .collect(),
        }
    }

    /// Black nodes and arrows in 1-based set notation, e.g. `black={2}; arrows={(1,3)}`.
    pub fn decorations(&self) -> String {
        format!(
            "black={}; arrows={}",
            format_index_set(&self.black),
            format_arrows(&self.arrows)
        )
    }

    /// One catalog stanza describing this diagram.
    pub fn to_stanza(&self) -> String {
        format!(
            "name={}; type={}; {}",
            self.label,
            self.cartan_type,
            self.decorations()
        )
    }

    fn structure_error(&self, reason: impl Into<String>) -> SatakeError {
        SatakeError::Structure {
            label: self.label.clone(),
            reason: reason.into(),
        }
    }

    /// Index range, arrows only on white nodes, arrows forming a matching.
    pub fn check_structure(&self) -> Result<(), SatakeError> {
        let r = self.cartan_type.rank;
        if let Some(b) = self.black.iter().find(|&&b| b >= r) {
            return Err(self.structure_error(format!("black node {} out of range", b + 1)));
        }
        let mut used = BTreeSet::new();
        for &(i, j) in &self.arrows {
            if i == j {
                return Err(self.structure_error(format!("arrow ({},{}) is a loop", i + 1, j + 1)));
            }
            for k in [i, j] {
                if k >= r {
                    return Err(self.structure_error(format!("arrow node {} out of range", k + 1)));
                }
                if self.black.contains(&k) {
                    return Err(self.structure_error(format!("arrow touches black node {}", k + 1)));
                }
                if !used.insert(k) {
                    return Err(self.structure_error(format!("node {} carries two arrows", k + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn is_compact(&self) -> bool {
        self.black.len() == self.cartan_type.rank
    }
}

impl fmt::Display for SatakeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_stanza())
    }
}

/// Dimension bookkeeping for `g0 = k0 + p0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub dim_g: usize,
    pub dim_k0: usize,
    pub dim_p0: usize,
    pub real_rank: usize,
    #[serde(rename = "dim_X")]
    pub dim_x: usize,
}

/// A validated noncompact real form: the diagram together with everything it
/// induces on the root system.
#[derive(Debug, Clone)]
pub struct RealForm {
    diagram: SatakeDiagram,
    rs: RootSystem,
    sigma: Vec<usize>,
    w0: WeylElement,
    w_b: WeylElement,
    tau_star: IntMatrix,
    restricted: BTreeMap<Vec<Rational64>, usize>,
    dims: Dims,
}

/// Intermediate data shared by [`RealForm::new`] and [`validate`].
struct Induced {
    rs: RootSystem,
    sigma: Vec<usize>,
    w0: WeylElement,
    w_b: WeylElement,
    tau_star: IntMatrix,
}

fn induce(sd: &SatakeDiagram) -> Result<Induced, SatakeError> {
    sd.check_structure()?;
    let rs = RootSystem::from_type(sd.cartan_type)?;
    let r = rs.rank();
    let black: Vec<usize> = sd.black.iter().copied().collect();
    let w_b = rs.longest_element(&black);
    let w0 = rs.longest();

    let mut sigma: Vec<usize> = (0..r).collect();
    for &(i, j) in &sd.arrows {
        sigma[i] = j;
        sigma[j] = i;
    }
    for &j in &black {
        let img = w_b.apply(&rs.simple_root(j));
        let k = (0..r)
            .find(|&k| img.iter().enumerate().all(|(m, &c)| c == if m == k { -1 } else { 0 }))
            .ok_or_else(|| SatakeError::Inconsistent {
                label: sd.label.clone(),
                reason: format!("w_b does not send alpha_{} to minus a simple root", j + 1),
            })?;
        sigma[j] = k;
    }
    let tau_star = w_b.matrix() * &permutation_matrix(&sigma);
    Ok(Induced {
        rs,
        sigma,
        w0,
        w_b,
        tau_star,
    })
}

/// Matrix sending `alpha_j` to `alpha_{sigma(j)}`.
pub fn permutation_matrix(sigma: &[usize]) -> IntMatrix {
    let mut m = IntMatrix::zeros(sigma.len());
    for (j, &s) in sigma.iter().enumerate() {
        m[(s, j)] = 1;
    }
    m
}

fn sigma_is_automorphism(rs: &RootSystem, sigma: &[usize]) -> bool {
    let a = rs.cartan_matrix();
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return false;
        }
        seen[s] = true;
    }
    (0..n).all(|i| (0..n).all(|j| a[(sigma[i], sigma[j])] == a[(i, j)]))
}

fn black_negated(ind: &Induced, sd: &SatakeDiagram) -> bool {
    sd.black.iter().all(|&j| {
        let v = ind.tau_star.apply(&ind.rs.simple_root(j));
        v.iter().enumerate().all(|(m, &c)| c == if m == j { -1 } else { 0 })
    })
}

/// First positive root `beta` with `tau*(beta) != -beta` whose image is not a
/// positive root.
fn white_positivity_violation(ind: &Induced) -> Option<Vec<i64>> {
    ind.rs
        .positive_roots()
        .iter()
        .find(|beta| {
            let img = ind.tau_star.apply(beta);
            let neg: Vec<i64> = beta.iter().map(|x| -x).collect();
            img != neg && !ind.rs.is_positive_root(&img)
        })
        .cloned()
}

/// For every sigma-fixed white node `j`, the sum over positive black roots
/// `beta` of `2(alpha_j, beta)/(beta, beta)` must be even. Returns the first
/// offending node.
fn parity_violation(ind: &Induced, sd: &SatakeDiagram) -> Option<usize> {
    let r = ind.rs.rank();
    let black_roots: Vec<&Vec<i64>> = ind
        .rs
        .positive_roots()
        .iter()
        .filter(|beta| (0..r).all(|k| beta[k] == 0 || sd.black.contains(&k)))
        .collect();
    (0..r)
        .filter(|&j| !sd.black.contains(&j) && ind.sigma[j] == j)
        .find(|&j| {
            let aj = ind.rs.simple_root(j);
            let total: i64 = black_roots
                .iter()
                .map(|beta| 2 * ind.rs.inner(&aj, beta) / ind.rs.inner(beta, beta))
                .sum();
            total % 2 != 0
        })
}

fn commute(a: &IntMatrix, b: &IntMatrix) -> bool {
    a * b == b * a
}

impl RealForm {
    /// Builds and checks the induced data. Fails if the diagram is malformed,
    /// compact, or if `tau_star` violates one of the defining conditions:
    /// involution, black roots negated, remaining positive roots kept positive.
    pub fn new(diagram: SatakeDiagram) -> Result<Self, SatakeError> {
        let ind = induce(&diagram)?;
        if diagram.is_compact() {
            return Err(SatakeError::Compact {
                label: diagram.label.clone(),
            });
        }
        let bad = |reason: String| SatakeError::Inconsistent {
            label: diagram.label.clone(),
            reason,
        };
        if !sigma_is_automorphism(&ind.rs, &ind.sigma) {
            return Err(bad("arrows do not define a diagram automorphism".into()));
        }
        if !(&ind.tau_star * &ind.tau_star).is_identity() {
            return Err(bad("tau_star is not an involution".into()));
        }
        if !black_negated(&ind, &diagram) {
            return Err(bad("tau_star does not negate the black simple roots".into()));
        }
        if let Some(beta) = white_positivity_violation(&ind) {
            return Err(bad(format!("tau_star sends positive root {beta:?} outside the positive roots")));
        }

        let restricted = restricted_roots(&ind.rs, &ind.tau_star);
        let real_rank = ind.tau_star.add_scalar_identity(1).rank();
        let positive_mult: usize = ind
            .rs
            .positive_roots()
            .iter()
            .filter(|beta| ind.tau_star.apply(beta).iter().zip(beta.iter()).any(|(x, y)| x + y != 0))
            .count();
        let dim_g = ind.rs.dim_algebra();
        let dim_p0 = real_rank + positive_mult;
        let dims = Dims {
            dim_g,
            dim_k0: dim_g - dim_p0,
            dim_p0,
            real_rank,
            dim_x: dim_p0,
        };
        Ok(RealForm {
            diagram,
            rs: ind.rs,
            sigma: ind.sigma,
            w0: ind.w0,
            w_b: ind.w_b,
            tau_star: ind.tau_star,
            restricted,
            dims,
        })
    }

    pub fn diagram(&self) -> &SatakeDiagram {
        &self.diagram
    }

    pub fn label(&self) -> &str {
        &self.diagram.label
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Diagram automorphism as a node permutation (0-based).
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma_matrix(&self) -> IntMatrix {
        permutation_matrix(&self.sigma)
    }

    pub fn w0(&self) -> &WeylElement {
        &self.w0
    }

    pub fn w_b(&self) -> &WeylElement {
        &self.w_b
    }

    pub fn tau_star(&self) -> &IntMatrix {
        &self.tau_star
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    /// Every nonzero projection `(alpha + tau*(alpha))/2` over all roots, with
    /// the number of roots landing on it.
    pub fn restricted_roots(&self) -> &BTreeMap<Vec<Rational64>, usize> {
        &self.restricted
    }

    /// Restricted roots with nonnegative coordinates.
    pub fn positive_restricted_roots(&self) -> impl Iterator<Item = (&Vec<Rational64>, usize)> {
        self.restricted
            .iter()
            .filter(|(v, _)| v.iter().all(|c| *c >= Rational64::from_integer(0)))
            .map(|(v, m)| (v, *m))
    }
}

/// `P = (1 + tau*)/2` applied to every root; zero images are dropped.
fn restricted_roots(rs: &RootSystem, tau: &IntMatrix) -> BTreeMap<Vec<Rational64>, usize> {
    let mut out = BTreeMap::new();
    for beta in rs.positive_roots() {
        let img = tau.apply(beta);
        if img.iter().zip(beta).all(|(x, y)| x + y == 0) {
            continue;
        }
        let v: Vec<Rational64> = img
            .iter()
            .zip(beta)
            .map(|(x, y)| Rational64::new(x + y, 2))
            .collect();
        let neg: Vec<Rational64> = v.iter().map(|c| -c).collect();
        *out.entry(v).or_insert(0) += 1;
        *out.entry(neg).or_insert(0) += 1;
    }
    out
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Pass/fail record for every structural condition on a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub label: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Names of the checks run by [`validate`], in report order.
pub const CHECK_NAMES: [&str; 11] = [
    "structure",
    "noncompact",
    "sigma_automorphism",
    "tau_involution",
    "black_negated",
    "white_positive",
    "araki_parity",
    "tau_w0_commute",
    "tau_wb_commute",
    "w0_wb_commute",
    "length_identity",
];

/// Runs every check and records the outcome. Never fails: problems are data.
pub fn validate(sd: &SatakeDiagram) -> ValidationReport {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        checks.push(Check { name, passed, detail })
    };
    let ind = match induce(sd) {
        Ok(ind) => ind,
        Err(e) => {
            push("structure", false, e.to_string());
            for name in &CHECK_NAMES[1..] {
                push(name, false, "skipped".into());
            }
            return ValidationReport {
                label: sd.label.clone(),
                checks,
            };
        }
    };
    push("structure", true, String::new());
    push(
        "noncompact",
        !sd.is_compact(),
        if sd.is_compact() { "every node is black".into() } else { String::new() },
    );
    push("sigma_automorphism", sigma_is_automorphism(&ind.rs, &ind.sigma), String::new());
    push("tau_involution", (&ind.tau_star * &ind.tau_star).is_identity(), String::new());
    push("black_negated", black_negated(&ind, sd), String::new());
    let wp = white_positivity_violation(&ind);
    push(
        "white_positive",
        wp.is_none(),
        wp.map(|b| format!("image of {b:?} is not positive")).unwrap_or_default(),
    );
    let par = parity_violation(&ind, sd);
    push(
        "araki_parity",
        par.is_none(),
        par.map(|j| format!("odd pairing at fixed white node {}", j + 1)).unwrap_or_default(),
    );
    let w0 = ind.w0.matrix();
    let wb = ind.w_b.matrix();
    push("tau_w0_commute", commute(&ind.tau_star, w0), String::new());
    push("tau_wb_commute", commute(&ind.tau_star, wb), String::new());
    push("w0_wb_commute", commute(w0, wb), String::new());
    let l0 = ind.rs.length(&ind.w0);
    let lb = ind.rs.length(&ind.w_b);
    let lbw = ind.rs.length(&ind.w_b.compose(&ind.w0));
    push(
        "length_identity",
        lbw + lb == l0,
        format!("l(w_b w0) = {lbw}, l(w0) - l(w_b) = {}", l0 as i64 - lb as i64),
    );
    ValidationReport {
        label: sd.label.clone(),
        checks,
    }
}
