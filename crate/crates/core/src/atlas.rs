//! Leaf stratification data of `(U/K0, pi_0)` from a Satake diagram.
//!
//! Each orbit class is labelled by a twisted involution `psi` (an element of
//! the Weyl group with `(psi * tau_star)^2 = 1`). Its invariants:
//!
//! * `m = psi * tau_star`, `a = dim ker(m - 1)`, `t = dim ker(m + 1)`;
//! * `codim_Y = l(psi * w_b * w0)`;
//! * `leaf_dim = 2|positive roots| - codim_Y - dim k0 + t`;
//! * `leaf_codim = a + codim_Y`, `family_dim = a`.
//!
//! Every twisted involution is listed. Not all of them come from an orbit:
//! classes with an odd or out-of-range `leaf_dim` are flagged rather than
//! dropped.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::intmat::IntMatrix;
use crate::rootsys::{RootSysError, WeylElement, DEFAULT_WEYL_CAP};
use crate::satake::{validate, Dims, RealForm, SatakeDiagram, SatakeError, ValidationReport};

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error(transparent)]
    RootSys(#[from] RootSysError),
    #[error(transparent)]
    Satake(#[from] SatakeError),
    #[error("diagram {label} fails validation: {failed}")]
    Invalid { label: String, failed: String, report: ValidationReport },
    #[error("{0} is not a twisted involution")]
    NotTwisted(String),
}

fn ser_word<S: Serializer>(w: &WeylElement, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(w.word_one_based())
}

/// Invariants attached to one twisted involution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    #[serde(rename = "psi_word", serialize_with = "ser_word")]
    pub psi: WeylElement,
    #[serde(rename = "codim_Y")]
    pub codim_y: usize,
    pub a: usize,
    pub t: usize,
    pub leaf_dim: i64,
    pub leaf_codim: i64,
    pub family_dim: usize,
    pub is_open: bool,
    pub is_closed_class: bool,
    /// `leaf_dim` is even.
    pub parity_ok: bool,
    /// `0 <= leaf_dim <= dim_X` and `codim_Y <= l(w0) - l(w_b)`.
    pub bounds_ok: bool,
}

impl OrbitClass {
    /// Passes every necessary condition for coming from an actual orbit.
    pub fn admissible(&self) -> bool {
        self.parity_ok && self.bounds_ok
    }
}

/// Full stratification report for one real form.
#[derive(Debug, Clone, Serialize)]
pub struct AtlasReport {
    pub label: String,
    pub cartan_type: String,
    pub diagram: String,
    pub dims: Dims,
    pub num_positive_roots: usize,
    pub w0_word: Vec<usize>,
    pub wb_word: Vec<usize>,
    pub sigma: Vec<usize>,
    pub tau_star: Vec<Vec<i64>>,
    pub restricted_roots: Vec<RestrictedRoot>,
    pub classes: Vec<OrbitClass>,
    pub has_open_leaves: bool,
    /// Index into `classes`.
    pub largest_leaf_class: usize,
    pub open_class_count_note: String,
    pub notes: Vec<String>,
}

/// A positive restricted root with rational coordinates rendered as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictedRoot {
    pub coords: Vec<String>,
    pub multiplicity: usize,
}

impl AtlasReport {
    pub fn class_by_word(&self, word: &[usize]) -> Option<&OrbitClass> {
        self.classes.iter().find(|c| c.psi.word_one_based() == word)
    }

    pub fn closed_class(&self) -> &OrbitClass {
        self.classes
            .iter()
            .find(|c| c.is_closed_class)
            .expect("identity is always a twisted involution")
    }

    pub fn open_classes(&self) -> impl Iterator<Item = &OrbitClass> {
        self.classes.iter().filter(|c| c.is_open)
    }

    pub fn largest(&self) -> &OrbitClass {
        &self.classes[self.largest_leaf_class]
    }

    /// Smallest `leaf_codim` among admissible classes.
    pub fn min_admissible_leaf_codim(&self) -> Option<i64> {
        self.classes
            .iter()
            .filter(|c| c.admissible())
            .map(|c| c.leaf_codim)
            .min()
    }
}

/// `psi * tau_star`.
fn twisted_matrix(rf: &RealForm, psi: &WeylElement) -> IntMatrix {
    psi.matrix() * rf.tau_star()
}

/// All `w` in the Weyl group with `(w * tau_star)^2 = 1`, in enumeration order.
pub fn twisted_involutions(rf: &RealForm, cap: usize) -> Result<Vec<WeylElement>, RootSysError> {
    let rs = rf.root_system();
    rs.check_weyl_cap(cap)?;
    let mut out = Vec::new();
    for w in rs.weyl_elements(cap) {
        let w = w?;
        let m = twisted_matrix(rf, &w);
        if (&m * &m).is_identity() {
            out.push(rs.normalize(&w));
        }
    }
    Ok(out)
}

/// Computes the invariants of the class of `psi`.
pub fn orbit_class(rf: &RealForm, psi: &WeylElement) -> Result<OrbitClass, AtlasError> {
    let rs = rf.root_system();
    let m = twisted_matrix(rf, psi);
    if !(&m * &m).is_identity() {
        return Err(AtlasError::NotTwisted(psi.to_string()));
    }
    let a = m.add_scalar_identity(-1).nullity();
    let t = m.add_scalar_identity(1).nullity();
    let codim_y = rs.length(&psi.compose(rf.w_b()).compose(rf.w0()));
    let dims = rf.dims();
    let leaf_dim =
        2 * rs.num_positive_roots() as i64 - codim_y as i64 - dims.dim_k0 as i64 + t as i64;
    let leaf_codim = dims.dim_x as i64 - leaf_dim;
    let max_codim = rs.length(rf.w0()) - rs.length(rf.w_b());
    Ok(OrbitClass {
        psi: rs.normalize(psi),
        codim_y,
        a,
        t,
        leaf_dim,
        leaf_codim,
        family_dim: a,
        is_open: codim_y == 0 && a == 0,
        is_closed_class: psi.is_identity(),
        parity_ok: leaf_dim % 2 == 0,
        bounds_ok: leaf_dim >= 0 && leaf_dim <= dims.dim_x as i64 && codim_y <= max_codim,
    })
}

/// True iff `w0 * sigma` fixes no nonzero vector, i.e. the class of
/// `psi = w0 * w_b` has `a = 0`. Equivalent to the existence of a compact
/// Cartan subalgebra.
pub fn open_leaf_test(rf: &RealForm) -> bool {
    let m = rf.w0().matrix() * &rf.sigma_matrix();
    m.add_scalar_identity(-1).nullity() == 0
}

/// Validates the diagram and builds the full report with the default Weyl cap.
pub fn atlas(sd: &SatakeDiagram) -> Result<AtlasReport, AtlasError> {
    atlas_with_cap(sd, DEFAULT_WEYL_CAP)
}

pub fn atlas_with_cap(sd: &SatakeDiagram, cap: usize) -> Result<AtlasReport, AtlasError> {
    let report = validate(sd);
    if !report.passed() {
        let failed: Vec<&str> = report.failures().map(|c| c.name).collect();
        return Err(AtlasError::Invalid {
            label: sd.label.clone(),
            failed: failed.join(", "),
            report,
        });
    }
    let rf = RealForm::new(sd.clone())?;
    atlas_for(&rf, cap)
}

/// Report for an already constructed real form.
pub fn atlas_for(rf: &RealForm, cap: usize) -> Result<AtlasReport, AtlasError> {
    let rs = rf.root_system();
    let mut classes = twisted_involutions(rf, cap)?
        .iter()
        .map(|psi| orbit_class(rf, psi))
        .collect::<Result<Vec<_>, _>>()?;
    classes.sort_by(|x, y| {
        x.codim_y
            .cmp(&y.codim_y)
            .then_with(|| x.psi.word().cmp(y.psi.word()))
    });

    let has_open = open_leaf_test(rf);
    let largest = classes
        .iter()
        .position(|c| c.is_open)
        .or_else(|| {
            let pool: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].admissible()).collect();
            let pool = if pool.is_empty() { (0..classes.len()).collect() } else { pool };
            pool.into_iter().min_by_key(|&i| (classes[i].leaf_codim, i))
        })
        .expect("at least one class");

    let open_count = classes.iter().filter(|c| c.is_open).count();
    let open_note = if has_open {
        format!(
            "{open_count} open class; it may contain several open orbits and the number of open leaves is not computed"
        )
    } else {
        "no open leaves: g0 has no compact Cartan subalgebra".to_string()
    };

    let mut notes = vec![
        "every symplectic leaf is contractible".to_string(),
        "codim_Y = l(psi w_b w0) is the real codimension of the G0-orbit in the flag variety".to_string(),
        "leaf_dim = dim(orbit) - dim K0 + t and leaf_codim = a + codim_Y".to_string(),
        "family_dim = a is the dimension of the torus parametrizing leaves in one family".to_string(),
        "classes are keyed by psi; a class may correspond to several orbits and no orbit count is claimed".to_string(),
        "the largest leaves are diffeomorphic to A0'N0 and lie over an open orbit".to_string(),
    ];
    if has_open {
        notes.push("open leaves are diffeomorphic to G0/K0".to_string());
    }
    let flagged: Vec<String> = classes
        .iter()
        .filter(|c| !c.admissible())
        .map(|c| format!("[{}]", c.psi))
        .collect();
    if !flagged.is_empty() {
        notes.push(format!(
            "twisted involutions not realized by any leaf (odd or out-of-range leaf_dim): {}",
            flagged.join(" ")
        ));
    }

    let restricted_roots = rf
        .positive_restricted_roots()
        .map(|(v, m)| RestrictedRoot {
            coords: v.iter().map(|c| c.to_string()).collect(),
            multiplicity: m,
        })
        .collect();

    Ok(AtlasReport {
        label: rf.label().to_string(),
        cartan_type: rf.diagram().cartan_type.to_string(),
        diagram: rf.diagram().decorations(),
        dims: rf.dims(),
        num_positive_roots: rs.num_positive_roots(),
        w0_word: rf.w0().word_one_based(),
        wb_word: rf.w_b().word_one_based(),
        sigma: rf.sigma().iter().map(|s| s + 1).collect(),
        tau_star: rf.tau_star().rows(),
        restricted_roots,
        classes,
        has_open_leaves: has_open,
        largest_leaf_class: largest,
        open_class_count_note: open_note,
        notes,
    })
}
