//! Root systems and Weyl groups of finite type, computed exactly.
//!
//! Roots are integer vectors in the basis of simple roots. Simple-root indices
//! are 0-based in the Rust API and 1-based in every text or JSON rendering
//! (`s1`, `s2`, ...), following Bourbaki's numbering of the Dynkin diagrams.
//!
//! A [`WeylElement`] is identified by its matrix; its word is a witness.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intmat::IntMatrix;

/// Largest rank accepted by [`RootSystem::build`].
pub const DEFAULT_RANK_CAP: usize = 8;

/// Default bound on the number of Weyl group elements we are willing to list.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSysError {
    #[error("unsupported Cartan type {family}{rank}")]
    UnsupportedType { family: char, rank: usize },
    #[error("unsupported Cartan type: cannot parse {0:?}")]
    BadTypeName(String),
    #[error("rank {rank} exceeds the configured cap {cap}")]
    RankCap { rank: usize, cap: usize },
    #[error("not a Cartan matrix of finite type: {0}")]
    NotFiniteType(String),
    #[error("Weyl group exceeds cap {cap} (enumerated {partial} elements before stopping)")]
    WeylCapExceeded { cap: usize, partial: usize },
    #[error("Weyl group has order {order}, above the cap {cap}")]
    WeylOrderExceedsCap { order: u128, cap: usize },
    #[error("simple reflection index {index} out of range for rank {rank}")]
    BadIndex { index: usize, rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// Family letter plus rank, e.g. `A2`, `F4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    /// Checks the (family, rank) pair against the finite-type classification.
    /// `D3` is rejected in favour of `A3`.
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSysError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(RootSysError::UnsupportedType {
                family: family.letter(),
                rank,
            })
        }
    }

    /// Squared root lengths (short roots have length 2) and the off-diagonal
    /// entries of the symmetric form, in Bourbaki numbering.
    fn form(self) -> IntMatrix {
        let r = self.rank;
        let mut lengths = vec![2i64; r];
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        let chain = |edges: &mut Vec<(usize, usize, i64)>, upto: usize, w: i64| {
            for i in 0..upto.saturating_sub(1) {
                edges.push((i, i + 1, w));
            }
        };
        match self.family {
            Family::A => chain(&mut edges, r, -1),
            Family::B => {
                lengths.iter_mut().take(r - 1).for_each(|l| *l = 4);
                chain(&mut edges, r, -2);
            }
            Family::C => {
                lengths[r - 1] = 4;
                chain(&mut edges, r - 1, -1);
                edges.push((r - 2, r - 1, -2));
            }
            Family::D => {
                chain(&mut edges, r - 1, -1);
                edges.push((r - 3, r - 1, -1));
            }
            Family::E => {
                edges.push((0, 2, -1));
                edges.push((1, 3, -1));
                for i in 2..r - 1 {
                    edges.push((i, i + 1, -1));
                }
            }
            Family::F => {
                lengths = vec![4, 4, 2, 2];
                edges = vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)];
            }
            Family::G => {
                lengths = vec![2, 6];
                edges = vec![(0, 1, -3)];
            }
        }
        let mut form = IntMatrix::zeros(r);
        for (i, l) in lengths.iter().enumerate() {
            form[(i, i)] = *l;
        }
        for (i, j, w) in edges {
            form[(i, j)] = w;
            form[(j, i)] = w;
        }
        form
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootSysError;

    /// Parses `A2`, `d4`, `E6`, ...
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let bad = || RootSysError::BadTypeName(s.to_string());
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A reduced root system with its simple roots, positive roots, Cartan matrix
/// and invariant form.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: IntMatrix,
    form: IntMatrix,
    positive_roots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
    reflections: Vec<IntMatrix>,
}

impl RootSystem {
    /// Builds the root system of the given type with the default rank cap.
    pub fn build(family: Family, rank: usize) -> Result<Self, RootSysError> {
        Self::build_with_cap(family, rank, DEFAULT_RANK_CAP)
    }

    pub fn build_with_cap(family: Family, rank: usize, cap: usize) -> Result<Self, RootSysError> {
        let ty = CartanType::new(family, rank)?;
        if rank > cap {
            return Err(RootSysError::RankCap { rank, cap });
        }
        Self::from_type(ty)
    }

    pub fn from_type(ty: CartanType) -> Result<Self, RootSysError> {
        let form = ty.form();
        let r = ty.rank;
        let cartan = IntMatrix::from_fn(r, |i, j| 2 * form[(i, j)] / form[(i, i)]);
        Self::assemble(ty, cartan, form)
    }

    fn assemble(ty: CartanType, cartan: IntMatrix, form: IntMatrix) -> Result<Self, RootSysError> {
        check_finite_type(&cartan, &form)?;
        let r = ty.rank;
        // s_i(v) = v - <v, alpha_i^vee> alpha_i, so only row i differs from the identity.
        let reflections: Vec<IntMatrix> = (0..r)
            .map(|i| {
                let mut m = IntMatrix::identity(r);
                for j in 0..r {
                    m[(i, j)] -= cartan[(i, j)];
                }
                m
            })
            .collect();

        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push(e);
        }
        let mut head = 0;
        while head < queue.len() {
            let beta = queue[head].clone();
            head += 1;
            for s in &reflections {
                let img = s.apply(&beta);
                if img.iter().all(|&c| c >= 0) && seen.insert(img.clone()) {
                    queue.push(img);
                }
            }
        }
        let mut positive_roots = queue;
        positive_roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let root_index = positive_roots
            .iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), k))
            .collect();
        Ok(RootSystem {
            cartan_type: ty,
            cartan,
            form,
            positive_roots,
            root_index,
            reflections,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    /// `a_ij = <alpha_i^vee, alpha_j>`.
    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Symmetrized Cartan pairing, short roots of squared length 2.
    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    /// Positive roots ordered by height, then by descending coordinates, so that
    /// the simple roots come first in their natural order.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Complex dimension of the simple Lie algebra.
    pub fn dim_algebra(&self) -> usize {
        self.rank() + 2 * self.num_positive_roots()
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        e
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        if self.root_index.contains_key(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.root_index.contains_key(&neg)
    }

    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        self.root_index.contains_key(v)
    }

    /// `(u, v)` under the invariant form.
    pub fn inner(&self, u: &[i64], v: &[i64]) -> i64 {
        let fv = self.form.apply(v);
        u.iter().zip(&fv).map(|(a, b)| a * b).sum()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            word: Vec::new(),
            matrix: IntMatrix::identity(self.rank()),
        }
    }

    /// The simple reflection `s_i` (0-based `i`).
    pub fn reflect(&self, i: usize) -> Result<WeylElement, RootSysError> {
        let m = self.reflections.get(i).ok_or(RootSysError::BadIndex {
            index: i,
            rank: self.rank(),
        })?;
        Ok(WeylElement {
            word: vec![i],
            matrix: m.clone(),
        })
    }

    /// Product `s_{w[0]} s_{w[1]} ...`.
    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElement, RootSysError> {
        let mut w = self.identity();
        for &i in word {
            w = w.compose(&self.reflect(i)?);
        }
        Ok(w)
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|beta| w.matrix.apply(beta).iter().any(|&c| c < 0))
            .count()
    }

    /// True if `l(w s_i) < l(w)`, i.e. `w(alpha_i)` is negative.
    pub fn has_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        (0..self.rank()).any(|k| w.matrix[(k, i)] < 0)
    }

    /// Re-expresses `w` with a canonical reduced word obtained by peeling off
    /// the smallest right descent at each step.
    pub fn normalize(&self, w: &WeylElement) -> WeylElement {
        let mut m = w.matrix.clone();
        let mut rev = Vec::new();
        loop {
            let probe = WeylElement {
                word: Vec::new(),
                matrix: m.clone(),
            };
            let Some(i) = (0..self.rank()).find(|&i| self.has_right_descent(&probe, i)) else {
                break;
            };
            rev.push(i);
            m = &m * &self.reflections[i];
        }
        debug_assert!(m.is_identity());
        rev.reverse();
        WeylElement {
            word: rev,
            matrix: w.matrix.clone(),
        }
    }

    /// Recovers the Weyl element with matrix `m`, or `None` if `m` is not in
    /// the Weyl group.
    pub fn element_from_matrix(&self, m: &IntMatrix) -> Option<WeylElement> {
        if m.dim() != self.rank() {
            return None;
        }
        let mut cur = m.clone();
        for _ in 0..=self.num_positive_roots() {
            if cur.is_identity() {
                return Some(self.normalize(&WeylElement {
                    word: Vec::new(),
                    matrix: m.clone(),
                }));
            }
            let probe = WeylElement {
                word: Vec::new(),
                matrix: cur.clone(),
            };
            let i = (0..self.rank()).find(|&i| self.has_right_descent(&probe, i))?;
            cur = &cur * &self.reflections[i];
        }
        None
    }

    /// Longest element of the parabolic subgroup generated by `subset`,
    /// returned with a reduced word.
    pub fn longest_element(&self, subset: &[usize]) -> WeylElement {
        let mut w = self.identity();
        loop {
            let next = subset
                .iter()
                .copied()
                .find(|&i| !self.has_right_descent(&w, i));
            match next {
                Some(i) => w = w.compose(&self.reflections_elem(i)),
                None => return w,
            }
        }
    }

    fn reflections_elem(&self, i: usize) -> WeylElement {
        WeylElement {
            word: vec![i],
            matrix: self.reflections[i].clone(),
        }
    }

    pub fn longest(&self) -> WeylElement {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.longest_element(&all)
    }

    /// Lazily lists the Weyl group by increasing length. Each element appears
    /// once with a reduced word; the sequence is deterministic. Yields an
    /// error item (and then stops) once more than `cap` elements were produced.
    pub fn weyl_elements(&self, cap: usize) -> WeylIter<'_> {
        WeylIter {
            rs: self,
            cap,
            level: vec![self.identity()],
            pos: 0,
            produced: 0,
            done: false,
        }
    }

    /// Product of the degrees of the basic invariants.
    pub fn weyl_order(&self) -> u128 {
        let r = self.rank() as u128;
        let degrees: Vec<u128> = match self.cartan_type.family {
            Family::A => (2..=r + 1).collect(),
            Family::B | Family::C => (1..=r).map(|k| 2 * k).collect(),
            Family::D => (1..r).map(|k| 2 * k).chain([r]).collect(),
            Family::E => match r {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
        };
        degrees.iter().product()
    }

    /// Fails fast when the group is known to exceed `cap`.
    pub fn check_weyl_cap(&self, cap: usize) -> Result<(), RootSysError> {
        let order = self.weyl_order();
        if order > cap as u128 {
            Err(RootSysError::WeylOrderExceedsCap { order, cap })
        } else {
            Ok(())
        }
    }

    /// Collects [`RootSystem::weyl_elements`].
    pub fn enumerate_weyl(&self, cap: usize) -> Result<Vec<WeylElement>, RootSysError> {
        self.weyl_elements(cap).collect()
    }
}

fn check_finite_type(cartan: &IntMatrix, form: &IntMatrix) -> Result<(), RootSysError> {
    let r = cartan.dim();
    for i in 0..r {
        if cartan[(i, i)] != 2 {
            return Err(RootSysError::NotFiniteType(format!("diagonal entry {i} is not 2")));
        }
        for j in 0..r {
            if i != j && cartan[(i, j)] > 0 {
                return Err(RootSysError::NotFiniteType(format!("positive entry at ({i},{j})")));
            }
        }
    }
    for k in 1..=r {
        let minor = IntMatrix::from_fn(k, |i, j| form[(i, j)]);
        if minor.determinant() <= 0 {
            return Err(RootSysError::NotFiniteType(format!("leading minor {k} not positive")));
        }
    }
    Ok(())
}

/// Element of a Weyl group: a word in simple reflections together with the
/// integer matrix by which it acts on simple-root coordinates.
///
/// Equality, ordering and hashing use the matrix only.
#[derive(Clone)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: IntMatrix,
}

impl WeylElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// 1-based word, as used in reports.
    pub fn word_one_based(&self) -> Vec<usize> {
        self.word.iter().map(|i| i + 1).collect()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `self * other`: act by `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            word,
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        let mut matrix = IntMatrix::identity(self.matrix.dim());
        for &i in &word {
            matrix = &matrix * &rs.reflections[i];
        }
        WeylElement { word, matrix }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.apply(v)
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state)
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({self})")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Breadth-first listing of a Weyl group by length. Only two consecutive
/// length levels are held in memory.
pub struct WeylIter<'a> {
    rs: &'a RootSystem,
    cap: usize,
    level: Vec<WeylElement>,
    pos: usize,
    produced: usize,
    done: bool,
}

impl Iterator for WeylIter<'_> {
    type Item = Result<WeylElement, RootSysError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.pos == self.level.len() {
            // Elements of length k+1 are w s_i with w of length k and w(alpha_i) > 0.
            let mut next = Vec::new();
            let mut seen = HashSet::new();
            for w in &self.level {
                for i in 0..self.rs.rank() {
                    if !self.rs.has_right_descent(w, i) {
                        let v = w.compose(&self.rs.reflections_elem(i));
                        if seen.insert(v.matrix.clone()) {
                            next.push(v);
                        }
                    }
                }
            }
            if next.is_empty() {
                self.done = true;
                return None;
            }
            self.level = next;
            self.pos = 0;
        }
        if self.produced == self.cap {
            self.done = true;
            return Some(Err(RootSysError::WeylCapExceeded {
                cap: self.cap,
                partial: self.produced,
            }));
        }
        let w = self.level[self.pos].clone();
        self.pos += 1;
        self.produced += 1;
        Some(Ok(w))
    }
}
