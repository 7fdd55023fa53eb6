//! Circle subgroups of the torus, freeness, and the Koszul-complex
//! computation of `H^*(Z_K / S^1)`.
//!
//! A circle subgroup is recorded by its weight vector
//! `s ∈ ℤ^m`, `H = {(t^{s_1},..,t^{s_m})}`. When some `s_v = ±1` the
//! projection `T^m -> T^m/H` is represented by the integer matrix
//! `Λ = (-s_v·s | I_{m-1})` (columns permuted so the pivot sits at `v`),
//! and the cohomology of the quotient is the Tor of the Stanley-Reisner
//! ring over the polynomial ring on the rows of `Λ`. That Tor is computed
//! here by an explicitly truncated Koszul complex: exterior generators
//! `y_1..y_r` against monomials `u^a` whose support is a face, with
//! `d(y_j) = ℓ_j = Σ_i λ_{ji} u_i`.

use crate::chain::{max_cells, ChainComplex, Direction, HomologySummary};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::simplicial::{Face, SimplicialComplex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Weights of a circle subgroup `H = {(t^{s_1},..,t^{s_m})} ⊆ T^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WeightsJson", into = "WeightsJson")]
pub struct WeightVector(Vec<i64>);

#[derive(Serialize, Deserialize)]
struct WeightsJson {
    s: Vec<i64>,
}

impl TryFrom<WeightsJson> for WeightVector {
    type Error = Error;
    fn try_from(raw: WeightsJson) -> Result<Self> {
        WeightVector::new(raw.s)
    }
}

impl From<WeightVector> for WeightsJson {
    fn from(w: WeightVector) -> Self {
        WeightsJson { s: w.0 }
    }
}

impl WeightVector {
    pub fn new(s: Vec<i64>) -> Result<Self> {
        if s.is_empty() || s.iter().all(|&x| x == 0) {
            return Err(Error::InvalidParameter(
                "weight vector must be nonzero".into(),
            ));
        }
        Ok(WeightVector(s))
    }

    /// The diagonal circle `S^1_d`: all weights one.
    pub fn diagonal(m: usize) -> Self {
        WeightVector(vec![1; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn weight(&self, v: usize) -> i64 {
        self.0[v - 1]
    }

    /// gcd of all weights: 1 exactly when the parametrization
    /// `t -> (t^{s_i})` is injective.
    pub fn content(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()))
    }

    /// First vertex carrying weight ±1, the pivot for `Λ`.
    pub fn unit_vertex(&self) -> Option<usize> {
        self.0.iter().position(|&x| x.abs() == 1).map(|i| i + 1)
    }

    pub fn without_vertex(&self, v: usize) -> Result<WeightVector> {
        if v == 0 || v > self.0.len() {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} outside 1..={}",
                self.0.len()
            )));
        }
        let s: Vec<i64> = self
            .0
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != v)
            .map(|(_, &x)| x)
            .collect();
        WeightVector::new(s)
    }
}

/// Locates a maximal face witnessing a fixed point, if any: a face whose
/// complement carries weights with gcd different from 1. Facets suffice
/// because `T^σ` only grows with `σ`.
pub fn freeness_violation(
    k: &SimplicialComplex,
    s: &WeightVector,
) -> Result<Option<(Face, u64)>> {
    if s.len() != k.ambient() {
        return Err(Error::InvalidParameter(format!(
            "weight vector length {} does not match ambient {}",
            s.len(),
            k.ambient()
        )));
    }
    for facet in k.maximal_faces() {
        let complement: Vec<usize> =
            (1..=k.ambient()).filter(|&v| !facet.contains(v)).collect();
        if complement.is_empty() {
            return Ok(Some((facet, 0)));
        }
        let g = complement
            .iter()
            .fold(0u64, |g, &v| g.gcd(&s.weight(v).unsigned_abs()));
        if g != 1 {
            return Ok(Some((facet, g)));
        }
    }
    Ok(None)
}

/// Whether the circle with weights `s` acts freely on `Z_K`.
pub fn is_free(k: &SimplicialComplex, s: &WeightVector) -> Result<bool> {
    Ok(freeness_violation(k, s)?.is_none())
}

/// The `(m-1)×m` integer matrix of the projection `T^m -> T^m/H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    matrix: IntMatrix,
    pivot: usize,
}

impl QuotientMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn pivot_vertex(&self) -> usize {
        self.pivot
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }
}

/// Builds `Λ` from a weight vector and a pivot vertex with `s_v = ±1`:
/// after moving `v` to the front, `Λ = (-s_v·s⃗ | I_{m-1})`, columns
/// restored to their original order. Then `Λ·s = 0` and `rank Λ = m-1`.
pub fn quotient_matrix(s: &WeightVector, v: usize) -> Result<QuotientMatrix> {
    let m = s.len();
    if v == 0 || v > m {
        return Err(Error::InvalidParameter(format!(
            "pivot vertex {v} outside 1..={m}"
        )));
    }
    if s.weight(v).abs() != 1 {
        return Err(Error::Normalization(format!(
            "pivot vertex {v} carries weight {}, need ±1",
            s.weight(v)
        )));
    }
    let sv = s.weight(v);
    let others: Vec<usize> = (1..=m).filter(|&w| w != v).collect();
    let mut matrix = IntMatrix::zero(m - 1, m);
    for (i, &w) in others.iter().enumerate() {
        matrix.set(i, v - 1, BigInt::from(-sv * s.weight(w)));
        matrix.set(i, w - 1, BigInt::from(1));
    }
    debug_assert!(lambda_times_weights(&matrix, s).iter().all(Zero::is_zero));
    Ok(QuotientMatrix { matrix, pivot: v })
}

/// `Λ·s`, used by tests and debug assertions.
pub fn lambda_times_weights(lambda: &IntMatrix, s: &WeightVector) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); lambda.rows()];
    for (r, c, v) in lambda.iter() {
        out[r] += v * BigInt::from(s.weights()[c]);
    }
    out
}

/// A truncated Koszul complex: exterior algebra on `generators` variables
/// against the Stanley-Reisner monomials, complete through total degree
/// `truncation + 1`, so its cohomology is exact in degrees `<= truncation`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    generators: usize,
    truncation: i64,
    complex: ChainComplex,
}

impl KoszulComplex {
    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// Cohomology in degrees `<= truncation`.
    pub fn cohomology(&self, with_torsion: bool) -> Result<HomologySummary> {
        let full = self.complex.homology(with_torsion)?;
        let mut trimmed = HomologySummary::default();
        for (&d, &b) in full.betti_map() {
            if d <= self.truncation {
                trimmed.set_betti(d, b);
            }
        }
        for (&d, t) in full.torsion_map() {
            if d <= self.truncation {
                trimmed.set_torsion(d, t.clone());
            }
        }
        Ok(trimmed)
    }
}

/// Builds the Koszul complex of `K` against an `r×m` matrix `Λ`.
///
/// Basis: pairs `(J, a)` with `J ⊆ {1..r}`, `support(a) ∈ K`, in total
/// degree `|J| + 2|a| <= n_max + 1`. Differential (raising the degree by
/// one):
/// `d(y_J ⊗ u^a) = Σ_{j∈J} (-1)^{pos(j,J)-1} y_{J∖j} ⊗ Σ_i λ_{ji}·u^{a+e_i}`
/// with monomials whose support leaves `K` annihilated.
pub fn koszul_complex(
    k: &SimplicialComplex,
    lambda: &IntMatrix,
    n_max: i64,
) -> Result<KoszulComplex> {
    let m = k.ambient();
    if lambda.cols() != m {
        return Err(Error::InvalidParameter(format!(
            "Λ has {} columns, ambient is {m}",
            lambda.cols()
        )));
    }
    if n_max < 0 {
        return Err(Error::InvalidParameter(
            "truncation degree must be nonnegative".into(),
        ));
    }
    if m > 32 || lambda.rows() > 32 {
        return Err(Error::ResourceLimit(
            "Koszul enumeration supports at most 32 vertices/generators".into(),
        ));
    }
    let r = lambda.rows();
    let degree_cap = n_max + 1;
    let monomial_cap = (degree_cap / 2) as usize;

    // monomials grouped by support face
    let mut monomials: Vec<Vec<u16>> = Vec::new();
    for face in k.faces() {
        if face.len() > monomial_cap {
            continue;
        }
        push_monomials_on(face.vertices(), m, monomial_cap, &mut monomials);
    }

    let facet_masks: Vec<u64> = k.facets().iter().map(Face::mask).collect();
    let is_face_mask =
        |mask: u64| mask == 0 || facet_masks.iter().any(|&f| mask & !f == 0);

    // basis grouped by total degree
    let mut basis: BTreeMap<i64, Vec<(u32, Vec<u16>)>> = BTreeMap::new();
    let cap = max_cells();
    let mut count = 0usize;
    for a in &monomials {
        let mono_degree: i64 = 2 * a.iter().map(|&e| e as i64).sum::<i64>();
        for jmask in 0u32..(1u32 << r) {
            let degree = jmask.count_ones() as i64 + mono_degree;
            if degree > degree_cap {
                continue;
            }
            count += 1;
            if count > cap {
                return Err(Error::ResourceLimit(format!(
                    "Koszul basis exceeds the cap of {cap} elements (raise MACQ_MAX_CELLS)"
                )));
            }
            basis.entry(degree).or_default().push((jmask, a.clone()));
        }
    }

    let mut complex = ChainComplex::new(Direction::Raising);
    let mut index: HashMap<(u32, Vec<u16>), usize> = HashMap::new();
    for (&degree, list) in basis.iter_mut() {
        list.sort_unstable();
        for (i, (jmask, a)) in list.iter().enumerate() {
            index.insert((*jmask, a.clone()), i);
        }
        let labels = list
            .iter()
            .map(|(jmask, a)| format!("y{}|u{:?}", Face::from_mask(*jmask as u64), a))
            .collect();
        complex.add_degree(degree, labels);
    }

    let lambda_rows: Vec<Vec<(usize, BigInt)>> = {
        let mut rows = vec![Vec::new(); r];
        for (row, col, v) in lambda.iter() {
            rows[row].push((col, v.clone()));
        }
        rows
    };

    for (&degree, list) in &basis {
        if degree > n_max {
            continue; // the top layer only receives
        }
        let target_dim = complex.dim(degree + 1);
        let mut d = IntMatrix::zero(target_dim, list.len());
        for (col, (jmask, a)) in list.iter().enumerate() {
            let supp = support_mask(a);
            let mut pos = 0;
            for j in 0..r {
                if jmask & (1 << j) == 0 {
                    continue;
                }
                pos += 1;
                let sub_mask = jmask & !(1 << j);
                for (i, coeff) in &lambda_rows[j] {
                    let new_supp = supp | (1u64 << i);
                    if !is_face_mask(new_supp) {
                        continue;
                    }
                    let mut a_new = a.clone();
                    a_new[*i] += 1;
                    let row = index[&(sub_mask, a_new)];
                    let signed = if pos % 2 == 1 {
                        coeff.clone()
                    } else {
                        -coeff.clone()
                    };
                    d.add_to(row, col, &signed);
                }
            }
        }
        complex.set_diff(degree, d);
    }

    Ok(KoszulComplex {
        generators: r,
        truncation: n_max,
        complex,
    })
}

fn support_mask(a: &[u16]) -> u64 {
    a.iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .fold(0u64, |acc, (i, _)| acc | 1 << i)
}

/// All exponent vectors supported exactly on `verts` (each exponent >= 1)
/// with total degree at most `max_total`.
fn push_monomials_on(verts: &[usize], m: usize, max_total: usize, out: &mut Vec<Vec<u16>>) {
    fn recurse(
        verts: &[usize],
        pos: usize,
        budget: usize,
        current: &mut Vec<u16>,
        out: &mut Vec<Vec<u16>>,
    ) {
        if pos == verts.len() {
            out.push(current.clone());
            return;
        }
        for extra in 0..=budget {
            current[verts[pos] - 1] = 1 + extra as u16;
            recurse(verts, pos + 1, budget - extra, current, out);
        }
        current[verts[pos] - 1] = 0;
    }
    if verts.len() > max_total {
        return;
    }
    let budget = max_total - verts.len();
    let mut current = vec![0u16; m];
    recurse(verts, 0, budget, &mut current, out);
}

/// Betti numbers of `Z_K / S^1` for the circle with weights `s`, reported
/// in degrees `<= up_to`. The action must be free and some weight ±1.
/// Betti ranks are the ℚ contract; torsion, when requested, comes from
/// integer Smith normal forms and is informational.
pub fn quotient_betti(
    k: &SimplicialComplex,
    s: &WeightVector,
    up_to: i64,
    with_torsion: bool,
) -> Result<HomologySummary> {
    if let Some((facet, gcd)) = freeness_violation(k, s)? {
        return Err(Error::NotFree {
            facet: facet
                .vertices()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
            gcd,
        });
    }
    let v = s.unit_vertex().ok_or_else(|| {
        Error::Normalization("no coordinate with weight ±1".into())
    })?;
    let lambda = quotient_matrix(s, v)?;
    let koszul = koszul_complex(k, lambda.matrix(), up_to + 1)?;
    let full = koszul.cohomology(with_torsion)?;
    let mut trimmed = HomologySummary::default();
    for (&d, &b) in full.betti_map() {
        if d <= up_to {
            trimmed.set_betti(d, b);
        }
    }
    for (&d, t) in full.torsion_map() {
        if d <= up_to {
            trimmed.set_torsion(d, t.clone());
        }
    }
    Ok(trimmed)
}

/// Betti numbers of `Z_K` itself through the Koszul route (`Λ = I_m`), the
/// internal cross-validation against the cellular oracle.
pub fn zk_betti_via_koszul(
    k: &SimplicialComplex,
    up_to: i64,
    with_torsion: bool,
) -> Result<HomologySummary> {
    let identity = IntMatrix::identity(k.ambient());
    let koszul = koszul_complex(k, &identity, up_to)?;
    koszul.cohomology(with_torsion)
}

/// Ghost-vertex reduction: for a ghost `v` with `s_v = ±1`, the quotient
/// `Z_K/S^1` is the plain moment-angle complex of the full subcomplex on
/// the other vertices; returns that complex (relabeled) with the induced
/// weights.
pub fn ghost_reduce(
    k: &SimplicialComplex,
    s: &WeightVector,
    v: usize,
) -> Result<(SimplicialComplex, WeightVector)> {
    if s.len() != k.ambient() {
        return Err(Error::InvalidParameter(format!(
            "weight vector length {} does not match ambient {}",
            s.len(),
            k.ambient()
        )));
    }
    if !k.is_ghost(v) {
        return Err(Error::Precondition(format!("vertex {v} is not a ghost")));
    }
    if s.weight(v).abs() != 1 {
        return Err(Error::Precondition(format!(
            "ghost vertex {v} carries weight {}, need ±1",
            s.weight(v)
        )));
    }
    Ok((k.relabel_without(v)?, s.without_vertex(v)?))
}
