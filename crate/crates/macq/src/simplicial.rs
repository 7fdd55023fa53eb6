//! Abstract simplicial complexes on an ambient vertex set `[m] = {1,..,m}`.
//!
//! A complex is stored by its maximal faces; the empty face is always a
//! member. Vertices that appear in no face are *ghost* vertices and are kept
//! as part of the ambient set, because they change the associated
//! moment-angle complex (each ghost contributes a circle factor).

use crate::error::{Error, Result};
use itertools::Itertools;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// A face: a strictly increasing list of vertices in `1..=m`.
/// The empty list is the empty face.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Face(Vec<usize>);

impl Face {
    pub fn empty() -> Self {
        Face(Vec::new())
    }

    /// Builds a face from an arbitrary vertex list, sorting it.
    pub fn new(mut verts: Vec<usize>) -> Result<Self> {
        verts.sort_unstable();
        if verts.first().is_some_and(|&v| v == 0) {
            return Err(Error::InvalidParameter("vertices are 1-based".into()));
        }
        if verts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!(
                "repeated vertex in face {:?}",
                verts
            )));
        }
        Ok(Face(verts))
    }

    /// Shorthand for faces written as literals.
    ///
    /// Panics on a malformed vertex list; use [`Face::new`] for input data.
    pub fn of(verts: &[usize]) -> Self {
        Face::new(verts.to_vec()).expect("malformed face literal")
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Geometric dimension; the empty face has dimension -1.
    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn with_vertex(&self, v: usize) -> Face {
        let mut verts = self.0.clone();
        if let Err(pos) = verts.binary_search(&v) {
            verts.insert(pos, v);
        }
        Face(verts)
    }

    pub fn without_vertex(&self, v: usize) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn intersect(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        )
    }

    /// Bitmask with bit `v-1` set for each vertex `v`. Only valid for
    /// ambient sizes that fit a machine word; the oracle layers bound `m`
    /// well below that.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &v| acc | 1 << (v - 1))
    }

    pub fn from_mask(mut mask: u64) -> Face {
        let mut verts = Vec::new();
        while mask != 0 {
            let v = mask.trailing_zeros() as usize + 1;
            verts.push(v);
            mask &= mask - 1;
        }
        Face(verts)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// A simplicial complex on `[m]`, represented by its facets.
///
/// Invariants: facets form an antichain, every vertex lies in `1..=m`, and
/// the empty face is always a member. An empty facet list denotes the
/// complex `{∅}` (all of `[m]` ghost).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    ambient: usize,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `faces`: validates ranges and keeps
    /// only the maximal faces.
    pub fn new(ambient: usize, faces: Vec<Face>) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::InvalidParameter(
                "ambient vertex count must be positive".into(),
            ));
        }
        for f in &faces {
            if let Some(&v) = f.vertices().last() {
                if v > ambient {
                    return Err(Error::InvalidParameter(format!(
                        "vertex {v} exceeds ambient {ambient}"
                    )));
                }
            }
        }
        Ok(Self {
            ambient,
            facets: antichain(faces),
        })
    }

    /// The complex `{∅}` on `m` ghost vertices.
    pub fn empty_complex(ambient: usize) -> Result<Self> {
        Self::new(ambient, Vec::new())
    }

    /// The full simplex on `[m]`.
    pub fn full_simplex(ambient: usize) -> Result<Self> {
        let all: Vec<usize> = (1..=ambient).collect();
        Self::new(ambient, vec![Face::new(all)?])
    }

    /// The simplex on a given vertex subset, embedded in ambient `[m]`.
    pub fn simplex_on(ambient: usize, verts: &[usize]) -> Result<Self> {
        Self::new(ambient, vec![Face::new(verts.to_vec())?])
    }

    /// The `k`-skeleton of the `(m-1)`-simplex: all subsets of `[m]` of
    /// cardinality at most `k+1`. `k = -1` gives `{∅}`; `k = m-1` the full
    /// simplex.
    pub fn skeleton(m: usize, k: i64) -> Result<Self> {
        if m == 0 || k < -1 || k > m as i64 - 1 {
            return Err(Error::InvalidParameter(format!(
                "skeleton requires 1 <= m and -1 <= k <= m-1, got m={m}, k={k}"
            )));
        }
        if k == -1 {
            return Self::empty_complex(m);
        }
        let size = (k + 1) as usize;
        let facets = (1..=m).combinations(size).map(Face).collect();
        Self::new(m, facets)
    }

    /// Boundary of the simplex on `verts`: all proper subsets.
    pub fn boundary_simplex(ambient: usize, verts: &[usize]) -> Result<Self> {
        let s = Face::new(verts.to_vec())?;
        if s.is_empty() {
            return Err(Error::InvalidParameter(
                "boundary of the empty simplex is not a complex".into(),
            ));
        }
        let facets = s
            .vertices()
            .iter()
            .map(|&v| s.without_vertex(v))
            .collect();
        Self::new(ambient, facets)
    }

    /// The complex `L^k_{j,m}`: the `k`-skeleton of the `(m-1)`-simplex with
    /// the first `j` facets `Δ_{[m]∖{m}}, Δ_{[m]∖{m-1}}, ...` adjoined.
    pub fn l_family(j: usize, m: usize, k: i64) -> Result<Self> {
        if m == 0 || k < -1 || (j as i64) > k + 2 || k + 2 > m as i64 {
            return Err(Error::InvalidParameter(format!(
                "l_family requires 0 <= j <= k+2 <= m, got j={j}, m={m}, k={k}"
            )));
        }
        let mut complex = Self::skeleton(m, k)?;
        for t in 1..=j {
            let omit = m - t + 1;
            let verts: Vec<usize> = (1..=m).filter(|&v| v != omit).collect();
            complex = complex.union(&Self::simplex_on(m, &verts)?)?;
        }
        Ok(complex)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Maximal faces, with the convention that `{∅}` has the single maximal
    /// face `∅`. This is the right notion for freeness checks.
    pub fn maximal_faces(&self) -> Vec<Face> {
        if self.facets.is_empty() {
            vec![Face::empty()]
        } else {
            self.facets.clone()
        }
    }

    /// Dimension of the complex; `{∅}` has dimension -1.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    /// Tests membership: `σ ∈ K` iff `σ` is contained in some facet. The
    /// empty face is always a member.
    pub fn is_face(&self, face: &Face) -> Result<bool> {
        if let Some(&v) = face.vertices().last() {
            if v > self.ambient {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} exceeds ambient {}",
                    self.ambient
                )));
            }
        }
        Ok(face.is_empty() || self.facets.iter().any(|f| face.is_subset_of(f)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.ambient {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} outside 1..={}",
                self.ambient
            )));
        }
        Ok(())
    }

    /// Vertices that appear in some face.
    pub fn support(&self) -> Vec<usize> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for f in &self.facets {
            seen.extend(f.vertices().iter().copied());
        }
        seen.into_iter().collect()
    }

    pub fn is_ghost(&self, v: usize) -> bool {
        v >= 1 && v <= self.ambient && !self.facets.iter().any(|f| f.contains(v))
    }

    pub fn ghost_vertices(&self) -> Vec<usize> {
        (1..=self.ambient).filter(|&v| self.is_ghost(v)).collect()
    }

    /// `Link_K(v) = {σ ∈ K | σ ∪ {v} ∈ K, v ∉ σ}`, kept on the same ambient
    /// set (`v` becomes a ghost).
    pub fn link(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let facets = self
            .facets
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| f.without_vertex(v))
            .collect();
        Self::new(self.ambient, facets)
    }

    /// `Star_K(v) = {σ ∈ K | σ ∪ {v} ∈ K}`; equals `(v) * Link_K(v)` when
    /// `v` is a genuine vertex, and `{∅}` when `v` is a ghost.
    pub fn star(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let facets = self
            .facets
            .iter()
            .filter(|f| f.contains(v))
            .cloned()
            .collect();
        Self::new(self.ambient, facets)
    }

    /// `Rest_K(v)`: the full subcomplex on `[m] ∖ {v}` (`v` kept as ghost).
    pub fn rest(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (1..=self.ambient).filter(|&w| w != v).collect();
        self.full_subcomplex(&keep)
    }

    /// Full subcomplex on the vertex set `W`: faces of `K` contained in `W`.
    /// Ambient is unchanged.
    pub fn full_subcomplex(&self, w: &[usize]) -> Result<Self> {
        let w_face = Face::new(w.to_vec())?;
        if let Some(&v) = w_face.vertices().last() {
            if v > self.ambient {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} exceeds ambient {}",
                    self.ambient
                )));
            }
        }
        let facets = self.facets.iter().map(|f| f.intersect(&w_face)).collect();
        Self::new(self.ambient, facets)
    }

    /// Set-theoretic union of face sets. Ambients must agree; callers
    /// re-embed first.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        let mut facets = self.facets.clone();
        facets.extend(other.facets.iter().cloned());
        Self::new(self.ambient, facets)
    }

    /// Set-theoretic intersection of face sets.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        let mut facets = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.intersect(b));
            }
        }
        Self::new(self.ambient, facets)
    }

    fn check_same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::InvalidParameter(format!(
                "ambient mismatch: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Cone with apex `v`: adds `v` to every facet (`{∅}` cones to `{{v}}`).
    pub fn cone(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let facets = if self.facets.is_empty() {
            vec![Face(vec![v])]
        } else {
            self.facets.iter().map(|f| f.with_vertex(v)).collect()
        };
        Self::new(self.ambient, facets)
    }

    /// Order-preserving relabeling onto the sorted vertex list `keep`,
    /// which must contain every non-ghost vertex. `keep[i]` becomes vertex
    /// `i+1` of a complex with ambient `keep.len()`.
    pub fn relabel_onto(&self, keep: &[usize]) -> Result<Self> {
        let keep_face = Face::new(keep.to_vec())?;
        if keep_face.is_empty() {
            return Err(Error::InvalidParameter(
                "relabel target must keep at least one vertex".into(),
            ));
        }
        if let Some(&v) = keep_face.vertices().last() {
            if v > self.ambient {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} exceeds ambient {}",
                    self.ambient
                )));
            }
        }
        for v in self.support() {
            if !keep_face.contains(v) {
                return Err(Error::InvalidParameter(format!(
                    "relabel target drops non-ghost vertex {v}"
                )));
            }
        }
        let position = |v: usize| keep_face.vertices().binary_search(&v).unwrap() + 1;
        let facets = self
            .facets
            .iter()
            .map(|f| Face(f.vertices().iter().map(|&v| position(v)).collect()))
            .collect();
        Self::new(keep_face.len(), facets)
    }

    /// Drops the ghost vertex `v`, relabeling the rest order-preservingly.
    pub fn relabel_without(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        if !self.is_ghost(v) {
            return Err(Error::Precondition(format!("vertex {v} is not a ghost")));
        }
        let keep: Vec<usize> = (1..=self.ambient).filter(|&w| w != v).collect();
        self.relabel_onto(&keep)
    }

    /// Drops every ghost vertex. `{∅}` compactifies to `{∅}` on one vertex.
    pub fn compactify(&self) -> Self {
        let support = self.support();
        if support.is_empty() {
            return Self::empty_complex(1).unwrap();
        }
        self.relabel_onto(&support).unwrap()
    }

    /// Every face of the complex, the empty face included.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen: BTreeSet<Face> = BTreeSet::new();
        seen.insert(Face::empty());
        for facet in &self.facets {
            for size in 1..=facet.len() {
                for sub in facet.vertices().iter().copied().combinations(size) {
                    seen.insert(Face(sub));
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Number of faces (the empty face included).
    pub fn face_count(&self) -> usize {
        self.faces().len()
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.facets.is_empty() {
            return write!(f, "<{{}} on [{}]>", self.ambient);
        }
        write!(
            f,
            "<{} on [{}]>",
            self.facets.iter().map(|x| x.to_string()).join(" "),
            self.ambient
        )
    }
}

/// Keeps only the maximal faces, sorted and deduplicated. The empty face is
/// never stored explicitly.
fn antichain(mut faces: Vec<Face>) -> Vec<Face> {
    faces.retain(|f| !f.is_empty());
    faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
    let mut maximal: Vec<Face> = Vec::new();
    for f in faces {
        if !maximal.iter().any(|g| f.is_subset_of(g)) {
            maximal.push(f);
        }
    }
    maximal.sort();
    maximal
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    ambient: usize,
    facets: Vec<Vec<usize>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            ambient: self.ambient,
            facets: self.facets.iter().map(|f| f.vertices().to_vec()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(deserializer)?;
        let faces = raw
            .facets
            .into_iter()
            .map(Face::new)
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        SimplicialComplex::new(raw.ambient, faces).map_err(D::Error::custom)
    }
}

/// The 4-vertex complex with edges 12, 24, 43, 31, 14: a square with one
/// diagonal. Used throughout the tests as a known non-skeletal example.
pub fn square_with_diagonal() -> SimplicialComplex {
    SimplicialComplex::new(
        4,
        vec![
            Face::of(&[1, 2]),
            Face::of(&[2, 4]),
            Face::of(&[3, 4]),
            Face::of(&[1, 3]),
            Face::of(&[1, 4]),
        ],
    )
    .unwrap()
}

/// Samples a complex on `[m]`: a random number of uniformly random nonempty
/// faces, reduced to their antichain. Ghost vertices occur naturally.
pub fn random_complex<R: rand::Rng>(m: usize, rng: &mut R) -> SimplicialComplex {
    let count = rng.gen_range(0..=2 * m);
    let mut faces = Vec::with_capacity(count);
    for _ in 0..count {
        let mask = rng.gen_range(1..(1u64 << m));
        faces.push(Face::from_mask(mask));
    }
    SimplicialComplex::new(m, faces).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn skel(m: usize, k: i64) -> SimplicialComplex {
        SimplicialComplex::skeleton(m, k).unwrap()
    }

    #[test]
    fn skeleton_examples() {
        assert_eq!(
            skel(3, 1).facets(),
            &[Face::of(&[1, 2]), Face::of(&[1, 3]), Face::of(&[2, 3])]
        );
        assert_eq!(skel(4, 3).facets(), &[Face::of(&[1, 2, 3, 4])]);
        assert_eq!(
            skel(4, 0).facets(),
            &[
                Face::of(&[1]),
                Face::of(&[2]),
                Face::of(&[3]),
                Face::of(&[4])
            ]
        );
        assert_eq!(skel(5, -1).facets(), &[]);
        assert!(SimplicialComplex::skeleton(3, 3).is_err());
        assert!(SimplicialComplex::skeleton(3, -2).is_err());
    }

    #[test]
    fn membership() {
        let k = skel(3, 1);
        assert!(k.is_face(&Face::of(&[1, 2])).unwrap());
        assert!(!k.is_face(&Face::of(&[1, 2, 3])).unwrap());
        assert!(k.is_face(&Face::empty()).unwrap());
        assert!(SimplicialComplex::empty_complex(2)
            .unwrap()
            .is_face(&Face::empty())
            .unwrap());
        assert!(k.is_face(&Face::of(&[4])).is_err());
    }

    #[test]
    fn link_examples() {
        let link = skel(4, 1).link(1).unwrap();
        assert_eq!(link.ghost_vertices(), vec![1]);
        assert_eq!(link.relabel_without(1).unwrap(), skel(3, 0));

        // vertices adjacent to 2 in the square-with-diagonal
        let link = square_with_diagonal().link(2).unwrap();
        assert_eq!(link.facets(), &[Face::of(&[1]), Face::of(&[4])]);

        // a vertex in no edge links to {∅}
        let k = SimplicialComplex::new(3, vec![Face::of(&[1, 2]), Face::of(&[3])]).unwrap();
        assert_eq!(k.link(3).unwrap(), SimplicialComplex::empty_complex(3).unwrap());
    }

    #[test]
    fn star_and_rest_examples() {
        let star = skel(4, 1).star(1).unwrap();
        assert_eq!(
            star.facets(),
            &[Face::of(&[1, 2]), Face::of(&[1, 3]), Face::of(&[1, 4])]
        );
        let rest = skel(4, 1).rest(1).unwrap();
        assert_eq!(rest.relabel_without(1).unwrap(), skel(3, 1));
    }

    #[test]
    fn star_is_cone_on_link() {
        let k = square_with_diagonal();
        for v in 1..=4 {
            let star = k.star(v).unwrap();
            assert_eq!(star, k.link(v).unwrap().cone(v).unwrap());
        }
    }

    #[test]
    fn pushout_identity_on_random_complexes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let m = rng.gen_range(1..=6);
            let k = random_complex(m, &mut rng);
            for v in 1..=m {
                let star = k.star(v).unwrap();
                let rest = k.rest(v).unwrap();
                assert_eq!(star.union(&rest).unwrap(), k);
                assert_eq!(star.intersection(&rest).unwrap(), k.link(v).unwrap());
            }
        }
    }

    #[test]
    fn full_subcomplex_examples() {
        let sub = skel(4, 1).full_subcomplex(&[1, 2, 3]).unwrap();
        assert_eq!(sub.relabel_onto(&[1, 2, 3]).unwrap(), skel(3, 1));
        assert_eq!(
            skel(4, 1).full_subcomplex(&[]).unwrap(),
            SimplicialComplex::empty_complex(4).unwrap()
        );
        // restriction of L^1_{1,4} to {2,3,4} keeps k: it is L^1_{1,3}
        let sub = SimplicialComplex::l_family(1, 4, 1)
            .unwrap()
            .full_subcomplex(&[2, 3, 4])
            .unwrap();
        assert_eq!(
            sub.relabel_onto(&[2, 3, 4]).unwrap(),
            SimplicialComplex::l_family(1, 3, 1).unwrap()
        );
    }

    #[test]
    fn union_intersection_boundary() {
        let tri = SimplicialComplex::simplex_on(4, &[1, 2, 3]).unwrap();
        assert_eq!(
            skel(4, 1).union(&tri).unwrap(),
            SimplicialComplex::l_family(1, 4, 1).unwrap()
        );
        let a = SimplicialComplex::simplex_on(4, &[1, 2, 3]).unwrap();
        let b = SimplicialComplex::simplex_on(4, &[1, 2, 4]).unwrap();
        assert_eq!(
            a.intersection(&b).unwrap(),
            SimplicialComplex::simplex_on(4, &[1, 2]).unwrap()
        );
        assert_eq!(
            SimplicialComplex::boundary_simplex(3, &[1, 2, 3]).unwrap(),
            skel(3, 1)
        );
        assert!(skel(3, 1).union(&skel(4, 1)).is_err());
    }

    #[test]
    fn l_family_examples() {
        assert_eq!(SimplicialComplex::l_family(0, 5, 2).unwrap(), skel(5, 2));
        assert_eq!(
            SimplicialComplex::l_family(2, 4, 0).unwrap().facets(),
            &[Face::of(&[1, 2, 3]), Face::of(&[1, 2, 4])]
        );
        assert_eq!(
            SimplicialComplex::l_family(3, 4, 1).unwrap().facets(),
            &[
                Face::of(&[1, 2, 3]),
                Face::of(&[1, 2, 4]),
                Face::of(&[1, 3, 4])
            ]
        );
        assert!(SimplicialComplex::l_family(4, 4, 1).is_err());
        assert!(SimplicialComplex::l_family(1, 4, 3).is_err());
    }

    #[test]
    fn l_family_link_and_rest_recursions() {
        for m in 2..=6usize {
            for k in 0..=(m as i64 - 2) {
                for j in 1..=(k + 1) as usize {
                    let l = SimplicialComplex::l_family(j, m, k).unwrap();
                    // at the last vertex
                    assert_eq!(
                        l.link(m).unwrap().relabel_without(m).unwrap(),
                        SimplicialComplex::l_family(j - 1, m - 1, k - 1).unwrap(),
                        "link at m, j={j} m={m} k={k}"
                    );
                    assert_eq!(
                        l.rest(m).unwrap().relabel_without(m).unwrap(),
                        SimplicialComplex::full_simplex(m - 1).unwrap(),
                        "rest at m, j={j} m={m} k={k}"
                    );
                    // at the first vertex
                    assert_eq!(
                        l.link(1).unwrap().relabel_without(1).unwrap(),
                        SimplicialComplex::l_family(j, m - 1, k - 1).unwrap(),
                        "link at 1, j={j} m={m} k={k}"
                    );
                    assert_eq!(
                        l.rest(1).unwrap().relabel_without(1).unwrap(),
                        SimplicialComplex::l_family(j, m - 1, k).unwrap(),
                        "rest at 1, j={j} m={m} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn l_family_is_monotone_in_j() {
        for m in 2..=6usize {
            for k in 0..=(m as i64 - 2) {
                for j in 1..=(k + 2) as usize {
                    let prev = SimplicialComplex::l_family(j - 1, m, k).unwrap();
                    let next = SimplicialComplex::l_family(j, m, k).unwrap();
                    for f in prev.facets() {
                        assert!(next.is_face(f).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn ghost_bookkeeping() {
        let k = SimplicialComplex::new(4, vec![Face::of(&[2, 3])]).unwrap();
        assert_eq!(k.ghost_vertices(), vec![1, 4]);
        assert_eq!(k.support(), vec![2, 3]);
        let compact = k.compactify();
        assert_eq!(compact.ambient(), 2);
        assert_eq!(compact.facets(), &[Face::of(&[1, 2])]);
        assert!(k.relabel_without(2).is_err());
    }

    #[test]
    fn faces_enumeration() {
        let k = skel(3, 1);
        assert_eq!(k.face_count(), 1 + 3 + 3);
        assert_eq!(
            SimplicialComplex::empty_complex(5).unwrap().faces(),
            vec![Face::empty()]
        );
    }

    #[test]
    fn json_round_trip() {
        let k = square_with_diagonal();
        let text = serde_json::to_string(&k).unwrap();
        let back: SimplicialComplex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, k);
        let parsed: SimplicialComplex =
            serde_json::from_str(r#"{"ambient": 3, "facets": []}"#).unwrap();
        assert_eq!(parsed, SimplicialComplex::empty_complex(3).unwrap());
        assert!(serde_json::from_str::<SimplicialComplex>(r#"{"ambient": 2, "facets": [[1,3]]}"#)
            .is_err());
    }

    #[test]
    fn antichain_invariant_on_random_complexes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let m = rng.gen_range(1..=6);
            let k = random_complex(m, &mut rng);
            for (i, a) in k.facets().iter().enumerate() {
                for (j, b) in k.facets().iter().enumerate() {
                    if i != j {
                        assert!(!a.is_subset_of(b), "facets must form an antichain");
                    }
                }
                // downward closure
                for &v in a.vertices() {
                    assert!(k.is_face(&a.without_vertex(v)).unwrap());
                }
            }
        }
    }
}
