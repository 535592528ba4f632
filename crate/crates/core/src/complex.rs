//! Stanley–Reisner complexes of squarefree ideals, kept as facet lists.
//!
//! Every cell of the grid has one of four roles in a [`SimplicialComplex`]:
//! an active vertex of the universe, a cone point (in every facet), an
//! excluded cell (a non-face, i.e. a degree-one generator of the ideal), or
//! outside the ground set altogether (after a deletion). Facets are stored
//! without their cone points, so two complexes that differ only by coning
//! share the same facet list.

use std::collections::HashMap;

use serde::Serialize;

use crate::cells::{BitIter, Cell, CellSet};
use crate::error::{Error, Result};
use crate::ideal::{minimal_covers, minimal_primes, SquarefreeIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    universe: u128,
    cone: u128,
    excluded: u128,
    /// Facets minus cone points, sorted by `u128` value.
    facets: Vec<u128>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceOp {
    Link,
    Deletion,
}

/// Keeps the inclusion-maximal sets, sorted by value.
pub(crate) fn maximal_sets(mut sets: Vec<u128>) -> Vec<u128> {
    sets.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<u128> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| s & !k == 0) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Splits off the common part of `facets`: returns `(cone, deconed facets)`.
pub(crate) fn decone(facets: Vec<u128>) -> (u128, Vec<u128>) {
    if facets.is_empty() {
        return (0, facets);
    }
    let cone = facets.iter().fold(u128::MAX, |acc, f| acc & f);
    let mut rest: Vec<u128> = facets.into_iter().map(|f| f & !cone).collect();
    rest.sort_unstable();
    (cone, rest)
}

impl SimplicialComplex {
    /// Builds a complex from full facets over the ground set `ground`, in
    /// which the cells of `excluded` are non-faces.
    fn normalized(n: usize, ground: u128, excluded: u128, facets: Vec<u128>) -> Self {
        let facets = maximal_sets(facets);
        let covered = facets.iter().fold(0, |acc, f| acc | f);
        let (cone, facets) = decone(facets);
        SimplicialComplex {
            n,
            universe: covered & !cone,
            cone,
            excluded: excluded | (ground & !covered),
            facets,
        }
    }

    /// Complex with the given facets over the whole grid. Cells covered by
    /// no facet become excluded.
    pub fn from_facets<I: IntoIterator<Item = CellSet>>(n: usize, facets: I) -> Self {
        let facets: Vec<u128> = facets.into_iter().map(|f| f.bits()).collect();
        let ground = CellSet::full(n).bits();
        SimplicialComplex::normalized(n, ground, 0, facets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Active vertices: in some facet but not in all of them.
    pub fn vertex_universe(&self) -> CellSet {
        CellSet::from_bits(self.n, self.universe)
    }

    pub fn cone_points(&self) -> CellSet {
        CellSet::from_bits(self.n, self.cone)
    }

    pub fn excluded_vertices(&self) -> CellSet {
        CellSet::from_bits(self.n, self.excluded)
    }

    /// Every vertex, cone points included.
    pub fn vertices(&self) -> CellSet {
        CellSet::from_bits(self.n, self.universe | self.cone)
    }

    fn ground(&self) -> u128 {
        self.universe | self.cone | self.excluded
    }

    /// Facets without cone points.
    pub fn facets(&self) -> Vec<CellSet> {
        self.facets
            .iter()
            .map(|&f| CellSet::from_bits(self.n, f))
            .collect()
    }

    pub(crate) fn core_facets(&self) -> &[u128] {
        &self.facets
    }

    /// Facets with cone points.
    pub fn full_facets(&self) -> Vec<CellSet> {
        self.facets
            .iter()
            .map(|&f| CellSet::from_bits(self.n, f | self.cone))
            .collect()
    }

    /// The void complex has no faces at all, not even the empty one.
    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// Dimension including cone points; `-1` for `{∅}`, `None` if void.
    pub fn dim(&self) -> Option<isize> {
        self.core_dim().map(|d| d + self.cone.count_ones() as isize)
    }

    /// Dimension of the deconed complex.
    pub fn core_dim(&self) -> Option<isize> {
        self.facets
            .iter()
            .map(|f| f.count_ones() as isize - 1)
            .max()
    }

    pub fn is_face(&self, sigma: &CellSet) -> bool {
        let s = sigma.bits() & !self.cone;
        sigma.bits() & !(self.universe | self.cone) == 0 && self.facets.iter().any(|&f| s & !f == 0)
    }

    /// Link or deletion of a face.
    pub fn face_subcomplex(&self, sigma: &CellSet, op: FaceOp) -> Result<SimplicialComplex> {
        if sigma.n() != self.n {
            return Err(Error::SizeMismatch(self.n, sigma.n()));
        }
        if !self.is_face(sigma) {
            return Err(Error::NotAFace(sigma.to_string()));
        }
        let s = sigma.bits();
        let full = self.facets.iter().map(|&f| f | self.cone);
        Ok(match op {
            FaceOp::Link => {
                let facets = full.filter(|f| s & !f == 0).map(|f| f & !s).collect();
                SimplicialComplex::normalized(self.n, self.ground(), self.excluded | s, facets)
            }
            FaceOp::Deletion => {
                let facets = full.map(|f| f & !s).collect();
                SimplicialComplex::normalized(self.n, self.ground() & !s, self.excluded, facets)
            }
        })
    }

    pub fn link(&self, sigma: &CellSet) -> Result<SimplicialComplex> {
        self.face_subcomplex(sigma, FaceOp::Link)
    }

    pub fn deletion(&self, sigma: &CellSet) -> Result<SimplicialComplex> {
        self.face_subcomplex(sigma, FaceOp::Deletion)
    }

    pub fn is_pure(&self) -> bool {
        is_pure_bits(&self.facets)
    }

    /// Minimal non-faces over the ground set: excluded cells as variables,
    /// plus the minimal transversals of the facet complements.
    pub fn stanley_reisner_ideal(&self) -> SquarefreeIdeal {
        if self.is_void() {
            return SquarefreeIdeal::unit(self.n);
        }
        let complements: Vec<u128> = self.facets.iter().map(|f| self.universe & !f).collect();
        let mut gens = minimal_covers(&complements);
        gens.extend(BitIter(self.excluded).map(|i| 1u128 << i));
        SquarefreeIdeal::from_bits(self.n, gens)
    }

    /// Every face, cone points included. Only for small complexes.
    pub fn faces(&self) -> Vec<CellSet> {
        let mut out = std::collections::BTreeSet::new();
        for &f in &self.facets {
            let full = f | self.cone;
            let mut sub = full;
            loop {
                out.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & full;
            }
        }
        out.into_iter()
            .map(|b| CellSet::from_bits(self.n, b))
            .collect()
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SimplicialComplex", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("vertices", &self.vertices().labels())?;
        let facets: Vec<Vec<String>> = self.full_facets().iter().map(|f| f.labels()).collect();
        st.serialize_field("facets", &facets)?;
        st.end()
    }
}

pub(crate) fn is_pure_bits(facets: &[u128]) -> bool {
    facets
        .windows(2)
        .all(|w| w[0].count_ones() == w[1].count_ones())
}

/// Stanley–Reisner complex of a proper ideal. Facets are the complements of
/// the minimal primes inside the support of the ideal; cells outside the
/// support become cone points.
pub fn sr_complex_from_ideal(ideal: &SquarefreeIdeal) -> Result<SimplicialComplex> {
    let n = ideal.n();
    let full = CellSet::full(n).bits();
    let primes = match minimal_primes(ideal) {
        Ok(p) => p,
        Err(Error::ZeroIdeal) => vec![CellSet::empty(n)],
        Err(e) => return Err(e),
    };
    let facets = primes.iter().map(|p| full & !p.bits()).collect();
    Ok(SimplicialComplex::normalized(n, full, 0, facets))
}

/// Cells in the variable order `z_{1,n} > z_{1,n-1} > … > z_{1,1} > z_{2,n} > … > z_{n,1}`,
/// greatest first.
pub fn km_order(n: usize) -> Vec<Cell> {
    (1..=n)
        .flat_map(|i| (1..=n).rev().map(move |j| Cell::new(i, j)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailureReason {
    NotPure,
    RecursiveFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionTrace {
    pub result: bool,
    pub failure_vertex: Option<Cell>,
    pub failure_reason: Option<FailureReason>,
    /// Splits from the root down to the first non-pure complex.
    pub path: Vec<(Cell, FaceOp)>,
}

/// Default bound on memoized complexes per decision.
pub const DEFAULT_MEMO_LIMIT: usize = 1_000_000;

/// Vertex decomposition along the fixed variable order.
///
/// At each complex, purity is required, and the split happens at the
/// greatest vertex of the deconed complex. Cone points can be skipped since
/// their link and deletion coincide.
pub struct KmDecider {
    order: Vec<u128>,
    memo: HashMap<Vec<u128>, bool>,
    limit: usize,
}

impl KmDecider {
    pub fn new(n: usize) -> Self {
        KmDecider::with_memo_limit(n, DEFAULT_MEMO_LIMIT)
    }

    /// The memo is cleared once it holds `limit` complexes.
    pub fn with_memo_limit(n: usize, limit: usize) -> Self {
        let probe = CellSet::empty(n);
        let order = km_order(n)
            .into_iter()
            .map(|c| 1u128 << probe.index_of(c))
            .collect();
        KmDecider {
            order,
            memo: HashMap::new(),
            limit,
        }
    }

    fn split_vertex(&self, facets: &[u128]) -> Option<u128> {
        let vertices = facets.iter().fold(0, |acc, f| acc | f);
        self.order.iter().copied().find(|&b| b & vertices != 0)
    }

    fn children(facets: &[u128], v: u128) -> (Vec<u128>, Vec<u128>) {
        let del = maximal_sets(facets.iter().map(|f| f & !v).collect());
        let lk = facets
            .iter()
            .filter(|&&f| f & v != 0)
            .map(|f| f & !v)
            .collect();
        (decone(del).1, decone(lk).1)
    }

    fn decide(&mut self, facets: &[u128]) -> bool {
        if facets.len() <= 1 {
            return true;
        }
        if !is_pure_bits(facets) {
            return false;
        }
        if let Some(&known) = self.memo.get(facets) {
            return known;
        }
        let v = self
            .split_vertex(facets)
            .expect("a complex with two facets has vertices");
        let (del, lk) = KmDecider::children(facets, v);
        let result = self.decide(&del) && self.decide(&lk);
        if self.memo.len() >= self.limit {
            self.memo.clear();
        }
        self.memo.insert(facets.to_vec(), result);
        result
    }

    pub fn trace(&mut self, complex: &SimplicialComplex) -> DecompositionTrace {
        let n = complex.n;
        let cell = |b: u128| CellSet::from_bits(n, b).first().expect("single cell");
        let mut node = complex.facets.clone();
        if self.decide(&node) {
            return DecompositionTrace {
                result: true,
                failure_vertex: None,
                failure_reason: None,
                path: Vec::new(),
            };
        }
        let mut path = Vec::new();
        let mut last = self.split_vertex(&node);
        while is_pure_bits(&node) {
            let v = self
                .split_vertex(&node)
                .expect("failing complex has vertices");
            last = Some(v);
            let (del, lk) = KmDecider::children(&node, v);
            if !self.decide(&del) {
                path.push((cell(v), FaceOp::Deletion));
                node = del;
            } else {
                path.push((cell(v), FaceOp::Link));
                node = lk;
            }
        }
        let reason = if path.len() <= 1 {
            FailureReason::NotPure
        } else {
            FailureReason::RecursiveFailure
        };
        DecompositionTrace {
            result: false,
            failure_vertex: last.map(cell),
            failure_reason: Some(reason),
            path,
        }
    }
}

pub fn km_vertex_decomposable(complex: &SimplicialComplex) -> DecompositionTrace {
    KmDecider::new(complex.n).trace(complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::Asm;
    use crate::ideal::init_ideal;

    fn m(n: usize, c: &[(usize, usize)]) -> CellSet {
        CellSet::from_cells(n, c.iter().copied())
    }

    fn b4() -> Asm {
        Asm::new(vec![
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![1, -1, 0, 1],
            vec![0, 1, 0, 0],
        ])
        .unwrap()
    }

    fn non_km() -> Asm {
        Asm::new(vec![
            vec![0, 1, 0, 0],
            vec![0, 0, 0, 1],
            vec![1, -1, 1, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap()
    }

    #[test]
    fn complex_of_b4() {
        let d = sr_complex_from_ideal(&init_ideal(&b4())).unwrap();
        assert_eq!(d.excluded_vertices(), m(4, &[(1, 1), (2, 1)]));
        assert_eq!(d.vertex_universe(), m(4, &[(1, 2), (2, 2), (3, 1)]));
        assert_eq!(d.facets(), vec![m(4, &[(1, 2), (2, 2)]), m(4, &[(3, 1)])]);
        assert!(!d.is_pure());
        assert_eq!(d.stanley_reisner_ideal(), init_ideal(&b4()));
    }

    #[test]
    fn zero_ideal_is_a_simplex() {
        let d = sr_complex_from_ideal(&SquarefreeIdeal::zero(3)).unwrap();
        assert!(d.is_simplex() && d.is_pure());
        assert_eq!(d.cone_points(), CellSet::full(3));
        assert_eq!(d.dim(), Some(8));
        assert!(d.stanley_reisner_ideal().is_zero());
        assert!(km_vertex_decomposable(&d).result);
    }

    #[test]
    fn links_and_deletions() {
        let d = sr_complex_from_ideal(&init_ideal(&non_km())).unwrap();
        assert!(d.is_pure());
        assert_eq!(d.facets().len(), 3);
        assert_eq!(d.link(&CellSet::empty(4)).unwrap(), d);
        let del = d.deletion(&m(4, &[(1, 3)])).unwrap();
        assert!(!del.is_pure());
        let expected = SquarefreeIdeal::new(
            4,
            [
                m(4, &[(1, 1)]),
                m(4, &[(2, 1)]),
                m(4, &[(1, 2), (3, 1)]),
                m(4, &[(3, 1), (2, 2)]),
            ],
        );
        assert_eq!(del.stanley_reisner_ideal(), expected);

        let facet = d.full_facets()[0];
        let lk = d.link(&facet).unwrap();
        assert_eq!(lk.facets(), vec![CellSet::empty(4)]);
        assert_eq!(lk.dim(), Some(-1));
        assert!(matches!(d.link(&m(4, &[(1, 1)])), Err(Error::NotAFace(_))));
    }

    #[test]
    fn km_failure_at_z13() {
        let d = sr_complex_from_ideal(&init_ideal(&non_km())).unwrap();
        let t = km_vertex_decomposable(&d);
        assert!(!t.result);
        assert_eq!(t.failure_vertex, Some(Cell::new(1, 3)));
        assert_eq!(t.failure_reason, Some(FailureReason::NotPure));
        assert_eq!(t.path, vec![(Cell::new(1, 3), FaceOp::Deletion)]);
    }

    #[test]
    fn json_shape() {
        let d = sr_complex_from_ideal(&init_ideal(&b4())).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["facets"].as_array().unwrap().len(), 2);
        assert!(v["vertices"]
            .as_array()
            .unwrap()
            .iter()
            .any(|x| x == "z_4_4"));
    }
}
