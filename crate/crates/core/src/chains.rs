//! The polysimplicial complex Σ carved out of `E` by the affine root
//! hyperplanes, its augmented chain complex over `Q`, and approximation
//! regions.
//!
//! A cell is stored as `(fundamental facet f, w)` where `w` is the minimal
//! length representative of `w W_f` — the unique one, ties broken
//! lexicographically. Orientations come from the lexicographically sorted
//! vertex tuples of the fundamental facets, pushed forward through `w`;
//! with that convention the boundary operator is a fixed signed table on
//! fundamental facets transported around Σ, so `∂` commutes with the
//! `W^aff`-action by construction.

use std::collections::{BTreeMap, HashMap, HashSet};

use num::{Signed, Zero};

use crate::affine::{
    fundamental_facets, omega, AffineElement, AffineSystem, FacetSet,
};
use crate::exact::{dot_iq, q_ceil_i64, q_floor_i64, qi, Q, QVec};
use crate::rootdata::BasedRootDatum;
use crate::{Error, Result};

/// Facet id of the degree −1 augmentation generator.
pub const AUGMENTATION: usize = usize::MAX;

/// An oriented cell of Σ: `rep · f̄` with `rep` the canonical coset
/// representative. The augmentation generator uses `facet = AUGMENTATION`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Polysimplex {
    pub rep: AffineElement,
    pub facet: usize,
}

impl Polysimplex {
    pub fn is_augmentation(&self) -> bool {
        self.facet == AUGMENTATION
    }
}

/// Σ together with everything precomputed on the fundamental alcove.
pub struct Complex {
    pub sys: AffineSystem,
    pub facets: FacetSet,
    pub omega: Vec<AffineElement>,
    /// Signed boundary table on fundamental facets: for each facet, the
    /// list of `(sub-facet id, sign)` in its boundary.
    boundary_table: Vec<Vec<(usize, i64)>>,
    /// Positive coroots, fixed order (defines region coordinates).
    pub positive_coroots: Vec<Vec<i64>>,
    /// Vertices of the closed fundamental alcove.
    pub alcove_vertices: Vec<QVec>,
    /// Finite Weyl group elements sorted by (length, matrix).
    pub w0_by_length: Vec<AffineElement>,
}

impl Complex {
    pub fn new(datum: &BasedRootDatum) -> Result<Self> {
        let sys = AffineSystem::new(datum)?;
        let facets = fundamental_facets(&sys)?;
        let omega = omega(&sys, &facets)?;
        let positive_coroots: Vec<Vec<i64>> = datum
            .positive_root_indices()
            .iter()
            .map(|&i| datum.coroots[i].clone())
            .collect();
        let alcove_vertices = facets.facets[facets.alcove].vertices();
        let w0 = crate::finitegroup::MatrixGroup::from_datum_weyl(datum)?;
        let mut w0_by_length: Vec<AffineElement> = w0
            .elems
            .iter()
            .map(|u| AffineElement::linear(u.clone()))
            .collect();
        w0_by_length.sort_by_key(|w| (sys.length(w), w.u.clone()));

        let boundary_table = build_boundary_table(&facets);
        Ok(Complex {
            sys,
            facets,
            omega,
            boundary_table,
            positive_coroots,
            alcove_vertices,
            w0_by_length,
        })
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.sys.datum
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    pub fn dim(&self, cell: &Polysimplex) -> i64 {
        if cell.is_augmentation() {
            -1
        } else {
            self.facets.facets[cell.facet].dim as i64
        }
    }

    pub fn augmentation_cell(&self) -> Polysimplex {
        Polysimplex {
            rep: AffineElement::identity(self.rank()),
            facet: AUGMENTATION,
        }
    }

    pub fn origin_vertex_cell(&self) -> Polysimplex {
        Polysimplex {
            rep: AffineElement::identity(self.rank()),
            facet: self.facets.origin_vertex,
        }
    }

    pub fn alcove_cell(&self, w: &AffineElement) -> Polysimplex {
        self.cell(self.facets.alcove, w)
    }

    /// Canonical minimal-length representative of `w W_f`.
    pub fn canonical_rep(&self, facet: usize, w: &AffineElement) -> AffineElement {
        let stab = &self.facets.facets[facet].stabilizer;
        let mut best: Option<(i64, AffineElement)> = None;
        for h in stab {
            let cand = w.mul(h);
            let len = self.sys.length(&cand);
            match &best {
                None => best = Some((len, cand)),
                Some((blen, bw)) => {
                    if (len, &cand) < (*blen, bw) {
                        best = Some((len, cand));
                    }
                }
            }
        }
        best.expect("stabilizer contains the identity").1
    }

    pub fn cell(&self, facet: usize, w: &AffineElement) -> Polysimplex {
        Polysimplex { rep: self.canonical_rep(facet, w), facet }
    }

    /// `w · σ` for `w ∈ W^aff` (or any Σ-automorphism of `W`).
    pub fn act(&self, w: &AffineElement, cell: &Polysimplex) -> Polysimplex {
        if cell.is_augmentation() {
            return cell.clone();
        }
        self.cell(cell.facet, &w.mul(&cell.rep))
    }

    pub fn vertices(&self, cell: &Polysimplex) -> Vec<QVec> {
        assert!(!cell.is_augmentation());
        self.facets.facets[cell.facet]
            .vertices()
            .iter()
            .map(|v| cell.rep.act_point(v))
            .collect()
    }

    pub fn barycenter(&self, cell: &Polysimplex) -> QVec {
        let verts = self.vertices(cell);
        let n = qi(verts.len() as i64);
        (0..self.rank())
            .map(|i| verts.iter().map(|v| v[i].clone()).sum::<Q>() / n.clone())
            .collect()
    }

    /// Ordered orientation tuple of the cell, per irreducible factor:
    /// the facet tuples pushed forward through the representative.
    pub fn oriented_tuples(&self, cell: &Polysimplex) -> Vec<Vec<QVec>> {
        self.facets.facets[cell.facet]
            .factor_vertices
            .iter()
            .map(|fv| fv.iter().map(|(_, v)| cell.rep.act_point(v)).collect())
            .collect()
    }

    /// Is the cell inside the closed chamber `C_I^+` for
    /// `I` = the given positions into `datum.simple`?
    pub fn cell_in_chamber_closure(&self, cell: &Polysimplex, face: &[usize]) -> bool {
        let datum = self.datum();
        self.vertices(cell).iter().all(|v| {
            datum.simple.iter().enumerate().all(|(pos, &ri)| {
                let val = dot_iq(v, &datum.coroots[ri]);
                if face.contains(&pos) {
                    val.is_zero()
                } else {
                    val >= Q::zero()
                }
            })
        })
    }

    pub fn cell_dominant(&self, cell: &Polysimplex) -> bool {
        let datum = self.datum();
        self.vertices(cell).iter().all(|v| datum.is_dominant(v))
    }

    /// Simple roots vanishing on the whole cell (positions into `simple`).
    pub fn cell_face(&self, cell: &Polysimplex) -> Vec<usize> {
        let datum = self.datum();
        let verts = self.vertices(cell);
        (0..datum.simple.len())
            .filter(|&pos| {
                let coroot = &datum.coroots[datum.simple[pos]];
                verts.iter().all(|v| dot_iq(v, coroot).is_zero())
            })
            .collect()
    }

    // --- boundary ----------------------------------------------------

    /// `∂(w·f̄) = w·∂(f̄)` from the fundamental table.
    pub fn boundary_cell(&self, cell: &Polysimplex) -> Chain {
        if cell.is_augmentation() {
            return Chain::zero(-2);
        }
        let dim = self.dim(cell);
        if dim == 0 {
            let mut terms = BTreeMap::new();
            terms.insert(self.augmentation_cell(), qi(1));
            return Chain { degree: -1, terms };
        }
        let mut chain = Chain::zero(dim - 1);
        for &(sub, sign) in &self.boundary_table[cell.facet] {
            chain.add_term(self.cell(sub, &cell.rep), qi(sign));
        }
        chain
    }

    pub fn boundary(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero(c.degree - 1);
        for (cell, coeff) in &c.terms {
            let b = self.boundary_cell(cell);
            for (sub, s) in b.terms {
                out.add_term(sub, s * coeff);
            }
        }
        out
    }

    pub fn act_chain(&self, w: &AffineElement, c: &Chain) -> Chain {
        let mut out = Chain::zero(c.degree);
        for (cell, coeff) in &c.terms {
            out.add_term(self.act(w, cell), coeff.clone());
        }
        out
    }

    // --- regions -----------------------------------------------------

    /// `A(K)`: per positive root, the floor/ceiling interval of the pairing
    /// over the points of `K` and the fundamental alcove.
    pub fn region_of_points(&self, points: &[QVec]) -> Region {
        let mut intervals = Vec::with_capacity(self.positive_coroots.len());
        for coroot in &self.positive_coroots {
            let mut lo = i64::MAX;
            let mut hi = i64::MIN;
            for p in points.iter().chain(self.alcove_vertices.iter()) {
                let v = dot_iq(p, coroot);
                lo = lo.min(q_floor_i64(&v));
                hi = hi.max(q_ceil_i64(&v));
            }
            intervals.push((lo, hi));
        }
        Region { intervals }
    }

    pub fn region_of_cells(&self, cells: &[Polysimplex]) -> Region {
        let pts: Vec<QVec> =
            cells.iter().flat_map(|c| self.vertices(c)).collect();
        self.region_of_points(&pts)
    }

    pub fn region_contains_point(&self, region: &Region, p: &[Q]) -> bool {
        self.positive_coroots.iter().zip(region.intervals.iter()).all(
            |(coroot, &(lo, hi))| {
                let v = dot_iq(p, coroot);
                qi(lo) <= v && v <= qi(hi)
            },
        )
    }

    pub fn region_contains_cell(&self, region: &Region, cell: &Polysimplex) -> bool {
        self.vertices(cell)
            .iter()
            .all(|v| self.region_contains_point(region, v))
    }

    /// All alcoves inside the region, as canonical alcove cells, found by a
    /// wall-crossing search from the fundamental alcove (regions are convex
    /// and always contain it).
    pub fn alcoves_in_region(&self, region: &Region) -> Vec<Polysimplex> {
        let e = AffineElement::identity(self.rank());
        let start = self.alcove_cell(&e);
        assert!(
            self.region_contains_cell(region, &start),
            "regions contain the fundamental alcove by construction"
        );
        let mut seen: HashSet<AffineElement> = HashSet::new();
        seen.insert(e.clone());
        let mut out = vec![start];
        let mut frontier = vec![e];
        while let Some(w) = frontier.pop() {
            for s in &self.sys.generators {
                let n = w.mul(s);
                if seen.contains(&n) {
                    continue;
                }
                let cell = self.alcove_cell(&n);
                if self.region_contains_cell(region, &cell) {
                    seen.insert(n.clone());
                    out.push(cell);
                    frontier.push(n);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// All `n`-cells inside the region (faces of the region's alcoves),
    /// sorted canonically.
    pub fn cells_in_region(&self, region: &Region, dim: usize) -> Vec<Polysimplex> {
        let alcoves = self.alcoves_in_region(region);
        let mut out: HashSet<Polysimplex> = HashSet::new();
        for a in &alcoves {
            for (fid, f) in self.facets.facets.iter().enumerate() {
                if f.dim == dim {
                    out.insert(self.cell(fid, &a.rep));
                }
            }
        }
        let mut cells: Vec<Polysimplex> = out
            .into_iter()
            .filter(|c| self.region_contains_cell(region, c))
            .collect();
        cells.sort();
        cells
    }

    /// Identify the cell with the given vertex set; for irreducible data
    /// also return the sign of the given tuple against the cell's canonical
    /// orientation.
    pub fn cell_from_vertex_tuple(&self, tuple: &[QVec]) -> Result<(Polysimplex, i64)> {
        if self.sys.factors.len() != 1 {
            return Err(Error::Invalid(
                "vertex-tuple cell construction requires an irreducible datum".into(),
            ));
        }
        let region = self.region_of_points(&tuple.to_vec());
        let dim = tuple.len() - 1;
        let mut sorted_given: Vec<QVec> = tuple.to_vec();
        sorted_given.sort();
        let candidates = self.cells_in_region(&region, dim);
        let mut hit = None;
        for c in candidates {
            let mut verts = self.vertices(&c);
            verts.sort();
            if verts == sorted_given {
                hit = Some(c);
                break;
            }
        }
        let cell =
            hit.ok_or_else(|| Error::Invalid("no cell with these vertices".into()))?;
        let canonical = &self.oriented_tuples(&cell)[0];
        // permutation sign sending the canonical tuple to the given tuple
        let mut perm = Vec::with_capacity(tuple.len());
        for v in tuple {
            let pos = canonical
                .iter()
                .position(|c| c == v)
                .ok_or_else(|| Error::Invalid("tuple vertex mismatch".into()))?;
            perm.push(pos);
        }
        let mut sign = 1i64;
        let mut p = perm.clone();
        for i in 0..p.len() {
            while p[i] != i {
                let j = p[i];
                p.swap(i, j);
                sign = -sign;
            }
        }
        Ok((cell, sign))
    }

    /// Oriented chain from a list of (vertex tuple, coefficient) pairs.
    pub fn chain_from_tuples(&self, terms: &[(Vec<QVec>, Q)]) -> Result<Chain> {
        assert!(!terms.is_empty());
        let mut chain = Chain::zero(terms[0].0.len() as i64 - 1);
        for (tuple, coeff) in terms {
            let (cell, sign) = self.cell_from_vertex_tuple(tuple)?;
            chain.add_term(cell, qi(sign) * coeff);
        }
        Ok(chain)
    }
}

fn build_boundary_table(facets: &FacetSet) -> Vec<Vec<(usize, i64)>> {
    let mut table = Vec::with_capacity(facets.facets.len());
    for f in &facets.facets {
        let mut terms: Vec<(usize, i64)> = Vec::new();
        if f.dim == 0 {
            table.push(terms);
            continue;
        }
        // product rule: sign (-1)^{d_1+...+d_{j-1}} on factor j, then the
        // alternating sum over dropped vertices inside the factor
        let mut dim_prefix = 0i64;
        for (fi, fv) in f.factor_vertices.iter().enumerate() {
            let dj = fv.len() as i64 - 1;
            if dj > 0 {
                let outer = if dim_prefix % 2 == 0 { 1 } else { -1 };
                for (drop, dropped) in fv.iter().enumerate() {
                    let inner = if drop % 2 == 0 { 1 } else { -1 };
                    let mut j_sets = f.j_sets.clone();
                    j_sets[fi].push(dropped.0);
                    j_sets[fi].sort();
                    let sub = facets
                        .lookup(&j_sets)
                        .expect("boundary facet must exist");
                    terms.push((sub, outer * inner));
                }
            }
            dim_prefix += dj;
        }
        table.push(terms);
    }
    table
}

/// Integer intervals `[m(K,α), M(K,α)]` per positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub intervals: Vec<(i64, i64)>,
}

/// Sparse chain: degree plus a canonical map cell ↦ coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: i64,
    pub terms: BTreeMap<Polysimplex, Q>,
}

impl Chain {
    pub fn zero(degree: i64) -> Chain {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn single(cell: Polysimplex, degree: i64) -> Chain {
        let mut c = Chain::zero(degree);
        c.add_term(cell, qi(1));
        c
    }

    pub fn add_term(&mut self, cell: Polysimplex, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(cell).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            // re-borrow immutably to remove; find the key we just touched
            let dead: Vec<Polysimplex> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (cell, coeff) in &other.terms {
            out.add_term(cell.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (cell, coeff) in &other.terms {
            out.add_term(cell.clone(), -coeff.clone());
        }
        out
    }

    pub fn scale(&self, q: &Q) -> Chain {
        if q.is_zero() {
            return Chain::zero(self.degree);
        }
        Chain {
            degree: self.degree,
            terms: self.terms.iter().map(|(c, v)| (c.clone(), v * q)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<&Polysimplex> {
        self.terms.keys().collect()
    }

    pub fn max_abs_coeff(&self) -> Q {
        self.terms
            .values()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }
}

/// Exact Betti numbers of the augmented subcomplex on all cells of a
/// region: `dim H_n = dim C_n - rank ∂_n - rank ∂_{n+1}`.
pub fn augmented_homology_dims(cx: &Complex, region: &Region) -> Vec<(i64, usize)> {
    let top = cx.rank();
    let mut cells_by_dim: Vec<Vec<Polysimplex>> = Vec::new();
    for n in 0..=top {
        cells_by_dim.push(cx.cells_in_region(region, n));
    }
    // boundary matrix ranks; degree -1 has the single augmentation cell
    let mut ranks: Vec<usize> = Vec::new(); // rank of ∂_n : C_n -> C_{n-1}
    for n in 0..=top {
        let rows_cells: Vec<Polysimplex> = if n == 0 {
            vec![cx.augmentation_cell()]
        } else {
            cells_by_dim[n - 1].clone()
        };
        let row_index: HashMap<&Polysimplex, usize> =
            rows_cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let cols = &cells_by_dim[n];
        let mut matrix: Vec<Vec<Q>> = vec![vec![Q::zero(); cols.len()]; rows_cells.len()];
        for (j, cell) in cols.iter().enumerate() {
            for (sub, coeff) in cx.boundary_cell(cell).terms {
                let i = row_index[&sub];
                matrix[i][j] = coeff;
            }
        }
        ranks.push(crate::exact::rank_q(&matrix));
    }
    ranks.push(0); // ∂_{top+1} = 0
    let mut out = Vec::new();
    // H_{-1} = C_{-1} / im ∂_0
    out.push((-1, 1 - ranks[0]));
    for n in 0..=top {
        let dim_c = cells_by_dim[n].len();
        out.push((n as i64, dim_c - ranks[n] - ranks[n + 1]));
    }
    out
}
