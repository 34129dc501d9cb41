//! The extended affine Weyl group `W = X ⋊ W₀` and `W^aff = ZR₀ ⋊ W₀`:
//! actions on `E` and on affine roots, the four length computations,
//! reduced words, galleries, the right weak order, fundamental facets of
//! the alcove, the length-zero subgroup Ω, and isotropy groups of points.

use std::collections::{HashMap, HashSet};

use num::Zero;

use crate::exact::{dot_iq, qi, qvec_to_i64, solve_q, Q, QVec};
use crate::intmat::IntMat;
use crate::rootdata::BasedRootDatum;
use crate::{Error, Result};

/// `w = t_x ∘ u`, acting on `E` by `p ↦ x + u·p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffineElement {
    pub x: Vec<i64>,
    pub u: IntMat,
}

impl AffineElement {
    pub fn identity(d: usize) -> Self {
        AffineElement { x: vec![0; d], u: IntMat::identity(d) }
    }

    pub fn translation(x: Vec<i64>) -> Self {
        let d = x.len();
        AffineElement { x, u: IntMat::identity(d) }
    }

    pub fn linear(u: IntMat) -> Self {
        AffineElement { x: vec![0; u.n], u }
    }

    pub fn new(x: Vec<i64>, u: IntMat) -> Self {
        assert_eq!(x.len(), u.n);
        AffineElement { x, u }
    }

    /// `(x,u)(y,v) = (x + u·y, uv)`.
    pub fn mul(&self, other: &AffineElement) -> AffineElement {
        let uy = self.u.matvec(&other.x);
        let x = self.x.iter().zip(uy.iter()).map(|(a, b)| a + b).collect();
        AffineElement { x, u: self.u.mul(&other.u) }
    }

    /// `(x,u)^{-1} = (-u^{-1}x, u^{-1})`.
    pub fn inverse(&self) -> AffineElement {
        let ui = self.u.inverse().expect("finite part must be unimodular");
        let x = ui.matvec(&self.x).iter().map(|c| -c).collect();
        AffineElement { x, u: ui }
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|&c| c == 0) && self.u.is_identity()
    }

    /// `ρ(w)(p) = x + u·p`.
    pub fn act_point(&self, p: &[Q]) -> QVec {
        let up = self.u.matvec_q(p);
        self.x.iter().zip(up.into_iter()).map(|(&c, v)| qi(c) + v).collect()
    }

    pub fn act_lattice_point(&self, p: &[i64]) -> Vec<i64> {
        let up = self.u.matvec(p);
        self.x.iter().zip(up.iter()).map(|(a, b)| a + b).collect()
    }
}

/// The affine functional `x ↦ ⟨x, α^∨⟩ + k`, for `α^∨ ∈ R₀^∨`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineRoot {
    pub coroot: Vec<i64>,
    pub k: i64,
}

impl AffineRoot {
    pub fn eval(&self, p: &[Q]) -> Q {
        dot_iq(p, &self.coroot) + qi(self.k)
    }

    /// Positive iff `k > 0`, or `k = 0` and the coroot is positive.
    pub fn is_positive(&self, datum: &BasedRootDatum) -> bool {
        if self.k != 0 {
            return self.k > 0;
        }
        let idx = root_index_of_coroot(datum, &self.coroot)
            .expect("coroot must belong to the datum");
        datum.positive_root_indices().contains(&idx)
    }

    /// `(w·a)(p) = a(w^{-1} p)`: the coroot moves by the contragredient of
    /// the finite part, the constant absorbs the translation.
    pub fn act(&self, w: &AffineElement) -> AffineRoot {
        let ui = w.u.inverse().expect("unimodular");
        let new_coroot = ui.transpose().matvec(&self.coroot);
        let shift: i64 = w.x.iter().zip(new_coroot.iter()).map(|(a, b)| a * b).sum();
        AffineRoot { coroot: new_coroot, k: self.k - shift }
    }
}

pub fn root_index_of_coroot(datum: &BasedRootDatum, coroot: &[i64]) -> Option<usize> {
    datum.coroots.iter().position(|c| c == coroot)
}

/// Affine reflection in the vanishing hyperplane of `a = (α^∨, k)`:
/// `x ↦ x - (⟨x,α^∨⟩ + k) α`, i.e. `t_{-kα} ∘ s_α`.
pub fn reflection(datum: &BasedRootDatum, a: &AffineRoot) -> AffineElement {
    let idx = root_index_of_coroot(datum, &a.coroot).expect("coroot in datum");
    let alpha = &datum.roots[idx];
    let linear = datum.reflection_matrix(idx);
    let x = alpha.iter().map(|&c| -a.k * c).collect();
    AffineElement { x, u: linear }
}

/// One irreducible factor of the datum: simple-root positions (into
/// `datum.simple`), the highest coroot, and the affine basis of the factor.
#[derive(Clone, Debug)]
pub struct Factor {
    pub simple_positions: Vec<usize>,
    pub highest_coroot: Vec<i64>,
    /// `[ (α_i^∨, 0) for i in factor ] ++ [ (-θ^∨, 1) ]`
    pub affine_basis: Vec<AffineRoot>,
}

/// Affine-root basis `F^aff` and the Coxeter generators `S^aff` of `W^aff`.
/// Generators are ordered: all simple reflections in datum order, then one
/// affine reflection per irreducible factor.
#[derive(Clone, Debug)]
pub struct AffineSystem {
    pub datum: BasedRootDatum,
    pub factors: Vec<Factor>,
    pub simple_affine_roots: Vec<AffineRoot>,
    pub generators: Vec<AffineElement>,
    pub generator_names: Vec<String>,
}

impl AffineSystem {
    pub fn new(datum: &BasedRootDatum) -> Result<Self> {
        if !datum.is_semisimple() {
            return Err(Error::NotSemisimple);
        }
        let factors = split_factors(datum)?;
        let mut simple_affine_roots: Vec<AffineRoot> = datum
            .simple
            .iter()
            .map(|&i| AffineRoot { coroot: datum.coroots[i].clone(), k: 0 })
            .collect();
        let mut names: Vec<String> =
            (1..=datum.simple.len()).map(|i| format!("s{i}")).collect();
        for (fi, f) in factors.iter().enumerate() {
            simple_affine_roots.push(f.affine_basis.last().unwrap().clone());
            if factors.len() == 1 {
                names.push("s0".to_string());
            } else {
                names.push(format!("s0.{fi}"));
            }
        }
        let generators = simple_affine_roots
            .iter()
            .map(|a| reflection(datum, a))
            .collect();
        Ok(AffineSystem {
            datum: datum.clone(),
            factors,
            simple_affine_roots,
            generators,
            generator_names: names,
        })
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// `x ∈ ZR₀`, i.e. membership of `t_x·u` in `W^aff`.
    pub fn in_affine_weyl_group(&self, w: &AffineElement) -> bool {
        self.datum.in_root_lattice(&w.x)
    }

    // --- length ------------------------------------------------------

    /// Closed-form length of `t_x·u`, used internally everywhere:
    /// `Σ_{α>0, uα>0} |⟨x,(uα)^∨⟩| + Σ_{α>0, uα<0} |⟨x,(uα)^∨⟩ + 1|`.
    pub fn length(&self, w: &AffineElement) -> i64 {
        let datum = &self.datum;
        let pos = datum.positive_root_indices();
        let pos_set: HashSet<&Vec<i64>> =
            pos.iter().map(|&i| &datum.roots[i]).collect();
        let contragredient = w.u.inverse().expect("unimodular").transpose();
        let mut total = 0i64;
        for &i in &pos {
            let image_root = w.u.matvec(&datum.roots[i]);
            let image_coroot = contragredient.matvec(&datum.coroots[i]);
            let c: i64 = w.x.iter().zip(image_coroot.iter()).map(|(a, b)| a * b).sum();
            if pos_set.contains(&image_root) {
                total += c.abs();
            } else {
                total += (c + 1).abs();
            }
        }
        total
    }

    /// Length by direct enumeration of flipped affine roots
    /// `#{a ∈ R₊^aff : w·a ∈ R₋^aff}`.
    pub fn length_roots(&self, w: &AffineElement) -> i64 {
        let datum = &self.datum;
        let bound = datum
            .coroots
            .iter()
            .map(|c| w.x.iter().zip(c.iter()).map(|(a, b)| a * b).sum::<i64>().abs())
            .max()
            .unwrap_or(0)
            + 1;
        let mut count = 0;
        for coroot in &datum.coroots {
            for k in -bound..=bound {
                let a = AffineRoot { coroot: coroot.clone(), k };
                if a.is_positive(datum) && !a.act(w).is_positive(datum) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Length as the number of hyperplanes separating `A_∅` and `w A_∅`,
    /// decided by the sign of each functional at the two barycenters.
    pub fn length_hyperplanes(&self, w: &AffineElement, alcove_barycenter: &[Q]) -> i64 {
        let datum = &self.datum;
        let here = alcove_barycenter.to_vec();
        let there = w.act_point(&here);
        let pos = datum.positive_root_indices();
        let mut count = 0;
        for &i in &pos {
            let coroot = &datum.coroots[i];
            let v1 = dot_iq(&here, coroot);
            let v2 = dot_iq(&there, coroot);
            let (lo, hi) = if v1 < v2 { (&v1, &v2) } else { (&v2, &v1) };
            // hyperplanes ⟨x,α^∨⟩ = k strictly between the barycenters
            let mut k: num::BigInt = lo.floor().to_integer() + 1;
            let stop: num::BigInt = hi.ceil().to_integer();
            while k < stop {
                let kq = Q::from_integer(k.clone());
                if &kq > lo && &kq < hi {
                    count += 1;
                }
                k += 1;
            }
        }
        count
    }

    /// Minimal gallery length: breadth-first search through wall-sharing
    /// alcoves, keyed by barycenter.
    pub fn length_gallery(&self, w: &AffineElement, alcove_barycenter: &[Q]) -> i64 {
        let start = alcove_barycenter.to_vec();
        let target = w.act_point(&start);
        if target == start {
            return 0;
        }
        let mut dist: HashMap<QVec, i64> = HashMap::new();
        dist.insert(start.clone(), 0);
        let mut frontier = vec![(start, AffineElement::identity(self.rank()))];
        loop {
            let mut next = Vec::new();
            for (bary, elem) in frontier {
                let d = dist[&bary];
                for s in &self.generators {
                    let nelem = elem.mul(s);
                    let nbary = nelem.act_point(alcove_barycenter);
                    if nbary == target {
                        return d + 1;
                    }
                    if let std::collections::hash_map::Entry::Vacant(slot) =
                        dist.entry(nbary.clone())
                    {
                        slot.insert(d + 1);
                        next.push((nbary, nelem));
                    }
                }
            }
            assert!(!next.is_empty(), "gallery search must terminate");
            frontier = next;
        }
    }

    /// Length of the greedy descent word. Only defined on `W^aff`.
    pub fn length_word(&self, w: &AffineElement) -> Result<i64> {
        Ok(self.reduced_word(w)?.len() as i64)
    }

    /// A reduced word by the descent algorithm: repeatedly strip a simple
    /// affine root that `w` sends negative.
    pub fn reduced_word(&self, w: &AffineElement) -> Result<Vec<usize>> {
        if !self.in_affine_weyl_group(w) {
            return Err(Error::NotInAffineWeylGroup);
        }
        let mut word = Vec::new();
        let mut cur = w.clone();
        let budget = self.length(w) + 1;
        for _ in 0..=budget {
            if cur.is_identity() {
                word.reverse();
                return Ok(word);
            }
            let descent = self
                .simple_affine_roots
                .iter()
                .position(|a| !a.act(&cur).is_positive(&self.datum))
                .expect("non-identity element has a descent");
            cur = cur.mul(&self.generators[descent]);
            word.push(descent);
        }
        Err(Error::DecompositionFailure("descent loop exceeded length".into()))
    }

    pub fn element_of_word(&self, word: &[usize]) -> AffineElement {
        let mut w = AffineElement::identity(self.rank());
        for &s in word {
            w = w.mul(&self.generators[s]);
        }
        w
    }

    /// `u ≤_A w ⟺ ℓ(u) + ℓ(u^{-1}w) = ℓ(w)`.
    pub fn le_a(&self, u: &AffineElement, w: &AffineElement) -> bool {
        self.length(u) + self.length(&u.inverse().mul(w)) == self.length(w)
    }

    /// All `w ∈ W^aff` with `ℓ(w) ≤ maxlen`, BFS by right multiplication.
    pub fn ball(&self, maxlen: i64) -> Vec<AffineElement> {
        let mut seen: HashSet<AffineElement> = HashSet::new();
        let e = AffineElement::identity(self.rank());
        seen.insert(e.clone());
        let mut frontier = vec![e];
        for _ in 0..maxlen {
            let mut next = Vec::new();
            for w in &frontier {
                for s in &self.generators {
                    let n = w.mul(s);
                    if seen.insert(n.clone()) {
                        next.push(n);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<AffineElement> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Count reduced words of `w` (paths in the descent DAG).
    pub fn count_reduced_words(&self, w: &AffineElement) -> Result<u64> {
        if !self.in_affine_weyl_group(w) {
            return Err(Error::NotInAffineWeylGroup);
        }
        fn go(
            sys: &AffineSystem,
            w: &AffineElement,
            memo: &mut HashMap<AffineElement, u64>,
        ) -> u64 {
            if w.is_identity() {
                return 1;
            }
            if let Some(&c) = memo.get(w) {
                return c;
            }
            let mut total = 0;
            for (i, a) in sys.simple_affine_roots.iter().enumerate() {
                if !a.act(w).is_positive(&sys.datum) {
                    total += go(sys, &w.mul(&sys.generators[i]), memo);
                }
            }
            memo.insert(w.clone(), total);
            total
        }
        let mut memo = HashMap::new();
        Ok(go(self, w, &mut memo))
    }
}

/// Split the simple roots into irreducible factors and find the highest
/// coroot of each (the unique dominance-maximal positive coroot).
fn split_factors(datum: &BasedRootDatum) -> Result<Vec<Factor>> {
    let r = datum.simple.len();
    let mut adj = vec![vec![]; r];
    for a in 0..r {
        for b in 0..r {
            if a != b {
                let pairing: i64 = datum.roots[datum.simple[a]]
                    .iter()
                    .zip(datum.coroots[datum.simple[b]].iter())
                    .map(|(x, y)| x * y)
                    .sum();
                if pairing != 0 {
                    adj[a].push(b);
                }
            }
        }
    }
    let mut comp = vec![usize::MAX; r];
    let mut ncomp = 0;
    for start in 0..r {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = ncomp;
        while let Some(v) = stack.pop() {
            for &n in &adj[v] {
                if comp[n] == usize::MAX {
                    comp[n] = ncomp;
                    stack.push(n);
                }
            }
        }
        ncomp += 1;
    }
    let mut factors = Vec::new();
    for c in 0..ncomp {
        let simple_positions: Vec<usize> = (0..r).filter(|&i| comp[i] == c).collect();
        let coroot_rows = |_unused: ()| -> Vec<Vec<Q>> {
            (0..datum.rank)
                .map(|row| {
                    simple_positions
                        .iter()
                        .map(|&p| qi(datum.coroots[datum.simple[p]][row]))
                        .collect()
                })
                .collect()
        };
        let rows = coroot_rows(());
        let pos = datum.positive_root_indices();
        let factor_coroots: Vec<Vec<i64>> = pos
            .iter()
            .map(|&i| datum.coroots[i].clone())
            .filter(|cr| {
                let rhs: QVec = cr.iter().map(|&x| qi(x)).collect();
                solve_q(&rows, &rhs).is_some()
            })
            .collect();
        let dominates = |a: &Vec<i64>, b: &Vec<i64>| -> bool {
            let rhs: QVec = a.iter().zip(b.iter()).map(|(x, y)| qi(x - y)).collect();
            match solve_q(&rows, &rhs) {
                Some(coefs) => coefs.iter().all(|c| c >= &Q::zero()),
                None => false,
            }
        };
        let maximal: Vec<&Vec<i64>> = factor_coroots
            .iter()
            .filter(|a| factor_coroots.iter().all(|b| *a == b || !dominates(b, a)))
            .collect();
        if maximal.len() != 1 {
            return Err(Error::Invalid(
                "factor does not have a unique highest coroot".into(),
            ));
        }
        let highest = maximal[0].clone();
        let mut affine_basis: Vec<AffineRoot> = simple_positions
            .iter()
            .map(|&p| AffineRoot { coroot: datum.coroots[datum.simple[p]].clone(), k: 0 })
            .collect();
        affine_basis.push(AffineRoot {
            coroot: highest.iter().map(|&x| -x).collect(),
            k: 1,
        });
        factors.push(Factor { simple_positions, highest_coroot: highest, affine_basis });
    }
    Ok(factors)
}

// ---------------------------------------------------------------------------
// Fundamental facets

/// A facet of the closed fundamental alcove: per irreducible factor, the
/// subset `J` of the factor's affine basis vanishing on it. Vertices per
/// factor are kept lexicographically sorted; that ordering fixes the
/// orientation of every cell of Σ.
#[derive(Clone, Debug)]
pub struct FundamentalFacet {
    pub id: usize,
    /// Per factor: sorted positions (into the factor's affine basis) of the
    /// roots vanishing on this facet. Proper subsets.
    pub j_sets: Vec<Vec<usize>>,
    pub dim: usize,
    /// Per factor: `(affine basis position, vertex)` pairs, sorted by
    /// vertex; these tuples carry the orientation.
    pub factor_vertices: Vec<Vec<(usize, QVec)>>,
    /// Pointwise stabilizer `W_f`, generated by the reflections in `J`.
    pub stabilizer: Vec<AffineElement>,
    pub stabilizer_generators: Vec<AffineElement>,
}

impl FundamentalFacet {
    /// All vertices of the (product) cell.
    pub fn vertices(&self) -> Vec<QVec> {
        let d = self.ambient_rank();
        let mut out = vec![vec![Q::zero(); d]];
        for factor in &self.factor_vertices {
            let mut next = Vec::new();
            for base in &out {
                for (_, v) in factor {
                    let sum: QVec =
                        base.iter().zip(v.iter()).map(|(a, b)| a + b).collect();
                    next.push(sum);
                }
            }
            out = next;
        }
        out
    }

    fn ambient_rank(&self) -> usize {
        self.factor_vertices[0][0].1.len()
    }

    pub fn barycenter(&self) -> QVec {
        let verts = self.vertices();
        let n = qi(verts.len() as i64);
        let d = verts[0].len();
        (0..d)
            .map(|i| verts.iter().map(|v| v[i].clone()).sum::<Q>() / n.clone())
            .collect()
    }
}

/// Facets of the fundamental alcove.
pub struct FacetSet {
    pub facets: Vec<FundamentalFacet>,
    /// Facet id of the full alcove (`J = ∅` in every factor).
    pub alcove: usize,
    /// Facet id of the origin vertex.
    pub origin_vertex: usize,
    facet_by_jsets: HashMap<Vec<Vec<usize>>, usize>,
}

impl FacetSet {
    pub fn lookup(&self, j_sets: &[Vec<usize>]) -> Option<usize> {
        self.facet_by_jsets.get(j_sets).copied()
    }
}

/// Enumerate all facets `A_J` of the closed fundamental alcove.
pub fn fundamental_facets(sys: &AffineSystem) -> Result<FacetSet> {
    let datum = &sys.datum;
    let d = datum.rank;
    // vertex of each affine basis element, per factor: the point of the
    // factor's span where the other basis roots of the factor vanish
    let mut factor_vertex_tables: Vec<Vec<QVec>> = Vec::new();
    for (fi, f) in sys.factors.iter().enumerate() {
        let mut table = Vec::new();
        for chosen in 0..f.affine_basis.len() {
            let mut rows: Vec<Vec<Q>> = Vec::new();
            let mut rhs: Vec<Q> = Vec::new();
            for (i, a) in f.affine_basis.iter().enumerate() {
                if i == chosen {
                    continue;
                }
                rows.push(a.coroot.iter().map(|&c| qi(c)).collect());
                rhs.push(qi(-a.k));
            }
            for (gi, g) in sys.factors.iter().enumerate() {
                if gi == fi {
                    continue;
                }
                for &p in &g.simple_positions {
                    rows.push(
                        datum.coroots[datum.simple[p]].iter().map(|&c| qi(c)).collect(),
                    );
                    rhs.push(qi(0));
                }
            }
            let v = solve_q(&rows, &rhs).ok_or_else(|| {
                Error::Invalid("fundamental alcove vertex system unsolvable".into())
            })?;
            debug_assert_eq!(v.len(), d);
            table.push(v);
        }
        factor_vertex_tables.push(table);
    }

    // all combinations of proper subsets per factor
    let mut per_factor_subsets: Vec<Vec<Vec<usize>>> = Vec::new();
    for f in &sys.factors {
        let n = f.affine_basis.len();
        let mut subsets = Vec::new();
        for mask in 0..(1u32 << n) {
            if mask == (1 << n) - 1 {
                continue; // J must be proper
            }
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            subsets.push(set);
        }
        per_factor_subsets.push(subsets);
    }
    let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for subsets in &per_factor_subsets {
        let mut next = Vec::new();
        for c in &combos {
            for s in subsets {
                let mut c2 = c.clone();
                c2.push(s.clone());
                next.push(c2);
            }
        }
        combos = next;
    }
    combos.sort_by_key(|j_sets| {
        let dim: usize = sys
            .factors
            .iter()
            .zip(j_sets.iter())
            .map(|(f, j)| f.affine_basis.len() - 1 - j.len())
            .sum();
        (dim, j_sets.clone())
    });

    let mut facets = Vec::new();
    let mut facet_by_jsets = HashMap::new();
    for (id, j_sets) in combos.into_iter().enumerate() {
        let mut factor_vertices = Vec::new();
        let mut dim = 0;
        let mut gens = Vec::new();
        for (fi, f) in sys.factors.iter().enumerate() {
            let j = &j_sets[fi];
            let mut fv: Vec<(usize, QVec)> = (0..f.affine_basis.len())
                .filter(|i| !j.contains(i))
                .map(|i| (i, factor_vertex_tables[fi][i].clone()))
                .collect();
            fv.sort_by(|a, b| a.1.cmp(&b.1));
            dim += fv.len() - 1;
            for &i in j {
                gens.push(reflection(datum, &f.affine_basis[i]));
            }
            factor_vertices.push(fv);
        }
        let stabilizer = close_affine_group(&gens, d);
        facet_by_jsets.insert(j_sets.clone(), id);
        facets.push(FundamentalFacet {
            id,
            j_sets,
            dim,
            factor_vertices,
            stabilizer,
            stabilizer_generators: gens,
        });
    }
    let alcove = facets
        .iter()
        .position(|f| f.j_sets.iter().all(|j| j.is_empty()))
        .expect("alcove facet exists");
    let zero = vec![Q::zero(); d];
    let origin_vertex = facets
        .iter()
        .position(|f| f.dim == 0 && f.vertices()[0] == zero)
        .expect("origin vertex facet exists");
    Ok(FacetSet { facets, alcove, origin_vertex, facet_by_jsets })
}

fn close_affine_group(gens: &[AffineElement], d: usize) -> Vec<AffineElement> {
    let mut seen: HashSet<AffineElement> = HashSet::new();
    let e = AffineElement::identity(d);
    seen.insert(e.clone());
    let mut frontier = vec![e];
    while let Some(w) = frontier.pop() {
        for g in gens {
            let n = w.mul(g);
            if seen.insert(n.clone()) {
                frontier.push(n);
            }
        }
    }
    let mut out: Vec<AffineElement> = seen.into_iter().collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Omega and isotropy

/// `Ω = {w ∈ W : ℓ(w) = 0}`: the elements mapping the closed fundamental
/// alcove to itself. `|Ω| = [X : ZR₀]`.
pub fn omega(sys: &AffineSystem, facets: &FacetSet) -> Result<Vec<AffineElement>> {
    let datum = &sys.datum;
    let alcove = &facets.facets[facets.alcove];
    let mut verts = alcove.vertices();
    verts.sort();
    let w0 = crate::finitegroup::MatrixGroup::from_datum_weyl(datum)?;
    let mut out = Vec::new();
    for u in &w0.elems {
        for v in &verts {
            // candidate ω = t_x ∘ u with ω(0) = v requires x = v ∈ X
            let Some(x) = qvec_to_i64(v) else { continue };
            let cand = AffineElement::new(x, u.clone());
            let mut image: Vec<QVec> = verts.iter().map(|p| cand.act_point(p)).collect();
            image.sort();
            if image == verts {
                out.push(cand);
            }
        }
    }
    out.sort();
    out.dedup();
    let expected = datum.root_lattice_index()?;
    if out.len() as i64 != expected {
        return Err(Error::Invalid(format!(
            "omega has {} elements, expected index {}",
            out.len(),
            expected
        )));
    }
    Ok(out)
}

/// `Ω_f`: the elements of Ω preserving the facet setwise.
pub fn omega_f(omega: &[AffineElement], facet: &FundamentalFacet) -> Vec<AffineElement> {
    let mut verts = facet.vertices();
    verts.sort();
    omega
        .iter()
        .filter(|w| {
            let mut image: Vec<QVec> = verts.iter().map(|p| w.act_point(p)).collect();
            image.sort();
            image == verts
        })
        .cloned()
        .collect()
}

/// The finite subgroup of `W = X ⋊ W₀` fixing `p`: for each `u ∈ W₀` the
/// translation is forced to `x = p - u·p`, which must land in `X`.
pub fn isotropy(datum: &BasedRootDatum, p: &[Q]) -> Result<Vec<AffineElement>> {
    if !datum.is_semisimple() {
        return Err(Error::InfiniteStabilizer);
    }
    let w0 = crate::finitegroup::MatrixGroup::from_datum_weyl(datum)?;
    let mut out = Vec::new();
    for u in &w0.elems {
        let up = u.matvec_q(p);
        let diff: QVec = p.iter().zip(up.iter()).map(|(a, b)| a - b).collect();
        if let Some(x) = qvec_to_i64(&diff) {
            out.push(AffineElement::new(x, u.clone()));
        }
    }
    out.sort();
    Ok(out)
}

/// Walk `p` into the closed fundamental alcove, returning the landing point
/// and the element `w` with `w(p)` inside.
pub fn reduce_to_alcove(sys: &AffineSystem, p: &[Q]) -> (QVec, AffineElement) {
    let mut point = p.to_vec();
    let mut w = AffineElement::identity(sys.rank());
    loop {
        let mut moved = false;
        for (i, a) in sys.simple_affine_roots.iter().enumerate() {
            if a.eval(&point) < Q::zero() {
                let s = &sys.generators[i];
                point = s.act_point(&point);
                w = s.mul(&w);
                moved = true;
                break;
            }
        }
        if !moved {
            return (point, w);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qr;

    fn b2() -> AffineSystem {
        let d = BasedRootDatum::preset("B2", "standard").unwrap();
        AffineSystem::new(&d).unwrap()
    }

    fn alcove_barycenter(sys: &AffineSystem) -> QVec {
        let facets = fundamental_facets(sys).unwrap();
        facets.facets[facets.alcove].barycenter()
    }

    #[test]
    fn b2_simple_affine_reflections_act_as_expected() {
        let sys = b2();
        assert_eq!(sys.generator_names, vec!["s1", "s2", "s0"]);
        let p = vec![qr(3, 7), qr(2, 7)];
        // s1: (x1,x2) -> (x2,x1)
        let s1 = &sys.generators[0];
        assert_eq!(s1.act_point(&p), vec![qr(2, 7), qr(3, 7)]);
        // s2: (x1,x2) -> (x1,-x2)
        let s2 = &sys.generators[1];
        assert_eq!(s2.act_point(&p), vec![qr(3, 7), qr(-2, 7)]);
        // s0: (x1,x2) -> (1-x1,x2)
        let s0 = &sys.generators[2];
        assert_eq!(s0.act_point(&p), vec![qr(4, 7), qr(2, 7)]);
        assert_eq!(s0.x, vec![1, 0]);
        let e = AffineElement::identity(2);
        assert_eq!(e.act_point(&p), p);
    }

    #[test]
    fn affine_root_action() {
        let sys = b2();
        // translation: (α^∨,k) -> (α^∨, k - ⟨y,α^∨⟩)
        let ty = AffineElement::translation(vec![2, 1]);
        let a = AffineRoot { coroot: vec![2, 0], k: 3 };
        let b = a.act(&ty);
        assert_eq!(b.coroot, vec![2, 0]);
        assert_eq!(b.k, 3 - 4);
        let e = AffineElement::identity(2);
        assert_eq!(a.act(&e), a);
        // s1 sends (α3^∨,0) to (α2^∨,0); verify by functional values too
        let s1 = sys.generators[0].clone();
        let a3 = AffineRoot { coroot: vec![2, 0], k: 0 };
        let img = a3.act(&s1);
        assert_eq!(img.coroot, vec![0, 2]);
        for sample in [
            vec![qi(1), qi(0)],
            vec![qr(1, 2), qr(1, 3)],
            vec![qi(-2), qi(5)],
        ] {
            let lhs = img.eval(&sample);
            let rhs = a3.eval(&s1.inverse().act_point(&sample));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lengths_b2_examples() {
        let sys = b2();
        let e = AffineElement::identity(2);
        assert_eq!(sys.length(&e), 0);
        for s in &sys.generators {
            assert_eq!(sys.length(s), 1);
        }
        let t10 = AffineElement::translation(vec![1, 0]);
        assert_eq!(sys.length(&t10), 4);
        assert_eq!(sys.length_roots(&t10), 4);
        let w = sys.element_of_word(&[0, 1, 0]);
        assert_eq!(sys.length(&w), 3);
        assert_eq!(sys.reduced_word(&w).unwrap().len(), 3);
    }

    #[test]
    fn four_length_methods_agree_smoke() {
        let sys = b2();
        let bary = alcove_barycenter(&sys);
        for w in sys.ball(4) {
            let l = sys.length(&w);
            assert_eq!(sys.length_roots(&w), l);
            assert_eq!(sys.length_hyperplanes(&w, &bary), l);
            assert_eq!(sys.length_gallery(&w, &bary), l);
            assert_eq!(sys.length_word(&w).unwrap(), l);
        }
    }

    #[test]
    fn le_a_examples() {
        let sys = b2();
        let e = AffineElement::identity(2);
        let w = sys.element_of_word(&[0, 1, 2]);
        assert!(sys.le_a(&e, &w));
        assert!(sys.le_a(&w, &w));
        let s1 = sys.element_of_word(&[0]);
        let s2s1 = sys.element_of_word(&[1, 0]);
        let s1s2 = sys.element_of_word(&[0, 1]);
        assert!(!sys.le_a(&s1, &s2s1));
        assert!(sys.le_a(&s1, &s1s2));
    }

    #[test]
    fn word_method_rejects_non_affine_elements() {
        // A1 realized on roots {±2}: [X : ZR0] = 2
        let d = BasedRootDatum::new(
            1,
            vec![vec![2], vec![-2]],
            vec![vec![1], vec![-1]],
            vec![0],
            "A1-doubled",
        );
        assert!(d.validate().is_empty());
        let sys = AffineSystem::new(&d).unwrap();
        let t1s = AffineElement::new(vec![1], IntMat::from_rows(&[vec![-1]]));
        assert!(!sys.in_affine_weyl_group(&t1s));
        assert_eq!(sys.length(&t1s), 0);
        assert!(matches!(
            sys.reduced_word(&t1s),
            Err(Error::NotInAffineWeylGroup)
        ));
    }

    #[test]
    fn b2_fundamental_facets() {
        let sys = b2();
        let facets = fundamental_facets(&sys).unwrap();
        assert_eq!(facets.facets.len(), 7);
        let dims: Vec<usize> = facets.facets.iter().map(|f| f.dim).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 0).count(), 3);
        assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 3);
        assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 1);
        let mut verts: Vec<QVec> = facets
            .facets
            .iter()
            .filter(|f| f.dim == 0)
            .map(|f| f.vertices()[0].clone())
            .collect();
        verts.sort();
        assert_eq!(
            verts,
            vec![
                vec![qi(0), qi(0)],
                vec![qr(1, 2), qi(0)],
                vec![qr(1, 2), qr(1, 2)],
            ]
        );
        // vertex (1/2, 0) has stabilizer of order 4 (generated by s0, s2)
        let v = facets
            .facets
            .iter()
            .find(|f| f.dim == 0 && f.vertices()[0] == vec![qr(1, 2), qi(0)])
            .unwrap();
        assert_eq!(v.stabilizer.len(), 4);
    }

    #[test]
    fn a1_fundamental_facets() {
        let d = BasedRootDatum::preset("A1", "standard").unwrap();
        let sys = AffineSystem::new(&d).unwrap();
        let facets = fundamental_facets(&sys).unwrap();
        assert_eq!(facets.facets.len(), 3);
    }

    #[test]
    fn omega_trivial_and_nontrivial() {
        let sys = b2();
        let facets = fundamental_facets(&sys).unwrap();
        let om = omega(&sys, &facets).unwrap();
        assert_eq!(om.len(), 1);
        // A1 with roots {±2}: omega has order 2 and normalizes S^aff
        let d = BasedRootDatum::new(
            1,
            vec![vec![2], vec![-2]],
            vec![vec![1], vec![-1]],
            vec![0],
            "A1-doubled",
        );
        let sys = AffineSystem::new(&d).unwrap();
        let facets = fundamental_facets(&sys).unwrap();
        let om = omega(&sys, &facets).unwrap();
        assert_eq!(om.len(), 2);
        let nontrivial = om.iter().find(|w| !w.is_identity()).unwrap();
        assert_eq!(sys.length(nontrivial), 0);
        let gens: HashSet<AffineElement> = sys.generators.iter().cloned().collect();
        for w in &om {
            for s in &sys.generators {
                let conj = w.mul(s).mul(&w.inverse());
                assert!(gens.contains(&conj));
            }
        }
        let alc = &facets.facets[facets.alcove];
        assert_eq!(omega_f(&om, alc).len(), 2);
        for f in &facets.facets {
            let sub = omega_f(&om, f);
            assert!(sub.iter().all(|w| om.contains(w)));
        }
    }

    #[test]
    fn isotropy_groups_b2() {
        let d = BasedRootDatum::preset("B2", "standard").unwrap();
        let fix0 = isotropy(&d, &[qi(0), qi(0)]).unwrap();
        assert_eq!(fix0.len(), 8);
        assert!(fix0.iter().all(|w| w.x == vec![0, 0]));
        let fix_half = isotropy(&d, &[qr(1, 2), qi(0)]).unwrap();
        assert_eq!(fix_half.len(), 4);
        let rho_pi = IntMat::from_rows(&[vec![-1, 0], vec![0, -1]]);
        assert!(fix_half.contains(&AffineElement::new(vec![1, 0], rho_pi)));
        let fix_hh = isotropy(&d, &[qr(1, 2), qr(1, 2)]).unwrap();
        assert_eq!(fix_hh.len(), 8);
        let ns = BasedRootDatum::preset("A2", "standard").unwrap();
        assert!(matches!(
            isotropy(&ns, &[qi(0), qi(0), qi(0)]),
            Err(Error::InfiniteStabilizer)
        ));
    }

    #[test]
    fn reduce_to_alcove_walks_points_home() {
        let sys = b2();
        let pts = vec![
            vec![qi(0), qr(1, 2)],
            vec![qi(-3), qr(7, 3)],
            vec![qr(5, 2), qi(-1)],
        ];
        for p in pts {
            let (q, w) = reduce_to_alcove(&sys, &p);
            assert_eq!(w.act_point(&p), q);
            for a in &sys.simple_affine_roots {
                assert!(a.eval(&q) >= Q::zero());
            }
        }
    }

    #[test]
    fn gallery_walls_are_single_hyperplanes() {
        // consecutive alcoves of a reduced-word gallery share exactly one wall
        let sys = b2();
        let facets = fundamental_facets(&sys).unwrap();
        let alcove = &facets.facets[facets.alcove];
        let verts = alcove.vertices();
        let w = sys.element_of_word(&[0, 1, 2, 0]);
        let word = sys.reduced_word(&w).unwrap();
        let mut prefix = AffineElement::identity(2);
        let mut prev_verts: Vec<QVec> = verts.clone();
        prev_verts.sort();
        for &s in &word {
            prefix = prefix.mul(&sys.generators[s]);
            let mut cur: Vec<QVec> =
                verts.iter().map(|v| prefix.act_point(v)).collect();
            cur.sort();
            let shared: Vec<&QVec> =
                cur.iter().filter(|v| prev_verts.contains(v)).collect();
            assert_eq!(shared.len(), 2, "adjacent alcoves share a wall (2 vertices)");
            prev_verts = cur;
        }
    }
}
