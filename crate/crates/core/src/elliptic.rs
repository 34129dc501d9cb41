//! Elliptic representation theory of a finite group `Γ ≤ GL_d(Z)` and of
//! the crossed product `Γ ⋉ X` with `X = Z^d`: elliptic pairings, elliptic
//! conjugacy classes and their measure, and the Euler–Poincaré pairing
//! computed by three independent routes (closed form over elliptic classes,
//! alternating Hom sums against exterior powers, and a facet sum over the
//! fundamental alcove).

use std::collections::{BTreeSet, HashMap};

use num::{One, Zero};

use crate::affine::{isotropy, omega_f, AffineElement};
use crate::chains::Complex;
use crate::cyclotomic::Cyc;
use crate::exact::{fmt_qvec, invert_q, qi, qr, rank_q, Q, QVec};
use crate::finitegroup::{ClassFunction, MatrixGroup, TorsionChar};
use crate::intmat::{smith, IntMat, Mat, Snf};
use crate::rootdata::BasedRootDatum;
use crate::{Error, Result};

/// `Γ ⋉ X` for a finite `Γ ≤ GL_d(Z)` acting on `X = Z^d`.
pub struct LatticeGroup {
    pub rank: usize,
    pub gamma: MatrixGroup,
}

impl LatticeGroup {
    pub fn new(gamma: MatrixGroup) -> Self {
        LatticeGroup { rank: gamma.dim, gamma }
    }

    pub fn from_datum(datum: &BasedRootDatum) -> Result<Self> {
        Ok(LatticeGroup::new(MatrixGroup::from_datum_weyl(datum)?))
    }
}

// ---------------------------------------------------------------------------
// Elliptic pairing of a finite group

/// Closed form: `e_Γ(χ,χ') = |Γ|^{-1} Σ_γ det(1-ρ(γ)) conj(χ(γ)) χ'(γ)`.
/// Only elliptic elements contribute.
pub fn e_pair(g: &MatrixGroup, chi: &ClassFunction, chi2: &ClassFunction) -> Result<Q> {
    let mut acc = Cyc::zero();
    for (i, class) in g.classes.iter().enumerate() {
        let det = g.det_one_minus(class.rep);
        if det == 0 {
            continue;
        }
        let term = chi.values[i]
            .conj()
            .mul(&chi2.values[i])?
            .scale(&qi(det * class.members.len() as i64));
        acc = acc.add(&term)?;
    }
    acc.scale(&qr(1, g.order() as i64)).expect_rational()
}

/// Homological route: `Σ_n (-1)^n dim Hom_Γ(χ ⊗ Λ^n E, χ')`.
pub fn e_pair_hom(
    g: &MatrixGroup,
    chi: &ClassFunction,
    chi2: &ClassFunction,
) -> Result<Q> {
    let mut acc = Cyc::zero();
    for n in 0..=g.dim {
        let ext = g.exterior_power_character(n);
        // ⟨χ·Λ^n, χ'⟩
        let mut inner = Cyc::zero();
        for (i, class) in g.classes.iter().enumerate() {
            let term = chi.values[i]
                .mul(&ext.values[i])?
                .conj()
                .mul(&chi2.values[i])?
                .scale(&qi(class.members.len() as i64));
            inner = inner.add(&term)?;
        }
        inner = inner.scale(&qr(1, g.order() as i64));
        acc = acc.add(&if n % 2 == 0 { inner } else { inner.neg() })?;
    }
    acc.expect_rational()
}

/// Number of elliptic conjugacy classes of `Γ` = `dim Ell(Γ)`.
pub fn ell_dim_finite(g: &MatrixGroup) -> usize {
    g.elliptic_class_indices().len()
}

/// Independent oracle: `dim Ell(Γ)` as the corank of the span of class
/// functions induced from subgroups with nonzero fixed space. Computed as
/// an exact rational rank in class-function coordinates.
pub fn ell_dim_oracle(g: &MatrixGroup) -> Result<usize> {
    let k = g.classes.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for sub in g.subgroups_up_to_conjugacy()? {
        if !sub.fixed_space_nonzero {
            continue;
        }
        let h = g.subgroup_group(&sub.elements)?;
        for hc in 0..h.classes.len() {
            // indicator of the class, induced up
            let mut indicator =
                ClassFunction { values: vec![Cyc::zero(); h.classes.len()] };
            indicator.values[hc] = Cyc::one();
            let ind = g.induce_class_function(&h, &indicator)?;
            let row: Vec<Q> = ind
                .values
                .iter()
                .map(|v| v.expect_rational())
                .collect::<Result<_>>()?;
            rows.push(row);
        }
    }
    let rank = rank_q(&rows);
    Ok(k - rank)
}

// ---------------------------------------------------------------------------
// Coinvariants and affine elliptic classes

pub struct Coinvariants {
    pub order: i64,
    pub reps: Vec<Vec<i64>>,
    snf: Snf,
}

impl Coinvariants {
    /// Canonical representative of `x + (1-γ)X`.
    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        let d = x.len();
        let ux = self.snf.u.matvec(x);
        let z: Vec<i64> = (0..d)
            .map(|i| {
                let di = self.snf.d.get(i, i);
                ux[i].rem_euclid(di)
            })
            .collect();
        let uinv = self.snf.u.inverse().expect("unimodular");
        uinv.matvec(&z)
    }
}

/// Structure of `X / (1-γ)X` for elliptic `γ`. The representatives come
/// from the Smith normal form box, reduced back to standard coordinates.
pub fn coinvariants(l: &LatticeGroup, gamma_idx: usize) -> Result<Coinvariants> {
    let g = &l.gamma;
    if !g.is_elliptic(gamma_idx) {
        return Err(Error::NotElliptic);
    }
    let d = l.rank;
    let one_minus = IntMat::identity(d).sub(&g.elems[gamma_idx]);
    let cols: Vec<Vec<i64>> =
        (0..d).map(|j| (0..d).map(|i| one_minus.get(i, j)).collect()).collect();
    let snf = smith(&Mat::from_cols(&cols));
    let order: i64 = (0..d).map(|i| snf.d.get(i, i)).product();
    debug_assert_eq!(order, g.det_one_minus(gamma_idx).abs());
    // box representatives, mapped back through U^{-1}
    let uinv = snf.u.inverse().expect("unimodular");
    let mut reps = Vec::with_capacity(order as usize);
    let mut z = vec![0i64; d];
    loop {
        reps.push(uinv.matvec(&z));
        let mut i = 0;
        loop {
            if i == d {
                reps.sort();
                return Ok(Coinvariants { order, reps, snf });
            }
            z[i] += 1;
            if z[i] < snf.d.get(i, i) {
                break;
            }
            z[i] = 0;
            i += 1;
        }
    }
}

/// An elliptic conjugacy class of `Γ ⋉ X`.
#[derive(Clone, Debug)]
pub struct AffineClass {
    /// Representative `t_x γ`, conjugated so its fixed point lies in the
    /// closed positive chamber when the group comes from a root datum.
    pub rep: AffineElement,
    /// Conjugacy class of the linear part in `Γ`.
    pub linear_class: usize,
    /// The isolated fixed point `e = (1-γ)^{-1} x`.
    pub fixed_point: QVec,
    pub coinvariant_order: i64,
    pub measure: Q,
}

/// Fixed point of an elliptic affine element.
pub fn fixed_point(l: &LatticeGroup, w: &AffineElement) -> Result<QVec> {
    let g = &l.gamma;
    let idx = g.index_of(&w.u).ok_or(Error::NotASubgroup)?;
    if !g.is_elliptic(idx) {
        return Err(Error::NotElliptic);
    }
    let d = l.rank;
    let one_minus = IntMat::identity(d).sub(&w.u);
    let rows: Vec<Vec<Q>> = (0..d)
        .map(|i| (0..d).map(|j| qi(one_minus.get(i, j))).collect())
        .collect();
    let inv = invert_q(&rows).expect("elliptic part is invertible");
    Ok(inv
        .iter()
        .map(|row| row.iter().zip(w.x.iter()).map(|(a, &b)| a * qi(b)).sum())
        .collect())
}

/// Conjugacy test for elliptic elements: the linear parts must be
/// conjugate by some `w ∈ Γ` with `ρ(w)x - y ∈ (1-γ')X`.
pub fn is_conjugate_affine(
    l: &LatticeGroup,
    w1: &AffineElement,
    w2: &AffineElement,
) -> Result<bool> {
    let g = &l.gamma;
    let i1 = g.index_of(&w1.u).ok_or(Error::NotASubgroup)?;
    let i2 = g.index_of(&w2.u).ok_or(Error::NotASubgroup)?;
    if !g.is_elliptic(i1) || !g.is_elliptic(i2) {
        return Err(Error::NotElliptic);
    }
    if g.class_of[i1] != g.class_of[i2] {
        return Ok(false);
    }
    let d = l.rank;
    let one_minus = IntMat::identity(d).sub(&w2.u);
    let cols: Vec<Vec<i64>> =
        (0..d).map(|j| (0..d).map(|i| one_minus.get(i, j)).collect()).collect();
    let lattice = Mat::from_cols(&cols);
    for w in 0..g.order() {
        if g.mul_idx(g.mul_idx(w, i1), g.inv[w]) != i2 {
            continue;
        }
        let wx = g.elems[w].matvec(&w1.x);
        let diff: Vec<i64> = wx.iter().zip(w2.x.iter()).map(|(a, b)| a - b).collect();
        if crate::intmat::lattice_contains(&lattice, &diff) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All elliptic conjugacy classes of `Γ ⋉ X`: for each elliptic class of
/// `Γ`, the orbits of the centralizer on `X/(1-γ)X`. Representatives are
/// normalized so the fixed point is dominant (walked into the closed
/// positive chamber by `W₀` when a chamber structure is available).
pub fn elliptic_classes_affine(l: &LatticeGroup) -> Result<Vec<AffineClass>> {
    let g = &l.gamma;
    let mut out = Vec::new();
    for &cls in &g.elliptic_class_indices() {
        let gamma_idx = g.classes[cls].rep;
        let coin = coinvariants(l, gamma_idx)?;
        // centralizer of γ
        let centralizer: Vec<usize> = (0..g.order())
            .filter(|&w| g.mul_idx(g.mul_idx(w, gamma_idx), g.inv[w]) == gamma_idx)
            .collect();
        // orbits of Z_Γ(γ) on the coset representatives
        let mut orbit_of: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut orbits: Vec<Vec<Vec<i64>>> = Vec::new();
        for rep in &coin.reps {
            if orbit_of.contains_key(rep) {
                continue;
            }
            let oid = orbits.len();
            let mut members = vec![rep.clone()];
            orbit_of.insert(rep.clone(), oid);
            let mut head = 0;
            while head < members.len() {
                let x = members[head].clone();
                head += 1;
                for &w in &centralizer {
                    let image = coin.reduce(&g.elems[w].matvec(&x));
                    if !orbit_of.contains_key(&image) {
                        orbit_of.insert(image.clone(), oid);
                        members.push(image);
                    }
                }
            }
            members.sort();
            orbits.push(members);
        }
        for orbit in orbits {
            let x = orbit[0].clone();
            let rep = AffineElement::new(x, g.elems[gamma_idx].clone());
            let e = fixed_point(l, &rep)?;
            out.push(AffineClass {
                rep,
                linear_class: cls,
                fixed_point: e,
                coinvariant_order: coin.order,
                measure: Q::zero(),
            });
        }
    }
    // measures
    for class in &mut out {
        class.measure = measure_of_rep(l, &class.rep, &class.fixed_point)?;
    }
    out.sort_by(|a, b| {
        (a.fixed_point.clone(), a.linear_class, a.rep.clone()).cmp(&(
            b.fixed_point.clone(),
            b.linear_class,
            b.rep.clone(),
        ))
    });
    Ok(out)
}

/// Normalize every class representative so its fixed point lies in the
/// closed fundamental alcove of the datum (classes themselves unchanged).
pub fn normalize_classes_to_alcove(
    cx: &Complex,
    l: &LatticeGroup,
    classes: &mut [AffineClass],
) -> Result<()> {
    for class in classes.iter_mut() {
        let (moved, w) = crate::affine::reduce_to_alcove(&cx.sys, &class.fixed_point);
        if w.is_identity() {
            continue;
        }
        let rep = w.mul(&class.rep).mul(&w.inverse());
        debug_assert!(is_conjugate_affine(l, &rep, &class.rep)?);
        class.rep = rep;
        class.fixed_point = moved;
    }
    classes.sort_by(|a, b| {
        (a.fixed_point.clone(), a.linear_class, a.rep.clone()).cmp(&(
            b.fixed_point.clone(),
            b.linear_class,
            b.rep.clone(),
        ))
    });
    Ok(())
}

/// `μ_ell(C) = #{w ∈ C : ρ(w)e = e} / #{w ∈ Γ⋉X : ρ(w)e = e}`.
fn measure_of_rep(l: &LatticeGroup, rep: &AffineElement, e: &[Q]) -> Result<Q> {
    let g = &l.gamma;
    let mut stabilizer = 0i64;
    let mut in_class = 0i64;
    for u in &g.elems {
        let ue = u.matvec_q(e);
        let diff: QVec = e.iter().zip(ue.iter()).map(|(a, b)| a - b).collect();
        let Some(x) = crate::exact::qvec_to_i64(&diff) else { continue };
        stabilizer += 1;
        let idx = g.index_of(u).unwrap();
        if !g.is_elliptic(idx) {
            continue;
        }
        let w = AffineElement::new(x, u.clone());
        if is_conjugate_affine(l, &w, rep)? {
            in_class += 1;
        }
    }
    Ok(qr(in_class, stabilizer))
}

/// Count the translation-coset sets `L_w ⊂ C`; `μ_ell(C) = n_C / |Γ|`.
pub fn count_translation_cosets(l: &LatticeGroup, class: &AffineClass) -> Result<i64> {
    let g = &l.gamma;
    let mut n = 0i64;
    for &gi in &g.classes[class.linear_class].members {
        let coin = coinvariants(l, gi)?;
        for y in &coin.reps {
            let w = AffineElement::new(y.clone(), g.elems[gi].clone());
            if is_conjugate_affine(l, &w, &class.rep)? {
                n += 1;
            }
        }
    }
    Ok(n)
}

/// `Σ_n (-1)^n dim (Λ^n E)^Γ`, by character averaging.
pub fn alternating_invariant_dimension(g: &MatrixGroup) -> Result<Q> {
    let triv = g.trivial_character();
    let mut acc = Q::zero();
    for n in 0..=g.dim {
        let ext = g.exterior_power_character(n);
        let dim = g.inner_product(&ext, &triv)?.expect_rational()?;
        acc += if n % 2 == 0 { dim } else { -dim };
    }
    Ok(acc)
}

/// Total elliptic measure with its two independent expressions checked:
/// the sum of class measures and the alternating invariant dimension.
pub fn total_measure(l: &LatticeGroup, classes: &[AffineClass]) -> Result<Q> {
    let total: Q = classes.iter().map(|c| c.measure.clone()).sum();
    let alt = alternating_invariant_dimension(&l.gamma)?;
    if total != alt {
        return Err(Error::Invalid(format!(
            "elliptic measure total {total} does not match invariant sum {alt}"
        )));
    }
    Ok(total)
}

/// Geometric enumeration: elliptic classes through vertex stabilizers of
/// the fundamental alcove. Valid when Ω is trivial, where every elliptic
/// fixed point is a vertex of Σ.
pub fn elliptic_classes_geometric(cx: &Complex, l: &LatticeGroup) -> Result<Vec<AffineElement>> {
    if cx.omega.len() != 1 {
        return Err(Error::Invalid(
            "geometric enumeration requires trivial Omega".into(),
        ));
    }
    let datum = cx.datum();
    let mut reps: Vec<AffineElement> = Vec::new();
    for f in &cx.facets.facets {
        if f.dim != 0 {
            continue;
        }
        let v = f.vertices()[0].clone();
        for w in isotropy(datum, &v)? {
            let idx = l.gamma.index_of(&w.u).unwrap();
            if !l.gamma.is_elliptic(idx) {
                continue;
            }
            let mut seen = false;
            for r in &reps {
                if is_conjugate_affine(l, r, &w)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                reps.push(w);
            }
        }
    }
    reps.sort();
    Ok(reps)
}

// ---------------------------------------------------------------------------
// Virtual characters of Γ ⋉ X

/// One induced constituent: a torsion character `t` of `X`, its stabilizer
/// `Γ_t`, and a class function on `Γ_t`, with a rational multiplicity.
#[derive(Clone)]
pub struct IndTerm {
    pub t: TorsionChar,
    pub gamma_t: MatrixGroup,
    pub chi: ClassFunction,
    pub mult: Q,
}

/// A virtual character of `Γ ⋉ X` in induced form: `Σ m_i Ind_{t_i}(χ_i)`.
#[derive(Clone, Default)]
pub struct VirtualWChar {
    pub terms: Vec<IndTerm>,
}

impl VirtualWChar {
    pub fn single(l: &LatticeGroup, t: TorsionChar, chi: ClassFunction) -> Result<Self> {
        let stab = t.stabilizer_indices(&l.gamma);
        let gamma_t = l.gamma.subgroup_group(&stab)?;
        if chi.values.len() != gamma_t.classes.len() {
            return Err(Error::Invalid(
                "class function does not match the stabilizer".into(),
            ));
        }
        Ok(VirtualWChar {
            terms: vec![IndTerm { t, gamma_t, chi, mult: Q::one() }],
        })
    }

    pub fn scaled(mut self, q: &Q) -> Self {
        for term in &mut self.terms {
            term.mult = &term.mult * q;
        }
        self
    }

    pub fn plus(mut self, other: &VirtualWChar) -> Self {
        self.terms.extend(other.terms.iter().cloned());
        self
    }
}

/// `χ_{Ind_t χ}(t_x γ) = Σ_{h ∈ Γ/Γ_t} t(ρ(h)^{-1} x) χ(h^{-1} γ h)`,
/// with `χ` zero outside `Γ_t`.
pub fn ind_char_value(
    l: &LatticeGroup,
    term: &IndTerm,
    w: &AffineElement,
) -> Result<Cyc> {
    let g = &l.gamma;
    let gamma_idx = g.index_of(&w.u).ok_or(Error::NotASubgroup)?;
    // deterministic coset representatives of Γ/Γ_t
    let mut covered = vec![false; g.order()];
    let mut acc = Cyc::zero();
    for h in 0..g.order() {
        if covered[h] {
            continue;
        }
        for s in 0..g.order() {
            if term.gamma_t.contains(&g.elems[s]) {
                covered[g.mul_idx(h, g.index_of(&g.elems[s]).unwrap())] = true;
            }
        }
        let hinv = g.inv[h];
        let conj = g.elems[hinv].mul(&g.elems[gamma_idx]).mul(&g.elems[h]);
        let Some(inner) = term.gamma_t.index_of(&conj) else { continue };
        let hx = g.elems[hinv].matvec(&w.x);
        let tval = term.t.value_on(&hx)?;
        let chival = term.chi.values[term.gamma_t.class_of[inner]].clone();
        acc = acc.add(&tval.mul(&chival)?)?;
    }
    Ok(acc)
}

/// Value of a virtual character at an affine element.
pub fn char_value(l: &LatticeGroup, u: &VirtualWChar, w: &AffineElement) -> Result<Cyc> {
    let mut acc = Cyc::zero();
    for term in &u.terms {
        let v = ind_char_value(l, term, w)?.scale(&term.mult);
        acc = acc.add(&v)?;
    }
    Ok(acc)
}

/// An Euler–Poincaré evaluation with its per-part breakdown.
#[derive(Debug, Clone)]
pub struct EpReport {
    pub value: Q,
    pub method: String,
    pub breakdown: Vec<(String, Q)>,
}

/// EP by the elliptic measure: `Σ_C μ(C) conj(χ_U(rep)) χ_V(rep)`.
pub fn ep_pair_measure(
    l: &LatticeGroup,
    classes: &[AffineClass],
    u: &VirtualWChar,
    v: &VirtualWChar,
) -> Result<EpReport> {
    let mut total = Cyc::zero();
    let mut breakdown = Vec::new();
    for class in classes {
        let cu = char_value(l, u, &class.rep)?;
        let cv = char_value(l, v, &class.rep)?;
        let term = cu.conj().mul(&cv)?.scale(&class.measure);
        let label = format!(
            "class at {} of order {}",
            fmt_qvec(&class.fixed_point),
            class.coinvariant_order
        );
        breakdown.push((label, term.clone()));
        total = total.add(&term)?;
    }
    let value = total.expect_rational()?;
    let breakdown = breakdown
        .into_iter()
        .map(|(label, c)| {
            let q = c.expect_rational().unwrap_or_else(|_| Q::zero());
            (label, q)
        })
        .collect();
    Ok(EpReport { value, method: "measure".into(), breakdown })
}

/// EP by the facet sum over the fundamental alcove:
/// `Σ_f (-1)^{dim f} / [Ω:Ω_f] · dim Hom_{W_f⋊Ω_f}(U ⊗ ε_f, V)`.
pub fn ep_pair_facets(
    cx: &Complex,
    l: &LatticeGroup,
    u: &VirtualWChar,
    v: &VirtualWChar,
) -> Result<EpReport> {
    if !cx.datum().is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let omega_order = cx.omega.len() as i64;
    let mut total = Q::zero();
    let mut breakdown = Vec::new();
    for f in &cx.facets.facets {
        let of = omega_f(&cx.omega, f);
        // group W_f ⋊ Ω_f as a set of affine elements ω·w
        let mut members: Vec<(AffineElement, i64)> = Vec::new();
        for om in &of {
            let sign = orientation_sign(cx, f.id, om)?;
            for w in &f.stabilizer {
                members.push((om.mul(w), sign));
            }
        }
        let mut hom = Cyc::zero();
        for (w, eps) in &members {
            let cu = char_value(l, u, w)?;
            let cv = char_value(l, v, w)?;
            let term = cu.scale(&qi(*eps)).conj().mul(&cv)?;
            hom = hom.add(&term)?;
        }
        let hom = hom
            .scale(&qr(1, members.len() as i64))
            .expect_rational()?;
        let sign = if f.dim % 2 == 0 { 1 } else { -1 };
        let weight = qr(sign, omega_order / of.len() as i64);
        let contribution = &weight * &hom;
        breakdown.push((format!("facet {} (dim {})", f.id, f.dim), contribution.clone()));
        total += contribution;
    }
    Ok(EpReport { value: total, method: "facets".into(), breakdown })
}

/// Orientation sign of an Ω-element acting on a facet: the product over
/// factors of the permutation signs on the vertex tuples.
fn orientation_sign(cx: &Complex, facet: usize, w: &AffineElement) -> Result<i64> {
    if w.is_identity() {
        return Ok(1);
    }
    let f = &cx.facets.facets[facet];
    let mut sign = 1i64;
    for fv in &f.factor_vertices {
        let tuple: Vec<QVec> = fv.iter().map(|(_, v)| v.clone()).collect();
        let image: Vec<QVec> = tuple.iter().map(|p| w.act_point(p)).collect();
        let mut perm = Vec::with_capacity(tuple.len());
        for p in &image {
            let pos = tuple.iter().position(|q| q == p).ok_or_else(|| {
                Error::Invalid("omega element does not preserve the facet".into())
            })?;
            perm.push(pos);
        }
        let mut p = perm;
        for i in 0..p.len() {
            while p[i] != i {
                let j = p[i];
                p.swap(i, j);
                sign = -sign;
            }
        }
    }
    Ok(sign)
}

/// `EP(Ind_t U, Ind_t V)` against `e_{Γ_t}(U, V)`.
pub fn isometry_check(
    l: &LatticeGroup,
    classes: &[AffineClass],
    t: &TorsionChar,
    chi: &ClassFunction,
    chi2: &ClassFunction,
) -> Result<(Q, Q, bool)> {
    let u = VirtualWChar::single(l, t.clone(), chi.clone())?;
    let v = VirtualWChar::single(l, t.clone(), chi2.clone())?;
    let lhs = ep_pair_measure(l, classes, &u, &v)?.value;
    let gamma_t = &u.terms[0].gamma_t;
    let rhs = e_pair(gamma_t, chi, chi2)?;
    let equal = lhs == rhs;
    Ok((lhs, rhs, equal))
}

/// The torsion characters carrying elliptic isotropy: duals of the
/// coinvariant groups `X/(1-γ)X` over elliptic classes, up to the
/// `Γ`-action. Orbit representatives are the lexicographically largest.
pub fn relevant_torsion_orbits(l: &LatticeGroup) -> Result<Vec<TorsionChar>> {
    let g = &l.gamma;
    let mut all: BTreeSet<TorsionChar> = BTreeSet::new();
    for &cls in &g.elliptic_class_indices() {
        let gamma_idx = g.classes[cls].rep;
        let coin = coinvariants(l, gamma_idx)?;
        let d = l.rank;
        // characters of the quotient: z/d_i through U^T
        let mut z = vec![0i64; d];
        loop {
            let frac: QVec = (0..d)
                .map(|i| {
                    let di = coin.snf.d.get(i, i);
                    qr(z[i], di)
                })
                .collect();
            let t_vec = coin.snf.u.transpose().matvec_q(&frac);
            all.insert(TorsionChar::new(t_vec));
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                z[i] += 1;
                if z[i] < coin.snf.d.get(i, i) {
                    break;
                }
                z[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    // group into Γ-orbits; pick the lexicographically largest member
    let mut seen: BTreeSet<TorsionChar> = BTreeSet::new();
    let mut reps = Vec::new();
    for t in &all {
        if seen.contains(t) {
            continue;
        }
        let mut orbit: Vec<TorsionChar> =
            g.elems.iter().map(|m| t.compose(m)).collect();
        orbit.sort();
        orbit.dedup();
        for o in &orbit {
            seen.insert(o.clone());
        }
        reps.push(orbit.last().unwrap().clone());
    }
    reps.sort();
    Ok(reps)
}

/// Both sides of the class-counting identity:
/// `#((Γ⋉X)_ell / ~) = Σ_t dim Ell(Γ_t)` over relevant torsion orbits.
pub struct CountingReport {
    pub lhs: usize,
    pub parts: Vec<(TorsionChar, usize)>,
    pub rhs: usize,
}

pub fn counting_identity(l: &LatticeGroup) -> Result<CountingReport> {
    let classes = elliptic_classes_affine(l)?;
    let lhs = classes.len();
    let mut parts = Vec::new();
    let mut rhs = 0;
    for t in relevant_torsion_orbits(l)? {
        let stab = t.stabilizer_indices(&l.gamma);
        let gamma_t = l.gamma.subgroup_group(&stab)?;
        let dim = ell_dim_finite(&gamma_t);
        rhs += dim;
        parts.push((t, dim));
    }
    Ok(CountingReport { lhs, parts, rhs })
}

/// Upper bound for the number of discrete series: the number of elliptic
/// conjugacy classes of `W = W₀ ⋉ X`.
pub fn ds_upper_bound(datum: &BasedRootDatum) -> Result<usize> {
    let l = LatticeGroup::from_datum(datum)?;
    Ok(elliptic_classes_affine(&l)?.len())
}

// ---------------------------------------------------------------------------
// Positive semidefiniteness of the EP Gram matrix

pub struct PsdReport {
    pub size: usize,
    pub charpoly_signs_ok: bool,
    pub leading_minors: Vec<Q>,
    pub leading_minors_nonneg: bool,
}

/// Exact PSD check of a symmetric rational matrix: the characteristic
/// polynomial must have weakly alternating signs, and the leading principal
/// minors are reported alongside.
pub fn psd_check(gram: &[Vec<Q>]) -> PsdReport {
    let n = gram.len();
    // characteristic polynomial by Faddeev–LeVerrier: c_n λ^n + ... + c_0
    let mut m: Vec<Vec<Q>> = vec![vec![Q::zero(); n]; n];
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut prev: Vec<Vec<Q>> = m.clone();
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1} I
        let mut am = vec![vec![Q::zero(); n]; n];
        if k == 1 {
            for (i, row) in am.iter_mut().enumerate() {
                row[i] = Q::one();
            }
        } else {
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Q::zero();
                    for t in 0..n {
                        acc += &gram[i][t] * &prev[t][j];
                    }
                    am[i][j] = acc;
                }
            }
            for (i, row) in am.iter_mut().enumerate() {
                row[i] += coeffs[n - k + 1].clone();
            }
        }
        // c_{n-k} = -tr(A·M_k)/k
        let mut tr = Q::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &gram[i][t] * &am[t][i];
            }
        }
        coeffs[n - k] = -tr / qi(k as i64);
        m = am;
        prev = m.clone();
    }
    // PSD ⟺ (-1)^{n-j} c_j ≥ 0 for all j
    let signs_ok = coeffs.iter().enumerate().all(|(j, c)| {
        let signed = if (n - j) % 2 == 0 { c.clone() } else { -c.clone() };
        signed >= Q::zero()
    });
    let mut minors = Vec::new();
    let mut minors_ok = true;
    for k in 1..=n {
        let sub: Vec<Vec<Q>> =
            gram[..k].iter().map(|row| row[..k].to_vec()).collect();
        let det = det_q(&sub);
        if det < Q::zero() {
            minors_ok = false;
        }
        minors.push(det);
    }
    PsdReport {
        size: n,
        charpoly_signs_ok: signs_ok,
        leading_minors: minors,
        leading_minors_nonneg: minors_ok,
    }
}

fn det_q(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= a[col][col].clone();
        let inv = a[col][col].clone();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &inv;
                for c in col..n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    det
}

/// Gram matrix of `EP` on the listed virtual characters.
pub fn ep_gram(
    l: &LatticeGroup,
    classes: &[AffineClass],
    basis: &[VirtualWChar],
) -> Result<Vec<Vec<Q>>> {
    let n = basis.len();
    let mut gram = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = ep_pair_measure(l, classes, &basis[i], &basis[j])?.value;
        }
    }
    Ok(gram)
}
