//! Finite matrix groups over `Z`: closure from generators, conjugacy
//! classes, exact character tables, exterior-power characters, induction,
//! subgroup enumeration, and torsion characters of the lattice.
//!
//! Character tables are computed with the Burnside–Dixon method: the class
//! algebra is split over a prime field `F_p` with `p ≡ 1 (mod |G|)`, and the
//! resulting mod-p character values are lifted exactly to cyclotomic numbers
//! through eigenvalue multiplicities. Every lift is certified (multiplicities
//! must be small nonnegative integers summing to the degree, and the final
//! table must satisfy both orthogonality relations); a failed certificate is
//! a hard error, never a silent wrong value.

use std::collections::{BTreeSet, HashMap, HashSet};

use num::integer::lcm;
use num::Zero;

use crate::cyclotomic::Cyc;
use crate::exact::{fmt_q, qi, qr, Q};
use crate::intmat::IntMat;
use crate::rootdata::BasedRootDatum;
use crate::{Error, Result, DEFAULT_GROUP_CAP, SUBGROUP_CAP};

/// A finite subgroup of `GL_d(Z)` with its conjugacy class data.
/// Elements are listed in lexicographic order of their entries, so every
/// derived structure is reproducible bit for bit.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub dim: usize,
    pub elems: Vec<IntMat>,
    index: HashMap<IntMat, usize>,
    pub inv: Vec<usize>,
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<usize>,
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Index of the lexicographically smallest member.
    pub rep: usize,
    pub members: Vec<usize>,
    pub centralizer_order: usize,
}

impl MatrixGroup {
    /// Closure of the generators under multiplication, capped.
    pub fn generate(dim: usize, gens: &[IntMat], cap: usize) -> Result<Self> {
        for g in gens {
            if g.n != dim {
                return Err(Error::Invalid("generator dimension mismatch".into()));
            }
            if g.inverse().is_none() {
                return Err(Error::Invalid(
                    "generator is not invertible over Z".into(),
                ));
            }
        }
        let mut seen: HashSet<IntMat> = HashSet::new();
        let mut queue = vec![IntMat::identity(dim)];
        seen.insert(IntMat::identity(dim));
        let mut head = 0;
        while head < queue.len() {
            let m = queue[head].clone();
            head += 1;
            for g in gens {
                let next = m.mul(g);
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    queue.push(next);
                }
            }
        }
        let mut elems: Vec<IntMat> = seen.into_iter().collect();
        elems.sort();
        Self::from_elements(dim, elems, gens)
    }

    pub fn from_datum_weyl(datum: &BasedRootDatum) -> Result<Self> {
        let gens = datum.simple_reflection_matrices();
        Self::generate(datum.rank, &gens, DEFAULT_GROUP_CAP)
    }

    fn from_elements(dim: usize, elems: Vec<IntMat>, gens: &[IntMat]) -> Result<Self> {
        let index: HashMap<IntMat, usize> =
            elems.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = elems.len();
        let mut inv = vec![0usize; n];
        for (i, m) in elems.iter().enumerate() {
            let mi = m
                .inverse()
                .ok_or_else(|| Error::Invalid("element not invertible".into()))?;
            inv[i] = *index
                .get(&mi)
                .ok_or_else(|| Error::Invalid("not closed under inverse".into()))?;
        }
        let generators = gens
            .iter()
            .map(|g| {
                index
                    .get(g)
                    .copied()
                    .ok_or_else(|| Error::Invalid("generator escaped closure".into()))
            })
            .collect::<Result<Vec<_>>>()?;

        // conjugacy classes by orbit of conjugation
        let mut class_of = vec![usize::MAX; n];
        let mut raw_classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = raw_classes.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for g in 0..n {
                    let conj = elems[g].mul(&elems[x]).mul(&elems[inv[g]]);
                    let j = index[&conj];
                    if class_of[j] == usize::MAX {
                        class_of[j] = cid;
                        members.push(j);
                    }
                }
            }
            members.sort();
            raw_classes.push(members);
        }
        // order classes by (size, lexicographic representative matrix)
        let mut order: Vec<usize> = (0..raw_classes.len()).collect();
        order.sort_by_key(|&c| (raw_classes[c].len(), elems[raw_classes[c][0]].clone()));
        let mut classes = Vec::with_capacity(order.len());
        let mut remap = vec![0usize; raw_classes.len()];
        for (new_id, &old_id) in order.iter().enumerate() {
            remap[old_id] = new_id;
            let members = raw_classes[old_id].clone();
            classes.push(ConjClass {
                rep: members[0],
                centralizer_order: n / members.len(),
                members,
            });
        }
        let class_of = class_of.into_iter().map(|c| remap[c]).collect();
        Ok(MatrixGroup { dim, elems, index, inv, classes, class_of, generators })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, m: &IntMat) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &IntMat) -> bool {
        self.index.contains_key(m)
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.index[&self.elems[a].mul(&self.elems[b])]
    }

    pub fn identity_index(&self) -> usize {
        self.index[&IntMat::identity(self.dim)]
    }

    pub fn identity_class(&self) -> usize {
        self.class_of[self.identity_index()]
    }

    pub fn element_order(&self, i: usize) -> usize {
        let e = self.identity_index();
        let mut x = i;
        let mut k = 1;
        while x != e {
            x = self.mul_idx(x, i);
            k += 1;
        }
        k
    }

    /// `det(1 - g)` on the ambient representation.
    pub fn det_one_minus(&self, i: usize) -> i64 {
        IntMat::identity(self.dim).sub(&self.elems[i]).det()
    }

    /// Elliptic: the fixed space of `g` in `E` is zero.
    pub fn is_elliptic(&self, i: usize) -> bool {
        self.det_one_minus(i) != 0
    }

    pub fn elliptic_class_indices(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| self.is_elliptic(self.classes[c].rep))
            .collect()
    }

    /// Character of `Λ^n E`: the n-th coefficient of `det(1 + t·g)`.
    pub fn exterior_power_character(&self, n: usize) -> ClassFunction {
        assert!(n <= self.dim);
        let values = self
            .classes
            .iter()
            .map(|c| Cyc::int(self.elems[c.rep].exterior_traces()[n]))
            .collect();
        ClassFunction { values }
    }

    pub fn class_function_value(&self, f: &ClassFunction, elem: usize) -> Cyc {
        f.values[self.class_of[elem]].clone()
    }

    /// `⟨a, b⟩ = |G|^{-1} Σ_g conj(a(g)) b(g)`, exact.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<Cyc> {
        let mut acc = Cyc::zero();
        for (i, class) in self.classes.iter().enumerate() {
            let term = a.values[i]
                .conj()
                .mul(&b.values[i])?
                .scale(&qi(class.members.len() as i64));
            acc = acc.add(&term)?;
        }
        Ok(acc.scale(&qr(1, self.order() as i64)))
    }

    /// Induced class function: `Ind_H^G f (g) = |H|^{-1} Σ_{x∈G} f(x^{-1} g x)`
    /// with `f` zero outside `H`. `H` must be a subgroup of `G`.
    pub fn induce_class_function(
        &self,
        sub: &MatrixGroup,
        f: &ClassFunction,
    ) -> Result<ClassFunction> {
        if !sub.elems.iter().all(|m| self.contains(m)) {
            return Err(Error::NotASubgroup);
        }
        let mut values = Vec::with_capacity(self.classes.len());
        for class in &self.classes {
            let g = &self.elems[class.rep];
            let mut acc = Cyc::zero();
            for x in 0..self.order() {
                let xi = &self.elems[self.inv[x]];
                let conj = xi.mul(g).mul(&self.elems[x]);
                if let Some(h) = sub.index_of(&conj) {
                    acc = acc.add(&f.values[sub.class_of[h]])?;
                }
            }
            values.push(acc.scale(&qr(1, sub.order() as i64)));
        }
        Ok(ClassFunction { values })
    }

    pub fn restrict_class_function(
        &self,
        sub: &MatrixGroup,
        f: &ClassFunction,
    ) -> Result<ClassFunction> {
        if !sub.elems.iter().all(|m| self.contains(m)) {
            return Err(Error::NotASubgroup);
        }
        let values = sub
            .classes
            .iter()
            .map(|c| {
                let idx = self.index_of(&sub.elems[c.rep]).unwrap();
                f.values[self.class_of[idx]].clone()
            })
            .collect();
        Ok(ClassFunction { values })
    }

    pub fn trivial_character(&self) -> ClassFunction {
        ClassFunction { values: vec![Cyc::one(); self.classes.len()] }
    }

    /// Determinant character of the ambient representation.
    pub fn det_character(&self) -> ClassFunction {
        ClassFunction {
            values: self
                .classes
                .iter()
                .map(|c| Cyc::int(self.elems[c.rep].det()))
                .collect(),
        }
    }

    /// All subgroups up to conjugacy, each flagged with whether its fixed
    /// space in `E` is nonzero. Deterministic order: (order, element list).
    pub fn subgroups_up_to_conjugacy(&self) -> Result<Vec<Subgroup>> {
        if self.order() > SUBGROUP_CAP {
            return Err(Error::CapExceeded { cap: SUBGROUP_CAP });
        }
        let n = self.order();
        let e = self.identity_index();
        let closure = |seed: &BTreeSet<usize>| -> BTreeSet<usize> {
            let mut set = seed.clone();
            set.insert(e);
            let mut frontier: Vec<usize> = set.iter().copied().collect();
            while let Some(x) = frontier.pop() {
                let members: Vec<usize> = set.iter().copied().collect();
                for y in members {
                    for z in [self.mul_idx(x, y), self.mul_idx(y, x)] {
                        if set.insert(z) {
                            frontier.push(z);
                        }
                    }
                }
            }
            set
        };
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        all.insert(vec![e]);
        for g in 0..n {
            let cyc = closure(&BTreeSet::from([g]));
            all.insert(cyc.into_iter().collect());
        }
        loop {
            let snapshot: Vec<Vec<usize>> = all.iter().cloned().collect();
            let mut grew = false;
            for h in &snapshot {
                let hset: BTreeSet<usize> = h.iter().copied().collect();
                for g in 0..n {
                    if hset.contains(&g) {
                        continue;
                    }
                    let mut seed = hset.clone();
                    seed.insert(g);
                    let j: Vec<usize> = closure(&seed).into_iter().collect();
                    if all.insert(j) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        // bucket by conjugacy: canonical form = lex-min conjugate element list
        let mut canon_seen: HashSet<Vec<usize>> = HashSet::new();
        let mut reps: Vec<Vec<usize>> = Vec::new();
        let mut sorted_all: Vec<Vec<usize>> = all.into_iter().collect();
        sorted_all.sort_by_key(|h| (h.len(), h.clone()));
        for h in sorted_all {
            let mut canon: Option<Vec<usize>> = None;
            for g in 0..n {
                let mut image: Vec<usize> = h
                    .iter()
                    .map(|&x| {
                        self.index[&self.elems[g]
                            .mul(&self.elems[x])
                            .mul(&self.elems[self.inv[g]])]
                    })
                    .collect();
                image.sort();
                if canon.as_ref().is_none_or(|c| image < *c) {
                    canon = Some(image);
                }
            }
            let canon = canon.unwrap();
            if canon_seen.insert(canon) {
                reps.push(h);
            }
        }
        reps.sort_by_key(|h| (h.len(), h.clone()));
        Ok(reps
            .into_iter()
            .map(|elems| {
                let fixed = self.fixed_space_nonzero(&elems);
                Subgroup { elements: elems, fixed_space_nonzero: fixed }
            })
            .collect())
    }

    /// `E^H ≠ 0` iff the averaging operator `Σ_{h∈H} ρ(h)` is nonzero.
    fn fixed_space_nonzero(&self, elements: &[usize]) -> bool {
        let mut sum = vec![0i64; self.dim * self.dim];
        for &i in elements {
            for (s, &v) in sum.iter_mut().zip(self.elems[i].a.iter()) {
                *s += v;
            }
        }
        sum.iter().any(|&x| x != 0)
    }

    /// Materialize a subgroup as its own `MatrixGroup`.
    pub fn subgroup_group(&self, elements: &[usize]) -> Result<MatrixGroup> {
        let mats: Vec<IntMat> =
            elements.iter().map(|&i| self.elems[i].clone()).collect();
        let mut sorted = mats.clone();
        sorted.sort();
        MatrixGroup::from_elements(self.dim, sorted, &mats)
    }

    /// Character table by Burnside–Dixon with a certified exact lift.
    pub fn character_table(&self) -> Result<CharacterTable> {
        dixon_character_table(self)
    }
}

/// Subgroup given by sorted element indices into the parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub fixed_space_nonzero: bool,
}

/// A class function with exact cyclotomic values, indexed by class.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    pub values: Vec<Cyc>,
}

impl ClassFunction {
    pub fn scale(&self, q: &Q) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|v| v.scale(q)).collect() }
    }

    pub fn eq(&self, other: &ClassFunction) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(other.values.iter()).all(|(a, b)| a.eq(b))
    }
}

/// The irreducible characters of a group, each row exact.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub rows: Vec<ClassFunction>,
    pub degrees: Vec<i64>,
}

// ---------------------------------------------------------------------------
// Burnside–Dixon

struct ModP {
    p: i64,
}

impl ModP {
    fn add(&self, a: i64, b: i64) -> i64 {
        (a + b) % self.p
    }
    fn sub(&self, a: i64, b: i64) -> i64 {
        (a - b).rem_euclid(self.p)
    }
    fn mul(&self, a: i64, b: i64) -> i64 {
        (a as i128 * b as i128).rem_euclid(self.p as i128) as i64
    }
    fn pow(&self, mut b: i64, mut e: i64) -> i64 {
        let mut acc = 1;
        b = b.rem_euclid(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
    fn inv(&self, a: i64) -> i64 {
        self.pow(a, self.p - 2)
    }
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn dixon_character_table(g: &MatrixGroup) -> Result<CharacterTable> {
    let k = g.classes.len();
    let order = g.order() as i64;
    // p ≡ 1 (mod |G|), p > 2·sqrt(|G|), p ≥ 5
    let mut p = order + 1;
    loop {
        if p >= 5 && is_prime(p) && (p - 1) % order == 0 && p > 2 * isqrt(order) {
            break;
        }
        p += 1;
    }
    let fp = ModP { p };

    // exponent of the group and a root of that order mod p
    let exponent = (0..g.order())
        .map(|i| g.element_order(i) as i64)
        .fold(1i64, lcm);
    let gen = primitive_root(&fp);
    let z = fp.pow(gen, (p - 1) / exponent);

    // class algebra matrices: m_i[k][l] = #{(x,y) ∈ C_i × C_k : xy = rep_l}
    let mut mats: Vec<Vec<i64>> = vec![vec![0; k * k]; k];
    for (i, ci) in g.classes.iter().enumerate() {
        for (l, cl) in g.classes.iter().enumerate() {
            let target = cl.rep;
            for &x in &ci.members {
                let y = g.mul_idx(g.inv[x], target);
                let kc = g.class_of[y];
                mats[i][kc * k + l] += 1;
            }
        }
    }

    // split common eigenspaces over F_p
    let mut spaces: Vec<Vec<Vec<i64>>> = vec![echelon_identity(k)];
    for mat in &mats {
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&fp, mat, &space, k));
        }
        spaces = next;
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::LiftFailure(
            "class algebra did not split into one-dimensional eigenspaces".into(),
        ));
    }

    let e_class = g.identity_class();
    let inv_class: Vec<usize> =
        g.classes.iter().map(|c| g.class_of[g.inv[c.rep]]).collect();

    // power map for the multiplicity lift
    let class_power = |i: usize, j: usize| -> usize {
        let rep = g.classes[i].rep;
        let mut x = g.identity_index();
        for _ in 0..j {
            x = g.mul_idx(x, rep);
        }
        g.class_of[x]
    };

    let mut rows: Vec<(i64, Vec<Cyc>)> = Vec::new();
    for space in &spaces {
        let v = &space[0];
        if v[e_class] == 0 {
            return Err(Error::LiftFailure("eigenvector vanishes at identity".into()));
        }
        let scale = fp.inv(v[e_class]);
        let omega: Vec<i64> = v.iter().map(|&x| fp.mul(x, scale)).collect();
        // degree: d^2 = |G| / Σ_i ω_i ω_{i*} / |C_i|
        let mut s = 0;
        for i in 0..k {
            let term = fp.mul(
                fp.mul(omega[i], omega[inv_class[i]]),
                fp.inv(g.classes[i].members.len() as i64),
            );
            s = fp.add(s, term);
        }
        let d2 = fp.mul(order % p, fp.inv(s));
        let mut degree = 0;
        for d in 1..=isqrt(order) {
            if fp.mul(d, d) == d2 {
                degree = d;
                break;
            }
        }
        if degree == 0 {
            return Err(Error::LiftFailure("no valid degree".into()));
        }
        let chi_mod: Vec<i64> = (0..k)
            .map(|i| {
                fp.mul(
                    fp.mul(omega[i], degree),
                    fp.inv(g.classes[i].members.len() as i64),
                )
            })
            .collect();
        // lift each value through eigenvalue multiplicities
        let mut values = Vec::with_capacity(k);
        for i in 0..k {
            let n = g.element_order(g.classes[i].rep) as i64;
            let zn = fp.pow(z, exponent / n);
            let n_inv = fp.inv(n);
            let mut val = Cyc::zero();
            let mut total = 0i64;
            for e in 0..n {
                let mut acc = 0;
                for j in 0..n {
                    let term = fp.mul(
                        chi_mod[class_power(i, j as usize)],
                        fp.pow(zn, (n - e) * j % n),
                    );
                    acc = fp.add(acc, term);
                }
                let mult = fp.mul(acc, n_inv);
                if mult > degree {
                    return Err(Error::LiftFailure(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree}"
                    )));
                }
                total += mult;
                if mult > 0 {
                    let root = Cyc::root_of_unity(n, e)?;
                    val = val.add(&root.scale(&qi(mult)))?;
                }
            }
            if total != degree {
                return Err(Error::LiftFailure(format!(
                    "multiplicities sum to {total}, expected {degree}"
                )));
            }
            values.push(val);
        }
        rows.push((degree, values));
    }

    rows.sort_by(|a, b| {
        (a.0, a.1.iter().map(Cyc::sort_key).collect::<Vec<_>>())
            .cmp(&(b.0, b.1.iter().map(Cyc::sort_key).collect::<Vec<_>>()))
    });
    let table = CharacterTable {
        degrees: rows.iter().map(|(d, _)| *d).collect(),
        rows: rows
            .into_iter()
            .map(|(_, values)| ClassFunction { values })
            .collect(),
    };
    certify_orthogonality(g, &table)?;
    Ok(table)
}

fn certify_orthogonality(g: &MatrixGroup, table: &CharacterTable) -> Result<()> {
    let k = g.classes.len();
    let order = qi(g.order() as i64);
    for a in 0..k {
        for b in a..k {
            let mut acc = Cyc::zero();
            for (i, class) in g.classes.iter().enumerate() {
                let term = table.rows[a].values[i]
                    .conj()
                    .mul(&table.rows[b].values[i])?
                    .scale(&qi(class.members.len() as i64));
                acc = acc.add(&term)?;
            }
            let expected = if a == b { order.clone() } else { qi(0) };
            if !acc.eq(&Cyc::rational(expected)) {
                return Err(Error::LiftFailure(format!(
                    "row orthogonality fails for rows {a},{b}"
                )));
            }
        }
    }
    for i in 0..k {
        for j in i..k {
            let mut acc = Cyc::zero();
            for row in &table.rows {
                let term = row.values[i].conj().mul(&row.values[j])?;
                acc = acc.add(&term)?;
            }
            let expected = if i == j {
                qr(g.order() as i64, g.classes[i].members.len() as i64)
            } else {
                qi(0)
            };
            if !acc.eq(&Cyc::rational(expected)) {
                return Err(Error::LiftFailure(format!(
                    "column orthogonality fails for classes {i},{j}"
                )));
            }
        }
    }
    Ok(())
}

fn primitive_root(fp: &ModP) -> i64 {
    let p = fp.p;
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    'outer: for g in 2..p {
        for &q in &factors {
            if fp.pow(g, (p - 1) / q) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("prime field has a primitive root");
}

fn echelon_identity(k: usize) -> Vec<Vec<i64>> {
    (0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect()
}

/// Split `space` (a basis of vectors) into eigenspaces of `mat` over F_p.
fn split_space(
    fp: &ModP,
    mat: &[i64],
    space: &[Vec<i64>],
    k: usize,
) -> Vec<Vec<Vec<i64>>> {
    let dim = space.len();
    let echelon = echelonize(fp, space.to_vec());
    let pivots: Vec<usize> = echelon
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).unwrap())
        .collect();
    // restriction A of mat to the subspace: mat · b_j = Σ_i A[i][j] b_i
    let mut a = vec![vec![0i64; dim]; dim];
    for (j, b) in echelon.iter().enumerate() {
        let mut image = vec![0i64; k];
        for (r, img) in image.iter_mut().enumerate() {
            let mut acc = 0;
            for c in 0..k {
                acc = fp.add(acc, fp.mul(mat[r * k + c], b[c]));
            }
            *img = acc;
        }
        let mut rest = image;
        for (i, basis_row) in echelon.iter().enumerate() {
            let piv = pivots[i];
            let coef = fp.mul(rest[piv], fp.inv(basis_row[piv]));
            a[i][j] = coef;
            for c in 0..k {
                let t = fp.mul(coef, basis_row[c]);
                rest[c] = fp.sub(rest[c], t);
            }
        }
        debug_assert!(rest.iter().all(|&x| x == 0), "matrix must preserve space");
    }
    let mut out = Vec::new();
    let mut covered = 0;
    for lambda in 0..fp.p {
        if covered == dim {
            break;
        }
        let mut m: Vec<Vec<i64>> = a.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = fp.sub(row[i], lambda);
        }
        let null = nullspace(fp, &m);
        if null.is_empty() {
            continue;
        }
        covered += null.len();
        let sub: Vec<Vec<i64>> = null
            .iter()
            .map(|coords| {
                let mut v = vec![0i64; k];
                for (i, &c) in coords.iter().enumerate() {
                    for (slot, &b) in v.iter_mut().zip(echelon[i].iter()) {
                        *slot = fp.add(*slot, fp.mul(c, b));
                    }
                }
                v
            })
            .collect();
        out.push(echelonize(fp, sub));
    }
    assert_eq!(covered, dim, "eigenspaces must exhaust the space");
    out
}

fn echelonize(fp: &ModP, mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = fp.inv(rows[rank][col]);
        for c in 0..ncols {
            rows[rank][c] = fp.mul(rows[rank][c], inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..ncols {
                    let t = fp.mul(f, rows[rank][c]);
                    rows[r][c] = fp.sub(rows[r][c], t);
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

fn nullspace(fp: &ModP, m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let nrows = m.len();
    let ncols = m[0].len();
    let mut rows = m.to_vec();
    let mut pivot_col: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = fp.inv(rows[rank][col]);
        for c in 0..ncols {
            rows[rank][c] = fp.mul(rows[rank][c], inv);
        }
        for r in 0..nrows {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..ncols {
                    let t = fp.mul(f, rows[rank][c]);
                    rows[r][c] = fp.sub(rows[r][c], t);
                }
            }
        }
        pivot_col.push(col);
        rank += 1;
    }
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivot_col.contains(&free) {
            continue;
        }
        let mut v = vec![0i64; ncols];
        v[free] = 1;
        for (r, &pc) in pivot_col.iter().enumerate() {
            v[pc] = fp.sub(0, rows[r][free]);
        }
        out.push(v);
    }
    out
}

// ---------------------------------------------------------------------------
// Torsion characters of X

/// A torsion point `t ∈ Hom(X, C^×)`: a vector in `(Q/Z)^d` with reduced
/// entries, acting by `x ↦ exp(2πi t·x) ∈ Q(ζ_m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionChar {
    t: Vec<Q>,
}

impl TorsionChar {
    pub fn new(t: Vec<Q>) -> Self {
        TorsionChar { t: t.into_iter().map(|x| &x - x.floor()).collect() }
    }

    pub fn trivial(d: usize) -> Self {
        TorsionChar { t: vec![Q::zero(); d] }
    }

    pub fn coords(&self) -> &[Q] {
        &self.t
    }

    pub fn is_trivial(&self) -> bool {
        self.t.iter().all(|x| x.is_zero())
    }

    /// Multiplicative order: lcm of the denominators.
    pub fn order(&self) -> i64 {
        self.t
            .iter()
            .map(|x| i64::try_from(x.denom().clone()).expect("denominator too large"))
            .fold(1, lcm)
    }

    /// `t(x) = ζ_m^k` evaluated exactly.
    pub fn value_on(&self, x: &[i64]) -> Result<Cyc> {
        let m = self.order();
        let mut e = Q::zero();
        for (ti, &xi) in self.t.iter().zip(x.iter()) {
            e += ti * qi(xi);
        }
        let scaled = e * qi(m);
        debug_assert!(scaled.denom() == &1.into());
        let k = i64::try_from(scaled.numer().clone()).expect("exponent overflow");
        Cyc::root_of_unity(m, k.rem_euclid(m))
    }

    /// `t ∘ ρ(g)` as a torsion character (vector `g^T t` mod 1).
    pub fn compose(&self, g: &IntMat) -> TorsionChar {
        let gt = g.transpose();
        let t = gt.matvec_q(&self.t);
        TorsionChar::new(t)
    }

    /// `Γ_t = {γ ∈ Γ : t ∘ ρ(γ) = t}` as element indices.
    pub fn stabilizer_indices(&self, g: &MatrixGroup) -> Vec<usize> {
        (0..g.order())
            .filter(|&i| self.compose(&g.elems[i]) == *self)
            .collect()
    }

    pub fn fmt(&self) -> String {
        self.t.iter().map(fmt_q).collect::<Vec<_>>().join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qr;

    fn weyl(name: &str) -> MatrixGroup {
        let d = BasedRootDatum::preset(name, "standard").unwrap();
        MatrixGroup::from_datum_weyl(&d).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(weyl("B2").order(), 8);
        assert_eq!(weyl("A2").order(), 6);
        assert_eq!(weyl("G2").order(), 12);
        assert_eq!(weyl("A1").order(), 2);
        assert_eq!(weyl("A1xA1").order(), 4);
        let trivial =
            MatrixGroup::generate(2, &[IntMat::identity(2)], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let d = BasedRootDatum::preset("B2", "standard").unwrap();
        let gens = d.simple_reflection_matrices();
        assert!(matches!(
            MatrixGroup::generate(2, &gens, 7),
            Err(Error::CapExceeded { cap: 7 })
        ));
    }

    #[test]
    fn element_orders_divide_group_order() {
        for name in ["B2", "A2", "G2"] {
            let g = weyl(name);
            for i in 0..g.order() {
                assert_eq!(g.order() % g.element_order(i), 0);
            }
        }
    }

    #[test]
    fn conjugacy_class_counts() {
        assert_eq!(weyl("B2").classes.len(), 5);
        assert_eq!(weyl("A2").classes.len(), 3);
        assert_eq!(weyl("G2").classes.len(), 6);
        for name in ["B2", "A2", "G2"] {
            let g = weyl(name);
            let total: usize = g.classes.iter().map(|c| c.members.len()).sum();
            assert_eq!(total, g.order());
            for c in &g.classes {
                assert_eq!(c.members.len() * c.centralizer_order, g.order());
            }
        }
    }

    #[test]
    fn character_table_degrees() {
        let g = weyl("B2");
        let t = g.character_table().unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
        let g = weyl("A2");
        let t = g.character_table().unwrap();
        assert_eq!(t.degrees, vec![1, 1, 2]);
        let trivial =
            MatrixGroup::generate(1, &[IntMat::identity(1)], DEFAULT_GROUP_CAP).unwrap();
        let t = trivial.character_table().unwrap();
        assert_eq!(t.degrees, vec![1]);
        assert!(t.rows[0].values[0].eq(&Cyc::one()));
    }

    #[test]
    fn character_table_handles_irrational_values() {
        // C4 inside W(B2): table has values ±i
        let rot = IntMat::from_rows(&[vec![0, -1], vec![1, 0]]);
        let c4 = MatrixGroup::generate(2, &[rot], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(c4.order(), 4);
        let t = c4.character_table().unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1]);
        let has_i = t
            .rows
            .iter()
            .any(|r| r.values.iter().any(|v| v.conductor() == 4));
        assert!(has_i);
        // C3 inside W(A2): values in Q(zeta_3)
        let d = BasedRootDatum::preset("A2", "root").unwrap();
        let c = d.reflection_matrix(0).mul(&d.reflection_matrix(1));
        let c3 = MatrixGroup::generate(2, &[c], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(c3.order(), 3);
        let t = c3.character_table().unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1]);
    }

    #[test]
    fn exterior_power_characters() {
        let g = weyl("B2");
        let e0 = g.exterior_power_character(0);
        assert!(e0.eq(&g.trivial_character()));
        // rho_pi = -I: trace -2 on Λ^1
        let minus = IntMat::from_rows(&[vec![-1, 0], vec![0, -1]]);
        let idx = g.index_of(&minus).unwrap();
        let e1 = g.exterior_power_character(1);
        assert!(g.class_function_value(&e1, idx).eq(&Cyc::int(-2)));
        // s1: det = -1 on Λ^2
        let s1 = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        let e2 = g.exterior_power_character(2);
        assert!(g
            .class_function_value(&e2, g.index_of(&s1).unwrap())
            .eq(&Cyc::int(-1)));
    }

    #[test]
    fn alternating_exterior_sum_is_det_one_minus() {
        for name in ["B2", "A2", "G2", "A1xA1"] {
            let g = weyl(name);
            let ext: Vec<ClassFunction> =
                (0..=g.dim).map(|n| g.exterior_power_character(n)).collect();
            for i in 0..g.order() {
                let mut acc = Cyc::zero();
                for (n, e) in ext.iter().enumerate() {
                    let v = g.class_function_value(e, i);
                    acc = acc.add(&if n % 2 == 0 { v } else { v.neg() }).unwrap();
                }
                assert!(acc.eq(&Cyc::int(g.det_one_minus(i))), "{name} elem {i}");
            }
        }
    }

    #[test]
    fn det_one_minus_and_ellipticity() {
        let g = weyl("B2");
        let minus = IntMat::from_rows(&[vec![-1, 0], vec![0, -1]]);
        let i = g.index_of(&minus).unwrap();
        assert_eq!(g.det_one_minus(i), 4);
        assert!(g.is_elliptic(i));
        assert_eq!(g.det_one_minus(g.identity_index()), 0);
        assert!(!g.is_elliptic(g.identity_index()));
        let rot = IntMat::from_rows(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(g.det_one_minus(g.index_of(&rot).unwrap()), 2);
    }

    #[test]
    fn subgroups_of_weyl_groups() {
        let g = weyl("B2");
        let subs = g.subgroups_up_to_conjugacy().unwrap();
        // D4 has 8 conjugacy classes of subgroups
        assert_eq!(subs.len(), 8);
        // contains V4 = {e, s2, s3, rho_pi}
        let v4: Vec<usize> = [
            IntMat::identity(2),
            IntMat::from_rows(&[vec![1, 0], vec![0, -1]]),
            IntMat::from_rows(&[vec![-1, 0], vec![0, 1]]),
            IntMat::from_rows(&[vec![-1, 0], vec![0, -1]]),
        ]
        .iter()
        .map(|m| g.index_of(m).unwrap())
        .collect();
        let mut v4_sorted = v4.clone();
        v4_sorted.sort();
        assert!(subs.iter().any(|s| s.elements == v4_sorted));
        let c2 = weyl("A1");
        assert_eq!(c2.subgroups_up_to_conjugacy().unwrap().len(), 2);
        let trivial =
            MatrixGroup::generate(1, &[IntMat::identity(1)], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(trivial.subgroups_up_to_conjugacy().unwrap().len(), 1);
    }

    #[test]
    fn induced_characters_b2() {
        let g = weyl("B2");
        let table = g.character_table().unwrap();
        // Ind from trivial subgroup = regular character
        let trivial_sub = g.subgroup_group(&[g.identity_index()]).unwrap();
        let reg = g
            .induce_class_function(&trivial_sub, &trivial_sub.trivial_character())
            .unwrap();
        assert!(g
            .class_function_value(&reg, g.identity_index())
            .eq(&Cyc::int(8)));
        // regular character decomposes with multiplicity = degree
        for (row, &deg) in table.rows.iter().zip(table.degrees.iter()) {
            let m = g.inner_product(&reg, row).unwrap();
            assert!(m.eq(&Cyc::int(deg)));
        }
        // Ind_G^G chi = chi
        for row in &table.rows {
            let same = g.induce_class_function(&g.clone(), row).unwrap();
            assert!(same.eq(row));
        }
        // Ind from <s1> of trivial decomposes as eps0 + eps2 + E, where the
        // linear characters are keyed by their values on the s1/s2 classes
        let s1 = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        let s2 = IntMat::from_rows(&[vec![1, 0], vec![0, -1]]);
        let c1 = g.class_of[g.index_of(&s1).unwrap()];
        let c2 = g.class_of[g.index_of(&s2).unwrap()];
        let sub = g
            .subgroup_group(&[g.identity_index(), g.index_of(&s1).unwrap()])
            .unwrap();
        let ind = g.induce_class_function(&sub, &sub.trivial_character()).unwrap();
        let mults: Vec<Q> = table
            .rows
            .iter()
            .map(|r| g.inner_product(&ind, r).unwrap().as_rational().unwrap())
            .collect();
        let total: Q = mults
            .iter()
            .zip(table.degrees.iter())
            .map(|(m, &d)| m * qi(d))
            .sum();
        assert_eq!(total, qi(4));
        for (row, (&deg, mult)) in table
            .rows
            .iter()
            .zip(table.degrees.iter().zip(mults.iter()))
        {
            let expected = if deg == 2 {
                qi(1) // E appears once
            } else {
                // eps0 (1,1) and eps2 (1,-1) appear; eps1/eps3 do not
                let fixes_s1 = row.values[c1].eq(&Cyc::one());
                if fixes_s1 {
                    qi(1)
                } else {
                    qi(0)
                }
            };
            assert_eq!(*mult, expected);
        }
        assert!(matches!(
            g.induce_class_function(&weyl("G2"), &weyl("G2").trivial_character()),
            Err(Error::NotASubgroup)
        ));
    }

    #[test]
    fn frobenius_reciprocity_exhaustive() {
        for name in ["B2", "A2", "A1xA1", "G2"] {
            let g = weyl(name);
            if g.order() > 48 {
                continue;
            }
            let g_table = g.character_table().unwrap();
            for sub in g.subgroups_up_to_conjugacy().unwrap() {
                let h = g.subgroup_group(&sub.elements).unwrap();
                let h_table = h.character_table().unwrap();
                for chi in &h_table.rows {
                    let ind = g.induce_class_function(&h, chi).unwrap();
                    for psi in &g_table.rows {
                        let lhs = g.inner_product(&ind, psi).unwrap();
                        let res = g.restrict_class_function(&h, psi).unwrap();
                        let rhs = h.inner_product(chi, &res).unwrap();
                        assert!(lhs.eq(&rhs), "{name}: Frobenius reciprocity");
                    }
                }
            }
        }
    }

    #[test]
    fn torsion_character_stabilizers() {
        let g = weyl("B2");
        let t0 = TorsionChar::trivial(2);
        assert_eq!(t0.stabilizer_indices(&g).len(), 8);
        let t_half = TorsionChar::new(vec![qr(1, 2), qr(1, 2)]);
        assert_eq!(t_half.stabilizer_indices(&g).len(), 8);
        let t_v4 = TorsionChar::new(vec![qr(1, 2), qi(0)]);
        let stab = t_v4.stabilizer_indices(&g);
        assert_eq!(stab.len(), 4);
        let v4 = g.subgroup_group(&stab).unwrap();
        let minus = IntMat::from_rows(&[vec![-1, 0], vec![0, -1]]);
        assert!(v4.contains(&minus));
        // t(x+y) = t(x) t(y)
        let x = [1, 0];
        let y = [2, 1];
        let xy = [3, 1];
        let lhs = t_v4.value_on(&xy).unwrap();
        let rhs = t_v4
            .value_on(&x)
            .unwrap()
            .mul(&t_v4.value_on(&y).unwrap())
            .unwrap();
        assert!(lhs.eq(&rhs));
        assert_eq!(t_v4.order(), 2);
    }
}
