//! A `W₀`-equivariant chain contraction `γ` of the augmented complex
//! `(C_*(Σ), ∂)` with uniformly bounded coefficients.
//!
//! The construction follows the periodic structure of Σ. Base vectors
//! `β_i` span a half-open parallelepiped `P_∅`; γ is solved exactly, degree
//! by degree, on every cell whose barycenter lies in
//! `P_1 = P_∅ ∪ ⋃ t_{β_i} P_∅`, with support constrained to
//! `A(σ) ∩ C_I^+`. Two translation recursions extend γ to the whole
//! dominant cone, and `W₀`-equivariance extends it to all of Σ:
//!
//! * single direction: `γ(t_{(m+1)β_i} τ) = γ(t_{mβ_i} τ) +
//!   t_{mβ_i} γ(t_{β_i} τ - τ)`
//! * mixed directions, largest index `k` with `n_k > 0`:
//!   `γ(t_β τ) = γ(t_{n_k β_k} τ) + t_{n_k β_k} γ(t_{β - n_k β_k} τ - τ)`
//!
//! Pinned base chains override the solver and are checked against the
//! defining equation and the support constraint.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};

use crate::affine::AffineElement;
use crate::chains::{Chain, Complex, Polysimplex, Region};
use crate::exact::{invert_q, qi, qr, solve_q, Q, QVec};
use crate::rootdata::BasedRootDatum;
use crate::{Error, Result};

/// Base translation vectors: `β_i` is the minimal lattice vector of the ray
/// `C^{++}_{F_0 \ {α_i}} ∩ ZR₀`. Each is dominant and orthogonal to the
/// other simple coroots.
pub fn base_vectors(datum: &BasedRootDatum) -> Result<Vec<Vec<i64>>> {
    if !datum.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let d = datum.rank;
    let mut out = Vec::with_capacity(d);
    for (pos, _) in datum.simple.iter().enumerate() {
        // solve ⟨x, α_j^∨⟩ = 0 for j ≠ pos, ⟨x, α_pos^∨⟩ = 1 → ray direction
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut rhs: Vec<Q> = Vec::new();
        for (j, &rj) in datum.simple.iter().enumerate() {
            rows.push(datum.coroots[rj].iter().map(|&c| qi(c)).collect());
            rhs.push(if j == pos { qi(1) } else { qi(0) });
        }
        let dir = solve_q(&rows, &rhs)
            .ok_or_else(|| Error::Invalid("coweight direction unsolvable".into()))?;
        // scale to the primitive integer vector on the ray
        let denom_lcm = dir
            .iter()
            .map(|q| q.denom().clone())
            .fold(num::BigInt::one(), num::integer::lcm);
        let ints: Vec<num::BigInt> =
            dir.iter().map(|q| (q * Q::from_integer(denom_lcm.clone())).to_integer()).collect();
        let gcd = ints
            .iter()
            .fold(num::BigInt::zero(), |acc, x| num::integer::gcd(acc, x.clone()));
        let prim: Vec<i64> = ints
            .iter()
            .map(|x| i64::try_from(x / &gcd).expect("primitive vector fits i64"))
            .collect();
        // smallest positive multiple landing in ZR0
        let mut beta = None;
        for c in 1..=64 {
            let cand: Vec<i64> = prim.iter().map(|&x| c * x).collect();
            if datum.in_root_lattice(&cand) {
                beta = Some(cand);
                break;
            }
        }
        let beta = beta.ok_or_else(|| {
            Error::Invalid("no small multiple of the coweight ray in ZR0".into())
        })?;
        out.push(beta);
    }
    Ok(out)
}

/// Solver configuration: optional pinned base chains.
#[derive(Default)]
pub struct ContractionConfig {
    pub pins: BTreeMap<Polysimplex, Chain>,
}

/// Verification report for a region.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub identity_ok: bool,
    pub support_ok: bool,
    pub equivariance_ok: bool,
    pub cells_checked: usize,
    pub max_coeff: Q,
    pub base_max_coeff: Q,
    pub failures: Vec<String>,
}

/// The memoized contraction.
pub struct Contraction<'a> {
    pub cx: &'a Complex,
    pub beta: Vec<Vec<i64>>,
    beta_inverse: Vec<Vec<Q>>,
    base: HashMap<Polysimplex, Chain>,
    memo: RefCell<HashMap<Polysimplex, Chain>>,
    pub base_max_coeff: Q,
}

impl<'a> Contraction<'a> {
    /// Build the base table: solve the contraction equation on every cell
    /// with barycenter in `P_1`, by increasing degree.
    pub fn build(cx: &'a Complex, config: &ContractionConfig) -> Result<Self> {
        let datum = cx.datum();
        let beta = base_vectors(datum)?;
        let cols: Vec<Vec<Q>> = (0..datum.rank)
            .map(|r| beta.iter().map(|b| qi(b[r])).collect())
            .collect();
        let beta_inverse =
            invert_q(&cols).ok_or_else(|| Error::Invalid("beta not a basis".into()))?;
        let mut contraction = Contraction {
            cx,
            beta,
            beta_inverse,
            base: HashMap::new(),
            memo: RefCell::new(HashMap::new()),
            base_max_coeff: Q::zero(),
        };
        contraction.solve_base(config)?;
        Ok(contraction)
    }

    /// Coordinates of a point in the β-basis.
    fn beta_coords(&self, p: &[Q]) -> QVec {
        self.beta_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(p.iter())
                    .map(|(a, b)| a * b)
                    .sum::<Q>()
            })
            .collect()
    }

    /// Is the barycenter inside the half-open `P_∅` shifted by `shift·β_i`?
    fn in_p0_shifted(&self, bary: &[Q], shift: Option<usize>) -> bool {
        let mut y = self.beta_coords(bary);
        if let Some(i) = shift {
            y[i] -= qi(1);
        }
        y.iter().all(|c| c >= &Q::zero() && c < &qi(1))
    }

    fn in_p1(&self, bary: &[Q]) -> bool {
        if self.in_p0_shifted(bary, None) {
            return true;
        }
        (0..self.beta.len()).any(|i| self.in_p0_shifted(bary, Some(i)))
    }

    fn solve_base(&mut self, config: &ContractionConfig) -> Result<()> {
        let cx = self.cx;
        // region enclosing P_2 = 2·closure(P_∅): corners Σ 2ε_i β_i
        let r = self.beta.len();
        let mut corners: Vec<QVec> = Vec::new();
        for mask in 0u32..(1 << r) {
            let mut p = vec![Q::zero(); cx.rank()];
            for i in 0..r {
                if mask >> i & 1 == 1 {
                    for (slot, &c) in p.iter_mut().zip(self.beta[i].iter()) {
                        *slot += qi(2 * c);
                    }
                }
            }
            corners.push(p);
        }
        let region = cx.region_of_points(&corners);
        for dim in 0..=cx.rank() {
            let cells = cx.cells_in_region(&region, dim);
            for cell in cells {
                let bary = cx.barycenter(&cell);
                if !self.in_p1(&bary) {
                    continue;
                }
                let gamma = match config.pins.get(&cell) {
                    Some(pin) => {
                        self.check_pin(&cell, pin)?;
                        pin.clone()
                    }
                    None => self.solve_cell(&cell)?,
                };
                let m = gamma.max_abs_coeff();
                if m > self.base_max_coeff {
                    self.base_max_coeff = m;
                }
                self.base.insert(cell, gamma);
            }
        }
        // every pin must have been consumed
        for pin_cell in config.pins.keys() {
            if !self.base.contains_key(pin_cell) {
                return Err(Error::PinInvalid(format!(
                    "pinned cell {:?} is not a base cell",
                    pin_cell
                )));
            }
        }
        Ok(())
    }

    fn check_pin(&self, cell: &Polysimplex, pin: &Chain) -> Result<()> {
        let cx = self.cx;
        let dim = cx.dim(cell);
        if pin.degree != dim + 1 {
            return Err(Error::PinInvalid("pin degree mismatch".into()));
        }
        let rhs = self.equation_rhs(cell)?;
        let lhs = cx.boundary(&pin);
        if lhs != rhs {
            return Err(Error::PinInvalid(format!(
                "pinned chain violates the contraction equation at {cell:?}"
            )));
        }
        let region = cx.region_of_cells(&[cell.clone()]);
        for sup in pin.support() {
            if !cx.region_contains_cell(&region, sup) {
                return Err(Error::PinInvalid("pin support escapes A(σ)".into()));
            }
        }
        Ok(())
    }

    /// `σ - γ(∂σ)`, the right-hand side of the defining equation.
    fn equation_rhs(&self, cell: &Polysimplex) -> Result<Chain> {
        let cx = self.cx;
        let dim = cx.dim(cell);
        let boundary = cx.boundary_cell(cell);
        let gamma_boundary = self.gamma_chain_internal(&boundary)?;
        Ok(Chain::single(cell.clone(), dim).sub(&gamma_boundary))
    }

    /// Deterministic particular solution of `∂ c = σ - γ(∂σ)` with support
    /// in `A(σ) ∩ C_I^+` for the finest face `I` of σ.
    fn solve_cell(&self, cell: &Polysimplex) -> Result<Chain> {
        let cx = self.cx;
        let dim = cx.dim(cell) as usize;
        let rhs_chain = self.equation_rhs(cell)?;
        if dim == cx.rank() {
            // C_{top+1} = 0: the equation must already be satisfied
            if !rhs_chain.is_zero() {
                return Err(Error::NoSolution(format!(
                    "top-degree cell has nonzero residual: {cell:?}"
                )));
            }
            return Ok(Chain::zero(dim as i64 + 1));
        }
        let face = cx.cell_face(cell);
        let region = cx.region_of_cells(&[cell.clone()]);
        let candidates: Vec<Polysimplex> = cx
            .cells_in_region(&region, dim + 1)
            .into_iter()
            .filter(|c| cx.cell_in_chamber_closure(c, &face))
            .collect();
        // rows: all cells of dimension `dim` hit by candidate boundaries or rhs
        let mut row_cells: Vec<Polysimplex> =
            rhs_chain.terms.keys().cloned().collect();
        let mut col_boundaries = Vec::with_capacity(candidates.len());
        for cand in &candidates {
            let b = cx.boundary_cell(cand);
            for sub in b.terms.keys() {
                if !row_cells.contains(sub) {
                    row_cells.push(sub.clone());
                }
            }
            col_boundaries.push(b);
        }
        row_cells.sort();
        let row_index: HashMap<&Polysimplex, usize> =
            row_cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut matrix = vec![vec![Q::zero(); candidates.len()]; row_cells.len()];
        for (j, b) in col_boundaries.iter().enumerate() {
            for (sub, coeff) in &b.terms {
                matrix[row_index[sub]][j] = coeff.clone();
            }
        }
        let mut rhs = vec![Q::zero(); row_cells.len()];
        for (sub, coeff) in &rhs_chain.terms {
            rhs[row_index[sub]] = coeff.clone();
        }
        let x = solve_q(&matrix, &rhs).ok_or_else(|| {
            Error::NoSolution(format!("contraction equation unsolvable at {cell:?}"))
        })?;
        let mut out = Chain::zero(dim as i64 + 1);
        for (cand, coeff) in candidates.into_iter().zip(x.into_iter()) {
            out.add_term(cand, coeff);
        }
        Ok(out)
    }

    // --- evaluation ----------------------------------------------------

    /// `γ(σ)` for any cell of Σ (including the augmentation generator).
    pub fn gamma(&self, cell: &Polysimplex) -> Result<Chain> {
        if cell.is_augmentation() {
            return Ok(Chain::single(self.cx.origin_vertex_cell(), 0));
        }
        if let Some(hit) = self.base.get(cell) {
            return Ok(hit.clone());
        }
        if let Some(hit) = self.memo.borrow().get(cell) {
            return Ok(hit.clone());
        }
        let out = self.gamma_uncached(cell)?;
        self.memo.borrow_mut().insert(cell.clone(), out.clone());
        Ok(out)
    }

    fn gamma_uncached(&self, cell: &Polysimplex) -> Result<Chain> {
        let cx = self.cx;
        if cx.cell_dominant(cell) {
            return self.gamma_dominant(cell);
        }
        // minimal-length w ∈ W₀ with w^{-1}·σ dominant
        for w in &cx.w0_by_length {
            let moved = cx.act(&w.inverse(), cell);
            if cx.cell_dominant(&moved) {
                let inner = self.gamma(&moved)?;
                return Ok(cx.act_chain(w, &inner));
            }
        }
        Err(Error::DecompositionFailure(format!(
            "no W0 element moves {cell:?} into the dominant cone"
        )))
    }

    fn gamma_dominant(&self, cell: &Polysimplex) -> Result<Chain> {
        let cx = self.cx;
        let bary = cx.barycenter(cell);
        let coords = self.beta_coords(&bary);
        let shifts: Vec<i64> = coords
            .iter()
            .map(|c| {
                i64::try_from(c.floor().to_integer()).expect("shift fits i64")
            })
            .collect();
        if shifts.iter().any(|&m| m < 0) {
            return Err(Error::DecompositionFailure(format!(
                "dominant cell with negative beta coordinates: {cell:?}"
            )));
        }
        let nonzero: Vec<usize> =
            (0..shifts.len()).filter(|&i| shifts[i] > 0).collect();
        if nonzero.is_empty() {
            // barycenter in P_∅ ⊂ P_1: must be a base cell
            return self.base.get(cell).cloned().ok_or_else(|| {
                Error::DecompositionFailure(format!("missing base cell {cell:?}"))
            });
        }
        let tau = {
            let back: Vec<i64> = (0..cx.rank())
                .map(|r| {
                    -(0..self.beta.len())
                        .map(|i| shifts[i] * self.beta[i][r])
                        .sum::<i64>()
                })
                .collect();
            cx.act(&AffineElement::translation(back), cell)
        };
        if nonzero.len() == 1 && shifts[nonzero[0]] >= 1 {
            let i = nonzero[0];
            let m = shifts[i];
            // γ(t_{mβ_i} τ) = γ(t_{(m-1)β_i} τ) + t_{(m-1)β_i} γ(t_{β_i}τ - τ)
            let t_prev = self.translation_multiple(i, m - 1);
            let t_one = self.translation_multiple(i, 1);
            let prev_cell = cx.act(&t_prev, &tau);
            let first = self.gamma(&prev_cell)?;
            let step_cell = cx.act(&t_one, &tau);
            let step =
                self.gamma(&step_cell)?.sub(&self.gamma(&tau)?);
            Ok(first.add(&cx.act_chain(&t_prev, &step)))
        } else {
            // rule for mixed translations, k = largest index with n_k > 0
            let k = *nonzero.last().unwrap();
            let t_k = self.translation_multiple(k, shifts[k]);
            let first = self.gamma(&cx.act(&t_k, &tau))?;
            let mut rest_shift: Vec<i64> = shifts.clone();
            rest_shift[k] = 0;
            let t_rest = {
                let x: Vec<i64> = (0..cx.rank())
                    .map(|r| {
                        (0..self.beta.len())
                            .map(|i| rest_shift[i] * self.beta[i][r])
                            .sum::<i64>()
                    })
                    .collect();
                AffineElement::translation(x)
            };
            let step = self
                .gamma(&cx.act(&t_rest, &tau))?
                .sub(&self.gamma(&tau)?);
            Ok(first.add(&cx.act_chain(&t_k, &step)))
        }
    }

    fn translation_multiple(&self, i: usize, m: i64) -> AffineElement {
        let x: Vec<i64> = self.beta[i].iter().map(|&c| m * c).collect();
        AffineElement::translation(x)
    }

    fn gamma_chain_internal(&self, c: &Chain) -> Result<Chain> {
        let mut out = Chain::zero(c.degree + 1);
        for (cell, coeff) in &c.terms {
            let g = self.gamma(cell)?;
            for (t, v) in g.terms {
                out.add_term(t, v * coeff);
            }
        }
        Ok(out)
    }

    /// Linear extension of γ to chains.
    pub fn gamma_chain(&self, c: &Chain) -> Result<Chain> {
        self.gamma_chain_internal(c)
    }

    /// Check `γ∂ + ∂γ = id`, the support condition, and `W₀`-equivariance
    /// for every cell of the region in the given dimensions; record the
    /// largest coefficient seen.
    pub fn verify(&self, region: &Region, dims: &[usize]) -> Result<VerifyReport> {
        let cx = self.cx;
        let mut report = VerifyReport {
            identity_ok: true,
            support_ok: true,
            equivariance_ok: true,
            cells_checked: 0,
            max_coeff: Q::zero(),
            base_max_coeff: self.base_max_coeff.clone(),
            failures: Vec::new(),
        };
        // degree -1: ∂γ(1) = 1
        let aug = cx.augmentation_cell();
        let g_aug = self.gamma(&aug)?;
        if cx.boundary(&g_aug) != Chain::single(aug.clone(), -1) {
            report.identity_ok = false;
            report.failures.push("identity fails in degree -1".to_string());
        }
        for &dim in dims {
            for cell in cx.cells_in_region(region, dim) {
                report.cells_checked += 1;
                let g = self.gamma(&cell)?;
                let m = g.max_abs_coeff();
                if m > report.max_coeff {
                    report.max_coeff = m;
                }
                // identity
                let lhs = cx
                    .boundary(&g)
                    .add(&self.gamma_chain_internal(&cx.boundary_cell(&cell))?);
                if lhs != Chain::single(cell.clone(), dim as i64) {
                    report.identity_ok = false;
                    report.failures.push(format!("identity fails at {cell:?}"));
                }
                // support inside A(σ)
                let a_sigma = cx.region_of_cells(&[cell.clone()]);
                for sup in g.support() {
                    if !cx.region_contains_cell(&a_sigma, sup) {
                        report.support_ok = false;
                        report
                            .failures
                            .push(format!("support escapes A(σ) at {cell:?}"));
                        break;
                    }
                }
                // equivariance over all of W₀ for dominant cells
                if cx.cell_dominant(&cell) {
                    for w in &cx.w0_by_length {
                        let lhs = self.gamma(&cx.act(w, &cell))?;
                        let rhs = cx.act_chain(w, &g);
                        if lhs != rhs {
                            report.equivariance_ok = false;
                            report
                                .failures
                                .push(format!("equivariance fails at {cell:?}"));
                            break;
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// Read-only view of the base table (deterministic order).
    pub fn base_table(&self) -> BTreeMap<Polysimplex, Chain> {
        self.base.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

/// The pinned base chains reproducing the worked two-dimensional example
/// of type B2: γ of the three displayed edges is a single alcove, γ of the
/// fourth is a staircase of five alcoves, and γ of the nearby vertices are
/// lattice paths from the origin.
pub fn b2_paper_pins(cx: &Complex) -> Result<ContractionConfig> {
    let p = |n1: i64, d1: i64, n2: i64, d2: i64| -> QVec { vec![qr(n1, d1), qr(n2, d2)] };
    let mut pins: BTreeMap<Polysimplex, Chain> = BTreeMap::new();
    let mut pin_path =
        |vertex: QVec, path: Vec<(QVec, QVec)>| -> Result<()> {
            let (cell, _) = cx.cell_from_vertex_tuple(&[vertex])?;
            let terms: Vec<(Vec<QVec>, Q)> = path
                .into_iter()
                .map(|(a, b)| (vec![a, b], qi(1)))
                .collect();
            let chain = cx.chain_from_tuples(&terms)?;
            pins.insert(cell, chain);
            Ok(())
        };
    let o = p(0, 1, 0, 1);
    // vertex paths from the origin along the staircase lines
    pin_path(p(1, 2, 0, 1), vec![(o.clone(), p(1, 2, 0, 1))])?;
    pin_path(p(1, 2, 1, 2), vec![(o.clone(), p(1, 2, 1, 2))])?;
    pin_path(p(1, 1, 0, 1), vec![(o.clone(), p(1, 2, 0, 1)), (p(1, 2, 0, 1), p(1, 1, 0, 1))])?;
    pin_path(
        p(1, 1, 1, 2),
        vec![(o.clone(), p(1, 2, 1, 2)), (p(1, 2, 1, 2), p(1, 1, 1, 2))],
    )?;
    pin_path(
        p(1, 1, 1, 1),
        vec![(o.clone(), p(1, 2, 1, 2)), (p(1, 2, 1, 2), p(1, 1, 1, 1))],
    )?;
    pin_path(
        p(3, 2, 0, 1),
        vec![
            (o.clone(), p(1, 2, 0, 1)),
            (p(1, 2, 0, 1), p(1, 1, 0, 1)),
            (p(1, 1, 0, 1), p(3, 2, 0, 1)),
        ],
    )?;
    pin_path(
        p(3, 2, 1, 2),
        vec![
            (o.clone(), p(1, 2, 1, 2)),
            (p(1, 2, 1, 2), p(1, 1, 1, 2)),
            (p(1, 1, 1, 2), p(3, 2, 1, 2)),
        ],
    )?;
    pin_path(
        p(3, 2, 1, 1),
        vec![
            (o.clone(), p(1, 2, 1, 2)),
            (p(1, 2, 1, 2), p(1, 1, 1, 1)),
            (p(1, 1, 1, 1), p(3, 2, 1, 1)),
        ],
    )?;
    pin_path(
        p(3, 2, 3, 2),
        vec![
            (o.clone(), p(1, 2, 1, 2)),
            (p(1, 2, 1, 2), p(1, 1, 1, 1)),
            (p(1, 1, 1, 1), p(3, 2, 3, 2)),
        ],
    )?;

    // the four displayed edge pins
    let mut pin_edge = |edge: Vec<QVec>, chain: Chain| -> Result<()> {
        let (cell, sign) = cx.cell_from_vertex_tuple(&edge)?;
        let chain = if sign == 1 { chain } else { chain.scale(&qi(-1)) };
        pins.insert(cell, chain);
        Ok(())
    };
    // γ[(1/2,0),(1/2,1/2)] = [(0,0),(1/2,0),(1/2,1/2)]
    let c1 = cx.chain_from_tuples(&[(
        vec![o.clone(), p(1, 2, 0, 1), p(1, 2, 1, 2)],
        qi(1),
    )])?;
    pin_edge(vec![p(1, 2, 0, 1), p(1, 2, 1, 2)], c1)?;
    // γ[(1,1/2),(1,1)] = [(1/2,1/2),(1,1/2),(1,1)]
    let c2 = cx.chain_from_tuples(&[(
        vec![p(1, 2, 1, 2), p(1, 1, 1, 2), p(1, 1, 1, 1)],
        qi(1),
    )])?;
    pin_edge(vec![p(1, 1, 1, 2), p(1, 1, 1, 1)], c2)?;
    // γ[(3/2,1),(3/2,3/2)] = [(1,1),(3/2,1),(3/2,3/2)]
    let c3 = cx.chain_from_tuples(&[(
        vec![p(1, 1, 1, 1), p(3, 2, 1, 1), p(3, 2, 3, 2)],
        qi(1),
    )])?;
    pin_edge(vec![p(3, 2, 1, 1), p(3, 2, 3, 2)], c3)?;
    // γ[(3/2,0),(3/2,1/2)] = the five-triangle staircase, all counterclockwise
    let c4 = cx.chain_from_tuples(&[
        (vec![o.clone(), p(1, 2, 0, 1), p(1, 2, 1, 2)], qi(1)),
        (vec![p(1, 2, 0, 1), p(1, 1, 0, 1), p(1, 2, 1, 2)], qi(1)),
        (vec![p(1, 1, 0, 1), p(1, 1, 1, 2), p(1, 2, 1, 2)], qi(1)),
        (vec![p(1, 1, 0, 1), p(3, 2, 0, 1), p(3, 2, 1, 2)], qi(1)),
        (vec![p(1, 1, 0, 1), p(3, 2, 1, 2), p(1, 1, 1, 2)], qi(1)),
    ])?;
    pin_edge(vec![p(3, 2, 0, 1), p(3, 2, 1, 2)], c4)?;

    Ok(ContractionConfig { pins })
}

/// Region `A(t_{m(β_1+...+β_r)} A_∅)`, the standard verification window.
pub fn scaled_region(cx: &Complex, beta: &[Vec<i64>], m: i64) -> Region {
    let x: Vec<i64> = (0..cx.rank())
        .map(|r| beta.iter().map(|b| m * b[r]).sum())
        .collect();
    let cell = cx.alcove_cell(&AffineElement::translation(x));
    cx.region_of_cells(&[cell])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::Complex;
    use crate::rootdata::BasedRootDatum;

    fn complex(name: &str) -> Complex {
        let d = BasedRootDatum::preset(name, "root").unwrap();
        Complex::new(&d).unwrap()
    }

    #[test]
    fn base_vectors_match_worked_examples() {
        let b2 = BasedRootDatum::preset("B2", "standard").unwrap();
        assert_eq!(base_vectors(&b2).unwrap(), vec![vec![1, 0], vec![1, 1]]);
        let a1 = BasedRootDatum::preset("A1", "standard").unwrap();
        assert_eq!(base_vectors(&a1).unwrap(), vec![vec![1]]);
        let a2 = BasedRootDatum::preset("A2", "root").unwrap();
        let beta = base_vectors(&a2).unwrap();
        assert_eq!(beta, vec![vec![2, 1], vec![1, 2]]);
        // orthogonality to the other simple coroot
        for (i, b) in beta.iter().enumerate() {
            for (j, &rj) in a2.simple.iter().enumerate() {
                let pair: i64 = b
                    .iter()
                    .zip(a2.coroots[rj].iter())
                    .map(|(x, y)| x * y)
                    .sum();
                if i == j {
                    assert!(pair > 0);
                } else {
                    assert_eq!(pair, 0);
                }
            }
        }
        let ns = BasedRootDatum::preset("A2", "standard").unwrap();
        assert!(matches!(base_vectors(&ns), Err(Error::NotSemisimple)));
    }

    #[test]
    fn gamma_of_augmentation_is_origin() {
        let cx = complex("B2");
        let contraction =
            Contraction::build(&cx, &ContractionConfig::default()).unwrap();
        let g = contraction.gamma(&cx.augmentation_cell()).unwrap();
        assert_eq!(g, Chain::single(cx.origin_vertex_cell(), 0));
    }

    #[test]
    fn defining_equation_holds_on_base() {
        let cx = complex("B2");
        let contraction =
            Contraction::build(&cx, &ContractionConfig::default()).unwrap();
        for (cell, gamma) in contraction.base_table() {
            let lhs = cx.boundary(&gamma).add(
                &contraction
                    .gamma_chain(&cx.boundary_cell(&cell))
                    .unwrap(),
            );
            assert_eq!(lhs, Chain::single(cell.clone(), cx.dim(&cell)));
        }
    }

    #[test]
    fn paper_pins_are_valid_and_reproduced() {
        let cx = complex("B2");
        let config = b2_paper_pins(&cx).unwrap();
        let contraction = Contraction::build(&cx, &config).unwrap();
        // γ[(1/2,0),(1/2,1/2)] = A_∅ exactly
        let (edge, sign) = cx
            .cell_from_vertex_tuple(&[
                vec![qr(1, 2), qi(0)],
                vec![qr(1, 2), qr(1, 2)],
            ])
            .unwrap();
        let g = contraction.gamma(&edge).unwrap();
        let alcove = cx.alcove_cell(&AffineElement::identity(2));
        assert_eq!(g.scale(&qi(sign)).terms.get(&alcove), Some(&qi(1)));
        assert_eq!(g.terms.len(), 1);
    }

    #[test]
    fn small_region_verification() {
        let cx = complex("B2");
        let contraction =
            Contraction::build(&cx, &ContractionConfig::default()).unwrap();
        let region = scaled_region(&cx, &contraction.beta, 2);
        let report = contraction.verify(&region, &[0, 1, 2]).unwrap();
        assert!(report.identity_ok, "{:?}", report.failures);
        assert!(report.support_ok, "{:?}", report.failures);
        assert!(report.equivariance_ok, "{:?}", report.failures);
        assert!(report.cells_checked > 50);
    }

    #[test]
    fn broken_pins_are_rejected() {
        let cx = complex("B2");
        // a wrong chain for the alcove wall (twice the alcove)
        let (edge, _) = cx
            .cell_from_vertex_tuple(&[
                vec![qr(1, 2), qi(0)],
                vec![qr(1, 2), qr(1, 2)],
            ])
            .unwrap();
        let alcove = cx.alcove_cell(&AffineElement::identity(2));
        let mut config = ContractionConfig::default();
        config
            .pins
            .insert(edge, Chain::single(alcove, 2).scale(&qi(2)));
        assert!(matches!(
            Contraction::build(&cx, &config),
            Err(Error::PinInvalid(_))
        ));
        // a pin on a cell outside the base window is rejected too
        let far = cx.alcove_cell(&AffineElement::translation(vec![7, 0]));
        let mut config = ContractionConfig::default();
        config.pins.insert(far, Chain::zero(3));
        assert!(matches!(
            Contraction::build(&cx, &config),
            Err(Error::PinInvalid(_))
        ));
    }
}
