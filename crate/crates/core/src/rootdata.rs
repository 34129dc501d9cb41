//! Based root data over `X = Y = Z^d` with the standard dot product as the
//! pairing, chamber geometry, and validation.

use crate::exact::{dot_ii, dot_iq, qi, solve_q, Q, QVec};
use crate::intmat::{lattice_index, IntMat, Mat};
use crate::{Error, Result};

/// A based root datum. Roots live in `X = Z^d`, coroots in `Y = Z^d`,
/// index-aligned, and `⟨x, y⟩` is the standard dot product. The order of
/// `simple` matters: later constructions consume the simple roots in this
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedRootDatum {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple: Vec<usize>,
    pub name: String,
}

impl BasedRootDatum {
    pub fn new(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        simple: Vec<usize>,
        name: &str,
    ) -> Self {
        BasedRootDatum { rank, roots, coroots, simple, name: name.to_string() }
    }

    /// Named presets. All presets are semisimple except `A2/standard`,
    /// which realizes A2 on the sum-zero sublattice of `Z^3`.
    pub fn preset(name: &str, lattice: &str) -> Result<Self> {
        if lattice != "root" && lattice != "standard" {
            return Err(Error::UnknownLattice(lattice.to_string()));
        }
        let datum = match (name, lattice) {
            ("A1", _) => Self::new(
                1,
                vec![vec![1], vec![-1]],
                vec![vec![2], vec![-2]],
                vec![0],
                "A1",
            ),
            ("A1xA1", _) => Self::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
                vec![vec![2, 0], vec![0, 2], vec![-2, 0], vec![0, -2]],
                vec![0, 1],
                "A1xA1",
            ),
            ("A2", "root") => Self::new(
                2,
                vec![
                    vec![1, 0],
                    vec![0, 1],
                    vec![1, 1],
                    vec![-1, 0],
                    vec![0, -1],
                    vec![-1, -1],
                ],
                vec![
                    vec![2, -1],
                    vec![-1, 2],
                    vec![1, 1],
                    vec![-2, 1],
                    vec![1, -2],
                    vec![-1, -1],
                ],
                vec![0, 1],
                "A2",
            ),
            ("A2", "standard") => Self::new(
                3,
                vec![
                    vec![1, -1, 0],
                    vec![0, 1, -1],
                    vec![1, 0, -1],
                    vec![-1, 1, 0],
                    vec![0, -1, 1],
                    vec![-1, 0, 1],
                ],
                vec![
                    vec![1, -1, 0],
                    vec![0, 1, -1],
                    vec![1, 0, -1],
                    vec![-1, 1, 0],
                    vec![0, -1, 1],
                    vec![-1, 0, 1],
                ],
                vec![0, 1],
                "A2",
            ),
            ("B2", _) => Self::new(
                2,
                vec![
                    vec![1, -1],
                    vec![0, 1],
                    vec![1, 0],
                    vec![1, 1],
                    vec![-1, 1],
                    vec![0, -1],
                    vec![-1, 0],
                    vec![-1, -1],
                ],
                vec![
                    vec![1, -1],
                    vec![0, 2],
                    vec![2, 0],
                    vec![1, 1],
                    vec![-1, 1],
                    vec![0, -2],
                    vec![-2, 0],
                    vec![-1, -1],
                ],
                vec![0, 1],
                "B2",
            ),
            ("G2", _) => Self::new(
                2,
                vec![
                    vec![1, 0],
                    vec![0, 1],
                    vec![1, 1],
                    vec![2, 1],
                    vec![3, 1],
                    vec![3, 2],
                    vec![-1, 0],
                    vec![0, -1],
                    vec![-1, -1],
                    vec![-2, -1],
                    vec![-3, -1],
                    vec![-3, -2],
                ],
                vec![
                    vec![2, -3],
                    vec![-1, 2],
                    vec![-1, 3],
                    vec![1, 0],
                    vec![1, -1],
                    vec![0, 1],
                    vec![-2, 3],
                    vec![1, -2],
                    vec![1, -3],
                    vec![-1, 0],
                    vec![-1, 1],
                    vec![0, -1],
                ],
                vec![0, 1],
                "G2",
            ),
            _ => return Err(Error::UnknownPreset(name.to_string())),
        };
        debug_assert!(datum.validate().is_empty(), "preset must validate");
        Ok(datum)
    }

    /// Check all datum invariants; returns one tag per violation,
    /// empty when valid.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        if self.roots.len() != self.coroots.len() {
            report.push("roots-coroots-length-mismatch".to_string());
            return report;
        }
        if self
            .roots
            .iter()
            .chain(self.coroots.iter())
            .any(|v| v.len() != self.rank)
        {
            report.push("vector-rank-mismatch".to_string());
            return report;
        }
        if self.simple.iter().any(|&i| i >= self.roots.len()) {
            report.push("simple-index-out-of-range".to_string());
            return report;
        }
        for (a, av) in self.roots.iter().zip(self.coroots.iter()) {
            if dot_ii(a, av) != 2 {
                report.push("pairing-not-2".to_string());
                break;
            }
        }
        for &i in &self.simple {
            let m = self.reflection_matrix(i);
            let image: Vec<Vec<i64>> =
                self.roots.iter().map(|r| m.matvec(r)).collect();
            let mut sorted_roots = self.roots.clone();
            sorted_roots.sort();
            let mut sorted_image = image;
            sorted_image.sort();
            if sorted_roots != sorted_image {
                report.push("not-closed-under-reflection".to_string());
                break;
            }
        }
        for r in &self.roots {
            let double: Vec<i64> = r.iter().map(|c| 2 * c).collect();
            if self.roots.contains(&double) {
                report.push("not-reduced".to_string());
                break;
            }
        }
        if !self.roots.iter().all(|r| self.is_signed_simple_combination(r)) {
            report.push("not-simple-combination".to_string());
        }
        report
    }

    fn is_signed_simple_combination(&self, root: &[i64]) -> bool {
        let cols: Vec<Vec<Q>> = self
            .simple
            .iter()
            .map(|&i| self.roots[i].iter().map(|&c| qi(c)).collect())
            .collect();
        let rows: Vec<Vec<Q>> = (0..self.rank)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let rhs: QVec = root.iter().map(|&c| qi(c)).collect();
        match solve_q(&rows, &rhs) {
            None => false,
            Some(x) => {
                let integral = x.iter().all(|c| c.denom() == &1.into());
                let nonneg = x.iter().all(|c| c >= &qi(0));
                let nonpos = x.iter().all(|c| c <= &qi(0));
                integral && (nonneg || nonpos)
            }
        }
    }

    /// Reflection in the root with index `i`: `x ↦ x - ⟨x, α_i^∨⟩ α_i`.
    pub fn reflection_matrix(&self, i: usize) -> IntMat {
        let d = self.rank;
        let alpha = &self.roots[i];
        let covec = &self.coroots[i];
        let mut m = IntMat::identity(d);
        for r in 0..d {
            for c in 0..d {
                m.set(r, c, m.get(r, c) - alpha[r] * covec[c]);
            }
        }
        m
    }

    pub fn simple_reflection_matrices(&self) -> Vec<IntMat> {
        self.simple.iter().map(|&i| self.reflection_matrix(i)).collect()
    }

    /// Indices of positive roots: nonnegative coordinates on the simple
    /// roots. Exactly half of the roots for a valid datum.
    pub fn positive_root_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (idx, r) in self.roots.iter().enumerate() {
            if self.simple_coordinates(r).is_some_and(|x| x.iter().all(|c| c >= &qi(0)))
            {
                out.push(idx);
            }
        }
        out
    }

    fn simple_coordinates(&self, root: &[i64]) -> Option<QVec> {
        let rows: Vec<Vec<Q>> = (0..self.rank)
            .map(|r| self.simple.iter().map(|&i| qi(self.roots[i][r])).collect())
            .collect();
        let rhs: QVec = root.iter().map(|&c| qi(c)).collect();
        solve_q(&rows, &rhs)
    }

    /// `R_0^⊥ = 0`, i.e. the roots span `E = Q^d`.
    pub fn is_semisimple(&self) -> bool {
        if self.simple.len() != self.rank {
            return false;
        }
        let cols: Vec<Vec<i64>> =
            self.simple.iter().map(|&i| self.roots[i].clone()).collect();
        lattice_index(&Mat::from_cols(&cols)).is_some()
    }

    /// `[X : ZR_0]` for a semisimple datum.
    pub fn root_lattice_index(&self) -> Result<i64> {
        let cols: Vec<Vec<i64>> =
            self.simple.iter().map(|&i| self.roots[i].clone()).collect();
        lattice_index(&Mat::from_cols(&cols)).ok_or(Error::NotSemisimple)
    }

    /// Is `x ∈ ZR_0`?
    pub fn in_root_lattice(&self, x: &[i64]) -> bool {
        let cols: Vec<Vec<i64>> =
            self.simple.iter().map(|&i| self.roots[i].clone()).collect();
        crate::intmat::lattice_contains(&Mat::from_cols(&cols), x)
    }

    pub fn is_dominant(&self, p: &[Q]) -> bool {
        self.simple.iter().all(|&i| dot_iq(p, &self.coroots[i]) >= qi(0))
    }

    /// The unique `I ⊆ F_0` with `p ∈ C_I^{++}`: the set of simple roots
    /// whose coroots vanish on `p`. Errors if `p` is not dominant.
    pub fn chamber_face(&self, p: &[Q]) -> Result<ChamberFace> {
        let mut face = Vec::new();
        for (pos, &i) in self.simple.iter().enumerate() {
            let v = dot_iq(p, &self.coroots[i]);
            if v < qi(0) {
                return Err(Error::PointNotDominant);
            }
            if v == qi(0) {
                face.push(pos);
            }
        }
        Ok(ChamberFace { face })
    }

    /// Where `p` sits relative to a given `I`: in the open part
    /// `C_I^{++}`, only in the closure `C_I^+`, or outside.
    pub fn chamber_position(&self, p: &[Q], face: &[usize]) -> Result<ChamberPosition> {
        let exact = self.chamber_face(p)?;
        if exact.face == face {
            Ok(ChamberPosition::Interior)
        } else if face.iter().all(|i| exact.face.contains(i)) {
            Ok(ChamberPosition::BoundaryOnly)
        } else {
            Ok(ChamberPosition::Outside)
        }
    }
}

/// Result of [`BasedRootDatum::chamber_face`]: positions into `simple`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberFace {
    pub face: Vec<usize>,
}

impl ChamberFace {
    /// `p ∈ C_I^{++}` for the returned `I` always holds.
    pub fn is_interior_of_own_face(&self) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChamberPosition {
    Interior,
    BoundaryOnly,
    Outside,
}
