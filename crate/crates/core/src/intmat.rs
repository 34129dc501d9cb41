//! Small integer matrices: group elements of `GL_d(Z)`, determinants,
//! unimodular inverses, and Smith normal form for lattice quotients.

use crate::exact::{qi, Q, QVec};

/// Square integer matrix, row-major. Group elements live here.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IntMat {
    pub n: usize,
    pub a: Vec<i64>,
}

impl IntMat {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        IntMat { n, a }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            a.extend_from_slice(r);
        }
        IntMat { n, a }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        let n = self.n;
        assert_eq!(n, other.n);
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.a[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += aik * other.a[k * n + j];
                }
            }
        }
        IntMat { n, a: out }
    }

    pub fn matvec(&self, v: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| self.a[i * n + j] * v[j]).sum()).collect()
    }

    pub fn matvec_q(&self, v: &[Q]) -> QVec {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = qi(0);
                for j in 0..n {
                    let c = self.a[i * n + j];
                    if c != 0 {
                        acc += &v[j] * qi(c);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMat {
        let n = self.n;
        let mut a = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.a[i * n + j];
            }
        }
        IntMat { n, a }
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMat::identity(self.n)
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.n, other.n);
        IntMat {
            n: self.n,
            a: self.a.iter().zip(other.a.iter()).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.n, other.n);
        IntMat {
            n: self.n,
            a: self.a.iter().zip(other.a.iter()).map(|(x, y)| x - y).collect(),
        }
    }

    /// Determinant by cofactor expansion; the empty matrix has det 1.
    pub fn det(&self) -> i64 {
        fn det_rec(n: usize, a: &[i128]) -> i128 {
            match n {
                0 => 1,
                1 => a[0],
                2 => a[0] * a[3] - a[1] * a[2],
                _ => {
                    let mut acc: i128 = 0;
                    for col in 0..n {
                        let head = a[col];
                        if head == 0 {
                            continue;
                        }
                        let minor: Vec<i128> = (1..n)
                            .flat_map(|i| {
                                (0..n).filter(|&j| j != col).map(move |j| (i, j))
                            })
                            .map(|(i, j)| a[i * n + j])
                            .collect();
                        let sign = if col % 2 == 0 { 1 } else { -1 };
                        acc += sign * head * det_rec(n - 1, &minor);
                    }
                    acc
                }
            }
        }
        let wide: Vec<i128> = self.a.iter().map(|&x| x as i128).collect();
        let d = det_rec(self.n, &wide);
        i64::try_from(d).expect("determinant out of i64 range")
    }

    /// Integer inverse for matrices with determinant ±1.
    pub fn inverse(&self) -> Option<IntMat> {
        let d = self.det();
        if d != 1 && d != -1 {
            return None;
        }
        let n = self.n;
        let mut adj = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                // cofactor C_ij goes to adj[j][i]
                let minor: Vec<i64> = (0..n)
                    .filter(|&r| r != i)
                    .flat_map(|r| {
                        (0..n).filter(|&c| c != j).map(move |c| (r, c))
                    })
                    .map(|(r, c)| self.a[r * n + c])
                    .collect();
                let m = IntMat { n: n - 1, a: minor };
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj[j * n + i] = sign * m.det();
            }
        }
        if d == -1 {
            for x in adj.iter_mut() {
                *x = -*x;
            }
        }
        Some(IntMat { n, a: adj })
    }

    /// Coefficients of `det(I + t·M)` as a polynomial in `t`, exact.
    /// Entry `k` is the k-th elementary symmetric function of the
    /// eigenvalues, i.e. the trace on the k-th exterior power.
    pub fn exterior_traces(&self) -> Vec<i64> {
        let n = self.n;
        // sum over k-subsets S of principal minors det(M[S,S])
        let mut coeffs = vec![0i64; n + 1];
        coeffs[0] = 1;
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let k = idx.len();
            let sub: Vec<i64> = idx
                .iter()
                .flat_map(|&r| idx.iter().map(move |&c| self.a[r * n + c]))
                .collect();
            coeffs[k] += IntMat { n: k, a: sub }.det();
        }
        coeffs
    }
}

/// Rectangular integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    pub r: usize,
    pub c: usize,
    pub a: Vec<i64>,
}

impl Mat {
    pub fn zeros(r: usize, c: usize) -> Self {
        Mat { r, c, a: vec![0; r * c] }
    }

    pub fn from_cols(cols: &[Vec<i64>]) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = Mat::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.a[i * c + j] = v;
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.c + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.c + j] = v;
    }
}

/// Smith normal form: `u * a * v = d` with `u`, `v` unimodular and `d`
/// diagonal with nonnegative entries `d_1 | d_2 | ...`.
pub struct Snf {
    pub u: IntMat,
    pub d: Mat,
    pub v: IntMat,
}

pub fn smith(a: &Mat) -> Snf {
    let mut d = a.clone();
    let (r, c) = (d.r, d.c);
    let mut u = IntMat::identity(r);
    let mut v = IntMat::identity(c);

    fn row_op(d: &mut Mat, u: &mut IntMat, dst: usize, src: usize, k: i64) {
        for j in 0..d.c {
            let x = d.get(src, j);
            d.set(dst, j, d.get(dst, j) + k * x);
        }
        for j in 0..u.n {
            let x = u.get(src, j);
            u.set(dst, j, u.get(dst, j) + k * x);
        }
    }
    fn col_op(d: &mut Mat, v: &mut IntMat, dst: usize, src: usize, k: i64) {
        for i in 0..d.r {
            let x = d.get(i, src);
            d.set(i, dst, d.get(i, dst) + k * x);
        }
        for i in 0..v.n {
            let x = v.get(i, src);
            v.set(i, dst, v.get(i, dst) + k * x);
        }
    }
    fn swap_rows(d: &mut Mat, u: &mut IntMat, x: usize, y: usize) {
        for j in 0..d.c {
            let t = d.get(x, j);
            d.set(x, j, d.get(y, j));
            d.set(y, j, t);
        }
        for j in 0..u.n {
            let t = u.get(x, j);
            u.set(x, j, u.get(y, j));
            u.set(y, j, t);
        }
    }
    fn swap_cols(d: &mut Mat, v: &mut IntMat, x: usize, y: usize) {
        for i in 0..d.r {
            let t = d.get(i, x);
            d.set(i, x, d.get(i, y));
            d.set(i, y, t);
        }
        for i in 0..v.n {
            let t = v.get(i, x);
            v.set(i, x, v.get(i, y));
            v.set(i, y, t);
        }
    }

    let steps = r.min(c);
    for t in 0..steps {
        loop {
            // smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = d.get(i, j);
                    if x != 0
                        && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != t {
                swap_rows(&mut d, &mut u, t, pi);
            }
            if pj != t {
                swap_cols(&mut d, &mut v, t, pj);
            }
            let p = d.get(t, t);
            let mut clean = true;
            for i in t + 1..r {
                let x = d.get(i, t);
                if x != 0 {
                    row_op(&mut d, &mut u, i, t, -x.div_euclid(p));
                    if d.get(i, t) != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..c {
                let x = d.get(t, j);
                if x != 0 {
                    col_op(&mut d, &mut v, j, t, -x.div_euclid(p));
                    if d.get(t, j) != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // divisibility fixup: p must divide the rest of the block
            let mut fixed = true;
            'scan: for i in t + 1..r {
                for j in t + 1..c {
                    if d.get(i, j) % p != 0 {
                        row_op(&mut d, &mut u, t, i, 1);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d.get(t, t) < 0 {
            for j in 0..c {
                d.set(t, j, -d.get(t, j));
            }
            for j in 0..u.n {
                u.set(t, j, -u.get(t, j));
            }
        }
    }
    Snf { u, d, v }
}

/// Is `x` in the Z-span of the columns of `basis`?
pub fn lattice_contains(basis: &Mat, x: &[i64]) -> bool {
    assert_eq!(basis.r, x.len());
    let snf = smith(basis);
    let ux = snf.u.matvec(x);
    let steps = basis.r.min(basis.c);
    for i in 0..basis.r {
        let di = if i < steps { snf.d.get(i, i) } else { 0 };
        if di == 0 {
            if ux[i] != 0 {
                return false;
            }
        } else if ux[i] % di != 0 {
            return false;
        }
    }
    true
}

/// Index `[Z^d : L]` for a full-rank sublattice spanned by the columns,
/// or `None` when the span is not of full rank.
pub fn lattice_index(basis: &Mat) -> Option<i64> {
    let snf = smith(basis);
    let steps = basis.r.min(basis.c);
    let mut idx = 1i64;
    for i in 0..basis.r {
        let di = if i < steps { snf.d.get(i, i) } else { 0 };
        if di == 0 {
            return None;
        }
        idx *= di;
    }
    Some(idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), -1);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let e: IntMat = IntMat::identity(0);
        assert_eq!(e.det(), 1);
    }

    #[test]
    fn exterior_traces_match_det_identity() {
        // det(I - g) = sum (-1)^k e_k
        let g = IntMat::from_rows(&[vec![0, -1], vec![1, 0]]);
        let e = g.exterior_traces();
        let alt: i64 = e
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
            .sum();
        let id = IntMat::identity(2);
        assert_eq!(alt, id.sub(&g).det());
    }

    #[test]
    fn smith_properties() {
        let a = Mat::from_cols(&[vec![2, 0], vec![0, 2]]);
        let snf = smith(&a);
        assert_eq!(snf.d.get(0, 0), 2);
        assert_eq!(snf.d.get(1, 1), 2);
        let a = Mat::from_cols(&[vec![1, -1], vec![1, 1]]);
        let snf = smith(&a);
        // U*A*V == D, transforms unimodular
        assert_eq!(snf.u.det().abs(), 1);
        assert_eq!(snf.v.det().abs(), 1);
        assert_eq!(snf.d.get(0, 0), 1);
        assert_eq!(snf.d.get(1, 1), 2);
        // d_1 | d_2
        assert_eq!(snf.d.get(1, 1) % snf.d.get(0, 0), 0);
    }

    #[test]
    fn smith_transform_identity_holds() {
        let cases = vec![
            Mat::from_cols(&[vec![2, 4], vec![6, 8]]),
            Mat::from_cols(&[vec![3, 0, 1], vec![0, 5, 2]]),
            Mat::from_cols(&[vec![1, -1, 0], vec![1, 1, -2], vec![0, 3, 3]]),
        ];
        for a in cases {
            let snf = smith(&a);
            // compute u*a*v entrywise
            let (r, c) = (a.r, a.c);
            let mut ua = Mat::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    let mut s = 0;
                    for k in 0..r {
                        s += snf.u.get(i, k) * a.get(k, j);
                    }
                    ua.set(i, j, s);
                }
            }
            let mut uav = Mat::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    let mut s = 0;
                    for k in 0..c {
                        s += ua.get(i, k) * snf.v.get(k, j);
                    }
                    uav.set(i, j, s);
                }
            }
            assert_eq!(uav, snf.d);
            for i in 0..r.min(c) {
                assert!(snf.d.get(i, i) >= 0);
                if i + 1 < r.min(c) && snf.d.get(i, i) != 0 {
                    assert_eq!(snf.d.get(i + 1, i + 1) % snf.d.get(i, i), 0);
                }
            }
        }
    }

    #[test]
    fn lattice_membership_and_index() {
        // Z-span of (1,-1),(0,1) is all of Z^2
        let b = Mat::from_cols(&[vec![1, -1], vec![0, 1]]);
        assert!(lattice_contains(&b, &[5, 7]));
        assert_eq!(lattice_index(&b), Some(1));
        // 2Z x 2Z
        let b = Mat::from_cols(&[vec![2, 0], vec![0, 2]]);
        assert!(!lattice_contains(&b, &[1, 0]));
        assert!(lattice_contains(&b, &[-2, 4]));
        assert_eq!(lattice_index(&b), Some(4));
        // rank-deficient
        let b = Mat::from_cols(&[vec![1, 1]]);
        assert_eq!(lattice_index(&b), None);
        assert!(lattice_contains(&b, &[3, 3]));
        assert!(!lattice_contains(&b, &[1, 2]));
    }
}
