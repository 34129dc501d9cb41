//! Deterministic SVG renderer for rank-2 data: the hyperplane arrangement
//! of Σ in a window, with optional shaded cell overlays. All coordinates
//! are derived from exact rationals by integer arithmetic; no floats.

use alcove_core::chains::{Complex, Polysimplex};
use alcove_core::exact::{dot_iq, q_ceil_i64, q_floor_i64, qi, Q, QVec};


const SCALE: i64 = 120;
const PRECISION: i64 = 100;

/// Fixed-point decimal rendering of `q * SCALE`, two digits.
fn coord(q: &Q) -> String {
    let scaled = q * qi(SCALE * PRECISION);
    let int = scaled.floor().to_integer();
    let int: i64 = i64::try_from(int).expect("svg coordinate out of range");
    let whole = int.div_euclid(PRECISION);
    let frac = int.rem_euclid(PRECISION);
    format!("{whole}.{frac:02}")
}

struct Frame {
    lo: i64,
    hi: i64,
}

impl Frame {
    fn x(&self, v: &Q) -> String {
        coord(&(v - qi(self.lo)))
    }
    fn y(&self, v: &Q) -> String {
        coord(&(qi(self.hi) - v))
    }
}

/// Render Σ for a rank-2 datum in the square window `[lo,hi]²`.
/// `shaded` cells are filled (2-cells), stroked (1-cells) or dotted
/// (0-cells) in highlight color.
pub fn render_sigma(
    cx: &Complex,
    lo: i64,
    hi: i64,
    shaded: &[Polysimplex],
) -> Result<String, String> {
    if cx.rank() != 2 {
        return Err(format!("viz requires rank 2, got {}", cx.rank()));
    }
    let frame = Frame { lo, hi };
    let side = coord(&qi(hi - lo));
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{side}\" height=\"{side}\" \
         viewBox=\"0 0 {side} {side}\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{side}\" height=\"{side}\" fill=\"#ffffff\"/>\n"
    ));

    // overlays first, lines on top
    for cell in shaded {
        let mut verts = cx.vertices(cell);
        verts.sort();
        match cx.dim(cell) {
            2 => {
                let ordered = convex_order(&verts);
                let pts: Vec<String> = ordered
                    .iter()
                    .map(|v| format!("{},{}", frame.x(&v[0]), frame.y(&v[1])))
                    .collect();
                svg.push_str(&format!(
                    "<polygon points=\"{}\" fill=\"#b3d4ff\" stroke=\"none\"/>\n",
                    pts.join(" ")
                ));
            }
            1 => {
                svg.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#d62728\" stroke-width=\"3\"/>\n",
                    frame.x(&verts[0][0]),
                    frame.y(&verts[0][1]),
                    frame.x(&verts[1][0]),
                    frame.y(&verts[1][1]),
                ));
            }
            _ => {
                svg.push_str(&format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#d62728\"/>\n",
                    frame.x(&verts[0][0]),
                    frame.y(&verts[0][1]),
                ));
            }
        }
    }

    // one line bundle per positive root
    let corners: Vec<QVec> = [(lo, lo), (lo, hi), (hi, lo), (hi, hi)]
        .iter()
        .map(|&(a, b)| vec![qi(a), qi(b)])
        .collect();
    for coroot in &cx.positive_coroots {
        let vals: Vec<Q> = corners.iter().map(|c| dot_iq(c, coroot)).collect();
        let kmin = vals.iter().map(q_floor_i64).min().unwrap();
        let kmax = vals.iter().map(q_ceil_i64).max().unwrap();
        for k in kmin..=kmax {
            if let Some(((x1, y1), (x2, y2))) = clip_line(coroot, k, lo, hi) {
                svg.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#555555\" stroke-width=\"1\"/>\n",
                    frame.x(&x1),
                    frame.y(&y1),
                    frame.x(&x2),
                    frame.y(&y2),
                ));
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Intersect `⟨p, coroot⟩ = k` with the window box; exact endpoints.
fn clip_line(coroot: &[i64], k: i64, lo: i64, hi: i64) -> Option<((Q, Q), (Q, Q))> {
    let mut pts: Vec<(Q, Q)> = Vec::new();
    let (a, b) = (coroot[0], coroot[1]);
    let push_unique = |pts: &mut Vec<(Q, Q)>, p: (Q, Q)| {
        if !pts.contains(&p) {
            pts.push(p);
        }
    };
    // vertical box edges x = lo, x = hi
    if b != 0 {
        for x in [lo, hi] {
            let y = (qi(k) - qi(a * x)) / qi(b);
            if y >= qi(lo) && y <= qi(hi) {
                push_unique(&mut pts, (qi(x), y));
            }
        }
    }
    // horizontal box edges y = lo, y = hi
    if a != 0 {
        for y in [lo, hi] {
            let x = (qi(k) - qi(b * y)) / qi(a);
            if x >= qi(lo) && x <= qi(hi) {
                push_unique(&mut pts, (x, qi(y)));
            }
        }
    }
    if pts.len() >= 2 {
        pts.sort();
        Some((pts[0].clone(), pts[pts.len() - 1].clone()))
    } else {
        None
    }
}

/// Order the vertices of a convex 2-cell counterclockwise around the
/// barycenter, by exact quadrant-and-cross-product comparison.
fn convex_order(verts: &[QVec]) -> Vec<QVec> {
    let n = qi(verts.len() as i64);
    let cx: Q = verts.iter().map(|v| v[0].clone()).sum::<Q>() / n.clone();
    let cy: Q = verts.iter().map(|v| v[1].clone()).sum::<Q>() / n;
    let quadrant = |dx: &Q, dy: &Q| -> u8 {
        match (dx >= &qi(0), dy >= &qi(0)) {
            (true, true) => 0,
            (false, true) => 1,
            (false, false) => 2,
            (true, false) => 3,
        }
    };
    let mut out: Vec<QVec> = verts.to_vec();
    out.sort_by(|p, q| {
        let (pdx, pdy) = (&p[0] - &cx, &p[1] - &cy);
        let (qdx, qdy) = (&q[0] - &cx, &q[1] - &cy);
        let qa = quadrant(&pdx, &pdy);
        let qb = quadrant(&qdx, &qdy);
        if qa != qb {
            return qa.cmp(&qb);
        }
        // cross product sign: positive means p before q (counterclockwise)
        let cross = &pdx * &qdy - &pdy * &qdx;
        cross.cmp(&qi(0)).reverse()
    });
    out
}
