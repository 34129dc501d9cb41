//! Embedded expected values for the B2 worked example and the report
//! command that checks every one of them against a fresh computation.

use std::io::Write;

use alcove_core::chains::Complex;
use alcove_core::contraction::{b2_paper_pins, Contraction};
use alcove_core::elliptic::{
    counting_identity, e_pair, e_pair_hom, elliptic_classes_affine, ep_pair_measure,
    normalize_classes_to_alcove, total_measure, LatticeGroup, VirtualWChar,
};
use alcove_core::exact::{fmt_q, fmt_qvec, qi, qr, Q};
use alcove_core::finitegroup::TorsionChar;
use alcove_core::rootdata::BasedRootDatum;

use crate::names::{character_names, element_name};
use crate::output::csv_row;

/// The 5×5 elliptic pairing table on `eps0..eps3, E`.
pub const E_TABLE: [[i64; 5]; 5] = [
    [1, 0, 0, 1, -1],
    [0, 1, 1, 0, -1],
    [0, 1, 1, 0, -1],
    [1, 0, 0, 1, -1],
    [-1, -1, -1, -1, 2],
];

/// Elliptic classes of `W(B2) ⋉ Z²`: fixed point, class name, measure.
pub const MEASURE_TABLE: [(&str, &str, (i64, i64)); 5] = [
    ("(0,0)", "rho_pi", (1, 8)),
    ("(0,0)", "rho_pi/2", (1, 4)),
    ("(1/2,0)", "t_(1,0) rho_pi", (1, 4)),
    ("(1/2,1/2)", "t_(1,1) rho_pi", (1, 8)),
    ("(1/2,1/2)", "t_(1,0) rho_pi/2", (1, 4)),
];

/// Torsion orbit representatives and elliptic-space dimensions.
pub const DIM_TABLE: [(&str, usize); 3] = [("0,0", 2), ("1/2,0", 1), ("1/2,1/2", 2)];

/// Run every golden comparison for B2, emitting the three tables as CSV.
/// Returns true iff everything matches.
pub fn report_b2(out: &mut dyn Write) -> std::io::Result<bool> {
    let mut ok = true;
    let mut check = |out: &mut dyn Write, label: &str, pass: bool| -> std::io::Result<()> {
        writeln!(out, "# check {}: {}", label, if pass { "ok" } else { "FAIL" })?;
        if !pass {
            ok = false;
        }
        Ok(())
    };

    let datum = BasedRootDatum::preset("B2", "standard").expect("preset");
    let l = LatticeGroup::from_datum(&datum).expect("weyl group");
    let table = l.gamma.character_table().expect("character table");
    let names = character_names(&l.gamma, &table);

    // --- table 1: elliptic pairing -----------------------------------
    writeln!(out, "# table e_W0 (both computation routes)")?;
    let order = ["eps0", "eps1", "eps2", "eps3", "E"];
    let row_of = |n: &str| names.iter().position(|m| m == n).expect("named row");
    let mut header = vec!["e_W0".to_string()];
    header.extend(order.iter().map(|s| s.to_string()));
    writeln!(out, "{}", csv_row(&header))?;
    let mut pairing_ok = true;
    for (i, ri) in order.iter().enumerate() {
        let mut cells = vec![ri.to_string()];
        for (j, rj) in order.iter().enumerate() {
            let a = &table.rows[row_of(ri)];
            let b = &table.rows[row_of(rj)];
            let closed = e_pair(&l.gamma, a, b).expect("rational");
            let hom = e_pair_hom(&l.gamma, a, b).expect("rational");
            if closed != hom || closed != qi(E_TABLE[i][j]) {
                pairing_ok = false;
            }
            cells.push(fmt_q(&closed));
        }
        writeln!(out, "{}", csv_row(&cells))?;
    }
    check(out, "e_W0 table (25 entries, two routes)", pairing_ok)?;

    // --- table 2: elliptic measure -----------------------------------
    writeln!(out, "# table elliptic measure")?;
    writeln!(out, "{}", csv_row(&["vertex", "class", "measure"]))?;
    let cx = Complex::new(&datum).expect("complex");
    let mut classes = elliptic_classes_affine(&l).expect("classes");
    normalize_classes_to_alcove(&cx, &l, &mut classes).expect("normalize");
    let mut measure_ok = classes.len() == MEASURE_TABLE.len();
    let mut printed: Vec<(String, String, Q)> = Vec::new();
    for c in &classes {
        let name = if c.rep.x.iter().all(|&v| v == 0) {
            element_name(&c.rep.u)
        } else {
            format!("t_({},{}) {}", c.rep.x[0], c.rep.x[1], element_name(&c.rep.u))
        };
        printed.push((fmt_qvec(&c.fixed_point), name, c.measure.clone()));
    }
    for (vertex, class, (n, d)) in MEASURE_TABLE {
        let hit = printed
            .iter()
            .any(|(v, c, m)| v == vertex && c == class && *m == qr(n, d));
        if !hit {
            measure_ok = false;
        }
    }
    for (v, c, m) in &printed {
        writeln!(out, "{}", csv_row(&[v.clone(), c.clone(), fmt_q(m)]))?;
    }
    check(out, "elliptic measure table (5 classes)", measure_ok)?;
    let total = total_measure(&l, &classes).expect("totals agree");
    check(out, "total elliptic measure = 1", total == qi(1))?;

    // --- table 3: dim Ell decomposition ------------------------------
    writeln!(out, "# table dim Ell by central character orbit")?;
    writeln!(out, "{}", csv_row(&["t", "dim"]))?;
    let counting = counting_identity(&l).expect("counting");
    let mut dim_ok =
        counting.lhs == 5 && counting.rhs == 5 && counting.parts.len() == 3;
    for (t, dim) in &counting.parts {
        writeln!(out, "{}", csv_row(&[t.fmt(), dim.to_string()]))?;
        if !DIM_TABLE.iter().any(|(ts, d)| *ts == t.fmt() && d == dim) {
            dim_ok = false;
        }
    }
    check(out, "dim Ell(W) = 5 = 2 + 2 + 1", dim_ok)?;

    // --- pinned contraction chains ------------------------------------
    let config = b2_paper_pins(&cx).expect("pins");
    let pin_count = config.pins.len();
    let built = Contraction::build(&cx, &config);
    check(
        out,
        &format!("{pin_count} pinned contraction chains valid"),
        built.is_ok(),
    )?;
    if let Ok(con) = built {
        // γ[(1/2,0),(1/2,1/2)] is exactly the fundamental alcove
        let (edge, sign) = cx
            .cell_from_vertex_tuple(&[
                vec![qr(1, 2), qi(0)],
                vec![qr(1, 2), qr(1, 2)],
            ])
            .expect("edge");
        let g = con.gamma(&edge).expect("gamma").scale(&qi(sign));
        let alcove = cx.alcove_cell(&alcove_core::affine::AffineElement::identity(2));
        let is_alcove = g.terms.len() == 1 && g.terms.get(&alcove) == Some(&qi(1));
        check(out, "gamma of the alcove wall is the alcove", is_alcove)?;
    }

    // --- Steinberg shadow on A1 ---------------------------------------
    let a1 = BasedRootDatum::preset("A1", "standard").expect("preset");
    let la1 = LatticeGroup::from_datum(&a1).expect("lattice group");
    let cls = elliptic_classes_affine(&la1).expect("classes");
    let t0 = TorsionChar::trivial(1);
    let sgn = VirtualWChar::single(&la1, t0.clone(), la1.gamma.det_character())
        .expect("sgn");
    let triv = VirtualWChar::single(&la1, t0, la1.gamma.trivial_character())
        .expect("triv");
    let ep_ss = ep_pair_measure(&la1, &cls, &sgn, &sgn).expect("ep").value;
    let ep_st = ep_pair_measure(&la1, &cls, &sgn, &triv).expect("ep").value;
    check(out, "EP(sgn,sgn) = 1 on the infinite dihedral group", ep_ss == qi(1))?;
    check(out, "EP(sgn,triv) = -1 on the infinite dihedral group", ep_st == qi(-1))?;

    if ok {
        writeln!(out, "ALL GOLDEN CHECKS PASS")?;
    } else {
        writeln!(out, "GOLDEN CHECKS FAILED")?;
    }
    Ok(ok)
}
