//! Canonical display names for group elements and characters.

use alcove_core::cyclotomic::Cyc;
use alcove_core::finitegroup::{CharacterTable, MatrixGroup};
use alcove_core::intmat::IntMat;

/// Names for the eight elements of the B2 Weyl group (dihedral of order 8).
pub fn b2_element_name(m: &IntMat) -> Option<&'static str> {
    let table: [(&[i64; 4], &str); 8] = [
        (&[1, 0, 0, 1], "e"),
        (&[0, 1, 1, 0], "s1"),
        (&[1, 0, 0, -1], "s2"),
        (&[-1, 0, 0, 1], "s3"),
        (&[0, -1, -1, 0], "s4"),
        (&[0, -1, 1, 0], "rho_pi/2"),
        (&[-1, 0, 0, -1], "rho_pi"),
        (&[0, 1, -1, 0], "rho_-pi/2"),
    ];
    table.iter().find(|(a, _)| m.a == a.to_vec()).map(|(_, n)| *n)
}

pub fn element_name(m: &IntMat) -> String {
    if m.n == 2 {
        if let Some(n) = b2_element_name(m) {
            return n.to_string();
        }
    }
    if m.is_identity() {
        return "e".to_string();
    }
    format!("{:?}", m.a)
}

/// Label the irreducible characters of a group. For the B2 Weyl group the
/// four linear characters are `eps0..eps3` keyed by their values on the
/// two simple reflections, and the reflection character is `E`; everywhere
/// else rows are `irr0..irrN` by table order.
pub fn character_names(g: &MatrixGroup, table: &CharacterTable) -> Vec<String> {
    if g.dim == 2 && g.order() == 8 {
        let s1 = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        let s2 = IntMat::from_rows(&[vec![1, 0], vec![0, -1]]);
        if let (Some(i1), Some(i2)) = (g.index_of(&s1), g.index_of(&s2)) {
            let c1 = g.class_of[i1];
            let c2 = g.class_of[i2];
            let mut names = Vec::with_capacity(table.rows.len());
            for (row, &deg) in table.rows.iter().zip(table.degrees.iter()) {
                if deg == 2 {
                    names.push("E".to_string());
                    continue;
                }
                let v1 = row.values[c1].eq(&Cyc::one());
                let v2 = row.values[c2].eq(&Cyc::one());
                names.push(
                    match (v1, v2) {
                        (true, true) => "eps0",
                        (false, true) => "eps1",
                        (true, false) => "eps2",
                        (false, false) => "eps3",
                    }
                    .to_string(),
                );
            }
            return names;
        }
    }
    (0..table.rows.len()).map(|i| format!("irr{i}")).collect()
}

/// Resolve a character name against a table: named B2 rows, `irrK`,
/// `triv`, or `det`/`sgn`.
pub fn resolve_character(
    g: &MatrixGroup,
    table: &CharacterTable,
    name: &str,
) -> Result<alcove_core::finitegroup::ClassFunction, String> {
    let names = character_names(g, table);
    if let Some(pos) = names.iter().position(|n| n == name) {
        return Ok(table.rows[pos].clone());
    }
    match name {
        "triv" | "trivial" => Ok(g.trivial_character()),
        "det" | "sgn" | "sign" => Ok(g.det_character()),
        _ => {
            if let Some(k) = name.strip_prefix("irr") {
                let k: usize = k.parse().map_err(|_| format!("bad index in `{name}`"))?;
                if k < table.rows.len() {
                    return Ok(table.rows[k].clone());
                }
            }
            Err(format!(
                "unknown character `{name}` (have: {}, plus triv/det/irrK)",
                names.join(", ")
            ))
        }
    }
}
