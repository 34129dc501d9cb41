//! Command-line front end: datum loading, exact reports, golden
//! verification, and figure output. Every command is deterministic and
//! emits numbers as exact `p/q` strings or cyclotomic coefficient sums.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use alcove_core::affine::AffineElement;
use alcove_core::chains::{augmented_homology_dims, Complex};
use alcove_core::contraction::{
    b2_paper_pins, scaled_region, Contraction, ContractionConfig,
};
use alcove_core::elliptic::{
    alternating_invariant_dimension, count_translation_cosets, ell_dim_finite,
    ell_dim_oracle, elliptic_classes_affine, ep_pair_facets, ep_pair_measure,
    normalize_classes_to_alcove, LatticeGroup, VirtualWChar,
};
use alcove_core::exact::{fmt_q, fmt_qvec, parse_q, qi};
use alcove_core::finitegroup::TorsionChar;

pub mod datum;
pub mod golden;
pub mod names;
pub mod output;
pub mod svg;

use output::{affine_element_json, chain_json, csv_row};

#[derive(Parser)]
#[command(name = "alcove", version, about = "exact alcove combinatorics toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DatumArg {
    /// Preset (`B2`, `A2:root`, `A1`, `A1xA1`, `G2`) or `@file.json`.
    #[arg(long)]
    datum: String,
}

#[derive(Subcommand)]
enum Command {
    /// Root datum utilities.
    Datum {
        #[command(subcommand)]
        sub: DatumCmd,
    },
    /// Finite Weyl group reports.
    Weyl {
        #[command(subcommand)]
        sub: WeylCmd,
    },
    /// Affine Weyl group computations.
    Affine {
        #[command(subcommand)]
        sub: AffineCmd,
    },
    /// Chain complex checks.
    Chains {
        #[command(subcommand)]
        sub: ChainsCmd,
    },
    /// Chain contraction: build and verify.
    Contract {
        #[command(subcommand)]
        sub: ContractCmd,
    },
    /// Elliptic classes, dimensions, and measures.
    Ell {
        #[command(subcommand)]
        sub: EllCmd,
    },
    /// Euler–Poincaré pairing.
    Ep {
        #[command(subcommand)]
        sub: EpCmd,
    },
    /// Golden-value reports.
    Report {
        /// Report name; `b2` is the full worked example.
        name: String,
    },
    /// Figure output.
    Viz {
        #[command(subcommand)]
        sub: VizCmd,
    },
}

#[derive(Subcommand)]
enum DatumCmd {
    /// Emit a preset datum as JSON.
    Preset {
        #[arg(long)]
        name: String,
        #[arg(long, default_value = "standard")]
        lattice: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Validate a datum; lists violated invariants.
    Validate(DatumArg),
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Conjugacy classes as CSV.
    Classes(DatumArg),
    /// Exact character table as CSV.
    Chartable(DatumArg),
}

#[derive(Subcommand)]
enum AffineCmd {
    /// Length of a word in the affine generators, all four methods.
    Length {
        #[command(flatten)]
        datum: DatumArg,
        /// Comma-separated generators, e.g. `s1,s2,s0`.
        #[arg(long)]
        word: String,
    },
    /// Exhaustively compare the four length computations up to a bound.
    VerifyLemma21 {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 6)]
        maxlen: i64,
    },
    /// Exhaustively compare regions of alcoves with weak-order ideals.
    VerifyLemma22 {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 5)]
        maxlen: i64,
    },
}

#[derive(Subcommand)]
enum ChainsCmd {
    /// Check ∂∘∂ = 0 and acyclicity on a scaled region.
    Verify {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 2)]
        scale: i64,
    },
}

#[derive(Subcommand)]
enum ContractCmd {
    /// Build the contraction base table.
    Build {
        #[command(flatten)]
        datum: DatumArg,
        /// `paper` (B2 only) or `none`.
        #[arg(long, default_value = "none")]
        pins: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Verify the contraction identities on a region.
    Verify {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value = "none")]
        pins: String,
        /// Region size, e.g. `m=4`.
        #[arg(long, default_value = "m=2")]
        region: String,
    },
}

#[derive(Subcommand)]
enum EllCmd {
    /// Elliptic data of the finite Weyl group.
    Finite(DatumArg),
    /// Elliptic conjugacy classes of `W₀ ⋉ X` as JSON.
    Affine(DatumArg),
    /// Elliptic measures plus the bookkeeping identities.
    Measure(DatumArg),
}

#[derive(Subcommand)]
enum EpCmd {
    /// Pair two induced characters, e.g. `--u "t=0,0;chi=eps0"`.
    Pair {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// `measure`, `facets`, or `both`.
        #[arg(long, default_value = "both")]
        method: String,
    },
}

#[derive(Subcommand)]
enum VizCmd {
    /// Draw Σ for a rank-2 datum.
    Sigma {
        #[command(flatten)]
        datum: DatumArg,
        /// Window `lo:hi` on both axes.
        #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
        window: String,
        /// Optional overlay: `region:m=2` or `gamma-edge:x1,y1;x2,y2`.
        #[arg(long)]
        overlay: Option<String>,
        #[arg(long)]
        out: String,
    },
}

/// Entry point; returns the process exit code (0 ok, 1 verification
/// failure, 2 usage error).
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return 2;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            2
        }
    }
}

fn group_cap() -> usize {
    std::env::var("ALCOVE_EP_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(alcove_core::DEFAULT_GROUP_CAP)
}

fn weyl_group(
    datum: &alcove_core::rootdata::BasedRootDatum,
) -> Result<alcove_core::finitegroup::MatrixGroup, String> {
    let gens = datum.simple_reflection_matrices();
    alcove_core::finitegroup::MatrixGroup::generate(datum.rank, &gens, group_cap())
        .map_err(|e| e.to_string())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| format!("io: {e}");
    match cli.command {
        Command::Datum { sub } => match sub {
            DatumCmd::Preset { name, lattice, out: path } => {
                let d = alcove_core::rootdata::BasedRootDatum::preset(&name, &lattice)
                    .map_err(|e| e.to_string())?;
                let json = serde_json::to_string_pretty(&datum::datum_to_json(&d))
                    .map_err(|e| e.to_string())?;
                match path {
                    Some(p) => std::fs::write(&p, json + "\n").map_err(io)?,
                    None => writeln!(out, "{json}").map_err(io)?,
                }
                Ok(0)
            }
            DatumCmd::Validate(arg) => {
                let d = datum::load(&arg.datum)?;
                let report = d.validate();
                let json = serde_json::json!({
                    "name": d.name,
                    "valid": report.is_empty(),
                    "violations": report,
                    "semisimple": d.is_semisimple(),
                });
                writeln!(out, "{json}").map_err(io)?;
                Ok(if d.validate().is_empty() { 0 } else { 1 })
            }
        },
        Command::Weyl { sub } => match sub {
            WeylCmd::Classes(arg) => {
                let d = datum::load(&arg.datum)?;
                let g = weyl_group(&d)?;
                writeln!(
                    out,
                    "{}",
                    csv_row(&["class", "size", "order", "centralizer", "representative"])
                )
                .map_err(io)?;
                for (i, c) in g.classes.iter().enumerate() {
                    writeln!(
                        out,
                        "{}",
                        csv_row(&[
                            i.to_string(),
                            c.members.len().to_string(),
                            g.element_order(c.rep).to_string(),
                            c.centralizer_order.to_string(),
                            names::element_name(&g.elems[c.rep]),
                        ])
                    )
                    .map_err(io)?;
                }
                Ok(0)
            }
            WeylCmd::Chartable(arg) => {
                let d = datum::load(&arg.datum)?;
                let g = weyl_group(&d)?;
                let table = g.character_table().map_err(|e| e.to_string())?;
                let rownames = names::character_names(&g, &table);
                let mut header = vec!["irrep".to_string()];
                for (i, c) in g.classes.iter().enumerate() {
                    header.push(format!(
                        "{}(x{})",
                        names::element_name(&g.elems[c.rep]),
                        c.members.len()
                    ));
                    let _ = i;
                }
                writeln!(out, "{}", csv_row(&header)).map_err(io)?;
                for (name, row) in rownames.iter().zip(table.rows.iter()) {
                    let mut cells = vec![name.clone()];
                    cells.extend(row.values.iter().map(|v| v.to_string()));
                    writeln!(out, "{}", csv_row(&cells)).map_err(io)?;
                }
                Ok(0)
            }
        },
        Command::Affine { sub } => match sub {
            AffineCmd::Length { datum: arg, word } => {
                let d = datum::load(&arg.datum)?;
                let sys =
                    alcove_core::affine::AffineSystem::new(&d).map_err(|e| e.to_string())?;
                let cx = Complex::new(&d).map_err(|e| e.to_string())?;
                let bary = cx.facets.facets[cx.facets.alcove].barycenter();
                let mut w = AffineElement::identity(d.rank);
                for token in word.split(',') {
                    let token = token.trim();
                    let idx = sys
                        .generator_names
                        .iter()
                        .position(|n| n == token)
                        .ok_or_else(|| {
                            format!(
                                "unknown generator `{token}` (have {})",
                                sys.generator_names.join(",")
                            )
                        })?;
                    w = w.mul(&sys.generators[idx]);
                }
                let word_len = sys
                    .length_word(&w)
                    .map(|l| l.to_string())
                    .unwrap_or_else(|_| "undefined (not in W^aff)".to_string());
                let json = serde_json::json!({
                    "word": word,
                    "roots": sys.length_roots(&w),
                    "hyperplanes": sys.length_hyperplanes(&w, &bary),
                    "gallery": sys.length_gallery(&w, &bary),
                    "word_method": word_len,
                });
                writeln!(out, "{json}").map_err(io)?;
                Ok(0)
            }
            AffineCmd::VerifyLemma21 { datum: arg, maxlen } => {
                let d = datum::load(&arg.datum)?;
                let sys =
                    alcove_core::affine::AffineSystem::new(&d).map_err(|e| e.to_string())?;
                let cx = Complex::new(&d).map_err(|e| e.to_string())?;
                let bary = cx.facets.facets[cx.facets.alcove].barycenter();
                let mut failures: Vec<String> = Vec::new();
                let ball = sys.ball(maxlen);
                for w in &ball {
                    let l = sys.length(w);
                    let ok = sys.length_roots(w) == l
                        && sys.length_hyperplanes(w, &bary) == l
                        && sys.length_gallery(w, &bary) == l
                        && sys.length_word(w).map(|x| x == l).unwrap_or(false);
                    if !ok {
                        failures.push(format!("{w:?}"));
                    }
                }
                let json = serde_json::json!({
                    "checked": ball.len(),
                    "failures": failures,
                });
                writeln!(out, "{json}").map_err(io)?;
                Ok(if failures.is_empty() { 0 } else { 1 })
            }
            AffineCmd::VerifyLemma22 { datum: arg, maxlen } => {
                let d = datum::load(&arg.datum)?;
                let cx = Complex::new(&d).map_err(|e| e.to_string())?;
                let mut failures: Vec<String> = Vec::new();
                let ball = cx.sys.ball(maxlen);
                for w in &ball {
                    let cell = cx.alcove_cell(w);
                    let region = cx.region_of_cells(&[cell]);
                    let mut got: Vec<AffineElement> = cx
                        .alcoves_in_region(&region)
                        .into_iter()
                        .map(|c| c.rep)
                        .collect();
                    got.sort();
                    let mut expected: Vec<AffineElement> = ball
                        .iter()
                        .filter(|u| cx.sys.le_a(u, w))
                        .cloned()
                        .collect();
                    expected.sort();
                    if got != expected {
                        failures.push(format!("{w:?}"));
                    }
                }
                let json = serde_json::json!({
                    "checked": ball.len(),
                    "failures": failures,
                });
                writeln!(out, "{json}").map_err(io)?;
                Ok(if failures.is_empty() { 0 } else { 1 })
            }
        },
        Command::Chains { sub } => match sub {
            ChainsCmd::Verify { datum: arg, scale } => {
                let d = datum::load(&arg.datum)?;
                let cx = Complex::new(&d).map_err(|e| e.to_string())?;
                let beta =
                    alcove_core::contraction::base_vectors(&d).map_err(|e| e.to_string())?;
                let region = scaled_region(&cx, &beta, scale);
                let mut dd_ok = true;
                let mut count = 0usize;
                for dim in 1..=cx.rank() {
                    for cell in cx.cells_in_region(&region, dim) {
                        count += 1;
                        if !cx.boundary(&cx.boundary_cell(&cell)).is_zero() {
                            dd_ok = false;
                        }
                    }
                }
                let homology = augmented_homology_dims(&cx, &region);
                let acyclic = homology.iter().all(|(_, dim)| *dim == 0);
                let json = serde_json::json!({
                    "cells_checked": count,
                    "boundary_squared_zero": dd_ok,
                    "homology": homology
                        .iter()
                        .map(|(d, k)| serde_json::json!([d, k]))
                        .collect::<Vec<_>>(),
                    "acyclic": acyclic,
                });
                writeln!(out, "{json}").map_err(io)?;
                Ok(if dd_ok && acyclic { 0 } else { 1 })
            }
        },
        Command::Contract { sub } => match sub {
            ContractCmd::Build { datum: arg, pins, out: path } => {
                let d = datum::load(&arg.datum)?;
                let cx = Complex::new(&d).map_err(|e| e.to_string())?;
                let config = contraction_config(&cx, &pins)?;
                let con = Contraction::build(&cx, &config).map_err(|e| e.to_string())?;
                let rows: Vec<Value> = con
                    .base_table()
                    .iter()
                    .map(|(cell, chain)| {
                        serde_json::json!({
                            "facet": cell.facet,
                            "rep": affine_element_json(&cell.rep),
                            "gamma": chain_json(chain),
                        })
                    })
                    .collect();
                let json = serde_json::json!({
                    "datum": d.name,
                    "pins": pins,
                    "base_cells": rows.len(),
                    "base_max_coeff": fmt_q(&con.base_max_coeff),
                    "table": rows,
                });
                let text =
                    serde_json::to_string_pretty(&json).map_err(|e| e.to_string())?;
                match path {
                    Some(p) => std::fs::write(&p, text + "\n").map_err(io)?,
                    None => writeln!(out, "{text}").map_err(io)?,
                }
                Ok(0)
            }
            ContractCmd::Verify { datum: arg, pins, region } => {
                let d = datum::load(&arg.datum)?;
                let cx = Complex::new(&d).map_err(|e| e.to_string())?;
                let config = contraction_config(&cx, &pins)?;
                let con = Contraction::build(&cx, &config).map_err(|e| e.to_string())?;
                let m: i64 = region
                    .strip_prefix("m=")
                    .and_then(|s| s.parse().ok())
                    .ok_or("region must look like `m=4`")?;
                let reg = scaled_region(&cx, &con.beta, m);
                let dims: Vec<usize> = (0..=cx.rank()).collect();
                let report = con.verify(&reg, &dims).map_err(|e| e.to_string())?;
                let bound_ok =
                    report.max_coeff <= qi(3) * report.base_max_coeff.clone();
                let json = serde_json::json!({
                    "datum": d.name,
                    "region": region,
                    "cells_checked": report.cells_checked,
                    "identity_ok": report.identity_ok,
                    "support_ok": report.support_ok,
                    "equivariance_ok": report.equivariance_ok,
                    "max_coeff": fmt_q(&report.max_coeff),
                    "base_max_coeff": fmt_q(&report.base_max_coeff),
                    "coefficient_bound_ok": bound_ok,
                    "failures": report.failures,
                });
                writeln!(out, "{json}").map_err(io)?;
                let ok = report.identity_ok
                    && report.support_ok
                    && report.equivariance_ok
                    && bound_ok;
                Ok(if ok { 0 } else { 1 })
            }
        },
        Command::Ell { sub } => match sub {
            EllCmd::Finite(arg) => {
                let d = datum::load(&arg.datum)?;
                let g = weyl_group(&d)?;
                let finite = ell_dim_finite(&g);
                let oracle = ell_dim_oracle(&g).map_err(|e| e.to_string())?;
                let json = serde_json::json!({
                    "group_order": g.order(),
                    "conjugacy_classes": g.classes.len(),
                    "elliptic_classes": finite,
                    "dim_ell": finite,
                    "dim_ell_oracle": oracle,
                    "agree": finite == oracle,
                });
                writeln!(out, "{json}").map_err(io)?;
                Ok(if finite == oracle { 0 } else { 1 })
            }
            EllCmd::Affine(arg) => {
                let d = datum::load(&arg.datum)?;
                let l = LatticeGroup::from_datum(&d).map_err(|e| e.to_string())?;
                let mut classes =
                    elliptic_classes_affine(&l).map_err(|e| e.to_string())?;
                if d.is_semisimple() {
                    let cx = Complex::new(&d).map_err(|e| e.to_string())?;
                    normalize_classes_to_alcove(&cx, &l, &mut classes)
                        .map_err(|e| e.to_string())?;
                }
                let rows: Vec<Value> = classes
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "representative": affine_element_json(&c.rep),
                            "linear_name": names::element_name(&c.rep.u),
                            "fixpoint": fmt_qvec(&c.fixed_point),
                            "coinvariant_order": c.coinvariant_order,
                            "measure": fmt_q(&c.measure),
                        })
                    })
                    .collect();
                let json = serde_json::json!({
                    "datum": d.name,
                    "count": classes.len(),
                    "classes": rows,
                });
                writeln!(out, "{json}").map_err(io)?;
                Ok(0)
            }
            EllCmd::Measure(arg) => {
                let d = datum::load(&arg.datum)?;
                let l = LatticeGroup::from_datum(&d).map_err(|e| e.to_string())?;
                let classes = elliptic_classes_affine(&l).map_err(|e| e.to_string())?;
                let total: alcove_core::exact::Q =
                    classes.iter().map(|c| c.measure.clone()).sum();
                let alt =
                    alternating_invariant_dimension(&l.gamma).map_err(|e| e.to_string())?;
                // μ(L_c) = 1/|Γ| bookkeeping: per class, n_C / |Γ| = μ(C)
                let mut lc_ok = true;
                let mut rows = Vec::new();
                for c in &classes {
                    let n_c =
                        count_translation_cosets(&l, c).map_err(|e| e.to_string())?;
                    let expect = qi(n_c) / qi(l.gamma.order() as i64);
                    if expect != c.measure {
                        lc_ok = false;
                    }
                    rows.push(serde_json::json!({
                        "fixpoint": fmt_qvec(&c.fixed_point),
                        "measure": fmt_q(&c.measure),
                        "translation_cosets": n_c,
                    }));
                }
                let json = serde_json::json!({
                    "datum": d.name,
                    "classes": rows,
                    "total_measure": fmt_q(&total),
                    "alternating_invariant_dim": fmt_q(&alt),
                    "total_matches_invariants": total == alt,
                    "coset_bookkeeping_ok": lc_ok,
                });
                writeln!(out, "{json}").map_err(io)?;
                Ok(if total == alt && lc_ok { 0 } else { 1 })
            }
        },
        Command::Ep { sub } => match sub {
            EpCmd::Pair { datum: arg, u, v, method } => {
                let d = datum::load(&arg.datum)?;
                let l = LatticeGroup::from_datum(&d).map_err(|e| e.to_string())?;
                let uchar = parse_virtual_char(&l, &u)?;
                let vchar = parse_virtual_char(&l, &v)?;
                let mut json = serde_json::Map::new();
                json.insert("u".into(), Value::String(u.clone()));
                json.insert("v".into(), Value::String(v.clone()));
                let mut values = Vec::new();
                if method == "measure" || method == "both" {
                    let classes =
                        elliptic_classes_affine(&l).map_err(|e| e.to_string())?;
                    let r = ep_pair_measure(&l, &classes, &uchar, &vchar)
                        .map_err(|e| e.to_string())?;
                    json.insert("measure".into(), Value::String(fmt_q(&r.value)));
                    values.push(r.value);
                }
                if method == "facets" || method == "both" {
                    let cx = Complex::new(&d).map_err(|e| e.to_string())?;
                    let r = ep_pair_facets(&cx, &l, &uchar, &vchar)
                        .map_err(|e| e.to_string())?;
                    json.insert("facets".into(), Value::String(fmt_q(&r.value)));
                    values.push(r.value);
                }
                if values.is_empty() {
                    return Err(format!("unknown method `{method}`"));
                }
                let agree = values.windows(2).all(|w| w[0] == w[1]);
                json.insert("agree".into(), Value::Bool(agree));
                writeln!(out, "{}", Value::Object(json)).map_err(io)?;
                Ok(if agree { 0 } else { 1 })
            }
        },
        Command::Report { name } => {
            if name != "b2" {
                return Err(format!("unknown report `{name}`"));
            }
            let ok = golden::report_b2(out).map_err(io)?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Viz { sub } => match sub {
            VizCmd::Sigma { datum: arg, window, overlay, out: path } => {
                let d = datum::load(&arg.datum)?;
                let cx = Complex::new(&d).map_err(|e| e.to_string())?;
                let (lo, hi) = window
                    .split_once(':')
                    .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                    .ok_or("window must look like `-3:3`")?;
                let shaded = match overlay.as_deref() {
                    None => Vec::new(),
                    Some(spec) => overlay_cells(&cx, spec)?,
                };
                let svg = svg::render_sigma(&cx, lo, hi, &shaded)?;
                std::fs::write(&path, svg).map_err(io)?;
                writeln!(out, "wrote {path}").map_err(io)?;
                Ok(0)
            }
        },
    }
}

fn contraction_config(cx: &Complex, pins: &str) -> Result<ContractionConfig, String> {
    match pins {
        "none" => Ok(ContractionConfig::default()),
        "paper" => b2_paper_pins(cx).map_err(|e| {
            format!("paper pins are only available for the B2 preset: {e}")
        }),
        other => Err(format!("unknown pins `{other}` (expected paper|none)")),
    }
}

/// Parse `t=0,0;chi=eps0` into an induced virtual character.
fn parse_virtual_char(l: &LatticeGroup, spec: &str) -> Result<VirtualWChar, String> {
    let mut t = None;
    let mut chi_name = None;
    for field in spec.split(';') {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| format!("bad character field `{field}`"))?;
        match k.trim() {
            "t" => {
                let coords = v
                    .split(',')
                    .map(|s| parse_q(s).ok_or_else(|| format!("bad rational `{s}`")))
                    .collect::<Result<Vec<_>, _>>()?;
                if coords.len() != l.rank {
                    return Err(format!(
                        "t has {} coordinates, expected {}",
                        coords.len(),
                        l.rank
                    ));
                }
                t = Some(TorsionChar::new(coords));
            }
            "chi" => chi_name = Some(v.trim().to_string()),
            other => return Err(format!("unknown field `{other}`")),
        }
    }
    let t = t.ok_or("character spec needs `t=...`")?;
    let chi_name = chi_name.ok_or("character spec needs `chi=...`")?;
    let stab = t.stabilizer_indices(&l.gamma);
    let gamma_t = l.gamma.subgroup_group(&stab).map_err(|e| e.to_string())?;
    let table = gamma_t.character_table().map_err(|e| e.to_string())?;
    let chi = names::resolve_character(&gamma_t, &table, &chi_name)?;
    VirtualWChar::single(l, t, chi).map_err(|e| e.to_string())
}

/// Overlay grammar for `viz sigma`.
fn overlay_cells(
    cx: &Complex,
    spec: &str,
) -> Result<Vec<alcove_core::chains::Polysimplex>, String> {
    if let Some(m) = spec.strip_prefix("region:m=") {
        let m: i64 = m.parse().map_err(|_| "bad region scale")?;
        let beta =
            alcove_core::contraction::base_vectors(cx.datum()).map_err(|e| e.to_string())?;
        let region = scaled_region(cx, &beta, m);
        return Ok(cx.cells_in_region(&region, cx.rank()));
    }
    if let Some(rest) = spec.strip_prefix("gamma-edge:") {
        let pts: Vec<Vec<alcove_core::exact::Q>> = rest
            .split(';')
            .map(|p| {
                p.split(',')
                    .map(|s| parse_q(s).ok_or_else(|| format!("bad rational `{s}`")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if pts.len() != 2 {
            return Err("gamma-edge needs two `;`-separated points".into());
        }
        let config = if cx.datum().name == "B2" {
            b2_paper_pins(cx).map_err(|e| e.to_string())?
        } else {
            ContractionConfig::default()
        };
        let con = Contraction::build(cx, &config).map_err(|e| e.to_string())?;
        let (edge, _) = cx.cell_from_vertex_tuple(&pts).map_err(|e| e.to_string())?;
        let gamma = con.gamma(&edge).map_err(|e| e.to_string())?;
        let mut cells: Vec<alcove_core::chains::Polysimplex> =
            gamma.terms.keys().cloned().collect();
        cells.push(edge);
        return Ok(cells);
    }
    Err(format!("unknown overlay `{spec}`"))
}
