//! Browser bindings for the `fuss-forest` demo page.
//!
//! Every export returns a string (plain text or JSON) so the same functions
//! are testable natively.

use std::collections::HashMap;
use std::fmt::Write as _;

use fuss_forest::bijection::{maximal_l_paths, maximal_r_paths, Address, PathKind};
use fuss_forest::series::{lagrange_power_coefficients, TruncatedSeries};
use fuss_forest::trees::PlaneTree;
use fuss_forest::{
    forest_catalan, identity_side, k_catalan, phi, phi_inverse, BinaryTree, ColoredTernaryTree,
    IdentityId, Side,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest `n` the page will compute or draw.
const WEB_N_MAX: u64 = 200;
const WEB_TREE_MAX: u64 = 40;

/// `C(n,k)`, or the m-forest count when `m > 1`.
#[wasm_bindgen]
pub fn number(k: u32, n: u32, m: u32) -> Result<String, String> {
    if k < 2 {
        return Err("k must be at least 2".into());
    }
    if m == 0 {
        return Err("m must be at least 1".into());
    }
    if u64::from(n) > WEB_N_MAX {
        return Err(format!("n is limited to {WEB_N_MAX} here"));
    }
    Ok(if m == 1 {
        k_catalan(n.into(), k.into()).to_string()
    } else {
        forest_catalan(n.into(), k.into(), m.into()).to_string()
    })
}

#[derive(Serialize)]
struct IdentityRow {
    n: u64,
    lhs: String,
    rhs: String,
    equal: bool,
}

/// Both sides of an identity for `n = 0..=n_max` as a JSON array.
///
/// `id` is one of `eq1`, `eq2`, `eq3.1`, `eq3.2`.
#[wasm_bindgen]
pub fn identity_table(id: &str, n_max: u32, m: u32) -> Result<String, String> {
    let id = IdentityId::ALL
        .into_iter()
        .find(|i| i.name() == id)
        .ok_or_else(|| format!("unknown identity {id:?}"))?;
    if u64::from(n_max) > WEB_N_MAX {
        return Err(format!("n is limited to {WEB_N_MAX} here"));
    }
    let mut rows = Vec::new();
    for n in 0..=u64::from(n_max) {
        let lhs = identity_side(id, Side::Lhs, n, m.into()).map_err(|e| e.to_string())?;
        let rhs = identity_side(id, Side::Rhs, n, m.into()).map_err(|e| e.to_string())?;
        rows.push(IdentityRow {
            n,
            equal: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
    Ok(serde_json::to_string(&rows).expect("rows serialize"))
}

#[derive(Serialize)]
struct Mapped {
    ternary: String,
    binary: String,
    weight: u64,
    ternary_svg: String,
    binary_svg: String,
    r_paths: usize,
    l_paths: usize,
}

/// Maps one tree across the bijection.
///
/// `direction` is `t2b` or `b2t`. The result carries both trees as text and
/// SVG; in the binary drawing maximal R-paths are red and maximal L-paths
/// with at least two vertices are blue.
#[wasm_bindgen]
pub fn map_tree(direction: &str, text: &str) -> Result<String, String> {
    let (t, b) = match direction {
        "t2b" => {
            let t: ColoredTernaryTree = text.trim().parse().map_err(|e| format!("{e}"))?;
            let b = phi(&t).map_err(|e| e.to_string())?;
            (t, b)
        }
        "b2t" => {
            let b: BinaryTree = text.trim().parse().map_err(|e| format!("{e}"))?;
            let t = phi_inverse(&b).map_err(|e| e.to_string())?;
            (t, b)
        }
        other => return Err(format!("unknown direction {other:?}")),
    };
    if b.internal_count() > WEB_TREE_MAX {
        return Err(format!("trees are limited to weight {WEB_TREE_MAX} here"));
    }
    let r = maximal_r_paths(&b);
    let l: Vec<_> = maximal_l_paths(&b)
        .into_iter()
        .filter(|p| p.len() >= 2)
        .collect();
    let mut marked = HashMap::new();
    for path in r.iter().chain(&l) {
        for w in path.vertices.windows(2) {
            marked.insert(w[1].clone(), path.kind);
        }
    }
    let out = Mapped {
        ternary: t.to_string(),
        binary: b.to_string(),
        weight: t.weight(),
        ternary_svg: svg(&t, &HashMap::new()),
        binary_svg: svg(&b, &marked),
        r_paths: r.len(),
        l_paths: l.len(),
    };
    Ok(serde_json::to_string(&out).expect("mapping serializes"))
}

#[derive(Serialize)]
struct SeriesRow {
    p: usize,
    series: String,
    formula: String,
}

/// `[x^p] C_k(x)^m` from the series engine next to `m/(kp+m) binom(kp+m, p)`.
#[wasm_bindgen]
pub fn series_table(k: u32, m: u32, order: u32) -> Result<String, String> {
    if k < 2 || m == 0 {
        return Err("need k >= 2 and m >= 1".into());
    }
    if order > 128 {
        return Err("order is limited to 128 here".into());
    }
    let rows: Vec<SeriesRow> = lagrange_power_coefficients(k.into(), m.into(), order as usize)
        .into_iter()
        .enumerate()
        .map(|(p, v)| SeriesRow {
            p,
            series: v.to_string(),
            formula: forest_catalan(p as u64, k.into(), m.into()).to_string(),
        })
        .collect();
    Ok(serde_json::to_string(&rows).expect("rows serialize"))
}

/// Truncated `C_k(x)` as display text.
#[wasm_bindgen]
pub fn catalan_series_text(k: u32, order: u32) -> Result<String, String> {
    if k < 2 || order > 128 {
        return Err("need k >= 2 and order <= 128".into());
    }
    let s: TruncatedSeries = fuss_forest::series::solve_k_catalan_series(k.into(), order as usize);
    Ok(s.to_string())
}

// ---------------------------------------------------------------------------
// drawing

const STEP_X: f64 = 28.0;
const STEP_Y: f64 = 40.0;
const MARGIN: f64 = 20.0;

struct Placed {
    x: f64,
    depth: usize,
}

fn place<T: PlaneTree>(
    t: &T,
    addr: &mut Address,
    depth: usize,
    next_leaf: &mut f64,
    out: &mut Vec<(Address, Placed, Option<String>, bool)>,
) -> f64 {
    let kids = t.subtrees();
    let idx = out.len();
    out.push((
        addr.clone(),
        Placed { x: 0.0, depth },
        t.vertex_label(),
        kids.is_empty(),
    ));
    let x = if kids.is_empty() {
        *next_leaf += 1.0;
        *next_leaf - 1.0
    } else {
        let mut xs = Vec::with_capacity(kids.len());
        for (i, k) in kids.iter().enumerate() {
            addr.push(i);
            xs.push(place(k, addr, depth + 1, next_leaf, out));
            addr.pop();
        }
        (xs[0] + xs[xs.len() - 1]) / 2.0
    };
    out[idx].1.x = x;
    x
}

/// SVG drawing with leaves spread evenly and parents centred above their
/// outer children. Edges into vertices listed in `marked` are coloured.
fn svg<T: PlaneTree>(t: &T, marked: &HashMap<Address, PathKind>) -> String {
    let mut placed = Vec::new();
    let mut leaves = 0.0;
    place(t, &mut Vec::new(), 0, &mut leaves, &mut placed);
    let depth = placed.iter().map(|p| p.1.depth).max().unwrap_or(0);
    let width = MARGIN * 2.0 + (leaves - 1.0).max(0.0) * STEP_X;
    let height = MARGIN * 2.0 + depth as f64 * STEP_Y;
    let pos: HashMap<&Address, (f64, f64)> = placed
        .iter()
        .map(|(a, p, _, _)| (a, (MARGIN + p.x * STEP_X, MARGIN + p.depth as f64 * STEP_Y)))
        .collect();

    let mut s = format!(
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"##
    );
    for (addr, _, _, _) in &placed {
        if let Some((_, parent)) = addr.split_last() {
            let (x1, y1) = pos[&parent.to_vec()];
            let (x2, y2) = pos[addr];
            let (stroke, w) = match marked.get(addr) {
                Some(PathKind::R) => ("#c0392b", 3),
                Some(PathKind::L) => ("#2471a3", 3),
                None => ("#555", 1),
            };
            let _ = write!(
                s,
                r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" stroke-width="{w}"/>"##
            );
        }
    }
    for (addr, _, label, leaf) in &placed {
        let (x, y) = pos[addr];
        if *leaf {
            let _ = write!(
                s,
                r##"<rect x="{}" y="{}" width="8" height="8" fill="#333"/>"##,
                x - 4.0,
                y - 4.0
            );
            if let Some(l) = label.as_deref().filter(|l| *l != "0") {
                let _ = write!(
                    s,
                    r##"<text x="{}" y="{}" font-size="11" fill="#a04000">{l}</text>"##,
                    x + 6.0,
                    y + 14.0
                );
            }
        } else {
            let _ = write!(
                s,
                r##"<circle cx="{x}" cy="{y}" r="9" fill="#fff" stroke="#333"/>"##
            );
            if let Some(l) = label {
                let _ = write!(
                    s,
                    r##"<text x="{x}" y="{}" font-size="11" text-anchor="middle">{l}</text>"##,
                    y + 4.0
                );
            }
        }
    }
    s.push_str("</svg>");
    s
}
