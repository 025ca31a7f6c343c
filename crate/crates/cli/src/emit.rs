//! Hom-dimension tables and AR quivers.

use std::fmt::Write;

use anyhow::Result;
use mfkit::catalog::RingId;
use mfkit::decomp::{mf_decompose_with, DecompConfig};
use mfkit::funcat::{ainf1_ar_sequence, Window};
use mfkit::homology::{stable_hom_dim, DimReport};
use serde::Serialize;

use crate::report::cell;
use crate::{usage, Context};

#[derive(Debug, Clone, Serialize)]
pub struct HomTable {
    pub ring: RingId,
    pub labels: Vec<String>,
    /// Row `i`, column `j` is `stHom(labels[i], labels[j])`.
    pub cells: Vec<Vec<String>>,
    /// Cells whose trace did not settle within the budget.
    pub undetermined: usize,
}

pub fn default_window(ring: RingId) -> u32 {
    match ring {
        RingId::Ainf1 | RingId::Dinf2 => 4,
        RingId::Dinf1 => 2,
        RingId::Node => 0,
    }
}

fn window(ctx: &Context, ring: RingId) -> Window {
    if ring == RingId::Node {
        return Window::new(ring, ctx.cat.finite_sample()).without_free();
    }
    Window::standard(&ctx.cat, ring, ctx.window_or(default_window(ring))).without_free()
}

pub fn hom_table(ctx: &Context, ring: RingId) -> Result<HomTable> {
    let w = window(ctx, ring);
    let mut reports: Vec<Vec<DimReport>> = Vec::new();
    for a in &w.entries {
        let row = w
            .entries
            .iter()
            .map(|b| stable_hom_dim(&a.mf, &b.mf, &ctx.cfg))
            .collect::<mfkit::Result<_>>()?;
        reports.push(row);
    }
    let cells: Vec<Vec<String>> = reports.iter().map(|r| r.iter().map(cell).collect()).collect();
    let undetermined = cells.iter().flatten().filter(|c| *c == "?").count();
    Ok(HomTable {
        ring,
        labels: w.labels(),
        cells,
        undetermined,
    })
}

impl HomTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source");
        for l in &self.labels {
            let _ = write!(out, ",{l}");
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.cells) {
            let _ = writeln!(out, "{l},{}", row.join(","));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Arrow {
    pub source: String,
    pub target: String,
    pub weight: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Quiver {
    pub ring: RingId,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// AR quiver on the window: an arrow `U -> V` for each summand `U` of the
/// middle term of the AR sequence ending in `V`.
pub fn quiver(ctx: &Context, ring: RingId) -> Result<Quiver> {
    if ring != RingId::Ainf1 {
        return Err(usage(format!("AR sequences are only built over ainf1, not {ring}")));
    }
    let w = window(ctx, ring);
    let vertices = w.labels();
    let cfg = DecompConfig {
        seed: ctx.params.seed,
        ..DecompConfig::default()
    };
    let mut arrows = Vec::new();
    for v in &w.entries {
        let Some(n) = v.param else { continue };
        let seq = ainf1_ar_sequence(&ctx.cat, n)?;
        let mid = mf_decompose_with(seq.y(), &cfg)?;
        for (u, &weight) in &mid.multiplicities {
            if vertices.contains(u) {
                arrows.push(Arrow {
                    source: u.clone(),
                    target: v.label.clone(),
                    weight,
                });
            }
        }
    }
    Ok(Quiver { ring, vertices, arrows })
}

impl Quiver {
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph {} {{\n", self.ring);
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for a in &self.arrows {
            let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", a.source, a.target, a.weight);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("source,target,weight\n");
        for a in &self.arrows {
            let _ = writeln!(out, "{},{},{}", a.source, a.target, a.weight);
        }
        out
    }
}
