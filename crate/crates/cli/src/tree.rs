//! Pseudo-ball tree rendering, as indented text or Graphviz DOT.
//!
//! Nodes are the pseudo-balls of the strata; an edge points from a ball to
//! the ball one characteristic level deeper whose center it contains.

use polar_branches::{BranchData, Result};
use std::fmt::Write as _;

/// Parent links: for each stratum beyond the first, the index of the
/// containing ball one level up.
fn parents(bd: &BranchData) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for level in 1..bd.strata.len() {
        let upper = &bd.strata[level - 1];
        let mut links = Vec::with_capacity(bd.strata[level].balls.len());
        for child in &bd.strata[level].balls {
            let mut parent = None;
            for (bi, cand) in upper.balls.iter().enumerate() {
                if cand.ball.contains(child.ball.center(), bd.cfg.tol)? {
                    parent = Some(bi);
                    break;
                }
            }
            links.push(parent.expect("every ball nests in the previous stratum"));
        }
        out.push(links);
    }
    Ok(out)
}

/// Render the tree as indented text.
pub fn render_text(bd: &BranchData) -> Result<String> {
    let links = parents(bd)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "branch {}: {} roots",
        bd.chr,
        bd.roots.total()
    );
    fn descend(
        bd: &BranchData,
        links: &[Vec<usize>],
        level: usize,
        ball: usize,
        indent: usize,
        out: &mut String,
    ) {
        let sb = &bd.strata[level].balls[ball];
        let _ = writeln!(
            out,
            "{:indent$}T_{} ball {}: height {}, {} roots, model (z^{} - c)^{}",
            "",
            level + 1,
            ball + 1,
            bd.strata[level].height,
            sb.members.len(),
            sb.n_i,
            sb.e_i,
            indent = indent,
        );
        if level + 1 < bd.strata.len() {
            for (ci, &p) in links[level].iter().enumerate() {
                if p == ball {
                    descend(bd, links, level + 1, ci, indent + 2, out);
                }
            }
        }
    }
    if !bd.strata.is_empty() {
        for ball in 0..bd.strata[0].balls.len() {
            descend(bd, &links, 0, ball, 2, &mut out);
        }
    }
    Ok(out)
}

/// Render the tree as a DOT digraph.
pub fn render_dot(bd: &BranchData) -> Result<String> {
    let links = parents(bd)?;
    let mut out = String::new();
    let _ = writeln!(out, "digraph pseudoballs {{");
    let _ = writeln!(out, "  rankdir=TB;");
    let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
    let _ = writeln!(
        out,
        "  root [label=\"branch {}\\n{} roots\"];",
        bd.chr,
        bd.roots.total()
    );
    for (li, stratum) in bd.strata.iter().enumerate() {
        for (bi, sb) in stratum.balls.iter().enumerate() {
            let _ = writeln!(
                out,
                "  t{}b{} [label=\"T_{} ball {}\\nheight {}\\n{} roots, (z^{} - c)^{}\"];",
                li + 1,
                bi + 1,
                li + 1,
                bi + 1,
                stratum.height,
                sb.members.len(),
                sb.n_i,
                sb.e_i,
            );
            if li == 0 {
                let _ = writeln!(out, "  root -> t1b{};", bi + 1);
            } else {
                let _ = writeln!(out, "  t{}b{} -> t{}b{};", li, links[li - 1][bi] + 1, li + 1, bi + 1);
            }
        }
    }
    let _ = writeln!(out, "}}");
    Ok(out)
}
