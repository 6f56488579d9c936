use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{PivotGraph, VertexId};
use crate::pitch::Triad;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WalkOptions {
    /// Reject walks that immediately return to the previous vertex.
    pub no_backtrack: bool,
    /// Expand each walk once per choice of pivot triad on every step.
    pub with_pivots: bool,
}

/// A walk of `vertices.len() - 1` steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Walk {
    pub vertices: Vec<VertexId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pivots: Option<Vec<Triad>>,
}

impl Walk {
    pub fn steps(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// All walks of exactly `steps` edges from `from` to `to`, in lexicographic
/// vertex order. Vertices may repeat.
pub fn walks(
    g: &PivotGraph,
    from: VertexId,
    to: VertexId,
    steps: usize,
    opts: WalkOptions,
) -> Result<Vec<Walk>> {
    for v in [from, to] {
        if v >= g.len() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
    }
    if steps == 0 {
        return Err(Error::ZeroSteps);
    }
    let mut routes = Vec::new();
    let mut current = vec![from];
    collect(g, to, steps, opts.no_backtrack, &mut current, &mut routes);

    if !opts.with_pivots {
        return Ok(routes
            .into_iter()
            .map(|vertices| Walk {
                vertices,
                pivots: None,
            })
            .collect());
    }
    let mut out = Vec::new();
    for vertices in routes {
        let choices: Vec<Vec<Triad>> = vertices
            .windows(2)
            .map(|w| g.pivots_between(w[0], w[1]).iter().copied().collect())
            .collect();
        let mut partial: Vec<Vec<Triad>> = vec![Vec::new()];
        for options in &choices {
            partial = partial
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |&t| {
                        let mut next = prefix.clone();
                        next.push(t);
                        next
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|pivots| Walk {
            vertices: vertices.clone(),
            pivots: Some(pivots),
        }));
    }
    Ok(out)
}

fn collect(
    g: &PivotGraph,
    to: VertexId,
    remaining: usize,
    no_backtrack: bool,
    current: &mut Vec<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
) {
    let here = *current.last().expect("walks start at a vertex");
    if remaining == 0 {
        if here == to {
            out.push(current.clone());
        }
        return;
    }
    let previous = current.len().checked_sub(2).map(|i| current[i]);
    for next in g.neighbors(here) {
        if no_backtrack && Some(next) == previous {
            continue;
        }
        current.push(next);
        collect(g, to, remaining - 1, no_backtrack, current, out);
        current.pop();
    }
}
