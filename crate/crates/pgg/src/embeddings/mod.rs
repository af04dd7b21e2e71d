//! Vertex maps between Grassmann graphs, point maps between polar spaces,
//! embeddings induced by collinearity preserving injections, and their
//! decomposition back into a base subspace plus a point injection.

mod checks;
mod decompose;
mod search;

pub use checks::{
    check_corollary1, check_proposition0, check_theorem, CorollaryReport, Prop0Report,
    TheoremRegime, TheoremReport,
};
pub use decompose::{derive_decomposition, Decomposition, DecompositionOutcome, Rejection};
pub use search::{search_embeddings, MatchLevel, SearchMode, SearchResult};

use std::sync::Arc;

use serde::Serialize;

use crate::apartments::Frame;
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannGraph, VertexId};
use crate::polar::{PointId, PolarSpace};

/// A candidate embedding `Γ_k(Π) -> Γ_k'(Π')` given by a total assignment of
/// source vertex ids to target vertex ids.
#[derive(Clone)]
pub struct VertexMap {
    pub source: Arc<GrassmannGraph>,
    pub target: Arc<GrassmannGraph>,
    pub assignment: Vec<VertexId>,
}

impl std::fmt::Debug for VertexMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "VertexMap({:?} -> {:?}, {} vertices)",
            self.source,
            self.target,
            self.assignment.len()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapCheckLevel {
    Embedding,
    Isometric,
}

/// First failing pair, when a check fails.
#[derive(Debug, Clone, Serialize)]
pub struct PairWitness {
    pub a: u32,
    pub b: u32,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MapVerdict {
    pub pass: bool,
    pub witness: Option<PairWitness>,
}

impl MapVerdict {
    fn pass() -> Self {
        MapVerdict {
            pass: true,
            witness: None,
        }
    }

    fn fail(a: u32, b: u32, detail: String) -> Self {
        MapVerdict {
            pass: false,
            witness: Some(PairWitness { a, b, detail }),
        }
    }
}

impl VertexMap {
    pub fn image_ids(&self) -> Vec<VertexId> {
        let mut v = self.assignment.clone();
        v.sort_unstable();
        v
    }

    fn check_shape(&self) -> Result<()> {
        if self.assignment.len() != self.source.len() {
            return Err(Error::Precondition(format!(
                "assignment covers {} of {} source vertices",
                self.assignment.len(),
                self.source.len()
            )));
        }
        let mut seen = vec![false; self.target.len()];
        for (s, &t) in self.assignment.iter().enumerate() {
            if t as usize >= self.target.len() {
                return Err(Error::VertexOutOfRange(t));
            }
            if seen[t as usize] {
                let first = self.assignment.iter().position(|&x| x == t).unwrap();
                return Err(Error::NotInjective(first as u32, s as u32));
            }
            seen[t as usize] = true;
        }
        Ok(())
    }
}

/// Check a vertex map at embedding level (adjacency preserved both ways) or
/// isometric level (all pairwise distances preserved).
pub fn verify_map(map: &VertexMap, level: MapCheckLevel) -> Result<MapVerdict> {
    map.check_shape()?;
    let n = map.source.len() as VertexId;
    match level {
        MapCheckLevel::Embedding => {
            for a in 0..n {
                for b in a + 1..n {
                    let src = map.source.adjacent(a, b);
                    let dst = map
                        .target
                        .adjacent(map.assignment[a as usize], map.assignment[b as usize]);
                    if src != dst {
                        return Ok(MapVerdict::fail(
                            a,
                            b,
                            format!("adjacency {src} maps to adjacency {dst}"),
                        ));
                    }
                }
            }
        }
        MapCheckLevel::Isometric => {
            let ds = map.source.distances();
            let dt = map.target.distances();
            for a in 0..n {
                for b in a + 1..n {
                    let src = ds.at(a, b);
                    let dst = dt.at(map.assignment[a as usize], map.assignment[b as usize]);
                    if src != dst {
                        return Ok(MapVerdict::fail(
                            a,
                            b,
                            format!("distance {src} maps to distance {dst}"),
                        ));
                    }
                }
            }
        }
    }
    Ok(MapVerdict::pass())
}

/// An assignment of the points of one polar space to the points of another
/// (possibly a residue, in which case the images are host subspaces).
#[derive(Clone)]
pub struct PointMap {
    pub source: Arc<PolarSpace>,
    pub target: Arc<PolarSpace>,
    pub assignment: Vec<PointId>,
}

impl std::fmt::Debug for PointMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PointMap({:?} -> {:?})", self.source, self.target)
    }
}

/// Exhaustive: collinear pairs map to collinear pairs and non-collinear
/// pairs to non-collinear pairs.
pub fn verify_point_map(map: &PointMap) -> Result<MapVerdict> {
    let n = map.source.num_points();
    if map.assignment.len() != n {
        return Err(Error::Precondition(format!(
            "assignment covers {} of {n} points",
            map.assignment.len()
        )));
    }
    for (i, &t) in map.assignment.iter().enumerate() {
        if t as usize >= map.target.num_points() {
            return Err(Error::VertexOutOfRange(t));
        }
        if let Some(j) = map.assignment[..i].iter().position(|&x| x == t) {
            return Err(Error::NotInjective(j as u32, i as u32));
        }
    }
    for a in 0..n as PointId {
        for b in a + 1..n as PointId {
            let src = map.source.collinear(a, b);
            let dst = map
                .target
                .collinear(map.assignment[a as usize], map.assignment[b as usize]);
            if src != dst {
                return Ok(MapVerdict::fail(
                    a,
                    b,
                    format!("collinearity {src} maps to collinearity {dst}"),
                ));
            }
        }
    }
    Ok(MapVerdict::pass())
}

/// The embedding induced by a collinearity preserving injection: each source
/// vertex goes to the span of the images of its points (together with the
/// residue base of the target, when there is one).  The result is verified
/// isometric before it is returned.
pub fn induce_map(
    pm: &PointMap,
    source_graph: &Arc<GrassmannGraph>,
    target_graph: &Arc<GrassmannGraph>,
) -> Result<VertexMap> {
    let verdict = verify_point_map(pm)?;
    if !verdict.pass {
        return Err(Error::PointMapRejected(
            verdict
                .witness
                .map(|w| w.detail)
                .unwrap_or_else(|| "collinearity not preserved".into()),
        ));
    }
    if pm.source.rank() > pm.target.rank() {
        return Err(Error::RankDeficit {
            source_rank: pm.source.rank(),
            target_rank: pm.target.rank(),
        });
    }
    if !Arc::ptr_eq(&pm.source, source_graph.geometry()) {
        return Err(Error::GeometryMismatch);
    }
    // the target geometry is either the graph's own geometry or a residue of it
    let host = target_graph.geometry();
    let base_dim = match pm.target.residue_base() {
        Some(base) => {
            let host_of_res = pm.target.residue_host().unwrap();
            if !Arc::ptr_eq(host_of_res, host) {
                return Err(Error::GeometryMismatch);
            }
            host.local_pdim(base)
        }
        None => {
            if !Arc::ptr_eq(&pm.target, host) {
                return Err(Error::GeometryMismatch);
            }
            -1
        }
    };
    let k = source_graph.k() as i64;
    let expected_kp = base_dim + k + 1;
    if target_graph.k() as i64 != expected_kp {
        return Err(Error::Precondition(format!(
            "target layer is {}, induced maps land in {expected_kp}",
            target_graph.k()
        )));
    }
    let mut assignment = Vec::with_capacity(source_graph.len());
    for u in source_graph.vertices() {
        let point_images: Vec<&crate::algebra::Subspace> = pm
            .source
            .point_support(u)
            .into_iter()
            .map(|p| pm.target.point(pm.assignment[p as usize]))
            .collect();
        let image = pm.target.span_many(&point_images)?;
        if host.local_pdim(&image) != expected_kp || !host.is_singular(&image) {
            return Err(Error::Inconsistent(format!(
                "induced image of {} is not a {expected_kp}-dimensional singular subspace",
                u.label()
            )));
        }
        let id = target_graph
            .vertex_id(&image)
            .ok_or_else(|| Error::Inconsistent("induced image is not a target vertex".into()))?;
        assignment.push(id);
    }
    let map = VertexMap {
        source: Arc::clone(source_graph),
        target: Arc::clone(target_graph),
        assignment,
    };
    let verdict = verify_map(&map, MapCheckLevel::Isometric)?;
    if !verdict.pass {
        return Err(Error::Inconsistent(format!(
            "induced map failed the isometric check: {:?}",
            verdict.witness
        )));
    }
    Ok(map)
}

/// The collinearity preserving injection sending the thin polar space of the
/// target's rank onto a frame: `+i`/`-i` go to the two sides of pair
/// `perm[i]`, swapped when `signs[i]` is set.
pub fn point_map_from_frame(
    thin: &Arc<PolarSpace>,
    target: &Arc<PolarSpace>,
    frame: &Frame,
    perm: &[usize],
    signs: &[bool],
) -> Result<PointMap> {
    let n = thin.rank();
    if target.rank() != n || frame.points.len() != 2 * n || perm.len() != n || signs.len() != n {
        return Err(Error::Precondition("frame/permutation shape mismatch".into()));
    }
    let pairs = frame.pairs();
    let mut assignment = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (a, b) = pairs[perm[i]];
        let (first, second) = if signs[i] { (b, a) } else { (a, b) };
        // thin points are ordered +1, -1, +2, -2, ...
        assignment.push(first);
        assignment.push(second);
    }
    Ok(PointMap {
        source: Arc::clone(thin),
        target: Arc::clone(target),
        assignment,
    })
}
