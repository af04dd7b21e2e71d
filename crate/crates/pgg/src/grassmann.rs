//! The Grassmann graph on `k`-dimensional singular subspaces: adjacency, the
//! closed-form distance, BFS distance tables and the exhaustive case-analysis
//! check of the distance description.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::polar::PolarSpace;
use crate::util::BitMatrix;

pub type VertexId = u32;

pub struct GrassmannGraph {
    ps: Arc<PolarSpace>,
    k: usize,
    vertices: Arc<Vec<Subspace>>,
    index: HashMap<Subspace, VertexId>,
    adj: Vec<Vec<VertexId>>,
    adj_bits: BitMatrix,
    dist: OnceLock<Arc<DistanceTable>>,
    /// shells[v][d] = vertices at BFS distance d from v (built with dist).
    shells: OnceLock<Arc<Vec<Vec<Vec<VertexId>>>>>,
}

/// Flat row-major all-pairs distance table with 8-bit entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    pub n: usize,
    pub d: Vec<u8>,
}

impl DistanceTable {
    #[inline]
    pub fn at(&self, i: VertexId, j: VertexId) -> u8 {
        self.d[i as usize * self.n + j as usize]
    }
}

impl std::fmt::Debug for GrassmannGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Γ_{}({:?}) [{} vertices]", self.k, self.ps, self.vertices.len())
    }
}

impl GrassmannGraph {
    /// Build `Γ_k` over `ps`: vertices in canonical order, adjacency per the
    /// rank regime, connectivity asserted.
    pub fn build(ps: &Arc<PolarSpace>, k: usize) -> Result<Arc<GrassmannGraph>> {
        let n = ps.rank();
        if k >= n {
            return Err(Error::DimOutOfRange { k, max: n - 1 });
        }
        let vertices = ps.enumerate_singular(k)?;
        let count = vertices.len();
        let mut adj_bits = BitMatrix::new(count);
        let dual = k == n - 1;
        let pairs: Vec<(usize, usize)> = (0..count)
            .into_par_iter()
            .flat_map_iter(|i| {
                let vertices = Arc::clone(&vertices);
                let ps = Arc::clone(ps);
                (i + 1..count).filter_map(move |j| {
                    let meet = vertices[i].intersect(&vertices[j]).unwrap();
                    if ps.local_pdim(&meet) != k as i64 - 1 {
                        return None;
                    }
                    if !dual {
                        let span = vertices[i].span(&vertices[j]).unwrap();
                        if !ps.is_singular(&span) {
                            return None;
                        }
                    }
                    Some((i, j))
                })
            })
            .collect();
        let mut adj = vec![Vec::new(); count];
        for (i, j) in pairs {
            adj_bits.set_sym(i, j, true);
            adj[i].push(j as VertexId);
            adj[j].push(i as VertexId);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as VertexId))
            .collect();
        let g = GrassmannGraph {
            ps: Arc::clone(ps),
            k,
            vertices,
            index,
            adj,
            adj_bits,
            dist: OnceLock::new(),
            shells: OnceLock::new(),
        };
        // connectivity check doubles as a BFS sanity pass
        g.bfs_distance(0)?;
        Ok(Arc::new(g))
    }

    pub fn geometry(&self) -> &Arc<PolarSpace> {
        &self.ps
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Subspace] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &Subspace {
        &self.vertices[v as usize]
    }

    pub fn vertex_id(&self, s: &Subspace) -> Option<VertexId> {
        self.index.get(s).copied()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    #[inline]
    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adj_bits.get(a as usize, b as usize)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    /// Sorted edge list (i < j), byte-stable across runs.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (i, l) in self.adj.iter().enumerate() {
            for &j in l {
                if (i as VertexId) < j {
                    out.push((i as VertexId, j));
                }
            }
        }
        out
    }

    // ---- distances -----------------------------------------------------------

    /// Exact BFS distances from one source; errors if anything is unreachable.
    pub fn bfs_distance(&self, source: VertexId) -> Result<Vec<u8>> {
        if source as usize >= self.len() {
            return Err(Error::VertexOutOfRange(source));
        }
        let mut d = vec![u8::MAX; self.len()];
        d[source as usize] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if d[w as usize] == u8::MAX {
                    d[w as usize] = d[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        if let Some(bad) = d.iter().position(|&x| x == u8::MAX) {
            return Err(Error::Disconnected(bad as u32));
        }
        Ok(d)
    }

    /// Memoized all-pairs table, one BFS sweep per source in parallel.
    pub fn distances(&self) -> Arc<DistanceTable> {
        Arc::clone(self.dist.get_or_init(|| {
            let n = self.len();
            let rows: Vec<Vec<u8>> = (0..n as VertexId)
                .into_par_iter()
                .map(|v| self.bfs_distance(v).expect("graph is connected"))
                .collect();
            let mut d = Vec::with_capacity(n * n);
            for r in rows {
                d.extend_from_slice(&r);
            }
            Arc::new(DistanceTable { n, d })
        }))
    }

    pub(crate) fn set_distances(&self, table: DistanceTable) {
        let _ = self.dist.set(Arc::new(table));
    }

    /// Vertices grouped by distance from each source, for search pruning.
    pub fn shells(&self) -> Arc<Vec<Vec<Vec<VertexId>>>> {
        Arc::clone(self.shells.get_or_init(|| {
            let dist = self.distances();
            let diam = *dist.d.iter().max().unwrap() as usize;
            let mut shells = vec![vec![Vec::new(); diam + 1]; self.len()];
            for v in 0..self.len() {
                for w in 0..self.len() {
                    shells[v][dist.at(v as VertexId, w as VertexId) as usize].push(w as VertexId);
                }
            }
            Arc::new(shells)
        }))
    }

    pub fn diameter(&self) -> u8 {
        *self.distances().d.iter().max().unwrap()
    }

    /// Diameter predicted by the rank regime: `k+2` for non-maximal layers,
    /// `n` for the dual polar graph.
    pub fn expected_diameter(&self) -> u8 {
        let n = self.ps.rank();
        if self.k == n - 1 {
            n as u8
        } else {
            (self.k + 2) as u8
        }
    }

    /// The closed-form distance between two vertices.
    pub fn distance_formula(&self, x: VertexId, y: VertexId) -> Result<u8> {
        if x as usize >= self.len() || y as usize >= self.len() {
            return Err(Error::VertexOutOfRange(x.max(y)));
        }
        if x == y {
            return Ok(0);
        }
        let sx = self.vertex(x);
        let sy = self.vertex(y);
        let k = self.k as i64;
        let meet_dim = self.ps.local_pdim(&sx.intersect(sy)?);
        if self.k == self.ps.rank() - 1 {
            return Ok((self.ps.rank() as i64 - 1 - meet_dim) as u8);
        }
        if self.witness_collinear_to_all(x, y) {
            Ok((k - meet_dim) as u8)
        } else {
            Ok((k - meet_dim + 1) as u8)
        }
    }

    /// Is some point of `X \ Y` collinear to all points of `Y`?
    fn witness_collinear_to_all(&self, x: VertexId, y: VertexId) -> bool {
        let sx = self.vertex(x);
        let sy = self.vertex(y);
        self.ps.point_support(sx).iter().any(|&p| {
            !sy.contains(self.ps.point(p)).unwrap() && self.ps.collinear_all(p, sy)
        })
    }

    /// Exhaustive check of the two-case distance description on every vertex
    /// pair, cross-checked against BFS.
    pub fn verify_distance_lemma(&self) -> Result<LemmaReport> {
        let n = self.ps.rank();
        let dist = self.distances();
        let mut pairs_checked: u64 = 0;
        let mut case1: u64 = 0;
        let mut case2: u64 = 0;
        let mut failures = Vec::new();
        for x in 0..self.len() as VertexId {
            for y in x + 1..self.len() as VertexId {
                pairs_checked += 1;
                let m = dist.at(x, y) as i64;
                let formula = self.distance_formula(x, y)? as i64;
                let mut ok = formula == m;
                if self.k == n - 1 {
                    // dual polar graph: distance is n-1-dim(X∩Y); no case split
                    if ok {
                        case1 += 1;
                    }
                } else {
                    let k = self.k as i64;
                    let meet_dim = self
                        .ps
                        .local_pdim(&self.vertex(x).intersect(self.vertex(y))?);
                    let wx = self.witness_collinear_to_all(x, y);
                    let wy = self.witness_collinear_to_all(y, x);
                    let c1 = meet_dim == k - m && wx && wy;
                    let c2 = m > 1 && meet_dim == k - m + 1 && !wx && !wy;
                    ok = ok && (c1 ^ c2);
                    if m == k + 2 {
                        ok = ok && c2;
                    }
                    // the collinearity witness is symmetric in the two sides
                    ok = ok && (wx == wy);
                    if c1 {
                        case1 += 1;
                    }
                    if c2 {
                        case2 += 1;
                    }
                }
                if !ok && failures.len() < 8 {
                    failures.push(LemmaFailure {
                        x,
                        y,
                        bfs: m as u8,
                        formula: formula as u8,
                        x_label: self.vertex(x).label(),
                        y_label: self.vertex(y).label(),
                    });
                }
            }
        }
        Ok(LemmaReport {
            pairs_checked,
            case1,
            case2,
            all_pass: failures.is_empty(),
            failures,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaFailure {
    pub x: VertexId,
    pub y: VertexId,
    pub bfs: u8,
    pub formula: u8,
    pub x_label: String,
    pub y_label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub pairs_checked: u64,
    pub case1: u64,
    pub case2: u64,
    pub all_pass: bool,
    pub failures: Vec<LemmaFailure>,
}
