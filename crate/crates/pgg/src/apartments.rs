//! Frames and apartments: validation, the frame property (a common frame for
//! any two singular subspaces), apartment generation, full frame enumeration,
//! and apartment detection.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannGraph, VertexId};
use crate::polar::{PointId, PolarSpace};

/// 2n points, each non-collinear to exactly one partner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Frame {
    /// Sorted point ids.
    pub points: Vec<PointId>,
    /// `sigma[i]` is the index (into `points`) of the partner of `points[i]`.
    pub sigma: Vec<usize>,
}

impl Frame {
    /// Partner pairs `(points[i], points[sigma[i]])` with `i < sigma[i]`,
    /// sorted by the first entry.
    pub fn pairs(&self) -> Vec<(PointId, PointId)> {
        let mut out = Vec::new();
        for (i, &j) in self.sigma.iter().enumerate() {
            if i < j {
                out.push((self.points[i], self.points[j]));
            }
        }
        out.sort_unstable();
        out
    }
}

/// All k-dimensional singular subspaces spanned by pair-free frame subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Apartment {
    pub frame: Frame,
    pub k: usize,
    /// Canonically sorted member subspaces.
    pub members: Vec<Subspace>,
}

impl Apartment {
    pub fn member_ids(&self, g: &GrassmannGraph) -> Result<Vec<VertexId>> {
        let mut out = Vec::with_capacity(self.members.len());
        for m in &self.members {
            out.push(
                g.vertex_id(m)
                    .ok_or_else(|| Error::Inconsistent(format!("{} is not a vertex", m.label())))?,
            );
        }
        Ok(out)
    }
}

/// Check the frame axioms on a candidate 2n-point set and compute sigma.
pub fn validate_frame(ps: &PolarSpace, candidate: &[PointId]) -> Result<Frame> {
    let n = ps.rank();
    let mut points: Vec<PointId> = candidate.to_vec();
    points.sort_unstable();
    points.dedup();
    if points.len() != 2 * n {
        return Err(Error::InvalidFrame(format!(
            "expected {} distinct points, got {}",
            2 * n,
            points.len()
        )));
    }
    let mut sigma = vec![usize::MAX; points.len()];
    for (i, &p) in points.iter().enumerate() {
        let partners: Vec<usize> = points
            .iter()
            .enumerate()
            .filter(|&(j, &q)| j != i && !ps.collinear(p, q))
            .map(|(j, _)| j)
            .collect();
        match partners.as_slice() {
            [j] => sigma[i] = *j,
            [] => {
                return Err(Error::InvalidFrame(format!(
                    "point {} has no non-collinear partner",
                    ps.point(p).label()
                )))
            }
            many => {
                return Err(Error::InvalidFrame(format!(
                    "point {} has {} non-collinear partners",
                    ps.point(p).label(),
                    many.len()
                )))
            }
        }
    }
    for (i, &j) in sigma.iter().enumerate() {
        if sigma[j] != i {
            return Err(Error::InvalidFrame("sigma is not an involution".into()));
        }
    }
    let frame = Frame { points, sigma };
    // independence: every pair-free subset of size m spans an
    // (m-1)-dimensional singular subspace
    for subset in pair_free_subsets(&frame, n) {
        let parts: Vec<&Subspace> = subset.iter().map(|&p| ps.point(p)).collect();
        let span = ps.span_many(&parts)?;
        if ps.local_pdim(&span) != subset.len() as i64 - 1 || !ps.is_singular(&span) {
            return Err(Error::InvalidFrame(format!(
                "collinear subset of size {} is dependent",
                subset.len()
            )));
        }
    }
    Ok(frame)
}

/// Maximal pair-free subsets (one side of each pair): 2^n subsets of size n.
/// Checking spans on these covers every smaller pair-free subset.
fn pair_free_subsets(frame: &Frame, n: usize) -> Vec<Vec<PointId>> {
    let pairs = frame.pairs();
    debug_assert_eq!(pairs.len(), n);
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let subset: Vec<PointId> = pairs
            .iter()
            .enumerate()
            .map(|(b, &(x, y))| if mask >> b & 1 == 0 { x } else { y })
            .collect();
        out.push(subset);
    }
    out
}

/// The apartment of `G_k` associated to a frame: spans of all admissible
/// (k+1)-subsets, `2^(k+1) * C(n, k+1)` members.
pub fn apartment_of(ps: &PolarSpace, frame: &Frame, k: usize) -> Result<Apartment> {
    let n = ps.rank();
    if k >= n {
        return Err(Error::DimOutOfRange { k, max: n - 1 });
    }
    let pairs = frame.pairs();
    let mut members = BTreeSet::new();
    for combo in combinations(n, k + 1) {
        for mask in 0u32..(1 << (k + 1)) {
            let parts: Vec<&Subspace> = combo
                .iter()
                .enumerate()
                .map(|(b, &pi)| {
                    let (x, y) = pairs[pi];
                    ps.point(if mask >> b & 1 == 0 { x } else { y })
                })
                .collect();
            let span = ps.span_many(&parts)?;
            if ps.local_pdim(&span) != k as i64 || !ps.is_singular(&span) {
                return Err(Error::Inconsistent(
                    "frame subset spans a subspace of the wrong dimension".into(),
                ));
            }
            members.insert(span);
        }
    }
    let members: Vec<Subspace> = members.into_iter().collect();
    let expected = (1usize << (k + 1)) * binomial(n, k + 1);
    if members.len() != expected {
        return Err(Error::Inconsistent(format!(
            "apartment has {} members, expected {}",
            members.len(),
            expected
        )));
    }
    Ok(Apartment {
        frame: frame.clone(),
        k,
        members,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

// ---- frame search ---------------------------------------------------------------

/// Extend a partial point set to a full frame by deterministic backtracking.
/// Candidates must stay collinear to all chosen points except at most one,
/// which becomes the sigma-partner.
pub fn complete_to_frame(ps: &PolarSpace, seed: &[PointId]) -> Result<Frame> {
    let mut chosen: Vec<PointId> = seed.to_vec();
    chosen.sort_unstable();
    chosen.dedup();
    if chosen.len() != seed.len() {
        return Err(Error::InvalidFrame("seed contains duplicates".into()));
    }
    if !matching_compatible(ps, &chosen) {
        return Err(Error::InvalidFrame(
            "seed already violates the unique-partner condition".into(),
        ));
    }
    let mut work = chosen;
    if search_completion(ps, &mut work) {
        validate_frame(ps, &work)
    } else {
        Err(Error::FrameSearchExhausted)
    }
}

fn matching_compatible(ps: &PolarSpace, set: &[PointId]) -> bool {
    set.iter().all(|&p| {
        set.iter()
            .filter(|&&q| q != p && !ps.collinear(p, q))
            .count()
            <= 1
    })
}

/// Can `cand` join `set` under the partial-matching rule?
fn can_join(ps: &PolarSpace, set: &[PointId], cand: PointId) -> bool {
    if set.contains(&cand) {
        return false;
    }
    let mut partner = None;
    for &p in set {
        if !ps.collinear(p, cand) {
            if partner.is_some() {
                return false;
            }
            // p must still be unmatched within the set
            if set.iter().any(|&q| q != p && !ps.collinear(p, q)) {
                return false;
            }
            partner = Some(p);
        }
    }
    true
}

fn search_completion(ps: &PolarSpace, set: &mut Vec<PointId>) -> bool {
    let n = ps.rank();
    if set.len() == 2 * n {
        return validate_frame(ps, set).is_ok();
    }
    // forced move: the first unmatched point needs its partner next
    let unmatched = set
        .iter()
        .copied()
        .find(|&p| set.iter().all(|&q| q == p || ps.collinear(p, q)));
    let candidates: Vec<PointId> = match unmatched {
        Some(p) => (0..ps.num_points() as PointId)
            .filter(|&c| p != c && !ps.collinear(p, c) && can_join(ps, set, c))
            .collect(),
        None => (0..ps.num_points() as PointId)
            .filter(|&c| can_join(ps, set, c))
            .collect(),
    };
    for c in candidates {
        // light independence prune: c must not lie in the span of the
        // chosen points it is collinear with
        let collinear_part: Vec<&Subspace> = set
            .iter()
            .filter(|&&p| ps.collinear(p, c))
            .map(|&p| ps.point(p))
            .collect();
        if !collinear_part.is_empty() {
            let span = ps.span_many(&collinear_part).unwrap();
            if span.contains(ps.point(c)).unwrap() {
                continue;
            }
        }
        set.push(c);
        if search_completion(ps, set) {
            return true;
        }
        set.pop();
    }
    false
}

/// A frame whose subsets span both `x` and `y` (the frame property).  The
/// result is deterministic: the first solution in canonical search order.
pub fn find_common_frame(ps: &PolarSpace, x: &Subspace, y: &Subspace) -> Result<Frame> {
    if !ps.is_singular(x) || !ps.is_singular(y) {
        return Err(Error::NotSingular);
    }
    if ps.is_thin() && ps.residue_base().is_none() {
        // the unique frame is the whole point set
        return validate_frame(ps, &(0..ps.num_points() as PointId).collect::<Vec<_>>());
    }
    let meet = x.intersect(y)?;
    // spanning goals, innermost first
    let goals = [&meet, x, y];
    let mut chosen: Vec<PointId> = Vec::new();
    if !search_goals(ps, &goals, 0, &mut chosen) {
        return Err(Error::FrameSearchExhausted);
    }
    let frame = complete_to_frame(ps, &chosen)?;
    for target in [x, y] {
        debug_assert!(spanned_by_frame_subset(ps, &frame, target));
    }
    Ok(frame)
}

/// Choose points goal by goal so that each goal subspace is spanned by
/// chosen points inside it, keeping the partial-matching rule; then hand
/// over to frame completion.
fn search_goals(
    ps: &PolarSpace,
    goals: &[&Subspace; 3],
    gi: usize,
    chosen: &mut Vec<PointId>,
) -> bool {
    if gi == goals.len() {
        let mut work = chosen.clone();
        if search_completion(ps, &mut work) {
            *chosen = work;
            return true;
        }
        return false;
    }
    let goal = goals[gi];
    let inside: Vec<PointId> = chosen
        .iter()
        .copied()
        .filter(|&p| goal.contains(ps.point(p)).unwrap())
        .collect();
    let span = ps
        .span_many(&inside.iter().map(|&p| ps.point(p)).collect::<Vec<_>>())
        .unwrap();
    if ps.local_pdim(&span) == ps.local_pdim(goal) {
        return search_goals(ps, goals, gi + 1, chosen);
    }
    for c in ps.point_support(goal) {
        if span.contains(ps.point(c)).unwrap() || !can_join(ps, chosen, c) {
            continue;
        }
        chosen.push(c);
        if search_goals(ps, goals, gi, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn spanned_by_frame_subset(ps: &PolarSpace, frame: &Frame, target: &Subspace) -> bool {
    let inside: Vec<&Subspace> = frame
        .points
        .iter()
        .filter(|&&p| target.contains(ps.point(p)).unwrap())
        .map(|&p| ps.point(p))
        .collect();
    ps.span_many(&inside).map(|s| &s == target).unwrap_or(false)
}

/// Enumerate every frame, each exactly once, by anchored pair extension:
/// the anchor of each successive pair is the least remaining frame point.
pub fn enumerate_frames(ps: &PolarSpace) -> Result<Vec<Frame>> {
    let n = ps.rank();
    let mut out = Vec::new();
    let all: Vec<PointId> = (0..ps.num_points() as PointId).collect();
    let mut pairs: Vec<(PointId, PointId)> = Vec::with_capacity(n);
    enumerate_rec(ps, &all, &mut pairs, n, &mut out)?;
    Ok(out)
}

fn enumerate_rec(
    ps: &PolarSpace,
    pool: &[PointId],
    pairs: &mut Vec<(PointId, PointId)>,
    n: usize,
    out: &mut Vec<Frame>,
) -> Result<()> {
    if pairs.len() == n {
        let pts: Vec<PointId> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        out.push(validate_frame(ps, &pts)?);
        return Ok(());
    }
    for (ai, &a) in pool.iter().enumerate() {
        // a is the least point of the remaining frame, so later points all
        // come from the pool after it
        for &b in &pool[ai + 1..] {
            if ps.collinear(a, b) {
                continue;
            }
            let next_pool: Vec<PointId> = pool[ai + 1..]
                .iter()
                .copied()
                .filter(|&c| c != b && ps.collinear(a, c) && ps.collinear(b, c))
                .filter(|&c| {
                    // independence prune within the collinear side
                    let collinear_part: Vec<&Subspace> = pairs
                        .iter()
                        .flat_map(|&(x, y)| [x, y])
                        .chain([a, b])
                        .filter(|&p| ps.collinear(p, c))
                        .map(|p| ps.point(p))
                        .collect();
                    let span = ps.span_many(&collinear_part).unwrap();
                    !span.contains(ps.point(c)).unwrap()
                })
                .collect();
            if next_pool.len() < 2 * (n - pairs.len() - 1) {
                continue;
            }
            pairs.push((a, b));
            enumerate_rec(ps, &next_pool, pairs, n, out)?;
            pairs.pop();
        }
    }
    Ok(())
}

// ---- apartment detection ------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub enum ApartmentCheck {
    Accepted { frame: Frame },
    Rejected { reason: String },
}

impl ApartmentCheck {
    pub fn is_accepted(&self) -> bool {
        matches!(self, ApartmentCheck::Accepted { .. })
    }
}

/// Decide whether a vertex set is an apartment: recover the minimal point
/// support by iterated pairwise intersection, validate it as a frame, and
/// compare the member list with the frame's own apartment.
pub fn is_apartment(g: &GrassmannGraph, member_ids: &[VertexId]) -> Result<ApartmentCheck> {
    let ps = g.geometry();
    let n = ps.rank();
    let mut members: Vec<Subspace> = Vec::with_capacity(member_ids.len());
    for &v in member_ids {
        if v as usize >= g.len() {
            return Err(Error::VertexOutOfRange(v));
        }
        members.push(g.vertex(v).clone());
    }
    let mut sorted = members.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != members.len() {
        return Ok(ApartmentCheck::Rejected {
            reason: "duplicate members".into(),
        });
    }

    // closure of the member set under pairwise intersection
    let mut closure: BTreeSet<Subspace> = sorted.iter().cloned().collect();
    loop {
        let snapshot: Vec<Subspace> = closure.iter().cloned().collect();
        let before = closure.len();
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i + 1..] {
                let m = a.intersect(b)?;
                if ps.local_pdim(&m) >= 0 {
                    closure.insert(m);
                }
            }
        }
        if closure.len() == before {
            break;
        }
    }
    let support: Vec<PointId> = closure
        .iter()
        .filter(|s| ps.local_pdim(s) == 0)
        .filter_map(|s| ps.point_id(s))
        .collect();
    if support.len() != 2 * n {
        return Ok(ApartmentCheck::Rejected {
            reason: format!("support has {} points, expected {}", support.len(), 2 * n),
        });
    }
    let frame = match validate_frame(ps, &support) {
        Ok(f) => f,
        Err(e) => {
            return Ok(ApartmentCheck::Rejected {
                reason: format!("support is not a frame: {e}"),
            })
        }
    };
    let apartment = apartment_of(ps, &frame, g.k())?;
    if apartment.members == sorted {
        Ok(ApartmentCheck::Accepted { frame })
    } else {
        Ok(ApartmentCheck::Rejected {
            reason: "member set differs from the frame's apartment".into(),
        })
    }
}

/// Point images for the thin symbols `+1,-1,...,+n,-n` in frame-pair order.
pub fn frame_point_images(frame: &Frame) -> Vec<PointId> {
    let pairs = frame.pairs();
    let mut out = Vec::with_capacity(2 * pairs.len());
    for &(a, b) in &pairs {
        out.push(a);
        out.push(b);
    }
    out
}

/// Convenience: the canonical (first-enumerated) frame of a geometry.
pub fn first_frame(ps: &Arc<PolarSpace>) -> Result<Frame> {
    if ps.is_thin() && ps.residue_base().is_none() {
        return validate_frame(ps, &(0..ps.num_points() as PointId).collect::<Vec<_>>());
    }
    let empty = ps.empty();
    find_common_frame(ps, &empty, &empty)
}
