//! Lines, stars, tops and big stars of a polar Grassmannian; maximal-clique
//! enumeration and classification; triangles and regular pairs of triangles.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannGraph, VertexId};

/// A vertex-set generator: the defining subspaces of a line, star, top, big
/// star, or (for the point layer) a maximal singular subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueSpec {
    Line { s: Subspace, u: Subspace },
    Star { s: Subspace, u: Subspace },
    Top { u: Subspace },
    BigStar { s: Subspace },
    MaximalSingular { m: Subspace },
}

/// Classification verdict for a clique (or clique fragment).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CliqueLabel {
    Line { s: Subspace, u: Subspace },
    Star { s: Subspace, u: Subspace },
    Top { u: Subspace },
    BigStar { s: Subspace },
    MaximalSingular { m: Subspace },
    Unclassified,
}

/// Materialize the member set of a generator as sorted vertex ids.
pub fn make_clique(g: &GrassmannGraph, spec: &CliqueSpec) -> Result<Vec<VertexId>> {
    let ps = g.geometry();
    let k = g.k() as i64;
    let n = ps.rank() as i64;
    let ids = |subs: Vec<Subspace>| -> Result<Vec<VertexId>> {
        let mut out: Vec<VertexId> = Vec::with_capacity(subs.len());
        for s in subs {
            out.push(
                g.vertex_id(&s)
                    .ok_or_else(|| Error::Inconsistent(format!("{} is not a vertex", s.label())))?,
            );
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    };
    match spec {
        CliqueSpec::Line { s, u } | CliqueSpec::Star { s, u } => {
            let want_u = if matches!(spec, CliqueSpec::Line { .. }) {
                k + 1
            } else {
                n - 1
            };
            if ps.local_pdim(s) != k - 1 || ps.local_pdim(u) != want_u {
                return Err(Error::WrongDimension {
                    expected: want_u,
                    got: ps.local_pdim(u),
                });
            }
            if !ps.is_singular(u) || !u.contains(s)? {
                return Err(Error::NotIncident);
            }
            let s_pts: BTreeSet<u32> = ps.point_support(s).into_iter().collect();
            let mut members = Vec::new();
            for p in ps.point_support(u) {
                if s_pts.contains(&p) {
                    continue;
                }
                members.push(s.span(ps.point(p))?);
            }
            ids(members)
        }
        CliqueSpec::Top { u } => {
            if ps.local_pdim(u) != k + 1 {
                return Err(Error::WrongDimension {
                    expected: k + 1,
                    got: ps.local_pdim(u),
                });
            }
            ids(ps.singular_within(u, g.k())?)
        }
        CliqueSpec::BigStar { s } => {
            if ps.local_pdim(s) != k - 1 {
                return Err(Error::WrongDimension {
                    expected: k - 1,
                    got: ps.local_pdim(s),
                });
            }
            if !ps.is_singular(s) {
                return Err(Error::NotSingular);
            }
            ids(ps.extensions_of(s))
        }
        CliqueSpec::MaximalSingular { m } => {
            if g.k() != 0 {
                return Err(Error::Precondition(
                    "maximal-singular cliques live in the point layer".into(),
                ));
            }
            if ps.local_pdim(m) != n - 1 || !ps.is_singular(m) {
                return Err(Error::NotSingular);
            }
            ids(ps.point_support(m).into_iter().map(|p| ps.point(p).clone()).collect())
        }
    }
}

// ---- maximal cliques ---------------------------------------------------------

/// All maximal cliques, via pivoted Bron–Kerbosch over a degeneracy order.
/// Each clique comes out sorted and the list itself is sorted, so the result
/// is deterministic for a given graph.
pub fn enumerate_maximal_cliques(g: &GrassmannGraph) -> Vec<Vec<VertexId>> {
    let order = degeneracy_order(g);
    let mut position = vec![0usize; g.len()];
    for (pos, &v) in order.iter().enumerate() {
        position[v as usize] = pos;
    }
    let mut cliques = Vec::new();
    for &v in &order {
        let mut p = Vec::new();
        let mut x = Vec::new();
        for &w in g.neighbors(v) {
            if position[w as usize] > position[v as usize] {
                p.push(w);
            } else {
                x.push(w);
            }
        }
        bron_kerbosch(g, &mut vec![v], p, x, &mut cliques);
    }
    for c in &mut cliques {
        c.sort_unstable();
    }
    cliques.sort();
    cliques
}

fn degeneracy_order(g: &GrassmannGraph) -> Vec<VertexId> {
    let n = g.len();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v as VertexId)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        removed[v] = true;
        order.push(v as VertexId);
        for &w in g.neighbors(v as VertexId) {
            if !removed[w as usize] {
                deg[w as usize] -= 1;
            }
        }
    }
    order
}

fn bron_kerbosch(
    g: &GrassmannGraph,
    r: &mut Vec<VertexId>,
    p: Vec<VertexId>,
    x: Vec<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    if p.is_empty() {
        return;
    }
    // pivot: the candidate with the most neighbors inside P
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| (p.iter().filter(|&&v| g.adjacent(u, v)).count(), u))
        .unwrap();
    let branch: Vec<VertexId> = p.iter().copied().filter(|&v| !g.adjacent(pivot, v)).collect();
    let mut p = p;
    let mut x = x;
    for v in branch {
        let np: Vec<VertexId> = p.iter().copied().filter(|&w| g.adjacent(v, w)).collect();
        let nx: Vec<VertexId> = x.iter().copied().filter(|&w| g.adjacent(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

// ---- classification ------------------------------------------------------------

fn common_meet(g: &GrassmannGraph, members: &[VertexId]) -> Result<Subspace> {
    let mut acc = g.vertex(members[0]).clone();
    for &m in &members[1..] {
        acc = acc.intersect(g.vertex(m))?;
    }
    Ok(acc)
}

fn common_span(g: &GrassmannGraph, members: &[VertexId]) -> Result<Subspace> {
    let mut acc = g.vertex(members[0]).clone();
    for &m in &members[1..] {
        acc = acc.span(g.vertex(m))?;
    }
    Ok(acc)
}

/// Classify a clique by the dimension signature of its common intersection
/// and span.  Maximal cliques land on `Star`/`Top` (`MaximalSingular` for the
/// point layer, `BigStar` for dual polar lines); `Unclassified` is reserved
/// for fragments that fit no template.
pub fn classify_clique(g: &GrassmannGraph, members: &[VertexId]) -> Result<CliqueLabel> {
    if members.is_empty() {
        return Err(Error::NotClique);
    }
    for (i, &a) in members.iter().enumerate() {
        if a as usize >= g.len() {
            return Err(Error::VertexOutOfRange(a));
        }
        for &b in &members[i + 1..] {
            if a == b || !g.adjacent(a, b) {
                return Err(Error::NotClique);
            }
        }
    }
    let ps = g.geometry();
    let k = g.k() as i64;
    let n = ps.rank() as i64;
    let mut sorted: Vec<VertexId> = members.to_vec();
    sorted.sort_unstable();
    let meet = common_meet(g, &sorted)?;
    let span = common_span(g, &sorted)?;
    let span_dim = ps.local_pdim(&span);
    let meet_dim = ps.local_pdim(&meet);

    if g.k() == 0 {
        if span_dim == n - 1 && ps.is_singular(&span) {
            let tmpl = make_clique(g, &CliqueSpec::MaximalSingular { m: span.clone() })?;
            if tmpl == sorted {
                return Ok(CliqueLabel::MaximalSingular { m: span });
            }
        }
        if span_dim == 1 && ps.is_singular(&span) {
            let tmpl = make_clique(g, &CliqueSpec::Top { u: span.clone() })?;
            if tmpl == sorted {
                return Ok(CliqueLabel::Top { u: span });
            }
        }
        return Ok(CliqueLabel::Unclassified);
    }

    if span_dim == k + 1 && ps.is_singular(&span) {
        let tmpl = make_clique(g, &CliqueSpec::Top { u: span.clone() })?;
        if tmpl == sorted {
            return Ok(CliqueLabel::Top { u: span });
        }
        if meet_dim == k - 1 {
            let line = make_clique(
                g,
                &CliqueSpec::Line {
                    s: meet.clone(),
                    u: span.clone(),
                },
            )?;
            if line == sorted {
                return Ok(CliqueLabel::Line { s: meet, u: span });
            }
        }
        return Ok(CliqueLabel::Unclassified);
    }
    if meet_dim == k - 1 {
        if span_dim == n - 1 && ps.is_singular(&span) {
            let tmpl = make_clique(
                g,
                &CliqueSpec::Star {
                    s: meet.clone(),
                    u: span.clone(),
                },
            )?;
            if tmpl == sorted {
                return Ok(CliqueLabel::Star { s: meet, u: span });
            }
        }
        let big = make_clique(g, &CliqueSpec::BigStar { s: meet.clone() })?;
        if big == sorted {
            return Ok(CliqueLabel::BigStar { s: meet });
        }
    }
    Ok(CliqueLabel::Unclassified)
}

// ---- triangles -------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TriangleLabel {
    /// Triple intersection of dimension k-1, span of dimension k+2.
    StarTriangle { s: Subspace },
    /// Triple intersection of dimension k-2, span of dimension k+1.
    TopTriangle { u: Subspace },
    /// The three vertices lie on a common line of the Grassmannian.
    NotTriangle,
}

/// Classify a pairwise-adjacent triple per the star/top dimension signature,
/// cross-validating both the intersection and the span dimension.
pub fn classify_triangle(g: &GrassmannGraph, tri: [VertexId; 3]) -> Result<TriangleLabel> {
    let [x, y, z] = tri;
    if x == y || y == z || x == z {
        return Err(Error::NotClique);
    }
    if !(g.adjacent(x, y) && g.adjacent(y, z) && g.adjacent(x, z)) {
        return Err(Error::NotClique);
    }
    let ps = g.geometry();
    let k = g.k() as i64;
    let n = ps.rank() as i64;
    let meet = common_meet(g, &tri.to_vec())?;
    let meet_dim = ps.local_pdim(&meet);

    if k == n - 1 {
        // dual polar graph: lines are big stars over (n-2)-dimensional
        // subspaces, and adjacent triples always share one
        if meet_dim == n - 2 {
            return Ok(TriangleLabel::NotTriangle);
        }
        return Err(Error::Inconsistent(format!(
            "adjacent triple off a common line in a dual polar graph (meet dim {meet_dim})"
        )));
    }

    let span = common_span(g, &tri.to_vec())?;
    let span_dim = ps.local_pdim(&span);
    match (meet_dim == k - 1, span_dim - k) {
        (true, 1) => Ok(TriangleLabel::NotTriangle),
        (true, 2) => {
            if !ps.is_singular(&span) {
                return Err(Error::Inconsistent("star-triangle span is not singular".into()));
            }
            Ok(TriangleLabel::StarTriangle { s: meet })
        }
        (false, 1) if meet_dim == k - 2 => {
            if !ps.is_singular(&span) {
                return Err(Error::Inconsistent("top-triangle span is not singular".into()));
            }
            Ok(TriangleLabel::TopTriangle { u: span })
        }
        _ => Err(Error::Inconsistent(format!(
            "triple (meet {meet_dim}, span {span_dim}) fits no triangle signature at k={k}"
        ))),
    }
}

/// All pairwise-adjacent triples, sorted.
pub fn adjacent_triples(g: &GrassmannGraph) -> Vec<[VertexId; 3]> {
    let mut out = Vec::new();
    for v in 0..g.len() as VertexId {
        let nbrs = g.neighbors(v);
        for (i, &u) in nbrs.iter().enumerate() {
            if u <= v {
                continue;
            }
            for &w in &nbrs[i + 1..] {
                if w > u && g.adjacent(u, w) {
                    out.push([v, u, w]);
                }
            }
        }
    }
    out
}

// ---- regular pairs ------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RegularPairClass {
    /// Two star-triangles around a common apex `s`, spanning `u` and
    /// `u_prime` with `u ∩ u_prime = s`.
    Type1 {
        s: Subspace,
        u: Subspace,
        u_prime: Subspace,
    },
    /// A star-triangle and a top-triangle; `p` is the apex point collinear
    /// to all of the top span `w`, and each star vertex is spanned by `p`
    /// and the matching pairwise intersection of the top.
    Type2 {
        p: Subspace,
        w: Subspace,
        star: [VertexId; 3],
        top: [VertexId; 3],
    },
    NotRegular { reason: String },
}

const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Classify two disjoint triangles: find an index matching under which
/// cross-adjacency holds exactly off the diagonal, then verify the type-1 or
/// type-2 configuration identities.
pub fn classify_regular_pair(
    g: &GrassmannGraph,
    tri_a: [VertexId; 3],
    tri_b: [VertexId; 3],
) -> Result<RegularPairClass> {
    for &a in &tri_a {
        if tri_b.contains(&a) {
            return Err(Error::BadTrianglePair("triangles overlap".into()));
        }
    }
    let la = classify_triangle(g, tri_a)?;
    let lb = classify_triangle(g, tri_b)?;
    if la == TriangleLabel::NotTriangle || lb == TriangleLabel::NotTriangle {
        return Err(Error::BadTrianglePair("input triple lies on a line".into()));
    }

    // search the 6 matchings for the off-diagonal adjacency pattern
    let matched = PERMS3.iter().find(|perm| {
        (0..3).all(|i| (0..3).all(|j| g.adjacent(tri_a[i], tri_b[perm[j]]) == (i != j)))
    });
    let Some(perm) = matched else {
        return Ok(RegularPairClass::NotRegular {
            reason: "cross-adjacency pattern fails for every index matching".into(),
        });
    };
    let b = [tri_b[perm[0]], tri_b[perm[1]], tri_b[perm[2]]];
    let ps = g.geometry();
    let k = g.k() as i64;

    match (&la, &lb) {
        (TriangleLabel::StarTriangle { s: sa }, TriangleLabel::StarTriangle { s: sb }) => {
            if sa != sb {
                return Err(Error::Inconsistent(
                    "regular star/star pair with distinct apexes".into(),
                ));
            }
            let u = common_span(g, &tri_a.to_vec())?;
            let u_prime = common_span(g, &b.to_vec())?;
            if u.intersect(&u_prime)? != *sa {
                return Err(Error::Inconsistent(
                    "type-1 spans do not meet exactly in the apex".into(),
                ));
            }
            // stated consequences: every point of U \ S has a non-collinear
            // point in U', and symmetrically
            for (from, to) in [(&u, &u_prime), (&u_prime, &u)] {
                let s_pts: BTreeSet<u32> = ps.point_support(sa).into_iter().collect();
                for q in ps.point_support(from) {
                    if s_pts.contains(&q) {
                        continue;
                    }
                    if ps.collinear_all(q, to) {
                        return Err(Error::Inconsistent(
                            "type-1 perp consequence fails: a point sees all of the other span"
                                .into(),
                        ));
                    }
                }
            }
            Ok(RegularPairClass::Type1 {
                s: sa.clone(),
                u,
                u_prime,
            })
        }
        (TriangleLabel::StarTriangle { s }, TriangleLabel::TopTriangle { .. })
        | (TriangleLabel::TopTriangle { .. }, TriangleLabel::StarTriangle { s }) => {
            let (star, top) = if matches!(la, TriangleLabel::StarTriangle { .. }) {
                (tri_a, b)
            } else {
                (b, tri_a)
            };
            let w = common_span(g, &top.to_vec())?;
            debug_assert_eq!(ps.local_pdim(&w), k + 1);
            // apex point: in the star apex but not in the top span
            let w_pts: BTreeSet<u32> = ps.point_support(&w).into_iter().collect();
            let candidates: Vec<u32> = ps
                .point_support(s)
                .into_iter()
                .filter(|p| !w_pts.contains(p))
                .collect();
            for p in candidates {
                if !ps.collinear_all(p, &w) {
                    continue;
                }
                let p_sub = ps.point(p).clone();
                let identities_hold = (0..3).all(|i| {
                    let (j, l) = match i {
                        0 => (1, 2),
                        1 => (0, 2),
                        _ => (0, 1),
                    };
                    let pair_meet = g.vertex(top[j]).intersect(g.vertex(top[l])).unwrap();
                    let built = p_sub.span(&pair_meet).unwrap();
                    &built == g.vertex(star[i])
                });
                if identities_hold {
                    return Ok(RegularPairClass::Type2 { p: p_sub, w, star, top });
                }
            }
            Err(Error::Inconsistent(
                "type-2 pattern without a verifying apex point".into(),
            ))
        }
        _ => Err(Error::Inconsistent("regular pair of two top-triangles".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::GeometryDescriptor;
    use crate::polar::PolarSpace;
    use std::sync::Arc;

    fn graph(s: &str, k: usize) -> Arc<GrassmannGraph> {
        let ps = PolarSpace::from_descriptor(&GeometryDescriptor::parse(s).unwrap()).unwrap();
        GrassmannGraph::build(&ps, k).unwrap()
    }

    fn thin_vertex(g: &GrassmannGraph, syms: &[i16]) -> VertexId {
        let rank = g.geometry().rank() as u16;
        g.vertex_id(&Subspace::thin(rank, syms).unwrap()).unwrap()
    }

    #[test]
    fn top_and_star_in_thin_n4_k1() {
        let g = graph("thin:4", 1);
        let u = Subspace::thin(4, &[1, 2, 3]).unwrap();
        let top = make_clique(&g, &CliqueSpec::Top { u: u.clone() }).unwrap();
        assert_eq!(top.len(), 3);
        for &v in &top {
            assert_eq!(g.vertex(v).symbols().len(), 2);
            assert!(u.contains(g.vertex(v)).unwrap());
        }

        let s = Subspace::thin(4, &[1]).unwrap();
        let m = Subspace::thin(4, &[1, 2, 3, 4]).unwrap();
        let star = make_clique(&g, &CliqueSpec::Star { s: s.clone(), u: m }).unwrap();
        assert_eq!(star.len(), 3);
        for &v in &star {
            assert!(g.vertex(v).contains(&s).unwrap());
        }
    }

    #[test]
    fn fano_top_in_sp62() {
        let g = graph("sp:6:2", 1);
        let plane = g.geometry().enumerate_singular(2).unwrap()[0].clone();
        let top = make_clique(&g, &CliqueSpec::Top { u: plane }).unwrap();
        assert_eq!(top.len(), 7);
        for (i, &a) in top.iter().enumerate() {
            for &b in &top[i + 1..] {
                assert!(g.adjacent(a, b));
            }
        }
    }

    #[test]
    fn bad_params_are_rejected() {
        let g = graph("thin:4", 1);
        let s = Subspace::thin(4, &[1]).unwrap();
        let not_max = Subspace::thin(4, &[1, 2, 3]).unwrap();
        assert!(make_clique(&g, &CliqueSpec::Star { s: s.clone(), u: not_max }).is_err());
        // non-incident line parameters
        let u = Subspace::thin(4, &[2, 3, 4]).unwrap();
        assert!(make_clique(&g, &CliqueSpec::Line { s, u }).is_err());
    }

    #[test]
    fn hypercube_maximal_cliques_are_the_edges() {
        let g = graph("thin:4", 3);
        let cliques = enumerate_maximal_cliques(&g);
        assert_eq!(cliques.len(), 32); // 16 vertices * 4 / 2
        for c in &cliques {
            assert_eq!(c.len(), 2);
            let label = classify_clique(&g, c).unwrap();
            assert!(matches!(label, CliqueLabel::BigStar { .. }), "{label:?}");
        }
    }

    #[test]
    fn sp62_k1_maximal_cliques_are_tops_of_size_seven() {
        let g = graph("sp:6:2", 1);
        let cliques = enumerate_maximal_cliques(&g);
        assert_eq!(cliques.len(), 135);
        for c in &cliques {
            assert_eq!(c.len(), 7);
            assert!(matches!(
                classify_clique(&g, c).unwrap(),
                CliqueLabel::Top { .. }
            ));
        }
    }

    #[test]
    fn sp62_k0_maximal_cliques_are_planes() {
        let g = graph("sp:6:2", 0);
        let cliques = enumerate_maximal_cliques(&g);
        assert_eq!(cliques.len(), 135);
        let ps = g.geometry();
        let planes = ps.enumerate_singular(2).unwrap();
        let mut from_planes: Vec<Vec<VertexId>> = planes
            .iter()
            .map(|p| {
                let mut v = ps.point_support(p);
                v.sort_unstable();
                v
            })
            .collect();
        from_planes.sort();
        assert_eq!(cliques, from_planes);
        for c in &cliques {
            assert!(matches!(
                classify_clique(&g, c).unwrap(),
                CliqueLabel::MaximalSingular { .. }
            ));
        }
    }

    #[test]
    fn maximal_cliques_match_star_top_generators_thin5_k1() {
        // independent cross-check of the enumerator: every maximal clique of
        // Γ_1 (1 <= k <= n-3) is a star or a top generated directly
        let g = graph("thin:5", 1);
        let ps = g.geometry();
        let mut generated: Vec<Vec<VertexId>> = Vec::new();
        for u in ps.enumerate_singular(2).unwrap().iter() {
            generated.push(make_clique(&g, &CliqueSpec::Top { u: u.clone() }).unwrap());
        }
        for s in ps.enumerate_singular(0).unwrap().iter() {
            for m in ps.enumerate_singular(4).unwrap().iter() {
                if m.contains(s).unwrap() {
                    generated.push(
                        make_clique(&g, &CliqueSpec::Star { s: s.clone(), u: m.clone() }).unwrap(),
                    );
                }
            }
        }
        generated.sort();
        generated.dedup();
        let enumerated = enumerate_maximal_cliques(&g);
        assert_eq!(enumerated, generated);
        let stars = enumerated
            .iter()
            .filter(|c| matches!(classify_clique(&g, c).unwrap(), CliqueLabel::Star { .. }))
            .count();
        let tops = enumerated.len() - stars;
        assert_eq!(stars, 10 * 16);
        assert_eq!(tops, 80);
    }

    #[test]
    fn different_type_maximal_cliques_intersect_small() {
        // star ∩ top is empty, a single vertex, or a line
        let g = graph("thin:4", 1);
        let cliques = enumerate_maximal_cliques(&g);
        let labeled: Vec<(Vec<VertexId>, CliqueLabel)> = cliques
            .iter()
            .map(|c| (c.clone(), classify_clique(&g, c).unwrap()))
            .collect();
        for (ca, la) in &labeled {
            for (cb, lb) in &labeled {
                let star_top = matches!(la, CliqueLabel::Star { .. })
                    && matches!(lb, CliqueLabel::Top { .. });
                if !star_top {
                    continue;
                }
                let inter: Vec<VertexId> = ca.iter().copied().filter(|v| cb.contains(v)).collect();
                if inter.len() <= 1 {
                    continue;
                }
                let label = classify_clique(&g, &inter).unwrap();
                assert!(matches!(label, CliqueLabel::Line { .. }), "{inter:?} -> {label:?}");
            }
        }
    }

    #[test]
    fn triangle_classification_examples() {
        let g = graph("thin:4", 1);
        let top_tri = [
            thin_vertex(&g, &[1, 2]),
            thin_vertex(&g, &[1, 3]),
            thin_vertex(&g, &[2, 3]),
        ];
        match classify_triangle(&g, top_tri).unwrap() {
            TriangleLabel::TopTriangle { u } => {
                assert_eq!(u, Subspace::thin(4, &[1, 2, 3]).unwrap());
            }
            other => panic!("expected top triangle, got {other:?}"),
        }

        let star_tri = [
            thin_vertex(&g, &[1, 2]),
            thin_vertex(&g, &[1, 3]),
            thin_vertex(&g, &[1, 4]),
        ];
        match classify_triangle(&g, star_tri).unwrap() {
            TriangleLabel::StarTriangle { s } => {
                assert_eq!(s, Subspace::thin(4, &[1]).unwrap());
            }
            other => panic!("expected star triangle, got {other:?}"),
        }
    }

    #[test]
    fn collinear_triples_are_not_triangles() {
        // three vertices of one line of G_1(Sp(6,2))
        let g = graph("sp:6:2", 1);
        let ps = g.geometry();
        let planes = ps.enumerate_singular(2).unwrap();
        let s = ps.point(0).clone();
        let plane = planes.iter().find(|p| p.contains(&s).unwrap()).unwrap();
        let line = make_clique(&g, &CliqueSpec::Line { s, u: plane.clone() }).unwrap();
        assert_eq!(line.len(), 3);
        assert_eq!(
            classify_triangle(&g, [line[0], line[1], line[2]]).unwrap(),
            TriangleLabel::NotTriangle
        );
    }

    #[test]
    fn every_adjacent_triple_classifies_thin4_k1() {
        let g = graph("thin:4", 1);
        let triples = adjacent_triples(&g);
        assert!(!triples.is_empty());
        let mut stars = 0;
        let mut tops = 0;
        for t in triples {
            match classify_triangle(&g, t).unwrap() {
                TriangleLabel::StarTriangle { .. } => stars += 1,
                TriangleLabel::TopTriangle { .. } => tops += 1,
                TriangleLabel::NotTriangle => {}
            }
        }
        assert!(stars > 0 && tops > 0);
    }

    #[test]
    fn type2_regular_pair_in_thin4() {
        let g = graph("thin:4", 1);
        let top = [
            thin_vertex(&g, &[2, 3]),
            thin_vertex(&g, &[1, 3]),
            thin_vertex(&g, &[1, 2]),
        ];
        let star = [
            thin_vertex(&g, &[4, 1]),
            thin_vertex(&g, &[4, 2]),
            thin_vertex(&g, &[4, 3]),
        ];
        match classify_regular_pair(&g, star, top).unwrap() {
            RegularPairClass::Type2 { p, w, .. } => {
                assert_eq!(p, Subspace::thin(4, &[4]).unwrap());
                assert_eq!(w, Subspace::thin(4, &[1, 2, 3]).unwrap());
            }
            other => panic!("expected type 2, got {other:?}"),
        }
    }

    #[test]
    fn type1_regular_pair_in_thin4() {
        let g = graph("thin:4", 1);
        let a = [
            thin_vertex(&g, &[1, 2]),
            thin_vertex(&g, &[1, 3]),
            thin_vertex(&g, &[1, 4]),
        ];
        let b = [
            thin_vertex(&g, &[1, -2]),
            thin_vertex(&g, &[1, -3]),
            thin_vertex(&g, &[1, -4]),
        ];
        match classify_regular_pair(&g, a, b).unwrap() {
            RegularPairClass::Type1 { s, u, u_prime } => {
                assert_eq!(s, Subspace::thin(4, &[1]).unwrap());
                assert_eq!(u, Subspace::thin(4, &[1, 2, 3, 4]).unwrap());
                assert_eq!(u_prime, Subspace::thin(4, &[1, -2, -3, -4]).unwrap());
            }
            other => panic!("expected type 1, got {other:?}"),
        }
    }

    #[test]
    fn type1_regular_pair_of_point_triangles_in_sp62() {
        // two disjoint planes spanned by the two halves of a hyperbolic
        // basis; opposite basis points are the only non-collinear pairs
        let g = graph("sp:6:2", 0);
        let ps = g.geometry();
        let pt = |v: Vec<u8>| {
            let s = Subspace::linear(2, 6, &[v]).unwrap();
            ps.point_id(&s).unwrap()
        };
        let e = [
            pt(vec![1, 0, 0, 0, 0, 0]),
            pt(vec![0, 0, 1, 0, 0, 0]),
            pt(vec![0, 0, 0, 0, 1, 0]),
        ];
        let f = [
            pt(vec![0, 1, 0, 0, 0, 0]),
            pt(vec![0, 0, 0, 1, 0, 0]),
            pt(vec![0, 0, 0, 0, 0, 1]),
        ];
        match classify_regular_pair(&g, e, f).unwrap() {
            RegularPairClass::Type1 { s, .. } => assert!(s.is_empty()),
            other => panic!("expected type 1, got {other:?}"),
        }
    }

    #[test]
    fn star_and_its_opposite_top_form_a_regular_pair() {
        // each star vertex is adjacent to exactly two vertices of the top
        let g = graph("thin:4", 1);
        let a = [
            thin_vertex(&g, &[1, 2]),
            thin_vertex(&g, &[1, 3]),
            thin_vertex(&g, &[1, 4]),
        ];
        let b = [
            thin_vertex(&g, &[2, 3]),
            thin_vertex(&g, &[2, 4]),
            thin_vertex(&g, &[3, 4]),
        ];
        assert!(matches!(
            classify_regular_pair(&g, a, b).unwrap(),
            RegularPairClass::Type2 { .. }
        ));
    }

    #[test]
    fn pattern_violations_are_not_regular() {
        let g = graph("thin:4", 1);
        let a = [
            thin_vertex(&g, &[1, 2]),
            thin_vertex(&g, &[1, 3]),
            thin_vertex(&g, &[2, 3]),
        ];
        // {1,3} is non-adjacent to both {1,-3} and {4,-3}
        let b = [
            thin_vertex(&g, &[1, 4]),
            thin_vertex(&g, &[1, -3]),
            thin_vertex(&g, &[4, -3]),
        ];
        match classify_regular_pair(&g, a, b).unwrap() {
            RegularPairClass::NotRegular { .. } => {}
            other => panic!("expected not-regular, got {other:?}"),
        }
        assert!(classify_regular_pair(&g, a, a).is_err());
    }
}
