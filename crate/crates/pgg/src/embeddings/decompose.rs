//! Decomposition of an isometric embedding into a base subspace and a
//! collinearity preserving point injection.
//!
//! The cascade descends one Grassmann layer at a time: the image of each
//! `(i-1)`-dimensional subspace is defined as the intersection of the images
//! of its big star.  When every stage keeps the right dimension and stays
//! injective, the bottom map is a point injection into the residue of the
//! target at the recovered base, and re-inducing it must reproduce the
//! original map exactly.  Maps that are not induced by point injections are
//! expected to fail a stage, and the failing stage is reported.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::polar::{PointId, PolarSpace};

use super::{induce_map, verify_point_map, MapCheckLevel, PointMap, VertexMap};

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Base subspace of the target geometry (empty when k' = k).
    pub base: Subspace,
    /// The recovered point injection into the residue at `base`.
    pub injection: PointMap,
}

#[derive(Debug, Clone, Serialize)]
pub struct Rejection {
    /// Grassmann layer at which the cascade broke down.
    pub stage: usize,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub enum DecompositionOutcome {
    Decomposed(Decomposition),
    Rejected(Rejection),
}

impl DecompositionOutcome {
    pub fn is_decomposed(&self) -> bool {
        matches!(self, DecompositionOutcome::Decomposed(_))
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            DecompositionOutcome::Rejected(r) => Some(r),
            DecompositionOutcome::Decomposed(_) => None,
        }
    }
}

/// Run the cascade on a verified isometric embedding.
pub fn derive_decomposition(map: &VertexMap) -> Result<DecompositionOutcome> {
    let verdict = super::verify_map(map, MapCheckLevel::Isometric)?;
    if !verdict.pass {
        return Err(Error::Precondition(format!(
            "map is not isometric: {:?}",
            verdict.witness
        )));
    }
    let source_ps = map.source.geometry();
    let target_ps = map.target.geometry();
    let k = map.source.k();
    let kp = map.target.k() as i64;

    // level-k assignment as a subspace-to-subspace table
    let mut current: HashMap<Subspace, Subspace> = map
        .source
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), map.target.vertex(map.assignment[i]).clone()))
        .collect();

    for level in (1..=k).rev() {
        let lower = source_ps.enumerate_singular(level - 1)?;
        let expected = kp - (k - level) as i64 - 1;
        let mut next: HashMap<Subspace, Subspace> = HashMap::with_capacity(lower.len());
        let mut seen_images: HashMap<Subspace, Subspace> = HashMap::with_capacity(lower.len());
        for t in lower.iter() {
            // intersection of the images over the big star of t
            let mut acc: Option<Subspace> = None;
            for x in source_ps.extensions_of(t) {
                let fx = current
                    .get(&x)
                    .ok_or_else(|| Error::Inconsistent("cascade table is incomplete".into()))?;
                acc = Some(match acc {
                    None => fx.clone(),
                    Some(a) => a.intersect(fx)?,
                });
            }
            let image = acc.ok_or_else(|| Error::Inconsistent("empty big star".into()))?;
            if target_ps.local_pdim(&image) != expected {
                return Ok(DecompositionOutcome::Rejected(Rejection {
                    stage: level - 1,
                    reason: format!(
                        "big-star image of {} has dimension {}, expected {expected}",
                        t.label(),
                        target_ps.local_pdim(&image)
                    ),
                }));
            }
            if let Some(prev) = seen_images.get(&image) {
                return Ok(DecompositionOutcome::Rejected(Rejection {
                    stage: level - 1,
                    reason: format!(
                        "stage map collapses {} and {} onto {}",
                        prev.label(),
                        t.label(),
                        image.label()
                    ),
                }));
            }
            seen_images.insert(image.clone(), t.clone());
            next.insert(t.clone(), image);
        }
        current = next;
    }

    // base subspace: the common intersection of the point images when the
    // map shifts layers, empty otherwise
    let base = if kp > k as i64 {
        let mut acc: Option<Subspace> = None;
        for image in current.values() {
            acc = Some(match acc {
                None => image.clone(),
                Some(a) => a.intersect(image)?,
            });
        }
        let base = acc.unwrap();
        if target_ps.local_pdim(&base) != kp - k as i64 - 1 {
            return Ok(DecompositionOutcome::Rejected(Rejection {
                stage: 0,
                reason: format!(
                    "common intersection of point images has dimension {}, expected {}",
                    target_ps.local_pdim(&base),
                    kp - k as i64 - 1
                ),
            }));
        }
        base
    } else {
        target_ps.empty()
    };

    let residue = PolarSpace::residue(target_ps, &base)?;
    let mut assignment: Vec<PointId> = Vec::with_capacity(source_ps.num_points());
    for p in source_ps.points() {
        let image = current
            .get(p)
            .ok_or_else(|| Error::Inconsistent("point image missing from cascade".into()))?;
        match residue.point_id(image) {
            Some(id) => assignment.push(id),
            None => {
                return Ok(DecompositionOutcome::Rejected(Rejection {
                    stage: 0,
                    reason: format!(
                        "point image {} does not lie over the recovered base",
                        image.label()
                    ),
                }))
            }
        }
    }
    let injection = PointMap {
        source: Arc::clone(source_ps),
        target: residue,
        assignment,
    };
    let verdict = verify_point_map(&injection)?;
    if !verdict.pass {
        return Ok(DecompositionOutcome::Rejected(Rejection {
            stage: 0,
            reason: format!(
                "recovered point map is not collinearity preserving: {:?}",
                verdict.witness
            ),
        }));
    }

    // re-induce and require exact agreement with the input
    let reinduced = induce_map(&injection, &map.source, &map.target)?;
    if reinduced.assignment != map.assignment {
        return Ok(DecompositionOutcome::Rejected(Rejection {
            stage: k,
            reason: "re-induced map differs from the input".into(),
        }));
    }
    Ok(DecompositionOutcome::Decomposed(Decomposition {
        base,
        injection,
    }))
}
