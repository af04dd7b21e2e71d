//! Canonical subspace representation — the universal currency passed between
//! geometries, graphs and embedding checks.
//!
//! A subspace is either a linear subspace of GF(q)^d held as a reduced
//! row-echelon basis, or (for thin geometries) a set of signed symbols
//! `±1..±n` kept sorted in the order `+1, -1, +2, -2, ...`.  Two subspaces are
//! equal iff their canonical forms are identical, and every hash/ordering goes
//! through the canonical form.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::field::Field;
use super::matrix::Mat;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Subspace {
    Linear {
        q: u16,
        ambient: u16,
        /// Row-major RREF basis, `rows.len() % ambient == 0`, no zero rows.
        rows: Vec<u8>,
    },
    Thin {
        rank: u16,
        /// Sorted by `(|s|, sign)` with `+` before `-`; no zero entries.
        symbols: Vec<i16>,
    },
}

/// Sort key giving the order `+1, -1, +2, -2, ...`.
pub fn symbol_key(s: i16) -> u32 {
    (s.unsigned_abs() as u32) * 2 + (s < 0) as u32
}

impl Subspace {
    /// Canonicalize a generator list into a linear subspace (RREF, span kept).
    pub fn linear(q: u16, ambient: usize, generators: &[Vec<u8>]) -> Result<Self> {
        let f = Field::get(q)?;
        for g in generators {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: g.len(),
                });
            }
            if let Some(&bad) = g.iter().find(|&&x| x as u16 >= q) {
                return Err(Error::InvalidForm(format!(
                    "entry {bad} is not an element of GF({q})"
                )));
            }
        }
        let mut m = Mat::from_rows(ambient, generators)?;
        m.rref(f);
        Ok(Subspace::Linear {
            q,
            ambient: ambient as u16,
            rows: m.data,
        })
    }

    pub fn zero(q: u16, ambient: usize) -> Self {
        Subspace::Linear {
            q,
            ambient: ambient as u16,
            rows: Vec::new(),
        }
    }

    pub fn thin(rank: u16, symbols: &[i16]) -> Result<Self> {
        let mut syms = symbols.to_vec();
        for &s in &syms {
            if s == 0 || s.unsigned_abs() > rank {
                return Err(Error::BadDescriptor(format!(
                    "symbol {s} out of range for thin rank {rank}"
                )));
            }
        }
        syms.sort_by_key(|&s| symbol_key(s));
        syms.dedup();
        Ok(Subspace::Thin { rank, symbols: syms })
    }

    pub fn thin_empty(rank: u16) -> Self {
        Subspace::Thin {
            rank,
            symbols: Vec::new(),
        }
    }

    /// Projective dimension; the empty/zero subspace has dimension -1.
    pub fn pdim(&self) -> i64 {
        match self {
            Subspace::Linear { ambient, rows, .. } => {
                (rows.len() / (*ambient as usize).max(1)) as i64 - 1
            }
            Subspace::Thin { symbols, .. } => symbols.len() as i64 - 1,
        }
    }

    /// Vector-space dimension (number of basis rows / symbols).
    pub fn vdim(&self) -> usize {
        (self.pdim() + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.pdim() == -1
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Subspace::Linear { ambient, .. } => *ambient as usize,
            Subspace::Thin { rank, .. } => *rank as usize * 2,
        }
    }

    pub fn basis_rows(&self) -> Vec<&[u8]> {
        match self {
            Subspace::Linear { ambient, rows, .. } => {
                rows.chunks(*ambient as usize).collect()
            }
            Subspace::Thin { .. } => Vec::new(),
        }
    }

    pub fn symbols(&self) -> &[i16] {
        match self {
            Subspace::Thin { symbols, .. } => symbols,
            Subspace::Linear { .. } => &[],
        }
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        match (self, other) {
            (
                Subspace::Linear { q, ambient, .. },
                Subspace::Linear { q: q2, ambient: a2, .. },
            ) => {
                if q != q2 || ambient != a2 {
                    Err(Error::AmbientMismatch)
                } else {
                    Ok(())
                }
            }
            (Subspace::Thin { rank, .. }, Subspace::Thin { rank: r2, .. }) => {
                if rank != r2 {
                    Err(Error::AmbientMismatch)
                } else {
                    Ok(())
                }
            }
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn span(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        match (self, other) {
            (Subspace::Linear { q, ambient, rows }, Subspace::Linear { rows: r2, .. }) => {
                let f = Field::get(*q)?;
                let d = *ambient as usize;
                let mut data = rows.clone();
                data.extend_from_slice(r2);
                let mut m = Mat::new(data.len() / d, d, data);
                m.rref(f);
                Ok(Subspace::Linear {
                    q: *q,
                    ambient: *ambient,
                    rows: m.data,
                })
            }
            (Subspace::Thin { rank, symbols }, Subspace::Thin { symbols: s2, .. }) => {
                let mut syms = symbols.clone();
                syms.extend_from_slice(s2);
                syms.sort_by_key(|&s| symbol_key(s));
                syms.dedup();
                Ok(Subspace::Thin {
                    rank: *rank,
                    symbols: syms,
                })
            }
            _ => unreachable!(),
        }
    }

    /// Intersection via the Zassenhaus block trick for the linear backend.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        match (self, other) {
            (Subspace::Linear { q, ambient, rows }, Subspace::Linear { rows: r2, .. }) => {
                let f = Field::get(*q)?;
                let d = *ambient as usize;
                let ra = rows.len() / d.max(1);
                let rb = r2.len() / d.max(1);
                // Block matrix [[A A],[B 0]]: after elimination, rows whose
                // left half is zero carry an intersection basis on the right.
                let mut m = Mat::zeros(ra + rb, 2 * d);
                for r in 0..ra {
                    for c in 0..d {
                        let v = rows[r * d + c];
                        m.set(r, c, v);
                        m.set(r, d + c, v);
                    }
                }
                for r in 0..rb {
                    for c in 0..d {
                        m.set(ra + r, c, r2[r * d + c]);
                    }
                }
                m.rref(f);
                let mut inter_rows: Vec<Vec<u8>> = Vec::new();
                for r in 0..m.rows {
                    if (0..d).all(|c| m.at(r, c) == 0) {
                        inter_rows.push(m.row(r)[d..].to_vec());
                    }
                }
                Subspace::linear(*q, d, &inter_rows)
            }
            (Subspace::Thin { rank, symbols }, Subspace::Thin { symbols: s2, .. }) => {
                let syms: Vec<i16> = symbols.iter().copied().filter(|s| s2.contains(s)).collect();
                Ok(Subspace::Thin {
                    rank: *rank,
                    symbols: syms,
                })
            }
            _ => unreachable!(),
        }
    }

    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_compat(other)?;
        match (self, other) {
            (Subspace::Linear { q, ambient, rows }, Subspace::Linear { rows: r2, .. }) => {
                let f = Field::get(*q)?;
                let d = *ambient as usize;
                Ok(r2
                    .chunks(d)
                    .all(|v| reduces_to_zero(f, rows, d, v)))
            }
            (Subspace::Thin { symbols, .. }, Subspace::Thin { symbols: s2, .. }) => {
                Ok(s2.iter().all(|s| symbols.contains(s)))
            }
            _ => unreachable!(),
        }
    }

    /// Membership test for a raw vector (linear backend only).
    pub fn contains_vector(&self, v: &[u8]) -> Result<bool> {
        match self {
            Subspace::Linear { q, ambient, rows } => {
                let f = Field::get(*q)?;
                Ok(reduces_to_zero(f, rows, *ambient as usize, v))
            }
            Subspace::Thin { .. } => Err(Error::BackendMismatch),
        }
    }

    /// Canonical short label, used in DOT exports and witnesses.
    pub fn label(&self) -> String {
        match self {
            Subspace::Linear { ambient, rows, .. } => {
                if rows.is_empty() {
                    return "[0]".to_string();
                }
                let d = *ambient as usize;
                let parts: Vec<String> = rows
                    .chunks(d)
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<String>())
                    .collect();
                format!("[{}]", parts.join(";"))
            }
            Subspace::Thin { symbols, .. } => {
                let parts: Vec<String> = symbols.iter().map(|s| s.to_string()).collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }
}

/// Reduce `v` against an RREF basis and report whether it lands on zero.
fn reduces_to_zero(f: &Field, rref_rows: &[u8], d: usize, v: &[u8]) -> bool {
    let mut v = v.to_vec();
    for row in rref_rows.chunks(d) {
        let pivot = (0..d).find(|&c| row[c] != 0).unwrap();
        if v[pivot] != 0 {
            let factor = v[pivot];
            for c in 0..d {
                v[c] = f.sub(v[c], f.mul(factor, row[c]));
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (
                Subspace::Linear { q, ambient, rows },
                Subspace::Linear { q: q2, ambient: a2, rows: r2 },
            ) => (q, ambient, rows.len(), rows).cmp(&(q2, a2, r2.len(), r2)),
            (Subspace::Thin { rank, symbols }, Subspace::Thin { rank: r2, symbols: s2 }) => {
                let k1: Vec<u32> = symbols.iter().map(|&s| symbol_key(s)).collect();
                let k2: Vec<u32> = s2.iter().map(|&s| symbol_key(s)).collect();
                (rank, k1.len(), k1).cmp(&(r2, k2.len(), k2))
            }
            (Subspace::Linear { .. }, Subspace::Thin { .. }) => Ordering::Less,
            (Subspace::Thin { .. }, Subspace::Linear { .. }) => Ordering::Greater,
        }
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}
