//! Non-degenerate reflexive and quadratic forms on GF(q)^d.
//!
//! A `FormSpec` carries either a Gram matrix (alternating, symmetric,
//! hermitian) or an upper-triangular coefficient matrix (quadratic, used in
//! characteristic 2).  Singularity of points and subspaces, perps and the
//! non-degeneracy check all live here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::field::Field;
use super::matrix::{dot, rowspace_vectors, Mat};
use super::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Alternating,
    Symmetric,
    Hermitian,
    /// Quadratic form; `matrix` holds the upper-triangular coefficients and
    /// the polar form is derived.  Only allowed in characteristic 2 — odd
    /// characteristic uses the equivalent symmetric bilinear form instead.
    Quadratic,
}

#[derive(Debug, Clone)]
pub struct FormSpec {
    pub kind: FormKind,
    pub q: u16,
    pub dim: usize,
    /// Gram matrix for the bilinear kinds, upper-triangular coefficients for
    /// the quadratic kind.
    matrix: Mat,
    /// Gram matrix of the associated (polar) bilinear form.
    polar: Mat,
}

impl FormSpec {
    pub fn new(kind: FormKind, q: u16, dim: usize, matrix: Mat) -> Result<Self> {
        let spec = Self::new_unchecked(kind, q, dim, matrix)?;
        spec.check_nondegenerate()?;
        Ok(spec)
    }

    /// Shape-validated but possibly degenerate; used to construct broken
    /// geometries on purpose so axiom reports can be exercised.
    pub(crate) fn new_unchecked(kind: FormKind, q: u16, dim: usize, matrix: Mat) -> Result<Self> {
        let f = Field::get(q)?;
        if matrix.rows != dim || matrix.cols != dim {
            return Err(Error::InvalidForm(format!(
                "matrix is {}x{}, ambient dimension is {dim}",
                matrix.rows, matrix.cols
            )));
        }
        match kind {
            FormKind::Alternating => {
                for i in 0..dim {
                    if matrix.at(i, i) != 0 {
                        return Err(Error::InvalidForm("alternating Gram has nonzero diagonal".into()));
                    }
                    for j in 0..dim {
                        if matrix.at(i, j) != f.neg(matrix.at(j, i)) {
                            return Err(Error::InvalidForm("alternating Gram is not skew".into()));
                        }
                    }
                }
            }
            FormKind::Symmetric => {
                if f.characteristic() == 2 {
                    return Err(Error::InvalidForm(
                        "symmetric forms in characteristic 2 are rejected; use the quadratic kind".into(),
                    ));
                }
                for i in 0..dim {
                    for j in 0..dim {
                        if matrix.at(i, j) != matrix.at(j, i) {
                            return Err(Error::InvalidForm("Gram is not symmetric".into()));
                        }
                    }
                }
            }
            FormKind::Hermitian => {
                if !f.has_conj() {
                    return Err(Error::NoConjugation(q));
                }
                for i in 0..dim {
                    for j in 0..dim {
                        if matrix.at(i, j) != f.conj(matrix.at(j, i))? {
                            return Err(Error::InvalidForm("Gram is not conjugate-symmetric".into()));
                        }
                    }
                }
            }
            FormKind::Quadratic => {
                if f.characteristic() != 2 {
                    return Err(Error::InvalidForm(
                        "quadratic kind is used in characteristic 2; use a symmetric form instead".into(),
                    ));
                }
                for i in 0..dim {
                    for j in 0..i {
                        if matrix.at(i, j) != 0 {
                            return Err(Error::InvalidForm(
                                "quadratic coefficient matrix must be upper triangular".into(),
                            ));
                        }
                    }
                }
            }
        }
        let polar = match kind {
            FormKind::Quadratic => {
                // B(x, y) = Q(x + y) - Q(x) - Q(y) has Gram U + U^T.
                let mut g = Mat::zeros(dim, dim);
                for i in 0..dim {
                    for j in 0..dim {
                        g.set(i, j, f.add(matrix.at(i, j), matrix.at(j, i)));
                    }
                }
                g
            }
            _ => matrix.clone(),
        };
        Ok(FormSpec { kind, q, dim, matrix, polar })
    }

    fn field(&self) -> &'static Field {
        Field::get(self.q).unwrap()
    }

    /// The radical of the polar bilinear form must meet the singular point
    /// set trivially (for the bilinear kinds it must vanish outright).
    fn check_nondegenerate(&self) -> Result<()> {
        let f = self.field();
        let radical = self.polar.nullspace(f);
        if radical.rows == 0 {
            return Ok(());
        }
        match self.kind {
            FormKind::Quadratic => {
                for v in rowspace_vectors(f, &radical) {
                    if v.iter().any(|&x| x != 0) && self.eval_q(&v) == 0 {
                        return Err(Error::DegenerateForm(format!(
                            "radical vector {v:?} is singular"
                        )));
                    }
                }
                Ok(())
            }
            _ => Err(Error::DegenerateForm(format!(
                "polar form has a radical of dimension {}",
                radical.rows
            ))),
        }
    }

    /// Bilinear (or sesquilinear / polar) form value.
    pub fn eval_b(&self, u: &[u8], v: &[u8]) -> u8 {
        let f = self.field();
        let gv = match self.kind {
            FormKind::Hermitian => {
                let cv: Vec<u8> = v.iter().map(|&x| f.conj(x).unwrap()).collect();
                self.polar.vec_mul(f, u).iter().zip(&cv).fold(0, |acc, (&a, &b)| {
                    f.add(acc, f.mul(a, b))
                })
            }
            _ => dot(f, &self.polar.vec_mul(f, u), v),
        };
        gv
    }

    /// Quadratic form value (quadratic kind only).
    pub fn eval_q(&self, u: &[u8]) -> u8 {
        debug_assert_eq!(self.kind, FormKind::Quadratic);
        let f = self.field();
        dot(f, &self.matrix.vec_mul(f, u), u)
    }

    /// The spec-level evaluation entry point: one argument evaluates Q for
    /// the quadratic kind, two arguments evaluate the (polar) bilinear form.
    pub fn eval(&self, u: &[u8], v: Option<&[u8]>) -> Result<u8> {
        if u.len() != self.dim || v.is_some_and(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: u.len(),
            });
        }
        match (self.kind, v) {
            (FormKind::Quadratic, None) => Ok(self.eval_q(u)),
            (FormKind::Quadratic, Some(v)) => Ok(self.eval_b(u, v)),
            (_, Some(v)) => Ok(self.eval_b(u, v)),
            (_, None) => Err(Error::InvalidForm(
                "bilinear kinds need two arguments".into(),
            )),
        }
    }

    /// Is the 1-space spanned by `v` a point of the polar space?
    pub fn is_singular_vector(&self, v: &[u8]) -> bool {
        match self.kind {
            FormKind::Quadratic => self.eval_q(v) == 0,
            _ => self.eval_b(v, v) == 0,
        }
    }

    /// Is the whole subspace totally isotropic / totally singular?
    pub fn is_totally_singular(&self, s: &Subspace) -> bool {
        let rows = s.basis_rows();
        for (i, u) in rows.iter().enumerate() {
            if matches!(self.kind, FormKind::Quadratic) && self.eval_q(u) != 0 {
                return false;
            }
            if !matches!(self.kind, FormKind::Quadratic | FormKind::Alternating)
                && self.eval_b(u, u) != 0
            {
                return false;
            }
            for v in rows.iter().skip(i + 1) {
                if self.eval_b(u, v) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// `S^perp` with respect to the polar bilinear form.
    pub fn perp(&self, s: &Subspace) -> Result<Subspace> {
        let f = self.field();
        if s.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch);
        }
        let rows = s.basis_rows();
        let mut constraints = Mat::zeros(rows.len(), self.dim);
        for (i, u) in rows.iter().enumerate() {
            let mut row = self.polar.transpose().vec_mul(f, u); // (G^T u^T)^T = u G
            if self.kind == FormKind::Hermitian {
                // B(u, v) = sum_j (uG)_j conj(v_j), so v must annihilate
                // the conjugated coefficient row.
                row = row.iter().map(|&x| f.conj(x).unwrap()).collect();
            }
            for (c, &x) in row.iter().enumerate() {
                constraints.set(i, c, x);
            }
        }
        let ns = constraints.nullspace(f);
        let basis: Vec<Vec<u8>> = (0..ns.rows).map(|r| ns.row(r).to_vec()).collect();
        Subspace::linear(self.q, self.dim, &basis)
    }

    // ---- standard named forms -------------------------------------------

    /// Standard alternating form: antidiagonal hyperbolic 2x2 blocks.
    pub fn standard_alternating(q: u16, dim: usize) -> Result<Self> {
        let f = Field::get(q)?;
        if dim % 2 != 0 || dim == 0 {
            return Err(Error::InvalidForm("alternating form needs even dimension".into()));
        }
        let mut g = Mat::zeros(dim, dim);
        for b in 0..dim / 2 {
            g.set(2 * b, 2 * b + 1, 1);
            g.set(2 * b + 1, 2 * b, f.neg(1));
        }
        FormSpec::new(FormKind::Alternating, q, dim, g)
    }

    /// Plus-type form of even dimension: hyperbolic pairs throughout.
    /// Characteristic 2 gets the quadratic `x1 x2 + x3 x4 + ...`, odd
    /// characteristic the symmetric Gram with the same block structure.
    pub fn standard_plus(q: u16, dim: usize) -> Result<Self> {
        let f = Field::get(q)?;
        if dim % 2 != 0 || dim == 0 {
            return Err(Error::InvalidForm("plus-type form needs even dimension".into()));
        }
        let mut g = Mat::zeros(dim, dim);
        if f.characteristic() == 2 {
            for b in 0..dim / 2 {
                g.set(2 * b, 2 * b + 1, 1);
            }
            FormSpec::new(FormKind::Quadratic, q, dim, g)
        } else {
            for b in 0..dim / 2 {
                g.set(2 * b, 2 * b + 1, 1);
                g.set(2 * b + 1, 2 * b, 1);
            }
            FormSpec::new(FormKind::Symmetric, q, dim, g)
        }
    }

    /// Minus-type form of even dimension: hyperbolic pairs plus one
    /// anisotropic binary block.
    pub fn standard_minus(q: u16, dim: usize) -> Result<Self> {
        let f = Field::get(q)?;
        if dim % 2 != 0 || dim < 4 {
            return Err(Error::InvalidForm("minus-type form needs even dimension >= 4".into()));
        }
        let mut g = Mat::zeros(dim, dim);
        if f.characteristic() == 2 {
            for b in 0..dim / 2 - 1 {
                g.set(2 * b, 2 * b + 1, 1);
            }
            // x^2 + xy + c y^2 with no root; scan for a suitable c.
            let c = f
                .elements()
                .find(|&c| {
                    c != 0
                        && f.elements().all(|t| {
                            // t^2 + t + c != 0 for all t  <=>  irreducible
                            f.add(f.add(f.mul(t, t), t), c) != 0
                        })
                })
                .ok_or_else(|| Error::InvalidForm("no anisotropic binary quadratic found".into()))?;
            g.set(dim - 2, dim - 2, 1);
            g.set(dim - 2, dim - 1, 1);
            g.set(dim - 1, dim - 1, c);
            FormSpec::new(FormKind::Quadratic, q, dim, g)
        } else {
            for b in 0..dim / 2 - 1 {
                g.set(2 * b, 2 * b + 1, 1);
                g.set(2 * b + 1, 2 * b, 1);
            }
            // x^2 - d y^2 with d a nonsquare is anisotropic.
            let d = f
                .nonsquare()
                .ok_or_else(|| Error::InvalidForm("field has no nonsquare".into()))?;
            g.set(dim - 2, dim - 2, 1);
            g.set(dim - 1, dim - 1, f.neg(d));
            FormSpec::new(FormKind::Symmetric, q, dim, g)
        }
    }

    /// Standard hermitian form: the identity Gram (sum of x_i conj(y_i)).
    pub fn standard_hermitian(q: u16, dim: usize) -> Result<Self> {
        FormSpec::new(FormKind::Hermitian, q, dim, Mat::identity(dim))
    }
}
