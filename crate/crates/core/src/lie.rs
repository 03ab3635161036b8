//! Matrix Lie groups and algebras: bases, brackets, bilinear forms,
//! exponential/logarithm, adjoint and coadjoint representations, and a
//! registry of concrete models.
//!
//! Conventions: algebra elements are coordinate vectors over a fixed basis
//! with structure constants `[e_i, e_j] = sum_k C[k][i][j] e_k`; duals are
//! coordinate vectors in the dual basis, paired by the coordinate dot
//! product; group tangents are right-trivialized (the tangent at `g` is
//! `v.g` for `v` in the algebra).

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::linalg::{
    self, expm, frobenius, identity, logm, orthogonality_residual, project_special_orthogonal,
    project_special_unitary, unitarity_residual, CMat,
};
use crate::tolerances;

#[derive(Debug, thiserror::Error)]
pub enum LieError {
    #[error("operands belong to different algebras ({0} vs {1})")]
    AlgebraMismatch(String, String),
    #[error("operands belong to different group models ({0} vs {1})")]
    ModelMismatch(String, String),
    #[error("coordinate length {got} does not match algebra dimension {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("{0} violates the algebra contract: {1}")]
    InvalidAlgebra(String, String),
    #[error("group element fails the membership check (residual {0:.3e})")]
    Membership(f64),
    #[error("logarithm outside the injectivity region: {0}")]
    Log(#[from] linalg::LogmError),
    #[error("adjoint conjugation left the algebra span (residual {0:.3e})")]
    AdjointProjection(f64),
}

/// A finite-dimensional Lie algebra with a fixed basis.
pub struct LieAlgebra {
    pub name: String,
    dim: usize,
    /// `C[k][i][j]` flattened as `k*dim*dim + i*dim + j`.
    structure: Vec<f64>,
    bilinear: DMatrix<f64>,
    /// Matrix realization of the basis; empty for purely abstract algebras.
    basis: Vec<CMat>,
    ad_invariant: bool,
    abelian: bool,
    /// Least-squares projector onto the (real) span of the basis, acting on
    /// the real-ified flattened matrix; empty when there is no basis.
    projector: DMatrix<f64>,
}

impl LieAlgebra {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        structure: Vec<f64>,
        bilinear: DMatrix<f64>,
        basis: Vec<CMat>,
        ad_invariant: bool,
    ) -> Result<Arc<Self>, LieError> {
        let name = name.into();
        assert_eq!(structure.len(), dim * dim * dim);
        let abelian = structure.iter().all(|c| *c == 0.0);
        let projector = if basis.is_empty() {
            DMatrix::zeros(0, 0)
        } else {
            basis_projector(&basis)
        };
        let algebra = LieAlgebra {
            name: name.clone(),
            dim,
            structure,
            bilinear,
            basis,
            ad_invariant,
            abelian,
            projector,
        };
        algebra.validate()?;
        Ok(Arc::new(algebra))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_ad_invariant(&self) -> bool {
        self.ad_invariant
    }

    pub fn bilinear(&self) -> &DMatrix<f64> {
        &self.bilinear
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    #[inline]
    pub fn structure_constant(&self, k: usize, i: usize, j: usize) -> f64 {
        self.structure[k * self.dim * self.dim + i * self.dim + j]
    }

    /// `[x, y]` in coordinates.
    pub fn bracket_raw(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.dim;
        let mut out = DVector::zeros(n);
        if self.abelian {
            return out;
        }
        for k in 0..n {
            let mut acc = 0.0;
            for i in 0..n {
                let xi = x[i];
                if xi == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let c = self.structure_constant(k, i, j);
                    if c != 0.0 {
                        acc += c * xi * y[j];
                    }
                }
            }
            out[k] = acc;
        }
        out
    }

    /// `x^T B y`.
    pub fn inner_raw(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.bilinear * y)[(0, 0)]
    }

    /// Dual pairing `<xi, v>` (coordinate dot product).
    pub fn pairing_raw(&self, xi: &DVector<f64>, v: &DVector<f64>) -> f64 {
        xi.dot(v)
    }

    /// Infinitesimal coadjoint motion: `<coad_inf(u, xi), w> = -<xi, [u, w]>`.
    pub fn coadjoint_inf(&self, u: &DVector<f64>, xi: &DVector<f64>) -> DVector<f64> {
        let n = self.dim;
        let mut out = DVector::zeros(n);
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                let xik = xi[k];
                if xik == 0.0 {
                    continue;
                }
                for i in 0..n {
                    let c = self.structure_constant(k, i, j);
                    if c != 0.0 {
                        acc -= xik * c * u[i];
                    }
                }
            }
            out[j] = acc;
        }
        out
    }

    /// Coordinate matrix into the matrix realization.
    pub fn matrix_of(&self, x: &DVector<f64>) -> CMat {
        let mut out = CMat::zeros(self.basis[0].nrows(), self.basis[0].ncols());
        for (i, e) in self.basis.iter().enumerate() {
            out += e * Complex64::new(x[i], 0.0);
        }
        out
    }

    /// Least-squares coordinates of a matrix in the basis span, with the
    /// residual of the projection.
    pub fn coords_of(&self, m: &CMat) -> (DVector<f64>, f64) {
        let flat = realify(m);
        let coords = &self.projector * &flat;
        let rebuilt = self.matrix_of(&coords);
        let residual = frobenius(&(m - rebuilt));
        (coords, residual)
    }

    fn validate(&self) -> Result<(), LieError> {
        let n = self.dim;
        let err = |msg: String| LieError::InvalidAlgebra(self.name.clone(), msg);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let anti =
                        self.structure_constant(k, i, j) + self.structure_constant(k, j, i);
                    if anti.abs() > tolerances::EXACT {
                        return Err(err(format!("antisymmetry residual {anti:.3e}")));
                    }
                }
            }
        }
        // Jacobi on basis triples
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ei = DVector::from_fn(n, |r, _| (r == i) as u8 as f64);
                    let ej = DVector::from_fn(n, |r, _| (r == j) as u8 as f64);
                    let ek = DVector::from_fn(n, |r, _| (r == k) as u8 as f64);
                    let jac = self.bracket_raw(&self.bracket_raw(&ei, &ej), &ek)
                        + self.bracket_raw(&self.bracket_raw(&ej, &ek), &ei)
                        + self.bracket_raw(&self.bracket_raw(&ek, &ei), &ej);
                    if jac.amax() > tolerances::EXACT {
                        return Err(err(format!("Jacobi residual {:.3e}", jac.amax())));
                    }
                }
            }
        }
        let sym = (&self.bilinear - self.bilinear.transpose()).amax();
        if sym > tolerances::EXACT {
            return Err(err(format!("bilinear form asymmetry {sym:.3e}")));
        }
        if self.ad_invariant {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let ei = DVector::from_fn(n, |r, _| (r == i) as u8 as f64);
                        let ej = DVector::from_fn(n, |r, _| (r == j) as u8 as f64);
                        let ek = DVector::from_fn(n, |r, _| (r == k) as u8 as f64);
                        let r = self.inner_raw(&self.bracket_raw(&ei, &ej), &ek)
                            + self.inner_raw(&ej, &self.bracket_raw(&ei, &ek));
                        if r.abs() > tolerances::EXACT {
                            return Err(err(format!("ad-invariance residual {r:.3e}")));
                        }
                    }
                }
            }
        }
        if !self.basis.is_empty() {
            if self.basis.len() != n {
                return Err(err("basis length != dimension".into()));
            }
            for i in 0..n {
                for j in 0..n {
                    let comm = &self.basis[i] * &self.basis[j] - &self.basis[j] * &self.basis[i];
                    let mut expect = CMat::zeros(comm.nrows(), comm.ncols());
                    for k in 0..n {
                        expect += &self.basis[k]
                            * Complex64::new(self.structure_constant(k, i, j), 0.0);
                    }
                    let r = frobenius(&(comm - expect));
                    if r > tolerances::EXACT {
                        return Err(err(format!("basis bracket residual {r:.3e}")));
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.name, self.dim)
    }
}

fn realify(m: &CMat) -> DVector<f64> {
    let mut out = DVector::zeros(2 * m.len());
    for (idx, z) in m.iter().enumerate() {
        out[2 * idx] = z.re;
        out[2 * idx + 1] = z.im;
    }
    out
}

/// Pseudo-inverse of the real-ified basis matrix, for coordinate recovery.
fn basis_projector(basis: &[CMat]) -> DMatrix<f64> {
    let rows = 2 * basis[0].len();
    let cols = basis.len();
    let mut b = DMatrix::zeros(rows, cols);
    for (c, e) in basis.iter().enumerate() {
        b.set_column(c, &realify(e));
    }
    let gram = b.transpose() * &b;
    let gram_inv = gram.try_inverse().expect("basis must be independent");
    gram_inv * b.transpose()
}

/// A vector in a fixed Lie algebra, tagged with its algebra.
#[derive(Clone, Debug)]
pub struct AlgebraVector {
    pub algebra: Arc<LieAlgebra>,
    pub coords: DVector<f64>,
}

impl AlgebraVector {
    pub fn new(algebra: Arc<LieAlgebra>, coords: DVector<f64>) -> Result<Self, LieError> {
        if coords.len() != algebra.dim() {
            return Err(LieError::DimensionMismatch {
                got: coords.len(),
                want: algebra.dim(),
            });
        }
        Ok(AlgebraVector { algebra, coords })
    }

    pub fn zero(algebra: Arc<LieAlgebra>) -> Self {
        let coords = DVector::zeros(algebra.dim());
        AlgebraVector { algebra, coords }
    }

    pub fn basis(algebra: Arc<LieAlgebra>, i: usize) -> Self {
        let coords = DVector::from_fn(algebra.dim(), |r, _| (r == i) as u8 as f64);
        AlgebraVector { algebra, coords }
    }
}

/// A covector in the dual basis; pairing is the coordinate dot product.
#[derive(Clone, Debug)]
pub struct DualVector {
    pub algebra: Arc<LieAlgebra>,
    pub coords: DVector<f64>,
}

impl DualVector {
    pub fn new(algebra: Arc<LieAlgebra>, coords: DVector<f64>) -> Result<Self, LieError> {
        if coords.len() != algebra.dim() {
            return Err(LieError::DimensionMismatch {
                got: coords.len(),
                want: algebra.dim(),
            });
        }
        Ok(DualVector { algebra, coords })
    }

    pub fn pair(&self, v: &AlgebraVector) -> Result<f64, LieError> {
        same_algebra(&self.algebra, &v.algebra)?;
        Ok(self.coords.dot(&v.coords))
    }
}

fn same_algebra(a: &Arc<LieAlgebra>, b: &Arc<LieAlgebra>) -> Result<(), LieError> {
    if Arc::ptr_eq(a, b) {
        Ok(())
    } else {
        Err(LieError::AlgebraMismatch(a.name.clone(), b.name.clone()))
    }
}

/// `[x, y]`.
pub fn bracket(x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector, LieError> {
    same_algebra(&x.algebra, &y.algebra)?;
    Ok(AlgebraVector {
        algebra: x.algebra.clone(),
        coords: x.algebra.bracket_raw(&x.coords, &y.coords),
    })
}

/// `x^T B y`.
pub fn inner(x: &AlgebraVector, y: &AlgebraVector) -> Result<f64, LieError> {
    same_algebra(&x.algebra, &y.algebra)?;
    Ok(x.algebra.inner_raw(&x.coords, &y.coords))
}

/// How group elements of a model multiply and what membership means.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// Unitary or orthogonal matrix group; elements are matrices.
    SpecialUnitary,
    SpecialOrthogonal,
    /// Vector group; the "matrix" is a 1 x dim row of coordinates and the
    /// product is coordinate addition.
    Abelian,
    /// Unipotent upper-triangular matrices (central extensions of vector
    /// groups); exact exp/log in the nilpotent chart.
    Unipotent,
}

/// A concrete Lie group model over a registered algebra.
pub struct GroupModel {
    pub name: String,
    pub algebra: Arc<LieAlgebra>,
    pub kind: ModelKind,
    mat_dim: (usize, usize),
}

impl std::fmt::Debug for GroupModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupModel({})", self.name)
    }
}

/// A group point: a matrix tagged with its model.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub model: Arc<GroupModel>,
    pub mat: CMat,
}

impl GroupModel {
    pub fn identity(self: &Arc<Self>) -> GroupElement {
        let mat = match self.kind {
            ModelKind::Abelian => CMat::zeros(1, self.algebra.dim()),
            _ => identity(self.mat_dim.0),
        };
        GroupElement {
            model: self.clone(),
            mat,
        }
    }

    pub fn mul(
        self: &Arc<Self>,
        a: &GroupElement,
        b: &GroupElement,
    ) -> Result<GroupElement, LieError> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mat = match self.kind {
            ModelKind::Abelian => &a.mat + &b.mat,
            _ => &a.mat * &b.mat,
        };
        Ok(GroupElement {
            model: self.clone(),
            mat,
        })
    }

    pub fn inv(self: &Arc<Self>, a: &GroupElement) -> Result<GroupElement, LieError> {
        self.check_element(a)?;
        let mat = match self.kind {
            ModelKind::Abelian => -&a.mat,
            ModelKind::SpecialUnitary => a.mat.adjoint(),
            ModelKind::SpecialOrthogonal => a.mat.transpose(),
            ModelKind::Unipotent => a
                .mat
                .clone()
                .try_inverse()
                .expect("unipotent matrices are invertible"),
        };
        Ok(GroupElement {
            model: self.clone(),
            mat,
        })
    }

    /// Exponential of `sum_i x_i e_i`.
    pub fn exp(self: &Arc<Self>, x: &AlgebraVector) -> Result<GroupElement, LieError> {
        same_algebra(&self.algebra, &x.algebra)?;
        let mat = match self.kind {
            ModelKind::Abelian => {
                CMat::from_fn(1, x.coords.len(), |_, j| Complex64::new(x.coords[j], 0.0))
            }
            ModelKind::Unipotent => {
                // nilpotent of order 2: exp(N) = I + N + N^2/2 exactly
                let n = self.algebra.matrix_of(&x.coords);
                identity(n.nrows()) + &n + (&n * &n) * Complex64::new(0.5, 0.0)
            }
            _ => expm(&self.algebra.matrix_of(&x.coords)),
        };
        Ok(GroupElement {
            model: self.clone(),
            mat,
        })
    }

    /// Local inverse of `exp`; errors outside the injectivity region.
    pub fn log(self: &Arc<Self>, g: &GroupElement) -> Result<AlgebraVector, LieError> {
        self.check_element(g)?;
        let coords = match self.kind {
            ModelKind::Abelian => DVector::from_fn(self.algebra.dim(), |j, _| g.mat[(0, j)].re),
            ModelKind::Unipotent => {
                let n = &g.mat - identity(g.mat.nrows());
                let nn = &n - (&n * &n) * Complex64::new(0.5, 0.0);
                let (coords, residual) = self.algebra.coords_of(&nn);
                if residual > tolerances::ALGEBRA_PROJECTION {
                    return Err(LieError::AdjointProjection(residual));
                }
                coords
            }
            _ => {
                let l = logm(&g.mat)?;
                let (coords, residual) = self.algebra.coords_of(&l);
                if residual > tolerances::ALGEBRA_PROJECTION {
                    return Err(LieError::AdjointProjection(residual));
                }
                coords
            }
        };
        AlgebraVector::new(self.algebra.clone(), coords)
    }

    /// `Ad_g x = g x g^{-1}` re-expressed in basis coordinates.
    pub fn adjoint(
        self: &Arc<Self>,
        g: &GroupElement,
        x: &AlgebraVector,
    ) -> Result<AlgebraVector, LieError> {
        same_algebra(&self.algebra, &x.algebra)?;
        let coords = self.adjoint_raw(g, &x.coords)?;
        AlgebraVector::new(self.algebra.clone(), coords)
    }

    pub fn adjoint_raw(
        self: &Arc<Self>,
        g: &GroupElement,
        x: &DVector<f64>,
    ) -> Result<DVector<f64>, LieError> {
        self.check_element(g)?;
        match self.kind {
            ModelKind::Abelian => Ok(x.clone()),
            _ => {
                let gi = self.inv(g)?;
                let conj = &g.mat * self.algebra.matrix_of(x) * &gi.mat;
                let (coords, residual) = self.algebra.coords_of(&conj);
                if residual > tolerances::ALGEBRA_PROJECTION {
                    return Err(LieError::AdjointProjection(residual));
                }
                Ok(coords)
            }
        }
    }

    /// Matrix of `Ad_g` in the basis.
    pub fn adjoint_matrix(self: &Arc<Self>, g: &GroupElement) -> Result<DMatrix<f64>, LieError> {
        let n = self.algebra.dim();
        let mut out = DMatrix::zeros(n, n);
        for j in 0..n {
            let ej = DVector::from_fn(n, |r, _| (r == j) as u8 as f64);
            out.set_column(j, &self.adjoint_raw(g, &ej)?);
        }
        Ok(out)
    }

    /// Dual of `Ad_{g^{-1}}`: `<coadjoint_dual(g, xi), v> = <xi, Ad_{g^{-1}} v>`.
    pub fn coadjoint_dual(
        self: &Arc<Self>,
        g: &GroupElement,
        xi: &DualVector,
    ) -> Result<DualVector, LieError> {
        same_algebra(&self.algebra, &xi.algebra)?;
        let coords = self.coadjoint_dual_raw(g, &xi.coords)?;
        DualVector::new(self.algebra.clone(), coords)
    }

    pub fn coadjoint_dual_raw(
        self: &Arc<Self>,
        g: &GroupElement,
        xi: &DVector<f64>,
    ) -> Result<DVector<f64>, LieError> {
        match self.kind {
            ModelKind::Abelian => Ok(xi.clone()),
            _ => {
                let gi = self.inv(g)?;
                let m = self.adjoint_matrix(&gi)?;
                Ok(m.transpose() * xi)
            }
        }
    }

    pub fn membership_residual(&self, g: &GroupElement) -> f64 {
        match self.kind {
            ModelKind::SpecialUnitary => {
                unitarity_residual(&g.mat)
                    + (g.mat.determinant() - Complex64::new(1.0, 0.0)).norm()
            }
            ModelKind::SpecialOrthogonal => {
                orthogonality_residual(&g.mat)
                    + (g.mat.determinant() - Complex64::new(1.0, 0.0)).norm()
            }
            ModelKind::Abelian => g.mat.iter().map(|z| z.im.abs()).sum(),
            ModelKind::Unipotent => {
                let n = g.mat.nrows();
                let mut r = 0.0;
                for i in 0..n {
                    r += (g.mat[(i, i)] - Complex64::new(1.0, 0.0)).norm();
                    for j in 0..i {
                        r += g.mat[(i, j)].norm();
                    }
                }
                let (_, proj) = self.algebra.coords_of(
                    &((&g.mat - identity(n))
                        - (&g.mat - identity(n)) * (&g.mat - identity(n))
                            * Complex64::new(0.5, 0.0)),
                );
                r + proj
            }
        }
    }

    /// Re-project a drifted element onto the model (used by ODE paths).
    pub fn project(self: &Arc<Self>, g: &GroupElement) -> GroupElement {
        let mat = match self.kind {
            ModelKind::SpecialUnitary => project_special_unitary(&g.mat),
            ModelKind::SpecialOrthogonal => project_special_orthogonal(&g.mat),
            ModelKind::Abelian => g.mat.map(|z| Complex64::new(z.re, 0.0)),
            ModelKind::Unipotent => g.mat.clone(),
        };
        GroupElement {
            model: self.clone(),
            mat,
        }
    }

    pub fn check_element(self: &Arc<Self>, g: &GroupElement) -> Result<(), LieError> {
        if !Arc::ptr_eq(self, &g.model) {
            return Err(LieError::ModelMismatch(
                self.name.clone(),
                g.model.name.clone(),
            ));
        }
        Ok(())
    }
}

/// Build a validated model by name: `su2`, `so3`, `abelian(n)`,
/// `heisenberg(2n)` (the abelian base of the extension testbed).
pub fn model(name: &str) -> Result<Arc<GroupModel>, LieError> {
    match name {
        "su2" => su2(),
        "so3" => so3(),
        _ => {
            if let Some(n) = parse_arg(name, "abelian") {
                abelian(n)
            } else if let Some(n) = parse_arg(name, "heisenberg") {
                if n == 0 || n % 2 != 0 {
                    return Err(LieError::UnknownModel(format!(
                        "{name} (heisenberg needs an even positive dimension)"
                    )));
                }
                abelian_named(n, format!("heisenberg({n}) base"))
            } else {
                Err(LieError::UnknownModel(name.to_string()))
            }
        }
    }
}

fn parse_arg(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let rest = rest.strip_prefix('(')?.strip_suffix(')')?;
    rest.parse().ok()
}

fn cyclic_structure(dim: usize, eps: impl Fn(usize, usize, usize) -> f64) -> Vec<f64> {
    let mut c = vec![0.0; dim * dim * dim];
    for k in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                c[k * dim * dim + i * dim + j] = eps(k, i, j);
            }
        }
    }
    c
}

fn levi_civita(k: usize, i: usize, j: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (1, 0, 2) | (2, 1, 0) | (0, 2, 1) => -1.0,
        _ => 0.0,
    }
}

/// su(2) with basis `e_k = -i sigma_k / 2`, so `[e_1, e_2] = e_3` cyclically,
/// and bilinear form `(X, Y) = -tr(XY)` (positive definite, `B = I/2`).
pub fn su2() -> Result<Arc<GroupModel>, LieError> {
    let i = Complex64::new(0.0, 1.0);
    let half = Complex64::new(0.5, 0.0);
    let s1 = CMat::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    );
    let s2 = CMat::from_row_slice(
        2,
        2,
        &[Complex64::new(0.0, 0.0), -i, i, Complex64::new(0.0, 0.0)],
    );
    let s3 = CMat::from_row_slice(
        2,
        2,
        &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ],
    );
    let basis = vec![s1 * (-i * half), s2 * (-i * half), s3 * (-i * half)];
    let algebra = LieAlgebra::new(
        "su(2)",
        3,
        cyclic_structure(3, levi_civita),
        DMatrix::from_diagonal_element(3, 3, 0.5),
        basis,
        true,
    )?;
    Ok(Arc::new(GroupModel {
        name: "su2".into(),
        algebra,
        kind: ModelKind::SpecialUnitary,
        mat_dim: (2, 2),
    }))
}

/// so(3) with the rotation generators `(L_i)_{jk} = -eps_{ijk}`,
/// `[L_1, L_2] = L_3` cyclically, bilinear form `-tr(XY)` (`B = 2 I`).
pub fn so3() -> Result<Arc<GroupModel>, LieError> {
    let mut basis = Vec::new();
    for i in 0..3 {
        let m = CMat::from_fn(3, 3, |r, c| Complex64::new(-levi_civita(c, i, r), 0.0));
        basis.push(m);
    }
    let algebra = LieAlgebra::new(
        "so(3)",
        3,
        cyclic_structure(3, levi_civita),
        DMatrix::from_diagonal_element(3, 3, 2.0),
        basis,
        true,
    )?;
    Ok(Arc::new(GroupModel {
        name: "so3".into(),
        algebra,
        kind: ModelKind::SpecialOrthogonal,
        mat_dim: (3, 3),
    }))
}

pub fn abelian(n: usize) -> Result<Arc<GroupModel>, LieError> {
    abelian_named(n, format!("abelian({n})"))
}

fn abelian_named(n: usize, name: String) -> Result<Arc<GroupModel>, LieError> {
    if n == 0 {
        return Err(LieError::UnknownModel(name));
    }
    let algebra = LieAlgebra::new(
        format!("R^{n}"),
        n,
        vec![0.0; n * n * n],
        DMatrix::identity(n, n),
        Vec::new(),
        true,
    )?;
    Ok(Arc::new(GroupModel {
        name,
        algebra,
        kind: ModelKind::Abelian,
        mat_dim: (1, n),
    }))
}

/// Unipotent realization of the central extension of `R^{2n}` by the
/// standard antisymmetric two-cocycle: algebra coordinates `(x, y, z)` with
/// `[(x,y,z), (x',y',z')] = (0, 0, x.y' - y.x')`, realized as strictly
/// upper-triangular `(2n+2) x (2n+2)` blocks so the exponential chart has
/// the polarized product.
pub fn heisenberg_extension(half_dim: usize) -> Result<Arc<GroupModel>, LieError> {
    let n = half_dim;
    let dim = 2 * n + 1;
    let m = 2 * n + 2;
    let mut structure = vec![0.0; dim * dim * dim];
    for a in 0..n {
        // [x_a, y_a] = z
        structure[(dim - 1) * dim * dim + a * dim + (n + a)] = 1.0;
        structure[(dim - 1) * dim * dim + (n + a) * dim + a] = -1.0;
    }
    let mut basis = Vec::new();
    for a in 0..n {
        let mut e = CMat::zeros(m, m);
        e[(0, 1 + a)] = Complex64::new(1.0, 0.0);
        basis.push(e);
    }
    for a in 0..n {
        let mut e = CMat::zeros(m, m);
        e[(1 + a, m - 1)] = Complex64::new(1.0, 0.0);
        basis.push(e);
    }
    let mut z = CMat::zeros(m, m);
    z[(0, m - 1)] = Complex64::new(1.0, 0.0);
    basis.push(z);
    let algebra = LieAlgebra::new(
        format!("heis({})", 2 * n),
        dim,
        structure,
        DMatrix::identity(dim, dim),
        basis,
        false,
    )?;
    Ok(Arc::new(GroupModel {
        name: format!("heisenberg_ext({})", 2 * n),
        algebra,
        kind: ModelKind::Unipotent,
        mat_dim: (m, m),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SampleRng;
    use approx::assert_abs_diff_eq;

    fn models() -> Vec<Arc<GroupModel>> {
        vec![
            model("su2").unwrap(),
            model("so3").unwrap(),
            model("abelian(2)").unwrap(),
            model("heisenberg(2)").unwrap(),
            heisenberg_extension(1).unwrap(),
        ]
    }

    #[test]
    fn registry_rejects_unknown() {
        assert!(model("sl2").is_err());
        assert!(model("heisenberg(3)").is_err());
    }

    #[test]
    fn su2_dimension_and_bracket() {
        let su2 = model("su2").unwrap();
        assert_eq!(su2.algebra.dim(), 3);
        let e1 = AlgebraVector::basis(su2.algebra.clone(), 0);
        let e2 = AlgebraVector::basis(su2.algebra.clone(), 1);
        let b = bracket(&e1, &e2).unwrap();
        assert_abs_diff_eq!(b.coords[2], 1.0, epsilon = 1e-15);
        // [x, x] = 0
        let bb = bracket(&e1, &e1).unwrap();
        assert_abs_diff_eq!(bb.coords.amax(), 0.0, epsilon = 1e-15);
        // inner(e1, e1) = -tr(e1 e1) = 1/2
        assert_abs_diff_eq!(inner(&e1, &e1).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn abelian_bracket_vanishes() {
        let ab = model("abelian(2)").unwrap();
        let mut rng = SampleRng::seed(3);
        let x = rng.algebra_vector(&ab.algebra, 1.0);
        let y = rng.algebra_vector(&ab.algebra, 1.0);
        assert_eq!(bracket(&x, &y).unwrap().coords.amax(), 0.0);
        // exp is the identity chart
        let g = ab.exp(&x).unwrap();
        let back = ab.log(&g).unwrap();
        assert_abs_diff_eq!((back.coords - x.coords).amax(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let su2 = model("su2").unwrap();
        let so3 = model("so3").unwrap();
        let x = AlgebraVector::basis(su2.algebra.clone(), 0);
        let y = AlgebraVector::basis(so3.algebra.clone(), 0);
        assert!(bracket(&x, &y).is_err());
        assert!(inner(&x, &y).is_err());
    }

    #[test]
    fn exp_log_round_trip_all_models() {
        let mut rng = SampleRng::seed(11);
        for m in models() {
            for _ in 0..12 {
                let x = rng.algebra_vector_bounded(&m.algebra, 1.0);
                let g = m.exp(&x).unwrap();
                assert!(m.membership_residual(&g) < tolerances::MEMBERSHIP, "{}", m.name);
                let back = m.log(&g).unwrap();
                assert!(
                    (back.coords - x.coords).amax() < tolerances::EXP_LOG_ROUND_TRIP,
                    "{}",
                    m.name
                );
            }
        }
    }

    #[test]
    fn su2_log_exp_specific() {
        let su2 = model("su2").unwrap();
        let mut x = AlgebraVector::zero(su2.algebra.clone());
        x.coords[0] = 0.3;
        let g = su2.exp(&x).unwrap();
        let back = su2.log(&g).unwrap();
        assert!((back.coords[0] - 0.3).abs() < 1e-10);
    }

    #[test]
    fn adjoint_is_homomorphism() {
        let mut rng = SampleRng::seed(23);
        for m in models() {
            for _ in 0..8 {
                let g = rng.group_element(&m, 0.7);
                let h = rng.group_element(&m, 0.7);
                let x = rng.algebra_vector(&m.algebra, 1.0);
                let gh = m.mul(&g, &h).unwrap();
                let lhs = m.adjoint(&gh, &x).unwrap();
                let rhs = m.adjoint(&g, &m.adjoint(&h, &x).unwrap()).unwrap();
                assert!(
                    (lhs.coords - rhs.coords).amax() < tolerances::EXACT_COMPOSED,
                    "{}",
                    m.name
                );
            }
        }
    }

    #[test]
    fn adjoint_at_identity_and_abelian() {
        let mut rng = SampleRng::seed(5);
        let su2 = model("su2").unwrap();
        let x = rng.algebra_vector(&su2.algebra, 1.0);
        let e = su2.identity();
        let ax = su2.adjoint(&e, &x).unwrap();
        assert_abs_diff_eq!((ax.coords - x.coords).amax(), 0.0, epsilon = 1e-14);

        let ab = model("abelian(2)").unwrap();
        let g = rng.group_element(&ab, 1.0);
        let y = rng.algebra_vector(&ab.algebra, 1.0);
        let ay = ab.adjoint(&g, &y).unwrap();
        assert_eq!((ay.coords - y.coords).amax(), 0.0);
    }

    #[test]
    fn coadjoint_duality() {
        let mut rng = SampleRng::seed(7);
        for m in [model("su2").unwrap(), model("so3").unwrap()] {
            for _ in 0..8 {
                let g = rng.group_element(&m, 0.7);
                let xi = rng.dual_vector(&m.algebra, 1.0);
                let v = rng.algebra_vector(&m.algebra, 1.0);
                let lhs = m.coadjoint_dual(&g, &xi).unwrap().pair(&v).unwrap();
                let gi = m.inv(&g).unwrap();
                let rhs = xi.pair(&m.adjoint(&gi, &v).unwrap()).unwrap();
                assert!((lhs - rhs).abs() < tolerances::EXACT_COMPOSED);
            }
        }
    }

    #[test]
    fn ad_invariance_of_inner() {
        let mut rng = SampleRng::seed(13);
        let su2 = model("su2").unwrap();
        for _ in 0..16 {
            let x = rng.algebra_vector(&su2.algebra, 1.0);
            let y = rng.algebra_vector(&su2.algebra, 1.0);
            let z = rng.algebra_vector(&su2.algebra, 1.0);
            let r = inner(&bracket(&z, &x).unwrap(), &y).unwrap()
                + inner(&x, &bracket(&z, &y).unwrap()).unwrap();
            assert!(r.abs() < tolerances::EXACT);
        }
    }

    #[test]
    fn jacobi_on_random_triples() {
        let mut rng = SampleRng::seed(17);
        let su2 = model("su2").unwrap();
        for _ in 0..16 {
            let x = rng.algebra_vector(&su2.algebra, 1.0);
            let y = rng.algebra_vector(&su2.algebra, 1.0);
            let z = rng.algebra_vector(&su2.algebra, 1.0);
            let jac = bracket(&bracket(&x, &y).unwrap(), &z).unwrap().coords
                + bracket(&bracket(&y, &z).unwrap(), &x).unwrap().coords
                + bracket(&bracket(&z, &x).unwrap(), &y).unwrap().coords;
            assert!(jac.amax() < tolerances::EXACT);
        }
    }

    #[test]
    fn heisenberg_extension_product_is_polarized() {
        // exp-chart product: (v,c)(v',c') = (v+v', c+c'+lambda(v,v')/2)
        let ext = heisenberg_extension(1).unwrap();
        let alg = ext.algebra.clone();
        let mut rng = SampleRng::seed(29);
        for _ in 0..8 {
            let x = rng.algebra_vector(&alg, 1.0);
            let y = rng.algebra_vector(&alg, 1.0);
            let g = ext.mul(&ext.exp(&x).unwrap(), &ext.exp(&y).unwrap()).unwrap();
            let log = ext.log(&g).unwrap();
            let lam = x.coords[0] * y.coords[1] - x.coords[1] * y.coords[0];
            let mut expect = &x.coords + &y.coords;
            expect[2] += 0.5 * lam;
            assert!((log.coords - expect).amax() < 1e-12);
        }
    }
}
