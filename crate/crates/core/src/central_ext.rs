//! The finite-dimensional central-extension testbed: algebra two-cocycles,
//! centrally extended algebras and groups, the integrating group
//! one-cocycle, coadjoint and gauge actions, the affine Poisson bracket,
//! the restricted Liouville and symplectic forms, and the descended
//! groupoid two-form.
//!
//! Two models are registered. `heisenberg(2n)` takes the abelian base
//! `R^{2n}` with the standard antisymmetric two-cocycle and materializes
//! the extension group (with a real central fiber; all checks here are
//! local, and a periodized central coordinate is available behind a flag
//! for the extension-structure check). `su2_coboundary` exercises a
//! nonabelian coadjoint action with the coboundary cocycle
//! `lambda(x, y) = <xi_0, [x, y]>`; compact semisimple algebras admit only
//! coboundary cocycles, so no extension group is materialized and the
//! checks run on the base groupoid only.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::conventions::Conventions;
use crate::geometry::{
    Atom, DifferentialForm, PointComponent, SmoothMap, SpaceDescriptor, SpacePoint,
    TangentComponent, TangentVector,
};
use crate::lie::{
    self, AlgebraVector, DualVector, GroupElement, GroupModel, LieAlgebra, LieError,
};
use crate::simplicial::TransformationGroupoid;
use crate::tolerances;

#[derive(Debug, thiserror::Error)]
pub enum ExtensionError {
    #[error("two-cocycle validation failed: {0}")]
    Cocycle(String),
    #[error("operation requires a materialized extension group")]
    NoExtensionGroup,
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// An algebra two-cocycle `lambda(x, y) = x^T L y` with `L` antisymmetric.
#[derive(Clone, Debug)]
pub struct TwoCocycle {
    pub algebra: Arc<LieAlgebra>,
    pub matrix: DMatrix<f64>,
}

impl TwoCocycle {
    pub fn new(algebra: Arc<LieAlgebra>, matrix: DMatrix<f64>) -> Result<Self, ExtensionError> {
        let anti = (&matrix + matrix.transpose()).amax();
        if anti > 0.0 {
            return Err(ExtensionError::Cocycle(format!(
                "matrix not antisymmetric (residual {anti:.3e})"
            )));
        }
        let c = TwoCocycle { algebra, matrix };
        let r = c.cocycle_identity_residual();
        if r > tolerances::EXACT {
            return Err(ExtensionError::Cocycle(format!(
                "cocycle identity residual {r:.3e}"
            )));
        }
        Ok(c)
    }

    pub fn eval(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.matrix * y)[(0, 0)]
    }

    /// `lambda^b(v) = lambda(v, .)` as a dual coordinate vector.
    pub fn flat(&self, v: &DVector<f64>) -> DVector<f64> {
        self.matrix.transpose() * v
    }

    pub fn cocycle_identity_residual(&self) -> f64 {
        let n = self.algebra.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let e = |r: usize| DVector::from_fn(n, |q, _| (q == r) as u8 as f64);
                    let (x, y, z) = (e(i), e(j), e(k));
                    let r = self.eval(&self.algebra.bracket_raw(&x, &y), &z)
                        + self.eval(&self.algebra.bracket_raw(&y, &z), &x)
                        + self.eval(&self.algebra.bracket_raw(&z, &x), &y);
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }
}

/// The centrally extended algebra `g + R` with bracket
/// `[(x, a), (y, b)] = ([x, y], lambda(x, y))`.
#[derive(Clone, Debug)]
pub struct CentralExtensionAlgebra {
    pub base: Arc<LieAlgebra>,
    pub cocycle: TwoCocycle,
}

impl CentralExtensionAlgebra {
    pub fn new(base: Arc<LieAlgebra>, cocycle: TwoCocycle) -> Self {
        CentralExtensionAlgebra { base, cocycle }
    }

    pub fn dim(&self) -> usize {
        self.base.dim() + 1
    }

    /// Bracket of extended elements `(x, a)`, `(y, b)`.
    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.base.dim();
        let xb = x.rows(0, n).into_owned();
        let yb = y.rows(0, n).into_owned();
        let mut out = DVector::zeros(n + 1);
        out.rows_mut(0, n).copy_from(&self.base.bracket_raw(&xb, &yb));
        out[n] = self.cocycle.eval(&xb, &yb);
        out
    }

    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let e = |r: usize| DVector::from_fn(n, |q, _| (q == r) as u8 as f64);
                    let jac = self.bracket(&self.bracket(&e(i), &e(j)), &e(k))
                        + self.bracket(&self.bracket(&e(j), &e(k)), &e(i))
                        + self.bracket(&self.bracket(&e(k), &e(i)), &e(j));
                    worst = worst.max(jac.amax());
                }
            }
        }
        worst
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionKind {
    HeisenbergFull,
    SuTwoCoboundary,
}

/// A central-extension testbed model: the base group, the cocycle, the
/// extended algebra, and (for the Heisenberg case) the extension group.
pub struct ExtensionModel {
    pub kind: ExtensionKind,
    pub base: Arc<GroupModel>,
    pub cocycle: TwoCocycle,
    pub extended: CentralExtensionAlgebra,
    /// Materialized extension group (unipotent realization); present only
    /// for `HeisenbergFull`.
    pub ext_group: Option<Arc<GroupModel>>,
    /// Reference covector for the coboundary model.
    pub xi0: Option<DVector<f64>>,
    conv: Conventions,
    /// When set, the central coordinate of the extension group is reduced
    /// modulo this period in the extension-structure check (the circle
    /// quotient of the real central fiber).
    pub central_period: Option<f64>,
}

impl ExtensionModel {
    /// `R^{2n}` base with the standard antisymmetric cocycle and the
    /// materialized unipotent extension group.
    pub fn heisenberg(half_dim: usize, conv: &Conventions) -> Result<Self, ExtensionError> {
        let base = lie::model(&format!("heisenberg({})", 2 * half_dim))?;
        let n2 = 2 * half_dim;
        let mut l = DMatrix::zeros(n2, n2);
        for a in 0..half_dim {
            l[(a, half_dim + a)] = 1.0;
            l[(half_dim + a, a)] = -1.0;
        }
        let cocycle = TwoCocycle::new(base.algebra.clone(), l)?;
        let extended = CentralExtensionAlgebra::new(base.algebra.clone(), cocycle.clone());
        let ext_group = lie::heisenberg_extension(half_dim)?;
        Ok(ExtensionModel {
            kind: ExtensionKind::HeisenbergFull,
            base,
            cocycle,
            extended,
            ext_group: Some(ext_group),
            xi0: None,
            conv: *conv,
            central_period: None,
        })
    }

    /// su(2) base with the coboundary cocycle `lambda = <xi_0, [., .]>`.
    pub fn su2_coboundary(conv: &Conventions) -> Result<Self, ExtensionError> {
        let base = lie::model("su2")?;
        let xi0 = DVector::from_vec(vec![0.3, -0.2, 0.5]);
        let n = base.algebra.dim();
        let mut l = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let ei = DVector::from_fn(n, |r, _| (r == i) as u8 as f64);
                let ej = DVector::from_fn(n, |r, _| (r == j) as u8 as f64);
                l[(i, j)] = xi0.dot(&base.algebra.bracket_raw(&ei, &ej));
            }
        }
        let cocycle = TwoCocycle::new(base.algebra.clone(), l)?;
        let extended = CentralExtensionAlgebra::new(base.algebra.clone(), cocycle.clone());
        Ok(ExtensionModel {
            kind: ExtensionKind::SuTwoCoboundary,
            base,
            cocycle,
            extended,
            ext_group: None,
            xi0: Some(xi0),
            conv: *conv,
        central_period: None,
        })
    }

    pub fn with_central_period(mut self, period: f64) -> Self {
        self.central_period = Some(period);
        self
    }

    pub fn conventions(&self) -> &Conventions {
        &self.conv
    }

    /// The group one-cocycle integrating the algebra cocycle, oriented so
    /// that `d(chi)_e = chi_sign * lambda^b`. For the Heisenberg model
    /// `chi(g) = chi_sign * lambda(g, .)`; for the coboundary model
    /// `chi(g) = -chi_sign * (xi_0 - coadjoint_dual(g, xi_0))`.
    pub fn chi(&self, g: &GroupElement) -> Result<DualVector, LieError> {
        let coords = self.chi_raw(g)?;
        DualVector::new(self.base.algebra.clone(), coords)
    }

    pub fn chi_raw(&self, g: &GroupElement) -> Result<DVector<f64>, LieError> {
        match self.kind {
            ExtensionKind::HeisenbergFull => {
                let v = DVector::from_fn(self.base.algebra.dim(), |j, _| g.mat[(0, j)].re);
                Ok(self.cocycle.flat(&v) * self.conv.chi_sign)
            }
            ExtensionKind::SuTwoCoboundary => {
                let xi0 = self.xi0.as_ref().unwrap();
                let moved = self.base.coadjoint_dual_raw(g, xi0)?;
                Ok((moved - xi0) * (-self.conv.chi_sign))
            }
        }
    }

    /// `d(chi)_e(u) = chi_sign * lambda^b(u)`, the exact derivative used by
    /// action tangent maps.
    pub fn chi_derivative_at_identity(&self, u: &DVector<f64>) -> DVector<f64> {
        self.cocycle.flat(u) * self.conv.chi_sign
    }

    /// The gauge action `g . xi = coadjoint_dual(g, xi) + chi(g)`.
    pub fn gauge_action(&self, g: &GroupElement, xi: &DVector<f64>) -> Result<DVector<f64>, LieError> {
        Ok(self.base.coadjoint_dual_raw(g, xi)? + self.chi_raw(g)?)
    }

    /// Exact tangent of the gauge action along a right-trivialized `u` at
    /// `g` and `eta` at `xi`:
    /// `coadjoint_dual(g, eta) + coad_inf(u, g.xi) + d(chi)_e(u)`.
    pub fn gauge_action_tangent(
        &self,
        g: &GroupElement,
        xi: &DVector<f64>,
        u: &DVector<f64>,
        eta: &DVector<f64>,
    ) -> Result<DVector<f64>, LieError> {
        let acted = self.gauge_action(g, xi)?;
        Ok(self.base.coadjoint_dual_raw(g, eta)?
            + self.base.algebra.coadjoint_inf(u, &acted)
            + self.chi_derivative_at_identity(u))
    }

    /// The extended coadjoint action on the dual of the extension:
    /// `g . (xi, t) = (coadjoint_dual(g, xi) + t chi(g), t)`.
    pub fn coadjoint_extended(
        &self,
        g: &GroupElement,
        xi: &DVector<f64>,
        t: f64,
    ) -> Result<(DVector<f64>, f64), LieError> {
        Ok((
            self.base.coadjoint_dual_raw(g, xi)? + self.chi_raw(g)? * t,
            t,
        ))
    }

    /// Affine Poisson bracket
    /// `{F, G}(xi) = <xi, [grad F, grad G]> + lambda(grad F, grad G)`.
    pub fn affine_poisson(&self, f: &PoissonFn, g: &PoissonFn, xi: &DVector<f64>) -> f64 {
        let df = f.gradient(xi);
        let dg = g.gradient(xi);
        xi.dot(&self.base.algebra.bracket_raw(&df, &dg)) + self.cocycle.eval(&df, &dg)
    }

    /// The base gauge groupoid `G x g*` over `g*`.
    pub fn gamma_groupoid(&self) -> TransformationGroupoid {
        let base = SpaceDescriptor::new(vec![Atom::Dual(self.base.algebra.clone())]);
        let me = self.clone_shallow();
        let me2 = self.clone_shallow();
        TransformationGroupoid::new(
            format!("gauge({})", self.base.name),
            Atom::Group(self.base.clone()),
            base,
            self.conv.face_family_gauge,
            move |g, m| {
                let g = as_group(g);
                SpacePoint::new(vec![PointComponent::Dual(
                    me.gauge_action(g, m.dual(0)).expect("gauge action"),
                )])
            },
            move |g, m, u, eta| {
                let g = as_group(g);
                TangentVector::new(vec![TangentComponent::Dual(
                    me2.gauge_action_tangent(g, m.dual(0), u.algebra(), eta.components[0].dual())
                        .expect("gauge tangent"),
                )])
            },
        )
    }

    /// The extension groupoid `G~ x g*` over `g*` (the extension group acts
    /// through the bundle projection).
    pub fn r_groupoid(&self) -> Result<TransformationGroupoid, ExtensionError> {
        let ext = self
            .ext_group
            .clone()
            .ok_or(ExtensionError::NoExtensionGroup)?;
        let base = SpaceDescriptor::new(vec![Atom::Dual(self.base.algebra.clone())]);
        let me = self.clone_shallow();
        let me2 = self.clone_shallow();
        let proj = self.bundle_projection()?;
        let proj2 = proj.clone();
        Ok(TransformationGroupoid::new(
            format!("gauge-ext({})", self.base.name),
            Atom::Group(ext),
            base,
            self.conv.face_family_gauge,
            move |g, m| {
                let g = as_group(g);
                let pg = proj(g);
                SpacePoint::new(vec![PointComponent::Dual(
                    me.gauge_action(&pg, m.dual(0)).expect("gauge action"),
                )])
            },
            move |g, m, u, eta| {
                let g = as_group(g);
                let pg = proj2(g);
                let n = me2.base.algebra.dim();
                let ub = u.algebra().rows(0, n).into_owned();
                TangentVector::new(vec![TangentComponent::Dual(
                    me2.gauge_action_tangent(&pg, m.dual(0), &ub, eta.components[0].dual())
                        .expect("gauge tangent"),
                )])
            },
        ))
    }

    /// The bundle projection of extension-group elements onto the base
    /// (drop the central coordinate in the exponential chart).
    pub fn bundle_projection(
        &self,
    ) -> Result<Arc<dyn Fn(&GroupElement) -> GroupElement + Send + Sync>, ExtensionError> {
        let ext = self
            .ext_group
            .clone()
            .ok_or(ExtensionError::NoExtensionGroup)?;
        let base = self.base.clone();
        Ok(Arc::new(move |g: &GroupElement| {
            let coords = ext.log(g).expect("unipotent log is global");
            let n = base.algebra.dim();
            let xb = AlgebraVector::new(base.algebra.clone(), coords.coords.rows(0, n).into_owned())
                .unwrap();
            base.exp(&xb).unwrap()
        }))
    }

    /// Central coordinate of an extension-group element in the exponential
    /// chart, reduced modulo the configured period when present.
    pub fn central_coordinate(&self, g: &GroupElement) -> Result<f64, ExtensionError> {
        let ext = self
            .ext_group
            .as_ref()
            .ok_or(ExtensionError::NoExtensionGroup)?;
        let coords = ext.log(g)?;
        let c = coords.coords[coords.coords.len() - 1];
        Ok(match self.central_period {
            Some(p) => c - p * (c / p).round(),
            None => c,
        })
    }

    /// The connection one-form on the extension groupoid arrows:
    /// `theta((v, a), eta) = <xi, v> + a` at `(g~, xi)`, the Liouville form
    /// of the extension cotangent in right trivialization restricted to
    /// the unit hyperplane.
    pub fn theta_r_form(&self) -> Result<DifferentialForm, ExtensionError> {
        let ext = self
            .ext_group
            .clone()
            .ok_or(ExtensionError::NoExtensionGroup)?;
        let n = self.base.algebra.dim();
        let space = SpaceDescriptor::new(vec![
            Atom::Group(ext),
            Atom::Dual(self.base.algebra.clone()),
        ]);
        Ok(DifferentialForm::new(1, space, move |p, args| {
            let xi = p.dual(1);
            let vt = args[0].components[0].algebra();
            let v = vt.rows(0, n);
            let a = vt[n];
            xi.dot(&v.into_owned()) + a
        }))
    }

    /// The restricted symplectic form on the extension groupoid arrows,
    /// evaluated through the extended-algebra bracket against the unit
    /// hyperplane covector — the code path is independent of
    /// `omega_gamma_form`:
    /// `omega = sign * (<eta_2, v_1> - <eta_1, v_2> - <(xi,1), [v~_1, v~_2]>)`.
    pub fn omega_r_form(&self) -> Result<DifferentialForm, ExtensionError> {
        let ext = self
            .ext_group
            .clone()
            .ok_or(ExtensionError::NoExtensionGroup)?;
        let n = self.base.algebra.dim();
        let extended = self.extended.clone();
        let sign = self.conv.omega_gamma_sign;
        let space = SpaceDescriptor::new(vec![
            Atom::Group(ext),
            Atom::Dual(self.base.algebra.clone()),
        ]);
        Ok(DifferentialForm::new(2, space, move |p, args| {
            let xi = p.dual(1);
            let v1t = args[0].components[0].algebra();
            let e1 = args[0].components[1].dual();
            let v2t = args[1].components[0].algebra();
            let e2 = args[1].components[1].dual();
            let br = extended.bracket(v1t, v2t);
            let v1 = v1t.rows(0, n).into_owned();
            let v2 = v2t.rows(0, n).into_owned();
            // <(xi, 1), [v~1, v~2]> = <xi, [v1,v2]> + lambda(v1, v2)
            let pairing = xi.dot(&br.rows(0, n).into_owned()) + br[n];
            sign * (e2.dot(&v1) - e1.dot(&v2) - pairing)
        }))
    }

    /// The descended groupoid two-form on the base groupoid arrows:
    /// `omega = sign * (<eta_2, v_1> - <eta_1, v_2> - <xi, [v_1, v_2]>
    ///                  - lambda(v_1, v_2))`.
    pub fn omega_gamma_form(&self) -> DifferentialForm {
        let algebra = self.base.algebra.clone();
        let cocycle = self.cocycle.clone();
        let sign = self.conv.omega_gamma_sign;
        let space = SpaceDescriptor::new(vec![
            Atom::Group(self.base.clone()),
            Atom::Dual(self.base.algebra.clone()),
        ]);
        DifferentialForm::new(2, space, move |p, args| {
            let xi = p.dual(1);
            let v1 = args[0].components[0].algebra();
            let e1 = args[0].components[1].dual();
            let v2 = args[1].components[0].algebra();
            let e2 = args[1].components[1].dual();
            let val = e2.dot(v1) - e1.dot(v2)
                - xi.dot(&algebra.bracket_raw(v1, v2))
                - cocycle.eval(v1, v2);
            sign * val
        })
    }

    /// The bundle projection as a map of groupoid arrows,
    /// `(g~, xi) -> (pi(g~), xi)`, with its exact tangent (drop the
    /// central tangent coordinate).
    pub fn arrow_projection(&self) -> Result<SmoothMap, ExtensionError> {
        let ext = self
            .ext_group
            .clone()
            .ok_or(ExtensionError::NoExtensionGroup)?;
        let n = self.base.algebra.dim();
        let domain = SpaceDescriptor::new(vec![
            Atom::Group(ext),
            Atom::Dual(self.base.algebra.clone()),
        ]);
        let codomain = SpaceDescriptor::new(vec![
            Atom::Group(self.base.clone()),
            Atom::Dual(self.base.algebra.clone()),
        ]);
        let proj = self.bundle_projection()?;
        Ok(SmoothMap::new(domain, codomain, move |p| {
            SpacePoint::new(vec![
                PointComponent::Group(proj(p.group(0))),
                PointComponent::Dual(p.dual(1).clone()),
            ])
        })
        .with_tangent(move |_, v| {
            let vt = v.components[0].algebra();
            TangentVector::new(vec![
                TangentComponent::Algebra(vt.rows(0, n).into_owned()),
                TangentComponent::Dual(v.components[1].dual().clone()),
            ])
        }))
    }

    fn clone_shallow(&self) -> ExtensionModel {
        ExtensionModel {
            kind: self.kind,
            base: self.base.clone(),
            cocycle: self.cocycle.clone(),
            extended: self.extended.clone(),
            ext_group: self.ext_group.clone(),
            xi0: self.xi0.clone(),
            conv: self.conv,
            central_period: self.central_period,
        }
    }
}

fn as_group(c: &PointComponent) -> &GroupElement {
    match c {
        PointComponent::Group(g) => g,
        _ => panic!("group component expected"),
    }
}

/// A function on the dual with a gradient (exact for the registered linear
/// and quadratic shapes; finite differences otherwise).
pub struct PoissonFn {
    eval: Arc<dyn Fn(&DVector<f64>) -> f64 + Send + Sync>,
    grad: Option<Arc<dyn Fn(&DVector<f64>) -> DVector<f64> + Send + Sync>>,
}

impl PoissonFn {
    /// `l_X(xi) = <xi, X>` with exact gradient `X`.
    pub fn linear(x: DVector<f64>) -> Self {
        let xc = x.clone();
        PoissonFn {
            eval: Arc::new(move |xi| xi.dot(&xc)),
            grad: Some(Arc::new(move |_| x.clone())),
        }
    }

    /// `q_A(xi) = xi^T A xi / 2` with exact gradient `(A + A^T) xi / 2`.
    pub fn quadratic(a: DMatrix<f64>) -> Self {
        let sym = (&a + a.transpose()) * 0.5;
        let ac = a.clone();
        PoissonFn {
            eval: Arc::new(move |xi| 0.5 * (xi.transpose() * &ac * xi)[(0, 0)]),
            grad: Some(Arc::new(move |xi| &sym * xi)),
        }
    }

    /// Arbitrary smooth function; the gradient falls back to central
    /// differences.
    pub fn smooth(f: impl Fn(&DVector<f64>) -> f64 + Send + Sync + 'static) -> Self {
        PoissonFn {
            eval: Arc::new(f),
            grad: None,
        }
    }

    pub fn eval(&self, xi: &DVector<f64>) -> f64 {
        (self.eval)(xi)
    }

    pub fn gradient(&self, xi: &DVector<f64>) -> DVector<f64> {
        match &self.grad {
            Some(g) => g(xi),
            None => {
                let h = 1e-6;
                DVector::from_fn(xi.len(), |i, _| {
                    let mut p = xi.clone();
                    let mut m = xi.clone();
                    p[i] += h;
                    m[i] -= h;
                    ((self.eval)(&p) - (self.eval)(&m)) / (2.0 * h)
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SampleRng;
    use approx::assert_abs_diff_eq;

    fn conv() -> Conventions {
        Conventions::calibrated()
    }

    fn heis() -> ExtensionModel {
        ExtensionModel::heisenberg(1, &conv()).unwrap()
    }

    fn sucob() -> ExtensionModel {
        ExtensionModel::su2_coboundary(&conv()).unwrap()
    }

    #[test]
    fn cocycles_validate() {
        assert!(heis().cocycle.cocycle_identity_residual() < tolerances::EXACT);
        assert!(sucob().cocycle.cocycle_identity_residual() < tolerances::EXACT);
        assert!(heis().extended.jacobi_residual() < tolerances::EXACT);
        assert!(sucob().extended.jacobi_residual() < tolerances::EXACT);
    }

    #[test]
    fn asymmetric_cocycle_rejected() {
        let base = lie::model("abelian(2)").unwrap();
        let mut l = DMatrix::zeros(2, 2);
        l[(0, 1)] = 1.0;
        assert!(TwoCocycle::new(base.algebra.clone(), l).is_err());
    }

    #[test]
    fn chi_at_identity_vanishes() {
        for model in [heis(), sucob()] {
            let e = model.base.identity();
            assert!(model.chi_raw(&e).unwrap().amax() < 1e-14);
        }
    }

    #[test]
    fn chi_is_additive_on_the_abelian_base() {
        let model = heis();
        let mut rng = SampleRng::seed(71);
        let g1 = rng.group_element(&model.base, 1.0);
        let g2 = rng.group_element(&model.base, 1.0);
        let g12 = model.base.mul(&g1, &g2).unwrap();
        let sum = model.chi_raw(&g1).unwrap() + model.chi_raw(&g2).unwrap();
        assert!((model.chi_raw(&g12).unwrap() - sum).amax() < 1e-14);
    }

    #[test]
    fn chi_cocycle_identity_nonabelian() {
        // chi(g1 g2) = coadjoint_dual(g1, chi(g2)) + chi(g1)
        let model = sucob();
        let mut rng = SampleRng::seed(72);
        for _ in 0..8 {
            let g1 = rng.group_element(&model.base, 0.8);
            let g2 = rng.group_element(&model.base, 0.8);
            let g12 = model.base.mul(&g1, &g2).unwrap();
            let lhs = model.chi_raw(&g12).unwrap();
            let rhs = model
                .base
                .coadjoint_dual_raw(&g1, &model.chi_raw(&g2).unwrap())
                .unwrap()
                + model.chi_raw(&g1).unwrap();
            assert!((lhs - rhs).amax() < tolerances::COCYCLE_LAW);
        }
    }

    #[test]
    fn chi_derivative_orientation() {
        // d(chi)_e = chi_sign * lambda^b, via central differences
        let h = 1e-6;
        for model in [heis(), sucob()] {
            let mut rng = SampleRng::seed(73);
            let u = rng.algebra_vector(&model.base.algebra, 1.0).coords;
            let gp = model
                .base
                .exp(&AlgebraVector::new(model.base.algebra.clone(), &u * h).unwrap())
                .unwrap();
            let gm = model
                .base
                .exp(&AlgebraVector::new(model.base.algebra.clone(), &u * (-h)).unwrap())
                .unwrap();
            let fd = (model.chi_raw(&gp).unwrap() - model.chi_raw(&gm).unwrap()) / (2.0 * h);
            let expect = model.chi_derivative_at_identity(&u);
            assert!((fd - expect).amax() < 1e-8, "{:?}", model.kind);
        }
    }

    #[test]
    fn gauge_action_is_left_action() {
        for model in [heis(), sucob()] {
            let mut rng = SampleRng::seed(74);
            for _ in 0..8 {
                let g1 = rng.group_element(&model.base, 0.8);
                let g2 = rng.group_element(&model.base, 0.8);
                let xi = rng.dual_vector(&model.base.algebra, 1.0).coords;
                let e = model.base.identity();
                assert!((model.gauge_action(&e, &xi).unwrap() - &xi).amax() < 1e-14);
                let g12 = model.base.mul(&g1, &g2).unwrap();
                let lhs = model.gauge_action(&g12, &xi).unwrap();
                let rhs = model
                    .gauge_action(&g1, &model.gauge_action(&g2, &xi).unwrap())
                    .unwrap();
                assert!((lhs - rhs).amax() < tolerances::ACTION_LAW, "{:?}", model.kind);
            }
        }
    }

    #[test]
    fn heisenberg_gauge_is_translation() {
        let model = heis();
        let mut rng = SampleRng::seed(75);
        let g = rng.group_element(&model.base, 1.0);
        let xi = rng.dual_vector(&model.base.algebra, 1.0).coords;
        let acted = model.gauge_action(&g, &xi).unwrap();
        let expect = &xi + model.chi_raw(&g).unwrap();
        assert!((acted - expect).amax() < 1e-15);
    }

    #[test]
    fn coadjoint_extended_slices() {
        for model in [heis(), sucob()] {
            let mut rng = SampleRng::seed(76);
            let g = rng.group_element(&model.base, 0.8);
            let xi = rng.dual_vector(&model.base.algebra, 1.0).coords;
            // t = 0: plain coadjoint action
            let (moved, t) = model.coadjoint_extended(&g, &xi, 0.0).unwrap();
            assert_eq!(t, 0.0);
            let plain = model.base.coadjoint_dual_raw(&g, &xi).unwrap();
            assert!((moved - plain).amax() < 1e-14);
            // t = 1: the gauge action, exactly
            let (moved, t) = model.coadjoint_extended(&g, &xi, 1.0).unwrap();
            assert_eq!(t, 1.0);
            assert!((moved - model.gauge_action(&g, &xi).unwrap()).amax() == 0.0);
            // action law on the extended dual
            let h = rng.group_element(&model.base, 0.8);
            let gh = model.base.mul(&g, &h).unwrap();
            let (lhs, _) = model.coadjoint_extended(&gh, &xi, 0.7).unwrap();
            let (mid, _) = model.coadjoint_extended(&h, &xi, 0.7).unwrap();
            let (rhs, _) = model.coadjoint_extended(&g, &mid, 0.7).unwrap();
            assert!((lhs - rhs).amax() < tolerances::ACTION_LAW);
        }
    }

    #[test]
    fn affine_poisson_basics() {
        let model = heis();
        let mut rng = SampleRng::seed(77);
        let xi = rng.dual_vector(&model.base.algebra, 1.0).coords;
        let e1 = DVector::from_vec(vec![1.0, 0.0]);
        let e2 = DVector::from_vec(vec![0.0, 1.0]);
        let f = PoissonFn::linear(e1.clone());
        // {l_X, l_X} = 0
        assert_abs_diff_eq!(model.affine_poisson(&f, &f, &xi), 0.0, epsilon = 1e-15);
        // abelian base: {l_e1, l_e2} = lambda(e1, e2) = 1, constant in xi
        let g = PoissonFn::linear(e2);
        assert_abs_diff_eq!(model.affine_poisson(&f, &g, &xi), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn affine_poisson_jacobi_on_linear_functions() {
        let model = sucob();
        let mut rng = SampleRng::seed(78);
        for _ in 0..8 {
            let xi = rng.dual_vector(&model.base.algebra, 1.0).coords;
            let x = rng.algebra_vector(&model.base.algebra, 1.0).coords;
            let y = rng.algebra_vector(&model.base.algebra, 1.0).coords;
            let z = rng.algebra_vector(&model.base.algebra, 1.0).coords;
            // {l_X, l_Y} = l_[X,Y] + lambda(X, Y): a linear function plus a
            // constant, so iterate exactly.
            let algebra = &model.base.algebra;
            let pb = |a: &DVector<f64>, b: &DVector<f64>, at: &DVector<f64>| {
                at.dot(&algebra.bracket_raw(a, b)) + model.cocycle.eval(a, b)
            };
            let bxy = algebra.bracket_raw(&x, &y);
            let byz = algebra.bracket_raw(&y, &z);
            let bzx = algebra.bracket_raw(&z, &x);
            let jac = pb(&bxy, &z, &xi) + pb(&byz, &x, &xi) + pb(&bzx, &y, &xi);
            assert!(jac.abs() < tolerances::EXACT);
        }
    }

    #[test]
    fn affine_poisson_fd_gradient_agrees() {
        let model = sucob();
        let mut rng = SampleRng::seed(79);
        let xi = rng.dual_vector(&model.base.algebra, 1.0).coords;
        let x = rng.algebra_vector(&model.base.algebra, 1.0).coords;
        let y = rng.algebra_vector(&model.base.algebra, 1.0).coords;
        let exact = PoissonFn::linear(x.clone());
        let xc = x.clone();
        let fd = PoissonFn::smooth(move |xi: &DVector<f64>| xi.dot(&xc));
        let g = PoissonFn::linear(y);
        let a = model.affine_poisson(&exact, &g, &xi);
        let b = model.affine_poisson(&fd, &g, &xi);
        assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn theta_r_values() {
        let model = heis();
        let theta = model.theta_r_form().unwrap();
        let ext = model.ext_group.clone().unwrap();
        let mut rng = SampleRng::seed(80);
        let p = SpacePoint::new(vec![
            PointComponent::Group(rng.group_element(&ext, 0.8)),
            PointComponent::Dual(rng.dual_vector(&model.base.algebra, 1.0).coords),
        ]);
        // zero group-tangent: value 0 regardless of eta
        let t0 = TangentVector::new(vec![
            TangentComponent::Algebra(DVector::zeros(3)),
            TangentComponent::Dual(DVector::from_vec(vec![0.4, -1.0])),
        ]);
        assert_eq!(theta.eval(&p, &[t0]), 0.0);
        // purely central tangent: the connection normalizes the fiber
        let tc = TangentVector::new(vec![
            TangentComponent::Algebra(DVector::from_vec(vec![0.0, 0.0, 1.0])),
            TangentComponent::Dual(DVector::zeros(2)),
        ]);
        assert_eq!(theta.eval(&p, &[tc]), 1.0);
    }

    #[test]
    fn central_period_reduction() {
        let period = std::f64::consts::TAU;
        let model = ExtensionModel::heisenberg(1, &conv())
            .unwrap()
            .with_central_period(period);
        let ext = model.ext_group.clone().unwrap();
        let x = AlgebraVector::new(
            ext.algebra.clone(),
            DVector::from_vec(vec![0.0, 0.0, 0.3 + period]),
        )
        .unwrap();
        let g = ext.exp(&x).unwrap();
        let c = model.central_coordinate(&g).unwrap();
        assert_abs_diff_eq!(c, 0.3, epsilon = 1e-12);
    }
}
