//! Pointwise differential forms on labeled product spaces, a
//! finite-difference exterior derivative in trivialized frames with exact
//! bracket corrections, tangent maps, and pullbacks.
//!
//! Group-factor tangents are right-trivialized throughout: the tangent at
//! `g` is `v.g` for `v` in the algebra, and a point moves along `v` as
//! `g -> exp(t v) g`. Linear factors move by addition. In this frame the
//! extension vector fields have constant coordinates, and their Lie bracket
//! is `frame_bracket_sign * [v, w]` on group factors (zero on linear ones),
//! so the Koszul formula needs only first differences plus exact bracket
//! corrections.

use std::sync::Arc;

use nalgebra::DVector;

use crate::conventions::Conventions;
use crate::lie::{GroupElement, GroupModel, LieAlgebra, LieError};
use crate::loopspace::{AlgebraLoop, GroupLoop};

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("point/tangent does not match the space descriptor at factor {0}")]
    ComponentMismatch(usize),
    #[error("form of degree {form} applied to {args} tangent arguments")]
    DegreeMismatch { form: usize, args: usize },
    #[error("spaces do not match: {0}")]
    SpaceMismatch(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// One factor of a labeled product space.
#[derive(Clone, Debug)]
pub enum Atom {
    Group(Arc<GroupModel>),
    Dual(Arc<LieAlgebra>),
    LoopAlgebra(Arc<LieAlgebra>, usize),
    LoopGroup(Arc<GroupModel>, usize),
}

#[derive(Clone, Debug)]
pub struct SpaceDescriptor {
    pub factors: Vec<Atom>,
}

impl SpaceDescriptor {
    pub fn new(factors: Vec<Atom>) -> Self {
        assert!(!factors.is_empty());
        SpaceDescriptor { factors }
    }

    /// Total tangent dimension (loop factors count grid points x algebra dim).
    pub fn tangent_dim(&self) -> usize {
        self.factors
            .iter()
            .map(|a| match a {
                Atom::Group(m) => m.algebra.dim(),
                Atom::Dual(alg) => alg.dim(),
                Atom::LoopAlgebra(alg, n) | Atom::LoopGroup(_, _) if false => {
                    let _ = (alg, n);
                    unreachable!()
                }
                Atom::LoopAlgebra(alg, n) => alg.dim() * n,
                Atom::LoopGroup(m, n) => m.algebra.dim() * n,
            })
            .sum()
    }
}

#[derive(Clone, Debug)]
pub enum PointComponent {
    Group(GroupElement),
    Dual(DVector<f64>),
    LoopAlgebra(AlgebraLoop),
    LoopGroup(GroupLoop),
}

#[derive(Clone, Debug)]
pub struct SpacePoint {
    pub components: Vec<PointComponent>,
}

impl SpacePoint {
    pub fn new(components: Vec<PointComponent>) -> Self {
        SpacePoint { components }
    }

    pub fn group(&self, i: usize) -> &GroupElement {
        match &self.components[i] {
            PointComponent::Group(g) => g,
            other => panic!("factor {i} is not a group point: {other:?}"),
        }
    }

    pub fn dual(&self, i: usize) -> &DVector<f64> {
        match &self.components[i] {
            PointComponent::Dual(d) => d,
            other => panic!("factor {i} is not a dual point: {other:?}"),
        }
    }

    pub fn loop_algebra(&self, i: usize) -> &AlgebraLoop {
        match &self.components[i] {
            PointComponent::LoopAlgebra(l) => l,
            other => panic!("factor {i} is not an algebra loop: {other:?}"),
        }
    }

    pub fn loop_group(&self, i: usize) -> &GroupLoop {
        match &self.components[i] {
            PointComponent::LoopGroup(l) => l,
            other => panic!("factor {i} is not a group loop: {other:?}"),
        }
    }
}

/// Tangent components: algebra coordinates on group factors
/// (right-trivialized), dual coordinates on dual factors, algebra-valued
/// loops on both loop factors (right-trivialized on loop groups).
#[derive(Clone, Debug)]
pub enum TangentComponent {
    Algebra(DVector<f64>),
    Dual(DVector<f64>),
    Loop(AlgebraLoop),
}

impl TangentComponent {
    pub fn scale(&self, t: f64) -> TangentComponent {
        match self {
            TangentComponent::Algebra(v) => TangentComponent::Algebra(v * t),
            TangentComponent::Dual(v) => TangentComponent::Dual(v * t),
            TangentComponent::Loop(l) => TangentComponent::Loop(l.scale(t)),
        }
    }

    pub fn add(&self, other: &TangentComponent) -> TangentComponent {
        match (self, other) {
            (TangentComponent::Algebra(a), TangentComponent::Algebra(b)) => {
                TangentComponent::Algebra(a + b)
            }
            (TangentComponent::Dual(a), TangentComponent::Dual(b)) => {
                TangentComponent::Dual(a + b)
            }
            (TangentComponent::Loop(a), TangentComponent::Loop(b)) => {
                TangentComponent::Loop(a.add(b))
            }
            _ => panic!("mismatched tangent components"),
        }
    }

    pub fn algebra(&self) -> &DVector<f64> {
        match self {
            TangentComponent::Algebra(v) => v,
            other => panic!("not an algebra tangent: {other:?}"),
        }
    }

    pub fn dual(&self) -> &DVector<f64> {
        match self {
            TangentComponent::Dual(v) => v,
            other => panic!("not a dual tangent: {other:?}"),
        }
    }

    pub fn loop_values(&self) -> &AlgebraLoop {
        match self {
            TangentComponent::Loop(l) => l,
            other => panic!("not a loop tangent: {other:?}"),
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            TangentComponent::Algebra(v) | TangentComponent::Dual(v) => v.norm(),
            TangentComponent::Loop(l) => l.sup_norm(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TangentVector {
    pub components: Vec<TangentComponent>,
}

impl TangentVector {
    pub fn new(components: Vec<TangentComponent>) -> Self {
        TangentVector { components }
    }

    pub fn scale(&self, t: f64) -> TangentVector {
        TangentVector {
            components: self.components.iter().map(|c| c.scale(t)).collect(),
        }
    }

    pub fn add(&self, other: &TangentVector) -> TangentVector {
        TangentVector {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

/// Componentwise flow: `exp(t v) g` on group factors, `p + t v` on linear
/// factors, pointwise versions on loops.
pub fn move_point(p: &SpacePoint, v: &TangentVector, t: f64) -> SpacePoint {
    let components = p
        .components
        .iter()
        .zip(&v.components)
        .map(|(pc, vc)| match (pc, vc) {
            (PointComponent::Group(g), TangentComponent::Algebra(u)) => {
                let model = g.model.clone();
                let step = model
                    .exp(&crate::lie::AlgebraVector::new(model.algebra.clone(), u * t).unwrap())
                    .unwrap();
                PointComponent::Group(model.mul(&step, g).unwrap())
            }
            (PointComponent::Dual(d), TangentComponent::Dual(u)) => {
                PointComponent::Dual(d + u * t)
            }
            (PointComponent::LoopAlgebra(l), TangentComponent::Loop(u)) => {
                PointComponent::LoopAlgebra(l.add(&u.scale(t)))
            }
            (PointComponent::LoopGroup(l), TangentComponent::Loop(u)) => {
                PointComponent::LoopGroup(l.left_exp_move(u, t))
            }
            _ => panic!("point/tangent component mismatch"),
        })
        .collect();
    SpacePoint::new(components)
}

/// Right-trivialized difference of two nearby points, divided by `2h`:
/// `log(q_plus q_minus^{-1}) / (2h)` on group factors, linear differences
/// elsewhere. This is the central-difference tangent of a curve.
pub fn chart_difference(
    q_plus: &SpacePoint,
    q_minus: &SpacePoint,
    two_h: f64,
) -> Result<TangentVector, GeometryError> {
    let comps = q_plus
        .components
        .iter()
        .zip(&q_minus.components)
        .map(|(a, b)| {
            Ok(match (a, b) {
                (PointComponent::Group(ga), PointComponent::Group(gb)) => {
                    let model = ga.model.clone();
                    let diff = model.mul(ga, &model.inv(gb)?)?;
                    TangentComponent::Algebra(model.log(&diff)?.coords / two_h)
                }
                (PointComponent::Dual(da), PointComponent::Dual(db)) => {
                    TangentComponent::Dual((da - db) / two_h)
                }
                (PointComponent::LoopAlgebra(la), PointComponent::LoopAlgebra(lb)) => {
                    TangentComponent::Loop(la.sub(lb).scale(1.0 / two_h))
                }
                (PointComponent::LoopGroup(la), PointComponent::LoopGroup(lb)) => {
                    TangentComponent::Loop(la.log_difference(lb)?.scale(1.0 / two_h))
                }
                _ => return Err(GeometryError::ComponentMismatch(0)),
            })
        })
        .collect::<Result<Vec<_>, GeometryError>>()?;
    Ok(TangentVector::new(comps))
}

/// A degree-k alternating multilinear evaluator at a point.
#[derive(Clone)]
pub struct DifferentialForm {
    pub degree: usize,
    pub space: SpaceDescriptor,
    eval: Arc<dyn Fn(&SpacePoint, &[TangentVector]) -> f64 + Send + Sync>,
}

impl DifferentialForm {
    pub fn new(
        degree: usize,
        space: SpaceDescriptor,
        eval: impl Fn(&SpacePoint, &[TangentVector]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        DifferentialForm {
            degree,
            space,
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, p: &SpacePoint, args: &[TangentVector]) -> f64 {
        debug_assert_eq!(args.len(), self.degree);
        (self.eval)(p, args)
    }

    pub fn zero(degree: usize, space: SpaceDescriptor) -> Self {
        DifferentialForm::new(degree, space, |_, _| 0.0)
    }

    pub fn add(a: &DifferentialForm, b: &DifferentialForm) -> DifferentialForm {
        assert_eq!(a.degree, b.degree);
        let (fa, fb) = (a.clone(), b.clone());
        DifferentialForm::new(a.degree, a.space.clone(), move |p, args| {
            fa.eval(p, args) + fb.eval(p, args)
        })
    }

    pub fn scale(&self, c: f64) -> DifferentialForm {
        let f = self.clone();
        DifferentialForm::new(self.degree, self.space.clone(), move |p, args| {
            c * f.eval(p, args)
        })
    }
}

/// A smooth map between labeled product spaces, with an optional exact
/// tangent map (falls back to the central difference otherwise).
#[derive(Clone)]
pub struct SmoothMap {
    pub domain: SpaceDescriptor,
    pub codomain: SpaceDescriptor,
    point_map: Arc<dyn Fn(&SpacePoint) -> SpacePoint + Send + Sync>,
    tangent_map: Option<Arc<dyn Fn(&SpacePoint, &TangentVector) -> TangentVector + Send + Sync>>,
}

impl SmoothMap {
    pub fn new(
        domain: SpaceDescriptor,
        codomain: SpaceDescriptor,
        point_map: impl Fn(&SpacePoint) -> SpacePoint + Send + Sync + 'static,
    ) -> Self {
        SmoothMap {
            domain,
            codomain,
            point_map: Arc::new(point_map),
            tangent_map: None,
        }
    }

    pub fn with_tangent(
        mut self,
        tangent: impl Fn(&SpacePoint, &TangentVector) -> TangentVector + Send + Sync + 'static,
    ) -> Self {
        self.tangent_map = Some(Arc::new(tangent));
        self
    }

    pub fn identity(space: SpaceDescriptor) -> Self {
        SmoothMap::new(space.clone(), space, |p| p.clone()).with_tangent(|_, v| v.clone())
    }

    pub fn apply(&self, p: &SpacePoint) -> SpacePoint {
        (self.point_map)(p)
    }

    pub fn has_exact_tangent(&self) -> bool {
        self.tangent_map.is_some()
    }

    /// Exact tangent when available, else `tangent_map_fd`.
    pub fn tangent(&self, p: &SpacePoint, v: &TangentVector, h: f64) -> TangentVector {
        match &self.tangent_map {
            Some(t) => t(p, v),
            None => tangent_map_fd(self, p, v, h),
        }
    }

    /// `self` after `inner` (i.e. `p -> self(inner(p))`).
    pub fn compose(outer: &SmoothMap, inner: &SmoothMap) -> SmoothMap {
        let (o, i) = (outer.clone(), inner.clone());
        let mut map = SmoothMap::new(inner.domain.clone(), outer.codomain.clone(), {
            let (o, i) = (o.clone(), i.clone());
            move |p| o.apply(&i.apply(p))
        });
        if outer.has_exact_tangent() && inner.has_exact_tangent() {
            map = map.with_tangent(move |p, v| {
                let mid = i.apply(p);
                let tv = i.tangent(p, v, 0.0);
                o.tangent(&mid, &tv, 0.0)
            });
        }
        map
    }
}

/// Central-difference tangent map along the flow of `v`.
pub fn tangent_map_fd(f: &SmoothMap, p: &SpacePoint, v: &TangentVector, h: f64) -> TangentVector {
    assert!(h > 0.0, "finite-difference tangent needs a positive step");
    let qp = f.apply(&move_point(p, v, h));
    let qm = f.apply(&move_point(p, v, -h));
    chart_difference(&qp, &qm, 2.0 * h).expect("codomain points comparable")
}

/// `(F* phi)(p; v_1..v_k) = phi(F(p); TF v_1 .. TF v_k)`.
pub fn pullback(f: &SmoothMap, phi: &DifferentialForm, h: f64) -> DifferentialForm {
    let (f, phi_c) = (f.clone(), phi.clone());
    DifferentialForm::new(phi.degree, f.domain.clone(), move |p, args| {
        let fp = f.apply(p);
        let mapped: Vec<TangentVector> = args.iter().map(|v| f.tangent(p, v, h)).collect();
        phi_c.eval(&fp, &mapped)
    })
}

/// Lie bracket of the constant-coordinate frame extensions of two tangents:
/// `frame_bracket_sign * [v, w]` on group and loop-group factors
/// (pointwise on loops), zero on linear factors.
pub fn frame_bracket(
    space: &SpaceDescriptor,
    a: &TangentVector,
    b: &TangentVector,
    conv: &Conventions,
) -> TangentVector {
    let s = conv.frame_bracket_sign;
    let comps = space
        .factors
        .iter()
        .zip(a.components.iter().zip(&b.components))
        .map(|(atom, (ca, cb))| match atom {
            Atom::Group(m) => TangentComponent::Algebra(
                m.algebra.bracket_raw(ca.algebra(), cb.algebra()) * s,
            ),
            Atom::Dual(alg) => TangentComponent::Dual(DVector::zeros(alg.dim())),
            Atom::LoopAlgebra(alg, n) => {
                TangentComponent::Loop(AlgebraLoop::zero(alg.clone(), *n))
            }
            Atom::LoopGroup(m, _) => TangentComponent::Loop(
                ca.loop_values()
                    .pointwise_bracket(&m.algebra, cb.loop_values())
                    .scale(s),
            ),
        })
        .collect();
    TangentVector::new(comps)
}

/// Frame exterior derivative: the Koszul formula on trivialized-frame
/// extensions, with central differences for the directional terms and the
/// exact frame bracket for the correction terms.
pub fn exterior_derivative(
    phi: &DifferentialForm,
    h: f64,
    conv: &Conventions,
) -> DifferentialForm {
    assert!(h > 0.0);
    let k = phi.degree;
    let phi_c = phi.clone();
    let space = phi.space.clone();
    let conv = *conv;
    DifferentialForm::new(k + 1, phi.space.clone(), move |p, args| {
        debug_assert_eq!(args.len(), k + 1);
        let mut val = 0.0;
        for i in 0..=k {
            let rest: Vec<TangentVector> = args
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.clone())
                .collect();
            let pp = move_point(p, &args[i], h);
            let pm = move_point(p, &args[i], -h);
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            val += sign * (phi_c.eval(&pp, &rest) - phi_c.eval(&pm, &rest)) / (2.0 * h);
        }
        for i in 0..=k {
            for j in (i + 1)..=k {
                let mut slot = vec![frame_bracket(&space, &args[i], &args[j], &conv)];
                slot.extend(
                    args.iter()
                        .enumerate()
                        .filter(|(l, _)| *l != i && *l != j)
                        .map(|(_, v)| v.clone()),
                );
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                val += sign * phi_c.eval(p, &slot);
            }
        }
        val
    })
}

/// Right Maurer-Cartan value of a right-trivialized tangent: the identity.
pub fn maurer_cartan_right(_g: &GroupElement, v: &DVector<f64>) -> DVector<f64> {
    v.clone()
}

/// Left Maurer-Cartan value: `Ad_{g^{-1}} v`.
pub fn maurer_cartan_left(g: &GroupElement, v: &DVector<f64>) -> Result<DVector<f64>, LieError> {
    let model = g.model.clone();
    let gi = model.inv(g)?;
    model.adjoint_raw(&gi, v)
}

/// Contraction `(iota_V phi)(p; v_1..v_{k-1}) = phi(p; V(p), v_1..)`.
pub fn interior_product(
    phi: &DifferentialForm,
    field: Arc<dyn Fn(&SpacePoint) -> TangentVector + Send + Sync>,
) -> Result<DifferentialForm, GeometryError> {
    if phi.degree == 0 {
        return Err(GeometryError::DegreeMismatch { form: 0, args: 0 });
    }
    let phi_c = phi.clone();
    Ok(DifferentialForm::new(
        phi.degree - 1,
        phi.space.clone(),
        move |p, args| {
            let mut slot = vec![field(p)];
            slot.extend(args.iter().cloned());
            phi_c.eval(p, &slot)
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie;
    use crate::sampling::SampleRng;
    use crate::tolerances;

    fn su2_space() -> (Arc<GroupModel>, SpaceDescriptor) {
        let m = lie::model("su2").unwrap();
        let space = SpaceDescriptor::new(vec![Atom::Group(m.clone())]);
        (m, space)
    }

    /// A smooth non-invariant test function on SU(2).
    fn test_function(space: &SpaceDescriptor) -> DifferentialForm {
        DifferentialForm::new(0, space.clone(), |p, _| {
            let g = &p.group(0).mat;
            (g[(0, 0)].re + 2.0 * g[(0, 1)].im) * (1.0 + g[(1, 1)].re)
        })
    }

    #[test]
    fn move_by_zero_is_identity() {
        let (m, space) = su2_space();
        let mut rng = SampleRng::seed(1);
        let p = SpacePoint::new(vec![PointComponent::Group(rng.group_element(&m, 0.7))]);
        let v = rng.tangent(&space, 1.0);
        let q = move_point(&p, &v, 0.0);
        assert!(
            crate::linalg::frobenius(&(&q.group(0).mat - &p.group(0).mat)) < 1e-15
        );
    }

    #[test]
    fn move_round_trip_on_group() {
        let (m, space) = su2_space();
        let mut rng = SampleRng::seed(2);
        let p = SpacePoint::new(vec![PointComponent::Group(rng.group_element(&m, 0.7))]);
        let v = rng.tangent(&space, 1.0);
        let q = move_point(&move_point(&p, &v, 0.05), &v, -0.05);
        assert!(
            crate::linalg::frobenius(&(&q.group(0).mat - &p.group(0).mat)) < tolerances::EXACT
        );
    }

    #[test]
    fn fd_tangent_of_identity_map() {
        let (m, space) = su2_space();
        let mut rng = SampleRng::seed(3);
        let p = SpacePoint::new(vec![PointComponent::Group(rng.group_element(&m, 0.7))]);
        let v = rng.tangent(&space, 1.0);
        let id = SmoothMap::new(space.clone(), space.clone(), |p| p.clone());
        let tv = tangent_map_fd(&id, &p, &v, 1e-5);
        let diff = tv.components[0]
            .algebra()
            .clone()
            - v.components[0].algebra();
        assert!(diff.amax() < 1e-9);
    }

    #[test]
    fn fd_tangent_of_squaring_at_identity_doubles() {
        let (m, space) = su2_space();
        let mut rng = SampleRng::seed(4);
        let sq = SmoothMap::new(space.clone(), space.clone(), {
            let m = m.clone();
            move |p| {
                let g = p.group(0);
                SpacePoint::new(vec![PointComponent::Group(m.mul(g, g).unwrap())])
            }
        });
        let p = SpacePoint::new(vec![PointComponent::Group(m.identity())]);
        let v = rng.tangent(&space, 1.0);
        let tv = sq.tangent(&p, &v, 1e-5);
        let diff = tv.components[0].algebra() - v.components[0].algebra() * 2.0;
        assert!(diff.amax() < 1e-9);
    }

    #[test]
    fn fd_tangent_converges_with_order_two() {
        let (m, space) = su2_space();
        let mut rng = SampleRng::seed(5);
        // conjugation-squared map, genuinely curved
        let f = SmoothMap::new(space.clone(), space.clone(), {
            let m = m.clone();
            let a = rng.group_element(&m, 0.8);
            move |p| {
                let g = p.group(0);
                let ga = m.mul(g, &a).unwrap();
                SpacePoint::new(vec![PointComponent::Group(m.mul(&ga, g).unwrap())])
            }
        });
        let p = SpacePoint::new(vec![PointComponent::Group(rng.group_element(&m, 0.7))]);
        let v = rng.tangent(&space, 1.0);
        let t1 = f.tangent(&p, &v, 4e-3);
        let t2 = f.tangent(&p, &v, 2e-3);
        let t4 = f.tangent(&p, &v, 1e-3);
        let e1 = (t1.components[0].algebra() - t2.components[0].algebra()).amax();
        let e2 = (t2.components[0].algebra() - t4.components[0].algebra()).amax();
        let order = (e1 / e2).log2();
        assert!(order > 1.8, "observed order {order}");
    }

    #[test]
    fn d_of_constant_vanishes() {
        let (m, space) = su2_space();
        let conv = Conventions::calibrated();
        let c = DifferentialForm::new(0, space.clone(), |_, _| 3.5);
        let dc = exterior_derivative(&c, tolerances::FD_STEP, &conv);
        let mut rng = SampleRng::seed(6);
        let p = SpacePoint::new(vec![PointComponent::Group(rng.group_element(&m, 0.7))]);
        let v = rng.tangent(&space, 1.0);
        assert!(dc.eval(&p, &[v]).abs() < 1e-12);
    }

    #[test]
    fn dd_vanishes_on_functions_and_one_forms() {
        let (m, space) = su2_space();
        let conv = Conventions::calibrated();
        let mut rng = SampleRng::seed(7);
        let f = test_function(&space);
        let ddf = exterior_derivative(
            &exterior_derivative(&f, tolerances::FD_STEP, &conv),
            tolerances::FD_STEP,
            &conv,
        );
        for _ in 0..6 {
            let p = SpacePoint::new(vec![PointComponent::Group(rng.group_element(&m, 0.7))]);
            let v1 = rng.tangent(&space, 1.0);
            let v2 = rng.tangent(&space, 1.0);
            assert!(ddf.eval(&p, &[v1, v2]).abs() < tolerances::FD_IDENTITY);
        }
        // a non-invariant 1-form
        let one = DifferentialForm::new(1, space.clone(), |p, args| {
            let g = &p.group(0).mat;
            let v = args[0].components[0].algebra();
            g[(0, 0)].re * v[0] + g[(0, 1)].im * v[1] + 0.3 * v[2]
        });
        let ddone = exterior_derivative(
            &exterior_derivative(&one, tolerances::FD_STEP, &conv),
            tolerances::FD_STEP,
            &conv,
        );
        for _ in 0..4 {
            let p = SpacePoint::new(vec![PointComponent::Group(rng.group_element(&m, 0.7))]);
            let args: Vec<_> = (0..3).map(|_| rng.tangent(&space, 1.0)).collect();
            assert!(ddone.eval(&p, &args).abs() < tolerances::FD_IDENTITY);
        }
    }

    #[test]
    fn maurer_cartan_structure_equation() {
        // d of phi(v) = <xi0, v> (a right-invariant 1-form) is
        // +<xi0, [v1, v2]> in the right-invariant frame convention.
        let (m, space) = su2_space();
        let conv = Conventions::calibrated();
        let mut rng = SampleRng::seed(8);
        let xi0 = rng.dual_vector(&m.algebra, 1.0);
        let xi = xi0.coords.clone();
        let phi = DifferentialForm::new(1, space.clone(), move |_, args| {
            xi.dot(args[0].components[0].algebra())
        });
        let dphi = exterior_derivative(&phi, tolerances::FD_STEP, &conv);
        for _ in 0..6 {
            let p = SpacePoint::new(vec![PointComponent::Group(rng.group_element(&m, 0.7))]);
            let v1 = rng.tangent(&space, 1.0);
            let v2 = rng.tangent(&space, 1.0);
            let expect = xi0.coords.dot(&m.algebra.bracket_raw(
                v1.components[0].algebra(),
                v2.components[0].algebra(),
            ));
            assert!((dphi.eval(&p, &[v1, v2]) - expect).abs() < tolerances::FD_IDENTITY);
        }
    }

    #[test]
    fn maurer_cartan_left_right_at_identity() {
        let (m, _) = su2_space();
        let mut rng = SampleRng::seed(9);
        let v = rng.algebra_vector(&m.algebra, 1.0).coords;
        let e = m.identity();
        assert!((maurer_cartan_right(&e, &v) - &v).amax() < 1e-15);
        assert!((maurer_cartan_left(&e, &v).unwrap() - &v).amax() < 1e-14);
        // general point: left form equals Ad_{g^{-1}} v
        let g = rng.group_element(&m, 0.8);
        let gi = m.inv(&g).unwrap();
        let expect = m.adjoint_raw(&gi, &v).unwrap();
        assert!((maurer_cartan_left(&g, &v).unwrap() - expect).amax() < 1e-12);
    }

    #[test]
    fn pullback_functoriality_with_exact_tangents() {
        let (m, space) = su2_space();
        let mut rng = SampleRng::seed(10);
        let a = rng.group_element(&m, 0.8);
        let b = rng.group_element(&m, 0.8);
        // left translations have exact tangent maps (right-trivialized
        // tangents are unchanged)
        let translate = |c: GroupElement, m: Arc<GroupModel>| {
            SmoothMap::new(space.clone(), space.clone(), {
                let m = m.clone();
                let c = c.clone();
                move |p| {
                    SpacePoint::new(vec![PointComponent::Group(
                        m.mul(&c, p.group(0)).unwrap(),
                    )])
                }
            })
            .with_tangent(|_, v| v.clone())
        };
        let fa = translate(a, m.clone());
        let fb = translate(b, m.clone());
        let phi = DifferentialForm::new(1, space.clone(), |p, args| {
            let g = &p.group(0).mat;
            let v = args[0].components[0].algebra();
            g[(1, 0)].re * v[0] - g[(0, 0)].im * v[2]
        });
        let lhs = pullback(&fb, &pullback(&fa, &phi, 1e-5), 1e-5);
        let comp = SmoothMap::compose(&fa, &fb);
        let rhs = pullback(&comp, &phi, 1e-5);
        for _ in 0..6 {
            let p = SpacePoint::new(vec![PointComponent::Group(rng.group_element(&m, 0.7))]);
            let v = rng.tangent(&space, 1.0);
            let d = (lhs.eval(&p, &[v.clone()]) - rhs.eval(&p, &[v])).abs();
            assert!(d < tolerances::PULLBACK_FUNCTORIALITY);
        }
    }

    #[test]
    fn interior_product_directional_derivative() {
        // iota_V(df) = D_V f
        let (m, space) = su2_space();
        let conv = Conventions::calibrated();
        let mut rng = SampleRng::seed(11);
        let f = test_function(&space);
        let df = exterior_derivative(&f, tolerances::FD_STEP, &conv);
        let field_vec = rng.tangent(&space, 1.0);
        let fv = field_vec.clone();
        let contraction =
            interior_product(&df, Arc::new(move |_p: &SpacePoint| fv.clone())).unwrap();
        for _ in 0..4 {
            let p = SpacePoint::new(vec![PointComponent::Group(rng.group_element(&m, 0.7))]);
            let h = 1e-6;
            let direct = (f.eval(&move_point(&p, &field_vec, h), &[])
                - f.eval(&move_point(&p, &field_vec, -h), &[]))
                / (2.0 * h);
            assert!((contraction.eval(&p, &[]) - direct).abs() < 1e-6);
        }
        // degree-0 input is rejected
        assert!(interior_product(&f, Arc::new(|_: &SpacePoint| panic!())).is_err());
    }

    #[test]
    fn alternation_of_suite_forms_is_separately_tested() {
        // the evaluators constructed in later modules carry their own
        // alternation tests; here we check the frame bracket is
        // antisymmetric, which the Koszul correction relies on
        let (_, space) = su2_space();
        let conv = Conventions::calibrated();
        let mut rng = SampleRng::seed(12);
        let a = rng.tangent(&space, 1.0);
        let b = rng.tangent(&space, 1.0);
        let ab = frame_bracket(&space, &a, &b, &conv);
        let ba = frame_bracket(&space, &b, &a, &conv);
        let sum = ab.components[0].algebra() + ba.components[0].algebra();
        assert!(sum.amax() < 1e-15);
    }
}
