//! Transformation-groupoid structure maps, nerve levels, the simplicial
//! coboundary, the total differential, and generic cocycle residual checks.
//!
//! Arrows of a transformation groupoid are stored as `(g, m)` with
//! `source(g, m) = m`, `target(g, m) = g.m` and multiplication
//! `(g, h.m) (h, m) = (gh, m)`. Composable p-tuples are charted as
//! `(g_1..g_p, m)`. The chart admits two face families (see
//! [`FaceFamily`]); which family a groupoid uses is a calibrated
//! convention, fixed jointly with the sign conventions of the forms that
//! live on it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::conventions::{Conventions, FaceFamily};
use crate::geometry::{
    exterior_derivative, pullback, Atom, DifferentialForm, GeometryError, PointComponent,
    SmoothMap, SpaceDescriptor, SpacePoint, TangentComponent, TangentVector,
};
use crate::lie::LieError;
use crate::loopspace::GroupLoop;
use crate::sampling::{SampleRng, SampleScales};

#[derive(Debug, thiserror::Error)]
pub enum SimplicialError {
    #[error("face index {i} out of range for level {p}")]
    FaceIndex { p: usize, i: usize },
    #[error("arrows are not composable (source/target residual {0:.3e})")]
    NotComposable(f64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

type ActFn = dyn Fn(&PointComponent, &SpacePoint) -> SpacePoint + Send + Sync;
type ActTangentFn = dyn Fn(&PointComponent, &SpacePoint, &TangentComponent, &TangentVector) -> TangentVector
    + Send
    + Sync;

/// A transformation groupoid `G x M` over `M` for a smooth left action,
/// with exact action tangent maps.
#[derive(Clone)]
pub struct TransformationGroupoid {
    pub name: String,
    pub group: Atom,
    pub base: SpaceDescriptor,
    pub family: FaceFamily,
    act: Arc<ActFn>,
    act_tangent: Arc<ActTangentFn>,
}

impl TransformationGroupoid {
    pub fn new(
        name: impl Into<String>,
        group: Atom,
        base: SpaceDescriptor,
        family: FaceFamily,
        act: impl Fn(&PointComponent, &SpacePoint) -> SpacePoint + Send + Sync + 'static,
        act_tangent: impl Fn(&PointComponent, &SpacePoint, &TangentComponent, &TangentVector) -> TangentVector
            + Send
            + Sync
            + 'static,
    ) -> Self {
        match group {
            Atom::Group(_) | Atom::LoopGroup(_, _) => {}
            _ => panic!("groupoid group factor must be a group atom"),
        }
        TransformationGroupoid {
            name: name.into(),
            group,
            base,
            family,
            act: Arc::new(act),
            act_tangent: Arc::new(act_tangent),
        }
    }

    pub fn act(&self, g: &PointComponent, m: &SpacePoint) -> SpacePoint {
        (self.act)(g, m)
    }

    pub fn act_tangent(
        &self,
        g: &PointComponent,
        m: &SpacePoint,
        u: &TangentComponent,
        eta: &TangentVector,
    ) -> TangentVector {
        (self.act_tangent)(g, m, u, eta)
    }

    /// Action of the group inverse, with its exact tangent.
    pub fn act_inv(&self, g: &PointComponent, m: &SpacePoint) -> SpacePoint {
        (self.act)(&self.g_inv(g), m)
    }

    pub fn act_inv_tangent(
        &self,
        g: &PointComponent,
        m: &SpacePoint,
        u: &TangentComponent,
        eta: &TangentVector,
    ) -> TangentVector {
        // velocity of g^{-1} along the right-trivialized u is -Ad_{g^{-1}} u
        let gi = self.g_inv(g);
        let ui = self.g_adjoint(&gi, u).scale(-1.0);
        (self.act_tangent)(&gi, m, &ui, eta)
    }

    pub fn g_mul(&self, a: &PointComponent, b: &PointComponent) -> PointComponent {
        match (a, b) {
            (PointComponent::Group(x), PointComponent::Group(y)) => {
                PointComponent::Group(x.model.mul(x, y).expect("same model"))
            }
            (PointComponent::LoopGroup(x), PointComponent::LoopGroup(y)) => {
                PointComponent::LoopGroup(x.mul(y))
            }
            _ => panic!("mismatched group components"),
        }
    }

    pub fn g_inv(&self, a: &PointComponent) -> PointComponent {
        match a {
            PointComponent::Group(x) => PointComponent::Group(x.model.inv(x).expect("model")),
            PointComponent::LoopGroup(x) => PointComponent::LoopGroup(x.inv()),
            _ => panic!("not a group component"),
        }
    }

    pub fn g_identity(&self) -> PointComponent {
        match &self.group {
            Atom::Group(m) => PointComponent::Group(m.identity()),
            Atom::LoopGroup(m, n) => PointComponent::LoopGroup(GroupLoop::constant(
                m.clone(),
                *n,
                m.identity(),
            )),
            _ => unreachable!(),
        }
    }

    /// `Ad_g u` on the group factor (pointwise for loop groups).
    pub fn g_adjoint(&self, g: &PointComponent, u: &TangentComponent) -> TangentComponent {
        match (g, u) {
            (PointComponent::Group(x), TangentComponent::Algebra(v)) => {
                TangentComponent::Algebra(x.model.adjoint_raw(x, v).expect("adjoint"))
            }
            (PointComponent::LoopGroup(x), TangentComponent::Loop(v)) => {
                TangentComponent::Loop(x.pointwise_adjoint(v))
            }
            _ => panic!("mismatched adjoint arguments"),
        }
    }

    pub fn arrow_space(&self) -> SpaceDescriptor {
        self.nerve(1)
    }

    /// `Gamma_p = G^p x M` (for `p = 0`, the base).
    pub fn nerve(&self, p: usize) -> SpaceDescriptor {
        let mut factors = Vec::with_capacity(p + self.base.factors.len());
        for _ in 0..p {
            factors.push(self.group.clone());
        }
        factors.extend(self.base.factors.iter().cloned());
        SpaceDescriptor::new(factors)
    }

    fn split_arrowlike<'a>(&self, p: usize, point: &'a SpacePoint) -> (Vec<&'a PointComponent>, SpacePoint) {
        let gs: Vec<&PointComponent> = point.components[..p].iter().collect();
        let m = SpacePoint::new(point.components[p..].to_vec());
        (gs, m)
    }

    fn split_tangent(&self, p: usize, t: &TangentVector) -> (Vec<TangentComponent>, TangentVector) {
        let us = t.components[..p].to_vec();
        let eta = TangentVector::new(t.components[p..].to_vec());
        (us, eta)
    }

    pub fn source(&self, arrow: &SpacePoint) -> SpacePoint {
        SpacePoint::new(arrow.components[1..].to_vec())
    }

    pub fn target(&self, arrow: &SpacePoint) -> SpacePoint {
        let (gs, m) = self.split_arrowlike(1, arrow);
        self.act(gs[0], &m)
    }

    pub fn unit(&self, m: &SpacePoint) -> SpacePoint {
        let mut comps = vec![self.g_identity()];
        comps.extend(m.components.iter().cloned());
        SpacePoint::new(comps)
    }

    pub fn inverse(&self, arrow: &SpacePoint) -> SpacePoint {
        let (gs, m) = self.split_arrowlike(1, arrow);
        let mut comps = vec![self.g_inv(gs[0])];
        comps.extend(self.act(gs[0], &m).components);
        SpacePoint::new(comps)
    }

    /// `(g, h.m) (h, m) = (gh, m)`; the composability residual is checked
    /// against `tol`.
    pub fn mult(
        &self,
        a: &SpacePoint,
        b: &SpacePoint,
        tol: f64,
    ) -> Result<SpacePoint, SimplicialError> {
        let r = base_distance(&self.source(a), &self.target(b));
        if r > tol {
            return Err(SimplicialError::NotComposable(r));
        }
        let (ga, _) = self.split_arrowlike(1, a);
        let (gb, mb) = self.split_arrowlike(1, b);
        let mut comps = vec![self.g_mul(ga[0], gb[0])];
        comps.extend(mb.components);
        Ok(SpacePoint::new(comps))
    }

    /// The i-th face `Gamma_p -> Gamma_{p-1}` in the calibrated family,
    /// with exact tangent map.
    pub fn face(&self, p: usize, i: usize) -> Result<SmoothMap, SimplicialError> {
        if p == 0 || i > p {
            return Err(SimplicialError::FaceIndex { p, i });
        }
        let gpd = self.clone();
        let family = self.family;
        let domain = self.nerve(p);
        let codomain = self.nerve(p - 1);
        let point_map = {
            let gpd = gpd.clone();
            move |pt: &SpacePoint| gpd.face_point(family, p, i, pt)
        };
        let gpd_t = gpd.clone();
        let map = SmoothMap::new(domain, codomain, point_map).with_tangent(move |pt, v| {
            gpd_t.face_tangent(family, p, i, pt, v)
        });
        Ok(map)
    }

    fn face_point(&self, family: FaceFamily, p: usize, i: usize, pt: &SpacePoint) -> SpacePoint {
        let (gs, m) = self.split_arrowlike(p, pt);
        let mut out_gs: Vec<PointComponent> = Vec::with_capacity(p - 1);
        let mut out_m = m.clone();
        match family {
            FaceFamily::Source => {
                if i == 0 {
                    out_gs.extend(gs[1..].iter().map(|g| (*g).clone()));
                } else if i == p {
                    out_gs.extend(gs[..p - 1].iter().map(|g| (*g).clone()));
                    out_m = self.act(gs[p - 1], &m);
                } else {
                    for (idx, g) in gs.iter().enumerate() {
                        if idx + 1 == i {
                            out_gs.push(self.g_mul(g, gs[idx + 1]));
                        } else if idx == i {
                            // merged into the previous slot
                        } else {
                            out_gs.push((*g).clone());
                        }
                    }
                }
            }
            FaceFamily::Target => {
                if i == 0 {
                    out_gs.extend(gs[1..].iter().map(|g| (*g).clone()));
                    out_m = self.act_inv(gs[0], &m);
                } else if i == p {
                    out_gs.extend(gs[..p - 1].iter().map(|g| (*g).clone()));
                } else {
                    for (idx, g) in gs.iter().enumerate() {
                        if idx + 1 == i {
                            out_gs.push(self.g_mul(g, gs[idx + 1]));
                        } else if idx == i {
                        } else {
                            out_gs.push((*g).clone());
                        }
                    }
                }
            }
        }
        let mut comps = out_gs;
        comps.extend(out_m.components);
        SpacePoint::new(comps)
    }

    fn face_tangent(
        &self,
        family: FaceFamily,
        p: usize,
        i: usize,
        pt: &SpacePoint,
        v: &TangentVector,
    ) -> TangentVector {
        let (gs, m) = self.split_arrowlike(p, pt);
        let (us, eta) = self.split_tangent(p, v);
        let mut out_us: Vec<TangentComponent> = Vec::with_capacity(p - 1);
        let mut out_eta = eta.clone();
        match family {
            FaceFamily::Source => {
                if i == 0 {
                    out_us.extend(us[1..].iter().cloned());
                } else if i == p {
                    out_us.extend(us[..p - 1].iter().cloned());
                    out_eta = self.act_tangent(gs[p - 1], &m, &us[p - 1], &eta);
                } else {
                    for idx in 0..p {
                        if idx + 1 == i {
                            // product slot g_i g_{i+1}: velocity u_i + Ad_{g_i} u_{i+1}
                            let transported = self.g_adjoint(gs[idx], &us[idx + 1]);
                            out_us.push(us[idx].add(&transported));
                        } else if idx == i {
                        } else {
                            out_us.push(us[idx].clone());
                        }
                    }
                }
            }
            FaceFamily::Target => {
                if i == 0 {
                    out_us.extend(us[1..].iter().cloned());
                    out_eta = self.act_inv_tangent(gs[0], &m, &us[0], &eta);
                } else if i == p {
                    out_us.extend(us[..p - 1].iter().cloned());
                } else {
                    for idx in 0..p {
                        if idx + 1 == i {
                            let transported = self.g_adjoint(gs[idx], &us[idx + 1]);
                            out_us.push(us[idx].add(&transported));
                        } else if idx == i {
                        } else {
                            out_us.push(us[idx].clone());
                        }
                    }
                }
            }
        }
        let mut comps = out_us;
        comps.extend(out_eta.components);
        TangentVector::new(comps)
    }

    /// `del(phi) = sum_i (-1)^i d_i^* phi` for a form on `Gamma_p`.
    pub fn coboundary(&self, phi: &DifferentialForm, p: usize, h: f64) -> DifferentialForm {
        let mut out = DifferentialForm::zero(phi.degree, self.nerve(p + 1));
        for i in 0..=(p + 1) {
            let face = self.face(p + 1, i).expect("face index in range");
            let pulled = pullback(&face, phi, h);
            let signed = if i % 2 == 0 { pulled } else { pulled.scale(-1.0) };
            out = DifferentialForm::add(&out, &signed);
        }
        out
    }
}

fn base_distance(a: &SpacePoint, b: &SpacePoint) -> f64 {
    a.components
        .iter()
        .zip(&b.components)
        .map(|(x, y)| match (x, y) {
            (PointComponent::Group(g), PointComponent::Group(h)) => {
                crate::linalg::frobenius(&(&g.mat - &h.mat))
            }
            (PointComponent::Dual(g), PointComponent::Dual(h)) => (g - h).amax(),
            (PointComponent::LoopAlgebra(g), PointComponent::LoopAlgebra(h)) => {
                g.sub(h).sup_norm()
            }
            (PointComponent::LoopGroup(g), PointComponent::LoopGroup(h)) => g.distance(h),
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max)
}

/// A total cochain: one form on each listed nerve level, with fixed total
/// degree `p + deg`.
pub struct TotalCochain {
    pub total_degree: usize,
    pub components: BTreeMap<usize, DifferentialForm>,
}

impl TotalCochain {
    pub fn new(total_degree: usize, parts: Vec<(usize, DifferentialForm)>) -> Self {
        let mut components = BTreeMap::new();
        for (p, form) in parts {
            assert_eq!(form.degree + p, total_degree, "degree bookkeeping");
            components.insert(p, form);
        }
        TotalCochain {
            total_degree,
            components,
        }
    }
}

/// Componentwise total differential `delta = sign(p) d + del`, where
/// `sign(p)` is `(-1)^p` or `(-1)^(p+1)` according to the calibrated
/// `delta_d_sign`.
pub fn total_differential(
    c: &TotalCochain,
    gpd: &TransformationGroupoid,
    h: f64,
    conv: &Conventions,
) -> TotalCochain {
    let mut parts: BTreeMap<usize, DifferentialForm> = BTreeMap::new();
    let mut add_part = |p: usize, form: DifferentialForm| {
        let entry = match parts.remove(&p) {
            Some(existing) => DifferentialForm::add(&existing, &form),
            None => form,
        };
        parts.insert(p, entry);
    };
    for (&p, form) in &c.components {
        let base_sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        let sign = if conv.delta_d_sign < 0.0 {
            -base_sign
        } else {
            base_sign
        };
        add_part(p, exterior_derivative(form, h, conv).scale(sign));
        add_part(p + 1, gpd.coboundary(form, p, h));
    }
    TotalCochain {
        total_degree: c.total_degree + 1,
        components: parts.into_iter().collect(),
    }
}

/// Max residual of `delta c = 0` per component slot `(p, k)`, over random
/// samples of nerve points and tangents.
pub fn cocycle_residual(
    c: &TotalCochain,
    gpd: &TransformationGroupoid,
    samples: usize,
    rng: &mut SampleRng,
    scales: &SampleScales,
    h: f64,
    conv: &Conventions,
) -> Vec<(String, f64)> {
    let delta = total_differential(c, gpd, h, conv);
    let mut out = Vec::new();
    for (&p, form) in &delta.components {
        let space = gpd.nerve(p);
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let pt = rng.point(&space, scales);
            let args: Vec<TangentVector> =
                (0..form.degree).map(|_| rng.tangent(&space, 1.0)).collect();
            worst = worst.max(form.eval(&pt, &args).abs());
        }
        out.push((format!("p={p},k={}", form.degree), worst));
    }
    out
}

/// Residuals of the groupoid axioms at random samples: action laws,
/// source/target compatibility, unit, inverse, and associativity.
pub fn groupoid_axiom_residual(
    gpd: &TransformationGroupoid,
    samples: usize,
    rng: &mut SampleRng,
    scales: &SampleScales,
) -> f64 {
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let m = rng.point(&gpd.base, scales);
        let g = rng
            .point(&SpaceDescriptor::new(vec![gpd.group.clone()]), scales)
            .components
            .remove(0);
        let h = rng
            .point(&SpaceDescriptor::new(vec![gpd.group.clone()]), scales)
            .components
            .remove(0);
        // e.m = m
        let e = gpd.g_identity();
        worst = worst.max(base_distance(&gpd.act(&e, &m), &m));
        // (gh).m = g.(h.m)
        let gh = gpd.g_mul(&g, &h);
        worst = worst.max(base_distance(
            &gpd.act(&gh, &m),
            &gpd.act(&g, &gpd.act(&h, &m)),
        ));
        // arrows
        let hm = gpd.act(&h, &m);
        let mut a_comps = vec![g.clone()];
        a_comps.extend(hm.components.clone());
        let a = SpacePoint::new(a_comps);
        let mut b_comps = vec![h.clone()];
        b_comps.extend(m.components.clone());
        let b = SpacePoint::new(b_comps);
        let ab = gpd.mult(&a, &b, 1e-6).expect("constructed composable");
        // s(ab) = s(b), t(ab) = t(a)
        worst = worst.max(base_distance(&gpd.source(&ab), &gpd.source(&b)));
        worst = worst.max(base_distance(&gpd.target(&ab), &gpd.target(&a)));
        // unit laws
        let unit_s = gpd.unit(&gpd.source(&b));
        let unit_t = gpd.unit(&gpd.target(&b));
        let right = gpd.mult(&b, &unit_s, 1e-6).expect("unit composable");
        let left = gpd.mult(&unit_t, &b, 1e-6).expect("unit composable");
        worst = worst.max(arrow_distance(&right, &b));
        worst = worst.max(arrow_distance(&left, &b));
        // inverse law: b b^{-1} = unit at t(b)
        let binv = gpd.inverse(&b);
        let prod = gpd.mult(&b, &binv, 1e-6).expect("inverse composable");
        worst = worst.max(arrow_distance(&prod, &unit_t));
        // associativity with a third arrow
        let k = rng
            .point(&SpaceDescriptor::new(vec![gpd.group.clone()]), scales)
            .components
            .remove(0);
        let mut c_comps = vec![k.clone()];
        c_comps.extend(gpd.act(&gh, &m).components.clone());
        let c = SpacePoint::new(c_comps);
        let left_assoc = gpd
            .mult(&gpd.mult(&c, &a, 1e-6).unwrap(), &b, 1e-6)
            .unwrap();
        let right_assoc = gpd
            .mult(&c, &gpd.mult(&a, &b, 1e-6).unwrap(), 1e-6)
            .unwrap();
        worst = worst.max(arrow_distance(&left_assoc, &right_assoc));
    }
    worst
}

fn arrow_distance(a: &SpacePoint, b: &SpacePoint) -> f64 {
    base_distance(a, b)
}

/// Max residual of the simplicial identities `d_i d_j = d_{j-1} d_i`
/// (`i < j`) on random points of `Gamma_p`.
pub fn simplicial_identity_residual(
    gpd: &TransformationGroupoid,
    p: usize,
    samples: usize,
    rng: &mut SampleRng,
    scales: &SampleScales,
) -> f64 {
    let space = gpd.nerve(p);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let pt = rng.point(&space, scales);
        for j in 1..=p {
            for i in 0..j {
                let dj = gpd.face(p, j).unwrap();
                let di_after = gpd.face(p - 1, i).unwrap();
                let lhs = di_after.apply(&dj.apply(&pt));
                let di = gpd.face(p, i).unwrap();
                let dj_after = gpd.face(p - 1, j - 1).unwrap();
                let rhs = dj_after.apply(&di.apply(&pt));
                worst = worst.max(arrow_distance(&lhs, &rhs));
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::central_ext::ExtensionModel;
    use crate::conventions::Conventions;
    use crate::tolerances;

    fn su2_gauge() -> TransformationGroupoid {
        let conv = Conventions::calibrated();
        ExtensionModel::su2_coboundary(&conv)
            .unwrap()
            .gamma_groupoid()
    }

    #[test]
    fn groupoid_axioms_hold() {
        let gpd = su2_gauge();
        let mut rng = SampleRng::seed(31);
        let worst =
            groupoid_axiom_residual(&gpd, 12, &mut rng, &SampleScales::default());
        assert!(worst < tolerances::GROUPOID_AXIOMS, "residual {worst:.3e}");
    }

    #[test]
    fn simplicial_identities_up_to_level_three() {
        let gpd = su2_gauge();
        let mut rng = SampleRng::seed(33);
        for p in 2..=3 {
            let worst =
                simplicial_identity_residual(&gpd, p, 6, &mut rng, &SampleScales::default());
            assert!(
                worst < tolerances::SIMPLICIAL_IDENTITY,
                "p={p} residual {worst:.3e}"
            );
        }
    }

    #[test]
    fn level_one_faces_are_the_endpoint_maps() {
        // target family: d_0 is the inverse action, d_1 the projection
        let gpd = su2_gauge();
        let mut rng = SampleRng::seed(35);
        let arrow = rng.point(&gpd.nerve(1), &SampleScales::default());
        let d0 = gpd.face(1, 0).unwrap().apply(&arrow);
        let d1 = gpd.face(1, 1).unwrap().apply(&arrow);
        let (g, m) = (arrow.components[0].clone(), gpd.source(&arrow));
        assert!(base_distance(&d1, &m) < 1e-14);
        let expect = gpd.act_inv(&g, &m);
        assert!(base_distance(&d0, &expect) < 1e-14);
        // the groupoid-inverse of the arrow has matching endpoints
        let inv = gpd.inverse(&arrow);
        assert!(base_distance(&gpd.source(&inv), &gpd.target(&arrow)) < 1e-12);
        assert!(base_distance(&gpd.target(&inv), &gpd.source(&arrow)) < 1e-10);
    }

    #[test]
    fn coboundary_of_base_function() {
        // del(f)(g, m) = f(d_0(g,m)) - f(d_1(g,m)); for a constant f it
        // vanishes, for a generic f it is the two-face difference.
        let gpd = su2_gauge();
        let conv = Conventions::calibrated();
        let mut rng = SampleRng::seed(37);
        let constf = DifferentialForm::new(0, gpd.nerve(0), |_, _| 2.0);
        let delc = gpd.coboundary(&constf, 0, tolerances::FD_STEP);
        let arrow = rng.point(&gpd.nerve(1), &SampleScales::default());
        assert!(delc.eval(&arrow, &[]).abs() < 1e-14);

        let f = DifferentialForm::new(0, gpd.nerve(0), |p, _| p.dual(0)[0] * 2.0 + p.dual(0)[2]);
        let delf = gpd.coboundary(&f, 0, tolerances::FD_STEP);
        let d0 = gpd.face(1, 0).unwrap().apply(&arrow);
        let d1 = gpd.face(1, 1).unwrap().apply(&arrow);
        let expect = f.eval(&d0, &[]) - f.eval(&d1, &[]);
        assert!((delf.eval(&arrow, &[]) - expect).abs() < 1e-14);
        let _ = conv;
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let gpd = su2_gauge();
        let mut rng = SampleRng::seed(39);
        // a 1-form on the arrow space with nontrivial dependence
        let phi = DifferentialForm::new(1, gpd.nerve(1), |p, args| {
            let g = &p.group(0).mat;
            let xi = p.dual(1);
            let u = args[0].components[0].algebra();
            let eta = args[0].components[1].dual();
            g[(0, 0)].re * u[1] + xi[0] * eta[2] + 0.2 * u[0] * xi[1]
        });
        let ddphi = gpd.coboundary(&gpd.coboundary(&phi, 1, 1e-4), 2, 1e-4);
        let space = gpd.nerve(3);
        for _ in 0..6 {
            let pt = rng.point(&space, &SampleScales::default());
            let v = rng.tangent(&space, 1.0);
            let r = ddphi.eval(&pt, &[v]).abs();
            assert!(r < tolerances::COBOUNDARY_SQUARED, "residual {r:.3e}");
        }
    }

    #[test]
    fn exact_cochains_have_small_cocycle_residual() {
        // c = delta(b) for a random 2-cochain b must pass the degree-3
        // cocycle residual check at finite-difference tolerance.
        let gpd = su2_gauge();
        let conv = Conventions::calibrated();
        let mut rng = SampleRng::seed(41);
        let b0 = DifferentialForm::new(2, gpd.nerve(0), |p, args| {
            let xi = p.dual(0);
            let a = args[0].components[0].dual();
            let b = args[1].components[0].dual();
            (1.0 + 0.3 * xi[1]) * (a[0] * b[2] - a[2] * b[0])
        });
        let b1 = DifferentialForm::new(1, gpd.nerve(1), |p, args| {
            let g = &p.group(0).mat;
            let u = args[0].components[0].algebra();
            let eta = args[0].components[1].dual();
            g[(1, 1)].re * u[0] + 0.4 * eta[1]
        });
        let b = TotalCochain::new(2, vec![(0, b0), (1, b1)]);
        let c = total_differential(&b, &gpd, tolerances::FD_STEP, &conv);
        let resid = cocycle_residual(
            &c,
            &gpd,
            6,
            &mut rng,
            &SampleScales::default(),
            tolerances::FD_STEP,
            &conv,
        );
        for (slot, r) in resid {
            assert!(r < 20.0 * tolerances::FD_IDENTITY, "{slot}: {r:.3e}");
        }
    }
}
