//! Deterministic sampling of algebra vectors, group elements, band-limited
//! loops, and points/tangents of labeled product spaces.
//!
//! All suite randomness flows through [`SampleRng`] seeded from the run
//! configuration, so reports are reproducible bit for bit. Loop samplers
//! are band-limited (Fourier modes up to the cap, Gaussian coefficients
//! with a 1/k falloff) so spectral derivatives and quadrature stay exact
//! and residuals isolate ODE and finite-difference error.

use std::sync::Arc;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{
    Atom, PointComponent, SpaceDescriptor, SpacePoint, TangentComponent, TangentVector,
};
use crate::lie::{AlgebraVector, DualVector, GroupElement, GroupModel, LieAlgebra};
use crate::loopspace::{AlgebraLoop, GroupLoop};

/// Amplitudes used when sampling points of a product space. The loop
/// amplitudes are kept modest so that the order-2 holonomy integrator
/// meets its tolerance targets at the default step count.
#[derive(Clone, Copy, Debug)]
pub struct SampleScales {
    pub group: f64,
    pub linear: f64,
    pub loop_algebra: f64,
    pub loop_group: f64,
    pub band: usize,
}

impl Default for SampleScales {
    fn default() -> Self {
        SampleScales {
            group: 0.7,
            linear: 1.0,
            loop_algebra: 0.2,
            loop_group: 0.1,
            band: 4,
        }
    }
}

pub struct SampleRng {
    rng: ChaCha8Rng,
}

impl SampleRng {
    pub fn seed(seed: u64) -> Self {
        SampleRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        let u1: f64 = self.rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = self.rng.gen::<f64>();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.gen()
    }

    fn normal_vector(&mut self, dim: usize, scale: f64) -> DVector<f64> {
        DVector::from_fn(dim, |_, _| self.normal() * scale)
    }

    /// Gaussian coordinates scaled by `scale / sqrt(dim)`.
    pub fn algebra_vector(&mut self, algebra: &Arc<LieAlgebra>, scale: f64) -> AlgebraVector {
        let dim = algebra.dim();
        let coords = self.normal_vector(dim, scale / (dim as f64).sqrt());
        AlgebraVector::new(algebra.clone(), coords).unwrap()
    }

    /// Uniform direction with Euclidean norm at most `bound`.
    pub fn algebra_vector_bounded(
        &mut self,
        algebra: &Arc<LieAlgebra>,
        bound: f64,
    ) -> AlgebraVector {
        let dim = algebra.dim();
        let mut v = self.normal_vector(dim, 1.0);
        let norm = v.norm().max(1e-12);
        let radius = bound * self.uniform().powf(1.0 / dim as f64);
        v *= radius / norm;
        AlgebraVector::new(algebra.clone(), v).unwrap()
    }

    pub fn dual_vector(&mut self, algebra: &Arc<LieAlgebra>, scale: f64) -> DualVector {
        let dim = algebra.dim();
        DualVector::new(algebra.clone(), self.normal_vector(dim, scale / (dim as f64).sqrt()))
            .unwrap()
    }

    /// `exp` of a bounded algebra vector.
    pub fn group_element(&mut self, model: &Arc<GroupModel>, scale: f64) -> GroupElement {
        let x = self.algebra_vector_bounded(&model.algebra, scale);
        model.exp(&x).unwrap()
    }

    /// Band-limited loop: modes `1..=band` with Gaussian coefficients
    /// falling off like `1/k`, plus a constant mode.
    pub fn algebra_loop(
        &mut self,
        algebra: &Arc<LieAlgebra>,
        n: usize,
        band: usize,
        scale: f64,
    ) -> AlgebraLoop {
        let dim = algebra.dim();
        let per = scale / (dim as f64).sqrt();
        let mut values = vec![DVector::zeros(dim); n];
        let constant = self.normal_vector(dim, per);
        for v in values.iter_mut() {
            *v += &constant;
        }
        for k in 1..=band {
            let a = self.normal_vector(dim, per / k as f64);
            let b = self.normal_vector(dim, per / k as f64);
            for (j, v) in values.iter_mut().enumerate() {
                let phase = std::f64::consts::TAU * k as f64 * j as f64 / n as f64;
                *v += &a * phase.cos() + &b * phase.sin();
            }
        }
        AlgebraLoop::new(algebra.clone(), values).unwrap()
    }

    /// Pointwise exponential of a band-limited algebra loop.
    pub fn group_loop(
        &mut self,
        model: &Arc<GroupModel>,
        n: usize,
        band: usize,
        scale: f64,
    ) -> GroupLoop {
        let x = self.algebra_loop(&model.algebra, n, band, scale);
        GroupLoop::from_exp(model, &x)
    }

    pub fn point(&mut self, space: &SpaceDescriptor, scales: &SampleScales) -> SpacePoint {
        let comps = space
            .factors
            .iter()
            .map(|atom| match atom {
                Atom::Group(m) => PointComponent::Group(self.group_element(m, scales.group)),
                Atom::Dual(alg) => {
                    PointComponent::Dual(self.dual_vector(alg, scales.linear).coords)
                }
                Atom::LoopAlgebra(alg, n) => PointComponent::LoopAlgebra(self.algebra_loop(
                    alg,
                    *n,
                    scales.band,
                    scales.loop_algebra,
                )),
                Atom::LoopGroup(m, n) => {
                    PointComponent::LoopGroup(self.group_loop(m, *n, scales.band, scales.loop_group))
                }
            })
            .collect();
        SpacePoint::new(comps)
    }

    pub fn tangent(&mut self, space: &SpaceDescriptor, scale: f64) -> TangentVector {
        self.tangent_banded(space, scale, 4)
    }

    pub fn tangent_banded(
        &mut self,
        space: &SpaceDescriptor,
        scale: f64,
        band: usize,
    ) -> TangentVector {
        let comps = space
            .factors
            .iter()
            .map(|atom| match atom {
                Atom::Group(m) => {
                    TangentComponent::Algebra(self.algebra_vector(&m.algebra, scale).coords)
                }
                Atom::Dual(alg) => {
                    TangentComponent::Dual(self.algebra_vector(alg, scale).coords)
                }
                Atom::LoopAlgebra(alg, n) => {
                    let b = band.min((*n / 8).max(1));
                    TangentComponent::Loop(self.algebra_loop(alg, *n, b, scale))
                }
                Atom::LoopGroup(m, n) => {
                    let b = band.min((*n / 8).max(1));
                    TangentComponent::Loop(self.algebra_loop(&m.algebra, *n, b, scale))
                }
            })
            .collect();
        TangentVector::new(comps)
    }
}
