//! Centralized residual tolerances with numerical justification.
//!
//! Every threshold used by the verification suites is defined here, not
//! inline at call sites. Tolerances fall into three tiers:
//!
//! | Tier | Basis | Typical value |
//! |------|-------|---------------|
//! | exact | closed formulas, f64 rounding only | 1e-12 .. 1e-10 |
//! | exact-composed | exact tangent maps through ODE/quadrature paths | 1e-8 .. 1e-6 |
//! | finite-difference | central differences, step `FD_STEP` | 1e-5 .. 1e-4 |

/// Residuals of algebraic identities evaluated by closed formulas
/// (structure-constant antisymmetry, Jacobi, bilinear-form symmetry,
/// alternation of form evaluators). Pure f64 rounding.
pub const EXACT: f64 = 1e-12;

/// Residuals that compose a handful of exact operations (matrix products,
/// conjugations, least-squares projections). Allows ~100x rounding
/// accumulation over `EXACT`.
pub const EXACT_COMPOSED: f64 = 1e-10;

/// Matrix log/exp round trip for |x| <= 1: inverse scaling-and-squaring
/// with a Gregory series, validated against the round-trip invariant.
pub const EXP_LOG_ROUND_TRIP: f64 = 1e-10;

/// Adjoint conjugation must land back in the algebra span; beyond this the
/// model registry is broken.
pub const ALGEBRA_PROJECTION: f64 = 1e-8;

/// Group membership residual (unitarity/orthogonality + determinant, or
/// unipotent shape) for stored group elements and ODE paths.
pub const MEMBERSHIP: f64 = 1e-10;

/// Default finite-difference step for frame exterior derivatives.
/// Balances O(h^2) truncation against f64 cancellation: truncation
/// ~ h^2 |f'''| ~ 1e-8, cancellation ~ eps/h^2 ~ 1e-8 for nested
/// second differences.
pub const FD_STEP: f64 = 1e-4;

/// Residual of d(d(f)) = 0 and of single-d identities evaluated by
/// central differences at `FD_STEP`.
pub const FD_IDENTITY: f64 = 1e-5;

/// Pullback functoriality with exact tangent maps.
pub const PULLBACK_FUNCTORIALITY: f64 = 1e-8;

/// Simplicial face identities d_i d_j = d_{j-1} d_i, exact point maps.
pub const SIMPLICIAL_IDENTITY: f64 = 1e-12;

/// del(del(phi)) = 0 with exact tangent maps.
pub const COBOUNDARY_SQUARED: f64 = 1e-10;

/// Groupoid axioms (action laws, unit/inverse laws, associativity).
pub const GROUPOID_AXIOMS: f64 = 1e-10;

/// Multiplicativity del(omega) = 0 of the descended two-form, exact
/// tangent maps.
pub const OMEGA_MULTIPLICATIVE: f64 = 1e-8;

/// Multiplicativity del(theta) = 0 of the connection one-form, exact.
pub const THETA_MULTIPLICATIVE: f64 = 1e-10;

/// Vertical insertion / central-translation invariance of the restricted
/// symplectic form, and the formula-level descent omega_R = pi*omega_Gamma.
pub const BASIC_FORM: f64 = 1e-12;

/// Lower bound on the smallest singular value of the symplectic Gram
/// matrix at random points (nondegeneracy witness).
pub const NONDEGENERACY_MIN_SV: f64 = 1e-6;

/// Group one-cocycle law chi(gh) = Ad*-twisted sum, exact formulas.
pub const COCYCLE_LAW: f64 = 1e-10;

/// Left-action law of the gauge action, exact formulas.
pub const ACTION_LAW: f64 = 1e-10;

/// Two-form cocycle component del(omega) = 0 on the conjugation groupoid,
/// exact tangent maps.
pub const CONJUGATION_DEL_OMEGA: f64 = 1e-8;

/// Loop-algebra cocycle identities on band-limited loops (spectral
/// derivative is exact; rounding accumulates over the grid).
pub const LOOP_COCYCLE: f64 = 1e-10;

/// Algebra-projection residual of the loop log-derivative g' g^{-1} for
/// band-limited group loops.
pub const LOOP_PROJECTION: f64 = 1e-8;

/// Left-action law of the loop gauge action.
pub const LOOP_ACTION_LAW: f64 = 1e-8;

/// Holonomy of the constant loop against the closed-form exponential.
pub const HOLONOMY_CONSTANT: f64 = 1e-8;

/// Gauge equivariance of holonomy at the default grid (order-2
/// exponential midpoint, 1024 steps, sampler amplitudes below 0.25).
pub const HOLONOMY_EQUIVARIANCE: f64 = 1e-6;

/// Tangent holonomy against a central finite difference of holonomy.
pub const TANGENT_HOLONOMY_FD: f64 = 1e-5;

/// Transgression identity hol*Omega = d(mu) with the loop-space finite
/// difference on top of the ODE error.
pub const TRANSGRESSION: f64 = 1e-4;

/// Multiplicativity del(omega) = 0 of the loop groupoid form.
pub const LOOP_OMEGA_MULTIPLICATIVE: f64 = 1e-6;

/// Both graded components of the descent identity
/// omega_loop - f*(omega + Omega) = delta(mu).
pub const DESCENT_IDENTITY: f64 = 1e-4;

/// Groupoid-morphism residuals of the holonomy morphism and all bimodule
/// axioms (dominated by the ODE error).
pub const MORITA: f64 = 1e-6;

/// Relative error of the volume-factorized period integral against the
/// coordinate-chart quadrature cross-check.
pub const PERIOD_RELATIVE: f64 = 1e-3;

/// Degree-0 (exact pairing) component of the equivariant-closure check.
pub const CARTAN_EXACT: f64 = 1e-12;

/// Degree-2 (finite-difference) component of the equivariant-closure check.
pub const CARTAN_FD: f64 = 1e-5;

/// Observed convergence order of the holonomy integrator must be at least
/// this (Richardson ratio test; midpoint scheme is order 2).
pub const HOLONOMY_MIN_ORDER: f64 = 2.0 - 0.2;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tier_ordering() {
        assert!(EXACT < EXACT_COMPOSED);
        assert!(EXACT_COMPOSED < OMEGA_MULTIPLICATIVE);
        assert!(OMEGA_MULTIPLICATIVE < FD_IDENTITY);
        assert!(FD_IDENTITY < DESCENT_IDENTITY);
    }

    #[test]
    fn all_positive() {
        for t in [
            EXACT,
            EXACT_COMPOSED,
            EXP_LOG_ROUND_TRIP,
            ALGEBRA_PROJECTION,
            MEMBERSHIP,
            FD_STEP,
            FD_IDENTITY,
            PULLBACK_FUNCTORIALITY,
            SIMPLICIAL_IDENTITY,
            COBOUNDARY_SQUARED,
            GROUPOID_AXIOMS,
            OMEGA_MULTIPLICATIVE,
            THETA_MULTIPLICATIVE,
            BASIC_FORM,
            NONDEGENERACY_MIN_SV,
            COCYCLE_LAW,
            ACTION_LAW,
            CONJUGATION_DEL_OMEGA,
            LOOP_COCYCLE,
            LOOP_PROJECTION,
            LOOP_ACTION_LAW,
            HOLONOMY_CONSTANT,
            HOLONOMY_EQUIVARIANCE,
            TANGENT_HOLONOMY_FD,
            TRANSGRESSION,
            LOOP_OMEGA_MULTIPLICATIVE,
            DESCENT_IDENTITY,
            MORITA,
            PERIOD_RELATIVE,
            CARTAN_EXACT,
            CARTAN_FD,
        ] {
            assert!(t > 0.0);
        }
    }
}
