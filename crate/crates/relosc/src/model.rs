//! Dimensionless model definition and the pointwise physics shared by all
//! other modules.
//!
//! Everything internal runs in dimensionless variables: momentum `p` in units
//! of `ħω/c · √z`, coordinate `x` in units of `c/ω / √z` (the usual oscillator
//! length `√(ħ/mω)`), time in units of `1/ω`. Energies are reported in `ħω`
//! and include the rest energy `z = mc²/ħω`; velocities are fractions of `c`.

use crate::error::{Error, Result};

/// Dimensionless model definition for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    /// Relativism parameter `z = mc²/ħω`. Large z is the non-relativistic
    /// regime, z ≲ 1 is strongly relativistic.
    pub z: f64,
    /// Coherent-state center, dimensionless coordinate.
    pub x_center: f64,
    /// Coherent-state center, dimensionless momentum.
    pub p_center: f64,
    /// Integrator step in units of 1/ω.
    pub dt: f64,
    /// Simulation horizon in units of 1/ω.
    pub t_end: f64,
    /// Ensemble size.
    pub n_traj: u64,
    /// Master RNG seed.
    pub seed: u64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.z.is_finite() && self.z > 0.0) {
            return Err(Error::Config(format!("z must be positive, got {}", self.z)));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Config(format!("dt must be positive, got {}", self.dt)));
        }
        // The centered scheme is only trusted near tau = 0.01; reject grossly
        // large steps outright.
        if self.dt > 0.1 {
            return Err(Error::Config(format!("dt must be <= 0.1, got {}", self.dt)));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(Error::Config(format!(
                "t_end must be non-negative, got {}",
                self.t_end
            )));
        }
        if self.n_traj == 0 {
            return Err(Error::Config("n_traj must be at least 1".into()));
        }
        if !(self.x_center.is_finite() && self.p_center.is_finite()) {
            return Err(Error::Config("initial-state center must be finite".into()));
        }
        Ok(())
    }
}

/// One point of dimensionless phase space. Both fields are finite by
/// construction; a NaN/Inf anywhere in the pipeline is a hard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub x: f64,
    pub p: f64,
}

impl PhasePoint {
    pub fn new(x: f64, p: f64) -> Self {
        assert!(
            x.is_finite() && p.is_finite(),
            "phase point must be finite, got ({x}, {p})"
        );
        PhasePoint { x, p }
    }
}

/// Conversions between dimensionless solver variables and physical values in
/// the `ħ = ω = c = 1` presentation (where the mass is `m = z`).
#[derive(Debug, Clone, Copy)]
pub struct UnitSystem {
    pub z: f64,
}

impl UnitSystem {
    pub fn new(z: f64) -> Self {
        assert!(z.is_finite() && z > 0.0, "z must be positive");
        UnitSystem { z }
    }

    /// Physical coordinate (units of c/ω) from the dimensionless one.
    pub fn x_to_physical(&self, x: f64) -> f64 {
        x / self.z.sqrt()
    }

    /// Dimensionless coordinate from a physical one in units of c/ω.
    pub fn x_from_physical(&self, x: f64) -> f64 {
        x * self.z.sqrt()
    }

    /// Physical momentum (units of ħω/c) from the dimensionless one.
    pub fn p_to_physical(&self, p: f64) -> f64 {
        p * self.z.sqrt()
    }

    pub fn p_from_physical(&self, p: f64) -> f64 {
        p / self.z.sqrt()
    }

    /// Coordinate variance in physical units.
    pub fn var_x_to_physical(&self, var: f64) -> f64 {
        var / self.z
    }

    /// Momentum variance in physical units.
    pub fn var_p_to_physical(&self, var: f64) -> f64 {
        var * self.z
    }
}

#[inline]
fn check_finite(v: f64, what: &str) {
    assert!(v.is_finite(), "{what} must be finite, got {v}");
}

#[inline]
fn check_z(z: f64) {
    assert!(z.is_finite() && z > 0.0, "z must be positive, got {z}");
}

/// Total energy `√(z(z + p²)) + x²/2` in units of ħω, rest energy included.
/// Always at least `z`.
#[inline]
pub fn energy(point: PhasePoint, z: f64) -> f64 {
    check_z(z);
    (z * (z + point.p * point.p)).sqrt() + 0.5 * point.x * point.x
}

/// Velocity `p/√(p² + z)` in units of c. Odd in `p`, strictly inside (-1, 1).
#[inline]
pub fn velocity(p: f64, z: f64) -> f64 {
    check_finite(p, "momentum");
    check_z(z);
    p / (p * p + z).sqrt()
}

/// The harmonic restoring force, `-x`.
#[inline]
pub fn force(x: f64) -> f64 {
    check_finite(x, "coordinate");
    -x
}

/// Instantaneous proper-time rate `√(z/(z + p²)) = √(1 - v²/c²)`.
/// Lies in (0, 1], equals 1 exactly at p = 0, even in `p`.
#[inline]
pub fn dilation_integrand(p: f64, z: f64) -> f64 {
    check_finite(p, "momentum");
    check_z(z);
    (z / (z + p * p)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_close(got: f64, want: f64, tol: f64, msg: &str) {
        assert!(
            (got - want).abs() <= tol,
            "{msg}: got {got}, want {want} (tol {tol})"
        );
    }

    /// Same quantities evaluated directly in the ħ = ω = c = 1 presentation
    /// with m = z, as an independent route through the algebra.
    mod physical {
        pub fn energy(x_m: f64, p_m: f64, z: f64) -> f64 {
            let m = z;
            let p = p_m * z.sqrt();
            let x = x_m / z.sqrt();
            (p * p + m * m).sqrt() + 0.5 * m * x * x
        }

        pub fn dilation(p_m: f64, z: f64) -> f64 {
            let p_over_mc = p_m / z.sqrt();
            1.0 / (1.0 + p_over_mc * p_over_mc).sqrt()
        }
    }

    #[test]
    fn energy_rest() {
        assert_close(energy(PhasePoint::new(0.0, 0.0), 1.0), 1.0, 1e-15, "rest energy");
    }

    #[test]
    fn energy_potential_only() {
        assert_close(
            energy(PhasePoint::new(2.0, 0.0), 0.1),
            2.1,
            1e-15,
            "rest + potential",
        );
    }

    #[test]
    fn energy_matches_physical_units_route() {
        assert_close(
            energy(PhasePoint::new(0.0, 1.0), 1.0),
            2.0_f64.sqrt(),
            1e-15,
            "sqrt(2) at (0,1), z=1",
        );
        for &z in &[0.1f64, 1.0, 100.0] {
            for &(x, p) in &[(0.0, 1.0), (1.5, -2.0), (-0.3, 0.7), (6.3, 4.1)] {
                let got = energy(PhasePoint::new(x, p), z);
                let want = physical::energy(x, p, z);
                assert_close(got, want, 1e-12 * want, "energy vs physical route");
                assert!(got >= z, "energy below rest energy");
            }
        }
    }

    #[test]
    fn velocity_values() {
        assert_eq!(velocity(0.0, 0.1), 0.0);
        assert_eq!(velocity(0.0, 42.0), 0.0);
        for &z in &[0.1f64, 1.0, 100.0] {
            // p = sqrt(z) is p/mc = 1, where v = c/sqrt(2).
            assert_close(
                velocity(z.sqrt(), z),
                std::f64::consts::FRAC_1_SQRT_2,
                1e-15,
                "v at p/mc = 1",
            );
        }
        let v = velocity(1e6, 0.1);
        assert!(v < 1.0 && 1.0 - v < 1e-12, "ultra-relativistic limit, got {v}");
    }

    #[test]
    fn force_is_linear_restoring() {
        assert_eq!(force(0.0), 0.0);
        assert_eq!(force(1.5), -1.5);
        assert_eq!(force(-6.3), 6.3);
    }

    #[test]
    fn dilation_values() {
        assert_eq!(dilation_integrand(0.0, 0.1), 1.0);
        assert_close(
            dilation_integrand(0.1_f64.sqrt(), 0.1),
            std::f64::consts::FRAC_1_SQRT_2,
            1e-15,
            "dilation at p/mc = 1",
        );
        // Independent route through physical units: 1/sqrt(1 + (p/mc)^2).
        assert_close(
            dilation_integrand(3.0, 1.0),
            physical::dilation(3.0, 1.0),
            1e-15,
            "dilation vs physical route",
        );
        assert_close(dilation_integrand(3.0, 1.0), 0.31622776601683794, 1e-15, "1/sqrt(10)");
    }

    #[test]
    #[should_panic]
    fn energy_rejects_nan() {
        energy(PhasePoint::new(f64::NAN, 0.0), 1.0);
    }

    #[test]
    #[should_panic]
    fn velocity_rejects_infinite() {
        velocity(f64::INFINITY, 1.0);
    }

    #[test]
    #[should_panic]
    fn bad_z_rejected() {
        velocity(0.0, -1.0);
    }

    #[test]
    fn nonrelativistic_energy_expansion() {
        // For |p| << sqrt(z) the kinetic term reduces to p²/2 + rest energy.
        for &z in &[0.1f64, 1.0, 100.0, 1e4] {
            let p = 1e-3 * z.sqrt();
            for &x in &[0.0, 0.5, 2.0] {
                let exact = energy(PhasePoint::new(x, p), z) - z;
                let nonrel = 0.5 * p * p + 0.5 * x * x;
                assert!(
                    (exact - nonrel).abs() <= 1e-6 * nonrel,
                    "expansion off at z={z}, x={x}: exact={exact}, nonrel={nonrel}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn velocity_dilation_identity(p in -1e3f64..1e3, z in 1e-3f64..1e3) {
            let v = velocity(p, z);
            let d = dilation_integrand(p, z);
            prop_assert!((v * v + d * d - 1.0).abs() < 1e-12);
        }

        #[test]
        fn parity_properties(x in -50.0f64..50.0, p in -50.0f64..50.0, z in 1e-2f64..1e3) {
            let e = energy(PhasePoint::new(x, p), z);
            prop_assert_eq!(e, energy(PhasePoint::new(-x, p), z));
            prop_assert_eq!(e, energy(PhasePoint::new(x, -p), z));
            prop_assert_eq!(velocity(p, z), -velocity(-p, z));
            prop_assert!(velocity(p, z).abs() < 1.0);
        }

        #[test]
        fn velocity_monotone(p in -100.0f64..100.0, dp in 1e-6f64..10.0, z in 1e-2f64..1e3) {
            prop_assert!(velocity(p + dp, z) > velocity(p, z));
        }

        #[test]
        fn unit_roundtrip(x in -1e6f64..1e6, p in -1e6f64..1e6, z in 1e-3f64..1e6) {
            let u = UnitSystem::new(z);
            let xr = u.x_from_physical(u.x_to_physical(x));
            let pr = u.p_from_physical(u.p_to_physical(p));
            prop_assert!((xr - x).abs() <= 4.0 * f64::EPSILON * x.abs());
            prop_assert!((pr - p).abs() <= 4.0 * f64::EPSILON * p.abs());
        }
    }
}
