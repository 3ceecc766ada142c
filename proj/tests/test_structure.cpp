#include <gtest/gtest.h>

#include <cmath>

#include "ddparab/structure.hpp"

using namespace ddparab;

TEST(PrototypeFlux, PointValues) {
    // (m=2, p=3, s=2, xi=(1,0)) -> (4, 0)
    const Point v1 = prototype_flux_value(2.0, 3.0, 2.0, {1.0, 0.0});
    EXPECT_NEAR(v1[0], 4.0, 1e-14);
    EXPECT_NEAR(v1[1], 0.0, 1e-14);

    // degeneracy at Z(u): s = 0 gives the zero vector for m > 1
    const Point v2 = prototype_flux_value(3.0, 4.0, 0.0, {2.0, -1.0});
    EXPECT_EQ(v2[0], 0.0);
    EXPECT_EQ(v2[1], 0.0);

    // heat flux identity
    const Point v3 = prototype_flux_value(1.0, 2.0, 5.0, {0.0, 3.0});
    EXPECT_DOUBLE_EQ(v3[0], 0.0);
    EXPECT_DOUBLE_EQ(v3[1], 3.0);

    // xi = 0 extension
    const Point v4 = prototype_flux_value(2.0, 3.0, 1.0, {0.0, 0.0});
    EXPECT_EQ(v4[0], 0.0);
    EXPECT_EQ(v4[1], 0.0);
}

TEST(CoefficientLaw, PrototypeValidates) {
    const CoefficientLaw law = prototype_law(2.0, 1.0, 8.0);
    EXPECT_DOUBLE_EQ(law(2.0), 4.0);  // Phi(s) = 2s
    const LawReport rep = validate_law(law, 8.0);
    EXPECT_TRUE(rep.pass) << (rep.violations.empty() ? "" : rep.violations[0].what);
}

TEST(CoefficientLaw, DetectsViolation) {
    CoefficientLaw law = prototype_law(2.0, 1.0, 8.0);
    law.gamma1 = law.gamma2 = 3.0;  // claims Phi ~ 3 s^{m-1}, actual is 2 s
    const LawReport rep = validate_law(law, 8.0);
    EXPECT_FALSE(rep.pass);
    EXPECT_FALSE(rep.violations.empty());
}

TEST(ValidateStructure, PrototypeRatiosAreOne) {
    const FluxField flux = prototype_flux(2.0, 3.0, 2);
    const StructureReport rep = validate_structure(flux);
    EXPECT_TRUE(rep.pass);
    EXPECT_NEAR(rep.min_ellipticity_ratio, 1.0, 1e-12);
    EXPECT_NEAR(rep.max_growth_ratio, 1.0, 1e-12);
    EXPECT_GT(rep.n_samples, 1000);
}

TEST(ValidateStructure, ScaledPrototypePasses) {
    // a(x,t) in [1/2, 2] rescales both ratios linearly
    auto coeff = [](const Point& x, double) { return 1.25 + 0.75 * std::sin(3.0 * x[0]); };
    const FluxField flux = scaled_prototype_flux(2.0, 3.0, 2, coeff, 0.5, 2.0, 2.25);
    const StructureReport rep = validate_structure(flux);
    EXPECT_TRUE(rep.pass);
    EXPECT_GE(rep.min_ellipticity_ratio, 0.5 - 1e-12);
    EXPECT_LE(rep.max_growth_ratio, 2.0 + 1e-12);
}

TEST(ValidateStructure, DeliberateViolationFails) {
    FluxField flux = prototype_flux(2.0, 3.0, 2);
    flux.c1 = 1.5;  // demands ratio >= 1.5 while the prototype sits at 1
    const StructureReport rep = validate_structure(flux);
    EXPECT_FALSE(rep.pass);
    ASSERT_FALSE(rep.violations.empty());
    EXPECT_NEAR(rep.violations[0].ratio, 1.0, 1e-12);
}

// Verdict invariance under xi rescaling: both ratio fields are homogeneous of
// degree zero in |xi|, so restricting to any single decade must not change it.
TEST(ValidateStructure, XiScaleInvariance) {
    const FluxField flux = prototype_flux(2.5, 3.5, 2);
    StructureSampleSpec tiny;
    tiny.xi_radii = {1e-3};
    StructureSampleSpec huge;
    huge.xi_radii = {1e3};
    const StructureReport a = validate_structure(flux, tiny);
    const StructureReport b = validate_structure(flux, huge);
    EXPECT_EQ(a.pass, b.pass);
    EXPECT_NEAR(a.min_ellipticity_ratio, b.min_ellipticity_ratio, 1e-9);
    EXPECT_NEAR(a.max_growth_ratio, b.max_growth_ratio, 1e-9);
}

TEST(OscillationTheta, FrozenCoefficientsVanish) {
    const FluxField flux = prototype_flux(2.0, 3.0, 2);
    EXPECT_DOUBLE_EQ(oscillation_theta(flux, {0.3, 0.1}, -0.2, {-0.4, 0.0}, -0.9), 0.0);
    EXPECT_DOUBLE_EQ(oscillation_theta(flux, {0.3, 0.1}, -0.2, {0.3, 0.1}, -0.2), 0.0);
}

TEST(GriddedCoefficient, InterpolatesAndBounds) {
    GriddedCoefficient coeff;
    coeff.xs = {-1.0, 0.0, 1.0};
    coeff.ts = {-1.0, 0.0};
    coeff.values = {{1.0, 2.0, 1.5}, {1.2, 1.8, 1.4}};
    coeff.validate();
    EXPECT_DOUBLE_EQ(coeff(0.0, -1.0), 2.0);
    EXPECT_DOUBLE_EQ(coeff(-0.5, -1.0), 1.5);
    EXPECT_DOUBLE_EQ(coeff(-5.0, -1.0), 1.0);  // clamped outside the box
    EXPECT_DOUBLE_EQ(coeff.min_value(), 1.0);
    EXPECT_DOUBLE_EQ(coeff.max_value(), 2.0);
    EXPECT_GT(coeff.lipschitz_sum(), 0.0);
}

TEST(GriddedCoefficient, ScaledFluxValidates) {
    GriddedCoefficient coeff;
    coeff.xs = linspace(-1.0, 1.0, 9);
    coeff.ts = linspace(-1.0, 0.0, 5);
    coeff.values.assign(5, std::vector<double>(9));
    for (std::size_t j = 0; j < 5; ++j)
        for (std::size_t i = 0; i < 9; ++i)
            coeff.values[j][i] = 1.25 + 0.5 * std::sin(2.0 * coeff.xs[i]) +
                                 0.1 * static_cast<double>(j);
    const FluxField flux = gridded_prototype_flux(2.0, 3.0, 2, coeff);
    const StructureReport rep = validate_structure(flux);
    EXPECT_TRUE(rep.pass);

    // (P3) bound with the estimated modulus
    const Point x{0.4, 0.2}, x0{-0.3, 0.1};
    const double got = oscillation_theta(flux, x, -0.2, x0, -0.7);
    const double dist = spacetime_distance(x, -0.2, x0, -0.7);
    EXPECT_LE(got, flux.c_osc * flux.osc_modulus(dist) + 1e-12);
}

TEST(OscillationTheta, LinearCoefficientFactorsOut) {
    // a(x,t) = x_1 multiplying the prototype: Theta = m |x_1 - x0_1| on |xi| = 1
    const double m = 2.0, p = 3.0;
    auto coeff = [](const Point& x, double) { return x[0]; };
    const FluxField flux = scaled_prototype_flux(m, p, 2, coeff, 0.1, 1.0, 1.0);
    const Point x{0.6, 0.2}, x0{0.25, 0.2};
    const double got = oscillation_theta(flux, x, -0.1, x0, -0.1);
    EXPECT_NEAR(got, m * std::fabs(x[0] - x0[0]), 1e-12);

    // symmetry in the two point arguments
    EXPECT_NEAR(oscillation_theta(flux, x0, -0.1, x, -0.1), got, 1e-12);

    // (P3) bound with omega(rho) = rho, C_A = m
    const double dist = spacetime_distance(x, -0.1, x0, -0.1);
    EXPECT_LE(got, flux.c_osc * flux.osc_modulus(dist) + 1e-12);
}
