#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ddparab/common.hpp"

namespace ddparab {

using Point = std::vector<double>;

inline double norm2(const Point& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

/// Degeneracy law Phi with the two-regime bounds of the structure conditions:
///   gamma1 s^{m-1} <= Phi(s) <= gamma2 s^{m-1}   on [0, sigma0]
///   psi1 <= Phi(s) <= psi2                       on (sigma0, infinity)
struct CoefficientLaw {
    std::function<double(double)> phi;
    double gamma1, gamma2;
    double psi1, psi2;
    double sigma0;
    double m;

    double operator()(double s) const { return phi(s); }
};

struct LawViolation {
    double s;
    double phi_value;
    std::string what;
};

struct LawReport {
    bool pass = true;
    std::vector<LawViolation> violations;  // capped at 10
};

/// The prototype law Phi(s) = m s^{m-1}. On (sigma0, s_max] the nondegenerate
/// bounds are the monotone envelope values, so sampled validation up to s_max
/// passes exactly.
inline CoefficientLaw prototype_law(double m, double sigma0 = 1.0, double s_max = 8.0) {
    if (!(m >= 1.0)) throw std::invalid_argument("prototype_law: m must be >= 1");
    if (!(sigma0 > 0.0 && s_max > sigma0))
        throw std::invalid_argument("prototype_law: need 0 < sigma0 < s_max");
    CoefficientLaw law;
    law.m = m;
    law.phi = [m](double s) { return m == 1.0 ? 1.0 : m * std::pow(s, m - 1.0); };
    law.gamma1 = law.gamma2 = m;
    law.psi1 = law.phi(sigma0);
    law.psi2 = law.phi(s_max);
    law.sigma0 = sigma0;
    return law;
}

inline LawReport validate_law(const CoefficientLaw& law, double s_max, int n_samples = 256) {
    LawReport rep;
    const double tol = 1e-12;
    auto record = [&](double s, double v, const char* what) {
        rep.pass = false;
        if (rep.violations.size() < 10) rep.violations.push_back({s, v, what});
    };
    for (double s : linspace(0.0, s_max, n_samples)) {
        const double v = law(s);
        if (s <= law.sigma0) {
            const double lo = law.gamma1 * (law.m == 1.0 ? 1.0 : std::pow(s, law.m - 1.0));
            const double hi = law.gamma2 * (law.m == 1.0 ? 1.0 : std::pow(s, law.m - 1.0));
            if (v < lo * (1.0 - tol) - tol) record(s, v, "below gamma1 s^{m-1}");
            if (v > hi * (1.0 + tol) + tol) record(s, v, "above gamma2 s^{m-1}");
        } else {
            if (v < law.psi1 * (1.0 - tol)) record(s, v, "below psi1");
            if (v > law.psi2 * (1.0 + tol)) record(s, v, "above psi2");
        }
    }
    return rep;
}

/// Flux A(x, t, s, xi) with ellipticity/growth constants and coefficient
/// oscillation modulus. Immutable after construction; safe to share.
struct FluxField {
    std::function<Point(const Point& x, double t, double s, const Point& xi)> a;
    double c1 = 1.0;  // ellipticity: <A, xi> >= c1 Phi(|s|)|xi|^p
    double c2 = 1.0;  // growth:      |A| <= c2 Phi(|s|)|xi|^{p-1}
    CoefficientLaw law;
    std::function<double(double)> osc_modulus;  // omega(rho)
    double c_osc = 0.0;                         // C_A in the (P3) bound
    double m = 1.0, p = 2.0;
    int dim = 1;
};

/// Prototype flux m|s|^{m-1}|xi|^{p-2} xi, extended by zero at s = 0 or xi = 0.
inline Point prototype_flux_value(double m, double p, double s, const Point& xi) {
    Point out(xi.size(), 0.0);
    const double xin = norm2(xi);
    if (s == 0.0 && m > 1.0) return out;
    if (xin == 0.0) return out;
    const double mag = (m == 1.0 ? 1.0 : m * std::pow(std::fabs(s), m - 1.0)) *
                       (p == 2.0 ? 1.0 : std::pow(xin, p - 2.0));
    for (std::size_t i = 0; i < xi.size(); ++i) out[i] = mag * xi[i];
    return out;
}

inline FluxField prototype_flux(double m, double p, int dim = 2) {
    if (!(m >= 1.0 && p >= 2.0))
        throw std::invalid_argument("prototype_flux: m >= 1 and p >= 2 required");
    FluxField flux;
    flux.m = m;
    flux.p = p;
    flux.dim = dim;
    flux.c1 = flux.c2 = 1.0;
    flux.law = prototype_law(m);
    flux.a = [m, p](const Point&, double, double s, const Point& xi) {
        return prototype_flux_value(m, p, s, xi);
    };
    flux.osc_modulus = [](double) { return 0.0; };
    flux.c_osc = 1.0;
    return flux;
}

/// Coefficient a(x1, t) sampled on a tensor grid, evaluated by bilinear
/// interpolation (clamped outside the sample box). The interpolant stays
/// within [min, max] of the samples, and its axis Lipschitz constants bound
/// the oscillation modulus.
struct GriddedCoefficient {
    std::vector<double> xs, ts;
    std::vector<std::vector<double>> values;  // values[it][ix]

    void validate() const {
        if (xs.size() < 2 || ts.size() < 2 || values.size() != ts.size())
            throw std::invalid_argument("GriddedCoefficient: need a 2x2 grid at least");
        for (const auto& row : values)
            if (row.size() != xs.size())
                throw std::invalid_argument("GriddedCoefficient: ragged rows");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1]))
                throw std::invalid_argument("GriddedCoefficient: x not increasing");
        for (std::size_t j = 1; j < ts.size(); ++j)
            if (!(ts[j] > ts[j - 1]))
                throw std::invalid_argument("GriddedCoefficient: t not increasing");
        for (const auto& row : values)
            for (double v : row)
                if (!(v > 0.0)) throw std::invalid_argument(
                        "GriddedCoefficient: samples must be positive");
    }

    double operator()(double x, double t) const {
        const auto seg = [](const std::vector<double>& axis, double v) {
            std::size_t i = 0;
            while (i + 2 < axis.size() && axis[i + 1] < v) ++i;
            const double w = std::clamp((v - axis[i]) / (axis[i + 1] - axis[i]), 0.0, 1.0);
            return std::pair<std::size_t, double>{i, w};
        };
        const auto [ix, wx] = seg(xs, x);
        const auto [it, wt] = seg(ts, t);
        const double lo = (1.0 - wx) * values[it][ix] + wx * values[it][ix + 1];
        const double hi = (1.0 - wx) * values[it + 1][ix] + wx * values[it + 1][ix + 1];
        return (1.0 - wt) * lo + wt * hi;
    }

    double min_value() const {
        double m = kInf;
        for (const auto& row : values)
            for (double v : row) m = std::fmin(m, v);
        return m;
    }
    double max_value() const {
        double m = -kInf;
        for (const auto& row : values)
            for (double v : row) m = std::fmax(m, v);
        return m;
    }

    /// Sum of the axis Lipschitz constants of the interpolant; |a(z)-a(z0)|
    /// is bounded by this times the space-time distance.
    double lipschitz_sum() const {
        double lx = 0.0, lt = 0.0;
        for (std::size_t j = 0; j < ts.size(); ++j)
            for (std::size_t i = 1; i < xs.size(); ++i)
                lx = std::fmax(lx, std::fabs(values[j][i] - values[j][i - 1]) /
                                       (xs[i] - xs[i - 1]));
        for (std::size_t j = 1; j < ts.size(); ++j)
            for (std::size_t i = 0; i < xs.size(); ++i)
                lt = std::fmax(lt, std::fabs(values[j][i] - values[j - 1][i]) /
                                       (ts[j] - ts[j - 1]));
        return lx + lt;
    }
};

/// Prototype scaled by a coefficient a(x, t) in [a_min, a_max] with Lipschitz
/// constant lip. Theta_A on the unit sphere factors to m |a(z) - a(z0)| |s|^{m-1},
/// so omega(rho) = lip * rho with C_A = m covers (P3).
inline FluxField scaled_prototype_flux(double m, double p, int dim,
                                       std::function<double(const Point&, double)> coeff,
                                       double a_min, double a_max, double lip) {
    if (!(a_min > 0.0 && a_max >= a_min))
        throw std::invalid_argument("scaled_prototype_flux: need 0 < a_min <= a_max");
    FluxField flux = prototype_flux(m, p, dim);
    flux.c1 = a_min;
    flux.c2 = a_max;
    flux.a = [m, p, coeff](const Point& x, double t, double s, const Point& xi) {
        Point v = prototype_flux_value(m, p, s, xi);
        const double a = coeff(x, t);
        for (double& c : v) c *= a;
        return v;
    };
    flux.osc_modulus = [lip](double rho) { return lip * rho; };
    flux.c_osc = m;
    return flux;
}

/// Scaled prototype whose coefficient depends on x1 and t through grid
/// samples.
inline FluxField gridded_prototype_flux(double m, double p, int dim,
                                        GriddedCoefficient coeff) {
    coeff.validate();
    const double a_min = coeff.min_value();
    const double a_max = coeff.max_value();
    const double lip = coeff.lipschitz_sum();
    auto shared = std::make_shared<GriddedCoefficient>(std::move(coeff));
    return scaled_prototype_flux(
        m, p, dim,
        [shared](const Point& x, double t) { return (*shared)(x[0], t); }, a_min, a_max,
        lip);
}

/// Deterministic sampling plan: tensor grids over Q1^- x [-s_max, s_max] plus
/// fixed-seed random points, xi on spheres spanning six decades of |xi|.
struct StructureSampleSpec {
    int nx = 5;
    int nt = 4;
    int ns = 9;
    int n_dirs = 8;
    double s_max = 4.0;
    std::vector<double> xi_radii = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
    int n_random = 16;
    std::uint64_t seed = 20240817;
};

struct StructureViolation {
    Point x;
    double t, s, xi_radius;
    double ratio;
    std::string what;
};

struct StructureReport {
    bool pass = true;
    double min_ellipticity_ratio = kInf;   // min over samples of <A,xi>/(Phi|xi|^p)
    double max_growth_ratio = 0.0;         // max over samples of |A|/(Phi|xi|^{p-1})
    long n_samples = 0;
    std::vector<StructureViolation> violations;  // capped at 10
};

namespace detail {

inline std::vector<Point> unit_directions(int dim, int n_dirs, std::mt19937_64& rng) {
    std::vector<Point> dirs;
    if (dim == 1) {
        dirs.push_back({1.0});
        dirs.push_back({-1.0});
        return dirs;
    }
    if (dim == 2) {
        for (int j = 0; j < n_dirs; ++j) {
            const double a = 2.0 * M_PI * j / n_dirs;
            dirs.push_back({std::cos(a), std::sin(a)});
        }
        return dirs;
    }
    for (int d = 0; d < dim; ++d) {
        Point e(static_cast<std::size_t>(dim), 0.0);
        e[static_cast<std::size_t>(d)] = 1.0;
        dirs.push_back(e);
    }
    std::normal_distribution<double> gauss;
    while (static_cast<int>(dirs.size()) < n_dirs + dim) {
        Point v(static_cast<std::size_t>(dim));
        for (double& c : v) c = gauss(rng);
        const double nv = norm2(v);
        if (nv < 1e-8) continue;
        for (double& c : v) c /= nv;
        dirs.push_back(v);
    }
    return dirs;
}

inline std::vector<Point> space_samples(int dim, int nx, int n_random,
                                        std::mt19937_64& rng) {
    std::vector<Point> pts;
    const auto axis = linspace(-0.7, 0.7, nx);  // interior of B_1
    if (dim == 1) {
        for (double x : axis) pts.push_back({x});
    } else {
        for (double x : axis)
            for (double y : axis) {
                Point pnt{x, y};
                while (static_cast<int>(pnt.size()) < dim) pnt.push_back(0.0);
                if (norm2(pnt) < 1.0) pts.push_back(pnt);
            }
    }
    std::uniform_real_distribution<double> uni(-0.7, 0.7);
    for (int j = 0; j < n_random; ++j) {
        Point pnt(static_cast<std::size_t>(dim));
        for (double& c : pnt) c = uni(rng);
        if (norm2(pnt) < 1.0) pts.push_back(pnt);
    }
    return pts;
}

}  // namespace detail

/// Samples (P1)-(P2): the reported ratios are |xi|-homogeneous of degree 0, so
/// the verdict must be invariant across the xi_radii decades. Ratios compare
/// against c1/c2 with 1e-12 relative slack (pow() rounding). s = 0 is skipped:
/// both sides vanish there.
inline StructureReport validate_structure(const FluxField& flux,
                                          const StructureSampleSpec& spec = {}) {
    StructureReport rep;
    std::mt19937_64 rng(spec.seed);
    const auto dirs = detail::unit_directions(flux.dim, spec.n_dirs, rng);
    const auto xs = detail::space_samples(flux.dim, spec.nx, spec.n_random, rng);
    const auto ts = linspace(-1.0, 0.0, spec.nt);
    const auto ss = linspace(-spec.s_max, spec.s_max, spec.ns);
    const double tol = 1e-12;

    auto record = [&](const Point& x, double t, double s, double rad, double ratio,
                      const char* what) {
        rep.pass = false;
        if (rep.violations.size() < 10) rep.violations.push_back({x, t, s, rad, ratio, what});
    };

    for (const auto& x : xs)
        for (double t : ts)
            for (double s : ss) {
                if (s == 0.0) continue;
                const double phi = flux.law(std::fabs(s));
                if (phi <= 0.0) continue;
                for (const auto& dir : dirs)
                    for (double rad : spec.xi_radii) {
                        Point xi(dir.size());
                        for (std::size_t i = 0; i < dir.size(); ++i) xi[i] = rad * dir[i];
                        const Point a = flux.a(x, t, s, xi);
                        double dot = 0.0;
                        for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * xi[i];
                        const double xin = norm2(xi);
                        const double r1 = dot / (phi * std::pow(xin, flux.p));
                        const double r2 = norm2(a) / (phi * std::pow(xin, flux.p - 1.0));
                        rep.min_ellipticity_ratio = std::fmin(rep.min_ellipticity_ratio, r1);
                        rep.max_growth_ratio = std::fmax(rep.max_growth_ratio, r2);
                        ++rep.n_samples;
                        if (r1 < flux.c1 * (1.0 - tol))
                            record(x, t, s, rad, r1, "ellipticity below C1");
                        if (r2 > flux.c2 * (1.0 + tol))
                            record(x, t, s, rad, r2, "growth above C2");
                    }
            }
    return rep;
}

/// Coefficient oscillation Theta_A(x,t,x0,t0): sup over s != 0 and |xi| = 1 of
/// |A(x,t,s,xi) - A(x0,t0,s,xi)| / |s|^{m-1}. Evaluated on the unit sphere,
/// where the paper's two denominator conventions coincide.
inline double oscillation_theta(const FluxField& flux, const Point& x, double t,
                                const Point& x0, double t0,
                                const StructureSampleSpec& spec = {}) {
    std::mt19937_64 rng(spec.seed);
    const auto dirs = detail::unit_directions(flux.dim, spec.n_dirs, rng);
    const auto ss = linspace(-spec.s_max, spec.s_max, spec.ns);
    double sup = 0.0;
    for (double s : ss) {
        if (s == 0.0) continue;
        const double sm = flux.m == 1.0 ? 1.0 : std::pow(std::fabs(s), flux.m - 1.0);
        for (const auto& dir : dirs) {
            const Point a1 = flux.a(x, t, s, dir);
            const Point a0 = flux.a(x0, t0, s, dir);
            Point diff(a1.size());
            for (std::size_t i = 0; i < a1.size(); ++i) diff[i] = a1[i] - a0[i];
            sup = std::fmax(sup, norm2(diff) / sm);
        }
    }
    return sup;
}

inline double spacetime_distance(const Point& x, double t, const Point& x0, double t0) {
    double s = (t - t0) * (t - t0);
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - x0[i]) * (x[i] - x0[i]);
    return std::sqrt(s);
}

}  // namespace ddparab
