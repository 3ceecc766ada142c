#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ddparab/common.hpp"

namespace ddparab {

/// Barenblatt family for the homogeneous (m,p)-equation, taken verbatim:
///   B(x,t) = t^{-lambda0} [1 - b (|x|/t^{1/lambda0})^{p/(p-1)}]_+^{(p-1)/(m+p-3)}, t > 0
///   B(x,t) = 0, t <= 0
/// with lambda0 = n(m+p-3) and b = ((p-1)/p)(m+p-3)/((m+p-2) lambda0^{1/(p-1)}).
struct BarenblattParams {
    double m, p;
    int n;
    double lambda0;
    double b;
};

inline BarenblattParams barenblatt_params(double m, double p, int n) {
    if (n < 1) throw std::invalid_argument("barenblatt_params: n must be >= 1");
    if (!(m + p > 3.0))
        throw DegenerateFamily("barenblatt_params: requires m + p > 3 (lambda0 > 0)");
    BarenblattParams bp{m, p, n, 0.0, 0.0};
    bp.lambda0 = n * (m + p - 3.0);
    bp.b = (p - 1.0) / p * (m + p - 3.0) /
           ((m + p - 2.0) * std::pow(bp.lambda0, 1.0 / (p - 1.0)));
    return bp;
}

/// The bracket is clamped at 0 before the fractional power so the support edge
/// never produces NaN.
inline double barenblatt_evaluate(const BarenblattParams& bp, double radius, double t) {
    if (t <= 0.0) return 0.0;
    const double ts = std::pow(t, 1.0 / bp.lambda0);
    const double bracket =
        1.0 - bp.b * std::pow(std::fabs(radius) / ts, bp.p / (bp.p - 1.0));
    if (bracket <= 0.0) return 0.0;
    return std::pow(t, -bp.lambda0) *
           std::pow(bracket, (bp.p - 1.0) / (bp.m + bp.p - 3.0));
}

/// Radius at which the bracket vanishes: t^{1/lambda0} b^{-(p-1)/p}.
inline double barenblatt_support_radius(const BarenblattParams& bp, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("barenblatt_support_radius: t must be > 0");
    return std::pow(t, 1.0 / bp.lambda0) * std::pow(bp.b, -(bp.p - 1.0) / bp.p);
}

struct SpaceTimeSample {
    double radius;
    double t;
};

/// max |B(sigma^{1/lambda0} x, sigma t) - sigma^{-lambda0} B(x, t)| over the
/// samples; an exact identity of the closed form, so <= 1e-12 is contractual.
inline double self_similarity_check(const BarenblattParams& bp,
                                    const std::vector<SpaceTimeSample>& samples,
                                    double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("self_similarity_check: sigma > 0");
    const double s_space = std::pow(sigma, 1.0 / bp.lambda0);
    const double s_value = std::pow(sigma, -bp.lambda0);
    double worst = 0.0;
    for (const auto& smp : samples) {
        const double lhs = barenblatt_evaluate(bp, s_space * smp.radius, sigma * smp.t);
        const double rhs = s_value * barenblatt_evaluate(bp, smp.radius, smp.t);
        worst = std::fmax(worst, std::fabs(lhs - rhs));
    }
    return worst;
}

/// Seeded samples strictly inside the support over a time band.
inline std::vector<SpaceTimeSample> barenblatt_samples(const BarenblattParams& bp,
                                                       int count, double t_lo, double t_hi,
                                                       std::uint64_t seed) {
    if (!(t_lo > 0.0 && t_hi > t_lo))
        throw std::invalid_argument("barenblatt_samples: need 0 < t_lo < t_hi");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ut(t_lo, t_hi);
    std::uniform_real_distribution<double> ur(0.0, 0.95);
    std::vector<SpaceTimeSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = ut(rng);
        out.push_back({ur(rng) * barenblatt_support_radius(bp, t), t});
    }
    return out;
}

}  // namespace ddparab
