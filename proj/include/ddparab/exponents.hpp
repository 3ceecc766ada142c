#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ddparab/common.hpp"
#include "ddparab/params.hpp"

namespace ddparab {

/// Conjectured optimal exponent of the frozen-coefficient homogeneous theory,
/// min{1, (p-1)/(m+p-3)}; the degenerate denominator m+p-3 <= 0 (heat endpoint)
/// returns 1.
inline double alpha_hom_default(double m, double p) {
    const double d = m + p - 3.0;
    if (d <= 0.0) return 1.0;
    return std::fmin(1.0, (p - 1.0) / d);
}

/// M_sharp = max{ a_hom p / (p_m + a_hom(m+p-3)), 2 a_hom (p-1) / (p_m (m+p-2)) }.
/// Strictly below a_hom whenever m > 1 and p > 2.
inline double m_sharp(double m, double p, double alpha_hom) {
    if (!(alpha_hom > 0.0 && alpha_hom <= 1.0))
        throw std::invalid_argument("m_sharp: alpha_hom must be in (0, 1]");
    const double pm = p_m(m, p);
    const double b1 = alpha_hom * p / (pm + alpha_hom * (m + p - 3.0));
    const double b2 = 2.0 * alpha_hom * (p - 1.0) / (pm * (m + p - 2.0));
    return std::fmax(b1, b2);
}

/// Source-integrability exponent ((pq-n)r - pq) / (q[(r-1)(m+p-2)+1]),
/// evaluated through 1/q, 1/r so that q = r = inf lands exactly on the
/// limit p/(m+p-2).
inline double source_exponent(const ProblemParams& pp) {
    const double iq = pp.inv_q();
    const double ir = pp.inv_r();
    const double num = pp.p - pp.n * iq - pp.p * ir;
    const double den = (pp.m + pp.p - 2.0) * (1.0 - ir) + ir;
    const double val = num / den;
    if (!(val > 0.0))
        throw NonPositiveExponent(
            "source_exponent: integrability below the Serrin-type threshold "
            "1/r + n/(pq) < 1 (value " + fmt(val) + ")");
    return val;
}

/// Intrinsic scaling factor theta = p - alpha(m+p-3), identical to the
/// entire-solution scaling p(1-beta) + beta(3-m).
inline double theta(double alpha, double m, double p) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("theta: alpha must be in [0, 1]");
    return p - alpha * (m + p - 3.0);
}

enum class GoverningTerm { HomogeneousTheory, SourceIntegrability };

inline const char* to_string(GoverningTerm g) {
    return g == GoverningTerm::HomogeneousTheory ? "HomogeneousTheory"
                                                 : "SourceIntegrability";
}

struct ExponentReport {
    ProblemParams params;
    double alpha_hom;        // homogeneous-theory exponent supplied (or default)
    double m_sharp;          // capped at 1
    double source_exponent;
    double alpha;            // min{m_sharp, source_exponent}
    double theta;            // p - alpha(m+p-3)
    bool alpha_is_open_sup;  // true when the max-term governs (alpha is a sup, not attained)
    GoverningTerm governing;
    RegimeFlags flags;
    bool wcc_warning;        // source exponent reported outside the W-CC regime
};

/// Sharp exponent alpha = min{M_sharp, source}. alpha is an open supremum when
/// M_sharp <= source (regularity holds for every alpha below it); otherwise the
/// source value is attained.
inline ExponentReport alpha_sharp(const ProblemParams& pp, double alpha_hom) {
    if (!(alpha_hom > 0.0 && alpha_hom <= 1.0))
        throw std::invalid_argument("alpha_sharp: alpha_hom must be in (0, 1]");
    ExponentReport rep{pp, alpha_hom, 0, 0, 0, 0, false,
                       GoverningTerm::HomogeneousTheory, {}, false};
    rep.m_sharp = std::fmin(m_sharp(pp.m, pp.p, alpha_hom), 1.0);
    rep.source_exponent = source_exponent(pp);
    rep.alpha = std::fmin(rep.m_sharp, rep.source_exponent);
    rep.alpha_is_open_sup = rep.m_sharp <= rep.source_exponent;
    rep.governing = rep.alpha_is_open_sup ? GoverningTerm::HomogeneousTheory
                                          : GoverningTerm::SourceIntegrability;
    rep.theta = pp.p - rep.alpha * (pp.m + pp.p - 3.0);
    rep.flags = check_compatibility(pp);
    rep.wcc_warning = !rep.flags.wcc;
    return rep;
}

inline ExponentReport alpha_sharp(const ProblemParams& pp) {
    return alpha_sharp(pp, alpha_hom_default(pp.m, pp.p));
}

/// Value safe for downstream numeric use: open suprema are backed off by a
/// margin (default 1e-3).
inline double numeric_alpha(const ExponentReport& rep, double margin = 1e-3) {
    if (!rep.alpha_is_open_sup) return rep.alpha;
    return std::fmax(rep.alpha - margin, 1e-12);
}

struct ImprovedRegion {
    bool member;            // alpha_hom <= (m-1)/(p-1) * p/(p+m-3)
    bool item3_sufficient;  // m >= p[(p-1)(1-3/p)+1]
    bool item4_window;      // informational window, not a membership criterion
};

/// Region where the max-term improves on the (p-1)/(m+p-2) exponent.
/// Restricted to m > 1.
inline ImprovedRegion improved_region_member(double m, double p, double alpha_hom) {
    if (!(m > 1.0)) throw InvalidDomain("improved_region_member: requires m > 1");
    if (!(p >= 2.0)) throw std::invalid_argument("improved_region_member: requires p >= 2");
    ImprovedRegion out{};
    const double rhs = (m - 1.0) / (p - 1.0) * p / (p + m - 3.0);
    out.member = alpha_hom <= rhs;
    const double thresh3 = p * ((p - 1.0) * (1.0 - 3.0 / p) + 1.0);
    out.item3_sufficient = m >= thresh3;
    const double lo4 = std::fmax(2.0, (p - 1.0) * (p - 1.0) / p + 1.0);
    out.item4_window = lo4 <= m && m < thresh3;
    return out;
}

enum class LiteratureModel { Heat, PME_AMU, PME_Diehl, PLaplacian, DoublyDegenerate };

/// Sharp exponents of the specialized models, as published. The heat and
/// p-Laplacian rows must coincide with source_exponent under (m,p) = (1,2)
/// resp. m = 1; the Diehl max-branch is m_sharp's first branch at p = 2.
inline double literature_reduction(LiteratureModel model, const ProblemParams& pp,
                                   double alpha_hom) {
    const double iq = pp.inv_q();
    const double ir = pp.inv_r();
    switch (model) {
        case LiteratureModel::Heat:
            return 2.0 - (2.0 * ir + pp.n * iq);
        case LiteratureModel::PME_AMU: {
            const double src = (2.0 - pp.n * iq - 2.0 * ir) / (pp.m * (1.0 - ir) + ir);
            return std::fmin(alpha_hom / pp.m, src);
        }
        case LiteratureModel::PME_Diehl: {
            const double src = (2.0 - pp.n * iq - 2.0 * ir) / (pp.m * (1.0 - ir) + ir);
            return std::fmin(2.0 * alpha_hom / (2.0 + (pp.m - 1.0) * alpha_hom), src);
        }
        case LiteratureModel::PLaplacian:
            return (pp.p - pp.n * iq - pp.p * ir) /
                   ((pp.p - 1.0) * (1.0 - ir) + ir);
        case LiteratureModel::DoublyDegenerate:
            return std::fmin(alpha_hom * (pp.p - 1.0) / (pp.m + pp.p - 2.0),
                             source_exponent(pp));
    }
    throw std::invalid_argument("literature_reduction: unknown model");
}

inline double literature_reduction(LiteratureModel model, const ProblemParams& pp) {
    return literature_reduction(model, pp, alpha_hom_default(pp.m, pp.p));
}

/// Trudinger parameter map m = (1-k)(p-1)/k + 1 (so m+p-2 = (p-1)/k).
inline std::pair<double, double> trudinger_map(const TrudingerParams& tp) {
    return {(1.0 - tp.k) * (tp.p - 1.0) / tp.k + 1.0, tp.p};
}

/// Exponents for the sub-linear Trudinger equation, computed from the
/// k-parametrized formulas directly:
///   alpha = min{ max{ k p a_hom / (k p_m + a_hom(p-1-k)), 2 k a_hom / p_m },
///                k[(pq-n)r - pq] / (q[(r-1)(p-1) + k]) }
///   theta = p - alpha ((p-1)/k)(1 - k/(p-1)).
/// Must agree with alpha_sharp(trudinger_map(tp), ...) identically.
inline ExponentReport trudinger_exponents(const TrudingerParams& tp, int n, double q,
                                          double r, double alpha_hom) {
    if (!(alpha_hom > 0.0 && alpha_hom <= 1.0))
        throw std::invalid_argument("trudinger_exponents: alpha_hom must be in (0, 1]");
    const auto [m_mapped, p] = trudinger_map(tp);
    const ProblemParams pp(m_mapped, p, n, q, r);
    const double k = tp.k;
    const double pm = p_m(m_mapped, p);
    const double iq = pp.inv_q();
    const double ir = pp.inv_r();

    const double b1 = k * p * alpha_hom / (k * pm + alpha_hom * (p - 1.0 - k));
    const double b2 = 2.0 * k * alpha_hom / pm;
    const double ms = std::fmin(std::fmax(b1, b2), 1.0);
    const double src = k * (p - pp.n * iq - p * ir) / ((p - 1.0) * (1.0 - ir) + k * ir);
    if (!(src > 0.0))
        throw NonPositiveExponent(
            "trudinger_exponents: integrability below the Serrin-type threshold");

    ExponentReport rep{pp, alpha_hom, ms, src, std::fmin(ms, src), 0.0,
                       ms <= src,
                       ms <= src ? GoverningTerm::HomogeneousTheory
                                 : GoverningTerm::SourceIntegrability,
                       check_compatibility(pp), false};
    rep.theta = p - rep.alpha * ((p - 1.0) / k) * (1.0 - k / (p - 1.0));
    rep.wcc_warning = !rep.flags.wcc;
    return rep;
}

struct HeatProximity {
    double m_sharp;  // M_sharp(1+eps, 2+eps) with the default alpha_hom
    double psi;      // Psi(m, p, beta) = m (1/(beta+1))^{p-1}, beta = (m-1)/(p-1)
};

/// Quantitative stability toward the heat operator: both values tend to 1 as
/// eps -> 0.
inline HeatProximity heat_proximity(double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("heat_proximity: eps must be >= 0");
    const double m = 1.0 + eps;
    const double p = 2.0 + eps;
    const double beta = (m - 1.0) / (p - 1.0);
    HeatProximity out{};
    out.m_sharp = m_sharp(m, p, alpha_hom_default(m, p));
    out.psi = m * std::pow(1.0 / (beta + 1.0), p - 1.0);
    return out;
}

/// Largest admissible exponent a in the zeta(x,t) = xi u(xi^a x, xi^{m+p-3+pa} t)
/// rescaling that keeps the rescaled source norm small:
///   a < q[(m+p-2)(r-1)+1] / (pq(r-1) - nr).
inline double zeta_scaling_a_max(const ProblemParams& pp) {
    const double iq = pp.inv_q();
    const double ir = pp.inv_r();
    const double num = (pp.m + pp.p - 2.0) * (1.0 - ir) + ir;
    const double den = pp.p * (1.0 - ir) - pp.n * iq;
    if (!(den > 0.0))
        throw NonPositiveExponent(
            "zeta_scaling_a_max: requires 1/r + n/(pq) < 1");
    return num / den;
}

}  // namespace ddparab
