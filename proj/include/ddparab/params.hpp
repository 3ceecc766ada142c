#pragma once

#include <cmath>
#include <stdexcept>

#include "ddparab/common.hpp"

namespace ddparab {

/// Problem tuple (m, p, n, q, r) for
///   du/dt - div(m|u|^{m-1}|grad u|^{p-2} grad u) = f,  f in L^{q,r}.
/// m >= 1, p >= 2; n >= 1 spatial dimension; q, r in (1, inf] with inf
/// represented explicitly.
struct ProblemParams {
    double m;
    double p;
    int n;
    double q;
    double r;

    ProblemParams(double m_, double p_, int n_, double q_ = kInf, double r_ = kInf)
        : m(m_), p(p_), n(n_), q(q_), r(r_) {
        if (!(std::isfinite(m) && m >= 1.0))
            throw std::invalid_argument("ProblemParams: m must be finite and >= 1");
        if (!(std::isfinite(p) && p >= 2.0))
            throw std::invalid_argument("ProblemParams: p must be finite and >= 2");
        if (n < 1) throw std::invalid_argument("ProblemParams: n must be >= 1");
        if (!is_extended_exponent(q))
            throw std::invalid_argument("ProblemParams: q must be in (1, inf]");
        if (!is_extended_exponent(r))
            throw std::invalid_argument("ProblemParams: r must be in (1, inf]");
    }

    double inv_q() const { return inv_or_zero(q); }
    double inv_r() const { return inv_or_zero(r); }
};

/// p_m = 2 for m = 1 and p for m > 1 (the temporal Holder scale of the
/// frozen-coefficient homogeneous theory).
inline double p_m(double m, double p) { return m == 1.0 ? 2.0 : p; }
inline double p_m(const ProblemParams& pp) { return p_m(pp.m, pp.p); }

/// Compatibility regime of the source integrability (q, r).
/// Boundary equalities count as failures of the strict inequality and set
/// at_boundary.
struct RegimeFlags {
    bool wcc = false;               // 1/r + n/(pq) < 1 < 2/r + n/q
    bool scc = false;               // 1/r + n/(pq) < 1 and 3/r + m(1-1/r) + n/q > 2
    bool corollary_regime = false;  // 1/r + n/(pq) < 1 and 3/r + m(1-1/r) + n/q <= 2
    bool at_boundary = false;
};

inline RegimeFlags check_compatibility(const ProblemParams& pp) {
    const double iq = pp.inv_q();
    const double ir = pp.inv_r();
    const double serrin = ir + pp.n * iq / pp.p;
    const double weak = 2.0 * ir + pp.n * iq;
    const double strong = 3.0 * ir + pp.m * (1.0 - ir) + pp.n * iq;

    RegimeFlags f;
    f.wcc = serrin < 1.0 && weak > 1.0;
    f.scc = serrin < 1.0 && strong > 2.0;
    f.corollary_regime = serrin < 1.0 && strong <= 2.0;
    f.at_boundary = serrin == 1.0 || weak == 1.0 || strong == 2.0;
    return f;
}

/// Sub-linear Trudinger equation d(u^k)/dt - div(|grad u|^{p-2} grad u) = f,
/// k in (0,1], p > 2; the constraint k <= min{p-1, 1} is automatic here.
struct TrudingerParams {
    double k;
    double p;

    TrudingerParams(double k_, double p_) : k(k_), p(p_) {
        if (!(std::isfinite(k) && k > 0.0 && k <= 1.0))
            throw std::invalid_argument("TrudingerParams: k must be in (0, 1]");
        if (!(std::isfinite(p) && p > 2.0))
            throw std::invalid_argument("TrudingerParams: p must be > 2");
        if (k > std::fmin(p - 1.0, 1.0))
            throw std::invalid_argument("TrudingerParams: k must satisfy k <= min{p-1, 1}");
    }
};

}  // namespace ddparab
