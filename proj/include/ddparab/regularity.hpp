#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "ddparab/common.hpp"
#include "ddparab/exponents.hpp"
#include "ddparab/field.hpp"
#include "ddparab/solver.hpp"

namespace ddparab {

/// Q^-_rho(x0, t0) = B_rho(x0) x (t0 - rho^theta, t0].
struct IntrinsicCylinder {
    double x0;
    double t0;
    double rho;
    double theta;

    double time_depth() const { return std::pow(rho, theta); }
};

struct CylinderSelection {
    int i_lo = 0, i_hi = -1;          // inclusive cell range
    std::size_t j_lo = 0, j_hi = 0;   // inclusive row range
    long count = 0;
    double coverage_x = 0.0;          // fraction of B_rho inside the domain
    double coverage_t = 0.0;          // fraction of the time window inside the stamps
};

/// Grid points of the field inside the cylinder; cylinders are clipped to the
/// field extent with the coverage fractions recorded.
inline CylinderSelection select_cylinder(const SpaceTimeField& field,
                                         const IntrinsicCylinder& cyl) {
    CylinderSelection sel;
    const Grid1D& g = field.grid;
    const double tol_x = 1e-12 * (1.0 + std::fabs(cyl.x0) + cyl.rho);
    const double depth = cyl.time_depth();
    const double tol_t = 1e-12 * (1.0 + std::fabs(cyl.t0) + depth);

    const double lo = cyl.x0 - cyl.rho - tol_x;
    const double hi = cyl.x0 + cyl.rho + tol_x;
    sel.i_lo = std::max(0, static_cast<int>(std::ceil((lo - g.x_min) / g.dx() - 0.5)));
    sel.i_hi = std::min(g.n_cells - 1,
                        static_cast<int>(std::floor((hi - g.x_min) / g.dx() - 0.5)));

    const double t_lo = cyl.t0 - depth;
    std::size_t j = 0;
    bool any = false;
    for (; j < field.times.size(); ++j) {
        const double t = field.times[j];
        if (t > t_lo + tol_t && t <= cyl.t0 + tol_t) {
            if (!any) sel.j_lo = j;
            sel.j_hi = j;
            any = true;
        }
        if (t > cyl.t0 + tol_t) break;
    }
    if (!any) sel.j_hi = 0, sel.j_lo = 1;  // empty row range

    const long nx = sel.i_hi - sel.i_lo + 1;
    const long nt = any ? static_cast<long>(sel.j_hi - sel.j_lo + 1) : 0;
    sel.count = nx > 0 && nt > 0 ? nx * nt : 0;

    const double x_overlap = std::fmax(
        0.0, std::fmin(cyl.x0 + cyl.rho, g.x_max) - std::fmax(cyl.x0 - cyl.rho, g.x_min));
    sel.coverage_x = x_overlap / (2.0 * cyl.rho);
    if (!field.times.empty()) {
        const double t_overlap =
            std::fmax(0.0, std::fmin(cyl.t0, field.times.back()) -
                               std::fmax(t_lo, field.times.front()));
        sel.coverage_t = depth > 0.0 ? std::fmin(t_overlap / depth, 1.0) : 0.0;
    }
    return sel;
}

/// sup - inf of u over the grid points in the cylinder (no interpolation).
inline double oscillation(const SpaceTimeField& field, const IntrinsicCylinder& cyl) {
    const CylinderSelection sel = select_cylinder(field, cyl);
    if (sel.count < 4)
        throw EmptyCylinder("oscillation: fewer than 4 grid points in cylinder");
    double lo = kInf, hi = -kInf;
    for (std::size_t j = sel.j_lo; j <= sel.j_hi; ++j)
        for (int i = sel.i_lo; i <= sel.i_hi; ++i) {
            const double v = field.at(j, i);
            lo = std::fmin(lo, v);
            hi = std::fmax(hi, v);
        }
    return hi - lo;
}

struct SeminormSpec {
    int n_radii = 12;
    double radius_decay = 0.75;
    int max_centers_x = 25;
    int max_centers_t = 13;
    double min_radius_cells = 2.0;
};

/// Empirical Holder seminorm: sup over sampled radii rho <= rho0 and centers of
/// osc(Q^-_rho(x0,t0)) / rho^alpha. Each cylinder is normalized by its own
/// rho^alpha. Monotone non-decreasing in the sampling density.
inline double holder_seminorm(const SpaceTimeField& field, double alpha, double theta_,
                              double rho0, const SeminormSpec& spec = {}) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("holder_seminorm: alpha in (0,1)");
    if (!(theta_ > 0.0)) throw std::invalid_argument("holder_seminorm: theta > 0");
    if (!(rho0 > 0.0)) throw std::invalid_argument("holder_seminorm: rho0 > 0");

    const Grid1D& g = field.grid;
    const int sx = std::max(1, g.n_cells / spec.max_centers_x);
    const int st = std::max(1, static_cast<int>(field.n_rows()) / spec.max_centers_t);

    double sup = 0.0;
    bool any = false;
    double rho = rho0;
    for (int jr = 0; jr < spec.n_radii && rho >= spec.min_radius_cells * g.dx(); ++jr) {
        const double denom = std::pow(rho, alpha);
        for (std::size_t j = 0; j < field.n_rows(); j += static_cast<std::size_t>(st))
            for (int i = 0; i < g.n_cells; i += sx) {
                IntrinsicCylinder cyl{g.center(i), field.times[j], rho, theta_};
                try {
                    sup = std::fmax(sup, oscillation(field, cyl) / denom);
                    any = true;
                } catch (const EmptyCylinder&) {
                }
            }
        rho *= spec.radius_decay;
    }
    if (!any) throw EmptyCylinder("holder_seminorm: no usable cylinder at rho0");
    return sup;
}

/// Oscillation over the lambda-adic cascade Q^-_{lambda^k rho0}(x0, t0).
struct OscillationSeries {
    double lambda = 0.25;
    double rho0 = 1.0;
    double theta = 2.0;
    std::vector<int> k;
    std::vector<double> rho;
    std::vector<double> osc;
    bool truncated = false;  // cascade stopped at grid resolution
};

inline OscillationSeries lambda_adic_series(const SpaceTimeField& field, double x0,
                                            double t0, double lambda, double rho0,
                                            int k_max, double theta_) {
    if (!(lambda > 0.0 && lambda <= 0.25))
        throw std::invalid_argument("lambda_adic_series: lambda must be in (0, 1/4]");
    if (!(rho0 > 0.0)) throw std::invalid_argument("lambda_adic_series: rho0 > 0");
    OscillationSeries s;
    s.lambda = lambda;
    s.rho0 = rho0;
    s.theta = theta_;
    double rho = rho0;
    for (int k = 0; k <= k_max; ++k, rho *= lambda) {
        try {
            const double o = oscillation(field, {x0, t0, rho, theta_});
            s.k.push_back(k);
            s.rho.push_back(rho);
            s.osc.push_back(o);
        } catch (const EmptyCylinder&) {
            s.truncated = true;
            break;
        }
    }
    return s;
}

struct FitOptions {
    int max_iterations = 50;
    double theta_tol = 1e-6;
    int min_levels = 3;      // below this the fit reports NoDecay instead of extrapolating
    long min_rows = 2;       // time rows required per usable level
    double min_radius_cells = 2.0;
    int k_cap = 24;
};

struct ExponentFit {
    double alpha_emp = 0.0;
    double theta_used = 0.0;
    double r_squared = 0.0;
    int iterations = 0;
    bool converged = false;
    bool no_decay = false;
    int n_levels = 0;
    OscillationSeries series;  // the series at theta_used
};

namespace detail {

struct LogFit {
    double slope = 0.0;
    double r2 = 0.0;
};

inline LogFit least_squares_loglog(const std::vector<double>& rho,
                                   const std::vector<double>& osc) {
    const std::size_t n = rho.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(rho[i]);
        const double y = std::log(osc[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double d = n * sxx - sx * sx;
    LogFit f;
    f.slope = (n * sxy - sx * sy) / d;
    const double intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(rho[i]);
        const double y = std::log(osc[i]);
        ss_res += (y - (intercept + f.slope * x)) * (y - (intercept + f.slope * x));
        ss_tot += (y - ybar) * (y - ybar);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res < 1e-24 ? 1.0 : 0.0);
    return f;
}

}  // namespace detail

/// Empirical alpha via the alpha-theta fixed point: seed theta = p (the
/// alpha = 0 endpoint), fit alpha on log osc_k vs log rho_k, update
/// theta <- p - alpha(m+p-3) until the update moves less than theta_tol.
/// Grid-point oscillation makes alpha a step function of theta, so the
/// iteration can settle into an exact period-2 cycle across a row-count
/// boundary; that cycle is accepted as converged at its midpoint.
inline ExponentFit fit_alpha_theta(const SpaceTimeField& field, double x0, double t0,
                                   double m, double p, double lambda, double rho0,
                                   const FitOptions& opts = {}) {
    if (!(lambda > 0.0 && lambda <= 0.25))
        throw std::invalid_argument("fit_alpha_theta: lambda must be in (0, 1/4]");
    ExponentFit fit;
    double theta_cur = p;
    double theta_prev = kInf;
    double alpha_prev = 0.0;
    const double dx = field.grid.dx();

    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        fit.iterations = iter;
        OscillationSeries all = lambda_adic_series(field, x0, t0, lambda, rho0,
                                                   opts.k_cap, theta_cur);
        OscillationSeries usable;
        usable.lambda = lambda;
        usable.rho0 = rho0;
        usable.theta = theta_cur;
        usable.truncated = all.truncated;
        for (std::size_t idx = 0; idx < all.k.size(); ++idx) {
            if (all.rho[idx] < opts.min_radius_cells * dx) break;
            const CylinderSelection sel =
                select_cylinder(field, {x0, t0, all.rho[idx], theta_cur});
            const long rows = sel.count > 0 ? static_cast<long>(sel.j_hi - sel.j_lo + 1) : 0;
            if (rows < opts.min_rows) break;
            if (!(all.osc[idx] > 0.0)) continue;
            usable.k.push_back(all.k[idx]);
            usable.rho.push_back(all.rho[idx]);
            usable.osc.push_back(all.osc[idx]);
        }

        fit.series = usable;
        fit.n_levels = static_cast<int>(usable.k.size());
        if (fit.n_levels < opts.min_levels) {
            fit.no_decay = true;
            return fit;
        }

        const auto lf = detail::least_squares_loglog(usable.rho, usable.osc);
        fit.alpha_emp = lf.slope;
        fit.r_squared = lf.r2;
        if (!(lf.slope > 0.0)) {
            fit.no_decay = true;
            return fit;
        }
        const double theta_new = p - lf.slope * (m + p - 3.0);
        fit.theta_used = theta_new;
        if (theta_new <= 0.05) return fit;  // outside the intrinsic band; not converged
        if (std::fabs(theta_new - theta_cur) < opts.theta_tol) {
            fit.converged = true;
            return fit;
        }
        if (iter >= 2 && std::fabs(theta_new - theta_prev) < opts.theta_tol) {
            fit.alpha_emp = 0.5 * (lf.slope + alpha_prev);
            fit.theta_used = p - fit.alpha_emp * (m + p - 3.0);
            fit.converged = true;
            return fit;
        }
        theta_prev = theta_cur;
        alpha_prev = lf.slope;
        theta_cur = theta_new;
    }
    return fit;
}

/// Remark "Normalization and smallness regime":
///   kappa0 = s[2(p-1)+m] - (sn/q + ((2p-1)s + s(m-1))/r)   (> 0 under W-CC)
///   Pi0    = s(2p+m-3), tau = s(m-1) + 2s(p-1)
///   mu0    = min{1, ||u||^{-1/s}, (delta/(||f||+1))^{1/kappa0} [, omega term]}
struct NormalizationParams {
    double s = 1.0;
    double tau = 0.0;
    double kappa0 = 0.0;
    double pi0 = 0.0;
    double mu0 = 1.0;
};

/// The dimensionally puzzling omega term (delta / omega^{-1}(delta/(C_A+1)))^{1/Pi0};
/// verbatim, excluded from defaults.
struct NormalizationOmega {
    std::function<double(double)> omega_inv;
    double c_a = 1.0;
};

inline NormalizationParams normalization_params(
    double m, double p, int n, double q, double r, double s, double delta, double norm_u,
    double norm_f, const std::optional<NormalizationOmega>& omega = std::nullopt) {
    if (!(s > 0.0)) throw std::invalid_argument("normalization_params: s > 0");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("normalization_params: delta in (0,1)");
    if (!(norm_u >= 0.0 && norm_f >= 0.0))
        throw std::invalid_argument("normalization_params: norms >= 0");
    const double iq = inv_or_zero(q);
    const double ir = inv_or_zero(r);

    NormalizationParams np;
    np.s = s;
    np.tau = s * (m - 1.0) + 2.0 * s * (p - 1.0);
    np.kappa0 = s * (2.0 * (p - 1.0) + m) -
                (s * n * iq + ((2.0 * p - 1.0) * s + s * (m - 1.0)) * ir);
    np.pi0 = s * (2.0 * p + m - 3.0);
    if (!(np.kappa0 > 0.0))
        throw NonPositiveKappa("normalization_params: kappa0 <= 0 (W-CC violated)");

    double mu0 = 1.0;
    if (norm_u > 0.0) mu0 = std::fmin(mu0, std::pow(norm_u, -1.0 / s));
    mu0 = std::fmin(mu0, std::pow(delta / (norm_f + 1.0), 1.0 / np.kappa0));
    if (omega) {
        const double w = omega->omega_inv(delta / (omega->c_a + 1.0));
        mu0 = std::fmin(mu0, std::pow(delta / w, 1.0 / np.pi0));
    }
    np.mu0 = mu0;
    return np;
}

/// v(x, t) = (u(x0 + rho x, t0 + rho^theta t) - subtract) / rho^alpha resampled
/// onto the unit cylinder [-1,1] x (-1, 0] by bilinear interpolation.
inline SpaceTimeField rescale_field(const SpaceTimeField& field, double x0, double t0,
                                    double rho, double alpha, double theta_,
                                    double subtract = 0.0) {
    if (!(rho > 0.0)) throw std::invalid_argument("rescale_field: rho > 0");
    const double depth = std::pow(rho, theta_);
    const Grid1D& g = field.grid;
    const double tol_x = 1e-9 * (1.0 + std::fabs(x0) + rho);
    const double tol_t = 1e-9 * (1.0 + std::fabs(t0) + depth);
    if (x0 - rho < g.x_min - tol_x || x0 + rho > g.x_max + tol_x)
        throw OutOfExtent("rescale_field: spatial extent exceeded");
    if (field.times.empty() || t0 - depth < field.times.front() - tol_t ||
        t0 > field.times.back() + tol_t)
        throw OutOfExtent("rescale_field: temporal extent exceeded");

    const int nx = std::clamp(static_cast<int>(std::ceil(2.0 * rho / g.dx())) + 1, 17, 513);
    const double dt_src = field.times.size() > 1
                              ? (field.times.back() - field.times.front()) /
                                    static_cast<double>(field.times.size() - 1)
                              : depth;
    const int nt = std::clamp(static_cast<int>(std::ceil(depth / dt_src)) + 1, 9, 1025);

    Grid1D out_grid(-1.0, 1.0, nx);
    SpaceTimeField out(out_grid);
    const double denom = std::pow(rho, alpha);
    std::vector<double> row(static_cast<std::size_t>(nx));
    for (double th : linspace(-1.0, 0.0, nt)) {
        const double t_src = std::clamp(t0 + depth * th, field.times.front(),
                                        field.times.back());
        for (int i = 0; i < nx; ++i) {
            const double x_src = x0 + rho * out_grid.center(i);
            row[static_cast<std::size_t>(i)] =
                (field.interpolate(x_src, t_src) - subtract) / denom;
        }
        out.push_row(th, row);
    }
    return out;
}

/// Exponent of lambda in the k-step source rescaling
///   ||f_k||^r <= lambda^E ||f||^r,
///   E = [(-k a(m+p-2) + k(p-1) + k) q - n k](r/q) - k theta(a);
/// non-negative exactly when a <= f_rescale_alpha_star.
inline double f_rescale_exponent(double m, double p, int n, double q, double r,
                                 double alpha, double k, double lambda) {
    if (std::isinf(q) || std::isinf(r))
        throw std::invalid_argument("f_rescale_exponent: finite q, r required");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("f_rescale_exponent: lambda in (0,1)");
    if (!(k >= 1.0)) throw std::invalid_argument("f_rescale_exponent: k >= 1");
    const double th = p - alpha * (m + p - 3.0);
    return ((-k * alpha * (m + p - 2.0) + k * (p - 1.0) + k) * q - n * k) * (r / q) -
           k * th;
}

/// Threshold a* = (r(pq-n) - pq) / (q[(m+p-2)r - (m+p-3)]) at which the
/// rescaling exponent vanishes.
inline double f_rescale_alpha_star(double m, double p, int n, double q, double r) {
    const double iq = inv_or_zero(q);
    const double ir = inv_or_zero(r);
    return (p - n * iq - p * ir) / ((m + p - 2.0) - (m + p - 3.0) * ir);
}

/// rho0 >= (1/(16 gamma))^{p_m/(alpha0 theta)}.
inline double rho0_lower_bound(double gamma, double alpha0, double theta_, double m,
                               double p) {
    if (!(gamma >= 1.0)) throw std::invalid_argument("rho0_lower_bound: gamma >= 1");
    if (!(alpha0 > 0.0 && alpha0 < 1.0))
        throw std::invalid_argument("rho0_lower_bound: alpha0 in (0,1)");
    if (!(theta_ > 0.0)) throw std::invalid_argument("rho0_lower_bound: theta > 0");
    return std::pow(1.0 / (16.0 * gamma), p_m(m, p) / (alpha0 * theta_));
}

/// Discrete mixed norm ||f||_{L^{q,r}} = (int (int |f|^q dx)^{r/q} dt)^{1/r} by
/// midpoint sums; q or r = inf switch to the essential sup.
inline double lqr_norm(const SpaceTimeField& f, double q, double r) {
    if (!is_extended_exponent(q) || !is_extended_exponent(r))
        throw std::invalid_argument("lqr_norm: q, r in (1, inf]");
    const double dx = f.grid.dx();
    const auto wt = time_weights(f.times);
    std::vector<double> inner(f.n_rows());
    for (std::size_t j = 0; j < f.n_rows(); ++j) {
        const auto row = f.row(j);
        if (std::isinf(q)) {
            double mx = 0.0;
            for (double v : row) mx = std::fmax(mx, std::fabs(v));
            inner[j] = mx;
        } else {
            double s = 0.0;
            for (double v : row) s += std::pow(std::fabs(v), q) * dx;
            inner[j] = std::pow(s, 1.0 / q);
        }
    }
    if (std::isinf(r)) {
        double mx = 0.0;
        for (double v : inner) mx = std::fmax(mx, v);
        return mx;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < f.n_rows(); ++j) s += std::pow(inner[j], r) * wt[j];
    return std::pow(s, 1.0 / r);
}

struct EnergySpec {
    double x_inner = 0.5;  // fraction of the domain where xi = 1
    double t_inner = 0.5;
    double q = 2.0, r = 2.0;  // mixed norm for the source term
};

struct EnergyReport {
    double lhs_sup = 0.0;     // sup_t int u^2 xi^p dx
    double lhs_grad = 0.0;    // int int Phi(|u|) |grad u|^p xi^p
    double rhs_time = 0.0;    // int int u^2 xi^{p-1} |dxi/dt|
    double rhs_space = 0.0;   // int int Phi(|u|) |u|^p |dxi/dx|^p
    double rhs_source = 0.0;  // ||f||^2_{q,r}
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool zero_over_zero = false;
};

namespace detail {

// Quintic smoothstep ramp: 1 on the inner fraction, 0 at the edges, C^2.
struct Bump {
    double a, b, w;  // interval and ramp width

    double value(double x) const {
        const double d = std::fmin(x - a, b - x);
        if (d <= 0.0) return 0.0;
        if (d >= w) return 1.0;
        const double tau = d / w;
        return tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau));
    }
    double derivative(double x) const {
        const double dl = x - a;
        const double dr = b - x;
        const double d = std::fmin(dl, dr);
        if (d <= 0.0 || d >= w) return 0.0;
        const double tau = d / w;
        const double sp = 30.0 * tau * tau * (tau - 1.0) * (tau - 1.0) / w;
        return dl <= dr ? sp : -sp;
    }
};

}  // namespace detail

/// Discrete Caccioppoli diagnostic (level-zero form): both sides of
///   sup_t int u^2 xi^p + int int Phi(|u|)|grad u|^p xi^p
///     <~ int int u^2 xi^{p-1}|xi_t| + int int Phi(|u|)|u|^p|xi_x|^p + ||f||^2_{q,r}
/// with Phi(s) = m s^{m-1} and a polynomial space-time bump xi. Report only.
inline EnergyReport energy_diagnostic(const SpaceTimeField& u, double m, double p,
                                      const SourceTerm& f, const EnergySpec& spec = {}) {
    if (u.n_rows() < 3) throw std::invalid_argument("energy_diagnostic: need >= 3 rows");
    const Grid1D& g = u.grid;
    const double dx = g.dx();
    const auto wt = time_weights(u.times);

    const detail::Bump bx{g.x_min, g.x_max, (1.0 - spec.x_inner) * (g.x_max - g.x_min) / 2.0};
    const detail::Bump bt{u.times.front(), u.times.back(),
                          (1.0 - spec.t_inner) * (u.times.back() - u.times.front()) / 2.0};

    auto phi = [m](double s) { return m == 1.0 ? 1.0 : m * std::pow(s, m - 1.0); };

    EnergyReport rep;
    std::vector<double> src(static_cast<std::size_t>(g.n_cells), 0.0);
    for (std::size_t j = 0; j < u.n_rows(); ++j) {
        const double t = u.times[j];
        const double bt_v = bt.value(t);
        const double bt_d = std::fabs(bt.derivative(t));
        double mass = 0.0;
        double grad_term = 0.0, time_term = 0.0, space_term = 0.0;
        for (int i = 0; i < g.n_cells; ++i) {
            const double x = g.center(i);
            const double xi = bx.value(x) * bt_v;
            const double xi_t = bx.value(x) * bt_d;
            const double xi_x = std::fabs(bx.derivative(x)) * bt_v;
            const double uv = u.at(j, i);
            const double au = std::fabs(uv);
            mass += uv * uv * std::pow(xi, p) * dx;
            time_term += uv * uv * std::pow(xi, p - 1.0) * xi_t * dx;
            space_term += phi(au) * std::pow(au, p) * std::pow(xi_x, p) * dx;
            if (i > 0 && i + 1 < g.n_cells) {
                const double gr = (u.at(j, i + 1) - u.at(j, i - 1)) / (2.0 * dx);
                grad_term += phi(au) * std::pow(std::fabs(gr), p) * std::pow(xi, p) * dx;
            }
        }
        rep.lhs_sup = std::fmax(rep.lhs_sup, mass);
        rep.lhs_grad += grad_term * wt[j];
        rep.rhs_time += time_term * wt[j];
        rep.rhs_space += space_term * wt[j];
    }

    if (!f.is_zero()) {
        SpaceTimeField fs(g);
        for (std::size_t j = 0; j < u.n_rows(); ++j) {
            f.fill_row(u.times[j], g, src);
            fs.push_row(u.times[j], src);
        }
        const double nf = lqr_norm(fs, spec.q, spec.r);
        rep.rhs_source = nf * nf;
    }

    rep.lhs = rep.lhs_sup + rep.lhs_grad;
    rep.rhs = rep.rhs_time + rep.rhs_space + rep.rhs_source;
    if (rep.lhs == 0.0 && rep.rhs == 0.0) {
        rep.zero_over_zero = true;
        rep.ratio = 0.0;
    } else {
        rep.ratio = rep.lhs / rep.rhs;
    }
    return rep;
}

}  // namespace ddparab
