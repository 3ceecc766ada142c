#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddparab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Integrability exponents q, r live in (1, inf]; inf is carried as IEEE
// infinity and every formula is evaluated through 1/q, 1/r so the limit
// branches are exact.
inline double inv_or_zero(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

inline bool is_extended_exponent(double x) {
    return std::isinf(x) || (std::isfinite(x) && x > 1.0);
}

struct NonPositiveExponent : std::domain_error {
    using std::domain_error::domain_error;
};
struct InvalidDomain : std::domain_error {
    using std::domain_error::domain_error;
};
struct DegenerateFamily : std::domain_error {
    using std::domain_error::domain_error;
};
struct NonPositiveKappa : std::domain_error {
    using std::domain_error::domain_error;
};
struct EmptyCylinder : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfExtent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonFinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal formatting; locale-independent, so repeated
// runs emit byte-identical artifacts.
inline std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw IoError("number formatting failed");
    return std::string(buf, ptr);
}

inline std::vector<double> linspace(double a, double b, int count) {
    if (count < 2) throw std::invalid_argument("linspace needs count >= 2");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double h = (b - a) / (count - 1);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = a + h * i;
    out.back() = b;
    return out;
}

// x^e for half-integer exponents arising from the regularized degeneracy law;
// the e == 0 and e == 1/2 fast paths keep the hot solver loop off pow().
inline double pow_half(double x, double e) {
    if (e == 0.0) return 1.0;
    if (e == 0.5) return std::sqrt(x);
    if (e == 1.0) return x;
    return std::pow(x, e);
}

}  // namespace ddparab
