#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "ddparab/common.hpp"

namespace ddparab {

/// Uniform cell-centered 1D grid; centers at x_min + (i + 1/2) dx.
struct Grid1D {
    double x_min, x_max;
    int n_cells;

    Grid1D(double x_min_, double x_max_, int n_cells_)
        : x_min(x_min_), x_max(x_max_), n_cells(n_cells_) {
        if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max must exceed x_min");
        if (n_cells < 8) throw std::invalid_argument("Grid1D: n_cells must be >= 8");
    }

    double dx() const { return (x_max - x_min) / n_cells; }
    double center(int i) const { return x_min + (i + 0.5) * dx(); }
    std::vector<double> centers() const {
        std::vector<double> out(static_cast<std::size_t>(n_cells));
        for (int i = 0; i < n_cells; ++i) out[static_cast<std::size_t>(i)] = center(i);
        return out;
    }
};

/// Discrete u on grid x time stamps; rows are time levels (row-major).
struct SpaceTimeField {
    Grid1D grid;
    std::vector<double> times;
    std::vector<double> values;  // times.size() * n_cells

    explicit SpaceTimeField(Grid1D g) : grid(g) {}

    std::size_t n_rows() const { return times.size(); }
    int n_cells() const { return grid.n_cells; }

    double at(std::size_t row, int i) const {
        return values[row * static_cast<std::size_t>(grid.n_cells) +
                      static_cast<std::size_t>(i)];
    }
    std::span<const double> row(std::size_t j) const {
        return {values.data() + j * static_cast<std::size_t>(grid.n_cells),
                static_cast<std::size_t>(grid.n_cells)};
    }
    std::span<double> row(std::size_t j) {
        return {values.data() + j * static_cast<std::size_t>(grid.n_cells),
                static_cast<std::size_t>(grid.n_cells)};
    }

    void push_row(double t, std::span<const double> u) {
        if (static_cast<int>(u.size()) != grid.n_cells)
            throw std::invalid_argument("push_row: row width mismatch");
        if (!times.empty() && !(t > times.back()))
            throw std::invalid_argument("push_row: times must be strictly increasing");
        times.push_back(t);
        values.insert(values.end(), u.begin(), u.end());
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::fmax(m, std::fabs(v));
        return m;
    }

    void validate() const {
        if (times.size() * static_cast<std::size_t>(grid.n_cells) != values.size())
            throw std::invalid_argument("SpaceTimeField: shape mismatch");
        for (std::size_t j = 1; j < times.size(); ++j)
            if (!(times[j] > times[j - 1]))
                throw std::invalid_argument("SpaceTimeField: times not increasing");
        for (double v : values)
            if (!std::isfinite(v)) throw NonFinite("SpaceTimeField: non-finite value");
    }

    /// Bilinear interpolation in (x, t); over the half-cell margins between
    /// the outermost centers and the domain edges the stencil extends
    /// linearly, so linear profiles reproduce exactly.
    double interpolate(double x, double t) const {
        if (times.empty()) throw OutOfExtent("interpolate: empty field");
        if (t < times.front() - 1e-12 || t > times.back() + 1e-12)
            throw OutOfExtent("interpolate: t outside field extent");
        std::size_t j1 = 0;
        while (j1 + 1 < times.size() && times[j1 + 1] < t) ++j1;
        std::size_t j2 = std::min(j1 + 1, times.size() - 1);
        double wt = 0.0;
        if (j2 > j1 && times[j2] > times[j1])
            wt = std::clamp((t - times[j1]) / (times[j2] - times[j1]), 0.0, 1.0);

        const double dx = grid.dx();
        const double s = (x - grid.center(0)) / dx;
        const int i1 = std::clamp(static_cast<int>(std::floor(s)), 0, grid.n_cells - 2);
        const int i2 = i1 + 1;
        const double wx = std::clamp(s - i1, -0.5, 1.5);

        auto lerp_row = [&](std::size_t j) {
            return (1.0 - wx) * at(j, i1) + wx * at(j, i2);
        };
        return (1.0 - wt) * lerp_row(j1) + wt * lerp_row(j2);
    }
};

/// Build a field by sampling a closed-form u(x, t).
template <typename F>
SpaceTimeField sample_field(const Grid1D& grid, const std::vector<double>& times, F&& u) {
    SpaceTimeField field(grid);
    std::vector<double> row(static_cast<std::size_t>(grid.n_cells));
    for (double t : times) {
        for (int i = 0; i < grid.n_cells; ++i)
            row[static_cast<std::size_t>(i)] = u(grid.center(i), t);
        field.push_row(t, row);
    }
    field.validate();
    return field;
}

/// Generalized midpoint weights for a strictly increasing stamp sequence;
/// exact for constants (weights sum to the span).
inline std::vector<double> time_weights(const std::vector<double>& times) {
    const std::size_t n = times.size();
    if (n == 0) return {};
    if (n == 1) return {1.0};
    std::vector<double> w(n);
    w[0] = (times[1] - times[0]) / 2.0;
    w[n - 1] = (times[n - 1] - times[n - 2]) / 2.0;
    for (std::size_t j = 1; j + 1 < n; ++j) w[j] = (times[j + 1] - times[j - 1]) / 2.0;
    return w;
}

}  // namespace ddparab
