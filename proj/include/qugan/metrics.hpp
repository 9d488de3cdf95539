#pragma once

// Distribution comparison: 2D histograms over the unit square and the
// Hellinger distance H(p,q) = sqrt(1 - sum_i sqrt(p_i * q_i)).

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qugan/errors.hpp"
#include "qugan/point.hpp"

namespace qugan {

// Normalized binned distribution over [0,1]^2, row-major (x fastest).
struct Histogram2D {
    std::size_t bins_x = 0;
    std::size_t bins_y = 0;
    std::vector<double> mass;

    double& cell(std::size_t ix, std::size_t iy) { return mass[iy * bins_x + ix]; }
    const double& cell(std::size_t ix, std::size_t iy) const { return mass[iy * bins_x + ix]; }

    bool same_geometry(const Histogram2D& other) const {
        return bins_x == other.bins_x && bins_y == other.bins_y;
    }
};

namespace detail {

inline std::size_t bin_of(double v, std::size_t bins) {
    // Boundary value 1.0 belongs to the last bin.
    const std::size_t i = static_cast<std::size_t>(v * static_cast<double>(bins));
    return i >= bins ? bins - 1 : i;
}

}  // namespace detail

// Uniform-width binning of points in [0,1]^2, normalized to total mass 1.
inline Histogram2D histogram(std::span<const Point2> points, std::size_t bins) {
    if (points.empty()) throw DataError("cannot histogram an empty point set");
    if (bins < 2) throw ArgumentError("need at least 2 bins per axis");
    Histogram2D h{bins, bins, std::vector<double>(bins * bins, 0.0)};
    for (const Point2& p : points) {
        if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0))
            throw ArgumentError("histogram point outside [0,1]^2: (" + std::to_string(p.x) + ", " +
                                std::to_string(p.y) + ")");
        h.cell(detail::bin_of(p.x, bins), detail::bin_of(p.y, bins)) += 1.0;
    }
    const double inv = 1.0 / static_cast<double>(points.size());
    for (double& m : h.mass) m *= inv;
    return h;
}

// Hellinger distance between two histograms of identical geometry; 0 iff
// equal, 1 iff the supports are disjoint.
inline double hellinger(const Histogram2D& p, const Histogram2D& q) {
    if (!p.same_geometry(q)) throw ArgumentError("histogram geometries differ");
    double bc = 0.0;
    for (std::size_t i = 0; i < p.mass.size(); ++i) bc += std::sqrt(p.mass[i] * q.mass[i]);
    const double one_minus = 1.0 - bc;
    return std::sqrt(one_minus > 0.0 ? one_minus : 0.0);
}

}  // namespace qugan
