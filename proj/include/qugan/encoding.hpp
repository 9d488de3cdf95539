#pragma once

// Classical <-> quantum data translation. Raw values are min-max normalized
// to [0,1] per dimension, mapped to rotation angles theta = 2*asin(sqrt(x))
// so that a qubit prepared by RY(theta) measures 1 with probability exactly
// x, and measurement means are mapped back through the inverse transform.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qugan/errors.hpp"

namespace qugan {

// Per-dimension min/max of the dataset the normalization was fit on.
// Statistics are fit once on the training data and frozen.
struct Scaler {
    std::vector<double> mins;
    std::vector<double> maxes;

    std::size_t dims() const { return mins.size(); }

    // Raw data units -> [0,1] per dimension (for in-range input).
    std::vector<double> normalize(std::span<const double> raw) const {
        check_dims(raw.size());
        std::vector<double> out(raw.size());
        for (std::size_t d = 0; d < raw.size(); ++d)
            out[d] = (raw[d] - mins[d]) / (maxes[d] - mins[d]);
        return out;
    }

    // [0,1] per dimension -> raw data units.
    std::vector<double> denormalize(std::span<const double> unit) const {
        check_dims(unit.size());
        std::vector<double> out(unit.size());
        for (std::size_t d = 0; d < unit.size(); ++d)
            out[d] = mins[d] + unit[d] * (maxes[d] - mins[d]);
        return out;
    }

  private:
    void check_dims(std::size_t n) const {
        if (n != dims())
            throw ArgumentError("point has " + std::to_string(n) + " dimensions, scaler has " +
                                std::to_string(dims()));
    }
};

// One rotation angle per dimension, each in [0, pi].
struct EncodedPoint {
    std::vector<double> angles;
};

// Fits per-dimension min/max so the dataset spans [0,1] after normalization.
// Every point must have the same dimensionality as the first.
inline Scaler fit_scaler(std::span<const std::vector<double>> dataset) {
    if (dataset.empty()) throw DataError("cannot fit a scaler on an empty dataset");
    const std::size_t dims = dataset.front().size();
    if (dims == 0) throw DataError("points must have at least one dimension");
    Scaler s{dataset.front(), dataset.front()};
    for (const auto& p : dataset) {
        if (p.size() != dims) throw DataError("inconsistent point dimensionality in dataset");
        for (std::size_t d = 0; d < dims; ++d) {
            s.mins[d] = std::min(s.mins[d], p[d]);
            s.maxes[d] = std::max(s.maxes[d], p[d]);
        }
    }
    for (std::size_t d = 0; d < dims; ++d)
        if (!(s.maxes[d] > s.mins[d]))
            throw DataError("dimension " + std::to_string(d) + " has zero spread");
    return s;
}

// Clamps a normalized value into [0,1], counting how many inputs actually
// needed it. Out-of-range values only occur for data outside the fitted
// min/max (inference-time stragglers).
inline double clamp_unit(double x, std::size_t* clamped_count = nullptr) {
    if (x < 0.0 || x > 1.0) {
        if (clamped_count) ++*clamped_count;
        return x < 0.0 ? 0.0 : 1.0;
    }
    return x;
}

// Angle encoding of a normalized point: angle_d = 2*asin(sqrt(x_d)).
inline EncodedPoint encode_point(std::span<const double> normalized) {
    EncodedPoint e;
    e.angles.reserve(normalized.size());
    for (double x : normalized) {
        if (!(x >= 0.0 && x <= 1.0))
            throw ArgumentError("encode_point requires coordinates in [0,1], got " +
                                std::to_string(x));
        e.angles.push_back(2.0 * std::asin(std::sqrt(x)));
    }
    return e;
}

// Maps per-qubit measurement means (the expectation estimates, one per
// dimension) back to data units through the frozen scaler.
inline std::vector<double> decode_measurements(std::span<const double> shot_means,
                                               const Scaler& scaler) {
    for (double m : shot_means)
        if (!(m >= 0.0 && m <= 1.0))
            throw ArgumentError("measurement mean outside [0,1]: " + std::to_string(m));
    return scaler.denormalize(shot_means);
}

}  // namespace qugan
