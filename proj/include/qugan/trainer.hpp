#pragma once

// The adversarial trainer. Both adversaries are parameterized states on
// their own registers; the discriminator's probability estimates are the
// folded swap-test p-values, the scalar losses are the cross-entropy terms
// -log(p_real), -log(1 - p_fake) and -log(p_fake), and gradients come from
// the shifted-evaluation rule with shift pi / (2 * sqrt(epoch)).
//
// Schedule per epoch: one discriminator step per data point, then I steps
// of discriminator-vs-generator, then R generator steps, each step being
// plain SGD with the full per-slot gradient. Everything is deterministic
// per seed.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qugan/circuit.hpp"
#include "qugan/encoding.hpp"
#include "qugan/errors.hpp"
#include "qugan/metrics.hpp"
#include "qugan/point.hpp"
#include "qugan/rng.hpp"
#include "qugan/swaptest.hpp"

namespace qugan {

struct TrainConfig {
    double learning_rate = 0.01;
    std::size_t epochs = 25;
    std::size_t disc_on_gen_count = 5;  // I: discriminator-vs-generator steps per epoch
    std::size_t gen_on_disc_count = 1;  // R: generator steps per epoch
    std::size_t shots = 30;             // n: shots per emitted data point
    std::uint64_t seed = 1;
    std::size_t dim = 2;
    std::size_t eval_interval = 1;      // epochs between distance evaluations
    std::size_t eval_sample_count = 500;
    bool shuffle = false;               // per-epoch dataset reshuffle
    bool normalized_shift = false;      // divide gradients by 2*sin(shift)
    bool stochastic_gradients = false;  // estimate p-values from `shots` draws

    void validate() const {
        if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
        if (epochs < 1) throw ConfigError("epochs must be >= 1");
        if (disc_on_gen_count < 1) throw ConfigError("disc_on_gen_count must be >= 1");
        if (gen_on_disc_count < 1) throw ConfigError("gen_on_disc_count must be >= 1");
        if (shots < 1) throw ConfigError("shots must be >= 1");
        if (dim < 1) throw ConfigError("dim must be >= 1");
        if (eval_interval < 1) throw ConfigError("eval_interval must be >= 1");
        if (eval_sample_count < 1) throw ConfigError("eval_sample_count must be >= 1");
    }
};

struct NetworkParams {
    std::vector<double> theta_d;
    std::vector<double> theta_g;
};

// Exact end-of-epoch loss snapshot; p_real and cost_d_real are means over
// the dataset, the generator-side terms are single values.
struct LossReport {
    double p_real = 0.0;
    double p_fake = 0.0;
    double cost_d_real = 0.0;
    double cost_d_fake = 0.0;
    double cost_g = 0.0;
};

struct EpochRecord {
    std::size_t epoch = 0;  // 1-based
    std::vector<double> theta_d;
    std::vector<double> theta_g;
    LossReport losses;
    double hellinger = std::numeric_limits<double>::quiet_NaN();  // NaN = not evaluated
    PointCloud samples;        // normalized measurement means, empty if not evaluated
    std::size_t cost_evaluations = 0;  // gradient-path cost evaluations this epoch
};

struct TrainingTrace {
    double initial_hellinger = 0.0;  // before any training step
    PointCloud initial_samples;
    std::vector<EpochRecord> epochs;
};

// Circuit bundle for one adversarial pair: discriminator and generator
// networks over the full 1+2d register, plus the generator alone on a
// d-qubit register (the generator acts only on its own qubits, so sampling
// from the small register is exact and cheap).
struct GanSystem {
    QubitLayout layout;
    ParamCircuit disc;
    ParamCircuit gen;
    ParamCircuit gen_standalone;

    static GanSystem standard(std::size_t dim) {
        GanSystem sys;
        sys.layout = QubitLayout::standard(dim);
        const std::size_t width = sys.layout.total_qubits();
        const auto disc_layers = standard_layers(sys.layout.disc_qubits);
        const auto gen_layers = standard_layers(sys.layout.gen_qubits);
        sys.disc = build_network(sys.layout.disc_qubits, disc_layers, width);
        sys.gen = build_network(sys.layout.gen_qubits, gen_layers, width);
        std::vector<std::size_t> small(dim);
        for (std::size_t i = 0; i < dim; ++i) small[i] = i;
        sys.gen_standalone = build_network(small, standard_layers(small), dim);
        return sys;
    }

    // Fixed-angle RY state preparation of an encoded data point on the
    // generator/data register.
    ParamCircuit data_prep(const EncodedPoint& point) const {
        if (point.angles.size() != layout.dim())
            throw ArgumentError("encoded point dimensionality does not match layout");
        ParamCircuit prep;
        prep.num_qubits = layout.total_qubits();
        prep.num_params = 0;
        for (std::size_t i = 0; i < point.angles.size(); ++i)
            prep.gates.push_back(
                {GateKind::RY, {layout.gen_qubits[i]}, std::nullopt, point.angles[i]});
        return prep;
    }
};

// The printed five-qubit program: discriminator preparation, generator
// preparation, then the interference fragment. Parameter slots are laid out
// as [theta_d..., theta_g...].
inline ParamCircuit assemble_full_circuit(const GanSystem& sys) {
    ParamCircuit full;
    full.num_qubits = sys.layout.total_qubits();
    for (const ParamGate& g : sys.disc.gates) full.gates.push_back(g);
    for (ParamGate g : sys.gen.gates) {
        if (g.param_slot) *g.param_slot += sys.disc.num_params;
        full.gates.push_back(std::move(g));
    }
    for (const ParamGate& g : build_swap_test(sys.layout).gates) full.gates.push_back(g);
    full.num_params = sys.disc.num_params + sys.gen.num_params;
    full.validate();
    return full;
}

inline constexpr double kProbFloor = 1e-6;

// -log(p) with p clamped into [kProbFloor, 1] so costs stay finite at the
// endpoints.
inline double clamped_neg_log(double p) {
    if (p < kProbFloor) p = kProbFloor;
    if (p > 1.0) p = 1.0;
    return -std::log(p);
}

namespace detail {

struct PValueMode {
    std::optional<std::size_t> shots;  // nullopt = exact expectation
    std::uint64_t seed = 0;
};

inline double p_real_value(const GanSystem& sys, std::span<const double> theta_d,
                           std::span<const double> data_point, const PValueMode& mode) {
    const ParamCircuit prep = sys.data_prep(encode_point(data_point));
    if (mode.shots)
        return p_value_shots(sys.disc, theta_d, prep, {}, sys.layout, *mode.shots, mode.seed).p_value;
    return p_value_exact(sys.disc, theta_d, prep, {}, sys.layout).p_value;
}

inline double p_fake_value(const GanSystem& sys, std::span<const double> theta_d,
                           std::span<const double> theta_g, const PValueMode& mode) {
    if (mode.shots)
        return p_value_shots(sys.disc, theta_d, sys.gen, theta_g, sys.layout, *mode.shots, mode.seed)
            .p_value;
    return p_value_exact(sys.disc, theta_d, sys.gen, theta_g, sys.layout).p_value;
}

}  // namespace detail

// How well the discriminator recognizes a (normalized) data point as real.
inline double cost_d_real(const GanSystem& sys, std::span<const double> theta_d,
                          std::span<const double> data_point) {
    return clamped_neg_log(detail::p_real_value(sys, theta_d, data_point, {}));
}

// How well the discriminator rejects the generator state.
inline double cost_d_fake(const GanSystem& sys, std::span<const double> theta_d,
                          std::span<const double> theta_g) {
    return clamped_neg_log(1.0 - detail::p_fake_value(sys, theta_d, theta_g, {}));
}

// How well the generator fools the discriminator; minimizing drives the
// generator state toward the discriminator state.
inline double cost_g(const GanSystem& sys, std::span<const double> theta_d,
                     std::span<const double> theta_g) {
    return clamped_neg_log(detail::p_fake_value(sys, theta_d, theta_g, {}));
}

// Partial derivative estimate for parameter slot k at the given 1-based
// epoch: half the difference of the cost at angles shifted by
// +-pi/(2*sqrt(epoch)). As printed this is not divided by the shift, so its
// magnitude decays like 1/sqrt(epoch); `normalized_shift` divides by
// 2*sin(shift) to recover the exact derivative of sinusoidal costs.
inline double parameter_shift_grad(const std::function<double(std::span<const double>)>& cost,
                                   std::span<const double> params, std::size_t k, std::size_t epoch,
                                   bool normalized_shift = false) {
    if (epoch == 0) throw ArgumentError("epoch index is 1-based; the shift is undefined at 0");
    if (k >= params.size())
        throw ArgumentError("parameter index " + std::to_string(k) + " out of range");
    const double pi = std::acos(-1.0);
    const double shift = pi / (2.0 * std::sqrt(static_cast<double>(epoch)));
    std::vector<double> shifted(params.begin(), params.end());
    shifted[k] = params[k] + shift;
    const double plus = cost(shifted);
    shifted[k] = params[k] - shift;
    const double minus = cost(shifted);
    double grad = 0.5 * (plus - minus);
    if (normalized_shift) grad /= std::sin(shift);
    return grad;
}

// Normalized per-qubit measurement means of the generator state: `count`
// points, each the mean of `shots` seeded joint draws. Requires dim == 2.
inline PointCloud generate_means(const GanSystem& sys, std::span<const double> theta_g,
                                 std::size_t count, std::size_t shots, std::uint64_t seed) {
    if (count < 1) throw ArgumentError("sample count must be >= 1");
    if (sys.layout.dim() != 2) throw ArgumentError("point generation requires a 2-qubit generator");
    const StateVector state =
        bind_and_run(sys.gen_standalone, theta_g, zero_state(sys.layout.dim()));
    const std::size_t qubits[2] = {0, 1};
    Rng rng(seed);
    PointCloud points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const ShotResult draws = sample(state, qubits, shots, rng.next_u64());
        points.push_back({draws.mean_of(0), draws.mean_of(1)});
    }
    return points;
}

// As generate_means, but decoded through the scaler into data units.
inline PointCloud generate_samples(const GanSystem& sys, std::span<const double> theta_g,
                                   std::size_t count, std::size_t shots, std::uint64_t seed,
                                   const Scaler& scaler) {
    PointCloud means = generate_means(sys, theta_g, count, shots, seed);
    for (Point2& p : means) {
        const double raw[2] = {p.x, p.y};
        const std::vector<double> decoded = decode_measurements(raw, scaler);
        p = {decoded[0], decoded[1]};
    }
    return means;
}

namespace detail {

// Seed streams, mixed with the run seed.
inline constexpr std::uint64_t kStreamThetaInit = 0;
inline constexpr std::uint64_t kStreamShuffle = 1;
inline constexpr std::uint64_t kStreamGradShots = 2;
inline constexpr std::uint64_t kStreamEvalBase = 1000;

}  // namespace detail

// Runs the full training schedule on an already-normalized dataset and
// returns the per-epoch trace. The target histogram fixes the evaluation
// bin geometry.
inline TrainingTrace train(const TrainConfig& config, const PointCloud& dataset,
                           const Histogram2D& target) {
    config.validate();
    if (dataset.empty()) throw DataError("training dataset is empty");
    if (config.dim != 2)
        throw ConfigError("this artifact trains 2-dimensional distributions (dim = 2)");
    for (const Point2& p : dataset)
        if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0))
            throw DataError("training data must be normalized to [0,1]^2");

    const GanSystem sys = GanSystem::standard(config.dim);
    const double pi = std::acos(-1.0);

    NetworkParams params;
    {
        Rng init(derive_seed(config.seed, detail::kStreamThetaInit));
        params.theta_d.resize(sys.disc.num_params);
        params.theta_g.resize(sys.gen.num_params);
        for (double& t : params.theta_d) t = init.uniform() * pi;
        for (double& t : params.theta_g) t = init.uniform() * pi;
    }

    Rng shuffle_rng(derive_seed(config.seed, detail::kStreamShuffle));
    Rng grad_shot_rng(derive_seed(config.seed, detail::kStreamGradShots));

    std::size_t eval_counter = 0;
    auto mode = [&]() -> detail::PValueMode {
        if (!config.stochastic_gradients) return {};
        return {config.shots, grad_shot_rng.next_u64()};
    };
    auto counted_cost_d_real = [&](std::span<const double> theta,
                                   std::span<const double> x) -> double {
        ++eval_counter;
        return clamped_neg_log(detail::p_real_value(sys, theta, x, mode()));
    };
    auto counted_cost_d_fake = [&](std::span<const double> theta_d,
                                   std::span<const double> theta_g) -> double {
        ++eval_counter;
        return clamped_neg_log(1.0 - detail::p_fake_value(sys, theta_d, theta_g, mode()));
    };
    auto counted_cost_g = [&](std::span<const double> theta_d,
                              std::span<const double> theta_g) -> double {
        ++eval_counter;
        return clamped_neg_log(detail::p_fake_value(sys, theta_d, theta_g, mode()));
    };

    auto sgd_step = [&](std::vector<double>& theta,
                        const std::function<double(std::span<const double>)>& cost,
                        std::size_t epoch_1b, const char* stage, std::size_t step) {
        std::vector<double> grad(theta.size());
        for (std::size_t k = 0; k < theta.size(); ++k) {
            grad[k] = parameter_shift_grad(cost, theta, k, epoch_1b, config.normalized_shift);
            if (!std::isfinite(grad[k]))
                throw TrainingError("non-finite gradient at epoch " + std::to_string(epoch_1b) +
                                    ", " + stage + " step " + std::to_string(step) + ", slot " +
                                    std::to_string(k));
        }
        for (std::size_t k = 0; k < theta.size(); ++k)
            theta[k] -= config.learning_rate * grad[k];
    };

    auto evaluate = [&](std::size_t epoch_1b) {
        const PointCloud means =
            generate_means(sys, params.theta_g, config.eval_sample_count, config.shots,
                           derive_seed(config.seed, detail::kStreamEvalBase + epoch_1b));
        const double dist = hellinger(histogram(means, target.bins_x), target);
        return std::pair<double, PointCloud>(dist, means);
    };

    TrainingTrace trace;
    {
        auto [dist, means] = evaluate(0);
        trace.initial_hellinger = dist;
        trace.initial_samples = std::move(means);
    }

    std::vector<std::size_t> order(dataset.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        eval_counter = 0;
        if (config.shuffle) {
            // Fisher-Yates with our deterministic uniform draws.
            for (std::size_t i = order.size(); i > 1; --i) {
                const std::size_t j =
                    static_cast<std::size_t>(shuffle_rng.uniform() * static_cast<double>(i));
                std::swap(order[i - 1], order[j >= i ? i - 1 : j]);
            }
        }

        for (std::size_t idx = 0; idx < order.size(); ++idx) {
            const Point2& p = dataset[order[idx]];
            const double point[2] = {p.x, p.y};
            sgd_step(
                params.theta_d,
                [&](std::span<const double> t) { return counted_cost_d_real(t, point); }, epoch,
                "real-data", idx);
        }
        for (std::size_t i = 0; i < config.disc_on_gen_count; ++i)
            sgd_step(
                params.theta_d,
                [&](std::span<const double> t) { return counted_cost_d_fake(t, params.theta_g); },
                epoch, "disc-vs-gen", i);
        for (std::size_t j = 0; j < config.gen_on_disc_count; ++j)
            sgd_step(
                params.theta_g,
                [&](std::span<const double> t) { return counted_cost_g(params.theta_d, t); }, epoch,
                "gen-vs-disc", j);

        EpochRecord record;
        record.epoch = epoch;
        record.theta_d = params.theta_d;
        record.theta_g = params.theta_g;
        record.cost_evaluations = eval_counter;

        // Exact end-of-epoch snapshot (trace instrumentation; not part of
        // the loop's cost-evaluation accounting).
        {
            LossReport& r = record.losses;
            double p_real_sum = 0.0, cost_real_sum = 0.0;
            for (const Point2& p : dataset) {
                const double point[2] = {p.x, p.y};
                const double pv = detail::p_real_value(sys, params.theta_d, point, {});
                p_real_sum += pv;
                cost_real_sum += clamped_neg_log(pv);
            }
            r.p_real = p_real_sum / static_cast<double>(dataset.size());
            r.cost_d_real = cost_real_sum / static_cast<double>(dataset.size());
            r.p_fake = detail::p_fake_value(sys, params.theta_d, params.theta_g, {});
            r.cost_d_fake = clamped_neg_log(1.0 - r.p_fake);
            r.cost_g = clamped_neg_log(r.p_fake);
            if (!std::isfinite(r.cost_d_real) || !std::isfinite(r.cost_d_fake) ||
                !std::isfinite(r.cost_g))
                throw TrainingError("non-finite cost at epoch " + std::to_string(epoch));
        }

        if (epoch % config.eval_interval == 0 || epoch == config.epochs) {
            auto [dist, means] = evaluate(epoch);
            record.hellinger = dist;
            record.samples = std::move(means);
        }
        trace.epochs.push_back(std::move(record));
    }
    return trace;
}

}  // namespace qugan
