#pragma once

// Minimal dense-network GAN used for the parameter-count comparison: plain
// MLPs with sigmoid activations on every layer, manual backpropagation and
// SGD, no framework. Latent draws are standard normal; the generator's
// sigmoid output lands in (0,1)^2, directly comparable to normalized data.
// The generator minimizes -log D(G(z)) (the non-saturating form of the
// minmax objective).

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qugan/errors.hpp"
#include "qugan/metrics.hpp"
#include "qugan/point.hpp"
#include "qugan/rng.hpp"

namespace qugan {

// Fully-connected network with sigmoid activations on all layers.
// widths = [input, hidden..., output]; weights[l] is row-major (out x in).
struct DenseNet {
    std::vector<std::size_t> widths;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    std::size_t layers() const { return weights.size(); }

    static DenseNet zeros(std::vector<std::size_t> widths) {
        if (widths.size() < 2) throw ArgumentError("a network needs input and output widths");
        DenseNet net;
        net.widths = std::move(widths);
        for (std::size_t l = 0; l + 1 < net.widths.size(); ++l) {
            net.weights.emplace_back(net.widths[l + 1] * net.widths[l], 0.0);
            net.biases.emplace_back(net.widths[l + 1], 0.0);
        }
        return net;
    }

    // Gaussian weights scaled by 1/sqrt(fan_in), zero biases.
    static DenseNet random(std::vector<std::size_t> widths, Rng& rng) {
        DenseNet net = zeros(std::move(widths));
        for (std::size_t l = 0; l < net.layers(); ++l) {
            const double scale = 1.0 / std::sqrt(static_cast<double>(net.widths[l]));
            for (double& w : net.weights[l]) w = rng.gaussian() * scale;
        }
        return net;
    }
};

// Exact weight + bias total.
inline std::size_t count_params(const DenseNet& net) {
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < net.widths.size(); ++l)
        total += net.widths[l] * net.widths[l + 1] + net.widths[l + 1];
    return total;
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Post-activation values per layer; activations[0] is the input.
struct ForwardCache {
    std::vector<std::vector<double>> activations;
};

inline std::vector<double> forward(const DenseNet& net, std::span<const double> input,
                                   ForwardCache* cache = nullptr) {
    if (input.size() != net.widths.front())
        throw ArgumentError("input width " + std::to_string(input.size()) + " != " +
                            std::to_string(net.widths.front()));
    std::vector<double> a(input.begin(), input.end());
    if (cache) {
        cache->activations.clear();
        cache->activations.push_back(a);
    }
    for (std::size_t l = 0; l < net.layers(); ++l) {
        const std::size_t n_in = net.widths[l], n_out = net.widths[l + 1];
        std::vector<double> next(n_out);
        for (std::size_t r = 0; r < n_out; ++r) {
            double z = net.biases[l][r];
            for (std::size_t c = 0; c < n_in; ++c) z += net.weights[l][r * n_in + c] * a[c];
            next[r] = sigmoid(z);
        }
        a = std::move(next);
        if (cache) cache->activations.push_back(a);
    }
    return a;
}

// Same shapes as the network's weights/biases.
struct NetGrads {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    static NetGrads zeros_like(const DenseNet& net) {
        NetGrads g;
        for (std::size_t l = 0; l < net.layers(); ++l) {
            g.weights.emplace_back(net.weights[l].size(), 0.0);
            g.biases.emplace_back(net.biases[l].size(), 0.0);
        }
        return g;
    }

    void scale(double s) {
        for (auto& w : weights)
            for (double& v : w) v *= s;
        for (auto& b : biases)
            for (double& v : b) v *= s;
    }
};

// Accumulates dL/dW and dL/db into `grads` given dL/d(output activation),
// and returns dL/d(input activation) for chaining through stacked nets.
inline std::vector<double> backward(const DenseNet& net, const ForwardCache& cache,
                                    std::span<const double> d_output, NetGrads& grads) {
    std::vector<double> d_act(d_output.begin(), d_output.end());
    for (std::size_t l = net.layers(); l-- > 0;) {
        const std::size_t n_in = net.widths[l], n_out = net.widths[l + 1];
        const std::vector<double>& a_out = cache.activations[l + 1];
        const std::vector<double>& a_in = cache.activations[l];
        std::vector<double> delta(n_out);
        for (std::size_t r = 0; r < n_out; ++r)
            delta[r] = d_act[r] * a_out[r] * (1.0 - a_out[r]);  // sigmoid'
        std::vector<double> d_in(n_in, 0.0);
        for (std::size_t r = 0; r < n_out; ++r) {
            grads.biases[l][r] += delta[r];
            for (std::size_t c = 0; c < n_in; ++c) {
                grads.weights[l][r * n_in + c] += delta[r] * a_in[c];
                d_in[c] += net.weights[l][r * n_in + c] * delta[r];
            }
        }
        d_act = std::move(d_in);
    }
    return d_act;
}

inline void apply_sgd(DenseNet& net, const NetGrads& grads, double learning_rate) {
    for (std::size_t l = 0; l < net.layers(); ++l) {
        for (std::size_t i = 0; i < net.weights[l].size(); ++i)
            net.weights[l][i] -= learning_rate * grads.weights[l][i];
        for (std::size_t i = 0; i < net.biases[l].size(); ++i)
            net.biases[l][i] -= learning_rate * grads.biases[l][i];
    }
}

struct CGanConfig {
    std::vector<std::size_t> gen_widths;   // [latent_dim, ..., 2]
    std::vector<std::size_t> disc_widths;  // [2, ..., 1]
    std::size_t latent_dim = 2;
    double learning_rate = 0.1;
    std::size_t epochs = 50;
    std::size_t batch_size = 16;
    std::uint64_t seed = 1;
    std::size_t eval_interval = 1;
    std::size_t eval_sample_count = 500;

    void validate() const {
        if (gen_widths.size() < 2 || disc_widths.size() < 2)
            throw ConfigError("networks need at least input and output widths");
        if (gen_widths.back() != 2) throw ConfigError("generator must output 2 values");
        if (disc_widths.back() != 1) throw ConfigError("discriminator must output 1 value");
        if (disc_widths.front() != 2) throw ConfigError("discriminator input width must be 2");
        if (gen_widths.front() != latent_dim)
            throw ConfigError("generator input width must equal latent_dim");
        if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
        if (epochs < 1) throw ConfigError("epochs must be >= 1");
        if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
        if (eval_interval < 1) throw ConfigError("eval_interval must be >= 1");
        if (eval_sample_count < 1) throw ConfigError("eval_sample_count must be >= 1");
    }
};

struct CGanEpochRecord {
    std::size_t epoch = 0;  // 1-based
    double loss_d = 0.0;    // mean discriminator BCE over the epoch
    double loss_g = 0.0;    // mean generator BCE over the epoch
    double hellinger = std::numeric_limits<double>::quiet_NaN();
    PointCloud samples;     // generated points in (0,1)^2, empty if not evaluated
};

struct CGanTrace {
    std::size_t gen_param_count = 0;
    std::size_t disc_param_count = 0;
    double initial_hellinger = 0.0;
    PointCloud initial_samples;
    std::vector<CGanEpochRecord> epochs;
};

namespace detail {

inline constexpr std::uint64_t kStreamCganInit = 10;
inline constexpr std::uint64_t kStreamCganLatent = 11;
inline constexpr std::uint64_t kStreamCganShuffle = 12;
inline constexpr std::uint64_t kStreamCganEvalBase = 2000;

inline double clamp_prob(double p) {
    const double eps = 1e-7;
    return p < eps ? eps : (p > 1.0 - eps ? 1.0 - eps : p);
}

inline PointCloud cgan_generate(const DenseNet& gen, std::size_t count, std::size_t latent_dim,
                                Rng& rng) {
    PointCloud out;
    out.reserve(count);
    std::vector<double> z(latent_dim);
    for (std::size_t i = 0; i < count; ++i) {
        for (double& v : z) v = rng.gaussian();
        const std::vector<double> p = forward(gen, z);
        out.push_back({p[0], p[1]});
    }
    return out;
}

}  // namespace detail

// Alternating SGD on the two BCE losses; one discriminator update and one
// generator update per minibatch. Deterministic per seed.
inline CGanTrace train_cgan(const CGanConfig& config, const PointCloud& dataset,
                            const Histogram2D& target) {
    config.validate();
    if (dataset.empty()) throw DataError("training dataset is empty");

    Rng init_rng(derive_seed(config.seed, detail::kStreamCganInit));
    DenseNet gen = DenseNet::random(config.gen_widths, init_rng);
    DenseNet disc = DenseNet::random(config.disc_widths, init_rng);
    Rng latent_rng(derive_seed(config.seed, detail::kStreamCganLatent));
    Rng shuffle_rng(derive_seed(config.seed, detail::kStreamCganShuffle));

    CGanTrace trace;
    trace.gen_param_count = count_params(gen);
    trace.disc_param_count = count_params(disc);

    auto evaluate = [&](std::size_t epoch_1b) {
        Rng eval_rng(derive_seed(config.seed, detail::kStreamCganEvalBase + epoch_1b));
        PointCloud samples =
            detail::cgan_generate(gen, config.eval_sample_count, config.latent_dim, eval_rng);
        const double dist = hellinger(histogram(samples, target.bins_x), target);
        return std::pair<double, PointCloud>(dist, std::move(samples));
    };
    {
        auto [dist, samples] = evaluate(0);
        trace.initial_hellinger = dist;
        trace.initial_samples = std::move(samples);
    }

    std::vector<std::size_t> order(dataset.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<double> z(config.latent_dim);

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) {
            const std::size_t j =
                static_cast<std::size_t>(shuffle_rng.uniform() * static_cast<double>(i));
            std::swap(order[i - 1], order[j >= i ? i - 1 : j]);
        }

        double loss_d_sum = 0.0, loss_g_sum = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t count = std::min(config.batch_size, order.size() - start);
            const double inv = 1.0 / static_cast<double>(count);

            // Discriminator step: -mean log D(x) - mean log(1 - D(G(z))).
            NetGrads d_grads = NetGrads::zeros_like(disc);
            double loss_d = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                const Point2& p = dataset[order[start + i]];
                const double x[2] = {p.x, p.y};
                ForwardCache cache;
                const double out = detail::clamp_prob(forward(disc, x, &cache)[0]);
                loss_d += -std::log(out) * inv;
                const double d_out[1] = {-inv / out};
                backward(disc, cache, d_out, d_grads);
            }
            for (std::size_t i = 0; i < count; ++i) {
                for (double& v : z) v = latent_rng.gaussian();
                const std::vector<double> fake = forward(gen, z);
                ForwardCache cache;
                const double out = detail::clamp_prob(forward(disc, fake, &cache)[0]);
                loss_d += -std::log(1.0 - out) * inv;
                const double d_out[1] = {inv / (1.0 - out)};
                backward(disc, cache, d_out, d_grads);
            }
            apply_sgd(disc, d_grads, config.learning_rate);

            // Generator step: -mean log D(G(z)), gradient through a frozen
            // discriminator.
            NetGrads g_grads = NetGrads::zeros_like(gen);
            double loss_g = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                for (double& v : z) v = latent_rng.gaussian();
                ForwardCache g_cache;
                const std::vector<double> fake = forward(gen, z, &g_cache);
                ForwardCache d_cache;
                const double out = detail::clamp_prob(forward(disc, fake, &d_cache)[0]);
                loss_g += -std::log(out) * inv;
                const double d_out[1] = {-inv / out};
                NetGrads d_scratch = NetGrads::zeros_like(disc);
                const std::vector<double> d_fake = backward(disc, d_cache, d_out, d_scratch);
                backward(gen, g_cache, d_fake, g_grads);
            }
            apply_sgd(gen, g_grads, config.learning_rate);

            if (!std::isfinite(loss_d) || !std::isfinite(loss_g))
                throw TrainingError("non-finite loss at epoch " + std::to_string(epoch));
            loss_d_sum += loss_d;
            loss_g_sum += loss_g;
            ++batches;
        }

        CGanEpochRecord record;
        record.epoch = epoch;
        record.loss_d = loss_d_sum / static_cast<double>(batches);
        record.loss_g = loss_g_sum / static_cast<double>(batches);
        if (epoch % config.eval_interval == 0 || epoch == config.epochs) {
            auto [dist, samples] = evaluate(epoch);
            record.hellinger = dist;
            record.samples = std::move(samples);
        }
        trace.epochs.push_back(std::move(record));
    }
    return trace;
}

}  // namespace qugan
