#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qugan/classical_gan.hpp"
#include "qugan/data.hpp"

using namespace qugan;

namespace {

// Summed per-output binary cross-entropy against fixed targets.
double bce_loss(const DenseNet& net, std::span<const double> input,
                std::span<const double> targets) {
    const std::vector<double> out = forward(net, input);
    double loss = 0.0;
    for (std::size_t j = 0; j < out.size(); ++j)
        loss += -(targets[j] * std::log(out[j]) + (1.0 - targets[j]) * std::log(1.0 - out[j]));
    return loss;
}

}  // namespace

TEST_CASE("parameter counting") {
    REQUIRE(count_params(DenseNet::zeros({2, 1})) == 3);
    REQUIRE(count_params(DenseNet::zeros({1, 1})) == 2);
    REQUIRE(count_params(DenseNet::zeros({1, 2})) == 4);      // smallest preset generator
    REQUIRE(count_params(DenseNet::zeros({2, 6, 2})) == 32);
    REQUIRE(count_params(DenseNet::zeros({2, 22, 8, 2})) == 268);
}

TEST_CASE("zero weights give the indifferent discriminator") {
    const DenseNet disc = DenseNet::zeros({2, 1});
    for (double x : {0.0, 0.25, 0.9}) {
        const double in[2] = {x, 1.0 - x};
        const std::vector<double> out = forward(disc, in);
        REQUIRE(out[0] == 0.5);
        const double t[1] = {1.0};
        REQUIRE(bce_loss(disc, in, t) == Catch::Approx(std::log(2.0)).margin(1e-15));
    }
}

TEST_CASE("forward validates the input width") {
    const DenseNet net = DenseNet::zeros({2, 1});
    const double bad[3] = {1.0, 2.0, 3.0};
    REQUIRE_THROWS_AS(forward(net, bad), ArgumentError);
}

TEST_CASE("backprop matches central finite differences") {
    std::mt19937_64 seeder(42);
    int cases = 0;
    while (cases < 100) {
        Rng rng(seeder());
        const std::vector<std::vector<std::size_t>> shapes{
            {2, 1}, {2, 3, 1}, {1, 4, 2}, {2, 5, 3, 1}, {3, 2, 2}};
        const auto& widths = shapes[cases % shapes.size()];
        DenseNet net = DenseNet::random(widths, rng);
        for (auto& b : net.biases)
            for (double& v : b) v = rng.gaussian() * 0.3;

        std::vector<double> input(widths.front());
        for (double& v : input) v = rng.uniform();
        std::vector<double> targets(widths.back());
        for (double& v : targets) v = rng.uniform() < 0.5 ? 0.0 : 1.0;

        // analytic gradients
        ForwardCache cache;
        const std::vector<double> out = forward(net, input, &cache);
        std::vector<double> d_out(out.size());
        for (std::size_t j = 0; j < out.size(); ++j)
            d_out[j] = -targets[j] / out[j] + (1.0 - targets[j]) / (1.0 - out[j]);
        NetGrads grads = NetGrads::zeros_like(net);
        backward(net, cache, d_out, grads);

        // numeric check across every weight and bias
        const double step = 1e-5;
        auto check = [&](double& slot, double analytic) {
            const double keep = slot;
            slot = keep + step;
            const double up = bce_loss(net, input, targets);
            slot = keep - step;
            const double down = bce_loss(net, input, targets);
            slot = keep;
            const double numeric = (up - down) / (2.0 * step);
            const double denom = std::max({std::abs(numeric), std::abs(analytic), 1e-6});
            REQUIRE(std::abs(numeric - analytic) / denom < 1e-4);
        };
        for (std::size_t l = 0; l < net.layers(); ++l) {
            for (std::size_t i = 0; i < net.weights[l].size(); ++i)
                check(net.weights[l][i], grads.weights[l][i]);
            for (std::size_t i = 0; i < net.biases[l].size(); ++i)
                check(net.biases[l][i], grads.biases[l][i]);
        }
        ++cases;
    }
}

TEST_CASE("cgan training is deterministic per seed") {
    CGanConfig config;
    config.gen_widths = {2, 6, 2};
    config.disc_widths = {2, 8, 1};
    config.latent_dim = 2;
    config.epochs = 3;
    config.eval_sample_count = 60;
    config.seed = 2024;

    const PointCloud data = sample_bivariate(BivariateParams{}, 64, 11);
    const Histogram2D target = histogram(data, 16);

    const CGanTrace a = train_cgan(config, data, target);
    const CGanTrace b = train_cgan(config, data, target);
    REQUIRE(a.initial_hellinger == b.initial_hellinger);
    REQUIRE(a.epochs.size() == 3);
    for (std::size_t e = 0; e < 3; ++e) {
        REQUIRE(a.epochs[e].loss_d == b.epochs[e].loss_d);
        REQUIRE(a.epochs[e].loss_g == b.epochs[e].loss_g);
        REQUIRE(a.epochs[e].hellinger == b.epochs[e].hellinger);
    }
    REQUIRE(a.gen_param_count == 32);
    REQUIRE(a.disc_param_count == 33);
}

TEST_CASE("cgan losses stay finite over a longer run") {
    CGanConfig config;
    config.gen_widths = {1, 2};
    config.disc_widths = {2, 1};
    config.latent_dim = 1;
    config.epochs = 25;
    config.learning_rate = 0.3;
    config.eval_sample_count = 100;
    config.seed = 5;

    const PointCloud data = sample_bivariate(BivariateParams{}, 128, 3);
    const Histogram2D target = histogram(data, 16);
    const CGanTrace trace = train_cgan(config, data, target);
    for (const CGanEpochRecord& r : trace.epochs) {
        REQUIRE(std::isfinite(r.loss_d));
        REQUIRE(std::isfinite(r.loss_g));
    }
    REQUIRE(std::isfinite(trace.epochs.back().hellinger));
    for (const Point2& p : trace.epochs.back().samples) {
        REQUIRE(p.x > 0.0);
        REQUIRE(p.x < 1.0);
        REQUIRE(p.y > 0.0);
        REQUIRE(p.y < 1.0);
    }
}

TEST_CASE("cgan config validation") {
    CGanConfig config;
    config.gen_widths = {2, 3};  // wrong output width
    config.disc_widths = {2, 1};
    REQUIRE_THROWS_AS(config.validate(), ConfigError);
    config.gen_widths = {2, 2};
    config.disc_widths = {2, 2};
    REQUIRE_THROWS_AS(config.validate(), ConfigError);
    config.disc_widths = {2, 1};
    config.latent_dim = 3;
    REQUIRE_THROWS_AS(config.validate(), ConfigError);
    config.latent_dim = 2;
    REQUIRE_NOTHROW(config.validate());
}
