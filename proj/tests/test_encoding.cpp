#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qugan/encoding.hpp"
#include "qugan/statevector.hpp"

using namespace qugan;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("fit_scaler finds per-dimension extremes") {
    const std::vector<std::vector<double>> data{{0.0, 0.0}, {2.0, 4.0}};
    const Scaler s = fit_scaler(data);
    REQUIRE(s.mins == std::vector<double>{0.0, 0.0});
    REQUIRE(s.maxes == std::vector<double>{2.0, 4.0});
}

TEST_CASE("a dataset already spanning the unit square gets the identity scaler") {
    const std::vector<std::vector<double>> data{{0.0, 1.0}, {1.0, 0.0}, {0.3, 0.4}};
    const Scaler s = fit_scaler(data);
    for (const auto& p : data) {
        const auto n = s.normalize(p);
        REQUIRE(n[0] == p[0]);
        REQUIRE(n[1] == p[1]);
    }
}

TEST_CASE("scaling an arbitrary-units embedding lands in the unit interval") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dx(-40.0, 55.0), dy(-12.0, 80.0);
    std::vector<std::vector<double>> data;
    for (int i = 0; i < 500; ++i) data.push_back({dx(rng), dy(rng)});
    const Scaler s = fit_scaler(data);

    // brute re-scan of the scaled values
    double lo[2] = {1e300, 1e300}, hi[2] = {-1e300, -1e300};
    for (const auto& p : data) {
        const auto n = s.normalize(p);
        for (int d = 0; d < 2; ++d) {
            REQUIRE(n[d] >= 0.0);
            REQUIRE(n[d] <= 1.0);
            lo[d] = std::min(lo[d], n[d]);
            hi[d] = std::max(hi[d], n[d]);
        }
    }
    for (int d = 0; d < 2; ++d) {
        REQUIRE(lo[d] == 0.0);
        REQUIRE(hi[d] == 1.0);
    }
}

TEST_CASE("degenerate datasets are rejected") {
    REQUIRE_THROWS_AS(fit_scaler({}), DataError);
    const std::vector<std::vector<double>> flat{{1.0, 2.0}, {1.0, 3.0}};
    REQUIRE_THROWS_AS(fit_scaler(flat), DataError);
}

TEST_CASE("angle encoding endpoints") {
    const double zero[1] = {0.0}, one[1] = {1.0}, half[1] = {0.5};
    REQUIRE(encode_point(zero).angles[0] == 0.0);
    REQUIRE(encode_point(one).angles[0] == Catch::Approx(kPi).margin(1e-15));
    REQUIRE(encode_point(half).angles[0] == Catch::Approx(kPi / 2.0).margin(1e-15));
    const double bad[1] = {1.5};
    REQUIRE_THROWS_AS(encode_point(bad), ArgumentError);
    const double neg[1] = {-0.1};
    REQUIRE_THROWS_AS(encode_point(neg), ArgumentError);
}

TEST_CASE("the encoding identity holds exactly") {
    // prob_one(RY(2 asin sqrt(x)) |0>) == x
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double x[1] = {dist(rng)};
        const EncodedPoint e = encode_point(x);
        const StateVector s = apply_gate(zero_state(1), Gate::ry(e.angles[0], 0));
        REQUIRE(std::abs(prob_one(s, 0) - x[0]) < 1e-12);
    }
}

TEST_CASE("encoding angle grows strictly with the value") {
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double x[1] = {i / 100.0};
        const double angle = encode_point(x).angles[0];
        REQUIRE(angle > prev);
        prev = angle;
    }
}

TEST_CASE("decoding inverts the scaler") {
    const Scaler identity{{0.0, 0.0}, {1.0, 1.0}};
    const double mid[2] = {0.5, 0.5};
    REQUIRE(decode_measurements(mid, identity) == std::vector<double>{0.5, 0.5});

    const Scaler s{{0.0, 0.0}, {2.0, 4.0}};
    const double ends[2] = {0.0, 1.0};
    REQUIRE(decode_measurements(ends, s) == std::vector<double>{0.0, 4.0});
}

TEST_CASE("encode/decode round-trip through exact expectations") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> raw(-5.0, 9.0);
    std::vector<std::vector<double>> data;
    for (int i = 0; i < 100; ++i) data.push_back({raw(rng), raw(rng)});
    const Scaler s = fit_scaler(data);
    for (const auto& p : data) {
        const auto normalized = s.normalize(p);
        const EncodedPoint e = encode_point(normalized);
        // exact expectation of each encoded qubit
        std::vector<double> means;
        for (double angle : e.angles) {
            const StateVector q = apply_gate(zero_state(1), Gate::ry(angle, 0));
            means.push_back(prob_one(q, 0));
        }
        const auto decoded = decode_measurements(means, s);
        REQUIRE(std::abs(decoded[0] - p[0]) < 1e-12);
        REQUIRE(std::abs(decoded[1] - p[1]) < 1e-12);
    }
}

TEST_CASE("scaler round-trip is exact for in-range values") {
    const Scaler s{{-3.0, 10.0}, {7.0, 110.0}};
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> d0(-3.0, 7.0), d1(10.0, 110.0);
    for (int i = 0; i < 200; ++i) {
        const std::vector<double> p{d0(rng), d1(rng)};
        const auto back = s.denormalize(s.normalize(p));
        REQUIRE(std::abs(back[0] - p[0]) < 1e-12);
        REQUIRE(std::abs(back[1] - p[1]) < 1e-12);
    }
}

TEST_CASE("out-of-range normalized values clamp with a count") {
    std::size_t clamped = 0;
    REQUIRE(clamp_unit(0.5, &clamped) == 0.5);
    REQUIRE(clamped == 0);
    REQUIRE(clamp_unit(-0.2, &clamped) == 0.0);
    REQUIRE(clamp_unit(1.7, &clamped) == 1.0);
    REQUIRE(clamped == 2);
}

TEST_CASE("decode rejects means outside the unit interval") {
    const Scaler identity{{0.0}, {1.0}};
    const double bad[1] = {1.2};
    REQUIRE_THROWS_AS(decode_measurements(bad, identity), ArgumentError);
}
