#pragma once

// Run configuration: one JSON document with `layout`, `data`, `train` and
// `eval` sections (plus `cgan` for the classical baseline). Presets under
// configs/ are instances of this schema.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qugan/classical_gan.hpp"
#include "qugan/data.hpp"
#include "qugan/errors.hpp"
#include "qugan/trainer.hpp"

namespace qugan {

using json = nlohmann::json;

struct DataConfig {
    std::string kind = "bivariate";  // "bivariate" | "csv"
    BivariateParams bivariate;
    std::size_t count = 300;
    std::uint64_t seed = 7;
    std::string csv_path;
    std::optional<std::set<int>> classes;

    void validate() const {
        if (kind != "bivariate" && kind != "csv")
            throw ConfigError("data.kind must be \"bivariate\" or \"csv\", got \"" + kind + "\"");
        if (kind == "bivariate" && count < 1) throw ConfigError("data.count must be >= 1");
        if (kind == "csv" && csv_path.empty()) throw ConfigError("data.csv_path is required");
    }
};

struct EvalConfig {
    std::size_t bins = 16;
    std::size_t interval = 1;
    std::size_t sample_count = 500;

    void validate() const {
        if (bins < 2) throw ConfigError("eval.bins must be >= 2");
        if (interval < 1) throw ConfigError("eval.interval must be >= 1");
        if (sample_count < 1) throw ConfigError("eval.sample_count must be >= 1");
    }
};

struct RunConfig {
    std::size_t dim = 2;
    DataConfig data;
    TrainConfig train;
    EvalConfig eval;
    std::optional<CGanConfig> cgan;

    // Directory the config file was loaded from; relative csv paths resolve
    // against it. Not serialized.
    std::filesystem::path base_dir = ".";

    void validate() const {
        data.validate();
        eval.validate();
        TrainConfig t = train;
        t.dim = dim;
        t.eval_interval = eval.interval;
        t.eval_sample_count = eval.sample_count;
        t.validate();
        if (cgan) cgan->validate();
    }

    // Trainer view of the config (layout/eval sections folded in).
    TrainConfig trainer_config() const {
        TrainConfig t = train;
        t.dim = dim;
        t.eval_interval = eval.interval;
        t.eval_sample_count = eval.sample_count;
        return t;
    }

    std::filesystem::path resolved_csv_path() const {
        std::filesystem::path p = data.csv_path;
        return p.is_absolute() ? p : base_dir / p;
    }
};

namespace detail {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
    }
}

}  // namespace detail

inline RunConfig parse_run_config(const json& j) {
    RunConfig cfg;
    if (j.contains("layout")) cfg.dim = detail::get_or<std::size_t>(j["layout"], "dim", 2);

    if (j.contains("data")) {
        const json& d = j["data"];
        cfg.data.kind = detail::get_or<std::string>(d, "kind", "bivariate");
        const auto mu = detail::get_or<std::vector<double>>(d, "mu", {0.65, 0.45});
        const auto sigma = detail::get_or<std::vector<double>>(d, "sigma", {0.10, 0.05});
        if (mu.size() != 2 || sigma.size() != 2)
            throw ConfigError("data.mu and data.sigma must have 2 entries");
        cfg.data.bivariate = {mu[0], sigma[0], mu[1], sigma[1]};
        cfg.data.count = detail::get_or<std::size_t>(d, "count", 300);
        cfg.data.seed = detail::get_or<std::uint64_t>(d, "seed", 7);
        cfg.data.csv_path = detail::get_or<std::string>(d, "csv_path", "");
        if (d.contains("classes")) {
            const auto list = detail::get_or<std::vector<int>>(d, "classes", {});
            cfg.data.classes = std::set<int>(list.begin(), list.end());
        }
    }

    if (j.contains("train")) {
        const json& t = j["train"];
        TrainConfig& tc = cfg.train;
        tc.learning_rate = detail::get_or<double>(t, "learning_rate", tc.learning_rate);
        tc.epochs = detail::get_or<std::size_t>(t, "epochs", tc.epochs);
        tc.disc_on_gen_count = detail::get_or<std::size_t>(t, "disc_on_gen_count", tc.disc_on_gen_count);
        tc.gen_on_disc_count = detail::get_or<std::size_t>(t, "gen_on_disc_count", tc.gen_on_disc_count);
        tc.shots = detail::get_or<std::size_t>(t, "shots", tc.shots);
        tc.seed = detail::get_or<std::uint64_t>(t, "seed", tc.seed);
        tc.shuffle = detail::get_or<bool>(t, "shuffle", tc.shuffle);
        tc.normalized_shift = detail::get_or<bool>(t, "normalized_shift", tc.normalized_shift);
        tc.stochastic_gradients =
            detail::get_or<bool>(t, "stochastic_gradients", tc.stochastic_gradients);
    }

    if (j.contains("eval")) {
        const json& e = j["eval"];
        cfg.eval.bins = detail::get_or<std::size_t>(e, "bins", cfg.eval.bins);
        cfg.eval.interval = detail::get_or<std::size_t>(e, "interval", cfg.eval.interval);
        cfg.eval.sample_count = detail::get_or<std::size_t>(e, "sample_count", cfg.eval.sample_count);
    }

    if (j.contains("cgan")) {
        const json& c = j["cgan"];
        CGanConfig gc;
        gc.gen_widths = detail::get_or<std::vector<std::size_t>>(c, "gen_widths", {2, 6, 2});
        gc.disc_widths = detail::get_or<std::vector<std::size_t>>(c, "disc_widths", {2, 8, 1});
        gc.latent_dim = detail::get_or<std::size_t>(c, "latent_dim", 2);
        gc.learning_rate = detail::get_or<double>(c, "learning_rate", 0.1);
        gc.epochs = detail::get_or<std::size_t>(c, "epochs", 50);
        gc.batch_size = detail::get_or<std::size_t>(c, "batch_size", 16);
        gc.seed = detail::get_or<std::uint64_t>(c, "seed", cfg.train.seed);
        gc.eval_interval = cfg.eval.interval;
        gc.eval_sample_count = cfg.eval.sample_count;
        cfg.cgan = std::move(gc);
    }

    cfg.validate();
    return cfg;
}

// Canonical serialization; parse_run_config(to_json(cfg)) reproduces the
// run exactly.
inline json run_config_to_json(const RunConfig& cfg) {
    json j;
    j["layout"]["dim"] = cfg.dim;
    json d;
    d["kind"] = cfg.data.kind;
    d["mu"] = {cfg.data.bivariate.mu_x, cfg.data.bivariate.mu_y};
    d["sigma"] = {cfg.data.bivariate.sigma_x, cfg.data.bivariate.sigma_y};
    d["count"] = cfg.data.count;
    d["seed"] = cfg.data.seed;
    if (!cfg.data.csv_path.empty()) d["csv_path"] = cfg.data.csv_path;
    if (cfg.data.classes) d["classes"] = std::vector<int>(cfg.data.classes->begin(), cfg.data.classes->end());
    j["data"] = std::move(d);
    json t;
    t["learning_rate"] = cfg.train.learning_rate;
    t["epochs"] = cfg.train.epochs;
    t["disc_on_gen_count"] = cfg.train.disc_on_gen_count;
    t["gen_on_disc_count"] = cfg.train.gen_on_disc_count;
    t["shots"] = cfg.train.shots;
    t["seed"] = cfg.train.seed;
    t["shuffle"] = cfg.train.shuffle;
    t["normalized_shift"] = cfg.train.normalized_shift;
    t["stochastic_gradients"] = cfg.train.stochastic_gradients;
    j["train"] = std::move(t);
    j["eval"] = {{"bins", cfg.eval.bins}, {"interval", cfg.eval.interval},
                 {"sample_count", cfg.eval.sample_count}};
    if (cfg.cgan) {
        json c;
        c["gen_widths"] = cfg.cgan->gen_widths;
        c["disc_widths"] = cfg.cgan->disc_widths;
        c["latent_dim"] = cfg.cgan->latent_dim;
        c["learning_rate"] = cfg.cgan->learning_rate;
        c["epochs"] = cfg.cgan->epochs;
        c["batch_size"] = cfg.cgan->batch_size;
        c["seed"] = cfg.cgan->seed;
        j["cgan"] = std::move(c);
    }
    return j;
}

// Loads and parses a config file. JSON syntax errors surface as ParseError
// with the parser's line/column message; semantic problems as ConfigError.
inline RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config ") + path.string() + ": " + e.what(), 0);
    }
    RunConfig cfg = parse_run_config(j);
    cfg.base_dir = path.has_parent_path() ? path.parent_path() : ".";
    return cfg;
}

}  // namespace qugan
