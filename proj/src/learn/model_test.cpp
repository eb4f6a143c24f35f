// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/learn/model.hpp>

#include <cmath>
#include <numeric>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <mevscope/common/errors.hpp>

#include "support/families.hpp"

namespace mevscope::learn {

namespace {

    ModelConfig tiny_config(std::size_t labels = 2) {
        ModelConfig c;
        c.input_height = 12;
        c.input_width = 8;
        c.conv = {{4, 3, 3, 2, 2, 0.0}};
        c.fc_sizes = {8, 6, 4};
        c.head_hidden = 5;
        c.label_count = labels;
        return c;
    }

    std::vector<double> random_input(std::mt19937_64& rng, std::size_t n) {
        std::uniform_real_distribution<double> u{-1.0, 1.0};
        std::vector<double> v(n);
        for (auto& x : v) x = u(rng);
        return v;
    }

    ModelConfig random_small_config(std::mt19937_64& rng) {
        const auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>{lo, hi}(rng); };
        ModelConfig c;
        c.input_height = pick(12, 16);
        c.input_width = pick(8, 12);
        c.conv.clear();
        const auto blocks = pick(1, 2);
        for (std::size_t b = 0; b < blocks; ++b) {
            c.conv.push_back({pick(2, 4), pick(1, 3), pick(1, 3), pick(1, 2), pick(1, 2), 0.0});
        }
        c.fc_sizes = {pick(4, 10), pick(3, 8), pick(2, 6)};
        c.head_hidden = pick(2, 6);
        c.label_count = pick(1, 4);
        c.seed = rng();
        return c;
    }

    std::vector<Sample> family_samples(std::size_t per_family, std::size_t height, std::size_t width) {
        std::mt19937_64 rng{4242};
        std::vector<ingest::BundleActions> bundles;
        std::vector<std::vector<double>> targets;
        for (std::size_t i = 0; i < per_family; ++i) {
            bundles.push_back(test::planted_bundle(test::Family::kSandwich, rng, 1000 + i, 0));
            targets.push_back({1.0, 0.0});
            bundles.push_back(test::planted_bundle(test::Family::kLoanArbitrage, rng, 1000 + i, 1));
            targets.push_back({0.0, 1.0});
        }
        const auto ranking = matrix::AssetRanking::from_corpus(bundles);
        std::vector<Sample> samples;
        for (std::size_t i = 0; i < bundles.size(); ++i) {
            samples.push_back({matrix::encode_bundle(bundles[i], {height, width}, ranking).cells, targets[i]});
        }
        return samples;
    }

}  // namespace

TEST_CASE("model config validates and round-trips through json", "[learn]") {
    ModelConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(model_config_from_json(to_json(c)) == c);
    CHECK(c.feature_dim() == 16);

    auto bad = c;
    bad.label_count = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = c;
    bad.conv[0].dropout = 1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = c;
    bad.input_height = 4;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK_THROWS_AS(model_config_from_json(nlohmann::json{{"input_height", 16}}), SchemaError);
}

TEST_CASE("forward produces features and predictions of the configured sizes", "[learn]") {
    ModelConfig c;
    c.input_width = 64;
    const Model model{c};
    const std::vector<double> input(16 * 64, -1.0);
    const auto out = model.forward(input);
    CHECK(out.features.size() == 16);
    CHECK(out.predictions.size() == 3);
    for (const double p : out.predictions) CHECK((p > 0.0 && p < 1.0));
    const Model again{c};
    CHECK(again.forward(input).predictions == out.predictions);
    CHECK(again.forward(input).features == out.features);

    CHECK_THROWS_AS(model.forward(std::vector<double>(10, 0.0)), ConfigError);
    matrix::BundleMatrix wrong;
    wrong.height = 16;
    wrong.width = 32;
    wrong.cells.assign(16 * 32, -1.0);
    CHECK_THROWS_AS(model.forward(wrong), ConfigError);
}

TEST_CASE("distinct inputs give distinct features", "[learn]") {
    auto c = tiny_config();
    const Model model{c};
    std::mt19937_64 rng{5};
    std::size_t distinct = 0;
    for (int i = 0; i < 50; ++i) {
        const auto a = model.forward(random_input(rng, 96)).features;
        const auto b = model.forward(random_input(rng, 96)).features;
        if (a != b) ++distinct;
    }
    CHECK(distinct >= 48);
}

TEST_CASE("mse matches an independent recomputation", "[learn]") {
    CHECK(mse(std::vector{0.5, 0.5, 0.5}, std::vector{0.5, 0.5, 0.5}) == 0.0);
    CHECK(mse(std::vector{1.0 - 1e-9, 1e-9}, std::vector{0.0, 1.0}) == Catch::Approx(1.0));
    std::mt19937_64 rng{9};
    std::uniform_real_distribution<double> u{0.0, 1.0};
    for (int i = 0; i < 100; ++i) {
        std::vector<double> p(7), t(7);
        for (auto& x : p) x = u(rng);
        for (auto& x : t) x = u(rng) < 0.5 ? 0.0 : 1.0;
        const long double reference =
            std::inner_product(p.begin(), p.end(), t.begin(), 0.0L, std::plus<>{}, [](double a, double b) {
                return static_cast<long double>(a - b) * static_cast<long double>(a - b);
            }) /
            7.0L;
        CHECK(mse(p, t) == Catch::Approx(static_cast<double>(reference)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(mse(std::vector{1.0}, std::vector{1.0, 0.0}), ConfigError);
}

TEST_CASE("analytic gradients match finite differences", "[learn][gradient]") {
    std::mt19937_64 rng{31337};
    for (int i = 0; i < 5; ++i) {
        const auto c = random_small_config(rng);
        const Model model{c};
        Sample s{random_input(rng, c.input_height * c.input_width), std::vector<double>(c.label_count)};
        for (auto& t : s.target) t = static_cast<double>(rng() % 2);
        const double deviation = grad_check(model, s);
        INFO("config " << to_json(c).dump());
        CHECK(deviation < 1e-4);
    }
}

TEST_CASE("gradient check refuses active dropout", "[learn][gradient]") {
    auto c = tiny_config();
    c.conv[0].dropout = 0.2;
    const Model model{c};
    CHECK_THROWS_AS(grad_check(model, {std::vector<double>(96, 0.0), {0.0, 1.0}}), ConfigError);
}

TEST_CASE("zero weights and zero input give zero weight gradients", "[learn][gradient]") {
    Model model{tiny_config()};
    std::fill(model.parameters().begin(), model.parameters().end(), 0.0);
    const Sample s{std::vector<double>(96, 0.0), {1.0, 0.0}};
    std::vector<double> grad(model.parameters().size(), 0.0);
    model.accumulate_gradient(s.input, s.target, grad, nullptr);
    for (const auto& g : model.groups()) {
        if (!g.name.ends_with(".weight")) continue;
        for (std::size_t k = 0; k < g.size; ++k) CHECK(grad[g.offset + k] == 0.0);
    }
    CHECK(grad_check(model, s) < 1e-4);
}

TEST_CASE("dropout zeroes activations at the configured rate", "[learn][property]") {
    std::mt19937_64 rng{77};
    for (const double p : {0.1, 0.3, 0.5}) {
        constexpr std::size_t n = 200000;
        const auto mask = dropout_mask(n, p, rng);
        const auto zeros = static_cast<double>(std::count(mask.begin(), mask.end(), 0.0));
        const double sigma = std::sqrt(p * (1.0 - p) / n);
        CHECK(std::fabs(zeros / n - p) < 3.0 * sigma);
        for (const double m : mask) CHECK((m == 0.0 || m == Catch::Approx(1.0 / (1.0 - p))));
    }
    CHECK(dropout_mask(5, 0.0, rng) == std::vector<double>(5, 1.0));
}

TEST_CASE("train-mode forward applies dropout only when asked", "[learn]") {
    auto c = tiny_config();
    c.conv[0].dropout = 0.5;
    const Model model{c};
    std::mt19937_64 rng{3};
    const auto input = random_input(rng, 96);
    CHECK(model.forward(input).features == model.forward(input).features);
    std::size_t differs = 0;
    for (int i = 0; i < 20; ++i) {
        if (model.forward_train(input, rng).features != model.forward(input).features) ++differs;
    }
    CHECK(differs > 0);
}

TEST_CASE("training rejects empty or mismatched data", "[learn]") {
    Model model{tiny_config()};
    CHECK_THROWS_AS(model.train({}), ConfigError);
    const std::vector<Sample> bad{{std::vector<double>(96, 0.0), {1.0}}};
    CHECK_THROWS_AS(model.train(bad), ConfigError);
}

TEST_CASE("training on one repeated sample lowers the loss", "[learn]") {
    auto c = tiny_config();
    c.epochs = 30;
    c.batch_size = 5;
    c.learning_rate = 0.05;
    Model model{c};
    std::mt19937_64 rng{8};
    const std::vector<Sample> data(10, Sample{random_input(rng, 96), {1.0, 0.0}});
    const auto report = model.train(data);
    REQUIRE(report.epoch_loss.size() == 30);
    for (std::size_t e = 2; e < report.epoch_loss.size(); ++e) CHECK(report.epoch_loss[e] <= report.epoch_loss[e - 1] + 1e-9);
    CHECK(report.epoch_loss.back() < report.epoch_loss.front());
}

TEST_CASE("training is deterministic for a fixed seed", "[learn]") {
    auto c = tiny_config();
    c.conv[0].dropout = 0.2;
    c.epochs = 5;
    std::mt19937_64 rng{12};
    std::vector<Sample> data;
    for (int i = 0; i < 20; ++i) data.push_back({random_input(rng, 96), {static_cast<double>(i % 2), 1.0}});
    Model a{c};
    Model b{c};
    CHECK(a.train(data).epoch_loss == b.train(data).epoch_loss);
    CHECK(std::equal(a.parameters().begin(), a.parameters().end(), b.parameters().begin()));
}

TEST_CASE("divergence raises a training error with the epoch", "[learn]") {
    auto c = tiny_config();
    c.learning_rate = 1e300;
    c.epochs = 10;
    Model model{c};
    std::mt19937_64 rng{1};
    std::vector<Sample> data;
    for (int i = 0; i < 8; ++i) data.push_back({random_input(rng, 96), {static_cast<double>(i % 2), 0.0}});
    try {
        model.train(data);
        FAIL("expected divergence");
    } catch (const TrainingError& e) {
        CHECK(e.epoch() < 10);
    }
}

TEST_CASE("two separable bundle families are learned exactly", "[learn][slow]") {
    ModelConfig c;
    c.input_width = 64;
    c.label_count = 2;
    c.seed = 7;
    c.epochs = 50;
    const auto samples = family_samples(100, c.input_height, c.input_width);
    REQUIRE(samples.size() == 200);
    Model model{c};
    model.train(samples);
    std::size_t correct = 0;
    for (const auto& s : samples) {
        const auto p = model.forward(s.input).predictions;
        if ((p[0] >= 0.5) == (s.target[0] == 1.0) && (p[1] >= 0.5) == (s.target[1] == 1.0)) ++correct;
    }
    CHECK(correct == samples.size());
}

TEST_CASE("extending labels re-initializes a wider head", "[learn]") {
    const Model model{tiny_config(3)};
    const auto wider = model.extend_labels(4);
    CHECK(wider.config().label_count == 4);
    CHECK(wider.forward(std::vector<double>(96, 0.5)).predictions.size() == 4);
    const auto same = model.extend_labels(3);
    CHECK(same.config() == model.config());
    CHECK(std::equal(same.parameters().begin(), same.parameters().end(), model.parameters().begin()));
    CHECK_THROWS_AS(model.extend_labels(2), ConfigError);
}

TEST_CASE("checkpoints round-trip and reject damage", "[learn]") {
    auto c = tiny_config();
    c.seed = 99;
    const Model model{c};
    const auto bytes = model.serialize();
    CHECK(bytes.substr(0, 8) == "MEVSCKPT");
    const auto back = Model::deserialize(bytes);
    CHECK(back.config() == model.config());
    CHECK(std::equal(back.parameters().begin(), back.parameters().end(), model.parameters().begin()));

    CHECK_THROWS_AS(Model::deserialize("NOTACKPT"), ParseError);
    CHECK_THROWS_AS(Model::deserialize(bytes.substr(0, bytes.size() - 3)), ParseError);
    auto versioned = bytes;
    versioned[8] = 9;
    CHECK_THROWS_AS(Model::deserialize(versioned), ParseError);
    CHECK_THROWS_AS(Model::deserialize(bytes + "x"), ParseError);
}

}  // namespace mevscope::learn
