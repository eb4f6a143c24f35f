// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <mevscope/matrix/matrix.hpp>

namespace mevscope::learn {

struct ConvBlockConfig {
    std::size_t out_channels{8};
    std::size_t kernel_h{3};
    std::size_t kernel_w{3};
    std::size_t pool_h{2};
    std::size_t pool_w{2};
    double dropout{0.1};

    friend bool operator==(const ConvBlockConfig&, const ConvBlockConfig&) = default;
};

struct ModelConfig {
    std::size_t input_height{16};
    std::size_t input_width{256};
    std::vector<ConvBlockConfig> conv{{8}, {16}, {32}};
    std::array<std::size_t, 3> fc_sizes{128, 64, 16};
    std::size_t head_hidden{16};
    std::size_t label_count{3};
    std::uint64_t seed{1};
    double learning_rate{1e-3};
    double momentum{0.9};
    std::size_t batch_size{32};
    std::size_t epochs{50};

    [[nodiscard]] std::size_t feature_dim() const noexcept { return fc_sizes[2]; }
    //! Throws ConfigError on empty layers, dropout outside [0, 1) or pooling below 1x1.
    void validate() const;

    friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

nlohmann::json to_json(const ModelConfig& config);
ModelConfig model_config_from_json(const nlohmann::json& j);

struct Sample {
    std::vector<double> input;  // row-major input_height x input_width
    std::vector<double> target;  // label_count values in {0, 1}
};

struct Output {
    std::vector<double> features;
    std::vector<double> predictions;  // each in (0, 1)
};

struct ParameterGroup {
    std::string name;
    std::size_t offset;
    std::size_t size;
};

struct TrainReport {
    std::vector<double> epoch_loss;  // mean train-mode sample loss per epoch
};

//! Mean over labels of the squared error.
double mse(std::span<const double> predictions, std::span<const double> targets);

//! Inverted-dropout multipliers: 0 with probability `rate`, otherwise 1 / (1 - rate).
std::vector<double> dropout_mask(std::size_t n, double rate, std::mt19937_64& rng);

//! Conv blocks (convolution, ReLU, dropout, max-pool), three dense layers ending in the
//! linear feature layer, and a one-hidden-layer sigmoid head.
class Model {
  public:
    explicit Model(ModelConfig config);

    [[nodiscard]] const ModelConfig& config() const noexcept { return config_; }
    [[nodiscard]] std::span<double> parameters() noexcept { return params_; }
    [[nodiscard]] std::span<const double> parameters() const noexcept { return params_; }
    [[nodiscard]] const std::vector<ParameterGroup>& groups() const noexcept { return groups_; }

    //! Inference without dropout. Throws ConfigError on an input of the wrong size.
    [[nodiscard]] Output forward(std::span<const double> input) const;
    [[nodiscard]] Output forward(const matrix::BundleMatrix& m) const;
    //! Train-mode pass with dropout masks drawn from `rng`.
    [[nodiscard]] Output forward_train(std::span<const double> input, std::mt19937_64& rng) const;

    //! Loss of one sample; accumulates dLoss/dParameters into `grad` (parameter-sized).
    //! Dropout is active only when `rng` is non-null.
    double accumulate_gradient(std::span<const double> input, std::span<const double> target, std::span<double> grad,
                               std::mt19937_64* rng) const;

    //! Mini-batch SGD with momentum; deterministic for a fixed seed. Throws TrainingError on a
    //! non-finite loss and ConfigError on an empty or inconsistent dataset.
    TrainReport train(std::span<const Sample> data);

    //! Fresh model with `label_count` outputs and all layers re-initialized.
    [[nodiscard]] Model extend_labels(std::size_t label_count) const;

    //! "MEVSCKPT", u32 version, u32 config length, config JSON, u64 count, f64 LE parameters.
    [[nodiscard]] std::string serialize() const;
    static Model deserialize(std::string_view bytes);
    void save(const std::string& path) const;
    static Model load(const std::string& path);

    struct Layout;
    struct Cache;

  private:
    Output run(std::span<const double> input, std::mt19937_64* rng, Cache* cache) const;

    ModelConfig config_;
    std::vector<double> params_;
    std::vector<double> velocity_;
    std::vector<ParameterGroup> groups_;
    std::shared_ptr<const Layout> layout_;
};

//! Worst relative deviation between analytic and central-difference gradients over every
//! parameter. Throws ConfigError when any dropout rate is non-zero.
double grad_check(const Model& model, const Sample& sample, double epsilon = 1e-5);

inline constexpr std::uint32_t kCheckpointVersion = 1;

}  // namespace mevscope::learn
