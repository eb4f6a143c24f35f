// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/learn/model.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/files.hpp>
#include <mevscope/simd/kernels.hpp>

namespace mevscope::learn {

using nlohmann::json;

namespace {

    struct ConvLayer {
        std::size_t in_c, out_c, kh, kw, h, w, pad_t, pad_l, ph, pw, oh, ow;
        double dropout;
        std::size_t w_off, b_off;
    };

    struct DenseLayer {
        std::size_t in, out, w_off, b_off;
        bool relu;
    };

    constexpr std::size_t kFeatureLayer = 2;

    double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

    double sigmoid(double z) {
        constexpr double lo = 0x1.0p-53;
        constexpr double hi = 1.0 - 0x1.0p-53;
        return std::clamp(1.0 / (1.0 + std::exp(-z)), lo, hi);
    }

    std::size_t positive(const json& j, const char* key) {
        const auto v = j.at(key).get<std::int64_t>();
        if (v < 0) throw SchemaError(std::string{"model config: "} + key + " must be non-negative");
        return static_cast<std::size_t>(v);
    }

}  // namespace

struct Model::Layout {
    std::vector<ConvLayer> conv;
    std::vector<DenseLayer> dense;  // fc0, fc1, fc2 (features), head0, head1 (logits)
    std::size_t total{0};
};

struct Model::Cache {
    struct Conv {
        std::vector<double> input, pre, mask;
        std::vector<std::size_t> argmax;
    };
    struct Dense {
        std::vector<double> input, pre;
    };
    std::vector<Conv> conv;
    std::vector<Dense> dense;
    std::vector<double> predictions;
};

void ModelConfig::validate() const {
    if (input_height == 0 || input_width == 0) throw ConfigError("model input must be non-empty");
    if (conv.empty()) throw ConfigError("model needs at least one conv block");
    std::size_t h = input_height;
    std::size_t w = input_width;
    for (std::size_t i = 0; i < conv.size(); ++i) {
        const auto& c = conv[i];
        const auto where = "conv block " + std::to_string(i);
        if (c.out_channels == 0 || c.kernel_h == 0 || c.kernel_w == 0 || c.pool_h == 0 || c.pool_w == 0) {
            throw ConfigError(where + ": channels, kernel and pool sizes must be positive");
        }
        if (!(c.dropout >= 0.0 && c.dropout < 1.0)) throw ConfigError(where + ": dropout must lie in [0, 1)");
        h /= c.pool_h;
        w /= c.pool_w;
        if (h == 0 || w == 0) throw ConfigError(where + ": pooling shrinks the feature map below 1x1");
    }
    if (std::any_of(fc_sizes.begin(), fc_sizes.end(), [](std::size_t s) { return s == 0; }) || head_hidden == 0) {
        throw ConfigError("dense layer sizes must be positive");
    }
    if (label_count == 0) throw ConfigError("label_count must be at least 1");
    if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
    if (!(momentum >= 0.0 && momentum < 1.0)) throw ConfigError("momentum must lie in [0, 1)");
    if (batch_size == 0) throw ConfigError("batch size must be positive");
}

json to_json(const ModelConfig& config) {
    json conv = json::array();
    for (const auto& c : config.conv) {
        conv.push_back({{"out_channels", c.out_channels},
                        {"kernel", {c.kernel_h, c.kernel_w}},
                        {"pool", {c.pool_h, c.pool_w}},
                        {"dropout", c.dropout}});
    }
    return {{"input_height", config.input_height},
            {"input_width", config.input_width},
            {"conv", conv},
            {"fc_sizes", config.fc_sizes},
            {"head_hidden", config.head_hidden},
            {"label_count", config.label_count},
            {"seed", config.seed},
            {"learning_rate", config.learning_rate},
            {"momentum", config.momentum},
            {"batch_size", config.batch_size},
            {"epochs", config.epochs}};
}

ModelConfig model_config_from_json(const json& j) {
    try {
        ModelConfig c;
        c.input_height = positive(j, "input_height");
        c.input_width = positive(j, "input_width");
        c.conv.clear();
        for (const auto& b : j.at("conv")) {
            ConvBlockConfig block;
            block.out_channels = positive(b, "out_channels");
            block.kernel_h = b.at("kernel").at(0).get<std::size_t>();
            block.kernel_w = b.at("kernel").at(1).get<std::size_t>();
            block.pool_h = b.at("pool").at(0).get<std::size_t>();
            block.pool_w = b.at("pool").at(1).get<std::size_t>();
            block.dropout = b.at("dropout").get<double>();
            c.conv.push_back(block);
        }
        const auto& fc = j.at("fc_sizes");
        if (!fc.is_array() || fc.size() != 3) throw SchemaError("model config: fc_sizes must hold three sizes");
        for (std::size_t i = 0; i < 3; ++i) c.fc_sizes[i] = fc.at(i).get<std::size_t>();
        c.head_hidden = positive(j, "head_hidden");
        c.label_count = positive(j, "label_count");
        c.seed = j.at("seed").get<std::uint64_t>();
        c.learning_rate = j.at("learning_rate").get<double>();
        c.momentum = j.at("momentum").get<double>();
        c.batch_size = positive(j, "batch_size");
        c.epochs = positive(j, "epochs");
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw SchemaError(std::string{"model config: "} + e.what());
    }
}

double mse(std::span<const double> predictions, std::span<const double> targets) {
    if (predictions.size() != targets.size() || predictions.empty()) {
        throw ConfigError("mse needs equally sized non-empty vectors");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double d = predictions[i] - targets[i];
        s += d * d;
    }
    return s / static_cast<double>(predictions.size());
}

std::vector<double> dropout_mask(std::size_t n, double rate, std::mt19937_64& rng) {
    std::vector<double> mask(n, 1.0);
    if (rate <= 0.0) return mask;
    const double keep = 1.0 / (1.0 - rate);
    for (auto& m : mask) m = uniform01(rng) < rate ? 0.0 : keep;
    return mask;
}

Model::Model(ModelConfig config) : config_{std::move(config)} {
    config_.validate();
    auto layout = std::make_shared<Layout>();
    std::size_t offset = 0;
    const auto add_group = [&](std::string name, std::size_t size) {
        groups_.push_back({std::move(name), offset, size});
        offset += size;
        return offset - size;
    };

    std::size_t c = 1;
    std::size_t h = config_.input_height;
    std::size_t w = config_.input_width;
    for (std::size_t i = 0; i < config_.conv.size(); ++i) {
        const auto& b = config_.conv[i];
        ConvLayer L{c, b.out_channels, b.kernel_h, b.kernel_w, h, w, (b.kernel_h - 1) / 2, (b.kernel_w - 1) / 2,
                    b.pool_h, b.pool_w, h / b.pool_h, w / b.pool_w, b.dropout, 0, 0};
        L.w_off = add_group("conv" + std::to_string(i) + ".weight", L.out_c * L.in_c * L.kh * L.kw);
        L.b_off = add_group("conv" + std::to_string(i) + ".bias", L.out_c);
        layout->conv.push_back(L);
        c = L.out_c;
        h = L.oh;
        w = L.ow;
    }
    std::size_t in = c * h * w;
    const std::array<std::size_t, 5> sizes{config_.fc_sizes[0], config_.fc_sizes[1], config_.fc_sizes[2], config_.head_hidden,
                                           config_.label_count};
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const auto name = i < 3 ? "fc" + std::to_string(i) : "head" + std::to_string(i - 3);
        DenseLayer L{in, sizes[i], 0, 0, i != kFeatureLayer && i != sizes.size() - 1};
        L.w_off = add_group(name + ".weight", L.out * L.in);
        L.b_off = add_group(name + ".bias", L.out);
        layout->dense.push_back(L);
        in = sizes[i];
    }
    layout->total = offset;

    params_.assign(offset, 0.0);
    velocity_.assign(offset, 0.0);
    std::mt19937_64 rng{config_.seed};
    const auto init = [&](std::size_t off, std::size_t count, double stddev) {
        std::normal_distribution<double> normal{0.0, stddev};
        for (std::size_t k = 0; k < count; ++k) params_[off + k] = normal(rng);
    };
    constexpr double relu_bias = 0.01;
    for (const auto& L : layout->conv) {
        init(L.w_off, L.out_c * L.in_c * L.kh * L.kw, std::sqrt(2.0 / (L.in_c * L.kh * L.kw)));
        std::fill_n(params_.begin() + L.b_off, L.out_c, relu_bias);
    }
    for (const auto& L : layout->dense) {
        init(L.w_off, L.out * L.in, std::sqrt((L.relu ? 2.0 : 1.0) / L.in));
        if (L.relu) std::fill_n(params_.begin() + L.b_off, L.out, relu_bias);
    }
    layout_ = std::move(layout);
}

Output Model::run(std::span<const double> input, std::mt19937_64* rng, Cache* cache) const {
    if (input.size() != config_.input_height * config_.input_width) {
        throw ConfigError("model input has " + std::to_string(input.size()) + " cells, expected " +
                          std::to_string(config_.input_height * config_.input_width));
    }
    const auto& k = simd::active();
    const double* p = params_.data();
    std::vector<double> x(input.begin(), input.end());
    if (cache != nullptr) {
        cache->conv.assign(layout_->conv.size(), {});
        cache->dense.assign(layout_->dense.size(), {});
    }

    for (std::size_t li = 0; li < layout_->conv.size(); ++li) {
        const auto& L = layout_->conv[li];
        const std::size_t plane = L.h * L.w;
        std::vector<double> pre(L.out_c * plane);
        for (std::size_t o = 0; o < L.out_c; ++o) {
            double* out = pre.data() + o * plane;
            std::fill(out, out + plane, p[L.b_off + o]);
            for (std::size_t i = 0; i < L.in_c; ++i) {
                const double* src = x.data() + i * plane;
                for (std::size_t dy = 0; dy < L.kh; ++dy) {
                    for (std::size_t dx = 0; dx < L.kw; ++dx) {
                        const double wv = p[L.w_off + ((o * L.in_c + i) * L.kh + dy) * L.kw + dx];
                        const std::size_t x0 = dx < L.pad_l ? L.pad_l - dx : 0;
                        const std::size_t x1 = std::min(L.w, L.w + L.pad_l - dx);
                        if (x0 >= x1) continue;
                        for (std::size_t y = 0; y < L.h; ++y) {
                            const auto sy = static_cast<std::ptrdiff_t>(y + dy) - static_cast<std::ptrdiff_t>(L.pad_t);
                            if (sy < 0 || sy >= static_cast<std::ptrdiff_t>(L.h)) continue;
                            k.axpy(wv, src + static_cast<std::size_t>(sy) * L.w + x0 + dx - L.pad_l, out + y * L.w + x0, x1 - x0);
                        }
                    }
                }
            }
        }
        std::vector<double> act(pre.size());
        std::transform(pre.begin(), pre.end(), act.begin(), [](double v) { return v > 0.0 ? v : 0.0; });
        std::vector<double> mask;
        if (rng != nullptr && L.dropout > 0.0) {
            mask = dropout_mask(act.size(), L.dropout, *rng);
            for (std::size_t n = 0; n < act.size(); ++n) act[n] *= mask[n];
        }
        std::vector<double> pooled(L.out_c * L.oh * L.ow);
        std::vector<std::size_t> argmax(pooled.size());
        for (std::size_t o = 0; o < L.out_c; ++o) {
            for (std::size_t oy = 0; oy < L.oh; ++oy) {
                for (std::size_t ox = 0; ox < L.ow; ++ox) {
                    std::size_t best = o * plane + oy * L.ph * L.w + ox * L.pw;
                    for (std::size_t py = 0; py < L.ph; ++py) {
                        for (std::size_t px = 0; px < L.pw; ++px) {
                            const std::size_t at = o * plane + (oy * L.ph + py) * L.w + ox * L.pw + px;
                            if (act[at] > act[best]) best = at;
                        }
                    }
                    const std::size_t to = (o * L.oh + oy) * L.ow + ox;
                    pooled[to] = act[best];
                    argmax[to] = best;
                }
            }
        }
        if (cache != nullptr) {
            auto& cc = cache->conv[li];
            cc.input = std::move(x);
            cc.pre = std::move(pre);
            cc.mask = std::move(mask);
            cc.argmax = std::move(argmax);
        }
        x = std::move(pooled);
    }

    Output result;
    for (std::size_t li = 0; li < layout_->dense.size(); ++li) {
        const auto& L = layout_->dense[li];
        std::vector<double> pre(L.out);
        for (std::size_t j = 0; j < L.out; ++j) pre[j] = p[L.b_off + j] + k.dot(p + L.w_off + j * L.in, x.data(), L.in);
        std::vector<double> y = pre;
        if (L.relu) {
            for (auto& v : y) v = v > 0.0 ? v : 0.0;
        }
        if (li == kFeatureLayer) result.features = y;
        if (cache != nullptr) {
            cache->dense[li].input = std::move(x);
            cache->dense[li].pre = std::move(pre);
        }
        x = std::move(y);
    }
    result.predictions.resize(x.size());
    std::transform(x.begin(), x.end(), result.predictions.begin(), sigmoid);
    if (cache != nullptr) cache->predictions = result.predictions;
    return result;
}

Output Model::forward(std::span<const double> input) const { return run(input, nullptr, nullptr); }

Output Model::forward(const matrix::BundleMatrix& m) const {
    if (m.height != config_.input_height || m.width != config_.input_width) {
        throw ConfigError("matrix is " + std::to_string(m.height) + "x" + std::to_string(m.width) + ", model expects " +
                          std::to_string(config_.input_height) + "x" + std::to_string(config_.input_width));
    }
    return forward(m.cells);
}

Output Model::forward_train(std::span<const double> input, std::mt19937_64& rng) const { return run(input, &rng, nullptr); }

double Model::accumulate_gradient(std::span<const double> input, std::span<const double> target, std::span<double> grad,
                                  std::mt19937_64* rng) const {
    if (target.size() != config_.label_count) {
        throw ConfigError("target has " + std::to_string(target.size()) + " labels, model has " +
                          std::to_string(config_.label_count));
    }
    if (grad.size() != params_.size()) throw ConfigError("gradient buffer does not match the parameter count");
    Cache cache;
    run(input, rng, &cache);
    const auto& k = simd::active();
    const double* p = params_.data();
    double* g = grad.data();
    const auto& pred = cache.predictions;
    const double loss = mse(pred, target);

    const auto labels = static_cast<double>(pred.size());
    std::vector<double> delta(pred.size());
    for (std::size_t j = 0; j < pred.size(); ++j) delta[j] = 2.0 * (pred[j] - target[j]) / labels * pred[j] * (1.0 - pred[j]);

    for (std::size_t li = layout_->dense.size(); li-- > 0;) {
        const auto& L = layout_->dense[li];
        const auto& c = cache.dense[li];
        if (L.relu) {
            for (std::size_t j = 0; j < L.out; ++j) {
                if (c.pre[j] <= 0.0) delta[j] = 0.0;
            }
        }
        std::vector<double> dx(L.in, 0.0);
        for (std::size_t j = 0; j < L.out; ++j) {
            if (delta[j] == 0.0) continue;
            g[L.b_off + j] += delta[j];
            k.axpy(delta[j], c.input.data(), g + L.w_off + j * L.in, L.in);
            k.axpy(delta[j], p + L.w_off + j * L.in, dx.data(), L.in);
        }
        delta = std::move(dx);
    }

    for (std::size_t li = layout_->conv.size(); li-- > 0;) {
        const auto& L = layout_->conv[li];
        const auto& c = cache.conv[li];
        const std::size_t plane = L.h * L.w;
        std::vector<double> dact(L.out_c * plane, 0.0);
        for (std::size_t n = 0; n < delta.size(); ++n) dact[c.argmax[n]] += delta[n];
        for (std::size_t n = 0; n < dact.size(); ++n) {
            if (!c.mask.empty()) dact[n] *= c.mask[n];
            if (c.pre[n] <= 0.0) dact[n] = 0.0;
        }
        std::vector<double> dx(li > 0 ? L.in_c * plane : 0, 0.0);
        for (std::size_t o = 0; o < L.out_c; ++o) {
            const double* dout = dact.data() + o * plane;
            g[L.b_off + o] += std::accumulate(dout, dout + plane, 0.0);
            for (std::size_t i = 0; i < L.in_c; ++i) {
                const double* src = c.input.data() + i * plane;
                for (std::size_t dy = 0; dy < L.kh; ++dy) {
                    for (std::size_t dx_ = 0; dx_ < L.kw; ++dx_) {
                        const std::size_t wi = L.w_off + ((o * L.in_c + i) * L.kh + dy) * L.kw + dx_;
                        const std::size_t x0 = dx_ < L.pad_l ? L.pad_l - dx_ : 0;
                        const std::size_t x1 = std::min(L.w, L.w + L.pad_l - dx_);
                        if (x0 >= x1) continue;
                        double acc = 0.0;
                        for (std::size_t y = 0; y < L.h; ++y) {
                            const auto sy = static_cast<std::ptrdiff_t>(y + dy) - static_cast<std::ptrdiff_t>(L.pad_t);
                            if (sy < 0 || sy >= static_cast<std::ptrdiff_t>(L.h)) continue;
                            const std::size_t s = static_cast<std::size_t>(sy) * L.w + x0 + dx_ - L.pad_l;
                            acc += k.dot(dout + y * L.w + x0, src + s, x1 - x0);
                            if (li > 0) k.axpy(p[wi], dout + y * L.w + x0, dx.data() + i * plane + s, x1 - x0);
                        }
                        g[wi] += acc;
                    }
                }
            }
        }
        delta = std::move(dx);
    }
    return loss;
}

TrainReport Model::train(std::span<const Sample> data) {
    if (data.empty()) throw ConfigError("training needs at least one sample");
    const auto cells = config_.input_height * config_.input_width;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i].input.size() != cells || data[i].target.size() != config_.label_count) {
            throw ConfigError("sample " + std::to_string(i) + " does not match the model shape");
        }
    }
    std::fill(velocity_.begin(), velocity_.end(), 0.0);
    std::mt19937_64 rng{config_.seed ^ 0x9e3779b97f4a7c15ULL};
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> grad(params_.size());

    TrainReport report;
    for (std::size_t epoch = 0; epoch < config_.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double total = 0.0;
        for (std::size_t start = 0; start < order.size(); start += config_.batch_size) {
            const std::size_t end = std::min(order.size(), start + config_.batch_size);
            std::fill(grad.begin(), grad.end(), 0.0);
            for (std::size_t n = start; n < end; ++n) {
                const auto& s = data[order[n]];
                total += accumulate_gradient(s.input, s.target, grad, &rng);
            }
            const double scale = config_.learning_rate / static_cast<double>(end - start);
            for (std::size_t q = 0; q < params_.size(); ++q) {
                velocity_[q] = config_.momentum * velocity_[q] - scale * grad[q];
                params_[q] += velocity_[q];
            }
        }
        const double loss = total / static_cast<double>(data.size());
        if (!std::isfinite(loss)) throw TrainingError("training diverged at epoch " + std::to_string(epoch), epoch);
        report.epoch_loss.push_back(loss);
    }
    return report;
}

Model Model::extend_labels(std::size_t label_count) const {
    if (label_count < config_.label_count) {
        throw ConfigError("labels cannot shrink from " + std::to_string(config_.label_count) + " to " +
                          std::to_string(label_count));
    }
    if (label_count == config_.label_count) return *this;
    auto next = config_;
    next.label_count = label_count;
    return Model{std::move(next)};
}

namespace {

    constexpr std::string_view kMagic = "MEVSCKPT";

    template <typename T>
    void put_le(std::string& out, T v) {
        for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }

    template <typename T>
    T get_le(std::string_view bytes, std::size_t& at) {
        if (at + sizeof(T) > bytes.size()) throw ParseError("checkpoint: truncated at byte " + std::to_string(at));
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<unsigned char>(bytes[at + i])) << (8 * i);
        at += sizeof(T);
        return v;
    }

}  // namespace

std::string Model::serialize() const {
    const auto header = to_json(config_).dump();
    std::string out{kMagic};
    put_le<std::uint32_t>(out, kCheckpointVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(header.size()));
    out += header;
    put_le<std::uint64_t>(out, params_.size());
    for (const double v : params_) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
    return out;
}

Model Model::deserialize(std::string_view bytes) {
    if (bytes.substr(0, kMagic.size()) != kMagic) throw ParseError("checkpoint: missing MEVSCKPT magic");
    std::size_t at = kMagic.size();
    const auto version = get_le<std::uint32_t>(bytes, at);
    if (version != kCheckpointVersion) throw ParseError("checkpoint: unsupported version " + std::to_string(version));
    const auto length = get_le<std::uint32_t>(bytes, at);
    if (at + length > bytes.size()) throw ParseError("checkpoint: truncated config header");
    json header;
    try {
        header = json::parse(bytes.substr(at, length));
    } catch (const json::exception& e) {
        throw ParseError(std::string{"checkpoint: config header: "} + e.what());
    }
    at += length;
    Model model{model_config_from_json(header)};
    const auto count = get_le<std::uint64_t>(bytes, at);
    if (count != model.params_.size()) {
        throw ParseError("checkpoint: " + std::to_string(count) + " parameters, config implies " +
                         std::to_string(model.params_.size()));
    }
    for (auto& v : model.params_) v = std::bit_cast<double>(get_le<std::uint64_t>(bytes, at));
    if (at != bytes.size()) throw ParseError("checkpoint: trailing bytes");
    return model;
}

void Model::save(const std::string& path) const { write_file(path, serialize()); }

Model Model::load(const std::string& path) { return deserialize(read_file(path)); }

double grad_check(const Model& model, const Sample& sample, double epsilon) {
    for (const auto& c : model.config().conv) {
        if (c.dropout != 0.0) throw ConfigError("gradient check requires dropout 0 in every conv block");
    }
    std::vector<double> analytic(model.parameters().size(), 0.0);
    model.accumulate_gradient(sample.input, sample.target, analytic, nullptr);

    Model probe = model;
    auto params = probe.parameters();
    double worst = 0.0;
    for (std::size_t q = 0; q < params.size(); ++q) {
        const double original = params[q];
        params[q] = original + epsilon;
        const double up = mse(probe.forward(sample.input).predictions, sample.target);
        params[q] = original - epsilon;
        const double down = mse(probe.forward(sample.input).predictions, sample.target);
        params[q] = original;
        const double numeric = (up - down) / (2.0 * epsilon);
        const double scale = std::max({std::fabs(analytic[q]), std::fabs(numeric), 1e-6});
        worst = std::max(worst, std::fabs(analytic[q] - numeric) / scale);
    }
    return worst;
}

}  // namespace mevscope::learn
