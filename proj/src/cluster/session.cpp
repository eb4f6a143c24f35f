// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/cluster/session.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <numeric>

#include <mevscope/common/errors.hpp>
#include <mevscope/simd/kernels.hpp>

namespace mevscope::cluster {

using ingest::BundleRef;
using nlohmann::json;

void ClusterConfig::validate() const {
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("eta must lie in (0, 1)");
    if (min_pts < 2) throw ConfigError("min_pts must be at least 2");
}

json to_json(const ClusterConfig& c) {
    return {{"epsilon", c.epsilon},
            {"eta", c.eta},
            {"min_pts", c.min_pts},
            {"max_rounds", c.max_rounds},
            {"noise_sample_cap", c.noise_sample_cap}};
}

ClusterConfig cluster_config_from_json(const json& j) {
    try {
        ClusterConfig c;
        c.epsilon = j.value("epsilon", c.epsilon);
        c.eta = j.value("eta", c.eta);
        c.min_pts = j.value("min_pts", c.min_pts);
        c.max_rounds = j.value("max_rounds", c.max_rounds);
        c.noise_sample_cap = j.value("noise_sample_cap", c.noise_sample_cap);
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw SchemaError(std::string{"cluster config: "} + e.what());
    }
}

const std::vector<std::string>& initial_labels() {
    static const std::vector<std::string> labels{"SA", "CA", "LI"};
    return labels;
}

Corpus::Corpus(std::vector<ingest::BundleActions> bundles) : bundles_{std::move(bundles)} {
    findings_.reserve(bundles_.size());
    for (std::size_t i = 0; i < bundles_.size(); ++i) {
        if (!index_.emplace(bundles_[i].ref(), i).second) {
            throw ConflictError("bundle " + bundles_[i].ref().to_string() + " appears twice in the corpus");
        }
        findings_.push_back(hunter::hunt(bundles_[i]));
    }
}

std::optional<std::size_t> Corpus::find(const BundleRef& ref) const {
    const auto it = index_.find(ref);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool explained(const ingest::BundleActions& bundle, std::span<const hunter::MevFinding> findings,
               std::span<const std::string> labels) {
    const auto in_labels = [&](const hunter::MevFinding& f) {
        return std::find(labels.begin(), labels.end(), hunter::to_string(f.activity)) != labels.end();
    };
    for (std::size_t i = 0; i < bundle.per_tx.size(); ++i) {
        for (const auto& a : bundle.per_tx[i].actions) {
            const bool covered = std::any_of(findings.begin(), findings.end(), [&](const hunter::MevFinding& f) {
                return in_labels(f) && std::binary_search(f.txs.begin(), f.txs.end(), i) &&
                       std::binary_search(f.contracts.begin(), f.contracts.end(), a.contract);
            });
            if (!covered) return false;
        }
    }
    return true;
}

ModelEmbedder::ModelEmbedder(learn::ModelConfig model, matrix::MatrixConfig matrix)
    : model_config_{std::move(model)}, matrix_config_{matrix} {
    matrix_config_.validate();
    model_config_.input_height = matrix_config_.height;
    model_config_.input_width = matrix_config_.width;
    model_config_.validate();
}

std::vector<Point> ModelEmbedder::embed(const EmbedRequest& request) {
    const auto& corpus = request.corpus;
    if (request.targets.size() != corpus.size()) throw ConfigError("one target vector per corpus bundle is required");
    const auto labels = request.targets.empty() ? std::size_t{1} : request.targets.front().size();
    const auto ranking = matrix::AssetRanking::from_corpus(corpus.bundles());

    std::vector<learn::Sample> samples;
    samples.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        samples.push_back({matrix::encode_bundle(corpus.bundle(i), matrix_config_, ranking).cells, request.targets[i]});
    }
    auto config = model_config_;
    config.label_count = labels;
    if (model_ && labels > model_->config().label_count) {
        model_ = model_->extend_labels(labels);
    } else {
        model_.emplace(config);
    }
    report_ = samples.empty() ? learn::TrainReport{} : model_->train(samples);

    std::vector<Point> out;
    out.reserve(request.survivors.size());
    for (const auto i : request.survivors) out.push_back(model_->forward(samples.at(i).input).features);
    return out;
}

std::vector<Point> ActionProfileEmbedder::embed(const EmbedRequest& request) {
    std::vector<Point> out;
    for (const auto i : request.survivors) {
        const auto& b = request.corpus.bundle(i);
        Point p(registry::kAllActionTypes.size() + 2, 0.0);
        for (const auto& tx : b.per_tx) {
            for (const auto& a : tx.actions) {
                p[registry::ordinal(a.type)] += 1.0;
                p.back() += static_cast<double>(a.params.size());
            }
        }
        p[registry::kAllActionTypes.size()] = static_cast<double>(b.per_tx.size());
        out.push_back(std::move(p));
    }
    return out;
}

std::string Decision::to_string() const {
    switch (kind) {
        case DecisionKind::kKnown: return "known:" + name;
        case DecisionKind::kNew: return "new:" + name;
        case DecisionKind::kDismissed: return "dismissed";
    }
    return "dismissed";
}

Decision Decision::parse(std::string_view text) {
    if (text == "dismissed") return {DecisionKind::kDismissed, ""};
    for (const auto& [prefix, kind] : {std::pair{std::string_view{"known:"}, DecisionKind::kKnown},
                                       std::pair{std::string_view{"new:"}, DecisionKind::kNew}}) {
        if (text.starts_with(prefix)) return {kind, std::string{text.substr(prefix.size())}};
    }
    throw ParseError("decision '" + std::string{text} + "' is not known:NAME, new:NAME or dismissed");
}

std::string_view to_string(ItemStatus s) noexcept {
    switch (s) {
        case ItemStatus::kPending: return "pending";
        case ItemStatus::kLabeled: return "labeled";
        case ItemStatus::kDismissed: return "dismissed";
    }
    return "pending";
}

namespace {

    ItemStatus status_from_string(std::string_view s) {
        for (const auto st : {ItemStatus::kPending, ItemStatus::kLabeled, ItemStatus::kDismissed}) {
            if (to_string(st) == s) return st;
        }
        throw SchemaError("unknown review status '" + std::string{s} + "'");
    }

}  // namespace

json to_json(const AuditEntry& e) {
    return {{"time", e.time}, {"bundle", e.bundle.to_string()}, {"decision", e.decision.to_string()}, {"actor", e.actor}};
}

void append_audit(const std::string& path, const AuditEntry& e) {
    std::ofstream out{path, std::ios::app | std::ios::binary};
    if (!out) throw Error("cannot open audit log " + path);
    out << to_json(e).dump() << '\n';
    if (!out) throw Error("cannot write audit log " + path);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ClusterSession::ClusterSession(std::string id, ClusterConfig config)
    : id_{std::move(id)}, config_{config}, epsilon_{config.epsilon}, label_set_{initial_labels()} {
    config_.validate();
}

std::size_t ClusterSession::pending() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(queue_.begin(), queue_.end(), [](const ReviewItem& r) { return r.status == ItemStatus::kPending; }));
}

std::vector<std::vector<double>> ClusterSession::targets(const Corpus& corpus) const {
    std::vector<std::vector<double>> out(corpus.size(), std::vector<double>(label_set_.size(), 0.0));
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (const auto& f : corpus.findings(i)) {
            const auto it = std::find(label_set_.begin(), label_set_.end(), hunter::to_string(f.activity));
            if (it != label_set_.end()) out[i][static_cast<std::size_t>(it - label_set_.begin())] = 1.0;
        }
        const auto labeled = analyst_labels_.find(corpus.bundle(i).ref());
        if (labeled == analyst_labels_.end()) continue;
        for (const auto& name : labeled->second) {
            const auto it = std::find(label_set_.begin(), label_set_.end(), name);
            if (it != label_set_.end()) out[i][static_cast<std::size_t>(it - label_set_.begin())] = 1.0;
        }
    }
    return out;
}

void ClusterSession::finish(std::string reason) {
    terminal_ = true;
    terminal_reason_ = std::move(reason);
    queue_.clear();
    for (auto& s : survivors_) s.cluster = kNoise;
    clusters_ = 0;
}

void ClusterSession::cluster_round(const Corpus& corpus, std::vector<std::size_t> survivors, Embedder& embedder) {
    const auto features = embedder.embed({corpus, targets(corpus), survivors});
    if (features.size() != survivors.size()) throw ConfigError("embedder returned the wrong number of feature vectors");
    const auto labels = dbscan(features, epsilon_, config_.min_pts);
    clusters_ = cluster_count(labels);

    survivors_.clear();
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        survivors_.push_back({corpus.bundle(survivors[i]).ref(), features[i], labels[i]});
    }

    queue_.clear();
    std::vector<std::vector<std::size_t>> members(clusters_);
    std::vector<std::size_t> noise;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == kNoise) {
            noise.push_back(i);
        } else {
            members[static_cast<std::size_t>(labels[i])].push_back(i);
        }
    }
    for (std::size_t c = 0; c < clusters_; ++c) {
        const auto m = medoid(features, members[c]);
        queue_.push_back({survivors_[m].bundle, static_cast<int>(c), members[c].size(), ItemStatus::kPending, std::nullopt});
    }
    const auto& k = simd::active();
    const auto norm = [&](std::size_t i) {
        const Point origin(features[i].size(), 0.0);
        return k.squared_distance(features[i].data(), origin.data(), origin.size());
    };
    std::stable_sort(noise.begin(), noise.end(), [&](std::size_t a, std::size_t b) { return norm(a) < norm(b); });
    noise.resize(std::min(noise.size(), config_.noise_sample_cap));
    for (const auto i : noise) queue_.push_back({survivors_[i].bundle, kNoise, 1, ItemStatus::kPending, std::nullopt});
}

void ClusterSession::start(const Corpus& corpus, Embedder& embedder) {
    if (started_) throw ConflictError("session " + id_ + " has already started");
    started_ = true;
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!explained(corpus.bundle(i), corpus.findings(i), label_set_)) survivors.push_back(i);
    }
    if (survivors.empty()) {
        finish("corpus empty");
        return;
    }
    cluster_round(corpus, std::move(survivors), embedder);
}

AuditEntry ClusterSession::submit_label(const BundleRef& bundle, const Decision& decision, std::string actor) {
    const auto item = std::find_if(queue_.begin(), queue_.end(), [&](const ReviewItem& r) { return r.bundle == bundle; });
    if (item == queue_.end()) throw NotFoundError("bundle " + bundle.to_string() + " is not in the review queue");
    if (item->status != ItemStatus::kPending) {
        throw ConflictError("bundle " + bundle.to_string() + " was already decided as " + item->decision->to_string());
    }
    const bool known_name = std::find(label_set_.begin(), label_set_.end(), decision.name) != label_set_.end();
    if (decision.kind == DecisionKind::kKnown && !known_name) {
        throw SchemaError("label '" + decision.name + "' is not in the label set");
    }
    if (decision.kind == DecisionKind::kNew && decision.name.empty()) throw SchemaError("a new label needs a name");

    if (decision.kind == DecisionKind::kNew && !known_name) {
        label_set_.push_back(decision.name);
        added_.push_back(decision.name);
    }
    if (decision.kind != DecisionKind::kDismissed) analyst_labels_[bundle].push_back(decision.name);
    item->status = decision.kind == DecisionKind::kDismissed ? ItemStatus::kDismissed : ItemStatus::kLabeled;
    item->decision = decision;
    reviewed_.insert(bundle);
    return {utc_timestamp(), bundle, decision, std::move(actor)};
}

void ClusterSession::advance(const Corpus& corpus, Embedder& embedder) {
    if (!started_) throw ConflictError("session " + id_ + " has not started");
    if (terminal_) throw ConflictError("session " + id_ + " is terminal: " + terminal_reason_);
    if (const auto n = pending(); n > 0) throw ConflictError(std::to_string(n) + " review items are still pending");

    const bool grew = !added_.empty();
    added_.clear();
    ++round_;
    epsilon_ *= config_.eta;

    std::vector<std::size_t> survivors;
    std::vector<Survivor> kept;
    for (auto& s : survivors_) {
        const auto i = corpus.find(s.bundle);
        if (!i) throw NotFoundError("bundle " + s.bundle.to_string() + " is missing from the corpus");
        if (reviewed_.contains(s.bundle) || explained(corpus.bundle(*i), corpus.findings(*i), label_set_)) continue;
        survivors.push_back(*i);
        kept.push_back(std::move(s));
    }
    survivors_ = std::move(kept);
    if (!grew) return finish("no new labels");
    if (survivors.empty()) return finish("corpus empty");
    if (round_ >= config_.max_rounds) return finish("max rounds");
    cluster_round(corpus, std::move(survivors), embedder);
}

json ClusterSession::to_json() const {
    json survivors = json::array();
    for (const auto& s : survivors_) survivors.push_back({{"bundle", s.bundle.to_string()}, {"features", s.features}, {"cluster", s.cluster}});
    json queue = json::array();
    for (const auto& r : queue_) {
        json item{{"bundle", r.bundle.to_string()},
                  {"cluster", r.cluster},
                  {"cluster_size", r.cluster_size},
                  {"status", to_string(r.status)}};
        if (r.decision) item["decision"] = r.decision->to_string();
        queue.push_back(std::move(item));
    }
    json analyst = json::object();
    for (const auto& [ref, names] : analyst_labels_) analyst[ref.to_string()] = names;
    json reviewed = json::array();
    for (const auto& ref : reviewed_) reviewed.push_back(ref.to_string());
    return {{"id", id_},
            {"config", cluster::to_json(config_)},
            {"round", round_},
            {"epsilon", epsilon_},
            {"label_set", label_set_},
            {"labels_added", added_},
            {"started", started_},
            {"terminal", terminal_},
            {"terminal_reason", terminal_reason_},
            {"clusters", clusters_},
            {"survivors", survivors},
            {"queue", queue},
            {"analyst_labels", analyst},
            {"reviewed", reviewed}};
}

ClusterSession ClusterSession::from_json(const json& j) {
    try {
        ClusterSession s{j.at("id").get<std::string>(), cluster_config_from_json(j.at("config"))};
        s.round_ = j.at("round").get<std::size_t>();
        s.epsilon_ = j.at("epsilon").get<double>();
        s.label_set_ = j.at("label_set").get<std::vector<std::string>>();
        s.added_ = j.at("labels_added").get<std::vector<std::string>>();
        s.started_ = j.at("started").get<bool>();
        s.terminal_ = j.at("terminal").get<bool>();
        s.terminal_reason_ = j.at("terminal_reason").get<std::string>();
        s.clusters_ = j.at("clusters").get<std::size_t>();
        for (const auto& e : j.at("survivors")) {
            s.survivors_.push_back({BundleRef::parse(e.at("bundle").get<std::string>()), e.at("features").get<Point>(),
                                    e.at("cluster").get<int>()});
        }
        for (const auto& e : j.at("queue")) {
            ReviewItem r{BundleRef::parse(e.at("bundle").get<std::string>()), e.at("cluster").get<int>(),
                         e.at("cluster_size").get<std::size_t>(), status_from_string(e.at("status").get<std::string>()),
                         std::nullopt};
            if (e.contains("decision")) r.decision = Decision::parse(e.at("decision").get<std::string>());
            s.queue_.push_back(std::move(r));
        }
        for (const auto& [ref, names] : j.at("analyst_labels").items()) {
            s.analyst_labels_[BundleRef::parse(ref)] = names.get<std::vector<std::string>>();
        }
        for (const auto& ref : j.at("reviewed")) s.reviewed_.insert(BundleRef::parse(ref.get<std::string>()));
        return s;
    } catch (const json::exception& e) {
        throw SchemaError(std::string{"cluster session: "} + e.what());
    }
}

}  // namespace mevscope::cluster
