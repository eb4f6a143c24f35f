// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <mevscope/cluster/dbscan.hpp>
#include <mevscope/hunter/hunter.hpp>
#include <mevscope/ingest/bundle.hpp>
#include <mevscope/learn/model.hpp>
#include <mevscope/matrix/matrix.hpp>

namespace mevscope::cluster {

struct ClusterConfig {
    double epsilon{16.0};
    double eta{0.5};
    std::size_t min_pts{2};
    std::size_t max_rounds{16};
    std::size_t noise_sample_cap{10};

    //! Throws ConfigError unless epsilon > 0, 0 < eta < 1 and min_pts >= 2.
    void validate() const;
};

nlohmann::json to_json(const ClusterConfig& c);
ClusterConfig cluster_config_from_json(const nlohmann::json& j);

//! Activity names the loop starts from.
const std::vector<std::string>& initial_labels();

//! Bundles with their hunter findings, addressable by reference.
class Corpus {
  public:
    //! Throws ConflictError on a repeated bundle reference.
    explicit Corpus(std::vector<ingest::BundleActions> bundles);

    [[nodiscard]] std::size_t size() const noexcept { return bundles_.size(); }
    [[nodiscard]] const ingest::BundleActions& bundle(std::size_t i) const { return bundles_.at(i); }
    [[nodiscard]] const std::vector<hunter::MevFinding>& findings(std::size_t i) const { return findings_.at(i); }
    [[nodiscard]] std::span<const ingest::BundleActions> bundles() const noexcept { return bundles_; }
    [[nodiscard]] std::optional<std::size_t> find(const ingest::BundleRef& ref) const;

  private:
    std::vector<ingest::BundleActions> bundles_;
    std::vector<std::vector<hunter::MevFinding>> findings_;
    std::map<ingest::BundleRef, std::size_t> index_;
};

//! True when every action lies in a transaction and contract witnessed by a finding whose
//! activity name is in `labels`.
bool explained(const ingest::BundleActions& bundle, std::span<const hunter::MevFinding> findings,
               std::span<const std::string> labels);

struct EmbedRequest {
    const Corpus& corpus;
    std::vector<std::vector<double>> targets;  // per corpus bundle, one entry per label
    std::vector<std::size_t> survivors;  // corpus indices to embed
};

class Embedder {
  public:
    virtual ~Embedder() = default;
    //! One feature vector per survivor, in survivor order.
    virtual std::vector<Point> embed(const EmbedRequest& request) = 0;
};

//! Retrains the representation model on the whole corpus for the current label set and
//! embeds the survivors with it.
class ModelEmbedder final : public Embedder {
  public:
    ModelEmbedder(learn::ModelConfig model, matrix::MatrixConfig matrix);
    std::vector<Point> embed(const EmbedRequest& request) override;
    [[nodiscard]] const learn::Model* model() const noexcept { return model_ ? &*model_ : nullptr; }
    [[nodiscard]] const learn::TrainReport& last_report() const noexcept { return report_; }

  private:
    learn::ModelConfig model_config_;
    matrix::MatrixConfig matrix_config_;
    std::optional<learn::Model> model_;
    learn::TrainReport report_;
};

//! Untrained features: per action type the action count, then transaction and parameter counts.
class ActionProfileEmbedder final : public Embedder {
  public:
    std::vector<Point> embed(const EmbedRequest& request) override;
};

enum class DecisionKind { kKnown, kNew, kDismissed };

struct Decision {
    DecisionKind kind{DecisionKind::kDismissed};
    std::string name;  // empty for dismissals

    //! "known:NAME", "new:NAME" or "dismissed".
    [[nodiscard]] std::string to_string() const;
    static Decision parse(std::string_view text);
    friend bool operator==(const Decision&, const Decision&) = default;
};

enum class ItemStatus { kPending, kLabeled, kDismissed };
std::string_view to_string(ItemStatus s) noexcept;

struct ReviewItem {
    ingest::BundleRef bundle;
    int cluster{kNoise};
    std::size_t cluster_size{1};
    ItemStatus status{ItemStatus::kPending};
    std::optional<Decision> decision;
};

struct Survivor {
    ingest::BundleRef bundle;
    Point features;
    int cluster{kNoise};
};

struct AuditEntry {
    std::string time;
    ingest::BundleRef bundle;
    Decision decision;
    std::string actor;
};

nlohmann::json to_json(const AuditEntry& e);
//! Appends one NDJSON line.
void append_audit(const std::string& path, const AuditEntry& e);
//! Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

class ClusterSession {
  public:
    ClusterSession(std::string id, ClusterConfig config);

    //! Prunes with the initial labels, then embeds, clusters and samples the first queue.
    void start(const Corpus& corpus, Embedder& embedder);
    //! Throws NotFoundError for a bundle outside the queue, ConflictError when already decided
    //! and SchemaError for a known() name outside the label set or an empty new() name.
    AuditEntry submit_label(const ingest::BundleRef& bundle, const Decision& decision, std::string actor = "analyst");
    //! Throws ConflictError while items are pending or once terminal.
    void advance(const Corpus& corpus, Embedder& embedder);

    [[nodiscard]] const std::string& id() const noexcept { return id_; }
    [[nodiscard]] const ClusterConfig& config() const noexcept { return config_; }
    [[nodiscard]] std::size_t round() const noexcept { return round_; }
    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
    [[nodiscard]] const std::vector<std::string>& label_set() const noexcept { return label_set_; }
    [[nodiscard]] const std::vector<Survivor>& survivors() const noexcept { return survivors_; }
    [[nodiscard]] const std::vector<ReviewItem>& queue() const noexcept { return queue_; }
    [[nodiscard]] const std::vector<std::string>& labels_added_this_round() const noexcept { return added_; }
    [[nodiscard]] std::size_t pending() const noexcept;
    [[nodiscard]] std::size_t reviewed() const noexcept { return reviewed_.size(); }
    [[nodiscard]] std::size_t cluster_total() const noexcept { return clusters_; }
    [[nodiscard]] bool started() const noexcept { return started_; }
    [[nodiscard]] bool terminal() const noexcept { return terminal_; }
    [[nodiscard]] const std::string& terminal_reason() const noexcept { return terminal_reason_; }

    [[nodiscard]] nlohmann::json to_json() const;
    static ClusterSession from_json(const nlohmann::json& j);

  private:
    std::vector<std::vector<double>> targets(const Corpus& corpus) const;
    void cluster_round(const Corpus& corpus, std::vector<std::size_t> survivors, Embedder& embedder);
    void finish(std::string reason);

    std::string id_;
    ClusterConfig config_;
    std::size_t round_{0};
    double epsilon_;
    std::vector<std::string> label_set_;
    std::vector<Survivor> survivors_;
    std::vector<ReviewItem> queue_;
    std::vector<std::string> added_;
    std::map<ingest::BundleRef, std::vector<std::string>> analyst_labels_;
    std::set<ingest::BundleRef> reviewed_;
    std::size_t clusters_{0};
    bool started_{false};
    bool terminal_{false};
    std::string terminal_reason_;
};

}  // namespace mevscope::cluster
