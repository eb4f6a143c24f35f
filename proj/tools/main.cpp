// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <csignal>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mevscope/cluster/session.hpp>
#include <mevscope/common/errors.hpp>
#include <mevscope/common/files.hpp>
#include <mevscope/hunter/hunter.hpp>
#include <mevscope/ingest/flashbots.hpp>
#include <mevscope/ingest/store.hpp>
#include <mevscope/ingest/trace_source.hpp>
#include <mevscope/ingest/transport.hpp>
#include <mevscope/learn/model.hpp>
#include <mevscope/lifter/actlifter.hpp>
#include <mevscope/matrix/matrix.hpp>
#include <mevscope/registry/registry.hpp>
#include <mevscope/revenue/revenue.hpp>
#include <mevscope/service/service.hpp>
#include <mevscope/trace/trace.hpp>

namespace {

using nlohmann::json;
using namespace mevscope;

constexpr int kOperationalError = 1;
constexpr int kUsageError = 2;

lifter::MatchConfig match_config(const std::string& name) {
    if (name == "c1") return lifter::MatchConfig::kC1;
    if (name == "c2") return lifter::MatchConfig::kC2;
    return lifter::MatchConfig::kC3;
}

json read_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

struct TraceOptions {
    std::string traces_dir;
    std::string rpc_url;
    int timeout_s{30};

    std::unique_ptr<ingest::Transport> transport;
    std::unique_ptr<ingest::TraceSource> source;

    ingest::TraceSource& open() {
        if (!rpc_url.empty()) {
            transport = ingest::make_http_transport(rpc_url, std::chrono::seconds{timeout_s});
            source = std::make_unique<ingest::RpcTraceSource>(*transport);
        } else {
            source = std::make_unique<ingest::FixtureDirTraceSource>(traces_dir);
        }
        return *source;
    }
};

void add_trace_options(CLI::App* cmd, TraceOptions& t) {
    auto* dir = cmd->add_option("--traces", t.traces_dir, "Directory of <0x-hash>.json trace fixtures")
                    ->check(CLI::ExistingDirectory);
    auto* rpc = cmd->add_option("--rpc", t.rpc_url, "Archive node JSON-RPC URL");
    dir->excludes(rpc);
    cmd->add_option("--timeout", t.timeout_s, "RPC timeout in seconds")->check(CLI::PositiveNumber);
}

struct CorpusOptions {
    std::string store;
    std::string model_config;
    std::size_t height{16};
    std::size_t width{256};
};

std::vector<ingest::BundleActions> load_store(const std::string& path) {
    return ingest::BundleActionsStore{path}.load();
}

learn::ModelConfig model_config_or_default(const std::string& path) {
    if (path.empty()) return {};
    return learn::model_config_from_json(read_json(path));
}

matrix::MatrixConfig matrix_config_for(const learn::ModelConfig& m) { return {m.input_height, m.input_width}; }

std::vector<std::vector<double>> initial_targets(const cluster::Corpus& corpus) {
    const auto& labels = cluster::initial_labels();
    std::vector<std::vector<double>> targets;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        std::vector<double> t(labels.size(), 0.0);
        for (const auto& f : corpus.findings(i)) {
            for (std::size_t l = 0; l < labels.size(); ++l)
                if (hunter::to_string(f.activity) == labels[l]) t[l] = 1.0;
        }
        targets.push_back(std::move(t));
    }
    return targets;
}

service::EmbedderFactory embedder_factory(const std::string& kind, const learn::ModelConfig& model) {
    if (kind == "profile") return [] { return std::make_unique<cluster::ActionProfileEmbedder>(); };
    return [model] { return std::make_unique<cluster::ModelEmbedder>(model, matrix_config_for(model)); };
}

std::function<void()> g_stop;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mevscope: DeFi action lifting, MEV detection and bundle clustering"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "mevscope 0.1.0");

    // ingest
    std::string source;
    std::uint64_t from_block = 0;
    std::uint64_t to_block = 0;
    std::string out;
    std::string registry_path = "data/registry/seed.json";
    std::string config_name = "c1";
    std::string record_dir;
    std::string replay_dir;
    TraceOptions ingest_traces;
    auto* ingest_cmd = app.add_subcommand("ingest", "Fetch bundles, lift their traces and append to an NDJSON store");
    ingest_cmd->add_option("--source", source, "Blocks API URL or bundle fixture path")->required();
    ingest_cmd->add_option("--from-block", from_block, "First block (inclusive)")->required();
    ingest_cmd->add_option("--to-block", to_block, "Last block (inclusive)")->required();
    ingest_cmd->add_option("--out", out, "BundleActions NDJSON store to append to")->required();
    ingest_cmd->add_option("--registry", registry_path, "Event registry JSON")->check(CLI::ExistingFile);
    ingest_cmd->add_option("--config", config_name, "Match configuration")->check(CLI::IsMember({"c1", "c2", "c3"}));
    ingest_cmd->add_option("--record", record_dir, "Record API responses into a directory");
    ingest_cmd->add_option("--replay", replay_dir, "Replay API responses from a directory");
    add_trace_options(ingest_cmd, ingest_traces);

    // lift
    std::string trace_path;
    auto* lift_cmd = app.add_subcommand("lift", "Lift one transaction trace to NDJSON actions");
    lift_cmd->add_option("--trace", trace_path, "Trace fixture JSON")->required()->check(CLI::ExistingFile);
    lift_cmd->add_option("--registry", registry_path, "Event registry JSON")->check(CLI::ExistingFile);
    lift_cmd->add_option("--config", config_name, "Match configuration")->check(CLI::IsMember({"c1", "c2", "c3"}));

    // hunt
    std::string store;
    auto* hunt_cmd = app.add_subcommand("hunt", "Detect MEV activities in a BundleActions store");
    hunt_cmd->add_option("--store", store, "BundleActions NDJSON store")->required()->check(CLI::ExistingFile);

    // matrix
    std::size_t height = 16;
    std::size_t width = 256;
    std::string bundle_ref;
    std::string out_dir;
    auto* matrix_cmd = app.add_subcommand("matrix", "Encode bundles as CSV matrices");
    matrix_cmd->add_option("--store", store, "BundleActions NDJSON store")->required()->check(CLI::ExistingFile);
    matrix_cmd->add_option("--height", height, "Matrix rows");
    matrix_cmd->add_option("--width", width, "Matrix columns");
    auto* one = matrix_cmd->add_option("--bundle", bundle_ref, "Single bundle BLOCK/INDEX, printed to stdout");
    auto* many = matrix_cmd->add_option("--out-dir", out_dir, "Write <block>_<index>.csv for every bundle");
    one->excludes(many);

    // train
    std::string model_config_path;
    std::string model_path;
    std::optional<std::size_t> epochs;
    auto* train_cmd = app.add_subcommand("train", "Train the representation model on hunter labels");
    train_cmd->add_option("--store", store, "BundleActions NDJSON store")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--model-config", model_config_path, "Model configuration JSON")->check(CLI::ExistingFile);
    train_cmd->add_option("--epochs", epochs, "Override the configured epoch count")->check(CLI::PositiveNumber);
    train_cmd->add_option("--out", model_path, "Checkpoint path")->required();

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "Print feature vectors of every bundle as NDJSON");
    embed_cmd->add_option("--store", store, "BundleActions NDJSON store")->required()->check(CLI::ExistingFile);
    embed_cmd->add_option("--model", model_path, "Checkpoint path")->required()->check(CLI::ExistingFile);

    // cluster
    std::string cluster_config_path;
    std::string session_dir;
    std::string session_id = "default";
    std::string embedder_kind = "model";
    auto* cluster_cmd = app.add_subcommand("cluster", "Start a review session and print its first queue");
    cluster_cmd->add_option("--store", store, "BundleActions NDJSON store")->required()->check(CLI::ExistingFile);
    cluster_cmd->add_option("--cluster-config", cluster_config_path, "Cluster configuration JSON")
        ->check(CLI::ExistingFile);
    cluster_cmd->add_option("--model-config", model_config_path, "Model configuration JSON")->check(CLI::ExistingFile);
    cluster_cmd->add_option("--embedder", embedder_kind, "Feature source")->check(CLI::IsMember({"model", "profile"}));
    cluster_cmd->add_option("--session-dir", session_dir, "Persist the session document here");
    cluster_cmd->add_option("--id", session_id, "Session id");

    // serve
    service::ServiceConfig service_config;
    auto* serve_cmd = app.add_subcommand("serve", "Serve review sessions over HTTP");
    serve_cmd->add_option("--store", store, "BundleActions NDJSON store")->required()->check(CLI::ExistingFile);
    serve_cmd->add_option("--host", service_config.host, "Listen address");
    serve_cmd->add_option("--port", service_config.port, "Listen port")->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--session-dir", service_config.session_dir, "Session documents directory");
    serve_cmd->add_option("--audit", service_config.audit_path, "Decision audit NDJSON path");
    serve_cmd->add_option("--token", service_config.bearer_token, "Require this bearer token");
    serve_cmd->add_option("--cors", service_config.cors_origins, "Allowed CORS origins");
    serve_cmd->add_option("--cluster-config", cluster_config_path, "Cluster configuration JSON")
        ->check(CLI::ExistingFile);
    serve_cmd->add_option("--model-config", model_config_path, "Model configuration JSON")->check(CLI::ExistingFile);
    serve_cmd->add_option("--embedder", embedder_kind, "Feature source")->check(CLI::IsMember({"model", "profile"}));
    serve_cmd->add_option("--id", session_id, "Session created at startup when absent");

    // revenue
    std::string bundles_path;
    std::string group_by = "bundle";
    TraceOptions revenue_traces;
    auto* revenue_cmd = app.add_subcommand("revenue", "Builder revenue per bundle or block as CSV");
    revenue_cmd->add_option("--bundles", bundles_path, "Bundle fixture JSON")->required()->check(CLI::ExistingFile);
    revenue_cmd->add_option("--by", group_by, "Row granularity")->check(CLI::IsMember({"bundle", "block"}));
    add_trace_options(revenue_cmd, revenue_traces);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*ingest_cmd) {
            if (ingest_traces.traces_dir.empty() && ingest_traces.rpc_url.empty())
                throw ConfigError("ingest needs --traces or --rpc");
            ingest::FetchOptions options;
            if (!record_dir.empty()) options.record_dir = record_dir;
            if (!replay_dir.empty()) options.replay_dir = replay_dir;
            const auto bundles = ingest::fetch_bundles(source, {from_block, to_block}, options);
            const auto registry = registry::EventRegistry::load_file(registry_path);
            auto& traces = ingest_traces.open();
            std::vector<ingest::BundleActions> lifted;
            for (const auto& b : bundles) lifted.push_back(ingest::lift_bundle(b, traces, registry, match_config(config_name)));
            ingest::BundleActionsStore{out}.append(lifted);
            std::cerr << "ingested " << lifted.size() << " bundles into " << out << "\n";
        } else if (*lift_cmd) {
            const auto registry = registry::EventRegistry::load_file(registry_path);
            const auto trace = trace::parse_trace_fixture(read_file(trace_path));
            const auto tx = lifter::lift_transaction(trace, registry, match_config(config_name));
            for (const auto& a : tx.actions) std::cout << lifter::to_json(a).dump() << "\n";
        } else if (*hunt_cmd) {
            for (const auto& b : load_store(store)) {
                for (const auto& f : hunter::hunt(b)) std::cout << hunter::to_json(f).dump() << "\n";
            }
        } else if (*matrix_cmd) {
            const matrix::MatrixConfig mc{height, width};
            mc.validate();
            const auto bundles = load_store(store);
            const auto ranking = matrix::AssetRanking::from_corpus(bundles);
            if (!bundle_ref.empty()) {
                const auto ref = ingest::BundleRef::parse(bundle_ref);
                const auto it = std::find_if(bundles.begin(), bundles.end(), [&](const auto& b) { return b.ref() == ref; });
                if (it == bundles.end()) throw NotFoundError("bundle " + ref.to_string() + " is not in " + store);
                std::cout << matrix::encode_bundle(*it, mc, ranking).to_csv();
            } else {
                if (out_dir.empty()) throw ConfigError("matrix needs --bundle or --out-dir");
                std::filesystem::create_directories(out_dir);
                for (const auto& b : bundles) {
                    const auto name = std::to_string(b.bundle.block_number) + "_" + std::to_string(b.bundle.bundle_index) + ".csv";
                    write_file((std::filesystem::path{out_dir} / name).string(), matrix::encode_bundle(b, mc, ranking).to_csv());
                }
                std::cerr << "wrote " << bundles.size() << " matrices to " << out_dir << "\n";
            }
        } else if (*train_cmd) {
            auto config = model_config_or_default(model_config_path);
            if (epochs) config.epochs = *epochs;
            config.label_count = cluster::initial_labels().size();
            const cluster::Corpus corpus{load_store(store)};
            const auto ranking = matrix::AssetRanking::from_corpus(corpus.bundles());
            const auto targets = initial_targets(corpus);
            std::vector<learn::Sample> samples;
            for (std::size_t i = 0; i < corpus.size(); ++i)
                samples.push_back({matrix::encode_bundle(corpus.bundle(i), matrix_config_for(config), ranking).cells, targets[i]});
            learn::Model model{config};
            const auto report = model.train(samples);
            for (std::size_t e = 0; e < report.epoch_loss.size(); ++e)
                std::cout << json{{"epoch", e + 1}, {"loss", report.epoch_loss[e]}}.dump() << "\n";
            model.save(model_path);
        } else if (*embed_cmd) {
            const auto model = learn::Model::load(model_path);
            const auto bundles = load_store(store);
            const auto ranking = matrix::AssetRanking::from_corpus(bundles);
            for (const auto& b : bundles) {
                const auto m = matrix::encode_bundle(b, matrix_config_for(model.config()), ranking);
                std::cout << json{{"bundle", b.ref().to_string()}, {"features", model.forward(m).features}}.dump() << "\n";
            }
        } else if (*cluster_cmd) {
            const auto cluster_config =
                cluster_config_path.empty() ? cluster::ClusterConfig{} : cluster::cluster_config_from_json(read_json(cluster_config_path));
            auto corpus = std::make_shared<const cluster::Corpus>(load_store(store));
            service::SessionStore sessions{corpus, embedder_factory(embedder_kind, model_config_or_default(model_config_path)),
                                           session_dir};
            sessions.create(session_id, cluster_config);
            std::cout << sessions.read(session_id, [&](const auto& s) {
                json j = service::session_summary(s);
                j["queue_items"] = service::queue_view(s, *corpus)["items"];
                return j;
            }).dump(2) << "\n";
        } else if (*serve_cmd) {
            const auto cluster_config =
                cluster_config_path.empty() ? cluster::ClusterConfig{} : cluster::cluster_config_from_json(read_json(cluster_config_path));
            auto corpus = std::make_shared<const cluster::Corpus>(load_store(store));
            service::SessionStore sessions{corpus, embedder_factory(embedder_kind, model_config_or_default(model_config_path)),
                                           service_config.session_dir};
            sessions.load_persisted();
            const auto ids = sessions.ids();
            if (std::find(ids.begin(), ids.end(), session_id) == ids.end()) sessions.create(session_id, cluster_config);
            service::ReviewServer server{sessions, service_config};
            g_stop = [&server] { server.stop(); };
            std::signal(SIGINT, [](int) { if (g_stop) g_stop(); });
            std::signal(SIGTERM, [](int) { if (g_stop) g_stop(); });
            std::cerr << "serving session '" << session_id << "' on " << service_config.host << ":" << service_config.port
                      << "\n";
            if (!server.listen()) throw Error("cannot listen on " + service_config.host + ":" + std::to_string(service_config.port));
        } else if (*revenue_cmd) {
            if (revenue_traces.traces_dir.empty() && revenue_traces.rpc_url.empty())
                throw ConfigError("revenue needs --traces or --rpc");
            const auto bundles = ingest::fetch_bundles(bundles_path, {0, UINT64_MAX});
            auto& traces = revenue_traces.open();
            std::vector<revenue::BundleRevenue> rows;
            for (const auto& b : bundles) rows.push_back(revenue::bundle_revenue(b, traces));
            if (group_by == "block") {
                std::cout << revenue::to_csv(revenue::block_revenue(rows));
            } else {
                std::cout << revenue::to_csv(rows);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOperationalError;
    }
    return 0;
}
