// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <mevscope/cluster/session.hpp>

namespace httplib {
class Server;
}

namespace mevscope::service {

struct ServiceConfig {
    std::string host{"127.0.0.1"};
    int port{8080};
    std::string session_dir;  // persisted session documents; empty keeps sessions in memory
    std::string audit_path;  // NDJSON decision log; empty disables it
    std::optional<std::string> bearer_token;
    std::vector<std::string> cors_origins;  // "*" allows any origin
};

using EmbedderFactory = std::function<std::unique_ptr<cluster::Embedder>()>;

//! Review sessions over one shared corpus. Each session has its own lock, so mutations of a
//! session apply one at a time in arrival order.
class SessionStore {
  public:
    SessionStore(std::shared_ptr<const cluster::Corpus> corpus, EmbedderFactory embedders, std::string dir = {});

    //! Creates and starts a session; throws ConflictError when the id exists.
    void create(const std::string& id, const cluster::ClusterConfig& config);
    //! Loads every `<dir>/<id>.json` document; returns the number loaded.
    std::size_t load_persisted();

    //! Runs `fn` under the session lock and persists the result. Throws NotFoundError.
    template <typename Fn>
    auto mutate(const std::string& id, Fn&& fn) {
        auto& e = entry(id);
        std::lock_guard lock{e.mutex};
        if constexpr (std::is_void_v<decltype(fn(*e.session, *e.embedder))>) {
            fn(*e.session, *e.embedder);
            persist(*e.session);
        } else {
            auto result = fn(*e.session, *e.embedder);
            persist(*e.session);
            return result;
        }
    }

    //! Runs `fn` under the session lock without persisting. Throws NotFoundError.
    template <typename Fn>
    auto read(const std::string& id, Fn&& fn) {
        auto& e = entry(id);
        std::lock_guard lock{e.mutex};
        return fn(static_cast<const cluster::ClusterSession&>(*e.session));
    }

    [[nodiscard]] const cluster::Corpus& corpus() const noexcept { return *corpus_; }
    [[nodiscard]] std::vector<std::string> ids() const;

  private:
    struct Entry {
        std::mutex mutex;
        std::unique_ptr<cluster::ClusterSession> session;
        std::unique_ptr<cluster::Embedder> embedder;
    };

    Entry& entry(const std::string& id);
    void persist(const cluster::ClusterSession& s) const;

    std::shared_ptr<const cluster::Corpus> corpus_;
    EmbedderFactory embedders_;
    std::string dir_;
    mutable std::mutex map_mutex_;
    std::map<std::string, std::unique_ptr<Entry>> sessions_;
};

//! Summary document: id, round, epsilon, label_set, counts and terminal state.
nlohmann::json session_summary(const cluster::ClusterSession& s);
//! Queue items with each bundle's transactions, actions and hunter findings.
nlohmann::json queue_view(const cluster::ClusterSession& s, const cluster::Corpus& corpus);

//! Registers the review API on `server`.
void register_routes(httplib::Server& server, SessionStore& store, const ServiceConfig& config);

//! Serves until `stop` is called from another thread. Returns false when the bind fails.
class ReviewServer {
  public:
    ReviewServer(SessionStore& store, ServiceConfig config);
    ~ReviewServer();
    bool listen();
    //! Binds to an ephemeral port on `host`; returns the port or -1.
    int bind_ephemeral();
    bool listen_after_bind();
    //! Blocks until a concurrent listen call accepts connections.
    void wait_until_ready() const;
    void stop();

  private:
    std::unique_ptr<httplib::Server> server_;
    ServiceConfig config_;
};

}  // namespace mevscope::service
