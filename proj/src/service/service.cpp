// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/service/service.hpp>

#include <algorithm>
#include <filesystem>

#include <httplib.h>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/files.hpp>

namespace mevscope::service {

using nlohmann::json;

SessionStore::SessionStore(std::shared_ptr<const cluster::Corpus> corpus, EmbedderFactory embedders, std::string dir)
    : corpus_(std::move(corpus)), embedders_(std::move(embedders)), dir_(std::move(dir)) {
    if (!corpus_) throw ConfigError("session store needs a corpus");
    if (!embedders_) throw ConfigError("session store needs an embedder factory");
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

void SessionStore::create(const std::string& id, const cluster::ClusterConfig& config) {
    if (id.empty() || id.find_first_of("/\\.") != std::string::npos) throw SchemaError("invalid session id '" + id + "'");
    config.validate();
    auto e = std::make_unique<Entry>();
    e->session = std::make_unique<cluster::ClusterSession>(id, config);
    e->embedder = embedders_();
    Entry* raw = e.get();
    {
        std::lock_guard lock{map_mutex_};
        if (!sessions_.emplace(id, std::move(e)).second) throw ConflictError("session '" + id + "' exists");
    }
    std::unique_lock lock{raw->mutex};
    try {
        raw->session->start(*corpus_, *raw->embedder);
    } catch (...) {
        lock.unlock();
        std::lock_guard map_lock{map_mutex_};
        sessions_.erase(id);
        throw;
    }
    persist(*raw->session);
}

std::size_t SessionStore::load_persisted() {
    if (dir_.empty()) return 0;
    std::size_t loaded = 0;
    std::vector<std::filesystem::path> files;
    for (const auto& f : std::filesystem::directory_iterator(dir_))
        if (f.path().extension() == ".json") files.push_back(f.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        json doc;
        try {
            doc = json::parse(read_file(path.string()));
        } catch (const json::exception& ex) {
            throw ParseError(path.string() + ": " + ex.what());
        }
        auto e = std::make_unique<Entry>();
        e->session = std::make_unique<cluster::ClusterSession>(cluster::ClusterSession::from_json(doc));
        e->embedder = embedders_();
        const auto id = e->session->id();
        std::lock_guard lock{map_mutex_};
        if (!sessions_.emplace(id, std::move(e)).second) throw ConflictError("session '" + id + "' exists");
        ++loaded;
    }
    return loaded;
}

std::vector<std::string> SessionStore::ids() const {
    std::lock_guard lock{map_mutex_};
    std::vector<std::string> out;
    for (const auto& [id, _] : sessions_) out.push_back(id);
    return out;
}

SessionStore::Entry& SessionStore::entry(const std::string& id) {
    std::lock_guard lock{map_mutex_};
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) throw NotFoundError("unknown session '" + id + "'");
    return *it->second;
}

void SessionStore::persist(const cluster::ClusterSession& s) const {
    if (dir_.empty()) return;
    write_file((std::filesystem::path{dir_} / (s.id() + ".json")).string(), s.to_json().dump(2));
}

json session_summary(const cluster::ClusterSession& s) {
    return {{"id", s.id()},
            {"round", s.round()},
            {"epsilon", s.epsilon()},
            {"label_set", s.label_set()},
            {"labels_added", s.labels_added_this_round()},
            {"survivors", s.survivors().size()},
            {"clusters", s.cluster_total()},
            {"queue", s.queue().size()},
            {"pending", s.pending()},
            {"reviewed", s.reviewed()},
            {"terminal", s.terminal()},
            {"terminal_reason", s.terminal_reason()}};
}

json queue_view(const cluster::ClusterSession& s, const cluster::Corpus& corpus) {
    json items = json::array();
    for (const auto& item : s.queue()) {
        json j{{"bundle", item.bundle.to_string()},
               {"cluster", item.cluster},
               {"cluster_size", item.cluster_size},
               {"status", std::string{cluster::to_string(item.status)}},
               {"decision", item.decision ? json(item.decision->to_string()) : json(nullptr)}};
        if (const auto i = corpus.find(item.bundle)) {
            json txs = json::array();
            for (const auto& tx : corpus.bundle(*i).per_tx) txs.push_back(lifter::to_json(tx));
            json findings = json::array();
            for (const auto& f : corpus.findings(*i)) findings.push_back(hunter::to_json(f));
            j["transactions"] = std::move(txs);
            j["findings"] = std::move(findings);
        }
        items.push_back(std::move(j));
    }
    return {{"id", s.id()}, {"round", s.round()}, {"items", std::move(items)}};
}

namespace {

    void send_json(httplib::Response& res, int status, const json& body) {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    }

    void send_error(httplib::Response& res, int status, const std::string& message) {
        send_json(res, status, json{{"error", message}});
    }

    template <typename Fn>
    httplib::Server::Handler guarded(Fn fn) {
        return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
            try {
                fn(req, res);
            } catch (const NotFoundError& e) {
                send_error(res, 404, e.what());
            } catch (const ConflictError& e) {
                send_error(res, 409, e.what());
            } catch (const SchemaError& e) {
                send_error(res, 422, e.what());
            } catch (const ParseError& e) {
                send_error(res, 422, e.what());
            } catch (const ConfigError& e) {
                send_error(res, 422, e.what());
            } catch (const json::exception& e) {
                send_error(res, 422, e.what());
            } catch (const std::exception& e) {
                send_error(res, 500, e.what());
            }
        };
    }

    json parse_body(const httplib::Request& req) {
        try {
            auto j = json::parse(req.body);
            if (!j.is_object()) throw SchemaError("request body must be a JSON object");
            return j;
        } catch (const json::parse_error& e) {
            throw SchemaError(std::string{"malformed JSON body: "} + e.what());
        }
    }

    std::string required_string(const json& j, const char* key) {
        const auto it = j.find(key);
        if (it == j.end() || !it->is_string()) throw SchemaError(std::string{"'"} + key + "' must be a string");
        return it->get<std::string>();
    }

    std::optional<std::string> allowed_origin(const httplib::Request& req, const ServiceConfig& config) {
        if (!req.has_header("Origin")) return std::nullopt;
        const auto origin = req.get_header_value("Origin");
        for (const auto& o : config.cors_origins)
            if (o == "*" || o == origin) return origin;
        return std::nullopt;
    }

}  // namespace

void register_routes(httplib::Server& server, SessionStore& store, const ServiceConfig& config) {
    server.set_pre_routing_handler([config](const httplib::Request& req, httplib::Response& res) {
        if (const auto origin = allowed_origin(req, config)) {
            res.set_header("Access-Control-Allow-Origin", *origin);
            res.set_header("Vary", "Origin");
        }
        if (req.method == "OPTIONS") {
            if (req.has_header("Origin") && !allowed_origin(req, config)) {
                send_error(res, 403, "origin not allowed");
                return httplib::Server::HandlerResponse::Handled;
            }
            res.status = 204;
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Authorization, Content-Type");
            res.set_header("Access-Control-Max-Age", "600");
            return httplib::Server::HandlerResponse::Handled;
        }
        if (config.bearer_token && req.get_header_value("Authorization") != "Bearer " + *config.bearer_token) {
            res.set_header("WWW-Authenticate", "Bearer");
            send_error(res, 401, "missing or invalid bearer token");
            return httplib::Server::HandlerResponse::Handled;
        }
        return httplib::Server::HandlerResponse::Unhandled;
    });

    server.Get("/api/sessions", guarded([&store](const httplib::Request&, httplib::Response& res) {
                   send_json(res, 200, json{{"sessions", store.ids()}});
               }));

    server.Post("/api/sessions", guarded([&store](const httplib::Request& req, httplib::Response& res) {
                    const auto body = parse_body(req);
                    const auto id = required_string(body, "id");
                    const auto cfg = body.contains("config") ? cluster::cluster_config_from_json(body.at("config"))
                                                             : cluster::ClusterConfig{};
                    store.create(id, cfg);
                    send_json(res, 201, store.read(id, [](const auto& s) { return session_summary(s); }));
                }));

    server.Get(R"(/api/session/([^/]+))", guarded([&store](const httplib::Request& req, httplib::Response& res) {
                   send_json(res, 200, store.read(req.matches[1], [](const auto& s) { return session_summary(s); }));
               }));

    server.Get(R"(/api/session/([^/]+)/queue)",
               guarded([&store](const httplib::Request& req, httplib::Response& res) {
                   send_json(res, 200,
                             store.read(req.matches[1], [&store](const auto& s) { return queue_view(s, store.corpus()); }));
               }));

    server.Post(R"(/api/session/([^/]+)/label)",
                guarded([&store, config](const httplib::Request& req, httplib::Response& res) {
                    const auto body = parse_body(req);
                    const auto ref = ingest::BundleRef::parse(required_string(body, "bundle"));
                    const auto decision = cluster::Decision::parse(required_string(body, "decision"));
                    const auto actor = body.contains("actor") ? required_string(body, "actor") : std::string{"analyst"};
                    const auto out = store.mutate(req.matches[1], [&](cluster::ClusterSession& s, cluster::Embedder&) {
                        const auto entry = s.submit_label(ref, decision, actor);
                        if (!config.audit_path.empty()) append_audit(config.audit_path, entry);
                        return json{{"audit", cluster::to_json(entry)}, {"session", session_summary(s)}};
                    });
                    send_json(res, 200, out);
                }));

    server.Post(R"(/api/session/([^/]+)/advance)",
                guarded([&store](const httplib::Request& req, httplib::Response& res) {
                    const auto out = store.mutate(req.matches[1], [&store](cluster::ClusterSession& s, cluster::Embedder& e) {
                        s.advance(store.corpus(), e);
                        return session_summary(s);
                    });
                    send_json(res, 200, out);
                }));

    server.Get(R"(/api/bundle/(\d+)/(\d+))", guarded([&store](const httplib::Request& req, httplib::Response& res) {
                   const auto ref = ingest::BundleRef::parse(req.matches[1].str() + "/" + req.matches[2].str());
                   const auto i = store.corpus().find(ref);
                   if (!i) throw NotFoundError("unknown bundle " + ref.to_string());
                   auto j = ingest::to_json(store.corpus().bundle(*i));
                   json findings = json::array();
                   for (const auto& f : store.corpus().findings(*i)) findings.push_back(hunter::to_json(f));
                   j["findings"] = std::move(findings);
                   send_json(res, 200, j);
               }));

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) send_error(res, res.status, res.status == 404 ? "not found" : "request failed");
    });
}

ReviewServer::ReviewServer(SessionStore& store, ServiceConfig config)
    : server_(std::make_unique<httplib::Server>()), config_(std::move(config)) {
    register_routes(*server_, store, config_);
}

ReviewServer::~ReviewServer() { stop(); }

bool ReviewServer::listen() { return server_->listen(config_.host, config_.port); }

int ReviewServer::bind_ephemeral() { return server_->bind_to_any_port(config_.host); }

bool ReviewServer::listen_after_bind() { return server_->listen_after_bind(); }

void ReviewServer::wait_until_ready() const { server_->wait_until_ready(); }

void ReviewServer::stop() {
    if (server_) server_->stop();
}

}  // namespace mevscope::service
