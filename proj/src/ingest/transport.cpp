// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/ingest/transport.hpp>

#include <httplib.h>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/files.hpp>
#include <mevscope/common/keccak.hpp>

namespace mevscope::ingest {

namespace {

    std::string checked_body(const httplib::Result& res, const std::string& what) {
        if (!res) throw RetryableError(what + ": " + httplib::to_string(res.error()));
        if (res->status == 429 || res->status >= 500) {
            throw RetryableError(what + ": HTTP " + std::to_string(res->status));
        }
        if (res->status != 200) throw AdapterError(what + ": HTTP " + std::to_string(res->status));
        return res->body;
    }

    class HttpTransport final : public Transport {
      public:
        HttpTransport(const std::string& base_url, std::chrono::seconds timeout) : base_{base_url}, client_{base_url} {
            client_.set_connection_timeout(timeout);
            client_.set_read_timeout(timeout);
            client_.set_follow_location(true);
        }

        std::string get(const std::string& target) override {
            return checked_body(client_.Get(target), "GET " + base_ + target);
        }

        std::string post_json(const std::string& target, const std::string& body) override {
            return checked_body(client_.Post(target, body, "application/json"), "POST " + base_ + target);
        }

      private:
        std::string base_;
        httplib::Client client_;
    };

    class RecordingTransport final : public Transport {
      public:
        RecordingTransport(std::unique_ptr<Transport> inner, std::filesystem::path dir)
            : inner_{std::move(inner)}, dir_{std::move(dir)} {
            std::filesystem::create_directories(dir_);
        }

        std::string get(const std::string& target) override {
            auto body = inner_->get(target);
            write_file((dir_ / recording_name("GET", target, "")).string(), body);
            return body;
        }

        std::string post_json(const std::string& target, const std::string& body) override {
            auto response = inner_->post_json(target, body);
            write_file((dir_ / recording_name("POST", target, body)).string(), response);
            return response;
        }

      private:
        std::unique_ptr<Transport> inner_;
        std::filesystem::path dir_;
    };

    class ReplayTransport final : public Transport {
      public:
        explicit ReplayTransport(std::filesystem::path dir) : dir_{std::move(dir)} {}

        std::string get(const std::string& target) override { return load(recording_name("GET", target, "")); }
        std::string post_json(const std::string& target, const std::string& body) override {
            return load(recording_name("POST", target, body));
        }

      private:
        std::string load(const std::string& name) const {
            const auto path = dir_ / name;
            if (!std::filesystem::exists(path)) throw RetryableError("no recording " + path.string());
            return read_file(path.string());
        }

        std::filesystem::path dir_;
    };

}  // namespace

std::string recording_name(const std::string& method, const std::string& target, const std::string& body) {
    const auto digest = keccak256(method + " " + target + "\n" + body).to_hex();
    return method + "-" + digest.substr(2, 16) + ".json";
}

std::unique_ptr<Transport> make_http_transport(const std::string& base_url, std::chrono::seconds timeout) {
    return std::make_unique<HttpTransport>(base_url, timeout);
}

std::unique_ptr<Transport> make_recording_transport(std::unique_ptr<Transport> inner, std::filesystem::path dir) {
    return std::make_unique<RecordingTransport>(std::move(inner), std::move(dir));
}

std::unique_ptr<Transport> make_replay_transport(std::filesystem::path dir) {
    return std::make_unique<ReplayTransport>(std::move(dir));
}

}  // namespace mevscope::ingest
