// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <string>

namespace mevscope::ingest {

//! Request/response transport behind the live adapters.
class Transport {
  public:
    virtual ~Transport() = default;
    //! GET `target` (path plus query). Throws RetryableError on connection failures,
    //! 429 and 5xx; AdapterError on other non-200 statuses.
    virtual std::string get(const std::string& target) = 0;
    //! POST a JSON body. Same error mapping as get().
    virtual std::string post_json(const std::string& target, const std::string& body) = 0;
};

//! Plain HTTP(S) transport over cpp-httplib. `base_url` is scheme://host[:port].
std::unique_ptr<Transport> make_http_transport(const std::string& base_url,
                                               std::chrono::seconds timeout = std::chrono::seconds{30});

//! Wraps a transport and stores every response under `dir`, keyed by request.
std::unique_ptr<Transport> make_recording_transport(std::unique_ptr<Transport> inner, std::filesystem::path dir);

//! Serves responses previously stored by the recording transport; never touches the network.
//! A request with no recording raises RetryableError naming the missing file.
std::unique_ptr<Transport> make_replay_transport(std::filesystem::path dir);

//! File name used for a recorded request.
std::string recording_name(const std::string& method, const std::string& target, const std::string& body);

}  // namespace mevscope::ingest
