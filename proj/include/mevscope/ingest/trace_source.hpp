// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>

#include <mevscope/ingest/bundle.hpp>
#include <mevscope/ingest/transport.hpp>
#include <mevscope/registry/registry.hpp>
#include <mevscope/trace/trace.hpp>

namespace mevscope::ingest {

//! Resolves a transaction hash to its execution trace.
class TraceSource {
  public:
    virtual ~TraceSource() = default;
    //! nullopt when the source has no trace for `hash`.
    virtual std::optional<trace::ExecutionTrace> find(const TxHash& hash) = 0;
};

//! Reads `<dir>/<0x-hash>.json` trace fixtures.
class FixtureDirTraceSource final : public TraceSource {
  public:
    explicit FixtureDirTraceSource(std::filesystem::path dir) : dir_{std::move(dir)} {}
    std::optional<trace::ExecutionTrace> find(const TxHash& hash) override;

  private:
    std::filesystem::path dir_;
};

//! In-memory source keyed by transaction hash.
class MemoryTraceSource final : public TraceSource {
  public:
    void add(trace::ExecutionTrace trace);
    std::optional<trace::ExecutionTrace> find(const TxHash& hash) override;

  private:
    std::map<TxHash, trace::ExecutionTrace> traces_;
};

//! Archive-node source over JSON-RPC: `debug_traceTransaction` with the call tracer,
//! `eth_getTransactionReceipt` for gas, `eth_getCode` for log emitters at the tx's block.
class RpcTraceSource final : public TraceSource {
  public:
    explicit RpcTraceSource(Transport& transport) : transport_{transport} {}
    std::optional<trace::ExecutionTrace> find(const TxHash& hash) override;

  private:
    nlohmann::json call(const std::string& method, nlohmann::json params);

    Transport& transport_;
    std::uint64_t next_id_{1};
};

//! Traces of every transaction of `bundle`, in order. Throws IncompleteBundleError listing
//! every hash the source cannot resolve.
std::vector<trace::ExecutionTrace> fetch_traces(const Bundle& bundle, TraceSource& source);

//! Lifts every transaction of `bundle`. Throws IncompleteBundleError listing every hash
//! the source cannot resolve.
BundleActions lift_bundle(const Bundle& bundle, TraceSource& source, const registry::EventRegistry& registry,
                          lifter::MatchConfig config = lifter::MatchConfig::kC1);

}  // namespace mevscope::ingest
