// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <set>

#include <json.hpp>

#include <mevscope/trace/trace.hpp>

namespace mevscope::trace {

//! Receipt-level fields that a call tracer frame does not carry.
struct TxHeader {
    TxHash tx_hash;
    std::uint64_t gas_used{0};
    Uint256 effective_gas_price;
};

//! Distills the output of a node's call tracer (geth `callTracer` with `withLog: true`)
//! into an ExecutionTrace. Frames carrying an `error` are dropped together with their
//! subtree; logs are interleaved with child calls by their `position`.
//! `code` must hold the bytecode of every log emitter. Throws ParseError on malformed frames.
ExecutionTrace distill_call_tracer(const nlohmann::json& root, const TxHeader& header, std::map<Address, Bytes> code);

//! Emitters of surviving logs, i.e. the contracts whose code the caller must supply.
std::set<Address> log_emitters(const nlohmann::json& root);

}  // namespace mevscope::trace
