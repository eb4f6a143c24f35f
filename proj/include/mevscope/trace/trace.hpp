// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <mevscope/common/types.hpp>

namespace mevscope::trace {

struct LogRecord {
    Address emitter;
    std::vector<Bytes32> topics;  // topics[0] is the event signature hash
    Bytes data;
    std::uint64_t trace_index{0};

    //! Number of 32-byte words in data.
    [[nodiscard]] std::size_t data_words() const noexcept { return data.size() / 32; }
    [[nodiscard]] Bytes32 data_word(std::size_t i) const;

    friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

//! A value-bearing message call that was not reverted.
struct CallRecord {
    Address caller;
    Address callee;
    Uint256 value;
    std::uint64_t trace_index{0};

    friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

using TraceRecord = std::variant<LogRecord, CallRecord>;

std::uint64_t trace_index_of(const TraceRecord& record) noexcept;

//! Distilled per-transaction execution trace: effective logs and calls in execution order,
//! plus the bytecode of every contract the lifter may need to classify.
struct ExecutionTrace {
    TxHash tx_hash;
    Address sender;
    std::optional<Address> recipient;  // absent for contract creation
    Uint256 tx_value;
    std::uint64_t gas_used{0};
    Uint256 effective_gas_price;
    std::vector<TraceRecord> records;
    std::map<Address, Bytes> code_index;

    [[nodiscard]] const Bytes* code_of(const Address& a) const noexcept;

    friend bool operator==(const ExecutionTrace&, const ExecutionTrace&) = default;
};

//! Checks the structural invariants shared by every producer. Throws SchemaError.
void validate(const ExecutionTrace& trace);

//! Parses the JSON fixture format. Throws ParseError naming the field path, or SchemaError.
ExecutionTrace parse_trace_fixture(std::string_view document);
std::string serialize_trace_fixture(const ExecutionTrace& trace);

std::vector<LogRecord> events_of(const ExecutionTrace& trace);

}  // namespace mevscope::trace
