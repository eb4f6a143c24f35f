// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/trace/call_tracer.hpp>

#include <limits>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/json_fields.hpp>

namespace mevscope::trace {

using jsonio::json;

namespace {

    Uint256 hex_quantity(const json& frame, std::string_view key, const std::string& path) {
        const auto it = frame.find(key);
        if (it == frame.end() || it->is_null()) return Uint256{};
        const auto value = Uint256::from_hex(jsonio::string_at(*it, jsonio::child(path, key)));
        if (!value) throw ParseError(jsonio::child(path, key) + ": expected hex quantity");
        return *value;
    }

    bool failed(const json& frame) {
        const auto it = frame.find("error");
        return it != frame.end() && !it->is_null();
    }

    class Distiller {
      public:
        explicit Distiller(ExecutionTrace& out) : out_{out} {}

        void frame(const json& f, const std::string& path, bool top) {
            if (failed(f)) return;
            const auto type = jsonio::string_at(jsonio::field(f, "type", path), jsonio::child(path, "type"));
            if (!top && (type == "CALL" || type == "SELFDESTRUCT" || type == "CREATE" || type == "CREATE2")) {
                const auto value = hex_quantity(f, "value", path);
                if (!value.is_zero()) {
                    out_.records.emplace_back(CallRecord{
                        .caller = jsonio::address_at(jsonio::field(f, "from", path), jsonio::child(path, "from")),
                        .callee = jsonio::address_at(jsonio::field(f, "to", path), jsonio::child(path, "to")),
                        .value = value,
                        .trace_index = next_++,
                    });
                }
            }

            const json empty = json::array();
            const auto calls_it = f.find("calls");
            const json& calls = calls_it == f.end() ? empty : *calls_it;
            const auto logs_it = f.find("logs");
            const json& logs = logs_it == f.end() ? empty : *logs_it;

            std::size_t log_cursor = 0;
            auto flush_logs = [&](std::size_t before_child) {
                while (log_cursor < logs.size()) {
                    const auto log_path = jsonio::element(jsonio::child(path, "logs"), log_cursor);
                    const auto& l = logs[log_cursor];
                    const auto pos_it = l.find("position");
                    const std::uint64_t position =
                        pos_it == l.end() ? 0 : jsonio::u64_at(*pos_it, jsonio::child(log_path, "position"));
                    if (position > before_child) break;
                    emit_log(l, log_path);
                    ++log_cursor;
                }
            };
            for (std::size_t c = 0; c < calls.size(); ++c) {
                flush_logs(c);
                frame(calls[c], jsonio::element(jsonio::child(path, "calls"), c), false);
            }
            flush_logs(std::numeric_limits<std::size_t>::max());
        }

      private:
        void emit_log(const json& l, const std::string& path) {
            LogRecord log;
            log.emitter = jsonio::address_at(jsonio::field(l, "address", path), jsonio::child(path, "address"));
            const auto& topics = jsonio::field(l, "topics", path);
            for (std::size_t t = 0; t < topics.size(); ++t) {
                log.topics.push_back(jsonio::word_at(topics[t], jsonio::element(jsonio::child(path, "topics"), t)));
            }
            log.data = jsonio::bytes_at(jsonio::field(l, "data", path), jsonio::child(path, "data"));
            log.trace_index = next_++;
            out_.records.emplace_back(std::move(log));
        }

        ExecutionTrace& out_;
        std::uint64_t next_{0};
    };

    void collect_emitters(const json& f, std::set<Address>& out) {
        if (failed(f)) return;
        if (const auto it = f.find("logs"); it != f.end()) {
            for (const auto& l : *it) {
                if (const auto a = Address::from_hex(l.value("address", ""))) out.insert(*a);
            }
        }
        if (const auto it = f.find("calls"); it != f.end()) {
            for (const auto& c : *it) collect_emitters(c, out);
        }
    }

}  // namespace

ExecutionTrace distill_call_tracer(const json& root, const TxHeader& header, std::map<Address, Bytes> code) {
    if (!root.is_object()) throw ParseError("frame: expected object");
    ExecutionTrace trace;
    trace.tx_hash = header.tx_hash;
    trace.gas_used = header.gas_used;
    trace.effective_gas_price = header.effective_gas_price;
    trace.sender = jsonio::address_at(jsonio::field(root, "from", ""), "from");
    const auto type = jsonio::string_at(jsonio::field(root, "type", ""), "type");
    if (type != "CREATE" && type != "CREATE2") trace.recipient = jsonio::address_at(jsonio::field(root, "to", ""), "to");
    // A reverted transaction moves no value.
    if (!failed(root)) trace.tx_value = hex_quantity(root, "value", "");
    trace.code_index = std::move(code);

    Distiller{trace}.frame(root, "", true);
    validate(trace);
    return trace;
}

std::set<Address> log_emitters(const json& root) {
    std::set<Address> out;
    collect_emitters(root, out);
    return out;
}

}  // namespace mevscope::trace
