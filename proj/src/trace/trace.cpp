// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/trace/trace.hpp>

#include <algorithm>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/json_fields.hpp>

namespace mevscope::trace {

using jsonio::json;

Bytes32 LogRecord::data_word(std::size_t i) const {
    Bytes32 w;
    std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(32 * i), 32, w.bytes.begin());
    return w;
}

std::uint64_t trace_index_of(const TraceRecord& record) noexcept {
    return std::visit([](const auto& r) { return r.trace_index; }, record);
}

const Bytes* ExecutionTrace::code_of(const Address& a) const noexcept {
    const auto it = code_index.find(a);
    return it == code_index.end() ? nullptr : &it->second;
}

void validate(const ExecutionTrace& trace) {
    std::optional<std::uint64_t> previous;
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const auto& record = trace.records[i];
        const std::string where = "records[" + std::to_string(i) + "]";
        const auto index = trace_index_of(record);
        if (previous && index <= *previous) throw SchemaError(where + ".index: ordinals must be strictly increasing");
        previous = index;

        const auto* log = std::get_if<LogRecord>(&record);
        if (!log) continue;
        if (log->topics.empty() || log->topics.size() > 4) {
            throw SchemaError(where + ".topics: expected 1 to 4 topics, got " + std::to_string(log->topics.size()));
        }
        if (log->data.size() % 32 != 0) {
            throw SchemaError(where + ".data: length " + std::to_string(log->data.size()) + " is not a multiple of 32");
        }
        if (!trace.code_index.contains(log->emitter)) {
            throw SchemaError(where + ".emitter: " + log->emitter.to_hex() + " missing from code index");
        }
    }
}

namespace {

    LogRecord parse_log(const json& r, const std::string& path) {
        LogRecord log;
        log.emitter = jsonio::address_at(jsonio::field(r, "emitter", path), jsonio::child(path, "emitter"));
        const auto& topics = jsonio::field(r, "topics", path);
        const auto topics_path = jsonio::child(path, "topics");
        if (!topics.is_array()) throw ParseError(topics_path + ": expected array");
        for (std::size_t t = 0; t < topics.size(); ++t) {
            log.topics.push_back(jsonio::word_at(topics[t], jsonio::element(topics_path, t)));
        }
        log.data = jsonio::bytes_at(jsonio::field(r, "data", path), jsonio::child(path, "data"));
        log.trace_index = jsonio::u64_at(jsonio::field(r, "index", path), jsonio::child(path, "index"));
        return log;
    }

    CallRecord parse_call(const json& r, const std::string& path) {
        CallRecord call;
        call.caller = jsonio::address_at(jsonio::field(r, "caller", path), jsonio::child(path, "caller"));
        call.callee = jsonio::address_at(jsonio::field(r, "callee", path), jsonio::child(path, "callee"));
        call.value = jsonio::decimal_at(jsonio::field(r, "value", path), jsonio::child(path, "value"));
        call.trace_index = jsonio::u64_at(jsonio::field(r, "index", path), jsonio::child(path, "index"));
        return call;
    }

}  // namespace

ExecutionTrace parse_trace_fixture(std::string_view document) {
    const json doc = jsonio::parse_document(document, "trace fixture");
    const std::string root;

    ExecutionTrace trace;
    trace.tx_hash = jsonio::word_at(jsonio::field(doc, "tx_hash", root), "tx_hash");
    trace.sender = jsonio::address_at(jsonio::field(doc, "from", root), "from");
    if (const auto& to = jsonio::field(doc, "to", root); !to.is_null()) trace.recipient = jsonio::address_at(to, "to");
    trace.tx_value = jsonio::decimal_at(jsonio::field(doc, "value", root), "value");
    trace.gas_used = jsonio::u64_at(jsonio::field(doc, "gas_used", root), "gas_used");
    trace.effective_gas_price = jsonio::decimal_at(jsonio::field(doc, "effective_gas_price", root), "effective_gas_price");

    const auto& code = jsonio::field(doc, "code", root);
    if (!code.is_object()) throw ParseError("code: expected object");
    for (const auto& [key, value] : code.items()) {
        const auto path = "code." + key;
        const auto address = Address::from_hex(key);
        if (!address) throw ParseError(path + ": expected address key");
        trace.code_index.emplace(*address, jsonio::bytes_at(value, path));
    }

    const auto& records = jsonio::field(doc, "records", root);
    if (!records.is_array()) throw ParseError("records: expected array");
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto path = jsonio::element("records", i);
        const auto type = jsonio::string_at(jsonio::field(records[i], "type", path), jsonio::child(path, "type"));
        if (type == "log") {
            trace.records.emplace_back(parse_log(records[i], path));
        } else if (type == "call") {
            trace.records.emplace_back(parse_call(records[i], path));
        } else {
            throw ParseError(jsonio::child(path, "type") + ": unknown record type '" + type + "'");
        }
    }

    validate(trace);
    return trace;
}

std::string serialize_trace_fixture(const ExecutionTrace& trace) {
    json doc;
    doc["tx_hash"] = trace.tx_hash.to_hex();
    doc["from"] = trace.sender.to_hex();
    doc["to"] = trace.recipient ? json(trace.recipient->to_hex()) : json(nullptr);
    doc["value"] = trace.tx_value.to_decimal();
    doc["gas_used"] = trace.gas_used;
    doc["effective_gas_price"] = trace.effective_gas_price.to_decimal();

    json records = json::array();
    for (const auto& record : trace.records) {
        if (const auto* log = std::get_if<LogRecord>(&record)) {
            json topics = json::array();
            for (const auto& t : log->topics) topics.push_back(t.to_hex());
            records.push_back({{"type", "log"},
                               {"emitter", log->emitter.to_hex()},
                               {"topics", std::move(topics)},
                               {"data", to_hex(log->data)},
                               {"index", log->trace_index}});
        } else {
            const auto& call = std::get<CallRecord>(record);
            records.push_back({{"type", "call"},
                               {"caller", call.caller.to_hex()},
                               {"callee", call.callee.to_hex()},
                               {"value", call.value.to_decimal()},
                               {"index", call.trace_index}});
        }
    }
    doc["records"] = std::move(records);

    json code = json::object();
    for (const auto& [address, bytes] : trace.code_index) code[address.to_hex()] = to_hex(bytes);
    doc["code"] = std::move(code);
    return doc.dump(2);
}

std::vector<LogRecord> events_of(const ExecutionTrace& trace) {
    std::vector<LogRecord> out;
    for (const auto& record : trace.records) {
        if (const auto* log = std::get_if<LogRecord>(&record)) out.push_back(*log);
    }
    return out;
}

}  // namespace mevscope::trace
