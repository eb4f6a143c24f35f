// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/ingest/trace_source.hpp>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/files.hpp>
#include <mevscope/common/json_fields.hpp>
#include <mevscope/trace/call_tracer.hpp>

namespace mevscope::ingest {

using jsonio::json;

std::optional<trace::ExecutionTrace> FixtureDirTraceSource::find(const TxHash& hash) {
    const auto path = dir_ / (hash.to_hex() + ".json");
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
        return trace::parse_trace_fixture(read_file(path.string()));
    } catch (const Error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void MemoryTraceSource::add(trace::ExecutionTrace trace) {
    auto hash = trace.tx_hash;
    traces_.insert_or_assign(hash, std::move(trace));
}

std::optional<trace::ExecutionTrace> MemoryTraceSource::find(const TxHash& hash) {
    const auto it = traces_.find(hash);
    if (it == traces_.end()) return std::nullopt;
    return it->second;
}

json RpcTraceSource::call(const std::string& method, json params) {
    const json request = {{"jsonrpc", "2.0"}, {"id", next_id_++}, {"method", method}, {"params", std::move(params)}};
    json response;
    try {
        response = json::parse(transport_.post_json("/", request.dump()));
    } catch (const json::parse_error&) {
        throw AdapterError(method + ": response is not JSON");
    }
    if (response.contains("error")) {
        throw AdapterError(method + ": " + response["error"].dump());
    }
    if (!response.contains("result")) throw AdapterError(method + ": missing field result");
    return response["result"];
}

std::optional<trace::ExecutionTrace> RpcTraceSource::find(const TxHash& hash) {
    const auto receipt = call("eth_getTransactionReceipt", json::array({hash.to_hex()}));
    if (receipt.is_null()) return std::nullopt;
    try {
        trace::TxHeader header;
        header.tx_hash = hash;
        header.gas_used = jsonio::u64_at(jsonio::field(receipt, "gasUsed", "receipt"), "receipt.gasUsed");
        const auto price_text = jsonio::string_at(jsonio::field(receipt, "effectiveGasPrice", "receipt"),
                                                  "receipt.effectiveGasPrice");
        const auto price = Uint256::from_hex(price_text);
        if (!price) throw ParseError("receipt.effectiveGasPrice: expected hex quantity");
        header.effective_gas_price = *price;
        const auto block = jsonio::string_at(jsonio::field(receipt, "blockNumber", "receipt"), "receipt.blockNumber");

        const auto frame = call("debug_traceTransaction",
                                json::array({hash.to_hex(), {{"tracer", "callTracer"}, {"tracerConfig", {{"withLog", true}}}}}));
        std::map<Address, Bytes> code;
        for (const auto& emitter : trace::log_emitters(frame)) {
            const auto text = call("eth_getCode", json::array({emitter.to_hex(), block}));
            code.emplace(emitter, jsonio::bytes_at(text, "eth_getCode"));
        }
        return trace::distill_call_tracer(frame, header, std::move(code));
    } catch (const ParseError& e) {
        throw AdapterError(std::string{"node RPC: "} + e.what());
    }
}

std::vector<trace::ExecutionTrace> fetch_traces(const Bundle& bundle, TraceSource& source) {
    std::vector<trace::ExecutionTrace> traces;
    std::vector<std::string> missing;
    for (const auto& tx : bundle.txs) {
        auto t = source.find(tx.hash);
        if (!t) {
            missing.push_back(tx.hash.to_hex());
            continue;
        }
        traces.push_back(std::move(*t));
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& h : missing) list += (list.empty() ? "" : ", ") + h;
        throw IncompleteBundleError("bundle " + BundleRef{bundle.block_number, bundle.bundle_index}.to_string() +
                                    ": missing traces for " + list);
    }
    return traces;
}

BundleActions lift_bundle(const Bundle& bundle, TraceSource& source, const registry::EventRegistry& registry,
                          lifter::MatchConfig config) {
    BundleActions out;
    out.bundle = bundle;
    for (const auto& t : fetch_traces(bundle, source)) out.per_tx.push_back(lifter::lift_transaction(t, registry, config));
    check_alignment(out);
    return out;
}

}  // namespace mevscope::ingest
