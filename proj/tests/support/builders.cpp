// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "builders.hpp"

#include <stdexcept>

#include <mevscope/common/keccak.hpp>

namespace mevscope::test {

Address addr(std::uint64_t n) {
    Address a;
    for (int i = 0; i < 8; ++i) a.bytes[19 - i] = static_cast<std::uint8_t>(n >> (8 * i));
    a.bytes[0] = 0xaa;  // never the zero address
    return a;
}

Address addr(std::string_view hex) {
    const auto a = Address::from_hex(hex);
    if (!a) throw std::invalid_argument("bad address literal");
    return *a;
}

TxHash tx_hash(std::uint64_t n) {
    return keccak256("tx-" + std::to_string(n));
}

Bytes32 word(const Uint256& v) { return Bytes32::from_uint(v); }
Bytes32 word(const Address& a) { return Bytes32::from_address(a); }
Bytes32 negative_word(const Uint256& v) { return Bytes32::from_uint(v.negated()); }
Bytes32 topic(std::string_view declaration) { return event_signature_hash(declaration); }

namespace {

    Bytes with_selectors(std::initializer_list<std::uint32_t> selectors) {
        Bytes code{0x60, 0x80, 0x60, 0x40, 0x52};
        for (auto s : selectors) {
            code.push_back(0x80);
            code.push_back(0x63);
            for (int i = 3; i >= 0; --i) code.push_back(static_cast<std::uint8_t>(s >> (8 * i)));
            code.push_back(0x14);
        }
        code.push_back(0x00);
        return code;
    }

}  // namespace

Bytes erc20_code() { return with_selectors({0x18160ddd, 0x70a08231, 0xa9059cbb, 0x23b872dd, 0x095ea7b3, 0xdd62ed3e}); }
Bytes erc721_code() {
    return with_selectors({0x70a08231, 0x6352211e, 0x42842e0e, 0xb88d4fde, 0x081812fc, 0xa22cb465, 0xe985e9c5});
}
Bytes plain_code() { return with_selectors({0x022c0d9f, 0x0902f1ac}); }

std::string source_path(std::string_view relative) {
    return std::string{MEVSCOPE_SOURCE_DIR} + "/" + std::string{relative};
}

const registry::EventRegistry& seed_registry() {
    static const auto r = registry::EventRegistry::load_file(source_path("data/registry/seed.json"));
    return r;
}

TraceBuilder::TraceBuilder(std::uint64_t hash_seed, const Address& sender, std::optional<Address> recipient,
                           const Uint256& value) {
    trace_.tx_hash = tx_hash(hash_seed);
    trace_.sender = sender;
    trace_.recipient = recipient;
    trace_.tx_value = value;
    trace_.gas_used = 21000;
    trace_.effective_gas_price = Uint256{1'000'000'000};
}

TraceBuilder& TraceBuilder::code(const Address& contract, Bytes bytecode) {
    trace_.code_index[contract] = std::move(bytecode);
    return *this;
}

void TraceBuilder::ensure_code(const Address& a) {
    if (!trace_.code_index.contains(a)) trace_.code_index[a] = plain_code();
}

TraceBuilder& TraceBuilder::transfer(const Address& token, const Address& from, const Address& to,
                                     const Uint256& value) {
    if (!trace_.code_index.contains(token)) trace_.code_index[token] = erc20_code();
    return log(token, {registry::transfer_event_hash(), word(from), word(to)}, {word(value)});
}

TraceBuilder& TraceBuilder::transfer_indexed(const Address& token, const Address& from, const Address& to,
                                             const Uint256& id) {
    if (!trace_.code_index.contains(token)) trace_.code_index[token] = erc721_code();
    return log(token, {registry::transfer_event_hash(), word(from), word(to), word(id)}, {});
}

TraceBuilder& TraceBuilder::log(const Address& emitter, std::vector<Bytes32> topics, std::vector<Bytes32> data) {
    ensure_code(emitter);
    trace::LogRecord record{emitter, std::move(topics), {}, next_++};
    for (const auto& w : data) record.data.insert(record.data.end(), w.bytes.begin(), w.bytes.end());
    trace_.records.emplace_back(std::move(record));
    return *this;
}

TraceBuilder& TraceBuilder::call(const Address& caller, const Address& callee, const Uint256& value) {
    trace_.records.emplace_back(trace::CallRecord{caller, callee, value, next_++});
    return *this;
}

TraceBuilder& TraceBuilder::gas(std::uint64_t used, const Uint256& price) {
    trace_.gas_used = used;
    trace_.effective_gas_price = price;
    return *this;
}

trace::ExecutionTrace TraceBuilder::build() const {
    trace::validate(trace_);
    return trace_;
}

std::optional<std::pair<std::size_t, std::size_t>> naive_pair(const std::vector<lifter::AssetTransfer>& ts) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            if (ts[i].asset == ts[j].asset) continue;
            if (ts[i].to == ts[j].from || ts[i].from == ts[j].to) return std::pair{i, j};
        }
    }
    return std::nullopt;
}

}  // namespace mevscope::test
