// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <mevscope/common/types.hpp>
#include <mevscope/lifter/actlifter.hpp>
#include <mevscope/registry/registry.hpp>
#include <mevscope/trace/trace.hpp>

namespace mevscope::test {

//! Deterministic address whose low eight bytes hold n.
Address addr(std::uint64_t n);
Address addr(std::string_view hex);
TxHash tx_hash(std::uint64_t n);
Bytes32 word(const Uint256& v);
Bytes32 word(const Address& a);
//! Two's-complement encoding of -v.
Bytes32 negative_word(const Uint256& v);
Bytes32 topic(std::string_view declaration);

//! Bytecode stubs carrying PUSH4 selector immediates.
Bytes erc20_code();
Bytes erc721_code();
Bytes plain_code();

std::string source_path(std::string_view relative);
const registry::EventRegistry& seed_registry();

//! Fluent construction of distilled traces with auto-incrementing ordinals.
class TraceBuilder {
  public:
    TraceBuilder(std::uint64_t hash_seed, const Address& sender, std::optional<Address> recipient,
                 const Uint256& value = Uint256{});

    TraceBuilder& code(const Address& contract, Bytes bytecode);
    //! Transfer(address indexed, address indexed, uint256) emitted by `token`.
    TraceBuilder& transfer(const Address& token, const Address& from, const Address& to, const Uint256& value);
    //! Transfer with every parameter indexed, the ERC721 layout.
    TraceBuilder& transfer_indexed(const Address& token, const Address& from, const Address& to, const Uint256& id);
    TraceBuilder& log(const Address& emitter, std::vector<Bytes32> topics, std::vector<Bytes32> data);
    TraceBuilder& call(const Address& caller, const Address& callee, const Uint256& value);
    TraceBuilder& gas(std::uint64_t used, const Uint256& price);

    [[nodiscard]] trace::ExecutionTrace build() const;

  private:
    void ensure_code(const Address& a);

    trace::ExecutionTrace trace_;
    std::uint64_t next_{0};
};

//! Reference "first two transfers" pairing: the lexicographically first (i, j), i < j,
//! where one account is on opposite sides of the two transfers and the assets differ.
std::optional<std::pair<std::size_t, std::size_t>> naive_pair(const std::vector<lifter::AssetTransfer>& transfers);

}  // namespace mevscope::test
