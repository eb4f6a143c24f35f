// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <mevscope/ingest/bundle.hpp>
#include <mevscope/lifter/actlifter.hpp>

namespace mevscope::hunter {

enum class MevActivity : std::uint8_t {
    kSA,
    kCA,
    kLI,
    kSBA,
    kLBA,
    kLSA,
    kMBA,
    kLT,
    kPCA,
    kBCA,
    kHA,
    kFA,
    kNST,
    kRBA,
    kAT,
    kBN,
    kNR,
    kAC,
    kNT,
    kLA,
};

inline constexpr std::array kAllActivities{
    MevActivity::kSA,  MevActivity::kCA,  MevActivity::kLI,  MevActivity::kSBA, MevActivity::kLBA,
    MevActivity::kLSA, MevActivity::kMBA, MevActivity::kLT,  MevActivity::kPCA, MevActivity::kBCA,
    MevActivity::kHA,  MevActivity::kFA,  MevActivity::kNST, MevActivity::kRBA, MevActivity::kAT,
    MevActivity::kBN,  MevActivity::kNR,  MevActivity::kAC,  MevActivity::kNT,  MevActivity::kLA,
};

//! Abbreviation, e.g. "SA".
std::string_view to_string(MevActivity a) noexcept;
std::string_view long_name(MevActivity a) noexcept;
std::optional<MevActivity> activity_from_string(std::string_view s) noexcept;

struct Profit {
    lifter::AssetId asset;
    SignedAmount amount;

    friend bool operator==(const Profit&, const Profit&) = default;
};

struct MevFinding {
    MevActivity activity{MevActivity::kSA};
    ingest::BundleRef bundle;
    std::vector<std::size_t> txs;  // strictly increasing indices into the bundle
    std::vector<Address> contracts;  // sorted, unique
    std::vector<lifter::AssetId> assets;  // sorted, unique
    std::optional<Profit> profit;

    friend bool operator==(const MevFinding&, const MevFinding&) = default;
};

//! A chain of Swap actions, each Out asset feeding the next In asset, closing on the first In.
struct SwapCycle {
    std::vector<std::size_t> actions;  // indices into TransactionActions::actions, in chain order
    bool covers_all{false};  // every Swap of the transaction lies on this cycle
};

//! Empty when no subset of the swaps closes. Otherwise one witness: the full cycle when all
//! swaps fit into one, else one simple cycle among them.
std::vector<SwapCycle> detect_swap_cycles(const lifter::TransactionActions& tx);

//! LT, AT, BN, NR, AC, NT and LA findings of one transaction.
std::vector<MevFinding> detect_single_tx_patterns(const lifter::TransactionActions& tx, std::size_t tx_index,
                                                  const ingest::BundleRef& bundle);

//! Multi-transaction and known activities (SA, MBA, CA, PCA, LI, SBA, LBA, LSA, BCA, RBA),
//! resolved into FA and HA with the shadowed SBA/LBA/BCA witnesses removed.
std::vector<MevFinding> detect_bundle_patterns(const ingest::BundleActions& bundle);

//! Every finding of the bundle, deduplicated and canonically ordered; NST only when nothing else holds.
std::vector<MevFinding> hunt(const ingest::BundleActions& bundle);

//! Checks the witness invariants of a finding.
bool satisfies_invariants(const MevFinding& f) noexcept;

nlohmann::json to_json(const MevFinding& f);
MevFinding finding_from_json(const nlohmann::json& j, const std::string& path);

}  // namespace mevscope::hunter
