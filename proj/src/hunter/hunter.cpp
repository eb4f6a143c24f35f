// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/hunter/hunter.hpp>

#include <algorithm>
#include <map>
#include <set>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/json_fields.hpp>

namespace mevscope::hunter {

using jsonio::json;
using lifter::AssetId;
using lifter::DefiAction;
using lifter::TransactionActions;
using registry::ActionType;

namespace {

    struct Names {
        MevActivity activity;
        std::string_view abbrev;
        std::string_view name;
    };

    constexpr std::array kNames{
        Names{MevActivity::kSA, "SA", "Sandwich Attack"},
        Names{MevActivity::kCA, "CA", "Cyclic Arbitrage"},
        Names{MevActivity::kLI, "LI", "Liquidation"},
        Names{MevActivity::kSBA, "SBA", "Swap Backrun Arbitrage"},
        Names{MevActivity::kLBA, "LBA", "Liquidity Backrun Arbitrage"},
        Names{MevActivity::kLSA, "LSA", "Liquidity Sandwich Arbitrage"},
        Names{MevActivity::kMBA, "MBA", "Multi-layered Burger Arbitrage"},
        Names{MevActivity::kLT, "LT", "Liquidity-swap Trade"},
        Names{MevActivity::kPCA, "PCA", "Partial Cyclic Arbitrage"},
        Names{MevActivity::kBCA, "BCA", "Backrun Cyclic Arbitrage"},
        Names{MevActivity::kHA, "HA", "Hybrid Arbitrage"},
        Names{MevActivity::kFA, "FA", "Failed Arbitrage"},
        Names{MevActivity::kNST, "NST", "Non-cyclic Swap Trade"},
        Names{MevActivity::kRBA, "RBA", "Rebasing Backrun Arbitrage"},
        Names{MevActivity::kAT, "AT", "Airdrop-swap Trade"},
        Names{MevActivity::kBN, "BN", "Bulk NFT-Minting"},
        Names{MevActivity::kNR, "NR", "NFT Reforging"},
        Names{MevActivity::kAC, "AC", "Airdrop Claiming"},
        Names{MevActivity::kNT, "NT", "NFT-Minting-swap Trade"},
        Names{MevActivity::kLA, "LA", "Loan-powered Arbitrage"},
    };

    const Names& names_of(MevActivity a) noexcept { return kNames[static_cast<std::size_t>(a)]; }

    //! A Swap action with both legs, located in the bundle.
    struct SwapRef {
        std::size_t tx;
        const DefiAction* action;
        [[nodiscard]] const Address& contract() const { return action->contract; }
        [[nodiscard]] const lifter::ActionParam& in() const { return *action->in_param(); }
        [[nodiscard]] const lifter::ActionParam& out() const { return *action->out_param(); }
    };

    bool is_swap(const DefiAction& a) {
        return a.type == ActionType::kSwap && a.in_param() != nullptr && a.out_param() != nullptr;
    }

    std::vector<SwapRef> swaps_of(const TransactionActions& tx, std::size_t index) {
        std::vector<SwapRef> out;
        for (const auto& a : tx.actions) {
            if (is_swap(a)) out.push_back({index, &a});
        }
        return out;
    }

    bool has_swap_on(const TransactionActions& tx, const Address& m) {
        return std::any_of(tx.actions.begin(), tx.actions.end(),
                           [&](const DefiAction& a) { return is_swap(a) && a.contract == m; });
    }

    bool has_swap_on(const TransactionActions& tx, const Address& m, const AssetId& in, const AssetId& out) {
        return std::any_of(tx.actions.begin(), tx.actions.end(), [&](const DefiAction& a) {
            return is_swap(a) && a.contract == m && a.in_param()->asset == in && a.out_param()->asset == out;
        });
    }

    const lifter::ActionParam* first_out(const DefiAction& a) {
        for (const auto& p : a.params) {
            if (p.direction == lifter::Direction::kOut) return &p;
        }
        return nullptr;
    }

    //! Collects witness parts and produces a finding with sorted, unique members.
    class WitnessBuilder {
      public:
        WitnessBuilder(MevActivity activity, const ingest::BundleRef& bundle) : activity_{activity}, bundle_{bundle} {}

        WitnessBuilder& tx(std::size_t i) {
            txs_.insert(i);
            return *this;
        }
        WitnessBuilder& action(const DefiAction& a) {
            contracts_.insert(a.contract);
            for (const auto& p : a.params) assets_.insert(p.asset);
            if (a.params.empty() && (a.type == ActionType::kRebasing || a.type == ActionType::kNftMinting ||
                                     a.type == ActionType::kNftBurning)) {
                assets_.insert(AssetId::token(a.contract));
            }
            return *this;
        }
        WitnessBuilder& profit(Profit p) {
            profit_ = std::move(p);
            return *this;
        }

        [[nodiscard]] MevFinding build() const {
            return MevFinding{activity_,
                              bundle_,
                              {txs_.begin(), txs_.end()},
                              {contracts_.begin(), contracts_.end()},
                              {assets_.begin(), assets_.end()},
                              profit_};
        }

      private:
        MevActivity activity_;
        ingest::BundleRef bundle_;
        std::set<std::size_t> txs_;
        std::set<Address> contracts_;
        std::set<AssetId> assets_;
        std::optional<Profit> profit_;
    };

    Profit net_profit(const AssetId& pivot, const Uint256& gained, const Uint256& spent) {
        return {pivot, SignedAmount::difference(gained, spent)};
    }

    //! SA and MBA. For each closing swap Y→X on m by s, the opening swap is searched in the
    //! nearest earlier transaction of s; every transaction in between is by another sender.
    void sandwich_family(const ingest::BundleActions& b, std::vector<MevFinding>& out) {
        const auto& txs = b.per_tx;
        for (std::size_t back = 0; back < txs.size(); ++back) {
            const auto& s = txs[back].sender;
            for (const auto& closing : swaps_of(txs[back], back)) {
                std::optional<std::size_t> front;
                for (std::size_t f = back; f-- > 0;) {
                    if (txs[f].sender == s) {
                        front = f;
                        break;
                    }
                }
                if (!front) continue;
                const auto& x = closing.out().asset;
                const auto& y = closing.in().asset;
                const auto& m = closing.contract();
                std::optional<SwapRef> opening;
                for (const auto& sw : swaps_of(txs[*front], *front)) {
                    if (sw.contract() == m && sw.in().asset == x && sw.out().asset == y) {
                        opening = sw;
                        break;
                    }
                }
                if (!opening) continue;
                std::vector<std::size_t> victims;
                for (auto v = *front + 1; v < back; ++v) {
                    if (has_swap_on(txs[v], m, x, y)) victims.push_back(v);
                }
                if (victims.empty()) continue;
                WitnessBuilder w{victims.size() >= 2 ? MevActivity::kMBA : MevActivity::kSA, b.ref()};
                w.tx(*front).tx(back).action(*opening->action).action(*closing.action);
                for (const auto v : victims) w.tx(v);
                w.profit(net_profit(x, closing.out().amount, opening->in().amount));
                out.push_back(w.build());
            }
        }
    }

    Profit cycle_profit(const TransactionActions& tx, const SwapCycle& cycle) {
        const auto pivot = tx.actions[cycle.actions.front()].in_param()->asset;
        Uint256 gained;
        Uint256 spent;
        for (const auto& a : tx.actions) {
            if (!is_swap(a)) continue;
            if (a.out_param()->asset == pivot) gained = gained.checked_add(a.out_param()->amount);
            if (a.in_param()->asset == pivot) spent = spent.checked_add(a.in_param()->amount);
        }
        return net_profit(pivot, gained, spent);
    }

    void cycles(const ingest::BundleActions& b, std::vector<MevFinding>& out) {
        for (std::size_t i = 0; i < b.per_tx.size(); ++i) {
            const auto& tx = b.per_tx[i];
            for (const auto& cycle : detect_swap_cycles(tx)) {
                WitnessBuilder w{cycle.covers_all ? MevActivity::kCA : MevActivity::kPCA, b.ref()};
                w.tx(i);
                for (const auto a : cycle.actions) w.action(tx.actions[a]);
                if (cycle.covers_all) w.profit(cycle_profit(tx, cycle));
                out.push_back(w.build());
            }
        }
    }

    void liquidations(const ingest::BundleActions& b, std::vector<MevFinding>& out) {
        for (std::size_t i = 0; i < b.per_tx.size(); ++i) {
            WitnessBuilder w{MevActivity::kLI, b.ref()};
            bool any = false;
            for (const auto& a : b.per_tx[i].actions) {
                if (a.type != ActionType::kLiquidation) continue;
                w.tx(i).action(a);
                any = true;
            }
            if (any) out.push_back(w.build());
        }
    }

    void swap_backruns(const ingest::BundleActions& b, std::vector<MevFinding>& out) {
        const auto& txs = b.per_tx;
        for (std::size_t i = 0; i + 1 < txs.size(); ++i) {
            if (txs[i].sender == txs[i + 1].sender) continue;
            for (const auto& lead : swaps_of(txs[i], i)) {
                for (const auto& follow : swaps_of(txs[i + 1], i + 1)) {
                    if (follow.contract() != lead.contract() || follow.in().asset != lead.out().asset ||
                        follow.out().asset != lead.in().asset) {
                        continue;
                    }
                    out.push_back(WitnessBuilder{MevActivity::kSBA, b.ref()}
                                      .tx(i)
                                      .tx(i + 1)
                                      .action(*lead.action)
                                      .action(*follow.action)
                                      .build());
                }
            }
        }
    }

    bool is_liquidity(const DefiAction& a) {
        return a.type == ActionType::kAddLiquidity || a.type == ActionType::kRemoveLiquidity;
    }

    void liquidity_backruns(const ingest::BundleActions& b, std::vector<MevFinding>& out) {
        const auto& txs = b.per_tx;
        for (std::size_t i = 0; i < txs.size(); ++i) {
            for (const auto& lead : txs[i].actions) {
                if (!is_liquidity(lead)) continue;
                for (auto j = i + 1; j < txs.size(); ++j) {
                    if (txs[j].sender == txs[i].sender) continue;
                    const auto follow = std::find_if(txs[j].actions.begin(), txs[j].actions.end(), [&](const DefiAction& a) {
                        return is_swap(a) && a.contract == lead.contract;
                    });
                    if (follow == txs[j].actions.end()) continue;
                    out.push_back(WitnessBuilder{MevActivity::kLBA, b.ref()}.tx(i).tx(j).action(lead).action(*follow).build());
                    break;
                }
            }
        }
    }

    void liquidity_sandwiches(const ingest::BundleActions& b, std::vector<MevFinding>& out) {
        const auto& txs = b.per_tx;
        for (std::size_t back = 0; back < txs.size(); ++back) {
            const auto& s = txs[back].sender;
            for (const auto& remove : txs[back].actions) {
                if (remove.type != ActionType::kRemoveLiquidity) continue;
                std::optional<std::size_t> front;
                for (std::size_t f = back; f-- > 0;) {
                    if (txs[f].sender == s) {
                        front = f;
                        break;
                    }
                }
                if (!front) continue;
                const auto add = std::find_if(txs[*front].actions.begin(), txs[*front].actions.end(), [&](const DefiAction& a) {
                    return a.type == ActionType::kAddLiquidity && a.contract == remove.contract;
                });
                if (add == txs[*front].actions.end()) continue;
                WitnessBuilder w{MevActivity::kLSA, b.ref()};
                bool victim = false;
                for (auto v = *front + 1; v < back; ++v) {
                    if (!has_swap_on(txs[v], remove.contract)) continue;
                    w.tx(v);
                    victim = true;
                }
                if (!victim) continue;
                out.push_back(w.tx(*front).tx(back).action(*add).action(remove).build());
            }
        }
    }

    void backrun_cycles(const ingest::BundleActions& b, const std::vector<MevFinding>& found, std::vector<MevFinding>& out) {
        const auto& txs = b.per_tx;
        for (const auto& ca : found) {
            if (ca.activity != MevActivity::kCA) continue;
            const auto j = ca.txs.front();
            for (std::size_t i = j; i-- > 0;) {
                if (txs[i].sender == txs[j].sender) continue;
                const auto lead = std::find_if(txs[i].actions.begin(), txs[i].actions.end(),
                                               [](const DefiAction& a) { return is_swap(a) || is_liquidity(a); });
                if (lead == txs[i].actions.end()) continue;
                auto f = WitnessBuilder{MevActivity::kBCA, b.ref()}.tx(i).tx(j).action(*lead).build();
                std::set<Address> contracts{f.contracts.begin(), f.contracts.end()};
                contracts.insert(ca.contracts.begin(), ca.contracts.end());
                std::set<AssetId> assets{f.assets.begin(), f.assets.end()};
                assets.insert(ca.assets.begin(), ca.assets.end());
                f.contracts.assign(contracts.begin(), contracts.end());
                f.assets.assign(assets.begin(), assets.end());
                f.profit = ca.profit;
                out.push_back(std::move(f));
                break;
            }
        }
    }

    void rebasing_backruns(const ingest::BundleActions& b, std::vector<MevFinding>& out) {
        const auto& txs = b.per_tx;
        for (std::size_t i = 0; i < txs.size(); ++i) {
            for (const auto& rebase : txs[i].actions) {
                if (rebase.type != ActionType::kRebasing) continue;
                const auto token = AssetId::token(rebase.contract);
                for (auto j = i + 1; j < txs.size(); ++j) {
                    const auto sw = std::find_if(txs[j].actions.begin(), txs[j].actions.end(), [&](const DefiAction& a) {
                        return is_swap(a) && (a.in_param()->asset == token || a.out_param()->asset == token);
                    });
                    if (sw == txs[j].actions.end()) continue;
                    WitnessBuilder w{MevActivity::kRBA, b.ref()};
                    w.tx(i).tx(j).action(rebase).action(*sw);
                    if (sw->in_param()->asset == token) {
                        w.profit({sw->out_param()->asset, SignedAmount{false, sw->out_param()->amount}});
                    }
                    out.push_back(w.build());
                    break;
                }
            }
        }
    }

    bool contains_tx(const MevFinding& f, std::size_t tx) {
        return std::binary_search(f.txs.begin(), f.txs.end(), tx);
    }

    bool is_negative(const MevFinding& f) { return f.profit && f.profit->amount.is_negative(); }

    //! Failed SA/MBA/CA become FA; shadowed SBA, LBA and BCA witnesses are dropped; HA is added.
    std::vector<MevFinding> resolve(std::vector<MevFinding> raw) {
        for (auto& f : raw) {
            const bool attack = f.activity == MevActivity::kSA || f.activity == MevActivity::kMBA ||
                                f.activity == MevActivity::kCA;
            if (attack && is_negative(f)) f.activity = MevActivity::kFA;
        }

        const auto cycle_tx = [&](std::size_t tx, bool failed) {
            return std::any_of(raw.begin(), raw.end(), [&](const MevFinding& f) {
                const bool cyclic = f.activity == MevActivity::kCA ||
                                    (f.activity == MevActivity::kFA && f.txs.size() == 1);
                return cyclic && contains_tx(f, tx) && (!failed || f.activity == MevActivity::kFA);
            });
        };
        const auto inside_sandwich = [&](const MevFinding& sba) {
            return std::any_of(raw.begin(), raw.end(), [&](const MevFinding& f) {
                const bool family = f.activity == MevActivity::kSA || f.activity == MevActivity::kMBA ||
                                    (f.activity == MevActivity::kFA && f.txs.size() >= 3);
                return family && f.txs.front() <= sba.txs.front() && sba.txs.back() <= f.txs.back() &&
                       f.contracts == sba.contracts;
            });
        };
        const auto inside_lsa = [&](const MevFinding& lba) {
            return std::any_of(raw.begin(), raw.end(), [&](const MevFinding& f) {
                return f.activity == MevActivity::kLSA && contains_tx(f, lba.txs.front()) && contains_tx(f, lba.txs.back()) &&
                       std::includes(f.contracts.begin(), f.contracts.end(), lba.contracts.begin(), lba.contracts.end());
            });
        };

        std::vector<MevFinding> kept;
        for (const auto& f : raw) {
            switch (f.activity) {
                case MevActivity::kBCA:
                    if (cycle_tx(f.txs.back(), true)) continue;
                    break;
                case MevActivity::kSBA:
                    if (cycle_tx(f.txs.back(), false) || inside_sandwich(f)) continue;
                    break;
                case MevActivity::kLBA:
                    if (inside_lsa(f)) continue;
                    break;
                default:
                    break;
            }
            kept.push_back(f);
        }

        std::vector<MevFinding> hybrids;
        std::set<std::size_t> all_txs;
        for (const auto& f : kept) all_txs.insert(f.txs.begin(), f.txs.end());
        for (const auto tx : all_txs) {
            std::set<MevActivity> kinds;
            std::vector<const MevFinding*> parts;
            for (const auto& f : kept) {
                const bool known_kind = f.activity == MevActivity::kSA || f.activity == MevActivity::kCA ||
                                        f.activity == MevActivity::kLI;
                if (known_kind && contains_tx(f, tx)) {
                    kinds.insert(f.activity);
                    parts.push_back(&f);
                }
            }
            if (kinds.size() < 2) continue;
            MevFinding h{MevActivity::kHA, parts.front()->bundle, {}, {}, {}, std::nullopt};
            std::set<std::size_t> txs;
            std::set<Address> contracts;
            std::set<AssetId> assets;
            for (const auto* p : parts) {
                txs.insert(p->txs.begin(), p->txs.end());
                contracts.insert(p->contracts.begin(), p->contracts.end());
                assets.insert(p->assets.begin(), p->assets.end());
            }
            h.txs.assign(txs.begin(), txs.end());
            h.contracts.assign(contracts.begin(), contracts.end());
            h.assets.assign(assets.begin(), assets.end());
            hybrids.push_back(std::move(h));
        }
        kept.insert(kept.end(), hybrids.begin(), hybrids.end());
        return kept;
    }

    bool finding_less(const MevFinding& a, const MevFinding& b) {
        if (a.activity != b.activity) return a.activity < b.activity;
        if (a.txs != b.txs) return a.txs < b.txs;
        if (a.contracts != b.contracts) return a.contracts < b.contracts;
        if (a.assets != b.assets) return a.assets < b.assets;
        const auto key = [](const MevFinding& f) {
            return f.profit ? std::tuple{1, f.profit->asset, f.profit->amount.is_negative(), f.profit->amount.magnitude}
                            : std::tuple{0, AssetId{}, false, Uint256{}};
        };
        return key(a) < key(b);
    }

    void canonicalize(std::vector<MevFinding>& findings) {
        std::sort(findings.begin(), findings.end(), finding_less);
        findings.erase(std::unique(findings.begin(), findings.end()), findings.end());
    }

    AssetId asset_from_string(const std::string& s, const std::string& path) {
        if (s == "ETH") return AssetId::ether();
        const auto a = Address::from_hex(s);
        if (!a) throw ParseError(path + ": expected \"ETH\" or an address");
        return AssetId::token(*a);
    }

}  // namespace

std::string_view to_string(MevActivity a) noexcept { return names_of(a).abbrev; }
std::string_view long_name(MevActivity a) noexcept { return names_of(a).name; }

std::optional<MevActivity> activity_from_string(std::string_view s) noexcept {
    for (const auto& n : kNames) {
        if (n.abbrev == s) return n.activity;
    }
    return std::nullopt;
}

std::vector<MevFinding> detect_single_tx_patterns(const TransactionActions& tx, std::size_t i,
                                                  const ingest::BundleRef& bundle) {
    std::vector<MevFinding> out;
    const auto& acts = tx.actions;

    {
        WitnessBuilder w{MevActivity::kLT, bundle};
        bool any = false;
        for (const auto& sw : acts) {
            if (!is_swap(sw)) continue;
            for (const auto& liq : acts) {
                if (!is_liquidity(liq) || liq.contract != sw.contract) continue;
                w.tx(i).action(sw).action(liq);
                any = true;
            }
        }
        if (any) out.push_back(w.build());
    }

    for (std::size_t p = 0; p < acts.size(); ++p) {
        const auto& lead = acts[p];
        const bool airdrop = lead.type == ActionType::kAirdrop;
        const bool loan = lead.type == ActionType::kBorrowing || lead.type == ActionType::kLeverage;
        const bool mint = lead.type == ActionType::kNftMinting;
        const bool burn = lead.type == ActionType::kNftBurning;
        for (auto q = p + 1; q < acts.size(); ++q) {
            const auto& follow = acts[q];
            if ((airdrop || loan) && is_swap(follow)) {
                const auto* got = first_out(lead);
                if (got != nullptr && follow.in_param()->asset == got->asset) {
                    out.push_back(WitnessBuilder{airdrop ? MevActivity::kAT : MevActivity::kLA, bundle}
                                      .tx(i)
                                      .action(lead)
                                      .action(follow)
                                      .build());
                    break;
                }
            }
            if (mint && is_swap(follow) && follow.in_param()->asset.contract == lead.contract) {
                out.push_back(WitnessBuilder{MevActivity::kNT, bundle}.tx(i).action(lead).action(follow).build());
                break;
            }
            if (burn && follow.type == ActionType::kNftMinting && follow.contract == lead.contract &&
                follow.token_id == lead.token_id) {
                out.push_back(WitnessBuilder{MevActivity::kNR, bundle}.tx(i).action(lead).action(follow).build());
                break;
            }
        }
    }

    const bool nft_only = std::all_of(acts.begin(), acts.end(), [](const DefiAction& a) {
        return a.type == ActionType::kNftMinting || a.type == ActionType::kNftBurning;
    });
    if (nft_only) {
        std::map<Address, std::size_t> mints;
        for (const auto& a : acts) {
            if (a.type == ActionType::kNftMinting) ++mints[a.contract];
        }
        for (const auto& [contract, count] : mints) {
            if (count < 2) continue;
            WitnessBuilder w{MevActivity::kBN, bundle};
            w.tx(i);
            for (const auto& a : acts) {
                if (a.type == ActionType::kNftMinting && a.contract == contract) w.action(a);
            }
            out.push_back(w.build());
        }
    }

    if (!acts.empty() &&
        std::all_of(acts.begin(), acts.end(), [](const DefiAction& a) { return a.type == ActionType::kAirdrop; })) {
        WitnessBuilder w{MevActivity::kAC, bundle};
        w.tx(i);
        for (const auto& a : acts) w.action(a);
        out.push_back(w.build());
    }
    return out;
}

std::vector<MevFinding> detect_bundle_patterns(const ingest::BundleActions& b) {
    std::vector<MevFinding> raw;
    sandwich_family(b, raw);
    cycles(b, raw);
    liquidations(b, raw);
    swap_backruns(b, raw);
    liquidity_backruns(b, raw);
    liquidity_sandwiches(b, raw);
    backrun_cycles(b, std::vector<MevFinding>{raw}, raw);
    rebasing_backruns(b, raw);
    auto out = resolve(std::move(raw));
    canonicalize(out);
    return out;
}

std::vector<MevFinding> hunt(const ingest::BundleActions& b) {
    auto out = detect_bundle_patterns(b);
    for (std::size_t i = 0; i < b.per_tx.size(); ++i) {
        auto single = detect_single_tx_patterns(b.per_tx[i], i, b.ref());
        out.insert(out.end(), single.begin(), single.end());
    }
    if (out.empty()) {
        WitnessBuilder w{MevActivity::kNST, b.ref()};
        bool any = false;
        bool swaps_only = true;
        for (std::size_t i = 0; i < b.per_tx.size(); ++i) {
            for (const auto& a : b.per_tx[i].actions) {
                if (!is_swap(a)) {
                    swaps_only = false;
                    break;
                }
                w.tx(i).action(a);
                any = true;
            }
        }
        if (any && swaps_only) out.push_back(w.build());
    }
    canonicalize(out);
    return out;
}

bool satisfies_invariants(const MevFinding& f) noexcept {
    if (f.txs.empty()) return false;
    if (std::adjacent_find(f.txs.begin(), f.txs.end(), std::greater_equal<>{}) != f.txs.end()) return false;
    switch (f.activity) {
        case MevActivity::kSA:
        case MevActivity::kMBA:
        case MevActivity::kLSA:
            if (f.txs.size() < 3) return false;
            if (f.activity == MevActivity::kMBA && f.txs.size() < 4) return false;
            break;
        case MevActivity::kCA:
        case MevActivity::kPCA:
        case MevActivity::kLI:
        case MevActivity::kLT:
        case MevActivity::kAT:
        case MevActivity::kBN:
        case MevActivity::kNR:
        case MevActivity::kAC:
        case MevActivity::kNT:
        case MevActivity::kLA:
            if (f.txs.size() != 1) return false;
            break;
        case MevActivity::kSBA:
            if (f.txs.size() != 2 || f.txs[1] != f.txs[0] + 1) return false;
            break;
        case MevActivity::kLBA:
        case MevActivity::kBCA:
        case MevActivity::kRBA:
            if (f.txs.size() != 2) return false;
            break;
        case MevActivity::kFA:
            if (!f.profit || !f.profit->amount.is_negative()) return false;
            break;
        case MevActivity::kHA:
        case MevActivity::kNST:
            break;
    }
    return std::is_sorted(f.contracts.begin(), f.contracts.end()) &&
           std::adjacent_find(f.contracts.begin(), f.contracts.end()) == f.contracts.end() &&
           std::is_sorted(f.assets.begin(), f.assets.end()) &&
           std::adjacent_find(f.assets.begin(), f.assets.end()) == f.assets.end();
}

json to_json(const MevFinding& f) {
    json contracts = json::array();
    for (const auto& c : f.contracts) contracts.push_back(c.to_hex());
    json assets = json::array();
    for (const auto& a : f.assets) assets.push_back(a.to_string());
    json j = {{"block", f.bundle.block_number},
              {"bundle_index", f.bundle.bundle_index},
              {"activity", std::string{to_string(f.activity)}},
              {"witness", {{"txs", f.txs}, {"contracts", std::move(contracts)}, {"assets", std::move(assets)}}}};
    if (f.profit) j["profit"] = {{"asset", f.profit->asset.to_string()}, {"amount", f.profit->amount.to_decimal()}};
    return j;
}

MevFinding finding_from_json(const json& j, const std::string& path) {
    MevFinding f;
    f.bundle.block_number = jsonio::u64_at(jsonio::field(j, "block", path), jsonio::child(path, "block"));
    f.bundle.bundle_index = jsonio::u64_at(jsonio::field(j, "bundle_index", path), jsonio::child(path, "bundle_index"));
    const auto activity_path = jsonio::child(path, "activity");
    const auto activity = activity_from_string(jsonio::string_at(jsonio::field(j, "activity", path), activity_path));
    if (!activity) throw ParseError(activity_path + ": unknown activity");
    f.activity = *activity;
    const auto w_path = jsonio::child(path, "witness");
    const auto& w = jsonio::field(j, "witness", path);
    const auto list = [&](std::string_view key) -> const json& {
        const auto& v = jsonio::field(w, key, w_path);
        if (!v.is_array()) throw ParseError(jsonio::child(w_path, key) + ": expected array");
        return v;
    };
    const auto& txs = list("txs");
    for (std::size_t i = 0; i < txs.size(); ++i) {
        f.txs.push_back(jsonio::u64_at(txs[i], jsonio::element(jsonio::child(w_path, "txs"), i)));
    }
    const auto& contracts = list("contracts");
    for (std::size_t i = 0; i < contracts.size(); ++i) {
        f.contracts.push_back(jsonio::address_at(contracts[i], jsonio::element(jsonio::child(w_path, "contracts"), i)));
    }
    const auto& assets = list("assets");
    for (std::size_t i = 0; i < assets.size(); ++i) {
        const auto p = jsonio::element(jsonio::child(w_path, "assets"), i);
        f.assets.push_back(asset_from_string(jsonio::string_at(assets[i], p), p));
    }
    if (j.contains("profit")) {
        const auto p_path = jsonio::child(path, "profit");
        const auto& p = j["profit"];
        const auto asset_path = jsonio::child(p_path, "asset");
        const auto amount_path = jsonio::child(p_path, "amount");
        const auto amount = SignedAmount::from_decimal(jsonio::string_at(jsonio::field(p, "amount", p_path), amount_path));
        if (!amount) throw ParseError(amount_path + ": expected signed decimal");
        f.profit = Profit{asset_from_string(jsonio::string_at(jsonio::field(p, "asset", p_path), asset_path), asset_path),
                          *amount};
    }
    return f;
}

}  // namespace mevscope::hunter
