// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/lifter/actlifter.hpp>

#include <algorithm>
#include <set>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/json_fields.hpp>

namespace mevscope::lifter {

using jsonio::json;

namespace {

    std::vector<Bytes32> parameter_words(const trace::LogRecord& event) {
        std::vector<Bytes32> words(event.topics.begin() + (event.topics.empty() ? 0 : 1), event.topics.end());
        for (std::size_t i = 0; i < event.data_words(); ++i) words.push_back(event.data_word(i));
        return words;
    }

    bool contains_address(const std::vector<Bytes32>& words, const Address& a) noexcept {
        return std::any_of(words.begin(), words.end(), [&](const Bytes32& w) { return w.low_address() == a; });
    }

    bool fungible(const AssetTransfer& t) noexcept {
        return t.kind == TransferKind::kEther || t.kind == TransferKind::kToken;
    }

    ActionParam inbound(const AssetTransfer& t) { return {t.value, t.asset, Direction::kIn, t.from}; }
    ActionParam outbound(const AssetTransfer& t) { return {t.value, t.asset, Direction::kOut, t.to}; }

    std::optional<DefiAction> liquidity(const ActionEvidence& e, Direction direction) {
        DefiAction action{e.contract, e.action_type, {}, std::nullopt, e.event_ordinal};
        std::set<AssetId> taken;
        for (const auto& t : e.transfers) {
            if (!fungible(t)) continue;
            const bool matches = direction == Direction::kIn ? t.to == e.contract : t.from == e.contract;
            if (!matches || !taken.insert(t.asset).second) continue;
            action.params.push_back(direction == Direction::kIn ? inbound(t) : outbound(t));
        }
        if (action.params.empty()) return std::nullopt;
        return action;
    }

    std::optional<DefiAction> exchange(const ActionEvidence& e) {
        const auto& ts = e.transfers;
        for (std::size_t j = 0; j < ts.size(); ++j) {
            if (!fungible(ts[j])) continue;
            for (std::size_t i = 0; i < j; ++i) {
                if (!fungible(ts[i]) || ts[i].asset == ts[j].asset) continue;
                const AssetTransfer* in = nullptr;
                const AssetTransfer* out = nullptr;
                for (const auto* t : {&ts[i], &ts[j]}) {
                    if (t->to == e.contract && !in) {
                        in = t;
                    } else if (t->from == e.contract && !out) {
                        out = t;
                    }
                }
                if (!in || !out) continue;
                return DefiAction{e.contract, e.action_type, {inbound(*in), outbound(*out)}, std::nullopt, e.event_ordinal};
            }
        }
        return std::nullopt;
    }

    std::optional<DefiAction> single_out(const ActionEvidence& e) {
        for (const auto& t : e.transfers) {
            if (fungible(t) && t.from == e.contract) {
                return DefiAction{e.contract, e.action_type, {outbound(t)}, std::nullopt, e.event_ordinal};
            }
        }
        return std::nullopt;
    }

    std::optional<DefiAction> nft(const ActionEvidence& e, TransferKind kind) {
        for (const auto& t : e.transfers) {
            if (t.kind == kind && t.asset.contract == e.contract) {
                return DefiAction{e.contract, e.action_type, {}, t.value, e.event_ordinal};
            }
        }
        return std::nullopt;
    }

    std::string_view to_string(Direction d) noexcept { return d == Direction::kIn ? "In" : "Out"; }

    json asset_json(const AssetId& a) { return a.to_string(); }

    AssetId asset_from_json(const json& j, const std::string& path) {
        const auto s = jsonio::string_at(j, path);
        if (s == "ETH") return AssetId::ether();
        const auto a = Address::from_hex(s);
        if (!a) throw ParseError(path + ": expected \"ETH\" or a token address");
        return AssetId::token(*a);
    }

}  // namespace

std::optional<MatchConfig> match_config_from_string(std::string_view s) noexcept {
    if (s == "C1" || s == "c1") return MatchConfig::kC1;
    if (s == "C2" || s == "c2") return MatchConfig::kC2;
    if (s == "C3" || s == "c3") return MatchConfig::kC3;
    return std::nullopt;
}

const ActionParam* DefiAction::in_param() const noexcept {
    const auto it = std::find_if(params.begin(), params.end(), [](const auto& p) { return p.direction == Direction::kIn; });
    return it == params.end() ? nullptr : &*it;
}

const ActionParam* DefiAction::out_param() const noexcept {
    const auto it = std::find_if(params.begin(), params.end(), [](const auto& p) { return p.direction == Direction::kOut; });
    return it == params.end() ? nullptr : &*it;
}

bool is_logged(const AssetTransfer& transfer, const trace::LogRecord& event, MatchConfig config) noexcept {
    const auto words = parameter_words(event);
    const bool value_logged = std::any_of(words.begin(), words.end(), [&](const Bytes32& w) {
        const Uint256 v = w.to_uint();
        return v == transfer.value || (v.sign_bit() && v.negated() == transfer.value);
    });
    if (!value_logged) return false;
    if (config == MatchConfig::kC1) return true;

    if (transfer.asset.is_ether() || !contains_address(words, transfer.asset.contract)) return false;
    if (config == MatchConfig::kC2) return true;

    return contains_address(words, transfer.from) && contains_address(words, transfer.to);
}

std::vector<ActionEvidence> step_s1(const trace::ExecutionTrace& trace, const std::vector<AssetTransfer>& transfers,
                                    const registry::EventRegistry& registry, MatchConfig config) {
    std::vector<ActionEvidence> out;
    for (const auto& record : trace.records) {
        const auto* event = std::get_if<trace::LogRecord>(&record);
        if (!event || event->topics.empty()) continue;

        if (event->topics[0] == registry::transfer_event_hash()) {
            const auto index = static_cast<std::int64_t>(event->trace_index);
            for (const auto& t : transfers) {
                if (t.trace_index != index) continue;
                if (t.kind == TransferKind::kErc721Mint) {
                    out.push_back({event->emitter, ActionType::kNftMinting, {t}, event->trace_index});
                } else if (t.kind == TransferKind::kErc721Burn) {
                    out.push_back({event->emitter, ActionType::kNftBurning, {t}, event->trace_index});
                }
            }
            continue;
        }

        const auto type = registry.action_type_of(event->topics[0]);
        if (!type) continue;
        ActionEvidence evidence{event->emitter, *type, {}, event->trace_index};
        for (const auto& t : transfers) {
            if (is_logged(t, *event, config)) evidence.transfers.push_back(t);
        }
        out.push_back(std::move(evidence));
    }
    return out;
}

std::vector<ActionEvidence> step_s1(const trace::ExecutionTrace& trace, const registry::EventRegistry& registry,
                                    MatchConfig config) {
    const CodeIndexDetector standards{trace};
    return step_s1(trace, extract_all_transfers(trace, standards), registry, config);
}

std::vector<DefiAction> step_s2(const std::vector<ActionEvidence>& evidence, const StandardDetector& standards) {
    std::vector<DefiAction> out;
    for (const auto& e : evidence) {
        std::optional<DefiAction> action;
        switch (e.action_type) {
            case ActionType::kAddLiquidity: action = liquidity(e, Direction::kIn); break;
            case ActionType::kRemoveLiquidity: action = liquidity(e, Direction::kOut); break;
            case ActionType::kSwap:
            case ActionType::kLiquidation: action = exchange(e); break;
            case ActionType::kBorrowing:
            case ActionType::kLeverage:
            case ActionType::kAirdrop: action = single_out(e); break;
            case ActionType::kNftMinting: action = nft(e, TransferKind::kErc721Mint); break;
            case ActionType::kNftBurning: action = nft(e, TransferKind::kErc721Burn); break;
            case ActionType::kRebasing:
                if (standards.standard_of(e.contract) != TokenStandard::kNeither) {
                    action = DefiAction{e.contract, e.action_type, {}, std::nullopt, e.event_ordinal};
                }
                break;
        }
        if (action) out.push_back(std::move(*action));
    }
    return out;
}

TransactionActions lift_transaction(const trace::ExecutionTrace& trace, const registry::EventRegistry& registry,
                                    MatchConfig config) {
    const CodeIndexDetector standards{trace};
    const auto transfers = extract_all_transfers(trace, standards);
    return {trace.tx_hash, trace.sender, trace.recipient,
            step_s2(step_s1(trace, transfers, registry, config), standards)};
}

bool satisfies_invariants(const DefiAction& a) noexcept {
    const auto count = [&](Direction d) {
        return std::count_if(a.params.begin(), a.params.end(), [&](const auto& p) { return p.direction == d; });
    };
    std::set<AssetId> assets;
    for (const auto& p : a.params) assets.insert(p.asset);
    const bool distinct = assets.size() == a.params.size();
    switch (a.type) {
        case ActionType::kSwap:
        case ActionType::kLiquidation:
            return a.params.size() == 2 && count(Direction::kIn) == 1 && count(Direction::kOut) == 1 && distinct &&
                   !a.token_id;
        case ActionType::kAddLiquidity:
            return !a.params.empty() && count(Direction::kOut) == 0 && distinct && !a.token_id;
        case ActionType::kRemoveLiquidity:
            return !a.params.empty() && count(Direction::kIn) == 0 && distinct && !a.token_id;
        case ActionType::kBorrowing:
        case ActionType::kLeverage:
        case ActionType::kAirdrop:
            return a.params.size() == 1 && count(Direction::kOut) == 1 && !a.token_id;
        case ActionType::kNftMinting:
        case ActionType::kNftBurning:
            return a.params.empty() && a.token_id.has_value();
        case ActionType::kRebasing:
            return a.params.empty() && !a.token_id;
    }
    return false;
}

json to_json(const DefiAction& action) {
    json params = json::array();
    for (const auto& p : action.params) {
        params.push_back({{"asset", asset_json(p.asset)},
                          {"amount", p.amount.to_decimal()},
                          {"dir", std::string{to_string(p.direction)}},
                          {"counterparty", p.counterparty.to_hex()}});
    }
    json j{{"contract", action.contract.to_hex()},
           {"type", std::string{registry::to_string(action.type)}},
           {"ordinal", action.ordinal},
           {"params", std::move(params)}};
    if (action.token_id) j["token_id"] = action.token_id->to_decimal();
    return j;
}

json to_json(const TransactionActions& tx) {
    json actions = json::array();
    for (const auto& a : tx.actions) actions.push_back(to_json(a));
    return {{"tx_hash", tx.tx_hash.to_hex()},
            {"sender", tx.sender.to_hex()},
            {"recipient", tx.recipient ? json(tx.recipient->to_hex()) : json(nullptr)},
            {"actions", std::move(actions)}};
}

DefiAction action_from_json(const json& j, const std::string& path) {
    DefiAction a;
    a.contract = jsonio::address_at(jsonio::field(j, "contract", path), jsonio::child(path, "contract"));
    const auto type_name = jsonio::string_at(jsonio::field(j, "type", path), jsonio::child(path, "type"));
    const auto type = registry::action_type_from_string(type_name);
    if (!type) throw ParseError(jsonio::child(path, "type") + ": unknown action type '" + type_name + "'");
    a.type = *type;
    if (const auto it = j.find("ordinal"); it != j.end()) a.ordinal = jsonio::u64_at(*it, jsonio::child(path, "ordinal"));
    const auto& params = jsonio::field(j, "params", path);
    const auto params_path = jsonio::child(path, "params");
    if (!params.is_array()) throw ParseError(params_path + ": expected array");
    for (std::size_t i = 0; i < params.size(); ++i) {
        const auto p_path = jsonio::element(params_path, i);
        const auto& p = params[i];
        ActionParam param;
        param.asset = asset_from_json(jsonio::field(p, "asset", p_path), jsonio::child(p_path, "asset"));
        param.amount = jsonio::decimal_at(jsonio::field(p, "amount", p_path), jsonio::child(p_path, "amount"));
        const auto dir = jsonio::string_at(jsonio::field(p, "dir", p_path), jsonio::child(p_path, "dir"));
        if (dir != "In" && dir != "Out") throw ParseError(jsonio::child(p_path, "dir") + ": expected In or Out");
        param.direction = dir == "In" ? Direction::kIn : Direction::kOut;
        if (const auto it = p.find("counterparty"); it != p.end()) {
            param.counterparty = jsonio::address_at(*it, jsonio::child(p_path, "counterparty"));
        }
        a.params.push_back(param);
    }
    if (const auto it = j.find("token_id"); it != j.end() && !it->is_null()) {
        a.token_id = jsonio::decimal_at(*it, jsonio::child(path, "token_id"));
    }
    return a;
}

TransactionActions transaction_from_json(const json& j, const std::string& path) {
    TransactionActions tx;
    tx.tx_hash = jsonio::word_at(jsonio::field(j, "tx_hash", path), jsonio::child(path, "tx_hash"));
    if (const auto it = j.find("sender"); it != j.end()) tx.sender = jsonio::address_at(*it, jsonio::child(path, "sender"));
    if (const auto it = j.find("recipient"); it != j.end() && !it->is_null()) {
        tx.recipient = jsonio::address_at(*it, jsonio::child(path, "recipient"));
    }
    const auto& actions = jsonio::field(j, "actions", path);
    const auto actions_path = jsonio::child(path, "actions");
    if (!actions.is_array()) throw ParseError(actions_path + ": expected array");
    for (std::size_t i = 0; i < actions.size(); ++i) {
        tx.actions.push_back(action_from_json(actions[i], jsonio::element(actions_path, i)));
    }
    return tx;
}

std::string render(const DefiAction& action) {
    std::string out = action.contract.short_hex() + "." + std::string{registry::to_string(action.type)} + "(";
    if (action.token_id) out += "tokenId " + action.token_id->to_decimal();
    for (std::size_t i = 0; i < action.params.size(); ++i) {
        const auto& p = action.params[i];
        if (i > 0) out += "; ";
        out += p.amount.to_decimal() + ": " + (p.asset.is_ether() ? std::string{"ETH"} : p.asset.contract.short_hex()) +
               " " + std::string{to_string(p.direction)};
    }
    return out + ")";
}

}  // namespace mevscope::lifter
