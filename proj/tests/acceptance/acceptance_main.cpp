// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <mevscope/cluster/dbscan.hpp>
#include <mevscope/cluster/session.hpp>
#include <mevscope/common/files.hpp>
#include <mevscope/hunter/hunter.hpp>
#include <mevscope/ingest/flashbots.hpp>
#include <mevscope/ingest/trace_source.hpp>
#include <mevscope/learn/model.hpp>
#include <mevscope/lifter/actlifter.hpp>
#include <mevscope/lifter/transfers.hpp>
#include <mevscope/matrix/matrix.hpp>
#include <mevscope/revenue/revenue.hpp>

#include "support/builders.hpp"
#include "support/bundles.hpp"
#include "support/families.hpp"
#include "support/fuzz.hpp"
#include "support/loop.hpp"
#include "support/oracles.hpp"

namespace {

using namespace mevscope;
using test::addr;

struct Outcome {
    bool pass{false};
    std::string detail;
};

struct Criterion {
    std::string name;
    double limit_s;  // 0 for no wall-clock limit
    std::function<Outcome()> run;
};

Outcome verdict(bool pass, std::string detail) { return {pass, std::move(detail)}; }

trace::ExecutionTrace swap_trace() {
    return trace::parse_trace_fixture(read_file(test::source_path("data/fixtures/hex_swap_trace.json")));
}

ingest::BundleActions lifted_fixture(const std::string& name) {
    const auto bundles = ingest::fetch_bundles(test::source_path("data/fixtures/bundles/" + name + ".json"), {0, UINT64_MAX});
    ingest::FixtureDirTraceSource source{test::source_path("data/fixtures/traces")};
    return ingest::lift_bundle(bundles.at(0), source, test::seed_registry());
}

Uint256 wei(std::uint64_t milli_eth) { return Uint256{milli_eth}.checked_mul(Uint256{1'000'000'000'000'000ULL}); }

Outcome swap_fidelity() {
    const Address pool = addr("0x69d91b94f0aaf8e8a2586909fa77a5c2c89818d5");
    const auto hex = lifter::AssetId::token(addr("0x2b591e99afe9f32eaa6214f7b7629768c40eeb39"));
    const auto usdc = lifter::AssetId::token(addr("0xa0b86991c6218b36c1d19d4a2e9eb0ce3606eb48"));
    const auto t = swap_trace();
    const auto c1 = lifter::lift_transaction(t, test::seed_registry(), lifter::MatchConfig::kC1);
    if (c1.actions.size() != 1) return verdict(false, "C1 lifted " + std::to_string(c1.actions.size()) + " actions");
    const auto& a = c1.actions[0];
    // 500,187 HEX at 8 decimals and 14,082.22 USDC at 6 decimals.
    const bool exact = a.contract == pool && a.type == registry::ActionType::kSwap && a.params.size() == 2 &&
                       a.params[0].asset == hex && a.params[0].direction == lifter::Direction::kIn &&
                       a.params[0].amount == Uint256{50'018'700'000'000ULL} && a.params[1].asset == usdc &&
                       a.params[1].direction == lifter::Direction::kOut && a.params[1].amount == Uint256{14'082'220'000ULL};
    const auto c3 = lifter::lift_transaction(t, test::seed_registry(), lifter::MatchConfig::kC3);
    const bool c3_has_swap = std::any_of(c3.actions.begin(), c3.actions.end(),
                                         [](const auto& x) { return x.type == registry::ActionType::kSwap; });
    return verdict(exact && !c3_has_swap, lifter::render(a) + (c3_has_swap ? "; C3 still swaps" : "; C3 none"));
}

Outcome naive_pairing() {
    const auto t = swap_trace();
    const auto transfers = lifter::extract_all_transfers(t, lifter::CodeIndexDetector{t});
    const auto pair = test::naive_pair(transfers);
    if (!pair) return verdict(false, "no pair");
    const auto first = transfers[pair->first].trace_index;
    const auto second = transfers[pair->second].trace_index;
    return verdict(first == 0 && second == 4,
                   "paired transfers " + std::to_string(first + 1) + " and " + std::to_string(second + 1));
}

// Filter condition of an emitted transfer, stated independently of the extractor. The zero
// address and the token contract itself are the mint and burn endpoints.
bool passes_filter(const lifter::AssetTransfer& x) {
    const auto endpoint = [&](const Address& a) { return a.is_zero() || a == x.asset.contract; };
    switch (x.kind) {
        case lifter::TransferKind::kEther:
            return x.asset.is_ether() && !x.value.is_zero() && x.from != x.to;
        case lifter::TransferKind::kToken:
            return x.asset.kind == lifter::AssetId::Kind::kToken && !x.value.is_zero() && x.from != x.to &&
                   !endpoint(x.from) && !endpoint(x.to);
        case lifter::TransferKind::kErc721Mint:
            return x.asset.kind == lifter::AssetId::Kind::kErc721 && endpoint(x.from) && !endpoint(x.to);
        case lifter::TransferKind::kErc721Burn:
            return x.asset.kind == lifter::AssetId::Kind::kErc721 && !endpoint(x.from) && endpoint(x.to);
    }
    return false;
}

Outcome transfer_laws() {
    std::mt19937_64 rng{1001};
    std::size_t emitted = 0;
    std::size_t violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto t = test::random_trace(rng, test::seed_registry());
        for (const auto& x : lifter::extract_all_transfers(t, lifter::CodeIndexDetector{t})) {
            ++emitted;
            if (!passes_filter(x)) ++violations;
        }
    }
    return verdict(violations == 0 && emitted > 0,
                   std::to_string(violations) + " violations over " + std::to_string(emitted) + " transfers");
}

Outcome containment() {
    std::mt19937_64 rng{2002};
    const auto& reg = test::seed_registry();
    const auto subset = [](const auto& small, const auto& big) {
        return std::all_of(small.begin(), small.end(),
                           [&](const auto& x) { return std::find(big.begin(), big.end(), x) != big.end(); });
    };
    std::size_t events = 0;
    std::size_t pairs = 0;
    std::size_t violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto t = test::random_trace(rng, reg);
        const auto transfers = lifter::extract_all_transfers(t, lifter::CodeIndexDetector{t});
        const auto e1 = lifter::step_s1(t, transfers, reg, lifter::MatchConfig::kC1);
        const auto e2 = lifter::step_s1(t, transfers, reg, lifter::MatchConfig::kC2);
        const auto e3 = lifter::step_s1(t, transfers, reg, lifter::MatchConfig::kC3);
        if (e1.size() != e2.size() || e2.size() != e3.size()) {
            ++violations;
            continue;
        }
        for (std::size_t k = 0; k < e1.size(); ++k) {
            ++events;
            if (!subset(e3[k].transfers, e2[k].transfers) || !subset(e2[k].transfers, e1[k].transfers)) ++violations;
        }
        for (const auto& record : t.records) {
            const auto* log = std::get_if<trace::LogRecord>(&record);
            if (!log) continue;
            for (const auto& x : transfers) {
                ++pairs;
                const bool l1 = lifter::is_logged(x, *log, lifter::MatchConfig::kC1);
                const bool l2 = lifter::is_logged(x, *log, lifter::MatchConfig::kC2);
                const bool l3 = lifter::is_logged(x, *log, lifter::MatchConfig::kC3);
                if ((l3 && !l2) || (l2 && !l1)) ++violations;
            }
        }
    }
    return verdict(violations == 0, std::to_string(violations) + " violations over " + std::to_string(events) +
                                        " events and " + std::to_string(pairs) + " transfer/log pairs");
}

Outcome mev_fixtures() {
    using hunter::MevActivity;
    const auto weth = lifter::AssetId::token(addr("0xc02aaa39b223fe8d0a0e5c4f27ead9083c756cc2"));
    const auto kinds = [](const std::vector<hunter::MevFinding>& fs) {
        std::multiset<MevActivity> out;
        for (const auto& f : fs) out.insert(f.activity);
        return out;
    };
    std::vector<std::string> failures;
    const auto expect = [&](const std::string& name, MevActivity activity,
                            std::optional<SignedAmount> profit) {
        const auto findings = hunter::hunt(lifted_fixture(name));
        if (kinds(findings) != std::multiset<MevActivity>{activity}) {
            failures.push_back(name);
            return;
        }
        if (profit && (!findings[0].profit || findings[0].profit->asset != weth || findings[0].profit->amount != *profit))
            failures.push_back(name + " profit");
    };
    expect("rebasing_backrun", MevActivity::kRBA, SignedAmount{false, wei(42'610)});
    expect("mba", MevActivity::kMBA, std::nullopt);
    expect("fa", MevActivity::kFA, SignedAmount{true, wei(22'260)});
    expect("sandwich", MevActivity::kSA, std::nullopt);
    expect("cyclic", MevActivity::kCA, std::nullopt);
    expect("lsa", MevActivity::kLSA, std::nullopt);
    expect("lt", MevActivity::kLT, std::nullopt);
    expect("nr", MevActivity::kNR, std::nullopt);
    std::string detail = "RBA +42.61, MBA, FA -22.26, SA, CA, LSA, LT, NR";
    if (!failures.empty()) {
        detail = "mismatch:";
        for (const auto& f : failures) detail += " " + f;
    }
    return verdict(failures.empty(), detail);
}

Outcome cycle_oracle() {
    std::mt19937_64 rng{3003};
    std::size_t mismatches = 0;
    std::size_t cyclic = 0;
    for (int i = 0; i < 500; ++i) {
        const auto tx = test::random_swap_tx(rng, 8, 2 + static_cast<std::size_t>(i % 5));
        const auto truth = test::cycle_oracle(tx);
        const auto cycles = hunter::detect_swap_cycles(tx);
        bool ok = cycles.empty() == !truth.any;
        if (ok && !cycles.empty()) {
            ++cyclic;
            ok = cycles[0].covers_all == truth.full && test::is_closed_chain(tx, cycles[0]);
        }
        if (!ok) ++mismatches;
    }
    return verdict(mismatches == 0,
                   std::to_string(mismatches) + " mismatches, " + std::to_string(cyclic) + " of 500 cyclic");
}

Outcome matrix_invariants() {
    std::mt19937_64 rng{4004};
    const matrix::MatrixConfig config{16, 64};
    std::size_t violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto b = test::random_bundle(rng, 1 + i, 0);
        const auto ranking = matrix::AssetRanking::from_corpus(std::span{&b, 1});
        const auto m = matrix::encode_bundle(b, config, ranking);
        bool ok = m.height == config.height && m.width == config.width && m.cells.size() == config.height * config.width;
        ok = ok && std::all_of(m.cells.begin(), m.cells.end(), [](double v) { return v >= -1.0 && v <= 1.0; });
        const auto layout = test::matrix_layout(b);
        for (std::size_t c = 0; ok && c < m.width; ++c) {
            const auto role = c < layout.size() ? std::optional{layout[c]} : std::nullopt;
            if (!role || *role == test::ColumnRole::kSeparator) {
                for (std::size_t r = 0; r < m.height; ++r) ok = ok && m.at(r, c) == -1.0;
            } else if (*role == test::ColumnRole::kHeader) {
                double sum = 0.0;
                for (std::size_t r = 0; r < matrix::kHeaderRows; ++r) {
                    ok = ok && (m.at(r, c) == 0.0 || m.at(r, c) == 1.0);
                    sum += m.at(r, c);
                }
                ok = ok && sum == 1.0;
            }
        }
        if (!ok) ++violations;
    }
    return verdict(violations == 0, std::to_string(violations) + " violations over 1000 bundles at 16x64");
}

learn::ModelConfig random_small_config(std::mt19937_64& rng) {
    const auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>{lo, hi}(rng); };
    learn::ModelConfig c;
    c.input_height = pick(12, 16);
    c.input_width = pick(8, 12);
    c.conv.clear();
    const auto blocks = pick(1, 2);
    for (std::size_t b = 0; b < blocks; ++b) c.conv.push_back({pick(2, 4), pick(1, 3), pick(1, 3), pick(1, 2), pick(1, 2), 0.0});
    c.fc_sizes = {pick(4, 10), pick(3, 8), pick(2, 6)};
    c.head_hidden = pick(2, 6);
    c.label_count = pick(1, 4);
    c.seed = rng();
    return c;
}

Outcome gradient_check() {
    std::mt19937_64 rng{5005};
    std::uniform_real_distribution<double> cell{-1.0, 1.0};
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const auto c = random_small_config(rng);
        const learn::Model model{c};
        learn::Sample s{std::vector<double>(c.input_height * c.input_width), std::vector<double>(c.label_count)};
        for (auto& v : s.input) v = cell(rng);
        for (auto& t : s.target) t = static_cast<double>(rng() % 2);
        worst = std::max(worst, learn::grad_check(model, s));
    }
    std::ostringstream out;
    out << "worst relative deviation " << worst;
    return verdict(worst < 1e-4, out.str());
}

Outcome training_sanity() {
    std::mt19937_64 rng{4242};
    std::vector<ingest::BundleActions> bundles;
    std::vector<std::vector<double>> targets;
    for (std::uint64_t i = 0; i < 100; ++i) {
        bundles.push_back(test::planted_bundle(test::Family::kSandwich, rng, 1000 + i, 0));
        targets.push_back({1.0, 0.0});
        bundles.push_back(test::planted_bundle(test::Family::kLoanArbitrage, rng, 1000 + i, 1));
        targets.push_back({0.0, 1.0});
    }
    learn::ModelConfig c;
    c.input_width = 64;
    c.label_count = 2;
    c.seed = 7;
    c.epochs = 50;
    const auto ranking = matrix::AssetRanking::from_corpus(bundles);
    std::vector<learn::Sample> samples;
    for (std::size_t i = 0; i < bundles.size(); ++i)
        samples.push_back({matrix::encode_bundle(bundles[i], {c.input_height, c.input_width}, ranking).cells, targets[i]});

    learn::Model model{c};
    const auto first = model.train(samples);
    learn::Model again{c};
    const auto second = again.train(samples);
    std::size_t correct = 0;
    for (const auto& s : samples) {
        const auto p = model.forward(s.input).predictions;
        if ((p[0] >= 0.5) == (s.target[0] == 1.0) && (p[1] >= 0.5) == (s.target[1] == 1.0)) ++correct;
    }
    const bool deterministic = first.epoch_loss == second.epoch_loss && model.parameters().size() == again.parameters().size() &&
                               std::equal(model.parameters().begin(), model.parameters().end(), again.parameters().begin());
    return verdict(correct == samples.size() && deterministic,
                   std::to_string(correct) + "/" + std::to_string(samples.size()) + " correct after " +
                       std::to_string(first.epoch_loss.size()) + " epochs" + (deterministic ? ", deterministic" : ", NOT deterministic"));
}

Outcome dbscan_oracle() {
    std::mt19937_64 rng{6006};
    std::size_t mismatches = 0;
    std::size_t clusters = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = 1 + rng() % 64;
        const auto dim = 1 + rng() % 4;
        std::uniform_real_distribution<double> coord{0.0, 10.0};
        std::vector<cluster::Point> points(n, cluster::Point(dim));
        for (auto& p : points)
            for (auto& x : p) x = coord(rng);
        const double eps = std::uniform_real_distribution<double>{0.5, 4.0}(rng);
        const std::size_t min_pts = 2 + rng() % 4;
        const auto got = cluster::dbscan(points, eps, min_pts);
        clusters += cluster::cluster_count(got);
        if (!test::same_partition(got, test::dbscan_oracle(points, eps, min_pts))) ++mismatches;
    }
    return verdict(mismatches == 0, std::to_string(mismatches) + " mismatches, " + std::to_string(clusters) + " clusters");
}

Outcome review_loop() {
    using test::Family;
    const auto planted = test::planted_corpus({{Family::kSandwich, 100},
                                               {Family::kCyclic, 100},
                                               {Family::kLiquidation, 100},
                                               {Family::kRebasingBackrun, 50},
                                               {Family::kNftReforging, 50},
                                               {Family::kLoanArbitrage, 50},
                                               {Family::kAirdropTrade, 50}},
                                              2024);
    const cluster::Corpus corpus{planted.bundles};
    learn::ModelConfig model;
    model.input_width = 64;
    cluster::ModelEmbedder embedder{model, {model.input_height, model.input_width}};
    cluster::ClusterSession session{"acceptance", cluster::ClusterConfig{}};
    const auto r = test::run_review_loop(planted, corpus, session, embedder);

    std::size_t surfaced = 0;
    for (const auto f : {Family::kRebasingBackrun, Family::kNftReforging, Family::kLoanArbitrage, Family::kAirdropTrade})
        surfaced += r.surfaced.contains(f) ? 1 : 0;
    bool eps_exact = !r.epsilons.empty();
    for (std::size_t round = 0; round < r.epsilons.size(); ++round)
        eps_exact = eps_exact && r.epsilons[round] == std::ldexp(16.0, -static_cast<int>(round));
    const auto limit = planted.bundles.size() * 15 / 100;
    std::ostringstream out;
    out << surfaced << "/4 families surfaced, " << r.reviewed << "/" << planted.bundles.size() << " reviewed, "
        << r.epsilons.size() << " rounds, " << (eps_exact ? "epsilon exact" : "epsilon drift") << ", ended: "
        << r.terminal_reason;
    return verdict(surfaced == 4 && r.reviewed < limit && eps_exact, out.str());
}

Outcome revenue_fixture() {
    const auto bundles = ingest::fetch_bundles(test::source_path("data/fixtures/bundles/revenue.json"), {0, UINT64_MAX});
    ingest::FixtureDirTraceSource source{test::source_path("data/fixtures/traces")};
    const auto r = revenue::bundle_revenue(bundles.at(0), source);
    // 21000 gas at 100 gwei plus a 1 ETH coinbase payment.
    const Uint256 expected = Uint256{21000}.checked_mul(Uint256{100'000'000'000ULL}).checked_add(wei(1000));
    return verdict(r.total == expected && r.total.to_decimal() == "1002100000000000000", r.total.to_decimal() + " wei");
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"swap fixture fidelity", 1.0, swap_fidelity},
        {"naive pairing contrast", 0.0, naive_pairing},
        {"transfer filter laws", 10.0, transfer_laws},
        {"match containment", 0.0, containment},
        {"mev fixtures", 0.0, mev_fixtures},
        {"cycle oracle", 60.0, cycle_oracle},
        {"matrix invariants", 0.0, matrix_invariants},
        {"gradient check", 120.0, gradient_check},
        {"training sanity", 0.0, training_sanity},
        {"dbscan oracle", 0.0, dbscan_oracle},
        {"review loop end to end", 0.0, review_loop},
        {"revenue arithmetic", 0.0, revenue_fixture},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string{"exception: "} + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s > 0.0 && elapsed >= c.limit_s) {
            o.pass = false;
            o.detail += "; over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit";
        }
        if (!o.pass) ++failed;
        std::printf("%s %2zu %-24s %.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name.c_str(), elapsed, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
