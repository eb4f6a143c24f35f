// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <mevscope/cluster/session.hpp>

#include "support/families.hpp"

namespace mevscope::test {

struct PlantedCorpus {
    std::vector<ingest::BundleActions> bundles;
    std::map<ingest::BundleRef, Family> family;
};

//! `per_family[f]` bundles of each family, shuffled with `seed`.
PlantedCorpus planted_corpus(const std::map<Family, std::size_t>& per_family, std::uint64_t seed);

struct LoopResult {
    std::set<Family> surfaced;  // families of every reviewed bundle
    std::size_t reviewed{0};
    std::vector<double> epsilons;  // epsilon at rounds 0, 1, ...
    std::vector<std::size_t> survivors;  // survivor count at rounds 0, 1, ...
    std::vector<std::string> label_set;
    std::string terminal_reason;
};

//! Drives a session to termination with a reviewer who names each sample by its planted
//! family: known() when the name is already a label, new() otherwise.
LoopResult run_review_loop(const PlantedCorpus& planted, const cluster::Corpus& corpus, cluster::ClusterSession& session,
                           cluster::Embedder& embedder);

}  // namespace mevscope::test
