// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>

#include <mevscope/registry/registry.hpp>
#include <mevscope/trace/trace.hpp>

namespace mevscope::test {

//! Random distilled trace over a small address universe, so that collisions
//! (zero address, self transfers, emitter-as-party, logged values) happen often.
//! Registered events draw their parameter words from values and addresses already in the trace.
trace::ExecutionTrace random_trace(std::mt19937_64& rng, const registry::EventRegistry& registry,
                                   std::size_t max_records = 24);

}  // namespace mevscope::test
