// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace mevscope::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view to_string(Isa isa) noexcept;

//! Double-precision inner loops shared by the model and the clustering code.
struct Kernels {
    Isa isa;
    double (*dot)(const double* a, const double* b, std::size_t n);
    //! y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
};

//! Portable reference implementation.
const Kernels& scalar_kernels() noexcept;
//! Null when the variant is not compiled in or the CPU lacks the extension.
const Kernels* avx2_kernels() noexcept;
const Kernels* neon_kernels() noexcept;

//! Variants usable on this machine, scalar first.
std::vector<Isa> available();

//! The variant selected at first use: MEVSCOPE_SIMD (scalar|avx2|neon) if set and
//! available, otherwise the widest supported one.
const Kernels& active() noexcept;

//! Overrides the selection for the rest of the process. Throws ConfigError if unavailable.
void force(Isa isa);

}  // namespace mevscope::simd
