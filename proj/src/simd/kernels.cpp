// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/simd/kernels.hpp>

#include <atomic>
#include <cstdlib>
#include <string>

#include <mevscope/common/errors.hpp>

namespace mevscope::simd {

namespace detail {
#if defined(MEVSCOPE_HAVE_AVX2)
    const Kernels& avx2_table() noexcept;
#endif
#if defined(MEVSCOPE_HAVE_NEON)
    const Kernels& neon_table() noexcept;
#endif
}  // namespace detail

namespace {

    double dot_scalar(const double* a, const double* b, std::size_t n) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
        return s;
    }

    void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
    }

    double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        return s;
    }

    constexpr Kernels kScalar{Isa::kScalar, dot_scalar, axpy_scalar, squared_distance_scalar};

    const Kernels* lookup(Isa isa) noexcept {
        switch (isa) {
            case Isa::kScalar: return &kScalar;
            case Isa::kAvx2: return avx2_kernels();
            case Isa::kNeon: return neon_kernels();
        }
        return nullptr;
    }

    const Kernels* initial_selection() noexcept {
        if (const char* env = std::getenv("MEVSCOPE_SIMD")) {
            const std::string want{env};
            for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
                if (want == to_string(isa)) {
                    if (const auto* k = lookup(isa)) return k;
                }
            }
        }
        if (const auto* k = avx2_kernels()) return k;
        if (const auto* k = neon_kernels()) return k;
        return &kScalar;
    }

    std::atomic<const Kernels*>& selected() noexcept {
        static std::atomic<const Kernels*> current{initial_selection()};
        return current;
    }

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::kScalar: return "scalar";
        case Isa::kAvx2: return "avx2";
        case Isa::kNeon: return "neon";
    }
    return "?";
}

const Kernels& scalar_kernels() noexcept { return kScalar; }

const Kernels* avx2_kernels() noexcept {
#if defined(MEVSCOPE_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const Kernels* neon_kernels() noexcept {
#if defined(MEVSCOPE_HAVE_NEON)
    return &detail::neon_table();
#else
    return nullptr;
#endif
}

std::vector<Isa> available() {
    std::vector<Isa> out{Isa::kScalar};
    if (avx2_kernels()) out.push_back(Isa::kAvx2);
    if (neon_kernels()) out.push_back(Isa::kNeon);
    return out;
}

const Kernels& active() noexcept { return *selected().load(std::memory_order_acquire); }

void force(Isa isa) {
    const auto* k = lookup(isa);
    if (!k) throw ConfigError("simd variant " + std::string{to_string(isa)} + " is not available");
    selected().store(k, std::memory_order_release);
}

}  // namespace mevscope::simd
