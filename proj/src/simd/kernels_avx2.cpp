// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <mevscope/simd/kernels.hpp>

namespace mevscope::simd::detail {

namespace {

    inline double hsum(__m256d v) noexcept {
        const __m128d lo = _mm256_castpd256_pd128(v);
        const __m128d hi = _mm256_extractf128_pd(v, 1);
        const __m128d pair = _mm_add_pd(lo, hi);
        return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
    }

    double dot_avx2(const double* a, const double* b, std::size_t n) {
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 8 <= n; i += 8) {
            acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
            acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        }
        for (; i + 4 <= n; i += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        double s = hsum(_mm256_add_pd(acc0, acc1));
        for (; i < n; ++i) s += a[i] * b[i];
        return s;
    }

    void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
        const __m256d va = _mm256_set1_pd(alpha);
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
        }
        for (; i < n; ++i) y[i] += alpha * x[i];
    }

    double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
        __m256d acc = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
            acc = _mm256_fmadd_pd(d, d, acc);
        }
        double s = hsum(acc);
        for (; i < n; ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        return s;
    }

}  // namespace

const Kernels& avx2_table() noexcept {
    static constexpr Kernels kTable{Isa::kAvx2, dot_avx2, axpy_avx2, squared_distance_avx2};
    return kTable;
}

}  // namespace mevscope::simd::detail
