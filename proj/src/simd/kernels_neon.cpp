// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <arm_neon.h>

#include <mevscope/simd/kernels.hpp>

namespace mevscope::simd::detail {

namespace {

    double dot_neon(const double* a, const double* b, std::size_t n) {
        float64x2_t acc0 = vdupq_n_f64(0.0);
        float64x2_t acc1 = vdupq_n_f64(0.0);
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
            acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
        }
        double s = vaddvq_f64(vaddq_f64(acc0, acc1));
        for (; i < n; ++i) s += a[i] * b[i];
        return s;
    }

    void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
        const float64x2_t va = vdupq_n_f64(alpha);
        std::size_t i = 0;
        for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
        for (; i < n; ++i) y[i] += alpha * x[i];
    }

    double squared_distance_neon(const double* a, const double* b, std::size_t n) {
        float64x2_t acc = vdupq_n_f64(0.0);
        std::size_t i = 0;
        for (; i + 2 <= n; i += 2) {
            const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
            acc = vfmaq_f64(acc, d, d);
        }
        double s = vaddvq_f64(acc);
        for (; i < n; ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        return s;
    }

}  // namespace

const Kernels& neon_table() noexcept {
    static constexpr Kernels kTable{Isa::kNeon, dot_neon, axpy_neon, squared_distance_neon};
    return kTable;
}

}  // namespace mevscope::simd::detail
