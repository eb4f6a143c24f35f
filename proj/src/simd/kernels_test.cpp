// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/simd/kernels.hpp>

#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <mevscope/common/errors.hpp>

namespace mevscope::simd {

namespace {

    const Kernels* kernels_for(Isa isa) {
        switch (isa) {
            case Isa::kScalar: return &scalar_kernels();
            case Isa::kAvx2: return avx2_kernels();
            case Isa::kNeon: return neon_kernels();
        }
        return nullptr;
    }

    std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
        std::normal_distribution<double> dist{0.0, 10.0};
        std::vector<double> v(n);
        for (auto& x : v) x = dist(rng);
        return v;
    }

    // Reassociation bound for a length-n sum of products.
    double tolerance(const std::vector<double>& a, const std::vector<double>& b) {
        double mag = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) mag += std::abs(a[i] * b[i]) + a[i] * a[i] + b[i] * b[i];
        return 1e-15 * static_cast<double>(a.size() + 1) * (mag + 1.0);
    }

}  // namespace

TEST_CASE("scalar kernels match hand-computed values", "[simd]") {
    const auto& k = scalar_kernels();
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{4, -5, 6};
    CHECK(k.dot(a.data(), b.data(), 3) == 12.0);
    CHECK(k.squared_distance(a.data(), b.data(), 3) == 9.0 + 49.0 + 9.0);
    std::vector<double> y{1, 1, 1};
    k.axpy(2.0, a.data(), y.data(), 3);
    CHECK(y == std::vector<double>{3, 5, 7});
    CHECK(k.dot(a.data(), b.data(), 0) == 0.0);
}

TEST_CASE("every available variant agrees with scalar", "[simd][property]") {
    const auto variants = available();
    REQUIRE(variants.front() == Isa::kScalar);
    const auto& ref = scalar_kernels();
    std::mt19937_64 rng{8086};
    for (const auto isa : variants) {
        const auto* k = kernels_for(isa);
        REQUIRE(k != nullptr);
        CHECK(k->isa == isa);
        for (std::size_t n = 0; n <= 67; ++n) {
            for (int trial = 0; trial < 8; ++trial) {
                const auto a = random_vector(rng, n);
                const auto b = random_vector(rng, n);
                const double tol = tolerance(a, b);
                CHECK(std::abs(k->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <= tol);
                CHECK(std::abs(k->squared_distance(a.data(), b.data(), n) -
                               ref.squared_distance(a.data(), b.data(), n)) <= tol);
                auto y1 = b;
                auto y2 = b;
                const double alpha = std::normal_distribution<double>{0.0, 3.0}(rng);
                k->axpy(alpha, a.data(), y1.data(), n);
                ref.axpy(alpha, a.data(), y2.data(), n);
                for (std::size_t i = 0; i < n; ++i)
                    CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * (std::abs(alpha * a[i]) + std::abs(b[i]) + 1.0));
            }
        }
    }
}

TEST_CASE("variants handle unaligned offsets", "[simd]") {
    std::mt19937_64 rng{64};
    const auto a = random_vector(rng, 131);
    const auto b = random_vector(rng, 131);
    for (const auto isa : available()) {
        const auto* k = kernels_for(isa);
        for (std::size_t off = 0; off < 4; ++off) {
            const std::size_t n = 127;
            const std::vector<double> sa(a.begin() + off, a.begin() + off + n);
            const std::vector<double> sb(b.begin() + off, b.begin() + off + n);
            CHECK(std::abs(k->dot(a.data() + off, b.data() + off, n) - scalar_kernels().dot(sa.data(), sb.data(), n)) <=
                  tolerance(sa, sb));
        }
    }
}

TEST_CASE("selection can be forced", "[simd]") {
    const auto original = active().isa;
    for (const auto isa : available()) {
        force(isa);
        CHECK(active().isa == isa);
    }
    if (!avx2_kernels()) CHECK_THROWS_AS(force(Isa::kAvx2), ConfigError);
    if (!neon_kernels()) CHECK_THROWS_AS(force(Isa::kNeon), ConfigError);
    force(original);
    CHECK(to_string(Isa::kScalar) == "scalar");
    CHECK(to_string(Isa::kAvx2) == "avx2");
}

}  // namespace mevscope::simd
