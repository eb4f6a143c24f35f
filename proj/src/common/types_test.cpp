// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/common/types.hpp>

#include <catch2/catch_amalgamated.hpp>

namespace mevscope {

TEST_CASE("Address parsing") {
    const auto a = Address::from_hex("0x69D91B94f0aaf8e8a2586909fa77a5c2c89818d5");
    REQUIRE(a);
    CHECK(a->to_hex() == "0x69d91b94f0aaf8e8a2586909fa77a5c2c89818d5");
    CHECK(a->short_hex() == "0x69d9");
    CHECK_FALSE(a->is_zero());
    CHECK(Address{}.is_zero());
    CHECK_FALSE(Address::from_hex("69d91b94f0aaf8e8a2586909fa77a5c2c89818d5"));
    CHECK_FALSE(Address::from_hex("0x69d91b94f0aaf8e8a2586909fa77a5c2c89818"));
    CHECK_FALSE(Address::from_hex("0x69d91b94f0aaf8e8a2586909fa77a5c2c89818zz"));
}

TEST_CASE("Bytes32 conversions") {
    const auto a = *Address::from_hex("0x2b591e99afe9f32eaa6214f7b7629768c40eeb39");
    const auto w = Bytes32::from_address(a);
    CHECK(w.to_hex() == "0x0000000000000000000000002b591e99afe9f32eaa6214f7b7629768c40eeb39");
    CHECK(w.low_address() == a);
    CHECK(Bytes32::from_uint(Uint256{255}).to_uint() == Uint256{255});
}

TEST_CASE("hex bytes") {
    CHECK(to_hex(*from_hex("0xDEADbeef")) == "0xdeadbeef");
    CHECK(from_hex("0x")->empty());
    CHECK_FALSE(from_hex("0xabc"));
}

}  // namespace mevscope
