#include <gtest/gtest.h>

#include <random>

#include "ait/bits.hpp"
#include "fuzz.hpp"

using namespace ait;

TEST(bit_string, text_and_hex) {
    auto b = BitString::from_text("0010100001");
    EXPECT_EQ(b.size(), 10u);
    EXPECT_EQ(b.to_text(), "0010100001");
    EXPECT_EQ(b.to_hex(), "2840");
    EXPECT_EQ(BitString::from_hex("2840", 10), b);
    EXPECT_THROW(BitString::from_hex("2841", 10), std::invalid_argument);  // pad bits set
    EXPECT_THROW(BitString::from_hex("28", 10), std::invalid_argument);
}

TEST(bit_string, prefix_suffix_and_ordering) {
    auto b = BitString::from_text("1011001");
    EXPECT_EQ(b.prefix(3).to_text(), "101");
    EXPECT_EQ(b.suffix(3).to_text(), "1001");
    EXPECT_TRUE(b.prefix(3).is_prefix_of(b));
    EXPECT_FALSE(BitString::from_text("100").is_prefix_of(b));
    EXPECT_LT(BitString::from_text("101"), b);
    EXPECT_LT(BitString::from_text("0111111"), b);
    ShortLex shortlex;
    EXPECT_TRUE(shortlex(BitString::from_text("111"), BitString::from_text("0000")));
}

TEST(bit_string, pop_back_clears_bit) {
    auto b = BitString::from_text("111111111");
    b.pop_back();
    b.push_back(false);
    EXPECT_EQ(b.to_text(), "111111110");
}

TEST(bit_string_property, hex_round_trip) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        BitString b = fuzz::random_bits(rng, 70);
        EXPECT_EQ(BitString::from_hex(b.to_hex(), b.size()), b);
        EXPECT_EQ(BitString::from_text(b.to_text()), b);
        std::size_t k = rng() % (b.size() + 1);
        BitString joined = b.prefix(k);
        joined.append(b.suffix(k));
        EXPECT_EQ(joined, b);
    }
}
