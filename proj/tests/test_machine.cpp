#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ait/machine.hpp"
#include "fuzz.hpp"

using namespace ait;

TEST(encode_program, quote_example_bytes) {
    BinaryProgram p = encode_program("(' a)", BitString{});
    EXPECT_EQ(p.size(), 48u);
    EXPECT_EQ(p.bits.to_hex(), "282720612900");
    // Non-canonical spellings encode the same way.
    EXPECT_EQ(encode_program("  'a ", BitString{}), p);
}

TEST(encode_program, data_follows_separator) {
    BinaryProgram p = encode_program("(read-bit)", BitString::from_text("1"));
    EXPECT_EQ(p.size(), 8u * 11 + 1);
    RunReport r = run_u(p, 100);
    ASSERT_TRUE(r.valid_halt());
    EXPECT_EQ(r.halt()->value, SExpr::atom("1"));
}

TEST(decode_program, rejections) {
    auto reason = [](const BitString& b) {
        auto r = decode_program(b);
        return std::holds_alternative<MalformedProgram>(r) ? std::get<MalformedProgram>(r).reason : "";
    };
    EXPECT_EQ(reason(BitString::from_text(std::string(24, '1'))), "NoSeparator");
    EXPECT_EQ(reason(BitString::from_text("0101")), "NoSeparator");
    BitString bad = BitString::from_bytes("(a\x01)");
    bad.push_byte(0);
    EXPECT_EQ(reason(bad), "BadChar");
    BitString spaced = BitString::from_bytes("( a)");
    spaced.push_byte(0);
    EXPECT_EQ(reason(spaced), "ParseFail");
    BitString empty;
    empty.push_byte(0);
    EXPECT_EQ(reason(empty), "ParseFail");
    BitString open = BitString::from_bytes("(a");
    open.push_byte(0);
    EXPECT_EQ(reason(open), "ParseFail");
}

TEST(decode_program, splits_prefix_and_data) {
    BitString bits = BitString::from_bytes("()");
    bits.push_byte(0);
    bits.append(BitString::from_text("01"));
    auto r = decode_program(bits);
    ASSERT_TRUE(std::holds_alternative<DecodedProgram>(r));
    const auto& d = std::get<DecodedProgram>(r);
    EXPECT_EQ(d.prefix->text, "()");
    EXPECT_EQ(d.prefix->prefix_bits, 24u);
    EXPECT_EQ(d.data.to_text(), "01");
}

TEST(run_u, validity_requires_every_data_bit) {
    RunReport unread = run_u(encode_program("()", BitString::from_text("1")), 100);
    EXPECT_TRUE(unread.halted());
    EXPECT_FALSE(unread.valid_halt());

    RunReport exact = run_u(encode_program("()", BitString{}), 100);
    EXPECT_TRUE(exact.valid_halt());

    RunReport over = run_u(encode_program("(join (read-bit) (read-bit))", BitString::from_text("1")), 100);
    EXPECT_TRUE(std::holds_alternative<AbortOverrun>(over.outcome));

    RunReport malformed = run_u(BinaryProgram{BitString::from_text("1111")}, 100);
    EXPECT_TRUE(std::holds_alternative<MalformedProgram>(malformed.outcome));
}

TEST(program_file, round_trip_and_corruption) {
    BinaryProgram p = encode_program("(join (read-bit) ())", BitString::from_text("101"));
    std::stringstream ss;
    write_program(ss, p);
    EXPECT_EQ(read_program(ss), p);

    for (const char* bad : {"", "bits: 9\n", "bits: 12\nzz\n", "bits: 4\nff\n", "bytes: 8\n00\n"}) {
        std::istringstream in(bad);
        try {
            read_program(in);
            FAIL() << "accepted: " << bad;
        } catch (const error& e) {
            EXPECT_EQ(e.kind(), "CorruptFile");
        }
    }
}

TEST(program_property, encode_decode_round_trip) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 1000; ++i) {
        std::vector<SExpr> prefix{fuzz::random_sexpr(rng)};
        if (rng() % 3 == 0) prefix.insert(prefix.begin(), fuzz::random_sexpr(rng));
        BitString data = fuzz::random_bits(rng, 40);
        BinaryProgram p = encode_program(prefix, data);
        auto r = decode_program(p.bits);
        ASSERT_TRUE(std::holds_alternative<DecodedProgram>(r)) << print_canonical(prefix);
        const auto& d = std::get<DecodedProgram>(r);
        EXPECT_EQ(d.prefix->forms, prefix);
        EXPECT_EQ(d.data, data);
        EXPECT_EQ(encode_program(d.prefix->forms, d.data), p);
    }
}

TEST(machine_config, version_and_hash_are_stable) {
    EXPECT_EQ(MachineConfig::version, "aitlab-u/1");
    EXPECT_EQ(MachineConfig::config_hash(), MachineConfig::config_hash());
    EXPECT_NE(MachineConfig::config_hash(), 0u);
}
