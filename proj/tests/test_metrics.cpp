#include <gtest/gtest.h>

#include <random>

#include "ait/metrics.hpp"
#include "fuzz.hpp"

using namespace ait;

namespace {

SExpr bits_list(const std::string& text) {
    SExpr::List items;
    for (char c : text) items.push_back(SExpr::atom(std::string(1, c)));
    return SExpr::list(std::move(items));
}

void expect_witness(const ComplexityEstimate& e, std::uint64_t budget) {
    RunReport r = run_u(assembled_witness(e), budget);
    ASSERT_TRUE(r.valid_halt());
    EXPECT_EQ(r.halt()->value, e.subject);
}

} // namespace

TEST(h_upper, smallest_programs) {
    SearchSpace space;
    ComplexityEstimate a = h_upper(SExpr::atom("a"), space);
    EXPECT_EQ(a.bound_bits, 16u);  // "a" and the separator
    EXPECT_EQ(a.witness.size(), 16u);
    expect_witness(a, space.budget);

    ComplexityEstimate nil = h_upper(SExpr::nil(), space);
    EXPECT_EQ(nil.bound_bits, 24u);
    expect_witness(nil, space.budget);

    // Quoting is needed once the value would evaluate to something else.
    SExpr call = parse_one("(head (x y))");
    ComplexityEstimate q = h_upper(call, space);
    EXPECT_EQ(q.source, "literal");
    EXPECT_EQ(q.bound_bits, 8 * (print_canonical(call).size() + 4 + 1));
    expect_witness(q, space.budget);
}

TEST(h_upper, census_and_candidates_are_rechecked) {
    SearchSpace space;
    space.census_index["z"] = encode_program("y", BitString{}).bits;  // stale: computes y
    ComplexityEstimate z = h_upper(SExpr::atom("z"), space);
    EXPECT_EQ(z.source, "self");
    expect_witness(z, space.budget);

    SExpr target = parse_one("(k k k k k k k k k k k k k k k k)");
    space.candidates.push_back(
        encode_program("(define (r n) (if (= () n) () (join k (r (tail n))))) (r (' (1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1)))",
                       BitString{}));
    ComplexityEstimate t = h_upper(target, space);
    expect_witness(t, space.budget);
    EXPECT_LE(t.bound_bits, 8 * (print_canonical(target).size() + 1));
}

TEST(h_joint_upper, pairs_and_duplicates) {
    SearchSpace space;
    SExpr small = parse_one("(p q r s)");
    ComplexityEstimate direct = h_joint_upper(small, small, space);
    EXPECT_EQ(direct.source, "self");  // ((p q r s) (p q r s)) evaluates to itself
    expect_witness(direct, space.budget);

    SExpr x = parse_one("(a b c d e f g h i j k l m n o p q r s t u v w x y z a b c d e)");
    ComplexityEstimate j = h_joint_upper(x, x, space);
    expect_witness(j, space.budget);
    EXPECT_EQ(j.subject, SExpr::list({x, x}));
    EXPECT_EQ(j.source, "duplicate");
    EXPECT_EQ(j.bound_bits, h_upper(x, space).bound_bits + wrapper_bits(duplicating_wrapper_text));
}

TEST(pair_programs, overhead_is_the_wrapper) {
    const std::string wrapper(pairing_wrapper_text);
    EXPECT_EQ(wrapper_bits(pairing_wrapper_text), 8 * (wrapper.size() + 1));
    EXPECT_EQ(wrapper_bits(pairing_wrapper_text), 392u);

    std::mt19937_64 rng(31);
    SearchSpace space;
    for (int i = 0; i < 50; ++i) {
        SExpr x = fuzz::random_sexpr(rng, 3);
        SExpr y = fuzz::random_sexpr(rng, 3);
        BinaryProgram p = h_upper(x, space).witness;
        BinaryProgram q = h_upper(y, space).witness;
        BinaryProgram pq = pair_programs(p, q);
        RunReport r = run_u(pq, space.budget);
        ASSERT_TRUE(r.valid_halt());
        EXPECT_EQ(r.halt()->value, SExpr::list({x, y}));
        EXPECT_EQ(pq.size() - p.size() - q.size(), 392u);
    }

    BinaryProgram never = encode_program("(read-bit)", BitString{});
    EXPECT_THROW(pair_programs(never, never), error);
}

TEST(h_relative_upper, given_program_is_free) {
    SearchSpace space;
    SExpr x = parse_one("(a b c d e f g h i j k l m n o p q r s t u v w x y z)");
    BinaryProgram wy = h_upper(x, space).witness;
    ComplexityEstimate rel = h_relative_upper(x, wy, space);
    EXPECT_EQ(rel.source, "identity");
    EXPECT_EQ(rel.bound_bits, wrapper_bits(identity_wrapper_text));
    EXPECT_EQ(rel.bound_bits, 128u);
    ASSERT_TRUE(rel.given);
    EXPECT_EQ(*rel.given, wy.bits);
    expect_witness(rel, space.budget);

    // Unrelated given: the estimate falls back to ignoring it.
    BinaryProgram other = encode_program("b", BitString{});
    ComplexityEstimate fallback = h_relative_upper(SExpr::atom("q"), other, space);
    EXPECT_EQ(fallback.source, "ignore-given");
    EXPECT_EQ(fallback.bound_bits, wrapper_bits(ignore_given_wrapper_text) + 16);
    expect_witness(fallback, space.budget);

    EXPECT_THROW(h_relative_upper(x, encode_program("(read-bit)", BitString{}), space), error);
}

TEST(mutual_info_estimate, shared_content_shows_up) {
    SearchSpace space;
    SExpr x = parse_one("(a b c d e f g h i j k l m n o p q r s t u v w x y z a b c d e f g h i j k l m n o p)");
    MutualInfoEstimate same = mutual_info_estimate(x, x, space);
    EXPECT_EQ(same.bits, static_cast<long long>(same.x.bound_bits) -
                             static_cast<long long>(wrapper_bits(duplicating_wrapper_text)));
    EXPECT_GT(same.bits, 0);
    MutualInfoEstimate apart = mutual_info_estimate(SExpr::atom("a"), SExpr::atom("b"), space);
    EXPECT_LE(apart.bits, 0);
}

TEST(randomness_report, repetitive_strings_compress) {
    SearchSpace space;
    RandomnessReport zeros = randomness_report(bits_list(std::string(64, '0')), space);
    EXPECT_EQ(zeros.length, 64u);
    EXPECT_TRUE(zeros.compressible);
    EXPECT_EQ(zeros.estimate.source, "generator");
    EXPECT_LT(zeros.bound_bits, zeros.literal_bits);
    EXPECT_GT(zeros.deficiency, 0);
    EXPECT_EQ(zeros.verdict, "compressible at this search scale");
    expect_witness(zeros.estimate, space.budget);

    RandomnessReport mixed = randomness_report(bits_list("0110100110010110"), space);
    EXPECT_FALSE(mixed.compressible);
    EXPECT_EQ(mixed.deficiency, 0);
    EXPECT_EQ(mixed.literal_bits, 8u * (2 + 16 + 15 + 1));
    EXPECT_EQ(mixed.verdict, "incompressible at exhausted range");

    EXPECT_THROW(randomness_report(parse_one("(0 1 2)"), space), error);
    EXPECT_THROW(randomness_report(SExpr::atom("0"), space), error);
}
