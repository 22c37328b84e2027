// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ait/census.hpp"
#include "ait/demos.hpp"
#include "ait/enumerate.hpp"
#include "ait/eval.hpp"
#include "ait/machine.hpp"
#include "ait/metrics.hpp"
#include "fuzz.hpp"

using namespace ait;

namespace {

// Pinned parameters.
constexpr double in_set_seconds = 1.0;
constexpr std::size_t oracle_bits = 24;
constexpr std::size_t desk_max_bits = 32;
constexpr std::uint64_t kraft_stages = 20;
constexpr std::size_t prefix_free_bits = 32;
constexpr int pair_cases = 100;
constexpr std::uint64_t schedule_stage = 20;
constexpr std::size_t diagonal_rows = 50;
constexpr std::uint64_t diagonal_budget = 1u << 12;
constexpr std::uint64_t decision_stage = 24;
constexpr std::size_t decision_bits = 24;
constexpr int monotone_cases = 1000;
constexpr int round_trip_cases = 1000;

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int n, const char* name, const std::function<Verdict()>& check) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = check();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.pass) ++failures;
    std::printf("criterion %2d: %s  %s  (%s; %.1fs)\n", n, v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string serialise(const Census& c) {
    std::ostringstream out;
    save_census(c, out);
    return out.str();
}

// Exact 2^-len sum over validly halting records, computed as a rational.
mpq_class rational_bound(const Census& c) {
    mpq_class sum = 0;
    for (const auto& [bits, r] : c.records)
        if (r.status == Status::halted_valid) {
            mpz_class den = 1;
            den <<= bits.size();
            sum += mpq_class(1, den);
        }
    sum.canonicalize();
    return sum;
}

mpq_class as_rational(const DyadicRational& d) {
    mpz_class den = 1;
    den <<= d.exponent();
    mpq_class q(d.numerator(), den);
    q.canonicalize();
    return q;
}

Verdict in_set_example() {
    const std::string prelude =
        "(define (in-set? member set) (if (= () set) false (if (= member (head set)) true "
        "(in-set? member (tail set)))))";
    auto t0 = std::chrono::steady_clock::now();
    auto value = [&](const std::string& call) {
        auto program = parse(prelude + " " + call);
        Outcome o = evaluate(program, BitTape(), MachineConfig::default_budget);
        auto* h = std::get_if<Halted>(&o);
        return h ? print_canonical(h->value) : std::string(outcome_name(o));
    };
    std::string yes = value("(in-set? (' y) (' (x y z)))");
    std::string no = value("(in-set? (' q) (' (x y z)))");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = yes == "true" && no == "false" && secs < in_set_seconds;
    return {ok, "y -> " + yes + ", q -> " + no};
}

Verdict enumeration_oracle() {
    std::vector<BitString> brute;
    for (std::size_t len = 0; len <= oracle_bits; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
            // Anything shorter than one character and the separator cannot decode,
            // but every string still goes through the decoder.
            BitString b;
            for (std::size_t i = len; i > 0; --i) b.push_back((v >> (i - 1)) & 1u);
            if (std::holds_alternative<DecodedProgram>(decode_program(b))) brute.push_back(std::move(b));
        }
    std::vector<BitString> enumerated;
    enumerate_programs(oracle_bits, [&](const EnumeratedProgram& e) { enumerated.push_back(e.program.bits); });
    std::set<BitString> a(brute.begin(), brute.end()), b(enumerated.begin(), enumerated.end());
    bool ok = a == b && b.size() == enumerated.size();
    return {ok, std::to_string(a.size()) + " decodable strings, " + std::to_string(enumerated.size()) + " enumerated"};
}

Verdict kraft_and_monotone() {
    Census c;
    c.max_bits = desk_max_bits;
    DyadicRational last;
    const DyadicRational one(1, 0);
    bool ok = true;
    std::string why;
    for (std::uint64_t t = 1; t <= kraft_stages; ++t) {
        advance(c, 1);
        DyadicRational b = omega_lower_bound(c);
        if (b < last) ok = false, why = "decreased at stage " + std::to_string(t);
        if (b > one) ok = false, why = "exceeds 1 at stage " + std::to_string(t);
        if (as_rational(b) != rational_bound(c)) ok = false, why = "inexact at stage " + std::to_string(t);
        last = b;
    }
    BitString nil = BitString::from_bytes("()");
    nil.push_byte(0);
    bool nil_halts = c.status_of(nil) == Status::halted_valid;
    ok = ok && !last.is_zero() && nil_halts;
    return {ok, why.empty() ? "bound " + last.to_fraction() + " after " + std::to_string(kraft_stages) +
                                  " stages, () halts validly: " + (nil_halts ? "yes" : "no")
                            : why};
}

Verdict prefix_free() {
    std::vector<BitString> halting;
    std::uint64_t runs = 0;
    enumerate_programs(prefix_free_bits, [&](const EnumeratedProgram& e) {
        ++runs;
        RunReport r = run_decoded(*e.prefix, e.program.bits, e.prefix->prefix_bits, MachineConfig::default_budget);
        if (r.valid_halt()) halting.push_back(e.program.bits);
    });
    // In lexicographic order a proper prefix is followed by one of its extensions.
    std::sort(halting.begin(), halting.end());
    std::size_t clashes = 0;
    for (std::size_t i = 1; i < halting.size(); ++i)
        if (halting[i - 1].is_prefix_of(halting[i])) ++clashes;
    return {clashes == 0, std::to_string(runs) + " programs run, " + std::to_string(halting.size()) +
                              " valid halts, " + std::to_string(clashes) + " prefix pairs"};
}

Verdict subadditivity() {
    std::mt19937_64 rng(2024);
    SearchSpace space;
    std::optional<std::size_t> c_pair;
    int good = 0;
    auto witness = [&](SExpr& value) {
        // Half the witnesses read their value from data bits.
        if (rng() % 2) {
            value = fuzz::random_sexpr(rng, 3);
            return h_upper(value, space).witness;
        }
        BitString data = fuzz::random_bits(rng, 6);
        SExpr::List bits;
        for (std::size_t i = 0; i < data.size(); ++i) bits.push_back(SExpr::atom(data[i] ? "1" : "0"));
        value = SExpr::list(std::move(bits));
        std::string reader = "(' ())";
        for (std::size_t i = 0; i < data.size(); ++i) reader = "(join (read-bit) " + reader + ")";
        return encode_program(reader, data);
    };
    for (int i = 0; i < pair_cases; ++i) {
        SExpr x, y;
        BinaryProgram p = witness(x), q = witness(y);
        BinaryProgram pq = pair_programs(p, q, space.budget);
        RunReport r = run_u(pq, space.budget);
        std::size_t overhead = pq.size() - p.size() - q.size();
        if (!c_pair) c_pair = overhead;
        if (r.valid_halt() && r.halt()->value == SExpr::list({x, y}) && overhead == *c_pair) ++good;
    }
    bool ok = good == pair_cases && c_pair == wrapper_bits(pairing_wrapper_text);
    return {ok, std::to_string(good) + "/" + std::to_string(pair_cases) + " pairs, c_pair = " +
                    std::to_string(c_pair.value_or(0)) + " bits"};
}

Verdict schedule_independence() {
    Census serial, parallel;
    serial.max_bits = parallel.max_bits = desk_max_bits;
    advance(serial, schedule_stage, AdvanceOptions{1});
    advance(parallel, schedule_stage, AdvanceOptions{8});
    std::string a = serialise(serial), b = serialise(parallel);
    return {a == b, "stage " + std::to_string(schedule_stage) + ", " + std::to_string(a.size()) + " bytes each"};
}

Verdict diagonal() {
    auto rows = diagonal_digits(diagonal_rows, diagonal_budget);
    std::size_t produced = 0, differing = 0;
    for (const auto& r : rows)
        if (r.diagonal) {
            ++produced;
            if (r.digit != *r.diagonal) ++differing;
        }
    bool ok = rows.size() == diagonal_rows && produced == differing;
    return {ok, std::to_string(produced) + " rows produced a digit, all differ: " + (ok ? "yes" : "no")};
}

Verdict omega_decision() {
    // Phase one: a long run, remembering the halts after every stage.
    Census reference;
    reference.max_bits = desk_max_bits;
    std::vector<DyadicRational> bounds;
    std::vector<std::set<BitString>> halted;
    for (std::uint64_t t = 1; t <= decision_stage; ++t) {
        advance(reference, 1);
        bounds.push_back(omega_lower_bound(reference));
        std::set<BitString> h;
        for (const auto& [bits, r] : reference.records)
            if (r.status == Status::halted_valid && bits.size() <= decision_bits) h.insert(bits);
        halted.push_back(std::move(h));
    }
    const DyadicRational target = bounds.back().truncate(decision_bits);
    std::size_t first = 0;
    while (bounds[first] < target) ++first;

    // Phase two: replay from nothing, driven only by the truncated bound.
    Census fresh;
    fresh.max_bits = desk_max_bits;
    HaltingDecision d = decide_halting_via_omega(target, fresh, decision_bits, decision_stage);
    std::size_t missing = 0;
    for (const auto& b : halted[first])
        if (!d.halts(b)) ++missing;
    bool ok = missing == 0 && d.stop_stage == first + 1;
    return {ok, "target " + target.to_fraction() + " first reached at stage " + std::to_string(first + 1) +
                    ", replay stopped at " + std::to_string(d.stop_stage) + ", " +
                    std::to_string(halted[first].size()) + " halts, " + std::to_string(missing) + " missed"};
}

Verdict budget_monotone() {
    std::mt19937_64 rng(99);
    int halted = 0, broken = 0;
    for (int i = 0; i < monotone_cases; ++i) {
        auto program = fuzz::random_program(rng);
        BitString tape = fuzz::random_bits(rng, 12);
        std::uint64_t b = 1 + rng() % 512;
        Outcome o = evaluate(program, BitTape(tape), b);
        auto* h = std::get_if<Halted>(&o);
        if (!h) continue;
        ++halted;
        for (std::uint64_t k : {2, 4}) {
            Outcome later = evaluate(program, BitTape(tape), k * b);
            auto* h2 = std::get_if<Halted>(&later);
            if (!h2 || h2->value != h->value || h2->bits_consumed != h->bits_consumed) ++broken;
        }
    }
    return {broken == 0 && halted > 0, std::to_string(halted) + " of " + std::to_string(monotone_cases) +
                                           " runs halted, " + std::to_string(broken) + " changed"};
}

Verdict round_trips() {
    std::mt19937_64 rng(7);
    int sexpr_bad = 0, program_bad = 0, census_bad = 0;
    for (int i = 0; i < round_trip_cases; ++i) {
        SExpr x = fuzz::random_sexpr(rng);
        std::string text = print_canonical(x);
        auto back = parse(text);
        if (back.size() != 1 || !(back[0] == x) || print_canonical(back[0]) != text) ++sexpr_bad;

        std::vector<SExpr> prefix{x};
        BitString data = fuzz::random_bits(rng, 40);
        BinaryProgram p = encode_program(prefix, data);
        auto d = decode_program(p.bits);
        auto* dp = std::get_if<DecodedProgram>(&d);
        if (!dp || dp->prefix->forms != prefix || dp->data != data) ++program_bad;
    }
    for (int i = 0; i < 50; ++i) {
        Census c;
        c.stage = rng() % 40;
        if (rng() % 2) c.max_bits = 16 + rng() % 30;
        for (int k = rng() % 200; k > 0; --k) {
            CensusRecord r;
            r.status = static_cast<Status>(rng() % 4);
            r.steps = rng() % 100000;
            if (r.status == Status::halted_valid || r.status == Status::halted_invalid)
                r.detail = print_canonical(fuzz::random_sexpr(rng));
            else if (r.status == Status::aborted)
                r.detail = rng() % 2 ? std::string(overrun_detail) : "ParseFail";
            // Census keys are whole programs, so never shorter than 16 bits.
            BitString key;
            for (int b = 0; b < 16; ++b) key.push_back(rng() & 1u);
            key.append(fuzz::random_bits(rng, 44));
            c.records.insert_or_assign(key, r);
        }
        std::istringstream in(serialise(c));
        if (!(load_census(in) == c)) ++census_bad;
    }
    for (std::uint64_t t = 1; t <= 8; ++t) {
        Census c;
        c.max_bits = 24;
        advance(c, t);
        std::istringstream in(serialise(c));
        if (!(load_census(in) == c)) ++census_bad;
    }
    bool ok = sexpr_bad == 0 && program_bad == 0 && census_bad == 0;
    return {ok, "mismatches: sexpr " + std::to_string(sexpr_bad) + ", program " + std::to_string(program_bad) +
                    ", census " + std::to_string(census_bad)};
}

} // namespace

int main() {
    std::printf("machine %s\n", std::string(MachineConfig::version).c_str());
    criterion(1, "set membership example", in_set_example);
    criterion(2, "enumeration equals brute-force decoding", enumeration_oracle);
    criterion(3, "Omega bound exact, monotone, within Kraft", kraft_and_monotone);
    criterion(4, "valid halts are prefix-free", prefix_free);
    criterion(5, "pairing overhead is one constant", subadditivity);
    criterion(6, "census independent of job count", schedule_independence);
    criterion(7, "diagonal digit differs", diagonal);
    criterion(8, "halting decided from an Omega prefix", omega_decision);
    criterion(9, "halting survives larger budgets", budget_monotone);
    criterion(10, "round trips are lossless", round_trips);
    std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
