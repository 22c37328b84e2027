#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ait/census.hpp"
#include "ait/machine.hpp"
#include "ait/sexpr.hpp"

namespace ait {

/// Where complexity searches look for witnesses.  Every candidate is re-run
/// before it is accepted, so a stale census can only cost tightness.
struct SearchSpace {
    /// Shortest (shortlex-first) validly halting census program per value text.
    std::unordered_map<std::string, BitString> census_index;
    /// Programs of at most this many bits were enumerated (0: no census).
    std::size_t exhausted_to = 0;
    /// Extra programs to consider, e.g. hand-written generators.
    std::vector<BinaryProgram> candidates;
    std::uint64_t budget = MachineConfig::default_budget;

    static SearchSpace from_census(const Census& census);
};

/// An upper bound on program-size complexity, with the program proving it.
/// For relative estimates the witness is run with `given` spliced in right
/// after the separator; `given` does not count towards bound_bits.
struct ComplexityEstimate {
    SExpr subject;
    std::size_t bound_bits = 0;
    BinaryProgram witness;
    std::optional<BitString> given;
    std::size_t search_exhausted_to = 0;
    std::uint64_t budget = 0;
    /// census, self, literal, generator, pair, duplicate, candidate, identity, ignore-given
    std::string source;
};

/// The program actually run for an estimate (the witness with `given` spliced in).
BinaryProgram assembled_witness(const ComplexityEstimate& e);

ComplexityEstimate h_upper(const SExpr& x, const SearchSpace& space);
ComplexityEstimate h_joint_upper(const SExpr& x, const SExpr& y, const SearchSpace& space);
/// `wy` must halt validly (else error("InvalidWitness")).
ComplexityEstimate h_relative_upper(const SExpr& x, const BinaryProgram& wy, const SearchSpace& space);

struct MutualInfoEstimate {
    ComplexityEstimate x, y, joint;
    long long bits = 0;   // x.bound + y.bound - joint.bound
};
MutualInfoEstimate mutual_info_estimate(const SExpr& x, const SExpr& y, const SearchSpace& space);

/// Prefix that runs two appended programs and pairs their values.
inline constexpr std::string_view pairing_wrapper_text =
    "(join (run-remaining) (join (run-remaining) ()))";
/// Prefix that runs one appended program and pairs its value with itself.
inline constexpr std::string_view duplicating_wrapper_text =
    "((lambda (v) (join v (join v ()))) (run-remaining))";
/// Prefix that runs a given program, discards its value, then runs its own.
inline constexpr std::string_view ignore_given_wrapper_text =
    "((lambda (y v) v) (run-remaining) (run-remaining))";
/// Prefix that simply runs the given program.
inline constexpr std::string_view identity_wrapper_text = "(run-remaining)";

/// Encoded size of a wrapper prefix (text plus separator).
std::size_t wrapper_bits(std::string_view text);

/// encode(pairing wrapper, p ++ q).  error("InvalidWitness") unless both halt
/// validly within `budget`.
BinaryProgram pair_programs(const BinaryProgram& p, const BinaryProgram& q,
                            std::uint64_t budget = MachineConfig::default_budget);

struct RandomnessReport {
    std::size_t length = 0;          // N
    std::size_t bound_bits = 0;      // best upper bound found
    std::size_t literal_bits = 0;    // shorter of (' x) and x itself, when x self-evaluates
    std::size_t overhead = 0;        // literal_bits - N
    long long deficiency = 0;        // N - (bound - overhead)
    bool compressible = false;       // bound beats literal_bits
    ComplexityEstimate estimate;
    std::string verdict;
};

/// x must be a list of atoms 0 and 1 (error("NotABitString") otherwise).
RandomnessReport randomness_report(const SExpr& x, const SearchSpace& space);

/// Doubling generators for lists that are a block repeated 2^k times.
std::vector<BinaryProgram> generator_candidates(const SExpr& x);

} // namespace ait
