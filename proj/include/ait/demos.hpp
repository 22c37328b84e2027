#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ait/machine.hpp"
#include "ait/sexpr.hpp"

namespace ait {

// ---- Diagonal construction over digit programs --------------------------

/// The first `count` digit programs: canonical prefix texts ordered by size,
/// then bytes.  Program n (1-based) computes the real R(n).
std::vector<std::string> digit_programs(std::size_t count);

/// (1 1 ... 1) with m ones: how a digit position is passed to a program.
SExpr unary(std::size_t m);

/// R(n, m) for the program text: run it with an empty tape; if its value is a
/// function, apply that to the unary position m (same budget).  The digit is
/// the head of the value when that is one of the atoms 0..9.  nullopt (no
/// output) covers running out of budget, invalid halts and non-digit values.
std::optional<int> digit_program_output(const std::string& program_text, std::size_t m,
                                        std::uint64_t budget);
/// Same for the n-th enumerated digit program.
std::optional<int> digit_program_output(std::size_t n, std::size_t m, std::uint64_t budget);

struct DiagonalRow {
    std::size_t n = 0;
    std::string program;
    std::optional<int> diagonal;   // R(n, n)
    int digit = 3;                 // R*(n)
};

/// R*(n) is 2 when R(n, n) is 3, and 3 otherwise (including no output).
int diagonal_digit(std::optional<int> r_nn) noexcept;

std::vector<DiagonalRow> diagonal_digits(std::size_t count, std::uint64_t budget);
/// Rows for an explicit program list (row n uses programs[n - 1]).
std::vector<DiagonalRow> diagonal_digits(std::span<const std::string> programs, std::uint64_t budget);

// ---- Theories as theorem generators --------------------------------------

struct TheoryRun {
    std::size_t size_bits = 0;
    std::vector<SExpr> theorems;   // distinct, in order of first emission
    std::uint64_t budget = 0;
    bool halted = false;           // the generator stopped by itself
    std::string terminal;          // outcome name of the run
};

/// Runs a theorem-emitting program on U and collects what it displays.
/// Running out of budget is the normal end of a run.
TheoryRun run_theory(const BinaryProgram& theory, std::uint64_t budget);

struct OmegaClaims {
    std::set<std::pair<std::size_t, int>> claims;   // (position, bit)
    std::set<std::size_t> contradictions;          // positions claimed both ways
    std::size_t theory_bits = 0;

    bool inconsistent() const noexcept { return !contradictions.empty(); }
    std::size_t positions() const;
};

/// Filters theorems of the form (omega-bit POSITION BIT), POSITION a
/// non-empty unary list and BIT the atom 0 or 1.
OmegaClaims omega_bit_claims(const TheoryRun& run);

} // namespace ait
