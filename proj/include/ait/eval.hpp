#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ait/bits.hpp"
#include "ait/sexpr.hpp"

namespace ait {

/// Read-only view of raw data bits with a cursor.  The viewed BitString
/// must outlive the tape.  Reading past the end is an overrun, never a value.
class BitTape {
public:
    BitTape() = default;
    explicit BitTape(const BitString& bits, std::size_t begin = 0)
        : bits_(&bits), begin_(begin), cursor_(begin) {}

    std::size_t length() const noexcept { return bits_ ? bits_->size() - begin_ : 0; }
    std::size_t consumed() const noexcept { return cursor_ - begin_; }
    bool exhausted() const noexcept { return !bits_ || cursor_ >= bits_->size(); }

    /// Next bit, or nullopt on overrun.
    std::optional<bool> read() noexcept {
        if (exhausted()) return std::nullopt;
        return (*bits_)[cursor_++];
    }

private:
    const BitString* bits_ = nullptr;
    std::size_t begin_ = 0;
    std::size_t cursor_ = 0;
};

struct Halted {
    SExpr value;
    std::size_t bits_consumed = 0;
    std::uint64_t steps = 0;
    std::vector<SExpr> emitted;

    friend bool operator==(const Halted&, const Halted&) = default;
};

/// The program asked for a bit after the last one.
struct AbortOverrun {
    std::uint64_t steps = 0;
    std::vector<SExpr> emitted;

    friend bool operator==(const AbortOverrun&, const AbortOverrun&) = default;
};

struct OutOfTime {
    std::uint64_t steps = 0;
    std::vector<SExpr> emitted;

    friend bool operator==(const OutOfTime&, const OutOfTime&) = default;
};

/// reason: NonDefineForm, NoSeparator, BadChar or ParseFail.
struct MalformedProgram {
    std::string reason;

    friend bool operator==(const MalformedProgram&, const MalformedProgram&) = default;
};

using Outcome = std::variant<Halted, AbortOverrun, OutOfTime, MalformedProgram>;

/// "Halted", "AbortOverrun", "OutOfTime" or "MalformedProgram".
std::string_view outcome_name(const Outcome& o) noexcept;
const std::vector<SExpr>* outcome_emissions(const Outcome& o) noexcept;
inline bool is_halted(const Outcome& o) noexcept { return std::holds_alternative<Halted>(o); }

struct EvalOptions {
    /// When set and the program's value is a closure, that closure is applied
    /// to this argument within the same budget.
    std::optional<SExpr> apply_result_to;
};

/// Runs a program (zero or more define forms followed by one body form) on a
/// tape with a step budget.  Every evaluator entry costs one step.
///
/// Special forms: quote / ', if, define, lambda.  Primitives: =, head/car,
/// tail/cdr, join, atom?, read-bit, display, run-remaining.  Semantics are
/// total: unbound atoms evaluate to themselves, head/tail of an atom give the
/// atom / (), missing arguments are (), extra arguments are ignored, and
/// applying something that is not a function yields the list of the
/// evaluated head and arguments.  Anything but the atom false is true.
Outcome evaluate(std::span<const SExpr> program, BitTape tape, std::uint64_t budget,
                 const EvalOptions& options = {});

struct BudgetProbe {
    std::uint64_t budget;   // first budget in the doubling sequence that halts
    Halted result;          // result.steps is the exact minimal budget
};

/// Doubles the budget from `initial` until the run halts; error("CapExceeded")
/// once the budget would exceed `cap` without a halt.
BudgetProbe step_budget_probe(std::span<const SExpr> program, const BitString& tape,
                              std::uint64_t cap, std::uint64_t initial = 1);

} // namespace ait
