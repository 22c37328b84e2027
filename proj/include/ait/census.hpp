#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "ait/bits.hpp"
#include "ait/dyadic.hpp"
#include "ait/machine.hpp"

namespace ait {

enum class Status : std::uint8_t { halted_valid, halted_invalid, aborted, unknown };

std::string_view status_name(Status s) noexcept;
std::optional<Status> status_from_name(std::string_view name) noexcept;

/// Detail text of an aborted record that ran off the end of its data.
inline constexpr std::string_view overrun_detail = "overrun";

struct CensusRecord {
    Status status = Status::unknown;
    /// Steps at halt or abort; for unknown, the budget already spent.
    std::uint64_t steps = 0;
    /// Canonical value text for halts; "overrun" or a MalformedProgram
    /// reason for aborts; empty for unknown.
    std::string detail;

    friend bool operator==(const CensusRecord&, const CensusRecord&) = default;
};

struct StatusCounts {
    mpz_class halted_valid = 0;
    mpz_class halted_invalid = 0;
    mpz_class aborted = 0;
    mpz_class unknown = 0;

    mpz_class total() const { return halted_valid + halted_invalid + aborted + unknown; }
    friend bool operator==(const StatusCounts&, const StatusCounts&) = default;
};

/// Halting census built by dovetailing: stage t runs every decodable program
/// of at most min(16 + t, max_bits) bits with a budget of 2^t steps.
///
/// Only the read trie of each prefix is stored.  A program (P, d) gets a
/// record when d is empty or when (P, d minus its last bit) ran off the end
/// of its data; every other enumerated program inherits from its longest
/// recorded ancestor: extensions of a valid halt are halted-invalid,
/// extensions of an unknown run are unknown, extensions of a malformed run
/// are aborted.
struct Census {
    std::string version{MachineConfig::version};
    std::uint64_t stage = 0;
    /// Optional ceiling on program size (desk-scale runs).
    std::optional<std::size_t> max_bits;
    std::map<BitString, CensusRecord, ShortLex> records;

    /// Largest program size enumerated at `stage` (0 before the first stage).
    std::size_t size_cap() const noexcept { return size_cap_at(stage); }
    std::size_t size_cap_at(std::uint64_t t) const noexcept;
    std::uint64_t budget() const noexcept { return budget_at(stage); }
    static std::uint64_t budget_at(std::uint64_t t) noexcept { return std::uint64_t{1} << t; }

    /// Status of any program: nullopt when it is undecodable or not yet
    /// enumerated.
    std::optional<Status> status_of(const BitString& program) const;
    const CensusRecord* find(const BitString& program) const;

    /// Counts over every enumerated program of at most `max_len` bits
    /// (default: all enumerated programs).
    StatusCounts counts(std::optional<std::size_t> max_len = std::nullopt) const;

    friend bool operator==(const Census&, const Census&) = default;
};

struct AdvanceOptions {
    unsigned jobs = 1;
};

/// Runs `stages` further stages.  The result after stage t depends only on t
/// and max_bits, never on jobs.  error("VersionMismatch") when the census
/// was made by another machine version.
void advance(Census& census, std::uint64_t stages, const AdvanceOptions& options = {});

/// Exact sum of 2^-|p| over validly halting recorded programs.
DyadicRational omega_lower_bound(const Census& census);

struct HaltingDecision {
    std::uint64_t stop_stage = 0;
    DyadicRational bound_at_stop;
    std::size_t max_bits = 0;
    std::set<BitString, ShortLex> halting;       // programs of <= max_bits bits
    mpz_class not_halting_count = 0;              // the rest of the enumerated <= max_bits programs

    bool halts(const BitString& program) const { return halting.count(program) != 0; }
};

/// Advances `census` until its Omega lower bound reaches `omega_prefix`, then
/// labels every program of at most `max_bits` bits that has validly halted as
/// halting and everything else as not halting relative to the prefix.
/// error("StageCapExceeded") when the bound is still short at `stage_cap`.
HaltingDecision decide_halting_via_omega(const DyadicRational& omega_prefix, Census& census,
                                         std::size_t max_bits, std::uint64_t stage_cap,
                                         const AdvanceOptions& options = {});

void save_census(const Census& census, std::ostream& out);
void save_census(const Census& census, const std::string& path);
/// error("CorruptFile") or error("VersionMismatch").
Census load_census(std::istream& in);
Census load_census(const std::string& path);

} // namespace ait
