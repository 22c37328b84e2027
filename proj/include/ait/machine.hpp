#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ait/bits.hpp"
#include "ait/eval.hpp"
#include "ait/sexpr.hpp"

namespace ait {

/// The universal machine U: an 8-bit ASCII prefix in canonical S-expression
/// form, one separator byte, then raw data bits read by the prefix.
struct MachineConfig {
    static constexpr std::uint8_t separator = 0x00;
    static constexpr unsigned char_bits = 8;
    /// Bumped whenever evaluator semantics or the encoding change.
    static constexpr std::string_view version = "aitlab-u/1";
    static constexpr std::uint64_t default_budget = 1u << 16;

    /// FNV-1a over the fields above; recorded in census files.
    static std::uint64_t config_hash() noexcept;
};

/// A program for U.  Not every bit string decodes.
struct BinaryProgram {
    BitString bits;

    std::size_t size() const noexcept { return bits.size(); }
    friend bool operator==(const BinaryProgram&, const BinaryProgram&) = default;
};

/// A decoded prefix shared by every program that extends it with data.
struct DecodedPrefix {
    std::string text;             // canonical text
    std::vector<SExpr> forms;
    std::size_t prefix_bits = 0;  // 8 * (text.size() + 1), separator included
};

struct DecodedProgram {
    std::shared_ptr<const DecodedPrefix> prefix;
    BitString data;
};

using DecodeResult = std::variant<DecodedProgram, MalformedProgram>;

/// Bits for the canonical text of `prefix`, the separator, then `data`.
BinaryProgram encode_program(std::span<const SExpr> prefix, const BitString& data);
/// Same, from text; the text is parsed and re-printed canonically first.
BinaryProgram encode_program(std::string_view prefix_text, const BitString& data);

/// Inverse of encode_program.  Reasons: NoSeparator, BadChar, ParseFail
/// (unparseable, empty, or not in canonical form).
DecodeResult decode_program(const BitString& bits);

/// Outcome of a run on U plus the validity rule: a halt only counts when
/// every data bit was consumed.
struct RunReport {
    Outcome outcome;
    std::size_t data_bits = 0;

    bool halted() const noexcept { return is_halted(outcome); }
    bool valid_halt() const noexcept {
        auto* h = std::get_if<Halted>(&outcome);
        return h && h->bits_consumed == data_bits;
    }
    const Halted* halt() const noexcept { return std::get_if<Halted>(&outcome); }
};

RunReport run_u(const BinaryProgram& p, std::uint64_t budget, const EvalOptions& options = {});
/// Runs a decoded prefix against the data bits [data_begin, bits.size()) of `bits`.
RunReport run_decoded(const DecodedPrefix& prefix, const BitString& bits, std::size_t data_begin,
                      std::uint64_t budget, const EvalOptions& options = {});

/// Program file: a line "bits: N" then the hex of the packed bits.
void write_program(std::ostream& out, const BinaryProgram& p);
BinaryProgram read_program(std::istream& in);

} // namespace ait
