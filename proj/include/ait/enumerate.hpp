#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ait/machine.hpp"

namespace ait {

/// Recogniser state for canonical program text, one character at a time.
/// Canonical text is what print_canonical produces for a non-empty sequence
/// of expressions: single spaces between siblings, no space after `(` or
/// before `)`, and a quote atom always followed by a space or `)`.
struct CanonicalTextState {
    enum class Last : std::uint8_t { start, open, close, space, atom_char, quote };

    std::uint32_t depth = 0;
    Last last = Last::start;

    /// nullopt when no canonical text begins with the extended string.
    std::optional<CanonicalTextState> step(char c) const noexcept;
    /// The text read so far is itself canonical.
    bool accepting() const noexcept {
        return depth == 0 && (last == Last::close || last == Last::atom_char);
    }
};

/// Every canonical text of exactly `chars` characters, ascending byte order.
void for_each_canonical_text(std::size_t chars, const std::function<void(const std::string&)>& sink);
std::vector<std::string> canonical_texts(std::size_t chars);

struct EnumeratedProgram {
    BinaryProgram program;
    std::shared_ptr<const DecodedPrefix> prefix;
};

/// Every decodable program of at most `max_bits` bits, exactly once, shorter
/// first and lexicographic within a length.  Undecodable strings are skipped.
/// Each prefix is decoded once and shared by its data extensions.
void enumerate_programs(std::size_t max_bits, const std::function<void(const EnumeratedProgram&)>& sink);

/// Decodes a text known to be canonical.
std::shared_ptr<const DecodedPrefix> decode_prefix_text(const std::string& text);

} // namespace ait
