#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace ait {

/// A finite bit string, packed most-significant-bit first.
///
/// Unused bits of the final byte are always zero, so two strings of equal
/// length compare lexicographically by comparing their byte buffers.  The
/// buffer is a std::string to get the small-buffer optimisation for the short
/// programs that dominate enumeration (up to 120 bits inline).
class BitString {
public:
    BitString() = default;

    static BitString from_text(std::string_view zeros_and_ones);
    static BitString from_bytes(std::string_view bytes);
    /// `hex` holds ceil(bits / 8) bytes; trailing pad bits must be zero.
    static BitString from_hex(std::string_view hex, std::size_t bits);

    std::size_t size() const noexcept { return bits_; }
    bool empty() const noexcept { return bits_ == 0; }

    bool operator[](std::size_t i) const noexcept {
        return (static_cast<unsigned char>(bytes_[i >> 3]) >> (7 - (i & 7))) & 1u;
    }

    void push_back(bool bit);
    void push_byte(std::uint8_t byte);
    void append(const BitString& other);
    void pop_back();

    /// First `n` bits (n <= size()).
    BitString prefix(std::size_t n) const;
    /// Bits [begin, size()).
    BitString suffix(std::size_t begin) const;
    bool is_prefix_of(const BitString& other) const noexcept;

    /// Byte `i` (bits 8i .. 8i+7); the caller guarantees 8i+8 <= size().
    std::uint8_t byte_at(std::size_t i) const noexcept {
        return static_cast<std::uint8_t>(bytes_[i]);
    }
    const std::string& packed() const noexcept { return bytes_; }

    std::string to_text() const;
    std::string to_hex() const;

    friend bool operator==(const BitString&, const BitString&) = default;
    /// Lexicographic on the bit sequence (a proper prefix sorts first).
    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

private:
    std::string bytes_;
    std::size_t bits_ = 0;
};

/// Shorter first, lexicographic within a length: the enumeration order.
struct ShortLex {
    bool operator()(const BitString& a, const BitString& b) const noexcept {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.packed() < b.packed();
    }
};

} // namespace ait
