#include "ait/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace ait {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

BitString BitString::from_text(std::string_view text) {
    BitString out;
    for (char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bit text may only contain '0' and '1'");
        out.push_back(c == '1');
    }
    return out;
}

BitString BitString::from_bytes(std::string_view bytes) {
    BitString out;
    out.bytes_.assign(bytes.begin(), bytes.end());
    out.bits_ = bytes.size() * 8;
    return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t bits) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("odd number of hex digits");
    if (hex.size() / 2 != (bits + 7) / 8)
        throw std::invalid_argument("hex length does not match bit length");
    BitString out;
    out.bytes_.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_value(hex[i]);
        int lo = hex_value(hex[i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("bad hex digit");
        out.bytes_.push_back(static_cast<char>(hi * 16 + lo));
    }
    out.bits_ = bits;
    if (bits % 8 != 0) {
        auto pad_mask = static_cast<unsigned char>(0xffu >> (bits % 8));
        if (static_cast<unsigned char>(out.bytes_.back()) & pad_mask)
            throw std::invalid_argument("nonzero pad bits after the last program bit");
    }
    return out;
}

void BitString::push_back(bool bit) {
    if ((bits_ & 7) == 0) bytes_.push_back('\0');
    if (bit) bytes_.back() = static_cast<char>(static_cast<unsigned char>(bytes_.back()) | (0x80u >> (bits_ & 7)));
    ++bits_;
}

void BitString::push_byte(std::uint8_t byte) {
    if ((bits_ & 7) == 0) {
        bytes_.push_back(static_cast<char>(byte));
        bits_ += 8;
        return;
    }
    for (int i = 7; i >= 0; --i) push_back((byte >> i) & 1u);
}

void BitString::append(const BitString& other) {
    if ((bits_ & 7) == 0) {
        bytes_ += other.bytes_;
        bits_ += other.bits_;
        return;
    }
    for (std::size_t i = 0; i < other.size(); ++i) push_back(other[i]);
}

void BitString::pop_back() {
    if (bits_ == 0) return;
    --bits_;
    if ((bits_ & 7) == 0) {
        bytes_.pop_back();
    } else {
        bytes_.back() = static_cast<char>(static_cast<unsigned char>(bytes_.back()) & ~(0x80u >> (bits_ & 7)));
    }
}

BitString BitString::prefix(std::size_t n) const {
    BitString out;
    n = std::min(n, bits_);
    out.bytes_ = bytes_.substr(0, (n + 7) / 8);
    out.bits_ = n;
    if (n % 8 != 0)
        out.bytes_.back() = static_cast<char>(static_cast<unsigned char>(out.bytes_.back()) & (0xff00u >> (n % 8)));
    return out;
}

BitString BitString::suffix(std::size_t begin) const {
    BitString out;
    if (begin % 8 == 0 && begin <= bits_) {
        out.bytes_ = bytes_.substr(begin / 8);
        out.bits_ = bits_ - begin;
        return out;
    }
    for (std::size_t i = begin; i < bits_; ++i) out.push_back((*this)[i]);
    return out;
}

bool BitString::is_prefix_of(const BitString& other) const noexcept {
    if (bits_ > other.bits_) return false;
    std::size_t whole = bits_ / 8;
    if (bytes_.compare(0, whole, other.bytes_, 0, whole) != 0) return false;
    for (std::size_t i = whole * 8; i < bits_; ++i)
        if ((*this)[i] != other[i]) return false;
    return true;
}

std::string BitString::to_text() const {
    std::string out;
    out.reserve(bits_);
    for (std::size_t i = 0; i < bits_; ++i) out.push_back((*this)[i] ? '1' : '0');
    return out;
}

std::string BitString::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes_.size() * 2);
    for (char c : bytes_) {
        auto b = static_cast<unsigned char>(c);
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    std::size_t common = std::min(a.bits_, b.bits_);
    std::size_t whole = common / 8;
    int c = a.bytes_.compare(0, whole, b.bytes_, 0, whole);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    for (std::size_t i = whole * 8; i < common; ++i) {
        if (a[i] != b[i]) return a[i] ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.bits_ <=> b.bits_;
}

} // namespace ait
