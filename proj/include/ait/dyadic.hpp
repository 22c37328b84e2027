#pragma once

#include <compare>
#include <cstddef>
#include <string>

#include <gmpxx.h>

namespace ait {

/// Exact m / 2^k, kept normalised (m odd, or m = 0 with k = 0).
class DyadicRational {
public:
    DyadicRational() = default;
    DyadicRational(mpz_class numerator, std::size_t exponent);

    /// 2^-k.
    static DyadicRational pow2_inverse(std::size_t k);
    /// Parses "0.b1b2..." binary expansions and "m/2^k" fractions.
    static DyadicRational parse(const std::string& text);

    const mpz_class& numerator() const noexcept { return num_; }
    std::size_t exponent() const noexcept { return exp_; }
    bool is_zero() const noexcept { return num_ == 0; }

    DyadicRational& operator+=(const DyadicRational& rhs);
    friend DyadicRational operator+(DyadicRational a, const DyadicRational& b) { return a += b; }

    /// floor(x * 2^n) / 2^n: the first n bits after the binary point.
    DyadicRational truncate(std::size_t n) const;

    /// "m/2^k" (exact) and "0" for zero.
    std::string to_fraction() const;
    /// The full, terminating binary expansion, e.g. "0.0101".
    std::string to_binary() const;

    friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
        return a.exp_ == b.exp_ && a.num_ == b.num_;
    }
    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

private:
    void normalise();

    mpz_class num_ = 0;
    std::size_t exp_ = 0;
};

} // namespace ait
