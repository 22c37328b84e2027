#include "ait/dyadic.hpp"

#include <stdexcept>

#include "ait/error.hpp"

namespace ait {

namespace {

mpz_class shifted(const mpz_class& m, std::size_t k) {
    mpz_class out;
    mpz_mul_2exp(out.get_mpz_t(), m.get_mpz_t(), k);
    return out;
}

} // namespace

DyadicRational::DyadicRational(mpz_class numerator, std::size_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
    if (num_ < 0) throw std::invalid_argument("dyadic values here are non-negative");
    normalise();
}

DyadicRational DyadicRational::pow2_inverse(std::size_t k) { return DyadicRational(1, k); }

void DyadicRational::normalise() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    auto twos = mpz_scan1(num_.get_mpz_t(), 0);
    std::size_t drop = std::min<std::size_t>(twos, exp_);
    if (drop) {
        mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), drop);
        exp_ -= drop;
    }
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& rhs) {
    if (exp_ >= rhs.exp_) {
        num_ += shifted(rhs.num_, exp_ - rhs.exp_);
    } else {
        num_ = shifted(num_, rhs.exp_ - exp_) + rhs.num_;
        exp_ = rhs.exp_;
    }
    normalise();
    return *this;
}

DyadicRational DyadicRational::truncate(std::size_t n) const {
    if (exp_ <= n) return *this;
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), num_.get_mpz_t(), exp_ - n);
    return DyadicRational(q, n);
}

std::string DyadicRational::to_fraction() const {
    if (num_ == 0) return "0";
    return num_.get_str() + "/2^" + std::to_string(exp_);
}

std::string DyadicRational::to_binary() const {
    mpz_class whole;
    mpz_fdiv_q_2exp(whole.get_mpz_t(), num_.get_mpz_t(), exp_);
    std::string out = whole.get_str(2);
    if (exp_ == 0) return out;
    mpz_class frac;
    mpz_fdiv_r_2exp(frac.get_mpz_t(), num_.get_mpz_t(), exp_);
    std::string digits = frac.get_str(2);
    out += '.';
    out.append(exp_ - digits.size(), '0');
    out += digits;
    return out;
}

DyadicRational DyadicRational::parse(const std::string& text) {
    try {
        if (auto slash = text.find("/2^"); slash != std::string::npos) {
            mpz_class m(text.substr(0, slash), 10);
            std::size_t used = 0;
            std::size_t k = std::stoull(text.substr(slash + 3), &used);
            if (used != text.size() - slash - 3) throw std::invalid_argument("trailing text");
            return DyadicRational(m, k);
        }
        auto dot = text.find('.');
        std::string whole = text.substr(0, dot);
        std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
        if (whole.empty() && frac.empty()) throw std::invalid_argument("empty");
        for (char c : whole + frac)
            if (c != '0' && c != '1') throw std::invalid_argument("not binary");
        mpz_class m(whole + frac, 2);
        return DyadicRational(m, frac.size());
    } catch (const std::logic_error&) {
        throw error("BadNumber", "not a dyadic rational: " + text);
    }
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
    int c;
    if (a.exp_ >= b.exp_)
        c = cmp(a.num_, shifted(b.num_, a.exp_ - b.exp_));
    else
        c = cmp(shifted(a.num_, b.exp_ - a.exp_), b.num_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

} // namespace ait
