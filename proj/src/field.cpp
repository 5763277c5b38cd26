#include "vsslab/field.hpp"

#include "vsslab/errors.hpp"

namespace vsslab {

Fe::Fe(uint64_t value, uint64_t modulus) : value_(value % modulus), modulus_(modulus) {
    if (modulus < 2 || modulus > 0xFFFFFFFFull) throw FieldTooSmall("modulus out of range");
}

uint64_t Fe::common_modulus(const Fe& rhs) {
    if (modulus_ == rhs.modulus_) return modulus_;
    if (modulus_ == 0) {
        modulus_ = rhs.modulus_;
        return modulus_;
    }
    if (rhs.modulus_ == 0) return modulus_;
    throw FieldMismatch("operands from different fields");
}

Fe& Fe::operator+=(const Fe& rhs) {
    uint64_t m = common_modulus(rhs);
    if (m == 0) return *this;
    value_ = (value_ + rhs.value_) % m;
    return *this;
}

Fe& Fe::operator-=(const Fe& rhs) {
    uint64_t m = common_modulus(rhs);
    if (m == 0) return *this;
    value_ = (value_ + m - rhs.value_) % m;
    return *this;
}

Fe& Fe::operator*=(const Fe& rhs) {
    uint64_t m = common_modulus(rhs);
    if (m == 0) return *this;
    value_ = (value_ * rhs.value_) % m;
    return *this;
}

Fe& Fe::operator/=(const Fe& rhs) {
    Fe other = rhs;
    if (other.modulus_ == 0) other.modulus_ = modulus_;
    return *this *= other.inv();
}

Fe Fe::operator-() const {
    Fe out = *this;
    if (modulus_ != 0 && value_ != 0) out.value_ = modulus_ - value_;
    return out;
}

Fe Fe::pow(uint64_t exponent) const {
    Fe result(1, modulus_);
    Fe base = *this;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

Fe Fe::inv() const {
    if (value_ == 0) throw DivisionByZero("inverse of zero");
    return pow(modulus_ - 2);
}

bool is_prime(uint64_t value) {
    if (value < 2) return false;
    for (uint64_t d = 2; d * d <= value; ++d) {
        if (value % d == 0) return false;
    }
    return true;
}

unsigned bits_for(uint64_t count) {
    unsigned bits = 0;
    while (bits < 64 && (1ull << bits) < count) ++bits;
    return bits == 0 ? 1 : bits;
}

FieldParams::FieldParams(uint64_t p, int n, int num_betas) : p_(p), n_(n), num_betas_(num_betas) {
    if (!is_prime(p) || p > 0xFFFFFFFFull) throw FieldTooSmall("p must be a prime below 2^32");
    if (n < 1 || num_betas < 0) throw FieldTooSmall("party count must be positive");
    if (static_cast<uint64_t>(n) + static_cast<uint64_t>(num_betas) >= p) {
        throw FieldTooSmall("p must exceed the number of evaluation points");
    }
}

Fe FieldParams::alpha(int party) const { return Fe(static_cast<uint64_t>(party) + 1, p_); }

Fe FieldParams::beta(int slot) const {
    return Fe(static_cast<uint64_t>(n_) + 1 + static_cast<uint64_t>(slot), p_);
}

std::vector<Fe> FieldParams::betas() const {
    std::vector<Fe> out;
    for (int k = 0; k < num_betas_; ++k) out.push_back(beta(k));
    return out;
}

}  // namespace vsslab
