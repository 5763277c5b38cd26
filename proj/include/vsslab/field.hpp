#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vsslab {

// Element of GF(p), p prime and below 2^32. A default-constructed element is a
// field-less zero that adopts the modulus of the other operand.
class Fe {
public:
    Fe() = default;
    Fe(uint64_t value, uint64_t modulus);

    uint64_t value() const { return value_; }
    uint64_t modulus() const { return modulus_; }
    bool is_zero() const { return value_ == 0; }

    Fe inv() const;
    Fe pow(uint64_t exponent) const;

    Fe& operator+=(const Fe& rhs);
    Fe& operator-=(const Fe& rhs);
    Fe& operator*=(const Fe& rhs);
    Fe& operator/=(const Fe& rhs);
    Fe operator-() const;

    friend Fe operator+(Fe a, const Fe& b) { return a += b; }
    friend Fe operator-(Fe a, const Fe& b) { return a -= b; }
    friend Fe operator*(Fe a, const Fe& b) { return a *= b; }
    friend Fe operator/(Fe a, const Fe& b) { return a /= b; }
    friend bool operator==(const Fe& a, const Fe& b) { return a.value_ == b.value_; }
    friend auto operator<=>(const Fe& a, const Fe& b) { return a.value_ <=> b.value_; }

    std::string to_string() const { return std::to_string(value_); }

private:
    uint64_t common_modulus(const Fe& rhs);

    uint64_t value_ = 0;
    uint64_t modulus_ = 0;
};

bool is_prime(uint64_t value);

unsigned bits_for(uint64_t count);

// Field together with the public evaluation points: alpha(i) = i + 1 for party
// index i, beta(k) = n + 1 + k for secret slot k.
class FieldParams {
public:
    FieldParams(uint64_t p, int n, int num_betas = 0);

    uint64_t p() const { return p_; }
    int n() const { return n_; }
    int num_betas() const { return num_betas_; }
    Fe elem(uint64_t v) const { return Fe(v % p_, p_); }
    Fe zero() const { return Fe(0, p_); }
    Fe one() const { return Fe(1, p_); }
    Fe alpha(int party) const;
    Fe beta(int slot) const;
    std::vector<Fe> betas() const;
    unsigned elem_bits() const { return bits_for(p_); }
    unsigned id_bits() const { return bits_for(static_cast<uint64_t>(n_) + 1); }

private:
    uint64_t p_;
    int n_;
    int num_betas_;
};

}  // namespace vsslab
