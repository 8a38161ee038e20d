#pragma once

#include <string>
#include <vector>

#include "jm/rational.hpp"

namespace jm {

// Dense univariate polynomial over Q, coefficients lowest degree first.
// Degrees in this project never exceed 8.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const BigRat& a) { return UniPoly({a}); }
    static UniPoly monomial(unsigned deg, const BigRat& a);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigRat>& coeffs() const { return c_; }
    BigRat coeff(unsigned i) const { return i < c_.size() ? c_[i] : BigRat(0); }
    const BigRat& leading() const { return c_.back(); }

    BigRat eval(const BigRat& x) const;
    UniPoly derivative() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const BigRat& s) const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    // quotient and remainder over Q (divisor nonzero)
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;

    // integer coefficients with content 1 and positive leading coefficient,
    // equal to this polynomial up to a positive rational factor
    std::vector<BigInt> primitive_integer() const;

    std::string str(const std::string& var = "X") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<BigRat> c_;
};

UniPoly poly_gcd(UniPoly a, UniPoly b);  // monic gcd over Q

// Number of distinct real roots, by Sturm's theorem.
int count_real_roots(const UniPoly& f);

// Exactly the rational roots of f (each once), ascending.  f nonzero.
std::vector<BigRat> rational_roots(const UniPoly& f);

}  // namespace jm
