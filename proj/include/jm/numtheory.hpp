#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "jm/rational.hpp"

namespace jm {

// Thrown when a factorization exceeds the configured effort bound.  Searches
// treat this as "undecided" rather than an answer.
struct factor_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FactorLimits {
    // abort once the unfactored composite cofactor has more decimal digits
    unsigned max_cofactor_digits = 64;
    // abort after this many Pollard-rho iterations on one cofactor
    std::uint64_t max_rho_iterations = 40'000'000;
};

bool is_prime(const BigInt& n);

// Prime factorization of |n|, n != 0.  Keys ascending.
std::map<BigInt, unsigned> factorize(const BigInt& n, const FactorLimits& limits = {});

BigInt isqrt_floor(const BigInt& n);  // n >= 0

std::optional<BigInt> integer_sqrt_exact(const BigInt& n);
std::optional<BigRat> rational_sqrt_exact(const BigRat& q);

BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& mod);

// Legendre symbol (a|p) for odd prime p: 1, -1, or 0.
int legendre_symbol(const BigInt& a, const BigInt& p);

// Tonelli-Shanks.  Returns the smaller of the two roots x, p-x when a is a
// residue mod the prime p; nullopt for non-residues.
std::optional<BigInt> sqrt_mod_p(const BigInt& a, const BigInt& p);

// Square root of a modulo squarefree odd-or-even m with known factorization,
// combined by CRT.  Returns nullopt if a is a non-residue mod some factor.
std::optional<BigInt> sqrt_mod_squarefree(const BigInt& a, const BigInt& m,
                                          const std::map<BigInt, unsigned>& m_factors);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

// p-adic valuation of n != 0.
unsigned valuation(BigInt n, const BigInt& p);

// largest s with s^2 | n  (n != 0); n/s^2 is the squarefree part
std::pair<BigInt, BigInt> squarefree_decompose(const BigInt& n, const FactorLimits& limits = {});

}  // namespace jm
