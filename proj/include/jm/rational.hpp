#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace jm {

// Exact arbitrary-precision scalars. GMP supplies the arithmetic; mpq_class
// results of +,-,*,/ are always canonical (positive denominator, reduced).
using BigInt = mpz_class;
using BigRat = mpq_class;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

inline BigRat make_rat(long num, long den) {
    return make_rat(BigInt(num), BigInt(den));
}

inline const BigInt& rat_num(const BigRat& q) { return q.get_num(); }
inline const BigInt& rat_den(const BigRat& q) { return q.get_den(); }

inline bool is_integer(const BigRat& q) { return q.get_den() == 1; }

inline std::string to_string(const BigInt& n) { return n.get_str(); }

// Rationals serialize as "m/n" with n > 0; integral values drop the "/1".
inline std::string to_string(const BigRat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline BigInt parse_int(const std::string& s) {
    BigInt n;
    if (s.empty() || n.set_str(s, 10) != 0)
        throw parse_error("bad integer: '" + s + "'");
    return n;
}

// Accepts "m" or "m/n"; result canonical with positive denominator.
inline BigRat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return BigRat(parse_int(s));
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator: '" + s + "'");
    return make_rat(num, den);
}

}  // namespace jm
