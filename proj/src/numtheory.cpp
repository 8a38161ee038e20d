#include "jm/numtheory.hpp"

#include <algorithm>
#include <array>

namespace jm {

BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& mod) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

BigInt isqrt_floor(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("isqrt_floor: negative");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<BigInt> integer_sqrt_exact(const BigInt& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    return isqrt_floor(n);
}

std::optional<BigRat> rational_sqrt_exact(const BigRat& q) {
    if (q < 0) return std::nullopt;
    auto rn = integer_sqrt_exact(q.get_num());
    if (!rn) return std::nullopt;
    auto rd = integer_sqrt_exact(q.get_den());
    if (!rd) return std::nullopt;
    return make_rat(*rn, *rd);
}

namespace {

bool miller_rabin_witness(const BigInt& n, const BigInt& a, const BigInt& d, unsigned s) {
    // returns true if a proves n composite
    BigInt x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    static const std::array<long, 13> small = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (long p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    BigInt d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    // The first 13 primes are a deterministic witness set below 3.3e24.
    static const BigInt det_bound("3317044064679887385961981");
    if (n < det_bound) {
        for (long a : small)
            if (miller_rabin_witness(n, BigInt(a), d, s)) return false;
        return true;
    }
    for (long a : small)
        if (miller_rabin_witness(n, BigInt(a), d, s)) return false;
    gmp_randstate_t st;
    gmp_randinit_mt(st);
    gmp_randseed_ui(st, 0x9e3779b9u);
    bool composite = false;
    for (int i = 0; i < 40 && !composite; ++i) {
        BigInt a;
        mpz_urandomm(a.get_mpz_t(), st, BigInt(n - 3).get_mpz_t());
        a += 2;
        composite = miller_rabin_witness(n, a, d, s);
    }
    gmp_randclear(st);
    return !composite;
}

namespace {

// Pollard rho with Brent cycle detection; returns a nontrivial factor of the
// odd composite n, or nullopt when the iteration budget runs out.
std::optional<BigInt> pollard_brent(const BigInt& n, std::uint64_t max_iters) {
    for (unsigned long c = 1;; ++c) {
        BigInt y = 2, q = 1, g = 1, x, ys;
        std::uint64_t spent = 0;
        const unsigned long m = 128;
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            for (std::uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                std::uint64_t lim = std::min<std::uint64_t>(m, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    BigInt diff = x - y;
                    if (diff < 0) diff = -diff;
                    q = (q * diff) % n;
                }
                g = gcd(q, n);
                spent += lim;
                if (spent > max_iters) return std::nullopt;
            }
        }
        if (g == n) {
            // backtrack to locate the factor the batched gcd skipped over
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                BigInt diff = x - ys;
                if (diff < 0) diff = -diff;
                g = gcd(diff, n);
            }
        }
        if (g != n) return g;
        // cycle collapsed; retry with the next polynomial constant
    }
}

void factor_rec(const BigInt& n, std::map<BigInt, unsigned>& out, const FactorLimits& limits) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 10) > limits.max_cofactor_digits)
        throw factor_limit_error("factorization too hard: cofactor " + n.get_str());
    if (auto r = integer_sqrt_exact(n)) {
        std::map<BigInt, unsigned> sub;
        factor_rec(*r, sub, limits);
        for (auto& [p, e] : sub) out[p] += 2 * e;
        return;
    }
    auto f = pollard_brent(n, limits.max_rho_iterations);
    if (!f) throw factor_limit_error("factorization too hard: cofactor " + n.get_str());
    factor_rec(*f, out, limits);
    factor_rec(n / *f, out, limits);
}

}  // namespace

std::map<BigInt, unsigned> factorize(const BigInt& n, const FactorLimits& limits) {
    if (n == 0) throw std::invalid_argument("factorize: zero");
    std::map<BigInt, unsigned> out;
    BigInt m = abs(n);
    if (m == 1) return out;
    // trial division by 2, 3 and a 2,4-wheel up to 10^6
    for (long p : {2L, 3L}) {
        while (m % p == 0) {
            ++out[BigInt(p)];
            m /= p;
        }
    }
    for (long p = 5, step = 2; p <= 1'000'000 && m > 1; p += step, step = 6 - step) {
        if (m % p == 0) {
            BigInt bp(p);
            while (m % p == 0) {
                ++out[bp];
                m /= p;
            }
        }
    }
    if (m > 1) factor_rec(m, out, limits);
    return out;
}

int legendre_symbol(const BigInt& a, const BigInt& p) {
    int r = mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
    return r;
}

std::optional<BigInt> sqrt_mod_p(const BigInt& a, const BigInt& p) {
    if (p == 2) return BigInt(((a % 2) + 2) % 2);
    BigInt am = ((a % p) + p) % p;
    if (am == 0) return BigInt(0);
    if (legendre_symbol(am, p) != 1) return std::nullopt;
    BigInt x;
    if (p % 4 == 3) {
        x = pow_mod(am, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks
        BigInt q = p - 1;
        unsigned s = 0;
        while (mpz_even_p(q.get_mpz_t())) {
            q >>= 1;
            ++s;
        }
        BigInt z = 2;
        while (legendre_symbol(z, p) != -1) ++z;
        BigInt m(s), c = pow_mod(z, q, p), t = pow_mod(am, q, p);
        x = pow_mod(am, (q + 1) / 2, p);
        while (t != 1) {
            BigInt tt = t;
            unsigned i = 0;
            while (tt != 1) {
                tt = (tt * tt) % p;
                ++i;
            }
            BigInt b = c;
            for (BigInt j = 0; j < m - i - 1; ++j) b = (b * b) % p;
            x = (x * b) % p;
            c = (b * b) % p;
            t = (t * c) % p;
            m = i;
        }
    }
    BigInt other = p - x;
    return std::min(x, other);
}

std::optional<BigInt> sqrt_mod_squarefree(const BigInt& a, const BigInt& m,
                                          const std::map<BigInt, unsigned>& m_factors) {
    BigInt x = 0, mod = 1;
    for (auto& [p, e] : m_factors) {
        (void)e;  // squarefree: e == 1
        auto r = sqrt_mod_p(a, p);
        if (!r) return std::nullopt;
        // CRT combine x mod mod with r mod p
        BigInt inv;
        if (mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), p.get_mpz_t()) == 0)
            throw std::logic_error("sqrt_mod_squarefree: moduli not coprime");
        BigInt diff = ((*r - x) % p + p) % p;
        x += mod * ((diff * inv) % p);
        mod *= p;
        x %= mod;
    }
    BigInt r = ((x % m) + m) % m;
    return r;
}

unsigned valuation(BigInt n, const BigInt& p) {
    if (n == 0) throw std::invalid_argument("valuation: zero");
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::pair<BigInt, BigInt> squarefree_decompose(const BigInt& n, const FactorLimits& limits) {
    if (n == 0) throw std::invalid_argument("squarefree_decompose: zero");
    auto fac = factorize(n, limits);
    BigInt s = 1, sf = n < 0 ? -1 : 1;
    for (auto& [p, e] : fac) {
        for (unsigned i = 0; i + 1 < e; i += 2) s *= p;
        if (e % 2) sf *= p;
    }
    return {s, sf};
}

}  // namespace jm
