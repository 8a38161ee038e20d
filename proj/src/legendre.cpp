#include <algorithm>

#include "jm/quadform.hpp"

// Solves a x^2 + b y^2 + c z^2 = 0 over Q without external solvers:
// normalize to squarefree pairwise-coprime coefficients, decide solubility by
// Legendre's criterion, then construct a zero from a short vector of a
// lattice on which the form vanishes mod abc.

namespace jm {
namespace {

using Triple = std::array<BigInt, 3>;

struct NormState {
    BigInt a, b, c;
    // solution of the normalized form maps back as (x,y,z) -> (mx*x, my*y, mz*z)
    BigRat mx{1}, my{1}, mz{1};
};

BigInt form_value(const BigInt& a, const BigInt& b, const BigInt& c, const Triple& v) {
    return a * v[0] * v[0] + b * v[1] * v[1] + c * v[2] * v[2];
}

// remove square part of each coefficient, moving it into the variable
void squarefree_pass(NormState& s, const FactorLimits& limits) {
    BigInt* coef[3] = {&s.a, &s.b, &s.c};
    BigRat* mult[3] = {&s.mx, &s.my, &s.mz};
    for (int i = 0; i < 3; ++i) {
        auto [sq, sf] = squarefree_decompose(*coef[i], limits);
        if (sq != 1) {
            *coef[i] = sf;
            *mult[i] /= BigRat(sq);
        }
    }
}

// returns true if a pair was reduced (then the loop repeats)
bool coprime_pass(NormState& s) {
    struct Pair {
        BigInt *u, *v, *w;
        BigRat *mu, *mv;
    };
    Pair pairs[3] = {{&s.a, &s.b, &s.c, &s.mx, &s.my},
                     {&s.a, &s.c, &s.b, &s.mx, &s.mz},
                     {&s.b, &s.c, &s.a, &s.my, &s.mz}};
    for (auto& p : pairs) {
        BigInt g = gcd(abs(*p.u), abs(*p.v));
        if (g > 1) {
            // g(u'x^2 + v'y^2) + w z^2 = 0  ->  u'(gx)^2 + v'(gy)^2 + gw z^2 = 0
            *p.u /= g;
            *p.v /= g;
            *p.w *= g;
            *p.mu /= BigRat(g);
            *p.mv /= BigRat(g);
            return true;
        }
    }
    return false;
}

bool legendre_criterion(const BigInt& other1, const BigInt& other2,
                        const std::map<BigInt, unsigned>& fac) {
    BigInt target = -other1 * other2;
    for (auto& [p, e] : fac) {
        (void)e;
        if (p == 2) continue;
        if (legendre_symbol(target, p) != 1) return false;
    }
    return true;
}

BigInt crt2(const BigInt& r1, const BigInt& m1, const BigInt& r2, const BigInt& m2) {
    if (m1 == 1) return ((r2 % m2) + m2) % m2;
    if (m2 == 1) return ((r1 % m1) + m1) % m1;
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()) == 0)
        throw std::logic_error("crt2: moduli not coprime");
    BigInt d = ((r2 - r1) % m2 + m2) % m2;
    BigInt x = r1 + m1 * ((d * inv) % m2);
    BigInt m = m1 * m2;
    return ((x % m) + m) % m;
}

BigInt inv_mod(const BigInt& a, const BigInt& m) {
    if (m == 1) return 0;
    BigInt am = ((a % m) + m) % m;
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), am.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::logic_error("inv_mod: not invertible");
    return inv;
}

// iterated pairwise reduction of a rank-3 basis under P = A x^2 + B y^2 + C z^2
void reduce_basis(std::array<Triple, 3>& basis, const BigInt& A, const BigInt& B,
                  const BigInt& C) {
    auto dot = [&](const Triple& u, const Triple& v) {
        return A * u[0] * v[0] + B * u[1] * v[1] + C * u[2] * v[2];
    };
    auto norm = [&](const Triple& u) { return dot(u, u); };
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(basis.begin(), basis.end(),
                  [&](const Triple& u, const Triple& v) { return norm(u) < norm(v); });
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                BigInt nj = norm(basis[j]);
                if (nj == 0) continue;
                BigInt d = dot(basis[i], basis[j]);
                // nearest integer to d/nj
                BigInt mu;
                BigInt num = 2 * d + nj;
                mpz_fdiv_q(mu.get_mpz_t(), num.get_mpz_t(), BigInt(2 * nj).get_mpz_t());
                if (mu == 0) continue;
                Triple cand;
                for (int k = 0; k < 3; ++k) cand[k] = basis[i][k] - mu * basis[j][k];
                if (norm(cand) < norm(basis[i])) {
                    basis[i] = cand;
                    changed = true;
                }
            }
    }
}

std::optional<Triple> try_unit_pairs(const BigInt& a, const BigInt& b, const BigInt& c) {
    // a 2-variable subform with square -product is already isotropic
    if (auto s = integer_sqrt_exact(-a * b)) return Triple{*s, a, 0};
    if (auto s = integer_sqrt_exact(-a * c)) return Triple{*s, 0, a};
    if (auto s = integer_sqrt_exact(-b * c)) return Triple{0, *s, b};
    return std::nullopt;
}

std::optional<Triple> solve_normalized(const NormState& s, const FactorLimits& limits) {
    const BigInt &a = s.a, &b = s.b, &c = s.c;
    if ((a > 0 && b > 0 && c > 0) || (a < 0 && b < 0 && c < 0)) return std::nullopt;

    auto fa = factorize(a, limits);
    auto fb = factorize(b, limits);
    auto fc = factorize(c, limits);
    if (!legendre_criterion(b, c, fa) || !legendre_criterion(a, c, fb) ||
        !legendre_criterion(a, b, fc))
        return std::nullopt;

    if (auto direct = try_unit_pairs(a, b, c)) return direct;

    BigInt A = abs(a), B = abs(b), C = abs(c);
    const BigInt abc = a * b * c;

    // square roots modulo each squarefree coefficient; sign branches per
    // modulus are retried when the short vectors only realize +abc
    auto wa0 = sqrt_mod_squarefree(-b * c, A, fa);
    auto wb0 = sqrt_mod_squarefree(-a * c, B, fb);
    auto wc0 = sqrt_mod_squarefree(-a * b, C, fc);
    if (!wa0 || !wb0 || !wc0)
        throw std::logic_error("legendre: criterion passed but modular root missing");

    for (int mask = 0; mask < 8; ++mask) {
        BigInt wa = (mask & 1) ? (A - *wa0) % A : *wa0;
        BigInt wb = (mask & 2) ? (B - *wb0) % B : *wb0;
        BigInt wc = (mask & 4) ? (C - *wc0) % C : *wc0;

        // lattice where the form vanishes mod abc:
        //   mod a: b*y ≡ wa*z,  mod b: a*x ≡ wb*z,  mod c: a*x ≡ wc*y
        BigInt y3 = (inv_mod(b, A) * wa) % A;
        BigInt x3 = crt2((inv_mod(a, B) * wb) % B, B, (inv_mod(a, C) * ((wc * y3) % C)) % C, C);
        BigInt x2 = crt2(BigInt(0), B, wc % C, C);
        std::array<Triple, 3> basis = {{{B * C, BigInt(0), BigInt(0)},
                                        {x2, A, BigInt(0)},
                                        {x3, y3, BigInt(1)}}};
        reduce_basis(basis, A, B, C);

        // the minimum of |a|x^2+|b|y^2+|c|z^2 on the lattice is < 2|abc|, so
        // its form value is 0 or ±abc; only 0 and -abc lead to a zero
        std::optional<Triple> minus;
        for (int u0 = -4; u0 <= 4; ++u0)
            for (int u1 = -4; u1 <= 4; ++u1)
                for (int u2 = 0; u2 <= 4; ++u2) {
                    if (u0 == 0 && u1 == 0 && u2 == 0) continue;
                    Triple v;
                    for (int k = 0; k < 3; ++k)
                        v[k] = u0 * basis[0][k] + u1 * basis[1][k] + u2 * basis[2][k];
                    BigInt q = form_value(a, b, c, v);
                    if (q == 0) return v;
                    if (q == -abc && !minus) minus = v;
                }
        if (minus) {
            const BigInt &x = (*minus)[0], &y = (*minus)[1], &z = (*minus)[2];
            // from ax^2+by^2+cz^2 = -abc:
            Triple v{x * z + b * y, y * z - a * x, z * z + a * b};
            if (form_value(a, b, c, v) != 0 || (v[0] == 0 && v[1] == 0 && v[2] == 0))
                throw std::logic_error("legendre: descent identity failed");
            return v;
        }
    }
    throw std::logic_error("legendre: no usable short vector found");
}

}  // namespace

std::optional<std::array<BigInt, 3>> legendre_solve(const BigInt& a, const BigInt& b,
                                                    const BigInt& c, const FactorLimits& limits) {
    if (a == 0 || b == 0 || c == 0)
        throw std::invalid_argument("legendre_solve: zero coefficient");
    NormState s{a, b, c};
    BigInt content = gcd(gcd(abs(s.a), abs(s.b)), abs(s.c));
    s.a /= content;
    s.b /= content;
    s.c /= content;
    for (;;) {
        squarefree_pass(s, limits);
        if (!coprime_pass(s)) break;
    }
    auto sol = solve_normalized(s, limits);
    if (!sol) return std::nullopt;
    // map back through the variable multipliers and clear to primitive integers
    std::array<BigRat, 3> r = {BigRat((*sol)[0]) * s.mx, BigRat((*sol)[1]) * s.my,
                               BigRat((*sol)[2]) * s.mz};
    BigInt den(1);
    for (auto& x : r) den = lcm(den, x.get_den());
    std::array<BigInt, 3> out;
    BigInt g(0);
    for (int i = 0; i < 3; ++i) {
        out[i] = r[i].get_num() * (den / r[i].get_den());
        g = gcd(g, out[i]);
    }
    for (auto& x : out) x /= g;
    // deterministic sign: first nonzero coordinate positive
    for (int i = 0; i < 3; ++i) {
        if (out[i] == 0) continue;
        if (out[i] < 0)
            for (auto& x : out) x = -x;
        break;
    }
    if (a * out[0] * out[0] + b * out[1] * out[1] + c * out[2] * out[2] != 0)
        throw std::logic_error("legendre_solve: verification failed");
    return out;
}

}  // namespace jm
