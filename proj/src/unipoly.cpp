#include "jm/unipoly.hpp"

#include <algorithm>
#include <sstream>

#include "jm/numtheory.hpp"

namespace jm {

UniPoly UniPoly::monomial(unsigned deg, const BigRat& a) {
    std::vector<BigRat> c(deg + 1, BigRat(0));
    c[deg] = a;
    return UniPoly(std::move(c));
}

BigRat UniPoly::eval(const BigRat& x) const {
    BigRat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<BigRat> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * BigRat(static_cast<long>(i));
    return UniPoly(std::move(d));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<BigRat> r(std::max(c_.size(), o.c_.size()), BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    std::vector<BigRat> r(std::max(c_.size(), o.c_.size()), BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<BigRat> r(c_.size() + o.c_.size() - 1, BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const BigRat& s) const {
    std::vector<BigRat> r(c_);
    for (auto& x : r) x *= s;
    return UniPoly(std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("divmod: zero divisor");
    UniPoly rem = *this;
    if (rem.degree() < d.degree()) return {UniPoly(), rem};
    std::vector<BigRat> q(rem.degree() - d.degree() + 1, BigRat(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        int shift = rem.degree() - d.degree();
        BigRat f = rem.leading() / d.leading();
        q[shift] = f;
        rem = rem - UniPoly::monomial(shift, f) * d;
    }
    return {UniPoly(std::move(q)), rem};
}

std::vector<BigInt> UniPoly::primitive_integer() const {
    if (is_zero()) return {};
    BigInt den(1);
    for (auto& q : c_) den = lcm(den, q.get_den());
    std::vector<BigInt> c(c_.size());
    BigInt content(0);
    for (size_t i = 0; i < c_.size(); ++i) {
        c[i] = c_[i].get_num() * (den / c_[i].get_den());
        content = gcd(content, c[i]);
    }
    if (c.back() < 0) content = -content;
    for (auto& x : c) x /= content;
    return c;
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigRat& a = c_[i];
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        BigRat mag = abs(a);
        if (mag != 1 || i == 0) os << to_string(mag);
        if (i > 0) os << var;
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

UniPoly poly_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = a.divmod(b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * (BigRat(1) / a.leading());
}

namespace {

int sign_of(const BigRat& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

int sign_changes(const std::vector<int>& signs) {
    int changes = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace

int count_real_roots(const UniPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
    UniPoly g = f;
    UniPoly sq = poly_gcd(g, g.derivative());
    if (sq.degree() > 0) g = g.divmod(sq).first;  // squarefree part
    if (g.degree() == 0) return 0;
    std::vector<UniPoly> sturm{g, g.derivative()};
    while (!sturm.back().is_zero()) {
        auto rem = sturm[sturm.size() - 2].divmod(sturm.back()).second;
        sturm.push_back(rem * BigRat(-1));
    }
    sturm.pop_back();
    // signs at -inf and +inf from leading terms
    std::vector<int> at_minus, at_plus;
    for (auto& s : sturm) {
        int lead = sign_of(s.leading());
        at_plus.push_back(lead);
        at_minus.push_back(s.degree() % 2 == 0 ? lead : -lead);
    }
    return sign_changes(at_minus) - sign_changes(at_plus);
}

namespace {

using u64 = std::uint64_t;

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>((__uint128_t)a * b % m); }

u64 reduce_mod(const BigInt& n, u64 p) {
    BigInt r = n % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
}

std::vector<u64> poly_mod(const std::vector<BigInt>& c, u64 p) {
    std::vector<u64> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = reduce_mod(c[i], p);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

u64 eval_mod(const std::vector<u64>& c, u64 x, u64 p) {
    u64 acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (mulmod_u64(acc, x, p) + *it) % p;
    return acc;
}

std::vector<u64> gcd_mod(std::vector<u64> a, std::vector<u64> b, u64 p) {
    auto powmod = [&](u64 base, u64 e) {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mulmod_u64(r, base, p);
            base = mulmod_u64(base, base, p);
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        u64 inv = powmod(b.back(), p - 2);
        // a mod b
        while (a.size() >= b.size() && !a.empty()) {
            u64 f = mulmod_u64(a.back(), inv, p);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                u64 sub = mulmod_u64(f, b[i], p);
                a[off + i] = (a[off + i] + p - sub) % p;
            }
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        std::swap(a, b);
    }
    return a;
}

// rational reconstruction: find u/w = x (mod M) with |u| <= U, 0 < w <= W
std::optional<BigRat> rational_reconstruct(const BigInt& x, const BigInt& M, const BigInt& U,
                                           const BigInt& W) {
    BigInt r0 = M, r1 = ((x % M) + M) % M;
    BigInt s0 = 0, s1 = 1;
    while (r1 > U) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (s1 == 0) return std::nullopt;
    BigInt u = r1, w = s1;
    if (w < 0) {
        w = -w;
        u = -u;
    }
    if (w > W || gcd(abs(u), w) != 1) return std::nullopt;
    return make_rat(u, w);
}

}  // namespace

// Rational roots via a modular method: find roots of the squarefree part
// modulo a small good prime, Hensel-lift each simple root, and recover u/w by
// rational reconstruction.  Divisor enumeration of the leading/constant
// coefficients is a non-starter here: the elliptic-curve search produces
// polynomials whose end coefficients run to thousands of digits.
std::vector<BigRat> rational_roots(const UniPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    std::vector<BigRat> roots;
    UniPoly g = f;
    // strip X^k
    size_t low = 0;
    while (low < g.coeffs().size() && g.coeffs()[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(BigRat(0));
        std::vector<BigRat> c(g.coeffs().begin() + low, g.coeffs().end());
        g = UniPoly(std::move(c));
    }
    if (g.degree() >= 1) {
        UniPoly sq = poly_gcd(g, g.derivative());
        if (sq.degree() > 0) g = g.divmod(sq).first;
    }
    if (g.degree() == 1) {
        roots.push_back(-g.coeff(0) / g.coeff(1));
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    if (g.degree() >= 2) {
        std::vector<BigInt> c = g.primitive_integer();
        const BigInt& lead = c.back();
        const BigInt& tail = c.front();
        // bound for reconstruction: |u| <= |tail|, w <= lead
        BigInt U = abs(tail), W = abs(lead);
        BigInt target = 2 * U * W + 1;
        // good prime: p ∤ lead, squarefree reduction keeps degree and simple roots
        u64 p = 1009;
        std::vector<u64> gm, dm;
        for (;; p += 2) {
            while (!is_prime(BigInt(static_cast<unsigned long>(p)))) p += 2;
            if (reduce_mod(lead, p) == 0) continue;
            gm = poly_mod(c, p);
            std::vector<BigInt> dc;
            for (size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<long>(i));
            dm = poly_mod(dc, p);
            if (gcd_mod(gm, dm, p).size() == 1) break;  // squarefree mod p
        }
        std::vector<u64> res;
        for (u64 r = 0; r < p; ++r)
            if (eval_mod(gm, r, p) == 0) res.push_back(r);
        // Hensel-lift each root and reconstruct
        auto eval_big = [&](const BigInt& x, const BigInt& mod) {
            BigInt acc = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * x + *it) % mod;
            return acc;
        };
        auto eval_dbig = [&](const BigInt& x, const BigInt& mod) {
            BigInt acc = 0;
            for (size_t i = c.size(); i-- > 1;) acc = (acc * x + c[i] * static_cast<long>(i)) % mod;
            return acc;
        };
        for (u64 r0 : res) {
            BigInt mod(static_cast<unsigned long>(p));
            BigInt r(static_cast<unsigned long>(r0));
            while (mod < target) {
                mod *= mod;
                BigInt fr = eval_big(r, mod);
                BigInt dr = eval_dbig(r, mod);
                BigInt inv;
                if (mpz_invert(inv.get_mpz_t(), dr.get_mpz_t(), mod.get_mpz_t()) == 0) break;
                r = ((r - fr * inv) % mod + mod) % mod;
            }
            if (mod < target) continue;
            auto cand = rational_reconstruct(r, mod, U, W);
            if (cand && g.eval(*cand) == 0) roots.push_back(*cand);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace jm
