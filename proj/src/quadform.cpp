#include "jm/quadform.hpp"

namespace jm {

Mat4 Mat4::identity() {
    Mat4 r;
    for (int i = 0; i < 4; ++i) r.at(i, i) = 1;
    return r;
}

Mat4 Mat4::transposed() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.at(i, j) = at(j, i);
    return r;
}

Mat4 Mat4::operator*(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            BigRat s(0);
            for (int k = 0; k < 4; ++k) s += at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Vec4 Mat4::apply(const Vec4& v) const {
    Vec4 r{};
    for (int i = 0; i < 4; ++i) {
        BigRat s(0);
        for (int k = 0; k < 4; ++k) s += at(i, k) * v[k];
        r[i] = s;
    }
    return r;
}

int SymMatrix4::index(int i, int j) {
    if (i > j) std::swap(i, j);
    static constexpr int row_off[4] = {0, 4, 7, 9};
    return row_off[i] + (j - i);
}

const BigRat& SymMatrix4::at(int i, int j) const { return e_[index(i, j)]; }
void SymMatrix4::set(int i, int j, const BigRat& v) { e_[index(i, j)] = v; }

SymMatrix4 SymMatrix4::from_rows(const std::array<std::array<BigRat, 4>, 4>& rows) {
    SymMatrix4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            if (rows[i][j] != rows[j][i]) throw std::invalid_argument("from_rows: not symmetric");
            m.set(i, j, rows[i][j]);
        }
    return m;
}

SymMatrix4 SymMatrix4::diagonal(const BigRat& d0, const BigRat& d1, const BigRat& d2,
                                const BigRat& d3) {
    SymMatrix4 m;
    m.set(0, 0, d0);
    m.set(1, 1, d1);
    m.set(2, 2, d2);
    m.set(3, 3, d3);
    return m;
}

BigRat SymMatrix4::evaluate(const Vec4& v) const {
    BigRat s(0);
    for (int i = 0; i < 4; ++i) {
        s += at(i, i) * v[i] * v[i];
        for (int j = i + 1; j < 4; ++j) s += BigRat(2) * at(i, j) * v[i] * v[j];
    }
    return s;
}

Mat4 SymMatrix4::as_mat4() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.at(i, j) = at(i, j);
    return r;
}

SymMatrix4 SymMatrix4::conjugate(const Mat4& T) const {
    Mat4 full = T.transposed() * as_mat4() * T;
    SymMatrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) r.set(i, j, full.at(i, j));
    return r;
}

SymMatrix4 SymMatrix4::operator+(const SymMatrix4& o) const {
    SymMatrix4 r;
    for (int i = 0; i < 10; ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

SymMatrix4 SymMatrix4::operator-(const SymMatrix4& o) const {
    SymMatrix4 r;
    for (int i = 0; i < 10; ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

SymMatrix4 SymMatrix4::operator*(const BigRat& s) const {
    SymMatrix4 r;
    for (int i = 0; i < 10; ++i) r.e_[i] = e_[i] * s;
    return r;
}

BigRat SymMatrix4::det() const {
    // cofactor expansion on the full 4x4
    Mat4 m = as_mat4();
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m.at(r0, c0) * (m.at(r1, c1) * m.at(r2, c2) - m.at(r1, c2) * m.at(r2, c1)) -
               m.at(r0, c1) * (m.at(r1, c0) * m.at(r2, c2) - m.at(r1, c2) * m.at(r2, c0)) +
               m.at(r0, c2) * (m.at(r1, c0) * m.at(r2, c1) - m.at(r1, c1) * m.at(r2, c0));
    };
    return m.at(0, 0) * det3(1, 2, 3, 1, 2, 3) - m.at(0, 1) * det3(1, 2, 3, 0, 2, 3) +
           m.at(0, 2) * det3(1, 2, 3, 0, 1, 3) - m.at(0, 3) * det3(1, 2, 3, 0, 1, 2);
}

namespace {

void require_admissible(const BigRat& t) {
    if (t == 0 || t == 1 || t == -1)
        throw std::invalid_argument("t must avoid {0, 1, -1}: t=" + to_string(t));
}

}  // namespace

SymMatrix4 build_M1(const BigRat& t) {
    require_admissible(t);
    BigRat one(1), two(2);
    std::array<std::array<BigRat, 4>, 4> rows = {{{BigRat(4), BigRat(3), one, one},
                                                  {BigRat(3), BigRat(4), one, one},
                                                  {one, one, two * (one - t), two - t},
                                                  {one, one, two - t, two * (one - t)}}};
    return SymMatrix4::from_rows(rows);
}

SymMatrix4 build_M2(const BigRat& t) {
    require_admissible(t);
    BigRat one(1), two(2);
    std::array<std::array<BigRat, 4>, 4> rows = {{{BigRat(0), t, t, t},
                                                  {t, BigRat(0), t, t},
                                                  {t, t, two * (t - one), two * t - one},
                                                  {t, t, two * t - one, two * (t - one)}}};
    return SymMatrix4::from_rows(rows);
}

Mat4 transform_C() {
    Mat4 m;
    const long rows[4][4] = {{0, 0, 2, 2}, {0, 0, 2, -2}, {-1, -1, -1, 0}, {1, -1, -1, 0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = rows[i][j];
    return m;
}

Mat4 transform_D() {
    Mat4 m;
    const long rows[4][4] = {{1, -2, 1, 0}, {1, -2, -1, 0}, {0, 1, 0, 1}, {0, 1, 0, -1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = rows[i][j];
    return m;
}

BigRat evaluate_form(const SymMatrix4& M, const Vec4& v) { return M.evaluate(v); }

SymMatrix4 conjugate(const SymMatrix4& M, const Mat4& T) { return M.conjugate(T); }

PencilReductions pencil_reductions(const BigRat& t) {
    require_admissible(t);
    SymMatrix4 M3 = build_M1(t).conjugate(transform_C());
    SymMatrix4 M4 = build_M2(t).conjugate(transform_C());
    SymMatrix4 M31 = build_M1(t).conjugate(transform_D());
    SymMatrix4 M41 = build_M2(t).conjugate(transform_D());
    PencilReductions r;
    r.M5 = (M3 - M4 * t) * BigRat(1, 8);
    r.M51 = (M31 * t + M41) * BigRat(1, 2);
    r.M61 = (M41 * t - M31) * BigRat(1, 2);
    return r;
}

Vec4 pqrs_from_solution(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d,
                        Chart which) {
    BigRat ra(a), rb(b), rc(c), rd(d);
    if (which == Chart::C) {
        return {(rd - rc) / 2, -(rc + rd) / 2 - (ra + rb) / 4, (ra + rb) / 4, (ra - rb) / 4};
    }
    if (c + d == 0) throw chart_error("chart violation: c + d = 0");
    return {(ra + rb) / 2 + (rc + rd), (rc + rd) / 2, (ra - rb) / 2, (rc - rd) / 2};
}

// ---- ternary forms ---------------------------------------------------------

Mat3 Mat3::identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r.at(i, i) = 1;
    return r;
}

Vec3 Mat3::apply(const Vec3& v) const {
    Vec3 r{};
    for (int i = 0; i < 3; ++i) {
        BigRat s(0);
        for (int k = 0; k < 3; ++k) s += at(i, k) * v[k];
        r[i] = s;
    }
    return r;
}

TernaryForm TernaryForm::from_coeffs(const BigRat& xx, const BigRat& xy, const BigRat& xz,
                                     const BigRat& yy, const BigRat& yz, const BigRat& zz) {
    TernaryForm f;
    f.e_ = {xx, xy, xz, yy, yz, zz};
    return f;
}

BigRat TernaryForm::evaluate(const Vec3& v) const {
    return e_[0] * v[0] * v[0] + e_[1] * v[0] * v[1] + e_[2] * v[0] * v[2] + e_[3] * v[1] * v[1] +
           e_[4] * v[1] * v[2] + e_[5] * v[2] * v[2];
}

BigRat TernaryForm::at(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == j) {
        static const int diag[3] = {0, 3, 5};
        return e_[diag[i]];
    }
    int idx = (i == 0) ? j : 4;  // (0,1)->1, (0,2)->2, (1,2)->4
    return e_[idx] / 2;
}

TernaryForm::Diagonal TernaryForm::diagonalize() const {
    // symmetric Gram matrix
    std::array<std::array<BigRat, 3>, 3> G;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) G[i][j] = at(i, j);
    Mat3 B = Mat3::identity();  // columns: new basis in old coordinates

    auto col_axpy = [&](int dst, int src, const BigRat& f) {
        // column_dst += f * column_src, applied to B and congruently to G
        for (int i = 0; i < 3; ++i) B.at(i, dst) += f * B.at(i, src);
        for (int i = 0; i < 3; ++i) G[i][dst] += f * G[i][src];
        for (int i = 0; i < 3; ++i) G[dst][i] += f * G[src][i];
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < 3; ++r) std::swap(B.at(r, i), B.at(r, j));
        for (int r = 0; r < 3; ++r) std::swap(G[r][i], G[r][j]);
        for (int r = 0; r < 3; ++r) std::swap(G[i][r], G[j][r]);
    };

    for (int i = 0; i < 3; ++i) {
        if (G[i][i] == 0) {
            int pivot = -1;
            for (int j = i + 1; j < 3; ++j)
                if (G[j][j] != 0) pivot = j;
            if (pivot >= 0) {
                col_swap(i, pivot);
            } else {
                int cross = -1;
                for (int j = i + 1; j < 3; ++j)
                    if (G[i][j] != 0) cross = j;
                if (cross < 0) continue;  // zero row: keep the zero diagonal
                col_axpy(i, cross, BigRat(1));
            }
        }
        for (int j = i + 1; j < 3; ++j)
            if (G[i][j] != 0) col_axpy(j, i, -G[i][j] / G[i][i]);
    }

    // clear denominators of the diagonal by a global factor, then absorb the
    // square part of each entry into the corresponding basis column
    BigInt L(1);
    for (int i = 0; i < 3; ++i) L = lcm(L, G[i][i].get_den());
    Diagonal d;
    d.back = B;
    for (int i = 0; i < 3; ++i) {
        BigInt v = G[i][i].get_num() * (L / G[i][i].get_den());
        d.coeffs[i] = v;
    }
    return d;
}

std::optional<std::array<BigInt, 3>> solve_ternary(const TernaryForm& f,
                                                   const FactorLimits& limits) {
    auto diag = f.diagonalize();
    int zeros = 0, zero_at = -1;
    for (int i = 0; i < 3; ++i)
        if (diag.coeffs[i] == 0) {
            ++zeros;
            zero_at = i;
        }
    std::array<BigInt, 3> sol_diag;
    if (zeros > 0) {
        // a degenerate direction is itself a zero of the form
        sol_diag = {0, 0, 0};
        sol_diag[zero_at] = 1;
    } else {
        auto s = legendre_solve(diag.coeffs[0], diag.coeffs[1], diag.coeffs[2], limits);
        if (!s) return std::nullopt;
        sol_diag = *s;
    }
    Vec3 w{BigRat(sol_diag[0]), BigRat(sol_diag[1]), BigRat(sol_diag[2])};
    Vec3 orig = diag.back.apply(w);
    BigInt den(1);
    for (auto& x : orig) den = lcm(den, x.get_den());
    std::array<BigInt, 3> out;
    BigInt content(0);
    for (int i = 0; i < 3; ++i) {
        out[i] = orig[i].get_num() * (den / orig[i].get_den());
        content = gcd(content, out[i]);
    }
    if (content == 0) throw std::logic_error("solve_ternary: zero vector");
    for (auto& x : out) x /= content;
    if (f.evaluate({BigRat(out[0]), BigRat(out[1]), BigRat(out[2])}) != 0)
        throw std::logic_error("solve_ternary: backmapped point not on form");
    return out;
}

// ---- conics ----------------------------------------------------------------

ConicSpec conic_r(const BigRat& t) {
    BigRat t2 = t * t;
    return {t2 - 7, BigRat(24), BigRat(-24), t2 + 1};
}

ConicSpec conic_s(const BigRat& t) {
    BigRat t2 = t * t;
    return {8 * t, -24 * t, BigRat(-3) * (t2 - 8 * t + 1), t2 + 1};
}

std::optional<ConicBasePoint> conic_point(const ConicSpec& spec, const FactorLimits& limits) {
    TernaryForm f = TernaryForm::from_coeffs(spec.alpha, spec.beta, BigRat(0), spec.gamma,
                                             BigRat(0), -spec.delta);
    auto sol = solve_ternary(f, limits);
    if (!sol) return std::nullopt;
    std::array<BigInt, 3> pt = *sol;
    if (pt[1] == 0) {
        // slide along the conic to a point in the q != 0 chart
        auto bilinear = [&](const std::array<BigInt, 3>& u, const std::array<BigInt, 3>& v) {
            Vec3 ru{BigRat(u[0]), BigRat(u[1]), BigRat(u[2])};
            Vec3 rv{BigRat(v[0]), BigRat(v[1]), BigRat(v[2])};
            Vec3 sum{ru[0] + rv[0], ru[1] + rv[1], ru[2] + rv[2]};
            return (f.evaluate(sum) - f.evaluate(ru) - f.evaluate(rv)) / 2;
        };
        static const std::array<std::array<BigInt, 3>, 6> dirs = {{{0, 1, 0},
                                                                   {1, 1, 0},
                                                                   {0, 1, 1},
                                                                   {1, 1, 1},
                                                                   {1, 2, 1},
                                                                   {2, 1, 3}}};
        for (const auto& v : dirs) {
            BigRat nv = f.evaluate({BigRat(v[0]), BigRat(v[1]), BigRat(v[2])});
            BigRat bv = bilinear(pt, v);
            // second intersection of the line pt + tau * v
            Vec3 cand;
            for (int i = 0; i < 3; ++i) cand[i] = nv * BigRat(pt[i]) - 2 * bv * BigRat(v[i]);
            if (cand[1] == 0) continue;
            BigInt den(1);
            for (auto& x : cand) den = lcm(den, x.get_den());
            std::array<BigInt, 3> out;
            BigInt content(0);
            for (int i = 0; i < 3; ++i) {
                out[i] = cand[i].get_num() * (den / cand[i].get_den());
                content = gcd(content, out[i]);
            }
            if (content == 0) continue;
            for (auto& x : out) x /= content;
            pt = out;
            break;
        }
        if (pt[1] == 0) return std::nullopt;  // never observed; conic would be degenerate
    }
    ConicBasePoint base{pt[0], pt[1], pt[2]};
    BigRat check = spec.lhs(BigRat(base.p0), BigRat(base.q0)) -
                   spec.delta * BigRat(base.r0) * BigRat(base.r0);
    if (check != 0) throw std::logic_error("conic_point: base point not on conic");
    return base;
}

std::optional<ConicBasePoint> conic_base_point(const BigRat& t, const FactorLimits& limits) {
    if (!(t > 1)) throw std::invalid_argument("conic_base_point: need t > 1");
    return conic_point(conic_r(t), limits);
}

std::optional<std::pair<BigRat, BigRat>> parameterize_conic(const ConicBasePoint& base,
                                                            const BigRat& t, const BigRat& k) {
    BigRat t2 = t * t;
    BigRat q = BigRat(base.q0) * (k * k * (t2 + 1) - t2 + 7);
    if (q == 0) return std::nullopt;  // parameter at infinity
    BigRat p = k * k * BigRat(base.p0) * (t2 + 1) - 2 * k * BigRat(base.r0) * (t2 + 1) +
               BigRat(base.p0) * (t2 - 7) + 24 * BigRat(base.q0);
    return std::make_pair(p, q);
}

std::array<std::array<BigRat, 3>, 3> conic_param_polys(const ConicSpec& spec,
                                                       const ConicBasePoint& base) {
    BigRat p0(base.p0), q0(base.q0), r0(base.r0);
    const BigRat &al = spec.alpha, &be = spec.beta, &de = spec.delta;
    // second intersection of the slope-k line through (p0/q0, r0/q0)
    std::array<BigRat, 3> P = {-(al * p0 + be * q0), 2 * de * r0, -de * p0};
    std::array<BigRat, 3> Q = {q0 * al, BigRat(0), -q0 * de};
    std::array<BigRat, 3> W = {al * r0, -(2 * al * p0 + be * q0), de * r0};
    return {P, Q, W};
}

std::optional<std::array<BigRat, 3>> parameterize_generic(const ConicSpec& spec,
                                                          const ConicBasePoint& base,
                                                          const BigRat& k) {
    auto polys = conic_param_polys(spec, base);
    auto eval = [&](const std::array<BigRat, 3>& c) { return c[0] + c[1] * k + c[2] * k * k; };
    BigRat q = eval(polys[1]);
    if (q == 0) return std::nullopt;
    return std::array<BigRat, 3>{eval(polys[0]), q, eval(polys[2])};
}

}  // namespace jm
