#pragma once

#include <array>
#include <optional>

#include "jm/numtheory.hpp"
#include "jm/rational.hpp"

namespace jm {

using Vec4 = std::array<BigRat, 4>;

// General exact 4x4 rational matrix (used for the change-of-variable maps).
struct Mat4 {
    std::array<BigRat, 16> m{};
    static Mat4 identity();
    BigRat& at(int i, int j) { return m[i * 4 + j]; }
    const BigRat& at(int i, int j) const { return m[i * 4 + j]; }
    Mat4 transposed() const;
    Mat4 operator*(const Mat4& o) const;
    Vec4 apply(const Vec4& v) const;
};

// Symmetric 4x4 rational matrix; the ten independent entries are stored.
class SymMatrix4 {
public:
    SymMatrix4() = default;
    static SymMatrix4 from_rows(const std::array<std::array<BigRat, 4>, 4>& rows);
    static SymMatrix4 diagonal(const BigRat& d0, const BigRat& d1, const BigRat& d2,
                               const BigRat& d3);

    const BigRat& at(int i, int j) const;
    void set(int i, int j, const BigRat& v);

    BigRat evaluate(const Vec4& v) const;  // v^T M v
    SymMatrix4 conjugate(const Mat4& T) const;  // T^T M T
    SymMatrix4 operator+(const SymMatrix4&) const;
    SymMatrix4 operator-(const SymMatrix4&) const;
    SymMatrix4 operator*(const BigRat& s) const;
    bool operator==(const SymMatrix4&) const = default;

    Mat4 as_mat4() const;
    BigRat det() const;

private:
    // upper triangle, row major: (0,0),(0,1),(0,2),(0,3),(1,1),...,(3,3)
    std::array<BigRat, 10> e_{};
    static int index(int i, int j);
};

// Pencil matrices of the two quadratic relations; t must avoid {0, 1, -1}.
SymMatrix4 build_M1(const BigRat& t);
SymMatrix4 build_M2(const BigRat& t);

// The two linear changes of variables (a,b,c,d) = T (p,q,r,s).
Mat4 transform_C();
Mat4 transform_D();

BigRat evaluate_form(const SymMatrix4& M, const Vec4& v);
SymMatrix4 conjugate(const SymMatrix4& M, const Mat4& T);

// Diagonal/reduced combinations recomputed from first principles:
//   M5  = (C^T M1 C - t * C^T M2 C) / 8
//   M51 = (t * D^T M1 D + D^T M2 D) / 2
//   M61 = (t * D^T M2 D - D^T M1 D) / 2
struct PencilReductions {
    SymMatrix4 M5, M51, M61;
};
PencilReductions pencil_reductions(const BigRat& t);

// throws chart_error when the (p,q,r,s) chart is violated (c + d = 0 for D)
struct chart_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Chart { C, D };

// Inverse of the change of variables: (a,b,c,d) -> (p,q,r,s).
Vec4 pqrs_from_solution(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d,
                        Chart which);

// ---- ternary quadratic forms and conics ----------------------------------

using Vec3 = std::array<BigRat, 3>;

struct Mat3 {
    std::array<BigRat, 9> m{};
    static Mat3 identity();
    BigRat& at(int i, int j) { return m[i * 3 + j]; }
    const BigRat& at(int i, int j) const { return m[i * 3 + j]; }
    Vec3 apply(const Vec3& v) const;
};

// Symmetric 3x3 rational form together with an exact diagonalization.
class TernaryForm {
public:
    static TernaryForm from_coeffs(const BigRat& xx, const BigRat& xy, const BigRat& xz,
                                   const BigRat& yy, const BigRat& yz, const BigRat& zz);
    BigRat evaluate(const Vec3& v) const;
    BigRat at(int i, int j) const;  // Gram matrix entry

    struct Diagonal {
        std::array<BigInt, 3> coeffs;  // integer, after per-variable scaling
        Mat3 back;                     // maps diagonal coordinates to original ones
    };
    // Completing the square; requires a nonzero diagonal pivot at each step
    // (always true for the forms this project builds).
    Diagonal diagonalize() const;

private:
    std::array<BigRat, 6> e_{};  // xx, xy, xz, yy, yz, zz
};

// Nonzero rational solution of a x^2 + b y^2 + c z^2 = 0, primitive, or
// nullopt when the form is anisotropic over some completion.  Coefficients
// are normalized internally (content, square parts, pairwise gcds).
std::optional<std::array<BigInt, 3>> legendre_solve(const BigInt& a, const BigInt& b,
                                                    const BigInt& c,
                                                    const FactorLimits& limits = {});

// Nonzero rational zero of a general ternary form, via diagonalization.
std::optional<std::array<BigInt, 3>> solve_ternary(const TernaryForm& f,
                                                   const FactorLimits& limits = {});

// ---- the two conics of the (p,q,r,s) pipeline -----------------------------

// Conic  alpha p^2 + beta pq + gamma q^2 = delta w^2  in the chart q != 0.
struct ConicSpec {
    BigRat alpha, beta, gamma, delta;
    BigRat lhs(const BigRat& p, const BigRat& q) const {
        return alpha * p * p + beta * p * q + gamma * q * q;
    }
};
ConicSpec conic_r(const BigRat& t);  // (t^2-7)p^2 + 24pq - 24q^2 = (t^2+1)r^2
ConicSpec conic_s(const BigRat& t);  // 8t p^2 - 24t pq - 3(t^2-8t+1)q^2 = (t^2+1)s^2

struct ConicBasePoint {
    BigInt p0, q0, r0;  // q0 != 0
};

// Rational base point with q0 != 0 on the given conic, or nullopt when the
// conic has no rational point.  Deterministic for a given input.
std::optional<ConicBasePoint> conic_point(const ConicSpec& spec, const FactorLimits& limits = {});

// Base point on conic_r(t); t admissible with t > 1.
std::optional<ConicBasePoint> conic_base_point(const BigRat& t, const FactorLimits& limits = {});

// Second intersection of the slope-k line through the base point, by the
// closed-form parameterization.  nullopt = parameter at infinity.
std::optional<std::pair<BigRat, BigRat>> parameterize_conic(const ConicBasePoint& base,
                                                            const BigRat& t, const BigRat& k);

// Same, for an arbitrary conic; returns homogeneous (P(k), Q(k), W(k)).
std::optional<std::array<BigRat, 3>> parameterize_generic(const ConicSpec& spec,
                                                          const ConicBasePoint& base,
                                                          const BigRat& k);

// Degree-2 polynomials (P, Q, W) in k parameterizing the conic from base.
// coefficient order: lowest first.
std::array<std::array<BigRat, 3>, 3> conic_param_polys(const ConicSpec& spec,
                                                       const ConicBasePoint& base);

}  // namespace jm
