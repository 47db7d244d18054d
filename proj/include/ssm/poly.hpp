#pragma once

#include "ssm/ball.hpp"
#include "ssm/rational.hpp"

#include <utility>
#include <vector>

namespace ssm {

// Dense integer polynomial, c[i] is the coefficient of x^i.
// Normalized: empty vector is the zero polynomial, otherwise c.back() != 0.
class ZPoly {
public:
    ZPoly() = default;
    explicit ZPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }
    static ZPoly x_minus(const Int& a) { return ZPoly({-a, Int(1)}); }
    static ZPoly constant(const Int& a) { return ZPoly({a}); }

    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Int& lc() const { return c_.back(); }
    const Int& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Int>& coeffs() const { return c_; }

    ZPoly derivative() const;
    Int content() const; // >= 0; 0 for the zero polynomial
    ZPoly primitive() const; // content 1, sign of lc preserved
    ZPoly monic_sign() const; // primitive with lc > 0

    bool operator==(const ZPoly& o) const { return c_ == o.c_; }

    Rat eval(const Rat& x) const;
    RealBall eval(const RealBall& x) const;
    ComplexBall eval(const ComplexBall& x) const;

    // reciprocal x^deg * p(1/x)
    ZPoly reversed() const;
    bool is_self_reciprocal() const;

    std::string to_string() const;

private:
    void normalize();
    std::vector<Int> c_;
};

ZPoly operator+(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a);
ZPoly mul_int(const ZPoly& a, const Int& k);

// exact division over Z; returns false when b does not divide a
bool try_divide(const ZPoly& a, const ZPoly& b, ZPoly* quotient);

// primitive gcd with positive leading coefficient
ZPoly gcd(const ZPoly& a, const ZPoly& b);
ZPoly squarefree_part(const ZPoly& a);

// Rational polynomials appear only as intermediates (characteristic
// polynomials, interpolation); kept as plain vectors.
using QPoly = std::vector<Rat>;
ZPoly clear_denominators(const QPoly& p);
QPoly qpoly_from(const ZPoly& p);

Rat resultant(const QPoly& a, const QPoly& b);
Rat resultant(const ZPoly& a, const ZPoly& b);

// ----- real-root machinery (Sturm) -----

class SturmSeq {
public:
    explicit SturmSeq(const ZPoly& squarefree);
    // number of real roots in (lo, hi]; endpoints must not be roots of p
    int count_roots(const Rat& lo, const Rat& hi) const;
    int count_roots_above(const Rat& lo) const;
    int count_real_roots() const;
    const ZPoly& poly() const { return p_; }

private:
    int sign_changes(const Rat& x) const;
    int sign_changes_pos_inf() const;
    int sign_changes_neg_inf() const;
    ZPoly p_;
    std::vector<ZPoly> seq_;
};

// Cauchy bound: all complex roots have |z| < bound
Rat root_bound(const ZPoly& p);

// Disjoint open rational intervals, each containing exactly one real root;
// input must be squarefree. Intervals are sorted increasingly.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const ZPoly& p);

// Halve the interval around the single contained root until width <= target.
void refine_root_interval(const ZPoly& p, Rat& lo, Rat& hi, const Rat& target_width);

// ----- factorization over Z -----

// Input must be primitive and squarefree with degree >= 1. Returns irreducible
// primitive factors with positive leading coefficients (product equals the
// input up to sign).
std::vector<ZPoly> factor_squarefree(const ZPoly& p, std::uint64_t seed = 1);

bool is_irreducible(const ZPoly& p);

} // namespace ssm
