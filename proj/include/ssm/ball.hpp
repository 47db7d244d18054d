#pragma once

#include "ssm/rational.hpp"

#include <mpfr.h>

#include <optional>
#include <string>

namespace ssm {

inline constexpr mpfr_prec_t kDefaultPrec = 128;
inline constexpr mpfr_prec_t kPrecCap = 8192;
inline constexpr mpfr_prec_t kRadPrec = 32;

// Certified real interval [mid - rad, mid + rad]. The midpoint lives at the
// ball's working precision, the radius is a low-precision upper bound kept
// with upward rounding, so every operation returns an enclosure of the true
// result.
class RealBall {
public:
    explicit RealBall(mpfr_prec_t prec = kDefaultPrec);
    RealBall(const RealBall& o);
    RealBall(RealBall&& o) noexcept;
    RealBall& operator=(const RealBall& o);
    RealBall& operator=(RealBall&& o) noexcept;
    ~RealBall();

    static RealBall from_si(long v, mpfr_prec_t prec = kDefaultPrec);
    static RealBall from_rat(const Rat& q, mpfr_prec_t prec = kDefaultPrec);
    static RealBall from_double(double v, mpfr_prec_t prec = kDefaultPrec);
    static RealBall pi(mpfr_prec_t prec = kDefaultPrec);
    // enclosure of [lo, hi]
    static RealBall from_endpoints(const RealBall& lo, const RealBall& hi);

    mpfr_prec_t prec() const { return prec_; }
    const mpfr_t& mid() const { return mid_; }
    const mpfr_t& rad() const { return rad_; }

    bool is_exact() const { return mpfr_zero_p(rad_); }
    bool is_exact_zero() const { return is_exact() && mpfr_zero_p(mid_); }
    bool contains_zero() const;
    bool contains(const Rat& q) const;

    double mid_d() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }
    double ub_d() const;
    double lb_d() const;
    void get_ub(mpfr_t out) const; // out := mid + rad, rounded up
    void get_lb(mpfr_t out) const; // out := mid - rad, rounded down
    RealBall ub_ball() const;      // exact point at the upper bound
    RealBall lb_ball() const;
    RealBall mid_point() const;    // exact point at the midpoint
    RealBall rad_ball() const;     // exact point equal to the radius
    RealBall at_prec(mpfr_prec_t prec) const; // re-round midpoint, widen radius
    static RealBall from_mpfr(const mpfr_t v, mpfr_prec_t prec);

    // Certified comparisons: engaged only when the intervals are disjoint
    // (or both are the same exact point, giving 0).
    std::optional<int> cmp(const RealBall& o) const;
    std::optional<int> cmp(const Rat& q) const;
    bool certainly_positive() const;
    bool certainly_negative() const;
    bool certainly_lt(const Rat& q) const;
    bool certainly_gt(const Rat& q) const;

    // Nearest integer of the midpoint; engaged iff the whole ball rounds to it.
    std::optional<Int> round_certified() const;
    Int round_mid() const;
    // Enclosure of the distance to the nearest integer, clipped to [0, 1/2].
    RealBall dist_nearest_int() const;
    // Enclosure of x mod 1 (center shifted to the midpoint's fractional part).
    RealBall mod1() const;

    std::string to_string(int digits = 20) const;

    friend RealBall operator+(const RealBall& a, const RealBall& b);
    friend RealBall operator-(const RealBall& a, const RealBall& b);
    friend RealBall operator*(const RealBall& a, const RealBall& b);
    friend RealBall operator/(const RealBall& a, const RealBall& b);
    friend RealBall operator-(const RealBall& a);

    RealBall& operator+=(const RealBall& b) { return *this = *this + b; }
    RealBall& operator-=(const RealBall& b) { return *this = *this - b; }
    RealBall& operator*=(const RealBall& b) { return *this = *this * b; }

    friend RealBall mul_si(const RealBall& a, long k);
    friend RealBall abs(const RealBall& a);
    friend RealBall sqrt_nonneg(const RealBall& a); // caller certifies value >= 0
    friend RealBall log(const RealBall& a);         // requires lower bound > 0
    friend RealBall exp(const RealBall& a);
    friend RealBall pow_si(const RealBall& a, long n);
    friend RealBall hull(const RealBall& a, const RealBall& b);
    friend RealBall max(const RealBall& a, const RealBall& b);

    // widen the radius by the upper bound of extra_rad
    RealBall widened(const RealBall& extra_rad) const;

private:
    friend class ComplexBall;

    void add_halfulp_if(int ternary);
    void add_to_rad(const mpfr_t err);

    mpfr_t mid_;
    mpfr_t rad_;
    mpfr_prec_t prec_;
};

// namespace-scope declarations of the friend operations
RealBall operator+(const RealBall& a, const RealBall& b);
RealBall operator-(const RealBall& a, const RealBall& b);
RealBall operator*(const RealBall& a, const RealBall& b);
RealBall operator/(const RealBall& a, const RealBall& b);
RealBall operator-(const RealBall& a);
RealBall mul_si(const RealBall& a, long k);
RealBall abs(const RealBall& a);
RealBall sqrt_nonneg(const RealBall& a);
RealBall log(const RealBall& a);
RealBall exp(const RealBall& a);
RealBall pow_si(const RealBall& a, long n);
RealBall hull(const RealBall& a, const RealBall& b);
RealBall max(const RealBall& a, const RealBall& b);

class ComplexBall {
public:
    explicit ComplexBall(mpfr_prec_t prec = kDefaultPrec) : re_(prec), im_(prec) {}
    ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}

    static ComplexBall one(mpfr_prec_t prec = kDefaultPrec);
    // e(x) = exp(2 pi i x)
    static ComplexBall e_of(const RealBall& x);

    const RealBall& re() const { return re_; }
    const RealBall& im() const { return im_; }
    mpfr_prec_t prec() const { return re_.prec(); }

    RealBall abs() const;
    RealBall abs_sq() const;
    ComplexBall conj() const;
    ComplexBall mid_point() const { return ComplexBall(re_.mid_point(), im_.mid_point()); }
    ComplexBall at_prec(mpfr_prec_t p) const { return ComplexBall(re_.at_prec(p), im_.at_prec(p)); }
    double rad_d() const;

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator*(const RealBall& s, const ComplexBall& a);
    ComplexBall& operator+=(const ComplexBall& b) { return *this = *this + b; }
    ComplexBall& operator*=(const ComplexBall& b) { return *this = *this * b; }

    std::string to_string(int digits = 20) const;

private:
    RealBall re_, im_;
};

} // namespace ssm
