#include "ssm/ball.hpp"

#include "ssm/error.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace ssm {

namespace {

// RAII scratch variable
struct Fr {
    explicit Fr(mpfr_prec_t p) { mpfr_init2(v, p); }
    ~Fr() { mpfr_clear(v); }
    Fr(const Fr&) = delete;
    mpfr_t v;
};

} // namespace

RealBall::RealBall(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(mid_, prec);
    mpfr_init2(rad_, kRadPrec);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

RealBall::RealBall(const RealBall& o) : prec_(o.prec_) {
    mpfr_init2(mid_, o.prec_);
    mpfr_init2(rad_, kRadPrec);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(mid_, 2); // placeholder, swapped away
    mpfr_init2(rad_, kRadPrec);
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
}

RealBall& RealBall::operator=(const RealBall& o) {
    if (this == &o) return *this;
    if (prec_ != o.prec_) {
        mpfr_set_prec(mid_, o.prec_);
        prec_ = o.prec_;
    }
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
    return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
    std::swap(prec_, o.prec_);
    return *this;
}

RealBall::~RealBall() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

void RealBall::add_halfulp_if(int ternary) {
    if (ternary == 0) return;
    Fr err(kRadPrec);
    if (mpfr_zero_p(mid_)) {
        mpfr_set_ui_2exp(err.v, 1, mpfr_get_emin() + 1, MPFR_RNDU);
    } else {
        mpfr_set_ui_2exp(err.v, 1, mpfr_get_exp(mid_) - prec_ - 1, MPFR_RNDU);
    }
    mpfr_add(rad_, rad_, err.v, MPFR_RNDU);
}

void RealBall::add_to_rad(const mpfr_t err) {
    mpfr_add(rad_, rad_, err, MPFR_RNDU);
}

RealBall RealBall::from_si(long v, mpfr_prec_t prec) {
    RealBall r(prec);
    int t = mpfr_set_si(r.mid_, v, MPFR_RNDN);
    r.add_halfulp_if(t);
    return r;
}

RealBall RealBall::from_rat(const Rat& q, mpfr_prec_t prec) {
    RealBall r(prec);
    int t = mpfr_set_q(r.mid_, q.get_mpq_t(), MPFR_RNDN);
    r.add_halfulp_if(t);
    return r;
}

RealBall RealBall::from_double(double v, mpfr_prec_t prec) {
    RealBall r(prec);
    mpfr_set_d(r.mid_, v, MPFR_RNDN); // exact: prec >= 53
    return r;
}

RealBall RealBall::pi(mpfr_prec_t prec) {
    RealBall r(prec);
    int t = mpfr_const_pi(r.mid_, MPFR_RNDN);
    r.add_halfulp_if(t);
    return r;
}

RealBall RealBall::from_endpoints(const RealBall& lo, const RealBall& hi) {
    mpfr_prec_t p = std::max(lo.prec_, hi.prec_);
    Fr l(p), h(p);
    lo.get_lb(l.v);
    hi.get_ub(h.v);
    RealBall r(p);
    int t = mpfr_add(r.mid_, l.v, h.v, MPFR_RNDN);
    t |= mpfr_div_2ui(r.mid_, r.mid_, 1, MPFR_RNDN);
    Fr w(kRadPrec);
    mpfr_sub(w.v, h.v, l.v, MPFR_RNDU);
    mpfr_div_2ui(w.v, w.v, 1, MPFR_RNDU);
    if (mpfr_sgn(w.v) < 0) mpfr_set_zero(w.v, 1);
    mpfr_set(r.rad_, w.v, MPFR_RNDU);
    r.add_halfulp_if(t);
    r.add_halfulp_if(1); // midpoint offset slack
    return r;
}

bool RealBall::contains_zero() const {
    Fr a(kRadPrec);
    mpfr_abs(a.v, mid_, MPFR_RNDD); // lower bound of |mid|
    return mpfr_cmp(a.v, rad_) <= 0;
}

bool RealBall::contains(const Rat& q) const {
    Fr d(prec_ + 32);
    mpfr_set_q(d.v, q.get_mpq_t(), MPFR_RNDN);
    mpfr_sub(d.v, mid_, d.v, MPFR_RNDA); // away: upper bound on |mid - q| sign-wise
    mpfr_abs(d.v, d.v, MPFR_RNDD);
    // conservative: compare a lower bound of the distance against rad
    Fr dl(kRadPrec);
    mpfr_set(dl.v, d.v, MPFR_RNDD);
    // account for rounding of the subtraction itself
    Fr slack(kRadPrec);
    if (!mpfr_zero_p(d.v))
        mpfr_set_ui_2exp(slack.v, 1, mpfr_get_exp(d.v) - (prec_ + 32), MPFR_RNDU);
    else
        mpfr_set_zero(slack.v, 1);
    mpfr_sub(dl.v, dl.v, slack.v, MPFR_RNDD);
    return mpfr_cmp(dl.v, rad_) <= 0;
}

void RealBall::get_ub(mpfr_t out) const {
    mpfr_add(out, mid_, rad_, MPFR_RNDU);
}

void RealBall::get_lb(mpfr_t out) const {
    mpfr_sub(out, mid_, rad_, MPFR_RNDD);
}

double RealBall::ub_d() const {
    Fr u(prec_);
    get_ub(u.v);
    return mpfr_get_d(u.v, MPFR_RNDU);
}

double RealBall::lb_d() const {
    Fr l(prec_);
    get_lb(l.v);
    return mpfr_get_d(l.v, MPFR_RNDD);
}

RealBall RealBall::ub_ball() const {
    RealBall r(prec_);
    get_ub(r.mid_);
    return r;
}

RealBall RealBall::lb_ball() const {
    RealBall r(prec_);
    get_lb(r.mid_);
    return r;
}

RealBall RealBall::mid_point() const {
    RealBall r(prec_);
    mpfr_set(r.mid_, mid_, MPFR_RNDN);
    return r;
}

RealBall RealBall::rad_ball() const {
    RealBall r(prec_);
    mpfr_set(r.mid_, rad_, MPFR_RNDU); // exact: kRadPrec <= prec
    return r;
}

RealBall RealBall::at_prec(mpfr_prec_t prec) const {
    RealBall r(prec);
    int t = mpfr_set(r.mid_, mid_, MPFR_RNDN);
    mpfr_set(r.rad_, rad_, MPFR_RNDU);
    r.add_halfulp_if(t);
    return r;
}

RealBall RealBall::from_mpfr(const mpfr_t v, mpfr_prec_t prec) {
    RealBall r(prec);
    int t = mpfr_set(r.mid_, v, MPFR_RNDN);
    r.add_halfulp_if(t);
    return r;
}

std::optional<int> RealBall::cmp(const RealBall& o) const {
    if (is_exact() && o.is_exact()) {
        int c = mpfr_cmp(mid_, o.mid_);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    mpfr_prec_t p = std::max(prec_, o.prec_);
    Fr a(p), b(p);
    get_ub(a.v);
    o.get_lb(b.v);
    if (mpfr_cmp(a.v, b.v) < 0) return -1;
    get_lb(a.v);
    o.get_ub(b.v);
    if (mpfr_cmp(a.v, b.v) > 0) return 1;
    return std::nullopt;
}

std::optional<int> RealBall::cmp(const Rat& q) const {
    if (is_exact()) {
        int c = mpfr_cmp_q(mid_, q.get_mpq_t());
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    return cmp(from_rat(q, prec_ + 32));
}

bool RealBall::certainly_positive() const {
    Fr l(prec_);
    get_lb(l.v);
    return mpfr_sgn(l.v) > 0;
}

bool RealBall::certainly_negative() const {
    Fr u(prec_);
    get_ub(u.v);
    return mpfr_sgn(u.v) < 0;
}

bool RealBall::certainly_lt(const Rat& q) const {
    auto c = cmp(q);
    return c && *c < 0;
}

bool RealBall::certainly_gt(const Rat& q) const {
    auto c = cmp(q);
    return c && *c > 0;
}

Int RealBall::round_mid() const {
    Fr r(prec_ + 2);
    mpfr_rint(r.v, mid_, MPFR_RNDN);
    Int n;
    mpfr_get_z(n.get_mpz_t(), r.v, MPFR_RNDN);
    return n;
}

std::optional<Int> RealBall::round_certified() const {
    Int n = round_mid();
    // require ball strictly inside (n - 1/2, n + 1/2)
    Fr t(prec_ + 8), half(8);
    mpfr_set_d(half.v, 0.5, MPFR_RNDN);
    get_ub(t.v);
    mpfr_sub_z(t.v, t.v, n.get_mpz_t(), MPFR_RNDU);
    if (mpfr_cmp(t.v, half.v) >= 0) return std::nullopt;
    get_lb(t.v);
    mpfr_sub_z(t.v, t.v, n.get_mpz_t(), MPFR_RNDD);
    mpfr_neg(t.v, t.v, MPFR_RNDU);
    if (mpfr_cmp(t.v, half.v) >= 0) return std::nullopt;
    return n;
}

RealBall RealBall::mod1() const {
    Int n = round_mid();
    RealBall r(prec_);
    int t = mpfr_sub_z(r.mid_, mid_, n.get_mpz_t(), MPFR_RNDN);
    mpfr_set(r.rad_, rad_, MPFR_RNDU);
    r.add_halfulp_if(t);
    return r;
}

RealBall RealBall::dist_nearest_int() const {
    RealBall f = mod1();
    RealBall a = ssm::abs(f);
    // clip enclosure to [0, 1/2]; sound because dist is 1-Lipschitz and <= 1/2
    Fr lo(prec_), hi(prec_);
    a.get_lb(lo.v);
    a.get_ub(hi.v);
    if (mpfr_sgn(lo.v) < 0) mpfr_set_zero(lo.v, 1);
    if (mpfr_cmp_d(hi.v, 0.5) > 0) mpfr_set_d(hi.v, 0.5, MPFR_RNDU);
    if (mpfr_cmp(lo.v, hi.v) > 0) mpfr_set(lo.v, hi.v, MPFR_RNDD);
    RealBall l(prec_), h(prec_);
    mpfr_set(l.mid_, lo.v, MPFR_RNDN);
    mpfr_set(h.mid_, hi.v, MPFR_RNDN);
    return from_endpoints(l, h);
}

std::string RealBall::to_string(int digits) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", digits, mid_) < 0) return "?";
    std::string out(s);
    mpfr_free_str(s);
    if (!is_exact()) {
        char* rs = nullptr;
        if (mpfr_asprintf(&rs, "%.3Rg", rad_) >= 0) {
            out += " +/- ";
            out += rs;
            mpfr_free_str(rs);
        }
    }
    return out;
}

RealBall operator+(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.prec_, b.prec_));
    int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    r.add_halfulp_if(t);
    return r;
}

RealBall operator-(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.prec_, b.prec_));
    int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    r.add_halfulp_if(t);
    return r;
}

RealBall operator-(const RealBall& a) {
    RealBall r(a);
    mpfr_neg(r.mid_, r.mid_, MPFR_RNDN); // exact
    return r;
}

RealBall operator*(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.prec_, b.prec_));
    int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    // rad = |am|*brad + |bm|*arad + arad*brad
    Fr am(kRadPrec), bm(kRadPrec), x(kRadPrec);
    mpfr_abs(am.v, a.mid_, MPFR_RNDU);
    mpfr_abs(bm.v, b.mid_, MPFR_RNDU);
    mpfr_mul(x.v, am.v, b.rad_, MPFR_RNDU);
    mpfr_set(r.rad_, x.v, MPFR_RNDU);
    mpfr_mul(x.v, bm.v, a.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, x.v, MPFR_RNDU);
    mpfr_mul(x.v, a.rad_, b.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, x.v, MPFR_RNDU);
    r.add_halfulp_if(t);
    return r;
}

RealBall operator/(const RealBall& a, const RealBall& b) {
    if (b.contains_zero()) fail("BallDivisionByZero", "divisor interval contains zero");
    RealBall r(std::max(a.prec_, b.prec_));
    int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    // |a/b - am/bm| <= (arad*|bm| + |am|*brad) / (|bm| * (|bm| - brad))
    Fr am(kRadPrec), bm(kRadPrec), lo(kRadPrec), num(kRadPrec), x(kRadPrec);
    mpfr_abs(am.v, a.mid_, MPFR_RNDU);
    mpfr_abs(bm.v, b.mid_, MPFR_RNDU);
    Fr bml(kRadPrec);
    mpfr_abs(bml.v, b.mid_, MPFR_RNDD);
    mpfr_sub(lo.v, bml.v, b.rad_, MPFR_RNDD); // > 0 since no zero in b
    mpfr_mul(num.v, a.rad_, bm.v, MPFR_RNDU);
    mpfr_mul(x.v, am.v, b.rad_, MPFR_RNDU);
    mpfr_add(num.v, num.v, x.v, MPFR_RNDU);
    mpfr_mul(x.v, bml.v, lo.v, MPFR_RNDD);
    mpfr_div(num.v, num.v, x.v, MPFR_RNDU);
    mpfr_set(r.rad_, num.v, MPFR_RNDU);
    r.add_halfulp_if(t);
    return r;
}

RealBall mul_si(const RealBall& a, long k) {
    RealBall r(a.prec_);
    int t = mpfr_mul_si(r.mid_, a.mid_, k, MPFR_RNDN);
    Fr ka(kRadPrec);
    mpfr_set_si(ka.v, k >= 0 ? k : -k, MPFR_RNDU);
    mpfr_mul(r.rad_, a.rad_, ka.v, MPFR_RNDU);
    r.add_halfulp_if(t);
    return r;
}

RealBall abs(const RealBall& a) {
    Fr lo(a.prec_), hi(a.prec_);
    a.get_lb(lo.v);
    a.get_ub(hi.v);
    RealBall r(a.prec_);
    if (mpfr_sgn(lo.v) >= 0) return a;
    if (mpfr_sgn(hi.v) <= 0) return -a;
    // straddles zero: [0, max(|lo|, hi)]
    mpfr_abs(lo.v, lo.v, MPFR_RNDU);
    if (mpfr_cmp(lo.v, hi.v) > 0) mpfr_set(hi.v, lo.v, MPFR_RNDU);
    RealBall z(a.prec_), h(a.prec_);
    mpfr_set(h.mid_, hi.v, MPFR_RNDN);
    return RealBall::from_endpoints(z, h);
}

RealBall sqrt_nonneg(const RealBall& a) {
    Fr lo(a.prec_ + 8), hi(a.prec_ + 8);
    a.get_lb(lo.v);
    a.get_ub(hi.v);
    if (mpfr_sgn(lo.v) < 0) mpfr_set_zero(lo.v, 1);
    if (mpfr_sgn(hi.v) < 0) mpfr_set_zero(hi.v, 1);
    Fr flo(a.prec_ + 8), fhi(a.prec_ + 8);
    mpfr_sqrt(flo.v, lo.v, MPFR_RNDD);
    mpfr_sqrt(fhi.v, hi.v, MPFR_RNDU);
    RealBall l(a.prec_), h(a.prec_);
    mpfr_set(l.mid_, flo.v, MPFR_RNDD);
    mpfr_set(h.mid_, fhi.v, MPFR_RNDU);
    return RealBall::from_endpoints(l, h);
}

RealBall log(const RealBall& a) {
    Fr lo(a.prec_ + 8), hi(a.prec_ + 8);
    a.get_lb(lo.v);
    a.get_ub(hi.v);
    if (mpfr_sgn(lo.v) <= 0) fail("BallLogDomain", "log of interval touching zero");
    Fr flo(a.prec_ + 8), fhi(a.prec_ + 8);
    mpfr_log(flo.v, lo.v, MPFR_RNDD);
    mpfr_log(fhi.v, hi.v, MPFR_RNDU);
    RealBall l(a.prec_), h(a.prec_);
    mpfr_set(l.mid_, flo.v, MPFR_RNDD);
    mpfr_set(h.mid_, fhi.v, MPFR_RNDU);
    return RealBall::from_endpoints(l, h);
}

RealBall exp(const RealBall& a) {
    Fr lo(a.prec_ + 8), hi(a.prec_ + 8);
    a.get_lb(lo.v);
    a.get_ub(hi.v);
    Fr flo(a.prec_ + 8), fhi(a.prec_ + 8);
    mpfr_exp(flo.v, lo.v, MPFR_RNDD);
    mpfr_exp(fhi.v, hi.v, MPFR_RNDU);
    RealBall l(a.prec_), h(a.prec_);
    mpfr_set(l.mid_, flo.v, MPFR_RNDD);
    mpfr_set(h.mid_, fhi.v, MPFR_RNDU);
    return RealBall::from_endpoints(l, h);
}

RealBall pow_si(const RealBall& a, long n) {
    if (n == 0) return RealBall::from_si(1, a.prec_);
    if (n < 0) return RealBall::from_si(1, a.prec_) / pow_si(a, -n);
    RealBall acc = RealBall::from_si(1, a.prec_);
    RealBall base = a;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

RealBall hull(const RealBall& a, const RealBall& b) {
    mpfr_prec_t p = std::max(a.prec_, b.prec_);
    Fr la(p), lb(p), ua(p), ub(p);
    a.get_lb(la.v);
    b.get_lb(lb.v);
    a.get_ub(ua.v);
    b.get_ub(ub.v);
    if (mpfr_cmp(lb.v, la.v) < 0) mpfr_set(la.v, lb.v, MPFR_RNDD);
    if (mpfr_cmp(ub.v, ua.v) > 0) mpfr_set(ua.v, ub.v, MPFR_RNDU);
    RealBall l(p), h(p);
    mpfr_set(l.mid_, la.v, MPFR_RNDD);
    mpfr_set(h.mid_, ua.v, MPFR_RNDU);
    return RealBall::from_endpoints(l, h);
}

RealBall max(const RealBall& a, const RealBall& b) {
    auto c = a.cmp(b);
    if (c) return *c >= 0 ? a : b;
    // undecided: enclose max by [max(lb), max(ub)]
    mpfr_prec_t p = std::max(a.prec_, b.prec_);
    Fr la(p), lb(p), ua(p), ub(p);
    a.get_lb(la.v);
    b.get_lb(lb.v);
    a.get_ub(ua.v);
    b.get_ub(ub.v);
    if (mpfr_cmp(lb.v, la.v) > 0) mpfr_set(la.v, lb.v, MPFR_RNDD);
    if (mpfr_cmp(ub.v, ua.v) > 0) mpfr_set(ua.v, ub.v, MPFR_RNDU);
    RealBall l(p), h(p);
    mpfr_set(l.mid_, la.v, MPFR_RNDN);
    mpfr_set(h.mid_, ua.v, MPFR_RNDN);
    return RealBall::from_endpoints(l, h);
}

RealBall RealBall::widened(const RealBall& extra) const {
    RealBall r(*this);
    Fr u(kRadPrec);
    extra.get_ub(u.v);
    if (mpfr_sgn(u.v) > 0) mpfr_add(r.rad_, r.rad_, u.v, MPFR_RNDU);
    return r;
}

ComplexBall ComplexBall::one(mpfr_prec_t prec) {
    return ComplexBall(RealBall::from_si(1, prec), RealBall(prec));
}

ComplexBall ComplexBall::e_of(const RealBall& x) {
    mpfr_prec_t p = x.prec();
    RealBall f = x.mod1();
    RealBall theta = mul_si(RealBall::pi(p + 8), 2) * f;
    // cos/sin are 1-Lipschitz in theta
    RealBall c(p), s(p);
    {
        Fr cv(p), sv(p);
        int tc = mpfr_cos(cv.v, theta.mid(), MPFR_RNDN);
        int ts = mpfr_sin(sv.v, theta.mid(), MPFR_RNDN);
        mpfr_set(c.mid_, cv.v, MPFR_RNDN);
        mpfr_set(c.rad_, theta.rad(), MPFR_RNDU);
        c.add_halfulp_if(tc);
        mpfr_set(s.mid_, sv.v, MPFR_RNDN);
        mpfr_set(s.rad_, theta.rad(), MPFR_RNDU);
        s.add_halfulp_if(ts);
    }
    return ComplexBall(std::move(c), std::move(s));
}

RealBall ComplexBall::abs_sq() const {
    return re_ * re_ + im_ * im_;
}

RealBall ComplexBall::abs() const {
    return sqrt_nonneg(abs_sq());
}

ComplexBall ComplexBall::conj() const {
    return ComplexBall(re_, -im_);
}

double ComplexBall::rad_d() const {
    return re_.rad_d() + im_.rad_d();
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
    return ComplexBall(a.re_ + b.re_, a.im_ + b.im_);
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
    return ComplexBall(a.re_ - b.re_, a.im_ - b.im_);
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
    return ComplexBall(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

ComplexBall operator*(const RealBall& s, const ComplexBall& a) {
    return ComplexBall(s * a.re_, s * a.im_);
}

std::string ComplexBall::to_string(int digits) const {
    return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ")";
}

} // namespace ssm
