#include "ssm/diophantine.hpp"

#include "ssm/error.hpp"
#include "ssm/roots.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace ssm {

// ----- RealExpr -----

RealExpr RealExpr::rational(const Rat& q) {
    RealExpr e;
    e.terms_.push_back({Term::Kind::One, q, {}, {}, {}, {}});
    return e;
}

RealExpr RealExpr::pi(const Rat& coef) {
    RealExpr e;
    e.terms_.push_back({Term::Kind::Pi, coef, {}, {}, {}, {}});
    return e;
}

RealExpr RealExpr::of_element(const FieldElement& el, const Rat& coef) {
    RealExpr e;
    e.terms_.push_back({Term::Kind::Element, coef, el, {}, {}, {}});
    return e;
}

RealExpr RealExpr::algebraic(const ZPoly& min_poly, const Rat& lo, const Rat& hi,
                             const Rat& coef) {
    ZPoly p = squarefree_part(min_poly.monic_sign());
    if (p.deg() < 1) fail("InvalidArgument", "algebraic atom needs a nonconstant polynomial");
    SturmSeq sturm(p);
    if (p.eval(lo) == 0 || p.eval(hi) == 0 || sturm.count_roots(lo, hi) != 1)
        fail("AmbiguousIsolation", "interval does not isolate one root");
    RealExpr e;
    e.terms_.push_back({Term::Kind::Algebraic, coef, {}, p, lo, hi});
    return e;
}

RealExpr RealExpr::operator+(const RealExpr& o) const {
    RealExpr e = *this;
    e.terms_.insert(e.terms_.end(), o.terms_.begin(), o.terms_.end());
    return e;
}

RealExpr RealExpr::scaled(const Rat& c) const {
    RealExpr e = *this;
    for (auto& t : e.terms_) t.coef *= c;
    return e;
}

RealBall RealExpr::eval(mpfr_prec_t prec) const {
    RealBall acc(prec);
    for (const auto& t : terms_) {
        RealBall coef = RealBall::from_rat(t.coef, prec);
        switch (t.kind) {
            case Term::Kind::One: acc += coef; break;
            case Term::Kind::Pi: acc += coef * RealBall::pi(prec); break;
            case Term::Kind::Element: acc += coef * t.elem.embed_real(prec); break;
            case Term::Kind::Algebraic: {
                RealBall lo = RealBall::from_rat(t.lo, prec);
                RealBall hi = RealBall::from_rat(t.hi, prec);
                ComplexBall seed{RealBall::from_endpoints(lo, hi), RealBall(prec)};
                ComplexBall refined = refine_root(t.poly, seed, prec);
                acc += coef * refined.re();
                break;
            }
        }
    }
    return acc;
}

std::optional<FieldElement> RealExpr::as_field_element(const FieldPtr& field) const {
    FieldElement acc = field->zero();
    for (const auto& t : terms_) {
        switch (t.kind) {
            case Term::Kind::One:
                acc = acc + field->from_rational(t.coef);
                break;
            case Term::Kind::Pi:
                if (t.coef != 0) return std::nullopt;
                break;
            case Term::Kind::Element: {
                if (t.elem.field() == field) {
                    acc = acc + field->from_rational(t.coef) * t.elem;
                } else if (t.elem.is_rational()) {
                    acc = acc + field->from_rational(t.coef * t.elem.rational());
                } else {
                    return std::nullopt;
                }
                break;
            }
            case Term::Kind::Algebraic: {
                if (t.poly.deg() == 1) {
                    Rat root = -Rat(t.poly[0]) / Rat(t.poly[1]);
                    acc = acc + field->from_rational(t.coef * root);
                    break;
                }
                auto member = contains(field, t.poly, t.lo, t.hi);
                if (!member) return std::nullopt;
                acc = acc + field->from_rational(t.coef) * *member;
                break;
            }
        }
    }
    return acc;
}

std::string RealExpr::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rational_to_string(t.coef);
        switch (t.kind) {
            case Term::Kind::One: break;
            case Term::Kind::Pi: os << "*pi"; break;
            case Term::Kind::Element: os << "*" << t.elem.to_string(); break;
            case Term::Kind::Algebraic: os << "*root(" << t.poly.to_string() << ")"; break;
        }
    }
    if (first) os << "0";
    return os.str();
}

// ----- digit changes -----

namespace {

// certified comparison of expr * lambda^e against a rational threshold;
// returns sign of (value - threshold), deciding exactly when possible
int cmp_ladder_value(const RealExpr& x, const std::optional<FieldElement>& x_exact,
                     const FieldPtr& field, long e, const Rat& threshold, bool* exact_tie) {
    if (exact_tie) *exact_tie = false;
    if (x_exact) {
        FieldElement v = *x_exact * field->generator().pow(e) - field->from_rational(threshold);
        int s = v.sign();
        if (s == 0 && exact_tie) *exact_tie = true;
        return s;
    }
    for (mpfr_prec_t p = kDefaultPrec; p <= kPrecCap; p *= 2) {
        RealBall lam = field->generator().embed_real(p);
        RealBall v = x.eval(p) * pow_si(lam, e);
        auto c = v.cmp(threshold);
        if (c) return *c;
    }
    fail("UndecidableAtThreshold", "ladder comparison undecided at the precision cap");
}

struct LadderPoint {
    Int nearest;
    int dist_vs_eps; // sign of ||value|| - eps
    double value_d;
    double dist_d;
};

LadderPoint ladder_point(const RealExpr& x, const std::optional<FieldElement>& x_exact,
                         const FieldPtr& field, long e, const Rat& eps) {
    LadderPoint out;
    if (x_exact) {
        FieldElement v = *x_exact * field->generator().pow(e);
        // certified nearest integer (or an exact half-integer tie)
        for (mpfr_prec_t p = kDefaultPrec;; p *= 2) {
            RealBall vb = v.embed_real(p);
            if (auto m = vb.round_certified()) {
                out.nearest = *m;
                FieldElement dist = v - field->from_rational(Rat(*m));
                if (dist.sign() < 0) dist = -dist;
                int s = (dist - field->from_rational(eps)).sign();
                out.dist_vs_eps = s;
                out.value_d = vb.mid_d();
                out.dist_d = std::fabs(dist.embed_real(64).mid_d());
                return out;
            }
            // maybe an exact half-integer: ||value|| = 1/2 > eps
            Int m = vb.round_mid();
            FieldElement d1 = v - field->from_rational(Rat(m) + Rat(1, 2));
            FieldElement d2 = v - field->from_rational(Rat(m) - Rat(1, 2));
            if (d1.is_zero() || d2.is_zero()) {
                out.nearest = m;
                out.dist_vs_eps = 1; // 1/2 > eps since eps < 1/2
                out.value_d = vb.mid_d();
                out.dist_d = 0.5;
                return out;
            }
            if (p > kPrecCap)
                fail("UndecidableAtThreshold", "nearest integer undecided at the precision cap");
        }
    }
    for (mpfr_prec_t p = kDefaultPrec; p <= kPrecCap; p *= 2) {
        RealBall lam = field->generator().embed_real(p);
        RealBall v = x.eval(p) * pow_si(lam, e);
        auto m = v.round_certified();
        if (!m) continue;
        RealBall dist = v.dist_nearest_int();
        auto c = dist.cmp(eps);
        if (!c) continue;
        out.nearest = *m;
        out.dist_vs_eps = *c;
        out.value_d = v.mid_d();
        out.dist_d = dist.mid_d();
        return out;
    }
    fail("UndecidableAtThreshold", "distance comparison undecided at the precision cap");
}

} // namespace

std::vector<DCRow> dc_rows(const DCQuery& q) {
    if (!(q.epsilon > 0) || !(q.epsilon < Rat(1, 2)))
        fail("InvalidArgument", "epsilon must lie in (0, 1/2)");
    auto x_exact = q.x.as_field_element(q.field);
    std::vector<DCRow> rows;
    for (long t = 0;; ++t) {
        bool tie = false;
        int ge1 = cmp_ladder_value(q.x, x_exact, q.field, -t, Rat(1), &tie);
        if (ge1 < 0) break; // x lambda^-t < 1: ladder ends
        LadderPoint pt = ladder_point(q.x, x_exact, q.field, -t, q.epsilon);
        if (pt.dist_vs_eps == 0)
            fail("UndecidableAtThreshold",
                 "||x lambda^-t|| equals epsilon exactly at t = " + std::to_string(t));
        rows.push_back({t, pt.value_d, pt.nearest, pt.dist_d, pt.dist_vs_eps > 0});
        if (t > 100000000) fail("InvalidArgument", "ladder did not terminate");
    }
    return rows;
}

long dc_count(const DCQuery& q) {
    auto rows = dc_rows(q);
    long n = 0;
    for (const auto& r : rows)
        if (r.counted) ++n;
    return n;
}

// ----- inverse-Vandermonde first column -----

std::vector<FieldElement> lagrange_first_column(const FieldPtr& field) {
    const int d = field->degree();
    const ZPoly& f = field->min_poly();
    FieldElement lam = field->generator();

    if (d == 1) return {field->one()};

    // synthetic division f(x) / (x - lambda): q_{i-1} = c_i + lambda q_i
    std::vector<FieldElement> q(static_cast<std::size_t>(d));
    q[static_cast<std::size_t>(d - 1)] = field->from_rational(Rat(f[static_cast<std::size_t>(d)]));
    for (int i = d - 1; i >= 1; --i)
        q[static_cast<std::size_t>(i - 1)] =
            field->from_rational(Rat(f[static_cast<std::size_t>(i)])) +
            lam * q[static_cast<std::size_t>(i)];

    // q(lambda) = f'(lambda)
    FieldElement denom = field->zero();
    for (int i = 1; i <= d; ++i)
        denom = denom + field->from_rational(Rat(i) * Rat(f[static_cast<std::size_t>(i)])) *
                            lam.pow(i - 1);
    FieldElement dinv = denom.inverse();

    std::vector<FieldElement> col(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) col[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i)] * dinv;

    // residual check: sum_i sigma_k(col_i) lambda_k^{i-1} = delta_{k1}
    for (int k = 1; k <= d; ++k) {
        ComplexBall acc(kDefaultPrec);
        ComplexBall lk = field->embedding_refined(k, kDefaultPrec);
        for (int i = d - 1; i >= 0; --i) {
            acc = acc * lk;
            acc = acc + col[static_cast<std::size_t>(i)].embed(k, kDefaultPrec);
        }
        Rat expected = (k == 1) ? Rat(1) : Rat(0);
        if (!acc.re().contains(expected) || !acc.im().contains(Rat(0)))
            fail("PrecisionExhausted", "inverse-Vandermonde residual check failed");
    }
    return col;
}

// ----- recovery -----

RecoveryResult recover_beta(const RealExpr& alpha, const FieldPtr& field, int n, int K,
                            const Rat& epsilon) {
    const int d = field->degree();
    const ZPoly& f = field->min_poly();
    if (n < 1 || K < 2) fail("InvalidArgument", "need n >= 1 and K >= 2");
    Rat csum = 0;
    for (const Int& c : f.coeffs()) csum += Rat(abs(c));
    if (!(epsilon > 0) || !(epsilon < 1 / csum))
        fail("InvalidArgument", "epsilon must be below 1/(|c_0|+...+|c_d|)");

    auto alpha_exact = alpha.as_field_element(field);

    // normalize into [1, lambda) by an exact lambda-power shift
    long shift = 0;
    {
        int pos = cmp_ladder_value(alpha, alpha_exact, field, 0, Rat(0), nullptr);
        if (pos <= 0) fail("InvalidArgument", "alpha must be positive");
        while (cmp_ladder_value(alpha, alpha_exact, field, shift, Rat(1), nullptr) < 0) ++shift;
        while (true) {
            // alpha * lambda^{shift - 1} >= 1 means shift can decrease
            bool tie = false;
            int c = cmp_ladder_value(alpha, alpha_exact, field, shift - 1, Rat(1), &tie);
            if (c >= 0)
                --shift;
            else
                break;
            if (shift < -1000000) fail("InvalidArgument", "normalization did not terminate");
        }
    }

    const long lo_j = n, hi_j = static_cast<long>(K) * n;
    std::vector<Int> Kj(static_cast<std::size_t>(hi_j - lo_j + 1));
    std::vector<double> residuals(Kj.size());

    for (long j = lo_j; j <= hi_j; ++j) {
        LadderPoint pt = ladder_point(alpha, alpha_exact, field, j + shift, epsilon);
        if (pt.dist_vs_eps > 0)
            fail("DigitChangePresent",
                 "||alpha lambda^" + std::to_string(j) + "|| exceeds epsilon");
        if (pt.dist_vs_eps == 0)
            fail("UndecidableAtThreshold", "residual equals epsilon exactly");
        Kj[static_cast<std::size_t>(j - lo_j)] = pt.nearest;
        residuals[static_cast<std::size_t>(j - lo_j)] = pt.value_d - pt.nearest.get_d();
    }

    // integer recurrence on every window of d+1 consecutive indices
    for (long base = lo_j; base + d <= hi_j; ++base) {
        Int acc = 0;
        for (int i = 0; i <= d; ++i)
            acc += f[static_cast<std::size_t>(i)] * Kj[static_cast<std::size_t>(base - lo_j + i)];
        if (acc != 0)
            fail("RecurrenceViolated",
                 "integer recurrence fails on the window starting at j = " + std::to_string(base));
    }

    auto col = lagrange_first_column(field);
    FieldElement lam = field->generator();

    // beta' lambda^n = sum_i K_{n+i-1} col_i
    FieldElement num = field->zero();
    for (int i = 1; i <= d; ++i)
        num = num + field->from_rational(Rat(Kj[static_cast<std::size_t>(i - 1)])) *
                        col[static_cast<std::size_t>(i - 1)];
    FieldElement beta_prime = num * lam.pow(-static_cast<long>(n));
    FieldElement beta = beta_prime * lam.pow(-shift);

    // b_1 from the window at the far end: certified error |alpha - beta|
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(
        std::min<long>(kPrecCap, 128 + static_cast<long>(4.0 * (hi_j + std::abs(shift) + d) *
                                                         std::log2(std::max(2.0, lam.embed_real(64).ub_d())))));
    RealBall b1(wp);
    {
        RealBall lamb = lam.embed_real(wp);
        for (int t = 1; t <= d; ++t) {
            long j = hi_j - d + t;
            RealBall v = alpha.eval(wp) * pow_si(lamb, j + shift);
            RealBall eps_j = v - RealBall::from_rat(Rat(Kj[static_cast<std::size_t>(j - lo_j)]), wp);
            b1 += eps_j * col[static_cast<std::size_t>(t - 1)].embed_real(wp);
        }
        long istar = (static_cast<long>(K) - 1) * n - d + 1;
        b1 = b1 * pow_si(lamb, -istar);
        // |alpha - beta| = |b1| lambda^{-(n + shift)}
        b1 = abs(b1) * pow_si(lamb, -(static_cast<long>(n) + shift));
    }

    RecoveryResult out;
    out.beta = beta;
    out.error_bound = b1.ub_ball();
    out.height_bound = height(beta).ub_ball();
    out.residuals = std::move(residuals);
    out.power_shift = static_cast<int>(shift);
    return out;
}

std::vector<LiouvilleWitness> liouville_search(const RealExpr& alpha, const FieldPtr& field,
                                               int H, int budget_n) {
    if (H < 1) fail("InvalidArgument", "H must be >= 1");
    if (alpha.as_field_element(field))
        fail("AlphaInField", "alpha lies in the field; Liouville approximation is undefined");

    Rat csum = 0;
    for (const Int& c : field->min_poly().coeffs()) csum += Rat(abs(c));
    Rat eps = Rat(1) / Rat(csum + 1);
    if (eps > Rat(1, 4)) eps = Rat(1, 4);

    std::vector<LiouvilleWitness> out;
    for (int n = 8; n <= budget_n; n *= 2) {
        for (int K : {2, 3, 4}) {
            RecoveryResult rec;
            try {
                rec = recover_beta(alpha, field, n, K, eps);
            } catch (const Error&) {
                continue; // no near-integer ladder at this scale
            }
            bool dup = false;
            for (const auto& w : out)
                if (w.beta == rec.beta) dup = true;
            if (dup) continue;
            RealBall h = height(rec.beta);
            RealBall thr = exp(mul_si(h.ub_ball(), -H));
            auto cmp = rec.error_bound.cmp(Rat(0));
            bool sat;
            if (cmp && *cmp == 0) {
                sat = true; // exact hit
            } else {
                auto c = rec.error_bound.ub_ball().cmp(thr.lb_ball());
                sat = c && *c <= 0;
            }
            out.push_back({rec.beta, h, rec.error_bound, sat, n, K});
        }
    }
    return out;
}

DCPairReport dc_pair_bound(const Rat& x, const RealExpr& gamma, const FieldPtr& field,
                           const Rat& epsilon) {
    if (gamma.as_field_element(field))
        fail("GammaInField", "gamma lies in Q(lambda); the pair bound requires gamma outside");
    // x > e^e
    {
        RealBall xe = RealBall::from_rat(x, 96);
        RealBall ee = exp(exp(RealBall::from_si(1, 96)));
        auto c = xe.cmp(ee);
        if (!(c && *c > 0)) fail("InvalidArgument", "x must exceed e^e");
    }
    DCPairReport rep;
    rep.dc_x = dc_count({RealExpr::rational(x), field, epsilon});
    rep.dc_gx = dc_count({gamma.scaled(x), field, epsilon});
    double lx = std::log(x.get_d());
    rep.loglog_x = std::log(lx);
    rep.ratio = static_cast<double>(rep.dc_x + rep.dc_gx) / rep.loglog_x;
    return rep;
}

} // namespace ssm
