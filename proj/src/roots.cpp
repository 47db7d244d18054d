#include "ssm/roots.hpp"

#include "ssm/error.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace ssm {

namespace {

struct Certified {
    ComplexBall center; // exact midpoint
    RealBall radius;    // certified disc radius
};

// midpoint-only complex quotient num/den
ComplexBall approx_div(const ComplexBall& num, const ComplexBall& den) {
    RealBall d2 = den.abs_sq();
    ComplexBall prod = num * den.conj();
    return ComplexBall(prod.re() / d2, prod.im() / d2).mid_point();
}

// Durand-Kerner sweep; zs hold exact midpoints
void dk_iterate(const ZPoly& p, std::vector<ComplexBall>& zs, int iters) {
    const int n = p.deg();
    ComplexBall lc(RealBall::from_rat(Rat(p.lc()), zs[0].prec()), RealBall(zs[0].prec()));
    for (int it = 0; it < iters; ++it) {
        for (int i = 0; i < n; ++i) {
            auto& zi = zs[static_cast<std::size_t>(i)];
            ComplexBall num = p.eval(zi);
            ComplexBall den = lc;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                den *= zi - zs[static_cast<std::size_t>(j)];
            }
            if (!den.abs_sq().certainly_positive()) continue;
            zi = (zi - approx_div(num, den)).mid_point();
        }
    }
}

bool certify_all(const ZPoly& p, const ZPoly& dp, const std::vector<ComplexBall>& zs,
                 std::vector<Certified>* out) {
    const int n = p.deg();
    out->clear();
    for (int i = 0; i < n; ++i) {
        const ComplexBall& z = zs[static_cast<std::size_t>(i)];
        RealBall pv = p.eval(z).abs();
        RealBall dv = dp.eval(z).abs();
        if (!dv.certainly_positive()) return false;
        RealBall rad = mul_si(pv / dv, n).ub_ball();
        out->push_back({z, rad});
    }
    // pairwise disjoint with margin 3 (keeps even the bounding boxes disjoint)
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            RealBall sep = ((*out)[static_cast<std::size_t>(i)].center -
                            (*out)[static_cast<std::size_t>(j)].center)
                               .abs();
            RealBall need = mul_si((*out)[static_cast<std::size_t>(i)].radius +
                                       (*out)[static_cast<std::size_t>(j)].radius,
                                   3);
            auto c = need.cmp(sep);
            if (!(c && *c < 0)) return false;
        }
    return true;
}

} // namespace

std::vector<ComplexBall> isolate_roots(const ZPoly& p0, mpfr_prec_t prec) {
    ZPoly p = p0.primitive();
    int n = p.deg();
    if (n < 1) fail("InvalidArgument", "constant polynomial has no roots to isolate");

    if (n == 1) {
        Rat root = -Rat(p[0]) / Rat(p[1]);
        return {ComplexBall(RealBall::from_rat(root, prec), RealBall(prec))};
    }

    ZPoly dp = p.derivative();
    double bound = root_bound(p).get_d();
    if (!std::isfinite(bound) || bound > 1e280) bound = 1e280;

    auto real_intervals = isolate_real_roots(p);

    for (mpfr_prec_t wp = std::max<mpfr_prec_t>(prec, 64); wp <= kPrecCap; wp *= 2) {
        std::vector<ComplexBall> zs;
        zs.reserve(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            double ang = 2.0 * M_PI * (static_cast<double>(k) / n) + 0.7 / n + 0.3;
            double r = 0.5 * bound * (1.0 + 0.2 * std::cos(3.0 * ang)) + 0.5;
            zs.push_back(ComplexBall(RealBall::from_double(r * std::cos(ang), wp),
                                     RealBall::from_double(r * std::sin(ang), wp)));
        }
        dk_iterate(p, zs, 48 + 2 * n + static_cast<int>(wp) / 4);

        std::vector<Certified> cert;
        if (!certify_all(p, dp, zs, &cert)) continue;

        // exact real-root bookkeeping via Sturm
        std::vector<ComplexBall> reals, complexes;
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        bool ok = true;
        for (auto& iv : real_intervals) {
            int found = -1;
            for (int i = 0; i < n; ++i) {
                const auto& c = cert[static_cast<std::size_t>(i)];
                RealBall imabs = abs(c.center.im());
                auto cim = imabs.cmp(c.radius);
                if (cim && *cim > 0) continue; // certified off the real axis
                RealBall re = c.center.re();
                if (re.certainly_gt(iv.second) || re.certainly_lt(iv.first)) continue;
                if (found >= 0) {
                    found = -2;
                    break;
                }
                found = i;
            }
            if (found < 0) {
                ok = false;
                break;
            }
            used[static_cast<std::size_t>(found)] = true;
            const auto& c = cert[static_cast<std::size_t>(found)];
            reals.push_back(
                ComplexBall(c.center.re().widened(c.radius), RealBall(c.center.prec())));
        }
        if (!ok) continue;
        for (int i = 0; i < n; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            const auto& c = cert[static_cast<std::size_t>(i)];
            RealBall imabs = abs(c.center.im());
            auto cim = imabs.cmp(c.radius);
            if (!(cim && *cim > 0)) {
                ok = false; // near-axis but not matched to a real root: refine
                break;
            }
            complexes.push_back(ComplexBall(c.center.re().widened(c.radius),
                                            c.center.im().widened(c.radius)));
        }
        if (!ok) continue;
        std::sort(complexes.begin(), complexes.end(),
                  [](const ComplexBall& a, const ComplexBall& b) {
                      double ra = a.re().mid_d(), rb = b.re().mid_d();
                      if (ra != rb) return ra < rb;
                      return a.im().mid_d() < b.im().mid_d();
                  });
        std::vector<ComplexBall> out = std::move(reals);
        out.insert(out.end(), complexes.begin(), complexes.end());
        return out;
    }
    fail("PrecisionExhausted", "root isolation hit the precision cap for " + p.to_string());
}

ComplexBall refine_root(const ZPoly& p0, const ComplexBall& ball, mpfr_prec_t prec) {
    ZPoly p = p0.primitive();
    int n = p.deg();
    if (n == 1) {
        Rat root = -Rat(p[0]) / Rat(p[1]);
        return ComplexBall(RealBall::from_rat(root, prec), RealBall(prec));
    }
    ZPoly dp = p.derivative();
    bool real_root = ball.im().is_exact_zero();

    for (mpfr_prec_t wp = std::max<mpfr_prec_t>(prec + 32, ball.prec()); wp <= kPrecCap;
         wp *= 2) {
        ComplexBall zc = ball.mid_point().at_prec(wp);
        if (real_root) zc = ComplexBall(zc.re(), RealBall(wp));
        for (int it = 0; it < 64; ++it) {
            ComplexBall num = p.eval(zc);
            ComplexBall den = dp.eval(zc);
            if (!den.abs_sq().certainly_positive()) break;
            ComplexBall delta = approx_div(num, den);
            ComplexBall next = (zc - delta).mid_point();
            if (real_root) next = ComplexBall(next.re(), RealBall(wp));
            zc = next;
            double step = delta.abs().ub_d();
            double scale = std::max(1.0, std::fabs(zc.abs().mid_d()));
            if (step == 0.0 || step <= scale * std::ldexp(1.0, -static_cast<int>(wp))) break;
        }
        RealBall pv = p.eval(zc).abs();
        RealBall dv = dp.eval(zc).abs();
        if (!dv.certainly_positive()) continue;
        RealBall rad = mul_si(pv / dv, n).ub_ball();

        // containment in the original ball keeps us on the same root
        RealBall dre = abs(zc.re() - ball.re().mid_point()).widened(rad);
        auto c1 = dre.cmp(ball.re().rad_ball());
        bool inside = c1 && *c1 <= 0;
        if (!real_root) {
            RealBall dim = abs(zc.im() - ball.im().mid_point()).widened(rad);
            auto c2 = dim.cmp(ball.im().rad_ball());
            inside = inside && c2 && *c2 <= 0;
        }

        RealBall scale = max(zc.abs().ub_ball(), RealBall::from_si(1, wp));
        RealBall target = scale * pow_si(RealBall::from_si(2, wp), -static_cast<long>(prec));
        auto small = rad.cmp(target);
        if (inside && small && *small <= 0) {
            if (real_root) return ComplexBall(zc.re().widened(rad), RealBall(wp));
            return ComplexBall(zc.re().widened(rad), zc.im().widened(rad));
        }
    }
    fail("PrecisionExhausted", "root refinement hit the precision cap");
}

} // namespace ssm
