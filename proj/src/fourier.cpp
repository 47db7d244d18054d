#include "ssm/fourier.hpp"

#include "ssm/error.hpp"
#include "ssm/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>

#ifdef SSM_HAVE_OPENMP
#include <omp.h>
#endif

namespace ssm {

namespace {

mpfr_prec_t working_prec(const RealBall& omega, mpfr_prec_t prec) {
    long mag = 0;
    if (!mpfr_zero_p(omega.mid())) mag = std::max(0L, static_cast<long>(mpfr_get_exp(omega.mid())));
    return prec + 32 + static_cast<mpfr_prec_t>(mag);
}

// scale-ladder depth: smallest M with |r^M omega| * diam <= delta
int ladder_depth(const RealBall& r, const RealBall& omega, const RealBall& diam,
                 const Rat& delta) {
    RealBall x = abs(omega) * diam;
    int M = 0;
    while (!x.ub_ball().certainly_lt(delta) && M < 4000000) {
        x = x * r;
        ++M;
    }
    if (M >= 4000000) fail("PrecisionExhausted", "scale ladder did not contract");
    return M;
}

ComplexBall base_case(const RealBall& scaled_omega, const RealBall& mean,
                      const RealBall& var_ub) {
    // e(omega' * mean) with radius (2 pi omega')^2 * var / 2
    mpfr_prec_t p = scaled_omega.prec();
    ComplexBall center = ComplexBall::e_of(scaled_omega * mean);
    RealBall twopi = mul_si(RealBall::pi(p), 2);
    RealBall err = twopi * abs(scaled_omega);
    err = err * err * var_ub;
    err = err * RealBall::from_rat(Rat(1, 2), p);
    RealBall e = err.ub_ball();
    return ComplexBall(center.re().widened(e), center.im().widened(e));
}

} // namespace

ComplexBall phase_sum(const Ifs& ifs, const RealBall& omega) {
    mpfr_prec_t wp = working_prec(omega, omega.prec());
    ComplexBall acc(wp);
    for (int i = 0; i < ifs.k(); ++i) {
        RealBall ai = ifs.trans[static_cast<std::size_t>(i)].embed_real(wp);
        RealBall pi = RealBall::from_rat(ifs.probs[static_cast<std::size_t>(i)], wp);
        acc = acc + pi * ComplexBall::e_of(ai * omega);
    }
    return acc;
}

ComplexBall mu_hat(const Ifs& ifs, const Rat& omega, const Rat& delta, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    RealBall w = RealBall::from_rat(omega, wp);
    return mu_hat(ifs, w, delta, prec);
}

ComplexBall mu_hat(const Ifs& ifs, const RealBall& omega, const Rat& delta, mpfr_prec_t prec) {
    if (!(delta > 0) || delta > Rat(1, 4)) fail("InvalidArgument", "delta must be in (0, 1/4]");
    mpfr_prec_t wp = working_prec(omega, prec);
    RealBall w = omega.at_prec(wp);

    Moments mom = moments(ifs);
    Hull hull = attractor_hull(ifs);
    RealBall mean = mom.mean.embed_real(wp);
    RealBall var = mom.variance.embed_real(wp).ub_ball();
    RealBall diam = (hull.hi - hull.lo).embed_real(wp).ub_ball();
    RealBall r = ifs.r.embed_real(wp);

    const int M = ladder_depth(r, w, diam, delta);
    const int lmax = ifs.max_exp();

    // r^m * omega for m in [0, M + lmax)
    std::vector<RealBall> ladder;
    ladder.reserve(static_cast<std::size_t>(M + lmax));
    ladder.push_back(w);
    for (int m = 1; m < M + lmax; ++m) ladder.push_back(ladder.back() * r);

    std::vector<RealBall> a_emb;
    for (int i = 0; i < ifs.k(); ++i)
        a_emb.push_back(ifs.trans[static_cast<std::size_t>(i)].embed_real(wp));
    std::vector<RealBall> p_emb;
    for (int i = 0; i < ifs.k(); ++i)
        p_emb.push_back(RealBall::from_rat(ifs.probs[static_cast<std::size_t>(i)], wp));

    std::vector<ComplexBall> F(static_cast<std::size_t>(M + lmax), ComplexBall(wp));
    for (int m = M; m < M + lmax; ++m)
        F[static_cast<std::size_t>(m)] = base_case(ladder[static_cast<std::size_t>(m)], mean, var);
    for (int m = M - 1; m >= 0; --m) {
        ComplexBall acc(wp);
        for (int i = 0; i < ifs.k(); ++i) {
            ComplexBall phase = ComplexBall::e_of(a_emb[static_cast<std::size_t>(i)] *
                                                  ladder[static_cast<std::size_t>(m)]);
            acc = acc + p_emb[static_cast<std::size_t>(i)] *
                            (phase * F[static_cast<std::size_t>(m + ifs.exps[static_cast<std::size_t>(i)])]);
        }
        F[static_cast<std::size_t>(m)] = acc;
    }
    return F[0];
}

ComplexBall mu_hat_product(const Ifs& ifs, const RealBall& omega, const Rat& delta,
                           mpfr_prec_t prec) {
    if (!ifs.is_homogeneous())
        fail("UnequalExponents", "the product oracle needs a homogeneous system");
    mpfr_prec_t wp = working_prec(omega, prec);
    RealBall w = omega.at_prec(wp);

    Moments mom = moments(ifs);
    Hull hull = attractor_hull(ifs);
    RealBall mean = mom.mean.embed_real(wp);
    RealBall var = mom.variance.embed_real(wp).ub_ball();
    RealBall diam = (hull.hi - hull.lo).embed_real(wp).ub_ball();
    RealBall rl = ifs.ratio(0).embed_real(wp); // common contraction r^{l}

    int N = ladder_depth(rl, w, diam, delta);
    ComplexBall acc = ComplexBall::one(wp);
    RealBall x = w;
    for (int n = 0; n < N; ++n) {
        acc *= phase_sum(ifs, x);
        x = x * rl;
    }
    acc *= base_case(x, mean, var);
    return acc;
}

double McEstimate::abs() const {
    return std::hypot(re, im);
}

McEstimate mu_hat_mc(const Ifs& ifs, double omega, long n_samples, std::uint64_t seed) {
    if (n_samples < 1) fail("InvalidArgument", "n_samples must be >= 1");
    const int k = ifs.k();
    std::vector<double> cum(static_cast<std::size_t>(k));
    {
        double acc = 0;
        for (int i = 0; i < k; ++i) {
            acc += ifs.probs[static_cast<std::size_t>(i)].get_d();
            cum[static_cast<std::size_t>(i)] = acc;
        }
        cum[static_cast<std::size_t>(k - 1)] = 1.0;
    }
    std::vector<double> a(static_cast<std::size_t>(k)), rl(static_cast<std::size_t>(k));
    double rr = ifs.r.embed_real(64).mid_d();
    for (int i = 0; i < k; ++i) {
        a[static_cast<std::size_t>(i)] =
            ifs.trans[static_cast<std::size_t>(i)].embed_real(64).mid_d();
        rl[static_cast<std::size_t>(i)] = std::pow(rr, ifs.exps[static_cast<std::size_t>(i)]);
    }
    Hull h = attractor_hull(ifs);
    double diam = (h.hi - h.lo).embed_real(64).mid_d();
    // truncation keeps the phase bias far below the Monte-Carlo noise
    double cutoff = std::ldexp(1.0, -45) / (1.0 + std::fabs(omega)) / std::max(1.0, diam);

    const long block_size = 4096;
    const long blocks = (n_samples + block_size - 1) / block_size;
    std::vector<double> bre(static_cast<std::size_t>(blocks), 0.0);
    std::vector<double> bim(static_cast<std::size_t>(blocks), 0.0);
    std::vector<double> bre2(static_cast<std::size_t>(blocks), 0.0);
    std::vector<double> bim2(static_cast<std::size_t>(blocks), 0.0);

#ifdef SSM_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long blk = 0; blk < blocks; ++blk) {
        double sre = 0, sim = 0, sre2 = 0, sim2 = 0;
        const long lo = blk * block_size;
        const long hi = std::min(n_samples, lo + block_size);
        for (long t = lo; t < hi; ++t) {
            SplitRng rng(seed, static_cast<std::uint64_t>(t));
            double S = 0, contraction = 1;
            while (contraction > cutoff) {
                double u = rng.next_double();
                int idx = 0;
                while (idx < k - 1 && u > cum[static_cast<std::size_t>(idx)]) ++idx;
                S += a[static_cast<std::size_t>(idx)] * contraction;
                contraction *= rl[static_cast<std::size_t>(idx)];
            }
            double phase = 2.0 * M_PI * omega * S;
            double c = std::cos(phase), s = std::sin(phase);
            sre += c;
            sim += s;
            sre2 += c * c;
            sim2 += s * s;
        }
        bre[static_cast<std::size_t>(blk)] = sre;
        bim[static_cast<std::size_t>(blk)] = sim;
        bre2[static_cast<std::size_t>(blk)] = sre2;
        bim2[static_cast<std::size_t>(blk)] = sim2;
    }

    double sre = 0, sim = 0, sre2 = 0, sim2 = 0;
    for (long blk = 0; blk < blocks; ++blk) {
        sre += bre[static_cast<std::size_t>(blk)];
        sim += bim[static_cast<std::size_t>(blk)];
        sre2 += bre2[static_cast<std::size_t>(blk)];
        sim2 += bim2[static_cast<std::size_t>(blk)];
    }
    McEstimate est;
    est.seed = seed;
    est.n_samples = n_samples;
    const double n = static_cast<double>(n_samples);
    est.re = sre / n;
    est.im = sim / n;
    double var_re = std::max(0.0, sre2 / n - est.re * est.re);
    double var_im = std::max(0.0, sim2 / n - est.im * est.im);
    est.stderr_re = std::sqrt(var_re / n);
    est.stderr_im = std::sqrt(var_im / n);
    return est;
}

RealBall u_factor(const Ifs& ifs, int i1, int i2, const RealBall& omega) {
    if (i1 < 1 || i2 < 1 || i1 > ifs.k() || i2 > ifs.k() || i1 == i2)
        fail("InvalidArgument", "bad pair indices");
    if (ifs.exps[static_cast<std::size_t>(i1 - 1)] != ifs.exps[static_cast<std::size_t>(i2 - 1)])
        fail("UnequalExponents", "u_factor requires equal exponents in the pair");
    mpfr_prec_t wp = working_prec(omega, omega.prec());
    RealBall a1 = ifs.trans[static_cast<std::size_t>(i1 - 1)].embed_real(wp);
    RealBall a2 = ifs.trans[static_cast<std::size_t>(i2 - 1)].embed_real(wp);
    RealBall p1 = RealBall::from_rat(ifs.probs[static_cast<std::size_t>(i1 - 1)], wp);
    RealBall p2 = RealBall::from_rat(ifs.probs[static_cast<std::size_t>(i2 - 1)], wp);
    ComplexBall z = p1 * ComplexBall::e_of(a1 * omega) + p2 * ComplexBall::e_of(a2 * omega);
    RealBall u = RealBall::from_si(1, wp) - z.abs() / (p1 + p2);
    // clip to [0, 1]
    RealBall lo = max(u.lb_ball(), RealBall(wp));
    RealBall hi_raw = u.ub_ball();
    RealBall one = RealBall::from_si(1, wp);
    RealBall hi = hi_raw.certainly_gt(Rat(1)) ? one : hi_raw;
    return RealBall::from_endpoints(lo, hi);
}

RealBall decay_sum(const RealBall& a_diff, const RealBall& r, const RealBall& omega, double C,
                   double tol) {
    if (tol <= 0) fail("InvalidArgument", "tol must be positive");
    mpfr_prec_t wp = working_prec(omega, std::max(omega.prec(), a_diff.prec()));
    long j0 = static_cast<long>(std::floor(C)) + 1;
    if (j0 < 1 && C >= 0) j0 = 1;

    RealBall x = abs(a_diff.at_prec(wp)) * abs(omega.at_prec(wp)) * pow_si(r.at_prec(wp), j0);
    RealBall acc(wp);
    RealBall one_minus_r2 = RealBall::from_si(1, wp) - r * r;
    for (long j = j0; j < j0 + 8000000; ++j) {
        if (x.ub_ball().certainly_lt(Rat(1, 2))) {
            RealBall tail = x * x / one_minus_r2;
            if (tail.ub_d() <= tol) {
                return acc.widened(tail.ub_ball());
            }
        }
        RealBall term = x.dist_nearest_int();
        acc += term * term;
        x = x * r;
    }
    fail("PrecisionExhausted", "decay_sum did not reach its tail tolerance");
}

namespace {

RealBall clip01(const RealBall& v) {
    mpfr_prec_t p = v.prec();
    RealBall lo = max(v.lb_ball(), RealBall(p));
    RealBall hi = v.ub_ball();
    if (hi.certainly_gt(Rat(1))) hi = RealBall::from_si(1, p);
    if (lo.certainly_gt(Rat(1))) lo = RealBall::from_si(1, p);
    return RealBall::from_endpoints(lo, hi);
}

} // namespace

namespace {

DecayReport bounds_impl(const Ifs& ifs, int i1, int i2, const Rat& omega, double C,
                        const Rat& delta, mpfr_prec_t prec, bool with_mu) {
    if (C <= 0) fail("InvalidArgument", "C must be positive");
    if (i1 < 1 || i2 < 1 || i1 > ifs.k() || i2 > ifs.k() || i1 == i2)
        fail("InvalidArgument", "bad pair indices");
    const std::size_t u1 = static_cast<std::size_t>(i1 - 1), u2 = static_cast<std::size_t>(i2 - 1);
    if (ifs.exps[u1] != ifs.exps[u2])
        fail("UnequalExponents", "bounds requires equal exponents in the pair");
    if (ifs.trans[u1] == ifs.trans[u2])
        fail("IdenticalTranslations", "bounds requires distinct translations in the pair");

    DecayReport rep;
    rep.omega = omega;
    rep.C_used = C;

    mpfr_prec_t wp = prec + 32;
    RealBall w = RealBall::from_rat(omega, wp);
    wp = working_prec(w, prec);
    w = RealBall::from_rat(omega, wp);

    if (with_mu) {
        ComplexBall mu = mu_hat(ifs, w, delta, prec);
        rep.mu_re = mu.re();
        rep.mu_im = mu.im();
        rep.mu_hat_abs = mu.abs();
    }

    RealBall adiff = (ifs.trans[u1] - ifs.trans[u2]).embed_real(wp);
    RealBall r = ifs.r.embed_real(wp);

    rep.sum_S = decay_sum(adiff, r, w, C, 1e-14);
    RealBall cinv = RealBall::from_si(1, wp) / RealBall::from_double(C, wp);
    rep.bound_exp = clip01(exp(-(cinv * rep.sum_S)));

    // product bound, truncated once |adiff r^n omega| < delta; the remaining
    // factors are bounded below by exp of the quadratic tail
    {
        long n0 = static_cast<long>(std::ceil(C));
        if (static_cast<double>(n0) < C) ++n0;
        RealBall prod = RealBall::from_si(1, wp);
        RealBall x = abs(adiff) * abs(w) * pow_si(r, n0);
        RealBall scaled = w * pow_si(r, n0);
        long n = n0;
        const long max_terms = 4000000;
        while (!x.ub_ball().certainly_lt(delta) && n < n0 + max_terms) {
            RealBall u = u_factor(ifs, i1, i2, scaled);
            prod = prod * (RealBall::from_si(1, wp) - cinv * u);
            x = x * r;
            scaled = scaled * r;
            ++n;
        }
        // tail: u(theta) <= 4 pi^2 p1 p2 / (p1+p2)^2 * theta^2, geometric sum
        RealBall pi_b = RealBall::pi(wp);
        Rat p1 = ifs.probs[u1], p2 = ifs.probs[u2];
        Rat kq = 4 * p1 * p2 / ((p1 + p2) * (p1 + p2));
        RealBall K = RealBall::from_rat(kq, wp) * pi_b * pi_b;
        RealBall tail_sum = x * x / (RealBall::from_si(1, wp) - r * r);
        RealBall tail_lo = exp(-(mul_si(cinv * K * tail_sum, 2)));
        RealBall lo = prod.lb_ball() * tail_lo.lb_ball();
        RealBall hi = prod.ub_ball();
        rep.bound_prod = clip01(RealBall::from_endpoints(lo, hi));
    }
    return rep;
}

} // namespace

DecayReport bounds(const Ifs& ifs, int i1, int i2, const Rat& omega, double C, const Rat& delta,
                   mpfr_prec_t prec) {
    return bounds_impl(ifs, i1, i2, omega, C, delta, prec, true);
}

bool calibration_holds(const Ifs& ifs, int i1, int i2, const std::vector<Rat>& grid,
                       BoundKind kind, double C, const Rat& delta, mpfr_prec_t prec) {
    for (const Rat& w : grid) {
        DecayReport rep = bounds(ifs, i1, i2, w, C, delta, prec);
        const RealBall& b = (kind == BoundKind::Exp) ? rep.bound_exp : rep.bound_prod;
        auto c = rep.mu_hat_abs.ub_ball().cmp(b.lb_ball());
        if (!(c && *c <= 0)) return false;
    }
    return true;
}

Calibration calibrate(const Ifs& ifs, int i1, int i2, const std::vector<Rat>& grid,
                      BoundKind kind, const Rat& delta, mpfr_prec_t prec, double cap) {
    if (grid.empty()) fail("InvalidArgument", "calibration grid is empty");
    for (const Rat& w : grid)
        if (w == 0) fail("InvalidArgument", "calibration grid must avoid omega = 0");

    // the transform evaluations do not depend on C; cache their upper bounds
    std::vector<RealBall> mu_ub(grid.size());
#ifdef SSM_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < static_cast<long>(grid.size()); ++i)
        mu_ub[static_cast<std::size_t>(i)] =
            mu_hat(ifs, grid[static_cast<std::size_t>(i)], delta, prec).abs().ub_ball();

    auto holds = [&](double C) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            DecayReport rep = bounds_impl(ifs, i1, i2, grid[i], C, delta, prec, false);
            const RealBall& b = (kind == BoundKind::Exp) ? rep.bound_exp : rep.bound_prod;
            auto c = mu_ub[i].cmp(b.lb_ball());
            if (!(c && *c <= 0)) return false;
        }
        return true;
    };

    double hi = 1.0;
    double lo = 0.0;
    while (!holds(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > cap) {
            std::string witness;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                DecayReport rep = bounds_impl(ifs, i1, i2, grid[i], hi / 2, delta, prec, false);
                const RealBall& b = (kind == BoundKind::Exp) ? rep.bound_exp : rep.bound_prod;
                auto c = mu_ub[i].cmp(b.lb_ball());
                if (!(c && *c <= 0)) {
                    witness = rational_to_string(grid[i]);
                    break;
                }
            }
            fail("CapExceeded", "no admissible C up to cap; witness omega = " + witness);
        }
    }
    // bisect to 1% relative resolution; keep the passing endpoint
    for (int it = 0; it < 40 && (hi - lo) > 0.01 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (holds(mid))
            hi = mid;
        else
            lo = mid;
    }
    return {hi, kind, static_cast<int>(grid.size())};
}

std::vector<Rat> log_grid(double lo, double hi, int points) {
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(points));
    char buf[64];
    for (int i = 0; i < points; ++i) {
        double t = (points == 1) ? 0.0 : static_cast<double>(i) / (points - 1);
        double w = lo * std::pow(hi / lo, t);
        std::snprintf(buf, sizeof(buf), "%.14g", w);
        out.push_back(parse_rational(buf));
    }
    return out;
}

std::vector<DecayReport> fourier_scan_serial(const Ifs& ifs, int i1, int i2,
                                             const std::vector<Rat>& omegas, double C,
                                             const Rat& delta, mpfr_prec_t prec) {
    std::vector<DecayReport> out(omegas.size());
    for (std::size_t t = 0; t < omegas.size(); ++t)
        out[t] = bounds(ifs, i1, i2, omegas[t], C, delta, prec);
    return out;
}

std::vector<DecayReport> fourier_scan(const Ifs& ifs, int i1, int i2,
                                      const std::vector<Rat>& omegas, double C, const Rat& delta,
                                      mpfr_prec_t prec) {
    std::vector<DecayReport> out(omegas.size());
#ifdef SSM_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long t = 0; t < static_cast<long>(omegas.size()); ++t)
        out[static_cast<std::size_t>(t)] =
            bounds(ifs, i1, i2, omegas[static_cast<std::size_t>(t)], C, delta, prec);
    return out;
}

} // namespace ssm
