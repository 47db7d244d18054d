#include "ssm/uniqueness.hpp"

#include "ssm/error.hpp"
#include "ssm/rng.hpp"
#include "ssm/roots.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <set>

namespace ssm {

std::string to_string(VerdictTag tag) {
    switch (tag) {
        case VerdictTag::Uniqueness: return "Uniqueness";
        case VerdictTag::Multiplicity: return "Multiplicity";
        case VerdictTag::Unknown: return "Unknown";
    }
    return "?";
}

std::string to_string(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::MultiplicativeIndependence: return "MultiplicativeIndependence";
        case CertificateKind::NotPisot: return "NotPisot";
        case CertificateKind::TranslationNotInField: return "TranslationNotInField";
        case CertificateKind::PositiveMeasureInterval: return "PositiveMeasureInterval";
        case CertificateKind::DimensionBelowOnePisotRational:
            return "DimensionBelowOne+PisotRational";
        case CertificateKind::BoundLimited: return "BoundLimited";
    }
    return "?";
}

namespace {

// does the union of the map images tile the hull exactly?
bool tiles_hull(const Ifs& ifs) {
    Hull h = attractor_hull(ifs);
    struct Img {
        FieldElement lo, hi;
    };
    std::vector<Img> imgs;
    for (int i = 0; i < ifs.k(); ++i) {
        FieldElement ri = ifs.ratio(i);
        const FieldElement& ai = ifs.trans[static_cast<std::size_t>(i)];
        imgs.push_back({ri * h.lo + ai, ri * h.hi + ai});
    }
    std::sort(imgs.begin(), imgs.end(),
              [](const Img& a, const Img& b) { return (a.lo - b.lo).sign() < 0; });
    if (!(imgs.front().lo == h.lo)) return false;
    FieldElement cover = imgs.front().hi;
    for (std::size_t i = 1; i < imgs.size(); ++i) {
        if ((imgs[i].lo - cover).sign() > 0) return false; // gap
        if ((imgs[i].hi - cover).sign() > 0) cover = imgs[i].hi;
    }
    return cover == h.hi;
}

// -1: sum r^{l_i} < 1 (zero measure), 0: == 1, +1: > 1
int ratio_sum_sign(const Ifs& ifs, Rat* lb, Rat* ub) {
    FieldElement sum = ifs.field->zero();
    for (int i = 0; i < ifs.k(); ++i) sum = sum + ifs.ratio(i);
    if (lb && ub) {
        RealBall s = sum.embed_real(96);
        *lb = parse_rational(s.lb_ball().to_string(25));
        *ub = parse_rational(s.ub_ball().to_string(25));
    }
    return (sum - ifs.field->one()).sign();
}

// measure-status resolution for the multiplicity caveat of the design
void resolve_measure_and_fill(const Ifs& ifs, CertificateKind failed_kind, Verdict* v) {
    int s = ratio_sum_sign(ifs, nullptr, nullptr);
    if (s < 0) {
        v->tag = VerdictTag::Multiplicity;
        v->certificate = failed_kind;
        v->note += " zero Lebesgue measure: sum r^{l_i} < 1.";
        return;
    }
    if (tiles_hull(ifs)) {
        v->tag = VerdictTag::Multiplicity;
        v->certificate = CertificateKind::PositiveMeasureInterval;
        v->note += " the maps tile the hull: the attractor is an interval.";
        return;
    }
    v->tag = VerdictTag::Unknown;
    v->certificate = CertificateKind::BoundLimited;
    v->note += " Lebesgue-measure status unresolved (sum r^{l_i} >= 1, no exact tiling).";
}

FieldPtr lambda_field_of(const Ifs& ifs) {
    FieldElement lambda = ifs.r.inverse();
    ZPoly mp = lambda.min_poly();
    auto iv = lambda.isolating_interval();
    return NumberField::make(mp, RootSelector::interval(iv.first, iv.second));
}

} // namespace

Verdict classify_uniqueness(const std::variant<Ifs, MultIndepWitness>& built) {
    if (const auto* w = std::get_if<MultIndepWitness>(&built)) {
        Verdict v;
        v.indep = *w;
        if (w->bound_limited) {
            v.tag = VerdictTag::Unknown;
            v.certificate = CertificateKind::BoundLimited;
            v.note = "common-base search exhausted the exponent bound " +
                     std::to_string(w->searched_bound) + "; independence unproven.";
        } else {
            v.tag = VerdictTag::Multiplicity;
            v.certificate = CertificateKind::MultiplicativeIndependence;
            v.note = "ratios " + std::to_string(w->i) + "," + std::to_string(w->j) +
                     " are multiplicatively independent; every self-similar measure is "
                     "Rajchman, so the attractor supports one.";
        }
        return v;
    }
    return classify_uniqueness(std::get<Ifs>(built));
}

Verdict classify_uniqueness(const Ifs& ifs) {
    Verdict v;

    // non-singleton check: some fixed point differs from the first
    {
        FieldElement one = ifs.field->one();
        FieldElement fix1 = ifs.trans[0] / (one - ifs.ratio(0));
        bool nonsingleton = false;
        for (int i = 1; i < ifs.k() && !nonsingleton; ++i) {
            FieldElement fx = ifs.trans[static_cast<std::size_t>(i)] / (one - ifs.ratio(i));
            if (!(fx == fix1)) nonsingleton = true;
        }
        if (!nonsingleton) fail("SingletonAttractor", "the attractor is a single point");
    }

    // (2) classify lambda = r^-1
    FieldPtr lf = lambda_field_of(ifs);
    v.lambda_field = lf;
    PisotSalemClass cls = classify_lambda(lf);
    v.pisot = cls;
    if (cls.tag != PisotSalemTag::Pisot) {
        v.note = "r^-1 is " + to_string(cls.tag) + ", not Pisot.";
        resolve_measure_and_fill(ifs, CertificateKind::NotPisot, &v);
        return v;
    }

    // (3) normalize and test the rescaled translations against Q(r)
    Ifs norm = normalize(ifs);
    int j0 = -1;
    for (int j = 0; j < norm.k(); ++j) {
        if (!norm.trans[static_cast<std::size_t>(j)].is_zero()) {
            j0 = j;
            break;
        }
    }
    assert(j0 >= 0); // non-singleton guarantees a nonzero translation
    Ifs scaled = conjugate(norm, norm.trans[static_cast<std::size_t>(j0)], ifs.field->zero());

    std::vector<FieldElement> coords;
    for (int j = 0; j < scaled.k(); ++j) {
        const FieldElement& aj = scaled.trans[static_cast<std::size_t>(j)];
        if (aj.is_zero()) {
            coords.push_back(lf->zero());
            continue;
        }
        if (aj.is_rational()) {
            coords.push_back(lf->from_rational(aj.rational()));
            continue;
        }
        ZPoly mp = aj.min_poly();
        auto iv = aj.isolating_interval();
        auto member = contains(lf, mp, iv.first, iv.second);
        if (!member) {
            v.failing_index = j + 1;
            v.note = "translation " + std::to_string(j + 1) +
                     " (rescaled) does not lie in Q(r).";
            resolve_measure_and_fill(ifs, CertificateKind::TranslationNotInField, &v);
            return v;
        }
        coords.push_back(*member);
    }
    v.subfield_coords = std::move(coords);

    // (4) zero-measure test
    Rat lb, ub;
    int s = ratio_sum_sign(ifs, &lb, &ub);
    v.ratio_sum_lb = lb;
    v.ratio_sum_ub = ub;
    if (s < 0) {
        v.tag = VerdictTag::Uniqueness;
        v.certificate = CertificateKind::DimensionBelowOnePisotRational;
        v.note = "r^-1 Pisot, rescaled translations in Q(r), sum r^{l_i} < 1.";
        return v;
    }
    if (tiles_hull(ifs)) {
        v.tag = VerdictTag::Multiplicity;
        v.certificate = CertificateKind::PositiveMeasureInterval;
        v.note = "the maps tile the hull: the attractor is an interval.";
        return v;
    }
    v.tag = VerdictTag::Unknown;
    v.certificate = CertificateKind::BoundLimited;
    v.note = "sum r^{l_i} >= 1 with overlaps: zero-measure status undecidable here.";
    return v;
}

// ----- gamma search -----

namespace {

// double-precision LLL (delta = 0.99) tracking the unimodular transform
void lll_reduce(std::vector<std::vector<double>>& B, std::vector<std::vector<long>>& U) {
    const std::size_t n = B.size();
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    std::vector<std::vector<double>> Bs = B;
    std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
    std::vector<double> norms(n, 0.0);
    auto gso = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            Bs[i] = B[i];
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = norms[j] > 0 ? dot(B[i], Bs[j]) / norms[j] : 0.0;
                for (std::size_t t = 0; t < Bs[i].size(); ++t) Bs[i][t] -= mu[i][j] * Bs[j][t];
            }
            norms[i] = dot(Bs[i], Bs[i]);
        }
    };
    gso();
    std::size_t k = 1;
    int guard = 0;
    while (k < n && ++guard < 10000) {
        for (std::size_t j = k; j-- > 0;) {
            double q = std::round(mu[k][j]);
            if (q != 0.0) {
                long ql = static_cast<long>(q);
                for (std::size_t t = 0; t < B[k].size(); ++t) B[k][t] -= q * B[j][t];
                for (std::size_t t = 0; t < n; ++t) U[k][t] -= ql * U[j][t];
                gso();
            }
        }
        if (norms[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
            ++k;
        } else {
            std::swap(B[k], B[k - 1]);
            std::swap(U[k], U[k - 1]);
            gso();
            k = (k > 1) ? k - 1 : 1;
        }
    }
}

// Fincke-Pohst: integer combinations of the rows of B with |x B| <= radius
bool enumerate_short(const std::vector<std::vector<double>>& B, double radius, long node_cap,
                     const std::function<bool(const std::vector<long>&)>& visit) {
    const std::size_t n = B.size();
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    std::vector<std::vector<double>> Bs = B;
    std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
    std::vector<double> norms(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        Bs[i] = B[i];
        for (std::size_t j = 0; j < i; ++j) {
            mu[i][j] = norms[j] > 0 ? dot(B[i], Bs[j]) / norms[j] : 0.0;
            for (std::size_t t = 0; t < Bs[i].size(); ++t) Bs[i][t] -= mu[i][j] * Bs[j][t];
        }
        norms[i] = dot(Bs[i], Bs[i]);
        if (norms[i] <= 0) return false; // degenerate basis
    }
    std::vector<long> x(n, 0);
    std::vector<double> center(n, 0.0), partial(n + 1, 0.0);
    long nodes = 0;
    double r2 = radius * radius;

    std::function<bool(std::size_t)> down = [&](std::size_t level) -> bool {
        if (++nodes > node_cap) return false;
        if (level == static_cast<std::size_t>(-1)) return true; // full vector handled by caller
        return true;
    };
    (void)down;

    // iterative depth-first search from the last coordinate
    std::function<bool(int)> rec = [&](int i) -> bool {
        if (++nodes > node_cap) return false;
        if (i < 0) {
            bool all_zero = std::all_of(x.begin(), x.end(), [](long v) { return v == 0; });
            if (all_zero) return true;
            return visit(x) ? false : true; // visit returns true to stop
        }
        double c = 0;
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j)
            c += mu[j][static_cast<std::size_t>(i)] * static_cast<double>(x[j]);
        double remaining = r2 - partial[static_cast<std::size_t>(i) + 1];
        if (remaining < 0) return true;
        double half_width = std::sqrt(remaining / norms[static_cast<std::size_t>(i)]);
        long lo = static_cast<long>(std::ceil(-c - half_width - 1e-9));
        long hi = static_cast<long>(std::floor(-c + half_width + 1e-9));
        for (long xi = lo; xi <= hi; ++xi) {
            x[static_cast<std::size_t>(i)] = xi;
            double term = (static_cast<double>(xi) + c);
            partial[static_cast<std::size_t>(i)] =
                partial[static_cast<std::size_t>(i) + 1] +
                term * term * norms[static_cast<std::size_t>(i)];
            if (partial[static_cast<std::size_t>(i)] <= r2 * (1 + 1e-9)) {
                if (!rec(i - 1)) return false;
            }
        }
        x[static_cast<std::size_t>(i)] = 0;
        return true;
    };
    rec(static_cast<int>(n) - 1);
    return true;
}

} // namespace

GammaWitness gamma_search(const FieldPtr& field, double R, double C_in) {
    if (R < 1) fail("InvalidArgument", "R must be >= 1");
    PisotSalemClass cls = classify_lambda(field);
    if (cls.tag != PisotSalemTag::Pisot)
        fail("NotPisot", "gamma_search requires a Pisot generator");
    const int d = field->degree();

    // realified embedding matrix of the power basis (for the covolume and the
    // enumeration); heuristic double precision, all claims re-verified with balls
    const int d1 = field->num_real_embeddings();
    const int d2 = (d - d1) / 2;
    std::vector<std::vector<double>> E(static_cast<std::size_t>(d),
                                       std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int i = 0; i < d; ++i) {
        int col = 0;
        for (int k = 1; k <= d1 + d2; ++k) {
            ComplexBall z = field->embedding_refined(k, 64);
            // sigma_k(lambda^i)
            double re = z.re().mid_d(), im = z.im().mid_d();
            double pr = 1, pi = 0;
            for (int t = 0; t < i; ++t) {
                double nr = pr * re - pi * im;
                pi = pr * im + pi * re;
                pr = nr;
            }
            if (k <= d1) {
                E[static_cast<std::size_t>(i)][static_cast<std::size_t>(col++)] = pr;
            } else {
                E[static_cast<std::size_t>(i)][static_cast<std::size_t>(col++)] = pr;
                E[static_cast<std::size_t>(i)][static_cast<std::size_t>(col++)] = pi;
            }
        }
    }

    double C = C_in;
    if (C <= 0) {
        // covolume via LU determinant
        auto A = E;
        double det = 1;
        for (int i = 0; i < d; ++i) {
            int piv = i;
            for (int r2 = i + 1; r2 < d; ++r2)
                if (std::fabs(A[static_cast<std::size_t>(r2)][static_cast<std::size_t>(i)]) >
                    std::fabs(A[static_cast<std::size_t>(piv)][static_cast<std::size_t>(i)]))
                    piv = r2;
            if (piv != i) {
                std::swap(A[static_cast<std::size_t>(piv)], A[static_cast<std::size_t>(i)]);
                det = -det;
            }
            det *= A[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
            if (det == 0) break;
            for (int r2 = i + 1; r2 < d; ++r2) {
                double m = A[static_cast<std::size_t>(r2)][static_cast<std::size_t>(i)] /
                           A[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
                for (int c2 = i; c2 < d; ++c2)
                    A[static_cast<std::size_t>(r2)][static_cast<std::size_t>(c2)] -=
                        m * A[static_cast<std::size_t>(i)][static_cast<std::size_t>(c2)];
            }
        }
        double covol = std::fabs(det);
        double unit_box = std::pow(2.0, d1) * std::pow(M_PI, d2);
        C = 1.05 * std::pow(std::pow(2.0, d) * covol / unit_box, 1.0 / d);
        C = std::max(C, 1.05);
    }

    auto certify = [&](const FieldElement& gamma, int power) -> std::optional<GammaWitness> {
        if (gamma.is_zero()) return std::nullopt;
        mpfr_prec_t p = 96;
        RealBall absg = abs(gamma.embed_real(p));
        RealBall bound1 = RealBall::from_double(C, p) *
                          pow_si(RealBall::from_double(R, p), static_cast<long>(d - 1));
        auto c1 = absg.cmp(bound1);
        if (!(c1 && *c1 <= 0)) return std::nullopt;
        RealBall maxc(p);
        for (int k = 2; k <= d; ++k) {
            RealBall m = gamma.embed(k, p).abs();
            maxc = max(maxc, m);
        }
        RealBall bound2 = RealBall::from_double(C, p) / RealBall::from_double(R, p);
        if (d > 1) {
            auto c2 = maxc.cmp(bound2);
            if (!(c2 && *c2 <= 0)) return std::nullopt;
        }
        GammaWitness w;
        w.gamma = gamma;
        w.R = R;
        w.C_used = C;
        w.abs_gamma = absg;
        w.max_conj_abs = maxc;
        w.power = power;
        return w;
    };

    // Pisot fast path: gamma = lambda^m
    {
        int m = 0;
        if (d > 1) {
            double smax = 0;
            for (int k = 2; k <= d; ++k)
                smax = std::max(smax, field->embedding_refined(k, 64).abs().ub_d());
            m = static_cast<int>(std::ceil(std::log(R) / std::log(1.0 / smax)));
            m = std::max(m, 0);
        }
        FieldElement gamma = field->generator().pow(m);
        if (auto w = certify(gamma, m)) return *w;
        if (auto w = certify(field->generator().pow(m + 1), m + 1)) return *w;
    }

    // enumeration in the scaled lattice
    {
        std::vector<std::vector<double>> B = E;
        for (int i = 0; i < d; ++i) {
            int col = 0;
            for (int k = 1; k <= d1 + d2; ++k) {
                double scale =
                    (k == 1) ? 1.0 / (C * std::pow(R, d - 1)) : std::sqrt(2.0) * R / C;
                if (k <= d1) {
                    B[static_cast<std::size_t>(i)][static_cast<std::size_t>(col++)] *= scale;
                } else {
                    B[static_cast<std::size_t>(i)][static_cast<std::size_t>(col++)] *= scale;
                    B[static_cast<std::size_t>(i)][static_cast<std::size_t>(col++)] *= scale;
                }
            }
        }
        std::vector<std::vector<long>> U(static_cast<std::size_t>(d),
                                         std::vector<long>(static_cast<std::size_t>(d), 0));
        for (int i = 0; i < d; ++i) U[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        lll_reduce(B, U);

        std::optional<GammaWitness> found;
        enumerate_short(B, std::sqrt(static_cast<double>(d)) * 1.5, 10000000,
                        [&](const std::vector<long>& x) {
                            std::vector<Rat> coords(static_cast<std::size_t>(d), Rat(0));
                            for (int i = 0; i < d; ++i) {
                                long c = 0;
                                for (int j = 0; j < d; ++j)
                                    c += x[static_cast<std::size_t>(j)] *
                                         U[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
                                coords[static_cast<std::size_t>(i)] = Rat(c);
                            }
                            auto w = certify(field->element(std::move(coords)), -1);
                            if (w) {
                                found = *w;
                                return true;
                            }
                            return false;
                        });
        if (found) return *found;
    }
    fail("SearchExhausted", "no gamma in the Minkowski box for C = " + std::to_string(C) +
                                "; raise C and retry");
}

// ----- S1/S2 decomposition and torus embedding -----

SDecomposition s_decompose(const Ifs& ifs, const std::vector<int>& prefix, int N,
                           mpfr_prec_t prec) {
    if (N < 0) fail("InvalidArgument", "N must be >= 0");
    SDecomposition out;
    out.s1 = ifs.field->zero();
    out.s2_prefix = ifs.field->zero();

    int L = 0;
    for (int idx : prefix) {
        if (idx < 0 || idx >= ifs.k()) fail("InvalidArgument", "prefix index out of range");
        const FieldElement& a = ifs.trans[static_cast<std::size_t>(idx)];
        int e = L - N;
        if (e < 0)
            out.s1 = out.s1 + a * ifs.r.pow(e);
        else
            out.s2_prefix = out.s2_prefix + a * ifs.r.pow(e);
        L += ifs.exps[static_cast<std::size_t>(idx)];
    }
    if (L < N) fail("PrefixTooShort", "prefix exponent sum " + std::to_string(L) +
                                          " does not reach N = " + std::to_string(N));
    out.tail_exp = L - N;

    Hull h = attractor_hull(ifs);
    RealBall rl = pow_si(ifs.r.embed_real(prec), out.tail_exp);
    RealBall tail_lo = rl * h.lo.embed_real(prec);
    RealBall tail_hi = rl * h.hi.embed_real(prec);
    out.s1_ball = out.s1.embed_real(prec);
    out.s2_ball = out.s2_prefix.embed_real(prec) +
                  RealBall::from_endpoints(tail_lo, tail_hi);
    return out;
}

namespace {

RealBall mod1_floor(const RealBall& x) {
    // value - floor(mid): lands in [0, 1) up to the ball radius
    RealBall half = RealBall::from_rat(Rat(1, 2), x.prec());
    return (x - half).mod1() + half;
}

} // namespace

std::vector<RealBall> torus_embed(const FieldPtr& field, const RealBall& x) {
    const int d = field->degree();
    std::vector<RealBall> out;
    RealBall lam = field->generator().embed_real(x.prec());
    RealBall cur = x;
    for (int i = 0; i < d; ++i) {
        out.push_back(mod1_floor(cur));
        if (i + 1 < d) cur = cur * lam;
    }
    return out;
}

ConfinementReport confinement_report(const Ifs& ifs, const FieldElement& gamma,
                                     const std::vector<int>& n_values, int grid,
                                     long samples_per_n, std::uint64_t seed) {
    if (grid < 2) fail("InvalidArgument", "grid must be >= 2");
    ConfinementReport rep;
    rep.grid = grid;
    rep.samples_per_n = samples_per_n;
    rep.n_values = n_values;
    rep.seed = seed;

    FieldPtr field = ifs.field;
    const int d = field->degree();
    const double r_d = ifs.r.embed_real(64).mid_d();
    Hull h = attractor_hull(ifs);
    const double diam = (h.hi - h.lo).embed_real(64).mid_d();
    const double gam_d = std::fabs(gamma.embed_real(64).mid_d());
    const double lam_d = 1.0 / r_d;

    for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
        int N = n_values[ni];
        // prefix depth so the tail cannot smear past a fraction of a cell
        double target = 1.0 / (8.0 * grid);
        int depth = 0;
        double contraction = std::max(1.0, gam_d) * std::pow(lam_d, N) * std::max(diam, 1.0);
        while (contraction > target && depth < 100000) {
            contraction *= r_d;
            ++depth;
        }
        std::set<std::vector<long>> cells;
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(
            128 + static_cast<long>((N + depth) * std::log2(std::max(lam_d, 2.0))) );
        for (long s = 0; s < samples_per_n; ++s) {
            SplitRng rng(seed, (static_cast<std::uint64_t>(ni) << 40) ^
                                   static_cast<std::uint64_t>(s));
            std::vector<int> prefix;
            int L = 0;
            while (L < depth) {
                int idx = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(ifs.k())));
                prefix.push_back(idx);
                L += ifs.exps[static_cast<std::size_t>(idx)];
            }
            auto [S, Lsum] = prefix_sum(ifs, prefix);
            (void)Lsum;
            // x = gamma * lambda^N * S(omega); prefix part only (tail below cell size)
            FieldElement lamN = ifs.r.pow(-N);
            RealBall x = (gamma * lamN * S).embed_real(prec);
            auto hcoords = torus_embed(field, x);
            std::vector<long> cell(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) {
                double c = hcoords[static_cast<std::size_t>(i)].mid_d();
                long idx = static_cast<long>(std::floor(c * grid));
                idx = std::max(0L, std::min<long>(grid - 1, idx));
                cell[static_cast<std::size_t>(i)] = idx;
            }
            cells.insert(cell);
        }
        double total = std::pow(static_cast<double>(grid), d);
        rep.fractions.push_back(static_cast<double>(cells.size()) / total);
    }
    return rep;
}

} // namespace ssm
