#include "ssm/ifs.hpp"

#include "ssm/error.hpp"

#include <algorithm>
#include <cmath>
#include <cassert>
#include <numeric>

namespace ssm {

int Ifs::max_exp() const {
    return *std::max_element(exps.begin(), exps.end());
}

bool Ifs::is_homogeneous() const {
    return std::all_of(exps.begin(), exps.end(), [&](int l) { return l == exps[0]; });
}

namespace {

void validate_probs(const std::vector<Rat>& probs, std::size_t k) {
    if (probs.size() != k)
        fail("InvalidProbabilityVector", "probability count does not match map count");
    Rat sum = 0;
    for (const Rat& p : probs) {
        if (!(p > 0)) fail("InvalidProbabilityVector", "probabilities must be positive");
        sum += p;
    }
    if (sum != 1) fail("InvalidProbabilityVector", "probabilities must sum to 1 exactly");
}

} // namespace

Ifs make_ifs(FieldPtr field, FieldElement r, std::vector<int> exps,
             std::vector<FieldElement> trans, std::vector<Rat> probs) {
    if (exps.size() < 2) fail("InvalidArgument", "an IFS needs at least two maps");
    if (exps.size() != trans.size())
        fail("InvalidArgument", "exponent and translation counts differ");
    validate_probs(probs, exps.size());
    for (int l : exps)
        if (l < 1) fail("InvalidArgument", "exponents must be positive");

    // rescale so gcd of exponents is 1
    int g = 0;
    for (int l : exps) g = std::gcd(g, l);
    if (g > 1) {
        r = r.pow(g);
        for (int& l : exps) l /= g;
    }

    if (!(r.sign() > 0)) fail("InvalidArgument", "contraction base must be positive");
    if (!((r.field()->one() - r).sign() > 0))
        fail("InvalidArgument", "contraction base must be less than 1");

    return Ifs{std::move(field), std::move(r), std::move(exps), std::move(trans),
               std::move(probs)};
}

namespace {

// exact multiplicative-dependence decision for rational ratios via trial
// factorization; falls back to the bounded pair search when a factor resists
bool try_factor(Rat q, std::vector<std::pair<Int, long>>* out) {
    // factors numerator and denominator with negative exponents for the latter
    auto fac = [&](Int n, int sign) -> bool {
        for (Int p = 2; p * p <= n;) {
            if (n % p == 0) {
                long e = 0;
                while (n % p == 0) {
                    n /= p;
                    ++e;
                }
                out->push_back({p, sign * e});
            }
            p += (p == 2) ? 1 : 2;
            if (p > 1000000) return false;
        }
        if (n > 1) out->push_back({n, sign * 1});
        return true;
    };
    if (!fac(q.get_num(), +1)) return false;
    return fac(q.get_den(), -1);
}

struct RationalBase {
    bool decided = false;      // exact independence/dependence decision made
    bool independent = false;
    int witness_i = 1, witness_j = 2;
    Rat base;
    std::vector<long> exps;
};

RationalBase rational_common_base(const std::vector<Rat>& ratios) {
    RationalBase out;
    std::vector<std::vector<std::pair<Int, long>>> facs(ratios.size());
    for (std::size_t i = 0; i < ratios.size(); ++i)
        if (!try_factor(ratios[i], &facs[i])) return out; // undecided

    // collect primes
    std::vector<Int> primes;
    for (auto& f : facs)
        for (auto& [p, e] : f)
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    auto vec_of = [&](std::size_t i) {
        std::vector<long> v(primes.size(), 0);
        for (auto& [p, e] : facs[i]) {
            auto it = std::find(primes.begin(), primes.end(), p);
            v[static_cast<std::size_t>(it - primes.begin())] = e;
        }
        return v;
    };
    std::vector<std::vector<long>> vs(ratios.size());
    for (std::size_t i = 0; i < ratios.size(); ++i) vs[i] = vec_of(i);

    // all vectors must be integer multiples of a common primitive direction
    std::vector<long> dir = vs[0];
    long g = 0;
    for (long e : dir) g = std::gcd(g, std::abs(e));
    for (long& e : dir) e /= g;

    out.decided = true;
    std::vector<long> ls(ratios.size());
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        // vs[i] = l_i * dir?
        long li = 0;
        for (std::size_t t = 0; t < dir.size(); ++t) {
            if (dir[t] != 0) {
                if (vs[i][t] % dir[t] != 0) {
                    out.independent = true;
                    out.witness_j = static_cast<int>(i) + 1;
                    return out;
                }
                li = vs[i][t] / dir[t];
                break;
            }
        }
        for (std::size_t t = 0; t < dir.size(); ++t) {
            if (vs[i][t] != li * dir[t]) {
                out.independent = true;
                out.witness_j = static_cast<int>(i) + 1;
                return out;
            }
        }
        if (li <= 0) {
            // same-sign requirement: all ratios in (0,1) shrink, so l_i > 0
            out.independent = true;
            out.witness_j = static_cast<int>(i) + 1;
            return out;
        }
        ls[i] = li;
    }
    long gl = 0;
    for (long l : ls) gl = std::gcd(gl, l);
    for (long& l : ls) l /= gl;
    for (long& e : dir) e *= gl;

    Rat base = 1;
    for (std::size_t t = 0; t < primes.size(); ++t) {
        long e = dir[t];
        Int pw;
        mpz_pow_ui(pw.get_mpz_t(), primes[t].get_mpz_t(),
                   static_cast<unsigned long>(std::abs(e)));
        if (e >= 0)
            base *= Rat(pw);
        else
            base /= Rat(pw);
    }
    out.base = base;
    out.exps = ls;
    return out;
}

} // namespace

std::variant<Ifs, MultIndepWitness> build_ifs_from_ratios(std::vector<FieldElement> ratios,
                                                          std::vector<FieldElement> trans,
                                                          std::vector<Rat> probs, int exp_bound) {
    if (ratios.size() < 2) fail("InvalidArgument", "an IFS needs at least two maps");
    FieldPtr field = ratios[0].field();
    for (auto& rho : ratios) {
        if (!(rho.sign() > 0) || !((field->one() - rho).sign() > 0))
            fail("InvalidArgument", "ratios must lie in (0,1)");
    }

    bool all_rational = std::all_of(ratios.begin(), ratios.end(),
                                    [](const FieldElement& x) { return x.is_rational(); });
    if (all_rational) {
        std::vector<Rat> qs(ratios.size());
        for (std::size_t i = 0; i < qs.size(); ++i) qs[i] = ratios[i].rational();
        RationalBase rb = rational_common_base(qs);
        if (rb.decided) {
            if (rb.independent)
                return MultIndepWitness{rb.witness_i, rb.witness_j, exp_bound, false};
            std::vector<int> exps(rb.exps.begin(), rb.exps.end());
            return make_ifs(field, field->from_rational(rb.base), std::move(exps),
                            std::move(trans), std::move(probs));
        }
    }

    // bounded pair search: minimal (m, n) <= bound with rho_1^m == rho_i^n
    std::vector<FieldElement> pow1{field->one()};
    for (int m = 1; m <= exp_bound; ++m) pow1.push_back(pow1.back() * ratios[0]);

    std::vector<long> num(ratios.size()), den(ratios.size());
    num[0] = den[0] = 1;
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        bool found = false;
        FieldElement powi = field->one();
        for (int n = 1; n <= exp_bound && !found; ++n) {
            powi = powi * ratios[i];
            for (int m = 1; m <= exp_bound; ++m) {
                if (pow1[static_cast<std::size_t>(m)] == powi) {
                    // l_i / l_1 = m / n
                    long g = std::gcd(m, n);
                    num[i] = m / g;
                    den[i] = n / g;
                    found = true;
                    break;
                }
            }
        }
        if (!found) return MultIndepWitness{1, static_cast<int>(i) + 1, exp_bound, true};
    }

    long l1 = 1;
    for (std::size_t i = 1; i < ratios.size(); ++i) l1 = std::lcm(l1, den[i]);
    std::vector<long> ls(ratios.size());
    ls[0] = l1;
    for (std::size_t i = 1; i < ratios.size(); ++i) ls[i] = l1 / den[i] * num[i];
    long g = 0;
    for (long l : ls) g = std::gcd(g, l);
    for (long& l : ls) l /= g;

    // Bezout combination sum x_i * l_i = 1 gives the base r inside the field
    std::vector<long> xs(ls.size(), 0);
    {
        long acc = ls[0];
        xs[0] = 1;
        for (std::size_t i = 1; i < ls.size(); ++i) {
            long old_g = acc;
            long s, t;
            // extended gcd(acc, ls[i])
            long a = acc, b = ls[i], x0 = 1, x1 = 0, y0 = 0, y1 = 1;
            while (b) {
                long q = a / b;
                std::swap(a -= q * b, b);
                std::swap(x0 -= q * x1, x1);
                std::swap(y0 -= q * y1, y1);
            }
            s = x0;
            t = y0;
            (void)old_g;
            for (std::size_t j = 0; j < i; ++j) xs[j] *= s;
            xs[i] = t;
            acc = a;
            if (acc == 1) break;
        }
    }
    FieldElement base = field->one();
    for (std::size_t i = 0; i < ls.size(); ++i)
        if (xs[i] != 0) base = base * ratios[i].pow(xs[i]);

    // exact verification; the pairwise relations guarantee this succeeds
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (base.pow(ls[i]) != ratios[i])
            fail("MultiplicativelyIndependent",
                 "derived base failed verification (inconsistent ratios)");
    }
    std::vector<int> exps(ls.begin(), ls.end());
    return make_ifs(field, std::move(base), std::move(exps), std::move(trans), std::move(probs));
}

Ifs build_ifs_from_ratios_checked(std::vector<FieldElement> ratios,
                                  std::vector<FieldElement> trans, std::vector<Rat> probs,
                                  int exp_bound) {
    auto res = build_ifs_from_ratios(std::move(ratios), std::move(trans), std::move(probs),
                                     exp_bound);
    if (auto* w = std::get_if<MultIndepWitness>(&res))
        fail("MultiplicativelyIndependent",
             "ratios " + std::to_string(w->i) + " and " + std::to_string(w->j) +
                 " admit no common base up to exponent " + std::to_string(w->searched_bound));
    return std::get<Ifs>(std::move(res));
}

Ifs normalize(const Ifs& ifs) {
    // t = fixed point of f_1; a_j -> a_j + (r^{l_j} - 1) t
    FieldElement one = ifs.field->one();
    FieldElement t = ifs.trans[0] / (one - ifs.ratio(0));
    Ifs out = ifs;
    for (int j = 0; j < ifs.k(); ++j) {
        out.trans[static_cast<std::size_t>(j)] =
            ifs.trans[static_cast<std::size_t>(j)] + (ifs.ratio(j) - one) * t;
    }
    return out;
}

RewriteResult equal_ratio_rewrite(const Ifs& ifs, int j, long explosion_cap) {
    if (j < 1 || j > ifs.k()) fail("InvalidArgument", "map index out of range");
    const std::size_t ji = static_cast<std::size_t>(j - 1);
    if (!ifs.trans[0].is_zero())
        fail("InvalidArgument", "equal_ratio_rewrite requires a normalized system (a_1 = 0)");
    if (ifs.trans[ji].is_zero()) fail("InvalidArgument", "a_j must be nonzero");

    if (ifs.exps[0] == ifs.exps[ji]) {
        // relabel so the pair (1, j) sits first; b = -1
        Ifs out = ifs;
        if (j != 2) {
            std::swap(out.exps[1], out.exps[ji]);
            std::swap(out.trans[1], out.trans[ji]);
            std::swap(out.probs[1], out.probs[ji]);
        }
        return {std::move(out), -ifs.field->one(), 0};
    }

    int diff = std::abs(ifs.exps[ji] - ifs.exps[0]);
    int p = 2;
    while (diff % p == 0) {
        // next prime
        ++p;
        while (true) {
            bool prime = p >= 2;
            for (int q = 2; q * q <= p; ++q)
                if (p % q == 0) {
                    prime = false;
                    break;
                }
            if (prime) break;
            ++p;
        }
    }

    double words = std::pow(static_cast<double>(ifs.k()), p);
    if (words > static_cast<double>(explosion_cap))
        fail("ExplosionLimit", "k^p = " + std::to_string(words) + " exceeds the cap");

    const int k = ifs.k();
    const long total = static_cast<long>(words + 0.5);

    // translation of the word (i_1,...,i_p): sum_m a_{i_m} r^{l_{i_1}+...+l_{i_{m-1}}}
    auto word_data = [&](const std::vector<int>& w) {
        FieldElement a = ifs.field->zero();
        int L = 0;
        Rat prob = 1;
        for (int idx : w) {
            a = a + ifs.trans[static_cast<std::size_t>(idx)] * ifs.r.pow(L);
            L += ifs.exps[static_cast<std::size_t>(idx)];
            prob *= ifs.probs[static_cast<std::size_t>(idx)];
        }
        return std::tuple<FieldElement, int, Rat>{a, L, prob};
    };

    std::vector<int> first_word(static_cast<std::size_t>(p), 0); // f_1^(p-1) o f_j
    first_word.back() = j - 1;
    std::vector<int> second_word(static_cast<std::size_t>(p), 0); // f_j o f_1^(p-1)
    second_word.front() = j - 1;

    std::vector<int> exps;
    std::vector<FieldElement> trans;
    std::vector<Rat> probs;
    exps.reserve(static_cast<std::size_t>(total));

    auto push_word = [&](const std::vector<int>& w) {
        auto [a, L, pr] = word_data(w);
        exps.push_back(L);
        trans.push_back(a);
        probs.push_back(pr);
    };
    push_word(first_word);
    push_word(second_word);

    // remaining words in lexicographic order
    std::vector<int> w(static_cast<std::size_t>(p), 0);
    for (long count = 0; count < total; ++count) {
        if (w != first_word && w != second_word) push_word(w);
        // increment
        for (int pos = p - 1; pos >= 0; --pos) {
            if (++w[static_cast<std::size_t>(pos)] < k) break;
            w[static_cast<std::size_t>(pos)] = 0;
        }
    }

    FieldElement b = ifs.r.pow(static_cast<long>(p - 1) * ifs.exps[0]) - ifs.field->one();
    Ifs out = make_ifs(ifs.field, ifs.r, std::move(exps), std::move(trans), std::move(probs));
    // gcd-1 is part of the lemma's construction
    {
        int g = 0;
        for (int l : out.exps) g = std::gcd(g, l);
        assert(g == 1);
    }
    return {std::move(out), std::move(b), p};
}

Moments moments(const Ifs& ifs) {
    FieldElement one = ifs.field->one();
    FieldElement sum_pr = ifs.field->zero();   // sum p_i r^{l_i}
    FieldElement sum_pr2 = ifs.field->zero();  // sum p_i r^{2 l_i}
    FieldElement sum_pa = ifs.field->zero();   // sum p_i a_i
    FieldElement sum_pra = ifs.field->zero();  // sum p_i r^{l_i} a_i
    FieldElement sum_pa2 = ifs.field->zero();  // sum p_i a_i^2
    for (int i = 0; i < ifs.k(); ++i) {
        FieldElement pi = ifs.field->from_rational(ifs.probs[static_cast<std::size_t>(i)]);
        FieldElement ri = ifs.ratio(i);
        const FieldElement& ai = ifs.trans[static_cast<std::size_t>(i)];
        sum_pr = sum_pr + pi * ri;
        sum_pr2 = sum_pr2 + pi * ri * ri;
        sum_pa = sum_pa + pi * ai;
        sum_pra = sum_pra + pi * ri * ai;
        sum_pa2 = sum_pa2 + pi * ai * ai;
    }
    FieldElement mean = sum_pa / (one - sum_pr);
    // M2 (1 - sum p r^2) = 2 mean sum p r a + sum p a^2
    FieldElement two = ifs.field->from_int(2);
    FieldElement m2 = (two * sum_pra * mean + sum_pa2) / (one - sum_pr2);
    FieldElement variance = m2 - mean * mean;
    return {std::move(mean), std::move(variance)};
}

Hull attractor_hull(const Ifs& ifs) {
    FieldElement one = ifs.field->one();
    FieldElement lo = ifs.trans[0] / (one - ifs.ratio(0));
    FieldElement hi = lo;
    for (int i = 1; i < ifs.k(); ++i) {
        FieldElement fx = ifs.trans[static_cast<std::size_t>(i)] / (one - ifs.ratio(i));
        if ((fx - lo).sign() < 0) lo = fx;
        if ((fx - hi).sign() > 0) hi = fx;
    }
    return {std::move(lo), std::move(hi)};
}

std::pair<FieldElement, int> prefix_sum(const Ifs& ifs, const std::vector<int>& prefix) {
    FieldElement s = ifs.field->zero();
    int L = 0;
    for (int idx : prefix) {
        if (idx < 0 || idx >= ifs.k()) fail("InvalidArgument", "prefix index out of range");
        s = s + ifs.trans[static_cast<std::size_t>(idx)] * ifs.r.pow(L);
        L += ifs.exps[static_cast<std::size_t>(idx)];
    }
    return {std::move(s), L};
}

RealBall point(const Ifs& ifs, const std::vector<int>& prefix, mpfr_prec_t prec) {
    auto [s, L] = prefix_sum(ifs, prefix);
    Hull h = attractor_hull(ifs);
    RealBall sb = s.embed_real(prec);
    RealBall rl = pow_si(ifs.r.embed_real(prec), L);
    RealBall lo = sb + rl * h.lo.embed_real(prec);
    RealBall hi = sb + rl * h.hi.embed_real(prec);
    return RealBall::from_endpoints(lo, hi);
}

Ifs conjugate(const Ifs& ifs, const FieldElement& scale, const FieldElement& shift) {
    if (scale.is_zero()) fail("InvalidArgument", "conjugation scale must be nonzero");
    // g(x) = scale*x + shift; new a_j = (a_j + (r^{l_j} - 1) shift) / scale
    FieldElement one = ifs.field->one();
    Ifs out = ifs;
    for (int j = 0; j < ifs.k(); ++j) {
        out.trans[static_cast<std::size_t>(j)] =
            (ifs.trans[static_cast<std::size_t>(j)] + (ifs.ratio(j) - one) * shift) / scale;
    }
    return out;
}

} // namespace ssm
