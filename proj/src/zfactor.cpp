#include "ssm/error.hpp"
#include "ssm/poly.hpp"
#include "ssm/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>

// Factorization of squarefree primitive integer polynomials: Cantor-Zassenhaus
// mod a small prime, quadratic Hensel lifting to a power above the
// Landau-Mignotte bound, subset recombination.

namespace ssm {

namespace {

using u64 = std::uint64_t;

u64 addm(u64 a, u64 b, u64 p) { return (a + b) % p; }
u64 subm(u64 a, u64 b, u64 p) { return (a + p - b) % p; }
u64 mulm(u64 a, u64 b, u64 p) { return (__uint128_t)a * b % p; }

u64 powm(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invm(u64 a, u64 p) { return powm(a % p, p - 2, p); }

// polynomials over F_p, c[i] coeff of x^i, normalized
using FpPoly = std::vector<u64>;

void fp_norm(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + (__uint128_t)a[i] * b[j]) % p;
    }
    fp_norm(c);
    return c;
}

FpPoly fp_sub(FpPoly a, const FpPoly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = subm(a[i], b[i], p);
    fp_norm(a);
    return a;
}

// a mod b, b nonzero
FpPoly fp_rem(FpPoly a, const FpPoly& b, u64 p) {
    u64 inv = invm(b.back(), p);
    while (a.size() >= b.size()) {
        if (a.back() == 0) {
            a.pop_back();
            continue;
        }
        u64 q = mulm(a.back(), inv, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] = subm(a[shift + j], mulm(q, b[j], p), p);
        fp_norm(a);
    }
    return a;
}

FpPoly fp_divexact(FpPoly a, const FpPoly& b, u64 p) {
    u64 inv = invm(b.back(), p);
    FpPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size()) {
        if (a.back() == 0) {
            a.pop_back();
            continue;
        }
        u64 qc = mulm(a.back(), inv, p);
        std::size_t shift = a.size() - b.size();
        q[shift] = qc;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] = subm(a[shift + j], mulm(qc, b[j], p), p);
        fp_norm(a);
    }
    return q;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 inv = invm(a.back(), p);
        for (u64& x : a) x = mulm(x, inv, p);
    }
    return a;
}

FpPoly fp_monic(FpPoly a, u64 p) {
    if (a.empty()) return a;
    u64 inv = invm(a.back(), p);
    for (u64& x : a) x = mulm(x, inv, p);
    return a;
}

FpPoly fp_powmod(FpPoly base, Int e, const FpPoly& mod, u64 p) {
    FpPoly r{1};
    base = fp_rem(std::move(base), mod, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_rem(fp_mul(r, base, p), mod, p);
        base = fp_rem(fp_mul(base, base, p), mod, p);
        e >>= 1;
    }
    return r;
}

// distinct-degree then equal-degree splitting; returns monic irreducible factors
void fp_equal_degree(const FpPoly& f, int d, u64 p, SplitRng& rng, std::vector<FpPoly>& out) {
    int n = static_cast<int>(f.size()) - 1;
    if (n == d) {
        out.push_back(f);
        return;
    }
    Int exp = 1;
    {
        Int pd;
        mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
        exp = (pd - 1) / 2;
    }
    while (true) {
        FpPoly a(n);
        for (int i = 0; i < n; ++i) a[i] = rng.next_below(p);
        fp_norm(a);
        if (a.empty()) continue;
        FpPoly g = fp_gcd(f, a, p);
        if (static_cast<int>(g.size()) - 1 > 0 && static_cast<int>(g.size()) - 1 < n) {
            fp_equal_degree(g, d, p, rng, out);
            fp_equal_degree(fp_divexact(f, g, p), d, p, rng, out);
            return;
        }
        FpPoly b = fp_powmod(a, exp, f, p);
        b = fp_sub(b, FpPoly{1}, p);
        g = fp_gcd(f, b, p);
        int dg = static_cast<int>(g.size()) - 1;
        if (dg > 0 && dg < n) {
            fp_equal_degree(g, d, p, rng, out);
            fp_equal_degree(fp_divexact(f, g, p), d, p, rng, out);
            return;
        }
    }
}

std::vector<FpPoly> fp_factor_squarefree(FpPoly f, u64 p, SplitRng& rng) {
    std::vector<FpPoly> out;
    f = fp_monic(std::move(f), p);
    FpPoly h{0, 1}; // x
    int d = 0;
    while (static_cast<int>(f.size()) - 1 >= 2 * (d + 1)) {
        ++d;
        h = fp_powmod(std::move(h), Int(static_cast<long>(p)), f, p);
        FpPoly hx = fp_sub(h, FpPoly{0, 1}, p);
        FpPoly g = fp_gcd(f, hx, p);
        if (static_cast<int>(g.size()) - 1 > 0) {
            fp_equal_degree(g, d, p, rng, out);
            f = fp_divexact(f, g, p);
            h = fp_rem(std::move(h), f, p);
        }
    }
    if (static_cast<int>(f.size()) - 1 > 0) out.push_back(f);
    return out;
}

// ----- lifted-world polynomial helpers (coefficients mod m, symmetric on exit) -----

using MPoly = std::vector<Int>;

void m_norm(MPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

MPoly m_reduce(MPoly a, const Int& m) {
    for (Int& x : a) {
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    }
    m_norm(a);
    return a;
}

MPoly m_mul(const MPoly& a, const MPoly& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    MPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return m_reduce(std::move(c), m);
}

MPoly m_add(MPoly a, const MPoly& b, const Int& m) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return m_reduce(std::move(a), m);
}

MPoly m_sub(MPoly a, const MPoly& b, const Int& m) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return m_reduce(std::move(a), m);
}

// divides by monic b
void m_divmod(const MPoly& a, const MPoly& b, const Int& m, MPoly* q, MPoly* r) {
    assert(!b.empty() && b.back() == 1);
    MPoly rem = a;
    MPoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    while (rem.size() >= b.size()) {
        if (rem.back() == 0) {
            rem.pop_back();
            continue;
        }
        Int qc = rem.back();
        std::size_t shift = rem.size() - b.size();
        quot[shift] = qc;
        for (std::size_t j = 0; j < b.size(); ++j) {
            rem[shift + j] -= qc * b[j];
            mpz_mod(rem[shift + j].get_mpz_t(), rem[shift + j].get_mpz_t(), m.get_mpz_t());
        }
        m_norm(rem);
    }
    if (q) *q = m_reduce(std::move(quot), m);
    if (r) *r = std::move(rem);
}

// extended euclid over F_p for initial Bezout cofactors: s*a + t*b = 1
void fp_bezout(const FpPoly& a, const FpPoly& b, u64 p, FpPoly* s, FpPoly* t) {
    FpPoly r0 = a, r1 = b;
    FpPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        // q, r of r0 / r1
        FpPoly q;
        {
            FpPoly rem = r0;
            u64 inv = invm(r1.back(), p);
            q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
            while (rem.size() >= r1.size()) {
                if (rem.back() == 0) {
                    rem.pop_back();
                    continue;
                }
                u64 qc = mulm(rem.back(), inv, p);
                std::size_t shift = rem.size() - r1.size();
                q[shift] = qc;
                for (std::size_t j = 0; j < r1.size(); ++j)
                    rem[shift + j] = subm(rem[shift + j], mulm(qc, r1[j], p), p);
                fp_norm(rem);
            }
            fp_norm(q);
            r0 = std::move(r1);
            r1 = std::move(rem);
        }
        FpPoly ns = fp_sub(s0, fp_mul(q, s1, p), p);
        FpPoly nt = fp_sub(t0, fp_mul(q, t1, p), p);
        s0 = std::move(s1);
        s1 = std::move(ns);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    // r0 = gcd (a constant, inputs coprime)
    assert(static_cast<int>(r0.size()) == 1);
    u64 inv = invm(r0[0], p);
    for (u64& x : s0) x = mulm(x, inv, p);
    for (u64& x : t0) x = mulm(x, inv, p);
    *s = std::move(s0);
    *t = std::move(t0);
}

MPoly mpoly_from_fp(const FpPoly& a) {
    MPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<unsigned long>(a[i]));
    return r;
}

// one quadratic Hensel step: from modulus m to m^2 (capped by mtop)
// invariants: F === g*h (mod m), s*g + t*h === 1 (mod m), g,h monic
void hensel_step(const MPoly& F, MPoly& g, MPoly& h, MPoly& s, MPoly& t, const Int& m) {
    Int m2 = m * m;
    MPoly e = m_sub(F, m_mul(g, h, m2), m2);
    MPoly q, r;
    m_divmod(m_mul(s, e, m2), h, m2, &q, &r);
    MPoly gn = m_add(m_add(g, m_mul(t, e, m2), m2), m_mul(q, g, m2), m2);
    MPoly hn = m_add(h, r, m2);
    MPoly b = m_sub(m_add(m_mul(s, gn, m2), m_mul(t, hn, m2), m2), MPoly{1}, m2);
    MPoly c, d;
    m_divmod(m_mul(s, b, m2), hn, m2, &c, &d);
    MPoly sn = m_sub(s, d, m2);
    MPoly tn = m_sub(m_sub(t, m_mul(t, b, m2), m2), m_mul(c, gn, m2), m2);
    g = std::move(gn);
    h = std::move(hn);
    s = std::move(sn);
    t = std::move(tn);
}

// lift monic factorization of F (monic mod target) across a factor tree
void hensel_tree(const MPoly& F, const std::vector<FpPoly>& fp_factors, std::size_t lo,
                 std::size_t hi, u64 p, const Int& target, std::vector<MPoly>& out) {
    if (hi - lo == 1) {
        out.push_back(m_reduce(MPoly(F), target));
        return;
    }
    std::size_t midpt = lo + (hi - lo) / 2;
    FpPoly gp{1}, hp{1};
    for (std::size_t i = lo; i < midpt; ++i) gp = fp_mul(gp, fp_factors[i], p);
    for (std::size_t i = midpt; i < hi; ++i) hp = fp_mul(hp, fp_factors[i], p);
    FpPoly sp, tp;
    fp_bezout(gp, hp, p, &sp, &tp);

    MPoly g = mpoly_from_fp(gp), h = mpoly_from_fp(hp);
    MPoly s = mpoly_from_fp(sp), t = mpoly_from_fp(tp);
    Int m(static_cast<unsigned long>(p));
    while (m < target) {
        hensel_step(F, g, h, s, t, m);
        m = m * m;
    }
    g = m_reduce(std::move(g), target);
    h = m_reduce(std::move(h), target);
    hensel_tree(g, fp_factors, lo, midpt, p, target, out);
    hensel_tree(h, fp_factors, midpt, hi, p, target, out);
}

Int symmetric(const Int& x, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    if (r * 2 > m) r -= m;
    return r;
}

ZPoly zpoly_from_symmetric(const MPoly& a, const Int& m) {
    std::vector<Int> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = symmetric(a[i], m);
    return ZPoly(std::move(c));
}

Int coeff_bound(const ZPoly& f) {
    // Landau-Mignotte style: 2^n * sqrt(n+1) * max|c| * |lc|
    Int maxc = 0;
    for (const Int& c : f.coeffs())
        if (abs(c) > maxc) maxc = abs(c);
    Int b = maxc * abs(f.lc());
    b <<= static_cast<unsigned>(f.deg() + 2); // covers sqrt(n+1) for n < 16 too
    Int sq = 1;
    while (sq * sq < Int(f.deg() + 1)) ++sq;
    return b * sq;
}

const u64 kPrimes[] = {10007, 10501, 11003, 12007, 13001, 14009, 15013,
                       17011, 19001, 23003, 29009, 31013, 37003};

} // namespace

std::vector<ZPoly> factor_squarefree(const ZPoly& input, std::uint64_t seed) {
    ZPoly f = input.primitive();
    assert(f.deg() >= 1);
    if (f.deg() == 1) return {f.monic_sign()};

    // pick the usable prime with the fewest modular factors among a few tries
    u64 best_p = 0;
    std::vector<FpPoly> best_factors;
    int tried = 0;
    for (u64 p : kPrimes) {
        if (mpz_divisible_ui_p(f.lc().get_mpz_t(), static_cast<unsigned long>(p))) continue;
        FpPoly fp(f.coeffs().size());
        for (std::size_t i = 0; i < fp.size(); ++i) {
            Int c;
            mpz_mod_ui(c.get_mpz_t(), f[i].get_mpz_t(), static_cast<unsigned long>(p));
            fp[i] = c.get_ui();
        }
        fp_norm(fp);
        // squarefree mod p?
        FpPoly d(fp.size() - 1);
        for (std::size_t i = 1; i < fp.size(); ++i) d[i - 1] = mulm(fp[i], i % p, p);
        fp_norm(d);
        FpPoly g = fp_gcd(fp, d, p);
        if (static_cast<int>(g.size()) - 1 != 0) continue;

        SplitRng rng(seed, p);
        auto factors = fp_factor_squarefree(fp, p, rng);
        if (best_p == 0 || factors.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(factors);
        }
        if (best_factors.size() == 1) break;
        if (++tried >= 4) break;
    }
    if (best_p == 0) fail("FactorizationFailed", "no usable prime for " + f.to_string());
    if (best_factors.size() == 1) return {f.monic_sign()};

    u64 p = best_p;
    // lift to q^k > 2 * bound
    Int bound = coeff_bound(f) * 2;
    Int target(static_cast<unsigned long>(p));
    while (target <= bound) target *= target;

    // monic version of f modulo target
    Int lcinv;
    {
        Int l = f.lc();
        mpz_invert(lcinv.get_mpz_t(), l.get_mpz_t(), target.get_mpz_t());
    }
    MPoly F(f.coeffs().begin(), f.coeffs().end());
    for (Int& c : F) c *= lcinv;
    F = m_reduce(std::move(F), target);

    std::sort(best_factors.begin(), best_factors.end(),
              [](const FpPoly& a, const FpPoly& b) { return a.size() < b.size(); });
    std::vector<MPoly> lifted;
    hensel_tree(F, best_factors, 0, best_factors.size(), p, target, lifted);

    // subset recombination
    std::vector<ZPoly> result;
    std::vector<int> live(lifted.size());
    for (std::size_t i = 0; i < live.size(); ++i) live[i] = static_cast<int>(i);
    ZPoly rem = f;

    auto try_subset = [&](const std::vector<int>& subset) -> bool {
        MPoly prod{rem.lc()};
        for (int idx : subset) prod = m_mul(prod, lifted[static_cast<std::size_t>(idx)], target);
        ZPoly cand = zpoly_from_symmetric(prod, target).primitive();
        ZPoly q;
        if (cand.deg() >= 1 && try_divide(rem, cand, &q)) {
            result.push_back(cand.monic_sign());
            rem = q.primitive();
            return true;
        }
        return false;
    };

    std::size_t card = 1;
    while (2 * card <= live.size()) {
        // iterate subsets of size card over live indices
        std::vector<std::size_t> pick(card);
        for (std::size_t i = 0; i < card; ++i) pick[i] = i;
        bool removed_any = false;
        while (true) {
            std::vector<int> subset(card);
            for (std::size_t i = 0; i < card; ++i) subset[i] = live[pick[i]];
            if (try_subset(subset)) {
                std::vector<int> next;
                for (std::size_t i = 0, j = 0; i < live.size(); ++i) {
                    if (j < card && pick[j] == i) {
                        ++j;
                        continue;
                    }
                    next.push_back(live[i]);
                }
                live = std::move(next);
                removed_any = true;
                if (2 * card > live.size()) break;
                for (std::size_t i = 0; i < card; ++i) pick[i] = i;
                continue;
            }
            // next combination
            int pos = static_cast<int>(card) - 1;
            while (pos >= 0 && pick[static_cast<std::size_t>(pos)] ==
                                   live.size() - card + static_cast<std::size_t>(pos))
                --pos;
            if (pos < 0) break;
            ++pick[static_cast<std::size_t>(pos)];
            for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < card; ++i)
                pick[i] = pick[i - 1] + 1;
        }
        if (!removed_any) ++card;
    }
    if (rem.deg() >= 1) result.push_back(rem.monic_sign());
    std::sort(result.begin(), result.end(), [](const ZPoly& a, const ZPoly& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        return a.coeffs() < b.coeffs();
    });
    return result;
}

bool is_irreducible(const ZPoly& p0) {
    ZPoly p = p0.primitive();
    if (p.deg() < 1) return false;
    if (p.deg() == 1) return true;
    if (gcd(p, p.derivative()).deg() > 0) return false; // repeated factor
    return factor_squarefree(p).size() == 1;
}

} // namespace ssm
