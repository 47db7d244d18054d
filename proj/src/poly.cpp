#include "ssm/poly.hpp"

#include "ssm/error.hpp"

#include <algorithm>
#include <cassert>

namespace ssm {

void ZPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly ZPoly::derivative() const {
    if (deg() <= 0) return ZPoly();
    std::vector<Int> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return ZPoly(std::move(d));
}

Int ZPoly::content() const {
    Int g = 0;
    for (const Int& a : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    return g;
}

ZPoly ZPoly::primitive() const {
    if (is_zero()) return *this;
    Int g = content();
    std::vector<Int> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] / g;
    return ZPoly(std::move(d));
}

ZPoly ZPoly::monic_sign() const {
    ZPoly p = primitive();
    if (!p.is_zero() && p.lc() < 0) return -p;
    return p;
}

Rat ZPoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

RealBall ZPoly::eval(const RealBall& x) const {
    RealBall acc(x.prec());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + RealBall::from_rat(Rat(*it), x.prec());
    return acc;
}

ComplexBall ZPoly::eval(const ComplexBall& x) const {
    ComplexBall acc(x.prec());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x;
        acc = acc + ComplexBall(RealBall::from_rat(Rat(*it), x.prec()), RealBall(x.prec()));
    }
    return acc;
}

ZPoly ZPoly::reversed() const {
    std::vector<Int> d(c_.rbegin(), c_.rend());
    return ZPoly(std::move(d));
}

bool ZPoly::is_self_reciprocal() const {
    if (is_zero()) return false;
    int n = deg();
    for (int i = 0; 2 * i <= n; ++i)
        if (c_[i] != c_[n - i]) return false;
    return true;
}

std::string ZPoly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = deg(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += c_[i] > 0 ? " + " : " - ";
        else if (c_[i] < 0) s += "-";
        Int a = abs(c_[i]);
        if (a != 1 || i == 0) s += a.get_str();
        if (i > 0) s += (i == 1) ? "x" : "x^" + std::to_string(i);
    }
    return s;
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    std::vector<Int> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.coeffs().size()) c[i] += a[i];
        if (i < b.coeffs().size()) c[i] += b[i];
    }
    return ZPoly(std::move(c));
}

ZPoly operator-(const ZPoly& a) {
    std::vector<Int> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a[i];
    return ZPoly(std::move(c));
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
    return a + (-b);
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly();
    std::vector<Int> c(a.coeffs().size() + b.coeffs().size() - 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a[i] * b[j];
    return ZPoly(std::move(c));
}

ZPoly mul_int(const ZPoly& a, const Int& k) {
    std::vector<Int> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] * k;
    return ZPoly(std::move(c));
}

bool try_divide(const ZPoly& a, const ZPoly& b, ZPoly* quotient) {
    if (b.is_zero()) return false;
    std::vector<Int> rem(a.coeffs());
    int db = b.deg();
    int da = static_cast<int>(rem.size()) - 1;
    if (da < db) {
        if (a.is_zero()) {
            if (quotient) *quotient = ZPoly();
            return true;
        }
        return false;
    }
    std::vector<Int> q(da - db + 1);
    for (int i = da; i >= db; --i) {
        if (rem[i] == 0) continue;
        Int qi, r;
        mpz_tdiv_qr(qi.get_mpz_t(), r.get_mpz_t(), rem[i].get_mpz_t(), b.lc().get_mpz_t());
        if (r != 0) return false;
        q[i - db] = qi;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= qi * b[j];
    }
    for (const Int& x : rem)
        if (x != 0) return false;
    if (quotient) *quotient = ZPoly(std::move(q));
    return true;
}

namespace {

// remainder over Q
QPoly qrem(QPoly a, const QPoly& b) {
    int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db) {
        if (a.back() == 0) {
            a.pop_back();
            continue;
        }
        Rat q = a.back() / b.back();
        int shift = static_cast<int>(a.size()) - 1 - db;
        for (int j = 0; j <= db; ++j) a[shift + j] -= q * b[j];
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

ZPoly primitive_of_q(const QPoly& p) {
    return clear_denominators(p).primitive();
}

} // namespace

ZPoly clear_denominators(const QPoly& p) {
    Int l = 1;
    for (const Rat& q : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Int> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rat v = p[i] * Rat(l);
        c[i] = v.get_num();
    }
    return ZPoly(std::move(c));
}

QPoly qpoly_from(const ZPoly& p) {
    QPoly q(p.coeffs().size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = Rat(p[i]);
    return q;
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero()) return b.monic_sign();
    if (b.is_zero()) return a.monic_sign();
    QPoly x = qpoly_from(a), y = qpoly_from(b);
    while (!y.empty()) {
        QPoly r = qrem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return primitive_of_q(x).monic_sign();
}

ZPoly squarefree_part(const ZPoly& a) {
    if (a.deg() <= 1) return a.primitive();
    ZPoly g = gcd(a, a.derivative());
    if (g.deg() == 0) return a.primitive();
    ZPoly q;
    bool ok = try_divide(a.primitive(), g, &q);
    if (!ok) {
        // gcd was computed up to sign/content of a; retry against primitive part
        ok = try_divide(a.monic_sign(), g, &q);
    }
    assert(ok);
    return q.primitive();
}

Rat resultant(const QPoly& a0, const QPoly& b0) {
    QPoly a = a0, b = b0;
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (!b.empty() && b.back() == 0) b.pop_back();
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    if (da < 0 || db < 0) return Rat(0);
    if (db == 0) {
        Rat r = 1;
        for (int i = 0; i < da; ++i) r *= b[0];
        return r;
    }
    if (da < db) {
        Rat sign = ((da * db) % 2 == 0) ? 1 : -1;
        return sign * resultant(b, a);
    }
    QPoly r = qrem(a, b);
    int dr = static_cast<int>(r.size()) - 1;
    if (dr < 0) return Rat(0);
    Rat lead = 1;
    for (int i = 0; i < da - dr; ++i) lead *= b.back();
    Rat sign = ((da * db) % 2 == 0) ? 1 : -1;
    return sign * lead * resultant(b, r);
}

Rat resultant(const ZPoly& a, const ZPoly& b) {
    return resultant(qpoly_from(a), qpoly_from(b));
}

// ----- Sturm -----

SturmSeq::SturmSeq(const ZPoly& p) : p_(p.primitive()) {
    seq_.push_back(p_);
    if (p_.deg() >= 1) {
        seq_.push_back(p_.derivative().primitive());
        while (seq_.back().deg() >= 1) {
            QPoly r = qrem(qpoly_from(seq_[seq_.size() - 2]), qpoly_from(seq_.back()));
            ZPoly rz = primitive_of_q(r); // positive scaling keeps the sign
            if (rz.is_zero()) break;
            seq_.push_back(-rz);
        }
    }
}

int SturmSeq::sign_changes(const Rat& x) const {
    int changes = 0, prev = 0;
    for (const ZPoly& s : seq_) {
        Rat v = s.eval(x);
        int sg = sgn(v);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++changes;
        prev = sg;
    }
    return changes;
}

int SturmSeq::sign_changes_pos_inf() const {
    int changes = 0, prev = 0;
    for (const ZPoly& s : seq_) {
        if (s.is_zero()) continue;
        int sg = sgn(s.lc());
        if (prev != 0 && sg != prev) ++changes;
        prev = sg;
    }
    return changes;
}

int SturmSeq::sign_changes_neg_inf() const {
    int changes = 0, prev = 0;
    for (const ZPoly& s : seq_) {
        if (s.is_zero()) continue;
        int sg = sgn(s.lc());
        if (s.deg() % 2 != 0) sg = -sg;
        if (prev != 0 && sg != prev) ++changes;
        prev = sg;
    }
    return changes;
}

int SturmSeq::count_roots(const Rat& lo, const Rat& hi) const {
    return sign_changes(lo) - sign_changes(hi);
}

int SturmSeq::count_roots_above(const Rat& lo) const {
    return sign_changes(lo) - sign_changes_pos_inf();
}

int SturmSeq::count_real_roots() const {
    return sign_changes_neg_inf() - sign_changes_pos_inf();
}

Rat root_bound(const ZPoly& p) {
    assert(!p.is_zero());
    Rat m = 0;
    Rat lc = Rat(abs(p.lc()));
    for (int i = 0; i < p.deg(); ++i) {
        Rat a = Rat(abs(p[i])) / lc;
        if (a > m) m = a;
    }
    return m + 2;
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const ZPoly& p0) {
    ZPoly p = p0.primitive();
    std::vector<std::pair<Rat, Rat>> out;
    if (p.deg() < 1) return out;
    SturmSeq sturm(p);
    Rat bound = root_bound(p);

    // endpoints of working intervals must avoid roots; rational root hits are
    // nudged by restarting from a slightly larger box
    Rat lo = -bound, hi = bound;
    while (p.eval(lo) == 0) lo -= 1;
    while (p.eval(hi) == 0) hi += 1;

    struct Box {
        Rat lo, hi;
        int count;
    };
    std::vector<Box> work{{lo, hi, sturm.count_roots(lo, hi)}};
    while (!work.empty()) {
        Box b = work.back();
        work.pop_back();
        if (b.count == 0) continue;
        if (b.count == 1) {
            out.emplace_back(b.lo, b.hi);
            continue;
        }
        Rat mid = (b.lo + b.hi) / 2;
        while (p.eval(mid) == 0) mid = (b.lo + 2 * mid) / 3; // perturb off the root
        int left = sturm.count_roots(b.lo, mid);
        work.push_back({b.lo, mid, left});
        work.push_back({mid, b.hi, b.count - left});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

void refine_root_interval(const ZPoly& p, Rat& lo, Rat& hi, const Rat& target) {
    int slo = sgn(p.eval(lo));
    assert(slo != 0 && sgn(p.eval(hi)) != 0);
    while (hi - lo > target) {
        Rat mid = (lo + hi) / 2;
        Rat v = p.eval(mid);
        if (v == 0) {
            // exact rational root: shrink symmetrically around it
            Rat w = (hi - lo) / 4;
            lo = mid - w;
            hi = mid + w;
            if (p.eval(lo) == 0 || p.eval(hi) == 0) {
                lo = mid - w / 3;
                hi = mid + w / 3;
            }
            continue;
        }
        if (sgn(v) == slo)
            lo = mid;
        else
            hi = mid;
    }
}

} // namespace ssm
