#include "ssm/field.hpp"

#include "ssm/error.hpp"
#include "ssm/roots.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace ssm {

// ----- FieldElement -----

bool FieldElement::is_zero() const {
    for (const Rat& c : coords_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

Rat FieldElement::rational() const {
    assert(is_rational());
    return coords_.empty() ? Rat(0) : coords_[0];
}

FieldElement FieldElement::operator-() const {
    std::vector<Rat> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
    return FieldElement(field_, std::move(c));
}

bool FieldElement::operator==(const FieldElement& o) const {
    assert(field_ == o.field_);
    return coords_ == o.coords_;
}

namespace {

void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field())
        fail("FieldMismatch", "operands belong to different number fields");
}

// reduce a rational polynomial (low-to-high, size up to 2d-1) modulo f in place
void reduce_mod(std::vector<Rat>& v, const ZPoly& f) {
    const int d = f.deg();
    for (int i = static_cast<int>(v.size()) - 1; i >= d; --i) {
        if (v[static_cast<std::size_t>(i)] == 0) continue;
        Rat t = v[static_cast<std::size_t>(i)] / Rat(f.lc());
        v[static_cast<std::size_t>(i)] = 0;
        for (int j = 0; j < d; ++j)
            v[static_cast<std::size_t>(i - d + j)] -= t * Rat(f[static_cast<std::size_t>(j)]);
    }
    v.resize(static_cast<std::size_t>(d));
}

// extended euclid over Q[x]: s*a + t*f = gcd (monic); only s is needed
std::vector<Rat> inverse_mod(const std::vector<Rat>& a, const ZPoly& f) {
    QPoly r0 = qpoly_from(f), r1(a);
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
    QPoly s0{}, s1{Rat(1)};
    // invariant: r_i = s_i * a (mod f)
    while (true) {
        // normalize r1 and divide
        if (r1.empty()) fail("DivisionByZero", "inverse of zero field element");
        if (static_cast<int>(r1.size()) - 1 == 0) break;
        QPoly q, rem = r0;
        int db = static_cast<int>(r1.size()) - 1;
        q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1, Rat(0));
        while (static_cast<int>(rem.size()) - 1 >= db) {
            if (rem.back() == 0) {
                rem.pop_back();
                continue;
            }
            Rat qc = rem.back() / r1.back();
            std::size_t shift = rem.size() - r1.size();
            if (shift >= q.size()) q.resize(shift + 1, Rat(0));
            q[shift] = qc;
            for (std::size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= qc * r1[j];
            rem.pop_back();
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
        }
        // s_next = s0 - q * s1
        QPoly qs1(q.size() + s1.size());
        if (!s1.empty() && !q.empty()) {
            qs1.assign(q.size() + s1.size() - 1, Rat(0));
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) qs1[i + j] += q[i] * s1[j];
        } else {
            qs1.clear();
        }
        QPoly snext = s0;
        if (snext.size() < qs1.size()) snext.resize(qs1.size(), Rat(0));
        for (std::size_t i = 0; i < qs1.size(); ++i) snext[i] -= qs1[i];
        s0 = std::move(s1);
        s1 = std::move(snext);
        r0 = std::move(r1);
        r1 = std::move(rem);
    }
    // r1 is a nonzero constant c: inverse = s1 / c (mod f)
    Rat c = r1[0];
    std::vector<Rat> inv(s1.size());
    for (std::size_t i = 0; i < s1.size(); ++i) inv[i] = s1[i] / c;
    reduce_mod(inv, f); // also pads to degree d
    return inv;
}

} // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    std::vector<Rat> c(a.coords().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] + b.coords()[i];
    return a.field()->element(std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    std::vector<Rat> c(a.coords().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] - b.coords()[i];
    return a.field()->element(std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    const auto& f = a.field()->min_poly();
    const std::size_t d = a.coords().size();
    std::vector<Rat> prod(2 * d - 1, Rat(0));
    for (std::size_t i = 0; i < d; ++i) {
        if (a.coords()[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (b.coords()[j] == 0) continue;
            prod[i + j] += a.coords()[i] * b.coords()[j];
        }
    }
    reduce_mod(prod, f);
    return a.field()->element(std::move(prod));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) fail("DivisionByZero", "inverse of zero field element");
    if (is_rational()) return field_->from_rational(1 / coords_[0]);
    std::vector<Rat> inv = inverse_mod(coords_, field_->min_poly());
    return FieldElement(field_, std::move(inv));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    return a * b.inverse();
}

FieldElement FieldElement::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    FieldElement acc = field_->one();
    FieldElement base = *this;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

int FieldElement::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(coords_[0]);
    for (mpfr_prec_t p = kDefaultPrec; p <= kPrecCap; p *= 2) {
        RealBall v = embed_real(p);
        if (v.certainly_positive()) return 1;
        if (v.certainly_negative()) return -1;
    }
    fail("PrecisionExhausted", "sign of field element undecided at precision cap");
}

RealBall FieldElement::embed_real(mpfr_prec_t prec) const {
    ComplexBall z = embed(1, prec);
    return z.re();
}

ComplexBall FieldElement::embed(int k, mpfr_prec_t prec) const {
    const int d = field_->degree();
    if (k < 1 || k > d) fail("InvalidArgument", "embedding index out of range");
    for (mpfr_prec_t wp = prec + 32; wp <= kPrecCap; wp *= 2) {
        ComplexBall root = field_->embedding_refined(k, wp);
        ComplexBall acc{RealBall(wp), RealBall(wp)};
        for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) {
            acc = acc * root;
            acc = acc + ComplexBall(RealBall::from_rat(*it, wp), RealBall(wp));
        }
        // target: radius <= 2^-prec * max(1, |value|)
        RealBall scale = max(acc.abs().lb_ball(), RealBall::from_si(1, wp));
        RealBall target = scale * pow_si(RealBall::from_si(2, wp), -static_cast<long>(prec));
        RealBall rad = acc.re().rad_ball() + acc.im().rad_ball();
        auto c = rad.cmp(target);
        if (c && *c <= 0) return acc;
    }
    fail("PrecisionExhausted", "embedding evaluation hit the precision cap");
}

ZPoly FieldElement::min_poly() const {
    const int d = field_->degree();
    if (is_rational()) {
        Rat q = coords_.empty() ? Rat(0) : coords_[0];
        return ZPoly({-q.get_num(), q.get_den()}).monic_sign();
    }
    // multiplication-by-elem matrix in the power basis: column j = coords of elem * lambda^j
    std::vector<std::vector<Rat>> M(static_cast<std::size_t>(d),
                                    std::vector<Rat>(static_cast<std::size_t>(d)));
    std::vector<Rat> v(coords_);
    const ZPoly& f = field_->min_poly();
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i)
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                v[static_cast<std::size_t>(i)];
        if (j + 1 < d) {
            // multiply by lambda: shift up and reduce
            v.insert(v.begin(), Rat(0));
            reduce_mod(v, f);
        }
    }
    // characteristic polynomial via Faddeev-LeVerrier
    auto matmul = [d](const std::vector<std::vector<Rat>>& A,
                      const std::vector<std::vector<Rat>>& B) {
        std::vector<std::vector<Rat>> C(static_cast<std::size_t>(d),
                                        std::vector<Rat>(static_cast<std::size_t>(d), Rat(0)));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                const Rat& a = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                if (a == 0) continue;
                for (int j = 0; j < d; ++j)
                    C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        a * B[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            }
        return C;
    };
    auto trace_of = [d](const std::vector<std::vector<Rat>>& A) {
        Rat t = 0;
        for (int i = 0; i < d; ++i)
            t += A[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        return t;
    };
    QPoly charpoly(static_cast<std::size_t>(d + 1), Rat(0));
    charpoly[static_cast<std::size_t>(d)] = 1;
    std::vector<std::vector<Rat>> Mk = M;
    Rat ck = -trace_of(Mk);
    charpoly[static_cast<std::size_t>(d - 1)] = ck;
    for (int k = 2; k <= d; ++k) {
        for (int i = 0; i < d; ++i)
            Mk[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += ck;
        Mk = matmul(M, Mk);
        ck = -trace_of(Mk) / Rat(k);
        charpoly[static_cast<std::size_t>(d - k)] = ck;
    }
    ZPoly cz = clear_denominators(charpoly);
    return squarefree_part(cz).monic_sign();
}

std::pair<Rat, Rat> FieldElement::isolating_interval() const {
    ZPoly mp = min_poly();
    auto intervals = isolate_real_roots(mp);
    assert(!intervals.empty());
    for (mpfr_prec_t p = kDefaultPrec;; p *= 2) {
        RealBall v = embed_real(p);
        int hits = -1;
        bool decided = true;
        for (std::size_t i = 0; i < intervals.size() && decided; ++i) {
            auto inside_lo = v.cmp(intervals[i].first);
            auto inside_hi = v.cmp(intervals[i].second);
            if (!inside_lo || !inside_hi) {
                decided = false;
                break;
            }
            if (*inside_lo > 0 && *inside_hi < 0) {
                hits = static_cast<int>(i);
                break;
            }
        }
        if (decided && hits >= 0) return intervals[static_cast<std::size_t>(hits)];
        if (p > kPrecCap) break;
        // tighten the candidate intervals as well
        for (auto& iv : intervals) {
            Rat width = (iv.second - iv.first) / 16;
            if (width > 0) refine_root_interval(mp, iv.first, iv.second, width);
        }
    }
    fail("PrecisionExhausted", "could not isolate element among min-poly roots");
}

Rat FieldElement::trace() const {
    // trace of the multiplication matrix: sum over basis contributions
    const int d = field_->degree();
    const ZPoly& f = field_->min_poly();
    std::vector<Rat> v(coords_);
    Rat t = 0;
    for (int j = 0; j < d; ++j) {
        t += v[static_cast<std::size_t>(j)];
        if (j + 1 < d) {
            v.insert(v.begin(), Rat(0));
            reduce_mod(v, f);
        }
    }
    return t;
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ", ";
        os << rational_to_string(coords_[i]);
    }
    os << "]";
    return os.str();
}

// ----- NumberField -----

FieldPtr NumberField::make(const std::vector<Int>& coeffs, const RootSelector& sel,
                           mpfr_prec_t prec) {
    return make(ZPoly(coeffs), sel, prec);
}

FieldPtr NumberField::make(const ZPoly& input, const RootSelector& sel, mpfr_prec_t prec) {
    ZPoly f = input.monic_sign();
    if (f.deg() < 1) fail("ReduciblePolynomial", "degree must be at least 1");
    if (!is_irreducible(f))
        fail("ReduciblePolynomial", f.to_string() + " factors over the rationals");

    auto field = std::shared_ptr<NumberField>(new NumberField());
    field->f_ = f;
    const int d = f.deg();

    // exact real-root landscape
    auto intervals = isolate_real_roots(f);

    // choose lambda
    std::pair<Rat, Rat> chosen;
    if (d == 1) {
        Rat root = -Rat(f[0]) / Rat(f[1]);
        if (!(root > 1)) fail("NoRealRootAboveOne", "the unique root is not greater than 1");
        chosen = {root - 1, root + 1};
    } else if (sel.kind == RootSelector::Kind::LargestReal) {
        SturmSeq sturm(f);
        if (sturm.count_roots_above(Rat(1)) < 1)
            fail("NoRealRootAboveOne", "no real root greater than 1 in " + f.to_string());
        chosen = intervals.back(); // sorted ascending; the largest real root
    } else {
        if (!(sel.lo < sel.hi)) fail("AmbiguousRootSelection", "empty interval");
        SturmSeq sturm(f);
        if (f.eval(sel.lo) == 0 || f.eval(sel.hi) == 0)
            fail("AmbiguousRootSelection", "interval endpoint is a root");
        int count = sturm.count_roots(sel.lo, sel.hi);
        if (count == 0)
            fail("NoRealRootAboveOne", "no root in the selection interval");
        if (count > 1)
            fail("AmbiguousRootSelection", "interval contains several roots");
        chosen = {sel.lo, sel.hi};
        // the selected root must be > 1 (f(1) != 0 for irreducible degree >= 2)
        bool above_one = sel.lo >= 1 ||
                         (sel.hi > 1 && sturm.count_roots(Rat(1), sel.hi) == 1);
        if (!above_one) fail("NoRealRootAboveOne", "selected root is not greater than 1");
    }

    // refine the chosen interval so it certainly lies right of 1
    if (d > 1) {
        while (!(chosen.first > 1)) {
            Rat width = (chosen.second - chosen.first) / 4;
            refine_root_interval(f, chosen.first, chosen.second, width);
            if (chosen.second <= 1)
                fail("NoRealRootAboveOne", "selected root is not greater than 1");
        }
    }

    // certified embeddings, lambda first
    auto roots = isolate_roots(f, prec);
    for (auto& r : roots) r = refine_root(f, r, prec);

    // locate lambda among the real root balls by the exact interval
    int lam_idx = -1;
    for (int attempt = 0; attempt < 80 && lam_idx < 0; ++attempt) {
        int candidate = -1;
        bool multiple = false;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (!roots[i].im().is_exact_zero()) continue;
            const RealBall& re = roots[i].re();
            if (re.certainly_gt(chosen.second) || re.certainly_lt(chosen.first)) continue;
            if (candidate >= 0) multiple = true;
            candidate = static_cast<int>(i);
        }
        if (candidate >= 0 && !multiple) {
            lam_idx = candidate;
            break;
        }
        Rat width = (chosen.second - chosen.first) / 4;
        refine_root_interval(f, chosen.first, chosen.second, width);
    }
    if (lam_idx < 0) fail("PrecisionExhausted", "could not match selected root");
    field->gen_lo_ = chosen.first;
    field->gen_hi_ = chosen.second;

    std::vector<ComplexBall> emb;
    emb.push_back(roots[static_cast<std::size_t>(lam_idx)]);
    std::vector<ComplexBall> reps, conjs;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (static_cast<int>(i) == lam_idx) continue;
        if (roots[i].im().is_exact_zero()) {
            emb.push_back(roots[i]);
        } else if (roots[i].im().certainly_positive()) {
            reps.push_back(roots[i]);
        }
    }
    field->num_real_ = static_cast<int>(emb.size());
    for (const auto& r : reps) emb.push_back(r);
    for (const auto& r : reps) emb.push_back(r.conj());
    assert(static_cast<int>(emb.size()) == d);
    field->emb_ = std::move(emb);

    field->conj_partner_.resize(static_cast<std::size_t>(d));
    int pairs = (d - field->num_real_) / 2;
    for (int k = 1; k <= d; ++k) {
        int partner = k;
        if (k > field->num_real_) {
            int idx = k - field->num_real_;
            partner = (idx <= pairs) ? k + pairs : k - pairs;
        }
        field->conj_partner_[static_cast<std::size_t>(k - 1)] = partner;
    }

    field->gen_approx_ = field->emb_[0].re();
    return field;
}

FieldPtr NumberField::rationals() {
    static FieldPtr q = make(ZPoly({Int(-2), Int(1)}), RootSelector::largest_real());
    return q;
}

ComplexBall NumberField::embedding_refined(int k, mpfr_prec_t prec) const {
    const ComplexBall& base = emb_[static_cast<std::size_t>(k - 1)];
    if (degree() == 1 || prec <= base.prec() / 2) return base;
    return refine_root(f_, base, prec);
}

FieldElement NumberField::element(std::vector<Rat> coords) const {
    if (coords.size() != static_cast<std::size_t>(degree()))
        fail("InvalidArgument", "coordinate vector length does not match the field degree");
    return FieldElement(shared_from_this(), std::move(coords));
}

FieldElement NumberField::from_rational(const Rat& q) const {
    std::vector<Rat> c(static_cast<std::size_t>(degree()), Rat(0));
    c[0] = q;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement NumberField::generator() const {
    std::vector<Rat> c(static_cast<std::size_t>(degree()), Rat(0));
    if (degree() == 1) {
        // lambda is the rational root itself
        c[0] = -Rat(f_[0]) / Rat(f_[1]);
    } else {
        c[1] = 1;
    }
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement NumberField::zero() const {
    return from_rational(Rat(0));
}

std::string NumberField::to_string() const {
    return "Q(x : " + f_.to_string() + " = 0, x in (" + rational_to_string(gen_lo_) + ", " +
           rational_to_string(gen_hi_) + "))";
}

// ----- classification -----

std::string to_string(PisotSalemTag tag) {
    switch (tag) {
        case PisotSalemTag::Pisot: return "Pisot";
        case PisotSalemTag::Salem: return "Salem";
        case PisotSalemTag::Neither: return "Neither";
        case PisotSalemTag::NotAlgebraicInteger: return "NotAlgebraicInteger";
    }
    return "?";
}

namespace {

// P(x) = x^n Q(x + 1/x) for self-reciprocal P of even degree 2n
ZPoly reciprocal_transform(const ZPoly& p) {
    int n = p.deg() / 2;
    // T_j with x^j + x^-j = T_j(w): T_0 = 2, T_1 = w, T_{j+1} = w T_j - T_{j-1}
    std::vector<ZPoly> T;
    T.push_back(ZPoly({Int(2)}));
    T.push_back(ZPoly({Int(0), Int(1)}));
    for (int j = 2; j <= n; ++j) {
        ZPoly next = ZPoly({Int(0), Int(1)}) * T[static_cast<std::size_t>(j - 1)] -
                     T[static_cast<std::size_t>(j - 2)];
        T.push_back(next);
    }
    ZPoly q = ZPoly({p[static_cast<std::size_t>(n)]});
    for (int j = 1; j <= n; ++j)
        q = q + mul_int(T[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(n + j)]);
    return q;
}

} // namespace

PisotSalemClass classify_lambda(const FieldPtr& field) {
    const ZPoly& f = field->min_poly();
    const int d = field->degree();

    if (f.lc() != 1)
        return {PisotSalemTag::NotAlgebraicInteger, 0, RealBall()};

    if (d == 1)
        return {PisotSalemTag::Pisot, 0, RealBall()};

    bool selfrec = f.is_self_reciprocal();

    // try to decide every conjugate modulus against 1 by refinement
    for (mpfr_prec_t p = kDefaultPrec; p <= kPrecCap; p *= 2) {
        bool all_lt = true;
        bool undecided = false;
        int max_idx = 2;
        RealBall max_mod;
        int gt_idx = 0;
        RealBall gt_mod;
        for (int k = 2; k <= d; ++k) {
            RealBall m = field->embedding_refined(k, p).abs();
            if (k == 2 || m.ub_d() > max_mod.ub_d()) {
                max_mod = m;
                max_idx = k;
            }
            auto c = m.cmp(Rat(1));
            if (!c) {
                undecided = true;
                all_lt = false;
            } else if (*c > 0) {
                all_lt = false;
                if (gt_idx == 0) {
                    gt_idx = k;
                    gt_mod = m;
                }
            } else if (*c == 0) {
                undecided = true;
                all_lt = false;
            }
        }
        if (all_lt) return {PisotSalemTag::Pisot, max_idx, max_mod};
        if (gt_idx != 0) return {PisotSalemTag::Neither, gt_idx, gt_mod};
        if (!undecided) return {PisotSalemTag::Neither, max_idx, max_mod};
        if (!selfrec) continue; // no on-circle roots possible; refine further

        // self-reciprocal: decide through the w = x + 1/x transform, exactly
        ZPoly q = reciprocal_transform(f);
        SturmSeq sturm(q);
        int above = sturm.count_roots_above(Rat(2));
        int middle = sturm.count_roots(Rat(-2), Rat(2));
        int real_total = sturm.count_real_roots();
        int below = real_total - middle - above;
        int complex_roots = q.deg() - real_total;
        if (above == 1 && below == 0 && complex_roots == 0) {
            if (middle >= 1) {
                // d-2 conjugates on the circle: witness is any straddling one
                for (int k = 2; k <= d; ++k) {
                    RealBall m = field->embedding_refined(k, p).abs();
                    if (!m.cmp(Rat(1))) return {PisotSalemTag::Salem, k, m};
                }
                return {PisotSalemTag::Salem, 2,
                        field->embedding_refined(2, p).abs()};
            }
            // degree-2 self-reciprocal: the conjugate is 1/lambda, inside
            return {PisotSalemTag::Pisot, 2, field->embedding_refined(2, p).abs()};
        }
        return {PisotSalemTag::Neither, max_idx, max_mod};
    }
    fail("PrecisionExhausted", "conjugate modulus comparison undecided at precision cap");
}

// ----- height -----

RealBall height(const FieldElement& elem, mpfr_prec_t prec) {
    if (elem.is_zero()) return RealBall(prec); // defined as 0
    ZPoly mp = elem.min_poly();
    RealBall acc = log(RealBall::from_rat(Rat(abs(mp.lc())), prec));
    auto roots = isolate_roots(mp, prec);
    for (const auto& r : roots) {
        ComplexBall rr = refine_root(mp, r, prec);
        RealBall m = rr.abs();
        // enclosure of max(0, log m); sound even when m straddles 1
        RealBall lo = m.lb_ball(), hi = m.ub_ball();
        RealBall contrib_lo = lo.certainly_gt(Rat(1)) ? log(lo) : RealBall(prec);
        RealBall contrib_hi = hi.certainly_gt(Rat(1)) ? log(hi) : RealBall(prec);
        acc += RealBall::from_endpoints(contrib_lo, contrib_hi);
    }
    return acc;
}

// ----- membership (contains) -----

namespace {

// K-polynomials as coefficient vectors of FieldElements (low to high)
using KPoly = std::vector<FieldElement>;

void knorm(KPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

KPoly krem(KPoly a, const KPoly& b) {
    knorm(a);
    while (a.size() >= b.size() && !a.empty()) {
        FieldElement q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            FieldElement delta = q * b[j];
            a[shift + j] = a[shift + j] - delta;
        }
        a.pop_back();
        knorm(a);
    }
    return a;
}

KPoly kgcd(KPoly a, KPoly b) {
    knorm(a);
    knorm(b);
    while (!b.empty()) {
        KPoly r = krem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    // make monic
    if (!a.empty()) {
        FieldElement inv = a.back().inverse();
        for (auto& c : a) c = c * inv;
    }
    return a;
}

// exact Lagrange interpolation through (x_i, y_i)
QPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    std::size_t n = xs.size();
    QPoly acc; // zero
    for (std::size_t i = 0; i < n; ++i) {
        QPoly basis{Rat(1)};
        Rat denom(1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            // basis *= (x - xs[j])
            QPoly next(basis.size() + 1, Rat(0));
            for (std::size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= basis[t] * xs[j];
            }
            basis = std::move(next);
            denom *= xs[i] - xs[j];
        }
        Rat scale = ys[i] / denom;
        if (acc.size() < basis.size()) acc.resize(basis.size(), Rat(0));
        for (std::size_t t = 0; t < basis.size(); ++t) acc[t] += basis[t] * scale;
    }
    return acc;
}

// Norm of g(x - s*lambda) = Res_y(f(y), g(x - s*y)), computed by interpolation.
ZPoly trager_norm(const ZPoly& f, const ZPoly& g, long s) {
    int D = f.deg() * g.deg();
    std::vector<Rat> xs, ys;
    long t = 0;
    while (static_cast<int>(xs.size()) < D + 1) {
        // g(t - s*y) as a polynomial in y
        QPoly gy{Rat(0)};
        // evaluate via Horner in u = t - s*y, where u is the linear poly {t, -s}
        QPoly u{Rat(t), Rat(-s)};
        QPoly acc{Rat(0)};
        for (int i = g.deg(); i >= 0; --i) {
            // acc = acc*u + g[i]
            QPoly next(acc.size() + u.size());
            if (!acc.empty()) {
                next.assign(acc.size() + u.size() - 1, Rat(0));
                for (std::size_t a = 0; a < acc.size(); ++a)
                    for (std::size_t b = 0; b < u.size(); ++b) next[a + b] += acc[a] * u[b];
            } else {
                next.clear();
            }
            if (next.empty()) next.resize(1, Rat(0));
            next[0] += Rat(g[static_cast<std::size_t>(i)]);
            acc = std::move(next);
        }
        gy = std::move(acc);
        Rat r = resultant(qpoly_from(f), gy);
        xs.push_back(Rat(t));
        ys.push_back(r);
        t = (t > 0) ? -t : -t + 1; // 0, 1, -1, 2, -2, ...
    }
    QPoly norm = interpolate(xs, ys);
    return clear_denominators(norm);
}

} // namespace

std::optional<FieldElement> contains(const FieldPtr& field, const ZPoly& cand_in, const Rat& lo,
                                     const Rat& hi) {
    ZPoly cand = squarefree_part(cand_in.monic_sign());
    if (cand.deg() < 1) fail("AmbiguousIsolation", "constant candidate polynomial");
    if (!(lo < hi)) fail("AmbiguousIsolation", "empty isolation interval");
    if (cand.eval(lo) == 0 || cand.eval(hi) == 0)
        fail("AmbiguousIsolation", "isolation endpoint is a root");
    {
        SturmSeq sturm(cand);
        if (sturm.count_roots(lo, hi) != 1)
            fail("AmbiguousIsolation", "interval does not isolate exactly one root");
    }
    // reduce to the irreducible factor owning the isolated root
    if (!is_irreducible(cand)) {
        auto factors = factor_squarefree(cand);
        const ZPoly* owner = nullptr;
        for (const auto& fac : factors) {
            if (fac.deg() < 1) continue;
            if (fac.eval(lo) == 0 || fac.eval(hi) == 0)
                fail("AmbiguousIsolation", "isolation endpoint is a root of a factor");
            SturmSeq st(fac);
            if (st.count_roots(lo, hi) == 1) {
                owner = &fac;
                break;
            }
        }
        if (!owner) fail("AmbiguousIsolation", "no factor owns the isolated root");
        cand = *owner;
    }

    const int d = field->degree();
    const int e = cand.deg();
    if (e == 1) {
        Rat root = -Rat(cand[0]) / Rat(cand[1]);
        if (!(lo < root && root < hi)) return std::nullopt;
        return field->from_rational(root);
    }
    if (d % e != 0 || e > d) return std::nullopt;

    // Trager: find the roots of cand inside the field
    const ZPoly& f = field->min_poly();
    std::vector<FieldElement> roots_in_field;
    for (long s = 1; s <= 24; ++s) {
        ZPoly norm = trager_norm(f, cand, s);
        if (norm.deg() != d * e) continue;
        if (gcd(norm, norm.derivative()).deg() != 0) continue; // need squarefree norm
        auto factors = factor_squarefree(norm.primitive());
        FieldElement slam = field->generator() * field->from_rational(Rat(s));
        for (const auto& F : factors) {
            if (F.deg() != d) continue;
            // G = gcd_K(cand(x), F(x + s*lambda)); roots of cand lying in K
            KPoly candK;
            for (int i = 0; i <= cand.deg(); ++i)
                candK.push_back(field->from_rational(Rat(cand[static_cast<std::size_t>(i)])));
            // F(x + s*lambda) via Horner multiplication by (x + slam)
            KPoly fk{field->from_rational(Rat(F[static_cast<std::size_t>(F.deg())]))};
            for (int i = F.deg() - 1; i >= 0; --i) {
                KPoly next(fk.size() + 1, field->zero());
                for (std::size_t t2 = 0; t2 < fk.size(); ++t2) {
                    next[t2 + 1] = next[t2 + 1] + fk[t2];
                    next[t2] = next[t2] + fk[t2] * slam;
                }
                next[0] = next[0] + field->from_rational(Rat(F[static_cast<std::size_t>(i)]));
                fk = std::move(next);
                knorm(fk);
            }
            KPoly g = kgcd(candK, fk);
            if (g.size() == 2) {
                // monic linear factor x - beta
                roots_in_field.push_back(-g[0]);
            }
        }
        // match the isolated root against the found field roots
        for (const auto& beta : roots_in_field) {
            for (mpfr_prec_t p = kDefaultPrec; p <= kPrecCap; p *= 2) {
                RealBall v = beta.embed_real(p);
                auto clo = v.cmp(lo);
                auto chi = v.cmp(hi);
                if (clo && chi) {
                    if (*clo > 0 && *chi < 0) return beta;
                    break; // certified outside
                }
            }
        }
        return std::nullopt;
    }
    fail("PrecisionExhausted", "no squarefree Trager norm found");
}

} // namespace ssm
