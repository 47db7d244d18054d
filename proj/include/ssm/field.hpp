#pragma once

#include "ssm/ball.hpp"
#include "ssm/poly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ssm {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Exact element of Q(lambda) as rational coordinates in the power basis
// 1, lambda, ..., lambda^(d-1). Arithmetic reduces modulo the field's
// minimal polynomial.
class FieldElement {
public:
    FieldElement() = default;

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coords() const { return coords_; }
    bool valid() const { return static_cast<bool>(field_); }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational() const; // requires is_rational()

    FieldElement operator-() const;
    FieldElement inverse() const; // DivisionByZero on zero
    FieldElement pow(long n) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // exact sign of the real embedding sigma_1
    int sign() const;

    // sigma_1 as a certified real ball with radius <= 2^-prec * max(1, |value|)
    RealBall embed_real(mpfr_prec_t prec = kDefaultPrec) const;
    // sigma_k, 1-based embedding index
    ComplexBall embed(int k, mpfr_prec_t prec = kDefaultPrec) const;

    // minimal polynomial over Q (primitive, positive leading coefficient)
    ZPoly min_poly() const;
    // rational interval isolating sigma_1 among the roots of min_poly()
    std::pair<Rat, Rat> isolating_interval() const;

    Rat trace() const;

    std::string to_string() const;

private:
    friend class NumberField;
    FieldElement(FieldPtr f, std::vector<Rat> c) : field_(std::move(f)), coords_(std::move(c)) {}

    FieldPtr field_;
    std::vector<Rat> coords_;
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator/(const FieldElement& a, const FieldElement& b);

struct RootSelector {
    enum class Kind { LargestReal, Interval } kind = Kind::LargestReal;
    Rat lo, hi;
    static RootSelector largest_real() { return {}; }
    static RootSelector interval(Rat lo, Rat hi) {
        return {Kind::Interval, std::move(lo), std::move(hi)};
    }
};

enum class PisotSalemTag { Pisot, Salem, Neither, NotAlgebraicInteger };

struct PisotSalemClass {
    PisotSalemTag tag;
    int witness_index = 0;   // embedding index of the extremal conjugate, 0 if none
    RealBall witness_modulus;
};

std::string to_string(PisotSalemTag tag);

// Real number field Q(lambda) with certified embeddings. Immutable after
// construction; precision refinement is pure (returns fresh balls).
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    // Errors: ReduciblePolynomial, NoRealRootAboveOne, AmbiguousRootSelection.
    static FieldPtr make(const ZPoly& min_poly, const RootSelector& sel = {},
                         mpfr_prec_t prec = kDefaultPrec);
    static FieldPtr make(const std::vector<Int>& coeffs, const RootSelector& sel = {},
                         mpfr_prec_t prec = kDefaultPrec);
    // Q presented as a degree-1 field
    static FieldPtr rationals();

    int degree() const { return f_.deg(); }
    const ZPoly& min_poly() const { return f_; }
    // embedding order: lambda first, then the other real embeddings, then one
    // representative per conjugate pair, then their conjugates
    const ComplexBall& embedding(int k) const { return emb_[static_cast<std::size_t>(k - 1)]; }
    ComplexBall embedding_refined(int k, mpfr_prec_t prec) const;
    int num_real_embeddings() const { return num_real_; }
    bool embedding_is_real(int k) const { return k <= num_real_; }
    int conj_partner(int k) const { return conj_partner_[static_cast<std::size_t>(k - 1)]; }
    const RealBall& generator_approx() const { return gen_approx_; }
    std::pair<Rat, Rat> generator_interval() const { return {gen_lo_, gen_hi_}; }

    FieldElement element(std::vector<Rat> coords) const;
    FieldElement from_rational(const Rat& q) const;
    FieldElement from_int(long v) const { return from_rational(Rat(v)); }
    FieldElement generator() const;
    FieldElement zero() const;
    FieldElement one() const { return from_int(1); }

    std::string to_string() const;

private:
    NumberField() = default;
    friend class FieldElement;

    ZPoly f_;
    std::vector<ComplexBall> emb_;
    std::vector<int> conj_partner_;
    int num_real_ = 0;
    RealBall gen_approx_;
    Rat gen_lo_, gen_hi_; // exact isolating interval for lambda
};

// classify_lambda: certified Pisot / Salem / Neither / NotAlgebraicInteger.
// On-circle conjugates are决 decided through the self-reciprocal structure of
// the minimal polynomial, never by numeric equality.
PisotSalemClass classify_lambda(const FieldPtr& field);

// Absolute logarithmic height per the minimal-polynomial formula
// log|lc| + sum max(0, log|root|); height(0) = 0 by convention.
RealBall height(const FieldElement& elem, mpfr_prec_t prec = kDefaultPrec);

// Exact membership test: does the real algebraic number given by
// (candidate_min_poly, isolating interval (lo, hi)) lie in the field?
// Returns its coordinates if so. Error: AmbiguousIsolation.
std::optional<FieldElement> contains(const FieldPtr& field, const ZPoly& candidate_min_poly,
                                     const Rat& lo, const Rat& hi);

} // namespace ssm
