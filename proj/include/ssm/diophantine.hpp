#pragma once

#include "ssm/field.hpp"

#include <optional>
#include <vector>

namespace ssm {

// A real number evaluable to arbitrary certified precision: a finite sum of
// rational multiples of atoms (1, pi, a field element, or a real algebraic
// number given by its minimal polynomial and an isolating interval).
class RealExpr {
public:
    static RealExpr rational(const Rat& q);
    static RealExpr pi(const Rat& coef = Rat(1));
    static RealExpr of_element(const FieldElement& e, const Rat& coef = Rat(1));
    static RealExpr algebraic(const ZPoly& min_poly, const Rat& lo, const Rat& hi,
                              const Rat& coef = Rat(1));

    RealExpr operator+(const RealExpr& o) const;
    RealExpr scaled(const Rat& c) const;

    RealBall eval(mpfr_prec_t prec) const;
    // exact value inside the given field when every atom lies in it
    std::optional<FieldElement> as_field_element(const FieldPtr& field) const;

    std::string to_string() const;

private:
    struct Term {
        enum class Kind { One, Pi, Element, Algebraic } kind;
        Rat coef;
        FieldElement elem;
        ZPoly poly;
        Rat lo, hi;
    };
    std::vector<Term> terms_;
};

struct DCQuery {
    RealExpr x;       // > 1
    FieldPtr field;   // lambda = field generator, > 1
    Rat epsilon;      // in (0, 1/2)
};

struct DCRow {
    long t;
    double value;
    Int nearest;
    double distance;
    bool counted;
};

// Number of ladder positions t with x lambda^-t >= 1 whose distance to the
// nearest integer exceeds epsilon. Every comparison is certified; equality
// with the threshold raises UndecidableAtThreshold.
long dc_count(const DCQuery& q);
std::vector<DCRow> dc_rows(const DCQuery& q);

// First column of the inverse Vandermonde of the conjugates, as exact field
// elements: the coefficients of the Lagrange basis polynomial of lambda.
std::vector<FieldElement> lagrange_first_column(const FieldPtr& field);

struct RecoveryResult {
    FieldElement beta;
    RealBall height_bound;  // computed height of beta (upper-bound ball)
    RealBall error_bound;   // certified bound on |alpha - beta|
    std::vector<double> residuals;
    int power_shift = 0;    // alpha was multiplied by lambda^shift to land in [1, lambda)
};

// Near-integer ladder recovery of a field approximant: checks
// ||alpha lambda^j|| <= epsilon on j in [n, Kn], verifies the integer
// recurrence on every window, and reconstructs beta exactly from the
// inverse-Vandermonde first column. Errors: DigitChangePresent,
// RecurrenceViolated, UndecidableAtThreshold.
RecoveryResult recover_beta(const RealExpr& alpha, const FieldPtr& field, int n, int K,
                            const Rat& epsilon);

struct LiouvilleWitness {
    FieldElement beta;
    RealBall height;
    RealBall error;
    bool satisfies; // |alpha - beta| <= exp(-H h(beta)) certified
    int n, K;
};

// Semidecision search for Liouville witnesses over a doubling schedule of
// (n, K); an empty result is evidence of non-Liouville, not proof.
// Error: AlphaInField when alpha is exactly in the field.
std::vector<LiouvilleWitness> liouville_search(const RealExpr& alpha, const FieldPtr& field,
                                               int H, int budget_n);

struct DCPairReport {
    long dc_x = 0;
    long dc_gx = 0;
    double loglog_x = 0;
    double ratio = 0;
};

// DC(x) + DC(gamma x) against log log x; x must exceed e^e and gamma must not
// lie in the field. Error: GammaInField.
DCPairReport dc_pair_bound(const Rat& x, const RealExpr& gamma, const FieldPtr& field,
                           const Rat& epsilon);

} // namespace ssm
