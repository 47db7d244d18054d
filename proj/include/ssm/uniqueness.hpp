#pragma once

#include "ssm/ifs.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ssm {

enum class VerdictTag { Uniqueness, Multiplicity, Unknown };

enum class CertificateKind {
    MultiplicativeIndependence,
    NotPisot,
    TranslationNotInField,
    PositiveMeasureInterval,
    DimensionBelowOnePisotRational,
    BoundLimited,
};

std::string to_string(VerdictTag tag);
std::string to_string(CertificateKind kind);

// Classification outcome with a machine-checkable certificate. A Uniqueness
// verdict always carries the Pisot witness for r^-1, the exact coordinates of
// every rescaled translation inside Q(r), and the zero-measure witness
// sum r^{l_i} < 1.
struct Verdict {
    VerdictTag tag = VerdictTag::Unknown;
    CertificateKind certificate = CertificateKind::BoundLimited;
    std::string note;

    FieldPtr lambda_field;                         // Q(r^-1) presentation, when reached
    std::optional<PisotSalemClass> pisot;          // classification of r^-1
    std::vector<FieldElement> subfield_coords;     // a_j / a_{j0} in Q(r)
    std::optional<Rat> ratio_sum_lb, ratio_sum_ub; // enclosure of sum r^{l_i}
    std::optional<MultIndepWitness> indep;
    int failing_index = 0; // 1-based translation index for TranslationNotInField
};

Verdict classify_uniqueness(const Ifs& ifs);
Verdict classify_uniqueness(const std::variant<Ifs, MultIndepWitness>& built);

struct GammaWitness {
    FieldElement gamma;
    double R = 1;
    double C_used = 1;
    RealBall abs_gamma;     // |gamma| <= C R^{d-1} certified
    RealBall max_conj_abs;  // max_{k>=2} |sigma_k(gamma)| <= C/R certified
    int power = -1;         // m when the fast path gamma = lambda^m was used
};

// Algebraic-integer witness in the Minkowski box {|sigma_1| <= C R^{d-1},
// |sigma_k| <= C/R}; tries the Pisot power fast path, then LLL-reduced
// lattice enumeration. Errors: NotPisot, SearchExhausted.
GammaWitness gamma_search(const FieldPtr& field, double R, double C = 0);

struct SDecomposition {
    FieldElement s1;        // exact: every term with negative exponent
    FieldElement s2_prefix; // exact part of S2 carried by the prefix
    int tail_exp = 0;       // S2 tail lies in r^{tail_exp} * hull
    RealBall s1_ball;
    RealBall s2_ball;       // prefix part plus tail enclosure
};

// Split r^-N S(omega) by exponent sign. The prefix must determine S1 fully
// (sum of its exponents >= N). Error: PrefixTooShort.
SDecomposition s_decompose(const Ifs& ifs, const std::vector<int>& prefix, int N,
                           mpfr_prec_t prec = kDefaultPrec);

// h(x) = (x, r^-1 x, ..., r^-(d-1) x) mod Z^d, coordinates in [0, 1).
std::vector<RealBall> torus_embed(const FieldPtr& field, const RealBall& x);

struct ConfinementReport {
    int grid = 0;
    long samples_per_n = 0;
    std::vector<int> n_values;
    std::vector<double> fractions; // fraction of grid^d torus cells hit per N
    std::uint64_t seed = 0;
};

// Samples attractor points and reports which torus cells h(gamma r^-N S)
// lands in; the empirical counterpart of the confinement condition.
ConfinementReport confinement_report(const Ifs& ifs, const FieldElement& gamma,
                                     const std::vector<int>& n_values, int grid,
                                     long samples_per_n, std::uint64_t seed);

} // namespace ssm
