#pragma once

#include "ssm/field.hpp"

#include <variant>
#include <vector>

namespace ssm {

// Iterated function system of similarities x -> r^{l_i} x + a_i with exact
// contraction data in a number field and an exact probability vector.
struct Ifs {
    FieldPtr field;
    FieldElement r;                    // common base, 0 < r < 1 certified
    std::vector<int> exps;             // l_i >= 1, gcd = 1
    std::vector<FieldElement> trans;   // a_i
    std::vector<Rat> probs;            // positive, sum exactly 1

    int k() const { return static_cast<int>(exps.size()); }
    FieldElement ratio(int i) const { return r.pow(exps[static_cast<std::size_t>(i)]); }
    int max_exp() const;
    bool is_homogeneous() const; // all l_i equal
};

// Reported when no common base is found for raw contraction ratios within the
// exponent-search bound. bound_limited records that the search was capped, so
// independence is evidence rather than proof (except for rational ratios,
// which are decided exactly).
struct MultIndepWitness {
    int i = 1, j = 2;      // 1-based offending pair
    int searched_bound = 64;
    bool bound_limited = true;
};

Ifs make_ifs(FieldPtr field, FieldElement r, std::vector<int> exps,
             std::vector<FieldElement> trans, std::vector<Rat> probs);

// Detect the maximal common base of exact ratios; rescales so gcd(l) = 1.
std::variant<Ifs, MultIndepWitness> build_ifs_from_ratios(
    std::vector<FieldElement> ratios, std::vector<FieldElement> trans, std::vector<Rat> probs,
    int exp_bound = 64);

// Throwing variant: MultiplicativelyIndependent on failure.
Ifs build_ifs_from_ratios_checked(std::vector<FieldElement> ratios,
                                  std::vector<FieldElement> trans, std::vector<Rat> probs,
                                  int exp_bound = 64);

// Conjugate by a translation so that a_1 = 0.
Ifs normalize(const Ifs& ifs);

struct RewriteResult {
    Ifs ifs;
    FieldElement b; // a'_1 - a'_2 = b * a_j, b != 0
    int prime = 0;  // 0 when only relabeling was needed
};

// Rewrite so that the first two maps share an exponent (same invariant
// measure). j is the 1-based index of a map with a_j != a_1; requires a
// normalized system. Error: ExplosionLimit.
RewriteResult equal_ratio_rewrite(const Ifs& ifs, int j, long explosion_cap = 1000000);

struct Moments {
    FieldElement mean;
    FieldElement variance;
};

// Exact stationary mean/variance of the self-similar measure.
Moments moments(const Ifs& ifs);

struct Hull {
    FieldElement lo, hi;
};

// Smallest invariant interval [A, B].
Hull attractor_hull(const Ifs& ifs);

// Attractor point for a finite coding prefix (indices 0-based), as a certified
// ball covering every completion of the prefix.
RealBall point(const Ifs& ifs, const std::vector<int>& prefix, mpfr_prec_t prec = kDefaultPrec);

// Exact partial sum of the prefix and the total contraction exponent.
std::pair<FieldElement, int> prefix_sum(const Ifs& ifs, const std::vector<int>& prefix);

// Exact conjugation x -> scale * x + shift (scale != 0) for invariance tests.
Ifs conjugate(const Ifs& ifs, const FieldElement& scale, const FieldElement& shift);

} // namespace ssm
