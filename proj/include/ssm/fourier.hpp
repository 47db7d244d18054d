#pragma once

#include "ssm/ifs.hpp"

#include <cstdint>
#include <vector>

namespace ssm {

inline const Rat kDefaultDelta = Rat(1, 1024); // 2^-10 scale-ladder cutoff

// One-step phase factor sum p_i e(a_i omega).
ComplexBall phase_sum(const Ifs& ifs, const RealBall& omega);

// Certified evaluation of the Fourier transform mu_hat(omega) by the dynamic
// program over the scale ladder; the base case centers at e(omega * mean)
// with a second-order error in the cutoff.
ComplexBall mu_hat(const Ifs& ifs, const RealBall& omega, const Rat& delta = kDefaultDelta,
                   mpfr_prec_t prec = kDefaultPrec);
ComplexBall mu_hat(const Ifs& ifs, const Rat& omega, const Rat& delta = kDefaultDelta,
                   mpfr_prec_t prec = kDefaultPrec);

// Product oracle for homogeneous systems (all exponents equal):
// mu_hat = prod_n phase_sum(r^n omega), truncated with the same tail ball.
ComplexBall mu_hat_product(const Ifs& ifs, const RealBall& omega,
                           const Rat& delta = kDefaultDelta, mpfr_prec_t prec = kDefaultPrec);

struct McEstimate {
    double re = 0, im = 0;
    double stderr_re = 0, stderr_im = 0;
    std::uint64_t seed = 0;
    long n_samples = 0;
    double abs() const;
    double stderr_abs() const { return stderr_re + stderr_im; }
};

// Independent Monte-Carlo estimate of mu_hat = E[e(omega S)]; deterministic
// for a given seed, for any thread count.
McEstimate mu_hat_mc(const Ifs& ifs, double omega, long n_samples, std::uint64_t seed);

// u(omega) = 1 - |p_i1 e(a_i1 omega) + p_i2 e(a_i2 omega)| / (p_i1 + p_i2),
// clipped to [0, 1]. Pair indices are 1-based. Error: UnequalExponents.
RealBall u_factor(const Ifs& ifs, int i1, int i2, const RealBall& omega);

// sum_{j > C} || a_diff * omega * r^j ||^2 with the geometric tail folded
// into the radius once terms certifiably stay below 1/2.
RealBall decay_sum(const RealBall& a_diff, const RealBall& r, const RealBall& omega, double C,
                   double tol);

struct DecayReport {
    Rat omega;
    RealBall mu_re, mu_im;
    RealBall mu_hat_abs;
    RealBall sum_S;
    RealBall bound_exp;  // exp(-C^-1 sum_S)
    RealBall bound_prod; // prod_{n>=C} (1 - C^-1 u(r^n omega))
    double C_used = 0;
};

// Errors: UnequalExponents, IdenticalTranslations.
DecayReport bounds(const Ifs& ifs, int i1, int i2, const Rat& omega, double C,
                   const Rat& delta = kDefaultDelta, mpfr_prec_t prec = kDefaultPrec);

enum class BoundKind { Exp, Prod };

struct Calibration {
    double C_hat = 0;
    BoundKind kind = BoundKind::Exp;
    int grid_size = 0;
};

// Smallest C (doubling then bisection, 1% resolution) whose bound certifiably
// dominates the certified upper bound of |mu_hat| on every grid point.
// Error: CapExceeded when C would pass 2^20.
Calibration calibrate(const Ifs& ifs, int i1, int i2, const std::vector<Rat>& omega_grid,
                      BoundKind kind, const Rat& delta = kDefaultDelta,
                      mpfr_prec_t prec = kDefaultPrec, double cap = 1048576.0);

// Whether bound(C) >= |mu_hat| holds certifiably at every grid point.
bool calibration_holds(const Ifs& ifs, int i1, int i2, const std::vector<Rat>& omega_grid,
                       BoundKind kind, double C, const Rat& delta = kDefaultDelta,
                       mpfr_prec_t prec = kDefaultPrec);

// Log-spaced grid in [lo, hi] with exact rational nodes.
std::vector<Rat> log_grid(double lo, double hi, int points);

// Grid sweep producing one DecayReport per omega. The parallel kernel fans
// out with OpenMP (aggregation ordered by index); the serial variant is the
// reference implementation the tests compare against.
std::vector<DecayReport> fourier_scan(const Ifs& ifs, int i1, int i2,
                                      const std::vector<Rat>& omegas, double C,
                                      const Rat& delta = kDefaultDelta,
                                      mpfr_prec_t prec = kDefaultPrec);
std::vector<DecayReport> fourier_scan_serial(const Ifs& ifs, int i1, int i2,
                                             const std::vector<Rat>& omegas, double C,
                                             const Rat& delta = kDefaultDelta,
                                             mpfr_prec_t prec = kDefaultPrec);

} // namespace ssm
