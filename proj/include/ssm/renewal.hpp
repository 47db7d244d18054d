#pragma once

#include "ssm/ifs.hpp"

#include <cstdint>
#include <vector>

namespace ssm {

// Lattice renewal walk Y_{i+1} = Y_i + l_{I_i} with exact step probabilities.
struct WalkSpec {
    std::vector<int> steps;  // positive, gcd 1
    std::vector<Rat> probs;  // positive, sum 1

    static WalkSpec make(std::vector<int> steps, std::vector<Rat> probs);
    // merged-pair walk of the Fourier recursion: index pair (i1, i2) collapses
    // to i2 with probability p_{i1} + p_{i2}
    static WalkSpec from_ifs_pair(const Ifs& ifs, int i1, int i2);
    Rat mean_step() const;
};

// Exact hitting probabilities P_0..P_kmax: P_0 = 1, P_k = sum_i p_i P_{k - l_i}.
std::vector<Rat> hitting_probs(const WalkSpec& spec, int k_max);

struct StoppedEstimate {
    double mean = 0;
    double stderr_mean = 0;
    std::uint64_t seed = 0;
    long n_trials = 0;
    int max_overshoot = 0; // max Y_tau - t over all trials
};

// Simulates the stopped weight W_{tau(t)} of the merged walk, accumulating the
// pair factor |p1 e(a1 x) + p2 e(a2 x)| / (p1 + p2) at each merged step.
// Deterministic per seed for any thread count.
StoppedEstimate simulate_stopped(const Ifs& ifs, int i1, int i2, double omega, int t,
                                 long n_trials, std::uint64_t seed);

// Empirical hitting frequencies from simulated walks (for cross-checks).
std::vector<double> simulate_hitting(const WalkSpec& spec, int k_max, long n_trials,
                                     std::uint64_t seed);

} // namespace ssm
