#include "ssm/renewal.hpp"

#include "ssm/error.hpp"
#include "ssm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef SSM_HAVE_OPENMP
#include <omp.h>
#endif

namespace ssm {

WalkSpec WalkSpec::make(std::vector<int> steps, std::vector<Rat> probs) {
    if (steps.empty() || steps.size() != probs.size())
        fail("InvalidArgument", "steps and probabilities must match and be nonempty");
    int g = 0;
    for (int s : steps) {
        if (s < 1) fail("InvalidArgument", "steps must be positive");
        g = std::gcd(g, s);
    }
    if (g != 1) fail("InvalidArgument", "gcd of steps must be 1");
    Rat sum = 0;
    for (const Rat& p : probs) {
        if (!(p > 0)) fail("InvalidProbabilityVector", "step probabilities must be positive");
        sum += p;
    }
    if (sum != 1) fail("InvalidProbabilityVector", "step probabilities must sum to 1");
    return {std::move(steps), std::move(probs)};
}

WalkSpec WalkSpec::from_ifs_pair(const Ifs& ifs, int i1, int i2) {
    if (i1 < 1 || i2 < 1 || i1 > ifs.k() || i2 > ifs.k() || i1 == i2)
        fail("InvalidArgument", "bad pair indices");
    if (ifs.exps[static_cast<std::size_t>(i1 - 1)] != ifs.exps[static_cast<std::size_t>(i2 - 1)])
        fail("UnequalExponents", "merged pair requires equal exponents");
    std::vector<int> steps;
    std::vector<Rat> probs;
    for (int i = 0; i < ifs.k(); ++i) {
        if (i == i1 - 1) continue; // merged into i2
        steps.push_back(ifs.exps[static_cast<std::size_t>(i)]);
        Rat p = ifs.probs[static_cast<std::size_t>(i)];
        if (i == i2 - 1) p += ifs.probs[static_cast<std::size_t>(i1 - 1)];
        probs.push_back(p);
    }
    // the removed index's exponent survives as l_{i2}, so the gcd stays 1
    return make(std::move(steps), std::move(probs));
}

Rat WalkSpec::mean_step() const {
    Rat m = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) m += Rat(steps[i]) * probs[i];
    return m;
}

std::vector<Rat> hitting_probs(const WalkSpec& spec, int k_max) {
    if (k_max < 0) fail("InvalidArgument", "k_max must be >= 0");
    std::vector<Rat> P(static_cast<std::size_t>(k_max) + 1, Rat(0));
    P[0] = 1;
    for (int k = 1; k <= k_max; ++k) {
        Rat acc = 0;
        for (std::size_t i = 0; i < spec.steps.size(); ++i) {
            int from = k - spec.steps[i];
            if (from >= 0) acc += spec.probs[i] * P[static_cast<std::size_t>(from)];
        }
        P[static_cast<std::size_t>(k)] = acc;
    }
    return P;
}

StoppedEstimate simulate_stopped(const Ifs& ifs, int i1, int i2, double omega, int t,
                                 long n_trials, std::uint64_t seed) {
    if (t < 1) fail("InvalidArgument", "t must be >= 1");
    if (n_trials < 1) fail("InvalidArgument", "n_trials must be >= 1");
    WalkSpec spec = WalkSpec::from_ifs_pair(ifs, i1, i2);

    const int n_steps = static_cast<int>(spec.steps.size());
    std::vector<double> cum(static_cast<std::size_t>(n_steps));
    {
        double acc = 0;
        for (int i = 0; i < n_steps; ++i) {
            acc += spec.probs[static_cast<std::size_t>(i)].get_d();
            cum[static_cast<std::size_t>(i)] = acc;
        }
        cum[static_cast<std::size_t>(n_steps - 1)] = 1.0;
    }
    // merged index position within the walk's step list
    int merged_pos = 0;
    {
        int pos = 0;
        for (int i = 0; i < ifs.k(); ++i) {
            if (i == i1 - 1) continue;
            if (i == i2 - 1) {
                merged_pos = pos;
                break;
            }
            ++pos;
        }
    }
    const double r = ifs.r.embed_real(64).mid_d();
    const double a1 = ifs.trans[static_cast<std::size_t>(i1 - 1)].embed_real(64).mid_d();
    const double a2 = ifs.trans[static_cast<std::size_t>(i2 - 1)].embed_real(64).mid_d();
    const double p1 = ifs.probs[static_cast<std::size_t>(i1 - 1)].get_d();
    const double p2 = ifs.probs[static_cast<std::size_t>(i2 - 1)].get_d();

    const long block_size = 2048;
    const long blocks = (n_trials + block_size - 1) / block_size;
    std::vector<double> bsum(static_cast<std::size_t>(blocks), 0.0);
    std::vector<double> bsum2(static_cast<std::size_t>(blocks), 0.0);
    std::vector<int> bover(static_cast<std::size_t>(blocks), 0);

#ifdef SSM_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long blk = 0; blk < blocks; ++blk) {
        double sum = 0, sum2 = 0;
        int over = 0;
        const long lo = blk * block_size;
        const long hi = std::min(n_trials, lo + block_size);
        for (long trial = lo; trial < hi; ++trial) {
            SplitRng rng(seed, static_cast<std::uint64_t>(trial));
            long Y = 0;
            double W = 1.0;
            while (Y < t) {
                double u = rng.next_double();
                int idx = 0;
                while (idx < n_steps - 1 && u > cum[static_cast<std::size_t>(idx)]) ++idx;
                long Yprev = Y;
                Y += spec.steps[static_cast<std::size_t>(idx)];
                if (idx == merged_pos) {
                    // w_2(X_j) with r^{-l_2} X_j = r^{Y_{j-1}} omega
                    double x = std::pow(r, static_cast<double>(Yprev)) * omega;
                    double c1 = std::cos(2.0 * M_PI * a1 * x), s1 = std::sin(2.0 * M_PI * a1 * x);
                    double c2 = std::cos(2.0 * M_PI * a2 * x), s2 = std::sin(2.0 * M_PI * a2 * x);
                    double w2 = std::hypot(p1 * c1 + p2 * c2, p1 * s1 + p2 * s2) / (p1 + p2);
                    W *= w2;
                }
            }
            over = std::max(over, static_cast<int>(Y - t));
            sum += W;
            sum2 += W * W;
        }
        bsum[static_cast<std::size_t>(blk)] = sum;
        bsum2[static_cast<std::size_t>(blk)] = sum2;
        bover[static_cast<std::size_t>(blk)] = over;
    }

    double sum = 0, sum2 = 0;
    int over = 0;
    for (long blk = 0; blk < blocks; ++blk) {
        sum += bsum[static_cast<std::size_t>(blk)];
        sum2 += bsum2[static_cast<std::size_t>(blk)];
        over = std::max(over, bover[static_cast<std::size_t>(blk)]);
    }
    StoppedEstimate est;
    est.seed = seed;
    est.n_trials = n_trials;
    est.max_overshoot = over;
    const double n = static_cast<double>(n_trials);
    est.mean = sum / n;
    double var = std::max(0.0, sum2 / n - est.mean * est.mean);
    est.stderr_mean = std::sqrt(var / n);
    return est;
}

std::vector<double> simulate_hitting(const WalkSpec& spec, int k_max, long n_trials,
                                     std::uint64_t seed) {
    const int n_steps = static_cast<int>(spec.steps.size());
    std::vector<double> cum(static_cast<std::size_t>(n_steps));
    {
        double acc = 0;
        for (int i = 0; i < n_steps; ++i) {
            acc += spec.probs[static_cast<std::size_t>(i)].get_d();
            cum[static_cast<std::size_t>(i)] = acc;
        }
        cum[static_cast<std::size_t>(n_steps - 1)] = 1.0;
    }
    std::vector<long> hits(static_cast<std::size_t>(k_max) + 1, 0);
    for (long trial = 0; trial < n_trials; ++trial) {
        SplitRng rng(seed, static_cast<std::uint64_t>(trial));
        long Y = 0;
        std::vector<bool> seen(static_cast<std::size_t>(k_max) + 1, false);
        seen[0] = true;
        while (Y < k_max) {
            double u = rng.next_double();
            int idx = 0;
            while (idx < n_steps - 1 && u > cum[static_cast<std::size_t>(idx)]) ++idx;
            Y += spec.steps[static_cast<std::size_t>(idx)];
            if (Y <= k_max) seen[static_cast<std::size_t>(Y)] = true;
        }
        for (int k2 = 0; k2 <= k_max; ++k2)
            if (seen[static_cast<std::size_t>(k2)]) ++hits[static_cast<std::size_t>(k2)];
    }
    std::vector<double> freq(static_cast<std::size_t>(k_max) + 1);
    for (int k2 = 0; k2 <= k_max; ++k2)
        freq[static_cast<std::size_t>(k2)] =
            static_cast<double>(hits[static_cast<std::size_t>(k2)]) / static_cast<double>(n_trials);
    return freq;
}

} // namespace ssm
