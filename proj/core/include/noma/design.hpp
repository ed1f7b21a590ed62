#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "noma/farey.hpp"

namespace noma {

/// Complex channel gains of the two users. Both magnitudes must be positive; a
/// user is made silent through its constellation size, never through a zero gain.
struct ChannelRealization {
    std::complex<double> h1;
    std::complex<double> h2;

    ChannelRealization(std::complex<double> gain1, std::complex<double> gain2);
    /// Real, non-negative gains (zero phase).
    static ChannelRealization from_magnitudes(double abs1, double abs2) { return {abs1, abs2}; }
};

struct PowerBudget {
    double p1;
    double p2;

    PowerBudget(double power1, double power2);
};

/// Per-branch PAM sizes. Each is 1 (silent user) or even.
struct ConstellationPair {
    int m1;
    int m2;

    ConstellationPair(int size1, int size2);
    bool both_active() const noexcept { return m1 >= 2 && m2 >= 2; }
};

/// Channel magnitudes folded with each user's largest admissible PAM weight.
struct NormalizedChannel {
    double h1;
    double h2;
};

enum class DesignCase : int {
    kCase1 = 1,  // user 2 at full power, user 1 outer layer (gain ratio M2)
    kCase2 = 2,  // user 1 at full power, user 1 outer layer (gain ratio M2)
    kCase3 = 3,  // user 2 at full power, user 2 outer layer (gain ratio 1/M1)
    kCase4 = 4,  // user 1 at full power, user 2 outer layer (gain ratio 1/M1)
    kUser1Silent = 5,
    kUser2Silent = 6,
};

std::string to_string(DesignCase c);

struct DesignResult {
    double w1 = 0;        // per-branch weights applied to the unit PAM symbols
    double w2 = 0;
    double w1_tilde = 0;  // weights as a fraction of the power-limited maximum
    double w2_tilde = 0;
    double d_noma = 0;    // half the smallest gap of the received sum-constellation
    DesignCase regime = DesignCase::kCase1;
    /// |h1| w1 / (|h2| w2): exactly M2 in cases 1-2, 1/M1 in cases 3-4.
    std::optional<double> gain_ratio;

    bool both_active() const noexcept { return w1 > 0 && w2 > 0; }
};

struct DifferentialPair {
    int m;  // difference index of user 2, |m| <= M2 - 1
    int n;  // difference index of user 1, |n| <= M1 - 1
    friend bool operator==(const DifferentialPair&, const DifferentialPair&) = default;
};

struct MinDistance {
    double distance = 0;
    /// Minimizers with one representative per sign pair (n > 0, or n == 0 and m > 0).
    std::vector<DifferentialPair> argmin;
};

struct IntervalOptimum {
    double g = 0;
    double w1_tilde = 0;
    double w2_tilde = 0;
};

struct Thresholds {
    // Breakpoints on |h2|/|h1| between the four design regimes.
    double t1;
    double t2;
    double t3;
};

/// sqrt(3P / (2(M^2 - 1))): the PAM weight that spends the whole per-branch power.
double max_weight(double power, int m);

/// |h_k| scaled by max_weight. Throws SilentUserError if either size is 1.
NormalizedChannel normalize(const ChannelRealization& channel, const PowerBudget& power,
                            const ConstellationPair& sizes);

/// d(m, n) = | h1~ w1~ n - h2~ w2~ m |
double pair_distance(double w1t, double w2t, const NormalizedChannel& nc, DifferentialPair p) noexcept;

/// Exhaustive minimum of d(m, n) over all non-zero differential pairs.
MinDistance min_distance_bruteforce(double w1t, double w2t, const NormalizedChannel& nc,
                                    const ConstellationPair& sizes);

/// Same minimum through P^{M1-1}_{M2-1}: locate the ratio h2~w2~/(h1~w1~), then pick
/// the interval endpoint on the ratio's side of the mediant.
MinDistance min_distance_farey(double w1t, double w2t, const NormalizedChannel& nc,
                               const PunchedFareySequence& seq);
MinDistance min_distance_farey(double w1t, double w2t, const NormalizedChannel& nc,
                               const ConstellationPair& sizes);

/// Best weights with the ratio confined to interval k of P^{M1-1}_{M2-1}.
IntervalOptimum interval_optimum(std::size_t k, const PunchedFareySequence& seq, const NormalizedChannel& nc);

/// Maximum of interval_optimum over every interval.
IntervalOptimum best_interval_optimum(const PunchedFareySequence& seq, const NormalizedChannel& nc);

Thresholds design_thresholds(const PowerBudget& power, const ConstellationPair& sizes);

/// Closed-form max-min weights. One user may be silent (size 1).
DesignResult design_weights(const ChannelRealization& channel, const PowerBudget& power,
                            const ConstellationPair& sizes);

/// Noise-free per-branch received amplitudes |h1|w1 s1 + |h2|w2 s2, ascending.
std::vector<double> sum_constellation(const DesignResult& design, const ChannelRealization& channel,
                                      const ConstellationPair& sizes);

/// Minimum distance of two-slot TDMA with M_k^2-PAM per branch; silent users excluded.
double oma_min_distance(const ChannelRealization& channel, const PowerBudget& power,
                        const ConstellationPair& sizes);

struct SuperiorityReport {
    double d_noma;
    double d_oma;
    double ratio;
};

/// Throws SuperiorityViolated unless d_noma > d_oma.
SuperiorityReport verify_superiority(const ChannelRealization& channel, const PowerBudget& power,
                                     const ConstellationPair& sizes);

struct GridSearchResult {
    double best_distance = 0;
    double w1_tilde = 0;
    double w2_tilde = 0;
    std::size_t points = 0;
};

/// Brute-force max-min over the grid {i/steps}^2, i = 1..steps, scoring each point
/// with the exhaustive pair minimum. Independent of the Farey machinery.
GridSearchResult grid_search_design(const NormalizedChannel& nc, const ConstellationPair& sizes, int steps = 1000);

/// CSV header and row: h1_abs,h2_abs,P1,P2,M1,M2,case,w1,w2,d_noma,d_oma
std::string design_csv_header();
std::string design_csv_row(const ChannelRealization& channel, const PowerBudget& power,
                           const ConstellationPair& sizes, const DesignResult& design, double d_oma);

}  // namespace noma
