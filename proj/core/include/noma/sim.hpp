#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "noma/design.hpp"

namespace noma {

using cplx = std::complex<double>;
using Rng = std::mt19937_64;

enum class Scheme { kNoma, kTdma, kFdma, kCrNoma };

std::string to_string(Scheme s);
/// Accepts "noma", "tdma", "fdma", "cr_noma". Throws ConfigInvalidError otherwise.
Scheme scheme_from_string(const std::string& name);

/// Per-user fading variances: h_k ~ CN(0, 2 delta_k^2).
struct FadingVariances {
    double delta1_sq = 1.0;
    double delta2_sq = 1.0;
};

/// Monte Carlo settings. SNR is rho = 1 / (2 sigma^2) in dB, sigma^2 being the
/// per-branch noise variance.
struct SimConfig {
    std::vector<double> snr_db_grid{0, 5, 10, 15, 20, 25, 30, 35, 40};
    std::uint64_t symbols_per_point = 100000;
    std::uint64_t seed = 1;
    std::vector<Scheme> schemes{Scheme::kNoma, Scheme::kTdma, Scheme::kFdma, Scheme::kCrNoma};
    ConstellationPair sizes{4, 4};
    FadingVariances fading{};
    PowerBudget powers{1.0, 1.0};
    /// Symbols sharing one channel draw.
    std::uint64_t fading_block = 1;
    /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
    unsigned threads = 1;
};

/// Throws ConfigInvalidError on an empty or non-finite grid, zero symbols, a
/// non-power-of-two size, duplicate schemes or bad fading variances.
void validate(const SimConfig& config);

struct BerPoint {
    double snr_db = 0;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double ber = 0;
    double ci_halfwidth = 0;
};

struct BerCurve {
    Scheme scheme = Scheme::kNoma;
    std::vector<BerPoint> points;
};

/// Four PAM level indices carried by one complex NOMA channel use.
struct NomaSymbols {
    int s1 = 0;  // user 1 in-phase
    int s1q = 0; // user 1 quadrature
    int s2 = 0;
    int s2q = 0;
    friend bool operator==(const NomaSymbols&, const NomaSymbols&) = default;
};

struct TrialCounts {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    TrialCounts& operator+=(const TrialCounts& o) {
        bits += o.bits;
        errors += o.errors;
        return *this;
    }
};

/// Per-branch noise variance sigma^2 for an SNR in dB.
double noise_variance(double snr_db);

/// Complex AWGN with variance sigma2 on each of the real and imaginary parts.
cplx sample_noise(double sigma2, Rng& rng);

/// h ~ CN(0, 2 var2): real and imaginary parts each N(0, var2).
cplx sample_rayleigh(double var2, Rng& rng);

/// x_k = w_k (s_k + j s_k') exp(-j arg h_k), with s given as PAM amplitudes.
std::pair<cplx, cplx> modulate_noma(int s1, int s1q, int s2, int s2q, const DesignResult& design,
                                    const ChannelRealization& channel);

/// Quantization receiver: rounds each branch to the regular M1*M2-PAM sum grid and
/// splits the grid index into the two users' levels. Returns PAM amplitudes.
NomaSymbols detect_noma(cplx z, const DesignResult& design, const ChannelRealization& channel,
                        const ConstellationPair& sizes);

/// Nearest candidate by exhaustive search; ties go to the lowest index.
std::size_t detect_ml_joint(cplx z, std::span<const cplx> candidates);

/// Noise-free received points h1 x1 + h2 x2 for every symbol quadruple, indexed by
/// noma_candidate_index.
std::vector<cplx> noma_candidates(const DesignResult& design, const ChannelRealization& channel,
                                  const ConstellationPair& sizes);
std::size_t noma_candidate_index(const NomaSymbols& amplitudes, const ConstellationPair& sizes);
NomaSymbols noma_candidate_symbols(std::size_t index, const ConstellationPair& sizes);

/// Counter-rotated PSK pair used by the CR-NOMA baseline: user 1 exp(j2pi k/N1),
/// user 2 exp(j(2pi k + pi)/N2), N_k = M_k^2.
std::vector<cplx> psk_points(int n, bool rotated);

/// Signals sent in one channel use. For TDMA and FDMA x1 and x2 occupy separate
/// slots or sub-bands. levels holds the drawn level indices: (i1, i1', i2, i2') for
/// NOMA, TDMA and FDMA, (k1, k2, 0, 0) for the PSK indices of CR-NOMA.
struct Transmission {
    cplx x1;
    cplx x2;
    std::array<int, 4> levels{};
    DesignResult design;  // NOMA only
};

Transmission transmit(Scheme scheme, Rng& rng, const ChannelRealization& channel, const SimConfig& config);

/// One channel use of `scheme` with fresh symbols and noise from `rng`. For TDMA
/// and FDMA this is a two-slot frame carrying the bits of two NOMA uses.
TrialCounts run_scheme_symbol(Scheme scheme, Rng& rng, const ChannelRealization& channel, double snr_db,
                              const SimConfig& config);

/// Deterministic given config.seed, whatever config.threads is.
std::vector<BerCurve> simulate_ber(const SimConfig& config);

/// Two-sided 95% Wilson score interval half-width.
double wilson_halfwidth(std::uint64_t errors, std::uint64_t trials);

/// scheme,snr_db,bits,errors,ber,ci_halfwidth
std::string ber_csv_header();
std::string to_csv(const std::vector<BerCurve>& curves);

}  // namespace noma
