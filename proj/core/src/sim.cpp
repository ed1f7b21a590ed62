#include "noma/sim.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "noma/csv.hpp"
#include "noma/errors.hpp"
#include "noma/pam.hpp"

namespace noma {
namespace {

constexpr std::uint64_t kChunkSymbols = 4096;

// Level index of the nearest point of an N-PAM grid with unit spacing 2; an exact
// midpoint resolves to the lower level.
int quantize_level(double value, int n) {
    const double q = (value + (n - 1)) / 2.0;
    const double idx = std::ceil(q - 0.5);
    return static_cast<int>(std::clamp(idx, 0.0, static_cast<double>(n - 1)));
}

int popcount_diff(std::uint32_t a, std::uint32_t b) { return std::popcount(a ^ b); }

int level_bit_errors(int sent_index, int detected_index) {
    return popcount_diff(gray_encode(static_cast<std::uint32_t>(sent_index)),
                         gray_encode(static_cast<std::uint32_t>(detected_index)));
}

int uniform_level(int m, Rng& rng) {
    if (m <= 1) return 0;
    return std::uniform_int_distribution<int>(0, m - 1)(rng);
}

cplx derotation(const cplx& h) { return std::conj(h) / std::abs(h); }

struct Orthogonal {
    cplx x;
    int i = 0;
    int iq = 0;
};

// One user alone in its own slot or sub-band with M^2-PAM per branch at full power.
Orthogonal orthogonal_symbol(Rng& rng, const cplx& h, double power, int m) {
    Orthogonal o;
    if (m < 2) return o;
    const int n = m * m;
    o.i = uniform_level(n, rng);
    o.iq = uniform_level(n, rng);
    o.x = max_weight(power, n) * cplx(pam_amplitude(o.i, n), pam_amplitude(o.iq, n)) * derotation(h);
    return o;
}

TrialCounts receive_orthogonal(const cplx& y, const cplx& h, double power, int m, int i, int iq) {
    TrialCounts out;
    if (m < 2) return out;
    const int n = m * m;
    const double unit = std::abs(h) * max_weight(power, n);
    const cplx r = y / unit;
    out.bits = 2u * static_cast<unsigned>(bits_per_level(n));
    out.errors = static_cast<std::uint64_t>(level_bit_errors(i, quantize_level(r.real(), n)) +
                                            level_bit_errors(iq, quantize_level(r.imag(), n)));
    return out;
}

int psk_size(int m) { return m * m; }

double psk_amplitude(double power, int m) { return m > 1 ? std::sqrt(power) : 0.0; }

TrialCounts receive_noma(const cplx& z, const Transmission& t, const ChannelRealization& channel,
                         const ConstellationPair& sizes) {
    const auto hat = detect_noma(z, t.design, channel, sizes);
    TrialCounts out;
    out.bits = 2u * static_cast<unsigned>(bits_per_level(sizes.m1) + bits_per_level(sizes.m2));
    out.errors = static_cast<std::uint64_t>(level_bit_errors(t.levels[0], pam_index(hat.s1, sizes.m1)) +
                                            level_bit_errors(t.levels[1], pam_index(hat.s1q, sizes.m1)) +
                                            level_bit_errors(t.levels[2], pam_index(hat.s2, sizes.m2)) +
                                            level_bit_errors(t.levels[3], pam_index(hat.s2q, sizes.m2)));
    return out;
}

TrialCounts receive_cr_noma(const cplx& z, const Transmission& t, const ChannelRealization& channel,
                            const SimConfig& config) {
    const int n1 = psk_size(config.sizes.m1);
    const int n2 = psk_size(config.sizes.m2);
    const auto psk1 = psk_points(n1, false);
    const auto psk2 = psk_points(n2, true);
    const double g1 = std::abs(channel.h1) * psk_amplitude(config.powers.p1, config.sizes.m1);
    const double g2 = std::abs(channel.h2) * psk_amplitude(config.powers.p2, config.sizes.m2);

    // The sum of two PSK sets has no lattice structure, so search all pairs.
    std::vector<cplx> candidates;
    candidates.reserve(static_cast<std::size_t>(n1 * n2));
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            candidates.push_back(g1 * psk1[static_cast<std::size_t>(i)] + g2 * psk2[static_cast<std::size_t>(j)]);
        }
    }
    const auto best = static_cast<int>(detect_ml_joint(z, candidates));

    TrialCounts out;
    out.bits = static_cast<unsigned>(bits_per_level(n1) + bits_per_level(n2));
    out.errors = static_cast<std::uint64_t>(level_bit_errors(t.levels[0], best / n2) +
                                            level_bit_errors(t.levels[1], best % n2));
    return out;
}

std::uint64_t scheme_id(Scheme s) { return static_cast<std::uint64_t>(s); }

}  // namespace

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::kNoma: return "noma";
        case Scheme::kTdma: return "tdma";
        case Scheme::kFdma: return "fdma";
        case Scheme::kCrNoma: return "cr_noma";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "noma") return Scheme::kNoma;
    if (name == "tdma") return Scheme::kTdma;
    if (name == "fdma") return Scheme::kFdma;
    if (name == "cr_noma") return Scheme::kCrNoma;
    throw ConfigInvalidError("unknown scheme '" + name + "'");
}

void validate(const SimConfig& config) {
    if (config.snr_db_grid.empty()) throw ConfigInvalidError("snr grid is empty");
    for (double s : config.snr_db_grid) {
        if (!std::isfinite(s)) throw ConfigInvalidError("snr grid has a non-finite entry");
    }
    if (config.symbols_per_point < 1) throw ConfigInvalidError("symbols_per_point must be >= 1");
    if (config.fading_block < 1) throw ConfigInvalidError("fading_block must be >= 1");
    if (config.schemes.empty()) throw ConfigInvalidError("no schemes selected");
    if (std::set<Scheme>(config.schemes.begin(), config.schemes.end()).size() != config.schemes.size()) {
        throw ConfigInvalidError("duplicate scheme");
    }
    if (!is_power_of_two(config.sizes.m1) || !is_power_of_two(config.sizes.m2)) {
        throw ConfigInvalidError("simulation needs power-of-two sizes for Gray labelling");
    }
    if (config.sizes.m1 == 1 && config.sizes.m2 == 1) throw ConfigInvalidError("both users silent");
    if (config.sizes.m1 > 64 || config.sizes.m2 > 64) throw ConfigInvalidError("sizes above 64 are not supported");
    const auto& f = config.fading;
    if (!(f.delta1_sq > 0) || !(f.delta2_sq > 0) || !std::isfinite(f.delta1_sq) || !std::isfinite(f.delta2_sq)) {
        throw ConfigInvalidError("fading variances must be positive and finite");
    }
}

double noise_variance(double snr_db) { return 1.0 / (2.0 * std::pow(10.0, snr_db / 10.0)); }

cplx sample_noise(double sigma2, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(sigma2));
    const double re = gauss(rng);
    const double im = gauss(rng);
    return {re, im};
}

cplx sample_rayleigh(double var2, Rng& rng) {
    if (!(var2 > 0)) throw ValidationError("fading variance must be positive");
    std::normal_distribution<double> gauss(0.0, std::sqrt(var2));
    const double re = gauss(rng);
    const double im = gauss(rng);
    return {re, im};
}

std::pair<cplx, cplx> modulate_noma(int s1, int s1q, int s2, int s2q, const DesignResult& design,
                                    const ChannelRealization& channel) {
    const cplx x1 = design.w1 * cplx(s1, s1q) * derotation(channel.h1);
    const cplx x2 = design.w2 * cplx(s2, s2q) * derotation(channel.h2);
    return {x1, x2};
}

NomaSymbols detect_noma(cplx z, const DesignResult& design, const ChannelRealization& channel,
                        const ConstellationPair& sizes) {
    const int m1 = sizes.m1;
    const int m2 = sizes.m2;
    const int grid = m1 * m2;
    // User 1 is the coarse (outer) layer in cases 1-2 and whenever user 2 is silent.
    const bool user1_outer = design.regime == DesignCase::kCase1 || design.regime == DesignCase::kCase2 ||
                             design.regime == DesignCase::kUser1Silent;
    const double unit = user1_outer && m2 >= 2 ? std::abs(channel.h2) * design.w2 : std::abs(channel.h1) * design.w1;

    auto split = [&](double v) -> std::pair<int, int> {
        const int t = quantize_level(v / unit, grid);
        if (user1_outer) return {t / m2, t % m2};
        return {t % m1, t / m1};
    };
    const auto [i1, i2] = split(z.real());
    const auto [i1q, i2q] = split(z.imag());
    return {pam_amplitude(i1, m1), pam_amplitude(i1q, m1), pam_amplitude(i2, m2), pam_amplitude(i2q, m2)};
}

std::size_t detect_ml_joint(cplx z, std::span<const cplx> candidates) {
    if (candidates.empty()) throw ValidationError("empty candidate set");
    std::size_t best = 0;
    double best_d = std::norm(z - candidates[0]);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const double d = std::norm(z - candidates[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::size_t noma_candidate_index(const NomaSymbols& a, const ConstellationPair& sizes) {
    const auto m1 = static_cast<std::size_t>(sizes.m1);
    const auto m2 = static_cast<std::size_t>(sizes.m2);
    const auto i1 = static_cast<std::size_t>(pam_index(a.s1, sizes.m1));
    const auto i1q = static_cast<std::size_t>(pam_index(a.s1q, sizes.m1));
    const auto i2 = static_cast<std::size_t>(pam_index(a.s2, sizes.m2));
    const auto i2q = static_cast<std::size_t>(pam_index(a.s2q, sizes.m2));
    return ((i1 * m1 + i1q) * m2 + i2) * m2 + i2q;
}

NomaSymbols noma_candidate_symbols(std::size_t index, const ConstellationPair& sizes) {
    const auto m1 = static_cast<std::size_t>(sizes.m1);
    const auto m2 = static_cast<std::size_t>(sizes.m2);
    const auto i2q = static_cast<int>(index % m2);
    index /= m2;
    const auto i2 = static_cast<int>(index % m2);
    index /= m2;
    const auto i1q = static_cast<int>(index % m1);
    const auto i1 = static_cast<int>(index / m1);
    return {pam_amplitude(i1, sizes.m1), pam_amplitude(i1q, sizes.m1), pam_amplitude(i2, sizes.m2),
            pam_amplitude(i2q, sizes.m2)};
}

std::vector<cplx> noma_candidates(const DesignResult& design, const ChannelRealization& channel,
                                  const ConstellationPair& sizes) {
    const std::size_t total = static_cast<std::size_t>(sizes.m1) * sizes.m1 * sizes.m2 * sizes.m2;
    std::vector<cplx> out;
    out.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        const auto s = noma_candidate_symbols(idx, sizes);
        const auto [x1, x2] = modulate_noma(s.s1, s.s1q, s.s2, s.s2q, design, channel);
        out.push_back(channel.h1 * x1 + channel.h2 * x2);
    }
    return out;
}

std::vector<cplx> psk_points(int n, bool rotated) {
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(n));
    const double offset = rotated ? std::numbers::pi : 0.0;
    for (int k = 0; k < n; ++k) out.push_back(std::polar(1.0, (2.0 * std::numbers::pi * k + offset) / n));
    return out;
}

Transmission transmit(Scheme scheme, Rng& rng, const ChannelRealization& channel, const SimConfig& config) {
    const auto& sizes = config.sizes;
    Transmission t;
    switch (scheme) {
        case Scheme::kNoma: {
            t.design = design_weights(channel, config.powers, sizes);
            t.levels = {uniform_level(sizes.m1, rng), uniform_level(sizes.m1, rng), uniform_level(sizes.m2, rng),
                        uniform_level(sizes.m2, rng)};
            std::tie(t.x1, t.x2) =
                modulate_noma(pam_amplitude(t.levels[0], sizes.m1), pam_amplitude(t.levels[1], sizes.m1),
                              pam_amplitude(t.levels[2], sizes.m2), pam_amplitude(t.levels[3], sizes.m2), t.design,
                              channel);
            return t;
        }
        case Scheme::kTdma:
        case Scheme::kFdma: {
            const auto u1 = orthogonal_symbol(rng, channel.h1, config.powers.p1, sizes.m1);
            const auto u2 = orthogonal_symbol(rng, channel.h2, config.powers.p2, sizes.m2);
            t.x1 = u1.x;
            t.x2 = u2.x;
            t.levels = {u1.i, u1.iq, u2.i, u2.iq};
            return t;
        }
        case Scheme::kCrNoma: {
            const int n1 = psk_size(sizes.m1);
            const int n2 = psk_size(sizes.m2);
            t.levels = {uniform_level(n1, rng), uniform_level(n2, rng), 0, 0};
            t.x1 = psk_amplitude(config.powers.p1, sizes.m1) * psk_points(n1, false)[static_cast<std::size_t>(t.levels[0])] *
                   derotation(channel.h1);
            t.x2 = psk_amplitude(config.powers.p2, sizes.m2) * psk_points(n2, true)[static_cast<std::size_t>(t.levels[1])] *
                   derotation(channel.h2);
            return t;
        }
    }
    throw InvariantViolation("unhandled scheme");
}

TrialCounts run_scheme_symbol(Scheme scheme, Rng& rng, const ChannelRealization& channel, double snr_db,
                              const SimConfig& config) {
    const double sigma2 = noise_variance(snr_db);
    const auto t = transmit(scheme, rng, channel, config);
    switch (scheme) {
        case Scheme::kNoma: {
            const cplx z = channel.h1 * t.x1 + channel.h2 * t.x2 + sample_noise(sigma2, rng);
            return receive_noma(z, t, channel, config.sizes);
        }
        case Scheme::kTdma:
        case Scheme::kFdma: {
            // FDMA halves each user's bandwidth and with it the noise power.
            const double s2 = scheme == Scheme::kFdma ? sigma2 / 2.0 : sigma2;
            const cplx y1 = channel.h1 * t.x1 + sample_noise(s2, rng);
            const cplx y2 = channel.h2 * t.x2 + sample_noise(s2, rng);
            TrialCounts out = receive_orthogonal(y1, channel.h1, config.powers.p1, config.sizes.m1, t.levels[0], t.levels[1]);
            out += receive_orthogonal(y2, channel.h2, config.powers.p2, config.sizes.m2, t.levels[2], t.levels[3]);
            return out;
        }
        case Scheme::kCrNoma: {
            const cplx z = channel.h1 * t.x1 + channel.h2 * t.x2 + sample_noise(sigma2, rng);
            return receive_cr_noma(z, t, channel, config);
        }
    }
    throw InvariantViolation("unhandled scheme");
}

std::vector<BerCurve> simulate_ber(const SimConfig& config) {
    validate(config);
    const std::uint64_t block = config.fading_block;
    // Chunks hold whole fading blocks and each owns an RNG substream keyed by
    // (seed, scheme, snr index, chunk index).
    const std::uint64_t chunk_len = block * ((kChunkSymbols + block - 1) / block);
    const std::uint64_t chunks = (config.symbols_per_point + chunk_len - 1) / chunk_len;
    unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));

    std::vector<BerCurve> curves;
    for (const Scheme scheme : config.schemes) {
        BerCurve curve;
        curve.scheme = scheme;
        for (std::size_t si = 0; si < config.snr_db_grid.size(); ++si) {
            const double snr_db = config.snr_db_grid[si];
            std::vector<TrialCounts> per_chunk(chunks);

            auto run_chunk = [&](std::uint64_t c) {
                std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                                  static_cast<std::uint32_t>(scheme_id(scheme)), static_cast<std::uint32_t>(si),
                                  static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
                Rng rng(seq);
                const std::uint64_t begin = c * chunk_len;
                const std::uint64_t end = std::min(config.symbols_per_point, begin + chunk_len);
                TrialCounts acc;
                std::optional<ChannelRealization> channel;
                for (std::uint64_t t = begin; t < end; ++t) {
                    if ((t - begin) % block == 0) {
                        const cplx h1 = sample_rayleigh(config.fading.delta1_sq, rng);
                        const cplx h2 = sample_rayleigh(config.fading.delta2_sq, rng);
                        channel.emplace(h1, h2);
                    }
                    acc += run_scheme_symbol(scheme, rng, *channel, snr_db, config);
                }
                per_chunk[c] = acc;
            };

            if (threads <= 1) {
                for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
            } else {
                std::atomic<std::uint64_t> next{0};
                std::vector<std::jthread> pool;
                for (unsigned w = 0; w < threads; ++w) {
                    pool.emplace_back([&] {
                        for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
                    });
                }
            }

            TrialCounts total;
            for (const auto& c : per_chunk) total += c;
            BerPoint p;
            p.snr_db = snr_db;
            p.bits = total.bits;
            p.errors = total.errors;
            p.ber = total.bits ? static_cast<double>(total.errors) / static_cast<double>(total.bits) : 0.0;
            p.ci_halfwidth = wilson_halfwidth(total.errors, total.bits);
            curve.points.push_back(p);
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

double wilson_halfwidth(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) return 0.0;
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    return z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / (1.0 + z * z / n);
}

std::string ber_csv_header() { return "scheme,snr_db,bits,errors,ber,ci_halfwidth"; }

std::string to_csv(const std::vector<BerCurve>& curves) {
    std::ostringstream os;
    os << ber_csv_header() << '\n';
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            os << to_string(c.scheme) << ',' << format_double(p.snr_db) << ',' << p.bits << ',' << p.errors << ','
               << format_double(p.ber) << ',' << format_double(p.ci_halfwidth) << '\n';
        }
    }
    return os.str();
}

}  // namespace noma
