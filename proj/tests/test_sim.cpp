#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "noma/design.hpp"
#include "noma/errors.hpp"
#include "noma/pam.hpp"
#include "noma/sim.hpp"
#include "oracles.hpp"

using namespace noma;

namespace {

const PowerBudget kUnit{1.0, 1.0};

// Channels that land in each design regime for the given sizes, with random phases.
std::vector<ChannelRealization> regime_channels(const ConstellationPair& sizes, Rng& rng) {
    const auto t = design_thresholds(kUnit, sizes);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    std::vector<ChannelRealization> out;
    for (double r : {0.5 * t.t1, std::sqrt(t.t1 * t.t2), std::sqrt(t.t2 * t.t3), 2 * t.t3}) {
        out.emplace_back(std::polar(1.0, phase(rng)), std::polar(r, phase(rng)));
    }
    return out;
}

SimConfig small_config() {
    SimConfig c;
    c.snr_db_grid = {10, 20};
    c.symbols_per_point = 3000;
    c.sizes = ConstellationPair(2, 4);
    return c;
}

}  // namespace

TEST(Noise, VarianceFromSnr) {
    EXPECT_DOUBLE_EQ(noise_variance(0), 0.5);
    EXPECT_DOUBLE_EQ(noise_variance(10), 0.05);
}

TEST(Noise, SampleStatistics) {
    Rng rng(1);
    const double s2 = noise_variance(7.0);
    double re = 0, im = 0, cross = 0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) {
        const cplx z = sample_noise(s2, rng);
        re += z.real() * z.real();
        im += z.imag() * z.imag();
        cross += z.real() * z.imag();
    }
    EXPECT_NEAR(re / n, s2, 0.01 * s2);
    EXPECT_NEAR(im / n, s2, 0.01 * s2);
    EXPECT_NEAR(cross / n, 0.0, 0.01 * s2);
}

TEST(Rayleigh, SecondMomentAndDeterminism) {
    for (double var2 : {0.5, 1.0, 1.0 / 64}) {
        Rng rng(42);
        double acc = 0;
        const int n = 1000000;
        for (int i = 0; i < n; ++i) acc += std::norm(sample_rayleigh(var2, rng));
        EXPECT_NEAR(acc / n, 2 * var2, 0.01 * 2 * var2);
    }
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_rayleigh(1.0, a), sample_rayleigh(1.0, b));
    Rng c(5);
    EXPECT_THROW(sample_rayleigh(0.0, c), ValidationError);
}

TEST(Gray, AdjacentLevelsDifferInOneBit) {
    for (int m : {2, 4, 8, 16, 64, 256}) {
        for (int i = 0; i + 1 < m; ++i) {
            EXPECT_EQ(std::popcount(gray_encode(i) ^ gray_encode(i + 1)), 1);
            EXPECT_EQ(gray_decode(gray_encode(i)), static_cast<std::uint32_t>(i));
        }
    }
}

TEST(Modulate, NoRotationForRealGains) {
    const ConstellationPair sizes(4, 4);
    const auto ch = ChannelRealization::from_magnitudes(1.0, 0.3);
    const auto d = design_weights(ch, kUnit, sizes);
    const auto [x1, x2] = modulate_noma(3, -1, 1, -3, d, ch);
    EXPECT_NEAR(std::abs(x1 - d.w1 * cplx(3, -1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(x2 - d.w2 * cplx(1, -3)), 0.0, 1e-15);
}

TEST(Modulate, AveragePowerAndGridAlignment) {
    Rng rng(9);
    for (int m1 : {2, 4, 8}) {
        for (int m2 : {2, 4, 8}) {
            const ConstellationPair sizes(m1, m2);
            for (const auto& ch : regime_channels(sizes, rng)) {
                const auto d = design_weights(ch, kUnit, sizes);
                double e1 = 0, e2 = 0;
                for (int a : pam_alphabet(m1))
                    for (int b : pam_alphabet(m1)) e1 += std::norm(modulate_noma(a, b, 1, 1, d, ch).first);
                for (int a : pam_alphabet(m2))
                    for (int b : pam_alphabet(m2)) e2 += std::norm(modulate_noma(1, 1, a, b, d, ch).second);
                e1 /= m1 * m1;
                e2 /= m2 * m2;
                EXPECT_NEAR(e1, d.w1 * d.w1 * 2 * (m1 * m1 - 1) / 3.0, 1e-12);
                EXPECT_LE(e1, 1.0 + 1e-12);
                EXPECT_LE(e2, 1.0 + 1e-12);
                if (d.w1_tilde == 1.0) EXPECT_NEAR(e1, 1.0, 1e-12);
                if (d.w2_tilde == 1.0) EXPECT_NEAR(e2, 1.0, 1e-12);

                // Noise-free received points fall on the regular sum grid on both branches.
                const auto grid = sum_constellation(d, ch, sizes);
                const auto [x1, x2] = modulate_noma(pam_amplitude(0, m1), pam_amplitude(m1 - 1, m1),
                                                    pam_amplitude(m2 / 2, m2), pam_amplitude(0, m2), d, ch);
                const cplx z = ch.h1 * x1 + ch.h2 * x2;
                auto on_grid = [&](double v) {
                    double best = INFINITY;
                    for (double g : grid) best = std::min(best, std::abs(v - g));
                    return best;
                };
                EXPECT_LT(on_grid(z.real()), 1e-12);
                EXPECT_LT(on_grid(z.imag()), 1e-12);
            }
        }
    }
}

TEST(DetectNoma, NoiseFreeRoundTripEveryCase) {
    Rng rng(10);
    for (int m1 : {1, 2, 4, 8}) {
        for (int m2 : {1, 2, 4, 8}) {
            if (m1 == 1 && m2 == 1) continue;
            const ConstellationPair sizes(m1, m2);
            std::vector<ChannelRealization> chans;
            if (sizes.both_active()) {
                chans = regime_channels(sizes, rng);
            } else {
                chans.emplace_back(cplx(0.3, -0.8), cplx(-1.1, 0.2));
            }
            for (const auto& ch : chans) {
                const auto d = design_weights(ch, kUnit, sizes);
                for (std::size_t idx = 0; idx < static_cast<std::size_t>(m1 * m1 * m2 * m2); ++idx) {
                    const auto s = noma_candidate_symbols(idx, sizes);
                    ASSERT_EQ(noma_candidate_index(s, sizes), idx);
                    const auto [x1, x2] = modulate_noma(s.s1, s.s1q, s.s2, s.s2q, d, ch);
                    EXPECT_EQ(detect_noma(ch.h1 * x1 + ch.h2 * x2, d, ch, sizes), s) << m1 << "x" << m2;
                }
            }
        }
    }
}

TEST(DetectNoma, SaturatesOutsideTheGrid) {
    const ConstellationPair sizes(4, 2);
    const auto ch = ChannelRealization::from_magnitudes(1.0, 1.0);
    const auto d = design_weights(ch, kUnit, sizes);
    const auto far = detect_noma({1e6, -1e6}, d, ch, sizes);
    const auto pts = sum_constellation(d, ch, sizes);
    const auto [x1, x2] = modulate_noma(far.s1, far.s1q, far.s2, far.s2q, d, ch);
    const cplx z = ch.h1 * x1 + ch.h2 * x2;
    EXPECT_NEAR(z.real(), pts.back(), 1e-12);
    EXPECT_NEAR(z.imag(), pts.front(), 1e-12);
}

TEST(DetectNoma, MatchesJointMl) {
    Rng rng(77);
    for (int m1 : {2, 4}) {
        for (int m2 : {2, 4}) {
            const ConstellationPair sizes(m1, m2);
            for (const auto& ch : regime_channels(sizes, rng)) {
                const auto d = design_weights(ch, kUnit, sizes);
                const auto cands = noma_candidates(d, ch, sizes);
                for (double snr : {0.0, 10.0, 20.0}) {
                    const double s2 = noise_variance(snr);
                    for (int i = 0; i < 5000; ++i) {
                        const auto idx = std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng);
                        const cplx z = cands[idx] + sample_noise(s2, rng);
                        const auto ml = noma_candidate_symbols(detect_ml_joint(z, cands), sizes);
                        ASSERT_EQ(detect_noma(z, d, ch, sizes), ml) << to_string(d.regime) << " snr=" << snr;
                    }
                }
            }
        }
    }
}

TEST(DetectMl, SingletonAndTies) {
    const std::vector<cplx> one{{3, 4}};
    EXPECT_EQ(detect_ml_joint({-100, 7}, one), 0u);
    const std::vector<cplx> two{{-1, 0}, {1, 0}};
    EXPECT_EQ(detect_ml_joint({0, 5}, two), 0u);
    EXPECT_THROW(detect_ml_joint({0, 0}, std::vector<cplx>{}), ValidationError);
}

TEST(Psk, UnitCircleAndRotation) {
    for (int n : {4, 16, 64}) {
        const auto a = psk_points(n, false);
        const auto b = psk_points(n, true);
        ASSERT_EQ(a.size(), static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            EXPECT_NEAR(std::abs(a[k]), 1.0, 1e-15);
            EXPECT_NEAR(std::arg(b[k] / a[k]), std::numbers::pi / n, 1e-12);
        }
    }
}

TEST(Transmit, PowerComplianceEveryScheme) {
    Rng rng(31);
    for (auto [m1, m2] : {std::pair{2, 2}, {4, 4}, {2, 8}, {1, 4}}) {
        SimConfig c;
        c.sizes = ConstellationPair(m1, m2);
        c.powers = PowerBudget(1.0, 2.5);
        for (Scheme s : {Scheme::kNoma, Scheme::kTdma, Scheme::kFdma, Scheme::kCrNoma}) {
            double e1 = 0, e2 = 0;
            const int n = 100000;
            for (int i = 0; i < n; ++i) {
                const ChannelRealization ch(sample_rayleigh(1.0, rng), sample_rayleigh(1.0 / 16, rng));
                const auto t = transmit(s, rng, ch, c);
                e1 += std::norm(t.x1);
                e2 += std::norm(t.x2);
            }
            EXPECT_LE(e1 / n, 1.0 * 1.01) << to_string(s);
            EXPECT_LE(e2 / n, 2.5 * 1.01) << to_string(s);
        }
    }
}

// Per-branch symbol errors of the quantizer on a fixed channel against the exact
// PAM expression 2(1 - 1/N) Q(d/sigma), and the d/sigma >= 8 regime.
TEST(UnionBound, SymbolErrorRate) {
    Rng rng(12);
    const ConstellationPair sizes(4, 4);
    const auto ch = ChannelRealization::from_magnitudes(1.0, 0.2);
    const auto d = design_weights(ch, kUnit, sizes);
    const int grid = sizes.m1 * sizes.m2;
    for (double ratio : {2.5, 8.0}) {
        const double sigma = d.d_noma / ratio;
        std::uint64_t errors = 0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            const auto idx = std::uniform_int_distribution<std::size_t>(0, 255)(rng);
            const auto s = noma_candidate_symbols(idx, sizes);
            const auto [x1, x2] = modulate_noma(s.s1, s.s1q, s.s2, s.s2q, d, ch);
            const cplx z = ch.h1 * x1 + ch.h2 * x2 + sample_noise(sigma * sigma, rng);
            const auto hat = detect_noma(z, d, ch, sizes);
            errors += (hat.s1 != s.s1 || hat.s2 != s.s2) ? 1 : 0;
        }
        const double ser = static_cast<double>(errors) / n;
        const double bound = 2.0 * (1.0 - 1.0 / grid) * oracle::q_function(ratio);
        EXPECT_LE(ser, bound * 1.5) << "d/sigma=" << ratio;
        if (ratio < 5) EXPECT_GE(ser, bound * 0.9);
    }
}

TEST(Wilson, BoundsSolveTheScoreEquation) {
    const double z = 1.959963984540054;
    for (auto [e, n] : {std::pair<std::uint64_t, std::uint64_t>{0, 100}, {50, 100}, {3, 1000000}, {999, 1000}}) {
        const double h = wilson_halfwidth(e, n);
        const double p = double(e) / n;
        const double center = (p + z * z / (2.0 * n)) / (1 + z * z / n);
        for (double bound : {center - h, center + h}) {
            EXPECT_NEAR((p - bound) * (p - bound), z * z * bound * (1 - bound) / n, 1e-12);
        }
    }
    EXPECT_NEAR(wilson_halfwidth(0, 100), 0.018497, 1e-6);
    EXPECT_EQ(wilson_halfwidth(0, 0), 0.0);
}

TEST(Config, Validation) {
    auto bad = [](auto mutate) {
        SimConfig c = small_config();
        mutate(c);
        return c;
    };
    EXPECT_NO_THROW(validate(small_config()));
    EXPECT_THROW(validate(bad([](SimConfig& c) { c.snr_db_grid.clear(); })), ConfigInvalidError);
    EXPECT_THROW(validate(bad([](SimConfig& c) { c.snr_db_grid = {NAN}; })), ConfigInvalidError);
    EXPECT_THROW(validate(bad([](SimConfig& c) { c.symbols_per_point = 0; })), ConfigInvalidError);
    EXPECT_THROW(validate(bad([](SimConfig& c) { c.sizes = ConstellationPair(6, 2); })), ConfigInvalidError);
    EXPECT_THROW(validate(bad([](SimConfig& c) { c.sizes = ConstellationPair(1, 1); })), ConfigInvalidError);
    EXPECT_THROW(validate(bad([](SimConfig& c) { c.schemes = {Scheme::kNoma, Scheme::kNoma}; })), ConfigInvalidError);
    EXPECT_THROW(validate(bad([](SimConfig& c) { c.schemes.clear(); })), ConfigInvalidError);
    EXPECT_THROW(validate(bad([](SimConfig& c) { c.fading.delta2_sq = 0; })), ConfigInvalidError);
    EXPECT_THROW(validate(bad([](SimConfig& c) { c.fading_block = 0; })), ConfigInvalidError);
    EXPECT_THROW(simulate_ber(bad([](SimConfig& c) { c.symbols_per_point = 0; })), ConfigInvalidError);
    EXPECT_THROW(scheme_from_string("ofdma"), ConfigInvalidError);
    EXPECT_EQ(scheme_from_string("cr_noma"), Scheme::kCrNoma);
}

TEST(Simulate, DeterministicAcrossRunsAndThreads) {
    SimConfig c = small_config();
    c.symbols_per_point = 10000;
    c.fading_block = 7;
    const auto a = to_csv(simulate_ber(c));
    const auto b = to_csv(simulate_ber(c));
    EXPECT_EQ(a, b);
    c.threads = 3;
    EXPECT_EQ(to_csv(simulate_ber(c)), a);
    c.seed = 2;
    EXPECT_NE(to_csv(simulate_ber(c)), a);
}

TEST(Simulate, CsvLayoutAndCounts) {
    SimConfig c = small_config();
    c.schemes = {Scheme::kNoma, Scheme::kTdma};
    const auto curves = simulate_ber(c);
    ASSERT_EQ(curves.size(), 2u);
    // NOMA carries 2*(1 + 2) bits per use with M1 = 2, M2 = 4. A TDMA frame is two
    // slots of 4- and 16-PAM, i.e. the bits of two NOMA uses.
    EXPECT_EQ(curves[0].points[0].bits, 3000u * 6u);
    EXPECT_EQ(curves[1].points[0].bits, 3000u * 12u);
    const auto csv = to_csv(curves);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "scheme,snr_db,bits,errors,ber,ci_halfwidth");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
    EXPECT_NE(csv.find("\ntdma,20,36000,"), std::string::npos);
}

TEST(Simulate, HighSnrNomaIsErrorFree) {
    SimConfig c;
    c.sizes = ConstellationPair(2, 2);
    c.snr_db_grid = {100};
    c.symbols_per_point = 10000;
    c.schemes = {Scheme::kNoma};
    EXPECT_EQ(simulate_ber(c)[0].points[0].errors, 0u);
}

TEST(Simulate, SaneAndNonIncreasing) {
    SimConfig c;
    c.sizes = ConstellationPair(2, 2);
    c.snr_db_grid = {0, 10, 20, 30};
    c.symbols_per_point = 20000;
    for (const auto& curve : simulate_ber(c)) {
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            const auto& p = curve.points[i];
            EXPECT_LE(p.ber, 0.5);
            EXPECT_EQ(p.ber, double(p.errors) / double(p.bits));
            if (i > 0) {
                const auto& q = curve.points[i - 1];
                EXPECT_LE(p.ber - p.ci_halfwidth, q.ber + q.ci_halfwidth) << to_string(curve.scheme);
            }
        }
    }
}

TEST(Simulate, FdmaIsTdmaShiftedByThreeDb) {
    SimConfig c;
    c.sizes = ConstellationPair(2, 2);
    c.symbols_per_point = 100000;
    c.snr_db_grid = {15};
    c.schemes = {Scheme::kFdma};
    const auto f = simulate_ber(c)[0].points[0];
    c.snr_db_grid = {15 + 10 * std::log10(2.0)};
    c.schemes = {Scheme::kTdma};
    c.seed = 99;
    const auto t = simulate_ber(c)[0].points[0];
    EXPECT_LE(std::abs(f.ber - t.ber), 2 * (f.ci_halfwidth + t.ci_halfwidth));
}
