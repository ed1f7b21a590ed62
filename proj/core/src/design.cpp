#include "noma/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "noma/csv.hpp"
#include "noma/errors.hpp"
#include "noma/pam.hpp"

namespace noma {
namespace {

double sq(double x) { return x * x; }

double size_sq_minus_one(int m) { return sq(static_cast<double>(m)) - 1.0; }

bool canonical(const DifferentialPair& p) { return p.n > 0 || (p.n == 0 && p.m > 0); }

void require_active(const ConstellationPair& sizes) {
    if (!sizes.both_active()) throw SilentUserError("both users need a constellation size >= 2");
}

DifferentialPair pair_of(const Fraction& f) {
    return {static_cast<int>(f.den()), static_cast<int>(f.num())};
}

}  // namespace

ChannelRealization::ChannelRealization(std::complex<double> gain1, std::complex<double> gain2) : h1(gain1), h2(gain2) {
    const double a1 = std::abs(h1);
    const double a2 = std::abs(h2);
    if (!(a1 > 0) || !(a2 > 0) || !std::isfinite(a1) || !std::isfinite(a2)) {
        throw ValidationError("channel gains must have positive finite magnitude");
    }
}

PowerBudget::PowerBudget(double power1, double power2) : p1(power1), p2(power2) {
    if (!(p1 > 0) || !(p2 > 0) || !std::isfinite(p1) || !std::isfinite(p2)) {
        throw ValidationError("power budgets must be positive and finite");
    }
}

ConstellationPair::ConstellationPair(int size1, int size2) : m1(size1), m2(size2) {
    auto ok = [](int m) { return m == 1 || (m >= 2 && m % 2 == 0); };
    if (!ok(m1) || !ok(m2)) throw ValidationError("constellation sizes must be 1 or even");
}

std::string to_string(DesignCase c) {
    switch (c) {
        case DesignCase::kCase1: return "1";
        case DesignCase::kCase2: return "2";
        case DesignCase::kCase3: return "3";
        case DesignCase::kCase4: return "4";
        case DesignCase::kUser1Silent: return "silent1";
        case DesignCase::kUser2Silent: return "silent2";
    }
    return "?";
}

double max_weight(double power, int m) { return std::sqrt(3.0 * power / (2.0 * size_sq_minus_one(m))); }

NormalizedChannel normalize(const ChannelRealization& channel, const PowerBudget& power,
                            const ConstellationPair& sizes) {
    require_active(sizes);
    return {max_weight(power.p1, sizes.m1) * std::abs(channel.h1), max_weight(power.p2, sizes.m2) * std::abs(channel.h2)};
}

double pair_distance(double w1t, double w2t, const NormalizedChannel& nc, DifferentialPair p) noexcept {
    return std::abs(nc.h1 * w1t * p.n - nc.h2 * w2t * p.m);
}

MinDistance min_distance_bruteforce(double w1t, double w2t, const NormalizedChannel& nc,
                                    const ConstellationPair& sizes) {
    require_active(sizes);
    MinDistance out;
    out.distance = std::numeric_limits<double>::infinity();
    const int mmax = sizes.m2 - 1;
    const int nmax = sizes.m1 - 1;
    for (int n = -nmax; n <= nmax; ++n) {
        for (int m = -mmax; m <= mmax; ++m) {
            if (m == 0 && n == 0) continue;
            const double d = pair_distance(w1t, w2t, nc, {m, n});
            if (d < out.distance) out.distance = d;
        }
    }
    // d(m,n) = d(-m,-n): keep one representative per sign pair.
    const double tol = 1e-12 * out.distance;
    for (int n = 0; n <= nmax; ++n) {
        for (int m = -mmax; m <= mmax; ++m) {
            const DifferentialPair p{m, n};
            if (!canonical(p)) continue;
            if (pair_distance(w1t, w2t, nc, p) <= out.distance + tol) out.argmin.push_back(p);
        }
    }
    return out;
}

MinDistance min_distance_farey(double w1t, double w2t, const NormalizedChannel& nc, const PunchedFareySequence& seq) {
    const double ratio = (nc.h2 * w2t) / (nc.h1 * w1t);
    const std::size_t k = locate_interval(seq, ratio);
    const Fraction& left = seq[k];
    const Fraction& right = seq[k + 1];
    const auto side = compare(ratio, mediant(left, right));

    MinDistance out;
    if (side < 0) {
        out.argmin = {pair_of(left)};
    } else if (side > 0) {
        out.argmin = {pair_of(right)};
    } else {
        out.argmin = {pair_of(left), pair_of(right)};
    }
    out.distance = pair_distance(w1t, w2t, nc, out.argmin.front());
    return out;
}

MinDistance min_distance_farey(double w1t, double w2t, const NormalizedChannel& nc, const ConstellationPair& sizes) {
    require_active(sizes);
    return min_distance_farey(w1t, w2t, nc, enumerate_punched_farey(sizes.m2 - 1, sizes.m1 - 1));
}

IntervalOptimum interval_optimum(std::size_t k, const PunchedFareySequence& seq, const NormalizedChannel& nc) {
    if (k + 1 >= seq.size()) throw ValidationError("interval index out of range");
    const auto& lo = seq[k];
    const auto& hi = seq[k + 1];
    const auto num_sum = static_cast<double>(lo.num() + hi.num());
    const auto den_sum = static_cast<double>(lo.den() + hi.den());

    if (nc.h2 * den_sum <= nc.h1 * num_sum) {
        return {nc.h2 / num_sum, std::min(1.0, nc.h2 * den_sum / (nc.h1 * num_sum)), 1.0};
    }
    return {nc.h1 / den_sum, 1.0, std::min(1.0, nc.h1 * num_sum / (nc.h2 * den_sum))};
}

IntervalOptimum best_interval_optimum(const PunchedFareySequence& seq, const NormalizedChannel& nc) {
    IntervalOptimum best;
    for (std::size_t k = 0; k < seq.interval_count(); ++k) {
        const auto cand = interval_optimum(k, seq, nc);
        if (cand.g > best.g) best = cand;
    }
    return best;
}

Thresholds design_thresholds(const PowerBudget& power, const ConstellationPair& sizes) {
    require_active(sizes);
    const double a = size_sq_minus_one(sizes.m1);
    const double b = size_sq_minus_one(sizes.m2);
    const double m1sq = sq(sizes.m1);
    const double m2sq = sq(sizes.m2);
    const double p = power.p1 / power.p2;
    return {std::sqrt(p * b / (m2sq * a)), std::sqrt(p * m1sq * b / (m2sq * a)), std::sqrt(p * m1sq * b / a)};
}

DesignResult design_weights(const ChannelRealization& channel, const PowerBudget& power,
                            const ConstellationPair& sizes) {
    const double abs1 = std::abs(channel.h1);
    const double abs2 = std::abs(channel.h2);
    DesignResult r;

    if (sizes.m1 == 1 && sizes.m2 == 1) throw ValidationError("at least one user must transmit");
    if (sizes.m1 == 1) {
        r.w2 = max_weight(power.p2, sizes.m2);
        r.w2_tilde = 1.0;
        r.d_noma = r.w2 * abs2;
        r.regime = DesignCase::kUser1Silent;
        return r;
    }
    if (sizes.m2 == 1) {
        r.w1 = max_weight(power.p1, sizes.m1);
        r.w1_tilde = 1.0;
        r.d_noma = r.w1 * abs1;
        r.regime = DesignCase::kUser2Silent;
        return r;
    }

    const double c1 = max_weight(power.p1, sizes.m1);
    const double c2 = max_weight(power.p2, sizes.m2);
    const double big_m1 = sizes.m1;
    const double big_m2 = sizes.m2;
    const double ratio = abs2 / abs1;
    const auto t = design_thresholds(power, sizes);

    // Boundary values belong to the earlier case.
    if (ratio <= t.t1) {
        r.regime = DesignCase::kCase1;
        r.w2 = c2;
        r.w2_tilde = 1.0;
        r.w1 = std::min(c1, big_m2 * c2 * ratio);
        r.d_noma = c2 * abs2;
        r.gain_ratio = big_m2;
    } else if (ratio <= t.t2) {
        r.regime = DesignCase::kCase2;
        r.w1 = c1;
        r.w1_tilde = 1.0;
        r.w2 = std::min(c2, c1 / (big_m2 * ratio));
        r.d_noma = c1 * abs1 / big_m2;
        r.gain_ratio = big_m2;
    } else if (ratio <= t.t3) {
        r.regime = DesignCase::kCase3;
        r.w2 = c2;
        r.w2_tilde = 1.0;
        r.w1 = std::min(c1, c2 * ratio / big_m1);
        r.d_noma = c2 * abs2 / big_m1;
        r.gain_ratio = 1.0 / big_m1;
    } else {
        r.regime = DesignCase::kCase4;
        r.w1 = c1;
        r.w1_tilde = 1.0;
        r.w2 = std::min(c2, big_m1 * c1 / ratio);
        r.d_noma = c1 * abs1;
        r.gain_ratio = 1.0 / big_m1;
    }
    if (r.w1_tilde != 1.0) r.w1_tilde = r.w1 / c1;
    if (r.w2_tilde != 1.0) r.w2_tilde = r.w2 / c2;
    return r;
}

std::vector<double> sum_constellation(const DesignResult& design, const ChannelRealization& channel,
                                      const ConstellationPair& sizes) {
    const double a1 = std::abs(channel.h1) * design.w1;
    const double a2 = std::abs(channel.h2) * design.w2;
    std::vector<double> points;
    points.reserve(static_cast<std::size_t>(sizes.m1) * static_cast<std::size_t>(sizes.m2));
    for (int i = 0; i < sizes.m1; ++i) {
        for (int j = 0; j < sizes.m2; ++j) {
            points.push_back(a1 * pam_amplitude(i, sizes.m1) + a2 * pam_amplitude(j, sizes.m2));
        }
    }
    std::sort(points.begin(), points.end());
    return points;
}

double oma_min_distance(const ChannelRealization& channel, const PowerBudget& power, const ConstellationPair& sizes) {
    double d = std::numeric_limits<double>::infinity();
    if (sizes.m1 >= 2) d = std::min(d, max_weight(power.p1, sizes.m1 * sizes.m1) * std::abs(channel.h1));
    if (sizes.m2 >= 2) d = std::min(d, max_weight(power.p2, sizes.m2 * sizes.m2) * std::abs(channel.h2));
    if (!std::isfinite(d)) throw ValidationError("at least one user must transmit");
    return d;
}

SuperiorityReport verify_superiority(const ChannelRealization& channel, const PowerBudget& power,
                                     const ConstellationPair& sizes) {
    const double d_noma = design_weights(channel, power, sizes).d_noma;
    const double d_oma = oma_min_distance(channel, power, sizes);
    if (!(d_noma > d_oma)) {
        std::ostringstream os;
        os << "d_noma " << d_noma << " is not above d_oma " << d_oma;
        throw SuperiorityViolated(os.str());
    }
    return {d_noma, d_oma, d_noma / d_oma};
}

GridSearchResult grid_search_design(const NormalizedChannel& nc, const ConstellationPair& sizes, int steps) {
    require_active(sizes);
    if (steps < 1) throw ValidationError("grid needs at least one step per axis");

    // Canonical pairs, short ones first so the pruning bound bites early.
    std::vector<DifferentialPair> pairs;
    for (int n = 0; n <= sizes.m1 - 1; ++n) {
        for (int m = -(sizes.m2 - 1); m <= sizes.m2 - 1; ++m) {
            if (canonical({m, n})) pairs.push_back({m, n});
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        return std::abs(a.m) + std::abs(a.n) < std::abs(b.m) + std::abs(b.n);
    });

    GridSearchResult best;
    const double inv = 1.0 / steps;
    for (int i = 1; i <= steps; ++i) {
        const double w1t = i * inv;
        const double a = nc.h1 * w1t;
        for (int j = 1; j <= steps; ++j) {
            const double w2t = j * inv;
            const double b = nc.h2 * w2t;
            ++best.points;
            // A point's minimum never exceeds any single pair, so stop once it
            // cannot beat the incumbent.
            double running = std::numeric_limits<double>::infinity();
            for (const auto& p : pairs) {
                running = std::min(running, std::abs(a * p.n - b * p.m));
                if (running <= best.best_distance) break;
            }
            if (running > best.best_distance) {
                best.best_distance = running;
                best.w1_tilde = w1t;
                best.w2_tilde = w2t;
            }
        }
    }
    return best;
}

std::string design_csv_header() { return "h1_abs,h2_abs,P1,P2,M1,M2,case,w1,w2,d_noma,d_oma"; }

std::string design_csv_row(const ChannelRealization& channel, const PowerBudget& power,
                           const ConstellationPair& sizes, const DesignResult& design, double d_oma) {
    std::ostringstream os;
    os << format_double(std::abs(channel.h1)) << ',' << format_double(std::abs(channel.h2)) << ','
       << format_double(power.p1) << ',' << format_double(power.p2) << ',' << sizes.m1 << ',' << sizes.m2 << ','
       << to_string(design.regime) << ',' << format_double(design.w1) << ',' << format_double(design.w2) << ','
       << format_double(design.d_noma) << ',' << format_double(d_oma);
    return os.str();
}

}  // namespace noma
