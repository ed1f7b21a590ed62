#include "noma/rate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "noma/csv.hpp"
#include "noma/errors.hpp"
#include "noma/pam.hpp"

namespace noma {
namespace {

// floor(log2 x) for positive finite x; exact, unlike std::floor(std::log2(x)).
int floor_log2(double x) { return std::ilogb(x); }

// 2^e clamped into [1, M].
int clamped_power(int e, int m) {
    if (e <= 0) return 1;
    const int max_e = std::countr_zero(static_cast<unsigned>(m));
    return e >= max_e ? m : (1 << e);
}

}  // namespace

RateProblem::RateProblem(int sum_size, double disparity) : m(sum_size), lambda(disparity) {
    if (m < 2 || !is_power_of_two(m)) throw ValidationError("sum constellation size M must be a power of two >= 2");
    if (m > (1 << 20)) throw ValidationError("sum constellation size M is unreasonably large");
    if (!(lambda > 0) || !std::isfinite(lambda)) throw ValidationError("lambda must be positive and finite");
}

RateBreakpoints rate_breakpoints(const RateProblem& prob) {
    const double lam = prob.lambda;
    const double msq = static_cast<double>(prob.m) * prob.m;
    const double g1 = std::sqrt((lam + 1.0) / (lam + 1.0 / msq));
    const double a = lam - 1.0;
    const double b = 4.0 * lam / msq;
    const double root = std::sqrt(a * a + b);
    // Conjugate form for a > 0 avoids cancellation at large lambda.
    const double half = a > 0 ? b / (2.0 * (root + a)) : (root - a) / 2.0;
    const double g2 = std::sqrt(half) * prob.m;
    const double g3 = std::sqrt((lam + msq) / (lam + 1.0));
    return {g1, g2, g3};
}

double beta_continuous(double m1, const RateProblem& prob) {
    const auto g = rate_breakpoints(prob);
    const double msq = static_cast<double>(prob.m) * prob.m;
    const double m1sq = m1 * m1;
    if (m1 <= g.gamma1) return (msq / m1sq - 1.0) / prob.lambda;
    if (m1 <= g.gamma2) return msq - msq / m1sq;
    if (m1 <= g.gamma3) return (msq - m1sq) / prob.lambda;
    return m1sq - 1.0;
}

double beta(int m1, const RateProblem& prob) {
    if (!is_power_of_two(m1) || m1 > prob.m) {
        throw NotADivisorError("M1 = " + std::to_string(m1) + " is not a power-of-two divisor of M = " +
                               std::to_string(prob.m));
    }
    return beta_continuous(static_cast<double>(m1), prob);
}

std::vector<RateCandidate> enumerate_rate_allocations(const RateProblem& prob) {
    std::vector<RateCandidate> out;
    for (int m1 = 1; m1 <= prob.m; m1 *= 2) out.push_back({m1, beta(m1, prob)});
    return out;
}

RateAllocation optimal_rate_allocation(const RateProblem& prob) {
    const auto g = rate_breakpoints(prob);
    const int e1 = floor_log2(g.gamma1);
    const int e2 = floor_log2(g.gamma2);
    const int e3 = floor_log2(g.gamma3);
    constexpr double kInfeasible = std::numeric_limits<double>::infinity();

    struct Candidate {
        int m1;
        bool feasible;
    };
    const std::array<Candidate, 4> candidates{{
        {clamped_power(e1, prob.m), true},
        {clamped_power(e1 + 1, prob.m), e1 <= e2 + 1},
        {clamped_power(e3, prob.m), e2 <= e3 + 1},
        {clamped_power(e3 + 1, prob.m), true},
    }};

    RateAllocation best;
    best.beta = kInfeasible;
    best.m1 = prob.m + 1;
    for (const auto& c : candidates) {
        const double b = c.feasible ? beta(c.m1, prob) : kInfeasible;
        if (b < best.beta || (b == best.beta && c.m1 < best.m1)) {
            best.beta = b;
            best.m1 = c.m1;
        }
    }
    best.m2 = prob.m / best.m1;
    best.source = AllocationSource::kOptimal;
    return best;
}

RateAllocation asymptotic_rate_allocation(const RateProblem& prob) {
    const double root = std::sqrt(prob.lambda);
    int m1 = 0;
    if (prob.lambda <= 1.0) {
        m1 = clamped_power(floor_log2(1.0 / root) + 1, prob.m);
    } else {
        m1 = clamped_power(floor_log2(prob.m / root), prob.m);
    }
    RateAllocation out;
    out.m1 = m1;
    out.m2 = prob.m / m1;
    out.beta = beta(m1, prob);
    out.source = AllocationSource::kAsymptotic;
    return out;
}

std::string rate_csv_header() { return "M,lambda,M1_opt,M2_opt,beta_opt,M1_asym,M2_asym,beta_asym"; }

std::string rate_csv_row(const RateProblem& prob, const RateAllocation& optimal, const RateAllocation& asymptotic) {
    std::ostringstream os;
    os << prob.m << ',' << format_double(prob.lambda) << ',' << optimal.m1 << ',' << optimal.m2 << ','
       << format_double(optimal.beta) << ',' << asymptotic.m1 << ',' << asymptotic.m2 << ','
       << format_double(asymptotic.beta);
    return os.str();
}

}  // namespace noma
