#pragma once

#include <string>
#include <vector>

namespace noma {

/// Sum-rate constrained allocation: log2 M1 + log2 M2 = log2 M, with channel/power
/// disparity lambda = P2|h2|^2 / (P1|h1|^2).
struct RateProblem {
    int m;
    double lambda;

    RateProblem(int sum_size, double disparity);
};

enum class AllocationSource { kOptimal, kAsymptotic };

struct RateAllocation {
    int m1 = 1;
    int m2 = 1;
    double beta = 0;  // 3 P1 |h1|^2 / (2 d_noma^2); smaller is better
    AllocationSource source = AllocationSource::kOptimal;
};

struct RateCandidate {
    int m1;
    double beta;
};

struct RateBreakpoints {
    double gamma1;
    double gamma2;
    double gamma3;
};

RateBreakpoints rate_breakpoints(const RateProblem& prob);

/// Piecewise beta for a real-valued M1 in [1, M]. The integer API below is what
/// allocations use; this one exists for shape checks between breakpoints.
double beta_continuous(double m1, const RateProblem& prob);

/// beta(M1) for a power-of-two divisor of M. Throws NotADivisorError otherwise.
double beta(int m1, const RateProblem& prob);

/// Every power-of-two divisor of M with its beta, ascending in M1.
std::vector<RateCandidate> enumerate_rate_allocations(const RateProblem& prob);

/// Closed-form optimum from four candidates around gamma1 and gamma3. Ties go to
/// the smallest M1.
RateAllocation optimal_rate_allocation(const RateProblem& prob);

/// High-rate approximation of the optimum; beta is still the exact value at the
/// chosen M1.
RateAllocation asymptotic_rate_allocation(const RateProblem& prob);

/// M,lambda,M1_opt,M2_opt,beta_opt,M1_asym,M2_asym,beta_asym
std::string rate_csv_header();
std::string rate_csv_row(const RateProblem& prob, const RateAllocation& optimal, const RateAllocation& asymptotic);

}  // namespace noma
