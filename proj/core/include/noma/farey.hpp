#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "noma/fraction.hpp"

namespace noma {

/// Largest K*L accepted by enumerate_punched_farey. The enumeration holds up to
/// K*L fractions in memory before sorting (about 64 MiB at the cap).
inline constexpr std::int64_t kFareyEnumerationCap = std::int64_t{1} << 22;

/// Ascending irreducible fractions n/m with m <= K and n <= L, running from 0/1
/// to 1/0. Instances only come out of enumerate_punched_farey and are immutable.
class PunchedFareySequence {
public:
    std::int64_t denominator_bound() const noexcept { return k_; }
    std::int64_t numerator_bound() const noexcept { return l_; }

    std::span<const Fraction> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    const Fraction& operator[](std::size_t i) const { return terms_[i]; }
    auto begin() const noexcept { return terms_.begin(); }
    auto end() const noexcept { return terms_.end(); }

    /// Number of intervals (terms[k], terms[k+1]].
    std::size_t interval_count() const noexcept { return terms_.size() - 1; }

private:
    friend PunchedFareySequence enumerate_punched_farey(std::int64_t, std::int64_t);
    PunchedFareySequence(std::int64_t k, std::int64_t l, std::vector<Fraction> terms)
        : k_(k), l_(l), terms_(std::move(terms)) {}

    std::int64_t k_;
    std::int64_t l_;
    std::vector<Fraction> terms_;
};

/// Generates P_K^L (K bounds denominators, L bounds numerators) by collecting every
/// coprime pair and sorting. Throws ValidationError for K or L < 1 and
/// BoundTooLargeError when K*L exceeds kFareyEnumerationCap.
PunchedFareySequence enumerate_punched_farey(std::int64_t K, std::int64_t L);

/// Successor of `term` in P_K^L built from the Bezout identity m1*n - m*n1 = 1,
/// taking the solution closest to `term` inside the box. Independent of the sorted
/// enumeration; used to cross-check it. Undefined for 1/0.
Fraction next_punched_farey_term(const Fraction& term, std::int64_t K, std::int64_t L);

struct PropertyReport {
    std::size_t terms = 0;
    std::size_t pairs_checked = 0;       // neighbour identities
    std::size_t triples_checked = 0;     // middle term is the mediant of its neighbours
    std::size_t quadruples_checked = 0;  // cross-mediant inequalities (0 if skipped)
    bool recurrence_checked = false;     // next-term recurrence reproduced every term
};

struct PropertyOptions {
    /// The cross-mediant check visits O(size^2) quadruples.
    bool cross_mediant = false;
    bool recurrence = true;
};

/// Checks the neighbour identities of a punched Farey sequence:
///  - endpoints 0/1 and 1/0, strictly ascending, bounded, irreducible;
///  - m1*n2 - m2*n1 = 1 and the mediant lies strictly between every neighbour pair;
///  - n1+n2 <= L implies m1+m2 > K, and m1+m2 <= K implies n1+n2 > L;
///  - n1+n2 = 1 only at (0/1, 1/K) and m1+m2 = 1 only at (L/1, 1/0);
///  - every interior term equals the mediant of its neighbours;
///  - optionally, the cross-mediant bounds around every neighbour pair and the
///    Bezout next-term recurrence.
/// Throws PropertyViolation naming the offending pair or triple.
PropertyReport verify_properties(const PunchedFareySequence& seq, const PropertyOptions& options = {});

/// Same checks on a raw term list claimed to be P_K^L.
PropertyReport verify_terms(std::span<const Fraction> terms, std::int64_t K, std::int64_t L,
                            const PropertyOptions& options = {});

/// Index k with terms[k] < ratio <= terms[k+1]. Throws ValidationError unless
/// ratio is positive and finite.
std::size_t locate_interval(const PunchedFareySequence& seq, double ratio);
std::size_t locate_interval(const PunchedFareySequence& seq, const Fraction& ratio);

/// "num,den" header followed by one line per term.
std::string to_csv(const PunchedFareySequence& seq);

/// "0/1 1/5 1/4 ... 1/0"
std::string to_compact_string(const PunchedFareySequence& seq);

}  // namespace noma
