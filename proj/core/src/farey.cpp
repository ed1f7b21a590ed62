#include "noma/farey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "noma/errors.hpp"

namespace noma {
namespace {

using i64 = std::int64_t;

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Returns (x, y) with a*x + b*y = gcd(a, b).
std::pair<i64, i64> extended_gcd(i64 a, i64 b) {
    i64 old_r = a, r = b;
    i64 old_x = 1, x = 0;
    i64 old_y = 0, y = 1;
    while (r != 0) {
        const i64 q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_x = std::exchange(x, old_x - q * x);
        old_y = std::exchange(y, old_y - q * y);
    }
    return {old_x, old_y};
}

[[noreturn]] void violation(const std::string& what, std::size_t index, std::span<const Fraction> terms,
                            std::size_t width) {
    std::ostringstream os;
    os << what << " at index " << index << ":";
    for (std::size_t i = index; i < index + width && i < terms.size(); ++i) os << ' ' << terms[i];
    throw PropertyViolation(os.str());
}

void check_bounds(std::int64_t K, std::int64_t L) {
    if (K < 1 || L < 1) throw ValidationError("punched Farey bounds must be >= 1");
}

}  // namespace

PunchedFareySequence enumerate_punched_farey(std::int64_t K, std::int64_t L) {
    check_bounds(K, L);
    if (K > kFareyEnumerationCap / L) {
        throw BoundTooLargeError("K*L = " + std::to_string(K) + "*" + std::to_string(L) +
                                 " exceeds the enumeration cap " + std::to_string(kFareyEnumerationCap));
    }
    std::vector<Fraction> terms;
    terms.reserve(static_cast<std::size_t>(K * L) + 2);
    terms.push_back(Fraction::unchecked(0, 1));
    for (i64 n = 1; n <= L; ++n) {
        for (i64 m = 1; m <= K; ++m) {
            if (std::gcd(n, m) == 1) terms.push_back(Fraction::unchecked(n, m));
        }
    }
    terms.push_back(Fraction::unchecked(1, 0));
    std::sort(terms.begin(), terms.end());
    return PunchedFareySequence(K, L, std::move(terms));
}

Fraction next_punched_farey_term(const Fraction& term, std::int64_t K, std::int64_t L) {
    check_bounds(K, L);
    const i64 n1 = term.num();
    const i64 m1 = term.den();
    if (m1 == 0) throw ValidationError("1/0 has no successor");

    // m1*n0 + n1*(-m0) = 1
    const auto [x, y] = extended_gcd(m1, n1);
    const i64 n0 = x;
    const i64 m0 = -y;

    // Solutions are (m0 + r*m1, n0 + r*n1); larger r means closer to term.
    i64 r = std::numeric_limits<i64>::max();
    r = std::min(r, floor_div(K - m0, m1));
    if (n1 > 0) r = std::min(r, floor_div(L - n0, n1));
    return Fraction::unchecked(n0 + r * n1, m0 + r * m1);
}

PropertyReport verify_terms(std::span<const Fraction> terms, std::int64_t K, std::int64_t L,
                            const PropertyOptions& options) {
    check_bounds(K, L);
    PropertyReport report;
    report.terms = terms.size();
    if (terms.size() < 3) throw PropertyViolation("sequence has fewer than three terms");
    if (terms.front() != Fraction::unchecked(0, 1)) violation("first term is not 0/1", 0, terms, 1);
    if (terms.back() != Fraction::unchecked(1, 0)) violation("last term is not 1/0", terms.size() - 1, terms, 1);

    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& f = terms[i];
        const bool endpoint = (i == 0 || i + 1 == terms.size());
        if (!endpoint && (f.num() < 1 || f.num() > L || f.den() < 1 || f.den() > K)) {
            violation("term outside the K/L box", i, terms, 1);
        }
        if (std::gcd(f.num(), f.den()) != 1) violation("reducible term", i, terms, 1);
    }

    const Fraction first_pair_right = Fraction::unchecked(1, K);
    const Fraction last_pair_left = Fraction::unchecked(L, 1);

    for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
        const auto& a = terms[i];
        const auto& b = terms[i + 1];
        if (!(a < b)) violation("not strictly ascending", i, terms, 2);

        const i64 det = a.den() * b.num() - b.den() * a.num();
        if (det != 1) violation("neighbour determinant != 1", i, terms, 2);

        const Fraction mid = mediant(a, b);
        if (!(a < mid && mid < b)) violation("mediant not strictly inside", i, terms, 2);

        const i64 nsum = a.num() + b.num();
        const i64 msum = a.den() + b.den();
        if (nsum <= L && !(msum > K)) violation("n1+n2 <= L but m1+m2 <= K", i, terms, 2);
        if (msum <= K && !(nsum > L)) violation("m1+m2 <= K but n1+n2 <= L", i, terms, 2);

        if (nsum < 1 || msum < 1) violation("numerator or denominator sum below 1", i, terms, 2);
        const bool first_pair = (a == Fraction::unchecked(0, 1) && b == first_pair_right);
        const bool last_pair = (a == last_pair_left && b == Fraction::unchecked(1, 0));
        if ((nsum == 1) != first_pair) violation("n1+n2 = 1 away from (0/1, 1/K)", i, terms, 2);
        if ((msum == 1) != last_pair) violation("m1+m2 = 1 away from (L/1, 1/0)", i, terms, 2);
        ++report.pairs_checked;
    }

    for (std::size_t i = 0; i + 2 < terms.size(); ++i) {
        // Value equality: the outer sum may carry a common factor.
        const Fraction outer = Fraction::make(terms[i].num() + terms[i + 2].num(),
                                              terms[i].den() + terms[i + 2].den());
        if (outer != terms[i + 1]) violation("middle term is not the mediant of its neighbours", i, terms, 3);
        ++report.triples_checked;
    }

    if (options.cross_mediant) {
        // For neighbours (f2, f3): (n1+n3)/(m1+m3) <= f2 for every f1 < f2 and
        // f3 <= (n2+n4)/(m2+m4) for every f4 > f3.
        for (std::size_t k = 1; k + 2 < terms.size(); ++k) {
            const auto& f2 = terms[k];
            const auto& f3 = terms[k + 1];
            // The two bounds are independent, so each side is scanned once and
            // together they cover all k * (size - k - 2) quadruples.
            for (std::size_t i = 0; i < k; ++i) {
                const auto& f1 = terms[i];
                const auto lhs = Fraction::make(f1.num() + f3.num(), f1.den() + f3.den());
                if (!(lhs <= f2)) violation("cross-mediant bound (n1+n3)/(m1+m3) <= n2/m2 fails", k, terms, 2);
            }
            for (std::size_t j = k + 2; j < terms.size(); ++j) {
                const auto& f4 = terms[j];
                const auto rhs = Fraction::make(f2.num() + f4.num(), f2.den() + f4.den());
                if (!(f3 <= rhs)) violation("cross-mediant bound n3/m3 <= (n2+n4)/(m2+m4) fails", k, terms, 2);
            }
            report.quadruples_checked += k * (terms.size() - k - 2);
        }
    }

    if (options.recurrence) {
        for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
            if (next_punched_farey_term(terms[i], K, L) != terms[i + 1]) {
                violation("next-term recurrence disagrees with successor", i, terms, 2);
            }
        }
        report.recurrence_checked = true;
    }
    return report;
}

PropertyReport verify_properties(const PunchedFareySequence& seq, const PropertyOptions& options) {
    return verify_terms(seq.terms(), seq.denominator_bound(), seq.numerator_bound(), options);
}

std::size_t locate_interval(const PunchedFareySequence& seq, double ratio) {
    if (!(ratio > 0) || !std::isfinite(ratio)) {
        throw ValidationError("interval lookup needs a positive finite ratio");
    }
    const auto terms = seq.terms();
    // First term with ratio <= term; the interval ends there.
    const auto it = std::partition_point(terms.begin(), terms.end(),
                                         [ratio](const Fraction& f) { return compare(ratio, f) > 0; });
    return static_cast<std::size_t>(it - terms.begin()) - 1;
}

std::size_t locate_interval(const PunchedFareySequence& seq, const Fraction& ratio) {
    if (ratio.num() == 0 || ratio.is_infinite()) {
        throw ValidationError("interval lookup needs a positive finite ratio");
    }
    const auto terms = seq.terms();
    const auto it = std::lower_bound(terms.begin(), terms.end(), ratio);
    return static_cast<std::size_t>(it - terms.begin()) - 1;
}

std::string to_csv(const PunchedFareySequence& seq) {
    std::ostringstream os;
    os << "num,den\n";
    for (const auto& f : seq) os << f.num() << ',' << f.den() << '\n';
    return os.str();
}

std::string to_compact_string(const PunchedFareySequence& seq) {
    std::ostringstream os;
    bool first = true;
    for (const auto& f : seq) {
        if (!first) os << ' ';
        os << f;
        first = false;
    }
    return os.str();
}

}  // namespace noma
