#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "noma/errors.hpp"
#include "noma/farey.hpp"
#include "noma/fraction.hpp"
#include "oracles.hpp"

using namespace noma;

namespace {

std::vector<Fraction> from_pairs(std::initializer_list<std::pair<int, int>> pairs) {
    std::vector<Fraction> v;
    for (auto [n, m] : pairs) v.push_back(Fraction::unchecked(n, m));
    return v;
}

std::vector<Fraction> as_vector(const PunchedFareySequence& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(Fraction, ReducesToLowestTerms) {
    EXPECT_EQ(make_fraction(2, 4), Fraction::unchecked(1, 2));
    EXPECT_EQ(make_fraction(1, 0), Fraction::unchecked(1, 0));
    EXPECT_EQ(make_fraction(0, 7), Fraction::unchecked(0, 1));
    EXPECT_EQ(make_fraction(6, 0), Fraction::unchecked(1, 0));
    EXPECT_EQ(make_fraction(12, 18).str(), "2/3");
}

TEST(Fraction, RejectsZeroOverZero) {
    EXPECT_THROW(make_fraction(0, 0), BothZeroError);
    EXPECT_THROW(make_fraction(-1, 2), ValidationError);
}

TEST(Fraction, OrderIsCrossMultiplication) {
    EXPECT_LT(make_fraction(1, 3), make_fraction(2, 5));
    EXPECT_LT(make_fraction(1000000, 1), make_fraction(1, 0));
    EXPECT_LT(make_fraction(0, 1), make_fraction(1, 1000000));
    const auto big = make_fraction(INT64_MAX - 1, INT64_MAX);
    EXPECT_LT(big, make_fraction(1, 1));
    EXPECT_GT(make_fraction(INT64_MAX, INT64_MAX - 1), make_fraction(1, 1));
}

TEST(Fraction, DoubleComparisonIsExact) {
    EXPECT_EQ(compare(0.5, make_fraction(1, 2)), std::partial_ordering::equivalent);
    EXPECT_EQ(compare(0.1, make_fraction(1, 10)), std::partial_ordering::greater);  // 0.1 rounds up in binary
    EXPECT_EQ(compare(1.0 / 3.0, make_fraction(1, 3)), std::partial_ordering::less);
    EXPECT_EQ(compare(1e300, make_fraction(1, 0)), std::partial_ordering::less);
    EXPECT_EQ(compare(0.0, make_fraction(0, 1)), std::partial_ordering::equivalent);
}

TEST(Mediant, SumsParts) {
    EXPECT_EQ(mediant(make_fraction(0, 1), make_fraction(1, 5)), Fraction::unchecked(1, 6));
    EXPECT_EQ(mediant(make_fraction(1, 2), make_fraction(2, 3)), Fraction::unchecked(3, 5));
    EXPECT_EQ(mediant(make_fraction(1, 3), make_fraction(1, 1)), Fraction::unchecked(1, 2));
}

TEST(Mediant, StrictlyInsideEveryNeighbourPair) {
    const auto seq = enumerate_punched_farey(5, 2);
    ASSERT_EQ(seq.interval_count(), 9u);
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
        const auto med = mediant(seq[k], seq[k + 1]);
        EXPECT_LT(seq[k], med);
        EXPECT_LT(med, seq[k + 1]);
    }
}

TEST(Enumerate, MatchesWorkedSequences) {
    EXPECT_EQ(as_vector(enumerate_punched_farey(5, 2)),
              from_pairs({{0, 1}, {1, 5}, {1, 4}, {1, 3}, {2, 5}, {1, 2}, {2, 3}, {1, 1}, {2, 1}, {1, 0}}));
    EXPECT_EQ(as_vector(enumerate_punched_farey(1, 1)), from_pairs({{0, 1}, {1, 1}, {1, 0}}));

    const auto s5 = enumerate_punched_farey(5, 5);
    ASSERT_EQ(s5.size(), 21u);
    EXPECT_EQ(s5[1], Fraction::unchecked(1, 5));
    EXPECT_EQ(s5[19], Fraction::unchecked(5, 1));
}

TEST(Enumerate, RejectsBadBounds) {
    EXPECT_THROW(enumerate_punched_farey(0, 3), ValidationError);
    EXPECT_THROW(enumerate_punched_farey(3, 0), ValidationError);
    EXPECT_THROW(enumerate_punched_farey(1 << 12, 1 << 11), BoundTooLargeError);
}

TEST(Enumerate, CompactAndCsvForms) {
    const auto s = enumerate_punched_farey(2, 1);
    EXPECT_EQ(to_compact_string(s), "0/1 1/2 1/1 1/0");
    EXPECT_EQ(to_csv(s), "num,den\n0,1\n1,2\n1,1\n1,0\n");
}

// Completeness against an independent generate-and-sort enumeration.
TEST(FareyProperty, CompleteAgainstGenerateAndSort) {
    for (int K = 1; K <= 12; ++K) {
        for (int L = 1; L <= 12; ++L) {
            const auto seq = enumerate_punched_farey(K, L);
            const auto ref = oracle::punched_farey(K, L);
            ASSERT_EQ(seq.size(), ref.size()) << "K=" << K << " L=" << L;
            for (std::size_t i = 0; i < ref.size(); ++i) {
                EXPECT_EQ(seq[i].num(), ref[i].first);
                EXPECT_EQ(seq[i].den(), ref[i].second);
            }
        }
    }
}

TEST(FareyProperty, NeighbourIdentitiesHoldUpTo12) {
    for (int K = 1; K <= 12; ++K) {
        for (int L = 1; L <= 12; ++L) {
            const auto seq = enumerate_punched_farey(K, L);
            PropertyOptions opts;
            opts.cross_mediant = K <= 8 && L <= 8;
            const auto r = verify_properties(seq, opts);
            EXPECT_EQ(r.pairs_checked, seq.size() - 1);
            EXPECT_EQ(r.triples_checked, seq.size() - 2);
            EXPECT_TRUE(r.recurrence_checked);
        }
    }
}

// Recomputed here from raw integers rather than trusting verify_properties.
TEST(FareyProperty, DeterminantAndMediantByHand) {
    for (int K = 1; K <= 12; ++K) {
        for (int L = 1; L <= 12; ++L) {
            const auto t = oracle::punched_farey(K, L);
            for (std::size_t i = 0; i + 1 < t.size(); ++i) {
                const auto [n1, m1] = t[i];
                const auto [n2, m2] = t[i + 1];
                ASSERT_EQ(m1 * n2 - m2 * n1, 1) << K << "," << L << " at " << i;
                if (n1 + n2 <= L) EXPECT_GT(m1 + m2, K);
                if (m1 + m2 <= K) EXPECT_GT(n1 + n2, L);
                if (n1 + n2 == 1) EXPECT_TRUE(n1 == 0 && m1 == 1 && n2 == 1 && m2 == K);
                if (m1 + m2 == 1) EXPECT_TRUE(n1 == L && m1 == 1 && n2 == 1 && m2 == 0);
            }
            for (std::size_t i = 0; i + 2 < t.size(); ++i) {
                const auto [n1, m1] = t[i];
                const auto [n2, m2] = t[i + 1];
                const auto [n3, m3] = t[i + 2];
                EXPECT_EQ(n2 * (m1 + m3), m2 * (n1 + n3));
            }
        }
    }
}

TEST(FareyProperty, CrossMediantInequalitiesUpTo8) {
    for (int K = 1; K <= 8; ++K) {
        for (int L = 1; L <= 8; ++L) {
            const auto t = oracle::punched_farey(K, L);
            // For every neighbour pair (t[j], t[j+1]) and every i < j, l > j+1.
            for (std::size_t j = 0; j + 1 < t.size(); ++j) {
                const auto [n2, m2] = t[j];
                const auto [n3, m3] = t[j + 1];
                for (std::size_t i = 0; i < j; ++i) {
                    const auto [n1, m1] = t[i];
                    EXPECT_LE((n1 + n3) * m2, n2 * (m1 + m3));
                }
                for (std::size_t l = j + 2; l < t.size(); ++l) {
                    const auto [n4, m4] = t[l];
                    EXPECT_LE(n3 * (m2 + m4), (n2 + n4) * m3);
                }
            }
        }
    }
}

TEST(FareyProperty, ClassicalPrefix) {
    for (int K = 1; K <= 40; ++K) {
        const auto seq = enumerate_punched_farey(K, K);
        std::int64_t at_most_one = 0;
        for (const auto& f : seq) {
            if (!f.is_infinite() && f.num() <= f.den()) ++at_most_one;
        }
        EXPECT_EQ(at_most_one, oracle::classical_farey_size(K)) << "K=" << K;
    }
}

TEST(FareyProperty, ReciprocalSymmetry) {
    for (int K = 1; K <= 12; ++K) {
        for (int L = 1; L <= 12; ++L) {
            auto fwd = as_vector(enumerate_punched_farey(K, L));
            const auto swapped = as_vector(enumerate_punched_farey(L, K));
            std::reverse(fwd.begin(), fwd.end());
            for (auto& f : fwd) f = Fraction::unchecked(f.den(), f.num());
            EXPECT_EQ(fwd, swapped);
        }
    }
}

TEST(FareyProperty, NextTermRecurrence) {
    for (int K = 1; K <= 15; ++K) {
        for (int L = 1; L <= 15; ++L) {
            const auto seq = enumerate_punched_farey(K, L);
            for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
                ASSERT_EQ(next_punched_farey_term(seq[i], K, L), seq[i + 1]);
            }
        }
    }
}

TEST(VerifyProperties, FlagsBrokenSequences) {
    // Missing term 1/3 breaks the determinant at (1/4, 2/5).
    EXPECT_THROW(verify_terms(from_pairs({{0, 1}, {1, 5}, {1, 4}, {2, 5}, {1, 2}, {2, 3}, {1, 1}, {2, 1}, {1, 0}}), 5, 2),
                 PropertyViolation);
    // Out of order.
    EXPECT_THROW(verify_terms(from_pairs({{0, 1}, {1, 1}, {1, 2}, {1, 0}}), 2, 1), PropertyViolation);
    // Wrong terminal.
    EXPECT_THROW(verify_terms(from_pairs({{0, 1}, {1, 2}, {1, 1}}), 2, 1), PropertyViolation);
    // Term outside the box.
    EXPECT_THROW(verify_terms(from_pairs({{0, 1}, {1, 3}, {1, 2}, {1, 1}, {1, 0}}), 2, 1), PropertyViolation);

    try {
        verify_terms(from_pairs({{0, 1}, {1, 5}, {1, 4}, {2, 5}, {1, 2}, {2, 3}, {1, 1}, {2, 1}, {1, 0}}), 5, 2);
    } catch (const PropertyViolation& e) {
        EXPECT_NE(std::string(e.what()).find("1/4"), std::string::npos) << e.what();
    }
}

TEST(LocateInterval, HalfOpenLeft) {
    const auto seq = enumerate_punched_farey(5, 2);
    auto at = [&](double r) {
        const auto k = locate_interval(seq, r);
        return std::make_pair(seq[k], seq[k + 1]);
    };
    EXPECT_EQ(at(0.45), std::make_pair(make_fraction(2, 5), make_fraction(1, 2)));
    EXPECT_EQ(at(0.5), std::make_pair(make_fraction(2, 5), make_fraction(1, 2)));
    EXPECT_EQ(at(3.0), std::make_pair(make_fraction(2, 1), make_fraction(1, 0)));
    EXPECT_EQ(at(1e-300), std::make_pair(make_fraction(0, 1), make_fraction(1, 5)));
    EXPECT_EQ(at(2.0), std::make_pair(make_fraction(1, 1), make_fraction(2, 1)));

    EXPECT_EQ(locate_interval(seq, make_fraction(1, 2)), 4u);
    EXPECT_EQ(locate_interval(seq, make_fraction(3, 7)), 4u);

    EXPECT_THROW(locate_interval(seq, 0.0), ValidationError);
    EXPECT_THROW(locate_interval(seq, -1.0), ValidationError);
    EXPECT_THROW(locate_interval(seq, INFINITY), ValidationError);
    EXPECT_THROW(locate_interval(seq, NAN), ValidationError);
}

TEST(LocateInterval, ConsistentOnRandomRatios) {
    std::mt19937_64 rng(7);
    for (int K : {1, 3, 7, 15, 63}) {
        for (int L : {1, 2, 7, 31}) {
            const auto seq = enumerate_punched_farey(K, L);
            for (int i = 0; i < 2000; ++i) {
                const double r = oracle::log_uniform(rng, 1e-3, 1e3);
                const auto k = locate_interval(seq, r);
                ASSERT_LT(k + 1, seq.size());
                EXPECT_EQ(compare(r, seq[k]), std::partial_ordering::greater);
                EXPECT_NE(compare(r, seq[k + 1]), std::partial_ordering::greater);
            }
            // Exactly on every finite term: that term is the right endpoint.
            for (std::size_t j = 1; j + 1 < seq.size(); ++j) {
                EXPECT_EQ(locate_interval(seq, seq[j]), j - 1);
            }
        }
    }
}
