#include <qlevy/errors.hpp>
#include <qlevy/wick.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace qlevy;
namespace oracle = qlevy::testing;

namespace {

std::vector<Interval> random_word(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> pt(0, 8);
    std::vector<Interval> w;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) {
        int a = pt(rng);
        int b = pt(rng);
        while (b == a) b = pt(rng);
        w.emplace_back(0.25 * std::min(a, b), 0.25 * std::max(a, b));
    }
    return w;
}

std::vector<Interval> rotate(std::vector<Interval> w) {
    std::rotate(w.begin(), w.begin() + 1, w.end());
    return w;
}

} // namespace

TEST(ConstantMoment, LowOrders) {
    for (double q : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
        for (double t : {0.5, 1.0, 2.5}) {
            EXPECT_DOUBLE_EQ(constant_q_moment(q, 2, t), t);
            EXPECT_NEAR(constant_q_moment(q, 4, t), (2 + q) * t * t, 1e-12 * t * t);
            EXPECT_NEAR(constant_q_moment(q, 6, t), (5 + 6 * q + 3 * q * q + q * q * q) * t * t * t, 1e-12 * t * t * t);
            EXPECT_EQ(constant_q_moment(q, 5, t), 0.0);
        }
    }
    EXPECT_EQ(constant_q_moment(0.0, 4, 1.0), 2.0);
    EXPECT_EQ(constant_q_moment(1.0, 6, 1.0), 15.0);
}

TEST(ConstantMoment, Endpoints) {
    for (int k = 1; k <= 6; ++k) {
        EXPECT_EQ(constant_q_moment(1.0, 2 * k, 1.0), static_cast<double>(oracle::double_factorial_odd(2 * k)));
        EXPECT_EQ(constant_q_moment(0.0, 2 * k, 1.0), static_cast<double>(oracle::catalan(k)));
        EXPECT_EQ(constant_q_moment(-1.0, 2 * k, 1.0), 1.0);
    }
}

TEST(ConstantMoment, Errors) {
    EXPECT_THROW(constant_q_moment(1.5, 4, 1.0), InvalidArgument);
    EXPECT_THROW(constant_q_moment(0.5, 0, 1.0), InvalidArgument);
    EXPECT_THROW(constant_q_moment(0.5, 4, -1.0), InvalidArgument);
}

TEST(MixedConstant, Examples) {
    const Interval I(0, 1), J(2, 3);
    const std::vector<Interval> ijij{I, J, I, J};
    EXPECT_DOUBLE_EQ(mixed_moment_constant(0.3, ijij), 0.3);
    EXPECT_DOUBLE_EQ(mixed_moment_constant(0.3, std::vector<Interval>{I, I}), 1.0);
    EXPECT_EQ(mixed_moment_constant(0.3, std::vector<Interval>{I, J}), 0.0);
    EXPECT_EQ(mixed_moment_constant(0.3, std::vector<Interval>{I, I, J}), 0.0);
    EXPECT_THROW(mixed_moment_constant(-1.2, ijij), InvalidArgument);
}

TEST(MixedConstant, MatchesWickGeneral) {
    std::mt19937 rng(7);
    for (double q : {-0.8, 0.0, 0.45}) {
        const PairingWeight w = [q](const PairPartition& p) { return std::pow(q, crossings(p)); };
        for (int trial = 0; trial < 40; ++trial) {
            const auto word = random_word(rng, 6);
            EXPECT_NEAR(mixed_moment_constant(q, word), wick_general(w, word), 1e-13);
        }
    }
}

TEST(WickGeneral, Examples) {
    const std::vector<Interval> four(4, Interval(0, 1));
    EXPECT_EQ(wick_general([](const PairPartition&) { return 1.0; }, four), 3.0);
    const std::vector<Interval> six(6, Interval(0, 1));
    EXPECT_EQ(wick_general([](const PairPartition& p) { return crossings(p) == 0 ? 1.0 : 0.0; }, six), 5.0);
    EXPECT_EQ(wick_general([](const PairPartition&) { return 1.0; }, std::vector<Interval>(3, Interval(0, 1))), 0.0);
}

TEST(MomentPolynomialConstant, Examples) {
    const auto p4 = moment_polynomial_constant(0.5, 4);
    EXPECT_EQ(p4.degree(), 2);
    EXPECT_DOUBLE_EQ(p4.coefficient(2), 2.5);
    EXPECT_EQ(p4.coefficient(0), 0.0);
    EXPECT_EQ(p4.coefficient(1), 0.0);
    EXPECT_DOUBLE_EQ(p4(2.0), 10.0);
    EXPECT_EQ(moment_polynomial_constant(0.5, 2), MomentPolynomial({0.0, 1.0}));
    EXPECT_TRUE(moment_polynomial_constant(0.5, 3).is_zero());
    EXPECT_EQ(MomentPolynomial({1.0, 0.0, 0.0}).degree(), 0);
    std::ostringstream os;
    os << p4;
    EXPECT_FALSE(os.str().empty());
}

TEST(Traciality, CyclicInvarianceConstant) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto w = random_word(rng, 6);
        EXPECT_NEAR(mixed_moment_constant(0.37, w), mixed_moment_constant(0.37, rotate(w)), 1e-12);
    }
}

TEST(Traciality, CyclicInvarianceKernelGauss) {
    const auto q = QKernel::exponential(0.6, 1.3);
    std::mt19937 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        const auto w = random_word(rng, 6);
        EXPECT_NEAR(mixed_moment_kernel(q, w, Gauss{12}), mixed_moment_kernel(q, rotate(w), Gauss{12}), 1e-8);
    }
}

TEST(Independence, Pyramidal) {
    const Interval I(0, 1.5), J(2, 2.75);
    for (double q : {-1.0, 0.2, 1.0}) {
        const std::vector<Interval> ijji{I, J, J, I};
        EXPECT_NEAR(mixed_moment_constant(q, ijji), 1.5 * 0.75, 1e-12);
    }
    const auto k = QKernel::exponential(0.5, 1.0);
    const std::vector<Interval> ijji{I, J, J, I};
    EXPECT_NEAR(mixed_moment_kernel(k, ijji, Gauss{16}), 1.5 * 0.75, 1e-12);
}

TEST(Additivity, WordExpansionMatchesJoinedInterval) {
    const double s = 0.4, t = 0.85;
    const Interval A(0, s), B(s, s + t);
    for (double q : {-0.6, 0.3, 1.0}) {
        for (int n = 1; n <= 6; ++n) {
            double expanded = 0.0;
            for (int mask = 0; mask < (1 << n); ++mask) {
                std::vector<Interval> w;
                for (int k = 0; k < n; ++k) w.push_back((mask >> k) & 1 ? B : A);
                expanded += mixed_moment_constant(q, w);
            }
            EXPECT_NEAR(expanded, constant_q_moment(q, n, s + t), 1e-10) << "q=" << q << " n=" << n;
        }
    }
}

TEST(MixedKernel, ReducesToConstantEngine) {
    const auto q = QKernel::constant(0.35);
    const std::vector<Interval> w(4, Interval(0, 1.5));
    EXPECT_NEAR(mixed_moment_kernel(q, w, Gauss{8}), (2 + 0.35) * 2.25, 1e-13);
    EXPECT_NEAR(mixed_moment_kernel(q, w, Grid{6, 1.5}), (2 + 0.35) * 2.25, 1e-13);
    const std::vector<Interval> ij{Interval(0, 1), Interval(2, 3)};
    EXPECT_EQ(mixed_moment_kernel(QKernel::exponential(0.5, 1), ij, Gauss{8}), 0.0);
}

TEST(MixedKernel, FourthMomentIsTwoTSquaredPlusDoubleIntegral) {
    const auto q = QKernel::exponential(0.5, 1.0);
    const std::vector<Interval> w(4, Interval(0, 1));
    EXPECT_NEAR(mixed_moment_kernel(q, w, Gauss{24}), 2.3678794411714423216, 1e-13);
    const auto q2 = QKernel::exponential(0.5, 2.0);
    const std::vector<Interval> w2(4, Interval(0, 2));
    EXPECT_NEAR(mixed_moment_kernel(q2, w2, Gauss{24}), 8.0 + 0.75457890972218354507, 1e-12);
}

TEST(MixedKernel, CrossingWordGivesDoubleIntegral) {
    const auto q = QKernel::exponential(0.5, 1.0);
    const Interval I(0, 1);
    const std::vector<Interval> near{I, Interval(2, 3), I, Interval(2, 3)};
    const std::vector<Interval> far{I, Interval(3, 4), I, Interval(3, 4)};
    EXPECT_NEAR(mixed_moment_kernel(q, near, Gauss{16}), 0.073497971533040440393, 1e-14);
    EXPECT_NEAR(mixed_moment_kernel(q, far, Gauss{16}), 0.027038392694809493115, 1e-14);
    EXPECT_NEAR(mixed_moment_kernel(q, near, Gauss{16}), oracle::exp_kernel_disjoint_unit(0.5, 1.0, 0, 2), 1e-13);
}

TEST(MixedKernel, SixthMomentFrozen) {
    // 5 uncoupled pairings + 6 single crossings + 3 path terms + 1 triangle.
    const auto q = QKernel::exponential(0.5, 1.0);
    const std::vector<Interval> w(6, Interval(0, 1));
    const double S = 0.3678794411714423216, P = 0.13586478211945263102, T = 0.05075073121372975946;
    EXPECT_NEAR(5 + 6 * S + 3 * P + T, 7.6656217246007415821, 1e-15);
    EXPECT_NEAR(mixed_moment_kernel(q, w, Gauss{20}), 7.6656217246007415821, 1e-12);
}

TEST(MixedKernel, Guards) {
    const auto q = QKernel::exponential(0.5, 1.0);
    EXPECT_THROW(mixed_moment_kernel(q, std::vector<Interval>(10, Interval(0, 1)), Gauss{4}), SizeLimitError);
    EXPECT_THROW(mixed_moment_kernel(q, std::vector<Interval>{Interval(0, 0.3), Interval(0, 0.3)}, Grid{4, 1.0}),
                 AlignmentError);
    // odd words are zero but still alignment-checked
    EXPECT_THROW(mixed_moment_kernel(q, std::vector<Interval>{Interval(0, 0.3)}, Grid{4, 1.0}), AlignmentError);
}
