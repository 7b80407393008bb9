#include <qlevy/errors.hpp>
#include <qlevy/levy.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace qlevy;

namespace {

const std::vector<long> kNs{4096, 8192, 16384};

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

TEST(SigmaIncrement, Examples) {
    const WickConstantOracle o(0.5);
    for (long N : {1L, 3L, 10L}) {
        EXPECT_NEAR(sigma_increment_moment(o, class_of({1, 1}), 1.0, N), 1.0 / N, 1e-15);
        EXPECT_EQ(sigma_increment_moment(o, class_of({1, 2}), 1.0, N), 0.0);
        EXPECT_NEAR(sigma_increment_moment(o, class_of({1, 2, 1, 2}), 1.0, N), 0.5 / (N * N), 1e-15);
    }
    const auto w = sigma_word(class_of({2, 1, 2}), 1.0, 4);
    ASSERT_EQ(w.size(), 3u);
    EXPECT_EQ(w[0], Interval(2, 2.25));
    EXPECT_EQ(w[1], Interval(1, 1.25));
    EXPECT_THROW(sigma_word(class_of({1, 2}), 3.0, 2), DomainError);
    EXPECT_THROW(sigma_word(class_of({1, 2}), 1.0, 0), InvalidArgument);
}

TEST(SigmaIncrement, FockOracleNeedsAlignment) {
    const FockOracle o(ProcessSpec(QKernel::constant(0.5), Grid{12, 3.0}));
    EXPECT_NEAR(sigma_increment_moment(o, class_of({1, 1}), 1.0, 4), 0.25, 1e-15);
    EXPECT_THROW(sigma_increment_moment(o, class_of({1, 1}), 1.0, 3), AlignmentError);
}

TEST(EstimateC, ExactOracles) {
    const WickConstantOracle o(0.5);
    const auto c1 = estimate_c(o, class_of({1, 2, 1, 2}), 1.0, kNs);
    EXPECT_NEAR(c1.value, 0.5, 1e-10);
    EXPECT_LT(c1.std_error, 1e-10);
    EXPECT_NEAR(estimate_c(o, class_of({1, 1}), 1.0, kNs).value, 1.0, 1e-10);
    const auto lone = estimate_c(o, class_of({1, 2, 2}), 1.0, kNs);
    EXPECT_LE(std::fabs(lone.value), lone.std_error + 1e-12);
    const std::vector<long> bad{4, 4};
    EXPECT_THROW(estimate_c(o, class_of({1, 1}), 1.0, bad), InvalidArgument);
    EXPECT_THROW(estimate_c(o, class_of({1, 1}), 1.0, std::vector<long>{4}), InvalidArgument);
}

TEST(EstimateC, FockOracleMatchesPattern) {
    const std::vector<long> Ns{2, 4};
    const FockOracle o(ProcessSpec(QKernel::constant(-0.4), Grid{20, 5.0}));
    for (const auto& s : enumerate_order_classes(4)) {
        const auto c = estimate_c(o, s, 1.0, Ns);
        const auto p = pairing_of(s);
        const double expected = p ? std::pow(-0.4, crossings(*p)) : 0.0;
        EXPECT_NEAR(c.value, expected, c.std_error + 1e-8) << s;
    }
}

TEST(EstimateC, ConstantPatternThroughN6) {
    const WickConstantOracle o(0.5);
    for (int n : {2, 4, 6}) {
        for (const auto& s : enumerate_order_classes(n)) {
            const auto c = estimate_c(o, s, 1.0, kNs);
            const auto p = pairing_of(s);
            const double expected = p ? std::pow(0.5, crossings(*p)) : 0.0;
            EXPECT_NEAR(c.value, expected, c.std_error + 1e-8) << s;
        }
    }
}

TEST(Scaling, PowersOfFactor) {
    const WickConstantOracle o(0.3);
    for (const auto& s : enumerate_order_classes(4)) {
        if (!pairing_of(s)) continue;
        const auto r = c_scaling_check(o, s, 1.0, 2, kNs);
        EXPECT_EQ(r.expected, 4.0);
        EXPECT_LT(r.deviation, 1e-6) << s;
    }
    const auto r3 = c_scaling_check(o, class_of({1, 1}), 0.2, 3, kNs);
    EXPECT_NEAR(r3.ratio, 3.0, 1e-8);
    const auto zero = c_scaling_check(o, class_of({1, 2}), 0.2, 2, kNs);
    EXPECT_TRUE(std::isnan(zero.ratio));
    EXPECT_EQ(zero.deviation, 0.0);
}

TEST(AssemblePolynomial, ReproducesConstantMoments) {
    const double q = 0.5;
    const WickConstantOracle o(q);
    for (int n : {2, 4, 6}) {
        std::vector<CCoefficient> cs;
        for (const auto& s : enumerate_order_classes(n)) cs.push_back(estimate_c(o, s, 1.0, kNs));
        const auto got = assemble_polynomial(cs, n);
        const auto want = moment_polynomial_constant(q, n);
        for (int d = 0; d <= n; ++d) {
            EXPECT_NEAR(got.coefficient(static_cast<std::size_t>(d)), want.coefficient(static_cast<std::size_t>(d)), 1e-6)
                << "n=" << n << " d=" << d;
        }
    }
}

TEST(AssemblePolynomial, HandBuiltInputs) {
    std::vector<CCoefficient> cs;
    for (const auto& s : enumerate_order_classes(2)) cs.push_back({s, s.blocks() == 1 ? 1.0 : 0.0, 0.0, 1.0});
    EXPECT_EQ(assemble_polynomial(cs, 2), MomentPolynomial({0.0, 1.0}));

    for (auto& c : cs) c.value = 0.0;
    EXPECT_TRUE(assemble_polynomial(cs, 2).is_zero());

    auto missing = cs;
    missing.pop_back();
    EXPECT_THROW(assemble_polynomial(missing, 2), InvalidArgument);
    auto dup = cs;
    dup.back() = dup.front();
    EXPECT_THROW(assemble_polynomial(dup, 2), InvalidArgument);

    std::vector<CCoefficient> four;
    for (const auto& s : enumerate_order_classes(4)) {
        const auto p = pairing_of(s);
        four.push_back({s, p ? std::pow(0.2, crossings(*p)) : 0.0, 0.0, 1.0});
    }
    const auto p4 = assemble_polynomial(four, 4);
    EXPECT_NEAR(p4.coefficient(2), (4 + 2 * 0.2) / factorial(2), 1e-15);
    EXPECT_NEAR(p4.coefficient(2), 2.2, 1e-15);
}

TEST(LowMoments, CenteredAndDrifted) {
    const std::vector<double> ts{0.25, 0.5, 1.0, 2.0};
    const FockOracle centered(ProcessSpec(QKernel::constant(0.3), Grid{8, 2.0}));
    const auto c = low_moment_coefficients(centered, ts);
    EXPECT_NEAR(c.alpha, 0.0, 1e-15);
    EXPECT_NEAR(c.beta, 1.0, 1e-12);
    EXPECT_NEAR(c.gamma, 0.0, 1e-12);
    EXPECT_LT(c.residual, 1e-9);

    const FockOracle drifted(ProcessSpec(QKernel::constant(0.3), Grid{8, 2.0}, 0.7));
    const auto d = low_moment_coefficients(drifted, ts);
    EXPECT_NEAR(d.alpha, 0.7, 1e-14);
    EXPECT_NEAR(d.beta, 1.0, 1e-12);
    EXPECT_NEAR(d.gamma, 0.0, 1e-12);
    EXPECT_LT(d.residual, 1e-8);

    EXPECT_THROW(low_moment_coefficients(centered, std::vector<double>{1.0, 1.0, 2.0}), InvalidArgument);
}

TEST(OrderInvariance, ValidationRejectsBadCases) {
    const Interval I(0, 1), J(2, 3);
    EXPECT_NO_THROW(validate_order_preserving({{I, J, I, J}, {0, 1, 0, 1}}));
    EXPECT_THROW(validate_order_preserving({{I, J, I, J}, {0, 1, 0.5, 1}}), InvalidArgument);
    EXPECT_THROW(validate_order_preserving({{I, J}, {3, 0}}), InvalidArgument);
    EXPECT_THROW(validate_order_preserving({{I, Interval(0.5, 2)}, {0, 0}}), InvalidArgument);
    EXPECT_THROW(validate_order_preserving({{I, J}, {0}}), InvalidArgument);
}

TEST(OrderInvariance, ExponentialWitness) {
    const WickKernelOracle o(QKernel::exponential(0.5, 1.0), Gauss{16});
    const Interval I(0, 1), J(2, 3);
    const std::vector<ShiftCase> cases{{{I, J, I, J}, {0, 1, 0, 1}}};
    const auto r = order_invariance_check(o, cases, 1e-10);
    EXPECT_EQ(r.verdict, Verdict::Violated);
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_NEAR(r.violations[0].deviation, 0.046459578838230947279, 1e-12);
    EXPECT_TRUE(order_invariance_check(o, {}, 1e-10).verdict == Verdict::Vacuous);
}

TEST(OrderInvariance, ConstantBatteryHasNoViolations) {
    const WickConstantOracle o(0.7);
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> len(1, 6);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_real_distribution<double> gap(0.0, 2.0);
    std::vector<ShiftCase> cases;
    for (int trial = 0; trial < 100; ++trial) {
        // four disjoint unit intervals at 0, 2, 4, 6; shifts grow with position
        std::vector<double> shift_of(4);
        double acc = 0.0;
        for (auto& s : shift_of) {
            acc += gap(rng);
            s = acc;
        }
        ShiftCase c;
        const int n = len(rng);
        for (int k = 0; k < n; ++k) {
            const int b = pick(rng);
            c.word.emplace_back(2.0 * b, 2.0 * b + 1.0);
            c.shifts.push_back(shift_of[static_cast<std::size_t>(b)]);
        }
        cases.push_back(c);
    }
    const auto r = order_invariance_check(o, cases, 1e-10);
    EXPECT_EQ(r.verdict, Verdict::Holds);
    EXPECT_TRUE(r.violations.empty());
    EXPECT_LT(r.max_deviation, 1e-10);
}

TEST(Stationarity, ConstantAndExponential) {
    const std::vector<std::vector<Interval>> words{
        {Interval(0, 1), Interval(0.5, 2), Interval(0, 1), Interval(0.5, 2)},
        {Interval(0, 1), Interval(2, 3), Interval(0, 1), Interval(2, 3)}};
    const std::vector<double> shifts{0.5, 1.25, 7.0};
    const auto rc = stationarity_check(WickConstantOracle(0.4), words, shifts, 1e-10);
    EXPECT_EQ(rc.verdict, Verdict::Holds);
    const auto re = stationarity_check(WickKernelOracle(QKernel::exponential(0.5, 1.0), Gauss{16}), words, shifts, 1e-8);
    EXPECT_EQ(re.verdict, Verdict::Holds);
    EXPECT_LT(re.max_deviation, 1e-8);
}

TEST(Compare, DistinguishesQ) {
    const WickConstantOracle a(0.2), b(0.3);
    const auto r = compare_processes(a, b, 6, 1e-9);
    EXPECT_EQ(r.verdict, Comparison::Distinct);
    EXPECT_EQ(r.first_difference, 4);
    EXPECT_NEAR(r.gap, -0.1, 1e-9);
    EXPECT_NEAR(r.moments_a[3], 2.2, 1e-12);
    EXPECT_NEAR(r.moments_b[3], 2.3, 1e-12);

    const auto swapped = compare_processes(b, a, 6, 1e-9);
    EXPECT_EQ(swapped.first_difference, r.first_difference);
    EXPECT_EQ(swapped.gap, -r.gap);

    const auto same = compare_processes(a, a, 8, 0.0);
    EXPECT_EQ(same.verdict, Comparison::Indistinguishable);
    EXPECT_FALSE(same.first_difference.has_value());

    const auto cg = compare_processes(WickConstantOracle(0.0), WickConstantOracle(1.0), 4, 1e-9);
    EXPECT_EQ(cg.moments_a[3], 2.0);
    EXPECT_EQ(cg.moments_b[3], 3.0);
}

TEST(Compare, NearConstantExponential) {
    const WickConstantOracle a(1.0);
    const FockOracle b(ProcessSpec(QKernel::exponential(1.0, 1e-4), Grid{32, 1.0}));
    const auto r = compare_processes(a, b, 4, 1e-3);
    EXPECT_EQ(r.verdict, Comparison::Indistinguishable);
    EXPECT_NEAR(r.moments_b[3], 3.0, 1e-4);
}
