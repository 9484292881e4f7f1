#include <hpcs/specfun.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace hpcs;
using namespace hpcs::specfun;

TEST(Hermite, LowDegreeValues)
{
    EXPECT_DOUBLE_EQ(hermite(0, 1.7), 1.0);
    EXPECT_DOUBLE_EQ(hermite(1, 1.7), 3.4);
    EXPECT_DOUBLE_EQ(hermite(3, 2.0), 40.0);
    EXPECT_NEAR(hermite(10, 0.7), 38802.826035097599, 1e-9 * 38802.8);
}

TEST(Hermite, DegreeCapAndOverflow)
{
    EXPECT_THROW(hermite(401, 0.1), DomainError);
    EXPECT_THROW(hermite(-1, 0.1), DomainError);
    EXPECT_THROW(hermite(390, 1e3), ConvergenceError);
}

TEST(HermitePsi, MatchesReferenceValues)
{
    EXPECT_NEAR(hermite_psi(5, 1.3), -0.39939146281375076, 1e-14);
    EXPECT_NEAR(hermite_psi(40, 3.0), 0.057369581235740706, 1e-13);
    EXPECT_NEAR(hermite_psi(300, 10.0), 0.14042159396551646, 1e-12);
}

TEST(HermitePsi, AllMatchesSingle)
{
    const auto all = hermite_psi_all(60, -2.3);
    ASSERT_EQ(all.size(), 61u);
    for (int n : {0, 1, 17, 60}) EXPECT_NEAR(all[n], hermite_psi(n, -2.3), 1e-15);
}

TEST(HermitePsi, NormalizedOnGrid)
{
    const auto xs = linspace(-20.0, 20.0, 4001);
    for (int n : {0, 3, 50}) {
        std::vector<double> f;
        for (double x : xs) f.push_back(std::pow(hermite_psi(n, x), 2));
        EXPECT_NEAR(trapezoid(f, xs[1] - xs[0]), 1.0, 1e-10) << n;
    }
}

TEST(Pochhammer, Values)
{
    EXPECT_NEAR(pochhammer(0.5, 4).real(), 6.5625, 1e-14);
    EXPECT_EQ(pochhammer(Complex{2.0, 1.0}, 0), Complex(1.0));
    EXPECT_NEAR(std::abs(pochhammer(-2.0, 3)), 0.0, 0.0);
}

TEST(Hyp2f1, TerminatingAtArgumentTwo)
{
    const Complex v = hyp2f1_terminating(3, Complex{0.25, 0.1}, 0.5, 2.0);
    EXPECT_NEAR(v.real(), 0.0, 1e-14);
    EXPECT_NEAR(v.imag(), -0.36906666666666669, 1e-14);
}

TEST(Hyp2f1, RejectsNonPositiveIntegerC)
{
    EXPECT_THROW(hyp2f1_terminating(4, 1.0, -2.0, 0.5), DomainError);
}

TEST(Hyp1f1, ReferenceValues)
{
    EXPECT_NEAR(hyp1f1(0.3, 1.7, 4.2).value.real(), 4.2387571202895844, 1e-13);
    EXPECT_NEAR(hyp1f1(-3.0, 0.5, 2.0).value.real(), 0.73333333333333333, 1e-14);
    EXPECT_NEAR(hyp1f1(0.5, 1.5, -20.0).value.real(), 0.19816636482997365, 1e-13);
}

TEST(Hyp1f1, CancellingArgumentUsesExtendedPrecision)
{
    // (e^z - 1)/z at z = -30; the double series loses every digit
    const auto r = hyp1f1(1.0, 2.0, -30.0);
    EXPECT_NEAR(r.value.real(), 0.033333333333330214, 1e-16);
    EXPECT_GT(r.precision_digits, 16);
}

TEST(Hyp1f1, TerminatingIsExact)
{
    const auto r = hyp1f1(-2.0, 3.0, 5.0);
    EXPECT_NEAR(r.value.real(), 1.0 - 10.0 / 3.0 + 25.0 / 12.0, 1e-14);
    EXPECT_EQ(r.tail_bound, 0.0);
}

TEST(SeriesSum, GeometricTail)
{
    const auto r = sum_tail_bounded<Complex>([](std::size_t n) { return Complex(std::pow(0.5, double(n))); }, 1e-15, 1000);
    EXPECT_NEAR(r.value.real(), 2.0, 1e-14);
    EXPECT_LE(r.tail_bound, 1e-14);
}

TEST(SeriesSum, DivergentSeriesThrows)
{
    EXPECT_THROW(sum_tail_bounded<Complex>([](std::size_t n) { return Complex(double(n + 1)); }, 1e-15, 500),
                 NonConvergence);
}

TEST(Quadrature, TrapezoidGaussian)
{
    EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 2001), std::sqrt(pi), 1e-12);
}
