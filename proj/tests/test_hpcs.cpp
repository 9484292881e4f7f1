#include <hpcs/hpcs.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace hpcs;

namespace {

double rel(Complex a, Complex b) { return relative_difference(a, b); }

}  // namespace

TEST(Params, ValidatesK)
{
    EXPECT_THROW(HpcsParams(2, 5, 1.0, 0.0), DomainError);
    EXPECT_THROW(HpcsParams(0, 0, 1.0, 0.0), DomainError);
    try {
        HpcsParams(3, -1, 0.0, 0.0);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("0 <= k <= j-1"), std::string::npos);
    }
}

TEST(Params, EvolveRotatesCentre)
{
    const HpcsParams p(2, 0, 1.0, 2.0);
    const auto q = evolve(p, 0.4);
    const Complex expect = p.alpha() * std::polar(1.0, -0.4);
    EXPECT_NEAR(std::abs(q.alpha() - expect), 0.0, 1e-15);
}

TEST(SumS, ReferenceValues)
{
    EXPECT_LT(rel(sum_S(3, 1, 4.0, Method::series), 18.217404347358153), 1e-14);
    EXPECT_LT(rel(sum_S(3, 1, 4.0, Method::closed), 18.217404347358153), 1e-13);
    const Complex z{3.0, -2.0};
    const Complex ref{1.6244692080131356, -4.7066340877787635};
    EXPECT_LT(rel(sum_S(5, 2, z, Method::series), ref), 1e-13);
    EXPECT_LT(rel(sum_S(5, 2, z, Method::closed), ref), 1e-13);
}

TEST(SumS, KnownClosedForms)
{
    for (double z : {0.3, 2.0, -1.5}) {
        EXPECT_LT(rel(sum_S(1, 0, z), std::exp(z)), 1e-14);
        EXPECT_LT(rel(sum_S(2, 0, z), std::cosh(z)), 1e-14);
        EXPECT_LT(rel(sum_S(2, 1, z), std::sinh(z)), 1e-13);
    }
}

TEST(SumS, ScaledForm)
{
    EXPECT_NEAR(sum_S_scaled(4, 1, 50.0), 0.25, 1e-15);
    EXPECT_NEAR(sum_S_scaled(3, 1, 2.0), std::exp(-2.0) * sum_S(3, 1, 2.0, Method::series).real(), 1e-15);
}

TEST(SumS, CancellationNeedsExtendedPrecision)
{
    EXPECT_LT(rel(sum_S(1, 0, -30.0, Method::series), std::exp(-30.0)), 1e-12);
}

TEST(SumS, ClosedFormSmallArgument)
{
    // root-of-unity terms are O(1) while S(6,5,0.1) ~ 0.1^5/5!
    const Complex z{0.1, 0.0};
    EXPECT_LT(rel(sum_S(6, 5, z, Method::closed), sum_S(6, 5, z, Method::series)), 1e-13);
    EXPECT_NEAR(sum_S(6, 5, z).real(), 8.3333333333583854e-08, 1e-21);
}

TEST(GenG, ExactZeroDoesNotThrow)
{
    EXPECT_NEAR(std::abs(gen_G(2, 1, 0.0, {0.7, 0.2}, Method::closed)), 0.0, 1e-300);
    EXPECT_NEAR(std::abs(sum_S(3, 2, 0.0, Method::closed)), 0.0, 1e-300);
}

TEST(GenG, ReferenceValues)
{
    const Complex r1{0.41704887180877798, -0.029744631296193331};
    EXPECT_LT(rel(gen_G(2, 1, 0.4, {0.8, 0.3}, Method::series), r1), 1e-13);
    EXPECT_LT(rel(gen_G(2, 1, 0.4, {0.8, 0.3}, Method::closed), r1), 1e-13);
    const Complex r2{10.488469316451865, -4.623524083559469};
    EXPECT_LT(rel(gen_G(3, 2, -1.5, {-1.2, 0.9}, Method::series), r2), 1e-13);
    EXPECT_LT(rel(gen_G(3, 2, -1.5, {-1.2, 0.9}, Method::closed), r2), 1e-13);
}

TEST(GenG, OrdinaryGeneratingFunction)
{
    const Complex z{0.3, 0.2};
    EXPECT_LT(rel(gen_G(1, 0, 0.7, z, Method::series), std::exp(2.0 * 0.7 * z - z * z)), 1e-14);
}

TEST(Fock, CoherentPattern)
{
    // alpha = sqrt2: c_n = e^{-1} 2^{n/2} / sqrt(n!)
    const auto v = hpcs_fock(HpcsParams(1, 0, 2.0, 0.0));
    for (int n = 0; n <= 12; ++n)
        EXPECT_NEAR(v.amps[n].real(), std::exp(-1.0) * std::pow(2.0, 0.5 * n) / std::sqrt(std::tgamma(n + 1.0)), 1e-15);
    EXPECT_LE(v.tail_mass, 1e-14);
}

TEST(Fock, DegenerateLimit)
{
    const auto v = hpcs_fock(HpcsParams(3, 1, 0.0, 0.0));
    EXPECT_TRUE(v.degenerate);
    EXPECT_EQ(v.amps[1], Complex(1.0));
    EXPECT_NEAR(v.amps.norm(), 1.0, 0.0);
}

TEST(Fock, SupportOnResidueClass)
{
    const auto v = hpcs_fock(HpcsParams(4, 3, 1.0, -2.0));
    for (int n = 0; n <= v.nmax(); ++n)
        if (n % 4 != 3) EXPECT_EQ(v.amps[n], Complex(0.0));
    EXPECT_NEAR(v.amps.norm(), 1.0, 1e-14);
}

TEST(Fock, EigenvalueOfAj)
{
    const HpcsParams p(3, 2, 1.3, 0.7);
    const auto v = hpcs_fock(p);
    const auto av = apply_a_power(v, 3);
    const int top = v.nmax() - 6;
    EXPECT_LT((av.amps - std::pow(p.alpha(), 3) * v.amps).head(top + 1).norm(), 1e-12);
}

TEST(Wavefunction, ReferenceValues)
{
    EXPECT_NEAR(std::abs(psi_closed(HpcsParams(2, 0, std::pow(2.0, 1.5), 0.0), 0.3)), 0.025702826089217258, 1e-14);
    const auto p32 = evolve(HpcsParams(3, 2, 1.3, 0.7), 0.9);
    EXPECT_NEAR(std::abs(psi_closed(p32, -0.4)), 0.35594300910737794, 1e-13);
    EXPECT_NEAR(std::abs(psi_series(p32, -0.4, Method::series)), 0.35594300910737794, 1e-13);
    EXPECT_NEAR(std::abs(psi_series(HpcsParams(6, 4, 1.0, -0.8), 0.2)), 0.37988260936463754, 1e-13);
}

TEST(Wavefunction, ClosedFormLimitedToSmallJ)
{
    EXPECT_THROW(closed_form_state(HpcsParams(5, 0, 1.0, 1.0)), DomainError);
    EXPECT_THROW(closed_form_state(HpcsParams(2, 1, 0.0, 0.0)), DomainError);
}

TEST(Density, ReferenceValues)
{
    EXPECT_NEAR(rho(HpcsParams(4, 1, 0.0, 3.0), 1.1, 0.25), 0.12851216070463794, 1e-13);
    EXPECT_NEAR(rho(HpcsParams(2, 1, std::sqrt(10.0), 0.0), 0.7, 1.2), 0.29202095929562246, 1e-13);
}

TEST(Density, MatchesClosedWavefunction)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int j = 2; j <= 4; ++j)
        for (int k = 0; k < j; ++k)
            for (int i = 0; i < 10; ++i) {
                const HpcsParams p(j, k, u(rng), u(rng));
                const double x = u(rng);
                const double t = u(rng);
                EXPECT_NEAR(rho(p, x, t), std::norm(psi_closed(evolve(p, t), x)), 1e-13) << j << k;
            }
}

TEST(Density, MutationChangesDensity)
{
    const HpcsParams p(2, 0, std::pow(2.0, 1.5), 0.0);
    EXPECT_GT(std::abs(rho(p, 0.1, 1.0, AngleMutation{0.1}) - rho(p, 0.1, 1.0)), 1e-4);
}

TEST(EffectiveDisplacement, StateMatchesEvenOdd)
{
    const Complex alpha{1.2, -0.7};
    for (int sign : {1, -1}) {
        const HpcsParams p(2, sign == 1 ? 0 : 1, std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag());
        const auto target = hpcs_fock(p);
        EXPECT_NEAR(std::abs(inner(effective_displacement_state(sign, alpha, target.nmax()), target)), 1.0, 1e-13);
    }
    EXPECT_THROW(effective_displacement_state(-1, 0.0, 10), DomainError);
    EXPECT_THROW(effective_displacement_state(2, 1.0, 10), DomainError);
}

TEST(EffectiveDisplacement, OperatorIsNotUnitary)
{
    const Complex alpha{0.0, 1.0};
    const int nmax = displacement_nmax(alpha, 10);
    const Matrix D = effective_displacement_operator(1, alpha, nmax);
    const Matrix U = displacement_operator(alpha, nmax);
    const Matrix id = Matrix::Identity(10, 10);
    EXPECT_LT(((U * U.adjoint()).topLeftCorner(10, 10) - id).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GT(((D * D.adjoint()).topLeftCorner(10, 10) - id).cwiseAbs().maxCoeff(), 0.1);
}
