#include <hpcs/squeezed.hpp>

#include <gtest/gtest.h>

using namespace hpcs;

TEST(Squeeze, MuNuInvariant)
{
    const SqueezeParams sp(0.7, 1.3);
    EXPECT_NEAR(std::norm(sp.mu()) - std::norm(sp.nu()), 1.0, 1e-14);
    EXPECT_THROW(SqueezeParams(-0.1, 0.0), DomainError);
}

TEST(Squeeze, VacuumPhotonNumber)
{
    const SqueezeParams sp(0.5, 0.6);
    const auto v = apply_squeeze(sp, basis_state(0, 4));
    double nbar = 0.0;
    for (int n = 0; n <= v.nmax(); ++n) nbar += n * std::norm(v.amps[n]);
    EXPECT_NEAR(nbar, 0.271540317407622, 1e-12);  // sinh^2(0.5)
}

TEST(Squeeze, DisplacedSqueezedWavefunction)
{
    // S(z) D(alpha)|0> = D(mu alpha - nu alpha*) S(z)|0>
    const SqueezeParams sp(0.5, 0.6);
    const Complex alpha{1.0, 0.5};
    const Complex centre = std::sqrt(2.0) * (sp.mu() * alpha - sp.nu() * std::conj(alpha));
    EXPECT_NEAR(std::abs(do_ss_psi(sp, centre.real(), centre.imag(), 0.7)), 0.33320018852692435, 1e-12);
    EXPECT_NEAR(std::abs(do_ss_psi(sp, centre.real(), centre.imag(), -1.2)), 0.04456161466651441, 1e-12);
}

TEST(Squeeze, SqueezedHpcsIsEigenstate)
{
    const SqueezeParams sp(0.3, 0.7);
    const HpcsParams p(2, 1, 1.2, -0.4);
    const auto w = squeeze_hpcs(sp, p);
    const int N = w.nmax();
    const Matrix M = sp.mu() * annihilation_operator(N).matrix + sp.nu() * creation_operator(N).matrix;
    const Vector r = M * (M * w.amps) - std::pow(p.alpha(), 2) * w.amps;
    EXPECT_LT(r.head(N - 3).norm(), 1e-10);
}

TEST(Squeeze, EvenOddMappingMatchesFock)
{
    const double r = 0.35;
    const HpcsParams p(2, 0, 1.1, 0.6);
    const auto w = squeeze_hpcs(SqueezeParams(r, 0.0), p);
    const auto m = ss_pm_mapping(r, p.x0, p.p0);
    const auto xs = specfun::linspace(-10.0, 10.0, 201);
    const Vector f = position_wavefunction(w, xs);
    Vector g(f.size());
    for (std::size_t i = 0; i < xs.size(); ++i) g[static_cast<Eigen::Index>(i)] = ss_pm_psi(1, m.s, m.x0, m.p0, xs[i]);
    EXPECT_LT(max_diff_up_to_phase(g, f), 1e-10);
}

TEST(Bn, FiniteSumReference)
{
    // (j,k) = (1,0), R = 1/4
    const auto b = bn_recursion(0.25, 1, 0, 6);
    const double ref[] = {1, 1, 0.75, 0.25, -0.3125, -0.5625, -0.171875};
    for (int n = 0; n <= 6; ++n) {
        EXPECT_NEAR(b[n].real(), ref[n], 1e-15);
        EXPECT_NEAR(bn_closed_10(0.25, n).real(), ref[n], 1e-14);
        EXPECT_NEAR(bn_hermite_10(0.25, n).real(), ref[n], 1e-13);
        EXPECT_NEAR(bn_hyp1f1_10(0.25, n).real(), ref[n], 1e-13);
    }
}

TEST(Bn, ZeroRGivesOnes)
{
    for (const auto& v : bn_recursion(0.0, 2, 0, 4)) EXPECT_EQ(v, Complex(1.0));
}

TEST(Bn, ReferenceJ2J3)
{
    const double r21[] = {1.0, 1.0, 0.4, -1.6, -3.28, 8.24, 44.32, -84.224, -1014.944};
    const auto b = bn_recursion(0.1, 2, 1, 8);
    for (int n = 0; n <= 8; ++n) {
        EXPECT_NEAR(b[n].real(), r21[n], 1e-12 * std::max(1.0, std::abs(r21[n])));
        EXPECT_LT(relative_difference(bn_closed_2k(0.1, 1, n), r21[n]), 1e-12);
    }
    const Complex r30[] = {{1, 0}, {1, 0}, {0.7, -0.12}, {-5.3, -2.52}, {-24.1496, -6.552}, {259.1224, 299.688}, {3197.8036, 2512.60416}};
    const auto c = bn_recursion(Complex{0.05, 0.02}, 3, 0, 6);
    for (int n = 0; n <= 6; ++n) EXPECT_LT(relative_difference(c[n], r30[n]), 1e-13);
}

TEST(Bn, PatternMatchesRecursion)
{
    const Complex R{0.2, -0.15};
    for (int j = 1; j <= 3; ++j)
        for (int k = 0; k < j; ++k) {
            const auto b = bn_recursion(R, j, k, 14);
            for (int n = 0; n <= 14; ++n) EXPECT_LT(relative_difference(bn_pattern(R, j, k, n), b[n]), 1e-12);
        }
}

TEST(Bn, OverflowNamesLastFiniteIndex)
{
    try {
        bn_recursion(1e200, 3, 0, 20);
        FAIL();
    } catch (const ConvergenceError& e) {
        EXPECT_NE(std::string(e.what()).find("last finite index"), std::string::npos);
    }
}

TEST(Lomu, ValidatesInvariant)
{
    EXPECT_THROW(LomuParams(1, 0, 1.0, 0.5, 1.0), DomainError);
    EXPECT_THROW(LomuParams::from_squeeze(2, 0, 0.3, 0.0, 0.0), DomainError);
    EXPECT_THROW(LomuParams::from_squeeze(2, 2, 0.3, 0.0, 1.0), DomainError);
}

TEST(Lomu, Norm2Reference)
{
    const auto lp = LomuParams::from_squeeze(1, 0, 0.4, 0.0, 1.0);
    EXPECT_NEAR(lomu_norm2(lp), 4.2969370186888705, 1e-12);
}

TEST(Lomu, J1IsDisplacedSqueezedVacuum)
{
    // eigenstates of mu a + nu a^dag are S(z)|beta>
    const SqueezeParams sp(0.4, 0.3);
    const Complex alpha{0.6, -0.2};
    const auto lp = LomuParams::from_squeeze(1, 0, sp.r, sp.phi, alpha);
    const auto v = lomu_state(lp);
    const auto w = squeeze_hpcs(sp, HpcsParams(1, 0, std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag()));
    const auto n = std::min(v.amps.size(), w.amps.size());
    EXPECT_NEAR(std::abs(v.amps.head(n).dot(w.amps.head(n))), 1.0, 1e-12);
}

TEST(Lomu, EigenResidualAndNorm)
{
    for (int j = 1; j <= 3; ++j) {
        const auto lp = LomuParams::from_squeeze(j, j - 1, 0.4, 0.3, Complex{1.0, 0.4});
        const auto v = lomu_state(lp);
        EXPECT_NEAR(v.amps.norm(), 1.0, 1e-13);
        const Matrix L = ladder_power(j, v.nmax()).matrix;
        const Vector r = (lp.muj() * L + lp.nuj() * L.adjoint()) * v.amps - std::pow(lp.beta, j) * v.amps;
        EXPECT_LT(r.head(v.nmax() - 2 * j + 1).norm(), 1e-11) << j;
    }
}

TEST(Lomu, NuZeroIsHpcs)
{
    const auto lp = LomuParams(2, 1, 1.0, 0.0, Complex{1.1, 0.3});
    const auto v = lomu_state(lp);
    const Complex b = lp.beta;
    const auto h = hpcs_fock(HpcsParams(2, 1, std::sqrt(2.0) * b.real(), std::sqrt(2.0) * b.imag()), v.nmax());
    EXPECT_NEAR(std::abs(inner(v, h)), 1.0, 1e-13);
}

TEST(Lomu, ConvergenceRatio)
{
    const auto lp = LomuParams::from_squeeze(2, 0, 0.5, 0.0, 1.0);
    const auto rep = convergence_report(lp);
    EXPECT_TRUE(rep.within_5_percent);
    EXPECT_NEAR(rep.expected_two_step, std::pow(std::tanh(0.5), 2), 1e-14);
}

TEST(Lomu, Psi2kMatchesFock)
{
    const auto lp = LomuParams::from_squeeze(2, 1, 0.3, 0.7, Complex{1.0, 0.3});
    const auto xs = specfun::linspace(-10.0, 10.0, 401);
    const Vector f = position_wavefunction(lomu_state(lp), xs);
    const Vector g = lomu_psi_2k_normalized(Lomu2kParams(lp), 1, xs);
    EXPECT_LT(max_diff_up_to_phase(g, f), 1e-9);
}

TEST(Lomu, PollaczekArguments)
{
    const auto a = pollaczek_args(0.25, 1);
    EXPECT_DOUBLE_EQ(a.delta, 0.75);
    EXPECT_NEAR(std::abs(a.x - 0.5), 0.0, 1e-15);
}
