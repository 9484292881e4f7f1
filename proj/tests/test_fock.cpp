#include <hpcs/fock.hpp>
#include <hpcs/hpcs.hpp>

#include <gtest/gtest.h>

using namespace hpcs;

TEST(Ladder, AnnihilateCreate)
{
    const auto v = basis_state(3, 6);
    const auto a = annihilate(v);
    EXPECT_NEAR(std::abs(a.amps[2] - std::sqrt(3.0)), 0.0, 1e-15);
    const auto c = create(v);
    EXPECT_NEAR(std::abs(c.amps[4] - 2.0), 0.0, 1e-15);
    EXPECT_THROW(basis_state(7, 6), DomainError);
}

TEST(Ladder, CreateAtTopRecordsTruncation)
{
    const auto c = create(basis_state(4, 4));
    EXPECT_EQ(c.amps.norm(), 0.0);
    EXPECT_NEAR(c.tail_mass, 5.0, 1e-14);
}

TEST(Ladder, PowerMatrixMatchesRepeatedAnnihilation)
{
    const int N = 12;
    Matrix a = annihilation_operator(N).matrix;
    const Matrix L = ladder_power(3, N).matrix;
    EXPECT_LT((L - a * a * a).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Commutator, InteriorEqualsIdentity)
{
    const int N = 20;
    const Matrix a = annihilation_operator(N).matrix;
    const Matrix ad = creation_operator(N).matrix;
    const Matrix c = a * ad - ad * a;
    EXPECT_LT((c.topLeftCorner(N, N) - Matrix::Identity(N, N)).cwiseAbs().maxCoeff(), 1e-13);
    // the last diagonal entry is the truncation artifact -N
    EXPECT_NEAR(c(N, N).real(), -double(N), 1e-12);
}

TEST(XP, VacuumVariancesAndCommutator)
{
    const auto ops = xp_operators(1, 10);
    const auto v = basis_state(0, 10);
    EXPECT_NEAR(variance(v, ops.X), 0.5, 1e-14);
    EXPECT_NEAR(variance(v, ops.P), 0.5, 1e-14);
    EXPECT_NEAR(expectation(v, ops.O).real(), 1.0, 1e-14);
    EXPECT_THROW(xp_operators(3, 5), DomainError);
}

TEST(MatrixExp, DisplacementOfVacuumIsCoherent)
{
    const Complex alpha{0.8, -0.6};
    const int N = 60;
    const Matrix a = annihilation_operator(N).matrix;
    const FockOperator G{alpha * a.adjoint() - std::conj(alpha) * a, 1};
    const auto d = matrix_exp_apply(G, basis_state(0, N));
    const auto c = coherent_fock(alpha, N);
    EXPECT_NEAR(std::abs(inner(d, c)), 1.0, 1e-12);
}

TEST(MatrixExp, RaisesWhenBasisTooSmall)
{
    const int N = 8;
    const Matrix a = annihilation_operator(N).matrix;
    const Complex alpha{3.0, 0.0};
    const FockOperator G{alpha * a.adjoint() - std::conj(alpha) * a, 1};
    EXPECT_THROW(matrix_exp_apply(G, basis_state(0, N)), GuardBandError);
}

TEST(MatrixExp, RejectsNonAntiHermitianGenerator)
{
    const FockOperator G{number_operator(4).matrix.cast<Complex>(), 0};
    EXPECT_THROW(matrix_exp_apply(G, basis_state(0, 4)), DomainError);
}

TEST(PhaseEvolve, FullPeriodIsIdentity)
{
    const auto c = coherent_fock({1.0, 0.4}, 40);
    const auto e = phase_evolve(c, 2.0 * pi);
    EXPECT_LT((e.amps - c.amps).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(PositionBasis, ProjectInvertsWavefunction)
{
    const auto xs = specfun::linspace(-14.0, 14.0, 1401);
    const PositionBasis basis(xs, 40);
    const auto c = coherent_fock({1.2, -0.5}, 40);
    const auto back = basis.project(basis.wavefunction(c));
    EXPECT_LT((back.amps - c.amps).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(PositionBasis, VacuumWavefunction)
{
    const Vector f = position_wavefunction(basis_state(0, 3), {0.0, 1.0});
    EXPECT_NEAR(f[0].real(), std::pow(pi, -0.25), 1e-15);
    EXPECT_NEAR(f[1].real(), std::pow(pi, -0.25) * std::exp(-0.5), 1e-15);
}

TEST(Phase, MaxDiffUpToPhase)
{
    Vector a(3);
    a << 1.0, Complex(0.0, 2.0), -0.5;
    const Vector b = a * std::polar(1.0, 0.7);
    EXPECT_LT(max_diff_up_to_phase(a, b), 1e-15);
}
