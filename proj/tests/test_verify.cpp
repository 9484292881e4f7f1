#include <hpcs/verify.hpp>

#include <gtest/gtest.h>

using namespace hpcs;
using namespace hpcs::verify;

TEST(Budget, VacuumValues)
{
    const auto b = uncertainty_budget(basis_state(0, 12), 1);
    EXPECT_NEAR(b.dX2, 0.5, 1e-15);
    EXPECT_NEAR(b.dP2, 0.5, 1e-15);
    EXPECT_NEAR(b.commutator_term, 0.25, 1e-15);
    EXPECT_NEAR(b.anticommutator_term, 0.0, 1e-15);
    EXPECT_NEAR(b.lagrange_B.real(), 1.0, 1e-15);
}

TEST(Budget, GuardBandRejectsEdgeMass)
{
    EXPECT_THROW(uncertainty_budget(basis_state(11, 12), 1), GuardBandError);
}

TEST(Budget, HpcsSaturatesHeisenberg)
{
    const auto v = hpcs_fock(HpcsParams(3, 1, 1.5, -0.4));
    const auto b = uncertainty_budget(v, 3);
    EXPECT_NEAR(b.heisenberg_gap() / (b.dX2 * b.dP2), 0.0, 1e-10);
    EXPECT_NEAR(b.dX2, b.dP2, 1e-10 * b.dX2);
}

TEST(Residual, ExactForHpcsAndNonzeroOtherwise)
{
    const HpcsParams p(2, 0, 1.0, 1.0);
    const auto v = hpcs_fock(p);
    EXPECT_LT(eigen_residual(v, 2, std::pow(p.alpha(), 2)), 1e-13);
    EXPECT_GT(eigen_residual(v, 2, 2.0 * std::pow(p.alpha(), 2)), 0.1);
    EXPECT_THROW(eigen_residual(basis_state(0, 2), 2, 1.0), GuardBandError);
}

TEST(Gram, FamiliesAreOrthonormal)
{
    std::vector<FockVector> s;
    for (int k = 0; k < 4; ++k) s.push_back(hpcs_fock(HpcsParams(4, k, 0.0, 3.0), 90));
    EXPECT_LT(distance_from_identity(gram_matrix(s)), 1e-13);
    s.push_back(hpcs_fock(HpcsParams(2, 0, 0.0, 3.0), 40));
    EXPECT_THROW(gram_matrix(s), DomainError);
}

TEST(Checks, ToleranceSemantics)
{
    EXPECT_TRUE(check("a", 1e-9, 1e-8).passed);
    EXPECT_FALSE(check("a", 1e-7, 1e-8).passed);
    EXPECT_FALSE(check("a", std::nan(""), 1e-8).passed);
    EXPECT_TRUE(check_exceeds("b", 0.2, 0.1).passed);
    EXPECT_TRUE(info("c", 5.0, "note").passed);
}

TEST(Checks, ReferenceCaseParameters)
{
    const auto cases = figure_cases();
    ASSERT_EQ(cases.size(), 9u);
    EXPECT_DOUBLE_EQ(cases[0].params.x0, std::pow(2.0, 1.5));
    EXPECT_DOUBLE_EQ(cases[1].params.x0, std::sqrt(10.0));
    for (std::size_t i = 2; i < 9; ++i) EXPECT_DOUBLE_EQ(cases[i].params.p0, 10.0);
}

TEST(Checks, AngleConsistency) { EXPECT_TRUE(all_passed(angle_consistency_checks())); }

TEST(Checks, HeisenbergCharacterization) { EXPECT_TRUE(all_passed(heisenberg_characterization_checks())); }

TEST(Checks, MutationBreaksDensityRoute)
{
    const auto d = route_diffs(figure_cases()[0].params, figure_times(), AngleMutation{0.1});
    EXPECT_GT(d.angles_vs_fock, 1e-3);
    EXPECT_LT(d.closed_vs_fock, 1e-8);
}

TEST(Suites, InfoEntriesPresent)
{
    const auto info = info_entries();
    bool n30 = false;
    for (const auto& c : info) {
        EXPECT_TRUE(c.informational);
        n30 = n30 || c.name.find("N30") != std::string::npos;
    }
    EXPECT_TRUE(n30);
}

TEST(Suites, UnknownSuiteRejected) { EXPECT_THROW(run_suite("nope"), DomainError); }

TEST(Suites, SqueezedSuitePasses)
{
    const auto res = run_suite("squeezed");
    for (const auto& c : res) EXPECT_TRUE(c.passed) << c.name << " " << c.measured << " " << c.details;
}
