// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <hpcs/hpcs_all.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace hpcs::verify;

namespace {

struct Criterion {
    int id;
    const char* title;
    std::function<std::vector<CheckResult>()> run;
};

std::vector<CheckResult> criterion_10()
{
    auto out = mutation_checks(0.1);
    // the perturbed run of criterion 2 has to fail
    const auto mutated = triple_route_checks(hpcs::AngleMutation{0.1});
    int failing = 0;
    for (const auto& c : mutated) failing += c.passed ? 0 : 1;
    out.push_back(check_exceeds("criterion2_failures_under_mutation", failing, 0.0));
    return out;
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "dual-method identity S, G", [] { return dual_method_checks(); }},
        {2, "triple-route wavefunctions", [] { return triple_route_checks(); }},
        {3, "eigenproperty and Gram matrices", eigen_gram_checks},
        {4, "time evolution, norm, period", [] { return time_evolution_checks(); }},
        {5, "qualitative density properties", qualitative_checks},
        {6, "b_n triangle", [] { return bn_checks(); }},
        {7, "LO/MU states", lomu_checks},
        {8, "squeezed HPCS", squeezed_hpcs_checks},
        {9, "effective displacement operators", effective_displacement_checks},
        {10, "mutation sensitivity", criterion_10},
    };
    const auto t0 = std::chrono::steady_clock::now();
    bool all = true;
    for (const auto& c : criteria) {
        std::vector<CheckResult> res;
        std::string failure;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        bool ok = failure.empty() && all_passed(res);
        if (ok) {
            std::printf("PASS  criterion %d: %s (%zu checks)\n", c.id, c.title, res.size());
        } else {
            all = false;
            std::printf("FAIL  criterion %d: %s\n", c.id, c.title);
            if (!failure.empty()) std::printf("        %s\n", failure.c_str());
            for (const auto& r : res)
                if (!r.passed)
                    std::printf("        %s measured %.3g tol %.3g %s\n", r.name.c_str(), r.measured, r.tolerance,
                                r.details.c_str());
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("total runtime %.2f s\n", secs);
    return all ? 0 : 1;
}
