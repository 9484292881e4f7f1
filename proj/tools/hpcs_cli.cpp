#include <hpcs/hpcs_all.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/version.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::json;
using namespace hpcs;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, nonconvergent = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v)
{
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

void emit(const std::string& text, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw UsageError("cannot open '" + out + "' for writing");
    f << text;
}

json amplitudes(const FockVector& v)
{
    json a = json::array();
    for (int n = 0; n <= v.nmax(); ++n) a.push_back(cjson(v.amps[n]));
    return a;
}

std::size_t max_points()
{
    if (const char* e = std::getenv("HPCS_MAX_POINTS")) {
        try {
            return std::stoull(e);
        } catch (...) {
            throw UsageError("HPCS_MAX_POINTS must be a positive integer");
        }
    }
    return 100000;
}

// ---------------------------------------------------------------------------

struct StateArgs {
    int j = 1;
    int k = 0;
    double x0 = 0.0;
    double p0 = 0.0;
    int nmax = -1;
    bool lomu = false;
    double r = 0.0;
    double phi = 0.0;
    double beta_re = 1.0;
    double beta_im = 0.0;
    std::string out;
};

void validate_jk(int j, int k)
{
    if (j < 1) throw UsageError("j must be a positive integer");
    if (k < 0 || k > j - 1)
        throw UsageError("k = " + std::to_string(k) + " out of range: need 0 <= k <= j-1 (j = " + std::to_string(j) + ")");
}

int cmd_state(const StateArgs& a)
{
    validate_jk(a.j, a.k);
    json doc;
    FockVector v;
    if (a.lomu) {
        const auto lp = LomuParams::from_squeeze(a.j, a.k, a.r, a.phi, Complex{a.beta_re, a.beta_im});
        v = lomu_state(lp);
        doc["params"] = {{"kind", "lomu"}, {"j", a.j},   {"k", a.k},
                         {"r", a.r},       {"phi", a.phi}, {"beta", cjson(lp.beta)},
                         {"mu_j", cjson(lp.muj())}, {"nu_j", cjson(lp.nuj())}};
    } else {
        const HpcsParams p(a.j, a.k, a.x0, a.p0);
        v = hpcs_fock(p, a.nmax);
        doc["params"] = {{"kind", "hpcs"}, {"j", a.j}, {"k", a.k}, {"x0", a.x0}, {"p0", a.p0}, {"alpha", cjson(p.alpha())}};
    }
    doc["nmax"] = v.nmax();
    doc["tail_mass"] = v.tail_mass;
    doc["degenerate"] = v.degenerate;
    doc["amplitudes"] = amplitudes(v);
    emit(doc.dump(2) + "\n", a.out);
    return ok;
}

// ---------------------------------------------------------------------------

struct DensityArgs {
    int j = 2;
    int k = 0;
    double x0 = 0.0;
    double p0 = 0.0;
    double x_min = -15.0;
    double x_max = 15.0;
    std::size_t nx = 301;
    double t_min = 0.0;
    double t_max = 2.0 * pi;
    std::size_t nt = 128;
    std::string route = "closed";
    std::string out;
};

std::vector<double> grid(double lo, double hi, std::size_t n)
{
    if (n == 1) return {lo};
    return specfun::linspace(lo, hi, n);
}

int cmd_density(const DensityArgs& a)
{
    validate_jk(a.j, a.k);
    const bool want_closed = a.route != "fock";
    const bool want_fock = a.route != "closed";
    if (want_closed && (a.j < 2 || a.j > 4))
        throw UsageError("route '" + a.route + "' needs j in {2,3,4}; use --route fock for j = " + std::to_string(a.j));
    if (!(a.x_min < a.x_max)) throw UsageError("x-min must be below x-max");
    if (a.nx < 2) throw UsageError("nx must be at least 2");
    if (a.nt < 1) throw UsageError("nt must be at least 1");
    const std::size_t cap = max_points();
    if (a.nx * a.nt > cap)
        throw UsageError("grid of " + std::to_string(a.nx * a.nt) + " points exceeds the cap " + std::to_string(cap) +
                         " (set HPCS_MAX_POINTS to raise it)");

    const HpcsParams p(a.j, a.k, a.x0, a.p0);
    const auto xs = grid(a.x_min, a.x_max, a.nx);
    const auto ts = grid(a.t_min, a.t_max, a.nt);
    std::optional<FockVector> v;
    std::optional<PositionBasis> basis;
    if (want_fock) {
        v = hpcs_fock(p);
        basis.emplace(xs, v->nmax());
    }

    std::vector<std::string> rows(ts.size());
    auto work = [&](std::size_t it) {
        const double t = ts[it];
        Vector f;
        if (want_fock) f = basis->wavefunction(phase_evolve(*v, t));
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double fock = want_fock ? std::norm(f[static_cast<Eigen::Index>(i)]) : 0.0;
            const double closed = want_closed ? rho(p, xs[i], t) : 0.0;
            s += num(xs[i]) + "," + num(t) + "," + num(want_closed ? closed : fock);
            if (want_closed && want_fock) s += "," + num(fock) + "," + num(std::abs(closed - fock));
            s += "\n";
        }
        rows[it] = std::move(s);
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nthreads; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t it = w; it < ts.size(); it += nthreads) work(it);
        });
    for (auto& th : pool) th.join();

    std::string text = "# hpcs density j=" + std::to_string(a.j) + " k=" + std::to_string(a.k) + " x0=" + num(a.x0) +
                       " p0=" + num(a.p0) + " route=" + a.route + "\n";
    text += "# x in [" + num(a.x_min) + ", " + num(a.x_max) + "] nx=" + std::to_string(a.nx) + "; t in [" +
            num(a.t_min) + ", " + num(a.t_max) + "] nt=" + std::to_string(a.nt) + "\n";
    if (want_fock) text += "# fock nmax=" + std::to_string(v->nmax()) + " tail_mass=" + num(v->tail_mass) + "\n";
    if (want_closed && want_fock) text += "# rho: closed form, rho_alt: Fock route\n";
    text += want_closed && want_fock ? "x,t,rho,rho_alt,absdiff\n" : "x,t,rho\n";
    for (auto& r : rows) text += r;
    emit(text, a.out);
    return ok;
}

// ---------------------------------------------------------------------------

struct BnArgs {
    int j = 1;
    int k = 0;
    double R_re = 0.0;
    double R_im = 0.0;
    int nmax = 10;
    std::optional<double> r;
    double phi = 0.0;
    double beta_re = 1.0;
    double beta_im = 0.0;
    bool state = false;
    bool csv = false;
    std::string out;
};

int cmd_bn(const BnArgs& a)
{
    validate_jk(a.j, a.k);
    if (a.nmax < 0) throw UsageError("nmax must be non-negative");
    std::optional<LomuParams> lp;
    Complex R{a.R_re, a.R_im};
    if (a.r) {
        lp = LomuParams::from_squeeze(a.j, a.k, *a.r, a.phi, Complex{a.beta_re, a.beta_im});
        R = lp->R();
    }
    const auto b = bn_recursion(R, a.j, a.k, a.nmax);

    std::vector<std::string> names;
    std::vector<std::function<Complex(int)>> forms;
    std::string note;
    if (a.j == 1) {
        names = {"finite_sum", "hermite", "hyp1f1"};
        forms = {[&](int n) { return bn_closed_10(R, n); }, [&](int n) { return bn_hermite_10(R, n); },
                 [&](int n) { return bn_hyp1f1_10(R, n); }};
    } else if (a.j == 2) {
        names = {"pollaczek"};
        forms = {[&](int n) { return bn_closed_2k(R, a.k, n); }};
    } else {
        note = "no closed form; recursion only";
    }
    const bool pattern_ok = a.nmax <= 24;

    json rows = json::array();
    std::string csv = "n,b_re,b_im";
    if (pattern_ok) csv += ",pattern_re,pattern_im,pattern_reldiff";
    for (const auto& nm : names) csv += "," + nm + "_re," + nm + "_im," + nm + "_reldiff";
    csv += "\n";
    for (int n = 0; n <= a.nmax; ++n) {
        json row = {{"n", n}, {"b", cjson(b[n])}};
        csv += std::to_string(n) + "," + num(b[n].real()) + "," + num(b[n].imag());
        if (pattern_ok) {
            const Complex pv = bn_pattern(R, a.j, a.k, n);
            const double d = relative_difference(b[n], pv);
            row["pattern"] = cjson(pv);
            row["pattern_reldiff"] = d;
            csv += "," + num(pv.real()) + "," + num(pv.imag()) + "," + num(d);
        }
        for (std::size_t f = 0; f < forms.size(); ++f) {
            const Complex cv = forms[f](n);
            const double d = relative_difference(b[n], cv);
            row[names[f]] = cjson(cv);
            row[names[f] + "_reldiff"] = d;
            csv += "," + num(cv.real()) + "," + num(cv.imag()) + "," + num(d);
        }
        rows.push_back(row);
    }

    json doc = {{"j", a.j}, {"k", a.k}, {"R", cjson(R)}, {"nmax", a.nmax}, {"closed_forms", names}, {"table", rows}};
    if (!note.empty()) doc["note"] = note;
    if (lp) {
        const double n2 = lomu_norm2(*lp);
        const auto rep = convergence_report(*lp);
        doc["lomu"] = {{"r", *a.r},
                       {"phi", a.phi},
                       {"beta", cjson(lp->beta)},
                       {"norm2", n2},
                       {"convergence",
                        {{"per_index_ratio", rep.per_index_ratio},
                         {"expected_per_index", rep.expected_per_index},
                         {"two_step_ratio", rep.two_step_ratio},
                         {"expected_two_step", rep.expected_two_step},
                         {"within_5_percent", rep.within_5_percent}}}};
        if (a.state) {
            const auto v = lomu_state(*lp);
            doc["lomu"]["state"] = {{"nmax", v.nmax()}, {"tail_mass", v.tail_mass}, {"amplitudes", amplitudes(v)}};
        }
    }
    if (a.csv) {
        std::string head = "# b_n j=" + std::to_string(a.j) + " k=" + std::to_string(a.k) + " R=" + num(R.real()) +
                           (R.imag() < 0 ? "" : "+") + num(R.imag()) + "i\n";
        if (!note.empty()) head += "# " + note + "\n";
        if (lp) head += "# norm2=" + num(doc["lomu"]["norm2"].get<double>()) + "\n";
        emit(head + csv, a.out);
    } else {
        emit(doc.dump(2) + "\n", a.out);
    }
    return ok;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "all";
    std::string json_out;
    std::uint64_t seed = verify::default_seed;
#ifdef HPCS_ANGLE_MUTATION
    double mutation = HPCS_ANGLE_MUTATION;
#else
    double mutation = 0.0;
#endif
    bool quiet = false;
};

int cmd_verify(const VerifyArgs& a)
{
    if (a.suite != "hpcs" && a.suite != "squeezed" && a.suite != "figures" && a.suite != "all")
        throw UsageError("unknown suite '" + a.suite + "' (hpcs|squeezed|figures|all)");
    verify::SuiteOptions o;
    o.seed = a.seed;
    o.mutation.delta = a.mutation;
    const auto checks = verify::run_suite(a.suite, o);
    const bool passed = verify::all_passed(checks);

    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name},
                       {"passed", c.passed},
                       {"measured", c.measured},
                       {"tolerance", c.tolerance},
                       {"details", c.details},
                       {"informational", c.informational}});
    json doc = {{"suite", a.suite},
                {"checks", arr},
                {"passed", passed},
                {"seed", a.seed},
                {"angle_mutation", a.mutation},
                {"versions",
                 {{"hpcs", hpcs::version},
                  {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                std::to_string(EIGEN_MINOR_VERSION)},
                  {"boost", BOOST_LIB_VERSION},
                  {"compiler", __VERSION__},
                  {"cplusplus", __cplusplus}}}};
    if (!a.json_out.empty()) emit(doc.dump(2) + "\n", a.json_out);
    if (!a.quiet) {
        for (const auto& c : checks) {
            const char* tag = c.informational ? "INFO" : c.passed ? "PASS" : "FAIL";
            std::cout << tag << "  " << c.name;
            if (!c.informational) std::cout << "  " << num(c.measured) << " (tol " << num(c.tolerance) << ")";
            if (!c.details.empty()) std::cout << "  " << c.details;
            std::cout << "\n";
        }
        std::cout << (passed ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    return passed ? ok : check_failed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Higher-power coherent states and their squeezed extensions"};
    app.require_subcommand(1);

    StateArgs sa;
    auto* st = app.add_subcommand("state", "Fock amplitudes of |alpha; j, k> (or an LO/MU state with --lomu) as JSON");
    st->add_option("--j", sa.j, "power of the annihilation operator")->required();
    st->add_option("--k", sa.k, "family index, 0 <= k <= j-1")->required();
    st->add_option("--x0", sa.x0, "alpha = (x0 + i p0)/sqrt2");
    st->add_option("--p0", sa.p0);
    st->add_option("--nmax", sa.nmax, "basis cutoff (default: automatic)");
    st->add_flag("--lomu", sa.lomu, "eigenstate of mu^j a^j + nu^j a^dag^j");
    st->add_option("--r", sa.r, "squeeze magnitude (LO/MU)");
    st->add_option("--phi", sa.phi, "squeeze angle in radians (LO/MU)");
    st->add_option("--beta-re", sa.beta_re);
    st->add_option("--beta-im", sa.beta_im);
    st->add_option("--out", sa.out, "output file (default stdout)");

    DensityArgs da;
    auto* de = app.add_subcommand("density", "rho(x, t) on a grid as long-format CSV");
    de->add_option("--j", da.j)->required();
    de->add_option("--k", da.k)->required();
    de->add_option("--x0", da.x0);
    de->add_option("--p0", da.p0);
    de->add_option("--x-min", da.x_min);
    de->add_option("--x-max", da.x_max);
    de->add_option("--nx", da.nx);
    de->add_option("--t-min", da.t_min);
    de->add_option("--t-max", da.t_max);
    de->add_option("--nt", da.nt);
    de->add_option("--route", da.route, "closed | fock | both")->check(CLI::IsMember({"closed", "fock", "both"}));
    de->add_option("--out", da.out);

    BnArgs ba;
    auto* sq = app.add_subcommand("squeezed", "LO/MU coefficient tables");
    sq->require_subcommand(1);
    auto* bn = sq->add_subcommand("bn", "b_n from the recursion next to the available closed forms");
    bn->add_option("--j", ba.j)->required();
    bn->add_option("--k", ba.k)->required();
    bn->add_option("--R", ba.R_re, "real part of R = (nu mu / beta^2)^j");
    bn->add_option("--R-im", ba.R_im);
    bn->add_option("--nmax", ba.nmax);
    bn->add_option("--r", ba.r, "squeeze magnitude; R then follows from (r, phi, beta)");
    bn->add_option("--phi", ba.phi);
    bn->add_option("--beta-re", ba.beta_re);
    bn->add_option("--beta-im", ba.beta_im);
    bn->add_flag("--state", ba.state, "include the normalized Fock state (needs --r)");
    bn->add_flag("--csv", ba.csv, "CSV table instead of JSON");
    bn->add_option("--out", ba.out);

    VerifyArgs va;
    auto* ve = app.add_subcommand("verify", "run the cross-check suites");
    ve->add_option("--suite", va.suite, "hpcs | squeezed | figures | all");
    ve->add_option("--json", va.json_out, "write the JSON report here");
    ve->add_option("--seed", va.seed);
    ve->add_option("--angle-mutation", va.mutation, "add this offset to every interference angle (negative control)");
    ve->add_flag("--quiet", va.quiet);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (st->parsed()) return cmd_state(sa);
        if (de->parsed()) return cmd_density(da);
        if (bn->parsed()) return cmd_bn(ba);
        if (ve->parsed()) return cmd_verify(va);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const ConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return nonconvergent;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return check_failed;
    }
    return usage;
}
