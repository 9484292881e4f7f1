#pragma once

// Squeezed states: the squeeze operator applied to HPCS, and the
// ladder-operator / minimum-uncertainty states built from the b_n recursion.

#include <hpcs/common.hpp>
#include <hpcs/fock.hpp>
#include <hpcs/hpcs.hpp>
#include <hpcs/specfun.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace hpcs {

struct SqueezeParams {
    double r = 0.0;
    double phi = 0.0;

    SqueezeParams() = default;
    SqueezeParams(double r_, double phi_) : r(r_), phi(phi_)
    {
        if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(phi)) throw DomainError("squeeze: need finite r >= 0");
    }

    Complex z() const { return std::polar(r, phi); }
    Complex mu() const { return std::cosh(r); }
    Complex nu() const { return -std::polar(std::sinh(r), phi); }
};

/// Squeezed coherent state psi(x) with beta = [(mu+nu) x0 + i(mu-nu) p0]/sqrt2,
/// a Gaussian of complex width w = (mu+nu)/(mu-nu) centred at (x0, p0).
inline Complex do_ss_psi(const SqueezeParams& sp, double x0, double p0, double x)
{
    const Complex mu = sp.mu();
    const Complex nu = sp.nu();
    const Complex w = (mu + nu) / (mu - nu);
    const double d = x - x0;
    return std::pow(w.real() / pi, 0.25) * std::exp(-0.5 * d * d * w + I * p0 * x);
}

inline Complex do_ss_beta(const SqueezeParams& sp, double x0, double p0)
{
    return ((sp.mu() + sp.nu()) * x0 + I * (sp.mu() - sp.nu()) * p0) / std::sqrt(2.0);
}

/// Generator (z a^dag^2 - z* a^2)/2 of the squeeze operator.
inline FockOperator squeeze_generator(Complex z, int nmax)
{
    const Matrix a = annihilation_operator(nmax).matrix;
    const Matrix a2 = a * a;
    return {0.5 * (z * a2.adjoint() - std::conj(z) * a2), 2};
}

/// S(z) applied to an arbitrary state; the basis is enlarged until the
/// result is clear of the truncation edge.
inline FockVector apply_squeeze(const SqueezeParams& sp, const FockVector& v, int max_nmax = 4096)
{
    if (sp.r == 0.0) return v;
    int n = 24 + static_cast<int>(std::ceil(std::exp(2.0 * sp.r) * (v.nmax() + 12)));
    n = std::min(n, max_nmax);
    for (;;) {
        FockVector w;
        w.amps = Vector::Zero(n + 1);
        w.amps.head(v.amps.size()) = v.amps;
        w.tail_mass = v.tail_mass;
        w.normalized = v.normalized;
        try {
            return matrix_exp_apply(squeeze_generator(sp.z(), n), w);
        } catch (const GuardBandError&) {
            if (n >= max_nmax) throw;
            n = std::min(2 * n, max_nmax);
        }
    }
}

/// S(z)|alpha; j, k>.
inline FockVector squeeze_hpcs(const SqueezeParams& sp, const HpcsParams& p, int max_nmax = 4096)
{
    return apply_squeeze(sp, hpcs_fock(p), max_nmax);
}

/// Width and centre of the Gaussians of S(r)|alpha;2,k> for real z:
/// s = e^r, x0 -> e^r x0, p0 -> e^{-r} p0.
struct SsPmMapping {
    double s = 1.0;
    double x0 = 0.0;
    double p0 = 0.0;
};

inline SsPmMapping ss_pm_mapping(double r, double x0, double p0)
{
    return {std::exp(r), std::exp(r) * x0, std::exp(-r) * p0};
}

/// Even (sign +1) / odd (sign -1) squeezed state with real squeeze, width s.
inline Complex ss_pm_psi(int sign, double s, double x0, double p0, double x)
{
    const double ov = std::exp(-x0 * x0 / (s * s) - p0 * p0 * s * s);
    const double n = std::sqrt(pi) * 2.0 * s * (sign > 0 ? 1.0 + ov : 1.0 - ov);
    const Complex g1 = std::exp(Complex{-(x - x0) * (x - x0) / (2 * s * s), p0 * x});
    const Complex g2 = std::exp(Complex{-(x + x0) * (x + x0) / (2 * s * s), -p0 * x});
    return (g1 + double(sign) * g2) / std::sqrt(n);
}

// ---------------------------------------------------------------------------
// Ladder-operator / minimum-uncertainty states.

struct LomuParams {
    int j = 1;
    int k = 0;
    Complex mu{1.0, 0.0};  // j-th roots of the coefficients mu^j, nu^j
    Complex nu{0.0, 0.0};
    Complex beta{1.0, 0.0};

    LomuParams() = default;
    LomuParams(int j_, int k_, Complex mu_, Complex nu_, Complex beta_) : j(j_), k(k_), mu(mu_), nu(nu_), beta(beta_)
    {
        validate();
    }

    /// mu^j = cosh r, nu^j = -e^{i phi} sinh r; mu, nu the principal roots.
    static LomuParams from_squeeze(int j, int k, double r, double phi, Complex beta)
    {
        const double inv = 1.0 / j;
        return LomuParams(j, k, std::pow(Complex(std::cosh(r)), inv), std::pow(-std::polar(std::sinh(r), phi), inv), beta);
    }

    Complex muj() const { return std::pow(mu, j); }
    Complex nuj() const { return std::pow(nu, j); }
    Complex R() const { return nuj() * muj() / std::pow(beta, 2 * j); }
    Complex ratio_B() const { return beta / mu; }
    /// |nu/mu|^j, the per-index decay ratio of |c_n|^2.
    double decay_ratio() const { return std::abs(nuj() / muj()); }

    void validate() const
    {
        if (j < 1) throw DomainError("j must be a positive integer");
        if (k < 0 || k > j - 1) throw DomainError("k must satisfy 0 <= k <= j-1");
        if (beta == Complex{}) throw DomainError("lomu: beta must be nonzero (R = (nu mu / beta^2)^j)");
        if (std::abs(std::norm(muj()) - std::norm(nuj()) - 1.0) > 1e-12 * (std::norm(muj()) + std::norm(nuj())))
            throw DomainError("lomu: |mu^j|^2 - |nu^j|^2 must equal 1");
    }
};

/// T_n(j,k) = ((n-1)j + k + 1)_j = (nj+k)! / ((n-1)j+k)!.
inline double T_n(int n, int j, int k)
{
    return specfun::pochhammer(double((n - 1) * j + k + 1), static_cast<unsigned>(j)).real();
}

/// b_0 .. b_nmax from b_{n+2} = b_{n+1} - R T_{n+1} b_n, b_0 = b_1 = 1.
inline std::vector<Complex> bn_recursion(Complex R, int j, int k, int nmax)
{
    std::vector<Complex> b(static_cast<std::size_t>(std::max(nmax, 1)) + 1, Complex{1.0, 0.0});
    for (int n = 0; n + 2 <= nmax; ++n) {
        b[n + 2] = b[n + 1] - R * b[n] * T_n(n + 1, j, k);
        if (!std::isfinite(b[n + 2].real()) || !std::isfinite(b[n + 2].imag()))
            throw ConvergenceError("bn_recursion: overflow at n = " + std::to_string(n + 2) +
                                   "; last finite index " + std::to_string(n + 1));
    }
    b.resize(static_cast<std::size_t>(nmax) + 1);
    return b;
}

inline std::vector<Complex> bn_recursion(const LomuParams& lp, int nmax) { return bn_recursion(lp.R(), lp.j, lp.k, nmax); }

/// b_n as the sum over index sets 1 <= v_1 < ... <= n-1 with gaps >= 2 of (-R)^t prod T_{v_i}.
inline Complex bn_pattern(Complex R, int j, int k, int n)
{
    if (n < 0) throw DomainError("bn_pattern: negative n");
    if (n > 24) throw DomainError("bn_pattern: n > 24 (enumeration too costly); use bn_recursion");
    Complex sum{};
    std::function<void(int, Complex)> walk = [&](int next, Complex prod) {
        sum += prod;
        for (int v = next; v <= n - 1; ++v) walk(v + 2, prod * (-R) * T_n(v, j, k));
    };
    walk(1, Complex{1.0, 0.0});
    return sum;
}

/// b_n(1,0) by the finite sum over t of (-R)^t n! / (2^t t! (n-2t)!).
inline Complex bn_closed_10(Complex R, int n)
{
    Complex sum{};
    for (int t = 0; 2 * t <= n; ++t) {
        const double lc = std::lgamma(n + 1.0) - t * std::log(2.0) - std::lgamma(t + 1.0) - std::lgamma(n - 2.0 * t + 1.0);
        sum += std::pow(-R, t) * std::exp(lc);
    }
    return sum;
}

/// b_n(1,0) = (R/2)^{n/2} H_n((2R)^{-1/2}) with complex argument.
inline Complex bn_hermite_10(Complex R, int n)
{
    if (R == Complex{}) throw DomainError("bn_hermite_10: R = 0");
    const Complex x = 1.0 / std::sqrt(2.0 * R);
    Complex prev{0.0, 0.0};
    Complex cur{1.0, 0.0};
    for (int m = 0; m < n; ++m) {
        const Complex next = 2.0 * x * cur - 2.0 * double(m) * prev;
        prev = cur;
        cur = next;
    }
    return std::pow(std::sqrt(0.5 * R), n) * cur;
}

/// b_n(1,0) = (-R/2)^{[n/2]} n!/[n/2]! 1F1(-[n/2]; (2 + (-1)^{n+1})/2; 1/(2R)).
inline Complex bn_hyp1f1_10(Complex R, int n)
{
    if (R == Complex{}) throw DomainError("bn_hyp1f1_10: R = 0");
    const int h = n / 2;
    const double b = n % 2 == 0 ? 0.5 : 1.5;
    const double lf = std::lgamma(n + 1.0) - std::lgamma(h + 1.0);
    return std::pow(-0.5 * R, h) * std::exp(lf) * specfun::hyp1f1(double(-h), b, 1.0 / (2.0 * R)).value;
}

/// b_n(2,k) = i^n (1/2+k)_n 2^n R^{n/2} 2F1(-n, 1/4 + k/2 + i/(4 sqrt R); 1/2 + k; 2).
inline Complex bn_closed_2k(Complex R, int k, int n)
{
    if (k != 0 && k != 1) throw DomainError("bn_closed_2k: k must be 0 or 1");
    if (n == 0) return 1.0;
    if (R == Complex{}) return 1.0;  // limit of the polynomial in sqrt R
    const Complex sR = std::sqrt(R);
    const double c = 0.5 + k;
    const Complex b = 0.25 + 0.5 * k + I / (4.0 * sR);
    return std::pow(I, n) * specfun::pochhammer(c, n) * std::pow(2.0, n) * std::pow(sR, n) *
           specfun::hyp2f1_terminating(static_cast<unsigned>(n), b, c, 2.0);
}

/// Pollaczek polynomial P_n(x, delta) = i^n sqrt((2 delta)_n / n!) 2F1(-n, delta + i x; 2 delta; 2).
inline Complex pollaczek(int n, Complex x, double delta)
{
    const double ratio = specfun::pochhammer(2.0 * delta, n).real() / std::exp(std::lgamma(n + 1.0));
    return std::pow(I, n) * std::sqrt(ratio) * specfun::hyp2f1_terminating(static_cast<unsigned>(n), delta + I * x, 2.0 * delta, 2.0);
}

/// (delta, x) of the Pollaczek polynomial carrying b_n(2,k).
struct PollaczekArgs {
    double delta = 0.25;
    Complex x{};
};

inline PollaczekArgs pollaczek_args(Complex R, int k) { return {0.25 + 0.5 * k, 1.0 / (4.0 * std::sqrt(R))}; }

namespace detail {

// Kahan-Babuska (Neumaier) accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double v)
    {
        const double t = sum + v;
        c += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

// Runs c_{n+1} = (beta^j c_n - nu^j sqrt(T_n) c_{n-1}) / (mu^j sqrt(T_{n+1}))
// from c_0 = B^k / sqrt(k!), c_1 = B^{j+k}/sqrt((j+k)!) (b_0 = b_1 = 1),
// holding the values with a common log scale. sink(n, c_scaled, log_scale)
// returns false to stop.
template <class Sink>
void lomu_coefficients(const LomuParams& lp, Sink&& sink)
{
    const Complex muj = lp.muj();
    const Complex nuj = lp.nuj();
    const Complex bj = std::pow(lp.beta, lp.j);
    const Complex B = lp.ratio_B();
    const int j = lp.j;
    const int k = lp.k;
    double log_scale = 0.0;
    Complex prev = std::exp(double(k) * std::log(B) - 0.5 * std::lgamma(k + 1.0));
    Complex cur = std::exp(double(j + k) * std::log(B) - 0.5 * std::lgamma(j + k + 1.0));
    if (!sink(0, prev, log_scale)) return;
    if (!sink(1, cur, log_scale)) return;
    for (int n = 1;; ++n) {
        const Complex next = (bj * cur - nuj * std::sqrt(T_n(n, j, k)) * prev) / (muj * std::sqrt(T_n(n + 1, j, k)));
        prev = cur;
        cur = next;
        const double m = std::max(std::abs(prev), std::abs(cur));
        if (m > 1e100 || (m < 1e-100 && m > 0.0)) {
            prev /= m;
            cur /= m;
            log_scale += std::log(m);
        }
        if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag()))
            throw ConvergenceError("lomu: coefficient recursion overflowed at n = " + std::to_string(n + 1));
        if (!sink(n + 1, cur, log_scale)) return;
    }
}

}  // namespace detail

struct LomuOptions {
    double tail_tol = default_truncation_tol;
    int max_n = 200000;  // recursion index cap
};

/// Normalized |beta; j, k> on the support {nj + k}.
inline FockVector lomu_state(const LomuParams& lp, LomuOptions opts = {})
{
    lp.validate();
    const double q = lp.decay_ratio();
    if (!(q < 1.0)) throw ConvergenceError("lomu: |nu/mu|^j >= 1, the normalization series diverges");
    std::vector<Complex> c;
    std::vector<double> logs;
    detail::CompensatedSum norm2;
    double tail = 0.0;
    double peak_log = -std::numeric_limits<double>::infinity();
    // |c|^2 over two steps falls by q^2 asymptotically; accept the geometric
    // tail estimate only once it has settled.
    auto log_mag2 = [&](std::size_t i) { return 2.0 * (std::log(std::abs(c[i]) + 1e-300) + logs[i]); };
    detail::lomu_coefficients(lp, [&](int n, Complex cn, double log_scale) {
        if (n > opts.max_n)
            throw ConvergenceError("lomu: normalization tail not below tolerance by n = " + std::to_string(opts.max_n));
        c.push_back(cn);
        logs.push_back(log_scale);
        const std::size_t sz = c.size();
        peak_log = std::max(peak_log, log_mag2(sz - 1));
        if (n < 4) return true;
        const double env = std::exp(std::max(log_mag2(sz - 1), log_mag2(sz - 2)) - peak_log);
        const double env_prev = std::exp(std::max(log_mag2(sz - 3), log_mag2(sz - 4)) - peak_log);
        const double rho = std::max(q * q, env_prev > 0.0 ? env / env_prev : 1.0);
        if (rho >= 0.999 || env > 1e-32) return true;
        tail = 2.0 * env * rho / (1.0 - rho);
        return false;
    });
    const int nterms = static_cast<int>(c.size());
    const double ref = peak_log;
    for (int n = 0; n < nterms; ++n) norm2.add(std::exp(log_mag2(static_cast<std::size_t>(n)) - ref));
    const double total = norm2.value() + tail;
    if (!(tail <= opts.tail_tol * total)) throw ConvergenceError("lomu: normalization tail above tolerance");
    FockVector v;
    const int nmax = (nterms - 1) * lp.j + lp.k + 2 * lp.j;  // zero-padded guard band
    v.amps = Vector::Zero(nmax + 1);
    for (int n = 0; n < nterms; ++n) {
        const double lm = std::log(std::abs(c[n]) + 1e-300) + logs[n] - 0.5 * ref;
        v.amps[n * lp.j + lp.k] = std::exp(lm) * (std::abs(c[n]) > 0 ? c[n] / std::abs(c[n]) : Complex{}) / std::sqrt(total);
    }
    v.tail_mass = tail / total;
    v.normalized = true;
    return v;
}

/// N^2 = sum_n |c_n|^2 of the unnormalized coefficients (b_0 = b_1 = 1).
inline double lomu_norm2(const LomuParams& lp, LomuOptions opts = {})
{
    lp.validate();
    if (!(lp.decay_ratio() < 1.0)) throw ConvergenceError("lomu: |nu/mu|^j >= 1, the normalization series diverges");
    detail::CompensatedSum sum;
    double last = 0.0;
    bool done = false;
    detail::lomu_coefficients(lp, [&](int n, Complex cn, double log_scale) {
        if (n > opts.max_n) return false;
        const double t = std::exp(2.0 * (std::log(std::abs(cn) + 1e-300) + log_scale));
        sum.add(t);
        if (n >= 4 && std::max(t, last) <= 1e-18 * sum.value()) {
            done = true;
            return false;
        }
        last = t;
        return true;
    });
    if (!done) throw ConvergenceError("lomu: normalization sum not converged by n = " + std::to_string(opts.max_n));
    return sum.value();
}

/// Normalization-term decay measured far out in the recursion.
struct ConvergenceReport {
    double per_index_ratio = 0.0;   // |c_{n+1}|^2/|c_n|^2 on average, expected |nu/mu|^j
    double two_step_ratio = 0.0;    // |c_{n+2}|^2/|c_n|^2, expected |nu/mu|^{2j}
    double expected_per_index = 0.0;
    double expected_two_step = 0.0;
    int nmax = 0;
    bool within_5_percent = false;
};

/// Least-squares slope of log|c_n|^2 over n in [nmax/2, nmax].
inline ConvergenceReport convergence_report(const LomuParams& lp, int nmax = 20000)
{
    lp.validate();
    const int lo = nmax / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    detail::lomu_coefficients(lp, [&](int n, Complex cn, double log_scale) {
        if (n >= lo) {
            const double y = 2.0 * (std::log(std::abs(cn)) + log_scale);
            if (std::isfinite(y)) {
                sx += n;
                sy += y;
                sxx += double(n) * n;
                sxy += n * y;
                ++cnt;
            }
        }
        return n < nmax;
    });
    ConvergenceReport rep;
    rep.nmax = nmax;
    rep.expected_per_index = lp.decay_ratio();
    rep.expected_two_step = rep.expected_per_index * rep.expected_per_index;
    if (cnt >= 2) {
        const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        rep.per_index_ratio = std::exp(slope);
        rep.two_step_ratio = std::exp(2.0 * slope);
    }
    if (rep.expected_per_index == 0.0)
        rep.within_5_percent = rep.per_index_ratio < 1e-3;
    else
        rep.within_5_percent = std::abs(rep.per_index_ratio - rep.expected_per_index) <= 0.05 * rep.expected_per_index &&
                               std::abs(rep.two_step_ratio - rep.expected_two_step) <= 0.05 * rep.expected_two_step;
    return rep;
}

/// Parameters of the confluent-hypergeometric j = 2 wavefunctions:
/// U = (mu^2 - nu^2)/(mu^2 + nu^2), Bw = beta^2/(mu^2 + nu^2), with mu^2, nu^2
/// the coefficients of a^2 and a^dag^2.
struct Lomu2kParams {
    Complex U{};
    Complex Bw{};

    Lomu2kParams(Complex mu2, Complex nu2, Complex beta)
    {
        const Complex d = mu2 + nu2;
        if (std::abs(d) < 1e-300) throw DomainError("lomu_psi_2k: mu^2 + nu^2 = 0");
        U = (mu2 - nu2) / d;
        Bw = beta * beta / d;
    }
    explicit Lomu2kParams(const LomuParams& lp) : Lomu2kParams(lp.muj(), lp.nuj(), lp.beta)
    {
        if (lp.j != 2) throw DomainError("lomu_psi_2k: j must be 2");
    }

    Complex s() const { return std::sqrt(U * U - 1.0); }
};

/// Unnormalized x^k e^{-x^2 (U+s)/2} 1F1(1/4 + k/2 + Bw/(2s); 1/2 + k; x^2 s), s = sqrt(U^2 - 1).
inline Complex lomu_psi_2k(const Lomu2kParams& l2, int k, double x)
{
    if (k != 0 && k != 1) throw DomainError("lomu_psi_2k: k must be 0 or 1");
    const Complex s = l2.s();
    if (!((l2.U + s).real() > 0.0) || !((l2.U - s).real() > 0.0))
        throw DomainError("lomu_psi_2k: not normalizable (Re(U +- sqrt(U^2-1)) must be positive)");
    const Complex env = std::exp(-0.5 * x * x * (l2.U + s));
    if (std::abs(s) == 0.0) return std::pow(x, k) * env;
    const Complex a = 0.25 + 0.5 * k + l2.Bw / (2.0 * s);
    const auto f = specfun::hyp1f1(a, 0.5 + k, x * x * s);
    return std::pow(x, k) * env * f.value;
}

/// lomu_psi_2k on a uniform grid, normalized by the trapezoid rule.
inline Vector lomu_psi_2k_normalized(const Lomu2kParams& l2, int k, const std::vector<double>& xs)
{
    Vector out(static_cast<Eigen::Index>(xs.size()));
    std::vector<double> dens(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out[static_cast<Eigen::Index>(i)] = lomu_psi_2k(l2, k, xs[i]);
        dens[i] = std::norm(out[static_cast<Eigen::Index>(i)]);
    }
    const double h = xs.size() > 1 ? xs[1] - xs[0] : 1.0;
    const double n = specfun::trapezoid(dens, h);
    if (!(n > 0.0)) throw DomainError("lomu_psi_2k: zero norm on the grid");
    return out / std::sqrt(n);
}

}  // namespace hpcs
