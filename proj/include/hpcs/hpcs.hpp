#pragma once

// Higher-power coherent states |alpha; j, k>: eigenstates of a^j built from
// the number states jn + k.

#include <hpcs/common.hpp>
#include <hpcs/fock.hpp>
#include <hpcs/specfun.hpp>

#include <boost/math/constants/constants.hpp>

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace hpcs {

enum class Method { series, closed };

struct HpcsParams {
    int j = 1;
    int k = 0;
    double x0 = 0.0;
    double p0 = 0.0;

    HpcsParams() = default;
    HpcsParams(int j_, int k_, double x0_, double p0_) : j(j_), k(k_), x0(x0_), p0(p0_) { validate(); }

    void validate() const
    {
        if (j < 1) throw DomainError("j must be a positive integer (got " + std::to_string(j) + ")");
        if (k < 0 || k > j - 1)
            throw DomainError("k must satisfy 0 <= k <= j-1 (got j=" + std::to_string(j) + ", k=" + std::to_string(k) + ")");
        if (!std::isfinite(x0) || !std::isfinite(p0)) throw DomainError("x0 and p0 must be finite");
    }

    Complex alpha() const { return Complex{x0, p0} / std::sqrt(2.0); }
    double A() const { return 0.5 * (x0 * x0 + p0 * p0); }
};

/// Phase-space rotation of the centre under free evolution: alpha -> alpha e^{-it}.
inline HpcsParams evolve(const HpcsParams& p, double t)
{
    const double c = std::cos(t);
    const double s = std::sin(t);
    HpcsParams q = p;
    q.x0 = p.x0 * c + p.p0 * s;
    q.p0 = p.p0 * c - p.x0 * s;
    return q;
}

namespace detail {

inline Complex root_of_unity(int l, int j)
{
    const double th = 2.0 * pi * double(l % j) / double(j);
    return {std::cos(th), std::sin(th)};
}

/// e^{2 pi i l / j} at the precision of C.
template <class C>
C unit_root(int l, int j)
{
    using R = specfun::real_of_t<C>;
    using std::cos;
    using std::sin;
    const int m = ((l % j) + j) % j;
    const R th = 2 * boost::math::constants::pi<R>() * R(m) / R(j);
    return C(cos(th), sin(th));
}

/// (1/j) sum_l f(w_l) w_l^{-k} over the j-th roots of unity, raising the
/// precision when the terms cancel.
template <class F>
Complex root_sum(int j, int k, F&& f)
{
    return specfun::sum_adaptive_finite([&](auto tag) {
        using C = typename decltype(tag)::type;
        using std::abs;
        specfun::BasicSeriesResult<C> r;
        for (int l = 1; l <= j; ++l) {
            const C t = f(unit_root<C>(l, j)) * unit_root<C>(-l * k, j);
            r.value += t;
            r.abs_sum += abs(t);
        }
        r.value /= double(j);
        r.abs_sum /= double(j);
        r.terms_used = static_cast<std::size_t>(j);
        return r;
    });
}

inline void check_jk(int j, int k)
{
    if (j < 1) throw DomainError("j must be a positive integer");
    if (k < 0 || k > j - 1) throw DomainError("k must satisfy 0 <= k <= j-1");
}

}  // namespace detail

/// S(j,k,z) = sum_n z^{jn+k}/(jn+k)!.
inline Complex sum_S(int j, int k, Complex z, Method method = Method::closed)
{
    detail::check_jk(j, k);
    if (method == Method::closed) {
        return detail::root_sum(j, k, [&](const auto& w) {
            using C = std::decay_t<decltype(w)>;
            using std::exp;
            return C(exp(specfun::detail::make_complex<C>(z) * w));
        });
    }
    return specfun::sum_adaptive([&](auto tag) {
               using C = typename decltype(tag)::type;
               const C cz = specfun::detail::make_complex<C>(z);
               C term{1};
               for (int m = 1; m <= k; ++m) term *= cz / double(m);
               int m = k;
               return specfun::sum_tail_bounded<C>(
                   [&](std::size_t n) {
                       if (n > 0) {
                           for (int i = 0; i < j; ++i) {
                               ++m;
                               term *= cz / double(m);
                           }
                       }
                       return term;
                   },
                   specfun::detail::series_rel_tol<C>, 20000);
           })
        .value;
}

/// e^{-A} S(j,k,A) for real A >= 0, free of overflow.
inline double sum_S_scaled(int j, int k, double A)
{
    detail::check_jk(j, k);
    if (A < 8.0) {
        // all terms positive: the series is well conditioned where the
        // root-of-unity form cancels
        double term = std::exp(-A);
        for (int m = 1; m <= k; ++m) term *= A / m;
        double sum = 0.0;
        int m = k;
        for (int n = 0; n < 2000; ++n) {
            sum += term;
            if (term < 1e-18 * sum && m > A) break;
            for (int i = 0; i < j; ++i) {
                ++m;
                term *= A / m;
            }
        }
        return sum;
    }
    double s = 0.0;
    for (int l = 1; l <= j; ++l) {
        const double th = 2.0 * pi * double(l % j) / double(j);
        s += std::exp(A * (std::cos(th) - 1.0)) * std::cos(A * std::sin(th) - k * th);
    }
    return s / double(j);
}

/// Higher-order Hermite generating function G(j,k,x,z) = sum_n z^{jn+k} H_{jn+k}(x)/(jn+k)!.
inline Complex gen_G(int j, int k, double x, Complex z, Method method = Method::closed)
{
    detail::check_jk(j, k);
    if (method == Method::closed) {
        return detail::root_sum(j, k, [&](const auto& w) {
            using C = std::decay_t<decltype(w)>;
            using std::exp;
            const C zw = specfun::detail::make_complex<C>(z) * w;
            return C(exp(zw * (2.0 * x) - zw * zw));
        });
    }
    return specfun::sum_adaptive([&](auto tag) {
               using C = typename decltype(tag)::type;
               const C cz = specfun::detail::make_complex<C>(z);
               const C two_xz = cz * (2.0 * x);
               const C two_z2 = cz * cz * 2.0;
               // h_m = z^m H_m(x)/m!, h_{m+1} = (2xz h_m - 2z^2 h_{m-1})/(m+1)
               C prev{0};
               C cur{1};
               int m = 0;
               auto advance = [&] {
                   C next = (two_xz * cur - two_z2 * prev) / double(m + 1);
                   prev = cur;
                   cur = next;
                   ++m;
               };
               while (m < k) advance();
               return specfun::sum_tail_bounded<C>(
                   [&](std::size_t n) {
                       if (n > 0)
                           for (int i = 0; i < j; ++i) advance();
                       return cur;
                   },
                   specfun::detail::series_rel_tol<C>, 20000);
           })
        .value;
}

/// Smallest basis size for the tail estimate, before doubling.
inline int initial_nmax(const HpcsParams& p)
{
    const double A = p.A();
    const int blocks = static_cast<int>(std::ceil((A + 8.0 * std::sqrt(A) + 20.0) / p.j));
    return p.j * blocks + p.k;
}

namespace detail {

// log of the Poisson weight e^{-A} A^m / m!
inline double log_weight(int m, double logA, double A)
{
    return m * logA - std::lgamma(m + 1.0) - A;
}

inline FockVector hpcs_fock_fixed(const HpcsParams& p, int nmax)
{
    if (nmax < p.k) throw DomainError("hpcs_fock: nmax below k");
    FockVector v;
    v.amps = Vector::Zero(nmax + 1);
    const double A = p.A();
    if (A == 0.0) {
        v.amps[p.k] = 1.0;
        v.normalized = true;
        v.degenerate = p.k > 0;
        return v;
    }
    const double logA = std::log(A);
    const double arg = std::arg(p.alpha());
    // shift by the largest weight so small-A and large-A cases stay in range
    const int mpeak = std::max(p.k, p.k + p.j * static_cast<int>(std::floor((A - p.k) / p.j)));
    const double shift = log_weight(mpeak, logA, A);
    double inside = 0.0;
    int m = p.k;
    for (; m <= nmax; m += p.j) {
        const double lw = log_weight(m, logA, A) - shift;
        const double w = std::exp(lw);
        inside += w;
        v.amps[m] = std::polar(std::exp(0.5 * lw), std::remainder(m * arg, 2.0 * pi));
    }
    double tail = 0.0;
    for (; ; m += p.j) {
        const double w = std::exp(log_weight(m, logA, A) - shift);
        tail += w;
        if (m > A && w < 1e-30 * (inside + tail)) break;
    }
    const double total = inside + tail;
    v.amps /= std::sqrt(total);
    v.tail_mass = tail / total;
    v.normalized = true;
    return v;
}

}  // namespace detail

/// Fock expansion of |alpha; j, k>. nmax < 0 selects the basis automatically,
/// doubling until the dropped mass is below `tail_tol`.
inline FockVector hpcs_fock(const HpcsParams& p, int nmax = -1, double tail_tol = default_truncation_tol)
{
    p.validate();
    if (nmax >= 0) return detail::hpcs_fock_fixed(p, nmax);
    int n = initial_nmax(p);
    for (int iter = 0; iter < 12; ++iter, n *= 2) {
        auto v = detail::hpcs_fock_fixed(p, n);
        if (v.tail_mass <= tail_tol) return v;
    }
    throw ConvergenceError("hpcs_fock: tail mass stays above tolerance");
}

/// Ordinary coherent state D(alpha)|0> on a fixed basis.
inline FockVector coherent_fock(Complex alpha, int nmax)
{
    return detail::hpcs_fock_fixed(HpcsParams(1, 0, std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag()), nmax);
}

/// Position wavefunction from the generating function,
/// psi = e^{-x^2/2} G(j,k,x,alpha/sqrt2) / (pi^{1/4} S^{1/2}),
/// with the e^{A/2} growth of G cancelled against S analytically.
inline Complex psi_series(const HpcsParams& p, double x, Method method = Method::closed)
{
    p.validate();
    const double A = p.A();
    const double Ss = sum_S_scaled(p.j, p.k, A);
    if (!(Ss > 0.0)) throw DomainError("psi_series: alpha = 0 with k > 0 has no generating-function form");
    const Complex z = p.alpha() / std::sqrt(2.0);
    const double pre = 1.0 / (std::pow(pi, 0.25) * std::sqrt(Ss));
    if (method == Method::series) return gen_G(p.j, p.k, x, z, Method::series) * std::exp(-0.5 * x * x - 0.5 * A) * pre;
    Complex s{};
    for (int l = 1; l <= p.j; ++l) {
        const Complex w = detail::root_of_unity(l, p.j);
        const Complex e = 2.0 * x * z * w - z * z * w * w - 0.5 * x * x - 0.5 * A;
        s += std::exp(e) * std::conj(std::pow(w, p.k));
    }
    return s / double(p.j) * pre;
}

/// One Gaussian exp(-(x - x_c)^2/2) e^{i (x p_c - x_c p_c / 2)} times `coeff`.
struct GaussianTerm {
    double x = 0.0;
    double p = 0.0;
    Complex coeff{1.0, 0.0};

    Complex operator()(double xx) const
    {
        const double d = xx - x;
        return coeff * std::exp(Complex{-0.5 * d * d, xx * p - 0.5 * x * p});
    }
    double magnitude(double xx) const
    {
        const double d = xx - x;
        return std::abs(coeff) * std::exp(-0.5 * d * d);
    }
};

/// Superposition of j Gaussians on the phase-space circle.
struct ClosedFormState {
    std::vector<GaussianTerm> gaussians;
    double normalization = 1.0;

    Complex operator()(double x) const
    {
        Complex s{};
        for (const auto& g : gaussians) s += g(x);
        return s * normalization;
    }
};

namespace detail {

// e^{-A} N_{(4,k)}
inline double n4_scaled(int k, double A)
{
    const double e = std::exp(-A);
    const double ch = 0.5 * (1.0 + e * e);
    const double sh = -0.5 * std::expm1(-2.0 * A);
    switch (k) {
    case 0: return ch + e * std::cos(A);
    case 1: return sh + e * std::sin(A);
    case 2: return ch - e * std::cos(A);
    default: return sh - e * std::sin(A);
    }
}

// e^{-A} times the 1 +- e^{-2A} of the even/odd states
inline double n2(int k, double A)
{
    return k == 0 ? 1.0 + std::exp(-2.0 * A) : -std::expm1(-2.0 * A);
}

}  // namespace detail

/// Explicit Gaussian-superposition form for j = 2, 3, 4.
inline ClosedFormState closed_form_state(const HpcsParams& p)
{
    p.validate();
    const double x0 = p.x0;
    const double p0 = p.p0;
    const double A = p.A();
    const double s3 = std::sqrt(3.0);
    const double pi14 = std::pow(pi, 0.25);
    ClosedFormState st;
    switch (p.j) {
    case 2: {
        const double sign = p.k == 0 ? 1.0 : -1.0;
        st.gaussians = {{x0, p0, 1.0}, {-x0, -p0, sign}};
        st.normalization = 1.0 / (std::sqrt(2.0) * pi14 * std::sqrt(detail::n2(p.k, A)));
        break;
    }
    case 3: {
        const Complex wm{-0.5, -0.5 * s3};  // e^{-i 2 pi/3}
        const Complex wp{-0.5, 0.5 * s3};
        const std::array<std::array<Complex, 2>, 3> c{{{1.0, 1.0}, {wm, wp}, {wp, wm}}};
        const GaussianTerm Y1{-(0.5 * x0 + 0.5 * s3 * p0), 0.5 * s3 * x0 - 0.5 * p0, c[p.k][0]};
        const GaussianTerm Y2{-(0.5 * x0 - 0.5 * s3 * p0), -(0.5 * s3 * x0 + 0.5 * p0), c[p.k][1]};
        const GaussianTerm Y3{x0, p0, 1.0};
        st.gaussians = {Y1, Y2, Y3};
        const double N = 3.0 * sum_S_scaled(3, p.k, A);
        st.normalization = 1.0 / (s3 * pi14 * std::sqrt(N));
        break;
    }
    case 4: {
        const std::array<std::array<Complex, 4>, 4> c{{{1.0, 1.0, 1.0, 1.0},
                                                       {1.0, I, -1.0, -I},
                                                       {1.0, -1.0, 1.0, -1.0},
                                                       {1.0, -I, -1.0, I}}};
        st.gaussians = {{x0, p0, c[p.k][0]}, {p0, -x0, c[p.k][1]}, {-x0, -p0, c[p.k][2]}, {-p0, x0, c[p.k][3]}};
        st.normalization = 1.0 / (std::pow(2.0, 1.5) * pi14 * std::sqrt(detail::n4_scaled(p.k, A)));
        break;
    }
    default:
        throw DomainError("psi_closed: explicit forms exist for j = 2, 3, 4 only; use psi_series for j = " +
                          std::to_string(p.j));
    }
    if (!(st.normalization > 0.0) || !std::isfinite(st.normalization))
        throw DomainError("psi_closed: state vanishes (alpha = 0 with k > 0)");
    return st;
}

inline Complex psi_closed(const HpcsParams& p, double x) { return closed_form_state(p)(x); }

/// Perturbation added to every interference angle of rho (zero in production).
struct AngleMutation {
    double delta = 0.0;
};

/// One interference angle of the density together with the pair it couples.
struct InterferenceAngle {
    int a = 0;
    int b = 0;
    double angle = 0.0;
};

/// Interference angles of the j = 2, 3, 4 densities at (x0, p0), pairs
/// indexed into closed_form_state(p).gaussians.
inline std::vector<InterferenceAngle> interference_angles(const HpcsParams& p, double x)
{
    const double x0 = p.x0;
    const double p0 = p.p0;
    const double s3 = std::sqrt(3.0);
    const double q = x0 * x0 - p0 * p0;
    switch (p.j) {
    case 2: return {{0, 1, 2.0 * p0 * x}};
    case 3:
        return {{0, 1, x * s3 * x0 + 0.25 * s3 * q},
                {0, 2, x * (0.5 * s3 * x0 - 1.5 * p0) + s3 / 8.0 * q + 0.75 * x0 * p0},
                {1, 2, -x * (0.5 * s3 * x0 + 1.5 * p0) - s3 / 8.0 * q + 0.75 * x0 * p0}};
    case 4:
        return {{0, 1, x * (x0 + p0) - p0 * x0}, {0, 2, 2.0 * x * p0},       {0, 3, x * (p0 - x0) - x0 * p0},
                {1, 2, x * (p0 - x0) + x0 * p0}, {1, 3, 2.0 * x * x0},       {2, 3, -x * (x0 + p0) - x0 * p0}};
    default: throw DomainError("rho: closed-form densities exist for j = 2, 3, 4 only");
    }
}

/// Probability density |psi_(j,k)(x, t)|^2 from the interference form
/// (Gaussian magnitudes and cos/sin of the pairwise angles).
inline double rho(const HpcsParams& p0, double x, double t, AngleMutation mutation = {})
{
    p0.validate();
    const HpcsParams p = evolve(p0, t);
    const auto st = closed_form_state(p);
    const auto angles = interference_angles(p, x);
    std::vector<double> mag;
    for (const auto& g : st.gaussians) mag.push_back(std::exp(-0.5 * (x - g.x) * (x - g.x)));
    double base = 0.0;
    for (double m : mag) base += m * m;
    const double s3 = std::sqrt(3.0);
    double cross = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const auto& a = angles[i];
        const double th = a.angle + mutation.delta;
        const double mm = mag[a.a] * mag[a.b];
        const double c = std::cos(th);
        const double s = std::sin(th);
        double f = 0.0;
        switch (p.j) {
        case 2: f = p.k == 0 ? 2.0 * c : -2.0 * c; break;
        case 3:
            if (p.k == 0)
                f = 2.0 * c;
            else {
                // pairs (1,2) and (2,3) share a sign pattern, (1,3) takes the other
                const double sg = (i == 1) == (p.k == 1) ? -1.0 : 1.0;
                f = -(c + sg * s3 * s);
            }
            break;
        case 4: {
            static constexpr int trig[6] = {0, 1, 0, 0, 1, 0};  // 1: cos in every k
            static constexpr double sign[4][6] = {{2, 2, 2, 2, 2, 2},
                                                  {2, -2, -2, 2, -2, 2},
                                                  {-2, 2, -2, -2, 2, -2},
                                                  {-2, -2, 2, -2, -2, -2}};
            const bool use_cos = trig[i] == 1 || p.k % 2 == 0;
            f = sign[p.k][i] * (use_cos ? c : s);
            break;
        }
        }
        cross += f * mm;
    }
    const double n2 = st.normalization * st.normalization;
    return std::max(0.0, (base + cross) * n2);
}

/// |alpha;2,(1-+1)/2> built as N_+-[D(alpha) +- D(-alpha)]|0>.
inline FockVector effective_displacement_state(int sign, Complex alpha, int nmax)
{
    if (sign != 1 && sign != -1) throw DomainError("effective_displacement_state: sign must be +1 or -1");
    if (sign == -1 && alpha == Complex{}) throw DomainError("effective_displacement_state: zero-norm superposition (alpha = 0, sign -)");
    const auto plus = coherent_fock(alpha, nmax);
    const auto minus = coherent_fock(-alpha, nmax);
    FockVector v;
    v.amps = plus.amps + double(sign) * minus.amps;
    v.tail_mass = plus.tail_mass;
    return normalized(v);
}

/// D(alpha) = exp(alpha a^dag - alpha* a) on the truncated basis. Entries
/// well below nmax - |alpha|^2 are unaffected by the truncation.
inline Matrix displacement_operator(Complex alpha, int nmax)
{
    const Matrix a = annihilation_operator(nmax).matrix;
    return matrix_exp(alpha * a.adjoint() - std::conj(alpha) * a);
}

/// Basis size that keeps the leading dim x dim block of D(alpha) exact.
inline int displacement_nmax(Complex alpha, int dim)
{
    return dim + 40 + static_cast<int>(std::ceil(8.0 * std::norm(alpha) + 16.0 * std::abs(alpha)));
}

/// N_+-[D(alpha) +- D(-alpha)] with N_+- fixed by normalizing the image of |0>.
inline Matrix effective_displacement_operator(int sign, Complex alpha, int nmax)
{
    if (sign != 1 && sign != -1) throw DomainError("effective_displacement_operator: sign must be +1 or -1");
    const double A = std::norm(alpha);
    const double n = sign == 1 ? 2.0 * (1.0 + std::exp(-2.0 * A)) : -2.0 * std::expm1(-2.0 * A);
    if (!(n > 0.0)) throw DomainError("effective_displacement_operator: zero-norm superposition");
    return (displacement_operator(alpha, nmax) + double(sign) * displacement_operator(-alpha, nmax)) / std::sqrt(n);
}

}  // namespace hpcs
