#pragma once

// Scalar special functions: Hermite polynomials and oscillator
// eigenfunctions, Pochhammer symbols, hypergeometric series, and the
// tail-bounded summation every infinite series in the library goes through.

#include <hpcs/common.hpp>

#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <cstddef>
#include <iterator>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

namespace hpcs::specfun {

inline constexpr int default_max_hermite_degree = 400;

/// Physicists' Hermite polynomial by the three-term recurrence.
inline double hermite(int n, double x, int max_degree = default_max_hermite_degree)
{
    if (n < 0) throw DomainError("hermite: negative degree");
    if (n > max_degree)
        throw DomainError("hermite: degree " + std::to_string(n) + " exceeds configured maximum " +
                          std::to_string(max_degree));
    double prev = 0.0;
    double cur = 1.0;
    for (int m = 0; m < n; ++m) {
        const double next = 2.0 * x * cur - 2.0 * m * prev;
        prev = cur;
        cur = next;
    }
    if (!std::isfinite(cur)) throw ConvergenceError("hermite: H_n(x) overflows double range");
    return cur;
}

namespace detail {

// Normalized recurrence psi_{n+1} = x sqrt(2/(n+1)) psi_n - sqrt(n/(n+1)) psi_{n-1}
// carried with a separate log scale, so neither the Gaussian factor nor the
// polynomial growth under/overflows before the final product.
template <class Sink>
void hermite_psi_recurrence(int nmax, double x, Sink&& sink)
{
    constexpr double rescale = 1e150;
    const double log_rescale = std::log(rescale);
    double log_scale = -0.5 * x * x - 0.25 * std::log(pi);
    double prev = 0.0;
    double cur = 1.0;
    auto emit = [&](int n) {
        const double v = cur == 0.0 ? 0.0 : std::copysign(std::exp(std::log(std::abs(cur)) + log_scale), cur);
        sink(n, v);
    };
    emit(0);
    for (int n = 0; n < nmax; ++n) {
        const double next = x * std::sqrt(2.0 / (n + 1)) * cur - std::sqrt(double(n) / (n + 1)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > rescale) {
            cur /= rescale;
            prev /= rescale;
            log_scale += log_rescale;
        }
        emit(n + 1);
    }
}

}  // namespace detail

/// Harmonic-oscillator eigenfunction psi_n(x) = e^{-x^2/2} H_n(x) / sqrt(sqrt(pi) 2^n n!).
inline double hermite_psi(int n, double x)
{
    if (n < 0) throw DomainError("hermite_psi: negative index");
    double out = 0.0;
    detail::hermite_psi_recurrence(n, x, [&](int m, double v) {
        if (m == n) out = v;
    });
    return out;
}

/// psi_0(x) .. psi_nmax(x) in one pass.
inline std::vector<double> hermite_psi_all(int nmax, double x)
{
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
    detail::hermite_psi_recurrence(nmax, x, [&](int m, double v) { out[static_cast<std::size_t>(m)] = v; });
    return out;
}

/// Rising factorial (a)_N = a (a+1) ... (a+N-1).
inline Complex pochhammer(Complex a, unsigned N)
{
    Complex p{1.0, 0.0};
    for (unsigned i = 0; i < N; ++i) p *= a + double(i);
    return p;
}

// ---------------------------------------------------------------------------
// Tail-bounded summation.

template <class C>
using real_of_t = std::decay_t<decltype(abs(std::declval<C>()))>;

template <class C>
struct BasicSeriesResult {
    C value{};
    std::size_t terms_used = 0;
    real_of_t<C> tail_bound{};
    real_of_t<C> abs_sum{};  // sum of |term|, the scale of the rounding error
};

/// Outcome of an infinite series evaluated to double precision.
struct SeriesResult {
    Complex value{};
    std::size_t terms_used = 0;
    double tail_bound = 0.0;
    double abs_sum = 0.0;
    double rounding_bound = 0.0;
    int precision_digits = std::numeric_limits<double>::digits10;
};

class NonConvergence : public ConvergenceError {
public:
    NonConvergence(const std::string& what, SeriesResult partial)
        : ConvergenceError(what), partial_(partial)
    {
    }
    const SeriesResult& partial() const noexcept { return partial_; }

private:
    SeriesResult partial_;
};

namespace detail {

using std::abs;

inline Complex to_complex(const Complex& c) { return c; }

template <class C>
Complex to_complex(const C& c)
{
    return {static_cast<double>(c.real()), static_cast<double>(c.imag())};
}

template <class R>
double to_double(const R& r)
{
    return static_cast<double>(r);
}

template <class C>
SeriesResult to_series_result(const BasicSeriesResult<C>& r)
{
    SeriesResult out;
    out.value = to_complex(r.value);
    out.terms_used = r.terms_used;
    out.tail_bound = to_double(r.tail_bound);
    out.abs_sum = to_double(r.abs_sum);
    out.precision_digits = std::numeric_limits<real_of_t<C>>::digits10;
    out.rounding_bound = to_double(r.abs_sum * std::numeric_limits<real_of_t<C>>::epsilon());
    return out;
}

}  // namespace detail

/// Number of consecutive decaying ratios required before the tail estimate is trusted.
inline constexpr int trusted_ratio_run = 5;
inline constexpr double trusted_ratio_limit = 0.99;

/// Sums gen(0), gen(1), ... until the running tail estimate
/// (last envelope magnitude / (1 - ratio)) falls below rel_tol * |partial sum|.
///
/// The envelope is max(|t_n|, |t_{n-1}|), which keeps the ratio meaningful
/// for series whose terms vanish at every other index (e.g. G at x = 0).
/// Two consecutive exact zeros end the series. The generator is called with
/// consecutive indices and may keep state.
template <class C = Complex, class Generator>
BasicSeriesResult<C> sum_tail_bounded(Generator&& gen, double rel_tol, std::size_t max_terms)
{
    using std::abs;
    using R = real_of_t<C>;
    C sum{0};
    R abs_sum{0};
    R prev_mag{0};
    R prev_env{0};
    R ratio{1};
    int trusted = 0;
    for (std::size_t n = 0; n < max_terms; ++n) {
        const C term = gen(n);
        const R mag = abs(term);
        sum += term;
        abs_sum += mag;
        if (n == 0) {
            prev_mag = mag;
            prev_env = mag;
            continue;
        }
        if (mag == 0 && prev_mag == 0) return {sum, n + 1, R{0}, abs_sum};
        const R env = mag > prev_mag ? mag : prev_mag;
        if (prev_env > 0) {
            ratio = env / prev_env;
            trusted = ratio < trusted_ratio_limit ? trusted + 1 : 0;
        } else {
            trusted = 0;
        }
        prev_mag = mag;
        prev_env = env;
        if (trusted >= trusted_ratio_run) {
            const R tail = env / (1 - ratio);
            if (tail <= rel_tol * abs(sum)) return {sum, n + 1, tail, abs_sum};
        }
    }
    BasicSeriesResult<C> partial{sum, max_terms, prev_env / (trusted > 0 ? 1 - ratio : R{1}), abs_sum};
    throw NonConvergence("series did not converge within " + std::to_string(max_terms) + " terms",
                         detail::to_series_result(partial));
}

namespace detail {

template <class T>
struct type_tag {
    using type = T;
};

using complex_mp_low = boost::multiprecision::cpp_complex<50>;
using complex_mp_high = boost::multiprecision::cpp_complex<350>;

template <class C>
constexpr double series_rel_tol = std::is_same_v<C, Complex> ? 1e-17 : 1e-22;

template <class C>
C make_complex(Complex z)
{
    if constexpr (std::is_same_v<C, Complex>)
        return z;
    else
        return C(z.real(), z.imag());
}

}  // namespace detail

/// Evaluates a series at the lowest precision whose rounding estimate
/// (epsilon * sum|t_n|) stays below `accept` * |value|.
///
/// `body` is a generic callable taking detail::type_tag<C> and returning
/// BasicSeriesResult<C>. Tiers: double, 50 and 350 significant digits.
template <class Body>
SeriesResult sum_adaptive(Body&& body, double accept = 1e-13)
{
    auto well_conditioned = [&](const auto& r) {
        using std::abs;
        using C = std::decay_t<decltype(r.value)>;
        using R = real_of_t<C>;
        const R rounding = r.abs_sum * std::numeric_limits<R>::epsilon();
        return rounding <= R(accept) * abs(r.value) || r.abs_sum == 0;
    };
    {
        const auto r = body(detail::type_tag<Complex>{});
        if (std::isfinite(r.abs_sum) && well_conditioned(r)) return detail::to_series_result(r);
    }
    {
        const auto r = body(detail::type_tag<detail::complex_mp_low>{});
        if (well_conditioned(r)) return detail::to_series_result(r);
    }
    const auto r = body(detail::type_tag<detail::complex_mp_high>{});
    auto out = detail::to_series_result(r);
    if (!well_conditioned(r))
        throw NonConvergence("series too ill-conditioned even at 350 digits", out);
    return out;
}

struct Hyp1f1Options {
    double radius = 200.0;
    std::size_t max_terms = 5000;
};

/// Confluent hypergeometric 1F1(a; b; z). Terminating cases (a a nonpositive
/// integer) are summed exactly; otherwise the power series with a tail bound.
inline SeriesResult hyp1f1(Complex a, Complex b, Complex z, Hyp1f1Options opts = {})
{
    auto nonpositive_integer = [](Complex v) {
        return v.imag() == 0.0 && v.real() <= 0.0 && v.real() == std::floor(v.real());
    };
    if (nonpositive_integer(b)) throw DomainError("hyp1f1: b is a nonpositive integer");
    if (nonpositive_integer(a)) {
        const auto n = static_cast<unsigned>(-a.real());
        Complex term{1.0, 0.0};
        Complex sum = term;
        double abs_sum = 1.0;
        for (unsigned m = 0; m < n; ++m) {
            term *= (a + double(m)) / ((b + double(m)) * double(m + 1)) * z;
            sum += term;
            abs_sum += std::abs(term);
        }
        SeriesResult out;
        out.value = sum;
        out.terms_used = n + 1;
        out.abs_sum = abs_sum;
        out.rounding_bound = abs_sum * std::numeric_limits<double>::epsilon();
        return out;
    }
    if (std::abs(z) > opts.radius)
        throw DomainError("hyp1f1: |z| exceeds the configured radius " + std::to_string(opts.radius));
    return sum_adaptive([&](auto tag) {
        using C = typename decltype(tag)::type;
        const C ca = detail::make_complex<C>(a);
        const C cb = detail::make_complex<C>(b);
        const C cz = detail::make_complex<C>(z);
        C term{1};
        return sum_tail_bounded<C>(
            [&](std::size_t m) {
                if (m > 0) {
                    const double mm = double(m - 1);
                    term *= (ca + mm) / ((cb + mm) * double(m)) * cz;
                }
                return term;
            },
            detail::series_rel_tol<C>, opts.max_terms);
    });
}

/// Finite sum evaluated by sum_adaptive; a result that cancels to (near)
/// zero at every tier is returned from the 350-digit pass.
template <class Body>
Complex sum_adaptive_finite(Body&& body, double accept = 1e-13)
{
    try {
        return sum_adaptive(std::forward<Body>(body), accept).value;
    } catch (const NonConvergence& e) {
        return e.partial().value;
    }
}

/// 2F1(-n, b; c; z) as its n+1 term polynomial, in extended precision when
/// the terms cancel.
inline Complex hyp2f1_terminating(unsigned n, Complex b, Complex c, Complex z)
{
    if (c.imag() == 0.0 && c.real() <= 0.0 && c.real() == std::floor(c.real()) &&
        -c.real() <= double(n) - 1.0)
        throw DomainError("hyp2f1_terminating: c is a nonpositive integer > -n");
    return sum_adaptive_finite([&](auto tag) {
        using C = typename decltype(tag)::type;
        using std::abs;
        const C cb = detail::make_complex<C>(b);
        const C cc = detail::make_complex<C>(c);
        const C cz = detail::make_complex<C>(z);
        BasicSeriesResult<C> r;
        C term{1};
        r.value = term;
        r.abs_sum = 1;
        const double a = -double(n);
        for (unsigned m = 0; m < n; ++m) {
            term *= (cb + double(m)) / ((cc + double(m)) * double(m + 1)) * cz * (a + m);
            r.value += term;
            r.abs_sum += abs(term);
        }
        r.terms_used = n + 1;
        return r;
    });
}

/// n equally spaced points on [a, b] (both ends included).
inline std::vector<double> linspace(double a, double b, std::size_t n)
{
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = a;
        return out;
    }
    const double h = (b - a) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = a + h * double(i);
    out[n - 1] = b;
    return out;
}

/// Trapezoid rule for samples f on a uniform grid with step h.
template <class Samples>
auto trapezoid(const Samples& f, double h)
{
    using T = std::decay_t<decltype(f[0])>;
    T sum{};
    const std::size_t n = static_cast<std::size_t>(std::size(f));
    if (n < 2) return sum;
    for (std::size_t i = 1; i + 1 < n; ++i) sum += f[i];
    sum += (f[0] + f[n - 1]) * 0.5;
    return sum * h;
}

/// Trapezoid rule for a callable over [a, b] with n points.
template <class F>
auto integrate(F&& f, double a, double b, std::size_t n)
{
    const auto xs = linspace(a, b, n);
    using T = std::decay_t<decltype(f(a))>;
    std::vector<T> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = f(xs[i]);
    return trapezoid(ys, (b - a) / double(n - 1));
}

}  // namespace hpcs::specfun
