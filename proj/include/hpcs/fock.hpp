#pragma once

// Truncated number-basis linear algebra.

#include <hpcs/common.hpp>
#include <hpcs/specfun.hpp>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>
#include <vector>

namespace hpcs {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double default_truncation_tol = 1e-14;

/// State vector on the basis |0> .. |nmax>.
struct FockVector {
    Vector amps;
    double tail_mass = 0.0;   // estimated sum |c_n|^2 of the dropped components
    bool normalized = false;
    bool degenerate = false;  // alpha -> 0 limit state

    int nmax() const { return static_cast<int>(amps.size()) - 1; }
    double norm() const { return amps.norm(); }
};

/// Dense operator on the truncated basis. `band` is the ladder power for
/// banded operators (0 when unknown).
struct FockOperator {
    Matrix matrix;
    int band = 0;

    int nmax() const { return static_cast<int>(matrix.rows()) - 1; }
};

inline FockVector basis_state(int n, int nmax)
{
    if (n < 0 || n > nmax)
        throw DomainError("basis_state: index " + std::to_string(n) + " outside 0.." + std::to_string(nmax));
    FockVector v;
    v.amps = Vector::Zero(nmax + 1);
    v.amps[n] = 1.0;
    v.normalized = true;
    return v;
}

inline FockVector annihilate(const FockVector& v)
{
    FockVector out;
    out.amps = Vector::Zero(v.amps.size());
    for (int n = 1; n <= v.nmax(); ++n) out.amps[n - 1] = std::sqrt(double(n)) * v.amps[n];
    out.tail_mass = v.tail_mass;
    return out;
}

inline FockVector create(const FockVector& v)
{
    FockVector out;
    const int N = v.nmax();
    out.amps = Vector::Zero(v.amps.size());
    for (int n = 0; n < N; ++n) out.amps[n + 1] = std::sqrt(double(n + 1)) * v.amps[n];
    out.tail_mass = v.tail_mass + std::norm(std::sqrt(double(N + 1)) * v.amps[N]);
    return out;
}

inline FockVector apply_a_power(const FockVector& v, int j)
{
    if (j < 0) throw DomainError("apply_a_power: negative power");
    FockVector out = v;
    out.normalized = false;
    out.degenerate = false;
    for (int i = 0; i < j; ++i) out = annihilate(out);
    return out;
}

inline FockOperator annihilation_operator(int nmax)
{
    FockOperator a{Matrix::Zero(nmax + 1, nmax + 1), 1};
    for (int n = 1; n <= nmax; ++n) a.matrix(n - 1, n) = std::sqrt(double(n));
    return a;
}

inline FockOperator creation_operator(int nmax)
{
    auto a = annihilation_operator(nmax);
    a.matrix.adjointInPlace();
    return a;
}

inline FockOperator number_operator(int nmax)
{
    FockOperator n{Matrix::Zero(nmax + 1, nmax + 1), 0};
    for (int i = 0; i <= nmax; ++i) n.matrix(i, i) = double(i);
    return n;
}

/// a^j as a dense matrix (entries sqrt(n!/(n-j)!) on the j-th superdiagonal).
inline FockOperator ladder_power(int j, int nmax)
{
    FockOperator L{Matrix::Zero(nmax + 1, nmax + 1), j};
    for (int n = j; n <= nmax; ++n) {
        double v = 1.0;
        for (int m = n - j + 1; m <= n; ++m) v *= std::sqrt(double(m));
        L.matrix(n - j, n) = v;
    }
    return L;
}

struct XPOperators {
    FockOperator X;
    FockOperator P;
    FockOperator O;  // -i [X, P]
};

/// X = (L + L^dag)/sqrt2, P = (L - L^dag)/(i sqrt2) and O = -i[X, P] for a ladder matrix L.
inline XPOperators xp_from_ladder(const Matrix& L, int band = 0)
{
    const Matrix Ld = L.adjoint();
    const double s = std::sqrt(2.0);
    XPOperators ops;
    ops.X = {(L + Ld) / s, band};
    ops.P = {(L - Ld) / (I * s), band};
    ops.O = {-I * (ops.X.matrix * ops.P.matrix - ops.P.matrix * ops.X.matrix), 2 * band};
    return ops;
}

inline XPOperators xp_operators(int j, int nmax)
{
    if (j < 1) throw DomainError("xp_operators: j must be positive");
    if (2 * j > nmax)
        throw DomainError("xp_operators: nmax " + std::to_string(nmax) + " < 2j; the commutator would be pure edge artifact");
    return xp_from_ladder(ladder_power(j, nmax).matrix, j);
}

/// Largest |M - M^dag| entry on the leading (interior+1)x(interior+1) block.
inline double hermitian_defect(const Matrix& M, int interior = -1)
{
    const int n = interior < 0 ? static_cast<int>(M.rows()) : std::min<int>(interior + 1, static_cast<int>(M.rows()));
    const Matrix B = M.topLeftCorner(n, n);
    return (B - B.adjoint()).cwiseAbs().maxCoeff();
}

inline Complex inner(const FockVector& u, const FockVector& v)
{
    if (u.amps.size() != v.amps.size()) {
        const auto n = std::min(u.amps.size(), v.amps.size());
        return u.amps.head(n).dot(v.amps.head(n));
    }
    return u.amps.dot(v.amps);
}

inline Complex expectation(const FockVector& v, const FockOperator& M)
{
    return v.amps.dot(M.matrix * v.amps);
}

/// <M^2> - <M>^2 for Hermitian M, with <M^2> taken as |M v|^2.
inline double variance(const FockVector& v, const FockOperator& M)
{
    if (hermitian_defect(M.matrix) > 1e-8) throw DomainError("variance: operator is not Hermitian");
    const Vector Mv = M.matrix * v.amps;
    const double mean = v.amps.dot(Mv).real();
    return Mv.squaredNorm() - mean * mean;
}

/// Mass in the top `width` basis indices.
inline double top_band_mass(const FockVector& v, int width)
{
    width = std::min<int>(width, static_cast<int>(v.amps.size()));
    return v.amps.tail(width).squaredNorm();
}

inline FockVector normalized(FockVector v)
{
    const double n = v.amps.norm();
    if (!(n > 0.0)) throw DomainError("normalized: zero vector");
    v.amps /= n;
    v.tail_mass /= n * n;
    v.normalized = true;
    return v;
}

inline Matrix matrix_exp(const Matrix& G) { return G.exp(); }

struct ExpApplyOptions {
    double norm_tol = 1e-8;
    double edge_mass_tol = 1e-14;
    int edge_width = -1;  // default: max(4, (nmax+1)/8)
};

/// exp(G) v for an anti-Hermitian generator. Throws GuardBandError when the
/// result reaches the top of the basis or the norm is not preserved.
inline FockVector matrix_exp_apply(const FockOperator& G, const FockVector& v, ExpApplyOptions opts = {})
{
    if (G.matrix.rows() != v.amps.size()) throw DomainError("matrix_exp_apply: dimension mismatch");
    if ((G.matrix + G.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + G.matrix.cwiseAbs().maxCoeff()))
        throw DomainError("matrix_exp_apply: generator is not anti-Hermitian");
    FockVector out;
    out.amps = matrix_exp(G.matrix) * v.amps;
    out.tail_mass = v.tail_mass;
    out.normalized = v.normalized;
    const double n_in = v.amps.norm();
    const double n_out = out.amps.norm();
    const int width = opts.edge_width > 0 ? opts.edge_width : std::max(4, (v.nmax() + 1) / 8);
    const double edge = top_band_mass(out, width);
    if (std::abs(n_out - n_in) > opts.norm_tol * std::max(1.0, n_in))
        throw GuardBandError("matrix_exp_apply: norm leakage " + std::to_string(std::abs(n_out - n_in)) + "; raise nmax");
    if (edge > opts.edge_mass_tol * n_in * n_in)
        throw GuardBandError("matrix_exp_apply: mass " + std::to_string(edge) + " in the top " +
                             std::to_string(width) + " levels; raise nmax");
    out.tail_mass += edge;
    return out;
}

/// Free oscillator evolution, c_n -> e^{-i n t} c_n (zero-point phase dropped).
inline FockVector phase_evolve(const FockVector& v, double t)
{
    FockVector out = v;
    for (int n = 0; n <= v.nmax(); ++n) {
        const double ph = std::remainder(double(n) * t, 2.0 * pi);
        out.amps[n] *= std::polar(1.0, -ph);
    }
    return out;
}

/// psi_n(x_i) tabulated once for repeated Fock -> position conversions.
class PositionBasis {
public:
    PositionBasis(std::vector<double> xs, int nmax) : xs_(std::move(xs)), table_(xs_.size(), nmax + 1)
    {
        for (std::size_t i = 0; i < xs_.size(); ++i) {
            specfun::detail::hermite_psi_recurrence(nmax, xs_[i], [&](int n, double v) {
                table_(static_cast<Eigen::Index>(i), n) = v;
            });
        }
    }

    const std::vector<double>& xs() const { return xs_; }
    int nmax() const { return static_cast<int>(table_.cols()) - 1; }

    /// Wavefunction values; components above this basis' nmax must be negligible.
    Vector wavefunction(const FockVector& v) const
    {
        const int n = std::min(nmax(), v.nmax()) + 1;
        return table_.leftCols(n).cast<Complex>() * v.amps.head(n);
    }

    /// Inverse map by quadrature: c_n = h * sum_i psi_n(x_i) f(x_i) on a uniform grid.
    FockVector project(const Vector& f) const
    {
        const double h = xs_.size() > 1 ? xs_[1] - xs_[0] : 1.0;
        FockVector v;
        v.amps = table_.transpose().cast<Complex>() * f * h;
        return v;
    }

private:
    std::vector<double> xs_;
    Eigen::MatrixXd table_;
};

inline Vector position_wavefunction(const FockVector& v, const std::vector<double>& xs)
{
    return PositionBasis(xs, v.nmax()).wavefunction(v);
}

/// Global phase e^{i theta} that best maps a onto b (phase of the overlap <a|b>).
inline Complex fitted_phase(const Vector& a, const Vector& b)
{
    const Complex ov = a.dot(b);
    return std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex{1.0, 0.0};
}

/// sup_i |e^{i theta} a_i - b_i| with theta fitted by fitted_phase.
inline double max_diff_up_to_phase(const Vector& a, const Vector& b)
{
    return (a * fitted_phase(a, b) - b).cwiseAbs().maxCoeff();
}

}  // namespace hpcs
