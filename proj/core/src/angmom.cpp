// SPDX-License-Identifier: Apache-2.0
#include "angproj/angmom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace angproj::angmom {

namespace {

const std::array<double, kLogFactorialTableSize>& log_factorial_table()
{
    static const auto table = [] {
        std::array<double, kLogFactorialTableSize> t{};
        t[0] = 0.0;
        for (int n = 1; n < kLogFactorialTableSize; ++n)
            t[static_cast<std::size_t>(n)] = t[static_cast<std::size_t>(n - 1)] + std::log(double(n));
        return t;
    }();
    return table;
}

double ipow(double x, int e)
{
    double r = 1.0;
    double b = x;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// (two_a +/- two_b)/2 with the parity already validated
int half(int doubled) { return doubled / 2; }

} // namespace

bool AngMomLabel::valid() const noexcept
{
    return two_j >= 0 && std::abs(two_m) <= two_j && ((two_j - two_m) % 2 == 0);
}

void AngMomLabel::validate() const
{
    if (!valid())
        throw InvalidLabel("invalid angular-momentum label 2j=" + std::to_string(two_j) +
                           " 2m=" + std::to_string(two_m));
}

double log_factorial(int n)
{
    if (n < 0) throw InvalidLabel("factorial of a negative integer");
    if (n >= kLogFactorialTableSize)
        throw SizeLimitExceeded("log-factorial table exceeded at n = " + std::to_string(n));
    return log_factorial_table()[static_cast<std::size_t>(n)];
}

double wigner_small_d(int two_j, int two_mp, int two_m, double beta)
{
    AngMomLabel{two_j, two_mp}.validate();
    AngMomLabel{two_j, two_m}.validate();

    const int j_plus_mp = half(two_j + two_mp);
    const int j_minus_mp = half(two_j - two_mp);
    const int j_plus_m = half(two_j + two_m);
    const int j_minus_m = half(two_j - two_m);
    const int mp_minus_m = half(two_mp - two_m);

    const double c = std::cos(0.5 * beta);
    const double s = std::sin(0.5 * beta);
    const double log_norm = 0.5 * (log_factorial(j_plus_mp) + log_factorial(j_minus_mp) +
                                   log_factorial(j_plus_m) + log_factorial(j_minus_m));

    const int k_lo = std::max(0, -mp_minus_m);
    const int k_hi = std::min(j_plus_m, j_minus_mp);
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double log_den = log_factorial(j_plus_m - k) + log_factorial(k) +
                               log_factorial(mp_minus_m + k) + log_factorial(j_minus_mp - k);
        const double mag = std::exp(log_norm - log_den);
        const double sign = ((mp_minus_m + k) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * mag * ipow(c, two_j - mp_minus_m - 2 * k) *
               ipow(s, mp_minus_m + 2 * k);
    }
    return sum;
}

lalg::DenseMatrix wigner_small_d_matrix(int two_j, double beta)
{
    if (two_j < 0) throw InvalidLabel("negative j");
    const auto dim = static_cast<std::size_t>(two_j + 1);
    lalg::DenseMatrix d(dim, dim);
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            d(a, b) = wigner_small_d(two_j, two_j - 2 * static_cast<int>(a),
                                     two_j - 2 * static_cast<int>(b), beta);
    return d;
}

lalg::DenseMatrix rotation_matrix(std::span<const ShellLabel> orbitals, double beta)
{
    if (orbitals.empty()) throw DimensionMismatch("rotation_matrix needs at least one orbital");
    const std::size_t n = orbitals.size();
    lalg::DenseMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& a = orbitals[i];
            const auto& b = orbitals[j];
            if (a.shell != b.shell || a.two_j != b.two_j) continue;
            r(i, j) = wigner_small_d(a.two_j, a.two_m, b.two_m, beta);
        }
    return r;
}

LadderResult ladder_apply(Ladder direction, AngMomLabel state)
{
    state.validate();
    const int step = direction == Ladder::raise ? 2 : -2;
    const int new_two_m = state.two_m + step;
    if (std::abs(new_two_m) > state.two_j) return {0.0, std::nullopt};
    // (j -/+ m)(j +/- m + 1) in doubled units, divided by 4
    const double a = direction == Ladder::raise ? state.two_j - state.two_m : state.two_j + state.two_m;
    const double b = direction == Ladder::raise ? state.two_j + state.two_m + 2
                                                : state.two_j - state.two_m + 2;
    return {0.5 * std::sqrt(a * b), AngMomLabel{state.two_j, new_two_m}};
}

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M)
{
    AngMomLabel{two_j1, two_m1}.validate();
    AngMomLabel{two_j2, two_m2}.validate();
    AngMomLabel{two_J, two_M}.validate();

    if (two_M != two_m1 + two_m2) return 0.0;
    if (two_J < std::abs(two_j1 - two_j2) || two_J > two_j1 + two_j2) return 0.0;
    if ((two_j1 + two_j2 + two_J) % 2 != 0) return 0.0;

    const int a = half(two_j1 + two_j2 - two_J);  // j1 + j2 - J
    const int b = half(two_j1 - two_m1);          // j1 - m1
    const int c = half(two_j2 + two_m2);          // j2 + m2
    const int d = half(two_J - two_j2 + two_m1);  // J - j2 + m1
    const int e = half(two_J - two_j1 - two_m2);  // J - j1 - m2

    const double log_tri = log_factorial(half(two_J + two_j1 - two_j2)) +
                           log_factorial(half(two_J - two_j1 + two_j2)) + log_factorial(a) -
                           log_factorial(half(two_j1 + two_j2 + two_J) + 1);
    const double log_m = log_factorial(half(two_J + two_M)) + log_factorial(half(two_J - two_M)) +
                         log_factorial(b) + log_factorial(half(two_j1 + two_m1)) +
                         log_factorial(half(two_j2 - two_m2)) + log_factorial(c);
    const double pref_log = 0.5 * (std::log(double(two_J + 1)) + log_tri + log_m);

    const int k_lo = std::max({0, -d, -e});
    const int k_hi = std::min({a, b, c});
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double log_den = log_factorial(k) + log_factorial(a - k) + log_factorial(b - k) +
                               log_factorial(c - k) + log_factorial(d + k) + log_factorial(e + k);
        sum += (k % 2 == 0 ? 1.0 : -1.0) * std::exp(pref_log - log_den);
    }
    return sum;
}

double jacobi_polynomial(int n, double alpha, double beta, double x)
{
    if (n < 0) throw InvalidLabel("Jacobi polynomial degree must be non-negative");
    if (n == 0) return 1.0;
    double p_prev = 1.0;
    double p = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x;
    const double ab = alpha + beta;
    for (int k = 2; k <= n; ++k) {
        const double t = 2.0 * k + ab;
        const double a1 = 2.0 * k * (k + ab) * (t - 2.0);
        const double a2 = (t - 1.0) * (alpha * alpha - beta * beta);
        const double a3 = (t - 2.0) * (t - 1.0) * t;
        const double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * t;
        const double next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    return p;
}

QuadratureRule gauss_legendre_standard(std::size_t npoints)
{
    if (npoints == 0) throw InvalidLabel("Gauss-Legendre rule needs at least one node");
    const auto n = static_cast<int>(npoints);
    QuadratureRule rule;
    rule.nodes.resize(npoints);
    rule.weights.resize(npoints);

    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pn = n == 1 ? x : p1;
            double pn_1 = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pn_1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // refresh the derivative at the converged root
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pn = n == 1 ? x : p1;
                pn_1 = n == 1 ? 1.0 : p0;
                dp = n * (x * pn - pn_1) / (x * x - 1.0);
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = npoints - 1 - lo;
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[npoints / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_legendre(std::size_t npoints, double lo, double hi)
{
    auto rule = gauss_legendre_standard(npoints);
    const double half_len = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        rule.nodes[q] = mid + half_len * rule.nodes[q];
        rule.weights[q] *= half_len;
    }
    return rule;
}

QuadratureRule gauss_legendre(std::size_t npoints)
{
    return gauss_legendre(npoints, 0.0, std::numbers::pi);
}

} // namespace angproj::angmom
