// SPDX-License-Identifier: Apache-2.0
#include "angproj/projector.hpp"

#include "angproj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace angproj::projector {

using angmom::AngMomLabel;
using angmom::log_factorial;
using lalg::DenseMatrix;

namespace {

int half(int doubled) { return doubled / 2; }

void check_target(int two_j, int two_m)
{
    if (!AngMomLabel{two_j, two_m}.valid())
        throw InvalidLabel("invalid projector target 2j=" + std::to_string(two_j) +
                           " 2m=" + std::to_string(two_m));
}

// (j+m)! / ((j-m)! (2j)!): the r-independent part of the P_jm coefficients
// once gamma_r carries (2j+1)!/(r!(2j+r+1)!).
double lowdin_prefactor(int two_j, int two_m)
{
    return std::exp(log_factorial(half(two_j + two_m)) - log_factorial(half(two_j - two_m)) -
                    log_factorial(two_j));
}

// J_+ on the (2l+1)-dimensional block, states ordered m' = l, l-1, ..., -l.
DenseMatrix raising_block(int two_l)
{
    const auto dim = static_cast<std::size_t>(two_l + 1);
    DenseMatrix jp(dim, dim);
    for (std::size_t a = 1; a < dim; ++a) {
        const int two_mp = two_l - 2 * static_cast<int>(a);
        const auto r = angmom::ladder_apply(angmom::Ladder::raise, {two_l, two_mp});
        jp(a - 1, a) = r.coefficient;
    }
    return jp;
}

struct Block {
    int two_l;
    std::size_t offset;
    std::size_t dim;
};

std::vector<Block> blocks_of(int two_m, int two_j_max)
{
    std::vector<Block> blocks;
    std::size_t offset = 0;
    for (int two_l = std::abs(two_m) % 2; two_l <= two_j_max; two_l += 2) {
        const auto dim = static_cast<std::size_t>(two_l + 1);
        blocks.push_back({two_l, offset, dim});
        offset += dim;
    }
    return blocks;
}

} // namespace

// ---------------------------------------------------------------------------
// AxialStateVector

AxialStateVector::AxialStateVector(int two_m, int two_j_max)
    : two_m_(two_m), two_j_max_(two_j_max)
{
    if (!AngMomLabel{two_j_max, two_m}.valid())
        throw LabelMismatch("axial cutoff 2j_max=" + std::to_string(two_j_max) +
                            " incompatible with 2m=" + std::to_string(two_m));
    coefficients_.assign(static_cast<std::size_t>(half(two_j_max - std::abs(two_m)) + 1), 0.0);
}

AxialStateVector::AxialStateVector(int two_m, int two_j_max, std::vector<double> coefficients)
    : AxialStateVector(two_m, two_j_max)
{
    if (coefficients.size() != coefficients_.size())
        throw DimensionMismatch("axial state expects " + std::to_string(coefficients_.size()) +
                                      " coefficients");
    for (double c : coefficients)
        if (!std::isfinite(c)) throw NonFiniteEntry("axial state coefficient not finite");
    coefficients_ = std::move(coefficients);
}

int AxialStateVector::two_j_at(std::size_t slot) const noexcept
{
    return std::abs(two_m_) + 2 * static_cast<int>(slot);
}

std::size_t AxialStateVector::slot_of(int two_j) const
{
    if (two_j < std::abs(two_m_) || two_j > two_j_max_ || (two_j - two_m_) % 2 != 0)
        throw LabelMismatch("2j=" + std::to_string(two_j) + " not present in axial state");
    return static_cast<std::size_t>(half(two_j - std::abs(two_m_)));
}

AxialStateVector AxialStateVector::basis(int two_m, int two_j_max, int two_j)
{
    AxialStateVector v(two_m, two_j_max);
    v[v.slot_of(two_j)] = 1.0;
    return v;
}

// ---------------------------------------------------------------------------
// Harmonic oscillator

GammaSeries ho_gamma_triangular_solve(int n, int r_max)
{
    if (n < 0 || r_max < 0) throw LevelOutOfRange("oscillator level and r_max must be >= 0");
    return {2 * n, 0, ho_gamma_solve<double>(n, r_max)};
}

FockVector apply_annihilation(const FockVector& phi)
{
    FockVector out{std::vector<double>(phi.coefficients.size(), 0.0)};
    for (std::size_t n = 1; n < phi.coefficients.size(); ++n)
        out.coefficients[n - 1] = std::sqrt(double(n)) * phi.coefficients[n];
    return out;
}

FockVector apply_creation(const FockVector& phi)
{
    FockVector out{std::vector<double>(phi.coefficients.size(), 0.0)};
    for (std::size_t n = 0; n + 1 < phi.coefficients.size(); ++n)
        out.coefficients[n + 1] = std::sqrt(double(n + 1)) * phi.coefficients[n];
    return out;
}

FockVector ho_projector_apply(int n, const FockVector& phi)
{
    if (phi.coefficients.empty()) throw LevelOutOfRange("empty oscillator state");
    if (n < 0 || n > phi.n_max())
        throw LevelOutOfRange("level " + std::to_string(n) + " outside 0.." +
                              std::to_string(phi.n_max()));

    // Series accumulated in extended precision.
    using Ext = long double;
    using ExtVector = std::vector<Ext>;
    const std::size_t size = phi.coefficients.size();
    auto lower = [size](const ExtVector& v) {
        ExtVector out(size, 0.0L);
        for (std::size_t k = 1; k < size; ++k) out[k - 1] = std::sqrt(static_cast<Ext>(k)) * v[k];
        return out;
    };
    auto raise = [size](const ExtVector& v) {
        ExtVector out(size, 0.0L);
        for (std::size_t k = 0; k + 1 < size; ++k) out[k + 1] = std::sqrt(static_cast<Ext>(k + 1)) * v[k];
        return out;
    };

    const auto gamma = ho_gamma_solve<Ext>(n, phi.n_max() - n);
    ExtVector result(size, 0.0L);
    ExtVector lowered(phi.coefficients.begin(), phi.coefficients.end());
    for (int k = 0; k < n; ++k) lowered = lower(lowered);

    for (int i = 0; n + i <= phi.n_max(); ++i) {
        if (i > 0) lowered = lower(lowered);
        if (std::all_of(lowered.begin(), lowered.end(), [](Ext c) { return c == 0.0L; })) break;
        ExtVector term = lowered;
        for (int k = 0; k < n + i; ++k) term = raise(term);
        const Ext g = gamma[static_cast<std::size_t>(i)];
        for (std::size_t s = 0; s < size; ++s) result[s] += g * term[s];
    }

    Ext nfact = 1.0L;
    for (int f = 2; f <= n; ++f) nfact *= f;
    FockVector out{std::vector<double>(size)};
    for (std::size_t s = 0; s < size; ++s) out.coefficients[s] = static_cast<double>(result[s] / nfact);
    return out;
}

// ---------------------------------------------------------------------------
// Angular momentum series

double lowdin_gamma(int two_j, int r)
{
    if (two_j < 0 || r < 0) throw InvalidLabel("lowdin_gamma needs 2j >= 0 and r >= 0");
    double g = 1.0;
    for (int s = 0; s < r; ++s) g *= -1.0 / ((s + 1.0) * (two_j + s + 2.0));
    return g;
}

double ladder_diagonal(int two_l, int two_m, int k)
{
    AngMomLabel state{two_l, two_m};
    state.validate();
    double value = 1.0;
    for (int step = 0; step < k; ++step) {
        const auto up = angmom::ladder_apply(angmom::Ladder::raise, state);
        if (up.annihilated()) return 0.0;
        value *= up.coefficient;
        state = *up.label;
    }
    for (int step = 0; step < k; ++step) {
        const auto down = angmom::ladder_apply(angmom::Ladder::lower, state);
        value *= down.coefficient;
        state = *down.label;
    }
    return value;
}

double lowdin_series_polynomial(int two_j, int two_m, int two_l, double z)
{
    check_target(two_j, two_m);
    AngMomLabel{two_l, two_m}.validate();
    // P_{j,-m} acts on |l,-m> as P_{j,m} acts on |l,m> (rotation by pi about y).
    const int m_abs = std::abs(two_m);
    const double base = lowdin_prefactor(two_j, m_abs);
    const int k0 = half(two_j - m_abs);
    const int r_max = half(two_l - two_j);  // J_+^k annihilates |l m> once k > l - m

    double sum = 0.0;
    double zr = 1.0;
    for (int r = 0; r <= r_max; ++r) {
        sum += base * lowdin_gamma(two_j, r) * zr * ladder_diagonal(two_l, m_abs, k0 + r);
        zr *= z;
    }
    return sum;
}

double lowdin_series_diagonal(int two_j, int two_m, int two_l)
{
    return lowdin_series_polynomial(two_j, two_m, two_l, 1.0);
}

AxialStateVector lowdin_apply(int two_j, int two_m, const AxialStateVector& phi)
{
    if (phi.two_m() != two_m)
        throw LabelMismatch("projector 2m=" + std::to_string(two_m) + " applied to state with 2m=" +
                            std::to_string(phi.two_m()));
    check_target(two_j, two_m);
    if (two_j > phi.two_j_max())
        throw LabelMismatch("target 2j=" + std::to_string(two_j) + " above state cutoff 2j_max=" +
                            std::to_string(phi.two_j_max()));

    AxialStateVector out(phi.two_m(), phi.two_j_max());
    for (std::size_t slot = 0; slot < phi.size(); ++slot) {
        if (phi[slot] == 0.0) continue;
        out[slot] = phi[slot] * lowdin_series_diagonal(two_j, two_m, phi.two_j_at(slot));
    }
    return out;
}

DenseMatrix lowdin_projector_matrix(int two_j, int two_m, int two_j_max)
{
    AxialStateVector probe(two_m, two_j_max);
    DenseMatrix p(probe.size(), probe.size());
    for (std::size_t col = 0; col < probe.size(); ++col) {
        const auto e = AxialStateVector::basis(two_m, two_j_max, probe.two_j_at(col));
        const auto image = lowdin_apply(two_j, two_m, e);
        for (std::size_t row = 0; row < probe.size(); ++row) p(row, col) = image[row];
    }
    return p;
}

// ---------------------------------------------------------------------------
// Full truncated space and the disk integral

std::vector<AngMomLabel> truncated_space(int two_m, int two_j_max)
{
    std::vector<AngMomLabel> states;
    for (const auto& b : blocks_of(two_m, two_j_max))
        for (int two_mp = b.two_l; two_mp >= -b.two_l; two_mp -= 2) states.push_back({b.two_l, two_mp});
    return states;
}

DenseMatrix series_projector_full(int two_j, int two_m, int two_j_max)
{
    check_target(two_j, two_m);
    if (two_j_max < two_j) throw TruncationTooSmall("2j_max below target 2j");
    const auto blocks = blocks_of(two_m, two_j_max);
    const std::size_t dim = blocks.back().offset + blocks.back().dim;
    DenseMatrix p(dim, dim);

    const int m_abs = std::abs(two_m);
    const double base = lowdin_prefactor(two_j, m_abs);
    const int k0 = half(two_j - m_abs);

    for (const auto& b : blocks) {
        const auto jp = raising_block(b.two_l);
        DenseMatrix power = DenseMatrix::identity(b.dim);
        for (int k = 0; k < k0; ++k) power = jp * power;
        for (int r = 0; k0 + r <= b.two_l; ++r) {
            if (r > 0) power = jp * power;
            const auto term = power.transpose() * power;  // J_-^k J_+^k
            const double coef = base * lowdin_gamma(two_j, r);
            for (std::size_t x = 0; x < b.dim; ++x)
                for (std::size_t y = 0; y < b.dim; ++y)
                    p(b.offset + x, b.offset + y) += coef * term(x, y);
        }
    }
    return p;
}

IntegralProjector integral_projector_matrix(int two_j, int two_m, int two_j_max,
                                            std::size_t radial_points, std::size_t angular_points,
                                            double lowering_sign)
{
    check_target(two_j, two_m);
    if (two_m < 0) throw InvalidLabel("disk-integral projector needs m >= 0");
    if (two_j_max < two_j)
        throw TruncationTooSmall("truncation 2j_max=" + std::to_string(two_j_max) +
                                 " below target 2j=" + std::to_string(two_j));
    if (radial_points == 0 || angular_points == 0)
        throw InvalidLabel("disk quadrature needs at least one node per direction");

    const auto blocks = blocks_of(two_m, two_j_max);
    const std::size_t dim = blocks.back().offset + blocks.back().dim;

    // Nonzero entries of (J_-^a / a!)(J_+^b / b!), flattened over all blocks.
    struct Entry {
        std::size_t row, col;
        int a, b;
        double value;
    };
    std::vector<Entry> entries;
    int max_power = 0;
    for (const auto& blk : blocks) {
        const auto jp = raising_block(blk.two_l);
        std::vector<DenseMatrix> scaled;  // J_+^b / b!
        scaled.push_back(DenseMatrix::identity(blk.dim));
        for (int b = 1; b <= blk.two_l; ++b) {
            auto next = jp * scaled.back();
            for (std::size_t x = 0; x < blk.dim; ++x)
                for (std::size_t y = 0; y < blk.dim; ++y) next(x, y) /= b;
            scaled.push_back(std::move(next));
        }
        max_power = std::max(max_power, blk.two_l);
        for (int a = 0; a <= blk.two_l; ++a) {
            const auto lower_a = scaled[static_cast<std::size_t>(a)].transpose();
            for (int b = 0; b <= blk.two_l; ++b) {
                const auto prod = lower_a * scaled[static_cast<std::size_t>(b)];
                for (std::size_t x = 0; x < blk.dim; ++x)
                    for (std::size_t y = 0; y < blk.dim; ++y)
                        if (prod(x, y) != 0.0)
                            entries.push_back({blk.offset + x, blk.offset + y, a, b, prod(x, y)});
            }
        }
    }

    const int jacobi_degree = half(two_j - two_m);
    const auto radial = angmom::gauss_legendre(radial_points, 0.0, 1.0);
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(angular_points);

    std::vector<std::complex<double>> acc(dim * dim);
    std::vector<std::complex<double>> z_pow(static_cast<std::size_t>(max_power) + 1);
    std::vector<std::complex<double>> mzbar_pow(static_cast<std::size_t>(max_power) + 1);

    for (std::size_t q = 0; q < radial.size(); ++q) {
        const double t = radial.nodes[q];
        const double rho = std::sqrt(t);
        // dx dy = rho drho dphi = dt dphi / 2
        const double radial_weight = 0.5 * radial.weights[q] *
                                     angmom::jacobi_polynomial(jacobi_degree, 0.0, two_m, 1.0 - 2.0 * t) *
                                     std::pow(1.0 - t, two_m);
        for (std::size_t p = 0; p < angular_points; ++p) {
            const double phi = dphi * static_cast<double>(p);
            const std::complex<double> z = std::polar(rho, -phi);
            const std::complex<double> mzbar = lowering_sign * std::conj(z);
            z_pow[0] = mzbar_pow[0] = 1.0;
            for (std::size_t e = 1; e < z_pow.size(); ++e) {
                z_pow[e] = z_pow[e - 1] * z;
                mzbar_pow[e] = mzbar_pow[e - 1] * mzbar;
            }
            const double w = radial_weight * dphi;
            for (const auto& en : entries)
                acc[en.row * dim + en.col] += w * en.value * mzbar_pow[static_cast<std::size_t>(en.a)] *
                                              z_pow[static_cast<std::size_t>(en.b)];
        }
    }

    IntegralProjector out{truncated_space(two_m, two_j_max), DenseMatrix(dim, dim), 0.0};
    for (std::size_t x = 0; x < dim; ++x)
        for (std::size_t y = 0; y < dim; ++y) {
            out.matrix(x, y) = acc[x * dim + y].real();
            out.max_imag = std::max(out.max_imag, std::abs(acc[x * dim + y].imag()));
        }
    return out;
}

IntegralComparison compare_integral_to_series(int two_j, int two_m, int two_j_max,
                                              std::size_t radial_points,
                                              std::size_t angular_points)
{
    const auto integral =
        integral_projector_matrix(two_j, two_m, two_j_max, radial_points, angular_points);
    const auto series = series_projector_full(two_j, two_m, two_j_max);

    const auto it = std::find(integral.states.begin(), integral.states.end(), AngMomLabel{two_j, two_m});
    const auto idx = static_cast<std::size_t>(it - integral.states.begin());

    IntegralComparison cmp;
    cmp.max_imag = integral.max_imag;
    const double pivot = integral.matrix(idx, idx);
    cmp.normalization = pivot != 0.0 ? series(idx, idx) / pivot : 0.0;
    for (std::size_t x = 0; x < series.rows(); ++x)
        for (std::size_t y = 0; y < series.cols(); ++y)
            cmp.max_deviation = std::max(
                cmp.max_deviation, std::abs(cmp.normalization * integral.matrix(x, y) - series(x, y)));
    if (pivot == 0.0) cmp.max_deviation = std::numeric_limits<double>::infinity();
    return cmp;
}

double radial_moment(int two_j, int two_m, int i, std::size_t points)
{
    check_target(two_j, two_m);
    if (two_m < 0) throw InvalidLabel("radial moment needs m >= 0");
    const auto rule = angmom::gauss_legendre(points, 0.0, 1.0);
    const int degree = half(two_j - two_m);
    const double log_norm = 2.0 * log_factorial(i);
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double t = rule.nodes[q];
        sum += rule.weights[q] * std::exp(i * std::log(t) - log_norm) * std::pow(1.0 - t, two_m) *
               angmom::jacobi_polynomial(degree, 0.0, two_m, 1.0 - 2.0 * t);
    }
    return sum;
}

double radial_moment_exact(int two_j, int two_m, int r)
{
    check_target(two_j, two_m);
    const int n = half(two_j - two_m);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    return sign * std::exp(log_factorial(half(two_j + two_m)) - log_factorial(n) - log_factorial(r) -
                           log_factorial(two_j + r + 1));
}

} // namespace angproj::projector
