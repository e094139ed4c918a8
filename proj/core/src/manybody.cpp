// SPDX-License-Identifier: Apache-2.0
#include "angproj/manybody.hpp"

#include "angproj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace angproj::manybody {

using lalg::DenseMatrix;

namespace {

std::string id_str(OrbitalId id) { return std::to_string(id); }

void check_id(OrbitalId id, std::size_t n_basis, const char* what)
{
    if (id >= n_basis) throw_bad_index(what, static_cast<long>(id));
}

long position_of(const RotationKernelSample& s, OrbitalId id, bool want_occupied)
{
    if (id >= s.position.size()) return -1;
    const long p = s.position[id];
    if (want_occupied) return p >= 0 ? p : -1;
    return p < 0 ? -p - 1 : -1;
}

std::size_t occupied_pos(const RotationKernelSample& s, OrbitalId id)
{
    const long p = position_of(s, id, true);
    if (p < 0) throw_bad_index("orbital is not occupied", static_cast<long>(id));
    return static_cast<std::size_t>(p);
}

std::size_t unoccupied_pos(const RotationKernelSample& s, OrbitalId id)
{
    const long p = position_of(s, id, false);
    if (p < 0) throw_bad_index("orbital is not unoccupied", static_cast<long>(id));
    return static_cast<std::size_t>(p);
}

// Columns of A^T with columns i, j replaced by the transform rows of k, l.
DenseMatrix replaced_matrix(const RotationKernelSample& s, std::size_t pi, std::size_t pj,
                            OrbitalId k, OrbitalId l)
{
    DenseMatrix m = s.occupied_block.transpose();
    const std::size_t n = s.occupied.size();
    for (std::size_t r = 0; r < n; ++r) {
        m(r, pi) = s.transform(k, s.occupied[r]);
        m(r, pj) = s.transform(l, s.occupied[r]);
    }
    return m;
}

bool close(double a, double b)
{
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

} // namespace

// ---------------------------------------------------------------------------
// SlaterState

SlaterState::SlaterState(std::vector<Orbital> basis, std::vector<OrbitalId> occupied)
    : basis_(std::move(basis)), occupied_(std::move(occupied))
{
    if (basis_.empty()) throw ModelInvalid("empty single-particle basis");
    for (std::size_t p = 0; p < basis_.size(); ++p) {
        const auto& o = basis_[p];
        if (o.id != p)
            throw ModelInvalid("orbital ids must be dense and ordered; found " + id_str(o.id) +
                               " at position " + std::to_string(p));
        if (!angmom::AngMomLabel{o.two_j, o.two_m}.valid())
            throw ModelInvalid("orbital " + id_str(o.id) + " has an invalid (2j, 2m) label");
    }
    position_.assign(basis_.size(), 0);
    std::vector<bool> seen(basis_.size(), false);
    for (std::size_t a = 0; a < occupied_.size(); ++a) {
        const auto id = occupied_[a];
        if (id >= basis_.size()) throw ModelInvalid("occupied orbital " + id_str(id) + " not in basis");
        if (seen[id]) throw ModelInvalid("orbital " + id_str(id) + " occupied twice");
        seen[id] = true;
        position_[id] = static_cast<long>(a);
    }
    for (std::size_t p = 0; p < basis_.size(); ++p) {
        basis_[p].occupied = seen[p];
        if (!seen[p]) {
            position_[p] = -static_cast<long>(unoccupied_.size()) - 1;
            unoccupied_.push_back(p);
        }
    }
}

bool SlaterState::is_occupied(OrbitalId id) const
{
    check_id(id, basis_.size(), "orbital id out of range");
    return basis_[id].occupied;
}

std::size_t SlaterState::occupied_position(OrbitalId id) const
{
    if (!is_occupied(id)) throw_bad_index("orbital is not occupied", static_cast<long>(id));
    return static_cast<std::size_t>(position_[id]);
}

std::size_t SlaterState::unoccupied_position(OrbitalId id) const
{
    if (is_occupied(id)) throw_bad_index("orbital is occupied", static_cast<long>(id));
    return static_cast<std::size_t>(-position_[id] - 1);
}

std::vector<angmom::ShellLabel> SlaterState::shell_labels() const
{
    std::vector<angmom::ShellLabel> labels;
    labels.reserve(basis_.size());
    for (const auto& o : basis_) labels.push_back(o.shell_label());
    return labels;
}

int SlaterState::total_two_m() const noexcept
{
    int sum = 0;
    for (auto id : occupied_) sum += basis_[id].two_m;
    return sum;
}

// ---------------------------------------------------------------------------
// Operators

OneBodyOperator::OneBodyOperator(std::size_t n_basis) : matrix_(n_basis, n_basis) {}

OneBodyOperator::OneBodyOperator(DenseMatrix matrix) : matrix_(std::move(matrix))
{
    if (!matrix_.is_square()) throw ModelInvalid("one-body operator must be square");
    matrix_.check_finite();
    for (std::size_t p = 0; p < matrix_.rows(); ++p)
        for (std::size_t q = p + 1; q < matrix_.cols(); ++q)
            if (!close(matrix_(p, q), matrix_(q, p)))
                throw ModelInvalid("one-body operator not symmetric at (" + id_str(p) + ", " +
                                   id_str(q) + ")");
}

void OneBodyOperator::set(std::size_t p, std::size_t q, double value)
{
    check_id(p, n_basis(), "one-body index out of range");
    check_id(q, n_basis(), "one-body index out of range");
    if (!std::isfinite(value)) throw NonFiniteEntry("one-body element not finite");
    matrix_(p, q) = value;
    matrix_(q, p) = value;
}

TwoBodyOperator::TwoBodyOperator(std::size_t n_basis) : n_basis_(n_basis) {}

void TwoBodyOperator::store(const Key& key, double value)
{
    const auto [it, inserted] = table_.emplace(key, value);
    if (!inserted && !close(it->second, value))
        throw ModelInvalid("conflicting two-body element <" + id_str(std::get<0>(key)) + " " +
                           id_str(std::get<1>(key)) + "|V|" + id_str(std::get<2>(key)) + " " +
                           id_str(std::get<3>(key)) + ">");
}

void TwoBodyOperator::set(OrbitalId i, OrbitalId j, OrbitalId k, OrbitalId l, double value)
{
    for (auto id : {i, j, k, l}) check_id(id, n_basis_, "two-body index out of range");
    if (!std::isfinite(value)) throw NonFiniteEntry("two-body element not finite");
    if (i == j || k == l) {
        if (value != 0.0) throw ModelInvalid("antisymmetrized element with a repeated index is nonzero");
        return;
    }
    double sign = 1.0;
    if (i > j) { std::swap(i, j); sign = -sign; }
    if (k > l) { std::swap(k, l); sign = -sign; }
    store({i, j, k, l}, sign * value);
    store({k, l, i, j}, sign * value);
}

double TwoBodyOperator::operator()(OrbitalId i, OrbitalId j, OrbitalId k, OrbitalId l) const
{
    if (i == j || k == l) return 0.0;
    double sign = 1.0;
    if (i > j) { std::swap(i, j); sign = -sign; }
    if (k > l) { std::swap(k, l); sign = -sign; }
    const auto it = table_.find({i, j, k, l});
    return it == table_.end() ? 0.0 : sign * it->second;
}

std::vector<TwoBodyOperator::Element> TwoBodyOperator::elements() const
{
    std::vector<Element> out;
    out.reserve(table_.size());
    for (const auto& [key, value] : table_)
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), value});
    return out;
}

void Model::validate() const
{
    if (one_body.n_basis() != state.n_basis())
        throw ModelInvalid("one-body operator dimension differs from the basis");
    if (two_body.n_basis() != state.n_basis())
        throw ModelInvalid("two-body operator dimension differs from the basis");
}

// ---------------------------------------------------------------------------
// Kernels

RotationKernelSample transformation_kernel(const SlaterState& phi, const DenseMatrix& u,
                                           double beta_tag)
{
    const std::size_t nb = phi.n_basis();
    if (u.rows() != nb || u.cols() != nb)
        throw DimensionMismatch("transformation must be " + std::to_string(nb) + " square");
    const auto& occ = phi.occupied();
    const auto& unocc = phi.unoccupied();
    const std::size_t n = occ.size();
    if (n == 0) throw ModelInvalid("state has no particles");

    DenseMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = u(occ[r], occ[c]);

    auto lu = lalg::lu_factor(a.transpose());
    const bool vanishing =
        lu.singular() || lu.smallest_pivot() <= lalg::kSingularPivotRelTol * u.max_abs();
    const double overlap = vanishing ? 0.0 : lalg::determinant(lu);

    std::optional<lalg::SolutionTable> table;
    if (!vanishing && !unocc.empty()) {
        std::vector<std::vector<double>> rhs(unocc.size(), std::vector<double>(n));
        for (std::size_t k = 0; k < unocc.size(); ++k)
            for (std::size_t m = 0; m < n; ++m) rhs[k][m] = u(unocc[k], occ[m]);
        table = lalg::solve_columns(lu, rhs);
    }
    std::vector<long> position(nb);
    for (std::size_t p = 0; p < n; ++p) position[occ[p]] = static_cast<long>(p);
    for (std::size_t p = 0; p < unocc.size(); ++p) position[unocc[p]] = -static_cast<long>(p) - 1;
    return RotationKernelSample{beta_tag, overlap, u, std::move(a), std::move(lu), std::move(table),
                                occ, unocc, vanishing, std::move(position)};
}

RotationKernelSample overlap_kernel(const SlaterState& phi, double beta)
{
    const auto labels = phi.shell_labels();
    return transformation_kernel(phi, angmom::rotation_matrix(labels, beta), beta);
}

double two_ph_kernel(const RotationKernelSample& sample, OrbitalId i, OrbitalId j, OrbitalId k,
                     OrbitalId l)
{
    const std::size_t pi = occupied_pos(sample, i);
    const std::size_t pj = occupied_pos(sample, j);
    const std::size_t rk = unoccupied_pos(sample, k);
    const std::size_t rl = unoccupied_pos(sample, l);
    if (i == j || k == l) return 0.0;
    if (!sample.ph_table) return lalg::small_determinant(replaced_matrix(sample, pi, pj, k, l));
    const std::size_t rows[2] = {rk, rl};
    const std::size_t cols[2] = {pi, pj};
    return lalg::replaced_determinant(sample.overlap, *sample.ph_table, rows, cols);
}

double two_ph_kernel_direct(const RotationKernelSample& sample, OrbitalId i, OrbitalId j,
                            OrbitalId k, OrbitalId l)
{
    const std::size_t pi = occupied_pos(sample, i);
    const std::size_t pj = occupied_pos(sample, j);
    unoccupied_pos(sample, k);
    unoccupied_pos(sample, l);
    if (i == j || k == l) return 0.0;
    return lalg::lu_factor(replaced_matrix(sample, pi, pj, k, l)).raw_determinant();
}

double ph_amplitude(const RotationKernelSample& sample, OrbitalId k, OrbitalId i)
{
    check_id(k, sample.transform.rows(), "orbital id out of range");
    const std::size_t pi = occupied_pos(sample, i);
    if (sample.singular()) throw SingularMatrix("particle-hole amplitude at a singular overlap");
    const long rk = position_of(sample, k, false);
    if (rk >= 0) return (*sample.ph_table)(static_cast<std::size_t>(rk), pi);
    std::vector<double> b(sample.occupied.size());
    for (std::size_t m = 0; m < b.size(); ++m) b[m] = sample.transform(k, sample.occupied[m]);
    return sample.lu.solve(b)[pi];
}

DenseMatrix kernel_adjugate(const RotationKernelSample& sample)
{
    if (sample.singular()) return lalg::adjugate(sample.occupied_block);
    const std::size_t n = sample.occupied.size();
    DenseMatrix adj(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(e.begin(), e.end(), 0.0);
        e[i] = sample.overlap;
        const auto y = sample.lu.solve(e);
        for (std::size_t j = 0; j < n; ++j) adj(i, j) = y[j];
    }
    return adj;
}

double lowdin_one_body(const RotationKernelSample& sample, const OneBodyOperator& t)
{
    const auto& occ = sample.occupied;
    const std::size_t n = occ.size();
    const std::size_t nb = sample.transform.rows();
    if (t.n_basis() != nb) throw DimensionMismatch("one-body operator dimension");
    const auto adj = kernel_adjugate(sample);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double w = 0.0;
            for (std::size_t p = 0; p < nb; ++p) w += t(occ[i], p) * sample.transform(p, occ[j]);
            sum += w * adj(j, i);
        }
    return sum;
}

double lowdin_two_body(const RotationKernelSample& sample, const TwoBodyOperator& v)
{
    const auto& occ = sample.occupied;
    const std::size_t n = occ.size();
    if (v.n_basis() != sample.transform.rows()) throw DimensionMismatch("two-body operator dimension");
    if (n < 2) return 0.0;

    // D(kl, ij) = det(A) (A^-1_ki A^-1_lj - A^-1_li A^-1_kj), k<l and i<j positions
    const std::size_t npairs = n * (n - 1) / 2;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(npairs);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    auto pair_index = [n](std::size_t a, std::size_t b) {
        return a * n - a * (a + 1) / 2 + (b - a - 1);
    };

    DenseMatrix d(npairs, npairs);
    if (!sample.singular()) {
        const auto adj = kernel_adjugate(sample);
        for (std::size_t x = 0; x < npairs; ++x)
            for (std::size_t y = 0; y < npairs; ++y) {
                const auto [k, l] = pairs[x];
                const auto [i, j] = pairs[y];
                d(x, y) = (adj(k, i) * adj(l, j) - adj(l, i) * adj(k, j)) / sample.overlap;
            }
    } else {
        // complementary minors: rows {i,j} and columns {k,l} of A removed
        for (std::size_t x = 0; x < npairs; ++x)
            for (std::size_t y = 0; y < npairs; ++y) {
                const auto [k, l] = pairs[x];
                const auto [i, j] = pairs[y];
                double minor = 1.0;
                if (n > 2) {
                    std::vector<std::size_t> rows;
                    std::vector<std::size_t> cols;
                    for (std::size_t r = 0; r < n; ++r) {
                        if (r != i && r != j) rows.push_back(r);
                        if (r != k && r != l) cols.push_back(r);
                    }
                    minor = lalg::small_determinant(lalg::submatrix(sample.occupied_block, rows, cols));
                }
                d(x, y) = ((i + j + k + l) % 2 == 0 ? 1.0 : -1.0) * minor;
            }
    }

    double sum = 0.0;
    for (const auto& e : v.elements()) {
        const long pp = position_of(sample, e.i, true);
        const long pq = position_of(sample, e.j, true);
        if (pp < 0 || pq < 0) continue;
        double sign = 1.0;
        auto a = static_cast<std::size_t>(pp);
        auto b = static_cast<std::size_t>(pq);
        if (a > b) { std::swap(a, b); sign = -1.0; }
        const std::size_t y = pair_index(a, b);
        double acc = 0.0;
        for (std::size_t x = 0; x < npairs; ++x) {
            const auto [k, l] = pairs[x];
            const double s = sample.transform(e.k, occ[k]) * sample.transform(e.l, occ[l]) -
                             sample.transform(e.k, occ[l]) * sample.transform(e.l, occ[k]);
            acc += s * d(x, y);
        }
        sum += sign * e.value * acc;
    }
    return sum;
}

double pair_excitation_energy_kernel(const RotationKernelSample& sample, const TwoBodyOperator& v)
{
    double sum = 0.0;
    for (const auto& e : v.elements()) {
        if (position_of(sample, e.i, true) < 0 || position_of(sample, e.j, true) < 0) continue;
        if (position_of(sample, e.k, false) < 0 || position_of(sample, e.l, false) < 0) continue;
        sum += e.value * two_ph_kernel(sample, e.i, e.j, e.k, e.l);
    }
    return kRestrictedPairSumPrefactor * sum;
}

ThoulessExpansion thouless_expand(const SlaterState& phi, const DenseMatrix& u)
{
    auto sample = transformation_kernel(phi, u);
    if (sample.singular()) throw VanishingOverlap("occupied block of the transformation is singular");
    lalg::SolutionTable x = sample.ph_table ? *sample.ph_table
                                            : lalg::SolutionTable(0, sample.occupied.size());
    return {sample.overlap, std::move(x), sample.occupied, sample.unoccupied};
}

BrillouinReport brillouin_check(const SlaterState& phi, const OneBodyOperator& t,
                                const TwoBodyOperator& v)
{
    BrillouinReport report;
    for (auto i : phi.occupied())
        for (auto k : phi.unoccupied()) {
            double h = t(i, k);
            for (auto j : phi.occupied()) h += v(i, j, k, j);
            report.residuals.push_back({i, k, h});
            report.max_abs = std::max(report.max_abs, std::abs(h));
        }
    return report;
}

double hf_energy(const SlaterState& phi, const OneBodyOperator& t, const TwoBodyOperator& v)
{
    double e = 0.0;
    for (auto i : phi.occupied()) e += t(i, i);
    for (auto i : phi.occupied())
        for (auto j : phi.occupied()) e += 0.5 * v(i, j, i, j);
    return e;
}

} // namespace angproj::manybody
