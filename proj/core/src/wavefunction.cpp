#include "scop/wavefunction.hpp"

#include "scop/error.hpp"

#include <cmath>
#include <string>

namespace scop {

namespace {

constexpr double kNormTol = 1e-12;

double total_mass(const Grid& grid, const std::vector<std::complex<double>>& amplitudes) {
    double sum = 0;
    for (const auto& a : amplitudes) sum += std::norm(a) * grid.dx();
    return sum;
}

} // namespace

WaveFunction::WaveFunction(Grid grid, std::vector<std::complex<double>> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
    if (grid_.n_cells == 0 || grid_.x1 <= grid_.x0)
        raise(errc::partition_invalid, "degenerate grid");
    if (amplitudes_.size() != grid_.n_cells)
        raise(errc::partition_invalid, "amplitude count differs from cell count");
    const double mass = total_mass(grid_, amplitudes_);
    if (std::abs(mass - 1.0) > kNormTol)
        raise(errc::not_normalized, "|psi|^2 totals " + std::to_string(mass));
}

WaveFunction WaveFunction::uniform(Grid grid) {
    const double value = 1.0 / std::sqrt(grid.x1 - grid.x0);
    return WaveFunction(grid, std::vector<std::complex<double>>(grid.n_cells, value));
}

WaveFunction WaveFunction::gaussian(Grid grid, double center, double sigma) {
    if (sigma <= 0) raise(errc::partition_invalid, "sigma must be positive");
    std::vector<std::complex<double>> amps(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        const double t = (grid.center(i) - center) / (2.0 * sigma);
        amps[i] = std::exp(-t * t);
    }
    const double mass = total_mass(grid, amps);
    const double scale = 1.0 / std::sqrt(mass);
    for (auto& a : amps) a *= scale;
    return WaveFunction(grid, std::move(amps));
}

double WaveFunction::cell_mass(std::size_t i) const {
    return std::norm(amplitudes_[i]) * grid_.dx();
}

Region region_from_interval(const Grid& grid, double a, double b) {
    Region out;
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        const double x = grid.center(i);
        if (x >= a && x < b) out.insert(i);
    }
    return out;
}

double position_probability(const WaveFunction& psi, const Region& omega) {
    if (omega.empty()) raise(errc::empty_region, "omega is empty");
    double sum = 0;
    for (const auto i : omega) {
        if (i >= psi.grid().n_cells) raise(errc::empty_region, "cell index outside the grid");
        sum += psi.cell_mass(i);
    }
    return sum;
}

WaveFunction collapse_wavefunction(const WaveFunction& psi, const Region& omega) {
    const double mass = position_probability(psi, omega);
    if (mass <= 1e-12)
        raise(errc::zero_probability_region, "omega carries no probability");
    const double scale = 1.0 / std::sqrt(mass);
    std::vector<std::complex<double>> amps(psi.grid().n_cells, 0.0);
    for (const auto i : omega) amps[i] = psi.amplitudes()[i] * scale;
    return WaveFunction(psi.grid(), std::move(amps));
}

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
    if (!(a.grid() == b.grid())) raise(errc::partition_invalid, "grids differ");
    double sum = 0;
    for (std::size_t i = 0; i < a.grid().n_cells; ++i)
        sum += std::norm(a.amplitudes()[i] - b.amplitudes()[i]) * a.grid().dx();
    return std::sqrt(sum);
}

CascadeDemoReport verify_cascade_identities(const WaveFunction& psi, const Region& omega1,
                                            const Region& omega2, double tol) {
    if (tol <= 0) raise(errc::not_nested, "tolerance must be positive");
    if (!std::includes(omega1.begin(), omega1.end(), omega2.begin(), omega2.end()))
        raise(errc::not_nested, "omega2 must be contained in omega1");

    CascadeDemoReport report;
    report.tol = tol;
    report.p_direct = position_probability(psi, omega2);
    report.p_outer = position_probability(psi, omega1);

    const auto after_outer = collapse_wavefunction(psi, omega1);
    report.p_conditional = position_probability(after_outer, omega2);
    report.probability_gap = std::abs(report.p_direct - report.p_outer * report.p_conditional);
    report.probabilities_multiply = report.probability_gap <= tol;

    const auto two_step = collapse_wavefunction(after_outer, omega2);
    const auto one_step = collapse_wavefunction(psi, omega2);
    report.state_distance = l2_distance(two_step, one_step);
    report.states_match = report.state_distance <= tol;
    return report;
}

} // namespace scop
