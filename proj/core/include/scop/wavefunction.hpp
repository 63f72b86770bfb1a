#pragma once

#include <complex>
#include <cstddef>
#include <set>
#include <vector>

namespace scop {

struct Grid {
    double x0 = 0.0;
    double x1 = 1.0;
    std::size_t n_cells = 0;
    double dx() const { return (x1 - x0) / static_cast<double>(n_cells); }
    double center(std::size_t i) const { return x0 + (static_cast<double>(i) + 0.5) * dx(); }
    bool operator==(const Grid&) const = default;
};

// A cell-index subset of the grid.
using Region = std::set<std::size_t>;

// L2-normalized complex amplitudes on a uniform 1-D grid:
// sum_i |psi_i|^2 dx = 1 within 1e-12.
class WaveFunction {
public:
    WaveFunction(Grid grid, std::vector<std::complex<double>> amplitudes);

    static WaveFunction uniform(Grid grid);
    static WaveFunction gaussian(Grid grid, double center, double sigma);

    const Grid& grid() const { return grid_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }

    // |psi_i|^2 dx of one cell.
    double cell_mass(std::size_t i) const;

private:
    Grid grid_;
    std::vector<std::complex<double>> amplitudes_;
};

// Cells whose centers lie in [a, b).
Region region_from_interval(const Grid& grid, double a, double b);

// Probability to find the position inside omega. Throws errc::empty_region.
double position_probability(const WaveFunction& psi, const Region& omega);

// Projection onto omega, renormalized. Requires the region to carry more
// than 1e-12 probability (errc::zero_probability_region); afterwards,
// position_probability(result, omega) = 1 within 1e-12.
WaveFunction collapse_wavefunction(const WaveFunction& psi, const Region& omega);

double l2_distance(const WaveFunction& a, const WaveFunction& b);

struct CascadeDemoReport {
    double p_direct = 0;      // probability of omega2 measured directly
    double p_outer = 0;       // probability of omega1
    double p_conditional = 0; // probability of omega2 after collapsing to omega1
    double probability_gap = 0;
    double state_distance = 0; // L2 distance of the two collapse routes
    double tol = 0;
    bool probabilities_multiply = false;
    bool states_match = false;
    bool ok() const { return probabilities_multiply && states_match; }
};

// Checks, for nested regions omega2 within omega1 (errc::not_nested):
//   P(omega2) = P(omega1) * P(omega2 | collapsed to omega1)  within tol
//   collapse(collapse(psi, omega1), omega2) = collapse(psi, omega2)
// the second in L2 distance within tol.
CascadeDemoReport verify_cascade_identities(const WaveFunction& psi, const Region& omega1,
                                            const Region& omega2, double tol);

} // namespace scop
