#pragma once

#include <span>
#include <vector>

#include "tms/gibbs.hpp"

namespace tms {

// (Q_q)_{ij} = A_{ij} Q_{ij}^q.
Matrix q_power(const GibbsChain& chain, double q);

// beta(q) = log of the Perron root of Q_q.
double pressure(const GibbsChain& chain, double q);

// beta'(q) = p (Q_q o log Q) v / (lambda p.v) from the Perron vectors of Q_q.
double pressure_derivative(const GibbsChain& chain, double q);

struct SpectrumPoint {
  double q = 0.0;
  double alpha = 0.0;    // -beta'(q), nats per symbol
  double entropy = 0.0;  // beta(q) + q alpha, nats
};

SpectrumPoint spectrum_point(const GibbsChain& chain, double q);

struct SpectrumCurve {
  std::vector<SpectrumPoint> samples;
};

// `steps` evenly spaced values from q_min to q_max inclusive.
std::vector<double> q_grid(double q_min, double q_max, int steps);

// Grid points q = -3, -2.75, ..., 3.
std::vector<double> default_q_grid();

// Evaluates the curve on q_grid(q_min, q_max, steps), in parallel over q.
// Throws NumericalError if a sample leaves [0, log lambda_A] or alpha increases.
SpectrumCurve spectrum_curve(const GibbsChain& chain, double q_min, double q_max, int steps);

// Coefficients of det(zI - M), highest degree first (see faddeev_leverrier).
std::vector<double> char_poly(const Matrix& m);

struct FamilyComparison {
  bool equal = true;
  // Largest coefficient deviation relative to max(1, |c|) over the grid.
  double max_deviation = 0.0;
  double worst_q = 0.0;
};

// Compares det(zI - Q1_q) and det(zI - Q2_q) coefficientwise at each grid
// point, in parallel over q. Equal alphabet sizes required.
FamilyComparison char_poly_family_equal(const GibbsChain& first, const GibbsChain& second,
                                        std::span<const double> grid, double tol);

// Serial reference implementations of the parallel kernels above.
namespace serial {

SpectrumCurve spectrum_curve(const GibbsChain& chain, double q_min, double q_max, int steps);
FamilyComparison char_poly_family_equal(const GibbsChain& first, const GibbsChain& second,
                                        std::span<const double> grid, double tol);

}  // namespace serial

}  // namespace tms
