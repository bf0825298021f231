#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace iqsp {

using cxd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Verification grids default to 1001 uniform points; tests may tighten via
// IQSP_GRID_POINTS.
inline constexpr int kDefaultGridPoints = 1001;
int grid_points();

// Error taxonomy. Every failure mode named in the module contracts maps to
// one of these so callers (and the CLI exit-code logic) can tell them apart.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct symmetry_violation : domain_error {
    using domain_error::domain_error;
};
struct precondition_error : domain_error {
    using domain_error::domain_error;
};
struct unsupported_size : domain_error {
    using domain_error::domain_error;
};
struct promise_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct construction_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct postselection_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct simulation_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct solver_failure : std::runtime_error {
    double best_residual;
    explicit solver_failure(const std::string& what, double residual)
        : std::runtime_error(what), best_residual(residual) {}
};

}  // namespace iqsp
