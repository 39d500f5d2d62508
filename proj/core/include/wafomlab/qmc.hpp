#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wafomlab/netgen.hpp"

namespace wafomlab {

/// Integrand on [0,1)^s with a closed-form integral and closed-form averages
/// over base-b grid cells. The cell average makes discretized quadrature exact,
/// with no numerical-integration noise.
struct TestFunction {
    std::string name;
    std::uint32_t dimension = 1;
    std::function<double(std::span<const double>)> evaluate;
    double exact_integral = 0;
    /// Mean of `evaluate` over the cell keyed by a digit matrix (base and
    /// precision are carried by the matrix itself).
    std::function<double(const DigitMatrix&)> cube_average;
    /// sup over coordinates j and the cube of |df/dx_j|, when known analytically.
    std::optional<double> gradient_bound;
};

/// Built-in separable integrands.
TestFunction prod_linear(std::uint32_t s);                    // prod x_j,  I = 2^-s
TestFunction prod_exp(std::uint32_t s);                       // prod e^x_j, I = (e-1)^s
TestFunction prod_centered(std::uint32_t s, double gamma);    // prod 1+g(x_j-1/2), I = 1
TestFunction prod_quadratic(std::uint32_t s);                 // prod x_j^2, I = 3^-s
/// Factory by name; gamma applies to prod_centered only.
TestFunction make_test_function(const std::string& name, std::uint32_t s, double gamma = 1.0);
std::vector<std::string> test_function_names();

/// Piecewise-constant integrand given by one value per cell of the grid.
TestFunction step_function(const MatrixSpace& space, std::vector<double> values,
                           std::string name = "step");

/// Point of [0,1)^s attached to a digit matrix over a cyclic group:
/// coordinate i is sum_j b_ij b^-j; `centered` shifts by half a cell.
std::vector<double> point_of(const DigitMatrix& b_matrix, bool centered);

/// Per-row Walsh indices: phi_i = sum_j a_ij b^{j-1} (all below b^n).
std::vector<std::uint64_t> phi(const DigitMatrix& a);

/// k-th base-b Walsh function at x: omega_b^(kappa_0 x_1 + kappa_1 x_2 + ...),
/// where kappa are the base-b digits of k and x_j the base-b digits of x
/// (taken from the nearest representable b-adic rational).
std::complex<double> walsh(std::uint64_t k, std::uint64_t b, double x);

/// Product of one-dimensional Walsh functions.
std::complex<double> walsh_multi(std::span<const std::uint64_t> k, std::uint64_t b,
                                 std::span<const double> x);

struct QmcResult {
    double i_pn = 0;             // discretized quadrature: mean of cell averages
    double i_center = 0;         // plain quadrature at cell centers
    double exact = 0;
    double err_discretized = 0;  // |i_pn - exact|
    double err_center = 0;       // |i_center - exact|
    double wafom = 0;
};

/// Runs both quadratures of `f` over the point group (cyclic groups only) and
/// attaches the group's fast WAFOM value.
QmcResult discretized_qmc(const PointGroup& group, const TestFunction& f,
                          unsigned threads = 1);

struct WalshCheck {
    std::complex<double> lhs; // conj Walsh coefficient of the discretized step function
    std::complex<double> rhs; // Fourier coefficient of the cell-average table at A
};

/// Computes both sides of the Walsh/Fourier coefficient identity at character A.
WalshCheck walsh_coefficient_check(const TestFunction& f, const MatrixSpace& space,
                                   const DigitMatrix& a);

} // namespace wafomlab
