#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "walshdecay/basekit.hpp"
#include "walshdecay/walsh.hpp"

namespace walshdecay {

/// Gauss-Legendre nodes and weights on [-1,1]; exact for polynomials of
/// degree <= 2*order - 1.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int order);

/// int_a^b f with a single Gauss-Legendre rule mapped to [a,b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int order);

/// int_0^1 f with a composite rule over base^level uniform cells.
double integrate_composite(const std::function<double(double)>& f, int base, int level, int order);

/// A corpus function: evaluator, analytic derivative evaluators, and optional
/// power-series data sum_r f_r x^r.
struct FunctionSpec {
  std::string name;
  std::map<std::string, double> params;
  std::function<double(double)> f;
  /// derivatives[s] = f^(s); derivatives[0], when present, must agree with f.
  std::vector<std::function<double(double)>> derivatives;

  bool has_series = false;
  std::function<double(int)> series_coeff;      // f_r
  std::function<double(int)> series_tail_abs;   // upper bound on sum_{r>R} |f_r|

  bool has_derivative(int s) const {
    return s >= 0 && s < static_cast<int>(derivatives.size()) &&
           static_cast<bool>(derivatives[static_cast<std::size_t>(s)]);
  }
  double eval_derivative(int s, double x) const;
};

/// One computed Walsh coefficient with its provenance.
struct CoefficientRecord {
  enum class Method { oracle, recursion, series };
  IndexDecomposition k;
  Complex value;
  Method method = Method::oracle;
  double error_estimate = 0.0;
};

/// hat{f}(k) = int_0^1 f conj(wal_k) by cellwise Gauss-Legendre quadrature at
/// resolution base^max(a_1, min_level); conj(wal_k) is constant per cell.
/// Exact (to roundoff) for polynomial f of degree <= 2*quad_order - 1.
CoefficientRecord walsh_coeff(const FunctionSpec& f, const IndexDecomposition& k,
                              int quad_order = 8, int min_level = 4);

/// All coefficients hat{f}(k), 0 <= k < base^level, from one fast transform of
/// the exact per-cell Gauss-Legendre integrals. Entry k equals walsh_coeff at
/// the same resolution.
std::vector<Complex> walsh_coeff_sweep(const FunctionSpec& f, int base, int level,
                                       int quad_order = 8);

/// Double coefficient int int g(x,y) conj(wal_k(x)) wal_l(y) dx dy by
/// tensor-product cell quadrature. Cells crossing the diagonal x = y are split
/// into two triangles (Duffy map) when diagonal_kink is set, so kernels with a
/// derivative jump at x = y are integrated at full order.
Complex walsh_coeff_2d(const std::function<double(double, double)>& g,
                       const IndexDecomposition& k, const IndexDecomposition& l,
                       int quad_order = 8, int min_level = 2, bool diagonal_kink = true);

/// All double coefficients for k,l < base^level via row/column fast transforms
/// of the cell-integral matrix.
std::vector<std::vector<Complex>> walsh_coeff_2d_sweep(
    const std::function<double(double, double)>& g, int base, int level,
    int quad_order = 8, bool diagonal_kink = true);

/// Certified lower estimate of the fractional variation V_lambda(f): the
/// partition sum maximized over nested uniform base-adic partitions of sizes
/// base^1..base^depth. For lambda = 1 with an analytic derivative available
/// it returns the quadrature of int |f'| instead.
double fractional_variation(const FunctionSpec& f, double lambda, int depth, int base = 2);

/// F_r with F_r(x) = int_0^1 f(t) (x-t)_+^(r-1)/(r-1)! dt, as an evaluable
/// FunctionSpec whose derivatives chain down to f itself.
FunctionSpec iterated_antiderivative(const FunctionSpec& f, int r);

}  // namespace walshdecay
