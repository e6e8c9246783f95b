#include "walshdecay/oracle.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace walshdecay {

namespace {

std::uint64_t upow(int base, int e) {
  std::uint64_t p = 1;
  for (int i = 0; i < e; ++i) p *= static_cast<std::uint64_t>(base);
  return p;
}

GaussLegendreRule build_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration on P_n from the Chebyshev initial guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::mutex mtx;
  static std::unordered_map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_gauss_legendre(order)).first;
  return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int order) {
  const auto& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

double integrate_composite(const std::function<double(double)>& f, int base, int level, int order) {
  const std::uint64_t n = upow(base, level);
  const double h = 1.0 / static_cast<double>(n);
  double acc = 0.0;
  for (std::uint64_t j = 0; j < n; ++j)
    acc += integrate_gl(f, static_cast<double>(j) * h, static_cast<double>(j + 1) * h, order);
  return acc;
}

double FunctionSpec::eval_derivative(int s, double x) const {
  if (s == 0 && derivatives.empty()) return f(x);
  if (!has_derivative(s)) throw std::invalid_argument("FunctionSpec: derivative order not available");
  return derivatives[static_cast<std::size_t>(s)](x);
}

namespace {

// Exact-per-cell integrals of f over the uniform partition into base^level cells.
std::vector<double> cell_integrals(const std::function<double(double)>& f, int base,
                                   int level, int order) {
  const std::uint64_t n = upow(base, level);
  const auto& rule = gauss_legendre(order);
  const double h = 1.0 / static_cast<double>(n);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (std::uint64_t j = 0; j < n; ++j) {
    const double a = static_cast<double>(j) * h;
    const double mid = a + 0.5 * h;
    const double half = 0.5 * h;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    const double v = acc * half;
    if (!std::isfinite(v)) throw std::runtime_error("walsh_coeff: non-finite function value");
    out[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

Complex coeff_from_cells(const std::vector<double>& cells, const IndexDecomposition& k,
                         int level) {
  std::complex<long double> acc = 0.0L;
  for (std::uint64_t j = 0; j < cells.size(); ++j) {
    const Complex w = std::conj(wal_at_cell(k, j, level));
    acc += std::complex<long double>(w.real(), w.imag()) *
           static_cast<long double>(cells[static_cast<std::size_t>(j)]);
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

}  // namespace

CoefficientRecord walsh_coeff(const FunctionSpec& f, const IndexDecomposition& k,
                              int quad_order, int min_level) {
  if (quad_order < 2) throw std::invalid_argument("walsh_coeff: quad_order must be >= 2");
  const int b = k.base();
  int level = std::max(k.leading_position(), min_level);
  if (upow(b, level) > (1u << 26)) throw std::invalid_argument("walsh_coeff: resolution too large");
  const auto cells = cell_integrals(f.f, b, level, quad_order);
  const Complex value = coeff_from_cells(cells, k, level);
  // error estimate from a higher-order pass on the same partition
  const auto cells_hi = cell_integrals(f.f, b, level, quad_order + 2);
  const Complex value_hi = coeff_from_cells(cells_hi, k, level);
  CoefficientRecord rec;
  rec.k = k;
  rec.value = value_hi;
  rec.method = CoefficientRecord::Method::oracle;
  rec.error_estimate = std::abs(value_hi - value);
  return rec;
}

std::vector<Complex> walsh_coeff_sweep(const FunctionSpec& f, int base, int level,
                                       int quad_order) {
  if (quad_order < 2) throw std::invalid_argument("walsh_coeff_sweep: quad_order must be >= 2");
  const auto cells = cell_integrals(f.f, base, level, quad_order);
  SampleGrid grid{base, level, {}};
  grid.values.reserve(cells.size());
  const auto n = static_cast<double>(cells.size());
  for (double c : cells) grid.values.emplace_back(c * n, 0.0);
  return fwt(grid, TransformDirection::forward).values;
}

namespace {

// Cell integrals of g over the tensor partition; diagonal cells split into
// the x > y and x < y triangles through the Duffy map (Jacobian h^2 u).
double cell_integral_2d(const std::function<double(double, double)>& g, double x0,
                        double y0, double h, int order, bool split_diagonal) {
  const auto& rule = gauss_legendre(order);
  const std::size_t n = rule.nodes.size();
  double acc = 0.0;
  if (!split_diagonal) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = x0 + 0.5 * h * (1.0 + rule.nodes[i]);
      for (std::size_t j = 0; j < n; ++j) {
        const double y = y0 + 0.5 * h * (1.0 + rule.nodes[j]);
        acc += rule.weights[i] * rule.weights[j] * g(x, y);
      }
    }
    return acc * 0.25 * h * h;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double u = 0.5 * (1.0 + rule.nodes[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = 0.5 * (1.0 + rule.nodes[j]);
      const double w = rule.weights[i] * rule.weights[j] * u;
      // lower triangle x >= y, then its mirror
      acc += w * g(x0 + h * u, y0 + h * u * v);
      acc += w * g(x0 + h * u * v, y0 + h * u);
    }
  }
  return acc * 0.25 * h * h;
}

std::vector<std::vector<double>> cell_integrals_2d(
    const std::function<double(double, double)>& g, int base, int level, int order,
    bool diagonal_kink) {
  const std::uint64_t n = upow(base, level);
  const double h = 1.0 / static_cast<double>(n);
  std::vector<std::vector<double>> cells(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(n)));
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = 0; j < n; ++j) {
      const double v = cell_integral_2d(g, static_cast<double>(i) * h,
                                        static_cast<double>(j) * h, h, order,
                                        diagonal_kink && i == j);
      if (!std::isfinite(v)) throw std::runtime_error("walsh_coeff_2d: non-finite value");
      cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  }
  return cells;
}

}  // namespace

Complex walsh_coeff_2d(const std::function<double(double, double)>& g,
                       const IndexDecomposition& k, const IndexDecomposition& l,
                       int quad_order, int min_level, bool diagonal_kink) {
  if (k.base() != l.base()) throw std::invalid_argument("walsh_coeff_2d: mixed bases");
  const int b = k.base();
  const int level = std::max({k.leading_position(), l.leading_position(), min_level});
  if (upow(b, level) > (1u << 13)) throw std::invalid_argument("walsh_coeff_2d: resolution too large");
  const auto cells = cell_integrals_2d(g, b, level, quad_order, diagonal_kink);
  const std::uint64_t n = upow(b, level);
  std::complex<long double> acc = 0.0L;
  for (std::uint64_t i = 0; i < n; ++i) {
    const Complex wx = std::conj(wal_at_cell(k, i, level));
    for (std::uint64_t j = 0; j < n; ++j) {
      const Complex wy = wal_at_cell(l, j, level);
      const Complex t = wx * wy * cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      acc += std::complex<long double>(t.real(), t.imag());
    }
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::vector<std::vector<Complex>> walsh_coeff_2d_sweep(
    const std::function<double(double, double)>& g, int base, int level, int quad_order,
    bool diagonal_kink) {
  const auto cells = cell_integrals_2d(g, base, level, quad_order, diagonal_kink);
  const std::uint64_t n = upow(base, level);
  const auto nd = static_cast<double>(n);
  // rows: t[i][l] = sum_j cells[i][j] wal_l(j/N) = N conj(fwd(conj(row)))[l]
  std::vector<std::vector<Complex>> rows(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < n; ++i) {
    SampleGrid grid{base, level, {}};
    grid.values.reserve(static_cast<std::size_t>(n));
    for (double c : cells[static_cast<std::size_t>(i)]) grid.values.emplace_back(c, 0.0);
    auto t = fwt(grid, TransformDirection::forward).values;
    for (auto& z : t) z = nd * std::conj(z);
    rows[static_cast<std::size_t>(i)] = std::move(t);
  }
  // columns: out[k][l] = sum_i conj(wal_k(i/N)) rows[i][l] = N fwd(col)[k]
  std::vector<std::vector<Complex>> out(static_cast<std::size_t>(n),
                                        std::vector<Complex>(static_cast<std::size_t>(n)));
  for (std::uint64_t l = 0; l < n; ++l) {
    SampleGrid col{base, level, std::vector<Complex>(static_cast<std::size_t>(n))};
    for (std::uint64_t i = 0; i < n; ++i)
      col.values[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
    const auto t = fwt(col, TransformDirection::forward).values;
    for (std::uint64_t k = 0; k < n; ++k)
      out[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = nd * t[static_cast<std::size_t>(k)];
  }
  return out;
}

double fractional_variation(const FunctionSpec& f, double lambda, int depth, int base) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw std::domain_error("fractional_variation: lambda outside (0,1]");
  if (depth < 1) throw std::invalid_argument("fractional_variation: depth must be >= 1");
  if (lambda == 1.0 && f.has_derivative(1)) {
    const auto& d1 = f.derivatives[1];
    return integrate_composite([&](double x) { return std::abs(d1(x)); }, 2, 10, 8);
  }
  double best = 0.0;
  for (int d = 1; d <= depth; ++d) {
    const std::uint64_t n = upow(base, d);
    const double h = 1.0 / static_cast<double>(n);
    const double hfac = std::pow(h, 1.0 - lambda);
    double sum = 0.0;
    double prev = f.f(0.0);
    for (std::uint64_t i = 1; i <= n; ++i) {
      const double cur = f.f(static_cast<double>(i) * h);
      sum += hfac * std::abs(cur - prev);
      prev = cur;
    }
    best = std::max(best, sum);
  }
  return best;
}

FunctionSpec iterated_antiderivative(const FunctionSpec& f, int r) {
  if (r < 1) throw std::invalid_argument("iterated_antiderivative: r must be >= 1");
  FunctionSpec out;
  out.name = "F" + std::to_string(r) + "(" + f.name + ")";
  out.params = f.params;
  auto base_eval = f.f;
  auto kernel_eval = [base_eval](int m, double x) -> double {
    // F_m(x) = int_0^x f(t) (x-t)^(m-1)/(m-1)! dt
    if (m == 0) return base_eval(x);
    if (x == 0.0) return 0.0;
    double fact = 1.0;
    for (int i = 2; i < m; ++i) fact *= i;
    auto integrand = [&](double t) {
      return base_eval(t) * std::pow(x - t, m - 1) / fact;
    };
    const int cells = 8;
    double acc = 0.0;
    for (int c = 0; c < cells; ++c)
      acc += integrate_gl(integrand, x * c / cells, x * (c + 1) / cells, 12);
    return acc;
  };
  out.f = [kernel_eval, r](double x) { return kernel_eval(r, x); };
  out.derivatives.resize(static_cast<std::size_t>(r) + 1);
  for (int s = 0; s <= r; ++s)
    out.derivatives[static_cast<std::size_t>(s)] = [kernel_eval, r, s](double x) {
      return kernel_eval(r - s, x);
    };
  return out;
}

}  // namespace walshdecay
