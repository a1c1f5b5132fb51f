#include "fewbody/pdf_grid.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "fewbody/error.hpp"

namespace fewbody {

PdfGrid::PdfGrid(std::vector<Axis> axes, std::vector<double> values, double norm)
    : axes_(std::move(axes)), values_(std::move(values)), norm_(norm) {
  if (axes_.empty()) throw std::invalid_argument("PdfGrid needs at least one axis");
  std::size_t expected = 1;
  for (const auto& axis : axes_) {
    if (axis.samples.size() < 2)
      throw std::invalid_argument("axis '" + axis.name + "' needs at least 2 samples");
    for (std::size_t i = 1; i < axis.samples.size(); ++i) {
      if (!(axis.samples[i] > axis.samples[i - 1]))
        throw std::invalid_argument("axis '" + axis.name + "' must be strictly increasing");
    }
    expected *= axis.samples.size();
  }
  if (values_.size() != expected)
    throw std::invalid_argument("PdfGrid value count does not match axis shape");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("PdfGrid values must be finite");
    if (v < 0.0) throw std::invalid_argument("PdfGrid values must be non-negative");
  }
  if (!(norm_ > 0.0) || !std::isfinite(norm_))
    throw std::invalid_argument("PdfGrid norm must be positive");
}

std::vector<std::size_t> PdfGrid::shape() const {
  std::vector<std::size_t> out;
  out.reserve(axes_.size());
  for (const auto& axis : axes_) out.push_back(axis.samples.size());
  return out;
}

double PdfGrid::at(std::span<const std::size_t> index) const {
  if (index.size() != axes_.size()) throw std::out_of_range("PdfGrid index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    if (index[d] >= axes_[d].samples.size()) throw std::out_of_range("PdfGrid index");
    flat = flat * axes_[d].samples.size() + index[d];
  }
  return values_[flat];
}

double PdfGrid::integral() const {
  // Contract the last axis repeatedly until a scalar remains.
  std::vector<double> current = values_;
  for (std::size_t d = axes_.size(); d-- > 0;) {
    const auto& x = axes_[d].samples;
    const std::size_t n = x.size();
    const std::size_t outer = current.size() / n;
    std::vector<double> next(outer);
    for (std::size_t o = 0; o < outer; ++o)
      next[o] = trapezoid(x, std::span<const double>(current.data() + o * n, n));
    current = std::move(next);
  }
  return current.front();
}

PdfGrid normalize(const PdfGrid& grid) {
  const double total = grid.integral();
  if (!(total > 0.0) || !std::isfinite(total)) throw PhysicsError("degenerate PDF");
  std::vector<double> scaled(grid.values());
  for (double& v : scaled) v /= total;
  return PdfGrid(grid.axes(), std::move(scaled), grid.norm() * total);
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count < 2) throw std::invalid_argument("linspace needs at least 2 points");
  std::vector<double> out(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
  out.back() = stop;
  return out;
}

std::vector<double> logspace(double start, double stop, std::size_t count) {
  if (!(start > 0.0) || !(stop > 0.0)) throw std::invalid_argument("logspace needs positive bounds");
  auto exponents = linspace(std::log(start), std::log(stop), count);
  for (double& e : exponents) e = std::exp(e);
  exponents.front() = start;
  exponents.back() = stop;
  return exponents;
}

}  // namespace fewbody
