#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fewbody {

struct Axis {
  std::string name;
  std::vector<double> samples;  // strictly increasing
};

// A sampled probability density on a rectilinear grid. Values are stored
// row-major with the last axis varying fastest. `norm` records the factor
// the stored values have already been divided by (1 for raw samples).
class PdfGrid {
 public:
  PdfGrid(std::vector<Axis> axes, std::vector<double> values, double norm = 1.0);

  const std::vector<Axis>& axes() const noexcept { return axes_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double norm() const noexcept { return norm_; }
  std::size_t rank() const noexcept { return axes_.size(); }
  std::vector<std::size_t> shape() const;

  double at(std::span<const std::size_t> index) const;

  // Trapezoidal integral over every axis.
  double integral() const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> values_;
  double norm_;
};

// Scales the grid to unit trapezoidal integral. Throws PhysicsError
// ("degenerate PDF") when the integral vanishes.
PdfGrid normalize(const PdfGrid& grid);

double trapezoid(std::span<const double> x, std::span<const double> y);

std::vector<double> linspace(double start, double stop, std::size_t count);
std::vector<double> logspace(double start, double stop, std::size_t count);

}  // namespace fewbody
