#include "maxte/phantom.hpp"

#include <cmath>
#include <numbers>

#include "maxte/errors.hpp"

namespace maxte {

namespace {

double peaks_signed(double x1, double x2) {
  const double a = 3.0 * (1.0 - x1) * (1.0 - x1) *
                   std::exp(-x1 * x1 - (x2 + 1.0) * (x2 + 1.0));
  const double b = (2.0 * x1 - 10.0 * x1 * x1 * x1 - 10.0 * std::pow(x2, 5)) *
                   std::exp(-x1 * x1 - x2 * x2);
  const double c =
      (1.0 / 3.0) * std::exp(-(x1 + 1.0) * (x1 + 1.0) - x2 * x2);
  return a - b - c;
}

}  // namespace

double evaluate_phantom(const Phantom& ph, const Vec2& x) {
  switch (ph.kind) {
    case PhantomKind::PaperPeaks:
      return ph.scale * std::abs(peaks_signed(x(0), x(1)));
    case PhantomKind::GaussBump:
      return ph.scale *
             std::exp(-x.squaredNorm() / (2.0 * kGaussBumpWidth * kGaussBumpWidth));
    case PhantomKind::Zero:
      return 0.0;
  }
  return 0.0;
}

RealField2D sample_phantom(const Phantom& ph, const CartesianGrid& grid) {
  RealField2D f;
  f.grid = grid;
  f.values.resize(grid.num_nodes());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      f.values[grid.node(i, j)] = evaluate_phantom(ph, grid.point(i, j));
    }
  }
  return f;
}

Complex gauss_bump_ft(const Phantom& ph, const Vec2& xi) {
  if (ph.kind != PhantomKind::GaussBump) {
    throw ParamOutOfRange("closed-form transform exists only for the bump");
  }
  const double s2 = kGaussBumpWidth * kGaussBumpWidth;
  // Gaussian integral under the (2 pi)^-1 transform convention:
  // scale * s^2 exp(-s^2 |xi|^2 / 2).
  return Complex(ph.scale * s2 * std::exp(-0.5 * s2 * xi.squaredNorm()), 0.0);
}

double phantom_h1_norm(const Phantom& ph, const CartesianGrid& grid,
                       const NodeClassification& cls) {
  const RealField2D f = sample_phantom(ph, grid);
  const double hx = grid.hx();
  const double hy = grid.hy();
  double acc = 0.0;
  for (int j = 1; j < grid.ny - 1; ++j) {
    for (int i = 1; i < grid.nx - 1; ++i) {
      const int n = grid.node(i, j);
      if (cls.labels[n] == NodeLabel::Exterior) continue;
      const double v = f.values[n];
      const double dx =
          (f.values[grid.node(i + 1, j)] - f.values[grid.node(i - 1, j)]) /
          (2.0 * hx);
      const double dy =
          (f.values[grid.node(i, j + 1)] - f.values[grid.node(i, j - 1)]) /
          (2.0 * hy);
      acc += (v * v + dx * dx + dy * dy) * hx * hy;
    }
  }
  return std::sqrt(acc);
}

Phantom phantom_from_name(const std::string& name, double scale) {
  if (name == "paper_peaks") return Phantom{PhantomKind::PaperPeaks, scale};
  if (name == "gauss_bump") return Phantom{PhantomKind::GaussBump, scale};
  if (name == "zero") return Phantom{PhantomKind::Zero, scale};
  throw ConfigError("unknown phantom '" + name +
                    "' (expected paper_peaks, gauss_bump or zero)");
}

}  // namespace maxte
