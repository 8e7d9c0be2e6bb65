#pragma once

#include <string>

#include "maxte/geometry.hpp"
#include "maxte/types.hpp"

namespace maxte {

// Built-in conductivity profiles. PaperPeaks is the absolute value of the
// classic three-term peaks function, GaussBump an isotropic Gaussian of
// width 0.15, Zero the vacuum background.
enum class PhantomKind { PaperPeaks, GaussBump, Zero };

struct Phantom {
  PhantomKind kind = PhantomKind::PaperPeaks;
  double scale = 1.0;
};

double evaluate_phantom(const Phantom& ph, const Vec2& x);

RealField2D sample_phantom(const Phantom& ph, const CartesianGrid& grid);

// Exact full-plane Fourier transform of the Gaussian bump; only defined for
// GaussBump (the peaks profile has no closed form).
Complex gauss_bump_ft(const Phantom& ph, const Vec2& xi);

// Discrete H1 norm over the disk, the a-priori bound fed to the stability
// evaluators.
double phantom_h1_norm(const Phantom& ph, const CartesianGrid& grid,
                       const NodeClassification& cls);

// Accepts "paper_peaks", "gauss_bump", "zero"; ConfigError otherwise.
Phantom phantom_from_name(const std::string& name, double scale = 1.0);

inline constexpr double kGaussBumpWidth = 0.15;

}  // namespace maxte
