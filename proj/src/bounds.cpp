#include "maxte/bounds.hpp"

#include <cmath>
#include <numbers>

#include "maxte/csv.hpp"
#include "maxte/errors.hpp"

namespace maxte {

namespace {

// The regimes multiply fourth powers of 1 + k against powers of -ln eps;
// extended precision keeps the cancellation-free sums honest before the
// final rounding to double.
using LD = long double;

constexpr LD kPi = std::numbers::pi_v<LD>;

void validate(const StabilityParams& p, bool need_vol) {
  if (!(p.eps > 0.0) || !(p.eps < 1.0)) {
    throw ParamOutOfRange("eps must lie strictly between 0 and 1");
  }
  if (!(p.k >= 1.0)) {
    throw ParamOutOfRange("wavenumber must satisfy k >= 1");
  }
  if (!(p.alpha > 0.0) || !(p.alpha <= 1.0)) {
    throw ParamOutOfRange("alpha must lie in (0, 1]");
  }
  if (!(p.M1 >= 0.0)) {
    throw ParamOutOfRange("a-priori bound M1 must be nonnegative");
  }
  if (!(p.D > 0.0) || !(p.Vol2 > 0.0) || (need_vol && !(p.Vol > 0.0))) {
    throw ParamOutOfRange("geometric quantities must be positive");
  }
  if (!(p.C2 > 0.0)) {
    throw ParamOutOfRange("trace constant C2 must be positive");
  }
}

LD pow4(LD x) { return (x * x) * (x * x); }

struct Regime {
  LD E;
  int chi;
};

Regime regime_of(const StabilityParams& p) {
  const LD E = -std::log(static_cast<LD>(p.eps));
  return Regime{E, E >= static_cast<LD>(p.k) ? 1 : 0};
}

// Shared logarithmic tail: M1^2 / (1 + 2E^{2a} + 2k^{2a}) in the
// high-frequency regime, M1^2 / (1 + E^2/D^2 + 4k^2) otherwise.
LD log_tail(const StabilityParams& p, const Regime& r) {
  const LD M1 = p.M1;
  const LD k = p.k;
  if (r.chi == 0) {
    const LD two_alpha = 2.0L * static_cast<LD>(p.alpha);
    return M1 * M1 /
           (1.0L + 2.0L * std::pow(r.E, two_alpha) + 2.0L * std::pow(k, two_alpha));
  }
  const LD EoverD = r.E / static_cast<LD>(p.D);
  return M1 * M1 / (1.0L + EoverD * EoverD + 4.0L * k * k);
}

BoundBreakdown maxwell_with_coeffs(const StabilityParams& p, LD coeff_sq,
                                   LD coeff_linear) {
  const Regime r = regime_of(p);
  const LD eps = p.eps;
  const LD k = p.k;
  const LD D = p.D;

  LD term_lipschitz;
  if (r.chi == 0) {
    term_lipschitz = coeff_sq * pow4(1.0L + k) *
              std::pow(k, 3.0L * static_cast<LD>(p.alpha)) * eps * eps;
  } else {
    term_lipschitz = coeff_sq * pow4(1.0L + r.E) * (r.E * r.E * r.E) * eps * eps;
  }

  LD term_holder = 0.0L;
  if (r.chi == 1) {
    term_holder = coeff_linear * std::sqrt(1.0L + 4.0L * D * D) *
                  pow4(1.0L + r.E) * r.E * eps;
  }

  const LD term_log = log_tail(p, r);

  BoundBreakdown out;
  out.E_log = static_cast<double>(r.E);
  out.chi = r.chi;
  out.term_lipschitz = static_cast<double>(term_lipschitz);
  out.term_holder = static_cast<double>(term_holder);
  out.term_log = static_cast<double>(term_log);
  out.total = static_cast<double>(term_lipschitz + term_holder + term_log);
  return out;
}

}  // namespace

BoundBreakdown bound_maxwell(const StabilityParams& p) {
  validate(p, true);
  const LD Vol = p.Vol;
  const LD Vol2 = p.Vol2;
  const LD coeff_sq = (4.0L / (3.0L * kPi * kPi)) * Vol * Vol;
  const LD coeff_linear =
      (1.0L / (4.0L * kPi * kPi)) * Vol2 * Vol2 / static_cast<LD>(p.D);
  return maxwell_with_coeffs(p, coeff_sq, coeff_linear);
}

BoundBreakdown bound_maxwell_ball(const StabilityParams& p) {
  validate(p, false);
  const LD D = p.D;
  const LD D3 = D * D * D;
  // Vol = pi D^3/6 and Vol2 = pi D^2/4 collapse the prefactors to D^6/27
  // and D^3/64; evaluated directly so the substitution identity has an
  // independent route.
  return maxwell_with_coeffs(p, D3 * D3 / 27.0L, D3 / 64.0L);
}

BoundBreakdown bound_te(const StabilityParams& p, bool corollary) {
  validate(p, false);
  const Regime r = regime_of(p);
  const LD eps = p.eps;
  const LD k = p.k;
  const LD C2 = corollary ? 1.0L : static_cast<LD>(p.C2);
  const LD C24 = pow4(C2);
  const LD Vol2 = p.Vol2;

  LD term_lipschitz;
  if (r.chi == 0) {
    term_lipschitz = (1.0L / kPi) * C24 * Vol2 * Vol2 * pow4(1.0L + k) *
              std::pow(k, 2.0L * static_cast<LD>(p.alpha)) * eps * eps;
  } else {
    term_lipschitz = (1.0L / kPi) * C24 * Vol2 * Vol2 * pow4(1.0L + r.E) *
              (r.E * r.E) * eps * eps;
  }

  LD term_holder = 0.0L;
  if (r.chi == 1) {
    term_holder = (1.0L / (4.0L * kPi)) * C24 * static_cast<LD>(p.D) *
                  static_cast<LD>(p.D) * pow4(1.0L + r.E) * eps;
  }

  const LD term_log = log_tail(p, r);

  BoundBreakdown out;
  out.E_log = static_cast<double>(r.E);
  out.chi = r.chi;
  out.term_lipschitz = static_cast<double>(term_lipschitz);
  out.term_holder = static_cast<double>(term_holder);
  out.term_log = static_cast<double>(term_log);
  out.total = static_cast<double>(term_lipschitz + term_holder + term_log);
  return out;
}

void write_csv(std::ostream& os, const std::vector<StabilityParams>& params,
               const std::vector<BoundBreakdown>& rows) {
  os << "eps,k,alpha,chi,term1,term2,term3,total\n";
  const std::size_t n = std::min(params.size(), rows.size());
  for (std::size_t i = 0; i < n; ++i) {
    csv_row(os, params[i].eps, params[i].k, params[i].alpha, rows[i].chi,
            rows[i].term_lipschitz, rows[i].term_holder, rows[i].term_log,
            rows[i].total);
  }
}

}  // namespace maxte
