#pragma once

#include "maxte/bounds.hpp"

namespace acceptance {

// Recomputation of one stability estimate by code that shares nothing with
// the library implementation. Field meanings match BoundBreakdown.
struct OracleBreakdown {
  int chi = 0;
  double term_lipschitz = 0.0;
  double term_holder = 0.0;
  double term_log = 0.0;
  double total = 0.0;
};

OracleBreakdown oracle_maxwell(const maxte::StabilityParams& p);
OracleBreakdown oracle_maxwell_ball(const maxte::StabilityParams& p);
OracleBreakdown oracle_te(const maxte::StabilityParams& p, bool corollary);

// Describes the arithmetic the oracle runs on.
const char* oracle_backend();

}  // namespace acceptance
