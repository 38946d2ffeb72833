#pragma once

// Deterministic path maps X -> H -> Z -> W. Paths are right-continuous step
// functions; each stage maps values pointwise and rescales time globally.

#include <array>
#include <string>
#include <vector>

#include "alps/ladder.hpp"

namespace alps {

enum class Stage { X, H, Z, W };

std::string to_string(Stage stage);

struct TransformedPath {
  Stage stage = Stage::X;
  std::vector<double> times;   // nondecreasing; value i holds on [times[i], times[i+1])
  std::vector<double> values;
  double time_scale = 1.0;     // cumulative speed-up relative to chain steps

  std::size_t size() const { return values.size(); }
  /// Value at time t (right-continuous); t before the first time gives the first value.
  double value_at(double t) const;
};

/// Pointwise maps.
double h_transform_value(double x, const Ladder& ladder);   // sign(x) (1 + h(x)/h(betamax))
double z_transform_value(double h);                           // 2 sign(h) - h
double w_transform_value(double z, const SkewConstants& c);   // z / s(z), 0 at 0

/// Inverses. `positive_at_zero` picks the side when z = 0 (mode 1 if true).
double z_inverse_value(double z, bool positive_at_zero);
double h_inverse_value(double h, const Ladder& ladder);
double w_inverse_value(double w, const SkewConstants& c);

TransformedPath to_H(const TransformedPath& path_x, const Ladder& ladder);
TransformedPath to_Z(const TransformedPath& path_h);
TransformedPath to_W(const TransformedPath& path_z, const SkewConstants& constants);

/// W value of every (mode, rung) pair; rows indexed by mode (0 -> mode 1).
std::array<std::vector<double>, 2> w_table(const Ladder& ladder, const SkewConstants& constants);

/// Checks the stage's value domain; throws std::logic_error with the first offender.
void check_stage_domain(const TransformedPath& path, const Ladder& ladder,
                        const SkewConstants& constants);

}  // namespace alps
