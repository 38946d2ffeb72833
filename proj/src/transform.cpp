#include "alps/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alps {

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::X: return "X";
    case Stage::H: return "H";
    case Stage::Z: return "Z";
    case Stage::W: return "W";
  }
  return "?";
}

double TransformedPath::value_at(double t) const {
  if (values.empty()) throw std::logic_error("empty path");
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return values.front();
  return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

namespace {

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

TransformedPath map_values(const TransformedPath& in, Stage stage, auto&& fn) {
  TransformedPath out;
  out.stage = stage;
  out.times = in.times;
  out.time_scale = in.time_scale;
  out.values.reserve(in.values.size());
  for (double v : in.values) out.values.push_back(fn(v));
  return out;
}

}  // namespace

double h_transform_value(double x, const Ladder& ladder) {
  if (std::abs(x) < 1.0) throw std::domain_error("stage-X value inside (-1, 1)");
  const double hmax = ladder.h_max();
  if (!(hmax > 0.0)) throw std::domain_error("H transform needs betamax > 1");
  return sign_of(x) * (1.0 + ladder.spacing.h(x) / hmax);
}

double z_transform_value(double h) { return 2.0 * sign_of(h) - h; }

double w_transform_value(double z, const SkewConstants& c) {
  if (z > 0.0) return z / c.s1;
  if (z < 0.0) return z / c.s2;
  return 0.0;
}

double z_inverse_value(double z, bool positive_at_zero) {
  const double s = z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : (positive_at_zero ? 1.0 : -1.0));
  return 2.0 * s - z;
}

double h_inverse_value(double h, const Ladder& ladder) {
  const double s = sign_of(h);
  const double mag = (std::abs(h) - 1.0) * ladder.h_max();
  return s * ladder.spacing.h_inverse(std::max(mag, 0.0));
}

double w_inverse_value(double w, const SkewConstants& c) {
  if (w > 0.0) return w * c.s1;
  if (w < 0.0) return w * c.s2;
  return 0.0;
}

TransformedPath to_H(const TransformedPath& path_x, const Ladder& ladder) {
  if (path_x.stage != Stage::X) throw std::invalid_argument("to_H expects a stage-X path");
  const double hmax = ladder.h_max();
  const double speedup = hmax * hmax;
  auto out = map_values(path_x, Stage::H, [&](double x) { return h_transform_value(x, ladder); });
  for (double& t : out.times) t /= speedup;
  out.time_scale *= speedup;
  return out;
}

TransformedPath to_Z(const TransformedPath& path_h) {
  if (path_h.stage != Stage::H) throw std::invalid_argument("to_Z expects a stage-H path");
  return map_values(path_h, Stage::Z, [](double h) { return z_transform_value(h); });
}

TransformedPath to_W(const TransformedPath& path_z, const SkewConstants& constants) {
  if (path_z.stage != Stage::Z) throw std::invalid_argument("to_W expects a stage-Z path");
  return map_values(path_z, Stage::W, [&](double z) { return w_transform_value(z, constants); });
}

std::array<std::vector<double>, 2> w_table(const Ladder& ladder, const SkewConstants& constants) {
  std::array<std::vector<double>, 2> table;
  for (int mode = 0; mode < 2; ++mode) {
    table[mode].reserve(ladder.betas.size());
    for (double beta : ladder.betas) {
      const double x = mode == 0 ? beta : -beta;
      table[mode].push_back(
          w_transform_value(z_transform_value(h_transform_value(x, ladder)), constants));
    }
    // The top rung is the junction for both modes.
    table[mode].back() = 0.0;
  }
  return table;
}

void check_stage_domain(const TransformedPath& path, const Ladder& ladder,
                        const SkewConstants& constants) {
  constexpr double eps = 1e-12;
  const double bmax = ladder.betamax();
  for (std::size_t i = 0; i < path.values.size(); ++i) {
    const double v = path.values[i];
    const double a = std::abs(v);
    bool ok = true;
    switch (path.stage) {
      case Stage::X: ok = a >= 1.0 - eps && a <= bmax * (1.0 + eps); break;
      case Stage::H: ok = a >= 1.0 - eps && a <= 2.0 + eps; break;
      case Stage::Z: ok = a <= 1.0 + eps; break;
      case Stage::W: ok = v >= constants.wmin - eps && v <= constants.wmax + eps; break;
    }
    if (!ok) {
      throw std::logic_error("stage " + to_string(path.stage) + " value " + std::to_string(v) +
                             " out of domain at index " + std::to_string(i));
    }
  }
}

}  // namespace alps
