#include "cpdg/materials.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace cpdg {

double vacuum_light_speed() { return 1.0 / std::sqrt(kEps0 * kMu0); }

double MaterialPoint::c() const { return 1.0 / std::sqrt(eps * mu); }

MaterialSpec::MaterialSpec(std::string name, Evaluator eval, bool uniform)
    : name_(std::move(name)), eval_(std::move(eval)), uniform_(uniform) {
  if (!eval_) throw std::invalid_argument("material evaluator is empty");
}

MaterialPoint MaterialSpec::at(double x, double y) const {
  const MaterialPoint m = eval_(x, y);
  if (!(m.eps > 0.0) || !(m.mu > 0.0) || !std::isfinite(m.eps) || !std::isfinite(m.mu)) {
    throw std::domain_error("material '" + name_ + "' is not positive at (" + std::to_string(x) +
                            ", " + std::to_string(y) + ")");
  }
  return m;
}

MaterialSpec vacuum() {
  return MaterialSpec("vacuum", [](double, double) { return MaterialPoint{kEps0, kMu0}; }, true);
}

MaterialSpec constant_material(double eps, double mu) {
  if (!(eps > 0.0) || !(mu > 0.0)) throw std::invalid_argument("eps and mu must be positive");
  return MaterialSpec("constant", [eps, mu](double, double) { return MaterialPoint{eps, mu}; },
                      true);
}

MaterialSpec analytic_material(std::string name, MaterialSpec::Evaluator eval) {
  return MaterialSpec(std::move(name), std::move(eval), false);
}

MaterialSpec dielectric_disk() {
  return MaterialSpec("disk", [](double x, double y) {
    const double r = std::hypot(x, y);
    return MaterialPoint{(5.0 - 4.0 * std::tanh((r - 0.75) / 0.08)) * kEps0, kMu0};
  });
}

MaterialSpec refraction_slab() {
  return MaterialSpec("refraction_slab", [](double x, double) {
    return MaterialPoint{(1.625 + 0.625 * std::tanh(1.0e8 * x)) * kEps0, kMu0};
  });
}

MaterialSpec tir_slab() {
  return MaterialSpec("tir_slab", [](double x, double) {
    return MaterialPoint{(2.5 - 1.5 * std::tanh(4.0e8 * x)) * kEps0, kMu0};
  });
}

MaterialSpec material_by_name(const std::string& name) {
  if (name == "vacuum") return vacuum();
  if (name == "disk") return dielectric_disk();
  if (name == "refraction_slab") return refraction_slab();
  if (name == "tir_slab") return tir_slab();
  throw std::invalid_argument("unknown material '" + name + "'");
}

}  // namespace cpdg
