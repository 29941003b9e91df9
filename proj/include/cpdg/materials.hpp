#pragma once

#include <functional>
#include <string>

namespace cpdg {

inline constexpr double kEps0 = 8.85e-12;                  // F/m
inline constexpr double kMu0 = 4.0e-7 * 3.14159265358979323846;  // H/m

// Free-space light speed for the constants above.
double vacuum_light_speed();

struct MaterialPoint {
  double eps;
  double mu;

  double c() const;
};

// Scalar permittivity/permeability field evaluated pointwise. The evaluator
// must be pure; it is called concurrently from solver workers.
class MaterialSpec {
 public:
  using Evaluator = std::function<MaterialPoint(double x, double y)>;

  MaterialSpec(std::string name, Evaluator eval, bool uniform = false);

  const std::string& name() const { return name_; }
  // True when eps and mu do not depend on position.
  bool uniform() const { return uniform_; }

  // Throws std::domain_error if eps or mu is not positive and finite.
  MaterialPoint at(double x, double y) const;
  double eps(double x, double y) const { return at(x, y).eps; }
  double mu(double x, double y) const { return at(x, y).mu; }
  double c(double x, double y) const { return at(x, y).c(); }

 private:
  std::string name_;
  Evaluator eval_;
  bool uniform_;
};

MaterialSpec vacuum();
MaterialSpec constant_material(double eps, double mu);
MaterialSpec analytic_material(std::string name, MaterialSpec::Evaluator eval);

// eps_r = 5 - 4 tanh((r - 0.75)/0.08), r = sqrt(x^2 + y^2) in metres.
MaterialSpec dielectric_disk();
// eps = 1.625 eps0 + 0.625 eps0 tanh(1e8 x).
MaterialSpec refraction_slab();
// eps = 2.5 eps0 - 1.5 eps0 tanh(4e8 x).
MaterialSpec tir_slab();

// Lookup by config name: vacuum, disk, refraction_slab, tir_slab.
MaterialSpec material_by_name(const std::string& name);

}  // namespace cpdg
