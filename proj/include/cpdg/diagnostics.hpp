#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cpdg/materials.hpp"
#include "cpdg/mesh.hpp"
#include "cpdg/riemann.hpp"
#include "cpdg/solver.hpp"

namespace cpdg {

using PointField = std::function<TEState(double x, double y)>;

struct ErrorReport {
  double d_l1 = 0.0;
  double d_l2 = 0.0;
  double bz_l1 = 0.0;
  double bz_l2 = 0.0;
};

// Norms of (numeric - reference) with (k+2)-point tensor Gauss-Legendre per
// cell. D uses the reconstructed field and carries a 1/|Omega| factor; the
// B_z norms do not:
//   |D|_1 = 1/|Omega| I |D|,  |D|_2 = (1/|Omega| I |D|^2)^(1/2)
//   |Bz|_1 = I |Bz|,           |Bz|_2 = (I Bz^2)^(1/2)
ErrorReport error_norms(const CartesianMesh& mesh, const StateLayout& layout,
                        std::span<const double> u, const PointField& reference);

struct EnergyReport {
  double e_h = 0.0;     // I [ |D|^2/(2 eps) + Bz^2/(2 mu) ] of the reconstructed field
  double e_star = 0.0;  // face-mean quadratic form
};

// E*_h = sum_faces a0^2/(2 eps) dx dy + sum_cells alpha0^2/(2 mu) dx dy, with
// eps at face midpoints and mu at cell centres.
EnergyReport total_energy(const CartesianMesh& mesh, const StateLayout& layout,
                          std::span<const double> u, const MaterialSpec& material);

// Per-cell compatibility residuals in cell-id order.
std::vector<double> compatibility_residuals(const CartesianMesh& mesh, const StateLayout& layout,
                                            std::span<const double> u);

struct ConstraintReport {
  double compat_max = 0.0;  // max |residual|
  double compat_l1 = 0.0;   // sum |residual|
  double drift_max = 0.0;   // max |residual - initial|
  double div_max = 0.0;     // max |div D| at the sampled points
  double face_scale = 0.0;  // max |face mode| over the mesh
  // Normalised by S (dx + dy) and S (1/dx + 1/dy), S = max(face_scale, reference_scale).
  double compat_rel = 0.0;
  double drift_rel = 0.0;
  double div_rel = 0.0;
};

// Compatibility residual per cell (and drift from `initial` when given), and
// divergence of the reconstructed D at `samples` points per cell drawn from
// a fixed-seed generator.
ConstraintReport constraint_monitor(const CartesianMesh& mesh, const StateLayout& layout,
                                    std::span<const double> u,
                                    std::span<const double> initial = {},
                                    double reference_scale = 0.0, int samples = 4,
                                    std::uint64_t seed = 12345);

// log2(e[i-1]/e[i]) for successive entries; nullopt when either error is zero.
std::vector<std::optional<double>> convergence_order(std::span<const double> errors);

// Reconstructed D and modal B_z at a physical point.
TEState sample_state(const CartesianMesh& mesh, const StateLayout& layout,
                     std::span<const double> u, double x, double y);

// Point sampler over a stored state (copies the state).
PointField make_sampler(const CartesianMesh& mesh, const StateLayout& layout,
                        std::span<const double> u);

}  // namespace cpdg
