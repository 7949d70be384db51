#pragma once

#include <memory>
#include <optional>

#include "intwine/dynamics/forcing.hpp"
#include "intwine/dynamics/matrix.hpp"

namespace intwine::dynamics {

struct IntertwinedState {
  IntertwinedState(double t, double nu, double K, IntertwiningMatrix matrix, SpectralField v1,
                   SpectralField v2, std::shared_ptr<const Forcing> g1,
                   std::shared_ptr<const Forcing> g2);

  double t;
  double nu;
  double K;
  IntertwiningMatrix matrix;
  SpectralField v1;
  SpectralField v2;
  std::shared_ptr<const Forcing> g1;
  std::shared_ptr<const Forcing> g2;

  const Grid& grid() const noexcept { return v1.grid(); }
  /// Throws unless v1, v2 share a grid and are dealias-supported and nu > 0, K >= 0.
  void validate() const;
};

struct DerivedViews {
  SpectralField w, p, q, z, r, s;
  /// theta2 v1 + theta1 v2 (DR classes only).
  std::optional<SpectralField> v_theta;
  /// sqrt(theta1 theta2) w, or w itself when theta1 theta2 = 0 (see theta_scaled).
  std::optional<SpectralField> w_theta;
  bool theta_scaled = false;
};

/// w, p, q, z, r, s always; the theta views require a DR matrix unless
/// with_theta is false.
DerivedViews derived_views(const IntertwinedState& s, bool with_theta = true);

}  // namespace intwine::dynamics
