#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace cri {

/// Identity of a registered mobile user. Stable for the lifetime of a run.
struct UserId {
  std::uint32_t value{0};

  constexpr UserId() = default;
  constexpr explicit UserId(std::uint32_t v) : value{v} {}

  friend constexpr auto operator<=>(UserId, UserId) = default;
};

inline std::ostream& operator<<(std::ostream& os, UserId id) {
  return os << id.value;
}

/// Credibility in [r_min, r_max]. Plain double; the clamp lives in reputation.hpp.
using Reputation = double;

/// Normalized share of a task, >= 0.
using Contribution = double;

struct Payback {
  double raw{0.0};
  /// raw / R of the owning task, in [0, 1].
  double normalized{0.0};

  friend bool operator==(const Payback&, const Payback&) = default;
};

struct ReputationBounds {
  double min{0.01};
  double max{0.99};
};

struct IncentiveParams {
  /// Weight of the previous reputation in the update.
  double alpha{0.5};
  /// Reputation issued at registration.
  double r0{0.5};
  /// Truth-discovery convergence threshold, same units as observations.
  double epsilon{0.1};
  ReputationBounds bounds{};

  /// Throws InvalidValue unless 0 <= alpha <= 1, 0 < r_min < r0 < r_max < 1
  /// and epsilon > 0.
  void validate() const;
};

}  // namespace cri

template <>
struct std::hash<cri::UserId> {
  std::size_t operator()(cri::UserId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
