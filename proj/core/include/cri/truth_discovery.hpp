#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "cri/errors.hpp"
#include "cri/types.hpp"

namespace cri {

/// One employee's single-dimension report (degrees Celsius in the simulator).
struct Observation {
  UserId user;
  double value{0.0};
};

enum class TruthInit {
  /// Unweighted mean of the observations.
  mean,
  /// Seeded uniform draw in [min(O), max(O)].
  seeded_uniform,
};

struct TruthOptions {
  double epsilon{0.1};
  int max_iterations{100};
  TruthInit init{TruthInit::mean};
  std::uint64_t init_seed{0};
  /// Base of the weight logarithm; 0 selects the natural log. The base only
  /// rescales all weights uniformly.
  double log_base{0.0};
  /// Called after each weight pass with the iteration index (1-based), the
  /// raw per-employee weights in ascending user order, and the estimate the
  /// weights were computed against.
  std::function<void(int, std::span<const double>, double)> on_iteration;
};

struct TruthResult {
  double truth{0.0};
  /// Normalized to sum to one.
  std::map<UserId, Contribution> contributions;
  int iterations{0};
  bool converged{false};
};

/// Thrown when max_iterations pass without |o - o'| < epsilon. Carries the
/// last iterate.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, TruthResult last)
      : Error(what), last_{std::move(last)} {}

  const TruthResult& last_iterate() const noexcept { return last_; }

 private:
  TruthResult last_;
};

/// Population (1/N) standard deviation. Throws InvalidInput for < 2 values.
double sample_std(std::span<const double> values);

/// Reputation-weighted sensing truth discovery.
///
/// Alternates between per-employee weights
///
///   w_i = log( sum_j d_j / (std r_j)  /  (d_i / (std r_i)) ),
///   d_i = max((o_i - truth)^2, 1e-9 std^2)
///
/// and the weighted mean truth = sum w_j o_j / sum w_j, until successive
/// estimates move by less than epsilon. Contributions are the final weights
/// normalized to one. Observations with zero spread short-circuit to their
/// common value with uniform contributions.
///
/// Results do not depend on the order of `observations`. Every observed user
/// must have an entry in `reputations`.
TruthResult discover(std::span<const Observation> observations,
                     const std::map<UserId, Reputation>& reputations,
                     const TruthOptions& options = {});

}  // namespace cri
