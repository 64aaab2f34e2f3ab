#include "cri/truth_discovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cri/random.hpp"

namespace cri {

namespace {

// Squared distances are floored at this fraction of the variance so an exact
// hit gets a large finite weight instead of an infinite one.
constexpr double kDistanceFloor = 1e-9;

}  // namespace

double sample_std(std::span<const double> values) {
  if (values.size() < 2) {
    throw InvalidInput("standard deviation needs at least two values");
  }
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  return std::sqrt(ss / n);
}

TruthResult discover(std::span<const Observation> observations,
                     const std::map<UserId, Reputation>& reputations,
                     const TruthOptions& options) {
  if (observations.size() < 2) {
    throw InvalidInput("truth discovery needs at least two observations");
  }
  if (!(options.epsilon > 0.0)) {
    throw InvalidValue("epsilon must be positive");
  }
  if (options.max_iterations < 1) {
    throw InvalidValue("max_iterations must be at least 1");
  }
  if (options.log_base < 0.0 || options.log_base == 1.0) {
    throw InvalidValue("log base must be 0 (natural) or a positive value != 1");
  }

  std::vector<Observation> sorted(observations.begin(), observations.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Observation& a, const Observation& b) {
              return a.user < b.user;
            });
  const std::size_t n = sorted.size();
  std::vector<double> values(n);
  std::vector<double> reps(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && sorted[i].user == sorted[i - 1].user) {
      throw InvalidInput("duplicate observation from one user");
    }
    if (!std::isfinite(sorted[i].value)) {
      throw InvalidValue("observations must be finite");
    }
    auto it = reputations.find(sorted[i].user);
    if (it == reputations.end()) {
      throw InvalidInput("no reputation for observed user " +
                         std::to_string(sorted[i].user.value));
    }
    if (!(it->second > 0.0)) {
      throw InvalidValue("reputations must be positive");
    }
    values[i] = sorted[i].value;
    reps[i] = it->second;
  }

  TruthResult result;
  const double std_o = sample_std(values);
  if (std_o == 0.0) {
    result.truth = values.front();
    result.converged = true;
    for (const auto& o : sorted) {
      result.contributions[o.user] = 1.0 / static_cast<double>(n);
    }
    return result;
  }

  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double truth = 0.0;
  switch (options.init) {
    case TruthInit::mean:
      truth = std::accumulate(values.begin(), values.end(), 0.0) /
              static_cast<double>(n);
      break;
    case TruthInit::seeded_uniform: {
      RandomStream stream{options.init_seed, StreamPurpose::truth_init};
      truth = stream.uniform(*lo, *hi);
      break;
    }
  }

  const double floor = kDistanceFloor * std_o * std_o;
  const double log_scale =
      options.log_base > 0.0 ? 1.0 / std::log(options.log_base) : 1.0;
  std::vector<double> terms(n);
  std::vector<double> weights(n);

  bool converged = false;
  int iteration = 0;
  while (iteration < options.max_iterations) {
    ++iteration;
    double term_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = values[i] - truth;
      terms[i] = std::max(d * d, floor) / (std_o * reps[i]);
      term_sum += terms[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      weights[i] = std::log(term_sum / terms[i]) * log_scale;
    }
    if (options.on_iteration) {
      options.on_iteration(iteration, weights, truth);
    }

    double weighted = 0.0;
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      weighted += weights[i] * values[i];
      weight_sum += weights[i];
    }
    const double previous = truth;
    truth = weighted / weight_sum;
    if (std::abs(truth - previous) < options.epsilon) {
      converged = true;
      break;
    }
  }

  const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  result.truth = truth;
  result.iterations = iteration;
  result.converged = converged;
  for (std::size_t i = 0; i < n; ++i) {
    result.contributions[sorted[i].user] = weights[i] / weight_sum;
  }
  if (!converged) {
    throw NonConvergence("truth discovery did not converge in " +
                             std::to_string(iteration) + " iterations",
                         std::move(result));
  }
  return result;
}

}  // namespace cri
