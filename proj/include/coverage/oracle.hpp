#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "coverage/environment.hpp"
#include "coverage/planner.hpp"

namespace coverage {

enum class Objective { Routes, Length };

/// Optimum for one objective together with a route set attaining it.
struct OptimalComponent {
  long long value = 0;
  std::vector<Route> witness;
};

struct OptimalSolution {
  long long k_opt = 0;
  long long len_opt = 0;
  std::vector<Route> routes_witness;
  std::vector<Route> length_witness;
};

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kOracleCellCap = 12;

/// Exact optimum over every full-knowledge strategy: uniform-cost search over
/// (position, covered set, remaining energy), recharging allowed only at the
/// station. Throws InstanceTooLarge above kOracleCellCap reachable cells.
OptimalComponent brute_force_optimal(const Environment& env, Energy budget, Objective objective);
OptimalSolution solve_optimal(const Environment& env, Energy budget);

struct Rational {
  long long num = 0;
  long long den = 1;

  long long ceil() const { return (num + den - 1) / den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// 2n/B in lowest terms.
Rational min_lower_bound(std::size_t n, Energy budget);

/// Provable route lower bound for any strategy: a closed walk of at most B
/// moves visits at most B - 1 cells besides the station.
long long closed_walk_route_bound(std::size_t n, Energy budget);

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;  ///< counterexample on failure
};

struct ValidationReport {
  std::vector<Check> checks;

  bool ok() const;
  const Check* find(const std::string& name) const;
};

/// Replays a result against ground truth: route endpoints (a), route lengths
/// (b), coverage (c), step adjacency, ledger, tree shape, contours, depth and
/// the skipped-cell cross check.
ValidationReport validate_result(const Environment& env, Energy budget, const CoverageResult& result);

}  // namespace coverage
