#pragma once

#include <bintail/precision.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bintail {

enum class KRule { suite_default, all_k, lower_tail_k, upper_tail_k };

struct GridSpec {
  std::vector<std::int64_t> n_values;
  std::vector<Rational> p_values;
  KRule k_rule = KRule::suite_default;
  // n-schedule for convergence-style checks.
  std::vector<std::int64_t> limits;
  // x grid of the Gaussian suite: x_i = i * x_step for x_i <= x_max.
  Rational x_max{10};
  Rational x_step{Rational(1, 100)};

  // n in 1..n_max, p in {j/20 : 1 <= j <= 19}.
  static GridSpec standard(std::int64_t n_max = 300);
  std::int64_t n_max() const;
  std::string describe() const;
};

struct GridPoint {
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> k;
  std::optional<Rational> p;
  std::optional<Rational> f;
  std::optional<std::string> x;
};

struct ViolationReport {
  std::string suite;
  std::string relation;
  GridPoint point;
  std::string lhs;
  std::string rhs;
  double margin = 0;
  bool precision_escalated = false;
};

struct Witness {
  std::string name;
  double value = 0;
  GridPoint point;
  std::string relation;
  // +1 keeps the maximum on merge, -1 the minimum, 0 the first value.
  int sense = 0;
};

struct NamedCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct CheckSummary {
  std::string suite;
  std::int64_t points_checked = 0;
  std::int64_t escalations = 0;
  std::int64_t violation_count = 0;
  std::vector<ViolationReport> violations;
  // Smallest relative margin over all strict relations checked.
  std::optional<Witness> extremal_witness;
  std::vector<Witness> metrics;
  std::vector<NamedCheck> checks;
  std::vector<Table> tables;
  std::string note;

  bool passed() const;
  void merge(const CheckSummary& other, std::size_t max_reported = 1000);
};

struct ValidatorOptions {
  // Relative binary64 margin below which a relation is rechecked in high precision.
  double escalation_margin = 1e-9;
  // Threads; 0 means BINTAIL_THREADS or the hardware concurrency.
  unsigned threads = 0;
  // Violations kept per summary; the count is always exact.
  std::size_t max_reported = 1000;
};

const std::vector<std::string>& suite_ids();
CheckSummary run_suite(const std::string& suite, const GridSpec& grid, const ValidatorOptions& opts = {});
CheckSummary conjecture_scan(const GridSpec& grid, const ValidatorOptions& opts = {});
CheckSummary monotonicity_suite(const GridSpec& grid, const ValidatorOptions& opts = {});

enum class Track { large_deviation, moderate_deviation, clt };

struct ConvergenceSpec {
  Track track = Track::large_deviation;
  Rational f{Rational(3, 10)};
  Rational p{Rational(1, 2)};
  // CLT track offset x in k_n = pn - x sqrt(pqn).
  Rational x{1};
  std::vector<std::int64_t> schedule{10, 100, 1000, 10000};
  // Relative gap to the limit required at the last schedule entry.
  double final_gap = 0.005;
};

CheckSummary convergence_suite(const ConvergenceSpec& spec, const ValidatorOptions& opts = {});
CheckSummary convergence_suite(const Rational& f, const Rational& p, const std::vector<std::int64_t>& schedule,
                               const ValidatorOptions& opts = {});

std::string rational_str(const Rational& r);
std::string summary_json(const CheckSummary& s);
std::string violations_csv(const CheckSummary& s, bool header = true);

}  // namespace bintail
