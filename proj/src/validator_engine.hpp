#pragma once

#include <bintail/validator.hpp>

#include <array>
#include <atomic>
#include <exception>
#include <string_view>
#include <thread>
#include <type_traits>
#include <utility>

namespace bintail::detail {

enum class Rel { less, less_eq, equal };
enum class Domain { linear, log };

inline constexpr std::type_identity<double> binary64_tag{};
inline constexpr std::type_identity<HighPrecision> high_tag{};

unsigned thread_count(const ValidatorOptions& opts);
HighPrecision high_tolerance();
GridPoint point_npk(std::int64_t n, std::int64_t k, const Rational& p);

// Runs fn(i) for i in [0, count) on a small pool; results stay in index order.
template <class Fn>
std::vector<CheckSummary> parallel_map(std::size_t count, unsigned threads, Fn fn) {
  std::vector<CheckSummary> out(count);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::min<std::size_t>(threads, count);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

CheckSummary merge_in_order(const std::string& suite, std::vector<CheckSummary>& parts,
                            const ValidatorOptions& opts);

class Checker {
 public:
  Checker(std::string suite, const ValidatorOptions& opts) : opts_(opts) { s_.suite = std::move(suite); }

  CheckSummary take() { return std::move(s_); }
  CheckSummary& summary() { return s_; }
  void count_point() { ++s_.points_checked; }

  // Checks names[0] rel[0] names[1] rel[1] ... on values produced by eval,
  // first in binary64 and, if any margin is thin, again in high precision.
  template <std::size_t N, class Eval>
  void chain(const GridPoint& pt, std::string_view chain_name, const std::array<const char*, N>& names,
             const std::array<Rel, N - 1>& rels, Domain dom, const Eval& eval) {
    std::array<double, N> fast = eval(binary64_tag);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < N && ok; ++i) ok = fast_pass(fast[i], rels[i], fast[i + 1], dom);
    if (ok) {
      for (std::size_t i = 0; i + 1 < N; ++i)
        if (rels[i] == Rel::less)
          note_margin(pt, chain_name, names[i], names[i + 1], margin(fast[i], fast[i + 1], dom));
      return;
    }
    ++s_.escalations;
    std::array<HighPrecision, N> slow = eval(high_tag);
    for (std::size_t i = 0; i + 1 < N; ++i)
      relation(pt, chain_name, names[i], slow[i], rels[i], names[i + 1], slow[i + 1], dom, true);
  }

  // A single relation checked directly in high precision.
  void relation(const GridPoint& pt, std::string_view chain_name, std::string_view lhs_name,
                const HighPrecision& lhs, Rel rel, std::string_view rhs_name, const HighPrecision& rhs,
                Domain dom, bool escalated);

  // A relation between exact rationals; no tolerance.
  void exact_relation(const GridPoint& pt, std::string_view chain_name, std::string_view lhs_name,
                      const Rational& lhs, Rel rel, std::string_view rhs_name, const Rational& rhs);

  void metric(const std::string& name, double value, const GridPoint& pt, int sense);
  void check(const std::string& name, bool passed, const std::string& detail);

  static double margin(double lhs, double rhs, Domain dom);
  static HighPrecision margin(const HighPrecision& lhs, const HighPrecision& rhs, Domain dom);

 private:
  bool fast_pass(double lhs, Rel rel, double rhs, Domain dom) const;
  void note_margin(const GridPoint& pt, std::string_view chain_name, std::string_view a, std::string_view b,
                   double m);

  const ValidatorOptions& opts_;
  CheckSummary s_;
};

std::string relation_label(std::string_view chain, std::string_view a, Rel rel, std::string_view b);

CheckSummary suite_theorem1(const GridSpec& grid, const ValidatorOptions& opts);
CheckSummary suite_theorem2(const GridSpec& grid, const ValidatorOptions& opts);
CheckSummary suite_theorem5_2(const GridSpec& grid, const ValidatorOptions& opts);
CheckSummary suite_upper_tail(const GridSpec& grid, const ValidatorOptions& opts);
CheckSummary suite_partial_mean(const GridSpec& grid, const ValidatorOptions& opts);
CheckSummary suite_successive_ratio(const GridSpec& grid, const ValidatorOptions& opts);
CheckSummary suite_phi_band(const GridSpec& grid, const ValidatorOptions& opts);
CheckSummary suite_baselines(const GridSpec& grid, const ValidatorOptions& opts);
CheckSummary suite_mckay(const GridSpec& grid, const ValidatorOptions& opts);
CheckSummary suite_gaussian(const GridSpec& grid, const ValidatorOptions& opts);
CheckSummary suite_constants(const GridSpec& grid, const ValidatorOptions& opts);

}  // namespace bintail::detail
