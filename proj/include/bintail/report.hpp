#pragma once

#include <bintail/mckay.hpp>
#include <bintail/validator.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bintail {

struct Field {
  std::string name;
  std::optional<double> value;
  std::optional<double> log_value;
  // value / exact tail, when the exact tail was requested.
  std::optional<double> ratio_to_exact;
  std::string note;
};

struct EvalReport {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::string p;
  Tail tail = Tail::lower;
  std::vector<Field> fields;
  std::string warning;
};

EvalReport evaluate_point(const BinomialParams& params, Tail tail, bool exact);

// Per-point bound values and B/(bL) over a grid, rows in grid order.
Table sweep_table(const GridSpec& grid, Tail tail, const ValidatorOptions& opts = {});
// Bracket widths along the upper tail k in (pn, n-1] at one (n, p).
Table compare_table(std::int64_t n, const Probability& p, const std::string& against);

std::string eval_csv(const EvalReport& r, int precision = 17);
std::string eval_json(const EvalReport& r, int precision = 17);
// Comment lines (prefixed with "# ") precede the header.
std::string table_csv(const Table& t, const std::vector<std::string>& comments = {});
std::string table_json(const Table& t, const std::vector<std::pair<std::string, std::string>>& meta = {});

}  // namespace bintail
