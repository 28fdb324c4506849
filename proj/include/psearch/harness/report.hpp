#pragma once

#include <string>
#include <vector>

#include "psearch/harness/metrics.hpp"

namespace psearch {

std::string report_to_json(const AggregateReport &rep);

// Summary and pairwise-coverage tables, GitHub-flavored.
std::string report_to_markdown(const AggregateReport &rep);

/*
  Per-instance scatter data (baseline value on x, engine value on y),
  one whitespace-separated block per non-baseline engine, ready for any
  plotting tool.  `metric` is one of wall_s, expansions, evaluations.
  Runs that failed are emitted at the sentinel value -1 so they stay
  visible.  Header comments carry the 0.1x / 1x / 10x reference
  diagonals.  Throws std::invalid_argument on an unknown metric or
  empty input.
*/
std::string emit_plot_data(const std::vector<RunRecord> &records, const std::string &metric);

} // namespace psearch
