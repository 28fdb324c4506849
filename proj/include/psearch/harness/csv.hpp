#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "psearch/harness/metrics.hpp"

namespace psearch {

// Fixed column set, written in this order.
extern const char *const kCsvHeader;

void write_csv_header(std::ostream &out);
void write_csv_row(std::ostream &out, const RunRecord &r);
void write_csv(std::ostream &out, const std::vector<RunRecord> &records);

// Parses what write_csv produced (header required, numbers round-trip
// exactly).  Throws ParseError with a line number on malformed input.
std::vector<RunRecord> read_csv(std::istream &in);

std::vector<RunRecord> read_csv_file(const std::string &path);

} // namespace psearch
