#include "psearch/harness/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace psearch {

const char *const kCsvHeader = "domain,kind,seed,engine,constraint,sge,k,scheduler,sched_seed,"
                               "solved,fail_cause,expansions,evaluations,wasted_evals,wall_s,"
                               "eval_rate,peak_open";

namespace {

constexpr int kColumns = 17;

// %.17g round-trips any double exactly.
std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_fields(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string &msg) {
    throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

std::uint64_t parse_u64(const std::string &s, std::size_t line_no, const char *what) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size())
            fail(line_no, std::string("trailing characters in ") + what);
        return v;
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &) {
        fail(line_no, std::string("bad ") + what + " '" + s + "'");
    }
}

double parse_double(const std::string &s, std::size_t line_no, const char *what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            fail(line_no, std::string("trailing characters in ") + what);
        return v;
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &) {
        fail(line_no, std::string("bad ") + what + " '" + s + "'");
    }
}

bool parse_bool(const std::string &s, std::size_t line_no, const char *what) {
    if (s == "1")
        return true;
    if (s == "0")
        return false;
    fail(line_no, std::string("bad ") + what + " '" + s + "' (expected 0 or 1)");
}

} // namespace

void write_csv_header(std::ostream &out) { out << kCsvHeader << "\n"; }

void write_csv_row(std::ostream &out, const RunRecord &r) {
    out << r.domain << ',' << r.kind << ',' << r.seed << ',' << r.engine << ',' << r.constraint
        << ',' << (r.sge ? 1 : 0) << ',' << r.k << ',' << r.scheduler << ',' << r.sched_seed
        << ',' << (r.solved ? 1 : 0) << ',' << r.fail_cause << ',' << r.expansions << ','
        << r.evaluations << ',' << r.wasted_evals << ',' << format_double(r.wall_s) << ','
        << format_double(r.eval_rate) << ',' << r.peak_open << "\n";
}

void write_csv(std::ostream &out, const std::vector<RunRecord> &records) {
    write_csv_header(out);
    for (const auto &r : records)
        write_csv_row(out, r);
}

std::vector<RunRecord> read_csv(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw ParseError("line 1: missing header");
    ++line_no;
    if (line == std::string(kCsvHeader) + "\r")
        line.pop_back();
    if (line != kCsvHeader)
        throw ParseError("line 1: unexpected header '" + line + "'");

    std::vector<RunRecord> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto f = split_fields(line);
        if (f.size() != kColumns)
            fail(line_no, "expected " + std::to_string(kColumns) + " fields, got " +
                              std::to_string(f.size()));
        RunRecord r;
        r.domain = f[0];
        r.kind = f[1];
        r.seed = parse_u64(f[2], line_no, "seed");
        r.engine = f[3];
        r.constraint = f[4];
        r.sge = parse_bool(f[5], line_no, "sge");
        r.k = static_cast<int>(parse_u64(f[6], line_no, "k"));
        r.scheduler = f[7];
        r.sched_seed = parse_u64(f[8], line_no, "sched_seed");
        r.solved = parse_bool(f[9], line_no, "solved");
        r.fail_cause = f[10];
        r.expansions = parse_u64(f[11], line_no, "expansions");
        r.evaluations = parse_u64(f[12], line_no, "evaluations");
        r.wasted_evals = parse_u64(f[13], line_no, "wasted_evals");
        r.wall_s = parse_double(f[14], line_no, "wall_s");
        r.eval_rate = parse_double(f[15], line_no, "eval_rate");
        r.peak_open = parse_u64(f[16], line_no, "peak_open");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<RunRecord> read_csv_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    return read_csv(in);
}

} // namespace psearch
