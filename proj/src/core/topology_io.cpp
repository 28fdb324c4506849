#include "psearch/core/topology_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace psearch {

namespace {

[[noreturn]] void fail(int line_no, const std::string &what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> tokenize(const std::string &line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t)
        toks.push_back(t);
    return toks;
}

StateId parse_id(const std::string &tok, int line_no) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size() || v < 0)
            fail(line_no, "bad state id '" + tok + "'");
        return static_cast<StateId>(v);
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &) {
        fail(line_no, "bad state id '" + tok + "'");
    }
}

} // namespace

ExplicitTopology load_topology(std::istream &in, std::string name) {
    struct DeclaredState {
        StateId id;
        HValue h;
        bool init;
        bool goal;
        int line_no;
    };
    std::vector<DeclaredState> states;
    std::vector<std::pair<std::pair<StateId, StateId>, int>> edges; // ((from, to), line)

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        if (toks[0] == "state") {
            if (toks.size() < 3)
                fail(line_no, "state line needs '<id> h=<int>'");
            StateId id = parse_id(toks[1], line_no);
            if (toks[2].rfind("h=", 0) != 0)
                fail(line_no, "expected h=<int>, got '" + toks[2] + "'");
            HValue h;
            try {
                std::size_t pos = 0;
                h = std::stoll(toks[2].substr(2), &pos);
                if (pos != toks[2].size() - 2)
                    throw std::invalid_argument("");
            } catch (const std::exception &) {
                fail(line_no, "bad h value in '" + toks[2] + "'");
            }
            bool is_init = false, is_goal = false;
            for (std::size_t i = 3; i < toks.size(); ++i) {
                if (toks[i] == "init")
                    is_init = true;
                else if (toks[i] == "goal")
                    is_goal = true;
                else
                    fail(line_no, "unknown state flag '" + toks[i] + "'");
            }
            states.push_back({id, h, is_init, is_goal, line_no});
        } else if (toks[0] == "edge") {
            if (toks.size() != 3)
                fail(line_no, "edge line needs '<from> <to>'");
            edges.push_back({{parse_id(toks[1], line_no), parse_id(toks[2], line_no)}, line_no});
        } else {
            fail(line_no, "unknown directive '" + toks[0] + "'");
        }
    }

    const std::size_t n = states.size();
    if (n == 0)
        throw ParseError("no state lines found");

    TopologyData d;
    d.h.assign(n, 0);
    d.goal.assign(n, 0);
    d.succ.assign(n, {});
    std::vector<std::uint8_t> declared(n, 0);
    int init_count = 0;
    for (const auto &s : states) {
        if (s.id < 0 || static_cast<std::size_t>(s.id) >= n)
            fail(s.line_no, "state ids must be contiguous from 0 (id " + std::to_string(s.id) +
                                ", " + std::to_string(n) + " states declared)");
        if (declared[static_cast<std::size_t>(s.id)])
            fail(s.line_no, "state " + std::to_string(s.id) + " declared twice");
        declared[static_cast<std::size_t>(s.id)] = 1;
        d.h[static_cast<std::size_t>(s.id)] = s.h;
        d.goal[static_cast<std::size_t>(s.id)] = s.goal ? 1 : 0;
        if (s.init) {
            d.init = s.id;
            ++init_count;
        }
    }
    if (init_count != 1)
        throw ParseError("exactly one state must carry the init flag (found " +
                         std::to_string(init_count) + ")");
    for (const auto &e : edges) {
        auto [from, to] = e.first;
        if (static_cast<std::size_t>(from) >= n || static_cast<std::size_t>(to) >= n)
            fail(e.second, "edge references undeclared state");
        d.succ[static_cast<std::size_t>(from)].push_back(to);
    }

    try {
        return ExplicitTopology(std::move(d), std::move(name));
    } catch (const ValidationError &err) {
        throw ParseError(std::string(err.what()));
    }
}

ExplicitTopology load_topology_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open topology file '" + path + "'");
    return load_topology(in, path);
}

void save_topology(const ExplicitTopology &topo, std::ostream &out) {
    const auto &d = topo.data();
    const StateId n = topo.num_states();
    for (StateId s = 0; s < n; ++s) {
        out << "state " << s << " h=" << d.h[static_cast<std::size_t>(s)];
        if (s == d.init)
            out << " init";
        if (d.goal[static_cast<std::size_t>(s)])
            out << " goal";
        out << "\n";
    }
    for (StateId s = 0; s < n; ++s)
        for (StateId t : d.succ[static_cast<std::size_t>(s)])
            out << "edge " << s << " " << t << "\n";
}

void save_topology_file(const ExplicitTopology &topo, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write topology file '" + path + "'");
    save_topology(topo, out);
}

std::string topology_to_string(const ExplicitTopology &topo) {
    std::ostringstream os;
    save_topology(topo, os);
    return os.str();
}

std::uint64_t topology_fingerprint(const TopologyData &data) {
    // FNV-1a over the canonical text; cheap and stable across processes.
    std::ostringstream os;
    const std::size_t n = data.h.size();
    for (std::size_t s = 0; s < n; ++s) {
        os << "state " << s << " h=" << data.h[s];
        if (static_cast<StateId>(s) == data.init)
            os << " init";
        if (data.goal[s])
            os << " goal";
        os << "\n";
    }
    for (std::size_t s = 0; s < n; ++s)
        for (StateId t : data.succ[s])
            os << "edge " << s << " " << t << "\n";
    const std::string text = os.str();

    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

} // namespace psearch
