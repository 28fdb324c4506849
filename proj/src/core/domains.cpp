#include "psearch/core/domains.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "psearch/core/rng.hpp"
#include "psearch/core/topology_io.hpp"

namespace psearch {

namespace {

std::uint64_t fnv1a(const std::string &text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string format_density(double d) {
    std::ostringstream os;
    os << d;
    return os.str();
}

} // namespace

ExplicitTopology gen_plateau(int depth, int width) {
    if (depth < 1 || width < 0)
        throw ValidationError("gen_plateau needs depth >= 1 and width >= 0");
    const StateId d = depth, x = width;
    const StateId goal = d;
    const StateId n = d + 1 + d * x;

    TopologyData t;
    t.init = 0;
    t.h.assign(static_cast<std::size_t>(n), 0);
    t.goal.assign(static_cast<std::size_t>(n), 0);
    t.succ.assign(static_cast<std::size_t>(n), {});
    t.goal[static_cast<std::size_t>(goal)] = 1;

    auto sibling_id = [&](StateId i, StateId j) { return d + 1 + i * x + j; };

    for (StateId i = 0; i < d; ++i) {
        t.h[static_cast<std::size_t>(i)] = d - i;
        auto &succ = t.succ[static_cast<std::size_t>(i)];
        succ.push_back(i + 1 == d ? goal : i + 1); // chain child first
        for (StateId j = 0; j < x; ++j) {
            StateId sib = sibling_id(i, j);
            t.h[static_cast<std::size_t>(sib)] = d - i; // one worse than the chain child
            succ.push_back(sib);
        }
    }

    std::ostringstream name;
    name << "plateau-d" << depth << "-x" << width;
    return ExplicitTopology(std::move(t), name.str());
}

ExplicitTopology gen_random(StateId num_states, double edge_density, HValue h_max,
                            int goal_count, std::uint64_t seed) {
    if (num_states < 2)
        throw ValidationError("gen_random needs at least 2 states");
    if (goal_count < 1 || goal_count >= num_states)
        throw ValidationError("gen_random needs 1 <= goal_count < num_states");
    if (edge_density < 0.0 || edge_density > 1.0)
        throw ValidationError("gen_random needs edge_density in [0, 1]");
    if (h_max < 1)
        throw ValidationError("gen_random needs h_max >= 1");

    const std::size_t n = static_cast<std::size_t>(num_states);
    for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + attempt);

        TopologyData t;
        t.init = 0;
        t.h.assign(n, 0);
        t.goal.assign(n, 0);
        t.succ.assign(n, {});
        for (StateId g = num_states - goal_count; g < num_states; ++g)
            t.goal[static_cast<std::size_t>(g)] = 1;
        for (std::size_t s = 0; s < n; ++s)
            if (!t.goal[s])
                t.h[s] = static_cast<HValue>(uniform_below(rng, static_cast<std::uint64_t>(h_max) + 1));
        for (std::size_t s = 0; s < n; ++s) {
            if (t.goal[s])
                continue;
            for (std::size_t o = 0; o < n; ++o)
                if (o != s && uniform_unit(rng) < edge_density)
                    t.succ[s].push_back(static_cast<StateId>(o));
        }

        // Keep only attempts where some goal is reachable from state 0.
        std::vector<std::uint8_t> seen(n, 0);
        std::deque<StateId> frontier{0};
        seen[0] = 1;
        bool goal_reachable = false;
        while (!frontier.empty() && !goal_reachable) {
            StateId s = frontier.front();
            frontier.pop_front();
            if (t.goal[static_cast<std::size_t>(s)]) {
                goal_reachable = true;
                break;
            }
            for (StateId o : t.succ[static_cast<std::size_t>(s)])
                if (!seen[static_cast<std::size_t>(o)]) {
                    seen[static_cast<std::size_t>(o)] = 1;
                    frontier.push_back(o);
                }
        }
        if (!goal_reachable)
            continue;

        std::ostringstream name;
        name << "random-n" << num_states << "-p" << format_density(edge_density) << "-h" << h_max
             << "-g" << goal_count << "-s" << seed;
        return ExplicitTopology(std::move(t), name.str());
    }
    throw ValidationError("gen_random: no goal-reachable instance after 1000 attempts");
}

// --- sliding tile ---------------------------------------------------------

namespace {

std::vector<StateId> factorials(int n) {
    std::vector<StateId> f(static_cast<std::size_t>(n) + 1, 1);
    for (int i = 1; i <= n; ++i)
        f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i) - 1] * i;
    return f;
}

std::vector<int> goal_permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n - 1; ++i)
        p[static_cast<std::size_t>(i)] = i + 1;
    p[static_cast<std::size_t>(n) - 1] = 0;
    return p;
}

// Cell a tile belongs to in the goal arrangement (blank goes last).
int tile_target_cell(int tile, int n) {
    return tile == 0 ? n - 1 : tile - 1;
}

bool tile_solvable(const std::vector<int> &perm, int rows, int cols) {
    const int n = rows * cols;
    // Parity of the permutation taking each cell's tile to its target
    // cell, via cycle decomposition.
    std::vector<int> to(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        to[static_cast<std::size_t>(i)] = tile_target_cell(perm[static_cast<std::size_t>(i)], n);
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)])
            continue;
        ++cycles;
        int j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = 1;
            j = to[static_cast<std::size_t>(j)];
        }
    }
    const int perm_parity = (n - cycles) % 2;

    // Every blank move is one transposition and changes the blank's
    // Manhattan distance to its target cell by one, so the two parities
    // must agree in any position reachable from the goal.
    int blank_cell = static_cast<int>(std::find(perm.begin(), perm.end(), 0) - perm.begin());
    int target = n - 1;
    int dist = std::abs(blank_cell / cols - target / cols) + std::abs(blank_cell % cols - target % cols);
    return perm_parity == dist % 2;
}

} // namespace

SlidingTile::SlidingTile(int rows, int cols, std::vector<int> start_perm)
    : rows_(rows), cols_(cols), n_(rows * cols) {
    if (rows_ < 2 || cols_ < 2)
        throw ValidationError("sliding tile needs at least a 2x2 board");
    if (n_ > 20)
        throw ValidationError("sliding tile board too large for 64-bit ranking");
    if (static_cast<int>(start_perm.size()) != n_)
        throw ValidationError("tile arrangement has wrong length");
    std::vector<std::uint8_t> present(static_cast<std::size_t>(n_), 0);
    for (int v : start_perm) {
        if (v < 0 || v >= n_ || present[static_cast<std::size_t>(v)])
            throw ValidationError("tile arrangement is not a permutation");
        present[static_cast<std::size_t>(v)] = 1;
    }
    if (!tile_solvable(start_perm, rows_, cols_))
        throw ValidationError("tile arrangement cannot reach the goal (wrong parity)");

    fact_ = factorials(n_);
    id_bound_ = fact_[static_cast<std::size_t>(n_)];
    goal_id_ = rank(goal_permutation(n_));
    initial_ = rank(start_perm);

    std::ostringstream params;
    params << "tile " << rows_ << " " << cols_;
    for (int v : start_perm)
        params << " " << v;
    fingerprint_ = fnv1a(params.str());
    std::ostringstream name;
    name << "tile-" << rows_ << "x" << cols_ << "-id" << initial_;
    name_ = name.str();
}

StateId SlidingTile::rank(const std::vector<int> &perm) const {
    // Lehmer code in mixed-radix factorial base.
    static thread_local std::vector<int> rest;
    rest.resize(static_cast<std::size_t>(n_));
    std::iota(rest.begin(), rest.end(), 0);
    StateId id = 0;
    for (int i = 0; i < n_; ++i) {
        auto it = std::find(rest.begin(), rest.end(), perm[static_cast<std::size_t>(i)]);
        id += static_cast<StateId>(it - rest.begin()) * fact_[static_cast<std::size_t>(n_ - 1 - i)];
        rest.erase(it);
    }
    return id;
}

std::vector<int> SlidingTile::unrank(StateId id) const {
    static thread_local std::vector<int> rest;
    rest.resize(static_cast<std::size_t>(n_));
    std::iota(rest.begin(), rest.end(), 0);
    std::vector<int> perm(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        const StateId f = fact_[static_cast<std::size_t>(n_ - 1 - i)];
        const auto idx = static_cast<std::size_t>(id / f);
        id %= f;
        perm[static_cast<std::size_t>(i)] = rest[idx];
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return perm;
}

HValue SlidingTile::heuristic(StateId s) const {
    const auto perm = unrank(s);
    HValue sum = 0;
    for (int cell = 0; cell < n_; ++cell) {
        const int tile = perm[static_cast<std::size_t>(cell)];
        if (tile == 0)
            continue;
        const int target = tile_target_cell(tile, n_);
        sum += std::abs(cell / cols_ - target / cols_) + std::abs(cell % cols_ - target % cols_);
    }
    return sum;
}

void SlidingTile::successors(StateId s, std::vector<StateId> &out) const {
    out.clear();
    if (s == goal_id_)
        return;
    auto perm = unrank(s);
    const int blank = static_cast<int>(std::find(perm.begin(), perm.end(), 0) - perm.begin());
    const int r = blank / cols_, c = blank % cols_;
    const std::array<std::pair<int, int>, 4> moves{{{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}}};
    for (auto [nr, nc] : moves) {
        if (nr < 0 || nr >= rows_ || nc < 0 || nc >= cols_)
            continue;
        const int other = nr * cols_ + nc;
        std::swap(perm[static_cast<std::size_t>(blank)], perm[static_cast<std::size_t>(other)]);
        out.push_back(rank(perm));
        std::swap(perm[static_cast<std::size_t>(blank)], perm[static_cast<std::size_t>(other)]);
    }
}

std::vector<int> scramble_tile_permutation(int rows, int cols, int steps, std::uint64_t seed) {
    const int n = rows * cols;
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 17);
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto perm = goal_permutation(n);
        int blank = n - 1;
        int forbidden = -1; // cell we just came from; avoid undoing
        for (int step = 0; step < steps; ++step) {
            const int r = blank / cols, c = blank % cols;
            std::array<int, 4> cand{};
            int count = 0;
            if (r > 0 && (r - 1) * cols + c != forbidden)
                cand[static_cast<std::size_t>(count++)] = (r - 1) * cols + c;
            if (r + 1 < rows && (r + 1) * cols + c != forbidden)
                cand[static_cast<std::size_t>(count++)] = (r + 1) * cols + c;
            if (c > 0 && r * cols + c - 1 != forbidden)
                cand[static_cast<std::size_t>(count++)] = r * cols + c - 1;
            if (c + 1 < cols && r * cols + c + 1 != forbidden)
                cand[static_cast<std::size_t>(count++)] = r * cols + c + 1;
            const int pick = cand[static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(count)))];
            std::swap(perm[static_cast<std::size_t>(blank)], perm[static_cast<std::size_t>(pick)]);
            forbidden = blank;
            blank = pick;
        }
        if (perm != goal_permutation(n) || steps == 0)
            return perm;
    }
    return goal_permutation(n); // steps walked back to goal every time; accept
}

// --- grid navigation ------------------------------------------------------

GridNav::GridNav(int rows, int cols, std::vector<std::uint8_t> obstacles)
    : rows_(rows), cols_(cols), obstacles_(std::move(obstacles)) {
    if (rows_ < 1 || cols_ < 1)
        throw ValidationError("grid needs positive dimensions");
    if (obstacles_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_))
        throw ValidationError("obstacle mask has wrong length");
    goal_id_ = static_cast<StateId>(rows_) * cols_ - 1;
    if (obstacles_.front() || obstacles_.back())
        throw ValidationError("start and goal cells must be free");

    std::ostringstream params;
    params << "grid " << rows_ << " " << cols_;
    for (auto o : obstacles_)
        params << " " << int(o);
    fingerprint_ = fnv1a(params.str());
    std::ostringstream name;
    name << "grid-" << rows_ << "x" << cols_;
    name_ = name.str();
}

HValue GridNav::heuristic(StateId s) const {
    const int r = static_cast<int>(s) / cols_, c = static_cast<int>(s) % cols_;
    return std::abs(r - (rows_ - 1)) + std::abs(c - (cols_ - 1));
}

void GridNav::successors(StateId s, std::vector<StateId> &out) const {
    out.clear();
    if (s == goal_id_)
        return;
    const int r = static_cast<int>(s) / cols_, c = static_cast<int>(s) % cols_;
    const std::array<std::pair<int, int>, 4> moves{{{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}}};
    for (auto [nr, nc] : moves) {
        if (nr < 0 || nr >= rows_ || nc < 0 || nc >= cols_)
            continue;
        const StateId t = static_cast<StateId>(nr) * cols_ + nc;
        if (!obstacles_[static_cast<std::size_t>(t)])
            out.push_back(t);
    }
}

GridNav gen_grid(int rows, int cols, double obstacle_density, std::uint64_t seed) {
    if (obstacle_density < 0.0 || obstacle_density > 1.0)
        throw ValidationError("gen_grid needs obstacle_density in [0, 1]");
    const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 101 + attempt);
        std::vector<std::uint8_t> obstacles(n, 0);
        for (std::size_t i = 1; i + 1 < n; ++i)
            obstacles[i] = uniform_unit(rng) < obstacle_density ? 1 : 0;

        GridNav grid(rows, cols, obstacles);
        std::vector<std::uint8_t> seen(n, 0);
        std::deque<StateId> frontier{grid.initial()};
        seen[0] = 1;
        std::vector<StateId> succ;
        bool reached = false;
        while (!frontier.empty()) {
            StateId s = frontier.front();
            frontier.pop_front();
            if (grid.is_goal(s)) {
                reached = true;
                break;
            }
            grid.successors(s, succ);
            for (StateId t : succ)
                if (!seen[static_cast<std::size_t>(t)]) {
                    seen[static_cast<std::size_t>(t)] = 1;
                    frontier.push_back(t);
                }
        }
        if (reached)
            return grid;
    }
    throw ValidationError("gen_grid: no goal-reachable instance after 1000 attempts");
}

// --- materialization ------------------------------------------------------

ExplicitTopology materialize_explicit(const StateSpace &space, StateId cap) {
    std::unordered_map<StateId, StateId> to_new;
    std::vector<StateId> order; // new id -> original id
    std::deque<StateId> frontier;

    auto admit = [&](StateId orig) {
        auto [it, fresh] = to_new.emplace(orig, static_cast<StateId>(order.size()));
        if (fresh) {
            if (static_cast<StateId>(order.size()) >= cap)
                throw ValidationError("materialization exceeds the state-count cap of " +
                                      std::to_string(cap));
            order.push_back(orig);
            frontier.push_back(orig);
        }
        return it->second;
    };

    admit(space.initial());
    std::vector<std::vector<StateId>> succ_new;
    std::vector<StateId> succ;
    while (!frontier.empty()) {
        StateId orig = frontier.front();
        frontier.pop_front();
        space.successors(orig, succ);
        std::vector<StateId> translated;
        translated.reserve(succ.size());
        for (StateId t : succ)
            translated.push_back(admit(t));
        succ_new.push_back(std::move(translated));
    }

    const std::size_t n = order.size();
    TopologyData t;
    t.init = 0;
    t.h.resize(n);
    t.goal.resize(n);
    t.succ.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.h[i] = space.heuristic(order[i]);
        t.goal[i] = space.is_goal(order[i]) ? 1 : 0;
    }
    // succ_new was filled in pop order, which is exactly new-id order.
    t.succ = std::move(succ_new);
    return ExplicitTopology(std::move(t), space.name() + "-explicit");
}

// --- domain specs ---------------------------------------------------------

std::string to_string(DomainKind kind) {
    switch (kind) {
    case DomainKind::ExplicitFile: return "explicit-file";
    case DomainKind::SlidingTile: return "sliding-tile";
    case DomainKind::GridNav: return "grid-nav";
    case DomainKind::PlateauSynthetic: return "plateau-synthetic";
    case DomainKind::RandomGraph: return "random-graph";
    }
    return "?";
}

DomainKind domain_kind_from_string(const std::string &s) {
    if (s == "explicit-file") return DomainKind::ExplicitFile;
    if (s == "sliding-tile") return DomainKind::SlidingTile;
    if (s == "grid-nav") return DomainKind::GridNav;
    if (s == "plateau-synthetic") return DomainKind::PlateauSynthetic;
    if (s == "random-graph") return DomainKind::RandomGraph;
    throw ValidationError("unknown domain kind '" + s + "'");
}

std::string DomainSpec::label() const {
    std::ostringstream os;
    switch (kind) {
    case DomainKind::ExplicitFile: {
        auto slash = path.find_last_of('/');
        os << "file-" << (slash == std::string::npos ? path : path.substr(slash + 1));
        break;
    }
    case DomainKind::SlidingTile:
        os << "tile-" << tile_rows << "x" << tile_cols << "-scr" << tile_scramble << "-s" << seed;
        break;
    case DomainKind::GridNav:
        os << "grid-" << grid_rows << "x" << grid_cols << "-d" << format_density(obstacle_density)
           << "-s" << seed;
        break;
    case DomainKind::PlateauSynthetic:
        os << "plateau-d" << plateau_depth << "-x" << plateau_width;
        break;
    case DomainKind::RandomGraph:
        os << "random-n" << random_states << "-p" << format_density(edge_density) << "-h" << h_max
           << "-g" << goal_count << "-s" << seed;
        break;
    }
    return os.str();
}

std::shared_ptr<const StateSpace> make_domain(const DomainSpec &spec) {
    switch (spec.kind) {
    case DomainKind::ExplicitFile:
        return std::make_shared<ExplicitTopology>(load_topology_file(spec.path));
    case DomainKind::SlidingTile: {
        auto perm = spec.tile_perm.empty()
                        ? scramble_tile_permutation(spec.tile_rows, spec.tile_cols,
                                                    spec.tile_scramble, spec.seed)
                        : spec.tile_perm;
        return std::make_shared<SlidingTile>(spec.tile_rows, spec.tile_cols, std::move(perm));
    }
    case DomainKind::GridNav:
        return std::make_shared<GridNav>(
            gen_grid(spec.grid_rows, spec.grid_cols, spec.obstacle_density, spec.seed));
    case DomainKind::PlateauSynthetic:
        return std::make_shared<ExplicitTopology>(
            gen_plateau(spec.plateau_depth, spec.plateau_width));
    case DomainKind::RandomGraph:
        return std::make_shared<ExplicitTopology>(gen_random(
            spec.random_states, spec.edge_density, spec.h_max, spec.goal_count, spec.seed));
    }
    throw ValidationError("unhandled domain kind");
}

} // namespace psearch
