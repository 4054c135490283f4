#include "relaynet/lattice.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

// Unique least element of the upper (or greatest of the lower) bounds of a and b.
std::optional<int> bound(const std::vector<bool> &leq, int n, int a, int b, bool upper) {
    auto le = [&](int x, int y) { return leq[static_cast<std::size_t>(x * n + y)]; };
    std::vector<int> candidates;
    for (int c = 0; c < n; ++c) {
        if (upper ? (le(a, c) && le(b, c)) : (le(c, a) && le(c, b))) {
            candidates.push_back(c);
        }
    }
    for (int c : candidates) {
        bool best = true;
        for (int d : candidates) {
            if (upper ? !le(c, d) : !le(d, c)) {
                best = false;
                break;
            }
        }
        if (best) {
            return c;
        }
    }
    return std::nullopt;
}

}  // namespace

Lattice Lattice::from_relation(std::vector<std::string> elements,
                               const std::vector<std::pair<std::string, std::string>> &leq) {
    if (elements.empty()) {
        throw ValidationError("a lattice needs at least one element");
    }
    Lattice out;
    out.labels_ = std::move(elements);
    const int n = out.size();
    std::map<std::string, int> seen;
    for (int i = 0; i < n; ++i) {
        if (!seen.emplace(out.labels_[static_cast<std::size_t>(i)], i).second) {
            throw ValidationError("duplicate lattice element '" + out.labels_[static_cast<std::size_t>(i)] + "'");
        }
    }
    auto &rel = out.leq_;
    rel.assign(static_cast<std::size_t>(n * n), false);
    auto at = [n](int a, int b) { return static_cast<std::size_t>(a * n + b); };
    for (int i = 0; i < n; ++i) {
        rel[at(i, i)] = true;
    }
    for (const auto &[a, b] : leq) {
        rel[at(out.index(a), out.index(b))] = true;
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (rel[at(i, k)] && rel[at(k, j)]) {
                    rel[at(i, j)] = true;
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rel[at(i, j)] && rel[at(j, i)]) {
                throw ValidationError("order is not antisymmetric: " + out.label(i) + " and " + out.label(j));
            }
        }
    }
    out.join_.resize(static_cast<std::size_t>(n * n));
    out.meet_.resize(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            auto j = bound(rel, n, a, b, true);
            auto m = bound(rel, n, a, b, false);
            if (!j || !m) {
                throw ValidationError("not a lattice: " + out.label(a) + " and " + out.label(b) +
                                      " lack a unique " + (j ? "meet" : "join"));
            }
            out.join_[at(a, b)] = *j;
            out.meet_[at(a, b)] = *m;
        }
    }
    out.bottom_ = 0;
    out.top_ = 0;
    for (int i = 1; i < n; ++i) {
        out.bottom_ = out.meet(out.bottom_, i);
        out.top_ = out.join(out.top_, i);
    }
    return out;
}

Lattice Lattice::from_json(const Json &j) {
    try {
        std::vector<std::string> elements = j.at("elements").get<std::vector<std::string>>();
        std::vector<std::pair<std::string, std::string>> leq;
        for (const auto &pair : j.at("leq")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ValidationError("each leq entry must be a pair of labels");
            }
            leq.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
        }
        return from_relation(std::move(elements), leq);
    } catch (const Json::exception &e) {
        throw ValidationError(std::string("malformed lattice JSON: ") + e.what());
    }
}

Lattice Lattice::chain(int n) {
    if (n < 1) {
        throw ValidationError("a chain needs at least one element");
    }
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> leq;
    for (int i = 0; i < n; ++i) {
        elements.push_back(std::to_string(i));
        if (i > 0) {
            leq.emplace_back(std::to_string(i - 1), std::to_string(i));
        }
    }
    return from_relation(std::move(elements), leq);
}

Lattice Lattice::diamond() {
    return from_relation({"00", "01", "10", "11"}, {{"00", "01"}, {"00", "10"}, {"01", "11"}, {"10", "11"}});
}

Lattice Lattice::load(const std::string &spec) {
    if (spec == "diamond") {
        return diamond();
    }
    if (spec.rfind("chain:", 0) == 0) {
        const std::string count = spec.substr(6);
        if (count.empty() || count.find_first_not_of("0123456789") != std::string::npos) {
            throw ValidationError("bad chain size in '" + spec + "'");
        }
        return chain(std::stoi(count));
    }
    std::ifstream in(spec);
    if (!in) {
        throw ValidationError("cannot read lattice file '" + spec + "'");
    }
    Json j;
    try {
        in >> j;
    } catch (const Json::exception &e) {
        throw ValidationError("lattice file '" + spec + "' is not JSON: " + e.what());
    }
    return from_json(j);
}

int Lattice::index(const std::string &label) const {
    for (int i = 0; i < size(); ++i) {
        if (labels_[static_cast<std::size_t>(i)] == label) {
            return i;
        }
    }
    throw ValidationError("unknown lattice element '" + label + "'");
}

Json Lattice::to_json() const {
    Json out = Json::object();
    out["elements"] = labels_;
    Json leq = Json::array();
    // Covering pairs only.
    for (int a = 0; a < size(); ++a) {
        for (int b = 0; b < size(); ++b) {
            if (a == b || !this->leq(a, b)) {
                continue;
            }
            bool covers = true;
            for (int c = 0; c < size(); ++c) {
                if (c != a && c != b && this->leq(a, c) && this->leq(c, b)) {
                    covers = false;
                    break;
                }
            }
            if (covers) {
                leq.push_back(Json::array({label(a), label(b)}));
            }
        }
    }
    out["leq"] = std::move(leq);
    return out;
}

LatticeDistribution::LatticeDistribution(LatticePtr lattice, std::vector<Rational> probs)
    : lattice_(std::move(lattice)), probs_(std::move(probs)) {
    if (!lattice_) {
        throw ValidationError("lattice distribution without a lattice");
    }
    if (static_cast<int>(probs_.size()) != lattice_->size()) {
        throw DimensionError("lattice has " + std::to_string(lattice_->size()) + " elements but " +
                             std::to_string(probs_.size()) + " probabilities were given");
    }
    Rational total(0);
    for (const auto &p : probs_) {
        if (p.sign() < 0) {
            throw ValidationError("negative probability " + p.str());
        }
        total += p;
    }
    if (total != Rational(1)) {
        throw ValidationError("probabilities sum to " + total.str() + ", not 1");
    }
}

LatticeDistribution LatticeDistribution::point(LatticePtr lattice, int element) {
    std::vector<Rational> probs(static_cast<std::size_t>(lattice->size()), Rational(0));
    probs.at(static_cast<std::size_t>(element)) = Rational(1);
    return LatticeDistribution(std::move(lattice), std::move(probs));
}

LatticeDistribution LatticeDistribution::parse(LatticePtr lattice, const std::string &csv) {
    std::vector<Rational> probs;
    std::stringstream in(csv);
    std::string part;
    while (std::getline(in, part, ',')) {
        probs.push_back(Rational::parse(part));
    }
    return LatticeDistribution(std::move(lattice), std::move(probs));
}

std::vector<std::string> LatticeDistribution::to_strings() const {
    std::vector<std::string> out;
    for (const auto &p : probs_) {
        out.push_back(p.str());
    }
    return out;
}

std::string LatticeDistribution::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        out += (i ? "," : "") + probs_[i].str();
    }
    return out + ")";
}

LatticeDistribution compose_lattice(const LatticeDistribution &p, const LatticeDistribution &q, LatticeOp op) {
    const Lattice &l = *p.lattice();
    if (!(l == *q.lattice())) {
        throw ValidationError("cannot compose distributions over different lattices");
    }
    std::vector<Rational> out(static_cast<std::size_t>(l.size()), Rational(0));
    for (int x = 0; x < l.size(); ++x) {
        if (p[x].is_zero()) {
            continue;
        }
        for (int y = 0; y < l.size(); ++y) {
            if (q[y].is_zero()) {
                continue;
            }
            const int e = op == LatticeOp::join ? l.join(x, y) : l.meet(x, y);
            out[static_cast<std::size_t>(e)] += p[x] * q[y];
        }
    }
    return LatticeDistribution(p.lattice(), std::move(out));
}

namespace {

struct Explorer {
    struct Entry {
        LatticeDistribution dist;
        std::string expr;
    };

    const SearchSpec &spec;
    std::vector<Entry> entries;
    std::map<std::vector<Rational>, std::size_t> seen;
    std::vector<std::vector<std::size_t>> levels;

    explicit Explorer(const SearchSpec &s) : spec(s) {
        if (!spec.lattice) {
            throw ValidationError("search needs a lattice");
        }
        if (spec.max_switches < 1) {
            throw ValidationError("max switches must be at least 1");
        }
        if (!(*spec.target.lattice() == *spec.lattice)) {
            throw ValidationError("target is over a different lattice");
        }
        for (const auto &s : spec.switch_set) {
            if (!(*s.lattice() == *spec.lattice)) {
                throw ValidationError("switch set entry is over a different lattice");
            }
        }
    }

    // Returns true when the target has been reached.
    bool add(LatticeDistribution d, std::string expr, int level) {
        auto [it, inserted] = seen.emplace(d.probs(), entries.size());
        if (!inserted) {
            return false;
        }
        if (entries.size() >= spec.cap) {
            throw CapacityError("lattice search exceeded " + std::to_string(spec.cap) + " distinct distributions");
        }
        const bool hit = d == spec.target;
        entries.push_back(Entry{std::move(d), std::move(expr)});
        levels[static_cast<std::size_t>(level - 1)].push_back(it->second);
        return hit;
    }

    // Runs until the target appears (when stop_on_target) or all levels are built.
    std::optional<std::size_t> run(bool stop_on_target) {
        levels.assign(static_cast<std::size_t>(spec.max_switches), {});
        const Lattice &l = *spec.lattice;
        std::optional<std::size_t> found;
        auto note = [&](bool hit) {
            if (hit && !found) {
                found = entries.size() - 1;
            }
        };
        for (const auto &s : spec.switch_set) {
            note(add(s, s.str(), 1));
        }
        if (spec.include_deterministic) {
            for (int e = 0; e < l.size(); ++e) {
                note(add(LatticeDistribution::point(spec.lattice, e), "det(" + l.label(e) + ")", 1));
            }
        }
        for (int k = 2; k <= spec.max_switches && !(found && stop_on_target); ++k) {
            for (int i = 1; i <= k / 2 && !(found && stop_on_target); ++i) {
                // Copy: `levels` grows while we iterate.
                const auto left = levels[static_cast<std::size_t>(i - 1)];
                const auto right = levels[static_cast<std::size_t>(k - i - 1)];
                for (std::size_t a = 0; a < left.size(); ++a) {
                    for (std::size_t b = i == k - i ? a : 0; b < right.size(); ++b) {
                        const Entry x = entries[left[a]];
                        const Entry y = entries[right[b]];
                        for (auto op : {LatticeOp::join, LatticeOp::meet}) {
                            const char *sym = op == LatticeOp::join ? " + " : " * ";
                            note(add(compose_lattice(x.dist, y.dist, op), "(" + x.expr + sym + y.expr + ")", k));
                            if (found && stop_on_target) {
                                return found;
                            }
                        }
                    }
                }
            }
        }
        return found;
    }

    int level_of(std::size_t entry) const {
        for (std::size_t k = 0; k < levels.size(); ++k) {
            for (auto e : levels[k]) {
                if (e == entry) {
                    return static_cast<int>(k) + 1;
                }
            }
        }
        return 0;
    }
};

}  // namespace

SearchResult search_expressible(const SearchSpec &spec) {
    Explorer explorer(spec);
    const auto found = explorer.run(true);
    SearchResult out;
    out.explored = explorer.entries.size();
    out.max_switches = spec.max_switches;
    if (found) {
        out.found = true;
        out.witness = explorer.entries[*found].expr;
        out.switches = explorer.level_of(*found);
    }
    return out;
}

std::vector<std::vector<LatticeDistribution>> enumerate_expressible(const SearchSpec &spec) {
    Explorer explorer(spec);
    explorer.run(false);
    std::vector<std::vector<LatticeDistribution>> out;
    for (const auto &level : explorer.levels) {
        std::vector<LatticeDistribution> dists;
        for (auto e : level) {
            dists.push_back(explorer.entries[e].dist);
        }
        out.push_back(std::move(dists));
    }
    return out;
}

std::string SearchResult::message() const {
    if (found) {
        return "realized with " + std::to_string(switches) + " switch" + (switches == 1 ? "" : "es");
    }
    return "not realizable within explored space (" + std::to_string(explored) +
           " distinct distributions, up to " + std::to_string(max_switches) + " switches)";
}

Json SearchResult::to_json() const {
    Json out = Json::object();
    out["realizable"] = found;
    out["message"] = message();
    out["explored"] = explored;
    out["max_switches"] = max_switches;
    if (found) {
        out["switches"] = switches;
        out["witness"] = witness;
    }
    return out;
}

}  // namespace relaynet
