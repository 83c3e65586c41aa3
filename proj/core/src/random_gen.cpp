#include "xsec/random_gen.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

namespace xsec {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

bool chance(std::mt19937_64& rng, double p) {
    return static_cast<double>(rng() >> 11) / static_cast<double>(1ull << 53) < p;
}

const std::vector<std::string> kVocab = {"disease1", "disease2", "disease3", "v0", "v1", "v2"};

} // namespace

Dtd random_dtd(std::mt19937_64& rng, std::size_t maxTypes, bool recursive) {
    std::size_t n = 2 + pick(rng, maxTypes - 1); // 2..maxTypes
    std::vector<std::string> names{"root"};
    for (std::size_t i = 1; i < n; ++i) names.push_back("t" + std::to_string(i));

    // Skeleton: every non-root type hangs under an earlier type, so all
    // types are reachable and mandatory edges form a DAG.
    std::vector<std::vector<std::pair<std::string, int>>> kids(n); // (child, mode)
    // mode 0: mandatory name, 1: optional (x?), 2: repeated (x*)
    for (std::size_t j = 1; j < n; ++j) {
        std::size_t i = pick(rng, j);
        kids[i].push_back({names[j], static_cast<int>(pick(rng, 3))});
    }
    // Extra optional edges, possibly creating cycles (never into the root).
    std::size_t extras = pick(rng, n);
    for (std::size_t e = 0; e < extras; ++e) {
        std::size_t i = pick(rng, n);
        std::size_t j = 1 + pick(rng, n - 1);
        kids[i].push_back({names[j], 1 + static_cast<int>(pick(rng, 2))});
    }
    if (recursive) {
        // A self-loop, always optional so derivations stay finite.
        std::size_t j = n > 1 ? 1 + pick(rng, n - 1) : 0;
        kids[j].push_back({names[j], 1 + static_cast<int>(pick(rng, 2))});
    }

    std::ostringstream out;
    for (std::size_t i = 0; i < n; ++i) {
        out << "<!ELEMENT " << names[i] << " ";
        if (kids[i].empty()) {
            out << (chance(rng, 0.6) ? "(#PCDATA)" : "EMPTY");
        } else if (chance(rng, 0.4)) {
            // All children optional and repeatable: (a|b|...)*
            std::set<std::string> uniq;
            for (const auto& [c, mode] : kids[i]) uniq.insert(c);
            out << "(";
            bool first = true;
            for (const auto& c : uniq) {
                if (!first) out << "|";
                out << c;
                first = false;
            }
            out << ")*";
        } else {
            out << "(";
            bool first = true;
            for (const auto& [c, mode] : kids[i]) {
                if (!first) out << ",";
                out << c << (mode == 1 ? "?" : mode == 2 ? "*" : "");
                first = false;
            }
            out << ")";
        }
        out << ">\n";
    }
    return parse_dtd(out.str()); // reparse validates reachability
}

namespace {

PathPtr random_qual_path(std::mt19937_64& rng, const Dtd& d, std::size_t depth, bool upward,
                         bool selfSteps);

QualPtr random_qual(std::mt19937_64& rng, const Dtd& d, std::size_t depth, bool upward,
                    bool nodeEquals, bool selfSteps) {
    switch (pick(rng, depth == 0 ? 2 : 6)) {
        case 0: // text comparison
            return Qual::text_equals(random_qual_path(rng, d, depth, upward, selfSteps),
                                     kVocab[pick(rng, kVocab.size())]);
        case 1:
        case 2: // existence
            return Qual::exists(random_qual_path(rng, d, depth, upward, selfSteps));
        case 3:
            return Qual::negate(random_qual(rng, d, depth - 1, upward, nodeEquals, selfSteps));
        case 4:
            return Qual::conj(random_qual(rng, d, depth - 1, upward, nodeEquals, selfSteps),
                              random_qual(rng, d, depth - 1, upward, nodeEquals, selfSteps));
        default:
            if (nodeEquals && chance(rng, 0.5)) {
                std::string label =
                    chance(rng, 0.4) ? kWildcard : d.order[pick(rng, d.order.size())];
                return Qual::node_equals(random_qual_path(rng, d, depth, upward, selfSteps),
                                         Path::step(Axis::Self, label));
            }
            return Qual::disj(random_qual(rng, d, depth - 1, upward, nodeEquals, selfSteps),
                              random_qual(rng, d, depth - 1, upward, nodeEquals, selfSteps));
    }
}

std::string random_label(std::mt19937_64& rng, const Dtd& d) {
    if (chance(rng, 0.25)) return kWildcard;
    return d.order[pick(rng, d.order.size())];
}

Axis random_axis(std::mt19937_64& rng, bool upward, bool selfSteps, bool first) {
    double r = static_cast<double>(rng() >> 11) / static_cast<double>(1ull << 53);
    if (!first && upward) {
        if (r < 0.15) return Axis::Parent;
        if (r < 0.30) return Axis::Ancestor;
    }
    if (selfSteps && r > 0.9) return Axis::Self;
    return r < 0.6 ? Axis::Child : Axis::Descendant;
}

PathPtr random_qual_path(std::mt19937_64& rng, const Dtd& d, std::size_t depth, bool upward,
                         bool selfSteps) {
    std::size_t len = 1 + pick(rng, std::max<std::size_t>(depth, 1));
    PathPtr p;
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<QualPtr> quals;
        if (depth > 0 && chance(rng, 0.25))
            quals.push_back(random_qual(rng, d, depth - 1, upward, false, selfSteps));
        PathPtr st = Path::step(random_axis(rng, upward, selfSteps, false), random_label(rng, d),
                                std::move(quals));
        p = p ? Path::slash(std::move(p), std::move(st)) : std::move(st);
    }
    return p;
}

} // namespace

AccessSpec random_spec(std::mt19937_64& rng, const Dtd& d, std::size_t maxAnn) {
    ReachIndex idx = build_reach_index(d);
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& p : d.order)
        for (const auto& c : idx.children.at(p)) edges.push_back({p, c});

    std::ostringstream out;
    std::set<std::pair<std::string, std::string>> used;
    std::size_t want = maxAnn == 0 ? 0 : pick(rng, maxAnn + 1);
    for (std::size_t i = 0; i < want && used.size() < edges.size(); ++i) {
        const auto& e = edges[pick(rng, edges.size())];
        if (!used.insert(e).second) continue;
        out << "ann(" << e.first << "," << e.second << ") = ";
        switch (pick(rng, 5)) {
            case 0: out << "Y"; break;
            case 1: out << "N"; break;
            case 2: out << "N_h"; break;
            case 3:
                out << "[" << serialize(random_qual(rng, d, 2, false, false, false)) << "]";
                break;
            default:
                out << "[" << serialize(random_qual(rng, d, 2, false, false, false)) << "]_h";
                break;
        }
        out << "\n";
    }
    return parse_spec(out.str(), d);
}

PathPtr random_query(std::mt19937_64& rng, const Dtd& d, const QueryOptions& opt) {
    std::size_t len = 1 + pick(rng, opt.maxDepth);
    PathPtr p;
    for (std::size_t i = 0; i < len; ++i) {
        Axis axis = random_axis(rng, opt.upward, false, i == 0);
        std::vector<QualPtr> quals;
        if (chance(rng, 0.45))
            quals.push_back(
                random_qual(rng, d, 2, opt.upward, opt.nodeEquals, opt.selfSteps));
        if (opt.positions && chance(rng, 0.25))
            quals.push_back(Qual::at_position(1 + static_cast<int>(pick(rng, 3))));
        PathPtr st = Path::step(axis, random_label(rng, d), std::move(quals));
        p = p ? Path::slash(std::move(p), std::move(st)) : std::move(st);
    }
    if (chance(rng, 0.15)) {
        QueryOptions sub = opt;
        sub.maxDepth = std::max<std::size_t>(1, opt.maxDepth - 1);
        return Path::alternatives({p, random_query(rng, d, sub)});
    }
    return p;
}

} // namespace xsec
