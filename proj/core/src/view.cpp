#include "xsec/view.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace xsec {

namespace {

/// Walks productions with the inherited-accessibility flag, memoized per
/// (type, access). A re-entrant call on an in-progress entry contributes
/// nothing (the enclosing call completes the entry); this keeps recursion
/// finite at the cost of under-approximating spliced content inside fully
/// hidden cycles, which is why type reachability is computed separately.
class Deriver {
public:
    explicit Deriver(const AccessSpec& s) : s_(s) {}

    ContentPtr exp_type(const std::string& a, bool access) {
        auto key = std::make_pair(a, access);
        auto it = parsed_.find(key);
        if (it != parsed_.end()) return it->second.done ? it->second.cm : nullptr;
        parsed_[key] = {};
        ContentPtr e = exp_cm(s_.dtd.production(a), a, access);
        if (!e && access) e = ContentModel::empty();
        parsed_[key] = {true, e};
        return e;
    }

    bool in_view(const std::string& a) const {
        auto it = parsed_.find({a, true});
        return it != parsed_.end() && it->second.done && it->second.cm != nullptr;
    }

    std::size_t visits() const { return visits_; }

private:
    ContentPtr exp_name(const std::string& a, const std::string& b, bool access) {
        const AnnValue* ann = s_.find(a, b);
        if (!ann) {
            if (!access) return exp_type(b, false);
            exp_type(b, true);
            return ContentModel::element(b);
        }
        switch (ann->kind) {
            case AnnValue::Kind::Allow:
            case AnnValue::Kind::CondDown:
                // A failing downward-closed qualifier removes the whole
                // subtree, so nothing of b's content ever splices upward.
                exp_type(b, true);
                return ContentModel::element(b);
            case AnnValue::Kind::Deny:
                return exp_type(b, false);
            case AnnValue::Kind::DenyDown:
                // Downward-closed denial: no descendant can regrant access.
                return nullptr;
            case AnnValue::Kind::Cond: {
                // b appears when its qualifier holds; when it fails, b's
                // regranted content is promoted in b's place.
                exp_type(b, true);
                ContentPtr spliced = exp_type(b, false);
                if (!spliced) return ContentModel::element(b);
                return dedup_alt({ContentModel::element(b), std::move(spliced)});
            }
        }
        return nullptr;
    }

    ContentPtr exp_cm(const ContentPtr& cm, const std::string& a, bool access) {
        ++visits_;
        switch (cm->kind) {
            case ContentModel::Kind::Text:
                return access ? ContentModel::text() : nullptr;
            case ContentModel::Kind::Empty:
                return access ? ContentModel::empty() : nullptr;
            case ContentModel::Kind::Name:
                return exp_name(a, cm->name, access);
            case ContentModel::Kind::Star: {
                ContentPtr inner = exp_cm(cm->kids[0], a, access);
                return inner ? ContentModel::star(std::move(inner)) : nullptr;
            }
            case ContentModel::Kind::Seq: {
                std::vector<ContentPtr> parts;
                for (const auto& k : cm->kids)
                    if (ContentPtr p = exp_cm(k, a, access)) parts.push_back(std::move(p));
                if (parts.empty()) return nullptr;
                return ContentModel::seq(std::move(parts));
            }
            case ContentModel::Kind::Alt: {
                std::vector<ContentPtr> parts;
                for (const auto& k : cm->kids)
                    if (ContentPtr p = exp_cm(k, a, access)) parts.push_back(std::move(p));
                if (parts.empty()) return nullptr;
                return dedup_alt(std::move(parts));
            }
        }
        return nullptr;
    }

    static ContentPtr dedup_alt(std::vector<ContentPtr> parts) {
        std::vector<ContentPtr> unique;
        for (auto& p : parts) {
            bool seen = std::any_of(unique.begin(), unique.end(),
                                    [&](const ContentPtr& u) { return content_equal(u, p); });
            if (!seen) unique.push_back(std::move(p));
        }
        return ContentModel::alt(std::move(unique));
    }

    const AccessSpec& s_;
    struct Entry {
        bool done = false;
        ContentPtr cm;
    };
    std::map<std::pair<std::string, bool>, Entry> parsed_;
    std::size_t visits_ = 0;
};

/// Types that can be hidden at a node while some descendant stays visible
/// (their children are promoted past them in the materialized view): targets
/// of overridable denials/conditions, closed over unannotated inheritance.
std::set<std::string> promotably_hidden(const AccessSpec& s, const ReachIndex& idx) {
    std::set<std::string> prh;
    for (const auto& [edge, value] : s.ann)
        if (value.kind == AnnValue::Kind::Deny || value.kind == AnnValue::Kind::Cond)
            prh.insert(edge.second);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : s.dtd.order) {
            if (!prh.count(p)) continue;
            for (const auto& c : idx.children.at(p))
                if (!s.find(p, c) && prh.insert(c).second) changed = true;
        }
    }
    return prh;
}

} // namespace

DtdView derive_view(const AccessSpec& s) {
    const Dtd& d = s.dtd;
    Deriver deriver(s);
    deriver.exp_type(d.root, true);

    std::set<std::string> kept;
    for (const auto& name : d.order)
        if (deriver.in_view(name)) kept.insert(name);

    // Keep only types reachable from the root inside the view productions.
    std::set<std::string> reachable{d.root};
    std::vector<std::string> work{d.root};
    while (!work.empty()) {
        std::string cur = work.back();
        work.pop_back();
        for (const auto& c : content_names(deriver.exp_type(cur, true)))
            if (kept.count(c) && reachable.insert(c).second) work.push_back(c);
    }

    DtdView out;
    out.view.root = d.root;
    for (const auto& name : d.order) {
        if (kept.count(name) && reachable.count(name)) {
            out.view.order.push_back(name);
            out.view.productions.emplace(name, deriver.exp_type(name, true));
        } else {
            out.elided.push_back(name);
        }
    }
    out.visit_count = deriver.visits();

    // Type-level reach over the materialized views: B is a possible view
    // child of A iff the original DTD has a path from A to B whose
    // intermediate types can all be hidden with promotion.
    ReachIndex orig = build_reach_index(d);
    std::set<std::string> prh = promotably_hidden(s, orig);
    for (const auto& a : out.view.order) {
        std::set<std::string> result, visited;
        std::vector<std::string> frontier{a};
        while (!frontier.empty()) {
            std::string cur = frontier.back();
            frontier.pop_back();
            for (const auto& c : orig.children.at(cur)) {
                if (out.view.has_type(c)) result.insert(c);
                if (prh.count(c) && visited.insert(c).second) frontier.push_back(c);
            }
        }
        std::vector<std::string> sorted(result.begin(), result.end());
        std::sort(sorted.begin(), sorted.end(), [&](const std::string& x, const std::string& y) {
            return out.view.decl_index(x) < out.view.decl_index(y);
        });
        out.reach.children[a] = std::move(sorted);
    }
    // Transitive closure for descendant reach.
    for (const auto& a : out.view.order) {
        std::set<std::string> seen;
        std::vector<std::string> work2{a};
        while (!work2.empty()) {
            std::string cur = work2.back();
            work2.pop_back();
            for (const auto& c : out.reach.children.at(cur))
                if (seen.insert(c).second) work2.push_back(c);
        }
        std::vector<std::string> sorted(seen.begin(), seen.end());
        std::sort(sorted.begin(), sorted.end(), [&](const std::string& x, const std::string& y) {
            return out.view.decl_index(x) < out.view.decl_index(y);
        });
        out.reach.descendants[a] = std::move(sorted);
    }
    return out;
}

ViewStats view_stats(const DtdView& v) {
    return {v.view.order.size(), v.elided.size(), is_recursive(v.view)};
}

} // namespace xsec
