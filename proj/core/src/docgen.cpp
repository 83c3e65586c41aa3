#include "xsec/docgen.hpp"

#include <limits>
#include <map>
#include <random>

#include "xsec/errors.hpp"

namespace xsec {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

std::size_t cm_height(const ContentPtr& cm, const std::map<std::string, std::size_t>& h) {
    switch (cm->kind) {
        case ContentModel::Kind::Text:
        case ContentModel::Kind::Empty:
            return 0;
        case ContentModel::Kind::Name: {
            auto it = h.find(cm->name);
            return it == h.end() ? kInf : it->second;
        }
        case ContentModel::Kind::Star:
            return 0; // may be empty
        case ContentModel::Kind::Seq: {
            std::size_t m = 0;
            for (const auto& k : cm->kids) {
                std::size_t v = cm_height(k, h);
                if (v == kInf) return kInf;
                m = std::max(m, v);
            }
            return m;
        }
        case ContentModel::Kind::Alt: {
            std::size_t m = kInf;
            for (const auto& k : cm->kids) m = std::min(m, cm_height(k, h));
            return m;
        }
    }
    return kInf;
}

/// Minimal subtree height per type (fixpoint over shortest derivations).
std::map<std::string, std::size_t> min_heights(const Dtd& d) {
    std::map<std::string, std::size_t> h;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& t : d.order) {
            std::size_t v = cm_height(d.production(t), h);
            if (v == kInf) continue;
            auto it = h.find(t);
            if (it == h.end() || it->second > v + 1) {
                h[t] = v + 1;
                changed = true;
            }
        }
    }
    for (const auto& t : d.order)
        if (!h.count(t)) throw NonTerminatingError(t);
    return h;
}

class Generator {
public:
    Generator(const Dtd& d, const GenOptions& opt)
        : d_(d), opt_(opt), rng_(opt.seed), heights_(min_heights(d)) {}

    XmlTree run() {
        XmlTree t;
        int root = t.add(XmlNode::Kind::Element, d_.root, -1);
        fill(t, root, d_.production(d_.root), 1);
        return t;
    }

private:
    bool budget_left(const XmlTree& t) const { return t.size() < opt_.targetNodes; }

    double chance() { return static_cast<double>(rng_() >> 11) / static_cast<double>(1ull << 53); }

    void fill(XmlTree& t, int node, const ContentPtr& cm, std::size_t depth) {
        switch (cm->kind) {
            case ContentModel::Kind::Empty:
                return;
            case ContentModel::Kind::Text:
                t.add(XmlNode::Kind::Text, opt_.textVocab[rng_() % opt_.textVocab.size()],
                      node);
                return;
            case ContentModel::Kind::Name: {
                int child = t.add(XmlNode::Kind::Element, cm->name, node);
                fill(t, child, d_.production(cm->name), depth + 1);
                return;
            }
            case ContentModel::Kind::Seq:
                for (const auto& k : cm->kids) fill(t, node, k, depth);
                return;
            case ContentModel::Kind::Alt: {
                const ContentPtr* pick;
                if (depth >= opt_.maxDepth || !budget_left(t)) {
                    // Shortest derivation wins when cutting off.
                    pick = &cm->kids[0];
                    std::size_t best = cm_height(cm->kids[0], heights_);
                    for (const auto& k : cm->kids) {
                        std::size_t v = cm_height(k, heights_);
                        if (v < best) {
                            best = v;
                            pick = &k;
                        }
                    }
                } else {
                    pick = &cm->kids[rng_() % cm->kids.size()];
                }
                fill(t, node, *pick, depth);
                return;
            }
            case ContentModel::Kind::Star:
                while (depth < opt_.maxDepth && budget_left(t) && chance() < opt_.starP)
                    fill(t, node, cm->kids[0], depth);
                return;
        }
    }

    const Dtd& d_;
    const GenOptions& opt_;
    std::mt19937_64 rng_;
    std::map<std::string, std::size_t> heights_;
};

} // namespace

XmlTree generate(const Dtd& d, const GenOptions& opt) { return Generator(d, opt).run(); }

} // namespace xsec
