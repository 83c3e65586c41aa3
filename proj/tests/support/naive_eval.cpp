#include "support/naive_eval.hpp"

#include <algorithm>

#include "xsec/errors.hpp"

namespace xsec::testsupport {

namespace {

int depth_of(const XmlTree& t, int id) {
    int d = 0;
    for (int a = t.parent(id); a >= 0; a = t.parent(a)) ++d;
    return d;
}

bool is_strict_ancestor(const XmlTree& t, int anc, int node) {
    for (int a = t.parent(node); a >= 0; a = t.parent(a))
        if (a == anc) return true;
    return false;
}

bool axis_related(const XmlTree& t, Axis axis, int ctx, int cand) {
    switch (axis) {
        case Axis::Self: return cand == ctx;
        case Axis::Child: return t.parent(cand) == ctx;
        case Axis::Descendant: return is_strict_ancestor(t, ctx, cand);
        case Axis::Parent: return cand == t.parent(ctx);
        case Axis::Ancestor: return is_strict_ancestor(t, cand, ctx);
        case Axis::AncestorOrSelf: return cand == ctx || is_strict_ancestor(t, cand, ctx);
    }
    return false;
}

bool upward(Axis a) {
    return a == Axis::Parent || a == Axis::Ancestor || a == Axis::AncestorOrSelf;
}

std::vector<int> step_candidates(const XmlTree& t, const Path& st, int ctx) {
    std::vector<int> out;
    for (int cand = 0; cand < static_cast<int>(t.size()); ++cand) {
        if (!t.is_element(cand)) continue;
        if (st.label != kWildcard && t.label(cand) != st.label) continue;
        if (axis_related(t, st.axis, ctx, cand)) out.push_back(cand);
    }
    if (upward(st.axis)) {
        // Nearest first: deeper nodes come earlier.
        std::sort(out.begin(), out.end(), [&](int a, int b) {
            return depth_of(t, a) > depth_of(t, b);
        });
    }
    return out;
}

} // namespace

std::vector<int> naive_eval(const XmlTree& t, const PathPtr& p, int ctx) {
    switch (p->kind) {
        case Path::Kind::Step: {
            std::vector<int> cur = step_candidates(t, *p, ctx);
            for (const auto& q : p->quals) {
                if (q->kind == Qual::Kind::Position) {
                    if (q->position >= 1 && q->position <= static_cast<int>(cur.size()))
                        cur = {cur[q->position - 1]};
                    else
                        cur.clear();
                } else {
                    std::vector<int> next;
                    for (int n : cur)
                        if (naive_qual(t, q, n)) next.push_back(n);
                    cur = std::move(next);
                }
            }
            return cur;
        }
        case Path::Kind::Slash: {
            std::vector<int> out;
            for (int n : naive_eval(t, p->left, ctx))
                for (int r : naive_eval(t, p->right, n))
                    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
            return out;
        }
        case Path::Kind::Union: {
            std::vector<int> out;
            for (const auto& b : p->branches)
                for (int r : naive_eval(t, b, ctx))
                    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
            return out;
        }
    }
    return {};
}

bool naive_qual(const XmlTree& t, const QualPtr& q, int node) {
    switch (q->kind) {
        case Qual::Kind::True: return true;
        case Qual::Kind::False: return false;
        case Qual::Kind::And: return naive_qual(t, q->a, node) && naive_qual(t, q->b, node);
        case Qual::Kind::Or: return naive_qual(t, q->a, node) || naive_qual(t, q->b, node);
        case Qual::Kind::Not: return !naive_qual(t, q->a, node);
        case Qual::Kind::PathExists: return !naive_eval(t, q->path, node).empty();
        case Qual::Kind::TextEquals: {
            for (int n : naive_eval(t, q->path, node))
                if (t.text_value(n) == q->text) return true;
            return false;
        }
        case Qual::Kind::NodeEquals: {
            if (q->rhs->label != kWildcard && t.label(node) != q->rhs->label) return false;
            if (!t.is_element(node)) return false;
            std::vector<int> left = naive_eval(t, q->path, node);
            return std::find(left.begin(), left.end(), node) != left.end();
        }
        case Qual::Kind::Position:
            throw FragmentError("position qualifier outside a step qualifier list");
    }
    return false;
}

} // namespace xsec::testsupport
