#include "xsec/eval.hpp"

#include <algorithm>
#include <set>

#include "xsec/errors.hpp"

namespace xsec {

namespace {

bool label_matches(const XmlTree& t, int id, const std::string& label) {
    return t.is_element(id) && (label == kWildcard || t.label(id) == label);
}

void axis_nodes(const XmlTree& t, Axis axis, int ctx, NodeSet& out) {
    switch (axis) {
        case Axis::Self:
            out.push_back(ctx);
            break;
        case Axis::Child:
            for (int k : t.children(ctx)) out.push_back(k);
            break;
        case Axis::Descendant: {
            // Preorder ids make the subtree a contiguous walk.
            std::vector<int> stack(t.children(ctx).rbegin(), t.children(ctx).rend());
            while (!stack.empty()) {
                int n = stack.back();
                stack.pop_back();
                out.push_back(n);
                const auto& kids = t.children(n);
                stack.insert(stack.end(), kids.rbegin(), kids.rend());
            }
            break;
        }
        case Axis::Parent:
            if (t.parent(ctx) >= 0) out.push_back(t.parent(ctx));
            break;
        case Axis::Ancestor:
            for (int a = t.parent(ctx); a >= 0; a = t.parent(a)) out.push_back(a);
            break;
        case Axis::AncestorOrSelf:
            for (int a = ctx; a >= 0; a = t.parent(a)) out.push_back(a);
            break;
    }
}

NodeSet eval_step(const XmlTree& t, const Path& step, int ctx) {
    NodeSet all;
    axis_nodes(t, step.axis, ctx, all);
    NodeSet cur;
    for (int n : all)
        if (label_matches(t, n, step.label)) cur.push_back(n);
    for (const auto& q : step.quals) {
        if (q->kind == Qual::Kind::Position) {
            // Position indexes the candidate list in axis order (so [1] on
            // an upward axis is the nearest matching ancestor).
            int i = q->position;
            if (i >= 1 && i <= static_cast<int>(cur.size()))
                cur = {cur[i - 1]};
            else
                cur.clear();
        } else {
            NodeSet kept;
            for (int n : cur)
                if (eval_qual(t, q, n)) kept.push_back(n);
            cur = std::move(kept);
        }
        if (cur.empty()) break;
    }
    return cur;
}

void append_unique(NodeSet& out, const NodeSet& add, std::set<int>& seen) {
    for (int n : add)
        if (seen.insert(n).second) out.push_back(n);
}

} // namespace

NodeSet eval(const XmlTree& t, const PathPtr& p, int context) {
    switch (p->kind) {
        case Path::Kind::Step:
            return eval_step(t, *p, context);
        case Path::Kind::Slash: {
            NodeSet left = eval(t, p->left, context);
            NodeSet out;
            std::set<int> seen;
            for (int n : left) append_unique(out, eval(t, p->right, n), seen);
            return out;
        }
        case Path::Kind::Union: {
            NodeSet out;
            std::set<int> seen;
            for (const auto& b : p->branches) append_unique(out, eval(t, b, context), seen);
            return out;
        }
    }
    return {};
}

bool eval_qual(const XmlTree& t, const QualPtr& q, int node) {
    switch (q->kind) {
        case Qual::Kind::True:
            return true;
        case Qual::Kind::False:
            return false;
        case Qual::Kind::PathExists:
            return !eval(t, q->path, node).empty();
        case Qual::Kind::TextEquals: {
            for (int n : eval(t, q->path, node))
                if (t.text_value(n) == q->text) return true;
            return false;
        }
        case Qual::Kind::NodeEquals: {
            // [p = self::X]: some node of p is the context node itself, and
            // the context node matches X.
            if (!label_matches(t, node, q->rhs->label)) return false;
            NodeSet left = eval(t, q->path, node);
            return std::find(left.begin(), left.end(), node) != left.end();
        }
        case Qual::Kind::And:
            return eval_qual(t, q->a, node) && eval_qual(t, q->b, node);
        case Qual::Kind::Or:
            return eval_qual(t, q->a, node) || eval_qual(t, q->b, node);
        case Qual::Kind::Not:
            return !eval_qual(t, q->a, node);
        case Qual::Kind::Position:
            throw FragmentError("position qualifier outside a step qualifier list");
    }
    return false;
}

bool oracle_accessible(const XmlTree& t, const AccessSpec& s, int node) {
    if (!t.is_element(node)) {
        int p = t.parent(node);
        return p >= 0 && oracle_accessible(t, s, p);
    }
    // (ii) subtree safety: no hereditary denial strictly above.
    for (int a = node; t.parent(a) >= 0; a = t.parent(a)) {
        int parent = t.parent(a);
        const AnnValue* v = s.find(t.label(parent), t.label(a));
        if (!v || !v->hereditary()) continue;
        if (a == node) continue; // the node's own edge is handled below
        if (v->kind == AnnValue::Kind::DenyDown) return false;
        if (!eval_qual(t, v->qual, a)) return false;
    }
    // (i) the nearest concerned self-or-ancestor must grant access.
    for (int a = node;; a = t.parent(a)) {
        int parent = t.parent(a);
        if (parent < 0) return true; // reached the root: implicitly granted
        const AnnValue* v = s.find(t.label(parent), t.label(a));
        if (!v) continue;
        switch (v->kind) {
            case AnnValue::Kind::Allow:
                return true;
            case AnnValue::Kind::Deny:
            case AnnValue::Kind::DenyDown:
                return false;
            case AnnValue::Kind::Cond:
            case AnnValue::Kind::CondDown:
                return eval_qual(t, v->qual, a);
        }
    }
}

namespace {

void collect_view(const XmlTree& t, const AccessSpec& s, int orig, int viewParent,
                  Materialized& m, const std::vector<bool>& acc) {
    for (int k : t.children(orig)) {
        if (!t.is_element(k)) {
            // Text survives only in place under its own (retained) parent.
            if (acc[orig]) {
                m.view.add(XmlNode::Kind::Text, t.label(k), viewParent);
                m.toOriginal.push_back(k);
            }
            continue;
        }
        if (acc[k]) {
            int id = m.view.add(XmlNode::Kind::Element, t.label(k), viewParent);
            m.toOriginal.push_back(k);
            collect_view(t, s, k, id, m, acc);
        } else {
            // Promote accessible descendants past the hidden element.
            collect_view(t, s, k, viewParent, m, acc);
        }
    }
}

} // namespace

Materialized materialize(const XmlTree& t, const AccessSpec& s) {
    std::vector<bool> acc(t.size());
    for (int id = 0; id < static_cast<int>(t.size()); ++id)
        if (t.is_element(id)) acc[id] = oracle_accessible(t, s, id);
    Materialized m;
    int rootId = m.view.add(XmlNode::Kind::Element, t.label(t.root()), -1);
    m.toOriginal.push_back(t.root());
    collect_view(t, s, t.root(), rootId, m, acc);
    return m;
}

bool answer_equal(const NodeSet& viewAnswer, const Materialized& m, const NodeSet& original) {
    std::set<int> got;
    for (int v : viewAnswer) got.insert(m.toOriginal[v]);
    std::set<int> want(original.begin(), original.end());
    return got == want;
}

} // namespace xsec
