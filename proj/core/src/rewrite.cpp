#include "xsec/rewrite.hpp"

#include <algorithm>
#include <set>

#include "xsec/errors.hpp"

namespace xsec {

namespace {

struct StepRef {
    Axis axis;
    std::string label;
    std::vector<QualPtr> quals;
};

using StepSeq = std::vector<StepRef>;

/// Expand a path into a union of plain step sequences (embedded unions
/// multiply out; qualifiers stay attached to their steps).
std::vector<StepSeq> expand(const PathPtr& p) {
    switch (p->kind) {
        case Path::Kind::Step:
            return {{StepRef{p->axis, p->label, p->quals}}};
        case Path::Kind::Slash: {
            std::vector<StepSeq> out;
            for (const auto& l : expand(p->left))
                for (const auto& r : expand(p->right)) {
                    StepSeq seq = l;
                    seq.insert(seq.end(), r.begin(), r.end());
                    out.push_back(std::move(seq));
                }
            return out;
        }
        case Path::Kind::Union: {
            std::vector<StepSeq> out;
            for (const auto& b : p->branches)
                for (auto& seq : expand(b)) out.push_back(std::move(seq));
            return out;
        }
    }
    return {};
}

bool is_true(const QualPtr& q) { return q->kind == Qual::Kind::True; }
bool is_false(const QualPtr& q) { return q->kind == Qual::Kind::False; }

class Rewriter {
public:
    Rewriter(const RewriteContext& c, bool fast, std::string context)
        : c_(c), fast_(fast), start_(std::move(context)) {
        if (start_.empty()) start_ = c_.view.view.root;
        aPlus1_ = Path::with_qual(c_.kit.aPlus, Qual::at_position(1));
    }

    RewriteResult run(const PathPtr& q) {
        FragmentClass cls = classify(q);
        if (cls == FragmentClass::XUpPos || cls == FragmentClass::XUpPosEq)
            throw FragmentError("rewriting accepts downward/upward queries without "
                                "positions or node comparisons");
        // A context type absent from the view has no accessible instances.
        if (!c_.view.view.has_type(start_)) return {nullptr, work_};
        std::vector<PathPtr> branches;
        for (const auto& seq : expand(q)) {
            PathPtr p = fast_ ? run_fast(seq) : run_tracked(seq);
            if (p) branches.push_back(std::move(p));
        }
        if (branches.empty()) return {nullptr, work_};
        return {Path::alternatives(std::move(branches)), work_};
    }

private:
    // ---- shared helpers -------------------------------------------------

    /// Attach qualifiers to the last step(s) of a path, dropping True.
    static PathPtr decorate(PathPtr p, const std::vector<QualPtr>& quals) {
        for (const auto& q : quals)
            if (q && !is_true(q)) p = Path::with_qual(p, q);
        return p;
    }

    std::vector<QualPtr> with_front(const QualPtr& front, const std::vector<QualPtr>& pending,
                                    const QualPtr& tail) const {
        std::vector<QualPtr> qs;
        if (front) qs.push_back(front);
        qs.insert(qs.end(), pending.begin(), pending.end());
        qs.push_back(tail);
        return qs;
    }

    /// Element types reachable from `from` over one view-level step.
    std::vector<std::string> step_reach(Axis axis, const std::string& label,
                                        const std::vector<std::string>& from) {
        std::set<std::string> result;
        const ReachIndex& r = c_.view.reach;
        switch (axis) {
            case Axis::Self:
                for (const auto& e : from)
                    if (label == kWildcard || e == label) result.insert(e);
                break;
            case Axis::Child:
            case Axis::Descendant: {
                const auto& table = axis == Axis::Child ? r.children : r.descendants;
                for (const auto& e : from)
                    for (const auto& b : table.at(e)) {
                        ++work_;
                        result.insert(b);
                    }
                break;
            }
            case Axis::Parent:
            case Axis::Ancestor: {
                const auto& table = axis == Axis::Parent ? r.children : r.descendants;
                std::set<std::string> fromSet(from.begin(), from.end());
                for (const auto& a : c_.view.view.order)
                    for (const auto& b : table.at(a)) {
                        ++work_;
                        if (fromSet.count(b)) {
                            result.insert(a);
                            break;
                        }
                    }
                break;
            }
            case Axis::AncestorOrSelf:
                throw FragmentError("ancestor-or-self is not accepted in rewriting input");
        }
        std::vector<std::string> out;
        for (const auto& e : c_.view.view.order)
            if (result.count(e) && (label == kWildcard || e == label)) out.push_back(e);
        return out;
    }

    // ---- type-tracked rewriting (the default strategy) -------------------

    PathPtr run_tracked(const StepSeq& steps) {
        std::vector<std::string> reach{start_};
        std::vector<QualPtr> pending;
        QualPtr prefix = Qual::truth();
        bool moved = false;

        for (const auto& st : steps) {
            ++work_;
            if (st.axis == Axis::Self) {
                reach = step_reach(Axis::Self, st.label, reach);
                if (reach.empty()) return nullptr;
            } else {
                std::vector<std::string> next = step_reach(st.axis, st.label, reach);
                if (next.empty()) return nullptr;
                switch (st.axis) {
                    case Axis::Child:
                        // The view parent lies in `reach` and carries the
                        // accumulated constraints.
                        prefix = Qual::exists(Path::slash(
                            aPlus1_,
                            decorate(fs(Axis::Self, reach), with_front(nullptr, pending, prefix))));
                        break;
                    case Axis::Descendant:
                        prefix = Qual::exists(decorate(
                            fs(Axis::Ancestor, reach), with_front(c_.kit.acc, pending, prefix)));
                        break;
                    case Axis::Parent:
                        // Some view child below satisfies the constraints and
                        // has this node as its view parent.
                        prefix = Qual::node_equals(
                            Path::slash(decorate(fs(Axis::Descendant, reach),
                                                 with_front(c_.kit.acc, pending, prefix)),
                                        aPlus1_),
                            Path::step(Axis::Self,
                                       next.size() == 1 ? next.front() : kWildcard));
                        break;
                    case Axis::Ancestor:
                        prefix = Qual::exists(decorate(
                            fs(Axis::Descendant, reach), with_front(c_.kit.acc, pending, prefix)));
                        break;
                    default:
                        break;
                }
                reach = std::move(next);
                pending.clear();
                moved = true;
            }
            for (const auto& f : st.quals) {
                QualPtr fr = rw_pred(f, reach);
                if (is_false(fr)) return nullptr;
                if (!is_true(fr)) pending.push_back(std::move(fr));
            }
        }
        if (!moved)
            throw UnsupportedFeatureError("a query must move off the root before returning");
        std::vector<QualPtr> finals = with_front(c_.kit.acc, pending, prefix);
        PathPtr out = decorate(fs(Axis::Descendant, reach), finals);
        // Upward steps can land back on the context node, which no descendant
        // step from it can select; give it its own branch.
        if (std::find(reach.begin(), reach.end(), start_) != reach.end())
            out = Path::alternatives(
                {std::move(out), decorate(Path::step(Axis::Self, start_), finals)});
        return out;
    }

    QualPtr rw_pred(const QualPtr& q, const std::vector<std::string>& L) {
        ++work_;
        switch (q->kind) {
            case Qual::Kind::True:
            case Qual::Kind::False:
                return q;
            case Qual::Kind::And:
                return Qual::conj(rw_pred(q->a, L), rw_pred(q->b, L));
            case Qual::Kind::Or:
                return Qual::disj(rw_pred(q->a, L), rw_pred(q->b, L));
            case Qual::Kind::Not:
                return Qual::negate(rw_pred(q->a, L));
            case Qual::Kind::PathExists:
            case Qual::Kind::TextEquals: {
                const std::string* cmp =
                    q->kind == Qual::Kind::TextEquals ? &q->text : nullptr;
                std::vector<QualPtr> alts;
                for (const auto& seq : expand(q->path)) alts.push_back(rw_seq(seq, 0, L, cmp));
                return Qual::disj_all(alts);
            }
            case Qual::Kind::NodeEquals:
            case Qual::Kind::Position:
                throw FragmentError(
                    "positions and node comparisons are not accepted in rewriting input");
        }
        return Qual::falsity();
    }

    QualPtr rw_seq(const StepSeq& steps, std::size_t i, const std::vector<std::string>& L,
                   const std::string* cmp) {
        const StepRef& st = steps[i];
        ++work_;
        std::vector<std::string> L1 = step_reach(st.axis, st.label, L);
        if (L1.empty()) return Qual::falsity();

        QualPtr f = Qual::truth();
        for (const auto& sub : st.quals) f = Qual::conj(f, rw_pred(sub, L1));
        if (is_false(f)) return Qual::falsity();

        QualPtr rest;
        if (i + 1 < steps.size()) {
            rest = rw_seq(steps, i + 1, L1, cmp);
            if (is_false(rest)) return Qual::falsity();
        } else {
            rest = cmp ? Qual::text_equals(Path::step(Axis::Self, st.label), *cmp)
                       : Qual::truth();
        }

        std::vector<QualPtr> inner{c_.kit.acc};
        if (!is_true(f)) inner.push_back(f);
        inner.push_back(rest);

        switch (st.axis) {
            case Axis::Child:
                return Qual::node_equals(
                    Path::slash(decorate(fs(Axis::Descendant, L1), inner), aPlus1_),
                    Path::step(Axis::Self, L.size() == 1 ? L.front() : kWildcard));
            case Axis::Descendant:
                return Qual::exists(decorate(fs(Axis::Descendant, L1), inner));
            case Axis::Self: {
                std::vector<QualPtr> qs;
                if (!is_true(f)) qs.push_back(f);
                if (!is_true(rest)) qs.push_back(rest);
                return Qual::exists(Path::step(Axis::Self, st.label, std::move(qs)));
            }
            case Axis::Parent: {
                std::vector<QualPtr> qs;
                if (!is_true(f)) qs.push_back(f);
                if (!is_true(rest)) qs.push_back(rest);
                return Qual::exists(Path::slash(
                    aPlus1_, Path::step(Axis::Self, st.label, std::move(qs))));
            }
            case Axis::Ancestor:
                return Qual::exists(decorate(Path::step(Axis::Ancestor, st.label), inner));
            default:
                throw FragmentError("unsupported axis in a qualifier");
        }
    }

    // ---- linear rewriting (no type tracking) ------------------------------

    PathPtr run_fast(const StepSeq& steps) {
        std::string prev = start_;
        std::vector<QualPtr> pending;
        QualPtr prefix = Qual::truth();
        bool moved = false;
        bool canBeStart = false;

        for (const auto& st : steps) {
            ++work_;
            if (st.axis == Axis::Self) {
                if (st.label != kWildcard) {
                    pending.push_back(Qual::exists(Path::step(Axis::Self, st.label)));
                    if (st.label != start_) canBeStart = false;
                }
            } else {
                canBeStart = (st.axis == Axis::Parent || st.axis == Axis::Ancestor) &&
                             (st.label == kWildcard || st.label == start_);
                switch (st.axis) {
                    case Axis::Child:
                        prefix = Qual::exists(Path::slash(
                            aPlus1_, Path::step(Axis::Self, prev,
                                                collect(nullptr, pending, prefix))));
                        break;
                    case Axis::Descendant:
                        prefix = Qual::exists(Path::step(
                            Axis::Ancestor, prev, collect(c_.kit.acc, pending, prefix)));
                        break;
                    case Axis::Parent:
                        prefix = Qual::node_equals(
                            Path::slash(Path::step(Axis::Descendant, prev,
                                                   collect(c_.kit.acc, pending, prefix)),
                                        aPlus1_),
                            Path::step(Axis::Self, st.label));
                        break;
                    case Axis::Ancestor:
                        prefix = Qual::exists(Path::step(
                            Axis::Descendant, prev, collect(c_.kit.acc, pending, prefix)));
                        break;
                    default:
                        break;
                }
                prev = st.label;
                pending.clear();
                moved = true;
            }
            for (const auto& f : st.quals) {
                QualPtr fr = rw_pred_fast(f, st.label);
                if (is_false(fr)) return nullptr;
                if (!is_true(fr)) pending.push_back(std::move(fr));
            }
        }
        if (!moved)
            throw UnsupportedFeatureError("a query must move off the root before returning");
        std::vector<QualPtr> finals = with_front(c_.kit.acc, pending, prefix);
        PathPtr out = decorate(Path::step(Axis::Descendant, prev), finals);
        if (canBeStart)
            out = Path::alternatives(
                {std::move(out), decorate(Path::step(Axis::Self, start_), finals)});
        return out;
    }

    std::vector<QualPtr> collect(const QualPtr& front, const std::vector<QualPtr>& pending,
                                 const QualPtr& tail) const {
        std::vector<QualPtr> qs;
        if (front) qs.push_back(front);
        for (const auto& p : pending) qs.push_back(p);
        if (!is_true(tail)) qs.push_back(tail);
        return qs;
    }

    QualPtr rw_pred_fast(const QualPtr& q, const std::string& ctxLabel) {
        ++work_;
        switch (q->kind) {
            case Qual::Kind::True:
            case Qual::Kind::False:
                return q;
            case Qual::Kind::And:
                return Qual::conj(rw_pred_fast(q->a, ctxLabel), rw_pred_fast(q->b, ctxLabel));
            case Qual::Kind::Or:
                return Qual::disj(rw_pred_fast(q->a, ctxLabel), rw_pred_fast(q->b, ctxLabel));
            case Qual::Kind::Not:
                return Qual::negate(rw_pred_fast(q->a, ctxLabel));
            case Qual::Kind::PathExists:
            case Qual::Kind::TextEquals: {
                const std::string* cmp =
                    q->kind == Qual::Kind::TextEquals ? &q->text : nullptr;
                std::vector<QualPtr> alts;
                for (const auto& seq : expand(q->path))
                    alts.push_back(rw_seq_fast(seq, 0, ctxLabel, cmp));
                return Qual::disj_all(alts);
            }
            case Qual::Kind::NodeEquals:
            case Qual::Kind::Position:
                throw FragmentError(
                    "positions and node comparisons are not accepted in rewriting input");
        }
        return Qual::falsity();
    }

    QualPtr rw_seq_fast(const StepSeq& steps, std::size_t i, const std::string& ctxLabel,
                        const std::string* cmp) {
        const StepRef& st = steps[i];
        ++work_;
        QualPtr f = Qual::truth();
        for (const auto& sub : st.quals) f = Qual::conj(f, rw_pred_fast(sub, st.label));
        if (is_false(f)) return Qual::falsity();

        QualPtr rest;
        if (i + 1 < steps.size()) {
            rest = rw_seq_fast(steps, i + 1, st.label, cmp);
            if (is_false(rest)) return Qual::falsity();
        } else {
            rest = cmp ? Qual::text_equals(Path::step(Axis::Self, st.label), *cmp)
                       : Qual::truth();
        }

        std::vector<QualPtr> qs;
        if (!is_true(f)) qs.push_back(f);
        if (!is_true(rest)) qs.push_back(rest);
        switch (st.axis) {
            case Axis::Child: {
                std::vector<QualPtr> inner{c_.kit.acc};
                inner.insert(inner.end(), qs.begin(), qs.end());
                return Qual::node_equals(
                    Path::slash(Path::step(Axis::Descendant, st.label, std::move(inner)),
                                aPlus1_),
                    Path::step(Axis::Self, ctxLabel));
            }
            case Axis::Descendant: {
                std::vector<QualPtr> inner{c_.kit.acc};
                inner.insert(inner.end(), qs.begin(), qs.end());
                return Qual::exists(Path::step(Axis::Descendant, st.label, std::move(inner)));
            }
            case Axis::Self:
                return Qual::exists(Path::step(Axis::Self, st.label, std::move(qs)));
            case Axis::Parent:
                return Qual::exists(
                    Path::slash(aPlus1_, Path::step(Axis::Self, st.label, std::move(qs))));
            case Axis::Ancestor: {
                std::vector<QualPtr> inner{c_.kit.acc};
                inner.insert(inner.end(), qs.begin(), qs.end());
                return Qual::exists(Path::step(Axis::Ancestor, st.label, std::move(inner)));
            }
            default:
                throw FragmentError("unsupported axis in a qualifier");
        }
    }

    const RewriteContext& c_;
    bool fast_;
    std::string start_;
    PathPtr aPlus1_;
    std::size_t work_ = 0;
};

} // namespace

RewriteContext make_context(const AccessSpec& s) {
    RewriteContext c;
    c.spec = s;
    c.view = derive_view(s);
    c.kit = build_kit(s);
    return c;
}

RewriteResult rewrite(const RewriteContext& c, const PathPtr& q, const std::string& context) {
    return Rewriter(c, false, context).run(q);
}

RewriteResult rewrite_fast(const RewriteContext& c, const PathPtr& q,
                           const std::string& context) {
    return Rewriter(c, true, context).run(q);
}

} // namespace xsec
