#pragma once

#include <map>
#include <string>
#include <utility>

#include "xsec/dtd.hpp"
#include "xsec/xpath.hpp"

namespace xsec {

/// Annotation on a DTD edge (parent type, child type).
struct AnnValue {
    enum class Kind {
        Allow,    // Y
        Deny,     // N — overridable below
        Cond,     // [Q] — overridable below
        DenyDown, // N_h — denies the whole subtree
        CondDown, // [Q]_h — a failing Q denies the whole subtree
    };

    Kind kind;
    QualPtr qual; // Cond / CondDown only; fragment X

    bool conditional() const { return kind == Kind::Cond || kind == Kind::CondDown; }
    bool hereditary() const { return kind == Kind::DenyDown || kind == Kind::CondDown; }
};

std::string serialize_ann(const AnnValue& v);

struct AccessSpec {
    Dtd dtd;
    /// Partial map over DTD edges. The root is implicitly annotated Y.
    std::map<std::pair<std::string, std::string>, AnnValue> ann;
    /// Annotated edges in file order, for deterministic iteration.
    std::vector<std::pair<std::string, std::string>> order;

    const AnnValue* find(const std::string& parent, const std::string& child) const {
        auto it = ann.find({parent, child});
        return it == ann.end() ? nullptr : &it->second;
    }
    /// True iff some annotation exists on an edge into `child`.
    bool concerned(const std::string& child) const;
};

/// Parse an annotation file: one `ann(Parent,Child) = value` entry per line,
/// where value is Y, N, N_h, [ qual ], or [ qual ]_h; '#' starts a comment.
AccessSpec parse_spec(const std::string& text, const Dtd& d);

std::string serialize_spec(const AccessSpec& s);

/// Reinterpret a specification written against the overridable-[Q] semantics:
/// every Cond becomes CondDown; Allow and Deny are unchanged. Idempotent.
AccessSpec compat_mode(const AccessSpec& s);

} // namespace xsec
