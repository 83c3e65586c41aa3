#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "xsec/access_spec.hpp"
#include "xsec/predicates.hpp"
#include "xsec/view.hpp"
#include "xsec/xpath.hpp"

namespace xsec {

/// Everything derived from one specification that query rewriting needs.
struct RewriteContext {
    AccessSpec spec;
    DtdView view;
    PredicateKit kit;
};

RewriteContext make_context(const AccessSpec& s);

struct RewriteResult {
    /// Rewritten query to run on the original document, or null when the
    /// query is provably empty over the view schema.
    PathPtr query;
    /// Elementary operations spent (steps, qualifier nodes, reach scans).
    std::size_t work = 0;

    bool empty() const { return query == nullptr; }
};

/// Rewrite a view query (downward fragment, plus self and upward axes) into
/// an equivalent query over the original document. Tracks the set of element
/// types the context can inhabit, eliminating wildcard steps and pruning
/// unsatisfiable branches against the view schema.
///
/// `context` is the view element type the query is issued at; empty means
/// the root. The rewritten query must be evaluated at an accessible node of
/// that type and selects within its subtree (plus the context node itself).
RewriteResult rewrite(const RewriteContext& c, const PathPtr& q,
                      const std::string& context = {});

/// Linear-time variant: no type tracking, so no wildcard elimination or
/// schema pruning; each step becomes one upward test. Output is equivalent
/// on conforming documents.
RewriteResult rewrite_fast(const RewriteContext& c, const PathPtr& q,
                           const std::string& context = {});

} // namespace xsec
