#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "xsec/access_spec.hpp"
#include "xsec/dtd.hpp"

namespace xsec {

/// The schema view exposed to users: accessible element types with their
/// extracted content models, plus the type-level reachability used by the
/// query rewriter.
struct DtdView {
    Dtd view;
    std::vector<std::string> elided; // original types not in the view, in declaration order

    /// Possible view-level type relations: reach.children[A] holds every type B
    /// that can appear as a child of an A node in some materialized view
    /// (deliberately over-approximate; see derive_view).
    ReachIndex reach;

    /// Content-model nodes visited while deriving (complexity instrumentation).
    std::size_t visit_count = 0;
};

/// Derive the DTD view: walk each production with the inherited-accessibility
/// flag, eliding denied types and splicing their accessible content upward;
/// conditional children stay in place. The type-level reach relation is
/// computed separately from the edge graph, over-approximating the set of
/// materializable parent/child pairs (a type hidden by a non-hereditary
/// annotation can vanish while its accessible content is promoted past it).
DtdView derive_view(const AccessSpec& s);

struct ViewStats {
    std::size_t kept = 0;
    std::size_t elided = 0;
    bool recursive = false;
};

ViewStats view_stats(const DtdView& v);

} // namespace xsec
