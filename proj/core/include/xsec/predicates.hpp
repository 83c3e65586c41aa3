#pragma once

#include <string>
#include <vector>

#include "xsec/access_spec.hpp"
#include "xsec/xpath.hpp"

namespace xsec {

/// Accessibility predicates compiled from a specification. All of them are
/// evaluated on the original document; their size is linear in the number of
/// annotations, independent of any instance.
struct PredicateKit {
    /// The nearest concerned-or-root self-or-ancestor carries a granting
    /// annotation: exists(ancestor-or-self::*[concerned][1][granted]).
    QualPtr a1;
    /// No hereditary denial above: every N_h edge is absent from the
    /// ancestor chain and every [Q]_h ancestor satisfies Q.
    QualPtr a2;
    /// a1 and a2: the node is visible in the authorized view.
    QualPtr acc;
    /// Proper ancestors that are visible: ancestor::*[a1]. On upward axes
    /// position 1 selects the nearest, so aPlus[1] is the view parent.
    PathPtr aPlus;
};

PredicateKit build_kit(const AccessSpec& s);

/// The view parent is labeled `label`: exists(aPlus[1]/self::label).
QualPtr a_elem(const PredicateKit& k, const std::string& label);

/// The view parent's label belongs to `labels` (order preserved).
QualPtr a_set(const PredicateKit& k, const std::vector<std::string>& labels);

/// Union path axis::l1 | ... | axis::ln in the given order.
PathPtr fs(Axis axis, const std::vector<std::string>& labels);

} // namespace xsec
