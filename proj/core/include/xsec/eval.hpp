#pragma once

#include <vector>

#include "xsec/access_spec.hpp"
#include "xsec/xml.hpp"
#include "xsec/xpath.hpp"

namespace xsec {

/// Node ids. Within one step the order is the axis discipline (document
/// order on forward axes, nearest-first on upward axes); across steps it is
/// the concatenation per context. Use answer_equal / a sort for comparisons.
using NodeSet = std::vector<int>;

/// Evaluate a path expression with `context` as the context node.
NodeSet eval(const XmlTree& t, const PathPtr& p, int context);

/// Evaluate a qualifier at a node. Position qualifiers are meaningful only
/// inside a step's qualifier list and are rejected here.
bool eval_qual(const XmlTree& t, const QualPtr& q, int node);

/// Ground-truth accessibility, computed directly from the definition on the
/// original document: the nearest concerned self-or-ancestor (the root is
/// implicitly granted) must carry a valid annotation, no strict ancestor may
/// sit below a hereditary denial, and every hereditary condition above must
/// hold. Text nodes take their parent's accessibility.
bool oracle_accessible(const XmlTree& t, const AccessSpec& s, int node);

/// The authorized view of a document: inaccessible elements are removed and
/// their accessible descendants promoted to the nearest retained ancestor,
/// preserving document order.
struct Materialized {
    XmlTree view;
    std::vector<int> toOriginal; // view id -> original id
};

Materialized materialize(const XmlTree& t, const AccessSpec& s);

/// True iff the view answer, mapped back to original ids, equals the
/// expected original-document answer as a set.
bool answer_equal(const NodeSet& viewAnswer, const Materialized& m, const NodeSet& original);

} // namespace xsec
