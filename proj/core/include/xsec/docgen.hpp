#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xsec/dtd.hpp"
#include "xsec/xml.hpp"

namespace xsec {

struct GenOptions {
    std::uint64_t seed = 0;
    /// Soft size cap: once reached, optional content is skipped. Mandatory
    /// content can overshoot it by a bounded amount.
    std::size_t targetNodes = 100;
    /// Below this depth recursion is cut by always taking the shortest
    /// derivation.
    std::size_t maxDepth = 40;
    /// Continuation probability for repeated content.
    double starP = 0.5;
    /// Values for generated text leaves.
    std::vector<std::string> textVocab = {"disease1", "disease2", "disease3",
                                          "v0",       "v1",       "v2"};
};

/// Generate a random document conforming to the schema. Deterministic for a
/// given (schema, options) pair. Throws NonTerminatingError if some type
/// reachable from the root has no finite derivation.
XmlTree generate(const Dtd& d, const GenOptions& opt);

} // namespace xsec
