#pragma once

#include <random>
#include <string>

#include "xsec/access_spec.hpp"
#include "xsec/dtd.hpp"
#include "xsec/xpath.hpp"

namespace xsec {

/// Random schema with at most `maxTypes` element types, every type reachable
/// from the root and finitely derivable. The root label never reappears as a
/// child. When `recursive` is set, at least one type derives itself.
Dtd random_dtd(std::mt19937_64& rng, std::size_t maxTypes = 10, bool recursive = true);

/// Random policy over the schema's edges: at most `maxAnn` annotations drawn
/// from all five values, conditions in the downward fragment.
AccessSpec random_spec(std::mt19937_64& rng, const Dtd& d, std::size_t maxAnn = 8);

struct QueryOptions {
    std::size_t maxDepth = 4;
    bool upward = false;    // allow parent/ancestor steps
    bool positions = false; // allow positional qualifiers
    bool nodeEquals = false;
    bool selfSteps = false; // allow self steps inside qualifiers
};

/// Random query over the schema's labels (plus wildcards).
PathPtr random_query(std::mt19937_64& rng, const Dtd& d, const QueryOptions& opt);

} // namespace xsec
