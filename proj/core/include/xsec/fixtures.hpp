#pragma once

#include <string>
#include <utility>
#include <vector>

namespace xsec {

/// Built-in example data sets: schema, policy, optional instance and queries.
/// Reconstructed from worked textual descriptions; each carries notes for the
/// RECONSTRUCTED marker written next to exported files.
struct Fixture {
    std::string name;
    std::string dtd;
    std::string ann;
    std::string xml; // empty if the fixture has no instance
    std::vector<std::pair<std::string, std::string>> queries;
    bool definition1 = false; // policy written against overridable-[Q] semantics
    std::string notes;
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);

} // namespace xsec
