#include "xsec/predicates.hpp"

#include "xsec/errors.hpp"

namespace xsec {

namespace {

/// self::child/parent::parent, optionally with a qualifier on the self step.
QualPtr edge_term(const std::pair<std::string, std::string>& edge, QualPtr qual = nullptr) {
    std::vector<QualPtr> quals;
    if (qual) quals.push_back(std::move(qual));
    return Qual::exists(Path::slash(Path::step(Axis::Self, edge.second, std::move(quals)),
                                    Path::step(Axis::Parent, edge.first)));
}

} // namespace

PredicateKit build_kit(const AccessSpec& s) {
    // "Concerned": the node is the target of some annotated edge, or the
    // root (which is implicitly granted). Root term goes last.
    std::vector<QualPtr> concerned;
    for (const auto& edge : s.order) concerned.push_back(edge_term(edge));
    concerned.push_back(Qual::exists(Path::step(Axis::Self, s.dtd.root)));

    // "Granted": the annotation on the edge above is Y, or a (hereditary or
    // not) condition that holds here.
    std::vector<QualPtr> granted;
    for (const auto& edge : s.order) {
        const AnnValue& v = s.ann.at(edge);
        if (v.kind == AnnValue::Kind::Deny || v.kind == AnnValue::Kind::DenyDown) continue;
        granted.push_back(edge_term(edge, v.conditional() ? v.qual : nullptr));
    }
    granted.push_back(Qual::exists(Path::step(Axis::Self, s.dtd.root)));

    PredicateKit kit;
    kit.a1 = Qual::exists(Path::step(
        Axis::AncestorOrSelf, kWildcard,
        {Qual::disj_all(concerned), Qual::at_position(1), Qual::disj_all(granted)}));

    std::vector<QualPtr> safe;
    for (const auto& edge : s.order) {
        const AnnValue& v = s.ann.at(edge);
        if (v.kind == AnnValue::Kind::DenyDown) {
            safe.push_back(Qual::negate(
                Qual::exists(Path::slash(Path::step(Axis::Ancestor, edge.second),
                                         Path::step(Axis::Parent, edge.first)))));
        } else if (v.kind == AnnValue::Kind::CondDown) {
            safe.push_back(Qual::negate(Qual::exists(
                Path::slash(Path::step(Axis::Ancestor, edge.second, {Qual::negate(v.qual)}),
                            Path::step(Axis::Parent, edge.first)))));
        }
    }
    kit.a2 = Qual::conj_all(safe);
    kit.acc = Qual::conj(kit.a1, kit.a2);
    kit.aPlus = Path::step(Axis::Ancestor, kWildcard, {kit.a1});
    return kit;
}

QualPtr a_elem(const PredicateKit& k, const std::string& label) {
    return a_set(k, {label});
}

QualPtr a_set(const PredicateKit& k, const std::vector<std::string>& labels) {
    if (labels.empty()) return Qual::falsity();
    return Qual::exists(Path::slash(Path::with_qual(k.aPlus, Qual::at_position(1)),
                                    fs(Axis::Self, labels)));
}

PathPtr fs(Axis axis, const std::vector<std::string>& labels) {
    if (labels.empty()) throw EmptySetError();
    std::vector<PathPtr> branches;
    for (const auto& l : labels) branches.push_back(Path::step(axis, l));
    return Path::alternatives(std::move(branches));
}

} // namespace xsec
