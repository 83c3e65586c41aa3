#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xsec/access_spec.hpp"
#include "xsec/dtd.hpp"
#include "xsec/fixtures.hpp"
#include "xsec/errors.hpp"
#include "xsec/predicates.hpp"

using namespace xsec;

namespace {

AccessSpec spec_for(const std::string& name) {
    const Fixture& f = fixture(name);
    Dtd d = parse_dtd(f.dtd);
    AccessSpec s = parse_spec(f.ann, d);
    if (f.definition1) s = compat_mode(s);
    return s;
}

void check_qual(const QualPtr& got, const std::string& expected) {
    CAPTURE(serialize(got));
    CHECK(qual_equal(got, parse_qual(expected)));
}

} // namespace

TEST_CASE("walkthrough policy: nearest-concerned-ancestor predicate") {
    AccessSpec s = spec_for("recursive");
    PredicateKit kit = build_kit(s);

    // Or-terms follow annotation order with the implicit root grant last.
    check_qual(kit.a1,
               "ancestor-or-self::*"
               "[self::A/parent::root or self::E/parent::D or self::F/parent::D"
               " or self::H/parent::C or self::root]"
               "[1]"
               "[self::A[child::D]/parent::root or self::E/parent::D or self::root]");
    check_qual(kit.a2, "not(ancestor::A[not(child::D)]/parent::root)");
    CHECK(qual_equal(kit.acc, Qual::conj(kit.a1, kit.a2)));
}

TEST_CASE("recursive example: predicate over grant-only hereditary-free policy") {
    AccessSpec s = spec_for("nested");
    PredicateKit kit = build_kit(s);

    check_qual(kit.a1,
               "ancestor-or-self::*"
               "[self::E/parent::D or self::B/parent::D or self::D/parent::C"
               " or self::B/parent::A or self::root]"
               "[1]"
               "[self::E/parent::D or self::D/parent::C or self::root]");
    // No hereditary annotations: the subtree-safety conjunct is vacuous.
    CHECK(qual_equal(kit.a2, Qual::truth()));
    CHECK(qual_equal(kit.acc, kit.a1));

    // aPlus selects accessible proper ancestors; [1] then names the view
    // parent.
    CHECK(path_equal(kit.aPlus, Path::step(Axis::Ancestor, kWildcard, {kit.a1})));
    QualPtr viewParentIsA = a_elem(kit, "A");
    CHECK(qual_equal(viewParentIsA,
                     Qual::exists(Path::slash(
                         Path::step(Axis::Ancestor, kWildcard, {kit.a1, Qual::at_position(1)}),
                         Path::step(Axis::Self, "A")))));
}

TEST_CASE("hospital policy: hereditary denials appear in the safety conjunct") {
    AccessSpec s = spec_for("hospital");
    PredicateKit kit = build_kit(s);

    check_qual(kit.a2,
               "not(ancestor::patient"
               "[not(child::visit/child::treatment/child::medication"
               "[child::diagnosis = 'disease1' or child::diagnosis = 'disease2'"
               " or child::diagnosis = 'disease3'])]"
               "/parent::department)"
               " and not(ancestor::sibling/parent::patient)");
}

TEST_CASE("label-set helpers build ordered unions") {
    AccessSpec s = spec_for("nested");
    PredicateKit kit = build_kit(s);

    PathPtr u = fs(Axis::Descendant, {"A", "D", "E"});
    CHECK(path_equal(u, Path::alternatives({Path::step(Axis::Descendant, "A"),
                                            Path::step(Axis::Descendant, "D"),
                                            Path::step(Axis::Descendant, "E")})));
    CHECK(path_equal(fs(Axis::Child, {"A"}), Path::step(Axis::Child, "A")));
    CHECK_THROWS_AS(fs(Axis::Child, {}), EmptySetError);

    CHECK(qual_equal(a_set(kit, {"A"}), a_elem(kit, "A")));
    CHECK(qual_equal(a_set(kit, {}), Qual::falsity()));
}

TEST_CASE("predicate size is linear in the number of annotations") {
    for (const char* name : {"tiny", "recursive", "nested", "hospital"}) {
        AccessSpec s = spec_for(name);
        PredicateKit kit = build_kit(s);
        std::size_t annSize = 0;
        for (const auto& e : s.order)
            annSize += 1 + (s.ann.at(e).qual ? ast_size(s.ann.at(e).qual) : 0);
        CHECK(ast_size(kit.acc) <= 12 * (annSize + 2));
    }
}
