#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xsec/access_spec.hpp"
#include "xsec/errors.hpp"

using namespace xsec;

static Dtd tiny() {
    return parse_dtd("<!ELEMENT root (A*)><!ELEMENT A ((C|D)?,B?)>"
                     "<!ELEMENT B EMPTY><!ELEMENT C (D?)><!ELEMENT D EMPTY>");
}

TEST_CASE("parse a four-entry specification") {
    Dtd d = tiny();
    AccessSpec s = parse_spec("# policy\n"
                              "ann(root,A) = [child::C]\n"
                              "ann(A,B) = N\n"
                              "ann(A,C) = N\n"
                              "ann(C,D) = Y\n",
                              d);
    CHECK(s.ann.size() == 4);
    REQUIRE(s.find("root", "A") != nullptr);
    CHECK(s.find("root", "A")->kind == AnnValue::Kind::Cond);
    CHECK(serialize(s.find("root", "A")->qual) == "child::C");
    CHECK(s.find("A", "B")->kind == AnnValue::Kind::Deny);
    CHECK(s.find("C", "D")->kind == AnnValue::Kind::Allow);
    CHECK(s.find("A", "D") == nullptr);
    CHECK(s.concerned("A"));
    CHECK_FALSE(s.concerned("root"));
}

TEST_CASE("hereditary values") {
    Dtd d = tiny();
    AccessSpec s = parse_spec("ann(A,B) = N_h\nann(A,C) = [child::D]_h\n", d);
    CHECK(s.find("A", "B")->kind == AnnValue::Kind::DenyDown);
    CHECK(s.find("A", "C")->kind == AnnValue::Kind::CondDown);
    CHECK(s.find("A", "C")->hereditary());
    CHECK(s.find("A", "C")->conditional());
}

TEST_CASE("empty file gives full access by inheritance") {
    AccessSpec s = parse_spec("  \n# nothing\n", tiny());
    CHECK(s.ann.empty());
}

TEST_CASE("rejects invalid entries") {
    Dtd d = tiny();
    // (root,D) is not an edge of the DTD
    CHECK_THROWS_AS(parse_spec("ann(root,D) = Y\n", d), UnknownEdgeError);
    CHECK_THROWS_AS(parse_spec("ann(root,zzz) = Y\n", d), UnknownEdgeError);
    CHECK_THROWS_AS(parse_spec("ann(root,A) = Y\nann(root,A) = N\n", d),
                    DuplicateAnnotationError);
    // qualifier must stay in the downward fragment
    CHECK_THROWS_AS(parse_spec("ann(root,A) = [parent::root]\n", d), FragmentError);
    CHECK_THROWS_AS(parse_spec("ann(root,A) = [child::C][1]\n", d), SyntaxError);
    CHECK_THROWS_AS(parse_spec("ann(root,A) = maybe\n", d), SyntaxError);
    CHECK_THROWS_AS(parse_spec("gibberish\n", d), SyntaxError);
}

TEST_CASE("compat mode maps Cond to CondDown and is idempotent") {
    Dtd d = tiny();
    AccessSpec s = parse_spec("ann(root,A) = [child::C]\nann(A,B) = N\nann(C,D) = Y\n", d);
    AccessSpec c = compat_mode(s);
    CHECK(c.find("root", "A")->kind == AnnValue::Kind::CondDown);
    CHECK(serialize(c.find("root", "A")->qual) == "child::C");
    CHECK(c.find("A", "B")->kind == AnnValue::Kind::Deny);
    CHECK(c.find("C", "D")->kind == AnnValue::Kind::Allow);
    CHECK(serialize_spec(compat_mode(c)) == serialize_spec(c));
}

TEST_CASE("serialization round-trips") {
    Dtd d = tiny();
    std::string text = "ann(root,A) = [child::C or child::B]\n"
                       "ann(A,B) = N_h\n"
                       "ann(A,C) = [child::D]_h\n"
                       "ann(C,D) = Y\n";
    AccessSpec s = parse_spec(text, d);
    CHECK(serialize_spec(s) == text);
    CHECK(serialize_spec(parse_spec(serialize_spec(s), d)) == text);
}
