#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xsec/access_spec.hpp"
#include "xsec/dtd.hpp"
#include "xsec/eval.hpp"
#include "xsec/fixtures.hpp"
#include "xsec/rewrite.hpp"
#include "xsec/xml.hpp"
#include "xsec/xpath.hpp"

#include <set>

using namespace xsec;

TEST_CASE("every fixture parses and is internally consistent") {
    REQUIRE_FALSE(fixtures().empty());
    for (const Fixture& f : fixtures()) {
        CAPTURE(f.name);
        CHECK_FALSE(f.name.empty());
        CHECK_FALSE(f.notes.empty());

        Dtd d = parse_dtd(f.dtd);
        AccessSpec s = parse_spec(f.ann, d);
        if (f.definition1) s = compat_mode(s);

        // The policy annotates actual schema edges only.
        ReachIndex idx = build_reach_index(d);
        for (const auto& edge : s.order) {
            CAPTURE(edge.first + "," + edge.second);
            const auto& kids = idx.children.at(edge.first);
            CHECK(std::find(kids.begin(), kids.end(), edge.second) != kids.end());
        }

        // Views and rewrite contexts derive without error.
        RewriteContext c = make_context(s);
        CHECK_FALSE(c.view.view.order.empty());

        if (!f.xml.empty()) {
            XmlTree t = parse_xml(f.xml);
            CHECK(conforms(t, d));
            Materialized m = materialize(t, s);
            CHECK(conforms(m.view, c.view.view));
        }

        // Named queries are unique, parse, and stay inside the fragment the
        // rewriter accepts (downward plus upward axes; no positions, no
        // node comparisons).
        std::set<std::string> names;
        for (const auto& [name, text] : f.queries) {
            CAPTURE(name);
            CHECK(names.insert(name).second);
            PathPtr q = parse_xpath(text);
            FragmentClass fc = classify(q);
            CHECK((fc == FragmentClass::X || fc == FragmentClass::XUp));
            RewriteResult r = rewrite(c, q);
            if (!f.xml.empty() && !r.empty()) {
                XmlTree t = parse_xml(f.xml);
                CHECK(classify(r.query) != FragmentClass::X); // decorated form is extended
                eval(t, r.query, t.root());                   // must evaluate cleanly
            }
        }
    }
}

TEST_CASE("fixture lookup by name") {
    CHECK(fixture("tiny").definition1);
    CHECK(fixture("recursive").definition1);
    CHECK(fixture("recursive-doc").definition1);
    CHECK_FALSE(fixture("nested").definition1);
    CHECK_FALSE(fixture("hospital").definition1);
    CHECK_THROWS(fixture("no-such-fixture"));

    // recursive-doc shares the schema and policy of recursive but adds an instance.
    CHECK(fixture("recursive-doc").dtd == fixture("recursive").dtd);
    CHECK(fixture("recursive-doc").ann == fixture("recursive").ann);
    CHECK_FALSE(fixture("recursive-doc").xml.empty());
    CHECK(fixture("recursive").xml.empty());
}

TEST_CASE("fixtures without instances still produce usable contexts") {
    const Fixture& f = fixture("recursive");
    Dtd d = parse_dtd(f.dtd);
    AccessSpec s = compat_mode(parse_spec(f.ann, d));
    RewriteContext c = make_context(s);
    CHECK_FALSE(rewrite(c, parse_xpath("descendant::H")).empty());
    CHECK(rewrite(c, parse_xpath("descendant::F")).empty());
}
