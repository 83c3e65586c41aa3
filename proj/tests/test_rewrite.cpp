#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xsec/access_spec.hpp"
#include "xsec/dtd.hpp"
#include "xsec/errors.hpp"
#include "xsec/eval.hpp"
#include "xsec/fixtures.hpp"
#include "xsec/rewrite.hpp"
#include "xsec/xml.hpp"
#include "xsec/docgen.hpp"

#include <random>

#include "support/random_gen.hpp"

using namespace xsec;

namespace {

RewriteContext context_for(const std::string& name) {
    const Fixture& f = fixture(name);
    Dtd d = parse_dtd(f.dtd);
    AccessSpec s = parse_spec(f.ann, d);
    if (f.definition1) s = compat_mode(s);
    return make_context(s);
}

/// Both strategies must return, on the original document, exactly the answer
/// of the query over the materialized view.
void check_agreement(const RewriteContext& c, const std::string& xml,
                     const std::string& query) {
    CAPTURE(query);
    XmlTree t = parse_xml(xml);
    Materialized m = materialize(t, c.spec);
    PathPtr q = parse_xpath(query);
    NodeSet viewAns = eval(m.view, q, m.view.root());
    for (bool fast : {false, true}) {
        CAPTURE(fast);
        RewriteResult r = fast ? rewrite_fast(c, q) : rewrite(c, q);
        NodeSet origAns = r.empty() ? NodeSet{} : eval(t, r.query, t.root());
        CHECK(answer_equal(viewAns, m, origAns));
    }
}

} // namespace

TEST_CASE("child steps become upward parent tests") {
    RewriteContext c = context_for("nested");
    PathPtr aPlus1 = Path::with_qual(c.kit.aPlus, Qual::at_position(1));

    QualPtr p1 = Qual::exists(Path::slash(aPlus1, Path::step(Axis::Self, "root")));
    QualPtr p2 = Qual::exists(Path::slash(aPlus1, Path::step(Axis::Self, "A", {p1})));
    PathPtr expected = Path::step(Axis::Descendant, "E", {c.kit.acc, p2});

    RewriteResult r = rewrite(c, parse_xpath("child::A/child::E"));
    REQUIRE_FALSE(r.empty());
    CAPTURE(serialize(r.query));
    CHECK(path_equal(r.query, expected));
    CHECK(classify(r.query) == FragmentClass::XUpPos);

    // Here every reach set is a singleton, so the linear strategy coincides.
    RewriteResult rf = rewrite_fast(c, parse_xpath("child::A/child::E"));
    CHECK(path_equal(rf.query, expected));

    XmlTree t = parse_xml(fixture("nested").xml);
    NodeSet ans = eval(t, r.query, t.root());
    REQUIRE(ans.size() == 1);
    CHECK(node_path(t, ans[0]) == "/0/0/0/0"); // the only E whose view parent chain is A, root
}

TEST_CASE("qualifiers rewrite to view-parent comparisons") {
    RewriteContext c = context_for("nested");
    PathPtr aPlus1 = Path::with_qual(c.kit.aPlus, Qual::at_position(1));

    QualPtr pref = Qual::exists(Path::step(Axis::Ancestor, "root", {c.kit.acc}));
    QualPtr f1 = Qual::node_equals(
        Path::slash(Path::step(Axis::Descendant, "E", {c.kit.acc}), aPlus1),
        Path::step(Axis::Self, "A"));
    PathPtr expected = Path::step(Axis::Descendant, "A", {c.kit.acc, f1, pref});

    RewriteResult r = rewrite(c, parse_xpath("descendant::A[child::E]"));
    REQUIRE_FALSE(r.empty());
    CAPTURE(serialize(r.query));
    CHECK(path_equal(r.query, expected));
    CHECK(classify(r.query) == FragmentClass::XUpPosEq);

    XmlTree t = parse_xml(fixture("nested").xml);
    NodeSet ans = eval(t, r.query, t.root());
    REQUIRE(ans.size() == 2);
    CHECK(node_path(t, ans[0]) == "/0");   // first A
    CHECK(node_path(t, ans[1]) == "/1/0"); // nested A with a promoted E child
}

TEST_CASE("schema pruning yields empty results") {
    RewriteContext c = context_for("nested");
    CHECK(rewrite(c, parse_xpath("child::B")).empty());          // B is never in the view
    CHECK(rewrite(c, parse_xpath("child::E/child::A")).empty()); // E has no children
    CHECK(rewrite(c, parse_xpath("descendant::A[child::C]")).empty());

    RewriteContext h = context_for("hospital");
    CHECK(rewrite(h, parse_xpath("descendant::name")).empty());
    CHECK(rewrite(h, parse_xpath("descendant::sibling")).empty());
    CHECK_FALSE(rewrite(h, parse_xpath("descendant::diagnosis")).empty());

    // Unions drop only their unsatisfiable branches.
    RewriteResult u = rewrite(c, parse_xpath("child::A|child::B"));
    REQUIRE_FALSE(u.empty());
    CHECK(u.query->kind == Path::Kind::Step);
    CHECK(u.query->label == "A");
}

TEST_CASE("input fragment is enforced") {
    RewriteContext c = context_for("nested");
    CHECK_THROWS_AS(rewrite(c, parse_xpath("child::A[2]")), FragmentError);
    CHECK_THROWS_AS(rewrite(c, parse_xpath("child::A[child::E = self::A]")), FragmentError);
    CHECK_THROWS_AS(rewrite_fast(c, parse_xpath("child::A[2]")), FragmentError);
    CHECK_THROWS_AS(rewrite(c, parse_xpath("self::root")), UnsupportedFeatureError);
}

TEST_CASE("rewritten answers equal the view answers on the examples") {
    RewriteContext c4 = context_for("nested");
    for (const auto& [name, q] : fixture("nested").queries)
        check_agreement(c4, fixture("nested").xml, q);
    check_agreement(c4, fixture("nested").xml, "descendant::*");
    check_agreement(c4, fixture("nested").xml, "descendant::D/child::E");
    check_agreement(c4, fixture("nested").xml, "child::*/descendant::E");
    check_agreement(c4, fixture("nested").xml, "descendant::E[parent::A]");
    check_agreement(c4, fixture("nested").xml, "descendant::E[ancestor::A[child::E]]");
    check_agreement(c4, fixture("nested").xml, "descendant::*[not(child::*)]");

    RewriteContext c3 = context_for("recursive-doc");
    check_agreement(c3, fixture("recursive-doc").xml, "descendant::H");
    check_agreement(c3, fixture("recursive-doc").xml, "descendant::*/child::H");
    check_agreement(c3, fixture("recursive-doc").xml, "descendant::G[child::H]");

    RewriteContext c21 = context_for("tiny");
    check_agreement(c21, fixture("tiny").xml, "child::A/child::D");
    check_agreement(c21, fixture("tiny").xml, "descendant::D");
    check_agreement(c21, fixture("tiny").xml, "child::A[child::D]");
}

TEST_CASE("rewritten answers equal the view answers on the hospital instance") {
    RewriteContext h = context_for("hospital");
    std::string xml =
        "<hospital><name>h</name><department>"
        "<patient><pname>p1</pname><address>a1</address>"
        "<visit><date>d</date><treatment><medication><diagnosis>disease1"
        "</diagnosis></medication></treatment></visit></patient>"
        "<patient><pname>p2</pname><address>a2</address>"
        "<parent><patient><pname>p3</pname><address>a3</address>"
        "<visit><date>d</date><treatment><medication><diagnosis>disease2"
        "</diagnosis></medication><test><type>blood</type></test></treatment>"
        "</visit></patient></parent>"
        "<visit><date>d</date><treatment><medication><diagnosis>flu"
        "</diagnosis></medication></treatment></visit></patient>"
        "</department></hospital>";
    REQUIRE(conforms(parse_xml(xml), h.spec.dtd));
    for (const auto& [name, q] : fixture("hospital").queries) check_agreement(h, xml, q);
    check_agreement(h, xml, "descendant::patient/child::visit");
    check_agreement(h, xml, "descendant::visit/child::type");
    check_agreement(h, xml, "descendant::patient[child::parent]");
    check_agreement(h, xml, "child::patient/descendant::diagnosis");
}

TEST_CASE("work counters are populated") {
    RewriteContext c = context_for("hospital");
    PathPtr q = parse_xpath("descendant::patient[child::visit/child::diagnosis = 'disease1']");
    RewriteResult slow = rewrite(c, q);
    RewriteResult fast = rewrite_fast(c, q);
    CHECK(slow.work > 0);
    CHECK(fast.work > 0);
    CHECK(fast.work < slow.work); // no reach scans on the fast path
}

TEST_CASE("random closure: rewritten answers match view answers") {
    using namespace xsec::testsupport;
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 100) {
        Dtd d = random_dtd(rng, 8, done % 2 == 0);
        AccessSpec s = random_spec(rng, d, 6);
        RewriteContext c = make_context(s);
        GenOptions gen;
        gen.seed = rng();
        gen.targetNodes = 120;
        XmlTree t = generate(d, gen);
        Materialized m = materialize(t, s);
        QueryOptions qo;
        qo.upward = true;
        PathPtr q = random_query(rng, d, qo);
        NodeSet viewAns = eval(m.view, q, m.view.root());
        for (bool fast : {false, true}) {
            RewriteResult r = fast ? rewrite_fast(c, q) : rewrite(c, q);
            NodeSet origAns = r.empty() ? NodeSet{} : eval(t, r.query, t.root());
            if (!answer_equal(viewAns, m, origAns)) {
                CAPTURE(serialize_dtd(d));
                CAPTURE(serialize_spec(s));
                CAPTURE(serialize_xml(t));
                CAPTURE(serialize(q));
                CAPTURE(fast);
                REQUIRE(answer_equal(viewAns, m, origAns));
            }
        }
        ++done;
    }
    CHECK(done == 100);
}
