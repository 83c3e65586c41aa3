// Informational microbenchmarks: query answering through rewriting (compile
// the query once, evaluate on the original document) versus materialization
// (build the authorized view, evaluate on it). No assertions; the acceptance
// suite checks agreement separately.

#include <benchmark/benchmark.h>

#include "xsec/access_spec.hpp"
#include "xsec/docgen.hpp"
#include "xsec/dtd.hpp"
#include "xsec/eval.hpp"
#include "xsec/fixtures.hpp"
#include "xsec/rewrite.hpp"
#include "xsec/xml.hpp"
#include "xsec/xpath.hpp"

using namespace xsec;

namespace {

struct Setup {
    AccessSpec spec;
    RewriteContext ctx;
    XmlTree doc;
    PathPtr query;
};

Setup hospital_setup(std::size_t nodes) {
    const Fixture& f = fixture("hospital");
    Dtd d = parse_dtd(f.dtd);
    Setup s;
    s.spec = parse_spec(f.ann, d);
    s.ctx = make_context(s.spec);
    GenOptions g;
    g.seed = 42;
    g.targetNodes = nodes;
    g.maxDepth = 8;
    g.starP = 0.8;
    s.doc = generate(d, g);
    s.query = parse_xpath(f.queries.front().second);
    return s;
}

void BM_RewriteAnswer(benchmark::State& state) {
    Setup s = hospital_setup(static_cast<std::size_t>(state.range(0)));
    RewriteResult r = rewrite(s.ctx, s.query);
    for (auto _ : state) {
        NodeSet ans = r.empty() ? NodeSet{} : eval(s.doc, r.query, s.doc.root());
        benchmark::DoNotOptimize(ans);
    }
    state.SetComplexityN(state.range(0));
}

void BM_MaterializeAnswer(benchmark::State& state) {
    Setup s = hospital_setup(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        Materialized m = materialize(s.doc, s.spec);
        NodeSet ans = eval(m.view, s.query, m.view.root());
        benchmark::DoNotOptimize(ans);
    }
    state.SetComplexityN(state.range(0));
}

void BM_RewriteCompile(benchmark::State& state) {
    Setup s = hospital_setup(100);
    for (auto _ : state) {
        RewriteResult r = rewrite(s.ctx, s.query);
        benchmark::DoNotOptimize(r);
    }
}

} // namespace

BENCHMARK(BM_RewriteAnswer)->Arg(1000)->Arg(10000)->Arg(100000)->Complexity();
BENCHMARK(BM_MaterializeAnswer)->Arg(1000)->Arg(10000)->Arg(100000)->Complexity();
BENCHMARK(BM_RewriteCompile);

BENCHMARK_MAIN();
