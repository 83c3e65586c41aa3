// xsecview: command-line surface over the schema-view / query-rewriting
// library. Commands: derive, predicates, rewrite, eval, materialize, check,
// gen, bench, fuzz, fixtures.
//
// Exit codes: 0 success (or EQUAL), 1 DIFFER/DIVERGENT, 2 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "xsec/access_spec.hpp"
#include "xsec/docgen.hpp"
#include "xsec/dtd.hpp"
#include "xsec/errors.hpp"
#include "xsec/eval.hpp"
#include "xsec/fixtures.hpp"
#include "xsec/predicates.hpp"
#include "xsec/random_gen.hpp"
#include "xsec/rewrite.hpp"
#include "xsec/view.hpp"
#include "xsec/xml.hpp"
#include "xsec/xpath.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace xsec;

namespace {

constexpr const char* kUnsat = "-- unsatisfiable --";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

/// Emit to the file given by `-o`, or to stdout when it is empty.
void emit(const std::string& outPath, const std::string& content) {
    if (outPath.empty())
        std::cout << content;
    else
        write_file(outPath, content);
}

/// Replace `$name` variables with values given as `--var name=value`.
std::string apply_vars(std::string text, const std::vector<std::string>& vars) {
    std::vector<std::pair<std::string, std::string>> kv;
    for (const auto& v : vars) {
        auto eq = v.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error("--var expects name=value, got: " + v);
        kv.push_back({v.substr(0, eq), v.substr(eq + 1)});
    }
    // Longest names first so $ab is not clobbered by $a.
    std::sort(kv.begin(), kv.end(),
              [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
    for (const auto& [name, value] : kv) {
        const std::string token = "$" + name;
        for (std::size_t pos = 0; (pos = text.find(token, pos)) != std::string::npos;)
            text.replace(pos, token.size(), value);
    }
    return text;
}

/// Expand accessibility macros in a query string before parsing:
///   %acc%      the full accessibility predicate
///   %a1%       its annotation part
///   %a2%       its hereditary part
///   %aplus%    the accessible-ancestors path
///   %a:NAME%   the view-parent-is-NAME predicate
std::string expand_macros(const std::string& text, const PredicateKit& kit) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '%') {
            out += text[i++];
            continue;
        }
        std::size_t end = text.find('%', i + 1);
        if (end == std::string::npos) throw Error("unterminated % macro in query");
        std::string name = text.substr(i + 1, end - i - 1);
        if (name == "acc")
            out += serialize(kit.acc);
        else if (name == "a1")
            out += serialize(kit.a1);
        else if (name == "a2")
            out += serialize(kit.a2);
        else if (name == "aplus")
            out += serialize(kit.aPlus);
        else if (name.rfind("a:", 0) == 0)
            out += serialize(a_elem(kit, name.substr(2)));
        else
            throw Error("unknown macro %" + name + "%");
        i = end + 1;
    }
    return out;
}

struct Common {
    bool definition1 = false;
    bool fast = false;
    bool jsonOut = false;
    std::string format = "paths";
    std::vector<std::string> vars;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_flag("--definition-1", c.definition1,
                  "treat [Q] annotations as hereditary (older semantics)");
    cmd->add_flag("--fast", c.fast, "use the linear rewriting strategy");
    cmd->add_flag("--json", c.jsonOut, "machine-readable output");
    cmd->add_option("--format", c.format, "answer format")
        ->check(CLI::IsMember({"paths", "xml"}))
        ->default_val("paths");
    cmd->add_option("--var", c.vars, "textual $name substitution, name=value");
    cmd->add_option("--seed", c.seed, "random seed");
}

struct Loaded {
    Dtd dtd;
    AccessSpec spec;
    RewriteContext ctx;
};

Loaded load(const std::string& dtdFile, const std::string& annFile, const Common& c) {
    Loaded l;
    l.dtd = parse_dtd(apply_vars(read_file(dtdFile), c.vars));
    l.spec = parse_spec(apply_vars(read_file(annFile), c.vars), l.dtd);
    if (c.definition1) l.spec = compat_mode(l.spec);
    l.ctx = make_context(l.spec);
    return l;
}

std::string format_answer(const XmlTree& t, const NodeSet& ans, const std::string& format) {
    std::string out;
    for (int id : ans)
        out += format == "xml" ? serialize_xml(t, id) + "\n" : node_path(t, id) + "\n";
    return out;
}

json answer_json(const XmlTree& t, const NodeSet& ans, const std::string& format) {
    json arr = json::array();
    for (int id : ans)
        arr.push_back(format == "xml" ? serialize_xml(t, id) : node_path(t, id));
    return arr;
}

/// Original-document node ids selected through the view, sorted.
std::vector<int> mapped_sorted(const Materialized& m, const NodeSet& viewAns) {
    std::vector<int> out;
    for (int id : viewAns) out.push_back(m.toOriginal[id]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    std::size_t n = xs.size();
    return n == 0 ? 0.0 : n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

template <class F> double timed_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

// ---- commands -------------------------------------------------------------

int cmd_derive(const std::string& dtdFile, const std::string& annFile,
               const std::string& outPath, const Common& c) {
    Loaded l = load(dtdFile, annFile, c);
    ViewStats st = view_stats(l.ctx.view);
    if (c.jsonOut) {
        json j{{"view", serialize_dtd(l.ctx.view.view)},
               {"kept", st.kept},
               {"elided", l.ctx.view.elided},
               {"recursive", st.recursive}};
        emit(outPath, j.dump(2) + "\n");
    } else {
        emit(outPath, serialize_dtd(l.ctx.view.view));
    }
    return 0;
}

int cmd_predicates(const std::string& dtdFile, const std::string& annFile, const Common& c) {
    Loaded l = load(dtdFile, annFile, c);
    const PredicateKit& k = l.ctx.kit;
    if (c.jsonOut) {
        json j{{"a1", serialize(k.a1)},
               {"a2", serialize(k.a2)},
               {"acc", serialize(k.acc)},
               {"aPlus", serialize(k.aPlus)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "a1:    " << serialize(k.a1) << "\n"
                  << "a2:    " << serialize(k.a2) << "\n"
                  << "acc:   " << serialize(k.acc) << "\n"
                  << "aPlus: " << serialize(k.aPlus) << "\n";
    }
    return 0;
}

int cmd_rewrite(const std::string& dtdFile, const std::string& annFile,
                const std::string& queryText, const std::string& context, const Common& c) {
    Loaded l = load(dtdFile, annFile, c);
    PathPtr q = parse_xpath(apply_vars(queryText, c.vars));
    RewriteResult r =
        c.fast ? rewrite_fast(l.ctx, q, context) : rewrite(l.ctx, q, context);
    if (c.jsonOut) {
        json j{{"unsatisfiable", r.empty()}, {"work", r.work}};
        if (!r.empty()) {
            j["query"] = serialize(r.query);
            j["fragment"] = fragment_name(classify(r.query));
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (r.empty() ? kUnsat : serialize(r.query)) << "\n";
    }
    return 0;
}

int cmd_eval(const std::string& xmlFile, const std::string& queryText,
             const std::string& dtdFile, const std::string& annFile,
             const std::string& contextPath, const Common& c) {
    XmlTree t = parse_xml(read_file(xmlFile));
    std::string text = apply_vars(queryText, c.vars);
    if (!annFile.empty()) {
        // A policy enables the %acc% family of macros in the query.
        Loaded l = load(dtdFile, annFile, c);
        text = expand_macros(text, l.ctx.kit);
    } else if (text.find('%') != std::string::npos) {
        throw Error("accessibility macros require --dtd and --ann");
    }
    PathPtr q = parse_xpath(text);
    NodeSet ans = eval(t, q, resolve_path(t, contextPath));
    if (c.jsonOut)
        std::cout << json{{"answer", answer_json(t, ans, c.format)}}.dump(2) << "\n";
    else
        std::cout << format_answer(t, ans, c.format);
    return 0;
}

int cmd_materialize(const std::string& dtdFile, const std::string& annFile,
                    const std::string& xmlFile, const std::string& outPath, const Common& c) {
    Loaded l = load(dtdFile, annFile, c);
    XmlTree t = parse_xml(read_file(xmlFile));
    Materialized m = materialize(t, l.spec);
    if (c.jsonOut) {
        json j{{"view", serialize_xml(m.view)},
               {"nodes", m.view.size()},
               {"originalNodes", t.size()}};
        emit(outPath, j.dump(2) + "\n");
    } else {
        emit(outPath, serialize_xml(m.view) + "\n");
    }
    return 0;
}

/// Run both pipelines for one query and compare answers on the original
/// document. `injected` (optional) replaces the rewriter's output with a
/// hand-written query, macros expanded.
int check_one(const Loaded& l, const XmlTree& t, const PathPtr& q,
              const std::string& injected, const Common& c, json* jout) {
    Materialized m = materialize(t, l.spec);
    NodeSet viewAns = eval(m.view, q, m.view.root());
    std::vector<int> want = mapped_sorted(m, viewAns);

    std::vector<int> got;
    std::string rewritten;
    if (!injected.empty()) {
        PathPtr iq = parse_xpath(expand_macros(apply_vars(injected, c.vars), l.ctx.kit));
        rewritten = serialize(iq);
        got = eval(t, iq, t.root());
    } else {
        RewriteResult r = c.fast ? rewrite_fast(l.ctx, q) : rewrite(l.ctx, q);
        rewritten = r.empty() ? kUnsat : serialize(r.query);
        if (!r.empty()) got = eval(t, r.query, t.root());
    }
    std::sort(got.begin(), got.end());
    got.erase(std::unique(got.begin(), got.end()), got.end());

    bool equal = want == got;
    std::string witness;
    if (!equal) {
        std::vector<int> diff;
        std::set_symmetric_difference(want.begin(), want.end(), got.begin(), got.end(),
                                      std::back_inserter(diff));
        witness = node_path(t, diff.front());
    }
    if (jout) {
        *jout = json{{"verdict", equal ? "EQUAL" : "DIFFER"},
                     {"rewritten", rewritten},
                     {"answerSize", want.size()}};
        if (!equal) (*jout)["witness"] = witness;
    } else {
        if (equal)
            std::cout << "EQUAL (" << want.size() << " answer nodes)\n";
        else
            std::cout << "DIFFER witness " << witness << "\n";
    }
    return equal ? 0 : 1;
}

int cmd_check(const std::string& dtdFile, const std::string& annFile,
              const std::string& xmlFile, const std::string& queryText,
              const std::string& injected, const Common& c) {
    Loaded l = load(dtdFile, annFile, c);
    XmlTree t = parse_xml(read_file(xmlFile));
    PathPtr q = parse_xpath(apply_vars(queryText, c.vars));
    json j;
    int rc = check_one(l, t, q, injected, c, c.jsonOut ? &j : nullptr);
    if (c.jsonOut) std::cout << j.dump(2) << "\n";
    return rc;
}

int cmd_gen(const std::string& dtdFile, std::size_t maxDepth, std::size_t targetNodes,
            double starP, const std::string& outPath, const Common& c) {
    Dtd d = parse_dtd(apply_vars(read_file(dtdFile), c.vars));
    GenOptions opt;
    opt.seed = c.seed;
    opt.maxDepth = maxDepth;
    opt.targetNodes = targetNodes;
    opt.starP = starP;
    XmlTree t = generate(d, opt);
    emit(outPath, serialize_xml(t) + "\n");
    return 0;
}

/// Query file: one query per line, optionally prefixed `name: `; '#' comments.
std::vector<std::pair<std::string, std::string>> load_queries(const std::string& path) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(read_file(path));
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line.erase(0, start);
        ++n;
        auto colon = line.find(": ");
        if (colon != std::string::npos)
            out.push_back({line.substr(0, colon), line.substr(colon + 2)});
        else
            out.push_back({"q" + std::to_string(n), line});
    }
    return out;
}

int cmd_bench(const std::string& dtdFile, const std::string& annFile,
              const std::string& corpusDir, const std::string& queriesFile, int reps,
              const std::string& outPath, const Common& c) {
    Loaded l = load(dtdFile, annFile, c);
    auto queries = load_queries(queriesFile);

    std::vector<fs::path> docs;
    for (const auto& e : fs::directory_iterator(corpusDir))
        if (e.is_regular_file() && e.path().extension() == ".xml") docs.push_back(e.path());
    std::sort(docs.begin(), docs.end());

    std::ostringstream csv;
    csv << "document,nodes,query,strategy,parse_ms,prep_ms,answer_ms,answer_size,status\n";
    bool divergent = false;

    for (const auto& doc : docs) {
        std::string raw = read_file(doc.string());
        XmlTree t;
        double parseMs = timed_ms([&] { t = parse_xml(raw); });
        for (const auto& [name, text] : queries) {
            PathPtr q = parse_xpath(apply_vars(text, c.vars));

            // Rewriting strategy: compile the query, answer on the original.
            std::vector<double> prepR, ansR;
            RewriteResult r;
            NodeSet gotOrig;
            for (int i = 0; i < reps; ++i) {
                prepR.push_back(timed_ms(
                    [&] { r = c.fast ? rewrite_fast(l.ctx, q) : rewrite(l.ctx, q); }));
                ansR.push_back(timed_ms([&] {
                    gotOrig = r.empty() ? NodeSet{} : eval(t, r.query, t.root());
                }));
            }

            // Materialization strategy: build the view, answer on the view.
            std::vector<double> prepM, ansM;
            Materialized m;
            NodeSet gotView;
            for (int i = 0; i < reps; ++i) {
                prepM.push_back(timed_ms([&] { m = materialize(t, l.spec); }));
                ansM.push_back(timed_ms([&] { gotView = eval(m.view, q, m.view.root()); }));
            }

            bool equal = answer_equal(gotView, m, gotOrig);
            if (!equal) divergent = true;
            const char* status = equal ? "EQUAL" : "DIVERGENT";
            csv << doc.filename().string() << "," << t.size() << "," << name << ",rewrite,"
                << parseMs << "," << median(prepR) << "," << median(ansR) << ","
                << gotOrig.size() << "," << status << "\n";
            csv << doc.filename().string() << "," << t.size() << "," << name
                << ",materialize," << parseMs << "," << median(prepM) << ","
                << median(ansM) << "," << gotView.size() << "," << status << "\n";
        }
    }
    emit(outPath, csv.str());
    return divergent ? 1 : 0;
}

int cmd_fuzz(int cases, std::size_t maxTypes, std::size_t maxAnn, std::size_t targetNodes,
             const Common& c) {
    std::mt19937_64 rng(c.seed);
    int differ = 0;
    for (int i = 0; i < cases; ++i) {
        Dtd d = random_dtd(rng, maxTypes, i % 2 == 0);
        AccessSpec s = random_spec(rng, d, maxAnn);
        if (c.definition1) s = compat_mode(s);
        RewriteContext ctx = make_context(s);
        GenOptions g;
        g.seed = rng();
        g.targetNodes = 1 + rng() % targetNodes;
        XmlTree t = generate(d, g);
        Materialized m = materialize(t, s);
        QueryOptions qo;
        qo.upward = true;
        PathPtr q = random_query(rng, d, qo);
        NodeSet viewAns = eval(m.view, q, m.view.root());
        for (bool fast : {false, true}) {
            RewriteResult r = fast ? rewrite_fast(ctx, q) : rewrite(ctx, q);
            NodeSet orig = r.empty() ? NodeSet{} : eval(t, r.query, t.root());
            if (!answer_equal(viewAns, m, orig)) {
                ++differ;
                std::cout << "DIFFER case " << i << (fast ? " (fast)" : "") << " query "
                          << serialize(q) << "\n";
            }
        }
    }
    if (c.jsonOut)
        std::cout << json{{"cases", cases}, {"differ", differ}}.dump(2) << "\n";
    else
        std::cout << "cases: " << cases << ", differ: " << differ << "\n";
    return differ == 0 ? 0 : 1;
}

int cmd_fixtures(const std::string& outDir) {
    fs::create_directories(outDir);
    for (const Fixture& f : fixtures()) {
        const fs::path base = fs::path(outDir) / f.name;
        write_file(base.string() + ".dtd", f.dtd);
        write_file(base.string() + ".ann", f.ann);
        if (!f.xml.empty()) write_file(base.string() + ".xml", f.xml);
        if (!f.queries.empty()) {
            std::string qs;
            for (const auto& [name, q] : f.queries) qs += name + ": " + q + "\n";
            write_file(base.string() + ".queries", qs);
        }
        write_file(base.string() + ".RECONSTRUCTED.txt", f.notes + "\n");
        std::cout << f.name << (f.definition1 ? " (use --definition-1)" : "") << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DTD-view derivation and XPath query rewriting toolkit"};
    app.require_subcommand(1);

    Common c;
    std::string dtdFile, annFile, xmlFile, queryText, injected, outPath;
    std::string context, contextPath = "/";
    std::string corpusDir, queriesFile, fixturesDir = "fixtures";
    std::size_t maxDepth = 40, targetNodes = 100, maxTypes = 10, maxAnn = 8;
    double starP = 0.5;
    int reps = 3, cases = 100;

    auto* derive = app.add_subcommand("derive", "derive the schema view of a policy");
    derive->add_option("--dtd", dtdFile, "schema file")->required();
    derive->add_option("--ann", annFile, "annotation file")->required();
    derive->add_option("-o,--output", outPath, "output file (default stdout)");
    add_common(derive, c);

    auto* preds = app.add_subcommand("predicates", "print the accessibility predicates");
    preds->add_option("--dtd", dtdFile)->required();
    preds->add_option("--ann", annFile)->required();
    add_common(preds, c);

    auto* rw = app.add_subcommand("rewrite", "rewrite a view query for the original document");
    rw->add_option("--dtd", dtdFile)->required();
    rw->add_option("--ann", annFile)->required();
    rw->add_option("--query", queryText)->required();
    rw->add_option("--context", context, "view element type the query starts at");
    add_common(rw, c);

    auto* ev = app.add_subcommand("eval", "evaluate a query on a document");
    ev->add_option("--xml", xmlFile)->required();
    ev->add_option("--query", queryText)->required();
    ev->add_option("--dtd", dtdFile, "schema (with --ann, enables %acc% macros)");
    ev->add_option("--ann", annFile, "policy (enables %acc% macros)")->needs(ev->get_option("--dtd"));
    ev->add_option("--context", contextPath, "context node path (default /)");
    add_common(ev, c);

    auto* mat = app.add_subcommand("materialize", "compute the authorized view of a document");
    mat->add_option("--dtd", dtdFile)->required();
    mat->add_option("--ann", annFile)->required();
    mat->add_option("--xml", xmlFile)->required();
    mat->add_option("-o,--output", outPath);
    add_common(mat, c);

    auto* chk = app.add_subcommand(
        "check", "compare the materialization and rewriting pipelines on one query");
    chk->add_option("--dtd", dtdFile)->required();
    chk->add_option("--ann", annFile)->required();
    chk->add_option("--xml", xmlFile)->required();
    chk->add_option("--query", queryText)->required();
    chk->add_option("--inject-query", injected,
                    "evaluate this query (with %acc% macros) instead of the rewriter output");
    add_common(chk, c);

    auto* gen = app.add_subcommand("gen", "generate a random conforming document");
    gen->add_option("--dtd", dtdFile)->required();
    gen->add_option("--max-depth", maxDepth);
    gen->add_option("--target-nodes", targetNodes);
    gen->add_option("--star-p", starP, "continuation probability for repeated content");
    gen->add_option("-o,--output", outPath);
    add_common(gen, c);

    auto* bench = app.add_subcommand("bench", "CSV timing of rewriting vs materialization");
    bench->add_option("--dtd", dtdFile)->required();
    bench->add_option("--ann", annFile)->required();
    bench->add_option("--corpus", corpusDir, "directory of .xml documents")->required();
    bench->add_option("--queries", queriesFile, "query file, one per line")->required();
    bench->add_option("--reps", reps)->check(CLI::Range(1, 1000));
    bench->add_option("-o,--output", outPath);
    add_common(bench, c);

    auto* fuzz = app.add_subcommand("fuzz", "randomized closure campaign");
    fuzz->add_option("--cases", cases)->check(CLI::PositiveNumber);
    fuzz->add_option("--max-types", maxTypes);
    fuzz->add_option("--max-ann", maxAnn);
    fuzz->add_option("--target-nodes", targetNodes);
    add_common(fuzz, c);

    auto* fx = app.add_subcommand("fixtures", "write the built-in example data sets");
    fx->add_option("-o,--output", fixturesDir, "output directory (default ./fixtures)");
    add_common(fx, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (derive->parsed()) return cmd_derive(dtdFile, annFile, outPath, c);
        if (preds->parsed()) return cmd_predicates(dtdFile, annFile, c);
        if (rw->parsed()) return cmd_rewrite(dtdFile, annFile, queryText, context, c);
        if (ev->parsed()) return cmd_eval(xmlFile, queryText, dtdFile, annFile, contextPath, c);
        if (mat->parsed()) return cmd_materialize(dtdFile, annFile, xmlFile, outPath, c);
        if (chk->parsed()) return cmd_check(dtdFile, annFile, xmlFile, queryText, injected, c);
        if (gen->parsed()) return cmd_gen(dtdFile, maxDepth, targetNodes, starP, outPath, c);
        if (bench->parsed())
            return cmd_bench(dtdFile, annFile, corpusDir, queriesFile, reps, outPath, c);
        if (fuzz->parsed()) return cmd_fuzz(cases, maxTypes, maxAnn, targetNodes, c);
        if (fx->parsed()) return cmd_fixtures(fixturesDir);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
