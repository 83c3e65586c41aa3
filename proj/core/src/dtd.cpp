#include "xsec/dtd.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "xsec/errors.hpp"

namespace xsec {

ContentPtr ContentModel::text() {
    return std::make_shared<ContentModel>(ContentModel{Kind::Text, {}, {}});
}

ContentPtr ContentModel::empty() {
    return std::make_shared<ContentModel>(ContentModel{Kind::Empty, {}, {}});
}

ContentPtr ContentModel::element(std::string name) {
    return std::make_shared<ContentModel>(ContentModel{Kind::Name, std::move(name), {}});
}

static ContentPtr make_nary(ContentModel::Kind kind, std::vector<ContentPtr> kids) {
    std::vector<ContentPtr> flat;
    for (auto& k : kids) {
        if (k->kind == kind) {
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        } else {
            flat.push_back(std::move(k));
        }
    }
    if (flat.size() == 1) return flat.front();
    return std::make_shared<ContentModel>(ContentModel{kind, {}, std::move(flat)});
}

ContentPtr ContentModel::seq(std::vector<ContentPtr> kids) {
    // ε is the identity of concatenation.
    std::erase_if(kids, [](const ContentPtr& k) { return k->kind == Kind::Empty; });
    if (kids.empty()) return empty();
    return make_nary(Kind::Seq, std::move(kids));
}

ContentPtr ContentModel::alt(std::vector<ContentPtr> kids) {
    return make_nary(Kind::Alt, std::move(kids));
}

ContentPtr ContentModel::star(ContentPtr kid) {
    return std::make_shared<ContentModel>(ContentModel{Kind::Star, {}, {std::move(kid)}});
}

bool content_equal(const ContentPtr& a, const ContentPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name) return false;
    if (a->kids.size() != b->kids.size()) return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!content_equal(a->kids[i], b->kids[i])) return false;
    return true;
}

std::size_t Dtd::decl_index(const std::string& name) const {
    auto it = std::find(order.begin(), order.end(), name);
    return it == order.end() ? order.size() : static_cast<std::size_t>(it - order.begin());
}

bool dtd_equal(const Dtd& a, const Dtd& b) {
    if (a.root != b.root || a.order != b.order) return false;
    for (const auto& name : a.order)
        if (!content_equal(a.productions.at(name), b.productions.at(name))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class DtdLexer {
public:
    explicit DtdLexer(const std::string& text) : src_(text) {}

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eof() {
        skip_ws();
        return pos_ >= src_.size();
    }

    char peek() { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    void expect(const std::string& lit) {
        skip_ws();
        if (src_.compare(pos_, lit.size(), lit) != 0)
            throw SyntaxError("expected '" + lit + "'", pos_);
        pos_ += lit.size();
    }

    bool try_consume(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string name() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                src_[pos_] == '-' || src_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ == start) throw SyntaxError("expected a name", pos_);
        return src_.substr(start, pos_ - start);
    }

    std::size_t pos() const { return pos_; }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
};

ContentPtr apply_postfix(DtdLexer& lex, ContentPtr cm) {
    if (lex.try_consume('*')) return ContentModel::star(std::move(cm));
    if (lex.try_consume('?')) return ContentModel::alt({std::move(cm), ContentModel::empty()});
    if (lex.try_consume('+')) {
        auto rep = ContentModel::star(cm);
        return ContentModel::seq({std::move(cm), std::move(rep)});
    }
    return cm;
}

ContentPtr parse_group(DtdLexer& lex);

ContentPtr parse_cm(DtdLexer& lex) {
    lex.skip_ws();
    ContentPtr cm;
    if (lex.peek() == '(') {
        cm = parse_group(lex);
    } else {
        cm = ContentModel::element(lex.name());
    }
    return apply_postfix(lex, std::move(cm));
}

ContentPtr parse_group(DtdLexer& lex) {
    lex.expect("(");
    std::vector<ContentPtr> kids;
    kids.push_back(parse_cm(lex));
    char sep = '\0';
    while (!lex.try_consume(')')) {
        lex.skip_ws();
        char c = lex.peek();
        if (c != ',' && c != '|') throw SyntaxError("expected ',', '|' or ')'", lex.pos());
        if (sep == '\0') sep = c;
        if (c != sep) throw SyntaxError("mixed ',' and '|' in one group", lex.pos());
        lex.try_consume(c);
        kids.push_back(parse_cm(lex));
    }
    if (sep == '|') return ContentModel::alt(std::move(kids));
    return ContentModel::seq(std::move(kids));
}

ContentPtr parse_content(DtdLexer& lex) {
    lex.skip_ws();
    if (lex.peek() != '(') {
        std::string word = lex.name();
        if (word == "EMPTY") return ContentModel::empty();
        throw SyntaxError("expected 'EMPTY', '(#PCDATA)' or a group", lex.pos());
    }
    // Distinguish (#PCDATA) from an element group; the leading '(' is
    // consumed either way, so the group body is parsed inline here.
    lex.expect("(");
    if (lex.try_consume('#')) {
        std::string word = lex.name();
        if (word != "PCDATA") throw SyntaxError("expected PCDATA", lex.pos());
        lex.expect(")");
        return ContentModel::text();
    }
    std::vector<ContentPtr> kids;
    kids.push_back(parse_cm(lex));
    char sep = '\0';
    while (!lex.try_consume(')')) {
        lex.skip_ws();
        char c = lex.peek();
        if (c != ',' && c != '|') throw SyntaxError("expected ',', '|' or ')'", lex.pos());
        if (sep == '\0') sep = c;
        if (c != sep) throw SyntaxError("mixed ',' and '|' in one group", lex.pos());
        lex.try_consume(c);
        kids.push_back(parse_cm(lex));
    }
    ContentPtr grouped = (sep == '|') ? ContentModel::alt(std::move(kids))
                                      : ContentModel::seq(std::move(kids));
    return apply_postfix(lex, std::move(grouped));
}

void collect_names(const ContentPtr& cm, std::vector<std::string>& out) {
    switch (cm->kind) {
        case ContentModel::Kind::Name:
            if (std::find(out.begin(), out.end(), cm->name) == out.end()) out.push_back(cm->name);
            break;
        case ContentModel::Kind::Seq:
        case ContentModel::Kind::Alt:
        case ContentModel::Kind::Star:
            for (const auto& k : cm->kids) collect_names(k, out);
            break;
        default:
            break;
    }
}

bool contains_text(const ContentPtr& cm) {
    if (cm->kind == ContentModel::Kind::Text) return true;
    for (const auto& k : cm->kids)
        if (contains_text(k)) return true;
    return false;
}

} // namespace

std::vector<std::string> content_names(const ContentPtr& cm) {
    std::vector<std::string> out;
    collect_names(cm, out);
    return out;
}

Dtd parse_dtd(const std::string& text) {
    DtdLexer lex(text);
    Dtd d;
    while (!lex.eof()) {
        lex.expect("<!ELEMENT");
        std::string name = lex.name();
        ContentPtr cm = parse_content(lex);
        lex.expect(">");
        if (d.has_type(name)) throw SyntaxError("redeclaration of element type " + name, lex.pos());
        if (cm->kind != ContentModel::Kind::Text && contains_text(cm))
            throw SyntaxError("mixed content is not supported for element type " + name, lex.pos());
        d.order.push_back(name);
        d.productions.emplace(name, std::move(cm));
    }
    if (d.order.empty()) throw NoRootError();
    d.root = d.order.front();

    for (const auto& name : d.order)
        for (const auto& ref : content_names(d.productions.at(name)))
            if (!d.has_type(ref)) throw UndeclaredTypeError(ref);

    // Every type must be reachable from the root via child edges.
    std::set<std::string> seen{d.root};
    std::vector<std::string> work{d.root};
    while (!work.empty()) {
        std::string cur = work.back();
        work.pop_back();
        for (const auto& c : content_names(d.productions.at(cur)))
            if (seen.insert(c).second) work.push_back(c);
    }
    for (const auto& name : d.order)
        if (!seen.count(name)) throw UnreachableTypeError(name);

    return d;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string content_body(const ContentPtr& cm);

std::string content_atom(const ContentPtr& cm) {
    switch (cm->kind) {
        case ContentModel::Kind::Name:
            return cm->name;
        case ContentModel::Kind::Star: {
            const auto& k = cm->kids[0];
            if (k->kind == ContentModel::Kind::Name) return k->name + "*";
            return "(" + content_body(k) + ")*";
        }
        default:
            return "(" + content_body(cm) + ")";
    }
}

std::string content_body(const ContentPtr& cm) {
    switch (cm->kind) {
        case ContentModel::Kind::Name:
            return cm->name;
        case ContentModel::Kind::Star:
            return content_atom(cm);
        case ContentModel::Kind::Seq: {
            // x+ sugar: Seq[x, Star x] with exactly two children.
            if (cm->kids.size() == 2 && cm->kids[1]->kind == ContentModel::Kind::Star &&
                content_equal(cm->kids[0], cm->kids[1]->kids[0]) &&
                cm->kids[0]->kind == ContentModel::Kind::Name) {
                return cm->kids[0]->name + "+";
            }
            std::string out;
            for (std::size_t i = 0; i < cm->kids.size(); ++i) {
                if (i) out += ",";
                out += content_atom(cm->kids[i]);
            }
            return out;
        }
        case ContentModel::Kind::Alt: {
            // x? sugar: Alt[..., Empty] renders as an optional group.
            bool has_empty = false;
            std::vector<ContentPtr> rest;
            for (const auto& k : cm->kids) {
                if (k->kind == ContentModel::Kind::Empty) {
                    has_empty = true;
                } else {
                    rest.push_back(k);
                }
            }
            if (has_empty) {
                if (rest.size() == 1 && rest[0]->kind == ContentModel::Kind::Name)
                    return rest[0]->name + "?";
                std::string inner;
                for (std::size_t i = 0; i < rest.size(); ++i) {
                    if (i) inner += "|";
                    inner += content_atom(rest[i]);
                }
                return "(" + inner + ")?";
            }
            std::string out;
            for (std::size_t i = 0; i < cm->kids.size(); ++i) {
                if (i) out += "|";
                out += content_atom(cm->kids[i]);
            }
            return out;
        }
        default:
            return "";
    }
}

} // namespace

std::string serialize_content(const ContentPtr& cm) {
    switch (cm->kind) {
        case ContentModel::Kind::Empty:
            return "EMPTY";
        case ContentModel::Kind::Text:
            return "(#PCDATA)";
        case ContentModel::Kind::Name:
            return "(" + cm->name + ")";
        default:
            return "(" + content_body(cm) + ")";
    }
}

std::string serialize_dtd(const Dtd& d) {
    std::ostringstream out;
    for (const auto& name : d.order)
        out << "<!ELEMENT " << name << " " << serialize_content(d.productions.at(name)) << ">\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Reachability

ReachIndex build_reach_index(const Dtd& d) {
    ReachIndex idx;
    for (const auto& name : d.order) {
        auto kids = content_names(d.productions.at(name));
        std::sort(kids.begin(), kids.end(), [&](const std::string& a, const std::string& b) {
            return d.decl_index(a) < d.decl_index(b);
        });
        idx.children[name] = std::move(kids);
    }
    // Transitive closure by iteration to a fixpoint.
    std::map<std::string, std::set<std::string>> desc;
    for (const auto& name : d.order)
        desc[name] = {idx.children[name].begin(), idx.children[name].end()};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& name : d.order) {
            auto& mine = desc[name];
            std::set<std::string> add;
            for (const auto& c : mine)
                for (const auto& g : desc[c])
                    if (!mine.count(g)) add.insert(g);
            if (!add.empty()) {
                mine.insert(add.begin(), add.end());
                changed = true;
            }
        }
    }
    for (const auto& name : d.order) {
        std::vector<std::string> v(desc[name].begin(), desc[name].end());
        std::sort(v.begin(), v.end(), [&](const std::string& a, const std::string& b) {
            return d.decl_index(a) < d.decl_index(b);
        });
        idx.descendants[name] = std::move(v);
    }
    return idx;
}

bool is_recursive(const Dtd& d) {
    auto idx = build_reach_index(d);
    for (const auto& name : d.order) {
        const auto& ds = idx.descendants.at(name);
        if (std::find(ds.begin(), ds.end(), name) != ds.end()) return true;
    }
    return false;
}

} // namespace xsec
