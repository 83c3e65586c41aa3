#include "xsec/xpath.hpp"

#include <algorithm>
#include <cctype>

#include "xsec/errors.hpp"

namespace xsec {

const char* axis_keyword(Axis a) {
    switch (a) {
        case Axis::Self: return "self";
        case Axis::Child: return "child";
        case Axis::Descendant: return "descendant";
        case Axis::Parent: return "parent";
        case Axis::Ancestor: return "ancestor";
        case Axis::AncestorOrSelf: return "ancestor-or-self";
    }
    return "";
}

// ---------------------------------------------------------------------------
// Builders

PathPtr Path::step(Axis axis, std::string label, std::vector<QualPtr> quals) {
    auto p = std::make_shared<Path>();
    p->kind = Kind::Step;
    p->axis = axis;
    p->label = std::move(label);
    p->quals = std::move(quals);
    return p;
}

PathPtr Path::slash(PathPtr left, PathPtr right) {
    if (right->kind == Kind::Slash) {
        // Left-normalize so a/b/c always parses and rebuilds identically.
        return slash(slash(std::move(left), right->left), right->right);
    }
    auto p = std::make_shared<Path>();
    p->kind = Kind::Slash;
    p->left = std::move(left);
    p->right = std::move(right);
    return p;
}

PathPtr Path::alternatives(std::vector<PathPtr> branches) {
    std::vector<PathPtr> flat;
    for (auto& b : branches) {
        if (b->kind == Kind::Union) {
            flat.insert(flat.end(), b->branches.begin(), b->branches.end());
        } else {
            flat.push_back(std::move(b));
        }
    }
    if (flat.empty()) throw EmptySetError();
    if (flat.size() == 1) return flat.front();
    auto p = std::make_shared<Path>();
    p->kind = Kind::Union;
    p->branches = std::move(flat);
    return p;
}

PathPtr Path::with_qual(const PathPtr& p, QualPtr q) {
    if (q->kind == Qual::Kind::True) return p;
    switch (p->kind) {
        case Kind::Step: {
            auto quals = p->quals;
            quals.push_back(std::move(q));
            return step(p->axis, p->label, std::move(quals));
        }
        case Kind::Slash:
            return slash(p->left, with_qual(p->right, std::move(q)));
        case Kind::Union: {
            std::vector<PathPtr> bs;
            bs.reserve(p->branches.size());
            for (const auto& b : p->branches) bs.push_back(with_qual(b, q));
            return alternatives(std::move(bs));
        }
    }
    return p;
}

static QualPtr make_qual(Qual q) { return std::make_shared<Qual>(std::move(q)); }

QualPtr Qual::truth() {
    static const QualPtr t = make_qual({Kind::True, {}, {}, {}, 0, {}, {}});
    return t;
}

QualPtr Qual::falsity() {
    static const QualPtr f = make_qual({Kind::False, {}, {}, {}, 0, {}, {}});
    return f;
}

QualPtr Qual::exists(PathPtr p) {
    return make_qual({Kind::PathExists, std::move(p), {}, {}, 0, {}, {}});
}

QualPtr Qual::text_equals(PathPtr p, std::string text) {
    return make_qual({Kind::TextEquals, std::move(p), std::move(text), {}, 0, {}, {}});
}

QualPtr Qual::node_equals(PathPtr p, PathPtr self_step) {
    if (self_step->kind != Path::Kind::Step || self_step->axis != Axis::Self ||
        !self_step->quals.empty()) {
        throw FragmentError("node comparison right side must be a bare self-step");
    }
    return make_qual({Kind::NodeEquals, std::move(p), {}, std::move(self_step), 0, {}, {}});
}

QualPtr Qual::at_position(int n) {
    if (n < 1) throw FragmentError("position must be a positive integer");
    return make_qual({Kind::Position, {}, {}, {}, n, {}, {}});
}

QualPtr Qual::conj(QualPtr a, QualPtr b) {
    if (a->kind == Kind::False || b->kind == Kind::False) return falsity();
    if (a->kind == Kind::True) return b;
    if (b->kind == Kind::True) return a;
    return make_qual({Kind::And, {}, {}, {}, 0, std::move(a), std::move(b)});
}

QualPtr Qual::disj(QualPtr a, QualPtr b) {
    if (a->kind == Kind::True || b->kind == Kind::True) return truth();
    if (a->kind == Kind::False) return b;
    if (b->kind == Kind::False) return a;
    return make_qual({Kind::Or, {}, {}, {}, 0, std::move(a), std::move(b)});
}

QualPtr Qual::negate(QualPtr q) {
    if (q->kind == Kind::True) return falsity();
    if (q->kind == Kind::False) return truth();
    return make_qual({Kind::Not, {}, {}, {}, 0, std::move(q), {}});
}

QualPtr Qual::conj_all(const std::vector<QualPtr>& qs) {
    QualPtr acc = truth();
    for (const auto& q : qs) acc = conj(acc, q);
    return acc;
}

QualPtr Qual::disj_all(const std::vector<QualPtr>& qs) {
    QualPtr acc = falsity();
    for (const auto& q : qs) acc = disj(acc, q);
    return acc;
}

// ---------------------------------------------------------------------------
// Structural equality

bool path_equal(const PathPtr& a, const PathPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case Path::Kind::Step: {
            if (a->axis != b->axis || a->label != b->label) return false;
            if (a->quals.size() != b->quals.size()) return false;
            for (std::size_t i = 0; i < a->quals.size(); ++i)
                if (!qual_equal(a->quals[i], b->quals[i])) return false;
            return true;
        }
        case Path::Kind::Slash:
            return path_equal(a->left, b->left) && path_equal(a->right, b->right);
        case Path::Kind::Union: {
            if (a->branches.size() != b->branches.size()) return false;
            for (std::size_t i = 0; i < a->branches.size(); ++i)
                if (!path_equal(a->branches[i], b->branches[i])) return false;
            return true;
        }
    }
    return false;
}

bool qual_equal(const QualPtr& a, const QualPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case Qual::Kind::PathExists:
            return path_equal(a->path, b->path);
        case Qual::Kind::TextEquals:
            return a->text == b->text && path_equal(a->path, b->path);
        case Qual::Kind::NodeEquals:
            return path_equal(a->path, b->path) && path_equal(a->rhs, b->rhs);
        case Qual::Kind::Position:
            return a->position == b->position;
        case Qual::Kind::And:
        case Qual::Kind::Or:
            return qual_equal(a->a, b->a) && qual_equal(a->b, b->b);
        case Qual::Kind::Not:
            return qual_equal(a->a, b->a);
        case Qual::Kind::True:
        case Qual::Kind::False:
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Fragment classification

const char* fragment_name(FragmentClass c) {
    switch (c) {
        case FragmentClass::X: return "X";
        case FragmentClass::XUp: return "X-up";
        case FragmentClass::XUpPos: return "X-up-pos";
        case FragmentClass::XUpPosEq: return "X-up-pos-eq";
    }
    return "";
}

static FragmentClass max_class(FragmentClass a, FragmentClass b) {
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

FragmentClass classify(const PathPtr& p) {
    switch (p->kind) {
        case Path::Kind::Step: {
            FragmentClass c = (p->axis == Axis::Child || p->axis == Axis::Descendant)
                                  ? FragmentClass::X
                                  : FragmentClass::XUp;
            for (const auto& q : p->quals) c = max_class(c, classify(q));
            return c;
        }
        case Path::Kind::Slash:
            return max_class(classify(p->left), classify(p->right));
        case Path::Kind::Union: {
            FragmentClass c = FragmentClass::X;
            for (const auto& b : p->branches) c = max_class(c, classify(b));
            return c;
        }
    }
    return FragmentClass::X;
}

FragmentClass classify(const QualPtr& q) {
    switch (q->kind) {
        case Qual::Kind::PathExists:
        case Qual::Kind::TextEquals:
            return classify(q->path);
        case Qual::Kind::NodeEquals:
            return FragmentClass::XUpPosEq;
        case Qual::Kind::Position:
            return FragmentClass::XUpPos;
        case Qual::Kind::And:
        case Qual::Kind::Or:
            return max_class(classify(q->a), classify(q->b));
        case Qual::Kind::Not:
            return classify(q->a);
        case Qual::Kind::True:
        case Qual::Kind::False:
            return FragmentClass::X;
    }
    return FragmentClass::X;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class QueryParser {
public:
    explicit QueryParser(const std::string& text) : src_(text) {}

    PathPtr parse_full_union() {
        PathPtr p = parse_union();
        skip_ws();
        if (pos_ < src_.size()) throw SyntaxError("trailing input after query", pos_);
        return p;
    }

    QualPtr parse_full_qual() {
        QualPtr q = parse_disj();
        skip_ws();
        if (pos_ < src_.size()) throw SyntaxError("trailing input after qualifier", pos_);
        return q;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool try_consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!try_consume(c)) throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    }

    std::string name() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && name_char(src_[pos_])) ++pos_;
        if (pos_ == start) throw SyntaxError("expected a name", pos_);
        return src_.substr(start, pos_ - start);
    }

    /// Consume `word` only if it appears as a whole token at the cursor.
    bool try_keyword(const char* word) {
        skip_ws();
        std::size_t len = std::char_traits<char>::length(word);
        if (src_.compare(pos_, len, word) != 0) return false;
        if (pos_ + len < src_.size() && name_char(src_[pos_ + len])) return false;
        pos_ += len;
        return true;
    }

    PathPtr parse_union() {
        std::vector<PathPtr> branches;
        branches.push_back(parse_path());
        while (try_consume('|')) branches.push_back(parse_path());
        return Path::alternatives(std::move(branches));
    }

    PathPtr parse_path() {
        PathPtr p = parse_path_step();
        while (try_consume('/')) p = Path::slash(std::move(p), parse_path_step());
        return p;
    }

    PathPtr parse_path_step() {
        if (peek() == '(') {
            expect('(');
            PathPtr inner = parse_union();
            expect(')');
            // Qualifiers after a parenthesized union distribute over branches.
            for (auto& q : parse_quals()) inner = Path::with_qual(inner, std::move(q));
            return inner;
        }
        return parse_step();
    }

    PathPtr parse_step() {
        std::size_t at = pos_;
        std::string word = name();
        Axis axis;
        if (word == "self") axis = Axis::Self;
        else if (word == "child") axis = Axis::Child;
        else if (word == "descendant") axis = Axis::Descendant;
        else if (word == "parent") axis = Axis::Parent;
        else if (word == "ancestor") axis = Axis::Ancestor;
        else if (word == "ancestor-or-self") axis = Axis::AncestorOrSelf;
        else throw SyntaxError("unknown axis '" + word + "'", at);
        expect(':');
        expect(':');
        std::string label = try_consume('*') ? kWildcard : name();
        return Path::step(axis, std::move(label), parse_quals());
    }

    std::vector<QualPtr> parse_quals() {
        std::vector<QualPtr> quals;
        while (peek() == '[') {
            expect('[');
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                int n = 0;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    n = n * 10 + (src_[pos_++] - '0');
                quals.push_back(Qual::at_position(n));
            } else {
                quals.push_back(parse_disj());
            }
            expect(']');
        }
        return quals;
    }

    QualPtr parse_disj() {
        QualPtr q = parse_conj();
        while (try_keyword("or")) q = Qual::disj(std::move(q), parse_conj());
        return q;
    }

    QualPtr parse_conj() {
        QualPtr q = parse_atom();
        while (try_keyword("and")) q = Qual::conj(std::move(q), parse_atom());
        return q;
    }

    QualPtr parse_atom() {
        if (try_keyword("not")) {
            expect('(');
            QualPtr inner = parse_disj();
            expect(')');
            return Qual::negate(std::move(inner));
        }
        if (peek() == '(') {
            // Ambiguous: parenthesized path union vs. parenthesized boolean
            // group. Try the path reading first and fall back on failure.
            std::size_t save = pos_;
            try {
                return parse_path_atom();
            } catch (const SyntaxError&) {
                pos_ = save;
            }
            expect('(');
            QualPtr inner = parse_disj();
            expect(')');
            return inner;
        }
        return parse_path_atom();
    }

    QualPtr parse_path_atom() {
        PathPtr p = parse_path();
        if (!try_consume('=')) return Qual::exists(std::move(p));
        if (peek() == '\'') {
            expect('\'');
            std::size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] != '\'') ++pos_;
            if (pos_ >= src_.size()) throw SyntaxError("unterminated string literal", start);
            std::string text = src_.substr(start, pos_ - start);
            ++pos_;
            return Qual::text_equals(std::move(p), std::move(text));
        }
        std::size_t at = pos_;
        if (!try_keyword("self")) throw SyntaxError("expected 'self::...' or a quoted string", at);
        expect(':');
        expect(':');
        std::string label = try_consume('*') ? kWildcard : name();
        return Qual::node_equals(std::move(p), Path::step(Axis::Self, std::move(label)));
    }
};

void require_class(FragmentClass got, FragmentClass require) {
    if (static_cast<int>(got) > static_cast<int>(require)) {
        throw FragmentError(std::string("expression is in fragment ") + fragment_name(got) +
                            ", outside the required fragment " + fragment_name(require));
    }
}

} // namespace

PathPtr parse_xpath(const std::string& text, FragmentClass require) {
    PathPtr p = QueryParser(text).parse_full_union();
    require_class(classify(p), require);
    return p;
}

QualPtr parse_qual(const std::string& text, FragmentClass require) {
    QualPtr q = QueryParser(text).parse_full_qual();
    require_class(classify(q), require);
    return q;
}

// ---------------------------------------------------------------------------
// Serializer

namespace {

std::string ser_path(const PathPtr& p);
std::string ser_disj(const QualPtr& q);

std::string ser_qual_brackets(const std::vector<QualPtr>& quals) {
    std::string out;
    for (const auto& q : quals) {
        if (q->kind == Qual::Kind::Position) {
            out += "[" + std::to_string(q->position) + "]";
        } else {
            out += "[" + ser_disj(q) + "]";
        }
    }
    return out;
}

/// A path in an operand position: unions need parentheses.
std::string ser_path_operand(const PathPtr& p) {
    if (p->kind == Path::Kind::Union) return "(" + ser_path(p) + ")";
    return ser_path(p);
}

std::string ser_path(const PathPtr& p) {
    switch (p->kind) {
        case Path::Kind::Step:
            return std::string(axis_keyword(p->axis)) + "::" + p->label +
                   ser_qual_brackets(p->quals);
        case Path::Kind::Slash:
            return ser_path_operand(p->left) + "/" + ser_path_operand(p->right);
        case Path::Kind::Union: {
            std::string out;
            for (std::size_t i = 0; i < p->branches.size(); ++i) {
                if (i) out += " | ";
                out += ser_path(p->branches[i]);
            }
            return out;
        }
    }
    return "";
}

std::string ser_atom(const QualPtr& q) {
    switch (q->kind) {
        case Qual::Kind::PathExists:
            return ser_path_operand(q->path);
        case Qual::Kind::TextEquals:
            return ser_path_operand(q->path) + " = '" + q->text + "'";
        case Qual::Kind::NodeEquals:
            return ser_path_operand(q->path) + " = " + ser_path(q->rhs);
        case Qual::Kind::Not:
            return "not(" + ser_disj(q->a) + ")";
        case Qual::Kind::And:
        case Qual::Kind::Or:
            return "(" + ser_disj(q) + ")";
        case Qual::Kind::Position:
            throw FragmentError("position qualifier has no stand-alone text form");
        case Qual::Kind::True:
        case Qual::Kind::False:
            throw FragmentError("true/false qualifiers have no text form");
    }
    return "";
}

std::string ser_conj(const QualPtr& q) {
    if (q->kind == Qual::Kind::And) return ser_conj(q->a) + " and " + ser_atom(q->b);
    return ser_atom(q);
}

std::string ser_disj(const QualPtr& q) {
    if (q->kind == Qual::Kind::Or) return ser_disj(q->a) + " or " + ser_conj(q->b);
    return ser_conj(q);
}

} // namespace

std::string serialize(const PathPtr& p) { return ser_path(p); }

std::string serialize(const QualPtr& q) { return ser_disj(q); }

// ---------------------------------------------------------------------------
// Size

std::size_t ast_size(const PathPtr& p) {
    switch (p->kind) {
        case Path::Kind::Step: {
            std::size_t n = 1;
            for (const auto& q : p->quals) n += ast_size(q);
            return n;
        }
        case Path::Kind::Slash:
            return 1 + ast_size(p->left) + ast_size(p->right);
        case Path::Kind::Union: {
            std::size_t n = 1;
            for (const auto& b : p->branches) n += ast_size(b);
            return n;
        }
    }
    return 0;
}

std::size_t ast_size(const QualPtr& q) {
    switch (q->kind) {
        case Qual::Kind::PathExists:
        case Qual::Kind::TextEquals:
            return 1 + ast_size(q->path);
        case Qual::Kind::NodeEquals:
            return 1 + ast_size(q->path) + ast_size(q->rhs);
        case Qual::Kind::And:
        case Qual::Kind::Or:
            return 1 + ast_size(q->a) + ast_size(q->b);
        case Qual::Kind::Not:
            return 1 + ast_size(q->a);
        case Qual::Kind::Position:
        case Qual::Kind::True:
        case Qual::Kind::False:
            return 1;
    }
    return 0;
}

} // namespace xsec
