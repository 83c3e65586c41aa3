#include "xsec/xml.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "xsec/errors.hpp"

namespace xsec {

int XmlTree::add(XmlNode::Kind kind, std::string label, int parent) {
    int id = static_cast<int>(nodes.size());
    nodes.push_back({kind, std::move(label), parent, {}});
    if (parent >= 0) nodes[parent].kids.push_back(id);
    return id;
}

std::string XmlTree::text_value(int id) const {
    std::string out;
    for (int k : nodes[id].kids)
        if (nodes[k].kind == XmlNode::Kind::Text) out += nodes[k].label;
    return out;
}

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

class XmlParser {
public:
    explicit XmlParser(const std::string& text) : s_(text) {}

    XmlTree run() {
        XmlTree t;
        skip_misc();
        if (pos_ >= s_.size() || s_[pos_] != '<')
            throw SyntaxError("expected a root element", pos_);
        parse_element(t, -1);
        skip_misc();
        if (pos_ != s_.size()) throw SyntaxError("content after the root element", pos_);
        return t;
    }

private:
    void skip_misc() {
        for (;;) {
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (s_.compare(pos_, 4, "<!--") == 0) {
                auto end = s_.find("-->", pos_ + 4);
                if (end == std::string::npos) throw SyntaxError("unterminated comment", pos_);
                pos_ = end + 3;
            } else if (s_.compare(pos_, 2, "<?") == 0) {
                auto end = s_.find("?>", pos_ + 2);
                if (end == std::string::npos)
                    throw SyntaxError("unterminated processing instruction", pos_);
                pos_ = end + 2;
            } else {
                return;
            }
        }
    }

    std::string parse_name() {
        if (pos_ >= s_.size() || !name_start(s_[pos_]))
            throw SyntaxError("expected an element name", pos_);
        std::size_t b = pos_;
        while (pos_ < s_.size() && name_char(s_[pos_])) ++pos_;
        return s_.substr(b, pos_ - b);
    }

    void parse_element(XmlTree& t, int parent) {
        ++pos_; // '<'
        std::string name = parse_name();
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && name_start(s_[pos_]))
            throw UnsupportedFeatureError("attributes are not supported (element '" + name +
                                          "')");
        int id = t.add(XmlNode::Kind::Element, name, parent);
        if (s_.compare(pos_, 2, "/>") == 0) {
            pos_ += 2;
            return;
        }
        if (pos_ >= s_.size() || s_[pos_] != '>')
            throw SyntaxError("expected '>' in start tag of '" + name + "'", pos_);
        ++pos_;
        for (;;) {
            std::size_t textStart = pos_;
            while (pos_ < s_.size() && s_[pos_] != '<') ++pos_;
            if (pos_ >= s_.size()) throw SyntaxError("missing end tag for '" + name + "'", pos_);
            add_text(t, id, s_.substr(textStart, pos_ - textStart), textStart);
            if (s_.compare(pos_, 2, "</") == 0) {
                pos_ += 2;
                std::string close = parse_name();
                if (close != name)
                    throw SyntaxError("mismatched end tag '" + close + "' for '" + name + "'",
                                      pos_);
                while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
                if (pos_ >= s_.size() || s_[pos_] != '>')
                    throw SyntaxError("expected '>' in end tag", pos_);
                ++pos_;
                return;
            }
            if (s_.compare(pos_, 4, "<!--") == 0 || s_.compare(pos_, 2, "<?") == 0) {
                skip_misc();
                continue;
            }
            if (s_.compare(pos_, 2, "<!") == 0)
                throw UnsupportedFeatureError("markup declarations inside content");
            parse_element(t, id);
        }
    }

    void add_text(XmlTree& t, int parent, const std::string& raw, std::size_t at) {
        bool blank = std::all_of(raw.begin(), raw.end(), [](unsigned char c) {
            return std::isspace(c);
        });
        if (blank) return;
        t.add(XmlNode::Kind::Text, decode(raw, at), parent);
    }

    std::string decode(const std::string& raw, std::size_t at) {
        std::string out;
        for (std::size_t i = 0; i < raw.size();) {
            if (raw[i] != '&') {
                out += raw[i++];
                continue;
            }
            auto semi = raw.find(';', i);
            if (semi == std::string::npos)
                throw SyntaxError("unterminated entity reference", at + i);
            std::string ent = raw.substr(i + 1, semi - i - 1);
            if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "amp") out += '&';
            else if (ent == "apos") out += '\'';
            else if (ent == "quot") out += '"';
            else throw UnsupportedFeatureError("entity reference '&" + ent + ";'");
            i = semi + 1;
        }
        return out;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

void write_node(const XmlTree& t, int id, std::string& out) {
    const XmlNode& n = t.nodes[id];
    if (n.kind == XmlNode::Kind::Text) {
        out += escape(n.label);
        return;
    }
    if (n.kids.empty()) {
        out += "<" + n.label + "/>";
        return;
    }
    out += "<" + n.label + ">";
    for (int k : n.kids) write_node(t, k, out);
    out += "</" + n.label + ">";
}

/// Position automaton for one content model: NFA states are the Name/Text
/// occurrences plus a start state; transitions computed from first/follow
/// sets of the regex.
class ContentAutomaton {
public:
    explicit ContentAutomaton(const ContentPtr& cm) {
        Info info = build(cm);
        first_ = std::move(info.first);
        for (int p : info.last) last_[p] = true;
        nullable_ = info.nullable;
    }

    /// `word` is the sequence of child symbols ("#text" for text nodes).
    bool accepts(const std::vector<std::string>& word) const {
        if (word.empty()) return nullable_;
        std::set<int> states;
        for (int p : first_)
            if (syms_[p] == word[0]) states.insert(p);
        for (std::size_t i = 1; i < word.size(); ++i) {
            std::set<int> next;
            for (int p : states)
                for (int q : follow_[p])
                    if (syms_[q] == word[i]) next.insert(q);
            states = std::move(next);
            if (states.empty()) return false;
        }
        return std::any_of(states.begin(), states.end(), [&](int p) { return last_[p]; });
    }

private:
    struct Info {
        std::vector<int> first, last;
        bool nullable = false;
    };

    Info build(const ContentPtr& cm) {
        switch (cm->kind) {
            case ContentModel::Kind::Empty:
                return {{}, {}, true};
            case ContentModel::Kind::Text:
            case ContentModel::Kind::Name: {
                int p = static_cast<int>(syms_.size());
                syms_.push_back(cm->kind == ContentModel::Kind::Text ? "#text" : cm->name);
                follow_.emplace_back();
                last_.push_back(false);
                return {{p}, {p}, false};
            }
            case ContentModel::Kind::Star: {
                Info a = build(cm->kids[0]);
                for (int p : a.last)
                    for (int q : a.first) follow_[p].insert(q);
                return {a.first, a.last, true};
            }
            case ContentModel::Kind::Alt: {
                Info all;
                all.nullable = false;
                for (const auto& k : cm->kids) {
                    Info a = build(k);
                    all.first.insert(all.first.end(), a.first.begin(), a.first.end());
                    all.last.insert(all.last.end(), a.last.begin(), a.last.end());
                    all.nullable = all.nullable || a.nullable;
                }
                return all;
            }
            case ContentModel::Kind::Seq: {
                Info acc{{}, {}, true};
                for (const auto& k : cm->kids) {
                    Info a = build(k);
                    for (int p : acc.last)
                        for (int q : a.first) follow_[p].insert(q);
                    if (acc.nullable)
                        acc.first.insert(acc.first.end(), a.first.begin(), a.first.end());
                    if (!a.nullable) acc.last.clear();
                    acc.last.insert(acc.last.end(), a.last.begin(), a.last.end());
                    acc.nullable = acc.nullable && a.nullable;
                }
                return acc;
            }
        }
        return {};
    }

    std::vector<std::string> syms_;
    std::vector<std::set<int>> follow_;
    std::vector<bool> last_;
    std::vector<int> first_;
    bool nullable_ = false;
};

} // namespace

XmlTree parse_xml(const std::string& text) { return XmlParser(text).run(); }

std::string serialize_xml(const XmlTree& t) {
    std::string out;
    write_node(t, t.root(), out);
    return out;
}

std::string serialize_xml(const XmlTree& t, int subtree) {
    std::string out;
    write_node(t, subtree, out);
    return out;
}

std::string node_path(const XmlTree& t, int id) {
    if (id == t.root()) return "/";
    std::vector<int> idx;
    for (int cur = id; cur != t.root(); cur = t.parent(cur)) {
        const auto& sibs = t.children(t.parent(cur));
        idx.push_back(static_cast<int>(std::find(sibs.begin(), sibs.end(), cur) - sibs.begin()));
    }
    std::string out;
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) out += "/" + std::to_string(*it);
    return out;
}

int resolve_path(const XmlTree& t, const std::string& path) {
    if (path.empty() || path[0] != '/') throw Error("node path must start with '/'");
    int cur = t.root();
    std::size_t i = 1;
    while (i < path.size()) {
        std::size_t j = path.find('/', i);
        if (j == std::string::npos) j = path.size();
        int idx = std::stoi(path.substr(i, j - i));
        const auto& kids = t.children(cur);
        if (idx < 0 || idx >= static_cast<int>(kids.size()))
            throw Error("node path out of range: " + path);
        cur = kids[idx];
        i = j + 1;
    }
    return cur;
}

bool conforms(const XmlTree& t, const Dtd& d) {
    std::map<std::string, ContentAutomaton> autos;
    if (!t.is_element(t.root()) || t.label(t.root()) != d.root) return false;
    for (int id = 0; id < static_cast<int>(t.size()); ++id) {
        if (!t.is_element(id)) continue;
        if (!d.has_type(t.label(id))) return false;
        auto it = autos.find(t.label(id));
        if (it == autos.end()) {
            ContentPtr cm = d.production(t.label(id));
            // (#PCDATA) admits any number of text children, including none.
            if (cm->kind == ContentModel::Kind::Text)
                cm = ContentModel::star(ContentModel::text());
            it = autos.emplace(t.label(id), ContentAutomaton(cm)).first;
        }
        std::vector<std::string> word;
        for (int k : t.children(id))
            word.push_back(t.is_element(k) ? t.label(k) : "#text");
        if (!it->second.accepts(word)) return false;
    }
    return true;
}

} // namespace xsec
