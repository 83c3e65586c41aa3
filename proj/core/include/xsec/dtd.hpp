#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace xsec {

/// Regular-expression content model of an element type.
struct ContentModel;
using ContentPtr = std::shared_ptr<const ContentModel>;

struct ContentModel {
    enum class Kind { Text, Empty, Name, Seq, Alt, Star };

    Kind kind;
    std::string name;              // Kind::Name only
    std::vector<ContentPtr> kids;  // Seq/Alt: >= 2 children, Star: exactly 1

    static ContentPtr text();
    static ContentPtr empty();
    static ContentPtr element(std::string name);
    /// Builders flatten nested Seq-in-Seq / Alt-in-Alt and collapse singletons.
    static ContentPtr seq(std::vector<ContentPtr> kids);
    static ContentPtr alt(std::vector<ContentPtr> kids);
    static ContentPtr star(ContentPtr kid);
};

bool content_equal(const ContentPtr& a, const ContentPtr& b);

/// Serialize one content model in DTD concrete syntax ("EMPTY", "(#PCDATA)", "(A,B*)", ...).
std::string serialize_content(const ContentPtr& cm);

/// A DTD: element types with productions and a distinguished root
/// (the first declared type).
struct Dtd {
    std::vector<std::string> order;                // declaration order
    std::map<std::string, ContentPtr> productions; // one per element type
    std::string root;

    bool has_type(const std::string& name) const { return productions.count(name) != 0; }
    const ContentPtr& production(const std::string& name) const { return productions.at(name); }
    /// Position of a type in declaration order; types not declared sort last.
    std::size_t decl_index(const std::string& name) const;
};

bool dtd_equal(const Dtd& a, const Dtd& b);

/// Parse `<!ELEMENT name content>` declarations. `?` and `+` postfixes are
/// desugared into Alt-with-Empty and Seq-with-Star.
Dtd parse_dtd(const std::string& text);

std::string serialize_dtd(const Dtd& d);

/// Child and descendant element types, in declaration order.
struct ReachIndex {
    std::map<std::string, std::vector<std::string>> children;
    std::map<std::string, std::vector<std::string>> descendants;
};

ReachIndex build_reach_index(const Dtd& d);

/// True iff some element type derives itself directly or transitively.
bool is_recursive(const Dtd& d);

/// Element types named in a content model, deduplicated, in first-occurrence order.
std::vector<std::string> content_names(const ContentPtr& cm);

} // namespace xsec
