#pragma once

#include <string>
#include <vector>

#include "xsec/dtd.hpp"

namespace xsec {

/// Arena-allocated document tree. Nodes are stored in document (preorder)
/// order, so node ids double as document-order keys. Node 0 is the root
/// element. Text nodes are leaves whose `label` holds the character data.
struct XmlNode {
    enum class Kind { Element, Text };
    Kind kind = Kind::Element;
    std::string label; // element type name, or text content
    int parent = -1;
    std::vector<int> kids; // ids in document order
};

struct XmlTree {
    std::vector<XmlNode> nodes;

    int root() const { return 0; }
    bool is_element(int id) const { return nodes[id].kind == XmlNode::Kind::Element; }
    const std::string& label(int id) const { return nodes[id].label; }
    int parent(int id) const { return nodes[id].parent; }
    const std::vector<int>& children(int id) const { return nodes[id].kids; }
    std::size_t size() const { return nodes.size(); }

    /// Append a node; parent -1 only for the root. Children must be added
    /// in document order (preorder).
    int add(XmlNode::Kind kind, std::string label, int parent);

    /// Concatenated contents of the direct text children of an element.
    std::string text_value(int id) const;
};

/// Parse a document: elements and character data only. Attributes, CDATA,
/// and doctype internals raise UnsupportedFeatureError; the five predefined
/// entities are decoded. Whitespace-only text between elements is dropped.
XmlTree parse_xml(const std::string& text);

std::string serialize_xml(const XmlTree& t);

/// Serialize the subtree rooted at a node.
std::string serialize_xml(const XmlTree& t, int subtree);

/// Slash-separated child indices from the root, e.g. "/0/2"; "/" is the root.
std::string node_path(const XmlTree& t, int id);

/// Resolve a node_path back to an id; throws Error if out of range.
int resolve_path(const XmlTree& t, const std::string& path);

/// Every element is declared and its child sequence matches its content
/// model (checked with a compiled position automaton).
bool conforms(const XmlTree& t, const Dtd& d);

} // namespace xsec
