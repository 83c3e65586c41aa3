#pragma once

#include <memory>
#include <string>
#include <vector>

namespace xsec {

enum class Axis { Self, Child, Descendant, Parent, Ancestor, AncestorOrSelf };

const char* axis_keyword(Axis a);

struct Path;
struct Qual;
using PathPtr = std::shared_ptr<const Path>;
using QualPtr = std::shared_ptr<const Qual>;

/// Wildcard label on a step.
inline const std::string kWildcard = "*";

struct Path {
    enum class Kind { Step, Slash, Union };

    Kind kind;

    // Step
    Axis axis = Axis::Self;
    std::string label;          // element type name or "*"
    std::vector<QualPtr> quals; // evaluated left to right

    // Slash
    PathPtr left, right;

    // Union (>= 2 branches; nested unions are flattened)
    std::vector<PathPtr> branches;

    static PathPtr step(Axis axis, std::string label, std::vector<QualPtr> quals = {});
    /// Left-normalizes: slash(a, slash(b, c)) == slash(slash(a, b), c).
    static PathPtr slash(PathPtr left, PathPtr right);
    static PathPtr alternatives(std::vector<PathPtr> branches);
    /// Copy of p with q appended to the qual list of its last step
    /// (distributed over union branches).
    static PathPtr with_qual(const PathPtr& p, QualPtr q);
};

struct Qual {
    enum class Kind { PathExists, TextEquals, NodeEquals, Position, And, Or, Not, True, False };

    Kind kind;

    PathPtr path;     // PathExists / TextEquals / NodeEquals
    std::string text; // TextEquals constant
    PathPtr rhs;      // NodeEquals right side: always a single self-step
    int position = 0; // Position
    QualPtr a, b;     // And/Or operands; Not uses a

    static QualPtr truth();
    static QualPtr falsity();
    static QualPtr exists(PathPtr p);
    static QualPtr text_equals(PathPtr p, std::string text);
    static QualPtr node_equals(PathPtr p, PathPtr self_step);
    static QualPtr at_position(int n);
    /// conj/disj/negate normalize away True/False operands.
    static QualPtr conj(QualPtr a, QualPtr b);
    static QualPtr disj(QualPtr a, QualPtr b);
    static QualPtr negate(QualPtr q);
    static QualPtr conj_all(const std::vector<QualPtr>& qs);
    static QualPtr disj_all(const std::vector<QualPtr>& qs);
};

bool path_equal(const PathPtr& a, const PathPtr& b);
bool qual_equal(const QualPtr& a, const QualPtr& b);

/// Smallest query fragment containing an expression:
/// X (downward only) ⊂ XUp (+ self/upward axes) ⊂ XUpPos (+ positions)
/// ⊂ XUpPosEq (+ node comparisons).
enum class FragmentClass { X, XUp, XUpPos, XUpPosEq };

const char* fragment_name(FragmentClass c);
FragmentClass classify(const PathPtr& p);
FragmentClass classify(const QualPtr& q);

/// Parse query text. If `require` is given, reject expressions whose class
/// exceeds it with FragmentError.
PathPtr parse_xpath(const std::string& text,
                    FragmentClass require = FragmentClass::XUpPosEq);
/// Parse a bare qualifier (as it appears between '[' and ']').
QualPtr parse_qual(const std::string& text,
                   FragmentClass require = FragmentClass::XUpPosEq);

std::string serialize(const PathPtr& p);
std::string serialize(const QualPtr& q);

/// Number of AST nodes (steps, slashes, unions, quals) in an expression.
std::size_t ast_size(const PathPtr& p);
std::size_t ast_size(const QualPtr& q);

} // namespace xsec
