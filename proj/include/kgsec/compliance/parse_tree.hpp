#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace kgsec::compliance {

enum class ScalarType { Null, Boolean, Integer, Float, Text };

std::string_view to_string(ScalarType type);

/// Typed scalar. `text` is canonical for every non-text type ("true", "42",
/// "1.5", "null"), so equality of (type, text) is equality of value.
struct Scalar {
    ScalarType type = ScalarType::Null;
    std::string text = "null";

    static Scalar null() { return {}; }
    static Scalar boolean(bool b) { return {ScalarType::Boolean, b ? "true" : "false"}; }
    static Scalar integer(std::int64_t v) { return {ScalarType::Integer, std::to_string(v)}; }
    static Scalar real(double v);
    static Scalar string(std::string s) { return {ScalarType::Text, std::move(s)}; }

    bool operator==(const Scalar&) const = default;
};

/// Plain (unquoted) YAML scalar resolution: null, booleans, decimal/octal/hex
/// integers and floats; anything else is text.
Scalar resolve_plain(std::string_view text);

/// A Compliance Parse Tree node. Maps keep keys and children as parallel
/// vectors so document order survives; lists keep element order.
struct CptNode {
    enum class Kind { Map, List, Leaf };

    Kind kind = Kind::Leaf;
    std::vector<std::string> keys;
    std::vector<CptNode> children;
    Scalar value;

    static CptNode map() { return CptNode{Kind::Map, {}, {}, {}}; }
    static CptNode list() { return CptNode{Kind::List, {}, {}, {}}; }
    static CptNode leaf(Scalar v) { return CptNode{Kind::Leaf, {}, {}, std::move(v)}; }

    bool is_map() const { return kind == Kind::Map; }
    bool is_list() const { return kind == Kind::List; }
    bool is_leaf() const { return kind == Kind::Leaf; }

    const CptNode* find(std::string_view key) const;
    CptNode* find(std::string_view key);
    /// Appends a key, or replaces the value of an existing one.
    CptNode& set(std::string key, CptNode value);

    std::size_t size() const;  // nodes in this subtree, including itself

    bool operator==(const CptNode&) const = default;
};

struct ComplianceParseTree {
    std::string kind;  // value of the top-level "kind" key
    CptNode root;
    std::size_t document = 0;  // index within a multi-document stream

    bool operator==(const ComplianceParseTree& other) const { return kind == other.kind && root == other.root; }
};

/// A path segment: map key, list index, or the list wildcard [*] (patterns only).
struct PathSegment {
    enum class Type { Key, Index, AnyIndex };
    Type type = Type::Key;
    std::string key;
    std::size_t index = 0;

    static PathSegment of_key(std::string k) { return {Type::Key, std::move(k), 0}; }
    static PathSegment of_index(std::size_t i) { return {Type::Index, {}, i}; }
    static PathSegment any() { return {Type::AnyIndex, {}, 0}; }

    bool operator==(const PathSegment&) const = default;
};

using Path = std::vector<PathSegment>;

/// Dotted path syntax: `spec.containers[0].name`, `containers[*]`, and
/// `metadata.annotations["a.b/c"]` for keys that contain separators.
/// Throws ValidationError on malformed input.
Path parse_path(std::string_view text);
std::string format_path(const Path& path);

bool has_wildcard(const Path& path);

/// Node at a concrete path, or nullptr.
const CptNode* lookup(const CptNode& root, const Path& path);
CptNode* lookup(CptNode& root, const Path& path);

/// Pre-order visit with concrete paths; the root has the empty path.
void visit(const CptNode& root, const std::function<void(const Path&, const CptNode&)>& fn);

}  // namespace kgsec::compliance
