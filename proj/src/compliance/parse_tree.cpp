#include "kgsec/compliance/parse_tree.hpp"

#include "kgsec/error.hpp"

#include <fmt/format.h>

#include <charconv>
#include <algorithm>
#include <cmath>
#include <optional>
#include <regex>

namespace kgsec::compliance {

std::string_view to_string(ScalarType type) {
    switch (type) {
        case ScalarType::Null: return "null";
        case ScalarType::Boolean: return "boolean";
        case ScalarType::Integer: return "integer";
        case ScalarType::Float: return "float";
        case ScalarType::Text: return "text";
    }
    return "text";
}

Scalar Scalar::real(double v) {
    if (std::isnan(v)) return {ScalarType::Float, ".nan"};
    if (std::isinf(v)) return {ScalarType::Float, v > 0 ? ".inf" : "-.inf"};
    std::string s = fmt::format("{}", v);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return {ScalarType::Float, s};
}

Scalar resolve_plain(std::string_view text) {
    static const std::regex int_dec(R"([-+]?[0-9]+)");
    static const std::regex int_oct(R"(0o[0-7]+)");
    static const std::regex int_hex(R"(0x[0-9a-fA-F]+)");
    static const std::regex real(R"([-+]?(\.[0-9]+|[0-9]+(\.[0-9]*)?)([eE][-+]?[0-9]+)?)");
    static const std::regex inf(R"([-+]?\.(inf|Inf|INF))");
    static const std::regex nan(R"(\.(nan|NaN|NAN))");

    const std::string s(text);
    if (s.empty() || s == "~" || s == "null" || s == "Null" || s == "NULL") return Scalar::null();
    if (s == "true" || s == "True" || s == "TRUE") return Scalar::boolean(true);
    if (s == "false" || s == "False" || s == "FALSE") return Scalar::boolean(false);

    auto parse_int = [&](std::string_view digits, int base) -> std::optional<Scalar> {
        bool negative = false;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
            negative = digits.front() == '-';
            digits.remove_prefix(1);
        }
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, base);
        if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;  // overflow stays text
        return Scalar::integer(negative ? -v : v);
    };
    if (std::regex_match(s, int_dec)) {
        if (auto v = parse_int(s, 10)) return *v;
        return Scalar::string(s);
    }
    if (std::regex_match(s, int_oct)) {
        if (auto v = parse_int(std::string_view(s).substr(2), 8)) return *v;
        return Scalar::string(s);
    }
    if (std::regex_match(s, int_hex)) {
        if (auto v = parse_int(std::string_view(s).substr(2), 16)) return *v;
        return Scalar::string(s);
    }
    if (std::regex_match(s, real)) return Scalar::real(std::strtod(s.c_str(), nullptr));
    if (std::regex_match(s, inf)) return Scalar::real(s.front() == '-' ? -INFINITY : INFINITY);
    if (std::regex_match(s, nan)) return Scalar::real(NAN);
    return Scalar::string(s);
}

const CptNode* CptNode::find(std::string_view key) const {
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (keys[i] == key) return &children[i];
    return nullptr;
}

CptNode* CptNode::find(std::string_view key) {
    return const_cast<CptNode*>(static_cast<const CptNode*>(this)->find(key));
}

CptNode& CptNode::set(std::string key, CptNode value) {
    if (CptNode* existing = find(key)) {
        *existing = std::move(value);
        return *existing;
    }
    keys.push_back(std::move(key));
    children.push_back(std::move(value));
    return children.back();
}

std::size_t CptNode::size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
}

namespace {

bool plain_key(std::string_view key) {
    if (key.empty()) return false;
    for (char c : key)
        if (c == '.' || c == '[' || c == ']' || c == '"' || c == '\\') return false;
    return true;
}

}  // namespace

Path parse_path(std::string_view text) {
    Path path;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw ValidationError("malformed path '" + std::string(text) + "': " + why);
    };
    bool expect_key = true;  // at the start or right after a dot
    while (i < text.size()) {
        if (text[i] == '[') {
            const std::size_t close = text.find(']', i);
            if (i + 1 < text.size() && text[i + 1] == '"') {
                std::string key;
                std::size_t j = i + 2;
                for (; j < text.size() && text[j] != '"'; ++j) {
                    if (text[j] == '\\' && j + 1 < text.size()) ++j;
                    key += text[j];
                }
                if (j + 1 >= text.size() || text[j + 1] != ']') fail("unterminated quoted key");
                path.push_back(PathSegment::of_key(std::move(key)));
                i = j + 2;
            } else {
                if (close == std::string_view::npos) fail("missing ']'");
                const auto inner = text.substr(i + 1, close - i - 1);
                if (inner == "*") {
                    path.push_back(PathSegment::any());
                } else {
                    std::size_t idx = 0;
                    auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), idx);
                    if (inner.empty() || ec != std::errc() || ptr != inner.data() + inner.size())
                        fail("bad list index '" + std::string(inner) + "'");
                    path.push_back(PathSegment::of_index(idx));
                }
                i = close + 1;
            }
            expect_key = false;
        } else if (text[i] == '.') {
            if (expect_key) fail("empty key");
            expect_key = true;
            ++i;
        } else {
            if (!expect_key) fail("expected '.' or '['");
            std::size_t j = i;
            while (j < text.size() && text[j] != '.' && text[j] != '[') ++j;
            path.push_back(PathSegment::of_key(std::string(text.substr(i, j - i))));
            i = j;
            expect_key = false;
        }
    }
    if (expect_key && !path.empty()) fail("trailing '.'");
    return path;
}

std::string format_path(const Path& path) {
    std::string out;
    for (const auto& seg : path) {
        switch (seg.type) {
            case PathSegment::Type::Key:
                if (plain_key(seg.key)) {
                    if (!out.empty()) out += '.';
                    out += seg.key;
                } else {
                    out += "[\"";
                    for (char c : seg.key) {
                        if (c == '"' || c == '\\') out += '\\';
                        out += c;
                    }
                    out += "\"]";
                }
                break;
            case PathSegment::Type::Index: out += "[" + std::to_string(seg.index) + "]"; break;
            case PathSegment::Type::AnyIndex: out += "[*]"; break;
        }
    }
    return out;
}

bool has_wildcard(const Path& path) {
    return std::any_of(path.begin(), path.end(), [](const auto& s) { return s.type == PathSegment::Type::AnyIndex; });
}

const CptNode* lookup(const CptNode& root, const Path& path) {
    const CptNode* node = &root;
    for (const auto& seg : path) {
        switch (seg.type) {
            case PathSegment::Type::Key:
                if (!node->is_map()) return nullptr;
                node = node->find(seg.key);
                break;
            case PathSegment::Type::Index:
                if (!node->is_list() || seg.index >= node->children.size()) return nullptr;
                node = &node->children[seg.index];
                break;
            case PathSegment::Type::AnyIndex: return nullptr;
        }
        if (!node) return nullptr;
    }
    return node;
}

CptNode* lookup(CptNode& root, const Path& path) {
    return const_cast<CptNode*>(lookup(static_cast<const CptNode&>(root), path));
}

namespace {

void visit_rec(const CptNode& node, Path& path, const std::function<void(const Path&, const CptNode&)>& fn) {
    fn(path, node);
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        path.push_back(node.is_map() ? PathSegment::of_key(node.keys[i]) : PathSegment::of_index(i));
        visit_rec(node.children[i], path, fn);
        path.pop_back();
    }
}

}  // namespace

void visit(const CptNode& root, const std::function<void(const Path&, const CptNode&)>& fn) {
    Path path;
    visit_rec(root, path, fn);
}

}  // namespace kgsec::compliance
