#include "kgsec/compliance/manifest_io.hpp"

#include "kgsec/error.hpp"
#include "kgsec/util/files.hpp"

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include <set>

namespace kgsec::compliance {

using nlohmann::ordered_json;

ManifestFormat parse_manifest_format(std::string_view name) {
    if (name == "yaml") return ManifestFormat::Yaml;
    if (name == "json") return ManifestFormat::Json;
    throw UsageError("unsupported manifest format '" + std::string(name) + "' (expected yaml or json)");
}

namespace {

CptNode from_yaml(const YAML::Node& node) {
    switch (node.Type()) {
        case YAML::NodeType::Null:
        case YAML::NodeType::Undefined: return CptNode::leaf(Scalar::null());
        case YAML::NodeType::Scalar: {
            const std::string& tag = node.Tag();
            // "!" marks a quoted scalar, which is always text.
            if (tag == "!" || tag == "tag:yaml.org,2002:str") return CptNode::leaf(Scalar::string(node.Scalar()));
            return CptNode::leaf(resolve_plain(node.Scalar()));
        }
        case YAML::NodeType::Sequence: {
            CptNode out = CptNode::list();
            for (const auto& item : node) out.children.push_back(from_yaml(item));
            return out;
        }
        case YAML::NodeType::Map: {
            CptNode out = CptNode::map();
            for (const auto& kv : node) {
                if (!kv.first.IsScalar())
                    throw ValidationError("line " + std::to_string(kv.first.Mark().line + 1) +
                                          ": only scalar mapping keys are supported");
                const std::string key = kv.first.Scalar();
                if (out.find(key))
                    throw ValidationError("line " + std::to_string(kv.first.Mark().line + 1) + ": duplicate key '" +
                                          key + "'");
                out.keys.push_back(key);
                out.children.push_back(from_yaml(kv.second));
            }
            return out;
        }
    }
    return CptNode::leaf(Scalar::null());
}

CptNode from_json(const ordered_json& j) {
    switch (j.type()) {
        case ordered_json::value_t::object: {
            CptNode out = CptNode::map();
            for (const auto& [k, v] : j.items()) {
                out.keys.push_back(k);
                out.children.push_back(from_json(v));
            }
            return out;
        }
        case ordered_json::value_t::array: {
            CptNode out = CptNode::list();
            for (const auto& v : j) out.children.push_back(from_json(v));
            return out;
        }
        case ordered_json::value_t::string: return CptNode::leaf(Scalar::string(j.get<std::string>()));
        case ordered_json::value_t::boolean: return CptNode::leaf(Scalar::boolean(j.get<bool>()));
        case ordered_json::value_t::number_integer: return CptNode::leaf(Scalar::integer(j.get<std::int64_t>()));
        case ordered_json::value_t::number_unsigned: {
            const auto v = j.get<std::uint64_t>();
            if (v > static_cast<std::uint64_t>(INT64_MAX)) return CptNode::leaf(Scalar::string(std::to_string(v)));
            return CptNode::leaf(Scalar::integer(static_cast<std::int64_t>(v)));
        }
        case ordered_json::value_t::number_float: return CptNode::leaf(Scalar::real(j.get<double>()));
        default: return CptNode::leaf(Scalar::null());
    }
}

bool looks_like_json(std::string_view text) {
    const auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string_view::npos && (text[pos] == '{' || text[pos] == '[');
}

}  // namespace

std::vector<CptNode> parse_documents(std::string_view text) {
    std::vector<CptNode> out;
    if (looks_like_json(text)) {
        ordered_json j;
        try {
            j = ordered_json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            const auto [line, col] = util::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
            throw ParseError(std::string("malformed JSON manifest: ") + e.what(), line, col);
        }
        out.push_back(from_json(j));
        return out;
    }
    std::vector<YAML::Node> docs;
    try {
        docs = YAML::LoadAll(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ParseError("malformed YAML manifest: " + e.msg, static_cast<std::size_t>(e.mark.line + 1),
                         static_cast<std::size_t>(e.mark.column + 1));
    }
    for (const auto& d : docs) {
        if (d.IsNull()) continue;
        out.push_back(from_yaml(d));
    }
    return out;
}

std::vector<ComplianceParseTree> parse_manifests(std::string_view text) {
    std::vector<ComplianceParseTree> out;
    auto docs = parse_documents(text);
    // A top-level JSON array holds one manifest per element.
    if (docs.size() == 1 && docs.front().is_list() && looks_like_json(text)) {
        auto items = std::move(docs.front().children);
        docs = std::move(items);
    }
    for (std::size_t i = 0; i < docs.size(); ++i) {
        auto& root = docs[i];
        if (!root.is_map()) throw ValidationError("document " + std::to_string(i) + ": manifest must be a mapping");
        const CptNode* kind = root.find("kind");
        if (!kind) throw ValidationError("document " + std::to_string(i) + ": manifest has no 'kind'");
        if (!kind->is_leaf() || kind->value.type != ScalarType::Text || kind->value.text.empty())
            throw ValidationError("document " + std::to_string(i) + ": 'kind' must be a non-empty string");
        out.push_back({kind->value.text, std::move(root), i});
    }
    return out;
}

ComplianceParseTree parse_manifest(std::string_view text) {
    auto trees = parse_manifests(text);
    if (trees.size() != 1)
        throw ValidationError("expected exactly one manifest, found " + std::to_string(trees.size()));
    return std::move(trees.front());
}

std::vector<ComplianceParseTree> load_manifests(const std::filesystem::path& path) {
    return parse_manifests(util::read_file(path));
}

namespace {

bool needs_quotes(std::string_view s) {
    if (s.empty()) return true;
    if (resolve_plain(s).type != ScalarType::Text) return true;
    // YAML 1.1 booleans are still read as such by common tooling.
    static const std::set<std::string_view> legacy{"y", "Y", "yes", "Yes", "YES", "n", "N", "no", "No", "NO",
                                                   "on", "On", "ON", "off", "Off", "OFF"};
    if (legacy.count(s)) return true;
    if (s.front() == ' ' || s.back() == ' ' || s.back() == ':') return true;
    static const std::string_view indicators = "?:,[]{}#&*!|>'\"%@`";
    if (indicators.find(s.front()) != std::string_view::npos) return true;
    if (s.front() == '-' && (s.size() == 1 || s[1] == ' ' || s == "---")) return true;
    if (s.find(": ") != std::string_view::npos || s.find(" #") != std::string_view::npos) return true;
    for (unsigned char c : s)
        if (c < 0x20 || c == 0x7f) return true;
    return false;
}

std::string double_quoted(std::string_view s) {
    std::string out = "\"";
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (c < 0x20 || c == 0x7f) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\x%02X", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out + "\"";
}

std::string yaml_key(std::string_view key) { return needs_quotes(key) ? double_quoted(key) : std::string(key); }

bool inline_value(const CptNode& n) { return n.is_leaf() || n.children.empty(); }

std::string inline_text(const CptNode& n) {
    if (n.is_map()) return "{}";
    if (n.is_list()) return "[]";
    return yaml_scalar(n.value);
}

std::vector<std::string> block(const CptNode& node) {
    std::vector<std::string> lines;
    if (inline_value(node)) {
        lines.push_back(inline_text(node));
        return lines;
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        const CptNode& child = node.children[i];
        const std::string head = node.is_map() ? yaml_key(node.keys[i]) + ":" : "-";
        if (inline_value(child)) {
            lines.push_back(head + " " + inline_text(child));
            continue;
        }
        const auto sub = block(child);
        if (node.is_map()) {
            lines.push_back(head);
            for (const auto& l : sub) lines.push_back("  " + l);
        } else {
            lines.push_back("- " + sub.front());
            for (std::size_t k = 1; k < sub.size(); ++k) lines.push_back("  " + sub[k]);
        }
    }
    return lines;
}

ordered_json to_json(const CptNode& node) {
    switch (node.kind) {
        case CptNode::Kind::Map: {
            ordered_json j = ordered_json::object();
            for (std::size_t i = 0; i < node.keys.size(); ++i) j[node.keys[i]] = to_json(node.children[i]);
            return j;
        }
        case CptNode::Kind::List: {
            ordered_json j = ordered_json::array();
            for (const auto& c : node.children) j.push_back(to_json(c));
            return j;
        }
        case CptNode::Kind::Leaf: break;
    }
    const Scalar& v = node.value;
    switch (v.type) {
        case ScalarType::Null: return nullptr;
        case ScalarType::Boolean: return v.text == "true";
        case ScalarType::Integer: return std::stoll(v.text);
        case ScalarType::Float: {
            const double d = resolve_plain(v.text).type == ScalarType::Float ? std::strtod(v.text.c_str(), nullptr) : 0;
            if (!std::isfinite(d) || v.text.find_first_of("in") != std::string::npos)
                throw ValidationError("JSON cannot represent the float value " + v.text);
            return d;
        }
        case ScalarType::Text: return v.text;
    }
    return nullptr;
}

}  // namespace

std::string yaml_scalar(const Scalar& value) {
    if (value.type != ScalarType::Text) return value.text;
    return needs_quotes(value.text) ? double_quoted(value.text) : value.text;
}

std::string emit_yaml(const CptNode& node) {
    std::string out;
    for (const auto& line : block(node)) out += line + "\n";
    return out;
}

std::string emit_json(const CptNode& node) { return to_json(node).dump(2) + "\n"; }

std::string emit(const ComplianceParseTree& tree, ManifestFormat format) {
    return format == ManifestFormat::Yaml ? emit_yaml(tree.root) : emit_json(tree.root);
}

std::string emit_all(const std::vector<ComplianceParseTree>& trees, ManifestFormat format) {
    if (format == ManifestFormat::Json) {
        if (trees.size() == 1) return emit_json(trees.front().root);
        ordered_json arr = ordered_json::array();
        for (const auto& t : trees) arr.push_back(to_json(t.root));
        return arr.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        if (i > 0) out += "---\n";
        out += emit_yaml(trees[i].root);
    }
    return out;
}

}  // namespace kgsec::compliance
