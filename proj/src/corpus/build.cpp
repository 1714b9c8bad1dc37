#include "kgsec/corpus/build.hpp"

#include "kgsec/error.hpp"

#include <algorithm>
#include <set>

namespace kgsec::corpus {

using kg::EntityKind;
using kg::Predicate;

void sort_records(std::vector<ConfigRecord>& records) {
    auto key = [](const ConfigRecord& r) {
        return std::tie(r.system, r.component, r.argument, r.source_doc, r.options, r.type_spec, r.default_value,
                        r.description);
    };
    std::stable_sort(records.begin(), records.end(),
                     [&](const ConfigRecord& a, const ConfigRecord& b) { return key(a) < key(b); });
}

void merge_records(kg::ConfigKnowledgeGraph& graph, std::vector<ConfigRecord> records) {
    sort_records(records);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        try {
            if (r.system.empty() || r.component.empty() || r.argument.empty())
                throw ValidationError("system, component and argument must be non-empty");
            std::set<std::string> seen;
            for (const auto& o : r.options)
                if (!seen.insert(o).second) throw ValidationError("duplicate option '" + o + "'");

            const kg::Attributes provenance{{"source_doc", r.source_doc}};
            const auto system = graph.add_entity(EntityKind::System, r.system);
            const auto component = graph.add_entity(EntityKind::Component, r.component, {}, system);
            graph.add_relation(system, Predicate::hasComponent, component);
            const auto argument = graph.add_entity(EntityKind::Argument, r.argument, provenance, component);
            graph.add_relation(component, Predicate::hasArgument, argument);

            for (const auto& o : r.options)
                graph.add_relation(argument, Predicate::hasOption,
                                   graph.add_entity(EntityKind::Option, o, provenance, argument));
            if (r.type_spec)
                graph.add_relation(argument, Predicate::hasType,
                                   graph.add_entity(EntityKind::TypeSpec, *r.type_spec, provenance, argument));
            if (r.default_value)
                graph.add_relation(argument, Predicate::hasDefault,
                                   graph.add_entity(EntityKind::DefaultValue, *r.default_value, provenance, argument));
            if (r.description)
                graph.add_relation(argument, Predicate::hasDescription,
                                   graph.add_entity(EntityKind::Description, *r.description, provenance, argument));
        } catch (const Error& e) {
            throw ValidationError("record " + std::to_string(i) + " (" + r.argument + "): " + e.what());
        }
    }
}

kg::ConfigKnowledgeGraph build_kgconfig(std::vector<ConfigRecord> records) {
    kg::ConfigKnowledgeGraph graph;
    merge_records(graph, std::move(records));
    return graph;
}

}  // namespace kgsec::corpus
