#include "pou/json_io.hpp"

#include "pou/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <tuple>
#include <utility>

namespace pou::io {

namespace {

void require_object(const Json& value, const std::string& what) {
    if (!value.is_object()) {
        throw ParseError(what + " must be a JSON object");
    }
}

void require_array(const Json& value, const std::string& what) {
    if (!value.is_array()) {
        throw ParseError(what + " must be a JSON array");
    }
}

// Strict shape check: required fields present, nothing unexpected. "kind" and
// "metadata" are always tolerated; metadata content is ignored on input.
void require_fields(const Json& doc, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {}) {
    require_object(doc, "document");
    for (const char* field : required) {
        if (!doc.contains(field)) {
            throw ParseError(std::string("missing field \"") + field + "\"");
        }
    }
    for (const auto& [key, value] : doc.items()) {
        if (key == "kind" || key == "metadata") continue;
        const bool known =
            std::any_of(required.begin(), required.end(),
                        [&key](const char* f) { return key == f; }) ||
            std::any_of(optional.begin(), optional.end(),
                        [&key](const char* f) { return key == f; });
        if (!known) {
            throw ParseError("unknown field \"" + key + "\"");
        }
    }
}

void require_kind(const Json& doc, const std::string& kind) {
    if (document_kind(doc) != kind) {
        throw ParseError("expected a document of kind \"" + kind + "\", got \"" +
                         document_kind(doc) + "\"");
    }
}

Rational rational_value(const Json& value, const std::string& what) {
    if (value.is_string()) {
        return parse_rational(value.get<std::string>());
    }
    if (value.is_number_unsigned()) {
        return Rational(BigInt(value.get<std::uint64_t>()));
    }
    if (value.is_number_integer()) {
        return Rational(BigInt(value.get<std::int64_t>()));
    }
    throw ParseError(what + " must be a rational written as \"p/q\" or an integer");
}

VertexLabel label_value(const Json& value, const std::string& what) {
    if (!value.is_string()) {
        throw ParseError(what + " must be a string");
    }
    auto label = value.get<std::string>();
    if (!is_valid_input_label(label)) {
        throw ParseError(what + " \"" + label +
                         "\" is invalid (empty, whitespace, or '|')");
    }
    return label;
}

std::map<VertexLabel, Rational> weight_entries(const Json& object,
                                               const std::string& what) {
    require_object(object, what);
    std::map<VertexLabel, Rational> out;
    for (const auto& [key, value] : object.items()) {
        if (!is_valid_input_label(key)) {
            throw ParseError(what + " label \"" + key +
                             "\" is invalid (empty, whitespace, or '|')");
        }
        out.emplace(key, rational_value(value, what + " weight for \"" + key + "\""));
    }
    return out;
}

SubsetKey subset_key_value(const Json& value, const std::string& what) {
    require_array(value, what);
    if (value.empty()) {
        throw ParseError(what + " must be nonempty");
    }
    std::vector<VertexLabel> labels;
    labels.reserve(value.size());
    for (const auto& element : value) {
        labels.push_back(label_value(element, what + " member"));
    }
    std::vector<VertexLabel> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ParseError(what + " repeats a label");
    }
    return SubsetKey(std::move(sorted));
}

Json weight_object(const std::map<VertexLabel, Rational>& entries) {
    Json out = Json::object();
    for (const auto& [label, value] : entries) {
        out[label] = format_rational(value);
    }
    return out;
}

Json key_array(const SubsetKey& key) {
    Json out = Json::array();
    for (const auto& label : key.labels()) out.push_back(label);
    return out;
}

Json document(const char* kind, const std::map<std::string, std::string>& extra) {
    Json doc = Json::object();
    doc["kind"] = kind;
    doc["metadata"] = standard_metadata(extra);
    return doc;
}

} // namespace

Json parse_text(const std::string& text) {
    Json doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw ParseError("input is not valid JSON");
    }
    return doc;
}

std::string dump(const Json& doc) {
    return doc.dump(2) + "\n";
}

std::string document_kind(const Json& doc) {
    require_object(doc, "document");
    if (!doc.contains("kind") || !doc["kind"].is_string()) {
        throw ParseError("document needs a string \"kind\" field");
    }
    return doc["kind"].get<std::string>();
}

Json standard_metadata(const std::map<std::string, std::string>& extra) {
    Json md = Json::object();
    md["tool"] = kToolName;
    md["version"] = kToolVersion;
    for (const auto& [key, value] : extra) {
        md[key] = value;
    }
    return md;
}

ProbVector parse_prob_vector(const Json& doc) {
    require_kind(doc, "prob_vector");
    require_fields(doc, {"entries"});
    return ProbVector(WeightVector(weight_entries(doc["entries"], "entries")));
}

DerivedVector parse_derived_vector(const Json& doc) {
    require_kind(doc, "derived_vector");
    require_fields(doc, {"entries"});
    require_array(doc["entries"], "entries");
    std::map<SubsetKey, Rational> out;
    for (const auto& element : doc["entries"]) {
        require_object(element, "derived entry");
        require_fields(element, {"key", "weight"});
        SubsetKey key = subset_key_value(element["key"], "derived key");
        Rational weight = rational_value(element["weight"], "derived weight");
        if (!out.emplace(std::move(key), std::move(weight)).second) {
            throw ParseError("derived key given more than once");
        }
    }
    return DerivedVector(std::move(out));
}

AbstractComplex parse_complex(const Json& doc) {
    require_kind(doc, "complex");
    require_fields(doc, {"facets"}, {"vertices"});
    require_array(doc["facets"], "facets");
    std::vector<SubsetKey> facets;
    facets.reserve(doc["facets"].size());
    for (const auto& element : doc["facets"]) {
        facets.push_back(subset_key_value(element, "facet"));
    }
    if (!doc.contains("vertices")) {
        return AbstractComplex::from_facets(std::move(facets));
    }
    require_array(doc["vertices"], "vertices");
    std::vector<VertexLabel> vertices;
    vertices.reserve(doc["vertices"].size());
    for (const auto& element : doc["vertices"]) {
        vertices.push_back(label_value(element, "vertex"));
    }
    return AbstractComplex(std::move(vertices), std::move(facets));
}

MetricSample parse_sample(const Json& doc) {
    require_kind(doc, "sample");
    require_fields(doc, {"points", "distances"});
    require_array(doc["points"], "points");
    std::vector<PointId> ids;
    ids.reserve(doc["points"].size());
    for (const auto& element : doc["points"]) {
        ids.push_back(label_value(element, "point id"));
    }
    require_array(doc["distances"], "distances");
    std::vector<std::tuple<PointId, PointId, Rational>> pairs;
    pairs.reserve(doc["distances"].size());
    for (const auto& element : doc["distances"]) {
        require_array(element, "distance entry");
        if (element.size() != 3) {
            throw ParseError("distance entry must be [id, id, value]");
        }
        pairs.emplace_back(label_value(element[0], "point id"),
                           label_value(element[1], "point id"),
                           rational_value(element[2], "distance"));
    }
    return MetricSample::from_pairs(std::move(ids), pairs);
}

IndexedCover parse_cover(const Json& doc) {
    require_kind(doc, "cover");
    require_fields(doc, {"sets"});
    require_object(doc["sets"], "sets");
    std::map<VertexLabel, std::set<PointId>> sets;
    for (const auto& [label, members] : doc["sets"].items()) {
        if (!is_valid_input_label(label)) {
            throw ParseError("cover label \"" + label +
                             "\" is invalid (empty, whitespace, or '|')");
        }
        require_array(members, "cover set \"" + label + "\"");
        std::set<PointId> ids;
        for (const auto& element : members) {
            if (!ids.insert(label_value(element, "cover member")).second) {
                throw ParseError("cover set \"" + label + "\" repeats a member");
            }
        }
        sets.emplace(label, std::move(ids));
    }
    return IndexedCover(std::move(sets));
}

std::vector<ProbVector> parse_point_list(const Json& doc) {
    require_kind(doc, "point_list");
    require_fields(doc, {"points"});
    require_array(doc["points"], "points");
    std::vector<ProbVector> out;
    out.reserve(doc["points"].size());
    for (const auto& element : doc["points"]) {
        out.emplace_back(WeightVector(weight_entries(element, "point")));
    }
    return out;
}

GeometricRealization parse_coords(const Json& doc) {
    require_kind(doc, "coords");
    require_fields(doc, {"dimension", "coordinates"});
    if (!doc["dimension"].is_number_unsigned()) {
        throw ParseError("dimension must be a nonnegative integer");
    }
    const auto dimension = doc["dimension"].get<std::size_t>();
    require_object(doc["coordinates"], "coordinates");
    std::map<VertexLabel, std::vector<Rational>> coords;
    std::vector<VertexLabel> labels;
    for (const auto& [label, tuple] : doc["coordinates"].items()) {
        if (!is_valid_input_label(label)) {
            throw ParseError("coordinate label \"" + label +
                             "\" is invalid (empty, whitespace, or '|')");
        }
        require_array(tuple, "coordinate tuple for \"" + label + "\"");
        if (tuple.size() != dimension) {
            throw ParseError("coordinate tuple for \"" + label + "\" has size " +
                             std::to_string(tuple.size()) + ", expected " +
                             std::to_string(dimension));
        }
        std::vector<Rational> values;
        values.reserve(dimension);
        for (const auto& element : tuple) {
            values.push_back(rational_value(element, "coordinate of \"" + label + "\""));
        }
        coords.emplace(label, std::move(values));
        labels.push_back(label);
    }
    AbstractComplex complex;
    if (!labels.empty()) {
        complex = AbstractComplex::from_facets({SubsetKey(std::move(labels))});
    }
    return GeometricRealization(std::move(complex), std::move(coords));
}

Json emit_prob_vector(const ProbVector& x,
                      const std::map<std::string, std::string>& extra) {
    Json doc = document("prob_vector", extra);
    doc["entries"] = weight_object(x.entries());
    return doc;
}

Json emit_weight_vector(const WeightVector& w,
                        const std::map<std::string, std::string>& extra) {
    Json doc = document("weight_vector", extra);
    doc["entries"] = weight_object(w.entries());
    return doc;
}

Json emit_derived_vector(const DerivedVector& d,
                         const std::map<std::string, std::string>& extra) {
    Json doc = document("derived_vector", extra);
    Json entries = Json::array();
    for (const auto& [key, value] : d.entries()) {
        Json entry = Json::object();
        entry["key"] = key_array(key);
        entry["weight"] = format_rational(value);
        entries.push_back(std::move(entry));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

Json emit_complex(const AbstractComplex& complex,
                  const std::map<std::string, std::string>& extra) {
    Json doc = document("complex", extra);
    Json vertices = Json::array();
    for (const auto& label : complex.vertices()) vertices.push_back(label);
    Json facets = Json::array();
    for (const auto& facet : complex.facets()) facets.push_back(key_array(facet));
    doc["vertices"] = std::move(vertices);
    doc["facets"] = std::move(facets);
    return doc;
}

Json emit_sample(const MetricSample& sample,
                 const std::map<std::string, std::string>& extra) {
    Json doc = document("sample", extra);
    Json points = Json::array();
    for (const auto& id : sample.ids()) points.push_back(id);
    Json distances = Json::array();
    for (std::size_t i = 0; i < sample.size(); ++i) {
        for (std::size_t j = i + 1; j < sample.size(); ++j) {
            distances.push_back(Json::array({sample.ids()[i], sample.ids()[j],
                                             format_rational(sample.distance(i, j))}));
        }
    }
    doc["points"] = std::move(points);
    doc["distances"] = std::move(distances);
    return doc;
}

Json emit_cover(const IndexedCover& cover,
                const std::map<std::string, std::string>& extra) {
    Json doc = document("cover", extra);
    Json sets = Json::object();
    for (const auto& [label, members] : cover.sets()) {
        Json ids = Json::array();
        for (const auto& id : members) ids.push_back(id);
        sets[label] = std::move(ids);
    }
    doc["sets"] = std::move(sets);
    return doc;
}

Json emit_point_list(std::span<const ProbVector> points,
                     const std::map<std::string, std::string>& extra) {
    Json doc = document("point_list", extra);
    Json list = Json::array();
    for (const auto& point : points) list.push_back(weight_object(point.entries()));
    doc["points"] = std::move(list);
    return doc;
}

Json emit_layer_list(std::span<const WeightVector> layers,
                     const std::map<std::string, std::string>& extra) {
    Json doc = document("layer_list", extra);
    Json list = Json::array();
    for (const auto& layer : layers) list.push_back(weight_object(layer.entries()));
    doc["layers"] = std::move(list);
    return doc;
}

Json emit_realization(const std::vector<Rational>& coordinates,
                      const std::map<std::string, std::string>& extra) {
    Json doc = document("realization", extra);
    Json tuple = Json::array();
    for (const auto& value : coordinates) tuple.push_back(format_rational(value));
    doc["coordinates"] = std::move(tuple);
    return doc;
}

Json emit_restrict_result(const RestrictResult& result,
                          const std::map<std::string, std::string>& extra) {
    Json doc = document("restrict_result", extra);
    Json kept = Json::array();
    for (const std::size_t index : result.kept_indices) kept.push_back(index);
    Json points = Json::array();
    for (const auto& point : result.points) {
        points.push_back(weight_object(point.entries()));
    }
    doc["kept"] = std::move(kept);
    doc["points"] = std::move(points);
    return doc;
}

Json emit_cech_result(const CechResult& result,
                      const std::map<std::string, std::string>& extra) {
    Json doc = document("cech_result", extra);
    Json sets = Json::object();
    for (const auto& [label, members] : result.cover.sets()) {
        Json ids = Json::array();
        for (const auto& id : members) ids.push_back(id);
        sets[label] = std::move(ids);
    }
    doc["cover"] = std::move(sets);
    Json partition = Json::array();
    for (const auto& point : result.partition) {
        partition.push_back(weight_object(point.entries()));
    }
    doc["partition"] = std::move(partition);
    Json nerve = Json::object();
    Json vertices = Json::array();
    for (const auto& label : result.nerve.vertices()) vertices.push_back(label);
    Json facets = Json::array();
    for (const auto& facet : result.nerve.facets()) facets.push_back(key_array(facet));
    nerve["vertices"] = std::move(vertices);
    nerve["facets"] = std::move(facets);
    doc["nerve"] = std::move(nerve);
    return doc;
}

Json emit_error(const std::string& precondition, const std::string& message) {
    Json doc = Json::object();
    doc["kind"] = "error";
    doc["precondition"] = precondition;
    doc["message"] = message;
    return doc;
}

} // namespace pou::io
