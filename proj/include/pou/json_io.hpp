#pragma once

#include "pou/complexes.hpp"
#include "pou/sampling.hpp"
#include "pou/weights.hpp"

#include <json.hpp>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace pou::io {

// Insertion-ordered JSON keeps emitted field order stable; map-backed payloads
// are inserted in sorted order, so the same value always serializes to the
// same bytes.
using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "pou";
inline constexpr const char* kToolVersion = "0.1.0";

// Syntax errors become ParseError; shape errors (wrong kind, unknown fields,
// bad rational syntax, illegal labels) also ParseError. Violations of semantic
// invariants on well-formed documents surface as DomainError from the
// underlying constructors.
Json parse_text(const std::string& text);

// Canonical rendering: two-space indent plus trailing newline.
std::string dump(const Json& doc);

// The "kind" field of a document; requires an object with a string kind.
std::string document_kind(const Json& doc);

// Standard metadata block ({"tool", "version"} plus extras, keys sorted).
Json standard_metadata(const std::map<std::string, std::string>& extra = {});

ProbVector parse_prob_vector(const Json& doc);
DerivedVector parse_derived_vector(const Json& doc);
AbstractComplex parse_complex(const Json& doc);
MetricSample parse_sample(const Json& doc);
IndexedCover parse_cover(const Json& doc);
std::vector<ProbVector> parse_point_list(const Json& doc);
// Coordinates for `realize`: the realized complex is the full simplex on the
// coordinate labels, so any point supported on those labels can be placed.
GeometricRealization parse_coords(const Json& doc);

Json emit_prob_vector(const ProbVector& x,
                      const std::map<std::string, std::string>& extra = {});
Json emit_weight_vector(const WeightVector& w,
                        const std::map<std::string, std::string>& extra = {});
Json emit_derived_vector(const DerivedVector& d,
                         const std::map<std::string, std::string>& extra = {});
Json emit_complex(const AbstractComplex& complex,
                  const std::map<std::string, std::string>& extra = {});
Json emit_sample(const MetricSample& sample,
                 const std::map<std::string, std::string>& extra = {});
Json emit_cover(const IndexedCover& cover,
                const std::map<std::string, std::string>& extra = {});
Json emit_point_list(std::span<const ProbVector> points,
                     const std::map<std::string, std::string>& extra = {});
Json emit_layer_list(std::span<const WeightVector> layers,
                     const std::map<std::string, std::string>& extra = {});
Json emit_realization(const std::vector<Rational>& coordinates,
                      const std::map<std::string, std::string>& extra = {});
Json emit_restrict_result(const RestrictResult& result,
                          const std::map<std::string, std::string>& extra = {});
Json emit_cech_result(const CechResult& result,
                      const std::map<std::string, std::string>& extra = {});
Json emit_error(const std::string& precondition, const std::string& message);

} // namespace pou::io
