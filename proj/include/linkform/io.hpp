#pragma once

// JSON encodings of Seifert data, Gram pairings, standard forms, Witt classes
// and the reports built from them.

#include "linkform/realize.hpp"
#include "linkform/witt.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>

namespace linkform {

using Json = nlohmann::ordered_json;

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Integers are written as JSON numbers when they fit in 64 bits, else as strings;
// both are accepted on input.
Json integer_json(const Integer& z);
Integer integer_from_json(const Json& j);

// {"genus": g, "pairs": [[alpha, beta], ...]}; a bare pair list means genus 0.
Json to_json(const SeifertData& s);
SeifertData seifert_from_json(const Json& j);

// {"prime": p, "labels": [...], "orders": [...], "gram": [["a/b", ...], ...]}
Json to_json(const GramPairing& g);
GramPairing gram_from_json(const Json& j);

// {"atoms": [{"cyc": [p, k, a]}, {"E0": k}, {"E1": k}]}
Json to_json(const Atom& a);
Json to_json(const StandardForm& f);
StandardForm form_from_json(const Json& j);

// {"2": "1", "3": "3", "5": "(1,0)"}
Json to_json(const WittElement& w);

Json to_json(const ClassificationReport& r);
Json to_json(const StructureReport& r);
Json to_json(const RealizationResult& r);

// Euler invariant, structure, per-prime local orders and Gram matrices,
// classification and Witt class of M(g;S).
Json compute_report(const SeifertData& s, const std::optional<Integer>& prime = std::nullopt);

Json read_json_text(const std::string& text);

}  // namespace linkform
