#include "linkform/io.hpp"

namespace linkform {

Json integer_json(const Integer& z)
{
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());
}

Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::invalid_argument&) {
        }
    }
    throw ParseError("expected an integer, got " + j.dump());
}

Json to_json(const SeifertData& s)
{
    Json pairs = Json::array();
    for (const auto& p : s.pairs) pairs.push_back(Json::array({integer_json(p.alpha), integer_json(p.beta)}));
    return Json{{"genus", s.genus}, {"pairs", pairs}};
}

SeifertData seifert_from_json(const Json& j)
{
    SeifertData s;
    const Json* pairs = &j;
    if (j.is_object()) {
        if (j.contains("genus")) {
            if (!j["genus"].is_number_unsigned()) throw ParseError("genus must be a nonnegative integer");
            s.genus = j["genus"].get<unsigned long>();
        }
        if (!j.contains("pairs")) throw ParseError("Seifert data needs \"pairs\"");
        pairs = &j["pairs"];
    }
    if (!pairs->is_array()) throw ParseError("Seifert pairs must be an array");
    for (const auto& p : *pairs) {
        if (!p.is_array() || p.size() != 2) throw ParseError("each Seifert pair must be [alpha, beta]");
        s.pairs.push_back({integer_from_json(p[0]), integer_from_json(p[1])});
    }
    return s;
}

Json to_json(const GramPairing& g)
{
    Json orders = Json::array(), gram = Json::array();
    for (const auto& o : g.orders) orders.push_back(integer_json(o));
    for (const auto& row : g.gram) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(x.to_string());
        gram.push_back(r);
    }
    return Json{{"prime", integer_json(g.prime)}, {"labels", g.labels}, {"orders", orders}, {"gram", gram}};
}

GramPairing gram_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("prime") || !j.contains("orders") || !j.contains("gram"))
        throw ParseError("Gram pairing needs \"prime\", \"orders\" and \"gram\"");
    GramPairing g;
    g.prime = integer_from_json(j["prime"]);
    for (const auto& o : j["orders"]) g.orders.push_back(integer_from_json(o));
    if (j.contains("labels"))
        for (const auto& l : j["labels"]) g.labels.push_back(l.get<std::string>());
    else
        for (std::size_t i = 0; i < g.orders.size(); ++i) g.labels.push_back("e" + std::to_string(i + 1));
    for (const auto& row : j["gram"]) {
        std::vector<QmodZ> r;
        for (const auto& x : row) {
            if (x.is_string()) r.emplace_back(parse_rational(x.get<std::string>()));
            else r.emplace_back(Rational(integer_from_json(x)));
        }
        g.gram.push_back(std::move(r));
    }
    return g;
}

Json to_json(const Atom& a)
{
    switch (a.kind) {
    case Atom::Kind::Cyc: return Json{{"cyc", Json::array({integer_json(a.p), a.k, integer_json(a.a)})}};
    case Atom::Kind::E0: return Json{{"E0", a.k}};
    case Atom::Kind::E1: return Json{{"E1", a.k}};
    }
    return {};
}

Json to_json(const StandardForm& f)
{
    Json atoms = Json::array();
    for (const auto& a : f.atoms) atoms.push_back(to_json(a));
    return Json{{"atoms", atoms}};
}

StandardForm form_from_json(const Json& j)
{
    const Json* atoms = &j;
    if (j.is_object()) {
        if (!j.contains("atoms")) throw ParseError("standard form needs \"atoms\"");
        atoms = &j["atoms"];
    }
    if (!atoms->is_array()) throw ParseError("atoms must be an array");
    StandardForm f;
    for (const auto& a : *atoms) {
        if (!a.is_object() || a.size() != 1) throw ParseError("each atom must be a one-key object: " + a.dump());
        const std::string key = a.begin().key();
        const Json& val = a.begin().value();
        if (key == "cyc") {
            if (!val.is_array() || val.size() != 3) throw ParseError("cyc atom must be [p, k, a]");
            f.atoms.push_back(Atom::cyc(integer_from_json(val[0]), val[1].get<long>(), integer_from_json(val[2])));
        } else if (key == "E0" || key == "E1") {
            if (!val.is_number_integer()) throw ParseError(key + " atom needs an integer exponent");
            f.atoms.push_back(key == "E0" ? Atom::e0(val.get<long>()) : Atom::e1(val.get<long>()));
        } else {
            throw ParseError("unknown atom kind '" + key + "'");
        }
    }
    f.sort();
    return f;
}

Json to_json(const WittElement& w)
{
    Json out = Json::object();
    for (const auto& [p, x] : w.parts) out[p.get_str()] = x.to_string();
    return out;
}

Json to_json(const ClassificationReport& r)
{
    Json primes = Json::array();
    for (const auto& pr : r.primes) {
        Json comps = Json::array();
        for (const auto& c : pr.components) {
            Json cj{{"exponent", c.component.k}, {"rank", c.component.rank()}};
            if (c.parity) cj["parity"] = to_string(*c.parity);
            if (c.d) cj["d"] = c.d->is_square() ? "square" : "nonsquare";
            cj["atoms"] = to_json(StandardForm{c.atoms})["atoms"];
            comps.push_back(cj);
        }
        primes.push_back(Json{{"prime", integer_json(pr.p)}, {"components", comps}});
    }
    return Json{{"primes", primes}, {"standard_form", to_json(r.form)["atoms"]}};
}

Json to_json(const StructureReport& r)
{
    Json per = Json::array();
    for (std::size_t i = 0; i < r.primes.size(); ++i) {
        Json orders = Json::array();
        for (const auto& o : r.orders[i]) orders.push_back(integer_json(o));
        per.push_back(Json{{"prime", integer_json(r.primes[i])}, {"orders", orders}});
    }
    Json disc = Json::array();
    for (const auto& d : r.discrepancies) disc.push_back(integer_json(d.prime));
    return Json{{"torsion", per},
                {"free_rank", r.free_rank_smith},
                {"free_rank_predicted", r.free_rank_predicted},
                {"snf_match", r.ok()},
                {"discrepant_primes", disc}};
}

Json to_json(const RealizationResult& r)
{
    Json j = to_json(r.seifert);
    j["euler"] = to_string(euler_invariant(r.seifert));
    j["verified"] = r.verified;
    j["construction"] = r.construction;
    j["trace"] = r.trace;
    return j;
}

Json compute_report(const SeifertData& s, const std::optional<Integer>& prime)
{
    require_valid(s);
    Json out{{"seifert", to_json(s)}, {"euler", to_string(euler_invariant(s))}};
    out["structure"] = to_json(structure_check(s));
    if (s.size() < 2) {
        out["pairings"] = Json::array();
        out["note"] = "linking pairing formulas need at least two cone points";
        return out;
    }
    std::vector<Integer> primes = prime ? std::vector<Integer>{*prime} : relevant_primes(s);
    Json pairings = Json::array();
    std::vector<GramPairing> grams;
    for (const auto& p : primes) {
        GramPairing g = gram_matrix(s, p);
        if (g.empty()) continue;
        pairings.push_back(to_json(g));
        grams.push_back(std::move(g));
    }
    out["pairings"] = pairings;
    ClassificationReport rep = classify(grams);
    out["classification"] = to_json(rep);
    out["standard_form"] = out["classification"]["standard_form"];
    out["witt"] = to_json(witt_pairing(rep.form));
    return out;
}

Json read_json_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace linkform
