#include "simerka/serialize.hpp"

#include <fstream>

#include "simerka/errors.hpp"

namespace simerka {

namespace {

Int int_from_json(const Json& j)
{
    if (j.is_string()) return parse_int(j.get<std::string>());
    if (j.is_number_integer()) return from_i64(j.get<std::int64_t>());
    throw Error(Errc::parse_error, "expected an integer, got " + j.dump());
}

} // namespace

Json to_json(const QForm& q) { return Json::array({q.a.get_str(), q.b.get_str(), q.c.get_str()}); }

QForm form_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 3) throw Error(Errc::parse_error, "a form is an array of three integers");
    QForm q{int_from_json(j[0]), int_from_json(j[1]), int_from_json(j[2])};
    validate(q);
    return q;
}

Json to_json(const FactoredRational& r)
{
    Json out = Json::array();
    for (const auto& [p, e] : r.entries()) out.push_back(Json::array({p.get_str(), e}));
    return out;
}

FactoredRational factored_from_json(const Json& j)
{
    if (!j.is_array()) throw Error(Errc::parse_error, "a factored rational is an array of [prime, exponent] pairs");
    FactoredRational r;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[1].is_number_integer())
            throw Error(Errc::parse_error, "bad [prime, exponent] pair " + pair.dump());
        r.multiply_prime(int_from_json(pair[0]), pair[1].get<long>());
    }
    return r;
}

Json to_json(const GroupStructure& g)
{
    Json divisors = Json::array();
    for (const auto& d : g.divisors) divisors.push_back(d.get_str());
    return Json{{"order", g.order.get_str()}, {"divisors", divisors}, {"certified", certification_name(g.certified)}};
}

Json to_json(const FactorResult& r)
{
    Json factors = Json::array();
    for (const auto& f : r.factors)
        factors.push_back(Json{{"divisor", f.divisor.get_str()}, {"exponent", f.exponent}, {"certainty", certainty_name(f.certainty)}});
    Json trace = Json::array();
    for (const auto& s : r.trace) {
        Json step{{"step", s.step}, {"detail", s.detail}};
        if (s.form) step["form"] = to_json(*s.form);
        trace.push_back(std::move(step));
    }
    return Json{{"input", r.n.get_str()},
                {"factors", factors},
                {"complete", r.complete},
                {"budget_exhausted", r.budget_exhausted},
                {"trace", trace}};
}

Json relation_record(const Relation& rel, const FactorBase& base)
{
    if (rel.exponents.size() != base.size()) throw Error(Errc::invalid_argument, "relation does not match the factor base");
    Json primes = Json::array(), exps = Json::array();
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (rel.exponents[i] == 0) continue;
        primes.push_back(std::to_string(base[i].p));
        exps.push_back(rel.exponents[i]);
    }
    return Json{{"disc", base.discriminant().value.get_str()}, {"primes", primes}, {"exponents", exps}, {"witness", rel.witness}};
}

Relation relation_from_record(const Json& j, const FactorBase& base)
{
    if (!j.is_object() || !j.contains("primes") || !j.contains("exponents"))
        throw Error(Errc::parse_error, "relation record needs primes and exponents");
    const Json& primes = j["primes"];
    const Json& exps = j["exponents"];
    if (!primes.is_array() || !exps.is_array() || primes.size() != exps.size())
        throw Error(Errc::parse_error, "primes and exponents must be arrays of equal length");
    Relation rel;
    rel.exponents.assign(base.size(), 0);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const auto idx = base.index_of(int_from_json(primes[i]));
        if (!idx) throw Error(Errc::invalid_argument, "prime " + primes[i].dump() + " is not in the factor base");
        if (!exps[i].is_number_integer()) throw Error(Errc::parse_error, "exponent must be an integer");
        rel.exponents[*idx] += exps[i].get<std::int64_t>();
    }
    if (j.contains("witness") && j["witness"].is_string()) rel.witness = j["witness"].get<std::string>();
    return rel;
}

void append_relation_log(const std::string& path, const std::vector<Relation>& rels, const FactorBase& base)
{
    std::ofstream os(path, std::ios::app);
    if (!os) throw Error(Errc::invalid_argument, "cannot open relation log " + path);
    for (const auto& r : rels) os << relation_record(r, base).dump() << '\n';
}

std::vector<Relation> load_relation_log(const std::string& path, const FactorBase& base)
{
    std::ifstream is(path);
    std::vector<Relation> out;
    if (!is) return out;
    const std::string disc = base.discriminant().value.get_str();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error& e) {
            throw Error(Errc::parse_error, path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (j.contains("disc") && j["disc"] != disc) continue;
        out.push_back(relation_from_record(j, base));
    }
    return out;
}

} // namespace simerka
