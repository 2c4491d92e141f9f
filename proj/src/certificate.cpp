#include "certify/certificate.hpp"

namespace certify {

json to_json(const Rational& q) { return to_string(q); }

json to_json(const RationalInterval& x) { return json{{"lo", to_string(x.lo())}, {"hi", to_string(x.hi())}}; }

json to_json(const Poly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_string(c));
    return a;
}

json to_json(const ExpPoly& f) {
    json a = json::array();
    for (const auto& [k, c] : f.terms()) a.push_back(json{{"c", to_string(c)}, {"m", k.m}, {"n", k.n}});
    return a;
}

Rational rational_from_json(const json& j) { return parse_rational(j.get<std::string>()); }

RationalInterval interval_from_json(const json& j) {
    return {rational_from_json(j.at("lo")), rational_from_json(j.at("hi"))};
}

ExpPoly exppoly_from_json(const json& j) {
    ExpPoly f;
    for (const auto& t : j) f.add_term(rational_from_json(t.at("c")), t.at("m").get<unsigned long>(), t.at("n").get<unsigned long>());
    return f;
}

bool Certificate::passed() const {
    for (const auto& e : entries_)
        if (!e.passed) return false;
    return !entries_.empty();
}

CertificateEntry& Certificate::add(std::string lemma, std::string claim, bool passed, json witness) {
    entries_.push_back({std::move(lemma), std::move(claim), passed, std::move(witness)});
    return entries_.back();
}

void Certificate::append(const Certificate& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

json Certificate::to_json() const {
    json j;
    j["name"] = name_;
    j["passed"] = passed();
    json es = json::array();
    for (const auto& e : entries_)
        es.push_back(json{{"lemma", e.lemma}, {"claim", e.claim}, {"passed", e.passed}, {"witness", e.witness}});
    j["entries"] = std::move(es);
    return j;
}

Certificate Certificate::from_json(const json& j) {
    Certificate c(j.at("name").get<std::string>());
    for (const auto& e : j.at("entries"))
        c.add(e.at("lemma").get<std::string>(), e.at("claim").get<std::string>(), e.at("passed").get<bool>(),
              e.at("witness"));
    return c;
}

}  // namespace certify
