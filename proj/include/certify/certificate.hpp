#pragma once

#include "certify/exppoly.hpp"
#include "certify/interval.hpp"
#include "certify/poly.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace certify {

using json = nlohmann::ordered_json;

json to_json(const Rational& q);
json to_json(const RationalInterval& x);
json to_json(const Poly& p);
json to_json(const ExpPoly& f);

Rational rational_from_json(const json& j);
RationalInterval interval_from_json(const json& j);
ExpPoly exppoly_from_json(const json& j);

// One verified (or refuted) inequality together with its exact witnesses.
struct CertificateEntry {
    std::string lemma;
    std::string claim;
    bool passed = false;
    json witness = json::object();
};

// Append-only list of entries; passes iff every entry passed.
class Certificate {
public:
    explicit Certificate(std::string name = {}) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    const std::vector<CertificateEntry>& entries() const { return entries_; }
    bool passed() const;

    CertificateEntry& add(std::string lemma, std::string claim, bool passed, json witness = json::object());
    void append(const Certificate& other);

    json to_json() const;
    static Certificate from_json(const json& j);

private:
    std::string name_;
    std::vector<CertificateEntry> entries_;
};

}  // namespace certify
