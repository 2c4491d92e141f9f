#pragma once

#include "certify/certificate.hpp"

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace certify {

enum class Stage { profile, weights, pq, longtime, shorttime, oracle, all };

Stage parse_stage(const std::string& s);
std::string name(Stage s);

struct RunConfig {
    long K_max = 5000;       // profile series truncation
    long M_weights = 25;     // weight recursion depth
    long N1 = 5000;          // Laplace first-row cutoff
    long N2 = 500;           // Laplace second cutoff
    long N3 = 4;             // H terms kept exactly
    long N4 = 25;            // kernel truncation, must equal M_weights
    Rational sweep_step = Rational(1, 100);
    Integer denom_budget = 1000000;
    Rational pi_width = Rational(1, Integer("100000000000000000000"));
    std::filesystem::path out_dir = "certify_out";
    int jobs = 0;            // 0 keeps the OpenMP default

    json to_json() const;
    void validate() const;   // throws std::invalid_argument
};

// A stage ran without an artifact it depends on.
class MissingArtifact : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Runs one stage (or all, in order) and rewrites summary.json from every
// certificate in the output directory. Returns 0 on success, 1 when a
// certificate failed, 2 when a dependency artifact is missing.
int run(Stage stage, const RunConfig& cfg, std::ostream& log);

// Artifact file for a stage, e.g. profile_certificate.json.
std::filesystem::path artifact_path(const RunConfig& cfg, Stage s);

// Aggregate of the certificates present in the output directory.
json build_summary(const RunConfig& cfg);

}  // namespace certify
