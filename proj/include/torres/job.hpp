#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torres/fan.hpp"
#include "torres/numeric.hpp"
#include "torres/polynomial.hpp"

namespace torres {

/// A parsed batch job: the fan, named polynomial inputs, and the parameters
/// the commands draw on.
struct JobDocument {
    Fan fan;
    ClassGroup cg;
    std::vector<std::string> variables;
    std::vector<long> beta_vector;
    std::map<std::string, Polynomial> polynomials;
    std::vector<std::string> f_sequence;  // names, order fixes the residue sign
    std::optional<std::string> g_name;
    std::optional<std::string> f_name;    // the section for nondegeneracy checks
    SamplerConfig sampler;

    DegreeClass beta() const { return cg.degree_of(beta_vector); }
    const Polynomial& named(const std::string& name) const;
    std::vector<Polynomial> sections() const;
};

JobDocument load_job(const std::string& path);
JobDocument parse_job(const std::string& json_text);

struct CommandOptions {
    std::optional<long> samples;
    std::optional<std::uint64_t> seed;
    std::optional<int> chart;
    bool cofactors = false;
};

/// Runs one command against a job and returns the JSON report. Throws
/// InputError / PreconditionError / InternalError; the CLI maps those to
/// exit codes 1 / 2 / 3. Verdict-style results (a false check) are reports,
/// not errors.
std::string run_command(const std::string& command, const JobDocument& job,
                        const CommandOptions& options);

}  // namespace torres
