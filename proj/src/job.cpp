#include "torres/job.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "torres/differentials.hpp"
#include "torres/errors.hpp"
#include "torres/polytope.hpp"
#include "torres/residue.hpp"

namespace torres {

namespace {

using nlohmann::json;

json class_json(const DegreeClass& d) {
    json out;
    out["free"] = d.free_part;
    out["torsion"] = d.torsion_part;
    return out;
}

const json& field(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw InputError("job: missing field '" + where + "'");
    return *it;
}

std::vector<long> int_vector(const json& j, const std::string& where) {
    if (!j.is_array()) throw InputError("job: '" + where + "' must be an array of integers");
    std::vector<long> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw InputError("job: '" + where + "' must hold integers");
        out.push_back(v.get<long>());
    }
    return out;
}

}  // namespace

const Polynomial& JobDocument::named(const std::string& name) const {
    auto it = polynomials.find(name);
    if (it == polynomials.end())
        throw InputError("job: polynomial '" + name + "' is not defined");
    return it->second;
}

std::vector<Polynomial> JobDocument::sections() const {
    if (f_sequence.empty()) throw InputError("job: no f_sequence given");
    std::vector<Polynomial> out;
    for (const auto& name : f_sequence) out.push_back(named(name));
    return out;
}

JobDocument parse_job(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("job: ") + e.what());
    }

    JobDocument job;
    const json& fan = field(j, "fan", "fan");
    const json& rays_json = field(fan, "rays", "fan.rays");
    if (!rays_json.is_array() || rays_json.empty())
        throw InputError("job: 'fan.rays' must be a nonempty array");
    std::vector<RayVector> rays;
    for (size_t i = 0; i < rays_json.size(); ++i)
        rays.push_back(int_vector(rays_json[i], "fan.rays[" + std::to_string(i) + "]"));
    const json& cones_json = field(fan, "max_cones", "fan.max_cones");
    if (!cones_json.is_array()) throw InputError("job: 'fan.max_cones' must be an array");
    std::vector<std::vector<int>> cones;
    for (size_t i = 0; i < cones_json.size(); ++i) {
        auto v = int_vector(cones_json[i], "fan.max_cones[" + std::to_string(i) + "]");
        cones.emplace_back(v.begin(), v.end());
    }
    job.fan = build_fan(std::move(rays), std::move(cones));

    const json& vars = field(fan, "variable_names", "fan.variable_names");
    if (!vars.is_array()) throw InputError("job: 'fan.variable_names' must be an array");
    for (const auto& v : vars) {
        if (!v.is_string()) throw InputError("job: variable names must be strings");
        job.variables.push_back(v.get<std::string>());
    }
    if (static_cast<int>(job.variables.size()) != job.fan.nrays())
        throw InputError("job: variable_names must match the number of rays");

    if (!job.fan.complete)
        throw PreconditionError("job: the fan is not complete");
    job.cg = class_group(job.fan);

    job.beta_vector = int_vector(field(j, "beta", "beta"), "beta");
    if (static_cast<int>(job.beta_vector.size()) != job.fan.nrays())
        throw InputError("job: 'beta' must have one coefficient per ray");

    if (j.contains("polynomials")) {
        const json& polys = j["polynomials"];
        if (!polys.is_object()) throw InputError("job: 'polynomials' must be an object");
        for (auto it = polys.begin(); it != polys.end(); ++it) {
            if (!it.value().is_string())
                throw InputError("job: polynomial '" + it.key() + "' must be a string");
            job.polynomials.emplace(it.key(),
                                    parse_polynomial(it.value().get<std::string>(), job.variables));
        }
    }

    if (j.contains("f_sequence")) {
        const json& fs = j["f_sequence"];
        if (!fs.is_array()) throw InputError("job: 'f_sequence' must be an array of names");
        for (const auto& v : fs) {
            if (!v.is_string()) throw InputError("job: 'f_sequence' must hold names");
            std::string name = v.get<std::string>();
            if (!job.polynomials.count(name))
                throw InputError("job: f_sequence references undefined polynomial '" + name + "'");
            job.f_sequence.push_back(name);
        }
    }
    if (j.contains("g")) {
        if (!j["g"].is_string()) throw InputError("job: 'g' must be a polynomial name");
        job.g_name = j["g"].get<std::string>();
        if (!job.polynomials.count(*job.g_name))
            throw InputError("job: g references undefined polynomial '" + *job.g_name + "'");
    }
    if (j.contains("f")) {
        if (!j["f"].is_string()) throw InputError("job: 'f' must be a polynomial name");
        job.f_name = j["f"].get<std::string>();
        if (!job.polynomials.count(*job.f_name))
            throw InputError("job: f references undefined polynomial '" + *job.f_name + "'");
    }
    if (j.contains("sampler")) {
        const json& s = j["sampler"];
        if (!s.is_object()) throw InputError("job: 'sampler' must be an object");
        if (s.contains("samples")) job.sampler.sample_count = s["samples"].get<long>();
        if (s.contains("seed")) job.sampler.seed = s["seed"].get<std::uint64_t>();
        if (s.contains("chart")) job.sampler.chart = s["chart"].get<int>();
    }
    return job;
}

JobDocument load_job(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("job: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_job(buf.str());
}

namespace {

json run_info(const JobDocument& job) {
    const Fan& fan = job.fan;
    const ClassGroup& cg = job.cg;
    DegreeClass beta = job.beta();
    DegreeClass b0 = beta0(fan, cg);
    DegreeClass rho = cg.lin(fan.rank + 1, beta, -1, b0);

    json out;
    out["fan"] = {{"rank", fan.rank},
                  {"rays", fan.nrays()},
                  {"complete", fan.complete},
                  {"simplicial", fan.simplicial},
                  {"smooth", fan.smooth}};
    out["class_group"] = {{"free_rank", cg.free_rank}, {"torsion", cg.torsion}};
    json degs = json::array();
    for (int r = 0; r < fan.nrays(); ++r) {
        std::vector<long> e(fan.nrays(), 0);
        e[r] = 1;
        degs.push_back(class_json(cg.degree_of(e)));
    }
    out["ray_degrees"] = degs;
    out["beta"] = class_json(beta);
    out["beta0"] = class_json(b0);
    out["rho"] = class_json(rho);
    out["cartier"] = is_cartier(fan, job.beta_vector);
    out["ample"] = is_ample(fan, job.beta_vector);
    out["dims"] = {{"S_beta", graded_basis(fan, beta).dimension()},
                   {"S_rho", graded_basis(fan, rho).dimension()},
                   {"S_rho_minus_beta0", graded_basis(fan, cg.lin(1, rho, -1, b0)).dimension()}};
    return out;
}

json run_jacobian(const JobDocument& job) {
    JacobianResult jr = toric_jacobian(job.fan, job.cg, job.sections());
    json out;
    out["jacobian"] = to_string(jr.j, job.variables);
    out["degree"] = class_json(jr.degree);
    return out;
}

json run_residue(const JobDocument& job, bool with_cofactors) {
    if (!job.g_name) throw InputError("residue: the job must name a polynomial 'g'");
    ResidueProblem problem(job.fan, job.cg, job.beta(), job.sections());
    ResidueCertificate cert = problem.residue(job.named(*job.g_name));
    json out;
    out["c"] = to_string(cert.c);
    out["residue"] = to_string(cert.residue_value);
    out["deg_F"] = cert.deg_f.get_si();
    if (with_cofactors) {
        json h = json::array();
        for (const auto& hi : cert.cofactors) h.push_back(to_string(hi, job.variables));
        out["cofactors"] = h;
    }
    return out;
}

json run_check(const JobDocument& job) {
    DegreeClass beta = job.beta();
    auto f = job.sections();
    bool ok = check_condition3(job.fan, job.cg, beta, f);
    json out;
    out["base_point_free"] = ok;
    DegreeClass rho = job.cg.lin(job.fan.rank + 1, beta, -1, beta0(job.fan, job.cg));
    out["quotient_dimension_rho"] = quotient_dimension(job.fan, job.cg, f, rho);
    return out;
}

json run_nondeg(const JobDocument& job) {
    if (!job.f_name) throw InputError("nondeg: the job must name a polynomial 'f'");
    NondegeneracyReport r = is_nondegenerate(job.fan, job.cg, job.beta(), job.named(*job.f_name));
    json out;
    out["nondegenerate"] = r.nondegenerate;
    out["generation_check"] = r.generation_ok;
    return out;
}

json run_volume(const JobDocument& job) {
    LatticePolytope p = polytope_of_divisor(job.fan, job.beta_vector);
    json out;
    if (p.normalized_volume.get_den() == 1) {
        out["normalized_volume"] = p.normalized_volume.get_num().get_si();
    } else {
        out["normalized_volume"] = to_string(p.normalized_volume);
    }
    out["lattice_points"] = p.lattice_points.size();
    out["dimension"] = p.dimension;
    return out;
}

json run_numeric(const JobDocument& job, const SamplerConfig& config) {
    if (!job.g_name) throw InputError("numeric: the job must name a polynomial 'g'");
    IntegralEstimate est = residue_integral(job.fan, job.cg, job.beta(), job.sections(),
                                            job.named(*job.g_name), config);
    json out;
    out["estimate_re"] = est.value.real();
    out["estimate_im"] = est.value.imag();
    out["std_error"] = est.std_error;
    out["samples"] = est.samples_used;
    out["seed"] = config.seed;
    out["chart"] = config.chart;
    return out;
}

}  // namespace

std::string run_command(const std::string& command, const JobDocument& job,
                        const CommandOptions& options) {
    SamplerConfig sampler = job.sampler;
    if (options.samples) sampler.sample_count = *options.samples;
    if (options.seed) sampler.seed = *options.seed;
    if (options.chart) sampler.chart = *options.chart;

    json out;
    if (command == "info") {
        out = run_info(job);
    } else if (command == "jacobian") {
        out = run_jacobian(job);
    } else if (command == "residue") {
        out = run_residue(job, options.cofactors);
    } else if (command == "check") {
        out = run_check(job);
    } else if (command == "nondeg") {
        out = run_nondeg(job);
    } else if (command == "volume") {
        out = run_volume(job);
    } else if (command == "numeric") {
        out = run_numeric(job, sampler);
    } else {
        throw InputError("unknown command '" + command + "'");
    }
    return out.dump(2) + "\n";
}

}  // namespace torres
