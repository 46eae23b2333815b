#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "torres/errors.hpp"
#include "torres/job.hpp"

int main(int argc, char** argv) {
    CLI::App app{"torres: exact toric residues, Jacobians, gradings, and volumes"};
    app.require_subcommand(1);

    std::string job_path;
    torres::CommandOptions options;
    long samples = -1;
    long seed = -1;
    int chart = -1;

    const char* names[] = {"info", "jacobian", "residue", "check", "nondeg", "volume", "numeric"};
    const char* descs[] = {
        "class group, gradings, ampleness and graded-piece dimensions",
        "toric Jacobian of the job's f-sequence",
        "residue certificate for the job's g against the f-sequence",
        "base-point-freeness of the f-sequence and the critical quotient dimension",
        "nondegeneracy verdict for the job's section f",
        "normalized volume of the divisor polytope of beta",
        "Monte Carlo estimate of the residue integral"};
    for (int i = 0; i < 7; ++i) {
        auto* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--job", job_path, "path to the JSON job document")->required();
        if (std::string(names[i]) == "residue")
            sub->add_flag("--cofactors", options.cofactors, "include the cofactor polynomials");
        if (std::string(names[i]) == "numeric") {
            sub->add_option("--samples", samples, "sample count override");
            sub->add_option("--seed", seed, "seed override");
            sub->add_option("--chart", chart, "max-cone chart override");
        }
    }

    CLI11_PARSE(app, argc, argv);

    if (samples >= 0) options.samples = samples;
    if (seed >= 0) options.seed = static_cast<std::uint64_t>(seed);
    if (chart >= 0) options.chart = chart;

    std::string command = app.get_subcommands().front()->get_name();
    try {
        torres::JobDocument job = torres::load_job(job_path);
        std::cout << torres::run_command(command, job, options);
        return 0;
    } catch (const torres::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const torres::PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 2;
    } catch (const torres::InternalError& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 3;
    }
}
