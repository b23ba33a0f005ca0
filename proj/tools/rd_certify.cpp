#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rdcert/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rd-certify: simulate 2x2 reaction-diffusion systems and audit their boundedness claims"};
    app.require_subcommand(1);

    std::string run_config;
    auto* run = app.add_subcommand("run", "integrate a configured system and write the CSV log and reports");
    run->add_option("config", run_config, "INI config file")->required();

    std::string check_config;
    auto* check = app.add_subcommand("check", "sample the mass-control and g >= 0 conditions only");
    check->add_option("config", check_config, "INI config file")->required();

    rdcert::ThetaArgs theta_args;
    double theta = 0.0;
    auto* theta_cmd = app.add_subcommand("theta", "print the weight sequence and its condition checks");
    theta_cmd->add_option("--a", theta_args.a, "diffusion coefficient of u")->required();
    theta_cmd->add_option("--b", theta_args.b, "diffusion coefficient of v")->required();
    theta_cmd->add_option("--mu", theta_args.mu, "mass-control constant")->required();
    theta_cmd->add_option("--p", theta_args.p, "polynomial degree")->required();
    auto* theta_opt = theta_cmd->add_option("--theta", theta, "override the default theta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : rdcert::kExitConfigError;
    }

    if (*run) return rdcert::cmd_run(run_config, std::cout, std::cerr);
    if (*check) return rdcert::cmd_check(check_config, std::cout, std::cerr);
    if (theta_opt->count() > 0) theta_args.theta = theta;
    return rdcert::cmd_theta(theta_args, std::cout, std::cerr);
}
