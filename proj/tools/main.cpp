#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prodmat/experiment.hpp"

namespace {

bool parse_zgrid(const std::string& text, prodmat::ZGridSpec& zg) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto colon = text.find(':', pos);
        parts.push_back(text.substr(pos, colon - pos));
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (parts.size() != 4) return false;
    try {
        std::size_t u0 = 0, u1 = 0, u2 = 0, u3 = 0;
        zg.re_min = std::stod(parts[0], &u0);
        zg.re_max = std::stod(parts[1], &u1);
        zg.count = std::stol(parts[2], &u2);
        zg.im = std::stod(parts[3], &u3);
        return u0 == parts[0].size() && u1 == parts[1].size() && u2 == parts[2].size() &&
               u3 == parts[3].size();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral laboratory for products of rectangular random matrices"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key-value file; a [subcommand] section mirrors that subcommand's flags; "
                   "flags override the file");

    prodmat::ExperimentConfig cfg;
    std::string zgrid_text;

    auto add_model_flags = [&](CLI::App* sub) {
        sub->fallthrough();
        sub->add_option("--m", cfg.m, "number of factor matrices");
        sub->add_option("--y", cfg.y_text, "aspect ratios n/p_l, comma list; fractions allowed")
            ->delimiter(',');
        sub->add_option("--p", cfg.p, "explicit sizes p_1..p_m, comma list (overrides --y)")
            ->delimiter(',');
        sub->add_option("--out", cfg.out_dir, "output directory");
    };
    auto add_sampling_flags = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "rows of the product");
        sub->add_option("--dist", cfg.dist, "gaussian | cgaussian | rademacher | threepoint");
        sub->add_option("--a", cfg.a, "spike location of the threepoint law");
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--trials", cfg.trials, "independent repetitions");
        sub->add_option("--truncate", cfg.truncate, "off | auto | c:tau");
        sub->add_option("--threads", cfg.threads, "worker threads; 0 = hardware");
    };
    auto add_limit_flags = [&](CLI::App* sub) {
        sub->add_option("--variant", cfg.variant, "squares | symmetrized");
        sub->add_option("--vmin", cfg.vmin, "distance to the real axis for inversion");
        sub->add_option("--grid", cfg.grid_points, "points in the density grid");
    };

    CLI::App* moments = app.add_subcommand("moments", "exact limit moments");
    add_model_flags(moments);
    moments->add_option("--k", cfg.k, "highest moment order");

    CLI::App* limit = app.add_subcommand("limit", "limiting density, CDF and support edges");
    add_model_flags(limit);
    add_limit_flags(limit);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo against the limit law");
    add_model_flags(simulate);
    add_sampling_flags(simulate);
    add_limit_flags(simulate);
    simulate->add_option("--k", cfg.k, "highest moment order");
    simulate->add_option("--zgrid", zgrid_text, "residual grid re_min:re_max:count:im");

    CLI::App* convergence = app.add_subcommand("convergence", "distance to the limit across n");
    add_model_flags(convergence);
    add_sampling_flags(convergence);
    add_limit_flags(convergence);
    convergence->add_option("--nlist", cfg.n_list, "comma list of n values")->delimiter(',');

    CLI::App* residual = app.add_subcommand("residual", "algebraic-equation residual of the empirical transform");
    add_model_flags(residual);
    add_sampling_flags(residual);
    residual->add_option("--variant", cfg.variant, "squares | symmetrized");
    residual->add_option("--zgrid", zgrid_text, "grid re_min:re_max:count:im");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (!zgrid_text.empty() && !parse_zgrid(zgrid_text, cfg.zgrid)) {
        std::fprintf(stderr, "config error: bad --zgrid spec: %s\n", zgrid_text.c_str());
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return prodmat::run_command(cfg, std::cout);
}
