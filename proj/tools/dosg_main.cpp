#include "dosg/dos.hpp"
#include "dosg/experiments.hpp"
#include "dosg/graph.hpp"
#include "dosg/metrics.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

dosg::GraphFamily parse_family(const std::string& name, int d, int k) {
    if (name == "zd") return dosg::GraphFamily::zd(d);
    if (name == "hex") return dosg::GraphFamily::hexagonal();
    if (name == "tri") return dosg::GraphFamily::triangular();
    if (name == "bethe") return dosg::GraphFamily::bethe(k);
    throw CLI::ValidationError("family must be one of zd, hex, tri, bethe");
}

std::string out_dir_or_env(const std::string& flag_value) {
    if (const char* env = std::getenv("DOSG_OUT"); env && *env) return env;
    return flag_value;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-volume density-of-states toolkit for graph Schrodinger operators"};
    app.require_subcommand(1);

    std::string family_name = "zd";
    int dim = 1, coord = 3, radius = 4;
    std::string out_path;

    auto* ball_cmd = app.add_subcommand("ball", "build a ball and print/export it");
    ball_cmd->add_option("--family", family_name, "zd|hex|tri|bethe");
    ball_cmd->add_option("--d", dim, "lattice dimension");
    ball_cmd->add_option("--k", coord, "Bethe coordination number");
    ball_cmd->add_option("--radius", radius, "ball radius")->required();
    ball_cmd->add_option("--out", out_path, "edge-list output file");

    int dos_L = 20;
    std::string backend_name = "finite-volume-eig";
    std::uint64_t dos_seed = 1;
    double dos_amp = 0.5;
    auto* dos_cmd = app.add_subcommand("dos", "finite-volume DOS measure for an i.i.d. uniform potential");
    dos_cmd->add_option("--family", family_name, "zd|hex|tri|bethe");
    dos_cmd->add_option("--d", dim, "lattice dimension");
    dos_cmd->add_option("--k", coord, "Bethe coordination number");
    dos_cmd->add_option("--L", dos_L, "functional radius");
    dos_cmd->add_option("--seed", dos_seed, "potential seed");
    dos_cmd->add_option("--amp", dos_amp, "uniform potential amplitude");
    dos_cmd->add_option("--out", out_path, "measure CSV output file");

    std::string metric_a, metric_b, which = "dw";
    auto* metric_cmd = app.add_subcommand("metric", "distance between two measures in CSV form");
    metric_cmd->add_option("--a", metric_a, "first measure CSV")->required();
    metric_cmd->add_option("--b", metric_b, "second measure CSV")->required();
    metric_cmd->add_option("--which", which, "dw|krw|dinf");

    std::string exp_id;
    std::string config_path;
    std::string exp_out = "out";
    std::uint64_t seed = 1;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    bool single_thread = false;
    auto* exp_cmd = app.add_subcommand("experiment", "run one verification experiment");
    exp_cmd->add_option("id", exp_id, "experiment id")->required();
    exp_cmd->add_option("--config", config_path, "JSON config file");
    exp_cmd->add_option("--out", exp_out, "output directory");
    exp_cmd->add_option("--seed", seed, "master seed");
    exp_cmd->add_option("--threads", threads, "worker threads");
    exp_cmd->add_flag("--single-thread", single_thread, "force one worker");

    auto* all_cmd = app.add_subcommand("all", "run every experiment");
    all_cmd->add_option("--config", config_path, "JSON config file");
    all_cmd->add_option("--out", exp_out, "output directory");
    all_cmd->add_option("--seed", seed, "master seed");
    all_cmd->add_option("--threads", threads, "worker threads");
    all_cmd->add_flag("--single-thread", single_thread, "force one worker");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*ball_cmd) {
            const auto fam = parse_family(family_name, dim, coord);
            const auto ball = dosg::build_ball(fam, radius);
            std::cout << "family=" << fam.name() << " M=" << radius
                      << " vertices=" << ball.n << "\n";
            if (!out_path.empty()) {
                std::ofstream os(out_path);
                dosg::write_edge_list(ball, os);
                std::cout << "edge list written to " << out_path << "\n";
            }
            return 0;
        }
        if (*dos_cmd) {
            const auto fam = parse_family(family_name, dim, coord);
            const auto m = [&] {
                auto ball = std::make_shared<dosg::RootedBall>(dosg::build_ball(fam, dos_L));
                const auto V = dosg::sample_random_potential(
                    *ball, dosg::SingleSiteMeasure::uniform(-dos_amp, dos_amp), dos_seed);
                return dosg::local_dos_eig(dosg::assemble(ball, V), dos_L,
                                           dosg::DosBackend::FiniteVolumeEig);
            }();
            if (!out_path.empty()) {
                std::ofstream os(out_path);
                m.write_csv(os);
                std::cout << "measure written to " << out_path << "\n";
            } else {
                m.write_csv(std::cout);
            }
            return 0;
        }
        if (*metric_cmd) {
            std::ifstream ia(metric_a), ib(metric_b);
            if (!ia || !ib) {
                std::cerr << "cannot open measure files\n";
                return 2;
            }
            const auto a = dosg::DiscreteMeasure::read_csv(ia);
            const auto b = dosg::DiscreteMeasure::read_csv(ib);
            if (which == "dw") {
                const auto r = dosg::d_w(a, b);
                std::cout << "{\"metric\":\"dw\",\"value\":" << r.value
                          << ",\"method\":\"" << r.method << "\",\"s\":" << r.s
                          << ",\"ell\":" << r.ell << ",\"certificate\":[";
                for (std::size_t i = 0; i < r.f.size(); ++i)
                    std::cout << (i ? "," : "") << r.f[i];
                std::cout << "]}\n";
            } else if (which == "krw") {
                std::cout << "{\"metric\":\"krw\",\"value\":"
                          << dosg::d_krw(a, b).value << "}\n";
            } else if (which == "dinf") {
                std::cout << "{\"metric\":\"dinf\",\"value\":"
                          << dosg::d_inf(a, b).value << "}\n";
            } else {
                std::cerr << "unknown metric " << which << "\n";
                return 2;
            }
            return 0;
        }

        const int nthreads = single_thread ? 1 : std::max(1, threads);
        const std::string out = out_dir_or_env(exp_out);
        std::vector<std::string> ids;
        if (*exp_cmd) ids.push_back(exp_id);
        else for (const auto& id : dosg::experiment_ids()) ids.push_back(id);

        bool all_pass = true;
        for (const auto& id : ids) {
            const auto cfg = dosg::ExperimentConfig::make(
                id,
                config_path.empty() ? std::nullopt
                                    : std::optional<std::string>(config_path),
                seed, nthreads, out);
            const auto result = dosg::run_experiment(cfg);
            dosg::write_outputs(cfg, result);
            int failed = 0;
            for (const auto& r : result.rows)
                if (r.asserted && !r.pass) ++failed;
            std::cout << id << ": " << result.rows.size() << " rows, "
                      << (result.pass_all ? "PASS" : "FAIL") << " ("
                      << result.runtime_seconds << " s)";
            if (failed) std::cout << ", " << failed << " failed assertions";
            std::cout << "\n";
            all_pass = all_pass && result.pass_all;
        }
        return all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
