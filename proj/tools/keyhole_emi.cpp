// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "keyhole/acceptance.hpp"
#include "keyhole/emi_analytic.hpp"
#include "keyhole/emi_mst.hpp"
#include "keyhole/errors.hpp"
#include "keyhole/io.hpp"
#include "keyhole/simulate.hpp"

namespace {

using namespace keyhole;

std::vector<double> parse_snr_spec(const std::string &spec) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':')
        throw std::invalid_argument("--snr expects lo:hi:step (dB), got '" + spec + "'");
    return snr_grid(lo, hi, step);
}

void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    out << text;
}

std::string join_args(int argc, char **argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

struct CommonOpts {
    std::string mod = "qam4";
    int nt = 2, nr = 2;
    double mt = 2.0, mr = 3.0;
    std::uint64_t seed = 12345;
    unsigned workers = 0;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App *cmd, CommonOpts &o, bool with_output = true) {
    cmd->add_option("--mod", o.mod, "constellation: qam4/qam16/qam64/qam256/bpsk or JSON file");
    cmd->add_option("--nt", o.nt, "transmit antennas (> 1)");
    cmd->add_option("--nr", o.nr, "receive antennas (> 1)");
    cmd->add_option("--mt", o.mt, "transmit-side Nakagami severity (>= 0.5)");
    cmd->add_option("--mr", o.mr, "receive-side Nakagami severity (>= 0.5)");
    cmd->add_option("--seed", o.seed, "RNG seed")->envname("KEYHOLE_EMI_SEED");
    cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
    if (with_output) {
        cmd->add_option("--out", o.out, "output file (default stdout)");
        cmd->add_option("--format", o.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    }
}

Constellation load_mod(const CommonOpts &o) {
    bool rescaled = false;
    Constellation c = constellation_from_spec(o.mod, &rescaled);
    if (rescaled)
        std::cerr << "warning: constellation '" << o.mod
                  << "' rescaled to unit average power\n";
    return c;
}

void emit_curve(const EmiCurve &curve, const CommonOpts &o, const std::string &cmdline) {
    if (o.format == "json")
        emit(curve_to_json(curve, cmdline, o.workers).dump(2) + "\n", o.out);
    else
        emit(curve_to_csv(curve, cmdline, o.workers), o.out);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"ergodic mutual information of keyhole MIMO channels with finite-alphabet "
                 "inputs"};
    app.require_subcommand(1);
    const std::string cmdline = join_args(argc, argv);

    // ---- sweep ----
    auto *sweep = app.add_subcommand("sweep", "EMI curve over an SNR grid");
    CommonOpts so;
    std::string sweep_mode = "sst-no-csit";
    std::string snr_spec = "-10:30:2";
    bool use_mc = false, gaussian = false;
    int quad_order = 200;
    std::int64_t realizations = 100000, noise_samples = 1000, dstar_budget = 20000;
    std::string precoder = "uniform";
    int streams = 2;
    sweep->add_option("--mode", sweep_mode, "sst-no-csit | sst-csit | mst")
        ->check(CLI::IsMember({"sst-no-csit", "sst-csit", "mst"}));
    sweep->add_option("--snr", snr_spec, "SNR grid lo:hi:step in dB");
    sweep->add_flag("--mc", use_mc, "Monte Carlo instead of quadrature (SST modes)");
    sweep->add_flag("--gaussian", gaussian, "Gaussian-input Monte Carlo comparison curve");
    sweep->add_option("--V", quad_order, "Gauss-Laguerre order for the quadrature path");
    sweep->add_option("--realizations", realizations, "channel realizations (MC paths)");
    sweep->add_option("--noise-samples", noise_samples, "noise draws per realization (MST)");
    sweep->add_option("--precoder", precoder, "uniform | mrt | max-dmin (MST)")
        ->check(CLI::IsMember({"uniform", "mrt", "max-dmin"}));
    sweep->add_option("--streams", streams, "data streams N (MST)");
    sweep->add_option("--dstar-budget", dstar_budget, "search budget for max-dmin");
    add_common(sweep, so);

    // ---- asymptote ----
    auto *asym = app.add_subcommand("asymptote", "high-SNR EMI law: entropy, G_a, G_d");
    CommonOpts ao;
    std::string asym_mode = "sst-csit";
    asym->add_option("--mode", asym_mode, "sst-no-csit | sst-csit")
        ->check(CLI::IsMember({"sst-no-csit", "sst-csit"}));
    add_common(asym, ao);

    // ---- mst reports ----
    auto *mst = app.add_subcommand("mst", "multi-stream diversity / MMSE-bound reports");
    CommonOpts mo;
    std::string mst_report = "diversity";
    std::string mst_precoder = "max-dmin";
    std::string mst_snr = "4:19:3";
    int mst_streams = 2;
    std::int64_t mst_realizations = 4000, mst_noise = 1000, mst_draws = 20,
                 mst_samples = 10000;
    double window_width = 9.0, bounds_snr_db = 10.0;
    mst->add_option("--report", mst_report, "diversity | bounds")
        ->check(CLI::IsMember({"diversity", "bounds"}));
    mst->add_option("--precoder", mst_precoder, "uniform | mrt | max-dmin")
        ->check(CLI::IsMember({"uniform", "mrt", "max-dmin"}));
    mst->add_option("--snr", mst_snr, "SNR grid lo:hi:step in dB (diversity)");
    mst->add_option("--streams", mst_streams, "data streams N");
    mst->add_option("--realizations", mst_realizations, "channel realizations");
    mst->add_option("--noise-samples", mst_noise, "noise draws per realization");
    mst->add_option("--window", window_width, "fit window width in dB (diversity)");
    mst->add_option("--snr-point", bounds_snr_db, "SNR in dB (bounds)");
    mst->add_option("--draws", mst_draws, "random channel draws (bounds)");
    mst->add_option("--samples", mst_samples, "MC samples per draw (bounds)");
    add_common(mst, mo);

    // ---- precoder-search ----
    auto *search = app.add_subcommand("precoder-search", "off-line max-dmin direction search");
    CommonOpts po;
    int search_streams = 2;
    std::int64_t budget = 20000;
    search->add_option("--streams", search_streams, "data streams N (<= 4)");
    search->add_option("--budget", budget, "objective evaluations (>= 10^4)");
    add_common(search, po);

    // ---- validate ----
    auto *validate = app.add_subcommand("validate", "run the acceptance suite");
    std::string scale = "quick";
    std::uint64_t val_seed = 20240901;
    unsigned val_workers = 0;
    validate->add_option("--scale", scale, "quick | full")
        ->check(CLI::IsMember({"quick", "full"}));
    validate->add_option("--seed", val_seed, "RNG seed")->envname("KEYHOLE_EMI_SEED");
    validate->add_option("--workers", val_workers, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (sweep->parsed()) {
            const ChannelConfig cfg = make_config(so.nt, so.nr, so.mt, so.mr);
            const auto grid = parse_snr_spec(snr_spec);
            EmiCurve curve;
            if (sweep_mode == "mst") {
                if (gaussian)
                    throw std::invalid_argument("--gaussian is only available for SST modes");
                const Constellation c = load_mod(so);
                const ProductConstellation pc = product(c, streams);
                PrecoderScheme scheme = PrecoderScheme::uniform;
                if (precoder == "mrt") scheme = PrecoderScheme::mrt;
                if (precoder == "max-dmin") scheme = PrecoderScheme::max_dmin;
                curve = emi_mst(pc, cfg, scheme, grid, realizations, noise_samples, so.seed,
                                so.workers, dstar_budget);
            } else if (use_mc || gaussian) {
                SimulationPlan plan;
                if (!gaussian) plan.constellation = load_mod(so);
                plan.cfg = cfg;
                plan.snr_db = grid;
                plan.realizations = realizations;
                plan.seed = so.seed;
                plan.workers = so.workers;
                if (sweep_mode == "sst-no-csit")
                    plan.scheme = gaussian ? SstScheme::gaussian_sst_no_csit
                                           : SstScheme::sst_no_csit;
                else
                    plan.scheme = gaussian ? SstScheme::gaussian_sst_csit : SstScheme::sst_csit;
                curve = emi_sst_mc(plan);
            } else {
                const Constellation c = load_mod(so);
                curve = sweep_mode == "sst-no-csit"
                            ? emi_sst_no_csit(c, cfg, grid, quad_order, so.workers)
                            : emi_sst_csit(c, cfg, grid, quad_order, so.workers);
            }
            emit_curve(curve, so, cmdline);
        } else if (asym->parsed()) {
            const ChannelConfig cfg = make_config(ao.nt, ao.nr, ao.mt, ao.mr);
            const Constellation c = load_mod(ao);
            const AsymptoticCharacterization a = asym_mode == "sst-no-csit"
                                                     ? asymptotic_no_csit(c, cfg)
                                                     : asymptotic_csit(c, cfg);
            nlohmann::json j;
            j["entropy"] = a.entropy;
            j["G_a"] = a.array_gain;
            j["G_d"] = a.diversity_order;
            j["validity_note"] = a.validity_note;
            j["meta"] = {{"tool", kToolVersion}, {"command", cmdline}, {"mode", asym_mode}};
            emit(j.dump(2) + "\n", ao.out);
        } else if (mst->parsed()) {
            const ChannelConfig cfg = make_config(mo.nt, mo.nr, mo.mt, mo.mr);
            const Constellation c = load_mod(mo);
            const ProductConstellation pc = product(c, mst_streams);
            PrecoderScheme scheme = PrecoderScheme::max_dmin;
            if (mst_precoder == "uniform") scheme = PrecoderScheme::uniform;
            if (mst_precoder == "mrt") scheme = PrecoderScheme::mrt;
            nlohmann::json j;
            if (mst_report == "diversity") {
                const MstDiversityReport rep =
                    mst_diversity_report(pc, cfg, scheme, parse_snr_spec(mst_snr),
                                         mst_realizations, mst_noise, mo.seed, window_width,
                                         mo.workers);
                j["slope"] = rep.fit.slope;
                j["intercept"] = rep.fit.intercept;
                j["r_squared"] = rep.fit.r_squared;
                j["window_db"] = {rep.fit.lo_db, rep.fit.hi_db};
                j["curve"] = curve_to_json(rep.curve, cmdline, mo.workers);
            } else {
                nlohmann::json rows = nlohmann::json::array();
                const double snr = db_to_linear(bounds_snr_db);
                for (std::int64_t i = 0; i < mst_draws; ++i) {
                    const ChannelSample ch = sample_channel_at(cfg, mo.seed, i);
                    const Precoder p = scheme == PrecoderScheme::mrt
                                           ? mrt_precoder(ch)
                                           : (scheme == PrecoderScheme::max_dmin
                                                  ? max_dmin_precoder(ch, solve_d_star(pc, 20000,
                                                                                       mo.seed))
                                                  : uniform_precoder(cfg.n_t));
                    const auto [lo, hi] = mmse_bounds_mst(pc, ch, p, snr);
                    double se = 0.0;
                    const double mc = mmse_mst_mc(pc, ch, p, snr, mst_samples, mo.seed, i, &se);
                    rows.push_back({{"draw", i},
                                    {"lower", lo},
                                    {"upper", hi},
                                    {"mmse_mc", mc},
                                    {"stderr", se}});
                }
                j["snr_db"] = bounds_snr_db;
                j["rows"] = std::move(rows);
            }
            j["meta"] = {{"tool", kToolVersion}, {"command", cmdline}, {"seed", mo.seed}};
            emit(j.dump(2) + "\n", mo.out);
        } else if (search->parsed()) {
            const Constellation c = load_mod(po);
            const ProductConstellation pc = product(c, search_streams);
            const DStarSolution sol = solve_d_star(pc, budget, po.seed);
            nlohmann::json j;
            nlohmann::json vec = nlohmann::json::array();
            for (const auto &v : sol.vector) vec.push_back({v.real(), v.imag()});
            j["d_star"] = std::move(vec);
            j["achieved_min"] = sol.achieved_min;
            j["search_budget"] = sol.search_budget;
            j["meta"] = {{"tool", kToolVersion}, {"command", cmdline}, {"seed", po.seed}};
            emit(j.dump(2) + "\n", po.out);
        } else if (validate->parsed()) {
            AcceptanceOptions opt;
            opt.full = scale == "full";
            opt.seed = val_seed;
            opt.workers = val_workers;
            const auto results = run_acceptance(opt, std::cout);
            int failed = 0;
            for (const auto &r : results)
                if (!r.pass) ++failed;
            std::cout << (failed == 0 ? "all criteria passed"
                                      : std::to_string(failed) + " criteria FAILED")
                      << "\n";
            return failed == 0 ? 0 : 1;
        }
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error &e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
