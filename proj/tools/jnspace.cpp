#include <chrono>
#include <fstream>
#include <sstream>
#include <iostream>

#include <CLI11.hpp>

#include "jns/grid_io.hpp"
#include "jns/report.hpp"
#include "jns/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

void emit(const jns::Report& report, const std::string& out_path) {
    if (out_path.empty()) {
        report.write(std::cout);
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw jns::error("cannot open report path: " + out_path);
    report.write(os);
}

std::string cube_key(const jns::DyadicCube& cube, int n) {
    std::string s = std::to_string(cube.level);
    for (int i = 0; i < n; ++i) s += "," + std::to_string(cube.index[i]);
    return s;
}

int run(int argc, char** argv) {
    CLI::App app{"localized John-Nirenberg space calculator"};
    app.require_subcommand(1);

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a grid file");
    std::string gen_kind = "random", gen_out;
    int gen_n = 1, gen_m = 0, gen_depth = 4, gen_order = 2, gen_terms = 8;
    std::uint64_t gen_seed = 1;
    double gen_value = 1.0;
    std::int64_t gen_width = 1;
    bool gen_bin = false;
    gen->add_option("--kind", gen_kind,
                    "constant|spike|step|random|haar-sum|log-sample");
    gen->add_option("--n", gen_n, "dimension");
    gen->add_option("--m", gen_m, "base cube side exponent");
    gen->add_option("--depth", gen_depth, "grid depth K");
    gen->add_option("--order", gen_order, "moment table order written to the header");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--value", gen_value, "amplitude for constant/spike/step");
    gen->add_option("--width", gen_width, "spike width in cells");
    gen->add_option("--terms", gen_terms, "haar-sum term count");
    gen->add_option("--out", gen_out, "output path (stdout if omitted)");
    gen->add_flag("--bin", gen_bin, "binary payload");

    // ---- norm ---------------------------------------------------------
    auto* norm = app.add_subcommand("norm", "compute a norm of a grid file");
    std::string norm_in, norm_which = "jn", norm_out;
    double np = 2.0, nq = 1.0, nalpha = 0.0, nc0 = 1.0;
    int ns = 0;
    bool norm_shifted = false;
    norm->add_option("--in", norm_in, "input grid file")->required();
    norm->add_option("--which", norm_which, "jn|JN|campanato|lp|weak");
    norm->add_option("--p", np, "exponent p");
    norm->add_option("--q", nq, "exponent q");
    norm->add_option("--s", ns, "polynomial degree s");
    norm->add_option("--alpha", nalpha, "scaling index alpha");
    norm->add_option("--c0", nc0, "localization threshold c0");
    norm->add_flag("--shifted", norm_shifted, "also report the shifted-lattice ensemble value");
    norm->add_option("--out", norm_out, "report path (stdout if omitted)");

    // ---- decompose ----------------------------------------------------
    auto* dec = app.add_subcommand("decompose", "CZ or atomic decompositions");
    std::string dec_in, dec_mode = "cz", dec_out, dec_dump;
    double dec_ctilde = 0.0, dec_gamma = 0.0, dec_v = 2.0, dec_w = 4.0, dec_alpha = 0.0,
           dec_c0 = 1.0;
    int dec_s = 0;
    std::int64_t dec_tile = 0;
    bool dec_grids = false;
    dec->add_option("--in", dec_in, "input grid file")->required();
    dec->add_option("--mode", dec_mode, "cz|atomize|refine");
    dec->add_option("--s", dec_s, "polynomial degree s");
    dec->add_option("--ctilde", dec_ctilde, "CZ level ratio (default 2^{n+1})");
    dec->add_option("--gamma", dec_gamma, "CZ base threshold (default avg |f|)");
    dec->add_option("--v", dec_v, "atom exponent v");
    dec->add_option("--w", dec_w, "atom exponent w (inf accepted)");
    dec->add_option("--alpha", dec_alpha, "scaling index alpha");
    dec->add_option("--c0", dec_c0, "localization threshold c0");
    dec->add_option("--tile", dec_tile, "tile side in cells for atomize (default c0 scale)");
    dec->add_option("--dump-dir", dec_dump, "directory for dump files");
    dec->add_flag("--dump-grids", dec_grids, "also dump full piece grids");
    dec->add_option("--out", dec_out, "report path (stdout if omitted)");

    // ---- verify -------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string ver_suite = "oracle", ver_out;
    std::uint64_t ver_seed = 42;
    int ver_trials = 100;
    ver->add_option("--suite", ver_suite, "oracle|projections|cz|duality|limits|lebesgue");
    ver->add_option("--seed", ver_seed, "random seed");
    ver->add_option("--trials", ver_trials, "trial count");
    ver->add_option("--out", ver_out, "report path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }
    const auto t0 = Clock::now();

    if (gen->parsed()) {
        const jns::DomainSpec d(gen_n, gen_m, gen_depth);
        jns::GridFunction f = jns::generate(jns::gen_kind_from_string(gen_kind), d, gen_seed,
                                          gen_value, gen_width, gen_terms);
        f.prepare_moments(gen_order);
        if (gen_out.empty())
            jns::write_grid(f, std::cout, gen_bin);
        else
            jns::write_grid_file(f, gen_out, gen_bin);
        return 0;
    }

    if (norm->parsed()) {
        jns::GridFunction f = jns::read_grid_file(norm_in);
        const jns::DomainSpec& d = f.domain();
        if (f.moment_order() < ns) f.prepare_moments(ns);
        jns::Report report;
        report.set("command", std::string("norm"));
        report.set("which", norm_which);
        report.set("input", norm_in);
        report.set("p", np);
        report.set("q", nq);
        report.set("s", std::int64_t(ns));
        report.set("alpha", nalpha);
        report.set("c0", nc0);
        if (norm_which == "lp") {
            report.set("value", jns::lebesgue_norm(f, np));
        } else if (norm_which == "weak") {
            report.set("value", jns::weak_quasi_norm(f, jns::DyadicCube::root(), ns, np));
        } else {
            const jns::NormParams params =
                jns::NormParams::make(np, nq, ns, nalpha, nc0, jns::Variant::localized, d);
            report.set("c0_snapped", params.c0);
            if (norm_which == "campanato") {
                report.set("value", jns::campanato_norm_dyadic(f, params));
            } else if (norm_which == "jn" || norm_which == "JN") {
                const jns::NormResult result = norm_which == "jn" ? jns::jn_norm_dyadic(f, params)
                                                                 : jns::JN_norm_dyadic(f, params);
                report.set("value", result.value);
                report.add_packing("packing", result.packing, d.n);
                if (norm_shifted) report.set("shifted_value", jns::jn_norm_shifted(f, params));
            } else {
                throw jns::error("unknown norm kind: " + norm_which);
            }
        }
        report.set("meta.wall_ms",
                   double(std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0)
                              .count()) /
                       1000.0);
        emit(report, norm_out);
        return 0;
    }

    if (dec->parsed()) {
        jns::GridFunction f = jns::read_grid_file(dec_in);
        const jns::DomainSpec& d = f.domain();
        if (f.moment_order() < dec_s) f.prepare_moments(dec_s);
        jns::Report report;
        report.set("command", std::string("decompose"));
        report.set("mode", dec_mode);
        report.set("input", dec_in);
        const std::string dump_prefix = dec_dump.empty() ? std::string() : dec_dump + "/";

        if (dec_mode == "cz") {
            jns::CZConfig cfg;
            cfg.s = dec_s;
            cfg.Ctilde = dec_ctilde;
            cfg.gamma = dec_gamma;
            const jns::CZDecomposition cz = jns::cz_decompose(f, jns::DyadicCube::root(), cfg);
            report.set("Ctilde", cz.config.Ctilde);
            report.set("gamma", cz.config.gamma);
            report.set("C_s", cz.c_s);
            report.set("levels", std::int64_t(cz.levels.size()));
            report.set("pieces", std::int64_t(cz.piece_count()));
            const auto margins = cz.sup_bound_margins(d.n);
            for (std::size_t k = 0; k < margins.size(); ++k)
                report.set("sup_margin.level" + std::to_string(k), margins[k]);
            if (!dump_prefix.empty()) {
                std::ofstream os(dump_prefix + "cz_pieces.txt");
                if (!os) throw jns::error("cannot open dump file");
                int piece_id = 0;
                for (std::size_t k = 0; k < cz.levels.size(); ++k)
                    for (const jns::CZPiece& piece : cz.levels[k].pieces) {
                        os << "piece k=" << k << " level=" << piece.cube.level << " index=";
                        for (int i = 0; i < d.n; ++i)
                            os << (i ? "," : "") << piece.cube.index[i];
                        os << " sup=" << jns::Report::format_double(piece.sup_norm)
                           << " moment_residual="
                           << jns::Report::format_double(piece.max_moment_residual) << "\n";
                        if (dec_grids) {
                            std::vector<double> full(std::size_t(d.cell_count()), 0.0);
                            std::int64_t at = 0;
                            jns::for_each_cell(d, piece.cube, [&](std::int64_t cell) {
                                full[std::size_t(cell)] = piece.values[std::size_t(at++)];
                            });
                            jns::GridFunction pg(d, std::move(full));
                            jns::write_grid_file(pg, dump_prefix + "cz_piece_" +
                                                        std::to_string(piece_id) + ".grid");
                        }
                        ++piece_id;
                    }
                report.set("dump", dump_prefix + "cz_pieces.txt");
            }
        } else if (dec_mode == "atomize" || dec_mode == "refine") {
            const jns::AtomParams params = jns::AtomParams::make(dec_v, dec_w, dec_s, dec_alpha,
                                                               dec_c0, d);
            std::int64_t tile = dec_tile;
            if (tile == 0)
                tile = std::max<std::int64_t>(
                    1, std::int64_t(std::llround(params.c0 / d.cell_side())));
            jns::AtomicDecomposition atoms = jns::tile_decomposition(f, params, tile);
            report.set("tile_cells", tile);
            report.set("budget", jns::hk_upper_bound(atoms, params.v));
            std::string form = "tile";
            if (dec_mode == "refine") {
                const jns::RefineResult refined =
                    jns::refine_atoms(d, atoms.polymers.at(0), params,
                                     dec_ctilde > 0.0 ? dec_ctilde : std::ldexp(1.0, d.n + 1));
                atoms = refined.decomposition;
                report.set("passthrough", refined.passthrough);
                report.set("skipped_zero_atoms", std::int64_t(refined.skipped_zero_atoms));
                for (std::size_t k = 0; k < refined.level_budgets.size(); ++k)
                    report.set("budget.level" + std::to_string(k), refined.level_budgets[k]);
                report.set("budget_refined", jns::hk_upper_bound(atoms, params.v));
                form = "cz-piece";
            }
            report.set("polymers", std::int64_t(atoms.polymers.size()));
            if (!dump_prefix.empty()) {
                std::ofstream os(dump_prefix + "atoms.txt");
                if (!os) throw jns::error("cannot open dump file");
                int atom_id = 0;
                for (std::size_t i = 0; i < atoms.polymers.size(); ++i) {
                    const jns::Polymer& poly = atoms.polymers[i];
                    for (std::size_t j = 0; j < poly.atoms.size(); ++j) {
                        const jns::DyadicCube cube = poly.atoms[j].support.as_cube(d);
                        os << "atom polymer=" << i << " lambda="
                           << jns::Report::format_double(poly.lambdas[j])
                           << " level=" << cube.level << " index=";
                        for (int a = 0; a < d.n; ++a) os << (a ? "," : "") << cube.index[a];
                        os << " form="
                           << (dec_mode == "refine" && i == 0 ? "cz-root" : form);
                        if (dec_grids) {
                            std::vector<double> full(std::size_t(d.cell_count()), 0.0);
                            std::int64_t at = 0;
                            jns::for_each_cell(d, poly.atoms[j].support, [&](std::int64_t cell) {
                                full[std::size_t(cell)] =
                                    poly.atoms[j].values[std::size_t(at++)];
                            });
                            jns::GridFunction ag(d, std::move(full));
                            const std::string path =
                                dump_prefix + "atom_" + std::to_string(atom_id) + ".grid";
                            jns::write_grid_file(ag, path);
                            os << " grid=" << path;
                        }
                        os << "\n";
                        ++atom_id;
                    }
                }
                report.set("dump", dump_prefix + "atoms.txt");
            }
        } else {
            throw jns::error("unknown decompose mode: " + dec_mode);
        }
        report.set("meta.wall_ms",
                   double(std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0)
                              .count()) /
                       1000.0);
        emit(report, dec_out);
        return 0;
    }

    if (ver->parsed()) {
        const auto results = jns::verify::run_suite(ver_suite, ver_seed, ver_trials);
        jns::Report report;
        report.set("command", std::string("verify"));
        report.set("suite", ver_suite);
        report.set("seed", std::int64_t(ver_seed));
        report.set("trials", std::int64_t(ver_trials));
        bool all = true;
        for (const auto& result : results) {
            std::cout << (result.passed ? "[PASS] " : "[FAIL] ") << result.name << "\n";
            report.set("criterion." + result.name, result.passed);
            report.set("section", result.name);
            std::istringstream lines(result.details.to_string());
            std::string line;
            while (std::getline(lines, line)) {
                const auto eq = line.find(" = ");
                if (eq != std::string::npos)
                    report.set("  " + line.substr(0, eq), line.substr(eq + 3));
            }
            all = all && result.passed;
        }
        report.set("meta.wall_ms",
                   double(std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0)
                              .count()) /
                       1000.0);
        emit(report, ver_out);
        return all ? 0 : 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const jns::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
