// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pwa/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "pwa/errors.hpp"
#include "pwa/io.hpp"
#include "pwa/render.hpp"

namespace pwa::cli {

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const SpecMisaligned& e) {
        err << "specification error: " << e.what() << "\n";
        return kSpec;
    } catch (const ModelError& e) {
        err << "model error: " << e.what() << "\n";
        return kModel;
    } catch (const UnboundedRegion& e) {
        err << "model error: " << e.what() << "\n";
        return kModel;
    } catch (const DimensionMismatch& e) {
        err << "model error: " << e.what() << "\n";
        return kModel;
    } catch (const LambdaOutOfRange& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRuntime;
    }
}

Vector parse_point(const std::string& text, std::size_t dim) {
    Vector v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        v.push_back(parse_scalar(item));
    }
    if (v.size() != dim) {
        throw ParseError("point \"" + text + "\" must have " + std::to_string(dim) + " comma-separated entries");
    }
    return v;
}

std::vector<Vector> points_from_json(const io::Json& j, std::size_t dim) {
    std::vector<Vector> pts;
    for (const auto& p : j) {
        pts.push_back(io::vector_from_json(p, dim));
    }
    return pts;
}

std::string dump(const io::Json& j) {
    return j.dump(2) + "\n";
}

} // namespace

void configure_logging() {
    static bool done = false;
    if (!done) {
        spdlog::set_default_logger(spdlog::stderr_color_mt("pwa"));
        done = true;
    }
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("PWA_LOG")) {
        spdlog::set_level(spdlog::level::from_str(env));
    }
}

int cmd_abstract(const AbstractOptions& opt, std::ostream& err) {
    return guarded(err, [&] {
        const PwaSystem sys = io::system_from_json(io::read_json(opt.system));
        const auto levels = refinement_sequence(sys, opt.lambda, opt.max_level, opt.epsilon);
        const io::RunSettings settings{opt.lambda, opt.max_level, opt.epsilon};
        io::write_atomic(opt.out, dump(io::report_to_json(sys, settings, levels)));
        return static_cast<int>(kOk);
    });
}

int cmd_synthesize(const SynthesizeOptions& opt, std::ostream& err) {
    return guarded(err, [&] {
        const PwaSystem sys = io::system_from_json(io::read_json(opt.system));
        const SpecAutomaton spec = io::spec_from_json(io::read_json(opt.spec), sys.mode_count());
        const auto levels = refinement_sequence(sys, opt.lambda, opt.max_level, Scalar(0));
        const SymbolicSystem& am = levels.back().system;
        const ControlStrategy k = synthesize(sys, am, spec);
        io::write_atomic(opt.out, dump(io::controller_to_json(spec, am, k)));
        if (opt.report) {
            const io::RunSettings settings{opt.lambda, opt.max_level, Scalar(0)};
            io::Json rep = io::report_to_json(sys, settings, levels);
            io::Json syn{{"level", k.level},
                         {"controlled_state_count", k.controlled_count()},
                         {"controller_bound", io::scalar_to_json(controller_bound(am))}};
            if (k.controlled_count() == 0) {
                syn["warning"] = "no state admits an input that enforces the specification";
            }
            rep["synthesis"] = std::move(syn);
            const EnforcementVerdict v = check_enforcement(sys, am, k, spec, opt.trials, opt.horizon, opt.seed);
            io::Json enf{{"trials", v.trials},
                         {"horizon", opt.horizon},
                         {"seed", opt.seed},
                         {"violations", v.violations},
                         {"truncated", v.truncated},
                         {"passed", v.passed}};
            if (!v.warning.empty()) {
                enf["warning"] = v.warning;
            }
            rep["enforcement"] = std::move(enf);
            io::write_atomic(*opt.report, dump(rep));
        }
        if (k.controlled_count() == 0) {
            err << "warning: no state admits an input that enforces the specification\n";
        }
        return static_cast<int>(kOk);
    });
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& err) {
    return guarded(err, [&] {
        const PwaSystem sys = io::system_from_json(io::read_json(opt.system));
        const io::Controller c = io::controller_from_json(io::read_json(opt.controller), sys);
        const Vector x0 = parse_point(opt.x0, sys.state_dim());
        const ClosedLoopRun run = simulate_closed_loop(sys, c.cells, c.strategy, c.spec, x0, opt.horizon, opt.seed);
        io::write_atomic(opt.out, dump(io::trace_to_json(run)));
        if (run.violated) {
            err << "warning: the run left the specification\n";
        }
        return static_cast<int>(kOk);
    });
}

int cmd_render(const RenderOptions& opt, std::ostream& err) {
    return guarded(err, [&] {
        const PwaSystem sys = io::system_from_json(io::read_json(opt.system));
        if (sys.state_dim() != 2) {
            throw DimensionUnsupported("rendering needs a planar state space, got dimension " +
                                       std::to_string(sys.state_dim()));
        }
        const io::Json doc = io::read_json(opt.input);
        std::vector<RenderCell> cells;
        std::string title;
        try {
            if (doc.contains("levels")) {
                const io::Json& levels = doc.at("levels");
                if (levels.empty()) {
                    throw ParseError("report has no levels");
                }
                const io::Json* chosen = &levels.back();
                if (opt.level > 0) {
                    chosen = nullptr;
                    for (const auto& l : levels) {
                        if (l.at("M").get<int>() == opt.level) {
                            chosen = &l;
                        }
                    }
                    if (!chosen) {
                        throw ParseError("report has no level " + std::to_string(opt.level));
                    }
                }
                title = "level " + std::to_string(chosen->at("M").get<int>());
                for (const auto& c : chosen->at("cells")) {
                    const bool spurious = c.at("spurious").get<bool>();
                    cells.push_back({points_from_json(c.at("vertices"), 2), spurious ? kColorSpurious : kColorExact,
                                     "cell " + std::to_string(c.at("id").get<std::size_t>()) +
                                         (spurious ? " spurious" : "")});
                }
            } else if (doc.contains("states")) {
                title = "controller level " + std::to_string(doc.at("level").get<int>());
                for (const auto& c : doc.at("states")) {
                    const bool controlled = !c.at("assignment").empty();
                    cells.push_back({points_from_json(c.at("vertices"), 2),
                                     controlled ? kColorControlled : kColorUncontrolled,
                                     "cell " + std::to_string(c.at("id").get<std::size_t>()) +
                                         (controlled ? " controlled" : "")});
                }
            } else {
                throw ParseError("expected a report or a controller file");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what());
        }
        io::write_atomic(opt.out, render_svg(sys, cells, title));
        return static_cast<int>(kOk);
    });
}

int cmd_report(const std::filesystem::path& report, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const io::Json doc = io::read_json(report);
        try {
            out << std::left << std::setw(4) << "M" << std::setw(8) << "states" << std::setw(13) << "transitions"
                << std::setw(10) << "spurious" << std::setw(12) << "gran" << std::setw(12) << "sim_bound"
                << std::setw(8) << "fixed" << "exact_volume\n";
            for (const auto& l : doc.at("levels")) {
                out << std::setw(4) << l.at("M").get<int>() << std::setw(8) << l.at("state_count").get<std::size_t>()
                    << std::setw(13) << l.at("transition_count").get<std::size_t>() << std::setw(10)
                    << l.at("spurious_count").get<std::size_t>() << std::setw(12) << l.at("gran").get<std::string>()
                    << std::setw(12) << l.at("sim_bound").get<std::string>() << std::setw(8)
                    << (l.at("fixed_point").get<bool>() ? "yes" : "no")
                    << l.at("non_spurious_volume").get<std::string>() << "\n";
            }
            if (doc.contains("synthesis")) {
                const auto& s = doc.at("synthesis");
                out << "controller: level " << s.at("level").get<int>() << ", "
                    << s.at("controlled_state_count").get<std::size_t>() << " controlled states, bound "
                    << s.at("controller_bound").get<std::string>() << "\n";
                if (s.contains("warning")) {
                    out << "warning: " << s.at("warning").get<std::string>() << "\n";
                }
            }
            if (doc.contains("enforcement")) {
                const auto& e = doc.at("enforcement");
                out << "enforcement: " << e.at("trials").get<std::size_t>() << " runs, "
                    << e.at("violations").get<std::size_t>() << " violations, " << e.at("truncated").get<std::size_t>()
                    << " truncated, " << (e.at("passed").get<bool>() ? "passed" : "FAILED") << "\n";
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(report.string() + ": " + e.what());
        }
        return static_cast<int>(kOk);
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    configure_logging();
    CLI::App app{"Symbolic abstraction and controller synthesis for piecewise affine systems"};
    app.require_subcommand(1);

    std::string lambda = "1/2";
    std::string epsilon = "0";

    AbstractOptions ab;
    auto* abstract = app.add_subcommand("abstract", "Build the refinement sequence and write a report");
    abstract->add_option("system", ab.system, "System file")->required();
    abstract->add_option("--lambda", lambda, "Contraction rate in (0,1)");
    abstract->add_option("--max-level", ab.max_level, "Largest refinement level");
    abstract->add_option("--epsilon", epsilon, "Stop once gran is at most this");
    abstract->add_option("--out", ab.out, "Report file")->required();

    SynthesizeOptions sy;
    std::string report_path;
    auto* synth = app.add_subcommand("synthesize", "Synthesize a controller for a specification");
    synth->add_option("system", sy.system, "System file")->required();
    synth->add_option("spec", sy.spec, "Specification file")->required();
    synth->add_option("--lambda", lambda, "Contraction rate in (0,1)");
    synth->add_option("--max-level", sy.max_level, "Largest refinement level");
    synth->add_option("--out", sy.out, "Controller file")->required();
    synth->add_option("--report", report_path, "Report file");
    synth->add_option("--trials", sy.trials, "Closed-loop enforcement runs recorded in the report");
    synth->add_option("--horizon", sy.horizon, "Steps per enforcement run");
    synth->add_option("--seed", sy.seed, "Random seed");

    SimulateOptions si;
    auto* sim = app.add_subcommand("simulate", "Run the closed loop and write a trace");
    sim->add_option("system", si.system, "System file")->required();
    sim->add_option("controller", si.controller, "Controller file")->required();
    sim->add_option("--x0", si.x0, "Initial state, comma separated")->required();
    sim->add_option("--horizon", si.horizon, "Number of steps");
    sim->add_option("--seed", si.seed, "Random seed");
    sim->add_option("--out", si.out, "Trace file")->required();

    RenderOptions re;
    auto* render = app.add_subcommand("render", "Draw the cells of a planar system as SVG");
    render->add_option("system", re.system, "System file")->required();
    render->add_option("input", re.input, "Report or controller file")->required();
    render->add_option("--level", re.level, "Report level, last by default");
    render->add_option("--out", re.out, "SVG file")->required();

    std::filesystem::path report_in;
    auto* report = app.add_subcommand("report", "Print a report as a table");
    report->add_option("report", report_in, "Report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? static_cast<int>(kOk) : static_cast<int>(kUsage);
    }

    Scalar lam;
    Scalar eps;
    try {
        lam = parse_scalar(lambda);
        eps = parse_scalar(epsilon);
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    if (*abstract) {
        ab.lambda = lam;
        ab.epsilon = eps;
        return cmd_abstract(ab, err);
    }
    if (*synth) {
        sy.lambda = lam;
        if (!report_path.empty()) {
            sy.report = report_path;
        }
        return cmd_synthesize(sy, err);
    }
    if (*sim) {
        return cmd_simulate(si, err);
    }
    if (*render) {
        return cmd_render(re, err);
    }
    return cmd_report(report_in, out, err);
}

} // namespace pwa::cli
