// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pwa/io.hpp"

#include <fstream>
#include <sstream>

#include <unistd.h>

#include "pwa/errors.hpp"

namespace pwa::io {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) {
        throw ParseError(std::string("expected an object holding \"") + key + "\"");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    return *it;
}

std::size_t size_from_json(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw ParseError(std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& what) {
    if (!j.is_array() || j.size() != rows) {
        throw ParseError(what + " must have " + std::to_string(rows) + " rows");
    }
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw ParseError(what + " row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = scalar_from_json(j[r][c]);
        }
    }
    return m;
}

Json matrix_to_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out.push_back(vector_to_json(m.row(r)));
    }
    return out;
}

Json points_to_json(const std::vector<Vector>& pts) {
    Json out = Json::array();
    for (const auto& p : pts) {
        out.push_back(vector_to_json(p));
    }
    return out;
}

Json set_to_json(const PolytopeSet& s) {
    Json out = Json::array();
    for (const auto& p : s.parts()) {
        out.push_back(halfspaces_to_json(p.halfspaces()));
    }
    return out;
}

template <typename F>
auto wrap_json_errors(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
}

} // namespace

Scalar scalar_from_json(const Json& j) {
    if (j.is_string()) {
        return parse_scalar(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return parse_scalar(j.dump());
    }
    if (j.is_number_float()) {
        throw ParseError("binary floating point number " + j.dump() + "; write it as a string such as \"0.5\" or \"1/2\"");
    }
    throw ParseError("expected a number, got " + j.dump());
}

Json scalar_to_json(const Scalar& s) {
    return to_string(s);
}

Vector vector_from_json(const Json& j, std::size_t expected) {
    if (!j.is_array() || j.size() != expected) {
        throw ParseError("expected a vector of length " + std::to_string(expected) + ", got " + j.dump());
    }
    Vector v;
    for (const auto& e : j) {
        v.push_back(scalar_from_json(e));
    }
    return v;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& x : v) {
        out.push_back(scalar_to_json(x));
    }
    return out;
}

std::vector<Halfspace> halfspaces_from_json(const Json& j, std::size_t dim) {
    std::vector<Halfspace> hs;
    if (j.is_object()) {
        const Vector lo = vector_from_json(field(j, "lower"), dim);
        const Vector hi = vector_from_json(field(j, "upper"), dim);
        for (std::size_t k = 0; k < dim; ++k) {
            Vector e(dim);
            e[k] = 1;
            hs.push_back({e, hi[k]});
            e[k] = -1;
            hs.push_back({e, -lo[k]});
        }
        return hs;
    }
    if (!j.is_array()) {
        throw ParseError("expected a halfspace list or a box");
    }
    for (const auto& h : j) {
        hs.push_back({vector_from_json(field(h, "a"), dim), scalar_from_json(field(h, "b"))});
    }
    return hs;
}

Json halfspaces_to_json(const std::vector<Halfspace>& hs) {
    Json out = Json::array();
    for (const auto& h : hs) {
        out.push_back(Json{{"a", vector_to_json(h.normal)}, {"b", scalar_to_json(h.offset)}});
    }
    return out;
}

Polytope polytope_from_json(const Json& j, std::size_t dim) {
    try {
        return Polytope::from_halfspaces(dim, halfspaces_from_json(j, dim));
    } catch (const UnboundedRegion& e) {
        throw ModelError(e.what());
    }
}

PwaSystem system_from_json(const Json& j) {
    return wrap_json_errors([&] {
        const std::size_t n = size_from_json(field(j, "state_dim"), "state_dim");
        const std::size_t m = size_from_json(field(j, "input_dim"), "input_dim");
        if (n == 0 || m == 0) {
            throw ParseError("state_dim and input_dim must be positive");
        }
        const Json& jm = field(j, "modes");
        if (!jm.is_array()) {
            throw ParseError("modes must be a list");
        }
        std::vector<Mode> modes;
        for (std::size_t i = 0; i < jm.size(); ++i) {
            const std::string tag = "mode " + std::to_string(i) + " ";
            Mode md;
            md.a = matrix_from_json(field(jm[i], "A"), n, n, tag + "A");
            md.b = matrix_from_json(field(jm[i], "B"), n, m, tag + "B");
            md.f = vector_from_json(field(jm[i], "f"), n);
            md.guard = halfspaces_from_json(field(jm[i], "guard"), n);
            modes.push_back(std::move(md));
        }
        Polytope region = polytope_from_json(field(j, "region"), n);
        Polytope input = polytope_from_json(field(j, "input_set"), m);
        return PwaSystem::create(std::move(modes), std::move(input), std::move(region));
    });
}

Json system_to_json(const PwaSystem& sys) {
    Json modes = Json::array();
    for (const auto& md : sys.modes()) {
        modes.push_back(Json{{"A", matrix_to_json(md.a)},
                             {"B", matrix_to_json(md.b)},
                             {"f", vector_to_json(md.f)},
                             {"guard", halfspaces_to_json(md.guard)}});
    }
    return Json{{"state_dim", sys.state_dim()},
                {"input_dim", sys.input_dim()},
                {"region", halfspaces_to_json(sys.region().halfspaces())},
                {"input_set", halfspaces_to_json(sys.input_set().halfspaces())},
                {"modes", std::move(modes)}};
}

SpecAutomaton spec_from_json(const Json& j, std::size_t mode_count) {
    return wrap_json_errors([&] {
        const Json& js = field(j, "states");
        const Json& je = field(j, "edges");
        if (!js.is_array() || !je.is_array()) {
            throw ParseError("spec states and edges must be lists");
        }
        std::vector<std::size_t> states;
        for (const auto& s : js) {
            states.push_back(size_from_json(s, "spec state"));
        }
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& e : je) {
            if (!e.is_array() || e.size() != 2) {
                throw ParseError("spec edge must be a pair of spec state indices");
            }
            edges.emplace_back(size_from_json(e[0], "edge source"), size_from_json(e[1], "edge target"));
        }
        return SpecAutomaton::create(std::move(states), std::move(edges), mode_count);
    });
}

Json spec_to_json(const SpecAutomaton& spec) {
    Json edges = Json::array();
    for (const auto& [a, b] : spec.edges()) {
        edges.push_back(Json::array({a, b}));
    }
    return Json{{"states", spec.states()}, {"edges", std::move(edges)}};
}

Json level_to_json(const Level& level) {
    const MetricsReport& r = level.metrics;
    Json cells = Json::array();
    for (const auto& s : level.system.states()) {
        cells.push_back(Json{{"id", s.id},
                             {"mode", s.mode},
                             {"spurious", s.spurious},
                             {"vertices", points_to_json(s.cell.vertices())}});
    }
    return Json{{"M", r.level},
                {"state_count", r.state_count},
                {"transition_count", r.transition_count},
                {"spurious_count", r.spurious_state_count},
                {"gran", scalar_to_json(r.gran)},
                {"sim_bound", scalar_to_json(r.sim_bound)},
                {"non_spurious_volume", scalar_to_json(r.non_spurious_volume)},
                {"fixed_point", r.fixed_point},
                {"cells", std::move(cells)}};
}

Json report_to_json(const PwaSystem& sys, const RunSettings& settings, const std::vector<Level>& levels) {
    Json jl = Json::array();
    for (const auto& l : levels) {
        jl.push_back(level_to_json(l));
    }
    return Json{{"state_dim", sys.state_dim()},
                {"lambda", scalar_to_json(settings.lambda)},
                {"max_level", settings.max_level},
                {"epsilon", scalar_to_json(settings.epsilon)},
                {"embedding_gran", scalar_to_json(gran_of_embedding(sys))},
                {"levels", std::move(jl)}};
}

Json controller_to_json(const SpecAutomaton& spec, const SymbolicSystem& am, const ControlStrategy& k) {
    Json states = Json::array();
    for (const auto& s : am.states()) {
        states.push_back(Json{{"id", s.id},
                              {"mode", s.mode},
                              {"cell", halfspaces_to_json(s.cell.halfspaces())},
                              {"vertices", points_to_json(s.cell.vertices())},
                              {"assignment", set_to_json(k.assignments.at(s.id))}});
    }
    return Json{{"level", k.level},
                {"controller_bound", scalar_to_json(controller_bound(am))},
                {"controlled_state_count", k.controlled_count()},
                {"spec", spec_to_json(spec)},
                {"states", std::move(states)}};
}

Controller controller_from_json(const Json& j, const PwaSystem& sys) {
    return wrap_json_errors([&] {
        const std::size_t n = sys.state_dim();
        const std::size_t m = sys.input_dim();
        SpecAutomaton spec = spec_from_json(field(j, "spec"), sys.mode_count());
        const Json& js = field(j, "states");
        if (!js.is_array()) {
            throw ParseError("controller states must be a list");
        }
        const int level = static_cast<int>(size_from_json(field(j, "level"), "level"));
        std::vector<SymbolicState> states;
        ControlStrategy k;
        k.level = level;
        for (const auto& e : js) {
            SymbolicState s;
            s.id = states.size();
            s.mode = size_from_json(field(e, "mode"), "mode");
            if (s.mode >= sys.mode_count()) {
                throw SpecMisaligned("controller cell refers to mode " + std::to_string(s.mode));
            }
            s.cell = Polytope::from_halfspaces(n, halfspaces_from_json(field(e, "cell"), n));
            PolytopeSet assigned(m);
            for (const auto& part : field(e, "assignment")) {
                assigned.push_back(Polytope::from_halfspaces(m, halfspaces_from_json(part, m)));
            }
            k.assignments.push_back(std::move(assigned));
            states.push_back(std::move(s));
        }
        SymbolicSystem cells(level, std::move(states), {});
        return Controller{std::move(spec), std::move(cells), std::move(k),
                          scalar_from_json(field(j, "controller_bound"))};
    });
}

Json trace_to_json(const ClosedLoopRun& run) {
    Json witnesses = Json::array();
    for (const auto& w : run.witnesses) {
        witnesses.push_back(w);
    }
    return Json{{"states", points_to_json(run.trajectory.states)},
                {"inputs", points_to_json(run.trajectory.inputs)},
                {"cells", run.cells},
                {"witnesses", std::move(witnesses)},
                {"exited", run.trajectory.exited},
                {"truncated", run.truncated},
                {"violated", run.violated}};
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot read " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            throw Error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

} // namespace pwa::io
