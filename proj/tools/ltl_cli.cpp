/*
Copyright 2026 The LTL Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#include "ltl/ltl.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace
{

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    std::string kind{"three"};
    int n{4};
    std::uint64_t seed{1};
    std::string surface;
    std::string mesh_path;
    std::string op{"ltl"};
    std::string ops;
    std::string field{"quadratic"};
    std::string domain{"c"};
    int levels{4};
    int base_n{0};
    int neighbor_count{5};
    std::string mode{"coordinate"};
    std::string sites{"all"};
    std::string out;
    bool timing{false};
};

ltl::OperatorKind operator_flag(const std::string& s)
{
    if (auto k = ltl::parse_operator_kind(s)) {
        return *k;
    }
    throw UsageError("unknown operator '" + s + "' (ltl, uniform, fujiwara, cotangent, mayer, desbrun, xu)");
}

ltl::DomainKind domain_flag(const std::string& s)
{
    if (auto k = ltl::parse_domain_kind(s)) {
        return *k;
    }
    throw UsageError("unknown domain '" + s + "' (a|three, b|four, c|unstructured)");
}

ltl::AnalyticSurface surface_flag(const std::string& s)
{
    if (auto f = ltl::surfaces::by_id(s)) {
        return *f;
    }
    throw UsageError("unknown surface '" + s + "' (F1, F2, F3, F4, flat)");
}

ltl::TestFunction test_function(const CliConfig& cfg)
{
    if (cfg.mode == "coordinate") {
        return ltl::fields::coordinates();
    }
    if (cfg.mode != "scalar") {
        throw UsageError("unknown mode '" + cfg.mode + "' (coordinate, scalar)");
    }
    if (cfg.field == "quadratic") {
        return ltl::fields::quadratic();
    }
    if (cfg.field == "sincos") {
        return ltl::fields::sin_cos();
    }
    throw UsageError("scalar mode needs --field quadratic or sincos");
}

ltl::LtlOptions ltl_options(const CliConfig& cfg)
{
    ltl::LtlOptions opts;
    opts.neighbor_count = cfg.neighbor_count;
    try {
        opts.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return opts;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

int cmd_gen_mesh(const CliConfig& cfg)
{
    ltl::Mesh mesh;
    if (cfg.kind == "icosphere") {
        if (cfg.n < 0) {
            throw UsageError("--n must be >= 0 for an icosphere");
        }
        mesh = ltl::make_icosphere(cfg.n);
    } else {
        const auto kind = ltl::parse_domain_kind(cfg.kind);
        if (!kind) {
            throw UsageError("unknown kind '" + cfg.kind + "' (three, four, unstructured, icosphere)");
        }
        if (cfg.n < 1) {
            throw UsageError("--n must be >= 1");
        }
        mesh = ltl::generate_planar(*kind, cfg.n, cfg.seed);
        if (!cfg.surface.empty()) {
            mesh = ltl::lift_to_surface(mesh, surface_flag(cfg.surface));
        }
    }
    if (!cfg.out.empty()) {
        ltl::save_mesh_file(mesh, cfg.out);
    }
    const auto stats = ltl::mesh_stats(mesh);
    std::printf("vertices=%lld faces=%lld r=%.17g\n", static_cast<long long>(stats.n_vertices),
                static_cast<long long>(stats.n_faces), stats.mesh_size_r);
    return 0;
}

/** Per-vertex field from a builtin name or a CSV whose last column holds the values */
std::vector<double> load_field(const ltl::Mesh& mesh, const std::string& source)
{
    const auto nv = static_cast<std::size_t>(mesh.num_vertices());
    std::vector<double> h(nv);
    auto fill = [&](auto&& fn) {
        for (std::size_t i = 0; i < nv; ++i) {
            h[i] = fn(mesh.vertices()[i]);
        }
    };
    if (source == "constant") {
        fill([](const ltl::Vec3&) { return 1.0; });
    } else if (source == "coord-x") {
        fill([](const ltl::Vec3& p) { return p.x(); });
    } else if (source == "coord-y") {
        fill([](const ltl::Vec3& p) { return p.y(); });
    } else if (source == "coord-z") {
        fill([](const ltl::Vec3& p) { return p.z(); });
    } else if (source == "quadratic") {
        fill([](const ltl::Vec3& p) { return p.x() * p.x() + p.y() * p.y(); });
    } else if (source == "sincos") {
        fill([](const ltl::Vec3& p) { return std::sin(p.x()) * std::cos(p.y()); });
    } else {
        std::ifstream in(source);
        if (!in) {
            throw UsageError("--field is neither a builtin field nor a readable CSV: " + source);
        }
        std::vector<double> values;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty()) {
                continue;
            }
            const auto cell = line.substr(line.find_last_of(',') == std::string::npos ? 0 : line.find_last_of(',') + 1);
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                if (used != cell.size()) {
                    throw std::invalid_argument(cell);
                }
                values.push_back(v);
            } catch (const std::exception&) {
                if (lineno == 1) {
                    continue;  // header row
                }
                throw std::runtime_error(source + ":" + std::to_string(lineno) + ": not a number: " + cell);
            }
        }
        if (values.size() != nv) {
            throw std::runtime_error("field has " + std::to_string(values.size()) + " values, mesh has " +
                                     std::to_string(nv) + " vertices");
        }
        h = std::move(values);
    }
    return h;
}

int cmd_apply(const CliConfig& cfg)
{
    const auto op = operator_flag(cfg.op);
    const auto opts = ltl_options(cfg);
    const auto mesh = ltl::load_mesh_file(cfg.mesh_path);
    const auto h = load_field(mesh, cfg.field);
    const auto field = ltl::evaluate_operator(op, mesh, h, opts);

    std::vector<std::string> status(static_cast<std::size_t>(mesh.num_vertices()), "boundary");
    for (std::size_t v = 0; v < status.size(); ++v) {
        if (field.values[v]) {
            status[v] = "ok";
        }
    }
    for (const auto& [v, kind] : field.failures) {
        status[static_cast<std::size_t>(v)] = std::string(ltl::to_string(kind));
    }
    std::ostringstream csv;
    csv << "vertex,value,status\r\n";
    for (std::size_t v = 0; v < status.size(); ++v) {
        csv << v << ',' << (field.values[v] ? ltl::detail::format_double(*field.values[v]) : "") << ',' << status[v]
            << "\r\n";
    }
    if (cfg.out.empty()) {
        std::cout << csv.str();
    } else {
        write_file(cfg.out, csv.str());
    }
    std::fprintf(stderr, "evaluated=%zu failed=%zu\n",
                 static_cast<std::size_t>(std::count(status.begin(), status.end(), "ok")), field.failures.size());
    return 0;
}

ltl::ConvergenceOptions convergence_options(const CliConfig& cfg, bool timing)
{
    if (cfg.levels < 2) {
        throw UsageError("--levels must be >= 2");
    }
    ltl::ConvergenceOptions o;
    o.levels = cfg.levels;
    o.seed = cfg.seed;
    o.base_n = cfg.base_n;
    o.ltl = ltl_options(cfg);
    o.timing = timing;
    if (cfg.sites == "base") {
        o.sites = ltl::ErrorSites::BaseVertices;
    } else if (cfg.sites != "all") {
        throw UsageError("unknown sites '" + cfg.sites + "' (all, base)");
    }
    return o;
}

int cmd_convergence(const CliConfig& cfg)
{
    const auto op = operator_flag(cfg.op);
    const auto s = surface_flag(cfg.surface);
    const auto kind = domain_flag(cfg.domain);
    const auto tf = test_function(cfg);
    const auto opts = convergence_options(cfg, cfg.timing);

    const std::vector<ltl::ConvergenceReport> reports{ltl::run_convergence(op, s, kind, tf, opts)};
    const auto& rep = reports.front();
    const std::string prefix = cfg.out.empty() ? "convergence" : cfg.out;
    write_file(prefix + ".csv", ltl::convergence_csv(reports));
    write_file(prefix + ".svg", ltl::convergence_svg(reports));

    for (const auto& l : rep.levels) {
        std::printf("level=%d r=%.6g error=%.6g nv=%lld failed=%lld\n", l.level, l.r, l.max_error,
                    static_cast<long long>(l.n_vertices), static_cast<long long>(l.n_failed));
    }
    if (rep.at_noise_floor) {
        std::printf("order=%.6f (errors at noise floor)\n", rep.fitted_order);
        return 0;
    }
    std::printf("order=%.6f\n", rep.fitted_order);
    if (rep.fitted_order < 0.2) {
        std::printf("warning: no convergence detected\n");
    }
    return 0;
}

int cmd_compare(const CliConfig& cfg)
{
    const auto names = split_list(cfg.ops);
    if (names.empty()) {
        throw UsageError("--ops needs at least one operator");
    }
    std::vector<ltl::OperatorKind> ops;
    for (const auto& n : names) {
        ops.push_back(operator_flag(n));
    }
    const auto s = surface_flag(cfg.surface);
    const auto kind = domain_flag(cfg.domain);
    const auto tf = test_function(cfg);
    const auto opts = convergence_options(cfg, true);

    std::vector<ltl::ConvergenceReport> reports;
    for (auto op : ops) {
        reports.push_back(ltl::run_convergence(op, s, kind, tf, opts));
    }
    const std::string prefix = cfg.out.empty() ? "compare" : cfg.out;
    write_file(prefix + ".csv", ltl::comparison_csv(reports));
    write_file(prefix + ".svg", ltl::convergence_svg(reports));
    for (const auto& rep : reports) {
        double seconds = 0.0;
        for (const auto& l : rep.levels) {
            seconds += l.seconds;
        }
        std::printf("%s order=%.6f finest_error=%.6g seconds=%.3f\n", std::string(ltl::to_string(rep.op)).c_str(),
                    rep.fitted_order, rep.levels.back().max_error, seconds);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete Laplace-Beltrami operators by local tangential lifting"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto* gen = app.add_subcommand("gen-mesh", "Generate a planar, graph-surface or icosphere mesh");
    gen->add_option("--kind", cfg.kind, "three | four | unstructured | icosphere")->required();
    gen->add_option("--n", cfg.n, "cells per side, or subdivision levels for an icosphere")->required();
    gen->add_option("--seed", cfg.seed, "seed for the unstructured generator");
    gen->add_option("--surface", cfg.surface, "lift onto z = F(x, y): F1 | F2 | F3 | F4");
    gen->add_option("--out", cfg.out, "output mesh (.off or .obj)");

    auto* apply = app.add_subcommand("apply", "Apply an operator to a per-vertex field");
    apply->add_option("--mesh", cfg.mesh_path, "input mesh (.off or .obj)")->required();
    apply->add_option("--op", cfg.op, "ltl | uniform | fujiwara | cotangent | mayer | desbrun | xu");
    apply->add_option("--field", cfg.field, "constant | coord-x | coord-y | coord-z | quadratic | sincos | CSV path");
    apply->add_option("--neighbor-count", cfg.neighbor_count, "LTL configuration size");
    apply->add_option("--out", cfg.out, "output CSV (stdout when omitted)");

    auto* conv = app.add_subcommand("convergence", "Max interior error over a refinement ladder");
    conv->add_option("--surface", cfg.surface, "F1 | F2 | F3 | F4 | flat")->required();
    conv->add_option("--domain", cfg.domain, "a | b | c");
    conv->add_option("--op", cfg.op, "operator");
    conv->add_option("--levels", cfg.levels, "ladder levels");
    conv->add_option("--seed", cfg.seed, "seed for domain c");
    conv->add_option("--base-n", cfg.base_n, "base resolution (0 = default per domain)");
    conv->add_option("--mode", cfg.mode, "coordinate | scalar");
    conv->add_option("--sites", cfg.sites, "error sites: all interior vertices, or base-level vertices only");
    conv->add_option("--field", cfg.field, "scalar-mode field: quadratic | sincos");
    conv->add_option("--neighbor-count", cfg.neighbor_count, "LTL configuration size");
    conv->add_option("--out", cfg.out, "output prefix for .csv and .svg");
    conv->add_flag("--timing", cfg.timing, "record wall time per level");

    auto* cmp = app.add_subcommand("compare", "Side-by-side error matrix of several operators");
    cmp->add_option("--ops", cfg.ops, "comma-separated operators")->required();
    cmp->add_option("--surface", cfg.surface, "F1 | F2 | F3 | F4 | flat")->required();
    cmp->add_option("--domain", cfg.domain, "a | b | c");
    cmp->add_option("--levels", cfg.levels, "ladder levels");
    cmp->add_option("--seed", cfg.seed, "seed for domain c");
    cmp->add_option("--base-n", cfg.base_n, "base resolution (0 = default per domain)");
    cmp->add_option("--mode", cfg.mode, "coordinate | scalar");
    cmp->add_option("--sites", cfg.sites, "error sites: all interior vertices, or base-level vertices only");
    cmp->add_option("--field", cfg.field, "scalar-mode field: quadratic | sincos");
    cmp->add_option("--neighbor-count", cfg.neighbor_count, "LTL configuration size");
    cmp->add_option("--out", cfg.out, "output prefix for .csv and .svg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen_mesh(cfg);
        }
        if (apply->parsed()) {
            return cmd_apply(cfg);
        }
        if (conv->parsed()) {
            return cmd_convergence(cfg);
        }
        return cmd_compare(cfg);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}
