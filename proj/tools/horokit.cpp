// horokit command-line tool: gen | verify | density | export | info.

#include "horokit/horokit.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace horokit;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;
constexpr int kCrownCap = 8;

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class HardFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string tiling = "336";
    std::string packing_case;
    int crowns = 2;
    double tol = 1e-9;
    std::string method = "exact";
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "scene";
    int resolution = 16;
    std::string in;
    std::vector<double> s_values;
    bool wireframe = false;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad())
        throw IoError("error reading '" + path + "'");
    return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open '" + path + "' for writing");
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    f.close();
    if (!f)
        throw IoError("error writing '" + path + "'");
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

PackingCase resolve_case(const Options& o) {
    const DomainKind kind = parse_tiling(o.tiling);
    std::string name = o.packing_case;
    if (name.empty())
        name = kind == DomainKind::Tetra336 ? "bf" : "balanced";
    return parse_case(kind, name);
}

PackingConfig resolve_config(const Options& o) {
    const PackingCase pc = resolve_case(o);
    if (o.s_values.empty())
        return fundamental_configuration(pc);
    PackingConfig c = configuration_from_s(pc, o.s_values);
    std::string s = "s overridden on the command line:";
    for (double x : o.s_values) {
        char buf[40];
        std::snprintf(buf, sizeof buf, " %.17g", x);
        s += buf;
    }
    c.derivation_log.push_back(s);
    return c;
}

void check_crowns(const Options& o) {
    if (o.crowns < 0 || o.crowns > kCrownCap)
        throw ParameterError("--crowns must lie in [0, " + std::to_string(kCrownCap) + "]");
}

SceneDocument make_scene(const Options& o) {
    check_crowns(o);
    const PackingConfig c = resolve_config(o);
    const GeneratorSet g = generator_set(c.domain);
    const Orbit orbit = expand_orbit(c, o.crowns, g, o.tol);
    return build_scene(c, orbit, g, o.crowns, o.tol, o.seed);
}

int cmd_gen(const Options& o) {
    if (o.format != "scene")
        parse_mesh_format(o.format);
    const SceneDocument scene = make_scene(o);
    if (o.format == "scene")
        write_output(o.out, write_scene(scene));
    else
        write_output(o.out, export_mesh(scene, {o.resolution, o.wireframe}, parse_mesh_format(o.format)));
    return kExitOk;
}

int cmd_export(const Options& o) {
    if (o.in.empty())
        throw ParameterError("export needs --in SCENE");
    const MeshFormat f = parse_mesh_format(o.format == "scene" ? "obj" : o.format);
    const SceneDocument scene = parse_scene(read_file(o.in));
    write_output(o.out, export_mesh(scene, {o.resolution, o.wireframe}, f));
    return kExitOk;
}

json tangency_json(const std::vector<TangencyEdge>& edges, std::size_t limit) {
    json arr = json::array();
    for (const auto& e : edges) {
        if (e.a >= limit || e.b >= limit)
            continue;
        const Vec3 p = e.point.klein();
        arr.push_back({{"a", e.a}, {"b", e.b}, {"point", {p[0], p[1], p[2]}}});
    }
    return arr;
}

int cmd_verify(const Options& o) {
    check_crowns(o);
    const PackingConfig c = resolve_config(o);
    const GeneratorSet g = generator_set(c.domain);
    json report;
    report["schema"] = "report-v1";
    report["tool_version"] = kToolVersion;
    report["tiling"] = to_string(c.domain.kind);
    report["case"] = to_string(c.packing_case);
    report["crowns"] = o.crowns;
    report["tolerance"] = o.tol;
    report["derived_constants"] = c.derivation_log;

    const RelationReport rel = verify_relations(g, scheme_from_domain(c.domain), o.tol);
    json pairs = json::array();
    for (const auto& r : rel.relations)
        pairs.push_back({{"i", r.i},
                         {"j", r.j},
                         {"kind", r.kind == EdgeKind::Intersecting ? "intersecting"
                                  : r.kind == EdgeKind::Parallel   ? "parallel"
                                                                   : "diverging"},
                         {"order", r.order},
                         {"residual", r.residual},
                         {"translation_length", r.translation_length},
                         {"ok", r.ok}});
    report["relations"] = {{"involution_residuals", rel.involution_residuals},
                           {"pairs", pairs},
                           {"max_residual", rel.max_residual},
                           {"ok", rel.ok}};

    json tables = json::array(), warnings = json::array();
    bool tables_ok = true;
    for (const auto& e : cross_check_tables(c.domain, g, o.tol)) {
        tables.push_back({{"label", e.label},
                          {"status", to_string(e.status)},
                          {"deviation", number_or_null(e.deviation)},
                          {"note", e.note}});
        if (e.status == CheckStatus::KnownErratum)
            warnings.push_back("tabulated erratum: " + e.label + ": " + e.note);
        if (e.status == CheckStatus::Mismatch) {
            warnings.push_back("tabulated mismatch: " + e.label);
            tables_ok = false;
        }
    }
    report["tables"] = tables;

    const Orbit orbit = expand_orbit(c, o.crowns, g, o.tol);
    const PackingReport pr = verify_packing(orbit, o.tol);
    const TangencyGraph tg = tangency_graph(orbit.horoballs.size(), pr.edges);
    json hist = json::object();
    for (const auto& [deg, count] : tg.degree_histogram)
        hist[std::to_string(deg)] = count;
    std::vector<int> types;
    for (const auto& h : orbit.horoballs)
        types.push_back(h.type_id);
    report["packing"] = {{"isometries", orbit.records.size()},
                         {"horoballs", orbit.horoballs.size()},
                         {"disjoint", pr.disjoint},
                         {"tangent", pr.tangent},
                         {"overlapping", pr.overlapping},
                         {"worst_overlap", pr.worst_overlap},
                         {"valid", pr.valid()}};
    report["tangency"] = {{"edges", pr.edges.size()},
                          {"degree_histogram", hist},
                          {"fundamental_contacts", tangency_json(pr.edges, c.domain.vertex_count())}};
    report["types"] = {{"per_vertex", horoball_types(c)}, {"piece_volumes", piece_volumes(c)}};

    try {
        const DensityEstimate d = density_exact(c);
        report["density"] = {{"value", d.value}, {"method", to_string(d.method)}};
    } catch (const DomainError& e) {
        report["density"] = {{"value", nullptr}, {"method", "exact"}, {"error", e.what()}};
        warnings.push_back(std::string("density: ") + e.what());
    }
    report["warnings"] = warnings;
    const bool ok = rel.ok && pr.valid();
    report["ok"] = ok;
    report["tables_ok"] = tables_ok;

    write_output(o.out, report.dump(2) + "\n");
    for (const auto& w : warnings)
        std::cerr << "warning: " << w.get<std::string>() << "\n";
    if (!ok)
        throw HardFailure(!pr.valid() ? "packing has overlapping horoballs" : "group relation residual exceeds tolerance");
    return kExitOk;
}

int cmd_density(const Options& o) {
    const PackingConfig c = resolve_config(o);
    const DensityEstimate d = density(c, parse_method(o.method), {o.samples, o.seed});
    char buf[200];
    std::snprintf(buf, sizeof buf, "value=%.10f method=%s stderr=%.3e samples=%llu\n", d.value, to_string(d.method),
                  d.standard_error, static_cast<unsigned long long>(d.samples));
    write_output(o.out, buf);
    return kExitOk;
}

int cmd_info(const Options& o) {
    const PackingConfig c = resolve_config(o);
    const GeneratorSet g = generator_set(c.domain);
    const HoneycombSymbol sym = honeycomb_symbol(c.domain.kind);
    json info;
    info["tool_version"] = kToolVersion;
    info["tiling"] = to_string(c.domain.kind);
    info["schlafli"] = {sym.p, sym.q, sym.r};
    info["case"] = to_string(c.packing_case);
    json verts = json::array(), forms = json::array(), gens = json::array(), balls = json::array();
    for (const auto& v : c.domain.vertices)
        verts.push_back(to_array(v.canonical().coords()));
    for (const auto& f : c.domain.facet_forms)
        forms.push_back(to_array(Vec4(f.coeffs())));
    for (const auto& m : g.generators) {
        const Mat4 n = m.normalized().matrix;
        json rows = json::array();
        for (int i = 0; i < 4; ++i)
            rows.push_back({n(i, 0), n(i, 1), n(i, 2), n(i, 3)});
        gens.push_back(rows);
    }
    for (const auto& h : c.assignments)
        balls.push_back({{"s", h.s()}, {"depth", h.depth()}});
    info["vertices"] = verts;
    info["facet_forms"] = forms;
    info["facets"] = c.domain.facets;
    info["generators"] = gens;
    json edges = json::array();
    for (const auto& e : scheme_from_domain(c.domain).edges)
        edges.push_back({{"i", e.i}, {"j", e.j}, {"order", e.order}, {"value", e.angle_or_length}});
    info["scheme_edges"] = edges;
    info["cell_volume"] = {{"exact", cell_volume(c.domain)}, {"quadrature", cell_volume_quadrature(c.domain)}};
    info["horoballs"] = balls;
    info["derived_constants"] = c.derivation_log;
    write_output(o.out, info.dump(2) + "\n");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"horokit: horoball packings of the {3,3,6} and {4,3,6} honeycombs in the Beltrami-Klein model"};
    app.set_config("--config", "", "TOML/INI file of option defaults (command-line flags take precedence)");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--tiling", o.tiling, "Honeycomb: 336 or 436")->check(CLI::IsMember({"336", "436"}));
    app.add_option("--case", o.packing_case, "Packing case: bf|ks (336), balanced|maximal (436)")
        ->check(CLI::IsMember({"bf", "ks", "balanced", "maximal"}));
    app.add_option("--crowns", o.crowns, "Number of crowns (word length) to expand");
    app.add_option("--tol", o.tol, "Tolerance for deduplication and tangency")->check(CLI::PositiveNumber);
    app.add_option("--method", o.method, "Density method: exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    app.add_option("--samples", o.samples, "Monte-Carlo sample count");
    app.add_option("--seed", o.seed, "Monte-Carlo seed");
    app.add_option("--out", o.out, "Output path (default: standard output)");
    app.add_option("--format", o.format, "Output format: scene, obj or ply")
        ->check(CLI::IsMember({"scene", "obj", "ply"}));
    app.add_option("--resolution", o.resolution, "Segments per spheroid circle (>= 8)");
    app.add_option("--in", o.in, "Input scene document (export)");
    app.add_option("--s-values", o.s_values, "Override the per-vertex horoball parameters s")->delimiter(',');
    app.add_flag("--wireframe", o.wireframe, "Add unit-sphere and domain-edge wireframes to meshes");

    auto* gen = app.add_subcommand("gen", "Expand a packing and write a scene or mesh");
    auto* verify = app.add_subcommand("verify", "Check relations, tables, packing and tangencies");
    auto* dens = app.add_subcommand("density", "Packing density of the fundamental configuration");
    auto* exp = app.add_subcommand("export", "Convert a scene document to OBJ or PLY");
    auto* info = app.add_subcommand("info", "Domain, generators and configuration data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(o);
        if (verify->parsed())
            return cmd_verify(o);
        if (dens->parsed())
            return cmd_density(o);
        if (exp->parsed())
            return cmd_export(o);
        if (info->parsed())
            return cmd_info(o);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const HardFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const horokit::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const horokit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
