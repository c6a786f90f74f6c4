#pragma once

// Scene documents: a versioned JSON description of an expanded packing in
// the Beltrami-Klein model (schema "scene-v1").

#include "horokit/packing.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace horokit {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSceneSchema = "scene-v1";
inline constexpr const char* kSceneModel = "beltrami-klein";

class ParseError : public Error {
  public:
    using Error::Error;
};

struct SceneSpheroid {
    std::array<double, 3> euclidean_center{};
    std::array<double, 3> axis{};
    double semi_axis_equatorial = 0.0;
    double semi_axis_polar = 0.0;
    bool operator==(const SceneSpheroid&) const = default;
};

struct SceneHoroball {
    SceneSpheroid spheroid;
    std::array<double, 4> ideal_center{};
    double s = 0.0;
    double depth = 0.0;
    int type_id = 0;
    int crown = 0;
    std::vector<int> word;
    int source_vertex = 0;
    bool operator==(const SceneHoroball&) const = default;
};

struct Provenance {
    std::string tool_version = kToolVersion;
    std::uint64_t seed = 0;
    std::vector<std::string> derived_constants;
    bool operator==(const Provenance&) const = default;
};

struct SceneDocument {
    std::string schema = kSceneSchema;
    std::string model = kSceneModel;
    std::string tiling;
    std::string packing_case;
    int crowns = 0;
    double tolerance = 1e-9;
    std::vector<SceneHoroball> horoballs;
    std::vector<std::array<double, 4>> domain_vertices;
    bool unit_sphere = true;
    std::vector<std::array<double, 16>> generators;
    Provenance provenance;
    bool operator==(const SceneDocument&) const = default;
};

inline std::array<double, 3> to_array(const Vec3& v) { return {v[0], v[1], v[2]}; }
inline std::array<double, 4> to_array(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
inline Vec3 to_vec3(const std::array<double, 3>& a) { return Vec3(a[0], a[1], a[2]); }

/// Horoball described by a scene record.
inline Horoball record_ball(const SceneHoroball& r) { return Horoball::from_depth(to_vec3(r.spheroid.axis), r.depth); }

inline SceneDocument build_scene(const PackingConfig& config, const Orbit& orbit, const GeneratorSet& gens, int crowns,
                                 double tol, std::uint64_t seed = 0) {
    SceneDocument doc;
    doc.tiling = to_string(config.domain.kind);
    doc.packing_case = to_string(config.packing_case);
    doc.crowns = crowns;
    doc.tolerance = tol;
    for (const auto& h : orbit.horoballs) {
        const Spheroid sp = to_spheroid(h.ball);
        doc.horoballs.push_back({{to_array(sp.euclidean_center), to_array(sp.axis), sp.semi_axis_equatorial,
                                  sp.semi_axis_polar},
                                 to_array(h.ball.center().coords()),
                                 h.ball.s(),
                                 h.ball.depth(),
                                 h.type_id,
                                 h.crown,
                                 h.word,
                                 h.source_vertex});
    }
    for (const auto& v : config.domain.vertices)
        doc.domain_vertices.push_back(to_array(v.canonical().coords()));
    for (const auto& g : gens.generators) {
        const Mat4 m = g.normalized().matrix;
        std::array<double, 16> a{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                a[static_cast<std::size_t>(4 * i + j)] = m(i, j);
        doc.generators.push_back(a);
    }
    doc.provenance.seed = seed;
    doc.provenance.derived_constants = config.derivation_log;
    return doc;
}

inline void to_json(nlohmann::json& j, const SceneSpheroid& s) {
    j = {{"euclidean_center", s.euclidean_center},
         {"axis", s.axis},
         {"semi_axis_equatorial", s.semi_axis_equatorial},
         {"semi_axis_polar", s.semi_axis_polar}};
}

inline void from_json(const nlohmann::json& j, SceneSpheroid& s) {
    j.at("euclidean_center").get_to(s.euclidean_center);
    j.at("axis").get_to(s.axis);
    j.at("semi_axis_equatorial").get_to(s.semi_axis_equatorial);
    j.at("semi_axis_polar").get_to(s.semi_axis_polar);
}

inline void to_json(nlohmann::json& j, const SceneHoroball& h) {
    j = {{"spheroid", h.spheroid}, {"ideal_center", h.ideal_center}, {"s", h.s},
         {"depth", h.depth},       {"type_id", h.type_id},           {"crown", h.crown},
         {"word", h.word},         {"source_vertex", h.source_vertex}};
}

inline void from_json(const nlohmann::json& j, SceneHoroball& h) {
    j.at("spheroid").get_to(h.spheroid);
    j.at("ideal_center").get_to(h.ideal_center);
    j.at("s").get_to(h.s);
    j.at("depth").get_to(h.depth);
    j.at("type_id").get_to(h.type_id);
    j.at("crown").get_to(h.crown);
    j.at("word").get_to(h.word);
    j.at("source_vertex").get_to(h.source_vertex);
}

inline void to_json(nlohmann::json& j, const Provenance& p) {
    j = {{"tool_version", p.tool_version}, {"seed", p.seed}, {"derived_constants", p.derived_constants}};
}

inline void from_json(const nlohmann::json& j, Provenance& p) {
    j.at("tool_version").get_to(p.tool_version);
    j.at("seed").get_to(p.seed);
    j.at("derived_constants").get_to(p.derived_constants);
}

inline void to_json(nlohmann::json& j, const SceneDocument& d) {
    j = {{"schema", d.schema},
         {"model", d.model},
         {"tiling", d.tiling},
         {"case", d.packing_case},
         {"crowns", d.crowns},
         {"tolerance", d.tolerance},
         {"unit_sphere", d.unit_sphere},
         {"domain_vertices", d.domain_vertices},
         {"generators", d.generators},
         {"horoballs", d.horoballs},
         {"provenance", d.provenance}};
}

inline void from_json(const nlohmann::json& j, SceneDocument& d) {
    j.at("schema").get_to(d.schema);
    j.at("model").get_to(d.model);
    j.at("tiling").get_to(d.tiling);
    j.at("case").get_to(d.packing_case);
    j.at("crowns").get_to(d.crowns);
    j.at("tolerance").get_to(d.tolerance);
    j.at("unit_sphere").get_to(d.unit_sphere);
    j.at("domain_vertices").get_to(d.domain_vertices);
    j.at("generators").get_to(d.generators);
    j.at("horoballs").get_to(d.horoballs);
    j.at("provenance").get_to(d.provenance);
}

inline std::string write_scene(const SceneDocument& doc) { return nlohmann::json(doc).dump(2) + "\n"; }

inline SceneDocument parse_scene(const std::string& text) {
    SceneDocument doc;
    try {
        nlohmann::json::parse(text).get_to(doc);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed scene document: ") + e.what());
    }
    if (doc.schema != kSceneSchema)
        throw ParseError("unsupported scene schema '" + doc.schema + "'");
    if (doc.model != kSceneModel)
        throw ParseError("unsupported model '" + doc.model + "'");
    return doc;
}

} // namespace horokit
