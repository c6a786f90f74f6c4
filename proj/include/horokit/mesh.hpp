#pragma once

// Tessellated spheroid meshes (OBJ and binary little-endian PLY) for scene
// documents.

#include "horokit/scene.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

namespace horokit {

enum class MeshFormat { Obj, Ply };

inline MeshFormat parse_mesh_format(const std::string& s) {
    if (s == "obj")
        return MeshFormat::Obj;
    if (s == "ply")
        return MeshFormat::Ply;
    throw ParameterError("unsupported mesh format '" + s + "' (expected obj or ply)");
}

/// Spheroids whose polar semi-axis falls below this are emitted as a single
/// point at their Euclidean centre.
inline constexpr double kPointMarkerThreshold = 1e-4;

struct MeshOptions {
    int resolution = 16;
    bool wireframe = false;
};

struct MeshObject {
    std::string name;
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles; // indices local to the object
    std::vector<std::array<std::uint32_t, 2>> lines;
    bool point_marker = false;
};

struct Mesh {
    std::vector<MeshObject> objects;

    std::size_t vertex_count() const {
        std::size_t n = 0;
        for (const auto& o : objects)
            n += o.vertices.size();
        return n;
    }
};

inline std::size_t spheroid_vertex_count(int resolution) {
    return static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution / 2 - 1) + 2;
}

/// UV tessellation of the exact horosphere about its axis: `resolution`
/// segments around, resolution/2 bands from the ideal point to the far pole.
inline MeshObject tessellate(const Horoball& h, int resolution, std::string name) {
    MeshObject o{std::move(name), {}, {}, {}, false};
    const int rings = resolution / 2 - 1;
    o.vertices.push_back(polar_point(h, 0.0, 0.0).klein());
    for (int i = 1; i <= rings; ++i) {
        const double theta = std::numbers::pi * i / (rings + 1);
        for (int j = 0; j < resolution; ++j)
            o.vertices.push_back(polar_point(h, theta, 2.0 * std::numbers::pi * j / resolution).klein());
    }
    o.vertices.push_back(polar_point(h, std::numbers::pi, 0.0).klein());

    const auto res = static_cast<std::uint32_t>(resolution);
    auto at = [&](int ring, std::uint32_t j) { return 1 + static_cast<std::uint32_t>(ring - 1) * res + j % res; };
    const auto last = static_cast<std::uint32_t>(o.vertices.size() - 1);
    for (std::uint32_t j = 0; j < res; ++j)
        o.triangles.push_back({0, at(1, j), at(1, j + 1)});
    for (int i = 1; i < rings; ++i)
        for (std::uint32_t j = 0; j < res; ++j) {
            o.triangles.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
            o.triangles.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
        }
    for (std::uint32_t j = 0; j < res; ++j)
        o.triangles.push_back({at(rings, j), last, at(rings, j + 1)});
    return o;
}

namespace detail {

inline MeshObject unit_sphere_wireframe(int resolution) {
    MeshObject o{"unit_sphere", {}, {}, {}, false};
    const auto res = static_cast<std::uint32_t>(resolution);
    for (int plane = 0; plane < 3; ++plane) {
        const auto base = static_cast<std::uint32_t>(o.vertices.size());
        for (std::uint32_t j = 0; j < res; ++j) {
            const double t = 2.0 * std::numbers::pi * j / resolution;
            Vec3 p = Vec3::Zero();
            p[(plane + 1) % 3] = std::cos(t);
            p[(plane + 2) % 3] = std::sin(t);
            o.vertices.push_back(p);
            o.lines.push_back({base + j, base + (j + 1) % res});
        }
    }
    return o;
}

inline MeshObject domain_wireframe(const SceneDocument& scene) {
    MeshObject o{"domain_edges", {}, {}, {}, false};
    for (const auto& v : scene.domain_vertices)
        o.vertices.push_back(Vec3(v[1] / v[0], v[2] / v[0], v[3] / v[0]));
    DomainKind kind = scene.tiling == "336" ? DomainKind::Tetra336 : DomainKind::Cube436;
    const FundamentalDomain d = builtin_domain(kind);
    for (int a = 0; a < static_cast<int>(d.vertex_count()); ++a)
        for (int b : vertex_neighbors(d, a))
            if (a < b)
                o.lines.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
    return o;
}

} // namespace detail

inline Mesh build_mesh(const SceneDocument& scene, const MeshOptions& opt) {
    if (opt.resolution < 8)
        throw ParameterError("mesh resolution must be at least 8");
    Mesh m;
    for (std::size_t i = 0; i < scene.horoballs.size(); ++i) {
        const auto& r = scene.horoballs[i];
        const std::string name = "horoball_" + std::to_string(i);
        if (r.spheroid.semi_axis_polar < kPointMarkerThreshold) {
            m.objects.push_back({name, {to_vec3(r.spheroid.euclidean_center)}, {}, {}, true});
            continue;
        }
        m.objects.push_back(tessellate(record_ball(r), opt.resolution, name));
    }
    if (opt.wireframe) {
        if (scene.unit_sphere)
            m.objects.push_back(detail::unit_sphere_wireframe(4 * opt.resolution));
        m.objects.push_back(detail::domain_wireframe(scene));
    }
    return m;
}

inline std::string write_obj(const Mesh& m) {
    std::string out = "# horokit " + std::string(kToolVersion) + " beltrami-klein\n";
    char buf[160];
    std::size_t base = 1;
    for (const auto& o : m.objects) {
        out += "o " + o.name + "\n";
        for (const auto& v : o.vertices) {
            std::snprintf(buf, sizeof buf, "v %.12f %.12f %.12f\n", v[0], v[1], v[2]);
            out += buf;
        }
        if (o.point_marker) {
            std::snprintf(buf, sizeof buf, "p %zu\n", base);
            out += buf;
        }
        for (const auto& t : o.triangles) {
            std::snprintf(buf, sizeof buf, "f %zu %zu %zu\n", base + t[0], base + t[1], base + t[2]);
            out += buf;
        }
        for (const auto& l : o.lines) {
            std::snprintf(buf, sizeof buf, "l %zu %zu\n", base + l[0], base + l[1]);
            out += buf;
        }
        base += o.vertices.size();
    }
    return out;
}

namespace detail {

template <class T>
void append_le(std::string& out, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes, bytes + sizeof(T));
    out.append(bytes, sizeof(T));
}

} // namespace detail

inline std::string write_ply(const Mesh& m) {
    std::size_t nv = 0, nf = 0, ne = 0;
    for (const auto& o : m.objects) {
        nv += o.vertices.size();
        nf += o.triangles.size();
        ne += o.lines.size();
    }
    std::string out = "ply\nformat binary_little_endian 1.0\ncomment horokit " + std::string(kToolVersion) +
                      " beltrami-klein\n";
    out += "element vertex " + std::to_string(nv) + "\nproperty double x\nproperty double y\nproperty double z\n";
    out += "property int object\n";
    out += "element face " + std::to_string(nf) + "\nproperty list uchar uint vertex_indices\n";
    out += "element edge " + std::to_string(ne) + "\nproperty uint vertex1\nproperty uint vertex2\n";
    out += "end_header\n";
    for (std::size_t k = 0; k < m.objects.size(); ++k)
        for (const auto& v : m.objects[k].vertices) {
            detail::append_le(out, v[0]);
            detail::append_le(out, v[1]);
            detail::append_le(out, v[2]);
            detail::append_le(out, static_cast<std::int32_t>(k));
        }
    std::uint32_t base = 0;
    for (const auto& o : m.objects) {
        for (const auto& t : o.triangles) {
            detail::append_le(out, static_cast<std::uint8_t>(3));
            for (auto i : t)
                detail::append_le(out, base + i);
        }
        base += static_cast<std::uint32_t>(o.vertices.size());
    }
    base = 0;
    for (const auto& o : m.objects) {
        for (const auto& l : o.lines) {
            detail::append_le(out, base + l[0]);
            detail::append_le(out, base + l[1]);
        }
        base += static_cast<std::uint32_t>(o.vertices.size());
    }
    return out;
}

inline std::string export_mesh(const SceneDocument& scene, const MeshOptions& opt, MeshFormat format) {
    const Mesh m = build_mesh(scene, opt);
    return format == MeshFormat::Obj ? write_obj(m) : write_ply(m);
}

} // namespace horokit
