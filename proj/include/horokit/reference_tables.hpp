#pragma once

// Tabulated reference values for the two fundamental cells (facet normals,
// perpendicular feet, reflection images, generator matrices) and a
// cross-check that recomputes each entry from the vertex coordinates.
//
// Known transcription errors in the tabulated data are carried as entries
// with status KnownErratum; they are reported, never matched.

#include "horokit/coxeter.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace horokit {

enum class CheckStatus { Match, Mismatch, KnownErratum };

inline const char* to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::Match: return "match";
    case CheckStatus::Mismatch: return "mismatch";
    case CheckStatus::KnownErratum: return "erratum";
    }
    return "?";
}

struct CrossCheckEntry {
    std::string label;
    CheckStatus status;
    double deviation; // NaN for errata that cannot be compared
    std::string note;
};

namespace reference {

inline Mat4 rows(std::initializer_list<std::initializer_list<double>> r) {
    Mat4 m;
    int i = 0;
    for (const auto& row : r) {
        int j = 0;
        for (double x : row)
            m(i, j++) = x;
        ++i;
    }
    return m;
}

/// Tetrahedral generators g1..g4, g_{i+1} reflecting in the facet opposite E_i.
inline std::vector<Mat4> tetra_generators() {
    const double h = std::sqrt(3.0) / 2;
    return {
        rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}),
        rows({{-1.5, 0, -1, 0.5}, {0, -1, 0, 0}, {1, 0, 1, -1}, {-0.5, 0, -1, -0.5}}),
        rows({{-1.5, -h, 0.5, 0.5}, {h, 0.5, -h, -h}, {-0.5, -h, -0.5, 0.5}, {-0.5, -h, 0.5, -0.5}}),
        rows({{-1.5, h, 0.5, 0.5}, {-h, 0.5, h, h}, {-0.5, h, -0.5, 0.5}, {-0.5, h, 0.5, -0.5}}),
    };
}

/// Cubic generators g1..g6, in facet order.
inline std::vector<Mat4> cube_generators() {
    const double r2 = std::sqrt(2.0), s32 = std::sqrt(1.5), i2 = 1 / std::sqrt(2.0), h = std::sqrt(3.0) / 2;
    return {
        rows({{2, 0, -r2, -1}, {0, 1, 0, 0}, {r2, 0, -1, -r2}, {1, 0, -r2, 0}}),
        rows({{-2, -s32, -i2, 1}, {s32, 0.5, h, -s32}, {i2, h, -0.5, -i2}, {-1, -s32, -i2, 0}}),
        rows({{2, -s32, i2, -1}, {s32, -0.5, h, -s32}, {-i2, h, 0.5, i2}, {1, -s32, i2, 0}}),
        rows({{2, s32, -i2, 1}, {-s32, -0.5, h, -s32}, {i2, h, 0.5, i2}, {-1, -s32, i2, 0}}),
        rows({{-2, s32, i2, -1}, {-s32, 0.5, h, -s32}, {-i2, h, -0.5, -i2}, {1, -s32, -i2, 0}}),
        rows({{2, 0, r2, 1}, {0, 1, 0, 0}, {-r2, 0, -1, -r2}, {-1, 0, -r2, 0}}),
    };
}

/// One row of a facet table: the facet, its tabulated normal (as a linear
/// form), the foot of the probe vertex and that vertex's reflection image.
struct FacetRow {
    int facet;
    int probe_vertex;
    std::optional<Vec4> normal;      // empty when the tabulated value is a known erratum
    std::string normal_erratum;
    Vec4 foot;
    std::optional<Vec4> image;
    std::string image_erratum;
};

inline std::vector<FacetRow> tetra_table() {
    const double r3 = std::sqrt(3.0);
    return {
        {0, 0, std::nullopt, "tabulated normal (1,0,0,1) is not incident with E1E2E3; recomputed (0,0,0,1)",
         Vec4(1, 0, 0, 0), Vec4(1, 0, 0, -1), ""},
        {1, 1, Vec4(1, 0, 2, -1), "", Vec4(1, 0, -2.0 / 7, 3.0 / 7), Vec4(1, 0, -0.8, 0.6), ""},
        {2, 2, Vec4(-1, -r3, 1, 1), "", Vec4(1, -r3 / 7, 1.0 / 7, 3.0 / 7), Vec4(1, -2 * r3 / 5, 0.4, 0.6), ""},
        {3, 3, Vec4(1, -r3, -1, -1), "", Vec4(1, r3 / 7, 1.0 / 7, 3.0 / 7), Vec4(1, 2 * r3 / 5, 0.4, 0.6), ""},
    };
}

inline std::vector<FacetRow> cube_table() {
    const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0), r23 = std::sqrt(2.0 / 3.0);
    const double a = std::sqrt(3.0) / (2 * r2), b = 1 / (2 * r2);
    return {
        {0, 7, Vec4(1, 0, -r2, -1), "", Vec4(1, 0, 1 / r2, 0), Vec4(1, 0, 2 * r2 / 3, 1.0 / 3), ""},
        {1, 7, Vec4(-2, -r6, -r2, 2), "", Vec4(1, -a, -b, 0), Vec4(1, -r23, -r2 / 3, 1.0 / 3), ""},
        {2, 7, Vec4(2, -r6, r2, -2), "", Vec4(1, a, -b, 0), Vec4(1, r23, -r2 / 3, 1.0 / 3), ""},
        {3, 0, Vec4(2, r6, -r2, 2), "", Vec4(1, -a, b, 0), Vec4(1, -r23, r2 / 3, -1.0 / 3), ""},
        {4, 0, Vec4(-2, r6, r2, -2), "", Vec4(1, a, b, 0), std::nullopt,
         "tabulated image (1-sqrt(2/3), sqrt(2)/3, -1/3) has three entries (missing separator)"},
        {5, 0, Vec4(1, 0, r2, 1), "", Vec4(1, 0, -1 / r2, 0), Vec4(1, 0, -2 * r2 / 3, -1.0 / 3), ""},
    };
}

} // namespace reference

inline double projective_vector_deviation(const Vec4& computed, const Vec4& expected) {
    // compare after scaling `expected` onto `computed`
    const double c = computed.dot(expected) / expected.squaredNorm();
    return (computed - c * expected).cwiseAbs().maxCoeff() / computed.cwiseAbs().maxCoeff();
}

/// Recompute every tabulated entry for `d` and compare within `tol`.
inline std::vector<CrossCheckEntry> cross_check_tables(const FundamentalDomain& d, const GeneratorSet& gens,
                                                       double tol = 1e-9) {
    std::vector<CrossCheckEntry> out;
    auto push = [&](std::string label, double dev) {
        out.push_back({std::move(label), dev <= tol ? CheckStatus::Match : CheckStatus::Mismatch, dev, ""});
    };
    const bool tetra = d.kind == DomainKind::Tetra336;
    const std::string tag = tetra ? "336" : "436";
    const auto table = tetra ? reference::tetra_table() : reference::cube_table();
    for (const auto& row : table) {
        const std::string base = tag + " facet " + std::to_string(row.facet) + " ";
        const PlaneForm& form = d.facet_forms[static_cast<std::size_t>(row.facet)];
        if (row.normal)
            push(base + "normal", projective_vector_deviation(form.coeffs(), *row.normal));
        else
            out.push_back({base + "normal", CheckStatus::KnownErratum, std::nan(""), row.normal_erratum});

        const ProjectivePoint& v = d.vertices[static_cast<std::size_t>(row.probe_vertex)];
        const ProjectivePoint foot = perpendicular_foot(v, form);
        push(base + "foot of E" + std::to_string(row.probe_vertex), (foot.coords() - row.foot).cwiseAbs().maxCoeff());

        const ProjectivePoint img = reflection_image(d, row.facet, row.probe_vertex);
        const std::string ilabel = base + "image of E" + std::to_string(row.probe_vertex);
        if (row.image)
            push(ilabel, (img.coords() - *row.image).cwiseAbs().maxCoeff());
        else
            out.push_back({ilabel, CheckStatus::KnownErratum, std::nan(""), row.image_erratum});
    }
    const auto mats = tetra ? reference::tetra_generators() : reference::cube_generators();
    for (std::size_t i = 0; i < mats.size() && i < gens.size(); ++i)
        push(tag + " generator g" + std::to_string(i + 1),
             projective_matrix_deviation(gens[i].matrix, mats[i]));
    if (!tetra)
        out.push_back({"436 vertex E4", CheckStatus::KnownErratum, std::nan(""),
                       "tabulated as (1, 0, (2 sqrt(2)/3, -1/3) with an unbalanced parenthesis; read as "
                       "(1, 0, 2 sqrt(2)/3, -1/3)"});
    return out;
}

} // namespace horokit
