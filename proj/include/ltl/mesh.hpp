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
#pragma once

#include "ltl/common.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ltl
{

using Face = std::array<Index, 3>;

namespace detail
{
inline std::uint64_t edge_key(Index a, Index b)
{
    if (a > b) {
        std::swap(a, b);
    }
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

struct FaceHash {
    std::size_t operator()(const std::array<Index, 3>& t) const noexcept
    {
        auto h = static_cast<std::uint64_t>(t[0]) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::uint64_t>(t[1]) * 0xC2B2AE3D27D4EB4FULL + (h << 6);
        h ^= static_cast<std::uint64_t>(t[2]) * 0x165667B19E3779F9ULL + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/** Compressed adjacency lists: row i is values[offsets[i], offsets[i+1]) */
struct Csr {
    std::vector<std::size_t> offsets{0};
    std::vector<Index> values;

    std::span<const Index> row(Index i) const
    {
        auto b = offsets[static_cast<std::size_t>(i)];
        auto e = offsets[static_cast<std::size_t>(i) + 1];
        return {values.data() + b, e - b};
    }
};
}  // namespace detail

/**
 * @brief Indexed triangle mesh
 *
 * Immutable after construction. The constructor validates indices, rejects
 * repeated or duplicated faces and edges shared by more than two faces.
 */
class Mesh
{
public:
    Mesh() = default;

    Mesh(std::vector<Vec3> vertices, std::vector<Face> faces)
        : vertices_{std::move(vertices)}, faces_{std::move(faces)}
    {
        validate_and_index();
    }

    const std::vector<Vec3>& vertices() const noexcept { return vertices_; }
    const std::vector<Face>& faces() const noexcept { return faces_; }
    const Vec3& vertex(Index v) const { return vertices_[static_cast<std::size_t>(v)]; }
    const Face& face(Index f) const { return faces_[static_cast<std::size_t>(f)]; }

    Index num_vertices() const noexcept { return static_cast<Index>(vertices_.size()); }
    Index num_faces() const noexcept { return static_cast<Index>(faces_.size()); }
    bool empty() const noexcept { return vertices_.empty(); }

    bool valid_vertex(Index v) const noexcept { return v >= 0 && v < num_vertices(); }

    /** @brief Faces incident to v, in face-list order */
    std::span<const Index> vertex_faces(Index v) const { return vertex_faces_.row(v); }

    /** @brief Vertices sharing an edge with v, sorted by index */
    std::span<const Index> adjacent_vertices(Index v) const { return adjacency_.row(v); }

    /** @brief True if v lies on an edge with only one incident face */
    bool is_boundary_vertex(Index v) const { return boundary_[static_cast<std::size_t>(v)] != 0; }

    /** @brief Same connectivity, new positions */
    Mesh with_vertices(std::vector<Vec3> vertices) const
    {
        if (vertices.size() != vertices_.size()) {
            throw MeshError("with_vertices: vertex count mismatch");
        }
        Mesh m = *this;
        m.vertices_ = std::move(vertices);
        return m;
    }

private:
    void validate_and_index()
    {
        const auto nv = num_vertices();
        if (nv >= (Index{1} << 32)) {
            throw MeshError("mesh too large");
        }

        std::unordered_map<std::uint64_t, int> edge_count;
        edge_count.reserve(faces_.size() * 2);
        std::unordered_set<Face, detail::FaceHash> seen_faces;
        seen_faces.reserve(faces_.size());

        std::vector<std::size_t> face_degree(vertices_.size() + 1, 0);
        for (std::size_t f = 0; f < faces_.size(); ++f) {
            const auto& t = faces_[f];
            for (auto i : t) {
                if (i < 0 || i >= nv) {
                    throw MeshError("face " + std::to_string(f) + ": dangling vertex index " +
                                    std::to_string(i));
                }
            }
            if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
                throw MeshError("face " + std::to_string(f) + ": repeated vertex");
            }
            auto s = t;
            std::sort(s.begin(), s.end());
            if (!seen_faces.insert(s).second) {
                throw MeshError("face " + std::to_string(f) + ": duplicate face");
            }
            for (int k = 0; k < 3; ++k) {
                if (++edge_count[detail::edge_key(t[k], t[(k + 1) % 3])] > 2) {
                    throw MeshError("face " + std::to_string(f) + ": non-manifold edge (" +
                                    std::to_string(t[k]) + "," + std::to_string(t[(k + 1) % 3]) +
                                    ")");
                }
                ++face_degree[static_cast<std::size_t>(t[k]) + 1];
            }
        }

        // vertex -> faces
        auto& vf = vertex_faces_;
        vf.offsets.assign(vertices_.size() + 1, 0);
        for (std::size_t i = 1; i <= vertices_.size(); ++i) {
            vf.offsets[i] = vf.offsets[i - 1] + face_degree[i];
        }
        vf.values.assign(vf.offsets.back(), 0);
        std::vector<std::size_t> cursor(vf.offsets.begin(), vf.offsets.end() - 1);
        for (std::size_t f = 0; f < faces_.size(); ++f) {
            for (auto i : faces_[f]) {
                vf.values[cursor[static_cast<std::size_t>(i)]++] = static_cast<Index>(f);
            }
        }

        // vertex -> vertices, and boundary flags
        boundary_.assign(vertices_.size(), 0);
        auto& adj = adjacency_;
        adj.offsets.assign(vertices_.size() + 1, 0);
        std::vector<Index> row;
        for (Index v = 0; v < nv; ++v) {
            row.clear();
            for (auto f : vf.row(v)) {
                for (auto i : faces_[static_cast<std::size_t>(f)]) {
                    if (i != v) {
                        row.push_back(i);
                    }
                }
            }
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            for (auto u : row) {
                if (edge_count[detail::edge_key(v, u)] == 1) {
                    boundary_[static_cast<std::size_t>(v)] = 1;
                }
            }
            adj.values.insert(adj.values.end(), row.begin(), row.end());
            adj.offsets[static_cast<std::size_t>(v) + 1] = adj.values.size();
        }
    }

    std::vector<Vec3> vertices_;
    std::vector<Face> faces_;
    detail::Csr vertex_faces_;
    detail::Csr adjacency_;
    std::vector<char> boundary_;
};

/** @brief Ordered one-ring fan around a vertex */
struct OneRing {
    Index center{-1};
    /** Counterclockwise about the outward side; open chain for boundary vertices */
    std::vector<Index> neighbors;
    /** incident_faces[i] contains neighbors[i] and neighbors[i+1] (cyclically if closed) */
    std::vector<Index> incident_faces;
    bool is_boundary{false};
};

inline OneRing one_ring(const Mesh& mesh, Index v)
{
    if (!mesh.valid_vertex(v)) {
        throw MeshError("one_ring: invalid vertex index " + std::to_string(v));
    }
    OneRing ring;
    ring.center = v;

    // For each incident face (v, a, b) in its own orientation, a precedes b around v.
    struct Wedge {
        Index a, b, face;
    };
    std::vector<Wedge> wedges;
    for (auto f : mesh.vertex_faces(v)) {
        const auto& t = mesh.face(f);
        int c = t[0] == v ? 0 : (t[1] == v ? 1 : 2);
        wedges.push_back({t[(c + 1) % 3], t[(c + 2) % 3], f});
    }
    if (wedges.empty()) {
        ring.is_boundary = true;
        return ring;
    }

    auto find_from = [&](Index a) -> const Wedge* {
        const Wedge* hit = nullptr;
        for (const auto& w : wedges) {
            if (w.a == a) {
                if (hit != nullptr) {
                    throw MeshError("one_ring: inconsistent orientation at vertex " +
                                    std::to_string(v));
                }
                hit = &w;
            }
        }
        return hit;
    };

    // Chain start: an 'a' that is nobody's 'b'. Closed fans start at the smallest index.
    Index start = -1;
    for (const auto& w : wedges) {
        bool is_target = std::any_of(wedges.begin(), wedges.end(),
                                     [&](const Wedge& o) { return o.b == w.a; });
        if (!is_target) {
            if (start != -1) {
                throw MeshError("one_ring: non-manifold vertex " + std::to_string(v));
            }
            start = w.a;
        }
    }
    ring.is_boundary = start != -1;
    if (!ring.is_boundary) {
        start = wedges.front().a;
        for (const auto& w : wedges) {
            start = std::min(start, w.a);
        }
    }

    Index cur = start;
    for (std::size_t step = 0; step < wedges.size(); ++step) {
        const Wedge* w = find_from(cur);
        if (w == nullptr) {
            throw MeshError("one_ring: broken fan at vertex " + std::to_string(v));
        }
        ring.neighbors.push_back(cur);
        ring.incident_faces.push_back(w->face);
        cur = w->b;
        if (!ring.is_boundary && cur == start) {
            if (step + 1 != wedges.size()) {
                throw MeshError("one_ring: non-manifold vertex " + std::to_string(v));
            }
            return ring;
        }
    }
    if (!ring.is_boundary) {
        throw MeshError("one_ring: non-manifold vertex " + std::to_string(v));
    }
    ring.neighbors.push_back(cur);
    return ring;
}

/**
 * @brief All vertices within graph distance @p depth of v, excluding v
 *
 * Returned sorted by index.
 */
inline std::vector<Index> k_ring(const Mesh& mesh, Index v, int depth)
{
    if (!mesh.valid_vertex(v)) {
        throw MeshError("k_ring: invalid vertex index " + std::to_string(v));
    }
    std::vector<Index> visited{v};
    std::vector<Index> frontier{v};
    std::vector<Index> next;
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        next.clear();
        for (auto u : frontier) {
            for (auto w : mesh.adjacent_vertices(u)) {
                if (std::find(visited.begin(), visited.end(), w) == visited.end()) {
                    visited.push_back(w);
                    next.push_back(w);
                }
            }
        }
        std::swap(frontier, next);
    }
    visited.erase(visited.begin());
    std::sort(visited.begin(), visited.end());
    return visited;
}

struct MeshStats {
    /** Maximum edge length */
    double mesh_size_r{0.0};
    Index n_vertices{0};
    Index n_faces{0};
    Index n_boundary_vertices{0};
};

inline MeshStats mesh_stats(const Mesh& mesh)
{
    if (mesh.empty() || mesh.num_faces() == 0) {
        throw MeshError("mesh_stats: empty mesh");
    }
    MeshStats s;
    s.n_vertices = mesh.num_vertices();
    s.n_faces = mesh.num_faces();
    double max_sq = 0.0;
    for (const auto& t : mesh.faces()) {
        for (int k = 0; k < 3; ++k) {
            max_sq = std::max(max_sq, (mesh.vertex(t[k]) - mesh.vertex(t[(k + 1) % 3])).squaredNorm());
        }
    }
    s.mesh_size_r = std::sqrt(max_sq);
    for (Index v = 0; v < mesh.num_vertices(); ++v) {
        s.n_boundary_vertices += mesh.is_boundary_vertex(v) ? 1 : 0;
    }
    return s;
}

/** @brief V - E + F */
inline Index euler_characteristic(const Mesh& mesh)
{
    Index edges = 0;
    for (Index v = 0; v < mesh.num_vertices(); ++v) {
        for (auto u : mesh.adjacent_vertices(v)) {
            edges += u > v ? 1 : 0;
        }
    }
    return mesh.num_vertices() - edges + mesh.num_faces();
}

}  // namespace ltl
