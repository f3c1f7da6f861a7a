#pragma once

#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cheese/objects.hpp"
#include "cheese/planar_graph.hpp"
#include "cheese/rng.hpp"

namespace cheese {

// Grid instances emulate geometric object families: connected vertex blobs
// (axis-aligned rectangles or BFS balls) dropped on a triangulated grid.

/// rows x cols grid with unit lengths, clockwise rotations, then the outer
/// and inner faces triangulated.
inline PlanarGraph grid_graph(std::size_t rows, std::size_t cols) {
    if (rows < 2 || cols < 2)
        raise(ErrorKind::Parameter, "grid needs rows, cols >= 2");
    auto vid = [&](std::size_t r, std::size_t c) { return r * cols + c; };
    std::vector<Edge> edges;
    // right edges first, then down edges, row-major
    std::vector<std::vector<EdgeId>> right(rows, std::vector<EdgeId>(cols, kNone));
    std::vector<std::vector<EdgeId>> down(rows, std::vector<EdgeId>(cols, kNone));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c + 1 < cols; ++c) {
            right[r][c] = edges.size();
            edges.push_back({vid(r, c), vid(r, c + 1), Rational(1)});
        }
    for (std::size_t r = 0; r + 1 < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            down[r][c] = edges.size();
            edges.push_back({vid(r, c), vid(r + 1, c), Rational(1)});
        }
    std::vector<std::vector<EdgeId>> rot(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            auto& out = rot[vid(r, c)];
            // clockwise: east, south, west, north
            if (c + 1 < cols) out.push_back(right[r][c]);
            if (r + 1 < rows) out.push_back(down[r][c]);
            if (c > 0) out.push_back(right[r][c - 1]);
            if (r > 0) out.push_back(down[r - 1][c]);
        }
    return triangulate(PlanarGraph(rows * cols, std::move(edges), std::move(rot)));
}

struct ObjectSpecGroup {
    enum class Kind { Rect, Ball, All } kind = Kind::Rect;
    std::size_t w = 1, h = 1;   // Rect
    std::size_t radius = 0;     // Ball
    std::size_t count = 1;
};

/// Grammar: groups separated by ';'. Each group is
///   rect:WxH:COUNT | ball:R:COUNT | all
inline std::vector<ObjectSpecGroup> parse_object_spec(const std::string& spec) {
    std::vector<ObjectSpecGroup> groups;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        ObjectSpecGroup g;
        std::stringstream is(item);
        std::string kind;
        std::getline(is, kind, ':');
        if (kind == "all") {
            g.kind = ObjectSpecGroup::Kind::All;
            g.count = 1;
        } else if (kind == "rect") {
            g.kind = ObjectSpecGroup::Kind::Rect;
            std::string dims, cnt;
            if (!std::getline(is, dims, ':') || !std::getline(is, cnt, ':'))
                raise(ErrorKind::Parameter, "rect spec needs rect:WxH:COUNT");
            auto x = dims.find('x');
            if (x == std::string::npos)
                raise(ErrorKind::Parameter, "rect dims need WxH");
            g.w = std::stoul(dims.substr(0, x));
            g.h = std::stoul(dims.substr(x + 1));
            g.count = std::stoul(cnt);
        } else if (kind == "ball") {
            g.kind = ObjectSpecGroup::Kind::Ball;
            std::string rad, cnt;
            if (!std::getline(is, rad, ':') || !std::getline(is, cnt, ':'))
                raise(ErrorKind::Parameter, "ball spec needs ball:R:COUNT");
            g.radius = std::stoul(rad);
            g.count = std::stoul(cnt);
        } else {
            raise(ErrorKind::Parameter, "unknown object spec kind: " + kind);
        }
        if (g.w == 0 || g.h == 0 || g.count == 0)
            raise(ErrorKind::Parameter, "object spec values must be positive");
        groups.push_back(g);
    }
    if (groups.empty()) raise(ErrorKind::Parameter, "empty object spec");
    return groups;
}

/// Deterministic per (rows, cols, spec, seed). Objects may overlap; vertex
/// sets are distinct; edges are all induced edges of the triangulated graph.
inline Instance generate_grid(std::size_t rows, std::size_t cols,
                              const std::string& object_spec, std::uint64_t seed) {
    PlanarGraph g = grid_graph(rows, cols);
    auto vid = [&](std::size_t r, std::size_t c) { return r * cols + c; };

    auto induced_edges = [&](const std::vector<Vertex>& vs) {
        std::vector<std::pair<Vertex, Vertex>> es;
        std::set<Vertex> in(vs.begin(), vs.end());
        for (Vertex v : vs)
            for (Dart d : g.darts_at(v)) {
                Vertex w = g.head(d);
                if (v < w && in.count(w)) es.emplace_back(v, w);
            }
        return es;
    };
    // BFS balls use the 4-neighborhood so they keep their geometric shape.
    auto grid_ball = [&](std::size_t r0, std::size_t c0, std::size_t radius) {
        std::vector<Vertex> vs;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                std::size_t dr = r > r0 ? r - r0 : r0 - r;
                std::size_t dc = c > c0 ? c - c0 : c0 - c;
                if (dr + dc <= radius) vs.push_back(vid(r, c));
            }
        return vs;
    };

    Rng rng(derive_seed(seed, "generate-grid"));
    std::vector<GraphObject> objects;
    std::set<std::vector<Vertex>> used;
    auto place = [&](std::vector<Vertex> vs) {
        std::sort(vs.begin(), vs.end());
        if (used.count(vs)) return false;
        used.insert(vs);
        GraphObject p;
        p.id = objects.size();
        p.vertices = std::move(vs);
        p.edges = induced_edges(p.vertices);
        p.normalize();
        objects.push_back(std::move(p));
        return true;
    };

    for (const ObjectSpecGroup& gr : parse_object_spec(object_spec)) {
        switch (gr.kind) {
            case ObjectSpecGroup::Kind::All: {
                std::vector<Vertex> vs(rows * cols);
                for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = i;
                if (!place(std::move(vs)))
                    raise(ErrorKind::Generation, "duplicate 'all' object");
                break;
            }
            case ObjectSpecGroup::Kind::Rect: {
                if (gr.h > rows || gr.w > cols)
                    raise(ErrorKind::Generation, "rectangle exceeds grid size");
                const std::size_t ar = rows - gr.h + 1, ac = cols - gr.w + 1;
                if (static_cast<std::size_t>(gr.count) > ar * ac)
                    raise(ErrorKind::Generation, "more rectangles than anchors");
                for (std::size_t k = 0; k < gr.count; ++k) {
                    bool ok = false;
                    for (unsigned tries = 0; tries < 10000 && !ok; ++tries) {
                        std::size_t r0 = rng.below(ar), c0 = rng.below(ac);
                        std::vector<Vertex> vs;
                        for (std::size_t r = r0; r < r0 + gr.h; ++r)
                            for (std::size_t c = c0; c < c0 + gr.w; ++c)
                                vs.push_back(vid(r, c));
                        ok = place(std::move(vs));
                    }
                    if (!ok)
                        raise(ErrorKind::Generation, "could not place distinct rectangle");
                }
                break;
            }
            case ObjectSpecGroup::Kind::Ball: {
                if (2 * gr.radius + 1 > rows + cols)
                    raise(ErrorKind::Generation, "ball radius exceeds grid size");
                for (std::size_t k = 0; k < gr.count; ++k) {
                    bool ok = false;
                    for (unsigned tries = 0; tries < 10000 && !ok; ++tries) {
                        std::size_t r0 = rng.below(rows), c0 = rng.below(cols);
                        ok = place(grid_ball(r0, c0, gr.radius));
                    }
                    if (!ok) raise(ErrorKind::Generation, "could not place distinct ball");
                }
                break;
            }
        }
    }

    return Instance{std::move(g), derive_seed(seed, "metric"), std::move(objects)};
}

}  // namespace cheese
