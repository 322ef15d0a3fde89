#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dosg {

enum class FamilyKind { LatticeZd, Hexagonal, Triangular, Bethe };

// One of the supported graph families: Z^d, the hexagonal and triangular
// tilings of the plane, and the Bethe lattice with coordination number k.
struct GraphFamily {
    FamilyKind kind = FamilyKind::LatticeZd;
    int dim = 1; // LatticeZd only
    int k = 3;   // Bethe only

    static GraphFamily zd(int d);
    static GraphFamily hexagonal();
    static GraphFamily triangular();
    static GraphFamily bethe(int k);

    bool is_lattice() const { return kind != FamilyKind::Bethe; }
    // Embedding dimension of the vertex coordinates.
    int coord_dim() const { return kind == FamilyKind::LatticeZd ? dim : 2; }
    // Spectral radius of the adjacency operator on the infinite graph.
    double spectral_radius() const;
    std::string name() const;
    void validate() const;

    bool operator==(const GraphFamily&) const = default;
};

// Finite ball of radius `radius` around a root vertex, with vertices indexed
// in breadth-first discovery order (so vertex indices are sorted by distance
// to the root, and enlarging the radius never renumbers existing vertices).
struct RootedBall {
    GraphFamily family;
    int radius = 0;
    int n = 0;
    int root = 0;

    std::vector<std::int32_t> adj_offsets; // CSR, size n+1
    std::vector<std::int32_t> adj;
    std::vector<std::int32_t> dist; // distance to root

    // Lattice embedding, flattened n x coord_dim. Empty for Bethe.
    std::vector<std::int32_t> coords;
    // Bethe labeling: parent index and digit of each non-root vertex.
    std::vector<std::int32_t> parent;
    std::vector<std::int32_t> digit;

    std::span<const std::int32_t> neighbors(int v) const {
        return {adj.data() + adj_offsets[v],
                adj.data() + adj_offsets[v + 1]};
    }
    int degree(int v) const { return adj_offsets[v + 1] - adj_offsets[v]; }
    int dist_to_root(int v) const { return dist[v]; }
    std::span<const std::int32_t> coordinate(int v) const;
    // Address digits (a_1, ..., a_l) of a Bethe vertex; empty for the root.
    std::vector<int> bethe_address(int v) const;

    // Number of vertices with dist_to_root <= L; a prefix of the index range.
    int count_within(int L) const;
};

inline constexpr std::int64_t kDefaultVertexCap = 2'000'000;

RootedBall build_ball(const GraphFamily& family, int radius,
                      std::int64_t vertex_cap = kDefaultVertexCap);

// |Lambda_L|: closed form for Bethe and Z^1, breadth-first count otherwise.
std::int64_t ball_cardinality(const GraphFamily& family, int L,
                              std::int64_t vertex_cap = kDefaultVertexCap);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// |Lambda_{L+n}| / |Lambda_L| as a reduced fraction.
Rational growth_ratio(const GraphFamily& family, int L, int n,
                      std::int64_t vertex_cap = kDefaultVertexCap);

// Uniform growth function: t^(zeta/alpha) for lattices, (k-1)^t for Bethe.
struct GrowthFunction {
    GraphFamily family;
    double zeta = 1.0;
    double alpha = 1.0;

    double eval(double t) const;
    double inverse(double y) const;
};

// Edge list with a "# family=... M=... n=..." header, one "u v" per line.
void write_edge_list(const RootedBall& ball, std::ostream& os);

} // namespace dosg
