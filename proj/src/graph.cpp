#include "dosg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace dosg {

GraphFamily GraphFamily::zd(int d) {
    GraphFamily f;
    f.kind = FamilyKind::LatticeZd;
    f.dim = d;
    f.validate();
    return f;
}

GraphFamily GraphFamily::hexagonal() {
    GraphFamily f;
    f.kind = FamilyKind::Hexagonal;
    return f;
}

GraphFamily GraphFamily::triangular() {
    GraphFamily f;
    f.kind = FamilyKind::Triangular;
    return f;
}

GraphFamily GraphFamily::bethe(int k) {
    GraphFamily f;
    f.kind = FamilyKind::Bethe;
    f.k = k;
    f.validate();
    return f;
}

void GraphFamily::validate() const {
    if (kind == FamilyKind::LatticeZd && dim < 1)
        throw std::invalid_argument("LatticeZd requires d >= 1");
    if (kind == FamilyKind::Bethe && k < 3)
        throw std::invalid_argument("Bethe requires coordination number k >= 3");
}

double GraphFamily::spectral_radius() const {
    switch (kind) {
    case FamilyKind::LatticeZd: return 2.0 * dim;
    case FamilyKind::Hexagonal: return 3.0;
    case FamilyKind::Triangular: return 6.0;
    case FamilyKind::Bethe: return 2.0 * std::sqrt(double(k - 1));
    }
    return 0.0;
}

std::string GraphFamily::name() const {
    switch (kind) {
    case FamilyKind::LatticeZd: return "zd" + std::to_string(dim);
    case FamilyKind::Hexagonal: return "hex";
    case FamilyKind::Triangular: return "tri";
    case FamilyKind::Bethe: return "bethe" + std::to_string(k);
    }
    return "?";
}

std::span<const std::int32_t> RootedBall::coordinate(int v) const {
    const int d = family.coord_dim();
    return {coords.data() + static_cast<std::size_t>(v) * d,
            static_cast<std::size_t>(d)};
}

std::vector<int> RootedBall::bethe_address(int v) const {
    std::vector<int> a;
    while (v != root) {
        a.push_back(digit[v]);
        v = parent[v];
    }
    std::reverse(a.begin(), a.end());
    return a;
}

int RootedBall::count_within(int L) const {
    // dist is nondecreasing in the BFS index order
    auto it = std::upper_bound(dist.begin(), dist.end(), L);
    return static_cast<int>(it - dist.begin());
}

namespace {

// Canonical neighbor enumeration. Lattices: +e1, -e1, ..., +ed, -ed;
// triangular adds the (+1,-1)/(-1,+1) diagonal pair; hexagonal is the
// brick-wall embedding in Z^2 where (x,y) bonds vertically upward when
// x+y is even and downward when odd.
void lattice_neighbors(const GraphFamily& fam, std::span<const std::int32_t> c,
                       std::vector<std::vector<std::int32_t>>& out) {
    out.clear();
    const int d = fam.coord_dim();
    auto push = [&](std::initializer_list<std::int32_t> delta) {
        std::vector<std::int32_t> w(c.begin(), c.end());
        int i = 0;
        for (auto dv : delta) w[i++] += dv;
        out.push_back(std::move(w));
    };
    switch (fam.kind) {
    case FamilyKind::LatticeZd:
        for (int i = 0; i < d; ++i) {
            std::vector<std::int32_t> w(c.begin(), c.end());
            w[i] += 1;
            out.push_back(w);
            w[i] -= 2;
            out.push_back(std::move(w));
        }
        break;
    case FamilyKind::Triangular:
        push({+1, 0});
        push({-1, 0});
        push({0, +1});
        push({0, -1});
        push({+1, -1});
        push({-1, +1});
        break;
    case FamilyKind::Hexagonal: {
        push({+1, 0});
        push({-1, 0});
        const std::int32_t up = ((c[0] + c[1]) % 2 == 0) ? +1 : -1;
        push({0, up});
        break;
    }
    case FamilyKind::Bethe:
        break;
    }
}

std::uint64_t pack_coord(std::span<const std::int32_t> c) {
    // coordinates fit in 21 bits each for every ball under the vertex cap
    std::uint64_t key = 0;
    for (auto x : c) key = (key << 21) | (static_cast<std::uint64_t>(x + (1 << 20)) & 0x1FFFFF);
    return key;
}

RootedBall build_lattice_ball(const GraphFamily& fam, int M, std::int64_t cap) {
    const int d = fam.coord_dim();
    RootedBall b;
    b.family = fam;
    b.radius = M;

    std::unordered_map<std::uint64_t, std::int32_t> index;
    index.reserve(1024);
    std::vector<std::int32_t> coords;
    std::vector<std::int32_t> dist;

    std::vector<std::int32_t> origin(d, 0);
    index[pack_coord(origin)] = 0;
    coords.insert(coords.end(), origin.begin(), origin.end());
    dist.push_back(0);

    std::vector<std::vector<std::int32_t>> nbrs;
    for (std::size_t head = 0; head < dist.size(); ++head) {
        if (dist[head] == M) continue;
        std::span<const std::int32_t> c{coords.data() + head * d,
                                        static_cast<std::size_t>(d)};
        std::vector<std::int32_t> cc(c.begin(), c.end());
        lattice_neighbors(fam, cc, nbrs);
        for (auto& w : nbrs) {
            auto key = pack_coord(w);
            if (index.emplace(key, static_cast<std::int32_t>(dist.size())).second) {
                if (static_cast<std::int64_t>(dist.size()) + 1 > cap)
                    throw std::length_error("ball exceeds the vertex cap");
                coords.insert(coords.end(), w.begin(), w.end());
                dist.push_back(dist[head] + 1);
            }
        }
    }

    b.n = static_cast<int>(dist.size());
    b.coords = std::move(coords);
    b.dist = std::move(dist);

    b.adj_offsets.assign(b.n + 1, 0);
    std::vector<std::int32_t> flat;
    flat.reserve(static_cast<std::size_t>(b.n) * 2 * d);
    for (int v = 0; v < b.n; ++v) {
        std::span<const std::int32_t> c{b.coords.data() +
                                            static_cast<std::size_t>(v) * d,
                                        static_cast<std::size_t>(d)};
        std::vector<std::int32_t> cc(c.begin(), c.end());
        lattice_neighbors(fam, cc, nbrs);
        for (auto& w : nbrs) {
            auto it = index.find(pack_coord(w));
            if (it != index.end()) flat.push_back(it->second);
        }
        b.adj_offsets[v + 1] = static_cast<std::int32_t>(flat.size());
    }
    b.adj = std::move(flat);
    return b;
}

RootedBall build_bethe_ball(const GraphFamily& fam, int M, std::int64_t cap) {
    const int k = fam.k;
    RootedBall b;
    b.family = fam;
    b.radius = M;
    b.dist.push_back(0);
    b.parent.push_back(-1);
    b.digit.push_back(0);

    // level-by-level construction; children enumerated in digit order
    for (std::size_t head = 0; head < b.dist.size(); ++head) {
        if (b.dist[head] == M) continue;
        const int nchild = (head == 0) ? k : k - 1;
        for (int a = 1; a <= nchild; ++a) {
            if (static_cast<std::int64_t>(b.dist.size()) + 1 > cap)
                throw std::length_error("ball exceeds the vertex cap");
            b.dist.push_back(b.dist[head] + 1);
            b.parent.push_back(static_cast<std::int32_t>(head));
            b.digit.push_back(a);
        }
    }
    b.n = static_cast<int>(b.dist.size());

    // adjacency: parent first, then children in digit order
    std::vector<std::vector<std::int32_t>> ch(b.n);
    for (int v = 1; v < b.n; ++v) ch[b.parent[v]].push_back(v);
    b.adj_offsets.assign(b.n + 1, 0);
    for (int v = 0; v < b.n; ++v) {
        if (v != 0) b.adj.push_back(b.parent[v]);
        for (auto c : ch[v]) b.adj.push_back(c);
        b.adj_offsets[v + 1] = static_cast<std::int32_t>(b.adj.size());
    }
    return b;
}

std::int64_t bethe_cardinality_checked(int k, int L) {
    // 1 + k ((k-1)^L - 1) / (k-2)
    __int128 pw = 1;
    for (int i = 0; i < L; ++i) {
        pw *= (k - 1);
        if (pw > static_cast<__int128>(INT64_MAX))
            throw std::overflow_error("Bethe cardinality overflows 64-bit range");
    }
    __int128 r = 1 + static_cast<__int128>(k) * (pw - 1) / (k - 2);
    if (r > static_cast<__int128>(INT64_MAX))
        throw std::overflow_error("Bethe cardinality overflows 64-bit range");
    return static_cast<std::int64_t>(r);
}

// count-only BFS, no adjacency retained
std::int64_t bfs_count(const GraphFamily& fam, int M, std::int64_t cap) {
    const int d = fam.coord_dim();
    std::unordered_map<std::uint64_t, int> seen;
    std::vector<std::vector<std::int32_t>> frontier{std::vector<std::int32_t>(d, 0)};
    seen[pack_coord(frontier[0])] = 0;
    std::int64_t total = 1;
    std::vector<std::vector<std::int32_t>> nbrs;
    for (int level = 0; level < M && !frontier.empty(); ++level) {
        std::vector<std::vector<std::int32_t>> next;
        for (auto& c : frontier) {
            lattice_neighbors(fam, c, nbrs);
            for (auto& w : nbrs) {
                if (seen.emplace(pack_coord(w), 0).second) {
                    if (++total > cap)
                        throw std::length_error("ball exceeds the vertex cap");
                    next.push_back(w);
                }
            }
        }
        frontier = std::move(next);
    }
    return total;
}

} // namespace

RootedBall build_ball(const GraphFamily& family, int radius, std::int64_t cap) {
    family.validate();
    if (radius < 0) throw std::invalid_argument("radius must be >= 0");
    if (family.kind == FamilyKind::Bethe)
        return build_bethe_ball(family, radius, cap);
    return build_lattice_ball(family, radius, cap);
}

std::int64_t ball_cardinality(const GraphFamily& family, int L, std::int64_t cap) {
    family.validate();
    if (L < 0) throw std::invalid_argument("L must be >= 0");
    if (L == 0) return 1;
    switch (family.kind) {
    case FamilyKind::Bethe:
        return bethe_cardinality_checked(family.k, L);
    case FamilyKind::LatticeZd:
        if (family.dim == 1) return 2 * static_cast<std::int64_t>(L) + 1;
        return bfs_count(family, L, cap);
    default:
        return bfs_count(family, L, cap);
    }
}

Rational growth_ratio(const GraphFamily& family, int L, int n, std::int64_t cap) {
    if (L < 1 || n < 1) throw std::invalid_argument("growth_ratio requires L, n >= 1");
    Rational r;
    r.num = ball_cardinality(family, L + n, cap);
    r.den = ball_cardinality(family, L, cap);
    const std::int64_t g = std::gcd(r.num, r.den);
    r.num /= g;
    r.den /= g;
    return r;
}

double GrowthFunction::eval(double t) const {
    if (t < 1.0) throw std::invalid_argument("growth function domain is [1, inf)");
    if (family.kind == FamilyKind::Bethe)
        return std::pow(double(family.k - 1), t);
    if (zeta <= 0.0 || alpha <= 0.0)
        throw std::invalid_argument("growth exponents must be positive");
    return std::pow(t, zeta / alpha);
}

double GrowthFunction::inverse(double y) const {
    if (y < 1.0) throw std::invalid_argument("growth inverse domain is [1, inf)");
    if (family.kind == FamilyKind::Bethe)
        return std::log(y) / std::log(double(family.k - 1));
    return std::pow(y, alpha / zeta);
}

void write_edge_list(const RootedBall& ball, std::ostream& os) {
    os << "# family=" << ball.family.name() << " M=" << ball.radius
       << " n=" << ball.n << "\n";
    for (int v = 0; v < ball.n; ++v)
        for (auto w : ball.neighbors(v))
            if (v < w) os << v << " " << w << "\n";
}

} // namespace dosg
