#include "dosg/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dosg {

double Hamiltonian::potential_sup() const {
    double m = 0.0;
    for (double v : diagonal) m = std::max(m, std::abs(v));
    return m;
}

double Hamiltonian::spectral_bound() const {
    return ball->family.spectral_radius() + potential_sup();
}

double Hamiltonian::gershgorin_bound() const {
    double m = 0.0;
    for (int v = 0; v < n(); ++v)
        m = std::max(m, ball->degree(v) + std::abs(diagonal[v]));
    return m;
}

Hamiltonian assemble(std::shared_ptr<const RootedBall> ball,
                     std::vector<double> potential) {
    if (!ball) throw std::invalid_argument("null ball");
    if (static_cast<int>(potential.size()) != ball->n)
        throw std::invalid_argument("potential length != vertex count");
    return Hamiltonian{std::move(ball), std::move(potential)};
}

void matvec(const Hamiltonian& h, const std::vector<double>& x,
            std::vector<double>& y) {
    const int n = h.n();
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("matvec length mismatch");
    y.assign(n, 0.0);
    const auto& b = *h.ball;
    for (int v = 0; v < n; ++v) {
        double s = h.diagonal[v] * x[v];
        for (auto w : b.neighbors(v)) s += x[w];
        y[v] = s;
    }
}

std::vector<double> matvec(const Hamiltonian& h, const std::vector<double>& x) {
    std::vector<double> y;
    matvec(h, x, y);
    return y;
}

Hamiltonian restrict_ball(const Hamiltonian& h, int L) {
    const auto& b = *h.ball;
    if (L < 0 || L > b.radius)
        throw std::out_of_range("restriction radius out of range");
    if (L == b.radius) return h;

    const int m = b.count_within(L);
    auto sub = std::make_shared<RootedBall>();
    sub->family = b.family;
    sub->radius = L;
    sub->n = m;
    sub->root = b.root;
    sub->dist.assign(b.dist.begin(), b.dist.begin() + m);
    if (!b.coords.empty()) {
        const int d = b.family.coord_dim();
        sub->coords.assign(b.coords.begin(), b.coords.begin() + static_cast<std::size_t>(m) * d);
    }
    if (!b.parent.empty()) {
        sub->parent.assign(b.parent.begin(), b.parent.begin() + m);
        sub->digit.assign(b.digit.begin(), b.digit.begin() + m);
    }
    sub->adj_offsets.assign(m + 1, 0);
    for (int v = 0; v < m; ++v) {
        for (auto w : b.neighbors(v))
            if (w < m) sub->adj.push_back(w);
        sub->adj_offsets[v + 1] = static_cast<std::int32_t>(sub->adj.size());
    }
    return Hamiltonian{std::move(sub),
                       {h.diagonal.begin(), h.diagonal.begin() + m}};
}

std::vector<double> to_dense(const Hamiltonian& h) {
    const int n = h.n();
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int v = 0; v < n; ++v) {
        a[static_cast<std::size_t>(v) * n + v] = h.diagonal[v];
        for (auto w : h.ball->neighbors(v))
            a[static_cast<std::size_t>(v) * n + w] = 1.0;
    }
    return a;
}

namespace {

// A path graph is tridiagonal once vertices are listed along the path.
bool path_order(const RootedBall& b, std::vector<int>& order) {
    const int n = b.n;
    if (n == 1) {
        order = {0};
        return true;
    }
    int endpoints = 0, start = -1;
    for (int v = 0; v < n; ++v) {
        const int deg = b.degree(v);
        if (deg > 2) return false;
        if (deg <= 1) {
            ++endpoints;
            if (start < 0) start = v;
        }
    }
    if (endpoints != 2 || start < 0) return false;
    order.clear();
    order.reserve(n);
    int prev = -1, cur = start;
    while (true) {
        order.push_back(cur);
        int next = -1;
        for (auto w : b.neighbors(cur))
            if (w != prev) next = w;
        if (next < 0) break;
        prev = cur;
        cur = next;
    }
    return static_cast<int>(order.size()) == n;
}

} // namespace

SpectralDecomposition eig(const Hamiltonian& h, bool want_vectors,
                          const EigenOptions& opts_in) {
    EigenOptions opts = opts_in;
    opts.want_vectors = want_vectors;
    const int n = h.n();
    if (n > opts.dense_cap)
        throw std::length_error("Hamiltonian exceeds the dense eigensolver cap");

    std::vector<int> order;
    if (path_order(*h.ball, order)) {
        std::vector<double> d(n), off(n > 1 ? n - 1 : 0, 1.0);
        for (int i = 0; i < n; ++i) d[i] = h.diagonal[order[i]];
        SpectralDecomposition sd;
        sd.n = n;
        if (want_vectors) {
            std::vector<double> z(static_cast<std::size_t>(n) * n, 0.0);
            for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i) * n + i] = 1.0;
            tridiag_ql(d, off, &z, opts.max_sweeps);
            // undo the path permutation of the rows
            sd.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    sd.vectors[static_cast<std::size_t>(order[i]) * n + j] =
                        z[static_cast<std::size_t>(i) * n + j];
        } else {
            tridiag_ql(d, off, nullptr, opts.max_sweeps);
        }
        sd.eigenvalues = std::move(d);
        // ascending order with matching column permutation
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::stable_sort(perm.begin(), perm.end(), [&](int a, int c) {
            return sd.eigenvalues[a] < sd.eigenvalues[c];
        });
        std::vector<double> ev(n);
        for (int j = 0; j < n; ++j) ev[j] = sd.eigenvalues[perm[j]];
        sd.eigenvalues = std::move(ev);
        if (want_vectors) {
            std::vector<double> v(sd.vectors.size());
            for (int r = 0; r < n; ++r)
                for (int j = 0; j < n; ++j)
                    v[static_cast<std::size_t>(r) * n + j] =
                        sd.vectors[static_cast<std::size_t>(r) * n + perm[j]];
            sd.vectors = std::move(v);
        }
        return sd;
    }
    return sym_eigen(to_dense(h), n, opts);
}

} // namespace dosg
