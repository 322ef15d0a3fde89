#include "dosg/sym_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dosg {

namespace {

// Householder reduction of a symmetric row-major matrix to tridiagonal form.
// On exit d holds the diagonal and e[1..n-1] the subdiagonal. When
// accumulate is set, `a` is overwritten with the orthogonal matrix Q such
// that A = Q T Q^T.
void householder_tridiag(std::vector<double>& a, int n, std::vector<double>& d,
                         std::vector<double>& e, bool accumulate) {
    auto A = [&](int i, int j) -> double& {
        return a[static_cast<std::size_t>(i) * n + j];
    };
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::abs(A(i, k));
            if (scale == 0.0) {
                e[i] = A(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    A(i, k) /= scale;
                    h += A(i, k) * A(i, k);
                }
                double f = A(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                A(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    if (accumulate) A(j, i) = A(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
                    for (int k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
                    e[j] = g / h;
                    f += e[j] * A(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = A(i, j);
                    const double ej = e[j] - hh * f;
                    e[j] = ej;
                    for (int k = 0; k <= j; ++k)
                        A(j, k) -= f * e[k] + ej * A(i, k);
                }
            }
        } else {
            e[i] = A(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        const int l = i - 1;
        if (accumulate) {
            if (d[i] != 0.0) {
                for (int j = 0; j <= l; ++j) {
                    double g = 0.0;
                    for (int k = 0; k <= l; ++k) g += A(i, k) * A(k, j);
                    for (int k = 0; k <= l; ++k) A(k, j) -= g * A(k, i);
                }
            }
            d[i] = A(i, i);
            A(i, i) = 1.0;
            for (int j = 0; j <= l; ++j) A(j, i) = A(i, j) = 0.0;
        } else {
            d[i] = A(i, i);
        }
    }
}

} // namespace

void tridiag_ql(std::vector<double>& d, std::vector<double>& e_in,
                std::vector<double>* z, int max_sweeps) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    std::vector<double> e(n, 0.0);
    for (int i = 1; i < n; ++i) e[i - 1] = e_in[i - 1];
    e[n - 1] = 0.0;

    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == max_sweeps)
                    throw std::runtime_error("QL iteration budget exceeded");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        double* zz = z->data();
                        for (int k = 0; k < n; ++k) {
                            double* row = zz + static_cast<std::size_t>(k) * n;
                            f = row[i + 1];
                            row[i + 1] = s * row[i] + c * f;
                            row[i] = c * row[i] - s * f;
                        }
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

namespace {

void sort_ascending(SpectralDecomposition& sd) {
    const int n = sd.n;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return sd.eigenvalues[i] < sd.eigenvalues[j];
    });
    std::vector<double> ev(n);
    for (int j = 0; j < n; ++j) ev[j] = sd.eigenvalues[order[j]];
    sd.eigenvalues = std::move(ev);
    if (sd.has_vectors()) {
        std::vector<double> v(sd.vectors.size());
        for (int r = 0; r < n; ++r)
            for (int j = 0; j < n; ++j)
                v[static_cast<std::size_t>(r) * n + j] =
                    sd.vectors[static_cast<std::size_t>(r) * n + order[j]];
        sd.vectors = std::move(v);
    }
}

} // namespace

SpectralDecomposition sym_eigen(std::vector<double> a, int n,
                                const EigenOptions& opts) {
    if (n < 0 || a.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("matrix size mismatch");
    if (n > opts.dense_cap)
        throw std::length_error("matrix exceeds the dense eigensolver cap");

    SpectralDecomposition sd;
    sd.n = n;
    if (n == 0) return sd;

    std::vector<double> d(n, 0.0), e(n, 0.0);
    householder_tridiag(a, n, d, e, opts.want_vectors);

    std::vector<double> off(n > 1 ? n - 1 : 0);
    for (int i = 1; i < n; ++i) off[i - 1] = e[i];
    if (opts.want_vectors) {
        tridiag_ql(d, off, &a, opts.max_sweeps);
        sd.vectors = std::move(a);
    } else {
        tridiag_ql(d, off, nullptr, opts.max_sweeps);
    }
    sd.eigenvalues = std::move(d);
    sort_ascending(sd);
    return sd;
}

} // namespace dosg
