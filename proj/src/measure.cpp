#include "dosg/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dosg {

DiscreteMeasure DiscreteMeasure::from_atoms(std::vector<double> pos,
                                            std::vector<double> w,
                                            double merge_width) {
    if (pos.size() != w.size() || pos.empty())
        throw std::invalid_argument("measure needs matching atoms and weights");
    std::vector<std::size_t> order(pos.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });

    DiscreteMeasure m;
    for (auto i : order) {
        if (w[i] <= 0.0) throw std::invalid_argument("weights must be positive");
        if (!m.pos.empty() && pos[i] - m.pos.back() <= merge_width) {
            // merged position: weight-averaged so mass moves by < merge_width
            const double tw = m.w.back() + w[i];
            m.pos.back() = (m.pos.back() * m.w.back() + pos[i] * w[i]) / tw;
            m.w.back() = tw;
        } else {
            m.pos.push_back(pos[i]);
            m.w.push_back(w[i]);
        }
    }
    const double total = std::accumulate(m.w.begin(), m.w.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("weights must sum to 1");
    m.carrier = std::max(std::abs(m.pos.front()), std::abs(m.pos.back()));
    return m;
}

DiscreteMeasure DiscreteMeasure::point(double x) {
    return from_atoms({x}, {1.0});
}

DiscreteMeasure DiscreteMeasure::from_eigenvalues(std::vector<double> evals) {
    const std::size_t n = evals.size();
    return from_atoms(std::move(evals), std::vector<double>(n, 1.0 / double(n)));
}

DiscreteMeasure
DiscreteMeasure::from_weighted_eigenvalues(std::vector<double> evals,
                                           std::vector<double> weights) {
    // drop numerically zero weights, renormalize the 1e-12 dust
    std::vector<double> p, w;
    double total = 0.0;
    for (std::size_t i = 0; i < evals.size(); ++i) total += weights[i];
    for (std::size_t i = 0; i < evals.size(); ++i) {
        if (weights[i] > 1e-15) {
            p.push_back(evals[i]);
            w.push_back(weights[i] / total);
        }
    }
    return from_atoms(std::move(p), std::move(w));
}

double DiscreteMeasure::cdf(double t) const {
    double c = 0.0;
    for (std::size_t i = 0; i < pos.size() && pos[i] <= t; ++i) c += w[i];
    return c;
}

double DiscreteMeasure::quantile(double u) const {
    if (u < 0.0 || u > 1.0) throw std::domain_error("quantile needs u in [0,1]");
    double c = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        c += w[i];
        if (c >= u) return pos[i];
    }
    return pos.back();
}

double DiscreteMeasure::mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) s += pos[i] * w[i];
    return s;
}

double DiscreteMeasure::expect(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) s += f(pos[i]) * w[i];
    return s;
}

DiscreteMeasure DiscreteMeasure::coarsened(double width) const {
    auto p = pos;
    auto ww = w;
    return from_atoms(std::move(p), std::move(ww), width);
}

void DiscreteMeasure::write_csv(std::ostream& os) const {
    os << "position,weight\n";
    char buf[64];
    for (std::size_t i = 0; i < pos.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", pos[i], w[i]);
        os << buf;
    }
}

DiscreteMeasure DiscreteMeasure::read_csv(std::istream& is) {
    std::string line;
    std::vector<double> p, w;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("position", 0) == 0)
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, y;
        if (ss >> x >> y) {
            p.push_back(x);
            w.push_back(y);
        }
    }
    return from_atoms(std::move(p), std::move(w));
}

} // namespace dosg
