#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace dosg {

// Discrete probability measure: strictly increasing atom positions with
// positive weights summing to 1 (within 1e-12).
struct DiscreteMeasure {
    std::vector<double> pos;
    std::vector<double> w;
    double carrier = 0.0; // atoms lie within [-carrier, carrier]

    static DiscreteMeasure from_atoms(std::vector<double> pos,
                                      std::vector<double> w,
                                      double merge_width = 0.0);
    static DiscreteMeasure point(double x);
    // Equal weights 1/n at the given (not necessarily sorted) points.
    static DiscreteMeasure from_eigenvalues(std::vector<double> evals);
    static DiscreteMeasure from_weighted_eigenvalues(std::vector<double> evals,
                                                     std::vector<double> weights);

    std::size_t size() const { return pos.size(); }
    double cdf(double t) const;
    double quantile(double u) const;
    double mean() const;
    double expect(const std::function<double(double)>& f) const;

    // Merges atoms closer than `width`; perturbs d_w / d_KRW by at most width.
    DiscreteMeasure coarsened(double width) const;

    void write_csv(std::ostream& os) const;
    static DiscreteMeasure read_csv(std::istream& is);
};

} // namespace dosg
