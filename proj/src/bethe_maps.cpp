#include "dosg/bethe_maps.hpp"

#include <stdexcept>

namespace dosg {

bool valid_address(const BetheAddress& a, int k) {
    if (k < 3) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int lo = 1;
        const int hi = (i == 0) ? k : k - 1;
        if (a[i] < lo || a[i] > hi) return false;
    }
    return true;
}

void require_valid(const BetheAddress& a, int k) {
    if (!valid_address(a, k))
        throw std::invalid_argument("invalid Bethe address digits");
}

bool address_adjacent(const BetheAddress& a, const BetheAddress& b) {
    const auto [s, l] = a.size() < b.size() ? std::pair{&a, &b} : std::pair{&b, &a};
    if (l->size() != s->size() + 1) return false;
    for (std::size_t i = 0; i < s->size(); ++i)
        if ((*s)[i] != (*l)[i]) return false;
    return true;
}

BetheAddress tau1(const BetheAddress& a, int k) {
    require_valid(a, k);
    if (a.empty()) return {1};
    if (a[0] != k) {
        BetheAddress out;
        out.reserve(a.size() + 1);
        out.push_back(1);
        out.insert(out.end(), a.begin(), a.end());
        return out;
    }
    if (a.size() == 1) return {};
    BetheAddress out;
    out.reserve(a.size() - 1);
    out.push_back(a[1] + 1);
    out.insert(out.end(), a.begin() + 2, a.end());
    return out;
}

BetheAddress tau2(const BetheAddress& a, int k) {
    require_valid(a, k);
    BetheAddress out = a;
    if (out.empty()) return out;
    out[0] = (out[0] < k) ? out[0] + 1 : 1;
    for (std::size_t i = 1; i < out.size(); ++i)
        out[i] = (out[i] < k - 1) ? out[i] + 1 : 1;
    return out;
}

std::optional<std::pair<int, int>>
transitive_coordinates(const BetheAddress& a, int k, int max_level) {
    require_valid(a, k);
    const int level = static_cast<int>(a.size());
    if (level > max_level)
        throw std::runtime_error("transitive-coordinate search bound exceeded");
    if (level == 0) return std::pair{0, 0};

    BetheAddress probe(level, 1); // tau1^level(root)
    const int period = k * (k - 1);
    for (int d2 = 0; d2 < period; ++d2) {
        if (probe == a) return std::pair{level, d2};
        probe = tau2(probe, k);
    }
    return std::nullopt;
}

} // namespace dosg
