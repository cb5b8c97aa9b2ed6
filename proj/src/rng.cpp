#include <gid/rng.hpp>

#include <algorithm>

namespace gid {

std::vector<size_t> Rng::subset(size_t n, size_t m) {
    // Floyd's algorithm: m draws regardless of n.
    std::vector<size_t> out;
    out.reserve(m);
    for (size_t j = n - m; j < n; ++j) {
        size_t v = (size_t)below(j + 1);
        if (std::find(out.begin(), out.end(), v) != out.end())
            v = j;
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace gid
