#include "schrowave/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace schrowave {

void write_state(std::ostream& os, const DenseVec& v) {
    char buf[96];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%lld %.17g %.17g\n", static_cast<long long>(i),
                      v[i].real(), v[i].imag());
        os << buf;
    }
}

DenseVec read_state(std::istream& is) {
    std::vector<cxd> entries;
    long long idx;
    double re, im;
    while (is >> idx >> re >> im) {
        if (idx != static_cast<long long>(entries.size()))
            throw std::runtime_error("read_state: non-contiguous index " + std::to_string(idx));
        entries.emplace_back(re, im);
    }
    DenseVec v(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) v[i] = entries[i];
    return v;
}

}  // namespace schrowave
