#include <algorithm>
#include <functional>
#include <numeric>

#include "ymsym/errors.hpp"
#include "ymsym/fock.hpp"

namespace ymsym {

std::int64_t FockBasis::dimension(int m, int n_max) {
    // C(n_max + m, m)
    std::int64_t dim = 1;
    for (int i = 1; i <= m; ++i) {
        dim = dim * (n_max + i) / i;
        if (dim < 0 || dim > (std::int64_t{1} << 62)) return -1;  // overflow guard
    }
    return dim;
}

FockBasis::FockBasis(int m, int n_max) : m_m(m), m_n_max(n_max) {
    m_states.reserve(static_cast<std::size_t>(dimension(m, n_max)));
    std::vector<int> occ(m, 0);
    const std::function<void(int, int)> enumerate = [&](int k, int remaining) {
        if (k == m) {
            m_states.push_back(occ);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            occ[k] = v;
            enumerate(k + 1, remaining - v);
        }
        occ[k] = 0;
    };
    enumerate(0, n_max);
    // grade by total occupation, lexicographic within a grade
    std::sort(m_states.begin(), m_states.end(), [](const auto& a, const auto& b) {
        const int ta = std::accumulate(a.begin(), a.end(), 0);
        const int tb = std::accumulate(b.begin(), b.end(), 0);
        if (ta != tb) return ta < tb;
        return a < b;
    });
}

std::shared_ptr<const FockBasis> FockBasis::make(int m, int n_max,
                                                 std::int64_t state_budget) {
    if (m < 1) throw ConfigError("basis needs m >= 1 oscillators");
    if (n_max < 0) throw ConfigError("basis needs n_max >= 0");
    const std::int64_t dim = dimension(m, n_max);
    if (dim < 0 || dim > state_budget)
        throw BudgetError("basis with m=" + std::to_string(m) +
                          ", n_max=" + std::to_string(n_max) + " has " +
                          (dim < 0 ? std::string("> 2^62") : std::to_string(dim)) +
                          " states, budget is " + std::to_string(state_budget));
    auto basis = std::shared_ptr<FockBasis>(new FockBasis(m, n_max));
    return basis;
}

int FockBasis::total_occupation(std::int64_t index) const {
    const auto& s = m_states[index];
    return std::accumulate(s.begin(), s.end(), 0);
}

std::int64_t FockBasis::index_of(const std::vector<int>& occ) const {
    const int total = std::accumulate(occ.begin(), occ.end(), 0);
    if (total > m_n_max) return -1;
    auto cmp = [](const std::vector<int>& a, const std::vector<int>& b) {
        const int ta = std::accumulate(a.begin(), a.end(), 0);
        const int tb = std::accumulate(b.begin(), b.end(), 0);
        if (ta != tb) return ta < tb;
        return a < b;
    };
    const auto it = std::lower_bound(m_states.begin(), m_states.end(), occ, cmp);
    if (it == m_states.end() || *it != occ) return -1;
    return it - m_states.begin();
}

}  // namespace ymsym
