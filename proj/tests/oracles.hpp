#pragma once

// Slow reference implementations used only by the tests. They are written
// from the definitions, without reusing library internals.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "dyadic/dyad.hpp"
#include "dyadic/measures.hpp"

namespace oracle {

using Counts = std::array<std::uint64_t, 64>;

inline int cell(int x, int y, int p, int q, int r, int s) { return 32 * x + 16 * y + 8 * p + 4 * q + 2 * r + s; }

inline std::uint64_t C(const Counts& c, int x, int y, int p, int q, int r, int s) { return c[cell(x, y, p, q, r, s)]; }

// Measures as printed: nested loops over the free coordinates.
inline std::int64_t measure(const Counts& c, int m) {
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int d = 0; d < 2; ++d) {
                switch (m) {
                    case 1:  // y,q,s free
                        pos += C(c, 1, a, 1, b, 0, d);
                        neg += C(c, 0, a, 1, b, 0, d);
                        break;
                    case 2:
                        pos += C(c, 1, a, 0, b, 0, d);
                        neg += C(c, 0, a, 0, b, 0, d);
                        break;
                    case 3:  // y,p,r free
                        pos += C(c, 1, a, b, 1, d, 0);
                        neg += C(c, 0, a, b, 1, d, 0);
                        break;
                    case 4:
                        pos += C(c, 1, a, b, 0, d, 0);
                        neg += C(c, 0, a, b, 0, d, 0);
                        break;
                    default: break;
                }
            }
        }
    }
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            switch (m) {
                case 5:  // q,s free
                    pos += C(c, 1, 1, 1, a, 0, b);
                    neg += C(c, 1, 0, 1, a, 0, b);
                    break;
                case 6:
                    pos += C(c, 1, 1, 0, a, 0, b);
                    neg += C(c, 1, 0, 0, a, 0, b);
                    break;
                case 7:  // p,r free
                    pos += C(c, 1, 0, a, 1, b, 0);
                    neg += C(c, 0, 0, a, 1, b, 0);
                    break;
                case 8:
                    pos += C(c, 1, 0, a, 0, b, 0);
                    neg += C(c, 0, 0, a, 0, b, 0);
                    break;
                default: break;
            }
        }
    }
    return pos - neg;
}

struct Marginals {
    std::array<std::uint64_t, 4> n0{};
    std::array<std::uint64_t, 4> n1{};
    std::array<std::array<std::uint64_t, 4>, 4> n_pqrs{};
    std::array<std::array<std::array<std::uint64_t, 4>, 2>, 2> n0_group{};  // [x][y][pq]
    std::uint64_t total = 0;
};

inline Marginals marginals(const Counts& c) {
    Marginals m;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q)
                    for (int r = 0; r < 2; ++r)
                        for (int s = 0; s < 2; ++s) {
                            const auto v = C(c, x, y, p, q, r, s);
                            m.n0[2 * p + q] += v;
                            m.n1[2 * r + s] += v;
                            m.n_pqrs[2 * p + q][2 * r + s] += v;
                            m.n0_group[x][y][2 * p + q] += v;
                            m.total += v;
                        }
    return m;
}

// P0 by tallying each row separately; rows with no mass hold -1.
inline std::array<std::array<double, 4>, 4> transition_rows(const Counts& c) {
    std::array<std::array<double, 4>, 4> out{};
    for (int pq = 0; pq < 4; ++pq) {
        std::array<std::uint64_t, 4> tally{};
        std::uint64_t row = 0;
        for (int xy = 0; xy < 4; ++xy) {
            for (int rs = 0; rs < 4; ++rs) {
                const auto v = c[16 * xy + 4 * pq + rs];
                tally[rs] += v;
                row += v;
            }
        }
        for (int rs = 0; rs < 4; ++rs) {
            out[pq][rs] = row == 0 ? -1.0 : static_cast<double>(tally[rs]) / static_cast<double>(row);
        }
    }
    return out;
}

// Poisson-Binomial PMF by summing over every subset of successful trials.
inline std::vector<double> pb_subsets(const std::vector<double>& probs) {
    const std::size_t n = probs.size();
    std::vector<double> pmf(n + 1, 0.0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        double term = 1.0;
        int k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1) {
                term *= probs[i];
                ++k;
            } else {
                term *= 1.0 - probs[i];
            }
        }
        pmf[static_cast<std::size_t>(k)] += term;
    }
    return pmf;
}

// PMF of X - Y over all (x, y) pairs.
inline std::map<std::int64_t, double> difference(std::int64_t min_x, const std::vector<double>& fx, std::int64_t min_y,
                                                 const std::vector<double>& fy) {
    std::map<std::int64_t, double> out;
    for (std::size_t i = 0; i < fx.size(); ++i) {
        for (std::size_t j = 0; j < fy.size(); ++j) {
            const auto z = (min_x + static_cast<std::int64_t>(i)) - (min_y + static_cast<std::int64_t>(j));
            out[z] += fx[i] * fy[j];
        }
    }
    return out;
}

// Exact null distributions of all eight measures by enumerating every joint
// multinomial outcome of the groups of a small table, with P0 from
// transition_rows. Element m-1 holds measure m.
inline std::array<std::map<std::int64_t, double>, 8> enumerate_null_all(const Counts& observed) {
    const auto rows = transition_rows(observed);
    std::array<std::uint64_t, 16> mass{};
    for (int g = 0; g < 16; ++g)
        for (int rs = 0; rs < 4; ++rs) mass[g] += observed[4 * g + rs];

    std::array<double, 16> fact{};
    fact[0] = 1.0;
    for (int i = 1; i < 16; ++i) fact[i] = fact[i - 1] * i;

    std::array<std::map<std::int64_t, double>, 8> dist;
    Counts current{};
    std::function<void(int, double)> recurse = [&](int g, double prob) {
        if (g == 16) {
            for (int m = 1; m <= 8; ++m) dist[m - 1][measure(current, m)] += prob;
            return;
        }
        const auto n = mass[g];
        if (n == 0) {
            recurse(g + 1, prob);
            return;
        }
        const auto& row = rows[g & 3];
        for (std::uint64_t a = 0; a <= n; ++a)
            for (std::uint64_t b = 0; a + b <= n; ++b)
                for (std::uint64_t c = 0; a + b + c <= n; ++c) {
                    const std::uint64_t d = n - a - b - c;
                    const std::array<std::uint64_t, 4> k = {a, b, c, d};
                    double term = fact[n];
                    for (int rs = 0; rs < 4; ++rs) {
                        term /= fact[k[rs]];
                        term *= std::pow(row[rs], static_cast<double>(k[rs]));
                    }
                    if (term == 0.0) continue;
                    for (int rs = 0; rs < 4; ++rs) current[4 * g + rs] = k[rs];
                    recurse(g + 1, prob * term);
                    for (int rs = 0; rs < 4; ++rs) current[4 * g + rs] = 0;
                }
    };
    recurse(0, 1.0);
    return dist;
}

// One-sided inclusive tail in the direction of the deviation from the mean of
// an enumerated distribution; ties within 1e-9 relative use the upper tail.
struct Tail {
    double mean = 0.0;
    double p = 1.0;
};

inline Tail directional_tail(const std::map<std::int64_t, double>& dist, std::int64_t observed) {
    Tail out;
    for (const auto& [v, p] : dist) out.mean += static_cast<double>(v) * p;
    const double tol = 1e-9 * std::max(1.0, std::abs(out.mean));
    const bool lower = static_cast<double>(observed) < out.mean - tol;
    double tail = 0.0;
    for (const auto& [v, p] : dist) {
        if (lower ? v <= observed : v >= observed) tail += p;
    }
    out.p = std::min(1.0, tail);
    return out;
}

inline Counts counts_of(const dyadic::DyadTable& t) {
    Counts c{};
    for (int i = 0; i < 64; ++i) c[i] = t.counts()[i];
    return c;
}

inline dyadic::DyadTable table_of(const Counts& c) { return dyadic::DyadTable(c); }

// Table with `total` dyads scattered uniformly over the 64 cells.
inline Counts random_small_table(std::mt19937_64& gen, std::uint64_t total) {
    Counts c{};
    std::uniform_int_distribution<int> cell_dist(0, 63);
    for (std::uint64_t i = 0; i < total; ++i) ++c[cell_dist(gen)];
    return c;
}

// Table with independent counts in [0, max_count], about a third of them zero.
inline Counts random_table(std::mt19937_64& gen, std::uint64_t max_count) {
    Counts c{};
    std::uniform_int_distribution<std::uint64_t> count_dist(0, max_count);
    std::uniform_int_distribution<int> zero(0, 2);
    for (auto& v : c) v = zero(gen) == 0 ? 0 : count_dist(gen);
    return c;
}

}  // namespace oracle
