#include "dyadic/null_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

std::string pair_name(int pq) {
    return "(" + std::to_string(pq >> 1) + "," + std::to_string(pq & 1) + ")";
}

std::string group_name(int g) {
    return "(x,y,p,q)=(" + std::to_string((g >> 3) & 1) + "," + std::to_string((g >> 2) & 1) + "," +
           std::to_string((g >> 1) & 1) + "," + std::to_string(g & 1) + ")";
}

}  // namespace

NullModel::NullModel(const TransitionMatrix& p0, const std::array<bool, 4>& row_defined,
                     const std::array<Count, 16>& masses)
    : p0_(p0), row_defined_(row_defined), masses_(masses) {
    for (int pq = 0; pq < 4; ++pq) {
        if (!row_defined_[pq]) {
            p0_[pq] = {0.0, 0.0, 0.0, 0.0};
            continue;
        }
        double sum = 0.0;
        for (double v : p0_[pq]) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw InputError("transition row " + pair_name(pq) + " has an entry outside [0,1]");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw InputError("transition row " + pair_name(pq) + " sums to " + std::to_string(sum));
        }
    }
}

Count NullModel::total_mass() const {
    Count total = 0;
    for (Count m : masses_) total += m;
    return total;
}

bool NullModel::sampleable() const {
    for (int g = 0; g < 16; ++g) {
        if (masses_[g] > 0 && !row_defined_[g & 3]) return false;
    }
    return true;
}

void NullModel::require_sampleable() const {
    for (int g = 0; g < 16; ++g) {
        if (masses_[g] > 0 && !row_defined_[g & 3]) {
            throw InputError("group " + group_name(g) + " has mass " + std::to_string(masses_[g]) +
                             " but transition row " + pair_name(g & 3) + " is undefined");
        }
    }
}

NullModel fit(const DyadTable& table) {
    const MarginalSet m = marginals(table);
    NullModel model;
    for (int pq = 0; pq < 4; ++pq) {
        const Count row_total = m.n0[pq];
        model.row_defined_[pq] = row_total > 0;
        if (row_total == 0) continue;
        for (int rs = 0; rs < 4; ++rs) {
            model.p0_[pq][rs] =
                static_cast<double>(m.n_pqrs[4 * pq + rs]) / static_cast<double>(row_total);
        }
    }
    model.masses_ = m.n0_group;
    return model;
}

NullSampler::NullSampler(const NullModel& model) {
    model.require_sampleable();
    for (int g = 0; g < 16; ++g) {
        if (model.mass(g) == 0) continue;
        Group group{g, model.mass(g), {}, {}};
        double acc = 0.0;
        for (int rs = 0; rs < 4; ++rs) {
            group.probs[rs] = model.probability(g & 3, rs);
            acc += group.probs[rs];
            group.cumulative[rs] = acc;
        }
        // Outcomes past the last positive-probability column are unreachable.
        int last = 3;
        while (last > 0 && group.probs[last] == 0.0) --last;
        for (int rs = last; rs < 4; ++rs) group.cumulative[rs] = 1.0;
        groups_.push_back(group);
    }
}

DyadTable NullSampler::draw(Rng& rng) const {
    std::array<Count, 64> counts{};
    for (const auto& group : groups_) {
        const std::size_t base = static_cast<std::size_t>(group.index) << 2;
        if (group.mass <= kPerDyadLimit) {
            for (Count i = 0; i < group.mass; ++i) {
                counts[base + rng.categorical(group.cumulative)] += 1;
            }
            continue;
        }
        Count remaining = group.mass;
        for (int rs = 0; rs < 3 && remaining > 0; ++rs) {
            double tail = 0.0;
            for (int j = rs; j < 4; ++j) tail += group.probs[j];
            const double conditional = tail > 0.0 ? std::min(1.0, group.probs[rs] / tail) : 0.0;
            const Count k = rng.binomial(remaining, conditional);
            counts[base + static_cast<std::size_t>(rs)] += k;
            remaining -= k;
        }
        counts[base + 3] += remaining;
    }
    return DyadTable(counts);
}

NullSample sample(const NullModel& model, std::uint64_t seed) {
    Rng rng(seed);
    return NullSample{NullSampler(model).draw(rng)};
}

double group_event_probability(const NullModel& model, int p, int q, OutcomeSet outcomes) {
    const int pq = pair_index(p, q);
    if (!model.row_defined(pq)) {
        throw InputError("transition row " + pair_name(pq) + " is undefined");
    }
    double sum = 0.0;
    for (int rs = 0; rs < 4; ++rs) {
        if (outcomes.contains(rs)) sum += model.probability(pq, rs);
    }
    return sum;
}

}  // namespace dyadic
