#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "swipegan/matrix.hpp"
#include "swipegan/rng.hpp"

namespace swipegan {

// Central-difference check of analytic gradients on a seeded random subsample
// of coordinates (all coordinates when there are fewer than min_coords).
// Returns the max of |a - n| / max(1e-8, |a| + |n|).
inline double gradient_check(const std::function<double()>& loss,
                             const std::vector<Matrix*>& params,
                             const std::vector<const Matrix*>& analytic,
                             double eps = 1e-5, std::size_t min_coords = 200,
                             std::uint64_t seed = 0) {
    std::size_t total = 0;
    for (const Matrix* p : params) total += p->size();

    std::vector<std::pair<std::size_t, std::size_t>> coords;  // (param index, flat index)
    if (total <= min_coords) {
        for (std::size_t i = 0; i < params.size(); ++i)
            for (std::size_t k = 0; k < params[i]->size(); ++k) coords.emplace_back(i, k);
    } else {
        Rng rng(derive_seed(seed, "gradcheck"));
        for (std::size_t n = 0; n < min_coords; ++n) {
            std::size_t flat = rng.index(total);
            std::size_t i = 0;
            while (flat >= params[i]->size()) flat -= params[i]->size(), ++i;
            coords.emplace_back(i, flat);
        }
    }

    double worst = 0.0;
    for (auto [i, k] : coords) {
        double& x = params[i]->v[k];
        const double saved = x;
        x = saved + eps;
        const double up = loss();
        x = saved - eps;
        const double down = loss();
        x = saved;
        const double numeric = (up - down) / (2.0 * eps);
        const double a = analytic[i]->v[k];
        const double err = std::fabs(a - numeric) / std::max(1e-8, std::fabs(a) + std::fabs(numeric));
        worst = std::max(worst, err);
    }
    return worst;
}

}  // namespace swipegan
