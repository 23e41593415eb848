#pragma once

#include <random>

namespace freelat {

/// Per-step turn angles of a random piecewise geodesic.
template <class Rng>
std::vector<double> sample_turns(const PathShape& shape, Rng& rng) {
    std::uniform_int_distribution<int> length(shape.min_segment, shape.max_segment);
    std::uniform_real_distribution<double> turn(-shape.max_turn, shape.max_turn);
    std::uniform_real_distribution<double> sharp(2.6, 3.1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> turns;
    turns.reserve(shape.points);
    while (turns.size() + 1 < shape.points) {
        double t = turns.empty() ? 0.0 : turn(rng);
        if (!turns.empty() && unit(rng) < shape.sharp_turn_rate)
            t = unit(rng) < 0.5 ? sharp(rng) : -sharp(rng);
        const int len = length(rng);
        for (int i = 0; i < len && turns.size() + 1 < shape.points; ++i)
            turns.push_back(i == 0 ? t : 0.0);
    }
    return turns;
}

template <class Rng>
FramedPath sample_piecewise_geodesic(const PathShape& shape, Rng& rng) {
    return path_from_turns(sample_turns(shape, rng));
}

}  // namespace freelat
