#include "stringlab/braid.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace stringlab {

namespace {

constexpr double kEpsBraid = 1e-6;

struct StrandSample {
    int line = 0;
    double u = 0; // crossing-axis coordinate
    double v = 0; // depth coordinate
};

} // namespace

BraidWord braid_word(const CuspTrack& track, const BraidOptions& opt) {
    if (track.step <= 0.0) throw ValidationError("braid: empty cusp track");
    const std::size_t n_slices =
        static_cast<std::size_t>(std::lround((track.xi0_max - track.xi0_min) / track.step)) + 1;

    // Per-slice strand samples, addressed by global slice index.
    std::vector<std::vector<StrandSample>> slices(n_slices);
    for (const CuspLine& l : track.lines) {
        for (const CuspSample& p : l.points) {
            const std::size_t i =
                static_cast<std::size_t>(std::lround((p.xi0 - track.xi0_min) / track.step));
            if (i >= n_slices) throw ValidationError("braid: cusp sample off the slice lattice");
            double u = p.X.x, v = p.X.y;
            if (opt.swap_axes) std::swap(u, v);
            if (opt.mirror_depth) v = -v;
            slices[i].push_back({l.id, u, v});
        }
    }
    for (auto& s : slices)
        std::sort(s.begin(), s.end(),
                  [](const StrandSample& a, const StrandSample& b) { return a.u < b.u; });

    BraidWord out;
    for (const CuspEvent& e : track.events)
        if (e.type == "birth" || e.type == "death") out.tangle = true;
    if (out.tangle) out.events = track.events;
    out.n_strands = static_cast<int>(slices.empty() ? 0 : slices.front().size());

    std::vector<int> order; // line ids, left to right
    std::vector<int> start_order;
    auto ids_of = [](const std::vector<StrandSample>& s) {
        std::vector<int> ids;
        for (const auto& x : s) ids.push_back(x.line);
        std::sort(ids.begin(), ids.end());
        return ids;
    };

    for (std::size_t i = 0; i < n_slices; ++i) {
        const std::vector<StrandSample>& cur = slices[i];
        std::vector<int> target;
        for (const auto& s : cur) target.push_back(s.line);
        if (i == 0 || ids_of(slices[i - 1]) != ids_of(cur)) {
            // Window start, or the active set changed: (re)seed the order.
            order = target;
            if (i == 0) start_order = target;
            continue;
        }
        if (order == target) continue;

        const std::vector<StrandSample>& prev = slices[i - 1];
        auto sample_of = [](const std::vector<StrandSample>& s, int line) {
            for (const auto& x : s)
                if (x.line == line) return x;
            throw NumericalError("braid: strand lost between slices");
        };
        const double t0 = track.xi0_min + track.step * static_cast<double>(i - 1);

        // Bubble from the continued order to the observed one; each adjacent
        // swap is one crossing, timed by linear interpolation of the
        // coordinate difference across the slice step.
        int guard = 0;
        while (order != target) {
            if (++guard > 1000) throw NumericalError("braid: crossing resolution diverged");
            for (std::size_t j = 0; j + 1 < order.size(); ++j) {
                const int A = order[j], B = order[j + 1];
                const auto ta = std::find(target.begin(), target.end(), A);
                const auto tb = std::find(target.begin(), target.end(), B);
                if (ta < tb) continue; // pair already in final relative order
                const StrandSample a0 = sample_of(prev, A), a1 = sample_of(cur, A);
                const StrandSample b0 = sample_of(prev, B), b1 = sample_of(cur, B);
                const double d0 = a0.u - b0.u, d1 = a1.u - b1.u;
                const double s = (d0 == d1) ? 0.5 : d0 / (d0 - d1);
                const double sc = std::clamp(s, 0.0, 1.0);
                const double xc = t0 + sc * track.step;
                const double gap = (1.0 - sc) * (a0.v - b0.v) + sc * (a1.v - b1.v);
                const int idx = static_cast<int>(j) + 1; // 1-based generator index
                if (std::abs(gap) < kEpsBraid) {
                    out.degeneracies.push_back({idx, xc, std::abs(gap)});
                } else {
                    // A moves rightward through the crossing; positive when it
                    // carries the larger depth (passes over).
                    out.word.push_back({idx, gap > 0 ? 1 : -1, xc});
                }
                std::swap(order[j], order[j + 1]);
            }
        }
    }

    std::stable_sort(out.word.begin(), out.word.end(),
                     [](const BraidGenerator& a, const BraidGenerator& b) {
                         return a.xi0 < b.xi0;
                     });
    for (const auto& g : out.word) out.writhe += g.sign;

    if (!out.tangle && !start_order.empty()) {
        // permutation[p] = final position of the strand that started at p.
        out.permutation.resize(start_order.size());
        for (std::size_t p = 0; p < start_order.size(); ++p) {
            const auto it = std::find(order.begin(), order.end(), start_order[p]);
            out.permutation[p] = static_cast<int>(it - order.begin());
        }
    }
    return out;
}

BraidSummary classify(const BraidWord& word) {
    BraidSummary s;
    s.n_strands = word.n_strands;
    s.writhe = word.writhe;

    std::vector<bool> seen(word.permutation.size(), false);
    for (std::size_t i = 0; i < word.permutation.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(word.permutation[j]))
            seen[j] = true, ++len;
        s.cycle_type.push_back(len);
    }
    std::sort(s.cycle_type.rbegin(), s.cycle_type.rend());

    std::vector<BraidGenerator> stack;
    for (const auto& g : word.word) {
        if (!stack.empty() && stack.back().i == g.i && stack.back().sign == -g.sign)
            stack.pop_back();
        else
            stack.push_back(g);
    }
    s.reduced_length = stack.size();
    return s;
}

BraidWord relabel_reversed(const BraidWord& word) {
    BraidWord r = word;
    for (auto& g : r.word) g.i = word.n_strands - g.i;
    for (auto& d : r.degeneracies) d.i = word.n_strands - d.i;
    const int n = static_cast<int>(word.permutation.size());
    for (int j = 0; j < n; ++j)
        r.permutation[static_cast<std::size_t>(n - 1 - j)] =
            n - 1 - word.permutation[static_cast<std::size_t>(j)];
    return r;
}

} // namespace stringlab
