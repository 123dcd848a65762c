#pragma once

#include <string>
#include <vector>

#include "stringlab/cusps.hpp"

namespace stringlab {

// Generator sigma_i^sign: strands at adjacent order positions i, i+1 (1-based)
// swap at time xi0; positive sign means the strand with larger depth
// coordinate passes over while moving rightward.
struct BraidGenerator {
    int i = 0;
    int sign = 0;
    double xi0 = 0;
};

// Crossing whose depth gap is below eps_braid: over/under is unresolved.
struct BraidDegeneracy {
    int i = 0;
    double xi0 = 0;
    double gap = 0;
};

struct BraidWord {
    int n_strands = 0;
    std::vector<BraidGenerator> word;
    std::vector<int> permutation; // position j at start -> position at end (0-based)
    int writhe = 0;
    std::vector<BraidDegeneracy> degeneracies;
    bool tangle = false;               // lines were born/died inside the window
    std::vector<CuspEvent> events;     // copied from the track when tangle
};

struct BraidSummary {
    int n_strands = 0;
    std::vector<int> cycle_type; // descending cycle lengths of the permutation
    int writhe = 0;
    std::size_t reduced_length = 0; // after free sigma_i sigma_i^-1 cancellation
};

struct BraidOptions {
    bool swap_axes = false;  // use X3 as the crossing axis and X1 as depth
    bool mirror_depth = false; // negate the depth coordinate
};

// Crossing extraction from tracked cusp lines. Lines that do not span the
// whole window make the result a tangle: generators are still reported per
// segment, interleaved (by xi0) with the birth/death events.
BraidWord braid_word(const CuspTrack& track, const BraidOptions& opt = {});

BraidSummary classify(const BraidWord& word);

// Index relabeling that reverses the strand order: sigma_i -> sigma_{n-i},
// permutation conjugated by the order reversal.
BraidWord relabel_reversed(const BraidWord& word);

} // namespace stringlab
