#pragma once

#include <vector>

#include "stringlab/chiral_field.hpp"

namespace stringlab {

// Discrete scattering data of one chirality's spectral problem.
// Eigenvalues live in the open upper half-plane and are either purely
// imaginary or come in symmetric pairs (lambda, -conj(lambda)); norming
// constants of a pair are complex conjugates of each other.
struct DiscreteSpectrum {
    Chirality chirality = Chirality::plus;
    std::vector<cplx> eigenvalues;
    std::vector<cplx> norming_constants;

    void validate() const;
    std::size_t imaginary_count() const;
};

struct Monodromy {
    cplx a, b;
    Mat2 M;
};

struct MonodromyData {
    std::vector<double> lambda_grid;
    std::vector<cplx> a_values;
    std::vector<cplx> b_values;
    int parity = 0; // sign of M(0) as a multiple of the identity
};

struct SearchSpec {
    double a_min = 5e-3;
    double a_max = 4.0;
    std::size_t scan_samples = 160;
    bool pair_search = false; // also look for symmetric off-axis pairs
    double re_max = 3.0;
    std::size_t pair_grid = 24; // coarse |a| scan resolution per axis
    unsigned threads = 0;       // 0 = hardware concurrency
    int oversample = 2;
};

// SO(2) frame matrix at xi: [[cos I, s sin I], [-s sin I, cos I]] with
// s = +1 ('+' chirality) or -1 ('-').
Mat2 rotation_matrix(const ChiralField& field, double xi);

// Transfer matrix of u' = (i lambda s3 - Q) u across [-L, L], normalized by
// plane waves; valid for real lambda. oversample = integration substeps per
// grid cell.
Monodromy forward_scatter(const ChiralField& field, double lambda, int oversample = 2);

// a(lambda) = det[ u^[+]_col1, u^[-]_col2 ], analytic for Im lambda >= 0.
cplx scatter_a(const ChiralField& field, cplx lambda, int oversample = 2);

// Proportionality coefficient b with u^[+]_col1 = b * u^[-]_col2 at a
// discrete eigenvalue ('+' column convention).
cplx norming_coefficient(const ChiralField& field, cplx lambda, int oversample = 2);

MonodromyData monodromy_scan(const ChiralField& field, const std::vector<double>& lambdas,
                             unsigned threads = 1, int oversample = 2);

// Zeros of a(lambda) in the upper half-plane. The imaginary-axis scan count
// must match |topological charge|; symmetric pairs are searched only when
// requested.
DiscreteSpectrum find_eigenvalues(const ChiralField& field, const SearchSpec& search = {});

// Reflectionless potential from discrete data (degenerate-kernel closed
// form); the result is real, Schwartz-decaying and quantized.
ChiralField synth_nsoliton(const DiscreteSpectrum& spec, const GridSpec& grid,
                           Tolerances tol = {});

// M(0) = +-1 (times identity); must equal (-1)^topological_charge.
int parity_check(const ChiralField& field);

} // namespace stringlab
