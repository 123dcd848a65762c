#pragma once

#include <string>
#include <vector>

#include "stringlab/braid.hpp"
#include "stringlab/charges.hpp"
#include "stringlab/cusps.hpp"
#include "stringlab/scattering.hpp"
#include "stringlab/worldsheet.hpp"

namespace stringlab {

// All writers emit deterministic bytes: fixed column/key order, '\n' line
// endings, doubles at 17 significant digits.

std::string format_double(double v);

void write_field_csv(const std::string& path, const ChiralField& field);
// Grid is inferred from the xi column (uniform, symmetric about 0).
ChiralField read_field_csv(const std::string& path, Chirality chi, Tolerances tol = {});

void write_spectrum_json(const std::string& path, const std::vector<DiscreteSpectrum>& spectra);
std::vector<DiscreteSpectrum> read_spectrum_json(const std::string& path);

void write_monodromy_csv(const std::string& path, const MonodromyData& data);
void write_worldsheet_csv(const std::string& path, const WorldSheet& sheet);
void write_cusps_csv(const std::string& path, const CuspTrack& track);
void write_events_json(const std::string& path, const std::vector<CuspEvent>& events);
void write_braid_json(const std::string& path, const BraidWord& word);
void write_charges_json(const std::string& path, const ChargeSet& charges);

// Fixed-xi0 string curve, X1 horizontal / X3 vertical.
void write_string_svg(const std::string& path, const WorldSheet& sheet, std::size_t row);
// Cusp world-lines, X1 horizontal / X0 (time) vertical, crossings visible.
void write_braid_svg(const std::string& path, const CuspTrack& track);

} // namespace stringlab
