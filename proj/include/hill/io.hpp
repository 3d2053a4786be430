#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hill/criterion.hpp"
#include "hill/projection.hpp"
#include "hill/spectra.hpp"

namespace hill {

using json = nlohmann::ordered_json;

// complex numbers travel as [re, im]
json to_json(cplx z);
cplx complex_from_json(const json& j);

// {"fourier": {"n": [re, im], ...}}, {"samples": [[re, im], ...]} or {"preset": "mathieu:0.5"}
Potential potential_from_json(const json& j);
Potential load_potential_file(const std::string& path);
json potential_to_json(const Potential& V);

json to_json(const SpectraCatalog& c);
json portrait_summary(const SpectrumPortrait& P);
json to_json(const CriterionReport& r);

// fixed-format number for CSV cells; deterministic across runs
std::string csv_number(double v);

void write_catalog_csv(std::ostream& os, const SpectraCatalog& c);
void write_portrait_csv(std::ostream& os, const SpectrumPortrait& P);
void write_grid_csv(std::ostream& os, const GridFunction& g);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hill
