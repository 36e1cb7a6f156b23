#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "brownflow/brown.hpp"
#include "brownflow/cmaps.hpp"
#include "brownflow/domains.hpp"
#include "brownflow/rmt.hpp"

namespace brownflow::io {

using nlohmann::json;

// Shortest text that round-trips the double exactly.
std::string num(double x);

std::string cloud_csv(const std::vector<rmt::EigenvalueCloud>& clouds);
std::string polyline_csv(const domains::BoundaryPolyline& poly);
std::string field_csv(const brown::ScalarField& field);
std::string measure_csv(const cmaps::SpectralMeasureGrid& grid);

json polyline_json(const domains::BoundaryPolyline& poly, const domains::DomainSpec& spec, int resolution);
json config_json(const rmt::EnsembleConfig& cfg);
json field_meta_json(const brown::ScalarField& field);

// Throws ValidationError when the path cannot be written.
void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const json& j);

}  // namespace brownflow::io
