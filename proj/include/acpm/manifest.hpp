#pragma once

#include <map>
#include <string>

#include "acpm/manifold.hpp"

namespace acpm {

// Parsed manifest: the manifold spec plus tolerance overrides. The digest
// is taken over the raw manifest bytes.
struct ParsedManifest {
  ManifoldSpec spec;
  double default_tolerance = 0.0;  // 0 = not set
  std::map<std::string, double> check_tolerances;
  std::string digest;
};

// Sections: [manifold] [metric] [structure] [soliton] [params] [sampling]
// [tolerances]. Unknown sections or keys are hard errors. Expression values
// use the scalar-field grammar; rows are separated by ';', entries by ','.
ParsedManifest parse_manifest(const std::string& text,
                              const std::string& source_name = "<manifest>");

ParsedManifest load_manifest(const std::string& path);

// Check names accepted in [tolerances]; exposed for validation and docs.
const std::vector<std::string>& known_check_names();

}  // namespace acpm
