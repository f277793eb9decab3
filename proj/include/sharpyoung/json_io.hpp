#pragma once

#include <string>

#include <json.hpp>

#include "sharpyoung/functional_equations.hpp"
#include "sharpyoung/pipeline.hpp"
#include "sharpyoung/symplectic_factor.hpp"
#include "sharpyoung/trilinear.hpp"

namespace sharpyoung::io {

using nlohmann::json;

// Matrices are row-major nested arrays; complex numbers are [re, im] (a bare
// number is read as real).
json to_json(const Mat& m);
json to_json(const Vec& v);
json to_json(cdouble z);
json to_json(const Gaussian& g);
json to_json(const Triple& t);
json to_json(const SymmetryElement& e);
json to_json(const SymmetryWord& w);
json to_json(const CompatibleTripleSpec& s);
json to_json(const SymplecticFactorization& f);
json to_json(const AffineFESolution& s);
json to_json(const LinearPhaseSolution& s);
json to_json(const DifferenceSolution& s);
json to_json(const HeisFESolution& s);
json to_json(const BilinearPhaseSolution& s);
json to_json(const PipelineReport& r);
json to_json(const Polynomial& p);

Mat mat_from_json(const json& j, const std::string& path);
Vec vec_from_json(const json& j, const std::string& path);
cdouble complex_from_json(const json& j, const std::string& path);
Gaussian gaussian_from_json(const json& j, const std::string& path);
// Accepts {"gaussians": [g₁, g₂, g₃]} or a bare three-element array.
Triple triple_from_json(const json& j, const std::string& path = "");
SymmetryElement element_from_json(const json& j, const std::string& path);
SymmetryWord word_from_json(const json& j, const std::string& path = "");
CompatibleTripleSpec compatible_spec_from_json(const json& j, const std::string& path = "");
// Overrides only the fields present.
QuadratureSpec quadrature_from_json(const json& j, QuadratureSpec base = {});

AdditiveFEData additive_from_json(const json& j);
PhaseFEData phase_from_json(const json& j);
DifferenceDataset difference_from_json(const json& j);
HeisFEData heis_fe_from_json(const json& j);
BilinearPhaseData bilinear_from_json(const json& j);

json parse_text(const std::string& text, const std::string& what);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace sharpyoung::io
