#pragma once

// JSON in and out: presentations, coactions, points and every report type.
// Output objects are built with sorted keys so dumps are byte-stable.

#include <string>
#include <vector>

#include <json.hpp>

#include "nilc/centers.hpp"
#include "nilc/comodule.hpp"
#include "nilc/oracle.hpp"
#include "nilc/presentation.hpp"

namespace nilc {

using json = nlohmann::json;

// All parse errors are ParseError, with a path like "layers[0].kernel[1].gamma".
F2Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& where);
json matrix_to_json(const F2Matrix& m);

LayeredAlgebra presentation_from_json(const json& j, const Limits& limits = {});
json presentation_to_json(const LayeredAlgebra& k);
LayeredAlgebra load_presentation(const std::string& path, const Limits& limits = {});

json read_json_file(const std::string& path);

struct CoactionSpec {
    Coaction base;
    std::vector<Coaction> pieces;  // empty: derive from the base
};

// {"point": [[..]]} or {"coefficients": [...], "images": {...}, "piece_images": [{...}]}.
CoactionSpec coaction_from_json(const json& j, const LayeredAlgebra& k);

// "dim=1;psi=[[1],[0]]"
F2Matrix parse_pair(const std::string& text, std::size_t u_dim);

json vector_to_json(Vec v, std::size_t dim);
json centre_to_json(const CentreDescription& c);
json centre_result_to_json(const CentreResult& r);
json validation_to_json(const ValidationReport& r);
json rho_to_json(const RhoReport& r);
json lift_to_json(const LiftReport& r);
json sub_witness_to_json(const SubWitness& w, const InducedModule& piece, std::size_t dim_w);
json axioms_to_json(const AxiomReport& r, const VarNames& ambient);
json restriction_to_json(const RestrictionReport& r);

}  // namespace nilc
