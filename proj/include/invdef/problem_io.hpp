#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invdef/deformation.hpp"
#include "json.hpp"

namespace invdef {

using Json = nlohmann::ordered_json;

// How the diagonal one-parameter subgroups of a problem act on its variables.
struct PsgSpec {
    std::vector<int> column;  // per variable, index into the n-tuple
    std::vector<int> sign;    // per variable, +1 or -1
};

struct ProblemFile {
    ProblemSpec spec;
    std::optional<PsgSpec> psg;
    Json raw;
};

// Throws ValidationError (or ParseError) on malformed input. The spec is not
// validated against the group; call spec.validate() for that.
ProblemFile parse_problem(const Json& j);
ProblemFile load_problem(const std::string& path);
Json read_json(const std::string& path);

QMatrix parse_qmatrix(const Json& j);
Json qmatrix_to_json(const QMatrix& m);

Json result_to_json(const UniversalDeformation& res);
UniversalDeformation result_from_json(const Json& j, const ProblemSpec& spec);

// An ideal file: ring{variables, gm_weights} and ideal[strings]. A result file
// is read as its base ideal K.
struct IdealFile {
    RingPtr ring;
    std::vector<Polynomial> gens;
};
IdealFile parse_ideal_file(const Json& j);

}  // namespace invdef
