#pragma once

// JSON forms of every value the CLI reads or writes. Decoders throw
// DomainError with the offending field named.

#include "json.hpp"
#include <string>

#include "jetforge/bundle.hpp"
#include "jetforge/diffgroup.hpp"
#include "jetforge/group_prolong.hpp"
#include "jetforge/jets.hpp"
#include "jetforge/lie_prolong.hpp"
#include "jetforge/singularity.hpp"

namespace jetforge::io {

using nlohmann::json;

/// Reads and parses a JSON file; DomainError if missing or malformed.
json load_file(const std::string& path);

json encode(const Eigen::MatrixXd& a);
json encode_vector(const Eigen::VectorXd& v);
json encode(const SymCube& t);
json encode(const Cube& c);
json encode(const Jet2& j);
json encode(const D2Elem& e);
json encode(const GL1Elem& e);
json encode(const AlgebraicCoords& c);
json encode(const PolyMap& p);
json encode(const MatrixLieAlgebra& g);
json encode(const ProlongationBasis& p);
json encode(const GroupDescriptor& g);
json encode(const ZeroSearch& z);
json encode(const SingularityReport& r);
json encode(const Comparison& c);
json encode(const CocycleReport& r);
json encode(const ReductionReport& r);

Eigen::MatrixXd decode_matrix(const json& j, const char* field = "matrix");
Eigen::VectorXd decode_vector(const json& j, const char* field = "vector");
SymCube decode_symcube(const json& j);
Cube decode_cube(const json& j);
Jet2 decode_jet(const json& j);
D2Elem decode_d2(const json& j);
GL1Elem decode_gl1(const json& j);
AlgebraicCoords decode_algebraic(const json& j);
PolyMap decode_polymap(const json& j, int max_degree = 4);
MatrixLieAlgebra decode_algebra(const json& j);
ProlongationBasis decode_prolongation(const json& j);
GroupDescriptor decode_group(const json& j);
PolyAtlas decode_atlas(const json& j, int max_degree = 4);
SingularityReport decode_singularity_report(const json& j);

}  // namespace jetforge::io
