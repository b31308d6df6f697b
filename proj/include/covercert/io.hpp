#pragma once

// JSON readers and writers for bodies, covers, systems, test functions and
// reports. Rationals travel as strings "p" or "p/q".

#include <json.hpp>

#include <string>

#include "covercert/certifier.hpp"
#include "covercert/covers.hpp"
#include "covercert/functional.hpp"
#include "covercert/inequality.hpp"
#include "covercert/isotropic.hpp"
#include "covercert/polytope.hpp"

namespace covercert::io {

using nlohmann::json;

// Throws Error(kParse) on malformed text or schema mismatch.
json parse(const std::string& text);

Rational rational_from_json(const json& j);
json to_json(const Rational& q);

// {"dim": n, "vertices": [[..]], "halfspaces": [{"a": [..], "b": ..}]};
// either list may be missing, both are checked for consistency when present.
Polytope polytope_from_json(const json& j);
json to_json(const Polytope& p);

// {"parts": [[1,2],[1,3]], "weights": ["1","1"], "s": "2"} with optional
// "n"; weights default to 1 and s to the common multiplicity.
WeightedCover weighted_cover_from_json(const json& j, std::size_t n = 0);
json to_json(const WeightedCover& wc);
json parts_to_json(const std::vector<CoordSet>& parts);

// {"vectors": [[..]], "weights": [..]}; "normalize": true rescales vectors.
UnitVectorSystem system_from_json(const json& j);
json to_json(const UnitVectorSystem& sys);
json to_json(const JohnCheck& r);
json to_json(const HyperplaneCover& c);
json to_json(const SphereMeasure& m);

// {"variant": "gaussian", "matrix": [[..]]} | {"variant": "exp_minkowski",
// "body": <polytope>} | {"variant": "exp_l1", "n": 3, "scale": 1}.
LogConcaveSpec function_from_json(const json& j);

json to_json(const InequalityReport& r);
json to_json(const DualBallReport& r);
json to_json(const CrossPolytopeCertificate& c, const CertificateCheck& check);
json to_json(const IntegralResult& r);
json to_json(const LemmaReport& r);
json to_json(const GaussianBLReport& r);

}  // namespace covercert::io
