#include "covercert/io.hpp"

#include <cmath>

#include "covercert/errors.hpp"

namespace covercert::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::kParse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::size_t size_from_json(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

double double_from_json(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

QVector qvector_from_json(const json& j) {
  if (!j.is_array()) bad("expected an array of rationals");
  QVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

json qvector_to_json(const QVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("expected a nonempty array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = double_from_json(j[i], "vector entry");
  return v;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json value(const std::optional<Rational>& exact, double approx) {
  return exact ? json(to_string(*exact)) : json(approx);
}

json slacks_to_json(const std::map<std::string, double>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

}  // namespace

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  bad("rationals must be strings \"p\" or \"p/q\" (or integers), got " + j.dump());
}

json to_json(const Rational& q) { return to_string(q); }

Polytope polytope_from_json(const json& j) {
  if (!j.is_object()) bad("polytope must be an object");
  std::vector<QVector> vertices;
  std::vector<Halfspace> hs;
  if (j.contains("vertices")) {
    if (!j["vertices"].is_array()) bad("'vertices' must be an array");
    for (const auto& v : j["vertices"]) vertices.push_back(qvector_from_json(v));
  }
  if (j.contains("halfspaces")) {
    if (!j["halfspaces"].is_array()) bad("'halfspaces' must be an array");
    for (const auto& h : j["halfspaces"]) hs.push_back({qvector_from_json(field(h, "a")), rational_from_json(field(h, "b"))});
  }
  std::size_t dim = 0;
  if (j.contains("dim")) dim = size_from_json(j["dim"], "dim");
  else if (!vertices.empty()) dim = vertices.front().size();
  else if (!hs.empty()) dim = hs.front().normal.size();
  if (dim == 0) bad("polytope needs 'dim' and at least one representation");
  for (const auto& v : vertices)
    if (v.size() != dim) bad("vertex length differs from dim");
  for (const auto& h : hs)
    if (h.normal.size() != dim) bad("halfspace normal length differs from dim");
  if (vertices.empty() && hs.empty()) fail(ErrorCode::kMissingRepresentation, "polytope has neither vertices nor halfspaces");
  if (hs.empty()) return Polytope::from_vertices(dim, std::move(vertices));
  if (vertices.empty()) return Polytope::from_halfspaces(dim, std::move(hs));
  return Polytope::from_both(dim, std::move(vertices), std::move(hs));
}

json to_json(const Polytope& p) {
  json out{{"dim", p.dim()}};
  json vs = json::array();
  for (const auto& v : p.vertices()) vs.push_back(qvector_to_json(v));
  out["vertices"] = std::move(vs);
  if (p.has_halfspaces()) {
    json hs = json::array();
    for (const auto& h : p.halfspaces()) hs.push_back({{"a", qvector_to_json(h.normal)}, {"b", to_string(h.offset)}});
    out["halfspaces"] = std::move(hs);
  }
  return out;
}

WeightedCover weighted_cover_from_json(const json& j, std::size_t n) {
  const auto& parts_j = field(j, "parts");
  if (!parts_j.is_array() || parts_j.empty()) bad("'parts' must be a nonempty array");
  if (j.contains("n")) n = size_from_json(j["n"], "n");
  std::vector<std::vector<std::size_t>> raw;
  std::size_t max_index = 0;
  for (const auto& p : parts_j) {
    if (!p.is_array() || p.empty()) bad("each part must be a nonempty array of indices");
    auto& idx = raw.emplace_back();
    for (const auto& i : p) {
      const auto k = size_from_json(i, "index");
      if (k == 0) bad("indices are 1-based");
      idx.push_back(k - 1);
      max_index = std::max(max_index, k);
    }
  }
  if (n == 0) n = max_index;
  if (max_index > n) bad("index exceeds n");
  WeightedCover wc;
  wc.n = n;
  for (const auto& idx : raw) wc.parts.emplace_back(n, idx);
  if (j.contains("weights")) {
    wc.weights = qvector_from_json(j["weights"]);
    if (wc.weights.size() != wc.parts.size()) fail(ErrorCode::kWeightsInvalid, "weights and parts differ in count");
  } else {
    wc.weights.assign(wc.parts.size(), Rational(1));
  }
  if (j.contains("s")) {
    wc.s = rational_from_json(j["s"]);
  } else {
    wc.s = 0;
    for (std::size_t i = 0; i < wc.parts.size(); ++i)
      if (wc.parts[i].contains(0)) wc.s += wc.weights[i];
  }
  return wc;
}

json parts_to_json(const std::vector<CoordSet>& parts) {
  json out = json::array();
  for (const auto& p : parts) {
    json idx = json::array();
    for (std::size_t i : p.indices()) idx.push_back(i + 1);
    out.push_back(std::move(idx));
  }
  return out;
}

json to_json(const WeightedCover& wc) {
  return {{"n", wc.n}, {"parts", parts_to_json(wc.parts)}, {"weights", qvector_to_json(wc.weights)}, {"s", to_string(wc.s)}};
}

UnitVectorSystem system_from_json(const json& j) {
  const auto& vs = field(j, "vectors");
  const auto& ws = field(j, "weights");
  if (!vs.is_array() || !ws.is_array()) bad("'vectors' and 'weights' must be arrays");
  std::vector<Eigen::VectorXd> vectors;
  for (const auto& v : vs) vectors.push_back(vector_from_json(v));
  std::vector<double> weights;
  for (const auto& w : ws) weights.push_back(double_from_json(w, "weight"));
  const bool normalize = j.contains("normalize") && j["normalize"].is_boolean() && j["normalize"].get<bool>();
  return UnitVectorSystem::make(std::move(vectors), std::move(weights), normalize);
}

json to_json(const UnitVectorSystem& sys) {
  json vs = json::array();
  for (const auto& v : sys.vectors) vs.push_back(vector_to_json(v));
  return {{"vectors", std::move(vs)}, {"weights", sys.weights}};
}

json to_json(const JohnCheck& r) {
  return {{"isotropic", r.isotropic}, {"residual", r.residual}, {"trace", r.trace}, {"trace_ok", r.trace_ok}};
}

json to_json(const HyperplaneCover& c) {
  json ps = json::array();
  for (const auto& p : c.projections) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < p.rows(); ++i) rows.push_back(vector_to_json(p.row(i).transpose()));
    ps.push_back(std::move(rows));
  }
  return {{"n", c.n}, {"s", c.s}, {"weights", c.weights}, {"residual", c.residual}, {"projections", std::move(ps)}};
}

json to_json(const SphereMeasure& m) {
  json vs = json::array();
  std::vector<double> ws;
  for (const auto& a : m.atoms) {
    if (a.mass <= 0) continue;
    vs.push_back(vector_to_json(a.u));
    ws.push_back(a.mass);
  }
  return {{"n", m.n},
          {"atoms", m.atoms.size()},
          {"vectors", std::move(vs)},
          {"weights", std::move(ws)},
          {"total_mass", m.total_mass()},
          {"residual", m.isotropy_residual()}};
}

LogConcaveSpec function_from_json(const json& j) {
  const auto& variant = field(j, "variant");
  if (!variant.is_string()) bad("'variant' must be a string");
  const auto v = variant.get<std::string>();
  if (v == "gaussian") {
    const auto& rows = field(j, "matrix");
    if (!rows.is_array() || rows.empty()) bad("'matrix' must be a nonempty array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd q(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto r = vector_from_json(rows[i]);
      if (r.size() != n) bad("'matrix' must be square");
      q.row(i) = r.transpose();
    }
    return LogConcaveSpec::gaussian(q);
  }
  if (v == "exp_minkowski") return LogConcaveSpec::exp_minkowski(polytope_from_json(field(j, "body")));
  if (v == "exp_l1") {
    const double scale = j.contains("scale") ? double_from_json(j["scale"], "scale") : 1.0;
    return LogConcaveSpec::exp_l1(size_from_json(field(j, "n"), "n"), scale);
  }
  bad("unknown function variant '" + v + "'");
}

json to_json(const InequalityReport& r) {
  json out{{"name", r.name}, {"exact", r.exact}, {"pass", r.pass}, {"degenerate", r.degenerate}};
  out["lhs"] = value(r.lhs, r.lhs_f);
  out["rhs"] = value(r.rhs, r.rhs_f);
  out["slack"] = value(r.slack, r.slack_f);
  out["lhs_f"] = r.lhs_f;
  out["rhs_f"] = r.rhs_f;
  out["slack_f"] = r.slack_f;
  if (r.power > 1) {
    out["power"] = r.power;
    if (r.lhs_powered) out["lhs_powered"] = to_string(*r.lhs_powered);
    if (r.rhs_powered) out["rhs_powered"] = to_string(*r.rhs_powered);
  }
  if (!r.exact) out["tolerance"] = r.tolerance;
  out["product_side"] = r.product_side == ProductSide::kLhs ? "lhs" : "rhs";
  out["constant"] = r.exact ? value(r.constant, r.constant_f) : json(r.constant_f);
  json fs = json::array();
  for (const auto& f : r.factors) {
    json e{{"label", f.label}};
    e["volume"] = value(f.volume, f.volume_f);
    e["exponent"] = r.exact ? json(to_string(f.exponent)) : json(to_double(f.exponent));
    fs.push_back(std::move(e));
  }
  out["factors"] = std::move(fs);
  return out;
}

json to_json(const DualBallReport& r) {
  auto out = to_json(static_cast<const InequalityReport&>(r));
  out["log_integral_form"] = r.log_integral_form;
  return out;
}

json to_json(const CrossPolytopeCertificate& c, const CertificateCheck& check) {
  return {{"n", c.n},
          {"lambdas", c.lambdas},
          {"target_volume", to_string(c.target_volume)},
          {"volume_residual", check.volume_residual},
          {"min_slack", check.min_slack},
          {"log_margin", c.log_margin},
          {"per_sigma", slacks_to_json(check.section_slacks)},
          {"verified", check.pass}};
}

json to_json(const IntegralResult& r) {
  json out{{"value", r.value}, {"tail_bound", r.tail_bound}, {"evaluations", r.evaluations}};
  out["closed_form"] = r.closed_form ? json(*r.closed_form) : json();
  if (r.closed_form_exact) out["closed_form_exact"] = to_string(*r.closed_form_exact);
  if (r.closed_form) out["relative_error"] = std::abs(r.value / *r.closed_form - 1);
  return out;
}

json to_json(const LemmaReport& r) {
  return {{"samples", r.samples},
          {"violations", r.violations},
          {"step_violations", r.step_violations},
          {"worst", r.worst},
          {"pass", r.pass}};
}

json to_json(const GaussianBLReport& r) {
  return {{"direct_lhs", r.direct_lhs},     {"direct_rhs", r.direct_rhs},
          {"reverse_lower", r.reverse_lower}, {"reverse_rhs", r.reverse_rhs},
          {"identity_error", r.identity_error}, {"verdict", r.verdict}};
}

}  // namespace covercert::io
