// covercert command-line tool. Talks to the library only through covercert.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "covercert/covercert.h"

using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kError = 2 };

struct Failure {
  int status;
  std::string message;
};

void check_status(int status) {
  if (status != CC_OK) throw Failure{status, cc_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{CC_ERR_PARSE, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Takes ownership of a library string.
json take_json(char* s) {
  std::unique_ptr<char, void (*)(char*)> guard(s, cc_string_free);
  return json::parse(s);
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};

using Body = Handle<cc_polytope, cc_polytope_free>;
using CoverH = Handle<cc_cover, cc_cover_free>;
using System = Handle<cc_system, cc_system_free>;
using Function = Handle<cc_function, cc_function_free>;

struct Globals {
  std::string format = "json";
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::uint64_t budget = 0;
};

// ---- output -------------------------------------------------------------

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

bool is_scalar(const json& v) { return !v.is_object() && !v.is_array(); }

std::string csv_cell(const json& v) {
  std::string s = is_scalar(v) ? scalar_text(v) : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> columns(const json& rows) {
  std::vector<std::string> cols;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it)
    if (is_scalar(it.value())) cols.push_back(it.key());
  return cols;
}

void print_table_rows(std::ostream& out, const json& rows) {
  const auto cols = columns(rows);
  std::vector<std::size_t> width;
  for (const auto& c : cols) width.push_back(c.size());
  for (const auto& r : rows)
    for (std::size_t i = 0; i < cols.size(); ++i)
      width[i] = std::max(width[i], scalar_text(r.value(cols[i], json())).size());
  auto line = [&](auto cell) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const std::string s = cell(i);
      out << s;
      if (i + 1 < cols.size()) out << std::string(width[i] - s.size() + 2, ' ');
    }
    out << "\n";
  };
  line([&](std::size_t i) { return cols[i]; });
  for (const auto& r : rows) line([&](std::size_t i) { return scalar_text(r.value(cols[i], json())); });
}

const char* kRowKeys[] = {"reports", "covers"};

void print(const json& j, const Globals& g) {
  auto& out = std::cout;
  if (g.format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  if (g.format == "csv") {
    for (const char* key : kRowKeys)
      if (j.contains(key) && j[key].is_array() && !j[key].empty() && j[key].front().is_object()) {
        const auto& rows = j[key];
        const auto cols = columns(rows);
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        out << "\n";
        for (const auto& r : rows) {
          for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_cell(r.value(cols[i], json()));
          out << "\n";
        }
        return;
      }
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
      if (is_scalar(it.value())) keys.push_back(it.key());
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
    out << "\n";
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << csv_cell(j[keys[i]]);
    out << "\n";
    return;
  }
  std::size_t w = 0;
  for (auto it = j.begin(); it != j.end(); ++it) w = std::max(w, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (is_scalar(v)) {
      out << it.key() << std::string(w - it.key().size() + 2, ' ') << scalar_text(v) << "\n";
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << it.key() << ":\n";
      print_table_rows(out, v);
    } else {
      out << it.key() << std::string(w - it.key().size() + 2, ' ') << v.dump() << "\n";
    }
  }
}

int verdict(bool pass) { return pass ? kPass : kFail; }

// ---- loaders --------------------------------------------------------------

void load_body(const std::string& path, Body& b) {
  if (path.empty()) throw Failure{CC_ERR_INVALID_ARGUMENT, "--body is required"};
  check_status(cc_polytope_from_json(read_file(path).c_str(), &b.p));
}

void load_system(const std::string& path, System& s) {
  if (path.empty()) throw Failure{CC_ERR_INVALID_ARGUMENT, "--system is required"};
  check_status(cc_system_from_json(read_file(path).c_str(), &s.p));
}

void load_function(const std::string& path, Function& f) {
  if (path.empty()) throw Failure{CC_ERR_INVALID_ARGUMENT, "--function is required"};
  check_status(cc_function_from_json(read_file(path).c_str(), &f.p));
}

struct CoverArgs {
  std::string text;
  std::string json_path;
  std::string solve_s;
};

void load_cover(const CoverArgs& a, std::size_t n, CoverH& c) {
  if (!a.json_path.empty()) {
    check_status(cc_cover_from_json(read_file(a.json_path).c_str(), n, &c.p));
  } else if (a.text.empty()) {
    throw Failure{CC_ERR_INVALID_ARGUMENT, "a cover is required (--cover or --cover-json)"};
  } else if (!a.solve_s.empty()) {
    check_status(cc_cover_solve_weights(a.text.c_str(), n, a.solve_s.c_str(), &c.p));
  } else {
    check_status(cc_cover_parse(a.text.c_str(), n, &c.p));
  }
}

struct QuadArgs {
  std::string scheme = "grid";
  std::size_t points = 0;
  std::size_t total = 0;
  double radius = 0;
  bool force_quadrature = false;
};

cc_quadrature quadrature(const QuadArgs& a, const Globals& g) {
  cc_quadrature q;
  cc_quadrature_default(&q);
  if (a.scheme == "qmc") q.scheme = CC_QUASI_RANDOM;
  if (a.points) q.points_per_axis = a.points;
  if (a.total) q.total_points = a.total;
  if (a.radius > 0) q.truncation_radius = a.radius;
  q.jobs = g.jobs;
  q.use_closed_forms = a.force_quadrature ? 0 : 1;
  return q;
}

void add_quadrature_flags(CLI::App* app, QuadArgs& q) {
  app->add_option("--scheme", q.scheme, "grid or qmc")->check(CLI::IsMember({"grid", "qmc"}));
  app->add_option("--points", q.points, "tensor-grid points per axis");
  app->add_option("--total-points", q.total, "quasi-random sample count");
  app->add_option("--radius", q.radius, "truncation box half-width");
  app->add_flag("--quadrature", q.force_quadrature, "integrate numerically instead of closed forms");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of Bollobás–Thomason type inequalities for convex polytopes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "json, table or csv")->check(CLI::IsMember({"json", "table", "csv"}));
  app.add_option("--tol", g.tol, "tolerance for float checks")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for sampled tests");
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "maximum number of covers to enumerate");

  std::string body_path, system_path, function_path;
  CoverArgs cover;
  QuadArgs quad;

  auto* volume = app.add_subcommand("volume", "exact volume of a body");
  volume->add_option("body,--body", body_path, "polytope JSON")->required();

  std::string kind;
  std::vector<std::size_t> all_covers;
  std::size_t max_parts = 0;
  auto* check = app.add_subcommand("check", "run an inequality check");
  check->add_option("kind", kind, "check kind")
      ->required()
      ->check(CLI::IsMember({"bt", "dual-bt", "lw", "meyer", "ball", "dual-ball", "weighted", "weighted-dual",
                             "functional"}));
  check->add_option("--body", body_path, "polytope JSON");
  check->add_option("--cover", cover.text, "cover such as \"1,2;1,3;2,3\"");
  check->add_option("--cover-json", cover.json_path, "weighted cover JSON");
  check->add_option("--solve-weights", cover.solve_s, "solve weights for this s");
  check->add_option("--system", system_path, "unit vector system JSON");
  check->add_option("--function", function_path, "function spec JSON");
  check->add_option("--all-covers", all_covers, "n s: every s-uniform cover of [n]")->expected(2);
  check->add_option("--max-parts", max_parts, "part limit for --all-covers");
  add_quadrature_flags(check, quad);

  auto* certify = app.add_subcommand("certify", "affine cross-polytope certificate");
  certify->add_option("body,--body", body_path, "polytope JSON")->required();

  std::size_t cov_n = 0, cov_s = 0;
  bool irreducible = false;
  auto* covers = app.add_subcommand("covers", "enumerate uniform covers");
  covers->add_option("n,--n", cov_n, "ambient dimension")->required();
  covers->add_option("s,--s", cov_s, "uniformity")->required();
  covers->add_flag("--irreducible", irreducible, "irreducible covers only");
  covers->add_option("--max-parts", max_parts, "part limit");

  std::string domain;
  double power = 1;
  std::size_t samples = 10000;
  auto* functional = app.add_subcommand("functional", "log-concave function lab");
  functional->require_subcommand(1);
  auto* integrate = functional->add_subcommand("integrate", "integral of f^power");
  integrate->add_option("--function", function_path, "function spec JSON")->required();
  integrate->add_option("--domain", domain, "coordinate subspace such as 1,3");
  integrate->add_option("--power", power, "exponent");
  add_quadrature_flags(integrate, quad);
  auto* lemma = functional->add_subcommand("lemma", "sampled pointwise inequality");
  lemma->add_option("--function", function_path, "function spec JSON")->required();
  lemma->add_option("--cover", cover.text, "cover");
  lemma->add_option("--cover-json", cover.json_path, "weighted cover JSON");
  lemma->add_option("--solve-weights", cover.solve_s, "solve weights for this s");
  lemma->add_option("--samples", samples, "number of samples");
  auto* bl = functional->add_subcommand("bl", "Gaussian Brascamp–Lieb extremals");
  bl->add_option("--cover", cover.text, "cover");
  bl->add_option("--cover-json", cover.json_path, "weighted cover JSON");
  bl->add_option("--solve-weights", cover.solve_s, "solve weights for this s");
  add_quadrature_flags(bl, quad);

  std::string density = "uniform";
  std::size_t sphere_n = 2;
  double eps = 0.3, kappa = 1.0;
  bool raw = false;
  auto* isotropic = app.add_subcommand("isotropic", "John systems and sphere measures");
  isotropic->require_subcommand(1);
  auto* john = isotropic->add_subcommand("john", "check John's condition");
  john->add_option("--system", system_path, "unit vector system JSON")->required();
  auto* hcover = isotropic->add_subcommand("cover", "hyperplane cover from John's condition");
  hcover->add_option("--system", system_path, "unit vector system JSON")->required();
  auto* measure = isotropic->add_subcommand("measure", "discretize a sphere density");
  measure->add_option("--density", density, "uniform or von-mises-fisher");
  measure->add_option("--n", sphere_n, "ambient dimension (2 or 3)");
  measure->add_option("--eps", eps, "net separation")->check(CLI::PositiveNumber);
  measure->add_option("--kappa", kappa, "concentration");
  measure->add_flag("--raw", raw, "skip isotropic renormalization");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kError;
  }

  try {
    const double tol_default = g.tol.value_or(0);
    auto tol = [&](double fallback) { return g.tol ? tol_default : fallback; };

    if (*volume) {
      Body b;
      load_body(body_path, b);
      char* exact = nullptr;
      double approx = 0;
      check_status(cc_polytope_volume(b.p, &exact, &approx));
      json out{{"volume", std::string(exact)}, {"approx", approx}};
      cc_string_free(exact);
      print(out, g);
      return kPass;
    }

    if (*check) {
      char* text = nullptr;
      int pass = 0;
      if (kind == "functional") {
        Function f;
        load_function(function_path, f);
        CoverH c;
        size_t n = 0;
        load_cover(cover, n, c);
        const auto q = quadrature(quad, g);
        check_status(cc_check_functional(f.p, c.p, &q, tol(1e-6), &text, &pass));
        print(take_json(text), g);
        return verdict(pass);
      }
      Body b;
      load_body(body_path, b);
      std::size_t n = 0;
      check_status(cc_polytope_dim(b.p, &n));
      if (kind == "ball" || kind == "dual-ball") {
        System s;
        load_system(system_path, s);
        check_status(cc_check_ball(kind.c_str(), b.p, s.p, tol(1e-6), &text, &pass));
      } else if (!all_covers.empty()) {
        if (all_covers[0] != n)
          throw Failure{CC_ERR_INVALID_ARGUMENT, "--all-covers n differs from the body dimension"};
        check_status(cc_check_all_covers(kind.c_str(), b.p, all_covers[1], max_parts, g.budget, g.jobs, &text, &pass));
      } else if (kind == "lw" || kind == "meyer") {
        check_status(cc_check(kind.c_str(), b.p, nullptr, &text, &pass));
      } else {
        CoverH c;
        load_cover(cover, n, c);
        check_status(cc_check(kind.c_str(), b.p, c.p, &text, &pass));
      }
      print(take_json(text), g);
      return verdict(pass);
    }

    if (*certify) {
      Body b;
      load_body(body_path, b);
      char* text = nullptr;
      int verified = 0;
      check_status(cc_certify(b.p, tol(1e-9), &text, &verified));
      print(take_json(text), g);
      return verdict(verified);
    }

    if (*covers) {
      char* text = nullptr;
      check_status(cc_covers_enumerate(cov_n, cov_s, max_parts, irreducible ? 1 : 0, g.budget, &text));
      print(take_json(text), g);
      return kPass;
    }

    if (*functional) {
      char* text = nullptr;
      int pass = 1;
      const auto q = quadrature(quad, g);
      if (*integrate) {
        Function f;
        load_function(function_path, f);
        check_status(cc_integrate(f.p, domain.c_str(), &q, power, &text));
      } else if (*lemma) {
        Function f;
        load_function(function_path, f);
        CoverH c;
        load_cover(cover, 0, c);
        check_status(cc_lemma_check(f.p, c.p, samples, g.seed, tol(1e-10), &text, &pass));
      } else {
        CoverH c;
        load_cover(cover, 0, c);
        check_status(cc_gaussian_bl(c.p, &q, tol(1e-2), &text, &pass));
      }
      print(take_json(text), g);
      return verdict(pass);
    }

    if (*isotropic) {
      char* text = nullptr;
      int pass = 1;
      if (*john) {
        System s;
        load_system(system_path, s);
        check_status(cc_john_check(s.p, tol(1e-9), &text, &pass));
      } else if (*hcover) {
        System s;
        load_system(system_path, s);
        check_status(cc_hyperplane_cover(s.p, tol(1e-9), &text));
      } else {
        check_status(cc_sphere_measure(density.c_str(), sphere_n, eps, kappa, raw ? 0 : 1, &text));
      }
      print(take_json(text), g);
      return verdict(pass);
    }
  } catch (const Failure& f) {
    // Library messages already start with the status name.
    const std::string name = cc_status_name(f.status);
    std::cerr << "error: " << (f.message.rfind(name, 0) == 0 ? "" : name + ": ") << f.message << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
