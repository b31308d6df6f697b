#pragma once

// Affine cross-polytope certificates: C = conv{±lambda_i e_i} with |C| = |K|
// and |C ∩ F_sigma| >= |K ∩ F_sigma| for every coordinate subspace.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "covercert/polytope.hpp"

namespace covercert {

struct CrossPolytopeCertificate {
  std::size_t n = 0;
  std::vector<double> lambdas;
  std::vector<double> t;  // t_i = 2 lambda_i
  Rational target_volume;
  // Keyed by CoordSet text; (|C ∩ F| - |K ∩ F|) / |K ∩ F|. Includes [n].
  std::map<std::string, double> section_slacks;
  double volume_residual = 0;
  double min_slack = 0;  // over proper subsets
  // Optimal minimum log-slack of the selection LP.
  double log_margin = 0;
};

struct CertifyOptions {
  double tol = 1e-9;
};

// Solves, in x = log t, sum x = log(n!|K|) and
// sum_{i in sigma} x_i >= log(|sigma|! |K ∩ F_sigma|) for proper sigma,
// choosing the lexicographic max-min slack point. The LP is solved exactly
// over the rationalized logarithms.
CrossPolytopeCertificate certify(const Polytope& k, const CertifyOptions& opt = {});

struct CertificateCheck {
  bool pass = false;
  double volume_residual = 0;
  double min_slack = 0;
  std::map<std::string, double> section_slacks;
};

// Recomputes all section volumes exactly and compares against the
// cross-polytope closed forms.
CertificateCheck verify_certificate(const Polytope& k, const std::vector<double>& lambdas, double tol = 1e-9);
inline CertificateCheck verify_certificate(const Polytope& k, const CrossPolytopeCertificate& cert,
                                           double tol = 1e-9) {
  return verify_certificate(k, cert.lambdas, tol);
}

// The box prod [0, t_i]: |B| = n!|K| and |B ∩ F_sigma| = t_sigma.
struct CertificateBox {
  std::vector<double> sides;
  double volume = 0;
  std::map<std::string, double> face_volumes;  // t_sigma = prod_{i in sigma} t_i
};
CertificateBox box_form(const CrossPolytopeCertificate& cert);

}  // namespace covercert
