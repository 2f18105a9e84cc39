#pragma once

#include <charconv>
#include <complex>
#include <string>

#include <json.hpp>

#include "ptb/verifier.hpp"

namespace ptb {

// Reports keep a stable key order and contain nothing run-dependent beyond
// the computation itself, so identical configurations serialize to identical
// bytes.
using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

inline Json complex_json(const std::complex<double>& z) {
  return Json::array({z.real(), z.imag()});
}

inline Json check_json(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["status"] = c.pass ? "pass" : "fail";
  j["detail"] = c.detail;
  return j;
}

inline Json checks_json(const std::vector<CheckResult>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back(check_json(c));
  return arr;
}

template <class Real>
Json fiber_report_json(const FiberReport<Real>& rep) {
  Json j;
  j["component"] = component_name(rep.component);
  j["c"] = complex_json({double(rep.c.real()), double(rep.c.imag())});
  j["fiber_degree"] = rep.fiber_degree;
  Json roots = Json::array();
  for (const auto& r : rep.roots) {
    Json e;
    e["y"] = complex_json({double(r.y.real()), double(r.y.imag())});
    e["torsion"] = complex_json({double(r.torsion.real()), double(r.torsion.imag())});
    e["inv_torsion"] =
        complex_json({double(r.inv_torsion.real()), double(r.inv_torsion.imag())});
    roots.push_back(e);
  }
  j["roots"] = roots;
  j["sum"] = complex_json({double(rep.sum.real()), double(rep.sum.imag())});
  j["normalized_residual"] = double(rep.normalized_residual);
  j["genericity"] = Json{{"squarefree", rep.genericity.squarefree},
                         {"const_nonzero", rep.genericity.const_nonzero},
                         {"min_separation", rep.genericity.min_separation}};
  if (rep.expected_sum) {
    j["expected_sum"] =
        complex_json({double(rep.expected_sum->real()), double(rep.expected_sum->imag())});
  }
  return j;
}

namespace detail {

inline std::string num_str(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace detail

inline std::string fiber_csv_header() {
  return "command,n,p,q,component,seed,precision,c_re,c_im,root_index,y_re,y_im,"
         "torsion_re,torsion_im,inv_torsion_re,inv_torsion_im,sum_re,sum_im,"
         "normalized_residual,squarefree,const_nonzero,min_separation\n";
}

template <class Real>
void append_fiber_csv(std::string& out, const std::string& command, long n,
                      const SlopeParam& sp, std::uint64_t seed, const std::string& precision,
                      const FiberReport<Real>& rep) {
  using detail::num_str;
  const std::string prefix = command + "," + std::to_string(n) + "," + std::to_string(sp.p) +
                             "," + std::to_string(sp.q) + "," + component_name(rep.component) +
                             "," + std::to_string(seed) + "," + precision + "," +
                             num_str(double(rep.c.real())) + "," + num_str(double(rep.c.imag()));
  const std::string suffix =
      num_str(double(rep.sum.real())) + "," + num_str(double(rep.sum.imag())) + "," +
      num_str(double(rep.normalized_residual)) + "," +
      (rep.genericity.squarefree ? "1" : "0") + "," +
      (rep.genericity.const_nonzero ? "1" : "0") + "," + num_str(rep.genericity.min_separation);
  for (size_t i = 0; i < rep.roots.size(); ++i) {
    const auto& r = rep.roots[i];
    out += prefix + "," + std::to_string(i) + "," + num_str(double(r.y.real())) + "," +
           num_str(double(r.y.imag())) + "," + num_str(double(r.torsion.real())) + "," +
           num_str(double(r.torsion.imag())) + "," + num_str(double(r.inv_torsion.real())) +
           "," + num_str(double(r.inv_torsion.imag())) + "," + suffix + "\n";
  }
}

}  // namespace ptb
