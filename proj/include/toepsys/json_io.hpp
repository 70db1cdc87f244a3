#pragma once

// JSON shapes: complex numbers are [re, im]; Toeplitz {"n", "t"} and
// FRElement {"n", "a"} list coefficients in ascending k = -n+1..n-1;
// circulants {"m", "c"} list c_0..c_{m-1}. Numbers are written with 17
// significant digits.

#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "toepsys/circulant.hpp"
#include "toepsys/core.hpp"
#include "toepsys/decompose.hpp"
#include "toepsys/factor.hpp"
#include "toepsys/metric.hpp"
#include "toepsys/states.hpp"

namespace toepsys {

using json = nlohmann::json;

namespace detail {

inline void dump_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

inline void dump_into(std::string& out, const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(k).dump();
        out += ':';
        dump_into(out, v);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_into(out, j[i]);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: dump_number(out, j.get<double>()); break;
    default: out += j.dump(); break;
  }
}

inline const json& field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorKind::invalid_argument, std::string("json: missing field \"") + key + "\"");
  return j.at(key);
}

inline int integer(const json& j) {
  require(j.is_number_integer(), ErrorKind::invalid_argument, "json: expected an integer");
  return j.get<int>();
}

inline double number(const json& j) {
  require(j.is_number(), ErrorKind::invalid_argument, "json: expected a number");
  return j.get<double>();
}

}  // namespace detail

/// Compact JSON with every float at 17 significant digits.
inline std::string dump(const json& j) {
  std::string out;
  detail::dump_into(out, j);
  return out;
}

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json to_json(std::span<const cplx> v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2, ErrorKind::invalid_argument, "json: complex number must be [re, im]");
  return {detail::number(j[0]), detail::number(j[1])};
}

inline std::vector<cplx> complex_list_from_json(const json& j) {
  require(j.is_array(), ErrorKind::invalid_argument, "json: expected an array of complex numbers");
  std::vector<cplx> out;
  for (const auto& v : j) out.push_back(complex_from_json(v));
  return out;
}

inline json to_json(const ToeplitzMatrix& t) {
  return {{"n", t.n()}, {"t", to_json(t.coeffs())}};
}

inline json to_json(const FRElement& a) {
  return {{"n", a.n()}, {"a", to_json(a.coeffs())}};
}

inline json to_json(const CirculantMatrix& c) {
  return {{"m", c.m}, {"c", to_json(c.c)}};
}

namespace detail {

inline std::vector<cplx> centered_from_json(const json& j, const char* key) {
  const int n = integer(field(j, "n"));
  auto c = complex_list_from_json(field(j, key));
  require(n >= 1, ErrorKind::invalid_argument, "json: n must be >= 1");
  require(static_cast<int>(c.size()) == 2 * n - 1, ErrorKind::size_mismatch,
          std::string("json: \"") + key + "\" must hold 2n-1 coefficients");
  return c;
}

}  // namespace detail

inline ToeplitzMatrix toeplitz_from_json(const json& j) { return ToeplitzMatrix(detail::centered_from_json(j, "t")); }

inline FRElement fr_element_from_json(const json& j) { return FRElement(detail::centered_from_json(j, "a")); }

inline CirculantMatrix circulant_from_json(const json& j) {
  const int m = detail::integer(detail::field(j, "m"));
  auto c = complex_list_from_json(detail::field(j, "c"));
  require(m >= 1, ErrorKind::invalid_argument, "json: m must be >= 1");
  require(static_cast<int>(c.size()) == m, ErrorKind::size_mismatch, "json: \"c\" must hold m coefficients");
  return {m, std::move(c)};
}

inline json to_json(const VandermondeDecomposition& vd) {
  return {{"rank", vd.r}, {"angles", vd.angles}, {"weights", vd.weights}};
}

inline json to_json(const ConvexProgramResult& r) {
  return {{"value", r.value}, {"lower", r.lower}, {"upper", r.upper}, {"iterations", r.iterations}, {"converged", r.converged}};
}

}  // namespace toepsys
