#pragma once
// JSON serialization for model descriptors. Conventions:
//   - every scalar serializes as a two-element array [re, im]
//   - exact backend: components are reduced fraction strings ("3/4", "-2")
//   - float backend: components are IEEE doubles (shortest round-trip form)
// Parsing is strict about shapes and kinds but tolerant about scalar form:
// the float backend also accepts fraction strings and bare numbers, so exact
// descriptors feed float pipelines directly. Malformed input raises
// domain_violation.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "duality/cc_duality.hpp"
#include "duality/manybody.hpp"
#include "duality/spectral_models.hpp"

namespace duality {

using njson = nlohmann::json;

// Reduced fraction text <-> exact rational component ("p/q", "/1" omitted).
std::string bigq_to_string(const bigq& v);
bigq bigq_from_string(const std::string& s);

inline njson scalar_to_json(const rat& v) {
  return njson::array({bigq_to_string(v.re()), bigq_to_string(v.im())});
}
inline njson scalar_to_json(const cplx& v) {
  return njson::array({v.real(), v.imag()});
}

namespace detail {

// One component of a scalar: a number for the float backend, a fraction
// string for either backend.
template <class S>
S component_from_json(const njson& j);

template <>
inline bigq component_from_json<bigq>(const njson& j) {
  if (j.is_string()) return bigq_from_string(j.get<std::string>());
  if (j.is_number_integer()) return bigq(j.get<long long>());
  throw domain_violation(
      "json: exact scalar component must be a fraction string or integer");
}

template <>
inline double component_from_json<double>(const njson& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string())
    return bigq_from_string(j.get<std::string>()).convert_to<double>();
  throw domain_violation("json: scalar component must be a number or fraction string");
}

}  // namespace detail

template <class S>
S scalar_from_json(const njson& j);

template <>
inline rat scalar_from_json<rat>(const njson& j) {
  if (!j.is_array()) return rat(detail::component_from_json<bigq>(j));
  if (j.size() != 2) throw domain_violation("json: scalar must be a [re, im] pair");
  return rat(detail::component_from_json<bigq>(j[0]),
             detail::component_from_json<bigq>(j[1]));
}

template <>
inline cplx scalar_from_json<cplx>(const njson& j) {
  if (!j.is_array()) return cplx(detail::component_from_json<double>(j), 0.0);
  if (j.size() != 2) throw domain_violation("json: scalar must be a [re, im] pair");
  return cplx(detail::component_from_json<double>(j[0]),
              detail::component_from_json<double>(j[1]));
}

template <class S>
njson vector_to_json(const std::vector<S>& v) {
  njson out = njson::array();
  for (const S& x : v) out.push_back(scalar_to_json(x));
  return out;
}

template <class S>
std::vector<S> vector_from_json(const njson& j) {
  if (!j.is_array()) throw domain_violation("json: expected an array of scalars");
  std::vector<S> out;
  out.reserve(j.size());
  for (const njson& e : j) out.push_back(scalar_from_json<S>(e));
  return out;
}

template <class S>
njson matrix_to_json(const matrix<S>& m) {
  njson out = njson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
  return out;
}

template <class S>
matrix<S> matrix_from_json(const njson& j) {
  if (!j.is_array() || j.empty())
    throw domain_violation("json: expected a non-empty array of rows");
  const std::vector<S> first = vector_from_json<S>(j[0]);
  matrix<S> m(j.size(), first.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::vector<S> row = vector_from_json<S>(j[i]);
    if (row.size() != first.size())
      throw domain_violation("json: ragged matrix rows");
    for (std::size_t k = 0; k < row.size(); ++k) m(i, k) = row[k];
  }
  return m;
}

// {"kind": ..., "q": [...], "p": [...], "nu": [re, im], "multiplicative": bool}
// The flag records whether the stored positions are multiplicative (w = e^q),
// which is fixed by the kind; a contradicting flag is rejected.
template <class S>
njson manybody_to_json(model_kind k, const phase_point<S>& x) {
  validate_phase_point(k, x);
  njson j;
  j["kind"] = kind_name(k);
  j["q"] = vector_to_json(x.q);
  j["p"] = vector_to_json(x.p);
  j["nu"] = scalar_to_json(x.nu);
  j["multiplicative"] = position_multiplicative(k);
  return j;
}

template <class S>
std::pair<model_kind, phase_point<S>> manybody_from_json(const njson& j) {
  if (!j.is_object()) throw domain_violation("json: model descriptor must be an object");
  for (const char* key : {"kind", "q", "p", "nu", "multiplicative"})
    if (!j.contains(key))
      throw domain_violation(std::string("json: model descriptor missing '") + key + "'");
  const model_kind k = kind_from_name(j["kind"].get<std::string>());
  if (!j["multiplicative"].is_boolean() ||
      j["multiplicative"].get<bool>() != position_multiplicative(k))
    throw domain_violation(
        "json: 'multiplicative' must match the kind's position convention");
  phase_point<S> x;
  x.q = vector_from_json<S>(j["q"]);
  x.p = vector_from_json<S>(j["p"]);
  x.nu = scalar_from_json<S>(j["nu"]);
  validate_phase_point(k, x);
  return {k, x};
}

// {"kind": ..., "twist": [...diagonal...], "poles": [...], "xi": [[...]],
//  "eta": [[...]]}; only diagonal twists cross the JSON boundary.
template <class S>
njson multipole_to_json(const multi_pole_lax<S>& L) {
  validate_lax(L);
  for (std::size_t i = 0; i < L.twist.rows(); ++i)
    for (std::size_t k = 0; k < L.twist.cols(); ++k)
      if (i != k && !scalar_ops<S>::is_zero(L.twist(i, k)))
        throw domain_violation("json: only diagonal twists serialize");
  njson j;
  j["kind"] = lax_kind_name(L.kind);
  j["twist"] = vector_to_json(L.twist.diag());
  j["poles"] = vector_to_json(L.poles);
  j["xi"] = matrix_to_json(L.xi);
  j["eta"] = matrix_to_json(L.eta);
  return j;
}

template <class S>
multi_pole_lax<S> multipole_from_json(const njson& j) {
  if (!j.is_object()) throw domain_violation("json: Lax descriptor must be an object");
  for (const char* key : {"kind", "twist", "poles", "xi", "eta"})
    if (!j.contains(key))
      throw domain_violation(std::string("json: Lax descriptor missing '") + key + "'");
  multi_pole_lax<S> L;
  L.kind = lax_kind_from_name(j["kind"].get<std::string>());
  L.twist = matrix<S>::diagonal(vector_from_json<S>(j["twist"]));
  L.poles = vector_from_json<S>(j["poles"]);
  L.xi = matrix_from_json<S>(j["xi"]);
  L.eta = matrix_from_json<S>(j["eta"]);
  validate_lax(L);
  return L;
}

// {"base": [[...]], "poles": [...], "residues": [[[...]]]}
template <class S>
njson connection_to_json(const pole_connection<S>& c) {
  validate_connection(c);
  njson j;
  j["base"] = matrix_to_json(c.base);
  j["poles"] = vector_to_json(c.poles);
  njson res = njson::array();
  for (const auto& r : c.residues) res.push_back(matrix_to_json(r));
  j["residues"] = res;
  return j;
}

template <class S>
pole_connection<S> connection_from_json(const njson& j) {
  if (!j.is_object())
    throw domain_violation("json: connection descriptor must be an object");
  for (const char* key : {"base", "poles", "residues"})
    if (!j.contains(key))
      throw domain_violation(std::string("json: connection descriptor missing '") +
                             key + "'");
  pole_connection<S> c;
  c.base = matrix_from_json<S>(j["base"]);
  c.poles = vector_from_json<S>(j["poles"]);
  if (!j["residues"].is_array())
    throw domain_violation("json: 'residues' must be an array of matrices");
  for (const njson& r : j["residues"]) c.residues.push_back(matrix_from_json<S>(r));
  validate_connection(c);
  return c;
}

// Canonical text form: sorted keys (nlohmann objects are ordered maps),
// two-space indent, trailing newline. Reports compare byte-for-byte.
std::string canonical_dump(const njson& j);

// Parse with json errors converted to the library's error taxonomy.
njson parse_json(const std::string& text);

}  // namespace duality
