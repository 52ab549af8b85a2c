#pragma once

// JSON encodings of models, balls and reports. Rationals are "num/den"
// strings, keys are emitted in sorted order so output is byte-stable.

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "padet/counting.hpp"

namespace padet::io {

using nlohmann::json;

inline constexpr const char* kSchema = "v1";

inline json rational(const Rational& q) { return format_rational(q); }

inline Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw std::invalid_argument("expected a rational string or an integer, got " + j.dump());
}

inline json rationals(std::span<const Rational> qs) {
  json out = json::array();
  for (const auto& q : qs) out.push_back(rational(q));
  return out;
}

inline json ext_int(const ExtInt& e) {
  if (e.is_infinite()) return "inf";
  return e.value();
}

inline json ball(const Ball& b) { return {{"center", rational(b.center)}, {"radius_exp", b.radius_exp}}; }

inline Ball ball_from(const json& j) { return {rational_from(j.at("center")), j.at("radius_exp").get<std::int64_t>()}; }

inline json rv_class(const RvClass& k) {
  if (k.zero) return {{"zero", true}};
  return {{"v", k.v}, {"residue", k.residue.get_str()}, {"modulus", k.modulus.get_str()}};
}

inline json point(const Point& pt) { return json::array({rational(pt.x), rational(pt.y)}); }

inline json points(std::span<const Point> pts) {
  json out = json::array();
  for (const auto& pt : pts) out.push_back(point(pt));
  return out;
}

inline json interval(const Interval& i) { return {{"lower", i.lower()}, {"upper", i.upper()}}; }

inline json model(const FunctionModel& f) {
  json coeffs = rationals(f.coefficients());
  if (f.coefficients().empty()) coeffs = json::array({"0"});
  if (f.is_polynomial()) return {{"kind", "polynomial"}, {"coeffs", coeffs}};
  const auto& t = f.tail();
  return {{"kind", "series"},
          {"coeffs", coeffs},
          {"trunc", std::max<long>(f.degree(), 0)},
          {"tail", {{"type", "geometric"}, {"base_valuation", t.slope}, {"offset", t.offset}, {"start", t.start}}}};
}

// {"kind":"polynomial","coeffs":[...]} or {"kind":"series","coeffs":[...],
// "trunc":T,"tail":{"type":"geometric","base_valuation":b}}; the tail may
// also carry "offset" and "start" (defaults 0 and T+1). Coefficients past
// index T are dropped.
inline FunctionModel model_from(const json& j, Prime p) {
  const auto kind = j.at("kind").get<std::string>();
  poly::Coeffs coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(rational_from(c));
  if (kind == "polynomial") return FunctionModel::polynomial(std::move(coeffs), p);
  if (kind != "series") throw std::invalid_argument("unknown model kind '" + kind + "'");
  const auto trunc = j.at("trunc").get<std::int64_t>();
  const auto& tail = j.at("tail");
  if (tail.at("type").get<std::string>() != "geometric")
    throw std::invalid_argument("unsupported tail type " + tail.at("type").dump());
  TailBound bound{tail.value("offset", std::int64_t{0}), tail.at("base_valuation").get<std::int64_t>(),
                  tail.value("start", trunc + 1)};
  if (coeffs.size() > static_cast<std::size_t>(trunc + 1)) coeffs.resize(static_cast<std::size_t>(trunc + 1));
  return FunctionModel::series(std::move(coeffs), bound, p);
}

inline FunctionModel load_model(const std::string& path, Prime p) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file '" + path + "'");
  return model_from(json::parse(in), p);
}

inline json constants(const MethodConstants& k) {
  return {{"d", k.d}, {"r", k.r}, {"e", k.e}, {"epsilon", rational(k.epsilon)}};
}

inline json report(const Report& rep) {
  json vs = json::array();
  for (const auto& v : rep.violations)
    vs.push_back({{"kind", v.kind}, {"witness", rationals(v.witness)}, {"detail", v.detail}});
  return {{"checked", rep.checked}, {"uncertain", rep.uncertain}, {"violations", rep.violation_count},
          {"witnesses", vs}, {"ok", rep.ok()}};
}

inline json census(const CensusReport& rep) {
  json classes = json::array();
  for (const auto& k : rep.classes) classes.push_back(rv_class(k));
  return {{"classes", classes},
          {"count", rep.count()},
          {"bound_lower", rep.bound.lower()},
          {"bound_upper", rep.bound.upper()},
          {"ok", rep.ok}};
}

inline json separation(const SeparationReport& rep) {
  json fails = json::array();
  for (const auto& w : rep.hypothesis_failures)
    fails.push_back({{"x", rational(w.x)}, {"y", rational(w.y)}, {"reason", w.reason}});
  return {{"m", rep.m},
          {"bound", rep.bound.get_str()},
          {"hypotheses_hold", rep.hypotheses_hold()},
          {"hypothesis_failures", fails},
          {"conclusion_holds", rep.conclusion_holds}};
}

inline json curve(const AlgebraicCurve& c) {
  json terms = json::array();
  auto mons = monomials(c.degree_bound());
  for (std::size_t i = 0; i < mons.size(); ++i)
    if (c.coefficients()[i] != 0)
      terms.push_back({{"x", mons[i].first}, {"y", mons[i].second}, {"coeff", c.coefficients()[i].get_str()}});
  return {{"degree_bound", c.degree_bound()}, {"terms", terms}};
}

inline json m_constant(const MConstant& m) {
  json out = interval(m.value);
  out["attained_at_H1"] = m.attained_at_one;
  if (m.attained_at_one) out["exact"] = m.exact.get_str();
  return out;
}

inline json catch_report(const CatchReport& rep) {
  json groups = json::array();
  for (const auto& g : rep.groups) {
    groups.push_back({{"ball", ball(g.outer)},
                      {"anchor", rational(g.anchor)},
                      {"scaled_ball", ball(g.inner)},
                      {"points", points(g.points)},
                      {"rank", g.rank},
                      {"curve", curve(*g.curve)}});
  }
  json curves = json::array();
  for (const auto& c : rep.curves) curves.push_back(curve(c));
  return {{"constants", constants(rep.constants)},
          {"N", rep.n_threshold},
          {"graph_points", rep.graph_points.size()},
          {"groups", groups},
          {"curves", curves},
          {"curve_count", rep.curve_count()},
          {"m", m_constant(rep.m)},
          {"bound", interval(rep.bound.bound)},
          {"bound_ok", rep.bound.holds},
          {"coverage_ok", rep.coverage_ok},
          {"approximate", rep.approximate}};
}

inline json certificate(const CountCertificate& cert) {
  json per_curve = json::array();
  for (const auto& cp : cert.per_curve) per_curve.push_back({{"curve", curve(cp.curve)}, {"points", points(cp.points)}});
  json input = {{"f", model(cert.f)},
                {"c", rational(cert.centre)},
                {"M", cert.m.get_str()},
                {"d", cert.d},
                {"H", cert.h},
                {"p", cert.f.prime()}};
  json out = {{"schema", kSchema},
              {"input", input},
              {"parametrization_check", report(cert.parametrization_check)},
              {"catch", catch_report(cert.catch_report)},
              {"per_curve", per_curve},
              {"count", cert.pipeline_count()},
              {"pipeline_count", cert.pipeline_count()},
              {"oracle_count", cert.oracle_count()},
              {"oracle_match", cert.oracle_match()},
              {"uncovered", points(cert.uncovered)},
              {"curve_count", cert.curve_count()},
              {"intersection_bound_used", cert.intersection_bound},
              {"bound_cprime", interval(cert.bound_cprime)},
              {"bezout_ok", cert.bezout_ok},
              {"bound_ok", cert.bound_ok},
              {"approximate", cert.approximate},
              {"ok", cert.ok()}};
  out["centre_point"] = cert.centre_point ? point(*cert.centre_point) : json(nullptr);
  if (!cert.oracle_match()) {
    out["pipeline_points"] = points(cert.pipeline_points);
    out["oracle_points"] = points(cert.oracle_points);
  }
  return out;
}

inline json scaling(std::span<const ScalingRow> rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"H", r.h}, {"count", r.count}, {"bound", r.bound.lower()}, {"ratio", r.ratio}, {"ok", r.ok}});
  return out;
}

inline std::string scaling_csv(std::span<const ScalingRow> rows) {
  std::ostringstream os;
  os.precision(17);
  os << "H,count,bound,ratio\n";
  for (const auto& r : rows) os << r.h << ',' << r.count << ',' << r.bound.lower() << ',' << r.ratio << '\n';
  return os.str();
}

}  // namespace padet::io
