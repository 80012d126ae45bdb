#include "covol/report.hpp"

#include <sstream>

#include "covol/error.hpp"

namespace covol::report {

namespace {

std::string num(const Interval& iv, unsigned digits) {
  Real m = iv.midpoint();
  Real out(digits_to_bits(digits));
  mpfr_set(out.get(), m.get(), MPFR_RNDN);
  return out.to_string(digits);
}

std::string num(const arith::AlgebraicValue& v, unsigned digits) {
  return arith::numeric_eval(v, digits).to_string(digits);
}

std::string num(const local::LocalValue& v, unsigned digits) {
  return num(v.enclose(digits_to_bits(digits) + 32), digits);
}

json algebraic_json(const arith::AlgebraicValue& v, unsigned digits) {
  return {{"coeff", v.coeff.get_str()},
          {"pi_exp", v.pi_exp},
          {"sqrtD_exp", v.sqrtD_exp},
          {"D", v.D},
          {"numeric", num(v, digits)}};
}

json local_value_json(const local::LocalValue& v, unsigned digits) {
  return {{"coeff", v.coeff.get_str()}, {"half_q_exp", v.half_q_exp}, {"q", v.q}, {"numeric", num(v, digits)}};
}

json header(const std::string& command) { return {{"schema_version", kSchemaVersion}, {"command", command}}; }

}  // namespace

json profile_json(const local::LocalProfile& p) {
  json blocks = json::array();
  for (const auto& b : p.jordan) {
    json jb = {{"index", b.index}, {"rank", b.rank}};
    if (p.type == local::PlaceType::Ramified && b.index % 2 == 0)
      jb["disc_class"] = b.disc == 0 ? json("unknown") : json(b.disc);
    blocks.push_back(jb);
  }
  return {{"p", p.p},
          {"place_type", std::string(local::to_string(p.type))},
          {"q", p.q()},
          {"q_E", p.q_E().get_str()},
          {"d", p.d()},
          {"jordan", blocks},
          {"N_v", p.N_v()},
          {"i_rel", p.i_rel()},
          {"ambiguous_type", p.ambiguous()}};
}

json covolume_json(const volume::CovolumeResult& r, unsigned digits) {
  json locals = json::object();
  for (const auto& [p, v] : r.local_factors) {
    json entry = local_value_json(v, digits);
    entry["profile"] = profile_json(r.profiles.at(p));
    locals[std::to_string(p)] = entry;
  }
  json trace = json::array();
  for (const auto& f : r.formula_trace) trace.push_back({{"name", f.name}, {"value", algebraic_json(f.value, digits)}});
  return {{"exact", r.value.get_str()},
          {"numeric", arith::numeric_eval(arith::AlgebraicValue::rational(r.value), digits).to_string(digits)},
          {"local_factors", locals},
          {"formula_trace", trace},
          {"center_factor", r.center_order}};
}

json volume_report(const hermitian::HermitianLattice& L, unsigned digits) {
  const auto cov = volume::su_covolume(L);
  const auto hm = volume::hm_volume_su(L);
  const auto [lower, upper] = volume::hm_bounds_U(L);
  auto [pos, neg] = hermitian::signature(L);
  json doc = header("volume");
  doc["inputs"] = {{"lattice", json::parse(hermitian::serialize_lattice(L))}};
  doc["D"] = L.D();
  doc["n"] = cov.n;
  doc["signature"] = {pos, neg};
  doc["det_gram"] = hermitian::det_gram(L).get_str();
  doc["su_covolume"] = covolume_json(cov, digits);
  doc["center_order"] = volume::center_order(L);
  doc["su_center_order"] = volume::su_center_order(L);
  doc["hm_volume_su"] = {{"exact", hm.value.get_str()},
                         {"numeric", arith::numeric_eval(arith::AlgebraicValue::rational(hm.value), digits).to_string(digits)}};
  doc["hm_bounds_U"] = {{"lower", lower.value.get_str()}, {"upper", upper.value.get_str()}};
  return doc;
}

json criterion_report(const freeness::CriterionReport& r, unsigned digits) {
  json places = json::array();
  for (const auto& row : r.places) {
    places.push_back({{"profile", profile_json(row.profile)},
                      {"phi_sum", row.phi_sum.to_string()},
                      {"phi_sum_bound", local_value_json(row.phi_bound, digits)},
                      {"within_bound", row.within_bound}});
  }
  json doc = header("criterion");
  doc["n"] = r.n;
  doc["D"] = r.D;
  doc["N_of_L"] = r.N.get_str();
  doc["epsilon"] = r.epsilon.get_str();
  doc["unimodular"] = r.unimodular;
  doc["bound_value"] = {{"base", algebraic_json(r.bound_value.base, digits)},
                        {"power_base", r.bound_value.power_base.get_str()},
                        {"power_exp", r.bound_value.power_exp.get_str()},
                        {"numeric", r.bound_value.numeric(digits).to_string(digits)}};
  doc["threshold"] = r.threshold.get_str();
  doc["verdict"] = freeness::to_string(r.verdict);
  doc["places"] = places;
  return doc;
}

json slope_report(const freeness::SlopeReport& r, unsigned digits) {
  json doc = header("reflective");
  doc["inputs"] = {{"n", r.n}, {"D", r.D}, {"slope", r.slope_queried.get_str()}};
  doc["g_value"] = algebraic_json(r.g_value, digits);
  doc["verdict"] = freeness::to_string(r.verdict);
  doc["corollary_g_ge_1_over_n_plus_1"] = r.corollary_holds;
  return doc;
}

json threshold_report(const freeness::ThresholdReport& r, unsigned digits) {
  json doc = header("scan");
  doc["inputs"] = {{"D", r.D}, {"n_max", r.n_max}};
  doc["threshold_n"] = r.threshold_n ? json(*r.threshold_n) : json(nullptr);
  doc["monotone_tail"] = r.monotone_tail;
  doc["failing_n_count"] = r.failing_n.size();
  if (r.threshold_n) {
    const int n0 = *r.threshold_n;
    doc["f_at_threshold"] = num(freeness::f_bound(n0, r.D), digits);
    if (n0 > 3) doc["f_before_threshold"] = num(freeness::f_bound(n0 - 1, r.D), digits);
  }
  return doc;
}

json exceptions_report(long D_max, const Integer& N_max, const std::vector<freeness::ExceptionRange>& ranges) {
  json doc = header("exceptions");
  doc["inputs"] = {{"D_max", D_max}, {"N_max", N_max.get_str()}, {"n_min", 3}};
  json list = json::array();
  Integer total = 0;
  for (const auto& r : ranges) {
    list.push_back({{"D", r.D}, {"n", r.n}, {"N_from", 1}, {"N_to", r.N_upper.get_str()}});
    total += r.N_upper;
  }
  doc["ranges"] = list;
  doc["triple_count"] = total.get_str();
  return doc;
}

json cubic_report(const freeness::CubicReport& r, unsigned digits) {
  json doc = header("cubic");
  json lam = json::array();
  for (const auto& l : r.lambdas) {
    json cands = json::array();
    for (const auto& v : l.candidates) cands.push_back(local_value_json(v, digits));
    lam.push_back({{"name", l.name}, {"n", l.n}, {"profile", profile_json(l.profile)}, {"lambda_candidates", cands}});
  }
  json ratios = json::array();
  for (const auto& c : r.ratios)
    ratios.push_back({{"name", c.name},
                      {"min", local_value_json(c.min_ratio, digits)},
                      {"max", local_value_json(c.max_ratio, digits)},
                      {"at_most_one", c.holds}});
  json trace = json::array();
  for (const auto& [name, v] : r.trace) trace.push_back({{"name", name}, {"value", algebraic_json(v, digits)}});
  doc["lambdas"] = lam;
  doc["lambda_ratios"] = ratios;
  doc["weights"] = r.weights.get_str();
  doc["lhs_exact"] = r.lhs_exact.get_str();
  doc["lhs_numeric"] = num(r.lhs, digits);
  doc["rhs"] = r.rhs.get_str();
  doc["lhs_below_rhs"] = r.lhs_below_rhs;
  doc["margin"] = Rational(Rational(r.rhs) - r.lhs_exact).get_str();
  doc["verdict"] = r.verdict;
  doc["trace"] = trace;
  return doc;
}

namespace {

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
  return r + "\"";
}

}  // namespace

std::string render(const json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  std::ostringstream os;
  if (format == "csv") {
    os << "path,value\n";
    for (const auto& [k, v] : rows) os << csv_field(k) << ',' << csv_field(v) << '\n';
  } else if (format == "text") {
    for (const auto& [k, v] : rows) os << k << ": " << v << '\n';
  } else {
    throw Error(Errc::DomainError, "unknown format " + format);
  }
  return os.str();
}

}  // namespace covol::report
