#include "parityrank/certificate_io.hpp"

#include <json.hpp>

#include "parityrank/errors.hpp"

namespace parityrank {

using nlohmann::json;

namespace {

json point_json(const CurvePoint& P) {
  if (P.is_infinity()) return nullptr;
  return json{{"x", to_string(P.x())}, {"y", to_string(P.y())}};
}

json int_list(const std::vector<Int>& values) {
  json out = json::array();
  for (const Int& v : values) out.push_back(to_string(v));
  return out;
}

json class_list(const std::vector<CubeClass>& classes) {
  json out = json::array();
  for (const CubeClass& c : classes) out.push_back(to_string(c.representative()));
  return out;
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw PreconditionError(std::string("certificate: missing field '") + key + "'");
  return obj.at(key);
}

std::string text_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw PreconditionError(std::string("certificate: field '") + key + "' must be a string");
  return v.get<std::string>();
}

Int int_field(const json& obj, const char* key) { return parse_int(text_field(obj, key)); }

long long number_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_integer()) throw PreconditionError(std::string("certificate: field '") + key + "' must be an integer");
  return v.get<long long>();
}

CurvePoint parse_point(const json& v) {
  if (v.is_null()) return CurvePoint::infinity();
  return CurvePoint(parse_rat(text_field(v, "x")), parse_rat(text_field(v, "y")));
}

std::vector<std::string> string_list(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_array()) throw PreconditionError(std::string("certificate: field '") + key + "' must be a list");
  std::vector<std::string> out;
  for (const json& item : v) {
    if (!item.is_string()) throw PreconditionError(std::string("certificate: entries of '") + key + "' must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<Int> int_list_field(const json& obj, const char* key) {
  std::vector<Int> out;
  for (const std::string& s : string_list(obj, key)) out.push_back(parse_int(s));
  return out;
}

std::vector<CubeClass> class_list_field(const json& obj, const char* key) {
  std::vector<CubeClass> out;
  for (const Int& rep : int_list_field(obj, key)) {
    if (rep <= 0) throw PreconditionError("certificate: cube class representatives are positive");
    out.push_back(CubeClass::of(Rat(rep)));
  }
  return out;
}

}  // namespace

std::string emit_certificate(const RankCertificate& cert) {
  check_certificate_fields(cert);
  json j;
  j["family"] = to_string(cert.family);
  j["index"] = cert.family == TorsionFamily::kT2 ? "b" : "a";
  j["a"] = to_string(cert.a);
  j["b"] = to_string(cert.b);
  j["p"] = to_string(cert.p);
  j["q"] = to_string(cert.q);
  j["m"] = to_string(cert.m);
  j["point"] = point_json(cert.witness);
  j["torsion"] = cert.torsion;
  j["torsion_generators"] = json::array();
  for (const CurvePoint& g : cert.torsion_generators) j["torsion_generators"].push_back(point_json(g));
  j["root_number"] = cert.root_number;
  if (const auto* d2 = std::get_if<Descent2Record>(&cert.descent)) {
    j["descent"] = json{{"sel_phi", int_list(d2->sel_phi)},
                        {"sel_phi_dual", int_list(d2->sel_phi_dual)},
                        {"dim_sel_phi", d2->dim_sel_phi},
                        {"dim_sel_phi_dual", d2->dim_sel_phi_dual}};
  } else {
    const auto& d3 = std::get<Descent3Record>(cert.descent);
    j["descent"] = json{{"im_alpha_lower", class_list(d3.im_alpha_lower)},
                        {"im_alpha_upper", class_list(d3.im_alpha_upper)},
                        {"im_alpha_prime_bound", d3.im_alpha_prime_bound},
                        {"witness_alpha", to_string(d3.witness_alpha.representative())}};
  }
  j["rank_interval"] = json::array({cert.rank_lo, cert.rank_hi});
  j["rank_under_parity"] = cert.rank_under_parity ? json(*cert.rank_under_parity) : json(nullptr);
  j["assumes"] = cert.assumes;
  j["notes"] = cert.notes;
  return j.dump();
}

RankCertificate parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("certificate: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw PreconditionError("certificate: expected a JSON object");

  RankCertificate cert;
  const std::string family = text_field(j, "family");
  if (family == "T2") {
    cert.family = TorsionFamily::kT2;
  } else if (family == "T3") {
    cert.family = TorsionFamily::kT3;
  } else {
    throw PreconditionError("certificate: unknown family '" + family + "'");
  }
  const std::string index = text_field(j, "index");
  if (index != (cert.family == TorsionFamily::kT2 ? "b" : "a"))
    throw PreconditionError("certificate: index field does not match the family");
  cert.a = int_field(j, "a");
  cert.b = int_field(j, "b");
  cert.p = int_field(j, "p");
  cert.q = int_field(j, "q");
  cert.m = int_field(j, "m");
  cert.witness = parse_point(field(j, "point"));
  cert.torsion = text_field(j, "torsion");
  const json& gens = field(j, "torsion_generators");
  if (!gens.is_array()) throw PreconditionError("certificate: torsion_generators must be a list");
  for (const json& g : gens) cert.torsion_generators.push_back(parse_point(g));
  cert.root_number = static_cast<int>(number_field(j, "root_number"));

  const json& d = field(j, "descent");
  if (cert.family == TorsionFamily::kT2) {
    Descent2Record rec;
    rec.sel_phi = int_list_field(d, "sel_phi");
    rec.sel_phi_dual = int_list_field(d, "sel_phi_dual");
    rec.dim_sel_phi = static_cast<unsigned>(number_field(d, "dim_sel_phi"));
    rec.dim_sel_phi_dual = static_cast<unsigned>(number_field(d, "dim_sel_phi_dual"));
    cert.descent = std::move(rec);
  } else {
    Descent3Record rec;
    rec.im_alpha_lower = class_list_field(d, "im_alpha_lower");
    rec.im_alpha_upper = class_list_field(d, "im_alpha_upper");
    rec.im_alpha_prime_bound = static_cast<int>(number_field(d, "im_alpha_prime_bound"));
    const Int w = parse_int(text_field(d, "witness_alpha"));
    if (w <= 0) throw PreconditionError("certificate: cube class representatives are positive");
    rec.witness_alpha = CubeClass::of(Rat(w));
    cert.descent = std::move(rec);
  }

  const json& interval = field(j, "rank_interval");
  if (!interval.is_array() || interval.size() != 2 || !interval[0].is_number_integer() ||
      !interval[1].is_number_integer())
    throw PreconditionError("certificate: rank_interval must be [lo, hi]");
  cert.rank_lo = interval[0].get<int>();
  cert.rank_hi = interval[1].get<int>();
  const json& parity = field(j, "rank_under_parity");
  if (parity.is_null()) {
    cert.rank_under_parity.reset();
  } else if (parity.is_number_integer()) {
    cert.rank_under_parity = parity.get<int>();
  } else {
    throw PreconditionError("certificate: rank_under_parity must be an integer or null");
  }
  cert.assumes = string_list(j, "assumes");
  cert.notes = string_list(j, "notes");
  return cert;
}

}  // namespace parityrank
