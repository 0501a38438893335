#include "hyparr/io.hpp"

#include <fstream>
#include <sstream>

namespace hyparr {

using nlohmann::json;

ArrangementFile parse_arrangement_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top-level document must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long>() < 1)
    throw ParseError("missing or invalid 'dim'");
  const auto dim = doc["dim"].get<std::size_t>();
  if (!doc.contains("hyperplanes") || !doc["hyperplanes"].is_array())
    throw ParseError("missing 'hyperplanes' list");

  std::vector<Hyperplane> hs;
  std::vector<std::string> labels;
  std::vector<unsigned> mults;
  std::size_t index = 0;
  for (const auto& entry : doc["hyperplanes"]) {
    const std::string where = "hyperplane " + std::to_string(index);
    if (!entry.is_object()) throw ParseError(where + ": expected an object");
    if (!entry.contains("coeffs") || !entry["coeffs"].is_array())
      throw ParseError(where + ": missing 'coeffs'");
    QVector normal;
    for (const auto& c : entry["coeffs"]) {
      if (!c.is_string()) throw ParseError(where + ": coefficients must be rational strings");
      try {
        normal.push_back(parse_rat(c.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
    if (normal.size() != dim)
      throw ParseError(where + ": expected " + std::to_string(dim) + " coefficients");
    Rat offset(0);
    if (entry.contains("offset")) {
      if (!entry["offset"].is_string())
        throw ParseError(where + ": offset must be a rational string");
      try {
        offset = parse_rat(entry["offset"].get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
    labels.push_back(entry.contains("label") && entry["label"].is_string()
                         ? entry["label"].get<std::string>()
                         : "H" + std::to_string(index));
    unsigned mult = 1;
    if (entry.contains("mult")) {
      if (!entry["mult"].is_number_integer() || entry["mult"].get<long>() < 1)
        throw ParseError(where + ": mult must be a positive integer");
      mult = entry["mult"].get<unsigned>();
    }
    mults.push_back(mult);
    if (is_zero(normal)) throw ParseError(where + ": zero normal vector");
    hs.push_back(Hyperplane{std::move(normal), std::move(offset)});
    ++index;
  }

  ArrangementFile out;
  try {
    out.ma = make_multi(make_arrangement(dim, std::move(hs), std::move(labels)),
                        std::move(mults));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (doc.contains("pivot_of") && doc["pivot_of"].is_string())
    out.pivot_of = doc["pivot_of"].get<std::string>();
  return out;
}

ArrangementFile load_arrangement(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_arrangement_text(buf.str());
}

json arrangement_to_json(const MultiArrangement& ma,
                         const std::optional<std::string>& pivot_of) {
  json doc;
  doc["schema_version"] = 1;
  doc["dim"] = ma.base.dim;
  doc["hyperplanes"] = json::array();
  for (std::size_t i = 0; i < ma.base.size(); ++i) {
    json h;
    h["coeffs"] = json::array();
    for (const auto& c : ma.base.hyperplanes[i].normal) h["coeffs"].push_back(to_string(c));
    h["offset"] = to_string(ma.base.hyperplanes[i].offset);
    h["label"] = ma.base.labels[i];
    h["mult"] = ma.mult[i];
    doc["hyperplanes"].push_back(std::move(h));
  }
  if (pivot_of) doc["pivot_of"] = *pivot_of;
  return doc;
}

std::string serialize_arrangement(const MultiArrangement& ma,
                                  const std::optional<std::string>& pivot_of) {
  return arrangement_to_json(ma, pivot_of).dump(2) + "\n";
}

std::vector<std::string> default_var_names(std::size_t dim) {
  static const char* short_names[] = {"x", "y", "z", "w"};
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < dim; ++i)
    vars.push_back(dim <= 4 ? short_names[i] : "z" + std::to_string(i + 1));
  return vars;
}

std::string linear_form_pretty(const QVector& normal, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < normal.size(); ++i) {
    const Rat& c = normal[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rat a = neg ? Rat(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (a != 1) out += to_string(a) + "*";
    out += vars[i];
  }
  return out.empty() ? "0" : out;
}

std::string equation_pretty(const QVector& normal, const Rat& offset,
                            const std::vector<std::string>& vars) {
  return linear_form_pretty(normal, vars) + " = " + to_string(offset);
}

std::string flat_pretty(const Flat& flat, const std::vector<std::string>& vars) {
  if (flat.rank() == 0) return "(ambient space)";
  std::string out;
  for (std::size_t r = 0; r < flat.equations.rows(); ++r) {
    if (r > 0) out += ", ";
    QVector normal(flat.equations.cols() - 1);
    for (std::size_t c = 0; c + 1 < flat.equations.cols(); ++c)
      normal[c] = flat.equations.at(r, c);
    out += equation_pretty(normal, flat.equations.at(r, flat.equations.cols() - 1), vars);
  }
  return out;
}

std::string defining_form_pretty(const MultiArrangement& ma) {
  const auto vars = default_var_names(ma.base.dim);
  std::string out;
  for (std::size_t i = 0; i < ma.base.size(); ++i) {
    if (ma.mult[i] == 0) continue;
    std::string factor = linear_form_pretty(ma.base.hyperplanes[i].normal, vars);
    bool atom = factor.find(' ') == std::string::npos && factor.find('*') == std::string::npos;
    if (!atom || ma.mult[i] > 1) factor = "(" + factor + ")";
    if (ma.mult[i] > 1) factor += "^" + std::to_string(ma.mult[i]);
    out += factor;
  }
  return out.empty() ? "1" : out;
}

json poly_to_json(const IntPoly& p) {
  json out;
  out["coeffs"] = json::array();
  for (long k = 0; k <= std::max(p.degree(), 0L); ++k)
    out["coeffs"].push_back(to_string(p.coeff(static_cast<std::size_t>(k))));
  out["pretty"] = p.pretty();
  return out;
}

json poset_to_json(const IntersectionPoset& poset, const Arrangement& arr) {
  const auto vars = default_var_names(poset.dim);
  json out;
  out["dim"] = poset.dim;
  out["flat_counts"] = json::array();
  for (const auto& level : poset.by_rank) out["flat_counts"].push_back(level.size());
  out["flats"] = json::array();
  for (std::size_t r = 0; r < poset.by_rank.size(); ++r) {
    for (std::size_t id : poset.by_rank[r]) {
      json f;
      f["rank"] = r;
      f["equations"] = flat_pretty(poset.flats[id], vars);
      f["mobius"] = to_string(poset.mobius[id]);
      f["contains"] = json::array();
      for (auto i : poset.flats[id].contains) f["contains"].push_back(arr.labels[i]);
      out["flats"].push_back(std::move(f));
    }
  }
  return out;
}

json exponents_to_json(const ExponentPair& e) {
  return json{{"e1", e.e1}, {"e2", e.e2}};
}

json certificate_to_json(const FreenessCertificate& cert, std::size_t nvars) {
  const auto vars = default_var_names(nvars);
  json out;
  out["exponents"] = cert.exponents;
  out["determinant_scalar"] = to_string(cert.determinant_scalar);
  out["basis"] = json::array();
  for (const auto& t : cert.basis) {
    json d;
    d["degree"] = t.degree;
    d["coeffs"] = json::array();
    for (const auto& f : t.coeffs) {
      json terms = json::object();
      for (const auto& [mono, c] : f.terms()) {
        std::string key;
        for (std::size_t i = 0; i < mono.size(); ++i) {
          if (mono[i] == 0) continue;
          if (!key.empty()) key += "*";
          key += vars[i];
          if (mono[i] > 1) key += "^" + std::to_string(mono[i]);
        }
        if (key.empty()) key = "1";
        terms[key] = to_string(c);
      }
      d["coeffs"].push_back(std::move(terms));
    }
    out["basis"].push_back(std::move(d));
  }
  return out;
}

json saito_result_to_json(const SaitoSearchResult& res, std::size_t nvars) {
  json out;
  switch (res.status) {
    case SaitoStatus::Free: out["status"] = "free"; break;
    case SaitoStatus::NonFree: out["status"] = "non-free"; break;
    case SaitoStatus::Undetermined: out["status"] = "undetermined"; break;
  }
  if (res.certificate) out["certificate"] = certificate_to_json(*res.certificate, nvars);
  if (res.witness) {
    out["witness"] = json{{"partial_degrees", res.witness->partial_degrees},
                          {"stopped_at_degree", res.witness->stopped_at_degree}};
  }
  return out;
}

json sigma_to_json(const MultiArrangement& ma, const SigmaReport& report,
                   const SaitoSearchResult& search) {
  const auto vars = default_var_names(ma.base.dim);
  json out;
  out["sigma1"] = to_string(report.sigma1);
  out["sigma2"] = to_string(report.sigma2);
  out["per_flat"] = json::array();
  for (const auto& entry : report.per_flat) {
    json f;
    f["flat"] = flat_pretty(entry.flat, vars);
    f["mults"] = entry.mults;
    f["exponents"] = exponents_to_json(entry.exps);
    f["product"] = entry.exps.e1 * entry.exps.e2;
    out["per_flat"].push_back(std::move(f));
  }
  out["saito"] = saito_result_to_json(search, ma.base.dim);
  if (search.status == SaitoStatus::Free) {
    std::vector<unsigned> exps = search.certificate->exponents;
    while (exps.size() < ma.base.dim) exps.insert(exps.begin(), 0u);
    out["chi"] = poly_to_json(free_multi_charpoly(exps));
  } else {
    // higher coefficients need the full Hilbert-series machinery, which this
    // tool does not provide for non-free multiarrangements
    out["sigma3"] = "unavailable";
  }
  return out;
}

json freeness_report_to_json(const FreenessReport& rep, const Arrangement& arr) {
  const auto restriction_vars = default_var_names(arr.dim - 1);
  json out;
  out["pivot"] = rep.pivot;
  out["pivot_label"] = rep.pivot_label;
  out["b2"] = to_string(rep.b2);
  out["sigma2"] = to_string(rep.sigma2);
  out["inequality_ok"] = rep.inequality_ok;
  out["equality"] = rep.equality;
  out["chi_decone"] = poly_to_json(rep.chi_decone);
  out["per_flat"] = json::array();
  for (const auto& p : rep.per_flat) {
    json f;
    f["flat"] = flat_pretty(p.flat, restriction_vars);
    f["mults"] = p.mults;
    f["exponents"] = exponents_to_json(p.exps);
    f["product"] = p.exps.e1 * p.exps.e2;
    f["fiber_b2"] = to_string(p.fiber_b2);
    out["per_flat"].push_back(std::move(f));
  }
  out["codim3_scan"] = json::array();
  const auto vars = default_var_names(arr.dim);
  for (const auto& e : rep.codim3.entries) {
    json f;
    f["flat"] = flat_pretty(e.flat, vars);
    f["b2"] = to_string(e.local.b2);
    f["sigma2"] = to_string(e.local.sigma2);
    f["free"] = e.local.free;
    out["codim3_scan"].push_back(std::move(f));
  }
  out["locally_free_codim3"] = rep.codim3.all_free;
  out["multirestriction"] = saito_result_to_json(rep.multirestriction, arr.dim - 1);
  if (!rep.restriction_exponents.empty())
    out["restriction_exponents"] = rep.restriction_exponents;
  json roots = json::array();
  for (const auto& r : rep.chi0_integer_roots) roots.push_back(to_string(r));
  out["chi0_note"] = json{{"integer_roots", std::move(roots)},
                          {"splits_over_integers", rep.chi0_splits}};
  out["verdict"] = to_string(rep.verdict);
  return out;
}

json gap_to_json(const GapReport& gap) {
  json out;
  out["b1_minus_sigma1"] = to_string(gap.b1_minus_sigma1);
  out["b2_minus_sigma2"] = to_string(gap.b2_minus_sigma2);
  if (gap.gap_poly) {
    out["gap_poly"] = poly_to_json(*gap.gap_poly);
    out["gap_constant"] = *gap.gap_constant;
  } else {
    out["gap_poly"] = "unavailable (multirestriction not certified free)";
  }
  return out;
}

}  // namespace hyparr
