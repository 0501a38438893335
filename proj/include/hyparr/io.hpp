#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hyparr/freeness.hpp"
#include "hyparr/multi.hpp"

namespace hyparr {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ArrangementFile {
  MultiArrangement ma;
  std::optional<std::string> pivot_of;
};

ArrangementFile parse_arrangement_text(const std::string& text);
ArrangementFile load_arrangement(const std::string& path);

nlohmann::json arrangement_to_json(const MultiArrangement& ma,
                                   const std::optional<std::string>& pivot_of = {});
std::string serialize_arrangement(const MultiArrangement& ma,
                                  const std::optional<std::string>& pivot_of = {});

std::vector<std::string> default_var_names(std::size_t dim);
std::string linear_form_pretty(const QVector& normal, const std::vector<std::string>& vars);
std::string equation_pretty(const QVector& normal, const Rat& offset,
                            const std::vector<std::string>& vars);
std::string flat_pretty(const Flat& flat, const std::vector<std::string>& vars);
std::string defining_form_pretty(const MultiArrangement& ma);

nlohmann::json poly_to_json(const IntPoly& p);
nlohmann::json poset_to_json(const IntersectionPoset& poset, const Arrangement& arr);
nlohmann::json sigma_to_json(const MultiArrangement& ma, const SigmaReport& report,
                             const SaitoSearchResult& search);
nlohmann::json exponents_to_json(const ExponentPair& e);
nlohmann::json certificate_to_json(const FreenessCertificate& cert, std::size_t nvars);
nlohmann::json saito_result_to_json(const SaitoSearchResult& res, std::size_t nvars);
nlohmann::json freeness_report_to_json(const FreenessReport& rep, const Arrangement& arr);
nlohmann::json gap_to_json(const GapReport& gap);

}  // namespace hyparr
