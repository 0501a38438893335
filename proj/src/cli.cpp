#include "hyparr/cli.hpp"

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "hyparr/io.hpp"

namespace hyparr {

namespace {

std::size_t resolve_pivot(const Arrangement& arr, const std::string& sel) {
  std::optional<std::size_t> by_label;
  for (std::size_t i = 0; i < arr.labels.size(); ++i)
    if (arr.labels[i] == sel) {
      by_label = i;
      break;
    }
  std::optional<std::size_t> by_index;
  if (!sel.empty() && sel.find_first_not_of("0123456789") == std::string::npos) {
    const std::size_t v = std::stoul(sel);
    if (v < arr.size()) by_index = v;
  }
  if (by_label) {
    if (by_index && *by_index != *by_label)
      std::cerr << "warning: pivot '" << sel
                << "' matches both a label and an index; using the label\n";
    return *by_label;
  }
  if (by_index) return *by_index;
  throw std::invalid_argument("pivot '" + sel + "' matches no hyperplane label or index");
}

void require_central(const Arrangement& arr, const std::string& command) {
  if (!arr.is_central())
    throw std::invalid_argument(command + " requires a central arrangement");
}

int cmd_poset(const ArrangementFile& file, bool as_json) {
  const IntersectionPoset poset = build_poset(file.ma.base);
  if (as_json) {
    nlohmann::json out = poset_to_json(poset, file.ma.base);
    out["schema_version"] = 1;
    out["command"] = "poset";
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  const auto vars = default_var_names(poset.dim);
  for (std::size_t r = 0; r < poset.by_rank.size(); ++r) {
    std::cout << "rank " << r << ": " << poset.by_rank[r].size() << " flat(s)\n";
    for (std::size_t id : poset.by_rank[r]) {
      std::cout << "  " << flat_pretty(poset.flats[id], vars)
                << "   mobius = " << to_string(poset.mobius[id]) << "   in {";
      bool first = true;
      for (auto i : poset.flats[id].contains) {
        if (!first) std::cout << ", ";
        std::cout << file.ma.base.labels[i];
        first = false;
      }
      std::cout << "}\n";
    }
  }
  return 0;
}

int cmd_charpoly(const ArrangementFile& file, bool as_json) {
  const IntPoly chi = charpoly(file.ma.base);
  if (as_json) {
    nlohmann::json out = poly_to_json(chi);
    out["schema_version"] = 1;
    out["command"] = "charpoly";
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << chi.pretty() << "\n";
  }
  return 0;
}

int cmd_betti(const ArrangementFile& file, bool as_json) {
  const IntPoly chi = charpoly(file.ma.base);
  nlohmann::json arrjson = nlohmann::json::array();
  for (std::size_t k = 0; k <= file.ma.base.dim; ++k) {
    const Int b = betti_of(chi, file.ma.base.dim, k);
    if (as_json)
      arrjson.push_back(to_string(b));
    else
      std::cout << "b_" << k << " = " << to_string(b) << "\n";
  }
  if (as_json) {
    nlohmann::json out{{"schema_version", 1}, {"command", "betti"}, {"betti", arrjson}};
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_decone(const ArrangementFile& file, const std::string& pivot_sel, bool as_json) {
  require_central(file.ma.base, "decone");
  const std::size_t pivot = resolve_pivot(file.ma.base, pivot_sel);
  const DeconedArrangement d = decone(file.ma.base, pivot);
  const MultiArrangement out = simple_multi(d.base);
  if (as_json) {
    std::cout << serialize_arrangement(out, file.ma.base.labels[pivot]);
  } else {
    const auto vars = default_var_names(d.base.dim);
    std::cout << "deconing at " << file.ma.base.labels[pivot] << ", dimension "
              << d.base.dim << ":\n";
    for (std::size_t i = 0; i < d.base.size(); ++i)
      std::cout << "  " << d.base.labels[i] << ": "
                << equation_pretty(d.base.hyperplanes[i].normal,
                                   d.base.hyperplanes[i].offset, vars)
                << "\n";
    std::cout << "chi = " << charpoly(d.base).pretty() << "\n";
  }
  return 0;
}

int cmd_ziegler(const ArrangementFile& file, const std::string& pivot_sel, bool as_json) {
  require_central(file.ma.base, "ziegler");
  const std::size_t pivot = resolve_pivot(file.ma.base, pivot_sel);
  const MultiArrangement zr = ziegler_restrict(file.ma.base, pivot);
  if (as_json) {
    std::cout << serialize_arrangement(zr, file.ma.base.labels[pivot]);
  } else {
    std::cout << "multiarrangement {";
    for (std::size_t i = 0; i < zr.base.size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << zr.base.labels[i] << ":" << zr.mult[i];
    }
    std::cout << "}\n";
    std::cout << "Q = " << defining_form_pretty(zr) << "\n";
  }
  return 0;
}

int cmd_sigma(const ArrangementFile& file, bool as_json) {
  require_central(file.ma.base, "sigma");
  const SigmaReport report = sigma(file.ma);
  const SaitoSearchResult search = find_saito_basis(essentialize_multi(file.ma).ma);
  if (as_json) {
    nlohmann::json out = sigma_to_json(file.ma, report, search);
    out["schema_version"] = 1;
    out["command"] = "sigma";
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  const auto vars = default_var_names(file.ma.base.dim);
  std::cout << "sigma1 = " << to_string(report.sigma1) << "\n";
  for (const auto& entry : report.per_flat) {
    std::cout << "  [" << flat_pretty(entry.flat, vars) << "]  mult (";
    for (std::size_t i = 0; i < entry.mults.size(); ++i)
      std::cout << (i ? "," : "") << entry.mults[i];
    std::cout << ")  exponents (" << entry.exps.e1 << ", " << entry.exps.e2
              << ")  product " << entry.exps.e1 * entry.exps.e2 << "\n";
  }
  std::cout << "sigma2 = " << to_string(report.sigma2) << "\n";
  if (search.status == SaitoStatus::Free) {
    std::vector<unsigned> exps = search.certificate->exponents;
    while (exps.size() < file.ma.base.dim) exps.insert(exps.begin(), 0u);
    std::cout << "free multiarrangement; chi = " << free_multi_charpoly(exps).pretty()
              << "\n";
  } else {
    std::cout << "sigma3 and higher: unavailable (multiarrangement not certified free)\n";
  }
  return 0;
}

int cmd_exponents2(const ArrangementFile& file, bool as_json) {
  require_central(file.ma.base, "exponents2");
  const EssentialMulti ess = essentialize_multi(file.ma);
  if (ess.ma.base.dim > 2)
    throw std::invalid_argument("exponents2 requires an arrangement of rank at most 2");
  MultiArrangement two = ess.ma;
  if (two.base.dim < 2) {
    // present a rank<=1 arrangement in two variables
    Arrangement lifted;
    lifted.dim = 2;
    for (std::size_t i = 0; i < two.base.size(); ++i) {
      QVector nn = two.base.hyperplanes[i].normal;
      nn.resize(2, Rat(0));
      lifted.hyperplanes.push_back(Hyperplane{std::move(nn), Rat(0)});
      lifted.labels.push_back(two.base.labels[i]);
    }
    two.base = std::move(lifted);
  }
  const ExponentPair e = rank2_exponents(two);
  if (as_json) {
    nlohmann::json out = exponents_to_json(e);
    out["schema_version"] = 1;
    out["command"] = "exponents2";
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "(" << e.e1 << ", " << e.e2 << ")\n";
  }
  return 0;
}

int cmd_certify(const ArrangementFile& file, bool as_json) {
  require_central(file.ma.base, "certify");
  const EssentialMulti ess = essentialize_multi(file.ma);
  const SaitoSearchResult res = find_saito_basis(ess.ma);
  if (as_json) {
    nlohmann::json out = saito_result_to_json(res, ess.ma.base.dim);
    out["schema_version"] = 1;
    out["command"] = "certify";
    out["essential_dim"] = ess.ma.base.dim;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  switch (res.status) {
    case SaitoStatus::Free: {
      std::cout << "free; exponents (";
      const auto& e = res.certificate->exponents;
      for (std::size_t i = 0; i < e.size(); ++i) std::cout << (i ? ", " : "") << e[i];
      std::cout << ") after essentialization to dimension " << ess.ma.base.dim
                << "; det = " << to_string(res.certificate->determinant_scalar)
                << " * Q\n";
      break;
    }
    case SaitoStatus::NonFree: {
      std::cout << "non-free; greedy degrees (";
      const auto& w = *res.witness;
      for (std::size_t i = 0; i < w.partial_degrees.size(); ++i)
        std::cout << (i ? ", " : "") << w.partial_degrees[i];
      std::cout << ") force the degree sum past deg Q by degree " << w.stopped_at_degree
                << "\n";
      break;
    }
    case SaitoStatus::Undetermined:
      std::cout << "undetermined\n";
      break;
  }
  return 0;
}

int cmd_check_free(const ArrangementFile& file, const std::string& pivot_sel, bool as_json) {
  require_central(file.ma.base, "check-free");
  const std::size_t pivot = resolve_pivot(file.ma.base, pivot_sel);
  const FreenessReport rep = check_freeness(file.ma.base, pivot);
  if (as_json) {
    nlohmann::json out = freeness_report_to_json(rep, file.ma.base);
    out["schema_version"] = 1;
    out["command"] = "check-free";
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "pivot = " << rep.pivot_label << "\n";
  std::cout << "chi(decone) = " << rep.chi_decone.pretty() << "\n";
  std::cout << "b2 = " << to_string(rep.b2) << "\n";
  std::cout << "sigma2 = " << to_string(rep.sigma2) << "\n";
  std::cout << "b2 >= sigma2: " << (rep.inequality_ok ? "yes" : "no")
            << (rep.equality ? " (equality)" : "") << "\n";
  const auto rvars = default_var_names(file.ma.base.dim - 1);
  for (const auto& p : rep.per_flat) {
    std::cout << "  [" << flat_pretty(p.flat, rvars) << "]  exponents (" << p.exps.e1
              << ", " << p.exps.e2 << ")  fiber b2 = " << to_string(p.fiber_b2) << "\n";
  }
  std::cout << "locally free in codimension 3 along the pivot: "
            << (rep.codim3.all_free ? "yes" : "no") << " (" << rep.codim3.entries.size()
            << " flat(s) checked)\n";
  std::cout << "multirestriction: ";
  switch (rep.multirestriction.status) {
    case SaitoStatus::Free: {
      std::cout << "free, exponents (";
      for (std::size_t i = 0; i < rep.restriction_exponents.size(); ++i)
        std::cout << (i ? ", " : "") << rep.restriction_exponents[i];
      std::cout << ")\n";
      break;
    }
    case SaitoStatus::NonFree: std::cout << "non-free\n"; break;
    case SaitoStatus::Undetermined: std::cout << "undetermined\n"; break;
  }
  std::cout << "chi0 integer roots: ";
  if (rep.chi0_integer_roots.empty()) std::cout << "none";
  for (std::size_t i = 0; i < rep.chi0_integer_roots.size(); ++i)
    std::cout << (i ? ", " : "") << to_string(rep.chi0_integer_roots[i]);
  std::cout << (rep.chi0_splits ? " (splits over the integers)"
                                : " (does not split over the integers)")
            << "\n";
  std::cout << "verdict = " << to_string(rep.verdict) << "\n";
  return 0;
}

int cmd_gap(const ArrangementFile& file, const std::string& pivot_sel, bool as_json) {
  require_central(file.ma.base, "gap");
  const std::size_t pivot = resolve_pivot(file.ma.base, pivot_sel);
  const GapReport gap = ziegler_gap(file.ma.base, pivot);
  if (as_json) {
    nlohmann::json out = gap_to_json(gap);
    out["schema_version"] = 1;
    out["command"] = "gap";
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "b1 - sigma1 = " << to_string(gap.b1_minus_sigma1) << "\n";
  std::cout << "b2 - sigma2 = " << to_string(gap.b2_minus_sigma2) << "\n";
  if (gap.gap_poly) {
    std::cout << "chi(decone) - product formula = " << gap.gap_poly->pretty()
              << (*gap.gap_constant ? " (constant)" : " (not constant)") << "\n";
  } else {
    std::cout << "full polynomial gap unavailable (multirestriction not certified free)\n";
  }
  return 0;
}

bool file_equal(const ArrangementFile& a, const ArrangementFile& b) {
  if (a.ma.base.dim != b.ma.base.dim || a.ma.base.size() != b.ma.base.size()) return false;
  if (a.ma.mult != b.ma.mult || a.ma.base.labels != b.ma.base.labels) return false;
  for (std::size_t i = 0; i < a.ma.base.size(); ++i) {
    if (!(a.ma.base.hyperplanes[i].normal == b.ma.base.hyperplanes[i].normal)) return false;
    if (a.ma.base.hyperplanes[i].offset != b.ma.base.hyperplanes[i].offset) return false;
  }
  return true;
}

int cmd_selftest(const std::string& dir) {
  namespace fs = std::filesystem;
  std::size_t checked = 0, failed = 0;
  auto report = [&](const std::string& file, const std::string& what, bool ok) {
    ++checked;
    if (!ok) {
      ++failed;
      std::cout << "FAIL " << file << ": " << what << "\n";
    }
  };
  std::vector<fs::path> paths;
  if (!fs::is_directory(dir)) {
    std::cerr << "catalog directory not found: " << dir << "\n";
    return 2;
  }
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".arr") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());

  for (const auto& path : paths) {
    const std::string name = path.filename().string();
    ArrangementFile file;
    try {
      file = load_arrangement(path.string());
    } catch (const ParseError& e) {
      report(name, std::string("parse: ") + e.what(), false);
      continue;
    }
    const Arrangement& arr = file.ma.base;

    report(name, "round-trip",
           file_equal(file, parse_arrangement_text(serialize_arrangement(file.ma))));

    const IntersectionPoset poset = build_poset(arr);
    bool mobius_ok = true;
    for (std::size_t id = 1; id < poset.flats.size(); ++id) {
      Int sum(0);
      for (std::size_t j = 0; j < poset.flats.size(); ++j)
        if (poset.leq(j, id)) sum += poset.mobius[j];
      if (sum != 0) mobius_ok = false;
    }
    report(name, "mobius recursion", mobius_ok);

    for (std::size_t k = 1; k < poset.by_rank.size(); ++k)
      report(name, "local-global betti k=" + std::to_string(k),
             localglobal_betti_check(arr, k));

    if (arr.is_central() && arr.size() > 0) {
      const IntPoly chi = charpoly(poset);
      const IntPoly t_minus_1(std::vector<Int>{Int(-1), Int(1)});
      for (std::size_t pivot = 0; pivot < arr.size(); ++pivot) {
        const DeconedArrangement d = decone(arr, pivot);
        report(name, "deconing identity at pivot " + std::to_string(pivot),
               charpoly(d.base) * t_minus_1 == chi);
        if (arr.dim >= 3) {
          const Int b2 = betti_of(charpoly(d.base), arr.dim - 1, 2);
          const Int s2 = sigma(ziegler_restrict(arr, pivot)).sigma2;
          report(name, "b2 >= sigma2 at pivot " + std::to_string(pivot), b2 >= s2);
        }
      }
      report(name, "local-global sigma k=1", localglobal_sigma_check(file.ma, 1));
      report(name, "local-global sigma k=2", localglobal_sigma_check(file.ma, 2));
    }
  }
  std::cout << (failed == 0 ? "selftest passed" : "selftest FAILED") << " (" << checked
            << " checks on " << paths.size() << " files, " << failed << " failures)\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"exact computations with hyperplane arrangements"};
  app.require_subcommand(1);

  std::string input, pivot, format = "text", catalog = "catalog";

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "arrangement file")->required();
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_pivot = [&](CLI::App* cmd) {
    cmd->add_option("--pivot", pivot, "pivot hyperplane (label or 0-based index)")
        ->required();
  };

  CLI::App* poset_cmd = app.add_subcommand("poset", "intersection poset with Möbius values");
  add_input(poset_cmd);
  CLI::App* charpoly_cmd = app.add_subcommand("charpoly", "characteristic polynomial");
  add_input(charpoly_cmd);
  CLI::App* betti_cmd = app.add_subcommand("betti", "Betti numbers b_k");
  add_input(betti_cmd);
  CLI::App* decone_cmd = app.add_subcommand("decone", "decone at a pivot hyperplane");
  add_input(decone_cmd);
  add_pivot(decone_cmd);
  CLI::App* ziegler_cmd = app.add_subcommand("ziegler", "multirestriction at a pivot");
  add_input(ziegler_cmd);
  add_pivot(ziegler_cmd);
  CLI::App* sigma_cmd = app.add_subcommand("sigma", "sigma coefficients and exponent table");
  add_input(sigma_cmd);
  CLI::App* exp_cmd = app.add_subcommand("exponents2", "exponents of a rank-2 multiarrangement");
  add_input(exp_cmd);
  CLI::App* certify_cmd = app.add_subcommand("certify", "Saito basis search");
  add_input(certify_cmd);
  CLI::App* check_cmd = app.add_subcommand("check-free", "freeness diagnosis at a pivot");
  add_input(check_cmd);
  add_pivot(check_cmd);
  CLI::App* gap_cmd = app.add_subcommand("gap", "Betti/sigma gap report at a pivot");
  add_input(gap_cmd);
  add_pivot(gap_cmd);
  CLI::App* selftest_cmd = app.add_subcommand("selftest", "run invariants on the catalog");
  selftest_cmd->add_option("catalog", catalog, "catalog directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (selftest_cmd->parsed()) return cmd_selftest(catalog);
    const ArrangementFile file = load_arrangement(input);
    const bool as_json = format == "json";
    if (poset_cmd->parsed()) return cmd_poset(file, as_json);
    if (charpoly_cmd->parsed()) return cmd_charpoly(file, as_json);
    if (betti_cmd->parsed()) return cmd_betti(file, as_json);
    if (decone_cmd->parsed()) return cmd_decone(file, pivot, as_json);
    if (ziegler_cmd->parsed()) return cmd_ziegler(file, pivot, as_json);
    if (sigma_cmd->parsed()) return cmd_sigma(file, as_json);
    if (exp_cmd->parsed()) return cmd_exponents2(file, as_json);
    if (certify_cmd->parsed()) return cmd_certify(file, as_json);
    if (check_cmd->parsed()) return cmd_check_free(file, pivot, as_json);
    if (gap_cmd->parsed()) return cmd_gap(file, pivot, as_json);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return 0;
}

}  // namespace hyparr
