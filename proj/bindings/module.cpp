#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyparr/io.hpp"

namespace py = pybind11;
using namespace hyparr;

namespace {

py::object int_to_py(const Int& z) { return py::int_(py::str(z.get_str())); }

py::object json_to_py(const nlohmann::json& j) {
  py::module_ pyjson = py::module_::import("json");
  return pyjson.attr("loads")(j.dump());
}

/// Arrangement with multiplicities, as read from the file format.
struct PyArrangement {
  MultiArrangement ma;

  static PyArrangement from_json(const std::string& text) {
    return PyArrangement{parse_arrangement_text(text).ma};
  }

  static PyArrangement build(std::size_t dim,
                             const std::vector<std::vector<std::string>>& coeffs,
                             const std::vector<std::string>& offsets,
                             const std::vector<std::string>& labels,
                             const std::vector<unsigned>& mults) {
    std::vector<Hyperplane> hs;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      QVector normal;
      for (const auto& c : coeffs[i]) normal.push_back(parse_rat(c));
      Rat offset = offsets.empty() ? Rat(0) : parse_rat(offsets[i]);
      hs.push_back(Hyperplane{std::move(normal), std::move(offset)});
    }
    Arrangement arr = make_arrangement(dim, std::move(hs), labels);
    std::vector<unsigned> m = mults.empty() ? std::vector<unsigned>(arr.size(), 1u) : mults;
    return PyArrangement{make_multi(std::move(arr), std::move(m))};
  }

  std::string to_json() const { return serialize_arrangement(ma); }
  std::size_t dim() const { return ma.base.dim; }
  std::size_t size() const { return ma.base.size(); }
  bool is_central() const { return ma.base.is_central(); }
  std::vector<std::string> labels() const { return ma.base.labels; }
  std::vector<unsigned> mults() const { return ma.mult; }

  std::vector<py::object> charpoly_coeffs() const {
    const IntPoly chi = charpoly(ma.base);
    std::vector<py::object> out;
    for (long k = 0; k <= std::max(chi.degree(), 0L); ++k)
      out.push_back(int_to_py(chi.coeff(static_cast<std::size_t>(k))));
    return out;
  }

  std::string charpoly_pretty() const { return charpoly(ma.base).pretty(); }

  py::object betti(std::size_t k) const { return int_to_py(hyparr::betti(ma.base, k)); }

  std::vector<std::size_t> flat_counts() const {
    const IntersectionPoset poset = build_poset(ma.base);
    std::vector<std::size_t> counts;
    for (const auto& level : poset.by_rank) counts.push_back(level.size());
    return counts;
  }

  py::object poset() const {
    return json_to_py(poset_to_json(build_poset(ma.base), ma.base));
  }

  PyArrangement decone_at(const std::string& pivot) const {
    const std::size_t p = pivot_index(pivot);
    return PyArrangement{simple_multi(decone(ma.base, p).base)};
  }

  PyArrangement ziegler_at(const std::string& pivot) const {
    const std::size_t p = pivot_index(pivot);
    return PyArrangement{ziegler_restrict(ma.base, p)};
  }

  py::object sigma_report() const {
    const SigmaReport rep = sigma(ma);
    const SaitoSearchResult search = find_saito_basis(essentialize_multi(ma).ma);
    return json_to_py(sigma_to_json(ma, rep, search));
  }

  std::pair<unsigned, unsigned> exponents2() const {
    const EssentialMulti ess = essentialize_multi(ma);
    if (ess.ma.base.dim > 2)
      throw std::invalid_argument("exponents2 requires rank at most 2");
    MultiArrangement two = ess.ma;
    if (two.base.dim < 2) {
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
    return {e.e1, e.e2};
  }

  py::object certify() const {
    const EssentialMulti ess = essentialize_multi(ma);
    return json_to_py(saito_result_to_json(find_saito_basis(ess.ma), ess.ma.base.dim));
  }

  py::object check_free(const std::string& pivot) const {
    const std::size_t p = pivot_index(pivot);
    return json_to_py(freeness_report_to_json(check_freeness(ma.base, p), ma.base));
  }

  py::object gap(const std::string& pivot) const {
    const std::size_t p = pivot_index(pivot);
    return json_to_py(gap_to_json(ziegler_gap(ma.base, p)));
  }

  std::size_t pivot_index(const std::string& sel) const {
    for (std::size_t i = 0; i < ma.base.labels.size(); ++i)
      if (ma.base.labels[i] == sel) return i;
    if (!sel.empty() && sel.find_first_not_of("0123456789") == std::string::npos) {
      const std::size_t v = std::stoul(sel);
      if (v < ma.base.size()) return v;
    }
    throw std::invalid_argument("pivot '" + sel + "' matches no label or index");
  }
};

}  // namespace

PYBIND11_MODULE(hyparr, m) {
  m.doc() = "exact computations with hyperplane arrangements";

  py::class_<PyArrangement>(m, "Arrangement")
      .def_static("from_json", &PyArrangement::from_json, py::arg("text"))
      .def(py::init(&PyArrangement::build), py::arg("dim"), py::arg("coeffs"),
           py::arg("offsets") = std::vector<std::string>{},
           py::arg("labels") = std::vector<std::string>{},
           py::arg("mults") = std::vector<unsigned>{})
      .def("to_json", &PyArrangement::to_json)
      .def_property_readonly("dim", &PyArrangement::dim)
      .def("__len__", &PyArrangement::size)
      .def_property_readonly("labels", &PyArrangement::labels)
      .def_property_readonly("mults", &PyArrangement::mults)
      .def_property_readonly("is_central", &PyArrangement::is_central)
      .def("charpoly", &PyArrangement::charpoly_coeffs,
           "characteristic polynomial coefficients, constant term first")
      .def("charpoly_pretty", &PyArrangement::charpoly_pretty)
      .def("betti", &PyArrangement::betti, py::arg("k"))
      .def("flat_counts", &PyArrangement::flat_counts)
      .def("poset", &PyArrangement::poset)
      .def("decone", &PyArrangement::decone_at, py::arg("pivot"))
      .def("ziegler", &PyArrangement::ziegler_at, py::arg("pivot"))
      .def("sigma", &PyArrangement::sigma_report)
      .def("exponents2", &PyArrangement::exponents2)
      .def("certify", &PyArrangement::certify)
      .def("check_free", &PyArrangement::check_free, py::arg("pivot"))
      .def("gap", &PyArrangement::gap, py::arg("pivot"));

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
}
