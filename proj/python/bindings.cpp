#include "latrep/snf.hpp"
#include "latrep/suite.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace latrep;

namespace {

using StrMatrix = std::vector<std::vector<std::string>>;

ExactMatrix from_rows(const StrMatrix& rows) {
    if (rows.empty() || rows[0].empty())
        throw InputError("matrix rows must be non-empty");
    ExactMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw InputError("ragged matrix input");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(i, j) = parse_rational(rows[i][j]);
    }
    return m;
}

StrMatrix to_rows(const ExactMatrix& m) {
    StrMatrix rows(m.rows(), std::vector<std::string>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            rows[i][j] = format_rational(m(i, j));
    return rows;
}

FormKind parse_kind(const std::string& kind) {
    if (kind == "symmetric") return FormKind::symmetric;
    if (kind == "alternating") return FormKind::alternating;
    throw InputError("unknown form kind: " + kind);
}

BilinearForm form_from(const StrMatrix& gram, const std::string& kind,
                       unsigned long ell) {
    return BilinearForm(from_rows(gram), parse_kind(kind), Int(ell));
}

GroupAction action_from(const std::vector<StrMatrix>& gens) {
    if (gens.empty()) throw InputError("action needs at least one generator");
    std::vector<ExactMatrix> mats;
    mats.reserve(gens.size());
    for (const auto& g : gens) mats.push_back(from_rows(g));
    return GroupAction(mats[0].rows(), std::move(mats));
}

}  // namespace

PYBIND11_MODULE(_latrep, m) {
    m.doc() = "Exact root/weight lattice, invariant pairing, and tensor "
              "discriminant verification";

    m.attr("__version__") = kVersion;

    m.def("valuation",
          [](const std::string& x, unsigned long ell) {
              return valuation(parse_rational(x), Int(ell));
          },
          py::arg("x"), py::arg("ell"),
          "Largest v with ell^v dividing the rational x");

    m.def("snf",
          [](const StrMatrix& rows) {
              SnfResult s = snf(from_rows(rows));
              std::vector<std::string> diag;
              for (const Int& d : s.diag) diag.push_back(d.get_str());
              py::dict out;
              out["diag"] = diag;
              out["left"] = to_rows(s.left);
              out["right"] = to_rows(s.right);
              return out;
          },
          py::arg("matrix"),
          "Smith normal form with unimodular transform certificates");

    m.def("rref_modp",
          [](const StrMatrix& rows, unsigned long p) {
              RrefModP red = rref_modp(ModPMatrix::from_exact(from_rows(rows), p));
              py::dict out;
              out["rank"] = red.rank;
              std::vector<std::vector<std::uint64_t>> kernel;
              if (!red.kernel_trivial) {
                  kernel.resize(red.kernel.cols());
                  for (std::size_t c = 0; c < red.kernel.cols(); ++c) {
                      kernel[c].resize(red.kernel.rows());
                      for (std::size_t r = 0; r < red.kernel.rows(); ++r)
                          kernel[c][r] = red.kernel(r, c);
                  }
              }
              out["kernel"] = kernel;
              return out;
          },
          py::arg("matrix"), py::arg("p"),
          "Rank and kernel basis of a matrix over F_p");

    m.def("dual_lattice",
          [](const StrMatrix& basis, const StrMatrix& gram,
             const std::string& kind, unsigned long ell) {
              Lattice t(from_rows(basis), Int(ell));
              return to_rows(dual_lattice(t, form_from(gram, kind, ell)).basis());
          },
          py::arg("basis"), py::arg("gram"), py::arg("kind"), py::arg("ell"),
          "Basis of the dual lattice at ell with respect to the pairing");

    m.def("discriminant_valuations",
          [](const StrMatrix& basis, const StrMatrix& gram,
             const std::string& kind, unsigned long ell) {
              Lattice t(from_rows(basis), Int(ell));
              return discriminant_group(t, form_from(gram, kind, ell)).valuations;
          },
          py::arg("basis"), py::arg("gram"), py::arg("kind"), py::arg("ell"),
          "Elementary-divisor valuations of dual/lattice at ell");

    m.def("index_valuation",
          [](const StrMatrix& outer, const StrMatrix& inner, unsigned long ell) {
              return index_valuation(Lattice(from_rows(outer), Int(ell)),
                                     Lattice(from_rows(inner), Int(ell)));
          },
          py::arg("outer"), py::arg("inner"), py::arg("ell"));

    m.def("is_well_rounded_json",
          [](const std::vector<StrMatrix>& gens, unsigned long ell) {
              WellRoundedEvidence ev =
                  is_well_rounded(reduce_mod_ell(action_from(gens), Int(ell)));
              return to_json(ev).dump();
          },
          py::arg("generators"), py::arg("ell"));

    m.def("invariant_forms",
          [](const std::vector<StrMatrix>& gens, const std::string& filter) {
              FormFilter f = FormFilter::any;
              if (filter == "symmetric") f = FormFilter::symmetric;
              else if (filter == "alternating") f = FormFilter::alternating;
              else if (filter != "any")
                  throw InputError("unknown filter: " + filter);
              std::vector<StrMatrix> out;
              for (const auto& b : invariant_forms(action_from(gens), f))
                  out.push_back(to_rows(b));
              return out;
          },
          py::arg("generators"), py::arg("filter") = "any");

    m.def("verify_craig_json",
          [](std::size_t n, unsigned long ell) {
              return to_json(verify_craig(n, Int(ell))).dump();
          },
          py::arg("n"), py::arg("ell"));

    m.def("composite_demo_json",
          [](std::size_t m_deg, std::size_t n_deg, unsigned long ell) {
              CompositeResult res = composite_demo(m_deg, n_deg, Int(ell));
              Json j{{"two_d", res.two_d},
                     {"tensor_dim", res.tensor_dim},
                     {"report", to_json(res.verdict)}};
              return j.dump();
          },
          py::arg("m"), py::arg("n"), py::arg("ell"));

    py::register_exception<InputError>(m, "InputError",
                                       PyExc_ValueError);
    py::register_exception<FeasibilityError>(m, "FeasibilityError",
                                             PyExc_RuntimeError);
    py::register_exception<VerificationError>(m, "VerificationError",
                                              PyExc_RuntimeError);
}
