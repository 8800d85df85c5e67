#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "temb/analysis.hpp"
#include "temb/continuum.hpp"
#include "temb/embedding.hpp"
#include "temb/gauge.hpp"
#include "temb/io.hpp"
#include "temb/pipeline.hpp"

namespace py = pybind11;
using namespace temb;

namespace {

py::dict abd(int A) {
    const AbdExact e = closed_form_abd_exact(A);
    const AbdValues v = e.to_double();
    py::dict d;
    d["alpha"] = v.alpha;
    d["beta"] = v.beta;
    d["delta"] = v.delta;
    d["alpha_exact"] = e.alpha.get_str();
    d["beta_exact"] = e.beta.get_str();
    d["delta_exact"] = e.delta.get_str();
    return d;
}

py::dict embed(int A) {
    const auto p = run_pipeline(A);
    py::list faces;
    for (const auto& f : p->graph.faces) faces.append(py::make_tuple(f.id.x, f.id.n));
    py::dict d;
    d["A"] = A;
    d["faces"] = faces;
    d["T"] = p->emb.T;
    d["O"] = p->emb.O;
    d["Tv"] = std::vector<cd>(p->emb.Tv.begin(), p->emb.Tv.end());
    d["Ov"] = std::vector<cd>(p->emb.Ov.begin(), p->emb.Ov.end());
    return d;
}

py::dict verify(int A) {
    const auto p = run_pipeline(A);
    const PerfectnessReport r = verify_perfect(p->graph, p->emb);
    return py::module_::import("json").attr("loads")(to_json(r).dump());
}

py::dict critical(double chi, double eta) {
    const CriticalPoint cp = critical_point(chi, eta);
    py::dict d;
    d["zeta"] = cp.zeta;
    d["region"] = to_string(cp.region);
    d["discriminant"] = cp.discriminant;
    d["interval"] = cp.interval;
    return d;
}

}  // namespace

PYBIND11_MODULE(_temb, m) {
    m.doc() = "Perfect t-embeddings of the uniformly weighted hexagon";
    py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);
    m.def("closed_form_abd", &abd, py::arg("A"));
    m.def("embed", &embed, py::arg("A"));
    m.def("verify", &verify, py::arg("A"));
    m.def("critical_point", &critical, py::arg("chi"), py::arg("eta"));
    m.def("limit_z", &limit_z, py::arg("zeta"));
    m.def("limit_theta", &limit_theta, py::arg("zeta"));
    m.def("embedding_svg", [](int A) { return embedding_svg(run_pipeline(A)->emb); }, py::arg("A"));
}
