#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qdecay/arch.hpp"
#include "qdecay/arch_io.hpp"
#include "qdecay/bounds.hpp"
#include "qdecay/channels.hpp"
#include "qdecay/cli.hpp"
#include "qdecay/entropy.hpp"
#include "qdecay/moments.hpp"
#include "qdecay/simulation.hpp"
#include "qdecay/verify.hpp"

namespace py = pybind11;
using namespace qdecay;

namespace {

LogBase parse_base(const std::string& base) {
  if (base == "e" || base == "natural") return LogBase::natural();
  if (base == "2") return LogBase::two();
  return LogBase::of(std::stod(base));
}

py::object entropy_value(const EntropyValue& v) {
  if (v.infinite) return py::float_(std::numeric_limits<double>::infinity());
  return py::float_(v.value);
}

}  // namespace

PYBIND11_MODULE(_qdecay, m) {
  m.doc() = "Exact Haar twirls, relative-entropy decay and architecture bounds";

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);

  py::class_<ChannelRep>(m, "Channel")
      .def_property_readonly("dims", &ChannelRep::dims)
      .def_property_readonly("dim", &ChannelRep::dim)
      .def("__call__", [](const ChannelRep& ch, const Matrix& x) { return qdecay::apply(ch, x); })
      .def("choi", [](const ChannelRep& ch) { return choi(ch); })
      .def("then", [](const ChannelRep& first, const ChannelRep& second) { return compose(second, first); },
           py::arg("second"), "Channel applying self first, then second.");

  m.def("kraus_channel", [](std::vector<int> dims, std::vector<Matrix> ops) {
    return ChannelRep::kraus(std::move(dims), std::move(ops));
  }, py::arg("dims"), py::arg("ops"));
  m.def("choi_channel", [](std::vector<int> dims, Matrix j) { return ChannelRep::from_choi(std::move(dims), std::move(j)); },
        py::arg("dims"), py::arg("choi"));
  m.def("depolarizing", &depolarizing, py::arg("d"), py::arg("p"));
  m.def("full_depolarizer", &full_depolarizer, py::arg("d"));
  m.def("compose", [](const ChannelRep& second, const ChannelRep& first) { return compose(second, first); },
        py::arg("second"), py::arg("first"));

  m.def("haar_twirl", &haar_twirl_channel, py::arg("d"), py::arg("k"));
  m.def("local_twirl", [](int n, int q, int k, std::vector<int> sites) {
    return local_twirl(SiteLayout::uniform(n, q, k), sites);
  }, py::arg("n"), py::arg("q"), py::arg("k"), py::arg("sites"));
  m.def("global_twirl", [](int n, int q, int k) { return global_twirl(SiteLayout::uniform(n, q, k)); },
        py::arg("n"), py::arg("q"), py::arg("k"));
  m.def("mc_twirl", [](const Matrix& x, int d, int k, std::size_t samples, std::uint64_t seed) {
    return mc_twirl(x, d, k, samples, seed);
  }, py::arg("x"), py::arg("d"), py::arg("k"), py::arg("samples"), py::arg("seed") = 0);
  m.def("is_conditional_expectation", [](const ChannelRep& e, double tol) {
    return validate_cond_expectation(e, tol).valid();
  }, py::arg("channel"), py::arg("tol") = 1e-8);

  m.def("relative_error", [](const ChannelRep& phi, const ChannelRep& psi) {
    const ComparabilityResult r = relative_error(phi, psi);
    py::dict out;
    out["eps"] = r.eps;
    out["delta"] = r.delta;
    out["delta_finite"] = r.delta_finite;
    out["valid"] = r.valid;
    return out;
  }, py::arg("phi"), py::arg("psi"));
  m.def("cb_return_time", [](const ChannelRep& phi, const ChannelRep& e, int t_max) {
    return cb_return_time(phi, validate_cond_expectation(e), t_max);
  }, py::arg("phi"), py::arg("e"), py::arg("t_max") = 100);

  m.def("relative_entropy", [](const Matrix& rho, const Matrix& sigma, const std::string& base) {
    return entropy_value(relative_entropy(rho, sigma, parse_base(base)));
  }, py::arg("rho"), py::arg("sigma"), py::arg("base") = "e");
  m.def("decay_ratio", &decay_ratio, py::arg("phi"), py::arg("e"), py::arg("rho"));
  m.def("beta", [](double eps, double delta) { return beta(eps, delta).beta; }, py::arg("eps"), py::arg("delta"));
  m.def("continuity_bound", &continuity_bound, py::arg("eps"), py::arg("sup_d"));
  m.def("additive_depth", &additive_depth, py::arg("lam"), py::arg("n"), py::arg("k"), py::arg("q"),
        py::arg("eps"));

  m.def("brickwork_json", [](int n, int q) { return dump_architecture(brickwork(n, q)); }, py::arg("n"),
        py::arg("q") = 2);
  m.def("lattice_json", [](int dim, int side, int q) { return dump_architecture(lattice(dim, side, q)); },
        py::arg("dim"), py::arg("side"), py::arg("q") = 2);
  m.def("validate_architecture", [](const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& v : parse_architecture(text).violations) out.emplace_back(v.path, v.message);
    return out;
  }, py::arg("text"));
  m.def("architecture_channel", [](const std::string& text, int k) {
    const auto r = parse_architecture(text);
    if (!r.spec) throw py::value_error(r.violations.front().path + ": " + r.violations.front().message);
    return architecture_channel(*r.spec, k);
  }, py::arg("text"), py::arg("k") = 1);
  m.def("hamiltonian_path", [](const std::string& text) {
    const auto r = parse_architecture(text);
    if (!r.spec) throw py::value_error(r.violations.front().path + ": " + r.violations.front().message);
    const HamiltonianResult h = hamiltonian_path(cluster_graph(*r.spec));
    return py::make_tuple(to_string(h.status), h.path);
  }, py::arg("text"));

  m.def("_bound_json", [](const std::vector<std::string>& args) {
    std::vector<std::string> full{"bound"};
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = run_cli(full, out, err);
    if (code != kExitOk) throw py::value_error(err.str());
    return out.str();
  });
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the qdecay command line in-process; returns (exit_code, stdout, stderr).");
  m.def("verify", [](const std::string& suite) {
    const SuiteResult r = run_suite(suite, VerifyOptions{});
    py::dict out;
    out["name"] = r.name;
    out["passed"] = r.passed;
    out["checks"] = r.checks;
    out["first_failure"] = r.first_failure;
    return out;
  }, py::arg("suite"));
}
