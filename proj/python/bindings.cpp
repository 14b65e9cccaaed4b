#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "plb/bounds.hpp"
#include "plb/cli.hpp"
#include "plb/compare.hpp"
#include "plb/eigen_solver.hpp"
#include "plb/errors.hpp"
#include "plb/hardy_verify.hpp"
#include "plb/serialize.hpp"

namespace py = pybind11;
using namespace plb;

namespace {

// hand the already-defined JSON shapes to Python as plain dicts/lists
py::object to_py(const Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

ProblemParams params(double p, int n, double R, std::optional<double> volume) {
    return volume ? faber_krahn_reduce(*volume, p, n) : derive(p, n, R);
}

}  // namespace

PYBIND11_MODULE(plb, m) {
    m.doc() = "Lower bounds for the first p-Laplacian eigenvalue on balls, Hardy inequality checks, radial solver";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

    m.def("bound_kinds", [] {
        std::vector<std::string> out;
        for (BoundKind k : all_bound_kinds()) out.push_back(to_string(k));
        return out;
    });

    m.def(
        "bound",
        [](const std::string& method, double p, int n, double R, std::optional<double> volume,
           std::optional<double> delta) {
            const auto k = parse_bound_kind(method);
            if (!k) throw DomainError("unknown method '" + method + "'");
            const auto pp = params(p, n, R, volume);
            BoundRequest req;
            req.kind = *k;
            req.delta = delta;
            return to_py(to_json(make_record(pp, compute_bound(pp, req))));
        },
        py::arg("method"), py::arg("p"), py::arg("n"), py::arg("R") = 1.0, py::arg("volume") = py::none(),
        py::arg("delta") = py::none());

    m.def(
        "family_H",
        [](double p, int n, double delta) {
            const auto ev = family_H(derive(p, n, 1.0), delta);
            py::dict d;
            d["branch"] = to_string(ev.branch);
            d["A"] = ev.A;
            d["B"] = ev.B;
            d["C"] = ev.C;
            d["D"] = ev.D;
            d["root"] = ev.root;
            d["H"] = ev.H;
            return d;
        },
        py::arg("p"), py::arg("n"), py::arg("delta"));

    m.def(
        "eigenvalue",
        [](double p, int n, double R, int grid_n, double tol, int max_iter, bool profile) {
            const auto pp = derive(p, n, R);
            EigenResult e;
            {
                py::gil_scoped_release release;
                e = inverse_power_iterate(pp, grid_n, tol, max_iter);
            }
            return to_py(to_json(make_record(pp, e, profile)));
        },
        py::arg("p"), py::arg("n"), py::arg("R") = 1.0, py::arg("grid_n") = 2048, py::arg("tol") = 1e-8,
        py::arg("max_iter") = 500, py::arg("profile") = false);

    m.def(
        "verify",
        [](const std::string& suite, std::optional<double> tol) {
            const auto s = parse_suite(suite);
            if (!s) throw DomainError("unknown suite '" + suite + "'");
            std::vector<VerificationReport> reps;
            {
                py::gil_scoped_release release;
                reps = run_suite(*s, tol);
            }
            py::list out;
            for (const auto& r : reps) out.append(to_py(to_json(r)));
            return out;
        },
        py::arg("suite") = "all", py::arg("tol") = py::none());

    m.def(
        "crossover",
        [](const std::string& which, int n) {
            const auto k = parse_crossover_kind(which);
            if (!k) throw DomainError("unknown crossover '" + which + "'");
            CrossoverResult r;
            switch (*k) {
                case CrossoverKind::p0n: r = crossover_p0n(n); break;
                case CrossoverKind::p1n: r = crossover_p1n_p3n(n).first; break;
                case CrossoverKind::p3n: r = crossover_p1n_p3n(n).second; break;
                case CrossoverKind::table1: r = crossover_table1(n); break;
            }
            return to_py(to_json(r));
        },
        py::arg("which"), py::arg("n"));

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = plb::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command line front end; returns (exit_code, stdout, stderr).");
}
