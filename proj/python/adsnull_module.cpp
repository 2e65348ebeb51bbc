// Python bindings for the main library operations.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "adsnull/elliptic.hpp"
#include "adsnull/errors.hpp"
#include "adsnull/frames.hpp"
#include "adsnull/momentum.hpp"
#include "adsnull/periodic.hpp"
#include "adsnull/potential.hpp"

namespace py = pybind11;
using namespace adsnull;

namespace {

std::array<double, 4> as_array(const Mat2d &m)
{
    return {m.a[0], m.a[1], m.a[2], m.a[3]};
}

Potential make_potential(const std::string &kind, double g2, double g3, double a,
                         bool positive_axis, double ell, double e1)
{
    if (kind == "wp") return Potential::wp_branch({g2, g3});
    if (kind == "wp3") return Potential::wp3_branch({g2, g3});
    if (kind == "wp-pos") return Potential::wp_pos({g2, g3});
    if (kind == "tan") return Potential::tan_degenerate(a);
    if (kind == "tanh") return Potential::tanh_degenerate(a);
    if (kind == "rational") return Potential::rational_degenerate(positive_axis);
    if (kind == "qp") return Potential::quasi_periodic(ell, e1);
    throw Error("unknown potential kind: " + kind);
}

} // namespace

PYBIND11_MODULE(_adsnull, mod)
{
    mod.doc() = "Extremal null-curve trajectories in anti-de Sitter 3-space";

    py::register_exception<Error>(mod, "AdsNullError");

    // ---- elliptic layer
    mod.def("discriminant", [](double g2, double g3) { return discriminant({g2, g3}); });
    mod.def("wp", [](std::complex<double> z, double g2, double g3) { return wp(z, {g2, g3}); });
    mod.def("wp_prime",
            [](std::complex<double> z, double g2, double g3) { return wp_prime(z, {g2, g3}); });
    mod.def("weierstrass_zeta", [](std::complex<double> z, double g2, double g3) {
        return weierstrass_zeta(z, {g2, g3});
    });
    mod.def("weierstrass_sigma", [](std::complex<double> z, double g2, double g3) {
        return weierstrass_sigma(z, {g2, g3});
    });
    mod.def("elliptic_k", &elliptic_K);
    mod.def("jacobi_sn", &jacobi_sn);

    // ---- potential layer
    py::class_<Potential>(mod, "Potential")
        .def_property_readonly("case_name", [](const Potential &p) { return to_string(p.tag()); })
        .def_property_readonly("domain",
                               [](const Potential &p) {
                                   return std::pair<double, double>{p.domain().lo, p.domain().hi};
                               })
        .def("h", &Potential::h)
        .def("eval",
             [](const Potential &p, double s) {
                 const HDerivs d = p.eval(s);
                 return std::make_tuple(d.h, d.h1, d.h2, d.h3);
             })
        .def("in_domain", &Potential::in_domain);

    mod.def("potential", &make_potential, py::arg("kind"), py::arg("g2") = 0.0,
            py::arg("g3") = 0.0, py::arg("a") = 1.0, py::arg("positive_axis") = true,
            py::arg("ell") = 0.25, py::arg("e1") = 10.0);
    mod.def("classify", [](double g2, double g3) {
        std::vector<std::string> tags;
        for (const Potential &p : classify({g2, g3})) {
            tags.push_back(to_string(p.tag()));
        }
        return tags;
    });
    mod.def("el_residual", &el_residual);

    // ---- frames layer
    mod.def(
        "trajectory",
        [](double m, const Potential &p, double s0, std::vector<double> grid,
           const std::string &method) {
            const FramePair fp = method == "ode" ? ode_frame_oracle(m, p, s0, std::move(grid))
                                                 : gamma_frame(m, p, s0, std::move(grid));
            py::list rows;
            for (const FrameSample &y : fp.samples) {
                py::dict row;
                row["s"] = y.s;
                row["gamma"] = as_array(y.gamma);
                row["gamma_plus"] = as_array(y.gamma_plus);
                row["gamma_minus"] = as_array(y.gamma_minus);
                row["k"] = y.k;
                rows.append(row);
            }
            return rows;
        },
        py::arg("m"), py::arg("potential"), py::arg("s0"), py::arg("grid"),
        py::arg("method") = "closed-form");
    mod.def("verify_geometry", [](double m, const Potential &p, double s0,
                                  std::vector<double> grid) {
        const GeometryReport g = verify_geometry(gamma_frame(m, p, s0, std::move(grid)));
        py::dict d;
        d["max_det_err"] = g.max_det_err;
        d["max_nullity"] = g.max_nullity;
        d["max_omega_err"] = g.max_omega_err;
        d["max_k_err"] = g.max_k_err;
        return d;
    });

    // ---- periodic layer
    mod.def("period_p", &period_p);
    mod.def("in_w", [](double m, double ell, double e1) {
        return in_w(QuasiPeriodicParams{m, ell, e1});
    });
    mod.def("period_map", [](double m, double ell, double e1) {
        const PeriodMapValue v = period_map(QuasiPeriodicParams{m, ell, e1});
        py::dict d;
        d["pi_plus"] = v.pi_plus;
        d["pi_minus"] = v.pi_minus;
        d["period"] = v.period;
        return d;
    });
    mod.def(
        "closure_test",
        [](double m, double ell, double e1, int n_max, double tol) -> py::object {
            const auto r = closure_test(QuasiPeriodicParams{m, ell, e1}, n_max, tol);
            if (!r) {
                return py::none();
            }
            return py::make_tuple(r->n, r->error);
        },
        py::arg("m"), py::arg("ell"), py::arg("e1"), py::arg("n_max") = 200,
        py::arg("tol") = 1e-5);
    mod.def(
        "jacobian_psi",
        [](double m, double ell, double e1, double step) {
            return jacobian_psi(QuasiPeriodicParams{m, ell, e1}, step);
        },
        py::arg("m"), py::arg("ell"), py::arg("e1"), py::arg("step") = 1e-5);
    mod.def(
        "find_closed",
        [](double m, int denom_bound, int n_max) {
            py::list out;
            for (const ClosedHit &h : find_closed(m, denom_bound, n_max)) {
                py::dict d;
                d["m"] = h.qp.m;
                d["ell"] = h.qp.ell;
                d["e1"] = h.qp.e1;
                d["n"] = h.n;
                d["closure_error"] = h.closure_error;
                d["target_plus"] = h.target_plus;
                d["target_minus"] = h.target_minus;
                out.append(d);
            }
            return out;
        },
        py::arg("m"), py::arg("denom_bound") = 8, py::arg("n_max") = 200);

    // ---- momentum layer
    mod.def("el_system_max_residuals", [](double m, const Potential &p,
                                          std::vector<double> grid) {
        const MomentumLift lift = momentum_lift(m, p, grid);
        double r1 = 0, r2 = 0, r3 = 0;
        for (const ElResiduals &r : el_system_residuals(lift)) {
            r1 = std::max(r1, std::abs(r.r1));
            r2 = std::max(r2, std::abs(r.r2));
            r3 = std::max(r3, std::abs(r.r3));
        }
        return std::make_tuple(r1, r2, r3);
    });
}
