#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dlab/bounds.hpp"
#include "dlab/moments.hpp"
#include "dlab/montecarlo.hpp"

namespace py = pybind11;
using namespace dlab;

namespace {

std::vector<u64> exponent_range(u64 n) {
    std::vector<u64> e(n);
    for (u64 k = 0; k < n; ++k) e[k] = k + 1;
    return e;
}

const char* lacunary_method_name(LacunaryMethod m) {
    return m == LacunaryMethod::quadrature ? "quadrature" : "digit_sampling";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dirichlet polynomial norms: moments, energy counts, bounds and torus Monte Carlo";

    py::class_<DirichletPolynomial>(m, "DirichletPolynomial")
        .def(py::init<std::vector<u64>, std::vector<cplx>>(), py::arg("frequencies"), py::arg("coefficients"))
        .def_static("ones", &DirichletPolynomial::ones, py::arg("N"))
        .def_property_readonly("frequencies",
                               [](const DirichletPolynomial& D) { return std::vector<u64>(D.frequencies().begin(), D.frequencies().end()); })
        .def_property_readonly("coefficients",
                               [](const DirichletPolynomial& D) { return std::vector<cplx>(D.coefficients().begin(), D.coefficients().end()); })
        .def("__len__", &DirichletPolynomial::size)
        .def("__call__", [](const DirichletPolynomial& D, double t) { return evaluate(D, t); }, py::arg("t"))
        .def("__eq__", [](const DirichletPolynomial& a, const DirichletPolynomial& b) { return a == b; });

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("stderr", &McEstimate::std_error)
        .def_readonly("n_samples", &McEstimate::n_samples)
        .def_readonly("master_seed", &McEstimate::master_seed)
        .def_readonly("alpha", &McEstimate::alpha)
        .def("__repr__", [](const McEstimate& e) {
            return "McEstimate(mean=" + std::to_string(e.mean) + ", stderr=" + std::to_string(e.std_error) + ")";
        });

    m.def("multiplicative_energy", [](u64 B) { return multiplicative_energy(B).count; }, py::arg("B"),
          "#{x1 x2 = x3 x4 : 1 <= x_i <= B}");
    m.def("multiplicative_energy_bruteforce", [](u64 B) { return multiplicative_energy_bruteforce(B).count; },
          py::arg("B"));

    m.def("second_moment", &second_moment, py::arg("poly"));
    m.def("fourth_moment", &fourth_moment, py::arg("poly"));
    m.def("convolution_coefficients", &convolution_coefficients, py::arg("poly"));
    m.def("montgomery_theta", &montgomery_theta, py::arg("N"), py::arg("T"), py::arg("panels"),
          py::arg("threads") = 1);

    m.def("acz_constant", [](bool positive_sum) {
        return acz_constant(positive_sum ? ZetaConvention::positive_sum : ZetaConvention::analytic_derivative);
    }, py::arg("positive_sum") = false);
    m.def("acz_main_term", [](u64 B) { return acz_prediction(B, ZetaConvention::analytic_derivative).main; },
          py::arg("B"));

    m.def("interpolation_lower_bound", &interpolation_lower_bound, py::arg("m2"), py::arg("m4"), py::arg("r"));
    m.def("helson_bound", &helson_bound, py::arg("N"));
    m.def("lcm_sum_bound", &lcm_sum_bound, py::arg("poly"), py::arg("threads") = 1);
    m.def("moment_bound", [](u64 N, double r) {
        const auto rep = moment_bound_report(N, r);
        return py::dict(py::arg("value") = rep.value, py::arg("shape") = rep.parameters.at("shape"),
                        py::arg("m4") = rep.parameters.at("m4"));
    }, py::arg("N"), py::arg("r") = 1.0);

    m.def("finite_time_norm", [](const DirichletPolynomial& D, double T, double alpha, std::size_t panels, unsigned threads) {
        const auto e = finite_time_norm(D, T, alpha, panels, threads);
        return py::make_tuple(e.value, e.error);
    }, py::arg("poly"), py::arg("T"), py::arg("alpha"), py::arg("panels"), py::arg("threads") = 1);

    m.def("estimate_torus_norm", [](const DirichletPolynomial& D, double alpha, std::uint64_t n_samples,
                                    std::uint64_t seed, unsigned threads) {
        const auto L = bohr_lift(D);
        py::gil_scoped_release release;
        return estimate_torus_norm(L, alpha, n_samples, seed, threads);
    }, py::arg("poly"), py::arg("alpha") = 1.0, py::arg("n_samples") = 100'000, py::arg("seed") = 0,
          py::arg("threads") = 1);

    m.def("gaussian_modulus_mean", &gaussian_modulus_mean, py::arg("covariance"));
    m.def("steinhaus_limit", [] { return steinhaus_limit().modulus_mean; });

    m.def("clt_ratio_curve", [](std::vector<std::size_t> ks, std::uint64_t n_samples, std::uint64_t seed, unsigned threads) {
        std::vector<CoprimeSystem> fam;
        for (std::size_t k : ks) fam.push_back(first_primes_system(k));
        std::vector<RatioPoint> pts;
        {
            py::gil_scoped_release release;
            pts = clt_ratio_curve(fam, n_samples, seed, threads);
        }
        py::list out;
        for (const auto& p : pts)
            out.append(py::dict(py::arg("k") = p.k, py::arg("index_n") = p.index_n, py::arg("ratio") = p.ratio,
                                py::arg("stderr") = p.std_error, py::arg("limit") = p.limit_constant));
        return out;
    }, py::arg("ks"), py::arg("n_samples") = 100'000, py::arg("seed") = 0, py::arg("threads") = 1,
          "Normalized L1 norms of first-k-primes Steinhaus sums");

    m.def("lacunary_ratio", [](u64 a, u64 n, std::uint64_t n_samples, std::uint64_t seed, unsigned threads) {
        const auto ex = exponent_range(n);
        LacunaryResult r;
        {
            py::gil_scoped_release release;
            r = lacunary_l1_ratio(a, ex, 64, LacunaryMethod::automatic, n_samples, seed, threads);
        }
        return py::dict(py::arg("ratio") = r.ratio, py::arg("stderr") = r.std_error,
                        py::arg("method") = lacunary_method_name(r.method));
    }, py::arg("a"), py::arg("n"), py::arg("n_samples") = 100'000, py::arg("seed") = 0, py::arg("threads") = 1);
    m.def("lacunary_limit", &lacunary_limit);
}
