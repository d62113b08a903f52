#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "genbounds/avgjoint/learner.hpp"
#include "genbounds/bounds/bounds.hpp"
#include "genbounds/cli/sweep.hpp"
#include "genbounds/cli/verify.hpp"
#include "genbounds/errors.hpp"
#include "genbounds/gaussian/gaussian.hpp"
#include "genbounds/io/serialization.hpp"
#include "genbounds/measures/measures.hpp"

namespace py = pybind11;

namespace {

namespace ms = genbounds::measures;
namespace aj = genbounds::avgjoint;
namespace gs = genbounds::gaussian;
namespace bd = genbounds::bounds;
namespace gio = genbounds::io;

ms::Support support_from_py(const py::object& obj) {
    ms::Support s;
    for (const auto& item : obj) {
        if (py::isinstance<py::str>(item)) {
            s.emplace_back(item.cast<std::string>());
        } else if (py::isinstance<py::tuple>(item) || py::isinstance<py::list>(item)) {
            auto seq = item.cast<py::sequence>();
            ms::Point p(seq[0].cast<std::string>());
            for (std::size_t k = 1; k < seq.size(); ++k) p.coord.push_back(seq[k].cast<double>());
            s.push_back(std::move(p));
        } else {
            // bare numbers become 1-D coordinate points
            const double x = item.cast<double>();
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", x);
            s.emplace_back(std::string(buf), std::vector<double>{x});
        }
    }
    return s;
}

py::dict report_to_dict(const bd::BoundReport& r) {
    py::dict d;
    d["true_gen"] = r.true_gen;
    d["ci"] = r.ci;
    py::dict entries;
    for (const auto& name : bd::BoundReport::names()) {
        const auto& e = r.entry(name);
        if (e.value) {
            entries[name.c_str()] = *e.value;
        } else {
            entries[name.c_str()] = py::none();
        }
    }
    d["bounds"] = entries;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "expected generalization error and information-measure bounds for "
              "randomized learners";

    py::register_exception<genbounds::Error>(m, "ToolkitError");

    // --- discrete measures ---
    py::class_<ms::Metric>(m, "Metric")
        .def_static("euclidean", &ms::Metric::euclidean)
        .def_static("indicator", &ms::Metric::indicator)
        .def_static("custom",
                    [](const std::function<double(const ms::Point&, const ms::Point&)>& fn,
                       const std::string& name) { return ms::Metric::custom(fn, name); })
        .def_property_readonly("name", &ms::Metric::name);

    py::class_<ms::Point>(m, "Point")
        .def(py::init<std::string>())
        .def(py::init<std::string, std::vector<double>>())
        .def_readonly("label", &ms::Point::label)
        .def_readonly("coord", &ms::Point::coord);

    py::class_<ms::DiscreteDist>(m, "DiscreteDist")
        .def(py::init([](const py::object& support, std::vector<double> probs) {
                 return ms::DiscreteDist(support_from_py(support), std::move(probs));
             }),
             py::arg("support"), py::arg("probs"))
        .def_property_readonly("probs", &ms::DiscreteDist::probs)
        .def_property_readonly("labels", [](const ms::DiscreteDist& d) {
            std::vector<std::string> out;
            for (const auto& p : d.support()) out.push_back(p.label);
            return out;
        })
        .def("__len__", &ms::DiscreteDist::size);

    py::class_<ms::JointTable>(m, "JointTable")
        .def(py::init([](const py::object& w_support, const py::object& z_support,
                         const std::vector<std::vector<double>>& rows) {
                 std::vector<double> flat;
                 for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
                 return ms::JointTable(support_from_py(w_support), support_from_py(z_support),
                                       std::move(flat));
             }),
             py::arg("w_support"), py::arg("z_support"), py::arg("p"))
        .def_static("product", &ms::JointTable::product)
        .def("marginal_w", &ms::JointTable::marginal_w)
        .def("marginal_z", &ms::JointTable::marginal_z)
        .def("conditional_w_given_z", &ms::JointTable::conditional_w_given_z)
        .def("flatten", &ms::JointTable::flatten)
        .def("at", &ms::JointTable::at);

    m.def("kl", &ms::kl, "KL divergence in nats");
    m.def("tv", &ms::tv, "total variation distance");
    m.def("js", &ms::js, "Jensen-Shannon divergence in nats");
    m.def("dv_gap", [](const ms::DiscreteDist& p, const ms::DiscreteDist& q,
                       const std::vector<double>& g) { return ms::dv_gap(p, q, g); });
    m.def("mutual_information", &ms::mutual_information);
    m.def("lautum_information", &ms::lautum_information);
    m.def("wasserstein1", &ms::wasserstein1, py::arg("p"), py::arg("q"),
          py::arg("metric") = ms::Metric::euclidean());
    m.def("wasserstein1_lp", &ms::wasserstein1_lp);
    m.def("wasserstein1_1d", &ms::wasserstein1_1d);
    m.def("align", &ms::align);

    // --- learners ---
    py::class_<aj::LearnerSpec>(m, "LearnerSpec")
        .def(py::init([](int n, const py::object& z_support, const py::object& w_support,
                         std::vector<double> p_s, std::vector<std::vector<double>> cond) {
                 std::vector<double> flat;
                 for (const auto& row : cond) flat.insert(flat.end(), row.begin(), row.end());
                 return aj::LearnerSpec(n, support_from_py(z_support), support_from_py(w_support),
                                        std::move(p_s), std::move(flat));
             }),
             py::arg("n"), py::arg("z_support"), py::arg("w_support"), py::arg("p_s"),
             py::arg("p_w_given_s"))
        .def_static("iid",
                    [](int n, const py::object& z_support, const std::vector<double>& p_z,
                       const py::object& w_support, std::vector<std::vector<double>> cond) {
                        std::vector<double> flat;
                        for (const auto& row : cond) flat.insert(flat.end(), row.begin(), row.end());
                        return aj::LearnerSpec::iid(n, support_from_py(z_support), p_z,
                                                    support_from_py(w_support), std::move(flat));
                    })
        .def_static("from_json",
                    [](const std::string& text) {
                        return gio::learner_from_json(gio::Json::parse(text));
                    })
        .def("to_json",
             [](const aj::LearnerSpec& l) { return gio::to_json(l).dump(); })
        .def_property_readonly("n", &aj::LearnerSpec::n)
        .def("is_iid", &aj::LearnerSpec::is_iid, py::arg("tol") = 1e-9);

    py::class_<aj::LossTable>(m, "LossTable")
        .def(py::init([](double a, double b, const std::vector<std::vector<double>>& rows) {
                 std::vector<double> flat;
                 for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
                 return aj::LossTable(a, b, rows.size(), rows.empty() ? 0 : rows[0].size(),
                                      std::move(flat));
             }),
             py::arg("a"), py::arg("b"), py::arg("values"));

    m.def("per_sample_joint", &aj::per_sample_joint, py::arg("learner"), py::arg("i"));
    m.def("average_joint", [](const aj::LearnerSpec& l) {
        auto avg = aj::average_joint(l);
        py::dict d;
        d["joint"] = avg.joint;
        d["hypothesis_marginal"] = avg.hypothesis_marginal;
        d["sample_marginal"] = avg.sample_marginal;
        d["per_sample"] = avg.per_sample;
        return d;
    });
    m.def("is_symmetric", &aj::is_symmetric, py::arg("learner"), py::arg("tol") = 1e-9);
    m.def("gen_error_direct", &aj::gen_error_direct);
    m.def("gen_error_via_avg", &aj::gen_error_via_avg);
    m.def("emp_risk_diff", &aj::emp_risk_diff);
    m.def("avg_emp_risk", &aj::avg_emp_risk);
    m.def("dataset_mutual_information", &aj::dataset_mutual_information);

    // --- gaussian engine ---
    py::class_<gs::MeanEstimationConfig>(m, "MeanEstimationConfig")
        .def(py::init([](double sigma, double c, double t, double beta) {
                 gs::MeanEstimationConfig cfg{sigma, c, t, beta};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("sigma") = 10.0, py::arg("c") = 2.0, py::arg("t") = 0.5,
             py::arg("beta") = 0.0)
        .def_readonly("sigma", &gs::MeanEstimationConfig::sigma)
        .def_readonly("c", &gs::MeanEstimationConfig::c)
        .def_readonly("t", &gs::MeanEstimationConfig::t)
        .def("rho", &gs::MeanEstimationConfig::rho);

    py::class_<gs::QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init([](double half_width, int points) {
                 gs::QuadratureSpec q;
                 q.half_width_sigmas = half_width;
                 q.points_per_axis = points;
                 q.validate();
                 return q;
             }),
             py::arg("half_width_sigmas") = 8.0, py::arg("points_per_axis") = 1201);

    py::class_<gs::MCSpec>(m, "MCSpec")
        .def(py::init([](std::int64_t n_samples, std::uint64_t seed) {
                 gs::MCSpec mc{n_samples, seed};
                 mc.validate();
                 return mc;
             }),
             py::arg("n_samples") = 1'000'000, py::arg("seed") = 1);

    m.def("gaussian_mi", &gs::gaussian_mi);
    m.def("gaussian_lautum", &gs::gaussian_lautum);
    m.def("gaussian_entropy", py::overload_cast<double>(&gs::gaussian_entropy));
    m.def("avg_kl",
          [](const gs::MeanEstimationConfig& cfg, const gs::QuadratureSpec& q) {
              const auto v = gs::avg_kl(cfg, q);
              return py::make_tuple(v.value, v.error);
          },
          py::arg("cfg"), py::arg("quad") = gs::QuadratureSpec{});
    m.def("true_gen_error_mc",
          [](const gs::MeanEstimationConfig& cfg, const gs::MCSpec& mc) {
              const auto v = gs::true_gen_error_mc(cfg, mc);
              return py::make_tuple(v.value, v.ci_halfwidth);
          },
          py::arg("cfg"), py::arg("mc") = gs::MCSpec{});
    m.def("true_gen_error_quad",
          [](const gs::MeanEstimationConfig& cfg, const gs::QuadratureSpec& q) {
              const auto v = gs::true_gen_error_quad(cfg, q);
              return py::make_tuple(v.value, v.ci_halfwidth);
          },
          py::arg("cfg"), py::arg("quad") = gs::QuadratureSpec{});

    // --- bound reports ---
    m.def("discrete_report",
          [](const aj::LearnerSpec& learner, const aj::LossTable& loss) {
              return report_to_dict(bd::discrete_report(learner, loss));
          });
    m.def("gaussian_report",
          [](const gs::MeanEstimationConfig& cfg, const gs::QuadratureSpec& quad,
             const gs::MCSpec& mc, bool mc_true_gen) {
              bd::GaussianReportOptions opts;
              opts.quad = quad;
              opts.mc = mc;
              opts.mc_true_gen = mc_true_gen;
              return report_to_dict(bd::gaussian_report(cfg, opts));
          },
          py::arg("cfg"), py::arg("quad") = gs::QuadratureSpec{}, py::arg("mc") = gs::MCSpec{},
          py::arg("mc_true_gen") = true);

    m.def("run_verify",
          [](const std::string& suite, std::uint64_t seed, int count) {
              genbounds::cli::VerifyOptions opts;
              opts.seed = seed;
              opts.count = count;
              return genbounds::cli::run_verify(suite, opts).to_json().dump();
          },
          py::arg("suite") = "all", py::arg("seed") = 1, py::arg("count") = 20);
}
