#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "gaugekit/commands.hpp"
#include "gaugekit/compactify.hpp"
#include "gaugekit/covers.hpp"
#include "gaugekit/error.hpp"
#include "gaugekit/metrics.hpp"

namespace py = pybind11;
using namespace gaugekit;

namespace {

using Rows = std::vector<std::vector<double>>;

SpacePtr anonymous_space(std::size_t n)
{
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({"p" + std::to_string(i), std::nullopt});
    return make_space(std::move(pts));
}

MetricTable table_of(const Rows& rows) { return MetricTable::from_rows("table", anonymous_space(rows.size()), rows); }

py::dict validate_table(const Rows& rows)
{
    const auto report = validate_metric(table_of(rows));
    py::list violations;
    for (const auto& v : report.violations)
        violations.append(py::make_tuple(std::string(to_string(v.axiom)), v.i, v.j, v.k, v.excess));
    py::dict out;
    out["valid"] = report.valid();
    out["violations"] = violations;
    out["violation_count"] = report.violation_count;
    out["roundoff_count"] = report.roundoff_count;
    return out;
}

std::vector<PointIndex> greedy_centers(const Rows& rows, double eps) { return greedy_net(table_of(rows), eps).centers; }

std::vector<std::pair<double, double>> refine(const Rows& values, const std::vector<std::pair<double, double>>& datum,
                                              double width_tol)
{
    if (values.empty()) throw InputError("refinement needs at least one function");
    if (datum.size() != values.size()) throw InputError("datum needs one interval per function");
    FunctionDict dict(anonymous_space(values.front().size()));
    EvaluationDatum j;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const auto id = "f" + std::to_string(k);
        dict.add(id, values[k]);
        j.emplace(id, Interval{datum[k].first, datum[k].second});
    }
    const auto refined = refine_datum(j, dict, width_tol);
    std::vector<std::pair<double, double>> out;
    for (const auto& e : dict.entries()) out.emplace_back(refined.at(e.id).lo, refined.at(e.id).hi);
    return out;
}

std::vector<std::vector<std::vector<std::size_t>>> ultrafilters(std::size_t n)
{
    std::vector<std::vector<std::vector<std::size_t>>> out;
    for (const auto& u : enumerate_ultrafilters(n)) {
        std::vector<std::vector<std::size_t>> sets;
        for (auto mask : u.member_sets) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1u) members.push_back(i);
            sets.push_back(std::move(members));
        }
        out.push_back(std::move(sets));
    }
    return out;
}

std::tuple<int, std::string, std::string> run(const std::vector<std::string>& args)
{
    const auto report = run_command(args);
    return {report.exit_code, report.text, canonical_dump(report.body)};
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Finite gauge spaces: metrics, covers, completions and compactifications";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<PropertyError>(m, "PropertyError", PyExc_RuntimeError);

    m.def("validate_table", &validate_table, py::arg("rows"),
          "Check the pseudometric axioms of a square distance table.");
    m.def("greedy_net", &greedy_centers, py::arg("rows"), py::arg("eps"),
          "Farthest-first eps-net centers of a distance table.");
    m.def("refine", &refine, py::arg("values"), py::arg("datum"), py::arg("width_tol") = 0.0,
          "Refine interval data for functions given as [function][point] values.");
    m.def("ultrafilters", &ultrafilters, py::arg("n"), "Every ultrafilter on {0..n-1}, as lists of member sets.");
    m.def("run", &run, py::arg("args"), "Run a command line; returns (exit code, text, JSON body).");
}
