// Python bindings for the core operations.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rsklab/hammersley.hpp"
#include "rsklab/plancherel.hpp"
#include "rsklab/rng.hpp"
#include "rsklab/tableau.hpp"
#include "rsklab/young.hpp"

namespace py = pybind11;

namespace {

using namespace rsklab;

py::int_ to_py_int(const BigInt& v) {
    return py::reinterpret_steal<py::int_>(
        PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::object to_fraction(const BigRat& v) {
    return py::module_::import("fractions").attr("Fraction")(v.get_str());
}

YoungDiagram to_diagram(const std::vector<std::uint32_t>& rows) {
    YoungDiagram shape{rows};
    if (!shape.valid())
        throw std::invalid_argument("rows must be weakly decreasing and positive");
    return shape;
}

py::object label_or_none(std::uint32_t label) {
    if (label == BottomRows::beyond) return py::none();
    return py::int_(label);
}

py::list observation_labels(const GrowthObservation& obs) {
    py::list labels;
    for (std::uint8_t v : obs.labels)
        labels.append(v == beyond_label(obs.k) ? py::object(py::none())
                                               : py::object(py::int_(v)));
    return labels;
}

py::list line_events(const LineTrace& trace) {
    py::list events;
    for (const LineEvent& e : trace.events) {
        py::dict d;
        d["t"] = e.t;
        d["x_to"] = e.x_to;
        d["x_from"] = e.x_from ? py::object(py::float_(*e.x_from))
                               : py::object(py::none());
        events.append(std::move(d));
    }
    return events;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Schensted insertion, Plancherel growth, and the multi-line Hammersley "
        "process: exact small-n computations plus the simulation primitives.";
    m.attr("__version__") = "0.1.0";

    // -- Insertion tableaux ---------------------------------------------------

    py::class_<Tableau>(m, "Tableau",
                        "Insertion tableau; rows strictly increase left to "
                        "right, row 0 is the bottom row.")
        .def(py::init<>())
        .def(
            "insert",
            [](Tableau& t, double a) { return t.insert(a).final_row(); },
            py::arg("a"),
            "Insert a letter; returns the row where the bumping route ended.")
        .def_property_readonly(
            "rows", [](const Tableau& t) { return t.rows(); })
        .def_property_readonly(
            "shape", [](const Tableau& t) { return t.shape().rows; });

    py::class_<BottomRows>(m, "BottomRows",
                           "Rows 0..k of an insertion tableau; bumps that "
                           "leave row k are discarded.")
        .def(py::init<std::uint32_t>(), py::arg("k"))
        .def(
            "insert",
            [](BottomRows& b, double a) { return label_or_none(b.insert(a)); },
            py::arg("a"),
            "Insert a letter; returns the settle row, or None above row k.")
        .def_property_readonly("rows", [](const BottomRows& b) {
            std::vector<std::vector<double>> rows;
            for (std::size_t y = 0; y < b.row_lengths().size(); ++y)
                rows.push_back(b.row(y));
            return rows;
        });

    m.def(
        "rsk",
        [](const std::vector<double>& word) {
            const RskResult result = rsk(std::span<const double>(word));
            py::dict out;
            out["P"] = result.P.rows();
            out["Q"] = result.Q.rows();
            out["shape"] = result.shape().rows;
            return out;
        },
        py::arg("word"),
        "Insertion/recording pair of a word of distinct letters: dict with "
        "keys P, Q, shape.");

    m.def(
        "check_rsk_equivalence",
        [](const std::vector<double>& word, std::uint32_t k) {
            const RskEquivalence eq =
                check_rsk_equivalence(std::span<const double>(word), k);
            py::dict out;
            out["equal"] = eq.equal;
            out["k"] = eq.k;
            out["steps"] = eq.steps;
            if (eq.first_mismatch) {
                py::dict mm;
                mm["step"] = eq.first_mismatch->step;
                mm["line"] = eq.first_mismatch->line;
                out["first_mismatch"] = std::move(mm);
            } else {
                out["first_mismatch"] = py::none();
            }
            return out;
        },
        py::arg("word"), py::arg("k"),
        "Compare Hammersley lines 0..k driven by (letter, index) points with "
        "insertion-tableau rows after every step.");

    // -- Exact Plancherel computations ---------------------------------------

    m.def(
        "factorial", [](std::uint64_t n) { return to_py_int(factorial(n)); },
        py::arg("n"));

    m.def(
        "dimension",
        [](const std::vector<std::uint32_t>& shape) {
            return to_py_int(dimension(to_diagram(shape)));
        },
        py::arg("shape"),
        "Number of standard fillings of the shape (hook length formula).");

    m.def(
        "plancherel_pmf",
        [](std::size_t n, std::size_t enum_limit) {
            const ExactMeasure pmf = plancherel_pmf(n, enum_limit);
            py::list out;
            for (std::size_t i = 0; i < pmf.size(); ++i)
                out.append(py::make_tuple(py::tuple(py::cast(pmf.support[i].rows)),
                                          to_fraction(pmf.probability[i])));
            return out;
        },
        py::arg("n"), py::arg("enum_limit") = kDefaultEnumLimit,
        "Exact Plancherel measure on partitions of n as (shape, Fraction) "
        "pairs.");

    m.def(
        "transition_probabilities",
        [](const std::vector<std::uint32_t>& shape) {
            return transition_probabilities(to_diagram(shape));
        },
        py::arg("shape"),
        "Growth-step weights from the shape as (row, probability) pairs.");

    m.def(
        "transition_probabilities_exact",
        [](const std::vector<std::uint32_t>& shape) {
            py::list out;
            for (const auto& [row, p] : transition_probabilities_exact(to_diagram(shape)))
                out.append(py::make_tuple(row, to_fraction(p)));
            return out;
        },
        py::arg("shape"),
        "Growth-step weights from the shape as (row, Fraction) pairs.");

    m.def(
        "grow",
        [](std::uint64_t n, std::uint64_t seed, std::size_t exact_limit) {
            YoungDiagram mu;
            Rng rng(seed);
            for (std::uint64_t i = 0; i < n; ++i)
                transition_step(mu, rng, exact_limit);
            return mu.rows;
        },
        py::arg("n"), py::arg("seed") = 1,
        py::arg("exact_limit") = kDefaultEnumLimit,
        "Run n Plancherel growth steps from the empty shape; returns the "
        "final shape.");

    m.def(
        "grow_rsk",
        [](std::uint64_t n, std::uint64_t ell, std::uint32_t k,
           std::uint64_t seed) {
            Rng rng(seed);
            const GrowthObservation obs =
                grow_rsk(n, ell, k, rng, TerminalMode::bottom_rows);
            py::dict out;
            out["labels"] = observation_labels(obs);
            out["bottom_row_lengths"] = obs.bottom_row_lengths;
            return out;
        },
        py::arg("n"), py::arg("ell"), py::arg("k"), py::arg("seed") = 1,
        "Insert n + ell uniform letters; returns the last ell settle rows "
        "(None above row k) and the final lengths of rows 0..k.");

    m.def(
        "sample_vbar",
        [](std::uint64_t n, std::uint64_t ell, std::uint32_t k,
           std::uint64_t seed) {
            Rng rng(seed);
            const GrowthObservation obs =
                sample_vbar(n, ell, k, rng, TerminalMode::bottom_rows);
            py::dict out;
            out["labels"] = observation_labels(obs);
            out["bottom_row_lengths"] = obs.bottom_row_lengths;
            return out;
        },
        py::arg("n"), py::arg("ell"), py::arg("k"), py::arg("seed") = 1,
        "Independent surrogate of grow_rsk: labels i.i.d. with P{r} = "
        "1/sqrt(n) per row r <= k.");

    m.def(
        "s_table",
        [](std::size_t K, std::size_t n_max, std::size_t enum_limit) {
            py::list out;
            for (const STableRow& row : s_table(K, n_max, enum_limit)) {
                py::dict d;
                d["n"] = row.n;
                py::list probs;
                for (const BigRat& p : row.row_prob) probs.append(to_fraction(p));
                d["row_prob"] = std::move(probs);
                d["s"] = to_fraction(row.s);
                d["bound_holds"] = row.bound_holds();
                d["monotone"] = row.monotone();
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("K"), py::arg("n_max"), py::arg("enum_limit") = kDefaultEnumLimit,
        "Exact growth probabilities into rows 0..K for 1 <= n <= n_max, with "
        "the (K+1)/sqrt(n) bound and monotonicity flags.");

    // -- Hammersley process ---------------------------------------------------

    m.def(
        "hammersley",
        [](const std::vector<std::pair<double, double>>& points, std::uint32_t k) {
            std::vector<SpaceTimePoint> pts;
            pts.reserve(points.size());
            for (const auto& [x, t] : points) pts.push_back({x, t});
            const MultiLineRun run = run_multiline(pts, k);
            py::dict out;
            py::list lines, events, corners;
            for (std::uint32_t y = 0; y <= k; ++y) {
                lines.append(run.lines[y].positions());
                events.append(line_events(run.traces[y]));
                py::list cs;
                for (const DualCorner& c : run.traces[y].corners)
                    cs.append(py::make_tuple(c.x, c.t));
                corners.append(std::move(cs));
            }
            out["lines"] = std::move(lines);
            out["events"] = std::move(events);
            out["corners"] = std::move(corners);
            return out;
        },
        py::arg("points"), py::arg("k"),
        "Drive lines 0..k by (x, t) points with strictly increasing times; "
        "returns final particle positions plus per-line events and corners.");
}
