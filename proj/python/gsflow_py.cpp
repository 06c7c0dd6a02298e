#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gsflow/gsflow.hpp"

namespace py = pybind11;

namespace {

py::int_ to_py(const gsflow::Integer& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

py::list to_py(const gsflow::IntMatrix& m) {
    py::list rows;
    for (const auto& row : m.dense()) {
        py::list r;
        for (const auto& v : row) r.append(to_py(v));
        rows.append(r);
    }
    return rows;
}

gsflow::IntMatrix from_py(const std::vector<std::vector<py::int_>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    gsflow::IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw gsflow::Error(gsflow::ErrorKind::Validation, "ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, gsflow::Integer(py::str(rows[i][j]).cast<std::string>()));
    }
    return m;
}

py::list pivots_to_py(const std::vector<gsflow::PivotMark>& marks) {
    py::list out;
    for (const auto& p : marks) {
        py::dict d;
        d["row"] = p.row;
        d["col"] = p.col;
        d["round"] = p.round;
        d["primary"] = p.kind == gsflow::PivotKind::Primary;
        d["value"] = to_py(p.value);
        out.append(d);
    }
    return out;
}

gsflow::FlowSpec prepared(const std::string& document, bool canonical_order) {
    return gsflow::prepare_flow(gsflow::parse_flow(document), canonical_order);
}

}  // namespace

PYBIND11_MODULE(gsflow, m) {
    m.doc() = "Chain complexes, sweeps and cancellation schedules of gradient-like flows on singular surfaces";

    static py::exception<gsflow::Error> error(m, "GsflowError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const gsflow::Error& e) {
            static const char* names[] = {"validation", "structural", "non-unimodular", "range", "io"};
            std::string msg = std::string(names[static_cast<int>(e.kind())]) + ": " + e.what();
            PyErr_SetString(error.ptr(), msg.c_str());
        }
    });

    m.def("read_text_file", &gsflow::read_text_file, py::arg("path"));

    m.def(
        "validate",
        [](const std::string& document) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& d : gsflow::validate_flow(gsflow::parse_flow(document))) out.emplace_back(d.code, d.message);
            return out;
        },
        py::arg("document"), "Diagnostics as (code, message) pairs; empty when the flow is valid.");

    m.def(
        "normalize",
        [](const std::string& document) { return gsflow::serialize_flow(gsflow::parse_flow(document)); },
        py::arg("document"));

    m.def(
        "boundary",
        [](const std::string& document, bool canonical_order) {
            auto c = gsflow::build_complex(prepared(document, canonical_order));
            return py::make_tuple(c.labels(), c.grading(), to_py(c.boundary));
        },
        py::arg("document"), py::arg("canonical_order") = false, "Returns (labels, grading, matrix).");

    m.def(
        "homology",
        [](const std::vector<std::vector<py::int_>>& matrix, const std::vector<int>& grading) {
            auto c = gsflow::complex_from_matrix(from_py(matrix), grading);
            py::list out;
            for (const auto& h : gsflow::complex_homology(c)) {
                py::list torsion;
                for (const auto& t : h.torsion) torsion.append(to_py(t));
                out.append(py::make_tuple(h.betti, torsion));
            }
            return out;
        },
        py::arg("matrix"), py::arg("grading"));

    m.def(
        "smith_normal_form",
        [](const std::vector<std::vector<py::int_>>& matrix) {
            py::list out;
            for (const auto& v : gsflow::smith_normal_form(from_py(matrix)).diagonal) out.append(to_py(v));
            return out;
        },
        py::arg("matrix"));

    m.def(
        "sweep",
        [](const std::vector<std::vector<py::int_>>& matrix, const std::vector<int>& grading) {
            return pivots_to_py(gsflow::sweep(from_py(matrix), grading).pivots);
        },
        py::arg("matrix"), py::arg("grading") = std::vector<int>{});

    m.def(
        "rca_pivots",
        [](const std::vector<std::vector<py::int_>>& matrix) { return pivots_to_py(gsflow::rca_sweep(from_py(matrix)).pivots); },
        py::arg("matrix"));

    m.def(
        "schedule",
        [](const std::string& document, int diagonal) {
            auto fam = gsflow::flow_family(gsflow::parse_flow(document), diagonal);
            py::list out;
            for (const auto& s : fam.schedule()) {
                py::dict d;
                d["round"] = s.round;
                d["pivot"] = py::make_tuple(s.pivot_row, s.pivot_col);
                d["pair"] = py::make_tuple(gsflow::pair_column_label(s), gsflow::pair_row_label(s));
                d["witness"] = s.witness;
                d["merged"] = s.merged.id;
                d["merged_family"] = gsflow::family_name(s.merged.family);
                d["merged_sheets"] = s.merged.sheets;
                d["type_number"] = s.merged_type_number;
                out.append(d);
            }
            return py::make_tuple(out, gsflow::serialize_flow(fam.final_flow()));
        },
        py::arg("document"), py::arg("diagonal") = 0, "Returns (steps, final flow document).");

    m.def(
        "report",
        [](const std::string& document, int diagonal, bool canonical_order, bool trace) {
            gsflow::PipelineOptions opt;
            opt.diagonal = diagonal;
            opt.canonical_order = canonical_order;
            opt.trace = trace;
            auto r = gsflow::run_pipeline(gsflow::parse_flow(document), opt);
            return py::make_tuple(r.text, r.exit_code);
        },
        py::arg("document"), py::arg("diagonal") = 0, py::arg("canonical_order") = false, py::arg("trace") = false);
}
