#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gsflow/gsflow.hpp"

namespace {

struct Args {
    std::string input;
    std::string output;
    std::string matrix;
    std::string grading;
    int diagonal = 0;
    bool canonical_order = false;
    bool trace = false;
};

void emit(const Args& a, const std::string& text) {
    if (a.output.empty()) {
        std::cout << text;
    } else {
        gsflow::write_text_file(a.output, text);
    }
}

std::vector<int> parse_grading(const std::string& s) {
    std::vector<int> g;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        try {
            g.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw gsflow::Error(gsflow::ErrorKind::Validation, "bad grading entry '" + tok + "'");
        }
    }
    return g;
}

// Either a flow file or a matrix text file with an optional grading.
gsflow::GSComplex load_complex(const Args& a, std::vector<std::string>& labels) {
    if (!a.matrix.empty()) {
        gsflow::IntMatrix m = gsflow::matrix_from_text(gsflow::read_text_file(a.matrix));
        std::vector<int> g = parse_grading(a.grading);
        if (g.empty()) g.assign(m.cols(), 0);
        if (g.size() != m.cols()) {
            throw gsflow::Error(gsflow::ErrorKind::Validation, "grading length does not match the matrix");
        }
        auto c = gsflow::complex_from_matrix(m, g);
        labels = c.labels();
        return c;
    }
    gsflow::FlowSpec f = gsflow::prepare_flow(gsflow::load_flow(a.input), a.canonical_order);
    auto c = gsflow::build_complex(f);
    labels = c.labels();
    return c;
}

gsflow::PipelineOptions options(const Args& a) {
    gsflow::PipelineOptions o;
    o.diagonal = a.diagonal;
    o.canonical_order = a.canonical_order;
    o.trace = a.trace;
    return o;
}

int run(const std::string& verb, const Args& a) {
    using namespace gsflow;
    if (verb == "validate") {
        FlowSpec f = load_flow(a.input);
        auto diags = validate_flow(f);
        emit(a, render_validation(f, diags));
        return diags.empty() ? kExitOk : kExitValidation;
    }
    if (verb == "morsify") {
        FlowSpec f = prepare_flow(load_flow(a.input), a.canonical_order);
        emit(a, render_morsification(morsify(f)));
        return kExitOk;
    }
    if (verb == "boundary") {
        std::vector<std::string> labels;
        GSComplex c = load_complex(a, labels);
        std::string text = render_boundary(c) + render_homology(complex_homology(c));
        emit(a, text);
        return check_boundary_squared(c) ? kExitOk : kExitStructural;
    }
    if (verb == "sweep" || verb == "rca" || verb == "pages") {
        std::vector<std::string> labels;
        GSComplex c = load_complex(a, labels);
        SweepTrace t = sweep(c.boundary, c.grading());
        if (verb == "sweep") {
            emit(a, render_sweep(t, labels, options(a)));
        } else if (verb == "rca") {
            RcaTrace rt = rca_sweep(c.boundary);
            std::string text = render_rca(rt, labels, options(a));
            text += std::string("primary pivots agree with the sweep: ") + (primary_pivot_equality(t, rt) ? "yes" : "no") + "\n";
            emit(a, text);
        } else {
            int pages = default_page_count(t);
            if (a.diagonal > 0) pages = std::min(pages, a.diagonal);
            emit(a, render_pages(t, labels, pages));
        }
        return kExitOk;
    }
    if (verb == "schedule") {
        FlowSpec f = prepare_flow(load_flow(a.input), a.canonical_order);
        FlowFamily fam = flow_family(f, a.diagonal);
        std::string text = render_schedule(fam);
        if (a.trace) text += "\n" + serialize_flow(fam.final_flow());
        emit(a, text);
        return kExitOk;
    }
    if (verb == "report") {
        Report r = run_pipeline(load_flow(a.input), options(a));
        emit(a, r.text);
        return r.exit_code;
    }
    throw Error(ErrorKind::Validation, "unknown command " + verb);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gradient-like flows on singular surfaces: chain complexes, sweeps and cancellation schedules"};
    app.require_subcommand(1);
    Args args;

    auto add_common = [&](CLI::App* sub, bool allow_matrix) {
        auto* in = sub->add_option("-i,--input", args.input, "flow description (JSON)");
        sub->add_option("-o,--output", args.output, "write the result here instead of stdout");
        sub->add_flag("--canonical-order", args.canonical_order, "order generators by grade, then id");
        if (allow_matrix) {
            auto* mx = sub->add_option("--matrix", args.matrix, "boundary matrix as text (rows cols header)");
            sub->add_option("--grading", args.grading, "comma separated grades for --matrix");
            in->excludes(mx);
        } else {
            in->required();
        }
    };

    std::vector<std::pair<std::string, std::string>> verbs = {
        {"validate", "check a flow description"},
        {"morsify", "list the Morse points and orbits of the Morsified flow"},
        {"boundary", "print the boundary matrix and its homology"},
        {"sweep", "run the sweep and print each diagonal"},
        {"rca", "run the row-clearing sweep"},
        {"pages", "print the spectral sequence pages"},
        {"schedule", "print the cancellation schedule"},
        {"report", "run the full pipeline"},
    };
    for (const auto& [name, help] : verbs) {
        CLI::App* sub = app.add_subcommand(name, help);
        bool matrix_ok = name == "boundary" || name == "sweep" || name == "rca" || name == "pages";
        add_common(sub, matrix_ok);
        if (name != "validate" && name != "morsify" && name != "boundary") {
            sub->add_option("--diagonal", args.diagonal, "stop after this many rounds (0: all)")->check(CLI::NonNegativeNumber);
        }
        if (name == "sweep" || name == "rca" || name == "schedule" || name == "report") {
            sub->add_flag("--trace", args.trace, "print intermediate matrices");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : gsflow::kExitValidation;
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    if (args.input.empty() && args.matrix.empty()) {
        std::cerr << "error: one of --input or --matrix is required\n";
        return gsflow::kExitValidation;
    }
    try {
        return run(verb, args);
    } catch (const gsflow::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gsflow::exit_code_for(e.kind());
    }
}
