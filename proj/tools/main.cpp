// Command-line front end: design / check / efficiency / curve / subsample
// / tables subcommands over the subsampling library. Exit codes: 0 ok,
// 1 usage error, 2 solver failure, 3 equivalence failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "subopt/design.hpp"
#include "subopt/efficiency.hpp"
#include "subopt/errors.hpp"
#include "subopt/optimality.hpp"
#include "subopt/parallel.hpp"
#include "subopt/serialization.hpp"
#include "subopt/solver.hpp"
#include "subopt/subsample.hpp"

namespace {

using namespace subopt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;
constexpr int kExitEquivalence = 3;

struct RunConfig {
    std::string subcommand;
    std::string dist_spec;
    int degree = 1;
    double alpha = 0.0;
    std::string alphas_spec;
    std::string family = "uniform_random";
    std::string method = "auto";
    std::string design_path;
    std::string in_path;
    std::string out_path;
    std::string column = "0";
    std::string on_error = "abort";
    std::string which;
    int grid = 4096;
    double tolerance = 0.0; // 0 = library default
};

std::string fmt5(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.5f", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::vector<double> parse_alphas(const std::string& text) {
    std::vector<double> alphas;
    if (text.find(':') != std::string::npos) {
        // range form a:b:step, inclusive of both ends
        double a = 0.0, b = 0.0, step = 0.0;
        char extra = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &extra) != 3 ||
            !(step > 0.0) || b < a) {
            throw invalid_argument_error("bad alpha range '" + text + "', expected a:b:step");
        }
        long n = static_cast<long>(std::floor((b - a) / step + 1e-9));
        for (long i = 0; i <= n; ++i) alphas.push_back(a + static_cast<double>(i) * step);
        return alphas;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
            alphas.push_back(v);
        } catch (const std::exception&) {
            throw invalid_argument_error("bad alpha value '" + item + "'");
        }
    }
    if (alphas.empty()) throw invalid_argument_error("empty alpha list");
    return alphas;
}

void require_distinct_paths(const std::vector<std::string>& paths) {
    for (std::size_t i = 0; i < paths.size(); ++i) {
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
            if (!paths[i].empty() && paths[i] == paths[j]) {
                throw invalid_argument_error("input and output paths must be distinct: " + paths[i]);
            }
        }
    }
}

SolveReport solve_with_method(const CovariateDistribution& dist, int q, double alpha,
                              const std::string& method) {
    if (method == "auto") return solve_optimal(dist, q, alpha);
    if (method == "closed-form") {
        if (q != 2 || dist.kind() != DistKind::uniform) {
            throw invalid_argument_error("--method closed-form applies to uniform covariates at degree 2");
        }
        return solve_uniform_quadratic_closed_form(dist, alpha);
    }
    if (method == "newton") {
        if (q == 1) {
            return solve_linear_asymmetric(dist, alpha);
        }
        if (q == 2 && dist.symmetric()) return solve_quadratic_symmetric(dist, alpha);
        return solve_general_symmetric(dist, q, alpha);
    }
    throw invalid_argument_error("unknown method '" + method + "'");
}

void print_design_summary(std::ostream& os, const SolveReport& report) {
    os << "dist: " << report.design.dist().spec_string() << "\n";
    os << "alpha: " << fmt_g(report.design.alpha()) << "\n";
    os << "branch: " << to_string(report.branch) << "\n";
    os << "support:";
    for (const Interval& iv : report.design.support().parts()) {
        os << " [" << fmt_g(iv.lo) << ", " << fmt_g(iv.hi) << "]";
    }
    os << "\n";
    os << "threshold: " << fmt_g(report.threshold) << "\n";
    os << "logdet: " << fmt_g(report.logdet) << "\n";
    os << "equivalence: " << (report.equivalence_ok ? "pass" : "FAIL") << "\n";
}

int run_design(const RunConfig& cfg) {
    CovariateDistribution dist = CovariateDistribution::parse(cfg.dist_spec);
    SolveReport report = solve_with_method(dist, cfg.degree, cfg.alpha, cfg.method);
    std::string json = solve_report_to_json(report);
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        if (!out) throw invalid_argument_error("cannot write " + cfg.out_path);
        out << json;
        print_design_summary(std::cout, report);
    } else {
        std::cout << json;
        print_design_summary(std::cerr, report);
    }
    return kExitOk;
}

int run_check(const RunConfig& cfg) {
    SubsamplingDesign design = load_design_file(cfg.design_path);
    GridSpec grid;
    grid.points = cfg.grid;
    int q = cfg.degree > 0 ? cfg.degree : design.degree_hint();
    EquivalenceReport report = check_equivalence(design, q, grid, /*use_parallel=*/false);
    if (cfg.tolerance > 0.0) {
        // Re-judge the reported extremes against the override tolerance.
        report.tolerance = cfg.tolerance;
        report.passed = report.min_on_support >= report.threshold - cfg.tolerance &&
                        report.max_off_support <= report.threshold + cfg.tolerance;
    }
    std::cout << equivalence_report_to_json(report);
    return report.passed ? kExitOk : kExitEquivalence;
}

void write_curve_csv(std::ostream& os, const std::vector<EfficiencyPoint>& curve) {
    os << "alpha,efficiency,logdet,logdet_opt,design_id\n";
    for (const EfficiencyPoint& p : curve) {
        if (p.failed) {
            os << fmt_g(p.alpha) << ",nan,nan,nan," << p.design_id << "\n";
        } else {
            os << fmt_g(p.alpha) << "," << fmt17(p.efficiency) << ","
               << fmt17(p.logdet) << ","
               << fmt17(p.logdet_opt) << "," << p.design_id << "\n";
        }
    }
}

int run_efficiency(const RunConfig& cfg, bool refine) {
    CovariateDistribution dist = CovariateDistribution::parse(cfg.dist_spec);
    ReferenceFamily family = parse_family(cfg.family);
    std::vector<double> alphas;
    if (!cfg.alphas_spec.empty()) {
        alphas = parse_alphas(cfg.alphas_spec);
    } else if (refine) {
        for (int i = 1; i <= 99; ++i) alphas.push_back(i / 100.0);
    } else {
        throw invalid_argument_error("--alphas is required");
    }
    // Only `curve` is allowed to run the sweep in parallel.
    std::vector<EfficiencyPoint> curve = efficiency_curve(dist, cfg.degree, family, alphas, refine);
    for (const EfficiencyPoint& p : curve) {
        if (p.failed) {
            std::cerr << "alpha " << fmt_g(p.alpha) << " failed: " << p.note << "\n";
        }
    }
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        if (!out) throw invalid_argument_error("cannot write " + cfg.out_path);
        write_curve_csv(out, curve);
    } else {
        write_curve_csv(std::cout, curve);
    }
    if (refine) {
        CurveMinimum minimum = refine_curve_minimum(dist, cfg.degree, family, curve);
        std::string path = cfg.out_path + ".min.json";
        std::ofstream out(path);
        if (!out) throw invalid_argument_error("cannot write " + path);
        out << "{\n  \"alpha_min\": " << fmt17(minimum.alpha_min)
            << ",\n  \"eff_min\": " << fmt17(minimum.eff_min) << "\n}\n";
        std::cout << "minimum: alpha=" << fmt_g(minimum.alpha_min)
                  << " efficiency=" << fmt_g(minimum.eff_min) << " (" << path << ")\n";
    }
    return kExitOk;
}

int run_subsample(const RunConfig& cfg) {
    require_distinct_paths({cfg.design_path, cfg.in_path, cfg.out_path});
    SubsamplingDesign design = load_design_file(cfg.design_path);
    SubsampleOptions options;
    options.column = cfg.column;
    options.on_error = (cfg.on_error == "skip") ? ErrorPolicy::skip : ErrorPolicy::abort;
    std::ifstream in(cfg.in_path);
    if (!in) throw invalid_argument_error("cannot open " + cfg.in_path);
    std::ofstream out(cfg.out_path);
    if (!out) throw invalid_argument_error("cannot write " + cfg.out_path);
    SubsampleStats stats = subsample_stream(in, out, design, options);

    std::ostringstream os;
    os << "{\n";
    os << "  \"n_total\": " << stats.n_total << ",\n";
    os << "  \"n_accepted\": " << stats.n_accepted << ",\n";
    os << "  \"n_skipped\": " << stats.n_skipped << ",\n";
    os << "  \"empirical_rate\": " << fmt17(stats.empirical_rate) << ",\n";
    os << "  \"expected_rate\": " << fmt17(stats.expected_rate) << ",\n";
    os << "  \"per_interval_counts\": [";
    for (std::size_t i = 0; i < stats.per_interval_counts.size(); ++i) {
        if (i) os << ", ";
        os << stats.per_interval_counts[i];
    }
    os << "],\n";
    os << "  \"ks_note\": " << fmt17(stats.ks_note) << ",\n";
    os << "  \"header_present\": " << (stats.header_present ? "true" : "false") << ",\n";
    os << "  \"empty_input\": " << (stats.empty_input ? "true" : "false") << "\n";
    os << "}\n";
    std::cerr << os.str();
    return kExitOk;
}

// The six tabulated summaries. All output is CSV on stdout with fixed
// 5-decimal formatting so repeated runs are byte-identical.

void table_exp(std::ostream& os) {
    const double alphas[] = {0.5, 0.3, 0.1, 0.01};
    CovariateDistribution dist = CovariateDistribution::exponential(1.0);
    os << "alpha,b,mass_below_b,a,mass_above_a,lower_share_pct\n";
    for (double alpha : alphas) {
        SolveReport rep = solve_linear_asymmetric(dist, alpha);
        double a = rep.boundaries[0];
        double b = rep.boundaries[1];
        double below = dist.partial_moment(0, dist.support_lo(), b);
        double above = dist.partial_moment(0, a, dist.support_hi());
        os << fmt5(alpha) << "," << fmt5(b) << "," << fmt5(below) << "," << fmt5(a) << ","
           << fmt5(above) << "," << fmt5(100.0 * below / alpha) << "\n";
    }
}

void symmetric_quadratic_table(std::ostream& os, const CovariateDistribution& dist,
                               const std::vector<double>& alphas, bool closed_form) {
    os << "alpha,a,b,center_share_pct\n";
    for (double alpha : alphas) {
        SolveReport rep = closed_form ? solve_uniform_quadratic_closed_form(dist, alpha)
                                      : solve_quadratic_symmetric(dist, alpha);
        double a = rep.boundaries.empty() ? 0.0 : rep.boundaries[0];
        double b = 0.0;
        double share = 0.0;
        if (rep.branch == SolveBranch::three_interval || rep.branch == SolveBranch::closed_form) {
            b = rep.boundaries[1];
            share = 100.0 * dist.partial_moment(0, -b, b) / alpha;
        }
        os << fmt5(alpha) << "," << fmt5(a) << "," << fmt5(b) << "," << fmt5(share) << "\n";
    }
}

void table_crossover(std::ostream& os) {
    const int dofs[] = {5, 6, 7, 8, 9, 30};
    os << "dof,alpha_star\n";
    for (int dof : dofs) {
        os << dof << "," << fmt5(critical_alpha(CovariateDistribution::student_t(dof))) << "\n";
    }
}

void table_efficiency(std::ostream& os) {
    struct Row {
        int degree;
        const char* label;
        CovariateDistribution dist;
    };
    const std::vector<Row> rows = {
        {1, "normal", CovariateDistribution::normal(0.0, 1.0)},
        {1, "exp", CovariateDistribution::exponential(1.0)},
        {2, "normal", CovariateDistribution::normal(0.0, 1.0)},
        {2, "unif", CovariateDistribution::uniform(-1.0, 1.0)},
        {2, "t5", CovariateDistribution::student_t(5)},
        {2, "t9", CovariateDistribution::student_t(9)},
    };
    const std::vector<double> alphas = {0.5, 0.3, 0.1, 0.01};
    struct Cell {
        double eff = 0.0;
    };
    std::vector<Cell> cells(rows.size() * alphas.size());
    parallel_for(cells.size(), [&](std::size_t idx) {
        const Row& row = rows[idx / alphas.size()];
        double alpha = alphas[idx % alphas.size()];
        SolveReport opt = solve_optimal(row.dist, row.degree, alpha);
        InformationMatrix info = uniform_random_design_info(row.dist, row.degree, alpha);
        cells[idx].eff = efficiency(info, information_matrix(opt.design, row.degree), row.degree + 1);
    }, /*use_parallel=*/true);
    os << "degree,dist,alpha,efficiency\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            os << rows[i].degree << "," << rows[i].label << "," << fmt5(alphas[j]) << ","
               << fmt5(cells[i * alphas.size() + j].eff) << "\n";
        }
    }
}

int run_tables(const RunConfig& cfg) {
    const std::vector<double> alphas = {0.5, 0.3, 0.1, 0.01};
    if (cfg.which == "exp") {
        table_exp(std::cout);
    } else if (cfg.which == "normal") {
        symmetric_quadratic_table(std::cout, CovariateDistribution::normal(0.0, 1.0), alphas, false);
    } else if (cfg.which == "unif") {
        symmetric_quadratic_table(std::cout, CovariateDistribution::uniform(-1.0, 1.0), alphas, true);
    } else if (cfg.which == "t5") {
        symmetric_quadratic_table(std::cout, CovariateDistribution::student_t(5),
                                  {0.10, 0.07, 0.03, 0.01}, false);
    } else if (cfg.which == "t5-crossover") {
        table_crossover(std::cout);
    } else if (cfg.which == "efficiency") {
        table_efficiency(std::cout);
    } else {
        throw invalid_argument_error("unknown table '" + cfg.which + "'");
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"D-optimal continuous subsampling designs for polynomial regression"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* design = app.add_subcommand("design", "Solve for the optimal design");
    design->add_option("--dist", cfg.dist_spec, "Distribution spec, e.g. normal:0,1")->required();
    design->add_option("--degree", cfg.degree, "Polynomial degree q >= 1")->required();
    design->add_option("--alpha", cfg.alpha, "Subsampling proportion in (0,1)")->required();
    design->add_option("--method", cfg.method, "auto | newton | closed-form")
        ->check(CLI::IsMember({"auto", "newton", "closed-form"}));
    design->add_option("--out", cfg.out_path, "Write the design JSON here (default stdout)");

    CLI::App* check = app.add_subcommand("check", "Verify a design against the equivalence theorem");
    check->add_option("--design", cfg.design_path, "Design JSON path")->required();
    check->add_option("--grid", cfg.grid, "Grid points for the sensitivity scan")
        ->check(CLI::PositiveNumber);
    check->add_option("--degree", cfg.degree, "Override the design's degree")
        ->default_val(0);
    check->add_option("--tol", cfg.tolerance, "Override the pass tolerance")
        ->check(CLI::PositiveNumber);

    CLI::App* eff = app.add_subcommand("efficiency", "Efficiency of a reference design family");
    eff->add_option("--dist", cfg.dist_spec, "Distribution spec")->required();
    eff->add_option("--degree", cfg.degree, "Polynomial degree")->required();
    eff->add_option("--family", cfg.family, "uniform_random | iboss_two_tail | iboss_three_piece")
        ->required();
    eff->add_option("--alphas", cfg.alphas_spec, "Comma list or range a:b:step")->required();
    eff->add_option("--out", cfg.out_path, "Write CSV here (default stdout)");

    CLI::App* curve = app.add_subcommand("curve", "Efficiency curve with refined minimum");
    curve->add_option("--dist", cfg.dist_spec, "Distribution spec")->required();
    curve->add_option("--degree", cfg.degree, "Polynomial degree")->required();
    curve->add_option("--family", cfg.family, "Reference family")->required();
    curve->add_option("--alphas", cfg.alphas_spec, "Grid override (default 0.01..0.99)");
    curve->add_option("--out", cfg.out_path, "CSV path; the minimum lands in <out>.min.json")
        ->required();

    CLI::App* sub = app.add_subcommand("subsample", "Apply a design to a CSV stream");
    sub->add_option("--design", cfg.design_path, "Design JSON path")->required();
    sub->add_option("--in", cfg.in_path, "Input CSV")->required();
    sub->add_option("--column", cfg.column, "Column name or 0-based index (default 0)");
    sub->add_option("--out", cfg.out_path, "Accepted rows land here")->required();
    sub->add_option("--on-error", cfg.on_error, "abort | skip")
        ->check(CLI::IsMember({"abort", "skip"}));

    CLI::App* tables = app.add_subcommand("tables", "Regenerate the reference tables");
    tables->add_option("--which", cfg.which, "exp | normal | unif | t5 | t5-crossover | efficiency")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (design->parsed()) return run_design(cfg);
        if (check->parsed()) return run_check(cfg);
        if (eff->parsed()) return run_efficiency(cfg, false);
        if (curve->parsed()) return run_efficiency(cfg, true);
        if (sub->parsed()) return run_subsample(cfg);
        if (tables->parsed()) return run_tables(cfg);
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const numerical_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const invalid_argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
