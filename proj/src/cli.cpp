#include "finpart/cli.hpp"
#include "finpart/canonical.hpp"
#include "finpart/errors.hpp"
#include "finpart/finite_part.hpp"
#include "finpart/quadrature.hpp"
#include "finpart/special.hpp"
#include "finpart/stieltjes.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace finpart::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Cell {
    enum class Kind { num, text, boolean } kind = Kind::num;
    double num = 0.0;
    std::string text;
    bool flag = false;
};

Cell num(double v) { return {Cell::Kind::num, v, "", false}; }
Cell str(std::string s) { return {Cell::Kind::text, 0.0, std::move(s), false}; }
Cell boolean(bool b) { return {Cell::Kind::boolean, 0.0, "", b}; }

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
    bool bound_satisfied = true;
};

std::string fmt(double v, int sig) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", sig, v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string cell_json(const Cell& c) {
    switch (c.kind) {
    case Cell::Kind::num:
        if (std::isinf(c.num))
            return c.num > 0 ? "\"inf\"" : "\"-inf\"";
        if (std::isnan(c.num))
            return "null";
        return fmt(c.num, 17);
    case Cell::Kind::text:
        return "\"" + json_escape(c.text) + "\"";
    case Cell::Kind::boolean:
        return c.flag ? "true" : "false";
    }
    return "null";
}

std::string cell_flat(const Cell& c, int sig) {
    switch (c.kind) {
    case Cell::Kind::num:
        return fmt(c.num, sig);
    case Cell::Kind::text:
        return c.text;
    case Cell::Kind::boolean:
        return c.flag ? "true" : "false";
    }
    return "";
}

void emit_json(const Report& r, std::ostream& out) {
    out << "{\n  \"command\": \"" << json_escape(r.command) << "\",\n";
    out << "  \"parameters\": {";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        out << (i ? ", " : "") << "\"" << json_escape(r.params[i].first)
            << "\": \"" << json_escape(r.params[i].second) << "\"";
    }
    out << "},\n";
    out << "  \"columns\": [";
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        out << (i ? ", " : "") << "\"" << json_escape(r.columns[i]) << "\"";
    out << "],\n  \"rows\": [\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        out << "    [";
        for (std::size_t j = 0; j < r.rows[i].size(); ++j)
            out << (j ? ", " : "") << cell_json(r.rows[i][j]);
        out << "]" << (i + 1 < r.rows.size() ? "," : "") << "\n";
    }
    out << "  ],\n  \"summary\": {";
    for (std::size_t i = 0; i < r.summary.size(); ++i) {
        out << (i ? ", " : "") << "\"" << json_escape(r.summary[i].first)
            << "\": " << cell_json(r.summary[i].second);
    }
    out << "}\n}\n";
}

void emit_csv(const Report& r, std::ostream& out) {
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        out << (i ? "," : "") << r.columns[i];
    out << "\n";
    for (const auto& row : r.rows) {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? "," : "") << cell_flat(row[j], 17);
        out << "\n";
    }
}

void emit_text(const Report& r, std::ostream& out) {
    out << "# " << r.command;
    for (const auto& [k, v] : r.params)
        out << " " << k << "=" << v;
    out << "\n";
    std::vector<std::size_t> width(r.columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        width[i] = r.columns[i].size();
    for (const auto& row : r.rows) {
        std::vector<std::string> line;
        for (std::size_t j = 0; j < row.size(); ++j) {
            line.push_back(cell_flat(row[j], 10));
            width[j] = std::max(width[j], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        out << (i ? "  " : "") << std::string(width[i] - r.columns[i].size(), ' ')
            << r.columns[i];
    out << "\n";
    for (const auto& line : cells) {
        for (std::size_t j = 0; j < line.size(); ++j)
            out << (j ? "  " : "") << std::string(width[j] - line[j].size(), ' ')
                << line[j];
        out << "\n";
    }
    for (const auto& [k, v] : r.summary)
        out << k << " = " << cell_flat(v, 10) << "\n";
}

void emit(const Report& r, const std::string& format, std::ostream& out) {
    if (format == "json")
        emit_json(r, out);
    else if (format == "csv")
        emit_csv(r, out);
    else
        emit_text(r, out);
}

double parse_limit(const std::string& s) {
    if (s == "inf" || s == "+inf" || s == "infinity")
        return kInf;
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
        throw Error("bad numeric value '" + s + "'");
    return v;
}

std::string limit_str(double a) { return a == kInf ? "inf" : fmt(a, 17); }

void add_fpi_rows(Report& rep, const char* name, const FpiResult& r) {
    rep.rows.push_back({str(name), num(r.value), num(r.error_estimate)});
}

// ----- subcommand drivers ------------------------------------------------

struct Options {
    double tol = 1e-10;
    std::string format = "json";
    std::string contour_spec;
};

int run_fpi(const Options& opt, const std::string& fname, int n, double nu,
            double a, const std::string& method, std::ostream& out) {
    const auto f = make_builtin(fname);
    FpiProblem prob{f, a, n, BranchSpec{nu}};

    Report rep;
    rep.command = "fpi";
    rep.params = {{"f", fname},
                  {"n", std::to_string(n)},
                  {"nu", fmt(nu, 17)},
                  {"a", fmt(a, 17)},
                  {"method", method}};
    rep.columns = {"method", "value", "error_estimate"};

    FpiResult limit_r, contour_r;
    bool have_limit = false, have_contour = false;
    if (method == "limit" || method == "both") {
        limit_r = fpi_limit(prob);
        add_fpi_rows(rep, "limit", limit_r);
        have_limit = true;
    }
    if (method == "contour" || method == "both") {
        const Contour c = opt.contour_spec.empty() ? default_contour(f, a)
                                                   : Contour::parse(opt.contour_spec);
        contour_r = fpi_contour(prob, c);
        add_fpi_rows(rep, "contour", contour_r);
        have_contour = true;
        rep.params.emplace_back("contour", c.describe());
    }

    const FpiResult& lead = have_limit ? limit_r : contour_r;
    double max_err = lead.error_estimate;
    if (have_limit && have_contour) {
        const double diff = std::abs(limit_r.value - contour_r.value);
        max_err = diff;
        rep.bound_satisfied = diff <= 1e-8 * (1.0 + std::abs(limit_r.value));
        rep.summary.emplace_back("method_agreement", num(diff));
    }
    rep.summary.emplace_back("value", num(lead.value));
    rep.summary.emplace_back("max_abs_err", num(max_err));
    rep.summary.emplace_back("bound_satisfied", boolean(rep.bound_satisfied));

    // divergent terms dropped by the finite-part prescription
    rep.summary.emplace_back("dropped_count",
                             num(double(lead.dropped_divergences.size())));
    for (std::size_t i = 0; i < lead.dropped_divergences.size(); ++i) {
        const auto& d = lead.dropped_divergences[i];
        const std::string key = "dropped[" + std::to_string(i) + "]";
        rep.summary.emplace_back(key + ".kind", str(d.is_log ? "log_eps" : "eps_pow"));
        rep.summary.emplace_back(key + ".power", num(d.power));
        rep.summary.emplace_back(key + ".coeff", num(d.coeff));
    }

    emit(rep, opt.format, out);
    return rep.bound_satisfied ? 0 : 2;
}

int run_stieltjes(const Options& opt, const std::string& fname, double nu,
                  double omega, const std::string& a_str, int terms,
                  std::ostream& out) {
    const auto f = make_builtin(fname);
    StieltjesProblem prob{f, nu, omega, parse_limit(a_str)};
    const auto e = expand_origin(prob, terms);

    Report rep;
    rep.command = "stieltjes";
    rep.params = {{"f", fname},
                  {"nu", fmt(nu, 17)},
                  {"omega", fmt(omega, 17)},
                  {"a", limit_str(prob.a)},
                  {"terms", std::to_string(static_cast<int>(e.partial_sums.size()))}};
    rep.columns = {"n", "S_n", "correction", "total", "bound", "direct", "abs_err"};

    bool ok = true;
    for (std::size_t i = 0; i < e.partial_sums.size(); ++i) {
        const double total = e.partial_sums[i] + e.correction_term;
        const double abs_err = std::abs(total - e.reference);
        if (e.bounds_certified && abs_err > e.remainder_bounds[i] + 10.0 * opt.tol)
            ok = false;
        rep.rows.push_back({num(double(i + 1)), num(e.partial_sums[i]),
                            num(e.correction_term), num(total),
                            num(e.remainder_bounds[i]), num(e.reference),
                            num(abs_err)});
    }
    rep.bound_satisfied = ok;
    rep.summary.emplace_back("max_abs_err", num(std::abs(e.total() - e.reference)));
    if (!std::isnan(e.rho_used))
        rep.summary.emplace_back("rho_used", num(e.rho_used));
    rep.summary.emplace_back("bounds_certified", boolean(e.bounds_certified));
    rep.summary.emplace_back("bound_satisfied", boolean(ok));

    emit(rep, opt.format, out);
    return ok ? 0 : 2;
}

int run_expand_infinity(const Options& opt, double nu, double omega, int terms,
                        bool naive, std::ostream& out) {
    const auto exp = canonical_infinity(nu, omega, terms, !naive);
    const double direct = canonical_direct(nu, omega, opt.tol);
    const double branch_quad = canonical_branch_integral(nu, omega, opt.tol);

    Report rep;
    rep.command = "expand-infinity";
    rep.params = {{"nu", fmt(nu, 17)},
                  {"omega", fmt(omega, 17)},
                  {"terms", std::to_string(terms)},
                  {"variant", naive ? "naive" : "corrected"}};
    rep.columns = {"power", "coeff", "term_value"};
    for (const auto& t : exp.series.terms)
        rep.rows.push_back(
            {num(t.power), num(t.coeff), num(t.coeff * std::pow(omega, t.power))});

    const double err = std::abs(exp.value - direct);
    rep.bound_satisfied = naive ? true : err <= 1e-5;
    rep.summary.emplace_back("value", num(exp.value));
    rep.summary.emplace_back("fpi_series", num(exp.fpi_series_value));
    rep.summary.emplace_back("branch_series", num(exp.branch_series_value));
    rep.summary.emplace_back("branch_integral", num(branch_quad));
    rep.summary.emplace_back("direct", num(direct));
    rep.summary.emplace_back("max_abs_err", num(err));
    rep.summary.emplace_back("bound_satisfied", boolean(rep.bound_satisfied));

    emit(rep, opt.format, out);
    return rep.bound_satisfied ? 0 : 2;
}

int run_demo_missing_terms(const Options& opt, double nu, double omega,
                           int terms, std::ostream& out) {
    const double direct = canonical_direct(nu, omega, opt.tol);

    Report rep;
    rep.command = "demo missing-terms";
    rep.params = {{"nu", fmt(nu, 17)},
                  {"omega", fmt(omega, 17)},
                  {"terms", std::to_string(terms)}};
    rep.columns = {"N", "naive", "corrected", "direct", "naive_err", "corrected_err"};

    double corrected_err = kInf;
    for (int N = 1; N <= terms; ++N) {
        const auto cor = canonical_infinity(nu, omega, N, true);
        const auto nai = canonical_infinity(nu, omega, N, false);
        corrected_err = std::abs(cor.value - direct);
        rep.rows.push_back({num(double(N)), num(nai.value), num(cor.value),
                            num(direct), num(std::abs(nai.value - direct)),
                            num(corrected_err)});
    }
    rep.bound_satisfied = corrected_err <= 1e-5;
    rep.summary.emplace_back("max_abs_err", num(corrected_err));
    rep.summary.emplace_back("bound_satisfied", boolean(rep.bound_satisfied));

    emit(rep, opt.format, out);
    return rep.bound_satisfied ? 0 : 2;
}

int run_demo_e1(const Options& opt, double omega, int terms, std::ostream& out) {
    const auto f = make_builtin("exp_neg");
    const double direct =
        std::exp(-omega) * stieltjes_direct({f, 0.0, omega, kInf}, 1e-12);

    Report rep;
    rep.command = "demo e1";
    rep.params = {{"omega", fmt(omega, 17)}, {"terms", std::to_string(terms)}};
    rep.columns = {"n", "series", "direct", "abs_err"};

    double err = kInf;
    for (int n = 1; n <= terms; ++n) {
        const double v = e1_expansion(omega, n);
        err = std::abs(v - direct);
        rep.rows.push_back({num(double(n)), num(v), num(direct), num(err)});
    }
    rep.bound_satisfied = err <= 1e-8;
    rep.summary.emplace_back("max_abs_err", num(err));
    rep.summary.emplace_back("bound_satisfied", boolean(rep.bound_satisfied));
    emit(rep, opt.format, out);
    return rep.bound_satisfied ? 0 : 2;
}

int run_demo_igamma(const Options& opt, double nu, double omega, int terms,
                    std::ostream& out) {
    const auto q = quad::integrate_decay_tail(
        [&](double t) { return std::pow(t, nu - 1.0) * std::exp(-t); }, omega,
        1e-12);
    const double direct = q.value;

    Report rep;
    rep.command = "demo igamma";
    rep.params = {{"nu", fmt(nu, 17)},
                  {"omega", fmt(omega, 17)},
                  {"terms", std::to_string(terms)}};
    rep.columns = {"n", "series", "direct", "abs_err"};

    double err = kInf;
    for (int n = 1; n <= terms; ++n) {
        const double v = igamma_expansion(nu, omega, n);
        err = std::abs(v - direct);
        rep.rows.push_back({num(double(n)), num(v), num(direct), num(err)});
    }
    rep.bound_satisfied = err <= 1e-8;
    rep.summary.emplace_back("max_abs_err", num(err));
    rep.summary.emplace_back("bound_satisfied", boolean(rep.bound_satisfied));
    emit(rep, opt.format, out);
    return rep.bound_satisfied ? 0 : 2;
}

int run_demo_pole_exclusion(const Options& opt, const std::string& fname,
                            double nu, double omega, double a,
                            std::ostream& out) {
    const auto f = make_builtin(fname);
    StieltjesProblem prob{f, nu, omega, a};
    const auto e = expand_origin(prob, 5);

    Report rep;
    rep.command = "demo pole-exclusion";
    rep.params = {{"f", fname},
                  {"nu", fmt(nu, 17)},
                  {"omega", fmt(omega, 17)},
                  {"a", fmt(a, 17)}};
    rep.columns = {"n", "residue_term", "bound_decay"};

    double lo = kInf, hi = -kInf;
    for (int n = 3; n <= 15; ++n) {
        const auto audit = pole_exclusion_audit(prob, n);
        lo = std::min(lo, audit.residue_term);
        hi = std::max(hi, audit.residue_term);
        rep.rows.push_back(
            {num(double(n)), num(audit.residue_term), num(audit.bound_decay)});
    }
    const double drift = hi - lo;
    const double corr_diff =
        std::abs(rep.rows.front()[1].num - e.correction_term);
    rep.bound_satisfied = drift <= 1e-10 && corr_diff <= 1e-9;
    rep.summary.emplace_back("residue_drift", num(drift));
    rep.summary.emplace_back("correction_term", num(e.correction_term));
    rep.summary.emplace_back("correction_diff", num(corr_diff));
    rep.summary.emplace_back("bound_satisfied", boolean(rep.bound_satisfied));
    emit(rep, opt.format, out);
    return rep.bound_satisfied ? 0 : 2;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"finpart: finite-part integrals and corrected Stieltjes expansions"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--tol", opt.tol, "quadrature tolerance (default 1e-10)");
    app.add_option("--format,--report", opt.format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--contour", opt.contour_spec,
                   "contour spec: circle:a | rect:a,h | rho:rho,a");

    // fpi
    std::string f_name = "one", method = "limit";
    int n = 0;
    double nu = 0.0, a = 1.0, omega = 1.0;
    std::string a_str = "1";
    int terms = 0;
    bool naive = false;

    auto* fpi_cmd = app.add_subcommand(
        "fpi", "finite part of ∫_0^a f(x) x^{-n-1} dx (nu=0) or x^{-n-nu} dx; "
               "columns: method,value,error_estimate");
    fpi_cmd->add_option("--f", f_name, "one|exp_neg|cos|geom(p)|poly(c0,...)")
        ->required();
    fpi_cmd->add_option("--n", n, "n (pole order data) or m (branch)")->required();
    fpi_cmd->add_option("--nu", nu, "branch exponent in [0,1)")->required();
    fpi_cmd->add_option("--a", a, "upper limit")->required();
    fpi_cmd->add_option("--method", method, "limit|contour|both")
        ->check(CLI::IsMember({"limit", "contour", "both"}));

    auto* st_cmd = app.add_subcommand(
        "stieltjes", "corrected origin expansion of ∫_0^a x^{-nu} f/(omega+x); "
                     "columns: n,S_n,correction,total,bound,direct,abs_err");
    st_cmd->add_option("--f", f_name)->required();
    st_cmd->add_option("--nu", nu)->required();
    st_cmd->add_option("--omega", omega)->required();
    st_cmd->add_option("--a", a_str, "upper limit (number or 'inf')")->required();
    st_cmd->add_option("--terms", terms, "0 = auto (smallest n with B_n < 1e-10)");

    auto* inf_cmd = app.add_subcommand(
        "expand-infinity", "expansion of ∫_0^inf (1+x)^{-nu}/(omega+x) dx; "
                           "columns: power,coeff,term_value");
    inf_cmd->add_option("--nu", nu)->required();
    inf_cmd->add_option("--omega", omega)->required();
    inf_cmd->add_option("--terms", terms)->default_val(12);
    inf_cmd->add_flag("--naive", naive, "drop the branch-point series");

    auto* demo = app.add_subcommand("demo", "closed-form demonstrations");
    demo->require_subcommand(1);
    auto* d_missing = demo->add_subcommand(
        "missing-terms", "naive vs corrected expansion at infinity; "
                         "columns: N,naive,corrected,direct,naive_err,corrected_err");
    d_missing->add_option("--nu", nu)->default_val(1.0 / 3.0);
    d_missing->add_option("--omega", omega)->default_val(10.0);
    d_missing->add_option("--terms", terms)->default_val(12);

    auto* d_e1 = demo->add_subcommand(
        "e1", "exponential-integral series; columns: n,series,direct,abs_err");
    d_e1->add_option("--omega", omega)->required();
    d_e1->add_option("--terms", terms)->default_val(40);

    auto* d_ig = demo->add_subcommand(
        "igamma", "incomplete-gamma series; columns: n,series,direct,abs_err");
    d_ig->add_option("--nu", nu)->required();
    d_ig->add_option("--omega", omega)->required();
    d_ig->add_option("--terms", terms)->default_val(40);

    auto* d_pe = demo->add_subcommand(
        "pole-exclusion", "residue audit of a contour excluding -omega; "
                          "columns: n,residue_term,bound_decay");
    d_pe->add_option("--f", f_name)->default_val("exp_neg");
    d_pe->add_option("--nu", nu)->required();
    d_pe->add_option("--omega", omega)->required();
    d_pe->add_option("--a", a)->default_val(1.0);

    std::vector<const char*> argv;
    argv.push_back("finpart");
    for (const auto& s : args)
        argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*fpi_cmd)
            return run_fpi(opt, f_name, n, nu, a, method, out);
        if (*st_cmd)
            return run_stieltjes(opt, f_name, nu, omega, a_str, terms, out);
        if (*inf_cmd)
            return run_expand_infinity(opt, nu, omega, terms, naive, out);
        if (*d_missing)
            return run_demo_missing_terms(opt, nu, omega, terms, out);
        if (*d_e1)
            return run_demo_e1(opt, omega, terms, out);
        if (*d_ig)
            return run_demo_igamma(opt, nu, omega, terms, out);
        if (*d_pe)
            return run_demo_pole_exclusion(opt, f_name, nu, omega, a, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand selected\n";
    return 1;
}

} // namespace finpart::cli
