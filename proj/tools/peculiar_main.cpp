#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "peculiar/report.hpp"

namespace {

using namespace peculiar;

struct CommonOpts {
    int degree = 4;
    std::string set = "all";
    std::uint64_t seed = 1;
    std::string format = "table";
    std::string out_path;
    int workers = 0;
    double tol_accept = 1e-8;
    double tol_dedup = 1e-6;
    std::string precision = "extended";
    long long prime_bound = 200;
};

TrackOptions make_track_options(const CommonOpts& c) {
    TrackOptions o;
    o.gamma_seed = c.seed;
    o.accept_tol = c.tol_accept;
    o.dedup_tol = c.tol_dedup;
    o.refine_precision = (c.precision == "double") ? Precision::Double : Precision::Extended;
    o.workers = c.workers;
    return o;
}

void add_common(CLI::App* cmd, CommonOpts& c, bool with_set) {
    cmd->add_option("-N,--degree", c.degree, "polynomial degree N");
    if (with_set) {
        cmd->add_option("--set", c.set, "which system to solve")
            ->check(CLI::IsMember({"all", "p0", "p1", "pt", "nonzero"}));
    }
    cmd->add_option("--seed", c.seed, "gamma seed (deterministic runs)");
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--out", c.out_path, "write the report to this file");
    cmd->add_option("--workers", c.workers, "parallel path-tracking workers (<=1 serial)");
    cmd->add_option("--tol-accept", c.tol_accept, "endpoint acceptance tolerance");
    cmd->add_option("--tol-dedup", c.tol_dedup, "solution clustering tolerance");
    cmd->add_option("--precision", c.precision, "endpoint refinement precision")
        ->check(CLI::IsMember({"double", "extended"}));
}

// Reports are assembled in memory and written in one piece, so a failed run
// leaves no partial output file.
void emit(const CommonOpts& c, const std::string& text) {
    if (c.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        if (!text.empty() && text.back() != '\n') std::fputc('\n', stdout);
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    f << text;
}

std::string render(const CommonOpts& c, const ReportDoc& doc) {
    if (c.format == "json") return to_json(doc);
    if (c.format == "csv") return to_csv(doc);
    return to_table(doc);
}

int run_enumerate(const CommonOpts& c) {
    TrackOptions opts = make_track_options(c);
    if (c.set == "all") {
        EnumerationReport report = enumerate_degree(c.degree, opts);
        BoundsAudit audit = check_bounds(report);
        ReportDoc doc = make_doc(report, &audit);
        emit(c, render(c, doc));
        bool partition_ok = report.counts.p0 + report.counts.p1_minus_p0 + report.counts.pt ==
                            report.counts.total_distinct;
        if (!partition_ok || !report.reverified_ok) {
            std::fprintf(stderr, "{\"audit_failures\":[%s%s%s]}\n",
                         partition_ok ? "" : "\"partition\"",
                         (!partition_ok && !report.reverified_ok) ? "," : "",
                         report.reverified_ok ? "" : "\"reverification\"");
            return 1;
        }
        return 0;
    }
    AlgebraicSystem system = c.set == "p0"      ? build_p0_reduced(c.degree)
                             : c.set == "p1"     ? build_p1_reduced(c.degree)
                             : c.set == "pt"     ? build_pt(c.degree)
                                                 : build_nonzero(c.degree);
    SolveResult result = solve(system, opts);
    emit(c, render(c, make_doc(system, result, opts)));
    return 0;
}

int run_verify(const CommonOpts& c) {
    TrackOptions opts = make_track_options(c);
    EnumerationReport report = enumerate_degree(c.degree, opts);
    KnownAnswerAudit audit = verify_known_answers(c.degree, report);
    if (c.format == "json") {
        std::string s = "{\"degree\":" + std::to_string(audit.degree_n);
        s += ",\"ok\":" + std::string(audit.ok ? "true" : "false");
        s += ",\"points_total\":" + std::to_string(audit.points_total);
        s += ",\"points_matched\":" + std::to_string(audit.points_matched);
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.17g", audit.max_system_residual);
        s += ",\"max_system_residual\":" + std::string(buf);
        s += ",\"mismatches\":[";
        for (std::size_t i = 0; i < audit.mismatches.size(); ++i) {
            if (i) s += ",";
            s += "\"" + audit.mismatches[i] + "\"";
        }
        s += "]}";
        emit(c, s);
    } else {
        std::string s = "known-answer verification, degree " + std::to_string(audit.degree_n) + "\n";
        s += "  substituted points: " + std::to_string(audit.points_total);
        s += ", matched: " + std::to_string(audit.points_matched) + "\n";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "  max system residual: %.3g\n", audit.max_system_residual);
        s += buf;
        for (const std::string& m : audit.mismatches) s += "  mismatch: " + m + "\n";
        s += audit.ok ? "  OK\n" : "  FAILED\n";
        emit(c, s);
    }
    if (!audit.ok) {
        std::fprintf(stderr, "{\"audit_failures\":[\"known_answers\"]}\n");
        return 1;
    }
    return 0;
}

int run_bounds(const CommonOpts& c) {
    TrackOptions opts = make_track_options(c);
    EnumerationReport report = enumerate_degree(c.degree, opts);
    BoundsAudit audit = check_bounds(report); // throws BoundViolation on excess
    ReportDoc doc = make_doc(report, &audit);
    if (c.format == "json") {
        emit(c, to_json(doc));
    } else {
        emit(c, to_table(doc));
    }
    return 0;
}

int run_stein(const CommonOpts& c) {
    TrackOptions opts = make_track_options(c);
    EnumerationReport report = enumerate_degree(c.degree, opts);
    std::vector<SolutionPoint> survivors = stein_filter(report);
    ReportDoc doc = make_doc(report, nullptr);
    doc.variant = "stein_filter";
    doc.solutions = survivors;
    doc.has_counts = false;
    doc.has_reverify = false;
    emit(c, render(c, doc));
    return 0;
}

int run_conjecture(const CommonOpts& c, bool with_census) {
    TrackOptions opts = make_track_options(c);
    ConjectureProbe probe = check_conjecture(c.degree, opts, with_census && c.degree <= 6);
    std::string s;
    if (c.format == "json") {
        s = "{\"degree\":" + std::to_string(probe.degree_n);
        s += ",\"p1_nonzero\":{\"distinct\":" + std::to_string(probe.p1nz_distinct);
        s += ",\"expected\":" + std::to_string(probe.p1nz_expected);
        s += ",\"has_yn_zero\":" + std::string(probe.p1nz_has_yn_zero ? "true" : "false");
        s += ",\"has_ynm1_minus_one\":" +
             std::string(probe.p1nz_has_ynm1_minus_one ? "true" : "false") + "}";
        s += ",\"pt\":{\"distinct\":" + std::to_string(probe.pt_distinct);
        s += ",\"expected\":" + std::to_string(probe.pt_expected);
        s += ",\"has_yn_zero\":" + std::string(probe.pt_has_yn_zero ? "true" : "false");
        s += ",\"has_ynm1_minus_one\":" +
             std::string(probe.pt_has_ynm1_minus_one ? "true" : "false") + "}";
        s += ",\"census_checked\":" + std::string(probe.census_checked ? "true" : "false");
        s += ",\"census_consistent\":" + std::string(probe.census_consistent ? "true" : "false");
        s += "}";
    } else {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "conjecture probe, degree %d\n", probe.degree_n);
        s += buf;
        std::snprintf(buf, sizeof(buf), "  p1_nonzero: %lld distinct (expected %lld), y_N=0: %s, y_{N-1}=-1: %s\n",
                      probe.p1nz_distinct, probe.p1nz_expected,
                      probe.p1nz_has_yn_zero ? "yes" : "no",
                      probe.p1nz_has_ynm1_minus_one ? "yes" : "no");
        s += buf;
        std::snprintf(buf, sizeof(buf), "  pt:         %lld distinct (expected %lld), y_N=0: %s, y_{N-1}=-1: %s\n",
                      probe.pt_distinct, probe.pt_expected,
                      probe.pt_has_yn_zero ? "yes" : "no",
                      probe.pt_has_ynm1_minus_one ? "yes" : "no");
        s += buf;
        if (probe.census_checked) {
            std::snprintf(buf, sizeof(buf), "  census consistency: %s\n",
                          probe.census_consistent ? "ok" : "MISMATCH");
            s += buf;
        }
    }
    emit(c, s);

    bool counts_ok = probe.p1nz_distinct == probe.p1nz_expected &&
                     probe.pt_distinct == probe.pt_expected;
    bool degeneracy = probe.p1nz_has_yn_zero || probe.p1nz_has_ynm1_minus_one ||
                      probe.pt_has_yn_zero || probe.pt_has_ynm1_minus_one;
    // N = 4 is the documented exception: the y_4 = 0 point exists.
    bool expected_picture = counts_ok && (probe.degree_n == 4 ? degeneracy : !degeneracy) &&
                            (!probe.census_checked || probe.census_consistent);
    if (!expected_picture) {
        std::fprintf(stderr, "{\"audit_failures\":[\"conjecture_probe\"]}\n");
        return 1;
    }
    return 0;
}

int run_irreducible(const CommonOpts& c, bool use_known, const std::string& poly_csv) {
    std::vector<std::pair<std::string, IntPoly>> targets;
    if (use_known) {
        for (const KnownAnswer& ka : known_answers()) {
            if (ka.defining_poly.degree() < 2) continue;
            std::string name = "degree-" + std::to_string(ka.defining_poly.degree()) +
                               " defining polynomial (N=" + std::to_string(ka.degree_n) + " " +
                               class_name(ka.class_tag) + ")";
            targets.emplace_back(name, ka.defining_poly);
        }
    } else {
        IntPoly f;
        std::string tok;
        for (char ch : poly_csv + ",") {
            if (ch == ',') {
                if (!tok.empty()) f.c.push_back(std::stoll(tok));
                tok.clear();
            } else {
                tok += ch;
            }
        }
        f.normalize();
        targets.emplace_back("input polynomial", f);
    }

    std::string s;
    bool all_certified = true;
    for (const auto& [name, f] : targets) {
        std::vector<Rational> roots = rational_roots(f);
        std::optional<Certificate> cert = certify_irreducible(f, c.prime_bound);
        s += name + ": ";
        if (cert) {
            s += "irreducible over Q, certificate prime " + std::to_string(cert->prime);
        } else {
            s += "inconclusive up to prime bound " + std::to_string(c.prime_bound);
            all_certified = false;
        }
        s += ", rational roots: ";
        if (roots.empty()) {
            s += "none";
        } else {
            for (std::size_t i = 0; i < roots.size(); ++i) {
                if (i) s += ", ";
                s += std::to_string(roots[i].num) + "/" + std::to_string(roots[i].den);
            }
        }
        s += "\n";
    }
    emit(c, s);
    return (use_known && !all_certified) ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"census of monic polynomials whose zeros equal their coefficients"};
    app.require_subcommand(1);

    CommonOpts c;
    bool no_census = false;
    bool use_known = false;
    std::string poly_csv;

    CLI::App* cmd_enum = app.add_subcommand("enumerate", "solve a system and report its census");
    add_common(cmd_enum, c, true);

    CLI::App* cmd_verify = app.add_subcommand("verify", "check the explicit low-degree data (N=2..4)");
    add_common(cmd_verify, c, false);

    CLI::App* cmd_bounds = app.add_subcommand("bounds", "audit the census against the six bounds");
    add_common(cmd_bounds, c, false);

    CLI::App* cmd_stein = app.add_subcommand("stein", "real all-nonzero solutions");
    add_common(cmd_stein, c, false);

    CLI::App* cmd_conj = app.add_subcommand("conjecture", "probe the reduced systems' counts");
    add_common(cmd_conj, c, false);
    cmd_conj->add_flag("--no-census", no_census, "skip the full-census cross-check");

    CLI::App* cmd_irr = app.add_subcommand("irreducible", "irreducibility certificates mod p");
    cmd_irr->add_flag("--known-answers", use_known, "certify the shipped defining polynomials");
    cmd_irr->add_option("--poly", poly_csv, "comma-separated integer coefficients, constant first");
    cmd_irr->add_option("--prime-bound", c.prime_bound, "largest certificate prime to try");
    cmd_irr->add_option("--out", c.out_path, "write the report to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_enum->parsed()) return run_enumerate(c);
        if (cmd_verify->parsed()) return run_verify(c);
        if (cmd_bounds->parsed()) return run_bounds(c);
        if (cmd_stein->parsed()) return run_stein(c);
        if (cmd_conj->parsed()) return run_conjecture(c, !no_census);
        if (cmd_irr->parsed()) {
            if (!use_known && poly_csv.empty()) {
                std::fprintf(stderr, "irreducible: pass --known-answers or --poly\n");
                return 1;
            }
            return run_irreducible(c, use_known, poly_csv);
        }
    } catch (const BoundViolation& e) {
        std::fprintf(stderr, "{\"audit_failures\":[\"%s\"]}\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 2;
    }
    return 0;
}
