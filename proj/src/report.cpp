#include "peculiar/report.hpp"

#include <algorithm>
#include <cstdio>

namespace peculiar {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_complex_pair(const Complex& z) {
    return "[" + fmt_double(z.real()) + "," + fmt_double(z.imag()) + "]";
}

const char* precision_name(Precision p) {
    return p == Precision::Extended ? "extended" : "double";
}

bool lex_less_vec(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
        if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
    }
    return false;
}

void append_tolerances(std::string& s, const TrackOptions& o) {
    s += "\"tolerances\":{";
    s += "\"accept_tol\":" + fmt_double(o.accept_tol);
    s += ",\"dedup_tol\":" + fmt_double(o.dedup_tol);
    s += ",\"corrector_tol\":" + fmt_double(o.corrector_tol);
    s += ",\"step_init\":" + fmt_double(o.step_init);
    s += ",\"step_min\":" + fmt_double(o.step_min);
    s += ",\"infinity_threshold\":" + fmt_double(o.infinity_threshold);
    s += ",\"max_steps\":" + std::to_string(o.max_steps);
    s += ",\"precision\":\"" + std::string(precision_name(o.refine_precision)) + "\"";
    s += "}";
}

void append_accounting(std::string& s, const PathAccounting& a) {
    s += "\"path_accounting\":{";
    s += "\"bezout\":" + std::to_string(a.bezout);
    s += ",\"converged\":" + std::to_string(a.converged);
    s += ",\"at_infinity\":" + std::to_string(a.at_infinity);
    s += ",\"failed\":" + std::to_string(a.failed);
    s += ",\"gamma_retries\":" + std::to_string(a.gamma_retries);
    s += ",\"gamma_seed_used\":" + std::to_string(a.gamma_seed_used);
    s += "}";
}

} // namespace

ReportDoc make_doc(const EnumerationReport& report, const BoundsAudit* audit) {
    ReportDoc doc;
    doc.degree = report.degree_n;
    doc.variant = "full";
    doc.options = report.options;
    doc.accounting = report.accounting;
    doc.solutions = report.solutions;
    doc.has_counts = true;
    doc.counts = report.counts;
    if (audit) {
        doc.has_audit = true;
        doc.audit = *audit;
    }
    doc.has_reverify = true;
    doc.reverified_ok = report.reverified_ok;
    return doc;
}

ReportDoc make_doc(const AlgebraicSystem& system, const SolveResult& result,
                   const TrackOptions& opts) {
    ReportDoc doc;
    doc.degree = system.degree_n;
    doc.variant = variant_name(system.variant);
    doc.options = opts;
    doc.accounting = result.accounting;
    doc.solutions = result.solutions;
    for (SolutionPoint& sp : doc.solutions) {
        sp.class_tag = classify_solution(sp, opts.dedup_tol);
    }
    std::sort(doc.solutions.begin(), doc.solutions.end(),
              [](const SolutionPoint& a, const SolutionPoint& b) {
                  if (a.class_tag != b.class_tag) return a.class_tag < b.class_tag;
                  return lex_less_vec(a.y, b.y);
              });
    doc.has_counts = true;
    doc.counts.total_distinct = static_cast<long long>(doc.solutions.size());
    for (const SolutionPoint& sp : doc.solutions) {
        switch (sp.class_tag) {
            case ClassTag::P0: ++doc.counts.p0; break;
            case ClassTag::P1minusP0: ++doc.counts.p1_minus_p0; break;
            case ClassTag::Pt: ++doc.counts.pt; break;
            case ClassTag::Unclassified: break;
        }
    }
    return doc;
}

std::string to_json(const ReportDoc& doc) {
    std::string s = "{";
    s += "\"schema_version\":" + std::to_string(kSchemaVersion);
    s += ",\"tool_version\":\"" + std::string(kToolVersion) + "\"";
    s += ",\"degree\":" + std::to_string(doc.degree);
    s += ",\"variant\":\"" + doc.variant + "\"";
    s += ",\"gamma_seed\":" + std::to_string(doc.options.gamma_seed);
    s += ",";
    append_tolerances(s, doc.options);
    s += ",";
    append_accounting(s, doc.accounting);

    s += ",\"solutions\":[";
    for (std::size_t i = 0; i < doc.solutions.size(); ++i) {
        const SolutionPoint& sp = doc.solutions[i];
        if (i) s += ",";
        s += "{\"y\":[";
        for (std::size_t k = 0; k < sp.y.size(); ++k) {
            if (k) s += ",";
            s += fmt_complex_pair(sp.y[k]);
        }
        s += "],\"residual\":" + fmt_double(sp.residual);
        s += ",\"multiplicity\":" + std::to_string(sp.multiplicity);
        s += ",\"class\":\"" + std::string(class_name(sp.class_tag)) + "\"";
        s += ",\"is_real\":";
        s += sp.is_real ? "true" : "false";
        s += "}";
    }
    s += "]";

    s += ",\"counts\":";
    if (doc.has_counts) {
        s += "{\"total_distinct\":" + std::to_string(doc.counts.total_distinct);
        s += ",\"p0\":" + std::to_string(doc.counts.p0);
        s += ",\"p1_minus_p0\":" + std::to_string(doc.counts.p1_minus_p0);
        s += ",\"pt\":" + std::to_string(doc.counts.pt);
        s += ",\"p1_total\":" + std::to_string(doc.counts.p1_total);
        s += ",\"real_all_nonzero\":" + std::to_string(doc.counts.real_all_nonzero);
        s += "}";
    } else {
        s += "{}";
    }

    s += ",\"bounds\":";
    if (doc.has_audit) {
        s += "{\"applicable\":";
        s += doc.audit.applicable ? "true" : "false";
        for (const BoundEntry& e : doc.audit.entries) {
            s += ",\"" + e.name + "\":{\"count\":" + std::to_string(e.count);
            s += ",\"bound\":" + std::to_string(e.bound);
            s += ",\"holds\":";
            s += e.holds ? "true" : "false";
            s += ",\"equality\":";
            s += e.equality ? "true" : "false";
            s += "}";
        }
        s += "}";
    } else {
        s += "{}";
    }

    s += ",\"audits\":";
    {
        std::string a = "{";
        bool first = true;
        auto put_bool = [&](const char* key, bool v) {
            if (!first) a += ",";
            first = false;
            a += "\"" + std::string(key) + "\":";
            a += v ? "true" : "false";
        };
        if (doc.has_counts) {
            put_bool("partition_ok", doc.counts.p0 + doc.counts.p1_minus_p0 + doc.counts.pt ==
                                         doc.counts.total_distinct);
        }
        if (doc.has_reverify) put_bool("reverified_ok", doc.reverified_ok);
        if (doc.has_audit) {
            bool all_hold = true;
            for (const BoundEntry& e : doc.audit.entries) all_hold = all_hold && e.holds;
            put_bool("bounds_ok", all_hold || !doc.audit.applicable);
            put_bool("strict1", doc.audit.strict1);
            put_bool("strict2", doc.audit.strict2);
            put_bool("strict3", doc.audit.strict3);
            put_bool("equalities_456", doc.audit.equalities_456);
            put_bool("equalities_123", doc.audit.equalities_123);
        }
        a += "}";
        s += a;
    }
    s += "}";
    return s;
}

std::string to_csv(const ReportDoc& doc) {
    std::string s = "degree,class,multiplicity,residual";
    for (int k = 1; k <= doc.degree; ++k) {
        s += ",y" + std::to_string(k) + "_re,y" + std::to_string(k) + "_im";
    }
    s += "\n";
    for (const SolutionPoint& sp : doc.solutions) {
        s += std::to_string(doc.degree);
        s += ",";
        s += class_name(sp.class_tag);
        s += "," + std::to_string(sp.multiplicity);
        s += "," + fmt_double(sp.residual);
        for (const Complex& v : sp.y) {
            s += "," + fmt_double(v.real()) + "," + fmt_double(v.imag());
        }
        s += "\n";
    }
    return s;
}

std::string to_table(const ReportDoc& doc) {
    char buf[256];
    std::string s;
    std::snprintf(buf, sizeof(buf), "degree %d, variant %s, seed %llu\n", doc.degree,
                  doc.variant.c_str(), static_cast<unsigned long long>(doc.options.gamma_seed));
    s += buf;
    std::snprintf(buf, sizeof(buf),
                  "paths: bezout %lld, converged %d, at_infinity %d, failed %d, retries %d\n",
                  doc.accounting.bezout, doc.accounting.converged, doc.accounting.at_infinity,
                  doc.accounting.failed, doc.accounting.gamma_retries);
    s += buf;
    if (doc.has_counts) {
        std::snprintf(buf, sizeof(buf),
                      "counts: total %lld | p0 %lld | p1\\p0 %lld | pt %lld | p1 %lld | real nonzero %lld\n",
                      doc.counts.total_distinct, doc.counts.p0, doc.counts.p1_minus_p0,
                      doc.counts.pt, doc.counts.p1_total, doc.counts.real_all_nonzero);
        s += buf;
    }
    if (doc.has_audit) {
        for (const BoundEntry& e : doc.audit.entries) {
            std::snprintf(buf, sizeof(buf), "%s: %lld <= %lld %s%s\n", e.name.c_str(), e.count,
                          e.bound, e.holds ? "ok" : "VIOLATED",
                          e.equality ? " (equality)" : "");
            s += buf;
        }
    }
    s += "solutions (class, multiplicity, residual, y):\n";
    for (const SolutionPoint& sp : doc.solutions) {
        std::snprintf(buf, sizeof(buf), "  %-12s m=%d  res=%.3g  ", class_name(sp.class_tag),
                      sp.multiplicity, sp.residual);
        s += buf;
        for (const Complex& v : sp.y) {
            std::snprintf(buf, sizeof(buf), "(%.9g%+.9gi) ", v.real(), v.imag());
            s += buf;
        }
        if (sp.is_real) s += "[real]";
        s += "\n";
    }
    return s;
}

} // namespace peculiar
