#include "peculiar/multipoly.hpp"

#include <algorithm>

namespace peculiar {

MultiPoly::MultiPoly(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 0 || num_vars > kMaxVars)
        throw CapacityExceeded("MultiPoly: variable count out of range");
}

int MultiPoly::total_degree() const {
    int d = 0;
    for (const Term& t : terms_) d = std::max(d, t.total_degree());
    return d;
}

void MultiPoly::add_term(long long coeff, std::span<const int> exps) {
    if (static_cast<int>(exps.size()) != num_vars_)
        throw DimensionMismatch("MultiPoly::add_term: wrong exponent count");
    Term t;
    t.coeff = coeff;
    for (int k = 0; k < num_vars_; ++k) t.exps[k] = static_cast<std::uint8_t>(exps[k]);
    terms_.push_back(t);
    canonicalize();
}

void MultiPoly::add_scaled(const MultiPoly& other, long long factor) {
    if (other.num_vars_ != num_vars_)
        throw DimensionMismatch("MultiPoly::add_scaled: variable count mismatch");
    for (const Term& t : other.terms_) {
        Term s = t;
        s.coeff *= factor;
        terms_.push_back(s);
    }
    canonicalize();
}

MultiPoly MultiPoly::times_var(int var) const {
    MultiPoly out(num_vars_);
    out.terms_ = terms_;
    for (Term& t : out.terms_) ++t.exps[var];
    out.canonicalize();
    return out;
}

MultiPoly MultiPoly::derivative(int var) const {
    MultiPoly out(num_vars_);
    for (const Term& t : terms_) {
        if (t.exps[var] == 0) continue;
        Term d = t;
        d.coeff *= t.exps[var];
        --d.exps[var];
        out.terms_.push_back(d);
    }
    out.canonicalize();
    return out;
}

void MultiPoly::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.exps < b.exps; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (const Term& t : terms_) {
        if (!merged.empty() && merged.back().exps == t.exps) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.coeff == 0; }),
                 merged.end());
    terms_ = std::move(merged);
}

MultiPoly elementary_symmetric_poly(int num_vars, std::span<const int> vars, int m) {
    std::vector<MultiPoly> e(m + 1, MultiPoly(num_vars));
    std::vector<int> zero(num_vars, 0);
    e[0].add_term(1, zero);
    int used = 0;
    for (int v : vars) {
        ++used;
        for (int k = std::min(m, used); k >= 1; --k) {
            e[k].add_scaled(e[k - 1].times_var(v), 1);
        }
    }
    return e[m];
}

} // namespace peculiar
