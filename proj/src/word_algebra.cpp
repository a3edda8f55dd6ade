#include "procomp/word_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace procomp {

void require_grade_supported(int grade) {
    if (grade < 1 || grade > kMaxGrade)
        throw std::invalid_argument("grade " + std::to_string(grade) +
                                    " unsupported: engine is truncated at grade " +
                                    std::to_string(kMaxGrade));
}

namespace {

void enumerate_words(int remaining, std::vector<int>& current,
                     std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (int k = 1; k <= remaining; ++k) {
        current.push_back(k);
        enumerate_words(remaining - k, current, out);
        current.pop_back();
    }
}

}  // namespace

WordTable::WordTable() {
    letters_.push_back({});  // the unit
    begin_[0] = 0;
    begin_[1] = 1;
    for (int g = 1; g <= kMaxGrade; ++g) {
        std::vector<std::vector<int>> words;
        std::vector<int> cur;
        enumerate_words(g, cur, words);
        std::sort(words.begin(), words.end());
        for (auto& w : words) letters_.push_back(std::move(w));
        begin_[g + 1] = static_cast<int>(letters_.size());
    }
    if (static_cast<int>(letters_.size()) != kWordCount)
        throw std::logic_error("word enumeration mismatch");

    std::map<std::vector<int>, WordId> index;
    for (WordId w = 0; w < kWordCount; ++w) {
        int g = 0;
        for (int k : letters_[w]) g += k;
        grade_[w] = g;
        index[letters_[w]] = w;
    }
    for (WordId a = 0; a < kWordCount; ++a) {
        for (WordId b = 0; b < kWordCount; ++b) {
            if (grade_[a] + grade_[b] > kMaxGrade) {
                product_[a][b] = -1;
                continue;
            }
            std::vector<int> cat = letters_[a];
            cat.insert(cat.end(), letters_[b].begin(), letters_[b].end());
            product_[a][b] = index.at(cat);
        }
    }
}

const WordTable& WordTable::instance() {
    static const WordTable table;
    return table;
}

WordId WordTable::id_of(const std::vector<int>& letters) const {
    int g = 0;
    for (int k : letters) {
        if (k < 1 || k > kMaxGrade) throw std::invalid_argument("letter out of range");
        g += k;
    }
    require_grade_supported(g == 0 ? 1 : g);
    for (WordId w = (g == 0 ? 0 : begin_[g]); w < begin_[g + 1]; ++w)
        if (letters_[w] == letters) return w;
    throw std::logic_error("word not found");
}

WordId WordTable::generator(int k) const {
    require_grade_supported(k);
    return id_of({k});
}

std::string WordTable::name(WordId w) const {
    if (w == 0) return "1";
    std::string s;
    for (int k : letters_[w]) {
        s += "Y";
        s += std::to_string(k);
    }
    return s;
}

GradedPolynomial GradedPolynomial::unit() {
    GradedPolynomial p;
    p.c_[0] = 1.0;
    return p;
}

GradedPolynomial GradedPolynomial::generator(int k) {
    GradedPolynomial p;
    p.c_[WordTable::instance().generator(k)] = 1.0;
    return p;
}

GradedPolynomial& GradedPolynomial::operator+=(const GradedPolynomial& o) {
    for (int i = 0; i < kWordCount; ++i) c_[i] += o.c_[i];
    return *this;
}

GradedPolynomial& GradedPolynomial::operator-=(const GradedPolynomial& o) {
    for (int i = 0; i < kWordCount; ++i) c_[i] -= o.c_[i];
    return *this;
}

GradedPolynomial& GradedPolynomial::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

bool GradedPolynomial::is_zero(double tol) const {
    for (double v : c_)
        if (std::abs(v) >= tol) return false;
    return true;
}

int GradedPolynomial::term_count(double tol) const {
    int n = 0;
    for (double v : c_)
        if (std::abs(v) >= tol) ++n;
    return n;
}

double GradedPolynomial::max_abs_diff(const GradedPolynomial& o) const {
    double m = 0.0;
    for (int i = 0; i < kWordCount; ++i) m = std::max(m, std::abs(c_[i] - o.c_[i]));
    return m;
}

double GradedPolynomial::max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

GradedPolynomial poly_mul(const GradedPolynomial& a, const GradedPolynomial& b) {
    const WordTable& t = WordTable::instance();
    GradedPolynomial r;
    for (WordId wa = 0; wa < kWordCount; ++wa) {
        const double ca = a.coeff(wa);
        if (std::abs(ca) < 1e-300) continue;
        const int room = kMaxGrade - t.grade(wa);
        const int end = t.grade_end(room);
        for (WordId wb = 0; wb < end; ++wb) {
            const double cb = b.coeff(wb);
            if (std::abs(cb) < 1e-300) continue;
            r.coeff(t.product(wa, wb)) += ca * cb;
        }
    }
    return r;
}

GradedPolynomial commutator(const GradedPolynomial& a, const GradedPolynomial& b) {
    return poly_mul(a, b) - poly_mul(b, a);
}

GradedPolynomial exp_poly(const GradedPolynomial& x) {
    if (std::abs(x.unit_coeff()) >= 1e-300)
        throw std::invalid_argument("exp_poly: argument must have zero unit-word coefficient");
    GradedPolynomial r = GradedPolynomial::unit();
    GradedPolynomial power = GradedPolynomial::unit();
    double factorial = 1.0;
    for (int k = 1; k <= kMaxGrade; ++k) {
        power = poly_mul(power, x);
        factorial *= k;
        r += power * (1.0 / factorial);
        if (power.is_zero()) break;
    }
    return r;
}

GradedPolynomial log_poly(const GradedPolynomial& p) {
    if (std::abs(p.unit_coeff() - 1.0) >= 1e-300)
        throw std::invalid_argument("log_poly: argument must have unit-word coefficient 1");
    GradedPolynomial y = p;
    y.coeff(0) = 0.0;
    GradedPolynomial r;
    GradedPolynomial power = GradedPolynomial::unit();
    for (int k = 1; k <= kMaxGrade; ++k) {
        power = poly_mul(power, y);
        r += power * ((k % 2 == 1 ? 1.0 : -1.0) / k);
        if (power.is_zero()) break;
    }
    return r;
}

GradedPolynomial factor_series(FactorKind kind, double c) {
    GradedPolynomial exponent;
    double ck = 1.0;
    for (int k = 1; k <= kMaxGrade; ++k) {
        ck *= c;
        const double sign = (kind == FactorKind::forward || k % 2 == 1) ? 1.0 : -1.0;
        exponent += GradedPolynomial::generator(k) * (sign * ck);
    }
    return exp_poly(exponent);
}

GradedPolynomial composition_log(std::span<const double> coeffs) {
    GradedPolynomial product = GradedPolynomial::unit();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const FactorKind kind = (i % 2 == 0) ? FactorKind::adjoint : FactorKind::forward;
        product = poly_mul(product, factor_series(kind, coeffs[i]));
    }
    return log_poly(product);
}

}  // namespace procomp
